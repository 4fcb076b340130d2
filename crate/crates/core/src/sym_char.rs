//! Exact character theory for the symmetric groups `S_n`, `n <= 8`.
//!
//! Irreducible representations are indexed by partitions of `n` and conjugacy
//! classes by cycle types. Characters come from the Murnaghan–Nakayama rule
//! (rim hooks are removed on the beta-set of the partition), and tensor
//! products of representations are decomposed by the character inner product.
//!
//! The empty partition of `0` stands for the trivial group: classes over it
//! behave as plain integers and are promoted to the trivial representation
//! when combined with an `S_n`-representation.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const MAX_DEGREE: u8 = 8;

/// A partition `λ ⊢ n` with parts in nonincreasing order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    parts: Vec<u8>,
}

impl Partition {
    pub fn new(parts: &[u32]) -> Result<Self> {
        let valid = parts.iter().all(|&p| p >= 1)
            && parts.windows(2).all(|w| w[0] >= w[1])
            && parts.iter().sum::<u32>() <= MAX_DEGREE as u32;
        if !valid {
            return Err(Error::InvalidPartition(parts.to_vec()));
        }
        Ok(Self {
            parts: parts.iter().map(|&p| p as u8).collect(),
        })
    }

    /// The empty partition, indexing the unit of the trivial group.
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// The one-row partition `(n)`, i.e. the trivial representation.
    pub fn trivial(n: u8) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self { parts: vec![n] }
        }
    }

    pub fn n(&self) -> u8 {
        self.parts.iter().sum()
    }

    pub fn parts(&self) -> &[u8] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.len() <= 1
    }

    /// Order of the centralizer of a permutation of this cycle type.
    pub fn centralizer_order(&self) -> u64 {
        let mut z = 1u64;
        let mut i = 0;
        while i < self.parts.len() {
            let part = self.parts[i];
            let mut mult = 0u64;
            while i < self.parts.len() && self.parts[i] == part {
                mult += 1;
                i += 1;
            }
            z *= (part as u64).pow(mult as u32) * factorial(mult);
        }
        z
    }

    /// Size of the conjugacy class of this cycle type in `S_n`.
    pub fn class_size(&self) -> u64 {
        factorial(self.n() as u64) / self.centralizer_order()
    }

    /// Dimension of the irreducible representation `S_λ`.
    pub fn dimension(&self) -> i64 {
        if self.is_empty() {
            return 1;
        }
        let table = character_table(self.n()).expect("n checked at construction");
        let identity = table.partitions.len() - 1;
        table.values[table.index[self]][identity]
    }
}

impl Ord for Partition {
    /// Reverse-lexicographic within a fixed `n`: `(2)` precedes `(1,1)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n()
            .cmp(&other.n())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn check_degree(n: u32) -> Result<u8> {
    if (1..=MAX_DEGREE as u32).contains(&n) {
        Ok(n as u8)
    } else {
        Err(Error::DegreeOutOfRange(n))
    }
}

/// All partitions of `n`, in reverse-lexicographic order.
pub fn partitions_of(n: u32) -> Result<Vec<Partition>> {
    let n = check_degree(n)?;
    Ok(partitions_unchecked(n))
}

fn partitions_unchecked(n: u8) -> Vec<Partition> {
    fn go(rest: u8, max: u8, prefix: &mut Vec<u8>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Character table of `S_n`; rows are irreducibles, columns cycle types, both
/// in reverse-lexicographic order.
#[derive(Debug)]
pub struct CharacterTable {
    pub n: u8,
    pub partitions: Vec<Partition>,
    pub class_sizes: Vec<u64>,
    pub values: Vec<Vec<i64>>,
    index: HashMap<Partition, usize>,
}

impl CharacterTable {
    fn build(n: u8) -> Self {
        let partitions = partitions_unchecked(n);
        let class_sizes = partitions.iter().map(Partition::class_size).collect();
        let values = partitions
            .iter()
            .map(|lambda| {
                partitions
                    .iter()
                    .map(|mu| murnaghan_nakayama(lambda.parts(), mu.parts()))
                    .collect()
            })
            .collect();
        let index = partitions
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Self {
            n,
            partitions,
            class_sizes,
            values,
            index,
        }
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn order(&self) -> u64 {
        factorial(self.n as u64)
    }
}

/// Memoized character table of `S_n`.
pub fn character_table(n: u8) -> Result<&'static CharacterTable> {
    static TABLES: [OnceLock<CharacterTable>; MAX_DEGREE as usize] =
        [const { OnceLock::new() }; MAX_DEGREE as usize];
    let n = check_degree(n as u32)?;
    Ok(TABLES[n as usize - 1].get_or_init(|| CharacterTable::build(n)))
}

/// `χ_λ(μ)` by removing rim hooks of length `μ_1`, then `μ_2`, ...
fn murnaghan_nakayama(lambda: &[u8], mu: &[u8]) -> i64 {
    let Some((&hook, rest)) = mu.split_first() else {
        return if lambda.is_empty() { 1 } else { 0 };
    };
    let hook = hook as i32;
    let len = lambda.len() as i32;
    // Beta-set: strictly decreasing first-column hook lengths.
    let beta: Vec<i32> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i32 + len - 1 - i as i32)
        .collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        let moved = b - hook;
        if moved < 0 || beta.contains(&moved) {
            continue;
        }
        let crossed = beta.iter().filter(|&&c| moved < c && c < b).count();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        let mut next = beta.clone();
        next[i] = moved;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let smaller: Vec<u8> = next
            .iter()
            .enumerate()
            .map(|(j, &c)| (c - (len - 1 - j as i32)) as u8)
            .filter(|&p| p > 0)
            .collect();
        total += sign * murnaghan_nakayama(&smaller, rest);
    }
    total
}

/// `χ_λ(μ)` for partitions of the same `n`.
pub fn character_value(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.n() != mu.n() {
        return Err(Error::MismatchedDegree {
            left: lambda.n(),
            right: mu.n(),
        });
    }
    if lambda.is_empty() {
        return Ok(1);
    }
    let table = character_table(lambda.n())?;
    Ok(table.values[table.index[lambda]][table.index[mu]])
}

/// Resolve the common degree of two (possibly zero or scalar) values.
///
/// `None` is the zero element; `Some(0)` is a scalar that promotes to the
/// trivial representation of any `S_n`.
pub(crate) fn common_degree(a: Option<u8>, b: Option<u8>) -> Result<Option<u8>> {
    match (a, b) {
        (None, x) | (x, None) => Ok(x),
        (Some(0), Some(x)) | (Some(x), Some(0)) => Ok(Some(x)),
        (Some(x), Some(y)) if x == y => Ok(Some(x)),
        (Some(x), Some(y)) => Err(Error::MismatchedDegree { left: x, right: y }),
    }
}

/// A virtual representation of `S_n`: integer multiplicities of irreducibles.
#[derive(Clone, Debug, Default)]
pub struct RepVector {
    terms: BTreeMap<Partition, i64>,
}

impl RepVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c` copies of the unit of the trivial group (a plain integer).
    pub fn scalar(c: i64) -> Self {
        Self::irreducible(Partition::empty(), c)
    }

    pub fn irreducible(p: Partition, mult: i64) -> Self {
        let mut terms = BTreeMap::new();
        if mult != 0 {
            terms.insert(p, mult);
        }
        Self { terms }
    }

    pub fn trivial(n: u8) -> Self {
        Self::irreducible(Partition::trivial(n), 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, i64)>>(iter: I) -> Result<Self> {
        let mut out = Self::zero();
        for (p, c) in iter {
            out = out.add(&Self::irreducible(p, c))?;
        }
        Ok(out)
    }

    /// Degree `n` of the group, `None` for the zero vector.
    pub fn n(&self) -> Option<u8> {
        self.terms.keys().next().map(Partition::n)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, i64)> {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    pub fn multiplicity(&self, p: &Partition) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    /// Re-express a scalar as a multiple of the trivial representation of `S_n`.
    pub fn promote(&self, n: Option<u8>) -> Self {
        match (self.n(), n) {
            (Some(0), Some(target)) if target > 0 => Self::irreducible(
                Partition::trivial(target),
                self.multiplicity(&Partition::empty()),
            ),
            _ => self.clone(),
        }
    }

    fn unified(&self, other: &Self) -> Result<(Self, Self)> {
        let n = common_degree(self.n(), other.n())?;
        Ok((self.promote(n), other.promote(n)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = self.unified(other)?;
        for (p, c) in b.terms {
            *a.terms.entry(p).or_insert(0) += c;
        }
        a.terms.retain(|_, c| *c != 0);
        Ok(a)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(p, &c)| (p.clone(), c * k))
                .collect(),
        }
    }

    /// Constituent-wise minimum (both arguments taken as effective).
    pub fn meet(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.unified(other)?;
        let terms = a
            .terms
            .iter()
            .filter_map(|(p, &c)| {
                let m = c.min(b.multiplicity(p));
                (m > 0).then(|| (p.clone(), m))
            })
            .collect();
        Ok(Self { terms })
    }

    /// All multiplicities nonnegative.
    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    pub fn dimension(&self) -> i64 {
        self.terms.iter().map(|(p, &c)| c * p.dimension()).sum()
    }

    /// Multiplicity of the trivial representation.
    pub fn invariant_multiplicity(&self) -> i64 {
        match self.n() {
            None => 0,
            Some(n) => self.multiplicity(&Partition::trivial(n)),
        }
    }

    /// Value of the (virtual) character on the class of cycle type `mu`.
    pub fn character(&self, mu: &Partition) -> Result<i64> {
        self.terms
            .iter()
            .map(|(p, &c)| Ok(c * character_value(p, mu)?))
            .sum()
    }

    /// Tensor product, decomposed through the character inner product.
    pub fn kronecker(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.unified(other)?;
        let n = match (a.n(), b.n()) {
            (Some(n), Some(_)) => n,
            _ => return Ok(Self::zero()),
        };
        if n == 0 {
            let c = a.multiplicity(&Partition::empty()) * b.multiplicity(&Partition::empty());
            return Ok(Self::scalar(c));
        }
        let table = character_table(n)?;
        let classes = table.partitions.len();
        let chars = |v: &Self| -> Vec<i64> {
            (0..classes)
                .map(|j| {
                    v.terms
                        .iter()
                        .map(|(p, &c)| c * table.values[table.index[p]][j])
                        .sum()
                })
                .collect()
        };
        let (ca, cb) = (chars(&a), chars(&b));
        let order = table.order() as i64;
        let mut terms = BTreeMap::new();
        for (row, nu) in table.partitions.iter().enumerate() {
            let sum: i64 = (0..classes)
                .map(|j| table.class_sizes[j] as i64 * ca[j] * cb[j] * table.values[row][j])
                .sum();
            if sum % order != 0 {
                return Err(Error::Internal(format!(
                    "character inner product {sum} not divisible by |S_{n}| = {order}"
                )));
            }
            if sum != 0 {
                terms.insert(nu.clone(), sum / order);
            }
        }
        Ok(Self { terms })
    }
}

impl PartialEq for RepVector {
    fn eq(&self, other: &Self) -> bool {
        match self.unified(other) {
            Ok((a, b)) => a.terms == b.terms,
            Err(_) => false,
        }
    }
}

impl Eq for RepVector {}

impl fmt::Display for RepVector {
    /// `2*s[2]+s[1,1]`; scalars render as bare integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, &c)) in self.terms.iter().enumerate() {
            if c < 0 {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let m = c.abs();
            if p.is_empty() {
                write!(f, "{m}")?;
            } else if m == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{m}*{p}")?;
            }
        }
        Ok(())
    }
}

/// Multiplicity-of-`(n)` extraction, for the invariant parts of group actions.
pub fn invariant_multiplicity(a: &RepVector) -> i64 {
    a.invariant_multiplicity()
}

/// Tensor product of two representations of the same `S_n`.
pub fn kronecker(a: &RepVector, b: &RepVector) -> Result<RepVector> {
    a.kronecker(b)
}
