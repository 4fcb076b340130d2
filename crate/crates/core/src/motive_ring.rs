//! Tate-type classes in the equivariant Grothendieck group of Hodge
//! structures, and Laurent polynomials in `t` over them.
//!
//! A [`MotiveClass`] is a finite integer combination of `S_λ ⊗ L^k`, where
//! `L` is the class of `Q(-1)`; the exponent `k` is signed, so `Q(m)` is
//! `L^{-m}`. An [`HGPoly`] attaches a class to each `t`-degree.
//!
//! Every value carries a single symmetric-group degree `n`. Classes with
//! `n = 0` are plain (non-equivariant) and promote to the trivial
//! representation when they meet an `S_n`-equivariant class.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::sym_char::{common_degree, Partition, RepVector};

/// Largest possible quotient degree when dividing `num` by `den`.
///
/// The representation ring has zero divisors, so top degrees can cancel in a
/// product and `max(num) - max(den)` is not a valid bound. Evaluating at a
/// conjugacy class lands in the domain `Z[L, L^-1]`, where degrees do add;
/// the bound is the largest difference over all classes.
fn quotient_bound(num: &HGPoly, den: &HGPoly) -> Result<Option<i32>> {
    let classes = match num.n() {
        Some(n) if n > 0 => crate::sym_char::partitions_of(n.into())?
            .into_iter()
            .map(Some)
            .collect(),
        _ => vec![None],
    };
    let top = |p: &HGPoly, mu: &Option<Partition>| -> Result<Option<i32>> {
        for (d, class) in p.coeffs.iter().rev() {
            for (_, rep) in class.pieces() {
                let value = match mu {
                    Some(mu) => rep.character(mu)?,
                    None => rep.terms().map(|(_, c)| c).sum(),
                };
                if value != 0 {
                    return Ok(Some(*d));
                }
            }
        }
        Ok(None)
    };
    let mut bound = None;
    for mu in &classes {
        // The divisor's unit lowest term survives every evaluation.
        if let (Some(a), Some(b)) = (top(num, mu)?, top(den, mu)?) {
            bound = bound.max(Some(a - b));
        }
    }
    Ok(bound)
}

/// Finite combination of `(irreducible, Tate power)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MotiveClass {
    // Invariant: no zero representation vectors, one `n` across all entries.
    by_tate: BTreeMap<i32, RepVector>,
}

impl MotiveClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: i64) -> Self {
        Self::from_rep(RepVector::scalar(c), 0)
    }

    /// `L^k`.
    pub fn tate(k: i32) -> Self {
        Self::from_rep(RepVector::scalar(1), k)
    }

    pub fn from_rep(rep: RepVector, tate: i32) -> Self {
        let mut by_tate = BTreeMap::new();
        if !rep.is_zero() {
            by_tate.insert(tate, rep);
        }
        Self { by_tate }
    }

    pub fn irreducible(p: Partition, mult: i64, tate: i32) -> Self {
        Self::from_rep(RepVector::irreducible(p, mult), tate)
    }

    pub fn n(&self) -> Option<u8> {
        self.by_tate.values().next().and_then(RepVector::n)
    }

    pub fn is_zero(&self) -> bool {
        self.by_tate.is_empty()
    }

    /// `(tate exponent, representation)` pieces in increasing Tate order.
    pub fn pieces(&self) -> impl Iterator<Item = (i32, &RepVector)> {
        self.by_tate.iter().map(|(&k, v)| (k, v))
    }

    /// Flat `(tate, partition, coefficient)` view.
    pub fn constituents(&self) -> impl Iterator<Item = (i32, &Partition, i64)> {
        self.by_tate
            .iter()
            .flat_map(|(&k, v)| v.terms().map(move |(p, c)| (k, p, c)))
    }

    pub fn coefficient(&self, p: &Partition, tate: i32) -> i64 {
        self.by_tate.get(&tate).map_or(0, |v| v.multiplicity(p))
    }

    pub fn promote(&self, n: Option<u8>) -> Self {
        Self {
            by_tate: self
                .by_tate
                .iter()
                .map(|(&k, v)| (k, v.promote(n)))
                .collect(),
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&RepVector, &RepVector) -> Result<RepVector>,
    ) -> Result<Self> {
        let n = common_degree(self.n(), other.n())?;
        let (a, b) = (self.promote(n), other.promote(n));
        let mut by_tate = BTreeMap::new();
        let zero = RepVector::zero();
        for k in a.by_tate.keys().chain(b.by_tate.keys()) {
            if by_tate.contains_key(k) {
                continue;
            }
            let v = f(
                a.by_tate.get(k).unwrap_or(&zero),
                b.by_tate.get(k).unwrap_or(&zero),
            )?;
            by_tate.insert(*k, v);
        }
        by_tate.retain(|_, v| !v.is_zero());
        Ok(Self { by_tate })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, RepVector::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, RepVector::sub)
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self {
            by_tate: self.by_tate.iter().map(|(&t, v)| (t, v.scale(k))).collect(),
        }
    }

    /// Product: Tate exponents add, representations tensor.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        common_degree(self.n(), other.n())?;
        let mut out = Self::zero();
        for (ka, va) in &self.by_tate {
            for (kb, vb) in &other.by_tate {
                out = out.add(&Self::from_rep(va.kronecker(vb)?, ka + kb))?;
            }
        }
        Ok(out)
    }

    /// Multiply by `L^m`.
    pub fn twist(&self, m: i32) -> Self {
        Self {
            by_tate: self
                .by_tate
                .iter()
                .map(|(&k, v)| (k + m, v.clone()))
                .collect(),
        }
    }

    /// Constituent-wise minimum of two effective classes.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, RepVector::meet)
    }

    pub fn is_effective(&self) -> bool {
        self.by_tate.values().all(RepVector::is_effective)
    }

    /// `self <= other` constituent by constituent.
    pub fn is_contained_in(&self, other: &Self) -> Result<bool> {
        Ok(other.sub(self)?.is_effective())
    }

    /// Total dimension after forgetting weights and group action.
    pub fn dimension(&self) -> i64 {
        self.by_tate.values().map(RepVector::dimension).sum()
    }

    /// `±L^k` times the trivial representation, if this class is one.
    pub fn as_unit(&self) -> Option<(i64, i32)> {
        let mut it = self.constituents();
        let (k, p, c) = it.next()?;
        (it.next().is_none() && p.is_trivial() && c.abs() == 1).then_some((c, k))
    }

    /// First constituent with a negative coefficient.
    pub fn first_negative(&self) -> Option<(i32, Partition, i64)> {
        self.constituents()
            .find(|&(_, _, c)| c < 0)
            .map(|(k, p, c)| (k, p.clone(), c))
    }
}

fn write_tate(f: &mut fmt::Formatter<'_>, k: i32) -> fmt::Result {
    match k {
        0 => Ok(()),
        1 => write!(f, "*L"),
        _ => write!(f, "*L^{k}"),
    }
}

fn write_t(f: &mut fmt::Formatter<'_>, d: i32) -> fmt::Result {
    match d {
        0 => Ok(()),
        1 => write!(f, "*t"),
        _ => write!(f, "*t^{d}"),
    }
}

/// One `(representation) * L^k * t^d` summand, without its leading separator.
fn render_term(rep: &RepVector, tate: i32, degree: i32) -> (bool, String) {
    struct Term<'a>(&'a RepVector, i32, i32);
    impl fmt::Display for Term<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let Term(rep, tate, degree) = *self;
            let has_suffix = tate != 0 || degree != 0;
            let mut terms = rep.terms();
            let first = terms.next().expect("nonzero representation");
            if terms.next().is_some() {
                write!(f, "({rep})")?;
            } else {
                let (p, c) = first;
                let m = c.abs();
                match (p.is_empty(), m, has_suffix) {
                    (true, 1, true) => {
                        let s = format!("{}{}", Suffix(tate, 0), Suffix(0, degree));
                        return write!(f, "{}", s.trim_start_matches('*'));
                    }
                    (true, _, _) => write!(f, "{m}")?,
                    (false, 1, _) => write!(f, "{p}")?,
                    (false, _, _) => write!(f, "{m}*{p}")?,
                }
            }
            write_tate(f, tate)?;
            write_t(f, degree)
        }
    }
    struct Suffix(i32, i32);
    impl fmt::Display for Suffix {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_tate(f, self.0)?;
            write_t(f, self.1)
        }
    }
    let mut terms = rep.terms();
    let (_, c) = terms.next().expect("nonzero representation");
    let negative = terms.next().is_none() && c < 0;
    (negative, Term(rep, tate, degree).to_string())
}

fn write_sum(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = (bool, String)>,
) -> fmt::Result {
    let mut empty = true;
    for (negative, body) in items {
        match (empty, negative) {
            (true, true) => write!(f, "-{body}")?,
            (true, false) => write!(f, "{body}")?,
            (false, true) => write!(f, " - {body}")?,
            (false, false) => write!(f, " + {body}")?,
        }
        empty = false;
    }
    if empty {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for MotiveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.by_tate.iter().map(|(&k, v)| render_term(v, k, 0)))
    }
}

/// Hodge–Grothendieck polynomial: `Σ_k [T_k] t^k` with Tate-type coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HGPoly {
    // Invariant: no zero classes, one `n` across all coefficients.
    coeffs: BTreeMap<i32, MotiveClass>,
}

impl HGPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(MotiveClass::scalar(1))
    }

    pub fn constant(c: MotiveClass) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: MotiveClass, degree: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(degree, c);
        }
        Self { coeffs }
    }

    /// `L^tate t^degree`.
    pub fn lt(tate: i32, degree: i32) -> Self {
        Self::monomial(MotiveClass::tate(tate), degree)
    }

    /// `t^degree`.
    pub fn t_pow(degree: i32) -> Self {
        Self::lt(0, degree)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, MotiveClass)>>(iter: I) -> Result<Self> {
        let mut out = Self::zero();
        for (d, c) in iter {
            out = out.add(&Self::monomial(c, d))?;
        }
        Ok(out)
    }

    pub fn n(&self) -> Option<u8> {
        self.coeffs.values().next().and_then(MotiveClass::n)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, degree: i32) -> MotiveClass {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &MotiveClass)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn promote(&self, n: Option<u8>) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&d, c)| (d, c.promote(n)))
                .collect(),
        }
    }

    fn map_coeffs(&self, f: impl Fn(i32, &MotiveClass) -> (i32, MotiveClass)) -> Self {
        let mut coeffs = BTreeMap::new();
        for (&d, c) in &self.coeffs {
            let (d, c) = f(d, c);
            if !c.is_zero() {
                coeffs.insert(d, c);
            }
        }
        Self { coeffs }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = common_degree(self.n(), other.n())?;
        let mut coeffs = self.promote(n).coeffs;
        for (d, c) in other.promote(n).coeffs {
            let sum = match coeffs.get(&d) {
                Some(existing) => existing.add(&c)?,
                None => c,
            };
            if sum.is_zero() {
                coeffs.remove(&d);
            } else {
                coeffs.insert(d, sum);
            }
        }
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|d, c| (d, c.neg()))
    }

    pub fn scale(&self, k: i64) -> Self {
        self.map_coeffs(|d, c| (d, c.scale(k)))
    }

    /// Cauchy product in `t`; coefficients multiply in the class ring.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        common_degree(self.n(), other.n())?;
        let mut out = Self::zero();
        for (&da, ca) in &self.coeffs {
            for (&db, cb) in &other.coeffs {
                out = out.add(&Self::monomial(ca.mul(cb)?, da + db))?;
            }
        }
        Ok(out)
    }

    pub fn mul_class(&self, c: &MotiveClass) -> Result<Self> {
        self.mul(&Self::constant(c.clone()))
    }

    /// Nonnegative power.
    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut out = Self::one().promote(self.n());
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Inverse of `±L^a t^d`.
    pub fn invert_monomial(&self) -> Result<Self> {
        let mut it = self.coeffs.iter();
        if let (Some((&d, c)), None) = (it.next(), it.next()) {
            if let Some((sign, k)) = c.as_unit() {
                let inv = MotiveClass::tate(-k).scale(sign).promote(c.n());
                return Ok(Self::monomial(inv, -d));
            }
        }
        Err(Error::NotInvertible(self.to_string()))
    }

    /// Multiply every term by `L^m`; degrees are unchanged.
    pub fn tate_twist(&self, m: i32) -> Self {
        self.map_coeffs(|d, c| (d, c.twist(m)))
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        self.map_coeffs(|d, c| (d + k, c.clone()))
    }

    /// Substitute `t -> t^{-1}`.
    pub fn t_reverse(&self) -> Self {
        self.map_coeffs(|d, c| (-d, c.clone()))
    }

    /// Borel–Moore polynomial of a smooth variety of complex dimension `dim`
    /// from its cohomology polynomial: `L^{-dim} t^{2 dim} P(t^{-1})`.
    pub fn poincare_dual_bm(&self, dim: i32) -> Self {
        self.t_reverse().tate_twist(-dim).shift(2 * dim)
    }

    /// Inverse of [`HGPoly::poincare_dual_bm`].
    pub fn poincare_dual_coh(&self, dim: i32) -> Self {
        self.shift(-2 * dim).tate_twist(dim).t_reverse()
    }

    /// Reduced cohomology of the complement in an affine space of dimension
    /// `ambient` from the Borel–Moore polynomial of the closed subset:
    /// `L^M t^{2M-1} P(t^{-1})`.
    pub fn alexander_dual(&self, ambient: i32) -> Result<Self> {
        if ambient < 1 {
            return Err(Error::InvalidArgument(format!(
                "ambient dimension must be positive, got {ambient}"
            )));
        }
        Ok(self.t_reverse().tate_twist(ambient).shift(2 * ambient - 1))
    }

    /// Borel–Moore polynomial recovered from a reduced cohomology polynomial.
    pub fn alexander_inverse(&self, ambient: i32) -> Result<Self> {
        if ambient < 1 {
            return Err(Error::InvalidArgument(format!(
                "ambient dimension must be positive, got {ambient}"
            )));
        }
        Ok(self.shift(1 - 2 * ambient).tate_twist(-ambient).t_reverse())
    }

    /// Add the degree-0 unit class turning reduced into ordinary cohomology.
    pub fn unreduced(&self) -> Result<Self> {
        self.add(&Self::one())
    }

    /// `Q` with `self = Q * divisor`, by elimination from the lowest degree.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        let (low, lead) = match divisor.coeffs.iter().next() {
            Some((&d, c)) => (d, c),
            None => return Err(Error::NonUnitDivisor("0".into())),
        };
        let (sign, tate) = lead
            .as_unit()
            .ok_or_else(|| Error::NonUnitDivisor(lead.to_string()))?;
        let n = common_degree(self.n(), divisor.n())?;
        let mut rest = self.promote(n);
        let Some(last) = quotient_bound(&rest, &divisor.promote(n))? else {
            return Ok(Self::zero());
        };
        let mut quotient = Self::zero();
        while let Some(m) = rest.min_degree() {
            let q_deg = m - low;
            if q_deg > last {
                return Err(Error::NotDivisible { degree: m });
            }
            let q = Self::monomial(rest.coeff(m).twist(-tate).scale(sign), q_deg);
            rest = rest.sub(&q.mul(divisor)?)?;
            quotient = quotient.add(&q)?;
        }
        Ok(quotient)
    }

    /// Evaluation at `t = -1`.
    pub fn euler_class(&self) -> MotiveClass {
        let mut out = MotiveClass::zero();
        for (&d, c) in &self.coeffs {
            let signed = if d.rem_euclid(2) == 0 {
                c.clone()
            } else {
                c.neg()
            };
            out = out
                .add(&signed)
                .expect("coefficients of one polynomial share n");
        }
        out
    }

    /// Forget weights and group action: `L -> 1`, `S_λ -> dim S_λ`.
    pub fn betti(&self) -> BettiPoly {
        BettiPoly::from_terms(self.coeffs.iter().map(|(&d, c)| (d, c.dimension())))
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(MotiveClass::is_effective)
    }
}

impl fmt::Display for HGPoly {
    /// Canonical rendering, ordered by `t`-degree then Tate exponent then
    /// partition, e.g. `s[2] + (s[2]+s[1,1])*L*t^2 + s[2]*L^3*t^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(
            f,
            self.coeffs
                .iter()
                .flat_map(|(&d, c)| c.pieces().map(move |(k, v)| render_term(v, k, d))),
        )
    }
}

/// Integer Laurent polynomial in `t` (Poincaré polynomial).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl BettiPoly {
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(iter: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (d, c) in iter {
            *coeffs.entry(d).or_insert(0) += c;
        }
        coeffs.retain(|_, c| *c != 0);
        Self { coeffs }
    }

    pub fn coeff(&self, d: i32) -> i64 {
        self.coeffs.get(&d).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&d, &c)| (d, c))
    }

    /// Value at `t = ±1`.
    pub fn eval_sign(&self, negative: bool) -> i64 {
        self.coeffs
            .iter()
            .map(|(&d, &c)| {
                if negative && d.rem_euclid(2) == 1 {
                    -c
                } else {
                    c
                }
            })
            .sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms()
                .flat_map(|(da, ca)| other.terms().map(move |(db, cb)| (da + db, ca * cb))),
        )
    }

    /// As a non-equivariant, weight-zero HG polynomial.
    pub fn to_hg(&self) -> HGPoly {
        HGPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&d, &c)| (d, MotiveClass::scalar(c)))
                .collect(),
        }
    }
}

impl fmt::Display for BettiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(
            f,
            self.coeffs
                .iter()
                .map(|(&d, &c)| render_term(&RepVector::scalar(c), 0, d)),
        )
    }
}
