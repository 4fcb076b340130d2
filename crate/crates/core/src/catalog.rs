//! Cohomology and Borel–Moore polynomials of the spaces that recur in the
//! stratifications: points, affine and projective spaces, `C^*`,
//! Grassmannians, ordered pairs of distinct points in `P^1` and `P^2`, and
//! the groups `GL(3)`, `PGL(3)`.
//!
//! A *marked* space carries an `S_2`-action: point swap on the
//! configuration spaces, inversion on `C^*`, and the trivial action
//! elsewhere.

use std::fmt;

use crate::error::{Error, Result};
use crate::motive_ring::{HGPoly, MotiveClass};
use crate::sym_char::Partition;

/// Largest parameter accepted for affine, projective and Grassmannian spaces.
pub const MAX_PARAM: u8 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    Point,
    Affine(u8),
    /// `C^*`.
    Torus,
    Projective(u8),
    /// `k`-dimensional linear subspaces of `C^N`.
    Grassmannian(u8, u8),
    /// Ordered pairs of distinct points of `P^1`; the swap is taken to act
    /// trivially on the whole cohomology.
    F2ProjectiveLine,
    /// Ordered pairs of distinct points of `P^1` with the swap acting by the
    /// sign on the degree-2 class.
    F2ProjectiveLineTwisted,
    /// Ordered pairs of distinct points of `P^2`.
    F2ProjectivePlane,
    Gl3,
    Pgl3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpaceId {
    pub kind: SpaceKind,
    pub marked: bool,
}

impl SpaceId {
    pub fn new(kind: SpaceKind) -> Self {
        Self {
            kind,
            marked: false,
        }
    }

    pub fn marked(kind: SpaceKind) -> Self {
        Self { kind, marked: true }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self.kind {
            SpaceKind::Affine(n) | SpaceKind::Projective(n) => n <= MAX_PARAM,
            SpaceKind::Grassmannian(k, n) => k <= n && n <= MAX_PARAM,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidSpace(self.to_string()))
        }
    }

    /// Complex dimension.
    pub fn dimension(&self) -> i32 {
        match self.kind {
            SpaceKind::Point => 0,
            SpaceKind::Affine(n) | SpaceKind::Projective(n) => n.into(),
            SpaceKind::Torus => 1,
            SpaceKind::Grassmannian(k, n) => i32::from(k) * i32::from(n - k),
            SpaceKind::F2ProjectiveLine | SpaceKind::F2ProjectiveLineTwisted => 2,
            SpaceKind::F2ProjectivePlane => 4,
            SpaceKind::Gl3 => 9,
            SpaceKind::Pgl3 => 8,
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::Point => write!(f, "pt"),
            SpaceKind::Affine(n) => write!(f, "A({n})"),
            SpaceKind::Torus => write!(f, "Gm"),
            SpaceKind::Projective(n) => write!(f, "P({n})"),
            SpaceKind::Grassmannian(k, n) => write!(f, "Gr({k},{n})"),
            SpaceKind::F2ProjectiveLine => write!(f, "F2P1"),
            SpaceKind::F2ProjectiveLineTwisted => write!(f, "F2P1tw"),
            SpaceKind::F2ProjectivePlane => write!(f, "F2P2"),
            SpaceKind::Gl3 => write!(f, "GL3"),
            SpaceKind::Pgl3 => write!(f, "PGL3"),
        }
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.marked {
            write!(f, "{}, marked", self.kind)
        } else {
            write!(f, "{}", self.kind)
        }
    }
}

fn s2() -> MotiveClass {
    MotiveClass::irreducible(Partition::trivial(2), 1, 0)
}

fn s11() -> MotiveClass {
    MotiveClass::irreducible(Partition::new(&[1, 1]).expect("valid partition"), 1, 0)
}

fn scalar_poly(terms: &[(i32, i32, i64)]) -> HGPoly {
    HGPoly::from_terms(
        terms
            .iter()
            .map(|&(d, k, c)| (d, MotiveClass::tate(k).scale(c))),
    )
    .expect("scalar terms")
}

fn marked_poly(terms: &[(i32, i32, MotiveClass)]) -> HGPoly {
    HGPoly::from_terms(terms.iter().map(|(d, k, c)| (*d, c.twist(*k)))).expect("S_2 terms")
}

/// Gaussian binomial `[N choose k]` in `q = L t^2`, via the q-Pascal rule
/// `[N,k] = [N-1,k-1] + q^k [N-1,k]`.
pub fn gaussian_binomial(n: u8, k: u8) -> HGPoly {
    if k > n {
        return HGPoly::zero();
    }
    // row[j] = [m, j] for the current m.
    let mut row = vec![HGPoly::one()];
    for m in 1..=usize::from(n) {
        let mut next = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let left = if j > 0 {
                row[j - 1].clone()
            } else {
                HGPoly::zero()
            };
            let right = match row.get(j) {
                Some(p) => p.tate_twist(j as i32).shift(2 * j as i32),
                None => HGPoly::zero(),
            };
            next.push(left.add(&right).expect("scalar polynomials"));
        }
        row = next;
    }
    row.swap_remove(usize::from(k))
}

/// Rational cohomology polynomial.
pub fn coh_poly(id: SpaceId) -> Result<HGPoly> {
    id.validate()?;
    let plain = |p: HGPoly| -> HGPoly {
        if id.marked {
            p.mul_class(&s2()).expect("scalar times S_2 class")
        } else {
            p
        }
    };
    Ok(match id.kind {
        SpaceKind::Point | SpaceKind::Affine(_) => plain(HGPoly::one()),
        SpaceKind::Projective(n) => plain(gaussian_binomial(n + 1, 1)),
        SpaceKind::Grassmannian(k, n) => plain(gaussian_binomial(n, k)),
        SpaceKind::Gl3 => plain(scalar_poly(&[(0, 0, 1), (1, 1, 1)]).mul(&pgl3_coh())?),
        SpaceKind::Pgl3 => plain(pgl3_coh()),
        SpaceKind::F2ProjectiveLine => plain(scalar_poly(&[(0, 0, 1), (2, 1, 1)])),
        // Inversion acts by -1 on H^1(C^*).
        SpaceKind::Torus if id.marked => marked_poly(&[(0, 0, s2()), (1, 1, s11())]),
        SpaceKind::Torus => scalar_poly(&[(0, 0, 1), (1, 1, 1)]),
        // In H^2(P^1 x P^1 minus the diagonal) the two hyperplane classes
        // differ by a sign, so the swap acts by -1.
        SpaceKind::F2ProjectiveLineTwisted if id.marked => {
            marked_poly(&[(0, 0, s2()), (2, 1, s11())])
        }
        SpaceKind::F2ProjectiveLineTwisted => scalar_poly(&[(0, 0, 1), (2, 1, 1)]),
        SpaceKind::F2ProjectivePlane if id.marked => {
            let both = s2().add(&s11())?;
            marked_poly(&[
                (0, 0, s2()),
                (2, 1, both.clone()),
                (4, 2, both),
                (6, 3, s11()),
            ])
        }
        SpaceKind::F2ProjectivePlane => scalar_poly(&[(0, 0, 1), (2, 1, 2), (4, 2, 2), (6, 3, 1)]),
    })
}

fn pgl3_coh() -> HGPoly {
    scalar_poly(&[(0, 0, 1), (3, 2, 1)])
        .mul(&scalar_poly(&[(0, 0, 1), (5, 3, 1)]))
        .expect("scalar polynomials")
}

/// Borel–Moore polynomial, the Poincaré dual of [`coh_poly`] at the
/// catalog dimension.
pub fn bm_poly(id: SpaceId) -> Result<HGPoly> {
    Ok(coh_poly(id)?.poincare_dual_bm(id.dimension()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    Affine,
    Projective,
}

/// Borel–Moore homology of the unordered configuration space `B(k, Z)`
/// with coefficients in the sign local system, for `Z = C^N` or `P^N`.
///
/// In `C^N` only a single point survives. In `P^N`, `k` points must span a
/// projective `(k-1)`-plane for the homology not to vanish; the result is
/// the Borel–Moore polynomial of the Grassmannian of such planes, shifted
/// by `t^{k(k-1)}` and twisted by `L^{-k(k-1)/2}` (the open simplex of
/// configurations within a fixed plane).
pub fn twisted_config_bm(k: u8, n: u8, ambient: Ambient) -> Result<HGPoly> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "twisted configuration space needs k >= 1 and N >= 1, got k={k}, N={n}"
        )));
    }
    match ambient {
        Ambient::Affine if k == 1 => bm_poly(SpaceId::new(SpaceKind::Affine(n))),
        Ambient::Affine => Ok(HGPoly::zero()),
        Ambient::Projective if k >= n + 2 => Ok(HGPoly::zero()),
        Ambient::Projective => {
            let pairs = i32::from(k) * i32::from(k - 1);
            let grass = bm_poly(SpaceId::new(SpaceKind::Grassmannian(k, n + 1)))?;
            Ok(grass.tate_twist(-pairs / 2).shift(pairs))
        }
    }
}
