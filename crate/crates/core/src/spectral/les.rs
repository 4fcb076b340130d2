use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::motive_ring::{HGPoly, MotiveClass};

/// Which long exact sequence relates the three terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LesMode {
    /// Borel–Moore homology of a closed `A ⊂ X` with open complement `U`:
    /// `… → H̄_k(A) → H̄_k(X) → H̄_k(U) → H̄_{k-1}(A) → …`.
    Bm,
    /// Cohomology of a smooth divisor `A ⊂ X` with complement `U`:
    /// `… → H^{k-2}(A)(-1) → H^k(X) → H^k(U) → H^{k-1}(A)(-1) → …`.
    Gysin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LesRole {
    A,
    X,
    U,
}

/// Image of the connecting map leaving the `U` term in degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectingDecl {
    pub degree: i32,
    pub image: MotiveClass,
}

impl ConnectingDecl {
    pub fn new(degree: i32, image: MotiveClass) -> Self {
        Self { degree, image }
    }
}

impl LesMode {
    /// Degree offset of the connecting map `U_k → A'_{k+step}`.
    fn step(self) -> i32 {
        match self {
            LesMode::Bm => -1,
            LesMode::Gysin => 1,
        }
    }

    /// The `A` term as it appears in the sequence.
    fn shifted(self, a: &HGPoly) -> HGPoly {
        match self {
            LesMode::Bm => a.clone(),
            LesMode::Gysin => a.tate_twist(1).shift(2),
        }
    }

    fn unshifted(self, a: &HGPoly) -> HGPoly {
        match self {
            LesMode::Bm => a.clone(),
            LesMode::Gysin => a.tate_twist(-1).shift(-2),
        }
    }
}

fn inconsistent(degree: i32, detail: String) -> Error {
    Error::LesInconsistent { degree, detail }
}

/// Solve for the one unknown term of a long exact sequence.
///
/// Exactly one of `a`, `x`, `u` must be `None`. With `δ_k` the declared
/// image of the connecting map out of `U_k` (zero where undeclared) and
/// `A'` the `A` term as it sits in the sequence,
/// `X_k = (A'_k − δ_{k−step}) + (U_k − δ_k)`. Every image is checked
/// against both adjacent terms and the Euler characteristics are checked to
/// add up.
pub fn les_solve(
    a: Option<&HGPoly>,
    x: Option<&HGPoly>,
    u: Option<&HGPoly>,
    connecting: &[ConnectingDecl],
    mode: LesMode,
) -> Result<(LesRole, HGPoly)> {
    let step = mode.step();
    let mut delta: BTreeMap<i32, MotiveClass> = BTreeMap::new();
    for decl in connecting {
        if delta.insert(decl.degree, decl.image.clone()).is_some() {
            return Err(inconsistent(
                decl.degree,
                "connecting map declared twice".into(),
            ));
        }
    }
    // δ as a polynomial at source degrees, and shifted to target degrees.
    let delta_src = HGPoly::from_terms(delta.iter().map(|(&k, c)| (k, c.clone())))?;
    let delta_tgt = delta_src.shift(step);
    let losses = delta_src.add(&delta_tgt)?;

    let (role, a_seq, x, u) = match (a, x, u) {
        (Some(a), Some(x), None) => {
            let a_seq = mode.shifted(a);
            let u = x.sub(&a_seq)?.add(&losses)?;
            (LesRole::U, a_seq, x.clone(), u)
        }
        (Some(a), None, Some(u)) => {
            let a_seq = mode.shifted(a);
            let x = a_seq.add(u)?.sub(&losses)?;
            (LesRole::X, a_seq, x, u.clone())
        }
        (None, Some(x), Some(u)) => {
            let a_seq = x.sub(u)?.add(&losses)?;
            (LesRole::A, a_seq, x.clone(), u.clone())
        }
        _ => {
            return Err(Error::InvalidArgument(
                "long exact sequence needs exactly one unknown term".into(),
            ))
        }
    };

    let degrees: BTreeSet<i32> = [&a_seq, &x, &u, &delta_src, &delta_tgt]
        .iter()
        .flat_map(|p| p.terms().map(|(d, _)| d).collect::<Vec<_>>())
        .collect();
    for &k in &degrees {
        let d_out = delta_src.coeff(k);
        let d_in = delta_tgt.coeff(k);
        if let Some((tate, p, c)) = d_out.first_negative() {
            return Err(inconsistent(
                k,
                format!("connecting image has {c} on {p}*L^{tate}"),
            ));
        }
        let checks = [
            ("A", a_seq.coeff(k)),
            ("X", x.coeff(k)),
            ("U", u.coeff(k)),
            (
                "U after the outgoing connecting map",
                u.coeff(k).sub(&d_out)?,
            ),
            (
                "A after the incoming connecting map",
                a_seq.coeff(k).sub(&d_in)?,
            ),
        ];
        for (what, class) in checks {
            if let Some((tate, p, c)) = class.first_negative() {
                return Err(inconsistent(
                    k,
                    format!("{what} would have multiplicity {c} on {p}*L^{tate}"),
                ));
            }
        }
    }

    if x.euler_class() != a_seq.add(&u)?.euler_class() {
        return Err(Error::Internal(
            "Euler characteristics of the sequence do not add up".into(),
        ));
    }

    let solved = match role {
        LesRole::A => mode.unshifted(&a_seq),
        LesRole::X => x,
        LesRole::U => u,
    };
    Ok((role, solved))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{bm_poly, SpaceId, SpaceKind};
    use crate::sym_char::Partition;

    fn s(parts: &[u32], tate: i32) -> MotiveClass {
        MotiveClass::irreducible(Partition::new(parts).unwrap(), 1, tate)
    }

    fn poly(terms: &[(i32, MotiveClass)]) -> HGPoly {
        HGPoly::from_terms(terms.iter().cloned()).unwrap()
    }

    #[test]
    fn complement_of_two_points() {
        let a = poly(&[(0, s(&[2], 0).add(&s(&[1, 1], 0)).unwrap())]);
        let x = bm_poly(SpaceId::marked(SpaceKind::Projective(2))).unwrap();
        let (role, u) = les_solve(
            Some(&a),
            Some(&x),
            None,
            &[ConnectingDecl::new(1, s(&[1, 1], 0))],
            LesMode::Bm,
        )
        .unwrap();
        assert_eq!(role, LesRole::U);
        assert_eq!(
            u,
            poly(&[(4, s(&[2], -2)), (2, s(&[2], -1)), (1, s(&[1, 1], 0))])
        );
        // And back: recover A and X from the other two.
        let (_, a2) = les_solve(
            None,
            Some(&x),
            Some(&u),
            &[ConnectingDecl::new(1, s(&[1, 1], 0))],
            LesMode::Bm,
        )
        .unwrap();
        assert_eq!(a2, a);
    }

    #[test]
    fn missing_connecting_map_is_inconsistent() {
        let a = poly(&[(0, s(&[2], 0).add(&s(&[1, 1], 0)).unwrap())]);
        let x = bm_poly(SpaceId::marked(SpaceKind::Projective(2))).unwrap();
        let err = les_solve(Some(&a), Some(&x), None, &[], LesMode::Bm).unwrap_err();
        assert_eq!(
            err,
            Error::LesInconsistent {
                degree: 0,
                detail: "U would have multiplicity -1 on s[1,1]*L^0".into()
            }
        );
    }

    #[test]
    fn gysin_twist() {
        let a = poly(&[(0, s(&[2], 0))]);
        let u = poly(&[(1, s(&[2], 1))]);
        let (_, x) = les_solve(Some(&a), None, Some(&u), &[], LesMode::Gysin).unwrap();
        assert_eq!(x, poly(&[(1, s(&[2], 1)), (2, s(&[2], 1))]));
        let (_, x) = les_solve(
            Some(&a),
            None,
            Some(&u),
            &[ConnectingDecl::new(1, s(&[2], 1))],
            LesMode::Gysin,
        )
        .unwrap();
        assert!(x.is_zero());
        let (role, back) = les_solve(
            None,
            Some(&x),
            Some(&u),
            &[ConnectingDecl::new(1, s(&[2], 1))],
            LesMode::Gysin,
        )
        .unwrap();
        assert_eq!((role, back), (LesRole::A, a));
    }

    #[test]
    fn needs_one_unknown() {
        let p = HGPoly::one();
        assert!(les_solve(Some(&p), Some(&p), Some(&p), &[], LesMode::Bm).is_err());
        assert!(les_solve(Some(&p), None, None, &[], LesMode::Bm).is_err());
    }

    #[test]
    fn image_larger_than_target() {
        let a = poly(&[(0, s(&[2], 0))]);
        let u = poly(&[(1, s(&[2], 0).scale(2))]);
        let err = les_solve(
            Some(&a),
            None,
            Some(&u),
            &[ConnectingDecl::new(1, s(&[2], 0).scale(2))],
            LesMode::Bm,
        )
        .unwrap_err();
        assert!(matches!(err, Error::LesInconsistent { degree: 0, .. }));
    }
}
