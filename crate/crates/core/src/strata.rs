//! Borel–Moore polynomials of the strata of a simplicial resolution.
//!
//! Each stratum is a tower: a complex vector bundle of rank `r` over an
//! open-simplex bundle of dimension `m` over a configuration family. The
//! simplex's orientation twist is already part of the family's (twisted)
//! Borel–Moore polynomial, so the tower contributes
//! `base · t^m · L^{-r} t^{2r}`.

use crate::motive_ring::HGPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumDescriptor {
    pub label: String,
    /// Twisted Borel–Moore polynomial of the configuration family.
    pub base_bm: HGPoly,
    pub simplex_dim: u32,
    pub bundle_rank: u32,
}

impl StratumDescriptor {
    pub fn new(
        label: impl Into<String>,
        base_bm: HGPoly,
        simplex_dim: u32,
        bundle_rank: u32,
    ) -> Self {
        Self {
            label: label.into(),
            base_bm,
            simplex_dim,
            bundle_rank,
        }
    }

    pub fn bm(&self) -> HGPoly {
        stratum_bm(self)
    }
}

/// Borel–Moore polynomial of the stratum described by `d`.
pub fn stratum_bm(d: &StratumDescriptor) -> HGPoly {
    let rank = d.bundle_rank as i32;
    d.base_bm
        .shift(d.simplex_dim as i32 + 2 * rank)
        .tate_twist(-rank)
}

/// Borel–Moore polynomial of the open cone over a space whose reduced
/// homology polynomial is `reduced_base`: a shift by one degree.
pub fn cone_bm(reduced_base: &HGPoly) -> HGPoly {
    reduced_base.shift(1)
}
