//! Ordinal distances and norms for `R`-valued functions.

use crate::aggregation::{fan_sugeno_sup, CommFn, LatticeFn, RFn};
use crate::chain::{signed, ChainElem};
use crate::error::{Error, Result};
use crate::measure::Measure;

/// `ω ↦ dist(f(ω), g(ω))`, an `L₊`-valued function.
pub fn pointwise_distance(f: &RFn, g: &RFn) -> Result<LatticeFn> {
    f.ground().ensure_same(g.ground())?;
    f.scale().ensure_same(g.scale())?;
    let values = f
        .values()
        .iter()
        .zip(g.values())
        .map(|(&x, &y)| signed::dist(x, y) as usize)
        .collect();
    LatticeFn::new(f.ground(), &f.scale().positive_half(), values)
}

/// `dist_{μ,ℓ}(f, g) = S̄_{μ,ℓ}(|f ⩖ (−g)|)`.
pub fn ordinal_distance(m: &Measure, ell: &CommFn, f: &RFn, g: &RFn) -> Result<ChainElem> {
    fan_sugeno_sup(m, &pointwise_distance(f, g)?, ell)
}

/// `‖f‖_{μ,ℓ} = dist_{μ,ℓ}(f, 𝕆)`.
pub fn ordinal_norm(m: &Measure, ell: &CommFn, f: &RFn) -> Result<ChainElem> {
    ordinal_distance(m, ell, f, &RFn::zero(f.ground(), f.scale()))
}

/// The Ky-Fan norm `‖f‖_𝕆 = ‖f‖_{μ,id}`; needs `|M| = |L₊|`.
pub fn kyfan_norm(m: &Measure, f: &RFn) -> Result<ChainElem> {
    let half = f.scale().positive_half();
    let id = CommFn::identity_between(m.scale(), &half).map_err(|_| {
        Error::domain("the Ky-Fan norm needs a measure scale of the same size as L₊")
    })?;
    ordinal_norm(m, &id, f)
}

/// `‖f‖_∞ = ‖f‖_{sign(μ),id}`.
pub fn esssup_norm(m: &Measure, f: &RFn) -> Result<ChainElem> {
    kyfan_norm(&m.sign_measure(), f)
}

/// Whether `‖f‖_∞ = 𝕆`.
pub fn is_nullfunction(m: &Measure, f: &RFn) -> Result<bool> {
    Ok(esssup_norm(m, f)?.rank() == 0)
}
