//! Distribution functions, quantile correspondences and the Fan-Sugeno
//! family of functionals.

use std::fmt;
use std::str::FromStr;

use crate::chain::{signed, Chain, ChainElem, ReflChain, ReflElem};
use crate::correspondence::{dual_product, inner_product, unit_corr, Corr, TotalFn};
use crate::error::{Error, Result};
use crate::interval::{Interval, RInterval, RSpan, Span};
use crate::measure::{GroundSet, Measure, Subset};

/// A total function `f: Ω → L` stored as ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFn {
    ground: GroundSet,
    scale: Chain,
    values: Vec<usize>,
}

impl LatticeFn {
    pub fn new(ground: &GroundSet, scale: &Chain, values: Vec<usize>) -> Result<LatticeFn> {
        if values.len() != ground.len() {
            return Err(Error::invalid(
                "function",
                format!("{} values for {} elements", values.len(), ground.len()),
            ));
        }
        for &v in &values {
            scale.check_rank(v)?;
        }
        Ok(LatticeFn {
            ground: ground.clone(),
            scale: scale.clone(),
            values,
        })
    }

    pub fn constant(ground: &GroundSet, scale: &Chain, c: usize) -> Result<LatticeFn> {
        LatticeFn::new(ground, scale, vec![c; ground.len()])
    }

    /// `𝟙_A`: 𝕀 on `A`, 𝕆 elsewhere.
    pub fn indicator(ground: &GroundSet, scale: &Chain, a: Subset) -> LatticeFn {
        let top = scale.top_rank();
        LatticeFn {
            ground: ground.clone(),
            scale: scale.clone(),
            values: (0..ground.len()).map(|i| if a.contains(i) { top } else { 0 }).collect(),
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn scale(&self) -> &Chain {
        &self.scale
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn get(&self, i: usize) -> usize {
        self.values[i]
    }

    fn ensure_compatible(&self, other: &LatticeFn) -> Result<()> {
        self.ground.ensure_same(&other.ground)?;
        self.scale.ensure_same(&other.scale)
    }

    fn zip_with(&self, other: &LatticeFn, op: fn(usize, usize) -> usize) -> Result<LatticeFn> {
        self.ensure_compatible(other)?;
        Ok(LatticeFn {
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| op(a, b)).collect(),
            ..self.clone()
        })
    }

    /// Pointwise `f ∨ g`.
    pub fn join(&self, other: &LatticeFn) -> Result<LatticeFn> {
        self.zip_with(other, usize::max)
    }

    /// Pointwise `f ∧ g`.
    pub fn meet(&self, other: &LatticeFn) -> Result<LatticeFn> {
        self.zip_with(other, usize::min)
    }

    /// `a ∧ f`.
    pub fn meet_const(&self, a: usize) -> Result<LatticeFn> {
        self.scale.check_rank(a)?;
        Ok(LatticeFn {
            values: self.values.iter().map(|&v| v.min(a)).collect(),
            ..self.clone()
        })
    }

    pub fn leq(&self, other: &LatticeFn) -> Result<bool> {
        self.ensure_compatible(other)?;
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a <= b))
    }
}

/// Upper level set `{f ≥ x}`, or `{f > x}` when `strict`.
pub fn level_set(f: &LatticeFn, x: usize, strict: bool) -> Result<Subset> {
    f.scale.check_rank(x)?;
    let mut s = Subset::EMPTY;
    for (i, &v) in f.values.iter().enumerate() {
        if v > x || (!strict && v == x) {
            s = s.with(i);
        }
    }
    Ok(s)
}

/// The distinct sets `{f ≥ x}`, smallest first.
pub fn level_chain(f: &LatticeFn) -> Vec<Subset> {
    let mut sets: Vec<Subset> = (0..f.scale.size())
        .rev()
        .map(|x| level_set(f, x, false).unwrap())
        .collect();
    sets.dedup();
    sets
}

/// Whether the level sets of all `fs` together form a ⊆-chain.
pub fn is_comonotonic(fs: &[LatticeFn]) -> Result<bool> {
    let Some(first) = fs.first() else {
        return Ok(true);
    };
    let mut sets = Vec::new();
    for f in fs {
        first.ensure_compatible(f)?;
        sets.extend(level_chain(f));
    }
    Ok(sets.iter().enumerate().all(|(i, a)| {
        sets[i + 1..]
            .iter()
            .all(|b| a.is_subset_of(*b) || b.is_subset_of(*a))
    }))
}

/// A function `f: Ω → R` on a reflection chain, stored as signed ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RFn {
    ground: GroundSet,
    scale: ReflChain,
    values: Vec<i64>,
}

impl RFn {
    pub fn new(ground: &GroundSet, scale: &ReflChain, values: Vec<i64>) -> Result<RFn> {
        if values.len() != ground.len() {
            return Err(Error::invalid(
                "function",
                format!("{} values for {} elements", values.len(), ground.len()),
            ));
        }
        for &v in &values {
            scale.check_srank(v)?;
        }
        Ok(RFn {
            ground: ground.clone(),
            scale: scale.clone(),
            values,
        })
    }

    pub fn zero(ground: &GroundSet, scale: &ReflChain) -> RFn {
        RFn {
            ground: ground.clone(),
            scale: scale.clone(),
            values: vec![0; ground.len()],
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn scale(&self) -> &ReflChain {
        &self.scale
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, i: usize) -> i64 {
        self.values[i]
    }

    fn ensure_compatible(&self, other: &RFn) -> Result<()> {
        self.ground.ensure_same(&other.ground)?;
        self.scale.ensure_same(&other.scale)
    }

    fn map(&self, op: impl Fn(i64) -> i64) -> RFn {
        RFn {
            values: self.values.iter().map(|&v| op(v)).collect(),
            ..self.clone()
        }
    }

    /// Pointwise reflection `−f`.
    pub fn neg(&self) -> RFn {
        self.map(|v| -v)
    }

    /// Pointwise `|f|`.
    pub fn abs(&self) -> RFn {
        self.map(i64::abs)
    }

    /// Pointwise `f ⩖ g`.
    pub fn svee(&self, other: &RFn) -> Result<RFn> {
        self.ensure_compatible(other)?;
        Ok(RFn {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| signed::svee(a, b))
                .collect(),
            ..self.clone()
        })
    }

    /// Scalar action `a △ f`.
    pub fn triangle_scalar(&self, a: i64) -> Result<RFn> {
        self.scale.check_srank(a)?;
        Ok(self.map(|v| signed::striangle(a, v)))
    }

    pub fn leq(&self, other: &RFn) -> Result<bool> {
        self.ensure_compatible(other)?;
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a <= b))
    }

    /// `f` viewed on the whole reflection chain as a plain chain.
    pub fn to_lattice_fn(&self) -> LatticeFn {
        let n = self.scale.half();
        LatticeFn {
            ground: self.ground.clone(),
            scale: self.scale.as_chain(),
            values: self.values.iter().map(|&v| (v + n) as usize).collect(),
        }
    }

    /// An `L₊`-valued function read as an `R`-valued one.
    pub fn from_positive(f: &LatticeFn, scale: &ReflChain) -> Result<RFn> {
        f.scale.ensure_same(&scale.positive_half())?;
        Ok(RFn {
            ground: f.ground.clone(),
            scale: scale.clone(),
            values: f.values.iter().map(|&v| v as i64).collect(),
        })
    }
}

/// An increasing commensurability function `ℓ: M → L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommFn(TotalFn);

impl CommFn {
    pub fn new(src: &Chain, dst: &Chain, values: Vec<usize>) -> Result<CommFn> {
        CommFn::from_total(TotalFn::new(src, dst, values)?)
    }

    pub fn from_total(t: TotalFn) -> Result<CommFn> {
        if let Some(w) = t.values().windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::invalid(
                "commensurability function",
                format!(
                    "not increasing: {} ↦ {} but {} ↦ {}",
                    t.src().label(w),
                    t.dst().label(t.get(w)),
                    t.src().label(w + 1),
                    t.dst().label(t.get(w + 1))
                ),
            ));
        }
        Ok(CommFn(t))
    }

    pub fn identity(chain: &Chain) -> CommFn {
        CommFn(TotalFn::identity(chain))
    }

    /// The rank-preserving map between two chains of equal size.
    pub fn identity_between(src: &Chain, dst: &Chain) -> Result<CommFn> {
        if src.size() != dst.size() {
            return Err(Error::domain(format!(
                "identity needs equal sizes, got {} and {}",
                src.size(),
                dst.size()
            )));
        }
        CommFn::new(src, dst, (0..src.size()).collect())
    }

    pub fn constant(src: &Chain, dst: &Chain, c: usize) -> Result<CommFn> {
        CommFn::new(src, dst, vec![c; src.size()])
    }

    pub fn src(&self) -> &Chain {
        self.0.src()
    }

    pub fn dst(&self) -> &Chain {
        self.0.dst()
    }

    pub fn values(&self) -> &[usize] {
        self.0.values()
    }

    pub fn get(&self, p: usize) -> usize {
        self.0.get(p)
    }

    pub fn as_total(&self) -> &TotalFn {
        &self.0
    }

    pub fn to_corr(&self) -> Corr {
        self.0.to_corr()
    }

    pub fn leq(&self, other: &CommFn) -> Result<bool> {
        self.0.leq(&other.0)
    }

    /// The same table with its codomain relabelled as `dst` (same size).
    fn retarget(&self, dst: &Chain) -> Result<CommFn> {
        CommFn::new(self.src(), dst, self.values().to_vec())
    }
}

/// Which saturation turns `G⁻¹` into the quantile correspondence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Variant {
    #[default]
    Sharp,
    Plain,
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sharp" => Ok(Variant::Sharp),
            "plain" => Ok(Variant::Plain),
            _ => Err(Error::domain(format!("unknown variant {s:?} (expected sharp or plain)"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Sharp => "sharp",
            Variant::Plain => "plain",
        })
    }
}

fn check_measure_fn(m: &Measure, f: &LatticeFn) -> Result<()> {
    m.ground().ensure_same(&f.ground)?;
    m.require_total()
}

/// `G(x) = μ(f ≥ x)`, a decreasing map `L → M`.
pub fn distribution(m: &Measure, f: &LatticeFn) -> Result<TotalFn> {
    check_measure_fn(m, f)?;
    let values = (0..f.scale.size())
        .map(|x| m.value(level_set(f, x, false).unwrap()))
        .collect::<Result<_>>()?;
    TotalFn::new(&f.scale, m.scale(), values)
}

/// The quantile correspondence `M → I_L`: the (sharp) saturation of `G⁻¹`.
pub fn quantile(m: &Measure, f: &LatticeFn, variant: Variant) -> Result<Corr> {
    let inv = distribution(m, f)?.to_corr().inverse()?;
    match variant {
        Variant::Sharp => inv.sharp_saturate(),
        Variant::Plain => inv.saturate(),
    }
}

/// The sharp quantile at `p0`.
pub fn median(m: &Measure, f: &LatticeFn, p0: usize) -> Result<Interval> {
    m.scale().check_rank(p0)?;
    Ok(quantile(m, f, Variant::Sharp)?.interval(p0).unwrap())
}

fn check_comm(m: &Measure, f: &LatticeFn, ell: &CommFn) -> Result<()> {
    ell.src().ensure_same(m.scale())?;
    ell.dst().ensure_same(&f.scale)
}

/// `S_{μ,ℓ}(f) = ℓ ⊛ Q_{μ,f}`.
pub fn fan_sugeno(m: &Measure, f: &LatticeFn, ell: &CommFn, variant: Variant) -> Result<Interval> {
    check_comm(m, f, ell)?;
    inner_product(&ell.to_corr(), &quantile(m, f, variant)?)
}

/// `S̄_{μ,ℓ}(f)`, the supremum of [`fan_sugeno`]; it does not depend on the
/// variant.
pub fn fan_sugeno_sup(m: &Measure, f: &LatticeFn, ell: &CommFn) -> Result<ChainElem> {
    let s = fan_sugeno(m, f, ell, Variant::Sharp)?;
    f.scale.elem(s.hi())
}

/// `ℓ ⊛′ Q_{μ,f}`.
pub fn fan_sugeno_dual(
    m: &Measure,
    f: &LatticeFn,
    ell: &CommFn,
    variant: Variant,
) -> Result<Interval> {
    check_comm(m, f, ell)?;
    dual_product(&ell.to_corr(), &quantile(m, f, variant)?)
}

/// `⋁ₓ x ∧ G(x)` for `L = M`.
pub fn sugeno_integral(m: &Measure, f: &LatticeFn) -> Result<ChainElem> {
    if m.scale().size() != f.scale.size() {
        return Err(Error::domain("the Sugeno integral needs equal function and measure scales"));
    }
    let g = distribution(m, f)?;
    let best = (0..f.scale.size()).map(|x| x.min(g.get(x))).max().unwrap();
    f.scale.elem(best)
}

/// `S_{μ,ε_p}(f)`, with `ε_p` taking the values 𝕆 and 𝕀 of `L`.
pub fn quantile_functional(m: &Measure, f: &LatticeFn, p: usize) -> Result<Interval> {
    let p = m.scale().elem(p)?;
    check_measure_fn(m, f)?;
    inner_product(&unit_corr(&p, &f.scale), &quantile(m, f, Variant::Sharp)?)
}

/// `f⁺ = f ∨ 𝕆`, as a function into `L₊`.
pub fn pos_part(f: &RFn) -> LatticeFn {
    LatticeFn {
        ground: f.ground.clone(),
        scale: f.scale.positive_half(),
        values: f.values.iter().map(|&v| v.max(0) as usize).collect(),
    }
}

/// `f⁻ = (−f)⁺`.
pub fn neg_part(f: &RFn) -> LatticeFn {
    pos_part(&f.neg())
}

fn check_half(ell: &CommFn, half: &Chain, what: &str) -> Result<()> {
    ell.dst().ensure_same(half).map_err(|_| {
        Error::domain(format!(
            "{what} must map into `{}`, found `{}`",
            half.name(),
            ell.dst().name()
        ))
    })
}

/// `SS_{μ,ℓ,k}(f) = S_{μ,ℓ}(f⁺) ⩖ −S_{μ,k}(f⁻)`; with `k = ℓ` this is the
/// symmetric Fan-Sugeno functional.
pub fn symmetric_fan_sugeno(
    m: &Measure,
    f: &RFn,
    ell: &CommFn,
    k: &CommFn,
    variant: Variant,
) -> Result<RInterval> {
    let half = f.scale.positive_half();
    check_half(ell, &half, "ℓ")?;
    check_half(k, &half, "k")?;
    let sp = fan_sugeno(m, &pos_part(f), ell, variant)?;
    let sn = fan_sugeno(m, &neg_part(f), k, variant)?;
    RInterval::new(&f.scale, RSpan::pos(sp.span()).svee(RSpan::neg(sn.span())))
}

/// `S̄_{μ,ℓ}(f⁺) ⩖ −S̄_{μ,k}(f⁻)`.
pub fn symmetric_fan_sugeno_sup(
    m: &Measure,
    f: &RFn,
    ell: &CommFn,
    k: &CommFn,
) -> Result<ReflElem> {
    let half = f.scale.positive_half();
    check_half(ell, &half, "ℓ")?;
    check_half(k, &half, "k")?;
    let sp = fan_sugeno_sup(m, &pos_part(f), ell)?.rank() as i64;
    let sn = fan_sugeno_sup(m, &neg_part(f), k)?.rank() as i64;
    f.scale.elem(signed::svee(sp, -sn))
}

/// `AS = S_{μ,ℓ₋}(f) ⩖ S_{μ,ℓ₊}(f)`, both products taken against the quantile
/// correspondence of `f` over the whole reflection chain.
///
/// `S_{μ,ℓ₊}(f)` is joined with `{𝕆}` so that it lies in `I_{L₊}`; without
/// this it can reach below 𝕆 when `f` takes negative values.
pub fn asymmetric_fan_sugeno(
    m: &Measure,
    f: &RFn,
    ell_minus: &CommFn,
    ell_plus: &CommFn,
    variant: Variant,
) -> Result<RInterval> {
    check_half(ell_minus, &f.scale.negative_half(), "ℓ₋")?;
    check_half(ell_plus, &f.scale.positive_half(), "ℓ₊")?;
    let n = f.scale.half() as usize;
    let full = f.scale.as_chain();
    let lf = f.to_lattice_fn();
    let minus = CommFn::new(m.scale(), &full, ell_minus.values().to_vec())?;
    let plus = CommFn::new(
        m.scale(),
        &full,
        ell_plus.values().iter().map(|&v| v + n).collect(),
    )?;
    let s_minus = fan_sugeno(m, &lf, &minus, variant)?.span();
    let s_plus = fan_sugeno(m, &lf, &plus, variant)?.span().join(Span::point(n));
    let neg = RSpan::neg(Span::new(n - s_minus.hi(), n - s_minus.lo()));
    let pos = RSpan::pos(Span::new(s_plus.lo() - n, s_plus.hi() - n));
    RInterval::new(&f.scale, neg.svee(pos))
}

/// `ℓ` with its codomain taken as `L₊` of `scale`; for callers holding a
/// table built against a plain chain of the same size.
pub fn comm_into_positive(ell: &CommFn, scale: &ReflChain) -> Result<CommFn> {
    ell.retarget(&scale.positive_half())
}
