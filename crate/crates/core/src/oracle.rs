//! Brute-force reference implementations.
//!
//! Everything here works on explicit element sets and literal quantifiers,
//! sharing nothing with the optimized code beyond the data types. Sizes are
//! guarded so that the enumerations stay small.

use std::collections::BTreeSet;

use crate::aggregation::{CommFn, LatticeFn, Variant};
use crate::chain::Chain;
use crate::correspondence::Corr;
use crate::error::{Error, Result};
use crate::interval::{Interval, TopkisOrd};
use crate::measure::{Measure, Subset};

pub const ENUMERATION_BUDGET: u64 = 1_000_000;
pub const MAX_ORACLE_GROUND: usize = 4;

type Set = BTreeSet<usize>;

fn elements(i: &Interval) -> Set {
    (i.lo()..=i.hi()).collect()
}

fn to_interval(chain: &Chain, set: &Set) -> Result<Interval> {
    let (lo, hi) = match (set.first(), set.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return Err(Error::domain("oracle produced an empty set")),
    };
    if set.len() != hi - lo + 1 {
        return Err(Error::domain(format!("oracle set {set:?} is not an interval")));
    }
    Interval::new(chain, lo, hi)
}

/// `{a ∧ b : a ∈ A, b ∈ B}` (or `∨`).
fn set_op(a: &Set, b: &Set, op: fn(usize, usize) -> usize) -> Set {
    a.iter().flat_map(|&x| b.iter().map(move |&y| op(x, y))).collect()
}

fn family_op(intervals: &[Interval], op: fn(usize, usize) -> usize) -> Result<Interval> {
    let first = intervals
        .first()
        .ok_or_else(|| Error::domain("empty interval family"))?;
    let mut count: u64 = 1;
    for i in intervals {
        first.chain().ensure_same(i.chain())?;
        count = count.saturating_mul((i.hi() - i.lo() + 1) as u64);
    }
    if count > ENUMERATION_BUDGET {
        return Err(Error::Budget(format!("{count} choice functions")));
    }
    // odometer over choice functions
    let mut choice: Vec<usize> = intervals.iter().map(|i| i.lo()).collect();
    let mut out = Set::new();
    loop {
        out.insert(choice.iter().copied().reduce(op).unwrap());
        let mut k = 0;
        loop {
            if k == choice.len() {
                return to_interval(first.chain(), &out);
            }
            if choice[k] < intervals[k].hi() {
                choice[k] += 1;
                break;
            }
            choice[k] = intervals[k].lo();
            k += 1;
        }
    }
}

/// `{⋁ᵢ aᵢ : aᵢ ∈ Iᵢ}` by enumerating every choice function.
pub fn oracle_sqcup_family(intervals: &[Interval]) -> Result<Interval> {
    family_op(intervals, usize::max)
}

/// `{⋀ᵢ aᵢ : aᵢ ∈ Iᵢ}` by enumerating every choice function.
pub fn oracle_sqcap_family(intervals: &[Interval]) -> Result<Interval> {
    family_op(intervals, usize::min)
}

/// `Y₁ ⊑ Y₂` iff `y₁ ∧ y₂ ∈ Y₁` and `y₁ ∨ y₂ ∈ Y₂` for all pairs.
fn topkis_le(a: &Set, b: &Set) -> bool {
    a.iter()
        .all(|&x| b.iter().all(|&y| a.contains(&x.min(y)) && b.contains(&x.max(y))))
}

pub fn oracle_topkis(i1: &Interval, i2: &Interval) -> Result<TopkisOrd> {
    i1.chain().ensure_same(i2.chain())?;
    let (a, b) = (elements(i1), elements(i2));
    Ok(match (topkis_le(&a, &b), topkis_le(&b, &a)) {
        (true, true) => TopkisOrd::Equal,
        (true, false) => TopkisOrd::Less,
        (false, true) => TopkisOrd::Greater,
        (false, false) => TopkisOrd::Incomparable,
    })
}

fn corr_set(psi: &Corr, u: usize) -> Option<Set> {
    psi.get(u).map(|s| (s.lo()..=s.hi()).collect())
}

/// `(ε_x ⊛_D ψ)` with set-valued meets and joins; the sharp version keeps
/// `ψ(x)` on the domain and collapses to the supremum elsewhere.
pub fn oracle_saturation(psi: &Corr, x: usize, sharp: bool) -> Result<Interval> {
    psi.src().check_rank(x)?;
    let l = psi.dst();
    if sharp {
        if let Some(s) = corr_set(psi, x) {
            return to_interval(l, &s);
        }
    }
    let bottom: Set = [0].into();
    let top: Set = [l.top_rank()].into();
    let mut acc = bottom.clone();
    for u in 0..psi.src().size() {
        let Some(s) = corr_set(psi, u) else { continue };
        let eps = if u >= x { &top } else { &bottom };
        acc = set_op(&acc, &set_op(eps, &s, usize::min), usize::max);
    }
    if sharp {
        acc = [*acc.last().unwrap()].into();
    }
    to_interval(l, &acc)
}

fn check_small(m: &Measure) -> Result<()> {
    if m.ground().len() > MAX_ORACLE_GROUND {
        return Err(Error::Budget(format!(
            "oracle needs |Ω| ≤ {MAX_ORACLE_GROUND}, got {}",
            m.ground().len()
        )));
    }
    Ok(())
}

fn oracle_g(m: &Measure, f: &LatticeFn, x: usize) -> Result<usize> {
    let mut a = Subset::EMPTY;
    for w in 0..f.ground().len() {
        if f.get(w) >= x {
            a = a.with(w);
        }
    }
    m.value(a)
}

/// `Q(p)` from the literal preimage `{x : μ(f ≥ x) = p}` and saturation.
pub fn oracle_quantile(m: &Measure, f: &LatticeFn, p: usize, variant: Variant) -> Result<Interval> {
    let l = f.scale();
    let g: Vec<usize> = (0..l.size()).map(|x| oracle_g(m, f, x)).collect::<Result<_>>()?;
    let table = (0..m.scale().size())
        .map(|q| {
            let pre: Set = (0..l.size()).filter(|&x| g[x] == q).collect();
            if pre.is_empty() {
                Ok(None)
            } else {
                Ok(Some(to_interval(l, &pre)?.span()))
            }
        })
        .collect::<Result<_>>()?;
    let inv = Corr::new(m.scale(), l, table)?;
    oracle_saturation(&inv, p, variant == Variant::Sharp)
}

fn oracle_product(
    m: &Measure,
    f: &LatticeFn,
    ell: &CommFn,
    variant: Variant,
    dual: bool,
) -> Result<Interval> {
    let l = f.scale();
    let (init, inner, outer): (Set, fn(usize, usize) -> usize, fn(usize, usize) -> usize) =
        if dual {
            ([l.top_rank()].into(), usize::max, usize::min)
        } else {
            ([0].into(), usize::min, usize::max)
        };
    let mut acc = init;
    for p in 0..m.scale().size() {
        let q = elements(&oracle_quantile(m, f, p, variant)?);
        acc = set_op(&acc, &set_op(&[ell.get(p)].into(), &q, inner), outer);
    }
    to_interval(l, &acc)
}

/// `⨆ₚ {ℓ(p)} ⊓ Q(p)` with set-valued operations.
pub fn oracle_fan_sugeno(m: &Measure, f: &LatticeFn, ell: &CommFn, variant: Variant) -> Result<Interval> {
    oracle_product(m, f, ell, variant, false)
}

/// `⨅ₚ {ℓ(p)} ⊔ Q(p)` with set-valued operations.
pub fn oracle_fan_sugeno_dual(
    m: &Measure,
    f: &LatticeFn,
    ell: &CommFn,
    variant: Variant,
) -> Result<Interval> {
    oracle_product(m, f, ell, variant, true)
}

/// `⋁_A μ(A) ∧ ⋀_{ω∈A} f(ω)`, the subset form of the Sugeno integral.
pub fn oracle_sugeno(m: &Measure, f: &LatticeFn) -> Result<usize> {
    let top = f.scale().top_rank();
    let mut best = 0;
    for a in m.ground().subsets() {
        let low = (0..f.ground().len())
            .filter(|&w| a.contains(w))
            .map(|w| f.get(w))
            .min()
            .unwrap_or(top);
        best = best.max(m.value(a)?.min(low));
    }
    Ok(best)
}

fn all_subfamilies(m: &Measure) -> impl Iterator<Item = Vec<Subset>> + '_ {
    let sets: Vec<Subset> = m.ground().subsets().collect();
    (1u64..1 << sets.len()).map(move |bits| {
        sets.iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &s)| s)
            .collect()
    })
}

/// `μ(⋂𝒜) = ⋀_{A∈𝒜} μ(A)` for every nonempty subfamily 𝒜.
pub fn oracle_minitive(m: &Measure) -> Result<bool> {
    check_small(m)?;
    let full = m.ground().full();
    for fam in all_subfamilies(m) {
        let cap = fam.iter().fold(full, |acc, &a| acc.intersection(a));
        let low = fam.iter().map(|&a| m.value(a)).collect::<Result<Vec<_>>>()?;
        if m.value(cap)? != *low.iter().min().unwrap() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `μ(⋃𝒜) = ⋁_{A∈𝒜} μ(A)` for every nonempty subfamily 𝒜.
pub fn oracle_maxitive(m: &Measure) -> Result<bool> {
    check_small(m)?;
    for fam in all_subfamilies(m) {
        let cup = fam.iter().fold(Subset::EMPTY, |acc, &a| acc.union(a));
        let high = fam.iter().map(|&a| m.value(a)).collect::<Result<Vec<_>>>()?;
        if m.value(cup)? != *high.iter().max().unwrap() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Literal `μ_*(A) = max { μ(B) : B ∈ 𝒦, B ⊆ A }` over a list of sets.
pub fn oracle_inner_value(m: &Measure, family: &[Subset], a: Subset) -> Result<usize> {
    let mut best = 0;
    for &b in family {
        if b.0 & !a.0 == 0 {
            best = best.max(m.value(b)?);
        }
    }
    Ok(best)
}

/// Literal `μ^*(A) = min { μ(B) : B ∈ 𝒦, B ⊇ A }` over a list of sets.
pub fn oracle_outer_value(m: &Measure, family: &[Subset], a: Subset) -> Result<usize> {
    let mut best = m.scale().top_rank();
    for &b in family {
        if a.0 & !b.0 == 0 {
            best = best.min(m.value(b)?);
        }
    }
    Ok(best)
}

fn is_set_chain(fam: &[Subset]) -> bool {
    fam.iter()
        .all(|a| fam.iter().all(|b| a.0 & !b.0 == 0 || b.0 & !a.0 == 0))
}

fn chain_search(m: &Measure, upper: bool) -> Result<Option<Vec<Subset>>> {
    if m.ground().len() > 3 {
        return Err(Error::Budget("chain search needs |Ω| ≤ 3".into()));
    }
    let full = m.ground().full();
    for fam in all_subfamilies(m) {
        if !fam.contains(&Subset::EMPTY) || !fam.contains(&full) || !is_set_chain(&fam) {
            continue;
        }
        let mut ok = true;
        for a in m.ground().subsets() {
            let rebuilt = if upper {
                oracle_outer_value(m, &fam, a)?
            } else {
                oracle_inner_value(m, &fam, a)?
            };
            if rebuilt != m.value(a)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(fam));
        }
    }
    Ok(None)
}

/// Whether some ⊆-chain `𝒦 ∋ ∅, Ω` has `μ = (μ|𝒦)_*`.
pub fn oracle_lower_chain(m: &Measure) -> Result<bool> {
    Ok(chain_search(m, false)?.is_some())
}

/// Whether some ⊆-chain `𝒦 ∋ ∅, Ω` has `μ = (μ|𝒦)^*`.
pub fn oracle_upper_chain(m: &Measure) -> Result<bool> {
    Ok(chain_search(m, true)?.is_some())
}

/// A chain witnessing [`oracle_lower_chain`], if any.
pub fn oracle_find_lower_chain(m: &Measure) -> Result<Option<Vec<Subset>>> {
    chain_search(m, false)
}
