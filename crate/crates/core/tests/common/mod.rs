//! Seeded instance generators shared by the integration and acceptance tests.
#![allow(dead_code)]


use ordagg_core::aggregation::{CommFn, LatticeFn, RFn};
use ordagg_core::correspondence::{Corr, TotalFn};
use ordagg_core::measure::{chain_measure, ChainKind, GroundSet, Measure, Subset};
use ordagg_core::{Chain, ReflChain, Span};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn chain(r: &mut TestRng, name: &str, min: usize, max: usize) -> Chain {
    Chain::new(name, r.gen_range(min..=max)).unwrap()
}

pub fn span(r: &mut TestRng, size: usize) -> Span {
    let a = r.gen_range(0..size);
    let b = r.gen_range(0..size);
    Span::new(a.min(b), a.max(b))
}

/// Every interval of a chain of `size` elements.
pub fn all_spans(size: usize) -> Vec<Span> {
    (0..size)
        .flat_map(|lo| (lo..size).map(move |hi| Span::new(lo, hi)))
        .collect()
}

/// A total table of arbitrary intervals.
pub fn table(r: &mut TestRng, m: &Chain, l: &Chain) -> Corr {
    let t = (0..m.size()).map(|_| span(r, l.size())).collect();
    Corr::total(m, l, t).unwrap()
}

fn sorted(r: &mut TestRng, n: usize, size: usize, descending: bool) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).map(|_| r.gen_range(0..size)).collect();
    v.sort_unstable();
    if descending {
        v.reverse();
    }
    v
}

/// A monotone interval table on the points of `domain` (ascending).
pub fn monotone_table(r: &mut TestRng, m: &Chain, l: &Chain, domain: &[usize], increasing: bool) -> Corr {
    let lo = sorted(r, domain.len(), l.size(), !increasing);
    let hi = sorted(r, domain.len(), l.size(), !increasing);
    Corr::from_pairs(
        m,
        l,
        domain
            .iter()
            .zip(lo.iter().zip(&hi))
            .map(|(&x, (&a, &b))| (x, Span::new(a, a.max(b)))),
    )
    .unwrap()
}

pub fn random_domain(r: &mut TestRng, size: usize) -> Vec<usize> {
    let mut d: Vec<usize> = (0..size).filter(|_| r.gen_bool(0.5)).collect();
    if d.is_empty() {
        d.push(r.gen_range(0..size));
    }
    d
}

pub fn decreasing_fn(r: &mut TestRng, src: &Chain, dst: &Chain) -> TotalFn {
    TotalFn::new(src, dst, sorted(r, src.size(), dst.size(), true)).unwrap()
}

pub fn increasing_fn(r: &mut TestRng, src: &Chain, dst: &Chain) -> TotalFn {
    TotalFn::new(src, dst, sorted(r, src.size(), dst.size(), false)).unwrap()
}

/// A random decreasing function together with a pointwise larger one.
pub fn decreasing_pair(r: &mut TestRng, src: &Chain, dst: &Chain) -> (TotalFn, TotalFn) {
    let a = decreasing_fn(r, src, dst);
    let b = decreasing_fn(r, src, dst);
    let hi: Vec<usize> = a.values().iter().zip(b.values()).map(|(x, y)| *x.max(y)).collect();
    (a, TotalFn::new(src, dst, hi).unwrap())
}

pub fn ground(r: &mut TestRng, max: usize) -> GroundSet {
    GroundSet::indexed(r.gen_range(1..=max)).unwrap()
}

/// A monotone measure on 2^Ω, built from random seeds by a subset-max or
/// superset-min sweep.
pub fn measure(r: &mut TestRng, g: &GroundSet, m: &Chain) -> Measure {
    let raw: Vec<usize> = (0..g.power_size()).map(|_| r.gen_range(0..m.size())).collect();
    let full = g.full();
    let top = m.top_rank();
    let from_below = r.gen_bool(0.5);
    Measure::from_fn(g, m, |a| {
        if a.is_empty() {
            0
        } else if a == full {
            top
        } else if from_below {
            g.subsets()
                .filter(|b| !b.is_empty() && b.is_subset_of(a))
                .map(|b| raw[b.0 as usize])
                .max()
                .unwrap()
        } else {
            g.subsets()
                .filter(|b| b != &full && a.is_subset_of(*b))
                .map(|b| raw[b.0 as usize])
                .min()
                .unwrap()
        }
    })
    .unwrap()
}

/// A random ⊆-chain `∅ ⊂ K₁ ⊂ ... ⊂ Ω` with increasing values.
pub fn set_chain(r: &mut TestRng, g: &GroundSet, m: &Chain) -> Vec<(Subset, usize)> {
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.shuffle(r);
    let mut out = vec![(Subset::EMPTY, 0)];
    let (mut cur, mut v) = (Subset::EMPTY, 0);
    for &i in &order[..g.len() - 1] {
        cur = cur.with(i);
        if r.gen_bool(0.7) {
            v = r.gen_range(v..m.size());
            out.push((cur, v));
        }
    }
    out.push((g.full(), m.top_rank()));
    out
}

pub fn chain_measure_of(r: &mut TestRng, g: &GroundSet, m: &Chain, kind: ChainKind) -> Measure {
    let c = set_chain(r, g, m);
    chain_measure(g, m, &c, kind).unwrap()
}

/// A measure on a random family containing ∅ and Ω.
pub fn partial_measure(r: &mut TestRng, g: &GroundSet, m: &Chain) -> Measure {
    let total = measure(r, g, m);
    let family: Vec<Subset> = g.subsets().filter(|_| r.gen_bool(0.4)).collect();
    total.restrict(family).unwrap()
}

pub fn lattice_fn(r: &mut TestRng, g: &GroundSet, l: &Chain) -> LatticeFn {
    LatticeFn::new(g, l, (0..g.len()).map(|_| r.gen_range(0..l.size())).collect()).unwrap()
}

/// A function pointwise above `f`.
pub fn lattice_fn_above(r: &mut TestRng, f: &LatticeFn) -> LatticeFn {
    let values = f
        .values()
        .iter()
        .map(|&v| r.gen_range(v..f.scale().size()))
        .collect();
    LatticeFn::new(f.ground(), f.scale(), values).unwrap()
}

pub fn rfn(r: &mut TestRng, g: &GroundSet, s: &ReflChain) -> RFn {
    let n = s.half();
    RFn::new(g, s, (0..g.len()).map(|_| r.gen_range(-n..=n)).collect()).unwrap()
}

pub fn rfn_above(r: &mut TestRng, f: &RFn) -> RFn {
    let n = f.scale().half();
    let values = f.values().iter().map(|&v| r.gen_range(v..=n)).collect();
    RFn::new(f.ground(), f.scale(), values).unwrap()
}

/// An increasing `M → L`, optionally with `ℓ(𝕆) = 𝕆`.
pub fn comm(r: &mut TestRng, m: &Chain, l: &Chain, zero_at_bottom: bool) -> CommFn {
    let mut v = sorted(r, m.size(), l.size(), false);
    if zero_at_bottom {
        v[0] = 0;
    }
    CommFn::new(m, l, v).unwrap()
}

/// A comm pointwise below `ell`.
pub fn comm_below(r: &mut TestRng, ell: &CommFn) -> CommFn {
    let mut v: Vec<usize> = ell.values().iter().map(|&x| r.gen_range(0..=x)).collect();
    for i in 1..v.len() {
        v[i] = v[i].max(v[i - 1]);
    }
    // keep k ≤ ℓ after the running max
    for (k, &e) in v.iter_mut().zip(ell.values()) {
        *k = (*k).min(e);
    }
    CommFn::new(ell.src(), ell.dst(), v).unwrap()
}

/// A measure pointwise below `mu`.
pub fn measure_below(r: &mut TestRng, mu: &Measure) -> Measure {
    let other = measure(r, mu.ground(), mu.scale());
    Measure::from_fn(mu.ground(), mu.scale(), |a| {
        other.value(a).unwrap().min(mu.value(a).unwrap())
    })
    .unwrap()
}

/// Every monotone measure on 2^Ω with values in `m`.
pub fn all_measures(g: &GroundSet, m: &Chain) -> Vec<Measure> {
    let n = g.power_size();
    let inner: Vec<u32> = (1..n as u32 - 1).collect();
    let mut out = Vec::new();
    let mut vals = vec![0usize; n];
    vals[n - 1] = m.top_rank();
    fn rec(i: usize, inner: &[u32], vals: &mut Vec<usize>, g: &GroundSet, m: &Chain, out: &mut Vec<Measure>) {
        if i == inner.len() {
            if let Ok(mu) = Measure::from_fn(g, m, |a| vals[a.0 as usize]) {
                out.push(mu);
            }
            return;
        }
        let a = inner[i] as usize;
        // subsets of a come earlier in bitmask order, so prune on them
        let floor = (0..a).filter(|&b| b & !a == 0).map(|b| vals[b]).max().unwrap_or(0);
        for v in floor..m.size() {
            vals[a] = v;
            rec(i + 1, inner, vals, g, m, out);
        }
    }
    rec(0, &inner, &mut vals, g, m, &mut out);
    out
}

/// Every ⊆-chain from ∅ to Ω with every increasing value assignment.
pub fn all_chain_specs(g: &GroundSet, m: &Chain) -> Vec<Vec<(Subset, usize)>> {
    let full = g.full();
    let inner: Vec<Subset> = g.subsets().filter(|a| !a.is_empty() && *a != full).collect();
    let mut out = Vec::new();
    for bits in 0u32..1 << inner.len() {
        let mut sets: Vec<Subset> = inner
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &s)| s)
            .collect();
        sets.sort_by_key(|s| s.len());
        if sets.windows(2).any(|w| !w[0].is_subset_of(w[1]) || w[0] == w[1]) {
            continue;
        }
        let mut values = vec![0usize; sets.len()];
        loop {
            let mut spec = vec![(Subset::EMPTY, 0)];
            spec.extend(sets.iter().copied().zip(values.iter().copied()));
            spec.push((full, m.top_rank()));
            out.push(spec);
            // next nondecreasing value vector
            let mut k = values.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                if values[k] < m.top_rank() {
                    values[k] += 1;
                    let v = values[k];
                    for x in &mut values[k + 1..] {
                        *x = v;
                    }
                    break;
                }
                if k == 0 {
                    k = usize::MAX;
                    break;
                }
            }
            if k == usize::MAX || values.is_empty() {
                break;
            }
        }
    }
    out
}
