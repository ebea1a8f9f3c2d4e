//! Interval-valued correspondences between chains.
//!
//! A [`Corr`] from `M` to `L` assigns to each point of its domain (a subset
//! of `M`) a nonempty interval of `L`; points outside the domain map to the
//! empty set. Monotone correspondences are exactly the interval-valued ones
//! that are monotone in the Topkis order, and their inverses are again
//! interval-valued.

use crate::chain::{Chain, ChainElem};
use crate::error::{Error, Result};
use crate::interval::{Interval, Span};

/// An ordinary total function between chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalFn {
    src: Chain,
    dst: Chain,
    values: Vec<usize>,
}

impl TotalFn {
    pub fn new(src: &Chain, dst: &Chain, values: Vec<usize>) -> Result<TotalFn> {
        if values.len() != src.size() {
            return Err(Error::invalid(
                "function",
                format!("expected {} values, got {}", src.size(), values.len()),
            ));
        }
        for &v in &values {
            dst.check_rank(v)?;
        }
        Ok(TotalFn {
            src: src.clone(),
            dst: dst.clone(),
            values,
        })
    }

    pub fn identity(chain: &Chain) -> TotalFn {
        TotalFn {
            src: chain.clone(),
            dst: chain.clone(),
            values: (0..chain.size()).collect(),
        }
    }

    pub fn src(&self) -> &Chain {
        &self.src
    }

    pub fn dst(&self) -> &Chain {
        &self.dst
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn get(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn is_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] >= w[1])
    }

    /// Pointwise `≤`.
    pub fn leq(&self, other: &TotalFn) -> Result<bool> {
        self.src.ensure_same(&other.src)?;
        self.dst.ensure_same(&other.dst)?;
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a <= b))
    }

    pub fn to_corr(&self) -> Corr {
        Corr {
            src: self.src.clone(),
            dst: self.dst.clone(),
            table: self.values.iter().map(|&v| Some(Span::point(v))).collect(),
        }
    }
}

/// A correspondence `M → I_L`, partial on `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corr {
    src: Chain,
    dst: Chain,
    table: Vec<Option<Span>>,
}

impl Corr {
    /// `table[x]` is the value at rank `x` of `src`, `None` off the domain.
    pub fn new(src: &Chain, dst: &Chain, table: Vec<Option<Span>>) -> Result<Corr> {
        if table.len() != src.size() {
            return Err(Error::invalid(
                "correspondence",
                format!("table has {} rows, source has {} points", table.len(), src.size()),
            ));
        }
        for s in table.iter().flatten() {
            dst.check_rank(s.hi())?;
        }
        Ok(Corr {
            src: src.clone(),
            dst: dst.clone(),
            table,
        })
    }

    pub fn total(src: &Chain, dst: &Chain, values: Vec<Span>) -> Result<Corr> {
        Corr::new(src, dst, values.into_iter().map(Some).collect())
    }

    pub fn from_pairs(
        src: &Chain,
        dst: &Chain,
        pairs: impl IntoIterator<Item = (usize, Span)>,
    ) -> Result<Corr> {
        let mut table = vec![None; src.size()];
        for (x, s) in pairs {
            src.check_rank(x)?;
            table[x] = Some(s);
        }
        Corr::new(src, dst, table)
    }

    pub fn src(&self) -> &Chain {
        &self.src
    }

    pub fn dst(&self) -> &Chain {
        &self.dst
    }

    pub fn table(&self) -> &[Option<Span>] {
        &self.table
    }

    pub fn get(&self, x: usize) -> Option<Span> {
        self.table.get(x).copied().flatten()
    }

    pub fn interval(&self, x: usize) -> Option<Interval> {
        self.get(x)
            .map(|s| Interval::from_span(&self.dst, s).expect("validated span"))
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.table
            .iter()
            .enumerate()
            .filter_map(|(x, s)| s.map(|_| x))
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    fn consecutive(&self) -> impl Iterator<Item = (Span, Span)> + '_ {
        let vals: Vec<Span> = self.table.iter().flatten().copied().collect();
        (1..vals.len()).map(move |i| (vals[i - 1], vals[i]))
    }

    /// `x₁ ≤ x₂` in the domain implies `φ(x₁) ⊑ φ(x₂)`.
    pub fn is_increasing(&self) -> bool {
        self.consecutive().all(|(a, b)| a.leq(b))
    }

    /// `x₁ ≤ x₂` in the domain implies `φ(x₁) ⊒ φ(x₂)`.
    pub fn is_decreasing(&self) -> bool {
        self.consecutive().all(|(a, b)| b.leq(a))
    }

    pub fn is_monotone(&self) -> bool {
        self.is_increasing() || self.is_decreasing()
    }

    /// The graph-rectangle form of monotonicity, checked literally on the
    /// graph: for `(x₁,y₂), (x₂,y₁)` in the graph with `x₁ ≤ x₂` and
    /// `y₁ ≤ y₂` (increasing; `y₁ ≥ y₂` for decreasing), every point of the
    /// rectangle spanned by them belongs to the graph. A rectangle reaching
    /// across an abscissa outside the domain therefore fails.
    pub fn satisfies_rectangles(&self, increasing: bool) -> bool {
        let dom: Vec<usize> = self.domain().collect();
        let in_graph = |x: usize, y: usize| self.table[x].is_some_and(|s| s.contains(y));
        for (i, &x1) in dom.iter().enumerate() {
            for &x2 in &dom[i..] {
                let (s1, s2) = (self.table[x1].unwrap(), self.table[x2].unwrap());
                for ya in s1.elements() {
                    for yb in s2.elements() {
                        let (lo, hi) = if increasing {
                            // (x1, ya=y₂) and (x2, yb=y₁) with y₁ ≤ y₂
                            if yb > ya {
                                continue;
                            }
                            (yb, ya)
                        } else {
                            if ya > yb {
                                continue;
                            }
                            (ya, yb)
                        };
                        for x in x1..=x2 {
                            if (lo..=hi).any(|y| !in_graph(x, y)) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Decreasing in the graph-rectangle sense: ⊑-decreasing on the domain,
    /// and across every gap in the domain the values on the left lie
    /// strictly above those on the right.
    pub fn is_graph_decreasing(&self) -> bool {
        let dom: Vec<usize> = self.domain().collect();
        self.is_decreasing()
            && dom.windows(2).all(|w| {
                w[1] == w[0] + 1 || self.table[w[0]].unwrap().lo() > self.table[w[1]].unwrap().hi()
            })
    }

    /// Monotone with no non-degenerate rectangle in the graph: distinct
    /// domain points share at most one value.
    pub fn is_sharply_monotone(&self) -> bool {
        let overlap_ok = |a: Span, b: Span| a.intersect(b).is_none_or(|s| s.len() <= 1);
        if self.is_monotone() {
            self.consecutive().all(|(a, b)| overlap_ok(a, b))
        } else {
            let vals: Vec<Span> = self.table.iter().flatten().copied().collect();
            vals.iter()
                .enumerate()
                .all(|(i, &a)| vals[i + 1..].iter().all(|&b| overlap_ok(a, b)))
        }
    }

    /// The inverse correspondence `L → I_M` with the same graph.
    ///
    /// Fails when some `φ⁻¹(y)` is not an interval of `M`, which cannot
    /// happen for monotone input with no domain gaps inside a preimage.
    pub fn inverse(&self) -> Result<Corr> {
        let mut buckets: Vec<Option<(usize, usize)>> = vec![None; self.dst.size()];
        for (x, s) in self.table.iter().enumerate() {
            let Some(s) = s else { continue };
            for y in s.elements() {
                buckets[y] = match buckets[y] {
                    None => Some((x, x)),
                    Some((lo, hi)) if hi + 1 == x => Some((lo, x)),
                    Some((lo, hi)) => {
                        return Err(Error::domain(format!(
                            "inverse is not interval-valued at {}: preimage contains {} and {} but not {}",
                            self.dst.label(y),
                            self.src.label(lo),
                            self.src.label(x),
                            self.src.label(hi + 1)
                        )))
                    }
                };
            }
        }
        Ok(Corr {
            src: self.dst.clone(),
            dst: self.src.clone(),
            table: buckets
                .into_iter()
                .map(|b| b.map(|(lo, hi)| Span::new(lo, hi)))
                .collect(),
        })
    }

    /// Pointwise `⊑` between correspondences with the same domain.
    pub fn leq(&self, other: &Corr) -> Result<bool> {
        self.same_shape(other)?;
        let mut ok = true;
        for (a, b) in self.table.iter().zip(&other.table) {
            match (a, b) {
                (Some(a), Some(b)) => ok &= a.leq(*b),
                (None, None) => {}
                _ => return Err(Error::domain("correspondences have different domains")),
            }
        }
        Ok(ok)
    }

    fn same_shape(&self, other: &Corr) -> Result<()> {
        self.src.ensure_same(&other.src)?;
        self.dst.ensure_same(&other.dst)
    }

    fn require_decreasing(&self, what: &str) -> Result<()> {
        if self.is_decreasing() {
            Ok(())
        } else {
            Err(Error::domain(format!("{what} needs a decreasing correspondence")))
        }
    }

    /// `ψ̃(x) = ε_x ⊛_D ψ`: the join of `ψ(u)` over domain points `u ≥ x`,
    /// `{𝕆}` when there are none.
    pub fn saturate(&self) -> Result<Corr> {
        self.require_decreasing("saturation")?;
        let mut out = vec![None; self.src.size()];
        let mut acc: Option<Span> = None;
        for x in (0..self.src.size()).rev() {
            if let Some(s) = self.table[x] {
                acc = Some(acc.map_or(s, |a| a.join(s)));
            }
            out[x] = Some(acc.unwrap_or(Span::point(0)));
        }
        Ok(Corr {
            src: self.src.clone(),
            dst: self.dst.clone(),
            table: out,
        })
    }

    /// Saturation with off-domain values collapsed to their supremum.
    ///
    /// Needs [`is_graph_decreasing`](Corr::is_graph_decreasing); with a
    /// merely ⊑-decreasing input the result need not be decreasing.
    pub fn sharp_saturate(&self) -> Result<Corr> {
        if !self.is_graph_decreasing() {
            return Err(Error::domain(
                "sharp saturation needs a decreasing correspondence whose values are separated across domain gaps",
            ));
        }
        let sat = self.saturate()?;
        let table = sat
            .table
            .iter()
            .zip(&self.table)
            .map(|(t, own)| match own {
                Some(s) => Some(*s),
                None => t.map(|s| Span::point(s.hi())),
            })
            .collect();
        Ok(Corr { table, ..sat })
    }
}

fn check_product_operands(phi: &Corr, psi: &Corr) -> Result<()> {
    phi.same_shape(psi)?;
    if !phi.is_total() || !psi.is_total() {
        return Err(Error::domain(
            "product needs total correspondences; saturate or restrict first",
        ));
    }
    Ok(())
}

/// `φ ⊛ ψ = ⨆ₓ φ(x) ⊓ ψ(x)` for total correspondences.
pub fn inner_product(phi: &Corr, psi: &Corr) -> Result<Interval> {
    check_product_operands(phi, psi)?;
    partial_inner_product(phi, psi)
}

/// `⊛` over the common domain of `φ` and `ψ`; points outside it contribute
/// `{𝕆}`.
pub fn partial_inner_product(phi: &Corr, psi: &Corr) -> Result<Interval> {
    phi.same_shape(psi)?;
    let span = phi
        .table
        .iter()
        .zip(&psi.table)
        .filter_map(|(a, b)| Some(a.as_ref()?.meet(*b.as_ref()?)))
        .fold(Span::point(0), Span::join);
    Interval::from_span(&phi.dst, span)
}

/// `φ ⊛′ ψ = ⨅ₓ φ(x) ⊔ ψ(x)` for total correspondences.
pub fn dual_product(phi: &Corr, psi: &Corr) -> Result<Interval> {
    check_product_operands(phi, psi)?;
    let top = phi.dst.top_rank();
    let span = phi
        .table
        .iter()
        .zip(&psi.table)
        .map(|(a, b)| a.unwrap().join(b.unwrap()))
        .fold(Span::point(top), Span::meet);
    Interval::from_span(&phi.dst, span)
}

/// `ε_a`: `{𝕀}` on `[a, 𝕀]`, `{𝕆}` below, as a correspondence into `dst`.
pub fn unit_corr(a: &ChainElem, dst: &Chain) -> Corr {
    let top = dst.top_rank();
    let table = (0..a.chain().size())
        .map(|x| Some(Span::point(if x >= a.rank() { top } else { 0 })))
        .collect();
    Corr {
        src: a.chain().clone(),
        dst: dst.clone(),
        table,
    }
}
