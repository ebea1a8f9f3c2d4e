//! The lattice `(I_L, ⊑)` of nonempty intervals of a finite chain under the
//! Topkis order, and the interval reflection lattice 𝓡 built from two
//! copies of it.
//!
//! In a finite chain every nonempty preference interval is closed, so an
//! interval is stored as its two endpoint ranks. On closed intervals the
//! Topkis order is the componentwise endpoint order and
//! `[a₁,b₁] ⊔ [a₂,b₂] = [a₁∨a₂, b₁∨b₂]`, `[a₁,b₁] ⊓ [a₂,b₂] = [a₁∧a₂, b₁∧b₂]`.

use std::cmp::Ordering;
use std::fmt;

use crate::chain::{Chain, ReflChain};
use crate::error::{Error, Result};

/// Outcome of comparing two intervals in the Topkis order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TopkisOrd {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl TopkisOrd {
    pub fn is_le(self) -> bool {
        matches!(self, TopkisOrd::Less | TopkisOrd::Equal)
    }

    pub fn is_ge(self) -> bool {
        matches!(self, TopkisOrd::Greater | TopkisOrd::Equal)
    }

    pub fn reverse(self) -> TopkisOrd {
        match self {
            TopkisOrd::Less => TopkisOrd::Greater,
            TopkisOrd::Greater => TopkisOrd::Less,
            o => o,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TopkisOrd::Less => "less",
            TopkisOrd::Equal => "equal",
            TopkisOrd::Greater => "greater",
            TopkisOrd::Incomparable => "incomparable",
        }
    }
}

/// Endpoint pair `lo ≤ hi` of ranks; the chain-free kernel of [`Interval`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    lo: usize,
    hi: usize,
}

impl Span {
    /// # Panics
    ///
    /// Panics if `lo > hi`.
    pub fn new(lo: usize, hi: usize) -> Span {
        assert!(lo <= hi, "empty span [{lo},{hi}]");
        Span { lo, hi }
    }

    pub fn try_new(lo: usize, hi: usize) -> Option<Span> {
        (lo <= hi).then_some(Span { lo, hi })
    }

    pub const fn point(x: usize) -> Span {
        Span { lo: x, hi: x }
    }

    pub fn lo(self) -> usize {
        self.lo
    }

    pub fn hi(self) -> usize {
        self.hi
    }

    pub fn is_singleton(self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(self, x: usize) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn len(self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn elements(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }

    pub fn intersect(self, other: Span) -> Option<Span> {
        Span::try_new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    /// `⊔`
    pub fn join(self, other: Span) -> Span {
        Span {
            lo: self.lo.max(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// `⊓`
    pub fn meet(self, other: Span) -> Span {
        Span {
            lo: self.lo.min(other.lo),
            hi: self.hi.min(other.hi),
        }
    }

    /// `self ⊑ other`
    pub fn leq(self, other: Span) -> bool {
        self.lo <= other.lo && self.hi <= other.hi
    }

    pub fn topkis_cmp(self, other: Span) -> TopkisOrd {
        match (self.lo.cmp(&other.lo), self.hi.cmp(&other.hi)) {
            (Ordering::Equal, Ordering::Equal) => TopkisOrd::Equal,
            (Ordering::Less | Ordering::Equal, Ordering::Less | Ordering::Equal) => TopkisOrd::Less,
            (Ordering::Greater | Ordering::Equal, Ordering::Greater | Ordering::Equal) => {
                TopkisOrd::Greater
            }
            _ => TopkisOrd::Incomparable,
        }
    }
}

/// A nonempty closed interval `[lo, hi]` of a [`Chain`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    chain: Chain,
    span: Span,
}

impl Interval {
    pub fn new(chain: &Chain, lo: usize, hi: usize) -> Result<Interval> {
        chain.check_rank(hi)?;
        let span = Span::try_new(lo, hi)
            .ok_or_else(|| Error::invalid("interval", format!("[{lo},{hi}] is empty")))?;
        Ok(Interval {
            chain: chain.clone(),
            span,
        })
    }

    pub fn point(chain: &Chain, x: usize) -> Result<Interval> {
        Interval::new(chain, x, x)
    }

    pub fn from_span(chain: &Chain, span: Span) -> Result<Interval> {
        Interval::new(chain, span.lo, span.hi)
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn span(&self) -> Span {
        self.span
    }

    pub fn lo(&self) -> usize {
        self.span.lo
    }

    pub fn hi(&self) -> usize {
        self.span.hi
    }

    pub fn topkis_cmp(&self, other: &Interval) -> Result<TopkisOrd> {
        self.chain.ensure_same(&other.chain)?;
        Ok(self.span.topkis_cmp(other.span))
    }

    pub fn leq(&self, other: &Interval) -> Result<bool> {
        Ok(self.topkis_cmp(other)?.is_le())
    }

    pub fn sqcup(&self, other: &Interval) -> Result<Interval> {
        self.chain.ensure_same(&other.chain)?;
        Ok(self.with(self.span.join(other.span)))
    }

    pub fn sqcap(&self, other: &Interval) -> Result<Interval> {
        self.chain.ensure_same(&other.chain)?;
        Ok(self.with(self.span.meet(other.span)))
    }

    /// Characterises `self ⊑ other` by element enumeration: every point of
    /// `self` lies below some point of `other`, and every point of `other`
    /// lies above some point of `self`.
    pub fn leq_via_lemma(&self, other: &Interval) -> Result<bool> {
        self.chain.ensure_same(&other.chain)?;
        let up = self
            .span
            .elements()
            .all(|a| other.span.elements().any(|b| a <= b));
        let down = other
            .span
            .elements()
            .all(|b| self.span.elements().any(|a| a <= b));
        Ok(up && down)
    }

    fn with(&self, span: Span) -> Interval {
        Interval {
            chain: self.chain.clone(),
            span,
        }
    }
}

fn family_chain(intervals: &[Interval]) -> Result<&Chain> {
    let first = intervals
        .first()
        .ok_or_else(|| Error::domain("empty interval family"))?;
    for i in &intervals[1..] {
        first.chain.ensure_same(&i.chain)?;
    }
    Ok(&first.chain)
}

/// `⨆` of a nonempty family.
pub fn sqcup_family(intervals: &[Interval]) -> Result<Interval> {
    let chain = family_chain(intervals)?;
    let span = intervals
        .iter()
        .map(|i| i.span)
        .reduce(Span::join)
        .expect("nonempty");
    Interval::from_span(chain, span)
}

/// `⨅` of a nonempty family.
pub fn sqcap_family(intervals: &[Interval]) -> Result<Interval> {
    let chain = family_chain(intervals)?;
    let span = intervals
        .iter()
        .map(|i| i.span)
        .reduce(Span::meet)
        .expect("nonempty");
    Interval::from_span(chain, span)
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}]",
            self.chain.label(self.span.lo),
            self.chain.label(self.span.hi)
        )
    }
}

/// Which copy of `I_L` a point of 𝓡 lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Half {
    Negative,
    Neutral,
    Positive,
}

/// A point of the interval reflection lattice 𝓡, chain-free.
///
/// `Pos(s)` is the interval `s` of `L₊`; `Neg(s)` is the reflection of `s`,
/// i.e. the interval `[-s.hi, -s.lo]` of `L₋`. `{𝕆}` is always `Neutral`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RSpan {
    Neutral,
    Pos(Span),
    Neg(Span),
}

impl RSpan {
    pub fn pos(s: Span) -> RSpan {
        if s == Span::point(0) {
            RSpan::Neutral
        } else {
            RSpan::Pos(s)
        }
    }

    pub fn neg(s: Span) -> RSpan {
        if s == Span::point(0) {
            RSpan::Neutral
        } else {
            RSpan::Neg(s)
        }
    }

    pub fn half(self) -> Half {
        match self {
            RSpan::Neutral => Half::Neutral,
            RSpan::Pos(_) => Half::Positive,
            RSpan::Neg(_) => Half::Negative,
        }
    }

    pub fn abs(self) -> Span {
        match self {
            RSpan::Neutral => Span::point(0),
            RSpan::Pos(s) | RSpan::Neg(s) => s,
        }
    }

    pub fn refl(self) -> RSpan {
        match self {
            RSpan::Neutral => RSpan::Neutral,
            RSpan::Pos(s) => RSpan::Neg(s),
            RSpan::Neg(s) => RSpan::Pos(s),
        }
    }

    /// Signed endpoints `(lo, hi)`.
    pub fn sranks(self) -> (i64, i64) {
        match self {
            RSpan::Neutral => (0, 0),
            RSpan::Pos(s) => (s.lo as i64, s.hi as i64),
            RSpan::Neg(s) => (-(s.hi as i64), -(s.lo as i64)),
        }
    }

    /// Pseudo-addition on 𝓡: `⊔` within `I_{L₊}`, its reflection within
    /// `I_{L₋}`, otherwise the ⊑-absolutely-larger operand, and `{𝕆}` when the
    /// absolute values are equal or incomparable.
    pub fn svee(self, other: RSpan) -> RSpan {
        match (self, other) {
            (RSpan::Neutral, x) | (x, RSpan::Neutral) => x,
            (RSpan::Pos(a), RSpan::Pos(b)) => RSpan::Pos(a.join(b)),
            (RSpan::Neg(a), RSpan::Neg(b)) => RSpan::Neg(a.join(b)),
            (RSpan::Pos(p), RSpan::Neg(n)) | (RSpan::Neg(n), RSpan::Pos(p)) => {
                match p.topkis_cmp(n) {
                    TopkisOrd::Greater => RSpan::Pos(p),
                    TopkisOrd::Less => RSpan::Neg(n),
                    TopkisOrd::Equal | TopkisOrd::Incomparable => RSpan::Neutral,
                }
            }
        }
    }

    /// Order of 𝓡: `I_{L₋}` (order-reversed) below `{𝕆}` below `I_{L₊}`.
    pub fn leq(self, other: RSpan) -> bool {
        match (self, other) {
            (RSpan::Pos(a), RSpan::Pos(b)) => a.leq(b),
            (RSpan::Neg(a), RSpan::Neg(b)) => b.leq(a),
            (RSpan::Neg(_), _) => true,
            (RSpan::Neutral, RSpan::Neg(_)) => false,
            (RSpan::Neutral, _) => true,
            (RSpan::Pos(_), _) => false,
        }
    }
}

/// A point of 𝓡 tied to its reflection chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RInterval {
    chain: ReflChain,
    value: RSpan,
}

impl RInterval {
    pub fn new(chain: &ReflChain, value: RSpan) -> Result<RInterval> {
        let hi = value.abs().hi as i64;
        chain.check_srank(hi)?;
        Ok(RInterval {
            chain: chain.clone(),
            value,
        })
    }

    pub fn neutral(chain: &ReflChain) -> RInterval {
        RInterval {
            chain: chain.clone(),
            value: RSpan::Neutral,
        }
    }

    /// Builds the interval `[lo, hi]` of signed ranks; both ends must lie in
    /// the same half.
    pub fn from_sranks(chain: &ReflChain, lo: i64, hi: i64) -> Result<RInterval> {
        chain.check_srank(lo)?;
        chain.check_srank(hi)?;
        let value = if lo > hi {
            return Err(Error::invalid("interval", format!("[{lo},{hi}] is empty")));
        } else if lo >= 0 {
            RSpan::pos(Span::new(lo as usize, hi as usize))
        } else if hi <= 0 {
            RSpan::neg(Span::new((-hi) as usize, (-lo) as usize))
        } else {
            return Err(Error::invalid(
                "interval",
                format!("[{lo},{hi}] straddles the reference point"),
            ));
        };
        Ok(RInterval {
            chain: chain.clone(),
            value,
        })
    }

    pub fn chain(&self) -> &ReflChain {
        &self.chain
    }

    pub fn value(&self) -> RSpan {
        self.value
    }

    pub fn half(&self) -> Half {
        self.value.half()
    }

    pub fn lo_srank(&self) -> i64 {
        self.value.sranks().0
    }

    pub fn hi_srank(&self) -> i64 {
        self.value.sranks().1
    }

    pub fn svee(&self, other: &RInterval) -> Result<RInterval> {
        self.chain.ensure_same(&other.chain)?;
        Ok(self.with(self.value.svee(other.value)))
    }

    pub fn refl(&self) -> RInterval {
        self.with(self.value.refl())
    }

    pub fn abs(&self) -> RInterval {
        self.with(RSpan::pos(self.value.abs()))
    }

    pub fn leq(&self, other: &RInterval) -> Result<bool> {
        self.chain.ensure_same(&other.chain)?;
        Ok(self.value.leq(other.value))
    }

    fn with(&self, value: RSpan) -> RInterval {
        RInterval {
            chain: self.chain.clone(),
            value,
        }
    }
}

impl fmt::Display for RInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.value.abs();
        let body = format!("[{},{}]", self.chain.label(s.lo as i64), self.chain.label(s.hi as i64));
        match self.value {
            RSpan::Neg(_) => write!(f, "-{body}"),
            _ => f.write_str(&body),
        }
    }
}
