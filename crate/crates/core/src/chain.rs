//! Finite linear lattices and linear reflection lattices.
//!
//! A [`Chain`] of size `n` is the totally ordered set `0 < 1 < ... < n-1`
//! with bottom 𝕆 at rank 0 and top 𝕀 at rank `n-1`. A [`ReflChain`] of half
//! size `n` glues an order-dual copy of such a chain to it at 𝕆, giving the
//! signed ranks `-n ..= n`.
//!
//! Elements are addressed by rank; every binary operation checks that both
//! operands come from the same scale.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest chain (or half chain) accepted at construction.
pub const MAX_CHAIN_SIZE: usize = 10_000;

#[derive(Debug, PartialEq, Eq, Hash)]
struct ChainDef {
    name: String,
    size: usize,
    labels: Option<Vec<String>>,
}

/// A finite complete linear lattice.
///
/// Two chains are the same scale iff name, size and labels agree.
#[derive(Clone)]
pub struct Chain(Arc<ChainDef>);

impl PartialEq for Chain {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Chain {}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain({}, {})", self.0.name, self.0.size)
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() || l.chars().any(|c| c.is_whitespace() || ",{}[]#=".contains(c)) {
            return Err(Error::invalid("chain", format!("bad label {l:?}")));
        }
        if l.starts_with("rank:") {
            return Err(Error::invalid("chain", format!("label {l:?} clashes with rank syntax")));
        }
        if labels[..i].contains(l) {
            return Err(Error::invalid("chain", format!("duplicate label {l:?}")));
        }
    }
    Ok(())
}

/// Decimal label `k / steps` with trailing zeros trimmed.
pub fn decimal_label(k: usize, steps: usize) -> String {
    let s = format!("{:.6}", k as f64 / steps as f64);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

impl Chain {
    pub fn new(name: impl Into<String>, size: usize) -> Result<Self> {
        Self::build(name.into(), size, None)
    }

    pub fn with_labels(name: impl Into<String>, labels: Vec<String>) -> Result<Self> {
        check_labels(&labels)?;
        Self::build(name.into(), labels.len(), Some(labels))
    }

    /// The grid `{0, 1/steps, ..., 1}` with decimal labels.
    pub fn grid(name: impl Into<String>, steps: usize) -> Result<Self> {
        let labels = (0..=steps).map(|k| decimal_label(k, steps.max(1))).collect();
        Self::with_labels(name, labels)
    }

    fn build(name: String, size: usize, labels: Option<Vec<String>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::invalid("chain", "size must be at least 1"));
        }
        if size > MAX_CHAIN_SIZE {
            return Err(Error::invalid(
                "chain",
                format!("size {size} exceeds the maximum {MAX_CHAIN_SIZE}"),
            ));
        }
        Ok(Chain(Arc::new(ChainDef { name, size, labels })))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.0.labels.as_deref()
    }

    /// Rank of the top element 𝕀.
    pub fn top_rank(&self) -> usize {
        self.0.size - 1
    }

    pub fn label(&self, rank: usize) -> String {
        match &self.0.labels {
            Some(l) => l[rank].clone(),
            None => rank.to_string(),
        }
    }

    /// Resolves a display label (or a bare decimal rank on unlabeled chains).
    pub fn rank_of(&self, label: &str) -> Option<usize> {
        match &self.0.labels {
            Some(l) => l.iter().position(|x| x == label),
            None => label.parse().ok().filter(|&r| r < self.0.size),
        }
    }

    pub fn check_rank(&self, rank: usize) -> Result<usize> {
        if rank < self.0.size {
            Ok(rank)
        } else {
            Err(Error::OutOfRange {
                chain: self.0.name.clone(),
                rank: rank as i64,
                size: self.0.size,
            })
        }
    }

    pub fn elem(&self, rank: usize) -> Result<ChainElem> {
        self.check_rank(rank)?;
        Ok(ChainElem {
            chain: self.clone(),
            rank,
        })
    }

    pub fn top(&self) -> ChainElem {
        ChainElem {
            chain: self.clone(),
            rank: self.top_rank(),
        }
    }

    pub fn bottom(&self) -> ChainElem {
        ChainElem {
            chain: self.clone(),
            rank: 0,
        }
    }

    pub fn ensure_same(&self, other: &Chain) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ChainMismatch {
                left: self.0.name.clone(),
                right: other.0.name.clone(),
            })
        }
    }
}

/// A point of a [`Chain`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainElem {
    chain: Chain,
    rank: usize,
}

impl ChainElem {
    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn join(&self, other: &ChainElem) -> Result<ChainElem> {
        self.chain.ensure_same(&other.chain)?;
        Ok(ChainElem {
            chain: self.chain.clone(),
            rank: self.rank.max(other.rank),
        })
    }

    pub fn meet(&self, other: &ChainElem) -> Result<ChainElem> {
        self.chain.ensure_same(&other.chain)?;
        Ok(ChainElem {
            chain: self.chain.clone(),
            rank: self.rank.min(other.rank),
        })
    }

    pub fn leq(&self, other: &ChainElem) -> Result<bool> {
        self.chain.ensure_same(&other.chain)?;
        Ok(self.rank <= other.rank)
    }
}

impl fmt::Display for ChainElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.chain.label(self.rank))
    }
}

/// Pseudo-arithmetic on signed ranks.
///
/// These are the unchecked kernels behind [`ReflElem`]; the interval
/// reflection lattice and the symmetric functionals reuse them directly.
pub mod signed {
    /// Sign as `-1`, `0` or `1` (the ranks of −𝕀, 𝕆, 𝕀 up to scaling).
    pub fn sign(x: i64) -> i64 {
        x.signum()
    }

    /// Pseudo-addition ⩖: the absolutely larger operand, 𝕆 on a tie of
    /// opposite signs.
    pub fn svee(x: i64, y: i64) -> i64 {
        if x >= 0 && y >= 0 {
            x.max(y)
        } else if x <= 0 && y <= 0 {
            x.min(y)
        } else if x.abs() > y.abs() {
            x
        } else if x.abs() < y.abs() {
            y
        } else {
            0
        }
    }

    /// Pseudo-multiplication △.
    pub fn striangle(x: i64, y: i64) -> i64 {
        let m = x.abs().min(y.abs());
        // an 𝕆 operand takes the same-sign branch
        if sign(x) == sign(y) || x == 0 || y == 0 {
            m
        } else {
            -m
        }
    }

    pub fn dist(x: i64, y: i64) -> i64 {
        if x == y {
            0
        } else {
            x.abs().max(y.abs())
        }
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct ReflDef {
    name: String,
    half: usize,
    labels: Option<Vec<String>>,
}

/// A finite linear reflection lattice `L₋ ∪ L₊` with `L₊` of size `half + 1`.
#[derive(Clone)]
pub struct ReflChain(Arc<ReflDef>);

impl PartialEq for ReflChain {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for ReflChain {}

impl fmt::Debug for ReflChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ReflChain({}, ±{})", self.0.name, self.0.half)
    }
}

impl ReflChain {
    pub fn new(name: impl Into<String>, half_size: usize) -> Result<Self> {
        Self::build(name.into(), half_size, None)
    }

    /// `labels` name the positive half `𝕆 ..= 𝕀`; negative points print as
    /// `-label`.
    pub fn with_labels(name: impl Into<String>, labels: Vec<String>) -> Result<Self> {
        check_labels(&labels)?;
        if labels.iter().any(|l| l.starts_with('-')) {
            return Err(Error::invalid("reflection chain", "labels may not start with '-'"));
        }
        if labels.len() < 2 {
            return Err(Error::invalid("reflection chain", "need at least two labels"));
        }
        let half = labels.len() - 1;
        Self::build(name.into(), half, Some(labels))
    }

    /// Reflection chain over the grid `{0, 1/steps, ..., 1}`.
    pub fn grid(name: impl Into<String>, steps: usize) -> Result<Self> {
        let labels = (0..=steps).map(|k| decimal_label(k, steps.max(1))).collect();
        Self::with_labels(name, labels)
    }

    fn build(name: String, half: usize, labels: Option<Vec<String>>) -> Result<Self> {
        if half == 0 {
            return Err(Error::invalid("reflection chain", "half size must be at least 1"));
        }
        if half > MAX_CHAIN_SIZE {
            return Err(Error::invalid(
                "reflection chain",
                format!("half size {half} exceeds the maximum {MAX_CHAIN_SIZE}"),
            ));
        }
        Ok(ReflChain(Arc::new(ReflDef { name, half, labels })))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn half_size(&self) -> usize {
        self.0.half
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.0.labels.as_deref()
    }

    pub fn half(&self) -> i64 {
        self.0.half as i64
    }

    pub fn label(&self, srank: i64) -> String {
        let a = srank.unsigned_abs() as usize;
        let base = match &self.0.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        };
        if srank < 0 {
            format!("-{base}")
        } else {
            base
        }
    }

    pub fn srank_of(&self, label: &str) -> Option<i64> {
        let (neg, body) = match label.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, label),
        };
        let a = match &self.0.labels {
            Some(l) => l.iter().position(|x| x == body)?,
            None => body.parse::<usize>().ok().filter(|&r| r <= self.0.half)?,
        } as i64;
        if neg && a == 0 {
            // "-0" names 𝕆 as well
            return Some(0);
        }
        Some(if neg { -a } else { a })
    }

    pub fn check_srank(&self, srank: i64) -> Result<i64> {
        if srank.abs() <= self.half() {
            Ok(srank)
        } else {
            Err(Error::OutOfRange {
                chain: self.0.name.clone(),
                rank: srank,
                size: 2 * self.0.half + 1,
            })
        }
    }

    pub fn elem(&self, srank: i64) -> Result<ReflElem> {
        self.check_srank(srank)?;
        Ok(ReflElem {
            chain: self.clone(),
            srank,
        })
    }

    pub fn top(&self) -> ReflElem {
        ReflElem {
            chain: self.clone(),
            srank: self.half(),
        }
    }

    pub fn bottom(&self) -> ReflElem {
        ReflElem {
            chain: self.clone(),
            srank: -self.half(),
        }
    }

    /// The reference point 𝕆.
    pub fn zero(&self) -> ReflElem {
        ReflElem {
            chain: self.clone(),
            srank: 0,
        }
    }

    /// The whole carrier `-𝕀 ..= 𝕀` viewed as a plain chain of size
    /// `2·half + 1`; srank `s` sits at rank `s + half`.
    pub fn as_chain(&self) -> Chain {
        let n = self.half();
        let labels = (-n..=n).map(|s| self.label(s)).collect();
        Chain(Arc::new(ChainDef {
            name: self.0.name.clone(),
            size: 2 * self.0.half + 1,
            labels: Some(labels),
        }))
    }

    /// `L₊` as a plain chain; rank `k` is srank `k`.
    pub fn positive_half(&self) -> Chain {
        let labels = (0..=self.half()).map(|s| self.label(s)).collect();
        Chain(Arc::new(ChainDef {
            name: format!("{}+", self.0.name),
            size: self.0.half + 1,
            labels: Some(labels),
        }))
    }

    /// `L₋` as a plain chain; rank `k` is srank `k - half`.
    pub fn negative_half(&self) -> Chain {
        let labels = (-self.half()..=0).map(|s| self.label(s)).collect();
        Chain(Arc::new(ChainDef {
            name: format!("{}-", self.0.name),
            size: self.0.half + 1,
            labels: Some(labels),
        }))
    }

    pub fn ensure_same(&self, other: &ReflChain) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ChainMismatch {
                left: self.0.name.clone(),
                right: other.0.name.clone(),
            })
        }
    }
}

/// A point of a [`ReflChain`], addressed by signed rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflElem {
    chain: ReflChain,
    srank: i64,
}

impl ReflElem {
    pub fn chain(&self) -> &ReflChain {
        &self.chain
    }

    pub fn srank(&self) -> i64 {
        self.srank
    }

    fn with(&self, srank: i64) -> ReflElem {
        ReflElem {
            chain: self.chain.clone(),
            srank,
        }
    }

    pub fn refl(&self) -> ReflElem {
        self.with(-self.srank)
    }

    pub fn abs(&self) -> ReflElem {
        self.with(self.srank.abs())
    }

    /// 𝕀, 𝕆 or −𝕀.
    pub fn sign(&self) -> ReflElem {
        self.with(signed::sign(self.srank) * self.chain.half())
    }

    pub fn svee(&self, other: &ReflElem) -> Result<ReflElem> {
        self.chain.ensure_same(&other.chain)?;
        Ok(self.with(signed::svee(self.srank, other.srank)))
    }

    pub fn striangle(&self, other: &ReflElem) -> Result<ReflElem> {
        self.chain.ensure_same(&other.chain)?;
        Ok(self.with(signed::striangle(self.srank, other.srank)))
    }

    pub fn dist(&self, other: &ReflElem) -> Result<ReflElem> {
        self.chain.ensure_same(&other.chain)?;
        Ok(self.with(signed::dist(self.srank, other.srank)))
    }

    pub fn leq(&self, other: &ReflElem) -> Result<bool> {
        self.chain.ensure_same(&other.chain)?;
        Ok(self.srank <= other.srank)
    }
}

impl fmt::Display for ReflElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.chain.label(self.srank))
    }
}
