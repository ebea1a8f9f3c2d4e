//! Chain-valued monotone measures on a finite ground set.
//!
//! Subsets of the ground set Ω are bitmasks over the declared element order.
//! A [`Measure`] is defined on a family 𝒮 of subsets containing ∅ and Ω; most
//! aggregation code needs it on all of 2^Ω, which [`Measure::inner_extension`]
//! and [`Measure::outer_extension`] provide.

use std::fmt;
use std::sync::Arc;

use crate::chain::{Chain, ChainElem};
use crate::error::{Error, Result};

pub const MAX_GROUND_SIZE: usize = 16;

/// A subset of the ground set as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    fn index(self) -> usize {
        self.0 as usize
    }
}

/// The finite set Ω with named elements.
#[derive(Clone, PartialEq, Eq)]
pub struct GroundSet(Arc<Vec<String>>);

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroundSet{:?}", self.0)
    }
}

impl GroundSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<GroundSet> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::invalid("ground set", "must be nonempty"));
        }
        if names.len() > MAX_GROUND_SIZE {
            return Err(Error::invalid(
                "ground set",
                format!("{} elements exceed the maximum {MAX_GROUND_SIZE}", names.len()),
            ));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(|c| c.is_whitespace() || ",{}#=".contains(c)) {
                return Err(Error::invalid("ground set", format!("bad element name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::invalid("ground set", format!("duplicate element {n:?}")));
            }
        }
        Ok(GroundSet(Arc::new(names)))
    }

    /// Ground set `{0, 1, ..., n-1}` with decimal names.
    pub fn indexed(n: usize) -> Result<GroundSet> {
        GroundSet::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn full(&self) -> Subset {
        Subset(((1u64 << self.len()) - 1) as u32)
    }

    pub fn complement(&self, a: Subset) -> Subset {
        Subset(self.full().0 & !a.0)
    }

    /// Number of subsets, `2^|Ω|`.
    pub fn power_size(&self) -> usize {
        1 << self.len()
    }

    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..self.power_size() as u32).map(Subset)
    }

    /// Parses `{}` or `{a,b}` (whitespace-insensitive).
    pub fn parse_subset(&self, text: &str) -> Result<Subset> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::invalid("subset", format!("{text:?} is not of the form {{a,b}}")))?;
        let mut set = Subset::EMPTY;
        if inner.is_empty() {
            return Ok(set);
        }
        for name in inner.split(',') {
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::invalid("subset", format!("unknown element {name:?}")))?;
            set = set.with(i);
        }
        Ok(set)
    }

    pub fn format_subset(&self, a: Subset) -> String {
        let names: Vec<&str> = (0..self.len())
            .filter(|&i| a.contains(i))
            .map(|i| self.0[i].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn ensure_same(&self, other: &GroundSet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::domain("functions and measures live on different ground sets"))
        }
    }
}

/// `ζ(B, A)`: 𝕀 if `A ⊇ B`, else 𝕆.
pub fn zeta(b: Subset, a: Subset, scale: &Chain) -> ChainElem {
    if b.is_subset_of(a) {
        scale.top()
    } else {
        scale.bottom()
    }
}

/// Lower chain measures come from inner extensions, upper ones from outer
/// extensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainKind {
    Lower,
    Upper,
}

impl std::str::FromStr for ChainKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lower" => Ok(ChainKind::Lower),
            "upper" => Ok(ChainKind::Upper),
            _ => Err(Error::domain(format!("unknown chain kind {s:?}"))),
        }
    }
}

/// A monotone set function `μ: 𝒮 → M` with `μ(∅) = 𝕆`, `μ(Ω) = 𝕀`.
#[derive(Clone, PartialEq, Eq)]
pub struct Measure {
    ground: GroundSet,
    scale: Chain,
    /// Indexed by subset bitmask; `None` outside the family 𝒮.
    values: Vec<Option<usize>>,
}

impl fmt::Debug for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for a in self.family() {
            m.entry(&self.ground.format_subset(a), &self.values[a.index()].unwrap());
        }
        m.finish()
    }
}

impl Measure {
    /// Builds a measure on the family given by `entries`, validating the
    /// endpoint values and monotonicity over every comparable pair.
    pub fn new(
        ground: &GroundSet,
        scale: &Chain,
        entries: impl IntoIterator<Item = (Subset, usize)>,
    ) -> Result<Measure> {
        let mut values = vec![None; ground.power_size()];
        for (a, v) in entries {
            if !a.is_subset_of(ground.full()) {
                return Err(Error::invalid("measure", format!("subset {:#b} outside Ω", a.0)));
            }
            scale.check_rank(v)?;
            if values[a.index()].replace(v).is_some() {
                return Err(Error::invalid(
                    "measure",
                    format!("duplicate entry for {}", ground.format_subset(a)),
                ));
            }
        }
        let m = Measure {
            ground: ground.clone(),
            scale: scale.clone(),
            values,
        };
        m.validate()?;
        Ok(m)
    }

    /// A measure on all of 2^Ω from a value function.
    pub fn from_fn(
        ground: &GroundSet,
        scale: &Chain,
        f: impl Fn(Subset) -> usize,
    ) -> Result<Measure> {
        Measure::new(ground, scale, ground.subsets().map(|a| (a, f(a))))
    }

    fn validate(&self) -> Result<()> {
        let full = self.ground.full();
        if self.values[0].is_none() {
            return Err(Error::invalid("measure", "family must contain {}"));
        }
        if self.values[full.index()].is_none() {
            return Err(Error::invalid("measure", "family must contain Ω"));
        }
        if let Some((a, b)) = self.monotonicity_violation() {
            return Err(Error::invalid(
                "measure",
                format!(
                    "not monotone: μ({}) = {} > μ({}) = {}",
                    self.ground.format_subset(a),
                    self.scale.label(self.values[a.index()].unwrap()),
                    self.ground.format_subset(b),
                    self.scale.label(self.values[b.index()].unwrap()),
                ),
            ));
        }
        let (bottom, top) = (self.values[0].unwrap(), self.values[full.index()].unwrap());
        if bottom != 0 {
            return Err(Error::invalid(
                "measure",
                format!("μ({{}}) = {} must be the bottom", self.scale.label(bottom)),
            ));
        }
        if top != self.scale.top_rank() {
            return Err(Error::invalid(
                "measure",
                format!(
                    "μ({}) = {} must be the top",
                    self.ground.format_subset(full),
                    self.scale.label(top)
                ),
            ));
        }
        Ok(())
    }

    /// Some pair `A ⊂ B` in the family with `μ(A) > μ(B)`.
    fn monotonicity_violation(&self) -> Option<(Subset, Subset)> {
        if self.is_total() {
            for a in self.ground.subsets() {
                for i in (0..self.ground.len()).filter(|&i| !a.contains(i)) {
                    let b = a.with(i);
                    if self.values[a.index()] > self.values[b.index()] {
                        return Some((a, b));
                    }
                }
            }
            return None;
        }
        // the inner extension over 𝒮 agrees with μ on 𝒮 iff μ is monotone
        let inner = self.inner_values();
        let bad = self
            .family()
            .find(|b| inner[b.index()] != self.values[b.index()].unwrap())?;
        let v = self.values[bad.index()].unwrap();
        let a = self
            .family()
            .find(|a| a.is_subset_of(bad) && self.values[a.index()].unwrap() > v)?;
        Some((a, bad))
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn scale(&self) -> &Chain {
        &self.scale
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    /// Members of the family 𝒮 in bitmask order.
    pub fn family(&self) -> impl Iterator<Item = Subset> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|_| Subset(i as u32)))
    }

    pub fn get(&self, a: Subset) -> Option<usize> {
        self.values.get(a.index()).copied().flatten()
    }

    /// `μ(A)`; an error if `A ∉ 𝒮`.
    pub fn value(&self, a: Subset) -> Result<usize> {
        self.get(a).ok_or_else(|| {
            Error::domain(format!(
                "measure is not defined on {}",
                self.ground.format_subset(a)
            ))
        })
    }

    pub(crate) fn require_total(&self) -> Result<()> {
        if self.is_total() {
            Ok(())
        } else {
            Err(Error::domain(
                "measure is defined on a proper subfamily; extend it (inner or outer) first",
            ))
        }
    }

    fn inner_values(&self) -> Vec<usize> {
        // max over members below A: subset-sum style sweep with ∨
        let mut v: Vec<usize> = self.values.iter().map(|x| x.unwrap_or(0)).collect();
        for i in 0..self.ground.len() {
            let bit = 1usize << i;
            for a in 0..v.len() {
                if a & bit != 0 {
                    v[a] = v[a].max(v[a ^ bit]);
                }
            }
        }
        v
    }

    fn outer_values(&self) -> Vec<usize> {
        let top = self.scale.top_rank();
        let mut v: Vec<usize> = self.values.iter().map(|x| x.unwrap_or(top)).collect();
        for i in 0..self.ground.len() {
            let bit = 1usize << i;
            for a in 0..v.len() {
                if a & bit == 0 {
                    v[a] = v[a].min(v[a | bit]);
                }
            }
        }
        v
    }

    /// `μ_*(A) = ⋁ { μ(B) : B ∈ 𝒮, B ⊆ A }`.
    pub fn inner_extension(&self) -> Measure {
        self.total_from(self.inner_values())
    }

    /// `μ^*(A) = ⋀ { μ(B) : B ∈ 𝒮, B ⊇ A }`.
    pub fn outer_extension(&self) -> Measure {
        self.total_from(self.outer_values())
    }

    pub fn extension(&self, kind: ChainKind) -> Measure {
        match kind {
            ChainKind::Lower => self.inner_extension(),
            ChainKind::Upper => self.outer_extension(),
        }
    }

    fn total_from(&self, values: Vec<usize>) -> Measure {
        Measure {
            ground: self.ground.clone(),
            scale: self.scale.clone(),
            values: values.into_iter().map(Some).collect(),
        }
    }

    /// The restriction of `μ` to the members of `family` (∅ and Ω are
    /// always kept).
    pub fn restrict(&self, family: impl IntoIterator<Item = Subset>) -> Result<Measure> {
        let mut entries = vec![
            (Subset::EMPTY, self.value(Subset::EMPTY)?),
            (self.ground.full(), self.value(self.ground.full())?),
        ];
        for a in family {
            if a != Subset::EMPTY && a != self.ground.full() {
                entries.push((a, self.value(a)?));
            }
        }
        entries.sort();
        entries.dedup();
        Measure::new(&self.ground, &self.scale, entries)
    }

    /// Pointwise `≤` on a common family.
    pub fn leq(&self, other: &Measure) -> Result<bool> {
        self.ground.ensure_same(&other.ground)?;
        self.scale.ensure_same(&other.scale)?;
        if self.family().ne(other.family()) {
            return Err(Error::domain("measures have different families"));
        }
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a <= b))
    }

    /// `μ(A ∩ B) = μ(A) ∧ μ(B)` for all pairs; pairwise suffices on a finite
    /// power set.
    pub fn is_minitive(&self) -> Result<bool> {
        self.require_total()?;
        let v = |a: Subset| self.values[a.index()].unwrap();
        Ok(self.ground.subsets().all(|a| {
            self.ground
                .subsets()
                .filter(|b| b.0 > a.0)
                .all(|b| v(a.intersection(b)) == v(a).min(v(b)))
        }))
    }

    /// `μ(A ∪ B) = μ(A) ∨ μ(B)` for all pairs.
    pub fn is_maxitive(&self) -> Result<bool> {
        self.require_total()?;
        let v = |a: Subset| self.values[a.index()].unwrap();
        Ok(self.ground.subsets().all(|a| {
            self.ground
                .subsets()
                .filter(|b| b.0 > a.0)
                .all(|b| v(a.union(b)) == v(a).max(v(b)))
        }))
    }

    /// The defining chain `{K_x} ∪ {∅, Ω}` of a minitive measure, with
    /// `K_x = ⋂ { B : μ(B) ≥ x }`, ordered by inclusion.
    pub fn minitive_chain(&self) -> Result<Vec<Subset>> {
        if !self.is_minitive()? {
            return Err(Error::domain("measure is not minitive"));
        }
        let mut sets = vec![Subset::EMPTY, self.ground.full()];
        for x in 0..self.scale.size() {
            let k = self
                .ground
                .subsets()
                .filter(|&b| self.values[b.index()].unwrap() >= x)
                .fold(self.ground.full(), Subset::intersection);
            sets.push(k);
        }
        self.finish_chain(sets, ChainKind::Lower)
    }

    /// The defining chain `{K^x} ∪ {∅, Ω}` of a maxitive measure, with
    /// `K^x = ⋃ { B : μ(B) ≤ x }`.
    pub fn maxitive_chain(&self) -> Result<Vec<Subset>> {
        if !self.is_maxitive()? {
            return Err(Error::domain("measure is not maxitive"));
        }
        let mut sets = vec![Subset::EMPTY, self.ground.full()];
        for x in 0..self.scale.size() {
            let k = self
                .ground
                .subsets()
                .filter(|&b| self.values[b.index()].unwrap() <= x)
                .fold(Subset::EMPTY, Subset::union);
            sets.push(k);
        }
        self.finish_chain(sets, ChainKind::Upper)
    }

    fn finish_chain(&self, mut sets: Vec<Subset>, kind: ChainKind) -> Result<Vec<Subset>> {
        sets.sort_by_key(|s| (s.len(), s.0));
        sets.dedup();
        if !self.verify_chain(&sets, kind)? {
            return Err(Error::domain("constructed chain does not reproduce the measure"));
        }
        Ok(sets)
    }

    /// Whether rebuilding from `μ` restricted to `chain` (by inner extension
    /// for `Lower`, outer for `Upper`) gives back `μ`.
    pub fn verify_chain(&self, chain: &[Subset], kind: ChainKind) -> Result<bool> {
        self.require_total()?;
        let entries: Vec<(Subset, usize)> = chain
            .iter()
            .map(|&k| Ok((k, self.value(k)?)))
            .collect::<Result<_>>()?;
        let rebuilt = chain_measure(&self.ground, &self.scale, &entries, kind)?;
        Ok(&rebuilt == self)
    }

    /// `A ↦ 𝕀` if `μ(A) > 𝕆`, else 𝕆.
    pub fn sign_measure(&self) -> Measure {
        let top = self.scale.top_rank();
        Measure {
            ground: self.ground.clone(),
            scale: self.scale.clone(),
            values: self
                .values
                .iter()
                .map(|v| v.map(|v| if v > 0 { top } else { 0 }))
                .collect(),
        }
    }
}

/// Checks that `sets` is a ⊆-chain containing ∅ and Ω.
pub fn check_set_chain(ground: &GroundSet, sets: &[Subset]) -> Result<()> {
    let mut sorted: Vec<Subset> = sets.to_vec();
    sorted.sort_by_key(|s| s.len());
    for w in sorted.windows(2) {
        if !w[0].is_subset_of(w[1]) {
            return Err(Error::invalid(
                "set chain",
                format!(
                    "{} and {} are not nested",
                    ground.format_subset(w[0]),
                    ground.format_subset(w[1])
                ),
            ));
        }
    }
    if !sets.contains(&Subset::EMPTY) || !sets.contains(&ground.full()) {
        return Err(Error::invalid("set chain", "must contain {} and Ω"));
    }
    Ok(())
}

/// The lower (inner-extension) or upper (outer-extension) chain measure
/// determined by its values on a ⊆-chain.
pub fn chain_measure(
    ground: &GroundSet,
    scale: &Chain,
    chain: &[(Subset, usize)],
    kind: ChainKind,
) -> Result<Measure> {
    let sets: Vec<Subset> = chain.iter().map(|e| e.0).collect();
    check_set_chain(ground, &sets)?;
    let on_chain = Measure::new(ground, scale, chain.iter().copied())?;
    Ok(on_chain.extension(kind))
}

/// `u_K(A) = 𝕀` iff `A ⊇ K`.
pub fn unanimity(ground: &GroundSet, scale: &Chain, k: Subset) -> Result<Measure> {
    let top = scale.top_rank();
    Measure::from_fn(ground, scale, |a| if k.is_subset_of(a) { top } else { 0 })
}

/// `ū_K(A) = 𝕀` iff `A ∩ K ≠ ∅`.
pub fn co_unanimity(ground: &GroundSet, scale: &Chain, k: Subset) -> Result<Measure> {
    if k.is_empty() {
        return Err(Error::domain("co-unanimity needs a nonempty coalition"));
    }
    let top = scale.top_rank();
    Measure::from_fn(ground, scale, |a| if a.intersection(k).is_empty() { 0 } else { top })
}
