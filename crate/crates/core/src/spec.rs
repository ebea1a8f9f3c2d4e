//! The line-oriented spec-file format.
//!
//! ```text
//! # comments run to the end of the line
//! scale L 11
//! labels L 0 0.1 0.2 0.3 0.4 0.5 0.6 0.7 0.8 0.9 1
//! rscale R 4
//! omega a b
//! measure mu scale=L kind=table
//!   {} 0
//!   {a} 0.5
//!   {a,b} 1
//! function f scale=L
//!   a 0.6
//!   b rank:2
//! comm id from=L to=L
//! ```
//!
//! Scale references are a plain scale name, a reflection scale name (for
//! functions only), or `R+` / `R-` for the halves of the reflection scale
//! `R`. A `comm` with no body is the rank-preserving map between two scales
//! of equal size.

use std::fmt::{self, Write as _};

use indexmap::IndexMap;

use crate::aggregation::{CommFn, LatticeFn, RFn};
use crate::chain::{Chain, ReflChain};
use crate::error::Error;
use crate::measure::{chain_measure, co_unanimity, unanimity, ChainKind, GroundSet, Measure, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecErrorKind {
    Syntax,
    Validation,
}

/// A diagnostic with the 1-based line it refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub line: usize,
    pub kind: SpecErrorKind,
    pub message: String,
}

impl SpecError {
    fn syntax(line: usize, message: impl Into<String>) -> SpecError {
        SpecError {
            line,
            kind: SpecErrorKind::Syntax,
            message: message.into(),
        }
    }

    fn validation(line: usize, message: impl Into<String>) -> SpecError {
        SpecError {
            line,
            kind: SpecErrorKind::Validation,
            message: message.into(),
        }
    }

    /// 1 for syntax errors, 2 for validation errors.
    pub fn exit_code(&self) -> i32 {
        match self.kind {
            SpecErrorKind::Syntax => 1,
            SpecErrorKind::Validation => 2,
        }
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            SpecErrorKind::Syntax => "syntax error",
            SpecErrorKind::Validation => "validation error",
        };
        write!(f, "line {}: {kind}: {}", self.line, self.message)
    }
}

impl std::error::Error for SpecError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scale {
    Plain(Chain),
    Refl(ReflChain),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Function {
    Plain(LatticeFn),
    Refl(RFn),
}

/// A fully validated spec file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecFile {
    scales: IndexMap<String, Scale>,
    ground: Option<GroundSet>,
    measures: IndexMap<String, Measure>,
    functions: IndexMap<String, Function>,
    comms: IndexMap<String, CommFn>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum MeasureKind {
    Table,
    ChainLower,
    ChainUpper,
    Unanimity,
    CoUnanimity,
}

impl MeasureKind {
    fn parse(s: &str) -> Option<MeasureKind> {
        Some(match s {
            "table" => MeasureKind::Table,
            "chain-lower" => MeasureKind::ChainLower,
            "chain-upper" => MeasureKind::ChainUpper,
            "unanimity" => MeasureKind::Unanimity,
            "co-unanimity" => MeasureKind::CoUnanimity,
            _ => return None,
        })
    }
}

#[derive(Debug)]
struct BodyLine {
    line: usize,
    key: String,
    value: Option<String>,
}

#[derive(Debug)]
enum Stmt {
    Scale { name: String, size: usize },
    RScale { name: String, half: usize },
    Labels { scale: String, labels: Vec<String> },
    Omega(Vec<String>),
    Measure { name: String, scale: String, kind: MeasureKind },
    Function { name: String, scale: String },
    Comm { name: String, from: String, to: String },
}

#[derive(Debug)]
struct Block {
    line: usize,
    stmt: Stmt,
    body: Vec<BodyLine>,
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_name(line: usize, s: &str) -> Result<String, SpecError> {
    if is_name(s) {
        Ok(s.to_string())
    } else {
        Err(SpecError::syntax(line, format!("bad name {s:?} (letters, digits and _ only)")))
    }
}

fn parse_options<'a>(
    line: usize,
    tokens: &[&'a str],
    keys: &[&str],
) -> Result<Vec<&'a str>, SpecError> {
    let mut found: Vec<Option<&str>> = vec![None; keys.len()];
    for t in tokens {
        let (k, v) = t
            .split_once('=')
            .ok_or_else(|| SpecError::syntax(line, format!("expected key=value, found {t:?}")))?;
        let i = keys
            .iter()
            .position(|x| *x == k)
            .ok_or_else(|| SpecError::syntax(line, format!("unknown option {k:?}")))?;
        if found[i].replace(v).is_some() {
            return Err(SpecError::syntax(line, format!("option {k:?} given twice")));
        }
    }
    keys.iter()
        .zip(found)
        .map(|(k, v)| v.ok_or_else(|| SpecError::syntax(line, format!("missing option {k}="))))
        .collect()
}

fn parse_header(line: usize, tokens: &[&str]) -> Result<Stmt, SpecError> {
    let arity = |n: usize| {
        if tokens.len() == n {
            Ok(())
        } else {
            Err(SpecError::syntax(
                line,
                format!("`{}` takes {} arguments", tokens[0], n - 1),
            ))
        }
    };
    let number = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| SpecError::syntax(line, format!("expected a size, found {s:?}")))
    };
    Ok(match tokens[0] {
        "scale" => {
            arity(3)?;
            Stmt::Scale {
                name: check_name(line, tokens[1])?,
                size: number(tokens[2])?,
            }
        }
        "rscale" => {
            arity(3)?;
            Stmt::RScale {
                name: check_name(line, tokens[1])?,
                half: number(tokens[2])?,
            }
        }
        "labels" => {
            if tokens.len() < 3 {
                return Err(SpecError::syntax(line, "`labels` needs a scale and labels"));
            }
            Stmt::Labels {
                scale: tokens[1].to_string(),
                labels: tokens[2..].iter().map(|s| s.to_string()).collect(),
            }
        }
        "omega" => {
            if tokens.len() < 2 {
                return Err(SpecError::syntax(line, "`omega` needs at least one element"));
            }
            Stmt::Omega(tokens[1..].iter().map(|s| s.to_string()).collect())
        }
        "measure" => {
            if tokens.len() < 2 {
                return Err(SpecError::syntax(line, "`measure` needs a name"));
            }
            let opts = parse_options(line, &tokens[2..], &["scale", "kind"])?;
            let kind = MeasureKind::parse(opts[1])
                .ok_or_else(|| SpecError::syntax(line, format!("unknown measure kind {:?}", opts[1])))?;
            Stmt::Measure {
                name: check_name(line, tokens[1])?,
                scale: opts[0].to_string(),
                kind,
            }
        }
        "function" => {
            if tokens.len() < 2 {
                return Err(SpecError::syntax(line, "`function` needs a name"));
            }
            let opts = parse_options(line, &tokens[2..], &["scale"])?;
            Stmt::Function {
                name: check_name(line, tokens[1])?,
                scale: opts[0].to_string(),
            }
        }
        "comm" => {
            if tokens.len() < 2 {
                return Err(SpecError::syntax(line, "`comm` needs a name"));
            }
            let opts = parse_options(line, &tokens[2..], &["from", "to"])?;
            Stmt::Comm {
                name: check_name(line, tokens[1])?,
                from: opts[0].to_string(),
                to: opts[1].to_string(),
            }
        }
        other => return Err(SpecError::syntax(line, format!("unknown keyword {other:?}"))),
    })
}

fn parse_body_line(line: usize, text: &str) -> Result<BodyLine, SpecError> {
    let (key, rest) = if text.starts_with('{') {
        let end = text
            .find('}')
            .ok_or_else(|| SpecError::syntax(line, "unterminated subset"))?;
        (text[..=end].to_string(), text[end + 1..].trim())
    } else {
        match text.split_once(char::is_whitespace) {
            Some((k, r)) => (k.to_string(), r.trim()),
            None => (text.to_string(), ""),
        }
    };
    if rest.split_whitespace().count() > 1 {
        return Err(SpecError::syntax(line, format!("too many fields in {text:?}")));
    }
    Ok(BodyLine {
        line,
        key,
        value: (!rest.is_empty()).then(|| rest.to_string()),
    })
}

fn parse_blocks(text: &str) -> Result<Vec<Block>, SpecError> {
    let mut blocks: Vec<Block> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap();
        if content.trim().is_empty() {
            continue;
        }
        if content.starts_with(char::is_whitespace) {
            let owner = blocks.last_mut().filter(|b| {
                matches!(
                    b.stmt,
                    Stmt::Measure { .. } | Stmt::Function { .. } | Stmt::Comm { .. }
                )
            });
            let Some(owner) = owner else {
                return Err(SpecError::syntax(line, "indented line outside a measure, function or comm block"));
            };
            owner.body.push(parse_body_line(line, content.trim())?);
        } else {
            let tokens: Vec<&str> = content.split_whitespace().collect();
            blocks.push(Block {
                line,
                stmt: parse_header(line, &tokens)?,
                body: Vec::new(),
            });
        }
    }
    check_duplicates(&blocks)?;
    Ok(blocks)
}

fn check_duplicates(blocks: &[Block]) -> Result<(), SpecError> {
    let mut seen: IndexMap<(&str, &str), usize> = IndexMap::new();
    for b in blocks {
        let key = match &b.stmt {
            Stmt::Scale { name, .. } | Stmt::RScale { name, .. } => ("scale", name.as_str()),
            Stmt::Labels { scale, .. } => ("labels", scale.as_str()),
            Stmt::Omega(_) => ("omega", ""),
            Stmt::Measure { name, .. } => ("measure", name.as_str()),
            Stmt::Function { name, .. } => ("function", name.as_str()),
            Stmt::Comm { name, .. } => ("comm", name.as_str()),
        };
        if let Some(first) = seen.insert(key, b.line) {
            let what = if key.1.is_empty() {
                key.0.to_string()
            } else {
                format!("{} {:?}", key.0, key.1)
            };
            return Err(SpecError::syntax(
                b.line,
                format!("duplicate {what} (first declared on line {first})"),
            ));
        }
    }
    Ok(())
}

fn parse_plain_value(chain: &Chain, text: &str) -> Option<usize> {
    match text.strip_prefix("rank:") {
        Some(k) => k.parse().ok().filter(|&k| k < chain.size()),
        None => chain.rank_of(text),
    }
}

fn parse_signed_value(chain: &ReflChain, text: &str) -> Option<i64> {
    match text.strip_prefix("rank:") {
        Some(k) => k.parse().ok().filter(|k: &i64| k.abs() <= chain.half()),
        None => chain.srank_of(text),
    }
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<SpecFile, SpecError> {
        let blocks = parse_blocks(text)?;
        let mut spec = SpecFile::default();
        let labels: IndexMap<&str, (usize, &Vec<String>)> = blocks
            .iter()
            .filter_map(|b| match &b.stmt {
                Stmt::Labels { scale, labels } => Some((scale.as_str(), (b.line, labels))),
                _ => None,
            })
            .collect();
        for b in &blocks {
            spec.add_scale(b, &labels)?;
        }
        if let Some((scale, (line, _))) = labels.iter().find(|(s, _)| !spec.scales.contains_key(**s)) {
            return Err(SpecError::validation(*line, format!("labels for unknown scale {scale:?}")));
        }
        for b in &blocks {
            match &b.stmt {
                Stmt::Omega(names) => {
                    let g = GroundSet::new(names.iter().cloned())
                        .map_err(|e| SpecError::validation(b.line, e.to_string()))?;
                    spec.ground = Some(g);
                }
                Stmt::Measure { name, scale, kind } => {
                    let m = spec.build_measure(b, scale, *kind)?;
                    spec.measures.insert(name.clone(), m);
                }
                Stmt::Function { name, scale } => {
                    let f = spec.build_function(b, scale)?;
                    spec.functions.insert(name.clone(), f);
                }
                Stmt::Comm { name, from, to } => {
                    let c = spec.build_comm(b, from, to)?;
                    spec.comms.insert(name.clone(), c);
                }
                _ => {}
            }
        }
        Ok(spec)
    }

    fn add_scale(
        &mut self,
        b: &Block,
        labels: &IndexMap<&str, (usize, &Vec<String>)>,
    ) -> Result<(), SpecError> {
        let (name, scale) = match &b.stmt {
            Stmt::Scale { name, size } => {
                let chain = match labels.get(name.as_str()) {
                    Some(&(line, l)) => {
                        if l.len() != *size {
                            return Err(SpecError::validation(
                                line,
                                format!("{} labels for scale {name:?} of size {size}", l.len()),
                            ));
                        }
                        Chain::with_labels(name.clone(), l.clone())
                            .map_err(|e| SpecError::validation(line, e.to_string()))?
                    }
                    None => Chain::new(name.clone(), *size)
                        .map_err(|e| SpecError::validation(b.line, e.to_string()))?,
                };
                (name, Scale::Plain(chain))
            }
            Stmt::RScale { name, half } => {
                let chain = match labels.get(name.as_str()) {
                    Some(&(line, l)) => {
                        if l.len() != half + 1 {
                            return Err(SpecError::validation(
                                line,
                                format!(
                                    "{} labels for reflection scale {name:?}; expected {} for 𝕆 ..= 𝕀",
                                    l.len(),
                                    half + 1
                                ),
                            ));
                        }
                        ReflChain::with_labels(name.clone(), l.clone())
                            .map_err(|e| SpecError::validation(line, e.to_string()))?
                    }
                    None => ReflChain::new(name.clone(), *half)
                        .map_err(|e| SpecError::validation(b.line, e.to_string()))?,
                };
                (name, Scale::Refl(chain))
            }
            _ => return Ok(()),
        };
        self.scales.insert(name.clone(), scale);
        Ok(())
    }

    fn resolve(&self, line: usize, name: &str) -> Result<Scale, SpecError> {
        if let Some(s) = self.scales.get(name) {
            return Ok(s.clone());
        }
        for (suffix, positive) in [('+', true), ('-', false)] {
            if let Some(base) = name.strip_suffix(suffix) {
                if let Some(Scale::Refl(r)) = self.scales.get(base) {
                    return Ok(Scale::Plain(if positive {
                        r.positive_half()
                    } else {
                        r.negative_half()
                    }));
                }
            }
        }
        Err(SpecError::validation(line, format!("unknown scale {name:?}")))
    }

    fn resolve_chain(&self, line: usize, name: &str) -> Result<Chain, SpecError> {
        match self.resolve(line, name)? {
            Scale::Plain(c) => Ok(c),
            Scale::Refl(_) => Err(SpecError::validation(
                line,
                format!("{name:?} is a reflection scale; use {name}+ or {name}-"),
            )),
        }
    }

    fn require_ground(&self, line: usize) -> Result<GroundSet, SpecError> {
        self.ground
            .clone()
            .ok_or_else(|| SpecError::validation(line, "`omega` must be declared before this block"))
    }

    fn build_measure(&self, b: &Block, scale: &str, kind: MeasureKind) -> Result<Measure, SpecError> {
        let ground = self.require_ground(b.line)?;
        let chain = self.resolve_chain(b.line, scale)?;
        let subset = |bl: &BodyLine| {
            ground
                .parse_subset(&bl.key)
                .map_err(|e| SpecError::validation(bl.line, e.to_string()))
        };
        let invalid = |e: Error| SpecError::validation(b.line, e.to_string());
        match kind {
            MeasureKind::Unanimity | MeasureKind::CoUnanimity => {
                let [bl] = b.body.as_slice() else {
                    return Err(SpecError::syntax(b.line, "a unanimity measure takes exactly one coalition line"));
                };
                if bl.value.is_some() {
                    return Err(SpecError::syntax(bl.line, "a coalition line takes no value"));
                }
                let k = subset(bl)?;
                if kind == MeasureKind::Unanimity {
                    unanimity(&ground, &chain, k).map_err(invalid)
                } else {
                    co_unanimity(&ground, &chain, k).map_err(invalid)
                }
            }
            _ => {
                let mut entries: Vec<(Subset, usize)> = Vec::new();
                for bl in &b.body {
                    let a = subset(bl)?;
                    let text = bl
                        .value
                        .as_deref()
                        .ok_or_else(|| SpecError::syntax(bl.line, "missing value"))?;
                    let v = parse_plain_value(&chain, text).ok_or_else(|| {
                        SpecError::validation(bl.line, format!("{text:?} is not a value of scale {scale:?}"))
                    })?;
                    if entries.iter().any(|e| e.0 == a) {
                        return Err(SpecError::validation(bl.line, format!("duplicate entry for {}", bl.key)));
                    }
                    entries.push((a, v));
                }
                match kind {
                    MeasureKind::Table => Measure::new(&ground, &chain, entries).map_err(invalid),
                    MeasureKind::ChainLower => {
                        chain_measure(&ground, &chain, &entries, ChainKind::Lower).map_err(invalid)
                    }
                    _ => chain_measure(&ground, &chain, &entries, ChainKind::Upper).map_err(invalid),
                }
            }
        }
    }

    fn build_function(&self, b: &Block, scale: &str) -> Result<Function, SpecError> {
        let ground = self.require_ground(b.line)?;
        let target = self.resolve(b.line, scale)?;
        let mut slots: Vec<Option<&BodyLine>> = vec![None; ground.len()];
        for bl in &b.body {
            let i = ground.index_of(&bl.key).ok_or_else(|| {
                SpecError::validation(bl.line, format!("unknown element {:?}", bl.key))
            })?;
            if slots[i].replace(bl).is_some() {
                return Err(SpecError::validation(bl.line, format!("duplicate value for {:?}", bl.key)));
            }
        }
        if let Some(i) = slots.iter().position(Option::is_none) {
            return Err(SpecError::validation(
                b.line,
                format!("no value for element {:?}", ground.names()[i]),
            ));
        }
        let texts: Vec<(usize, &str)> = slots
            .iter()
            .map(|bl| {
                let bl = bl.unwrap();
                bl.value
                    .as_deref()
                    .map(|v| (bl.line, v))
                    .ok_or_else(|| SpecError::syntax(bl.line, "missing value"))
            })
            .collect::<Result<_, _>>()?;
        let bad = |line: usize, t: &str| {
            SpecError::validation(line, format!("{t:?} is not a value of scale {scale:?}"))
        };
        let invalid = |e: Error| SpecError::validation(b.line, e.to_string());
        match target {
            Scale::Plain(c) => {
                let values = texts
                    .iter()
                    .map(|&(line, t)| parse_plain_value(&c, t).ok_or_else(|| bad(line, t)))
                    .collect::<Result<_, _>>()?;
                LatticeFn::new(&ground, &c, values).map(Function::Plain).map_err(invalid)
            }
            Scale::Refl(r) => {
                let values = texts
                    .iter()
                    .map(|&(line, t)| parse_signed_value(&r, t).ok_or_else(|| bad(line, t)))
                    .collect::<Result<_, _>>()?;
                RFn::new(&ground, &r, values).map(Function::Refl).map_err(invalid)
            }
        }
    }

    fn build_comm(&self, b: &Block, from: &str, to: &str) -> Result<CommFn, SpecError> {
        let src = self.resolve_chain(b.line, from)?;
        let dst = self.resolve_chain(b.line, to)?;
        let invalid = |e: Error| SpecError::validation(b.line, e.to_string());
        if b.body.is_empty() {
            return CommFn::identity_between(&src, &dst).map_err(invalid);
        }
        let mut values: Vec<Option<usize>> = vec![None; src.size()];
        for bl in &b.body {
            let p = parse_plain_value(&src, &bl.key).ok_or_else(|| {
                SpecError::validation(bl.line, format!("{:?} is not a value of scale {from:?}", bl.key))
            })?;
            let text = bl
                .value
                .as_deref()
                .ok_or_else(|| SpecError::syntax(bl.line, "missing value"))?;
            let v = parse_plain_value(&dst, text).ok_or_else(|| {
                SpecError::validation(bl.line, format!("{text:?} is not a value of scale {to:?}"))
            })?;
            if values[p].replace(v).is_some() {
                return Err(SpecError::validation(bl.line, format!("duplicate entry for {:?}", bl.key)));
            }
        }
        let values = values
            .iter()
            .enumerate()
            .map(|(p, v)| {
                v.ok_or_else(|| {
                    SpecError::validation(b.line, format!("no value for {}", src.label(p)))
                })
            })
            .collect::<Result<_, _>>()?;
        CommFn::new(&src, &dst, values).map_err(invalid)
    }

    pub fn ground(&self) -> Option<&GroundSet> {
        self.ground.as_ref()
    }

    pub fn scales(&self) -> &IndexMap<String, Scale> {
        &self.scales
    }

    pub fn measures(&self) -> &IndexMap<String, Measure> {
        &self.measures
    }

    pub fn functions(&self) -> &IndexMap<String, Function> {
        &self.functions
    }

    pub fn comms(&self) -> &IndexMap<String, CommFn> {
        &self.comms
    }

    pub fn measure(&self, name: &str) -> Option<&Measure> {
        self.measures.get(name)
    }

    pub fn function(&self, name: &str) -> Option<&Function> {
        self.functions.get(name)
    }

    pub fn comm(&self, name: &str) -> Option<&CommFn> {
        self.comms.get(name)
    }

    /// Looks up a plain or half scale by reference.
    pub fn chain(&self, name: &str) -> Option<Chain> {
        self.resolve_chain(0, name).ok()
    }

    /// The reflection scale whose positive half is `half`, if declared.
    pub fn refl_owning(&self, half: &Chain) -> Option<ReflChain> {
        self.scales.values().find_map(|s| match s {
            Scale::Refl(r) if &r.positive_half() == half => Some(r.clone()),
            _ => None,
        })
    }

    /// Canonical text: scales, omega, then measures as full tables,
    /// functions and comms, each in declaration order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, s) in &self.scales {
            let labels = match s {
                Scale::Plain(c) => {
                    writeln!(out, "scale {name} {}", c.size()).unwrap();
                    c.labels()
                }
                Scale::Refl(r) => {
                    writeln!(out, "rscale {name} {}", r.half_size()).unwrap();
                    r.labels()
                }
            };
            if let Some(l) = labels {
                writeln!(out, "labels {name} {}", l.join(" ")).unwrap();
            }
        }
        if let Some(g) = &self.ground {
            writeln!(out, "omega {}", g.names().join(" ")).unwrap();
        }
        for (name, m) in &self.measures {
            writeln!(out, "measure {name} scale={} kind=table", m.scale().name()).unwrap();
            for a in m.family() {
                let v = m.get(a).unwrap();
                writeln!(out, "  {} {}", m.ground().format_subset(a), m.scale().label(v)).unwrap();
            }
        }
        for (name, f) in &self.functions {
            match f {
                Function::Plain(f) => {
                    writeln!(out, "function {name} scale={}", f.scale().name()).unwrap();
                    for (w, &v) in f.ground().names().iter().zip(f.values()) {
                        writeln!(out, "  {w} {}", f.scale().label(v)).unwrap();
                    }
                }
                Function::Refl(f) => {
                    writeln!(out, "function {name} scale={}", f.scale().name()).unwrap();
                    for (w, &v) in f.ground().names().iter().zip(f.values()) {
                        writeln!(out, "  {w} {}", f.scale().label(v)).unwrap();
                    }
                }
            }
        }
        for (name, c) in &self.comms {
            writeln!(out, "comm {name} from={} to={}", c.src().name(), c.dst().name()).unwrap();
            for (p, &v) in c.values().iter().enumerate() {
                writeln!(out, "  {} {}", c.src().label(p), c.dst().label(v)).unwrap();
            }
        }
        out
    }
}
