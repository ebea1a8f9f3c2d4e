//! Command-line front end over spec files.
//!
//! Every command prints `key=value` tokens, one result per line. Exit codes:
//! 0 success, 1 usage or syntax error, 2 validation error, 3 domain error.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::aggregation::{
    asymmetric_fan_sugeno, distribution, fan_sugeno, fan_sugeno_dual, quantile, sugeno_integral,
    symmetric_fan_sugeno, symmetric_fan_sugeno_sup, CommFn, LatticeFn, RFn, Variant,
};
use crate::chain::Chain;
use crate::error::Error;
use crate::interval::Interval;
use crate::measure::{ChainKind, Measure};
use crate::metrics::{esssup_norm, is_nullfunction, kyfan_norm, ordinal_distance, ordinal_norm};
use crate::oracle;
use crate::spec::{Function, SpecFile};

/// Result of a CLI invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "ordagg", about = "Ordinal aggregation over spec files", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Extend {
    Inner,
    Outer,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Property {
    Minitive,
    Maxitive,
    LowerChain,
    UpperChain,
    Total,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NormKind {
    Ordinal,
    Kyfan,
    Esssup,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Sharp,
    Plain,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Sharp => Variant::Sharp,
            VariantArg::Plain => Variant::Plain,
        }
    }
}

#[derive(clap::Args, Debug)]
struct MeasureArgs {
    /// Spec file
    spec: PathBuf,
    #[arg(long)]
    measure: String,
    /// Extend a measure given on a proper subfamily before use
    #[arg(long, value_enum)]
    extend: Option<Extend>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a spec file, or classify one of its measures
    Check {
        spec: PathBuf,
        #[arg(long)]
        measure: Option<String>,
        #[arg(long, value_enum)]
        property: Option<Property>,
        #[arg(long, value_enum)]
        extend: Option<Extend>,
    },
    /// Recover the defining chain of a minitive (lower) or maxitive (upper) measure
    ChainVerify {
        #[command(flatten)]
        m: MeasureArgs,
        #[arg(long, default_value = "lower")]
        kind: String,
    },
    /// Print the distribution function x ↦ μ(f ≥ x)
    Distribution {
        #[command(flatten)]
        m: MeasureArgs,
        #[arg(long)]
        function: String,
    },
    /// Print the quantile correspondence, or its value at --p
    Quantile {
        #[command(flatten)]
        m: MeasureArgs,
        #[arg(long)]
        function: String,
        #[arg(long)]
        p: Option<String>,
        #[arg(long, value_enum, default_value = "sharp")]
        variant: VariantArg,
    },
    /// Fan-Sugeno functional ℓ ⊛ Q
    Eval {
        #[command(flatten)]
        m: MeasureArgs,
        #[arg(long)]
        function: String,
        #[arg(long)]
        comm: String,
        #[arg(long, value_enum, default_value = "sharp")]
        variant: VariantArg,
    },
    /// Dual Fan-Sugeno functional ℓ ⊛′ Q
    EvalDual {
        #[command(flatten)]
        m: MeasureArgs,
        #[arg(long)]
        function: String,
        #[arg(long)]
        comm: String,
        #[arg(long, value_enum, default_value = "sharp")]
        variant: VariantArg,
    },
    /// Symmetric functional S_ℓ(f⁺) ⩖ −S_k(f⁻); k defaults to ℓ
    EvalSym {
        #[command(flatten)]
        m: MeasureArgs,
        #[arg(long)]
        function: String,
        #[arg(long)]
        comm: String,
        #[arg(long)]
        comm_neg: Option<String>,
        #[arg(long, value_enum, default_value = "sharp")]
        variant: VariantArg,
    },
    /// Asymmetric functional S_ℓ₋(f) ⩖ S_ℓ₊(f)
    EvalAsym {
        #[command(flatten)]
        m: MeasureArgs,
        #[arg(long)]
        function: String,
        #[arg(long)]
        comm_minus: String,
        #[arg(long)]
        comm_plus: String,
        #[arg(long, value_enum, default_value = "sharp")]
        variant: VariantArg,
    },
    /// Ordinal distance between two functions
    Distance {
        #[command(flatten)]
        m: MeasureArgs,
        #[arg(long)]
        comm: String,
        #[arg(long)]
        function: String,
        #[arg(long)]
        other: String,
    },
    /// Ordinal, Ky-Fan or essential-supremum norm
    Norm {
        #[command(flatten)]
        m: MeasureArgs,
        #[arg(long)]
        function: String,
        #[arg(long, value_enum, default_value = "kyfan")]
        kind: NormKind,
        /// Required for --kind ordinal
        #[arg(long)]
        comm: Option<String>,
    },
    /// Compare the optimized operations against the brute-force oracles
    OracleCompare {
        #[command(flatten)]
        m: MeasureArgs,
        #[arg(long)]
        function: String,
        #[arg(long)]
        comm: String,
        #[arg(long, value_enum, default_value = "sharp")]
        variant: VariantArg,
    },
    /// Print a spec file in canonical form
    Fmt { spec: PathBuf },
}

enum Failure {
    Usage(String),
    Spec(crate::spec::SpecError),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(cli.command) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (1, format!("error: {m}")),
                Failure::Spec(e) => (e.exit_code(), format!("error: {e}")),
                Failure::Domain(m) => (3, format!("error: {m}")),
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr: msg + "\n",
            }
        }
    }
}

fn load(path: &PathBuf) -> CliResult<SpecFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    SpecFile::parse(&text).map_err(Failure::Spec)
}

fn measure(spec: &SpecFile, name: &str, extend: Option<Extend>) -> CliResult<Measure> {
    let m = spec
        .measure(name)
        .ok_or_else(|| Failure::Usage(format!("no measure named {name:?}")))?;
    Ok(match extend {
        Some(Extend::Inner) => m.inner_extension(),
        Some(Extend::Outer) => m.outer_extension(),
        None => m.clone(),
    })
}

fn function<'a>(spec: &'a SpecFile, name: &str) -> CliResult<&'a Function> {
    spec.function(name)
        .ok_or_else(|| Failure::Usage(format!("no function named {name:?}")))
}

fn plain_function(spec: &SpecFile, name: &str) -> CliResult<LatticeFn> {
    match function(spec, name)? {
        Function::Plain(f) => Ok(f.clone()),
        Function::Refl(_) => Err(Failure::Domain(format!(
            "function {name:?} lives on a reflection scale; use eval-sym or eval-asym"
        ))),
    }
}

fn refl_function(spec: &SpecFile, name: &str) -> CliResult<RFn> {
    match function(spec, name)? {
        Function::Refl(f) => Ok(f.clone()),
        Function::Plain(f) => match spec.refl_owning(f.scale()) {
            Some(r) => Ok(RFn::from_positive(f, &r)?),
            None => Err(Failure::Domain(format!(
                "function {name:?} is not on a reflection scale or its positive half"
            ))),
        },
    }
}

fn comm<'a>(spec: &'a SpecFile, name: &str) -> CliResult<&'a CommFn> {
    spec.comm(name)
        .ok_or_else(|| Failure::Usage(format!("no comm named {name:?}")))
}

fn show(i: &Interval) -> String {
    i.to_string()
}

fn rank_arg(chain: &Chain, text: &str) -> CliResult<usize> {
    let parsed = match text.strip_prefix("rank:") {
        Some(k) => k.parse().ok().filter(|&k| k < chain.size()),
        None => chain.rank_of(text),
    };
    parsed.ok_or_else(|| Failure::Usage(format!("{text:?} is not a value of scale {:?}", chain.name())))
}

fn execute(cmd: Command) -> CliResult<String> {
    let mut out = String::new();
    match cmd {
        Command::Fmt { spec } => out = load(&spec)?.to_text(),
        Command::Check {
            spec,
            measure: name,
            property,
            extend,
        } => {
            let spec = load(&spec)?;
            match name {
                None => {
                    if property.is_some() {
                        return Err(Failure::Usage("--property needs --measure".into()));
                    }
                    writeln!(
                        out,
                        "valid=true scales={} measures={} functions={} comms={}",
                        spec.scales().len(),
                        spec.measures().len(),
                        spec.functions().len(),
                        spec.comms().len()
                    )
                    .unwrap();
                }
                Some(name) => {
                    let m = measure(&spec, &name, extend)?;
                    let props = match property {
                        Some(p) => vec![p],
                        None => vec![
                            Property::Total,
                            Property::Minitive,
                            Property::Maxitive,
                            Property::LowerChain,
                            Property::UpperChain,
                        ],
                    };
                    let mut tokens = Vec::new();
                    for p in props {
                        let (key, value) = match p {
                            Property::Total => ("total", m.is_total()),
                            Property::Minitive => ("minitive", m.is_minitive()?),
                            Property::Maxitive => ("maxitive", m.is_maxitive()?),
                            // chain measures on a finite power set are exactly
                            // the minitive / maxitive ones
                            Property::LowerChain => ("lower_chain", m.is_minitive()?),
                            Property::UpperChain => ("upper_chain", m.is_maxitive()?),
                        };
                        tokens.push(format!("{key}={value}"));
                    }
                    writeln!(out, "{}", tokens.join(" ")).unwrap();
                }
            }
        }
        Command::ChainVerify { m, kind } => {
            let spec = load(&m.spec)?;
            let mu = measure(&spec, &m.measure, m.extend)?;
            let kind: ChainKind = kind.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let chain = match kind {
                ChainKind::Lower => mu.minitive_chain()?,
                ChainKind::Upper => mu.maxitive_chain()?,
            };
            let verified = mu.verify_chain(&chain, kind)?;
            let text: Vec<String> = chain.iter().map(|&a| mu.ground().format_subset(a)).collect();
            writeln!(out, "chain={} verified={verified}", text.join("<")).unwrap();
        }
        Command::Distribution { m, function } => {
            let spec = load(&m.spec)?;
            let mu = measure(&spec, &m.measure, m.extend)?;
            let f = plain_function(&spec, &function)?;
            let g = distribution(&mu, &f)?;
            for x in 0..f.scale().size() {
                writeln!(out, "x={} G={}", f.scale().label(x), mu.scale().label(g.get(x))).unwrap();
            }
        }
        Command::Quantile { m, function, p, variant } => {
            let spec = load(&m.spec)?;
            let mu = measure(&spec, &m.measure, m.extend)?;
            let f = plain_function(&spec, &function)?;
            let q = quantile(&mu, &f, variant.into())?;
            let ps: Vec<usize> = match p {
                Some(p) => vec![rank_arg(mu.scale(), &p)?],
                None => (0..mu.scale().size()).collect(),
            };
            for p in ps {
                let i = q.interval(p).unwrap();
                writeln!(out, "p={} interval={}", mu.scale().label(p), show(&i)).unwrap();
            }
        }
        Command::Eval { m, function, comm: c, variant } => {
            let spec = load(&m.spec)?;
            let mu = measure(&spec, &m.measure, m.extend)?;
            let f = plain_function(&spec, &function)?;
            let s = fan_sugeno(&mu, &f, comm(&spec, &c)?, variant.into())?;
            writeln!(out, "interval={} sup={}", show(&s), f.scale().label(s.hi())).unwrap();
        }
        Command::EvalDual { m, function, comm: c, variant } => {
            let spec = load(&m.spec)?;
            let mu = measure(&spec, &m.measure, m.extend)?;
            let f = plain_function(&spec, &function)?;
            let s = fan_sugeno_dual(&mu, &f, comm(&spec, &c)?, variant.into())?;
            writeln!(out, "interval={}", show(&s)).unwrap();
        }
        Command::EvalSym {
            m,
            function,
            comm: c,
            comm_neg,
            variant,
        } => {
            let spec = load(&m.spec)?;
            let mu = measure(&spec, &m.measure, m.extend)?;
            let f = refl_function(&spec, &function)?;
            let ell = comm(&spec, &c)?;
            let k = match &comm_neg {
                Some(k) => comm(&spec, k)?,
                None => ell,
            };
            let s = symmetric_fan_sugeno(&mu, &f, ell, k, variant.into())?;
            let sup = symmetric_fan_sugeno_sup(&mu, &f, ell, k)?;
            writeln!(out, "value={s} sup={sup}").unwrap();
        }
        Command::EvalAsym {
            m,
            function,
            comm_minus,
            comm_plus,
            variant,
        } => {
            let spec = load(&m.spec)?;
            let mu = measure(&spec, &m.measure, m.extend)?;
            let f = refl_function(&spec, &function)?;
            let s = asymmetric_fan_sugeno(
                &mu,
                &f,
                comm(&spec, &comm_minus)?,
                comm(&spec, &comm_plus)?,
                variant.into(),
            )?;
            writeln!(out, "value={s}").unwrap();
        }
        Command::Distance { m, comm: c, function, other } => {
            let spec = load(&m.spec)?;
            let mu = measure(&spec, &m.measure, m.extend)?;
            let f = refl_function(&spec, &function)?;
            let g = refl_function(&spec, &other)?;
            let d = ordinal_distance(&mu, comm(&spec, &c)?, &f, &g)?;
            writeln!(out, "distance={d}").unwrap();
        }
        Command::Norm { m, function, kind, comm: c } => {
            let spec = load(&m.spec)?;
            let mu = measure(&spec, &m.measure, m.extend)?;
            let f = refl_function(&spec, &function)?;
            match kind {
                NormKind::Ordinal => {
                    let c = c.ok_or_else(|| Failure::Usage("--kind ordinal needs --comm".into()))?;
                    writeln!(out, "norm={}", ordinal_norm(&mu, comm(&spec, &c)?, &f)?).unwrap();
                }
                NormKind::Kyfan => writeln!(out, "norm={}", kyfan_norm(&mu, &f)?).unwrap(),
                NormKind::Esssup => writeln!(
                    out,
                    "norm={} nullfunction={}",
                    esssup_norm(&mu, &f)?,
                    is_nullfunction(&mu, &f)?
                )
                .unwrap(),
            }
        }
        Command::OracleCompare { m, function, comm: c, variant } => {
            let spec = load(&m.spec)?;
            let mu = measure(&spec, &m.measure, m.extend)?;
            let f = plain_function(&spec, &function)?;
            let ell = comm(&spec, &c)?;
            let variant: Variant = variant.into();
            let mut all = true;
            let mut line = |name: &str, main: String, oracle: String| {
                let ok = main == oracle;
                all &= ok;
                writeln!(out, "op={name} main={main} oracle={oracle} match={ok}").unwrap();
            };
            let q = quantile(&mu, &f, variant)?;
            for p in 0..mu.scale().size() {
                line(
                    &format!("quantile@{}", mu.scale().label(p)),
                    show(&q.interval(p).unwrap()),
                    show(&oracle::oracle_quantile(&mu, &f, p, variant)?),
                );
            }
            line(
                "fan_sugeno",
                show(&fan_sugeno(&mu, &f, ell, variant)?),
                show(&oracle::oracle_fan_sugeno(&mu, &f, ell, variant)?),
            );
            line(
                "fan_sugeno_dual",
                show(&fan_sugeno_dual(&mu, &f, ell, variant)?),
                show(&oracle::oracle_fan_sugeno_dual(&mu, &f, ell, variant)?),
            );
            if mu.scale().size() == f.scale().size() {
                line(
                    "sugeno_integral",
                    sugeno_integral(&mu, &f)?.to_string(),
                    f.scale().label(oracle::oracle_sugeno(&mu, &f)?),
                );
            }
            if mu.ground().len() <= oracle::MAX_ORACLE_GROUND {
                line(
                    "minitive",
                    mu.is_minitive()?.to_string(),
                    oracle::oracle_minitive(&mu)?.to_string(),
                );
                line(
                    "maxitive",
                    mu.is_maxitive()?.to_string(),
                    oracle::oracle_maxitive(&mu)?.to_string(),
                );
            }
            writeln!(out, "all_match={all}").unwrap();
            if !all {
                return Err(Failure::Domain(format!("oracle mismatch\n{out}")));
            }
        }
    }
    Ok(out)
}
