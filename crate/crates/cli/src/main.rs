use std::fs;
use std::io::Write;
use std::path::Path;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use boxikit::bounds::{bound_report, extract_witness};
use boxikit::families::{divisors, exponents_of, FamilyKind, FamilySpec};
use boxikit::oracle::{
    certify_representation_optimal, exact_parameter, CertificationStatus, OracleConfig, DEFAULT_MAX_NON_EDGES,
};
use boxikit::posets::{
    build_divisibility_realizer, divisibility_poset, exact_poset_dimension, verify_realizer, DEFAULT_MAX_EXTENSIONS,
};
use boxikit::representation::{
    normalize_to_unit, representation_for_divisor_graph, representation_for_power_graph_cyclic,
    tcc_cube_representation, verify_representation, ConstructionTrace, Verdict,
};
use boxikit::{BoxRepresentation, Error, LabeledGraph, Result};

const MAX_NONEDGES_ENV: &str = "BOXIKIT_MAX_NONEDGES";

#[derive(Parser)]
#[command(name = "boxikit", version)]
#[command(about = "Box and cube representations of divisor graphs, power graphs and TCC graphs")]
struct Cli {
    /// Human-readable summary on standard error
    #[arg(long, short, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and print it as Graph JSON
    Build(FamilyArgs),

    /// Construct, verify and print a box representation
    Represent {
        #[command(flatten)]
        family: FamilyArgs,

        /// Rescale to unit intervals per axis
        #[arg(long)]
        unit: bool,

        /// Shift every axis so its smallest endpoint is 0
        #[arg(long)]
        translate: bool,
    },

    /// Check a representation against a graph (exit 1 on mismatch)
    Verify {
        #[arg(long)]
        graph: PathBuf,

        /// Representation JSON, bare or as printed by `represent`
        #[arg(long)]
        rep: PathBuf,
    },

    /// Exact boxicity or cubicity of a small graph
    Exact {
        #[arg(long)]
        graph: PathBuf,

        #[arg(long, value_enum)]
        param: Param,

        /// Largest accepted number of non-edges (default 18, or $BOXIKIT_MAX_NONEDGES)
        #[arg(long)]
        max_nonedges: Option<usize>,

        /// Largest value searched for
        #[arg(long)]
        cap: Option<usize>,
    },

    /// Bound formulas for a sorted exponent list
    Bounds(ExponentArgs),

    /// Witness join decomposition behind the lower bound
    Witness(ExponentArgs),

    /// Realizer of the divisibility poset of n
    Realizer {
        #[arg(long)]
        n: u64,

        /// Check the realizer
        #[arg(long)]
        verify: bool,

        /// Compute the exact poset dimension by search
        #[arg(long)]
        exact_dim: bool,

        #[arg(long, default_value_t = DEFAULT_MAX_EXTENSIONS)]
        max_extensions: usize,

        #[arg(long, default_value_t = 6)]
        cap_k: usize,
    },

    /// Construction, bounds, oracle and witness for TCC(m) in one document
    Report(ExponentArgs),
}

#[derive(Args)]
struct ExponentArgs {
    /// Non-decreasing exponents, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    params: Vec<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Tcc,
    Divisor,
    PowerCyclic,
    ReducedPower,
    HypercubeTc,
    Crown,
    Lifted,
}

#[derive(Clone, Copy, ValueEnum)]
enum Param {
    Boxicity,
    Cubicity,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Family,

    /// Exponents for tcc, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Vec<i64>,

    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,

    #[arg(long, allow_hyphen_values = true)]
    s: Option<i64>,

    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,

    /// Remove the all-zero and all-one tuples (hypercube-tc)
    #[arg(long)]
    truncated: bool,
}

impl FamilyArgs {
    fn need(value: Option<i64>, flag: &str, family: &str) -> Result<i64> {
        value.ok_or_else(|| Error::Input(format!("--family {family} needs --{flag}")))
    }

    fn spec(&self) -> Result<FamilySpec> {
        let (kind, params) = match self.family {
            Family::Tcc => {
                if self.params.is_empty() {
                    return Err(Error::Input("--family tcc needs --params".into()));
                }
                (FamilyKind::Tcc, self.params.clone())
            }
            Family::Divisor => (FamilyKind::Divisor, vec![Self::need(self.n, "n", "divisor")?]),
            Family::PowerCyclic => (FamilyKind::PowerCyclic, vec![Self::need(self.n, "n", "power-cyclic")?]),
            Family::ReducedPower => {
                (FamilyKind::ReducedPowerCyclic, vec![Self::need(self.n, "n", "reduced-power")?])
            }
            Family::HypercubeTc => {
                let kind = if self.truncated { FamilyKind::HypercubeTcTruncated } else { FamilyKind::HypercubeTc };
                (kind, vec![Self::need(self.s, "s", "hypercube-tc")?])
            }
            Family::Crown => (FamilyKind::Crown, vec![Self::need(self.s, "s", "crown")?]),
            Family::Lifted => (
                FamilyKind::Lifted,
                vec![Self::need(self.s, "s", "lifted")?, Self::need(self.k, "k", "lifted")?],
            ),
        };
        Ok(FamilySpec::new(kind, params))
    }

    fn positive_n(&self, family: &str) -> Result<u64> {
        let n = Self::need(self.n, "n", family)?;
        u64::try_from(n).ok().filter(|&n| n > 0).ok_or_else(|| Error::Input(format!("n must be positive, got {n}")))
    }
}

/// JSON for standard output plus the exit code.
struct Outcome {
    json: Value,
    code: u8,
    summary: String,
}

impl Outcome {
    fn ok(json: Value, summary: impl Into<String>) -> Self {
        Outcome { json, code: 0, summary: summary.into() }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("output types serialize")
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn read_graph(path: &Path) -> Result<LabeledGraph> {
    Ok(serde_json::from_value(read_json(path)?)?)
}

fn read_representation(path: &Path) -> Result<BoxRepresentation> {
    let mut value = read_json(path)?;
    if let Some(inner) = value.get_mut("representation") {
        value = inner.take();
    }
    Ok(serde_json::from_value(value)?)
}

fn oracle_config(max_nonedges: Option<usize>, cap: Option<usize>) -> Result<OracleConfig> {
    let from_env = match std::env::var(MAX_NONEDGES_ENV) {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .map_err(|_| Error::Input(format!("{MAX_NONEDGES_ENV} is not a non-negative integer: {v:?}")))?,
        ),
        Err(_) => None,
    };
    let mut config = OracleConfig {
        max_non_edges: max_nonedges.or(from_env).unwrap_or(DEFAULT_MAX_NON_EDGES),
        ..OracleConfig::default()
    };
    if let Some(k) = cap {
        config.max_k = k;
    }
    Ok(config)
}

fn represent(family: &FamilyArgs, unit: bool, translate: bool) -> Result<Outcome> {
    let (graph, rep, trace, order) = match family.family {
        Family::Tcc => {
            let spec = family.spec()?;
            let graph = spec.build()?;
            let m: Vec<u32> = spec.params.iter().map(|&x| x as u32).collect();
            if m.len() == 1 {
                let zero = BoxRepresentation::zero(graph.labels().iter().cloned());
                (graph, zero, ConstructionTrace::default(), vec![0])
            } else {
                let c = tcc_cube_representation(&m)?;
                (graph, c.representation, c.trace, c.recursion_order)
            }
        }
        Family::Divisor => {
            let n = family.positive_n("divisor")?;
            let c = representation_for_divisor_graph(n)?;
            (family.spec()?.build()?, c.representation, c.trace, c.recursion_order)
        }
        Family::PowerCyclic => {
            let n = family.positive_n("power-cyclic")?;
            let c = representation_for_power_graph_cyclic(n)?;
            (family.spec()?.build()?, c.representation, c.trace, c.recursion_order)
        }
        _ => return Err(Error::Input("represent supports --family tcc, divisor or power-cyclic".into())),
    };
    let mut rep = rep;
    if unit {
        rep = normalize_to_unit(&rep)?;
    }
    if translate {
        rep = rep.translated();
    }
    if let Verdict::Failure { pair, kind } = verify_representation(&graph, &rep)? {
        return Err(Error::Verification(format!("{kind:?} at {{{}, {}}}", pair.0, pair.1)));
    }
    let summary = format!("{}-dimensional representation of {} vertices, verified", rep.dimension(), graph.order());
    Ok(Outcome::ok(
        json!({
            "representation": rep,
            "trace": trace,
            "recursion_order": order,
            "verified": true,
        }),
        summary,
    ))
}

fn exact(graph: &Path, param: Param, max_nonedges: Option<usize>, cap: Option<usize>) -> Result<Outcome> {
    let g = read_graph(graph)?;
    let mode = match param {
        Param::Boxicity => boxikit::Parameter::Boxicity,
        Param::Cubicity => boxikit::Parameter::Cubicity,
    };
    let config = oracle_config(max_nonedges, cap)?.with_mode(mode);
    match exact_parameter(&g, &config) {
        Ok(r) => {
            let summary = format!("{:?} = {}", r.parameter, r.value);
            Ok(Outcome::ok(
                json!({
                    "parameter": r.parameter,
                    "value": r.value,
                    "certificate": r.completions,
                    "representation": r.representation,
                    "status": "exact",
                }),
                summary,
            ))
        }
        Err(Error::Capacity(reason)) => Ok(Outcome {
            json: json!({
                "parameter": mode,
                "value": null,
                "certificate": null,
                "status": "skipped",
                "reason": reason,
            }),
            code: 3,
            summary: format!("skipped: {reason}"),
        }),
        Err(e) => Err(e),
    }
}

fn realizer(n: u64, verify: bool, exact_dim: bool, max_extensions: usize, cap_k: usize) -> Result<Outcome> {
    let r = build_divisibility_realizer(n)?;
    let omega = exponents_of(n)?.omega();
    let mut out = json!({ "n": n, "size": r.len(), "realizer": r });
    let mut code = 0;
    let mut summary = format!("realizer of size {} for the divisors of {n}", r.len());
    if verify || exact_dim {
        let p = divisibility_poset(&divisors(n))?;
        if verify {
            let verdict = verify_realizer(&p, &r)?;
            if !verdict.is_ok() {
                code = 1;
            }
            summary += if verdict.is_ok() { ", verified" } else { ", NOT verified" };
            out["verification"] = to_json(&verdict);
        }
        if exact_dim {
            let d = exact_poset_dimension(&p, max_extensions, cap_k)?;
            summary += &format!(", exact dimension {} (omega {omega})", d.dimension);
            out["dimension"] = to_json(&d);
        }
    }
    Ok(Outcome { json: out, code, summary })
}

fn report(m: &[u32]) -> Result<Outcome> {
    let bounds = bound_report(m)?;
    let cert = certify_representation_optimal(m, &oracle_config(None, None)?)?;
    let witness = if m.len() >= 2 { Some(extract_witness(m)?) } else { None };
    let verified = witness.as_ref().is_none_or(|w| w.is_verified());
    let exact = match cert.status {
        CertificationStatus::Exact => format!("exact {}", cert.boxicity.unwrap_or_default()),
        CertificationStatus::Skipped => "exact skipped".to_string(),
    };
    let summary = format!("TCC{m:?}: lower {}, upper {}, {exact}", cert.lower, cert.upper);
    Ok(Outcome {
        json: json!({
            "m": m,
            "lower": cert.lower,
            "upper": cert.upper,
            "exact": cert.boxicity,
            "cubicity": cert.cubicity,
            "status": cert.status,
            "reason": cert.reason,
            "construction": { "dimension": cert.construction_dimension, "verified": true },
            "bounds": bounds,
            "witness": witness,
        }),
        code: if verified { 0 } else { 1 },
        summary,
    })
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Build(family) => {
            let g = family.spec()?.build()?;
            let summary = format!("{} vertices, {} edges", g.order(), g.edge_count());
            Ok(Outcome::ok(to_json(&g), summary))
        }
        Command::Represent { family, unit, translate } => represent(family, *unit, *translate),
        Command::Verify { graph, rep } => {
            let g = read_graph(graph)?;
            let r = read_representation(rep)?;
            let verdict = verify_representation(&g, &r)?;
            let code = if verdict.is_ok() { 0 } else { 1 };
            let summary = match &verdict {
                Verdict::Ok => "representation verified".to_string(),
                Verdict::Failure { pair, kind } => format!("{kind:?} at {{{}, {}}}", pair.0, pair.1),
            };
            Ok(Outcome { json: to_json(&verdict), code, summary })
        }
        Command::Exact { graph, param, max_nonedges, cap } => exact(graph, *param, *max_nonedges, *cap),
        Command::Bounds(args) => {
            let r = bound_report(&args.params)?;
            let summary = format!("lower {}, upper {}", r.lower, r.upper);
            Ok(Outcome::ok(to_json(&r), summary))
        }
        Command::Witness(args) => {
            let w = extract_witness(&args.params)?;
            let summary = format!("{} components, weighted sum {}", w.components.len(), w.weighted_sum);
            let code = if w.is_verified() { 0 } else { 1 };
            Ok(Outcome { json: to_json(&w), code, summary })
        }
        Command::Realizer { n, verify, exact_dim, max_extensions, cap_k } => {
            realizer(*n, *verify, *exact_dim, *max_extensions, *cap_k)
        }
        Command::Report(args) => report(&args.params),
    }
}

fn emit_error(kind: &str, message: &str) {
    eprintln!("{}", json!({ "error": { "kind": kind, "message": message } }));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            emit_error("input", e.render().to_string().trim());
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.json).expect("values serialize");
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if cli.verbose {
                eprintln!("{}", out.summary);
            }
            if out.code == 3 {
                emit_error("capacity", &out.summary);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            let (kind, code) = match &e {
                Error::Input(_) | Error::Format(_) => ("input", 2),
                Error::Capacity(_) => ("capacity", 3),
                Error::Verification(_) => ("verification", 1),
            };
            emit_error(kind, &e.to_string());
            ExitCode::from(code)
        }
    }
}
