use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use eschenburg::espaces::{classify_family, FamilyTag, SpaceError, SpaceParams};
use eschenburg::fixed_point_solver::{action_is_free, SolverError};
use eschenburg::group_catalog::{build_group, close_subgroup, FiniteIsometryGroup, GroupKind, IsometryTuple, Side, DEFAULT_CLOSURE_CAP};
use eschenburg::invariants::e2_invariants;
use eschenburg::isometry_atlas::{group_diagram, isometry_descriptor, AtlasError};
use eschenburg::search::{enumerate_canonical, verify_theorems, Suite, SweepConfig, VerifyRanges};

#[derive(Parser)]
#[command(name = "esch", version, about = "Positively curved biquotients: classification, invariants and free actions")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// worker threads for sweeps and certificates
    #[arg(long, env = "ESCH_JOBS", global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    AloffWallach,
    E1,
    E2Generic,
}

impl FamilyArg {
    fn tag(self) -> FamilyTag {
        match self {
            FamilyArg::AloffWallach => FamilyTag::AloffWallach { k: 0, l: 0 },
            FamilyArg::E1 => FamilyTag::E1 { p: 0 },
            FamilyArg::E2Generic => FamilyTag::E2Generic,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Family, cohomogeneity and isometry group of a space
    Classify {
        #[arg(long)]
        space: String,
    },
    /// r = |H^4|, first Pontrjagin residue and vertex lens orders of an E2 space
    Invariants {
        #[arg(long)]
        space: String,
    },
    /// Cohomogeneity-one group diagram
    Diagram {
        #[arg(long)]
        space: String,
    },
    /// Decide whether a finite group acts freely
    CertifyFree {
        #[arg(long)]
        space: String,
        /// catalog name (cyclic:n, bindihedral:n, quaternion8, 2T, 2O, 2I) or a JSON file of generators
        #[arg(long)]
        group: String,
        /// factor carrying a catalog group
        #[arg(long, default_value = "right")]
        side: String,
    },
    /// Canonical free, positively curved E2 triples
    Enumerate {
        #[arg(long)]
        bound: i64,
        /// INDEX/COUNT
        #[arg(long)]
        shard: Option<String>,
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
    },
    /// Run a verification sweep
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        max_p: Option<i64>,
        #[arg(long)]
        max_q: Option<i64>,
        #[arg(long)]
        max_k: Option<i64>,
        #[arg(long)]
        count: Option<usize>,
    },
}

#[derive(Debug)]
struct Failure {
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(kind: &'static str, message: impl ToString) -> Self {
        Failure {
            kind,
            message: message.to_string(),
        }
    }
}

enum Output {
    Json(Value),
    Table { header: Vec<String>, rows: Vec<Vec<String>>, json: Value },
}

struct Outcome {
    output: Output,
    negative: bool,
}

impl Outcome {
    fn json<T: Serialize>(payload: &T, negative: bool) -> Self {
        Outcome {
            output: Output::Json(serde_json::to_value(payload).expect("payload serializes")),
            negative,
        }
    }
}

fn parse_space(s: &str) -> Result<SpaceParams, Failure> {
    s.parse().map_err(|e: SpaceError| Failure::new("parse", e))
}

fn space_rejection(space: &SpaceParams, e: SpaceError) -> Result<Outcome, Failure> {
    match e {
        SpaceError::NotFree(_) | SpaceError::NotPositivelyCurved(_) => Ok(Outcome::json(
            &json!({ "space": space, "accepted": false, "reason": e.to_string() }),
            true,
        )),
        other => Err(Failure::new("invalid", other)),
    }
}

fn classify(space: &str) -> Result<Outcome, Failure> {
    let space = parse_space(space)?;
    let c = match classify_family(&space) {
        Ok(c) => c,
        Err(e) => return space_rejection(&space, e),
    };
    let isometry = match isometry_descriptor(&space) {
        Ok(d) => Some(d),
        Err(AtlasError::NotCovered(_)) => None,
        Err(AtlasError::Space(e)) => return space_rejection(&space, e),
        Err(e) => return Err(Failure::new("invalid", e)),
    };
    let iso = isometry.as_ref().map(|d| d.full_group.clone().unwrap_or_else(|| d.identity_component.clone()));
    Ok(Outcome::json(
        &json!({
            "space": space,
            "family": c.family.to_string(),
            "also": c.also.map(|f| f.to_string()),
            "cohomogeneity": c.cohomogeneity,
            "normalized": c.normalized,
            "iso": iso,
            "isometry": isometry,
        }),
        false,
    ))
}

fn invariants(space: &str) -> Result<Outcome, Failure> {
    let space = parse_space(space)?;
    let e2 = match space {
        SpaceParams::E2(p) => p,
        other => other
            .as_esch()
            .and_then(|e| e.as_e2())
            .ok_or_else(|| Failure::new("unsupported", format!("{other} has no E2 form")))?,
    };
    let inv = e2_invariants(&e2).map_err(|e| Failure::new("invalid", e))?;
    Ok(Outcome::json(&inv, false))
}

fn diagram(space: &str) -> Result<Outcome, Failure> {
    let space = parse_space(space)?;
    match group_diagram(&space) {
        Ok(d) => Ok(Outcome::json(&d, false)),
        Err(AtlasError::Space(e)) => space_rejection(&space, e),
        Err(e @ (AtlasError::NotCohomogeneityOne(_) | AtlasError::NotCovered(_))) => Ok(Outcome::json(
            &json!({ "space": space, "cohomogeneity_one": false, "reason": e.to_string() }),
            true,
        )),
    }
}

fn load_group(spec: &str, side: &str) -> Result<FiniteIsometryGroup, Failure> {
    if let Ok(kind) = spec.parse::<GroupKind>() {
        let side: Side = side.parse().map_err(|e| Failure::new("parse", e))?;
        let g = build_group(kind).map_err(|e| Failure::new("invalid", e))?;
        return Ok(FiniteIsometryGroup::from_factor(&g, side));
    }
    let path = Path::new(spec);
    if !path.is_file() {
        return Err(Failure::new("parse", format!("{spec:?} is neither a catalog group nor a generator file")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new("io", e))?;
    let gens: Vec<IsometryTuple> = serde_json::from_str(&text).map_err(|e| Failure::new("parse", e))?;
    close_subgroup(&gens, DEFAULT_CLOSURE_CAP).map_err(|e| Failure::new("invalid", e))
}

fn certify_free(space: &str, group: &str, side: &str) -> Result<Outcome, Failure> {
    let params = parse_space(space)?;
    let g = load_group(group, side)?;
    let label = match group.parse::<GroupKind>() {
        Ok(_) => format!("{group}@{side}"),
        Err(_) => group.to_string(),
    };
    let cert = action_is_free(&params, &g, &label).map_err(|e| match e {
        SolverError::Group(_) => Failure::new("invalid", e),
        _ => Failure::new("unsupported", e),
    })?;
    let negative = !cert.is_free();
    Ok(Outcome::json(&cert, negative))
}

fn enumerate(bound: i64, shard: Option<&str>, family: Option<FamilyArg>) -> Result<Outcome, Failure> {
    if bound < 1 {
        return Err(Failure::new("invalid", format!("bound must be positive, got {bound}")));
    }
    let mut config = SweepConfig::new(bound);
    if let Some(s) = shard {
        let (i, n) = s
            .split_once('/')
            .and_then(|(i, n)| Some((i.parse().ok()?, n.parse().ok()?)))
            .ok_or_else(|| Failure::new("parse", format!("shard must be INDEX/COUNT, got {s:?}")))?;
        config = config.with_shard(i, n).map_err(|e| Failure::new("invalid", e))?;
    }
    if let Some(f) = family {
        config = config.with_family(f.tag());
    }
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for p in enumerate_canonical(config) {
        let c = classify_family(&SpaceParams::E2(p)).map_err(|e| Failure::new("invalid", e))?;
        let cohom = c.cohomogeneity.map(|x| x.to_string()).unwrap_or_default();
        rows.push(vec![p.to_string(), c.family.to_string(), cohom]);
        records.push(json!({ "space": p, "family": c.family.to_string(), "cohomogeneity": c.cohomogeneity }));
    }
    let payload = json!({
        "bound": bound,
        "shard": format!("{}/{}", config.shard.0, config.shard.1),
        "count": records.len(),
        "spaces": records,
    });
    Ok(Outcome {
        output: Output::Table {
            header: vec!["space".into(), "family".into(), "cohomogeneity".into()],
            rows,
            json: payload,
        },
        negative: false,
    })
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn verify(suite: &str, ranges: VerifyRanges) -> Result<Outcome, Failure> {
    let suite: Suite = suite.parse().map_err(|e| Failure::new("parse", e))?;
    let report = verify_theorems(suite, ranges).map_err(|e| Failure::new("invalid", e))?;
    let mut header: Vec<String> = Vec::new();
    for r in &report.records {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !header.contains(k) {
                    header.push(k.clone());
                }
            }
        }
    }
    let rows = report
        .records
        .iter()
        .map(|r| header.iter().map(|k| cell(&r[k.as_str()])).collect())
        .collect();
    let negative = !report.pass;
    Ok(Outcome {
        output: Output::Table {
            header,
            rows,
            json: serde_json::to_value(&report).expect("report serializes"),
        },
        negative,
    })
}

fn render(output: Output, format: Format) -> Result<String, Failure> {
    match (output, format) {
        (Output::Json(v), _) | (Output::Table { json: v, .. }, Format::Json) => {
            Ok(serde_json::to_string_pretty(&v).expect("json value serializes") + "\n")
        }
        (Output::Table { header, rows, .. }, Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if !header.is_empty() {
                w.write_record(&header).map_err(|e| Failure::new("io", e))?;
            }
            for r in rows {
                w.write_record(&r).map_err(|e| Failure::new("io", e))?;
            }
            let bytes = w.into_inner().map_err(|e| Failure::new("io", e))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(Failure::new("invalid", "--jobs must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::new("io", e))?;
    }
    let single = |format: Format| {
        if format == Format::Csv {
            Err(Failure::new("usage", "csv output is only available for enumerate and verify"))
        } else {
            Ok(())
        }
    };
    match &cli.command {
        Command::Classify { space } => single(cli.format).and_then(|_| classify(space)),
        Command::Invariants { space } => single(cli.format).and_then(|_| invariants(space)),
        Command::Diagram { space } => single(cli.format).and_then(|_| diagram(space)),
        Command::CertifyFree { space, group, side } => single(cli.format).and_then(|_| certify_free(space, group, side)),
        Command::Enumerate { bound, shard, family } => enumerate(*bound, shard.as_deref(), *family),
        Command::Verify {
            suite,
            bound,
            max_p,
            max_q,
            max_k,
            count,
        } => verify(
            suite,
            VerifyRanges {
                bound: *bound,
                max_p: *max_p,
                max_q: *max_q,
                max_k: *max_k,
                count: *count,
            },
        ),
    }
}

fn fail(f: Failure) -> ExitCode {
    eprintln!("esch: {}", f.message);
    println!("{}", json!({ "error": { "kind": f.kind, "message": f.message } }));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return fail(Failure::new("usage", e.kind()));
        }
    };
    let format = cli.format;
    match run(cli).and_then(|o| Ok((render(o.output, format)?, o.negative))) {
        Ok((text, negative)) => {
            print!("{text}");
            if negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => fail(f),
    }
}
