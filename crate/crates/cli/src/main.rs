use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use partition_bounds::bijections::{
    psi, psi_inverse_trace, psi_inverse_traced, psi_trace, sylvester_distinct_to_odd,
    sylvester_odd_to_distinct, theorem32_inverse_traced, theorem32_map, BijectionTrace,
};
use partition_bounds::enumerate::{group_by_statistic, histogram};
use partition_bounds::qseries::{closed_form, enumerated_sides, Grading, Identity, Series};
use partition_bounds::verify::{self, grids, VerificationReport};
use partition_bounds::{
    enumerate_bounded, Bound, BoundSequence, CongruenceFilter, Partition, Statistic,
};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(
    name = "pbounds",
    version,
    about = "Partitions with bounded multiplicities: tables, bijections, q-series and finite-range verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the partitions of n admitted by a bound rule, in descending lexicographic order
    Enumerate {
        n: u32,
        #[command(flatten)]
        family: Family,
        /// Print only the number of partitions
        #[arg(long)]
        count: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Distribution of a statistic over the admitted partitions of n
    Stats {
        n: u32,
        #[command(flatten)]
        family: Family,
        #[arg(long, default_value = "alt-sum")]
        stat: Statistic,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Partitions of n grouped by a statistic, in exponent notation
    Table {
        n: u32,
        #[command(flatten)]
        family: Family,
        #[arg(long, default_value = "alt-sum")]
        stat: Statistic,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Apply a bijection and print its intermediate partitions
    Map {
        #[arg(value_enum)]
        name: MapName,
        /// Optional direction (fwd or inv), then the partition, e.g. "7,2,1",
        /// "(2^2,1^3)" or "" for the empty partition
        #[arg(num_args = 1..=2, required = true, value_names = ["DIRECTION", "PARTITION"])]
        args: Vec<String>,
        /// Run the inverse map (same as the inv direction)
        #[arg(long, visible_alias = "inv")]
        inverse: bool,
        /// Bound parameter m; omitted means no bound
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Dump coefficients of an enumerated or closed-form generating function
    Series {
        #[arg(value_enum)]
        kind: SeriesKind,
        /// Identity: t2.1, t2.2, t2.3, t2.4, t3.3 or t3.4
        id: String,
        #[command(flatten)]
        params: IdentityParams,
        /// For t3.3/t3.4 enumerated sides: alt (alternating sum) or odd (odd parts)
        #[arg(long, default_value = "alt")]
        side: String,
        #[arg(long, default_value_t = 12)]
        trunc: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Check a theorem over a finite parameter grid
    Verify(Box<VerifyArgs>),
}

#[derive(Debug, Args)]
struct Family {
    /// Bound rule, e.g. "all:3", "even:1", "odd:inf,even:2s", "phi:2*i+1"
    #[arg(long, default_value = "all:inf")]
    bounds: BoundSequence,
    /// Congruence filter, e.g. "mod:2,res:1"
    #[arg(long)]
    filter: Option<CongruenceFilter>,
}

#[derive(Debug, Args)]
struct IdentityParams {
    /// Bound rule on R (inclusive caps; strict caps must be even where required)
    #[arg(long)]
    bounds: Option<BoundSequence>,
    #[arg(long, default_value_t = 1)]
    modulus: u32,
    #[arg(long, default_value_t = 0)]
    residue: u32,
    #[arg(long, default_value_t = 0)]
    m: u32,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// t1.1, t1.2, t2.1, t2.2, t2.3, t2.4, t3.1, t3.2, t3.3, t3.4, t4.1, euler or all
    id: String,
    #[arg(long)]
    max_n: Option<u32>,
    /// Comma-separated list of m values
    #[arg(long, value_delimiter = ',')]
    m: Option<Vec<u32>>,
    #[arg(long)]
    trunc: Option<u32>,
    /// First bound rule for t1.2
    #[arg(long)]
    a: Option<BoundSequence>,
    /// Second bound rule for t1.2
    #[arg(long)]
    b: Option<BoundSequence>,
    /// Bound map φ for t4.1; repeat for several
    #[arg(long)]
    phi: Vec<BoundSequence>,
    /// Largest weight for the fishhook checks of t1.1
    #[arg(long)]
    fishhook_max: Option<u32>,
    /// Single configuration for t2.2/t2.3/t2.4 instead of the built-in grid
    #[arg(long)]
    bounds: Option<BoundSequence>,
    #[arg(long, default_value_t = 1)]
    modulus: u32,
    #[arg(long, default_value_t = 0)]
    residue: u32,
    /// Worker threads; defaults to all cores
    #[arg(long)]
    jobs: Option<usize>,
    /// Record elapsed_ms as 0 so output is byte-identical across runs
    #[arg(long)]
    no_timing: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapName {
    Sylvester,
    Psi,
    T32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    Enumerated,
    Closed,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Input(#[from] partition_bounds::Error),
    #[error("{0}")]
    Usage(String),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

type Outcome = Result<bool, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    match run(cli.command, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Outcome {
    match command {
        Command::Enumerate {
            n,
            family,
            count,
            format,
        } => cmd_enumerate(n, &family, count, format, out),
        Command::Stats {
            n,
            family,
            stat,
            format,
        } => cmd_stats(n, &family, stat, format, out),
        Command::Table {
            n,
            family,
            stat,
            format,
        } => cmd_table(n, &family, stat, format, out),
        Command::Map {
            name,
            args,
            inverse,
            m,
            format,
        } => {
            let (inverse, partition) = match args.as_slice() {
                [p] => (inverse, p.as_str()),
                [d, p] if d == "fwd" => (inverse, p.as_str()),
                [d, p] if d == "inv" => (true, p.as_str()),
                [d, _] => {
                    return Err(CliError::Usage(format!(
                        "unknown direction {d:?}; expected fwd or inv"
                    )))
                }
                _ => unreachable!("clap enforces one or two values"),
            };
            cmd_map(name, partition, inverse, m, format, out)
        }
        Command::Series {
            kind,
            id,
            params,
            side,
            trunc,
            format,
        } => cmd_series(kind, &id, &params, &side, trunc, format, out),
        Command::Verify(args) => cmd_verify(&args, out),
    }
}

fn cmd_enumerate(
    n: u32,
    family: &Family,
    count: bool,
    format: Format,
    out: &mut impl Write,
) -> Outcome {
    let parts: Vec<Partition> =
        enumerate_bounded(n, &family.bounds, family.filter.as_ref()).collect();
    match (format, count) {
        (Format::Json, true) => writeln!(
            out,
            "{}",
            json!({ "n": n, "bounds": family.bounds.to_string(), "count": parts.len() })
        )?,
        (Format::Json, false) => writeln!(out, "{}", serde_json::to_string(&parts)?)?,
        (_, true) => writeln!(out, "{}", parts.len())?,
        (_, false) => {
            for p in &parts {
                writeln!(out, "{p}")?;
            }
        }
    }
    Ok(true)
}

fn cmd_stats(
    n: u32,
    family: &Family,
    stat: Statistic,
    format: Format,
    out: &mut impl Write,
) -> Outcome {
    let counts = histogram(
        enumerate_bounded(n, &family.bounds, family.filter.as_ref()),
        stat,
    );
    match format {
        Format::Json => {
            let counts: serde_json::Map<String, serde_json::Value> = counts
                .iter()
                .map(|(k, v)| (k.to_string(), json!(v)))
                .collect();
            writeln!(
                out,
                "{}",
                json!({ "n": n, "bounds": family.bounds.to_string(), "stat": stat.name(), "counts": counts })
            )?;
        }
        Format::Csv => {
            writeln!(out, "{},count", stat.name())?;
            for (k, v) in &counts {
                writeln!(out, "{k},{v}")?;
            }
        }
        Format::Text => {
            for (k, v) in &counts {
                writeln!(out, "{k}: {v}")?;
            }
        }
    }
    Ok(true)
}

fn cmd_table(
    n: u32,
    family: &Family,
    stat: Statistic,
    format: Format,
    out: &mut impl Write,
) -> Outcome {
    let groups = match &family.filter {
        None => group_by_statistic(n, &family.bounds, stat),
        Some(filter) => {
            let mut groups = std::collections::BTreeMap::<u64, Vec<Partition>>::new();
            for p in enumerate_bounded(n, &family.bounds, Some(filter)) {
                groups.entry(stat.of(&p)).or_default().push(p);
            }
            groups.values_mut().for_each(|g| g.reverse());
            groups
        }
    };
    match format {
        Format::Json => {
            let rows: Vec<_> = groups
                .iter()
                .map(|(k, ps)| json!({ "k": k, "count": ps.len(), "partitions": ps.iter().map(Partition::exponent_notation).collect::<Vec<_>>() }))
                .collect();
            writeln!(
                out,
                "{}",
                json!({ "n": n, "bounds": family.bounds.to_string(), "stat": stat.name(), "rows": rows })
            )?;
        }
        _ => {
            for (k, ps) in &groups {
                let row: Vec<String> = ps.iter().map(Partition::exponent_notation).collect();
                writeln!(out, "{k}: {}", row.join(" "))?;
            }
            let counts: Vec<String> = groups
                .iter()
                .map(|(k, ps)| format!("{k}:{}", ps.len()))
                .collect();
            writeln!(out, "counts: {}", counts.join(" "))?;
        }
    }
    Ok(true)
}

fn bound_of(m: Option<u32>) -> Bound {
    m.map_or(Bound::Unbounded, Bound::Finite)
}

fn cmd_map(
    name: MapName,
    text: &str,
    inverse: bool,
    m: Option<u32>,
    format: Format,
    out: &mut impl Write,
) -> Outcome {
    let input: Partition = text.parse()?;
    let bound = bound_of(m);
    let direction = if inverse { "inverse" } else { "forward" };
    if name == MapName::Sylvester {
        // Forward: odd parts to distinct parts.
        let (odd, distinct) = if inverse {
            (sylvester_distinct_to_odd(&input)?, input.clone())
        } else {
            (input.clone(), sylvester_odd_to_distinct(&input)?)
        };
        let output = if inverse { &odd } else { &distinct };
        if format == Format::Json {
            writeln!(
                out,
                "{}",
                json!({ "map": "sylvester", "direction": direction, "input": input, "output": output })
            )?;
        } else if inverse {
            writeln!(out, "λ: {distinct}\nτ: {odd}")?;
        } else {
            writeln!(out, "τ: {odd}\nλ: {distinct}")?;
        }
        return Ok(true);
    }
    let trace: BijectionTrace = match (name, inverse) {
        (MapName::Psi, false) => match m {
            Some(_) => psi(&input, bound)?.1,
            None => psi_trace(&input),
        },
        (MapName::Psi, true) => match m {
            Some(_) => psi_inverse_traced(&input, bound)?,
            None => psi_inverse_trace(&input),
        },
        (MapName::T32, false) => theorem32_map(&input, bound)?.1,
        (MapName::T32, true) => theorem32_inverse_traced(&input, bound)?,
        (MapName::Sylvester, _) => unreachable!(),
    };
    if format == Format::Json {
        let map = if name == MapName::Psi { "psi" } else { "t32" };
        writeln!(
            out,
            "{}",
            json!({ "map": map, "direction": direction, "m": m, "trace": trace })
        )?;
        return Ok(true);
    }
    let (first, last) = if inverse { ("β", "α") } else { ("α", "β") };
    writeln!(out, "{first}: {}", trace.input)?;
    writeln!(out, "λ: {}", trace.lambda_part)?;
    writeln!(out, "μ: {}", trace.mu_part)?;
    writeln!(out, "τ: {}", trace.tau_part)?;
    writeln!(out, "ν: {}", trace.nu_part)?;
    writeln!(out, "{last}: {}", trace.output)?;
    Ok(true)
}

fn identity_from(
    id: &str,
    bounds: Option<BoundSequence>,
    modulus: u32,
    residue: u32,
    m: u32,
) -> Result<Identity, CliError> {
    let bounds = bounds.unwrap_or_else(BoundSequence::unbounded);
    Ok(match id {
        "t2.1" => Identity::FourParameter,
        "t2.2" => Identity::CongruenceClass {
            modulus,
            residue,
            bounds,
        },
        "t2.3" => Identity::PhiAaBb { bounds },
        "t2.4" => Identity::PsiAbAb { bounds },
        "t3.3" => Identity::AltSumAllBounded { m },
        "t3.4" => Identity::EvenPartsBounded { m },
        other => {
            return Err(CliError::Usage(format!(
                "unknown identity {other:?}; expected t2.1, t2.2, t2.3, t2.4, t3.3 or t3.4"
            )))
        }
    })
}

fn write_series(s: &Series, format: Format, out: &mut impl Write) -> io::Result<()> {
    let xq = s.grading() == Grading::Q;
    let width = if xq { 2 } else { 4 };
    let terms = s.sorted_terms();
    match format {
        Format::Json => {
            let rows: Vec<_> = terms
                .iter()
                .map(|(m, c)| json!({ "exponents": &m.0[..width], "coeff": c }))
                .collect();
            let vars = if xq {
                json!(["x", "q"])
            } else {
                json!(["a", "b", "c", "d"])
            };
            writeln!(
                out,
                "{}",
                json!({ "variables": vars, "trunc": s.truncation(), "terms": rows })
            )
        }
        Format::Csv => {
            writeln!(out, "{},coeff", if xq { "x,q" } else { "a,b,c,d" })?;
            for (m, c) in &terms {
                let exps: Vec<String> = m.0[..width].iter().map(i32::to_string).collect();
                writeln!(out, "{},{c}", exps.join(","))?;
            }
            Ok(())
        }
        Format::Text => writeln!(out, "{s}"),
    }
}

fn cmd_series(
    kind: SeriesKind,
    id: &str,
    p: &IdentityParams,
    side: &str,
    trunc: u32,
    format: Format,
    out: &mut impl Write,
) -> Outcome {
    let identity = identity_from(id, p.bounds.clone(), p.modulus, p.residue, p.m)?;
    let series = match kind {
        SeriesKind::Closed => closed_form(&identity, trunc)?,
        SeriesKind::Enumerated => {
            let mut sides = enumerated_sides(&identity, trunc)?;
            let index = match side {
                "alt" => 0,
                "odd" if sides.len() > 1 => 1,
                "odd" => {
                    return Err(CliError::Usage(format!(
                        "{id} has a single enumerated side"
                    )))
                }
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown side {other:?}; expected alt or odd"
                    )))
                }
            };
            sides.swap_remove(index).1
        }
    };
    write_series(&series, format, out)?;
    Ok(true)
}

const VERIFY_IDS: [&str; 12] = [
    "t1.1", "t1.2", "t2.1", "t2.2", "t2.3", "t2.4", "t3.1", "t3.2", "t3.3", "t3.4", "t4.1", "euler",
];

fn verify_one(id: &str, a: &VerifyArgs) -> Result<VerificationReport, CliError> {
    let single = |default: fn() -> Vec<Identity>| -> Result<Vec<Identity>, CliError> {
        match &a.bounds {
            Some(b) => Ok(vec![identity_from(
                id,
                Some(b.clone()),
                a.modulus,
                a.residue,
                0,
            )?]),
            None => Ok(default()),
        }
    };
    let ms = |default: &[u32]| a.m.clone().unwrap_or_else(|| default.to_vec());
    Ok(match id {
        "t1.1" => {
            let n = a.max_n.unwrap_or(30);
            verify::verify_t1_1(n, a.fishhook_max.unwrap_or(n.min(25)))
        }
        "t1.2" => {
            let (Some(x), Some(y)) = (&a.a, &a.b) else {
                return Err(CliError::Usage("t1.2 needs --a and --b bound rules".into()));
            };
            verify::verify_t1_2(x, y, a.max_n.unwrap_or(30))
        }
        "t2.1" => {
            verify::verify_series_identity(id, &[Identity::FourParameter], a.trunc.unwrap_or(16))
        }
        "t2.2" => verify::verify_series_identity(id, &single(grids::t2_2)?, a.trunc.unwrap_or(20)),
        "t2.3" => verify::verify_series_identity(id, &single(grids::t2_3)?, a.trunc.unwrap_or(24)),
        "t2.4" => verify::verify_series_identity(id, &single(grids::t2_4)?, a.trunc.unwrap_or(24)),
        "t3.1" => verify::verify_t3_1(a.max_n.unwrap_or(22), &ms(&[0, 1, 2, 3])),
        "t3.2" => verify::verify_t3_2(a.max_n.unwrap_or(22), &ms(&[0, 1, 2, 3])),
        "t3.3" => verify::verify_t3_3(&ms(&[0, 1, 2]), a.trunc.unwrap_or(24)),
        "t3.4" => verify::verify_t3_4(&ms(&[0, 1, 2]), a.trunc.unwrap_or(24)),
        "t4.1" => {
            let phis = if a.phi.is_empty() {
                vec![BoundSequence::constant(Bound::Finite(1)), "phi:i".parse()?]
            } else {
                a.phi.clone()
            };
            verify::verify_t4_1(a.max_n.unwrap_or(20), &phis)
        }
        "euler" => verify::verify_partition_function(a.max_n.unwrap_or(30))?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown theorem {other:?}; expected one of {} or all",
                VERIFY_IDS.join(", ")
            )));
        }
    })
}

fn cmd_verify(a: &VerifyArgs, out: &mut impl Write) -> Outcome {
    let ids: Vec<&str> = if a.id == "all" {
        VERIFY_IDS
            .iter()
            .copied()
            .filter(|&id| id != "t1.2" || (a.a.is_some() && a.b.is_some()))
            .collect()
    } else {
        vec![a.id.as_str()]
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = a.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build()?;
    let mut reports = pool.install(|| {
        ids.iter()
            .map(|id| verify_one(id, a))
            .collect::<Result<Vec<_>, _>>()
    })?;
    if a.no_timing {
        reports.iter_mut().for_each(|r| r.elapsed_ms = 0);
    }
    match a.format {
        Format::Json if reports.len() == 1 => {
            writeln!(out, "{}", serde_json::to_string_pretty(&reports[0])?)?
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?,
        _ => {
            for r in &reports {
                write!(out, "{r}")?;
                if !a.no_timing {
                    writeln!(out, "  elapsed: {} ms", r.elapsed_ms)?;
                }
            }
        }
    }
    Ok(reports.iter().all(VerificationReport::passed))
}
