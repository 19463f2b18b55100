use std::process::ExitCode;

use blocklab::chartab::{dixon_table, family_table};
use blocklab::cyclo::Cyclotomic;
use blocklab::decomp::{cartan_case, contributions, height_classify, DecompRow, HeightVerdict};
use blocklab::fusion::{build_fusion, FusionCase};
use blocklab::gluing::gluing_check;
use blocklab::invariants::{alperin_weight_count, subsection_sum_with, theorem_main};
use blocklab::localweights::owc_check;
use blocklab::pcgroup::{make_group, GroupParams};
use blocklab::suite::{parse_grid, run_suite};
use blocklab::witness::{witness_report, WitnessKind};
use blocklab::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "blocklab", version, about = "Exact checks for 2-blocks with defect group D(2^n) * C(2^m)")]
struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args)]
struct Point {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u32,
}

#[derive(Args)]
struct CasePoint {
    #[command(flatten)]
    point: Point,
    #[arg(long, value_parser = parse_case)]
    case: FusionCase,
}

#[derive(Subcommand)]
enum Command {
    /// Block invariants k, k0, k1, k_{n-2}, l, e.
    Invariants {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, value_parser = parse_case)]
        case: Option<FusionCase>,
        /// Emit JSON (the default).
        #[arg(long)]
        json: bool,
        /// Grid such as n=3..6,m=2..4; every valid case unless --case is given.
        #[arg(long, conflicts_with_all = ["n", "m"])]
        grid: Option<String>,
    },
    /// Subsection representatives with l(b_u).
    Subsections(CasePoint),
    /// Character table of D(n, m).
    Chartable {
        #[command(flatten)]
        point: Point,
        #[arg(long, value_enum, default_value_t = TableSource::Family)]
        source: TableSource,
    },
    /// Contribution matrix and height verdicts for decomposition rows.
    Contrib {
        #[command(flatten)]
        at: CasePoint,
        /// JSON array of rows; entries are integers or cyclotomic objects
        /// {"N": .., "coeffs": {"e": [num, den]}}.
        #[arg(long)]
        rows: String,
    },
    /// Ordinary-weight ledger.
    Owc(CasePoint),
    /// Gluing obstruction groups.
    Gluing(CasePoint),
    /// Concrete group realizing a case.
    Witness {
        #[command(flatten)]
        point: Point,
        #[arg(long, value_parser = parse_kind)]
        kind: WitnessKind,
    },
    /// Alperin weight count against l(B).
    Awc(CasePoint),
    /// Every check over a grid.
    Suite {
        #[arg(long, default_value = "n=3..5,m=2..3")]
        grid: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableSource {
    Family,
    Dixon,
}

fn parse_case(s: &str) -> Result<FusionCase, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<WitnessKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ParamOutOfRange(_)
            | Error::InvalidCase { .. }
            | Error::Unsupported(_)
            | Error::OrderTooLarge { .. }
            | Error::SearchSpaceTooLarge { .. }
            | Error::DimensionMismatch(_)
            | Error::ZeroRow => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

fn params(p: &Point) -> Result<GroupParams, Failure> {
    Ok(GroupParams::new(p.n, p.m)?)
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn verdict(pass: bool, what: &str) -> Result<(), Failure> {
    if pass {
        Ok(())
    } else {
        Err(Failure::Check(format!("{what} failed")))
    }
}

fn parse_rows(s: &str) -> Result<Vec<DecompRow>, Failure> {
    let v: Value = serde_json::from_str(s).map_err(|e| Failure::Usage(format!("--rows: {e}")))?;
    let rows = v.as_array().ok_or_else(|| Failure::Usage("--rows must be a JSON array".into()))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Failure::Usage("each row must be an array".into()))?
                .iter()
                .map(|x| match x.as_i64() {
                    Some(i) => Ok(Cyclotomic::from_int(i)),
                    None => Cyclotomic::from_json(x).map_err(|e| Failure::Usage(e.to_string())),
                })
                .collect()
        })
        .collect()
}

fn verdict_json(v: &HeightVerdict) -> Value {
    match v {
        HeightVerdict::Height { height, rule } => json!({ "height": height, "rule": rule }),
        HeightVerdict::Contradiction { diagonal, valuation } => json!({
            "contradiction": true, "diagonal": diagonal.to_json(), "valuation": valuation.to_string()
        }),
        HeightVerdict::Undetermined { diagonal, valuation } => json!({
            "undetermined": true, "diagonal": diagonal.to_json(), "valuation": valuation.to_string()
        }),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let format = cli.format;
    match cli.command {
        Command::Invariants { n, m, case, json: _, grid } => {
            let points: Vec<(u32, u32)> = match (grid, n, m) {
                (Some(g), _, _) => {
                    let (ns, ms) = parse_grid(&g)?;
                    ns.iter().flat_map(|&n| ms.iter().map(move |&m| (n, m))).collect()
                }
                (None, Some(n), Some(m)) => vec![(n, m)],
                _ => return Err(Failure::Usage("give --n and --m, or --grid".into())),
            };
            let single = points.len() == 1 && case.is_some();
            let mut out = Vec::new();
            for (n, m) in points {
                let p = GroupParams::new(n, m)?;
                let cases = match case {
                    Some(c) => {
                        c.validate(n)?;
                        vec![c]
                    }
                    None => FusionCase::valid_cases(n),
                };
                for c in cases {
                    let mut v = theorem_main(p, c)?.to_json();
                    if !single {
                        v["n"] = n.into();
                        v["m"] = m.into();
                        v["case"] = c.to_string().into();
                    }
                    out.push(v);
                }
            }
            if single {
                emit(&out[0]);
            } else {
                emit(&Value::Array(out));
            }
            Ok(())
        }
        Command::Subsections(at) => {
            let p = params(&at.point)?;
            let inv = theorem_main(p, at.case)?;
            let fs = build_fusion(p, at.case)?;
            let reps = fs.subsection_reps(inv.l);
            let sum = subsection_sum_with(&fs, &inv)?;
            if format == Some(Format::Json) {
                let rows: Vec<Value> = reps
                    .iter()
                    .map(|s| {
                        json!({
                            "element": [s.element.i, s.element.j, s.element.k],
                            "class_size": s.class_size, "major": s.major,
                            "centralizer_order": s.defect_order, "l": s.l
                        })
                    })
                    .collect();
                emit(&json!({ "subsections": rows, "k_minus_l": sum.k_minus_l, "sum": sum.sum, "pass": sum.pass }));
            } else {
                println!("element\tclass_size\tmajor\tcentralizer_order\tl");
                for s in &reps {
                    let e = s.element;
                    println!("[{},{},{}]\t{}\t{}\t{}\t{}", e.i, e.j, e.k, s.class_size, s.major, s.defect_order, s.l);
                }
                println!("# k - l = {}, sum of l(b_u) = {}", sum.k_minus_l, sum.sum);
            }
            verdict(sum.pass, "subsection identity")
        }
        Command::Chartable { point, source } => {
            let p = params(&point)?;
            let t = match source {
                TableSource::Family => family_table(p)?,
                TableSource::Dixon => dixon_table(&make_group(p)?)?,
            };
            if format == Some(Format::Json) {
                emit(&t.to_json());
            } else {
                print!("{}", t.to_tsv());
            }
            Ok(())
        }
        Command::Contrib { at, rows } => {
            let p = params(&at.point)?;
            let rows = parse_rows(&rows)?;
            let c = cartan_case(p, at.case)?;
            let mat = contributions(&rows, &c, p)?;
            let entries: Vec<Vec<Value>> =
                mat.entries.iter().map(|r| r.iter().map(|v| v.to_json()).collect()).collect();
            let verdicts: Vec<Value> = if c.degenerate {
                Vec::new()
            } else {
                rows.iter()
                    .map(|r| height_classify(r, p, at.case).map(|v| verdict_json(&v)))
                    .collect::<Result<_, _>>()?
            };
            emit(&json!({ "scale": mat.scale, "entries": entries, "heights": verdicts }));
            Ok(())
        }
        Command::Owc(at) => {
            let p = params(&at.point)?;
            let l = owc_check(p, at.case)?;
            if format == Some(Format::Json) {
                emit(&serde_json::to_value(&l).expect("serializable"));
            } else {
                let top = l.targets.len();
                let header: Vec<String> = (0..top).map(|d| format!("d={d}")).collect();
                println!("Q\t|Q|\t{}", header.join("\t"));
                for r in &l.rows {
                    let w: Vec<String> = r.weights.iter().map(|x| x.to_string()).collect();
                    println!("{}\t{}\t{}", r.label, r.order, w.join("\t"));
                }
                let t: Vec<String> = l.targets.iter().map(|x| x.to_string()).collect();
                println!("k^d(B)\t-\t{}", t.join("\t"));
                println!("pass\t{}", if l.pass { "PASS" } else { "FAIL" });
            }
            verdict(l.pass, "ordinary weight ledger")
        }
        Command::Gluing(at) => {
            let p = params(&at.point)?;
            let r = gluing_check(p, at.case)?;
            emit(&serde_json::to_value(&r).expect("serializable"));
            verdict(r.pass, "gluing")
        }
        Command::Witness { point, kind } => {
            let p = params(&point)?;
            let r = witness_report(kind, p)?;
            emit(&r.to_json());
            Ok(())
        }
        Command::Awc(at) => {
            let p = params(&at.point)?;
            let inv = theorem_main(p, at.case)?;
            let fs = build_fusion(p, at.case)?;
            let w = alperin_weight_count(&fs)?;
            let pass = w == inv.l;
            emit(&json!({ "weights": w, "l": inv.l, "pass": pass }));
            verdict(pass, "weight count")
        }
        Command::Suite { grid, seed } => {
            let (ns, ms) = parse_grid(&grid)?;
            let r = run_suite(&ns, &ms, seed)?;
            if format == Some(Format::Json) {
                emit(&serde_json::to_value(&r).expect("serializable"));
            } else {
                print!("{}", r.to_tsv());
            }
            verdict(r.all_pass(), "suite")
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
