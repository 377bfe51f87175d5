use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use branchcov_core::chart::{
    applicable_moves, apply_chart_move, chart_hurwitz_system, chart_orientable, render_dot,
    render_svg, validate_chart, Chart, ChartMove, Orientability,
};
use branchcov_core::covering::{build_covering, covering_equivalent};
use branchcov_core::hurwitz::{
    hc_equivalent, hc_normal_form, AnySystem, SystemFile, DEFAULT_BFS_BUDGET,
};
use branchcov_core::link::{
    enumerate_simple_colorings, find_simple_lift, fox_color_name, LiftBounds, LiftOutcome,
    LinkDiagram, PermColoring, DEFAULT_LIFT_BUDGET, DEFAULT_LIFT_CONJUGATOR_LENGTH,
};
use branchcov_core::quandle::{
    lift_through_surjection, parse_map, quandle_colorings, FiniteQuandle, QuandleLift,
};
use branchcov_core::Error;
use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "branchcov",
    version,
    about = "Hurwitz systems, charts, link colorings and their lifts"
)]
struct Cli {
    /// Output format; `render` defaults to svg, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for randomized operations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Svg,
    Dot,
}

#[derive(Subcommand)]
enum Verb {
    /// HC normal form of a simple transitive closing permutation system.
    Normalize { system: PathBuf },
    /// Decide whether two systems are HC-equivalent.
    Equiv {
        left: PathBuf,
        right: PathBuf,
        /// Compare the covering surfaces up to sheet relabelling instead.
        #[arg(long)]
        covering: bool,
        #[arg(long, default_value_t = DEFAULT_BFS_BUDGET)]
        budget: usize,
    },
    /// Components, Euler characteristics and genera of the covering surface.
    Cover { system: PathBuf },
    /// Validate a chart file.
    ChartValidate { chart: PathBuf },
    /// Hurwitz system read off a chart.
    ChartMonodromy { chart: PathBuf },
    /// Orient the edges of an unoriented chart, if possible.
    ChartOrient { chart: PathBuf },
    /// Apply a chart move given as JSON, list the applicable ones, or apply
    /// random ones.
    ChartMove {
        chart: PathBuf,
        #[arg(long = "move", conflicts_with_all = ["list", "random"])]
        mv: Option<String>,
        #[arg(long)]
        list: bool,
        /// Apply this many randomly chosen applicable moves.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Enumerate colorings of a PD diagram by transpositions of S_d.
    Color {
        diagram: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Lift a transposition coloring to a coloring by conjugates of σ_i^±1.
    Lift {
        diagram: PathBuf,
        coloring: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LIFT_CONJUGATOR_LENGTH)]
        conjugator_length: usize,
        #[arg(long, default_value_t = DEFAULT_LIFT_BUDGET)]
        budget: u64,
    },
    /// Check the quandle axioms, optionally counting colorings of a diagram.
    QuandleCheck {
        quandle: PathBuf,
        #[arg(long)]
        diagram: Option<PathBuf>,
    },
    /// Lift target-quandle colorings through a surjection.
    QuandleLift {
        diagram: PathBuf,
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
        /// One target element index per arc; all target colorings if absent.
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// Draw a chart.
    Render { chart: PathBuf },
}

enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
    /// Input validation failed; the report goes to stdout.
    Invalid(Error, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(e) if !e.is_input_error() => 1,
            _ => 2,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Failure::Core(e) | Failure::Invalid(e, _) => {
                json!({"error": e.kind(), "message": e.to_string()})
            }
            Failure::Io(p, e) => json!({"error": "io", "message": format!("{}: {e}", p.display())}),
            Failure::Usage(m) => json!({"error": "usage", "message": m}),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn read_system(path: &Path) -> std::result::Result<AnySystem, Failure> {
    Ok(AnySystem::from_json(&read(path)?)?)
}

fn read_perm_system(
    path: &Path,
) -> std::result::Result<branchcov_core::hurwitz::PermSystem, Failure> {
    match read_system(path)? {
        AnySystem::Permutation(s) => Ok(s),
        AnySystem::Braid(_) => Err(Error::FlavorMismatch {
            expected: "permutation",
            found: "braid",
        }
        .into()),
    }
}

fn read_chart(path: &Path) -> std::result::Result<Chart, Failure> {
    Ok(Chart::from_json(&read(path)?)?)
}

fn read_diagram(path: &Path) -> std::result::Result<LinkDiagram, Failure> {
    Ok(LinkDiagram::parse(&read(path)?)?)
}

fn read_quandle(path: &Path) -> std::result::Result<FiniteQuandle, Failure> {
    Ok(FiniteQuandle::parse(&read(path)?)?)
}

fn normalize(path: &Path, text: bool) -> Outcome {
    let nf = hc_normal_form(&read_perm_system(path)?)?;
    let trace: Vec<String> = nf.trace.iter().map(ToString::to_string).collect();
    Ok(if text {
        format!("normal form: {}\ntrace: {}", nf.system, trace.join(" "))
    } else {
        pretty(&json!({"normal_form": SystemFile::from(&nf.system), "trace": trace}))
    })
}

fn equiv(left: &Path, right: &Path, covering: bool, budget: usize, text: bool) -> Outcome {
    let (s, t) = (read_system(left)?, read_system(right)?);
    let verdict = if covering {
        let (AnySystem::Permutation(a), AnySystem::Permutation(b)) = (&s, &t) else {
            return Err(Error::FlavorMismatch {
                expected: "permutation",
                found: "braid",
            }
            .into());
        };
        if covering_equivalent(a, b)? {
            "equivalent"
        } else {
            "distinct"
        }
    } else {
        match (&s, &t) {
            (AnySystem::Permutation(a), AnySystem::Permutation(b)) => {
                hc_equivalent(a, b, budget).name()
            }
            (AnySystem::Braid(a), AnySystem::Braid(b)) => hc_equivalent(a, b, budget).name(),
            _ => {
                return Err(Error::FlavorMismatch {
                    expected: s.flavor().name(),
                    found: t.flavor().name(),
                }
                .into())
            }
        }
    };
    Ok(if text {
        verdict.to_string()
    } else {
        pretty(&json!({"verdict": verdict, "relation": if covering { "covering" } else { "hc" }}))
    })
}

fn cover(path: &Path, text: bool) -> Outcome {
    let c = build_covering(&read_perm_system(path)?)?;
    if !text {
        return Ok(c.to_json());
    }
    let lines: Vec<String> = c
        .components
        .iter()
        .map(|k| {
            format!(
                "sheets {:?}: euler {}, genus {}",
                k.sheets, k.euler, k.genus
            )
        })
        .collect();
    Ok(lines.join("\n"))
}

fn chart_validate(path: &Path, text: bool) -> Outcome {
    let report = match read_chart(path) {
        Ok(c) => validate_chart(&c),
        Err(Failure::Core(e @ Error::InvalidChart { .. })) => {
            let Error::InvalidChart { event, msg } = &e else {
                unreachable!()
            };
            let out = if text {
                format!("invalid at event {event}: {msg}")
            } else {
                pretty(&json!({"valid": false, "failed_event": event, "message": msg}))
            };
            return Err(Failure::Invalid(e, out));
        }
        Err(f) => return Err(f),
    };
    Ok(if text {
        format!("valid ({} black vertices)", report.black_vertices)
    } else {
        pretty(&serde_json::to_value(&report).expect("serializable"))
    })
}

fn chart_monodromy(path: &Path, text: bool) -> Outcome {
    let s = chart_hurwitz_system(&read_chart(path)?)?;
    Ok(if text {
        match &s {
            AnySystem::Permutation(p) => p.to_string(),
            AnySystem::Braid(b) => b.to_string(),
        }
    } else {
        s.to_json()
    })
}

fn chart_orient(path: &Path, text: bool) -> Outcome {
    Ok(match chart_orientable(&read_chart(path)?)? {
        Orientability::Orientable(c) if text => format!("orientable\n{}", c.to_json()),
        Orientability::Orientable(c) => {
            let chart: Value = serde_json::from_str(&c.to_json()).expect("valid json");
            pretty(&json!({"orientable": true, "chart": chart}))
        }
        Orientability::Nonorientable { reason } if text => format!("nonorientable: {reason}"),
        Orientability::Nonorientable { reason } => {
            pretty(&json!({"orientable": false, "reason": reason}))
        }
    })
}

fn chart_move(
    path: &Path,
    mv: Option<&str>,
    list: bool,
    random: Option<usize>,
    seed: u64,
) -> Outcome {
    let c = read_chart(path)?;
    if list {
        let moves = applicable_moves(&c);
        return Ok(pretty(&serde_json::to_value(&moves).expect("serializable")));
    }
    if let Some(n) = random {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cur = c;
        for _ in 0..n {
            let moves = applicable_moves(&cur);
            let Some(m) = moves.choose(&mut rng) else {
                break;
            };
            cur = apply_chart_move(&cur, m)?;
        }
        return Ok(cur.to_json());
    }
    let Some(mv) = mv else {
        return Err(Failure::Usage(
            "chart-move needs --move, --list or --random".into(),
        ));
    };
    let m: ChartMove = serde_json::from_str(mv).map_err(|e| Failure::Core(e.into()))?;
    Ok(apply_chart_move(&c, &m)?.to_json())
}

fn color(path: &Path, d: usize, text: bool) -> Outcome {
    let dg = read_diagram(path)?;
    let all = enumerate_simple_colorings(&dg, d)?;
    let surjective = all.iter().filter(|e| e.surjective).count();
    if text {
        let mut out = format!("{} colorings, {surjective} surjective", all.len());
        for e in &all {
            let arcs: Vec<String> = e
                .coloring
                .assignment()
                .iter()
                .enumerate()
                .map(|(a, p)| match fox_color_name(p).filter(|_| d == 3) {
                    Some(name) => format!("{}:{name}", a + 1),
                    None => format!("{}:{p}", a + 1),
                })
                .collect();
            let mark = if e.surjective { " surjective" } else { "" };
            out.push_str(&format!("\n{}{mark}", arcs.join(" ")));
        }
        return Ok(out);
    }
    let colorings: Vec<Value> = all
        .iter()
        .map(|e| {
            let mut v = serde_json::to_value(e.coloring.to_file()).expect("serializable");
            v["surjective"] = json!(e.surjective);
            if d == 3 {
                let names: Vec<&str> = e
                    .coloring
                    .assignment()
                    .iter()
                    .filter_map(fox_color_name)
                    .collect();
                v["colors"] = json!(names);
            }
            v
        })
        .collect();
    Ok(pretty(&json!({
        "degree": d,
        "count": all.len(),
        "surjective": surjective,
        "colorings": colorings,
    })))
}

fn lift(diagram: &Path, coloring: &Path, bounds: LiftBounds, text: bool) -> Outcome {
    let dg = read_diagram(diagram)?;
    let f = PermColoring::from_json(&dg, &read(coloring)?)?;
    Ok(match find_simple_lift(&dg, &f, bounds)? {
        LiftOutcome::Lift(g) if text => {
            let arcs: Vec<String> = g
                .assignment()
                .iter()
                .enumerate()
                .map(|(a, b)| format!("{}: {b}", a + 1))
                .collect();
            arcs.join("\n")
        }
        LiftOutcome::Lift(g) => g.to_json(),
        LiftOutcome::NotFound {
            checks,
            budget_exhausted,
        } if text => {
            format!("no lift found ({checks} checks, budget exhausted: {budget_exhausted})")
        }
        LiftOutcome::NotFound {
            checks,
            budget_exhausted,
        } => pretty(&json!({"lift": null, "checks": checks, "budget_exhausted": budget_exhausted})),
    })
}

fn quandle_check(path: &Path, diagram: Option<&Path>, text: bool) -> Outcome {
    let q = read_quandle(path)?;
    if let Err(v) = q.validate() {
        let out = if text {
            format!("not a quandle: {v}")
        } else {
            pretty(&json!({"valid": false, "violation": v.to_string()}))
        };
        return Err(Failure::Invalid(Error::InvalidQuandle(v.to_string()), out));
    }
    let count = match diagram {
        Some(p) => Some(quandle_colorings(&read_diagram(p)?, &q)?.len()),
        None => None,
    };
    Ok(match (text, count) {
        (true, Some(k)) => format!("valid quandle of size {}; {k} colorings", q.len()),
        (true, None) => format!("valid quandle of size {}", q.len()),
        (false, _) => pretty(&json!({"valid": true, "size": q.len(), "colorings": count})),
    })
}

fn parse_indices(text: &str) -> std::result::Result<Vec<usize>, Failure> {
    Ok(parse_map(text)?)
}

fn quandle_lift(
    diagram: &Path,
    source: &Path,
    target: &Path,
    map: &Path,
    coloring: Option<&Path>,
    text: bool,
) -> Outcome {
    let dg = read_diagram(diagram)?;
    let (s, t) = (read_quandle(source)?, read_quandle(target)?);
    let p = parse_indices(&read(map)?)?;
    let colorings = match coloring {
        Some(c) => vec![parse_indices(&read(c)?)?],
        None => quandle_colorings(&dg, &t)?,
    };
    let mut results = Vec::new();
    let mut lines = Vec::new();
    for c in colorings {
        let out = lift_through_surjection(&dg, &s, &t, &p, &c)?;
        let show = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        match out {
            QuandleLift::Lift(l) => {
                lines.push(format!("{} -> {}", show(&c), show(&l)));
                results.push(json!({"coloring": c, "lift": l}));
            }
            QuandleLift::None { crossing } => {
                let k = crossing.map(|k| k + 1);
                lines.push(format!(
                    "{} -> none{}",
                    show(&c),
                    k.map(|k| format!(" (blocked at crossing {k})"))
                        .unwrap_or_default()
                ));
                results.push(json!({"coloring": c, "lift": null, "blocked_crossing": k}));
            }
        }
    }
    Ok(if text {
        lines.join("\n")
    } else {
        pretty(&json!({ "results": results }))
    })
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    let is_render = matches!(cli.verb, Verb::Render { .. });
    match (is_render, format) {
        (true, Some(Format::Json | Format::Text)) => {
            return Err(Failure::Usage("render supports --format svg or dot".into()))
        }
        (false, Some(Format::Svg | Format::Dot)) => {
            return Err(Failure::Usage(
                "--format svg and dot apply to render only".into(),
            ))
        }
        _ => {}
    }
    let text = format == Some(Format::Text);
    match cli.verb {
        Verb::Normalize { system } => normalize(&system, text),
        Verb::Equiv {
            left,
            right,
            covering,
            budget,
        } => equiv(&left, &right, covering, budget, text),
        Verb::Cover { system } => cover(&system, text),
        Verb::ChartValidate { chart } => chart_validate(&chart, text),
        Verb::ChartMonodromy { chart } => chart_monodromy(&chart, text),
        Verb::ChartOrient { chart } => chart_orient(&chart, text),
        Verb::ChartMove {
            chart,
            mv,
            list,
            random,
        } => chart_move(&chart, mv.as_deref(), list, random, cli.seed),
        Verb::Color { diagram, d } => color(&diagram, d, text),
        Verb::Lift {
            diagram,
            coloring,
            conjugator_length,
            budget,
        } => lift(
            &diagram,
            &coloring,
            LiftBounds {
                conjugator_length,
                budget,
            },
            text,
        ),
        Verb::QuandleCheck { quandle, diagram } => {
            quandle_check(&quandle, diagram.as_deref(), text)
        }
        Verb::QuandleLift {
            diagram,
            source,
            target,
            map,
            coloring,
        } => quandle_lift(&diagram, &source, &target, &map, coloring.as_deref(), text),
        Verb::Render { chart } => {
            let c = read_chart(&chart)?;
            Ok(if format == Some(Format::Dot) {
                render_dot(&c)?
            } else {
                render_svg(&c)?
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            eprintln!(
                "{}",
                json!({"error": "usage", "message": e.to_string().trim()})
            );
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(out) => {
            let _ = writeln!(std::io::stdout(), "{}", out.trim_end());
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Failure::Invalid(_, report) = &f {
                let _ = writeln!(std::io::stdout(), "{}", report.trim_end());
            }
            eprintln!("{}", f.to_json());
            ExitCode::from(f.code())
        }
    }
}
