use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use fibmod::closedform::{gf_via_roots_coordinate, term_via_roots};
use fibmod::explore::{classify_orbits, fibonacci_square, generation_certificate, positions_determine};
use fibmod::genfun::{gf_per_coordinate, numerator_basis_polys, q_poly};
use fibmod::specfile::{block_to_json, module_elem_to_json};
use fibmod::{Error, FibSpec, MultiSequence, RootPair, SpecFile};
use serde_json::{json, Value};

mod render;

#[derive(Parser)]
#[command(name = "fibmod", version, about = "Exact multi-dimensional linear recurrence sequences")]
struct Cli {
    /// JSON sequence description.
    #[arg(long, global = true)]
    spec: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Grid)]
    format: Format,

    /// Roots `r1,r2` of `t^2 - a t - b`, overriding any in the spec file.
    #[arg(long, global = true, allow_hyphen_values = true)]
    roots: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Grid,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print one term, e.g. `term 3,3`. Negative indices need --roots.
    Term {
        #[arg(allow_hyphen_values = true)]
        index: String,
    },
    /// Print a block of terms.
    Window {
        #[arg(long)]
        origin: Option<String>,
        #[arg(long)]
        shape: String,
    },
    /// Print the rational generating function.
    Genfun,
    /// Print the basis values P_i^[n] for n = 0..=upto and the polynomials
    /// q and Q_i of every axis.
    Basis {
        #[arg(long, default_value_t = 10)]
        upto: u64,
    },
    /// Check the anti-diagonal relation for all n, k <= max.
    DiagCheck {
        #[arg(long, default_value_t = 10)]
        max: usize,
    },
    /// Shift orbits of the 2x2 binary blocks of (1,1) x (1,1).
    Orbits {
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Whether the values at the given positions, e.g. "(0,0);(1,1)",
    /// determine the sequence.
    Determine { positions: String },
    /// Time the fast evaluation of the term at index n along every axis.
    Bench { n: u64 },
}

/// Failure carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Decode(_)
            | Error::InvalidArgument(_)
            | Error::InvalidRing(_)
            | Error::LengthMismatch { .. }
            | Error::IndexOutOfRange { .. }
            | Error::DuplicatePositions(_)
            | Error::WrongVariableCount { .. } => 2,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load(cli: &Cli) -> Result<SpecFile, Failure> {
    let path = cli.spec.as_ref().ok_or_else(|| Failure::input("this command needs --spec PATH"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let mut spec = SpecFile::parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    if let Some(r) = &cli.roots {
        spec.roots = Some(parse_roots(&spec.sequence, r)?);
    }
    Ok(spec)
}

fn parse_roots(seq: &MultiSequence, text: &str) -> Result<RootPair, Failure> {
    let tokens: Vec<&str> = text.split(',').map(str::trim).collect();
    if tokens.len() != 2 {
        return Err(Failure::input(format!("--roots expects r1,r2, got {text:?}")));
    }
    let parse = |t: &str| {
        seq.ring().parse_scalar(t).map_err(|e| Failure::input(format!("--roots: bad token {t:?}: {e}")))
    };
    Ok(RootPair::new(parse(tokens[0])?, parse(tokens[1])?)?)
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim().parse::<T>().map_err(|_| Failure::input(format!("{what}: bad entry {:?} in {text:?}", t.trim())))
        })
        .collect()
}

fn check_len<T>(v: &[T], dims: usize, what: &str) -> CmdResult {
    if v.len() != dims {
        return Err(Failure::input(format!("{what} needs {dims} entries, got {}", v.len())));
    }
    Ok(())
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Term { index } => cmd_term(cli, index),
        Command::Window { origin, shape } => cmd_window(cli, origin.as_deref(), shape),
        Command::Genfun => cmd_genfun(cli),
        Command::Basis { upto } => cmd_basis(cli, *upto),
        Command::DiagCheck { max } => cmd_diag(cli, *max),
        Command::Orbits { bound } => cmd_orbits(cli, *bound),
        Command::Determine { positions } => cmd_determine(cli, positions),
        Command::Bench { n } => cmd_bench(cli, *n),
    }
}

fn cmd_term(cli: &Cli, index: &str) -> CmdResult {
    let spec = load(cli)?;
    let seq = &spec.sequence;
    let idx: Vec<i64> = parse_list(index, "index")?;
    check_len(&idx, seq.dims(), "index")?;
    let value = if idx.iter().all(|&i| i >= 0) {
        seq.term(&idx.iter().map(|&i| i as usize).collect::<Vec<_>>())
    } else {
        let roots = spec
            .roots
            .as_ref()
            .ok_or_else(|| Failure::input("negative indices need --roots or \"roots\" in the spec"))?;
        term_via_roots(seq, roots, &idx, false)?
    };
    match cli.format {
        Format::Json => print_json(&module_elem_to_json(&value)),
        _ => println!("{value}"),
    }
    Ok(())
}

fn cmd_window(cli: &Cli, origin: Option<&str>, shape: &str) -> CmdResult {
    let spec = load(cli)?;
    let seq = &spec.sequence;
    let shape: Vec<usize> = parse_list(shape, "shape")?;
    check_len(&shape, seq.dims(), "shape")?;
    let origin: Vec<usize> = match origin {
        Some(o) => parse_list(o, "origin")?,
        None => vec![0; seq.dims()],
    };
    check_len(&origin, seq.dims(), "origin")?;
    let block = seq.window(&origin, &shape);
    match cli.format {
        Format::Grid => print!("{}", render::grid(&block)),
        Format::Csv => print!("{}", render::csv(&block, &origin)),
        Format::Json => {
            let mut v = block_to_json(&block);
            v["origin"] = json!(origin);
            print_json(&v);
        }
    }
    Ok(())
}

fn cmd_genfun(cli: &Cli) -> CmdResult {
    let spec = load(cli)?;
    let seq = &spec.sequence;
    let texts: Vec<(String, Value)> = match &spec.roots {
        Some(roots) => (0..seq.rank())
            .map(|c| {
                let g = gf_via_roots_coordinate(seq, roots, c)?;
                let factors: Vec<Value> =
                    g.factors().iter().flatten().map(|f| fibmod::Elem::Poly(f.clone()).to_json()).collect();
                let v = json!({
                    "text": g.to_string(),
                    "numerator": fibmod::Elem::Poly(g.expanded().numerator().clone()).to_json(),
                    "denominator_factors": factors,
                });
                Ok((g.to_string(), v))
            })
            .collect::<Result<_, Error>>()?,
        None => gf_per_coordinate(seq)
            .into_iter()
            .map(|g| {
                let dens: Vec<Value> =
                    g.denominators().iter().map(|q| fibmod::Elem::Poly(q.clone()).to_json()).collect();
                let v = json!({
                    "text": g.to_string(),
                    "numerator": fibmod::Elem::Poly(g.numerator().clone()).to_json(),
                    "denominators": dens,
                });
                (g.to_string(), v)
            })
            .collect(),
    };
    match cli.format {
        Format::Json => print_json(&Value::Array(texts.into_iter().map(|(_, v)| v).collect())),
        _ if texts.len() == 1 => println!("{}", texts[0].0),
        _ => {
            for (c, (t, _)) in texts.iter().enumerate() {
                println!("coordinate {}: {t}", c + 1);
            }
        }
    }
    Ok(())
}

fn cmd_basis(cli: &Cli, upto: u64) -> CmdResult {
    let spec = load(cli)?;
    let vars = fibmod::genfun::gf_variables(spec.sequence.dims());
    let mut out = Vec::new();
    for (axis, rec) in spec.sequence.spec().axes().iter().enumerate() {
        let values: Vec<Vec<fibmod::Elem>> = (0..=upto).map(|n| rec.basis_values(n)).collect();
        let q = q_poly(rec, &vars[axis]);
        let qs = numerator_basis_polys(rec, &vars[axis]);
        match cli.format {
            Format::Json => out.push(json!({
                "axis": axis + 1,
                "basis": (0..rec.order())
                    .map(|i| values.iter().map(|v| v[i].to_json()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "q": fibmod::Elem::Poly(q).to_json(),
                "Q": qs.into_iter().map(|p| fibmod::Elem::Poly(p).to_json()).collect::<Vec<_>>(),
            })),
            Format::Csv => {
                for i in 0..rec.order() {
                    let row: Vec<String> = values.iter().map(|v| v[i].to_string()).collect();
                    println!("{},{},{}", axis + 1, i, row.join(","));
                }
            }
            Format::Grid => {
                println!("axis {}: q = {q}", axis + 1);
                let rows: Vec<Vec<String>> = (0..rec.order())
                    .map(|i| values.iter().map(|v| v[i].to_string()).collect())
                    .collect();
                let labels: Vec<String> = (0..rec.order()).map(|i| format!("  P_{i}:")).collect();
                print!("{}", render::aligned(&labels, &rows));
                for (i, p) in qs.iter().enumerate() {
                    println!("  Q_{i} = {p}");
                }
            }
        }
    }
    if cli.format == Format::Json {
        print_json(&Value::Array(out));
    }
    Ok(())
}

fn cmd_diag(cli: &Cli, max: usize) -> CmdResult {
    let spec = load(cli)?;
    let seq = &spec.sequence;
    let mut checks = 0usize;
    for n in 0..=max {
        for k in 0..=max {
            match seq.diagonal_check(n, k) {
                Ok(true) => checks += 1,
                Ok(false) => {
                    println!("FAILED at ({n},{k})");
                    return Err(Failure { code: 1, message: format!("relation fails at ({n},{k})") });
                }
                Err(Error::HypothesisViolated(m)) => {
                    println!("HYPOTHESIS VIOLATED");
                    return Err(Failure { code: 3, message: m });
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    match cli.format {
        Format::Json => print_json(&json!({"status": "OK", "checks": checks})),
        _ => println!("OK ({checks} checks)"),
    }
    Ok(())
}

fn cmd_orbits(cli: &Cli, bound: usize) -> CmdResult {
    let orbits = classify_orbits(bound)?;
    let cert = generation_certificate();
    match cli.format {
        Format::Json => {
            let list: Vec<Value> = orbits
                .iter()
                .map(|o| {
                    let mut v = serde_json::to_value(o).expect("serializable");
                    v["label"] = json!(o.primitive.label());
                    v
                })
                .collect();
            let rows: Vec<Vec<String>> =
                cert.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            print_json(&json!({
                "orbits": list,
                "certificate": {"rows": rows, "determinant": cert.determinant.to_string()},
            }));
        }
        _ => {
            println!("{} primitive orbits", orbits.len());
            for o in &orbits {
                let label = o.primitive.label().unwrap_or("?");
                let noun = if o.len() == 1 { "member" } else { "members" };
                println!("{label} {} ({} {noun})", render::block_tuple(&o.primitive), o.len());
                for m in &o.members[1..] {
                    println!("  {} = {}", render::shift_name(m.shift, label), render::block_tuple(&m.block));
                }
            }
            println!("generation certificate determinant: {}", cert.determinant);
        }
    }
    Ok(())
}

fn parse_positions(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    text.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let inner = p.trim().trim_start_matches('(').trim_end_matches(')');
            parse_list(inner, "positions")
        })
        .collect()
}

fn cmd_determine(cli: &Cli, positions: &str) -> CmdResult {
    let spec: FibSpec = match cli.spec {
        Some(_) => load(cli)?.sequence.spec().clone(),
        None => fibonacci_square(),
    };
    let positions = parse_positions(positions)?;
    let ok = positions_determine(&spec, &positions)?;
    match cli.format {
        Format::Json => print_json(&json!({"determining": ok})),
        _ => println!("{}", if ok { "DETERMINING" } else { "NOT DETERMINING" }),
    }
    Ok(())
}

fn cmd_bench(cli: &Cli, n: u64) -> CmdResult {
    let spec = load(cli)?;
    let seq = &spec.sequence;
    let index = vec![n; seq.dims()];
    let start = Instant::now();
    let value = seq.term_fast(&index);
    let elapsed = start.elapsed();
    let shown = value.to_string();
    let shown = if shown.len() > 80 { format!("<{} characters>", shown.len()) } else { shown };
    match cli.format {
        Format::Json => print_json(&json!({
            "n": n,
            "seconds": elapsed.as_secs_f64(),
            "value": module_elem_to_json(&value),
        })),
        _ => println!("term_fast({n}) = {shown} in {:.3} ms", elapsed.as_secs_f64() * 1e3),
    }
    Ok(())
}
