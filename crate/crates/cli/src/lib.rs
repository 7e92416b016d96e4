//! The `ssg` command-line tool.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error; `decide` exits 3
//! when the answer is false.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use ssg_core::rational::Rational;
use ssg_core::{
    beta_stopping, brute_force_oracle_with_budget, certify, decide_value, explain_rejection, format_decimal,
    format_rational, game_value, generate_random_game, greedy_strategies, parse_edge_list, parse_game,
    parse_rational, reduce, solve, solve_value_vector, verify_ovv_certificate, verify_value_certificate,
    verify_value_complement_certificate, Certificate, Game, KindWeights, Method, Player, RationalVector,
    SolveReport, Strategy, DEFAULT_ORACLE_BUDGET, DEFAULT_STOPPING_EXPONENT,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FALSE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "ssg", version, about = "Exact solvers for simple stochastic games")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Also print values as decimals with this many digits.
    #[arg(long, global = true, value_name = "DIGITS")]
    approx: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a game file.
    Validate { input: Option<PathBuf> },
    /// Compute the optimal value vector and optimal strategies.
    Solve {
        #[arg(long, default_value = "auto", value_parser = parse_method)]
        method: Method,
        /// Write the certificate, when one is produced, to this file.
        #[arg(long, value_name = "FILE")]
        emit_cert: Option<PathBuf>,
        input: Option<PathBuf>,
    },
    /// Print the value of the start vertex.
    Value { input: Option<PathBuf> },
    /// Decide whether the game value exceeds alpha; exits 0 if so and 3 otherwise.
    Decide {
        #[arg(long, value_parser = parse_alpha)]
        alpha: Rational,
        input: Option<PathBuf>,
    },
    /// Print optimal strategies for both players.
    Strategies { input: Option<PathBuf> },
    /// Fix strategies and print the reduced edge set (and values when fully reduced).
    Reduce {
        #[arg(long, value_name = "EDGES")]
        tau: Option<String>,
        #[arg(long, value_name = "EDGES")]
        sigma: Option<String>,
        input: Option<PathBuf>,
    },
    /// Emit the stopping transform of a game.
    Transform {
        #[arg(long, default_value_t = DEFAULT_STOPPING_EXPONENT)]
        c: u32,
        /// Write the vertex map and edge chains as JSON to this file.
        #[arg(long, value_name = "FILE")]
        map: Option<PathBuf>,
        input: Option<PathBuf>,
    },
    /// Check a certificate; with --alpha, check the value certificate `s` instead.
    Certify {
        #[arg(long, value_name = "FILE")]
        cert: PathBuf,
        #[arg(long, value_parser = parse_alpha)]
        alpha: Option<Rational>,
        /// With --alpha: accept when the value is at most alpha.
        #[arg(long, requires = "alpha")]
        complement: bool,
        input: Option<PathBuf>,
    },
    /// Generate a random game.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1:1:1")]
        weights: KindWeights,
        /// Resample until the game is stopping.
        #[arg(long)]
        stopping: bool,
    },
    /// Solve by exhaustive strategy enumeration.
    Oracle {
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        budget: usize,
        input: Option<PathBuf>,
    },
    /// Time solvers on a suite of games.
    Bench {
        /// File listing game paths, one per line, relative to the suite file.
        #[arg(long, value_name = "FILE")]
        suite: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "auto", value_parser = parse_method)]
        methods: Vec<Method>,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

fn parse_alpha(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// A domain failure: message plus exit code.
struct Failure(i32, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(EXIT_DOMAIN, e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

struct Ctx<'a> {
    format: Format,
    approx: Option<usize>,
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn read_game(&mut self, input: &Option<PathBuf>) -> Result<Game, Failure> {
        let (text, label) = match input {
            Some(p) if p.as_os_str() != "-" => {
                let text = fs::read_to_string(p).map_err(|e| Failure(EXIT_DOMAIN, format!("{}: {e}", p.display())))?;
                (text, p.display().to_string())
            }
            _ => {
                let mut text = String::new();
                self.stdin.read_to_string(&mut text)?;
                (text, "<stdin>".to_string())
            }
        };
        parse_game(&text).map_err(|e| Failure(EXIT_DOMAIN, format!("{label}: {e}")))
    }

    fn json(&mut self, value: serde_json::Value) -> Result<(), Failure> {
        writeln!(self.out, "{}", serde_json::to_string_pretty(&value)?)?;
        Ok(())
    }

    fn rational(&self, x: &Rational) -> String {
        match self.approx {
            Some(d) => format!("{} (~{})", format_rational(x), format_decimal(x, d)),
            None => format_rational(x),
        }
    }
}

fn strings(v: &RationalVector) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn edge_strings(s: &Strategy) -> Vec<String> {
    s.edges().map(|(i, j)| format!("{i}->{j}")).collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct CertFile {
    n: usize,
    c: u32,
    z: Vec<String>,
    s: Vec<String>,
}

impl CertFile {
    fn from_cert(c: &Certificate) -> Self {
        CertFile { n: c.n, c: c.c, z: strings(&c.z), s: strings(&c.s) }
    }

    fn into_cert(self) -> Result<Certificate, Failure> {
        let parse = |xs: Vec<String>| -> Result<RationalVector, Failure> {
            xs.iter().map(|x| parse_rational(x).map_err(Failure::from)).collect()
        };
        Ok(Certificate { n: self.n, c: self.c, z: parse(self.z)?, s: parse(self.s)? })
    }
}

fn report_json(ctx: &Ctx, game: &Game, r: &SolveReport) -> serde_json::Value {
    let mut v = json!({
        "schema": 1,
        "method": r.method.name(),
        "iterations": r.iterations,
        "values": strings(&r.values),
        "value": format_rational(r.value(game)),
        "strategies": { "tau": edge_strings(&r.tau), "sigma": edge_strings(&r.sigma) },
        "certificate": r.certificate.as_ref().map(CertFile::from_cert),
    });
    if let Some(d) = ctx.approx {
        v["values_approx"] = json!(r.values.iter().map(|x| format_decimal(x, d)).collect::<Vec<_>>());
    }
    v
}

fn print_report(ctx: &mut Ctx, game: &Game, r: &SolveReport) -> Result<(), Failure> {
    if ctx.format == Format::Json {
        let v = report_json(ctx, game, r);
        return ctx.json(v);
    }
    writeln!(ctx.out, "method: {}", r.method)?;
    writeln!(ctx.out, "iterations: {}", r.iterations)?;
    for i in game.vertices() {
        let line = format!("v({i}) = {}", ctx.rational(&r.values[i]));
        writeln!(ctx.out, "{line}")?;
    }
    let line = format!("value = {}", ctx.rational(r.value(game)));
    writeln!(ctx.out, "{line}")?;
    writeln!(ctx.out, "tau: {}", r.tau)?;
    writeln!(ctx.out, "sigma: {}", r.sigma)?;
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure(EXIT_DOMAIN, format!("{}: {e}", path.display())))
}

fn execute(ctx: &mut Ctx, command: Command) -> Outcome {
    match command {
        Command::Validate { input } => {
            let g = ctx.read_game(&input)?;
            match ctx.format {
                Format::Json => ctx.json(json!({ "schema": 1, "valid": true, "n": g.n(), "start": g.start() }))?,
                Format::Text => writeln!(ctx.out, "ok: n = {}, start = {}", g.n(), g.start())?,
            }
        }
        Command::Solve { method, emit_cert, input } => {
            let g = ctx.read_game(&input)?;
            let r = solve(&g, method)?;
            if let Some(path) = emit_cert {
                let cert = match &r.certificate {
                    Some(c) => c.clone(),
                    None => certify(&g, DEFAULT_STOPPING_EXPONENT)?,
                };
                write_file(&path, &(serde_json::to_string_pretty(&CertFile::from_cert(&cert))? + "\n"))?;
            }
            print_report(ctx, &g, &r)?;
        }
        Command::Value { input } => {
            let g = ctx.read_game(&input)?;
            let v = game_value(&g)?;
            match ctx.format {
                Format::Json => ctx.json(json!({ "schema": 1, "value": format_rational(&v) }))?,
                Format::Text => {
                    let line = ctx.rational(&v);
                    writeln!(ctx.out, "{line}")?
                }
            }
        }
        Command::Decide { alpha, input } => {
            let g = ctx.read_game(&input)?;
            let answer = decide_value(&g, &alpha)?;
            match ctx.format {
                Format::Json => ctx.json(json!({ "schema": 1, "alpha": format_rational(&alpha), "decision": answer }))?,
                Format::Text => writeln!(ctx.out, "{answer}")?,
            }
            return Ok(if answer { EXIT_OK } else { EXIT_FALSE });
        }
        Command::Strategies { input } => {
            let g = ctx.read_game(&input)?;
            let r = solve(&g, Method::Auto)?;
            let (tau, sigma) = greedy_strategies(&g, &r.values)?;
            match ctx.format {
                Format::Json => ctx.json(json!({
                    "schema": 1,
                    "method": r.method.name(),
                    "strategies": { "tau": edge_strings(&tau), "sigma": edge_strings(&sigma) },
                }))?,
                Format::Text => {
                    writeln!(ctx.out, "tau: {tau}")?;
                    writeln!(ctx.out, "sigma: {sigma}")?;
                }
            }
        }
        Command::Reduce { tau, sigma, input } => {
            let g = ctx.read_game(&input)?;
            let parse = |s: &Option<String>, owner: Player| -> Result<Option<Strategy>, Failure> {
                match s {
                    None => Ok(None),
                    Some(text) => {
                        let edges = parse_edge_list(text).map_err(|e| Failure(EXIT_USAGE, e))?;
                        Ok(Some(Strategy::from_edges(&g, owner, &edges)?))
                    }
                }
            };
            let tau = parse(&tau, Player::Min)?;
            let sigma = parse(&sigma, Player::Max)?;
            let rg = reduce(&g, tau.as_ref(), sigma.as_ref())?;
            let edges: Vec<String> = rg.edges().map(|(i, j)| format!("{i}->{j}")).collect();
            let values = if rg.is_fully_reduced() { Some(solve_value_vector(&rg)?) } else { None };
            match ctx.format {
                Format::Json => ctx.json(json!({
                    "schema": 1,
                    "edges": edges,
                    "fully_reduced": rg.is_fully_reduced(),
                    "values": values.as_ref().map(strings),
                }))?,
                Format::Text => {
                    writeln!(ctx.out, "edges: {}", edges.join(","))?;
                    if let Some(v) = values {
                        for i in g.vertices() {
                            let line = format!("v({i}) = {}", ctx.rational(&v[i]));
                            writeln!(ctx.out, "{line}")?;
                        }
                    }
                }
            }
        }
        Command::Transform { c, map, input } => {
            let g = ctx.read_game(&input)?;
            let (g2, tr) = beta_stopping(&g, c)?;
            let chains: Vec<serde_json::Value> = g
                .edges()
                .map(|(i, j)| json!({ "from": i, "to": j, "chain": tr.chain(i, j).unwrap_or_default() }))
                .collect();
            let map_json = json!({
                "c": c,
                "n": g.n(),
                "transformed_n": g2.n(),
                "vertex_map": tr.vertex_map(),
                "edge_chains": chains,
            });
            if let Some(path) = map {
                write_file(&path, &(serde_json::to_string_pretty(&map_json)? + "\n"))?;
            }
            match ctx.format {
                Format::Json => ctx.json(json!({ "schema": 1, "game": g2.to_string(), "map": map_json }))?,
                Format::Text => write!(ctx.out, "{g2}")?,
            }
        }
        Command::Certify { cert, alpha, complement, input } => {
            let g = ctx.read_game(&input)?;
            let text = fs::read_to_string(&cert).map_err(|e| Failure(EXIT_DOMAIN, format!("{}: {e}", cert.display())))?;
            let file: CertFile =
                serde_json::from_str(&text).map_err(|e| Failure(EXIT_DOMAIN, format!("{}: {e}", cert.display())))?;
            let cert = file.into_cert()?;
            let (accepted, reason) = match alpha {
                Some(alpha) => {
                    let ok = if complement {
                        verify_value_complement_certificate(&g, &cert.s, &alpha, cert.c)?
                    } else {
                        verify_value_certificate(&g, &cert.s, &alpha, cert.c)?
                    };
                    (ok, (!ok).then(|| "value certificate rejected".to_string()))
                }
                None => {
                    let ok = verify_ovv_certificate(&g, &cert)?;
                    (ok, if ok { None } else { explain_rejection(&g, &cert)? })
                }
            };
            match ctx.format {
                Format::Json => ctx.json(json!({ "schema": 1, "accepted": accepted, "reason": reason }))?,
                Format::Text if accepted => writeln!(ctx.out, "accepted")?,
                Format::Text => writeln!(ctx.out, "rejected: {}", reason.unwrap_or_default())?,
            }
            if !accepted {
                return Err(Failure(EXIT_DOMAIN, "certificate rejected".into()));
            }
        }
        Command::Gen { n, seed, weights, stopping } => {
            let g = generate_random_game(n, weights, seed, stopping)?;
            match ctx.format {
                Format::Json => ctx.json(json!({ "schema": 1, "game": g.to_string() }))?,
                Format::Text => write!(ctx.out, "{g}")?,
            }
        }
        Command::Oracle { budget, input } => {
            let g = ctx.read_game(&input)?;
            let o = brute_force_oracle_with_budget(&g, budget)?;
            let r = SolveReport {
                values: o.values,
                tau: o.tau,
                sigma: o.sigma,
                method: ssg_core::Route::Oracle,
                iterations: o.pairs,
                certificate: None,
            };
            print_report(ctx, &g, &r)?;
        }
        Command::Bench { suite, methods } => bench(ctx, &suite, &methods)?,
    }
    Ok(EXIT_OK)
}

fn bench(ctx: &mut Ctx, suite: &Path, methods: &[Method]) -> Result<(), Failure> {
    let text = fs::read_to_string(suite).map_err(|e| Failure(EXIT_DOMAIN, format!("{}: {e}", suite.display())))?;
    let base = suite.parent().unwrap_or(Path::new("."));
    let mut rows = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let path = base.join(line);
        let g = ctx.read_game(&Some(path))?;
        for &m in methods {
            let start = Instant::now();
            let result = solve(&g, m);
            let micros = start.elapsed().as_micros() as u64;
            rows.push(match result {
                Ok(r) => json!({
                    "game": line, "n": g.n(), "method": m.name(), "route": r.method.name(),
                    "iterations": r.iterations, "micros": micros, "value": format_rational(r.value(&g)),
                }),
                Err(e) => json!({
                    "game": line, "n": g.n(), "method": m.name(), "route": null,
                    "iterations": null, "micros": micros, "error": e.to_string(),
                }),
            });
        }
    }
    if ctx.format == Format::Json {
        return ctx.json(json!({ "schema": 1, "rows": rows }));
    }
    writeln!(ctx.out, "{:<24} {:>4} {:<9} {:<13} {:>10} {:>12}  value", "game", "n", "method", "route", "iterations", "time_us")?;
    for r in rows {
        let cell = |k: &str| match &r[k] {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Null => "-".to_string(),
            other => other.to_string(),
        };
        let value = if r["error"].is_string() { format!("n/a ({})", cell("error")) } else { cell("value") };
        writeln!(
            ctx.out,
            "{:<24} {:>4} {:<9} {:<13} {:>10} {:>12}  {}",
            cell("game"),
            cell("n"),
            cell("method"),
            cell("route"),
            cell("iterations"),
            cell("micros"),
            value
        )?;
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let mut ctx = Ctx { format: cli.format, approx: cli.approx, stdin, out };
    match execute(&mut ctx, cli.command) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
