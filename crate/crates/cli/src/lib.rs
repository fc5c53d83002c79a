//! `mkbetti`: Betti tables, componentwise linearity and power asymptotics of
//! graded ideals from the command line.
//!
//! Exit status is 0 when a verdict was produced, 1 on input errors and 2 when
//! a cap was hit before a verdict.

pub mod parse;
pub mod record;
pub mod render;

use std::fs::OpenOptions;
use std::io::Write;
use std::path::PathBuf;

use betti_core::asymptotics::{ClaimKind, LinearityMethod};
use betti_core::corpus::CorpusSpec;
use betti_core::koszul::{betti_table_with_field, BettiComputation};
use betti_core::monomial_ideal::DEFAULT_NODE_BUDGET;
use betti_core::{
    betti_table, betti_table_monomial, find_linear_quotients_power, has_linear_quotients,
    lambda_invariant, power_product, AnalysisOptions, BettiOptions, BettiTable, Error as CoreError,
    ExecMode, GeneratorOrder, PowerLadder, PrimeField, StabilizationVerdict,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::parse::{parse_ideal, IdealExpression};
use crate::record::{compute_batch, BatchSettings, SCHEMA_VERSION};
use crate::render::render_betti;

pub const DEGREE_CAP_ENV: &str = "BETTI_DEGREE_CAP";
pub const C_INDEX_CAP_ENV: &str = "BETTI_C_INDEX_CAP";

#[derive(Parser, Debug)]
#[command(
    name = "mkbetti",
    version,
    about = "Betti tables of graded ideals and of their products with powers of the maximal ideal"
)]
struct Cli {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Koszul,
    UpperKoszul,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti diagram of m^k I.
    Betti {
        ideal: String,
        #[arg(long, default_value_t = 0)]
        power: u32,
        /// Internal degree cap (default: a proven bound, or BETTI_DEGREE_CAP).
        #[arg(long)]
        cap: Option<u32>,
        /// Work modulo this prime instead of over the rationals (heuristic).
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, value_enum, default_value = "koszul")]
        engine: EngineArg,
    },
    /// Is m^k I componentwise linear?
    Cwl {
        ideal: String,
        #[arg(long, default_value_t = 0)]
        power: u32,
    },
    /// Stabilization index c_I.
    CIndex {
        ideal: String,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Strands of the Betti table of m^k I.
    Strands {
        ideal: String,
        #[arg(long)]
        power: u32,
    },
    /// Strand fullness, shift, degree and Tor checks for a range of powers.
    Pattern {
        ideal: String,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
    },
    /// Linear quotients of a monomial ideal or of m^t I.
    Linquot {
        ideal: String,
        /// Iterate the order construction until m^t I has linear quotients.
        #[arg(long)]
        construct: bool,
        #[arg(long, default_value_t = 10)]
        max_power: u32,
    },
    /// Compare reg(m^k I) with the top degree of W_{c_I}.
    Conjecture {
        ideal: String,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Random ideals analysed and appended to FILE as JSON lines.
    Batch {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_deg: u32,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Binomial generators instead of monomials.
        #[arg(long)]
        general: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Record wall-clock timings (records are then no longer reproducible).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        index_cap: Option<u32>,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Inconclusive(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Truncated { .. } | CoreError::CapExceeded { .. } => {
                Failure::Inconclusive(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<Status, Failure>;

#[derive(Debug, PartialEq, Eq)]
enum Status {
    Done,
    /// Output was written but a cap was hit.
    Partial,
}

struct Ctx<'a> {
    json: bool,
    exec: ExecMode,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn print(&mut self, text: &str) {
        let _ = writeln!(self.out, "{text}");
    }

    fn warn(&mut self, text: &str) {
        let _ = writeln!(self.err, "warning: {text}");
    }

    fn emit(&mut self, command: &str, engine: &str, expr: Option<&IdealExpression>, body: Value) {
        let mut doc = json!({
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "engine": engine,
        });
        if let Some(e) = expr {
            doc["ideal"] = json!(e.source_canonical());
            doc["n"] = json!(e.nvars());
        }
        if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
            d.extend(b);
        }
        let _ = writeln!(self.out, "{}", serde_json::to_string_pretty(&doc).unwrap());
    }
}

impl IdealExpression {
    fn source_canonical(&self) -> String {
        parse::serialize(self)
    }
}

fn env_u32(name: &str) -> Result<Option<u32>, Failure> {
    match std::env::var(name) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            Failure::Input(format!("{name} must be a nonnegative integer, got {v:?}"))
        }),
        Err(_) => Ok(None),
    }
}

fn parse_arg(text: &str) -> Result<IdealExpression, Failure> {
    parse_ideal(text).map_err(|e| Failure::Input(format!("cannot parse ideal: {e}")))
}

/// Runs the CLI on `args` (including the program name).
pub fn run(args: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                0
            } else {
                let _ = write!(err, "{e}");
                1
            };
        }
    };
    let mut ctx = Ctx {
        json: cli.json,
        exec: if cli.sequential {
            ExecMode::Sequential
        } else {
            ExecMode::Parallel
        },
        out,
        err,
    };
    let outcome = match cli.command {
        Command::Betti {
            ideal,
            power,
            cap,
            prime,
            engine,
        } => cmd_betti(&mut ctx, &ideal, power, cap, prime, engine),
        Command::Cwl { ideal, power } => cmd_cwl(&mut ctx, &ideal, power),
        Command::CIndex { ideal, cap } => cmd_c_index(&mut ctx, &ideal, cap),
        Command::Strands { ideal, power } => cmd_strands(&mut ctx, &ideal, power),
        Command::Pattern { ideal, from, to } => cmd_pattern(&mut ctx, &ideal, from, to),
        Command::Linquot {
            ideal,
            construct,
            max_power,
        } => cmd_linquot(&mut ctx, &ideal, construct, max_power),
        Command::Conjecture { ideal, cap } => cmd_conjecture(&mut ctx, &ideal, cap),
        Command::Batch {
            n,
            max_deg,
            count,
            seed,
            out,
            general,
            workers,
            timings,
            index_cap,
        } => {
            let spec = CorpusSpec {
                general,
                ..CorpusSpec::monomial(n, max_deg)
            };
            cmd_batch(
                &mut ctx, spec, count, seed, out, workers, timings, index_cap,
            )
        }
    };
    match outcome {
        Ok(Status::Done) => 0,
        Ok(Status::Partial) => 2,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            1
        }
        Err(Failure::Inconclusive(msg)) => {
            let _ = writeln!(ctx.err, "inconclusive: {msg}");
            2
        }
    }
}

fn ladder_for(
    ctx: &Ctx,
    expr: &IdealExpression,
    index_cap: Option<u32>,
) -> Result<PowerLadder, Failure> {
    let index_cap = match index_cap {
        Some(c) => c,
        None => env_u32(C_INDEX_CAP_ENV)?.unwrap_or(betti_core::asymptotics::DEFAULT_INDEX_CAP),
    };
    let opts = AnalysisOptions {
        index_cap,
        exec: ctx.exec,
        ..Default::default()
    };
    Ok(PowerLadder::new(expr.ideal.clone(), opts))
}

fn table_json(table: &BettiTable) -> Value {
    let entries: Vec<Value> = table
        .entries()
        .map(|((i, j), v)| json!({"i": i, "j": j, "beta": v}))
        .collect();
    let strands: serde_json::Map<String, Value> = table
        .strands()
        .into_iter()
        .map(|s| (s.ell.to_string(), json!(s.values)))
        .collect();
    json!({
        "entries": entries,
        "totals": table.totals(),
        "regularity": table.regularity().ok(),
        "strands": strands,
    })
}

fn set_string(set: impl IntoIterator<Item = impl ToString>) -> String {
    let items: Vec<String> = set.into_iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn cmd_betti(
    ctx: &mut Ctx,
    text: &str,
    power: u32,
    cap: Option<u32>,
    prime: Option<u64>,
    engine: EngineArg,
) -> Outcome {
    let expr = parse_arg(text)?;
    let cap = match cap {
        Some(c) => Some(c),
        None => env_u32(DEGREE_CAP_ENV)?,
    };
    if engine == EngineArg::UpperKoszul {
        if prime.is_some() {
            return Err(Failure::Input(
                "--prime applies to the koszul engine only".into(),
            ));
        }
        let mono = expr.monomial().ok_or_else(|| {
            Failure::Input("the upper-koszul engine needs a monomial ideal".into())
        })?;
        let table = betti_table_monomial(&power_product(&mono, power));
        if ctx.json {
            let mut body = table_json(&table);
            body["power"] = json!(power);
            ctx.emit("betti", "upper-koszul", Some(&expr), body);
        } else {
            ctx.print(render_betti(&table).trim_end());
        }
        return Ok(Status::Done);
    }
    let comp: BettiComputation = if let Some(p) = prime {
        let field = PrimeField::new(p)?;
        ctx.warn(&format!(
            "computing modulo {p}: results are heuristic for characteristic zero and theorem checks do not apply"
        ));
        let opts = BettiOptions {
            cap,
            exec: ctx.exec,
            ..Default::default()
        };
        betti_table_with_field(&expr.ideal.power(power), field, &opts)?
    } else if cap.is_some() {
        let opts = BettiOptions {
            cap,
            exec: ctx.exec,
            ..Default::default()
        };
        betti_table(&expr.ideal.power(power), &opts)?
    } else {
        ladder_for(ctx, &expr, None)?.betti(power)?.clone()
    };
    let engine = if comp.heuristic {
        "prime-field-heuristic"
    } else {
        "koszul"
    };
    if ctx.json {
        let mut body = table_json(&comp.table);
        body["power"] = json!(power);
        body["cap"] = json!(comp.cap);
        body["truncated"] = json!(comp.truncated);
        ctx.emit("betti", engine, Some(&expr), body);
    } else {
        ctx.print(render_betti(&comp.table).trim_end());
    }
    if comp.truncated {
        ctx.warn(&format!(
            "no bound certifies the degree cap {}; entries above it may be missing, retry with --cap {}",
            comp.cap.cap,
            comp.cap.cap * 2
        ));
        return Ok(Status::Partial);
    }
    Ok(Status::Done)
}

fn method_name(m: LinearityMethod) -> &'static str {
    match m {
        LinearityMethod::Empty => "zero component",
        LinearityMethod::FullComponent => "full component",
        LinearityMethod::Inherited => "no new generators",
        LinearityMethod::LinearQuotients => "linear quotients",
        LinearityMethod::Gotzmann => "maximal Hilbert growth",
        LinearityMethod::Koszul => "Koszul homology",
    }
}

fn cmd_cwl(ctx: &mut Ctx, text: &str, power: u32) -> Outcome {
    let expr = parse_arg(text)?;
    let mut ladder = ladder_for(ctx, &expr, None)?;
    let report = ladder.cwl(power)?.clone();
    if ctx.json {
        ctx.emit(
            "cwl",
            "koszul",
            Some(&expr),
            json!({"power": power, "report": report}),
        );
        return Ok(Status::Done);
    }
    let verdict = if report.componentwise_linear {
        "yes"
    } else {
        "no"
    };
    ctx.print(&format!("componentwise linear: {verdict}"));
    for c in &report.checks {
        let detail = match c.witness {
            Some((i, j)) => format!("not linear, beta_{{{i},{j}}} != 0"),
            None => "linear".to_string(),
        };
        ctx.print(&format!(
            "  degree {}: {detail} ({})",
            c.degree,
            method_name(c.method)
        ));
    }
    Ok(Status::Done)
}

fn cmd_c_index(ctx: &mut Ctx, text: &str, cap: Option<u32>) -> Outcome {
    let expr = parse_arg(text)?;
    let mut ladder = ladder_for(ctx, &expr, cap)?;
    let verdict = ladder.stabilization_index()?;
    if ctx.json {
        ctx.emit(
            "c-index",
            "koszul",
            Some(&expr),
            json!({ "verdict": verdict }),
        );
    }
    match verdict {
        StabilizationVerdict::Found(c) => {
            if !ctx.json {
                ctx.print(&format!("c_I = {c}"));
            }
            Ok(Status::Done)
        }
        StabilizationVerdict::Unknown { cap } => {
            if !ctx.json {
                ctx.print(&format!("c_I unknown: no k <= {cap} passed; raise --cap"));
            }
            Ok(Status::Partial)
        }
    }
}

fn cmd_strands(ctx: &mut Ctx, text: &str, power: u32) -> Outcome {
    let expr = parse_arg(text)?;
    let mut ladder = ladder_for(ctx, &expr, None)?;
    let report = ladder.strand_report(power)?;
    if ctx.json {
        ctx.emit(
            "strands",
            "koszul",
            Some(&expr),
            json!({ "report": report }),
        );
        return Ok(Status::Done);
    }
    ctx.print(&format!("k = {power}"));
    ctx.print(&format!(
        "nonzero strands: {}",
        set_string(&report.nonzero_strands)
    ));
    for s in &report.strands {
        let values: Vec<String> = s.values.iter().map(|v| v.to_string()).collect();
        let full = if s.is_full() { "full" } else { "not full" };
        ctx.print(&format!("  {}: {} ({full})", s.ell, values.join(" ")));
    }
    let gens: Vec<String> = report
        .generator_degrees
        .iter()
        .map(|(d, c)| format!("{c} in degree {d}"))
        .collect();
    ctx.print(&format!("minimal generators: {}", gens.join(", ")));
    Ok(Status::Done)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_pattern(ctx: &mut Ctx, text: &str, from: u32, to: u32) -> Outcome {
    if from > to {
        return Err(Failure::Input(format!("--from {from} exceeds --to {to}")));
    }
    let expr = parse_arg(text)?;
    let mut ladder = ladder_for(ctx, &expr, None)?;
    let mut rows = Vec::new();
    for k in from..=to {
        let report = ladder.strand_report(k)?;
        let shift = if k < to {
            Some(ladder.pattern_shift_check(k)?)
        } else {
            None
        };
        let degrees = ladder.strand_degree_check(k)?;
        let tor = if k >= 1 {
            Some(ladder.tor_exactness_check(k)?.holds)
        } else {
            None
        };
        let cwl = ladder.is_cwl(k)?;
        rows.push(json!({
            "k": k,
            "componentwise_linear": cwl,
            "nonzero_strands": report.nonzero_strands,
            "all_full": report.all_full(),
            "shift_to_next": shift,
            "shifted_strands": degrees.shifted_strands,
            "degrees_contained": degrees.contained,
            "degrees_equal": degrees.equal,
            "tor_identity": tor,
        }));
        if !ctx.json {
            let opt = |v: Option<bool>| v.map_or("n/a", yes_no);
            ctx.print(&format!(
                "k={k}: cwl {} strands {} full {} shift {} l-k {} contained {} equal {} tor {}",
                yes_no(cwl),
                set_string(&report.nonzero_strands),
                yes_no(report.all_full()),
                opt(shift),
                set_string(&degrees.shifted_strands),
                yes_no(degrees.contained),
                yes_no(degrees.equal),
                opt(tor),
            ));
        }
    }
    if ctx.json {
        ctx.emit("pattern", "koszul", Some(&expr), json!({ "powers": rows }));
    }
    Ok(Status::Done)
}

fn order_string(expr: &IdealExpression, order: &GeneratorOrder) -> String {
    let parts: Vec<String> = order
        .sequence()
        .iter()
        .map(|m| expr.display_monomial(m))
        .collect();
    parts.join(" < ")
}

fn cmd_linquot(ctx: &mut Ctx, text: &str, construct: bool, max_power: u32) -> Outcome {
    let expr = parse_arg(text)?;
    let mono = expr
        .monomial()
        .ok_or_else(|| Failure::Input("linear quotients need a monomial ideal".into()))?;
    if !construct {
        return match has_linear_quotients(&mono, DEFAULT_NODE_BUDGET) {
            betti_core::monomial_ideal::LinearQuotients::Admissible(order) => {
                if ctx.json {
                    let seq: Vec<String> = order
                        .sequence()
                        .iter()
                        .map(|m| expr.display_monomial(m))
                        .collect();
                    ctx.emit(
                        "linquot",
                        "koszul",
                        Some(&expr),
                        json!({"verdict": "admissible", "order": seq}),
                    );
                } else {
                    ctx.print(&format!(
                        "admissible order: {}",
                        order_string(&expr, &order)
                    ));
                }
                Ok(Status::Done)
            }
            betti_core::monomial_ideal::LinearQuotients::None => {
                if ctx.json {
                    ctx.emit("linquot", "koszul", Some(&expr), json!({"verdict": "none"}));
                } else {
                    ctx.print("no admissible order");
                }
                Ok(Status::Done)
            }
            betti_core::monomial_ideal::LinearQuotients::Inconclusive { nodes } => {
                if ctx.json {
                    ctx.emit(
                        "linquot",
                        "koszul",
                        Some(&expr),
                        json!({"verdict": "inconclusive", "nodes": nodes}),
                    );
                } else {
                    ctx.print(&format!("inconclusive after {nodes} search nodes"));
                }
                Ok(Status::Partial)
            }
        };
    }
    let lq = find_linear_quotients_power(&mono, max_power)?;
    let recheck = lambda_invariant(&lq.order).is_admissible();
    if !recheck {
        return Err(Failure::Input(
            "internal inconsistency: witness order failed the admissibility check".into(),
        ));
    }
    let trajectory: Vec<String> = lq.trajectory.iter().map(|v| v.to_string()).collect();
    if ctx.json {
        let seq: Vec<String> = lq
            .order
            .sequence()
            .iter()
            .map(|m| expr.display_monomial(m))
            .collect();
        ctx.emit(
            "linquot",
            "koszul",
            Some(&expr),
            json!({"t": lq.t, "order": seq, "lambda_trajectory": lq.trajectory, "verified": recheck}),
        );
    } else {
        ctx.print(&format!("t = {}", lq.t));
        ctx.print(&format!("lambda maximum: {}", trajectory.join(" -> ")));
        ctx.print(&format!(
            "admissible order on G(m^{} I): {}",
            lq.t,
            order_string(&expr, &lq.order)
        ));
    }
    Ok(Status::Done)
}

fn range_text(ks: &[u32]) -> String {
    match (ks.first(), ks.last()) {
        (Some(a), Some(b)) if a == b => format!("k={a}"),
        (Some(a), Some(b)) => format!("k={a}..{b}"),
        _ => "no k".to_string(),
    }
}

fn cmd_conjecture(ctx: &mut Ctx, text: &str, cap: Option<u32>) -> Outcome {
    let expr = parse_arg(text)?;
    let mut ladder = ladder_for(ctx, &expr, cap)?;
    let report = ladder.conjecture_check()?;
    if ctx.json {
        ctx.emit(
            "conjecture",
            "koszul",
            Some(&expr),
            json!({ "report": report }),
        );
        return Ok(Status::Done);
    }
    ctx.print(&format!("c_I = {}", report.c_index));
    ctx.print(&format!(
        "max degree of W_{}: {}",
        report.c_index, report.target
    ));
    let regs: Vec<String> = report
        .regularities
        .iter()
        .map(|(k, r)| format!("k={k}: {r}"))
        .collect();
    ctx.print(&format!("reg(m^k I): {}", regs.join(", ")));
    let ks = |kind: ClaimKind| -> Vec<u32> {
        report
            .verdicts
            .iter()
            .filter(|v| v.kind == kind)
            .map(|v| v.k)
            .collect()
    };
    let conj = if report.c_index == 0 {
        "conjecture range empty".to_string()
    } else if report.conjecture_holds {
        format!(
            "conjecture holds for {}",
            range_text(&ks(ClaimKind::Conjecture))
        )
    } else {
        "conjecture fails".to_string()
    };
    let formula = if report.formula_holds {
        format!("formula holds for {}", range_text(&ks(ClaimKind::Formula)))
    } else {
        "formula fails".to_string()
    };
    ctx.print(&format!("verdict: {conj}; {formula}"));
    for v in report.verdicts.iter().filter(|v| !v.holds) {
        ctx.print(&format!(
            "counterexample: k={} reg(m^k I) = {} but predicted {}",
            v.k, v.regularity, v.predicted
        ));
    }
    Ok(Status::Done)
}

#[allow(clippy::too_many_arguments)]
fn cmd_batch(
    ctx: &mut Ctx,
    spec: CorpusSpec,
    count: usize,
    seed: u64,
    path: PathBuf,
    workers: usize,
    timings: bool,
    index_cap: Option<u32>,
) -> Outcome {
    if spec.n == 0 || spec.max_degree == 0 {
        return Err(Failure::Input("--n and --max-deg must be positive".into()));
    }
    let index_cap = match index_cap {
        Some(c) => c,
        None => env_u32(C_INDEX_CAP_ENV)?.unwrap_or(betti_core::asymptotics::DEFAULT_INDEX_CAP),
    };
    let settings = BatchSettings {
        spec,
        seed,
        index_cap,
        timings,
    };
    let workers = if ctx.exec == ExecMode::Sequential {
        1
    } else {
        workers.max(1)
    };
    let records = compute_batch(&settings, (0..count as u64).collect(), workers);
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&path)
        .map_err(|e| Failure::Input(format!("cannot open {}: {e}", path.display())))?;
    let mut lines = String::new();
    for r in &records {
        lines.push_str(&serde_json::to_string(r).unwrap());
        lines.push('\n');
    }
    file.write_all(lines.as_bytes())
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    let ok = records.iter().filter(|r| r.status == "ok").count();
    let inconclusive = records
        .iter()
        .filter(|r| r.status == "inconclusive")
        .count();
    let counterexamples = records
        .iter()
        .filter(|r| {
            r.conjecture
                .as_ref()
                .is_some_and(|c| c.counterexample.is_some())
        })
        .count();
    if ctx.json {
        ctx.emit(
            "batch",
            "koszul",
            None,
            json!({"records": records.len(), "ok": ok, "inconclusive": inconclusive, "counterexamples": counterexamples, "out": path}),
        );
    } else {
        ctx.print(&format!(
            "appended {} records to {} ({ok} ok, {inconclusive} inconclusive, {counterexamples} with a counterexample)",
            records.len(),
            path.display()
        ));
    }
    if inconclusive > 0 || ok < records.len() {
        return Ok(Status::Partial);
    }
    Ok(Status::Done)
}
