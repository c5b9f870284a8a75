//! Command-line surface over the library. Every subcommand prints one
//! JSON envelope on stdout: the command name, a status, the payload, and
//! the elapsed time. Computation failures print the same envelope shape
//! with an error message on stderr and exit with status 1; malformed
//! invocations exit with status 2. The `repro` and `verify` subcommands
//! additionally exit nonzero when any of their rows fail.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cyclocode::bounds::o4_bounds;
use cyclocode::code::{classify_structure, code_from_sequence, CyclicCode};
use cyclocode::cyclotomy::{quartic_decomposition, ClassCtx};
use cyclocode::field::Field;
use cyclocode::seq::{p_rank, SeqKind, SequenceSpec};
use cyclocode::verify::{
    outcomes_csv, reproduce_examples, reproduce_selected, sweep_csv, theorem_sweep, Verdict,
};
use cyclocode::weights::{min_weight, Tier};
use cyclocode::{Error, Result};

#[derive(Parser)]
#[command(
    name = "cyclocode",
    version,
    about = "Cyclic codes of prime length from quartic residue class sequences"
)]
struct Cli {
    /// Cap on enumeration worker threads. Results never depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TierArg {
    Fast,
    Extended,
}

impl TierArg {
    fn tier(self) -> Tier {
        match self {
            TierArg::Fast => Tier::Fast,
            TierArg::Extended => Tier::Extended,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqArg {
    S1,
    S2,
}

impl SeqArg {
    fn kind(self) -> SeqKind {
        match self {
            SeqArg::S1 => SeqKind::S1,
            SeqArg::S2 => SeqKind::S2,
        }
    }
}

/// Class indices parsed from a list like "C0,C1" (the leading C is
/// optional and case-insensitive).
#[derive(Clone)]
struct ClassSet(Vec<usize>);

fn parse_class_set(raw: &str) -> std::result::Result<ClassSet, String> {
    let mut indices = Vec::new();
    for token in raw.split(',') {
        let trimmed = token.trim();
        let digits = trimmed.strip_prefix(['C', 'c']).unwrap_or(trimmed);
        let idx: usize = digits
            .parse()
            .map_err(|_| format!("class token {trimmed:?} is not of the form C0..C3"))?;
        if idx > 3 {
            return Err(format!("class index {idx} exceeds 3"));
        }
        indices.push(idx);
    }
    if indices.is_empty() {
        return Err("the class set must name at least one class".to_string());
    }
    indices.sort_unstable();
    indices.dedup();
    Ok(ClassSet(indices))
}

#[derive(Subcommand)]
enum Command {
    /// Residue classes mod n of the given order, with cyclotomic numbers.
    Classes {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 4)]
        order: u64,
    },
    /// The decomposition n = u^2 + 4v^2 with u = 1 mod 4.
    Decompose {
        #[arg(long)]
        n: u64,
    },
    /// Construct the cyclic code defined by a sequence over GF(p^m).
    Code {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        seq: SeqArg,
        #[arg(long)]
        rho: Option<u64>,
    },
    /// Minimum-weight report for a code stored as JSON.
    Minweight {
        #[arg(long = "code-file")]
        code_file: PathBuf,
        #[arg(long, value_enum, default_value_t = TierArg::Fast)]
        tier: TierArg,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Weight bounds for the quartic-class trace codes of length n over GF(q).
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        /// Bound the variant whose check polynomial carries x - 1.
        #[arg(long)]
        affine: bool,
    },
    /// Classify and check every eligible period up to a limit.
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long = "n-max")]
        n_max: u64,
    },
    /// Reproduce the example catalog, or a single row of it.
    Repro {
        #[arg(long)]
        example: Option<String>,
        #[arg(long, value_enum, default_value_t = TierArg::Fast)]
        tier: TierArg,
    },
    /// p-rank of the cyclic matrix supported on a union of classes.
    Prank {
        #[arg(long)]
        n: u64,
        #[arg(long, value_parser = parse_class_set)]
        set: ClassSet,
        #[arg(long)]
        p: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classes { .. } => "classes",
            Command::Decompose { .. } => "decompose",
            Command::Code { .. } => "code",
            Command::Minweight { .. } => "minweight",
            Command::Bounds { .. } => "bounds",
            Command::Verify { .. } => "verify",
            Command::Repro { .. } => "repro",
            Command::Prank { .. } => "prank",
        }
    }
}

fn run_classes(n: u64, order: u64) -> Result<Value> {
    let ctx = ClassCtx::new(n, order)?;
    let classes: Vec<Vec<u64>> = (0..order as usize)
        .map(|i| {
            let mut class = ctx.class(i).to_vec();
            class.sort_unstable();
            class
        })
        .collect();
    let numbers: Vec<Vec<u64>> = (0..order as usize)
        .map(|i| {
            (0..order as usize)
                .map(|j| ctx.cyclotomic_number(i, j))
                .collect()
        })
        .collect();
    Ok(json!({
        "n": n,
        "order": order,
        "generator": ctx.generator(),
        "classes": classes,
        "cyclotomic_numbers": numbers,
    }))
}

fn run_decompose(n: u64) -> Result<Value> {
    let (u, v) = quartic_decomposition(n)?;
    Ok(json!({ "n": n, "u": u, "v": v }))
}

fn run_code(p: u64, m: u32, n: u64, seq: SeqArg, rho: Option<u64>) -> Result<Value> {
    let field = Field::galois(p, m)?;
    let spec = SequenceSpec::new(seq.kind(), n, &field, rho)?;
    let code = code_from_sequence(&spec)?;
    // Structure tags need the class polynomials over GF(q); leave the
    // field null when q is outside the zero quartic class.
    let structure = match classify_structure(&code) {
        Ok(tag) => json!({
            "kind": tag.kind.name(),
            "factors": tag.factors,
            "classes": tag.classes,
            "has_x_minus_1": tag.has_x_minus_1,
        }),
        Err(_) => Value::Null,
    };
    let mut payload = code.to_json();
    let extra = payload.as_object_mut().expect("code JSON is an object");
    extra.insert("seq".into(), json!(seq.kind().name()));
    extra.insert("rho".into(), json!(rho));
    extra.insert("linear_span".into(), json!(n as usize - code.dimension()));
    extra.insert("structure".into(), structure);
    Ok(payload)
}

/// Accept either a bare code document or a full `code` envelope, so the
/// output of `cyclocode code` can feed `minweight` directly.
fn read_code_file(path: &PathBuf) -> Result<CyclicCode> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let parsed: Value = serde_json::from_str(&raw)
        .map_err(|e| Error::Parse(format!("{} is not JSON: {e}", path.display())))?;
    let body = parsed.get("payload").unwrap_or(&parsed);
    CyclicCode::from_json(body)
}

fn run_minweight(path: &PathBuf, tier: Tier, seed: u64) -> Result<Value> {
    let code = read_code_file(path)?;
    let report = min_weight(&code, tier, seed)?;
    let mut payload = report.to_json();
    let extra = payload.as_object_mut().expect("report JSON is an object");
    extra.insert(
        "code".into(),
        json!({
            "n": code.n(),
            "q": code.field().cardinality() as u64,
            "k": code.dimension(),
        }),
    );
    Ok(payload)
}

fn run_bounds(n: u64, q: u64, affine: bool) -> Result<Value> {
    let field = Field::of_cardinality(q)?;
    let report = o4_bounds(n, &field, affine)?;
    Ok(report.to_json())
}

fn run_verify(p: u64, n_max: u64) -> Result<(Value, bool)> {
    let rows = theorem_sweep(p, n_max)?;
    let mut exact = 0usize;
    let mut swap = 0usize;
    let mut mismatch = 0usize;
    for row in &rows {
        match row.verdict {
            Verdict::ExactMatch => exact += 1,
            Verdict::SwapMatch => swap += 1,
            _ => mismatch += 1,
        }
    }
    let payload = json!({
        "p": p,
        "n_max": n_max,
        "rows": rows.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "summary": { "total": rows.len(), "exact": exact, "swap": swap, "mismatch": mismatch },
        "csv": sweep_csv(&rows),
    });
    Ok((payload, mismatch == 0))
}

fn run_repro(example: Option<&str>, tier: Tier) -> Result<(Value, bool)> {
    let outcomes = match example {
        Some(id) => reproduce_selected(&[id], tier)?,
        None => reproduce_examples(tier),
    };
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let failed = outcomes.len() - passed;
    let payload = json!({
        "tier": match tier { Tier::Fast => "fast", Tier::Extended => "extended" },
        "rows": outcomes.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
        "summary": { "total": outcomes.len(), "passed": passed, "failed": failed },
        "csv": outcomes_csv(&outcomes),
    });
    Ok((payload, failed == 0))
}

fn run_prank(n: u64, set: &ClassSet, p: u64) -> Result<Value> {
    let ctx = ClassCtx::new(n, 4)?;
    let mut support: Vec<u64> = Vec::new();
    for &i in &set.0 {
        support.extend_from_slice(ctx.class(i));
    }
    support.sort_unstable();
    let rank = p_rank(&support, n, p)?;
    Ok(json!({
        "n": n,
        "p": p,
        "set": set.0,
        "support_size": support.len(),
        "p_rank": rank,
    }))
}

fn run(command: &Command) -> Result<(Value, bool)> {
    match command {
        Command::Classes { n, order } => Ok((run_classes(*n, *order)?, true)),
        Command::Decompose { n } => Ok((run_decompose(*n)?, true)),
        Command::Code { p, m, n, seq, rho } => Ok((run_code(*p, *m, *n, *seq, *rho)?, true)),
        Command::Minweight {
            code_file,
            tier,
            seed,
        } => Ok((run_minweight(code_file, tier.tier(), *seed)?, true)),
        Command::Bounds { n, q, affine } => Ok((run_bounds(*n, *q, *affine)?, true)),
        Command::Verify { p, n_max } => run_verify(*p, *n_max),
        Command::Repro { example, tier } => run_repro(example.as_deref(), tier.tier()),
        Command::Prank { n, set, p } => Ok((run_prank(*n, set, *p)?, true)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // The global pool can only be installed once; a second attempt in
        // the same process is harmless.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads as usize)
            .build_global();
    }
    let started = Instant::now();
    let name = cli.command.name();
    match run(&cli.command) {
        Ok((payload, ok)) => {
            let envelope = json!({
                "command": name,
                "status": if ok { "ok" } else { "fail" },
                "payload": payload,
                "time_ms": started.elapsed().as_millis() as u64,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&envelope).expect("envelope serializes")
            );
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let envelope = json!({
                "command": name,
                "status": "error",
                "error": e.to_string(),
                "time_ms": started.elapsed().as_millis() as u64,
            });
            eprintln!(
                "{}",
                serde_json::to_string_pretty(&envelope).expect("envelope serializes")
            );
            ExitCode::from(1)
        }
    }
}
