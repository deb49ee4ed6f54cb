//! The `flagalg` command line.
//!
//! Reports go to stdout (or `--out`) as JSON; human summaries go to stderr.
//! Exit codes: 0 when everything passes, 1 on a theorem violation or a
//! failed reconstruction, 2 on input and capability errors.

mod check;

pub use check::{check_poset, poset_json, run_battery, Outcome, PosetReport, Status, TheoremEntry, TheoremReport, THEOREMS};

use crate::algebra::{Algebra, AlgebraContext, RawTable, StructureConstants};
use crate::derivation::{check_derivation, leibniz_system, solve_leibniz, structural_violations};
use crate::error::{Error, Result};
use crate::lattice::{primitive_idempotents, AlgebraSubmodule, CommutatorChain, QuotientAlgebra};
use crate::poset::{enumerate_posets, find_isomorphism, parse_poset, Poset};
use crate::reconstruct::{reconstruct_poset, scramble, AbstractAlgebra};
use crate::ring::{is_prime, Field, Integers, IntegersMod, PrimeField, Rationals, Ring, RingSpec};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::path::{Path, PathBuf};

/// Largest poset size accepted by `check --all-up-to`.
pub const CHECK_MAX_SIZE: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "flagalg", version, about = "Exact computations in partial flag incidence algebras of finite posets")]
struct Cli {
    /// Seed for every randomized step (idempotent splitting, scrambling).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the theorem battery on one poset file or on all posets up to a size.
    Check {
        #[arg(required_unless_present = "all_up_to", conflicts_with = "all_up_to")]
        poset: Option<PathBuf>,
        #[arg(long)]
        all_up_to: Option<usize>,
        #[arg(long, default_value = "Q")]
        ring: RingSpec,
        /// Include per-theorem wall times (makes the report nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Recover a poset from a structure-constant table.
    Reconstruct {
        table: PathBuf,
        /// Must agree with the ring named in the table, if given.
        #[arg(long)]
        ring: Option<RingSpec>,
    },
    /// Solve the Leibniz system of I^n(P, R).
    Derivations {
        poset: PathBuf,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value = "Q")]
        ring: RingSpec,
    },
    /// Multiply two elements given as JSON term lists.
    Multiply {
        poset: PathBuf,
        left: String,
        right: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value = "Q")]
        ring: RingSpec,
    },
    /// List all posets of a given size up to isomorphism.
    EnumeratePosets { size: usize },
    /// Export the structure constants of I^n(P, R), optionally in a random basis.
    Table {
        poset: PathBuf,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value = "Q")]
        ring: RingSpec,
        /// Rewrite the table in a basis drawn from `--seed`.
        #[arg(long)]
        scramble: bool,
    },
}

/// Ring-specific behaviour of the commands; the field-only steps default
/// to refusing.
pub trait CliRing: Ring {
    fn quotient_idempotents(_ctx: &AlgebraContext<Self>, _chain: &CommutatorChain<Self>, _seed: u64) -> Result<Outcome> {
        Ok(Outcome::Skipped(format!("{} is not a field", Self::label())))
    }

    fn reconstruction(ctx: &AlgebraContext<Self>, _seed: u64) -> Result<Outcome> {
        Ok(check::not_a_field(ctx.ring()))
    }

    fn reconstruct_table(table: StructureConstants<Self>, _seed: u64) -> Result<Value> {
        Err(Error::Capability(format!("reconstruction needs a field, not {}", table.ring().spec())))
    }

    fn scramble_table(ctx: &AlgebraContext<Self>, _seed: u64) -> Result<StructureConstants<Self>> {
        Err(Error::Capability(format!("scrambling needs a field, not {}", ctx.ring().spec())))
    }

    fn label() -> &'static str {
        "this ring"
    }
}

impl CliRing for Integers {
    fn label() -> &'static str {
        "Z"
    }
}

impl CliRing for IntegersMod {
    fn label() -> &'static str {
        "Z/m"
    }
}

macro_rules! field_cli_ring {
    ($t:ty) => {
        impl CliRing for $t {
            fn quotient_idempotents(ctx: &AlgebraContext<Self>, chain: &CommutatorChain<Self>, seed: u64) -> Result<Outcome> {
                field_quotient_idempotents(ctx, chain, seed)
            }
            fn reconstruction(ctx: &AlgebraContext<Self>, seed: u64) -> Result<Outcome> {
                field_reconstruction(ctx, seed)
            }
            fn reconstruct_table(table: StructureConstants<Self>, seed: u64) -> Result<Value> {
                field_reconstruct_table(table, seed)
            }
            fn scramble_table(ctx: &AlgebraContext<Self>, seed: u64) -> Result<StructureConstants<Self>> {
                Ok(scramble(ctx, seed)?.0.table().clone())
            }
        }
    };
}

field_cli_ring!(Rationals);
field_cli_ring!(PrimeField);

/// Counts of primitive idempotents in `A / C1` and `C2 / C3`.
fn field_quotient_idempotents<F: Field + CliRing>(ctx: &AlgebraContext<F>, chain: &CommutatorChain<F>, seed: u64) -> Result<Outcome> {
    let elements = QuotientAlgebra::new(ctx, &AlgebraSubmodule::whole(ctx), &chain.c1)?;
    let covers = QuotientAlgebra::new(ctx, &chain.c2, &chain.c3)?;
    let m = primitive_idempotents(&elements, seed)?.len();
    let k = primitive_idempotents(&covers, seed)?.len();
    let p = ctx.poset();
    let payload = json!({
        "element_idempotents": m,
        "elements": p.size(),
        "cover_idempotents": k,
        "covers": p.covers().len(),
    });
    Ok(if m == p.size() && k == p.covers().len() { Outcome::Pass(payload) } else { Outcome::Fail(payload) })
}

/// Unscrambled input recovers the covers exactly; scrambled input recovers
/// an isomorphic poset.
fn field_reconstruction<F: Field + CliRing>(ctx: &AlgebraContext<F>, seed: u64) -> Result<Outcome> {
    let p = ctx.poset();
    let direct = reconstruct_poset(ctx, seed)?;
    if direct.poset.covers() != p.covers() {
        return Ok(Outcome::Fail(json!({
            "input": "canonical",
            "expected_covers": p.covers(),
            "recovered_covers": direct.poset.covers(),
        })));
    }
    let (scrambled, _) = scramble(ctx, seed)?;
    let fail = |detail: Value| {
        Outcome::Fail(json!({ "input": "scrambled", "detail": detail, "table": scrambled.table().to_json() }))
    };
    let recovered = match reconstruct_poset(&scrambled, seed) {
        Ok(r) => r,
        Err(e) => return Ok(fail(json!(e.to_string()))),
    };
    Ok(match find_isomorphism(&recovered.poset, p) {
        Some(phi) => Outcome::Pass(json!({
            "recovered_covers": recovered.poset.covers(),
            "isomorphism": phi,
            "ranks": recovered.to_json()["ranks"].clone(),
        })),
        None => fail(json!({ "recovered_covers": recovered.poset.covers() })),
    })
}

fn field_reconstruct_table<F: Field + CliRing>(table: StructureConstants<F>, seed: u64) -> Result<Value> {
    let alg = AbstractAlgebra::new(table)?;
    let r = reconstruct_poset(&alg, seed)?;
    let mut v = r.to_json();
    v["ring"] = json!(alg.ring().spec().to_string());
    v["dim"] = json!(alg.dim());
    Ok(v)
}

/// Evaluates `$body` with `$r` bound to the ring named by `$spec`. `Zm:p`
/// with `p` prime is the field `F_p`.
macro_rules! with_ring {
    ($spec:expr, |$r:ident| $body:expr) => {
        match $spec {
            RingSpec::Rationals => {
                let $r = Rationals;
                $body
            }
            RingSpec::PrimeField(p) => {
                let $r = PrimeField::new(p);
                $body
            }
            RingSpec::IntegersMod(m) if is_prime(m) => {
                let $r = PrimeField::new(m);
                $body
            }
            RingSpec::Integers => {
                let $r = Integers;
                $body
            }
            RingSpec::IntegersMod(m) => {
                let $r = IntegersMod::new(m);
                $body
            }
        }
    };
}

/// The ring actually used for computation (see `with_ring!`).
fn effective_spec(spec: RingSpec) -> RingSpec {
    match spec {
        RingSpec::IntegersMod(m) if is_prime(m) => RingSpec::PrimeField(m),
        s => s,
    }
}

/// Worker threads for `check`: `FLAGALG_THREADS` if set, else all cores.
fn thread_count() -> Result<usize> {
    match std::env::var("FLAGALG_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::OutOfRange(format!("FLAGALG_THREADS must be a positive integer, got `{v}`"))),
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse { line: 0, message: format!("cannot read {}: {e}", path.display()) })
}

fn read_poset(path: &Path) -> Result<Poset> {
    parse_poset(&read(path)?)
}

fn emit(out: Option<&Path>, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse { line: 0, message: format!("cannot write {}: {e}", path.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    let out = cli.out.as_deref();
    let seed = cli.seed;
    match cli.command {
        Command::Check { poset, all_up_to, ring, timings } => {
            let posets = match (poset, all_up_to) {
                (Some(path), _) => vec![read_poset(&path)?],
                (None, Some(m)) => {
                    if !(1..=CHECK_MAX_SIZE).contains(&m) {
                        return Err(Error::OutOfRange(format!("--all-up-to must be between 1 and {CHECK_MAX_SIZE}, got {m}")));
                    }
                    let mut all = Vec::new();
                    for size in 1..=m {
                        all.extend(enumerate_posets(size)?);
                    }
                    all
                }
                (None, None) => unreachable!("clap requires a poset or --all-up-to"),
            };
            let threads = thread_count()?;
            let report = with_ring!(ring, |r| run_battery(&posets, &r, ring.to_string(), seed, threads))?;
            emit(out, &report.to_json(timings))?;
            eprint!("{}", report.summary());
            Ok(report.exit_code())
        }
        Command::Reconstruct { table, ring } => {
            let mut raw = RawTable::from_json(&read(&table)?)?;
            if let Some(spec) = ring {
                if effective_spec(spec) != effective_spec(raw.ring) {
                    return Err(Error::InvalidTable(format!("table is over {}, but --ring {spec} was given", raw.ring)));
                }
            }
            let label = raw.ring;
            raw.ring = effective_spec(raw.ring);
            let result = with_ring!(raw.ring, |r| StructureConstants::from_raw(r, &raw)
                .and_then(|t| CliRing::reconstruct_table(t, seed)));
            match result {
                Ok(mut v) => {
                    v["ring"] = json!(label.to_string());
                    emit(out, &v)?;
                    eprintln!("recovered {} elements and {} covers", v["elements"], v["covers"].as_array().map_or(0, Vec::len));
                    Ok(0)
                }
                Err(Error::Reconstruction(msg)) => {
                    emit(out, &json!({ "ring": label.to_string(), "status": "fail", "diagnostic": msg }))?;
                    eprintln!("reconstruction failed: {msg}");
                    Ok(1)
                }
                Err(e) => Err(e),
            }
        }
        Command::Derivations { poset, n, ring } => {
            let p = read_poset(&poset)?;
            with_ring!(ring, |r| cmd_derivations(p, n, r, ring, out))
        }
        Command::Multiply { poset, left, right, n, ring } => {
            let p = read_poset(&poset)?;
            let parse = |s: &str| {
                serde_json::from_str::<Value>(s).map_err(|e| Error::Parse { line: 0, message: format!("element is not JSON: {e}") })
            };
            let (l, rt) = (parse(&left)?, parse(&right)?);
            let v = with_ring!(ring, |r| {
                let ctx = AlgebraContext::new(p, n, r)?;
                let product = ctx.convolve(&ctx.element_from_json(&l)?, &ctx.element_from_json(&rt)?)?;
                ctx.element_to_json(&product)
            })?;
            emit(out, &json!({ "ring": ring.to_string(), "n": n, "product": v }))?;
            Ok(0)
        }
        Command::EnumeratePosets { size } => {
            let posets = enumerate_posets(size)?;
            let list: Vec<Value> = posets.iter().map(poset_json).collect();
            emit(out, &json!({ "size": size, "count": list.len(), "posets": list }))?;
            eprintln!("{} posets of size {size} up to isomorphism", list.len());
            Ok(0)
        }
        Command::Table { poset, n, ring, scramble } => {
            let p = read_poset(&poset)?;
            let mut v = with_ring!(ring, |r| {
                let ctx = AlgebraContext::new(p, n, r)?;
                if scramble {
                    CliRing::scramble_table(&ctx, seed).map(|t| t.to_json())
                } else {
                    Ok(ctx.structure_constants().to_json())
                }
            })?;
            v["ring"] = json!(ring.to_string());
            emit(out, &v)?;
            Ok(0)
        }
    }
}

fn cmd_derivations<R: CliRing>(p: Poset, n: usize, ring: R, label: RingSpec, out: Option<&Path>) -> Result<i32> {
    let ctx = AlgebraContext::new(p, n, ring)?;
    let system = leibniz_system(&ctx);
    let (unknowns, raw_rows, rows) = (system.unknowns(), system.raw_rows, system.rows.len());
    let basis = solve_leibniz(ctx.ring(), system)?;
    let mut verified = true;
    let mut reported = Vec::with_capacity(basis.len());
    for t in &basis {
        let ok = check_derivation(&ctx, t)?;
        verified &= ok;
        let mut entry = json!({ "matrix": t.to_json(), "leibniz_holds": ok });
        if n == 3 {
            entry["structural_violations"] = json!(structural_violations(&ctx, t)?);
        }
        reported.push(entry);
    }
    let regime = match n {
        2 => "classical",
        3 => "theorem",
        _ => "unverified",
    };
    let violation = (n == 3 && !basis.is_empty()) || !verified;
    emit(
        out,
        &json!({
            "ring": label.to_string(),
            "n": n,
            "poset": poset_json(ctx.poset()),
            "dim": ctx.dim(),
            "unknowns": unknowns,
            "equations_before_pruning": raw_rows,
            "equations": rows,
            "rank": basis.len(),
            "regime": regime,
            "status": if violation { "violation" } else { "ok" },
            "basis": reported,
        }),
    )?;
    eprintln!("derivation kernel rank {} for n = {n} over {label} (dimension {})", basis.len(), ctx.dim());
    if n >= 4 {
        eprintln!("warning: n >= 4 is an unverified regime; the rank is computed, not asserted");
    }
    if !verified {
        eprintln!("INTERNAL ERROR: a kernel vector fails the Leibniz rule under the convolution product");
    }
    if n == 3 && !basis.is_empty() {
        eprintln!("THEOREM VIOLATION: I^3 has a nonzero derivation");
    }
    Ok(if violation { 1 } else { 0 })
}
