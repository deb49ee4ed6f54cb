//! The `check` theorem battery and its report.

use super::CliRing;
use crate::algebra::{is_associative, Algebra, AlgebraContext};
use crate::derivation::{check_derivation, leibniz_system, solve_leibniz, structural_violations};
use crate::error::{Error, Result};
use crate::lattice::{explicit_c2, ideal_j, z_chain, CommutatorChain};
use crate::poset::Poset;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use std::time::{Duration, Instant};

/// Theorem ids in report order. Every poset entry lists each exactly once.
pub const THEOREMS: [&str; 7] = [
    "product-convolution",
    "power-associativity",
    "commutator-is-j1",
    "z-chain",
    "quotient-idempotents",
    "reconstruction",
    "derivations",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Unsupported,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Unsupported => "unsupported",
        }
    }
}

/// What a single theorem check concluded.
#[derive(Clone, Debug)]
pub enum Outcome {
    Pass(Value),
    Fail(Value),
    Skipped(String),
}

#[derive(Clone, Debug)]
pub struct TheoremEntry {
    pub id: &'static str,
    pub status: Status,
    /// Witness on pass, counterexample on failure, reason otherwise.
    pub payload: Value,
    pub wall_time: Duration,
}

impl TheoremEntry {
    fn new(id: &'static str, result: Result<Outcome>, wall_time: Duration) -> Self {
        let (status, payload) = match result {
            Ok(Outcome::Pass(v)) => (Status::Pass, v),
            Ok(Outcome::Fail(v)) => (Status::Fail, v),
            Ok(Outcome::Skipped(reason)) => (Status::Skipped, json!(reason)),
            Err(e) if e.is_capability() => (Status::Unsupported, json!(e.to_string())),
            Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
        };
        TheoremEntry { id, status, payload, wall_time }
    }

    fn to_json(&self, timings: bool) -> Value {
        let key = match self.status {
            Status::Pass => "witness",
            Status::Fail => "counterexample",
            Status::Skipped | Status::Unsupported => "reason",
        };
        let mut m = Map::new();
        m.insert("id".into(), json!(self.id));
        m.insert("status".into(), json!(self.status.as_str()));
        m.insert(key.into(), self.payload.clone());
        if timings {
            m.insert("wall_time_ms".into(), json!(self.wall_time.as_secs_f64() * 1e3));
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug)]
pub struct PosetReport {
    pub poset: Poset,
    pub entries: Vec<TheoremEntry>,
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub ring: String,
    pub seed: u64,
    pub posets: Vec<PosetReport>,
}

impl TheoremReport {
    pub fn count(&self, status: Status) -> usize {
        self.posets.iter().flat_map(|p| &p.entries).filter(|e| e.status == status).count()
    }

    /// 1 if any theorem failed, else 2 if any suite was unsupported, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.count(Status::Fail) > 0 {
            1
        } else if self.count(Status::Unsupported) > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self, timings: bool) -> Value {
        let posets: Vec<Value> = self
            .posets
            .iter()
            .enumerate()
            .map(|(i, r)| {
                json!({
                    "index": i,
                    "poset": poset_json(&r.poset),
                    "theorems": r.entries.iter().map(|e| e.to_json(timings)).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "version": env!("CARGO_PKG_VERSION"),
            "ring": self.ring,
            "seed": self.seed,
            "theorem_ids": THEOREMS,
            "posets": posets,
            "summary": {
                "posets": self.posets.len(),
                "pass": self.count(Status::Pass),
                "fail": self.count(Status::Fail),
                "skipped": self.count(Status::Skipped),
                "unsupported": self.count(Status::Unsupported),
            },
        })
    }

    /// One line per failing or unsupported entry, then the totals.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for (i, r) in self.posets.iter().enumerate() {
            for e in r.entries.iter().filter(|e| matches!(e.status, Status::Fail | Status::Unsupported)) {
                s.push_str(&format!("poset {i} ({} elements): {} {}: {}\n", r.poset.size(), e.id, e.status.as_str(), e.payload));
            }
        }
        s.push_str(&format!(
            "checked {} posets over {}: {} pass, {} fail, {} skipped, {} unsupported\n",
            self.posets.len(),
            self.ring,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped),
            self.count(Status::Unsupported),
        ));
        s
    }
}

pub fn poset_json(p: &Poset) -> Value {
    let covers: Vec<[&str; 2]> = p.covers().iter().map(|&(x, y)| [p.name(x), p.name(y)]).collect();
    json!({ "elements": p.names(), "covers": covers })
}

/// Runs the battery on every poset, in parallel across posets, keeping the
/// input order.
pub fn run_battery<R: CliRing>(posets: &[Poset], ring: &R, label: String, seed: u64, threads: usize) -> Result<TheoremReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Unsupported(format!("cannot start worker threads: {e}")))?;
    let reports = pool.install(|| {
        posets.par_iter().map(|p| PosetReport { poset: p.clone(), entries: check_poset(p, ring, seed) }).collect()
    });
    Ok(TheoremReport { ring: label, seed, posets: reports })
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

pub fn check_poset<R: CliRing>(poset: &Poset, ring: &R, seed: u64) -> Vec<TheoremEntry> {
    let mut entries = Vec::with_capacity(THEOREMS.len());
    let (r, t) = timed(|| product_convolution(poset, ring));
    entries.push(TheoremEntry::new(THEOREMS[0], r, t));
    let ctx = match AlgebraContext::new(poset.clone(), 3, ring.clone()) {
        Ok(c) => c,
        Err(e) => {
            for id in &THEOREMS[1..] {
                entries.push(TheoremEntry::new(id, Err(e.clone()), Duration::ZERO));
            }
            return entries;
        }
    };
    let (r, t) = timed(|| power_associativity(&ctx));
    entries.push(TheoremEntry::new(THEOREMS[1], r, t));
    let ((chain, r), t) = timed(|| {
        let chain = z_chain(&ctx);
        let r = chain.as_ref().map_err(Clone::clone).and_then(|c| commutator_is_j1(&ctx, c));
        (chain, r)
    });
    entries.push(TheoremEntry::new(THEOREMS[2], r, t));
    let (r, t) = timed(|| chain.as_ref().map_err(Clone::clone).and_then(|c| z_chain_identities(&ctx, c)));
    entries.push(TheoremEntry::new(THEOREMS[3], r, t));
    let (r, t) = timed(|| match &chain {
        Ok(c) => R::quotient_idempotents(&ctx, c, seed),
        Err(_) if !ring.spec().is_field() => Ok(not_a_field(ring)),
        Err(e) => Err(e.clone()),
    });
    entries.push(TheoremEntry::new(THEOREMS[4], r, t));
    let (r, t) = timed(|| R::reconstruction(&ctx, seed));
    entries.push(TheoremEntry::new(THEOREMS[5], r, t));
    let (r, t) = timed(|| derivations(&ctx));
    entries.push(TheoremEntry::new(THEOREMS[6], r, t));
    entries
}

pub(crate) fn not_a_field<R: CliRing>(ring: &R) -> Outcome {
    Outcome::Skipped(format!("{} is not a field", ring.spec()))
}

fn tuple_names<R: CliRing>(ctx: &AlgebraContext<R>, i: usize) -> Vec<&str> {
    ctx.basis()[i].entries().iter().map(|&e| ctx.poset().name(e)).collect()
}

/// The structure-constant table (and for `n = 3` the closed form) agrees
/// with the convolution on every basis pair, for `n = 2` and `n = 3`.
fn product_convolution<R: CliRing>(poset: &Poset, ring: &R) -> Result<Outcome> {
    let mut pairs = 0;
    for n in [2, 3] {
        let ctx = AlgebraContext::new(poset.clone(), n, ring.clone())?;
        let d = ctx.dim();
        for i in 0..d {
            let bi = ctx.basis_element_at(i);
            for j in 0..d {
                let bj = ctx.basis_element_at(j);
                let oracle = ctx.convolve(&bi, &bj)?;
                let table = ctx.multiply(&bi, &bj)?;
                let closed = if n >= 3 {
                    Some(ctx.basis_product(ctx.basis()[i].entries(), ctx.basis()[j].entries())?)
                } else {
                    None
                };
                if table != oracle || closed.as_ref().is_some_and(|c| *c != oracle) {
                    return Ok(Outcome::Fail(json!({
                        "n": n,
                        "left": tuple_names(&ctx, i),
                        "right": tuple_names(&ctx, j),
                        "convolution": ctx.element_to_json(&oracle)?,
                        "table": ctx.element_to_json(&table)?,
                        "closed_form": closed.map(|c| ctx.element_to_json(&c)).transpose()?,
                    })));
                }
                pairs += 1;
            }
        }
    }
    Ok(Outcome::Pass(json!({ "pairs_checked": pairs })))
}

/// `f(ff) != (ff)f` for the witness when `P` has a comparable pair;
/// associativity on all basis triples otherwise.
fn power_associativity<R: CliRing>(ctx: &AlgebraContext<R>) -> Result<Outcome> {
    match ctx.power_assoc_witness()? {
        Some(w) => {
            let payload = json!({
                "x": ctx.poset().name(w.x),
                "y": ctx.poset().name(w.y),
                "f": ctx.element_to_json(&w.f)?,
                "f(ff)": ctx.element_to_json(&w.f_ff)?,
                "(ff)f": ctx.element_to_json(&w.ff_f)?,
            });
            Ok(if w.is_witness() { Outcome::Pass(payload) } else { Outcome::Fail(payload) })
        }
        None if is_associative(ctx) => Ok(Outcome::Pass(json!({ "antichain_associative": true }))),
        None => Ok(Outcome::Fail(json!({ "antichain_associative": false }))),
    }
}

fn ranks_json<R: CliRing>(chain: &CommutatorChain<R>) -> Value {
    let [c1, c2, c3] = chain.ranks();
    json!({ "c1": c1, "c2": c2, "c3": c3 })
}

/// `[A, A] = J_1`.
fn commutator_is_j1<R: CliRing>(ctx: &AlgebraContext<R>, chain: &CommutatorChain<R>) -> Result<Outcome> {
    let j1 = ideal_j(ctx, 1)?;
    let payload = json!({ "rank_commutator": chain.c1.rank(), "rank_j1": j1.rank() });
    Ok(if chain.c1.module() == j1.module() { Outcome::Pass(payload) } else { Outcome::Fail(payload) })
}

/// `C2` is the explicit span and `C3 = J_2`.
fn z_chain_identities<R: CliRing>(ctx: &AlgebraContext<R>, chain: &CommutatorChain<R>) -> Result<Outcome> {
    let explicit = explicit_c2(ctx)?;
    let j2 = ideal_j(ctx, 2)?;
    let c2_ok = chain.c2.module() == explicit.module();
    let c3_ok = chain.c3.module() == j2.module();
    let payload = json!({
        "ranks": ranks_json(chain),
        "rank_explicit_c2": explicit.rank(),
        "rank_j2": j2.rank(),
        "c2_matches": c2_ok,
        "c3_matches": c3_ok,
    });
    Ok(if c2_ok && c3_ok { Outcome::Pass(payload) } else { Outcome::Fail(payload) })
}

/// The Leibniz kernel of `I^3(P, R)` is zero.
fn derivations<R: CliRing>(ctx: &AlgebraContext<R>) -> Result<Outcome> {
    let system = leibniz_system(ctx);
    let counts = json!({
        "unknowns": system.unknowns(),
        "equations_before_pruning": system.raw_rows,
        "equations": system.rows.len(),
    });
    let basis = solve_leibniz(ctx.ring(), system)?;
    if basis.is_empty() {
        return Ok(Outcome::Pass(json!({ "rank": 0, "system": counts })));
    }
    let mut reported = Vec::with_capacity(basis.len());
    for t in &basis {
        reported.push(json!({
            "matrix": t.to_json(),
            "leibniz_holds": check_derivation(ctx, t)?,
            "structural_violations": structural_violations(ctx, t)?,
        }));
    }
    Ok(Outcome::Fail(json!({ "rank": basis.len(), "system": counts, "basis": reported })))
}
