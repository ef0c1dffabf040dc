//! Command-line front end: counts, insertion, lattices, Hopf operations and
//! invariant checks, with JSON on stdout.

use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use twistlab::cambrian::{cambrian_lattice, twin_pairs};
use twistlab::congruence::{congruence_classes, fibers_of, verify_lattice_congruence};
use twistlab::hopf::twist_algebra::{
    coproduct_p, coproduct_q, count_indecomposables, p_to_f, product_p, product_q, psi,
};
use twistlab::hopf::{coproduct_f, coproduct_g, product_f, product_g, FormalSum};
use twistlab::insertion::{fiber, insert_permutation};
use twistlab::io::{from_json_str, poset_to_dot, poset_to_json, to_json_string, ToJson};
use twistlab::lattice::{
    enumerate_cambrian, enumerate_twists, hankel_count, increasing_flip_lattice, Budget, FinitePoset, BUDGET_ENV,
};
use twistlab::recoil::{acyclic_orientation_count, canopy, enumerate_acyclic_orientations, recoil_scheme};
use twistlab::schroder::{
    coproduct_ordpart, enumerate_hypertwists, insert_ordered_partition, product_ordpart, schroder_lattice,
    OrderedPartition,
};
use twistlab::{Perm, Signature, Twist};

#[derive(Parser)]
#[command(name = "twistlab", version, about = "Twists, their lattices and Hopf algebras")]
struct Cli {
    /// Worker threads for parallel enumerations (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Maximum number of nodes an enumeration may visit.
    #[arg(long, global = true, env = BUDGET_ENV)]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the number of objects of a family.
    Count {
        kind: CountKind,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        /// Signature for `cambrian` (defaults to the alternating one starting with `+`).
        #[arg(long, allow_hyphen_values = true)]
        signature: Option<String>,
        /// For `twins`: use the alternating signature instead of `-^n`.
        #[arg(long)]
        alternating: bool,
        /// For `twists`: evaluate the Hankel determinant instead of enumerating.
        #[arg(long)]
        formula: bool,
    },
    /// Insert a permutation (`31542`) or an ordered partition (`3|15|24`).
    Insert {
        #[arg(short)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        signature: Option<String>,
        /// Also print the fiber of the result.
        #[arg(long)]
        fiber: bool,
        input: String,
    },
    /// Export a lattice as JSON or DOT.
    Lattice {
        kind: LatticeKind,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        signature: Option<String>,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Product or coproduct of basis elements.
    Hopf {
        op: HopfOp,
        #[arg(long, value_enum, default_value = "f")]
        basis: Basis,
        /// Order of the twists for the `p` and `q` bases.
        #[arg(short, default_value_t = 1)]
        k: usize,
        /// Operands: permutations (for `p`/`q`, their images under insertion)
        /// or ordered partitions for `o`.
        #[arg(required = true)]
        operands: Vec<String>,
        /// Print the human-readable form instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Run an invariant suite and report pass or fail.
    Check {
        suite: Suite,
        #[arg(short, default_value_t = 2)]
        k: usize,
        #[arg(short, default_value_t = 4)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    Twists,
    Acyclic,
    Orientations,
    Indecomposable,
    Twins,
    Cambrian,
    Hypertwists,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeKind {
    Twists,
    Cambrian,
    Orientations,
    Schroder,
}

#[derive(Clone, Copy, ValueEnum)]
enum HopfOp {
    Product,
    Coproduct,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    F,
    G,
    P,
    Q,
    O,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    /// Fibers of insertion equal the congruence classes, which form a lattice congruence.
    Fibers,
    /// Recoil scheme equals canopy after insertion.
    Triangle,
    /// JSON round trip of every acyclic twist.
    Roundtrip,
    /// The increasing flip order is a lattice.
    Lattice,
    /// `P`-products agree with the `F`-level shuffle.
    Hopf,
}

fn signature(s: &Option<String>, n: usize) -> Result<Signature> {
    match s {
        None => Ok(Signature::all_minus(n)),
        Some(s) => {
            let sig: Signature = s.parse()?;
            if sig.len() != n {
                bail!("signature {s} has length {}, expected {n}", sig.len());
            }
            Ok(sig)
        }
    }
}

fn count(
    kind: CountKind,
    k: usize,
    n: usize,
    sig: &Option<String>,
    alternating: bool,
    formula: bool,
    budget: Budget,
) -> Result<String> {
    Ok(match kind {
        CountKind::Twists if formula => hankel_count(k, n).to_string(),
        CountKind::Twists => enumerate_twists(k, n, false, budget)?.len().to_string(),
        CountKind::Acyclic => enumerate_twists(k, n, true, budget)?.len().to_string(),
        CountKind::Orientations => acyclic_orientation_count(k, n).to_string(),
        CountKind::Indecomposable => count_indecomposables(k, n, budget)?.to_string(),
        CountKind::Twins => twin_pairs(k, n, alternating, budget)?.to_string(),
        CountKind::Cambrian => {
            let sig = match sig {
                Some(_) => signature(sig, n)?,
                None => Signature::alternating(n, twistlab::Sign::Plus),
            };
            enumerate_cambrian(k, &sig, true, budget)?.len().to_string()
        }
        CountKind::Hypertwists => enumerate_hypertwists(k, n, budget)?.len().to_string(),
    })
}

fn insert(k: usize, sig: &Option<String>, with_fiber: bool, input: &str) -> Result<Value> {
    if input.contains('|') {
        let lambda: OrderedPartition = input.parse()?;
        let h = insert_ordered_partition(k, &lambda)?;
        if !with_fiber {
            return Ok(h.to_json());
        }
        let fib: Vec<Value> = h.fiber()?.iter().map(|l| json!(l.to_string())).collect();
        return Ok(json!({"hypertwist": h.to_json(), "fiber": fib}));
    }
    let tau: Perm = input.parse()?;
    let sig = signature(sig, tau.len())?;
    let t = if sig.is_classical() {
        insert_permutation(k, &tau)?
    } else {
        psi(k, &sig, &tau)?
    };
    if !with_fiber {
        return Ok(t.to_json());
    }
    let fib: Vec<Value> = fiber(&t)?.iter().map(|p| json!(p.to_string())).collect();
    Ok(json!({"twist": t.to_json(), "fiber": fib}))
}

fn render<T>(poset: &FinitePoset<T>, dot: bool, name: &str) -> String
where
    T: Clone + Eq + std::hash::Hash + Ord + ToJson,
{
    if dot {
        poset_to_dot(poset, name)
    } else {
        serde_json::to_string(&poset_to_json(poset)).expect("lattice JSON")
    }
}

fn lattice(kind: LatticeKind, k: usize, n: usize, sig: &Option<String>, dot: bool, budget: Budget) -> Result<String> {
    Ok(match kind {
        LatticeKind::Twists => render(&increasing_flip_lattice(k, n, budget)?, dot, "twists"),
        LatticeKind::Cambrian => render(&cambrian_lattice(k, &signature(sig, n)?, budget)?, dot, "cambrian"),
        LatticeKind::Schroder => render(&schroder_lattice(k, n, budget)?, dot, "schroder"),
        LatticeKind::Orientations => {
            let mut elems = enumerate_acyclic_orientations(k, n);
            elems.sort();
            let mut rel = Vec::new();
            for (i, o) in elems.iter().enumerate() {
                for up in o.increasing_flips() {
                    if let Ok(j) = elems.binary_search(&up) {
                        rel.push((i, j));
                    }
                }
            }
            render(&FinitePoset::new(elems, &rel)?, dot, "orientations")
        }
    })
}

fn emit<K: Ord + Clone + ToJson + std::fmt::Display>(x: &FormalSum<K>, text: bool) -> String {
    if text {
        x.to_string()
    } else {
        to_json_string(x)
    }
}

fn emit_tensor<K: Ord + Clone + ToJson + std::fmt::Display>(x: &FormalSum<(K, K)>, text: bool) -> String {
    if !text {
        return to_json_string(x);
    }
    let labels: FormalSum<String> = x.iter().map(|((a, b), c)| (format!("{a} ⊗ {b}"), c)).collect();
    labels.to_string()
}

fn twist_emit(x: &FormalSum<Twist>, text: bool) -> String {
    if !text {
        return to_json_string(x);
    }
    let labels: FormalSum<String> = x.iter().map(|(t, c)| (t.label(), c)).collect();
    labels.to_string()
}

fn twist_tensor_emit(x: &FormalSum<(Twist, Twist)>, text: bool) -> String {
    if !text {
        return to_json_string(x);
    }
    let labels: FormalSum<String> = x
        .iter()
        .map(|((a, b), c)| (format!("{} ⊗ {}", a.label(), b.label()), c))
        .collect();
    labels.to_string()
}

fn hopf(op: HopfOp, basis: Basis, k: usize, operands: &[String], text: bool) -> Result<String> {
    if matches!(op, HopfOp::Coproduct) && operands.len() != 1 {
        bail!("coproduct takes exactly one operand");
    }
    if let Basis::O = basis {
        let xs = operands
            .iter()
            .map(|s| s.parse::<OrderedPartition>().map(FormalSum::basis))
            .collect::<twistlab::Result<Vec<_>>>()?;
        return Ok(match op {
            HopfOp::Product => emit(&xs[1..].iter().fold(xs[0].clone(), |a, b| product_ordpart(&a, b)), text),
            HopfOp::Coproduct => emit_tensor(&coproduct_ordpart(&xs[0]), text),
        });
    }
    let perms = operands
        .iter()
        .map(|s| s.parse::<Perm>())
        .collect::<twistlab::Result<Vec<_>>>()?;
    let fs: Vec<FormalSum<Perm>> = perms.iter().cloned().map(FormalSum::basis).collect();
    let ts = || -> Result<Vec<FormalSum<Twist>>> {
        perms
            .iter()
            .map(|p| Ok(FormalSum::basis(insert_permutation(k, p)?)))
            .collect()
    };
    Ok(match (basis, op) {
        (Basis::F, HopfOp::Product) => emit(&fs[1..].iter().fold(fs[0].clone(), |a, b| product_f(&a, b)), text),
        (Basis::G, HopfOp::Product) => emit(&fs[1..].iter().fold(fs[0].clone(), |a, b| product_g(&a, b)), text),
        (Basis::F, HopfOp::Coproduct) => emit_tensor(&coproduct_f(&fs[0]), text),
        (Basis::G, HopfOp::Coproduct) => emit_tensor(&coproduct_g(&fs[0]), text),
        (Basis::P, HopfOp::Product) => {
            let xs = ts()?;
            let mut acc = xs[0].clone();
            for b in &xs[1..] {
                acc = product_p(&acc, b)?;
            }
            twist_emit(&acc, text)
        }
        (Basis::Q, HopfOp::Product) => {
            let xs = ts()?;
            let mut acc = xs[0].clone();
            for b in &xs[1..] {
                acc = product_q(&acc, b)?;
            }
            twist_emit(&acc, text)
        }
        (Basis::P, HopfOp::Coproduct) => twist_tensor_emit(&coproduct_p(&ts()?[0])?, text),
        (Basis::Q, HopfOp::Coproduct) => twist_tensor_emit(&coproduct_q(&ts()?[0])?, text),
        (Basis::O, _) => unreachable!(),
    })
}

/// Outcome of a suite: `None` on success, otherwise a counterexample.
fn run_suite(suite: Suite, k: usize, n: usize, budget: Budget) -> Result<Option<Value>> {
    match suite {
        Suite::Fibers => {
            let classes = congruence_classes(k, n);
            let mut fibers = fibers_of(Perm::all(n), |p| insert_permutation(k, p).expect("insertion"));
            let mut rewritten = classes.clone();
            for c in fibers.iter_mut().chain(rewritten.iter_mut()) {
                c.sort();
            }
            fibers.sort();
            rewritten.sort();
            if let Some(f) = fibers.iter().find(|f| !rewritten.contains(f)) {
                return Ok(Some(
                    json!({"fiber": f.iter().map(|p| p.to_string()).collect::<Vec<_>>()}),
                ));
            }
            if fibers.len() != rewritten.len() || !verify_lattice_congruence(&classes, n) {
                return Ok(Some(json!({"classes": rewritten.len(), "fibers": fibers.len()})));
            }
            Ok(None)
        }
        Suite::Triangle => {
            for tau in Perm::all(n) {
                let t = insert_permutation(k, &tau)?;
                if canopy(&t)? != recoil_scheme(k, &tau) {
                    return Ok(Some(json!({"permutation": tau.to_string(), "twist": t.to_json()})));
                }
            }
            Ok(None)
        }
        Suite::Roundtrip => {
            for t in enumerate_twists(k, n, true, budget)? {
                let s = to_json_string(&t);
                match from_json_str::<Twist>(&s) {
                    Ok(back) if back == t && to_json_string(&back) == s => {}
                    _ => return Ok(Some(t.to_json())),
                }
            }
            Ok(None)
        }
        Suite::Lattice => {
            let l = increasing_flip_lattice(k, n, budget)?;
            Ok((!l.is_lattice()).then(|| json!({"elements": l.len()})))
        }
        Suite::Hopf => {
            let twists = enumerate_twists(k, n.min(3), true, budget)?;
            for a in &twists {
                for b in &twists {
                    let (pa, pb) = (FormalSum::basis(a.clone()), FormalSum::basis(b.clone()));
                    let lhs = p_to_f(&product_p(&pa, &pb)?)?;
                    let rhs = product_f(&p_to_f(&pa)?, &p_to_f(&pb)?);
                    if lhs != rhs {
                        return Ok(Some(json!({"left": a.to_json(), "right": b.to_json()})));
                    }
                }
            }
            Ok(None)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring the worker pool")?;
    }
    let budget = cli.budget.map(Budget).unwrap_or_default();
    let out = match &cli.command {
        Command::Count {
            kind,
            k,
            n,
            signature,
            alternating,
            formula,
        } => count(*kind, *k, *n, signature, *alternating, *formula, budget)?,
        Command::Insert {
            k,
            signature,
            fiber,
            input,
        } => serde_json::to_string(&insert(*k, signature, *fiber, input)?)?,
        Command::Lattice {
            kind,
            k,
            n,
            signature,
            dot,
            json: _,
        } => lattice(*kind, *k, *n, signature, *dot, budget)?,
        Command::Hopf {
            op,
            basis,
            k,
            operands,
            text,
        } => hopf(*op, *basis, *k, operands, *text)?,
        Command::Check { suite, k, n } => {
            let name = suite.to_possible_value().expect("named suite").get_name().to_string();
            return Ok(match run_suite(*suite, *k, *n, budget)? {
                None => {
                    write_line(format!("PASS {name} k={k} n={n}"))?;
                    true
                }
                Some(cx) => {
                    write_line(format!("FAIL {name} k={k} n={n}\n{}", serde_json::to_string(&cx)?))?;
                    false
                }
            });
        }
    };
    write_line(out)?;
    Ok(true)
}

fn write_line(line: impl std::fmt::Display) -> std::io::Result<()> {
    writeln!(std::io::stdout().lock(), "{line}")
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e)
            if e.downcast_ref::<std::io::Error>()
                .is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
