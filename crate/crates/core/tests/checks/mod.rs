//! Library-level invariant checks with counterexample reporting, shared by
//! the integration tests and the acceptance harness.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use rayon::prelude::*;

use twistlab::hopf::series::{
    closed_form_transform, integer_point_transform, integer_point_transform_perm, DescentNumerator,
};
use twistlab::hopf::twist_algebra::{acyclic_twists, coproduct_p, p_to_f, product_p};
use twistlab::hopf::twistiform::{mirrored_p, Operator};
use twistlab::hopf::{coproduct_f, product_f, FormalSum, Tensor, TruncatedSeries};
use twistlab::insertion::fiber;
use twistlab::lattice::Budget;
use twistlab::poset::Dag;
use twistlab::{Signature, Twist};

pub type Check = Result<(), String>;

/// Acyclic classical `k`-twists of sizes `0..=max`, indexed by size.
pub fn twists_by_size(k: usize, max: usize) -> Vec<Vec<Twist>> {
    (0..=max)
        .map(|n| acyclic_twists(k, &Signature::all_minus(n), Budget::default()).unwrap())
        .collect()
}

/// Pairs `(x, y)` of non-empty twists with `|x| + |y| ≤ max`.
fn pairs(by_size: &[Vec<Twist>], max: usize) -> Vec<(Twist, Twist)> {
    let mut out = Vec::new();
    for a in 1..max {
        for b in 1..=max - a {
            for x in &by_size[a] {
                for y in &by_size[b] {
                    out.push((x.clone(), y.clone()));
                }
            }
        }
    }
    out
}

fn p(t: &Twist) -> FormalSum<Twist> {
    FormalSum::basis(t.clone())
}

fn mul(a: &FormalSum<Twist>, b: &FormalSum<Twist>) -> FormalSum<Twist> {
    product_p(a, b).expect("product of acyclic twists")
}

fn first_failure<T: Sync>(items: &[T], f: impl Fn(&T) -> Check + Sync + Send) -> Check {
    items.par_iter().map(f).find_any(|r| r.is_err()).unwrap_or(Ok(()))
}

/// `P`-basis product against the shifted shuffle of fibers.
pub fn product_matches_f(k: usize, max: usize) -> Check {
    let by_size = twists_by_size(k, max);
    first_failure(&pairs(&by_size, max), |(x, y)| {
        let lhs = p_to_f(&mul(&p(x), &p(y))).unwrap();
        let rhs = product_f(&p_to_f(&p(x)).unwrap(), &p_to_f(&p(y)).unwrap());
        if lhs == rhs {
            Ok(())
        } else {
            Err(format!("P product of {x:?} and {y:?}"))
        }
    })
}

/// `(xy)z = x(yz)` for total size at most `max`.
pub fn associativity(k: usize, max: usize) -> Check {
    let by_size = twists_by_size(k, max);
    let mut triples = Vec::new();
    for (x, y) in pairs(&by_size, max.saturating_sub(1)) {
        let used = x.n() + y.n();
        for c in 1..=max - used {
            for z in &by_size[c] {
                triples.push((x.clone(), y.clone(), z.clone()));
            }
        }
    }
    first_failure(&triples, |(x, y, z)| {
        if mul(&mul(&p(x), &p(y)), &p(z)) == mul(&p(x), &mul(&p(y), &p(z))) {
            Ok(())
        } else {
            Err(format!("associativity at {x:?}, {y:?}, {z:?}"))
        }
    })
}

type Triple = FormalSum<(Twist, Twist, Twist)>;

fn delta(s: &Twist) -> Tensor<Twist> {
    coproduct_p(&p(s)).expect("coproduct of an acyclic twist")
}

/// `(Δ ⊗ 1)Δ = (1 ⊗ Δ)Δ` and `Δ` against the `F`-level deconcatenation.
pub fn coassociativity(k: usize, max: usize) -> Check {
    let all: Vec<Twist> = twists_by_size(k, max).into_iter().flatten().collect();
    first_failure(&all, |s| {
        let d = delta(s);
        let mut left = Triple::zero();
        let mut right = Triple::zero();
        for ((a, b), c) in d.iter() {
            for ((a1, a2), c1) in delta(a).iter() {
                left.add_term((a1.clone(), a2.clone(), b.clone()), c * c1);
            }
            for ((b1, b2), c2) in delta(b).iter() {
                right.add_term((a.clone(), b1.clone(), b2.clone()), c * c2);
            }
        }
        if left != right {
            return Err(format!("coassociativity at {s:?}"));
        }
        let mut lifted: Tensor<twistlab::Perm> = FormalSum::zero();
        for ((a, b), c) in d.iter() {
            for (fa, ca) in p_to_f(&p(a)).unwrap().iter() {
                for (fb, cb) in p_to_f(&p(b)).unwrap().iter() {
                    lifted.add_term((fa.clone(), fb.clone()), c * ca * cb);
                }
            }
        }
        if lifted != coproduct_f(&p_to_f(&p(s)).unwrap()) {
            return Err(format!("coproduct of {s:?} differs from the F-level one"));
        }
        Ok(())
    })
}

/// `Δ(xy) = Δ(x)Δ(y)` with the componentwise product.
pub fn compatibility(k: usize, max: usize) -> Check {
    let by_size = twists_by_size(k, max);
    first_failure(&pairs(&by_size, max), |(x, y)| {
        let lhs = coproduct_p(&mul(&p(x), &p(y))).unwrap();
        let rhs = twistlab::hopf::fqsym::product_tensor(&delta(x), &delta(y), mul);
        if lhs == rhs {
            Ok(())
        } else {
            Err(format!("compatibility at {x:?}, {y:?}"))
        }
    })
}

/// Integer point transform of a twist equals the sum over its linear
/// extensions, both by enumeration and by the closed form.
pub fn transform_additivity(k: usize, n: usize, degree: usize) -> Check {
    for t in acyclic_twists(k, &Signature::all_minus(n), Budget::default()).unwrap() {
        let dag = t.contact_graph().dag;
        let direct = integer_point_transform(&dag, degree).unwrap();
        let mut by_chains = TruncatedSeries::zero(n, degree);
        let mut by_closed = TruncatedSeries::zero(n, degree);
        for tau in fiber(&t).unwrap() {
            by_chains = by_chains
                .add(&integer_point_transform_perm(&tau, degree).unwrap())
                .unwrap();
            let closed = closed_form_transform(&tau, degree, DescentNumerator::FromDescentBottom);
            by_closed = by_closed.add(&closed).unwrap();
        }
        if direct != by_chains || direct != by_closed {
            return Err(format!("additivity fails for {t:?}"));
        }
    }
    Ok(())
}

/// `Z_T(t_1..t_n) · Z_T'(t_{n+1}..t_{n+n'}) = Σ_{S ∈ P_T P_T'} Z_S`.
pub fn transform_shuffle(k: usize, max: usize, degree: usize) -> Check {
    let by_size = twists_by_size(k, max);
    let z = |t: &Twist| integer_point_transform(&t.contact_graph().dag, degree).unwrap();
    for (x, y) in &pairs(&by_size, max) {
        let m = x.n() + y.n();
        let lhs = z(x).shift(0, m).mul(&z(y).shift(x.n(), m)).unwrap();
        let mut rhs = TruncatedSeries::zero(m, degree);
        for (s, c) in mul(&p(x), &p(y)).iter() {
            for _ in 0..c {
                rhs = rhs.add(&z(s)).unwrap();
            }
        }
        if lhs != rhs {
            return Err(format!("shuffle identity fails for {x:?}, {y:?}"));
        }
    }
    Ok(())
}

/// Chains of every permutation of size `n`: brute force against the closed
/// form under both numerator conventions. Returns `(bottom ok, top ok)`.
pub fn closed_form_conventions(n: usize, degree: usize) -> (bool, bool) {
    let mut ok = (true, true);
    for tau in twistlab::Perm::all(n) {
        let z = integer_point_transform(&Dag::from_perm(&tau), degree).unwrap();
        ok.0 &= z == closed_form_transform(&tau, degree, DescentNumerator::FromDescentBottom);
        ok.1 &= z == closed_form_transform(&tau, degree, DescentNumerator::FromDescentTop);
    }
    ok
}

/// Every mirrored operation maps pairs of `P` elements to `P` combinations.
pub fn mirrored_stability(k: usize, max: usize) -> Check {
    let by_size = twists_by_size(k, max);
    let ops = Operator::all(k);
    first_failure(&pairs(&by_size, max), |(x, y)| {
        for op in &ops {
            if let Err(e) = mirrored_p(op, &p(x), &p(y)) {
                return Err(format!("{op} on {x:?}, {y:?}: {e}"));
            }
        }
        Ok(())
    })
}

/// Number of twists by size, for reporting.
pub fn size_profile(k: usize, max: usize) -> BTreeMap<usize, usize> {
    twists_by_size(k, max)
        .iter()
        .enumerate()
        .map(|(n, v)| (n, v.len()))
        .collect()
}
