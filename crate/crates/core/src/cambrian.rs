//! Cambrian twists: the congruence with witnesses, brick vectors centred
//! between the extreme twists, flip lattices, twist tuples and twin pairs.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::congruence::{classes_by_rewriting, fibers_of};
use crate::error::{Error, Result};
use crate::geometry::{brick_areas, dot, skeleton_direction, PolyCone, VertexCoords, Q};
use crate::hopf::twist_algebra::{fiber_min, psi};
use crate::lattice::{enumerate_cambrian, increasing_flip_poset, Budget, FinitePoset};
use crate::perm::{factorial, Perm, Sign, Signature, SignedPerm};
use crate::poset::Dag;
use crate::recoil::{canopy, recoil_scheme, Orientation};
use crate::shape::Shape;
use crate::twist::Twist;

/// The shape of signature `ε`.
pub fn cambrian_shape(k: usize, sig: &Signature) -> Result<Arc<Shape>> {
    Shape::get(k, sig)
}

/// Where the witnesses of a rewriting `UacV ≡ UcaV` sit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSide {
    /// Positive values of `U`.
    Before,
    /// Negative values of `V`.
    After,
}

/// Witnesses `b_1 < ... < b_{k+p}` of a rewriting at positions `i, i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub a: u8,
    pub c: u8,
    pub side: WitnessSide,
    pub witnesses: Vec<u8>,
    /// Opposite values in the witness range (the `p` of `k + p`).
    pub blockers: usize,
}

/// Witnesses for exchanging the letters at positions `i, i + 1` of `τ`
/// (0-based) under the Cambrian `(k, ε)`-twist congruence, with `ε` read
/// by value. Returns the narrowest witness range found.
pub fn find_witness(k: usize, sig: &Signature, tau: &Perm, i: usize) -> Option<Witness> {
    let w = tau.as_slice();
    if i + 1 >= w.len() {
        return None;
    }
    let (a, c) = (w[i].min(w[i + 1]), w[i].max(w[i + 1]));
    let (u, v) = (&w[..i], &w[i + 2..]);
    let sign = |x: u8| sig.get(x as usize);
    let mut best: Option<Witness> = None;
    for lo in a + 1..c {
        for hi in lo..c {
            let inside = |x: &&u8| lo <= **x && **x <= hi;
            let plus_u: Vec<u8> = u
                .iter()
                .filter(inside)
                .copied()
                .filter(|&x| sign(x) == Sign::Plus)
                .collect();
            let minus_v: Vec<u8> = v
                .iter()
                .filter(inside)
                .copied()
                .filter(|&x| sign(x) == Sign::Minus)
                .collect();
            let candidate = if plus_u.len() >= minus_v.len() + k {
                Some((WitnessSide::Before, plus_u, minus_v.len()))
            } else if minus_v.len() >= plus_u.len() + k {
                Some((WitnessSide::After, minus_v, plus_u.len()))
            } else {
                None
            };
            if let Some((side, mut witnesses, blockers)) = candidate {
                if !best.as_ref().is_some_and(|b| witnesses.len() >= b.witnesses.len()) {
                    witnesses.sort();
                    best = Some(Witness {
                        a,
                        c,
                        side,
                        witnesses,
                        blockers,
                    });
                }
            }
        }
    }
    best
}

/// Permutations obtained from `τ` by one witnessed rewriting.
pub fn cambrian_rewrite_neighbors(k: usize, sig: &Signature, tau: &Perm) -> Vec<Perm> {
    (0..tau.len().saturating_sub(1))
        .filter(|&i| find_witness(k, sig, tau, i).is_some())
        .map(|i| {
            let mut v = tau.as_slice().to_vec();
            v.swap(i, i + 1);
            Perm::new(v).expect("swap of a permutation")
        })
        .collect()
}

/// Classes of the Cambrian `(k, ε)`-twist congruence, by rewriting.
pub fn cambrian_congruence_classes(k: usize, sig: &Signature) -> Vec<Vec<Perm>> {
    classes_by_rewriting(sig.len(), |t| cambrian_rewrite_neighbors(k, sig, t))
}

/// Fibers of the Cambrian insertion on `S^ε`.
pub fn cambrian_fibers(k: usize, sig: &Signature) -> Result<Vec<Vec<Perm>>> {
    let perms = Perm::all(sig.len());
    for t in &perms {
        psi(k, sig, t)?;
    }
    Ok(fibers_of(perms, |t| psi(k, sig, t).expect("checked above")))
}

fn extreme_areas(k: usize, sig: &Signature) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = sig.len();
    let lo = brick_areas(&psi(k, sig, &Perm::identity(n))?);
    let hi = brick_areas(&psi(k, sig, &Perm::longest(n))?);
    Ok((lo, hi))
}

/// Brick vector of a Cambrian twist: brick areas minus the midpoint of the
/// areas of the minimal and maximal twists of its shape.
pub fn cambrian_brick_vector(t: &Twist) -> Result<VertexCoords> {
    let (lo, hi) = extreme_areas(t.k(), t.signature())?;
    Ok(brick_areas(t)
        .into_iter()
        .zip(lo.iter().zip(&hi))
        .map(|(a, (&l, &h))| Q::from_integer(a as i64) - Q::new((l + h) as i64, 2))
        .collect())
}

/// Checks that every increasing flip between acyclic Cambrian twists moves
/// the brick vector in the direction `U`.
pub fn cambrian_skeleton_check(k: usize, sig: &Signature, budget: Budget) -> Result<bool> {
    let u = skeleton_direction(sig.len());
    for t in enumerate_cambrian(k, sig, true, budget)? {
        let x = dot(&u, &cambrian_brick_vector(&t)?);
        for s in t.increasing_flips() {
            if s.is_acyclic() && dot(&u, &cambrian_brick_vector(&s)?) <= x {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The increasing flip lattice on acyclic Cambrian `(k, ε)`-twists.
pub fn cambrian_lattice(k: usize, sig: &Signature, budget: Budget) -> Result<FinitePoset<Twist>> {
    increasing_flip_poset(enumerate_cambrian(k, sig, true, budget)?)
}

/// Whether the flip order agrees with the weak order on fiber minima.
pub fn flip_order_is_quotient(lattice: &FinitePoset<Twist>) -> Result<bool> {
    let mins: Vec<Perm> = lattice.elements().iter().map(fiber_min).collect::<Result<_>>()?;
    for i in 0..mins.len() {
        for j in 0..mins.len() {
            if lattice.leq(i, j) != mins[i].weak_leq(&mins[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks `θ(τ) = η(ψ(τ))` for every `τ ∈ S^ε`.
pub fn canopy_commutes(k: usize, sig: &Signature) -> Result<bool> {
    for tau in Perm::all(sig.len()) {
        if canopy(&psi(k, sig, &tau)?)? != recoil_scheme(k, &tau) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of acyclic Cambrian `(k, ε)`-twists for every `ε ∈ ±^n`.
pub fn cambrian_counts(k: usize, n: usize, budget: Budget) -> Result<Vec<(Signature, usize)>> {
    Signature::all(n)
        .into_par_iter()
        .map(|s| Ok((s.clone(), enumerate_cambrian(k, &s, true, budget)?.len())))
        .collect()
}

/// `(+−)^k +`, of length `2k + 1`.
pub fn short_alternating_signature(k: usize) -> Signature {
    Signature::alternating(2 * k + 1, Sign::Plus)
}

/// Number of acyclic twists for [`short_alternating_signature`]: `(2k+1)! − (2k−1)!`.
pub fn short_alternating_count(k: usize) -> usize {
    factorial(2 * k + 1) - factorial((2 * k).saturating_sub(1))
}

/// A tuple of Cambrian twists on the same number of pipes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistTuple(pub Vec<Twist>);

impl TwistTuple {
    pub fn new(twists: Vec<Twist>) -> Result<TwistTuple> {
        let n = twists.first().map_or(0, Twist::n);
        if let Some(t) = twists.iter().find(|t| t.n() != n) {
            return Err(Error::SizeMismatch(n, t.n()));
        }
        Ok(TwistTuple(twists))
    }

    pub fn n(&self) -> usize {
        self.0.first().map_or(0, Twist::n)
    }

    pub fn signatures(&self) -> Vec<Signature> {
        self.0.iter().map(|t| t.signature().clone()).collect()
    }

    /// Union of the contact graphs.
    pub fn union_contact(&self) -> Result<Dag> {
        let mut dag = Dag::new(self.n());
        for t in &self.0 {
            dag = dag.union(&t.contact_graph().dag)?;
        }
        Ok(dag)
    }

    /// Whether the union of the contact graphs is acyclic.
    pub fn is_valid(&self) -> bool {
        self.union_contact().is_ok_and(|d| d.is_acyclic())
    }

    /// Linear extensions of the union of the contact graphs.
    pub fn fiber(&self) -> Result<Vec<Perm>> {
        self.union_contact()?.linear_extensions()
    }

    /// Common canopy of the members.
    pub fn canopy(&self) -> Result<Orientation> {
        if !self.is_valid() {
            return Err(Error::CyclicInput);
        }
        let first = self.0.first().ok_or(Error::InvariantViolation("empty tuple".into()))?;
        canopy(first)
    }

    /// Braid cone of the transitive closure of the union.
    pub fn braid_cone(&self) -> Result<PolyCone> {
        PolyCone::new(self.union_contact()?)
    }
}

/// `ψ_ℓ(τ)`: inserts `τ` once per signature it carries.
pub fn tuple_insert(k: usize, tau: &SignedPerm) -> Result<TwistTuple> {
    let twists = tau
        .signs
        .iter()
        .map(|s| psi(k, s, &tau.perm))
        .collect::<Result<Vec<_>>>()?;
    TwistTuple::new(twists)
}

/// Fibers of `ψ_ℓ` on the permutations carrying the signatures `sigs`.
pub fn tuple_fibers(k: usize, sigs: &[Signature]) -> Result<Vec<Vec<Perm>>> {
    let n = sigs.first().map_or(0, Signature::len);
    let key = |t: &Perm| -> Result<TwistTuple> { tuple_insert(k, &SignedPerm::new(t.clone(), sigs.to_vec())?) };
    let perms = Perm::all(n);
    for t in &perms {
        key(t)?;
    }
    Ok(fibers_of(perms, |t| key(t).expect("checked above")))
}

/// The signature of a twin pair: `−^n`, or `(−+)^{n/2}` when alternating.
pub fn twin_signature(n: usize, alternating: bool) -> Signature {
    if alternating {
        Signature::alternating(n, Sign::Minus)
    } else {
        Signature::all_minus(n)
    }
}

/// Number of pairs of twin Cambrian `k`-twists on `ε` and `−ε`, as the
/// number of distinct images of `ψ_2` on `S_n`.
pub fn twin_pairs(k: usize, n: usize, alternating: bool, budget: Budget) -> Result<usize> {
    budget.check(factorial(n))?;
    let sig = twin_signature(n, alternating);
    let sigs = vec![sig.clone(), sig.negate()];
    let images: Vec<TwistTuple> = Perm::all(n)
        .into_par_iter()
        .map(|t| tuple_insert(k, &SignedPerm::new(t, sigs.clone())?))
        .collect::<Result<_>>()?;
    Ok(images.into_iter().collect::<HashSet<_>>().len())
}

/// Number of twin pairs by definition: pairs of acyclic twists on `ε` and
/// `−ε` whose contact graphs have an acyclic union.
pub fn twin_pairs_by_definition(k: usize, n: usize, alternating: bool, budget: Budget) -> Result<usize> {
    let sig = twin_signature(n, alternating);
    let left = enumerate_cambrian(k, &sig, true, budget)?;
    let right = enumerate_cambrian(k, &sig.negate(), true, budget)?;
    budget.check(left.len() * right.len())?;
    let right_dags: Vec<Dag> = right.iter().map(|t| t.contact_graph().dag).collect();
    Ok(left
        .par_iter()
        .map(|t| {
            let d = t.contact_graph().dag;
            right_dags
                .iter()
                .filter(|e| d.union(e).is_ok_and(|u| u.is_acyclic()))
                .count()
        })
        .sum())
}
