//! The twist Hopf algebra (basis `P`), its dual (basis `Q`), the
//! multiplicative bases `E`, `H` and the recoil subalgebra.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;

use super::{FormalSum, Tensor};
use crate::error::{Error, Result};
use crate::insertion::{cambrian_insert, insert_permutation, LabeledTwist};
use crate::lattice::Budget;
use crate::perm::{standardize, subsets, Perm, Signature, SignedPerm};
use crate::poset::{bits, full_mask};
use crate::recoil::{canopy, Orientation};
use crate::twist::Twist;

/// `ψ(τ)` on the shape of signature `sig`, read by value.
pub fn psi(k: usize, sig: &Signature, tau: &Perm) -> Result<Twist> {
    if sig.len() != tau.len() {
        return Err(Error::SizeMismatch(sig.len(), tau.len()));
    }
    if sig.is_classical() {
        insert_permutation(k, tau)
    } else {
        cambrian_insert(k, &SignedPerm::new(tau.clone(), vec![sig.clone()])?)
    }
}

/// Acyclic twists on the shape of `sig`, as the image of `ψ` over `S_n`.
pub fn acyclic_twists(k: usize, sig: &Signature, budget: Budget) -> Result<Vec<Twist>> {
    let n = sig.len();
    budget.check(crate::perm::factorial(n))?;
    let image: Result<BTreeSet<Twist>> = Perm::all(n).par_iter().map(|tau| psi(k, sig, tau)).collect();
    Ok(image?.into_iter().collect())
}

fn contact_order(t: &Twist) -> Result<crate::poset::Dag> {
    let g = t.contact_graph();
    if !g.acyclic {
        return Err(Error::CyclicInput);
    }
    Ok(g.dag)
}

/// Weak order minimum of the fiber of an acyclic twist.
pub fn fiber_min(t: &Twist) -> Result<Perm> {
    contact_order(t)?.min_linear_extension()
}

/// Weak order maximum of the fiber of an acyclic twist.
pub fn fiber_max(t: &Twist) -> Result<Perm> {
    contact_order(t)?.max_linear_extension()
}

/// `P_T = Σ_{ψ(τ) = T} F_τ`.
pub fn p_expand(t: &Twist) -> Result<FormalSum<Perm>> {
    Ok(FormalSum::from_keys(contact_order(t)?.linear_extensions()?))
}

/// Expands a combination of `P` basis elements into the `F` basis.
pub fn p_to_f(a: &FormalSum<Twist>) -> Result<FormalSum<Perm>> {
    a.try_map_linear(p_expand)
}

fn same_family(a: &Twist, b: &Twist) -> Result<()> {
    if a.k() == b.k() {
        Ok(())
    } else {
        Err(Error::MixedBasis)
    }
}

/// `T \ T'`: the twist whose fiber contains `μ μ̄'`.
pub fn under(a: &Twist, b: &Twist) -> Result<Twist> {
    same_family(a, b)?;
    let w = fiber_min(a)?.shifted_concat(&fiber_min(b)?);
    psi(a.k(), &a.signature().concat(b.signature()), &w)
}

/// `T / T'`: the twist whose fiber contains `ω̄' ω`.
pub fn over(a: &Twist, b: &Twist) -> Result<Twist> {
    same_family(a, b)?;
    let w = fiber_max(a)?.shifted_concat_rev(&fiber_max(b)?);
    psi(a.k(), &a.signature().concat(b.signature()), &w)
}

/// Increasing flip order on acyclic twists of one shape.
pub fn twist_leq(a: &Twist, b: &Twist) -> Result<bool> {
    fiber_min(a)?.weak_leq(&fiber_min(b)?)
}

/// The increasing flip interval `[lo, hi]`, sorted.
pub fn flip_interval(lo: &Twist, hi: &Twist) -> Result<Vec<Twist>> {
    if !twist_leq(lo, hi)? {
        return Ok(Vec::new());
    }
    let top = fiber_min(hi)?;
    let mut seen: HashSet<Twist> = HashSet::from([lo.clone()]);
    let mut queue = VecDeque::from([lo.clone()]);
    while let Some(t) = queue.pop_front() {
        for s in t.increasing_flips() {
            if !s.is_acyclic() || seen.contains(&s) {
                continue;
            }
            if fiber_min(&s)?.weak_leq(&top)? {
                seen.insert(s.clone());
                queue.push_back(s);
            }
        }
    }
    let mut out: Vec<Twist> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// `P_T · P_T' = Σ_{T\T' ≤ S ≤ T/T'} P_S`.
pub fn product_p(a: &FormalSum<Twist>, b: &FormalSum<Twist>) -> Result<FormalSum<Twist>> {
    a.bilinear(b, |x, y| {
        Ok(FormalSum::from_keys(flip_interval(&under(x, y)?, &over(x, y)?)?))
    })
}

fn sub_signature(sig: &Signature, mask: u64) -> Signature {
    Signature(bits(mask).map(|v| sig.get(v + 1)).collect())
}

/// `Δ P_S` by cuts of the contact graph: the lower part contributes the
/// classes of its linear extensions, the upper part a single twist.
pub fn coproduct_p(a: &FormalSum<Twist>) -> Result<Tensor<Twist>> {
    a.try_map_linear(|s| {
        let dag = contact_order(s)?;
        let (k, n) = (s.k(), s.n());
        let sig = s.signature();
        let mut out = FormalSum::zero();
        for ideal in dag.order_ideals() {
            let rest = full_mask(n) & !ideal;
            let (lo_sig, hi_sig) = (sub_signature(sig, ideal), sub_signature(sig, rest));
            let upper = psi(k, &hi_sig, &dag.restrict(rest).min_linear_extension()?)?;
            let mut lowers = BTreeSet::new();
            for tau in dag.restrict(ideal).linear_extensions()? {
                lowers.insert(psi(k, &lo_sig, &tau)?);
            }
            for lower in lowers {
                out.add_term((lower, upper.clone()), 1);
            }
        }
        Ok(out)
    })
}

/// `T' ◂ (τ·X)`: inserts `x_{τ_n}, ..., x_{τ_1}` into `T'` relabelled by
/// `[n+n'] ∖ X`.
pub fn insert_into(t: &Twist, tau: &Perm, x: &[u8]) -> Result<Twist> {
    if !t.is_classical() {
        return Err(Error::InvariantViolation(
            "relabelled insertion is classical only".into(),
        ));
    }
    let total = t.n() + tau.len();
    let labels: Vec<u32> = (1..=total as u32).filter(|v| !x.contains(&(*v as u8))).collect();
    let mut lt = LabeledTwist {
        twist: t.clone(),
        labels,
    };
    for &v in tau.as_slice().iter().rev() {
        lt = lt.insert(x[v as usize - 1] as u32)?;
    }
    Ok(lt.twist)
}

/// `Q_T · Q_T' = Σ_X Q_{T' ◂ (τ·X)}` with `X` over the `n`-subsets of
/// `[n+n']` and `τ` any element of the fiber of `T`.
pub fn product_q(a: &FormalSum<Twist>, b: &FormalSum<Twist>) -> Result<FormalSum<Twist>> {
    a.bilinear(b, |x, y| {
        same_family(x, y)?;
        let tau = fiber_min(x)?;
        if x.is_classical() && y.is_classical() {
            let mut out = FormalSum::zero();
            for set in subsets(x.n() + y.n(), x.n()) {
                out.add_term(insert_into(y, &tau, &set)?, 1);
            }
            Ok(out)
        } else {
            product_q_by_convolution(x, y)
        }
    })
}

/// `Q_T · Q_T'` through the convolution of representatives.
pub fn product_q_by_convolution(x: &Twist, y: &Twist) -> Result<FormalSum<Twist>> {
    same_family(x, y)?;
    let a = SignedPerm::new(fiber_min(x)?, vec![x.signature().clone()])?;
    let b = SignedPerm::new(fiber_min(y)?, vec![y.signature().clone()])?;
    let mut out = FormalSum::zero();
    for s in a.convolution(&b)? {
        out.add_term(psi(x.k(), &s.signs[0], &s.perm)?, 1);
    }
    Ok(out)
}

/// `L(S, p)`: the twist of the first `p` pipes of `S`.
pub fn left_part(s: &Twist, p: usize) -> Result<Twist> {
    let w: Vec<u8> = fiber_min(s)?
        .as_slice()
        .iter()
        .copied()
        .filter(|&v| v as usize <= p)
        .collect();
    let sig = Signature(s.signature().0[..p].to_vec());
    psi(s.k(), &sig, &standardize(&w))
}

/// `R(S, p)`: the twist of the last `m − p` pipes of `S`.
pub fn right_part(s: &Twist, p: usize) -> Result<Twist> {
    let w: Vec<u8> = fiber_min(s)?
        .as_slice()
        .iter()
        .copied()
        .filter(|&v| v as usize > p)
        .collect();
    let sig = Signature(s.signature().0[p..].to_vec());
    psi(s.k(), &sig, &standardize(&w))
}

/// `Δ Q_S = Σ_p Q_{L(S,p)} ⊗ Q_{R(S,p)}`.
pub fn coproduct_q(a: &FormalSum<Twist>) -> Result<Tensor<Twist>> {
    a.try_map_linear(|s| {
        let mut out = FormalSum::zero();
        for p in 0..=s.n() {
            out.add_term((left_part(s, p)?, right_part(s, p)?), 1);
        }
        Ok(out)
    })
}

/// `⟨P_T, Q_T'⟩` computed in `FQSym ⊗ FQSym*` through the representative
/// `G_σ` of `Q_T'`.
pub fn pairing(p: &Twist, q: &Twist, sigma: &Perm) -> Result<i64> {
    if psi(q.k(), q.signature(), sigma)? != *q {
        return Err(Error::InvariantViolation(format!("{sigma} is not in the fiber")));
    }
    Ok(p_expand(p)?.coefficient(sigma))
}

/// `E^T = Σ_{T ≤ T'} P_T'`.
pub fn e_expand(t: &Twist, budget: Budget) -> Result<FormalSum<Twist>> {
    let all = acyclic_twists(t.k(), t.signature(), budget)?;
    let mu = fiber_min(t)?;
    let mut out = FormalSum::zero();
    for s in all {
        if mu.weak_leq(&fiber_min(&s)?)? {
            out.add_term(s, 1);
        }
    }
    Ok(out)
}

/// `H^T = Σ_{T' ≤ T} P_T'`.
pub fn h_expand(t: &Twist, budget: Budget) -> Result<FormalSum<Twist>> {
    let all = acyclic_twists(t.k(), t.signature(), budget)?;
    let mu = fiber_min(t)?;
    let mut out = FormalSum::zero();
    for s in all {
        if fiber_min(&s)?.weak_leq(&mu)? {
            out.add_term(s, 1);
        }
    }
    Ok(out)
}

/// `E^T · E^T' = E^{T\T'}`.
pub fn e_product(a: &Twist, b: &Twist) -> Result<Twist> {
    under(a, b)
}

/// `H^T · H^T' = H^{T/T'}`.
pub fn h_product(a: &Twist, b: &Twist) -> Result<Twist> {
    over(a, b)
}

/// Whether `([j], [n] ∖ [j])` is a cut of the contact graph for no `j ∈ [n − 1]`.
pub fn is_e_indecomposable(t: &Twist) -> Result<bool> {
    let dag = contact_order(t)?;
    let n = t.n();
    Ok(!(1..n).any(|j| dag.arcs().iter().all(|&(a, b)| !(a > j && b <= j))))
}

/// Whether `([n] ∖ [j], [j])` is a cut of the contact graph for no `j ∈ [n − 1]`.
pub fn is_h_indecomposable(t: &Twist) -> Result<bool> {
    let dag = contact_order(t)?;
    let n = t.n();
    Ok(!(1..n).any(|j| dag.arcs().iter().all(|&(a, b)| !(a <= j && b > j))))
}

/// Number of `E`-indecomposable acyclic twists of size `n`.
pub fn count_indecomposables(k: usize, n: usize, budget: Budget) -> Result<usize> {
    let all = acyclic_twists(k, &Signature::all_minus(n), budget)?;
    let flags: Result<Vec<bool>> = all.par_iter().map(is_e_indecomposable).collect();
    Ok(flags?.into_iter().filter(|&b| b).count())
}

/// Coefficients of `1 − 1/A(t)` for `A(t) = Σ a_n t^n` with `a_0 = 1`:
/// the indecomposable counts predicted by the totals.
pub fn indecomposables_from_totals(totals: &[i128]) -> Vec<i128> {
    let m = totals.len();
    let mut inv = vec![0i128; m];
    if m == 0 {
        return inv;
    }
    inv[0] = 1;
    for i in 1..m {
        inv[i] = -(1..=i).map(|j| totals[j] * inv[i - j]).sum::<i128>();
    }
    let mut out: Vec<i128> = inv.iter().map(|&c| -c).collect();
    out[0] = 0;
    out
}

/// `X_θ = Σ_{η(T) = θ} P_T` over acyclic classical twists.
pub fn x_rec(theta: &Orientation, budget: Budget) -> Result<FormalSum<Twist>> {
    let (k, n) = (theta.k(), theta.n());
    let mut out = FormalSum::zero();
    for t in acyclic_twists(k, &Signature::all_minus(n), budget)? {
        if canopy(&t)? == *theta {
            out.add_term(t, 1);
        }
    }
    Ok(out)
}
