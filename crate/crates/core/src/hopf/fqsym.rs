//! The Hopf algebra `FQSym` on permutations (basis `F`) and its dual
//! (basis `G`), with the multiplicative bases `E` and `H`.

use std::convert::Infallible;

use super::{FormalSum, Tensor};
use crate::perm::{convolution, shifted_shuffle, standardize, Perm};

fn ok<T>(t: T) -> Result<T, Infallible> {
    Ok(t)
}

fn unwrap<T>(r: Result<T, Infallible>) -> T {
    match r {
        Ok(t) => t,
        Err(e) => match e {},
    }
}

/// `F_τ · F_τ' = Σ_{σ ∈ τ ⧢ τ'} F_σ`, extended bilinearly.
pub fn product_f(a: &FormalSum<Perm>, b: &FormalSum<Perm>) -> FormalSum<Perm> {
    unwrap(a.bilinear(b, |x, y| ok(FormalSum::from_keys(shifted_shuffle(x, y)))))
}

/// `Δ F_σ = Σ_p F_{std(σ_1..σ_p)} ⊗ F_{std(σ_{p+1}..σ_m)}`.
pub fn coproduct_f(a: &FormalSum<Perm>) -> Tensor<Perm> {
    a.map_linear(|s| {
        let w = s.as_slice();
        FormalSum::from_keys((0..=w.len()).map(|p| (standardize(&w[..p]), standardize(&w[p..]))))
    })
}

/// `G_τ · G_τ' = Σ_{σ ∈ τ ⋆ τ'} G_σ`.
pub fn product_g(a: &FormalSum<Perm>, b: &FormalSum<Perm>) -> FormalSum<Perm> {
    unwrap(a.bilinear(b, |x, y| ok(FormalSum::from_keys(convolution(x, y)))))
}

/// `Δ G_σ = Σ_p G_{σ|[p]} ⊗ G_{std(σ|[p+1, m])}`.
pub fn coproduct_g(a: &FormalSum<Perm>) -> Tensor<Perm> {
    a.map_linear(|s| {
        let w = s.as_slice();
        FormalSum::from_keys((0..=w.len()).map(|p| {
            let lo: Vec<u8> = w.iter().copied().filter(|&v| v as usize <= p).collect();
            let hi: Vec<u8> = w.iter().copied().filter(|&v| v as usize > p).collect();
            (standardize(&lo), standardize(&hi))
        }))
    })
}

/// Componentwise product on the tensor square.
pub fn product_tensor<K, F>(a: &Tensor<K>, b: &Tensor<K>, mut mul: F) -> Tensor<K>
where
    K: Ord + Clone,
    F: FnMut(&FormalSum<K>, &FormalSum<K>) -> FormalSum<K>,
{
    unwrap(a.bilinear(b, |(x1, x2), (y1, y2)| {
        let left = mul(&FormalSum::basis(x1.clone()), &FormalSum::basis(y1.clone()));
        let right = mul(&FormalSum::basis(x2.clone()), &FormalSum::basis(y2.clone()));
        ok(unwrap(
            left.bilinear(&right, |l, r| ok(FormalSum::basis((l.clone(), r.clone())))),
        ))
    }))
}

/// `E^τ = Σ_{τ ≤ τ'} F_τ'`.
pub fn e_fqsym(tau: &Perm) -> FormalSum<Perm> {
    FormalSum::from_keys(Perm::all(tau.len()).into_iter().filter(|s| tau.weak_leq(s).unwrap()))
}

/// `H^τ = Σ_{τ' ≤ τ} F_τ'`.
pub fn h_fqsym(tau: &Perm) -> FormalSum<Perm> {
    FormalSum::from_keys(Perm::all(tau.len()).into_iter().filter(|s| s.weak_leq(tau).unwrap()))
}

/// Whether `τ([j]) = [j]` for some `j ∈ [n − 1]`.
pub fn is_e_decomposable(tau: &Perm) -> bool {
    let w = tau.as_slice();
    let mut max = 0;
    (0..w.len().saturating_sub(1)).any(|j| {
        max = max.max(w[j] as usize);
        max == j + 1
    })
}

/// Whether `τ([j]) = [n] ∖ [j]` for some `j ∈ [n − 1]`.
pub fn is_h_decomposable(tau: &Perm) -> bool {
    let n = tau.len();
    let w = tau.as_slice();
    let mut min = usize::MAX;
    (0..n.saturating_sub(1)).any(|j| {
        min = min.min(w[j] as usize);
        min == n - j
    })
}
