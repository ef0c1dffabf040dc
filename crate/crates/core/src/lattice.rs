//! Enumeration of twists by flips, finite posets and lattices, and the
//! Hankel determinant counting all twists.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::insertion::route;
use crate::perm::Signature;
use crate::shape::Shape;
use crate::twist::Twist;

/// Environment variable overriding the default node budget.
pub const BUDGET_ENV: &str = "TWISTLAB_BUDGET";
pub const DEFAULT_BUDGET: usize = 10_000_000;

/// Upper bound on the number of nodes an enumeration may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub usize);

impl Budget {
    /// The budget from `TWISTLAB_BUDGET`, or the default.
    pub fn from_env() -> Budget {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Budget)
            .unwrap_or_default()
    }

    pub fn check(&self, used: usize) -> Result<()> {
        if used > self.0 {
            Err(Error::BudgetExceeded(self.0))
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

/// All `(k, n)`-twists (or only the acyclic ones), sorted.
pub fn enumerate_twists(k: usize, n: usize, acyclic_only: bool, budget: Budget) -> Result<Vec<Twist>> {
    enumerate_shape(Shape::classical(k, n)?, acyclic_only, budget)
}

/// All Cambrian `(k, ε)`-twists (or only the acyclic ones), sorted.
pub fn enumerate_cambrian(k: usize, sig: &Signature, acyclic_only: bool, budget: Budget) -> Result<Vec<Twist>> {
    enumerate_shape(Shape::get(k, sig)?, acyclic_only, budget)
}

fn enumerate_shape(shape: Arc<Shape>, acyclic_only: bool, budget: Budget) -> Result<Vec<Twist>> {
    let n = shape.n();
    let start = route(shape, &(1..=n).rev().collect::<Vec<_>>())?;
    let all = flip_closure(start, budget)?;
    let mut out: Vec<Twist> = if acyclic_only {
        all.into_iter().filter(|t| t.is_acyclic()).collect()
    } else {
        all
    };
    out.sort();
    Ok(out)
}

/// All twists reachable from `start` by flips.
pub fn flip_closure(start: Twist, budget: Budget) -> Result<Vec<Twist>> {
    let mut seen: HashMap<u128, ()> = HashMap::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(start.elbow_mask(), ());
    queue.push_back(start);
    while let Some(t) = queue.pop_front() {
        for f in t.flips() {
            if seen.insert(f.twist.elbow_mask(), ()).is_none() {
                budget.check(seen.len())?;
                queue.push_back(f.twist);
            }
        }
        out.push(t);
    }
    Ok(out)
}

/// The `k × k` Hankel determinant `det(C_{n+2k-i-j})` of Catalan numbers.
pub fn hankel_count(k: usize, n: usize) -> BigInt {
    let cat = |m: usize| -> BigInt {
        let mut c = BigInt::one();
        for i in 0..m {
            c = c * BigInt::from(2 * (2 * i + 1)) / BigInt::from(i + 2);
        }
        c
    };
    let mut a: Vec<Vec<BigInt>> = (1..=k)
        .map(|i| (1..=k).map(|j| cat(n + 2 * k - i - j)).collect())
        .collect();
    bareiss(&mut a)
}

/// Fraction-free determinant.
pub fn bareiss(a: &mut [Vec<BigInt>]) -> BigInt {
    let m = a.len();
    if m == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for p in 0..m - 1 {
        if a[p][p].is_zero() {
            match (p + 1..m).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in p + 1..m {
            for j in p + 1..m {
                let v = (&a[i][j] * &a[p][p] - &a[i][p] * &a[p][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[p][p].clone();
    }
    sign * a[m - 1][m - 1].clone()
}

/// A finite poset given by its elements and a covering-or-generating
/// relation, with precomputed reachability.
#[derive(Clone, Debug)]
pub struct FinitePoset<T> {
    elems: Vec<T>,
    index: HashMap<T, usize>,
    /// `up[a]` is the bitset of all `b ≥ a`.
    up: Vec<Vec<u64>>,
}

impl<T: Clone + Eq + Hash> FinitePoset<T> {
    /// Builds the reflexive-transitive closure of `relations` (`a < b`).
    pub fn new(elems: Vec<T>, relations: &[(usize, usize)]) -> Result<Self> {
        let m = elems.len();
        let words = m.div_ceil(64);
        let mut succ = vec![Vec::new(); m];
        let mut indeg = vec![0usize; m];
        for &(a, b) in relations {
            succ[a].push(b);
            indeg[b] += 1;
        }
        // Reverse topological order.
        let mut order = Vec::with_capacity(m);
        let mut queue: VecDeque<usize> = (0..m).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if order.len() != m {
            return Err(Error::CyclicInput);
        }
        let mut up = vec![vec![0u64; words]; m];
        for &v in order.iter().rev() {
            let mut row = vec![0u64; words];
            row[v / 64] |= 1 << (v % 64);
            for &w in &succ[v] {
                for (x, y) in row.iter_mut().zip(&up[w]) {
                    *x |= *y;
                }
            }
            up[v] = row;
        }
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(FinitePoset { elems, index, up })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elems
    }

    pub fn index_of(&self, e: &T) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a][b / 64] >> (b % 64) & 1 == 1
    }

    /// Cover relations `(a, b)` with `a ⋖ b`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let m = self.len();
        let mut out = Vec::new();
        for a in 0..m {
            let ups: Vec<usize> = (0..m).filter(|&b| b != a && self.leq(a, b)).collect();
            for &b in &ups {
                if !ups.iter().any(|&c| c != b && self.leq(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let ubs: Vec<usize> = (0..self.len()).filter(|&c| self.leq(a, c) && self.leq(b, c)).collect();
        ubs.iter().copied().find(|&c| ubs.iter().all(|&d| self.leq(c, d)))
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lbs: Vec<usize> = (0..self.len()).filter(|&c| self.leq(c, a) && self.leq(c, b)).collect();
        lbs.iter().copied().find(|&c| lbs.iter().all(|&d| self.leq(d, c)))
    }

    /// Whether every pair has a meet and a join.
    pub fn is_lattice(&self) -> bool {
        let m = self.len();
        (0..m).all(|a| (a..m).all(|b| self.join(a, b).is_some() && self.meet(a, b).is_some()))
    }

    pub fn minima(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| b == a || !self.leq(b, a)))
            .collect()
    }

    pub fn maxima(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| b == a || !self.leq(a, b)))
            .collect()
    }
}

/// The increasing flip order on the given twists: `T < T'` when `T'` is
/// reached from `T` by increasing flips staying inside the set.
pub fn increasing_flip_poset(twists: Vec<Twist>) -> Result<FinitePoset<Twist>> {
    let index: HashMap<&Twist, usize> = twists.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut rel = Vec::new();
    for (i, t) in twists.iter().enumerate() {
        for u in t.increasing_flips() {
            if let Some(&j) = index.get(&u) {
                rel.push((i, j));
            }
        }
    }
    FinitePoset::new(twists.clone(), &rel)
}

/// The increasing flip lattice on acyclic `(k, n)`-twists.
pub fn increasing_flip_lattice(k: usize, n: usize, budget: Budget) -> Result<FinitePoset<Twist>> {
    increasing_flip_poset(enumerate_twists(k, n, true, budget)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hankel_values() {
        assert_eq!(hankel_count(2, 3), BigInt::from(14));
        assert_eq!(hankel_count(2, 5), BigInt::from(594));
        assert_eq!(hankel_count(3, 4), BigInt::from(330));
        assert_eq!(hankel_count(0, 7), BigInt::from(1));
        assert_eq!(hankel_count(1, 4), BigInt::from(14));
    }

    #[test]
    fn small_counts() {
        let b = Budget::default();
        assert_eq!(enumerate_twists(1, 4, false, b).unwrap().len(), 14);
        assert_eq!(enumerate_twists(2, 4, false, b).unwrap().len(), 84);
        assert_eq!(enumerate_twists(2, 4, true, b).unwrap().len(), 22);
        assert_eq!(enumerate_twists(0, 3, false, b).unwrap().len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(
            enumerate_twists(2, 5, false, Budget(10)).unwrap_err(),
            Error::BudgetExceeded(10)
        );
    }

    #[test]
    fn tamari_3() {
        let l = increasing_flip_lattice(1, 3, Budget::default()).unwrap();
        assert_eq!(l.len(), 5);
        assert_eq!(l.covers().len(), 5);
        assert!(l.is_lattice());
        assert_eq!(l.minima().len(), 1);
        assert_eq!(l.maxima().len(), 1);
    }

    #[test]
    fn poset_rejects_cycles() {
        assert!(FinitePoset::new(vec![1, 2], &[(0, 1), (1, 0)]).is_err());
    }
}
