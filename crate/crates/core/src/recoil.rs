//! Orientations of the graph `G^k(n)` (edges `{i, j}` with `0 < j - i ≤ k`),
//! the recoil map `θ^k`, the canopy map `η^k` and restriction maps.

use std::fmt;

use crate::error::{Error, Result};
use crate::insertion::insert_permutation;
use crate::perm::{factorial, Perm};
use crate::poset::Dag;
use crate::twist::Twist;

/// A total or partial orientation of `G^k(n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    k: usize,
    n: usize,
    /// Entry `(i - 1) * k + (d - 1)` describes the edge `{i, i + d}`:
    /// `1` for `i → i + d`, `-1` for `i + d → i`, `0` when unset.
    dir: Vec<i8>,
}

impl Orientation {
    /// The orientation with every edge unset.
    pub fn unset(k: usize, n: usize) -> Self {
        Orientation {
            k,
            n,
            dir: vec![0; n * k],
        }
    }

    /// The orientation with every edge pointing to the larger label.
    pub fn increasing(k: usize, n: usize) -> Self {
        let mut o = Orientation::unset(k, n);
        for (i, j) in o.edges() {
            o.set(i, j, true);
        }
        o
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j - i <= self.k && j <= self.n);
        (i - 1) * self.k + (j - i - 1)
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=(i + self.k).min(self.n) {
                out.push((i, j));
            }
        }
        out
    }

    /// Orients the edge `{i, j}` (`i < j`) as `i → j` when `forward`.
    pub fn set(&mut self, i: usize, j: usize, forward: bool) {
        let s = self.slot(i, j);
        self.dir[s] = if forward { 1 } else { -1 };
    }

    pub fn unset_edge(&mut self, i: usize, j: usize) {
        let s = self.slot(i, j);
        self.dir[s] = 0;
    }

    /// `Some(true)` for `i → j`, `Some(false)` for `j → i`, `None` if unset.
    pub fn get(&self, i: usize, j: usize) -> Option<bool> {
        match self.dir[self.slot(i, j)] {
            1 => Some(true),
            -1 => Some(false),
            _ => None,
        }
    }

    pub fn is_total(&self) -> bool {
        self.edges().iter().all(|&(i, j)| self.get(i, j).is_some())
    }

    /// The directed graph of the oriented edges.
    pub fn to_dag(&self) -> Dag {
        let mut g = Dag::new(self.n);
        for (i, j) in self.edges() {
            match self.get(i, j) {
                Some(true) => g.add_arc(i, j),
                Some(false) => g.add_arc(j, i),
                None => {}
            }
        }
        g
    }

    pub fn is_acyclic(&self) -> bool {
        self.to_dag().is_acyclic()
    }

    /// Keeps only the edges of `G^l(n)`.
    pub fn restrict(&self, l: usize) -> Result<Orientation> {
        if l > self.k {
            return Err(Error::InvariantViolation(format!(
                "cannot restrict from {} to {l}",
                self.k
            )));
        }
        let mut o = Orientation::unset(l, self.n);
        for (i, j) in o.edges() {
            if let Some(f) = self.get(i, j) {
                o.set(i, j, f);
            }
        }
        Ok(o)
    }

    /// Orientations obtained by reversing one edge `i → j` (`i < j`) into
    /// `j → i` while staying acyclic.
    pub fn increasing_flips(&self) -> Vec<Orientation> {
        let mut out = Vec::new();
        for (i, j) in self.edges() {
            if self.get(i, j) == Some(true) {
                let mut o = self.clone();
                o.set(i, j, false);
                if o.is_acyclic() {
                    out.push(o);
                }
            }
        }
        out
    }

    /// Sign string of a `G^1(n)` orientation: `+` for `i → i + 1`.
    pub fn signs(&self) -> String {
        (1..self.n)
            .map(|i| match self.get(i, i + 1) {
                Some(true) => '+',
                Some(false) => '-',
                None => '0',
            })
            .collect()
    }

    /// Raw edge states in slot order.
    pub fn raw(&self) -> &[i8] {
        &self.dir
    }

    pub fn from_raw(k: usize, n: usize, dir: Vec<i8>) -> Result<Orientation> {
        if dir.len() != n * k {
            return Err(Error::SizeMismatch(dir.len(), n * k));
        }
        let o = Orientation { k, n, dir };
        for i in 1..=n {
            for d in 1..=k {
                let s = (i - 1) * k + (d - 1);
                if !matches!(o.dir[s], -1..=1) || (i + d > n && o.dir[s] != 0) {
                    return Err(Error::InvariantViolation(format!(
                        "invalid state {} for edge ({i}, {})",
                        o.dir[s],
                        i + d
                    )));
                }
            }
        }
        Ok(o)
    }
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self
            .edges()
            .into_iter()
            .filter_map(|(i, j)| match self.get(i, j) {
                Some(true) => Some(format!("{i}>{j}")),
                Some(false) => Some(format!("{j}>{i}")),
                None => None,
            })
            .collect();
        write!(f, "Orientation(k={}, n={}, [{}])", self.k, self.n, arcs.join(" "))
    }
}

/// The `k`-recoil scheme `θ^k(τ)`: `i → j` when `i` appears before `j`.
pub fn recoil_scheme(k: usize, tau: &Perm) -> Orientation {
    let inv = tau.inverse();
    let mut o = Orientation::unset(k, tau.len());
    for (i, j) in o.edges() {
        o.set(i, j, inv[i - 1] < inv[j - 1]);
    }
    o
}

/// The `k`-canopy scheme `η^k(T)`: `i → j` when `i` precedes `j` in the
/// contact order of the acyclic twist `T`.
pub fn canopy(t: &Twist) -> Result<Orientation> {
    let g = t.contact_graph();
    let closure = g.closure.ok_or(Error::CyclicInput)?;
    let mut o = Orientation::unset(t.k(), t.n());
    for (i, j) in o.edges() {
        if closure.less(i, j) {
            o.set(i, j, true);
        } else if closure.less(j, i) {
            o.set(i, j, false);
        } else {
            return Err(Error::InvariantViolation(format!("pipes {i} and {j} are incomparable")));
        }
    }
    Ok(o)
}

/// All acyclic orientations of `G^k(n)`, in lexicographic order of states.
pub fn enumerate_acyclic_orientations(k: usize, n: usize) -> Vec<Orientation> {
    let mut out = Vec::new();
    let mut cur = Orientation::unset(k, n);
    let edges = cur.edges();
    fn rec(edges: &[(usize, usize)], idx: usize, cur: &mut Orientation, out: &mut Vec<Orientation>) {
        if idx == edges.len() {
            out.push(cur.clone());
            return;
        }
        let (i, j) = edges[idx];
        for forward in [false, true] {
            cur.set(i, j, forward);
            if cur.is_acyclic() {
                rec(edges, idx + 1, cur, out);
            }
            cur.unset_edge(i, j);
        }
    }
    rec(&edges, 0, &mut cur, &mut out);
    out.sort();
    out
}

/// `k! (k+1)^(n-k)` for `n ≥ k`, and `n!` otherwise.
pub fn acyclic_orientation_count(k: usize, n: usize) -> u128 {
    if n <= k {
        factorial(n) as u128
    } else {
        factorial(k) as u128 * ((k + 1) as u128).pow((n - k) as u32)
    }
}

/// Restriction of an acyclic `k`-twist to an `l`-twist, by reinserting a
/// linear extension of its contact graph.
pub fn restrict_twist(t: &Twist, l: usize) -> Result<Twist> {
    if l > t.k() {
        return Err(Error::InvariantViolation(format!(
            "cannot restrict from {} to {l}",
            t.k()
        )));
    }
    let g = t.contact_graph();
    if !g.acyclic {
        return Err(Error::CyclicInput);
    }
    insert_permutation(l, &g.dag.min_linear_extension()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_increasing() {
        for k in 0..4 {
            assert_eq!(recoil_scheme(k, &Perm::identity(5)), Orientation::increasing(k, 5));
        }
    }

    #[test]
    fn counts_match_formula() {
        for k in 0..4 {
            for n in 0..7 {
                assert_eq!(
                    enumerate_acyclic_orientations(k, n).len() as u128,
                    acyclic_orientation_count(k, n),
                    "k={k} n={n}"
                );
            }
        }
        assert_eq!(acyclic_orientation_count(2, 4), 18);
    }

    #[test]
    fn zero_twist_has_empty_canopy() {
        let t = Twist::classical(0, 4, &[]).unwrap();
        assert!(canopy(&t).unwrap().edges().is_empty());
    }

    #[test]
    fn canopy_commutes_small() {
        for k in 0..3 {
            for tau in Perm::all(4) {
                let t = insert_permutation(k, &tau).unwrap();
                assert_eq!(canopy(&t).unwrap(), recoil_scheme(k, &tau));
            }
        }
    }
}
