//! Directed graphs and strict partial orders on `[n]`, stored as bitmasks.

use crate::error::{Error, Result};
use crate::perm::Perm;

/// A directed graph on `1..=n` (`n ≤ 64`). `succ[i]` holds the out-neighbours
/// of vertex `i + 1` as a bitmask over 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dag {
    n: usize,
    succ: Vec<u64>,
}

/// Vertex limit of the bitset representation.
pub const MAX_VERTICES: usize = 64;

impl Dag {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graphs are limited to {MAX_VERTICES} vertices");
        Dag { n, succ: vec![0; n] }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Dag::new(n);
        for (i, j) in arcs {
            g.add_arc(i, j);
        }
        g
    }

    /// The chain `1 < 2 < ... < n`.
    pub fn chain(n: usize) -> Self {
        Dag::from_arcs(n, (1..n).map(|i| (i, i + 1)))
    }

    /// The chain read along `τ`.
    pub fn from_perm(tau: &Perm) -> Self {
        let w = tau.as_slice();
        Dag::from_arcs(w.len(), w.windows(2).map(|p| (p[0] as usize, p[1] as usize)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds the arc `i → j` (1-based).
    pub fn add_arc(&mut self, i: usize, j: usize) {
        self.succ[i - 1] |= 1 << (j - 1);
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.succ[i - 1] >> (j - 1) & 1 == 1
    }

    /// Out-neighbour mask of vertex `i` (1-based), bits 0-based.
    pub fn succ_mask(&self, i: usize) -> u64 {
        self.succ[i - 1]
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in bits(self.succ[i]) {
                out.push((i + 1, j + 1));
            }
        }
        out
    }

    pub fn union(&self, other: &Dag) -> Result<Dag> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(Dag {
            n: self.n,
            succ: self.succ.iter().zip(&other.succ).map(|(a, b)| a | b).collect(),
        })
    }

    /// Reachability closure (not necessarily acyclic).
    fn reach(&self) -> Vec<u64> {
        let mut r = self.succ.clone();
        loop {
            let mut changed = false;
            for i in 0..self.n {
                let mut acc = r[i];
                for j in bits(r[i]) {
                    acc |= r[j];
                }
                if acc != r[i] {
                    r[i] = acc;
                    changed = true;
                }
            }
            if !changed {
                return r;
            }
        }
    }

    pub fn is_acyclic(&self) -> bool {
        let full = full_mask(self.n);
        let mut removed = 0u64;
        loop {
            let mut targets = 0u64;
            for i in bits(full & !removed) {
                targets |= self.succ[i];
            }
            let sources = full & !removed & !targets;
            if sources == 0 {
                return removed == full;
            }
            removed |= sources;
        }
    }

    /// The transitive closure as a strict order.
    pub fn closure(&self) -> Result<Dag> {
        let r = self.reach();
        if (0..self.n).any(|i| r[i] >> i & 1 == 1) {
            return Err(Error::CyclicInput);
        }
        Ok(Dag { n: self.n, succ: r })
    }

    /// Strict comparison `i < j` assuming `self` is transitively closed.
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.has_arc(i, j)
    }

    /// Predecessor masks.
    pub fn pred_masks(&self) -> Vec<u64> {
        let mut pred = vec![0u64; self.n];
        for i in 0..self.n {
            for j in bits(self.succ[i]) {
                pred[j] |= 1 << i;
            }
        }
        pred
    }

    /// All linear extensions in lexicographic order.
    pub fn linear_extensions(&self) -> Result<Vec<Perm>> {
        if !self.is_acyclic() {
            return Err(Error::CyclicInput);
        }
        let pred = self.pred_masks();
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(self.n);
        self.extend(&pred, 0, &mut word, &mut out);
        Ok(out)
    }

    fn extend(&self, pred: &[u64], placed: u64, word: &mut Vec<u8>, out: &mut Vec<Perm>) {
        if word.len() == self.n {
            out.push(Perm::from_vec_unchecked(word.clone()));
            return;
        }
        for v in 0..self.n {
            if placed >> v & 1 == 0 && pred[v] & !placed == 0 {
                word.push(v as u8 + 1);
                self.extend(pred, placed | 1 << v, word, out);
                word.pop();
            }
        }
    }

    /// Number of linear extensions, by dynamic programming over down-sets.
    pub fn count_linear_extensions(&self) -> Result<u128> {
        if !self.is_acyclic() {
            return Err(Error::CyclicInput);
        }
        if self.n > 24 {
            return Err(Error::InvariantViolation("too many vertices to count".into()));
        }
        let pred = self.pred_masks();
        let mut dp = std::collections::HashMap::new();
        dp.insert(0u64, 1u128);
        let mut layer = vec![0u64];
        for _ in 0..self.n {
            let mut next = std::collections::HashMap::new();
            for s in layer {
                let c = dp[&s];
                for v in 0..self.n {
                    if s >> v & 1 == 0 && pred[v] & !s == 0 {
                        *next.entry(s | 1 << v).or_insert(0u128) += c;
                    }
                }
            }
            layer = next.keys().copied().collect();
            dp.extend(next);
        }
        Ok(dp[&full_mask(self.n)])
    }

    /// The minimal linear extension in the weak order (always place the
    /// smallest available vertex).
    pub fn min_linear_extension(&self) -> Result<Perm> {
        self.greedy(false)
    }

    /// The maximal linear extension in the weak order.
    pub fn max_linear_extension(&self) -> Result<Perm> {
        self.greedy(true)
    }

    fn greedy(&self, largest: bool) -> Result<Perm> {
        let pred = self.pred_masks();
        let mut placed = 0u64;
        let mut word = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let avail: Vec<usize> = (0..self.n)
                .filter(|&v| placed >> v & 1 == 0 && pred[v] & !placed == 0)
                .collect();
            let v = if largest { avail.last() } else { avail.first() }
                .copied()
                .ok_or(Error::CyclicInput)?;
            placed |= 1 << v;
            word.push(v as u8 + 1);
        }
        Ok(Perm::from_vec_unchecked(word))
    }

    /// Whether `τ` lists every arc tail before its head.
    pub fn is_linear_extension(&self, tau: &Perm) -> bool {
        if tau.len() != self.n {
            return false;
        }
        let inv = tau.inverse();
        self.arcs().iter().all(|&(i, j)| inv[i - 1] < inv[j - 1])
    }

    /// Down-closed vertex sets (closed under predecessors), as bitmasks.
    pub fn order_ideals(&self) -> Vec<u64> {
        let pred = self.pred_masks();
        let mut out = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![0u64];
        seen.insert(0u64);
        while let Some(s) = stack.pop() {
            out.push(s);
            for v in 0..self.n {
                if s >> v & 1 == 0 && pred[v] & !s == 0 {
                    let t = s | 1 << v;
                    if seen.insert(t) {
                        stack.push(t);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The induced subgraph on `mask`, relabelled increasingly.
    pub fn restrict(&self, mask: u64) -> Dag {
        let keep: Vec<usize> = bits(mask).collect();
        let mut pos = vec![usize::MAX; self.n];
        for (a, &v) in keep.iter().enumerate() {
            pos[v] = a;
        }
        let mut g = Dag::new(keep.len());
        for &v in &keep {
            for w in bits(self.succ[v] & mask) {
                g.add_arc(pos[v] + 1, pos[w] + 1);
            }
        }
        g
    }
}

/// Iterates over the set bits of a mask, lowest first.
pub fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

pub fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}
