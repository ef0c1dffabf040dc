//! Congruences of the weak order given by rewriting rules: the `k`-twist
//! congruence and the `k`-recoil congruence, with lattice-congruence checks.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::hash::Hash;

use rayon::prelude::*;

use crate::perm::Perm;

/// Permutations obtained from `τ` by one rewriting `ac ↔ ca` witnessed by
/// `k` later values strictly between `a` and `c`.
pub fn twist_rewrite_neighbors(k: usize, tau: &Perm) -> Vec<Perm> {
    let w = tau.as_slice();
    let mut out = Vec::new();
    for i in 0..w.len().saturating_sub(1) {
        let (a, c) = (w[i].min(w[i + 1]), w[i].max(w[i + 1]));
        let witnesses = w[i + 2..].iter().filter(|&&b| a < b && b < c).count();
        if witnesses >= k {
            let mut v = w.to_vec();
            v.swap(i, i + 1);
            out.push(Perm::new(v).expect("swap of a permutation"));
        }
    }
    out
}

/// Permutations obtained from `τ` by swapping adjacent values `i, j` with
/// `|i - j| > k`.
pub fn recoil_neighbors(k: usize, tau: &Perm) -> Vec<Perm> {
    let w = tau.as_slice();
    let mut out = Vec::new();
    for i in 0..w.len().saturating_sub(1) {
        if (w[i] as isize - w[i + 1] as isize).unsigned_abs() > k {
            let mut v = w.to_vec();
            v.swap(i, i + 1);
            out.push(Perm::new(v).expect("swap of a permutation"));
        }
    }
    out
}

/// Connected components of `S_n` under a symmetric rewriting relation.
/// Each class is sorted; classes are sorted by their first element.
pub fn classes_by_rewriting<F>(n: usize, neighbors: F) -> Vec<Vec<Perm>>
where
    F: Fn(&Perm) -> Vec<Perm>,
{
    classes_of(Perm::all(n), neighbors)
}

/// Connected components of `elems` under a symmetric rewriting relation.
pub fn classes_of<T, F>(elems: Vec<T>, neighbors: F) -> Vec<Vec<T>>
where
    T: Clone + Eq + Hash + Ord,
    F: Fn(&T) -> Vec<T>,
{
    let mut class_of: HashMap<T, usize> = HashMap::with_capacity(elems.len());
    let mut classes: Vec<Vec<T>> = Vec::new();
    for start in elems {
        if class_of.contains_key(&start) {
            continue;
        }
        let id = classes.len();
        let mut members = vec![start.clone()];
        class_of.insert(start.clone(), id);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in neighbors(&x) {
                if !class_of.contains_key(&y) {
                    class_of.insert(y.clone(), id);
                    members.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        members.sort();
        classes.push(members);
    }
    classes.sort();
    classes
}

/// Classes of the `k`-twist congruence on `S_n`.
pub fn congruence_classes(k: usize, n: usize) -> Vec<Vec<Perm>> {
    classes_by_rewriting(n, |t| twist_rewrite_neighbors(k, t))
}

/// Classes of the `k`-recoil congruence on `S_n`.
pub fn recoil_classes(k: usize, n: usize) -> Vec<Vec<Perm>> {
    classes_by_rewriting(n, |t| recoil_neighbors(k, t))
}

/// Groups permutations by the value of `key`, in the order of the keys.
pub fn fibers_of<K, F>(perms: Vec<Perm>, key: F) -> Vec<Vec<Perm>>
where
    K: Ord + Send,
    F: Fn(&Perm) -> K + Sync,
{
    let keyed: Vec<(K, Perm)> = perms.into_par_iter().map(|p| (key(&p), p)).collect();
    let mut map: BTreeMap<K, Vec<Perm>> = BTreeMap::new();
    for (k, p) in keyed {
        map.entry(k).or_default().push(p);
    }
    let mut out: Vec<Vec<Perm>> = map
        .into_values()
        .map(|mut v| {
            v.sort();
            v
        })
        .collect();
    out.sort();
    out
}

/// The weak-order minimum and maximum of a set of permutations, if they exist.
pub fn class_extrema(class: &[Perm]) -> Option<(Perm, Perm)> {
    let min = class
        .iter()
        .find(|a| class.iter().all(|b| a.weak_leq(b).unwrap_or(false)))?;
    let max = class
        .iter()
        .find(|a| class.iter().all(|b| b.weak_leq(a).unwrap_or(false)))?;
    Some((min.clone(), max.clone()))
}

/// Outcome of checking the lattice-congruence axioms on a partition of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub is_partition: bool,
    pub intervals: bool,
    pub down_monotone: bool,
    pub up_monotone: bool,
}

impl CongruenceReport {
    pub fn holds(&self) -> bool {
        self.is_partition && self.intervals && self.down_monotone && self.up_monotone
    }
}

/// Checks that the classes are weak-order intervals and that the projections
/// to class minima and maxima are order-preserving on every cover.
pub fn check_lattice_congruence(classes: &[Vec<Perm>], n: usize) -> CongruenceReport {
    let all = Perm::all(n);
    let mut class_of: HashMap<&Perm, usize> = HashMap::new();
    let mut is_partition = true;
    for (i, c) in classes.iter().enumerate() {
        for p in c {
            if p.len() != n || class_of.insert(p, i).is_some() {
                is_partition = false;
            }
        }
    }
    if class_of.len() != all.len() {
        is_partition = false;
    }
    if !is_partition {
        return CongruenceReport {
            is_partition,
            intervals: false,
            down_monotone: false,
            up_monotone: false,
        };
    }
    let extrema: Vec<Option<(Perm, Perm)>> = classes.par_iter().map(|c| class_extrema(c)).collect();
    let intervals = extrema.par_iter().zip(classes.par_iter()).all(|(e, c)| match e {
        None => false,
        Some((lo, hi)) => {
            let size = all
                .iter()
                .filter(|p| lo.weak_leq(p).unwrap() && p.weak_leq(hi).unwrap())
                .count();
            size == c.len()
        }
    });
    if !intervals {
        return CongruenceReport {
            is_partition,
            intervals,
            down_monotone: false,
            up_monotone: false,
        };
    }
    let ext: Vec<&(Perm, Perm)> = extrema.iter().map(|e| e.as_ref().unwrap()).collect();
    let mut down_monotone = true;
    let mut up_monotone = true;
    for p in &all {
        let a = &ext[class_of[p]];
        for q in p.up_covers() {
            let b = &ext[class_of[&q]];
            down_monotone &= a.0.weak_leq(&b.0).unwrap();
            up_monotone &= a.1.weak_leq(&b.1).unwrap();
        }
    }
    CongruenceReport {
        is_partition,
        intervals,
        down_monotone,
        up_monotone,
    }
}

/// Whether the partition is a lattice congruence of the weak order on `S_n`.
pub fn verify_lattice_congruence(classes: &[Vec<Perm>], n: usize) -> bool {
    check_lattice_congruence(classes, n).holds()
}
