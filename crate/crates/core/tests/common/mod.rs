//! Independent brute-force oracles shared by the integration tests and the
//! acceptance harness. None of them use twists, shapes or insertion.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use twistlab::{Perm, Sign, Signature};

/// Union-find classes of `S_n` under the given adjacent-swap rule.
pub fn swap_classes(n: usize, swappable: impl Fn(&[u8], usize) -> bool) -> Vec<Vec<Perm>> {
    let perms = Perm::all(n);
    let index: HashMap<Perm, usize> = perms.iter().cloned().zip(0..).collect();
    let mut parent: Vec<usize> = (0..perms.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (i, tau) in perms.iter().enumerate() {
        let w = tau.as_slice();
        for pos in 0..n.saturating_sub(1) {
            if swappable(w, pos) {
                let mut v = w.to_vec();
                v.swap(pos, pos + 1);
                let j = index[&Perm::new(v).unwrap()];
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<Perm>> = BTreeMap::new();
    for (i, tau) in perms.into_iter().enumerate() {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(tau);
    }
    let mut out: Vec<Vec<Perm>> = classes.into_values().collect();
    out.sort();
    out
}

/// Classes of `UacV ≡ UcaV` with `k` letters `a < b_1 < ... < b_k < c` of
/// `V`, the classical rule.
pub fn classical_classes(k: usize, n: usize) -> Vec<Vec<Perm>> {
    swap_classes(n, |w, pos| {
        let (a, c) = (w[pos].min(w[pos + 1]), w[pos].max(w[pos + 1]));
        w[pos + 2..].iter().filter(|&&b| a < b && b < c).count() >= k
    })
}

/// Classes of the signed rule: swap `ac` when some value window
/// `[a', c'] ⊂ (a, c)` holds `k` more positive letters of `U` than negative
/// letters of `V`, or the reverse. Signs are read by value.
pub fn signed_classes(k: usize, sig: &Signature) -> Vec<Vec<Perm>> {
    let plus = |x: u8| sig.get(x as usize) == Sign::Plus;
    swap_classes(sig.len(), |w, pos| {
        let (a, c) = (w[pos].min(w[pos + 1]), w[pos].max(w[pos + 1]));
        (a + 1..c).any(|lo| {
            (lo..c).any(|hi| {
                let inside = |x: u8| lo <= x && x <= hi;
                let pu = w[..pos].iter().filter(|&&x| inside(x) && plus(x)).count();
                let mv = w[pos + 2..].iter().filter(|&&x| inside(x) && !plus(x)).count();
                pu >= mv + k || mv >= pu + k
            })
        })
    })
}

/// Binary search tree obtained by inserting `τ_n, ..., τ_1`, as
/// `(left size, right size)` for each node `1..=n`.
pub fn bst_subtree_sizes(tau: &Perm) -> Vec<(usize, usize)> {
    let n = tau.len();
    let mut left = vec![0u8; n + 1];
    let mut right = vec![0u8; n + 1];
    let mut root = 0u8;
    for &v in tau.as_slice().iter().rev() {
        if root == 0 {
            root = v;
            continue;
        }
        let mut cur = root;
        loop {
            let slot = if v < cur {
                &mut left[cur as usize]
            } else {
                &mut right[cur as usize]
            };
            if *slot == 0 {
                *slot = v;
                break;
            }
            cur = *slot;
        }
    }
    fn size(x: u8, l: &[u8], r: &[u8]) -> usize {
        if x == 0 {
            0
        } else {
            1 + size(l[x as usize], l, r) + size(r[x as usize], l, r)
        }
    }
    (1..=n)
        .map(|i| (size(left[i], &left, &right), size(right[i], &left, &right)))
        .collect()
}

/// Loday's associahedron vertex `(ℓ_i r_i)_i` of the tree of `τ`.
pub fn loday_vertex(tau: &Perm) -> Vec<i64> {
    bst_subtree_sizes(tau)
        .into_iter()
        .map(|(l, r)| (l as i64 + 1) * (r as i64 + 1))
        .collect()
}

/// Number of acyclic orientations of `G^k(n)` by trying all of them.
pub fn brute_acyclic_orientations(k: usize, n: usize) -> u64 {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n.min(i + k + 1)).map(move |j| (i, j)))
        .collect();
    let mut count = 0;
    for m in 0u64..1 << edges.len() {
        let mut succ = vec![Vec::new(); n];
        for (e, &(i, j)) in edges.iter().enumerate() {
            if m >> e & 1 == 1 {
                succ[i].push(j);
            } else {
                succ[j].push(i);
            }
        }
        if is_acyclic(&succ) {
            count += 1;
        }
    }
    count
}

/// Kahn's algorithm.
pub fn is_acyclic(succ: &[Vec<usize>]) -> bool {
    let n = succ.len();
    let mut indeg = vec![0; n];
    for s in succ {
        for &j in s {
            indeg[j] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    while let Some(i) = stack.pop() {
        seen += 1;
        for &j in &succ[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                stack.push(j);
            }
        }
    }
    seen == n
}

/// Catalan numbers `C_0, ..., C_m`.
pub fn catalan(m: usize) -> Vec<u64> {
    let mut c = vec![1u64; m + 1];
    for i in 1..=m {
        c[i] = c[i - 1] * 2 * (2 * i as u64 - 1) / (i as u64 + 1);
    }
    c
}

/// Whether `class` is exactly the weak order interval between its extrema.
pub fn is_weak_interval(class: &[Perm]) -> bool {
    let n = class[0].len();
    let lo = class.iter().find(|x| class.iter().all(|y| x.weak_leq(y).unwrap()));
    let hi = class.iter().find(|x| class.iter().all(|y| y.weak_leq(x).unwrap()));
    let (Some(lo), Some(hi)) = (lo, hi) else { return false };
    let between = Perm::all(n)
        .into_iter()
        .filter(|p| lo.weak_leq(p).unwrap() && p.weak_leq(hi).unwrap())
        .count();
    between == class.len()
}
