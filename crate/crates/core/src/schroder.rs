//! Faces: ordered partitions, hypertwists, the Schröder lattice, partial
//! orientations and the Hopf algebra on ordered partitions.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::congruence::classes_of;
use crate::error::{Error, Result};
use crate::hopf::FormalSum;
use crate::insertion::{insert_permutation, LabeledTwist};
use crate::lattice::{enumerate_twists, Budget, FinitePoset};
use crate::perm::{subsets, Perm};
use crate::poset::{bits, Dag};
use crate::recoil::Orientation;
use crate::twist::{ids, Twist};

/// Largest `n` for which ordered partitions are enumerated.
pub const MAX_PARTITION_N: usize = 7;

/// An ordered partition of `[n]` into non-empty sorted blocks.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u8>>", into = "Vec<Vec<u8>>")]
pub struct OrderedPartition(Vec<Vec<u8>>);

impl TryFrom<Vec<Vec<u8>>> for OrderedPartition {
    type Error = Error;

    fn try_from(blocks: Vec<Vec<u8>>) -> Result<Self> {
        OrderedPartition::new(blocks)
    }
}

impl From<OrderedPartition> for Vec<Vec<u8>> {
    fn from(p: OrderedPartition) -> Self {
        p.0
    }
}

impl OrderedPartition {
    pub fn new(mut blocks: Vec<Vec<u8>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        if n > 64 {
            return Err(Error::InvariantViolation("ordered partition too large".into()));
        }
        let mut seen = vec![false; n + 1];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvariantViolation("empty block".into()));
            }
            b.sort_unstable();
            for &v in b.iter() {
                let v = v as usize;
                if v == 0 || v > n || seen[v] {
                    return Err(Error::InvariantViolation(format!(
                        "{blocks:?} does not partition [{n}]"
                    )));
                }
                seen[v] = true;
            }
        }
        Ok(OrderedPartition(blocks))
    }

    /// The partition into singletons `τ_1 | ... | τ_n`.
    pub fn from_perm(tau: &Perm) -> Self {
        OrderedPartition(tau.as_slice().iter().map(|&v| vec![v]).collect())
    }

    pub fn n(&self) -> usize {
        self.0.iter().map(Vec::len).sum()
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.0
    }

    pub fn num_blocks(&self) -> usize {
        self.0.len()
    }

    /// The permutation, when every block is a singleton.
    pub fn to_perm(&self) -> Option<Perm> {
        if self.0.iter().all(|b| b.len() == 1) {
            Perm::new(self.0.iter().map(|b| b[0]).collect()).ok()
        } else {
            None
        }
    }

    /// `block[v - 1]` is the index of the block containing `v`.
    fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.n()];
        for (i, b) in self.0.iter().enumerate() {
            for &v in b {
                out[v as usize - 1] = i;
            }
        }
        out
    }

    /// `coinv(λ)(i, j)` for `i < j`: `−1`, `0` or `1`.
    pub fn coinv(&self, i: usize, j: usize) -> i8 {
        let b = self.block_of();
        (b[i - 1] as isize - b[j - 1] as isize).signum() as i8
    }

    /// The weak order: `coinv(λ) ≤ coinv(λ')` pointwise.
    pub fn weak_leq(&self, other: &OrderedPartition) -> Result<bool> {
        let n = self.n();
        if n != other.n() {
            return Err(Error::SizeMismatch(n, other.n()));
        }
        let (a, b) = (self.block_of(), other.block_of());
        let sgn = |x: &[usize], i: usize, j: usize| (x[i] as isize - x[j] as isize).signum();
        Ok((0..n).all(|i| (i + 1..n).all(|j| sgn(&a, i, j) <= sgn(&b, i, j))))
    }

    /// Partitions covering `self` in the weak order: merging `x | y` with
    /// `x ≪ y`, or splitting a block into `x | y` with `y ≪ x`.
    pub fn up_covers(&self) -> Vec<OrderedPartition> {
        let mut out = Vec::new();
        for i in 0..self.0.len().saturating_sub(1) {
            if self.0[i].last() < self.0[i + 1].first() {
                out.push(self.merged(i));
            }
        }
        for (i, b) in self.0.iter().enumerate() {
            for cut in 1..b.len() {
                let (lo, hi) = b.split_at(cut);
                let mut blocks = self.0.clone();
                blocks.splice(i..=i, [hi.to_vec(), lo.to_vec()]);
                out.push(OrderedPartition(blocks));
            }
        }
        out
    }

    fn merged(&self, i: usize) -> OrderedPartition {
        let mut blocks = self.0.clone();
        let y = blocks.remove(i + 1);
        blocks[i].extend(y);
        blocks[i].sort_unstable();
        OrderedPartition(blocks)
    }

    /// All ordered partitions of `[n]`.
    pub fn all(n: usize) -> Result<Vec<OrderedPartition>> {
        if n > MAX_PARTITION_N {
            return Err(Error::BudgetExceeded(MAX_PARTITION_N));
        }
        let mut out = Vec::new();
        fn rec(rest: u64, cur: &mut Vec<Vec<u8>>, out: &mut Vec<OrderedPartition>) {
            if rest == 0 {
                out.push(OrderedPartition(cur.clone()));
                return;
            }
            // Non-empty subsets of `rest` as the next block.
            let mut sub = rest;
            while sub != 0 {
                cur.push(bits(sub).map(|b| b as u8 + 1).collect());
                rec(rest & !sub, cur, out);
                cur.pop();
                sub = (sub - 1) & rest;
            }
        }
        rec(crate::poset::full_mask(n), &mut Vec::new(), &mut out);
        out.sort();
        Ok(out)
    }

    /// `μ^{|J}`: keeps the values in `J`, drops emptied blocks, standardizes.
    pub fn restrict_values(&self, keep: impl Fn(u8) -> bool) -> OrderedPartition {
        let kept: Vec<Vec<u8>> = self
            .0
            .iter()
            .map(|b| b.iter().copied().filter(|&v| keep(v)).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect();
        standardize_blocks(kept)
    }

    /// `μ_{|I}` for the blocks in `range`, standardized.
    pub fn restrict_blocks(&self, range: std::ops::Range<usize>) -> OrderedPartition {
        standardize_blocks(self.0[range].to_vec())
    }
}

fn standardize_blocks(blocks: Vec<Vec<u8>>) -> OrderedPartition {
    let mut values: Vec<u8> = blocks.iter().flatten().copied().collect();
    values.sort_unstable();
    let rank: HashMap<u8, u8> = values.iter().enumerate().map(|(i, &v)| (v, i as u8 + 1)).collect();
    OrderedPartition(
        blocks
            .into_iter()
            .map(|b| {
                let mut b: Vec<u8> = b.iter().map(|v| rank[v]).collect();
                b.sort_unstable();
                b
            })
            .collect(),
    )
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.n() >= 10;
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|b| {
                let vs: Vec<String> = b.iter().map(|v| v.to_string()).collect();
                vs.join(if wide { "," } else { "" })
            })
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

impl fmt::Debug for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderedPartition({self})")
    }
}

impl FromStr for OrderedPartition {
    type Err = Error;

    /// Parses `3|15|24`, or `3|1,5|2,4` with commas inside blocks.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(OrderedPartition(Vec::new()));
        }
        let blocks = s
            .split('|')
            .map(|b| {
                let b = b.trim();
                if b.contains(',') {
                    b.split(',')
                        .map(|t| {
                            t.trim()
                                .parse::<u8>()
                                .map_err(|e| Error::parse("ordered partition", format!("{t:?}: {e}")))
                        })
                        .collect::<Result<Vec<u8>>>()
                } else {
                    b.chars()
                        .map(|c| {
                            c.to_digit(10)
                                .map(|d| d as u8)
                                .ok_or_else(|| Error::parse("ordered partition", format!("unexpected {c:?}")))
                        })
                        .collect()
                }
            })
            .collect::<Result<Vec<_>>>()?;
        OrderedPartition::new(blocks).map_err(|e| Error::parse("ordered partition", e.to_string()))
    }
}

/// The weak order on ordered partitions of `[n]`.
pub fn partition_weak_order(n: usize, budget: Budget) -> Result<FinitePoset<OrderedPartition>> {
    let elems = OrderedPartition::all(n)?;
    budget.check(elems.len() * elems.len())?;
    let mut rel = Vec::new();
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            if i != j && a.weak_leq(b)? {
                rel.push((i, j));
            }
        }
    }
    FinitePoset::new(elems, &rel)
}

/// A hypertwist: a twist whose pipes are grouped into hyperpipes, each
/// connected in the contact graph. Equality only looks at the surviving
/// elbows and the grouping, not at the refining twist.
#[derive(Clone)]
pub struct HyperTwist {
    twist: Twist,
    /// Hyperpipes as bit masks of pipes (bit `p - 1` for pipe `p`), sorted
    /// by their minimum.
    parts: Vec<u64>,
    /// Interior elbows joining two different hyperpipes.
    elbows: u128,
}

impl HyperTwist {
    /// Groups the pipes of `twist`; fails if a group is not connected.
    pub fn new(twist: Twist, groups: Vec<u64>) -> Result<HyperTwist> {
        let n = twist.n();
        let mut parts = groups;
        parts.retain(|&g| g != 0);
        parts.sort_by_key(|g| g.trailing_zeros());
        let union = parts
            .iter()
            .fold(0u64, |acc, &g| if acc & g != 0 { u64::MAX } else { acc | g });
        if union != crate::poset::full_mask(n) {
            return Err(Error::InvariantViolation(
                "hyperpipes do not partition the pipes".into(),
            ));
        }
        let arcs = twist.contact_arcs();
        for &g in &parts {
            if !connected(g, &arcs) {
                return Err(Error::InvariantViolation(format!("pipes {g:#b} are not connected")));
            }
        }
        let part_of = part_index(&parts, n);
        let mut elbows = 0u128;
        for id in ids(twist.elbow_mask() & twist.shape().interior_mask()) {
            let [a, b] = twist.slots(id);
            if part_of[a as usize - 1] != part_of[b as usize - 1] {
                elbows |= 1 << id;
            }
        }
        Ok(HyperTwist { twist, parts, elbows })
    }

    /// The trivial hypertwist of a twist: one pipe per hyperpipe.
    pub fn trivial(twist: Twist) -> HyperTwist {
        let parts = (0..twist.n()).map(|p| 1u64 << p).collect();
        HyperTwist::new(twist, parts).expect("singletons are connected")
    }

    pub fn k(&self) -> usize {
        self.twist.k()
    }

    pub fn n(&self) -> usize {
        self.twist.n()
    }

    /// A twist refining `self`.
    pub fn twist(&self) -> &Twist {
        &self.twist
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Hyperpipes as sorted label lists.
    pub fn part_labels(&self) -> Vec<Vec<u8>> {
        self.parts
            .iter()
            .map(|&g| bits(g).map(|b| b as u8 + 1).collect())
            .collect()
    }

    pub fn surviving_elbows(&self) -> u128 {
        self.elbows
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.len() == self.n()
    }

    /// Canonical key `(k, n, surviving elbows, hyperpipes)`.
    pub fn key(&self) -> (usize, usize, u128, &[u64]) {
        (self.k(), self.n(), self.elbows, &self.parts)
    }

    /// Contact graph on hyperpipe indices (a multigraph, one arc per elbow).
    pub fn contact_arcs(&self) -> Vec<(usize, usize)> {
        let part_of = part_index(&self.parts, self.n());
        ids(self.elbows)
            .map(|id| {
                let [a, b] = self.twist.slots(id);
                (part_of[a as usize - 1], part_of[b as usize - 1])
            })
            .collect()
    }

    pub fn contact_dag(&self) -> Dag {
        Dag::from_arcs(
            self.parts.len(),
            self.contact_arcs().into_iter().map(|(a, b)| (a + 1, b + 1)),
        )
    }

    pub fn is_acyclic(&self) -> bool {
        self.contact_dag().is_acyclic()
    }

    /// `H/_{u→v}`: merges hyperpipes `u` and `v` (indices into `parts`).
    pub fn merge(&self, u: usize, v: usize) -> Result<HyperTwist> {
        let mut parts = self.parts.clone();
        let g = parts[u] | parts[v];
        parts[u] = g;
        parts.remove(v);
        HyperTwist::new(self.twist.clone(), parts)
    }

    /// The partial orientation `i → j` when a path joins the hyperpipe of
    /// `i` to the hyperpipe of `j`.
    pub fn canopy(&self) -> Result<Orientation> {
        let closure = self.contact_dag().closure()?;
        let part_of = part_index(&self.parts, self.n());
        let mut o = Orientation::unset(self.k(), self.n());
        for (i, j) in o.edges() {
            let (a, b) = (part_of[i - 1] + 1, part_of[j - 1] + 1);
            if closure.less(a, b) {
                o.set(i, j, true);
            } else if closure.less(b, a) {
                o.set(i, j, false);
            }
        }
        Ok(o)
    }

    /// Ordered partitions in the fiber: linear extensions of the contact
    /// graph, with consecutive incomparable hyperpipes possibly merged.
    pub fn fiber(&self) -> Result<Vec<OrderedPartition>> {
        let dag = self.contact_dag();
        let closure = dag.closure()?;
        let labels = self.part_labels();
        let mut out = HashSet::new();
        for ext in dag.linear_extensions()? {
            let order: Vec<usize> = ext.as_slice().iter().map(|&v| v as usize).collect();
            // Choose which consecutive runs of pairwise incomparable nodes merge.
            fn rec(
                order: &[usize],
                closure: &Dag,
                labels: &[Vec<u8>],
                cur: &mut Vec<Vec<usize>>,
                out: &mut HashSet<OrderedPartition>,
            ) {
                let Some((&x, rest)) = order.split_first() else {
                    let blocks = cur
                        .iter()
                        .map(|g| g.iter().flat_map(|&i| labels[i - 1].iter().copied()).collect())
                        .collect();
                    out.insert(OrderedPartition::new(blocks).expect("hyperpipes partition [n]"));
                    return;
                };
                cur.push(vec![x]);
                rec(rest, closure, labels, cur, out);
                cur.pop();
                if let Some(last) = cur.last_mut() {
                    if last.iter().all(|&y| !closure.less(y, x) && !closure.less(x, y)) {
                        last.push(x);
                        rec(rest, closure, labels, cur, out);
                        cur.last_mut().expect("just pushed").pop();
                    }
                }
            }
            rec(&order, &closure, &labels, &mut Vec::new(), &mut out);
        }
        let mut v: Vec<_> = out.into_iter().collect();
        v.sort();
        Ok(v)
    }
}

fn part_index(parts: &[u64], n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for (i, &g) in parts.iter().enumerate() {
        for b in bits(g) {
            out[b] = i;
        }
    }
    out
}

fn connected(group: u64, arcs: &[(usize, usize)]) -> bool {
    let Some(start) = bits(group).next() else {
        return true;
    };
    let mut seen = 1u64 << start;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &(a, b) in arcs {
            let (a, b) = (a - 1, b - 1);
            for (p, q) in [(a, b), (b, a)] {
                if p == x && group >> q & 1 == 1 && seen >> q & 1 == 0 {
                    seen |= 1 << q;
                    queue.push_back(q);
                }
            }
        }
    }
    seen == group
}

/// Connected components of `group` in the graph `arcs`.
fn components(group: u64, arcs: &[(usize, usize)]) -> Vec<u64> {
    let mut out = Vec::new();
    let mut rest = group;
    while rest != 0 {
        let start = rest.trailing_zeros() as usize;
        let mut comp = 1u64 << start;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &(a, b) in arcs {
                let (a, b) = (a - 1, b - 1);
                for (p, q) in [(a, b), (b, a)] {
                    if p == x && rest >> q & 1 == 1 && comp >> q & 1 == 0 {
                        comp |= 1 << q;
                        queue.push_back(q);
                    }
                }
            }
        }
        out.push(comp);
        rest &= !comp;
    }
    out
}

impl PartialEq for HyperTwist {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for HyperTwist {}

impl Hash for HyperTwist {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for HyperTwist {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HyperTwist {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Debug for HyperTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .part_labels()
            .iter()
            .map(|p| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(
            f,
            "HyperTwist(k={}, n={}, elbows={:#x}, parts={{{}}})",
            self.k(),
            self.n(),
            self.elbows,
            parts.join("} {")
        )
    }
}

/// `ψ^k(λ)`: inserts the blocks `λ_p, ..., λ_1`, each block in increasing
/// order, merging after each block the pipes of that block that are
/// connected in the current contact graph.
pub fn insert_ordered_partition(k: usize, lambda: &OrderedPartition) -> Result<HyperTwist> {
    insert_ordered_partition_with(k, lambda, |b| b.to_vec())
}

/// As [`insert_ordered_partition`], with a chosen order inside each block.
pub fn insert_ordered_partition_with<F>(k: usize, lambda: &OrderedPartition, order: F) -> Result<HyperTwist>
where
    F: Fn(&[u8]) -> Vec<u8>,
{
    let mut lt = LabeledTwist::empty(k);
    let mut groups: Vec<Vec<u32>> = Vec::new();
    for block in lambda.blocks().iter().rev() {
        for v in order(block) {
            lt = lt.insert(v as u32)?;
        }
        let pos: HashMap<u32, usize> = lt.labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mask = block.iter().fold(0u64, |m, &v| m | 1 << pos[&(v as u32)]);
        for comp in components(mask, &lt.twist.contact_arcs()) {
            groups.push(bits(comp).map(|b| lt.labels[b]).collect());
        }
    }
    let pos: HashMap<u32, usize> = lt.labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let parts = groups
        .iter()
        .map(|g| g.iter().fold(0u64, |m, l| m | 1 << pos[l]))
        .collect();
    HyperTwist::new(lt.twist, parts)
}

/// Ordered partitions obtained from `λ` by one witnessed rewriting
/// `U|a|c|V ≡ U|ac|V ≡ U|c|a|V`, with `k` values of `∪V` strictly between
/// `max(a)` and `min(c)`.
pub fn hyper_rewrite_neighbors(k: usize, lambda: &OrderedPartition) -> Vec<OrderedPartition> {
    let b = lambda.blocks();
    let witnessed = |a: &[u8], c: &[u8], rest: &[Vec<u8>]| {
        let (lo, hi) = (*a.last().expect("non-empty"), c[0]);
        lo < hi && rest.iter().flatten().filter(|&&v| lo < v && v < hi).count() >= k
    };
    let mut out = Vec::new();
    for i in 0..b.len() {
        // Two consecutive blocks: merge them, or exchange them.
        if i + 1 < b.len() {
            let (x, y) = (&b[i], &b[i + 1]);
            let rest = &b[i + 2..];
            if witnessed(x, y, rest) || witnessed(y, x, rest) {
                let merged = lambda.merged(i);
                out.push(merged);
                let mut swapped = b.to_vec();
                swapped.swap(i, i + 1);
                out.push(OrderedPartition(swapped));
            }
        }
        // One block split into `a | c` or `c | a` with `a ≪ c`.
        let blk = &b[i];
        for cut in 1..blk.len() {
            let (a, c) = blk.split_at(cut);
            if witnessed(a, c, &b[i + 1..]) {
                for pair in [[a.to_vec(), c.to_vec()], [c.to_vec(), a.to_vec()]] {
                    let mut blocks = b.to_vec();
                    blocks.splice(i..=i, pair);
                    out.push(OrderedPartition(blocks));
                }
            }
        }
    }
    out
}

/// Classes of the `k`-hypertwist congruence on ordered partitions of `[n]`.
pub fn hyper_congruence_classes(k: usize, n: usize) -> Result<Vec<Vec<OrderedPartition>>> {
    Ok(classes_of(OrderedPartition::all(n)?, |l| hyper_rewrite_neighbors(k, l)))
}

/// Fibers of the insertion map on ordered partitions of `[n]`.
pub fn hyper_fibers(k: usize, n: usize) -> Result<BTreeMap<HyperTwist, Vec<OrderedPartition>>> {
    let mut map: BTreeMap<HyperTwist, Vec<OrderedPartition>> = BTreeMap::new();
    for l in OrderedPartition::all(n)? {
        map.entry(insert_ordered_partition(k, &l)?).or_default().push(l);
    }
    for v in map.values_mut() {
        v.sort();
    }
    Ok(map)
}

/// Acyclic `(k, n)`-hypertwists obtained by merging connected groups of
/// pipes in acyclic twists, keeping the contracted graph acyclic.
pub fn enumerate_hypertwists(k: usize, n: usize, budget: Budget) -> Result<Vec<HyperTwist>> {
    let mut seen: HashSet<HyperTwist> = HashSet::new();
    let mut queue: VecDeque<HyperTwist> = VecDeque::new();
    for t in enumerate_twists(k, n, true, budget)? {
        let h = HyperTwist::trivial(t);
        if seen.insert(h.clone()) {
            queue.push_back(h);
        }
    }
    while let Some(h) = queue.pop_front() {
        budget.check(seen.len())?;
        for (u, v) in h.contact_arcs() {
            let m = h.merge(u.min(v), u.max(v))?;
            if m.is_acyclic() && !seen.contains(&m) {
                seen.insert(m.clone());
                queue.push_back(m);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// The Schröder poset: `H < H/_{u→v}` when `u ≪ v` and `H/_{u→v} < H` when
/// `u ≫ v`, for arcs `u → v` with an acyclic merge.
pub fn schroder_lattice(k: usize, n: usize, budget: Budget) -> Result<FinitePoset<HyperTwist>> {
    let elems = enumerate_hypertwists(k, n, budget)?;
    let index: HashMap<&HyperTwist, usize> = elems.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let mut rel = Vec::new();
    for (i, h) in elems.iter().enumerate() {
        for (u, v) in h.contact_arcs() {
            let (pu, pv) = (h.parts[u], h.parts[v]);
            let m = h.merge(u.min(v), u.max(v))?;
            let Some(&j) = index.get(&m) else { continue };
            if 63 - pu.leading_zeros() < pv.trailing_zeros() {
                rel.push((i, j));
            } else if 63 - pv.leading_zeros() < pu.trailing_zeros() {
                rel.push((j, i));
            }
        }
    }
    FinitePoset::new(elems, &rel)
}

/// Whether the Schröder order agrees with the weak order on the minima of
/// the insertion fibers.
pub fn schroder_is_quotient(lattice: &FinitePoset<HyperTwist>, k: usize, n: usize) -> Result<bool> {
    let fibers = hyper_fibers(k, n)?;
    let mut mins = Vec::new();
    for h in lattice.elements() {
        let fiber = fibers
            .get(h)
            .ok_or(Error::InvariantViolation(format!("{h:?} has an empty fiber")))?;
        let min = fiber
            .iter()
            .find(|a| fiber.iter().all(|b| a.weak_leq(b).unwrap_or(false)))
            .ok_or(Error::InvariantViolation("fiber is not an interval".into()))?;
        mins.push(min.clone());
    }
    for i in 0..mins.len() {
        for j in 0..mins.len() {
            if lattice.leq(i, j) != mins[i].weak_leq(&mins[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(1/(e+1)) C(n−1, e) C(n+1+e, e)`: dissections of an `(n+2)`-gon with
/// `e` diagonals, i.e. `(1, n)`-hypertwists with `e` surviving elbows.
pub fn dissection_count(n: usize, e: usize) -> u128 {
    if n == 0 {
        return u128::from(e == 0);
    }
    let c = |a: usize, b: usize| crate::perm::binomial(a, b) as u128;
    c(n - 1, e) * c(n + 1 + e, e) / (e as u128 + 1)
}

/// `k`-recoil scheme of an ordered partition: coinversions on `G^k(n)`.
pub fn partition_recoil(k: usize, lambda: &OrderedPartition) -> Orientation {
    let mut o = Orientation::unset(k, lambda.n());
    for (i, j) in o.edges() {
        match lambda.coinv(i, j) {
            -1 => o.set(i, j, true),
            1 => o.set(i, j, false),
            _ => {}
        }
    }
    o
}

/// Pointwise order on partial orientations (`j → i` < unset < `i → j`).
pub fn partial_orientation_leq(a: &Orientation, b: &Orientation) -> bool {
    a.n() == b.n() && a.k() == b.k() && a.raw().iter().zip(b.raw()).all(|(x, y)| -x <= -y)
}

/// Checks `θ(λ) = η(ψ(λ))` on every ordered partition of `[n]`.
pub fn face_triangle_commutes(k: usize, n: usize) -> Result<bool> {
    for l in OrderedPartition::all(n)? {
        if insert_ordered_partition(k, &l)?.canopy()? != partition_recoil(k, &l) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `λ ⧢ λ'`: ordered partitions whose restrictions to `[n]` and to
/// `[n+1, n+n']` are `λ` and the shift of `λ'`.
pub fn shuffle_partitions(a: &OrderedPartition, b: &OrderedPartition) -> Vec<OrderedPartition> {
    let shift = a.n() as u8;
    let bb: Vec<Vec<u8>> = b.0.iter().map(|x| x.iter().map(|v| v + shift).collect()).collect();
    let mut out = Vec::new();
    fn rec(x: &[Vec<u8>], y: &[Vec<u8>], cur: &mut Vec<Vec<u8>>, out: &mut Vec<OrderedPartition>) {
        if x.is_empty() && y.is_empty() {
            out.push(OrderedPartition(cur.clone()));
            return;
        }
        if let Some((h, t)) = x.split_first() {
            cur.push(h.clone());
            rec(t, y, cur, out);
            cur.pop();
        }
        if let Some((h, t)) = y.split_first() {
            cur.push(h.clone());
            rec(x, t, cur, out);
            cur.pop();
        }
        if let (Some((hx, tx)), Some((hy, ty))) = (x.split_first(), y.split_first()) {
            let mut m = hx.clone();
            m.extend(hy);
            cur.push(m);
            rec(tx, ty, cur, out);
            cur.pop();
        }
    }
    rec(&a.0, &bb, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `λ ⋆ λ'`: ordered partitions with `p + p'` blocks whose first `p` blocks
/// standardize to `λ` and last `p'` blocks to `λ'`.
pub fn convolve_partitions(a: &OrderedPartition, b: &OrderedPartition) -> Vec<OrderedPartition> {
    let (n, m) = (a.n(), b.n());
    let mut out = Vec::new();
    for set in subsets(n + m, n) {
        let rest: Vec<u8> = (1..=(n + m) as u8).filter(|v| !set.contains(v)).collect();
        let mut blocks: Vec<Vec<u8>> =
            a.0.iter()
                .map(|x| x.iter().map(|&v| set[v as usize - 1]).collect())
                .collect();
        blocks.extend(b.0.iter().map(|x| x.iter().map(|&v| rest[v as usize - 1]).collect()));
        out.push(OrderedPartition::new(blocks).expect("relabelling keeps a partition"));
    }
    out.sort();
    out
}

/// `F_λ · F_λ'` in the algebra of ordered partitions.
pub fn product_ordpart(
    a: &FormalSum<OrderedPartition>,
    b: &FormalSum<OrderedPartition>,
) -> FormalSum<OrderedPartition> {
    let r: std::result::Result<_, std::convert::Infallible> =
        a.bilinear(b, |x, y| Ok(FormalSum::from_keys(shuffle_partitions(x, y))));
    r.unwrap_or_else(|e| match e {})
}

/// `Δ F_μ = Σ_i F_{μ_{|[1,i]}} ⊗ F_{μ_{|[i+1,p]}}`.
pub fn coproduct_ordpart(a: &FormalSum<OrderedPartition>) -> FormalSum<(OrderedPartition, OrderedPartition)> {
    a.map_linear(|mu| {
        let p = mu.num_blocks();
        FormalSum::from_keys((0..=p).map(|i| (mu.restrict_blocks(0..i), mu.restrict_blocks(i..p))))
    })
}

/// `P_H = Σ_{ψ(λ) = H} F_λ`.
pub fn p_hyper(h: &HyperTwist) -> Result<FormalSum<OrderedPartition>> {
    Ok(FormalSum::from_keys(h.fiber()?))
}

/// Whether an element of the ordered-partition algebra is a combination of
/// the classes of `key`, i.e. constant on each class.
pub fn is_class_combination<K, F>(x: &FormalSum<OrderedPartition>, key: F) -> Result<bool>
where
    K: Ord,
    F: Fn(&OrderedPartition) -> Result<K>,
{
    let mut n_cache: BTreeMap<usize, BTreeMap<K, Vec<OrderedPartition>>> = BTreeMap::new();
    for (l, _) in x.iter() {
        let classes = match n_cache.entry(l.n()) {
            std::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::btree_map::Entry::Vacant(e) => {
                let mut m: BTreeMap<K, Vec<OrderedPartition>> = BTreeMap::new();
                for o in OrderedPartition::all(l.n())? {
                    m.entry(key(&o)?).or_default().push(o);
                }
                e.insert(m)
            }
        };
        let c = x.coefficient(l);
        if classes[&key(l)?].iter().any(|o| x.coefficient(o) != c) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `Σ c(l, r) F_l ⊗ F_r` is constant on products of classes.
fn tensor_is_class_combination<K, F>(d: &FormalSum<(OrderedPartition, OrderedPartition)>, key: F) -> Result<bool>
where
    K: Ord,
    F: Fn(&OrderedPartition) -> Result<K> + Copy,
{
    let mut by_right: BTreeMap<OrderedPartition, FormalSum<OrderedPartition>> = BTreeMap::new();
    let mut by_left: BTreeMap<OrderedPartition, FormalSum<OrderedPartition>> = BTreeMap::new();
    for ((l, r), c) in d.iter() {
        by_right.entry(r.clone()).or_default().add_term(l.clone(), c);
        by_left.entry(l.clone()).or_default().add_term(r.clone(), c);
    }
    for slice in by_right.values().chain(by_left.values()) {
        if !is_class_combination(slice, key)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that products and coproducts of the `P_H` and of the recoil
/// elements stay combinations of classes, for total sizes up to `max`.
pub fn hyper_subalgebra_check(k: usize, max: usize) -> Result<bool> {
    let hyper = |l: &OrderedPartition| insert_ordered_partition(k, l);
    let recoil = |l: &OrderedPartition| Ok(partition_recoil(k, l));
    let mut p_elems: Vec<(usize, FormalSum<OrderedPartition>)> = Vec::new();
    let mut x_elems: Vec<(usize, FormalSum<OrderedPartition>)> = Vec::new();
    for n in 1..=max {
        for fiber in hyper_fibers(k, n)?.into_values() {
            p_elems.push((n, FormalSum::from_keys(fiber)));
        }
        let mut by_recoil: BTreeMap<Orientation, Vec<OrderedPartition>> = BTreeMap::new();
        for l in OrderedPartition::all(n)? {
            by_recoil.entry(partition_recoil(k, &l)).or_default().push(l);
        }
        x_elems.extend(by_recoil.into_values().map(|v| (n, FormalSum::from_keys(v))));
    }
    for (n, p) in &p_elems {
        if !tensor_is_class_combination(&coproduct_ordpart(p), hyper)? {
            return Ok(false);
        }
        for (m, q) in &p_elems {
            if n + m <= max && !is_class_combination(&product_ordpart(p, q), hyper)? {
                return Ok(false);
            }
        }
    }
    for (n, x) in &x_elems {
        if !tensor_is_class_combination(&coproduct_ordpart(x), recoil)? {
            return Ok(false);
        }
        for (m, y) in &x_elems {
            if n + m <= max && !is_class_combination(&product_ordpart(x, y), recoil)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether every recoil element is a sum of `P_H` (`HyperRec ⊂ HyperTwist`).
pub fn recoil_refines_hyper(k: usize, n: usize) -> Result<bool> {
    let fibers = hyper_fibers(k, n)?;
    for (h, fiber) in &fibers {
        let o = h.canopy()?;
        if fiber.iter().any(|l| partition_recoil(k, l) != o) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(Δ ⊗ id) Δ = (id ⊗ Δ) Δ` on every `F_λ` with `λ` of size at most `max`.
pub fn ordpart_coassociative(max: usize) -> Result<bool> {
    type T3 = (OrderedPartition, OrderedPartition, OrderedPartition);
    for n in 0..=max {
        for l in OrderedPartition::all(n)? {
            let d = coproduct_ordpart(&FormalSum::basis(l));
            let mut left: FormalSum<T3> = FormalSum::zero();
            let mut right: FormalSum<T3> = FormalSum::zero();
            for ((a, b), c) in d.iter() {
                for ((a1, a2), c1) in coproduct_ordpart(&FormalSum::basis(a.clone())).iter() {
                    left.add_term((a1.clone(), a2.clone(), b.clone()), c * c1);
                }
                for ((b1, b2), c2) in coproduct_ordpart(&FormalSum::basis(b.clone())).iter() {
                    right.add_term((a.clone(), b1.clone(), b2.clone()), c * c2);
                }
            }
            if left != right {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The hypertwist of the chain `τ`: `ψ^k(τ)` with singleton hyperpipes.
pub fn hyper_of_perm(k: usize, tau: &Perm) -> Result<HyperTwist> {
    Ok(HyperTwist::trivial(insert_permutation(k, tau)?))
}
