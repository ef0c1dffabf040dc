//! Pipe insertion and deletion, and the insertion map `ψ^k` from
//! (signed) permutations to acyclic twists.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::{Perm, SignedPerm};
use crate::shape::{Dir, Shape, Side, TRIVIAL_SE, TRIVIAL_WN};
use crate::twist::{Twist, EMPTY, TRIVIAL};

/// A classical twist whose pipes carry increasing labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledTwist {
    pub twist: Twist,
    /// `labels[p - 1]` is the label of pipe `p`; strictly increasing.
    pub labels: Vec<u32>,
}

impl LabeledTwist {
    pub fn empty(k: usize) -> Self {
        LabeledTwist {
            twist: Twist::empty(k),
            labels: Vec::new(),
        }
    }

    /// Labels pipes `1..=n` by themselves.
    pub fn identity(twist: Twist) -> Self {
        let labels = (1..=twist.n() as u32).collect();
        LabeledTwist { twist, labels }
    }

    pub fn k(&self) -> usize {
        self.twist.k()
    }

    /// Whether the pipe labelled `q` has no incoming contact arc.
    pub fn is_source(&self, q: u32) -> Result<bool> {
        let p = self.position(q)?;
        Ok(self.twist.contact_arcs().iter().all(|&(_, b)| b != p))
    }

    fn position(&self, q: u32) -> Result<usize> {
        self.labels
            .binary_search(&q)
            .map(|i| i + 1)
            .map_err(|_| Error::MissingLabel(q))
    }

    /// Inserts a new pipe labelled `q`, as northwest as possible.
    pub fn insert(&self, q: u32) -> Result<LabeledTwist> {
        let m = match self.labels.binary_search(&q) {
            Ok(_) => return Err(Error::DuplicateLabel(q)),
            Err(i) => i + 1,
        };
        let (k, n) = (self.k(), self.twist.n());
        let shape = Shape::classical(k, n + 1)?;
        let mut elbows: Vec<(usize, usize)> = self
            .twist
            .interior_elbows()
            .into_iter()
            .map(|(r, c)| (r + usize::from(r >= m), c + usize::from(c >= m + k)))
            .collect();
        for j in 1..=k {
            let (r, c) = (m + j, m + j - 1);
            if let Some(id) = shape.id(r, c) {
                if !shape.is_forced(id) {
                    elbows.push((r, c));
                }
            }
        }
        let twist = Twist::new(shape, &elbows)?;
        let mut labels = self.labels.clone();
        labels.insert(m - 1, q);
        Ok(LabeledTwist { twist, labels })
    }

    /// Deletes the pipe labelled `q`, which must be a source.
    pub fn delete(&self, q: u32) -> Result<LabeledTwist> {
        let m = self.position(q)?;
        if !self.is_source(q)? {
            return Err(Error::NotASource(q));
        }
        let (k, n) = (self.k(), self.twist.n());
        let removed: Vec<(usize, usize)> = (1..=k).map(|j| (m + j, m + j - 1)).collect();
        for &(r, c) in &removed {
            if self.twist.is_elbow(r, c) != Some(true) {
                return Err(Error::InvariantViolation(format!(
                    "expected an elbow at ({r}, {c}) next to source {q}"
                )));
            }
        }
        let elbows: Vec<(usize, usize)> = self
            .twist
            .interior_elbows()
            .into_iter()
            .filter(|e| !removed.contains(e))
            .map(|(r, c)| (r - usize::from(r > m), c - usize::from(c > m + k)))
            .collect();
        let twist = Twist::classical(k, n - 1, &elbows)?;
        let mut labels = self.labels.clone();
        labels.remove(m - 1);
        Ok(LabeledTwist { twist, labels })
    }
}

/// `ψ^k(τ)` by successive pipe insertions of `τ_n, ..., τ_1`.
pub fn insert_permutation(k: usize, tau: &Perm) -> Result<Twist> {
    let mut t = LabeledTwist::empty(k);
    for &v in tau.as_slice().iter().rev() {
        t = t.insert(v as u32)?;
    }
    Ok(t.twist)
}

/// `ψ^k(τ)` for a permutation signed by one signature, by routing the pipes
/// `τ_n, ..., τ_1` directly in the final shape.
pub fn cambrian_insert(k: usize, tau: &SignedPerm) -> Result<Twist> {
    if tau.signs.len() != 1 {
        return Err(Error::InvariantViolation(
            "Cambrian insertion needs exactly one signature".into(),
        ));
    }
    let shape = Shape::get(k, &tau.signs[0])?;
    let order: Vec<usize> = tau.perm.as_slice().iter().rev().map(|&v| v as usize).collect();
    route(shape, &order)
}

/// Routes the pipes of `shape` in the given order, each as northwest as
/// possible in the space left by the previous ones. A pipe is only accepted
/// if the remaining pipes can still be completed.
pub fn route(shape: Arc<Shape>, order: &[usize]) -> Result<Twist> {
    let n = shape.n();
    if order.len() != n {
        return Err(Error::SizeMismatch(order.len(), n));
    }
    let mut router = Router::new(&shape, order);
    if !router.solve(0) {
        return Err(Error::InvariantViolation("pipes cannot be routed".into()));
    }
    let mut mask = 0u128;
    for (id, &t) in router.tile.iter().enumerate() {
        if t == ELBOW {
            mask |= 1 << id;
        }
    }
    Twist::from_mask(shape, mask)
}

const UNKNOWN: u8 = 0;
const ELBOW: u8 = 1;
const CROSS: u8 = 2;

struct Router<'a> {
    shape: &'a Shape,
    order: &'a [usize],
    tile: Vec<u8>,
    occ: Vec<[u8; 2]>,
    crossed: Vec<bool>,
    n: usize,
    max_bends: usize,
}

impl<'a> Router<'a> {
    fn new(shape: &'a Shape, order: &'a [usize]) -> Self {
        let len = shape.len();
        let mut tile = vec![UNKNOWN; len];
        let mut occ = vec![[EMPTY; 2]; len];
        for id in 0..len {
            let t = shape.trivial(id);
            if t != 0 {
                tile[id] = ELBOW;
                if t & TRIVIAL_SE != 0 {
                    occ[id][0] = TRIVIAL;
                }
                if t & TRIVIAL_WN != 0 {
                    occ[id][1] = TRIVIAL;
                }
            }
        }
        let n = shape.n();
        Router {
            shape,
            order,
            tile,
            occ,
            crossed: vec![false; (n + 1) * (n + 1)],
            n,
            max_bends: 2 * shape.k() + 1,
        }
    }

    /// Routes `order[i..]`, backtracking into earlier choices on failure.
    fn solve(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return self.occ.iter().all(|o| !o.contains(&EMPTY));
        }
        let p = self.order[i];
        let (b, from) = self.shape.entry(p);
        let goal = self.shape.coords(self.shape.exit(p).0);
        self.dfs(i, p, b, from, goal, 0)
    }

    fn dfs(&mut self, i: usize, p: usize, b: usize, from: Dir, goal: (usize, usize), bends: usize) -> bool {
        // North first, then east.
        let options: [(u8, usize, Dir); 2] = match from {
            Dir::W => [(ELBOW, 1, Dir::N), (CROSS, 0, Dir::E)],
            Dir::S => [(CROSS, 1, Dir::N), (ELBOW, 0, Dir::E)],
            _ => unreachable!("pipes enter from the west or the south"),
        };
        for (tile, slot, out) in options {
            if self.tile[b] != UNKNOWN && self.tile[b] != tile {
                continue;
            }
            if self.occ[b][slot] != EMPTY {
                continue;
            }
            let bends = bends + usize::from(tile == ELBOW);
            if bends > self.max_bends {
                continue;
            }
            let mut crossing = None;
            if tile == CROSS {
                let x = self.occ[b][1 - slot];
                if x != EMPTY && x != TRIVIAL {
                    if self.crossed[p * (self.n + 1) + x as usize] {
                        continue;
                    }
                    crossing = Some(x as usize);
                }
            }
            let next = match self.shape.side(b, out) {
                Side::Inner(nb) => {
                    let (r, c) = self.shape.coords(nb as usize);
                    if r > goal.0 || c > goal.1 {
                        continue;
                    }
                    Some(nb as usize)
                }
                Side::Exit(q) if q as usize == p => None,
                _ => continue,
            };
            let old_tile = self.tile[b];
            self.tile[b] = tile;
            self.occ[b][slot] = p as u8;
            if let Some(x) = crossing {
                self.crossed[p * (self.n + 1) + x] = true;
                self.crossed[x * (self.n + 1) + p] = true;
            }
            let done = match next {
                None => self.solve(i + 1),
                Some(nb) => self.dfs(i, p, nb, out.opposite(), goal, bends),
            };
            if done {
                return true;
            }
            self.tile[b] = old_tile;
            self.occ[b][slot] = EMPTY;
            if let Some(x) = crossing {
                self.crossed[p * (self.n + 1) + x] = false;
                self.crossed[x * (self.n + 1) + p] = false;
            }
        }
        false
    }
}

/// The fiber `{τ : ψ(τ) = T}`, i.e. the linear extensions of the contact
/// graph of an acyclic twist.
pub fn fiber(t: &Twist) -> Result<Vec<Perm>> {
    let g = t.contact_graph();
    if !g.acyclic {
        return Err(Error::CyclicInput);
    }
    g.dag.linear_extensions()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Signature;

    fn p(s: &str) -> Perm {
        Perm::new(s.bytes().map(|b| b - b'0').collect()).unwrap()
    }

    #[test]
    fn insert_into_empty() {
        for k in 0..4 {
            let t = LabeledTwist::empty(k).insert(7).unwrap();
            assert_eq!(t.twist, Twist::classical(k, 1, &[]).unwrap());
            assert_eq!(t.labels, vec![7]);
        }
    }

    #[test]
    fn duplicate_and_missing() {
        let t = LabeledTwist::empty(1).insert(3).unwrap();
        assert_eq!(t.insert(3).unwrap_err(), Error::DuplicateLabel(3));
        assert_eq!(t.delete(4).unwrap_err(), Error::MissingLabel(4));
    }

    #[test]
    fn splice_agrees_with_router_small() {
        for k in 0..3 {
            for n in 0..5 {
                for tau in Perm::all(n) {
                    let a = insert_permutation(k, &tau).unwrap();
                    let b = cambrian_insert(k, &SignedPerm::new(tau.clone(), vec![Signature::all_minus(n)]).unwrap())
                        .unwrap();
                    assert_eq!(a, b, "k={k} τ={tau}");
                    assert!(a.contact_graph().dag.is_linear_extension(&tau));
                }
            }
        }
    }

    #[test]
    fn fiber_of_132() {
        let t = insert_permutation(1, &p("132")).unwrap();
        assert_eq!(fiber(&t).unwrap(), vec![p("132"), p("312")]);
    }

    #[test]
    fn fiber_of_31542() {
        let t = insert_permutation(2, &p("31542")).unwrap();
        assert_eq!(fiber(&t).unwrap(), vec![p("31542"), p("35142")]);
    }
}
