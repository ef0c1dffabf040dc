//! Twists: fillings of a shape with crosses and elbows in which every pipe
//! reaches its own exit and no two pipes cross twice.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Signature;
use crate::poset::Dag;
use crate::shape::{Dir, Shape, Side, TRIVIAL_SE, TRIVIAL_WN};

/// Slot value of an arc cut off by the walls of a forced box.
pub const TRIVIAL: u8 = 255;
/// Slot value of an arc not traversed by any pipe.
pub const EMPTY: u8 = 0;

/// A (Cambrian) twist. Equality, hashing and ordering only depend on
/// `(k, ε, elbow set)`.
#[derive(Clone)]
pub struct Twist {
    shape: Arc<Shape>,
    elbows: u128,
    occ: Vec<[u8; 2]>,
}

/// A flip of a twist, together with its direction.
#[derive(Clone, Debug)]
pub struct Flip {
    /// The elbow that becomes a cross.
    pub elbow: (usize, usize),
    /// The cross that becomes an elbow.
    pub cross: (usize, usize),
    pub twist: Twist,
    pub increasing: bool,
}

impl Twist {
    /// Builds the classical `(k, n)`-twist with the given interior elbows.
    pub fn classical(k: usize, n: usize, interior: &[(usize, usize)]) -> Result<Twist> {
        Twist::new(Shape::classical(k, n)?, interior)
    }

    /// Builds a twist on `shape` from its interior elbows `(row, col)`.
    pub fn new(shape: Arc<Shape>, interior: &[(usize, usize)]) -> Result<Twist> {
        let mut mask = shape.forced_mask();
        for &(r, c) in interior {
            let id = shape.id(r, c).ok_or(Error::OutOfShape { row: r, col: c })?;
            if shape.is_forced(id) {
                return Err(Error::OutOfShape { row: r, col: c });
            }
            mask |= 1 << id;
        }
        Twist::from_mask(shape, mask)
    }

    /// Builds a twist from the mask of all its elbows (forced ones included).
    pub fn from_mask(shape: Arc<Shape>, elbows: u128) -> Result<Twist> {
        let elbows = elbows | shape.forced_mask();
        if elbows & !shape.full_mask() != 0 {
            return Err(Error::InvariantViolation("elbow mask exceeds shape".into()));
        }
        let occ = trace(&shape, elbows)?;
        Ok(Twist { shape, elbows, occ })
    }

    /// The unique twist with no pipes.
    pub fn empty(k: usize) -> Twist {
        Twist::classical(k, 0, &[]).expect("empty twist")
    }

    pub fn shape(&self) -> &Arc<Shape> {
        &self.shape
    }

    pub fn k(&self) -> usize {
        self.shape.k()
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn signature(&self) -> &Signature {
        self.shape.signature()
    }

    pub fn is_classical(&self) -> bool {
        self.shape.is_classical()
    }

    /// Mask over box ids of all elbows.
    pub fn elbow_mask(&self) -> u128 {
        self.elbows
    }

    pub fn is_elbow_id(&self, id: usize) -> bool {
        self.elbows >> id & 1 == 1
    }

    pub fn is_elbow(&self, r: usize, c: usize) -> Option<bool> {
        self.shape.id(r, c).map(|id| self.is_elbow_id(id))
    }

    /// Interior (non-forced) elbows, sorted lexicographically by `(row, col)`.
    pub fn interior_elbows(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = ids(self.elbows & self.shape.interior_mask())
            .map(|id| self.shape.coords(id))
            .collect();
        v.sort_unstable();
        v
    }

    /// Cross boxes, sorted lexicographically.
    pub fn crosses(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = ids(self.shape.full_mask() & !self.elbows)
            .map(|id| self.shape.coords(id))
            .collect();
        v.sort_unstable();
        v
    }

    /// Pipes through box `id`: `[SE, WN]` for elbows, `[H, V]` for crosses.
    pub fn slots(&self, id: usize) -> [u8; 2] {
        self.occ[id]
    }

    /// The boxes visited by pipe `p`, with the side it enters from.
    pub fn pipe_path(&self, p: usize) -> Vec<(usize, Dir)> {
        let mut out = Vec::new();
        let (mut b, mut from) = self.shape.entry(p);
        loop {
            out.push((b, from));
            let out_dir = step(self.is_elbow_id(b), from).0;
            match self.shape.side(b, out_dir) {
                Side::Inner(nb) => {
                    b = nb as usize;
                    from = out_dir.opposite();
                }
                _ => return out,
            }
        }
    }

    /// Numbers of `SE` and `WN` bends of pipe `p`.
    pub fn bends(&self, p: usize) -> (usize, usize) {
        let mut se = 0;
        let mut wn = 0;
        for id in ids(self.elbows) {
            if self.occ[id][0] == p as u8 {
                se += 1;
            }
            if self.occ[id][1] == p as u8 {
                wn += 1;
            }
        }
        (se, wn)
    }

    /// Numbers of horizontal and vertical crossings of pipe `p`.
    pub fn crossings(&self, p: usize) -> (usize, usize) {
        let mut h = 0;
        let mut v = 0;
        for id in ids(self.shape.full_mask() & !self.elbows) {
            if self.occ[id][0] == p as u8 {
                h += 1;
            }
            if self.occ[id][1] == p as u8 {
                v += 1;
            }
        }
        (h, v)
    }

    /// Arcs `SE-pipe → WN-pipe` of the interior elbows, in box order.
    pub fn contact_arcs(&self) -> Vec<(usize, usize)> {
        ids(self.elbows & self.shape.interior_mask())
            .map(|id| (self.occ[id][0] as usize, self.occ[id][1] as usize))
            .collect()
    }

    pub fn contact_graph(&self) -> ContactGraph {
        let arcs = self.contact_arcs();
        let dag = Dag::from_arcs(self.n(), arcs.iter().copied());
        let acyclic = dag.is_acyclic();
        let closure = if acyclic { dag.closure().ok() } else { None };
        ContactGraph {
            n: self.n(),
            arcs,
            dag,
            acyclic,
            closure,
        }
    }

    pub fn is_acyclic(&self) -> bool {
        Dag::from_arcs(self.n(), self.contact_arcs()).is_acyclic()
    }

    /// The box where pipes `p` and `q` cross.
    pub fn crossing_of(&self, p: usize, q: usize) -> Option<usize> {
        let (p, q) = (p as u8, q as u8);
        ids(self.shape.full_mask() & !self.elbows).find(|&id| {
            let [h, v] = self.occ[id];
            (h == p && v == q) || (h == q && v == p)
        })
    }

    /// Flips the interior elbow at `(r, c)`.
    pub fn flip(&self, r: usize, c: usize) -> Result<Twist> {
        self.flip_info(r, c).map(|f| f.twist)
    }

    pub fn flip_info(&self, r: usize, c: usize) -> Result<Flip> {
        let id = self.shape.id(r, c).ok_or(Error::OutOfShape { row: r, col: c })?;
        if !self.is_elbow_id(id) {
            return Err(Error::NotAnElbow { row: r, col: c });
        }
        if self.shape.is_forced(id) {
            return Err(Error::BoundaryElbow { row: r, col: c });
        }
        let [p, q] = self.occ[id];
        let x = self
            .crossing_of(p as usize, q as usize)
            .ok_or(Error::NotFlippable(p as usize, q as usize))?;
        let mask = (self.elbows & !(1 << id)) | 1 << x;
        let twist = Twist::from_mask(self.shape.clone(), mask)?;
        let (xr, xc) = self.shape.coords(x);
        Ok(Flip {
            elbow: (r, c),
            cross: (xr, xc),
            twist,
            increasing: r <= xr && c <= xc,
        })
    }

    /// All flips of the interior elbows.
    pub fn flips(&self) -> Vec<Flip> {
        ids(self.elbows & self.shape.interior_mask())
            .map(|id| {
                let (r, c) = self.shape.coords(id);
                self.flip_info(r, c).expect("interior elbows are flippable")
            })
            .collect()
    }

    /// Increasing flips only.
    pub fn increasing_flips(&self) -> Vec<Twist> {
        self.flips()
            .into_iter()
            .filter(|f| f.increasing)
            .map(|f| f.twist)
            .collect()
    }

    /// Chords `{i, j}` (`i < j`) of the `(n + 2k)`-gon with vertices
    /// `1..=n+2k` attached to the elbows of a classical twist.
    pub fn diagonals(&self) -> Result<Vec<(usize, usize)>> {
        if !self.is_classical() {
            return Err(Error::InvariantViolation(
                "diagonals are defined for classical twists".into(),
            ));
        }
        let k = self.k();
        let mut v: Vec<_> = ids(self.elbows)
            .map(|id| {
                let (r, c) = self.shape.coords(id);
                (c, r + k)
            })
            .collect();
        v.sort_unstable();
        Ok(v)
    }

    /// The `k`-relevant chords (length between `k + 1` and `n + k - 1`).
    pub fn relevant_diagonals(&self) -> Result<Vec<(usize, usize)>> {
        let (k, n) = (self.k(), self.n());
        Ok(self
            .diagonals()?
            .into_iter()
            .filter(|&(i, j)| j - i > k && j - i + k < n + 2 * k)
            .collect())
    }
}

/// Direction out of a box and the slot used, given the side entered from.
fn step(elbow: bool, from: Dir) -> (Dir, usize) {
    match (elbow, from) {
        (true, Dir::W) => (Dir::N, 1),
        (true, Dir::S) => (Dir::E, 0),
        (false, Dir::W) => (Dir::E, 0),
        (false, Dir::S) => (Dir::N, 1),
        _ => unreachable!("pipes enter from the west or the south"),
    }
}

fn trace(shape: &Shape, elbows: u128) -> Result<Vec<[u8; 2]>> {
    let n = shape.n();
    let mut occ = vec![[EMPTY; 2]; shape.len()];
    for (id, o) in occ.iter_mut().enumerate() {
        let t = shape.trivial(id);
        if t & TRIVIAL_SE != 0 {
            o[0] = TRIVIAL;
        }
        if t & TRIVIAL_WN != 0 {
            o[1] = TRIVIAL;
        }
    }
    for p in 1..=n {
        let (mut b, mut from) = shape.entry(p);
        let mut steps = 0;
        loop {
            steps += 1;
            if steps > 2 * shape.len() + 2 {
                return Err(Error::BadEndpoint { pipe: p });
            }
            let (out, slot) = step(elbows >> b & 1 == 1, from);
            if occ[b][slot] != EMPTY {
                return Err(Error::BadEndpoint { pipe: p });
            }
            occ[b][slot] = p as u8;
            match shape.side(b, out) {
                Side::Inner(nb) => {
                    b = nb as usize;
                    from = out.opposite();
                }
                Side::Exit(q) if q as usize == p => break,
                _ => return Err(Error::BadEndpoint { pipe: p }),
            }
        }
    }
    let mut count = vec![0u8; (n + 1) * (n + 1)];
    for (id, o) in occ.iter().enumerate() {
        if o.contains(&EMPTY) {
            let (r, c) = shape.coords(id);
            return Err(Error::InvariantViolation(format!(
                "box ({r}, {c}) carries a dangling segment"
            )));
        }
        if elbows >> id & 1 == 0 {
            let (a, b) = (o[0].min(o[1]) as usize, o[0].max(o[1]) as usize);
            count[a * (n + 1) + b] += 1;
            if count[a * (n + 1) + b] > 1 {
                return Err(Error::DoubleCrossing(a, b));
            }
        }
    }
    Ok(occ)
}

/// Iterates over the set bits of a 128-bit mask.
pub fn ids(mut m: u128) -> impl Iterator<Item = usize> {
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

impl PartialEq for Twist {
    fn eq(&self, other: &Self) -> bool {
        self.elbows == other.elbows && self.k() == other.k() && self.signature() == other.signature()
    }
}

impl Eq for Twist {}

impl Hash for Twist {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.k().hash(state);
        self.signature().hash(state);
        self.elbows.hash(state);
    }
}

impl PartialOrd for Twist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Twist {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.k(), self.signature(), self.elbows).cmp(&(other.k(), other.signature(), other.elbows))
    }
}

impl fmt::Debug for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Twist(k={}, ", self.k())?;
        if !self.is_classical() {
            write!(f, "ε={}, ", self.signature())?;
        }
        write!(f, "n={}, elbows={:?})", self.n(), self.interior_elbows())
    }
}

impl fmt::Display for Twist {
    /// ASCII picture, top row first: `+` cross, `/` elbow, `.` outside.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.n() + self.k();
        for r in (1..=w).rev() {
            for c in 1..=w {
                let ch = match self.shape.id(r, c) {
                    None => '.',
                    Some(id) if self.is_elbow_id(id) => '/',
                    Some(_) => '+',
                };
                write!(f, "{ch}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Contact graph of a twist.
#[derive(Clone, Debug)]
pub struct ContactGraph {
    pub n: usize,
    /// One arc per interior elbow (a multiset).
    pub arcs: Vec<(usize, usize)>,
    pub dag: Dag,
    pub acyclic: bool,
    /// Transitive closure, present when acyclic.
    pub closure: Option<Dag>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{Sign, Signature};

    #[test]
    fn zero_twist_is_diagonal() {
        let t = Twist::classical(0, 3, &[]).unwrap();
        let elbows: Vec<_> = ids(t.elbow_mask()).map(|i| t.shape().coords(i)).collect();
        assert_eq!(elbows, vec![(1, 1), (2, 2), (3, 3)]);
        assert!(t.contact_arcs().is_empty());
    }

    #[test]
    fn single_pipe_has_2k_plus_1_bends() {
        for k in 0..4 {
            let t = Twist::classical(k, 1, &[]).unwrap();
            assert_eq!(t.bends(1), (k, k + 1));
        }
    }

    #[test]
    fn two_one_two_twists() {
        let a = Twist::classical(1, 2, &[(2, 1)]).unwrap();
        let b = Twist::classical(1, 2, &[(3, 2)]).unwrap();
        assert_eq!(a.contact_arcs(), vec![(1, 2)]);
        assert_eq!(b.contact_arcs(), vec![(2, 1)]);
        let f = a.flip_info(2, 1).unwrap();
        assert_eq!(f.twist, b);
        assert!(f.increasing);
        assert_eq!(b.flip(3, 2).unwrap(), a);
    }

    #[test]
    fn errors() {
        assert_eq!(
            Twist::classical(1, 2, &[(1, 3)]).unwrap_err(),
            Error::OutOfShape { row: 1, col: 3 }
        );
        assert!(matches!(
            Twist::classical(1, 2, &[]),
            Err(Error::BadEndpoint { .. }) | Err(Error::InvariantViolation(_))
        ));
        let a = Twist::classical(1, 2, &[(2, 1)]).unwrap();
        assert_eq!(a.flip(3, 2).unwrap_err(), Error::NotAnElbow { row: 3, col: 2 });
        assert_eq!(a.flip(1, 1).unwrap_err(), Error::BoundaryElbow { row: 1, col: 1 });
    }

    #[test]
    fn double_crossing_detected() {
        // k=0, n=3 with a cross added where the reduced filling needs an elbow
        // is impossible, so use a k=1 filling with too few elbows.
        let all = Twist::classical(1, 3, &[(2, 1), (3, 2), (4, 3)]);
        assert!(all.is_err());
    }

    #[test]
    fn all_plus_single_pipe() {
        let s = crate::shape::Shape::get(1, &Signature(vec![Sign::Plus])).unwrap();
        let t = Twist::new(s, &[]).unwrap();
        // Reflection exchanges the roles of the two bend types.
        assert_eq!(t.bends(1), (2, 1));
    }
}
