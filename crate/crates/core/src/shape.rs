//! Staircase shapes bounded by an enter path, an exit path and two accordion
//! paths. The signature `-^n` gives the classical shape
//! `{(r, c) : 1 ≤ c ≤ r ≤ n + min(c, k)}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::perm::{Sign, Signature};

/// Side of a box.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Dir {
    W = 0,
    S = 1,
    E = 2,
    N = 3,
}

impl Dir {
    pub fn opposite(self) -> Dir {
        match self {
            Dir::W => Dir::E,
            Dir::E => Dir::W,
            Dir::S => Dir::N,
            Dir::N => Dir::S,
        }
    }
}

/// What lies across a side of a box.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// Another box of the shape (by id).
    Inner(u16),
    /// The entry of pipe `p` (1-based).
    Entry(u8),
    /// The exit of pipe `p` (1-based).
    Exit(u8),
    Wall,
}

pub const TRIVIAL_SE: u8 = 1;
pub const TRIVIAL_WN: u8 = 2;

/// The shape `Sh^k_ε` with its boxes in column-major order.
#[derive(Debug)]
pub struct Shape {
    k: usize,
    sig: Signature,
    boxes: Vec<(u8, u8)>,
    grid: Vec<u16>,
    side: usize,
    sides: Vec<[Side; 4]>,
    trivial: Vec<u8>,
    entries: Vec<(u16, Dir)>,
    exits: Vec<(u16, Dir)>,
    interior_mask: u128,
}

const NONE: u16 = u16::MAX;

/// Maximum number of boxes (twists are stored as 128-bit masks).
pub const MAX_BOXES: usize = 128;

type ShapeCache = Mutex<HashMap<(usize, Signature), Arc<Shape>>>;

fn shape_cache() -> &'static ShapeCache {
    static CACHE: OnceLock<ShapeCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Shape {
    /// The shared shape for `(k, ε)`.
    pub fn get(k: usize, sig: &Signature) -> Result<Arc<Shape>> {
        let key = (k, sig.clone());
        if let Some(s) = shape_cache().lock().expect("shape cache").get(&key) {
            return Ok(s.clone());
        }
        let s = Arc::new(Shape::build(k, sig)?);
        shape_cache()
            .lock()
            .expect("shape cache")
            .entry(key)
            .or_insert(s.clone());
        Ok(s)
    }

    /// The classical shape for `(k, n)`.
    pub fn classical(k: usize, n: usize) -> Result<Arc<Shape>> {
        Shape::get(k, &Signature::all_minus(n))
    }

    fn build(k: usize, sig: &Signature) -> Result<Shape> {
        let n = sig.len();
        let plus = sig.count(Sign::Plus);
        let minus = n - plus;
        let w = n + k;
        let expected = k * (n + 1) + n * (n + 1) / 2;
        if expected > MAX_BOXES || w > 250 {
            return Err(Error::InvariantViolation(format!(
                "shape with {expected} boxes exceeds the supported size"
            )));
        }

        #[derive(Clone, Copy, PartialEq)]
        enum Kind {
            Entry(u8),
            Exit(u8),
            Wall,
        }
        // Unit edges keyed by (x, y, vertical).
        let mut edges: HashMap<(usize, usize, bool), (Kind, u32)> = HashMap::new();
        let mut add = |x0: usize, y0: usize, x1: usize, y1: usize, kind: Kind| {
            let key = if x0 == x1 {
                (x0, y0.min(y1), true)
            } else {
                (x0.min(x1), y0, false)
            };
            let e = edges.entry(key).or_insert((kind, 0));
            e.1 += 1;
            if kind != Kind::Wall {
                e.0 = kind;
            }
        };

        // Enter path from (plus, 0).
        let (mut x, mut y) = (plus, 0);
        for (p, s) in sig.0.iter().enumerate() {
            let (nx, ny) = match s {
                Sign::Minus => (x, y + 1),
                Sign::Plus => (x - 1, y),
            };
            add(x, y, nx, ny, Kind::Entry(p as u8 + 1));
            (x, y) = (nx, ny);
        }
        // Upper accordion (NE)^{plus+k} from (0, minus).
        let (mut x, mut y) = (0, minus);
        for _ in 0..plus + k {
            add(x, y, x, y + 1, Kind::Wall);
            add(x, y + 1, x + 1, y + 1, Kind::Wall);
            (x, y) = (x + 1, y + 1);
        }
        // Exit path from (plus + k, n + k).
        let (mut x, mut y) = (plus + k, n + k);
        for (p, s) in sig.0.iter().enumerate() {
            let (nx, ny) = match s {
                Sign::Minus => (x + 1, y),
                Sign::Plus => (x, y - 1),
            };
            add(x, y, nx, ny, Kind::Exit(p as u8 + 1));
            (x, y) = (nx, ny);
        }
        // Lower accordion (EN)^{minus+k} from (plus, 0).
        let (mut x, mut y) = (plus, 0);
        for _ in 0..minus + k {
            add(x, y, x + 1, y, Kind::Wall);
            add(x + 1, y, x + 1, y + 1, Kind::Wall);
            (x, y) = (x + 1, y + 1);
        }

        // Inside test by ray casting to the west from each box centre.
        let mut grid = vec![NONE; w * w];
        let mut boxes = Vec::new();
        for c in 1..=w {
            for r in 1..=w {
                let crossings: u32 = (0..c).filter_map(|x| edges.get(&(x, r - 1, true))).map(|e| e.1).sum();
                if crossings % 2 == 1 {
                    grid[(r - 1) * w + (c - 1)] = boxes.len() as u16;
                    boxes.push((r as u8, c as u8));
                }
            }
        }
        if boxes.len() != expected {
            return Err(Error::InvariantViolation(format!(
                "shape for k={k}, ε={sig} has {} boxes, expected {expected}",
                boxes.len()
            )));
        }

        let at = |r: usize, c: usize| -> u16 {
            if r == 0 || c == 0 || r > w || c > w {
                NONE
            } else {
                grid[(r - 1) * w + (c - 1)]
            }
        };
        let mut sides = Vec::with_capacity(boxes.len());
        let mut trivial = Vec::with_capacity(boxes.len());
        let mut entries = vec![(NONE, Dir::W); n];
        let mut exits = vec![(NONE, Dir::N); n];
        for (id, &(r, c)) in boxes.iter().enumerate() {
            let (r, c) = (r as usize, c as usize);
            let geo = [
                ((c - 1, r - 1, true), (r, c - 1)),
                ((c - 1, r - 1, false), (r - 1, c)),
                ((c, r - 1, true), (r, c + 1)),
                ((c - 1, r, false), (r + 1, c)),
            ];
            let mut s = [Side::Wall; 4];
            for (d, (ekey, (nr, nc))) in geo.into_iter().enumerate() {
                s[d] = match edges.get(&ekey).map(|e| e.0) {
                    Some(Kind::Entry(p)) => {
                        entries[p as usize - 1] = (id as u16, DIRS[d]);
                        Side::Entry(p)
                    }
                    Some(Kind::Exit(p)) => {
                        exits[p as usize - 1] = (id as u16, DIRS[d]);
                        Side::Exit(p)
                    }
                    Some(Kind::Wall) => Side::Wall,
                    None => {
                        let nb = at(nr, nc);
                        if nb == NONE {
                            return Err(Error::InvariantViolation(format!("box ({r}, {c}) has an open side")));
                        }
                        Side::Inner(nb)
                    }
                };
            }
            let wall = |d: Dir| s[d as usize] == Side::Wall;
            let mut t = 0;
            if wall(Dir::S) && wall(Dir::E) {
                t |= TRIVIAL_SE;
            }
            if wall(Dir::W) && wall(Dir::N) {
                t |= TRIVIAL_WN;
            }
            let walls = s.iter().filter(|&&x| x == Side::Wall).count();
            let expected_walls = 2 * (t.count_ones() as usize);
            if walls != expected_walls {
                return Err(Error::InvariantViolation(format!("box ({r}, {c}) has unpaired walls")));
            }
            sides.push(s);
            trivial.push(t);
        }
        if entries.iter().chain(&exits).any(|e| e.0 == NONE) {
            return Err(Error::InvariantViolation("missing entry or exit".into()));
        }
        let mut interior_mask = 0u128;
        for (id, &t) in trivial.iter().enumerate() {
            if t == 0 {
                interior_mask |= 1 << id;
            }
        }
        Ok(Shape {
            k,
            sig: sig.clone(),
            boxes,
            grid,
            side: w,
            sides,
            trivial,
            entries,
            exits,
            interior_mask,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.sig.len()
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn is_classical(&self) -> bool {
        self.sig.is_classical()
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    /// `(row, col)` of box `id`.
    pub fn coords(&self, id: usize) -> (usize, usize) {
        let (r, c) = self.boxes[id];
        (r as usize, c as usize)
    }

    /// Box id of `(row, col)`, if it lies in the shape.
    pub fn id(&self, r: usize, c: usize) -> Option<usize> {
        if r == 0 || c == 0 || r > self.side || c > self.side {
            return None;
        }
        let v = self.grid[(r - 1) * self.side + (c - 1)];
        (v != NONE).then_some(v as usize)
    }

    pub fn side(&self, id: usize, d: Dir) -> Side {
        self.sides[id][d as usize]
    }

    /// Which arcs of box `id` are cut off by walls.
    pub fn trivial(&self, id: usize) -> u8 {
        self.trivial[id]
    }

    /// Boxes that must be elbows (one of their arcs is cut off).
    pub fn is_forced(&self, id: usize) -> bool {
        self.trivial[id] != 0
    }

    /// Mask of the boxes free to be elbows or crosses.
    pub fn interior_mask(&self) -> u128 {
        self.interior_mask
    }

    /// Mask of the forced boxes.
    pub fn forced_mask(&self) -> u128 {
        self.full_mask() & !self.interior_mask
    }

    pub fn full_mask(&self) -> u128 {
        if self.boxes.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.boxes.len()) - 1
        }
    }

    /// Box and side where pipe `p` enters.
    pub fn entry(&self, p: usize) -> (usize, Dir) {
        let (b, d) = self.entries[p - 1];
        (b as usize, d)
    }

    /// Box and side where pipe `p` exits.
    pub fn exit(&self, p: usize) -> (usize, Dir) {
        let (b, d) = self.exits[p - 1];
        (b as usize, d)
    }
}

const DIRS: [Dir; 4] = [Dir::W, Dir::S, Dir::E, Dir::N];

/// Number of boxes of a `(k, n)` shape.
pub fn box_count(k: usize, n: usize) -> usize {
    k * (n + 1) + n * (n + 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        Signature(
            s.chars()
                .map(|c| if c == '+' { Sign::Plus } else { Sign::Minus })
                .collect(),
        )
    }

    #[test]
    fn classical_shape_boxes() {
        for k in 0..4 {
            for n in 0..6 {
                let s = Shape::classical(k, n).unwrap();
                let mut expected = Vec::new();
                for c in 1..=n + k {
                    for r in c..=n + c.min(k) {
                        expected.push((r, c));
                    }
                }
                let got: Vec<_> = (0..s.len()).map(|i| s.coords(i)).collect();
                assert_eq!(got, expected, "k={k} n={n}");
                for i in 0..s.len() {
                    let (r, c) = s.coords(i);
                    let forced = r == c || (r > n && r == n + c && c <= k);
                    assert_eq!(s.is_forced(i), forced, "k={k} n={n} box ({r},{c})");
                }
                for p in 1..=n {
                    assert_eq!(s.entry(p), (s.id(p, 1).unwrap(), Dir::W));
                    assert_eq!(s.exit(p), (s.id(n + (p + k).min(k), p + k).unwrap(), Dir::N));
                }
            }
        }
    }

    #[test]
    fn all_signatures_have_classical_box_count() {
        for k in 0..3 {
            for n in 0..5 {
                for e in Signature::all(n) {
                    let s = Shape::get(k, &e).unwrap();
                    assert_eq!(s.len(), box_count(k, n));
                    assert_eq!(
                        s.interior_mask().count_ones() as usize,
                        box_count(k, n) - (n + 2 * k).min(box_count(k, n)),
                        "k={k} ε={e}"
                    );
                }
            }
        }
    }

    #[test]
    fn all_plus_is_the_transpose() {
        for k in 0..3 {
            for n in 1..5 {
                let a = Shape::classical(k, n).unwrap();
                let b = Shape::get(k, &Signature::all_plus(n)).unwrap();
                for i in 0..a.len() {
                    let (r, c) = a.coords(i);
                    assert!(b.id(c, r).is_some());
                }
            }
        }
    }

    #[test]
    fn mixed_signature_builds() {
        let s = Shape::get(2, &sig("-++--")).unwrap();
        assert_eq!(s.len(), box_count(2, 5));
    }
}
