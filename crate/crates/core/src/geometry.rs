//! Vertex coordinates of permutahedra, brick polytopes and zonotopes,
//! incidence and braid cones, skeleton orientation and facet normals.

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::Budget;
use crate::perm::Perm;
use crate::poset::Dag;
use crate::recoil::Orientation;
use crate::shape::Dir;
use crate::twist::Twist;

/// Exact rational coordinate.
pub type Q = Ratio<i64>;

/// Exact vertex coordinates in `R^n`.
pub type VertexCoords = Vec<Q>;

/// `k · τ⁻¹ − k(n+1)/2 · 𝟙`.
pub fn permutahedron_vertex(k: usize, tau: &Perm) -> VertexCoords {
    let n = tau.len() as i64;
    let k = k as i64;
    tau.inverse()
        .into_iter()
        .map(|pos| Q::from_integer(k * pos as i64) - Q::new(k * (n + 1), 2))
        .collect()
}

/// Weight of the segment `[e_i, e_j]` in the zonotope of `G^k(n)`.
pub fn zonotope_weight(i: usize, j: usize, k: usize, n: usize) -> i64 {
    let (i, j) = (i.min(j) as i64, i.max(j) as i64);
    let (k, n) = (k as i64, n as i64);
    let d = j - i;
    if d < k {
        n + k - 2 * d
    } else if d == k {
        let m = i.min(n + 1 - j);
        m * (n + k - 1 - m)
    } else {
        0
    }
}

/// Translation making the zonotope vertices sum to zero: the total weight
/// divided by `n`.
pub fn zonotope_offset(k: usize, n: usize) -> Q {
    if n == 0 {
        return Q::zero();
    }
    let total: i64 = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .map(|(i, j)| zonotope_weight(i, j, k, n))
        .sum();
    Q::new(total, n as i64)
}

/// Weighted indegrees of a total orientation of `G^k(n)`, translated into
/// the hyperplane `Σ x_i = 0`.
pub fn zonotope_vertex(o: &Orientation) -> Result<VertexCoords> {
    if !o.is_total() {
        return Err(Error::InvariantViolation("orientation is not total".into()));
    }
    let (k, n) = (o.k(), o.n());
    let mut x = vec![0i64; n];
    for (i, j) in o.edges() {
        let head = if o.get(i, j) == Some(true) { j } else { i };
        x[head - 1] += zonotope_weight(i, j, k, n);
    }
    let off = zonotope_offset(k, n);
    Ok(x.into_iter().map(|v| Q::from_integer(v) - off).collect())
}

/// Number of boxes of the shape lying below pipe `p` and inside the
/// rectangle spanned by its endpoints.
pub fn brick_area(t: &Twist, p: usize) -> usize {
    let shape = t.shape();
    let path = t.pipe_path(p);
    let (r0, _) = shape.coords(path[0].0);
    // Lowest row visited by the pipe in each column it meets.
    let mut lowest: Vec<(usize, usize)> = Vec::new();
    for &(b, from) in &path {
        let (r, c) = shape.coords(b);
        if from == Dir::W || lowest.is_empty() {
            lowest.push((c, r));
        }
    }
    lowest
        .into_iter()
        .map(|(c, lo)| (r0..lo).filter(|&r| shape.id(r, c).is_some()).count())
        .sum()
}

/// Brick areas of all pipes.
pub fn brick_areas(t: &Twist) -> Vec<usize> {
    (1..=t.n()).map(|p| brick_area(t, p)).collect()
}

/// Brick vector of a classical twist: brick areas minus `k(n-1)/2`. The
/// reduced shape omits `k(k+1)/2` bricks from every pipe's rectangle, so the
/// vertex of the identity agrees with the permutahedron vertex `k·[i] − k(n+1)/2`.
pub fn brick_vector(t: &Twist) -> Result<VertexCoords> {
    if !t.is_classical() {
        return Err(Error::InvariantViolation(
            "brick vectors of Cambrian twists need a centring, see cambrian".into(),
        ));
    }
    let off = Q::new((t.k() * t.n().saturating_sub(1)) as i64, 2);
    Ok(brick_areas(t)
        .into_iter()
        .map(|a| Q::from_integer(a as i64) - off)
        .collect())
}

/// `U = Σ (n + 1 − 2i) e_i`.
pub fn skeleton_direction(n: usize) -> Vec<i64> {
    (1..=n).map(|i| n as i64 + 1 - 2 * i as i64).collect()
}

/// `⟨u, x⟩`.
pub fn dot(u: &[i64], x: &[Q]) -> Q {
    u.iter().zip(x).map(|(&a, b)| b * a).sum()
}

/// A polyhedral cone in `H` given by a relation `◁` on `[n]`: the incidence
/// cone is generated by `e_i − e_j` for `i ◁ j`, the braid cone is cut out
/// by `x_i ≤ x_j` for `i ◁ j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCone {
    relation: Dag,
    closure: Dag,
}

impl PolyCone {
    pub fn new(relation: Dag) -> Result<PolyCone> {
        let closure = relation.closure()?;
        Ok(PolyCone { relation, closure })
    }

    /// The cone of a permutation, from the chain `τ_1 ◁ ... ◁ τ_n`.
    pub fn of_perm(tau: &Perm) -> PolyCone {
        PolyCone::new(Dag::from_perm(tau)).expect("chains are acyclic")
    }

    /// The cone of an acyclic twist, from its contact graph.
    pub fn of_twist(t: &Twist) -> Result<PolyCone> {
        PolyCone::new(t.contact_graph().dag)
    }

    /// The cone of an acyclic (partial) orientation.
    pub fn of_orientation(o: &Orientation) -> Result<PolyCone> {
        PolyCone::new(o.to_dag())
    }

    pub fn n(&self) -> usize {
        self.relation.n()
    }

    /// Generators `e_i − e_j` of the incidence cone.
    pub fn generators(&self) -> Vec<(usize, usize)> {
        self.relation.arcs()
    }

    /// Inequalities `x_i ≤ x_j` of the braid cone.
    pub fn inequalities(&self) -> Vec<(usize, usize)> {
        self.relation.arcs()
    }

    /// Whether `x` satisfies every braid inequality.
    pub fn braid_contains_point(&self, x: &[Q]) -> bool {
        self.inequalities().iter().all(|&(i, j)| x[i - 1] <= x[j - 1])
    }

    /// Whether the incidence cone contains `e_i − e_j`.
    pub fn incidence_contains_ray(&self, i: usize, j: usize) -> bool {
        self.closure.less(i, j)
    }
}

/// Whether the braid cone of `inner` lies in the braid cone of `outer`.
pub fn braid_contains(outer: &PolyCone, inner: &PolyCone) -> bool {
    outer.n() == inner.n() && outer.inequalities().iter().all(|&(i, j)| inner.closure.less(i, j))
}

/// Whether the incidence cone of `inner` lies in the incidence cone of `outer`.
pub fn incidence_contains(outer: &PolyCone, inner: &PolyCone) -> bool {
    outer.n() == inner.n()
        && inner
            .generators()
            .iter()
            .all(|&(i, j)| outer.incidence_contains_ray(i, j))
}

/// Checks that every increasing flip between acyclic `(k, n)`-twists moves
/// the brick vector in the direction `U`.
pub fn skeleton_orientation_check(k: usize, n: usize, budget: Budget) -> Result<bool> {
    let u = skeleton_direction(n);
    let twists = crate::lattice::enumerate_twists(k, n, true, budget)?;
    for t in &twists {
        let x = brick_vector(t)?;
        for s in t.increasing_flips() {
            if s.is_acyclic() && dot(&u, &brick_vector(&s)?) <= dot(&u, &x) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `s` (bits `0..n`, bit `i` for position `i + 1`) is a proper
/// `k`-connected sequence: not constant, and no factor `1 0^ℓ 1` with `ℓ ≥ k`.
pub fn is_k_connected(k: usize, n: usize, s: u64) -> bool {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    if s == 0 || s == full {
        return false;
    }
    let ones: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
    ones.windows(2).all(|w| w[1] - w[0] - 1 < k)
}

/// Number of facets of the `(k, n)` brick polytope, by enumerating proper
/// `k`-connected sequences.
pub fn facet_normal_count(k: usize, n: usize, budget: Budget) -> Result<u64> {
    if n >= 64 {
        return Err(Error::BudgetExceeded(budget.0));
    }
    budget.check(1usize << n)?;
    Ok((0..1u64 << n).filter(|&s| is_k_connected(k, n, s)).count() as u64)
}

/// Coefficient of `t^n` in `t²(2 − t^k) / ((1 − 2t + t^{k+1})(1 − t))`, for `k ≥ 1`.
pub fn facet_series_coefficient(k: usize, n: usize) -> i128 {
    let len = n + 1;
    let mut num = vec![0i128; len.max(k + 3)];
    num[2] += 2;
    num[k + 2] -= 1;
    let mut den = vec![0i128; k + 3];
    // (1 − 2t + t^{k+1})(1 − t)
    let a = {
        let mut a = vec![0i128; k + 2];
        a[0] = 1;
        a[1] -= 2;
        a[k + 1] += 1;
        a
    };
    for (i, &c) in a.iter().enumerate() {
        den[i] += c;
        den[i + 1] -= c;
    }
    let mut q = vec![0i128; len];
    for m in 0..len {
        let mut v = num[m];
        for i in 1..den.len().min(m + 1) {
            v -= den[i] * q[m - i];
        }
        q[m] = v;
    }
    q[n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::insertion::insert_permutation;
    use crate::lattice::enumerate_twists;
    use crate::recoil::{enumerate_acyclic_orientations, recoil_scheme};

    #[test]
    fn permutahedron_is_centred() {
        for k in 0..4 {
            for tau in Perm::all(4) {
                let x = permutahedron_vertex(k, &tau);
                assert_eq!(x.iter().sum::<Q>(), Q::zero());
            }
        }
    }

    #[test]
    fn weights_vanish_beyond_k() {
        for n in 2..8 {
            for i in 1..n {
                let m = i.min(n - i) as i64;
                assert_eq!(zonotope_weight(i, i + 1, 1, n), m * (n as i64 - m));
                for j in i + 2..=n {
                    assert_eq!(zonotope_weight(i, j, 1, n), 0);
                }
            }
        }
    }

    #[test]
    fn offset_closed_form_for_k1() {
        for n in 1..10 {
            let n_ = n as i64;
            assert_eq!(zonotope_offset(1, n), Q::new((n_ - 1) * (n_ + 1), 6));
        }
    }

    #[test]
    fn zonotope_vertices_are_centred_and_distinct() {
        for k in 0..3 {
            for n in 1..6 {
                let mut seen = std::collections::HashSet::new();
                for o in enumerate_acyclic_orientations(k, n) {
                    let x = zonotope_vertex(&o).unwrap();
                    assert_eq!(x.iter().sum::<Q>(), Q::zero());
                    assert!(seen.insert(x));
                }
            }
        }
    }

    #[test]
    fn brick_vectors_are_centred() {
        for k in 0..3 {
            for n in 1..5 {
                for t in enumerate_twists(k, n, false, Budget::default()).unwrap() {
                    let x = brick_vector(&t).unwrap();
                    assert_eq!(x.iter().sum::<Q>(), Q::zero(), "k={k} n={n}\n{t}");
                }
            }
        }
    }

    #[test]
    fn brick_vectors_separate_acyclic_twists() {
        let twists = enumerate_twists(1, 4, true, Budget::default()).unwrap();
        let vs: std::collections::HashSet<_> = twists.iter().map(|t| brick_vector(t).unwrap()).collect();
        assert_eq!(vs.len(), 14);
    }

    #[test]
    fn skeleton_small() {
        for k in 0..3 {
            for n in 1..5 {
                assert!(skeleton_orientation_check(k, n, Budget::default()).unwrap());
            }
        }
    }

    #[test]
    fn cones_of_the_triangle() {
        for k in 0..3 {
            for tau in Perm::all(4) {
                let c = PolyCone::of_perm(&tau);
                let t = insert_permutation(k, &tau).unwrap();
                let o = recoil_scheme(k, &tau);
                let ct = PolyCone::of_twist(&t).unwrap();
                let co = PolyCone::of_orientation(&o).unwrap();
                assert!(braid_contains(&ct, &c));
                assert!(braid_contains(&co, &ct));
                assert!(incidence_contains(&c, &ct));
            }
        }
    }

    #[test]
    fn chain_cone_is_simplicial() {
        let c = PolyCone::of_perm(&Perm::new(vec![2, 4, 1, 3]).unwrap());
        assert_eq!(c.inequalities().len(), 3);
    }

    #[test]
    fn facets_small() {
        for k in 1..4 {
            for n in 1..13 {
                assert_eq!(
                    facet_normal_count(k, n, Budget::default()).unwrap() as i128,
                    facet_series_coefficient(k, n),
                    "k={k} n={n}"
                );
            }
            for n in 1..=k + 1 {
                assert_eq!(facet_normal_count(k, n, Budget::default()).unwrap(), (1 << n) - 2);
            }
        }
        assert_eq!(facet_series_coefficient(2, 10), 363);
    }
}
