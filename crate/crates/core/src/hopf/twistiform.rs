//! The `3^k` partial products splitting the shifted shuffle, and their
//! split and associativity relations.

use std::fmt;
use std::str::FromStr;

use super::FormalSum;
use crate::error::{Error, Result};
use crate::hopf::twist_algebra::{p_expand, psi};
use crate::perm::{shifted_shuffle, Perm, Signature};
use crate::twist::Twist;

/// One letter of an operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    L,
    M,
    R,
}

/// An operation in `{l, m, r}^k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Operator(pub Vec<Letter>);

impl Operator {
    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// All `3^k` operations, in lexicographic order `l < m < r`.
    pub fn all(k: usize) -> Vec<Operator> {
        let mut out = vec![Vec::new()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|w: Vec<Letter>| {
                    [Letter::L, Letter::M, Letter::R].into_iter().map(move |l| {
                        let mut v = w.clone();
                        v.push(l);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(Operator).collect()
    }

    fn expect_len(&self, k: usize) -> Result<()> {
        if self.k() != k {
            return Err(Error::BadOperatorLength {
                got: self.k(),
                expected: k,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            let c = match l {
                Letter::L => 'l',
                Letter::M => 'm',
                Letter::R => 'r',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !matches!(c, ',' | ' '))
            .map(|c| match c {
                'l' => Ok(Letter::L),
                'm' => Ok(Letter::M),
                'r' => Ok(Letter::R),
                _ => Err(Error::parse("operator", format!("unexpected letter {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Operator)
    }
}

/// Whether `σ` respects `op` on its first letters (or on its last letters
/// when `backward`): an `l` (resp. `r`) position must exist and hold a value
/// `≤ n` (resp. `> n`), an `m` position is free.
fn respects(op: &Operator, sigma: &Perm, n: usize, backward: bool) -> bool {
    let w = sigma.as_slice();
    op.0.iter().enumerate().all(|(i, l)| {
        let pos = if backward {
            w.len().checked_sub(i + 1)
        } else {
            Some(i).filter(|&i| i < w.len())
        };
        match (l, pos) {
            (Letter::M, _) => true,
            (_, None) => false,
            (Letter::L, Some(p)) => (w[p] as usize) <= n,
            (Letter::R, Some(p)) => (w[p] as usize) > n,
        }
    })
}

/// The shuffles of `τ ⧢ τ'` selected by the forward operation `op`.
pub fn twistiform_words(op: &Operator, a: &Perm, b: &Perm) -> Vec<Perm> {
    shifted_shuffle(a, b)
        .into_iter()
        .filter(|s| respects(op, s, a.len(), false))
        .collect()
}

/// `x op y` on the `F` basis.
pub fn twistiform_f(op: &Operator, x: &FormalSum<Perm>, y: &FormalSum<Perm>) -> FormalSum<Perm> {
    x.bilinear(y, |a, b| {
        Ok::<_, Error>(FormalSum::from_keys(twistiform_words(op, a, b)))
    })
    .expect("infallible")
}

/// The mirrored operation, constraining the last letters, on the `F` basis.
pub fn mirrored_f(op: &Operator, x: &FormalSum<Perm>, y: &FormalSum<Perm>) -> FormalSum<Perm> {
    x.bilinear(y, |a, b| {
        Ok::<_, Error>(FormalSum::from_keys(
            shifted_shuffle(a, b)
                .into_iter()
                .filter(|s| respects(op, s, a.len(), true)),
        ))
    })
    .expect("infallible")
}

/// Rewrites an `F` combination as a `P` combination of `k`-twists on the
/// shape of signature `sig`, failing if it is not a union of full fibers.
pub fn f_to_p(k: usize, sig: &dyn Fn(usize) -> Signature, x: &FormalSum<Perm>) -> Result<FormalSum<Twist>> {
    let mut out = FormalSum::zero();
    let mut rest = x.clone();
    loop {
        let first = rest.iter().next().map(|(t, c)| (t.clone(), c));
        let Some((tau, c)) = first else { break };
        let t = psi(k, &sig(tau.len()), &tau)?;
        let fib = p_expand(&t)?;
        if let Some((s, _)) = fib.iter().find(|(s, _)| rest.coefficient(s) != c) {
            return Err(Error::InvariantViolation(format!("{s} breaks the fiber of {tau}")));
        }
        rest.add_assign(&fib.scale(-c));
        out.add_term(t, c);
    }
    Ok(out)
}

/// The mirrored operation on the `P` basis of the classical twist algebra.
pub fn mirrored_p(op: &Operator, x: &FormalSum<Twist>, y: &FormalSum<Twist>) -> Result<FormalSum<Twist>> {
    let mut k = None;
    for t in x.keys().chain(y.keys()) {
        if *k.get_or_insert(t.k()) != t.k() || !t.is_classical() {
            return Err(Error::MixedBasis);
        }
    }
    let Some(k) = k else {
        return Ok(FormalSum::zero());
    };
    op.expect_len(k)?;
    let fx = x.try_map_linear(p_expand)?;
    let fy = y.try_map_linear(p_expand)?;
    f_to_p(k, &Signature::all_minus, &mirrored_f(op, &fx, &fy))
}

/// A split relation `x (b m b') y = x (b l b') y + x (b r b') y`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SplitRelation {
    pub whole: Operator,
    pub left: Operator,
    pub right: Operator,
}

/// An associativity relation `x o1 (y o2 z) = (x o3 y) o4 z`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AssocRelation {
    pub outer_left: Operator,
    pub inner_right: Operator,
    pub inner_left: Operator,
    pub outer_right: Operator,
}

/// The `k · 3^{k−1}` split relations.
pub fn split_relations(k: usize) -> Vec<SplitRelation> {
    let mut out = Vec::new();
    for p in 0..k {
        for op in Operator::all(k) {
            if op.0[p] != Letter::M {
                continue;
            }
            let with = |l: Letter| {
                let mut v = op.0.clone();
                v[p] = l;
                Operator(v)
            };
            out.push(SplitRelation {
                left: with(Letter::L),
                right: with(Letter::R),
                whole: op,
            });
        }
    }
    out
}

/// Variable of an associativity pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
    Z,
}

/// The four operations of the associativity relation indexed by `w`.
pub fn assoc_relation(w: &[Var]) -> AssocRelation {
    let k = w.len();
    let pick = |sub: &[Var], first: Var| -> Operator {
        Operator(
            (0..k)
                .map(|p| match sub.get(p) {
                    Some(&v) if v == first => Letter::L,
                    Some(_) => Letter::R,
                    None => Letter::M,
                })
                .collect(),
        )
    };
    let yz: Vec<Var> = w.iter().copied().filter(|&v| v != Var::X).collect();
    let xy: Vec<Var> = w.iter().copied().filter(|&v| v != Var::Z).collect();
    AssocRelation {
        outer_left: Operator(
            w.iter()
                .map(|&v| if v == Var::X { Letter::L } else { Letter::R })
                .collect(),
        ),
        inner_right: pick(&yz, Var::Y),
        inner_left: pick(&xy, Var::X),
        outer_right: Operator(
            w.iter()
                .map(|&v| if v == Var::Z { Letter::R } else { Letter::L })
                .collect(),
        ),
    }
}

/// The `3^k` associativity relations.
pub fn associativity_relations(k: usize) -> Vec<AssocRelation> {
    let mut words = vec![Vec::new()];
    for _ in 0..k {
        words = words
            .into_iter()
            .flat_map(|w: Vec<Var>| {
                [Var::X, Var::Y, Var::Z].into_iter().map(move |v| {
                    let mut u = w.clone();
                    u.push(v);
                    u
                })
            })
            .collect();
    }
    words.iter().map(|w| assoc_relation(w)).collect()
}

/// Checks every split and associativity relation on `F` basis elements of
/// total size at most `max_total`.
pub fn twistiform_relations_check(k: usize, max_total: usize) -> bool {
    let perms: Vec<(usize, FormalSum<Perm>)> = (1..max_total)
        .flat_map(Perm::all)
        .map(|p| (p.len(), FormalSum::basis(p)))
        .collect();
    for r in split_relations(k) {
        for (sx, x) in &perms {
            for (sy, y) in &perms {
                if sx + sy > max_total {
                    continue;
                }
                let mut rhs = twistiform_f(&r.left, x, y);
                rhs.add_assign(&twistiform_f(&r.right, x, y));
                if twistiform_f(&r.whole, x, y) != rhs {
                    return false;
                }
            }
        }
    }
    for r in associativity_relations(k) {
        for (sx, x) in &perms {
            for (sy, y) in &perms {
                for (sz, z) in &perms {
                    if sx + sy + sz > max_total {
                        continue;
                    }
                    let lhs = twistiform_f(&r.outer_left, x, &twistiform_f(&r.inner_right, y, z));
                    let rhs = twistiform_f(&r.outer_right, &twistiform_f(&r.inner_left, x, y), z);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}
