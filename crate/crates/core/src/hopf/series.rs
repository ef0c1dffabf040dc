//! Truncated multivariate power series and integer point transforms of
//! poset cones.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::poset::Dag;
use crate::twist::Twist;

/// Largest supported truncation degree.
pub const MAX_DEGREE: usize = 8;

/// A power series in `t_1, ..., t_m` known up to total degree `D`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Vec<u8>, i64>,
}

impl TruncatedSeries {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        TruncatedSeries {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, degree: usize) -> Self {
        TruncatedSeries::monomial(nvars, degree, &vec![0; nvars])
    }

    /// The monomial `t^e`, or zero if it exceeds the truncation degree.
    pub fn monomial(nvars: usize, degree: usize, exps: &[u8]) -> Self {
        let mut s = TruncatedSeries::zero(nvars, degree);
        s.add_term(exps.to_vec(), 1);
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn add_term(&mut self, exps: Vec<u8>, c: i64) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c == 0 || exps.iter().map(|&e| e as usize).sum::<usize>() > self.degree {
            return;
        }
        let e = self.terms.entry(exps.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&exps);
        }
    }

    pub fn coefficient(&self, exps: &[u8]) -> i64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], i64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &TruncatedSeries) -> Result<()> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::MixedBasis);
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(other)?;
        let mut out = TruncatedSeries::zero(self.nvars, self.degree);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e: Vec<u8> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// `Σ_{j ≥ 0} (t^e)^j`, truncated.
    pub fn geometric(nvars: usize, degree: usize, exps: &[u8]) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(nvars, degree);
        let step: usize = exps.iter().map(|&e| e as usize).sum();
        if step == 0 {
            out.add_term(exps.to_vec(), 1);
            return out;
        }
        for j in 0..=degree / step {
            out.add_term(exps.iter().map(|&e| e * j as u8).collect(), 1);
        }
        out
    }

    /// Renames `t_i` to `t_{i + offset}` in a series with `nvars` variables.
    pub fn shift(&self, offset: usize, nvars: usize) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(nvars, self.degree);
        for (e, &c) in &self.terms {
            let mut f = vec![0u8; nvars];
            f[offset..offset + e.len()].copy_from_slice(e);
            out.add_term(f, c);
        }
        out
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries(deg ≤ {}) ", self.degree)?;
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Integer point transform of the cone `{x ∈ N^n : x_i ≤ x_j for i ◁ j,
/// strict when i > j}` up to total degree `D`, by direct enumeration.
pub fn integer_point_transform(dag: &Dag, degree: usize) -> Result<TruncatedSeries> {
    if degree > MAX_DEGREE {
        return Err(Error::BudgetExceeded(MAX_DEGREE));
    }
    if !dag.is_acyclic() {
        return Err(Error::CyclicInput);
    }
    let n = dag.n();
    let arcs = dag.arcs();
    let mut out = TruncatedSeries::zero(n, degree);
    let mut x = vec![0u8; n];
    fn rec(i: usize, left: usize, x: &mut Vec<u8>, arcs: &[(usize, usize)], out: &mut TruncatedSeries) {
        if i == x.len() {
            let ok = arcs.iter().all(|&(a, b)| {
                let (xa, xb) = (x[a - 1], x[b - 1]);
                if a < b {
                    xa <= xb
                } else {
                    xa < xb
                }
            });
            if ok {
                out.add_term(x.clone(), 1);
            }
            return;
        }
        for v in 0..=left {
            x[i] = v as u8;
            rec(i + 1, left - v, x, arcs, out);
        }
        x[i] = 0;
    }
    rec(0, degree, &mut x, &arcs, &mut out);
    Ok(out)
}

/// Integer point transform of the chain `τ_1 ◁ ... ◁ τ_n`.
pub fn integer_point_transform_perm(tau: &Perm, degree: usize) -> Result<TruncatedSeries> {
    integer_point_transform(&Dag::from_perm(tau), degree)
}

/// Integer point transform of the contact order of an acyclic twist.
pub fn integer_point_transform_twist(t: &Twist, degree: usize) -> Result<TruncatedSeries> {
    let g = t.contact_graph();
    integer_point_transform(&g.closure.ok_or(Error::CyclicInput)?, degree)
}

/// Which suffix product a descent `τ_i > τ_{i+1}` contributes to the
/// numerator of the closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DescentNumerator {
    /// `t_{τ_i} ⋯ t_{τ_n}`.
    FromDescentTop,
    /// `t_{τ_{i+1}} ⋯ t_{τ_n}`.
    FromDescentBottom,
}

/// Closed form `∏_{descents} m_i / ∏_{i} (1 − t_{τ_i} ⋯ t_{τ_n})`, expanded
/// up to total degree `D`.
pub fn closed_form_transform(tau: &Perm, degree: usize, conv: DescentNumerator) -> TruncatedSeries {
    let n = tau.len();
    let w = tau.as_slice();
    let suffix = |start: usize| -> Vec<u8> {
        let mut e = vec![0u8; n];
        for &v in &w[start..] {
            e[v as usize - 1] = 1;
        }
        e
    };
    let mut out = TruncatedSeries::one(n, degree);
    for i in 0..n {
        out = out
            .mul(&TruncatedSeries::geometric(n, degree, &suffix(i)))
            .expect("same ring");
    }
    for i in 0..n.saturating_sub(1) {
        if w[i] > w[i + 1] {
            let start = match conv {
                DescentNumerator::FromDescentTop => i,
                DescentNumerator::FromDescentBottom => i + 1,
            };
            out = out
                .mul(&TruncatedSeries::monomial(n, degree, &suffix(start)))
                .expect("same ring");
        }
    }
    out
}
