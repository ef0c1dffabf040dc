//! Formal sums over combinatorial bases and the Hopf algebras on
//! permutations, twists and orientations.

use std::collections::BTreeMap;
use std::fmt;

pub mod fqsym;
pub mod series;
pub mod twist_algebra;
pub mod twistiform;

pub use fqsym::{coproduct_f, coproduct_g, product_f, product_g};
pub use series::TruncatedSeries;

/// A finite integer combination of basis elements, with no zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormalSum<K: Ord> {
    terms: BTreeMap<K, i64>,
}

/// Elements of a tensor square.
pub type Tensor<K> = FormalSum<(K, K)>;

impl<K: Ord + Clone> FormalSum<K> {
    pub fn zero() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }

    pub fn basis(key: K) -> Self {
        let mut s = FormalSum::zero();
        s.add_term(key, 1);
        s
    }

    /// Sum of the given keys, each with coefficient one (repeats add up).
    pub fn from_keys(keys: impl IntoIterator<Item = K>) -> Self {
        let mut s = FormalSum::zero();
        for k in keys {
            s.add_term(k, 1);
        }
        s
    }

    pub fn add_term(&mut self, key: K, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(key.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign(&mut self, other: &FormalSum<K>) {
        for (k, &c) in &other.terms {
            self.add_term(k.clone(), c);
        }
    }

    pub fn scale(&self, a: i64) -> Self {
        let mut s = FormalSum::zero();
        if a != 0 {
            for (k, &c) in &self.terms {
                s.terms.insert(k.clone(), c * a);
            }
        }
        s
    }

    pub fn coefficient(&self, key: &K) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    /// Number of keys with a non-zero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Terms in increasing key order.
    pub fn iter(&self) -> impl Iterator<Item = (&K, i64)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Whether every coefficient is one.
    pub fn is_multiplicity_free(&self) -> bool {
        self.terms.values().all(|&c| c == 1)
    }

    /// Linear extension of `f` on keys.
    pub fn map_linear<L: Ord + Clone, F>(&self, mut f: F) -> FormalSum<L>
    where
        F: FnMut(&K) -> FormalSum<L>,
    {
        let mut out = FormalSum::zero();
        for (k, &c) in &self.terms {
            out.add_assign(&f(k).scale(c));
        }
        out
    }

    /// Fallible linear extension of `f` on keys.
    pub fn try_map_linear<L: Ord + Clone, E, F>(&self, mut f: F) -> Result<FormalSum<L>, E>
    where
        F: FnMut(&K) -> Result<FormalSum<L>, E>,
    {
        let mut out = FormalSum::zero();
        for (k, &c) in &self.terms {
            out.add_assign(&f(k)?.scale(c));
        }
        Ok(out)
    }

    /// Bilinear extension of `f` to `self ⊗ other`.
    pub fn bilinear<K2: Ord + Clone, L: Ord + Clone, E, F>(
        &self,
        other: &FormalSum<K2>,
        mut f: F,
    ) -> Result<FormalSum<L>, E>
    where
        F: FnMut(&K, &K2) -> Result<FormalSum<L>, E>,
    {
        let mut out = FormalSum::zero();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                out.add_assign(&f(a, b)?.scale(ca * cb));
            }
        }
        Ok(out)
    }
}

impl<K: Ord + Clone> Default for FormalSum<K> {
    fn default() -> Self {
        FormalSum::zero()
    }
}

impl<K: Ord + Clone> FromIterator<(K, i64)> for FormalSum<K> {
    fn from_iter<I: IntoIterator<Item = (K, i64)>>(iter: I) -> Self {
        let mut s = FormalSum::zero();
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }
}

impl<K: Ord + fmt::Display> fmt::Display for FormalSum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "[{k}]")?;
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for FormalSum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Swaps the factors of each tensor.
pub fn flip_tensor<K: Ord + Clone>(t: &Tensor<K>) -> Tensor<K> {
    t.iter().map(|((a, b), c)| ((b.clone(), a.clone()), c)).collect()
}
