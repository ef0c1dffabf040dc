//! Permutations, signed permutations and the weak order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `[n]` in one-line notation, values `1..=n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Perm(Vec<u8>);

impl TryFrom<Vec<u8>> for Perm {
    type Error = Error;
    fn try_from(word: Vec<u8>) -> Result<Self> {
        Perm::new(word)
    }
}

impl From<Perm> for Vec<u8> {
    fn from(p: Perm) -> Vec<u8> {
        p.0
    }
}

impl Perm {
    pub fn new(word: Vec<u8>) -> Result<Self> {
        let n = word.len();
        if n > 250 {
            return Err(Error::InvariantViolation("permutation too long".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &word {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvariantViolation(format!(
                    "{word:?} is not a permutation of [{n}]"
                )));
            }
            seen[v] = true;
        }
        Ok(Perm(word))
    }

    pub(crate) fn from_vec_unchecked(word: Vec<u8>) -> Self {
        debug_assert!(Perm::new(word.clone()).is_ok());
        Perm(word)
    }

    pub fn identity(n: usize) -> Self {
        Perm((1..=n as u8).collect())
    }

    /// The maximum `n ... 1` of the weak order.
    pub fn longest(n: usize) -> Self {
        Perm((1..=n as u8).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> u8 {
        self.0[i - 1]
    }

    /// `inverse()[v - 1]` is the 1-based position of value `v`.
    pub fn inverse(&self) -> Vec<u8> {
        let mut inv = vec![0u8; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        inv
    }

    /// The reversed word `τ_n ... τ_1`.
    pub fn reversed(&self) -> Perm {
        Perm(self.0.iter().rev().copied().collect())
    }

    /// Pairs `(i, j)` with `i < j` and `j` appearing before `i`.
    pub fn coinversions(&self) -> Vec<(u8, u8)> {
        let inv = self.inverse();
        let n = self.len() as u8;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if inv[i as usize - 1] > inv[j as usize - 1] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Coinversions packed into a bitmask indexed by [`pair_index`].
    pub fn coinversion_mask(&self) -> u128 {
        let inv = self.inverse();
        let n = self.len();
        let mut mask = 0u128;
        for i in 0..n {
            for j in i + 1..n {
                if inv[i] > inv[j] {
                    mask |= 1 << pair_index(n, i, j);
                }
            }
        }
        mask
    }

    /// Weak order comparison by inclusion of coinversion sets.
    pub fn weak_leq(&self, other: &Perm) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch(self.len(), other.len()));
        }
        let a = self.coinversion_mask();
        let b = other.coinversion_mask();
        Ok(a & !b == 0)
    }

    /// Upper covers in the weak order (swap an adjacent ascent).
    pub fn up_covers(&self) -> Vec<Perm> {
        let mut out = Vec::new();
        for i in 0..self.len().saturating_sub(1) {
            if self.0[i] < self.0[i + 1] {
                let mut w = self.0.clone();
                w.swap(i, i + 1);
                out.push(Perm(w));
            }
        }
        out
    }

    /// Lower covers in the weak order (swap an adjacent descent).
    pub fn down_covers(&self) -> Vec<Perm> {
        let mut out = Vec::new();
        for i in 0..self.len().saturating_sub(1) {
            if self.0[i] > self.0[i + 1] {
                let mut w = self.0.clone();
                w.swap(i, i + 1);
                out.push(Perm(w));
            }
        }
        out
    }

    /// All permutations covering or covered by `self`.
    pub fn weak_covers(&self) -> Vec<Perm> {
        let mut out = self.down_covers();
        out.extend(self.up_covers());
        out
    }

    /// Join in the weak order.
    pub fn weak_join(&self, other: &Perm) -> Result<Perm> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch(self.len(), other.len()));
        }
        let n = self.len();
        let (a, b) = (self.inverse(), other.inverse());
        // before[j][i]: value j+1 must precede value i+1 (for i < j).
        let mut before = vec![vec![false; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                if a[i] > a[j] || b[i] > b[j] {
                    before[j][i] = true;
                }
            }
        }
        // Transitive closure of the union of both inversion relations,
        // restricted to pairs (larger before smaller).
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..n {
                for y in 0..n {
                    if !before[x][y] {
                        continue;
                    }
                    for z in 0..n {
                        if before[y][z] && x > z && !before[x][z] {
                            before[x][z] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        let mut word: Vec<u8> = (1..=n as u8).collect();
        // Position of value v is 1 + #{values forced before it}: pairs
        // not forced keep increasing order.
        word.sort_by(|&x, &y| {
            let (x0, y0) = (x as usize - 1, y as usize - 1);
            if before[x0][y0] {
                std::cmp::Ordering::Less
            } else if before[y0][x0] {
                std::cmp::Ordering::Greater
            } else {
                x.cmp(&y)
            }
        });
        Ok(Perm(word))
    }

    /// Meet in the weak order.
    pub fn weak_meet(&self, other: &Perm) -> Result<Perm> {
        let n = self.len();
        let comp = |p: &Perm| Perm(p.0.iter().map(|&v| n as u8 + 1 - v).collect());
        Ok(comp(&comp(self).weak_join(&comp(other))?))
    }

    /// Lexicographic rank in `S_n`.
    pub fn rank(&self) -> usize {
        let n = self.len();
        let mut used = 0u64;
        let mut r = 0usize;
        for (i, &v) in self.0.iter().enumerate() {
            let smaller = (0..v as usize - 1).filter(|&u| used & (1 << u) == 0).count();
            r += smaller * factorial(n - 1 - i);
            used |= 1 << (v - 1);
        }
        r
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::with_capacity(factorial(n));
        let mut w: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(Perm(w.clone()));
            if !next_permutation(&mut w) {
                break;
            }
        }
        out
    }

    /// Concatenation `self · shift(other)`.
    pub fn shifted_concat(&self, other: &Perm) -> Perm {
        let n = self.len() as u8;
        let mut w = self.0.clone();
        w.extend(other.0.iter().map(|&v| v + n));
        Perm(w)
    }

    /// Concatenation `shift(other) · self` where `other` is shifted by `|self|`.
    pub fn shifted_concat_rev(&self, other: &Perm) -> Perm {
        let n = self.len() as u8;
        let mut w: Vec<u8> = other.0.iter().map(|&v| v + n).collect();
        w.extend(self.0.iter().copied());
        Perm(w)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() < 10 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Perm {
    type Err = Error;

    /// Parses `31542` (one digit per value, `n < 10`) or `3,1,5,4,2`
    /// (separated by commas or spaces).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let word: Vec<u8> = if s.contains([',', ' ']) {
            s.split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u8>()
                        .map_err(|e| Error::parse("permutation", format!("{t:?}: {e}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::parse("permutation", format!("unexpected {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Perm::new(word).map_err(|e| Error::parse("permutation", e.to_string()))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}

/// Index of the pair `i < j` (0-based) among the `C(n,2)` pairs.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Advances `w` to the next permutation in lexicographic order.
pub fn next_permutation(w: &mut [u8]) -> bool {
    let n = w.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// Relabels a word of distinct integers by `1..=len` preserving relative order.
pub fn standardize(word: &[u8]) -> Perm {
    let mut idx: Vec<usize> = (0..word.len()).collect();
    idx.sort_by_key(|&i| word[i]);
    let mut out = vec![0u8; word.len()];
    for (rank, &i) in idx.iter().enumerate() {
        out[i] = rank as u8 + 1;
    }
    Perm(out)
}

/// All `k`-subsets of `[n]` (1-based), in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<u8>> {
    fn rec(start: u8, n: u8, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            if (n - v + 1) as usize + cur.len() < k {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n as u8, k, &mut Vec::new(), &mut out);
    out
}

/// Shifted shuffle `τ ⧢ τ'`: shuffles of `τ` with `τ'` shifted by `|τ|`,
/// sorted lexicographically.
pub fn shifted_shuffle(a: &Perm, b: &Perm) -> Vec<Perm> {
    let (n, m) = (a.len(), b.len());
    let shifted: Vec<u8> = b.0.iter().map(|&v| v + n as u8).collect();
    let mut out = Vec::with_capacity(binomial(n + m, n));
    for pos in subsets(n + m, n) {
        let mut w = Vec::with_capacity(n + m);
        let (mut ia, mut ib) = (0, 0);
        let mut next = pos.iter().peekable();
        for p in 1..=n + m {
            if next.peek() == Some(&&(p as u8)) {
                next.next();
                w.push(a.0[ia]);
                ia += 1;
            } else {
                w.push(shifted[ib]);
                ib += 1;
            }
        }
        out.push(Perm(w));
    }
    out.sort();
    out
}

/// Convolution `τ ⋆ τ'`: permutations whose first `|τ|` letters standardize
/// to `τ` and last `|τ'|` letters standardize to `τ'`.
pub fn convolution(a: &Perm, b: &Perm) -> Vec<Perm> {
    let (n, m) = (a.len(), b.len());
    let mut out = Vec::with_capacity(binomial(n + m, n));
    for vals in subsets(n + m, n) {
        let rest: Vec<u8> = (1..=(n + m) as u8).filter(|v| !vals.contains(v)).collect();
        let mut w: Vec<u8> = a.0.iter().map(|&v| vals[v as usize - 1]).collect();
        w.extend(b.0.iter().map(|&v| rest[v as usize - 1]));
        out.push(Perm(w));
    }
    out.sort();
    out
}

/// A sign in a signature.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A sequence of signs over `[n]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Signature(pub Vec<Sign>);

impl Signature {
    pub fn all_minus(n: usize) -> Self {
        Signature(vec![Sign::Minus; n])
    }

    pub fn all_plus(n: usize) -> Self {
        Signature(vec![Sign::Plus; n])
    }

    /// The length-`n` prefix of `first, -first, first, ...`.
    pub fn alternating(n: usize, first: Sign) -> Self {
        Signature(
            (0..n)
                .map(|i| if i % 2 == 0 { first } else { first.negate() })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sign of the 1-based index `p`.
    pub fn get(&self, p: usize) -> Sign {
        self.0[p - 1]
    }

    pub fn negate(&self) -> Signature {
        Signature(self.0.iter().map(|s| s.negate()).collect())
    }

    pub fn count(&self, s: Sign) -> usize {
        self.0.iter().filter(|&&t| t == s).count()
    }

    pub fn is_classical(&self) -> bool {
        self.0.iter().all(|&s| s == Sign::Minus)
    }

    /// All signatures of length `n`.
    pub fn all(n: usize) -> Vec<Signature> {
        (0..1usize << n)
            .map(|m| {
                Signature(
                    (0..n)
                        .map(|i| if m >> i & 1 == 1 { Sign::Plus } else { Sign::Minus })
                        .collect(),
                )
            })
            .collect()
    }

    pub fn concat(&self, other: &Signature) -> Signature {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Signature(v)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Signature {
    type Err = Error;

    /// Parses a word over `+` and `-` (also `−`).
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '−' => Ok(Sign::Minus),
                _ => Err(Error::parse("signature", format!("unexpected {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Signature)
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signature({self})")
    }
}

/// A permutation whose values carry `ℓ` signatures (`ℓ = 0` for plain ones).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignedPerm {
    pub perm: Perm,
    /// Signatures indexed by value.
    pub signs: Vec<Signature>,
}

impl SignedPerm {
    pub fn new(perm: Perm, signs: Vec<Signature>) -> Result<Self> {
        for s in &signs {
            if s.len() != perm.len() {
                return Err(Error::SizeMismatch(s.len(), perm.len()));
            }
        }
        Ok(SignedPerm { perm, signs })
    }

    pub fn unsigned(perm: Perm) -> Self {
        SignedPerm {
            perm,
            signs: Vec::new(),
        }
    }

    /// The signed permutation keeping only the `i`-th signature.
    pub fn component(&self, i: usize) -> SignedPerm {
        SignedPerm {
            perm: self.perm.clone(),
            signs: vec![self.signs[i].clone()],
        }
    }

    /// Signatures read by position (p-signatures).
    pub fn position_signs(&self) -> Vec<Signature> {
        self.signs
            .iter()
            .map(|s| Signature(self.perm.0.iter().map(|&v| s.get(v as usize)).collect()))
            .collect()
    }

    /// Signed shifted shuffle: signs travel with their values.
    pub fn shifted_shuffle(&self, other: &SignedPerm) -> Result<Vec<SignedPerm>> {
        if self.signs.len() != other.signs.len() {
            return Err(Error::MixedBasis);
        }
        let signs: Vec<Signature> = self.signs.iter().zip(&other.signs).map(|(a, b)| a.concat(b)).collect();
        Ok(shifted_shuffle(&self.perm, &other.perm)
            .into_iter()
            .map(|p| SignedPerm {
                perm: p,
                signs: signs.clone(),
            })
            .collect())
    }

    /// Signed convolution: signs stay at their positions.
    pub fn convolution(&self, other: &SignedPerm) -> Result<Vec<SignedPerm>> {
        if self.signs.len() != other.signs.len() {
            return Err(Error::MixedBasis);
        }
        let pos: Vec<Signature> = self
            .position_signs()
            .iter()
            .zip(other.position_signs())
            .map(|(a, b)| a.concat(&b))
            .collect();
        Ok(convolution(&self.perm, &other.perm)
            .into_iter()
            .map(|p| {
                let signs = pos
                    .iter()
                    .map(|ps| {
                        let mut by_value = vec![Sign::Minus; p.len()];
                        for (i, &v) in p.0.iter().enumerate() {
                            by_value[v as usize - 1] = ps.0[i];
                        }
                        Signature(by_value)
                    })
                    .collect();
                SignedPerm { perm: p, signs }
            })
            .collect())
    }
}
