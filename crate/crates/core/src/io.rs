//! Canonical JSON and DOT encodings.
//!
//! Every encoder is deterministic: equal objects give equal bytes. Object
//! keys are emitted in a fixed order and collections in increasing key order.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hopf::FormalSum;
use crate::lattice::FinitePoset;
use crate::perm::{Perm, Signature};
use crate::poset::MAX_VERTICES;
use crate::recoil::Orientation;
use crate::schroder::{HyperTwist, OrderedPartition};
use crate::shape::{Shape, MAX_BOXES};
use crate::twist::Twist;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwistRecord {
    k: usize,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    signature: Option<String>,
    elbows: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrientationRecord {
    k: usize,
    n: usize,
    arcs: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SumRecord {
    terms: Vec<(Value, i64)>,
}

fn parse_error(what: &str, e: serde_json::Error) -> Error {
    Error::parse(
        format!("{what}, line {} column {}", e.line(), e.column()),
        e.to_string(),
    )
}

fn to_string(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

/// Objects with a canonical JSON form.
pub trait ToJson {
    fn to_json(&self) -> Value;

    /// Compact label used for DOT nodes and text output.
    fn label(&self) -> String {
        to_string(&self.to_json())
    }
}

/// Objects that can be rebuilt from their canonical JSON form.
pub trait FromJson: Sized {
    fn from_json(v: &Value) -> Result<Self>;
}

impl ToJson for Twist {
    fn to_json(&self) -> Value {
        let rec = TwistRecord {
            k: self.k(),
            n: self.n(),
            signature: (!self.is_classical()).then(|| self.signature().to_string()),
            elbows: self.interior_elbows().into_iter().map(|(r, c)| [r, c]).collect(),
        };
        serde_json::to_value(rec).expect("twist record")
    }

    fn label(&self) -> String {
        let e: Vec<String> = self.interior_elbows().iter().map(|(r, c)| format!("{r},{c}")).collect();
        format!("{{{}}}", e.join(" "))
    }
}

impl FromJson for Twist {
    fn from_json(v: &Value) -> Result<Self> {
        let rec: TwistRecord = TwistRecord::deserialize(v).map_err(|e| parse_error("twist", e))?;
        if rec.k > MAX_BOXES || rec.n > MAX_BOXES {
            return Err(Error::InvariantViolation(format!(
                "({}, {}) exceeds the supported size",
                rec.k, rec.n
            )));
        }
        let sig = match &rec.signature {
            Some(s) => s
                .parse::<Signature>()
                .map_err(|e| Error::parse("field signature", e.to_string()))?,
            None => Signature::all_minus(rec.n),
        };
        if sig.len() != rec.n {
            return Err(Error::InvariantViolation(format!(
                "signature has length {}, expected n = {}",
                sig.len(),
                rec.n
            )));
        }
        let mut seen = BTreeSet::new();
        for &[r, c] in &rec.elbows {
            if !seen.insert((r, c)) {
                return Err(Error::InvariantViolation(format!("elbow ({r}, {c}) listed twice")));
            }
        }
        let shape = Shape::get(rec.k, &sig).map_err(|e| Error::InvariantViolation(e.to_string()))?;
        let elbows: Vec<(usize, usize)> = seen.into_iter().collect();
        Twist::new(shape, &elbows).map_err(|e| match e {
            Error::InvariantViolation(_) => e,
            other => Error::InvariantViolation(other.to_string()),
        })
    }
}

impl ToJson for Orientation {
    fn to_json(&self) -> Value {
        let arcs: Vec<[usize; 2]> = self
            .edges()
            .into_iter()
            .filter_map(|(i, j)| self.get(i, j).map(|fwd| if fwd { [i, j] } else { [j, i] }))
            .collect();
        serde_json::to_value(OrientationRecord {
            k: self.k(),
            n: self.n(),
            arcs,
        })
        .expect("orientation record")
    }

    fn label(&self) -> String {
        self.signs()
    }
}

impl FromJson for Orientation {
    fn from_json(v: &Value) -> Result<Self> {
        let rec: OrientationRecord = OrientationRecord::deserialize(v).map_err(|e| parse_error("orientation", e))?;
        if rec.k > MAX_VERTICES || rec.n > MAX_VERTICES {
            return Err(Error::InvariantViolation(format!(
                "({}, {}) exceeds the supported size",
                rec.k, rec.n
            )));
        }
        let mut o = Orientation::unset(rec.k, rec.n);
        for &[a, b] in &rec.arcs {
            let (i, j) = (a.min(b), a.max(b));
            if i == 0 || i == j || j > rec.n || j - i > rec.k {
                return Err(Error::InvariantViolation(format!("({a}, {b}) is not an edge")));
            }
            if o.get(i, j).is_some() {
                return Err(Error::InvariantViolation(format!("edge ({i}, {j}) oriented twice")));
            }
            o.set(i, j, a < b);
        }
        Ok(o)
    }
}

impl ToJson for Perm {
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("permutation")
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

impl FromJson for Perm {
    fn from_json(v: &Value) -> Result<Self> {
        Perm::deserialize(v).map_err(|e| parse_error("permutation", e))
    }
}

impl ToJson for OrderedPartition {
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("ordered partition")
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

impl FromJson for OrderedPartition {
    fn from_json(v: &Value) -> Result<Self> {
        OrderedPartition::deserialize(v).map_err(|e| parse_error("ordered partition", e))
    }
}

impl ToJson for HyperTwist {
    fn to_json(&self) -> Value {
        let t = self.twist();
        let shape = t.shape();
        let elbows: Vec<[usize; 2]> = crate::twist::ids(self.surviving_elbows())
            .map(|id| {
                let (r, c) = shape.coords(id);
                [r, c]
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        json!({"k": self.k(), "n": self.n(), "parts": self.part_labels(), "elbows": elbows})
    }

    fn label(&self) -> String {
        let parts: Vec<String> = self
            .part_labels()
            .iter()
            .map(|p| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        format!("{{{}}}", parts.join(" "))
    }
}

impl<A: ToJson, B: ToJson> ToJson for (A, B) {
    fn to_json(&self) -> Value {
        json!([self.0.to_json(), self.1.to_json()])
    }

    fn label(&self) -> String {
        format!("{} ⊗ {}", self.0.label(), self.1.label())
    }
}

impl<A: FromJson, B: FromJson> FromJson for (A, B) {
    fn from_json(v: &Value) -> Result<Self> {
        match v.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((A::from_json(a)?, B::from_json(b)?)),
            _ => Err(Error::parse("tensor", "expected a two-element array")),
        }
    }
}

impl<K: Ord + Clone + ToJson> ToJson for FormalSum<K> {
    fn to_json(&self) -> Value {
        json!({"terms": self.iter().map(|(k, c)| json!([k.to_json(), c])).collect::<Vec<_>>()})
    }
}

impl<K: Ord + Clone + FromJson> FromJson for FormalSum<K> {
    fn from_json(v: &Value) -> Result<Self> {
        let rec: SumRecord = SumRecord::deserialize(v).map_err(|e| parse_error("formal sum", e))?;
        let mut out = FormalSum::zero();
        let mut seen = Vec::new();
        for (key, c) in &rec.terms {
            let key = K::from_json(key)?;
            if c == &0 || seen.contains(&key) {
                return Err(Error::InvariantViolation(
                    "formal sum terms must be distinct and non-zero".into(),
                ));
            }
            seen.push(key.clone());
            out.add_term(key, *c);
        }
        Ok(out)
    }
}

/// Canonical compact JSON text of `x`.
pub fn to_json_string<T: ToJson + ?Sized>(x: &T) -> String {
    to_string(&x.to_json())
}

/// Parses canonical JSON text.
pub fn from_json_str<T: FromJson>(s: &str) -> Result<T> {
    let v: Value = serde_json::from_str(s).map_err(|e| parse_error("input", e))?;
    T::from_json(&v)
}

/// Elements of `poset` sorted by key, with the permutation mapping
/// positions in the sorted list to indices in `poset`.
fn sorted_elements<T: Clone + Eq + std::hash::Hash + Ord>(poset: &FinitePoset<T>) -> (Vec<usize>, Vec<usize>) {
    let mut order: Vec<usize> = (0..poset.len()).collect();
    order.sort_by(|&a, &b| poset.elements()[a].cmp(&poset.elements()[b]));
    let mut rank = vec![0; poset.len()];
    for (pos, &i) in order.iter().enumerate() {
        rank[i] = pos;
    }
    (order, rank)
}

fn sorted_covers<T: Clone + Eq + std::hash::Hash>(poset: &FinitePoset<T>, rank: &[usize]) -> Vec<[usize; 2]> {
    let mut covers: Vec<[usize; 2]> = poset.covers().into_iter().map(|(a, b)| [rank[a], rank[b]]).collect();
    covers.sort_unstable();
    covers
}

/// JSON of a finite poset: nodes in key order and its cover relations as
/// pairs of node positions.
pub fn poset_to_json<T>(poset: &FinitePoset<T>) -> Value
where
    T: Clone + Eq + std::hash::Hash + Ord + ToJson,
{
    let (order, rank) = sorted_elements(poset);
    let nodes: Vec<Value> = order.iter().map(|&i| poset.elements()[i].to_json()).collect();
    json!({"nodes": nodes, "covers": sorted_covers(poset, &rank)})
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering of the Hasse diagram, nodes in key order.
pub fn poset_to_dot<T>(poset: &FinitePoset<T>, name: &str) -> String
where
    T: Clone + Eq + std::hash::Hash + Ord + ToJson,
{
    let (order, rank) = sorted_elements(poset);
    let mut out = format!("digraph \"{}\" {{\n  rankdir=BT;\n", dot_escape(name));
    for (pos, &i) in order.iter().enumerate() {
        out.push_str(&format!(
            "  n{pos} [label=\"{}\"];\n",
            dot_escape(&poset.elements()[i].label())
        ));
    }
    for [a, b] in sorted_covers(poset, &rank) {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}
