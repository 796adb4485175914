//! Probe functions and descriptive nearness.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, BigRational, Signed, Zero};

use crate::axioms::{check_descriptive_relation, AxiomReport, TabledRelation, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::space::{Provenance, Space};
use crate::subset::Subset;

pub type Feature = BigRational;
pub type FeatureVector = Vec<Feature>;

/// Feature vectors for a set of points, with per-feature tolerances.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeTable {
    names: Vec<String>,
    values: BTreeMap<String, FeatureVector>,
    tolerance: Vec<Feature>,
}

impl ProbeTable {
    /// Builds a table with tolerance zero on every feature.
    pub fn new(names: Vec<String>, values: BTreeMap<String, FeatureVector>) -> Result<ProbeTable> {
        let m = names.len();
        ProbeTable::with_tolerance(names, values, vec![Feature::zero(); m])
    }

    pub fn with_tolerance(
        names: Vec<String>,
        values: BTreeMap<String, FeatureVector>,
        tolerance: Vec<Feature>,
    ) -> Result<ProbeTable> {
        let m = names.len();
        if tolerance.len() != m {
            return Err(Error::ArityMismatch { expected: m, got: tolerance.len() });
        }
        if tolerance.iter().any(Signed::is_negative) {
            return Err(Error::PreconditionUnmet("tolerances must be nonnegative".into()));
        }
        if let Some(v) = values.values().find(|v| v.len() != m) {
            return Err(Error::ArityMismatch { expected: m, got: v.len() });
        }
        Ok(ProbeTable { names, values, tolerance })
    }

    /// Convenience constructor from integer features, e.g. RGB triples.
    pub fn from_integers<S: Into<String>>(names: &[&str], values: Vec<(S, Vec<i64>)>) -> Result<ProbeTable> {
        let values = values
            .into_iter()
            .map(|(p, v)| (p.into(), v.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect()))
            .collect();
        ProbeTable::new(names.iter().map(|s| s.to_string()).collect(), values)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn tolerance(&self) -> &[Feature] {
        &self.tolerance
    }

    pub fn values(&self) -> &BTreeMap<String, FeatureVector> {
        &self.values
    }

    pub fn vector(&self, point: &str) -> Result<&FeatureVector> {
        self.values.get(point).ok_or_else(|| Error::MissingVector(point.to_string()))
    }

    pub fn is_exact(&self) -> bool {
        self.tolerance.iter().all(Zero::is_zero)
    }

    /// Componentwise agreement within tolerance.
    pub fn agree(&self, a: &FeatureVector, b: &FeatureVector) -> bool {
        a.iter().zip(b).zip(&self.tolerance).all(|((x, y), t)| (x - y).abs() <= *t)
    }

    /// The table with every tolerance replaced.
    pub fn retolerate(&self, tolerance: Vec<Feature>) -> Result<ProbeTable> {
        ProbeTable::with_tolerance(self.names.clone(), self.values.clone(), tolerance)
    }
}

/// Set of distinct feature vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DescriptionSet(pub BTreeSet<FeatureVector>);

impl DescriptionSet {
    pub fn contains(&self, v: &FeatureVector) -> bool {
        self.0.contains(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn intersects(&self, other: &DescriptionSet) -> bool {
        self.0.iter().any(|v| other.0.contains(v))
    }
}

/// `Q(E)`: the distinct feature vectors of `E`'s points.
pub fn description(table: &ProbeTable, space: &Space, e: &Subset) -> Result<DescriptionSet> {
    let mut out = BTreeSet::new();
    for i in e.iter() {
        out.insert(table.vector(space.name(i))?.clone());
    }
    Ok(DescriptionSet(out))
}

/// Space on `points` where two points are near iff their vectors agree
/// within tolerance.
pub fn descriptive_space<I, S>(points: I, table: &ProbeTable) -> Result<Space>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let points: Vec<String> = points.into_iter().map(Into::into).collect();
    let vectors: Vec<&FeatureVector> = points.iter().map(|p| table.vector(p)).collect::<Result<_>>()?;
    let n = points.len();
    let adj = (0..n)
        .map(|i| Subset::from_indices(n, (0..n).filter(|&j| table.agree(vectors[i], vectors[j]))))
        .collect();
    Space::from_adjacency(points, adj, Provenance::Descriptive(Box::new(table.clone())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Intersection,
    Union,
}

/// Descriptive intersection or union:
/// `{x ∈ E ∪ F : Φ(x) ∈ Q(E) ∧/∨ Φ(x) ∈ Q(F)}`.
pub fn descriptive_set_op(mode: SetOp, table: &ProbeTable, space: &Space, e: &Subset, f: &Subset) -> Result<Subset> {
    let qe = description(table, space, e)?;
    let qf = description(table, space, f)?;
    let mut out = space.empty_subset();
    for x in e.union(f).iter() {
        let v = table.vector(space.name(x))?;
        let keep = match mode {
            SetOp::Intersection => qe.contains(v) && qf.contains(v),
            SetOp::Union => qe.contains(v) || qf.contains(v),
        };
        if keep {
            out.insert(x);
        }
    }
    Ok(out)
}

/// Exhaustive check of (f)–(k) for a descriptive space.
pub fn check_descriptive_axioms(space: &Space, table: &ProbeTable) -> Result<AxiomReport> {
    check_descriptive_axioms_with_cap(space, table, DEFAULT_CAP)
}

pub fn check_descriptive_axioms_with_cap(space: &Space, table: &ProbeTable, cap: usize) -> Result<AxiomReport> {
    if space.len() > cap {
        return Err(Error::GroundSetTooLarge { size: space.len(), cap });
    }
    // class[x]: index of x's vector among the distinct vectors
    let mut distinct: Vec<&FeatureVector> = Vec::new();
    let mut class = Vec::with_capacity(space.len());
    for p in space.points() {
        let v = table.vector(p)?;
        let c = match distinct.iter().position(|d| *d == v) {
            Some(c) => c,
            None => {
                distinct.push(v);
                distinct.len() - 1
            }
        };
        class.push(c);
    }
    let q = |m: u64| -> u64 {
        let mut out = 0;
        let mut rest = m;
        while rest != 0 {
            out |= 1u64 << class[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        out
    };
    let dint = |e: u64, f: u64| -> u64 {
        let both = q(e) & q(f);
        let mut out = 0;
        let mut rest = e | f;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            if both >> class[x] & 1 == 1 {
                out |= 1 << x;
            }
            rest &= rest - 1;
        }
        out
    };
    let rel = TabledRelation::new(space)?;
    check_descriptive_relation(&rel, dint, cap)
}

/// Converts a finite `f64` to the rational with the same shortest decimal
/// representation, so `0.1` becomes exactly `1/10`.
pub fn rational_from_f64(x: f64) -> Result<Feature> {
    if !x.is_finite() {
        return Err(Error::Schema(format!("feature value {x} is not finite")));
    }
    parse_rational(&format!("{x}"))
}

/// Parses `"3"`, `"-2.25"`, `"1e-3"` or `"7/3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Feature> {
    let bad = || Error::Schema(format!("invalid rational `{s}`"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let num: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(num);
    if scale >= 0 {
        r *= BigRational::from_integer(num::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -r } else { r })
}
