//! Finite proximity spaces.
//!
//! A [`Space`] stores nearness at the level of points: a reflexive, symmetric
//! relation on its ground set. Nearness of subsets is derived from it,
//! `E δ F` iff some `e ∈ E` is near some `f ∈ F`. On a finite set every
//! relation obeying additivity has this form, so nothing is lost.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::subset::Subset;

/// Where a space came from. Purely informational except for
/// [`Provenance::Interval`], which marks digital intervals.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Explicit,
    Discrete,
    Indiscrete,
    Metric { coords: Vec<Vec<f64>>, epsilon: f64 },
    Descriptive(Box<crate::descriptive::ProbeTable>),
    Product,
    Subspace,
    Coproduct,
    MappingSpace,
    /// The chain `0 – 1 – … – n`.
    Interval(usize),
}

#[derive(Clone)]
pub struct Space {
    points: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Subset>,
    provenance: Provenance,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.adj == other.adj
    }
}

impl Eq for Space {}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().map(|(a, b)| (self.name(a), self.name(b))).collect();
        f.debug_struct("Space")
            .field("points", &self.points)
            .field("edges", &edges)
            .field("provenance", &self.provenance)
            .finish()
    }
}

fn index_points(points: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if index.insert(p.clone(), i).is_some() {
            return Err(Error::DuplicatePoint(p.clone()));
        }
    }
    Ok(index)
}

fn names<I, S>(points: I) -> Vec<String>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    points.into_iter().map(Into::into).collect()
}

impl Space {
    /// Builds a space from full adjacency rows. Rows must be symmetric and
    /// reflexive.
    pub fn from_adjacency(points: Vec<String>, adj: Vec<Subset>, provenance: Provenance) -> Result<Space> {
        let index = index_points(&points)?;
        let n = points.len();
        if adj.len() != n {
            return Err(Error::SubsetDimensionMismatch { expected: n, got: adj.len() });
        }
        for (i, row) in adj.iter().enumerate() {
            if row.len() != n {
                return Err(Error::SubsetDimensionMismatch { expected: n, got: row.len() });
            }
            if !row.contains(i) {
                return Err(Error::PreconditionUnmet(format!("point `{}` is not near itself", points[i])));
            }
            for j in row.iter() {
                if !adj[j].contains(i) {
                    return Err(Error::NonSymmetricInput(points[i].clone(), points[j].clone()));
                }
            }
        }
        Ok(Space { points, index, adj, provenance })
    }

    /// Builds a space from a list of near point pairs. Reflexive pairs are
    /// implied; pairs are symmetrized.
    pub fn from_pairs<I, S, P>(points: I, pairs: P) -> Result<Space>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        P: IntoIterator<Item = (S, S)>,
    {
        let points = names(points);
        let index = index_points(&points)?;
        let n = points.len();
        let mut adj: Vec<Subset> = (0..n).map(|i| Subset::singleton(n, i)).collect();
        for (a, b) in pairs {
            let (a, b) = (a.into(), b.into());
            let ia = *index.get(&a).ok_or_else(|| Error::UnknownPoint(a.clone()))?;
            let ib = *index.get(&b).ok_or_else(|| Error::UnknownPoint(b.clone()))?;
            adj[ia].insert(ib);
            adj[ib].insert(ia);
        }
        Ok(Space { points, index, adj, provenance: Provenance::Explicit })
    }

    /// Discrete proximity: `E δ F` iff `E ∩ F ≠ ∅`.
    pub fn discrete<I, S>(points: I) -> Result<Space>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let points = names(points);
        let n = points.len();
        let adj = (0..n).map(|i| Subset::singleton(n, i)).collect();
        Space::from_adjacency(points, adj, Provenance::Discrete)
    }

    /// Indiscrete proximity: any two nonempty subsets are near.
    pub fn indiscrete<I, S>(points: I) -> Result<Space>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let points = names(points);
        let n = points.len();
        let adj = vec![Subset::full(n); n];
        Space::from_adjacency(points, adj, Provenance::Indiscrete)
    }

    /// Threshold metric proximity: points are near when their Euclidean
    /// distance is at most `epsilon`.
    pub fn metric<I, S>(points: I, coords: Vec<Vec<f64>>, epsilon: f64) -> Result<Space>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let points = names(points);
        if !(epsilon >= 0.0) {
            return Err(Error::PreconditionUnmet("epsilon must be nonnegative".into()));
        }
        let n = points.len();
        if coords.len() != n {
            return Err(Error::ArityMismatch { expected: n, got: coords.len() });
        }
        let dim = coords.first().map_or(0, Vec::len);
        if let Some(bad) = coords.iter().find(|c| c.len() != dim) {
            return Err(Error::ArityMismatch { expected: dim, got: bad.len() });
        }
        let eps2 = epsilon * epsilon;
        let adj = (0..n)
            .map(|i| {
                Subset::from_indices(
                    n,
                    (0..n).filter(|&j| {
                        let d2: f64 = coords[i].iter().zip(&coords[j]).map(|(a, b)| (a - b) * (a - b)).sum();
                        d2 <= eps2
                    }),
                )
            })
            .collect();
        Space::from_adjacency(points, adj, Provenance::Metric { coords, epsilon })
    }

    /// The digital interval `I_n`: points `0..=n`, `i` near `j` iff `|i - j| <= 1`.
    pub fn interval(n: usize) -> Space {
        let len = n + 1;
        let points = (0..len).map(|i| i.to_string()).collect();
        let adj = (0..len)
            .map(|i| Subset::from_indices(len, i.saturating_sub(1)..=(i + 1).min(n)))
            .collect();
        Space::from_adjacency(points, adj, Provenance::Interval(n)).expect("interval is well formed")
    }

    /// A cycle graph on the given points, in order.
    pub fn cycle<I, S>(points: I) -> Result<Space>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let points = names(points);
        let n = points.len();
        let pairs: Vec<(String, String)> =
            (0..n).map(|i| (points[i].clone(), points[(i + 1) % n].clone())).collect();
        Space::from_pairs(points, pairs)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn name(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    /// Points near `i` (including `i`).
    pub fn adjacency(&self, i: usize) -> &Subset {
        &self.adj[i]
    }

    pub fn is_near_points(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    /// Unordered near pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |i| self.adj[i].iter().filter(move |&j| j > i).map(move |j| (i, j)))
    }

    /// Ordered near pairs including the reflexive ones.
    pub fn near_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |i| self.adj[i].iter().map(move |j| (i, j)))
    }

    pub fn subset<S: AsRef<str>>(&self, members: &[S]) -> Result<Subset> {
        let mut s = Subset::empty(self.len());
        for m in members {
            s.insert(self.index_of(m.as_ref())?);
        }
        Ok(s)
    }

    pub fn empty_subset(&self) -> Subset {
        Subset::empty(self.len())
    }

    pub fn full_subset(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn subset_names(&self, s: &Subset) -> Vec<String> {
        s.iter().map(|i| self.points[i].clone()).collect()
    }

    fn check_dim(&self, s: &Subset) -> Result<()> {
        if s.len() != self.len() {
            return Err(Error::SubsetDimensionMismatch { expected: self.len(), got: s.len() });
        }
        Ok(())
    }

    /// `{x : {x} δ E}`; for point-determined nearness this is the union of
    /// the rows of `E`'s members.
    pub fn neighborhood(&self, e: &Subset) -> Subset {
        let mut out = Subset::empty(self.len());
        for i in e.iter() {
            out.union_with(&self.adj[i]);
        }
        out
    }

    /// Subset nearness: true iff some member of `e` is near some member of `f`.
    pub fn near(&self, e: &Subset, f: &Subset) -> Result<bool> {
        self.check_dim(e)?;
        self.check_dim(f)?;
        Ok(self.near_unchecked(e, f))
    }

    pub(crate) fn near_unchecked(&self, e: &Subset, f: &Subset) -> bool {
        e.iter().any(|i| self.adj[i].intersects(f))
    }

    /// Whether `e` is a δ-neighborhood of `f` (`f ≪ e`): `f` is far from `X − e`.
    pub fn is_delta_neighborhood(&self, f: &Subset, e: &Subset) -> Result<bool> {
        self.check_dim(f)?;
        self.check_dim(e)?;
        Ok(!self.near_unchecked(f, &e.complement()))
    }

    /// `{x : x δ E}`.
    pub fn closure(&self, e: &Subset) -> Subset {
        self.neighborhood(e)
    }

    /// Returns a path `x ~ y ~ z` with `x` far from `z`, if the near relation
    /// is not transitive.
    pub fn transitivity_violation(&self) -> Option<(usize, usize, usize)> {
        for y in 0..self.len() {
            for x in self.adj[y].iter() {
                if let Some(z) = self.adj[y].difference(&self.adj[x]).first() {
                    return Some((x, y, z));
                }
            }
        }
        None
    }

    /// Checks the two neighborhood-lattice identities for pairs `E_k ≪ F_k`.
    pub fn neighborhood_lattice_check(&self, pairs: &[(Subset, Subset)]) -> Result<bool> {
        if pairs.is_empty() {
            return Err(Error::PreconditionUnmet("at least one pair is required".into()));
        }
        for (k, (e, f)) in pairs.iter().enumerate() {
            if !self.is_delta_neighborhood(e, f)? {
                return Err(Error::PreconditionUnmet(format!("pair {k}: E is not ≪ F")));
            }
        }
        let mut e_cap = self.full_subset();
        let mut f_cap = self.full_subset();
        let mut e_cup = self.empty_subset();
        let mut f_cup = self.empty_subset();
        for (e, f) in pairs {
            e_cap.intersect_with(e);
            f_cap.intersect_with(f);
            e_cup.union_with(e);
            f_cup.union_with(f);
        }
        if !self.is_delta_neighborhood(&e_cap, &f_cap)? {
            return Err(Error::TheoremViolation(format!("∩E = {e_cap:?} is not ≪ ∩F = {f_cap:?}")));
        }
        if !self.is_delta_neighborhood(&e_cup, &f_cup)? {
            return Err(Error::TheoremViolation(format!("∪E = {e_cup:?} is not ≪ ∪F = {f_cup:?}")));
        }
        Ok(true)
    }

    /// Checks the Kuratowski closure laws for `cl(E) = {x : x δ E}` over all
    /// subsets. Requires at most 20 points.
    pub fn kuratowski_check(&self) -> Result<KuratowskiReport> {
        let n = self.len();
        if n > 20 {
            return Err(Error::GroundSetTooLarge { size: n, cap: 20 });
        }
        let rows: Vec<u64> = self.adj.iter().map(Subset::to_mask).collect();
        let cl = |m: u64| -> u64 {
            let mut out = 0;
            let mut rest = m;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                out |= rows[i];
            }
            out
        };
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut report = KuratowskiReport {
            empty_fixed: cl(0) == 0,
            extensive: None,
            additive: None,
            idempotent: None,
        };
        let sub = |m: u64| Subset::from_mask(n, m);
        for e in 0..=full {
            let ce = cl(e);
            if report.extensive.is_none() && e & !ce != 0 {
                report.extensive = Some(sub(e));
            }
            if report.idempotent.is_none() && cl(ce) != ce {
                report.idempotent = Some(sub(e));
            }
        }
        // Additivity holds by construction for a union of rows; still checked
        // pairwise for small sets.
        if n <= 10 {
            'outer: for e in 0..=full {
                for f in 0..=full {
                    if cl(e | f) != cl(e) | cl(f) {
                        report.additive = Some((sub(e), sub(f)));
                        break 'outer;
                    }
                }
            }
        }
        Ok(report)
    }

    /// Point-level product: `(x, y)` near `(x', y')` iff `x δ x'` and `y δ' y'`.
    /// Point `(i, j)` has index `i * other.len() + j`.
    pub fn product(&self, other: &Space) -> Space {
        let (n, m) = (self.len(), other.len());
        let points = (0..n)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| format!("({},{})", self.points[i], other.points[j]))
            .collect();
        let adj = (0..n * m)
            .map(|k| {
                let (i, j) = (k / m, k % m);
                let mut row = Subset::empty(n * m);
                for a in self.adj[i].iter() {
                    for b in other.adj[j].iter() {
                        row.insert(a * m + b);
                    }
                }
                row
            })
            .collect();
        Space::from_adjacency(points, adj, Provenance::Product).expect("product of spaces is well formed")
    }

    /// Subspace on `carrier`, keeping point order.
    pub fn subspace(&self, carrier: &Subset) -> Result<Space> {
        self.check_dim(carrier)?;
        if carrier.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let members: Vec<usize> = carrier.iter().collect();
        let k = members.len();
        let points = members.iter().map(|&i| self.points[i].clone()).collect();
        let adj = members
            .iter()
            .map(|&i| Subset::from_indices(k, (0..k).filter(|&b| self.adj[i].contains(members[b]))))
            .collect();
        Space::from_adjacency(points, adj, Provenance::Subspace)
    }

    /// Disjoint union with no cross nearness. Points are tagged `0:x` and `1:y`.
    pub fn coproduct(&self, other: &Space) -> Space {
        let (n, m) = (self.len(), other.len());
        let points = self
            .points
            .iter()
            .map(|p| format!("0:{p}"))
            .chain(other.points.iter().map(|p| format!("1:{p}")))
            .collect();
        let adj = (0..n)
            .map(|i| Subset::from_indices(n + m, self.adj[i].iter()))
            .chain((0..m).map(|j| Subset::from_indices(n + m, other.adj[j].iter().map(|b| b + n))))
            .collect();
        Space::from_adjacency(points, adj, Provenance::Coproduct).expect("coproduct is well formed")
    }

    /// Renames points, keeping the relation.
    pub fn renamed<S: Into<String>>(&self, names: Vec<S>) -> Result<Space> {
        let points: Vec<String> = names.into_iter().map(Into::into).collect();
        if points.len() != self.len() {
            return Err(Error::ArityMismatch { expected: self.len(), got: points.len() });
        }
        Space::from_adjacency(points, self.adj.clone(), self.provenance.clone())
    }

    /// Whether the near graph is connected (empty spaces count as connected).
    pub fn graph_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        self.component_of(0).count() == self.len()
    }

    /// Connected component of `start` in the near graph.
    pub fn component_of(&self, start: usize) -> Subset {
        let mut seen = Subset::singleton(self.len(), start);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in self.adj[i].iter() {
                if !seen.contains(j) {
                    seen.insert(j);
                    stack.push(j);
                }
            }
        }
        seen
    }
}

/// Input accepted by [`build_space`].
pub enum SpaceSource {
    /// Near point pairs; reflexive pairs implied, symmetric closure applied.
    Pairs { points: Vec<String>, pairs: Vec<(String, String)> },
    /// Explicit subset nearness table. Entries not listed are far unless
    /// implied by point determination; every listed entry must agree with
    /// the point graph read off the singleton entries.
    Table { points: Vec<String>, entries: Vec<(Vec<String>, Vec<String>, bool)> },
    Metric { points: Vec<String>, coords: Vec<Vec<f64>>, epsilon: f64 },
    Discrete(Vec<String>),
    Indiscrete(Vec<String>),
}

pub fn build_space(source: SpaceSource) -> Result<Space> {
    match source {
        SpaceSource::Pairs { points, pairs } => Space::from_pairs(points, pairs),
        SpaceSource::Table { points, entries } => from_table(points, entries),
        SpaceSource::Metric { points, coords, epsilon } => Space::metric(points, coords, epsilon),
        SpaceSource::Discrete(points) => Space::discrete(points),
        SpaceSource::Indiscrete(points) => Space::indiscrete(points),
    }
}

fn from_table(points: Vec<String>, entries: Vec<(Vec<String>, Vec<String>, bool)>) -> Result<Space> {
    let probe = Space::discrete(points.clone())?;
    let rows: Vec<(Subset, Subset, bool)> = entries
        .iter()
        .map(|(e, f, near)| Ok((probe.subset(e)?, probe.subset(f)?, *near)))
        .collect::<Result<_>>()?;
    let mut singles: HashMap<(usize, usize), bool> = HashMap::new();
    for (e, f, near) in &rows {
        if e.count() == 1 && f.count() == 1 {
            let (i, j) = (e.first().unwrap(), f.first().unwrap());
            for key in [(i, j), (j, i)] {
                if let Some(prev) = singles.insert(key, *near) {
                    if prev != *near {
                        return Err(Error::NonSymmetricInput(points[i].clone(), points[j].clone()));
                    }
                }
            }
        }
    }
    let pairs: Vec<(String, String)> = singles
        .iter()
        .filter(|(_, &near)| near)
        .map(|(&(i, j), _)| (points[i].clone(), points[j].clone()))
        .collect();
    let space = Space::from_pairs(points, pairs)?;
    for (e, f, near) in rows {
        let derived = space.near_unchecked(&e, &f);
        if derived == near {
            continue;
        }
        if near {
            // E δ F although no point pair is near: split the larger side
            // into two parts, each far from the other side.
            let (whole, other, swap) = if f.count() >= 2 { (f, e, false) } else { (e, f, true) };
            if whole.count() < 2 {
                return Err(Error::TableNotPointDetermined {
                    reason: "singletons near in the table but not in the point graph".into(),
                    e: other,
                    f: whole.clone(),
                    g: whole,
                });
            }
            let head = Subset::singleton(whole.len(), whole.first().unwrap());
            let tail = whole.difference(&head);
            let reason = if swap {
                "(F ∪ G) δ E but F and G are both far from E"
            } else {
                "E δ (F ∪ G) but E is far from both F and G"
            };
            return Err(Error::TableNotPointDetermined { reason: reason.into(), e: other, f: head, g: tail });
        }
        let (i, j) = e
            .iter()
            .find_map(|i| space.adj[i].intersection(&f).first().map(|j| (i, j)))
            .expect("derived nearness has a witness pair");
        return Err(Error::TableNotPointDetermined {
            reason: "E is far from F although a point of E is near a point of F".into(),
            e: e.clone(),
            f: f.clone(),
            g: Subset::singleton(e.len(), i).union(&Subset::singleton(e.len(), j)),
        });
    }
    Ok(space)
}

/// Outcome of [`Space::kuratowski_check`]. Each optional field holds a
/// counterexample when the corresponding law fails.
#[derive(Clone, Debug, PartialEq)]
pub struct KuratowskiReport {
    pub empty_fixed: bool,
    pub extensive: Option<Subset>,
    pub additive: Option<(Subset, Subset)>,
    pub idempotent: Option<Subset>,
}

impl KuratowskiReport {
    pub fn all_hold(&self) -> bool {
        self.empty_fixed && self.extensive.is_none() && self.additive.is_none() && self.idempotent.is_none()
    }
}

/// Which derived construction to build.
pub enum Derivation<'a> {
    Product(&'a Space, &'a Space),
    Subspace(&'a Space, &'a Subset),
    Coproduct(&'a Space, &'a Space),
}

pub fn derive_space(kind: Derivation<'_>) -> Result<Space> {
    match kind {
        Derivation::Product(a, b) => Ok(a.product(b)),
        Derivation::Subspace(s, carrier) => s.subspace(carrier),
        Derivation::Coproduct(a, b) => Ok(a.coproduct(b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain4() -> Space {
        Space::metric(["0", "1", "2", "3"], vec![vec![0.0], vec![1.0], vec![2.0], vec![3.0]], 1.0).unwrap()
    }

    fn cycle8() -> Space {
        Space::cycle(["a", "b", "c", "d", "e", "f", "g", "h"]).unwrap()
    }

    #[test]
    fn discrete_space_is_identity() {
        let s = Space::discrete(["a", "b", "c"]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(s.is_near_points(i, j), i == j);
            }
        }
    }

    #[test]
    fn metric_line_gives_chain() {
        let s = chain4();
        // independent evaluation of distance <= epsilon on singleton pairs
        let xs = [0.0f64, 1.0, 2.0, 3.0];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(s.is_near_points(i, j), (xs[i] - xs[j]).abs() <= 1.0);
            }
        }
        assert_eq!(s, Space::interval(3).renamed(vec!["0", "1", "2", "3"]).unwrap());
    }

    #[test]
    fn duplicate_points_rejected() {
        assert_eq!(Space::discrete(["a", "a"]).unwrap_err(), Error::DuplicatePoint("a".into()));
        assert!(matches!(Space::from_pairs(["a"], [("a", "z")]), Err(Error::UnknownPoint(_))));
    }

    #[test]
    fn near_examples() {
        let d = Space::discrete(["a", "b", "c"]).unwrap();
        assert!(d.near(&d.subset(&["a"]).unwrap(), &d.subset(&["a", "b"]).unwrap()).unwrap());
        let c = chain4();
        assert!(!c.near(&c.subset(&["0"]).unwrap(), &c.subset(&["2", "3"]).unwrap()).unwrap());
        assert!(!c.near(&c.empty_subset(), &c.full_subset()).unwrap());
        assert!(matches!(
            c.near(&Subset::empty(3), &c.full_subset()),
            Err(Error::SubsetDimensionMismatch { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn delta_neighborhoods() {
        let base = Space::cycle(["d1", "d2", "d3", "d4"]).unwrap();
        let f = base.subset(&["d1"]).unwrap();
        assert!(base.is_delta_neighborhood(&f, &base.subset(&["d1", "d2", "d4"]).unwrap()).unwrap());
        assert!(base.is_delta_neighborhood(&base.full_subset(), &base.full_subset()).unwrap());
        let c = cycle8();
        assert!(!c.is_delta_neighborhood(&c.subset(&["a"]).unwrap(), &c.subset(&["a", "b"]).unwrap()).unwrap());
    }

    #[test]
    fn lattice_check_examples() {
        let d = Space::discrete(["a", "b"]).unwrap();
        let a = d.subset(&["a"]).unwrap();
        let b = d.subset(&["b"]).unwrap();
        assert!(d.neighborhood_lattice_check(&[(a.clone(), a.clone()), (b.clone(), b.clone())]).unwrap());
        assert!(d.neighborhood_lattice_check(&[(a.clone(), a.clone())]).unwrap());
        let base = Space::cycle(["d1", "d2", "d3", "d4"]).unwrap();
        let pairs = [
            (base.subset(&["d1"]).unwrap(), base.subset(&["d1", "d2", "d4"]).unwrap()),
            (base.subset(&["d2"]).unwrap(), base.subset(&["d1", "d2", "d3"]).unwrap()),
        ];
        assert!(base.neighborhood_lattice_check(&pairs).unwrap());
        let c = cycle8();
        let bad = [(c.subset(&["a"]).unwrap(), c.subset(&["a"]).unwrap())];
        assert!(matches!(c.neighborhood_lattice_check(&bad), Err(Error::PreconditionUnmet(_))));
    }

    #[test]
    fn closure_examples() {
        let d = Space::discrete(["a", "b", "c"]).unwrap();
        let e = d.subset(&["a", "c"]).unwrap();
        assert_eq!(d.closure(&e), e);
        let c = chain4();
        assert_eq!(c.closure(&c.subset(&["1"]).unwrap()), c.subset(&["0", "1", "2"]).unwrap());
        assert!(c.closure(&c.empty_subset()).is_empty());
    }

    #[test]
    fn kuratowski_examples() {
        assert!(Space::discrete(["a", "b", "c"]).unwrap().kuratowski_check().unwrap().all_hold());
        assert!(Space::indiscrete(["a", "b", "c"]).unwrap().kuratowski_check().unwrap().all_hold());
        let r = cycle8().kuratowski_check().unwrap();
        assert!(r.empty_fixed && r.extensive.is_none() && r.additive.is_none());
        assert!(r.idempotent.is_some());
    }

    #[test]
    fn derived_spaces() {
        let d2 = Space::discrete(["p", "q"]).unwrap();
        let prod = d2.product(&d2);
        assert_eq!(prod.len(), 4);
        assert_eq!(prod.edges().count(), 0);
        let c = cycle8();
        let sub = derive_space(Derivation::Subspace(&c, &c.subset(&["a", "b", "c"]).unwrap())).unwrap();
        assert_eq!(sub, Space::from_pairs(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap());
        let pt = Space::discrete(["*"]).unwrap();
        let cop = pt.coproduct(&pt);
        assert_eq!(cop.len(), 2);
        assert_eq!(cop.edges().count(), 0);
        assert!(matches!(c.subspace(&c.empty_subset()), Err(Error::EmptyCarrier)));
    }

    #[test]
    fn table_sources() {
        let pts = || vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let v = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let bad = build_space(SpaceSource::Table {
            points: pts(),
            entries: vec![(v(&["a"]), v(&["b", "c"]), true), (v(&["a"]), v(&["b"]), false), (v(&["a"]), v(&["c"]), false)],
        });
        match bad {
            Err(Error::TableNotPointDetermined { e, f, g, .. }) => {
                assert_eq!(e, Subset::from_indices(3, [0]));
                assert_eq!(f.union(&g), Subset::from_indices(3, [1, 2]));
            }
            other => panic!("unexpected {other:?}"),
        }
        let good = build_space(SpaceSource::Table {
            points: pts(),
            entries: vec![(v(&["a"]), v(&["b"]), true), (v(&["a"]), v(&["b", "c"]), true), (v(&["c"]), v(&["a", "b"]), false)],
        })
        .unwrap();
        assert_eq!(good, Space::from_pairs(pts(), vec![("a".to_string(), "b".to_string())]).unwrap());
        let conflict = build_space(SpaceSource::Table {
            points: pts(),
            entries: vec![(v(&["a"]), v(&["b"]), true), (v(&["b"]), v(&["a"]), false)],
        });
        assert!(matches!(conflict, Err(Error::NonSymmetricInput(..))));
    }

    #[test]
    fn transitivity_witness() {
        assert!(Space::discrete(["a", "b"]).unwrap().transitivity_violation().is_none());
        let (x, y, z) = cycle8().transitivity_violation().unwrap();
        let c = cycle8();
        assert!(c.is_near_points(x, y) && c.is_near_points(y, z) && !c.is_near_points(x, z));
    }
}
