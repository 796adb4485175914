//! Mapping spaces: the pc-maps `X → Y` with nearness between maps.
//!
//! Two maps `f`, `g` are joined in the map graph when `x δ x'` implies
//! `f(x) δ g(x')`. Every pc-map is joined to itself, and a path in this
//! graph is exactly a homotopy on the product with a digital interval.

use std::collections::HashMap;
use std::sync::Arc;

use crate::axioms::SubsetRelation;
use crate::error::{Error, Result};
use crate::maps::{is_isomorphism, SpaceMap, Verdict};
use crate::space::{Provenance, Space};
use crate::subset::Subset;

/// Largest `|Y|^|X|` enumerated by default.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;
/// Largest number of pc-maps materialized as a graph.
pub const MAX_NODES: usize = 20_000;

/// Number of candidate assignments `|Y|^|X|`, saturating.
pub fn candidate_count(x: &Space, y: &Space) -> u128 {
    (0..x.len()).fold(1u128, |acc, _| acc.saturating_mul(y.len() as u128))
}

fn check_cap(x: &Space, y: &Space, cap: u128) -> Result<()> {
    let needed = candidate_count(x, y);
    if needed > cap {
        return Err(Error::EnumerationCapExceeded { needed, cap });
    }
    Ok(())
}

/// Enumerates pc assignments `X → Y` in lexicographic order, where
/// `allowed[i]` restricts the image of point `i`.
pub(crate) fn for_each_pc_assignment<F>(x: &Space, y: &Space, allowed: &[Subset], mut visit: F)
where
    F: FnMut(&[usize]) -> bool,
{
    let n = x.len();
    if n == 0 {
        visit(&[]);
        return;
    }
    // earlier[i]: neighbors of i with a smaller index
    let earlier: Vec<Vec<usize>> = (0..n).map(|i| x.adjacency(i).iter().filter(|&j| j < i).collect()).collect();
    let mut assignment = vec![0usize; n];
    let mut candidates: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut pos = vec![0usize; n];
    let fill = |i: usize, assignment: &[usize]| -> Vec<usize> {
        let mut opts = allowed[i].clone();
        for &j in &earlier[i] {
            opts.intersect_with(y.adjacency(assignment[j]));
        }
        opts.iter().collect()
    };
    candidates[0] = fill(0, &assignment);
    let mut depth = 0usize;
    loop {
        if pos[depth] < candidates[depth].len() {
            assignment[depth] = candidates[depth][pos[depth]];
            pos[depth] += 1;
            if depth + 1 == n {
                if !visit(&assignment) {
                    return;
                }
            } else {
                depth += 1;
                candidates[depth] = fill(depth, &assignment);
                pos[depth] = 0;
            }
        } else if depth == 0 {
            return;
        } else {
            depth -= 1;
        }
    }
}

/// All pc-maps `X → Y`, lexicographically ordered.
pub fn enumerate_pc_maps(x: &Space, y: &Space, cap: u128) -> Result<Vec<Vec<usize>>> {
    check_cap(x, y, cap)?;
    let allowed = vec![y.full_subset(); x.len()];
    let mut out = Vec::new();
    for_each_pc_assignment(x, y, &allowed, |a| {
        out.push(a.to_vec());
        true
    });
    Ok(out)
}

/// Images allowed for `g(x')` when `f ~ g`: the common neighborhood of
/// `f(x)` over all `x` near `x'`.
pub(crate) fn uniform_allowed(x: &Space, y: &Space, f: &[usize]) -> Vec<Subset> {
    (0..x.len())
        .map(|xp| {
            let mut allowed = y.full_subset();
            for xx in x.adjacency(xp).iter() {
                allowed.intersect_with(y.adjacency(f[xx]));
            }
            allowed
        })
        .collect()
}

/// Calls `visit` on every pc-map joined to `f` in the map graph.
pub fn for_each_neighbor<F>(x: &Space, y: &Space, f: &[usize], visit: F)
where
    F: FnMut(&[usize]) -> bool,
{
    let allowed = uniform_allowed(x, y, f);
    for_each_pc_assignment(x, y, &allowed, visit);
}

/// How nearness between two individual maps is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapReading {
    /// `f(x) δ g(x)` for every `x`.
    Pointwise,
    /// `x δ x' ⇒ f(x) δ g(x')`: the map-graph edge relation.
    Uniform,
}

/// Nearness of two maps with common domain and codomain. Returns the first
/// failing point pair `(x, x')` when they are not near.
pub fn maps_near(f: &SpaceMap, g: &SpaceMap, reading: MapReading) -> Result<Option<(usize, usize)>> {
    if **f.domain() != **g.domain() {
        return Err(Error::DomainMismatch);
    }
    if **f.codomain() != **g.codomain() {
        return Err(Error::CodomainMismatch);
    }
    let y = f.codomain();
    let bad = match reading {
        MapReading::Pointwise => (0..f.domain().len()).map(|i| (i, i)).find(|&(i, _)| !y.is_near_points(f.apply(i), g.apply(i))),
        MapReading::Uniform => f.domain().near_pairs().find(|&(i, j)| !y.is_near_points(f.apply(i), g.apply(j))),
    };
    Ok(bad)
}

/// Every point at which two maps are pointwise far.
pub fn pointwise_far_points(f: &SpaceMap, g: &SpaceMap) -> Vec<usize> {
    let y = f.codomain();
    (0..f.domain().len()).filter(|&i| !y.is_near_points(f.apply(i), g.apply(i))).collect()
}

/// The enumerated mapping space with its map graph.
#[derive(Clone, Debug)]
pub struct MapSpace {
    source: Arc<Space>,
    target: Arc<Space>,
    nodes: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    space: Arc<Space>,
}

pub fn node_name(target: &Space, assignment: &[usize]) -> String {
    let parts: Vec<&str> = assignment.iter().map(|&j| target.name(j)).collect();
    format!("[{}]", parts.join(","))
}

pub fn map_space(x: Arc<Space>, y: Arc<Space>) -> Result<MapSpace> {
    map_space_with_cap(x, y, DEFAULT_ENUMERATION_CAP)
}

pub fn map_space_with_cap(x: Arc<Space>, y: Arc<Space>, cap: u128) -> Result<MapSpace> {
    let nodes = enumerate_pc_maps(&x, &y, cap)?;
    if nodes.len() > MAX_NODES {
        return Err(Error::EnumerationCapExceeded { needed: nodes.len() as u128, cap: MAX_NODES as u128 });
    }
    let index: HashMap<Vec<usize>, usize> = nodes.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
    let n = nodes.len();
    let adj: Vec<Subset> = nodes
        .iter()
        .map(|f| {
            let mut row = Subset::empty(n);
            for_each_neighbor(&x, &y, f, |g| {
                row.insert(index[g]);
                true
            });
            row
        })
        .collect();
    let names = nodes.iter().map(|a| node_name(&y, a)).collect();
    let space = Space::from_adjacency(names, adj, Provenance::MappingSpace)?;
    Ok(MapSpace { source: x, target: y, nodes, index, space: Arc::new(space) })
}

impl MapSpace {
    pub fn source(&self) -> &Arc<Space> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Space> {
        &self.target
    }

    /// The map graph as a space whose points are the pc-maps.
    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn assignment(&self, node: usize) -> &[usize] {
        &self.nodes[node]
    }

    pub fn node_map(&self, node: usize) -> SpaceMap {
        SpaceMap::new(self.source.clone(), self.target.clone(), self.nodes[node].clone()).expect("enumerated node")
    }

    pub fn node_of_assignment(&self, assignment: &[usize]) -> Option<usize> {
        self.index.get(assignment).copied()
    }

    pub fn node_of(&self, f: &SpaceMap) -> Option<usize> {
        if **f.domain() != *self.source || **f.codomain() != *self.target {
            return None;
        }
        self.node_of_assignment(f.assignment())
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        self.space.is_near_points(a, b)
    }

    /// Set-level nearness of maps under the given quantifier reading.
    pub fn set_relation(&self, reading: SetReading) -> MapSetRelation<'_> {
        MapSetRelation { ms: self, reading }
    }
}

/// Quantifier reading for nearness of sets of maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetReading {
    /// Both sets nonempty and every pair of members joined.
    Universal,
    /// Some pair of members joined.
    Existential,
}

pub struct MapSetRelation<'a> {
    ms: &'a MapSpace,
    reading: SetReading,
}

impl SubsetRelation for MapSetRelation<'_> {
    fn ground_size(&self) -> usize {
        self.ms.len()
    }

    fn related(&self, e: u64, f: u64) -> bool {
        let rows = |m: u64| {
            let mut out = Vec::new();
            let mut rest = m;
            while rest != 0 {
                out.push(rest.trailing_zeros() as usize);
                rest &= rest - 1;
            }
            out
        };
        let (es, fs) = (rows(e), rows(f));
        match self.reading {
            SetReading::Universal => {
                !es.is_empty() && !fs.is_empty() && es.iter().all(|&a| fs.iter().all(|&b| self.ms.is_edge(a, b)))
            }
            SetReading::Existential => es.iter().any(|&a| fs.iter().any(|&b| self.ms.is_edge(a, b))),
        }
    }
}

/// `e(α, x) = α(x)` on `Y^X × X`.
pub fn evaluation_map(ms: &MapSpace) -> SpaceMap {
    let m = ms.source.len();
    let domain = Arc::new(ms.space.product(&ms.source));
    let assignment = (0..domain.len()).map(|k| ms.nodes[k / m][k % m]).collect();
    SpaceMap::new(domain, ms.target.clone(), assignment).expect("evaluation is total")
}

/// `α ↦ α(x0)` on `Y^X`.
pub fn evaluation_at(ms: &MapSpace, x0: usize) -> SpaceMap {
    let assignment = ms.nodes.iter().map(|a| a[x0]).collect();
    SpaceMap::new(ms.space.clone(), ms.target.clone(), assignment).expect("evaluation is total")
}

/// `H(x)(y) = G(x, y)`. `ms` must be the mapping space `Z^Y`. Fails with
/// [`Error::SliceNotPc`] when some slice is not a pc-map.
pub fn curry(g: &SpaceMap, x: &Arc<Space>, ms: &MapSpace) -> Result<SpaceMap> {
    let y = &ms.source;
    if **g.domain() != x.product(y) {
        return Err(Error::DomainMismatch);
    }
    if **g.codomain() != *ms.target {
        return Err(Error::CodomainMismatch);
    }
    let m = y.len();
    let assignment = (0..x.len())
        .map(|i| {
            let slice: Vec<usize> = (0..m).map(|j| g.apply(i * m + j)).collect();
            ms.node_of_assignment(&slice).ok_or_else(|| Error::SliceNotPc(x.name(i).to_string()))
        })
        .collect::<Result<_>>()?;
    SpaceMap::new(x.clone(), ms.space.clone(), assignment)
}

/// Inverse of [`curry`]: `G(x, y) = H(x)(y)`.
pub fn uncurry(h: &SpaceMap, ms: &MapSpace) -> Result<SpaceMap> {
    if **h.codomain() != *ms.space {
        return Err(Error::CodomainMismatch);
    }
    let x = h.domain();
    let y = &ms.source;
    let m = y.len();
    let domain = Arc::new(x.product(y));
    let assignment = (0..domain.len()).map(|k| ms.nodes[h.apply(k / m)][k % m]).collect();
    SpaceMap::new(domain, ms.target.clone(), assignment)
}

/// Verdicts for both exponential laws on one triple of spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentialReport {
    /// `Z^{X×Y} ≅ (Z^Y)^X` via currying.
    pub currying: Verdict,
    /// `(Y×Z)^X ≅ Y^X × Z^X` via `α ↦ (π₁∘α, π₂∘α)`.
    pub pairing: Verdict,
}

impl ExponentialReport {
    pub fn holds(&self) -> bool {
        self.currying.holds && self.pairing.holds
    }
}

pub fn exponential_iso_check(x: &Arc<Space>, y: &Arc<Space>, z: &Arc<Space>, cap: u128) -> Result<ExponentialReport> {
    use crate::maps::Counterexample;

    // currying
    let xy = Arc::new(x.product(y));
    let m_xy_z = map_space_with_cap(xy, z.clone(), cap)?;
    let m_y_z = map_space_with_cap(y.clone(), z.clone(), cap)?;
    let m_x_zy = map_space_with_cap(x.clone(), m_y_z.space.clone(), cap)?;
    let mut assignment = Vec::with_capacity(m_xy_z.len());
    let mut currying = None;
    for node in 0..m_xy_z.len() {
        let h = curry(&m_xy_z.node_map(node), x, &m_y_z)?;
        match m_x_zy.node_of(&h) {
            Some(t) => assignment.push(t),
            None => {
                currying = Some(Verdict::fail(Counterexample::Other(format!(
                    "curried form of {} is not a pc-map",
                    m_xy_z.space.name(node)
                ))));
                break;
            }
        }
    }
    let currying = match currying {
        Some(v) => v,
        None => is_isomorphism(&SpaceMap::new(m_xy_z.space.clone(), m_x_zy.space.clone(), assignment)?),
    };

    // pairing
    let yz = Arc::new(y.product(z));
    let m_x_yz = map_space_with_cap(x.clone(), yz, cap)?;
    let m_x_y = map_space_with_cap(x.clone(), y.clone(), cap)?;
    let m_x_z = map_space_with_cap(x.clone(), z.clone(), cap)?;
    let target = Arc::new(m_x_y.space.product(&m_x_z.space));
    let zl = z.len();
    let mut assignment = Vec::with_capacity(m_x_yz.len());
    let mut pairing = None;
    for node in 0..m_x_yz.len() {
        let a = m_x_yz.assignment(node);
        let first: Vec<usize> = a.iter().map(|&k| k / zl).collect();
        let second: Vec<usize> = a.iter().map(|&k| k % zl).collect();
        match (m_x_y.node_of_assignment(&first), m_x_z.node_of_assignment(&second)) {
            (Some(p), Some(q)) => assignment.push(p * m_x_z.len() + q),
            _ => {
                pairing = Some(Verdict::fail(Counterexample::Other(format!(
                    "a component of {} is not a pc-map",
                    m_x_yz.space.name(node)
                ))));
                break;
            }
        }
    }
    let pairing = match pairing {
        Some(v) => v,
        None => is_isomorphism(&SpaceMap::new(m_x_yz.space.clone(), target, assignment)?),
    };
    Ok(ExponentialReport { currying, pairing })
}

/// Whether a map is pc, for callers that only hold assignments.
pub fn assignment_is_pc(x: &Space, y: &Space, a: &[usize]) -> bool {
    x.near_pairs().all(|(i, j)| y.is_near_points(a[i], a[j]))
}

/// Whether `g` is a pc-map in `Y^X` joined to `f`; used by witness checks.
pub fn joined(x: &Space, y: &Space, f: &[usize], g: &[usize]) -> bool {
    x.near_pairs().all(|(i, j)| y.is_near_points(f[i], g[j]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::is_pc_map;

    fn arc(s: Space) -> Arc<Space> {
        Arc::new(s)
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let x = Space::interval(2);
        let y = Space::cycle(["a", "b", "c", "d"]).unwrap();
        let fast = enumerate_pc_maps(&x, &y, DEFAULT_ENUMERATION_CAP).unwrap();
        let mut brute = Vec::new();
        for k in 0..64usize {
            let a = vec![k / 16, k / 4 % 4, k % 4];
            if assignment_is_pc(&x, &y, &a) {
                brute.push(a);
            }
        }
        assert_eq!(fast, brute);
    }

    #[test]
    fn point_domain_recovers_target() {
        let y = arc(Space::cycle(["a", "b", "c", "d", "e"]).unwrap());
        let ms = map_space(arc(Space::discrete(["*"]).unwrap()), y.clone()).unwrap();
        assert_eq!(ms.len(), 5);
        assert_eq!(**ms.space(), y.renamed(ms.space().points().to_vec()).unwrap());
        let ms = map_space(y, arc(Space::discrete(["*"]).unwrap())).unwrap();
        assert_eq!(ms.len(), 1);
        assert!(ms.is_edge(0, 0));
    }

    #[test]
    fn edge_relation_matches_definition() {
        let x = arc(Space::interval(1));
        let y = arc(Space::cycle(["a", "b", "c", "d"]).unwrap());
        let ms = map_space(x.clone(), y.clone()).unwrap();
        for a in 0..ms.len() {
            for b in 0..ms.len() {
                let expected = maps_near(&ms.node_map(a), &ms.node_map(b), MapReading::Uniform).unwrap().is_none();
                assert_eq!(ms.is_edge(a, b), expected);
            }
        }
    }

    #[test]
    fn cap_is_reported() {
        let x = Space::discrete((0..7).map(|i| i.to_string())).unwrap();
        let y = Space::discrete((0..8).map(|i| i.to_string())).unwrap();
        assert!(matches!(
            enumerate_pc_maps(&x, &y, DEFAULT_ENUMERATION_CAP),
            Err(Error::EnumerationCapExceeded { needed: 2_097_152, cap: 1_000_000 })
        ));
    }

    #[test]
    fn evaluation_maps_are_pc() {
        let pt = arc(Space::discrete(["*"]).unwrap());
        assert!(is_pc_map(&evaluation_map(&map_space(pt.clone(), pt).unwrap())).holds);
        let ms = map_space(arc(Space::interval(2)), arc(Space::cycle(["a", "b", "c", "d"]).unwrap())).unwrap();
        assert!(is_pc_map(&evaluation_map(&ms)).holds);
        assert!(is_pc_map(&evaluation_at(&ms, 0)).holds);
    }

    #[test]
    fn currying_round_trip_on_chains() {
        let c = arc(Space::interval(1));
        let g = SpaceMap::projection_second(&c, c.clone());
        let ms = map_space(c.clone(), c.clone()).unwrap();
        let h = curry(&g, &c, &ms).unwrap();
        assert!(is_pc_map(&h).holds);
        let id = ms.node_of(&SpaceMap::identity(c.clone())).unwrap();
        assert!(h.assignment().iter().all(|&n| n == id));
        assert_eq!(uncurry(&h, &ms).unwrap(), g);
    }

    #[test]
    fn exponential_laws_on_small_spaces() {
        let pt = arc(Space::discrete(["*"]).unwrap());
        assert!(exponential_iso_check(&pt, &pt, &pt, DEFAULT_ENUMERATION_CAP).unwrap().holds());
        let d2 = arc(Space::discrete(["p", "q"]).unwrap());
        assert!(exponential_iso_check(&d2, &d2, &d2, DEFAULT_ENUMERATION_CAP).unwrap().holds());
        let c3 = arc(Space::cycle(["u", "v", "w"]).unwrap());
        let i1 = arc(Space::interval(1));
        assert!(exponential_iso_check(&i1, &c3, &c3, DEFAULT_ENUMERATION_CAP).unwrap().holds());
    }

    #[test]
    fn set_readings() {
        let ms = map_space(arc(Space::discrete(["*"]).unwrap()), arc(Space::interval(2))).unwrap();
        let uni = ms.set_relation(SetReading::Universal);
        let ex = ms.set_relation(SetReading::Existential);
        // {0,2} vs {1}: every pair joined
        assert!(uni.related(0b101, 0b010));
        // {0,2} vs {0}: 2 is not joined to 0
        assert!(!uni.related(0b101, 0b001));
        assert!(ex.related(0b101, 0b001));
        assert!(!ex.related(0, 0b111));
    }
}
