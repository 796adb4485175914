//! Proximal paths, homotopies and connectedness.
//!
//! The unit interval is replaced by the digital interval `I_n`. A homotopy
//! from `f` to `g` on `X × I_k` is the same thing as a walk
//! `f = f₀ ~ f₁ ~ … ~ f_k = g` in the map graph, so homotopy is decided by
//! breadth-first search over pc-maps generated on demand.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::maps::{is_pc, is_pc_map, Counterexample, SpaceMap, Verdict};
use crate::mapspace::{assignment_is_pc, for_each_neighbor, joined};
use crate::space::{Provenance, Space};
use crate::subset::Subset;

/// Default bound on maps visited by a homotopy search.
pub const DEFAULT_VISIT_CAP: usize = 2_000_000;

/// The digital interval `I_n` on points `0, …, n`.
pub struct DigitalInterval;

impl DigitalInterval {
    pub fn new(n: usize) -> Result<Space> {
        if n == 0 {
            return Err(Error::PreconditionUnmet("interval resolution must be at least 1".into()));
        }
        Ok(Space::interval(n))
    }

    /// Resolution of `space` if it is a digital interval (by structure).
    pub fn resolution(space: &Space) -> Option<usize> {
        if let Provenance::Interval(n) = space.provenance() {
            return Some(*n);
        }
        let n = space.len().checked_sub(1)?;
        (*space == Space::interval(n)).then_some(n)
    }
}

/// Whether `f` is a proximal path from `x0` to `x1`.
pub fn is_path(f: &SpaceMap, x0: &str, x1: &str) -> Result<Verdict> {
    let n = DigitalInterval::resolution(f.domain()).ok_or(Error::DomainNotInterval)?;
    let y = f.codomain();
    let (i0, i1) = (y.index_of(x0)?, y.index_of(x1)?);
    let pc = is_pc_map(f);
    if !pc.holds {
        return Ok(pc);
    }
    if f.apply(0) != i0 {
        return Ok(Verdict::fail(Counterexample::Other(format!("path starts at `{}`", y.name(f.apply(0))))));
    }
    if f.apply(n) != i1 {
        return Ok(Verdict::fail(Counterexample::Other(format!("path ends at `{}`", y.name(f.apply(n))))));
    }
    Ok(Verdict::pass())
}

/// A walk `f₀ ~ f₁ ~ … ~ f_k` in the map graph of `X → Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyWitness {
    domain: Arc<Space>,
    codomain: Arc<Space>,
    slices: Vec<Vec<usize>>,
}

impl HomotopyWitness {
    pub fn new(domain: Arc<Space>, codomain: Arc<Space>, slices: Vec<Vec<usize>>) -> Result<HomotopyWitness> {
        if slices.is_empty() {
            return Err(Error::PreconditionUnmet("a homotopy needs at least one slice".into()));
        }
        for s in &slices {
            SpaceMap::new(domain.clone(), codomain.clone(), s.clone())?;
        }
        Ok(HomotopyWitness { domain, codomain, slices })
    }

    /// Single-slice witness from `f` to itself.
    pub fn constant(f: &SpaceMap) -> HomotopyWitness {
        HomotopyWitness {
            domain: f.domain().clone(),
            codomain: f.codomain().clone(),
            slices: vec![f.assignment().to_vec()],
        }
    }

    pub fn domain(&self) -> &Arc<Space> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Space> {
        &self.codomain
    }

    /// Number of steps `k`; the homotopy lives on `X × I_k`.
    pub fn steps(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn slices(&self) -> &[Vec<usize>] {
        &self.slices
    }

    pub fn slice(&self, t: usize) -> SpaceMap {
        SpaceMap::new(self.domain.clone(), self.codomain.clone(), self.slices[t].clone()).expect("validated slice")
    }

    pub fn start(&self) -> SpaceMap {
        self.slice(0)
    }

    pub fn end(&self) -> SpaceMap {
        self.slice(self.steps())
    }

    /// Checks every slice is pc and consecutive slices are joined. Returns
    /// the first offending slice index.
    pub fn validate(&self) -> std::result::Result<(), usize> {
        for (t, s) in self.slices.iter().enumerate() {
            if !assignment_is_pc(&self.domain, &self.codomain, s) {
                return Err(t);
            }
            if t > 0 && !joined(&self.domain, &self.codomain, &self.slices[t - 1], s) {
                return Err(t);
            }
        }
        Ok(())
    }

    pub fn reversed(&self) -> HomotopyWitness {
        let mut slices = self.slices.clone();
        slices.reverse();
        HomotopyWitness { slices, ..self.clone() }
    }

    /// `self` followed by `other`; the end of `self` must equal the start of
    /// `other`.
    pub fn concat(&self, other: &HomotopyWitness) -> Result<HomotopyWitness> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        if self.codomain != other.codomain {
            return Err(Error::CodomainMismatch);
        }
        if self.slices.last() != other.slices.first() {
            return Err(Error::PreconditionUnmet("homotopies do not meet".into()));
        }
        let mut slices = self.slices.clone();
        slices.extend(other.slices[1..].iter().cloned());
        Ok(HomotopyWitness { slices, ..self.clone() })
    }

    /// Repeats the last slice until there are `k` steps.
    pub fn padded(&self, k: usize) -> HomotopyWitness {
        let mut slices = self.slices.clone();
        while slices.len() < k + 1 {
            slices.push(slices.last().expect("nonempty").clone());
        }
        HomotopyWitness { slices, ..self.clone() }
    }

    /// The homotopy as a map `X × I_k → Y`; point `(x, t)` has index
    /// `x * (k + 1) + t`.
    pub fn to_product_map(&self) -> SpaceMap {
        let k = self.steps();
        let domain = Arc::new(self.domain.product(&Space::interval(k)));
        let assignment = (0..domain.len()).map(|p| self.slices[p % (k + 1)][p / (k + 1)]).collect();
        SpaceMap::new(domain, self.codomain.clone(), assignment).expect("slices are total")
    }

    /// Reads a map `X × I_k → Y` back as slices.
    pub fn from_product_map(f: &SpaceMap, x: Arc<Space>, k: usize) -> Result<HomotopyWitness> {
        if **f.domain() != x.product(&Space::interval(k)) {
            return Err(Error::DomainMismatch);
        }
        let slices = (0..=k).map(|t| (0..x.len()).map(|i| f.apply(i * (k + 1) + t)).collect()).collect();
        HomotopyWitness::new(x, f.codomain().clone(), slices)
    }
}

/// Shortest homotopy from `f` to `g`, or `None` when they lie in different
/// components of the map graph.
pub fn homotopic(f: &SpaceMap, g: &SpaceMap) -> Result<Option<HomotopyWitness>> {
    homotopic_with_cap(f, g, DEFAULT_VISIT_CAP)
}

pub fn homotopic_with_cap(f: &SpaceMap, g: &SpaceMap, cap: usize) -> Result<Option<HomotopyWitness>> {
    if f.domain() != g.domain() && **f.domain() != **g.domain() {
        return Err(Error::DomainMismatch);
    }
    if f.codomain() != g.codomain() && **f.codomain() != **g.codomain() {
        return Err(Error::CodomainMismatch);
    }
    if !is_pc(f) || !is_pc(g) {
        return Err(Error::NotPcInput);
    }
    let (x, y) = (f.domain(), f.codomain());
    let start = f.assignment().to_vec();
    let goal = g.assignment().to_vec();
    let mut parent: HashMap<Vec<usize>, Option<Vec<usize>>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    let mut found = false;
    while let Some(cur) = queue.pop_front() {
        if cur == goal {
            found = true;
            break;
        }
        let mut overflow = false;
        for_each_neighbor(x, y, &cur, |next| {
            if !parent.contains_key(next) {
                if parent.len() >= cap {
                    overflow = true;
                    return false;
                }
                parent.insert(next.to_vec(), Some(cur.clone()));
                queue.push_back(next.to_vec());
            }
            true
        });
        if overflow {
            return Err(Error::EnumerationCapExceeded { needed: cap as u128 + 1, cap: cap as u128 });
        }
    }
    if !found {
        return Ok(None);
    }
    let mut slices = vec![goal.clone()];
    let mut cur = goal;
    while let Some(Some(prev)) = parent.get(&cur) {
        slices.push(prev.clone());
        cur = prev.clone();
    }
    slices.reverse();
    Ok(Some(HomotopyWitness { domain: x.clone(), codomain: y.clone(), slices }))
}

/// Connectedness report for a space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connectivity {
    /// No split `X = E ∪ F` into far nonempty parts.
    pub connected: bool,
    /// Every pair of points is joined by a proximal path.
    pub path_connected: bool,
    /// A far split, when not connected.
    pub split: Option<(Subset, Subset)>,
    /// A pair of points with no path between them.
    pub unreachable: Option<(usize, usize)>,
    /// Whether `connected` came from the exhaustive split scan.
    pub exhaustive: bool,
}

pub fn connectivity(space: &Space) -> Result<Connectivity> {
    let n = space.len();
    let (connected, split, exhaustive) = if n <= 12 {
        let full = (1u64 << n) - 1;
        let mut split = None;
        // E ranges over sets containing point 0; F is the complement
        for e in (1..full).filter(|e| e & 1 == 1) {
            let (es, fs) = (Subset::from_mask(n, e), Subset::from_mask(n, full & !e));
            if !space.near(&es, &fs)? {
                split = Some((es, fs));
                break;
            }
        }
        (split.is_none(), split, true)
    } else {
        let comp = space.component_of(0);
        if comp.count() == n {
            (true, None, false)
        } else {
            let rest = comp.complement();
            (false, Some((comp, rest)), false)
        }
    };
    let mut unreachable = None;
    if n > 0 {
        let pt = Arc::new(Space::discrete(["*"])?);
        let y = Arc::new(space.clone());
        let from = SpaceMap::constant(pt.clone(), y.clone(), 0)?;
        for j in 1..n {
            let to = SpaceMap::constant(pt.clone(), y.clone(), j)?;
            if homotopic(&from, &to)?.is_none() {
                unreachable = Some((0, j));
                break;
            }
        }
    }
    Ok(Connectivity { connected, path_connected: unreachable.is_none(), split, unreachable, exhaustive })
}

/// Path `0 ↦ p₀, …, n ↦ pₙ` on `I_n`.
pub fn path_from_names<S: AsRef<str>>(codomain: Arc<Space>, points: &[S]) -> Result<SpaceMap> {
    if points.len() < 2 {
        return Err(Error::PreconditionUnmet("a path needs at least two points".into()));
    }
    SpaceMap::from_images(Arc::new(Space::interval(points.len() - 1)), codomain, points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle8() -> Arc<Space> {
        Arc::new(Space::cycle(["a", "b", "c", "d", "e", "f", "g", "h"]).unwrap())
    }

    fn point() -> Arc<Space> {
        Arc::new(Space::discrete(["*"]).unwrap())
    }

    #[test]
    fn path_examples() {
        let c = cycle8();
        let alpha1 = path_from_names(c.clone(), &["a", "b", "c", "d", "e", "f", "g", "h"]).unwrap();
        assert!(is_path(&alpha1, "a", "h").unwrap().holds);
        let constant = SpaceMap::constant(Arc::new(Space::interval(2)), c.clone(), 4).unwrap();
        assert!(is_path(&constant, "e", "e").unwrap().holds);
        let skip = path_from_names(c.clone(), &["a", "c", "d"]).unwrap();
        let v = is_path(&skip, "a", "d").unwrap();
        assert_eq!(v.counterexample, Some(Counterexample::NearPair("0".into(), "1".into())));
        let not_interval = SpaceMap::identity(c);
        assert_eq!(is_path(&not_interval, "a", "a"), Err(Error::DomainNotInterval));
    }

    #[test]
    fn homotopy_examples() {
        let c = cycle8();
        let f = SpaceMap::constant(point(), c.clone(), 0).unwrap();
        assert_eq!(homotopic(&f, &f).unwrap().unwrap().steps(), 0);
        let g = SpaceMap::constant(point(), c.clone(), 4).unwrap();
        let w = homotopic(&f, &g).unwrap().unwrap();
        assert_eq!(w.steps(), 4);
        assert!(w.validate().is_ok());
        assert_eq!(w.start(), f);
        assert_eq!(w.end(), g);
        assert!(is_pc_map(&w.to_product_map()).holds);
        let d2 = Arc::new(Space::discrete(["p", "q"]).unwrap());
        let p = SpaceMap::constant(point(), d2.clone(), 0).unwrap();
        let q = SpaceMap::constant(point(), d2, 1).unwrap();
        assert!(homotopic(&p, &q).unwrap().is_none());
        let bad = path_from_names(c.clone(), &["a", "c"]).unwrap();
        let ok = path_from_names(c, &["a", "b"]).unwrap();
        assert_eq!(homotopic(&bad, &ok), Err(Error::NotPcInput));
    }

    #[test]
    fn witness_algebra() {
        let c = cycle8();
        let f = SpaceMap::constant(point(), c.clone(), 0).unwrap();
        let g = SpaceMap::constant(point(), c.clone(), 2).unwrap();
        let h = SpaceMap::constant(point(), c.clone(), 5).unwrap();
        let fg = homotopic(&f, &g).unwrap().unwrap();
        let gh = homotopic(&g, &h).unwrap().unwrap();
        let fh = fg.concat(&gh).unwrap();
        assert!(fh.validate().is_ok());
        assert_eq!(fh.steps(), 5);
        assert!(fh.reversed().validate().is_ok());
        assert_eq!(fh.reversed().start(), h);
        assert!(fg.concat(&fg).is_err());
        let p = fg.padded(6);
        assert_eq!(p.steps(), 6);
        let back = HomotopyWitness::from_product_map(&p.to_product_map(), point(), 6).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn connectivity_examples() {
        let one = Space::discrete(["*"]).unwrap();
        let r = connectivity(&one).unwrap();
        assert!(r.connected && r.path_connected);
        let r = connectivity(&cycle8()).unwrap();
        assert!(r.connected && r.path_connected);
        let two = one.coproduct(&one);
        let r = connectivity(&two).unwrap();
        assert!(!r.connected && !r.path_connected);
        let (e, f) = r.split.unwrap();
        assert_eq!((e.count(), f.count()), (1, 1));
    }

    #[test]
    fn interval_detection() {
        assert_eq!(DigitalInterval::resolution(&Space::interval(3)), Some(3));
        let renamed = Space::from_pairs(["0", "1", "2"], [("0", "1"), ("1", "2")]).unwrap();
        assert_eq!(DigitalInterval::resolution(&renamed), Some(2));
        assert_eq!(DigitalInterval::resolution(&Space::discrete(["0", "1"]).unwrap()), None);
        assert!(DigitalInterval::new(0).is_err());
    }
}
