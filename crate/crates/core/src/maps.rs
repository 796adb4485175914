//! Maps between finite spaces and proximal continuity.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::Space;
use crate::subset::Subset;

/// A total function between the ground sets of two spaces.
#[derive(Clone, PartialEq, Eq)]
pub struct SpaceMap {
    domain: Arc<Space>,
    codomain: Arc<Space>,
    assignment: Vec<usize>,
}

impl fmt::Debug for SpaceMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.named_assignment()).finish()
    }
}

/// A concrete reason a map property fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// Near points whose images are far.
    NearPair(String, String),
    /// Subsets related in the hypothesis but not in the conclusion.
    SubsetPair(Vec<String>, Vec<String>),
    /// Two points with the same image.
    NotInjective(String, String),
    /// A codomain point with no preimage.
    Missed(String),
    /// A point of the carrier not fixed by a retraction.
    NotFixed(String),
    /// Image leaves the carrier.
    OutsideCarrier(String),
    Other(String),
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::NearPair(a, b) => write!(f, "`{a}` and `{b}` are near but their images are far"),
            Counterexample::SubsetPair(a, b) => write!(f, "{a:?} and {b:?}"),
            Counterexample::NotInjective(a, b) => write!(f, "`{a}` and `{b}` have the same image"),
            Counterexample::Missed(a) => write!(f, "`{a}` is not in the image"),
            Counterexample::NotFixed(a) => write!(f, "`{a}` is not fixed"),
            Counterexample::OutsideCarrier(a) => write!(f, "image of `{a}` leaves the carrier"),
            Counterexample::Other(s) => f.write_str(s),
        }
    }
}

/// Outcome of a map check; the counterexample is present iff `holds` is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    pub fn pass() -> Verdict {
        Verdict { holds: true, counterexample: None }
    }

    pub fn fail(c: Counterexample) -> Verdict {
        Verdict { holds: false, counterexample: Some(c) }
    }

    fn from_option(c: Option<Counterexample>) -> Verdict {
        match c {
            Some(c) => Verdict::fail(c),
            None => Verdict::pass(),
        }
    }
}

impl SpaceMap {
    pub fn new(domain: Arc<Space>, codomain: Arc<Space>, assignment: Vec<usize>) -> Result<SpaceMap> {
        if assignment.len() != domain.len() {
            return Err(Error::InvalidMap(format!(
                "assignment covers {} points but the domain has {}",
                assignment.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&y| y >= codomain.len()) {
            return Err(Error::InvalidMap(format!("image index {bad} outside the codomain")));
        }
        Ok(SpaceMap { domain, codomain, assignment })
    }

    /// Builds a map from `(point, image)` name pairs covering the domain.
    pub fn from_names<S: AsRef<str>>(domain: Arc<Space>, codomain: Arc<Space>, pairs: &[(S, S)]) -> Result<SpaceMap> {
        let mut assignment = vec![None; domain.len()];
        for (x, y) in pairs {
            let i = domain.index_of(x.as_ref())?;
            let j = codomain
                .index_of(y.as_ref())
                .map_err(|_| Error::PointNotInCodomain(y.as_ref().to_string()))?;
            if assignment[i].replace(j).is_some_and(|prev| prev != j) {
                return Err(Error::InvalidMap(format!("`{}` assigned twice", x.as_ref())));
            }
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(i, a)| a.ok_or_else(|| Error::InvalidMap(format!("`{}` is unassigned", domain.name(i)))))
            .collect::<Result<_>>()?;
        SpaceMap::new(domain, codomain, assignment)
    }

    /// Builds a map from the images of the domain points, in order.
    pub fn from_images<S: AsRef<str>>(domain: Arc<Space>, codomain: Arc<Space>, images: &[S]) -> Result<SpaceMap> {
        if images.len() != domain.len() {
            return Err(Error::InvalidMap(format!("{} images for {} points", images.len(), domain.len())));
        }
        let assignment = images
            .iter()
            .map(|y| codomain.index_of(y.as_ref()).map_err(|_| Error::PointNotInCodomain(y.as_ref().to_string())))
            .collect::<Result<_>>()?;
        SpaceMap::new(domain, codomain, assignment)
    }

    pub fn identity(space: Arc<Space>) -> SpaceMap {
        let assignment = (0..space.len()).collect();
        SpaceMap { domain: space.clone(), codomain: space, assignment }
    }

    pub fn constant(domain: Arc<Space>, codomain: Arc<Space>, target: usize) -> Result<SpaceMap> {
        let assignment = vec![target; domain.len()];
        SpaceMap::new(domain, codomain, assignment)
    }

    /// Inclusion of the subspace on `carrier` into `ambient`.
    pub fn inclusion(ambient: Arc<Space>, carrier: &Subset) -> Result<SpaceMap> {
        let sub = ambient.subspace(carrier)?;
        let assignment = carrier.iter().collect();
        SpaceMap::new(Arc::new(sub), ambient, assignment)
    }

    /// Inclusion of `sub` into `ambient`, matching points by name.
    pub fn inclusion_by_name(sub: Arc<Space>, ambient: Arc<Space>) -> Result<SpaceMap> {
        let assignment = sub.points().iter().map(|p| ambient.index_of(p)).collect::<Result<_>>()?;
        SpaceMap::new(sub, ambient, assignment)
    }

    /// First projection `A × B → A`.
    pub fn projection_first(a: Arc<Space>, b: &Space) -> SpaceMap {
        let m = b.len();
        let product = Arc::new(a.product(b));
        let assignment = (0..product.len()).map(|k| k / m).collect();
        SpaceMap { domain: product, codomain: a, assignment }
    }

    /// Second projection `A × B → B`.
    pub fn projection_second(a: &Space, b: Arc<Space>) -> SpaceMap {
        let m = b.len();
        let product = Arc::new(a.product(&b));
        let assignment = (0..product.len()).map(|k| k % m).collect();
        SpaceMap { domain: product, codomain: b, assignment }
    }

    pub fn domain(&self) -> &Arc<Space> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Space> {
        &self.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, i: usize) -> usize {
        self.assignment[i]
    }

    pub fn apply_name(&self, x: &str) -> Result<&str> {
        Ok(self.codomain.name(self.assignment[self.domain.index_of(x)?]))
    }

    pub fn named_assignment(&self) -> Vec<(String, String)> {
        self.assignment
            .iter()
            .enumerate()
            .map(|(i, &j)| (self.domain.name(i).to_string(), self.codomain.name(j).to_string()))
            .collect()
    }

    pub fn image(&self, e: &Subset) -> Subset {
        Subset::from_indices(self.codomain.len(), e.iter().map(|i| self.assignment[i]))
    }

    pub fn preimage(&self, e: &Subset) -> Subset {
        Subset::from_indices(self.domain.len(), (0..self.domain.len()).filter(|&i| e.contains(self.assignment[i])))
    }

    pub fn is_surjective(&self) -> bool {
        self.image(&self.domain.full_subset()).count() == self.codomain.len()
    }

    /// Same map with a different (name-compatible) codomain, e.g. widening
    /// into an ambient space or narrowing onto a subspace.
    pub fn recodomain(&self, codomain: Arc<Space>) -> Result<SpaceMap> {
        let assignment = self
            .assignment
            .iter()
            .map(|&j| {
                let name = self.codomain.name(j);
                codomain.index_of(name).map_err(|_| Error::PointNotInCodomain(name.to_string()))
            })
            .collect::<Result<_>>()?;
        SpaceMap::new(self.domain.clone(), codomain, assignment)
    }

    /// Restriction to the subspace on `carrier`.
    pub fn restrict(&self, carrier: &Subset) -> Result<SpaceMap> {
        if carrier.len() != self.domain.len() {
            return Err(Error::CarrierNotInDomain);
        }
        let sub = self.domain.subspace(carrier)?;
        let assignment = carrier.iter().map(|i| self.assignment[i]).collect();
        SpaceMap::new(Arc::new(sub), self.codomain.clone(), assignment)
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &SpaceMap) -> Result<SpaceMap> {
        compose(self, inner)
    }
}

/// `g ∘ f`.
pub fn compose(g: &SpaceMap, f: &SpaceMap) -> Result<SpaceMap> {
    if *f.codomain != *g.domain {
        return Err(Error::DomainMismatch);
    }
    let assignment = f.assignment.iter().map(|&y| g.assignment[y]).collect();
    SpaceMap::new(f.domain.clone(), g.codomain.clone(), assignment)
}

/// `f × g : A × B → A' × B'`.
pub fn product_map(f: &SpaceMap, g: &SpaceMap) -> SpaceMap {
    let domain = Arc::new(f.domain.product(&g.domain));
    let codomain = Arc::new(f.codomain.product(&g.codomain));
    let (m, m2) = (g.domain.len(), g.codomain.len());
    let assignment = (0..domain.len()).map(|k| f.assignment[k / m] * m2 + g.assignment[k % m]).collect();
    SpaceMap { domain, codomain, assignment }
}

/// `f ⊔ g : A ⊔ B → A' ⊔ B'`.
pub fn coproduct_map(f: &SpaceMap, g: &SpaceMap) -> SpaceMap {
    let domain = Arc::new(f.domain.coproduct(&g.domain));
    let codomain = Arc::new(f.codomain.coproduct(&g.codomain));
    let shift = f.codomain.len();
    let assignment = f.assignment.iter().copied().chain(g.assignment.iter().map(|&y| y + shift)).collect();
    SpaceMap { domain, codomain, assignment }
}

/// Proximal continuity: near points go to near points. By point
/// determination this is equivalent to `E δ F ⇒ f(E) δ' f(F)`.
pub fn is_pc_map(f: &SpaceMap) -> Verdict {
    Verdict::from_option(pc_violation(f).map(|(x, y)| {
        Counterexample::NearPair(f.domain.name(x).to_string(), f.domain.name(y).to_string())
    }))
}

pub(crate) fn pc_violation(f: &SpaceMap) -> Option<(usize, usize)> {
    f.domain.near_pairs().find(|&(x, y)| !f.codomain.is_near_points(f.assignment[x], f.assignment[y]))
}

pub fn is_pc(f: &SpaceMap) -> bool {
    pc_violation(f).is_none()
}

/// The δ-neighborhood form of continuity, `E ≪' F ⇒ f⁻¹(E) ≪ f⁻¹(F)`,
/// checked over all subset pairs of the codomain (at most 12 points).
pub fn is_pc_via_neighborhoods(f: &SpaceMap) -> Result<Verdict> {
    let m = f.codomain.len();
    if m > 12 || f.domain.len() > 64 {
        return Err(Error::GroundSetTooLarge { size: m, cap: 12 });
    }
    let up_rows: Vec<u64> = (0..m).map(|j| f.codomain.adjacency(j).to_mask()).collect();
    let down_rows: Vec<u64> = (0..f.domain.len()).map(|i| f.domain.adjacency(i).to_mask()).collect();
    let nbr = |rows: &[u64], mut e: u64| {
        let mut out = 0;
        while e != 0 {
            out |= rows[e.trailing_zeros() as usize];
            e &= e - 1;
        }
        out
    };
    let pre: Vec<u64> = (0..1u64 << m)
        .map(|e| {
            (0..f.domain.len()).filter(|&i| e >> f.assignment[i] & 1 == 1).fold(0u64, |acc, i| acc | 1 << i)
        })
        .collect();
    let full_m = (1u64 << m) - 1;
    let full_n = if f.domain.len() == 64 { u64::MAX } else { (1u64 << f.domain.len()) - 1 };
    for e in 0..=full_m {
        let ne = nbr(&up_rows, e);
        for g in 0..=full_m {
            // E ≪ G iff N(E) ⊆ G
            if ne & !g & full_m != 0 {
                continue;
            }
            let (pe, pg) = (pre[e as usize], pre[g as usize]);
            if nbr(&down_rows, pe) & !pg & full_n != 0 {
                let names = |s: u64| f.codomain.subset_names(&Subset::from_mask(m, s));
                return Ok(Verdict::fail(Counterexample::SubsetPair(names(e), names(g))));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Inverse of a bijection.
pub fn inverse(f: &SpaceMap) -> Option<SpaceMap> {
    let n = f.domain.len();
    if n != f.codomain.len() {
        return None;
    }
    let mut inv = vec![usize::MAX; n];
    for (x, &y) in f.assignment.iter().enumerate() {
        if inv[y] != usize::MAX {
            return None;
        }
        inv[y] = x;
    }
    Some(SpaceMap { domain: f.codomain.clone(), codomain: f.domain.clone(), assignment: inv })
}

/// Bijective with both directions proximally continuous.
pub fn is_isomorphism(f: &SpaceMap) -> Verdict {
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for (x, &y) in f.assignment.iter().enumerate() {
        if let Some(prev) = seen.insert(y, x) {
            return Verdict::fail(Counterexample::NotInjective(
                f.domain.name(prev).to_string(),
                f.domain.name(x).to_string(),
            ));
        }
    }
    if let Some(y) = (0..f.codomain.len()).find(|y| !seen.contains_key(y)) {
        return Verdict::fail(Counterexample::Missed(f.codomain.name(y).to_string()));
    }
    let forward = is_pc_map(f);
    if !forward.holds {
        return forward;
    }
    let inv = inverse(f).expect("checked bijective");
    match pc_violation(&inv) {
        None => Verdict::pass(),
        Some((a, b)) => Verdict::fail(Counterexample::Other(format!(
            "inverse is not proximally continuous: `{}` and `{}` are near but `{}` and `{}` are far",
            inv.domain.name(a),
            inv.domain.name(b),
            f.domain.name(inv.assignment[a]),
            f.domain.name(inv.assignment[b]),
        ))),
    }
}

fn union_space(a: &Space, b: &Space) -> Result<Space> {
    let mut points: Vec<String> = a.points().to_vec();
    points.extend(b.points().iter().filter(|p| a.index_of(p).is_err()).cloned());
    for p in a.points() {
        for q in a.points() {
            if let (Ok(i), Ok(j)) = (b.index_of(p), b.index_of(q)) {
                let (ia, ja) = (a.index_of(p)?, a.index_of(q)?);
                if a.is_near_points(ia, ja) != b.is_near_points(i, j) {
                    return Err(Error::PreconditionUnmet(format!(
                        "domains disagree on nearness of `{p}` and `{q}`"
                    )));
                }
            }
        }
    }
    let pairs: Vec<(String, String)> = a
        .edges()
        .map(|(i, j)| (a.name(i).to_string(), a.name(j).to_string()))
        .chain(b.edges().map(|(i, j)| (b.name(i).to_string(), b.name(j).to_string())))
        .collect();
    Space::from_pairs(points, pairs)
}

/// Glues two maps that agree on their shared points. The domain is the union
/// of the two domains with the union of their nearness relations.
pub fn glue(f1: &SpaceMap, f2: &SpaceMap) -> Result<SpaceMap> {
    if *f1.codomain != *f2.codomain {
        return Err(Error::CodomainMismatch);
    }
    for (i, p) in f1.domain.points().iter().enumerate() {
        if let Ok(j) = f2.domain.index_of(p) {
            if f1.assignment[i] != f2.assignment[j] {
                return Err(Error::DisagreeOnIntersection(p.clone()));
            }
        }
    }
    if f1 == f2 {
        return Ok(f1.clone());
    }
    let domain = union_space(&f1.domain, &f2.domain)?;
    glue_onto(Arc::new(domain), f1, f2)
}

/// Glues two maps whose domains are subspaces of `ambient` (matched by
/// name). The result is defined on the subspace spanned by both domains;
/// nearness between the two parts comes from `ambient`.
pub fn glue_in(ambient: &Space, f1: &SpaceMap, f2: &SpaceMap) -> Result<SpaceMap> {
    if *f1.codomain != *f2.codomain {
        return Err(Error::CodomainMismatch);
    }
    let mut carrier = ambient.empty_subset();
    for p in f1.domain.points().iter().chain(f2.domain.points()) {
        carrier.insert(ambient.index_of(p).map_err(|_| Error::CarrierNotInDomain)?);
    }
    for (i, p) in f1.domain.points().iter().enumerate() {
        if let Ok(j) = f2.domain.index_of(p) {
            if f1.assignment[i] != f2.assignment[j] {
                return Err(Error::DisagreeOnIntersection(p.clone()));
            }
        }
    }
    glue_onto(Arc::new(ambient.subspace(&carrier)?), f1, f2)
}

fn glue_onto(domain: Arc<Space>, f1: &SpaceMap, f2: &SpaceMap) -> Result<SpaceMap> {
    let assignment = domain
        .points()
        .iter()
        .map(|p| match f1.domain.index_of(p) {
            Ok(i) => f1.assignment[i],
            Err(_) => f2.assignment[f2.domain.index_of(p).expect("point comes from one of the parts")],
        })
        .collect();
    SpaceMap::new(domain, f1.codomain.clone(), assignment)
}

/// Whether `k` is a proximal retraction onto `carrier`: pc, lands in the
/// carrier and fixes it pointwise. The codomain may be the ambient space or
/// the subspace on `carrier`.
pub fn is_retraction(k: &SpaceMap, carrier: &Subset) -> Result<Verdict> {
    let ambient = &k.domain;
    if carrier.len() != ambient.len() {
        return Err(Error::CarrierNotInDomain);
    }
    for x in 0..ambient.len() {
        let image = k.codomain.name(k.assignment[x]);
        let Ok(back) = ambient.index_of(image) else {
            return Err(Error::CarrierNotInDomain);
        };
        if !carrier.contains(back) {
            return Ok(Verdict::fail(Counterexample::OutsideCarrier(ambient.name(x).to_string())));
        }
        if carrier.contains(x) && back != x {
            return Ok(Verdict::fail(Counterexample::NotFixed(ambient.name(x).to_string())));
        }
    }
    Ok(is_pc_map(k))
}
