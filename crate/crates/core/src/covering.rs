//! Proximal covering maps.
//!
//! For every base point `x'` a certificate records a δ-neighborhood `Y'` of
//! `{x'}` and a partition of `p⁻¹(Y')` into sheets, one per fiber point `v`,
//! with `{v} ≪ sheet` and `p` restricted to the sheet an isomorphism onto
//! `Y'`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::maps::{is_isomorphism, is_pc, product_map, SpaceMap};
use crate::space::Space;
use crate::subset::Subset;

/// Default bound on backtracking steps per covering search.
pub const DEFAULT_SEARCH_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sheet {
    /// Points of the sheet, in the covering space.
    pub points: Subset,
    /// The fiber point `V_i` the sheet is a δ-neighborhood of.
    pub fiber_point: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringEntry {
    pub base_point: usize,
    /// The δ-neighborhood `Y'` of the base point.
    pub neighborhood: Subset,
    pub sheets: Vec<Sheet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringCertificate {
    pub entries: Vec<CoveringEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoveringOutcome {
    Covering(CoveringCertificate),
    /// No neighborhood of this base point admits a sheet decomposition.
    Fails { base_point: usize },
}

impl CoveringOutcome {
    pub fn is_covering(&self) -> bool {
        matches!(self, CoveringOutcome::Covering(_))
    }

    pub fn certificate(&self) -> Option<&CoveringCertificate> {
        match self {
            CoveringOutcome::Covering(c) => Some(c),
            CoveringOutcome::Fails { .. } => None,
        }
    }
}

impl CoveringCertificate {
    pub fn entry(&self, base_point: usize) -> Option<&CoveringEntry> {
        self.entries.iter().find(|e| e.base_point == base_point)
    }

    /// Re-checks every clause of the definition, independently of the search.
    pub fn validate(&self, p: &SpaceMap) -> std::result::Result<(), String> {
        let (x, base) = (p.domain(), p.codomain());
        if !is_pc(p) {
            return Err("map is not proximally continuous".into());
        }
        if !p.is_surjective() {
            return Err("map is not surjective".into());
        }
        for b in 0..base.len() {
            if self.entry(b).is_none() {
                return Err(format!("no entry for `{}`", base.name(b)));
            }
        }
        for entry in &self.entries {
            let name = base.name(entry.base_point);
            let nb = &entry.neighborhood;
            let single = Subset::singleton(base.len(), entry.base_point);
            if !base.is_delta_neighborhood(&single, nb).map_err(|e| e.to_string())? {
                return Err(format!("`{name}`: Y' is not a δ-neighborhood"));
            }
            let pre = p.preimage(nb);
            let mut union = x.empty_subset();
            let nb_space = Arc::new(base.subspace(nb).map_err(|e| e.to_string())?);
            for (i, sheet) in entry.sheets.iter().enumerate() {
                if sheet.points.intersects(&union) {
                    return Err(format!("`{name}`: sheet {i} overlaps an earlier sheet"));
                }
                union.union_with(&sheet.points);
                if p.apply(sheet.fiber_point) != entry.base_point || !sheet.points.contains(sheet.fiber_point) {
                    return Err(format!("`{name}`: sheet {i} has a bad fiber point"));
                }
                let v = Subset::singleton(x.len(), sheet.fiber_point);
                if !x.is_delta_neighborhood(&v, &sheet.points).map_err(|e| e.to_string())? {
                    return Err(format!("`{name}`: sheet {i} is not a δ-neighborhood of its fiber point"));
                }
                let restricted = p
                    .restrict(&sheet.points)
                    .and_then(|r| r.recodomain(nb_space.clone()))
                    .map_err(|e| format!("`{name}`: sheet {i}: {e}"))?;
                if !is_isomorphism(&restricted).holds {
                    return Err(format!("`{name}`: sheet {i} is not mapped isomorphically"));
                }
            }
            if union != pre {
                return Err(format!("`{name}`: sheets do not partition the preimage"));
            }
        }
        Ok(())
    }
}

/// `p⁻¹({x'})`.
pub fn fiber(p: &SpaceMap, base_point: &str) -> Result<Subset> {
    let b = p
        .codomain()
        .index_of(base_point)
        .map_err(|_| Error::PointNotInCodomain(base_point.to_string()))?;
    Ok(p.preimage(&Subset::singleton(p.codomain().len(), b)))
}

pub fn is_covering_map(p: &SpaceMap) -> Result<CoveringOutcome> {
    is_covering_map_with_cap(p, DEFAULT_SEARCH_CAP)
}

pub fn is_covering_map_with_cap(p: &SpaceMap, cap: u64) -> Result<CoveringOutcome> {
    let base = p.codomain();
    if let Some(missing) = (0..base.len()).find(|&b| p.preimage(&Subset::singleton(base.len(), b)).is_empty()) {
        return Err(Error::NotSurjective(base.name(missing).to_string()));
    }
    if !is_pc(p) {
        return Err(Error::NotPc);
    }
    let mut steps = 0u64;
    let mut entries = Vec::with_capacity(base.len());
    for b in 0..base.len() {
        match entry_for(p, b, &mut steps, cap)? {
            Some(e) => entries.push(e),
            None => return Ok(CoveringOutcome::Fails { base_point: b }),
        }
    }
    Ok(CoveringOutcome::Covering(CoveringCertificate { entries }))
}

/// Neighborhoods of `{b}` ordered by size, then lexicographically.
fn candidate_neighborhoods(base: &Space, b: usize) -> Vec<Subset> {
    let core = base.adjacency(b).clone();
    let free: Vec<usize> = core.complement().iter().collect();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for size in 0..=free.len() {
        let mut layer: Vec<Vec<usize>> = itertools::Itertools::combinations(free.iter().copied(), size)
            .map(|extra| {
                let mut s: Vec<usize> = core.iter().chain(extra).collect();
                s.sort_unstable();
                s
            })
            .collect();
        layer.sort();
        out.extend(layer);
    }
    out.into_iter().map(|s| Subset::from_indices(base.len(), s)).collect()
}

fn entry_for(p: &SpaceMap, b: usize, steps: &mut u64, cap: u64) -> Result<Option<CoveringEntry>> {
    let base = p.codomain();
    let fiber_points: Vec<usize> = p.preimage(&Subset::singleton(base.len(), b)).iter().collect();
    for nb in candidate_neighborhoods(base, b) {
        if let Some(sheets) = decompose(p, &nb, &fiber_points, steps, cap)? {
            return Ok(Some(CoveringEntry {
                base_point: b,
                neighborhood: nb,
                sheets: sheets
                    .into_iter()
                    .zip(&fiber_points)
                    .map(|(points, &v)| Sheet { points, fiber_point: v })
                    .collect(),
            }));
        }
    }
    Ok(None)
}

/// Splits `p⁻¹(nb)` into one sheet per fiber point, or returns `None`.
fn decompose(p: &SpaceMap, nb: &Subset, fiber_points: &[usize], steps: &mut u64, cap: u64) -> Result<Option<Vec<Subset>>> {
    let (x, base) = (p.domain(), p.codomain());
    let k = fiber_points.len();
    let pre = p.preimage(nb);
    // every point of Y' needs exactly k preimages
    if nb.iter().any(|y| p.preimage(&Subset::singleton(base.len(), y)).count() != k) {
        return Ok(None);
    }
    // a fiber point's neighbors must lie in its own sheet, inside p⁻¹(Y')
    for &v in fiber_points {
        if !x.adjacency(v).is_subset(&pre) {
            return Ok(None);
        }
    }
    let mut forced: Vec<Option<usize>> = vec![None; x.len()];
    for (s, &v) in fiber_points.iter().enumerate() {
        for u in x.adjacency(v).iter() {
            match forced[u] {
                Some(t) if t != s => return Ok(None),
                _ => forced[u] = Some(s),
            }
        }
    }
    let order: Vec<usize> = pre.iter().filter(|u| !fiber_points.contains(u)).collect();
    let mut sheet_of: Vec<Option<usize>> = vec![None; x.len()];
    let mut members: Vec<Vec<usize>> = fiber_points.iter().map(|&v| vec![v]).collect();
    for (s, &v) in fiber_points.iter().enumerate() {
        sheet_of[v] = Some(s);
    }
    let fits = |u: usize, s: usize, members: &[Vec<usize>]| {
        members[s].iter().all(|&t| p.apply(t) != p.apply(u) && x.is_near_points(u, t) == base.is_near_points(p.apply(u), p.apply(t)))
    };
    fn go(
        i: usize,
        order: &[usize],
        forced: &[Option<usize>],
        sheet_of: &mut Vec<Option<usize>>,
        members: &mut Vec<Vec<usize>>,
        fits: &dyn Fn(usize, usize, &[Vec<usize>]) -> bool,
        steps: &mut u64,
        cap: u64,
    ) -> Result<bool> {
        if i == order.len() {
            return Ok(true);
        }
        *steps += 1;
        if *steps > cap {
            return Err(Error::SearchCapExceeded(cap));
        }
        let u = order[i];
        let choices: Vec<usize> = match forced[u] {
            Some(s) => vec![s],
            None => (0..members.len()).collect(),
        };
        for s in choices {
            if fits(u, s, members) {
                sheet_of[u] = Some(s);
                members[s].push(u);
                if go(i + 1, order, forced, sheet_of, members, fits, steps, cap)? {
                    return Ok(true);
                }
                members[s].pop();
                sheet_of[u] = None;
            }
        }
        Ok(false)
    }
    if !go(0, &order, &forced, &mut sheet_of, &mut members, &fits, steps, cap)? {
        return Ok(None);
    }
    let sheets: Vec<Subset> = members.iter().map(|m| Subset::from_indices(x.len(), m.iter().copied())).collect();
    // bijectivity onto Y' follows from the counts; the ≪ condition from `forced`
    debug_assert!(sheets.iter().all(|s| s.count() == nb.count()));
    Ok(Some(sheets))
}

/// Certificate for `p × q` built from certificates of the factors: product
/// neighborhoods and products of sheets.
pub fn product_certificate(
    p: &SpaceMap,
    cp: &CoveringCertificate,
    q: &SpaceMap,
    cq: &CoveringCertificate,
) -> Result<(SpaceMap, CoveringCertificate)> {
    let pq = product_map(p, q);
    let (m_base, m_up) = (q.codomain().len(), q.domain().len());
    let up_len = pq.domain().len();
    let base_len = pq.codomain().len();
    let mut entries = Vec::new();
    for b1 in 0..p.codomain().len() {
        for b2 in 0..m_base {
            let e1 = cp.entry(b1).ok_or_else(|| Error::PreconditionUnmet("incomplete certificate".into()))?;
            let e2 = cq.entry(b2).ok_or_else(|| Error::PreconditionUnmet("incomplete certificate".into()))?;
            let nb = Subset::from_indices(
                base_len,
                e1.neighborhood.iter().flat_map(|i| e2.neighborhood.iter().map(move |j| i * m_base + j)),
            );
            let mut sheets = Vec::new();
            for s1 in &e1.sheets {
                for s2 in &e2.sheets {
                    let points = Subset::from_indices(
                        up_len,
                        s1.points.iter().flat_map(|i| s2.points.iter().map(move |j| i * m_up + j)),
                    );
                    sheets.push(Sheet { points, fiber_point: s1.fiber_point * m_up + s2.fiber_point });
                }
            }
            entries.push(CoveringEntry { base_point: b1 * m_base + b2, neighborhood: nb, sheets });
        }
    }
    Ok((pq, CoveringCertificate { entries }))
}

/// The projection `X × {0, …, k−1} → X` with the discrete factor, a
/// finite stand-in for the trivial covering with infinitely many sheets.
pub fn trivial_covering(x: Arc<Space>, k: usize) -> Result<SpaceMap> {
    let copies = Space::discrete((0..k).map(|i| i.to_string()))?;
    Ok(SpaceMap::projection_first(x, &copies))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stacked() -> SpaceMap {
        let mut pts = Vec::new();
        let mut pairs = Vec::new();
        for s in ["a", "b", "c"] {
            for i in 1..=4 {
                pts.push(format!("{s}{i}"));
                pairs.push((format!("{s}{i}"), format!("{s}{}", i % 4 + 1)));
            }
        }
        let up = Arc::new(Space::from_pairs(pts.clone(), pairs).unwrap());
        let down = Arc::new(Space::cycle(["d1", "d2", "d3", "d4"]).unwrap());
        let images: Vec<String> = pts.iter().map(|p| format!("d{}", &p[1..])).collect();
        SpaceMap::from_images(up, down, &images).unwrap()
    }

    #[test]
    fn identity_is_covering() {
        let s = Arc::new(Space::cycle(["u", "v", "w", "z"]).unwrap());
        let id = SpaceMap::identity(s.clone());
        let out = is_covering_map(&id).unwrap();
        let cert = out.certificate().unwrap();
        assert!(cert.validate(&id).is_ok());
        assert!(cert.entries.iter().all(|e| e.sheets.len() == 1));
    }

    #[test]
    fn stacked_certificate() {
        let p = stacked();
        let out = is_covering_map(&p).unwrap();
        let cert = out.certificate().unwrap();
        assert!(cert.validate(&p).is_ok());
        let (up, down) = (p.domain(), p.codomain());
        let d1 = cert.entry(down.index_of("d1").unwrap()).unwrap();
        assert_eq!(d1.neighborhood, down.subset(&["d1", "d2", "d4"]).unwrap());
        let sheets: Vec<Subset> = d1.sheets.iter().map(|s| s.points.clone()).collect();
        assert_eq!(
            sheets,
            vec![
                up.subset(&["a1", "a2", "a4"]).unwrap(),
                up.subset(&["b1", "b2", "b4"]).unwrap(),
                up.subset(&["c1", "c2", "c4"]).unwrap(),
            ]
        );
        assert_eq!(fiber(&p, "d1").unwrap(), up.subset(&["a1", "b1", "c1"]).unwrap());
    }

    #[test]
    fn fold_with_edge_is_not_covering() {
        let up = Arc::new(Space::from_pairs(["p", "q"], [("p", "q")]).unwrap());
        let pt = Arc::new(Space::discrete(["*"]).unwrap());
        let fold = SpaceMap::constant(up, pt.clone(), 0).unwrap();
        assert_eq!(is_covering_map(&fold).unwrap(), CoveringOutcome::Fails { base_point: 0 });
        // without the edge the fold is a two-sheeted covering
        let d2 = Arc::new(Space::discrete(["p", "q"]).unwrap());
        let fold = SpaceMap::constant(d2, pt, 0).unwrap();
        assert!(is_covering_map(&fold).unwrap().is_covering());
    }

    #[test]
    fn preconditions() {
        let d2 = Arc::new(Space::discrete(["p", "q"]).unwrap());
        let pt = Arc::new(Space::discrete(["*"]).unwrap());
        let inc = SpaceMap::constant(pt.clone(), d2.clone(), 0).unwrap();
        assert_eq!(is_covering_map(&inc), Err(Error::NotSurjective("q".into())));
        let i1 = Arc::new(Space::interval(1));
        let swap = SpaceMap::from_images(i1, d2, &["p", "q"]).unwrap();
        assert_eq!(is_covering_map(&swap), Err(Error::NotPc));
        assert!(fiber(&swap, "zz").is_err());
        let c = SpaceMap::constant(Arc::new(Space::interval(2)), pt, 0).unwrap();
        assert_eq!(fiber(&c, "*").unwrap().count(), 3);
    }

    #[test]
    fn products_of_coverings() {
        let p = stacked();
        let cp = is_covering_map(&p).unwrap().certificate().unwrap().clone();
        let q = trivial_covering(Arc::new(Space::interval(1)), 2).unwrap();
        let cq = is_covering_map(&q).unwrap().certificate().unwrap().clone();
        let (pq, built) = product_certificate(&p, &cp, &q, &cq).unwrap();
        assert!(built.validate(&pq).is_ok());
        let searched = is_covering_map(&pq).unwrap();
        assert_eq!(searched.certificate().unwrap(), &built);
    }

    #[test]
    fn trivial_covering_with_three_copies() {
        let q = trivial_covering(Arc::new(Space::cycle(["u", "v", "w", "z"]).unwrap()), 3).unwrap();
        let out = is_covering_map(&q).unwrap();
        let cert = out.certificate().unwrap();
        assert!(cert.validate(&q).is_ok());
        assert!(cert.entries.iter().all(|e| e.sheets.len() == 3));
    }
}
