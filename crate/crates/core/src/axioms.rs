//! Exhaustive and fast-path checks of the proximity axioms.
//!
//! Generic checks run over a [`SubsetRelation`] whose subsets are bitmasks,
//! so they apply equally to point-determined spaces, set-level readings of
//! mapping spaces, and anything else a caller can phrase as a predicate on
//! pairs of subsets.

use std::fmt;

use crate::error::{Error, Result};
use crate::space::Space;
use crate::subset::{submasks, Subset};

/// Default ground-set cap for exhaustive subset scans.
pub const DEFAULT_CAP: usize = 12;

/// A binary relation on the subsets of an `n`-point ground set, `n <= 64`.
pub trait SubsetRelation {
    fn ground_size(&self) -> usize;
    fn related(&self, e: u64, f: u64) -> bool;
}

/// Point-determined nearness given by adjacency rows.
pub struct PointRelation {
    n: usize,
    rows: Vec<u64>,
}

impl PointRelation {
    pub fn new(space: &Space) -> Result<PointRelation> {
        if space.len() > 64 {
            return Err(Error::GroundSetTooLarge { size: space.len(), cap: 64 });
        }
        let rows = (0..space.len()).map(|i| space.adjacency(i).to_mask()).collect();
        Ok(PointRelation { n: space.len(), rows })
    }

    pub fn neighborhood(&self, e: u64) -> u64 {
        let mut out = 0;
        let mut rest = e;
        while rest != 0 {
            out |= self.rows[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        out
    }
}

impl SubsetRelation for PointRelation {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn related(&self, e: u64, f: u64) -> bool {
        self.neighborhood(e) & f != 0
    }
}

/// Wraps a closure as a relation.
pub struct FnRelation<F> {
    pub n: usize,
    pub f: F,
}

impl<F: Fn(u64, u64) -> bool> SubsetRelation for FnRelation<F> {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn related(&self, e: u64, f: u64) -> bool {
        (self.f)(e, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    K,
}

impl Axiom {
    pub const EF: [Axiom; 5] = [Axiom::A, Axiom::B, Axiom::C, Axiom::D, Axiom::E];
    pub const DESCRIPTIVE: [Axiom; 5] = [Axiom::F, Axiom::G, Axiom::H, Axiom::I, Axiom::K];

    pub fn label(self) -> &'static str {
        match self {
            Axiom::A => "(a)",
            Axiom::B => "(b)",
            Axiom::C => "(c)",
            Axiom::D => "(d)",
            Axiom::E => "(e)",
            Axiom::F => "(f)",
            Axiom::G => "(g)",
            Axiom::H => "(h)",
            Axiom::I => "(i)",
            Axiom::K => "(k)",
        }
    }

    /// The separation axioms whose failure alone still leaves a Čech proximity.
    pub fn is_separation(self) -> bool {
        matches!(self, Axiom::D | Axiom::K)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Pair(Subset, Subset),
    Triple(Subset, Subset, Subset),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub holds: bool,
    pub counterexample: Option<Witness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Efremovic,
    Cech,
    NotAProximity,
}

impl Classification {
    pub fn label(self) -> &'static str {
        match self {
            Classification::Efremovic => "EF-proximity",
            Classification::Cech => "Čech-proximity",
            Classification::NotAProximity => "not-a-proximity",
        }
    }
}

/// How axiom (d) or (k) was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparationMethod {
    Exhaustive,
    Transitivity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub verdicts: Vec<AxiomVerdict>,
    pub classification: Classification,
    pub separation_method: SeparationMethod,
}

impl AxiomReport {
    fn new(verdicts: Vec<AxiomVerdict>, separation_method: SeparationMethod) -> AxiomReport {
        let failing: Vec<Axiom> = verdicts.iter().filter(|v| !v.holds).map(|v| v.axiom).collect();
        let classification = if failing.is_empty() {
            Classification::Efremovic
        } else if failing.iter().all(|a| a.is_separation()) {
            Classification::Cech
        } else {
            Classification::NotAProximity
        };
        AxiomReport { verdicts, classification, separation_method }
    }

    pub fn verdict(&self, axiom: Axiom) -> Option<&AxiomVerdict> {
        self.verdicts.iter().find(|v| v.axiom == axiom)
    }

    pub fn holds(&self, axiom: Axiom) -> bool {
        self.verdict(axiom).is_some_and(|v| v.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }
}

fn verdict(axiom: Axiom, counterexample: Option<Witness>) -> AxiomVerdict {
    AxiomVerdict { axiom, holds: counterexample.is_none(), counterexample }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn ensure_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap || n > 20 {
        return Err(Error::GroundSetTooLarge { size: n, cap: cap.min(20) });
    }
    Ok(())
}

fn sub(n: usize, m: u64) -> Subset {
    Subset::from_mask(n, m)
}

/// Axiom (a): `E δ F ⇒ F δ E`.
pub fn check_symmetry<R: SubsetRelation>(rel: &R) -> Option<Witness> {
    let n = rel.ground_size();
    let full = full_mask(n);
    for e in 0..=full {
        for f in 0..=full {
            if rel.related(e, f) && !rel.related(f, e) {
                return Some(Witness::Pair(sub(n, e), sub(n, f)));
            }
        }
    }
    None
}

/// Axiom (c): near sets are nonempty.
pub fn check_nonempty<R: SubsetRelation>(rel: &R) -> Option<Witness> {
    let n = rel.ground_size();
    let full = full_mask(n);
    for x in 0..=full {
        if rel.related(0, x) {
            return Some(Witness::Pair(sub(n, 0), sub(n, x)));
        }
        if rel.related(x, 0) {
            return Some(Witness::Pair(sub(n, x), sub(n, 0)));
        }
    }
    None
}

/// Axiom (e): overlapping sets are near.
pub fn check_overlap<R: SubsetRelation>(rel: &R) -> Option<Witness> {
    let n = rel.ground_size();
    let full = full_mask(n);
    for e in 1..=full {
        for f in 1..=full {
            if e & f != 0 && !rel.related(e, f) {
                return Some(Witness::Pair(sub(n, e), sub(n, f)));
            }
        }
    }
    None
}

/// Which argument additivity is checked in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `(E ∪ F) δ G ⇔ E δ G ∨ F δ G`.
    Left,
    /// `E δ (F ∪ G) ⇔ E δ F ∨ E δ G`.
    Right,
}

/// Exact additivity check in `O(4^n)` relation evaluations.
///
/// For a fixed other argument, the relation is additive iff its value on
/// every nonempty set is the disjunction of its values on the singletons,
/// and nearness of the empty set forces nearness of every set. Violations
/// are turned into concrete triples by peeling off one point at a time.
/// Triples are returned in the axiom's own order: `(E, F, G)`.
pub fn check_additivity<R: SubsetRelation>(rel: &R, side: Side) -> Option<Witness> {
    let n = rel.ground_size();
    let full = full_mask(n);
    // r(split, fixed) with the split argument on the chosen side
    let r = |split: u64, fixed: u64| match side {
        Side::Left => rel.related(split, fixed),
        Side::Right => rel.related(fixed, split),
    };
    let triple = |a: u64, b: u64, fixed: u64| match side {
        Side::Left => Witness::Triple(sub(n, a), sub(n, b), sub(n, fixed)),
        Side::Right => Witness::Triple(sub(n, fixed), sub(n, a), sub(n, b)),
    };
    for fixed in 0..=full {
        let singles: Vec<bool> = (0..n).map(|x| r(1 << x, fixed)).collect();
        let empty_near = r(0, fixed);
        for split in 1..=full {
            let near = r(split, fixed);
            if empty_near && !near {
                return Some(triple(0, split, fixed));
            }
            let mut rest = split;
            let any_single = loop {
                if rest == 0 {
                    break None;
                }
                let x = rest.trailing_zeros() as usize;
                if singles[x] {
                    break Some(x);
                }
                rest &= rest - 1;
            };
            match (near, any_single) {
                (false, Some(x)) => return Some(triple(1 << x, split, fixed)),
                (true, None) => {
                    let mut cur = split;
                    loop {
                        let x = cur & cur.wrapping_neg();
                        let rest = cur & !x;
                        if !r(rest, fixed) {
                            return Some(triple(rest, x, fixed));
                        }
                        cur = rest;
                    }
                }
                _ => {}
            }
        }
    }
    None
}

/// Exhaustive separation check: `E δ̲ F ⇒ ∃G: E δ̲ G ∧ (X−G) δ̲ F`.
///
/// Tries `G = {x : E δ̲ {x}}` first, which is the only candidate needed
/// when the relation is point-determined, then falls back to all `G`.
pub fn check_separation_exhaustive<R: SubsetRelation>(rel: &R) -> Option<Witness> {
    let n = rel.ground_size();
    let full = full_mask(n);
    for e in 0..=full {
        let far_points: u64 = (0..n).filter(|&x| !rel.related(e, 1 << x)).fold(0, |acc, x| acc | 1 << x);
        for f in 0..=full {
            if rel.related(e, f) {
                continue;
            }
            let works = |g: u64| !rel.related(e, g) && !rel.related(full & !g, f);
            if works(far_points) || submasks(full).any(works) {
                continue;
            }
            return Some(Witness::Pair(sub(n, e), sub(n, f)));
        }
    }
    None
}

/// Checks (a)–(e) exhaustively on an arbitrary relation.
pub fn check_relation<R: SubsetRelation>(rel: &R, cap: usize) -> Result<AxiomReport> {
    ensure_cap(rel.ground_size(), cap)?;
    Ok(AxiomReport::new(
        vec![
            verdict(Axiom::A, check_symmetry(rel)),
            verdict(Axiom::B, check_additivity(rel, Side::Left)),
            verdict(Axiom::C, check_nonempty(rel)),
            verdict(Axiom::D, check_separation_exhaustive(rel)),
            verdict(Axiom::E, check_overlap(rel)),
        ],
        SeparationMethod::Exhaustive,
    ))
}

/// Checks (f)–(k) exhaustively. `dint(E, F)` is the descriptive intersection.
pub fn check_descriptive_relation<R, D>(rel: &R, dint: D, cap: usize) -> Result<AxiomReport>
where
    R: SubsetRelation,
    D: Fn(u64, u64) -> u64,
{
    let n = rel.ground_size();
    ensure_cap(n, cap)?;
    let full = full_mask(n);
    let mut g = None;
    let mut h = None;
    'outer: for e in 0..=full {
        for f in 0..=full {
            if dint(e, f) == 0 {
                continue;
            }
            if g.is_none() && !rel.related(e, f) {
                g = Some(Witness::Pair(sub(n, e), sub(n, f)));
            }
            if h.is_none() && dint(f, e) == 0 {
                h = Some(Witness::Pair(sub(n, e), sub(n, f)));
            }
            if g.is_some() && h.is_some() {
                break 'outer;
            }
        }
    }
    Ok(AxiomReport::new(
        vec![
            verdict(Axiom::F, check_nonempty(rel)),
            verdict(Axiom::G, g),
            verdict(Axiom::H, h),
            verdict(Axiom::I, check_additivity(rel, Side::Right)),
            verdict(Axiom::K, check_separation_exhaustive(rel)),
        ],
        SeparationMethod::Exhaustive,
    ))
}

/// Fast separation verdict for a space: (d) holds iff nearness of points is
/// transitive. A path `x ~ y ~ z` with `x` far from `z` gives the
/// counterexample `{x}`, `{z}`.
pub fn separation_fast_path(space: &Space) -> Option<Witness> {
    space.transitivity_violation().map(|(x, _, z)| {
        let n = space.len();
        Witness::Pair(Subset::singleton(n, x), Subset::singleton(n, z))
    })
}

/// Axiom report for a space. (a), (b), (c), (e) are checked exhaustively up
/// to `cap` points and hold by construction beyond it; (d) uses the
/// transitivity criterion.
pub fn check_axioms_with_cap(space: &Space, cap: usize) -> Result<AxiomReport> {
    let d = verdict(Axiom::D, separation_fast_path(space));
    if space.len() > cap.min(20) {
        return Ok(AxiomReport::new(
            vec![
                verdict(Axiom::A, None),
                verdict(Axiom::B, None),
                verdict(Axiom::C, None),
                d,
                verdict(Axiom::E, None),
            ],
            SeparationMethod::Transitivity,
        ));
    }
    let rel = TabledRelation::new(space)?;
    Ok(AxiomReport::new(
        vec![
            verdict(Axiom::A, check_symmetry(&rel)),
            verdict(Axiom::B, check_additivity(&rel, Side::Left)),
            verdict(Axiom::C, check_nonempty(&rel)),
            d,
            verdict(Axiom::E, check_overlap(&rel)),
        ],
        SeparationMethod::Transitivity,
    ))
}

pub fn check_axioms(space: &Space) -> Result<AxiomReport> {
    check_axioms_with_cap(space, DEFAULT_CAP)
}

/// Point-determined relation with every neighborhood precomputed.
pub struct TabledRelation {
    n: usize,
    nbr: Vec<u64>,
}

impl TabledRelation {
    pub fn new(space: &Space) -> Result<TabledRelation> {
        let n = space.len();
        if n > 24 {
            return Err(Error::GroundSetTooLarge { size: n, cap: 24 });
        }
        let rows: Vec<u64> = (0..n).map(|i| space.adjacency(i).to_mask()).collect();
        let mut nbr = vec![0u64; 1 << n];
        for m in 1..nbr.len() {
            let low = m.trailing_zeros() as usize;
            nbr[m] = nbr[m & (m - 1)] | rows[low];
        }
        Ok(TabledRelation { n, nbr })
    }
}

impl SubsetRelation for TabledRelation {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn related(&self, e: u64, f: u64) -> bool {
        self.nbr[e as usize] & f != 0
    }
}

/// Re-evaluates a counterexample against the relation; true when it really
/// is a violation of the stated axiom.
pub fn witness_violates<R: SubsetRelation>(rel: &R, axiom: Axiom, witness: &Witness) -> bool {
    let n = rel.ground_size();
    let full = full_mask(n);
    match (axiom, witness) {
        (Axiom::A, Witness::Pair(e, f)) => rel.related(e.to_mask(), f.to_mask()) && !rel.related(f.to_mask(), e.to_mask()),
        (Axiom::C | Axiom::F, Witness::Pair(e, f)) => {
            rel.related(e.to_mask(), f.to_mask()) && (e.is_empty() || f.is_empty())
        }
        (Axiom::E, Witness::Pair(e, f)) => e.intersects(f) && !rel.related(e.to_mask(), f.to_mask()),
        (Axiom::B, Witness::Triple(e, f, g)) => {
            let (e, f, g) = (e.to_mask(), f.to_mask(), g.to_mask());
            rel.related(e | f, g) != (rel.related(e, g) || rel.related(f, g))
        }
        (Axiom::I, Witness::Triple(e, f, g)) => {
            let (e, f, g) = (e.to_mask(), f.to_mask(), g.to_mask());
            rel.related(e, f | g) != (rel.related(e, f) || rel.related(e, g))
        }
        (Axiom::D | Axiom::K, Witness::Pair(e, f)) => {
            let (e, f) = (e.to_mask(), f.to_mask());
            !rel.related(e, f) && !submasks(full).any(|g| !rel.related(e, g) && !rel.related(full & !g, f))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle8() -> Space {
        Space::cycle(["a", "b", "c", "d", "e", "f", "g", "h"]).unwrap()
    }

    #[test]
    fn discrete_and_indiscrete_are_ef() {
        for s in [Space::discrete(["a", "b", "c"]).unwrap(), Space::indiscrete(["a", "b", "c"]).unwrap()] {
            let r = check_axioms(&s).unwrap();
            assert!(r.all_hold());
            assert_eq!(r.classification, Classification::Efremovic);
        }
        assert!(check_axioms(&Space::indiscrete(["x"]).unwrap()).unwrap().all_hold());
    }

    #[test]
    fn eight_cycle_is_cech() {
        let s = cycle8();
        let r = check_axioms(&s).unwrap();
        for a in [Axiom::A, Axiom::B, Axiom::C, Axiom::E] {
            assert!(r.holds(a), "{a}");
        }
        assert!(!r.holds(Axiom::D));
        assert_eq!(r.classification, Classification::Cech);
        let rel = TabledRelation::new(&s).unwrap();
        let w = r.verdict(Axiom::D).unwrap().counterexample.clone().unwrap();
        assert!(witness_violates(&rel, Axiom::D, &w));
        assert!(check_separation_exhaustive(&rel).is_some());
    }

    #[test]
    fn additivity_counterexample_is_extracted() {
        // related iff both sets have at least two points: not additive
        let rel = FnRelation { n: 3, f: |e: u64, f: u64| e.count_ones() >= 2 && f.count_ones() >= 2 };
        let w = check_additivity(&rel, Side::Left).unwrap();
        assert!(witness_violates(&rel, Axiom::B, &w));
        let w = check_additivity(&rel, Side::Right).unwrap();
        assert!(witness_violates(&rel, Axiom::I, &w));
        let report = check_relation(&rel, DEFAULT_CAP).unwrap();
        assert_eq!(report.classification, Classification::NotAProximity);
        for v in &report.verdicts {
            if let Some(w) = &v.counterexample {
                assert!(witness_violates(&rel, v.axiom, w), "{}", v.axiom);
            }
        }
    }

    #[test]
    fn empty_set_nearness_is_caught() {
        let rel = FnRelation { n: 2, f: |_e: u64, _f: u64| true };
        let r = check_relation(&rel, DEFAULT_CAP).unwrap();
        assert!(!r.holds(Axiom::C));
        assert!(r.holds(Axiom::B));
    }

    #[test]
    fn cap_is_enforced_for_generic_relations() {
        let rel = FnRelation { n: 13, f: |e: u64, f: u64| e & f != 0 };
        assert!(matches!(check_relation(&rel, DEFAULT_CAP), Err(Error::GroundSetTooLarge { size: 13, .. })));
    }

    #[test]
    fn large_spaces_use_fast_path() {
        let names: Vec<String> = (0..30).map(|i| format!("p{i}")).collect();
        let r = check_axioms(&Space::cycle(names).unwrap()).unwrap();
        assert_eq!(r.classification, Classification::Cech);
    }
}
