//! The bundled example suite: every worked example as a named check, plus
//! findings where the finite model behaves differently from the informal
//! claim it models.

use std::sync::Arc;

use serde::Serialize;

use crate::axioms::{check_axioms, check_relation, Classification, DEFAULT_CAP};
use crate::covering::{is_covering_map, product_certificate, trivial_covering, CoveringCertificate};
use crate::descriptive::check_descriptive_axioms;
use crate::error::{Error, Result};
use crate::fixtures::*;
use crate::homotopy::{connectivity, homotopic};
use crate::lifting::{
    check_pushout, default_catalog, has_phep, is_cofibration, is_fibration, pullback, push_forward,
    retract_characterization, solve_extension, validate_extension, Square,
};
use crate::maps::{compose, coproduct_map, glue_in, is_isomorphism, is_pc, product_map, SpaceMap};
use crate::mapspace::{
    evaluation_at, evaluation_map, exponential_iso_check, map_space, maps_near, pointwise_far_points, MapReading,
    SetReading, DEFAULT_ENUMERATION_CAP,
};
use crate::space::Space;
use crate::subset::Subset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// An observed divergence between the finite model and the informal claim.
/// `reproduced` says whether the divergence showed up on this run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub name: String,
    pub reproduced: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
    pub findings: Vec<Finding>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

type Outcome = Result<(bool, String)>;

fn run(name: &str, f: impl FnOnce() -> Outcome) -> CheckResult {
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CheckResult { name: name.to_string(), passed, detail }
}

fn arc(s: Space) -> Arc<Space> {
    Arc::new(s)
}

fn point() -> Arc<Space> {
    arc(Space::discrete(["*"]).expect("fixed names"))
}

fn covering_certificate(p: &SpaceMap) -> Result<CoveringCertificate> {
    is_covering_map(p)?
        .certificate()
        .cloned()
        .ok_or_else(|| Error::PreconditionUnmet("expected a covering".into()))
}

fn sheets_named(p: &SpaceMap, cert: &CoveringCertificate, base: &str) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let b = p.codomain().index_of(base)?;
    let entry = cert.entry(b).ok_or_else(|| Error::UnknownPoint(base.to_string()))?;
    let nb = p.codomain().subset_names(&entry.neighborhood);
    let sheets = entry.sheets.iter().map(|s| p.domain().subset_names(&s.points)).collect();
    Ok((nb, sheets))
}

fn named(groups: &[&[&str]]) -> Vec<Vec<String>> {
    groups.iter().map(|g| g.iter().map(|s| s.to_string()).collect()).collect()
}

fn checks() -> Vec<CheckResult> {
    let catalog = default_catalog();
    let mut out = Vec::new();

    out.push(run("discrete-proximity-is-ef", || {
        let r = check_axioms(&Space::discrete(["x", "y", "z"])?)?;
        Ok((r.classification == Classification::Efremovic, r.classification.label().into()))
    }));
    out.push(run("indiscrete-proximity-is-ef", || {
        let r = check_axioms(&Space::indiscrete(["x", "y", "z"])?)?;
        Ok((r.classification == Classification::Efremovic, r.classification.label().into()))
    }));
    out.push(run("cell-space-is-a-proximity", || {
        let r = check_axioms(&cells())?;
        Ok((r.classification != Classification::NotAProximity, r.classification.label().into()))
    }));
    out.push(run("closure-is-kuratowski-on-ef-space", || {
        // two cliques: transitive, hence EF
        let x = Space::from_pairs(["p", "q", "r", "s", "t"], [("p", "q"), ("r", "s"), ("s", "t"), ("r", "t")])?;
        let r = x.kuratowski_check()?;
        Ok((r.all_hold(), format!("{r:?}")))
    }));
    out.push(run("closure-equals-near-points", || {
        let x = cells();
        let n = x.len();
        for m in 0..1u64 << n {
            let e = Subset::from_mask(n, m);
            let near = Subset::from_indices(n, (0..n).filter(|&i| x.near(&Subset::singleton(n, i), &e).unwrap_or(false)));
            if x.closure(&e) != near {
                return Ok((false, format!("E = {:?}", x.subset_names(&e))));
            }
        }
        Ok((true, format!("{} subsets", 1u64 << n)))
    }));
    out.push(run("neighborhood-lattice", || {
        let x = cells();
        let pairs: Vec<(Subset, Subset)> = (0..x.len())
            .map(|i| {
                let e = Subset::singleton(x.len(), i);
                let f = x.closure(&e);
                (e, f)
            })
            .collect();
        for a in &pairs {
            for b in &pairs {
                x.neighborhood_lattice_check(&[a.clone(), b.clone()])?;
            }
        }
        Ok((true, format!("{} pairs of neighborhoods", pairs.len() * pairs.len())))
    }));
    out.push(run("gluing-lemma", || {
        let z = square();
        let left = arc(z.subspace(&z.subset(&["a", "b", "c"])?)?);
        let right = arc(z.subspace(&z.subset(&["c", "d", "a"])?)?);
        let f1 = SpaceMap::from_images(left, z.clone(), &["a", "b", "c"])?;
        let f2 = SpaceMap::from_images(right, z.clone(), &["a", "c", "d"])?;
        let g = glue_in(&z, &f1, &f2)?;
        Ok((is_pc(&f1) && is_pc(&f2) && is_pc(&g), "glued two arcs of the square".into()))
    }));
    out.push(run("connected-iff-path-connected", || {
        let spaces = [cells(), stacked_total(), arc(cells().coproduct(&Space::discrete(["*"])?)), square()];
        for s in &spaces {
            let c = connectivity(s)?;
            if c.connected != c.path_connected {
                return Ok((false, format!("{s:?}")));
            }
        }
        Ok((true, format!("{} spaces", spaces.len())))
    }));
    out.push(run("homotopy-is-an-equivalence", || {
        let x = cells();
        let pt = point();
        let [f, g, h] = [0, 2, 5].map(|i| SpaceMap::constant(pt.clone(), x.clone(), i).expect("in range"));
        let refl = homotopic(&f, &f)?.is_some();
        let fg = homotopic(&f, &g)?.ok_or_else(|| Error::PreconditionUnmet("f ≄ g".into()))?;
        let gh = homotopic(&g, &h)?.ok_or_else(|| Error::PreconditionUnmet("g ≄ h".into()))?;
        let sym = fg.reversed().validate().is_ok() && fg.reversed().end() == f;
        let fh = fg.concat(&gh)?;
        let trans = fh.validate().is_ok() && fh.start() == f && fh.end() == h;
        Ok((refl && sym && trans, format!("witness lengths {} + {}", fg.steps(), gh.steps())))
    }));
    out.push(run("cell-paths-alpha1-near-alpha2", || {
        let [a1, a2, _] = cell_paths();
        let bad = maps_near(&a1, &a2, MapReading::Pointwise)?;
        Ok((bad.is_none(), "pointwise nearness at every t".into()))
    }));
    out.push(run("cell-paths-alpha1-far-alpha3", || {
        let [a1, _, a3] = cell_paths();
        let far = pointwise_far_points(&a1, &a3);
        let at2 = far.contains(&2) && a1.apply_name("2")? == "c" && a3.apply_name("2")? == "g";
        Ok((at2, format!("far at t = {far:?}")))
    }));
    out.push(run("mapping-space-nearness-axioms", || {
        let i1 = arc(Space::interval(1));
        let ms = map_space(i1.clone(), i1)?;
        let r = check_relation(&ms.set_relation(SetReading::Existential), DEFAULT_CAP)?;
        Ok((r.classification != Classification::NotAProximity, r.classification.label().into()))
    }));
    out.push(run("exponential-laws", || {
        let i1 = arc(Space::interval(1));
        let d2 = arc(Space::discrete(["p", "q"])?);
        let r = exponential_iso_check(&i1, &i1, &d2, DEFAULT_ENUMERATION_CAP)?;
        Ok((r.holds(), format!("{r:?}")))
    }));
    out.push(run("evaluation-map-is-pc", || {
        let ms = map_space(arc(Space::interval(1)), square())?;
        Ok((is_pc(&evaluation_map(&ms)), format!("{} maps", ms.len())))
    }));
    out.push(run("path-start-map-is-pc", || {
        let ms = map_space(arc(Space::interval(1)), square())?;
        Ok((is_pc(&evaluation_at(&ms, 0)), "α ↦ α(0)".into()))
    }));
    out.push(run("path-endpoints-map-is-pc", || {
        let z = square();
        let ms = map_space(arc(Space::interval(1)), z.clone())?;
        let zz = arc(z.product(&z));
        let a = (0..ms.len()).map(|k| ms.assignment(k)[0] * z.len() + ms.assignment(k)[1]).collect();
        Ok((is_pc(&SpaceMap::new(ms.space().clone(), zz, a)?), "α ↦ (α(0), α(1))".into()))
    }));
    out.push(run("identity-is-covering", || Ok((is_covering_map(&SpaceMap::identity(cells()))?.is_covering(), String::new()))));
    out.push(run("stacked-covering-certificate", || {
        let p = stacked_covering();
        let cert = covering_certificate(&p)?;
        let (nb, sheets) = sheets_named(&p, &cert, "d1")?;
        let ok = nb == ["d1", "d2", "d4"]
            && sheets == named(&[&["a1", "a2", "a4"], &["b1", "b2", "b4"], &["c1", "c2", "c4"]])
            && cert.validate(&p).is_ok();
        Ok((ok, format!("Y' = {nb:?}, sheets {sheets:?}")))
    }));
    out.push(run("trivial-covering-with-many-sheets", || {
        let p = trivial_covering(cells(), 3)?;
        let cert = covering_certificate(&p)?;
        Ok((cert.entries.iter().all(|e| e.sheets.len() == 3) && cert.validate(&p).is_ok(), "3 sheets".into()))
    }));
    out.push(run("isomorphism-is-covering", || {
        let x = cells();
        let y = arc(x.renamed(CELLS.iter().map(|c| c.to_uppercase()).collect())?);
        let iso = SpaceMap::new(x.clone(), y, (0..x.len()).collect())?;
        Ok((is_isomorphism(&iso).holds && is_covering_map(&iso)?.is_covering(), String::new()))
    }));
    out.push(run("product-of-coverings", || {
        let p = stacked_covering();
        let q = trivial_covering(arc(Space::interval(1)), 2)?;
        let (pq, cert) = product_certificate(&p, &covering_certificate(&p)?, &q, &covering_certificate(&q)?)?;
        Ok((cert.validate(&pq).is_ok() && is_covering_map(&pq)?.is_covering(), format!("{} entries", cert.entries.len())))
    }));
    out.push(run("projection-is-fibration", || {
        let pi = SpaceMap::projection_first(arc(Space::interval(1)), &square());
        let v = is_fibration(&pi, &catalog)?;
        Ok((v.holds, v.label()))
    }));
    out.push(run("constant-is-fibration", || {
        let c = SpaceMap::constant(cells(), point(), 0)?;
        let v = is_fibration(&c, &catalog)?;
        Ok((v.holds, v.label()))
    }));
    let pi = || SpaceMap::projection_first(arc(Space::interval(1)), &Space::cycle(["u", "v", "w"]).expect("fixed"));
    out.push(run("composition-of-fibrations", || {
        let p1 = pi();
        let p2 = SpaceMap::constant(p1.codomain().clone(), point(), 0)?;
        let (a, b, c) = (is_fibration(&p1, &catalog)?, is_fibration(&p2, &catalog)?, is_fibration(&compose(&p2, &p1)?, &catalog)?);
        Ok((a.holds && b.holds && c.holds, c.label()))
    }));
    out.push(run("product-of-fibrations", || {
        let c = SpaceMap::constant(arc(Space::interval(1)), point(), 0)?;
        let v = is_fibration(&product_map(&pi(), &c), &catalog)?;
        Ok((v.holds, v.label()))
    }));
    out.push(run("pullback-of-fibration", || {
        let p = pi();
        let g = SpaceMap::from_images(arc(Space::interval(2)), p.codomain().clone(), &["0", "1", "1"])?;
        let pb = pullback(&p, &g)?;
        let v = is_fibration(&pb.gp, &catalog)?;
        Ok((v.holds, format!("|P| = {}, {}", pb.space.len(), v.label())))
    }));
    out.push(run("push-forward-of-fibration", || {
        let p = SpaceMap::projection_first(arc(Space::interval(2)), &Space::discrete(["p", "q"])?);
        let (ps, _, _) = push_forward(&p, &arc(Space::interval(1)))?;
        let v = is_fibration(&ps, &catalog)?;
        Ok((v.holds, v.label()))
    }));
    out.push(run("square-extension-problem", || {
        let (h, k, f) = square_extension_problem();
        match solve_extension(&h, &k, &f)? {
            Some(ext) => Ok((validate_extension(&h, &k, &f, &ext), format!("slices {:?}", ext.slices()))),
            None => Ok((false, "no extension".into())),
        }
    }));
    let summand = || summand_inclusion(&Space::interval(1), &Space::discrete(["*"]).expect("fixed"));
    out.push(run("summand-inclusion-is-cofibration", || {
        let v = is_cofibration(&summand()?, &catalog)?;
        Ok((v.holds, v.label()))
    }));
    out.push(run("cofibrations-invariant-under-isomorphism", || {
        let h = summand()?;
        let x2 = arc(h.domain().renamed(vec!["p", "q"])?);
        let y2 = arc(h.codomain().renamed(vec!["P", "Q", "R"])?);
        let h2 = SpaceMap::new(x2, y2, h.assignment().to_vec())?;
        let (a, b) = (is_cofibration(&h, &catalog)?, is_cofibration(&h2, &catalog)?);
        Ok((a.holds == b.holds && a.holds, b.label()))
    }));
    out.push(run("composition-of-cofibrations", || {
        let h1 = summand()?;
        let h2 = summand_inclusion(h1.codomain(), &Space::discrete(["#"])?)?;
        let v = is_cofibration(&compose(&h2, &h1)?, &catalog)?;
        Ok((v.holds, v.label()))
    }));
    out.push(run("coproduct-of-cofibrations", || {
        let h = summand()?;
        let id = SpaceMap::identity(point());
        let v = is_cofibration(&coproduct_map(&h, &id), &catalog)?;
        Ok((v.holds, v.label()))
    }));
    out.push(run("pushout-preserves-cofibration", || {
        let pt = point();
        let i1 = arc(Space::interval(1));
        let xp = arc(pt.coproduct(&pt));
        let yp = arc(i1.coproduct(&pt));
        let sq = Square {
            h: SpaceMap::from_images(pt.clone(), xp.clone(), &["0:*"])?,
            f: SpaceMap::from_images(pt.clone(), i1.clone(), &["0"])?,
            h_prime: SpaceMap::from_images(i1, yp.clone(), &["0:0", "0:1"])?,
            f_prime: SpaceMap::from_images(xp, yp, &["0:0", "1:*"])?,
        };
        let r = check_pushout(&sq, &catalog)?;
        let (a, b) = (is_cofibration(&sq.h, &catalog)?, is_cofibration(&sq.h_prime, &catalog)?);
        Ok((r.holds() && a.holds && b.holds, format!("{} cocones", r.cocones)))
    }));
    out.push(run("retract-characterization-agrees", || {
        let h = summand()?;
        let cof = is_cofibration(&h, &catalog)?.holds;
        let r: Vec<bool> = (1..=3).map(|n| retract_characterization(&h, n).map(|o| o.holds)).collect::<Result<_>>()?;
        Ok((r.iter().all(|&x| x == cof), format!("cofibration {cof}, retracts at n = 1..3: {r:?}")))
    }));
    out.push(run("color-space-descriptive-axioms", || {
        let r = check_descriptive_axioms(&cells_by_color(), &cell_colors())?;
        Ok((r.all_hold(), r.classification.label().into()))
    }));
    out.push(run("colored-gamma1-near-gamma2", || {
        let [g1, g2, _] = colored_paths();
        Ok((maps_near(&g1, &g2, MapReading::Pointwise)?.is_none(), "same color at every t".into()))
    }));
    out.push(run("colored-gamma1-far-gamma3", || {
        let [g1, _, g3] = colored_paths();
        let far = pointwise_far_points(&g1, &g3);
        Ok((far.first() == Some(&1), format!("far at t = {far:?}")))
    }));
    out.push(run("descriptive-evaluation-is-dpc", || {
        let ms = map_space(arc(Space::interval(1)), cells_by_color())?;
        Ok((is_pc(&evaluation_map(&ms)), format!("{} maps", ms.len())))
    }));
    out.push(run("descriptive-stacked-covering", || {
        let p = stacked_descriptive_covering();
        let cert = covering_certificate(&p)?;
        let (nb1, s1) = sheets_named(&p, &cert, "d1")?;
        let (nb2, s2) = sheets_named(&p, &cert, "d2")?;
        let ok = nb1 == ["d1", "d3", "d4"]
            && s1 == named(&[&["a1", "a3", "a4"], &["b1", "b3", "b4"], &["c1", "c3", "c4"]])
            && nb2 == ["d2"]
            && s2 == named(&[&["a2"], &["b2"], &["c2"]])
            && cert.validate(&p).is_ok();
        Ok((ok, format!("d1: {nb1:?} {s1:?}; d2: {nb2:?} {s2:?}")))
    }));
    out.push(run("descriptive-identity-is-covering", || {
        Ok((is_covering_map(&SpaceMap::identity(cells_by_color()))?.is_covering(), String::new()))
    }));
    out
}

fn findings() -> Vec<Finding> {
    let mut out = Vec::new();
    let mut note = |name: &str, r: Result<(bool, String)>| {
        let (reproduced, detail) = r.unwrap_or_else(|e| (false, format!("error: {e}")));
        out.push(Finding { name: name.to_string(), reproduced, detail });
    };
    note("uniform-map-nearness-separates-alpha1-alpha2", (|| {
        let [a1, a2, _] = cell_paths();
        let bad = maps_near(&a1, &a2, MapReading::Uniform)?;
        Ok((
            bad.is_some(),
            match bad {
                Some((s, t)) => format!(
                    "the map-graph edge needs α1({s}) near α2({t}); {} and {} are far",
                    a1.apply_name(&s.to_string())?,
                    a2.apply_name(&t.to_string())?
                ),
                None => "paths are joined".into(),
            },
        ))
    })());
    note("endpoint-inclusion-is-not-a-cofibration", (|| {
        let h = endpoint_inclusion();
        let v = has_phep(&h, &arc(Space::interval(2)))?;
        let retract = retract_characterization(&h, 1)?.holds;
        Ok((
            !v.holds && retract,
            format!("extension property over I2: {}; retraction at n = 1: {retract}", v.holds),
        ))
    })());
    note("cell-space-closure-is-not-idempotent", (|| {
        let x = cells();
        let r = x.kuratowski_check()?;
        let cls = check_axioms(&x)?.classification;
        Ok((
            r.idempotent.is_some() && cls == Classification::Cech,
            format!(
                "the 8-cycle is a {}; closure fails idempotence at {:?}",
                cls.label(),
                r.idempotent.as_ref().map(|e| x.subset_names(e))
            ),
        ))
    })());
    note("colored-paths-are-not-dpc", (|| {
        let bad: Vec<usize> = colored_paths().iter().enumerate().filter(|(_, g)| !is_pc(g)).map(|(i, _)| i + 1).collect();
        let names: Vec<String> = bad.iter().map(|i| format!("γ{i}")).collect();
        Ok((!bad.is_empty(), format!("not dpc: {}", names.join(", "))))
    })());
    out
}

pub fn run_example_suite() -> SuiteReport {
    SuiteReport { checks: checks(), findings: findings() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let r = run_example_suite();
        let failed: Vec<_> = r.failures().collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert!(r.checks.len() >= 30);
        assert!(r.findings.iter().all(|f| f.reproduced), "{:#?}", r.findings);
    }
}
