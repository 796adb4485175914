mod common;

use std::path::Path;
use std::sync::Arc;

use proptest::prelude::*;
use proptest::sample::Index;

use common::*;
use proxcheck::covering::is_covering_map;
use proxcheck::descriptive::{descriptive_space, ProbeTable};
use proxcheck::homotopy::{connectivity, homotopic};
use proxcheck::io::{parse_map_str, parse_space_str, serialize_map, serialize_space};
use proxcheck::maps::{glue, is_isomorphism, is_pc, is_pc_map, is_pc_via_neighborhoods, SpaceMap};
use proxcheck::{Space, Subset};

fn space(max: usize) -> impl Strategy<Value = Space> {
    (1..=max, any::<u64>()).prop_map(|(n, bits)| space_from_bits(n, bits))
}

fn pc_map(x: Space, y: Space, pick: Index) -> Option<SpaceMap> {
    let all = pc_assignments(&x, &y);
    (!all.is_empty()).then(|| SpaceMap::new(Arc::new(x), Arc::new(y), pick.get(&all).clone()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn space_files_round_trip(x in space(6)) {
        let back = parse_space_str(&serialize_space(&x)).unwrap();
        prop_assert_eq!(back.space, x);
        prop_assert!(back.warnings.is_empty());
    }

    #[test]
    fn map_files_round_trip(x in space(4), y in space(4), assignment in prop::collection::vec(any::<Index>(), 4)) {
        let a: Vec<usize> = (0..x.len()).map(|i| assignment[i].index(y.len())).collect();
        let f = SpaceMap::new(Arc::new(x), Arc::new(y), a).unwrap();
        let back = parse_map_str(&serialize_map(&f), Path::new(".")).unwrap();
        prop_assert_eq!(back.map, f);
    }

    #[test]
    fn descriptive_tables_round_trip(values in prop::collection::vec(prop::collection::vec(-3i64..3, 2), 1..6)) {
        let table = ProbeTable::from_integers(
            &["u", "v"],
            values.iter().enumerate().map(|(i, v)| (format!("x{i}"), v.clone())).collect(),
        ).unwrap();
        let x = descriptive_space(names(values.len()), &table).unwrap();
        let back = parse_space_str(&serialize_space(&x)).unwrap();
        prop_assert_eq!(&back.space, &x);
        // color agreement is exactly equality of vectors
        for i in 0..values.len() {
            for j in 0..values.len() {
                prop_assert_eq!(near(&x, i, j), values[i] == values[j]);
            }
        }
    }

    #[test]
    fn closure_is_the_set_of_near_points(x in space(6), mask in any::<u64>()) {
        let n = x.len();
        let e = Subset::from_mask(n, mask & ((1 << n) - 1));
        let expect = Subset::from_indices(n, (0..n).filter(|&i| e.iter().any(|j| near(&x, i, j))));
        prop_assert_eq!(x.closure(&e), expect);
        for i in 0..n {
            prop_assert_eq!(x.near(&Subset::singleton(n, i), &e).unwrap(), x.closure(&e).contains(i));
        }
    }

    #[test]
    fn neighborhood_pairs_form_a_lattice(x in space(6), masks in prop::collection::vec((any::<u64>(), any::<u64>()), 1..4)) {
        let n = x.len();
        let full = (1u64 << n) - 1;
        let pairs: Vec<(Subset, Subset)> = masks
            .iter()
            .map(|&(e, extra)| {
                let e = Subset::from_mask(n, e & full);
                let f = x.closure(&e).union(&Subset::from_mask(n, extra & full));
                (e, f)
            })
            .collect();
        prop_assert!(x.neighborhood_lattice_check(&pairs).unwrap());
    }

    #[test]
    fn pc_agrees_with_the_pair_oracle(x in space(5), y in space(4), assignment in prop::collection::vec(any::<Index>(), 5)) {
        let a: Vec<usize> = (0..x.len()).map(|i| assignment[i].index(y.len())).collect();
        let oracle = (0..x.len()).all(|i| (0..x.len()).all(|j| !near(&x, i, j) || near(&y, a[i], a[j])));
        let f = SpaceMap::new(Arc::new(x), Arc::new(y), a).unwrap();
        prop_assert_eq!(is_pc(&f), oracle);
        prop_assert_eq!(is_pc_via_neighborhoods(&f).unwrap().holds, oracle);
        if let Some(c) = is_pc_map(&f).counterexample {
            prop_assert!(!oracle, "counterexample {} on a pc map", c);
        }
    }

    #[test]
    fn gluing_pc_pieces_is_pc(x in space(6), y in space(3), split in any::<u64>(), extra in any::<u64>(), pick in any::<Index>(), pick2 in any::<Index>()) {
        let n = x.len();
        let full = (1u64 << n) - 1;
        let a = Subset::from_mask(n, split & full);
        let b = a.complement().union(&Subset::from_mask(n, extra & full));
        prop_assume!(!a.is_empty() && !b.is_empty());
        let (sa, sb) = (x.subspace(&a).unwrap(), x.subspace(&b).unwrap());
        let f1 = pc_map(sa.clone(), y.clone(), pick);
        prop_assume!(f1.is_some());
        let f1 = f1.unwrap();
        let agreeing: Vec<Vec<usize>> = pc_assignments(&sb, &y)
            .into_iter()
            .filter(|g| sb.points().iter().enumerate().all(|(i, p)| sa.index_of(p).map_or(true, |j| f1.apply(j) == g[i])))
            .collect();
        prop_assume!(!agreeing.is_empty());
        let f2 = SpaceMap::new(Arc::new(sb), f1.codomain().clone(), pick2.get(&agreeing).clone()).unwrap();
        prop_assert!(is_pc(&glue(&f1, &f2).unwrap()));
    }

    #[test]
    fn homotopy_is_an_equivalence(a in space(2), x in space(4), picks in any::<(Index, Index, Index)>()) {
        let all = pc_assignments(&a, &x);
        let (a, x) = (Arc::new(a), Arc::new(x));
        let m = |p: Index| SpaceMap::new(a.clone(), x.clone(), p.get(&all).clone()).unwrap();
        let (f, g, h) = (m(picks.0), m(picks.1), m(picks.2));
        prop_assert!(homotopic(&f, &f).unwrap().is_some());
        let fg = homotopic(&f, &g).unwrap();
        prop_assert_eq!(fg.is_some(), homotopic(&g, &f).unwrap().is_some());
        if let (Some(u), Some(v)) = (fg, homotopic(&g, &h).unwrap()) {
            let w = u.concat(&v).unwrap();
            prop_assert!(w.validate().is_ok());
            prop_assert!(homotopic(&f, &h).unwrap().is_some());
        }
    }

    #[test]
    fn connected_iff_path_connected(x in space(6)) {
        let c = connectivity(&x).unwrap();
        prop_assert_eq!(c.connected, c.path_connected);
    }

    #[test]
    fn isomorphisms_are_coverings(x in space(6), seed in any::<u64>()) {
        let iso = random_relabeling(&mut rng(seed), Arc::new(x));
        prop_assert!(is_isomorphism(&iso).holds);
        prop_assert!(is_covering_map(&iso).unwrap().is_covering());
    }
}
