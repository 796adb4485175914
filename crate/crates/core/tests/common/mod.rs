#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;
use proxcheck::maps::SpaceMap;
use proxcheck::Space;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// Space on `n` points whose edges are read off `bits` (pairs in
/// lexicographic order).
pub fn space_from_bits(n: usize, bits: u64) -> Space {
    let pts = names(n);
    let pairs: Vec<(String, String)> = (0..n)
        .tuple_combinations()
        .enumerate()
        .filter(|(k, _)| bits >> k & 1 == 1)
        .map(|(_, (i, j))| (pts[i].clone(), pts[j].clone()))
        .collect();
    Space::from_pairs(pts, pairs).expect("distinct names")
}

pub fn random_space<R: Rng>(rng: &mut R, min: usize, max: usize) -> Space {
    let n = rng.gen_range(min..=max);
    let density: f64 = rng.gen_range(0.1..0.9);
    let bits = (0..n * (n - 1) / 2).fold(0u64, |acc, k| acc | (u64::from(rng.gen_bool(density)) << k));
    space_from_bits(n, bits)
}

/// Random partition into cliques: point-nearness is an equivalence.
pub fn random_ef_space<R: Rng>(rng: &mut R, min: usize, max: usize) -> Space {
    let n = rng.gen_range(min..=max);
    let blocks: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let pts = names(n);
    let pairs: Vec<(String, String)> = (0..n)
        .tuple_combinations()
        .filter(|&(i, j)| blocks[i] == blocks[j])
        .map(|(i, j)| (pts[i].clone(), pts[j].clone()))
        .collect();
    Space::from_pairs(pts, pairs).expect("distinct names")
}

/// Point nearness `x ~ y`, read without going through the library's
/// subset machinery.
pub fn near(s: &Space, i: usize, j: usize) -> bool {
    s.adjacency(i).contains(j)
}

/// All assignments `X → Y` that preserve point nearness.
pub fn pc_assignments(x: &Space, y: &Space) -> Vec<Vec<usize>> {
    (0..x.len())
        .map(|_| 0..y.len())
        .multi_cartesian_product()
        .filter(|a| (0..x.len()).all(|i| (0..x.len()).all(|j| !near(x, i, j) || near(y, a[i], a[j]))))
        .collect()
}

pub fn random_pc_map<R: Rng>(rng: &mut R, x: &Arc<Space>, y: &Arc<Space>) -> Option<SpaceMap> {
    let all = pc_assignments(x, y);
    if all.is_empty() {
        return None;
    }
    let a = all[rng.gen_range(0..all.len())].clone();
    Some(SpaceMap::new(x.clone(), y.clone(), a).expect("in range"))
}

/// Adjacency rows as bitmasks, without the diagonal.
fn rows(n: usize, bits: u64) -> Vec<u32> {
    let mut r = vec![0u32; n];
    for (k, (i, j)) in (0..n).tuple_combinations().enumerate() {
        if bits >> k & 1 == 1 {
            r[i] |= 1 << j;
            r[j] |= 1 << i;
        }
    }
    r
}

fn bits_of(n: usize, rows: &[u32]) -> u64 {
    (0..n)
        .tuple_combinations()
        .enumerate()
        .fold(0, |acc, (k, (i, j))| acc | (u64::from(rows[i] >> j & 1 == 1) << k))
}

/// Canonical edge set: the least edge encoding over all relabelings that
/// respect a label-free color refinement.
pub fn canonical(n: usize, bits: u64) -> u64 {
    let r = rows(n, bits);
    let mut color: Vec<usize> = r.iter().map(|x| x.count_ones() as usize).collect();
    loop {
        let sig: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|i| {
                let mut nb: Vec<usize> = (0..n).filter(|&j| r[i] >> j & 1 == 1).map(|j| color[j]).collect();
                nb.sort_unstable();
                (color[i], nb)
            })
            .collect();
        let distinct: Vec<&(usize, Vec<usize>)> = sig.iter().collect::<BTreeSet<_>>().into_iter().collect();
        let next: Vec<usize> = sig.iter().map(|s| distinct.binary_search(&s).expect("present")).collect();
        let stable = next.iter().collect::<BTreeSet<_>>().len() == color.iter().collect::<BTreeSet<_>>().len();
        color = next;
        if stable {
            break;
        }
    }
    // cells in color order; try every ordering inside each cell
    let classes: Vec<Vec<usize>> = (0..n)
        .map(|c| (0..n).filter(|&i| color[i] == c).collect::<Vec<_>>())
        .filter(|c| !c.is_empty())
        .collect();
    let per_cell: Vec<Vec<Vec<usize>>> = classes.iter().map(|c| c.iter().copied().permutations(c.len()).collect()).collect();
    let mut best = u64::MAX;
    for choice in per_cell.iter().map(|v| v.iter()).multi_cartesian_product() {
        let order: Vec<usize> = choice.into_iter().flatten().copied().collect();
        let relabeled: Vec<u32> = order
            .iter()
            .map(|&old| (0..n).filter(|&b| r[old] >> order[b] & 1 == 1).fold(0u32, |acc, b| acc | 1 << b))
            .collect();
        best = best.min(bits_of(n, &relabeled));
    }
    best
}

/// One representative edge encoding per isomorphism class of simple
/// graphs on `n` vertices, grown one vertex at a time.
pub fn graph_classes(max_n: usize) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = vec![vec![0]];
    for n in 1..max_n {
        let mut next = BTreeSet::new();
        for &g in &out[n - 1] {
            let r = rows(n, g);
            for nb in 0..1u32 << n {
                let mut grown = r.clone();
                grown.push(nb);
                for (i, row) in grown.iter_mut().enumerate().take(n) {
                    if nb >> i & 1 == 1 {
                        *row |= 1 << n;
                    }
                }
                next.insert(canonical(n + 1, bits_of(n + 1, &grown)));
            }
        }
        out.push(next.into_iter().collect());
    }
    out
}

/// Isomorphism onto a copy of `x` with points relabeled by a random
/// permutation: `x_i ↦ y_{perm[i]}`.
pub fn random_relabeling<R: Rng>(rng: &mut R, x: Arc<Space>) -> SpaceMap {
    use rand::seq::SliceRandom;
    let n = x.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let pairs: Vec<(String, String)> = x.edges().map(|(i, j)| (format!("y{}", perm[i]), format!("y{}", perm[j]))).collect();
    let y = Space::from_pairs((0..n).map(|j| format!("y{j}")), pairs).expect("distinct names");
    SpaceMap::new(x, Arc::new(y), perm).expect("in range")
}
