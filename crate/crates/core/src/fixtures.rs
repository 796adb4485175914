//! Named example spaces and maps.
//!
//! The cell picture is the 8-cycle `a – b – … – h – a`, colored
//! `a, c` red, `b` green, `d, h` black and `e, f, g` in three further colors.
//! The twelve-over-four covering stacks three 4-cycles `s1 – s2 – s3 – s4`
//! (`s ∈ {a, b, c}`) over the base cycle `d1 – … – d4`. Its descriptive
//! variant colors `d1, d3, d4` red and `d2` blue, and adds a shape feature
//! upstairs that tells the three stacks apart. The square picture is the
//! 4-cycle `a – b – c – d`.

use std::sync::Arc;

use crate::descriptive::{descriptive_space, ProbeTable};
use crate::error::Result;
use crate::homotopy::{path_from_names, HomotopyWitness};
use crate::maps::SpaceMap;
use crate::space::Space;

const RED: [i64; 3] = [255, 0, 0];
const GREEN: [i64; 3] = [0, 255, 0];
const BLUE: [i64; 3] = [0, 0, 255];
const BLACK: [i64; 3] = [0, 0, 0];

pub const CELLS: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

/// The 8-cycle of cells.
pub fn cells() -> Arc<Space> {
    Arc::new(Space::cycle(CELLS).expect("fixed names"))
}

pub fn cell_colors() -> ProbeTable {
    let colors: [[i64; 3]; 8] = [RED, GREEN, RED, BLACK, [255, 255, 0], BLUE, [255, 0, 255], BLACK];
    ProbeTable::from_integers(&["r", "g", "b"], CELLS.iter().zip(colors).map(|(p, c)| (*p, c.to_vec())).collect())
        .expect("fixed table")
}

/// The cells with color-agreement nearness.
pub fn cells_by_color() -> Arc<Space> {
    Arc::new(descriptive_space(CELLS, &cell_colors()).expect("fixed table"))
}

/// The three paths on `I_7` around the 8-cycle.
pub fn cell_paths() -> [SpaceMap; 3] {
    let x = cells();
    [
        ["a", "b", "c", "d", "e", "f", "g", "h"],
        ["h", "a", "b", "c", "d", "e", "f", "g"],
        ["a", "h", "g", "f", "e", "d", "c", "b"],
    ]
    .map(|names| path_from_names(x.clone(), &names).expect("fixed path"))
}

/// The three colored paths on `I_3`, into the color space.
pub fn colored_paths() -> [SpaceMap; 3] {
    let x = cells_by_color();
    [["a", "b", "c", "d"], ["c", "b", "a", "h"], ["a", "h", "g", "f"]]
        .map(|names| path_from_names(x.clone(), &names).expect("fixed path"))
}

fn stacked_points() -> Vec<String> {
    ["a", "b", "c"].iter().flat_map(|s| (1..=4).map(move |i| format!("{s}{i}"))).collect()
}

fn base_points() -> [&'static str; 4] {
    ["d1", "d2", "d3", "d4"]
}

fn over_base(up: Arc<Space>, down: Arc<Space>) -> SpaceMap {
    let images: Vec<String> = up.points().iter().map(|p| format!("d{}", &p[1..])).collect();
    SpaceMap::from_images(up, down, &images).expect("fixed map")
}

/// The 4-cycle `d1 – d2 – d3 – d4`.
pub fn stacked_base() -> Arc<Space> {
    Arc::new(Space::cycle(base_points()).expect("fixed names"))
}

/// Three disjoint 4-cycles.
pub fn stacked_total() -> Arc<Space> {
    let pts = stacked_points();
    let pairs: Vec<(String, String)> = pts
        .iter()
        .map(|p| {
            let i: usize = p[1..].parse().expect("fixed names");
            (p.clone(), format!("{}{}", &p[..1], i % 4 + 1))
        })
        .collect();
    Arc::new(Space::from_pairs(pts, pairs).expect("fixed names"))
}

/// `p(s_i) = d_i` on the stacked cycles.
pub fn stacked_covering() -> SpaceMap {
    over_base(stacked_total(), stacked_base())
}

fn base_color(i: usize) -> [i64; 3] {
    if i == 2 {
        BLUE
    } else {
        RED
    }
}

pub fn stacked_base_colors() -> ProbeTable {
    ProbeTable::from_integers(
        &["r", "g", "b"],
        base_points().iter().enumerate().map(|(i, p)| (*p, base_color(i + 1).to_vec())).collect(),
    )
    .expect("fixed table")
}

pub fn stacked_total_features() -> ProbeTable {
    let values = stacked_points()
        .into_iter()
        .map(|p| {
            let shape = match &p[..1] {
                "a" => 0,
                "b" => 1,
                _ => 2,
            };
            let i: usize = p[1..].parse().expect("fixed names");
            let mut v = base_color(i).to_vec();
            v.push(shape);
            (p, v)
        })
        .collect();
    ProbeTable::from_integers(&["r", "g", "b", "shape"], values).expect("fixed table")
}

/// The stacked covering with color (and shape) nearness on both ends.
pub fn stacked_descriptive_covering() -> SpaceMap {
    let up = Arc::new(descriptive_space(stacked_points(), &stacked_total_features()).expect("fixed table"));
    let down = Arc::new(descriptive_space(base_points(), &stacked_base_colors()).expect("fixed table"));
    over_base(up, down)
}

/// The 4-cycle `a – b – c – d`.
pub fn square() -> Arc<Space> {
    Arc::new(Space::cycle(["a", "b", "c", "d"]).expect("fixed names"))
}

/// Extension problem on the square: `h : {0} ↪ I_2`, `k` a path from `b`
/// to `c`, `F` a homotopy of the point from `b` to `a`.
pub fn square_extension_problem() -> (SpaceMap, SpaceMap, HomotopyWitness) {
    let z = square();
    let pt = Arc::new(Space::discrete(["0"]).expect("fixed names"));
    let h = SpaceMap::inclusion_by_name(pt.clone(), Arc::new(Space::interval(2))).expect("0 is in I_2");
    let k = path_from_names(z.clone(), &["b", "b", "c"]).expect("fixed path");
    let f = HomotopyWitness::new(pt, z.clone(), vec![vec![1], vec![1], vec![0]]).expect("fixed homotopy");
    (h, k, f)
}

/// `{0} ↪ I_1`, the endpoint inclusion.
pub fn endpoint_inclusion() -> SpaceMap {
    let pt = Arc::new(Space::discrete(["0"]).expect("fixed names"));
    SpaceMap::inclusion_by_name(pt, Arc::new(Space::interval(1))).expect("0 is in I_1")
}

/// A summand inclusion `X ↪ X ⊔ Y`, which is clopen.
pub fn summand_inclusion(x: &Space, y: &Space) -> Result<SpaceMap> {
    let sum = Arc::new(x.coproduct(y));
    let images: Vec<String> = x.points().iter().map(|p| format!("0:{p}")).collect();
    SpaceMap::from_images(Arc::new(x.clone()), sum, &images)
}
