//! Space and map files.
//!
//! A space file is a JSON object with `points` and one of
//!
//! * `near`: unordered pairs of near points;
//! * `adjacency`: per-point neighbor lists, symmetrized with a warning when
//!   one direction is missing;
//! * `metric`: `{"coords": {point: [..]}, "epsilon": e}`;
//! * `features` alone: nearness is agreement of feature vectors.
//!
//! `features` (`{"names", "values", "tolerance"}`) may accompany any of the
//! others, in which case it is returned as a separate probe table. Feature
//! values are JSON numbers or strings such as `"1/3"`; they are kept exact.
//!
//! Grids are text: `GRID w h`, `h` rows of `w` color codes, then `LEGEND`
//! followed by `c R G B` lines. PPM `P3` images are read the same way.
//! Cells become points `r{row}c{col}`, spatially near when 4-adjacent.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::descriptive::{descriptive_space, parse_rational, rational_from_f64, ProbeTable};
use crate::error::{Error, Result};
use crate::maps::SpaceMap;
use crate::space::{Provenance, Space};
use crate::subset::Subset;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub near: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjacency: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub features: Option<FeatureSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricSpec {
    pub coords: BTreeMap<String, Vec<f64>>,
    pub epsilon: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeatureSpec {
    pub names: Vec<String>,
    pub values: BTreeMap<String, Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<Vec<Value>>,
}

/// A parsed space with its optional probe table and any warnings.
#[derive(Clone, Debug)]
pub struct LoadedSpace {
    pub space: Space,
    pub table: Option<ProbeTable>,
    pub warnings: Vec<String>,
}

fn schema(context: &str, err: serde_json::Error) -> Error {
    Error::Schema(format!("{context}: line {} column {}: {err}", err.line(), err.column()))
}

fn feature_value(v: &Value, field: &str) -> Result<BigRational> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(BigInt::from(i)))
            } else {
                rational_from_f64(n.as_f64().ok_or_else(|| Error::Schema(format!("{field}: bad number")))?)
            }
        }
        Value::String(s) => parse_rational(s).map_err(|_| Error::Schema(format!("{field}: bad rational `{s}`"))),
        _ => Err(Error::Schema(format!("{field}: expected a number or a rational string"))),
    }
}

fn feature_json(r: &BigRational) -> Value {
    if r.denom().is_one() {
        if let Ok(i) = i64::try_from(r.numer().clone()) {
            return Value::from(i);
        }
    }
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

impl FeatureSpec {
    pub fn to_table(&self) -> Result<ProbeTable> {
        let mut values = BTreeMap::new();
        for (p, vs) in &self.values {
            let field = format!("features.values.{p}");
            values.insert(p.clone(), vs.iter().map(|v| feature_value(v, &field)).collect::<Result<_>>()?);
        }
        let tolerance = match &self.tolerance {
            Some(t) => t.iter().map(|v| feature_value(v, "features.tolerance")).collect::<Result<_>>()?,
            None => vec![BigRational::zero(); self.names.len()],
        };
        ProbeTable::with_tolerance(self.names.clone(), values, tolerance)
    }

    pub fn from_table(table: &ProbeTable) -> FeatureSpec {
        let values = table
            .values()
            .iter()
            .map(|(p, v)| (p.clone(), v.iter().map(feature_json).collect()))
            .collect();
        let tolerance = (!table.is_exact()).then(|| table.tolerance().iter().map(feature_json).collect());
        FeatureSpec { names: table.names().to_vec(), values, tolerance }
    }
}

impl SpaceFile {
    pub fn into_space(self) -> Result<LoadedSpace> {
        let mut warnings = Vec::new();
        let table = self.features.as_ref().map(FeatureSpec::to_table).transpose()?;
        let given = [self.near.is_some(), self.adjacency.is_some(), self.metric.is_some()];
        if given.iter().filter(|&&g| g).count() > 1 {
            return Err(Error::Schema("give at most one of `near`, `adjacency`, `metric`".into()));
        }
        let space = if let Some(pairs) = self.near {
            Space::from_pairs(self.points, pairs)?
        } else if let Some(lists) = self.adjacency {
            let directed: BTreeSet<(String, String)> = lists
                .iter()
                .flat_map(|(a, bs)| bs.iter().map(move |b| (a.clone(), b.clone())))
                .filter(|(a, b)| a != b)
                .collect();
            for (a, b) in &directed {
                if !directed.contains(&(b.clone(), a.clone())) {
                    warnings.push(format!("symmetric closure: added `{b}` near `{a}`"));
                }
            }
            Space::from_pairs(self.points, directed)?
        } else if let Some(metric) = self.metric {
            let coords = self
                .points
                .iter()
                .map(|p| metric.coords.get(p).cloned().ok_or_else(|| Error::UnknownPoint(p.clone())))
                .collect::<Result<Vec<_>>>()?;
            if let Some(extra) = metric.coords.keys().find(|k| !self.points.contains(k)) {
                return Err(Error::UnknownPoint(extra.clone()));
            }
            Space::metric(self.points, coords, metric.epsilon)?
        } else if let Some(table) = &table {
            descriptive_space(self.points, table)?
        } else {
            Space::discrete(self.points)?
        };
        if let Some(t) = &table {
            for p in space.points() {
                t.vector(p)?;
            }
            if let Some(extra) = t.values().keys().find(|k| space.index_of(k).is_err()) {
                return Err(Error::UnknownPoint(extra.clone()));
            }
        }
        Ok(LoadedSpace { space, table, warnings })
    }

    /// File form of a space; parsing it back gives an equal space.
    pub fn from_space(space: &Space) -> SpaceFile {
        let points = space.points().to_vec();
        match space.provenance() {
            Provenance::Descriptive(table) => {
                let restricted = restrict_table(table, &points);
                if descriptive_space(points.clone(), &restricted).is_ok_and(|s| s == *space) {
                    return SpaceFile { points, features: Some(FeatureSpec::from_table(&restricted)), ..Default::default() };
                }
            }
            Provenance::Metric { coords, epsilon } => {
                let spec = MetricSpec {
                    coords: points.iter().cloned().zip(coords.iter().cloned()).collect(),
                    epsilon: *epsilon,
                };
                return SpaceFile { points, metric: Some(spec), ..Default::default() };
            }
            _ => {}
        }
        let near = space.edges().map(|(a, b)| (space.name(a).to_string(), space.name(b).to_string())).collect();
        SpaceFile { points, near: Some(near), ..Default::default() }
    }
}

fn restrict_table(table: &ProbeTable, points: &[String]) -> ProbeTable {
    let values = points.iter().filter_map(|p| table.values().get(p).map(|v| (p.clone(), v.clone()))).collect();
    ProbeTable::with_tolerance(table.names().to_vec(), values, table.tolerance().to_vec())
        .expect("restriction of a valid table")
}

pub fn parse_space_str(text: &str) -> Result<LoadedSpace> {
    let file: SpaceFile = serde_json::from_str(text).map_err(|e| schema("space", e))?;
    file.into_space()
}

pub fn serialize_space(space: &Space) -> String {
    serde_json::to_string_pretty(&SpaceFile::from_space(space)).expect("space files serialize")
}

/// Reads a space from a JSON file, a grid (`GRID …`) or a PPM (`P3 …`).
pub fn parse_space_file(path: &Path) -> Result<LoadedSpace> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
    let head = text.trim_start();
    let loaded = if head.starts_with("GRID") {
        parse_grid(&text)
    } else if head.starts_with("P3") {
        parse_ppm(&text)
    } else {
        let file: SpaceFile = serde_json::from_str(&text).map_err(|e| schema(&path.display().to_string(), e))?;
        file.into_space()
    };
    loaded.map_err(|e| match e {
        Error::Schema(m) if !m.starts_with(&path.display().to_string()) => {
            Error::Schema(format!("{}: {m}", path.display()))
        }
        other => other,
    })
}

/// Either a path (relative to the referring file) or an inline space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceRef {
    Path(String),
    Inline(SpaceFile),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub domain: SpaceRef,
    pub codomain: SpaceRef,
    pub assignment: BTreeMap<String, String>,
}

fn resolve(r: &SpaceRef, base: &Path) -> Result<(LoadedSpace, Option<PathBuf>)> {
    match r {
        SpaceRef::Path(p) => {
            let path = base.join(p);
            Ok((parse_space_file(&path)?, Some(path)))
        }
        SpaceRef::Inline(f) => Ok((f.clone().into_space()?, None)),
    }
}

/// A parsed map with its loaded endpoints.
#[derive(Clone, Debug)]
pub struct LoadedMap {
    pub map: SpaceMap,
    pub domain: LoadedSpace,
    pub codomain: LoadedSpace,
    /// Files the map referred to, in order domain, codomain.
    pub referenced: Vec<PathBuf>,
}

pub fn parse_map_str(text: &str, base: &Path) -> Result<LoadedMap> {
    let file: MapFile = serde_json::from_str(text).map_err(|e| schema("map", e))?;
    let (domain, dp) = resolve(&file.domain, base)?;
    let (codomain, cp) = resolve(&file.codomain, base)?;
    let x = Arc::new(domain.space.clone());
    let y = Arc::new(codomain.space.clone());
    for k in file.assignment.keys() {
        x.index_of(k)?;
    }
    let pairs: Vec<(String, String)> = x
        .points()
        .iter()
        .map(|p| {
            file.assignment
                .get(p)
                .map(|q| (p.clone(), q.clone()))
                .ok_or_else(|| Error::Schema(format!("assignment: no image for `{p}`")))
        })
        .collect::<Result<_>>()?;
    let map = SpaceMap::from_names(x, y, &pairs)?;
    Ok(LoadedMap { map, domain, codomain, referenced: dp.into_iter().chain(cp).collect() })
}

pub fn parse_map_file(path: &Path) -> Result<LoadedMap> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_map_str(&text, base)
}

/// Map file with both spaces inlined.
pub fn serialize_map(map: &SpaceMap) -> String {
    let file = MapFile {
        domain: SpaceRef::Inline(SpaceFile::from_space(map.domain())),
        codomain: SpaceRef::Inline(SpaceFile::from_space(map.codomain())),
        assignment: map.named_assignment().into_iter().collect(),
    };
    serde_json::to_string_pretty(&file).expect("map files serialize")
}

/// Spatial 4-adjacency space on a `w × h` grid of RGB cells, plus the color
/// table. The descriptive space is `descriptive_space(points, table)`.
fn grid_space(w: usize, h: usize, colors: Vec<[i64; 3]>) -> Result<LoadedSpace> {
    let name = |r: usize, c: usize| format!("r{r}c{c}");
    let points: Vec<String> = (0..h).flat_map(|r| (0..w).map(move |c| name(r, c))).collect();
    let n = points.len();
    let adj = (0..n)
        .map(|i| {
            let (r, c) = (i / w, i % w);
            let mut s = Subset::singleton(n, i);
            if c + 1 < w {
                s.insert(i + 1);
            }
            if c > 0 {
                s.insert(i - 1);
            }
            if r + 1 < h {
                s.insert(i + w);
            }
            if r > 0 {
                s.insert(i - w);
            }
            s
        })
        .collect();
    let table = ProbeTable::from_integers(&["R", "G", "B"], points.iter().cloned().zip(colors.iter().map(|c| c.to_vec())).collect())?;
    let space = Space::from_adjacency(points, adj, Provenance::Explicit)?;
    Ok(LoadedSpace { space, table: Some(table), warnings: Vec::new() })
}

pub fn parse_grid(text: &str) -> Result<LoadedSpace> {
    let mut lines = text.lines().map(str::trim_end).filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Schema("grid: empty input".into()))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let (w, h) = match dims.as_slice() {
        ["GRID", w, h] => (
            w.parse::<usize>().map_err(|_| Error::Schema("grid line 1: bad width".into()))?,
            h.parse::<usize>().map_err(|_| Error::Schema("grid line 1: bad height".into()))?,
        ),
        _ => return Err(Error::Schema("grid line 1: expected `GRID w h`".into())),
    };
    let mut rows = Vec::with_capacity(h);
    for r in 0..h {
        let row: Vec<char> = lines
            .next()
            .ok_or_else(|| Error::Schema(format!("grid: missing row {}", r + 1)))?
            .trim()
            .chars()
            .collect();
        if row.len() != w {
            return Err(Error::Schema(format!("grid row {}: expected {w} cells, got {}", r + 1, row.len())));
        }
        rows.push(row);
    }
    if lines.next().map(str::trim) != Some("LEGEND") {
        return Err(Error::Schema("grid: expected `LEGEND` after the rows".into()));
    }
    let mut legend = BTreeMap::new();
    for line in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [code, r, g, b] = parts.as_slice() else {
            return Err(Error::Schema(format!("grid legend: expected `c R G B`, got `{line}`")));
        };
        let mut chars = code.chars();
        let (Some(c), None) = (chars.next(), chars.next()) else {
            return Err(Error::Schema(format!("grid legend: code `{code}` is not one character")));
        };
        let parse = |s: &str| s.parse::<i64>().map_err(|_| Error::Schema(format!("grid legend: bad value `{s}`")));
        legend.insert(c, [parse(r)?, parse(g)?, parse(b)?]);
    }
    let colors = rows
        .iter()
        .flatten()
        .map(|c| legend.get(c).copied().ok_or_else(|| Error::Schema(format!("grid: code `{c}` missing from legend"))))
        .collect::<Result<Vec<_>>>()?;
    grid_space(w, h, colors)
}

pub fn parse_ppm(text: &str) -> Result<LoadedSpace> {
    let tokens: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .collect();
    if tokens.first() != Some(&"P3") {
        return Err(Error::Schema("ppm: expected magic `P3`".into()));
    }
    let num = |i: usize| -> Result<i64> {
        tokens
            .get(i)
            .ok_or_else(|| Error::Schema("ppm: truncated".into()))?
            .parse()
            .map_err(|_| Error::Schema(format!("ppm: bad token `{}`", tokens[i])))
    };
    let (w, h, max) = (num(1)?, num(2)?, num(3)?);
    if w < 0 || h < 0 || max <= 0 {
        return Err(Error::Schema("ppm: bad header".into()));
    }
    let (w, h) = (w as usize, h as usize);
    if tokens.len() != 4 + 3 * w * h {
        return Err(Error::Schema(format!("ppm: expected {} samples, got {}", 3 * w * h, tokens.len() - 4)));
    }
    let colors = (0..w * h).map(|k| Ok([num(4 + 3 * k)?, num(5 + 3 * k)?, num(6 + 3 * k)?])).collect::<Result<_>>()?;
    grid_space(w, h, colors)
}
