//! JSON interchange for the object kinds the command line accepts and the
//! report envelope it emits.
//!
//! Parsing rebuilds the core object and runs its full validator, so a file
//! is rejected with the offending generator or table entry named. Report
//! serialization is deterministic: map keys are sorted and no wall-clock
//! data is embedded.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Result, SegalError};
use crate::group::{FiniteGroup, SimplicialGroup};
use crate::gspace::GSpace;
use crate::simplex::{degenerate, Gen, SimplexRef};
use crate::smap::SimplicialMap;
use crate::space::{SimplicialSpace, SpaceMap};
use crate::sset::SimplicialSet;
use crate::verdict::Verdict;

/// Version tag embedded in reports and mirrored by the shipped schema files.
pub const SCHEMA_VERSION: &str = "1";

/// A simplex reference: degeneracy word (outermost operator first) applied
/// to a named generator. `{"s": [1, 0], "g": "v"}` denotes `s_1 s_0 v`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RefJson {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub s: Vec<usize>,
    pub g: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SSetJson {
    pub truncation: usize,
    pub generators: Vec<Vec<String>>,
    /// Face row per generator of positive dimension, listed as `d_0 .. d_n`.
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<RefJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

/// Images of the source generators, dimensions outer.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapJson {
    pub images: Vec<Vec<RefJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceJson {
    pub ext_truncation: usize,
    pub levels: Vec<SSetJson>,
    /// `ext_faces[n][i]` sends level `n` to level `n - 1`; row 0 is empty.
    pub ext_faces: Vec<Vec<MapJson>>,
    /// `ext_degen[n][i]` sends level `n` to level `n + 1`; top row is empty.
    pub ext_degen: Vec<Vec<MapJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceMapJson {
    pub source: SpaceJson,
    pub target: SpaceJson,
    pub maps: Vec<MapJson>,
}

/// A space with an action of a constant finite group. The action is listed
/// on generators only; degenerate simplices follow by equivariance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GSpaceJson {
    pub space: SSetJson,
    pub group: GroupJson,
    /// `action[gen][a]` is `gen` acted on by the group element of index `a`.
    pub action: BTreeMap<String, Vec<RefJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapFileJson {
    pub source: SSetJson,
    pub target: SSetJson,
    pub map: MapJson,
}

/// Cospan of equivariant maps `f: X -> Y <- Z :h` over one group.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CospanJson {
    pub x: GSpaceJson,
    pub y: GSpaceJson,
    pub z: GSpaceJson,
    pub f: MapJson,
    pub h: MapJson,
}

pub fn ref_to_json(x: &SimplicialSet, r: &SimplexRef) -> RefJson {
    RefJson { s: r.word.clone(), g: x.gen_name(r.gen).to_string() }
}

fn ref_from_parts(gen: Gen, word: &[usize], at: &str) -> Result<SimplexRef> {
    let mut r = SimplexRef::of(gen);
    for &i in word.iter().rev() {
        if i > r.dim() {
            return Err(SegalError::validation(format!(
                "{at}: degeneracy index {i} exceeds dimension {}",
                r.dim()
            )));
        }
        r = degenerate(i, &r);
    }
    if r.word != word {
        return Err(SegalError::validation(format!(
            "{at}: degeneracy word {word:?} is not in normal form"
        )));
    }
    Ok(r)
}

pub fn ref_from_json(x: &SimplicialSet, j: &RefJson, at: &str) -> Result<SimplexRef> {
    let gen = x
        .gen_by_name(&j.g)
        .ok_or_else(|| SegalError::validation(format!("{at}: unknown generator {:?}", j.g)))?;
    ref_from_parts(gen, &j.s, at)
}

pub fn sset_to_json(x: &SimplicialSet) -> SSetJson {
    let mut generators = Vec::new();
    let mut faces = BTreeMap::new();
    for d in 0..=x.truncation() {
        let names: Vec<String> =
            x.gens_of_dim(d).map(|g| x.gen_name(g).to_string()).collect();
        generators.push(names);
        if d == 0 {
            continue;
        }
        for g in x.gens_of_dim(d) {
            let row = (0..=d).map(|i| ref_to_json(x, x.gen_face(g, i))).collect();
            faces.insert(x.gen_name(g).to_string(), row);
        }
    }
    SSetJson { truncation: x.truncation(), generators, faces }
}

pub fn sset_from_json(j: &SSetJson) -> Result<SimplicialSet> {
    if j.generators.len() > j.truncation + 1 {
        return Err(SegalError::validation(format!(
            "{} generator rows but truncation {}",
            j.generators.len(),
            j.truncation
        )));
    }
    let mut by_name: HashMap<&str, Gen> = HashMap::new();
    for (d, names) in j.generators.iter().enumerate() {
        for (i, name) in names.iter().enumerate() {
            if by_name.insert(name, Gen { dim: d, idx: i }).is_some() {
                return Err(SegalError::validation(format!(
                    "generator name {name:?} is used twice"
                )));
            }
        }
    }
    for name in j.faces.keys() {
        match by_name.get(name.as_str()) {
            None => {
                return Err(SegalError::validation(format!(
                    "face row for unknown generator {name:?}"
                )))
            }
            Some(g) if g.dim == 0 => {
                return Err(SegalError::validation(format!(
                    "vertex {name:?} must not carry a face row"
                )))
            }
            Some(_) => {}
        }
    }
    let mut faces: Vec<Vec<Vec<SimplexRef>>> = Vec::new();
    for (d, names) in j.generators.iter().enumerate() {
        let mut rows = Vec::new();
        if d > 0 {
            for name in names {
                let row = j.faces.get(name).ok_or_else(|| {
                    SegalError::validation(format!("generator {name:?} is missing its face row"))
                })?;
                if row.len() != d + 1 {
                    return Err(SegalError::validation(format!(
                        "generator {name:?} has {} faces, expected {}",
                        row.len(),
                        d + 1
                    )));
                }
                let mut refs = Vec::new();
                for fj in row {
                    let gen = *by_name.get(fj.g.as_str()).ok_or_else(|| {
                        SegalError::validation(format!(
                            "face of {name:?} names unknown generator {:?}",
                            fj.g
                        ))
                    })?;
                    let r = ref_from_parts(gen, &fj.s, &format!("face of {name:?}"))?;
                    if r.dim() != d - 1 {
                        return Err(SegalError::validation(format!(
                            "face of {name:?} has dimension {}, expected {}",
                            r.dim(),
                            d - 1
                        )));
                    }
                    refs.push(r);
                }
                rows.push(refs);
            }
        }
        faces.push(rows);
    }
    SimplicialSet::new(j.truncation, j.generators.clone(), faces)
}

pub fn group_to_json(g: &FiniteGroup) -> GroupJson {
    GroupJson { elements: g.names.clone(), table: g.mul.clone() }
}

pub fn group_from_json(j: &GroupJson) -> Result<FiniteGroup> {
    FiniteGroup::from_table(j.elements.clone(), j.table.clone())
}

pub fn map_to_json(f: &SimplicialMap) -> MapJson {
    let x = &f.source;
    let images = (0..=x.truncation())
        .map(|d| {
            x.gens_of_dim(d)
                .map(|g| ref_to_json(&f.target, f.gen_image(g)))
                .collect()
        })
        .collect();
    MapJson { images }
}

pub fn map_from_json(
    source: &SimplicialSet,
    target: &SimplicialSet,
    j: &MapJson,
    at: &str,
) -> Result<SimplicialMap> {
    if j.images.len() != source.truncation() + 1 {
        return Err(SegalError::validation(format!(
            "{at}: {} image rows but source truncation {}",
            j.images.len(),
            source.truncation()
        )));
    }
    let mut images = Vec::new();
    for (d, row) in j.images.iter().enumerate() {
        if row.len() != source.gen_count(d) {
            return Err(SegalError::validation(format!(
                "{at}: {} images in dimension {d}, expected {}",
                row.len(),
                source.gen_count(d)
            )));
        }
        let mut refs = Vec::new();
        for (i, rj) in row.iter().enumerate() {
            let name = source.gen_name(Gen { dim: d, idx: i });
            refs.push(ref_from_json(target, rj, &format!("{at}: image of {name:?}"))?);
        }
        images.push(refs);
    }
    SimplicialMap::new(source.clone(), target.clone(), images)
}

pub fn space_to_json(b: &SimplicialSpace) -> SpaceJson {
    SpaceJson {
        ext_truncation: b.ext_truncation(),
        levels: b.levels.iter().map(sset_to_json).collect(),
        ext_faces: b
            .faces
            .iter()
            .map(|row| row.iter().map(map_to_json).collect())
            .collect(),
        ext_degen: b
            .degens
            .iter()
            .map(|row| row.iter().map(map_to_json).collect())
            .collect(),
    }
}

pub fn space_from_json(j: &SpaceJson) -> Result<SimplicialSpace> {
    let m = j.ext_truncation;
    if j.levels.len() != m + 1 {
        return Err(SegalError::validation(format!(
            "{} levels but external truncation {m}",
            j.levels.len()
        )));
    }
    let levels: Vec<SimplicialSet> =
        j.levels.iter().map(sset_from_json).collect::<Result<_>>()?;
    if j.ext_faces.len() != m + 1 || j.ext_degen.len() != m + 1 {
        return Err(SegalError::validation(
            "external face and degeneracy tables must have one row per level".to_string(),
        ));
    }
    let mut faces = Vec::new();
    for (n, row) in j.ext_faces.iter().enumerate() {
        let expect = if n == 0 { 0 } else { n + 1 };
        if row.len() != expect {
            return Err(SegalError::validation(format!(
                "level {n} has {} external faces, expected {expect}",
                row.len()
            )));
        }
        let mut maps = Vec::new();
        for (i, mj) in row.iter().enumerate() {
            maps.push(map_from_json(
                &levels[n],
                &levels[n - 1],
                mj,
                &format!("external face d_{i} at level {n}"),
            )?);
        }
        faces.push(maps);
    }
    let mut degens = Vec::new();
    for (n, row) in j.ext_degen.iter().enumerate() {
        let expect = if n == m { 0 } else { n + 1 };
        if row.len() != expect {
            return Err(SegalError::validation(format!(
                "level {n} has {} external degeneracies, expected {expect}",
                row.len()
            )));
        }
        let mut maps = Vec::new();
        for (i, mj) in row.iter().enumerate() {
            maps.push(map_from_json(
                &levels[n],
                &levels[n + 1],
                mj,
                &format!("external degeneracy s_{i} at level {n}"),
            )?);
        }
        degens.push(maps);
    }
    SimplicialSpace::new(levels, faces, degens)
}

pub fn spacemap_to_json(f: &SpaceMap) -> SpaceMapJson {
    SpaceMapJson {
        source: space_to_json(&f.source),
        target: space_to_json(&f.target),
        maps: f.maps.iter().map(map_to_json).collect(),
    }
}

pub fn spacemap_from_json(j: &SpaceMapJson) -> Result<SpaceMap> {
    let source = space_from_json(&j.source)?;
    let target = space_from_json(&j.target)?;
    if j.maps.len() != source.ext_truncation() + 1 {
        return Err(SegalError::validation(format!(
            "{} level maps but external truncation {}",
            j.maps.len(),
            source.ext_truncation()
        )));
    }
    let maps = j
        .maps
        .iter()
        .enumerate()
        .map(|(n, mj)| {
            map_from_json(&source.levels[n], &target.levels[n], mj, &format!("level {n} map"))
        })
        .collect::<Result<_>>()?;
    SpaceMap::new(source, target, maps)
}

pub fn gspace_to_json(xg: &GSpace) -> Result<GSpaceJson> {
    if !xg.g.is_constant() {
        return Err(SegalError::unsupported(
            "only actions of constant groups serialize",
        ));
    }
    let x = &xg.x;
    let grp = &xg.g.levels[0];
    let mut action = BTreeMap::new();
    for d in 0..=x.truncation() {
        for g in x.gens_of_dim(d) {
            let row = (0..grp.order())
                .map(|a| ref_to_json(x, &xg.act(&SimplexRef::of(g), a)))
                .collect();
            action.insert(x.gen_name(g).to_string(), row);
        }
    }
    Ok(GSpaceJson {
        space: sset_to_json(x),
        group: group_to_json(grp),
        action,
    })
}

pub fn gspace_from_json(j: &GSpaceJson) -> Result<GSpace> {
    let x = sset_from_json(&j.space)?;
    let grp = group_from_json(&j.group)?;
    let order = grp.order();
    let mut table: Vec<Vec<Vec<SimplexRef>>> = Vec::new();
    for d in 0..=x.truncation() {
        let mut rows = Vec::new();
        for g in x.gens_of_dim(d) {
            let name = x.gen_name(g);
            let row = j.action.get(name).ok_or_else(|| {
                SegalError::validation(format!("generator {name:?} is missing its action row"))
            })?;
            if row.len() != order {
                return Err(SegalError::validation(format!(
                    "action row of {name:?} has {} entries, expected {order}",
                    row.len()
                )));
            }
            let refs = row
                .iter()
                .map(|rj| ref_from_json(&x, rj, &format!("action on {name:?}")))
                .collect::<Result<Vec<_>>>()?;
            for r in &refs {
                if r.dim() != d {
                    return Err(SegalError::validation(format!(
                        "action on {name:?} changes dimension"
                    )));
                }
            }
            rows.push(refs);
        }
        table.push(rows);
    }
    for name in j.action.keys() {
        if x.gen_by_name(name).is_none() {
            return Err(SegalError::validation(format!(
                "action row for unknown generator {name:?}"
            )));
        }
    }
    let sg = SimplicialGroup::constant(&grp, x.truncation());
    GSpace::new(x, sg, |_m, r, a| {
        let mut img = table[r.gen.dim][r.gen.idx][a].clone();
        for &i in r.word.iter().rev() {
            img = degenerate(i, &img);
        }
        img
    })
}

pub fn mapfile_from_json(j: &MapFileJson) -> Result<SimplicialMap> {
    let source = sset_from_json(&j.source)?;
    let target = sset_from_json(&j.target)?;
    map_from_json(&source, &target, &j.map, "map")
}

pub fn mapfile_to_json(f: &SimplicialMap) -> MapFileJson {
    MapFileJson {
        source: sset_to_json(&f.source),
        target: sset_to_json(&f.target),
        map: map_to_json(f),
    }
}

/// Numeric parameters shared by every command.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Params {
    pub truncation: usize,
    pub up_to: usize,
    pub ex_stage: usize,
    pub budget: usize,
    pub fib_depth: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params { truncation: 5, up_to: 3, ex_stage: 1, budget: 1_000_000, fib_depth: 3 }
    }
}

/// Report envelope. Field order is fixed and all nested maps are sorted, so
/// serialization is byte-identical across runs; wall-clock data stays out.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: String,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub args: Vec<String>,
    pub inputs: Vec<String>,
    pub params: Params,
    pub verdict: Option<Verdict>,
    pub payload: serde_json::Value,
}

impl Report {
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

/// Homology rows as they appear in reports.
pub fn signature_rows(sigs: &[crate::homology::HomologySignature]) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = sigs
        .iter()
        .enumerate()
        .map(|(k, s)| {
            serde_json::json!({
                "degree": k,
                "rank": s.rank,
                "torsion": s.torsion,
            })
        })
        .collect();
    serde_json::Value::Array(rows)
}
