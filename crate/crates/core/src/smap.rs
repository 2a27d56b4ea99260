//! Maps of simplicial sets, presented by generator images.

use crate::build::delta;
use crate::error::{Result, SegalError};
use crate::simplex::{degenerate, Gen, Monotone, SimplexRef};
use crate::sset::SimplicialSet;

#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialMap {
    pub source: SimplicialSet,
    pub target: SimplicialSet,
    /// `images[d][i]` is the image of source generator `(d, i)`.
    images: Vec<Vec<SimplexRef>>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialSet,
        target: SimplicialSet,
        images: Vec<Vec<SimplexRef>>,
    ) -> Result<Self> {
        let f = Self::new_unchecked(source, target, images)?;
        f.validate()?;
        Ok(f)
    }

    pub fn new_unchecked(
        source: SimplicialSet,
        target: SimplicialSet,
        mut images: Vec<Vec<SimplexRef>>,
    ) -> Result<Self> {
        if source.truncation() != target.truncation() {
            return Err(SegalError::validation(
                "map endpoints must share a truncation",
            ));
        }
        images.resize(source.truncation() + 1, Vec::new());
        for d in 0..=source.truncation() {
            if images[d].len() != source.gen_count(d) {
                return Err(SegalError::validation(format!(
                    "dimension {d}: {} generators but {} images",
                    source.gen_count(d),
                    images[d].len()
                )));
            }
            for (i, r) in images[d].iter().enumerate() {
                if r.dim() != d {
                    return Err(SegalError::validation(format!(
                        "image of '{}' has dimension {}, expected {d}",
                        source.gen_name(Gen { dim: d, idx: i }),
                        r.dim()
                    )));
                }
                if r.gen.dim > target.truncation()
                    || r.gen.idx >= target.gen_count(r.gen.dim)
                {
                    return Err(SegalError::validation(format!(
                        "image of '{}' references a missing target generator",
                        source.gen_name(Gen { dim: d, idx: i })
                    )));
                }
            }
        }
        Ok(SimplicialMap { source, target, images })
    }

    /// Checks naturality: the map commutes with every face operator on every
    /// generator. Degeneracies commute automatically by construction.
    pub fn validate(&self) -> Result<()> {
        for d in 1..=self.source.truncation() {
            for g in self.source.gens_of_dim(d) {
                let im = &self.images[d][g.idx];
                for i in 0..=d {
                    let lhs = self.apply(self.source.gen_face(g, i));
                    let rhs = self.target.face(i, im);
                    if lhs != rhs {
                        return Err(SegalError::validation(format!(
                            "map does not commute with d{i} at '{}': {} vs {}",
                            self.source.gen_name(g),
                            self.target.ref_name(&lhs),
                            self.target.ref_name(&rhs)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn gen_image(&self, g: Gen) -> &SimplexRef {
        &self.images[g.dim][g.idx]
    }

    pub fn apply(&self, r: &SimplexRef) -> SimplexRef {
        let mut cur = self.images[r.gen.dim][r.gen.idx].clone();
        for &j in r.word.iter().rev() {
            cur = degenerate(j, &cur);
        }
        cur
    }

    pub fn identity(x: &SimplicialSet) -> Self {
        let images = (0..=x.truncation())
            .map(|d| x.gens_of_dim(d).map(SimplexRef::of).collect())
            .collect();
        SimplicialMap { source: x.clone(), target: x.clone(), images }
    }

    /// `g.compose(f)` is `g ∘ f`; `f` must land in `g`'s source.
    pub fn compose(&self, f: &SimplicialMap) -> SimplicialMap {
        debug_assert_eq!(self.source, f.target, "composable maps required");
        let images = (0..=f.source.truncation())
            .map(|d| f.images[d].iter().map(|r| self.apply(r)).collect())
            .collect();
        SimplicialMap {
            source: f.source.clone(),
            target: self.target.clone(),
            images,
        }
    }

    /// The unique map to a point.
    pub fn to_point(x: &SimplicialSet, pt: &SimplicialSet) -> Result<Self> {
        if pt.gen_count(0) != 1 || !pt.is_discrete() {
            return Err(SegalError::validation("target is not a point"));
        }
        Ok(Self::constant(x, pt, Gen { dim: 0, idx: 0 }))
    }

    /// The constant map collapsing everything to the vertex `v` of `target`.
    pub fn constant(x: &SimplicialSet, target: &SimplicialSet, v: Gen) -> Self {
        debug_assert_eq!(v.dim, 0);
        let images = (0..=x.truncation())
            .map(|d| {
                let word: Vec<usize> = (0..d).rev().collect();
                x.gens_of_dim(d)
                    .map(|_| SimplexRef { word: word.clone(), gen: v })
                    .collect()
            })
            .collect();
        SimplicialMap { source: x.clone(), target: target.clone(), images }
    }

    /// Inclusion of a subcomplex produced by `SimplicialSet::subcomplex`,
    /// given the kept-generator remap it returned.
    pub fn inclusion(
        sub: &SimplicialSet,
        ambient: &SimplicialSet,
        remap: &[Vec<Option<usize>>],
    ) -> Self {
        let mut images: Vec<Vec<SimplexRef>> = vec![Vec::new(); sub.truncation() + 1];
        for (d, row) in remap.iter().enumerate() {
            for (idx, slot) in row.iter().enumerate() {
                if slot.is_some() {
                    images[d].push(SimplexRef::of(Gen { dim: d, idx }));
                }
            }
        }
        SimplicialMap { source: sub.clone(), target: ambient.clone(), images }
    }

    /// Inclusion by matching generator names; every generator of `sub` must
    /// name a generator of `ambient`.
    pub fn inclusion_by_name(sub: &SimplicialSet, ambient: &SimplicialSet) -> Result<Self> {
        let mut images: Vec<Vec<SimplexRef>> = vec![Vec::new(); sub.truncation() + 1];
        for d in 0..=sub.truncation() {
            for g in sub.gens_of_dim(d) {
                let name = sub.gen_name(g);
                let tg = ambient.gen_by_name(name).ok_or_else(|| {
                    SegalError::validation(format!("generator '{name}' missing from ambient set"))
                })?;
                if tg.dim != d {
                    return Err(SegalError::validation(format!(
                        "generator '{name}' changes dimension"
                    )));
                }
                images[d].push(SimplexRef::of(tg));
            }
        }
        SimplicialMap::new(sub.clone(), ambient.clone(), images)
    }

    /// True when the map is a bijection on simplices in every dimension up to
    /// the truncation. For finite presentations this is equivalent to being
    /// an isomorphism.
    pub fn is_iso(&self) -> bool {
        for d in 0..=self.source.truncation() {
            if self.source.gen_count(d) != self.target.gen_count(d) {
                return false;
            }
            let mut seen = vec![false; self.target.gen_count(d)];
            for g in self.source.gens_of_dim(d) {
                let im = &self.images[d][g.idx];
                if !im.word.is_empty() {
                    return false;
                }
                if std::mem::replace(&mut seen[im.gen.idx], true) {
                    return false;
                }
            }
        }
        true
    }

    /// Inverts an isomorphism.
    pub fn inverse(&self) -> Result<SimplicialMap> {
        if !self.is_iso() {
            return Err(SegalError::validation("map is not an isomorphism"));
        }
        let mut images: Vec<Vec<SimplexRef>> = (0..=self.source.truncation())
            .map(|d| vec![SimplexRef::of(Gen { dim: 0, idx: 0 }); self.target.gen_count(d)])
            .collect();
        for d in 0..=self.source.truncation() {
            for g in self.source.gens_of_dim(d) {
                let im = &self.images[d][g.idx];
                images[d][im.gen.idx] = SimplexRef::of(g);
            }
        }
        Ok(SimplicialMap {
            source: self.target.clone(),
            target: self.source.clone(),
            images,
        })
    }
}

/// The map `Δ^m -> Δ^n` induced by a monotone map of vertex sets.
pub fn delta_map(op: &Monotone, truncation: usize) -> Result<SimplicialMap> {
    let m = op.source_dim();
    let n = op.target;
    let src = delta(m, truncation)?;
    let dst = delta(n, truncation)?;
    let mut images: Vec<Vec<SimplexRef>> = vec![Vec::new(); truncation + 1];
    for d in 0..=truncation.min(m) {
        for g in src.gens_of_dim(d) {
            let name = src.gen_name(g);
            let values: Vec<usize> = name
                .chars()
                .map(|c| op.values[c.to_digit(10).unwrap() as usize])
                .collect();
            images[d].push(delta_simplex(&dst, &values));
        }
    }
    SimplicialMap::new(src, dst, images)
}

/// The simplex of `Δ^n` whose vertex sequence is the given weakly increasing
/// list, in Eilenberg-Zilber normal form.
pub fn delta_simplex(dn: &SimplicialSet, values: &[usize]) -> SimplexRef {
    debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
    let mut distinct: Vec<usize> = values.to_vec();
    distinct.dedup();
    let name: String = distinct.iter().map(|v| v.to_string()).collect();
    let g = dn.gen_by_name(&name).expect("vertex subset generator");
    let mut word: Vec<usize> =
        (0..values.len() - 1).filter(|&p| values[p] == values[p + 1]).collect();
    word.reverse();
    SimplexRef { word, gen: g }
}

/// A commuting square
/// ```text
///        top
///     W ----> V
///     |       |
/// left|       | right
///     v       v
///     U ----> Z
///       bottom
/// ```
#[derive(Clone, Debug)]
pub struct Square {
    pub top: SimplicialMap,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    pub bottom: SimplicialMap,
}

impl Square {
    pub fn new(
        top: SimplicialMap,
        left: SimplicialMap,
        right: SimplicialMap,
        bottom: SimplicialMap,
    ) -> Result<Self> {
        if top.source != left.source
            || top.target != right.source
            || left.target != bottom.source
            || right.target != bottom.target
        {
            return Err(SegalError::validation("square endpoints do not match"));
        }
        let a = right.compose(&top);
        let b = bottom.compose(&left);
        if a != b {
            return Err(SegalError::validation("square does not commute"));
        }
        Ok(Square { top, left, right, bottom })
    }

    pub fn corner(&self) -> &SimplicialSet {
        &self.top.source
    }
}
