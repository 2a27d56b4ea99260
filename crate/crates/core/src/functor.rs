//! Endofunctors applied level-wise to simplicial spaces: identity,
//! coskeleta, finite extension stages, and the composite Postnikov
//! approximations; the audit of the weak monoidality axioms; and the finite
//! Postnikov tower of a group action.

use serde::Serialize;

use crate::build::{circle, delta, point};
use crate::cosk::{cosk, cosk_map, cosk_unit, CoskElem};
use crate::error::Result;
use crate::gspace::{bar_action, GSpace};
use crate::homs::ex;
use crate::limits::{into_limit, product, projection};
use crate::segal::{is_segal_group_action, SegalReport};
use crate::simplex::SimplexRef;
use crate::smap::SimplicialMap;
use crate::space::{SimplicialSpace, SpaceMap};
use crate::sset::SimplicialSet;
use crate::tabulated::Tabulated;
use crate::verdict::{all_of, Verdict};
use crate::weq::weak_equivalence_verdict;

/// A level-wise endofunctor given by name. The Postnikov stage is the
/// (n+1)-coskeleton of k extension stages.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EndoFunctor {
    Identity,
    Cosk(usize),
    Ex(usize),
    Postnikov { n: usize, k: usize },
    Empty,
}

fn empty_like(x: &SimplicialSet) -> SimplicialSet {
    crate::build::discrete(&[], x.truncation())
}

fn ex_object(x: &SimplicialSet, k: usize, budget: usize) -> Result<SimplicialSet> {
    let mut cur = x.clone();
    for _ in 0..k {
        cur = ex(&cur, budget)?.sset().clone();
    }
    Ok(cur)
}

fn ex_map(f: &SimplicialMap, k: usize, budget: usize) -> Result<SimplicialMap> {
    let mut cur = f.clone();
    for _ in 0..k {
        let src = ex(&cur.source, budget)?;
        let dst = ex(&cur.target, budget)?;
        cur = src.map_into(&cur, &dst);
    }
    Ok(cur)
}

impl EndoFunctor {
    pub fn name(&self) -> String {
        match self {
            EndoFunctor::Identity => "identity".into(),
            EndoFunctor::Cosk(c) => format!("cosk_{c}"),
            EndoFunctor::Ex(k) => format!("ex^{k}"),
            EndoFunctor::Postnikov { n, k } => format!("postnikov_{n}[ex^{k}]"),
            EndoFunctor::Empty => "empty".into(),
        }
    }

    pub fn apply(&self, x: &SimplicialSet, budget: usize) -> Result<SimplicialSet> {
        match self {
            EndoFunctor::Identity => Ok(x.clone()),
            EndoFunctor::Cosk(c) => Ok(cosk(x, *c, budget)?.sset),
            EndoFunctor::Ex(k) => ex_object(x, *k, budget),
            EndoFunctor::Postnikov { n, k } => {
                Ok(cosk(&ex_object(x, *k, budget)?, n + 1, budget)?.sset)
            }
            EndoFunctor::Empty => Ok(empty_like(x)),
        }
    }

    pub fn apply_map(&self, f: &SimplicialMap, budget: usize) -> Result<SimplicialMap> {
        match self {
            EndoFunctor::Identity => Ok(f.clone()),
            EndoFunctor::Cosk(c) => {
                let src = cosk(&f.source, *c, budget)?;
                let dst = cosk(&f.target, *c, budget)?;
                Ok(cosk_map(f, &src, &dst))
            }
            EndoFunctor::Ex(k) => ex_map(f, *k, budget),
            EndoFunctor::Postnikov { n, k } => {
                let e = ex_map(f, *k, budget)?;
                let src = cosk(&e.source, n + 1, budget)?;
                let dst = cosk(&e.target, n + 1, budget)?;
                Ok(cosk_map(&e, &src, &dst))
            }
            EndoFunctor::Empty => {
                let src = empty_like(&f.source);
                let dst = empty_like(&f.target);
                let images = vec![Vec::new(); f.source.truncation() + 1];
                SimplicialMap::new(src, dst, images)
            }
        }
    }
}

/// The canonical comparison L(X x Y) -> LX x LY.
pub fn product_comparison(
    l: &EndoFunctor,
    x: &SimplicialSet,
    y: &SimplicialSet,
    budget: usize,
) -> Result<SimplicialMap> {
    let p = product(x, y, budget)?;
    let lpx = l.apply_map(&projection(&p, 0, x), budget)?;
    let lpy = l.apply_map(&projection(&p, 1, y), budget)?;
    let q = product(&lpx.target, &lpy.target, budget)?;
    into_limit(&q, &[lpx, lpy])
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditLine {
    pub label: String,
    pub verdict: Verdict,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctorAudit {
    pub functor: String,
    pub verdict: Verdict,
    pub lines: Vec<AuditLine>,
}

/// Audit the weak monoidality axioms on a small built-in corpus: the image
/// of the point is contractible, known equivalences stay equivalences, and
/// the product comparison maps are equivalences and natural.
pub fn functor_audit(l: &EndoFunctor, truncation: usize, budget: usize) -> Result<FunctorAudit> {
    let mut lines = Vec::new();
    let pt = point(truncation);

    let lpt = l.apply(&pt, budget)?;
    match SimplicialMap::to_point(&lpt, &pt) {
        Ok(collapse) => {
            let w = weak_equivalence_verdict(&collapse, budget)?;
            lines.push(AuditLine {
                label: "image of the point is contractible".into(),
                verdict: w.verdict,
                note: w.reason,
            });
        }
        Err(_) => {
            lines.push(AuditLine {
                label: "image of the point is contractible".into(),
                verdict: Verdict::Refuted,
                note: "no map to the point".into(),
            });
        }
    }

    let weqs: Vec<(String, SimplicialMap)> = vec![
        (
            "interval to the point".into(),
            SimplicialMap::to_point(&delta(1, truncation)?, &pt)?,
        ),
        (
            "3-simplex to the point".into(),
            SimplicialMap::to_point(&delta(3, truncation)?, &pt)?,
        ),
    ];
    for (label, f) in weqs {
        let lf = l.apply_map(&f, budget)?;
        let w = weak_equivalence_verdict(&lf, budget)?;
        lines.push(AuditLine {
            label: format!("preserves the equivalence: {label}"),
            verdict: w.verdict,
            note: w.reason,
        });
    }

    let c = circle(truncation)?;
    let prods: Vec<(String, SimplicialSet, SimplicialSet)> = vec![
        ("interval x interval".into(), delta(1, truncation)?, delta(1, truncation)?),
        ("circle x point".into(), c.clone(), pt.clone()),
    ];
    for (label, x, y) in &prods {
        let cmp = product_comparison(l, x, y, budget)?;
        let (verdict, note) = if cmp.is_iso() {
            (Verdict::Certified, "strict isomorphism".to_string())
        } else {
            let w = weak_equivalence_verdict(&cmp, budget)?;
            (w.verdict, w.reason)
        };
        lines.push(AuditLine { label: format!("product comparison: {label}"), verdict, note });
    }

    // Naturality of the comparison in both arguments, on one instance.
    {
        let d1 = delta(1, truncation)?;
        let f = SimplicialMap::to_point(&d1, &pt)?;
        let g = SimplicialMap::identity(&c);
        let src = product(&d1, &c, budget)?;
        let dst = product(&pt, &c, budget)?;
        let fg = into_limit(
            &dst,
            &[f.compose(&projection(&src, 0, &d1)), g.compose(&projection(&src, 1, &c))],
        )?;
        let cmp_src = product_comparison(l, &d1, &c, budget)?;
        let cmp_dst = product_comparison(l, &pt, &c, budget)?;
        let lf = l.apply_map(&f, budget)?;
        let lg = l.apply_map(&g, budget)?;
        let lprod = product(&lf.target, &lg.target, budget)?;
        let lf_lg = into_limit(
            &lprod,
            &[
                lf.compose(&projection(
                    &product(&lf.source, &lg.source, budget)?,
                    0,
                    &lf.source,
                )),
                lg.compose(&projection(
                    &product(&lf.source, &lg.source, budget)?,
                    1,
                    &lg.source,
                )),
            ],
        )?;
        let lhs = lf_lg.compose(&cmp_src);
        let rhs = cmp_dst.compose(&l.apply_map(&fg, budget)?);
        let ok = lhs == rhs;
        lines.push(AuditLine {
            label: "comparison is natural".into(),
            verdict: if ok { Verdict::Certified } else { Verdict::Refuted },
            note: if ok { "strict, simplex-wise".into() } else { "composites differ".into() },
        });
    }

    let verdict = all_of(lines.iter().map(|a| a.verdict));
    Ok(FunctorAudit { functor: l.name(), verdict, lines })
}

/// Apply a functor to every level of a simplicial space.
pub fn apply_space(l: &EndoFunctor, b: &SimplicialSpace, budget: usize) -> Result<SimplicialSpace> {
    let levels: Vec<SimplicialSet> =
        b.levels.iter().map(|x| l.apply(x, budget)).collect::<Result<_>>()?;
    let faces = b
        .faces
        .iter()
        .map(|row| row.iter().map(|f| l.apply_map(f, budget)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let degens = b
        .degens
        .iter()
        .map(|row| row.iter().map(|f| l.apply_map(f, budget)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    SimplicialSpace::new(levels, faces, degens)
}

/// Apply a functor to every level of a map of spaces and rerun the action
/// checker on the result.
pub fn apply_levelwise(
    l: &EndoFunctor,
    pi: &SpaceMap,
    up_to: usize,
    fib_depth: usize,
    ex_stage: usize,
    budget: usize,
) -> Result<(SpaceMap, SegalReport)> {
    let source = apply_space(l, &pi.source, budget)?;
    let target = apply_space(l, &pi.target, budget)?;
    let maps = pi.maps.iter().map(|f| l.apply_map(f, budget)).collect::<Result<_>>()?;
    let lpi = SpaceMap::new(source, target, maps)?;
    let report = is_segal_group_action(&lpi, up_to, fib_depth, ex_stage, budget)?;
    Ok((lpi, report))
}

/// The natural projection from a finer coskeleton to a coarser one of the
/// same set: re-express each simplex by its boundary data at the lower
/// cutoff.
fn cosk_step(
    x: &SimplicialSet,
    hi: &Tabulated<CoskElem>,
    lo_cut: usize,
    lo: &Tabulated<CoskElem>,
) -> SimplicialMap {
    fn lower(x: &SimplicialSet, cut: usize, m: usize, e: &CoskElem) -> CoskElem {
        if m <= cut {
            match e {
                CoskElem::Base(r) => CoskElem::Base(r.clone()),
                CoskElem::Node(_) => unreachable!("node below the cutoff"),
            }
        } else {
            match e {
                CoskElem::Base(r) => CoskElem::Node(
                    (0..=m)
                        .map(|i| lower(x, cut, m - 1, &CoskElem::Base(x.face(i, r))))
                        .collect(),
                ),
                CoskElem::Node(comps) => CoskElem::Node(
                    comps.iter().map(|c| lower(x, cut, m - 1, c)).collect(),
                ),
            }
        }
    }
    let trunc = x.truncation();
    let images = (0..=trunc)
        .map(|m| {
            hi.sset
                .gens_of_dim(m)
                .map(|g| lo.to_ref(m, &lower(x, lo_cut, m, hi.of_ref(&SimplexRef::of(g)))))
                .collect()
        })
        .collect();
    SimplicialMap::new(hi.sset.clone(), lo.sset.clone(), images)
        .expect("coskeleton projections are simplicial")
}

/// The unit into a Postnikov stage: the extension inclusion followed by the
/// coskeleton unit.
fn postnikov_unit(x: &SimplicialSet, n: usize, k: usize, budget: usize) -> Result<SimplicialMap> {
    let mut inc = SimplicialMap::identity(x);
    for _ in 0..k {
        let e = ex(&inc.target, budget)?;
        inc = e.last_vertex_inclusion().compose(&inc);
    }
    let tab = cosk(&inc.target, n + 1, budget)?;
    Ok(cosk_unit(&inc.target, n + 1, &tab).compose(&inc))
}

/// The projection between consecutive Postnikov stages of the same set.
fn postnikov_step(x: &SimplicialSet, n: usize, k: usize, budget: usize) -> Result<SimplicialMap> {
    let e = ex_object(x, k, budget)?;
    let hi = cosk(&e, n + 1, budget)?;
    let lo = cosk(&e, n, budget)?;
    Ok(cosk_step(&e, &hi, n, &lo))
}

fn space_unit(
    b: &SimplicialSpace,
    target: &SimplicialSpace,
    n: usize,
    k: usize,
    budget: usize,
) -> Result<SpaceMap> {
    let maps = b
        .levels
        .iter()
        .map(|x| postnikov_unit(x, n, k, budget))
        .collect::<Result<Vec<_>>>()?;
    SpaceMap::new(b.clone(), target.clone(), maps)
}

fn space_step(
    b: &SimplicialSpace,
    from: &SimplicialSpace,
    to: &SimplicialSpace,
    n: usize,
    k: usize,
    budget: usize,
) -> Result<SpaceMap> {
    let maps = b
        .levels
        .iter()
        .map(|x| postnikov_step(x, n, k, budget))
        .collect::<Result<Vec<_>>>()?;
    SpaceMap::new(from.clone(), to.clone(), maps)
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerCheck {
    pub label: String,
    pub ok: bool,
}

/// The finite Postnikov tower of the bar presentation of an action: stage n
/// applies the n-th Postnikov approximation level-wise; the inter-stage
/// projections and units are recorded with exhaustive commutation checks.
pub struct TowerDiagram {
    pub stages: Vec<SpaceMap>,
    /// `p[n-1]` is the stage-n projection, on the source and target sides.
    pub p_source: Vec<SpaceMap>,
    pub p_target: Vec<SpaceMap>,
    /// `tau[n]` includes the bar presentation into stage n.
    pub tau_source: Vec<SpaceMap>,
    pub tau_target: Vec<SpaceMap>,
    pub checks: Vec<TowerCheck>,
    pub ex_stage: usize,
}

impl TowerDiagram {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

fn levelwise_equal(a: &SpaceMap, b: &SpaceMap) -> bool {
    a.maps == b.maps
}

fn composed(outer: &SpaceMap, inner: &SpaceMap) -> Result<SpaceMap> {
    let maps = inner
        .maps
        .iter()
        .zip(&outer.maps)
        .map(|(f, g)| g.compose(f))
        .collect();
    SpaceMap::new(inner.source.clone(), outer.target.clone(), maps)
}

pub fn build_tower(
    xg: &GSpace,
    ext: usize,
    n_max: usize,
    k: usize,
    budget: usize,
) -> Result<TowerDiagram> {
    let base = bar_action(xg, ext, budget)?;
    let pi = &base.map;
    let mut stages = Vec::with_capacity(n_max + 1);
    let mut tau_source = Vec::with_capacity(n_max + 1);
    let mut tau_target = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let l = EndoFunctor::Postnikov { n, k };
        let source = apply_space(&l, &pi.source, budget)?;
        let target = apply_space(&l, &pi.target, budget)?;
        let maps = pi.maps.iter().map(|f| l.apply_map(f, budget)).collect::<Result<_>>()?;
        tau_source.push(space_unit(&pi.source, &source, n, k, budget)?);
        tau_target.push(space_unit(&pi.target, &target, n, k, budget)?);
        stages.push(SpaceMap::new(source, target, maps)?);
    }
    let mut p_source = Vec::with_capacity(n_max);
    let mut p_target = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        p_source.push(space_step(
            &pi.source,
            &stages[n].source,
            &stages[n - 1].source,
            n,
            k,
            budget,
        )?);
        p_target.push(space_step(
            &pi.target,
            &stages[n].target,
            &stages[n - 1].target,
            n,
            k,
            budget,
        )?);
    }

    let mut checks = Vec::new();
    for n in 0..=n_max {
        let lhs = composed(&stages[n], &tau_source[n])?;
        let rhs = composed(&tau_target[n], pi)?;
        checks.push(TowerCheck {
            label: format!("stage {n} square over the unit commutes"),
            ok: levelwise_equal(&lhs, &rhs),
        });
    }
    for n in 1..=n_max {
        let lhs = composed(&stages[n - 1], &p_source[n - 1])?;
        let rhs = composed(&p_target[n - 1], &stages[n])?;
        checks.push(TowerCheck {
            label: format!("stage {n} square over the projection commutes"),
            ok: levelwise_equal(&lhs, &rhs),
        });
        let src = composed(&p_source[n - 1], &tau_source[n])?;
        checks.push(TowerCheck {
            label: format!("p_{n} after tau_{n} is tau_{} on the source side", n - 1),
            ok: levelwise_equal(&src, &tau_source[n - 1]),
        });
        let dst = composed(&p_target[n - 1], &tau_target[n])?;
        checks.push(TowerCheck {
            label: format!("p_{n} after tau_{n} is tau_{} on the target side", n - 1),
            ok: levelwise_equal(&dst, &tau_target[n - 1]),
        });
    }
    Ok(TowerDiagram { stages, p_source, p_target, tau_source, tau_target, checks, ex_stage: k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{wbar, FiniteGroup, SimplicialGroup};
    use crate::gspace::{trivial_action, unstraighten};
    use crate::homology::{homology_range, HomologySignature};
    use crate::pi::{pi1_presentation, todd_coxeter};

    #[test]
    fn every_functor_fixes_the_point_up_to_homotopy() {
        let pt = point(3);
        for l in [
            EndoFunctor::Identity,
            EndoFunctor::Cosk(1),
            EndoFunctor::Ex(1),
            EndoFunctor::Postnikov { n: 0, k: 0 },
            EndoFunctor::Postnikov { n: 1, k: 1 },
        ] {
            let img = l.apply(&pt, 1 << 20).unwrap();
            for m in 0..=3 {
                assert_eq!(img.total_count(m), 1, "{} dim {m}", l.name());
            }
        }
    }

    #[test]
    fn first_postnikov_stage_keeps_small_pi1() {
        let g = SimplicialGroup::constant(&FiniteGroup::cyclic(2), 4);
        let wb = wbar(&g, 1 << 20).unwrap();
        let l = EndoFunctor::Postnikov { n: 1, k: 0 };
        let img = l.apply(&wb.sset, 1 << 20).unwrap();
        let p = pi1_presentation(&img, None).unwrap();
        assert_eq!(todd_coxeter(&p, 5000), Some(2));
    }

    #[test]
    fn zeroth_postnikov_stage_has_point_homology_low_down() {
        let g = SimplicialGroup::constant(&FiniteGroup::cyclic(2), 4);
        let wb = wbar(&g, 1 << 20).unwrap();
        let l = EndoFunctor::Postnikov { n: 0, k: 0 };
        let img = l.apply(&wb.sset, 1 << 20).unwrap();
        let h = homology_range(&img, 1).unwrap();
        assert_eq!(h[0], HomologySignature::free(1));
        assert_eq!(h[1], HomologySignature::free(0));
    }

    #[test]
    fn extension_audit_is_certified_with_strict_products() {
        // Extension stages grow quickly; audit them at a low truncation.
        let audit = functor_audit(&EndoFunctor::Ex(1), 2, 1 << 21).unwrap();
        assert!(audit.verdict.is_certified(), "{:?}", audit.lines);
        let prod_lines: Vec<_> =
            audit.lines.iter().filter(|l| l.label.starts_with("product comparison")).collect();
        assert!(!prod_lines.is_empty());
        for l in prod_lines {
            assert_eq!(l.note, "strict isomorphism");
        }
    }

    #[test]
    fn coskeleton_audit_is_certified() {
        let audit = functor_audit(&EndoFunctor::Cosk(2), 3, 1 << 21).unwrap();
        assert!(audit.verdict.is_certified(), "{:?}", audit.lines);
    }

    #[test]
    fn empty_functor_fails_the_point_axiom() {
        let audit = functor_audit(&EndoFunctor::Empty, 3, 1 << 20).unwrap();
        assert!(audit.verdict.is_refuted());
        assert!(audit.lines[0].verdict.is_refuted());
    }

    #[test]
    fn identity_reproduces_the_report() {
        let g = SimplicialGroup::constant(&FiniteGroup::cyclic(2), 3);
        let xg = trivial_action(&point(3), &g).unwrap();
        let un = unstraighten(&xg, 2, 2, 2, 1, 1 << 20).unwrap();
        let (_, report) =
            apply_levelwise(&EndoFunctor::Identity, &un.action.map, 2, 2, 1, 1 << 20).unwrap();
        assert_eq!(
            serde_json::to_string(&report).unwrap(),
            serde_json::to_string(&un.report).unwrap()
        );
    }

    #[test]
    fn tower_of_the_point_commutes() {
        let g = SimplicialGroup::constant(&FiniteGroup::cyclic(2), 3);
        let xg = trivial_action(&point(3), &g).unwrap();
        let tower = build_tower(&xg, 2, 1, 0, 1 << 21).unwrap();
        assert!(tower.all_ok(), "{:?}", tower.checks);
        assert_eq!(tower.stages.len(), 2);
    }
}
