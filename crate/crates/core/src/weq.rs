//! Weak equivalence verdicts and homotopy cartesian squares, certified
//! within the truncation window.

use serde::Serialize;

use crate::chain::mapping_cone;
use crate::error::Result;
use crate::homology::{complex_homology, homology_range, HomologySignature};
use crate::homs::{ex, exponential};
use crate::kan::{is_fibration, kan_check};
use crate::limits::{into_limit, projection, pullback, tuple_limit, Constraint, Tuple};
use crate::pi::{certified_trivial, pi0, pi1_presentation, todd_coxeter, Pi0};
use crate::simplex::{Gen, SimplexRef};
use crate::smap::{SimplicialMap, Square};
use crate::sset::SimplicialSet;
use crate::tabulated::Tabulated;
use crate::verdict::Verdict;

const TC_COSET_CAP: usize = 20_000;

#[derive(Clone, Debug, Serialize)]
pub struct WeqReport {
    pub verdict: Verdict,
    pub reason: String,
    pub pi0_source: usize,
    pub pi0_target: usize,
    pub homology_source: Vec<HomologySignature>,
    pub homology_target: Vec<HomologySignature>,
}

/// A vertex in the same path component as the generator.
fn component_vertex(x: &SimplicialSet, g: Gen) -> usize {
    let mut r = SimplexRef::of(g);
    for _ in 0..g.dim {
        r = x.face(0, &r);
    }
    debug_assert!(r.word.is_empty());
    r.gen.idx
}

/// Path components as subcomplexes, indexed by component class.
fn components(x: &SimplicialSet, classes: &Pi0) -> Result<Vec<SimplicialSet>> {
    let mut out = Vec::with_capacity(classes.count);
    for c in 0..classes.count {
        let keep: Vec<Vec<bool>> = (0..=x.truncation())
            .map(|d| {
                x.gens_of_dim(d)
                    .map(|g| classes.class_of[component_vertex(x, g)] == c)
                    .collect()
            })
            .collect();
        out.push(x.subcomplex(&keep)?.0);
    }
    Ok(out)
}

/// Decide whether `f` is a weak equivalence, as far as the truncation
/// window allows.
///
/// REFUTED on a mismatch of a homotopy invariant that is reliable within
/// the window. CERTIFIED when components biject, both sides have certified
/// trivial fundamental groups, and the mapping cone is acyclic through the
/// window. CONSISTENT otherwise.
pub fn weak_equivalence_verdict(f: &SimplicialMap, budget: usize) -> Result<WeqReport> {
    let x = &f.source;
    let y = &f.target;
    let up_to = x.truncation().saturating_sub(1);
    let hx = homology_range(x, up_to)?;
    let hy = homology_range(y, up_to)?;
    let p0x = pi0(x);
    let p0y = pi0(y);
    let report = |verdict: Verdict, reason: String| WeqReport {
        verdict,
        reason,
        pi0_source: p0x.count,
        pi0_target: p0y.count,
        homology_source: hx.clone(),
        homology_target: hy.clone(),
    };

    if f.is_iso() {
        return Ok(report(Verdict::Certified, "isomorphism".into()));
    }

    // Component comparison through f.
    let mut image_class: Vec<Option<usize>> = vec![None; p0x.count];
    for (idx, _) in x.gens_of_dim(0).enumerate() {
        let img = f.apply(&SimplexRef::of(Gen { dim: 0, idx }));
        debug_assert!(img.word.is_empty());
        image_class[p0x.class_of[idx]] = Some(p0y.class_of[img.gen.idx]);
    }
    let mut seen = vec![false; p0y.count];
    let mut bijective = p0x.count == p0y.count;
    for c in image_class.iter().flatten() {
        if seen[*c] {
            bijective = false;
        }
        seen[*c] = true;
    }
    if !bijective {
        return Ok(report(
            Verdict::Refuted,
            format!("components do not biject: {} vs {}", p0x.count, p0y.count),
        ));
    }

    for k in 0..=up_to {
        if hx[k] != hy[k] {
            return Ok(report(
                Verdict::Refuted,
                format!("homology differs in degree {k}: {} vs {}", hx[k], hy[k]),
            ));
        }
    }

    // Mapping cone must be acyclic through the window.
    let cone = mapping_cone(f);
    for k in 0..=up_to {
        let h = complex_homology(&cone, k)?;
        if h != HomologySignature::free(0) {
            return Ok(report(
                Verdict::Refuted,
                format!("mapping cone has homology {h} in degree {k}"),
            ));
        }
    }

    // Fundamental group comparison on matched components.
    let comps_x = components(x, &p0x)?;
    let comps_y = components(y, &p0y)?;
    let cosets = budget.min(TC_COSET_CAP);
    let mut all_trivial = true;
    for cx in 0..p0x.count {
        let cy = image_class[cx].expect("components have vertices");
        let px = pi1_presentation(&comps_x[cx], None)?;
        let py = pi1_presentation(&comps_y[cy], None)?;
        if let (Some(ox), Some(oy)) = (todd_coxeter(&px, cosets), todd_coxeter(&py, cosets)) {
            if ox != oy {
                return Ok(report(
                    Verdict::Refuted,
                    format!("fundamental groups have certified orders {ox} vs {oy}"),
                ));
            }
        }
        if !(certified_trivial(&px, cosets) && certified_trivial(&py, cosets)) {
            all_trivial = false;
        }
    }

    if all_trivial {
        Ok(report(
            Verdict::Certified,
            "components biject, fundamental groups are certified trivial, \
             and the mapping cone is acyclic through the window"
                .into(),
        ))
    } else {
        Ok(report(
            Verdict::Consistent,
            "all computable invariants agree within the window".into(),
        ))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CartesianReport {
    pub verdict: Verdict,
    pub reason: String,
}

fn ex_square(sq: &Square, budget: usize) -> Result<Square> {
    let ew = ex(&sq.top.source, budget)?;
    let ev = ex(&sq.top.target, budget)?;
    let eu = ex(&sq.left.target, budget)?;
    let ez = ex(&sq.bottom.target, budget)?;
    Square::new(
        ew.map_into(&sq.top, &ev),
        ew.map_into(&sq.left, &eu),
        ev.map_into(&sq.right, &ez),
        eu.map_into(&sq.bottom, &ez),
    )
}

/// Decide whether a commuting square is homotopy cartesian.
///
/// When one of the legs into the base is a certified fibration, the strict
/// pullback computes the homotopy pullback and the verdict is that of the
/// comparison map. Otherwise the base leg is replaced by its mapping path
/// space; if the base fails the Kan check even after extension stages, the
/// verdict is capped at CONSISTENT.
pub fn is_homotopy_cartesian(
    sq: &Square,
    fib_depth: usize,
    ex_stage: usize,
    budget: usize,
) -> Result<CartesianReport> {
    let trunc = sq.corner().truncation();
    let max_dim = fib_depth.min(trunc.saturating_sub(1)).max(1);

    let legs = [
        (&sq.right, &sq.bottom, &sq.top, &sq.left, "right"),
        (&sq.bottom, &sq.right, &sq.left, &sq.top, "bottom"),
    ];
    for (leg, other, mine, other_mine, name) in legs {
        let fr = is_fibration(leg, max_dim, budget)?;
        if fr.verdict.is_certified() {
            let p = pullback(leg, other, budget)?;
            let c = into_limit(&p, &[mine.clone(), other_mine.clone()])?;
            let w = weak_equivalence_verdict(&c, budget)?;
            return Ok(CartesianReport {
                verdict: w.verdict,
                reason: format!(
                    "comparison with the strict pullback along the {name} fibration: {}",
                    w.reason
                ),
            });
        }
    }

    // Path space route, on the square or its extension replacement.
    let mut sq2 = sq.clone();
    let mut kan = kan_check(&sq2.bottom.target, max_dim, budget)?;
    let mut stage = 0;
    while !kan.verdict.is_certified() && stage < ex_stage {
        sq2 = ex_square(&sq2, budget)?;
        kan = kan_check(&sq2.bottom.target, max_dim, budget)?;
        stage += 1;
    }
    let mut weakened = !kan.verdict.is_certified();

    let z = sq2.bottom.target.clone();
    let u = sq2.bottom.source.clone();
    let e = exponential(1, &z, budget)?;
    let ev0 = e.eval_at(0);
    let ev1 = e.eval_at(1);
    let q = pullback(&sq2.bottom, &ev0, budget)?;
    let pr_paths = projection(&q, 1, &ev0.source);
    let q_fib = ev1.compose(&pr_paths);
    let embed = into_limit(
        &q,
        &[SimplicialMap::identity(&u), e.constants().compose(&sq2.bottom)],
    )?;
    weakened |= !is_fibration(&q_fib, max_dim, budget)?.verdict.is_certified();
    let p = pullback(&sq2.right, &q_fib, budget)?;
    let c = into_limit(&p, &[sq2.top.clone(), embed.compose(&sq2.left)])?;
    let w = weak_equivalence_verdict(&c, budget)?;
    let verdict = if weakened { w.verdict.weaken() } else { w.verdict };
    Ok(CartesianReport {
        verdict,
        reason: format!("comparison with the mapping path space pullback: {}", w.reason),
    })
}

/// The loop space of a pointed complex at a vertex: paths from the base
/// point to itself, as the tuple limit `pt x_{ev0} x^{Δ^1} x_{ev1} pt`.
pub fn loop_space(x: &SimplicialSet, base: Gen, budget: usize) -> Result<Tabulated<Tuple>> {
    let e = exponential(1, x, budget)?;
    let ev0 = e.eval_at(0);
    let ev1 = e.eval_at(1);
    let paths = ev0.source.clone();
    let pt = crate::build::point(x.truncation());
    let b = SimplicialMap::constant(&pt, x, base);
    tuple_limit(
        &[pt.clone(), paths, pt],
        &[
            Constraint {
                left_factor: 0,
                left_map: b.clone(),
                right_factor: 1,
                right_map: ev0,
            },
            Constraint {
                left_factor: 1,
                left_map: ev1,
                right_factor: 2,
                right_map: b,
            },
        ],
        budget,
    )
}
