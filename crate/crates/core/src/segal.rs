//! Segal space, Segal group, and Segal group action checkers over
//! truncated simplicial spaces.

use serde::Serialize;

use crate::build::{discrete, point};
use crate::error::{Result, SegalError};
use crate::group::FiniteGroup;
use crate::homs::exponential;
use crate::kan::{is_fibration, kan_check};
use crate::limits::{into_limit, tuple_limit, Constraint, Tuple};
use crate::pi::{certified_iso_to, pi0, pi1_presentation, todd_coxeter};
use crate::simplex::{Gen, Monotone, SimplexRef};
use crate::smap::{SimplicialMap, Square};
use crate::space::{constant_space, diagonal, SimplicialSpace, SpaceMap};
use crate::sset::SimplicialSet;
use crate::tabulated::Tabulated;
use crate::verdict::{all_of, Verdict};
use crate::weq::{is_homotopy_cartesian, weak_equivalence_verdict};

#[derive(Clone, Debug, Serialize)]
pub struct LevelVerdict {
    pub n: usize,
    pub verdict: Verdict,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SegalReport {
    pub verdict: Verdict,
    pub reedy: Vec<LevelVerdict>,
    pub segal_maps: Vec<LevelVerdict>,
    pub group_like: Option<LevelVerdict>,
    pub base_contractible: Option<LevelVerdict>,
    pub action_squares: Vec<LevelVerdict>,
}

fn fib_dim(int_trunc: usize, fib_depth: usize) -> usize {
    fib_depth.min(int_trunc.saturating_sub(1)).max(1)
}

/// A failed fibrancy certificate only caps a verdict: the definition is
/// stable under Reedy fibrant replacement, which is not computed here.
fn soften(v: Verdict) -> Verdict {
    if v.is_certified() {
        v
    } else {
        Verdict::Consistent
    }
}

/// Slots of the matching data at level n: every face index except 1.
fn matching_slots(n: usize) -> Vec<usize> {
    (0..=n).filter(|&j| j != 1).collect()
}

/// The matching object M_n B: tuples of (n-1)-levels indexed by the
/// matching slots, with the face compatibilities of an n-simplex boundary.
pub fn matching_object(
    b: &SimplicialSpace,
    n: usize,
    budget: usize,
) -> Result<Tabulated<Tuple>> {
    if n > b.ext_truncation() {
        return Err(SegalError::unsupported("matching level exceeds the external truncation"));
    }
    if n == 0 {
        return tuple_limit(&[point(b.internal_truncation())], &[], budget);
    }
    let slots = matching_slots(n);
    let factors = vec![b.levels[n - 1].clone(); slots.len()];
    let mut constraints = Vec::new();
    for (si, &i) in slots.iter().enumerate() {
        for (sj, &j) in slots.iter().enumerate().skip(si + 1) {
            constraints.push(Constraint {
                left_factor: sj,
                left_map: b.faces[n - 1][i].clone(),
                right_factor: si,
                right_map: b.faces[n - 1][j - 1].clone(),
            });
        }
    }
    tuple_limit(&factors, &constraints, budget)
}

/// The relative matching map of `pi` at level n,
/// A_n -> B_n x_{M_n B} M_n A.
fn relative_matching_map(pi: &SpaceMap, n: usize, budget: usize) -> Result<SimplicialMap> {
    let a = &pi.source;
    let b = &pi.target;
    if n == 0 {
        let t = tuple_limit(&[b.levels[0].clone()], &[], budget)?;
        return into_limit(&t, &[pi.maps[0].clone()]);
    }
    let slots = matching_slots(n);
    let mut factors = vec![b.levels[n].clone()];
    factors.extend(vec![a.levels[n - 1].clone(); slots.len()]);
    let mut constraints = Vec::new();
    for (si, &i) in slots.iter().enumerate() {
        for (sj, &j) in slots.iter().enumerate().skip(si + 1) {
            constraints.push(Constraint {
                left_factor: 1 + sj,
                left_map: a.faces[n - 1][i].clone(),
                right_factor: 1 + si,
                right_map: a.faces[n - 1][j - 1].clone(),
            });
        }
    }
    for (sj, &j) in slots.iter().enumerate() {
        constraints.push(Constraint {
            left_factor: 1 + sj,
            left_map: pi.maps[n - 1].clone(),
            right_factor: 0,
            right_map: b.faces[n][j].clone(),
        });
    }
    let t = tuple_limit(&factors, &constraints, budget)?;
    let mut components = vec![pi.maps[n].clone()];
    components.extend(slots.iter().map(|&j| a.faces[n][j].clone()));
    into_limit(&t, &components)
}

pub fn reedy_levels(
    pi: &SpaceMap,
    up_to: usize,
    fib_depth: usize,
    budget: usize,
) -> Result<Vec<LevelVerdict>> {
    let ext = pi.source.ext_truncation();
    let max_dim = fib_dim(pi.source.internal_truncation(), fib_depth);
    let mut out = Vec::new();
    for n in 0..=up_to.min(ext) {
        let rel = relative_matching_map(pi, n, budget)?;
        let fr = is_fibration(&rel, max_dim, budget)?;
        out.push(LevelVerdict {
            n,
            verdict: fr.verdict,
            note: format!("relative matching map checked through dimension {max_dim}"),
        });
    }
    Ok(out)
}

pub fn reedy_fibration_check(
    pi: &SpaceMap,
    up_to: usize,
    fib_depth: usize,
    budget: usize,
) -> Result<Verdict> {
    Ok(all_of(reedy_levels(pi, up_to, fib_depth, budget)?.into_iter().map(|l| l.verdict)))
}

/// The map to the constant point space.
pub fn terminal_map(b: &SimplicialSpace) -> Result<SpaceMap> {
    let pt = constant_space(&point(b.internal_truncation()), b.ext_truncation());
    let maps = b
        .levels
        .iter()
        .map(|l| SimplicialMap::to_point(l, &pt.levels[0]))
        .collect::<Result<Vec<_>>>()?;
    SpaceMap::new(b.clone(), pt, maps)
}

/// The spine comparison B_n -> B_1 x_{B_0} ... x_{B_0} B_1 built from the
/// strict iterated fiber product.
pub fn segal_map(b: &SimplicialSpace, n: usize, budget: usize) -> Result<SimplicialMap> {
    if n == 0 || n > b.ext_truncation() {
        return Err(SegalError::unsupported("spine level out of range"));
    }
    let factors = vec![b.levels[1].clone(); n];
    let mut constraints = Vec::new();
    for i in 0..n.saturating_sub(1) {
        constraints.push(Constraint {
            left_factor: i,
            left_map: b.faces[1][0].clone(),
            right_factor: i + 1,
            right_map: b.faces[1][1].clone(),
        });
    }
    let lim = tuple_limit(&factors, &constraints, budget)?;
    let components: Vec<SimplicialMap> = (0..n)
        .map(|i| b.external_operator(&Monotone::new(vec![i, i + 1], n)))
        .collect();
    into_limit(&lim, &components)
}

/// The spine comparison against the mapping path space spine, used when the
/// strict fiber product is not certified to compute the homotopy limit.
pub fn segal_path_map(b: &SimplicialSpace, n: usize, budget: usize) -> Result<SimplicialMap> {
    if n == 0 || n > b.ext_truncation() {
        return Err(SegalError::unsupported("spine level out of range"));
    }
    let e = exponential(1, &b.levels[0], budget)?;
    let ev0 = e.eval_at(0);
    let ev1 = e.eval_at(1);
    let paths = ev0.source.clone();
    let mut factors = Vec::with_capacity(2 * n - 1);
    for i in 0..n {
        factors.push(b.levels[1].clone());
        if i + 1 < n {
            factors.push(paths.clone());
        }
    }
    let mut constraints = Vec::new();
    for i in 0..n.saturating_sub(1) {
        constraints.push(Constraint {
            left_factor: 2 * i + 1,
            left_map: ev0.clone(),
            right_factor: 2 * i,
            right_map: b.faces[1][0].clone(),
        });
        constraints.push(Constraint {
            left_factor: 2 * i + 1,
            left_map: ev1.clone(),
            right_factor: 2 * i + 2,
            right_map: b.faces[1][1].clone(),
        });
    }
    let lim = tuple_limit(&factors, &constraints, budget)?;
    let mut components = Vec::with_capacity(2 * n - 1);
    for i in 0..n {
        components.push(b.external_operator(&Monotone::new(vec![i, i + 1], n)));
        if i + 1 < n {
            let vertex = b.external_operator(&Monotone::new(vec![i + 1], n));
            components.push(e.constants().compose(&vertex));
        }
    }
    into_limit(&lim, &components)
}

fn spine_legs_certified(b: &SimplicialSpace, fib_depth: usize, budget: usize) -> Result<bool> {
    let max_dim = fib_dim(b.internal_truncation(), fib_depth);
    let d0 = is_fibration(&b.faces[1][0], max_dim, budget)?;
    let d1 = is_fibration(&b.faces[1][1], max_dim, budget)?;
    Ok(d0.verdict.is_certified() && d1.verdict.is_certified())
}

pub fn is_segal_space(
    b: &SimplicialSpace,
    up_to: usize,
    fib_depth: usize,
    budget: usize,
) -> Result<SegalReport> {
    let up = up_to.min(b.ext_truncation());
    let reedy = reedy_levels(&terminal_map(b)?, up, fib_depth, budget)?;
    let strict = b.ext_truncation() >= 1 && spine_legs_certified(b, fib_depth, budget)?;
    let base_kan = strict || {
        let max_dim = fib_dim(b.internal_truncation(), fib_depth);
        kan_check(&b.levels[0], max_dim, budget)?.verdict.is_certified()
    };
    let mut segal_maps = Vec::new();
    for n in 1..=up {
        let (verdict, note) = if strict {
            let c = segal_map(b, n, budget)?;
            let w = weak_equivalence_verdict(&c, budget)?;
            (w.verdict, format!("strict spine comparison: {}", w.reason))
        } else {
            let c = segal_path_map(b, n, budget)?;
            let w = weak_equivalence_verdict(&c, budget)?;
            let v = if base_kan { w.verdict.weaken() } else { Verdict::Consistent };
            (v, format!("path space spine comparison: {}", w.reason))
        };
        segal_maps.push(LevelVerdict { n, verdict, note });
    }
    let verdict = all_of(
        reedy
            .iter()
            .map(|l| soften(l.verdict))
            .chain(segal_maps.iter().map(|l| l.verdict)),
    );
    Ok(SegalReport {
        verdict,
        reedy,
        segal_maps,
        group_like: None,
        base_contractible: None,
        action_squares: Vec::new(),
    })
}

/// Group-likeness: (d_1, d_0): B_2 -> B_1 x_{B_0} B_1, both legs over d_0,
/// must be a weak equivalence.
pub fn is_group_like(b: &SimplicialSpace, fib_depth: usize, budget: usize) -> Result<LevelVerdict> {
    if b.ext_truncation() < 2 {
        return Err(SegalError::unsupported("group-likeness needs external level 2"));
    }
    let strict = {
        let max_dim = fib_dim(b.internal_truncation(), fib_depth);
        is_fibration(&b.faces[1][0], max_dim, budget)?.verdict.is_certified()
    };
    let (verdict, note) = if strict {
        let lim = tuple_limit(
            &[b.levels[1].clone(), b.levels[1].clone()],
            &[Constraint {
                left_factor: 0,
                left_map: b.faces[1][0].clone(),
                right_factor: 1,
                right_map: b.faces[1][0].clone(),
            }],
            budget,
        )?;
        let c = into_limit(&lim, &[b.faces[2][1].clone(), b.faces[2][0].clone()])?;
        let w = weak_equivalence_verdict(&c, budget)?;
        (w.verdict, format!("strict (d1,d0) comparison: {}", w.reason))
    } else {
        let e = exponential(1, &b.levels[0], budget)?;
        let ev0 = e.eval_at(0);
        let ev1 = e.eval_at(1);
        let lim = tuple_limit(
            &[b.levels[1].clone(), ev0.source.clone(), b.levels[1].clone()],
            &[
                Constraint {
                    left_factor: 1,
                    left_map: ev0,
                    right_factor: 0,
                    right_map: b.faces[1][0].clone(),
                },
                Constraint {
                    left_factor: 1,
                    left_map: ev1,
                    right_factor: 2,
                    right_map: b.faces[1][0].clone(),
                },
            ],
            budget,
        )?;
        let v2 = b.external_operator(&Monotone::new(vec![2], 2));
        let c = into_limit(
            &lim,
            &[
                b.faces[2][1].clone(),
                e.constants().compose(&v2),
                b.faces[2][0].clone(),
            ],
        )?;
        let w = weak_equivalence_verdict(&c, budget)?;
        let max_dim = fib_dim(b.internal_truncation(), fib_depth);
        let base_kan = kan_check(&b.levels[0], max_dim, budget)?.verdict.is_certified();
        let v = if base_kan { w.verdict.weaken() } else { Verdict::Consistent };
        (v, format!("path space (d1,d0) comparison: {}", w.reason))
    };
    Ok(LevelVerdict { n: 2, verdict, note })
}

pub fn is_segal_group(
    b: &SimplicialSpace,
    up_to: usize,
    fib_depth: usize,
    budget: usize,
) -> Result<SegalReport> {
    let mut report = is_segal_space(b, up_to, fib_depth, budget)?;
    let gl = is_group_like(b, fib_depth, budget)?;
    let base = {
        let pt = point(b.internal_truncation());
        let f = SimplicialMap::to_point(&b.levels[0], &pt)?;
        let w = weak_equivalence_verdict(&f, budget)?;
        LevelVerdict {
            n: 0,
            verdict: w.verdict,
            note: format!("level 0 against the point: {}", w.reason),
        }
    };
    report.verdict = all_of([report.verdict, gl.verdict, base.verdict]);
    report.group_like = Some(gl);
    report.base_contractible = Some(base);
    Ok(report)
}

/// The action condition at level n: the square
///
/// ```text
///   A_n --a0--> A_0
///    |           |
///   pi_n       pi_0
///    v           v
///   B_n --a0--> B_0
/// ```
///
/// must be homotopy cartesian, where a0 restricts to the initial vertex.
fn action_square(pi: &SpaceMap, n: usize, op_value: usize) -> Result<Square> {
    let op = Monotone::new(vec![op_value], n);
    Square::new(
        pi.source.external_operator(&op),
        pi.maps[n].clone(),
        pi.maps[0].clone(),
        pi.target.external_operator(&op),
    )
}

pub fn is_segal_group_action(
    pi: &SpaceMap,
    up_to: usize,
    fib_depth: usize,
    ex_stage: usize,
    budget: usize,
) -> Result<SegalReport> {
    let up = up_to.min(pi.source.ext_truncation());
    let target = is_segal_group(&pi.target, up_to, fib_depth, budget)?;
    let reedy = reedy_levels(pi, up, fib_depth, budget)?;
    let mut action_squares = Vec::new();
    for n in 1..=up {
        let sq = action_square(pi, n, 0)?;
        let r = is_homotopy_cartesian(&sq, fib_depth, ex_stage, budget)?;
        action_squares.push(LevelVerdict { n, verdict: r.verdict, note: r.reason });
    }
    let verdict = all_of(
        [target.verdict]
            .into_iter()
            .chain(reedy.iter().map(|l| soften(l.verdict)))
            .chain(action_squares.iter().map(|l| l.verdict)),
    );
    Ok(SegalReport {
        verdict,
        reedy,
        segal_maps: target.segal_maps,
        group_like: target.group_like,
        base_contractible: target.base_contractible,
        action_squares,
    })
}

/// The inverted cross-check: the final-vertex squares must also be homotopy
/// cartesian, and the total space must itself be a group-like Segal space.
pub fn cross_check_inverted(
    pi: &SpaceMap,
    up_to: usize,
    fib_depth: usize,
    ex_stage: usize,
    budget: usize,
) -> Result<Verdict> {
    let up = up_to.min(pi.source.ext_truncation());
    let mut verdicts = Vec::new();
    for n in 1..=up {
        let sq = action_square(pi, n, n)?;
        let r = is_homotopy_cartesian(&sq, fib_depth, ex_stage, budget)?;
        verdicts.push(r.verdict);
    }
    verdicts.push(is_segal_space(&pi.source, up_to, fib_depth, budget)?.verdict);
    verdicts.push(is_group_like(&pi.source, fib_depth, budget)?.verdict);
    Ok(all_of(verdicts))
}

/// Compare pi_0(B_1) with its spine-induced multiplication against the
/// fundamental group of the diagonal.
pub fn loops_comparison(b: &SimplicialSpace, budget: usize) -> Result<LevelVerdict> {
    if b.ext_truncation() < 2 {
        return Err(SegalError::unsupported("loops comparison needs external level 2"));
    }
    let consistent = |note: &str| LevelVerdict {
        n: 1,
        verdict: Verdict::Consistent,
        note: note.to_string(),
    };
    let p1 = pi0(&b.levels[1]);
    let mut table = vec![vec![None; p1.count]; p1.count];
    let class1 = |r: &SimplexRef| p1.class_of[r.gen.idx];
    for v in 0..b.levels[2].gen_count(0) {
        let sigma = SimplexRef::of(Gen { dim: 0, idx: v });
        let a = class1(&b.faces[2][2].apply(&sigma));
        let bb = class1(&b.faces[2][0].apply(&sigma));
        let prod = class1(&b.faces[2][1].apply(&sigma));
        match table[a][bb] {
            None => table[a][bb] = Some(prod),
            Some(p) if p == prod => {}
            Some(_) => return Ok(consistent("strict composition witnesses disagree")),
        }
    }
    let mut mul = Vec::with_capacity(p1.count);
    for row in &table {
        let mut r = Vec::with_capacity(p1.count);
        for entry in row {
            match entry {
                Some(p) => r.push(*p),
                None => return Ok(consistent("some products have no strict witness")),
            }
        }
        mul.push(r);
    }
    let names = (0..p1.count).map(|i| format!("c{i}")).collect();
    let g = match FiniteGroup::from_table(names, mul) {
        Ok(g) => g,
        Err(_) => return Ok(consistent("pi_0 composition table is not a group")),
    };
    let diag = diagonal(b, budget)?;
    let p = pi1_presentation(&diag.sset, None)?;
    let cosets = budget.min(20_000);
    if let Some(order) = todd_coxeter(&p, cosets) {
        if order != g.order() {
            return Ok(LevelVerdict {
                n: 1,
                verdict: Verdict::Refuted,
                note: format!(
                    "pi_1 of the diagonal has certified order {order}, pi_0(B_1) has order {}",
                    g.order()
                ),
            });
        }
    }
    if g.order() <= 24 && certified_iso_to(&p, &g, cosets) {
        Ok(LevelVerdict {
            n: 1,
            verdict: Verdict::Certified,
            note: "pi_1 of the diagonal is certified isomorphic to pi_0(B_1)".to_string(),
        })
    } else {
        Ok(consistent("isomorphism not certified at this order"))
    }
}

/// The nerve of a finite monoid as a simplicial space with discrete levels.
pub fn monoid_nerve(
    names: &[String],
    mul: &[Vec<usize>],
    ext_truncation: usize,
    int_truncation: usize,
) -> Result<SimplicialSpace> {
    let m = names.len();
    if m == 0 || mul.len() != m || mul.iter().any(|r| r.len() != m) {
        return Err(SegalError::validation("multiplication table is not square"));
    }
    for a in 0..m {
        for bb in 0..m {
            for c in 0..m {
                if mul[mul[a][bb]][c] != mul[a][mul[bb][c]] {
                    return Err(SegalError::validation("multiplication is not associative"));
                }
            }
        }
    }
    let e = (0..m)
        .find(|&e| (0..m).all(|x| mul[e][x] == x && mul[x][e] == x))
        .ok_or_else(|| SegalError::validation("monoid has no identity"))?;

    let tuples_of = |n: usize| -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..m).map(move |g| {
                        let mut s = t.clone();
                        s.push(g);
                        s
                    })
                })
                .collect();
        }
        out
    };
    let name_of = |t: &[usize]| -> String {
        if t.is_empty() {
            "*".to_string()
        } else {
            t.iter().map(|&g| names[g].clone()).collect::<Vec<_>>().join(".")
        }
    };
    let level_of = |n: usize| -> SimplicialSet {
        let labels: Vec<String> = tuples_of(n).iter().map(|t| name_of(t)).collect();
        let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        discrete(&refs, int_truncation)
    };
    let levels: Vec<SimplicialSet> = (0..=ext_truncation).map(level_of).collect();

    let index_of = |t: &[usize]| -> usize { t.iter().fold(0, |acc, &g| acc * m + g) };
    let vertex_map = |src: &SimplicialSet,
                      dst: &SimplicialSet,
                      f: &dyn Fn(&[usize]) -> Vec<usize>,
                      n: usize|
     -> Result<SimplicialMap> {
        let images: Vec<SimplexRef> = tuples_of(n)
            .iter()
            .map(|t| SimplexRef::of(Gen { dim: 0, idx: index_of(&f(t)) }))
            .collect();
        let mut all = vec![Vec::new(); int_truncation + 1];
        all[0] = images;
        SimplicialMap::new(src.clone(), dst.clone(), all)
    };

    let mut faces: Vec<Vec<SimplicialMap>> = vec![Vec::new()];
    for n in 1..=ext_truncation {
        let mut row = Vec::new();
        for i in 0..=n {
            let f = move |t: &[usize]| -> Vec<usize> {
                let mut s = t.to_vec();
                if i == 0 {
                    s.remove(0);
                } else if i == n {
                    s.pop();
                } else {
                    let prod = mul[s[i - 1]][s[i]];
                    s[i - 1] = prod;
                    s.remove(i);
                }
                s
            };
            row.push(vertex_map(&levels[n], &levels[n - 1], &f, n)?);
        }
        faces.push(row);
    }
    let mut degens: Vec<Vec<SimplicialMap>> = Vec::new();
    for n in 0..ext_truncation {
        let mut row = Vec::new();
        for i in 0..=n {
            let f = move |t: &[usize]| -> Vec<usize> {
                let mut s = t.to_vec();
                s.insert(i, e);
                s
            };
            row.push(vertex_map(&levels[n], &levels[n + 1], &f, n)?);
        }
        degens.push(row);
    }
    degens.push(Vec::new());
    SimplicialSpace::new(levels, faces, degens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_table() -> (Vec<String>, Vec<Vec<usize>>) {
        (
            vec!["e".to_string(), "g".to_string()],
            vec![vec![0, 1], vec![1, 0]],
        )
    }

    fn max_monoid_table() -> (Vec<String>, Vec<Vec<usize>>) {
        (
            vec!["0".to_string(), "1".to_string()],
            vec![vec![0, 1], vec![1, 1]],
        )
    }

    #[test]
    fn matching_objects_of_the_cyclic_nerve() {
        let (names, mul) = z2_table();
        let b = monoid_nerve(&names, &mul, 3, 4).unwrap();
        let m1 = matching_object(&b, 1, 1 << 20).unwrap();
        assert_eq!(m1.sset.gen_count(0), 1);
        let m2 = matching_object(&b, 2, 1 << 20).unwrap();
        assert_eq!(m2.sset.gen_count(0), 4);
        let m3 = matching_object(&b, 3, 1 << 20).unwrap();
        assert_eq!(m3.sset.gen_count(0), 8);
    }

    #[test]
    fn cyclic_nerve_is_a_certified_segal_group() {
        let (names, mul) = z2_table();
        let b = monoid_nerve(&names, &mul, 3, 4).unwrap();
        let r = is_segal_group(&b, 3, 2, 1 << 20).unwrap();
        assert!(r.verdict.is_certified(), "{:?}", r);
        assert!(r.reedy.iter().all(|l| l.verdict.is_certified()));
        assert!(r.segal_maps.iter().all(|l| l.verdict.is_certified()));
    }

    #[test]
    fn max_monoid_nerve_is_segal_but_not_group_like() {
        let (names, mul) = max_monoid_table();
        let b = monoid_nerve(&names, &mul, 3, 4).unwrap();
        let r = is_segal_space(&b, 3, 2, 1 << 20).unwrap();
        assert!(r.verdict.is_certified(), "{:?}", r);
        let gl = is_group_like(&b, 2, 1 << 20).unwrap();
        assert!(gl.verdict.is_refuted(), "{}", gl.note);
    }

    #[test]
    fn doubled_top_level_refutes_the_segal_condition() {
        let (names, mul) = z2_table();
        let b = monoid_nerve(&names, &mul, 2, 3).unwrap();
        let doubled = b.levels[2].disjoint_union(&b.levels[2]);
        let verts = b.levels[2].gen_count(0);
        let fold = |i: usize| -> SimplicialMap {
            let images: Vec<SimplexRef> = (0..2 * verts)
                .map(|v| b.faces[2][i].apply(&SimplexRef::of(Gen { dim: 0, idx: v % verts })))
                .collect();
            let mut all = vec![Vec::new(); 4];
            all[0] = images;
            SimplicialMap::new(doubled.clone(), b.levels[1].clone(), all).unwrap()
        };
        let include_left = |i: usize| -> SimplicialMap {
            let images: Vec<SimplexRef> = (0..b.levels[1].gen_count(0))
                .map(|v| {
                    let r = b.degens[1][i].apply(&SimplexRef::of(Gen { dim: 0, idx: v }));
                    SimplexRef::of(Gen { dim: 0, idx: r.gen.idx })
                })
                .collect();
            let mut all = vec![Vec::new(); 4];
            all[0] = images;
            SimplicialMap::new(b.levels[1].clone(), doubled.clone(), all).unwrap()
        };
        let space = SimplicialSpace::new(
            vec![b.levels[0].clone(), b.levels[1].clone(), doubled.clone()],
            vec![
                Vec::new(),
                b.faces[1].clone(),
                vec![fold(0), fold(1), fold(2)],
            ],
            vec![
                b.degens[0].clone(),
                vec![include_left(0), include_left(1)],
                Vec::new(),
            ],
        )
        .unwrap();
        let r = is_segal_space(&space, 2, 2, 1 << 20).unwrap();
        assert!(r.verdict.is_refuted(), "{:?}", r);
        assert!(r.segal_maps[1].verdict.is_refuted());
    }

    #[test]
    fn loops_comparison_on_the_cyclic_nerve() {
        let (names, mul) = z2_table();
        let b = monoid_nerve(&names, &mul, 3, 4).unwrap();
        let l = loops_comparison(&b, 1 << 20).unwrap();
        assert!(l.verdict.is_certified(), "{}", l.note);
    }

    #[test]
    fn path_spine_agrees_on_a_constant_space() {
        let s1 = crate::build::circle(2).unwrap();
        let b = constant_space(&s1, 2);
        let c = segal_path_map(&b, 2, 1 << 22).unwrap();
        let w = weak_equivalence_verdict(&c, 1 << 20).unwrap();
        assert!(!w.verdict.is_refuted(), "{}", w.reason);
    }
}
