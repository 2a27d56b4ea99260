//! Finite limits (products, pullbacks, and general equalizer tuples) and
//! quotients of presentations.

use std::collections::HashMap;

use crate::error::{Result, SegalError};
use crate::simplex::{Gen, SimplexRef};
use crate::smap::SimplicialMap;
use crate::sset::SimplicialSet;
use crate::tabulated::{from_tabulated, Tabulated};

/// An equality constraint between two factors of a tuple limit:
/// `left_map(x[left_factor]) = right_map(x[right_factor])`.
#[derive(Clone)]
pub struct Constraint {
    pub left_factor: usize,
    pub left_map: SimplicialMap,
    pub right_factor: usize,
    pub right_map: SimplicialMap,
}

pub type Tuple = Vec<SimplexRef>;

/// The limit of the diagram described by `factors` and `constraints`: all
/// simplex tuples satisfying every constraint, with componentwise structure.
/// No constraints gives the product; one constraint between two factors gives
/// a pullback.
///
/// Enumeration goes factor by factor; a constraint whose other endpoint is
/// already fixed restricts the next factor through a precomputed fiber index,
/// so large products are never materialized unless they survive.
pub fn tuple_limit(
    factors: &[SimplicialSet],
    constraints: &[Constraint],
    budget: usize,
) -> Result<Tabulated<Tuple>> {
    if factors.is_empty() {
        return Err(SegalError::unsupported("tuple limit needs at least one factor"));
    }
    let truncation = factors[0].truncation();
    for f in factors {
        if f.truncation() != truncation {
            return Err(SegalError::validation("limit factors must share a truncation"));
        }
    }
    for c in constraints {
        if c.left_factor >= factors.len() || c.right_factor >= factors.len() {
            return Err(SegalError::validation("constraint references a missing factor"));
        }
        if c.left_map.source != factors[c.left_factor]
            || c.right_map.source != factors[c.right_factor]
        {
            return Err(SegalError::validation("constraint map source mismatch"));
        }
        if c.left_map.target != c.right_map.target {
            return Err(SegalError::validation("constraint maps must share a target"));
        }
    }

    let mut elems: Vec<Vec<Tuple>> = Vec::with_capacity(truncation + 1);
    let mut used = 0usize;
    for m in 0..=truncation {
        let all: Vec<Vec<SimplexRef>> =
            factors.iter().map(|f| f.all_simplices(m)).collect();

        // For every constraint, a fiber index over the later factor: image
        // simplex -> positions with that image under the constraint map.
        enum Bound<'a> {
            // The factor being placed is on the left of the constraint.
            Left(&'a Constraint, HashMap<SimplexRef, Vec<usize>>),
            Right(&'a Constraint, HashMap<SimplexRef, Vec<usize>>),
        }
        let mut binds: Vec<Vec<Bound>> = (0..factors.len()).map(|_| Vec::new()).collect();
        let mut checks: Vec<Vec<&Constraint>> =
            (0..factors.len()).map(|_| Vec::new()).collect();
        for c in constraints {
            // Constraints within a single factor are plain filters.
            if c.left_factor == c.right_factor {
                checks[c.left_factor].push(c);
                continue;
            }
            // The constraint binds the factor placed later; by then the
            // other endpoint is fixed and the fiber index applies.
            let place_at = c.left_factor.max(c.right_factor);
            let placed_is_left = place_at == c.left_factor;
            let map = if placed_is_left { &c.left_map } else { &c.right_map };
            let mut fiber: HashMap<SimplexRef, Vec<usize>> = HashMap::new();
            for (pos, r) in all[place_at].iter().enumerate() {
                fiber.entry(map.apply(r)).or_default().push(pos);
            }
            binds[place_at].push(if placed_is_left {
                Bound::Left(c, fiber)
            } else {
                Bound::Right(c, fiber)
            });
        }

        let mut row: Vec<Tuple> = Vec::new();
        let mut partial: Vec<usize> = Vec::with_capacity(factors.len());
        // Iterative backtracking over factor positions.
        fn extend(
            t: usize,
            factors_len: usize,
            all: &[Vec<SimplexRef>],
            binds: &[Vec<Bound>],
            checks: &[Vec<&Constraint>],
            partial: &mut Vec<usize>,
            row: &mut Vec<Tuple>,
            used: &mut usize,
            budget: usize,
        ) -> Result<()> {
            if t == factors_len {
                *used += 1;
                if *used > budget {
                    return Err(SegalError::Budget { items: *used, budget });
                }
                row.push(partial.iter().zip(all).map(|(&p, a)| a[p].clone()).collect());
                return Ok(());
            }
            // Candidates: restrict by the first binding constraint, verify
            // the rest; fall back to the full factor when unconstrained.
            let candidates: Vec<usize> = match binds[t].first() {
                None => (0..all[t].len()).collect(),
                Some(Bound::Left(c, fiber)) => {
                    let key = c.right_map.apply(&all[c.right_factor][partial[c.right_factor]]);
                    fiber.get(&key).cloned().unwrap_or_default()
                }
                Some(Bound::Right(c, fiber)) => {
                    let key = c.left_map.apply(&all[c.left_factor][partial[c.left_factor]]);
                    fiber.get(&key).cloned().unwrap_or_default()
                }
            };
            'cand: for pos in candidates {
                for b in binds[t].iter().skip(1) {
                    let ok = match b {
                        Bound::Left(c, _) => {
                            c.left_map.apply(&all[t][pos])
                                == c.right_map
                                    .apply(&all[c.right_factor][partial[c.right_factor]])
                        }
                        Bound::Right(c, _) => {
                            c.right_map.apply(&all[t][pos])
                                == c.left_map
                                    .apply(&all[c.left_factor][partial[c.left_factor]])
                        }
                    };
                    if !ok {
                        continue 'cand;
                    }
                }
                for c in &checks[t] {
                    if c.left_map.apply(&all[t][pos]) != c.right_map.apply(&all[t][pos]) {
                        continue 'cand;
                    }
                }
                partial.push(pos);
                extend(t + 1, factors_len, all, binds, checks, partial, row, used, budget)?;
                partial.pop();
            }
            Ok(())
        }
        extend(
            0,
            factors.len(),
            &all,
            &binds,
            &checks,
            &mut partial,
            &mut row,
            &mut used,
            budget,
        )?;
        elems.push(row);
    }

    let f_owned: Vec<SimplicialSet> = factors.to_vec();
    let n_owned = f_owned.clone();
    from_tabulated(
        truncation,
        elems,
        move |i, _m, e: &Tuple| {
            e.iter().zip(&f_owned).map(|(r, x)| x.face(i, r)).collect()
        },
        |i, _m, e: &Tuple| e.iter().map(|r| crate::simplex::degenerate(i, r)).collect(),
        move |_m, e: &Tuple| {
            let parts: Vec<String> =
                e.iter().zip(&n_owned).map(|(r, x)| x.ref_name(r)).collect();
            format!("({})", parts.join("|"))
        },
        budget,
    )
}

/// Binary product.
pub fn product(a: &SimplicialSet, b: &SimplicialSet, budget: usize) -> Result<Tabulated<Tuple>> {
    tuple_limit(&[a.clone(), b.clone()], &[], budget)
}

/// Pullback of `f : X -> Z` and `g : Y -> Z`, as tuples over `[X, Y]`.
pub fn pullback(
    f: &SimplicialMap,
    g: &SimplicialMap,
    budget: usize,
) -> Result<Tabulated<Tuple>> {
    tuple_limit(
        &[f.source.clone(), g.source.clone()],
        &[Constraint {
            left_factor: 0,
            left_map: f.clone(),
            right_factor: 1,
            right_map: g.clone(),
        }],
        budget,
    )
}

/// Projection of a tuple limit onto one factor.
pub fn projection(
    lim: &Tabulated<Tuple>,
    t: usize,
    factor: &SimplicialSet,
) -> SimplicialMap {
    let trunc = lim.sset.truncation();
    let images = (0..=trunc)
        .map(|d| {
            lim.sset
                .gens_of_dim(d)
                .map(|g| lim.of_ref(&SimplexRef::of(g))[t].clone())
                .collect()
        })
        .collect();
    SimplicialMap::new_unchecked(lim.sset.clone(), factor.clone(), images)
        .expect("projection is well formed")
}

/// The map into a tuple limit induced by componentwise maps from a common
/// source. Fails when the components do not satisfy the limit constraints.
pub fn into_limit(
    lim: &Tabulated<Tuple>,
    components: &[SimplicialMap],
) -> Result<SimplicialMap> {
    let src = &components[0].source;
    for f in components {
        if f.source != *src {
            return Err(SegalError::validation("limit components must share a source"));
        }
    }
    let trunc = src.truncation();
    let mut images: Vec<Vec<SimplexRef>> = vec![Vec::new(); trunc + 1];
    for d in 0..=trunc {
        for g in src.gens_of_dim(d) {
            let tuple: Tuple =
                components.iter().map(|f| f.apply(&SimplexRef::of(g))).collect();
            if lim.elem_index(d, &tuple).is_none() {
                return Err(SegalError::validation(format!(
                    "images of generator '{}' do not satisfy the limit constraints",
                    src.gen_name(g)
                )));
            }
            images[d].push(lim.to_ref(d, &tuple));
        }
    }
    SimplicialMap::new(src.clone(), lim.sset.clone(), images)
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Keep the smaller id as representative for deterministic output.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Quotient of `x` by the equivalence generated by the given same-dimension
/// generator pairs. The relation must stay within matching degeneracy words
/// when closed under faces; otherwise the quotient has no presentation of
/// this form and an error is returned.
pub fn quotient(
    x: &SimplicialSet,
    pairs: &[(Gen, Gen)],
) -> Result<(SimplicialSet, SimplicialMap)> {
    let trunc = x.truncation();
    let mut offsets = vec![0usize; trunc + 2];
    for d in 0..=trunc {
        offsets[d + 1] = offsets[d] + x.gen_count(d);
    }
    let id = |g: Gen| offsets[g.dim] + g.idx;
    let mut dsu = Dsu::new(offsets[trunc + 1]);

    let mut queue: Vec<(Gen, Gen)> = pairs.to_vec();
    while let Some((a, b)) = queue.pop() {
        if a.dim != b.dim {
            return Err(SegalError::validation("quotient pair mixes dimensions"));
        }
        if !dsu.union(id(a), id(b)) {
            continue;
        }
        if a.dim == 0 {
            continue;
        }
        for i in 0..=a.dim {
            let fa = x.gen_face(a, i);
            let fb = x.gen_face(b, i);
            if fa.word != fb.word {
                return Err(SegalError::unsupported(format!(
                    "quotient does not preserve degeneracy structure at '{}' ~ '{}'",
                    x.gen_name(a),
                    x.gen_name(b)
                )));
            }
            queue.push((fa.gen, fb.gen));
        }
    }

    // Class representatives, per dimension, in generator order.
    let mut rep_of: Vec<Vec<usize>> = Vec::with_capacity(trunc + 1);
    let mut class_idx: Vec<Vec<Option<usize>>> = Vec::with_capacity(trunc + 1);
    let mut gens: Vec<Vec<String>> = Vec::with_capacity(trunc + 1);
    for d in 0..=trunc {
        let n = x.gen_count(d);
        let mut reps = vec![usize::MAX; n];
        let mut classes: Vec<Option<usize>> = vec![None; n];
        let mut names = Vec::new();
        for idx in 0..n {
            let root = dsu.find(offsets[d] + idx) - offsets[d];
            reps[idx] = root;
            if root == idx {
                classes[idx] = Some(names.len());
                names.push(x.gen_name(Gen { dim: d, idx }).to_string());
            }
        }
        rep_of.push(reps);
        class_idx.push(classes);
        gens.push(names);
    }

    let map_ref = |r: &SimplexRef| -> SimplexRef {
        let root = rep_of[r.gen.dim][r.gen.idx];
        let idx = class_idx[r.gen.dim][root].expect("root has a class index");
        SimplexRef { word: r.word.clone(), gen: Gen { dim: r.gen.dim, idx } }
    };

    let mut faces: Vec<Vec<Vec<SimplexRef>>> = vec![Vec::new(); trunc + 1];
    for d in 1..=trunc {
        for idx in 0..x.gen_count(d) {
            if class_idx[d][idx] != Some(faces[d].len()) {
                continue;
            }
            let g = Gen { dim: d, idx };
            let row: Vec<SimplexRef> =
                (0..=d).map(|i| map_ref(x.gen_face(g, i))).collect();
            faces[d].push(row);
        }
    }
    let q = SimplicialSet::new_unchecked(trunc, gens, faces)?;

    // Every member of a class must induce the same face row; this is the
    // operator-compatibility of the relation.
    for d in 1..=trunc {
        for idx in 0..x.gen_count(d) {
            let g = Gen { dim: d, idx };
            let root = rep_of[d][idx];
            let class = class_idx[d][root].expect("root has a class index");
            for i in 0..=d {
                let via_member = map_ref(x.gen_face(g, i));
                let via_rep = q.gen_face(Gen { dim: d, idx: class }, i);
                if via_member != *via_rep {
                    return Err(SegalError::validation(
                        "quotient relation is not compatible with faces",
                    ));
                }
            }
        }
    }
    q.validate()?;

    let images = (0..=trunc)
        .map(|d| x.gens_of_dim(d).map(|g| map_ref(&SimplexRef::of(g))).collect())
        .collect();
    let proj = SimplicialMap::new_unchecked(x.clone(), q.clone(), images)?;
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{circle, delta, point};

    #[test]
    fn square_of_circles() {
        let s1 = circle(4).unwrap();
        let t2 = product(&s1, &s1, 1 << 20).unwrap();
        t2.sset.validate().unwrap();
        // Nondegenerate simplices of the torus presentation: one vertex,
        // both circle factors plus the diagonal edge, two triangles.
        assert_eq!(t2.sset.gen_counts()[..3], [1, 3, 2]);
        assert_eq!(t2.sset.gen_counts()[3], 0);
        assert_eq!(t2.sset.euler_from_gens(), 0);
    }

    #[test]
    fn square_of_intervals() {
        let d1 = delta(1, 3).unwrap();
        let sq = product(&d1, &d1, 1 << 20).unwrap();
        assert_eq!(sq.sset.gen_counts()[..3], [4, 5, 2]);
    }

    #[test]
    fn product_with_point_is_identity_shaped() {
        let s1 = circle(3).unwrap();
        let pt = point(3);
        let p = product(&s1, &pt, 1 << 20).unwrap();
        let pr = projection(&p, 0, &s1);
        assert!(pr.is_iso());
    }

    #[test]
    fn pullback_of_inclusions_is_intersection() {
        // Two edges of the triangle boundary meet in a vertex.
        let d2 = delta(2, 3).unwrap();
        let e01 = delta(1, 3).unwrap();
        // 01 edge and 12 edge as maps Delta1 -> Delta2.
        let f = crate::smap::delta_map(&crate::simplex::Monotone::new(vec![0, 1], 2), 3).unwrap();
        let g = crate::smap::delta_map(&crate::simplex::Monotone::new(vec![1, 2], 2), 3).unwrap();
        assert_eq!(f.target, d2);
        let pb = pullback(&f, &g, 1 << 20).unwrap();
        // Intersection is the single vertex 1.
        assert_eq!(pb.sset.gen_counts(), vec![1, 0, 0, 0]);
        let _ = e01;
    }

    #[test]
    fn into_limit_checks_constraints() {
        let s1 = circle(3).unwrap();
        let p = product(&s1, &s1, 1 << 20).unwrap();
        let id = SimplicialMap::identity(&s1);
        let diag = into_limit(&p, &[id.clone(), id]).unwrap();
        diag.validate().unwrap();
        let e = s1.ref_by_name("e").unwrap();
        assert_eq!(p.sset.ref_name(&diag.apply(&e)), "(e|e)");
    }

    #[test]
    fn quotient_interval_to_circle() {
        // Collapse both endpoints of the interval.
        let d1 = delta(1, 3).unwrap();
        let a = d1.gen_by_name("0").unwrap();
        let b = d1.gen_by_name("1").unwrap();
        let (q, proj) = quotient(&d1, &[(a, b)]).unwrap();
        assert_eq!(q.gen_counts(), vec![1, 1, 0, 0]);
        let edge = d1.ref_by_name("01").unwrap();
        assert_eq!(q.ref_name(&proj.apply(&edge)), "01");
        proj.validate().unwrap();
    }

    #[test]
    fn budget_is_enforced() {
        let s1 = circle(5).unwrap();
        let err = match product(&s1, &s1, 10) {
            Ok(_) => panic!("expected a budget error"),
            Err(e) => e,
        };
        assert!(matches!(err, SegalError::Budget { .. }));
    }
}
