//! Coskeleta. Above the cutoff, simplices are boundary-compatible tuples of
//! lower ones, so the construction is a recursive tabulation.

use std::collections::HashMap;

use crate::error::{Result, SegalError};
use crate::simplex::SimplexRef;
use crate::smap::SimplicialMap;
use crate::sset::SimplicialSet;
use crate::tabulated::{from_tabulated, Tabulated};

/// A simplex of a coskeleton: a base simplex at or below the cutoff, or the
/// tuple of its faces above it. Faces determine the simplex there, so the
/// representation is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoskElem {
    Base(SimplexRef),
    Node(Vec<CoskElem>),
}

fn cosk_face(x: &SimplicialSet, i: usize, m: usize, e: &CoskElem) -> CoskElem {
    match e {
        CoskElem::Base(r) => CoskElem::Base(x.face(i, r)),
        CoskElem::Node(comps) => {
            debug_assert_eq!(comps.len(), m + 1);
            comps[i].clone()
        }
    }
}

fn cosk_degen(x: &SimplicialSet, n: usize, j: usize, m: usize, e: &CoskElem) -> CoskElem {
    if m + 1 <= n {
        match e {
            CoskElem::Base(r) => return CoskElem::Base(crate::simplex::degenerate(j, r)),
            CoskElem::Node(_) => unreachable!("node below the cutoff"),
        }
    }
    let mut comps = Vec::with_capacity(m + 2);
    for i in 0..=m + 1 {
        if i == j || i == j + 1 {
            comps.push(e.clone());
        } else if i < j {
            comps.push(cosk_degen(x, n, j - 1, m - 1, &cosk_face(x, i, m, e)));
        } else {
            comps.push(cosk_degen(x, n, j, m - 1, &cosk_face(x, i - 1, m, e)));
        }
    }
    CoskElem::Node(comps)
}

/// The n-coskeleton of `x`, at the same truncation.
pub fn cosk(x: &SimplicialSet, n: usize, budget: usize) -> Result<Tabulated<CoskElem>> {
    let trunc = x.truncation();
    let mut elems: Vec<Vec<CoskElem>> = Vec::with_capacity(trunc + 1);
    for m in 0..=trunc {
        if m <= n {
            elems.push(x.all_simplices(m).into_iter().map(CoskElem::Base).collect());
            continue;
        }
        let prev: &[CoskElem] = &elems[m - 1];
        // Faces of the previous level, for the compatibility constraints
        // d_i y_j = d_{j-1} y_i (i < j). Vacuous when faces do not exist.
        let prev_faces: Vec<Vec<CoskElem>> = if m >= 2 {
            prev.iter()
                .map(|e| (0..m).map(|i| cosk_face(x, i, m - 1, e)).collect())
                .collect()
        } else {
            prev.iter().map(|_| Vec::new()).collect()
        };
        let mut by_prefix: Vec<HashMap<&[CoskElem], Vec<usize>>> = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let mut map: HashMap<&[CoskElem], Vec<usize>> = HashMap::new();
            if m >= 2 {
                for (t, row) in prev_faces.iter().enumerate() {
                    map.entry(&row[0..j.min(row.len())]).or_default().push(t);
                }
            }
            by_prefix.push(map);
        }
        let mut tuples: Vec<CoskElem> = Vec::new();
        let mut partial: Vec<usize> = Vec::new();
        fn rec(
            j: usize,
            m: usize,
            prev: &[CoskElem],
            prev_faces: &[Vec<CoskElem>],
            by_prefix: &[HashMap<&[CoskElem], Vec<usize>>],
            partial: &mut Vec<usize>,
            tuples: &mut Vec<CoskElem>,
            budget: usize,
        ) -> Result<()> {
            if j == m + 1 {
                tuples.push(CoskElem::Node(
                    partial.iter().map(|&t| prev[t].clone()).collect(),
                ));
                if tuples.len() > budget {
                    return Err(SegalError::Budget { items: tuples.len(), budget });
                }
                return Ok(());
            }
            if m < 2 || j == 0 {
                for t in 0..prev.len() {
                    partial.push(t);
                    rec(j + 1, m, prev, prev_faces, by_prefix, partial, tuples, budget)?;
                    partial.pop();
                }
                return Ok(());
            }
            let key: Vec<CoskElem> =
                partial.iter().map(|&t| prev_faces[t][j - 1].clone()).collect();
            if let Some(cands) = by_prefix[j].get(key.as_slice()) {
                for &t in cands {
                    partial.push(t);
                    rec(j + 1, m, prev, prev_faces, by_prefix, partial, tuples, budget)?;
                    partial.pop();
                }
            }
            Ok(())
        }
        rec(0, m, prev, &prev_faces, &by_prefix, &mut partial, &mut tuples, budget)?;
        elems.push(tuples);
    }

    let mut name_of: Vec<HashMap<CoskElem, String>> = Vec::with_capacity(trunc + 1);
    for (m, row) in elems.iter().enumerate() {
        let mut map = HashMap::with_capacity(row.len());
        for (i, e) in row.iter().enumerate() {
            let nm = match e {
                CoskElem::Base(r) => x.ref_name(r),
                CoskElem::Node(_) => format!("c{m}x{i}"),
            };
            map.insert(e.clone(), nm);
        }
        name_of.push(map);
    }
    let x1 = x.clone();
    let x2 = x.clone();
    from_tabulated(
        trunc,
        elems,
        move |i, m, e: &CoskElem| cosk_face(&x1, i, m, e),
        move |i, m, e: &CoskElem| cosk_degen(&x2, n, i, m, e),
        move |m, e: &CoskElem| name_of[m][e].clone(),
        budget,
    )
}

/// The unit `x -> cosk_n(x)`.
pub fn cosk_unit(x: &SimplicialSet, n: usize, tab: &Tabulated<CoskElem>) -> SimplicialMap {
    fn elem_of(x: &SimplicialSet, n: usize, m: usize, r: &SimplexRef) -> CoskElem {
        if m <= n {
            CoskElem::Base(r.clone())
        } else {
            CoskElem::Node((0..=m).map(|i| elem_of(x, n, m - 1, &x.face(i, r))).collect())
        }
    }
    let trunc = x.truncation();
    let images = (0..=trunc)
        .map(|m| {
            x.gens_of_dim(m)
                .map(|g| tab.to_ref(m, &elem_of(x, n, m, &SimplexRef::of(g))))
                .collect()
        })
        .collect();
    SimplicialMap::new(x.clone(), tab.sset.clone(), images).expect("unit is simplicial")
}

/// Functoriality: `cosk_n(f)` between tabulated coskeleta.
pub fn cosk_map(
    f: &SimplicialMap,
    src: &Tabulated<CoskElem>,
    dst: &Tabulated<CoskElem>,
) -> SimplicialMap {
    fn push(f: &SimplicialMap, e: &CoskElem) -> CoskElem {
        match e {
            CoskElem::Base(r) => CoskElem::Base(f.apply(r)),
            CoskElem::Node(comps) => CoskElem::Node(comps.iter().map(|c| push(f, c)).collect()),
        }
    }
    let trunc = f.source.truncation();
    let images = (0..=trunc)
        .map(|m| {
            src.sset
                .gens_of_dim(m)
                .map(|g| dst.to_ref(m, &push(f, src.of_ref(&SimplexRef::of(g)))))
                .collect()
        })
        .collect();
    SimplicialMap::new_unchecked(src.sset.clone(), dst.sset.clone(), images)
        .expect("coskeleton images are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{boundary, circle, discrete, point};
    use crate::homs::hom_set;

    #[test]
    fn zero_coskeleton_of_two_points() {
        let x = discrete(&["a", "b"], 4);
        let c = cosk(&x, 0, 1 << 20).unwrap();
        for m in 0..=4 {
            assert_eq!(c.sset.total_count(m), 1 << (m + 1));
        }
        assert_eq!(c.sset.gen_counts(), vec![2, 2, 2, 2, 2]);
        cosk_unit(&x, 0, &c).validate().unwrap();
    }

    #[test]
    fn one_coskeleton_of_circle_is_acyclic() {
        let s1 = circle(3).unwrap();
        let c = cosk(&s1, 1, 1 << 20).unwrap();
        assert_eq!(c.sset.total_count(2), 8);
        let h = crate::homology::homology_range(&c.sset, 2).unwrap();
        assert_eq!(h[0].rank, 1);
        assert_eq!(h[1], crate::homology::HomologySignature::free(0));
        assert_eq!(h[2], crate::homology::HomologySignature::free(0));
        cosk_unit(&s1, 1, &c).validate().unwrap();
    }

    #[test]
    fn high_cutoff_is_identity() {
        let b = boundary(3, 3).unwrap();
        let c = cosk(&b, 3, 1 << 20).unwrap();
        assert_eq!(c.sset.gen_counts(), b.gen_counts());
        assert!(cosk_unit(&b, 3, &c).is_iso());
    }

    #[test]
    fn coskeleton_adjunction_counts() {
        // |hom(x, cosk_n y)| = |hom(tr_n x, tr_n y)|.
        let x = boundary(2, 3).unwrap();
        let y = circle(3).unwrap();
        let c = cosk(&y, 1, 1 << 20).unwrap();
        let lhs = hom_set(&x, &c.sset, 1 << 20).unwrap().len();
        let rhs = hom_set(&x.truncate(1), &y.truncate(1), 1 << 20)
            .unwrap()
            .len();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn coskeleton_functor_on_collapse() {
        let s1 = circle(3).unwrap();
        let pt = point(3);
        let cs = cosk(&s1, 1, 1 << 20).unwrap();
        let cp = cosk(&pt, 1, 1 << 20).unwrap();
        let f = crate::smap::SimplicialMap::to_point(&s1, &pt).unwrap();
        let cf = cosk_map(&f, &cs, &cp);
        cf.validate().unwrap();
        let unit = cosk_unit(&s1, 1, &cs);
        // Naturality square against the unit of the point.
        let up = cosk_unit(&pt, 1, &cp);
        assert_eq!(cf.compose(&unit), up.compose(&f));
    }
}
