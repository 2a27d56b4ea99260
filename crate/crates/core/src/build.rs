//! Stock presentations: simplices, their boundaries and horns, the circle,
//! and discrete sets.

use crate::error::{Result, SegalError};
use crate::simplex::SimplexRef;
use crate::sset::SimplicialSet;

fn subset_name(vertices: &[usize]) -> String {
    vertices.iter().map(|v| v.to_string()).collect()
}

/// Sorted (d+1)-subsets of `{0..=n}` in lexicographic order.
fn subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d + 1);
    fn rec(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            if n + 1 - v < size - cur.len() {
                break;
            }
            cur.push(v);
            rec(n, size, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, d + 1, 0, &mut cur, &mut out);
    out
}

/// The standard n-simplex. Generators of dimension d are the (d+1)-element
/// vertex subsets, named by their vertices, e.g. `02` for the edge 0 -> 2.
pub fn delta(n: usize, truncation: usize) -> Result<SimplicialSet> {
    if n > 9 {
        return Err(SegalError::unsupported(
            "standard simplices are supported up to dimension 9",
        ));
    }
    let mut gens = Vec::with_capacity(truncation + 1);
    let mut faces = Vec::with_capacity(truncation + 1);
    for d in 0..=truncation.min(n) {
        let subs = subsets(n, d);
        gens.push(subs.iter().map(|s| subset_name(s)).collect::<Vec<_>>());
        if d == 0 {
            faces.push(Vec::new());
            continue;
        }
        let mut rows = Vec::with_capacity(subs.len());
        for s in &subs {
            let mut row = Vec::with_capacity(d + 1);
            for i in 0..=d {
                let mut t = s.clone();
                t.remove(i);
                row.push(SimplexRef::of(crate::simplex::Gen {
                    dim: d - 1,
                    idx: position(n, &t),
                }));
            }
            rows.push(row);
        }
        faces.push(rows);
    }
    SimplicialSet::new_unchecked(truncation, gens, faces)
}

/// Lexicographic rank of a sorted subset among equal-sized subsets of
/// `{0..=n}`.
fn position(n: usize, s: &[usize]) -> usize {
    let subs = subsets(n, s.len() - 1);
    subs.iter().position(|t| t == s).expect("subset in range")
}

/// The boundary of the n-simplex: every generator except the top cell.
pub fn boundary(n: usize, truncation: usize) -> Result<SimplicialSet> {
    let d = delta(n, truncation)?;
    let mut keep: Vec<Vec<bool>> =
        (0..=truncation).map(|k| vec![true; d.gen_count(k)]).collect();
    if n <= truncation {
        keep[n][0] = false;
    }
    Ok(d.subcomplex(&keep)?.0)
}

/// The horn obtained from the n-simplex boundary by also removing the face
/// opposite vertex `i`.
pub fn horn(n: usize, i: usize, truncation: usize) -> Result<SimplicialSet> {
    if n == 0 || i > n {
        return Err(SegalError::unsupported(format!("no horn with n={n}, i={i}")));
    }
    let d = delta(n, truncation)?;
    let mut keep: Vec<Vec<bool>> =
        (0..=truncation).map(|k| vec![true; d.gen_count(k)]).collect();
    if n <= truncation {
        keep[n][0] = false;
    }
    if n - 1 <= truncation {
        let mut opposite: Vec<usize> = (0..=n).filter(|&v| v != i).collect();
        opposite.sort_unstable();
        let name = subset_name(&opposite);
        let g = d.gen_by_name(&name).expect("face generator exists");
        keep[n - 1][g.idx] = false;
    }
    Ok(d.subcomplex(&keep)?.0)
}

/// The circle: one vertex `v`, one edge `e` with both faces at `v`.
pub fn circle(truncation: usize) -> Result<SimplicialSet> {
    if truncation == 0 {
        return Err(SegalError::unsupported("the circle needs truncation >= 1"));
    }
    let v = SimplexRef::of(crate::simplex::Gen { dim: 0, idx: 0 });
    SimplicialSet::new_unchecked(
        truncation,
        vec![vec!["v".into()], vec!["e".into()]],
        vec![Vec::new(), vec![vec![v.clone(), v]]],
    )
}

/// The terminal object: a single point.
pub fn point(truncation: usize) -> SimplicialSet {
    discrete(&["*"], truncation)
}

/// A discrete simplicial set on the given vertex names.
pub fn discrete(names: &[&str], truncation: usize) -> SimplicialSet {
    SimplicialSet::new_unchecked(
        truncation,
        vec![names.iter().map(|s| s.to_string()).collect()],
        vec![Vec::new()],
    )
    .expect("discrete presentations are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::binomial;

    #[test]
    fn delta_counts_and_identities() {
        for n in 0..=4 {
            let d = delta(n, 5).unwrap();
            d.validate().unwrap();
            for k in 0..=n {
                assert_eq!(d.gen_count(k), binomial(n + 1, k + 1));
            }
            assert_eq!(d.gen_count(n + 1), 0);
        }
    }

    #[test]
    fn delta_face_names() {
        let d = delta(3, 4).unwrap();
        let top = d.ref_by_name("0123").unwrap();
        let names: Vec<String> =
            d.faces_of(&top).iter().map(|r| d.ref_name(r)).collect();
        assert_eq!(names, vec!["123", "023", "013", "012"]);
    }

    #[test]
    fn boundary_and_horn_counts() {
        let b = boundary(3, 4).unwrap();
        b.validate().unwrap();
        assert_eq!(b.gen_counts(), vec![4, 6, 4, 0, 0]);
        // Euler characteristic of the 2-sphere.
        assert_eq!(b.euler_from_gens(), 2);
        let h = horn(3, 1, 4).unwrap();
        h.validate().unwrap();
        assert_eq!(h.gen_counts(), vec![4, 6, 3, 0, 0]);
        assert!(h.gen_by_name("023").is_none());
        assert!(h.gen_by_name("013").is_some());
    }

    #[test]
    fn horn_rejects_bad_indices() {
        assert!(horn(2, 3, 3).is_err());
        assert!(horn(0, 0, 3).is_err());
    }

    #[test]
    fn disjoint_union_counts() {
        let two = circle(3).unwrap().disjoint_union(&circle(3).unwrap());
        two.validate().unwrap();
        assert_eq!(two.gen_counts(), vec![2, 2, 0, 0]);
    }
}
