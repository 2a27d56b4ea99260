//! Building a presentation from a full table of simplices.
//!
//! Several constructions (bar complexes, classifying spaces, diagonals,
//! function complexes) are easiest to describe by listing every simplex in
//! each dimension together with face and degeneracy functions. This module
//! turns such a table into a generator/face presentation: it checks all five
//! simplicial identity families on the table, finds the nondegenerate
//! elements, and computes the normal form of every element.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Result, SegalError};
use crate::simplex::{degenerate, Gen, SimplexRef};
use crate::sset::SimplicialSet;

pub struct Tabulated<E> {
    pub sset: SimplicialSet,
    /// Every simplex per dimension, in the caller's order.
    pub elems: Vec<Vec<E>>,
    index: Vec<HashMap<E, usize>>,
    refs: Vec<Vec<SimplexRef>>,
    of_ref: Vec<HashMap<SimplexRef, usize>>,
}

impl<E: Clone + Eq + Hash> Tabulated<E> {
    pub fn elem_index(&self, m: usize, e: &E) -> Option<usize> {
        self.index[m].get(e).copied()
    }

    /// Normal form of a table element.
    pub fn to_ref(&self, m: usize, e: &E) -> SimplexRef {
        self.refs[m][self.index[m][e]].clone()
    }

    /// Table element carried by a simplex of the presentation.
    pub fn of_ref(&self, r: &SimplexRef) -> &E {
        let m = r.dim();
        &self.elems[m][self.of_ref[m][r]]
    }
}

/// Builds a presentation from a table. `elems[m]` lists all m-simplices;
/// `face(i, m, e)` and `degen(i, m, e)` evaluate `d_i` and `s_i` on an
/// m-simplex; `name(d, e)` names nondegenerate elements and must be
/// injective. The total element count is checked against `budget`.
pub fn from_tabulated<E, Fd, Fs, Nm>(
    truncation: usize,
    elems: Vec<Vec<E>>,
    face: Fd,
    degen: Fs,
    name: Nm,
    budget: usize,
) -> Result<Tabulated<E>>
where
    E: Clone + Eq + Hash,
    Fd: Fn(usize, usize, &E) -> E,
    Fs: Fn(usize, usize, &E) -> E,
    Nm: Fn(usize, &E) -> String,
{
    let mut elems = elems;
    elems.resize(truncation + 1, Vec::new());
    let total: usize = elems.iter().map(|v| v.len()).sum();
    if total > budget {
        return Err(SegalError::Budget { items: total, budget });
    }

    let mut index: Vec<HashMap<E, usize>> = Vec::with_capacity(truncation + 1);
    for row in &elems {
        let mut m = HashMap::with_capacity(row.len());
        for (i, e) in row.iter().enumerate() {
            if m.insert(e.clone(), i).is_some() {
                return Err(SegalError::validation("duplicate element in simplex table"));
            }
        }
        index.push(m);
    }

    let lookup = |m: usize, e: &E, ctx: &str| -> Result<usize> {
        index[m].get(e).copied().ok_or_else(|| {
            SegalError::validation(format!("{ctx} leaves the simplex table in dimension {m}"))
        })
    };

    // Identity families. Faces of faces:
    for m in 2..=truncation {
        for e in &elems[m] {
            for j in 1..=m {
                let dj = face(j, m, e);
                lookup(m - 1, &dj, "face")?;
                for i in 0..j {
                    let a = face(i, m - 1, &dj);
                    let b = face(j - 1, m - 1, &face(i, m, e));
                    if a != b {
                        return Err(SegalError::validation(format!(
                            "table violates d{i} d{j} = d{} d{i} in dimension {m}",
                            j - 1
                        )));
                    }
                }
            }
        }
    }
    // Mixed and degeneracy-degeneracy identities:
    for m in 0..truncation {
        for e in &elems[m] {
            for j in 0..=m {
                let sj = degen(j, m, e);
                lookup(m + 1, &sj, "degeneracy")?;
                for i in 0..=m + 1 {
                    let got = face(i, m + 1, &sj);
                    let want = if i == j || i == j + 1 {
                        e.clone()
                    } else if i < j {
                        degen(j - 1, m - 1, &face(i, m, e))
                    } else {
                        degen(j, m - 1, &face(i - 1, m, e))
                    };
                    if got != want {
                        return Err(SegalError::validation(format!(
                            "table violates d{i} s{j} in dimension {m}"
                        )));
                    }
                }
                if m + 2 <= truncation {
                    for i in 0..=j {
                        let a = degen(i, m + 1, &sj);
                        let b = degen(j + 1, m + 1, &degen(i, m, e));
                        if a != b {
                            return Err(SegalError::validation(format!(
                                "table violates s{i} s{j} = s{} s{i} in dimension {m}",
                                j + 1
                            )));
                        }
                    }
                }
            }
        }
    }

    // Nondegenerate elements become generators, keeping table order.
    let mut gens: Vec<Vec<String>> = Vec::with_capacity(truncation + 1);
    let mut gen_of_elem: Vec<Vec<Option<usize>>> = Vec::with_capacity(truncation + 1);
    for m in 0..=truncation {
        let mut names = Vec::new();
        let mut slots = Vec::with_capacity(elems[m].len());
        for e in &elems[m] {
            let degenerate_elem = (0..m).any(|i| {
                let d = face(i, m, e);
                degen(i, m - 1, &d) == *e
            });
            if degenerate_elem {
                slots.push(None);
            } else {
                slots.push(Some(names.len()));
                names.push(name(m, e));
            }
        }
        gens.push(names);
        gen_of_elem.push(slots);
    }

    // Normal forms, bottom-up by dimension.
    let mut refs: Vec<Vec<SimplexRef>> = Vec::with_capacity(truncation + 1);
    for m in 0..=truncation {
        let mut row = Vec::with_capacity(elems[m].len());
        for (pos, e) in elems[m].iter().enumerate() {
            let r = match gen_of_elem[m][pos] {
                Some(idx) => SimplexRef::of(Gen { dim: m, idx }),
                None => {
                    let i = (0..m)
                        .find(|&i| {
                            let d = face(i, m, e);
                            degen(i, m - 1, &d) == *e
                        })
                        .expect("degenerate element splits");
                    let below = face(i, m, e);
                    let j = lookup(m - 1, &below, "face")?;
                    let prev: &Vec<SimplexRef> = &refs[m - 1];
                    degenerate(i, &prev[j])
                }
            };
            row.push(r);
        }
        refs.push(row);
    }

    // Face table on generators.
    let mut faces: Vec<Vec<Vec<SimplexRef>>> = vec![Vec::new(); truncation + 1];
    for m in 1..=truncation {
        for (pos, e) in elems[m].iter().enumerate() {
            if gen_of_elem[m][pos].is_none() {
                continue;
            }
            let mut row = Vec::with_capacity(m + 1);
            for i in 0..=m {
                let d = face(i, m, e);
                let j = lookup(m - 1, &d, "face")?;
                row.push(refs[m - 1][j].clone());
            }
            faces[m].push(row);
        }
    }

    let sset = SimplicialSet::new_unchecked(truncation, gens, faces)?;
    debug_assert!(sset.validate().is_ok());

    let mut of_ref: Vec<HashMap<SimplexRef, usize>> = Vec::with_capacity(truncation + 1);
    for (m, row) in refs.iter().enumerate() {
        let mut map = HashMap::with_capacity(row.len());
        for (i, r) in row.iter().enumerate() {
            if map.insert(r.clone(), i).is_some() {
                return Err(SegalError::validation(format!(
                    "two table elements share a normal form in dimension {m}"
                )));
            }
        }
        of_ref.push(map);
    }

    Ok(Tabulated { sset, elems, index, refs, of_ref })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Total simplices of the circle: dimension m holds m+1 elements, where
    /// element k has the edge at positions >= k collapsed... concretely we
    /// tabulate the nerve of the monoid {0,1} under max, which is the
    /// 0-coskeletal set on two vertices. Simplices of dimension m are maps
    /// [m] -> {0,1}, i.e. monotone is not required; faces delete entries.
    fn two_point_cosk0(truncation: usize) -> Tabulated<Vec<u8>> {
        let mut elems: Vec<Vec<Vec<u8>>> = Vec::new();
        for m in 0..=truncation {
            let mut row = Vec::new();
            for code in 0..(1u32 << (m + 1)) {
                row.push((0..=m).map(|i| ((code >> i) & 1) as u8).collect());
            }
            elems.push(row);
        }
        from_tabulated(
            truncation,
            elems,
            |i, _m, e: &Vec<u8>| {
                let mut f = e.clone();
                f.remove(i);
                f
            },
            |i, _m, e: &Vec<u8>| {
                let mut s = e.clone();
                s.insert(i, e[i]);
                s
            },
            |_m, e| e.iter().map(|b| b.to_string()).collect::<String>(),
            usize::MAX,
        )
        .unwrap()
    }

    #[test]
    fn coskeletal_two_points() {
        let t = two_point_cosk0(4);
        // 2^(m+1) total simplices in dimension m.
        for m in 0..=4 {
            assert_eq!(t.sset.total_count(m), 1 << (m + 1));
        }
        // Nondegenerate m-simplices are the alternating sequences: 2 each.
        assert_eq!(t.sset.gen_counts(), vec![2, 2, 2, 2, 2]);
        t.sset.validate().unwrap();
    }

    #[test]
    fn normal_forms_match_table() {
        let t = two_point_cosk0(3);
        for m in 0..=3 {
            for e in &t.elems[m] {
                let r = t.to_ref(m, e);
                assert_eq!(t.of_ref(&r), e);
            }
        }
        // The constant sequence 111 is v1 doubly degenerate.
        let r = t.to_ref(2, &vec![1, 1, 1]);
        assert_eq!(t.sset.ref_name(&r), "s1s0.1");
    }

    #[test]
    fn degeneracies_agree_with_presentation() {
        let t = two_point_cosk0(3);
        // s0 of 01 is 001; compare table route with word route.
        let e = vec![0u8, 1u8];
        let r = t.to_ref(1, &e);
        let via_word = degenerate(0, &r);
        assert_eq!(via_word, t.to_ref(2, &vec![0, 0, 1]));
    }
}
