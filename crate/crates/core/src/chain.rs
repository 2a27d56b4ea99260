//! Normalized chain complexes of presentations and mapping cones.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::simplex::Gen;
use crate::smap::SimplicialMap;
use crate::snf::{zeros, Matrix};
use crate::sset::SimplicialSet;

/// A nonnegatively graded complex of free abelian groups. `boundaries[k]`
/// maps degree `k` to degree `k - 1`; `boundaries[0]` is the zero map out of
/// degree 0 (stored with no columns... rows).
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    /// `boundaries[k]` has `ranks[k - 1]` rows and `ranks[k]` columns; the
    /// entry for `k = 0` has zero rows.
    pub boundaries: Vec<Matrix>,
}

impl ChainComplex {
    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Verifies that consecutive boundaries compose to zero.
    pub fn is_complex(&self) -> bool {
        for k in 1..self.boundaries.len() {
            let prod = crate::snf::mat_mul(&self.boundaries[k - 1], &self.boundaries[k]);
            if prod.iter().flatten().any(|x| !x.is_zero()) {
                return false;
            }
        }
        true
    }
}

/// The normalized chains: one basis element per nondegenerate generator,
/// boundary the alternating face sum with degenerate faces dropped.
pub fn normalized_chains(x: &SimplicialSet) -> ChainComplex {
    let n = x.truncation();
    let ranks: Vec<usize> = (0..=n).map(|d| x.gen_count(d)).collect();
    let mut boundaries = Vec::with_capacity(n + 1);
    boundaries.push(zeros(0, ranks[0]));
    for d in 1..=n {
        let mut m = zeros(ranks[d - 1], ranks[d]);
        for g in x.gens_of_dim(d) {
            for i in 0..=d {
                let f = x.gen_face(g, i);
                if !f.word.is_empty() {
                    continue;
                }
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m[f.gen.idx][g.idx] += BigInt::from(sign);
            }
        }
        boundaries.push(m);
    }
    let c = ChainComplex { ranks, boundaries };
    debug_assert!(c.is_complex());
    c
}

/// The matrix of the induced map on normalized chains in one degree: a
/// generator maps to its image when that image is nondegenerate, else to 0.
pub fn chain_map_degree(f: &SimplicialMap, d: usize) -> Matrix {
    let mut m = zeros(f.target.gen_count(d), f.source.gen_count(d));
    for g in f.source.gens_of_dim(d) {
        let im = f.gen_image(Gen { dim: d, idx: g.idx });
        if im.word.is_empty() {
            m[im.gen.idx][g.idx] += BigInt::from(1);
        }
    }
    m
}

/// The mapping cone of the induced chain map. Degree `k` is
/// `C_{k-1}(source) ⊕ C_k(target)`, with boundary `[[-∂, 0], [f, ∂]]`.
/// Acyclicity of the cone through a range of degrees certifies that `f`
/// induces isomorphisms on homology strictly below that range's top.
pub fn mapping_cone(f: &SimplicialMap) -> ChainComplex {
    let cx = normalized_chains(&f.source);
    let cy = normalized_chains(&f.target);
    let n = f.source.truncation();
    let rank = |r: &Vec<usize>, k: isize| -> usize {
        if k < 0 || k as usize >= r.len() {
            0
        } else {
            r[k as usize]
        }
    };
    let mut ranks = Vec::with_capacity(n + 1);
    for k in 0..=n {
        ranks.push(rank(&cx.ranks, k as isize - 1) + rank(&cy.ranks, k as isize));
    }
    let mut boundaries = Vec::with_capacity(n + 1);
    boundaries.push(zeros(0, ranks[0]));
    for k in 1..=n {
        let rx_lower = rank(&cx.ranks, k as isize - 2);
        let rx = rank(&cx.ranks, k as isize - 1);
        let ry_lower = rank(&cy.ranks, k as isize - 1);
        let ry = rank(&cy.ranks, k as isize);
        let mut m = zeros(rx_lower + ry_lower, rx + ry);
        if k >= 2 {
            let dx = &cx.boundaries[k - 1];
            for i in 0..rx_lower {
                for j in 0..rx {
                    m[i][j] = -dx[i][j].clone();
                }
            }
        }
        let fk = chain_map_degree(f, k - 1);
        for i in 0..ry_lower {
            for j in 0..rx {
                m[rx_lower + i][j] = fk[i][j].clone();
            }
        }
        let dy = &cy.boundaries[k];
        for i in 0..ry_lower {
            for j in 0..ry {
                m[rx_lower + i][rx + j] = dy[i][j].clone();
            }
        }
        boundaries.push(m);
    }
    let c = ChainComplex { ranks, boundaries };
    debug_assert!(c.is_complex());
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{boundary, circle};
    use crate::smap::SimplicialMap;

    #[test]
    fn circle_chains() {
        let c = normalized_chains(&circle(4).unwrap());
        assert_eq!(c.ranks, vec![1, 1, 0, 0, 0]);
        assert!(c.is_complex());
        assert!(c.boundaries[1][0][0].is_zero());
    }

    #[test]
    fn sphere_chains_square_to_zero() {
        let c = normalized_chains(&boundary(3, 4).unwrap());
        assert_eq!(c.ranks, vec![4, 6, 4, 0, 0]);
        assert!(c.is_complex());
    }

    #[test]
    fn cone_of_identity_is_acyclic_complex() {
        let s1 = circle(4).unwrap();
        let cone = mapping_cone(&SimplicialMap::identity(&s1));
        assert!(cone.is_complex());
        assert_eq!(cone.ranks, vec![1, 2, 1, 0, 0]);
    }
}
