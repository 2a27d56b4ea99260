//! Simplices in Eilenberg-Zilber normal form.
//!
//! Every simplex of a presented simplicial set is written uniquely as a
//! strictly decreasing degeneracy word applied to a nondegenerate generator.
//! The word `[j1, j2, ..., jk]` with `j1 > j2 > ... > jk` denotes the
//! operator `s_{j1} . s_{j2} ... s_{jk}` applied left to right, so the
//! rightmost letter acts on the generator first.

use serde::{Deserialize, Serialize};

/// A nondegenerate generator, addressed by dimension and index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gen {
    pub dim: usize,
    pub idx: usize,
}

/// A simplex in normal form: a strictly decreasing degeneracy word over a
/// generator. The dimension is `gen.dim + word.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexRef {
    pub word: Vec<usize>,
    pub gen: Gen,
}

impl SimplexRef {
    pub fn of(gen: Gen) -> Self {
        SimplexRef { word: Vec::new(), gen }
    }

    pub fn dim(&self) -> usize {
        self.gen.dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// Whether this simplex lies in the image of `s_i`. By the normal-form
    /// lemma that holds exactly when `i` occurs in the degeneracy word.
    pub fn in_image_of(&self, i: usize) -> bool {
        self.word.contains(&i)
    }
}

/// Normal form of `s_i` applied to a strictly decreasing word, using
/// `s_i s_j = s_{j+1} s_i` for `i <= j`.
pub fn insert_degeneracy(i: usize, word: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(word.len() + 1);
    let cur = i;
    let mut placed = false;
    for &j in word {
        if placed {
            out.push(j);
        } else if cur <= j {
            out.push(j + 1);
        } else {
            out.push(cur);
            out.push(j);
            placed = true;
        }
    }
    if !placed {
        out.push(cur);
    }
    debug_assert!(out.windows(2).all(|w| w[0] > w[1]));
    out
}

/// `s_i` applied to a simplex in normal form.
pub fn degenerate(i: usize, r: &SimplexRef) -> SimplexRef {
    SimplexRef { word: insert_degeneracy(i, &r.word), gen: r.gen }
}

/// Outcome of pushing `d_i` through the leading degeneracy letter.
pub enum FaceStep {
    /// `d_i s_j` cancelled to the identity; the remaining word is returned.
    Cancel(SimplexRef),
    /// `d_i s_j = s_new d_new`: a degeneracy to re-apply afterwards, the face
    /// index to keep pushing, and the rest of the simplex.
    Push { s_new: usize, d_new: usize, rest: SimplexRef },
    /// The word is empty: the face must be resolved by the generator's table.
    AtGenerator,
}

/// One rewriting step for `d_i` against the word of `r`, using the simplicial
/// identities `d_i s_j = s_{j-1} d_i` (i < j), `= id` (i = j or i = j+1),
/// `= s_j d_{i-1}` (i > j+1).
pub fn face_step(i: usize, r: &SimplexRef) -> FaceStep {
    match r.word.split_first() {
        None => FaceStep::AtGenerator,
        Some((&j, rest)) => {
            let rest = SimplexRef { word: rest.to_vec(), gen: r.gen };
            if i == j || i == j + 1 {
                FaceStep::Cancel(rest)
            } else if i < j {
                FaceStep::Push { s_new: j - 1, d_new: i, rest }
            } else {
                FaceStep::Push { s_new: j, d_new: i - 1, rest }
            }
        }
    }
}

/// A weakly monotone map `[k] -> [n]` in the simplex category, stored as the
/// value list. These drive reindexing along arbitrary simplicial operators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monotone {
    pub values: Vec<usize>,
    pub target: usize,
}

impl Monotone {
    pub fn new(values: Vec<usize>, target: usize) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(values.iter().all(|&v| v <= target));
        Monotone { values, target }
    }

    pub fn identity(n: usize) -> Self {
        Monotone { values: (0..=n).collect(), target: n }
    }

    /// Coface `delta_i : [n-1] -> [n]`, skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        let values = (0..n).map(|v| if v < i { v } else { v + 1 }).collect();
        Monotone { values, target: n }
    }

    /// Codegeneracy `sigma_i : [n+1] -> [n]`, repeating `i`.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        let values = (0..=n + 1).map(|v| if v <= i { v } else { v - 1 }).collect();
        Monotone { values, target: n }
    }

    pub fn source_dim(&self) -> usize {
        self.values.len() - 1
    }

    /// Composite `self . other` (apply `other` first).
    pub fn compose(&self, other: &Monotone) -> Monotone {
        debug_assert_eq!(other.target, self.source_dim());
        Monotone {
            values: other.values.iter().map(|&v| self.values[v]).collect(),
            target: self.target,
        }
    }

    /// Epi-mono factorization: returns the face indices of the mono part in
    /// increasing order (the values missed) and the degeneracy word of the
    /// epi part, strictly decreasing. The word entries are exactly the
    /// positions `p` with `values[p] == values[p+1]`.
    pub fn factorize(&self) -> (Vec<usize>, Vec<usize>) {
        let missed: Vec<usize> =
            (0..=self.target).filter(|v| !self.values.contains(v)).collect();
        let mut word: Vec<usize> = self
            .values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == w[1])
            .map(|(p, _)| p)
            .collect();
        word.reverse();
        (missed, word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(dim: usize) -> Gen {
        Gen { dim, idx: 0 }
    }

    #[test]
    fn degeneracy_insertion_normalizes() {
        // s0 s0 = s1 s0
        let r = SimplexRef { word: vec![0], gen: g(0) };
        assert_eq!(degenerate(0, &r).word, vec![1, 0]);
        // s2 s2 s0 = s3 s2 s0
        let r = SimplexRef { word: vec![2, 0], gen: g(1) };
        assert_eq!(degenerate(2, &r).word, vec![3, 2, 0]);
        // s0 . s2 s0 = s3 s0 . s0 -> word [3,1,0]
        assert_eq!(degenerate(0, &r).word, vec![3, 1, 0]);
    }

    #[test]
    fn face_cancellation() {
        let r = SimplexRef { word: vec![0], gen: g(1) };
        match face_step(1, &r) {
            FaceStep::Cancel(rest) => assert!(rest.word.is_empty()),
            _ => panic!("d1 s0 should cancel"),
        }
        match face_step(3, &SimplexRef { word: vec![1], gen: g(2) }) {
            FaceStep::Push { s_new, d_new, .. } => {
                assert_eq!((s_new, d_new), (1, 2)); // d3 s1 = s1 d2
            }
            _ => panic!("d3 s1 should push"),
        }
    }

    #[test]
    fn monotone_factorization_roundtrip() {
        for m in [
            Monotone::new(vec![0, 2, 2, 3], 4),
            Monotone::new(vec![0, 0, 1, 1], 1),
            Monotone::new(vec![0, 0, 0], 0),
            Monotone::new(vec![1, 3], 4),
        ] {
            let (faces, word) = m.factorize();
            assert!(word.windows(2).all(|w| w[0] > w[1]));
            // Rebuild: the epi collapses the word positions, the mono inserts
            // the missed values.
            let epi = |v: usize| v - word.iter().filter(|&&p| p < v).count();
            let rebuilt: Vec<usize> = m
                .values
                .iter()
                .enumerate()
                .map(|(v, _)| {
                    let mut t = epi(v);
                    for &miss in &faces {
                        if t >= miss {
                            t += 1;
                        }
                    }
                    t
                })
                .collect();
            assert_eq!(rebuilt, m.values);
        }
    }
}
