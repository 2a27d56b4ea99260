//! Finitely presented simplicial sets, truncated at a fixed dimension.
//!
//! A presentation stores the nondegenerate generators per dimension together
//! with a face table for each generator. Degenerate simplices are never
//! stored; they are handled through normal-form words (see `simplex`).

use std::collections::HashMap;

use crate::error::{Result, SegalError};
use crate::simplex::{degenerate, face_step, FaceStep, Gen, Monotone, SimplexRef};

/// Hard ceiling on truncation; keeps generator names and word enumeration in
/// a regime where every construction stays exact.
pub const MAX_TRUNCATION: usize = 12;

#[derive(Clone, Debug)]
pub struct SimplicialSet {
    truncation: usize,
    gens: Vec<Vec<String>>,
    /// `faces[d][i][k]` is `d_k` of generator `(d, i)`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<SimplexRef>>>,
    name_index: HashMap<String, Gen>,
}

impl PartialEq for SimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        self.truncation == other.truncation
            && self.gens == other.gens
            && self.faces == other.faces
    }
}

impl Eq for SimplicialSet {}

impl SimplicialSet {
    /// Builds and validates a presentation. `faces[d][i]` must list the
    /// `d + 1` faces of each dimension-`d` generator, `d >= 1`.
    pub fn new(
        truncation: usize,
        gens: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<SimplexRef>>>,
    ) -> Result<Self> {
        let s = Self::new_unchecked(truncation, gens, faces)?;
        s.validate()?;
        Ok(s)
    }

    /// Builds a presentation, checking shape and names but deferring the
    /// simplicial identities to `validate`. Constructions that produce face
    /// tables functorially use this and validate in debug builds.
    pub fn new_unchecked(
        truncation: usize,
        mut gens: Vec<Vec<String>>,
        mut faces: Vec<Vec<Vec<SimplexRef>>>,
    ) -> Result<Self> {
        if truncation > MAX_TRUNCATION {
            return Err(SegalError::unsupported(format!(
                "truncation {truncation} exceeds the supported maximum {MAX_TRUNCATION}"
            )));
        }
        gens.resize(truncation + 1, Vec::new());
        faces.resize(truncation + 1, Vec::new());
        let mut name_index = HashMap::new();
        for (d, names) in gens.iter().enumerate() {
            for (i, name) in names.iter().enumerate() {
                if name_index.insert(name.clone(), Gen { dim: d, idx: i }).is_some() {
                    return Err(SegalError::validation(format!(
                        "generator name '{name}' is not unique"
                    )));
                }
            }
        }
        let s = SimplicialSet { truncation, gens, faces, name_index };
        s.check_shape()?;
        Ok(s)
    }

    fn check_shape(&self) -> Result<()> {
        for d in 1..=self.truncation {
            if self.faces[d].len() != self.gens[d].len() {
                return Err(SegalError::validation(format!(
                    "dimension {d}: {} generators but {} face rows",
                    self.gens[d].len(),
                    self.faces[d].len()
                )));
            }
            for (i, row) in self.faces[d].iter().enumerate() {
                if row.len() != d + 1 {
                    return Err(SegalError::validation(format!(
                        "generator '{}' of dimension {d} has {} faces, expected {}",
                        self.gens[d][i],
                        row.len(),
                        d + 1
                    )));
                }
                for (k, r) in row.iter().enumerate() {
                    self.check_ref(r, d - 1).map_err(|e| {
                        SegalError::validation(format!(
                            "face {k} of generator '{}': {e}",
                            self.gens[d][i]
                        ))
                    })?;
                }
            }
        }
        if !self.faces[0].is_empty() {
            return Err(SegalError::validation(
                "dimension 0 generators cannot carry faces",
            ));
        }
        Ok(())
    }

    fn check_ref(&self, r: &SimplexRef, expect_dim: usize) -> Result<()> {
        if r.gen.dim > self.truncation || r.gen.idx >= self.gens[r.gen.dim].len() {
            return Err(SegalError::validation(format!(
                "reference to missing generator (dim {}, idx {})",
                r.gen.dim, r.gen.idx
            )));
        }
        if r.dim() != expect_dim {
            return Err(SegalError::validation(format!(
                "reference has dimension {}, expected {expect_dim}",
                r.dim()
            )));
        }
        if !r.word.windows(2).all(|w| w[0] > w[1]) {
            return Err(SegalError::validation("degeneracy word is not strictly decreasing"));
        }
        if let Some(&top) = r.word.first() {
            if top >= expect_dim {
                return Err(SegalError::validation(format!(
                    "degeneracy letter s{top} is out of range in dimension {expect_dim}"
                )));
            }
        }
        Ok(())
    }

    /// Checks the face-face identities `d_i d_j = d_{j-1} d_i` (i < j) on
    /// every generator. The mixed identities hold automatically because
    /// degeneracies are formal words.
    pub fn validate(&self) -> Result<()> {
        for d in 2..=self.truncation {
            for idx in 0..self.gens[d].len() {
                let g = SimplexRef::of(Gen { dim: d, idx });
                for j in 1..=d {
                    for i in 0..j {
                        let a = self.face(i, &self.face(j, &g));
                        let b = self.face(j - 1, &self.face(i, &g));
                        if a != b {
                            return Err(SegalError::validation(format!(
                                "generator '{}' violates d{i} d{j} = d{} d{i}: {} vs {}",
                                self.gens[d][idx],
                                j - 1,
                                self.ref_name(&a),
                                self.ref_name(&b)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn gen_count(&self, dim: usize) -> usize {
        if dim <= self.truncation {
            self.gens[dim].len()
        } else {
            0
        }
    }

    /// Nondegenerate generator counts per dimension, `0..=truncation`.
    pub fn gen_counts(&self) -> Vec<usize> {
        self.gens.iter().map(|v| v.len()).collect()
    }

    pub fn gen_name(&self, g: Gen) -> &str {
        &self.gens[g.dim][g.idx]
    }

    pub fn gen_by_name(&self, name: &str) -> Option<Gen> {
        self.name_index.get(name).copied()
    }

    pub fn gens_of_dim(&self, dim: usize) -> impl Iterator<Item = Gen> + '_ {
        let n = self.gen_count(dim);
        (0..n).map(move |idx| Gen { dim, idx })
    }

    pub fn gen_face(&self, g: Gen, i: usize) -> &SimplexRef {
        &self.faces[g.dim][g.idx][i]
    }

    /// `d_i` on an arbitrary simplex, resolving degeneracy letters by the
    /// simplicial identities and generators by the face table.
    pub fn face(&self, i: usize, r: &SimplexRef) -> SimplexRef {
        match face_step(i, r) {
            FaceStep::Cancel(rest) => rest,
            FaceStep::Push { s_new, d_new, rest } => degenerate(s_new, &self.face(d_new, &rest)),
            FaceStep::AtGenerator => self.faces[r.gen.dim][r.gen.idx][i].clone(),
        }
    }

    pub fn faces_of(&self, r: &SimplexRef) -> Vec<SimplexRef> {
        if r.dim() == 0 {
            return Vec::new();
        }
        (0..=r.dim()).map(|i| self.face(i, r)).collect()
    }

    /// Applies the simplicial operator attached to a monotone map
    /// `op : [k] -> [dim r]`, faces first (largest index innermost), then the
    /// degeneracy word.
    pub fn eval(&self, r: &SimplexRef, op: &Monotone) -> SimplexRef {
        debug_assert_eq!(op.target, r.dim());
        let (missed, word) = op.factorize();
        let mut cur = r.clone();
        for &a in missed.iter().rev() {
            cur = self.face(a, &cur);
        }
        for &j in word.iter().rev() {
            cur = degenerate(j, &cur);
        }
        cur
    }

    /// Number of simplices of dimension `m`, degenerate ones included.
    pub fn total_count(&self, m: usize) -> usize {
        let mut total = 0usize;
        for d in 0..=m.min(self.truncation) {
            total += self.gens[d].len() * binomial(m, d);
        }
        total
    }

    /// All simplices of dimension `m` in a deterministic order: by generator
    /// dimension, then generator index, then degeneracy word.
    pub fn all_simplices(&self, m: usize) -> Vec<SimplexRef> {
        let mut out = Vec::with_capacity(self.total_count(m));
        for d in 0..=m.min(self.truncation) {
            let words = descending_words(m, m - d);
            for idx in 0..self.gens[d].len() {
                for w in &words {
                    out.push(SimplexRef { word: w.clone(), gen: Gen { dim: d, idx } });
                }
            }
        }
        out
    }

    /// Display form of a simplex: the generator name, prefixed by its
    /// degeneracy word when present, e.g. `s1s0.v`.
    pub fn ref_name(&self, r: &SimplexRef) -> String {
        if r.word.is_empty() {
            self.gen_name(r.gen).to_string()
        } else {
            let mut s = String::new();
            for j in &r.word {
                s.push('s');
                s.push_str(&j.to_string());
            }
            s.push('.');
            s.push_str(self.gen_name(r.gen));
            s
        }
    }

    /// Parses the output of `ref_name`.
    pub fn ref_by_name(&self, text: &str) -> Option<SimplexRef> {
        if let Some(g) = self.gen_by_name(text) {
            return Some(SimplexRef::of(g));
        }
        let (word_part, gen_part) = text.rsplit_once('.')?;
        let g = self.gen_by_name(gen_part)?;
        let mut word = Vec::new();
        for piece in word_part.split('s').filter(|p| !p.is_empty()) {
            word.push(piece.parse().ok()?);
        }
        if !word.windows(2).all(|w| w[0] > w[1]) {
            return None;
        }
        Some(SimplexRef { word, gen: g })
    }

    pub fn is_discrete(&self) -> bool {
        (1..=self.truncation).all(|d| self.gens[d].is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.gens.iter().all(|v| v.is_empty())
    }

    /// Retains generators of dimension `<= n`; faces are unchanged.
    pub fn skeleton(&self, n: usize) -> SimplicialSet {
        let mut gens = self.gens.clone();
        let mut faces = self.faces.clone();
        for d in (n + 1)..=self.truncation {
            gens[d].clear();
            faces[d].clear();
        }
        SimplicialSet::new_unchecked(self.truncation, gens, faces)
            .expect("skeleton of a valid presentation")
    }

    /// Re-truncates the presentation at `n <= truncation`.
    pub fn truncate(&self, n: usize) -> SimplicialSet {
        assert!(n <= self.truncation);
        let gens = self.gens[..=n].to_vec();
        let faces = self.faces[..=n].to_vec();
        SimplicialSet::new_unchecked(n, gens, faces).expect("truncation of a valid presentation")
    }

    /// Sum / alternating data used by the Euler characteristic invariant.
    pub fn euler_from_gens(&self) -> i64 {
        let mut e = 0i64;
        for (d, names) in self.gens.iter().enumerate() {
            let c = names.len() as i64;
            if d % 2 == 0 {
                e += c;
            } else {
                e -= c;
            }
        }
        e
    }

    /// Extracts the full subcomplex on the selected generators, which must be
    /// closed under faces. Returns the subcomplex together with, per
    /// dimension, the new index of each kept generator.
    pub fn subcomplex(&self, keep: &[Vec<bool>]) -> Result<(SimplicialSet, Vec<Vec<Option<usize>>>)> {
        let mut remap: Vec<Vec<Option<usize>>> = Vec::with_capacity(self.truncation + 1);
        let mut gens: Vec<Vec<String>> = Vec::with_capacity(self.truncation + 1);
        for d in 0..=self.truncation {
            let mut row = Vec::with_capacity(self.gens[d].len());
            let mut names = Vec::new();
            for (i, name) in self.gens[d].iter().enumerate() {
                if keep[d][i] {
                    row.push(Some(names.len()));
                    names.push(name.clone());
                } else {
                    row.push(None);
                }
            }
            remap.push(row);
            gens.push(names);
        }
        let mut faces: Vec<Vec<Vec<SimplexRef>>> = vec![Vec::new(); self.truncation + 1];
        for d in 1..=self.truncation {
            for (i, row) in self.faces[d].iter().enumerate() {
                if !keep[d][i] {
                    continue;
                }
                let mut new_row = Vec::with_capacity(row.len());
                for r in row {
                    let idx = remap[r.gen.dim][r.gen.idx].ok_or_else(|| {
                        SegalError::validation(format!(
                            "subcomplex selection is not face-closed at '{}'",
                            self.gens[d][i]
                        ))
                    })?;
                    new_row.push(SimplexRef {
                        word: r.word.clone(),
                        gen: Gen { dim: r.gen.dim, idx },
                    });
                }
                faces[d].push(new_row);
            }
        }
        let sub = SimplicialSet::new_unchecked(self.truncation, gens, faces)?;
        Ok((sub, remap))
    }

    /// Disjoint union. Generator names are tagged to stay unique. Returns the
    /// union together with the generator renamings of both summands.
    pub fn disjoint_union(&self, other: &SimplicialSet) -> SimplicialSet {
        assert_eq!(self.truncation, other.truncation, "summands must share truncation");
        let tag = |side: usize, name: &str| format!("{name}#{side}");
        let mut gens = Vec::with_capacity(self.truncation + 1);
        let mut faces: Vec<Vec<Vec<SimplexRef>>> = Vec::with_capacity(self.truncation + 1);
        for d in 0..=self.truncation {
            let mut names: Vec<String> =
                self.gens[d].iter().map(|n| tag(0, n)).collect();
            names.extend(other.gens[d].iter().map(|n| tag(1, n)));
            gens.push(names);
            if d == 0 {
                faces.push(Vec::new());
                continue;
            }
            let shift = move |offset: &dyn Fn(usize) -> usize, row: &[SimplexRef]| {
                row.iter()
                    .map(|r| SimplexRef {
                        word: r.word.clone(),
                        gen: Gen { dim: r.gen.dim, idx: offset(r.gen.dim) + r.gen.idx },
                    })
                    .collect::<Vec<_>>()
            };
            let zero = |_d: usize| 0usize;
            let mut rows: Vec<Vec<SimplexRef>> =
                self.faces[d].iter().map(|row| shift(&zero, row)).collect();
            let off = |dd: usize| self.gens[dd].len();
            rows.extend(other.faces[d].iter().map(|row| shift(&off, row)));
            faces.push(rows);
        }
        SimplicialSet::new_unchecked(self.truncation, gens, faces)
            .expect("disjoint union of valid presentations")
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = 1usize;
    for i in 0..k {
        num = num * (n - i) / (i + 1);
    }
    num
}

/// Strictly decreasing words of length `k` with entries in `0..m`.
pub fn descending_words(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        let mut j = start;
        loop {
            // Highest entry still allowed so that `need` entries fit below.
            if j + 1 < need {
                break;
            }
            cur.push(j);
            rec(m, k, j.wrapping_sub(1), cur, out);
            cur.pop();
            if j == 0 {
                break;
            }
            j -= 1;
        }
    }
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    if m == 0 {
        return out;
    }
    rec(m, k, m - 1, &mut cur, &mut out);
    out
}
