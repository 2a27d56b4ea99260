//! Finite groups, levelwise finite simplicial groups, and the classifying
//! constructions W and W-bar.

use crate::error::{Result, SegalError};
use crate::smap::SimplicialMap;
use crate::tabulated::{from_tabulated, Tabulated};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub names: Vec<String>,
    /// `mul[a][b]` is the product `a * b`.
    pub mul: Vec<Vec<usize>>,
    pub e: usize,
    pub inv: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(SegalError::validation("a group needs at least one element"));
        }
        if mul.len() != n || mul.iter().any(|r| r.len() != n) {
            return Err(SegalError::validation("multiplication table is not square"));
        }
        for r in &mul {
            for &x in r {
                if x >= n {
                    return Err(SegalError::validation("table entry out of range"));
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for name in &names {
            if !seen.insert(name) {
                return Err(SegalError::validation(format!("element name '{name}' repeats")));
            }
        }
        let e = (0..n)
            .find(|&c| (0..n).all(|a| mul[c][a] == a && mul[a][c] == a))
            .ok_or_else(|| SegalError::validation("table has no identity element"))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(SegalError::validation(format!(
                            "table is not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a][b] == e && mul[b][a] == e).ok_or_else(|| {
                SegalError::validation(format!("element '{}' has no inverse", names[a]))
            })?;
        }
        Ok(FiniteGroup { names, mul, e, inv })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n).map(|k| format!("c{k}")).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(names, mul).expect("cyclic tables are groups")
    }

    /// Symmetric group on `{0..n-1}`, elements named by one-line notation.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=5).contains(&n), "symmetric groups supported up to degree 5");
        let mut perms: Vec<Vec<usize>> = vec![vec![]];
        for k in 0..n {
            let mut next = Vec::new();
            for p in &perms {
                for slot in 0..=k {
                    let mut q = p.clone();
                    q.insert(slot, k);
                    next.push(q);
                }
            }
            perms = next;
        }
        perms.sort();
        let index: std::collections::HashMap<Vec<usize>, usize> =
            perms.iter().cloned().zip(0..).collect();
        let names = perms
            .iter()
            .map(|p| format!("p{}", p.iter().map(|v| v.to_string()).collect::<String>()))
            .collect();
        let mul = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    // (a * b)(x) = a(b(x)): apply b first.
                    .map(|b| index[&b.iter().map(|&x| a[x]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(names, mul).expect("permutation tables are groups")
    }
}

/// A simplicial group, levelwise finite, truncated. Faces and degeneracies
/// are group homomorphisms stored elementwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialGroup {
    pub truncation: usize,
    pub levels: Vec<FiniteGroup>,
    /// `face[m][i][x]` is `d_i(x)` for `x` in level `m`, `1 <= m`.
    pub face: Vec<Vec<Vec<usize>>>,
    /// `degen[m][i][x]` is `s_i(x)` for `x` in level `m`, `m < truncation`.
    pub degen: Vec<Vec<Vec<usize>>>,
}

impl SimplicialGroup {
    pub fn constant(g: &FiniteGroup, truncation: usize) -> Self {
        let id: Vec<usize> = (0..g.order()).collect();
        let levels = vec![g.clone(); truncation + 1];
        let face = (0..=truncation)
            .map(|m| if m == 0 { Vec::new() } else { vec![id.clone(); m + 1] })
            .collect();
        let degen = (0..=truncation)
            .map(|m| if m < truncation { vec![id.clone(); m + 1] } else { Vec::new() })
            .collect();
        SimplicialGroup { truncation, levels, face, degen }
    }

    pub fn new(
        truncation: usize,
        levels: Vec<FiniteGroup>,
        face: Vec<Vec<Vec<usize>>>,
        degen: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let sg = SimplicialGroup { truncation, levels, face, degen };
        sg.validate()?;
        Ok(sg)
    }

    pub fn d(&self, m: usize, i: usize, x: usize) -> usize {
        self.face[m][i][x]
    }

    pub fn s(&self, m: usize, i: usize, x: usize) -> usize {
        self.degen[m][i][x]
    }

    fn check_hom(&self, m: usize, target: usize, map: &[usize], what: &str) -> Result<()> {
        let src = &self.levels[m];
        let dst = &self.levels[target];
        if map.len() != src.order() {
            return Err(SegalError::validation(format!("{what} has the wrong size")));
        }
        if map.iter().any(|&y| y >= dst.order()) {
            return Err(SegalError::validation(format!("{what} lands out of range")));
        }
        for a in 0..src.order() {
            for b in 0..src.order() {
                if map[src.mul[a][b]] != dst.mul[map[a]][map[b]] {
                    return Err(SegalError::validation(format!(
                        "{what} is not a homomorphism"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.truncation;
        if self.levels.len() != n + 1 || self.face.len() != n + 1 || self.degen.len() != n + 1 {
            return Err(SegalError::validation("level data has the wrong length"));
        }
        for m in 0..=n {
            let want_faces = if m == 0 { 0 } else { m + 1 };
            let want_degens = if m < n { m + 1 } else { 0 };
            if self.face[m].len() != want_faces || self.degen[m].len() != want_degens {
                return Err(SegalError::validation(format!(
                    "level {m} has the wrong number of operators"
                )));
            }
            for (i, f) in self.face[m].iter().enumerate() {
                self.check_hom(m, m - 1, f, &format!("d{i} on level {m}"))?;
            }
            for (i, s) in self.degen[m].iter().enumerate() {
                self.check_hom(m, m + 1, s, &format!("s{i} on level {m}"))?;
            }
        }
        // Simplicial identities, elementwise.
        for m in 2..=n {
            for x in 0..self.levels[m].order() {
                for j in 1..=m {
                    for i in 0..j {
                        if self.d(m - 1, i, self.d(m, j, x))
                            != self.d(m - 1, j - 1, self.d(m, i, x))
                        {
                            return Err(SegalError::validation(format!(
                                "group faces violate d{i} d{j} at level {m}"
                            )));
                        }
                    }
                }
            }
        }
        for m in 0..n {
            for x in 0..self.levels[m].order() {
                for j in 0..=m {
                    let sx = self.s(m, j, x);
                    for i in 0..=m + 1 {
                        let got = self.d(m + 1, i, sx);
                        let want = if i == j || i == j + 1 {
                            x
                        } else if i < j {
                            self.s(m - 1, j - 1, self.d(m, i, x))
                        } else {
                            self.s(m - 1, j, self.d(m, i - 1, x))
                        };
                        if got != want {
                            return Err(SegalError::validation(format!(
                                "group operators violate d{i} s{j} at level {m}"
                            )));
                        }
                    }
                    if m + 2 <= n {
                        for i in 0..=j {
                            if self.s(m + 1, i, sx) != self.s(m + 1, j + 1, self.s(m, i, x)) {
                                return Err(SegalError::validation(format!(
                                    "group operators violate s{i} s{j} at level {m}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_constant(&self) -> bool {
        let g0 = &self.levels[0];
        self.levels.iter().all(|g| g == g0)
            && self.face.iter().flatten().all(|f| f.iter().enumerate().all(|(x, &y)| x == y))
            && self.degen.iter().flatten().all(|s| s.iter().enumerate().all(|(x, &y)| x == y))
    }
}

fn bracket_name(sg: &SimplicialGroup, m: usize, tail: &[usize]) -> String {
    // tail = (g_{m-1}, ..., g_0), coordinate k in level m-1-k.
    let parts: Vec<&str> = tail
        .iter()
        .enumerate()
        .map(|(k, &x)| sg.levels[m - 1 - k].names[x].as_str())
        .collect();
    format!("[{}]", parts.join("|"))
}

/// The classifying space: `wbar(G)_m = G_{m-1} x ... x G_0`. For a constant
/// group this is the nerve.
pub fn wbar(sg: &SimplicialGroup, budget: usize) -> Result<Tabulated<Vec<usize>>> {
    let n = sg.truncation;
    let mut elems: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut row: Vec<Vec<usize>> = vec![Vec::new()];
        for k in (0..m).rev() {
            // Extend on the right by elements of level k.
            let mut next = Vec::with_capacity(row.len() * sg.levels[k].order());
            for t in &row {
                for x in 0..sg.levels[k].order() {
                    let mut u = t.clone();
                    u.push(x);
                    next.push(u);
                }
            }
            row = next;
        }
        elems.push(row);
    }
    let sg1 = sg.clone();
    let sg2 = sg.clone();
    let sg3 = sg.clone();
    from_tabulated(
        n,
        elems,
        move |i, m, t: &Vec<usize>| wbar_face(&sg1, i, m, t),
        move |i, m, t: &Vec<usize>| wbar_degen(&sg2, i, m, t),
        move |m, t: &Vec<usize>| bracket_name(&sg3, m, t),
        budget,
    )
}

/// Face of a wbar simplex; `t` has length `m`, coordinate `k` in level
/// `m-1-k`.
fn wbar_face(sg: &SimplicialGroup, i: usize, m: usize, t: &[usize]) -> Vec<usize> {
    debug_assert!(m >= 1 && t.len() == m);
    if i == 0 {
        return t[1..].to_vec();
    }
    let mut out = Vec::with_capacity(m - 1);
    // Coordinates k < i - 1 shift down: d_{i-1-k} applied at level m-1-k.
    for (k, &x) in t.iter().enumerate().take(i.saturating_sub(1)) {
        out.push(sg.d(m - 1 - k, i - 1 - k, x));
    }
    if i < m {
        // Merge coordinates i-1 and i: d_0(g_{m-i}) * g_{m-i-1} in level m-1-i.
        let level = m - 1 - i;
        let a = sg.d(level + 1, 0, t[i - 1]);
        out.push(sg.levels[level].mul[a][t[i]]);
        out.extend_from_slice(&t[i + 1..]);
    }
    // i == m drops the last coordinate after the shifts.
    out
}

fn wbar_degen(sg: &SimplicialGroup, i: usize, m: usize, t: &[usize]) -> Vec<usize> {
    debug_assert!(t.len() == m);
    let mut out = Vec::with_capacity(m + 1);
    for (k, &x) in t.iter().enumerate().take(i) {
        out.push(sg.s(m - 1 - k, i - 1 - k, x));
    }
    out.push(sg.levels[m - i].e);
    out.extend_from_slice(&t[i..]);
    out
}

/// The total space: `w(G)_m = G_m x ... x G_0`, with the twist in `d_0` and
/// the free left action on the leading coordinate.
pub fn w_total(sg: &SimplicialGroup, budget: usize) -> Result<Tabulated<Vec<usize>>> {
    let n = sg.truncation;
    let mut elems: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut row: Vec<Vec<usize>> = vec![Vec::new()];
        for k in (0..=m).rev() {
            let mut next = Vec::with_capacity(row.len() * sg.levels[k].order());
            for t in &row {
                for x in 0..sg.levels[k].order() {
                    let mut u = t.clone();
                    u.push(x);
                    next.push(u);
                }
            }
            row = next;
        }
        elems.push(row);
    }
    let sg1 = sg.clone();
    let sg2 = sg.clone();
    let sg3 = sg.clone();
    from_tabulated(
        n,
        elems,
        move |i, m, t: &Vec<usize>| w_face(&sg1, i, m, t),
        move |i, m, t: &Vec<usize>| w_degen(&sg2, i, m, t),
        move |m, t: &Vec<usize>| {
            format!("{}{}", sg3.levels[m].names[t[0]], bracket_name(&sg3, m, &t[1..]))
        },
        budget,
    )
}

/// Face of a w simplex; `t` has length `m + 1`, coordinate `k` in level
/// `m-k`. Same shape as the wbar face with one extra leading coordinate.
fn w_face(sg: &SimplicialGroup, i: usize, m: usize, t: &[usize]) -> Vec<usize> {
    debug_assert!(t.len() == m + 1);
    let mut out = Vec::with_capacity(m);
    for (k, &x) in t.iter().enumerate().take(i) {
        out.push(sg.d(m - k, i - k, x));
    }
    if i < m {
        // Merge: d_0(g_{m-i}) * g_{m-i-1} in level m-1-i.
        let level = m - 1 - i;
        let a = sg.d(level + 1, 0, t[i]);
        out.push(sg.levels[level].mul[a][t[i + 1]]);
        out.extend_from_slice(&t[i + 2..]);
    }
    out
}

fn w_degen(sg: &SimplicialGroup, i: usize, m: usize, t: &[usize]) -> Vec<usize> {
    debug_assert!(t.len() == m + 1);
    let mut out = Vec::with_capacity(m + 2);
    for (k, &x) in t.iter().enumerate().take(i + 1) {
        out.push(sg.s(m - k, i - k, x));
    }
    out.push(sg.levels[m - i].e);
    out.extend_from_slice(&t[i + 1..]);
    out
}

/// The quotient map `w(G) -> wbar(G)` dropping the leading coordinate.
pub fn w_to_wbar(w: &Tabulated<Vec<usize>>, wb: &Tabulated<Vec<usize>>) -> SimplicialMap {
    let trunc = w.sset.truncation();
    let images = (0..=trunc)
        .map(|d| {
            w.sset
                .gens_of_dim(d)
                .map(|g| {
                    let t = w.of_ref(&crate::simplex::SimplexRef::of(g));
                    wb.to_ref(d, &t[1..].to_vec())
                })
                .collect()
        })
        .collect();
    SimplicialMap::new(w.sset.clone(), wb.sset.clone(), images)
        .expect("quotient to wbar is simplicial")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{homology_range, HomologySignature};

    #[test]
    fn small_group_tables() {
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(z2.order(), 2);
        assert!(z2.is_abelian());
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.names[s3.e], "p012");
        // Inverses square to identity where expected.
        for a in 0..6 {
            assert_eq!(s3.mul[a][s3.inv[a]], s3.e);
        }
    }

    #[test]
    fn bad_tables_are_rejected() {
        // Left-zero semigroup: no identity.
        let bad = FiniteGroup::from_table(
            vec!["a".into(), "b".into()],
            vec![vec![0, 0], vec![1, 1]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn wbar_of_z2_is_projective_space() {
        let sg = SimplicialGroup::constant(&FiniteGroup::cyclic(2), 5);
        sg.validate().unwrap();
        let wb = wbar(&sg, 1 << 20).unwrap();
        // One nondegenerate simplex per dimension.
        assert_eq!(wb.sset.gen_counts(), vec![1, 1, 1, 1, 1, 1]);
        let h = homology_range(&wb.sset, 4).unwrap();
        assert_eq!(h[0], HomologySignature::free(1));
        assert_eq!(h[1], HomologySignature { rank: 0, torsion: vec!["2".into()] });
        assert_eq!(h[2], HomologySignature::free(0));
        assert_eq!(h[3], HomologySignature { rank: 0, torsion: vec!["2".into()] });
        assert_eq!(h[4], HomologySignature::free(0));
    }

    #[test]
    fn wbar_of_z3_homology() {
        let sg = SimplicialGroup::constant(&FiniteGroup::cyclic(3), 4);
        let wb = wbar(&sg, 1 << 20).unwrap();
        let h = homology_range(&wb.sset, 3).unwrap();
        assert_eq!(h[1], HomologySignature { rank: 0, torsion: vec!["3".into()] });
        assert_eq!(h[2], HomologySignature::free(0));
        assert_eq!(h[3], HomologySignature { rank: 0, torsion: vec!["3".into()] });
    }

    #[test]
    fn w_is_contractible() {
        let sg = SimplicialGroup::constant(&FiniteGroup::cyclic(2), 5);
        let w = w_total(&sg, 1 << 20).unwrap();
        for m in 0..=5 {
            assert_eq!(w.sset.total_count(m), 1 << (m + 1));
        }
        let h = homology_range(&w.sset, 4).unwrap();
        assert_eq!(h[0], HomologySignature::free(1));
        for s in &h[1..] {
            assert_eq!(*s, HomologySignature::free(0));
        }
    }

    #[test]
    fn w_projects_onto_wbar() {
        let sg = SimplicialGroup::constant(&FiniteGroup::symmetric(3), 3);
        let w = w_total(&sg, 1 << 22).unwrap();
        let wb = wbar(&sg, 1 << 20).unwrap();
        let q = w_to_wbar(&w, &wb);
        q.validate().unwrap();
        // Fibers over any simplex have constant size |G|.
        for m in 0..=3 {
            assert_eq!(w.sset.total_count(m), 6 * wb.sset.total_count(m));
        }
    }
}
