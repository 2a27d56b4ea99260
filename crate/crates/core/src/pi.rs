//! Path components and the fundamental group.
//!
//! The fundamental group is produced as an edge-path presentation: one
//! generator per nondegenerate edge outside a spanning tree, one relator per
//! nondegenerate triangle. Group-level conclusions come from bounded coset
//! enumeration (exact order when it completes), the abelianization, and
//! counts of homomorphisms into small reference groups.

use std::collections::VecDeque;

use crate::error::{Result, SegalError};
use crate::group::FiniteGroup;
use crate::homology::HomologySignature;
use crate::simplex::Gen;
use crate::snf::{smith_normal_form, zeros};
use crate::sset::SimplicialSet;
use num_bigint::BigInt;
use num_traits::One;

#[derive(Clone, Debug)]
pub struct Pi0 {
    pub count: usize,
    /// Component id per vertex generator, numbered by first appearance.
    pub class_of: Vec<usize>,
}

pub fn pi0(x: &SimplicialSet) -> Pi0 {
    let n = x.gen_count(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, a: usize) -> usize {
        if parent[a] != a {
            let r = find(parent, parent[a]);
            parent[a] = r;
        }
        parent[a]
    }
    if x.truncation() >= 1 {
        for e in x.gens_of_dim(1) {
            let a = x.gen_face(e, 0).gen.idx;
            let b = x.gen_face(e, 1).gen.idx;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        let r = find(&mut parent, v);
        if class_of[r] == usize::MAX {
            class_of[r] = count;
            count += 1;
        }
        class_of[v] = class_of[r];
    }
    Pi0 { count, class_of }
}

/// A finitely presented group; letters in relators are `±(index + 1)`.
#[derive(Clone, Debug)]
pub struct GroupPresentation {
    pub n_gens: usize,
    pub relators: Vec<Vec<i32>>,
    pub gen_labels: Vec<String>,
}

/// Edge-path presentation of the fundamental group at `base` (default: the
/// first vertex), restricted to the basepoint's component.
pub fn pi1_presentation(x: &SimplicialSet, base: Option<Gen>) -> Result<GroupPresentation> {
    if x.gen_count(0) == 0 {
        return Err(SegalError::unsupported(
            "fundamental group of the empty presentation",
        ));
    }
    let base = base.unwrap_or(Gen { dim: 0, idx: 0 });
    if base.dim != 0 || base.idx >= x.gen_count(0) {
        return Err(SegalError::validation("basepoint is not a vertex generator"));
    }
    let comps = pi0(x);
    let comp = comps.class_of[base.idx];

    // Spanning tree by breadth-first search over nondegenerate edges.
    let n_edges = x.gen_count(1);
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); x.gen_count(0)];
    for e in x.gens_of_dim(1) {
        let end = x.gen_face(e, 0).gen.idx;
        let start = x.gen_face(e, 1).gen.idx;
        adj[start].push((e.idx, end));
        adj[end].push((e.idx, start));
    }
    let mut in_tree = vec![false; n_edges];
    let mut seen = vec![false; x.gen_count(0)];
    seen[base.idx] = true;
    let mut queue = VecDeque::from([base.idx]);
    while let Some(v) = queue.pop_front() {
        for &(e, w) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                in_tree[e] = true;
                queue.push_back(w);
            }
        }
    }

    // Non-tree edges inside the component become generators.
    let mut gen_of_edge: Vec<Option<usize>> = vec![None; n_edges];
    let mut gen_labels = Vec::new();
    for e in x.gens_of_dim(1) {
        let start = x.gen_face(e, 1).gen.idx;
        if comps.class_of[start] != comp || in_tree[e.idx] {
            continue;
        }
        gen_of_edge[e.idx] = Some(gen_labels.len());
        gen_labels.push(x.gen_name(e).to_string());
    }

    // Letter of an edge reference: degenerate and tree edges vanish.
    let letter = |r: &crate::simplex::SimplexRef| -> Option<i32> {
        if !r.word.is_empty() {
            return None;
        }
        gen_of_edge[r.gen.idx].map(|g| g as i32 + 1)
    };

    let mut relators = Vec::new();
    if x.truncation() >= 2 {
        for t in x.gens_of_dim(2) {
            // Skip triangles outside the component.
            let corner = {
                let edge = x.gen_face(t, 1);
                x.face(1, &edge).gen.idx
            };
            if comps.class_of[corner] != comp {
                continue;
            }
            let mut w = Vec::new();
            if let Some(l) = letter(x.gen_face(t, 2)) {
                w.push(l);
            }
            if let Some(l) = letter(x.gen_face(t, 0)) {
                w.push(l);
            }
            if let Some(l) = letter(x.gen_face(t, 1)) {
                w.push(-l);
            }
            relators.push(w);
        }
    }
    Ok(GroupPresentation { n_gens: gen_labels.len(), relators, gen_labels })
}

/// Abelianization as a homology-style signature, via the Smith form of the
/// exponent matrix.
pub fn abelianization(p: &GroupPresentation) -> HomologySignature {
    let mut m = zeros(p.n_gens, p.relators.len());
    for (j, rel) in p.relators.iter().enumerate() {
        for &l in rel {
            let i = l.unsigned_abs() as usize - 1;
            m[i][j] += BigInt::from(l.signum());
        }
    }
    let f = smith_normal_form(&m);
    let torsion: Vec<String> =
        f.diag.iter().filter(|d| !d.is_one()).map(|d| d.to_string()).collect();
    HomologySignature { rank: p.n_gens - f.rank(), torsion }
}

/// Bounded coset enumeration over the trivial subgroup. `Some(n)` certifies
/// the group order is exactly `n`; `None` means the bound was hit.
pub fn todd_coxeter(p: &GroupPresentation, max_cosets: usize) -> Option<usize> {
    if p.n_gens == 0 {
        return Some(1);
    }
    let alphabet = 2 * p.n_gens;
    let words: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|rel| {
            rel.iter()
                .map(|&l| {
                    let g = (l.unsigned_abs() as usize - 1) * 2;
                    if l > 0 {
                        g
                    } else {
                        g + 1
                    }
                })
                .collect()
        })
        .collect();

    struct State {
        table: Vec<Vec<Option<usize>>>,
        rep: Vec<usize>,
        live: usize,
        alphabet: usize,
    }
    impl State {
        fn find(&mut self, mut a: usize) -> usize {
            while self.rep[a] != a {
                let up = self.rep[self.rep[a]];
                self.rep[a] = up;
                a = up;
            }
            a
        }
        fn new_coset(&mut self) -> usize {
            self.table.push(vec![None; self.alphabet]);
            self.rep.push(self.table.len() - 1);
            self.live += 1;
            self.table.len() - 1
        }
        fn set(&mut self, c: usize, x: usize, d: usize) {
            let inv_x = x ^ 1;
            match self.table[c][x] {
                None => self.table[c][x] = Some(d),
                Some(u) => {
                    let u = self.find(u);
                    let d = self.find(d);
                    if u != d {
                        self.coincide(u, d);
                    }
                    return;
                }
            }
            match self.table[d][inv_x] {
                None => self.table[d][inv_x] = Some(c),
                Some(u) => {
                    let u = self.find(u);
                    let c = self.find(c);
                    if u != c {
                        self.coincide(u, c);
                    }
                }
            }
        }
        fn coincide(&mut self, a: usize, b: usize) {
            let mut queue = vec![(a, b)];
            while let Some((a, b)) = queue.pop() {
                let a = self.find(a);
                let b = self.find(b);
                if a == b {
                    continue;
                }
                let (keep, kill) = (a.min(b), a.max(b));
                self.rep[kill] = keep;
                self.live -= 1;
                for x in 0..self.alphabet {
                    let Some(t) = self.table[kill][x].take() else { continue };
                    let t = self.find(t);
                    let t = if t == kill { keep } else { t };
                    match self.table[keep][x] {
                        Some(u) => {
                            let u = self.find(u);
                            let u = if u == kill { keep } else { u };
                            if u != t {
                                queue.push((u, t));
                            }
                        }
                        None => {
                            self.table[keep][x] = Some(t);
                            match self.table[t][x ^ 1] {
                                None => self.table[t][x ^ 1] = Some(keep),
                                Some(u) => {
                                    let u = self.find(u);
                                    let u = if u == kill { keep } else { u };
                                    if u != keep {
                                        queue.push((u, keep));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        /// Scans `word` from `start`, defining cosets as needed.
        fn scan_and_fill(&mut self, start: usize, word: &[usize], max: usize) -> bool {
            if word.is_empty() {
                return true;
            }
            let mut f = self.find(start);
            let mut i = 0usize;
            let mut b = self.find(start);
            let mut j = word.len();
            loop {
                while i < j {
                    let Some(next) = self.table[f][word[i]] else { break };
                    f = self.find(next);
                    i += 1;
                }
                if i == j {
                    if f != b {
                        self.coincide(f, b);
                    }
                    return true;
                }
                while j > i {
                    let Some(next) = self.table[b][word[j - 1] ^ 1] else { break };
                    b = self.find(next);
                    j -= 1;
                }
                if i == j {
                    if f != b {
                        self.coincide(f, b);
                    }
                    return true;
                }
                if i + 1 == j {
                    self.set(f, word[i], b);
                    return true;
                }
                if self.table.len() >= max {
                    return false;
                }
                let new = self.new_coset();
                self.set(f, word[i], new);
                f = self.find(f);
                b = self.find(b);
            }
        }
    }

    let mut st = State {
        table: vec![vec![None; alphabet]],
        rep: vec![0],
        live: 1,
        alphabet,
    };
    let mut alpha = 0;
    while alpha < st.table.len() {
        if st.table.len() > max_cosets {
            return None;
        }
        if st.find(alpha) != alpha {
            alpha += 1;
            continue;
        }
        for w in &words {
            if !st.scan_and_fill(alpha, w, max_cosets) {
                return None;
            }
            if st.find(alpha) != alpha {
                break;
            }
        }
        if st.find(alpha) == alpha {
            for x in 0..alphabet {
                if st.table[alpha][x].is_none() {
                    if st.table.len() >= max_cosets {
                        return None;
                    }
                    let new = st.new_coset();
                    st.set(alpha, x, new);
                }
            }
        }
        alpha += 1;
    }
    Some(st.live)
}

fn eval_relator(rel: &[i32], g: &FiniteGroup, assign: &[usize]) -> usize {
    let mut acc = g.e;
    for &l in rel {
        let idx = l.unsigned_abs() as usize - 1;
        let x = if l > 0 { assign[idx] } else { g.inv[assign[idx]] };
        acc = g.mul[acc][x];
    }
    acc
}

/// Number of homomorphisms into `g`, and whether a surjective one exists.
/// `None` when the presentation has too many generators to enumerate.
pub fn hom_count(p: &GroupPresentation, g: &FiniteGroup) -> Option<(usize, bool)> {
    if p.n_gens > 8 {
        return None;
    }
    // Relators become checkable once their highest generator is assigned.
    let mut by_max: Vec<Vec<&Vec<i32>>> = vec![Vec::new(); p.n_gens + 1];
    for rel in &p.relators {
        let m = rel.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0);
        by_max[m].push(rel);
    }
    let mut count = 0usize;
    let mut surjective = false;
    let mut assign = vec![0usize; p.n_gens];
    fn rec(
        k: usize,
        p: &GroupPresentation,
        g: &FiniteGroup,
        by_max: &[Vec<&Vec<i32>>],
        assign: &mut Vec<usize>,
        count: &mut usize,
        surjective: &mut bool,
    ) {
        if k == p.n_gens {
            *count += 1;
            if !*surjective {
                *surjective = subgroup_size(g, assign) == g.order();
            }
            return;
        }
        for x in 0..g.order() {
            assign[k] = x;
            if by_max[k + 1].iter().all(|rel| eval_relator(rel, g, assign) == g.e) {
                rec(k + 1, p, g, by_max, assign, count, surjective);
            }
        }
    }
    if by_max[0].iter().all(|rel| eval_relator(rel, g, &assign) == g.e) {
        rec(0, p, g, &by_max, &mut assign, &mut count, &mut surjective);
    }
    Some((count, surjective))
}

/// Size of the subgroup generated by the given elements.
fn subgroup_size(g: &FiniteGroup, gens: &[usize]) -> usize {
    let mut in_sub = vec![false; g.order()];
    in_sub[g.e] = true;
    let mut frontier = vec![g.e];
    while let Some(a) = frontier.pop() {
        for &x in gens {
            for b in [g.mul[a][x], g.mul[a][g.inv[x]]] {
                if !in_sub[b] {
                    in_sub[b] = true;
                    frontier.push(b);
                }
            }
        }
    }
    in_sub.iter().filter(|&&b| b).count()
}

/// Certifies that the presented group is isomorphic to `g`: the bounded
/// enumeration pins the exact order and a surjection onto `g` exists, so by
/// counting the surjection is bijective.
pub fn certified_iso_to(p: &GroupPresentation, g: &FiniteGroup, max_cosets: usize) -> bool {
    if todd_coxeter(p, max_cosets) != Some(g.order()) {
        return false;
    }
    match hom_count(p, g) {
        Some((_, surjective)) => surjective,
        None => false,
    }
}

/// Certified triviality of the presented group.
pub fn certified_trivial(p: &GroupPresentation, max_cosets: usize) -> bool {
    todd_coxeter(p, max_cosets) == Some(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{boundary, circle, delta, discrete};
    use crate::group::{wbar, SimplicialGroup};
    use crate::limits::product;

    #[test]
    fn component_counts() {
        let two = circle(3).unwrap().disjoint_union(&circle(3).unwrap());
        assert_eq!(pi0(&two).count, 2);
        assert_eq!(pi0(&discrete(&["a", "b", "c"], 2)).count, 3);
        assert_eq!(pi0(&delta(3, 4).unwrap()).count, 1);
    }

    #[test]
    fn circle_pi1_is_infinite_cyclic() {
        let p = pi1_presentation(&circle(4).unwrap(), None).unwrap();
        assert_eq!(p.n_gens, 1);
        assert!(p.relators.iter().all(|r| r.is_empty()));
        assert_eq!(abelianization(&p), HomologySignature::free(1));
        // Coset enumeration cannot finish on an infinite group.
        assert_eq!(todd_coxeter(&p, 2000), None);
    }

    #[test]
    fn sphere_is_simply_connected() {
        let p = pi1_presentation(&boundary(3, 4).unwrap(), None).unwrap();
        assert!(certified_trivial(&p, 1000));
    }

    #[test]
    fn torus_pi1_abelianization() {
        let s1 = circle(4).unwrap();
        let t2 = product(&s1, &s1, 1 << 20).unwrap();
        let p = pi1_presentation(&t2.sset, None).unwrap();
        assert_eq!(abelianization(&p), HomologySignature::free(2));
        assert_eq!(todd_coxeter(&p, 3000), None);
        // Z^2 has 4 homomorphisms into Z/2 and 9 into Z/3.
        assert_eq!(hom_count(&p, &FiniteGroup::cyclic(2)).unwrap().0, 4);
        assert_eq!(hom_count(&p, &FiniteGroup::cyclic(3)).unwrap().0, 9);
    }

    #[test]
    fn classifying_space_recovers_the_group() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)] {
            let sg = SimplicialGroup::constant(&g, 3);
            let wb = wbar(&sg, 1 << 20).unwrap();
            let p = pi1_presentation(&wb.sset, None).unwrap();
            assert_eq!(todd_coxeter(&p, 10_000), Some(g.order()), "order of {:?}", g.names);
            assert!(certified_iso_to(&p, &g, 10_000));
        }
    }

    #[test]
    fn hom_counts_detect_nonabelian() {
        let s3 = FiniteGroup::symmetric(3);
        let sg = SimplicialGroup::constant(&s3, 3);
        let wb = wbar(&sg, 1 << 20).unwrap();
        let p = pi1_presentation(&wb.sset, None).unwrap();
        // Homs S3 -> S3: 1 trivial + 3 sign-like + 6 inner... check exact
        // count: maps are determined by images of the 5 nonidentity
        // elements; classic count is 10.
        let (homs, surj) = hom_count(&p, &s3).unwrap();
        assert_eq!(homs, 10);
        assert!(surj);
        let z6 = FiniteGroup::cyclic(6);
        let sg6 = SimplicialGroup::constant(&z6, 3);
        let wb6 = wbar(&sg6, 1 << 20).unwrap();
        let p6 = pi1_presentation(&wb6.sset, None).unwrap();
        // Z/6 and S3 share order and abelianization-to-Z/2 data but differ
        // in hom counts into S3.
        let (homs6, _) = hom_count(&p6, &s3).unwrap();
        assert_eq!(homs6, 6);
    }

    #[test]
    fn abelianization_matches_first_homology() {
        let s2 = boundary(3, 4).unwrap();
        let p = pi1_presentation(&s2, None).unwrap();
        assert_eq!(abelianization(&p), crate::homology::homology(&s2, 1).unwrap());
        let s1 = circle(4).unwrap();
        let t = product(&s1, &s1, 1 << 20).unwrap();
        let p = pi1_presentation(&t.sset, None).unwrap();
        assert_eq!(abelianization(&p), crate::homology::homology(&t.sset, 1).unwrap());
    }
}
