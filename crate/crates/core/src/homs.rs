//! Function complexes: hom-set enumeration, subdivision, the extension
//! functor Ex, and exponentials by standard simplices.

use std::collections::HashMap;

use crate::build::delta;
use crate::error::{Result, SegalError};
use crate::limits::{product, Tuple};
use crate::simplex::{Gen, Monotone, SimplexRef};
use crate::smap::SimplicialMap;
use crate::sset::SimplicialSet;
use crate::tabulated::{from_tabulated, Tabulated};

/// A simplicial map stored as its generator-image table; the canonical
/// hashable representation of an element of a function complex.
pub type HomElem = Vec<Vec<SimplexRef>>;

fn apply_images(images: &HomElem, r: &SimplexRef) -> SimplexRef {
    let mut cur = images[r.gen.dim][r.gen.idx].clone();
    for &j in r.word.iter().rev() {
        cur = crate::simplex::degenerate(j, &cur);
    }
    cur
}

pub fn elem_to_map(src: &SimplicialSet, dst: &SimplicialSet, elem: &HomElem) -> SimplicialMap {
    SimplicialMap::new_unchecked(src.clone(), dst.clone(), elem.clone())
        .expect("hom elements are well formed")
}

enum Trail {
    Missing(usize),
    Domain(usize, Option<Vec<SimplexRef>>),
    Ready(usize),
}

struct HomSearch<'a> {
    a: &'a SimplicialSet,
    gens: Vec<Gen>,
    // Distinct flat positions of each generator's face generators, and the
    // reverse incidence.
    deps: Vec<Vec<usize>>,
    uses: Vec<Vec<usize>>,
    by_faces: Vec<HashMap<Vec<SimplexRef>, Vec<SimplexRef>>>,
    all: Vec<Vec<SimplexRef>>,
    pos: HashMap<Gen, usize>,
    image: Vec<Option<SimplexRef>>,
    domain: Vec<Option<Vec<SimplexRef>>>,
    missing: Vec<usize>,
    ready: Vec<bool>,
    assigned: usize,
    out: Vec<HomElem>,
    budget: usize,
    nodes: usize,
    node_cap: usize,
}

impl HomSearch<'_> {
    fn eval_ref(&self, r: &SimplexRef, over: Option<(usize, &SimplexRef)>) -> SimplexRef {
        let k = self.pos[&r.gen];
        let mut cur = match over {
            Some((u, v)) if u == k => v.clone(),
            _ => self.image[k].clone().expect("face image is assigned"),
        };
        for &j in r.word.iter().rev() {
            cur = crate::simplex::degenerate(j, &cur);
        }
        cur
    }

    fn key_of(&self, h: usize, over: Option<(usize, &SimplexRef)>) -> Vec<SimplexRef> {
        let g = self.gens[h];
        (0..=g.dim).map(|i| self.eval_ref(self.a.gen_face(g, i), over)).collect()
    }

    fn undo(&mut self, trail: Vec<Trail>) {
        for op in trail.into_iter().rev() {
            match op {
                Trail::Missing(h) => self.missing[h] += 1,
                Trail::Domain(u, old) => self.domain[u] = old,
                Trail::Ready(h) => self.ready[h] = false,
            }
        }
    }

    /// Narrow domains after assigning generator `k`; false on a dead end.
    fn propagate(&mut self, k: usize, trail: &mut Vec<Trail>) -> bool {
        for hi in 0..self.uses[k].len() {
            let h = self.uses[k][hi];
            self.missing[h] -= 1;
            trail.push(Trail::Missing(h));
            if self.missing[h] == 0 {
                let key = self.key_of(h, None);
                let Some(cands) = self.by_faces[self.gens[h].dim].get(&key) else {
                    return false;
                };
                let newdom: Vec<SimplexRef> = match &self.domain[h] {
                    None => cands.clone(),
                    Some(cur) => cands.iter().filter(|c| cur.contains(c)).cloned().collect(),
                };
                if newdom.is_empty() {
                    return false;
                }
                trail.push(Trail::Domain(h, self.domain[h].take()));
                self.domain[h] = Some(newdom);
                self.ready[h] = true;
                trail.push(Trail::Ready(h));
            } else if self.missing[h] == 1 {
                let u = *self.deps[h]
                    .iter()
                    .find(|&&d| self.image[d].is_none())
                    .expect("one dependency is unassigned");
                let cur: Vec<SimplexRef> = match &self.domain[u] {
                    Some(d) => d.clone(),
                    None => self.all[self.gens[u].dim].clone(),
                };
                let dim_h = self.gens[h].dim;
                let newdom: Vec<SimplexRef> = cur
                    .iter()
                    .filter(|v| {
                        let key = self.key_of(h, Some((u, v)));
                        self.by_faces[dim_h].contains_key(&key)
                    })
                    .cloned()
                    .collect();
                if newdom.is_empty() {
                    return false;
                }
                if newdom.len() < cur.len() {
                    trail.push(Trail::Domain(u, self.domain[u].take()));
                    self.domain[u] = Some(newdom);
                }
            }
        }
        true
    }

    fn search(&mut self) -> Result<()> {
        if self.assigned == self.gens.len() {
            let trunc = self.a.truncation();
            let mut elem: HomElem = vec![Vec::new(); trunc + 1];
            for (k, g) in self.gens.iter().enumerate() {
                debug_assert_eq!(elem[g.dim].len(), g.idx);
                elem[g.dim].push(self.image[k].clone().unwrap());
            }
            self.out.push(elem);
            if self.out.len() > self.budget {
                return Err(SegalError::Budget { items: self.out.len(), budget: self.budget });
            }
            return Ok(());
        }
        // Fewest remaining candidates among the ready generators.
        let mut best: Option<(usize, usize)> = None;
        for k in 0..self.gens.len() {
            if self.image[k].is_some() || !self.ready[k] {
                continue;
            }
            let ds = match &self.domain[k] {
                Some(d) => d.len(),
                None => self.all[self.gens[k].dim].len(),
            };
            if best.map_or(true, |(b, _)| ds < b) {
                best = Some((ds, k));
            }
        }
        let (_, k) = best.expect("face relations are acyclic");
        let cands: Vec<SimplexRef> = match &self.domain[k] {
            Some(d) => d.clone(),
            None => self.all[self.gens[k].dim].clone(),
        };
        for v in cands {
            self.nodes += 1;
            if self.nodes > self.node_cap {
                return Err(SegalError::Budget { items: self.nodes, budget: self.node_cap });
            }
            let mut trail = Vec::new();
            self.image[k] = Some(v);
            self.assigned += 1;
            let ok = self.propagate(k, &mut trail);
            if ok {
                let r = self.search();
                if r.is_err() {
                    return r;
                }
            }
            self.undo(trail);
            self.image[k] = None;
            self.assigned -= 1;
        }
        Ok(())
    }
}

/// Every simplicial map `a -> x`, in a deterministic order.
///
/// Images are assigned one generator at a time, fewest-candidates first.
/// Domains shrink by propagation: a cell with one unassigned face narrows
/// that face's domain, and a cell with none must match an existing face
/// tuple exactly.
pub fn hom_set(a: &SimplicialSet, x: &SimplicialSet, budget: usize) -> Result<Vec<HomElem>> {
    if a.truncation() != x.truncation() {
        return Err(SegalError::validation("hom endpoints must share a truncation"));
    }
    let trunc = a.truncation();
    // Candidates for a d-generator image, keyed by the full face tuple.
    let mut by_faces: Vec<HashMap<Vec<SimplexRef>, Vec<SimplexRef>>> =
        Vec::with_capacity(trunc + 1);
    let mut all: Vec<Vec<SimplexRef>> = Vec::with_capacity(trunc + 1);
    for d in 0..=trunc {
        let mut map: HashMap<Vec<SimplexRef>, Vec<SimplexRef>> = HashMap::new();
        for r in x.all_simplices(d) {
            map.entry(x.faces_of(&r)).or_default().push(r);
        }
        by_faces.push(map);
        all.push(x.all_simplices(d));
    }

    let gens: Vec<Gen> = (0..=trunc).flat_map(|d| a.gens_of_dim(d)).collect();
    if gens.is_empty() {
        return Ok(vec![vec![Vec::new(); trunc + 1]]);
    }
    let mut pos: HashMap<Gen, usize> = HashMap::with_capacity(gens.len());
    for (k, &g) in gens.iter().enumerate() {
        pos.insert(g, k);
    }
    let mut deps: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    let mut uses: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    for (k, &g) in gens.iter().enumerate() {
        if g.dim == 0 {
            continue;
        }
        let mut d: Vec<usize> = (0..=g.dim).map(|i| pos[&a.gen_face(g, i).gen]).collect();
        d.sort_unstable();
        d.dedup();
        for &u in &d {
            uses[u].push(k);
        }
        deps[k] = d;
    }

    let missing: Vec<usize> = deps.iter().map(|d| d.len()).collect();
    let ready: Vec<bool> = missing.iter().map(|&m| m == 0).collect();
    let node_cap = budget.saturating_mul(16).max(1 << 22);
    let n = gens.len();
    let mut s = HomSearch {
        a,
        gens,
        deps,
        uses,
        by_faces,
        all,
        pos,
        image: vec![None; n],
        domain: vec![None; n],
        missing,
        ready,
        assigned: 0,
        out: Vec::new(),
        budget,
        nodes: 0,
        node_cap,
    };
    s.search()?;
    Ok(s.out)
}

/// The vertex sequence of a simplex of a standard simplex: the generator's
/// vertex set expanded by the degeneracy word.
pub fn delta_vertex_values(dn: &SimplicialSet, r: &SimplexRef) -> Vec<usize> {
    let name = dn.gen_name(r.gen);
    let mut values: Vec<usize> =
        name.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
    let mut word: Vec<usize> = r.word.clone();
    word.reverse();
    for &p in &word {
        let v = values[p];
        values.insert(p + 1, v);
    }
    values
}

/// The classifying map `Δ^d -> x` of a d-simplex.
pub fn yoneda(x: &SimplicialSet, r: &SimplexRef) -> Result<SimplicialMap> {
    let d = r.dim();
    let dd = delta(d, x.truncation())?;
    let mut images: Vec<Vec<SimplexRef>> = vec![Vec::new(); x.truncation() + 1];
    for k in 0..=x.truncation().min(d) {
        for g in dd.gens_of_dim(k) {
            let values = delta_vertex_values(&dd, &SimplexRef::of(g));
            images[k].push(x.eval(r, &Monotone::new(values, d)));
        }
    }
    SimplicialMap::new(dd, x.clone(), images)
}

/// Nonempty subsets of `{0..=m}` as sorted vertex lists, ordered by size
/// then lexicographically.
fn nonempty_subsets(m: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for code in 1u32..(1 << (m + 1)) {
        out.push((0..=m).filter(|&v| code >> v & 1 == 1).collect());
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

fn chain_name(chain: &[Vec<usize>]) -> String {
    chain
        .iter()
        .map(|s| s.iter().map(|v| v.to_string()).collect::<String>())
        .collect::<Vec<_>>()
        .join("<")
}

/// Barycentric subdivision of the standard m-simplex: the nerve of the poset
/// of nonempty vertex subsets. Generators are strict chains.
pub fn sd_delta(m: usize, truncation: usize) -> Result<SimplicialSet> {
    if m > 9 {
        return Err(SegalError::unsupported(
            "subdivision is supported up to dimension 9",
        ));
    }
    let subsets = nonempty_subsets(m);
    let mut chains: Vec<Vec<Vec<usize>>> = subsets.iter().map(|s| vec![s.clone()]).collect();
    let mut gens: Vec<Vec<String>> = Vec::with_capacity(truncation + 1);
    let mut all_chains: Vec<Vec<Vec<Vec<usize>>>> = Vec::with_capacity(truncation + 1);
    for d in 0..=truncation {
        gens.push(chains.iter().map(|c| chain_name(c)).collect());
        all_chains.push(chains.clone());
        if d == truncation {
            break;
        }
        let mut next = Vec::new();
        for c in &chains {
            let last = c.last().unwrap();
            for s in &subsets {
                if s.len() > last.len() && last.iter().all(|v| s.contains(v)) {
                    let mut e = c.clone();
                    e.push(s.clone());
                    next.push(e);
                }
            }
        }
        chains = next;
    }
    let index: Vec<HashMap<&Vec<Vec<usize>>, usize>> = all_chains
        .iter()
        .map(|row| row.iter().zip(0..).collect())
        .collect();
    let mut faces: Vec<Vec<Vec<SimplexRef>>> = vec![Vec::new(); truncation + 1];
    for (d, row) in all_chains.iter().enumerate().skip(1) {
        for c in row {
            let mut frow = Vec::with_capacity(d + 1);
            for i in 0..=d {
                let mut f = c.clone();
                f.remove(i);
                frow.push(SimplexRef::of(Gen { dim: d - 1, idx: index[d - 1][&f] }));
            }
            faces[d].push(frow);
        }
    }
    SimplicialSet::new_unchecked(truncation, gens, faces)
}

/// Subdivision applied to the map of standard simplices induced by a
/// monotone map: chains map to image chains, collapsing repeats.
pub fn sd_map(op: &Monotone, truncation: usize) -> Result<SimplicialMap> {
    let src = sd_delta(op.source_dim(), truncation)?;
    let dst = sd_delta(op.target, truncation)?;
    let mut images: Vec<Vec<SimplexRef>> = vec![Vec::new(); truncation + 1];
    for d in 0..=truncation {
        for g in src.gens_of_dim(d) {
            let name = src.gen_name(g);
            let image_chain: Vec<Vec<usize>> = name
                .split('<')
                .map(|part| {
                    let mut s: Vec<usize> = part
                        .chars()
                        .map(|c| op.values[c.to_digit(10).unwrap() as usize])
                        .collect();
                    s.sort_unstable();
                    s.dedup();
                    s
                })
                .collect();
            let mut distinct = image_chain.clone();
            distinct.dedup();
            let gen_name = chain_name(&distinct);
            let tg = dst.gen_by_name(&gen_name).expect("image chain is strict");
            let mut word: Vec<usize> = (0..image_chain.len() - 1)
                .filter(|&p| image_chain[p] == image_chain[p + 1])
                .collect();
            word.reverse();
            images[d].push(SimplexRef { word, gen: tg });
        }
    }
    SimplicialMap::new(src, dst, images)
}

/// The extension functor: `ex(x)_m = hom(sd Δ^m, x)`, with structure maps by
/// precomposition.
pub struct Ex {
    pub tab: Tabulated<HomElem>,
    pub base: SimplicialSet,
    sds: Vec<SimplicialSet>,
}

pub fn ex(x: &SimplicialSet, budget: usize) -> Result<Ex> {
    let n = x.truncation();
    let sds: Vec<SimplicialSet> = (0..=n).map(|m| sd_delta(m, n)).collect::<Result<_>>()?;
    let mut elems: Vec<Vec<HomElem>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        elems.push(hom_set(&sds[m], x, budget)?);
    }
    // Structure maps of the cosimplicial object sd Δ^•.
    let mut face_maps: Vec<Vec<SimplicialMap>> = vec![Vec::new()];
    for m in 1..=n {
        face_maps.push(
            (0..=m)
                .map(|i| sd_map(&Monotone::coface(m, i), n))
                .collect::<Result<_>>()?,
        );
    }
    let mut degen_maps: Vec<Vec<SimplicialMap>> = Vec::new();
    for m in 0..=n {
        if m + 1 > n {
            degen_maps.push(Vec::new());
            break;
        }
        degen_maps.push(
            (0..=m)
                .map(|i| sd_map(&Monotone::codegeneracy(m, i), n))
                .collect::<Result<_>>()?,
        );
    }

    let precompose = |h: &HomElem, inc: &SimplicialMap| -> HomElem {
        (0..=n)
            .map(|d| {
                inc.source
                    .gens_of_dim(d)
                    .map(|g| apply_images(h, inc.gen_image(g)))
                    .collect()
            })
            .collect()
    };

    // Deterministic names from enumeration order.
    let mut name_of: Vec<HashMap<HomElem, String>> = Vec::with_capacity(n + 1);
    for (m, row) in elems.iter().enumerate() {
        let mut map = HashMap::with_capacity(row.len());
        for (i, h) in row.iter().enumerate() {
            map.insert(h.clone(), format!("x{m}k{i}"));
        }
        name_of.push(map);
    }

    let fm = face_maps;
    let dm = degen_maps;
    let pre1 = precompose;
    let tab = from_tabulated(
        n,
        elems,
        move |i, m, h: &HomElem| pre1(h, &fm[m][i]),
        move |i, m, h: &HomElem| pre1(h, &dm[m][i]),
        move |m, h: &HomElem| name_of[m][h].clone(),
        budget,
    )?;
    Ok(Ex { tab, base: x.clone(), sds })
}

impl Ex {
    pub fn sset(&self) -> &SimplicialSet {
        &self.tab.sset
    }

    /// The natural inclusion `x -> ex(x)` by last vertices: an m-simplex
    /// becomes the map sending a chain to its sequence of maxima.
    pub fn last_vertex_inclusion(&self) -> SimplicialMap {
        let x = &self.base;
        let n = x.truncation();
        let mut images: Vec<Vec<SimplexRef>> = vec![Vec::new(); n + 1];
        for m in 0..=n {
            for g in x.gens_of_dim(m) {
                let r = SimplexRef::of(g);
                let h: HomElem = (0..=n)
                    .map(|d| {
                        self.sds[m]
                            .gens_of_dim(d)
                            .map(|cg| {
                                let name = self.sds[m].gen_name(cg);
                                let values: Vec<usize> = name
                                    .split('<')
                                    .map(|part| {
                                        part.chars()
                                            .map(|c| c.to_digit(10).unwrap() as usize)
                                            .max()
                                            .unwrap()
                                    })
                                    .collect();
                                x.eval(&r, &Monotone::new(values, m))
                            })
                            .collect()
                    })
                    .collect();
                images[m].push(self.tab.to_ref(m, &h));
            }
        }
        SimplicialMap::new(x.clone(), self.tab.sset.clone(), images)
            .expect("last vertex maps are simplicial")
    }

    /// Functoriality: postcomposition with `f : base -> y` into `ex(y)`.
    pub fn map_into(&self, f: &SimplicialMap, target: &Ex) -> SimplicialMap {
        let n = self.base.truncation();
        let images = (0..=n)
            .map(|m| {
                self.tab
                    .sset
                    .gens_of_dim(m)
                    .map(|g| {
                        let h = self.tab.of_ref(&SimplexRef::of(g));
                        let post: HomElem = h
                            .iter()
                            .map(|row| row.iter().map(|r| f.apply(r)).collect())
                            .collect();
                        target.tab.to_ref(m, &post)
                    })
                    .collect()
            })
            .collect();
        SimplicialMap::new_unchecked(self.tab.sset.clone(), target.tab.sset.clone(), images)
            .expect("postcomposition is well formed")
    }
}

/// Iterated extension with the composite inclusion `x -> ex^k(x)`.
pub fn ex_iterated(x: &SimplicialSet, k: usize, budget: usize) -> Result<(SimplicialSet, SimplicialMap)> {
    let mut cur = x.clone();
    let mut inc = SimplicialMap::identity(x);
    for _ in 0..k {
        let e = ex(&cur, budget)?;
        let step = e.last_vertex_inclusion();
        inc = step.compose(&inc);
        cur = e.tab.sset.clone();
    }
    Ok((cur, inc))
}

/// The exponential `x^{Δ^n}`: level m is `hom(Δ^m × Δ^n, x)`, with structure
/// maps by precomposition in the first coordinate.
pub struct Exponential {
    pub n: usize,
    pub base: SimplicialSet,
    pub tab: Tabulated<HomElem>,
    prods: Vec<Tabulated<Tuple>>,
    deltas: Vec<SimplicialSet>,
}

pub fn exponential(n: usize, x: &SimplicialSet, budget: usize) -> Result<Exponential> {
    let trunc = x.truncation();
    let deltas: Vec<SimplicialSet> =
        (0..=trunc).map(|m| delta(m, trunc)).collect::<Result<_>>()?;
    let delta_n = delta(n, trunc)?;
    let prods: Vec<Tabulated<Tuple>> = (0..=trunc)
        .map(|m| product(&deltas[m], &delta_n, budget))
        .collect::<Result<_>>()?;
    let mut elems: Vec<Vec<HomElem>> = Vec::with_capacity(trunc + 1);
    for m in 0..=trunc {
        elems.push(hom_set(&prods[m].sset, x, budget)?);
    }

    // The map Δ^{m'} × Δ^n -> Δ^m × Δ^n induced by op : [m'] -> [m].
    let induced = |op: &Monotone, src: &Tabulated<Tuple>, dst: &Tabulated<Tuple>| -> Result<SimplicialMap> {
        let d_op = crate::smap::delta_map(op, trunc)?;
        let pr0 = crate::limits::projection(src, 0, &d_op.source);
        let pr1 = crate::limits::projection(src, 1, &delta_n);
        crate::limits::into_limit(dst, &[d_op.compose(&pr0), pr1])
    };
    let mut face_maps: Vec<Vec<SimplicialMap>> = vec![Vec::new()];
    for m in 1..=trunc {
        face_maps.push(
            (0..=m)
                .map(|i| induced(&Monotone::coface(m, i), &prods[m - 1], &prods[m]))
                .collect::<Result<_>>()?,
        );
    }
    let mut degen_maps: Vec<Vec<SimplicialMap>> = Vec::new();
    for m in 0..=trunc {
        if m + 1 > trunc {
            degen_maps.push(Vec::new());
            break;
        }
        degen_maps.push(
            (0..=m)
                .map(|i| induced(&Monotone::codegeneracy(m, i), &prods[m + 1], &prods[m]))
                .collect::<Result<_>>()?,
        );
    }

    let precompose = move |h: &HomElem, inc: &SimplicialMap| -> HomElem {
        (0..=trunc)
            .map(|d| {
                inc.source
                    .gens_of_dim(d)
                    .map(|g| apply_images(h, inc.gen_image(g)))
                    .collect()
            })
            .collect()
    };
    let mut name_of: Vec<HashMap<HomElem, String>> = Vec::with_capacity(trunc + 1);
    for (m, row) in elems.iter().enumerate() {
        let mut map = HashMap::with_capacity(row.len());
        for (i, h) in row.iter().enumerate() {
            map.insert(h.clone(), format!("p{m}k{i}"));
        }
        name_of.push(map);
    }
    let fm = face_maps;
    let dm = degen_maps;
    let pre1 = precompose;
    let tab = from_tabulated(
        trunc,
        elems,
        move |i, m, h: &HomElem| pre1(h, &fm[m][i]),
        move |i, m, h: &HomElem| pre1(h, &dm[m][i]),
        move |m, h: &HomElem| name_of[m][h].clone(),
        budget,
    )?;
    drop(delta_n);
    Ok(Exponential { n, base: x.clone(), tab, prods, deltas })
}

impl Exponential {
    pub fn sset(&self) -> &SimplicialSet {
        &self.tab.sset
    }

    /// The pair simplex `(a, b)` as a reference into level `m` of the
    /// product table `Δ^m × Δ^n`.
    pub fn pair_ref(&self, m: usize, a: SimplexRef, b: SimplexRef) -> SimplexRef {
        self.prods[m].to_ref(m, &vec![a, b])
    }

    /// Generators of `Δ^m × Δ^n` in dimension `d`, as component pairs.
    pub fn prod_gens(&self, m: usize, d: usize) -> Vec<(SimplexRef, SimplexRef)> {
        self.prods[m]
            .sset
            .gens_of_dim(d)
            .map(|g| {
                let t = self.prods[m].of_ref(&SimplexRef::of(g));
                (t[0].clone(), t[1].clone())
            })
            .collect()
    }

    pub fn delta_of(&self, k: usize) -> &SimplicialSet {
        &self.deltas[k]
    }

    /// Evaluate an element of the function complex on a pair simplex.
    pub fn eval_elem(&self, h: &HomElem, at: &SimplexRef) -> SimplexRef {
        apply_images(h, at)
    }

    /// Precomposition in the exponent along `op : [k] -> [n]`, as a map
    /// `x^{Δ^n} -> x^{Δ^k}` into another exponential of the same base.
    pub fn precompose(&self, op: &Monotone, dst: &Exponential) -> Result<SimplicialMap> {
        if op.target != self.n || op.source_dim() != dst.n || self.base != dst.base {
            return Err(SegalError::validation("exponent map endpoints do not line up"));
        }
        let trunc = self.base.truncation();
        let d_op = crate::smap::delta_map(op, trunc)?;
        let mut images: Vec<Vec<SimplexRef>> = vec![Vec::new(); trunc + 1];
        for m in 0..=trunc {
            // Δ^m × Δ^k -> Δ^m × Δ^n over the identity on the first factor.
            let pr0 = crate::limits::projection(&dst.prods[m], 0, &self.deltas[m]);
            let pr1 = crate::limits::projection(&dst.prods[m], 1, &d_op.source);
            let ind = crate::limits::into_limit(&self.prods[m], &[pr0, d_op.compose(&pr1)])?;
            for g in self.tab.sset.gens_of_dim(m) {
                let h = self.tab.of_ref(&SimplexRef::of(g));
                let post: HomElem = (0..=trunc)
                    .map(|d| {
                        dst.prods[m]
                            .sset
                            .gens_of_dim(d)
                            .map(|pg| apply_images(h, ind.gen_image(pg)))
                            .collect()
                    })
                    .collect();
                images[m].push(dst.tab.to_ref(m, &post));
            }
        }
        SimplicialMap::new_unchecked(self.tab.sset.clone(), dst.tab.sset.clone(), images)
    }

    /// Evaluation at a vertex `v` of `Δ^n`: the map `x^{Δ^n} -> x`.
    pub fn eval_at(&self, v: usize) -> SimplicialMap {
        let trunc = self.base.truncation();
        let images = (0..=trunc)
            .map(|m| {
                self.tab
                    .sset
                    .gens_of_dim(m)
                    .map(|g| {
                        let h = self.tab.of_ref(&SimplexRef::of(g));
                        let top = SimplexRef::of(Gen { dim: m, idx: 0 });
                        let vref = SimplexRef {
                            word: (0..m).rev().collect(),
                            gen: Gen { dim: 0, idx: v },
                        };
                        let at = self.prods[m].to_ref(m, &vec![top, vref]);
                        apply_images(h, &at)
                    })
                    .collect()
            })
            .collect();
        SimplicialMap::new_unchecked(self.tab.sset.clone(), self.base.clone(), images)
            .expect("evaluation is well formed")
    }

    /// Constants: the map `x -> x^{Δ^n}` sending a simplex to the map that
    /// ignores the exponent coordinate.
    pub fn constants(&self) -> SimplicialMap {
        let trunc = self.base.truncation();
        let x = &self.base;
        let mut images: Vec<Vec<SimplexRef>> = vec![Vec::new(); trunc + 1];
        for m in 0..=trunc {
            for g in x.gens_of_dim(m) {
                let r = SimplexRef::of(g);
                let h: HomElem = (0..=trunc)
                    .map(|d| {
                        self.prods[m]
                            .sset
                            .gens_of_dim(d)
                            .map(|pg| {
                                let pair = self.prods[m].of_ref(&SimplexRef::of(pg));
                                let values = delta_vertex_values(&self.deltas[m], &pair[0]);
                                x.eval(&r, &Monotone::new(values, m))
                            })
                            .collect()
                    })
                    .collect();
                images[m].push(self.tab.to_ref(m, &h));
            }
        }
        SimplicialMap::new(x.clone(), self.tab.sset.clone(), images)
            .expect("constants are simplicial")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{boundary, circle, point};

    #[test]
    fn yoneda_counts() {
        // |hom(Δ^n, x)| = |x_n|.
        let s1 = circle(3).unwrap();
        for n in 0..=3 {
            let dn = delta(n, 3).unwrap();
            let homs = hom_set(&dn, &s1, 1 << 20).unwrap();
            assert_eq!(homs.len(), s1.total_count(n), "n={n}");
        }
    }

    #[test]
    fn circle_self_maps() {
        let s1 = circle(3).unwrap();
        let homs = hom_set(&s1, &s1, 1 << 20).unwrap();
        // The identity and the collapse.
        assert_eq!(homs.len(), 2);
        for h in &homs {
            elem_to_map(&s1, &s1, h).validate().unwrap();
        }
    }

    #[test]
    fn subdivision_shapes() {
        let sd1 = sd_delta(1, 3).unwrap();
        assert_eq!(sd1.gen_counts(), vec![3, 2, 0, 0]);
        let sd2 = sd_delta(2, 3).unwrap();
        assert_eq!(sd2.gen_counts(), vec![7, 12, 6, 0]);
        sd2.validate().unwrap();
        // Subdivision preserves the homotopy type of the simplex.
        assert_eq!(crate::homology::homology(&sd2, 1).unwrap().rank, 0);
    }

    #[test]
    fn sd_maps_compose() {
        let f = sd_map(&Monotone::coface(2, 1), 4).unwrap();
        f.validate().unwrap();
        let g = sd_map(&Monotone::codegeneracy(1, 0), 4).unwrap();
        g.validate().unwrap();
        // σ_0 ∘ δ_1 with this dimension layout is σ_0 : [2] -> [1] after
        // δ_1 : [1] -> [2]... the composite is the identity on [1].
        let comp = g.compose(&f);
        assert!(comp.is_iso());
    }

    #[test]
    fn ex_of_circle() {
        let s1 = circle(3).unwrap();
        let e = ex(&s1, 1 << 20).unwrap();
        // Vertices stay, edges double (each non-loop path of length 2).
        assert_eq!(e.sset().gen_count(0), 1);
        assert_eq!(e.tab.elems[1].len(), 4);
        let inc = e.last_vertex_inclusion();
        inc.validate().unwrap();
        // Ex preserves the homotopy type of the circle.
        let h = crate::homology::homology_range(e.sset(), 2).unwrap();
        assert_eq!(h[0].rank, 1);
        assert_eq!(h[1].rank, 1);
        assert_eq!(h[2].rank, 0);
    }

    #[test]
    fn exponential_by_vertex_is_identity_like() {
        let s1 = circle(3).unwrap();
        let e = exponential(0, &s1, 1 << 20).unwrap();
        let ev = e.eval_at(0);
        let cons = e.constants();
        assert!(ev.compose(&cons).is_iso());
        // x^{Δ^0} ≅ x.
        assert!(ev.is_iso());
    }

    #[test]
    fn path_space_of_point() {
        let pt = point(2);
        let e = exponential(1, &pt, 1 << 20).unwrap();
        assert!(e.sset().is_discrete());
        assert_eq!(e.sset().gen_count(0), 1);
    }

    #[test]
    fn path_space_endpoints_of_sphere() {
        let s2 = boundary(2, 3).unwrap();
        let e = exponential(1, &s2, 1 << 22).unwrap();
        let ev0 = e.eval_at(0);
        let ev1 = e.eval_at(1);
        let cons = e.constants();
        assert!(ev0.compose(&cons).is_iso());
        assert!(ev1.compose(&cons).is_iso());
        ev0.validate().unwrap();
        ev1.validate().unwrap();
    }
}
