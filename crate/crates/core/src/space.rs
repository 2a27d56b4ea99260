//! Simplicial spaces: simplicial objects in simplicial sets, with an
//! external direction given by levelwise maps.

use crate::error::{Result, SegalError};
use crate::homs::{exponential, Exponential, HomElem};
use crate::simplex::{Monotone, SimplexRef};
use crate::smap::SimplicialMap;
use crate::sset::SimplicialSet;
use crate::tabulated::{from_tabulated, Tabulated};

#[derive(Clone, Debug)]
pub struct SimplicialSpace {
    pub levels: Vec<SimplicialSet>,
    /// `faces[n][i] : levels[n] -> levels[n-1]`; row 0 is empty.
    pub faces: Vec<Vec<SimplicialMap>>,
    /// `degens[n][i] : levels[n] -> levels[n+1]`; the top row is empty.
    pub degens: Vec<Vec<SimplicialMap>>,
}

impl SimplicialSpace {
    pub fn new(
        levels: Vec<SimplicialSet>,
        faces: Vec<Vec<SimplicialMap>>,
        degens: Vec<Vec<SimplicialMap>>,
    ) -> Result<Self> {
        let s = SimplicialSpace { levels, faces, degens };
        s.validate()?;
        Ok(s)
    }

    pub fn ext_truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn internal_truncation(&self) -> usize {
        self.levels[0].truncation()
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.ext_truncation();
        if self.faces.len() != t + 1 || self.degens.len() != t + 1 {
            return Err(SegalError::validation("structure map rows do not match levels"));
        }
        for n in 0..=t {
            if self.levels[n].truncation() != self.internal_truncation() {
                return Err(SegalError::validation("levels must share a truncation"));
            }
            let want_faces = if n == 0 { 0 } else { n + 1 };
            if self.faces[n].len() != want_faces {
                return Err(SegalError::validation(format!(
                    "level {n} must carry {want_faces} face maps"
                )));
            }
            let want_degens = if n == t { 0 } else { n + 1 };
            if self.degens[n].len() != want_degens {
                return Err(SegalError::validation(format!(
                    "level {n} must carry {want_degens} degeneracy maps"
                )));
            }
            for (i, f) in self.faces[n].iter().enumerate() {
                if f.source != self.levels[n] || f.target != self.levels[n - 1] {
                    return Err(SegalError::validation(format!(
                        "face {i} at level {n} has wrong endpoints"
                    )));
                }
                f.validate()?;
            }
            for (i, s) in self.degens[n].iter().enumerate() {
                if s.source != self.levels[n] || s.target != self.levels[n + 1] {
                    return Err(SegalError::validation(format!(
                        "degeneracy {i} at level {n} has wrong endpoints"
                    )));
                }
                s.validate()?;
            }
        }
        // Simplicial identities between the external maps.
        for n in 2..=t {
            for j in 1..=n {
                for i in 0..j {
                    if self.faces[n - 1][i].compose(&self.faces[n][j])
                        != self.faces[n - 1][j - 1].compose(&self.faces[n][i])
                    {
                        return Err(SegalError::validation(format!(
                            "face identity fails at level {n}: d{i} d{j}"
                        )));
                    }
                }
            }
        }
        for n in 0..t.saturating_sub(1) {
            for i in 0..=n {
                for j in i..=n {
                    if self.degens[n + 1][i].compose(&self.degens[n][j])
                        != self.degens[n + 1][j + 1].compose(&self.degens[n][i])
                    {
                        return Err(SegalError::validation(format!(
                            "degeneracy identity fails at level {n}: s{i} s{j}"
                        )));
                    }
                }
            }
        }
        for n in 0..t {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let left = self.faces[n + 1][i].compose(&self.degens[n][j]);
                    let right = if i == j || i == j + 1 {
                        SimplicialMap::identity(&self.levels[n])
                    } else if i < j {
                        self.degens[n - 1][j - 1].compose(&self.faces[n][i])
                    } else {
                        self.degens[n - 1][j].compose(&self.faces[n][i - 1])
                    };
                    if left != right {
                        return Err(SegalError::validation(format!(
                            "mixed identity fails at level {n}: d{i} s{j}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The structure map `levels[n] -> levels[m]` induced by `op : [m] -> [n]`.
    pub fn external_operator(&self, op: &Monotone) -> SimplicialMap {
        let (missed, word) = op.factorize();
        let mut cur = op.target;
        let mut map = SimplicialMap::identity(&self.levels[cur]);
        for &i in missed.iter().rev() {
            map = self.faces[cur][i].compose(&map);
            cur -= 1;
        }
        for &j in word.iter().rev() {
            map = self.degens[cur][j].compose(&map);
            cur += 1;
        }
        debug_assert_eq!(cur, op.source_dim());
        map
    }
}

#[derive(Clone, Debug)]
pub struct SpaceMap {
    pub source: SimplicialSpace,
    pub target: SimplicialSpace,
    pub maps: Vec<SimplicialMap>,
}

impl SpaceMap {
    pub fn new(source: SimplicialSpace, target: SimplicialSpace, maps: Vec<SimplicialMap>) -> Result<Self> {
        let m = SpaceMap { source, target, maps };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.source.ext_truncation();
        if self.target.ext_truncation() != t || self.maps.len() != t + 1 {
            return Err(SegalError::validation("level map count mismatch"));
        }
        for n in 0..=t {
            if self.maps[n].source != self.source.levels[n]
                || self.maps[n].target != self.target.levels[n]
            {
                return Err(SegalError::validation(format!("level {n} map has wrong endpoints")));
            }
            self.maps[n].validate()?;
        }
        for n in 1..=t {
            for i in 0..=n {
                if self.target.faces[n][i].compose(&self.maps[n])
                    != self.maps[n - 1].compose(&self.source.faces[n][i])
                {
                    return Err(SegalError::validation(format!(
                        "map does not commute with d{i} at level {n}"
                    )));
                }
            }
        }
        for n in 0..t {
            for i in 0..=n {
                if self.target.degens[n][i].compose(&self.maps[n])
                    != self.maps[n + 1].compose(&self.source.degens[n][i])
                {
                    return Err(SegalError::validation(format!(
                        "map does not commute with s{i} at level {n}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The constant simplicial space on `x`.
pub fn constant_space(x: &SimplicialSet, ext_truncation: usize) -> SimplicialSpace {
    let id = SimplicialMap::identity(x);
    let levels = vec![x.clone(); ext_truncation + 1];
    let faces = (0..=ext_truncation)
        .map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] })
        .collect();
    let degens = (0..=ext_truncation)
        .map(|n| if n == ext_truncation { Vec::new() } else { vec![id.clone(); n + 1] })
        .collect();
    SimplicialSpace { levels, faces, degens }
}

/// Levelwise-discrete simplicial space on the simplices of `x`: level n is
/// the discrete set of n-simplices.
pub fn c_star(x: &SimplicialSet) -> Result<SimplicialSpace> {
    let t = x.truncation();
    let mut levels = Vec::with_capacity(t + 1);
    for n in 0..=t {
        let names: Vec<String> = x.all_simplices(n).iter().map(|r| x.ref_name(r)).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        levels.push(crate::build::discrete(&refs, t));
    }
    let discrete_map = |n: usize,
                        dst: &SimplicialSet,
                        image_of: &dyn Fn(&SimplexRef) -> SimplexRef|
     -> SimplicialMap {
        let mut images: Vec<Vec<SimplexRef>> = vec![Vec::new(); t + 1];
        for r in x.all_simplices(n) {
            let g = dst
                .gen_by_name(&x.ref_name(&image_of(&r)))
                .expect("image simplex is tabulated");
            images[0].push(SimplexRef::of(g));
        }
        SimplicialMap::new(levels[n].clone(), dst.clone(), images)
            .expect("discrete maps are simplicial")
    };
    let mut faces: Vec<Vec<SimplicialMap>> = Vec::with_capacity(t + 1);
    let mut degens: Vec<Vec<SimplicialMap>> = Vec::with_capacity(t + 1);
    for n in 0..=t {
        if n == 0 {
            faces.push(Vec::new());
        } else {
            faces.push(
                (0..=n)
                    .map(|i| discrete_map(n, &levels[n - 1], &|r| x.face(i, r)))
                    .collect(),
            );
        }
        if n == t {
            degens.push(Vec::new());
        } else {
            degens.push(
                (0..=n)
                    .map(|i| {
                        discrete_map(n, &levels[n + 1], &|r| crate::simplex::degenerate(i, r))
                    })
                    .collect(),
            );
        }
    }
    SimplicialSpace::new(levels, faces, degens)
}

/// The diagonal simplicial set of a simplicial space: level n consists of
/// the internal n-simplices of the external level n.
pub fn diagonal(space: &SimplicialSpace, budget: usize) -> Result<Tabulated<SimplexRef>> {
    let t = space.ext_truncation();
    if space.internal_truncation() < t {
        return Err(SegalError::validation(
            "diagonal needs internal truncation at least the external one",
        ));
    }
    let elems: Vec<Vec<SimplexRef>> =
        (0..=t).map(|n| space.levels[n].all_simplices(n)).collect();
    let sp1 = space.clone();
    let sp2 = space.clone();
    let sp3 = space.clone();
    from_tabulated(
        t,
        elems,
        move |i, m, r: &SimplexRef| {
            let ext = sp1.faces[m][i].apply(r);
            sp1.levels[m - 1].face(i, &ext)
        },
        move |i, m, r: &SimplexRef| {
            let ext = sp2.degens[m][i].apply(r);
            crate::simplex::degenerate(i, &ext)
        },
        move |m, r: &SimplexRef| format!("{}@{}", sp3.levels[m].ref_name(r), m),
        budget,
    )
}

/// Diagonal applied to a map of spaces.
pub fn diagonal_map(
    f: &SpaceMap,
    dsrc: &Tabulated<SimplexRef>,
    ddst: &Tabulated<SimplexRef>,
) -> SimplicialMap {
    let t = f.source.ext_truncation();
    let images = (0..=t)
        .map(|m| {
            dsrc.sset
                .gens_of_dim(m)
                .map(|g| {
                    let r = dsrc.of_ref(&SimplexRef::of(g));
                    ddst.to_ref(m, &f.maps[m].apply(r))
                })
                .collect()
        })
        .collect();
    SimplicialMap::new_unchecked(dsrc.sset.clone(), ddst.sset.clone(), images)
        .expect("diagonal images are well formed")
}

/// The right adjoint of the diagonal on a simplicial set `z`: level n is the
/// exponential `z^{Δ^n}`, with external maps by precomposition.
pub struct DStar {
    pub space: SimplicialSpace,
    pub exps: Vec<Exponential>,
}

pub fn d_star(z: &SimplicialSet, ext_truncation: usize, budget: usize) -> Result<DStar> {
    let exps: Vec<Exponential> =
        (0..=ext_truncation).map(|n| exponential(n, z, budget)).collect::<Result<_>>()?;
    let levels: Vec<SimplicialSet> = exps.iter().map(|e| e.sset().clone()).collect();
    let mut faces: Vec<Vec<SimplicialMap>> = Vec::with_capacity(ext_truncation + 1);
    let mut degens: Vec<Vec<SimplicialMap>> = Vec::with_capacity(ext_truncation + 1);
    for n in 0..=ext_truncation {
        if n == 0 {
            faces.push(Vec::new());
        } else {
            faces.push(
                (0..=n)
                    .map(|i| exps[n].precompose(&Monotone::coface(n, i), &exps[n - 1]))
                    .collect::<Result<_>>()?,
            );
        }
        if n == ext_truncation {
            degens.push(Vec::new());
        } else {
            degens.push(
                (0..=n)
                    .map(|i| exps[n].precompose(&Monotone::codegeneracy(n, i), &exps[n + 1]))
                    .collect::<Result<_>>()?,
            );
        }
    }
    let space = SimplicialSpace::new(levels, faces, degens)?;
    Ok(DStar { space, exps })
}

impl DStar {
    /// The counit `diag(d_star z) -> z`: evaluate at the diagonal simplex.
    /// Assumes the external truncation matches the internal one.
    pub fn counit(&self, diag: &Tabulated<SimplexRef>) -> SimplicialMap {
        let z = &self.exps[0].base;
        debug_assert_eq!(self.space.ext_truncation(), z.truncation());
        let images = (0..=self.space.ext_truncation())
            .map(|m| {
                diag.sset
                    .gens_of_dim(m)
                    .map(|g| {
                        let r = diag.of_ref(&SimplexRef::of(g));
                        let h: &HomElem = self.exps[m].tab.of_ref(r);
                        let top = SimplexRef::of(crate::simplex::Gen { dim: m, idx: 0 });
                        let at = self.exps[m].pair_ref(m, top.clone(), top);
                        self.exps[m].eval_elem(h, &at)
                    })
                    .collect()
            })
            .collect();
        SimplicialMap::new(diag.sset.clone(), z.clone(), images).expect("counit is simplicial")
    }
}

/// The unit `b -> d_star(diag b)` of the diagonal adjunction, levelwise
/// `b_n -> (diag b)^{Δ^n}`.
pub fn space_unit(
    b: &SimplicialSpace,
    diag_b: &Tabulated<SimplexRef>,
    dsb: &DStar,
) -> Result<SpaceMap> {
    let t = b.ext_truncation();
    let trunc = b.internal_truncation();
    let mut maps = Vec::with_capacity(t + 1);
    for n in 0..=t {
        let exp = &dsb.exps[n];
        let mut images: Vec<Vec<SimplexRef>> = vec![Vec::new(); trunc + 1];
        for m in 0..=trunc {
            for g in b.levels[n].gens_of_dim(m) {
                let r = SimplexRef::of(g);
                let h: HomElem = (0..=trunc)
                    .map(|d| {
                        exp.prod_gens(m, d)
                            .into_iter()
                            .map(|(a, c)| {
                                let k = a.dim();
                                let c_op = Monotone::new(
                                    crate::homs::delta_vertex_values(&exp.delta_of(n), &c),
                                    n,
                                );
                                let ext = b.external_operator(&c_op).apply(&r);
                                let a_op = Monotone::new(
                                    crate::homs::delta_vertex_values(&exp.delta_of(m), &a),
                                    m,
                                );
                                diag_b.to_ref(k, &b.levels[k].eval(&ext, &a_op))
                            })
                            .collect()
                    })
                    .collect();
                images[m].push(exp.tab.to_ref(m, &h));
            }
        }
        maps.push(SimplicialMap::new(
            b.levels[n].clone(),
            exp.sset().clone(),
            images,
        )?);
    }
    SpaceMap::new(b.clone(), dsb.space.clone(), maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{circle, point};

    #[test]
    fn constant_space_validates() {
        let s1 = circle(3).unwrap();
        let c = constant_space(&s1, 3);
        c.validate().unwrap();
        let d = diagonal(&c, 1 << 20).unwrap();
        // Diagonal of a constant space is the space itself.
        assert_eq!(d.sset.gen_counts(), s1.gen_counts());
        let h = crate::homology::homology_range(&d.sset, 2).unwrap();
        assert_eq!(h[1].rank, 1);
    }

    #[test]
    fn levelwise_discrete_diagonal_recovers_the_set() {
        let s1 = circle(3).unwrap();
        let cs = c_star(&s1).unwrap();
        cs.validate().unwrap();
        let d = diagonal(&cs, 1 << 20).unwrap();
        for m in 0..=3 {
            assert_eq!(d.sset.total_count(m), s1.total_count(m), "m={m}");
        }
        let h = crate::homology::homology_range(&d.sset, 2).unwrap();
        assert_eq!(h[0].rank, 1);
        assert_eq!(h[1].rank, 1);
        assert_eq!(h[2].rank, 0);
    }

    #[test]
    fn d_star_of_point() {
        let pt = point(2);
        let ds = d_star(&pt, 2, 1 << 20).unwrap();
        for l in &ds.space.levels {
            assert!(l.is_discrete());
            assert_eq!(l.gen_count(0), 1);
        }
    }

    #[test]
    fn diagonal_adjunction_triangle() {
        // For b = c_star(S^1): the composite
        //   diag b -> diag(d_star(diag b)) -> diag b
        // of the diagonalized unit with the counit is the identity.
        let s1 = circle(3).unwrap();
        let b = c_star(&s1).unwrap();
        let db = diagonal(&b, 1 << 20).unwrap();
        let dsb = d_star(&db.sset, 3, 1 << 22).unwrap();
        let unit = space_unit(&b, &db, &dsb).unwrap();
        let ddsb = diagonal(&dsb.space, 1 << 22).unwrap();
        let dunit = diagonal_map(&unit, &db, &ddsb);
        dunit.validate().unwrap();
        let counit = dsb.counit(&ddsb);
        let comp = counit.compose(&dunit);
        assert_eq!(comp, SimplicialMap::identity(&db.sset));
    }
}
