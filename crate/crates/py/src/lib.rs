//! Python bindings: the core objects (simplicial sets, finite groups, group
//! actions) plus the full job runner used by the CLI.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use segal_core::group::SimplicialGroup;
use segal_core::verdict::Verdict;

const DEFAULT_BUDGET: usize = 1 << 22;

fn err(e: segal_core::SegalError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn sig_pairs(sigs: &[segal_core::homology::HomologySignature]) -> Vec<(usize, Vec<String>)> {
    sigs.iter().map(|s| (s.rank, s.torsion.clone())).collect()
}

/// A finitely presented simplicial set, truncated at a fixed dimension.
#[pyclass(frozen)]
struct SimplicialSet {
    inner: segal_core::sset::SimplicialSet,
}

#[pymethods]
impl SimplicialSet {
    #[staticmethod]
    fn point(truncation: usize) -> Self {
        SimplicialSet { inner: segal_core::build::point(truncation) }
    }

    #[staticmethod]
    fn delta(n: usize, truncation: usize) -> PyResult<Self> {
        Ok(SimplicialSet { inner: segal_core::build::delta(n, truncation).map_err(err)? })
    }

    #[staticmethod]
    fn boundary(n: usize, truncation: usize) -> PyResult<Self> {
        Ok(SimplicialSet { inner: segal_core::build::boundary(n, truncation).map_err(err)? })
    }

    #[staticmethod]
    fn horn(n: usize, i: usize, truncation: usize) -> PyResult<Self> {
        Ok(SimplicialSet { inner: segal_core::build::horn(n, i, truncation).map_err(err)? })
    }

    #[staticmethod]
    fn circle(truncation: usize) -> PyResult<Self> {
        Ok(SimplicialSet { inner: segal_core::build::circle(truncation).map_err(err)? })
    }

    /// Classifying space of a finite group, truncated.
    #[staticmethod]
    fn classifying_space(group: &FiniteGroup, truncation: usize) -> PyResult<Self> {
        let sg = SimplicialGroup::constant(&group.inner, truncation);
        let wb = segal_core::group::wbar(&sg, DEFAULT_BUDGET).map_err(err)?;
        Ok(SimplicialSet { inner: wb.sset })
    }

    /// Parses and fully validates the JSON presentation format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let j: segal_core::io::SSetJson =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(SimplicialSet { inner: segal_core::io::sset_from_json(&j).map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&segal_core::io::sset_to_json(&self.inner))
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn truncation(&self) -> usize {
        self.inner.truncation()
    }

    /// Nondegenerate generator counts per dimension.
    fn gen_counts(&self) -> Vec<usize> {
        self.inner.gen_counts()
    }

    /// Simplex count in one dimension, degenerate simplices included.
    fn total_count(&self, m: usize) -> usize {
        self.inner.total_count(m)
    }

    fn product(&self, other: &SimplicialSet) -> PyResult<Self> {
        let p = segal_core::limits::product(&self.inner, &other.inner, DEFAULT_BUDGET)
            .map_err(err)?;
        Ok(SimplicialSet { inner: p.sset })
    }

    fn disjoint_union(&self, other: &SimplicialSet) -> Self {
        SimplicialSet { inner: self.inner.disjoint_union(&other.inner) }
    }

    fn skeleton(&self, n: usize) -> Self {
        SimplicialSet { inner: self.inner.skeleton(n) }
    }

    /// Integer homology signatures `H_0 .. H_up_to` as (rank, torsion) pairs,
    /// capped at the degree the truncation determines.
    fn homology(&self, up_to: usize) -> PyResult<Vec<(usize, Vec<String>)>> {
        let capped = up_to.min(segal_core::homology::reliable_degree(&self.inner));
        let sigs = segal_core::homology::homology_range(&self.inner, capped).map_err(err)?;
        Ok(sig_pairs(&sigs))
    }

    /// Edge-path fundamental group data:
    /// (generators, relators, certified order or None, abelianization).
    fn pi1(&self) -> PyResult<(usize, Vec<Vec<i32>>, Option<usize>, (usize, Vec<String>))> {
        let p = segal_core::pi::pi1_presentation(&self.inner, None).map_err(err)?;
        let ab = segal_core::pi::abelianization(&p);
        let order = segal_core::pi::todd_coxeter(&p, 20_000);
        Ok((p.n_gens, p.relators.clone(), order, (ab.rank, ab.torsion)))
    }

    /// Horn-filling report up to `max_dim`, as a JSON string.
    #[pyo3(signature = (max_dim, budget = DEFAULT_BUDGET))]
    fn kan_check(&self, max_dim: usize, budget: usize) -> PyResult<String> {
        let capped = max_dim.min(self.inner.truncation().saturating_sub(1));
        let report = segal_core::kan::kan_check(&self.inner, capped, budget).map_err(err)?;
        serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!(
            "SimplicialSet(truncation={}, gen_counts={:?})",
            self.inner.truncation(),
            self.inner.gen_counts()
        )
    }
}

/// A finite group given by its multiplication table.
#[pyclass(frozen)]
struct FiniteGroup {
    inner: segal_core::group::FiniteGroup,
}

#[pymethods]
impl FiniteGroup {
    #[staticmethod]
    fn trivial() -> Self {
        FiniteGroup { inner: segal_core::group::FiniteGroup::trivial() }
    }

    #[staticmethod]
    fn cyclic(n: usize) -> Self {
        FiniteGroup { inner: segal_core::group::FiniteGroup::cyclic(n) }
    }

    #[staticmethod]
    fn symmetric(n: usize) -> Self {
        FiniteGroup { inner: segal_core::group::FiniteGroup::symmetric(n) }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let j: segal_core::io::GroupJson =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(FiniteGroup { inner: segal_core::io::group_from_json(&j).map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&segal_core::io::group_to_json(&self.inner))
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn __repr__(&self) -> String {
        format!("FiniteGroup(order={})", self.inner.order())
    }
}

/// A simplicial set with a level-preserving action of a constant simplicial
/// group.
#[pyclass(frozen)]
struct GSpace {
    inner: segal_core::gspace::GSpace,
}

#[pymethods]
impl GSpace {
    #[staticmethod]
    fn trivial(x: &SimplicialSet, group: &FiniteGroup) -> PyResult<Self> {
        let sg = SimplicialGroup::constant(&group.inner, x.inner.truncation());
        Ok(GSpace { inner: segal_core::gspace::trivial_action(&x.inner, &sg).map_err(err)? })
    }

    #[staticmethod]
    fn translation(group: &FiniteGroup, truncation: usize) -> PyResult<Self> {
        let sg = SimplicialGroup::constant(&group.inner, truncation);
        Ok(GSpace { inner: segal_core::gspace::translation(&sg, DEFAULT_BUDGET).map_err(err)? })
    }

    #[getter]
    fn truncation(&self) -> usize {
        self.inner.truncation()
    }

    fn underlying(&self) -> SimplicialSet {
        SimplicialSet { inner: self.inner.x.clone() }
    }

    /// Strict quotient of the underlying space by the action.
    fn quotient(&self) -> PyResult<SimplicialSet> {
        let (q, _) = segal_core::gspace::gspace_quotient(&self.inner).map_err(err)?;
        Ok(SimplicialSet { inner: q })
    }

    /// Homotopy quotient (total space of the associated bundle over the
    /// classifying space).
    fn borel(&self) -> PyResult<SimplicialSet> {
        let b = segal_core::gspace::borel(&self.inner, DEFAULT_BUDGET).map_err(err)?;
        Ok(SimplicialSet { inner: b.sset })
    }

    /// Runs the bar-construction unstraightening and both direction checks;
    /// returns a JSON string {"verdict", "report", "cross_check"}.
    #[pyo3(signature = (ext_truncation, up_to, fib_depth = 3, ex_stage = 1, budget = DEFAULT_BUDGET))]
    fn unstraighten(
        &self,
        ext_truncation: usize,
        up_to: usize,
        fib_depth: usize,
        ex_stage: usize,
        budget: usize,
    ) -> PyResult<String> {
        let un = segal_core::gspace::unstraighten(
            &self.inner,
            ext_truncation,
            up_to,
            fib_depth,
            ex_stage,
            budget,
        )
        .map_err(err)?;
        let verdict = un.report.verdict.and(un.cross);
        let payload = serde_json::json!({
            "verdict": verdict,
            "report": un.report,
            "cross_check": un.cross,
        });
        serde_json::to_string(&payload).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!(
            "GSpace(truncation={}, group_order={})",
            self.inner.truncation(),
            self.inner.g.levels[0].order()
        )
    }
}

/// Checks that the bar construction of a finite group is a Segal group.
/// Returns the verdict as a string.
#[pyfunction]
#[pyo3(signature = (group, truncation, up_to, budget = DEFAULT_BUDGET))]
fn check_bar_is_segal_group(
    group: &FiniteGroup,
    truncation: usize,
    up_to: usize,
    budget: usize,
) -> PyResult<String> {
    let sg = SimplicialGroup::constant(&group.inner, truncation);
    let bar = segal_core::gspace::bar_group(&sg, truncation, budget).map_err(err)?;
    let report =
        segal_core::segal::is_segal_group(&bar.space, up_to, up_to, budget).map_err(err)?;
    Ok(report.verdict.to_string())
}

/// Runs one CLI-equivalent job. `tokens` mixes input file paths (ending in
/// .json) and positional arguments, exactly like the command line. Returns
/// (report_json, exit_code).
#[pyfunction]
#[pyo3(signature = (command, tokens = Vec::new(), truncation = 5, up_to = 3, ex_stage = 1, budget = 1_000_000, fib_depth = 3))]
#[allow(clippy::too_many_arguments)]
fn run_job(
    command: &str,
    tokens: Vec<String>,
    truncation: usize,
    up_to: usize,
    ex_stage: usize,
    budget: usize,
    fib_depth: usize,
) -> (String, i32) {
    let (args, inputs) = segal_core::job::split_tokens(&tokens);
    let spec = segal_core::job::JobSpec {
        command: command.to_string(),
        args,
        inputs,
        params: segal_core::io::Params { truncation, up_to, ex_stage, budget, fib_depth },
    };
    let out = segal_core::job::run_job(&spec);
    (out.report.to_json_string(), out.exit_code)
}

#[pymodule]
fn segal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<SimplicialSet>()?;
    m.add_class::<FiniteGroup>()?;
    m.add_class::<GSpace>()?;
    m.add_function(wrap_pyfunction!(check_bar_is_segal_group, m)?)?;
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    m.add("CERTIFIED", Verdict::Certified.to_string())?;
    m.add("CONSISTENT", Verdict::Consistent.to_string())?;
    m.add("REFUTED", Verdict::Refuted.to_string())?;
    Ok(())
}
