//! Batch job runner shared by the command line and the Python bindings.
//!
//! A job names a command, positional arguments, input files, and numeric
//! parameters; running it produces a deterministic report plus an exit
//! code. Exit codes: 0 all CERTIFIED (or a pure construction succeeded),
//! 1 some check REFUTED, 2 best verdict CONSISTENT, 3 input or budget
//! error.

use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::build::{boundary, circle, delta, horn};
use crate::error::{Result, SegalError};
use crate::functor::{apply_levelwise, build_tower, functor_audit, EndoFunctor};
use crate::group::{w_total, wbar, SimplicialGroup};
use crate::gspace::{bar_action, bar_group, borel, borel_holim_check, gspace_quotient, straighten, unstraighten, GMap};
use crate::homology::{homology_range, reliable_degree, HomologySignature};
use crate::io::{
    gspace_from_json, gspace_to_json, map_from_json, mapfile_from_json, signature_rows,
    space_from_json, space_to_json, spacemap_from_json, spacemap_to_json, sset_from_json,
    sset_to_json, CospanJson, GSpaceJson, MapFileJson, Params, Report, SpaceJson, SpaceMapJson,
    SSetJson, SCHEMA_VERSION,
};
use crate::kan::{is_fibration, kan_check};
use crate::pi::{abelianization, pi1_presentation, todd_coxeter};
use crate::segal::{
    cross_check_inverted, is_segal_group, is_segal_group_action, is_segal_space,
    loops_comparison,
};
use crate::space::{d_star, diagonal};
use crate::sset::SimplicialSet;
use crate::verdict::Verdict;

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: String,
    /// Positional arguments that are not files: builder names, functor
    /// names, numbers.
    pub args: Vec<String>,
    pub inputs: Vec<String>,
    pub params: Params,
}

#[derive(Clone, Debug)]
pub struct JobOutcome {
    pub report: Report,
    pub exit_code: i32,
}

pub fn run_job(spec: &JobSpec) -> JobOutcome {
    let (verdict, payload, exit_code) = match dispatch(spec) {
        Ok((verdict, payload)) => {
            let code = match verdict {
                None => 0,
                Some(Verdict::Certified) => 0,
                Some(Verdict::Consistent) => 2,
                Some(Verdict::Refuted) => 1,
            };
            (verdict, payload, code)
        }
        Err(e) => (None, json!({ "error": e.to_string() }), 3),
    };
    let report = Report {
        schema: format!("segal/report/{SCHEMA_VERSION}"),
        tool: "segal".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: spec.command.clone(),
        args: spec.args.clone(),
        inputs: spec.inputs.clone(),
        params: spec.params,
        verdict,
        payload,
    };
    JobOutcome { report, exit_code }
}

fn read_json<T: DeserializeOwned>(path: &str) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SegalError::validation(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| SegalError::validation(format!("{path}: {e}")))
}

fn input<'a>(spec: &'a JobSpec, i: usize, kind: &str) -> Result<&'a str> {
    spec.inputs
        .get(i)
        .map(|s| s.as_str())
        .ok_or_else(|| SegalError::validation(format!("missing input file ({kind})")))
}

fn arg<'a>(spec: &'a JobSpec, i: usize, kind: &str) -> Result<&'a str> {
    spec.args
        .get(i)
        .map(|s| s.as_str())
        .ok_or_else(|| SegalError::validation(format!("missing argument ({kind})")))
}

fn num(text: &str, kind: &str) -> Result<usize> {
    text.parse()
        .map_err(|_| SegalError::validation(format!("{kind} must be a number, got {text:?}")))
}

fn load_sset(spec: &JobSpec, i: usize) -> Result<SimplicialSet> {
    sset_from_json(&read_json::<SSetJson>(input(spec, i, "simplicial set")?)?)
}

fn load_space(spec: &JobSpec, i: usize) -> Result<crate::space::SimplicialSpace> {
    space_from_json(&read_json::<SpaceJson>(input(spec, i, "simplicial space")?)?)
}

fn load_spacemap(spec: &JobSpec, i: usize) -> Result<crate::space::SpaceMap> {
    spacemap_from_json(&read_json::<SpaceMapJson>(input(spec, i, "space map")?)?)
}

fn load_gspace(spec: &JobSpec, i: usize) -> Result<crate::gspace::GSpace> {
    gspace_from_json(&read_json::<GSpaceJson>(input(spec, i, "group action")?)?)
}

pub fn parse_functor(name: &str, default_ex: usize) -> Result<EndoFunctor> {
    let parts: Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["identity"] => Ok(EndoFunctor::Identity),
        ["empty"] => Ok(EndoFunctor::Empty),
        ["cosk", c] => Ok(EndoFunctor::Cosk(num(c, "coskeleton stage")?)),
        ["ex", k] => Ok(EndoFunctor::Ex(num(k, "extension stage")?)),
        ["postnikov", n] => {
            Ok(EndoFunctor::Postnikov { n: num(n, "tower stage")?, k: default_ex })
        }
        ["postnikov", n, k] => Ok(EndoFunctor::Postnikov {
            n: num(n, "tower stage")?,
            k: num(k, "extension stage")?,
        }),
        _ => Err(SegalError::validation(format!(
            "unknown functor {name:?}; use identity, empty, cosk:N, ex:K, postnikov:N[:K]"
        ))),
    }
}

fn object_payload(x: &SimplicialSet) -> Value {
    json!({
        "object": sset_to_json(x),
        "counts": x.gen_counts(),
    })
}

fn homology_payload(x: &SimplicialSet, up_to: usize) -> Result<Value> {
    let cap = up_to.min(reliable_degree(x));
    Ok(signature_rows(&homology_range(x, cap)?))
}

fn signatures(x: &SimplicialSet, cap: usize) -> Result<Vec<HomologySignature>> {
    homology_range(x, cap.min(reliable_degree(x)))
}

fn dispatch(spec: &JobSpec) -> Result<(Option<Verdict>, Value)> {
    let p = spec.params;
    match spec.command.as_str() {
        "build" => build_cmd(spec),
        "check-segal-space" => {
            let b = load_space(spec, 0)?;
            let r = is_segal_space(&b, p.up_to, p.fib_depth, p.budget)?;
            Ok((Some(r.verdict), serde_json::to_value(&r)?))
        }
        "check-segal-group" => {
            let b = load_space(spec, 0)?;
            let r = is_segal_group(&b, p.up_to, p.fib_depth, p.budget)?;
            Ok((Some(r.verdict), serde_json::to_value(&r)?))
        }
        "check-action" => {
            let pi = load_spacemap(spec, 0)?;
            let r = is_segal_group_action(&pi, p.up_to, p.fib_depth, p.ex_stage, p.budget)?;
            Ok((Some(r.verdict), serde_json::to_value(&r)?))
        }
        "cross-check" => {
            let pi = load_spacemap(spec, 0)?;
            let v = cross_check_inverted(&pi, p.up_to, p.fib_depth, p.ex_stage, p.budget)?;
            Ok((Some(v), json!({ "verdict": v })))
        }
        "homology" => {
            let x = load_sset(spec, 0)?;
            Ok((None, json!({ "homology": homology_payload(&x, p.up_to)? })))
        }
        "pi1" => {
            let x = load_sset(spec, 0)?;
            let pres = pi1_presentation(&x, None)?;
            let ab = abelianization(&pres);
            Ok((
                None,
                json!({
                    "generators": pres.gen_labels,
                    "relators": pres.relators,
                    "order": todd_coxeter(&pres, 20_000),
                    "abelianization": { "rank": ab.rank, "torsion": ab.torsion },
                }),
            ))
        }
        "kan" => {
            let x = load_sset(spec, 0)?;
            let cap = p.up_to.min(x.truncation().saturating_sub(1));
            let r = kan_check(&x, cap, p.budget)?;
            Ok((Some(r.verdict), serde_json::to_value(&r)?))
        }
        "fibration" => {
            let f = mapfile_from_json(&read_json::<MapFileJson>(input(spec, 0, "map")?)?)?;
            let cap = p.up_to.min(f.source.truncation().saturating_sub(1));
            let r = is_fibration(&f, cap, p.budget)?;
            Ok((Some(r.verdict), serde_json::to_value(&r)?))
        }
        "diagonal" => {
            let b = load_space(spec, 0)?;
            let d = diagonal(&b, p.budget)?;
            Ok((None, object_payload(&d.sset)))
        }
        "dstar" => {
            let z = load_sset(spec, 0)?;
            let ds = d_star(&z, p.up_to, p.budget)?;
            Ok((None, json!({ "space": space_to_json(&ds.space) })))
        }
        "unstraighten" => {
            let xg = load_gspace(spec, 0)?;
            let u = unstraighten(&xg, p.up_to, p.up_to, p.fib_depth, p.ex_stage, p.budget)?;
            let v = u.report.verdict.and(u.cross);
            Ok((
                Some(v),
                json!({
                    "report": u.report,
                    "cross": u.cross,
                    "map": spacemap_to_json(&u.action.map),
                }),
            ))
        }
        "straighten" => {
            let pi = load_spacemap(spec, 0)?;
            let grp = crate::io::group_from_json(&read_json(input(spec, 1, "group")?)?)?;
            let sg = SimplicialGroup::constant(&grp, pi.source.internal_truncation());
            let st = straighten(&pi, &sg, p.budget)?;
            Ok((None, json!({ "gspace": gspace_to_json(&st)? })))
        }
        "roundtrip" => roundtrip_cmd(spec),
        "loops" => {
            let b = load_space(spec, 0)?;
            let lv = loops_comparison(&b, p.budget)?;
            Ok((Some(lv.verdict), serde_json::to_value(&lv)?))
        }
        "audit-functor" => {
            let l = parse_functor(arg(spec, 0, "functor name")?, p.ex_stage)?;
            let a = functor_audit(&l, p.truncation, p.budget)?;
            Ok((Some(a.verdict), serde_json::to_value(&a)?))
        }
        "apply-functor" => {
            let l = parse_functor(arg(spec, 0, "functor name")?, p.ex_stage)?;
            let pi = load_spacemap(spec, 0)?;
            let (_, report) = apply_levelwise(&l, &pi, p.up_to, p.fib_depth, p.ex_stage, p.budget)?;
            Ok((
                Some(report.verdict),
                json!({ "functor": l.name(), "report": report }),
            ))
        }
        "tower" => tower_cmd(spec),
        "borel-holim" => borel_holim_cmd(spec),
        other => Err(SegalError::validation(format!("unknown command {other:?}"))),
    }
}

fn build_cmd(spec: &JobSpec) -> Result<(Option<Verdict>, Value)> {
    let p = spec.params;
    let what = arg(spec, 0, "object kind")?;
    match what {
        "delta" => {
            let n = num(arg(spec, 1, "dimension")?, "dimension")?;
            Ok((None, object_payload(&delta(n, p.truncation)?)))
        }
        "boundary" => {
            let n = num(arg(spec, 1, "dimension")?, "dimension")?;
            Ok((None, object_payload(&boundary(n, p.truncation)?)))
        }
        "horn" => {
            let n = num(arg(spec, 1, "dimension")?, "dimension")?;
            let i = num(arg(spec, 2, "horn index")?, "horn index")?;
            Ok((None, object_payload(&horn(n, i, p.truncation)?)))
        }
        "circle" => Ok((None, object_payload(&circle(p.truncation)?))),
        "bar" => {
            let grp = crate::io::group_from_json(&read_json(input(spec, 0, "group")?)?)?;
            let sg = SimplicialGroup::constant(&grp, p.truncation);
            let bg = bar_group(&sg, p.up_to, p.budget)?;
            Ok((None, json!({ "space": space_to_json(&bg.space) })))
        }
        "w" => {
            let grp = crate::io::group_from_json(&read_json(input(spec, 0, "group")?)?)?;
            let sg = SimplicialGroup::constant(&grp, p.truncation);
            let w = w_total(&sg, p.budget)?;
            Ok((None, object_payload(&w.sset)))
        }
        "wbar" => {
            let grp = crate::io::group_from_json(&read_json(input(spec, 0, "group")?)?)?;
            let sg = SimplicialGroup::constant(&grp, p.truncation);
            let wb = wbar(&sg, p.budget)?;
            Ok((None, object_payload(&wb.sset)))
        }
        "borel" => {
            let xg = load_gspace(spec, 0)?;
            let b = borel(&xg, p.budget)?;
            Ok((None, object_payload(&b.sset)))
        }
        other => Err(SegalError::validation(format!(
            "unknown build target {other:?}; use delta, boundary, horn, circle, bar, w, wbar, borel"
        ))),
    }
}

fn roundtrip_cmd(spec: &JobSpec) -> Result<(Option<Verdict>, Value)> {
    let p = spec.params;
    let xg = load_gspace(spec, 0)?;
    let a = bar_action(&xg, p.up_to, p.budget)?;
    let st = straighten(&a.map, &xg.g, p.budget)?;
    let cap = p.up_to;
    let under_out = signatures(&st.x, cap)?;
    let under_in = signatures(&xg.x, cap)?;
    let (q, _) = gspace_quotient(&st)?;
    let quot_out = signatures(&q, cap)?;
    let quot_in = signatures(&borel(&xg, p.budget)?.sset, cap)?;
    let depth = under_out.len().min(under_in.len());
    let qdepth = quot_out.len().min(quot_in.len());
    let ok = under_out[..depth] == under_in[..depth] && quot_out[..qdepth] == quot_in[..qdepth];
    let v = if ok { Verdict::Certified } else { Verdict::Refuted };
    Ok((
        Some(v),
        json!({
            "underlying": {
                "input": signature_rows(&under_in),
                "straightened": signature_rows(&under_out),
            },
            "quotient": {
                "borel": signature_rows(&quot_in),
                "straightened": signature_rows(&quot_out),
            },
            "verdict": v,
        }),
    ))
}

fn tower_cmd(spec: &JobSpec) -> Result<(Option<Verdict>, Value)> {
    let p = spec.params;
    let xg = load_gspace(spec, 0)?;
    let n_max = match spec.args.first() {
        Some(t) => num(t, "tower height")?,
        None => 2,
    };
    let tower = build_tower(&xg, p.up_to, n_max, p.ex_stage, p.budget)?;
    let mut stages = Vec::new();
    for (n, stage) in tower.stages.iter().enumerate() {
        let mut levels = Vec::new();
        for x in &stage.source.levels {
            levels.push(signature_rows(&signatures(x, p.up_to.min(2))?));
        }
        stages.push(json!({ "stage": n, "levels": levels }));
    }
    let v = if tower.all_ok() { Verdict::Certified } else { Verdict::Refuted };
    Ok((
        Some(v),
        json!({
            "ex_stage": tower.ex_stage,
            "stages": stages,
            "checks": tower.checks,
        }),
    ))
}

fn borel_holim_cmd(spec: &JobSpec) -> Result<(Option<Verdict>, Value)> {
    let p = spec.params;
    let j: CospanJson = read_json(input(spec, 0, "cospan")?)?;
    let x = gspace_from_json(&j.x)?;
    let y = gspace_from_json(&j.y)?;
    let z = gspace_from_json(&j.z)?;
    let f = GMap::new(&x, &y, map_from_json(&x.x, &y.x, &j.f, "left leg")?)?;
    let h = GMap::new(&z, &y, map_from_json(&z.x, &y.x, &j.h, "right leg")?)?;
    let r = borel_holim_check(&f, &h, p.fib_depth, p.ex_stage, p.budget)?;
    Ok((Some(r.verdict), serde_json::to_value(&r)?))
}

/// Splits raw positional tokens into non-file arguments and input files.
/// Input files are recognized by their `.json` suffix.
pub fn split_tokens(tokens: &[String]) -> (Vec<String>, Vec<String>) {
    let (inputs, args): (Vec<String>, Vec<String>) =
        tokens.iter().cloned().partition(|t| t.ends_with(".json"));
    (args, inputs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::gspace::trivial_action;
    use std::io::Write;

    fn write_temp(name: &str, text: &str) -> String {
        let dir = std::env::temp_dir().join("segal-job-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(text.as_bytes()).unwrap();
        path.to_string_lossy().into_owned()
    }

    fn spec(command: &str, args: &[&str], inputs: &[String], params: Params) -> JobSpec {
        JobSpec {
            command: command.into(),
            args: args.iter().map(|s| s.to_string()).collect(),
            inputs: inputs.to_vec(),
            params,
        }
    }

    #[test]
    fn homology_of_the_circle_reports_two_lines() {
        let path = write_temp(
            "circle.json",
            &serde_json::to_string(&sset_to_json(&circle(2).unwrap())).unwrap(),
        );
        let out = run_job(&spec("homology", &[], &[path], Params::default()));
        assert_eq!(out.exit_code, 0);
        let rows = &out.report.payload["homology"];
        assert_eq!(rows[0]["rank"], 1);
        assert_eq!(rows[1]["rank"], 1);
    }

    #[test]
    fn malformed_json_exits_three() {
        let path = write_temp("broken.json", "{ not json");
        let out = run_job(&spec("homology", &[], &[path], Params::default()));
        assert_eq!(out.exit_code, 3);
        assert!(out.report.payload["error"].as_str().unwrap().contains("broken.json"));
    }

    #[test]
    fn unknown_command_exits_three() {
        let out = run_job(&spec("frobnicate", &[], &[], Params::default()));
        assert_eq!(out.exit_code, 3);
    }

    #[test]
    fn build_delta_reports_counts() {
        let mut p = Params::default();
        p.truncation = 3;
        let out = run_job(&spec("build", &["delta", "2"], &[], p));
        assert_eq!(out.exit_code, 0);
        assert_eq!(out.report.payload["counts"], json!([3, 3, 1, 0]));
    }

    #[test]
    fn check_segal_group_on_bar_z2_is_certified() {
        let mut p = Params::default();
        p.truncation = 3;
        p.up_to = 2;
        let grp = FiniteGroup::cyclic(2);
        let gpath = write_temp(
            "z2.json",
            &serde_json::to_string(&crate::io::group_to_json(&grp)).unwrap(),
        );
        let built = run_job(&spec("build", &["bar"], &[gpath], p));
        assert_eq!(built.exit_code, 0);
        let spath = write_temp(
            "bar_z2.json",
            &serde_json::to_string(&built.report.payload["space"]).unwrap(),
        );
        let out = run_job(&spec("check-segal-group", &[], &[spath], p));
        assert_eq!(out.exit_code, 0, "report: {}", out.report.to_json_string());
        assert_eq!(out.report.verdict, Some(Verdict::Certified));
    }

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let path = write_temp(
            "circle_det.json",
            &serde_json::to_string(&sset_to_json(&circle(3).unwrap())).unwrap(),
        );
        let a = run_job(&spec("kan", &[], &[path.clone()], Params::default()));
        let b = run_job(&spec("kan", &[], &[path], Params::default()));
        assert_eq!(a.report.to_json_string(), b.report.to_json_string());
    }

    #[test]
    fn roundtrip_on_a_trivial_circle_action_is_certified() {
        let mut p = Params::default();
        p.truncation = 4;
        p.up_to = 2;
        let grp = FiniteGroup::cyclic(2);
        let sg = SimplicialGroup::constant(&grp, 4);
        let xg = trivial_action(&circle(4).unwrap(), &sg).unwrap();
        let path = write_temp(
            "circle_triv_z2.json",
            &serde_json::to_string(&gspace_to_json(&xg).unwrap()).unwrap(),
        );
        let out = run_job(&spec("roundtrip", &[], &[path], p));
        assert_eq!(out.exit_code, 0, "report: {}", out.report.to_json_string());
    }
}
