use std::process::Command;

use hochschild::algebras::builtin;
use hochschild::complexes::{Coefficients, Normalization};
use hochschild::homology::Engine;
use hochschild_cli::chart::ChartFormat;
use hochschild_cli::jobs::{run_job, AlgebraSource, FiltrationName, JobError, JobSpec, Kind, Payload};
use proptest::prelude::*;

fn spec(kind: Kind, algebra: &str, n: usize) -> JobSpec {
    JobSpec::new(kind, AlgebraSource::Builtin(algebra.into()), n)
}

fn kinds() -> impl Strategy<Value = Kind> {
    prop_oneof![
        Just(Kind::Hh),
        Just(Kind::Cohh),
        Just(Kind::Ext),
        Just(Kind::Ss),
        Just(Kind::Burghelea),
        Just(Kind::Poincare),
        Just(Kind::Chart)
    ]
}

proptest! {
    #[test]
    fn job_specs_round_trip(
        kind in kinds(),
        algebra in prop_oneof![Just("a1"), Just("exterior1"), Just("d8_group_algebra")],
        dsl in any::<bool>(),
        max_n in 0usize..9,
        max_u in proptest::option::of(1u32..40),
        max_r in proptest::option::of(1u32..6),
        filtration in proptest::option::of(prop_oneof![
            Just(FiltrationName::May), Just(FiltrationName::Abelianizing), Just(FiltrationName::AbelianizingToMay)
        ]),
        ground in any::<bool>(),
        normalized in any::<bool>(),
        format in prop_oneof![Just(ChartFormat::Ascii), Just(ChartFormat::Json), Just(ChartFormat::Svg)],
        reference in proptest::option::of("[a-z0-9+/()^ -]{0,12}"),
        group in proptest::option::of(prop_oneof![Just("d8".to_string()), Just("c4".to_string())]),
    ) {
        let source = if dsl {
            AlgebraSource::Dsl(hochschild_cli::dsl::serialize(&builtin(algebra).unwrap().description()))
        } else {
            AlgebraSource::Builtin(algebra.into())
        };
        let mut j = JobSpec::new(kind, source, max_n);
        j.max_u = max_u;
        j.max_r = max_r;
        j.filtration = filtration;
        j.coefficients = if ground { Coefficients::Ground } else { Coefficients::SelfCoefficients };
        j.normalization = if normalized { Normalization::Normalized } else { Normalization::Full };
        j.format = format;
        j.reference = reference;
        j.group = group;
        prop_assert_eq!(JobSpec::from_json(&j.to_json()).unwrap(), j);
    }
}

#[test]
fn validation() {
    let invalid = |j: &JobSpec| matches!(j.validate(), Err(JobError::Invalid(_)));
    assert!(invalid(&spec(Kind::Ss, "a1", 2)));
    assert!(invalid(&spec(Kind::Poincare, "a1", 2)));
    let mut j = spec(Kind::Hh, "a1", 2);
    j.max_u = Some(0);
    assert!(invalid(&j));
    let mut j = spec(Kind::Ss, "a1", 2);
    j.filtration = Some(FiltrationName::Abelianizing);
    j.coefficients = Coefficients::Ground;
    assert!(invalid(&j));
    j.coefficients = Coefficients::SelfCoefficients;
    assert!(j.validate().is_ok());
    let mut j = spec(Kind::Burghelea, "a1", 2);
    j.group = Some("q8".into());
    assert!(run_job(&j, &Engine::default()).is_err());
    assert!(run_job(&spec(Kind::Hh, "a7", 2), &Engine::default()).is_err());
    assert!(JobSpec::from_json("{\"kind\": \"hh\"}").is_err());
}

#[test]
fn algebra_arguments() {
    let dir = tempfile::tempdir().unwrap();
    let d = builtin("truncpoly2").unwrap().description();
    let json = dir.path().join("t.json");
    std::fs::write(&json, serde_json::to_string(&d).unwrap()).unwrap();
    let dsl = dir.path().join("t.alg");
    std::fs::write(&dsl, hochschild_cli::dsl::serialize(&d)).unwrap();
    let fp = builtin("truncpoly2").unwrap().fingerprint();
    for arg in [json.to_str().unwrap(), dsl.to_str().unwrap(), "truncpoly2", "builtin:truncpoly2"] {
        let src = AlgebraSource::from_arg(arg).unwrap();
        assert_eq!(src.load().unwrap().fingerprint(), fp, "{arg}");
    }
    assert!(matches!(AlgebraSource::from_arg("/no/such/file"), Err(JobError::Io { .. })));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{").unwrap();
    assert!(matches!(AlgebraSource::from_arg(bad.to_str().unwrap()), Err(JobError::Json(_))));
}

#[test]
fn jobs_report_their_comparisons() {
    let e = Engine::default();
    let mut j = spec(Kind::Poincare, "exterior1", 6);
    j.reference = Some("dual-numbers".into());
    let out = run_job(&j, &e).unwrap();
    assert!(out.all_passed() && out.comparisons.len() == 1);

    j.reference = Some("3/(1-s)".into());
    assert!(!run_job(&j, &e).unwrap().all_passed());

    let mut j = spec(Kind::Burghelea, "a1", 3);
    j.group = Some("d8".into());
    j.reference = Some("d8-centralizers".into());
    let out = run_job(&j, &e).unwrap();
    assert!(out.all_passed());
    let Payload::Burghelea(r) = &out.payload else { panic!() };
    assert_eq!(r.hh, vec![5, 9, 13, 17]);

    let mut j = spec(Kind::Ss, "a1", 2);
    j.filtration = Some(FiltrationName::May);
    j.coefficients = Coefficients::Ground;
    let out = run_job(&j, &e).unwrap();
    assert!(out.all_passed());
    let Payload::Spectral(s) = &out.payload else { panic!() };
    assert_eq!(s.e_infinity, s.abutment);
    assert_eq!(s.abutment, vec![1, 2, 2]);
    assert!(out.render().unwrap().contains("E_inf = abutment"));

    let mut j = spec(Kind::Ext, "a1", 2);
    j.max_u = Some(6);
    j.format = ChartFormat::Json;
    let out = run_job(&j, &e).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out.render().unwrap()).unwrap();
    assert_eq!(v["job"]["kind"], "ext");
}

fn cli(args: &[&str]) -> (Option<i32>, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_hochschild")).args(args).output().unwrap();
    (o.status.code(), String::from_utf8_lossy(&o.stdout).into_owned(), String::from_utf8_lossy(&o.stderr).into_owned())
}

#[test]
fn exit_codes() {
    let (code, out, _) = cli(&["poincare", "--algebra", "exterior1", "--max-n", "5", "--reference", "dual-numbers"]);
    assert_eq!(code, Some(0));
    assert!(out.contains("[ok]"));

    let (code, out, _) = cli(&["poincare", "--algebra", "exterior1", "--max-n", "3", "--reference", "1"]);
    assert_eq!(code, Some(1));
    assert!(out.contains("FAIL"));

    let (code, _, err) = cli(&["hh", "--algebra", "/no/such/algebra"]);
    assert_eq!(code, Some(2));
    assert!(err.starts_with("error:"));

    let (code, out, _) = cli(&["ss", "--filtration", "may", "--max-n", "2", "--print-job"]);
    assert_eq!(code, Some(0));
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("job.json");
    std::fs::write(&job, &out).unwrap();
    let (code, out, _) = cli(&["hh", "--job-file", job.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap_or(serde_json::Value::Null);
    assert!(v.is_null(), "the job file, not --format, decides the output");

    let (code, out, _) =
        cli(&["chart", "--coefficients", "ground", "--max-n", "4", "--max-u", "12", "--format", "json", "--jobs", "2"]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["points"][0]["dim"], 1);

    let cache = tempfile::tempdir().unwrap();
    let c = cache.path().to_str().unwrap();
    let (code, first, _) = cli(&["hh", "--max-n", "2", "--cache-dir", c]);
    assert_eq!(code, Some(0));
    let (_, second, _) = cli(&["hh", "--max-n", "2", "--cache-dir", c]);
    assert_eq!(first, second);
    assert!(cache.path().join("v1").is_dir());
}
