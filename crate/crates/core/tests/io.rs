mod common;

use std::path::Path;

use common::*;
use pdsdp_core::instances::{toy_suite, SensorObjective, SensorScene};
use pdsdp_core::io::{
    parse_extended, parse_problem, parse_sdpa, parse_sidecar, parse_solution, write_extended, write_sdpa,
    write_sidecar, write_solution, GroundTruth, ProblemFormat,
};
use pdsdp_core::{check_solution, solve_pd_sdp, SdpError, SdpProblem, SolverConfig};

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 4.0 * f64::EPSILON * a.abs().max(b.abs())
}

/// Same data up to a few roundings in every coefficient.
fn assert_same_problem(a: &SdpProblem, b: &SdpProblem) {
    assert_eq!((a.n(), a.m(), a.p()), (b.n(), b.m(), b.p()));
    let n = a.n();
    for i in 0..n {
        for j in 0..=i {
            assert!(close(a.c().get(i, j), b.c().get(i, j)), "C({i},{j})");
        }
    }
    let (da, db) = (dense_operator(a), dense_operator(b));
    for (x, y) in da.iter().zip(db.iter()) {
        assert!(close(*x, *y), "{x} vs {y}");
    }
    assert_eq!(a.b(), b.b());
    assert_eq!(a.h(), b.h());
}

#[test]
fn sdpa_round_trip_on_random_problems() {
    let mut g = rng(17);
    for k in 0..30 {
        let prob = random_problem(1 + k % 9, 1 + k % 4, 0, &mut g);
        let back = parse_sdpa(&write_sdpa(&prob).unwrap()).unwrap();
        assert_same_problem(&prob, &back);
        assert_eq!(back.objective_sign(), -1.0);
    }
}

#[test]
fn sdpa_rejects_inequalities() {
    let prob = random_problem(3, 1, 1, &mut rng(0));
    assert!(matches!(write_sdpa(&prob), Err(SdpError::InvalidProblem(_))));
}

#[test]
fn sdpa_blocks_are_embedded_diagonally() {
    let text = "\"two blocks\n1\n2\n2 -1\n1.0\n0 1 1 1 1.0\n0 1 1 2 0.5\n0 2 1 1 3.0\n1 1 2 2 2.0\n1 2 1 1 1.0\n";
    let prob = parse_sdpa(text).unwrap();
    assert_eq!(prob.n(), 3);
    assert_eq!(prob.c().get(0, 0), -1.0);
    assert_eq!(prob.c().get(1, 0), -0.5);
    assert_eq!(prob.c().get(2, 2), -3.0);
    assert_eq!(prob.c().get(2, 0), 0.0);
    let row = prob.a()[0].to_sym(3);
    assert_eq!(row.get(1, 1), 2.0);
    assert_eq!(row.get(2, 2), 1.0);
}

#[test]
fn sdpa_errors_carry_line_numbers() {
    let text = "1\n1\n2\n1.0\n1 1 2 1 1.0\n";
    match parse_sdpa(text) {
        Err(SdpError::Parse { line, .. }) => assert_eq!(line, 5),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn extended_round_trip_on_random_problems() {
    let mut g = rng(23);
    for k in 0..50 {
        let prob = random_problem(1 + k % 11, 1 + k % 4, k % 3, &mut g);
        let back = parse_extended(&write_extended(&prob).unwrap()).unwrap();
        assert_same_problem(&prob, &back);
        assert_eq!(back.objective_sign(), prob.objective_sign());
    }
}

#[test]
fn extended_round_trip_on_toys() {
    for prob in toy_suite() {
        let back = parse_extended(&write_extended(&prob).unwrap()).unwrap();
        assert_same_problem(&prob, &back);
        assert_eq!(back.name(), prob.name());
    }
}

#[test]
fn extended_rejects_unknown_fields() {
    let text = r#"{"n": 1, "objective": [[1, 1, 1.0]], "surprise": true}"#;
    assert!(parse_extended(text).is_err());
}

#[test]
fn solution_document_round_trip() {
    let prob = toy_suite().remove(0);
    let result = solve_pd_sdp(&prob, &SolverConfig::default()).unwrap();
    let report = check_solution(&prob, &result.x, &result.y, 1e-3).unwrap();
    let doc = parse_solution(&write_solution(&result, &report).unwrap()).unwrap();
    assert_eq!(doc.status, result.status);
    assert_eq!(doc.iterations, result.iterations);
    assert_eq!(doc.y_vector(), result.y);
    assert_eq!(doc.rank_path, result.rank_path);
    let x = doc.x_matrix().unwrap();
    assert!(frobenius_distance(&x, &result.x) <= 1e-15 * result.x.frobenius_norm().max(1.0));
}

#[test]
fn sidecar_round_trip() {
    let scene = SensorScene::random(4, 3, 0.01, 9).unwrap();
    let truth = GroundTruth::Sensor {
        seed: 9,
        noise: 0.01,
        objective: SensorObjective::MinTraceY,
        scene,
    };
    assert_eq!(parse_sidecar(&write_sidecar(&truth).unwrap()).unwrap(), truth);
}

#[test]
fn format_follows_extension() {
    assert_eq!(ProblemFormat::from_path(Path::new("a/theta1.dat-s")), ProblemFormat::Sdpa);
    assert_eq!(ProblemFormat::from_path(Path::new("x.dat")), ProblemFormat::Sdpa);
    assert_eq!(ProblemFormat::from_path(Path::new("x.json")), ProblemFormat::Extended);
    assert_eq!("sdpa".parse::<ProblemFormat>(), Ok(ProblemFormat::Sdpa));
    assert!("csv".parse::<ProblemFormat>().is_err());
}

#[test]
fn parse_problem_names_sdpa_input() {
    let prob = random_problem(3, 2, 0, &mut rng(4));
    let text = write_sdpa(&prob).unwrap();
    assert_eq!(parse_problem(&text, ProblemFormat::Sdpa, "given").unwrap().name(), "given");
}
