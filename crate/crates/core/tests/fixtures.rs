use std::path::PathBuf;

use factoriality::groebner::QuotientDimension;
use factoriality::poly::{parse_poly_file, Field, ProjectivePoint};
use factoriality::singularity::{analyze_two_primes, AnalysisConfig, HypersurfaceSpec, PrimeAgreement};

fn fixture(name: &str) -> HypersurfaceSpec {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.poly"));
    let text = std::fs::read_to_string(&path).unwrap();
    HypersurfaceSpec::new(parse_poly_file(&text).unwrap().poly).unwrap()
}

fn vertex() -> ProjectivePoint {
    ProjectivePoint::from_ints(&Field::Rational, &[0, 0, 0, 0, 1]).unwrap()
}

/// (fixture, number of singular points, multiplicity, ordinary, Milnor number)
const EXPECTED: [(&str, usize, u32, bool, Option<u64>); 5] = [
    ("single_point_d4_m2", 1, 2, true, Some(1)),
    ("plane_pencil_t1_delta2", 4, 2, true, Some(1)),
    ("kollar", 1, 2, false, None),
    ("cone_fermat4", 1, 4, true, Some(81)),
    ("fermat_quintic", 0, 0, true, None),
];

#[test]
fn both_primes_agree_on_every_fixture() {
    for (name, k, m, ordinary, milnor) in EXPECTED {
        let spec = fixture(name);
        let run = analyze_two_primes(&spec, &AnalysisConfig::default()).unwrap();
        assert_eq!(run.agreement, PrimeAgreement::Agree, "{name}");
        for a in std::iter::once(&run.primary).chain(run.secondary.as_ref()) {
            assert!(a.complete, "{name} at {}", a.prime);
            assert_eq!(a.reports.len(), k, "{name} at {}", a.prime);
            for r in &a.reports {
                assert_eq!((r.multiplicity, r.ordinary), (m, ordinary), "{name}");
                assert!(r.isolated());
                if let Some(mu) = milnor {
                    assert_eq!(r.milnor, QuotientDimension::Finite(mu), "{name}");
                }
                assert!(r.lifted.is_some(), "{name}: {} has no rational lift", r.point);
            }
        }
    }
}

#[test]
fn single_point_fixtures_are_singular_at_the_vertex() {
    for name in ["single_point_d4_m2", "kollar", "cone_fermat4"] {
        let run = analyze_two_primes(&fixture(name), &AnalysisConfig::default()).unwrap();
        assert_eq!(run.primary.reports[0].lifted, Some(vertex()), "{name}");
    }
}

#[test]
fn plane_fixtures_contain_the_plane() {
    assert!(fixture("plane_pencil_t1_delta2").poly().in_coordinate_ideal(&[0, 1]));
    assert!(fixture("kollar").poly().in_coordinate_ideal(&[0, 1]));
    assert!(!fixture("single_point_d4_m2").poly().in_coordinate_ideal(&[0, 1]));
}

#[test]
fn pencil_fixture_nodes_are_the_frame() {
    let run = analyze_two_primes(&fixture("plane_pencil_t1_delta2"), &AnalysisConfig::default()).unwrap();
    let mut lifted: Vec<ProjectivePoint> = run.primary.reports.iter().map(|r| r.lifted.clone().unwrap()).collect();
    lifted.sort();
    let mut frame: Vec<ProjectivePoint> = [[0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1], [0, 0, 1, 1, 1]]
        .iter()
        .map(|r| ProjectivePoint::from_ints(&Field::Rational, r).unwrap())
        .collect();
    frame.sort();
    assert_eq!(lifted, frame);
}
