//! Acceptance suite: each test is one exit criterion and prints one
//! pass/fail line. All value comparisons are exact (`==` on rationals);
//! there are no tolerances anywhere.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use defect_tqft::complex::{fixtures, seed_complex, SeedName};
use defect_tqft::examples::bundled_systems;
use defect_tqft::frobenius_data::{check_equation, check_system, CheckId, CoeffTag};
use defect_tqft::fuzz::{run_fuzz, run_fuzz_against, FuzzConfig};
use defect_tqft::moves::{self, Lcg64, MoveAction};
use defect_tqft::statesum::{
    evaluate_bruteforce, evaluate_contraction, normalized_invariant, raw_invariant, EvalConfig,
    EvalError, Method,
};
use defect_tqft::{BarredOrder, CurveSurfaceComplex, Scalar, SystemData};

fn system(name: &str) -> SystemData {
    bundled_systems()
        .into_iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no bundled system {name}"))
        .1
}

/// Criterion 1 — axiom suite: every bundled system passes all 35 scalar
/// equations plus the named laws, exactly, each full check in < 10 s.
#[test]
fn criterion_1_axiom_suite() {
    for (name, sys) in bundled_systems() {
        let start = Instant::now();
        let results = check_system(&sys);
        let elapsed = start.elapsed();
        let equations = results
            .iter()
            .filter(|r| matches!(r.id, CheckId::Equation(_)))
            .count();
        assert_eq!(equations, 35, "{name}: all equation ids 2..=36 ran");
        let failures: Vec<String> =
            results.iter().filter(|r| !r.passed).map(|r| r.to_string()).collect();
        assert!(failures.is_empty(), "{name}: {failures:?}");
        assert!(
            elapsed < Duration::from_secs(10),
            "{name}: check_system took {elapsed:?}, over the 10 s budget"
        );
        println!(
            "criterion 1 [{name}]: PASS - {} checks hold exactly in {elapsed:?}",
            results.len()
        );
    }
}

/// Criterion 2 — negative controls: for every bundled system, 20 seeded
/// random single-entry perturbations (+1 on a nonzero structure constant)
/// each make at least one of the 35 equations fail, with a concrete
/// witness.
#[test]
fn criterion_2_negative_controls() {
    for (name, sys) in bundled_systems() {
        let mut rng = Lcg64::new(0xD15EA5E);
        // All nonzero entries across the six tensors, as a flat menu.
        let mut menu: Vec<(CoeffTag, (usize, usize, usize))> = Vec::new();
        for tag in CoeffTag::ALL {
            for idx in sys.tensor(tag).nonzero_indices() {
                menu.push((tag, idx));
            }
        }
        assert!(!menu.is_empty());
        let mut witnessed = 0;
        for trial in 0..20 {
            let (tag, idx) = menu[rng.below(menu.len())];
            let perturbed = sys.perturbed(tag, idx, Scalar::one());
            let first_failure = (2..=36u8)
                .map(|id| check_equation(&perturbed, id).unwrap())
                .find(|r| !r.passed);
            let failure = first_failure.unwrap_or_else(|| {
                panic!("{name}, trial {trial}: perturbing {tag}{idx:?} fooled all 35 equations")
            });
            assert!(
                failure.witness.is_some() || failure.detail.is_some(),
                "{name}, trial {trial}: failure carries no evidence"
            );
            if failure.witness.is_some() {
                witnessed += 1;
            }
        }
        assert!(
            witnessed >= 15,
            "{name}: only {witnessed}/20 perturbations produced index witnesses"
        );
        println!(
            "criterion 2 [{name}]: PASS - 20/20 perturbations caught ({witnessed} with index witnesses)"
        );
    }
}

/// Criterion 3 — loop constants of the standard examples, exactly.
#[test]
fn criterion_3_loop_constants() {
    let cases: Vec<(&str, Option<Scalar>, Option<Scalar>)> = vec![
        ("gset-z2", Some(Scalar::from_int(2)), Some(Scalar::from_int(2))),
        ("gset-s3", Some(Scalar::from_int(6)), Some(Scalar::from_int(2))),
        ("matrix-2x2", Some(Scalar::from_int(2)), Some(Scalar::from_int(2))),
        ("matrix-2x3", Some(Scalar::from_int(2)), Some(Scalar::from_int(3))),
        ("trivial-defect-z2", Some(Scalar::from_int(2)), Some(Scalar::from_int(1))),
        ("matrix-1x1", Some(Scalar::from_int(1)), Some(Scalar::from_int(1))),
    ];
    for (name, rho, lambda) in cases {
        let sys = system(name);
        assert_eq!(sys.rho().cloned(), rho, "{name}: ρ");
        assert_eq!(sys.lambda().cloned(), lambda, "{name}: λ");
    }
    println!("criterion 3: PASS - ρ(K[ℤ/2])=2, ρ(K[S₃])=6, ρ(Mat₂)=2, λ(Mat₂)=2, λ(Mat₃)=3, λ(K)=1");
}

/// The small complexes (≤ 20 edges) used for oracle equivalence.
fn small_complexes() -> Vec<(String, CurveSurfaceComplex)> {
    let sphere = seed_complex(SeedName::PlainSphere);
    let (sphere_sub1, _) = moves::subdivide13(&sphere, sphere.triangles()[0]).unwrap();
    let (sphere_sub2, _) =
        moves::subdivide13(&sphere_sub1, sphere_sub1.triangles()[1]).unwrap();
    vec![
        ("plain_sphere (6 edges)".to_owned(), sphere),
        ("subdivided sphere (9 edges)".to_owned(), sphere_sub1),
        ("twice-subdivided sphere (12 edges)".to_owned(), sphere_sub2),
        ("octahedron (12 edges)".to_owned(), fixtures::octahedron()),
        ("bipyramid-3 (9 edges)".to_owned(), fixtures::bipyramid_equator(3)),
        ("bipyramid-4 (12 edges)".to_owned(), fixtures::bipyramid_equator(4)),
    ]
}

/// Criterion 4 — oracle equivalence: contraction equals brute force
/// exactly on every (≤ 20 edge complex, bundled system) pair whose
/// coloring space fits the brute-force cap; at least 12 pairs run, each
/// in under 60 s.
#[test]
fn criterion_4_oracle_equivalence() {
    let cfg = EvalConfig::default();
    let mut pairs = 0;
    let mut skipped = 0;
    for (cx_name, cx) in small_complexes() {
        assert!(cx.n_edges() <= 20, "{cx_name} exceeds the 20-edge bound");
        for (sys_name, sys) in bundled_systems() {
            let start = Instant::now();
            let brute = match evaluate_bruteforce(&sys, &cx, &cfg) {
                Ok(v) => v,
                Err(EvalError::TooLarge { .. }) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => panic!("{cx_name} × {sys_name}: {e}"),
            };
            let contract = evaluate_contraction(&sys, &cx, &cfg)
                .unwrap_or_else(|e| panic!("{cx_name} × {sys_name}: {e}"));
            let elapsed = start.elapsed();
            assert_eq!(brute, contract, "{cx_name} × {sys_name}");
            assert!(
                elapsed < Duration::from_secs(60),
                "{cx_name} × {sys_name} took {elapsed:?}"
            );
            pairs += 1;
        }
    }
    assert!(pairs >= 12, "only {pairs} pairs were feasible");
    println!(
        "criterion 4: PASS - contraction == brute force exactly on {pairs} pairs ({skipped} over the cap)"
    );
}

/// Criterion 5a — single-move scaling: on a small curve-bearing sphere,
/// for every bundled system and every applicable move, the normalized
/// invariant is unchanged and the unnormalized sum scales by exactly 1
/// (2-2), ρ (1-3), 1/ρ (3-1), λ (2-4) or 1/λ (4-2).
#[test]
fn criterion_5a_single_move_scaling() {
    let cfg = EvalConfig::default();
    // A complex where all five move kinds are applicable: subdivide one
    // triangle of the bipyramid (a degree-3 vertex appears), then split a
    // curve edge away from it (a degree-4 on-curve vertex appears).
    let base = fixtures::bipyramid_equator(3);
    let subdivided_triangle = *base
        .triangles()
        .iter()
        .find(|t| {
            let vs = t.vertices();
            vs.contains(&defect_tqft::VertexId(0)) && vs.contains(&defect_tqft::VertexId(1))
        })
        .unwrap();
    let (grown, _) = moves::subdivide13(&base, subdivided_triangle).unwrap();
    let away_edge = defect_tqft::UEdge::new(defect_tqft::VertexId(1), defect_tqft::VertexId(2));
    let (start, _) = moves::split24(&grown, away_edge).unwrap();

    let mut moves_exercised = BTreeMap::new();
    for (name, sys) in bundled_systems() {
        let base_value = normalized_invariant(&sys, &start, Method::Auto, &cfg)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        let rho = sys.rho().unwrap().clone();
        let lambda = sys.lambda().unwrap().clone();
        for action in moves::enumerate_moves(&start, true) {
            let (next, record) = moves::apply_move(&start, action).unwrap();
            let v = raw_invariant(&sys, &next, Method::Auto, &cfg).unwrap();
            let expected_factor = match record.kind {
                moves::MoveKind::Flip22 => Scalar::one(),
                moves::MoveKind::Subdivide13 => rho.clone(),
                moves::MoveKind::Merge31 => rho.recip(),
                moves::MoveKind::Split24 => lambda.clone(),
                moves::MoveKind::Merge42 => lambda.recip(),
            };
            assert_eq!(
                v.unnormalized,
                base_value.unnormalized.clone() * expected_factor,
                "{name}, {action}: unnormalized scaling"
            );
            assert_eq!(
                v.normalized, base_value.normalized,
                "{name}, {action}: normalized invariance"
            );
            *moves_exercised.entry(record.kind).or_insert(0u32) += 1;
        }
    }
    // All five move kinds must actually have been exercised.
    assert_eq!(moves_exercised.len(), 5, "kinds seen: {moves_exercised:?}");
    println!(
        "criterion 5a: PASS - every applicable move scales exactly ({moves_exercised:?})"
    );
}

/// Criterion 5b — fuzzed invariance: seeds 1–10, 200 steps each, on
/// sphere_equator and torus_meridian with the (ℤ/2,ℤ/2,ℤ/2) system and
/// the trivial-defect ℤ/2 system; the normalized invariant is exactly
/// constant at every checkpoint.
#[test]
fn criterion_5b_fuzzed_invariance() {
    let start = Instant::now();
    for seed_name in [SeedName::SphereEquator, SeedName::TorusMeridian] {
        let cx = seed_complex(seed_name);
        for sys_name in ["gset-z2", "trivial-defect-z2"] {
            let sys = system(sys_name);
            for seed in 1..=10u64 {
                let config = FuzzConfig {
                    seed,
                    steps: 200,
                    checkpoint_every: 50,
                    max_edges: None,
                    eval: EvalConfig::default(),
                };
                let report = run_fuzz(&sys, &cx, &config)
                    .unwrap_or_else(|e| panic!("{seed_name} × {sys_name} seed {seed}: {e}"));
                assert!(
                    report.passed(),
                    "{seed_name} × {sys_name} seed {seed}: {:?}",
                    report.mismatch
                );
                assert_eq!(report.steps_run, 200);
            }
            println!(
                "criterion 5b [{seed_name} × {sys_name}]: PASS - seeds 1..=10, 200 steps, value constant"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30 * 60), "fuzz suite took {elapsed:?}");
    println!("criterion 5b: PASS - full fuzz suite in {elapsed:?}");
}

/// Criterion 6 — subdivision stability: the normalized invariant is
/// identical before and after one barycentric subdivision, for every
/// bundled system the contraction engine can evaluate within budget.
#[test]
fn criterion_6_subdivision_stability() {
    // A deliberately modest budget keeps the memory footprint sane; pairs
    // over budget are reported and skipped, never weakened.
    let cfg = EvalConfig { max_tensor_entries: 1 << 22, ..EvalConfig::default() };
    let mut evaluated = 0;
    let mut skipped = Vec::new();
    for seed_name in [SeedName::PlainSphere, SeedName::PlainTorus, SeedName::SphereEquator] {
        let cx = seed_complex(seed_name);
        let sub = cx.barycentric_subdivide().unwrap();
        for (sys_name, sys) in bundled_systems() {
            let before = match normalized_invariant(&sys, &cx, Method::Contract, &cfg) {
                Ok(v) => v,
                Err(EvalError::OutOfMemoryBudget { .. }) => {
                    skipped.push(format!("{seed_name} × {sys_name}"));
                    continue;
                }
                Err(e) => panic!("{seed_name} × {sys_name}: {e}"),
            };
            let after = match normalized_invariant(&sys, &sub, Method::Contract, &cfg) {
                Ok(v) => v,
                Err(EvalError::OutOfMemoryBudget { .. }) => {
                    skipped.push(format!("subdivided {seed_name} × {sys_name}"));
                    continue;
                }
                Err(e) => panic!("subdivided {seed_name} × {sys_name}: {e}"),
            };
            assert_eq!(
                before.normalized, after.normalized,
                "{seed_name} × {sys_name}: subdivision changed the invariant"
            );
            evaluated += 1;
        }
    }
    // The dimension-≤2 systems must be evaluable on all three surfaces.
    assert!(evaluated >= 9, "only {evaluated} pairs evaluable; skipped: {skipped:?}");
    println!(
        "criterion 6: PASS - invariant stable under subdivision on {evaluated} pairs (skipped over budget: {})",
        skipped.len()
    );
}

/// Criterion 7 — ordering independence: permuting the off-curve vertex
/// order never changes the normalized invariant (10 seeded shuffles per
/// seed complex).
#[test]
fn criterion_7_ordering_independence() {
    let cfg = EvalConfig::default();
    let sys = system("gset-z2");
    for seed_name in SeedName::ALL {
        let cx = seed_complex(seed_name);
        let base = normalized_invariant(&sys, &cx, Method::Contract, &cfg).unwrap();
        let mut rng = Lcg64::new(7_000 + seed_name.as_str().len() as u64);
        for trial in 0..10 {
            let mut order: Vec<u32> = cx.off_curve_order().iter().map(|v| v.0).collect();
            rng.shuffle(&mut order);
            let permuted = cx.with_off_curve_order(order).unwrap();
            let v = normalized_invariant(&sys, &permuted, Method::Contract, &cfg).unwrap();
            assert_eq!(
                v.normalized, base.normalized,
                "{seed_name}, shuffle {trial}: ordering changed the invariant"
            );
        }
        println!("criterion 7 [{seed_name}]: PASS - 10 shuffles of the vertex order, value unchanged");
    }
}

/// Criterion 8 — convention falsification: with the deliberately wrong
/// barred-argument ordering, fuzzing on sphere_equator with the
/// non-abelian (S₃, ℤ/2, S₃) data fails within 200 steps. (The ℤ/2 data
/// cannot discriminate any ordering — all six of its tensors are symmetric
/// — so the S₃ variant is the one that exposes the convention.)
#[test]
fn criterion_8_convention_falsification() {
    let sys = system("gset-s3");
    let cx = seed_complex(SeedName::SphereEquator);
    let wrong = EvalConfig { barred_order: BarredOrder::ForwardEncounter, ..Default::default() };
    // Initial value under the wrong convention; a self-consistent baseline.
    let initial = raw_invariant(&sys, &cx, Method::Auto, &wrong).unwrap();
    let config = FuzzConfig {
        seed: 1,
        steps: 200,
        checkpoint_every: 5,
        // No growth: flips alone expose the wrong ā ordering and keep the
        // dimension-6 contractions small.
        max_edges: Some(0),
        eval: wrong,
    };
    let report = run_fuzz_against(&sys, &cx, &config, initial).unwrap();
    let mismatch = report
        .mismatch
        .expect("wrong barred ordering must break invariance within 200 steps");
    assert!(mismatch.step <= 200);
    println!(
        "criterion 8: PASS - wrong barred ordering detected at step {} (expected {}, got {})",
        mismatch.step, mismatch.expected, mismatch.actual
    );

    // Control: the correct convention survives the same walk.
    let control = FuzzConfig {
        seed: 1,
        steps: 40,
        checkpoint_every: 10,
        max_edges: Some(0),
        eval: EvalConfig::default(),
    };
    let ok = run_fuzz(&sys, &cx, &control).unwrap();
    assert!(ok.passed(), "correct convention must survive: {:?}", ok.mismatch);
}

/// Criterion 9 — derived values via the brute-force oracle only: the
/// normalized invariant of the closed-surface ℤ/2 data is 2 on the torus
/// and 1/2 on the sphere, reproduced identically on independently
/// constructed second triangulations.
#[test]
fn criterion_9_reference_values() {
    let sys = system("trivial-defect-z2");
    // The 3×3 grid torus has 2^27 colorings; raise the cap for it.
    let cfg = EvalConfig { max_colorings: 200_000_000, ..EvalConfig::default() };
    let half = Scalar::from_fraction(1, 2);
    let two = Scalar::from_int(2);

    let cases: Vec<(&str, CurveSurfaceComplex, &Scalar)> = vec![
        ("plain_sphere", seed_complex(SeedName::PlainSphere), &half),
        ("octahedron", fixtures::octahedron(), &half),
        ("plain_torus", seed_complex(SeedName::PlainTorus), &two),
        ("grid_torus 3x3", fixtures::grid_torus(3, 3), &two),
    ];
    for (name, cx, expected) in cases {
        let v = normalized_invariant(&sys, &cx, Method::Brute, &cfg)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(&v.normalized, expected, "{name}");
        println!("criterion 9 [{name}]: PASS - normalized invariant {}", v.normalized);
    }
}

/// Determinism of the full checker: byte-identical reports on repeated
/// runs, including witnesses of failing systems.
#[test]
fn checker_reports_are_deterministic() {
    let sys = system("gset-z2").perturbed(CoeffTag::Mult, (0, 1, 1), Scalar::one());
    let a = check_system(&sys);
    let b = check_system(&sys);
    assert_eq!(a, b);
    assert!(a.iter().any(|r| !r.passed));
}

/// The walk menu is complete: an action reported applicable applies, and
/// one reported inapplicable returns the matching error when forced.
#[test]
fn move_enumeration_is_complete() {
    let cx = seed_complex(SeedName::SphereEquator);
    let menu = moves::enumerate_moves(&cx, true);
    for action in &menu {
        assert!(moves::apply_move(&cx, *action).is_ok(), "{action} enumerated but fails");
    }
    // Forced inapplicable representatives.
    for e in cx.edges().keys() {
        if !menu.contains(&MoveAction::Flip22(*e)) {
            assert!(moves::flip22(&cx, *e).is_err());
        }
    }
    for v in cx.vertex_ids() {
        if !menu.contains(&MoveAction::Merge31(v)) {
            assert!(moves::merge31(&cx, v).is_err());
        }
        if !menu.contains(&MoveAction::Merge42(v)) {
            assert!(moves::merge42(&cx, v).is_err());
        }
    }
}
