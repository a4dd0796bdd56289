use std::collections::HashSet;

use bowditch_core::sampling::{box_triple, stream, uniform_disc};
use bowditch_core::tol::is_real_interval;
use bowditch_core::*;
use rand::Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sample(rng: &mut impl Rng, i: u64) -> CharacterTriple {
    match i % 3 {
        0 => CharacterTriple::from_xy(
            c(rng.random_range(2.05..3.5), rng.random_range(-0.8..0.8)),
            c(rng.random_range(-3.5..3.5), rng.random_range(-3.5..3.5)),
            rng.random::<bool>(),
        ),
        1 => box_triple(rng, 3.0),
        _ => CharacterTriple::from_xy(
            uniform_disc(rng, 2.0),
            uniform_disc(rng, 4.0),
            rng.random::<bool>(),
        ),
    }
}

fn slopes(bound: i64) -> impl Iterator<Item = Slope> {
    (0..=bound).flat_map(move |q| (-bound..=bound).filter_map(move |p| Slope::new(p, q).ok()))
}

#[test]
fn bq_verdicts_survive_brute_force() {
    let mut rng = stream(77, 0);
    let mut bq = 0;
    for i in 0..300 {
        let t = sample(&mut rng, i);
        let cl = bq_classify(&t, 0.5, 20_000).unwrap();
        if cl.verdict != Verdict::BQ {
            continue;
        }
        bq += 1;
        let low: HashSet<Slope> = cl.low_trace_vertices.iter().map(|v| v.vertex).collect();
        for s in slopes(40) {
            let tr = trace_at_slope(&t, s).unwrap();
            assert!(!is_real_interval(tr), "{t}: real trace {tr} at {s}");
            assert!(tr.norm() >= 0.5, "{t}: small trace {tr} at {s}");
            if tr.norm() <= 2.0 - 1e-9 {
                assert!(low.contains(&s), "{t}: low vertex {s} ({tr}) was pruned");
            }
        }
    }
    assert!(bq > 30, "only {bq} BQ samples");
}

#[test]
fn witnesses_are_true_traces() {
    let mut rng = stream(78, 0);
    for i in 0..300 {
        let t = sample(&mut rng, i);
        for cl in [
            bq_classify(&t, 0.5, 5_000).unwrap(),
            classify_with_reduction(&t, 0.5, 5_000, 500).unwrap(),
        ] {
            let Some(w) = cl.witness else { continue };
            let direct = trace_at_slope(&t, w.slope).unwrap();
            assert!((direct - w.trace).norm() <= 1e-7 * (1.0 + direct.norm()));
            match w.kind {
                WitnessKind::RealTrace => assert!(is_real_interval(w.trace)),
                WitnessKind::SmallTrace => assert!(w.trace.norm() < 0.5),
            }
        }
    }
}

#[test]
fn decided_verdicts_are_stable_under_larger_budgets() {
    let mut rng = stream(79, 0);
    for i in 0..200 {
        let t = sample(&mut rng, i);
        let small = bq_classify(&t, 0.5, 50).unwrap();
        if small.verdict == Verdict::Unknown {
            continue;
        }
        for budget in [100, 1_000, 10_000] {
            assert_eq!(bq_classify(&t, 0.5, budget).unwrap().verdict, small.verdict);
        }
    }
}

#[test]
fn random_flip_walks_match_direct_traces() {
    let mut rng = stream(80, 0);
    for _ in 0..100 {
        let t = box_triple(&mut rng, 3.0);
        let mut tri = FareyTriangle::BASE;
        let mut traces = t.coords();
        let mut last = 3;
        for _ in 0..9 {
            // Never undo the previous flip: going back would subtract two
            // nearly equal large products.
            let i = loop {
                let i = rng.random_range(0..3);
                if i != last {
                    break i;
                }
            };
            last = i;
            tri = tri.flip(i).unwrap();
            let [a, b, w] = [traces[(i + 1) % 3], traces[(i + 2) % 3], traces[i]];
            traces[i] = a * b - w;
        }
        for k in 0..3 {
            let direct = trace_at_slope(&t, tri.0[k]).unwrap();
            let scale = 1.0 + direct.norm();
            assert!((direct - traces[k]).norm() <= 1e-8 * scale, "{} vs {}", direct, traces[k]);
        }
    }
}

#[test]
fn traces_are_invariant_under_slope_sign() {
    let t = CharacterTriple::from_xy(c(0.3, 2.2), c(-1.4, 0.7), true);
    for s in slopes(12) {
        let neg = Slope::new(-s.p(), -s.q()).unwrap();
        assert_eq!(trace_at_slope(&t, s).unwrap(), trace_at_slope(&t, neg).unwrap());
    }
}

#[test]
fn reduction_outcomes_decrease_strictly() {
    let mut rng = stream(81, 0);
    for i in 0..300 {
        let t = sample(&mut rng, i);
        let out = reduce_trace(&t, 0.5, 1e-12, 500).unwrap();
        let mut last = t.coords().iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
        for step in &out.steps {
            assert!(step.trace.norm() < last);
            last = step.trace.norm();
            assert!(step.triple.residual() <= 1e-6 * (1.0 + step.triple.coords().iter().map(|v| v.norm_sqr()).sum::<f64>()));
        }
        if out.status == ReductionStatus::ReachedRealInterval {
            assert!(is_real_interval(out.final_trace));
        }
    }
}
