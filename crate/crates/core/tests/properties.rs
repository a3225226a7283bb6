mod common;

use gizatullin_core::autgraph::{reduce_word, torus_action, Move, MoveWord};
use gizatullin_core::document::{parse_document, SurfaceDocument};
use gizatullin_core::extdiv::{build_from_presentation, chart_matrices, reverse_extdiv, ChartMatrix};
use gizatullin_core::invariants::{config_equal, orbit_count, symmetry_group, Ambient, PointSet};
use gizatullin_core::report::{run_command, Command};
use gizatullin_core::zigzag::{reverse_zigzag, zero_pair_shift, Zigzag};
use gizatullin_core::{cyc_parse, CycNumber};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::*;

/// Value at ζ_N = exp(2πi/N), as (re, im).
fn eval(x: &CycNumber) -> (f64, f64) {
    let n = x.conductor() as f64;
    x.coefficients().iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
        let c = c.to_f64().unwrap();
        let t = std::f64::consts::TAU * k as f64 / n;
        (re + c * t.cos(), im + c * t.sin())
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    let scale = 1.0 + a.0.abs().max(a.1.abs()).max(b.0.abs()).max(b.1.abs());
    (a.0 - b.0).abs() < 1e-9 * scale && (a.1 - b.1).abs() < 1e-9 * scale
}

fn element(conductor: u32) -> impl Strategy<Value = CycNumber> {
    prop::collection::vec((-5i64..=5, 1i64..=4), 1..=4).prop_map(move |terms| {
        terms.iter().enumerate().fold(CycNumber::zero(conductor), |acc, (k, &(p, q))| {
            let c = CycNumber::from_rational(BigRational::new(p.into(), q.into()), conductor);
            acc + CycNumber::zeta_power(k as i64 * 5 + p, conductor) * c
        })
    })
}

fn conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 3, 4, 5, 8, 12])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_operations_match_complex_numbers(
        (a, b) in conductor().prop_flat_map(|n| (element(n), element(n)))
    ) {
        let (ea, eb) = (eval(&a), eval(&b));
        prop_assert!(close(eval(&(&a + &b)), (ea.0 + eb.0, ea.1 + eb.1)));
        let prod = (ea.0 * eb.0 - ea.1 * eb.1, ea.0 * eb.1 + ea.1 * eb.0);
        prop_assert!(close(eval(&(&a * &b)), prod));
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        }
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn display_parses_back(a in conductor().prop_flat_map(element)) {
        prop_assert_eq!(cyc_parse(&a.to_string(), a.conductor()).unwrap(), a);
    }

    #[test]
    fn zigzag_reversal(tail in prop::collection::vec(-6i64..=-2, 1..=9)) {
        let mut w = vec![0, 0];
        w.extend(&tail);
        let z = Zigzag::new(w).unwrap();
        let r = reverse_zigzag(&z).unwrap();
        prop_assert_eq!(reverse_zigzag(&r).unwrap(), z.clone());
        let rev: Vec<i64> = tail.iter().rev().copied().collect();
        prop_assert_eq!(&r.weights()[2..], &rev[..]);
        for t in 2..=z.n() + 1 {
            let (s, _) = zero_pair_shift(&z, t).unwrap();
            let mut expected = tail[..t - 2].to_vec();
            expected.extend([0, 0]);
            expected.extend(&tail[t - 2..]);
            prop_assert_eq!(s.weights(), &expected[..]);
        }
    }

    #[test]
    fn built_divisors_contract_to_a_fiber(seed in any::<u64>()) {
        let (_, e) = random_built(&mut StdRng::seed_from_u64(seed), 3);
        let (w, edges) = fiber_graph(&e);
        prop_assert!(contracts_to_zero_curve(&w, &edges));
        prop_assert!(e.is_realizable());
    }

    #[test]
    fn reversal_respects_matching(seed in any::<u64>()) {
        let (_, e) = random_minus_one(&mut StdRng::seed_from_u64(seed), 3);
        let r = reverse_extdiv(&e).unwrap();
        prop_assert!(r.is_up_to_scalar());
        for i in 2..=e.n() {
            prop_assert_eq!(e.component_type(i), r.component_type(e.mirror(i)));
            prop_assert_eq!(e.feather_count(i), r.feather_count(e.mirror(i)));
        }
        let back = reverse_extdiv(&r).unwrap();
        prop_assert_eq!(back.weights(), e.weights());
        prop_assert_eq!(back.outer_indices(), e.outer_indices());
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let (p, e) = random_built(&mut StdRng::seed_from_u64(seed), 3);
        for doc in [SurfaceDocument::from_presentation(p), SurfaceDocument::from_divisor(e)] {
            let text = doc.to_string();
            let again = parse_document(&text).unwrap();
            prop_assert_eq!(&again, &doc);
            prop_assert_eq!(again.to_string(), text);
        }
    }

    #[test]
    fn reports_are_stable(seed in any::<u64>()) {
        let (p, _) = random_minus_one(&mut StdRng::seed_from_u64(seed), 3);
        let doc = SurfaceDocument::from_presentation(p);
        for cmd in [Command::Analyze, Command::Orbits, Command::Autgraph] {
            let once = run_command(&cmd, &doc).map(|r| r.to_json());
            let twice = run_command(&cmd, &doc).map(|r| r.to_json());
            prop_assert_eq!(once, twice);
        }
    }

    #[test]
    fn chart_transitions_are_unimodular(seed in any::<u64>()) {
        let (p, _) = random_built(&mut StdRng::seed_from_u64(seed), 3);
        let charts = chart_matrices(&p);
        for m in charts.values() {
            prop_assert_eq!(m.det(), 1);
            prop_assert_eq!(m.compose(&m.inverse()), ChartMatrix::IDENTITY);
        }
    }

    #[test]
    fn torus_identity_and_inverse(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (p, _) = random_built(&mut rng, 2);
        let one = CycNumber::one(CONDUCTOR);
        prop_assert_eq!(torus_action(&p, &one, &one).unwrap(), p.clone());
        let (a, b) = (random_point(&mut rng), random_point(&mut rng));
        let moved = torus_action(&p, &a, &b).unwrap();
        let back = torus_action(&moved, &a.inverse().unwrap(), &b.inverse().unwrap()).unwrap();
        prop_assert_eq!(back, p);
        prop_assert!(build_from_presentation(&moved).is_ok());
    }

    #[test]
    fn symmetry_group_is_stable_under_scaling(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = random_subset24(&mut rng);
        let pts: Vec<CycNumber> = a.iter().map(|&x| root24(x)).collect();
        let set = PointSet::new(pts.clone(), Ambient::Star).unwrap();
        let alpha = root24((2, 7));
        let scaled = PointSet::new(pts.iter().map(|p| &alpha * p).collect(), Ambient::Star).unwrap();
        prop_assert_eq!(symmetry_group(&set).unwrap().order(), symmetry_group(&scaled).unwrap().order());
        prop_assert_eq!(orbit_count(&set).unwrap(), orbit_count(&scaled).unwrap());
        prop_assert!(config_equal(&set, &scaled).unwrap().is_some());
    }

    #[test]
    fn word_reduction(moves in prop::collection::vec((0u8..4, any::<bool>()), 0..=12)) {
        let w = MoveWord(
            moves
                .iter()
                .map(|&(k, inv)| {
                    let m = match k {
                        0 | 1 => Move::reversion(CycNumber::from_integer(k as i64, 1)),
                        2 => Move::fibered("h"),
                        _ => Move::fibered("g"),
                    };
                    if inv { m.inverse() } else { m }
                })
                .collect(),
        );
        let r = reduce_word(&w);
        prop_assert_eq!(reduce_word(&r), r.clone());
        prop_assert!(r.len() <= w.len());
        prop_assert!(!r.0.windows(2).any(|p| p[0].inverse() == p[1]));
        let mut both = w.0.clone();
        both.extend(w.inverse().0);
        prop_assert!(reduce_word(&MoveWord(both)).is_empty());
    }
}
