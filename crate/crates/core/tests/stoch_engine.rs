mod common;

use common::*;
use gross_core::grossnum::rational;
use gross_core::linalg::StationarityParams;
use gross_core::stoch::{self, delta_line, delta_tilde_at, Precision};
use gross_core::{GrossScalar, LinearForm, Magnitude, PayoffSymbol, Payoffs, Strategy};
use num_traits::Zero;
use proptest::prelude::*;

fn three_players() -> Vec<Strategy> {
    vec![s_star(), s_one(), Strategy::parse(&["0.5", "0.9", "0.3", "0.6", "0.2"]).unwrap()]
}

#[test]
fn hundred_round_gap_only_involves_t_and_s() {
    let players = pair_players();
    let v = stoch::delta_exact(&players, 0, 1, 100, Precision::Exact).unwrap();
    assert!(v.0[0].is_zero() && v.0[3].is_zero());
    assert_eq!(v.0[1], -v.0[2].clone());
    let c = rational::to_f64(&v.0[2]);
    assert!(c > 0.0);
    // frozen from an independent exact summation
    let oracle = oracle_gap(&players[0], &players[1], 100);
    assert_eq!(v.0[2], oracle[2]);
    assert!((c - 3.766_74).abs() < 1e-4, "c = {c}");
    let float = stoch::delta_exact(&players, 0, 1, 100, Precision::Float).unwrap();
    assert!((rational::to_f64(&float.0[2]) - c).abs() < 1e-12);
}

#[test]
fn line_tracks_direct_sums_past_the_threshold() {
    let players = pair_players();
    let line = delta_line(&players, 0, 1, &StationarityParams::default()).unwrap();
    let payoffs = reference_payoffs();
    let nt = line.n_tilde as u64;
    for n in [nt + 1, 2 * nt, 10 * nt] {
        let approx = delta_tilde_at(&line, &GrossScalar::from_integer(n as i64), &payoffs).unwrap().as_scalar().unwrap();
        let v = stoch::delta_exact(&players, 0, 1, n, Precision::Float).unwrap();
        let exact = LinearForm::from_vector(&stoch::to_gross(&v)).evaluate(&payoffs).unwrap();
        let rel = (to_f64(&approx) - to_f64(&exact)).abs() / to_f64(&exact).abs();
        assert!(rel < 1e-9, "n = {n}: {rel:e}");
    }
}

#[test]
fn infinite_gap_grows_without_bound() {
    let line = delta_line(&pair_players(), 0, 1, &StationarityParams::default()).unwrap();
    let gap = delta_tilde_at(&line, &s("g"), &reference_payoffs()).unwrap().as_scalar().unwrap();
    assert_eq!(gap.classify(), Magnitude::Infinite);
    assert!(gap.is_positive());
    let symbolic = delta_tilde_at(&line, &s("g"), &Payoffs::symbolic()).unwrap();
    assert_eq!(symbolic.coefficient(PayoffSymbol::T), &-symbolic.coefficient(PayoffSymbol::S).clone());
    assert_eq!(symbolic.coefficient(PayoffSymbol::T).classify(), Magnitude::Infinite);
}

#[test]
fn two_player_lines_ignore_r_and_p() {
    let line = delta_line(&pair_players(), 1, 0, &StationarityParams::default()).unwrap();
    for form in [&line.alpha, &line.beta] {
        assert!(form.coefficient(PayoffSymbol::R).is_zero());
        assert!(form.coefficient(PayoffSymbol::P).is_zero());
    }
}

#[test]
fn three_player_gaps_sum_to_zero_and_use_a_common_threshold() {
    let players = three_players();
    let params = StationarityParams::default();
    let lines = stoch::tournament_lines(&players, &params).unwrap();
    let a = lines.delta_line(0, 1);
    let b = lines.delta_line(1, 2);
    let c = lines.delta_line(0, 2);
    assert_eq!(a.n_tilde, c.n_tilde);
    for v in [&a.g, &a.f, &b.g, &c.f] {
        assert!(v.sum().is_zero());
    }
    // gaps chain up to float rounding
    for (x, y, z) in [(&a.g, &b.g, &c.g), (&a.f, &b.f, &c.f)] {
        let drift = x.add(y).sub(z).0.iter().map(|r| rational::to_f64(r).abs()).fold(0.0, f64::max);
        assert!(drift < 1e-12, "{drift:e}");
    }
}

#[test]
fn stochastic_ranking_at_grossone() {
    let players = three_players();
    let res = stoch::tournament(&players, &reference_payoffs(), &s("g"), &StationarityParams::default()).unwrap();
    assert!(res.n_tilde.is_some());
    let ranking = res.ranking.unwrap();
    assert_eq!(ranking.len(), 3);
    assert!(ranking.iter().all(|g| g.value.classify() == Magnitude::Infinite));
    let finite = stoch::tournament(&players, &reference_payoffs(), &s("50"), &StationarityParams::default()).unwrap();
    assert!(finite.n_tilde.is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn line_is_affine_in_n(a in 0i64..50, b in 1i64..50, c in 0i64..1000, d in 1i64..1000) {
        let line = delta_line(&pair_players(), 0, 1, &StationarityParams::default()).unwrap();
        let base = s("g");
        let n1 = &(&base * &GrossScalar::from_integer(a + 1)) + &GrossScalar::from_integer(c);
        let n2 = &n1 + &(&(&base * &GrossScalar::from_integer(b)) + &GrossScalar::from_integer(d));
        let symbolic = Payoffs::symbolic();
        let diff = &delta_tilde_at(&line, &n2, &symbolic).unwrap() - &delta_tilde_at(&line, &n1, &symbolic).unwrap();
        prop_assert_eq!(diff, line.beta.scale(&(&n2 - &n1)));
    }
}
