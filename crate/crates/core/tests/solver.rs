mod common;

use common::*;
use gross_core::grossnum::rational;
use gross_core::linalg::Vec4;
use gross_core::solver::{
    self, gammas_from_parts, solve, DeltaSource, ModelSpec, PayoffRange, ShiftParams, SolutionCase, SolverError,
};
use gross_core::{GrossScalar, Magnitude, PayoffSymbol, Strategy};
use proptest::prelude::*;

fn quartiles() -> [GrossScalar; 3] {
    ["0.25", "0.5", "0.75"].map(s)
}

#[test]
fn hundred_rounds_interval_for_t() {
    let sol = solver::solve_model(&pair_players(), &ModelSpec::new(s("20"), s("100"), 0)).unwrap();
    assert_eq!(sol.rival.index, 1);
    assert_eq!(sol.model.source, DeltaSource::Exact);
    let t = sol.solution.pivot_interval();
    assert_eq!(t.lower, s("0"));
    // T ∈ (S, S + 20/c) with c the hundred-round coefficient
    let c = sol.model.coefficient(PayoffSymbol::T);
    assert_eq!(t.upper, s("20").checked_div(&c).unwrap());
    assert!((to_f64(&t.upper) - 20.0 / 3.766_74).abs() < 1e-3);
    assert_eq!(sol.solution.range(PayoffSymbol::R), &PayoffRange::Free);
    assert_eq!(sol.solution.range(PayoffSymbol::P), &PayoffRange::Free);
    assert_eq!(sol.solution.range(PayoffSymbol::S), &PayoffRange::Fixed(s("0")));
    assert!(sol.solution.notes.is_empty());
    for q in quartiles() {
        let report = solver::validate_solution(&sol.solution.sample(&q), &sol.model, &s("20"));
        assert!(report.passed(), "{report:?}");
    }
}

#[test]
fn infinite_rounds_interval_is_infinitesimal() {
    let sol = solver::solve_model(&pair_players(), &ModelSpec::new(s("20"), s("g"), 0)).unwrap();
    assert_eq!(sol.model.source, DeltaSource::Stationary);
    let nt = GrossScalar::from_integer(sol.line.as_ref().unwrap().n_tilde as i64);
    let g = GrossScalar::from_rational(sol.gammas.mu.0[2].clone());
    let x = GrossScalar::from_rational(sol.line.as_ref().unwrap().f.0[2].clone());
    // width = 20/(x + g(① − ñ))
    let k = &x + &(&g * &(&s("g") - &nt));
    assert_eq!(sol.solution.width, s("20").checked_div(&k).unwrap());
    assert_eq!(sol.solution.magnitude(), Magnitude::Infinitesimal);
    for q in quartiles() {
        assert!(solver::validate_solution(&sol.solution.sample(&q), &sol.model, &s("20")).passed());
    }
    // T − S = 0 gives a zero gap
    let flat = sol.solution.sample(&s("0"));
    let report = solver::validate_solution(&flat, &sol.model, &s("20"));
    assert!(!report.positive && !report.fundamental_law);
}

#[test]
fn half_grossone_doubles_the_width() {
    let full = solver::solve_model(&pair_players(), &ModelSpec::new(s("20"), s("g"), 0)).unwrap();
    let half = solver::solve_model(&pair_players(), &ModelSpec::new(s("20"), s("g/2"), 0)).unwrap();
    let ratio = half.solution.width.checked_div(&full.solution.width).unwrap();
    // the finite parts differ, so the ratio is 2 up to an infinitesimal
    assert!(&ratio - &s("2") < s("g^-1/2") && &s("2") - &ratio < s("g^-1/2"));
    assert_eq!(half.solution.magnitude(), Magnitude::Infinitesimal);
}

#[test]
fn gamma1_nonzero_widths_follow_sigma() {
    let lambda = Vec4(["0", "-2", "1", "0"].map(r));
    let mu = Vec4(["0.1", "0.2", "0.3", "0.4"].map(r));
    let tau = s("20");
    let n = s("g");
    let widths: Vec<GrossScalar> = (0..10)
        .map(|i| {
            let shifts = ShiftParams {
                s: GrossScalar::from_integer(i),
                delta_t: GrossScalar::from_integer(10 + i),
                delta_r: GrossScalar::from_rational(rational::ratio(i + 3, 2)),
                delta_p: s("1"),
            };
            let g = gammas_from_parts(lambda.clone(), mu.clone(), &shifts);
            let sol = solve(&g, &tau, &n).unwrap();
            assert_eq!(sol.case, SolutionCase::Gamma1NonZero);
            assert_eq!(sol.pivot, PayoffSymbol::S);
            sol.width
        })
        .collect();
    // τ/(γ1·① + γ2) with γ1 = 1, γ2 = −1
    assert!(widths.iter().all(|w| *w == s("20/(g-1)")));
    assert_eq!(widths[0].classify(), Magnitude::Infinitesimal);
}

#[test]
fn gamma1_nonzero_samples_validate() {
    let lambda = Vec4(["0", "-2", "1", "0"].map(r));
    let mu = Vec4(["0.1", "0.2", "0.3", "0.4"].map(r));
    let model = solver::DeltaModel {
        k: 0,
        j: 1,
        n: s("g"),
        lambda: lambda.clone(),
        mu: mu.clone(),
        n_tilde: Some(10),
        source: DeltaSource::Stationary,
    };
    let g = solver::gammas(&model, &ShiftParams::default()).unwrap();
    let sol = solve(&g, &s("20"), &s("g")).unwrap();
    for q in quartiles() {
        assert!(solver::validate_solution(&sol.sample(&q), &model, &s("20")).passed());
    }
    assert!(!solver::validate_solution(&sol.sample(&s("1")), &model, &s("20")).passed());
}

#[test]
fn rival_is_the_strongest_opponent() {
    let players = vec![s_star(), Strategy::always_defect(), s_one()];
    let spec = ModelSpec::new(s("20"), s("g"), 0);
    let (models, _) = solver::delta_models(&players, &spec).unwrap();
    let choice = solver::select_rival(&models, &spec.shifts);
    let reference = spec.shifts.payoffs();
    let best = models.iter().map(|m| m.delta(&reference).unwrap()).min().unwrap();
    let chosen = models.iter().find(|m| m.j == choice.index).unwrap();
    assert_eq!(chosen.delta(&reference).unwrap(), best);
    assert_eq!(choice.index, 1);
}

#[test]
fn defector_rival_leaves_no_solution() {
    // the always-defector beats the target by an unbounded amount
    let players = vec![s_star(), Strategy::always_defect()];
    let err = solver::solve_model(&players, &ModelSpec::new(s("20"), s("g"), 0)).unwrap_err();
    assert!(matches!(err, SolverError::EmptySolution(_) | SolverError::NoPivot), "{err:?}");
}

#[test]
fn identical_players_are_degenerate() {
    let players = vec![s_star(), s_star()];
    let err = solver::solve_model(&players, &ModelSpec::new(s("20"), s("g"), 0)).unwrap_err();
    assert_eq!(err, SolverError::DegenerateBeta);
}

#[test]
fn nonpositive_tau_is_rejected() {
    let err = solver::solve_model(&pair_players(), &ModelSpec::new(s("0"), s("g"), 0)).unwrap_err();
    assert_eq!(err, SolverError::NonPositiveTau);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn width_ignores_non_pivot_choices(sv in -50i64..50, dr in 1i64..100, dp in 1i64..100) {
        let spec = ModelSpec::new(s("20"), s("g"), 0);
        let (models, _) = solver::delta_models(&pair_players(), &spec).unwrap();
        let reference = solve(&solver::gammas(&models[0], &spec.shifts).unwrap(), &spec.tau, &spec.n).unwrap();
        let shifts = ShiftParams {
            s: GrossScalar::from_integer(sv),
            delta_t: s("5"),
            delta_r: GrossScalar::from_rational(rational::ratio(dr, 7)),
            delta_p: GrossScalar::from_rational(rational::ratio(dp, 11)),
        };
        let sol = solve(&solver::gammas(&models[0], &shifts).unwrap(), &spec.tau, &spec.n).unwrap();
        prop_assert_eq!(&sol.width, &reference.width);
        prop_assert!(solver::validate_solution(&sol.midpoint(), &models[0], &spec.tau).passed());
    }
}
