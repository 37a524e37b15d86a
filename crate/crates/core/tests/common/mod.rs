#![allow(dead_code)]

use gross_core::grossnum::rational;
use gross_core::linalg::{Mat4, Vec4};
use gross_core::{GrossScalar, LinearForm, PayoffSymbol, Payoffs, Rational, State, Strategy};
use num_traits::{One, Zero};

pub fn s(text: &str) -> GrossScalar {
    text.parse().unwrap_or_else(|e| panic!("bad literal {text}: {e}"))
}

pub fn r(text: &str) -> Rational {
    rational::parse_rational(text).unwrap_or_else(|| panic!("bad rational {text}"))
}

pub fn s_star() -> Strategy {
    Strategy::parse(&["0.8", "0.75", "0.2", "0.4", "0.05"]).unwrap()
}

pub fn s_one() -> Strategy {
    Strategy::parse(&["0.4", "0.4", "0.1", "0.8", "0.1"]).unwrap()
}

pub fn pair_players() -> Vec<Strategy> {
    vec![s_star(), s_one()]
}

/// Du, TRIGGER, TFT.
pub fn classic_players() -> Vec<Strategy> {
    vec![Strategy::always_defect(), Strategy::trigger(), Strategy::tit_for_tat()]
}

pub fn classic_payoffs() -> Payoffs {
    Payoffs::concrete(s("10"), s("4+8.5g^-1"), s("4"), s("-1"))
}

pub fn reference_payoffs() -> Payoffs {
    Payoffs::concrete(s("5"), s("3"), s("1"), s("0"))
}

/// Plays two deterministic strategies round by round. Entry `t` holds the
/// visits to each state, from the first player's side, over rounds `1..=t+1`.
pub fn simulate_prefix_counts(a: &Strategy, b: &Strategy, rounds: usize) -> Vec<[u64; 4]> {
    let coop = |x: &Rational| x.is_one();
    let mut counts = [0u64; 4];
    let mut out = Vec::with_capacity(rounds);
    let (mut ma, mut mb) = (coop(a.first_move()), coop(b.first_move()));
    for _ in 0..rounds {
        let state = State::from_moves(ma, mb);
        counts[state.index()] += 1;
        out.push(counts);
        (ma, mb) = (coop(a.after(state)), coop(b.after(state.mirror())));
    }
    out
}

pub fn counts_form(counts: [u64; 4]) -> LinearForm {
    LinearForm::from_vector(&Vec4(counts.map(|c| GrossScalar::from_integer(c as i64))))
}

/// Joint move distribution written out by hand, independent of the engine.
fn joint(a: &Rational, b: &Rational) -> [Rational; 4] {
    let one = Rational::one();
    [a * b, a * (&one - b), (&one - a) * b, (&one - a) * (&one - b)]
}

/// Exact per-round state distributions of a match, from player a's side.
pub fn oracle_rounds(a: &Strategy, b: &Strategy, rounds: usize) -> Vec<[Rational; 4]> {
    let mut dist = joint(a.first_move(), b.first_move());
    let rows: Vec<[Rational; 4]> = State::ALL.iter().map(|st| joint(a.after(*st), b.after(st.mirror()))).collect();
    let mut out = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        out.push(dist.clone());
        let mut next: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
        for (i, p) in dist.iter().enumerate() {
            for (slot, q) in next.iter_mut().zip(&rows[i]) {
                *slot += p * q;
            }
        }
        dist = next;
    }
    out
}

/// `Σ_{t<n} (e_ab(t) − e_ba(t))` computed exactly.
pub fn oracle_gap(a: &Strategy, b: &Strategy, n: usize) -> [Rational; 4] {
    let mut total: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
    for d in oracle_rounds(a, b, n) {
        // the opponent sees CD and DC exchanged
        let diff = [Rational::zero(), &d[1] - &d[2], &d[2] - &d[1], Rational::zero()];
        for (t, x) in total.iter_mut().zip(diff) {
            *t += x;
        }
    }
    total
}

pub fn printed_l_star_one() -> Mat4<f64> {
    Mat4([
        [0.3, 0.45, 0.1, 0.15],
        [0.16, 0.04, 0.64, 0.16],
        [0.04, 0.36, 0.06, 0.54],
        [0.005, 0.045, 0.095, 0.855],
    ])
}

pub fn printed_l_one_star() -> Mat4<f64> {
    Mat4([
        [0.3, 0.1, 0.45, 0.15],
        [0.04, 0.06, 0.36, 0.54],
        [0.16, 0.64, 0.04, 0.16],
        [0.005, 0.095, 0.045, 0.855],
    ])
}

pub fn symbol(x: PayoffSymbol) -> LinearForm {
    LinearForm::symbol(x)
}

pub fn to_f64(x: &GrossScalar) -> f64 {
    x.to_f64_finite()
}
