//! Stochastic tournaments over memory-one strategies.
//!
//! Each match is a four-state Markov chain. Player `k`'s expected payoff
//! after `n` rounds against `j` is `Σ_{t<n} A_kj·L_kj^t·Qᵀ`. Past the
//! stationarity threshold `ñ` every further round adds the same increment,
//! so the gap between two players becomes the line
//! `Δ̃(n) = [F + (n − ñ)G]·Qᵀ = α + n·β`.
//!
//! Only the chain for `k < j` is iterated. The opponent's view is the same
//! distribution with CD and DC exchanged, which also keeps mirrored entries
//! bit-identical in floating point.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::det::{DetError, RoundCount};
use crate::grossnum::{rational, GrossScalar, Rational};
use crate::interval::{rank, RankGroup};
use crate::linalg::{find_stationarity, vec_mat, LinalgError, Mat4, Scalar, StationarityParams, Vec4};
use crate::payoff::{LinearForm, PayoffError, Payoffs};
use crate::strategy::{State, Strategy};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StochError {
    #[error("chain between players {k} and {j}: {source}")]
    NotConverged {
        k: usize,
        j: usize,
        #[source]
        source: LinalgError,
    },
    #[error("n = {n} does not exceed the stationarity threshold {n_tilde}")]
    BelowStationarity { n: String, n_tilde: usize },
    #[error("a tournament needs at least two players")]
    TooFewPlayers,
    #[error("player index {0} out of range")]
    NoSuchPlayer(usize),
    #[error(transparent)]
    Round(#[from] DetError),
    #[error(transparent)]
    Payoff(#[from] PayoffError),
}

/// Initial distribution and transition matrix of one match, states ordered
/// CC, CD, DC, DD from player k's side.
#[derive(Clone, Debug, PartialEq)]
pub struct PairChain<S> {
    pub initial: Vec4<S>,
    pub transition: Mat4<S>,
}

fn joint<S: Scalar>(a: &S, b: &S) -> [S; 4] {
    let na = S::one() - a.clone();
    let nb = S::one() - b.clone();
    [a.clone() * b.clone(), a.clone() * nb.clone(), na.clone() * b.clone(), na * nb]
}

pub fn build_chain<S: Scalar>(sk: &Strategy, sj: &Strategy) -> PairChain<S> {
    let conv = |r: &Rational| S::from_rational(r);
    let initial = Vec4(joint(&conv(sk.first_move()), &conv(sj.first_move())));
    let transition = Mat4(State::ALL.map(|st| joint(&conv(sk.after(st)), &conv(sj.after(st.mirror())))));
    PairChain { initial, transition }
}

/// Exact image of a computed value.
pub trait ToExact {
    fn to_exact(&self) -> Rational;
}

impl ToExact for f64 {
    fn to_exact(&self) -> Rational {
        rational::from_f64_shortest(*self).expect("finite probability sums")
    }
}

impl ToExact for Rational {
    fn to_exact(&self) -> Rational {
        self.clone()
    }
}

/// Relative size below which a float difference is treated as rounding noise.
pub const NOISE_FLOOR: f64 = 1e-12;

/// Promotes a difference vector whose entries must sum to zero.
///
/// The shortest-decimal image of each entry is taken. A leftover float
/// residual no larger than [`NOISE_FLOOR`] times the vector's scale is
/// removed from the largest entry.
pub fn promote_zero_sum<S: ToExact>(v: &Vec4<S>) -> Vec4<Rational> {
    let mut out = v.map(ToExact::to_exact);
    let residual: Rational = out.0.iter().cloned().sum();
    if residual.is_zero() {
        return out;
    }
    let scale: Rational = out.0.iter().map(|x| x.abs()).sum();
    let tol = noise_floor() * scale.max(rational::int(1));
    if residual.abs() <= tol {
        let (idx, _) = out.0.iter().enumerate().max_by(|a, b| a.1.abs().cmp(&b.1.abs())).expect("four entries");
        out.0[idx] -= residual;
    }
    out
}

fn noise_floor() -> Rational {
    rational::from_f64_shortest(NOISE_FLOOR).expect("finite")
}

/// `a − b` promoted to exact values. Entries that are rounding noise relative
/// to the operands are set to zero before the zero-sum correction.
pub fn promote_difference(a: &Vec4<f64>, b: &Vec4<f64>) -> Vec4<Rational> {
    let scale = a.0.iter().chain(&b.0).fold(0.0f64, |m, x| m.max(x.abs()));
    let d = a.sub(b).map(|x| if x.abs() <= NOISE_FLOOR * scale { 0.0 } else { *x });
    promote_zero_sum(&d)
}

pub fn to_gross(v: &Vec4<Rational>) -> Vec4<GrossScalar> {
    v.map(|r| GrossScalar::from_rational(r.clone()))
}

fn check_players(players: &[Strategy]) -> Result<(), StochError> {
    if players.len() < 2 {
        Err(StochError::TooFewPlayers)
    } else {
        Ok(())
    }
}

/// Expected number of visits to each state over the first `n` rounds, per
/// player, summed over all opponents.
pub fn expectation_vectors<S: Scalar>(players: &[Strategy], n: u64) -> Vec<Vec4<S>> {
    let m = players.len();
    let mut acc: Vec<Vec4<S>> = vec![Vec4::zero(); m];
    for k in 0..m {
        for j in k + 1..m {
            let chain = build_chain::<S>(&players[k], &players[j]);
            let mut v = chain.initial.clone();
            let mut sum = Vec4::zero();
            for _ in 0..n {
                sum = sum.add(&v);
                v = vec_mat(&v, &chain.transition);
            }
            acc[j] = acc[j].add(&sum.swap_roles());
            acc[k] = acc[k].add(&sum);
        }
    }
    acc
}

/// Exact-arithmetic or floating-point evaluation of the round sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Exact,
    Float,
}

/// `E_k(n) = Σ_{t=1..n} Σ_{i≠k} A_ki·L_ki^(t−1)·Qᵀ` for every player.
pub fn exact_expectation(
    players: &[Strategy],
    payoffs: &Payoffs,
    n: u64,
    precision: Precision,
) -> Result<Vec<LinearForm>, StochError> {
    check_players(players)?;
    let vectors: Vec<Vec4<Rational>> = match precision {
        Precision::Exact => expectation_vectors::<Rational>(players, n),
        Precision::Float => expectation_vectors::<f64>(players, n).iter().map(|v| v.map(ToExact::to_exact)).collect(),
    };
    Ok(vectors.iter().map(|v| LinearForm::from_vector(&to_gross(v)).substitute(payoffs)).collect())
}

/// Coefficient vector of `Δ(k, j, n) = E_k(n) − E_j(n)` over `Q`.
pub fn delta_exact(players: &[Strategy], k: usize, j: usize, n: u64, precision: Precision) -> Result<Vec4<Rational>, StochError> {
    check_players(players)?;
    check_index(players, k)?;
    check_index(players, j)?;
    Ok(match precision {
        Precision::Exact => {
            let v = expectation_vectors::<Rational>(players, n);
            v[k].sub(&v[j])
        }
        Precision::Float => {
            let v = expectation_vectors::<f64>(players, n);
            promote_difference(&v[k], &v[j])
        }
    })
}

fn check_index(players: &[Strategy], i: usize) -> Result<(), StochError> {
    if i < players.len() {
        Ok(())
    } else {
        Err(StochError::NoSuchPlayer(i))
    }
}

/// Transient sum and stationary per-round increment of one player's
/// expectation: `E_k(n) ≈ [F_k + (n − ñ)·G_k]·Qᵀ` for `n > ñ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectationLine {
    pub transient: Vec4<f64>,
    pub increment: Vec4<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TournamentLines {
    pub n_tilde: usize,
    pub players: Vec<ExpectationLine>,
}

/// Stationarity threshold for every match, maximized over the tournament,
/// and the per-player lines built with that common threshold.
pub fn tournament_lines(players: &[Strategy], params: &StationarityParams) -> Result<TournamentLines, StochError> {
    check_players(players)?;
    let m = players.len();
    let mut chains = Vec::new();
    let mut n_tilde = 0;
    for k in 0..m {
        for j in k + 1..m {
            let chain = build_chain::<f64>(&players[k], &players[j]);
            let st = find_stationarity(&chain.transition, params).map_err(|source| StochError::NotConverged { k, j, source })?;
            n_tilde = n_tilde.max(st.n_tilde);
            chains.push((k, j, chain));
        }
    }
    let mut lines = vec![ExpectationLine { transient: Vec4::zero(), increment: Vec4::zero() }; m];
    for (k, j, chain) in chains {
        let mut v = chain.initial.clone();
        let mut transient = Vec4::zero();
        for _ in 0..n_tilde {
            transient = transient.add(&v);
            v = vec_mat(&v, &chain.transition);
        }
        // v is now A·L^ñ
        lines[k].transient = lines[k].transient.add(&transient);
        lines[k].increment = lines[k].increment.add(&v);
        lines[j].transient = lines[j].transient.add(&transient.swap_roles());
        lines[j].increment = lines[j].increment.add(&v.swap_roles());
    }
    Ok(TournamentLines { n_tilde, players: lines })
}

impl TournamentLines {
    /// `[F_k + (n − ñ)G_k]·Qᵀ` with the payoffs substituted.
    pub fn expectation_at(&self, k: usize, n: &GrossScalar, payoffs: &Payoffs) -> Result<LinearForm, StochError> {
        self.require_above(n)?;
        let line = &self.players[k];
        let f = to_gross(&line.transient.map(ToExact::to_exact));
        let g = to_gross(&line.increment.map(ToExact::to_exact));
        let steps = n - &GrossScalar::from_integer(self.n_tilde as i64);
        Ok(LinearForm::from_vector(&f.add(&g.scale(&steps))).substitute(payoffs))
    }

    pub fn delta_line(&self, k: usize, j: usize) -> DeltaLine {
        let (pk, pj) = (&self.players[k], &self.players[j]);
        let f = promote_difference(&pk.transient, &pj.transient);
        let g = promote_difference(&pk.increment, &pj.increment);
        DeltaLine::new(k, j, self.n_tilde, f, g)
    }

    fn require_above(&self, n: &GrossScalar) -> Result<(), StochError> {
        if *n <= GrossScalar::from_integer(self.n_tilde as i64) {
            return Err(StochError::BelowStationarity { n: n.to_string(), n_tilde: self.n_tilde });
        }
        Ok(())
    }
}

/// `Δ̃(k, j, n) = [F + (n − ñ)G]·Qᵀ = α + n·β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaLine {
    pub k: usize,
    pub j: usize,
    pub n_tilde: usize,
    pub f: Vec4<Rational>,
    pub g: Vec4<Rational>,
    pub alpha: LinearForm,
    pub beta: LinearForm,
}

impl DeltaLine {
    pub fn new(k: usize, j: usize, n_tilde: usize, f: Vec4<Rational>, g: Vec4<Rational>) -> Self {
        let lambda = f.sub(&g.scale(&rational::int(n_tilde as i64)));
        let alpha = LinearForm::from_vector(&to_gross(&lambda));
        let beta = LinearForm::from_vector(&to_gross(&g));
        Self { k, j, n_tilde, f, g, alpha, beta }
    }

    /// Components of `F − ñG`.
    pub fn lambda(&self) -> Vec4<Rational> {
        self.f.sub(&self.g.scale(&rational::int(self.n_tilde as i64)))
    }

    /// Components of `G`.
    pub fn mu(&self) -> &Vec4<Rational> {
        &self.g
    }

    pub fn is_degenerate(&self) -> bool {
        self.g.0.iter().all(Zero::is_zero)
    }
}

pub fn delta_line(players: &[Strategy], k: usize, j: usize, params: &StationarityParams) -> Result<DeltaLine, StochError> {
    check_index(players, k)?;
    check_index(players, j)?;
    Ok(tournament_lines(players, params)?.delta_line(k, j))
}

/// `α + n·β` with the payoffs substituted; defined only above `ñ`.
pub fn delta_tilde_at(line: &DeltaLine, n: &GrossScalar, payoffs: &Payoffs) -> Result<LinearForm, StochError> {
    if *n <= GrossScalar::from_integer(line.n_tilde as i64) {
        return Err(StochError::BelowStationarity { n: n.to_string(), n_tilde: line.n_tilde });
    }
    Ok((&line.alpha + &line.beta.scale(n)).substitute(payoffs))
}

/// Largest finite round count evaluated by direct summation; beyond it the
/// stationary lines are used.
pub const DIRECT_SUM_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct StochTournament {
    pub totals: Vec<LinearForm>,
    pub ranking: Option<Vec<RankGroup>>,
    /// Set when the totals came from the stationary lines.
    pub n_tilde: Option<usize>,
}

pub fn tournament(
    players: &[Strategy],
    payoffs: &Payoffs,
    n: &GrossScalar,
    params: &StationarityParams,
) -> Result<StochTournament, StochError> {
    check_players(players)?;
    payoffs.check_fundamental_law()?;
    let count = RoundCount::new(n)?;
    let (totals, n_tilde) = match count.as_finite() {
        Some(k) if k <= DIRECT_SUM_LIMIT => (exact_expectation(players, payoffs, k, Precision::Float)?, None),
        _ => {
            let lines = tournament_lines(players, params)?;
            let totals = (0..players.len())
                .map(|k| lines.expectation_at(k, n, payoffs))
                .collect::<Result<Vec<_>, _>>()?;
            (totals, Some(lines.n_tilde))
        }
    };
    let values: Option<Vec<GrossScalar>> = totals.iter().map(LinearForm::as_scalar).collect();
    Ok(StochTournament { ranking: values.map(|v| rank(&v)), totals, n_tilde })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::payoff::PayoffSymbol;

    fn s_star() -> Strategy {
        Strategy::parse(&["0.8", "0.75", "0.2", "0.4", "0.05"]).unwrap()
    }

    fn s_one() -> Strategy {
        Strategy::parse(&["0.4", "0.4", "0.1", "0.8", "0.1"]).unwrap()
    }

    #[test]
    fn reference_chain_rows() {
        let chain = build_chain::<Rational>(&s_star(), &s_one());
        let r = |x: &str| rational::parse_rational(x).unwrap();
        assert_eq!(chain.transition.0[3], [r("0.005"), r("0.045"), r("0.095"), r("0.855")]);
        assert_eq!(chain.initial.0, [r("0.32"), r("0.48"), r("0.08"), r("0.12")]);
        let mirrored = build_chain::<Rational>(&s_one(), &s_star());
        assert_eq!(mirrored.transition.0[1], [r("0.04"), r("0.06"), r("0.36"), r("0.54")]);
    }

    #[test]
    fn certain_cooperators_start_in_cc() {
        let c = Strategy::parse(&["1", "0.5", "0.5", "0.5", "0.5"]).unwrap();
        let chain = build_chain::<Rational>(&c, &c);
        assert_eq!(chain.initial.0, [rational::int(1), rational::int(0), rational::int(0), rational::int(0)]);
    }

    #[test]
    fn single_round_is_initial_distribution() {
        let players = [s_star(), s_one()];
        let totals = exact_expectation(&players, &Payoffs::symbolic(), 1, Precision::Exact).unwrap();
        let chain = build_chain::<Rational>(&s_star(), &s_one());
        assert_eq!(totals[0], LinearForm::from_vector(&to_gross(&chain.initial)));
    }

    #[test]
    fn identical_players_have_flat_line() {
        let players = [s_star(), s_star()];
        let line = delta_line(&players, 0, 1, &StationarityParams::default()).unwrap();
        assert!(line.is_degenerate());
        assert!(line.f.0.iter().all(Zero::is_zero));
        let at = delta_tilde_at(&line, &"g".parse().unwrap(), &Payoffs::symbolic()).unwrap();
        assert!(at.is_zero());
    }

    #[test]
    fn two_player_line_only_involves_t_and_s() {
        let line = delta_line(&[s_star(), s_one()], 0, 1, &StationarityParams::default()).unwrap();
        assert!(line.g.0[0].is_zero() && line.g.0[3].is_zero());
        assert_eq!(line.g.0[1], -line.g.0[2].clone());
        assert!(line.f.0[0].is_zero() && line.f.0[3].is_zero());
        assert_eq!(line.f.0[1], -line.f.0[2].clone());
        assert!(line.beta.coefficient(PayoffSymbol::R).is_zero());
        assert!(line.alpha.coefficient(PayoffSymbol::P).is_zero());
    }

    #[test]
    fn below_threshold_is_rejected() {
        let line = delta_line(&[s_star(), s_one()], 0, 1, &StationarityParams::default()).unwrap();
        let n = GrossScalar::from_integer(line.n_tilde as i64);
        assert!(matches!(delta_tilde_at(&line, &n, &Payoffs::symbolic()), Err(StochError::BelowStationarity { .. })));
    }

    #[test]
    fn periodic_match_does_not_converge() {
        let players = [Strategy::tit_for_tat(), Strategy::suspicious_tit_for_tat()];
        let err = tournament_lines(&players, &StationarityParams { epsilon: 1e-15, n_max: 200 }).unwrap_err();
        assert!(matches!(err, StochError::NotConverged { k: 0, j: 1, .. }));
    }

    #[test]
    fn zero_sum_promotion_absorbs_float_residue() {
        let v = Vec4([0.1, 0.2, -0.3, 0.0]);
        let p = promote_zero_sum(&v);
        assert!(p.sum().is_zero());
        // large residues are left alone
        let w = promote_zero_sum(&Vec4([0.5, 0.0, 0.0, 0.0]));
        assert_eq!(w.sum(), rational::ratio(1, 2));
    }
}
