use std::fmt;

use crate::grossnum::{GrossScalar, Magnitude};

/// Open interval `(lower, upper)` with gross-scalar endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenInterval {
    pub lower: GrossScalar,
    pub upper: GrossScalar,
}

impl OpenInterval {
    pub fn new(lower: GrossScalar, upper: GrossScalar) -> Self {
        Self { lower, upper }
    }

    /// Orders the two bounds.
    pub fn between(a: GrossScalar, b: GrossScalar) -> Self {
        if a <= b {
            Self::new(a, b)
        } else {
            Self::new(b, a)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lower >= self.upper
    }

    pub fn width(&self) -> GrossScalar {
        &self.upper - &self.lower
    }

    pub fn magnitude(&self) -> Magnitude {
        self.width().classify()
    }

    pub fn contains(&self, x: &GrossScalar) -> bool {
        &self.lower < x && x < &self.upper
    }

    /// `lower + t·width`.
    pub fn at(&self, t: &GrossScalar) -> GrossScalar {
        &self.lower + &(&self.width() * t)
    }

    pub fn midpoint(&self) -> GrossScalar {
        self.at(&GrossScalar::from_rational(crate::grossnum::rational::ratio(1, 2)))
    }

    pub fn shifted(&self, by: &GrossScalar) -> Self {
        Self::new(&self.lower + by, &self.upper + by)
    }
}

impl fmt::Display for OpenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lower, self.upper)
    }
}

/// One rank position; several players share it when their totals tie.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankGroup {
    pub position: usize,
    pub players: Vec<usize>,
    pub value: GrossScalar,
}

impl RankGroup {
    pub fn is_tie(&self) -> bool {
        self.players.len() > 1
    }
}

/// Descending ranking; ties are grouped, not broken.
pub fn rank(totals: &[GrossScalar]) -> Vec<RankGroup> {
    let mut order: Vec<usize> = (0..totals.len()).collect();
    order.sort_by(|&a, &b| totals[b].cmp(&totals[a]).then(a.cmp(&b)));
    let mut groups: Vec<RankGroup> = Vec::new();
    for idx in order {
        match groups.last_mut() {
            Some(g) if g.value == totals[idx] => g.players.push(idx),
            _ => groups.push(RankGroup { position: groups.len() + 1, players: vec![idx], value: totals[idx].clone() }),
        }
    }
    groups
}
