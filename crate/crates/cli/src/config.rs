//! Tournament configuration files.

use std::collections::BTreeMap;
use std::path::Path;

use gross_core::grossnum::rational;
use gross_core::linalg::StationarityParams;
use gross_core::solver::ShiftParams;
use gross_core::{GrossScalar, PayoffSymbol, Payoffs, Strategy};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Syntax(#[from] toml::de::Error),
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

impl ConfigError {
    fn field(field: impl Into<String>, message: impl ToString) -> Self {
        ConfigError::Field { field: field.into(), message: message.to_string() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Det,
    Stoch,
    Solve,
    Eval,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Det => "det",
            Mode::Stoch => "stoch",
            Mode::Solve => "solve",
            Mode::Eval => "eval",
        }
    }
}

/// A number as written in the file: TOML integer, float or gross literal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Value {
    pub fn to_scalar(&self, field: &str) -> Result<GrossScalar, ConfigError> {
        match self {
            Value::Int(i) => Ok(GrossScalar::from_integer(*i)),
            Value::Float(x) => GrossScalar::from_f64(*x).ok_or_else(|| ConfigError::field(field, "not a finite number")),
            Value::Text(t) => t.parse().map_err(|e| ConfigError::field(field, e)),
        }
    }

    fn as_symbol(&self) -> Option<PayoffSymbol> {
        match self {
            Value::Text(t) => PayoffSymbol::from_name(t.trim()),
            _ => None,
        }
    }

    fn to_rational_text(&self, field: &str) -> Result<String, ConfigError> {
        match self {
            Value::Int(i) => Ok(i.to_string()),
            Value::Float(x) => {
                let r = rational::from_f64_shortest(*x).ok_or_else(|| ConfigError::field(field, "not a finite number"))?;
                Ok(rational::format_rational(&r))
            }
            Value::Text(t) => Ok(t.trim().to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerConfig {
    pub name: String,
    pub strategy: Vec<Value>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftConfig {
    #[serde(rename = "S", skip_serializing_if = "Option::is_none")]
    pub s: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_t: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_r: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_p: Option<Value>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TournamentConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expression: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rival: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub payoffs: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shifts: Option<ShiftConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub players: Vec<PlayerConfig>,
}

impl TournamentConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn strategies(&self) -> Result<Vec<Strategy>, ConfigError> {
        if self.players.len() < 2 {
            return Err(ConfigError::field("players", "at least two players are required"));
        }
        self.players
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let field = format!("players[{i}].strategy");
                let texts: Vec<String> = p
                    .strategy
                    .iter()
                    .enumerate()
                    .map(|(k, v)| v.to_rational_text(&format!("{field}[{k}]")))
                    .collect::<Result<_, _>>()?;
                let params: [String; 5] = texts
                    .try_into()
                    .map_err(|v: Vec<String>| ConfigError::field(&field, format!("expected 5 parameters, got {}", v.len())))?;
                Strategy::parse(&params).map_err(|e| ConfigError::field(&field, e))
            })
            .collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.players.iter().map(|p| p.name.clone()).collect()
    }

    /// Payoff values; keys that are absent or name a symbol stay symbolic.
    pub fn payoffs(&self) -> Result<Payoffs, ConfigError> {
        let mut out = Payoffs::symbolic();
        for (key, value) in &self.payoffs {
            let field = format!("payoffs.{key}");
            let sym = PayoffSymbol::from_name(key).ok_or_else(|| ConfigError::field(&field, "expected one of T, R, P, S"))?;
            if value.as_symbol().is_some() {
                continue;
            }
            out.set(sym, Some(value.to_scalar(&field)?));
        }
        if out.is_concrete() {
            out.check_fundamental_law().map_err(|e| ConfigError::field("payoffs", e))?;
        }
        Ok(out)
    }

    pub fn rounds(&self) -> Result<GrossScalar, ConfigError> {
        let n = self.n.as_ref().ok_or_else(|| ConfigError::field("n", "missing"))?.to_scalar("n")?;
        gross_core::det::RoundCount::new(&n).map_err(|e| ConfigError::field("n", e))?;
        Ok(n)
    }

    pub fn tau(&self) -> Result<GrossScalar, ConfigError> {
        let tau = self.tau.as_ref().ok_or_else(|| ConfigError::field("tau", "missing"))?.to_scalar("tau")?;
        if !tau.is_positive() {
            return Err(ConfigError::field("tau", "must be positive"));
        }
        Ok(tau)
    }

    pub fn stationarity(&self, epsilon: Option<f64>, n_max: Option<usize>) -> Result<StationarityParams, ConfigError> {
        let defaults = StationarityParams::default();
        let epsilon = epsilon.or(self.epsilon).unwrap_or(defaults.epsilon);
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(ConfigError::field("epsilon", "must be a positive number"));
        }
        let n_max = n_max.or(self.n_max).unwrap_or(defaults.n_max);
        if n_max == 0 {
            return Err(ConfigError::field("n_max", "must be at least 1"));
        }
        Ok(StationarityParams { epsilon, n_max })
    }

    pub fn shift_params(&self) -> Result<ShiftParams, ConfigError> {
        let mut shifts = ShiftParams::default();
        let Some(cfg) = &self.shifts else { return Ok(shifts) };
        let slots: [(&Option<Value>, &mut GrossScalar, &str); 4] = [
            (&cfg.s, &mut shifts.s, "shifts.S"),
            (&cfg.delta_t, &mut shifts.delta_t, "shifts.delta_t"),
            (&cfg.delta_r, &mut shifts.delta_r, "shifts.delta_r"),
            (&cfg.delta_p, &mut shifts.delta_p, "shifts.delta_p"),
        ];
        for (value, slot, field) in slots {
            if let Some(v) = value {
                *slot = v.to_scalar(field)?;
                if field != "shifts.S" && !slot.is_positive() {
                    return Err(ConfigError::field(field, "shifts must be positive"));
                }
            }
        }
        Ok(shifts)
    }

    pub fn target(&self) -> Result<usize, ConfigError> {
        let t = self.target.unwrap_or(0);
        if t >= self.players.len() {
            return Err(ConfigError::field("target", format!("no player with index {t}")));
        }
        if self.rival.is_some_and(|r| r >= self.players.len() || r == t) {
            return Err(ConfigError::field("rival", "must index a player other than the target"));
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CLASSIC_TRIO: &str = r#"
mode = "det"
n = "g"

[payoffs]
T = 10
R = "4+17/2g^-1"
P = 4
S = -1

[[players]]
name = "Du"
strategy = [0, 0, 0, 0, 0]

[[players]]
name = "TRIGGER"
strategy = [1, 1, 0, 0, 0]
"#;

    #[test]
    fn parses_literals_and_numbers() {
        let cfg = TournamentConfig::parse(CLASSIC_TRIO).unwrap();
        assert_eq!(cfg.mode, Some(Mode::Det));
        let payoffs = cfg.payoffs().unwrap();
        assert_eq!(payoffs.get(PayoffSymbol::R), Some(&"4+8.5g^-1".parse().unwrap()));
        assert_eq!(cfg.strategies().unwrap()[1], Strategy::trigger());
        assert_eq!(cfg.rounds().unwrap(), GrossScalar::grossone());
    }

    #[test]
    fn symbols_stay_symbolic() {
        let cfg = TournamentConfig::parse("[payoffs]\nT = \"T\"\nS = 0.5\n").unwrap();
        let p = cfg.payoffs().unwrap();
        assert!(p.get(PayoffSymbol::T).is_none());
        assert_eq!(p.get(PayoffSymbol::S), Some(&"0.5".parse().unwrap()));
    }

    #[test]
    fn field_errors_name_the_field() {
        let cfg = TournamentConfig::parse(&CLASSIC_TRIO.replace("[1, 1, 0, 0, 0]", "[1, 1, 0, 2, 0]")).unwrap();
        let err = cfg.strategies().unwrap_err().to_string();
        assert!(err.contains("players[1].strategy"), "{err}");
        let err = TournamentConfig::parse("n = [").unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");
        let err = TournamentConfig::parse("bogus = 1").unwrap_err().to_string();
        assert!(err.contains("bogus"), "{err}");
        let cfg = TournamentConfig::parse("n = \"g^-1\"").unwrap();
        assert!(cfg.rounds().unwrap_err().to_string().contains("`n`"));
    }

    #[test]
    fn law_is_checked_for_concrete_payoffs() {
        let cfg = TournamentConfig::parse("[payoffs]\nT = 1\nR = 2\nP = 0\nS = -1\n").unwrap();
        assert!(cfg.payoffs().is_err());
    }
}
