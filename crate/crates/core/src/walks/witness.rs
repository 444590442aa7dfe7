use serde::{Deserialize, Serialize};

use crate::mix::Mixer;
use crate::ordinals::Otp;

use super::WalkError;

/// One witness family `κ ↦ g_κ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Witness {
    /// Hash of the key and the argument words, reduced mod `colors`.
    Seeded { seed: u64, colors: u32 },
    Constant { color: u32 },
}

impl Witness {
    /// Color of `args` under `g_κ`. `tag` separates the two families.
    fn eval(&self, tag: u64, kappa: Otp, args: impl ExactSizeIterator<Item = u64>) -> u32 {
        match *self {
            Witness::Constant { color } => color,
            Witness::Seeded { seed, colors } => {
                let mut m = Mixer::new(seed);
                m.word(tag).otp(kappa).word(args.len() as u64);
                for a in args {
                    m.word(a);
                }
                m.color(colors)
            }
        }
    }

    /// Number of colors the family may produce.
    pub fn colors(&self) -> u32 {
        match *self {
            Witness::Constant { color } => color + 1,
            Witness::Seeded { colors, .. } => colors,
        }
    }
}

/// The pair `(g¹, g²)` consumed by the walk colorings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessColorings {
    pub g1: Witness,
    pub g2: Witness,
}

impl WitnessColorings {
    pub fn seeded(seed: u64, colors: u32) -> Self {
        WitnessColorings {
            g1: Witness::Seeded { seed, colors },
            g2: Witness::Seeded { seed: seed ^ 0x5bd1_e995, colors },
        }
    }

    pub fn constant(c1: u32, c2: u32) -> Self {
        WitnessColorings { g1: Witness::Constant { color: c1 }, g2: Witness::Constant { color: c2 } }
    }

    pub fn from_json(text: &str) -> Result<Self, WalkError> {
        let w: WitnessColorings = serde_json::from_str(text).map_err(|e| WalkError::Witness(e.to_string()))?;
        for g in [w.g1, w.g2] {
            if let Witness::Seeded { colors: 0, .. } = g {
                return Err(WalkError::Witness("colors must be positive".into()));
            }
        }
        Ok(w)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    /// `g¹_κ` on a finite set of naturals, given ascending.
    pub fn g1(&self, kappa: Otp, set: &[u64]) -> u32 {
        self.g1.eval(1, kappa, set.iter().copied())
    }

    /// `g²_κ` on a tuple of positions.
    pub fn g2(&self, kappa: Otp, positions: &[Otp]) -> u32 {
        self.g2.eval(2, kappa, positions.iter().map(|p| p.as_key()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let w = WitnessColorings::from_json(
            r#"{"g1":{"kind":"seeded","seed":9,"colors":4},"g2":{"kind":"constant","color":7}}"#,
        )
        .unwrap();
        assert_eq!(WitnessColorings::from_json(&w.to_json()).unwrap(), w);
        assert_eq!(w.g2(Otp::Omega, &[Otp::Finite(1)]), 7);
        assert!(w.g1(Otp::Finite(2), &[0, 3]) < 4);
        assert!(WitnessColorings::from_json(r#"{"g1":{"kind":"seeded","seed":1,"colors":0},"g2":{"kind":"constant","color":0}}"#).is_err());
        assert!(WitnessColorings::from_json(r#"{"g1":{"kind":"other"}}"#).is_err());
    }
}
