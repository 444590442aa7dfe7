use serde::{Deserialize, Serialize};

use crate::ordinals::{Club, Ordinal};

use super::WalkError;

/// The walk from `beta` down to `alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkTrace {
    pub beta: Ordinal,
    pub alpha: Ordinal,
    pub gamma_plus: Vec<Ordinal>,
    pub gamma_minus: Vec<Ordinal>,
}

impl WalkTrace {
    /// `k(beta, alpha)`, the index of the last step.
    pub fn k(&self) -> usize {
        self.gamma_plus.len() - 1
    }
}

/// Walk from `beta` to `alpha`: while `γ⁺ > α`, step to the least member of
/// `C_{γ⁺}` at or above `α`, recording the largest member below `α` as `γ⁻`.
///
/// Clubs of limits below ω^ω have order type ω, so `α` is never an accumulation
/// point of `C_{γ⁺}` for `α < γ⁺` and every walk ends at `α`.
pub fn walk(beta: &Ordinal, alpha: &Ordinal) -> Result<WalkTrace, WalkError> {
    if alpha.is_zero() || alpha >= beta {
        return Err(WalkError::BadPair { beta: beta.clone(), alpha: alpha.clone() });
    }
    let mut gamma_plus = vec![beta.clone()];
    let mut gamma_minus = vec![Ordinal::zero()];
    loop {
        let top = gamma_plus.last().expect("nonempty");
        if top == alpha {
            break;
        }
        let c = Club::of(top)?;
        let below = c.max_below(alpha)?;
        let next = c.min_at_or_above(alpha)?;
        gamma_minus.push(below);
        gamma_plus.push(next);
    }
    Ok(WalkTrace { beta: beta.clone(), alpha: alpha.clone(), gamma_plus, gamma_minus })
}

/// `ε_m(β, α) = max { γ⁻_ℓ + 1 : ℓ ≤ m }`.
pub fn eps(trace: &WalkTrace, m: usize) -> Result<Ordinal, WalkError> {
    if m > trace.k() {
        return Err(WalkError::StepOutOfRange { m, k: trace.k() });
    }
    Ok(trace.gamma_minus[..=m].iter().map(Ordinal::succ).max().expect("m ≥ 0"))
}

/// `n(α0, α1, α2)`: the largest `n ≤ k(α0, α1)` such that the walks from `α0`
/// to `α1` and to `α2` have the same `γ⁻_ℓ` for every `ℓ ≤ n`.
pub fn n_triple(a0: &Ordinal, a1: &Ordinal, a2: &Ordinal) -> Result<usize, WalkError> {
    super::check_decreasing(&[a0.clone(), a1.clone(), a2.clone()])?;
    let w1 = walk(a0, a1)?;
    let w2 = walk(a0, a2)?;
    Ok(n_from_walks(&w1, &w2))
}

pub(crate) fn n_from_walks(w01: &WalkTrace, w02: &WalkTrace) -> usize {
    let bound = w01.k().min(w02.k());
    (0..=bound)
        .take_while(|&l| w01.gamma_minus[l] == w02.gamma_minus[l])
        .last()
        .expect("γ⁻_0 = 0 on both walks")
}
