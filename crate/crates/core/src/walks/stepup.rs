use std::collections::HashMap;

use crate::coloring::SetColoring;
use crate::seqtree::{split_point, Node};

use super::WalkError;

/// The stepped-up coloring `c⁺` of `(n+1)`-sets of `λ = |labels|`.
///
/// For `α_0 < … < α_n` let `δ_i = split_point(e(α_i), e(α_{i+1}))`. When the
/// `δ_i` are pairwise distinct, `c⁺` is `c` of the set `{δ_0, …, δ_{n−1}}`;
/// otherwise it is 0.
pub struct StepUp<C> {
    base: C,
    labels: Vec<Node>,
}

/// Build `c⁺` from `c` on `n`-sets of `μ` and an injective labeling `e: λ → ^μ2`.
pub fn step_up<C: SetColoring<u64>>(c: C, labels: Vec<Node>) -> Result<StepUp<C>, WalkError> {
    let mu = labels.first().map_or(0, Node::len);
    if let Some(bad) = labels.iter().position(|x| x.len() != mu) {
        return Err(WalkError::InvalidArgument(format!("label {bad} has length {} instead of {mu}", labels[bad].len())));
    }
    let mut seen: HashMap<Node, usize> = HashMap::with_capacity(labels.len());
    for (i, x) in labels.iter().enumerate() {
        if let Some(j) = seen.insert(*x, i) {
            return Err(WalkError::NotInjective(j, i));
        }
    }
    if c.arity() == 0 {
        return Err(WalkError::Arity { expected: "at least 1".into(), got: 0 });
    }
    Ok(StepUp { base: c, labels })
}

impl<C> StepUp<C> {
    pub fn lambda(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Node] {
        &self.labels
    }
}

impl<C: SetColoring<u64>> SetColoring<u64> for StepUp<C> {
    fn arity(&self) -> usize {
        self.base.arity() + 1
    }

    fn colors(&self) -> u32 {
        self.base.colors()
    }

    fn color(&self, set: &[u64]) -> u32 {
        let mut deltas: Vec<u64> = set
            .windows(2)
            .map(|w| split_point(&self.labels[w[0] as usize], &self.labels[w[1] as usize]) as u64)
            .collect();
        deltas.sort_unstable();
        if deltas.windows(2).any(|w| w[0] == w[1]) {
            return 0;
        }
        self.base.color(&deltas)
    }
}
