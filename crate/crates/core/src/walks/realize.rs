use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::coloring::{for_each_subset, SetColoring};
use crate::mix::Mixer;
use crate::ordinals::Ordinal;

use super::WalkError;

/// Seeded coloring of `arity`-sets: the mixing rule applied to the arity and
/// then to each element in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeededColoring {
    pub seed: u64,
    pub arity: usize,
    pub colors: u32,
}

impl SetColoring<Ordinal> for SeededColoring {
    fn arity(&self) -> usize {
        self.arity
    }
    fn colors(&self) -> u32 {
        self.colors
    }
    fn color(&self, set: &[Ordinal]) -> u32 {
        let mut m = Mixer::new(self.seed);
        m.word(self.arity as u64);
        for a in set {
            m.ordinal(a);
        }
        m.color(self.colors)
    }
}

impl SetColoring<u64> for SeededColoring {
    fn arity(&self) -> usize {
        self.arity
    }
    fn colors(&self) -> u32 {
        self.colors
    }
    fn color(&self, set: &[u64]) -> u32 {
        let mut m = Mixer::new(self.seed);
        m.word(self.arity as u64);
        for &a in set {
            m.word(a);
        }
        m.color(self.colors)
    }
}

/// Colorings `F_n : [U]^n → σ_n` over a finite universe `U`, at most one per arity.
pub struct ColoringFamily<T> {
    universe: Vec<T>,
    maps: Vec<Box<dyn SetColoring<T>>>,
}

pub type OrdinalFamily = ColoringFamily<Ordinal>;

impl<T: Ord + Clone> ColoringFamily<T> {
    pub fn new(universe: impl IntoIterator<Item = T>) -> Self {
        let set: BTreeSet<T> = universe.into_iter().collect();
        ColoringFamily { universe: set.into_iter().collect(), maps: Vec::new() }
    }

    /// Add `F_n` for `n = f.arity()`.
    pub fn with(mut self, f: Box<dyn SetColoring<T>>) -> Result<Self, WalkError> {
        if self.maps.iter().any(|g| g.arity() == f.arity()) {
            return Err(WalkError::InvalidArgument(format!("arity {} given twice", f.arity())));
        }
        if f.colors() == 0 {
            return Err(WalkError::InvalidArgument("a coloring needs at least one color".into()));
        }
        self.maps.push(f);
        self.maps.sort_by_key(|g| g.arity());
        Ok(self)
    }

    pub fn universe(&self) -> &[T] {
        &self.universe
    }

    pub fn maps(&self) -> &[Box<dyn SetColoring<T>>] {
        &self.maps
    }
}

impl OrdinalFamily {
    /// Seeded members with `σ_n = sigmas[n − 1]` for `n = 1, 2, …`.
    pub fn seeded(universe: impl IntoIterator<Item = Ordinal>, seed: u64, sigmas: &[u32]) -> Result<Self, WalkError> {
        let mut fam = ColoringFamily::new(universe);
        for (i, &colors) in sigmas.iter().enumerate() {
            fam = fam.with(Box::new(SeededColoring { seed, arity: i + 1, colors }))?;
        }
        Ok(fam)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArityCount {
    pub arity: usize,
    pub attained: usize,
    pub colors: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    /// Least arity `n` with `F_n''([W]^n) = σ_n`.
    pub witnessed: Option<usize>,
    /// Color counts for the arities examined, in increasing order.
    pub counts: Vec<ArityCount>,
}

fn attained<T: Clone, C: SetColoring<T> + ?Sized>(d: &C, set: &[T], stop_at: Option<u32>) -> BTreeSet<u32> {
    let mut seen = BTreeSet::new();
    let mut buf = Vec::with_capacity(d.arity());
    for_each_subset(set.len(), d.arity(), |idx| {
        buf.clear();
        buf.extend(idx.iter().map(|&i| set[i].clone()));
        seen.insert(d.color(&buf));
        stop_at.map_or(true, |s| seen.len() < s as usize)
    });
    seen
}

fn normalize<T: Ord + Clone>(w: &[T]) -> Vec<T> {
    let set: BTreeSet<T> = w.iter().cloned().collect();
    set.into_iter().collect()
}

/// The least `n` for which `F_n` maps `[W]^n` onto all `σ_n` colors.
pub fn realization_check<T: Ord + Clone>(f: &ColoringFamily<T>, w: &[T]) -> Result<Realization, WalkError> {
    let w = normalize(w);
    if let Some(i) = w.iter().position(|x| f.universe.binary_search(x).is_err()) {
        return Err(WalkError::InvalidArgument(format!("element {i} of W lies outside the universe")));
    }
    let mut counts = Vec::new();
    for d in &f.maps {
        let seen = attained(d.as_ref(), &w, Some(d.colors()));
        counts.push(ArityCount { arity: d.arity(), attained: seen.len(), colors: d.colors() });
        if seen.len() == d.colors() as usize {
            return Ok(Realization { witnessed: Some(d.arity()), counts });
        }
    }
    Ok(Realization { witnessed: None, counts })
}

/// `|d''([A]^n)|` for `n = d.arity()`.
pub fn square_bracket_count<T: Ord + Clone, C: SetColoring<T> + ?Sized>(d: &C, a: &[T]) -> usize {
    attained(d, &normalize(a), None).len()
}

/// A finite instance of the stepped-column realization property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StgInput {
    /// `α_0 < α_1 < … < α_{μ−1}`.
    pub alphas: Vec<Ordinal>,
    /// `gamma[j]` lists `γ_{i,j}` for `i < j`, each in `[α_i, α_{i+1})`.
    pub gamma: Vec<Vec<Ordinal>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StgOutcome {
    pub holds: bool,
    /// For each attained color, the first `(j, w)` found.
    pub witnesses: Vec<(u32, usize, Vec<Ordinal>)>,
    pub missing: Vec<u32>,
}

/// Whether every color `< θ` is `d(w)` for some column `j` and `w ⊆ {γ_{i,j} : i < j}`.
pub fn stg_check<C: SetColoring<Ordinal> + ?Sized>(d: &C, input: &StgInput, theta: u32) -> Result<StgOutcome, WalkError> {
    let mu = input.alphas.len();
    if d.colors() > theta {
        return Err(WalkError::InvalidArgument(format!("the coloring has {} colors, more than theta = {theta}", d.colors())));
    }
    if input.alphas.windows(2).any(|p| p[0] >= p[1]) {
        return Err(WalkError::InvalidArgument("alphas must be strictly increasing".into()));
    }
    if input.gamma.len() != mu {
        return Err(WalkError::InvalidArgument(format!("expected {mu} columns, got {}", input.gamma.len())));
    }
    for (j, col) in input.gamma.iter().enumerate() {
        if col.len() != j {
            return Err(WalkError::InvalidArgument(format!("column {j} must have {j} entries")));
        }
        for (i, g) in col.iter().enumerate() {
            if g < &input.alphas[i] || g >= &input.alphas[i + 1] {
                return Err(WalkError::InvalidArgument(format!(
                    "gamma[{i}][{j}] = {g} is outside [{}, {})",
                    input.alphas[i],
                    input.alphas[i + 1]
                )));
            }
        }
    }
    let mut found: Vec<Option<(usize, Vec<Ordinal>)>> = vec![None; theta as usize];
    let mut left = theta as usize;
    let mut buf = Vec::new();
    for (j, col) in input.gamma.iter().enumerate() {
        if left == 0 {
            break;
        }
        for_each_subset(col.len(), d.arity(), |idx| {
            buf.clear();
            buf.extend(idx.iter().map(|&i| col[i].clone()));
            let c = d.color(&buf) as usize;
            if found[c].is_none() {
                found[c] = Some((j, buf.clone()));
                left -= 1;
            }
            left > 0
        });
    }
    let mut witnesses = Vec::new();
    let mut missing = Vec::new();
    for (c, f) in found.into_iter().enumerate() {
        match f {
            Some((j, w)) => witnesses.push((c as u32, j, w)),
            None => missing.push(c as u32),
        }
    }
    Ok(StgOutcome { holds: missing.is_empty(), witnesses, missing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::FnColoring;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn realization_examples() {
        let uni: Vec<u64> = (0..10).collect();
        let fam = ColoringFamily::new(uni.clone())
            .with(Box::new(FnColoring::new(1, 2, |s: &[u64]| (s[0] % 2) as u32)))
            .unwrap();
        assert_eq!(realization_check(&fam, &[0, 1]).unwrap().witnessed, Some(1));
        assert_eq!(realization_check(&fam, &[0, 2]).unwrap().witnessed, None);
        assert!(realization_check(&fam, &[11]).is_err());
        let ones = ColoringFamily::new(uni)
            .with(Box::new(FnColoring::new(2, 1, |_: &[u64]| 0)))
            .unwrap()
            .with(Box::new(FnColoring::new(3, 1, |_: &[u64]| 0)))
            .unwrap();
        assert_eq!(realization_check(&ones, &[4]).unwrap().witnessed, None);
        assert_eq!(realization_check(&ones, &[4, 5]).unwrap().witnessed, Some(2));
        let sum = FnColoring::new(2, 5, |s: &[u64]| ((s[0] + s[1]) % 5) as u32);
        assert_eq!(square_bracket_count(&sum, &[0u64, 1, 2]), 3);
    }

    #[test]
    fn stg_examples() {
        let input = StgInput {
            alphas: vec![o("0"), o("w"), o("w*2")],
            gamma: vec![vec![], vec![o("3")], vec![o("5"), o("w+1")]],
        };
        let d = FnColoring::new(1, 3, |s: &[Ordinal]| if s[0].is_limit() || s[0] > o("w") { 2 } else { 1 });
        let one = FnColoring::new(2, 1, |_: &[Ordinal]| 0);
        assert!(stg_check(&one, &input, 1).unwrap().holds);
        assert!(stg_check(&d, &input, 1).is_err());
        let r = stg_check(&d, &input, 3).unwrap();
        assert!(!r.holds);
        assert_eq!(r.missing, vec![0]);
        let bad = StgInput { alphas: input.alphas.clone(), gamma: vec![vec![], vec![o("w")], vec![o("5"), o("w+1")]] };
        assert!(stg_check(&d, &bad, 1).is_err());
    }
}
