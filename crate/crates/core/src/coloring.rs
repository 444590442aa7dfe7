//! Colorings of finite sets, shared by the ordinal, natural-number and tree layers.

/// A coloring of `arity`-element sets by colors `0..colors()`.
///
/// `color` receives the set sorted ascending without repetitions; callers are
/// responsible for that normal form so that implementations can rely on it.
pub trait SetColoring<T>: Send + Sync {
    fn arity(&self) -> usize;
    fn colors(&self) -> u32;
    fn color(&self, set: &[T]) -> u32;
}

impl<T, C: SetColoring<T> + ?Sized> SetColoring<T> for &C {
    fn arity(&self) -> usize {
        (**self).arity()
    }
    fn colors(&self) -> u32 {
        (**self).colors()
    }
    fn color(&self, set: &[T]) -> u32 {
        (**self).color(set)
    }
}

impl<T, C: SetColoring<T> + ?Sized> SetColoring<T> for Box<C> {
    fn arity(&self) -> usize {
        (**self).arity()
    }
    fn colors(&self) -> u32 {
        (**self).colors()
    }
    fn color(&self, set: &[T]) -> u32 {
        (**self).color(set)
    }
}

/// Outcome of a checker: the property holds, or the first counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// A coloring given by a closure.
pub struct FnColoring<F> {
    arity: usize,
    colors: u32,
    f: F,
}

impl<F> FnColoring<F> {
    pub fn new(arity: usize, colors: u32, f: F) -> Self {
        FnColoring { arity, colors, f }
    }
}

impl<T, F: Fn(&[T]) -> u32 + Send + Sync> SetColoring<T> for FnColoring<F> {
    fn arity(&self) -> usize {
        self.arity
    }
    fn colors(&self) -> u32 {
        self.colors
    }
    fn color(&self, set: &[T]) -> u32 {
        (self.f)(set)
    }
}

/// Visit every `k`-element subset of `0..n` as ascending index vectors, in
/// lexicographic order. Stops early when `f` returns `false`.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}
