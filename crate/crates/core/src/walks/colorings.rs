use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::ordinals::{Club, ClubKind, Ordinal, Otp};

use super::trace::{n_from_walks, walk, WalkTrace};
use super::{check_decreasing, WalkError, WitnessColorings};

/// Bound on the work spent on one `w` or one club meet; past it the set is
/// reported as too large and the fallback applies.
const SCAN_CAP: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum D2Part {
    One,
    Two,
}

/// The set `w` of class minima in the definition of `d_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum WSet {
    /// Members in increasing order with their positions `otp(γ ∩ C)`.
    Finite { members: Vec<Ordinal>, betas: Vec<u64> },
    Infinite,
    /// `γ⁺_n(α1, α2)` does not exist.
    Undefined,
    TooLarge,
}

impl WSet {
    pub fn len(&self) -> Option<usize> {
        match self {
            WSet::Finite { members, .. } => Some(members.len()),
            _ => None,
        }
    }

    /// The `w_size` column: a count, `inf`, `undef` or `large`.
    pub fn size_label(&self) -> String {
        match self {
            WSet::Finite { members, .. } => members.len().to_string(),
            WSet::Infinite => "inf".into(),
            WSet::Undefined => "undef".into(),
            WSet::TooLarge => "large".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct D1Eval {
    pub n: usize,
    /// `i(*)`, absent when `w` is undefined or the meet was too large.
    pub istar: Option<Ordinal>,
    pub kappa: Otp,
    pub w: WSet,
    pub color: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    D1,
    D2,
    /// `w` has no parity; `d_2` is used.
    Fallback,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::D1 => "d1",
            Branch::D2 => "d2",
            Branch::Fallback => "fallback",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DEval {
    pub k_walk: usize,
    pub n: usize,
    pub w: WSet,
    pub branch: Branch,
    pub color: u32,
}

/// Largest common member of two clubs, or the common owner when the clubs coincide
/// and are infinite. `None` if the search exceeds [`SCAN_CAP`].
fn sup_meet(a: &Club, b: &Club) -> Option<Ordinal> {
    if a.owner() == b.owner() {
        return Some(match a.finite_members() {
            Some(m) => m.last().expect("0 is a member").clone(),
            None => a.owner().clone(),
        });
    }
    let (s, g) = if a.owner() < b.owner() { (a, b) } else { (b, a) };
    // Leapfrog downwards from the smaller owner; both clubs contain 0.
    let mut x = s.owner().clone();
    for _ in 0..SCAN_CAP {
        let c = g.max_below(&x).ok()?;
        if c.is_zero() || s.contains(&c) {
            return Some(c);
        }
        let d = s.max_below(&c).ok()?;
        if d.is_zero() || g.contains(&d) {
            return Some(d);
        }
        x = d;
    }
    None
}

/// Minima above `istar` of the classes of `P ∖ istar`, two members being in the
/// same class when no member of `A` separates them.
fn class_minima(p: &Club, a: &Club, istar: &Ordinal) -> WSet {
    let owner = p.owner();
    if istar >= owner {
        return WSet::Finite { members: vec![], betas: vec![] };
    }
    if p.kind() == ClubKind::LimitSequence && a.kind() == ClubKind::LimitSequence && a.owner() == owner {
        return WSet::Infinite;
    }
    let mut g = p.min_at_or_above(istar).expect("istar below the owner");
    let mut members = Vec::new();
    if &g == owner {
        return WSet::Finite { members, betas: vec![] };
    }
    if &g > istar {
        members.push(g.clone());
    }
    while let Some(sep) = a.min_above(&g) {
        if &sep >= owner {
            break;
        }
        let next = p.min_at_or_above(&sep).expect("below the owner");
        if &next == owner {
            break;
        }
        members.push(next.clone());
        if members.len() > SCAN_CAP {
            return WSet::TooLarge;
        }
        g = next;
    }
    let betas = members
        .iter()
        .map(|x| match p.otp_below(x) {
            Otp::Finite(n) => n,
            Otp::Omega => unreachable!("members lie below the owner"),
        })
        .collect();
    WSet::Finite { members, betas }
}

struct Walks {
    w01: WalkTrace,
    w02: WalkTrace,
    n: usize,
}

impl Walks {
    fn new(a: &[Ordinal]) -> Result<Walks, WalkError> {
        let w01 = walk(&a[0], &a[1])?;
        let w02 = walk(&a[0], &a[2])?;
        let n = n_from_walks(&w01, &w02);
        Ok(Walks { w01, w02, n })
    }

    /// `C_{γ⁺_n(α0, α1)}`.
    fn club(&self) -> Club {
        Club::of(&self.w01.gamma_plus[self.n]).expect("walk points are positive")
    }

    fn kappa(&self) -> Otp {
        self.w01.gamma_plus[self.n].cf()
    }
}

fn d1_from(a: &[Ordinal], walks: &Walks, wit: &WitnessColorings) -> Result<D1Eval, WalkError> {
    let n = walks.n;
    let p = walks.club();
    let kappa = p.size();
    let undefined = |w: WSet| D1Eval { n, istar: None, kappa, w, color: 0 };
    let w12 = walk(&a[1], &a[2])?;
    if n > w12.k() {
        return Ok(undefined(WSet::Undefined));
    }
    let ca = Club::of(&walks.w02.gamma_plus[n])?;
    let cb = Club::of(&w12.gamma_plus[n])?;
    let Some(istar) = sup_meet(&ca, &cb) else {
        return Ok(undefined(WSet::TooLarge));
    };
    let w = class_minima(&p, &ca, &istar);
    let color = match &w {
        WSet::Finite { betas, .. } => wit.g1(kappa, betas),
        _ => 0,
    };
    Ok(D1Eval { n, istar: Some(istar), kappa, w, color })
}

/// `d_1(α0, α1, α2)` with all intermediate data.
pub fn d1_color(a0: &Ordinal, a1: &Ordinal, a2: &Ordinal, wit: &WitnessColorings) -> Result<D1Eval, WalkError> {
    let a = [a0.clone(), a1.clone(), a2.clone()];
    check_decreasing(&a)?;
    d1_from(&a, &Walks::new(&a)?, wit)
}

fn d2_from(a: &[Ordinal], part: D2Part, walks: &Walks, wit: &WitnessColorings) -> Result<u32, WalkError> {
    let kappa = walks.kappa();
    let positions: Vec<Otp> = match part {
        D2Part::One => {
            let c = walks.club();
            a[1..].iter().map(|x| c.otp_below(x)).collect()
        }
        D2Part::Two => {
            let mut out = Vec::with_capacity(a.len() / 2);
            for pair in a.chunks(2) {
                let t = walk(&pair[0], &pair[1])?;
                if walks.n > t.k() {
                    return Ok(0);
                }
                out.push(Club::of(&t.gamma_plus[walks.n])?.otp_below(&pair[1]));
            }
            out
        }
    };
    Ok(wit.g2(kappa, &positions))
}

/// `d_2` on a strictly decreasing tuple: part one takes `n + 1 ≥ 3` arguments,
/// part two an even number `≥ 4`.
pub fn d2_color(a: &[Ordinal], part: D2Part, wit: &WitnessColorings) -> Result<u32, WalkError> {
    match part {
        D2Part::One if a.len() < 3 => {
            return Err(WalkError::Arity { expected: "at least 3".into(), got: a.len() });
        }
        D2Part::Two if a.len() < 4 || a.len() % 2 == 1 => {
            return Err(WalkError::Arity { expected: "even, at least 4".into(), got: a.len() });
        }
        _ => {}
    }
    check_decreasing(a)?;
    d2_from(a, part, &Walks::new(a)?, wit)
}

/// `d`: `d_1` on the first three arguments when `w` has odd size, else `d_2` (part one).
pub fn d_color(a: &[Ordinal], wit: &WitnessColorings) -> Result<DEval, WalkError> {
    if a.len() < 3 {
        return Err(WalkError::Arity { expected: "at least 3".into(), got: a.len() });
    }
    check_decreasing(a)?;
    let walks = Walks::new(a)?;
    let d1 = d1_from(a, &walks, wit)?;
    let (branch, color) = match d1.w.len() {
        Some(s) if s % 2 == 1 => (Branch::D1, d1.color),
        Some(_) => (Branch::D2, d2_from(a, D2Part::One, &walks, wit)?),
        None => (Branch::Fallback, d2_from(a, D2Part::One, &walks, wit)?),
    };
    Ok(DEval { k_walk: walks.w01.k(), n: walks.n, w: d1.w, branch, color })
}

/// One line of a `d` sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub alphas: Vec<Ordinal>,
    pub k_walk: usize,
    pub n_triple: usize,
    pub w_size: String,
    pub branch: Branch,
    pub color: u32,
}

impl SweepRow {
    pub fn header(arity: usize) -> Vec<String> {
        let mut h: Vec<String> = (0..arity).map(|i| format!("alpha_{i}")).collect();
        h.extend(["k_walk", "n_triple", "w_size", "branch", "color"].map(String::from));
        h
    }

    pub fn record(&self) -> Vec<String> {
        let mut r: Vec<String> = self.alphas.iter().map(Ordinal::to_string).collect();
        r.extend([
            self.k_walk.to_string(),
            self.n_triple.to_string(),
            self.w_size.clone(),
            self.branch.label().to_string(),
            self.color.to_string(),
        ]);
        r
    }
}

pub fn sweep_row(a: &[Ordinal], wit: &WitnessColorings) -> Result<SweepRow, WalkError> {
    let e = d_color(a, wit)?;
    Ok(SweepRow {
        alphas: a.to_vec(),
        k_walk: e.k_walk,
        n_triple: e.n,
        w_size: e.w.size_label(),
        branch: e.branch,
        color: e.color,
    })
}

/// `count` strictly decreasing `arity`-tuples of positive members of `universe`,
/// drawn with ChaCha8 seeded by `seed`. Repeats are possible.
pub fn sample_tuples(universe: &[Ordinal], arity: usize, count: usize, seed: u64) -> Result<Vec<Vec<Ordinal>>, WalkError> {
    let mut pool: Vec<Ordinal> = universe.iter().filter(|x| !x.is_zero()).cloned().collect();
    pool.sort();
    pool.dedup();
    if arity == 0 || pool.len() < arity {
        return Err(WalkError::InvalidArgument(format!(
            "cannot draw {arity} distinct positive ordinals from {} candidates",
            pool.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let mut idx = rand::seq::index::sample(&mut rng, pool.len(), arity).into_vec();
            idx.sort_unstable_by(|a, b| b.cmp(a));
            idx.into_iter().map(|i| pool[i].clone()).collect()
        })
        .collect())
}

/// Evaluate `d` on every tuple on the current rayon pool; rows come back sorted.
pub fn sweep(tuples: &[Vec<Ordinal>], wit: &WitnessColorings) -> Result<Vec<SweepRow>, WalkError> {
    let mut rows = tuples.par_iter().map(|t| sweep_row(t, wit)).collect::<Result<Vec<_>, _>>()?;
    rows.sort_by(|a, b| a.alphas.cmp(&b.alphas));
    Ok(rows)
}

/// Write rows as CSV with the sweep header.
pub fn write_sweep_csv<W: Write>(out: W, arity: usize, rows: &[SweepRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SweepRow::header(arity))?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush()?;
    Ok(())
}
