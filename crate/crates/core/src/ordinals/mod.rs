//! Ordinals below ω^ω in Cantor normal form, and the canonical clubs `C_i`.
//!
//! An ordinal is a list of `(exponent, coefficient)` terms with strictly
//! decreasing exponents and positive coefficients; the empty list is 0. The
//! text form is `term ('+' term)*` with `term = w^E*C | w^E | w*C | w | N`.

mod club;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;
use thiserror::Error;

pub use club::{club_of, Club, ClubKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("exponents not strictly decreasing at byte {pos}")]
    NotNormalized { pos: usize },
    #[error("invalid terms: {0}")]
    InvalidTerms(String),
    #[error("the club of 0 does not exist")]
    ZeroClub,
    #[error("{alpha} is above the club owner {owner}")]
    AboveOwner { alpha: Ordinal, owner: Ordinal },
    #[error("no member of C_{owner} is below {alpha}")]
    NothingBelow { alpha: Ordinal, owner: Ordinal },
    #[error("coefficient overflow")]
    Overflow,
}

/// One Cantor-normal-form term `ω^exp · coef`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub exp: u32,
    pub coef: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrdinalKind {
    Zero,
    Successor,
    Limit,
}

/// An ordinal below ω^ω.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Ordinal {
    terms: SmallVec<[Term; 4]>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal::default()
    }

    pub fn finite(n: u64) -> Self {
        let mut o = Ordinal::zero();
        if n > 0 {
            o.terms.push(Term { exp: 0, coef: n });
        }
        o
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(1)
    }

    /// ω^e.
    pub fn omega_pow(e: u32) -> Self {
        let mut o = Ordinal::zero();
        o.terms.push(Term { exp: e, coef: 1 });
        o
    }

    /// Build from `(exponent, coefficient)` pairs, validating normal form.
    pub fn from_terms<I: IntoIterator<Item = (u32, u64)>>(terms: I) -> Result<Self, OrdinalError> {
        let mut o = Ordinal::zero();
        for (exp, coef) in terms {
            if coef == 0 {
                return Err(OrdinalError::InvalidTerms(format!("zero coefficient at exponent {exp}")));
            }
            if let Some(last) = o.terms.last() {
                if last.exp <= exp {
                    return Err(OrdinalError::InvalidTerms(format!(
                        "exponent {exp} after {}",
                        last.exp
                    )));
                }
            }
            o.terms.push(Term { exp, coef });
        }
        Ok(o)
    }

    pub(crate) fn from_small(terms: SmallVec<[Term; 4]>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].exp > w[1].exp));
        debug_assert!(terms.iter().all(|t| t.coef > 0));
        Ordinal { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn kind(&self) -> OrdinalKind {
        match self.terms.last() {
            None => OrdinalKind::Zero,
            Some(t) if t.exp == 0 => OrdinalKind::Successor,
            Some(_) => OrdinalKind::Limit,
        }
    }

    pub fn is_successor(&self) -> bool {
        self.kind() == OrdinalKind::Successor
    }

    pub fn is_limit(&self) -> bool {
        self.kind() == OrdinalKind::Limit
    }

    /// The natural number this ordinal equals, if it is finite.
    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exp == 0 => Some(t.coef),
            _ => None,
        }
    }

    /// Largest exponent, `None` for 0.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.exp)
    }

    pub fn succ(&self) -> Ordinal {
        self.add_finite(1)
    }

    /// `self + n`.
    pub fn add_finite(&self, n: u64) -> Ordinal {
        if n == 0 {
            return self.clone();
        }
        let mut o = self.clone();
        match o.terms.last_mut() {
            Some(t) if t.exp == 0 => t.coef = t.coef.checked_add(n).expect("ordinal coefficient overflow"),
            _ => o.terms.push(Term { exp: 0, coef: n }),
        }
        o
    }

    /// The immediate predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut o = self.clone();
        let t = o.terms.last_mut().expect("successor has a finite term");
        if t.coef == 1 {
            o.terms.pop();
        } else {
            t.coef -= 1;
        }
        Some(o)
    }

    /// Ordinal sum `self + rhs` (absorbs the terms of `self` below rhs's degree).
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: SmallVec<[Term; 4]> = self.terms.iter().copied().filter(|t| t.exp >= lead.exp).collect();
        let mut rest = rhs.terms.iter().copied();
        match terms.last_mut() {
            Some(t) if t.exp == lead.exp => {
                t.coef = t.coef.checked_add(lead.coef).expect("ordinal coefficient overflow");
                rest.next();
            }
            _ => {}
        }
        terms.extend(rest);
        Ordinal::from_small(terms)
    }

    /// Split a limit ordinal as `δ + ω^a` with `a ≥ 1`.
    pub fn split_limit(&self) -> Option<(Ordinal, u32)> {
        if !self.is_limit() {
            return None;
        }
        let mut delta = self.clone();
        let last = delta.terms.last_mut().expect("limit is nonzero");
        let a = last.exp;
        if last.coef == 1 {
            delta.terms.pop();
        } else {
            last.coef -= 1;
        }
        Some((delta, a))
    }

    /// Cofinality key: 0 for 0, 1 for successors, ω for limits.
    pub fn cf(&self) -> Otp {
        match self.kind() {
            OrdinalKind::Zero => Otp::Finite(0),
            OrdinalKind::Successor => Otp::Finite(1),
            OrdinalKind::Limit => Otp::Omega,
        }
    }

    /// Every ordinal whose terms have exponent ≤ `max_exp` and coefficient ≤
    /// `max_coef`, in increasing order. There are `(max_coef+1)^(max_exp+1)`.
    pub fn universe(max_exp: u32, max_coef: u64) -> Vec<Ordinal> {
        let base = max_coef + 1;
        let digits = max_exp as usize + 1;
        let total = base.pow(digits as u32);
        let mut out = Vec::with_capacity(total as usize);
        for code in 0..total {
            // Digit j of `code` (most significant first) is the coefficient of ω^(max_exp - j).
            let mut terms: SmallVec<[Term; 4]> = SmallVec::new();
            let mut rem = code;
            let mut coefs = vec![0u64; digits];
            for slot in coefs.iter_mut().rev() {
                *slot = rem % base;
                rem /= base;
            }
            for (j, c) in coefs.into_iter().enumerate() {
                if c > 0 {
                    terms.push(Term { exp: max_exp - j as u32, coef: c });
                }
            }
            out.push(Ordinal::from_small(terms));
        }
        out
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.exp.cmp(&b.exp).then(a.coef.cmp(&b.coef)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Three-way comparison in CNF.
pub fn ord_compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match (t.exp, t.coef) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("w")?,
                (1, c) => write!(f, "w*{c}")?,
                (e, 1) => write!(f, "w^{e}")?,
                (e, c) => write!(f, "w^{e}*{c}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_ordinal(s)
    }
}

pub use parse::parse_ordinal;

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A natural number or ω: order types of club segments, cofinalities and club sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Otp {
    Finite(u64),
    Omega,
}

impl Otp {
    /// Word used when hashing: ω maps to `u64::MAX`.
    pub fn as_key(self) -> u64 {
        match self {
            Otp::Finite(n) => n,
            Otp::Omega => u64::MAX,
        }
    }

    pub fn to_ordinal(self) -> Ordinal {
        match self {
            Otp::Finite(n) => Ordinal::finite(n),
            Otp::Omega => Ordinal::omega(),
        }
    }
}

impl fmt::Display for Otp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Otp::Finite(n) => write!(f, "{n}"),
            Otp::Omega => f.write_str("w"),
        }
    }
}

impl Serialize for Otp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
