use smallvec::SmallVec;

use super::{Ordinal, OrdinalError, Otp, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClubKind {
    SuccessorPair,
    LimitSequence,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Shape {
    /// `{0, pred}`.
    Pair { pred: Ordinal },
    /// `{0} ∪ {base + ω^step·m + shift : m ≥ 1}`.
    Sequence { base: Ordinal, step: u32, shift: u64 },
}

/// The canonical club `C_i ⊆ i`, kept in closed form.
///
/// * successor `i`: `{0, i−1}`;
/// * `i = δ + ω`: `{0} ∪ {δ+m : m ≥ 1}`;
/// * `i = δ + ω^a`, `a ≥ 2`: `{0} ∪ {δ + ω^(a−1)·m + 1 : m ≥ 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Club {
    owner: Ordinal,
    shape: Shape,
}

impl Club {
    pub fn of(i: &Ordinal) -> Result<Club, OrdinalError> {
        club_of(i)
    }

    pub fn owner(&self) -> &Ordinal {
        &self.owner
    }

    pub fn kind(&self) -> ClubKind {
        match self.shape {
            Shape::Pair { .. } => ClubKind::SuccessorPair,
            Shape::Sequence { .. } => ClubKind::LimitSequence,
        }
    }

    /// `|C|`: 1 for `C_1 = {0}`, 2 for other successor owners, ω for limits.
    pub fn size(&self) -> Otp {
        match &self.shape {
            Shape::Pair { pred } if pred.is_zero() => Otp::Finite(1),
            Shape::Pair { .. } => Otp::Finite(2),
            Shape::Sequence { .. } => Otp::Omega,
        }
    }

    /// The `m`-th member in increasing order (`m = 0` gives 0). `None` past the end
    /// of a finite club.
    pub fn nth(&self, m: u64) -> Option<Ordinal> {
        if m == 0 {
            return Some(Ordinal::zero());
        }
        match &self.shape {
            Shape::Pair { pred } => (m == 1 && !pred.is_zero()).then(|| pred.clone()),
            Shape::Sequence { base, step, shift } => {
                let mut step_term: SmallVec<[Term; 4]> = SmallVec::new();
                step_term.push(Term { exp: *step, coef: m });
                Some(base.add(&Ordinal::from_small(step_term)).add_finite(*shift))
            }
        }
    }

    /// Number of members `x_m` (`m ≥ 1`) of a sequence club below `alpha < owner`.
    fn count_below(base: &Ordinal, step: u32, shift: u64, alpha: &Ordinal) -> u64 {
        if alpha <= base {
            return 0;
        }
        // alpha = base + rho with every term of rho below ω^(step+1).
        let rho = &alpha.terms()[base.terms().len()..];
        debug_assert_eq!(&alpha.terms()[..base.terms().len()], base.terms());
        if shift == 0 {
            // step = 0: members base+m, rho = r finite.
            let r = rho.first().map_or(0, |t| t.coef);
            r.saturating_sub(1)
        } else {
            let (c, tau) = match rho.first() {
                Some(t) if t.exp == step => (t.coef, &rho[1..]),
                _ => (0, rho),
            };
            // ω^step·m + 1 < ω^step·c + τ  iff  m < c, or m = c and τ > 1.
            let tau_gt_one = match tau {
                [] => false,
                [t] => t.exp > 0 || t.coef > 1,
                _ => true,
            };
            if tau_gt_one {
                c
            } else {
                c.saturating_sub(1)
            }
        }
    }

    pub fn contains(&self, x: &Ordinal) -> bool {
        if x.is_zero() {
            return true;
        }
        if x >= &self.owner {
            return false;
        }
        match &self.shape {
            Shape::Pair { pred } => x == pred,
            Shape::Sequence { base, step, shift } => {
                let c = Self::count_below(base, *step, *shift, x);
                self.nth(c + 1).as_ref() == Some(x)
            }
        }
    }

    /// Largest member `< alpha`. Requires `0 < alpha ≤ owner`; at `alpha = owner`
    /// a limit club has no largest member below.
    pub fn max_below(&self, alpha: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let nothing = || OrdinalError::NothingBelow { alpha: alpha.clone(), owner: self.owner.clone() };
        if alpha.is_zero() {
            return Err(nothing());
        }
        match &self.shape {
            Shape::Pair { pred } => {
                if alpha > &self.owner {
                    Err(OrdinalError::AboveOwner { alpha: alpha.clone(), owner: self.owner.clone() })
                } else if pred < alpha {
                    Ok(pred.clone())
                } else {
                    Ok(Ordinal::zero())
                }
            }
            Shape::Sequence { base, step, shift } => {
                if alpha >= &self.owner {
                    return Err(nothing());
                }
                let c = Self::count_below(base, *step, *shift, alpha);
                Ok(self.nth(c).expect("sequence clubs are infinite"))
            }
        }
    }

    /// Least member `≥ alpha`, where the owner itself counts (it is the closure point).
    pub fn min_at_or_above(&self, alpha: &Ordinal) -> Result<Ordinal, OrdinalError> {
        if alpha > &self.owner {
            return Err(OrdinalError::AboveOwner { alpha: alpha.clone(), owner: self.owner.clone() });
        }
        if alpha == &self.owner || alpha.is_zero() {
            return Ok(alpha.clone());
        }
        match &self.shape {
            Shape::Pair { pred } => Ok(if alpha <= pred { pred.clone() } else { self.owner.clone() }),
            Shape::Sequence { base, step, shift } => {
                let c = Self::count_below(base, *step, *shift, alpha);
                Ok(self.nth(c + 1).expect("sequence clubs are infinite"))
            }
        }
    }

    /// Least member `> x`, if any.
    pub fn min_above(&self, x: &Ordinal) -> Option<Ordinal> {
        if x >= &self.owner {
            return None;
        }
        match &self.shape {
            Shape::Pair { pred } => (x < pred).then(|| pred.clone()),
            Shape::Sequence { base, step, shift } => {
                let c = Self::count_below(base, *step, *shift, &x.succ());
                self.nth(c + 1)
            }
        }
    }

    /// `otp(C ∩ gamma)`: a finite count, or ω when `gamma ≥ owner` of a limit club.
    pub fn otp_below(&self, gamma: &Ordinal) -> Otp {
        if gamma.is_zero() {
            return Otp::Finite(0);
        }
        match &self.shape {
            Shape::Pair { pred } => {
                let below = 1 + u64::from(!pred.is_zero() && pred < gamma);
                Otp::Finite(below)
            }
            Shape::Sequence { base, step, shift } => {
                if gamma >= &self.owner {
                    Otp::Omega
                } else {
                    Otp::Finite(1 + Self::count_below(base, *step, *shift, gamma))
                }
            }
        }
    }

    /// Index of a member in increasing order, `None` if not a member.
    pub fn index_of(&self, x: &Ordinal) -> Option<u64> {
        if !self.contains(x) {
            return None;
        }
        match self.otp_below(x) {
            Otp::Finite(n) => Some(n),
            Otp::Omega => None,
        }
    }

    /// Members below `bound`, or `None` if there are infinitely many.
    pub fn members_below(&self, bound: &Ordinal) -> Option<Vec<Ordinal>> {
        match self.otp_below(bound) {
            Otp::Omega => None,
            Otp::Finite(n) => Some((0..n).map(|m| self.nth(m).expect("within size")).collect()),
        }
    }

    /// All members if the club is finite.
    pub fn finite_members(&self) -> Option<Vec<Ordinal>> {
        match &self.shape {
            Shape::Pair { pred } if pred.is_zero() => Some(vec![Ordinal::zero()]),
            Shape::Pair { pred } => Some(vec![Ordinal::zero(), pred.clone()]),
            Shape::Sequence { .. } => None,
        }
    }
}

/// `C_i` for `i > 0`.
pub fn club_of(i: &Ordinal) -> Result<Club, OrdinalError> {
    if i.is_zero() {
        return Err(OrdinalError::ZeroClub);
    }
    let shape = if let Some(pred) = i.pred() {
        Shape::Pair { pred }
    } else {
        let (base, a) = i.split_limit().expect("nonzero non-successor is a limit");
        if a == 1 {
            Shape::Sequence { base, step: 0, shift: 0 }
        } else {
            Shape::Sequence { base, step: a - 1, shift: 1 }
        }
    };
    Ok(Club { owner: i.clone(), shape })
}
