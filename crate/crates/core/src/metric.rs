//! The meet `x ∧ y`, the evaluation function on meets, and the distances
//! built from them.
//!
//! * [`distance`]: `0` when `x = y`, `1` when `x(0) ≠ y(0)`, otherwise
//!   `2^-(n+1-m)` where `[m, n]` is the maximal interval around 0 on which
//!   the two configurations agree. Either endpoint may be `∓①`, giving
//!   infinitesimal distances.
//! * [`classical_distance`]: `2^-k` with `k` the smallest `|i|` at which the
//!   configurations differ (symmetric window).
//! * [`summed_distance`]: `Σ_{i=-①..①} |x(i)-y(i)| · 2^-|i|`, evaluated
//!   exactly for binary alphabets.
//!
//! Note that the agreement interval need not be symmetric around 0, so two
//! meets taken against a common point are not always nested. When they are
//! not, the strong triangle inequality can fail for [`distance`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::config::{word_to_string, Configuration, Symbol};
use crate::error::{Error, Result};
use crate::grossnum::{GrossLinear, GrossQuantity};

/// A finite integer or `±①`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedIndex {
    NegInfinity,
    Finite(i64),
    PosInfinity,
}

impl ExtendedIndex {
    pub fn to_gross(self) -> GrossLinear {
        match self {
            ExtendedIndex::NegInfinity => -GrossLinear::GROSSONE,
            ExtendedIndex::Finite(i) => GrossLinear::finite(i),
            ExtendedIndex::PosInfinity => GrossLinear::GROSSONE,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtendedIndex::Finite(i) => Some(i),
            _ => None,
        }
    }

    pub fn format(&self, ascii: bool) -> String {
        match self {
            ExtendedIndex::Finite(i) => i.to_string(),
            other => other.to_gross().format(ascii),
        }
    }
}

impl fmt::Display for ExtendedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(f.alternate()))
    }
}

/// Result of `x ∧ y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Meet {
    /// `x = y`.
    Identical,
    /// `x(0) ≠ y(0)`; the lower element `*`.
    Star,
    /// Maximal agreement interval `[m, n]` with `m ≤ 0 ≤ n`.
    Agreement {
        m: ExtendedIndex,
        n: ExtendedIndex,
        /// `x[m, n]` when both endpoints are finite.
        witness: Option<Vec<Symbol>>,
    },
}

impl Meet {
    /// Agreement interval as `(m, n)`; `None` for `*`. `Identical` spans
    /// `[-①, ①]`.
    pub fn interval(&self) -> Option<(ExtendedIndex, ExtendedIndex)> {
        match self {
            Meet::Identical => Some((ExtendedIndex::NegInfinity, ExtendedIndex::PosInfinity)),
            Meet::Star => None,
            Meet::Agreement { m, n, .. } => Some((*m, *n)),
        }
    }

    /// Inclusion order on meets: `*` is the bottom, `Identical` the top, and
    /// agreements compare by interval containment. `None` when neither
    /// interval contains the other.
    pub fn partial_cmp_inclusion(&self, other: &Meet) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering::*;
        match (self.interval(), other.interval()) {
            (None, None) => Some(Equal),
            (None, Some(_)) => Some(Less),
            (Some(_), None) => Some(Greater),
            (Some((m1, n1)), Some((m2, n2))) => {
                if m1 == m2 && n1 == n2 {
                    Some(Equal)
                } else if m1 >= m2 && n1 <= n2 {
                    Some(Less)
                } else if m1 <= m2 && n1 >= n2 {
                    Some(Greater)
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for Meet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ascii = f.alternate();
        match self {
            Meet::Identical => f.write_str("identical"),
            Meet::Star => f.write_str("*"),
            Meet::Agreement { m, n, witness } => {
                write!(f, "m={} n={}", m.format(ascii), n.format(ascii))?;
                if let Some(w) = witness {
                    write!(f, " witness={}", word_to_string(w))?;
                }
                Ok(())
            }
        }
    }
}

/// Index range beyond which both configurations are purely periodic on the
/// right, and the joint period there.
fn right_tail(x: &Configuration, y: &Configuration) -> (i64, i64) {
    let start = x.right_start().max(y.right_start()).max(0);
    let period = (x.right().len() as i64).lcm(&(y.right().len() as i64));
    (start, period)
}

fn left_tail(x: &Configuration, y: &Configuration) -> (i64, i64) {
    let start = (x.offset().min(y.offset()) - 1).min(0);
    let period = (x.left().len() as i64).lcm(&(y.left().len() as i64));
    (start, period)
}

/// First `i ≥ 0` with `x(i) ≠ y(i)`, if any.
fn first_disagreement_right(x: &Configuration, y: &Configuration) -> Option<i64> {
    let (start, period) = right_tail(x, y);
    (0..start + period).find(|&i| x.eval_at(i) != y.eval_at(i))
}

/// Largest `i ≤ 0` with `x(i) ≠ y(i)`, if any.
fn first_disagreement_left(x: &Configuration, y: &Configuration) -> Option<i64> {
    let (start, period) = left_tail(x, y);
    (start - period + 1..=0)
        .rev()
        .find(|&i| x.eval_at(i) != y.eval_at(i))
}

/// `x ∧ y`.
pub fn agreement_interval(x: &Configuration, y: &Configuration) -> Result<Meet> {
    x.alphabet().same_as(&y.alphabet())?;
    if x == y {
        return Ok(Meet::Identical);
    }
    if x.eval_at(0) != y.eval_at(0) {
        return Ok(Meet::Star);
    }
    let n = match first_disagreement_right(x, y) {
        Some(i) => ExtendedIndex::Finite(i - 1),
        None => ExtendedIndex::PosInfinity,
    };
    let m = match first_disagreement_left(x, y) {
        Some(i) => ExtendedIndex::Finite(i + 1),
        None => ExtendedIndex::NegInfinity,
    };
    let witness = match (m, n) {
        (ExtendedIndex::Finite(lo), ExtendedIndex::Finite(hi)) => Some(x.window(lo, hi).symbols),
        _ => None,
    };
    Ok(Meet::Agreement { m, n, witness })
}

/// The evaluation function: `1` on `*`, `2^-(n+1-m)` on an agreement.
pub fn evaluate_meet(meet: &Meet) -> Result<GrossQuantity> {
    match meet {
        Meet::Identical => Err(Error::Contract(
            "evaluation of an identical meet; the distance is 0".into(),
        )),
        Meet::Star => Ok(GrossQuantity::one()),
        Meet::Agreement { m, n, .. } => {
            if *m == ExtendedIndex::NegInfinity && *n == ExtendedIndex::PosInfinity {
                return Err(Error::Contract(
                    "agreement on all of ℤ is not a proper meet".into(),
                ));
            }
            let len = n
                .to_gross()
                .checked_add(GrossLinear::finite(1))?
                .checked_sub(m.to_gross())?;
            GrossQuantity::pow(2, len.checked_neg()?)
        }
    }
}

/// `d(x, y)`.
pub fn distance(x: &Configuration, y: &Configuration) -> Result<GrossQuantity> {
    match agreement_interval(x, y)? {
        Meet::Identical => Ok(GrossQuantity::zero()),
        meet => evaluate_meet(&meet),
    }
}

/// Smallest `|i|` with `x(i) ≠ y(i)`, or `None` when the configurations are equal.
pub fn symmetric_agreement_radius(x: &Configuration, y: &Configuration) -> Result<Option<i64>> {
    x.alphabet().same_as(&y.alphabet())?;
    let r = first_disagreement_right(x, y);
    let l = first_disagreement_left(x, y).map(|i| -i);
    Ok(match (l, r) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    })
}

/// `2^-k` with `k = min{|i| : x(i) ≠ y(i)}`; `0` for equal inputs.
pub fn classical_distance(x: &Configuration, y: &Configuration) -> Result<GrossQuantity> {
    match symmetric_agreement_radius(x, y)? {
        None => Ok(GrossQuantity::zero()),
        Some(k) => GrossQuantity::pow(2, GrossLinear::finite(-k)),
    }
}

/// `Σ 2^-i` over `i ≡ first (mod step)` for `first ≤ i ≤ last`, with
/// `last ≡ first (mod step)`.
fn progression_sum(first: i64, last: GrossLinear, step: i64) -> Result<GrossQuantity> {
    // (2^-first - 2^-(last+step)) / (1 - 2^-step)
    let head = GrossQuantity::pow(2, GrossLinear::finite(-first))?;
    let tail = GrossQuantity::pow(
        2,
        last.checked_add(GrossLinear::finite(step))?.checked_neg()?,
    )?;
    let two_step = num_traits::pow(BigInt::from(2), step as usize);
    let factor = BigRational::new(two_step.clone(), two_step - BigInt::one());
    Ok(head.checked_sub(&tail)?.scale(&factor))
}

/// One-sided sum `Σ_{k=1..①} diff(k) · 2^-k` where `diff` becomes periodic
/// with period `period` from `tail_start ≥ 1` on. Grossone is divisible by
/// every finite period, so the last index in residue class `j` is
/// `① - ((-j) mod period)`.
fn one_sided_sum(
    diff: impl Fn(i64) -> bool,
    tail_start: i64,
    period: i64,
) -> Result<GrossQuantity> {
    let mut finite = BigRational::from_integer(0.into());
    for k in 1..tail_start {
        if diff(k) {
            finite += BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(2), k as usize));
        }
    }
    let mut total = GrossQuantity::from_rational(finite);
    for first in tail_start..tail_start + period {
        if diff(first) {
            let back = (-first).rem_euclid(period);
            let last = GrossLinear::new(1, -back);
            total = total.checked_add(&progression_sum(first, last, period)?)?;
        }
    }
    Ok(total)
}

/// `Σ_{i=-①..①} |x(i) - y(i)| · 2^-|i|` over a binary alphabet.
pub fn summed_distance(x: &Configuration, y: &Configuration) -> Result<GrossQuantity> {
    x.alphabet().same_as(&y.alphabet())?;
    if x.alphabet().size() != 2 {
        return Err(Error::Domain(format!(
            "summed distance needs a binary alphabet, got size {}",
            x.alphabet().size()
        )));
    }
    let (rstart, rperiod) = right_tail(x, y);
    let (lstart, lperiod) = left_tail(x, y);
    let center = if x.eval_at(0) != y.eval_at(0) {
        GrossQuantity::one()
    } else {
        GrossQuantity::zero()
    };
    let right = one_sided_sum(|k| x.eval_at(k) != y.eval_at(k), rstart.max(1), rperiod)?;
    let left = one_sided_sum(
        |k| x.eval_at(-k) != y.eval_at(-k),
        (-lstart).max(1),
        lperiod,
    )?;
    center.checked_add(&right)?.checked_add(&left)
}
