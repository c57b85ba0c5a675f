//! Exact arithmetic for quantities built from grossone (①).
//!
//! Two value types live here:
//!
//! * [`GrossLinear`]: `a·① + b` with integer `a`, `b`. Used for exponents
//!   and for interval endpoints such as `①+3` or `-(n+1-m)`.
//! * [`GrossQuantity`]: a finite sum of terms `c · B^(a·① + b)` with exact
//!   rational `c` and integer base `B ≥ 2`. Distances, cardinalities and
//!   geometric sums are all of this shape.
//!
//! Comparison is the order obtained by substituting any sufficiently large
//! finite integer for ①. No floating point is used anywhere.
//!
//! ## Normal form
//!
//! Terms are grouped by *growth class* `(B, a)`: two terms with the same
//! reduced base and the same ①-coefficient are like terms, since
//! `c1·B^(a①+b1) + c2·B^(a①+b2) = (c1·B^b1 + c2·B^b2)·B^(a①)`. After merging,
//! the `B`-adic valuation of the coefficient is moved into the exponent, so the
//! stored coefficient is never divisible by `B` (numerator or denominator).
//! Terms with `a = 0` collapse into a single rational stored as `c·2^0`.
//! Bases are reduced so they are not perfect powers (`4^① = 2^(2①)`). With
//! these rules distinct growth classes have distinct growth rates `B^a`, so
//! equal values have identical normal forms and the dominant term of a
//! difference decides its sign.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `a·① + b`, ordered lexicographically on `(a, b)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrossLinear {
    /// Coefficient of ①.
    pub a: i64,
    /// Finite part.
    pub b: i64,
}

impl GrossLinear {
    pub const ZERO: GrossLinear = GrossLinear { a: 0, b: 0 };
    pub const GROSSONE: GrossLinear = GrossLinear { a: 1, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        GrossLinear { a, b }
    }

    pub const fn finite(b: i64) -> Self {
        GrossLinear { a: 0, b }
    }

    pub fn is_finite(&self) -> bool {
        self.a == 0
    }

    pub fn checked_add(self, rhs: GrossLinear) -> Result<GrossLinear> {
        Ok(GrossLinear {
            a: self
                .a
                .checked_add(rhs.a)
                .ok_or(Error::Overflow("GrossLinear add"))?,
            b: self
                .b
                .checked_add(rhs.b)
                .ok_or(Error::Overflow("GrossLinear add"))?,
        })
    }

    pub fn checked_neg(self) -> Result<GrossLinear> {
        Ok(GrossLinear {
            a: self
                .a
                .checked_neg()
                .ok_or(Error::Overflow("GrossLinear neg"))?,
            b: self
                .b
                .checked_neg()
                .ok_or(Error::Overflow("GrossLinear neg"))?,
        })
    }

    pub fn checked_sub(self, rhs: GrossLinear) -> Result<GrossLinear> {
        self.checked_add(rhs.checked_neg()?)
    }

    pub fn checked_scale(self, k: i64) -> Result<GrossLinear> {
        Ok(GrossLinear {
            a: self
                .a
                .checked_mul(k)
                .ok_or(Error::Overflow("GrossLinear scale"))?,
            b: self
                .b
                .checked_mul(k)
                .ok_or(Error::Overflow("GrossLinear scale"))?,
        })
    }

    /// Renders `a①+b` with `G` standing in for ① when `ascii` is set.
    pub fn format(&self, ascii: bool) -> String {
        let unit = if ascii { "G" } else { "①" };
        let mut s = String::new();
        match self.a {
            0 => return self.b.to_string(),
            1 => s.push_str(unit),
            -1 => {
                s.push('-');
                s.push_str(unit);
            }
            a => {
                s.push_str(&a.to_string());
                s.push_str(unit);
            }
        }
        match self.b.cmp(&0) {
            Ordering::Greater => s.push_str(&format!("+{}", self.b)),
            Ordering::Less => s.push_str(&self.b.to_string()),
            Ordering::Equal => {}
        }
        s
    }
}

impl fmt::Display for GrossLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(false))
    }
}

// Operator forms panic on overflow; use the `checked_*` methods to recover.
impl Add for GrossLinear {
    type Output = GrossLinear;
    fn add(self, rhs: GrossLinear) -> GrossLinear {
        self.checked_add(rhs).expect("GrossLinear overflow")
    }
}

impl Sub for GrossLinear {
    type Output = GrossLinear;
    fn sub(self, rhs: GrossLinear) -> GrossLinear {
        self.checked_sub(rhs).expect("GrossLinear overflow")
    }
}

impl Neg for GrossLinear {
    type Output = GrossLinear;
    fn neg(self) -> GrossLinear {
        self.checked_neg().expect("GrossLinear overflow")
    }
}

impl From<i64> for GrossLinear {
    fn from(b: i64) -> Self {
        GrossLinear::finite(b)
    }
}

/// One summand `coeff · base^exp` of a [`GrossQuantity`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: BigRational,
    pub base: u64,
    pub exp: GrossLinear,
}

impl Term {
    pub fn is_finite(&self) -> bool {
        self.exp.is_finite()
    }
}

/// Finite formal sum of `c · B^(a①+b)` terms in normal form, sorted by
/// descending magnitude.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GrossQuantity {
    terms: Vec<Term>,
}

/// Reduces `n` to `(root, k)` with `root^k = n` and `root` not a perfect power.
fn reduce_base(n: u64) -> (u64, u32) {
    let mut best = (n, 1);
    let mut k = 2u32;
    while k < 64 && (1u64 << k) <= n {
        let r = n.nth_root(k);
        if r >= 2 && r.checked_pow(k) == Some(n) {
            best = (r, k);
        }
        k += 1;
    }
    best
}

/// `base^e` as an exact rational, for finite `e`.
fn rational_pow(base: u64, e: i64) -> BigRational {
    let mag = num_traits::pow(BigInt::from(base), e.unsigned_abs() as usize);
    if e >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

/// Orders growth rates `b1^a1` against `b2^a2`.
fn growth_cmp(b1: u64, a1: i64, b2: u64, a2: i64) -> Ordering {
    match a1.signum().cmp(&a2.signum()) {
        Ordering::Equal => {}
        other => return other,
    }
    if a1 == 0 || (b1 == b2 && a1 == a2) {
        return Ordering::Equal;
    }
    if b1 == b2 {
        return a1.cmp(&a2);
    }
    let p1 = num_traits::pow(BigUint::from(b1), a1.unsigned_abs() as usize);
    let p2 = num_traits::pow(BigUint::from(b2), a2.unsigned_abs() as usize);
    if a1 > 0 {
        p1.cmp(&p2)
    } else {
        p2.cmp(&p1)
    }
}

/// Scratch space for building normal forms.
#[derive(Default)]
struct Accumulator {
    finite: BigRational,
    // (base, a) -> (c, b) meaning c·base^(a① + b)
    gross: BTreeMap<(u64, i64), (BigRational, i64)>,
}

impl Accumulator {
    /// `coeff · base^exp`; `base` must already be reduced.
    fn push(&mut self, coeff: BigRational, base: u64, exp: GrossLinear) {
        if coeff.is_zero() {
            return;
        }
        if exp.a == 0 {
            self.finite += coeff * rational_pow(base, exp.b);
            return;
        }
        match self.gross.get_mut(&(base, exp.a)) {
            None => {
                self.gross.insert((base, exp.a), (coeff, exp.b));
            }
            Some((c, b)) => {
                let lo = (*b).min(exp.b);
                let merged = c.clone() * rational_pow(base, *b - lo)
                    + coeff * rational_pow(base, exp.b - lo);
                *c = merged;
                *b = lo;
            }
        }
    }

    fn finish(self) -> Result<GrossQuantity> {
        let mut terms = Vec::with_capacity(self.gross.len() + 1);
        if !self.finite.is_zero() {
            terms.push(Term {
                coeff: self.finite,
                base: 2,
                exp: GrossLinear::ZERO,
            });
        }
        for ((base, a), (coeff, b)) in self.gross {
            if coeff.is_zero() {
                continue;
            }
            let (coeff, v) = strip_valuation(coeff, base);
            let b = b
                .checked_add(v)
                .ok_or(Error::Overflow("exponent normalization"))?;
            terms.push(Term {
                coeff,
                base,
                exp: GrossLinear::new(a, b),
            });
        }
        terms.sort_by(|x, y| growth_cmp(y.base, y.exp.a, x.base, x.exp.a));
        Ok(GrossQuantity { terms })
    }
}

/// Splits `c = c' · base^v` with `c'` coprime to `base`.
fn strip_valuation(c: BigRational, base: u64) -> (BigRational, i64) {
    let b = BigInt::from(base);
    let (mut num, mut den) = (c.numer().clone(), c.denom().clone());
    let mut v = 0i64;
    loop {
        let (q, r) = num.div_rem(&b);
        if !r.is_zero() {
            break;
        }
        num = q;
        v += 1;
    }
    loop {
        let (q, r) = den.div_rem(&b);
        if !r.is_zero() {
            break;
        }
        den = q;
        v -= 1;
    }
    (BigRational::new(num, den), v)
}

impl GrossQuantity {
    pub fn zero() -> Self {
        GrossQuantity { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        GrossQuantity {
            terms: vec![Term {
                coeff: r,
                base: 2,
                exp: GrossLinear::ZERO,
            }],
        }
    }

    /// `base^exp`, with perfect-power bases reduced.
    pub fn pow(base: u64, exp: GrossLinear) -> Result<Self> {
        if base < 2 {
            return Err(Error::Domain(format!("base {base} must be at least 2")));
        }
        let (root, k) = reduce_base(base);
        let exp = exp.checked_scale(k as i64)?;
        let mut acc = Accumulator::default();
        acc.push(BigRational::one(), root, exp);
        acc.finish()
    }

    /// `Σ_{i=1..k} base^(-i) = (1 - base^(-k)) / (base - 1)` for `k ≥ 1`.
    pub fn geom_sum(base: u64, k: GrossLinear) -> Result<Self> {
        if base < 2 {
            return Err(Error::Domain(format!("base {base} must be at least 2")));
        }
        if k < GrossLinear::finite(1) {
            return Err(Error::Domain(format!(
                "geometric sum length {k} must be at least 1"
            )));
        }
        let tail = Self::pow(base, k.checked_neg()?)?;
        let scale = BigRational::new(BigInt::one(), BigInt::from(base - 1));
        Ok(Self::one().checked_sub(&tail)?.scale(&scale))
    }

    /// Terms in descending order of magnitude.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a rational, if no term involves ①.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [t] if t.is_finite() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    /// Sign of the value: the sign of its dominant coefficient.
    pub fn signum(&self) -> Ordering {
        match self.terms.first() {
            None => Ordering::Equal,
            Some(t) if t.coeff.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    /// Nonzero and smaller in magnitude than every positive rational.
    pub fn is_infinitesimal(&self) -> bool {
        self.terms.first().is_some_and(|t| t.exp.a < 0)
    }

    /// Nonzero and larger in magnitude than every rational.
    pub fn is_infinite(&self) -> bool {
        self.terms.first().is_some_and(|t| t.exp.a > 0)
    }

    pub fn checked_add(&self, rhs: &GrossQuantity) -> Result<GrossQuantity> {
        let mut acc = Accumulator::default();
        for t in self.terms.iter().chain(rhs.terms.iter()) {
            acc.push(t.coeff.clone(), t.base, t.exp);
        }
        acc.finish()
    }

    pub fn checked_sub(&self, rhs: &GrossQuantity) -> Result<GrossQuantity> {
        self.checked_add(&-rhs)
    }

    /// Termwise product. Fails when two ①-bearing terms sit on different bases.
    pub fn checked_mul(&self, rhs: &GrossQuantity) -> Result<GrossQuantity> {
        let mut acc = Accumulator::default();
        for x in &self.terms {
            for y in &rhs.terms {
                let coeff = &x.coeff * &y.coeff;
                if x.is_finite() {
                    acc.push(coeff * rational_pow(x.base, x.exp.b), y.base, y.exp);
                } else if y.is_finite() {
                    acc.push(coeff * rational_pow(y.base, y.exp.b), x.base, x.exp);
                } else if x.base == y.base {
                    acc.push(coeff, x.base, x.exp.checked_add(y.exp)?);
                } else {
                    return Err(Error::UnsupportedProduct {
                        lhs: single_term_string(x, true),
                        rhs: single_term_string(y, true),
                    });
                }
            }
        }
        acc.finish()
    }

    /// Multiplies every coefficient by a rational.
    pub fn scale(&self, r: &BigRational) -> GrossQuantity {
        if r.is_zero() {
            return Self::zero();
        }
        let mut acc = Accumulator::default();
        for t in &self.terms {
            acc.push(&t.coeff * r, t.base, t.exp);
        }
        acc.finish()
            .expect("scaling by a nonzero rational shifts exponents by a bounded valuation")
    }

    /// Rebuilds the normal form. The identity on any value of this type.
    pub fn normalized(&self) -> Result<GrossQuantity> {
        let mut acc = Accumulator::default();
        for t in &self.terms {
            let (root, k) = reduce_base(t.base);
            acc.push(t.coeff.clone(), root, t.exp.checked_scale(k as i64)?);
        }
        acc.finish()
    }

    /// Deterministic rendering, terms in descending magnitude.
    ///
    /// Grammar: terms are joined by ` + ` or ` - `; a leading negative term is
    /// prefixed with `-`. A finite term prints as an integer or `p/q`. A
    /// ①-bearing term prints as `B^①` (exponent exactly ①, Unicode only),
    /// `B^(e)` for other nonnegative exponents and `B^-(e)` for negative ones,
    /// preceded by `k·` or `(p/q)·` when its coefficient is not 1. With `ascii`
    /// set, ① becomes `G`, `·` becomes `*`, and exponents are always
    /// parenthesized.
    pub fn format(&self, ascii: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&magnitude_string(t, ascii));
        }
        out
    }
}

fn magnitude_string(t: &Term, ascii: bool) -> String {
    let c = t.coeff.abs();
    if t.is_finite() {
        return c.to_string();
    }
    let power = if t.exp < GrossLinear::ZERO {
        format!("{}^-({})", t.base, (-t.exp).format(ascii))
    } else if !ascii && t.exp == GrossLinear::GROSSONE {
        format!("{}^①", t.base)
    } else {
        format!("{}^({})", t.base, t.exp.format(ascii))
    };
    let dot = if ascii { "*" } else { "·" };
    if c.is_one() {
        power
    } else if c.is_integer() {
        format!("{c}{dot}{power}")
    } else {
        format!("({c}){dot}{power}")
    }
}

fn single_term_string(t: &Term, ascii: bool) -> String {
    GrossQuantity {
        terms: vec![t.clone()],
    }
    .format(ascii)
}

impl fmt::Display for GrossQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(f.alternate()))
    }
}

impl Ord for GrossQuantity {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.checked_sub(other)
            .expect("difference of normalized quantities stays in range")
            .signum()
    }
}

impl PartialOrd for GrossQuantity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for &GrossQuantity {
    type Output = GrossQuantity;
    fn neg(self) -> GrossQuantity {
        GrossQuantity {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: -t.coeff.clone(),
                    ..t.clone()
                })
                .collect(),
        }
    }
}

impl Neg for GrossQuantity {
    type Output = GrossQuantity;
    fn neg(self) -> GrossQuantity {
        -&self
    }
}

impl Add for &GrossQuantity {
    type Output = GrossQuantity;
    fn add(self, rhs: &GrossQuantity) -> GrossQuantity {
        self.checked_add(rhs)
            .expect("GrossQuantity exponent overflow")
    }
}

impl Add for GrossQuantity {
    type Output = GrossQuantity;
    fn add(self, rhs: GrossQuantity) -> GrossQuantity {
        &self + &rhs
    }
}

impl Sub for &GrossQuantity {
    type Output = GrossQuantity;
    fn sub(self, rhs: &GrossQuantity) -> GrossQuantity {
        self.checked_sub(rhs)
            .expect("GrossQuantity exponent overflow")
    }
}

impl Sub for GrossQuantity {
    type Output = GrossQuantity;
    fn sub(self, rhs: GrossQuantity) -> GrossQuantity {
        &self - &rhs
    }
}

impl From<i64> for GrossQuantity {
    fn from(n: i64) -> Self {
        GrossQuantity::from_integer(n)
    }
}
