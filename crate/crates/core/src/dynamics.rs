//! Counting results on `S^ℤ` and tooling for the closeness classes
//!
//! ```text
//! B_{m,n}(x) = { y : (f^i(y))[m,n] = (f^i(x))[m,n] for all i ≥ 0 }
//! ```
//!
//! The cardinalities of the whole space, of open disks, and the shift-map
//! bound are closed forms in ①. For general rules only finite-horizon
//! membership tests and an exhaustive cyclic-universe enumeration are offered.
//!
//! Membership uses the word-agreement form above. The strict-inequality form
//! `d(f^i(y), f^i(x)) < 2^-(n+1-m)` differs at the boundary: agreement on
//! exactly `[m, n]` gives `d = 2^-(n+1-m)`, which is not strictly smaller.

use rayon::prelude::*;

use crate::ca::LocalRule;
use crate::config::{Alphabet, Configuration, Symbol};
use crate::error::{Error, Result};
use crate::grossnum::{GrossLinear, GrossQuantity};
use crate::metric::{agreement_interval, ExtendedIndex, Meet};

/// Largest number of candidates [`bmn_enumerate_cyclic`] will visit.
pub const CYCLIC_ENUMERATION_LIMIT: u64 = 1 << 20;

/// `|S^ℤ| = s^(2①+1)`.
pub fn space_cardinality(alphabet: Alphabet) -> GrossQuantity {
    GrossQuantity::pow(alphabet.size() as u64, GrossLinear::new(2, 1)).expect("base >= 2")
}

fn check_window(m: i64, n: i64) -> Result<()> {
    if m > 0 || n < 0 {
        Err(Error::Domain(format!(
            "window [{m}, {n}] must satisfy m <= 0 <= n"
        )))
    } else {
        Ok(())
    }
}

/// `|C_[m,n](x)| = s^(2① - (n-m))`.
pub fn disk_cardinality(alphabet: Alphabet, m: i64, n: i64) -> Result<GrossQuantity> {
    check_window(m, n)?;
    let width = n.checked_sub(m).ok_or(Error::Overflow("disk width"))?;
    GrossQuantity::pow(
        alphabet.size() as u64,
        GrossLinear::new(2, 0).checked_sub(GrossLinear::finite(width))?,
    )
}

/// Upper bound `s^① + 1` on `|B_{m,n}(x)|` under the shift map. This is a
/// bound, not an exact count.
pub fn shift_bmn_bound(alphabet: Alphabet) -> GrossQuantity {
    &GrossQuantity::pow(alphabet.size() as u64, GrossLinear::GROSSONE).expect("base >= 2")
        + &GrossQuantity::one()
}

/// Number of configurations agreeing with a fixed one on `[m, ①]`: the
/// `① + m` coordinates `-①..m-1` are free, giving `s^(①+m)`.
pub fn shift_bmn_direct_count(alphabet: Alphabet, m: i64) -> Result<GrossQuantity> {
    if m > 0 {
        return Err(Error::Domain(format!("m = {m} must be <= 0")));
    }
    GrossQuantity::pow(alphabet.size() as u64, GrossLinear::new(1, m))
}

/// Whether `x` and `y` agree on every `i ≥ m` (`m ≤ 0`), decided exactly.
pub fn agrees_from(x: &Configuration, y: &Configuration, m: i64) -> Result<bool> {
    if m > 0 {
        return Err(Error::Domain(format!("m = {m} must be <= 0")));
    }
    Ok(match agreement_interval(x, y)? {
        Meet::Identical => true,
        Meet::Star => false,
        Meet::Agreement { m: lo, n: hi, .. } => {
            hi == ExtendedIndex::PosInfinity && lo <= ExtendedIndex::Finite(m)
        }
    })
}

/// `C(i, j, w)`: configurations whose word on `[i, j]` is `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderSpec {
    start: i64,
    end: i64,
    word: Vec<Symbol>,
}

impl CylinderSpec {
    pub fn new(i: i64, j: i64, word: Vec<Symbol>) -> Result<Self> {
        let expected = j.checked_sub(i).and_then(|d| d.checked_add(1));
        if i > j || expected != Some(word.len() as i64) {
            return Err(Error::Domain(format!(
                "cylinder word has length {}, interval [{i}, {j}] needs {}",
                word.len(),
                j.saturating_sub(i).saturating_add(1)
            )));
        }
        Ok(CylinderSpec {
            start: i,
            end: j,
            word,
        })
    }

    pub fn bounds(&self) -> (i64, i64) {
        (self.start, self.end)
    }

    pub fn word(&self) -> &[Symbol] {
        &self.word
    }

    pub fn contains(&self, y: &Configuration) -> bool {
        (self.start..=self.end)
            .zip(&self.word)
            .all(|(i, &w)| y.eval_at(i) == w)
    }
}

/// The open disk `C_[m,n](x) = C(m, n, x[m, n])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiskSpec {
    center: Configuration,
    m: i64,
    n: i64,
}

impl DiskSpec {
    pub fn new(center: Configuration, m: i64, n: i64) -> Result<Self> {
        check_window(m, n)?;
        Ok(DiskSpec { center, m, n })
    }

    pub fn center(&self) -> &Configuration {
        &self.center
    }

    pub fn window(&self) -> (i64, i64) {
        (self.m, self.n)
    }

    pub fn cylinder(&self) -> CylinderSpec {
        CylinderSpec::new(self.m, self.n, self.center.window(self.m, self.n).symbols)
            .expect("window length matches")
    }

    pub fn contains(&self, y: &Configuration) -> bool {
        self.cylinder().contains(y)
    }

    /// `2^-(n-m)`.
    pub fn radius(&self) -> GrossQuantity {
        GrossQuantity::pow(2, GrossLinear::finite(self.m - self.n)).expect("base 2")
    }

    pub fn cardinality(&self) -> GrossQuantity {
        disk_cardinality(self.center.alphabet(), self.m, self.n).expect("window validated")
    }
}

/// Parameters of a finite-horizon `B_{m,n}(x)` query.
#[derive(Debug, Clone)]
pub struct BmnSpec {
    rule: LocalRule,
    x: Configuration,
    m: i64,
    n: i64,
    horizon: usize,
}

impl BmnSpec {
    pub fn new(rule: LocalRule, x: Configuration, m: i64, n: i64, horizon: usize) -> Result<Self> {
        check_window(m, n)?;
        rule.alphabet().same_as(&x.alphabet())?;
        Ok(BmnSpec {
            rule,
            x,
            m,
            n,
            horizon,
        })
    }

    pub fn rule(&self) -> &LocalRule {
        &self.rule
    }

    pub fn center(&self) -> &Configuration {
        &self.x
    }

    pub fn window(&self) -> (i64, i64) {
        (self.m, self.n)
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// First time `t ≤ T` at which `(f^t(y))[m,n] ≠ (f^t(x))[m,n]`, if any.
    pub fn first_separation(&self, y: &Configuration) -> Result<Option<usize>> {
        self.x.alphabet().same_as(&y.alphabet())?;
        let mut fx = self.x.clone();
        let mut fy = y.clone();
        for t in 0..=self.horizon {
            if fx == fy {
                return Ok(None);
            }
            if (self.m..=self.n).any(|i| fx.eval_at(i) != fy.eval_at(i)) {
                return Ok(Some(t));
            }
            if t < self.horizon {
                fx = self.rule.step(&fx)?;
                fy = self.rule.step(&fy)?;
            }
        }
        Ok(None)
    }

    /// `(f^i(y))[m,n] = (f^i(x))[m,n]` for all `0 ≤ i ≤ T`.
    pub fn contains(&self, y: &Configuration) -> Result<bool> {
        Ok(self.first_separation(y)?.is_none())
    }
}

/// `bmn_member_finite`.
pub fn bmn_member_finite(spec: &BmnSpec, y: &Configuration) -> Result<bool> {
    spec.contains(y)
}

/// Members of a cyclic `B_{m,n}` enumeration, in increasing candidate index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicBmn {
    pub count: usize,
    pub members: Vec<Vec<Symbol>>,
}

/// Candidate number `k` as a word: cell `j` holds base-`s` digit `j` of `k`.
pub fn cyclic_candidate(k: u64, s: usize, len: usize) -> Vec<Symbol> {
    let mut k = k;
    (0..len)
        .map(|_| {
            let d = (k % s as u64) as Symbol;
            k /= s as u64;
            d
        })
        .collect()
}

/// Exhaustive `B_{m,n}(x)` on the cyclic universe `S^(ℤ/N)`.
///
/// Every word `y` of length `N = |x|` is evolved with periodic boundary
/// conditions for `T` steps; `y` is a member when its window `[m, n]`
/// (indices mod `N`) matches that of `x` at every step `0..=T`.
pub fn bmn_enumerate_cyclic(
    rule: &LocalRule,
    x: &[Symbol],
    m: i64,
    n: i64,
    horizon: usize,
) -> Result<CyclicBmn> {
    check_window(m, n)?;
    let s = rule.alphabet().size();
    for &v in x {
        rule.alphabet().check(v)?;
    }
    let len = x.len();
    if len == 0 {
        return Err(Error::Domain("cyclic word must be nonempty".into()));
    }
    let total = (s as u64)
        .checked_pow(len as u32)
        .filter(|&c| c <= CYCLIC_ENUMERATION_LIMIT)
        .ok_or_else(|| {
            Error::Refused(format!(
                "{s}^{len} cyclic candidates exceed the enumeration limit of {CYCLIC_ENUMERATION_LIMIT}"
            ))
        })?;
    let cells: Vec<usize> = (m..=n).map(|i| i.rem_euclid(len as i64) as usize).collect();
    let window = |w: &[Symbol]| -> Vec<Symbol> { cells.iter().map(|&c| w[c]).collect() };

    let mut orbit = Vec::with_capacity(horizon + 1);
    let mut cur = x.to_vec();
    orbit.push(window(&cur));
    for _ in 0..horizon {
        cur = rule.apply_cyclic(&cur);
        orbit.push(window(&cur));
    }

    let members: Vec<Vec<Symbol>> = (0..total)
        .into_par_iter()
        .filter_map(|k| {
            let y = cyclic_candidate(k, s, len);
            let mut cur = y.clone();
            for (t, expect) in orbit.iter().enumerate() {
                if t > 0 {
                    cur = rule.apply_cyclic(&cur);
                }
                if cells.iter().zip(expect).any(|(&c, &e)| cur[c] != e) {
                    return None;
                }
            }
            Some(y)
        })
        .collect();
    Ok(CyclicBmn {
        count: members.len(),
        members,
    })
}
