//! Bi-infinite configurations `x: ℤ → S` that are eventually periodic in
//! both directions.
//!
//! A [`Configuration`] is stored as a left fill word tiling `(-∞, offset-1]`
//! (its last symbol sits at `offset-1`), a finite core occupying
//! `[offset, offset+|core|-1]`, and a right fill word tiling
//! `[offset+|core|, ∞)` (its first symbol sits at `offset+|core|`).
//!
//! Canonical form:
//! * both fills are primitive words;
//! * the core is minimal: its first symbol breaks the left tiling and its
//!   last symbol breaks the right tiling;
//! * with an empty core the boundary between the fills is placed at the
//!   admissible position nearest to 0 (so a purely periodic configuration
//!   has `offset = 0` and `left == right`).
//!
//! Equal sequences have identical canonical forms.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type Symbol = u8;

/// Symbols `0..size`. Sizes above 36 are rejected so every symbol has a
/// one-character textual form (`0-9`, then `a-z`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(u8);

impl Alphabet {
    pub const BINARY: Alphabet = Alphabet(2);
    pub const MAX_SIZE: usize = 36;

    pub fn new(size: usize) -> Result<Self> {
        if (2..=Self::MAX_SIZE).contains(&size) {
            Ok(Alphabet(size as u8))
        } else {
            Err(Error::AlphabetSize(size))
        }
    }

    pub fn size(&self) -> usize {
        self.0 as usize
    }

    pub fn check(&self, symbol: Symbol) -> Result<Symbol> {
        if (symbol as usize) < self.size() {
            Ok(symbol)
        } else {
            Err(Error::SymbolOutOfRange {
                symbol: symbol as usize,
                size: self.size(),
            })
        }
    }

    pub fn same_as(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.size(),
                right: other.size(),
            })
        }
    }

    /// Parses a word written with one character per symbol.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Symbol>> {
        text.chars()
            .map(|c| {
                let v = c
                    .to_digit(36)
                    .ok_or_else(|| Error::parse(text, format!("`{c}` is not a symbol")))?;
                if (v as usize) < self.size() {
                    Ok(v as Symbol)
                } else {
                    Err(Error::parse(
                        text,
                        format!(
                            "symbol `{c}` out of range for alphabet of size {}",
                            self.size()
                        ),
                    ))
                }
            })
            .collect()
    }
}

/// Renders a word with one character per symbol.
pub fn word_to_string(word: &[Symbol]) -> String {
    word.iter()
        .map(|&s| std::char::from_digit(s as u32, 36).unwrap_or('?'))
        .collect()
}

/// A finite restriction `x[i, j]` of a configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    pub start: i64,
    pub symbols: Vec<Symbol>,
}

impl Word {
    pub fn end(&self) -> i64 {
        self.start + self.symbols.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// An eventually periodic bi-infinite sequence.
#[derive(Debug, Clone)]
pub struct Configuration {
    alphabet: Alphabet,
    left: Vec<Symbol>,
    core: Vec<Symbol>,
    offset: i64,
    right: Vec<Symbol>,
}

fn rotate_left(w: &mut [Symbol]) {
    w.rotate_left(1);
}

fn rotate_right(w: &mut [Symbol]) {
    w.rotate_right(1);
}

/// Shortest `u` with `w = u^k`.
fn primitive_root(w: &[Symbol]) -> Vec<Symbol> {
    let n = w.len();
    (1..=n)
        .filter(|&p| n.is_multiple_of(p))
        .find(|&p| (p..n).all(|i| w[i] == w[i - p]))
        .map(|p| w[..p].to_vec())
        .unwrap_or_else(|| w.to_vec())
}

impl Configuration {
    /// Builds a configuration and canonicalizes it.
    pub fn new(
        alphabet: Alphabet,
        left: Vec<Symbol>,
        core: Vec<Symbol>,
        offset: i64,
        right: Vec<Symbol>,
    ) -> Result<Self> {
        Ok(Self::raw(alphabet, left, core, offset, right)?.canonicalize())
    }

    /// Builds a configuration exactly as given, without canonicalizing.
    pub fn raw(
        alphabet: Alphabet,
        left: Vec<Symbol>,
        core: Vec<Symbol>,
        offset: i64,
        right: Vec<Symbol>,
    ) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::Domain("fill words must be nonempty".into()));
        }
        for &s in left.iter().chain(&core).chain(&right) {
            alphabet.check(s)?;
        }
        if (core.len() as u64) >= i64::MAX as u64 / 4
            || offset.unsigned_abs() >= i64::MAX as u64 / 4
        {
            return Err(Error::Overflow("configuration extent"));
        }
        Ok(Configuration {
            alphabet,
            left,
            core,
            offset,
            right,
        })
    }

    /// The constant configuration `x_a`.
    pub fn constant(alphabet: Alphabet, a: Symbol) -> Result<Self> {
        Self::new(alphabet, vec![a], vec![], 0, vec![a])
    }

    /// A purely periodic configuration with `x[0..|period|] = period`.
    pub fn periodic(alphabet: Alphabet, period: Vec<Symbol>) -> Result<Self> {
        Self::new(alphabet, period.clone(), vec![], 0, period)
    }

    /// A finite word placed at `start` on a constant background.
    pub fn finite_on_background(
        alphabet: Alphabet,
        background: Symbol,
        start: i64,
        word: Vec<Symbol>,
    ) -> Result<Self> {
        Self::new(alphabet, vec![background], word, start, vec![background])
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn left(&self) -> &[Symbol] {
        &self.left
    }

    pub fn core(&self) -> &[Symbol] {
        &self.core
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn right(&self) -> &[Symbol] {
        &self.right
    }

    /// First index covered by the right fill.
    pub fn right_start(&self) -> i64 {
        self.offset + self.core.len() as i64
    }

    /// `x(i)`.
    pub fn eval_at(&self, i: i64) -> Symbol {
        if i < self.offset {
            let d = (self.offset - 1 - i) as u64 % self.left.len() as u64;
            self.left[self.left.len() - 1 - d as usize]
        } else if i < self.right_start() {
            self.core[(i - self.offset) as usize]
        } else {
            let d = (i - self.right_start()) as u64 % self.right.len() as u64;
            self.right[d as usize]
        }
    }

    /// The word `x[i, j]`; empty when `j < i`.
    pub fn window(&self, i: i64, j: i64) -> Word {
        Word {
            start: i,
            symbols: if j < i {
                Vec::new()
            } else {
                (i..=j).map(|k| self.eval_at(k)).collect()
            },
        }
    }

    /// Least common multiple of the two fill periods.
    pub fn fill_lcm(&self) -> i64 {
        (self.left.len() as i64).lcm(&(self.right.len() as i64))
    }

    pub fn is_canonical(&self) -> bool {
        let c = self.clone().canonicalize();
        c.left == self.left
            && c.core == self.core
            && c.offset == self.offset
            && c.right == self.right
    }

    /// Canonical representative of the same sequence.
    pub fn canonicalize(mut self) -> Self {
        self.left = primitive_root(&self.left);
        self.right = primitive_root(&self.right);

        // Absorb a core prefix that continues the left tiling.
        let mut absorbed = 0;
        while absorbed < self.core.len() && self.core[absorbed] == self.left[0] {
            rotate_left(&mut self.left);
            absorbed += 1;
        }
        self.core.drain(..absorbed);
        self.offset += absorbed as i64;

        // Absorb a core suffix that continues the right tiling backwards.
        while let Some(&last) = self.core.last() {
            if last != self.right[self.right.len() - 1] {
                break;
            }
            rotate_right(&mut self.right);
            self.core.pop();
        }

        if self.core.is_empty() {
            self.place_boundary();
        }
        self
    }

    /// With an empty core, moves the fill boundary to the admissible position
    /// closest to 0.
    fn place_boundary(&mut self) {
        if self.left.len() == self.right.len() {
            // Same periodic sequence on both sides?
            let p = self.left.len();
            let mut l = self.left.clone();
            let mut same = true;
            for k in 0..p {
                if l[0] != self.right[k] {
                    same = false;
                    break;
                }
                rotate_left(&mut l);
            }
            if same {
                // rephase so the period word starts at 0
                let shift = self.offset.rem_euclid(p as i64) as usize;
                let mut w = self.right.clone();
                w.rotate_right(shift);
                self.left = w.clone();
                self.right = w;
                self.offset = 0;
                return;
            }
        }
        while self.offset > 0 && self.left[self.left.len() - 1] == self.right[self.right.len() - 1]
        {
            rotate_right(&mut self.left);
            rotate_right(&mut self.right);
            self.offset -= 1;
        }
        while self.offset < 0 && self.left[0] == self.right[0] {
            rotate_left(&mut self.left);
            rotate_left(&mut self.right);
            self.offset += 1;
        }
    }

    /// Pointwise equality on all of `ℤ`.
    pub fn equals(&self, other: &Configuration) -> Result<bool> {
        self.alphabet.same_as(&other.alphabet)?;
        Ok(self == other)
    }

    /// Left shift `σ`: `σ(x)(i) = x(i+1)`.
    pub fn shifted_left(&self) -> Configuration {
        let mut c = self.clone();
        c.offset -= 1;
        c.canonicalize()
    }

    /// Right shift: `x(i-1)` at `i`.
    pub fn shifted_right(&self) -> Configuration {
        let mut c = self.clone();
        c.offset += 1;
        c.canonicalize()
    }

    /// Pointwise `(x(i) + y(i)) mod s`, computed exactly on the
    /// eventually-periodic representation.
    pub fn pointwise_sum(&self, other: &Configuration) -> Result<Configuration> {
        self.alphabet.same_as(&other.alphabet)?;
        let s = self.alphabet.size() as u16;
        let lo = self.offset.min(other.offset);
        let hi = self.right_start().max(other.right_start());
        let pl = (self.left.len()).lcm(&other.left.len());
        let pr = (self.right.len()).lcm(&other.right.len());
        let at = |i: i64| ((self.eval_at(i) as u16 + other.eval_at(i) as u16) % s) as Symbol;
        let left = (lo - pl as i64..lo).map(at).collect();
        let core = (lo..hi).map(at).collect();
        let right = (hi..hi + pr as i64).map(at).collect();
        Configuration::new(self.alphabet, left, core, lo, right)
    }

    /// Seeded random configuration.
    ///
    /// Fill lengths are uniform on `1..=max_period`, the core length on
    /// `0..=max_core`, the offset on `[-max_core-1, 1]`, and every symbol
    /// uniform on the alphabet. The result is canonicalized.
    pub fn random(seed: u64, alphabet: Alphabet, max_core: usize, max_period: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(&mut rng, alphabet, max_core, max_period)
    }

    pub fn random_with<R: Rng>(
        rng: &mut R,
        alphabet: Alphabet,
        max_core: usize,
        max_period: usize,
    ) -> Self {
        let max_period = max_period.max(1);
        let s = alphabet.size() as u8;
        let word = |rng: &mut R, len: usize| -> Vec<Symbol> {
            (0..len).map(|_| rng.gen_range(0..s)).collect()
        };
        let ll = rng.gen_range(1..=max_period);
        let left = word(rng, ll);
        let cl = rng.gen_range(0..=max_core);
        let core = word(rng, cl);
        let rl = rng.gen_range(1..=max_period);
        let right = word(rng, rl);
        let offset = rng.gen_range(-(max_core as i64) - 1..=1);
        Configuration::new(alphabet, left, core, offset, right)
            .expect("random symbols lie in the alphabet")
    }

    /// Parses `left=<word> core=<word|-> offset=<int> right=<word>`.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        let mut left = None;
        let mut core = None;
        let mut offset = None;
        let mut right = None;
        for token in text.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::parse(token, "expected key=value"))?;
            let slot_taken = |taken: bool| {
                if taken {
                    Err(Error::parse(token, format!("duplicate `{key}`")))
                } else {
                    Ok(())
                }
            };
            match key {
                "left" | "right" => {
                    if value.is_empty() {
                        return Err(Error::parse(token, "fill word must be nonempty"));
                    }
                    let w = alphabet.parse_word(value)?;
                    let slot = if key == "left" { &mut left } else { &mut right };
                    slot_taken(slot.is_some())?;
                    *slot = Some(w);
                }
                "core" => {
                    slot_taken(core.is_some())?;
                    core = Some(if value == "-" {
                        Vec::new()
                    } else if value.is_empty() {
                        return Err(Error::parse(token, "empty core must be written `-`"));
                    } else {
                        alphabet.parse_word(value)?
                    });
                }
                "offset" => {
                    slot_taken(offset.is_some())?;
                    offset = Some(
                        value
                            .parse::<i64>()
                            .map_err(|_| Error::parse(token, "offset must be an integer"))?,
                    );
                }
                _ => return Err(Error::parse(token, format!("unknown key `{key}`"))),
            }
        }
        let missing = |k: &str| Error::parse(text.trim(), format!("missing `{k}=`"));
        Configuration::new(
            alphabet,
            left.ok_or_else(|| missing("left"))?,
            core.ok_or_else(|| missing("core"))?,
            offset.ok_or_else(|| missing("offset"))?,
            right.ok_or_else(|| missing("right"))?,
        )
    }

    /// Parses a configuration file: one configuration per line, blank lines
    /// and `#` comments ignored.
    pub fn parse_file(text: &str, alphabet: Alphabet) -> Result<Vec<Self>> {
        text.lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| Self::parse(l, alphabet))
            .collect()
    }
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        if self.alphabet != other.alphabet {
            return false;
        }
        let a = self.clone().canonicalize();
        let b = other.clone().canonicalize();
        a.left == b.left && a.core == b.core && a.offset == b.offset && a.right == b.right
    }
}

impl Eq for Configuration {}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let core = if self.core.is_empty() {
            "-".to_string()
        } else {
            word_to_string(&self.core)
        };
        write!(
            f,
            "left={} core={} offset={} right={}",
            word_to_string(&self.left),
            core,
            self.offset,
            word_to_string(&self.right)
        )
    }
}

impl FromStr for Configuration {
    type Err = Error;

    /// Parses over the binary alphabet.
    fn from_str(s: &str) -> Result<Self> {
        Configuration::parse(s, Alphabet::BINARY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn parses_constant() {
        let x = cfg("left=1 core=- offset=0 right=1");
        assert_eq!(x, Configuration::constant(Alphabet::BINARY, 1).unwrap());
        assert!((-50..50).all(|i| x.eval_at(i) == 1));
    }

    #[test]
    fn parses_perturbed_sequence() {
        let y = cfg("left=0 core=111 offset=-2 right=1");
        assert_eq!(y.eval_at(-3), 0);
        assert_eq!(y.eval_at(-2), 1);
        assert_eq!(y.eval_at(0), 1);
        assert_eq!(y.eval_at(100), 1);
        assert_eq!(y.eval_at(-100), 0);
        // core is absorbed by the right fill
        assert!(y.core().is_empty());
        assert_eq!(y.offset(), -2);
    }

    #[test]
    fn parses_periodic() {
        let x = cfg("left=10 core=- offset=0 right=10");
        let got: Vec<_> = (-4..4).map(|i| x.eval_at(i)).collect();
        assert_eq!(got, vec![1, 0, 1, 0, 1, 0, 1, 0]);
        assert_eq!(x.left(), x.right());
    }

    #[test]
    fn parse_errors() {
        let a = Alphabet::BINARY;
        assert!(matches!(
            Configuration::parse("left=2 core=- offset=0 right=1", a),
            Err(Error::Parse { .. })
        ));
        assert!(Configuration::parse("left= core=- offset=0 right=1", a).is_err());
        assert!(Configuration::parse("left=1 core=- offset=x right=1", a).is_err());
        assert!(Configuration::parse("left=1 core=- right=1", a).is_err());
        assert!(Configuration::parse("left=1 core=- offset=0 right=1 bogus", a).is_err());
        assert!(Configuration::parse("left=1 left=0 core=- offset=0 right=1", a).is_err());
        let err = Configuration::parse("left=1 core=- offset=0 right=13", a).unwrap_err();
        assert!(err.to_string().contains("13"));
    }

    #[test]
    fn canonicalize_reduces_periods() {
        let x = Configuration::raw(
            Alphabet::BINARY,
            vec![1, 0, 1, 0],
            vec![1, 1, 1],
            0,
            vec![0],
        )
        .unwrap()
        .canonicalize();
        assert_eq!(x.left().len(), 2);
    }

    #[test]
    fn canonicalize_absorbs_core() {
        let x = Configuration::raw(Alphabet::BINARY, vec![1], vec![1, 1], -1, vec![1])
            .unwrap()
            .canonicalize();
        assert!(x.core().is_empty());
        assert_eq!(x.offset(), 0);
        assert_eq!(x, Configuration::constant(Alphabet::BINARY, 1).unwrap());
    }

    #[test]
    fn empty_core_boundary_nearest_zero() {
        // 1 on (-inf, 4], 0 on [5, inf): boundary cannot move
        let x = Configuration::new(Alphabet::BINARY, vec![1], vec![], 5, vec![0]).unwrap();
        assert_eq!(x.offset(), 5);
        // left = 01 repeating, right = 0 repeating: boundary slides to 0 when possible
        let raw = Configuration::raw(Alphabet::BINARY, vec![1, 0], vec![], 7, vec![0]).unwrap();
        let c = raw.clone().canonicalize();
        assert!((-20..20).all(|i| raw.eval_at(i) == c.eval_at(i)));
        assert_eq!(c.offset(), 6);
    }

    #[test]
    fn periodic_rephases_to_zero() {
        let raw =
            Configuration::raw(Alphabet::BINARY, vec![0, 1, 1], vec![], 4, vec![0, 1, 1]).unwrap();
        let c = raw.clone().canonicalize();
        assert_eq!(c.offset(), 0);
        assert_eq!(c.left(), c.right());
        assert!((-20..20).all(|i| raw.eval_at(i) == c.eval_at(i)));
    }

    #[test]
    fn equals_across_presentations() {
        let a =
            Configuration::raw(Alphabet::BINARY, vec![0], vec![1, 0, 1], 3, vec![1, 0]).unwrap();
        let b = Configuration::raw(
            Alphabet::BINARY,
            vec![0, 0],
            vec![0, 1, 0, 1, 1, 0],
            2,
            vec![1, 0],
        )
        .unwrap();
        assert!(a.equals(&b).unwrap());
        let x0 = Configuration::constant(Alphabet::BINARY, 0).unwrap();
        let x1 = Configuration::constant(Alphabet::BINARY, 1).unwrap();
        assert!(!x0.equals(&x1).unwrap());
        let t = Configuration::constant(Alphabet::new(3).unwrap(), 0).unwrap();
        assert!(matches!(x0.equals(&t), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn random_is_deterministic() {
        let a = Configuration::random(0, Alphabet::BINARY, 8, 4);
        let b = Configuration::random(0, Alphabet::BINARY, 8, 4);
        assert_eq!(format!("{a}"), format!("{b}"));
    }

    #[test]
    fn shifts() {
        let x = cfg("left=0 core=1101 offset=-1 right=0");
        let l = x.shifted_left();
        assert!((-10..10).all(|i| l.eval_at(i) == x.eval_at(i + 1)));
        assert_eq!(l.shifted_right(), x);
    }

    #[test]
    fn display_roundtrip() {
        let x = cfg("left=01 core=110 offset=-3 right=001");
        assert_eq!(cfg(&x.to_string()), x);
    }

    #[test]
    fn file_with_comments() {
        let text =
            "# pair\nleft=1 core=- offset=0 right=1 # x_1\n\nleft=0 core=1 offset=0 right=0\n";
        let v = Configuration::parse_file(text, Alphabet::BINARY).unwrap();
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn alphabet_bounds() {
        assert!(Alphabet::new(1).is_err());
        assert!(Alphabet::new(37).is_err());
        assert!(Alphabet::new(36).is_ok());
    }
}
