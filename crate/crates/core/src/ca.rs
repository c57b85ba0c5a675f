//! Local rules `F: S^(2r+1) → S` and the global maps they induce on
//! eventually periodic configurations.

use std::fmt::Write as _;

use crate::config::{Alphabet, Configuration, Symbol};
use crate::error::{Error, Result};

/// Largest lookup table a rule may have.
pub const MAX_TABLE_LEN: usize = 1 << 22;

/// A total map from neighborhoods `(x(i-r), …, x(i+r))` to symbols.
///
/// The table is indexed by the neighborhood read as a base-`s` number with
/// `x(i-r)` as the most significant digit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalRule {
    alphabet: Alphabet,
    range: usize,
    table: Vec<Symbol>,
}

fn table_len(alphabet: Alphabet, range: usize) -> Result<usize> {
    let width = 2 * range + 1;
    let len = (alphabet.size() as u64)
        .checked_pow(width as u32)
        .filter(|&n| n <= MAX_TABLE_LEN as u64)
        .ok_or_else(|| {
            Error::Rule(format!(
                "table for alphabet {} and range {range} exceeds {MAX_TABLE_LEN} entries",
                alphabet.size()
            ))
        })?;
    Ok(len as usize)
}

/// Digits of `index` in base `s`, most significant first.
fn neighborhood_of(index: usize, s: usize, width: usize) -> Vec<Symbol> {
    let mut out = vec![0; width];
    let mut k = index;
    for slot in out.iter_mut().rev() {
        *slot = (k % s) as Symbol;
        k /= s;
    }
    out
}

impl LocalRule {
    /// Builds a rule from explicit `(neighborhood, output)` entries. Every
    /// neighborhood must appear exactly once.
    pub fn from_table<I>(alphabet: Alphabet, range: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<Symbol>, Symbol)>,
    {
        let len = table_len(alphabet, range)?;
        let width = 2 * range + 1;
        let mut table: Vec<Option<Symbol>> = vec![None; len];
        for (hood, out) in entries {
            if hood.len() != width {
                return Err(Error::Rule(format!(
                    "neighborhood {hood:?} has length {}, expected {width}",
                    hood.len()
                )));
            }
            for &s in &hood {
                alphabet.check(s)?;
            }
            alphabet.check(out)?;
            let idx = hood
                .iter()
                .fold(0usize, |acc, &s| acc * alphabet.size() + s as usize);
            if table[idx].replace(out).is_some() {
                return Err(Error::Rule(format!(
                    "duplicate entry for neighborhood {hood:?}"
                )));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::Rule(format!(
                        "missing entry for neighborhood {:?}",
                        neighborhood_of(i, alphabet.size(), width)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LocalRule {
            alphabet,
            range,
            table,
        })
    }

    /// Builds a rule by evaluating `f` on every neighborhood.
    pub fn from_fn(
        alphabet: Alphabet,
        range: usize,
        f: impl Fn(&[Symbol]) -> Symbol,
    ) -> Result<Self> {
        let len = table_len(alphabet, range)?;
        let width = 2 * range + 1;
        let table = (0..len)
            .map(|i| alphabet.check(f(&neighborhood_of(i, alphabet.size(), width))))
            .collect::<Result<Vec<_>>>()?;
        Ok(LocalRule {
            alphabet,
            range,
            table,
        })
    }

    /// Elementary rule `number`: neighborhood `(a, b, c)` maps to bit
    /// `4a + 2b + c` of `number`.
    pub fn elementary(number: u32) -> Result<Self> {
        if number > 255 {
            return Err(Error::Rule(format!(
                "elementary rule {number} out of range 0..=255"
            )));
        }
        let table = (0..8).map(|i| ((number >> i) & 1) as Symbol).collect();
        Ok(LocalRule {
            alphabet: Alphabet::BINARY,
            range: 1,
            table,
        })
    }

    /// Totalistic code: a neighborhood with symbol sum `σ` maps to the base-`s`
    /// digit `σ` of `code`.
    pub fn totalistic(code: u64, alphabet: Alphabet, range: usize) -> Result<Self> {
        let s = alphabet.size() as u64;
        let digits = (2 * range as u64 + 1) * (s - 1) + 1;
        if let Some(limit) = u32::try_from(digits).ok().and_then(|d| s.checked_pow(d)) {
            if code >= limit {
                return Err(Error::Rule(format!(
                    "totalistic code {code} out of range for alphabet {s}, range {range} (limit {limit})"
                )));
            }
        }
        Self::from_fn(alphabet, range, |hood| {
            let sum: u32 = hood.iter().map(|&v| v as u32).sum();
            let mut c = code;
            for _ in 0..sum {
                c /= s;
            }
            (c % s) as Symbol
        })
    }

    /// The left shift `σ(x)(i) = x(i+1)`, as a range-1 rule.
    pub fn shift_left(alphabet: Alphabet) -> Self {
        Self::from_fn(alphabet, 1, |h| h[2]).expect("range-1 table fits")
    }

    /// Parses a rule table file.
    ///
    /// ```text
    /// # comment
    /// alphabet=2 range=1
    /// 111 1
    /// 110 0
    /// ...
    /// ```
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("", "empty rule table"))?;
        let mut alphabet = None;
        let mut range = None;
        for tok in header.split_whitespace() {
            match tok.split_once('=') {
                Some(("alphabet", v)) => {
                    let n = v
                        .parse::<usize>()
                        .map_err(|_| Error::parse(tok, "alphabet must be an integer"))?;
                    alphabet = Some(Alphabet::new(n)?);
                }
                Some(("range", v)) => {
                    range =
                        Some(v.parse::<usize>().map_err(|_| {
                            Error::parse(tok, "range must be a nonnegative integer")
                        })?);
                }
                _ => return Err(Error::parse(tok, "expected `alphabet=S range=R` header")),
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::parse(header, "missing alphabet="))?;
        let range = range.ok_or_else(|| Error::parse(header, "missing range="))?;
        let entries = lines
            .map(|line| {
                let mut parts = line.split_whitespace();
                let (hood, out) = match (parts.next(), parts.next(), parts.next()) {
                    (Some(h), Some(o), None) => (h, o),
                    _ => return Err(Error::parse(line, "expected `<neighborhood> <symbol>`")),
                };
                let hood = alphabet.parse_word(hood)?;
                let out = alphabet.parse_word(out)?;
                if out.len() != 1 {
                    return Err(Error::parse(line, "output must be a single symbol"));
                }
                Ok((hood, out[0]))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(alphabet, range, entries)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn range(&self) -> usize {
        self.range
    }

    pub fn table(&self) -> &[Symbol] {
        &self.table
    }

    /// `F` applied to one neighborhood of length `2r+1`.
    pub fn apply(&self, hood: &[Symbol]) -> Symbol {
        debug_assert_eq!(hood.len(), 2 * self.range + 1);
        let s = self.alphabet.size();
        self.table[hood.iter().fold(0usize, |acc, &v| acc * s + v as usize)]
    }

    /// Applies the rule to every full neighborhood of `cells`, producing
    /// `cells.len() - 2r` outputs.
    pub fn apply_window(&self, cells: &[Symbol]) -> Vec<Symbol> {
        cells
            .windows(2 * self.range + 1)
            .map(|h| self.apply(h))
            .collect()
    }

    /// Applies the rule to a cyclic word.
    pub fn apply_cyclic(&self, cells: &[Symbol]) -> Vec<Symbol> {
        let n = cells.len();
        let r = self.range;
        let mut padded = Vec::with_capacity(n + 2 * r);
        padded.extend((0..r).map(|k| cells[(n * (r / n + 1) + k - r) % n]));
        padded.extend_from_slice(cells);
        padded.extend((0..r).map(|k| cells[k % n]));
        self.apply_window(&padded)
    }

    /// One application of the global map.
    ///
    /// Cells left of `offset - r` only see the left fill, so their images form
    /// the cyclic image of the left period; likewise on the right. The core
    /// grows by at most `r` per side before canonicalization.
    pub fn step(&self, x: &Configuration) -> Result<Configuration> {
        self.alphabet.same_as(&x.alphabet())?;
        let r = self.range as i64;
        let pl = x.left().len() as i64;
        let pr = x.right().len() as i64;
        let o = x.offset();
        let core_len = x.core().len() as i64;
        let lo = o - r - pl;
        let hi = o + core_len + r + pr - 1;
        let cells: Vec<Symbol> = (lo - r..=hi + r).map(|i| x.eval_at(i)).collect();
        let mut image = self.apply_window(&cells);
        let right = image.split_off((pl + core_len + 2 * r) as usize);
        let core = image.split_off(pl as usize);
        Configuration::new(self.alphabet, image, core, o - r, right)
    }

    /// `f^t(x)`.
    pub fn iterate(&self, x: &Configuration, t: usize) -> Result<Configuration> {
        let mut cur = x.clone();
        for _ in 0..t {
            cur = self.step(&cur)?;
        }
        self.alphabet.same_as(&x.alphabet())?;
        Ok(cur)
    }

    /// Rows `(f^t(x))[lo, hi]` for `t = 0..=steps`.
    pub fn spacetime(
        &self,
        x: &Configuration,
        steps: usize,
        lo: i64,
        hi: i64,
    ) -> Result<SpacetimeGrid> {
        if lo > hi {
            return Err(Error::Domain(format!("empty window {lo}:{hi}")));
        }
        self.alphabet.same_as(&x.alphabet())?;
        let mut rows = Vec::with_capacity(steps + 1);
        let mut cur = x.clone();
        rows.push(cur.window(lo, hi).symbols);
        for _ in 0..steps {
            cur = self.step(&cur)?;
            rows.push(cur.window(lo, hi).symbols);
        }
        Ok(SpacetimeGrid {
            alphabet: self.alphabet,
            lo,
            hi,
            rows,
        })
    }
}

/// Rows of an evolution restricted to the window `[lo, hi]`; row `t` is
/// `(f^t(x))[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpacetimeGrid {
    pub alphabet: Alphabet,
    pub lo: i64,
    pub hi: i64,
    pub rows: Vec<Vec<Symbol>>,
}

impl SpacetimeGrid {
    pub fn width(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    /// `·#` for binary alphabets, otherwise the symbols' digits.
    pub fn default_glyphs(alphabet: Alphabet) -> Vec<char> {
        if alphabet.size() == 2 {
            vec!['·', '#']
        } else {
            (0..alphabet.size() as u32)
                .map(|d| std::char::from_digit(d, 36).expect("alphabet size <= 36"))
                .collect()
        }
    }

    /// One line per time step, one glyph per cell.
    pub fn render_ascii(&self, glyphs: &[char]) -> Result<String> {
        if glyphs.len() < self.alphabet.size() {
            return Err(Error::Domain(format!(
                "{} glyphs given for an alphabet of size {}",
                glyphs.len(),
                self.alphabet.size()
            )));
        }
        let mut out = String::new();
        for row in &self.rows {
            out.extend(row.iter().map(|&s| glyphs[s as usize]));
            out.push('\n');
        }
        Ok(out)
    }

    /// Plain PGM (`P2`), maxval `s - 1`, one image row per time step.
    pub fn render_pgm(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "P2");
        let _ = writeln!(out, "{} {}", self.width(), self.rows.len());
        let _ = writeln!(out, "{}", self.alphabet.size() - 1);
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|s| s.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}
