//! Seeded property checks over random samples, shared by the CLI's `verify`
//! subcommand and the test suites.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ca::LocalRule;
use crate::config::{Alphabet, Configuration, Symbol};
use crate::error::Result;
use crate::metric::{agreement_interval, distance};

/// A copy of `x` with a few symbols flipped near the origin and, sometimes,
/// a fill replaced. Produces configurations that agree with `x` on long
/// stretches, which random independent draws rarely do.
pub fn perturb<R: Rng>(
    x: &Configuration,
    rng: &mut R,
    reach: i64,
    max_period: usize,
) -> Configuration {
    let alphabet = x.alphabet();
    let s = alphabet.size() as Symbol;
    let lo = x.offset().min(-reach);
    let hi = x.right_start().max(reach + 1);
    let mut core = x.window(lo, hi - 1).symbols;
    for _ in 0..rng.gen_range(0..=3) {
        let i = rng.gen_range(0..core.len());
        core[i] = (core[i] + rng.gen_range(1..s)) % s;
    }
    let fill = |rng: &mut R| -> Vec<Symbol> {
        (0..rng.gen_range(1..=max_period.max(1)))
            .map(|_| rng.gen_range(0..s))
            .collect()
    };
    let left = if rng.gen_bool(0.2) {
        fill(rng)
    } else {
        let p = x.left().len() as i64;
        x.window(lo - p, lo - 1).symbols
    };
    let right = if rng.gen_bool(0.2) {
        fill(rng)
    } else {
        let p = x.right().len() as i64;
        x.window(hi, hi + p - 1).symbols
    };
    Configuration::new(alphabet, left, core, lo, right).expect("symbols stay in the alphabet")
}

/// A triple `(x, y, z)` where `y` and `z` are independent perturbations of `x`.
pub fn random_triple<R: Rng>(rng: &mut R, alphabet: Alphabet) -> [Configuration; 3] {
    let x = Configuration::random_with(rng, alphabet, 8, 3);
    let y = perturb(&x, rng, 8, 3);
    let z = if rng.gen_bool(0.1) {
        Configuration::random_with(rng, alphabet, 8, 3)
    } else {
        perturb(&x, rng, 8, 3)
    };
    [x, y, z]
}

/// Outcome of the metric-axiom checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UltrametricReport {
    pub samples: usize,
    pub seed: u64,
    pub identity: usize,
    pub symmetry: usize,
    pub ultrametric: usize,
    pub isosceles: usize,
    /// Triples whose three pairwise meets are not nested.
    pub unordered_meets: usize,
    /// First triple violating the strong triangle inequality.
    pub counterexample: Option<[String; 3]>,
}

impl UltrametricReport {
    pub fn violations(&self) -> usize {
        self.identity + self.symmetry + self.ultrametric + self.isosceles
    }
}

impl fmt::Display for UltrametricReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ultrametric: samples={} seed={} identity={} symmetry={} ultrametric={} isosceles={} unordered-meets={}",
            self.samples,
            self.seed,
            self.identity,
            self.symmetry,
            self.ultrametric,
            self.isosceles,
            self.unordered_meets
        )?;
        if let Some([x, y, z]) = &self.counterexample {
            writeln!(f, "counterexample: x: {x}")?;
            writeln!(f, "counterexample: y: {y}")?;
            writeln!(f, "counterexample: z: {z}")?;
        }
        Ok(())
    }
}

/// Checks identity of indiscernibles, symmetry, the strong triangle
/// inequality (all three rotations) and the isosceles property on
/// `samples` seeded triples.
pub fn check_ultrametric(samples: usize, seed: u64) -> Result<UltrametricReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = UltrametricReport {
        samples,
        seed,
        ..Default::default()
    };
    for _ in 0..samples {
        let [x, y, z] = random_triple(&mut rng, Alphabet::BINARY);
        let pts = [&x, &y, &z];
        let d = pts
            .iter()
            .map(|p| {
                pts.iter()
                    .map(|q| distance(p, q))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        for i in 0..3 {
            for j in 0..3 {
                if d[i][j].is_zero() != (pts[i] == pts[j]) {
                    report.identity += 1;
                }
                if d[i][j] != d[j][i] {
                    report.symmetry += 1;
                }
            }
        }
        let mut broken = false;
        for (a, b, c) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            if d[a][b] > d[a][c].clone().max(d[c][b].clone()) {
                broken = true;
            }
        }
        if broken {
            report.ultrametric += 1;
            if report.counterexample.is_none() {
                report.counterexample = Some([x.to_string(), y.to_string(), z.to_string()]);
            }
        }
        if x != y && y != z && x != z {
            let mut ds = [d[0][1].clone(), d[0][2].clone(), d[1][2].clone()];
            ds.sort();
            if ds[1] != ds[2] {
                report.isosceles += 1;
            }
        }
        let meets = [
            agreement_interval(&x, &y)?,
            agreement_interval(&x, &z)?,
            agreement_interval(&y, &z)?,
        ];
        let chain =
            (0..3).all(|i| (0..3).all(|j| meets[i].partial_cmp_inclusion(&meets[j]).is_some()));
        if !chain {
            report.unordered_meets += 1;
        }
    }
    Ok(report)
}

/// A random rule: mostly elementary, otherwise a random range-2 binary table.
pub fn random_rule<R: Rng>(rng: &mut R, range2: bool) -> LocalRule {
    if range2 {
        let table: Vec<Symbol> = (0..32).map(|_| rng.gen_range(0..2)).collect();
        LocalRule::from_fn(Alphabet::BINARY, 2, |h| {
            table[h.iter().fold(0usize, |a, &v| a * 2 + v as usize)]
        })
        .expect("range-2 binary table fits")
    } else {
        LocalRule::elementary(rng.gen_range(0..256)).expect("in range")
    }
}

/// Outcome of the global-map checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StepReport {
    pub samples: usize,
    pub seed: u64,
    pub pointwise: usize,
    pub shift_commute: usize,
}

impl StepReport {
    pub fn violations(&self) -> usize {
        self.pointwise + self.shift_commute
    }
}

impl fmt::Display for StepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "shift-commute: samples={} seed={} pointwise={} shift-commute={}",
            self.samples, self.seed, self.pointwise, self.shift_commute
        )
    }
}

/// For seeded (rule, configuration) pairs, compares `step` against direct
/// neighborhood evaluation on `[-64, 64]` and checks `step ∘ σ = σ ∘ step`.
/// One sample in ten uses a random range-2 table.
pub fn check_step(samples: usize, seed: u64) -> Result<StepReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = StepReport {
        samples,
        seed,
        ..Default::default()
    };
    for k in 0..samples {
        let rule = random_rule(&mut rng, k % 10 == 9);
        let x = Configuration::random_with(&mut rng, Alphabet::BINARY, 12, 5);
        let fx = rule.step(&x)?;
        let r = rule.range() as i64;
        let ok = (-64..=64).all(|i| {
            let hood: Vec<Symbol> = (i - r..=i + r).map(|j| x.eval_at(j)).collect();
            fx.eval_at(i) == rule.apply(&hood)
        });
        if !ok {
            report.pointwise += 1;
        }
        if rule.step(&x.shifted_left())? != fx.shifted_left() {
            report.shift_commute += 1;
        }
    }
    Ok(report)
}

/// Outcome of the absorbing-state check for the rule `F(1,1,1) = 1`,
/// `F = 0` otherwise.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuiescenceReport {
    pub configurations: usize,
    pub slow: usize,
    pub max_steps: usize,
    pub x1_fixed: bool,
}

impl fmt::Display for QuiescenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "quiescence: configurations={} exceptions={} max-steps={} x1-fixed={}",
            self.configurations, self.slow, self.max_steps, self.x1_fixed
        )
    }
}

/// Every core of width `width` on a 0 background reaches `x_0` within
/// `core/2 + 1` steps (core measured after canonicalization), and `x_1` is
/// fixed.
pub fn check_quiescence(width: usize) -> Result<QuiescenceReport> {
    let rule = LocalRule::elementary(128)?;
    let x0 = Configuration::constant(Alphabet::BINARY, 0)?;
    let x1 = Configuration::constant(Alphabet::BINARY, 1)?;
    let mut report = QuiescenceReport {
        x1_fixed: rule.step(&x1)? == x1,
        ..Default::default()
    };
    for k in 0..1u64 << width {
        let word = crate::dynamics::cyclic_candidate(k, 2, width);
        let x = Configuration::finite_on_background(Alphabet::BINARY, 0, 0, word)?;
        let bound = x.core().len() / 2 + 1;
        let mut cur = x;
        let mut steps = 0;
        while cur != x0 && steps <= bound {
            cur = rule.step(&cur)?;
            steps += 1;
        }
        if cur != x0 {
            report.slow += 1;
        }
        report.max_steps = report.max_steps.max(steps);
        report.configurations += 1;
    }
    Ok(report)
}

/// Outcome of the rule-90 additivity check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AdditivityReport {
    pub samples: usize,
    pub seed: u64,
    pub violations: usize,
}

impl fmt::Display for AdditivityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "rule90-additivity: samples={} seed={} violations={}",
            self.samples, self.seed, self.violations
        )
    }
}

/// `f(x ⊕ y) = f(x) ⊕ f(y)` for rule 90 on seeded pairs.
pub fn check_rule90_additivity(samples: usize, seed: u64) -> Result<AdditivityReport> {
    let rule = LocalRule::elementary(90)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AdditivityReport {
        samples,
        seed,
        ..Default::default()
    };
    for _ in 0..samples {
        let x = Configuration::random_with(&mut rng, Alphabet::BINARY, 12, 5);
        let y = Configuration::random_with(&mut rng, Alphabet::BINARY, 12, 5);
        let lhs = rule.step(&x.pointwise_sum(&y)?)?;
        let rhs = rule.step(&x)?.pointwise_sum(&rule.step(&y)?)?;
        if lhs != rhs {
            report.violations += 1;
        }
    }
    Ok(report)
}
