//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any
//! criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::{pow2, splice};
use grossca::ca::{LocalRule, SpacetimeGrid};
use grossca::config::{Alphabet, Configuration, Symbol};
use grossca::dynamics::{
    agrees_from, bmn_member_finite, disk_cardinality, shift_bmn_bound, space_cardinality, BmnSpec,
};
use grossca::grossnum::{GrossLinear, GrossQuantity};
use grossca::metric::{agreement_interval, distance, ExtendedIndex, Meet};
use grossca::verify;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cfg(s: &str) -> Configuration {
    s.parse().expect("literal configuration")
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ones_and_block() -> Outcome {
    let x = cfg("left=1 core=- offset=0 right=1");
    let y = cfg("left=0 core=111 offset=-2 right=1");
    let start = Instant::now();
    let d = distance(&x, &y).map_err(err)?;
    let meet = agreement_interval(&x, &y).map_err(err)?;
    let elapsed = start.elapsed();
    let expect = GrossQuantity::pow(2, GrossLinear::new(-1, -3)).map_err(err)?;
    ensure(d == expect, format!("distance {d}"))?;
    let want = Meet::Agreement {
        m: ExtendedIndex::Finite(-2),
        n: ExtendedIndex::PosInfinity,
        witness: None,
    };
    ensure(meet == want, format!("meet {meet}"))?;
    ensure(
        elapsed < Duration::from_millis(1),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!("d = {d}, {meet}, {elapsed:?}"))
}

fn islands() -> Outcome {
    let x = cfg("left=1 core=010 offset=-1 right=1");
    let y = cfg("left=1 core=001010 offset=-2 right=1");
    let d = distance(&x, &y).map_err(err)?;
    ensure(d.as_rational() == Some(pow2(-4)), format!("distance {d}"))?;
    let meet = agreement_interval(&x, &y).map_err(err)?;
    let (m, n) = meet.interval().ok_or("meet is *")?;
    ensure(
        m == ExtendedIndex::Finite(-1) && n == ExtendedIndex::Finite(2),
        format!("meet {meet}"),
    )?;
    Ok(format!("d = {d}, {meet}"))
}

fn geometric_sum() -> Outcome {
    let g = GrossQuantity::geom_sum(2, GrossLinear::GROSSONE).map_err(err)?;
    let expect =
        GrossQuantity::one() - GrossQuantity::pow(2, GrossLinear::new(-1, 0)).map_err(err)?;
    ensure(g == expect, format!("geom_sum(2, ①) = {g}"))?;
    for k in 1..=30 {
        let direct = (1..=k).fold(BigRational::zero(), |acc, i| acc + pow2(-i));
        let got = GrossQuantity::geom_sum(2, GrossLinear::finite(k)).map_err(err)?;
        ensure(got.as_rational() == Some(direct), format!("k = {k}: {got}"))?;
    }
    Ok(format!("geom_sum(2, ①) = {g}; k = 1..=30 exact"))
}

fn cardinalities() -> Outcome {
    let b = Alphabet::BINARY;
    let space = space_cardinality(b);
    let disk = disk_cardinality(b, -2, 3).map_err(err)?;
    ensure(space.to_string() == "2^(2①+1)", format!("space {space}"))?;
    ensure(disk.to_string() == "2^(2①-5)", format!("disk {disk}"))?;
    let doubled = disk_cardinality(b, 0, 0)
        .map_err(err)?
        .checked_mul(&GrossQuantity::from_integer(2))
        .map_err(err)?;
    ensure(doubled == space, format!("disk(0,0)·2 = {doubled}"))?;
    Ok(format!("space = {space}, disk(-2,3) = {disk}"))
}

fn shift_bmn() -> Outcome {
    let bound = shift_bmn_bound(Alphabet::BINARY);
    let expect =
        &GrossQuantity::pow(2, GrossLinear::GROSSONE).map_err(err)? + &GrossQuantity::one();
    ensure(
        bound == expect && bound.to_string() == "2^① + 1",
        format!("bound {bound}"),
    )?;

    let sigma = LocalRule::shift_left(Alphabet::BINARY);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let pairs = 1000;
    let (mut mismatches, mut members) = (0, 0);
    for k in 0..pairs {
        let x = Configuration::random_with(&mut rng, Alphabet::BINARY, 12, 4);
        let m = rng.gen_range(-6..=0);
        let n = rng.gen_range(0..=6);
        let y = if k % 2 == 0 {
            let head = Configuration::random_with(&mut rng, Alphabet::BINARY, 12, 4);
            splice(&head, &x, m)
        } else {
            verify::perturb(&x, &mut rng, 8, 4)
        };
        let spec = BmnSpec::new(sigma.clone(), x.clone(), m, n, 64).map_err(err)?;
        let got = bmn_member_finite(&spec, &y).map_err(err)?;
        let want = agrees_from(&x, &y, m).map_err(err)?;
        mismatches += usize::from(got != want);
        members += usize::from(got);
    }
    ensure(
        mismatches == 0,
        format!("{mismatches} mismatches of {pairs}"),
    )?;
    Ok(format!(
        "bound = {bound}; {pairs} pairs, {members} members, 0 mismatches"
    ))
}

fn quiescence() -> Outcome {
    let start = Instant::now();
    let r = verify::check_quiescence(12).map_err(err)?;
    let elapsed = start.elapsed();
    ensure(
        r.configurations == 1 << 12,
        format!("{} configurations", r.configurations),
    )?;
    ensure(r.slow == 0, format!("{} exceptions", r.slow))?;
    ensure(r.x1_fixed, "x_1 is not fixed")?;
    ensure(
        elapsed < Duration::from_secs(10),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "{} configurations, max {} steps, {elapsed:?}",
        r.configurations, r.max_steps
    ))
}

fn ultrametric() -> Outcome {
    let start = Instant::now();
    let r = verify::check_ultrametric(1000, SEED).map_err(err)?;
    let elapsed = start.elapsed();
    let summary = format!(
        "identity={} symmetry={} ultrametric={} isosceles={} ({elapsed:?})",
        r.identity, r.symmetry, r.ultrametric, r.isosceles
    );
    ensure(r.violations() == 0, summary.clone())?;
    ensure(
        elapsed < Duration::from_secs(10),
        format!("took {elapsed:?}"),
    )?;
    Ok(summary)
}

fn step_oracle() -> Outcome {
    let r = verify::check_step(100, SEED).map_err(err)?;
    ensure(
        r.violations() == 0,
        format!(
            "pointwise={} shift-commute={}",
            r.pointwise, r.shift_commute
        ),
    )?;
    Ok("100 pairs (10 range-2 tables), 0 mismatches".into())
}

/// Rule 90 on a plain array; cells outside are 0.
fn xor_rows(width: usize, steps: usize) -> Vec<Vec<Symbol>> {
    let mut row = vec![0; width];
    row[width / 2] = 1;
    let mut rows = vec![row.clone()];
    for _ in 0..steps {
        row = (0..width)
            .map(|i| {
                let l = if i > 0 { row[i - 1] } else { 0 };
                let r = if i + 1 < width { row[i + 1] } else { 0 };
                l ^ r
            })
            .collect();
        rows.push(row.clone());
    }
    rows
}

fn rule90() -> Outcome {
    let rule = LocalRule::elementary(90).map_err(err)?;
    let x = Configuration::finite_on_background(Alphabet::BINARY, 0, 0, vec![1]).map_err(err)?;
    let grid = rule.spacetime(&x, 2, -2, 2).map_err(err)?;
    let oracle = xor_rows(5, 2);
    ensure(grid.rows == oracle, format!("rows {:?}", grid.rows))?;
    let words: Vec<String> = oracle
        .iter()
        .map(|r| grossca::config::word_to_string(r))
        .collect();
    ensure(
        words == ["00100", "01010", "10001"],
        format!("oracle {words:?}"),
    )?;
    let r = verify::check_rule90_additivity(100, SEED).map_err(err)?;
    ensure(
        r.violations == 0,
        format!("{} additivity violations", r.violations),
    )?;
    Ok(format!("rows {}; additivity on 100 pairs", words.join("/")))
}

fn totalistic_render() -> Outcome {
    let render = || -> Result<(String, String), String> {
        let rule = LocalRule::totalistic(20, Alphabet::BINARY, 2).map_err(err)?;
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let core: Vec<Symbol> = (0..200).map(|_| rng.gen_range(0..2)).collect();
        let x = Configuration::finite_on_background(Alphabet::BINARY, 0, 0, core).map_err(err)?;
        let grid = rule.spacetime(&x, 200, -100, 299).map_err(err)?;
        let ascii = grid
            .render_ascii(&SpacetimeGrid::default_glyphs(Alphabet::BINARY))
            .map_err(err)?;
        Ok((ascii, grid.render_pgm()))
    };
    let (a1, p1) = render()?;
    let (a2, p2) = render()?;
    ensure(a1 == a2 && p1 == p2, "renders differ between runs")?;
    ensure(
        a1.lines().count() == 201,
        format!("{} rows", a1.lines().count()),
    )?;
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("totalistic20.pgm");
    std::fs::write(&path, &p1).map_err(err)?;
    Ok(format!(
        "201x400 grid, deterministic, written to {}",
        path.display()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("distance and meet, ones vs block", ones_and_block),
        ("distance and meet, islands", islands),
        ("geometric sum", geometric_sum),
        ("space and disk cardinalities", cardinalities),
        ("shift-map B_{m,n}", shift_bmn),
        ("quiescence under rule 128", quiescence),
        ("ultrametric suite", ultrametric),
        ("CA step oracle", step_oracle),
        ("rule 90 checks", rule90),
        ("totalistic 20 rendering", totalistic_render),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
