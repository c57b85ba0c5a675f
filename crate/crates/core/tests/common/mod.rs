#![allow(dead_code)]

use grossca::config::{Configuration, Symbol};
use grossca::grossnum::GrossQuantity;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

/// Value of `q` with ① replaced by the finite integer `k`.
pub fn surrogate(q: &GrossQuantity, k: i64) -> BigRational {
    q.terms()
        .iter()
        .map(|t| {
            let e = t.exp.a * k + t.exp.b;
            let b = BigRational::from_integer(BigInt::from(t.base));
            let p = if e >= 0 {
                num_traits::pow(b, e as usize)
            } else {
                num_traits::pow(b, (-e) as usize).recip()
            };
            &t.coeff * p
        })
        .fold(BigRational::zero(), |acc, x| acc + x)
}

pub fn pow2(e: i64) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    if e >= 0 {
        num_traits::pow(two, e as usize)
    } else {
        num_traits::pow(two, (-e) as usize).recip()
    }
}

/// Half-width of a window outside which both configurations are periodic
/// with a common period, plus one period.
pub fn reach(x: &Configuration, y: &Configuration) -> i64 {
    let p = x.fill_lcm().lcm(&y.fill_lcm());
    let ext = [x.offset(), x.right_start(), y.offset(), y.right_start()]
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap();
    ext + 2 * p + 1
}

/// Pointwise equality decided on the window `[-reach, reach]`.
pub fn same_sequence(x: &Configuration, y: &Configuration) -> bool {
    let r = reach(x, y);
    x.window(-r, r) == y.window(-r, r)
}

/// Brute-force agreement interval around 0: `None` for `x(0) ≠ y(0)`,
/// otherwise `(m, n)` with `None` standing for an unbounded side.
pub fn brute_meet(x: &Configuration, y: &Configuration) -> Option<(Option<i64>, Option<i64>)> {
    if x.eval_at(0) != y.eval_at(0) {
        return None;
    }
    let r = reach(x, y);
    let n = (1..=r)
        .find(|&i| x.eval_at(i) != y.eval_at(i))
        .map(|i| i - 1);
    let m = (1..=r)
        .find(|&i| x.eval_at(-i) != y.eval_at(-i))
        .map(|i| 1 - i);
    Some((m, n))
}

/// `head` left of `at`, `tail` from `at` on.
pub fn splice(head: &Configuration, tail: &Configuration, at: i64) -> Configuration {
    let lo = head.offset().min(at) - 1;
    let hi = tail.right_start().max(at) + 1;
    let core: Vec<Symbol> = (lo..hi)
        .map(|i| {
            if i < at {
                head.eval_at(i)
            } else {
                tail.eval_at(i)
            }
        })
        .collect();
    let ll = head.left().len() as i64;
    let rl = tail.right().len() as i64;
    Configuration::new(
        head.alphabet(),
        head.window(lo - ll, lo - 1).symbols,
        core,
        lo,
        tail.window(hi, hi + rl - 1).symbols,
    )
    .unwrap()
}
