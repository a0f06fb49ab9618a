use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::primes::{is_prime, small_primes};
use super::{BigMathError, Rational};

/// `sign * prod(p^e)` with primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    negative: bool,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    /// +1 or -1.
    pub fn sign(&self) -> i32 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    pub fn value(&self) -> BigInt {
        let mag = self
            .factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        let v = BigInt::from(mag);
        if self.negative {
            -v
        } else {
            v
        }
    }

    /// Render as `-1·2^3·5`; a bare unit renders as `1` or `-1`.
    pub fn render(&self, sep: &str) -> String {
        let mut parts = Vec::new();
        if self.negative {
            parts.push("-1".to_string());
        }
        for (p, e) in &self.factors {
            if *e == 1 {
                parts.push(p.to_string());
            } else {
                parts.push(format!("{p}^{e}"));
            }
        }
        if parts.is_empty() {
            parts.push("1".to_string());
        }
        parts.join(sep)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("·"))
    }
}

/// Factorization of a nonzero rational as numerator over a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFactorization {
    pub numerator: Factorization,
    pub denominator: Factorization,
}

impl RationalFactorization {
    pub fn render(&self, sep: &str) -> String {
        if self.denominator.factors.is_empty() {
            self.numerator.render(sep)
        } else {
            format!("{}/{}", self.numerator.render(sep), self.denominator.render(sep))
        }
    }
}

impl fmt::Display for RationalFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("·"))
    }
}

/// Factor a nonzero integer: trial division by primes below 10^4, then
/// Brent's variant of Pollard rho with fixed seeds.
pub fn factorize(n: &BigInt) -> Result<Factorization, BigMathError> {
    if n.is_zero() {
        return Err(BigMathError::FactorZero);
    }
    let mut rest = n.magnitude().clone();
    let mut found: Vec<BigUint> = Vec::new();

    for &p in small_primes() {
        let p_big = BigUint::from(p);
        if &p_big * &p_big > rest {
            break;
        }
        while (&rest % p).is_zero() {
            rest /= p;
            found.push(p_big.clone());
        }
    }
    if !rest.is_one() {
        split_into(rest, &mut found);
    }
    found.sort();

    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for p in found {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization {
        negative: n.sign() == Sign::Minus,
        factors,
    })
}

pub fn factorize_rational(q: &Rational) -> Option<RationalFactorization> {
    if q.is_zero() {
        return None;
    }
    Some(RationalFactorization {
        numerator: factorize(q.numer()).ok()?,
        denominator: factorize(q.denom()).ok()?,
    })
}

fn split_into(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let d = (1u32..)
        .find_map(|c| brent_rho(&n, c))
        .expect("rho eventually splits a composite");
    let other = &n / &d;
    split_into(d, out);
    split_into(other, out);
}

fn abs_diff(a: &BigUint, b: &BigUint) -> BigUint {
    if a > b {
        a - b
    } else {
        b - a
    }
}

/// One Brent cycle search with `x -> x^2 + c`, seed 2. Returns a proper
/// divisor of composite `n`, or `None` if this `c` degenerates.
fn brent_rho(n: &BigUint, c: u32) -> Option<BigUint> {
    const BATCH: u64 = 128;
    const MAX_R: u64 = 1 << 24;
    let step = |x: &BigUint| (x * x + c) % n;

    let mut y = BigUint::from(2u32);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut r = 1u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = step(&y);
                q = q * abs_diff(&x, &y) % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        r *= 2;
        if r > MAX_R {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = step(&ys);
            g = abs_diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n || g.is_zero() {
        None
    } else {
        Some(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigmath::{is_prime_u64, rat};
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn examples() {
        let f = factorize(&big(804)).unwrap();
        assert_eq!(f.render("·"), "2^2·3·67");
        assert_eq!(f.sign(), 1);
        let unit = factorize(&big(-1)).unwrap();
        assert_eq!(unit.sign(), -1);
        assert!(unit.factors().is_empty());
        assert_eq!(unit.render("·"), "-1");
        assert_eq!(factorize(&big(1651004)).unwrap().to_string(), "2^2·191·2161");
        assert_eq!(factorize(&big(0)), Err(BigMathError::FactorZero));
    }

    #[test]
    fn table_entries() {
        let cases = [
            (-28880i64, "-1·2^4·5·19^2"),
            (-138110520, "-1·2^3·3·5·1150921"),
            (15920571604, "2^2·7·17·33446579"),
            (-2419747948960, "-1·2^5·5·457·33092833"),
            (468896302250604, "2^2·3^2·41·317680421579"),
            (-112834502909928192, "-1·2^8·3·146919925663969"),
        ];
        for (n, want) in cases {
            assert_eq!(factorize(&big(n)).unwrap().to_string(), want);
        }
    }

    #[test]
    fn semiprimes_beyond_trial_range() {
        let p = 1_000_003u64;
        let q = 999_999_937u64;
        let n = BigInt::from(p) * BigInt::from(q);
        let f = factorize(&n).unwrap();
        assert_eq!(f.render("*"), format!("{p}*{q}"));
        // 2^67 - 1
        let m67 = (BigInt::one() << 67u32) - 1;
        assert_eq!(factorize(&m67).unwrap().to_string(), "193707721·761838257287");
    }

    #[test]
    fn agrees_with_trial_division_up_to_1e6() {
        for n in 1..=1_000_000u64 {
            let f = factorize(&BigInt::from(n)).unwrap();
            let want = trial_factor(n);
            let got: Vec<(u64, u32)> = f
                .factors()
                .iter()
                .map(|(p, e)| (u64::try_from(p).unwrap(), *e))
                .collect();
            assert_eq!(got, want, "n = {n}");
        }
    }

    #[test]
    fn rational_factorization_render() {
        let f = factorize_rational(&rat(4489, 25)).unwrap();
        assert_eq!(f.to_string(), "67^2/5^2");
        assert!(factorize_rational(&rat(0, 3)).is_none());
        assert_eq!(factorize_rational(&rat(-6, 1)).unwrap().to_string(), "-1·2·3");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn reconstructs_input(n in 2u64..=1_000_000_000_000_000u64, neg in any::<bool>()) {
            let v = if neg { -BigInt::from(n) } else { BigInt::from(n) };
            let f = factorize(&v).unwrap();
            prop_assert_eq!(f.value(), v);
            let mut last = BigUint::zero();
            for (p, e) in f.factors() {
                prop_assert!(*e >= 1);
                prop_assert!(p > &last);
                prop_assert!(is_prime_u64(u64::try_from(p).unwrap()));
                last = p.clone();
            }
        }
    }
}
