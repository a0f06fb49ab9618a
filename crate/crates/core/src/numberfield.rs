//! Arithmetic in `Q(alpha)` with `alpha^2 = D`, norms, conjugation, and
//! reduction to `F_l` through a chosen square root of `D` mod `l`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::bigmath::{is_prime_u64, mod_u64, pow_mod_u64, rat_int, rational_mod_u64, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumberFieldError {
    #[error("{0} is a perfect square; Q(sqrt({0})) is not a quadratic field")]
    SquareDiscriminant(i64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{ell} is ramified in Q(sqrt({d})): {ell} divides {d}")]
    Ramified { d: i64, ell: u64 },
    #[error("{ell} is inert in Q(sqrt({d})): no residue embedding exists")]
    Inert { d: i64, ell: u64 },
    #[error("{root}^2 is not {d} mod {ell}")]
    NotARoot { d: i64, ell: u64, root: u64 },
    #[error("{value} is not {ell}-integral")]
    NotIntegral { value: String, ell: u64 },
}

/// `Q(alpha)` with `alpha^2 = d`, `d` not a perfect square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    d: i64,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self, NumberFieldError> {
        if d >= 0 {
            let r = (d as u64).sqrt();
            if r * r == d as u64 {
                return Err(NumberFieldError::SquareDiscriminant(d));
            }
        }
        Ok(QuadField { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn elem(&self, a: Rational, b: Rational) -> QuadFieldElem {
        QuadFieldElem { a, b, d: self.d }
    }

    pub fn from_rational(&self, a: Rational) -> QuadFieldElem {
        self.elem(a, Rational::zero())
    }

    pub fn alpha(&self) -> QuadFieldElem {
        self.elem(Rational::zero(), Rational::one())
    }
}

/// `a + b alpha`. Binary operations panic if the operands live in
/// different fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadFieldElem {
    a: Rational,
    b: Rational,
    d: i64,
}

impl QuadFieldElem {
    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn field(&self) -> QuadField {
        QuadField { d: self.d }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn same_field(&self, other: &Self) -> bool {
        self.d == other.d
    }

    /// `N(a + b alpha) = a^2 - D b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - rat_int(self.d) * &self.b * &self.b
    }

    pub fn conjugate(&self) -> Self {
        QuadFieldElem {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// No denominator of `a` or `b` is divisible by `ell`.
    pub fn is_integral_at(&self, ell: u64) -> bool {
        let l = BigInt::from(ell);
        !(self.a.denom() % &l).is_zero() && !(self.b.denom() % &l).is_zero()
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(self.d, other.d, "elements of different quadratic fields");
    }
}

impl fmt::Display for QuadFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b.is_one() => f.write_str("a"),
            (true, false) => write!(f, "{}*a", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}*a", self.a, -self.b.clone())
                } else {
                    write!(f, "{} + {}*a", self.a, self.b)
                }
            }
        }
    }
}

impl<'a> Add<&'a QuadFieldElem> for &'a QuadFieldElem {
    type Output = QuadFieldElem;
    fn add(self, rhs: &QuadFieldElem) -> QuadFieldElem {
        self.check_field(rhs);
        QuadFieldElem {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d: self.d,
        }
    }
}

impl<'a> Sub<&'a QuadFieldElem> for &'a QuadFieldElem {
    type Output = QuadFieldElem;
    fn sub(self, rhs: &QuadFieldElem) -> QuadFieldElem {
        self.check_field(rhs);
        QuadFieldElem {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            d: self.d,
        }
    }
}

impl<'a> Mul<&'a QuadFieldElem> for &'a QuadFieldElem {
    type Output = QuadFieldElem;
    fn mul(self, rhs: &QuadFieldElem) -> QuadFieldElem {
        self.check_field(rhs);
        QuadFieldElem {
            a: &self.a * &rhs.a + rat_int(self.d) * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d,
        }
    }
}

impl Neg for &QuadFieldElem {
    type Output = QuadFieldElem;
    fn neg(self) -> QuadFieldElem {
        QuadFieldElem {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QuadFieldElem {
            type Output = QuadFieldElem;
            fn $m(self, rhs: QuadFieldElem) -> QuadFieldElem {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for QuadFieldElem {
    type Output = QuadFieldElem;
    fn neg(self) -> QuadFieldElem {
        -&self
    }
}

fn check_odd_prime(ell: u64) -> Result<(), NumberFieldError> {
    if ell == 2 || !is_prime_u64(ell) {
        Err(NumberFieldError::NotOddPrime(ell))
    } else {
        Ok(())
    }
}

/// Tonelli-Shanks for an odd prime `p` and a nonzero quadratic residue `n`.
fn tonelli_shanks(n: u64, p: u64) -> u64 {
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p)
        .find(|&z| pow_mod_u64(z, (p - 1) / 2, p) == p - 1)
        .expect("odd prime has a non-residue");
    let mut m = s;
    let mut c = pow_mod_u64(z, q, p);
    let mut t = pow_mod_u64(n, q, p);
    let mut r = pow_mod_u64(n, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul(t2, t2);
            i += 1;
        }
        let b = pow_mod_u64(c, 1 << (m - i - 1), p);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    r
}

/// Both square roots of `d` mod `ell`, ascending; `None` if `ell` is inert.
pub fn sqrt_mod(d: i64, ell: u64) -> Result<Option<[u64; 2]>, NumberFieldError> {
    check_odd_prime(ell)?;
    let n = mod_u64(&BigInt::from(d), ell);
    if n == 0 {
        return Err(NumberFieldError::Ramified { d, ell });
    }
    if pow_mod_u64(n, (ell - 1) / 2, ell) != 1 {
        return Ok(None);
    }
    let r = tonelli_shanks(n, ell);
    let (lo, hi) = if r < ell - r { (r, ell - r) } else { (ell - r, r) };
    Ok(Some([lo, hi]))
}

/// The map `a + b alpha -> a + b r (mod l)` for a root `r` of `x^2 - D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueEmbedding {
    ell: u64,
    d: i64,
    root: u64,
}

impl ResidueEmbedding {
    pub fn new(d: i64, ell: u64, root: u64) -> Result<Self, NumberFieldError> {
        check_odd_prime(ell)?;
        let root = root % ell;
        let lhs = ((root as u128 * root as u128) % ell as u128) as u64;
        if lhs != mod_u64(&BigInt::from(d), ell) {
            return Err(NumberFieldError::NotARoot { d, ell, root });
        }
        Ok(ResidueEmbedding { ell, d, root })
    }

    /// Both embeddings at a split prime.
    pub fn at_split_prime(d: i64, ell: u64) -> Result<[Self; 2], NumberFieldError> {
        match sqrt_mod(d, ell)? {
            Some([r1, r2]) => Ok([
                ResidueEmbedding { ell, d, root: r1 },
                ResidueEmbedding { ell, d, root: r2 },
            ]),
            None => Err(NumberFieldError::Inert { d, ell }),
        }
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn root(&self) -> u64 {
        self.root
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn conjugate(&self) -> Self {
        ResidueEmbedding {
            root: (self.ell - self.root) % self.ell,
            ..*self
        }
    }
}

/// Image of `x` in `F_l` under `emb`.
pub fn reduce(x: &QuadFieldElem, emb: &ResidueEmbedding) -> Result<u64, NumberFieldError> {
    assert_eq!(x.d, emb.d, "embedding belongs to a different field");
    let ell = emb.ell;
    let not_integral = || NumberFieldError::NotIntegral {
        value: x.to_string(),
        ell,
    };
    let a = rational_mod_u64(&x.a, ell).ok_or_else(not_integral)?;
    let b = rational_mod_u64(&x.b, ell).ok_or_else(not_integral)?;
    Ok(((a as u128 + b as u128 * emb.root as u128) % ell as u128) as u64)
}

/// `l`-adic valuation of a nonzero rational.
pub fn valuation(q: &Rational, ell: u64) -> i64 {
    let l = BigInt::from(ell);
    let count = |n: &BigInt| {
        let mut n = n.abs();
        let mut v = 0i64;
        while !n.is_zero() && (&n % &l).is_zero() {
            n /= &l;
            v += 1;
        }
        v
    };
    count(q.numer()) - count(q.denom())
}

/// `l | N(x)` in the `l`-integral sense: the norm is zero or has positive valuation.
pub fn ell_divides_norm(x: &QuadFieldElem, ell: u64) -> bool {
    let n = x.norm();
    n.is_zero() || valuation(&n, ell) > 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigmath::rat;

    fn field() -> QuadField {
        QuadField::new(-44).unwrap()
    }

    fn e(a: i64, b: i64) -> QuadFieldElem {
        field().elem(rat(a, 1), rat(b, 1))
    }

    #[test]
    fn norm_examples() {
        assert_eq!(e(31, 1).norm(), rat(1005, 1));
        assert_eq!(e(242, -3).norm(), rat(58960, 1));
        assert_eq!(e(0, 0).norm(), rat(0, 1));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(e(5, 1).conjugate(), e(5, -1));
        assert_eq!(e(7, 0).conjugate(), e(7, 0));
        let x = e(31, 1);
        let prod = &x * &x.conjugate();
        assert!(prod.is_rational());
        assert_eq!(prod.a(), &rat(1005, 1));
    }

    #[test]
    fn alpha_squares_to_d() {
        let a = field().alpha();
        assert_eq!(&a * &a, e(-44, 0));
    }

    #[test]
    fn square_discriminant_rejected() {
        assert_eq!(QuadField::new(49), Err(NumberFieldError::SquareDiscriminant(49)));
        assert_eq!(QuadField::new(0), Err(NumberFieldError::SquareDiscriminant(0)));
        assert!(QuadField::new(-1).is_ok());
        assert!(QuadField::new(176).is_ok());
    }

    #[test]
    fn sqrt_mod_examples() {
        assert_eq!(sqrt_mod(-44, 67), Ok(Some([31, 36])));
        assert_eq!(sqrt_mod(-44, 7), Ok(None));
        assert_eq!(sqrt_mod(-44, 3), Ok(Some([1, 2])));
        assert_eq!(sqrt_mod(-44, 2), Err(NumberFieldError::NotOddPrime(2)));
        assert_eq!(sqrt_mod(-44, 11), Err(NumberFieldError::Ramified { d: -44, ell: 11 }));
    }

    #[test]
    fn sqrt_mod_matches_exhaustive_search() {
        for ell in [3u64, 5, 7, 13, 17, 41, 67, 97, 113, 193, 257, 691, 3617] {
            for d in [-44i64, -1, 2, 3, 5, -7, 10, 13] {
                let brute: Vec<u64> = (1..ell)
                    .filter(|r| (r * r) % ell == mod_u64(&BigInt::from(d), ell))
                    .collect();
                match sqrt_mod(d, ell) {
                    Ok(Some(roots)) => assert_eq!(roots.to_vec(), brute, "d={d} ell={ell}"),
                    Ok(None) => assert!(brute.is_empty()),
                    Err(NumberFieldError::Ramified { .. }) => assert_eq!(d.rem_euclid(ell as i64), 0),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let emb = ResidueEmbedding::new(-44, 67, 36).unwrap();
        assert_eq!(reduce(&e(31, 1), &emb), Ok(0));
        assert_eq!(reduce(&e(242, -3), &emb), Ok(0));
        assert_eq!(reduce(&field().from_rational(rat(67, 5)), &emb), Ok(0));
        assert!(matches!(
            reduce(&field().from_rational(rat(1, 67)), &emb),
            Err(NumberFieldError::NotIntegral { .. })
        ));
        assert!(matches!(
            ResidueEmbedding::new(-44, 67, 30),
            Err(NumberFieldError::NotARoot { .. })
        ));
        assert!(matches!(
            ResidueEmbedding::at_split_prime(-44, 7),
            Err(NumberFieldError::Inert { .. })
        ));
    }

    #[test]
    fn valuation_and_norm_divisibility() {
        assert_eq!(valuation(&rat(4489, 25), 67), 2);
        assert_eq!(valuation(&rat(4489, 25), 5), -2);
        assert!(ell_divides_norm(&e(31, 1), 67));
        assert!(!ell_divides_norm(&e(32, 1), 67));
        assert!(ell_divides_norm(&e(0, 0), 67));
    }
}
