use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const TRIAL_LIMIT: u32 = 10_000;

/// Bases that make Miller-Rabin deterministic for every n < 2^64.
const MR_BASES_64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Primes up to 10^4, sieved once.
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[doc(hidden)]
pub fn miller_rabin_u64(n: u64, base: u64) -> bool {
    let a = base % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = super::pow_mod_u64(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    MR_BASES_64.iter().all(|&b| miller_rabin_u64(n, b))
}

/// Primality: deterministic Miller-Rabin below 2^64, Baillie-PSW above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in small_primes() {
        if (n % p).is_zero() {
            return false;
        }
    }
    strong_probable_prime_base2(n) && strong_lucas_probable_prime(n)
}

fn strong_probable_prime_base2(n: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = BigUint::from(2u32).modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let n_int = BigInt::from(n.clone());
    let mut a = a.mod_floor(&n_int).to_biguint().expect("nonnegative");
    let mut n = n.clone();
    let mut result = 1;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            result = -result;
        }
        a = a % &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice
/// (first D in 5, -7, 9, -11, ... with (D/n) = -1; P = 1, Q = (1 - D)/4).
/// Expects odd `n > 2`.
#[doc(hidden)]
pub fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    let root = n.sqrt();
    if &root * &root == *n {
        return false;
    }
    let n_int = BigInt::from(n.clone());
    let mut d = BigInt::from(5);
    loop {
        let j = jacobi(&d, n);
        if j == -1 {
            break;
        }
        if j == 0 && d.magnitude() != n {
            return false;
        }
        d = if d > BigInt::zero() {
            -(d + 2i32)
        } else {
            -d + 2i32
        };
    }
    let q: BigInt = (BigInt::one() - &d) / 4i32;
    let md = |x: BigInt| x.mod_floor(&n_int);
    let half = |x: BigInt| {
        let x = if x.is_odd() { x + &n_int } else { x };
        (x >> 1u32).mod_floor(&n_int)
    };

    let n_plus_1 = n + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let k = &n_plus_1 >> s;

    let q_mod = md(q.clone());
    let d_mod = md(d.clone());
    let mut u = BigInt::one();
    let mut v = BigInt::one();
    let mut qk = q_mod.clone();
    let bits = k.bits();
    for i in (0..bits - 1).rev() {
        u = md(&u * &v);
        v = md(&v * &v - 2 * &qk);
        qk = md(&qk * &qk);
        if k.bit(i) {
            let u_next = half(&u + &v);
            let v_next = half(&d_mod * &u + &v);
            u = u_next;
            v = v_next;
            qk = md(&qk * &q_mod);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = md(&v * &v - 2 * &qk);
        if v.is_zero() {
            return true;
        }
        qk = md(&qk * &qk);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn examples() {
        assert!(is_prime_u64(691));
        assert!(!is_prime_u64(1));
        assert!(is_prime_u64(146919925663969));
        assert!(is_prime(&BigUint::from(146919925663969u64)));
        assert!(!is_prime_u64(0));
        assert!(is_prime_u64(2));
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime_u64(n), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_rejected() {
        // strong pseudoprimes to several small bases
        for n in [2047u64, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383, 341550071728321, 3825123056546413051] {
            assert!(!is_prime_u64(n), "{n}");
        }
    }

    #[test]
    fn lucas_part_matches_known_pseudoprimes() {
        // smallest strong Lucas pseudoprimes under Selfridge parameters
        for n in [5459u64, 5777, 10877, 16109, 18971, 22499, 24569, 25199, 40309, 58519] {
            assert!(strong_lucas_probable_prime(&BigUint::from(n)), "{n}");
            assert!(!is_prime_u64(n));
        }
        for n in (5..3000u64).step_by(2) {
            if trial_division(n) {
                assert!(strong_lucas_probable_prime(&BigUint::from(n)), "{n}");
            }
        }
    }

    #[test]
    fn large_inputs_use_bpsw() {
        let m89 = (BigUint::one() << 89u32) - 1u32;
        assert!(is_prime(&m89));
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m89 * &m127)));
        // 2^67 - 1 = 193707721 * 761838257287
        let m67 = (BigUint::one() << 67u32) - 1u32;
        assert!(!is_prime(&m67));
        let p = BigUint::from(18446744073709551557u64); // largest prime below 2^64
        assert!(is_prime(&(&p)));
        assert!(!is_prime(&(&p * &p)));
    }
}
