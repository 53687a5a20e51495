//! Primality, `p`-adic valuations and prime enumeration.
//!
//! `is_prime` uses trial division below 2^16 and Miller-Rabin above. With the
//! first twelve prime bases the Miller-Rabin test is deterministic for every
//! `n < 3.317 * 10^24`, which covers all of `u64`. Larger inputs get the same
//! twelve bases plus eight more; there the answer is correct with overwhelming
//! probability but is not proven.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactpoly::PrimitiveIntegerPolynomial;
use crate::ExactRational;

const TRIAL_LIMIT: u64 = 1 << 16;
const DETERMINISTIC_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const EXTRA_BASES: [u64; 8] = [41, 43, 47, 53, 59, 61, 67, 71];
const RHO_BUDGET: u64 = 1 << 20;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_LIMIT as usize;
        let mut composite = vec![false; limit];
        let mut out = Vec::new();
        for i in 2..limit {
            if !composite[i] {
                out.push(i as u64);
                for j in (i * i..limit).step_by(i) {
                    composite[j] = true;
                }
            }
        }
        out
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime_u64(n: u64, base: u64) -> bool {
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    let mut x = pow_mod(base, d, n);
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

/// Primality of a machine-word integer. Deterministic for every input.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < TRIAL_LIMIT {
        return (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
    }
    if DETERMINISTIC_BASES.iter().any(|&p| n.is_multiple_of(p)) {
        return false;
    }
    DETERMINISTIC_BASES
        .iter()
        .all(|&b| strong_probable_prime_u64(n, b))
}

fn strong_probable_prime_big(n: &BigUint, base: u64) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    let mut x = BigUint::from(base).modpow(&d, n);
    if x == one || x == n_minus_one {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n_minus_one {
            return true;
        }
    }
    false
}

/// Primality of an arbitrary-precision integer. See the module docs for the
/// deterministic range.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if DETERMINISTIC_BASES
        .iter()
        .any(|&p| (n % p).is_zero())
    {
        return false;
    }
    DETERMINISTIC_BASES
        .iter()
        .chain(EXTRA_BASES.iter())
        .all(|&b| strong_probable_prime_big(n, b))
}

/// A `p`-adic valuation: an integer, or `+infinity` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Exponent of `p` in a nonzero integer. `p` is assumed prime.
pub(crate) fn ord_p_integer(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let mut count = 0;
    let mut m = n.magnitude().clone();
    loop {
        let (q, r) = m.div_rem(&BigUint::from(p));
        if !r.is_zero() {
            return Some(count);
        }
        m = q;
        count += 1;
    }
}

/// Exponent of `p` in a nonzero machine integer. `p` is assumed prime.
pub(crate) fn ord_p_i128(mut n: i128, p: u64) -> Option<u64> {
    if n == 0 {
        return None;
    }
    let p = p as i128;
    let mut count = 0;
    while n % p == 0 {
        n /= p;
        count += 1;
    }
    Some(count)
}

/// `ord_p(a/b) = ord_p(a) - ord_p(b)`, with `ord_p(0) = +infinity`.
pub fn ord_p(q: &ExactRational, p: u64) -> Result<Valuation> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(ord_p_unchecked(q, p))
}

pub(crate) fn ord_p_unchecked(q: &ExactRational, p: u64) -> Valuation {
    match ord_p_integer(q.numer(), p) {
        None => Valuation::Infinite,
        Some(num) => {
            let den = ord_p_integer(q.denom(), p).expect("denominator is nonzero");
            Valuation::Finite(num as i64 - den as i64)
        }
    }
}

/// All primes `p` with `lo <= p <= hi` and `p = lambda (mod mu)`, ascending.
pub fn primes_in_ap_interval(lambda: i64, mu: u64, lo: i64, hi: i64) -> Result<Vec<u64>> {
    if mu == 0 {
        return Err(Error::InvalidParameter("modulus must be positive".into()));
    }
    if lambda.unsigned_abs().gcd(&mu) != 1 {
        return Err(Error::NotCoprime { lambda, mu });
    }
    let start = lo.max(2);
    if start > hi {
        return Ok(Vec::new());
    }
    let m = mu as i128;
    let residue = (lambda as i128).rem_euclid(m);
    let first = start as i128 + (residue - start as i128).rem_euclid(m);
    let mut out = Vec::new();
    let mut x = first;
    while x <= hi as i128 {
        if is_prime_u64(x as u64) {
            out.push(x as u64);
        }
        x += m;
    }
    Ok(out)
}

fn pollard_brent(n: &BigUint, c: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let step = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let batch = 64u64;
    let mut iterations = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..batch.min(r - k) {
                y = step(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = q * diff % n;
            }
            g = q.gcd(n);
            k += batch;
            iterations += batch;
            if iterations > RHO_BUDGET {
                return None;
            }
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = step(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

fn split_cofactor(n: BigUint, out: &mut BTreeSet<u64>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&n) {
        let p = n.to_u64().ok_or_else(|| Error::PrimeTooLarge(n.to_string()))?;
        out.insert(p);
        return Ok(());
    }
    let divisor = (1..=8)
        .find_map(|c| pollard_brent(&n, c))
        .ok_or_else(|| Error::FactorizationBudget(n.to_string()))?;
    let rest = &n / &divisor;
    split_cofactor(divisor, out)?;
    split_cofactor(rest, out)
}

/// Distinct prime divisors of `n`. Zero and one have none.
///
/// Trial division by primes below 2^16 handles everything that arises from
/// desk-scale inputs; a Pollard-Brent fallback splits whatever cofactor is
/// left, and gives up with an error past a fixed iteration budget.
pub fn prime_divisors(n: &BigUint) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    if n.is_zero() {
        return Ok(out);
    }
    let mut m = n.clone();
    for &p in small_primes() {
        if m.is_one() {
            break;
        }
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut divided = false;
        loop {
            let (q, r) = m.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            m = q;
            divided = true;
        }
        if divided {
            out.insert(p);
        }
    }
    split_cofactor(m, &mut out)?;
    Ok(out)
}

/// Primes at which the Newton polygon of `g` can be non-trivial: the prime
/// divisors of `a_0 * a_n`. Every other prime gives a single slope-0 segment.
pub fn candidate_primes(g: &PrimitiveIntegerPolynomial) -> Result<BTreeSet<u64>> {
    if g.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let mut out = prime_divisors(g.constant_term().magnitude())?;
    out.extend(prime_divisors(g.leading_coefficient().magnitude())?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{primitive_scale, RationalPolynomial};

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    #[test]
    fn is_prime_examples() {
        assert!(is_prime(&BigUint::from(17u32)));
        assert!(!is_prime(&BigUint::from(1u32)));
        assert!(!is_prime(&BigUint::from(0u32)));
        assert!(!is_prime(&BigUint::from(561u32)));
        assert!(!trial_division(561));
    }

    #[test]
    fn is_prime_agrees_with_trial_division() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime_u64(n), trial_division(n), "n = {n}");
        }
        for n in (1u64 << 16) - 200..(1u64 << 16) + 2_000 {
            assert_eq!(is_prime_u64(n), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_rejected() {
        // strong pseudoprimes to several small bases
        for n in [3_215_031_751u64, 2_152_302_898_747, 3_474_749_660_383, 341_550_071_728_321, 3_825_123_056_546_413_051] {
            assert!(!is_prime_u64(n), "{n}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(is_prime_u64(1_000_000_007));
    }

    #[test]
    fn big_primality() {
        let m61 = (BigUint::one() << 61) - 1u32;
        let m89 = (BigUint::one() << 89) - 1u32;
        let m127 = (BigUint::one() << 127) - 1u32;
        assert!(is_prime(&m89));
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m61 * &m89)));
        assert!(!is_prime(&((BigUint::one() << 67) - 1u32)));
    }

    #[test]
    fn ord_p_examples() {
        assert_eq!(ord_p(&q(8, 1), 2).unwrap(), Valuation::Finite(3));
        assert_eq!(ord_p(&q(2, 9), 3).unwrap(), Valuation::Finite(-2));
        assert_eq!(ord_p(&q(0, 1), 5).unwrap(), Valuation::Infinite);
        assert_eq!(ord_p(&q(7, 1), 4), Err(Error::NotPrime(4)));
        assert!(Valuation::Finite(i64::MAX) < Valuation::Infinite);
    }

    #[test]
    fn primes_in_ap_interval_examples() {
        assert_eq!(primes_in_ap_interval(1, 4, 10, 30).unwrap(), vec![13, 17, 29]);
        assert_eq!(primes_in_ap_interval(0, 1, 24, 28).unwrap(), Vec::<u64>::new());
        assert_eq!(primes_in_ap_interval(1, 2, 15, 17).unwrap(), vec![17]);
        assert_eq!(primes_in_ap_interval(-1, 3, 0, 20).unwrap(), vec![2, 5, 11, 17]);
        assert_eq!(
            primes_in_ap_interval(2, 4, 0, 100),
            Err(Error::NotCoprime { lambda: 2, mu: 4 })
        );
        assert!(primes_in_ap_interval(1, 1, 30, 10).unwrap().is_empty());
    }

    #[test]
    fn prime_divisors_with_large_cofactor() {
        let p = BigUint::from(1_000_000_007u64);
        let r = BigUint::from(998_244_353u64);
        let n = &p * &r * 12u32;
        let got = prime_divisors(&n).unwrap();
        assert_eq!(got, BTreeSet::from([2, 3, 998_244_353, 1_000_000_007]));
        let too_big = (BigUint::one() << 89) - 1u32;
        assert!(matches!(prime_divisors(&too_big), Err(Error::PrimeTooLarge(_))));
    }

    #[test]
    fn candidate_primes_examples() {
        let prim = |c: &[i64]| primitive_scale(&RationalPolynomial::from_integers(c)).unwrap().0;
        assert_eq!(candidate_primes(&prim(&[2, -4, 1])).unwrap(), BTreeSet::from([2]));
        assert_eq!(candidate_primes(&prim(&[6, 18, 9, 1])).unwrap(), BTreeSet::from([2, 3]));
        assert!(candidate_primes(&prim(&[1, 1, 1])).unwrap().is_empty());
        assert_eq!(candidate_primes(&prim(&[0, 1])), Err(Error::ZeroConstantTerm));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn ord_p_is_additive(a in -500i64..500, b in 1i64..500, c in -500i64..500, d in 1i64..500, pi in 0usize..10) {
                prop_assume!(a != 0 && c != 0);
                let p = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29][pi];
                let x = q(a, b);
                let y = q(c, d);
                let lhs = ord_p(&(&x * &y), p).unwrap().finite().unwrap();
                let rhs = ord_p(&x, p).unwrap().finite().unwrap() + ord_p(&y, p).unwrap().finite().unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn ap_primes_match_sieve_filter(lambda in -50i64..50, mu in 1u64..30, lo in -20i64..400, len in 0i64..400) {
                prop_assume!(lambda.unsigned_abs().gcd(&mu) == 1);
                let hi = lo + len;
                let expected: Vec<u64> = (lo.max(0)..=hi)
                    .filter(|&x| trial_division(x as u64) && (x - lambda).rem_euclid(mu as i64) == 0)
                    .map(|x| x as u64)
                    .collect();
                prop_assert_eq!(primes_in_ap_interval(lambda, mu, lo, hi).unwrap(), expected);
            }

            #[test]
            fn prime_divisors_match_trial_division(n in 1u64..2_000_000) {
                let mut m = n;
                let mut expected = BTreeSet::new();
                let mut d = 2;
                while d * d <= m {
                    while m % d == 0 {
                        expected.insert(d);
                        m /= d;
                    }
                    d += 1;
                }
                if m > 1 {
                    expected.insert(m);
                }
                prop_assert_eq!(prime_divisors(&BigUint::from(n)).unwrap(), expected);
            }
        }
    }
}
