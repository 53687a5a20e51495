//! Factorization patterns modulo good primes.
//!
//! Only the multiset of irreducible-factor degrees is ever needed, so the
//! distinct-degree split is enough: a degree-`d` block of total degree `m`
//! holds exactly `m / d` factors. No randomized equal-degree splitting is
//! performed and every result is deterministic.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::RationalPolynomial;
use crate::primes::is_prime_u64;

type Coeffs = Vec<u64>;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Dense polynomial over `F_p`, ascending, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    c: Coeffs,
}

impl FpPoly {
    fn new(p: u64, mut c: Coeffs) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p);
                FpPoly::new(self.p, self.c.iter().map(|&a| mul_mod(a, inv, self.p)).collect())
            }
        }
    }

    fn sub(&self, other: &Self) -> Self {
        let len = self.c.len().max(other.c.len());
        let p = self.p;
        FpPoly::new(
            p,
            (0..len)
                .map(|i| {
                    let a = self.c.get(i).copied().unwrap_or(0);
                    let b = other.c.get(i).copied().unwrap_or(0);
                    (a + p - b) % p
                })
                .collect(),
        )
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FpPoly::new(self.p, vec![]);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in other.c.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPoly::new(self.p, acc.into_iter().map(|v| v as u64).collect())
    }

    fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut rem = self.c.clone();
        let dd = divisor.degree();
        if rem.len() < divisor.c.len() {
            return (FpPoly::new(p, vec![]), self.clone());
        }
        let inv = inv_mod(*divisor.c.last().unwrap(), p);
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let factor = mul_mod(rem[k + dd], inv, p);
            quot[k] = factor;
            if factor == 0 {
                continue;
            }
            for (i, &d) in divisor.c.iter().enumerate() {
                rem[k + i] = (rem[k + i] + p - mul_mod(factor, d, p)) % p;
            }
        }
        rem.truncate(dd);
        (FpPoly::new(p, quot), FpPoly::new(p, rem))
    }

    fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic gcd.
    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> Self {
        let p = self.p;
        FpPoly::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &a)| mul_mod(a, j as u64 % p, p))
                .collect(),
        )
    }

    fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = FpPoly::one(self.p).rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }
}

fn reduce_integer(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits")
}

/// Reduces `f` modulo `p`. Fails when `p` divides a coefficient denominator.
pub fn reduce_mod_p(f: &RationalPolynomial, p: u64) -> Result<FpPoly> {
    let coeffs = f
        .coeffs()
        .iter()
        .map(|a| {
            let den = reduce_integer(a.denom(), p);
            if den == 0 {
                return Err(Error::BadPrime { p, reason: "divides a coefficient denominator" });
            }
            Ok(mul_mod(reduce_integer(a.numer(), p), inv_mod(den, p), p))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FpPoly::new(p, coeffs))
}

/// Reduces `f` mod `p`, made monic, after checking that `p` is good.
fn good_reduction(f: &RationalPolynomial, p: u64) -> Result<FpPoly> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n < 1 {
        return Err(Error::DegreeTooSmall { min: 1, got: n });
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let reduced = reduce_mod_p(f, p)?;
    if reduced.degree() != n || reduced.is_zero() {
        return Err(Error::BadPrime { p, reason: "divides the leading coefficient" });
    }
    let monic = reduced.monic();
    if monic.gcd(&monic.derivative()).degree() > 0 {
        return Err(Error::BadPrime { p, reason: "divides the discriminant" });
    }
    Ok(monic)
}

/// True iff `p` divides neither the discriminant, the leading coefficient,
/// nor any coefficient denominator of `f`.
///
/// For `p`-integral `f` whose leading coefficient is a `p`-unit, `p` divides
/// the discriminant exactly when the reduction has a repeated factor, which is
/// what gets tested here.
pub fn is_good_prime(f: &RationalPolynomial, p: u64) -> bool {
    good_reduction(f, p).is_ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Degrees of the irreducible factors of `f` mod a good prime: the cycle type
/// of the Frobenius at that prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleType {
    pub prime: u64,
    /// Ascending.
    pub degrees: Vec<usize>,
}

impl CycleType {
    pub fn n(&self) -> usize {
        self.degrees.iter().sum()
    }

    pub fn parity(&self) -> Parity {
        if (self.n() - self.degrees.len()).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Every degree that a sub-multiset of the parts can sum to.
    pub fn subset_sums(&self) -> BTreeSet<usize> {
        let mut reachable = vec![false; self.n() + 1];
        reachable[0] = true;
        for &d in &self.degrees {
            for s in (d..reachable.len()).rev() {
                reachable[s] |= reachable[s - d];
            }
        }
        reachable.iter().enumerate().filter(|(_, &r)| r).map(|(s, _)| s).collect()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "p={} type=[{}] parity={}", self.prime, parts.join(","), self.parity())
    }
}

/// Distinct-degree factorization of a monic square-free polynomial.
/// Returns `(degree, block)` pairs; each block is the product of all
/// irreducible factors of that degree.
fn distinct_degree_blocks(f: &FpPoly) -> Vec<(usize, FpPoly)> {
    let p = f.p;
    let x = FpPoly::x(p);
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut blocks = Vec::new();
    let mut d = 0;
    while rest.degree() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(p, &rest);
        let block = rest.gcd(&h.sub(&x));
        if block.degree() > 0 {
            rest = rest.div_rem(&block).0;
            h = h.rem(&rest);
            blocks.push((d, block));
        }
    }
    if rest.degree() > 0 {
        blocks.push((rest.degree(), rest));
    }
    blocks
}

/// Factor-degree multiset of `f` modulo the good prime `p`.
pub fn factor_degrees(f: &RationalPolynomial, p: u64) -> Result<CycleType> {
    let monic = good_reduction(f, p)?;
    let blocks = distinct_degree_blocks(&monic);

    let product = blocks
        .iter()
        .fold(FpPoly::one(p), |acc, (_, b)| acc.mul(b));
    if product != monic {
        return Err(Error::Inconsistent(format!("factorization mod {p} does not reconstruct")));
    }

    let mut degrees = Vec::new();
    for (d, block) in &blocks {
        if block.degree() % d != 0 {
            return Err(Error::Inconsistent(format!("degree-{d} block mod {p} has degree {}", block.degree())));
        }
        degrees.extend(std::iter::repeat_n(*d, block.degree() / d));
    }
    degrees.sort_unstable();
    let cycle = CycleType { prime: p, degrees };
    if cycle.n() != monic.degree() {
        return Err(Error::Inconsistent(format!("degrees mod {p} do not sum to the degree")));
    }
    Ok(cycle)
}

/// Possible degrees of rational factors of `f`, given its factorization
/// patterns at `primes`. `{0, n}` means `f` is irreducible over `Q`.
pub fn degree_set_filter(f: &RationalPolynomial, primes: &[u64]) -> Result<BTreeSet<usize>> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    let mut possible: BTreeSet<usize> = (0..=n).collect();
    for &p in primes {
        let sums = factor_degrees(f, p)?.subset_sums();
        possible = possible.intersection(&sums).copied().collect();
    }
    Ok(possible)
}

/// The first `count` good primes of `f`, ascending.
///
/// Gives up early (returning fewer) after 2000 bad primes, which only happens
/// for polynomials with a repeated factor over `Q`.
pub fn good_primes(f: &RationalPolynomial, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut bad = 0;
    let mut candidate = 2u64;
    while out.len() < count && bad < 2000 {
        if is_prime_u64(candidate) {
            if is_good_prime(f, candidate) {
                out.push(candidate);
            } else {
                bad += 1;
            }
        }
        candidate += 1;
    }
    out
}

/// Cycle types at the first `count` good primes.
pub fn frobenius_samples(f: &RationalPolynomial, count: usize) -> Result<Vec<CycleType>> {
    good_primes(f, count).into_iter().map(|p| factor_degrees(f, p)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ParityEvidence {
    /// Some Frobenius is an odd permutation: the group is not inside `A_n`.
    #[serde(rename = "contains-odd-permutation")]
    ContainsOddPermutation,
    /// Every sample was even. Evidence only, never a proof.
    #[serde(rename = "all-even-so-far")]
    AllEvenSoFar,
}

impl fmt::Display for ParityEvidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityEvidence::ContainsOddPermutation => "contains-odd-permutation",
            ParityEvidence::AllEvenSoFar => "all-even-so-far",
        })
    }
}

pub fn parity_evidence(samples: &[CycleType]) -> Result<ParityEvidence> {
    if samples.is_empty() {
        return Err(Error::NoSamples);
    }
    Ok(if samples.iter().any(|c| c.parity() == Parity::Odd) {
        ParityEvidence::ContainsOddPermutation
    } else {
        ParityEvidence::AllEvenSoFar
    })
}
