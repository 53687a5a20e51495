//! Certificates that a Galois group is large.
//!
//! For irreducible `f` of degree `n` and any translate `g(x) = f(x - mu)`, the
//! Newton index of `g` divides the order of the Galois group. If that index
//! has a prime divisor `q` with `n/2 < q < n - 2`, the group contains a
//! `q`-cycle and therefore, by Jordan's theorem, contains `A_n`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactpoly::{render_rational, RationalPolynomial};
use crate::modp::{degree_set_filter, good_primes};
use crate::newton::{newton_index, newton_polygon, serialize_slope, single_slope_witness, NewtonIndexReport};
use crate::primes::{is_prime_u64, ord_p_integer, prime_divisors, Valuation};
use crate::ExactRational;

/// Number of good primes the degree-set filter looks at.
pub const IRREDUCIBILITY_FILTER_PRIMES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Verdict {
    #[serde(rename = "inconclusive")]
    Inconclusive,
    #[serde(rename = "index_divides_order_only")]
    IndexDividesOrderOnly,
    #[serde(rename = "contains_An")]
    ContainsAn,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Inconclusive => "inconclusive",
            Verdict::IndexDividesOrderOnly => "index_divides_order_only",
            Verdict::ContainsAn => "contains_An",
        })
    }
}

/// What the caller vouches for about irreducibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    /// The caller asserts `f` is irreducible (for instance by citing a theorem).
    Asserted,
    /// Nothing is known; only a proof found here counts.
    Unknown,
}

/// How irreducibility was settled for a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IrreducibilityBasis {
    /// One-segment Newton polygon whose slope denominator is the degree.
    SingleSlope,
    /// Factorization patterns mod good primes leave only `{0, n}`.
    DegreeSetFilter,
    /// Asserted by the caller, not verified.
    Assumed,
    /// Neither proved nor asserted. Blocks every theorem-backed verdict.
    Unverified,
}

impl IrreducibilityBasis {
    pub fn is_established(self) -> bool {
        self != IrreducibilityBasis::Unverified
    }
}

impl fmt::Display for IrreducibilityBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IrreducibilityBasis::SingleSlope => "single_slope",
            IrreducibilityBasis::DegreeSetFilter => "degree_set_filter",
            IrreducibilityBasis::Assumed => "assumed",
            IrreducibilityBasis::Unverified => "unverified",
        })
    }
}

fn serialize_rational<S: Serializer>(q: &ExactRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&render_rational(q))
}

fn serialize_opt_slope<S: Serializer>(q: &Option<Rational64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(slope) => serialize_slope(slope, s),
        None => s.serialize_none(),
    }
}

fn serialize_biguint<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisCertificate {
    pub verdict: Verdict,
    pub n: usize,
    /// The `mu` of `g(x) = f(x - mu)` that produced the verdict.
    #[serde(serialize_with = "serialize_rational")]
    pub shift: ExactRational,
    /// Prime whose Newton polygon carries the witness slope.
    pub valuation_prime: Option<u64>,
    #[serde(serialize_with = "serialize_opt_slope")]
    pub slope: Option<Rational64>,
    /// Prime in `(n/2, n - 2)` dividing the slope denominator.
    pub window_prime: Option<u64>,
    #[serde(serialize_with = "serialize_biguint")]
    pub newton_index: BigUint,
    pub irreducibility_basis: IrreducibilityBasis,
}

impl fmt::Display for GaloisCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "none".into());
        write!(
            f,
            "verdict={} n={} shift={} valuation_prime={} slope={} window_prime={} newton_index={} irreducibility_basis={}",
            self.verdict,
            self.n,
            render_rational(&self.shift),
            opt(self.valuation_prime.map(|p| p.to_string())),
            opt(self.slope.map(|s| crate::newton::render_slope(&s))),
            opt(self.window_prime.map(|q| q.to_string())),
            self.newton_index,
            self.irreducibility_basis,
        )
    }
}

/// `n/2 < q < n - 2`, strict on both sides.
pub fn in_jordan_window(q: u64, n: usize) -> bool {
    let (q, n) = (q as u128, n as u128);
    2 * q > n && q + 2 < n
}

/// Tries to prove irreducibility, falling back to the caller's declaration.
pub fn establish_irreducibility(f: &RationalPolynomial, declared: Irreducibility) -> IrreducibilityBasis {
    let n = f.degree().unwrap_or(0);
    if n >= 1 && !f.constant_term().is_zero() {
        if let Ok(Some(_)) = single_slope_witness(f) {
            return IrreducibilityBasis::SingleSlope;
        }
    }
    if n >= 1 {
        let primes = good_primes(f, IRREDUCIBILITY_FILTER_PRIMES);
        if !primes.is_empty() {
            if let Ok(set) = degree_set_filter(f, &primes) {
                if set.len() == 2 && set.contains(&0) && set.contains(&n) {
                    return IrreducibilityBasis::DegreeSetFilter;
                }
            }
        }
    }
    match declared {
        Irreducibility::Asserted => IrreducibilityBasis::Assumed,
        Irreducibility::Unknown => IrreducibilityBasis::Unverified,
    }
}

struct Witness {
    prime: u64,
    slope: Rational64,
    window_prime: u64,
}

fn find_window_witness(report: &NewtonIndexReport, n: usize) -> Result<Option<Witness>> {
    for (&prime, slopes) in &report.witnesses {
        for &slope in slopes {
            let denominator = BigUint::from(*slope.denom() as u64);
            if let Some(&q) = prime_divisors(&denominator)?.iter().find(|&&q| in_jordan_window(q, n)) {
                return Ok(Some(Witness { prime, slope, window_prime: q }));
            }
        }
    }
    Ok(None)
}

/// Runs the Newton-index criterion over the translates `f(x - mu)`, `mu` in
/// `shifts`, in order, and returns the first `contains_An` certificate.
///
/// Without a `contains_An` hit, returns `index_divides_order_only` for the
/// first shift with index > 1, else `inconclusive`. Shifts whose translate
/// vanishes at 0 are skipped; if every shift is skipped the error is returned.
/// No theorem-backed verdict is issued when irreducibility is neither proved
/// nor asserted.
pub fn certify_large_galois(
    f: &RationalPolynomial,
    shifts: &[ExactRational],
    irreducibility: Irreducibility,
) -> Result<GaloisCertificate> {
    let basis = establish_irreducibility(f, irreducibility);
    certify_with_basis(f, shifts, basis)
}

pub(crate) fn certify_with_basis(
    f: &RationalPolynomial,
    shifts: &[ExactRational],
    basis: IrreducibilityBasis,
) -> Result<GaloisCertificate> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: n });
    }
    if shifts.is_empty() {
        return Err(Error::EmptyShifts);
    }
    let mut fallback: Option<(ExactRational, BigUint)> = None;
    let mut last_error = None;
    for mu in shifts {
        let g = f.shift(mu);
        if g.constant_term().is_zero() {
            last_error = Some(Error::ZeroConstantTerm);
            continue;
        }
        let report = newton_index(&g)?;
        if basis.is_established() {
            if let Some(w) = find_window_witness(&report, n)? {
                return Ok(GaloisCertificate {
                    verdict: Verdict::ContainsAn,
                    n,
                    shift: mu.clone(),
                    valuation_prime: Some(w.prime),
                    slope: Some(w.slope),
                    window_prime: Some(w.window_prime),
                    newton_index: report.index,
                    irreducibility_basis: basis,
                });
            }
        }
        let better = match &fallback {
            None => true,
            Some((_, index)) => index.is_one() && !report.index.is_one(),
        };
        if better {
            fallback = Some((mu.clone(), report.index));
        }
    }
    let Some((shift, index)) = fallback else {
        return Err(last_error.unwrap_or(Error::EmptyShifts));
    };
    let verdict = if basis.is_established() && !index.is_one() {
        Verdict::IndexDividesOrderOnly
    } else {
        Verdict::Inconclusive
    };
    Ok(GaloisCertificate {
        verdict,
        n,
        shift,
        valuation_prime: None,
        slope: None,
        window_prime: None,
        newton_index: index,
        irreducibility_basis: basis,
    })
}

/// `ord_p(c_j)` for each `c_j`.
pub fn coefficient_valuations(c: &[BigInt], p: u64) -> Vec<Valuation> {
    c.iter()
        .map(|cj| match ord_p_integer(cj, p) {
            Some(v) => Valuation::Finite(v as i64),
            None => Valuation::Infinite,
        })
        .collect()
}

/// The four coefficient conditions for `f = sum binom(n, j) c_j x^j` at `p`:
///
/// 1. `n/2 < p < n - 2`
/// 2. `ord_p(c_j) >= 0` for all `j`
/// 3. `ord_p(c_j) = 1` for `1 <= j <= n - p`
/// 4. `ord_p(c_p) = 0`
///
/// When they hold, `(0, 1)` and `(p, 0)` are the first two corners of the
/// polygon of `f` at `p`, so `-1/p` is a slope.
///
/// `valuations[j]` is `ord_p(c_j)` for `j = 0..=n`.
pub fn lemma_key_check(n: usize, valuations: &[Valuation], p: u64) -> Result<bool> {
    if p <= 2 || p as u128 >= n as u128 {
        return Err(Error::InvalidParameter(format!("need 2 < p < n, got p = {p}, n = {n}")));
    }
    if valuations.len() != n + 1 {
        return Err(Error::InvalidParameter(format!(
            "expected {} valuations, got {}",
            n + 1,
            valuations.len()
        )));
    }
    let p_idx = p as usize;
    let window = in_jordan_window(p, n);
    let integral = valuations.iter().all(|&v| v >= Valuation::Finite(0));
    let exactly_one = (1..=n - p_idx).all(|j| valuations[j] == Valuation::Finite(1));
    let unit_at_p = valuations[p_idx] == Valuation::Finite(0);
    Ok(window && integral && exactly_one && unit_at_p)
}

/// Builds a `contains_An` certificate for `f = sum binom(n, j) c_j x^j` at a
/// prime `p` that passes [`lemma_key_check`].
///
/// The Newton polygon at `p` is recomputed and must begin with the segment
/// `(0, 1) -> (p, 0)`; anything else is reported as an inconsistency.
pub fn certificate_from_lemma(
    f: &RationalPolynomial,
    valuations: &[Valuation],
    p: u64,
    basis: IrreducibilityBasis,
) -> Result<GaloisCertificate> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if !lemma_key_check(n, valuations, p)? {
        return Err(Error::InvalidParameter(format!("coefficient conditions fail at p = {p}")));
    }
    let polygon = newton_polygon(f, p)?;
    let first = polygon
        .segments
        .first()
        .ok_or_else(|| Error::Inconsistent("polygon has no segments".into()))?;
    if first.from != (0, 1) || first.to != (p as usize, 0) {
        return Err(Error::Inconsistent(format!(
            "first segment at {p} runs {:?} -> {:?}",
            first.from, first.to
        )));
    }
    let report = newton_index(f)?;
    let verdict = if basis.is_established() {
        Verdict::ContainsAn
    } else {
        Verdict::Inconclusive
    };
    let witness = verdict == Verdict::ContainsAn;
    Ok(GaloisCertificate {
        verdict,
        n,
        shift: ExactRational::zero(),
        valuation_prime: witness.then_some(p),
        slope: witness.then_some(first.slope),
        window_prime: witness.then_some(p),
        newton_index: report.index,
        irreducibility_basis: basis,
    })
}

/// Re-derives a `contains_An` witness chain from scratch.
///
/// Returns `Ok(true)` when the recorded slope appears on the polygon of
/// `f(x - shift)` at the recorded prime, the window prime divides its
/// denominator and the index, and the window prime lies in `(n/2, n - 2)`.
pub fn replay_certificate(f: &RationalPolynomial, cert: &GaloisCertificate) -> Result<bool> {
    if cert.verdict != Verdict::ContainsAn {
        return Ok(false);
    }
    let (Some(p), Some(slope), Some(q)) = (cert.valuation_prime, cert.slope, cert.window_prime) else {
        return Ok(false);
    };
    if f.degree() != Some(cert.n) || !cert.irreducibility_basis.is_established() {
        return Ok(false);
    }
    let polygon = newton_polygon(&f.shift(&cert.shift), p)?;
    let on_polygon = polygon.slopes().any(|s| s == slope);
    let divides_slope = (*slope.denom() as u64).is_multiple_of(q);
    let divides_index = (&cert.newton_index % BigUint::from(q)).is_zero();
    Ok(on_polygon && divides_slope && divides_index && is_prime_u64(q) && in_jordan_window(q, cert.n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_integers(c)
    }

    fn factorial(n: u64) -> BigInt {
        (1..=n).map(BigInt::from).product()
    }

    fn binom(n: u64, k: u64) -> BigInt {
        factorial(n) / (factorial(k) * factorial(n - k))
    }

    /// c_j = 9!/j!, f = sum binom(9, j) c_j x^j.
    fn nine_zero() -> (RationalPolynomial, Vec<BigInt>) {
        let c: Vec<BigInt> = (0..=9).map(|j| factorial(9) / factorial(j)).collect();
        let coeffs: Vec<BigInt> = (0..=9u64).map(|j| binom(9, j) * &c[j as usize]).collect();
        (RationalPolynomial::from_coeffs(coeffs.into_iter().map(ExactRational::from_integer).collect()), c)
    }

    #[test]
    fn jordan_window_is_open() {
        assert!(in_jordan_window(5, 9));
        assert!(!in_jordan_window(7, 9));
        assert!(!in_jordan_window(4, 8));
        assert!(in_jordan_window(5, 8));
        assert!((0..20).all(|q| !in_jordan_window(q, 3)));
    }

    #[test]
    fn certify_glp_nine() {
        let (f, _) = nine_zero();
        let cert = certify_large_galois(&f, &[ExactRational::zero()], Irreducibility::Asserted).unwrap();
        assert_eq!(cert.verdict, Verdict::ContainsAn);
        assert_eq!(cert.valuation_prime, Some(5));
        assert_eq!(cert.window_prime, Some(5));
        assert_eq!(cert.slope, Some(Rational64::new(-1, 5)));
        assert!(replay_certificate(&f, &cert).unwrap());
    }

    #[test]
    fn certify_small_cubic_only_divides() {
        let f = poly(&[6, 18, 9, 1]);
        let cert = certify_large_galois(&f, &[ExactRational::zero()], Irreducibility::Unknown).unwrap();
        assert_eq!(cert.verdict, Verdict::IndexDividesOrderOnly);
        assert_eq!(cert.newton_index, BigUint::from(6u32));
        assert_eq!(cert.irreducibility_basis, IrreducibilityBasis::SingleSlope);
        assert!(!replay_certificate(&f, &cert).unwrap());
    }

    #[test]
    fn certify_reducible_is_inconclusive() {
        let f = poly(&[-1, 0, 1]);
        let cert = certify_large_galois(&f, &[ExactRational::zero()], Irreducibility::Asserted).unwrap();
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        assert_eq!(cert.newton_index, BigUint::one());
    }

    #[test]
    fn unverified_irreducibility_blocks_claims() {
        // x^2 - 4 is reducible; at 2 it has integral slope anyway, but the basis
        // must come out unverified.
        let f = poly(&[-4, 0, 1]);
        let cert = certify_large_galois(&f, &[ExactRational::zero()], Irreducibility::Unknown).unwrap();
        assert_eq!(cert.irreducibility_basis, IrreducibilityBasis::Unverified);
        assert_eq!(cert.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn certify_errors() {
        let f = poly(&[6, 18, 9, 1]);
        assert_eq!(certify_large_galois(&f, &[], Irreducibility::Asserted), Err(Error::EmptyShifts));
        assert_eq!(
            certify_large_galois(&poly(&[1, 1]), &[ExactRational::zero()], Irreducibility::Asserted),
            Err(Error::DegreeTooSmall { min: 2, got: 1 })
        );
        // x^2 + x vanishes at 0; shift 1 gives x^2 - x, also vanishing at 0
        let g = poly(&[0, 1, 1]);
        assert_eq!(
            certify_large_galois(&g, &[ExactRational::zero(), ExactRational::one()], Irreducibility::Asserted),
            Err(Error::ZeroConstantTerm)
        );
    }

    #[test]
    fn lemma_examples() {
        let (_, c) = nine_zero();
        assert!(lemma_key_check(9, &coefficient_valuations(&c, 5), 5).unwrap());
        assert!(!lemma_key_check(9, &coefficient_valuations(&c, 7), 7).unwrap());

        let c20: Vec<BigInt> = (0..=20u64)
            .map(|j| (j + 1..=20).map(|k| BigInt::from(2 * k + 1)).product())
            .collect();
        let vals = coefficient_valuations(&c20, 17);
        assert!((0..=7).all(|j| vals[j] == Valuation::Finite(1)));
        assert!((8..=20).all(|j| vals[j] == Valuation::Finite(0)));
        assert!(lemma_key_check(20, &vals, 17).unwrap());
    }

    #[test]
    fn lemma_rejects_out_of_range_primes() {
        let (_, c) = nine_zero();
        assert!(lemma_key_check(9, &coefficient_valuations(&c, 2), 2).is_err());
        assert!(lemma_key_check(9, &coefficient_valuations(&c, 11), 11).is_err());
        assert!(lemma_key_check(9, &coefficient_valuations(&c, 5)[..5], 5).is_err());
    }

    #[test]
    fn lemma_certificate_matches_polygon() {
        let (f, c) = nine_zero();
        let cert = certificate_from_lemma(&f, &coefficient_valuations(&c, 5), 5, IrreducibilityBasis::Assumed).unwrap();
        assert_eq!(cert.verdict, Verdict::ContainsAn);
        assert_eq!(cert.slope, Some(Rational64::new(-1, 5)));
        assert!(replay_certificate(&f, &cert).unwrap());
    }

    #[test]
    fn shifts_are_scanned_in_order_and_monotone() {
        let (f, _) = nine_zero();
        let shifts: Vec<ExactRational> = [3, 0, -1].iter().map(|&s| ExactRational::from_integer(s.into())).collect();
        let single = certify_large_galois(&f, &shifts[..1], Irreducibility::Asserted).unwrap();
        let all = certify_large_galois(&f, &shifts, Irreducibility::Asserted).unwrap();
        assert!(all.verdict >= single.verdict);
        assert_eq!(all.verdict, Verdict::ContainsAn);
        if single.verdict != Verdict::ContainsAn {
            assert_eq!(all.shift, ExactRational::zero());
        }
    }

    #[test]
    fn certificate_json_fields() {
        let (f, _) = nine_zero();
        let cert = certify_large_galois(&f, &[ExactRational::zero()], Irreducibility::Asserted).unwrap();
        let json = serde_json::to_value(&cert).unwrap();
        let obj = json.as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        let mut expected = vec![
            "verdict", "n", "shift", "valuation_prime", "slope", "window_prime", "newton_index", "irreducibility_basis",
        ];
        expected.sort();
        let mut keys_sorted = keys.clone();
        keys_sorted.sort();
        assert_eq!(keys_sorted, expected);
        assert_eq!(json["verdict"], "contains_An");
        assert_eq!(json["slope"], "-1/5");
        assert_eq!(json["shift"], "0");
    }
}
