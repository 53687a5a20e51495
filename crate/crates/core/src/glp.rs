//! Generalized Laguerre polynomials and the `A_n` / `S_n` classifier.
//!
//! `L_n^(a)(x) = sum_j binom(n + a, n - j) (-x)^j / j!`. For `a = lambda/mu`
//! in lowest terms the classifier works with the monic integral form
//!
//! ```text
//! f(x) = mu^n n! L_n^(a)(-x/mu) = sum_j binom(n, j) c_j x^j,
//! c_j  = prod_{k = j+1}^{n} (k mu + lambda),
//! ```
//!
//! looks for a prime `p = mu l + lambda` at which the coefficient conditions
//! of [`lemma_key_check`] hold, and combines the resulting `contains A_n`
//! certificate with the squareness of the discriminant
//! `prod_{j=2}^{n} j^j (a + j)^(j-1)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::certify::{
    certificate_from_lemma, certify_with_basis, establish_irreducibility, in_jordan_window, lemma_key_check,
    GaloisCertificate, Irreducibility, IrreducibilityBasis, Verdict,
};
use crate::error::{Error, Result};
use crate::exactpoly::{render_rational, RationalPolynomial};
use crate::modp::{frobenius_samples, parity_evidence, CycleType, ParityEvidence};
use crate::primes::{ord_p_i128, primes_in_ap_interval, Valuation};
use crate::ExactRational;

/// Degree `n` and `alpha = lambda / mu` in lowest terms, `mu >= 1`, `alpha`
/// not a negative integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GlpParams {
    n: usize,
    lambda: i64,
    mu: u64,
}

impl GlpParams {
    pub fn new(n: usize, lambda: i64, mu: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("degree must be at least 1".into()));
        }
        if mu == 0 {
            return Err(Error::InvalidParameter("mu must be positive".into()));
        }
        if lambda.unsigned_abs().gcd(&mu) != 1 {
            return Err(Error::NotCoprime { lambda, mu });
        }
        if mu == 1 && lambda < 0 {
            return Err(Error::NegativeIntegerAlpha(lambda));
        }
        Ok(GlpParams { n, lambda, mu })
    }

    pub fn from_alpha(n: usize, alpha: &ExactRational) -> Result<Self> {
        let too_big = || Error::InvalidParameter(format!("alpha = {} is out of range", render_rational(alpha)));
        let lambda = i64::try_from(alpha.numer()).map_err(|_| too_big())?;
        let mu = u64::try_from(alpha.denom()).map_err(|_| too_big())?;
        Self::new(n, lambda, mu)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> i64 {
        self.lambda
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    pub fn alpha(&self) -> ExactRational {
        ExactRational::new(self.lambda.into(), self.mu.into())
    }

    /// `k mu + lambda`.
    fn factor(&self, k: usize) -> i128 {
        k as i128 * self.mu as i128 + self.lambda as i128
    }
}

impl fmt::Display for GlpParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} alpha={}", self.n, render_rational(&self.alpha()))
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn binomial(n: usize, k: usize) -> BigInt {
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `L_n^(alpha)(x)` with exact rational coefficients.
///
/// `binom(n + alpha, n - j)` is expanded as the falling product
/// `(alpha + j + 1) ... (alpha + n) / (n - j)!`, so rational `alpha` works.
pub fn glp(params: GlpParams) -> RationalPolynomial {
    let n = params.n;
    let alpha = params.alpha();
    let mut coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let rising: ExactRational = (j + 1..=n)
            .map(|i| &alpha + ExactRational::from_integer(i.into()))
            .fold(ExactRational::one(), |acc, x| acc * x);
        let denom = factorial(n - j) * factorial(j);
        let mut c = rising / ExactRational::from_integer(denom);
        if j % 2 == 1 {
            c = -c;
        }
        coeffs.push(c);
    }
    RationalPolynomial::from_coeffs(coeffs)
}

/// The monic form `(-1)^n n! L_n^(alpha)(x)` whose discriminant is the Schur
/// product.
pub fn glp_monic(params: GlpParams) -> RationalPolynomial {
    let mut scale = ExactRational::from_integer(factorial(params.n));
    if params.n % 2 == 1 {
        scale = -scale;
    }
    glp(params).scale(&scale)
}

/// `c_j = prod_{k=j+1}^{n} (k mu + lambda)` for `j = 0..=n`.
pub fn glp_c_values(params: GlpParams) -> Vec<BigInt> {
    let n = params.n;
    let mut c = vec![BigInt::one(); n + 1];
    for j in (0..n).rev() {
        c[j] = &c[j + 1] * BigInt::from(params.factor(j + 1));
    }
    c
}

/// `ord_p(c_j)` for `j = 0..=n`, computed factor by factor.
pub fn glp_c_valuations(params: GlpParams, p: u64) -> Vec<Valuation> {
    let n = params.n;
    let mut out = vec![Valuation::Finite(0); n + 1];
    for j in (0..n).rev() {
        out[j] = match (out[j + 1], ord_p_i128(params.factor(j + 1), p)) {
            (Valuation::Finite(acc), Some(v)) => Valuation::Finite(acc + v as i64),
            _ => Valuation::Infinite,
        };
    }
    out
}

/// `mu^n n! L_n^(lambda/mu)(-x/mu) = sum_j binom(n, j) c_j x^j`: monic with
/// integer coefficients.
pub fn glp_normalized(params: GlpParams) -> RationalPolynomial {
    let c = glp_c_values(params);
    RationalPolynomial::from_coeffs(
        c.into_iter()
            .enumerate()
            .map(|(j, cj)| ExactRational::from_integer(binomial(params.n, j) * cj))
            .collect(),
    )
}

/// `prod_{j=2}^{n} j^j (alpha + j)^(j-1)`; 1 for `n = 1`.
pub fn schur_discriminant(params: GlpParams) -> ExactRational {
    let alpha = params.alpha();
    (2..=params.n).fold(ExactRational::one(), |acc, j| {
        let jj = ExactRational::from_integer(BigInt::from(j).pow(j as u32));
        let shifted = &alpha + ExactRational::from_integer(j.into());
        acc * jj * num_traits::pow(shifted, j - 1)
    })
}

fn is_integer_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let root = n.sqrt();
    &root * &root == *n
}

/// True iff `q >= 0` and both numerator and denominator are perfect squares.
pub fn is_rational_square(q: &ExactRational) -> bool {
    is_integer_square(q.numer()) && is_integer_square(q.denom())
}

/// `max(48 - alpha, 8 + 5 alpha / 3)` rounded up: from this degree on, the
/// window `((n + alpha)/2, n - 2)` is known to contain a prime for integer
/// `alpha >= 0`.
pub fn integer_alpha_window_bound(alpha: u64) -> usize {
    let a = alpha as i64;
    let left = 48 - a;
    let right = Integer::div_ceil(&(24 + 5 * a), &3);
    left.max(right).max(1) as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CriterionPrime {
    pub p: u64,
    /// `p = mu * ell + lambda`.
    pub ell: i64,
}

/// Inclusive search range `[ceil((n mu + mu + lambda)/(mu + 1)), n - 3]`.
///
/// For `mu = 1` this is the same set of integers as the open window
/// `((n + alpha)/2, n - 2)`.
pub fn criterion_prime_range(params: GlpParams) -> (i64, i64) {
    let mu = params.mu as i128;
    let num = params.n as i128 * mu + mu + params.lambda as i128;
    let lo = Integer::div_ceil(&num, &(mu + 1));
    (lo as i64, params.n as i64 - 3)
}

/// Largest prime `p = lambda (mod mu)` in [`criterion_prime_range`] that
/// passes [`lemma_key_check`] on the `c_j`, if any.
pub fn find_criterion_prime(params: GlpParams) -> Option<CriterionPrime> {
    let (lo, hi) = criterion_prime_range(params);
    let candidates = primes_in_ap_interval(params.lambda, params.mu, lo, hi).ok()?;
    candidates.into_iter().rev().find_map(|p| {
        if p <= 2 || !in_jordan_window(p, params.n) {
            return None;
        }
        let vals = glp_c_valuations(params, p);
        match lemma_key_check(params.n, &vals, p) {
            Ok(true) => Some(CriterionPrime { p, ell: (p as i64 - params.lambda) / params.mu as i64 }),
            _ => None,
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    An,
    Sn,
    Inconclusive,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::An => "A_n",
            Group::Sn => "S_n",
            Group::Inconclusive => "inconclusive",
        })
    }
}

impl Serialize for Group {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub irreducibility: Irreducibility,
    /// Good primes to sample for Frobenius cycle types; 0 disables sampling.
    pub frobenius_samples: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { irreducibility: Irreducibility::Asserted, frobenius_samples: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub params: GlpParams,
    pub group: Group,
    pub discriminant: ExactRational,
    pub discriminant_is_square: bool,
    pub certificate: GaloisCertificate,
    pub criterion_prime: Option<u64>,
    pub ell: Option<i64>,
    pub frobenius: Vec<CycleType>,
    pub parity: Option<ParityEvidence>,
}

impl Classification {
    pub fn irreducibility_basis(&self) -> IrreducibilityBasis {
        self.certificate.irreducibility_basis
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Classification", 9)?;
        st.serialize_field("n", &self.params.n)?;
        st.serialize_field("alpha", &render_rational(&self.params.alpha()))?;
        st.serialize_field("group", &self.group)?;
        st.serialize_field("disc_is_square", &self.discriminant_is_square)?;
        st.serialize_field("criterion_prime", &self.criterion_prime)?;
        st.serialize_field("ell", &self.ell)?;
        st.serialize_field("certificate", &self.certificate)?;
        st.serialize_field("irreducibility_basis", &self.certificate.irreducibility_basis)?;
        st.serialize_field("frobenius_parity", &self.parity)?;
        st.end()
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "none".into());
        writeln!(
            f,
            "n={} alpha={} group={} disc_is_square={} criterion_prime={} ell={} irreducibility_basis={} frobenius_parity={}",
            self.params.n,
            render_rational(&self.params.alpha()),
            self.group,
            self.discriminant_is_square,
            opt(self.criterion_prime.map(|p| p.to_string())),
            opt(self.ell.map(|l| l.to_string())),
            self.certificate.irreducibility_basis,
            opt(self.parity.map(|p| p.to_string())),
        )?;
        write!(f, "certificate: {}", self.certificate)
    }
}

/// Decides `A_n` vs `S_n` for `L_n^(alpha)` when a certificate is available.
///
/// A criterion prime gives the certificate directly; otherwise the plain
/// Newton-index criterion at shift 0 is tried. Without a `contains_An`
/// certificate the answer is `inconclusive`, carrying the Newton index and
/// any Frobenius parity evidence that was gathered.
pub fn classify(params: GlpParams, options: ClassifyOptions) -> Result<Classification> {
    let f = glp_normalized(params);
    let basis = establish_irreducibility(&f, options.irreducibility);
    let criterion = find_criterion_prime(params);
    let certificate = match criterion {
        Some(cp) => certificate_from_lemma(&f, &glp_c_valuations(params, cp.p), cp.p, basis)?,
        None if params.n >= 2 => certify_with_basis(&f, &[ExactRational::zero()], basis)?,
        None => GaloisCertificate {
            verdict: Verdict::Inconclusive,
            n: params.n,
            shift: ExactRational::zero(),
            valuation_prime: None,
            slope: None,
            window_prime: None,
            newton_index: crate::newton::newton_index(&f)?.index,
            irreducibility_basis: basis,
        },
    };
    let discriminant = schur_discriminant(params);
    let discriminant_is_square = is_rational_square(&discriminant);
    let group = match (certificate.verdict, discriminant_is_square) {
        (Verdict::ContainsAn, true) => Group::An,
        (Verdict::ContainsAn, false) => Group::Sn,
        _ => Group::Inconclusive,
    };
    let frobenius = if options.frobenius_samples > 0 {
        frobenius_samples(&f, options.frobenius_samples)?
    } else {
        Vec::new()
    };
    let parity = if frobenius.is_empty() { None } else { Some(parity_evidence(&frobenius)?) };
    if group == Group::An && parity == Some(ParityEvidence::ContainsOddPermutation) {
        return Err(Error::Inconsistent(format!("{params}: square discriminant but an odd Frobenius")));
    }
    Ok(Classification {
        params,
        group,
        discriminant,
        discriminant_is_square,
        certificate,
        criterion_prime: criterion.map(|c| c.p),
        ell: criterion.map(|c| c.ell),
        frobenius,
        parity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::discriminant;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    fn params(n: usize, lambda: i64, mu: u64) -> GlpParams {
        GlpParams::new(n, lambda, mu).unwrap()
    }

    #[test]
    fn params_validation() {
        assert_eq!(GlpParams::new(5, -3, 1), Err(Error::NegativeIntegerAlpha(-3)));
        assert_eq!(GlpParams::new(5, 2, 4), Err(Error::NotCoprime { lambda: 2, mu: 4 }));
        assert!(GlpParams::new(0, 1, 1).is_err());
        assert!(GlpParams::new(5, -3, 2).is_ok());
        let p = GlpParams::from_alpha(4, &q(-6, 4)).unwrap();
        assert_eq!((p.lambda(), p.mu()), (-3, 2));
        assert!(GlpParams::from_alpha(4, &q(-2, 1)).is_err());
    }

    #[test]
    fn glp_examples() {
        assert_eq!(glp(params(2, 0, 1)).coeffs(), &[q(1, 1), q(-2, 1), q(1, 2)]);
        assert_eq!(glp(params(1, 3, 1)).coeffs(), &[q(4, 1), q(-1, 1)]);
        assert_eq!(glp(params(3, 0, 1)).coeffs(), &[q(1, 1), q(-3, 1), q(3, 2), q(-1, 6)]);
    }

    #[test]
    fn normalized_examples() {
        assert_eq!(glp_normalized(params(2, 0, 1)), RationalPolynomial::from_integers(&[2, 4, 1]));
        assert_eq!(glp_c_values(params(2, 0, 1)), [2, 2, 1].map(BigInt::from).to_vec());
        assert_eq!(glp_normalized(params(3, 0, 1)), RationalPolynomial::from_integers(&[6, 18, 9, 1]));
        assert_eq!(glp_c_values(params(3, 0, 1)), [6, 6, 3, 1].map(BigInt::from).to_vec());
        assert_eq!(glp_c_values(params(2, 1, 2)), [15, 5, 1].map(BigInt::from).to_vec());
        assert_eq!(glp_normalized(params(2, 1, 2)), RationalPolynomial::from_integers(&[15, 10, 1]));
    }

    #[test]
    fn c_valuations_match_direct() {
        let pr = params(20, 1, 2);
        let direct = crate::certify::coefficient_valuations(&glp_c_values(pr), 17);
        assert_eq!(glp_c_valuations(pr, 17), direct);
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur_discriminant(params(2, 0, 1)), q(8, 1));
        assert_eq!(schur_discriminant(params(3, 1, 1)), q(5184, 1));
        assert_eq!(schur_discriminant(params(3, 0, 1)), q(1944, 1));
        assert_eq!(schur_discriminant(params(1, 7, 1)), q(1, 1));
        assert_eq!(
            schur_discriminant(params(3, 0, 1)),
            discriminant(&RationalPolynomial::from_integers(&[6, 18, 9, 1])).unwrap()
        );
    }

    #[test]
    fn schur_vanishes_on_excluded_alphas() {
        // Params reject these alphas, so evaluate the product directly.
        for n in 2..=8usize {
            for a in -(n as i64)..=-2 {
                let product = (2..=n).fold(ExactRational::one(), |acc, j| {
                    acc * ExactRational::from_integer(BigInt::from(j).pow(j as u32))
                        * num_traits::pow(q(a + j as i64, 1), j - 1)
                });
                assert!(product.is_zero(), "n = {n}, alpha = {a}");
            }
        }
    }

    #[test]
    fn square_examples() {
        assert!(is_rational_square(&q(5184, 1)));
        assert!(!is_rational_square(&q(8, 1)));
        assert!(is_rational_square(&q(0, 1)));
        assert!(is_rational_square(&q(4, 9)));
        assert!(!is_rational_square(&q(-4, 9)));
        assert!(!is_rational_square(&q(4, 3)));
    }

    #[test]
    fn criterion_prime_examples() {
        assert_eq!(find_criterion_prime(params(9, 0, 1)), Some(CriterionPrime { p: 5, ell: 5 }));
        assert_eq!(find_criterion_prime(params(20, 1, 2)), Some(CriterionPrime { p: 17, ell: 8 }));
        assert_eq!(find_criterion_prime(params(7, 0, 1)), None);
        assert_eq!(criterion_prime_range(params(20, 1, 2)), (15, 17));
    }

    #[test]
    fn window_bound_values() {
        assert_eq!(integer_alpha_window_bound(0), 48);
        assert_eq!(integer_alpha_window_bound(1), 47);
        assert_eq!(integer_alpha_window_bound(5), 43);
        assert_eq!(integer_alpha_window_bound(30), 58);
    }

    #[test]
    fn classify_examples() {
        let c = classify(params(9, 0, 1), ClassifyOptions::default()).unwrap();
        assert_eq!(c.group, Group::Sn);
        assert_eq!(c.criterion_prime, Some(5));
        assert!(!c.discriminant_is_square);
        // ord_2 of prod j^(2j-1) over j <= 9 is 3 + 14 + 11 + 45 = 73
        let two = crate::primes::ord_p(&c.discriminant, 2).unwrap();
        assert_eq!(two, Valuation::Finite(73));

        let c = classify(params(7, 0, 1), ClassifyOptions { frobenius_samples: 5, ..Default::default() }).unwrap();
        assert_eq!(c.group, Group::Inconclusive);
        assert_eq!(c.criterion_prime, None);
        assert_eq!(c.frobenius.len(), 5);
        assert!(c.parity.is_some());
    }

    #[test]
    fn classify_alpha_one_odd_is_alternating() {
        let c = classify(params(51, 1, 1), ClassifyOptions { frobenius_samples: 10, ..Default::default() }).unwrap();
        assert_eq!(c.group, Group::An);
        assert!(c.discriminant_is_square);
        assert_eq!(c.parity, Some(ParityEvidence::AllEvenSoFar));
        let p = c.criterion_prime.unwrap();
        assert!(26 < p && p < 49);
    }

    #[test]
    fn classify_unknown_irreducibility_never_claims() {
        // an unverified basis must keep the verdict inconclusive
        let opts = ClassifyOptions { irreducibility: Irreducibility::Unknown, frobenius_samples: 0 };
        for n in 9..=14 {
            let c = classify(params(n, 0, 1), opts).unwrap();
            if c.irreducibility_basis() == IrreducibilityBasis::Unverified {
                assert_eq!(c.group, Group::Inconclusive);
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn normalized_is_scaled_substitution(n in 1usize..9, lambda in -12i64..12, mu in 1u64..6) {
                prop_assume!(lambda.unsigned_abs().gcd(&mu) == 1 && !(mu == 1 && lambda < 0));
                let pr = params(n, lambda, mu);
                let mu_q = ExactRational::from_integer(mu.into());
                let scale = num_traits::pow(mu_q.clone(), n) * ExactRational::from_integer(factorial(n));
                let expected = glp(pr).compose_scale(&(-ExactRational::one() / mu_q)).scale(&scale);
                let f = glp_normalized(pr);
                prop_assert_eq!(&f, &expected);
                prop_assert!(f.leading_coefficient().unwrap().is_one());
                prop_assert!(f.coeffs().iter().all(|c| c.is_integer()));
            }
        }
    }
}
