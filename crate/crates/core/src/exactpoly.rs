//! Exact rational polynomials.
//!
//! Coefficients are stored densely in ascending degree order, so index `j`
//! holds the coefficient of `x^j`. The zero polynomial is the empty vector and
//! nonzero polynomials never carry a trailing zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<ExactRational>,
}

impl RationalPolynomial {
    /// Builds a polynomial from ascending coefficients, dropping trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn from_integers<T: Into<BigInt> + Copy>(coeffs: &[T]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| ExactRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    /// `c * x^k`.
    pub fn monomial(c: ExactRational, k: usize) -> Self {
        let mut coeffs = vec![ExactRational::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    /// Coefficient of `x^j`; zero past the degree.
    pub fn coeff(&self, j: usize) -> ExactRational {
        self.coeffs.get(j).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn leading_coefficient(&self) -> Option<&ExactRational> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> ExactRational {
        self.coeff(0)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, a| acc * x + a)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, a)| a * ExactRational::from_integer(BigInt::from(j)))
                .collect(),
        )
    }

    /// Returns `g(x) = f(x - mu)`.
    ///
    /// Computed as a Taylor shift by `-mu` with repeated synthetic division,
    /// which needs `O(n^2)` exact operations and no binomial table.
    pub fn shift(&self, mu: &ExactRational) -> Self {
        let t = -mu;
        let mut a = self.coeffs.clone();
        if t.is_zero() || a.len() < 2 {
            return Self::from_coeffs(a);
        }
        let n = a.len() - 1;
        for i in 0..n {
            for j in (i..n).rev() {
                let carry = &t * &a[j + 1];
                a[j] += carry;
            }
        }
        Self::from_coeffs(a)
    }

    /// Returns `f(c * x)`.
    pub fn compose_scale(&self, c: &ExactRational) -> Self {
        let mut power = ExactRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &power);
            power *= c;
        }
        Self::from_coeffs(out)
    }

    /// Splits `f = x^k * h` with `h(0) != 0`, returning `(k, h)`.
    ///
    /// The zero polynomial is returned unchanged with `k = 0`.
    pub fn strip_x_powers(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if k == self.coeffs.len() {
            return (0, self.clone());
        }
        (k, RationalPolynomial { coeffs: self.coeffs[k..].to_vec() })
    }

    /// Renders the comma-separated ascending coefficient form, e.g. `2,-4,1`.
    ///
    /// The zero polynomial renders as `0`.
    pub fn to_csv(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(render_rational)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses the comma-separated ascending coefficient form.
    pub fn parse_csv(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse {
                input: s.to_string(),
                reason: "empty coefficient list".into(),
            });
        }
        let coeffs = s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }
}

impl FromStr for RationalPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_csv(s)
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let magnitude = a.abs();
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else if a.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = magnitude.is_one();
            match j {
                0 => write!(f, "{}", render_rational(&magnitude))?,
                _ => {
                    if !unit {
                        write!(f, "{}*", render_rational(&magnitude))?;
                    }
                    if j == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{j}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::from_coeffs((0..len).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::from_coeffs((0..len).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::from_coeffs(out)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        RationalPolynomial { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

/// Integer polynomial with content 1 and a positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimitiveIntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl PrimitiveIntegerPolynomial {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading_coefficient(&self) -> &BigInt {
        self.coeffs.last().expect("primitive polynomials are nonzero")
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn to_rational(&self) -> RationalPolynomial {
        RationalPolynomial::from_coeffs(
            self.coeffs.iter().cloned().map(ExactRational::from_integer).collect(),
        )
    }
}

/// Writes `f = c * g` with `g` a primitive integer polynomial.
pub fn primitive_scale(f: &RationalPolynomial) -> Result<(PrimitiveIntegerPolynomial, ExactRational)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let denominator_lcm = f
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    let cleared: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|a| a.numer() * (&denominator_lcm / a.denom()))
        .collect();
    let mut content = cleared.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
    if cleared.last().is_some_and(Signed::is_negative) {
        content = -content;
    }
    let coeffs = cleared.iter().map(|a| a / &content).collect();
    let scalar = ExactRational::new(content, denominator_lcm);
    Ok((PrimitiveIntegerPolynomial { coeffs }, scalar))
}

/// Resultant `Res(f, g)`.
///
/// Both inputs are scaled to primitive integer polynomials, the Sylvester
/// determinant is taken with fraction-free elimination, and the scalars are
/// reapplied as `c_f^deg(g) * c_g^deg(f)`.
pub fn resultant(f: &RationalPolynomial, g: &RationalPolynomial) -> Result<ExactRational> {
    let (fp, cf) = primitive_scale(f)?;
    let (gp, cg) = primitive_scale(g)?;
    let m = fp.degree();
    let n = gp.degree();
    let det = bareiss_determinant(sylvester_matrix(fp.coeffs(), gp.coeffs()));
    let scale = num_traits::pow(cf, n) * num_traits::pow(cg, m);
    Ok(ExactRational::from_integer(det) * scale)
}

/// `(-1)^(n(n-1)/2) * Res(f, f') / a_n` for `n = deg f >= 1`.
pub fn discriminant(f: &RationalPolynomial) -> Result<ExactRational> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n < 1 {
        return Err(Error::DegreeTooSmall { min: 1, got: n });
    }
    let res = resultant(f, &f.derivative())?;
    let lc = f.leading_coefficient().expect("nonzero");
    let value = res / lc;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -value } else { value })
}

/// Sylvester matrix of two integer polynomials given in ascending order.
///
/// Rows hold coefficients in descending order; `deg g` shifted copies of `f`
/// are followed by `deg f` shifted copies of `g`.
pub fn sylvester_matrix(f: &[BigInt], g: &[BigInt]) -> Vec<Vec<BigInt>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (poly, copies) in [(f, n), (g, m)] {
        for shift in 0..copies {
            let mut row = vec![BigInt::zero(); size];
            for (k, c) in poly.iter().rev().enumerate() {
                row[shift + k] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
///
/// Every division is exact. The empty matrix has determinant 1.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let size = a.len();
    if size == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if a[k][k].is_zero() {
            match (k + 1..size).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let value = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = value;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Parses an integer or `a/b` rational, reducing to lowest terms.
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let t = s.trim();
    let err = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
    let parse_int = |x: &str| x.trim().parse::<BigInt>().map_err(|_| err("not an integer"));
    match t.split_once('/') {
        None => Ok(ExactRational::from_integer(parse_int(t)?)),
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(ExactRational::new(parse_int(num)?, den))
        }
    }
}

/// Renders `a/b`, or just `a` when the denominator is 1.
pub fn render_rational(q: &ExactRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
