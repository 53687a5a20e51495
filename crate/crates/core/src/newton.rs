//! `p`-adic Newton polygons and the Newton index.
//!
//! The polygon of `f = sum a_j x^j` at `p` is the lower convex hull of the
//! points `(j, ord_p(a_j))` over the nonzero coefficients. A segment of slope
//! `s` and horizontal length `L` accounts for `L` roots of valuation `-s`, so a
//! slope denominator `d` (in lowest terms) forces ramification divisible by
//! `d`. The Newton index is the lcm of all such denominators over all primes.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactpoly::{primitive_scale, RationalPolynomial};
use crate::primes::{candidate_primes, is_prime_u64, ord_p_unchecked, Valuation};

pub type Point = (usize, i64);

pub(crate) fn serialize_slope<S: Serializer>(slope: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&render_slope(slope))
}

pub fn render_slope(slope: &Rational64) -> String {
    if slope.is_integer() {
        slope.numer().to_string()
    } else {
        format!("{}/{}", slope.numer(), slope.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    #[serde(serialize_with = "serialize_slope")]
    pub slope: Rational64,
    pub length: usize,
    pub from: Point,
    pub to: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub prime: u64,
    /// `(j, ord_p(a_j))` for every nonzero coefficient.
    pub points: Vec<Point>,
    /// Corners, left to right, including both endpoints.
    pub vertices: Vec<Point>,
    pub segments: Vec<Segment>,
}

fn cross(o: Point, a: Point, b: Point) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

/// Monotone-chain lower hull of points with strictly increasing `x`.
///
/// Collinear interior points are dropped, so consecutive output points are
/// exactly the corners.
pub fn lower_hull(points: &[Point]) -> Vec<Point> {
    let mut hull: Vec<Point> = Vec::with_capacity(points.len());
    for &p in points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

impl NewtonPolygon {
    /// Builds the polygon from `(j, valuation)` points sorted by `j`.
    pub fn from_points(prime: u64, points: Vec<Point>) -> Result<Self> {
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidParameter("points must have increasing x".into()));
        }
        let vertices = lower_hull(&points);
        let segments = vertices
            .windows(2)
            .map(|w| {
                let (from, to) = (w[0], w[1]);
                let length = to.0 - from.0;
                Segment { slope: Rational64::new(to.1 - from.1, length as i64), length, from, to }
            })
            .collect();
        let polygon = NewtonPolygon { prime, points, vertices, segments };
        polygon.check_invariants()?;
        Ok(polygon)
    }

    /// Convexity, endpoint and support checks.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Inconsistent(format!("newton polygon at {}: {what}", self.prime)));
        let (Some(first), Some(last)) = (self.points.first(), self.points.last()) else {
            return fail("no points");
        };
        if self.vertices.first() != Some(first) || self.vertices.last() != Some(last) {
            return fail("endpoints are not vertices");
        }
        if self.segments.windows(2).any(|w| w[0].slope >= w[1].slope) {
            return fail("slopes are not strictly increasing");
        }
        if self.segments.iter().map(|s| s.length).sum::<usize>() != last.0 - first.0 {
            return fail("segment lengths do not add up");
        }
        for seg in &self.segments {
            for &pt in &self.points {
                if cross(seg.from, seg.to, pt) < 0 {
                    return fail("a point lies below a supporting line");
                }
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.points.last().map_or(0, |p| p.0)
    }

    pub fn slopes(&self) -> impl Iterator<Item = Rational64> + '_ {
        self.segments.iter().map(|s| s.slope)
    }

    /// Slopes whose denominator exceeds 1.
    pub fn ramified_slopes(&self) -> Vec<Rational64> {
        self.slopes().filter(|s| !s.is_integer()).collect()
    }

    /// lcm of all slope denominators; 1 for a polygon without segments.
    pub fn denominator_lcm(&self) -> u64 {
        self.slopes().fold(1u64, |acc, s| acc.lcm(&(*s.denom() as u64)))
    }
}

/// Newton polygon of `f` at the prime `p`.
///
/// Requires `f` nonzero with nonzero constant term. Zero coefficients are left
/// out of the point set.
pub fn newton_polygon(f: &RationalPolynomial, p: u64) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let points = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(j, a)| match ord_p_unchecked(a, p) {
            Valuation::Finite(v) => Some((j, v)),
            Valuation::Infinite => None,
        })
        .collect();
    NewtonPolygon::from_points(p, points)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonIndexReport {
    #[serde(serialize_with = "serialize_display")]
    pub index: BigUint,
    /// Prime to the slopes with denominator > 1 at that prime.
    #[serde(serialize_with = "serialize_witnesses")]
    pub witnesses: BTreeMap<u64, Vec<Rational64>>,
    /// Multiplicity of `x` stripped off before the polygons were taken.
    pub x_power: usize,
    /// Degree of the stripped polynomial.
    pub degree: usize,
    #[serde(skip)]
    pub polygons: Vec<NewtonPolygon>,
}

fn serialize_display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn serialize_witnesses<S: Serializer>(
    w: &BTreeMap<u64, Vec<Rational64>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(w.iter().map(|(p, slopes)| {
        (p.to_string(), slopes.iter().map(render_slope).collect::<Vec<_>>())
    }))
}

/// `lcm(1, 2, ..., n)`.
pub fn lcm_up_to(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc.lcm(&BigUint::from(k)))
}

/// Newton index of `f` over `Q`.
///
/// Powers of `x` are stripped and the rest is scaled to its primitive integer
/// part; neither step changes any slope denominator. Only primes dividing
/// `a_0 * a_n` of the primitive part are visited, since every other prime
/// yields a single slope-0 segment.
pub fn newton_index(f: &RationalPolynomial) -> Result<NewtonIndexReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (x_power, h) = f.strip_x_powers();
    let (prim, _) = primitive_scale(&h)?;
    let g = prim.to_rational();
    let mut index = BigUint::one();
    let mut witnesses = BTreeMap::new();
    let mut polygons = Vec::new();
    for p in candidate_primes(&prim)? {
        let polygon = newton_polygon(&g, p)?;
        index = index.lcm(&BigUint::from(polygon.denominator_lcm()));
        let ramified = polygon.ramified_slopes();
        if !ramified.is_empty() {
            witnesses.insert(p, ramified);
        }
        polygons.push(polygon);
    }
    let degree = g.degree().expect("nonzero");
    if !(lcm_up_to(degree) % &index).is_zero() {
        return Err(Error::Inconsistent(format!(
            "newton index {index} does not divide lcm(1..{degree})"
        )));
    }
    Ok(NewtonIndexReport { index, witnesses, x_power, degree, polygons })
}

/// A prime whose polygon is a single segment with slope denominator equal to
/// `deg f`, if any. Such a prime proves `f` irreducible over `Q`: every
/// `Q_p`-factor then has degree divisible by `deg f`.
pub fn single_slope_witness(f: &RationalPolynomial) -> Result<Option<u64>> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    if n == 0 {
        return Ok(None);
    }
    let (prim, _) = primitive_scale(f)?;
    for p in candidate_primes(&prim)? {
        let polygon = newton_polygon(f, p)?;
        if let [segment] = polygon.segments.as_slice() {
            if *segment.slope.denom() as usize == n {
                return Ok(Some(p));
            }
        }
    }
    Ok(None)
}

pub fn single_slope_irreducibility_evidence(f: &RationalPolynomial) -> Result<bool> {
    Ok(single_slope_witness(f)?.is_some())
}
