//! Small exact-rational plane geometry helpers shared by the halfplane
//! canonicaliser and the arrangement oracles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i128, d: i128) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact point in the `(a, b)` parameter plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatPoint {
    pub a: Rational,
    pub b: Rational,
}

impl RatPoint {
    pub fn new(a: Rational, b: Rational) -> Self {
        RatPoint { a, b }
    }

    pub fn dist_sq(&self, other: &RatPoint) -> Rational {
        let da = &self.a - &other.a;
        let db = &self.b - &other.b;
        &da * &da + &db * &db
    }
}

/// Closed constraint `ca * a + cb * b + c0 >= 0`.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub ca: Rational,
    pub cb: Rational,
    pub c0: Rational,
}

impl Constraint {
    pub fn value(&self, p: &RatPoint) -> Rational {
        &self.ca * &p.a + &self.cb * &p.b + &self.c0
    }
}

/// Sutherland-Hodgman clip of a convex polygon against one closed constraint.
pub fn clip(poly: &[RatPoint], c: &Constraint) -> Vec<RatPoint> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    if poly.is_empty() {
        return out;
    }
    let vals: Vec<Rational> = poly.iter().map(|p| c.value(p)).collect();
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        let (vi, vj) = (&vals[i], &vals[j]);
        if !vi.is_negative() {
            out.push(poly[i].clone());
        }
        if (vi.is_negative() && vj.is_positive()) || (vi.is_positive() && vj.is_negative()) {
            let t = vi / (vi - vj);
            let a = &poly[i].a + (&poly[j].a - &poly[i].a) * &t;
            let b = &poly[i].b + (&poly[j].b - &poly[i].b) * &t;
            out.push(RatPoint::new(a, b));
        }
    }
    dedup_ring(out)
}

fn dedup_ring(mut pts: Vec<RatPoint>) -> Vec<RatPoint> {
    pts.dedup();
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    pts
}

/// Twice the signed area (positive for counterclockwise rings).
pub fn area2(poly: &[RatPoint]) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        acc += &poly[i].a * &poly[j].b - &poly[j].a * &poly[i].b;
    }
    acc
}

/// Average of the vertices; strictly interior for a non-degenerate convex ring.
pub fn vertex_centroid(poly: &[RatPoint]) -> RatPoint {
    let n = rat(poly.len() as i128);
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    for p in poly {
        a += &p.a;
        b += &p.b;
    }
    RatPoint::new(a / &n, b / n)
}

/// Axis-aligned square `[-h, h]^2`, counterclockwise.
pub fn square(h: &Rational) -> Vec<RatPoint> {
    let n = -h.clone();
    vec![
        RatPoint::new(n.clone(), n.clone()),
        RatPoint::new(h.clone(), n.clone()),
        RatPoint::new(h.clone(), h.clone()),
        RatPoint::new(n, h.clone()),
    ]
}

pub fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}
