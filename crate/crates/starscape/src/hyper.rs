//! Two models of the hyperbolic plane and the PSL(2,R) representations on
//! quadratic and cubic coefficient space.
//!
//! Roots model: the upper half plane {x + iy | y > 0} with
//! ds^2 = (dx^2 + dy^2)/y^2. Coefficients model: projective classes
//! [a : b : c] with b^2 < 4ac, carrying the Hilbert metric
//! acosh(-<f1,f2>/sqrt(D1 D2)) built from the discriminant bilinear form
//! <f1,f2> = b1 b2 - 2 a1 c2 - 2 a2 c1. The quadratic formula is an isometry
//! between the two.

use crate::error::GeoError;
use crate::lattice;
use crate::numeric::{pow10, ComplexReal, Real};
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Point of the upper half plane, y strictly positive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UhpPoint {
    pub x: f64,
    pub y: f64,
}

impl UhpPoint {
    pub fn new(x: f64, y: f64) -> UhpPoint {
        assert!(y > 0.0, "upper half plane requires y > 0");
        UhpPoint { x, y }
    }

    pub fn from_complex(z: Complex64) -> UhpPoint {
        UhpPoint::new(z.re, z.im)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

/// Hyperbolic distance in the upper half plane.
pub fn dist_uhp(z1: UhpPoint, z2: UhpPoint) -> f64 {
    let dx = z2.x - z1.x;
    let dy = z2.y - z1.y;
    let sy = z2.y + z1.y;
    let num = (dx * dx + dy * dy).sqrt() + (dx * dx + sy * sy).sqrt();
    2.0 * (num / (2.0 * (z1.y * z2.y).sqrt())).ln()
}

/// Representative triple [a : b : c] in the coefficients model. Scaling is
/// the caller's business; the metric is scaling invariant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoefPoint {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl CoefPoint {
    pub fn new(a: f64, b: f64, c: f64) -> CoefPoint {
        CoefPoint { a, b, c }
    }

    pub fn from_poly(p: &IntPoly) -> CoefPoint {
        assert_eq!(p.degree(), 2);
        let c = p.coeffs();
        CoefPoint::new(c[0] as f64, c[1] as f64, c[2] as f64)
    }

    pub fn disc(self) -> f64 {
        self.b * self.b - 4.0 * self.a * self.c
    }
}

/// The discriminant bilinear form <f1,f2> = b1 b2 - 2 a1 c2 - 2 a2 c1,
/// with <f,f> = disc(f).
pub fn inner_product(f1: CoefPoint, f2: CoefPoint) -> f64 {
    f1.b * f2.b - 2.0 * f1.a * f2.c - 2.0 * f2.a * f1.c
}

/// acosh(1+x) computed without cancellation for small x >= 0.
pub fn acosh1p(x: f64) -> f64 {
    (x + (x * (x + 2.0)).sqrt()).ln_1p()
}

/// Distance in the coefficients model; both points need negative
/// discriminant. Arguments within 1e-12 below 1 clamp to distance 0.
pub fn dist_coefs(f1: CoefPoint, f2: CoefPoint) -> Result<f64, GeoError> {
    let d1 = f1.disc();
    let d2 = f2.disc();
    if d1 >= 0.0 || d2 >= 0.0 {
        return Err(GeoError::NonNegativeDiscriminant(format!("{d1}, {d2}")));
    }
    let s = -inner_product(f1, f2) * if f1.a.signum() == f2.a.signum() { 1.0 } else { -1.0 };
    let arg = s / (d1 * d2).sqrt();
    if arg < 1.0 {
        if arg > 1.0 - 1e-12 {
            return Ok(0.0);
        }
        return Err(GeoError::NonNegativeDiscriminant(format!("cosh argument {arg} < 1")));
    }
    Ok(acosh1p(arg - 1.0))
}

/// Exact distance between integer quadratics through the same formula,
/// avoiding cancellation: cosh d - 1 = (s - sqrt(p))/sqrt(p) with s, p
/// integers, rewritten as (s^2 - p) / (sqrt(p) (s + sqrt(p))).
pub fn dist_coefs_int(f1: &IntPoly, f2: &IntPoly) -> Result<f64, GeoError> {
    let (a1, b1, c1) = triple(f1);
    let (a2, b2, c2) = triple(f2);
    let d1 = b1 * b1 - 4 * a1 * c1;
    let d2 = b2 * b2 - 4 * a2 * c2;
    if d1 >= 0 || d2 >= 0 {
        return Err(GeoError::NonNegativeDiscriminant(format!("{d1}, {d2}")));
    }
    let s = -(b1 * b2 - 2 * a1 * c2 - 2 * a2 * c1);
    let p = d1 * d2;
    if s * s == p {
        return Ok(0.0);
    }
    let sp = (p as f64).sqrt();
    let x = ((s * s - p) as f64) / (sp * (s as f64 + sp));
    Ok(acosh1p(x))
}

fn triple(p: &IntPoly) -> (i128, i128, i128) {
    let c = p.coeffs();
    (c[0] as i128, c[1] as i128, c[2] as i128)
}

/// Element of PSL(2,Z): an integer matrix (p q; r s) with det 1, identified
/// with its negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MobiusMat {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

impl MobiusMat {
    pub fn new(p: i64, q: i64, r: i64, s: i64) -> MobiusMat {
        assert_eq!(p * s - q * r, 1, "determinant must be 1");
        MobiusMat { p, q, r, s }
    }

    pub const IDENTITY: MobiusMat = MobiusMat { p: 1, q: 0, r: 0, s: 1 };
    /// z -> z + 1
    pub const T: MobiusMat = MobiusMat { p: 1, q: 1, r: 0, s: 1 };
    /// z -> -1/z
    pub const S: MobiusMat = MobiusMat { p: 0, q: -1, r: 1, s: 0 };

    pub fn compose(self, other: MobiusMat) -> MobiusMat {
        MobiusMat {
            p: self.p * other.p + self.q * other.r,
            q: self.p * other.q + self.q * other.s,
            r: self.r * other.p + self.s * other.r,
            s: self.r * other.q + self.s * other.s,
        }
    }

    pub fn inverse(self) -> MobiusMat {
        MobiusMat { p: self.s, q: -self.q, r: -self.r, s: self.p }
    }

    /// Translation power T^k.
    pub fn translation(k: i64) -> MobiusMat {
        MobiusMat { p: 1, q: k, r: 0, s: 1 }
    }

    /// Mobius action on the complex plane.
    pub fn apply(self, z: Complex64) -> Complex64 {
        let num = z * self.p as f64 + self.q as f64;
        let den = z * self.r as f64 + self.s as f64;
        num / den
    }

    /// Action on the extended real line; None encodes infinity.
    pub fn apply_ideal(self, r: Option<f64>) -> Option<f64> {
        match r {
            None => {
                if self.r == 0 {
                    None
                } else {
                    Some(self.p as f64 / self.r as f64)
                }
            }
            Some(x) => {
                let den = self.r as f64 * x + self.s as f64;
                if den == 0.0 {
                    None
                } else {
                    Some((self.p as f64 * x + self.q as f64) / den)
                }
            }
        }
    }
}

/// Integer matrix of the degree-2 or degree-3 representation of PSL(2,Z) on
/// coefficient space, acting by [A].[f] = [f o A^{-1}]. Obtained by
/// expanding f(sx - qy, -rx + py) and collecting monomials.
pub fn rho(a: MobiusMat, degree: usize) -> Result<Vec<Vec<i64>>, GeoError> {
    let MobiusMat { p, q, r, s } = a;
    match degree {
        2 => Ok(vec![
            vec![s * s, -r * s, r * r],
            vec![-2 * q * s, q * r + p * s, -2 * p * r],
            vec![q * q, -p * q, p * p],
        ]),
        3 => Ok(vec![
            vec![s * s * s, -r * s * s, r * r * s, -r * r * r],
            vec![
                -3 * q * s * s,
                p * s * s + 2 * q * r * s,
                -2 * p * r * s - q * r * r,
                3 * p * r * r,
            ],
            vec![
                3 * q * q * s,
                -2 * p * q * s - q * q * r,
                p * p * s + 2 * p * q * r,
                -3 * p * p * r,
            ],
            vec![-q * q * q, p * q * q, -p * p * q, p * p * p],
        ]),
        d => Err(GeoError::UnsupportedDegree(d)),
    }
}

/// Apply the representation to a polynomial and canonicalize. Roots satisfy
/// roots(act(A, f)) = A . roots(f) as a Mobius action.
pub fn act(a: MobiusMat, p: &IntPoly) -> Result<IntPoly, GeoError> {
    let m = rho(a, p.degree())?;
    let v: Vec<i64> = m
        .iter()
        .map(|row| row.iter().zip(p.coeffs()).map(|(m, c)| m * c).sum())
        .collect();
    IntPoly::new(&v).map_err(|_| GeoError::IdenticalPoints)
}

/// Ideal boundary point of the hyperbolic plane: a real number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum IdealPoint {
    Finite(f64),
    Infinity,
}

/// A rational geodesic, stored by the quadratic whose roots are its ideal
/// endpoints (the pole of the geodesic line with respect to the discriminant
/// conic). A point f = [a : b : c] lies on the geodesic exactly when
/// <normal, f> = 0 in the discriminant bilinear form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Geodesic {
    pub normal: [i64; 3],
}

impl Geodesic {
    pub fn new(normal: [i64; 3]) -> Result<Geodesic, GeoError> {
        let [n2, n1, n0] = normal;
        if n2 == 0 && n1 == 0 && n0 == 0 {
            return Err(GeoError::IdenticalPoints);
        }
        let disc = (n1 as i128) * (n1 as i128) - 4 * (n2 as i128) * (n0 as i128);
        if disc < 0 {
            return Err(GeoError::NonPositiveDiscriminant(disc.to_string()));
        }
        let g = n2.gcd(&n1).gcd(&n0);
        let first = [n2, n1, n0].into_iter().find(|&c| c != 0).unwrap();
        let sgn = if first < 0 { -1 } else { 1 };
        Ok(Geodesic { normal: [n2 / (g * sgn), n1 / (g * sgn), n0 / (g * sgn)] })
    }

    /// The ideal endpoints: roots of n2 x^2 + n1 x + n0, with infinity when
    /// n2 = 0.
    pub fn endpoints(&self) -> (IdealPoint, IdealPoint) {
        let [n2, n1, n0] = self.normal;
        if n2 == 0 {
            let finite = if n1 == 0 {
                unreachable!("normal with n2 = n1 = 0 is not primitive-valid")
            } else {
                IdealPoint::Finite(-(n0 as f64) / n1 as f64)
            };
            return (finite, IdealPoint::Infinity);
        }
        let disc = (n1 as f64) * (n1 as f64) - 4.0 * (n2 as f64) * (n0 as f64);
        let sd = disc.sqrt();
        let a = n2 as f64;
        let lo = (-n1 as f64 - sd) / (2.0 * a);
        let hi = (-n1 as f64 + sd) / (2.0 * a);
        (IdealPoint::Finite(lo.min(hi)), IdealPoint::Finite(lo.max(hi)))
    }

    /// Incidence via the discriminant bilinear form, exact on integers.
    pub fn contains(&self, f: &IntPoly) -> bool {
        let [n2, n1, n0] = self.normal;
        let c = f.coeffs();
        let v = (n1 as i128) * (c[1] as i128)
            - 2 * (n2 as i128) * (c[2] as i128)
            - 2 * (n0 as i128) * (c[0] as i128);
        v == 0
    }

    /// Semicircle geometry of the roots-model image: (center, radius) for a
    /// finite geodesic, None for a vertical line.
    pub fn semicircle(&self) -> Option<(f64, f64)> {
        match self.endpoints() {
            (IdealPoint::Finite(a), IdealPoint::Finite(b)) => {
                Some(((a + b) / 2.0, (b - a).abs() / 2.0))
            }
            _ => None,
        }
    }
}

/// The unique rational geodesic through two projectively distinct rational
/// points of the coefficients model. The plane through the two coefficient
/// vectors is their cross product; converting that euclidean normal
/// (n2, n1, n0) to the bilinear-form pole gives (n0, -2 n1, n2), whose roots
/// are the ideal endpoints.
pub fn geodesic_through(f1: &IntPoly, f2: &IntPoly) -> Result<Geodesic, GeoError> {
    let c1 = f1.coeffs();
    let c2 = f2.coeffs();
    assert!(c1.len() == 3 && c2.len() == 3);
    let cross = [
        c1[1] * c2[2] - c1[2] * c2[1],
        c1[2] * c2[0] - c1[0] * c2[2],
        c1[0] * c2[1] - c1[1] * c2[0],
    ];
    if cross.iter().all(|&x| x == 0) {
        return Err(GeoError::IdenticalPoints);
    }
    Geodesic::new([cross[2], -2 * cross[1], cross[0]])
}

/// Tangency map for positive discriminant: the two double-root polynomials
/// (x - r)^2 at the real roots of f. The lines from f to each output are
/// tangent to the discriminant conic.
pub fn tangency_map(f: CoefPoint) -> Result<(CoefPoint, CoefPoint), GeoError> {
    let d = f.disc();
    if d <= 0.0 {
        return Err(GeoError::NonPositiveDiscriminant(d.to_string()));
    }
    let sd = d.sqrt();
    if f.a == 0.0 {
        // one root at -c/b, the other at infinity ([0:0:1] as a double root
        // of y^2); keep the finite one first
        let r = -f.c / f.b;
        return Ok((CoefPoint::new(1.0, -2.0 * r, r * r), CoefPoint::new(0.0, 0.0, 1.0)));
    }
    let r1 = (-f.b - sd) / (2.0 * f.a);
    let r2 = (-f.b + sd) / (2.0 * f.a);
    Ok((
        CoefPoint::new(1.0, -2.0 * r1, r1 * r1),
        CoefPoint::new(1.0, -2.0 * r2, r2 * r2),
    ))
}

/// Search an integer relation n . (1, z + conj z, z conj z) = 0 with
/// |coefficients| <= bound, certifying numerically via LLL at the precision
/// of `alpha`. Returns the geodesic through alpha when a relation is
/// certified, Ok(None) when the absence of a small relation is certified,
/// and an error when the residual picture is ambiguous at this precision.
pub fn on_rational_geodesic(
    alpha: &ComplexReal,
    coeff_bound: i64,
    ) -> Result<Option<Geodesic>, GeoError> {
    let prec = alpha.re.prec();
    let s = alpha.re.add(&alpha.re); // z + conj z = 2 Re
    let p = alpha.norm_sqr(); // z conj z
    relation_to_geodesic(relation_search(&s, &p, coeff_bound, prec)?)
}

pub(crate) fn relation_to_geodesic(
    rel: Option<[i64; 3]>,
) -> Result<Option<Geodesic>, GeoError> {
    match rel {
        None => Ok(None),
        Some([u, v, w]) => {
            // relation u + v s + w p = 0 on the minimal vector (1, -s, p)
            // means euclidean normal (u, -v, w); pole form (w, 2v, u).
            Ok(Some(Geodesic::new([w, 2 * v, u])?))
        }
    }
}

/// Integer relation u*1 + v*s + w*p = 0 with |u|,|v|,|w| <= bound, or a
/// certified None.
///
/// The lattice rows are [e_i | round(10^(prec/2) v_i)]. A relation of
/// coefficient size <= B appears as a row of norm O(B) whose exact residual
/// (recomputed against the full-precision values) is below B * 10^(10-prec);
/// if no row of norm <= 8B exists, no relation below the bound exists
/// either. Rows in between failing the exact residual test mean the
/// precision cannot separate the two cases, reported as ambiguous. The
/// accepted and rejected residual scales differ by the 10^(prec/2) margin.
pub(crate) fn relation_search(
    s: &Real,
    p: &Real,
    bound: i64,
    prec: u32,
) -> Result<Option<[i64; 3]>, GeoError> {
    // generic short vectors in the lattice below have norm ~ 10^(prec/6);
    // certification needs those safely above the relation bound
    if (prec as f64) / 6.0 < (bound as f64).log10() + 2.0 {
        return Err(GeoError::AmbiguousRelation);
    }
    let m_digits = prec / 2;
    let one = Real::one(prec);
    let values = [&one, s, p];
    let mut basis: Vec<Vec<BigInt>> = (0..3)
        .map(|i| {
            let mut row = vec![BigInt::zero(); 4];
            row[i] = BigInt::from(1);
            row[3] = values[i].with_prec(m_digits).mant().clone();
            row
        })
        .collect();
    lattice::lll(&mut basis);
    let rows = lattice::sorted_by_norm(&basis);

    let exact_residual = |row: &[BigInt]| -> Real {
        let mut acc = Real::zero(prec);
        for (i, v) in values.iter().enumerate() {
            acc = acc.add(&v.mul_int(row[i].clone()));
        }
        acc.abs()
    };
    // a true relation evaluates to rounding noise ~ bound 10^-prec; a
    // non-relation short vector sits at least 10^(prec/2) above that
    let accept_thresh = Real::from_scaled(BigInt::from(bound) * pow10(10), prec);
    let bnd = BigInt::from(bound);

    // a relation of size <= bound, if present, is a small combination of
    // the reduced rows; enumerate those
    let mut candidates: Vec<[BigInt; 3]> = Vec::new();
    for c0 in -2i64..=2 {
        for c1 in -2i64..=2 {
            for c2 in -2i64..=2 {
                if (c0, c1, c2) == (0, 0, 0) {
                    continue;
                }
                let v: Vec<BigInt> = (0..4)
                    .map(|j| &rows[0][j] * c0 + &rows[1][j] * c1 + &rows[2][j] * c2)
                    .collect();
                if v[..3].iter().all(|c| c.abs() <= bnd)
                    && v[..3].iter().any(|c| !c.is_zero())
                    && exact_residual(&v).cmp_real(&accept_thresh) == std::cmp::Ordering::Less
                {
                    candidates.push([v[0].clone(), v[1].clone(), v[2].clone()]);
                }
            }
        }
    }
    if let Some(best) = candidates.into_iter().min_by_key(|row| {
        // canonical pick when several relations certify (quadratic points):
        // prefer trace-free, then norm-free, then short, then lexicographic
        let norm: BigInt = row.iter().map(|x| x * x).sum();
        (
            !row[1].is_zero(),
            !row[2].is_zero(),
            norm,
            row[0].clone(),
            row[1].clone(),
            row[2].clone(),
        )
    }) {
        let mut rel = [0i64; 3];
        for (i, c) in best.iter().enumerate() {
            rel[i] = c.to_i64().expect("bounded coefficient");
        }
        if rel.iter().find(|&&c| c != 0).copied().unwrap_or(1) < 0 {
            for r in rel.iter_mut() {
                *r = -*r;
            }
        }
        return Ok(Some(rel));
    }
    Ok(None)
}
