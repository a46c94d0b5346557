//! Negative-discriminant cubics as the unit tangent bundle of the
//! hyperbolic plane.
//!
//! A cubic with one real root r and complex pair {z, conj z} is the unit
//! tangent vector at z pointing along the geodesic toward the ideal point
//! r. The trivialization angle against the vertical direction field is
//! theta = 2 atan((r - x)/y). Planar families (rational planes in
//! coefficient space) embed in C under the complex-root projection exactly
//! when they avoid containing a full circle fiber; the fiber containment
//! test is an exact 2x2 rational linear system.

use crate::error::GeoError;
use crate::hyper::{IdealPoint, UhpPoint};
use crate::poly::IntPoly;
use crate::roots;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Signed;
use serde::Serialize;

/// A cubic as a unit tangent vector: base point in the open upper half
/// plane, direction an ideal point of RP^1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentPoint {
    pub base: UhpPoint,
    pub dir: IdealPoint,
}

/// Split a negative-discriminant cubic into its tangent-vector data. The
/// factorization (x - r)(x^2 - (z + conj z) x + z conj z) reproduces the
/// monic input within 1e-9 relative.
pub fn split_cubic(p: &IntPoly) -> Result<TangentPoint, GeoError> {
    if p.degree() != 3 {
        return Err(GeoError::UnsupportedDegree(p.degree()));
    }
    let disc = p.discriminant();
    if !disc.is_negative() {
        return Err(GeoError::NonPositiveDiscriminant(disc.to_string()));
    }
    if p.leading_zeros() > 0 {
        // embedded definite quadratic: direction infinity
        let z = roots::upper_root(p).map_err(|_| GeoError::NonPositiveDiscriminant("quadratic".into()))?;
        return Ok(TangentPoint {
            base: UhpPoint::from_complex(z),
            dir: IdealPoint::Infinity,
        });
    }
    let rs = roots::roots(p, roots::DEFAULT_TOL)
        .map_err(|_| GeoError::NonPositiveDiscriminant("solver failure".into()))?;
    let r = rs.real_roots()[0];
    let z = rs.upper_roots()[0];
    Ok(TangentPoint {
        base: UhpPoint::from_complex(z),
        dir: IdealPoint::Finite(r),
    })
}

/// Expand (x - r)(x - z)(x - conj z) back to a projective coefficient
/// 4-vector; r = infinity yields the embedded quadratic [0 : 1 : -2x : |z|^2].
pub fn assemble_cubic(dir: IdealPoint, z: UhpPoint) -> [f64; 4] {
    let s = 2.0 * z.x;
    let n = z.x * z.x + z.y * z.y;
    match dir {
        IdealPoint::Infinity => [0.0, 1.0, -s, n],
        IdealPoint::Finite(r) => [1.0, -(r + s), n + r * s, -r * n],
    }
}

/// Trivialization angle in (-pi, pi]: 2 atan((r - x)/y), with infinity at
/// pi.
pub fn theta(z: UhpPoint, dir: IdealPoint) -> f64 {
    match dir {
        IdealPoint::Infinity => std::f64::consts::PI,
        IdealPoint::Finite(r) => 2.0 * ((r - z.x) / z.y).atan(),
    }
}

/// Unit vector at z along the geodesic toward the finite ideal point r:
/// direction (2y(r - x), (r - x)^2 - y^2), normalized.
pub fn arrow_direction(z: UhpPoint, r: f64) -> (f64, f64) {
    let dx = r - z.x;
    let vx = 2.0 * z.y * dx;
    let vy = dx * dx - z.y * z.y;
    let n = (vx * vx + vy * vy).sqrt();
    (vx / n, vy / n)
}

/// Embed a tangent point into the solid torus of revolution in R^3: the
/// base goes through the Cayley transform w = (z - i)/(z + i) into the unit
/// disk, and (w, theta) is placed with major radius 2, minor radius 1:
/// ((2 + Re w) cos theta, (2 + Re w) sin theta, Im w).
pub fn torus_embed(t: TangentPoint) -> [f64; 3] {
    let z = t.base.to_complex();
    let i = num_complex::Complex64::new(0.0, 1.0);
    let w = (z - i) / (z + i);
    let th = theta(t.base, t.dir);
    [(2.0 + w.re) * th.cos(), (2.0 + w.re) * th.sin(), w.im]
}

/// A plane through the origin of cubic coefficient space with primitive
/// integer normal (N3, N2, N1, N0), i.e. the family
/// {(a,b,c,d) : N3 a + N2 b + N1 c + N0 d = 0}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarFamily {
    pub normal: [i64; 4],
}

impl PlanarFamily {
    pub fn new(normal: [i64; 4]) -> Result<PlanarFamily, GeoError> {
        if normal.iter().all(|&x| x == 0) {
            return Err(GeoError::IdenticalPoints);
        }
        let g = normal.iter().fold(0i64, |g, &x| g.gcd(&x));
        let first = normal.iter().find(|&&x| x != 0).unwrap();
        let sgn = if *first < 0 { -1 } else { 1 };
        Ok(PlanarFamily {
            normal: [
                normal[0] / (g * sgn),
                normal[1] / (g * sgn),
                normal[2] / (g * sgn),
                normal[3] / (g * sgn),
            ],
        })
    }

    /// Normal from a spanning basis of three integer vectors (the 3x3 minor
    /// cross product in Z^4).
    pub fn from_basis(basis: &[Vec<i64>; 3]) -> Result<PlanarFamily, GeoError> {
        let m = basis;
        let det3 = |c0: usize, c1: usize, c2: usize| -> i64 {
            m[0][c0] * (m[1][c1] * m[2][c2] - m[1][c2] * m[2][c1])
                - m[0][c1] * (m[1][c0] * m[2][c2] - m[1][c2] * m[2][c0])
                + m[0][c2] * (m[1][c0] * m[2][c1] - m[1][c1] * m[2][c0])
        };
        PlanarFamily::new([
            det3(1, 2, 3),
            -det3(0, 2, 3),
            det3(0, 1, 3),
            -det3(0, 1, 2),
        ])
    }
}

/// Result of the exact fiber-containment test for a planar family.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum SingularLine {
    /// The family contains the full fiber over this point: the monic
    /// quadratic x^2 + Bx + C with B^2 < 4C, collapsing a projective line
    /// of cubics onto z = (-B + i sqrt(4C - B^2))/2.
    Fiber { b: Rational64, c: Rational64, z: UhpPoint },
    /// The unique solution of the containment system has non-negative
    /// discriminant: the would-be fiber sits over the ideal boundary.
    RealLocus { b: Rational64, c: Rational64 },
    /// The 2x2 system is inconsistent: no fiber is contained.
    Transverse,
    /// The system is rank-deficient; the family is degenerate with respect
    /// to the fibration.
    Degenerate,
}

/// Exact singular-line detection: the fiber over the monic quadratic
/// x^2 + Bx + C consists of (x^2 + Bx + C)(ex + f), which lies inside the
/// family N . (a,b,c,d) = 0 for all (e, f) exactly when
/// N . (1, B, C, 0) = 0 and N . (0, 1, B, C) = 0.
pub fn singular_line(fam: &PlanarFamily) -> SingularLine {
    let [n3, n2, n1, n0] = fam.normal.map(i128::from);
    // coefficient matrix in (B, C): [n2 n1; n1 n0], rhs (-n3, -n2)
    let det = n2 * n0 - n1 * n1;
    if det == 0 {
        if n2 == 0 && n1 == 0 && n0 == 0 {
            // rank 0; the nonzero normal forces n3 != 0, so inconsistent
            return SingularLine::Transverse;
        }
        // rank 1: consistent exactly when both augmented 2x2 minors vanish,
        // in which case a whole line of (B, C) solves the system
        let m1 = n3 * n1 - n2 * n2;
        let m2 = n3 * n0 - n1 * n2;
        if m1 == 0 && m2 == 0 {
            return SingularLine::Degenerate;
        }
        return SingularLine::Transverse;
    }
    let bn = -n3 * n0 + n2 * n1; // Cramer numerator for B
    let cn = n2 * (-n2) - (-n3) * n1; // Cramer numerator for C
    let b = ratio64(bn, det);
    let c = ratio64(cn, det);
    let bf = rat_f64(b);
    let cf = rat_f64(c);
    let disc = bf * bf - 4.0 * cf;
    if disc < 0.0 {
        let z = UhpPoint::new(-bf / 2.0, (-disc).sqrt() / 2.0);
        SingularLine::Fiber { b, c, z }
    } else {
        SingularLine::RealLocus { b, c }
    }
}

fn ratio64(n: i128, d: i128) -> Rational64 {
    let g = n.gcd(&d) * d.signum();
    Rational64::new((n / g) as i64, (d / g) as i64)
}

fn rat_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// One flagged sample of the transversality screen.
#[derive(Clone, Debug, Serialize)]
pub struct TangencySample {
    pub z: (f64, f64),
    pub angle: f64,
}

/// Numeric transversality report over a rectangle of base points, plus the
/// exact singular-line result. For each grid point z the unique family
/// member over z is computed; the angle between the fiber direction and the
/// family plane is flagged when below `tol` radians.
#[derive(Clone, Debug, Serialize)]
pub struct TransversalityReport {
    pub exact: SingularLine,
    pub flagged: Vec<TangencySample>,
    pub samples: usize,
}

pub const TANGENCY_TOL: f64 = 1e-3;

pub fn transversality_report(
    fam: &PlanarFamily,
    region: (f64, f64, f64, f64),
    grid: u32,
) -> TransversalityReport {
    let exact = singular_line(fam);
    let mut flagged = Vec::new();
    let mut samples = 0;
    if grid == 0 {
        return TransversalityReport { exact, flagged, samples };
    }
    let (re0, re1, im0, im1) = region;
    let n = fam.normal.map(|x| x as f64);
    for i in 0..grid {
        for j in 0..grid {
            let x = re0 + (re1 - re0) * (i as f64 + 0.5) / grid as f64;
            let y = im0 + (im1 - im0) * (j as f64 + 0.5) / grid as f64;
            if y <= 0.0 {
                continue;
            }
            samples += 1;
            // fiber over z: span of v1 = (1, B, C, 0), v2 = (0, 1, B, C)
            let bq = -2.0 * x;
            let cq = x * x + y * y;
            let v1 = [1.0, bq, cq, 0.0];
            let v2 = [0.0, 1.0, bq, cq];
            let d1 = dot4(&n, &v1);
            let d2 = dot4(&n, &v2);
            // family member over z
            let f0: Vec<f64> = (0..4).map(|k| -d2 * v1[k] + d1 * v2[k]).collect();
            let f0n = dot4s(&f0, &f0).sqrt();
            if f0n < 1e-12 {
                // the entire fiber lies in the family (exact singular point)
                flagged.push(TangencySample { z: (x, y), angle: 0.0 });
                continue;
            }
            // fiber tangent at f0, orthogonal to f0 inside span(v1, v2)
            let w = if d1.abs() > d2.abs() { v1 } else { v2 };
            let proj = dot4s(&w, &f0) / (f0n * f0n);
            let wp: Vec<f64> = (0..4).map(|k| w[k] - proj * f0[k]).collect();
            let wn = dot4s(&wp, &wp).sqrt();
            let nn = dot4s(&n, &n).sqrt();
            let sin_angle = (dot4s(&n, &wp) / (nn * wn)).abs().min(1.0);
            let angle = sin_angle.asin();
            if angle < TANGENCY_TOL {
                flagged.push(TangencySample { z: (x, y), angle });
            }
        }
    }
    TransversalityReport { exact, flagged, samples }
}

fn dot4(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot4s(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::{act, MobiusMat};
    use num_complex::Complex64;
    use rand::Rng;
    use rand::SeedableRng;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::new(c).unwrap()
    }

    #[test]
    fn split_known_cubics() {
        let t = split_cubic(&p(&[1, 1, 1, 1])).unwrap();
        assert_eq!(t.dir, IdealPoint::Finite(-1.0));
        assert!((t.base.to_complex() - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let t2 = split_cubic(&p(&[1, -1, 1, -1])).unwrap();
        assert_eq!(t2.dir, IdealPoint::Finite(1.0));
        let t3 = split_cubic(&p(&[1, 0, 1, 1])).unwrap();
        match t3.dir {
            IdealPoint::Finite(r) => assert!((r + 0.6823278038280193).abs() < 1e-10),
            _ => panic!(),
        }
        assert!((t3.base.to_complex() - Complex64::new(0.34116390191409835, 1.1615414000964386))
            .norm()
            < 1e-10);
        // positive discriminant rejected
        assert!(split_cubic(&p(&[1, -2, 0, 1])).is_err());
    }

    #[test]
    fn assemble_examples() {
        assert_eq!(
            assemble_cubic(IdealPoint::Finite(-1.0), UhpPoint::new(0.0, 1.0)),
            [1.0, 1.0, 1.0, 1.0]
        );
        assert_eq!(
            assemble_cubic(IdealPoint::Finite(1.0), UhpPoint::new(0.0, 1.0)),
            [1.0, -1.0, 1.0, -1.0]
        );
        assert_eq!(
            assemble_cubic(IdealPoint::Infinity, UhpPoint::new(1.0, 1.0)),
            [0.0, 1.0, -2.0, 2.0]
        );
    }

    #[test]
    fn split_assemble_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        let mut n = 0;
        while n < 2000 {
            let coeffs: Vec<i64> = (0..4).map(|_| rng.gen_range(-50i64..=50)).collect();
            let f = match IntPoly::new(&coeffs) {
                Ok(f) if f.leading_zeros() == 0 => f,
                _ => continue,
            };
            if !f.discriminant().is_negative() {
                continue;
            }
            let t = split_cubic(&f).unwrap();
            let back = assemble_cubic(t.dir, t.base);
            // compare projectively against the monic normalization
            let lead = f.coeffs()[0] as f64;
            for (i, &c) in f.coeffs().iter().enumerate() {
                let want = c as f64 / lead;
                assert!(
                    (back[i] - want).abs() <= 1e-9 * (1.0 + want.abs()),
                    "{:?}: {:?} vs {:?}",
                    f,
                    back,
                    f.coeffs()
                );
            }
            n += 1;
        }
    }

    #[test]
    fn split_is_equivariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let mut n = 0;
        while n < 300 {
            let coeffs: Vec<i64> = (0..4).map(|_| rng.gen_range(-10i64..=10)).collect();
            let f = match IntPoly::new(&coeffs) {
                Ok(f) if f.leading_zeros() == 0 => f,
                _ => continue,
            };
            if !f.discriminant().is_negative() {
                continue;
            }
            let mut a = MobiusMat::IDENTITY;
            for _ in 0..rng.gen_range(1..=8) {
                a = a.compose(match rng.gen_range(0..3) {
                    0 => MobiusMat::S,
                    1 => MobiusMat::T,
                    _ => MobiusMat::T.inverse(),
                });
            }
            let g = act(a, &f).unwrap();
            if g.leading_zeros() > 0 {
                continue; // real root moved to infinity; handled separately
            }
            let tf = split_cubic(&f).unwrap();
            let tg = split_cubic(&g).unwrap();
            let zm = a.apply(tf.base.to_complex());
            assert!(
                (Complex64::new(zm.re, zm.im.abs()) - tg.base.to_complex()).norm() < 1e-9,
                "base mismatch"
            );
            let rf = match tf.dir {
                IdealPoint::Finite(r) => Some(r),
                IdealPoint::Infinity => None,
            };
            let rm = a.apply_ideal(rf);
            match (rm, tg.dir) {
                (Some(x), IdealPoint::Finite(y)) => {
                    assert!((x - y).abs() < 1e-9 * (1.0 + x.abs()), "{x} vs {y}")
                }
                (None, IdealPoint::Infinity) => {}
                other => panic!("direction mismatch {:?}", other),
            }
            n += 1;
        }
    }

    #[test]
    fn theta_values_and_monotonicity() {
        let i = UhpPoint::new(0.0, 1.0);
        assert!((theta(i, IdealPoint::Finite(1.0)) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!(theta(i, IdealPoint::Finite(0.0)), 0.0);
        assert_eq!(theta(UhpPoint::new(2.0, 3.0), IdealPoint::Finite(2.0)), 0.0);
        assert_eq!(theta(i, IdealPoint::Infinity), std::f64::consts::PI);
        // strictly monotone in r
        let z = UhpPoint::new(0.3, 0.7);
        let mut last = f64::NEG_INFINITY;
        for k in -100..=100 {
            let t = theta(z, IdealPoint::Finite(k as f64 / 10.0));
            assert!(t > last);
            last = t;
        }
    }

    #[test]
    fn arrow_directions() {
        let i = UhpPoint::new(0.0, 1.0);
        // toward an ideal point directly below: straight down
        assert_eq!(arrow_direction(i, 0.0), (0.0, -1.0));
        // toward -1 and +1: horizontal, matching (2y(r-x), (r-x)^2 - y^2)
        assert_eq!(arrow_direction(i, -1.0), (-1.0, 0.0));
        assert_eq!(arrow_direction(i, 1.0), (1.0, 0.0));
        let (vx, vy) = arrow_direction(i, 1e9);
        assert!(vx.abs() < 1e-8 && (vy - 1.0).abs() < 1e-8);
    }

    #[test]
    fn torus_embedding_basics() {
        // base i maps to the core circle
        let t = TangentPoint { base: UhpPoint::new(0.0, 1.0), dir: IdealPoint::Finite(0.5) };
        let [x, y, z] = torus_embed(t);
        assert!(((x * x + y * y).sqrt() - 2.0).abs() < 1e-12);
        assert!(z.abs() < 1e-12);
        // |w| -> 1 near the boundary
        let near = TangentPoint { base: UhpPoint::new(0.0, 1e-9), dir: IdealPoint::Finite(0.0) };
        let [x, y, z] = torus_embed(near);
        let r = (x * x + y * y).sqrt() - 2.0;
        assert!((r * r + z * z).sqrt() > 0.999);
    }

    #[test]
    fn torus_embedding_injective_on_sample() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        let pts: Vec<[f64; 3]> = (0..1000)
            .map(|_| {
                let t = TangentPoint {
                    base: UhpPoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.05..4.0)),
                    dir: IdealPoint::Finite(rng.gen_range(-5.0..5.0)),
                };
                torus_embed(t)
            })
            .collect();
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                let d2: f64 = (0..3).map(|k| (pts[i][k] - pts[j][k]).powi(2)).sum();
                assert!(d2.sqrt() > 1e-9, "collision {i} {j}");
            }
        }
    }

    #[test]
    fn singular_line_fiber_families() {
        // a x^3 + b x^2 + c x + b: fiber over i
        let fam = PlanarFamily::new([0, 1, 0, -1]).unwrap();
        match singular_line(&fam) {
            SingularLine::Fiber { b, c, z } => {
                assert_eq!(b, Rational64::new(0, 1));
                assert_eq!(c, Rational64::new(1, 1));
                assert!((z.x, z.y) == (0.0, 1.0));
            }
            other => panic!("{other:?}"),
        }
        // depressed cubics: transverse
        let fam2 = PlanarFamily::new([0, 1, 0, 0]).unwrap();
        assert_eq!(singular_line(&fam2), SingularLine::Transverse);
        // (a, c, b, c) spans the same plane as (a, b, c, b)
        let fam3 = PlanarFamily::from_basis(&[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 1],
            vec![0, 0, 1, 0],
        ])
        .unwrap();
        assert_eq!(fam3, fam);
        // sign of the normal is irrelevant
        let fam4 = PlanarFamily::new([0, -1, 0, 1]).unwrap();
        assert_eq!(singular_line(&fam4), singular_line(&fam));
    }

    #[test]
    fn fiber_collapse_witnessed_directly() {
        // all (x^2+1)(dx+e) live in the family (a, b, c, b) and split to i
        for d in -5i64..=5 {
            for e in -5i64..=5 {
                if d == 0 {
                    continue;
                }
                let coeffs = [d, e, d, e];
                let f = IntPoly::new(&coeffs).unwrap();
                assert_eq!(f.coeffs()[1], f.coeffs()[3]);
                if !f.discriminant().is_negative() {
                    continue;
                }
                let t = split_cubic(&f).unwrap();
                assert!((t.base.to_complex() - Complex64::new(0.0, 1.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn transversality_screen() {
        // depressed cubics over the standard frame: nothing flagged
        let fam = PlanarFamily::new([0, 1, 0, 0]).unwrap();
        let rep = transversality_report(&fam, (-2.5, 2.5, 0.01, 2.0), 25);
        assert_eq!(rep.exact, SingularLine::Transverse);
        assert!(rep.flagged.is_empty(), "{:?}", rep.flagged);
        // (a, b, c, b): flags concentrate near i
        let fam2 = PlanarFamily::new([0, 1, 0, -1]).unwrap();
        let rep2 = transversality_report(&fam2, (-0.5, 0.5, 0.5, 1.5), 41);
        assert!(!rep2.flagged.is_empty());
        for s in &rep2.flagged {
            let d = ((s.z.0).powi(2) + (s.z.1 - 1.0).powi(2)).sqrt();
            assert!(d < 0.2, "flag far from i: {:?}", s);
        }
        // grid 0: exact result only
        let rep3 = transversality_report(&fam2, (-1.0, 1.0, 0.1, 2.0), 0);
        assert_eq!(rep3.samples, 0);
        assert!(matches!(rep3.exact, SingularLine::Fiber { .. }));
    }
}
