//! Diophantine approximation of complex targets by quadratic irrationals,
//! measured in the hyperbolic metric with the discriminant as the
//! complexity gauge.
//!
//! Internally a target alpha carries the frame vector (alpha1, 1, alpha2)
//! with alpha1 = 1/(alpha + conj alpha) and alpha2 =
//! (alpha conj alpha)/(alpha + conj alpha); an approximant beta appears as
//! the integer triple [p1 : n : p2]. The triple with middle sign flipped,
//! (p1, -n, p2), is the minimal polynomial of beta. Both the bilinear form
//! and the discriminant are invariant under that flip, so distances
//! computed frame-to-frame equal the honest hyperbolic distances
//! root-to-root.
//!
//! Near-imaginary targets (|Re| < 0.1) are translated by z -> z + 1 before
//! any frame work and every reported polynomial is translated back; the
//! whole theory is PSL(2,Z)-invariant so nothing else changes.

use crate::error::{DiophError, GeoError};
use crate::hyper::{self, acosh1p, Geodesic, MobiusMat};
use crate::lattice;
use crate::numeric::{convergents, pi, pow10, refine_root, ComplexReal, Real};
use crate::poly::IntPoly;
use crate::roots;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::cmp::Ordering;

pub const DEFAULT_PREC: u32 = 50;
pub const MAX_PREC: u32 = 400;
pub const RELATION_BOUND: i64 = 1_000_000;

/// Exactness of the target's trace s = alpha + conj(alpha) and norm
/// p = alpha conj(alpha); exact structure upgrades geodesic detection from
/// certified-numeric to exact.
#[derive(Clone, Debug, PartialEq)]
enum Exactness {
    /// Both rational: the target itself is quadratic (or rational).
    Quadratic,
    /// p rational, s not: exactly on the geodesic (-p_num, 0, p_den).
    NormRational { num: i64, den: i64 },
    /// s rational, p not: exactly on the geodesic (-s_num, s_den, 0).
    #[allow(dead_code)]
    TraceRational { num: i64, den: i64 },
    /// Algebraic of degree 3: provably on no rational geodesic.
    Cubic,
    /// No exact structure; certified LLL detection.
    Numeric,
}

/// A complex approximation target at working precision.
#[derive(Clone, Debug)]
pub struct Target {
    /// Working-frame value (the original shifted by `shift`).
    pub value: ComplexReal,
    /// Original alpha = value - shift.
    pub shift: i64,
    pub label: String,
    prec: u32,
    s: Real,
    p: Real,
    /// frame coefficients alpha1 = 1/s, alpha2 = p/s
    alpha1: Real,
    alpha2: Real,
    /// relation (a, b, c) with a + b s + c p = 0, equivalently
    /// a alpha1 + b + c alpha2 = 0 (working frame)
    geodesic_rel: Option<[i64; 3]>,
    pub is_quadratic: bool,
    /// minimal polynomial of the original alpha, when algebraic
    pub minpoly: Option<IntPoly>,
}

impl Target {
    /// Unit-circle target with rational abscissa x = num/den:
    /// alpha = x + i sqrt(1 - x^2). Trace and norm are both rational, so
    /// the target is quadratic.
    pub fn unit_circle_rational(num: i64, den: i64, prec: u32) -> Result<Target, DiophError> {
        assert!(den > 0 && num.abs() < den);
        let x = Real::from_ratio(num, den, prec);
        let y = Real::one(prec).sub(&x.mul(&x)).sqrt();
        let value = ComplexReal::new(x, y);
        Target::build(value, format!("unit-circle:{num}/{den}"), prec, Exactness::Quadratic, None)
    }

    /// Unit-circle target with abscissa (k_num/k_den)/pi; the norm is 1
    /// exactly, the trace is irrational.
    pub fn unit_circle_over_pi(k_num: i64, k_den: i64, prec: u32) -> Result<Target, DiophError> {
        let work = prec + 10;
        let x = Real::from_ratio(k_num, k_den, work).div(&pi(work));
        assert!(x.abs().cmp_real(&Real::one(work)) == Ordering::Less);
        let y = Real::one(work).sub(&x.mul(&x)).sqrt();
        let value = ComplexReal::new(x.with_prec(prec), y.with_prec(prec));
        Target::build(
            value,
            format!("unit-circle:{k_num}/{k_den}pi"),
            prec,
            Exactness::NormRational { num: 1, den: 1 },
            None,
        )
    }

    /// General point with coordinates num/den * pi^(-pi_pow), covering
    /// targets like (2/pi)(1 + i).
    pub fn point_over_pi(
        re: (i64, i64, u32),
        im: (i64, i64, u32),
        prec: u32,
    ) -> Result<Target, DiophError> {
        let work = prec + 10;
        let part = |(n, d, pw): (i64, i64, u32)| -> Real {
            let mut v = Real::from_ratio(n, d, work);
            for _ in 0..pw {
                v = v.div(&pi(work));
            }
            v.with_prec(prec)
        };
        let value = ComplexReal::new(part(re), part(im));
        Target::build(
            value,
            format!("point:{}/{}pi^{},{}/{}pi^{}", re.0, re.1, re.2, im.0, im.1, im.2),
            prec,
            Exactness::Numeric,
            None,
        )
    }

    /// The upper root of an integer polynomial, Newton-refined to `prec`
    /// digits. Quadratics become quadratic targets; irreducible cubics are
    /// exactly off every rational geodesic.
    pub fn algebraic(p: &IntPoly, prec: u32) -> Result<Target, DiophError> {
        let seed = roots::upper_root(p).map_err(DiophError::Roots)?;
        let value = refine_root(p.effective_coeffs(), (seed.re, seed.im), prec);
        let exact = match p.effective_degree() {
            2 => Exactness::Quadratic,
            3 if p.is_minimal() => Exactness::Cubic,
            _ => Exactness::Numeric,
        };
        Target::build(value, format!("poly:{:?}", p.coeffs()), prec, exact, Some(p.clone()))
    }

    /// Raw high-precision value with no exactness assumptions.
    pub fn from_value(value: ComplexReal, label: &str, prec: u32) -> Result<Target, DiophError> {
        Target::build(value, label.to_string(), prec, Exactness::Numeric, None)
    }

    /// Value known to satisfy |alpha|^2 = 1 exactly (e.g. a Liouville limit
    /// built on the unit circle).
    pub fn from_value_on_unit_circle(
        value: ComplexReal,
        label: &str,
        prec: u32,
    ) -> Result<Target, DiophError> {
        Target::build(
            value,
            label.to_string(),
            prec,
            Exactness::NormRational { num: 1, den: 1 },
            None,
        )
    }

    fn build(
        value: ComplexReal,
        label: String,
        prec: u32,
        exact: Exactness,
        minpoly: Option<IntPoly>,
    ) -> Result<Target, DiophError> {
        assert!(value.im.is_positive(), "target must lie in the upper half plane");
        // translate near-imaginary targets so s = 2 Re is safely nonzero
        let re = value.re.to_f64();
        let shift: i64 = if re.abs() < 0.1 { 1 } else { 0 };
        let value = ComplexReal::new(value.re.add(&Real::from_int(shift, prec)), value.im.clone());
        let s = value.re.add(&value.re);
        let p = value.norm_sqr();
        let alpha1 = s.recip();
        let alpha2 = p.div(&s);

        let (geodesic_rel, is_quadratic) = match exact {
            Exactness::Quadratic => (None, true),
            Exactness::Cubic => (None, false),
            Exactness::NormRational { num, den } => {
                if shift == 0 {
                    (Some(normalize_rel([-num, 0, den])), false)
                } else {
                    // the shift moves the norm to p + s + 1; re-detect
                    (relation_for(&s, &p, prec)?, false)
                }
            }
            Exactness::TraceRational { num, den } => {
                let num = num + 2 * shift * den;
                (Some(normalize_rel([-num, den, 0])), false)
            }
            Exactness::Numeric => (relation_for(&s, &p, prec)?, false),
        };

        Ok(Target {
            value,
            shift,
            label,
            prec,
            s,
            p,
            alpha1,
            alpha2,
            geodesic_rel,
            is_quadratic,
            minpoly,
        })
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn trace(&self) -> &Real {
        &self.s
    }

    pub fn norm(&self) -> &Real {
        &self.p
    }

    pub fn alpha1(&self) -> &Real {
        &self.alpha1
    }

    pub fn alpha2(&self) -> &Real {
        &self.alpha2
    }

    /// The rational geodesic carrying the target (working frame), in pole
    /// form.
    pub fn geodesic(&self) -> Option<Geodesic> {
        self.geodesic_rel
            .and_then(|r| hyper::relation_to_geodesic(Some(r)).ok().flatten())
    }

    pub fn geodesic_relation(&self) -> Option<[i64; 3]> {
        self.geodesic_rel
    }

    /// cosh(d) - 1 from the target to the root of the frame triple,
    /// through the upper-half-plane formula (no cancellation).
    fn coshm1_to_frame(&self, g: &FrameVec) -> Option<Real> {
        let prec = self.prec;
        let disc = g.disc();
        if !disc.is_negative() {
            return None;
        }
        // root of (p1, -n, p2): x = n/(2 p1), y = sqrt(|disc|)/(2 p1)
        let two_a = BigInt::from(2) * &g.a;
        let x = Real::from_ratio(g.b.clone(), two_a.clone(), prec);
        let y = Real::from_int(-disc, prec).sqrt().div(&Real::from_int(two_a, prec));
        let dx = x.sub(&self.value.re);
        let dy = y.sub(&self.value.im);
        let num = dx.mul(&dx).add(&dy.mul(&dy));
        let den = y.mul(&self.value.im).mul_int(2);
        Some(num.div(&den))
    }
}

fn normalize_rel(mut r: [i64; 3]) -> [i64; 3] {
    let g = r.iter().fold(0i64, |g, &x| g.gcd(&x));
    let first = r.iter().find(|&&x| x != 0).copied().unwrap();
    let sgn = if first < 0 { -1 } else { 1 };
    for x in r.iter_mut() {
        *x /= g * sgn;
    }
    r
}

fn relation_for(s: &Real, p: &Real, prec: u32) -> Result<Option<[i64; 3]>, DiophError> {
    hyper::relation_search(s, p, RELATION_BOUND, prec)
        .map(|r| r.map(normalize_rel))
        .map_err(DiophError::Geometry)
}

/// Frame triple [p1 : n : p2], normalized primitive with positive lead;
/// (p1, -n, p2) is the minimal polynomial of the approximant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct FrameVec {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl FrameVec {
    fn new(a: BigInt, b: BigInt, c: BigInt) -> Option<FrameVec> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return None;
        }
        let g = a.gcd(&b).gcd(&c);
        let (mut a, mut b, mut c) = (a / &g, b / &g, c / &g);
        if [&a, &b, &c].into_iter().find(|x| !x.is_zero()).unwrap().is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        Some(FrameVec { a, b, c })
    }

    fn disc(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    fn min_poly(&self) -> Option<IntPoly> {
        let a = self.a.to_i64()?;
        let b = (-&self.b).to_i64()?;
        let c = self.c.to_i64()?;
        IntPoly::new(&[a, b, c]).ok()
    }
}

/// The linear forms of the approximation lemma at a raw frame triple:
/// L1 = n a1 - p1, L2 = -n a2 + p2, L3 = a1 p2 - a2 p1, with
/// L1 a2 + L2 a1 = L3 identically.
#[derive(Clone, Debug)]
pub struct LinearForms {
    pub l1: Real,
    pub l2: Real,
    pub l3: Real,
}

impl LinearForms {
    pub fn to_f64(&self) -> (f64, f64, f64) {
        (self.l1.to_f64(), self.l2.to_f64(), self.l3.to_f64())
    }
}

pub fn linear_forms(t: &Target, p1: i64, n: i64, p2: i64) -> LinearForms {
    let l1 = t.alpha1.mul_int(n).sub(&Real::from_int(p1, t.prec));
    let l2 = t.alpha2.mul_int(-n).add(&Real::from_int(p2, t.prec));
    let l3 = t.alpha1.mul_int(p2).sub(&t.alpha2.mul_int(p1));
    LinearForms { l1, l2, l3 }
}

/// |L1 a2 + L2 a1 - L3|; zero to working precision for any triple.
pub fn linear_forms_identity_residual(t: &Target, f: &LinearForms) -> Real {
    f.l1.mul(&t.alpha2).add(&f.l2.mul(&t.alpha1)).sub(&f.l3).abs()
}

/// One approximant record.
#[derive(Clone, Debug, Serialize)]
pub struct ApproxRecord {
    /// Minimal polynomial of beta, original frame.
    pub poly: IntPoly,
    /// Upper root of `poly`.
    pub beta: (f64, f64),
    /// |discriminant|
    pub disc: i128,
    /// Hyperbolic distance to the target.
    pub dist: f64,
    /// ln(cosh d - 1), stable when the distance underflows f64.
    pub ln_coshm1: f64,
    /// Quality exponent k with cosh(d) - 1 = |disc|^(-k).
    pub quality: f64,
    pub on_target_geodesic: bool,
}

fn make_record(t: &Target, g: &FrameVec) -> Option<ApproxRecord> {
    let coshm1 = t.coshm1_to_frame(g)?;
    if !coshm1.is_positive() {
        return None; // exact hit: quality undefined, excluded
    }
    let disc_abs = g.disc().abs().to_i128()?;
    let ln_coshm1 = coshm1.ln_f64();
    let quality = -ln_coshm1 / (disc_abs as f64).ln();
    let c = coshm1.to_f64();
    let dist = if c > 1e-290 {
        acosh1p(c)
    } else {
        // below f64: d ~ sqrt(2 (cosh d - 1))
        std::f64::consts::SQRT_2 * (0.5 * ln_coshm1).exp()
    };
    let on_geo = match t.geodesic_rel {
        Some([a, b, c]) => (&g.a * a + &g.b * b + &g.c * c).is_zero(),
        None => false,
    };
    let mp = g.min_poly()?;
    let poly = if t.shift == 0 {
        mp
    } else {
        hyper::act(MobiusMat::translation(-t.shift), &mp).ok()?
    };
    let beta = roots::upper_root(&poly).ok()?;
    Some(ApproxRecord {
        poly,
        beta: (beta.re, beta.im),
        disc: disc_abs,
        dist,
        ln_coshm1,
        quality,
        on_target_geodesic: on_geo,
    })
}

/// Repulsion between distinct definite quadratics: cosh(d) >= 1 +
/// (sqrt2 - 1)/|D1 D2|, strengthening to cosh(d) >= 1 + 1/|D| at equal
/// discriminants. Violations are decided in exact integer arithmetic.
#[derive(Clone, Debug, Serialize)]
pub struct RepulsionReport {
    pub actual: f64,
    pub bound: f64,
    pub margin: f64,
    pub equal_disc: bool,
    pub violated: bool,
}

pub fn repulsion_check(f1: &IntPoly, f2: &IntPoly) -> Result<RepulsionReport, DiophError> {
    if f1 == f2 {
        return Err(DiophError::Geometry(GeoError::IdenticalPoints));
    }
    let c1 = f1.coeffs();
    let c2 = f2.coeffs();
    assert!(c1.len() == 3 && c2.len() == 3);
    let (a1, b1, q1) = (c1[0] as i128, c1[1] as i128, c1[2] as i128);
    let (a2, b2, q2) = (c2[0] as i128, c2[1] as i128, c2[2] as i128);
    let d1 = b1 * b1 - 4 * a1 * q1;
    let d2 = b2 * b2 - 4 * a2 * q2;
    if d1 >= 0 || d2 >= 0 {
        return Err(DiophError::Geometry(GeoError::NonNegativeDiscriminant(format!(
            "{d1}, {d2}"
        ))));
    }
    let s = -(b1 * b2 - 2 * a1 * q2 - 2 * a2 * q1);
    let p = d1 * d2;
    let equal = d1 == d2;
    let violated = repulsion_violated(s, p, equal, d1.unsigned_abs());
    let actual = hyper::dist_coefs_int(f1, f2).map_err(DiophError::Geometry)?;
    let bound = if equal {
        acosh1p(1.0 / (d1.unsigned_abs() as f64))
    } else {
        acosh1p((std::f64::consts::SQRT_2 - 1.0) / p as f64)
    };
    Ok(RepulsionReport { actual, bound, margin: actual - bound, equal_disc: equal, violated })
}

/// Exact violation predicate, s = -<f1,f2>, p = D1 D2 > 0.
/// General: cosh d < 1 + (sqrt2 - 1)/p <=> s sqrt(p) < p + sqrt2 - 1
/// <=> A < 2 sqrt2 B with A = s^2 p - p^2 + 2p - 3, B = p - 1 >= 0.
/// Equal discriminants: cosh d < 1 + 1/|D| <=> s < |D| + 1.
pub(crate) fn repulsion_violated(s: i128, p: i128, equal: bool, abs_d: u128) -> bool {
    if s <= 0 {
        return true; // distinct hyperbolic points always have s > sqrt(p)
    }
    if equal {
        return s < abs_d as i128 + 1;
    }
    let a = s * s * p - p * p + 2 * p - 3;
    let b = p - 1;
    if a < 0 {
        return true;
    }
    let a = BigInt::from(a);
    let b = BigInt::from(b);
    &a * &a < BigInt::from(8) * &b * &b
}

/// Exhaustive repulsion scan over distinct primitive definite quadratics
/// with |a|,|b|,|c| <= bound: (forms, pairs, violations of either bound).
pub fn repulsion_scan(bound: i64) -> (usize, u64, u64) {
    let mut forms: Vec<(i128, i128, i128, i128)> = Vec::new();
    for a in 1..=bound {
        for b in -bound..=bound {
            for c in 1..=bound {
                let d = b * b - 4 * a * c;
                if d >= 0 {
                    continue;
                }
                match IntPoly::new(&[a, b, c]) {
                    Ok(f) if f.coeffs() == [a, b, c] => {}
                    _ => continue,
                }
                forms.push((a as i128, b as i128, c as i128, d as i128));
            }
        }
    }
    use rayon::prelude::*;
    let n = forms.len();
    let (pairs, violations) = (0..n)
        .into_par_iter()
        .map(|i| {
            let (a1, b1, c1, d1) = forms[i];
            let mut pairs = 0u64;
            let mut bad = 0u64;
            for &(a2, b2, c2, d2) in &forms[i + 1..] {
                pairs += 1;
                let s = -(b1 * b2 - 2 * a1 * c2 - 2 * a2 * c1);
                if repulsion_violated(s, d1 * d2, d1 == d2, d1.unsigned_abs()) {
                    bad += 1;
                }
            }
            (pairs, bad)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    (n, pairs, violations)
}

/// Geometric schedule of pigeonhole resolutions Q.
#[derive(Clone, Copy, Debug)]
pub struct QSchedule {
    pub start: u64,
    pub factor: u64,
    pub count: usize,
}

impl Default for QSchedule {
    fn default() -> Self {
        QSchedule { start: 4, factor: 2, count: 40 }
    }
}

impl QSchedule {
    fn values(&self) -> Vec<u64> {
        let mut q = self.start;
        let mut out = Vec::with_capacity(self.count);
        for _ in 0..self.count {
            out.push(q);
            q = q.saturating_mul(self.factor);
        }
        out
    }
}

/// The lower bound of the approximation lemma needs d < acosh 2; stream
/// records above that are discarded.
fn close_enough(r: &ApproxRecord) -> bool {
    r.dist < 2.0f64.acosh()
}

/// Dirichlet stream on the target's rational geodesic: each continued
/// fraction convergent q0/n0 of alpha1 yields the frame triple
/// [c q0 : c n0 : -b n0 - a q0], on the geodesic by construction. The
/// quality exponent approaches 2.
pub fn dirichlet_geodesic(
    t: &Target,
    schedule: QSchedule,
    max_records: usize,
) -> Result<Vec<ApproxRecord>, DiophError> {
    if t.is_quadratic {
        return Err(DiophError::QuadraticTarget);
    }
    let [a, b, c] = t.geodesic_rel.ok_or(DiophError::NotOnGeodesic)?;
    let qs = schedule.values();
    let max_q = *qs.last().unwrap_or(&4);
    let conv = convergents(&t.alpha1, &BigInt::from(max_q));
    let mut out: Vec<ApproxRecord> = Vec::new();
    let mut seen: std::collections::HashSet<FrameVec> = std::collections::HashSet::new();
    for q in qs {
        if out.len() >= max_records {
            break;
        }
        let Some((q0, n0)) = conv
            .iter()
            .take_while(|(_, den)| den <= &BigInt::from(q))
            .last()
            .cloned()
        else {
            continue;
        };
        if n0.is_zero() {
            continue;
        }
        let g = FrameVec::new(
            BigInt::from(c) * &q0,
            BigInt::from(c) * &n0,
            BigInt::from(-b) * &n0 + BigInt::from(-a) * &q0,
        );
        let Some(g) = g else { continue };
        debug_assert!((&g.a * a + &g.b * b + &g.c * c).is_zero());
        if !g.disc().is_negative() || !seen.insert(g.clone()) {
            continue;
        }
        if let Some(rec) = make_record(t, &g) {
            if close_enough(&rec) {
                out.push(rec);
            }
        }
    }
    Ok(out)
}

/// General Dirichlet stream: simultaneous approximation of (alpha1,
/// alpha2) with n <= Q^2, by exact pigeonhole for Q <= 64 and lattice
/// reduction beyond. The quality exponent approaches 3/2.
pub fn dirichlet_general(
    t: &Target,
    schedule: QSchedule,
    max_records: usize,
) -> Result<Vec<ApproxRecord>, DiophError> {
    if t.is_quadratic {
        return Err(DiophError::QuadraticTarget);
    }
    let mut out: Vec<ApproxRecord> = Vec::new();
    let mut seen: std::collections::HashSet<FrameVec> = std::collections::HashSet::new();
    for q in schedule.values() {
        if out.len() >= max_records {
            break;
        }
        let triple = if q <= 64 {
            pigeonhole_simultaneous(t, q)
        } else {
            lll_simultaneous(t, q)
        };
        let Some((p1, n, p2)) = triple else { continue };
        let g = match FrameVec::new(p1, n, p2) {
            Some(g) => g,
            None => continue,
        };
        if !g.disc().is_negative() || !seen.insert(g.clone()) {
            continue;
        }
        if let Some(rec) = make_record(t, &g) {
            if close_enough(&rec) {
                out.push(rec);
            }
        }
    }
    Ok(out)
}

/// Exact pigeonhole: first n in 1..=Q^2 with max(||n a1||, ||n a2||) < 1/Q
/// (distance to the nearest integer), falling back to the overall best n.
fn pigeonhole_simultaneous(t: &Target, q: u64) -> Option<(BigInt, BigInt, BigInt)> {
    let threshold = Real::from_ratio(1, q as i64, t.prec);
    let mut best: Option<(Real, BigInt, BigInt, BigInt)> = None;
    for n in 1..=(q * q) {
        let na1 = t.alpha1.mul_int(n as i64);
        let na2 = t.alpha2.mul_int(n as i64);
        let p1 = na1.round_int();
        let p2 = na2.round_int();
        let r1 = na1.sub(&Real::from_int(p1.clone(), t.prec)).abs();
        let r2 = na2.sub(&Real::from_int(p2.clone(), t.prec)).abs();
        let m = if r1.cmp_real(&r2) == Ordering::Greater { r1 } else { r2 };
        if m.cmp_real(&threshold) == Ordering::Less {
            return Some((p1, BigInt::from(n), p2));
        }
        if best.as_ref().map_or(true, |(b, ..)| m.cmp_real(b) == Ordering::Less) {
            best = Some((m, p1, BigInt::from(n), p2));
        }
    }
    best.map(|(_, p1, n, p2)| (p1, n, p2))
}

/// LLL route: rows (C a1, C a2, W), (-C, 0, 0), (0, -C, 0) with
/// W ~ C/Q^3, balancing residuals ~1/Q against n ~ Q^2.
fn lll_simultaneous(t: &Target, q: u64) -> Option<(BigInt, BigInt, BigInt)> {
    let c = pow10(t.prec);
    let w = (&c / BigInt::from(q).pow(3)).max(BigInt::from(1));
    let ca1 = t.alpha1.mant().clone();
    let ca2 = t.alpha2.mant().clone();
    let mut basis = vec![
        vec![ca1.clone(), ca2.clone(), w.clone()],
        vec![-&c, BigInt::zero(), BigInt::zero()],
        vec![BigInt::zero(), -&c, BigInt::zero()],
    ];
    lattice::lll(&mut basis);
    for row in lattice::sorted_by_norm(&basis) {
        if row[2].is_zero() {
            continue;
        }
        let row: Vec<BigInt> = if row[2].is_negative() {
            row.iter().map(|x| -x).collect()
        } else {
            row
        };
        let n = &row[2] / &w;
        if n.is_zero() {
            continue;
        }
        let p1 = (&n * &ca1 - &row[0]) / &c;
        let p2 = (&n * &ca2 - &row[1]) / &c;
        return Some((p1, n, p2));
    }
    None
}

/// For every admissible |D| <= disc_bound, the definite quadratic of that
/// discriminant nearest the target (within the cosh - 1 cap), sorted by
/// quality descending. Exact hits are excluded by construction.
pub fn best_approximants(t: &Target, disc_bound: i64) -> Result<Vec<ApproxRecord>, DiophError> {
    if disc_bound > 1_000_000 {
        return Err(DiophError::BoundTooLarge(disc_bound));
    }
    use rayon::prelude::*;
    let mut out: Vec<ApproxRecord> = (3..=disc_bound)
        .into_par_iter()
        .filter(|d| d % 4 == 0 || d % 4 == 3)
        .filter_map(|d| {
            nearest_form_at_disc(t, d, coshm1_cap(d)).and_then(|g| make_record(t, &g))
        })
        .collect();
    out.sort_by(|a, b| b.quality.total_cmp(&a.quality).then(a.disc.cmp(&b.disc)));
    Ok(out)
}

/// Cap on cosh(d) - 1 per discriminant: generous above the Dirichlet
/// envelope K/D^{3/2} while keeping enumeration windows tiny.
fn coshm1_cap(d: i64) -> f64 {
    (100.0 / d as f64).min(1.0)
}

/// The form of discriminant exactly -d minimizing cosh(d) - 1 to the
/// target among those within the cap; None when the window is empty.
fn nearest_form_at_disc(t: &Target, d: i64, cap: f64) -> Option<FrameVec> {
    let (x, y) = t.value.to_f64();
    let sq = (d as f64).sqrt();
    // hyperbolic ball cosh-1 <= cap around alpha: Im in [y/e, y e]
    let e = 1.0 + cap + (cap * (cap + 2.0)).sqrt();
    let a_lo = (sq / (2.0 * y * e)).ceil().max(1.0) as i64;
    let a_hi = (sq * e / (2.0 * y)).floor() as i64;
    let mut best: Option<(f64, i64, i64, i64)> = None;
    for a in a_lo..=a_hi {
        let v = sq / (2.0 * a as f64);
        let room = cap * 2.0 * v * y - (v - y) * (v - y);
        if room < 0.0 {
            continue;
        }
        let du = room.sqrt();
        let b_lo = (-2.0 * a as f64 * (x + du)).ceil() as i64;
        let b_hi = (-2.0 * a as f64 * (x - du)).floor() as i64;
        for b in b_lo..=b_hi {
            let num = b * b + d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if gcd3(a, b, c) != 1 {
                continue;
            }
            let u = -(b as f64) / (2.0 * a as f64);
            let coshm1 = ((u - x) * (u - x) + (v - y) * (v - y)) / (2.0 * v * y);
            if coshm1 > cap {
                continue;
            }
            if best.as_ref().map_or(true, |(c0, ..)| coshm1 < *c0) {
                best = Some((coshm1, a, b, c));
            }
        }
    }
    best.map(|(_, a, b, c)| {
        FrameVec::new(BigInt::from(a), BigInt::from(-b), BigInt::from(c)).unwrap()
    })
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    a.gcd(&b).gcd(&c)
}

/// Violators of the exponent bound cosh(d) - 1 <= |D|^(-exponent) up to
/// disc_bound, split by membership of the target's rational geodesic. The
/// enumeration is generic in the target; finiteness claims belong to
/// algebraic ones.
#[derive(Clone, Debug, Serialize)]
pub struct RothScan {
    pub exponent: f64,
    pub disc_bound: i64,
    pub on_geodesic: Vec<ApproxRecord>,
    pub off_geodesic: Vec<ApproxRecord>,
}

impl RothScan {
    pub fn violators(&self) -> impl Iterator<Item = &ApproxRecord> {
        self.on_geodesic.iter().chain(self.off_geodesic.iter())
    }
}

pub fn roth_scan(t: &Target, exponent: f64, disc_bound: i64) -> Result<RothScan, DiophError> {
    if disc_bound > 10_000_000 {
        return Err(DiophError::BoundTooLarge(disc_bound));
    }
    use rayon::prelude::*;
    let mut hits: Vec<ApproxRecord> = (3..=disc_bound)
        .into_par_iter()
        .filter(|d| d % 4 == 0 || d % 4 == 3)
        .filter_map(|d| {
            let cap = (d as f64).powf(-exponent) * 4.0; // f64 prefilter margin
            let g = nearest_form_at_disc(t, d, cap)?;
            let rec = make_record(t, &g)?;
            // the decisive check uses the working-precision value
            if rec.ln_coshm1 <= -exponent * (d as f64).ln() {
                Some(rec)
            } else {
                None
            }
        })
        .collect();
    hits.sort_by_key(|r| r.disc);
    let (on, off) = hits.into_iter().partition(|r| r.on_target_geodesic);
    Ok(RothScan { exponent, disc_bound, on_geodesic: on, off_geodesic: off })
}

/// Least-squares slope of ln(cosh d - 1) against ln |D|.
pub fn regression_slope(records: &[ApproxRecord]) -> f64 {
    if records.len() < 2 {
        return f64::NAN;
    }
    let n = records.len() as f64;
    let xs: Vec<f64> = records.iter().map(|r| (r.disc as f64).ln()).collect();
    let ys: Vec<f64> = records.iter().map(|r| r.ln_coshm1).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut num, mut den) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(&ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}

/// Sliding-window slopes over records sorted by discriminant.
pub fn window_slopes(records: &[ApproxRecord], window: usize, step: usize) -> Vec<f64> {
    let mut sorted: Vec<ApproxRecord> = records.to_vec();
    sorted.sort_by_key(|r| r.disc);
    let mut out = Vec::new();
    let mut i = 0;
    while i + window <= sorted.len() {
        out.push(regression_slope(&sorted[i..i + window]));
        i += step;
    }
    out
}

/// One form of a Liouville chain; the coefficients outgrow i64 within a
/// few steps.
#[derive(Clone, Debug)]
pub struct ChainForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl ChainForm {
    pub fn abs_disc(&self) -> BigInt {
        (BigInt::from(4) * &self.a * &self.c - &self.b * &self.b).abs()
    }

    fn root(&self, prec: u32) -> ComplexReal {
        let two_a = BigInt::from(2) * &self.a;
        let x = Real::from_ratio(-&self.b, two_a.clone(), prec);
        let y = Real::from_int(self.abs_disc(), prec)
            .sqrt()
            .div(&Real::from_int(two_a, prec));
        ComplexReal::new(x, y)
    }
}

#[derive(Clone, Debug)]
pub struct LiouvilleChain {
    pub forms: Vec<ChainForm>,
    /// ln of the cosh - 1 chain thresholds 1/|D_k|^k.
    pub step_ln_bounds: Vec<f64>,
    /// Actual ln(cosh d - 1) between consecutive forms.
    pub step_ln_actuals: Vec<f64>,
    pub limit: ComplexReal,
    pub prec: u32,
}

impl LiouvilleChain {
    pub fn steps_completed(&self) -> usize {
        self.forms.len().saturating_sub(1)
    }
}

/// Exact chain inequality cosh d(f1, f2) < 1 + 1/D1^k, squared to
/// S^2 D1^(2k) < (D1^k + 1)^2 D1 D2 over BigInt.
pub fn chain_step_holds(f1: &ChainForm, f2: &ChainForm, k: u32) -> bool {
    let d1 = f1.abs_disc();
    let d2 = f2.abs_disc();
    if d1 < BigInt::from(2) {
        return false;
    }
    let s = -(&f1.b * &f2.b - BigInt::from(2) * &f1.a * &f2.c - BigInt::from(2) * &f2.a * &f1.c);
    if !s.is_positive() {
        return false;
    }
    let d1k = d1.pow(k);
    let lhs = &s * &s * &d1k * &d1k;
    let rhs = (&d1k + 1u32).pow(2) * &d1 * &d2;
    lhs < rhs
}

/// Greedy Liouville chain on the unit circle, discriminants as small as
/// the repulsion bound permits, chain inequalities verified exactly at
/// every step. Stops once the next step could no longer move the first
/// `prec` digits of the limit; this primitive returns the partial chain,
/// `liouville_build` turns a shortfall into the precision error.
///
/// Every unit-circle form (A, B, A) has rational abscissa -B/2A = p/q, and
/// a Farey neighbor p'/q' (|p' q - p q'| = 1) at denominator q' ~
/// D^(k/2)/q sits close enough that the chain inequality holds; this keeps
/// the discriminant growth at the repulsion-forced minimum D^(k-1) and the
/// whole construction in exact integers.
pub fn liouville_extend(max_steps: usize, prec: u32) -> LiouvilleChain {
    let mut forms = vec![ChainForm {
        a: BigInt::from(1),
        b: BigInt::from(-1),
        c: BigInt::from(1),
    }];
    // abscissa of the current form as a reduced fraction
    let mut p_cur = BigInt::from(1);
    let mut q_cur = BigInt::from(2);
    let mut ln_bounds = Vec::new();
    let mut ln_actuals = Vec::new();
    for k in 1..=max_steps {
        let cur = forms.last().unwrap().clone();
        let d1 = cur.abs_disc();
        // precision exhaustion rule: steps confined to balls below
        // 10^(-2 prec) can no longer alter the reported limit
        let d1_log10 = log10_bigint(&d1);
        if (k as f64) * d1_log10 > 2.0 * prec as f64 {
            break;
        }
        // abscissa gap 1/(q q') costs cosh-1 <= (q q')^-2 y^-4 with
        // y^2 = (q^2 - p^2)/q^2, so q' >= 2 q sqrt(D^k)/(q^2 - p^2) has a
        // factor-4 margin before the exact check
        let dk2 = d1.pow(k as u32).sqrt() + 1u32;
        let y2_den = &q_cur * &q_cur - &p_cur * &p_cur;
        let t_target: BigInt = BigInt::from(2) * &q_cur * &dk2 / &y2_den + 1u32;
        // Farey neighbor base: x p + y q = 1 gives p0' q - p q0' = 1 with
        // (p0', q0') = (y, -x); the fiber (p0' + t p, q0' + t q) walks
        // neighbors of every denominator class
        let eg = p_cur.extended_gcd(&q_cur);
        debug_assert!(eg.gcd == BigInt::from(1));
        let (p0, q0) = (eg.y.clone(), -eg.x.clone());
        let t0: BigInt = (&t_target - &q0).div_floor(&q_cur);
        let mut accepted = false;
        'search: for extra in 0..6 {
            // widen the size target geometrically if the margin was tight
            let base = &t0 * BigInt::from(1u32 << extra);
            for dt in 0..8u32 {
                let t = &base + dt;
                let qn = &q0 + &t * &q_cur;
                let pn = &p0 + &t * &p_cur;
                if qn <= q_cur || qn.abs() <= pn.abs() {
                    continue;
                }
                let g = qn.gcd(&(BigInt::from(2) * &pn));
                let cand = ChainForm {
                    a: &qn / &g,
                    b: BigInt::from(-2) * &pn / &g,
                    c: &qn / &g,
                };
                let d2 = cand.abs_disc();
                if d2 < BigInt::from(2) {
                    continue;
                }
                if chain_step_holds(&cur, &cand, k as u32) {
                    let s = -(&cur.b * &cand.b
                        - BigInt::from(2) * &cur.a * &cand.c
                        - BigInt::from(2) * &cand.a * &cur.c);
                    ln_actuals.push(ln_coshm1_exact(&s, &d1, &d2));
                    ln_bounds.push(-(k as f64) * d1_log10 * std::f64::consts::LN_10);
                    forms.push(cand);
                    p_cur = pn;
                    q_cur = qn;
                    accepted = true;
                    break 'search;
                }
            }
        }
        if !accepted {
            break;
        }
    }
    let limit = forms.last().unwrap().root(prec);
    LiouvilleChain { forms, step_ln_bounds: ln_bounds, step_ln_actuals: ln_actuals, limit, prec }
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    let keep = 53.min(bits);
    let top = (n.magnitude() >> (bits - keep)).to_f64().unwrap();
    top.ln() + (bits - keep) as f64 * std::f64::consts::LN_2
}

fn log10_bigint(n: &BigInt) -> f64 {
    ln_bigint(n) / std::f64::consts::LN_10
}

/// ln(cosh d - 1) from exact pair data:
/// cosh d - 1 = (S^2 - D1 D2)/(sqrt(D1 D2)(S + sqrt(D1 D2))), evaluated as
/// ln(S^2 - P) - ln(sqrt P) - ln(S + floor sqrt P) on integer magnitudes so
/// astronomically small values stay finite.
fn ln_coshm1_exact(s: &BigInt, d1: &BigInt, d2: &BigInt) -> f64 {
    let p = d1 * d2;
    let num = s * s - &p;
    if !num.is_positive() {
        return f64::NEG_INFINITY;
    }
    ln_bigint(&num) - 0.5 * ln_bigint(&p) - ln_bigint(&(s + p.sqrt()))
}

/// Spec-level build: errors when the requested step count exceeds what the
/// precision supports.
pub fn liouville_build(steps: usize, prec: u32) -> Result<LiouvilleChain, DiophError> {
    let chain = liouville_extend(steps, prec);
    if chain.steps_completed() < steps {
        return Err(DiophError::PrecisionExhausted {
            completed: chain.steps_completed(),
            requested: steps,
        });
    }
    Ok(chain)
}

/// Euclidean translation of a hyperbolic approximation record.
#[derive(Clone, Debug, Serialize)]
pub struct ClassicalRecord {
    pub euclid_dist: f64,
    pub hyp_dist: f64,
    pub h_psl: Option<i64>,
    pub n_psl: Option<f64>,
    /// |alpha - beta| / (Im(alpha) d_hyp), defined below d_hyp < 0.1.
    pub conformal_ratio: Option<f64>,
    /// ratio within 1 +- 0.05
    pub conformal_ok: Option<bool>,
    pub k_disc: f64,
    /// -ln|alpha - beta| / ln H_psl
    pub k_height: Option<f64>,
    /// |D| >= 3 H_psl
    pub disc_height_ok: Option<bool>,
}

pub fn classical_translate(t: &Target, r: &ApproxRecord) -> ClassicalRecord {
    let prec = t.prec;
    let alpha = ComplexReal::new(
        t.value.re.sub(&Real::from_int(t.shift, prec)),
        t.value.im.clone(),
    );
    let c = r.poly.coeffs();
    let two_a = BigInt::from(2) * BigInt::from(c[0]);
    let bx = Real::from_ratio(-BigInt::from(c[1]), two_a.clone(), prec);
    let by = Real::from_int(r.poly.discriminant().abs(), prec)
        .sqrt()
        .div(&Real::from_int(two_a, prec));
    let dx = bx.sub(&alpha.re);
    let dy = by.sub(&alpha.im);
    let dist2 = dx.mul(&dx).add(&dy.mul(&dy));
    let euclid = if dist2.is_positive() { (0.5 * dist2.ln_f64()).exp() } else { 0.0 };
    let im_alpha = alpha.im.to_f64();
    let (ratio, ok) = if r.dist > 0.0 && r.dist < 0.1 {
        let ratio = euclid / (im_alpha * r.dist);
        (Some(ratio), Some(ratio > 0.95 && ratio < 1.05))
    } else {
        (None, None)
    };
    let (h_psl, n_psl, disc_ok) = match crate::heights::psl_reduce_quadratic(&r.poly) {
        Ok((red, _)) => {
            let h = red.naive_height();
            let n = red.coeffs()[2] as f64 / red.coeffs()[0] as f64;
            (Some(h), Some(n), Some(r.disc >= 3 * h as i128))
        }
        Err(_) => (None, None, None),
    };
    let k_height = h_psl.and_then(|h| {
        if h > 1 && euclid > 0.0 {
            Some(-euclid.ln() / (h as f64).ln())
        } else {
            None
        }
    });
    ClassicalRecord {
        euclid_dist: euclid,
        hyp_dist: r.dist,
        h_psl,
        n_psl,
        conformal_ratio: ratio,
        conformal_ok: ok,
        k_disc: r.quality,
        k_height,
        disc_height_ok: disc_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::new(c).unwrap()
    }

    #[test]
    fn target_construction_and_frame() {
        let t = Target::from_value(ComplexReal::from_f64(1.0, 1.0, 60), "1+i", 60).unwrap();
        assert_eq!(t.shift, 0);
        assert!((t.alpha1().to_f64() - 0.5).abs() < 1e-15);
        assert!((t.alpha2().to_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn near_imaginary_targets_are_translated() {
        let t = Target::from_value(ComplexReal::from_f64(0.01, 1.0, 60), "near-i", 60).unwrap();
        assert_eq!(t.shift, 1);
        assert!((t.value.re.to_f64() - 1.01).abs() < 1e-12);
    }

    #[test]
    fn linear_forms_examples() {
        let t = Target::from_value(ComplexReal::from_f64(1.0, 1.0, 60), "1+i", 60).unwrap();
        let lf = linear_forms(&t, 1, -2, 2);
        let (l1, l2, l3) = lf.to_f64();
        assert!((l1 + 2.0).abs() < 1e-12);
        assert!((l2 - 4.0).abs() < 1e-12);
        assert!(l3.abs() < 1e-12);
        assert!(linear_forms_identity_residual(&t, &lf).to_f64() < 1e-25);
        // n = 0 reduces to (-p1, p2)
        let lf0 = linear_forms(&t, 3, 0, 5);
        let (l1, l2, _) = lf0.to_f64();
        assert_eq!((l1, l2), (-3.0, 5.0));
    }

    #[test]
    fn linear_forms_vanish_on_exact_frame_vector() {
        // beta = 1 + i: s = 2, p = 2, frame vector [1 : 2 : 2]
        let t = Target::from_value(ComplexReal::from_f64(1.0, 1.0, 60), "1+i", 60).unwrap();
        let lf = linear_forms(&t, 1, 2, 2);
        let (l1, l2, l3) = lf.to_f64();
        assert!(l1.abs() < 1e-12 && l2.abs() < 1e-12 && l3.abs() < 1e-12);
    }

    #[test]
    fn repulsion_examples() {
        let r = repulsion_check(&poly(&[1, 0, 1]), &poly(&[1, -2, 2])).unwrap();
        assert!(r.equal_disc && !r.violated);
        assert!((r.actual - 1.5f64.acosh()).abs() < 1e-12);
        assert!((r.bound - 1.25f64.acosh()).abs() < 1e-12);
        assert!(r.margin >= 0.0);
        let r2 = repulsion_check(&poly(&[1, 0, 1]), &poly(&[1, 0, 2])).unwrap();
        assert!(!r2.equal_disc && !r2.violated && r2.margin >= 0.0);
        assert!(repulsion_check(&poly(&[1, 0, 1]), &poly(&[2, 0, 2])).is_err());
    }

    #[test]
    fn repulsion_small_box_clean() {
        let (forms, pairs, violations) = repulsion_scan(6);
        assert!(forms > 100);
        assert!(pairs > 10_000);
        assert_eq!(violations, 0);
    }

    #[test]
    fn geodesic_stream_on_unit_circle() {
        let t = Target::unit_circle_over_pi(1, 1, 100).unwrap();
        assert_eq!(t.geodesic_relation(), Some([1, 0, -1]));
        let recs = dirichlet_geodesic(&t, QSchedule::default(), 20).unwrap();
        assert!(recs.len() >= 12, "got {}", recs.len());
        for r in &recs {
            assert!(r.on_target_geodesic);
            let c = r.poly.coeffs();
            assert_eq!(c[0], c[2], "unit circle forms have a = c: {:?}", r.poly);
            assert!(r.dist > 0.0);
        }
        let slope = regression_slope(&recs);
        assert!(slope <= -1.7, "slope {slope}");
    }

    #[test]
    fn general_stream_off_geodesic() {
        let t = Target::point_over_pi((2, 1, 1), (2, 1, 1), 100).unwrap();
        assert_eq!(t.geodesic_relation(), None);
        let recs =
            dirichlet_general(&t, QSchedule { start: 4, factor: 2, count: 44 }, 20).unwrap();
        assert!(recs.len() >= 12, "got {}", recs.len());
        for r in &recs {
            assert!(!r.on_target_geodesic);
            assert!(r.dist > 0.0);
        }
        let slope = regression_slope(&recs);
        assert!(slope <= -1.2, "slope {slope}");
    }

    #[test]
    fn pigeonhole_matches_contract() {
        let t = Target::point_over_pi((2, 1, 1), (2, 1, 1), 80).unwrap();
        for q in [4u64, 8, 16, 32] {
            let (p1, n, p2) = pigeonhole_simultaneous(&t, q).unwrap();
            let n64 = n.to_i64().unwrap();
            let r1 = t.alpha1.mul_int(n64).sub(&Real::from_int(p1, 80)).abs().to_f64();
            let r2 = t.alpha2.mul_int(n64).sub(&Real::from_int(p2, 80)).abs().to_f64();
            assert!(r1.max(r2) < 1.0 / q as f64, "q {q}");
            assert!(n <= BigInt::from(q * q));
        }
    }

    #[test]
    fn quadratic_target_rejected_by_streams() {
        let t = Target::unit_circle_rational(1, 2, 60).unwrap();
        assert!(t.is_quadratic);
        assert!(matches!(
            dirichlet_geodesic(&t, QSchedule::default(), 5),
            Err(DiophError::QuadraticTarget)
        ));
        assert!(matches!(
            dirichlet_general(&t, QSchedule::default(), 5),
            Err(DiophError::QuadraticTarget)
        ));
    }

    #[test]
    fn best_approximants_dominate_streams() {
        let t = Target::unit_circle_over_pi(1, 1, 100).unwrap();
        let stream = dirichlet_geodesic(&t, QSchedule::default(), 10).unwrap();
        let best = best_approximants(&t, 2000).unwrap();
        for s in &stream {
            if s.disc <= 2000 {
                if let Some(b) = best.iter().find(|b| b.disc == s.disc) {
                    assert!(
                        b.dist <= s.dist + 1e-12,
                        "disc {}: best {} vs stream {}",
                        s.disc,
                        b.dist,
                        s.dist
                    );
                }
            }
        }
        let d1 = best_approximants(&t, 500)
            .unwrap()
            .iter()
            .map(|r| r.dist)
            .fold(f64::INFINITY, f64::min);
        let d2 = best.iter().map(|r| r.dist).fold(f64::INFINITY, f64::min);
        assert!(d2 <= d1 + 1e-15);
    }

    #[test]
    fn best_approximants_near_quadratic_perturbation() {
        let prec = 100;
        let x = Real::from_ratio(1, 2, prec).add(&Real::from_ratio(1, pow10(20), prec));
        let y = Real::from_int(3, prec).sqrt().div(&Real::from_int(2, prec));
        let t = Target::from_value(ComplexReal::new(x, y), "perturbed", prec).unwrap();
        let best = best_approximants(&t, 100).unwrap();
        let top = &best[0];
        assert_eq!(top.poly.coeffs(), &[1, -1, 1]);
        let expect = 1e-20 / (3.0f64.sqrt() / 2.0);
        assert!((top.dist / expect - 1.0).abs() < 0.2, "dist {} vs {}", top.dist, expect);
    }

    #[test]
    fn roth_scan_cubic_target_stabilizes() {
        let t = Target::algebraic(&poly(&[1, 0, 1, 1]), 100).unwrap();
        assert_eq!(t.geodesic_relation(), None);
        let scan = roth_scan(&t, 2.0, 20_000).unwrap();
        assert!(scan.on_geodesic.is_empty());
        let max_disc = scan.off_geodesic.iter().map(|r| r.disc).max().unwrap_or(0);
        assert!(max_disc <= 10_000, "late violator at {max_disc}");
    }

    #[test]
    fn roth_scan_low_exponent_is_generous() {
        let t = Target::algebraic(&poly(&[1, 0, 1, 1]), 80).unwrap();
        let n1 = roth_scan(&t, 1.0, 2000).unwrap().off_geodesic.len();
        let n2 = roth_scan(&t, 2.0, 2000).unwrap().off_geodesic.len();
        assert!(n1 > n2, "exponent 1.0 admits more violators: {n1} vs {n2}");
        assert!(n1 > 20);
    }

    #[test]
    fn liouville_chain_exact_and_bounded() {
        let chain = liouville_extend(40, 120);
        let n = chain.steps_completed();
        assert!(n >= 4, "completed only {n} steps");
        for (k, w) in chain.forms.windows(2).enumerate() {
            assert!(chain_step_holds(&w[0], &w[1], (k + 1) as u32), "step {}", k + 1);
            assert!(w[0].abs_disc() >= BigInt::from(2));
        }
        for (a, b) in chain.step_ln_actuals.iter().zip(&chain.step_ln_bounds) {
            assert!(a < b, "{a} vs {b}");
        }
        // distance from the limit back to form m stays within a small
        // multiple of the step-m bound (telescoping)
        let t = Target::from_value_on_unit_circle(chain.limit.clone(), "liouville", 120).unwrap();
        for (m, f) in chain.forms.iter().enumerate().skip(1).take(n - 1) {
            let g = FrameVec::new(f.a.clone(), -&f.b, f.c.clone()).unwrap();
            if let Some(c) = t.coshm1_to_frame(&g) {
                if c.is_positive() {
                    let ln_d = 0.5 * c.ln_f64();
                    let ln_bound = 0.5 * chain.step_ln_bounds[m - 1];
                    assert!(
                        ln_d <= ln_bound + 3.0 * std::f64::consts::LN_2,
                        "tail escape at {m}: {ln_d} vs {ln_bound}"
                    );
                }
            }
        }
        assert!(matches!(
            liouville_build(40, 120),
            Err(DiophError::PrecisionExhausted { .. })
        ));
        assert_eq!(liouville_build(3, 120).unwrap().steps_completed(), 3);
    }

    #[test]
    fn liouville_limit_is_extremely_approximable() {
        let chain = liouville_extend(12, 600);
        let t = Target::from_value_on_unit_circle(chain.limit.clone(), "liouville", 600).unwrap();
        assert_eq!(t.geodesic_relation(), Some([1, 0, -1]));
        let mut decades_hit = std::collections::HashSet::new();
        for (idx, f) in chain.forms.iter().enumerate().skip(1) {
            let g = FrameVec::new(f.a.clone(), -&f.b, f.c.clone()).unwrap();
            let d = f.abs_disc();
            if let Some(c) = t.coshm1_to_frame(&g) {
                if c.is_positive() && idx >= 5 {
                    let ln_thr = -5.0 * ln_bigint(&d);
                    if c.ln_f64() <= ln_thr {
                        decades_hit.insert(d.to_string().len());
                    }
                }
            }
        }
        assert!(decades_hit.len() >= 2, "decades: {:?}", decades_hit);
    }

    #[test]
    fn classical_translation() {
        let t = Target::unit_circle_over_pi(1, 1, 100).unwrap();
        let recs = dirichlet_geodesic(&t, QSchedule::default(), 12).unwrap();
        let mut conformal_checked = 0;
        for r in &recs {
            let c = classical_translate(&t, r);
            assert!(c.euclid_dist > 0.0);
            if let Some(ok) = c.conformal_ok {
                assert!(ok, "conformal ratio {:?} for {:?}", c.conformal_ratio, r.poly);
                conformal_checked += 1;
            }
            if let Some(ok) = c.disc_height_ok {
                assert!(ok);
            }
        }
        assert!(conformal_checked > 0);
        // 22/7 sanity: |pi - 22/7| < 1/7^2
        let pi_ = pi(60).to_f64();
        assert!((pi_ - 22.0 / 7.0).abs() < 1.0 / 49.0);
    }
}
