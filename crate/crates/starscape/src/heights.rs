//! Arithmetic-complexity measures: naive height, Mahler measure, Weil
//! height, root discriminant, and the PSL(2,Z)-minimized height of definite
//! quadratics via fundamental-domain reduction.

use crate::error::{GeoError, RootError};
use crate::hyper::MobiusMat;
use crate::poly::IntPoly;
use crate::roots;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Mahler measure M(f) = |lead| * prod max(1, |root|) over the effective
/// polynomial. Relative accuracy follows the root solver (<= 1e-8).
pub fn mahler_measure(p: &IntPoly, tol: f64) -> Result<f64, RootError> {
    let eff = p.effective_coeffs();
    if eff.len() == 1 {
        return Ok(eff[0].unsigned_abs() as f64);
    }
    let rs = roots::roots(p, tol)?;
    let mut m = eff[0].unsigned_abs() as f64;
    for z in rs.finite_roots() {
        let n = z.norm();
        if n > 1.0 {
            m *= n;
        }
    }
    Ok(m)
}

/// Weil height H(alpha) = M(f)^(1/deg) for a minimal polynomial.
pub fn weil_height(p: &IntPoly) -> Result<f64, RootError> {
    assert!(p.is_minimal(), "weil height requires a minimal polynomial");
    let m = mahler_measure(p, roots::DEFAULT_TOL)?;
    Ok(m.powf(1.0 / p.degree() as f64))
}

/// |disc|^(1/degree); zero discriminant is rejected.
pub fn root_discriminant(p: &IntPoly) -> Option<f64> {
    let d = p.discriminant();
    if d.is_zero() {
        return None;
    }
    Some(bigint_abs_root(&d, p.degree() as u32))
}

fn bigint_abs_root(n: &BigInt, k: u32) -> f64 {
    let mag = n.magnitude();
    let bits = mag.bits();
    if bits <= 52 {
        return (mag.to_f64().unwrap()).powf(1.0 / k as f64);
    }
    // |n|^(1/k) = exp(ln|n| / k) via the top bits
    let keep = 52.min(bits);
    let top = (mag >> (bits - keep)).to_f64().unwrap();
    let ln = top.ln() + ((bits - keep) as f64) * std::f64::consts::LN_2;
    (ln / k as f64).exp()
}

/// Fundamental-domain reduction of a definite integer quadratic. The
/// reduced form has root z with Re z in (-1/2, 1/2] and |z| >= 1, with the
/// |z| = 1 boundary held at Re z >= 0. Returns the reduced polynomial and a
/// witness A with act(A, input) = reduced; the discriminant is untouched.
pub fn psl_reduce_quadratic(p: &IntPoly) -> Result<(IntPoly, MobiusMat), GeoError> {
    if p.degree() != 2 {
        return Err(GeoError::UnsupportedDegree(p.degree()));
    }
    let d = p.discriminant();
    if !d.is_negative() {
        return Err(GeoError::NonNegativeDiscriminant(d.to_string()));
    }
    let c = p.coeffs();
    // canonical + negative disc means a > 0, c > 0
    let (mut a, mut b, mut cc) = (c[0], c[1], c[2]);
    let mut m = MobiusMat::IDENTITY;
    loop {
        // translate: bring b into [-a, a), i.e. Re z into (-1/2, 1/2].
        // b -> b - 2ka corresponds to z -> z + k, witness T^k.
        let k = (b + a).div_euclid(2 * a);
        if k != 0 {
            let (nb, ncc) = (b - 2 * k * a, a * k * k - b * k + cc);
            b = nb;
            cc = ncc;
            m = MobiusMat::translation(k).compose(m);
        }
        if cc < a {
            // invert: z -> -1/z swaps a and c, negates b; witness S.
            let (na, nb, ncc) = (cc, -b, a);
            a = na;
            b = nb;
            cc = ncc;
            m = MobiusMat::S.compose(m);
            continue;
        }
        if cc == a && b > 0 {
            // |z| = 1 boundary: keep the Re z >= 0 representative
            b = -b;
            m = MobiusMat::S.compose(m);
            continue;
        }
        break;
    }
    let reduced = IntPoly::new(&[a, b, cc]).expect("reduction keeps nonzero");
    Ok((reduced, m))
}

/// Naive height minimized over the PSL(2,Z) orbit, for definite quadratics.
pub fn psl_height(p: &IntPoly) -> Result<i64, GeoError> {
    let (r, _) = psl_reduce_quadratic(p)?;
    Ok(r.naive_height())
}

/// All complexity measures of one polynomial, as exported in datasets.
#[derive(Clone, Debug, Serialize)]
pub struct HeightReport {
    pub naive: i64,
    pub mahler: f64,
    pub weil: f64,
    pub abs_disc: BigInt,
    pub root_disc: Option<f64>,
    /// Reduced naive height; degree-2 negative-discriminant only.
    pub psl_naive: Option<i64>,
}

pub fn height_report(p: &IntPoly) -> Result<HeightReport, RootError> {
    let mahler = mahler_measure(p, roots::DEFAULT_TOL)?;
    let weil = mahler.powf(1.0 / p.degree() as f64);
    let psl_naive = if p.degree() == 2 { psl_height(p).ok() } else { None };
    Ok(HeightReport {
        naive: p.naive_height(),
        mahler,
        weil,
        abs_disc: p.discriminant().abs(),
        root_disc: root_discriminant(p),
        psl_naive,
    })
}

/// Margins for the height-comparison inequalities; every `ok` flag uses a
/// 1e-9 relative slack so exact-equality cases pass cleanly.
#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    /// binom(d, floor(d/2))^-1 H(f) <= M(f): (lhs, rhs)
    pub wellknown_lower: (f64, f64),
    /// M(f) <= sqrt(d+1) H(f): (lhs, rhs)
    pub wellknown_upper: (f64, f64),
    /// |disc| <= d^d (d+1)^(d-1) H(f)^(2d-2): (lhs, rhs)
    pub disc_upper: (f64, f64),
    /// degree 2 only: |disc| >= 3 H_psl and |disc| >= 3 H_psl^2 / N_psl
    pub disc_lower_quadratic: Option<((f64, f64), (f64, f64))>,
    pub all_hold: bool,
}

fn binom(n: u64, k: u64) -> u64 {
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn verify_height_inequalities(p: &IntPoly) -> Result<InequalityReport, RootError> {
    assert!(p.is_minimal(), "inequality suite requires a minimal polynomial");
    let d = p.degree() as u64;
    let h = p.naive_height() as f64;
    let m = mahler_measure(p, roots::DEFAULT_TOL)?;
    let disc = p.discriminant().abs();
    let disc_f = disc.to_f64().unwrap_or(f64::INFINITY);

    let lower = (h / binom(d, d / 2) as f64, m);
    let upper = (m, ((d + 1) as f64).sqrt() * h);
    let dd = (d as f64).powi(d as i32) * ((d + 1) as f64).powi(d as i32 - 1);
    let disc_upper = (disc_f, dd * h.powi(2 * d as i32 - 2));

    let disc_lower_quadratic = if d == 2 && p.discriminant().is_negative() {
        let (reduced, _) = psl_reduce_quadratic(p).expect("definite quadratic");
        let hp = reduced.naive_height() as f64;
        let n_psl = (reduced.coeffs()[2] as f64 / reduced.coeffs()[0] as f64).abs();
        Some(((disc_f, 3.0 * hp), (disc_f, 3.0 * hp * hp / n_psl)))
    } else {
        None
    };

    let le = |l: f64, r: f64| l <= r * (1.0 + 1e-9) + 1e-12;
    let mut all = le(lower.0, lower.1) && le(upper.0, upper.1) && le(disc_upper.0, disc_upper.1);
    if let Some((q1, q2)) = disc_lower_quadratic {
        all = all && le(q1.1, q1.0) && le(q2.1, q2.0);
    }
    Ok(InequalityReport {
        wellknown_lower: lower,
        wellknown_upper: upper,
        disc_upper,
        disc_lower_quadratic,
        all_hold: all,
    })
}
