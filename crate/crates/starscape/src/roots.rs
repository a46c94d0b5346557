//! Root solving for integer binary forms.
//!
//! Degree <= 2 is closed form. Higher degrees use Aberth-Ehrlich
//! simultaneous iteration on the squarefree part (multiplicities are
//! extracted exactly beforehand with Yun's algorithm, so the iteration only
//! ever sees simple roots), followed by Newton polishing. Roots at infinity
//! come from leading zero coefficients.

use crate::error::RootError;
use crate::poly::{squarefree_decomposition, IntPoly};
use num_complex::Complex64;

pub const DEFAULT_TOL: f64 = 1e-12;
const MAX_SWEEPS: u32 = 200;

/// One entry of a root multiset. Conjugate pairs are stored once, by their
/// upper-half-plane representative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RootEntry {
    Real { value: f64, mult: u32 },
    Pair { upper: Complex64, mult: u32 },
    Infinity { mult: u32 },
}

impl RootEntry {
    pub fn multiplicity(&self) -> u32 {
        match self {
            RootEntry::Real { mult, .. } => *mult,
            RootEntry::Pair { mult, .. } => *mult,
            RootEntry::Infinity { mult } => *mult,
        }
    }
}

/// Multiset of roots of a real binary form, with conjugate-pair structure.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub entries: Vec<RootEntry>,
    degree: usize,
}

impl RootSet {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// (real roots, conjugate pairs), counted with multiplicity; roots at
    /// infinity count as real (they lie on the boundary circle RP^1).
    pub fn signature(&self) -> (usize, usize) {
        let mut real = 0;
        let mut pairs = 0;
        for e in &self.entries {
            match e {
                RootEntry::Real { mult, .. } | RootEntry::Infinity { mult } => {
                    real += *mult as usize
                }
                RootEntry::Pair { mult, .. } => pairs += *mult as usize,
            }
        }
        (real, pairs)
    }

    /// All finite roots expanded with multiplicity, conjugates included.
    pub fn finite_roots(&self) -> Vec<Complex64> {
        let mut out = Vec::new();
        for e in &self.entries {
            match e {
                RootEntry::Real { value, mult } => {
                    for _ in 0..*mult {
                        out.push(Complex64::new(*value, 0.0));
                    }
                }
                RootEntry::Pair { upper, mult } => {
                    for _ in 0..*mult {
                        out.push(*upper);
                        out.push(upper.conj());
                    }
                }
                RootEntry::Infinity { .. } => {}
            }
        }
        out
    }

    /// Upper-half-plane representatives, one per conjugate pair (multiplicity
    /// collapsed), ordered by real part then imaginary part.
    pub fn upper_roots(&self) -> Vec<Complex64> {
        let mut v: Vec<Complex64> = self
            .entries
            .iter()
            .filter_map(|e| match e {
                RootEntry::Pair { upper, .. } => Some(*upper),
                _ => None,
            })
            .collect();
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    /// Real roots in ascending order (multiplicity collapsed, infinity
    /// excluded).
    pub fn real_roots(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .entries
            .iter()
            .filter_map(|e| match e {
                RootEntry::Real { value, .. } => Some(*value),
                _ => None,
            })
            .collect();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn infinity_multiplicity(&self) -> u32 {
        self.entries
            .iter()
            .map(|e| match e {
                RootEntry::Infinity { mult } => *mult,
                _ => 0,
            })
            .sum()
    }
}

/// Solve all roots of `p` with the given relative tolerance.
pub fn roots(p: &IntPoly, tol: f64) -> Result<RootSet, RootError> {
    if !(1e-15..=1e-6).contains(&tol) {
        return Err(RootError::BadTolerance(tol));
    }
    let inf_mult = p.leading_zeros() as u32;
    let eff = p.effective_coeffs();
    let mut entries = Vec::new();
    if inf_mult > 0 {
        entries.push(RootEntry::Infinity { mult: inf_mult });
    }
    if eff.len() > 1 {
        for (factor, mult) in squarefree_decomposition(eff) {
            // the solver returns conjugates in full; keep one entry per
            // pair (the upper representative) and every real root
            for z in solve_squarefree(&factor, tol)? {
                if z.im >= 0.0 {
                    entries.push(promote(z, mult));
                }
            }
        }
    }
    Ok(RootSet { entries, degree: p.degree() })
}

/// Raw solve of arbitrary coefficients (no multiplicity handling); used by
/// the factorization heuristics. Leading zeros are stripped.
pub fn solve_f64(coeffs: &[i64], tol: f64) -> Result<Vec<Complex64>, RootError> {
    let eff: Vec<i64> = coeffs.iter().skip_while(|&&c| c == 0).copied().collect();
    if eff.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (factor, mult) in squarefree_decomposition(&eff) {
        for z in solve_squarefree(&factor, tol)? {
            for _ in 0..mult {
                out.push(z);
            }
        }
    }
    Ok(out)
}

fn promote(z: Complex64, mult: u32) -> RootEntry {
    if z.im == 0.0 {
        RootEntry::Real { value: z.re, mult }
    } else {
        RootEntry::Pair { upper: Complex64::new(z.re, z.im.abs()), mult }
    }
}

/// Roots of a squarefree integer polynomial; real roots come back with
/// im = 0 exactly, complex ones as the upper representative of their pair
/// followed by nothing (pairing is collapsed by the caller via `promote`).
fn solve_squarefree(coeffs: &[i64], tol: f64) -> Result<Vec<Complex64>, RootError> {
    // strip roots at zero for conditioning
    let tz = coeffs.iter().rev().take_while(|&&c| c == 0).count();
    let body = &coeffs[..coeffs.len() - tz];
    let mut out: Vec<Complex64> = (0..tz).map(|_| Complex64::new(0.0, 0.0)).collect();
    let d = body.len() - 1;
    match d {
        0 => {}
        1 => out.push(Complex64::new(-(body[1] as f64) / body[0] as f64, 0.0)),
        2 => out.extend(quadratic_roots(body[0], body[1], body[2])),
        _ => out.extend(aberth(body, tol)?),
    }
    Ok(out)
}

fn quadratic_roots(a: i64, b: i64, c: i64) -> Vec<Complex64> {
    let disc = (b as i128) * (b as i128) - 4 * (a as i128) * (c as i128);
    let (af, bf) = (a as f64, b as f64);
    if disc < 0 {
        let y = (disc.unsigned_abs() as f64).sqrt() / (2.0 * af);
        let x = -bf / (2.0 * af);
        vec![Complex64::new(x, y.abs()), Complex64::new(x, -y.abs())]
    } else {
        let sd = (disc as f64).sqrt();
        // stable form: avoid cancellation in -b +- sd
        let q = -0.5 * (bf + if bf >= 0.0 { sd } else { -sd });
        if q == 0.0 {
            vec![Complex64::new(0.0, 0.0), Complex64::new(-bf / af, 0.0)]
        } else {
            vec![Complex64::new(q / af, 0.0), Complex64::new(c as f64 / q, 0.0)]
        }
    }
}

/// Aberth-Ehrlich simultaneous iteration with Newton polish and real
/// snapping. Initial guesses sit on a perturbed circle of radius
/// 1 + H(f)/|a_d|.
fn aberth(coeffs: &[i64], tol: f64) -> Result<Vec<Complex64>, RootError> {
    let d = coeffs.len() - 1;
    let cf: Vec<f64> = coeffs.iter().map(|&c| c as f64).collect();
    let deriv: Vec<f64> = (0..d).map(|i| cf[i] * (d - i) as f64).collect();
    let height = coeffs.iter().map(|c| c.abs()).max().unwrap() as f64;
    let radius = 1.0 + height / (coeffs[0].abs() as f64);

    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64) + 0.43;
            Complex64::from_polar(radius * (1.0 + 0.02 * (k as f64 % 3.0)), angle)
        })
        .collect();

    let eval = |c: &[f64], x: Complex64| -> Complex64 {
        c.iter().fold(Complex64::new(0.0, 0.0), |acc, &k| acc * x + k)
    };

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut max_step = 0.0f64;
        for i in 0..d {
            let fz = eval(&cf, z[i]);
            let dfz = eval(&deriv, z[i]);
            let newton = if dfz.norm() == 0.0 {
                Complex64::new(tol, tol)
            } else {
                fz / dfz
            };
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    sum += (z[i] - z[j]).finv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * sum;
            let step = if denom.norm() == 0.0 { newton } else { newton / denom };
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < tol * 0.01 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(RootError::NonConvergence { sweeps: MAX_SWEEPS });
    }

    // Newton polish
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let fz = eval(&cf, *zi);
            let dfz = eval(&deriv, *zi);
            if dfz.norm() > 0.0 {
                *zi -= fz / dfz;
            }
        }
    }

    // residual contract: |f(root)| <= tol * H * max(1,|root|)^d
    for &zi in &z {
        let bound = tol * height * zi.norm().max(1.0).powi(d as i32);
        if eval(&cf, zi).norm() > bound {
            return Err(RootError::NonConvergence { sweeps: MAX_SWEEPS });
        }
    }

    // snap near-real roots, then enforce conjugate symmetry by pairing
    for zi in z.iter_mut() {
        if zi.im.abs() < 1e-10 * (1.0 + zi.re.abs()) {
            zi.im = 0.0;
        }
    }
    let mut upper: Vec<Complex64> = z.iter().filter(|z| z.im > 0.0).copied().collect();
    let lower: Vec<Complex64> = z.iter().filter(|z| z.im < 0.0).copied().collect();
    let reals: Vec<Complex64> = z.iter().filter(|z| z.im == 0.0).copied().collect();
    if upper.len() != lower.len() {
        return Err(RootError::NonConvergence { sweeps: MAX_SWEEPS });
    }
    // average each upper root with its mirrored partner
    let mut used = vec![false; lower.len()];
    for u in upper.iter_mut() {
        let mut best = usize::MAX;
        let mut best_d = f64::INFINITY;
        for (j, l) in lower.iter().enumerate() {
            if used[j] {
                continue;
            }
            let dist = (*u - l.conj()).norm();
            if dist < best_d {
                best_d = dist;
                best = j;
            }
        }
        used[best] = true;
        let l = lower[best];
        *u = Complex64::new(0.5 * (u.re + l.re), 0.5 * (u.im - l.im));
    }
    let mut out = reals;
    for u in upper {
        out.push(u);
        out.push(u.conj());
    }
    Ok(out)
}

/// Upper-half-plane representative of a conjugate pair of `p`, when one
/// exists. With several pairs, the one with smallest real part (then largest
/// imaginary part) is returned; quadratics use the closed form.
pub fn upper_root(p: &IntPoly) -> Result<Complex64, RootError> {
    if p.effective_degree() == 2 {
        let c = p.effective_coeffs();
        let disc = (c[1] as i128) * (c[1] as i128) - 4 * (c[0] as i128) * (c[2] as i128);
        if disc < 0 {
            let a = c[0] as f64;
            return Ok(Complex64::new(
                -(c[1] as f64) / (2.0 * a),
                (disc.unsigned_abs() as f64).sqrt() / (2.0 * a.abs()),
            ));
        }
        return Err(RootError::NoComplexRoot);
    }
    let rs = roots(p, DEFAULT_TOL)?;
    rs.upper_roots().first().copied().ok_or(RootError::NoComplexRoot)
}

/// Root signature (real count, pair count) with multiplicity. Degrees 2 and
/// 3 defer to the exact integer sign of the discriminant, never floating
/// point.
pub fn classify(p: &IntPoly) -> (usize, usize) {
    use num_traits::Signed;
    if p.leading_zeros() == 0 {
        match p.degree() {
            1 => return (1, 0),
            2 => {
                let d = p.discriminant();
                return if d.is_negative() { (0, 1) } else { (2, 0) };
            }
            3 => {
                let d = p.discriminant();
                return if d.is_negative() { (1, 1) } else { (3, 0) };
            }
            _ => {}
        }
    }
    roots(p, DEFAULT_TOL).map(|r| r.signature()).unwrap_or((0, 0))
}
