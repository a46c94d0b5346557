//! Fixed-point arbitrary-precision reals over `BigInt`.
//!
//! A value is stored as `mant * 10^(-prec)` with `prec` decimal digits of
//! fraction. All arithmetic rounds to nearest (ties away from zero), so every
//! operation is deterministic and carries an absolute error below
//! `10^(-prec)`. This is enough for the approximation searches, which certify
//! their exact claims with pure `BigInt` comparisons and only use these reals
//! for targets, residuals, and distances.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

pub fn pow10(p: u32) -> BigInt {
    BigInt::from(10u32).pow(p)
}

/// Rounded division, `d > 0`, ties away from zero.
pub fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(d.is_positive());
    let (q, r) = n.div_rem(d);
    let two_r = BigInt::from(2) * r;
    if two_r >= *d {
        q + 1
    } else if -two_r >= *d {
        q - 1
    } else {
        q
    }
}

/// A real number with `prec` decimal digits after the point.
#[derive(Clone, PartialEq, Eq)]
pub struct Real {
    mant: BigInt,
    prec: u32,
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({:.6e} @{})", self.to_f64(), self.prec)
    }
}

impl Real {
    pub fn from_scaled(mant: BigInt, prec: u32) -> Real {
        Real { mant, prec }
    }

    pub fn zero(prec: u32) -> Real {
        Real { mant: BigInt::zero(), prec }
    }

    pub fn one(prec: u32) -> Real {
        Real { mant: pow10(prec), prec }
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Real {
        Real { mant: v.into() * pow10(prec), prec }
    }

    /// Exact ratio `n/d`, `d != 0`, rounded to `prec` digits.
    pub fn from_ratio(n: impl Into<BigInt>, d: impl Into<BigInt>, prec: u32) -> Real {
        let mut n = n.into();
        let mut d = d.into();
        assert!(!d.is_zero(), "zero denominator");
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Real { mant: div_round(&(n * pow10(prec)), &d), prec }
    }

    /// Exact conversion of a finite f64.
    pub fn from_f64(x: f64, prec: u32) -> Real {
        assert!(x.is_finite());
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        let m = BigInt::from(m) * sign;
        let scaled = m * pow10(prec);
        let mant = if e >= 0 {
            scaled << (e as usize)
        } else {
            div_round(&scaled, &(BigInt::from(1) << ((-e) as usize)))
        };
        Real { mant, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn with_prec(&self, prec: u32) -> Real {
        if prec == self.prec {
            self.clone()
        } else if prec > self.prec {
            Real { mant: &self.mant * pow10(prec - self.prec), prec }
        } else {
            Real { mant: div_round(&self.mant, &pow10(self.prec - prec)), prec }
        }
    }

    fn aligned(&self, other: &Real) -> (Real, Real) {
        let prec = self.prec.max(other.prec);
        (self.with_prec(prec), other.with_prec(prec))
    }

    pub fn add(&self, other: &Real) -> Real {
        let (a, b) = self.aligned(other);
        Real { mant: a.mant + b.mant, prec: a.prec }
    }

    pub fn sub(&self, other: &Real) -> Real {
        let (a, b) = self.aligned(other);
        Real { mant: a.mant - b.mant, prec: a.prec }
    }

    pub fn neg(&self) -> Real {
        Real { mant: -&self.mant, prec: self.prec }
    }

    pub fn abs(&self) -> Real {
        Real { mant: self.mant.abs(), prec: self.prec }
    }

    pub fn mul(&self, other: &Real) -> Real {
        let (a, b) = self.aligned(other);
        Real { mant: div_round(&(a.mant * b.mant), &pow10(a.prec)), prec: a.prec }
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> Real {
        Real { mant: &self.mant * k.into(), prec: self.prec }
    }

    pub fn div(&self, other: &Real) -> Real {
        let (a, b) = self.aligned(other);
        assert!(!b.mant.is_zero(), "division by zero");
        let mut n = a.mant * pow10(a.prec);
        let mut d = b.mant;
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Real { mant: div_round(&n, &d), prec: a.prec }
    }

    pub fn recip(&self) -> Real {
        Real::one(self.prec).div(self)
    }

    /// Floor square root semantics at full precision; requires `self >= 0`.
    pub fn sqrt(&self) -> Real {
        assert!(!self.mant.is_negative(), "sqrt of negative value");
        // sqrt(m * 10^-p) = sqrt(m * 10^p) * 10^-p
        let scaled = &self.mant * pow10(self.prec);
        Real { mant: scaled.sqrt(), prec: self.prec }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn floor_int(&self) -> BigInt {
        self.mant.div_floor(&pow10(self.prec))
    }

    pub fn round_int(&self) -> BigInt {
        div_round(&self.mant, &pow10(self.prec))
    }

    /// Fractional part in [0, 1).
    pub fn fract(&self) -> Real {
        let f = self.floor_int();
        self.sub(&Real::from_int(f, self.prec))
    }

    pub fn cmp_real(&self, other: &Real) -> Ordering {
        let (a, b) = self.aligned(other);
        a.mant.cmp(&b.mant)
    }

    /// Nearest f64, correct even when the value under/overflows only after
    /// scaling (e.g. 10^-800 maps to 0.0).
    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let neg = self.mant.is_negative();
        let m = self.mant.abs();
        // Shift so the integer quotient keeps ~64 significant bits.
        let denom_bits = (self.prec as f64 * 3.3219280948873626).ceil() as i64;
        let shift = (denom_bits - (m.bits() as i64) + 64).max(0) as u64;
        let q = (m << shift) / pow10(self.prec);
        let q64 = q.to_f64().unwrap_or(f64::INFINITY);
        let v = q64 * pow2_f64(-(shift as i64));
        if neg {
            -v
        } else {
            v
        }
    }

    /// Natural log as f64; defined for any positive value, including ones far
    /// outside f64 range.
    pub fn ln_f64(&self) -> f64 {
        assert!(self.mant.is_positive(), "ln of non-positive value");
        let m = &self.mant;
        let bits = m.bits();
        let keep = 64.min(bits);
        let top = (m >> (bits - keep)).to_f64().unwrap();
        // ln(m) = ln(top) + (bits - keep) ln 2
        let ln_m = top.ln() + ((bits - keep) as f64) * std::f64::consts::LN_2;
        ln_m - (self.prec as f64) * std::f64::consts::LN_10
    }

    /// Base-10 log as f64 (positive values).
    pub fn log10_f64(&self) -> f64 {
        self.ln_f64() / std::f64::consts::LN_10
    }
}

fn pow2_f64(e: i64) -> f64 {
    // Split to stay in range for subnormal magnitudes.
    if e >= -1022 && e <= 1023 {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else if e < -1074 {
        0.0
    } else if e < 0 {
        pow2_f64(-1022) * pow2_f64(e + 1022)
    } else {
        f64::INFINITY
    }
}

/// pi to `prec` digits via Machin's formula, computed from scratch with
/// integer series (no stored constant to mistype).
pub fn pi(prec: u32) -> Real {
    let work = prec + 12;
    let a = atan_recip(5, work);
    let b = atan_recip(239, work);
    a.mul_int(16).sub(&b.mul_int(4)).with_prec(prec)
}

/// arctan(1/x) for integer x >= 2, by the alternating series.
fn atan_recip(x: u64, prec: u32) -> Real {
    let scale = pow10(prec);
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut term = &scale / &x; // x^{-(2k+1)} * 10^prec, truncated
    let mut total = BigInt::zero();
    let mut k = 0u32;
    while !term.is_zero() {
        let contrib = &term / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            total += &contrib;
        } else {
            total -= &contrib;
        }
        term /= &x2;
        k += 1;
    }
    Real::from_scaled(total, prec)
}

/// Complex number over `Real`.
#[derive(Clone, Debug)]
pub struct ComplexReal {
    pub re: Real,
    pub im: Real,
}

impl ComplexReal {
    pub fn new(re: Real, im: Real) -> ComplexReal {
        ComplexReal { re, im }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> ComplexReal {
        ComplexReal { re: Real::from_f64(re, prec), im: Real::from_f64(im, prec) }
    }

    pub fn add(&self, o: &ComplexReal) -> ComplexReal {
        ComplexReal { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &ComplexReal) -> ComplexReal {
        ComplexReal { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &ComplexReal) -> ComplexReal {
        ComplexReal {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn div(&self, o: &ComplexReal) -> ComplexReal {
        let d = o.norm_sqr();
        let conj = ComplexReal { re: o.re.clone(), im: o.im.neg() };
        let n = self.mul(&conj);
        ComplexReal { re: n.re.div(&d), im: n.im.div(&d) }
    }

    pub fn norm_sqr(&self) -> Real {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// Horner evaluation of an integer polynomial (leading-first coefficients).
pub fn eval_poly_complex(coeffs: &[i64], z: &ComplexReal) -> ComplexReal {
    let prec = z.re.prec();
    let mut acc = ComplexReal::new(Real::zero(prec), Real::zero(prec));
    for &c in coeffs {
        acc = acc.mul(z);
        acc.re = acc.re.add(&Real::from_int(c, prec));
    }
    acc
}

/// Newton-refine a simple complex root of an integer polynomial from an f64
/// seed up to `prec` digits.
pub fn refine_root(coeffs: &[i64], seed: (f64, f64), prec: u32) -> ComplexReal {
    let deriv: Vec<i64> = {
        let d = coeffs.len() - 1;
        coeffs[..d]
            .iter()
            .enumerate()
            .map(|(i, &c)| c * (d - i) as i64)
            .collect()
    };
    let work = prec + 16;
    let mut z = ComplexReal::from_f64(seed.0, seed.1, work);
    // f64 seed carries ~12 digits; each Newton step doubles them.
    let steps = {
        let mut digits = 10u32;
        let mut n = 0;
        while digits < work {
            digits *= 2;
            n += 1;
        }
        n + 1
    };
    for _ in 0..steps {
        let f = eval_poly_complex(coeffs, &z);
        let df = eval_poly_complex(&deriv, &z);
        z = z.sub(&f.div(&df));
    }
    ComplexReal { re: z.re.with_prec(prec), im: z.im.with_prec(prec) }
}

/// Continued-fraction convergents (p_k, q_k) of x with q_k <= max_q.
/// Stops early if the working precision cannot certify the next digit.
pub fn convergents(x: &Real, max_q: &BigInt) -> Vec<(BigInt, BigInt)> {
    let prec = x.prec();
    let tiny = Real::from_scaled(pow10(12), prec); // 10^(prec-12) margin
    let mut out = Vec::new();
    let mut p_prev = BigInt::from(1);
    let mut q_prev = BigInt::zero();
    let mut p = x.floor_int();
    let mut q = BigInt::from(1);
    let mut frac = x.fract();
    out.push((p.clone(), q.clone()));
    while &q <= max_q {
        if frac.cmp_real(&tiny) == Ordering::Less {
            break; // cannot trust further digits at this precision
        }
        let inv = frac.recip();
        let a = inv.floor_int();
        frac = inv.fract();
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        if &q <= max_q {
            out.push((p.clone(), q.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_and_f64_roundtrip() {
        let x = Real::from_ratio(1, 3, 50);
        assert!((x.to_f64() - 1.0 / 3.0).abs() < 1e-15);
        let y = Real::from_f64(0.1, 50);
        assert!((y.to_f64() - 0.1).abs() < 1e-18);
    }

    #[test]
    fn arithmetic_identities() {
        let p = 40;
        let a = Real::from_ratio(22, 7, p);
        let b = Real::from_ratio(355, 113, p);
        let prod = a.mul(&b);
        let back = prod.div(&b);
        assert!(back.sub(&a).abs().to_f64() < 1e-35);
    }

    #[test]
    fn sqrt_two() {
        let two = Real::from_int(2, 60);
        let r = two.sqrt();
        let err = r.mul(&r).sub(&two).abs();
        assert!(err.to_f64() < 1e-55);
        assert!((r.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn pi_digits() {
        let p = pi(60);
        // 3.141592653589793238462643383279502884197169399375105820974944...
        let want = Real::from_scaled(
            "3141592653589793238462643383279502884197169399375105820974944"
                .parse()
                .unwrap(),
            60,
        );
        let err = p.sub(&want).abs();
        assert!(err.to_f64() < 1e-58, "pi mismatch: {:?}", err);
    }

    #[test]
    fn ln_of_tiny_value() {
        let x = Real::from_ratio(1, pow10(200), 250);
        assert!((x.ln_f64() + 200.0 * std::f64::consts::LN_10).abs() < 1e-6);
    }

    #[test]
    fn golden_ratio_convergents_are_fibonacci() {
        let prec = 60;
        let five = Real::from_int(5, prec);
        let phi = five.sqrt().add(&Real::one(prec)).div(&Real::from_int(2, prec));
        let conv = convergents(&phi, &BigInt::from(100));
        let fib: Vec<(i64, i64)> =
            vec![(1, 1), (2, 1), (3, 2), (5, 3), (8, 5), (13, 8), (21, 13), (34, 21), (55, 34), (89, 55)];
        for (i, (p, q)) in fib.iter().enumerate() {
            assert_eq!(conv[i].0, BigInt::from(*p));
            assert_eq!(conv[i].1, BigInt::from(*q));
        }
    }

    #[test]
    fn newton_refines_cubic_root() {
        // real root of x^3 + x + 1
        let z = refine_root(&[1, 0, 1, 1], (-0.68, 0.0), 80);
        let f = eval_poly_complex(&[1, 0, 1, 1], &z);
        assert!(f.norm_sqr().to_f64() < 1e-140);
    }
}
