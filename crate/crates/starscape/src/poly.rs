//! Integer binary forms and their lattice families.
//!
//! An `IntPoly` of degree d is the coefficient vector (a_d, ..., a_1, a_0) of
//! the binary form a_d x^d + a_{d-1} x^{d-1} y + ... + a_0 y^d, stored
//! leading-first. Canonical representatives are primitive (content 1) with
//! the first nonzero coefficient positive, so each projective class has one
//! representative and streams deduplicate bytewise. A zero leading
//! coefficient is allowed: the form then has a root at infinity and embeds a
//! lower-degree polynomial in degree d.

use crate::error::PolyError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::HashSet;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    /// Canonicalize a raw coefficient vector: divide by the content and make
    /// the first nonzero coefficient positive.
    pub fn new(raw: &[i64]) -> Result<IntPoly, PolyError> {
        if raw.is_empty() || raw.iter().all(|&c| c == 0) {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut g: i64 = 0;
        for &c in raw {
            g = g.gcd(&c);
        }
        let first = raw.iter().find(|&&c| c != 0).copied().unwrap();
        let sign = if first < 0 { -1 } else { 1 };
        let coeffs = raw.iter().map(|&c| c / (g * sign)).collect();
        Ok(IntPoly { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Ambient degree: length of the coefficient vector minus one.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|&&c| c == 0).count()
    }

    /// Degree of the univariate polynomial obtained by dropping roots at
    /// infinity.
    pub fn effective_degree(&self) -> usize {
        self.degree() - self.leading_zeros()
    }

    pub fn effective_coeffs(&self) -> &[i64] {
        &self.coeffs[self.leading_zeros()..]
    }

    /// Coefficient of x^k y^(d-k).
    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs[self.degree() - k]
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, &c| acc * x + c as f64)
    }

    pub fn derivative_coeffs(&self) -> Vec<i64> {
        let d = self.degree();
        if d == 0 {
            return vec![0];
        }
        self.coeffs[..d]
            .iter()
            .enumerate()
            .map(|(i, &c)| c * (d - i) as i64)
            .collect()
    }

    /// Exact discriminant of the binary form. Degrees 1-3 use the classical
    /// expressions; higher degrees go through the Sylvester resultant of f
    /// and f'. A single root at infinity contributes the squared leading
    /// coefficient of the rest, two or more make the discriminant zero.
    pub fn discriminant(&self) -> BigInt {
        match self.leading_zeros() {
            0 => disc_effective(&self.coeffs),
            1 => {
                let rest = &self.coeffs[1..];
                let lead = BigInt::from(rest[0]);
                &lead * &lead * disc_effective(rest)
            }
            _ => BigInt::zero(),
        }
    }

    /// Naive height: maximum coefficient magnitude.
    pub fn naive_height(&self) -> i64 {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap()
    }

    /// Mediant: canonicalized coefficientwise sum (same ambient degree).
    pub fn mediant(&self, other: &IntPoly) -> Result<IntPoly, PolyError> {
        if self.degree() != other.degree() {
            return Err(PolyError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let sum: Vec<i64> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        IntPoly::new(&sum)
    }

    /// Irreducible over Q and primitive, with no root at infinity.
    /// Rational-root test settles degree <= 3; degrees 4 and 5 additionally
    /// rule out quadratic factors using root pairs as candidates (candidate
    /// construction is numeric, divisibility checks are exact).
    pub fn is_minimal(&self) -> bool {
        if self.leading_zeros() > 0 {
            return false;
        }
        let c = &self.coeffs;
        match self.degree() {
            0 => false,
            1 => true,
            2 => {
                let d = BigInt::from(c[1]) * c[1] - BigInt::from(4) * c[0] * c[2];
                !is_perfect_square(&d)
            }
            3 => !has_rational_root(c),
            d if d <= 5 => !has_rational_root(c) && !has_quadratic_factor(c),
            _ => panic!("minimality test limited to degree 5"),
        }
    }
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

/// Exact rational-root test: any root p/q has p | a_0, q | a_d (on the
/// squarefree content of trailing zeros: a zero constant term means the
/// rational root 0).
fn has_rational_root(coeffs: &[i64]) -> bool {
    let d = coeffs.len() - 1;
    if coeffs[d] == 0 {
        return true; // root at 0
    }
    let lead = coeffs[0].unsigned_abs();
    let tail = coeffs[d].unsigned_abs();
    for p in divisors(tail) {
        for q in divisors(lead) {
            if (p as i64).gcd(&(q as i64)) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                if eval_scaled(coeffs, sign * p as i64, q as i64).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// q^d f(p/q) as an exact integer.
fn eval_scaled(coeffs: &[i64], p: i64, q: i64) -> BigInt {
    let d = coeffs.len() - 1;
    let mut total = BigInt::zero();
    for (i, &c) in coeffs.iter().enumerate() {
        let k = (d - i) as u32; // power of x
        total += BigInt::from(c) * BigInt::from(p).pow(k) * BigInt::from(q).pow(d as u32 - k);
    }
    total
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Quadratic-factor test for degrees 4-5: any integer quadratic factor has
/// roots equal to a pair of roots of f, so round candidates from the solved
/// roots and verify divisibility exactly.
fn has_quadratic_factor(coeffs: &[i64]) -> bool {
    let roots = crate::roots::solve_f64(coeffs, 1e-12).expect("factor test solve");
    let n = roots.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let s = roots[i] + roots[j];
            let p = roots[i] * roots[j];
            if s.im.abs() > 1e-6 || p.im.abs() > 1e-6 {
                continue;
            }
            for m in divisors(coeffs[0].unsigned_abs()) {
                let m = m as f64;
                let b = (-s.re * m).round();
                let c = (p.re * m).round();
                if ((-s.re * m) - b).abs() > 1e-4 || ((p.re * m) - c).abs() > 1e-4 {
                    continue;
                }
                let cand = [m as i64, b as i64, c as i64];
                if divides_exactly(&cand, coeffs) {
                    return true;
                }
            }
        }
    }
    false
}

/// Does `g` divide `f` over Q? Exact rational long division.
pub fn divides_exactly(g: &[i64], f: &[i64]) -> bool {
    if g[0] == 0 {
        return false;
    }
    let mut rem: Vec<BigRational> = f
        .iter()
        .map(|&c| BigRational::from(BigInt::from(c)))
        .collect();
    let gq: Vec<BigRational> = g.iter().map(|&c| BigRational::from(BigInt::from(c))).collect();
    while rem.len() >= gq.len() {
        let factor = &rem[0] / &gq[0];
        for (i, gc) in gq.iter().enumerate() {
            let t = &factor * gc;
            rem[i] -= t;
        }
        rem.remove(0);
    }
    rem.iter().all(|c| c.is_zero())
}

/// Discriminant of the effective polynomial (nonzero leading coefficient).
fn disc_effective(c: &[i64]) -> BigInt {
    let d = c.len() - 1;
    let big = |x: i64| BigInt::from(x);
    match d {
        0 => BigInt::from(1),
        1 => BigInt::from(1),
        2 => big(c[1]) * c[1] - big(4) * c[0] * c[2],
        3 => {
            let (a, b, cc, dd) = (big(c[0]), big(c[1]), big(c[2]), big(c[3]));
            big(18) * &a * &b * &cc * &dd - big(4) * &b * &b * &b * &dd + &b * &b * &cc * &cc
                - big(4) * &a * &cc * &cc * &cc
                - big(27) * &a * &a * &dd * &dd
        }
        _ => {
            let deriv: Vec<i64> = c[..d]
                .iter()
                .enumerate()
                .map(|(i, &x)| x * (d - i) as i64)
                .collect();
            let res = resultant(c, &deriv);
            let sign: i64 = if (d * (d - 1) / 2) % 2 == 0 { 1 } else { -1 };
            let (q, r) = (res * sign).div_rem(&big(c[0]));
            debug_assert!(r.is_zero(), "discriminant division must be exact");
            q
        }
    }
}

/// Sylvester resultant via fraction-free (Bareiss) elimination.
pub fn resultant(f: &[i64], g: &[i64]) -> BigInt {
    let n = f.len() - 1;
    let m = g.len() - 1;
    let size = n + m;
    if size == 0 {
        return BigInt::from(1);
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for i in 0..m {
        for (j, &c) in f.iter().enumerate() {
            mat[i][i + j] = BigInt::from(c);
        }
    }
    for i in 0..n {
        for (j, &c) in g.iter().enumerate() {
            mat[m + i][i + j] = BigInt::from(c);
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = 1i64;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].clone() * sign
}

/// Squarefree decomposition (Yun): returns (factor, multiplicity) pairs with
/// integer primitive factors, f = lc * prod factor_i^mult_i up to content.
pub fn squarefree_decomposition(coeffs: &[i64]) -> Vec<(Vec<i64>, u32)> {
    let f = to_q(coeffs);
    let fd = to_q(&derive(coeffs));
    let a = poly_gcd_q(&f, &fd);
    if a.len() == 1 {
        return vec![(coeffs.to_vec(), 1)]; // already squarefree
    }
    let mut out = Vec::new();
    let mut b = poly_div_q(&f, &a);
    let mut c = poly_div_q(&fd, &a);
    let mut d = poly_sub_q(&c, &derive_q(&b));
    let mut mult = 1u32;
    loop {
        let p = poly_gcd_q(&b, &d);
        if p.len() > 1 {
            out.push((primitive_int(&p), mult));
        }
        b = poly_div_q(&b, &p);
        if b.len() == 1 {
            break;
        }
        c = poly_div_q(&d, &p);
        d = poly_sub_q(&c, &derive_q(&b));
        mult += 1;
    }
    out
}

fn derive(c: &[i64]) -> Vec<i64> {
    let d = c.len() - 1;
    if d == 0 {
        return vec![0];
    }
    c[..d].iter().enumerate().map(|(i, &x)| x * (d - i) as i64).collect()
}

fn to_q(c: &[i64]) -> Vec<BigRational> {
    c.iter().map(|&x| BigRational::from(BigInt::from(x))).collect()
}

fn derive_q(c: &[BigRational]) -> Vec<BigRational> {
    let d = c.len() - 1;
    if d == 0 {
        return vec![BigRational::zero()];
    }
    c[..d]
        .iter()
        .enumerate()
        .map(|(i, x)| x * BigRational::from(BigInt::from((d - i) as i64)))
        .collect()
}

fn trim_q(mut c: Vec<BigRational>) -> Vec<BigRational> {
    while c.len() > 1 && c[0].is_zero() {
        c.remove(0);
    }
    c
}

fn poly_sub_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().rev().enumerate() {
        out[n - 1 - i] += x;
    }
    for (i, x) in b.iter().rev().enumerate() {
        out[n - 1 - i] -= x;
    }
    trim_q(out)
}

fn poly_rem_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut rem = a.to_vec();
    while rem.len() >= b.len() && !(rem.len() == 1 && rem[0].is_zero()) {
        let factor = &rem[0] / &b[0];
        for (i, bc) in b.iter().enumerate() {
            let t = &factor * bc;
            rem[i] -= t;
        }
        rem.remove(0);
        rem = trim_q(rem);
        if rem.iter().all(|c| c.is_zero()) {
            return vec![BigRational::zero()];
        }
    }
    rem
}

fn poly_div_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut rem = a.to_vec();
    let mut quot = Vec::new();
    while rem.len() >= b.len() {
        let factor = &rem[0] / &b[0];
        quot.push(factor.clone());
        for (i, bc) in b.iter().enumerate() {
            let t = &factor * bc;
            rem[i] -= t;
        }
        rem.remove(0);
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "non-exact division");
    if quot.is_empty() {
        vec![BigRational::zero()]
    } else {
        quot
    }
}

fn poly_gcd_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = trim_q(a.to_vec());
    let mut y = trim_q(b.to_vec());
    while !(y.len() == 1 && y[0].is_zero()) {
        let r = poly_rem_q(&x, &y);
        x = y;
        y = r;
    }
    // monic normalization
    let lead = x[0].clone();
    x.iter().map(|c| c / &lead).collect()
}

fn primitive_int(c: &[BigRational]) -> Vec<i64> {
    // common denominator, then content
    let mut den = BigInt::from(1);
    for x in c {
        den = den.lcm(x.denom());
    }
    let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * &den / x.denom()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    let sign: i64 = if ints[0].is_negative() { -1 } else { 1 };
    ints.iter()
        .map(|x| (x / &g * sign).to_i64().expect("factor overflows i64"))
        .collect()
}

/// Reduced fraction with positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0);
        let g = num.gcd(&den) * den.signum();
        Rational { num: num / g, den: den / g }
    }

    pub fn mediant(self, other: Rational) -> Rational {
        Rational::new(self.num + other.num, self.den + other.den)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

/// Stern-Brocot tree restricted to (0,1), breadth by mediant insertion:
/// level 1 is {1/2}, each level refines every gap. Output is sorted and each
/// fraction appears once, automatically in lowest terms.
pub fn stern_brocot(levels: u32) -> Vec<Rational> {
    let mut bounds = vec![Rational::new(0, 1), Rational::new(1, 1)];
    for _ in 0..levels {
        let mut next = Vec::with_capacity(bounds.len() * 2 - 1);
        for w in bounds.windows(2) {
            next.push(w[0]);
            next.push(w[0].mediant(w[1]));
        }
        next.push(*bounds.last().unwrap());
        bounds = next;
    }
    bounds[1..bounds.len() - 1].to_vec()
}

/// Bound on the parameters of a family: an explicit per-parameter box or a
/// sup-norm ball.
#[derive(Clone, Debug, Serialize)]
pub enum ParamBound {
    Box(Vec<(i64, i64)>),
    Ball(i64),
}

/// An affine sublattice of coefficient space, offset + span(basis), with an
/// enumeration bound. Basis dimension 1, 2 or 3 (linear, planar, volume
/// starscapes).
#[derive(Clone, Debug, Serialize)]
pub struct FamilySpec {
    pub degree: usize,
    pub basis: Vec<Vec<i64>>,
    pub offset: Vec<i64>,
    pub bound: ParamBound,
}

impl FamilySpec {
    pub fn new(
        degree: usize,
        basis: Vec<Vec<i64>>,
        offset: Vec<i64>,
        bound: ParamBound,
    ) -> Result<FamilySpec, PolyError> {
        let n = degree + 1;
        if degree == 0 || basis.is_empty() || basis.len() > 3 {
            return Err(PolyError::BadFamily("basis dimension must be 1..=3".into()));
        }
        if offset.len() != n || basis.iter().any(|v| v.len() != n) {
            return Err(PolyError::BadFamily("vector length must be degree+1".into()));
        }
        if basis.iter().any(|v| v.iter().all(|&c| c == 0)) {
            return Err(PolyError::BadFamily("zero basis vector".into()));
        }
        if integer_rank(&basis) < basis.len() {
            return Err(PolyError::BadFamily("basis vectors linearly dependent".into()));
        }
        if let ParamBound::Box(ranges) = &bound {
            if ranges.len() != basis.len() {
                return Err(PolyError::BadFamily("box arity must match basis".into()));
            }
        }
        Ok(FamilySpec { degree, basis, offset, bound })
    }

    fn ranges(&self) -> Vec<(i64, i64)> {
        match &self.bound {
            ParamBound::Box(r) => r.clone(),
            ParamBound::Ball(n) => vec![(-n, *n); self.basis.len()],
        }
    }

    /// Number of parameter tuples (before deduplication).
    pub fn raw_count(&self) -> u128 {
        self.ranges()
            .iter()
            .map(|(lo, hi)| if hi < lo { 0u128 } else { (hi - lo + 1) as u128 })
            .product()
    }

    /// Every canonical polynomial of the family, deduplicated by projective
    /// class, in lexicographic parameter order (first occurrence wins).
    pub fn enumerate(&self) -> impl Iterator<Item = IntPoly> + '_ {
        let ranges = self.ranges();
        let mut seen: HashSet<IntPoly> = HashSet::new();
        ParamIter::new(ranges).filter_map(move |t| {
            let mut v = self.offset.clone();
            for (ti, b) in t.iter().zip(&self.basis) {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += ti * bi;
                }
            }
            let p = IntPoly::new(&v).ok()?;
            if seen.insert(p.clone()) {
                Some(p)
            } else {
                None
            }
        })
    }
}

fn integer_rank(vectors: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| BigRational::from(BigInt::from(x))).collect())
        .collect();
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        if let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) {
            m.swap(rank, pivot);
            for r in rank + 1..rows {
                let factor = &m[r][col] / &m[rank][col];
                for c in col..cols {
                    let t = &factor * &m[rank][c];
                    m[r][c] -= t;
                }
            }
            rank += 1;
        }
        col += 1;
    }
    rank
}

struct ParamIter {
    ranges: Vec<(i64, i64)>,
    current: Vec<i64>,
    done: bool,
}

impl ParamIter {
    fn new(ranges: Vec<(i64, i64)>) -> ParamIter {
        let done = ranges.iter().any(|(lo, hi)| hi < lo);
        let current = ranges.iter().map(|(lo, _)| *lo).collect();
        ParamIter { ranges, current, done }
    }
}

impl Iterator for ParamIter {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        // odometer increment, last coordinate fastest
        for i in (0..self.current.len()).rev() {
            if self.current[i] < self.ranges[i].1 {
                self.current[i] += 1;
                return Some(out);
            }
            self.current[i] = self.ranges[i].0;
            if i == 0 {
                self.done = true;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::new(c).unwrap()
    }

    #[test]
    fn content_normalization() {
        assert_eq!(p(&[2, 0, 2]).coeffs(), &[1, 0, 1]);
        assert_eq!(p(&[-1, 0, -1]).coeffs(), &[1, 0, 1]);
        assert_eq!(p(&[6, -4, 10]).coeffs(), &[3, -2, 5]);
        assert_eq!(p(&[0, -3, 6]).coeffs(), &[0, 1, -2]);
        assert!(IntPoly::new(&[0, 0, 0]).is_err());
    }

    #[test]
    fn discriminants_match_known_values() {
        assert_eq!(p(&[1, 0, 1]).discriminant(), BigInt::from(-4));
        assert_eq!(p(&[1, 0, 1, 1]).discriminant(), BigInt::from(-31));
        assert_eq!(p(&[1, -2, 0, 1]).discriminant(), BigInt::from(5));
        // embedded linear 2x + 3 in degree 2: disc = b^2 = 4
        assert_eq!(p(&[0, 2, 3]).discriminant(), BigInt::from(4));
        // double root at infinity
        assert_eq!(IntPoly::new(&[0, 0, 1, 1]).unwrap().discriminant(), BigInt::zero());
    }

    #[test]
    fn resultant_oracle_agrees_with_formulas() {
        // independent route: disc = +- Res(f, f')/lc for random small polys
        let cases: Vec<Vec<i64>> = vec![
            vec![1, 0, 1],
            vec![2, -3, 5],
            vec![1, 0, 1, 1],
            vec![1, -2, 0, 1],
            vec![3, 1, -4, 2],
            vec![1, 2, 3, 4, 5],
            vec![2, 0, -1, 0, 3, -7],
        ];
        for c in cases {
            let d = c.len() - 1;
            let deriv: Vec<i64> = c[..d]
                .iter()
                .enumerate()
                .map(|(i, &x)| x * (d - i) as i64)
                .collect();
            let res = resultant(&c, &deriv);
            let sign = if (d * (d - 1) / 2) % 2 == 0 { 1 } else { -1 };
            let expect = res * sign / BigInt::from(c[0]);
            assert_eq!(p(&c).discriminant(), expect, "poly {:?}", c);
        }
    }

    #[test]
    fn discriminant_sign_flip_invariance() {
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                for c in -4i64..=4 {
                    for d in -4i64..=4 {
                        if a == 0 && b == 0 && c == 0 && d == 0 {
                            continue;
                        }
                        let f = IntPoly::new(&[a, b, c, d]).unwrap();
                        let g = IntPoly::new(&[-a, -b, -c, -d]).unwrap();
                        assert_eq!(f, g); // canonical form identifies +-
                        assert_eq!(f.discriminant(), g.discriminant());
                    }
                }
            }
        }
    }

    #[test]
    fn minimality() {
        assert!(!p(&[1, 0, -1]).is_minimal()); // (x-1)(x+1)
        assert!(p(&[1, 0, 1]).is_minimal());
        assert!(p(&[1, 0, 1, 1]).is_minimal());
        assert!(!p(&[1, 1, 1, 1]).is_minimal()); // (x+1)(x^2+1)
        assert!(!p(&[1, 0, 2, 0, 1]).is_minimal()); // (x^2+1)^2
        assert!(p(&[1, 0, 0, 0, 2]).is_minimal()); // x^4 + 2, Eisenstein
        assert!(!p(&[1, 0, 0, 0, -4]).is_minimal()); // (x^2-2)(x^2+2)
        assert!(!p(&[0, 1, 1]).is_minimal()); // root at infinity
        // Lehmer-style degree bound honored elsewhere; degree 5 works:
        assert!(p(&[1, 0, 0, 0, 0, -2]).is_minimal()); // x^5 - 2
    }

    #[test]
    fn mediant_examples() {
        // rationals as linear forms: root of qx - p is p/q
        let zero = p(&[1, 0]); // root 0/1
        let one = p(&[1, -1]); // root 1/1
        let m = zero.mediant(&one).unwrap();
        assert_eq!(m.coeffs(), &[2, -1]); // root 1/2
        let a = p(&[1, 0, 1]);
        let b = p(&[1, -2, 2]);
        assert_eq!(a.mediant(&b).unwrap().coeffs(), &[2, -2, 3]);
        assert_eq!(a.mediant(&a).unwrap(), a); // 2p ~ p
        // canonical representatives can never sum to zero, so the zero-sum
        // error is only reachable through IntPoly::new directly
    }

    #[test]
    fn stern_brocot_levels() {
        assert!(stern_brocot(0).is_empty());
        assert_eq!(stern_brocot(1), vec![Rational::new(1, 2)]);
        assert_eq!(
            stern_brocot(2),
            vec![Rational::new(1, 3), Rational::new(1, 2), Rational::new(2, 3)]
        );
        let l5 = stern_brocot(5);
        assert_eq!(l5.len(), 31);
        // sorted, unique, lowest terms
        for w in l5.windows(2) {
            assert!(w[0] < w[1]);
        }
        for r in &l5 {
            assert_eq!(r.num.gcd(&r.den), 1);
        }
    }

    #[test]
    fn farey_neighbor_determinant() {
        // adjacent fractions in the full bound list at each level satisfy
        // qr - ps = 1
        let mut bounds = vec![Rational::new(0, 1), Rational::new(1, 1)];
        for _ in 0..6 {
            let mut next = Vec::new();
            for w in bounds.windows(2) {
                next.push(w[0]);
                next.push(w[0].mediant(w[1]));
            }
            next.push(*bounds.last().unwrap());
            for w in next.windows(2) {
                let det = w[1].num as i128 * w[0].den as i128 - w[0].num as i128 * w[1].den as i128;
                assert_eq!(det, 1);
            }
            bounds = next;
        }
    }

    #[test]
    fn family_enumeration_standard_box() {
        let fam = FamilySpec::new(
            2,
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![0, 0, 0],
            ParamBound::Ball(1),
        )
        .unwrap();
        let polys: Vec<IntPoly> = fam.enumerate().collect();
        assert_eq!(polys.len(), 13); // 26 nonzero sign-classes of {-1,0,1}^3
        let set: HashSet<_> = polys.iter().collect();
        assert_eq!(set.len(), 13); // no duplicate projective classes
    }

    #[test]
    fn family_depressed_cubics_have_zero_quadratic_term() {
        let fam = FamilySpec::new(
            3,
            vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
            vec![0, 0, 0, 0],
            ParamBound::Ball(2),
        )
        .unwrap();
        for p in fam.enumerate() {
            assert_eq!(p.coeffs()[1], 0);
        }
    }

    #[test]
    fn family_empty_box() {
        let fam = FamilySpec::new(
            2,
            vec![vec![1, 0, 0]],
            vec![0, 0, 0],
            ParamBound::Box(vec![(1, 0)]),
        )
        .unwrap();
        assert_eq!(fam.enumerate().count(), 0);
    }

    #[test]
    fn family_rejects_degenerate_specs() {
        assert!(FamilySpec::new(2, vec![vec![0, 0, 0]], vec![0, 0, 0], ParamBound::Ball(1)).is_err());
        assert!(FamilySpec::new(
            2,
            vec![vec![1, 0, 0], vec![2, 0, 0]],
            vec![0, 0, 0],
            ParamBound::Ball(1)
        )
        .is_err());
    }

    #[test]
    fn squarefree_decomposition_structure() {
        // (x^2+1)^2 * (x-1)
        let f = [1, -1, 2, -2, 1, -1];
        let dec = squarefree_decomposition(&f);
        assert_eq!(dec.len(), 2);
        assert!(dec.contains(&(vec![1, -1], 1)));
        assert!(dec.contains(&(vec![1, 0, 1], 2)));
    }
}
