//! Exact LLL reduction over the rationals, sized for the tiny lattices used
//! in integer-relation detection and simultaneous approximation (dimension
//! 3 or 4, huge entries).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_qq(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_zq(a: &[BigInt], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| BigRational::from(x.clone()) * y)
        .sum()
}

fn round_rational(x: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    let n = x.numer() * &two + x.denom();
    let d = x.denom() * &two;
    n.div_floor(&d)
}

/// In-place LLL with delta = 3/4. Rows of `basis` span the lattice.
pub fn lll(basis: &mut Vec<Vec<BigInt>>) {
    let n = basis.len();
    if n <= 1 {
        return;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));

    // Gram-Schmidt data, recomputed from scratch after each swap; the
    // lattices here are 3x3 or 4x4 so clarity wins over the cached update.
    let gram = |basis: &Vec<Vec<BigInt>>| -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>, Vec<BigRational>) {
        let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        let mut norms = Vec::with_capacity(n);
        for i in 0..n {
            let mut v: Vec<BigRational> = basis[i]
                .iter()
                .map(|x| BigRational::from(x.clone()))
                .collect();
            for j in 0..i {
                let m = dot_zq(&basis[i], &star[j]) / &norms[j];
                for (vk, sk) in v.iter_mut().zip(&star[j]) {
                    *vk -= &m * sk;
                }
                mu[i][j] = m;
            }
            let nrm = dot_qq(&v, &v);
            assert!(!nrm.is_zero(), "lll basis is rank deficient");
            norms.push(nrm);
            star.push(v);
        }
        (star, mu, norms)
    };

    let (_, mut mu, mut norms) = gram(basis);
    let mut k = 1;
    while k < n {
        // size reduction
        for j in (0..k).rev() {
            if mu[k][j].abs() > BigRational::new(BigInt::one(), BigInt::from(2)) {
                let r = round_rational(&mu[k][j]);
                let row_j = basis[j].clone();
                for (x, y) in basis[k].iter_mut().zip(&row_j) {
                    *x -= &r * y;
                }
                let (_, m2, n2) = gram(basis);
                mu = m2;
                norms = n2;
            }
        }
        // Lovasz condition
        let lhs = &norms[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            let (_, m2, n2) = gram(basis);
            mu = m2;
            norms = n2;
            k = k.max(2) - 1;
            if k == 0 {
                k = 1;
            }
        }
    }
}

/// Rows sorted by squared euclidean norm, shortest first.
pub fn sorted_by_norm(basis: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = basis.to_vec();
    rows.sort_by_key(|r| dot(r, r));
    rows
}
