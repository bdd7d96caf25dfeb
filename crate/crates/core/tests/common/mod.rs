//! Independent oracles shared by the integration suites. Nothing here calls
//! the order, irreducibility or jump-evaluation code under test.

#![allow(dead_code)]

use fracjump::{Matrix, Poly, PrimeField};

/// Monic polynomials of degree `d` over `F_p`, as ascending coefficients.
pub fn monic_coeffs(p: u64, d: usize) -> impl Iterator<Item = Vec<u64>> {
    (0..p.pow(d as u32)).map(move |idx| {
        let mut c: Vec<u64> = (0..d).map(|k| (idx / p.pow(k as u32)) % p).collect();
        c.push(1);
        c
    })
}

/// Irreducibility of a monic polynomial of degree <= 3 by root search.
pub fn irreducible_small(p: u64, c: &[u64]) -> bool {
    let d = c.len() - 1;
    assert!((1..=3).contains(&d));
    d == 1
        || (0..p).all(|x| {
            c.iter()
                .rev()
                .fold(0u64, |acc, &a| (acc * x + a) % p)
                != 0
        })
}

/// Order of the class of `T` in `(F_p[T]/(f))^* / F_p^*` for monic `f`
/// with `f(0) != 0`: the least `k >= 1` with `T^k` a nonzero constant.
/// Multiplies by `T` with an explicit shift-and-reduce loop.
pub fn brute_projective_order(p: u64, f: &[u64]) -> u64 {
    let d = f.len() - 1;
    assert_eq!(f[d], 1);
    assert_ne!(f[0] % p, 0);
    let mut r = vec![0u64; d];
    if d == 1 {
        // T = -f_0 is already a constant
        return 1;
    }
    r[1] = 1;
    let mut k = 1u64;
    loop {
        if r[1..].iter().all(|&v| v == 0) && r[0] != 0 {
            return k;
        }
        // r <- T r mod f
        let top = r[d - 1];
        for i in (1..d).rev() {
            r[i] = r[i - 1];
        }
        r[0] = 0;
        for i in 0..d {
            r[i] = (r[i] + (p - f[i] % p) * top) % p;
        }
        k += 1;
    }
}

/// `(q^d - 1)/(q - 1)` in machine integers.
pub fn proj_count(q: u64, d: u32) -> u64 {
    (q.pow(d) - 1) / (q - 1)
}

/// Expected `M^i` for the companion `M` of `T^p - T - c`, `1 <= i <= p-1`:
/// `[[0_{i,p-i}, J_i(c)^t], [Id_{p-i}, E^{(1,i)}]]`.
pub fn artin_schreier_block(field: &PrimeField, c: u32, i: usize) -> Matrix {
    let n = field.modulus() as usize;
    let mut rows = vec![vec![0i64; n]; n];
    for r in 0..i {
        rows[r][n - i + r] = c as i64;
        if r > 0 {
            rows[r][n - i + r - 1] = 1;
        }
    }
    for rr in 0..n - i {
        rows[i + rr][rr] = 1;
    }
    rows[i][n - 1] += 1;
    Matrix::from_rows(field, &rows).unwrap()
}

/// Naive fractional jump: push `(x : 1)` through `M` until the last
/// coordinate is nonzero, using only schoolbook integer arithmetic.
pub fn naive_jump(p: u64, rows: &[Vec<u64>], x: &[u64]) -> (Vec<u64>, u64) {
    let dim = rows.len();
    let mut v: Vec<u64> = x.iter().copied().chain([1]).collect();
    for k in 1..=10 * dim as u64 * p.pow(dim as u32) {
        v = rows
            .iter()
            .map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum::<u64>() % p)
            .collect();
        let last = v[dim - 1];
        if last != 0 {
            let inv = (1..p).find(|t| t * last % p == 1).unwrap();
            return (v[..dim - 1].iter().map(|a| a * inv % p).collect(), k);
        }
    }
    panic!("no return to the affine chart");
}

pub fn poly(field: &PrimeField, c: &[u64]) -> Poly {
    Poly::new(field, c)
}
