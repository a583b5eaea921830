#![allow(dead_code)]

use normform::{Field, Matrix, Polynomial, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    match field.order() {
        Some(p) => field.from_i64(rng.gen_range(0..p as i64)),
        None => {
            let num: i64 = rng.gen_range(-6..=6);
            let den: i64 = if rng.gen_bool(0.25) { rng.gen_range(1..=3) } else { 1 };
            field.ratio(&num.into(), &den.into()).unwrap()
        }
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, field: Field, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| random_scalar(rng, field))
}

/// Biased towards repeated eigenvalues so that nontrivial partitions show up.
pub fn random_structured(rng: &mut ChaCha8Rng, field: Field, n: usize) -> Matrix {
    if rng.gen_bool(0.5) {
        return random_matrix(rng, field, n, n);
    }
    let values: Vec<i64> = (0..2).map(|_| rng.gen_range(0..3)).collect();
    let mut d = Matrix::zeros(field, n, n);
    for i in 0..n {
        d.set(i, i, field.from_i64(values[rng.gen_range(0..2)]));
        if i + 1 < n && rng.gen_bool(0.4) {
            d.set(i, i + 1, field.one());
        }
    }
    let g = random_invertible(rng, field, n);
    d.conjugate_by(&g).unwrap()
}

pub fn random_invertible(rng: &mut ChaCha8Rng, field: Field, n: usize) -> Matrix {
    loop {
        let g = random_matrix(rng, field, n, n);
        if g.inverse().is_ok() {
            return g;
        }
    }
}

pub fn random_monic(rng: &mut ChaCha8Rng, field: Field, degree: usize) -> Polynomial {
    let mut c: Vec<Scalar> = (0..degree).map(|_| random_scalar(rng, field)).collect();
    c.push(field.one());
    Polynomial::new(field, c).unwrap()
}

/// Invariant factors of `A` from the Smith form of `X I - A` over k[X],
/// largest first, trivial factors dropped. Shares nothing with the
/// cyclic-vector decomposition in the library.
pub fn smith_invariant_factors(a: &Matrix) -> Vec<Polynomial> {
    let field = a.field();
    let n = a.rows();
    let mut m: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Polynomial::constant(-a.get(i, j));
                    if i == j { c.add(&Polynomial::monomial(field, 1)).unwrap() } else { c }
                })
                .collect()
        })
        .collect();
    let mut diag = Vec::new();
    for k in 0..n {
        // pivot: nonzero entry of least degree in the trailing block
        while let Some((pi, pj)) = (k..n)
            .flat_map(|i| (k..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by_key(|&(i, j)| m[i][j].degree())
        {
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            let pivot = m[k][k].clone();
            let mut clean = true;
            for i in k + 1..n {
                let (q, r) = m[i][k].divmod(&pivot).unwrap();
                let pivot_row = m[k].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row).skip(k) {
                    *x = x.sub(&q.mul(y).unwrap()).unwrap();
                }
                clean &= r.is_zero();
            }
            for j in k + 1..n {
                let (q, r) = m[k][j].divmod(&pivot).unwrap();
                for row in m.iter_mut().skip(k) {
                    row[j] = row[j].sub(&q.mul(&row[k]).unwrap()).unwrap();
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole trailing block
            let bad = (k + 1..n).find(|&i| (k + 1..n).any(|j| !pivot.divides(&m[i][j]).unwrap()));
            match bad {
                Some(i) => {
                    let other = m[i].clone();
                    for (x, y) in m[k].iter_mut().zip(&other).skip(k) {
                        *x = x.add(y).unwrap();
                    }
                }
                None => break,
            }
        }
        diag.push(m[k][k].to_monic().unwrap());
    }
    let mut out: Vec<Polynomial> = diag.into_iter().filter(|p| p.degree() != Some(0)).collect();
    out.reverse();
    out
}
