//! Rational normal form of a square matrix, with an explicit similarity transform.
//!
//! The decomposition is cyclic: pick a vector whose local minimal polynomial
//! equals the minimal polynomial `P_1` of `A`, split off its Krylov space
//! together with an `A`-invariant complement cut out by a dual functional, and
//! recurse on the complement. Every step is a finite sequence of exact field
//! operations, `O(n^4)` in total.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::poly::Polynomial;

/// Companion matrix `B(P)` of a monic `P` of degree `d >= 1`: ones on the
/// subdiagonal, last column `-(c_0, ..., c_{d-1})`. With this convention
/// `B(X^2 - dX - e) = [[0, e], [1, d]]`.
pub fn companion(p: &Polynomial) -> Result<Matrix> {
    let d = p.degree().ok_or(Error::DegreeZero)?;
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let field = p.field();
    Ok(Matrix::from_fn(field, d, d, |i, j| {
        if j == d - 1 {
            -&p.coeff(i)
        } else if i == j + 1 {
            field.one()
        } else {
            field.zero()
        }
    }))
}

/// A partition `p_1 >= p_2 >= ... >= p_r >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The number being partitioned.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.parts[0]
    }

    /// All partitions of `n >= 1`, in reverse lexicographic order
    /// (`(n)` first, `(1, ..., 1)` last).
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for part in (1..=max.min(rest)).rev() {
                cur.push(part);
                go(rest - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            go(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The invariant factors `(P_1, ..., P_r)`, monic of degree >= 1, with
/// `P_{i+1} | P_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalNormalForm {
    factors: Vec<Polynomial>,
}

impl RationalNormalForm {
    pub fn new(factors: Vec<Polynomial>) -> Result<Self> {
        let first = factors.first().ok_or(Error::EmptyInput("no invariant factors"))?;
        let field = first.field();
        for p in &factors {
            if p.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), p.field().to_string()));
            }
            match p.degree() {
                None | Some(0) => return Err(Error::DegreeZero),
                _ if !p.is_monic() => return Err(Error::NotMonic),
                _ => {}
            }
        }
        for (i, w) in factors.windows(2).enumerate() {
            if !w[1].divides(&w[0])? {
                return Err(Error::ChainViolation(i + 1));
            }
        }
        Ok(RationalNormalForm { factors })
    }

    pub fn factors(&self) -> &[Polynomial] {
        &self.factors
    }

    pub fn field(&self) -> Field {
        self.factors[0].field()
    }

    /// Size `n` of the represented matrices.
    pub fn size(&self) -> usize {
        self.factors.iter().filter_map(Polynomial::degree).sum()
    }

    /// `P_1`, the minimal polynomial of the class.
    pub fn minimal_polynomial(&self) -> &Polynomial {
        &self.factors[0]
    }

    pub fn partition(&self) -> Partition {
        Partition {
            parts: self.factors.iter().filter_map(Polynomial::degree).collect(),
        }
    }

    /// `R(P_1, ..., P_r)`: the companions on the diagonal, in order.
    pub fn matrix(&self) -> Matrix {
        let blocks: Vec<Matrix> = self
            .factors
            .iter()
            .map(|p| companion(p).expect("validated factor"))
            .collect();
        Matrix::block_diagonal(&blocks).expect("validated factors share a field")
    }
}

pub fn assemble_rnf_matrix(rnf: &RationalNormalForm) -> Matrix {
    rnf.matrix()
}

pub fn partition_of(rnf: &RationalNormalForm) -> Partition {
    rnf.partition()
}

/// Normal form `R` of `A` together with an invertible `T` with `T^-1 A T = R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RnfTransform {
    pub form: RationalNormalForm,
    pub r: Matrix,
    pub t: Matrix,
}

impl RnfTransform {
    /// Recomputes `T^-1 A T` and compares it with `R`.
    pub fn verify(&self, a: &Matrix) -> bool {
        a.conjugate_by(&self.t).is_ok_and(|c| c == self.r)
    }
}

pub fn invariant_factors(a: &Matrix) -> Result<RationalNormalForm> {
    Ok(rnf_transform(a)?.form)
}

pub fn rnf_transform(a: &Matrix) -> Result<RnfTransform> {
    let n = a.square_size()?;
    if n == 0 {
        return Err(Error::EmptyInput("0x0 matrix"));
    }
    let (factors, t) = cyclic_decomposition(a)?;
    let form = RationalNormalForm::new(factors)?;
    let r = form.matrix();
    Ok(RnfTransform { form, r, t })
}

/// The minimal polynomial of `A`.
pub fn minimal_polynomial(a: &Matrix) -> Result<Polynomial> {
    a.square_size()?;
    Ok(maximal_vector(a)?.1)
}

/// Krylov vectors `v, Av, ..., A^{d-1} v` and the monic local minimal
/// polynomial of `v` (of degree `d`).
pub fn krylov(a: &Matrix, v: &[Scalar]) -> Result<(Vec<Vec<Scalar>>, Polynomial)> {
    let field = a.field();
    // reduced rows: (pivot, row, coefficients over the Krylov vectors)
    let mut echelon: Vec<(usize, Vec<Scalar>, Vec<Scalar>)> = Vec::new();
    let mut basis = Vec::new();
    let mut w = v.to_vec();
    loop {
        let k = basis.len();
        let mut red = w.clone();
        let mut comb = vec![field.zero(); k + 1];
        comb[k] = field.one();
        for (pivot, row, rc) in &echelon {
            let c = red[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in red.iter_mut().zip(row) {
                *x = &*x - &(&c * y);
            }
            for (x, y) in comb.iter_mut().zip(rc) {
                *x = &*x - &(&c * y);
            }
        }
        match red.iter().position(|x| !x.is_zero()) {
            None => return Ok((basis, Polynomial::new(field, comb)?)),
            Some(pivot) => {
                let inv = red[pivot].inv()?;
                red.iter_mut().for_each(|x| *x = &*x * &inv);
                comb.iter_mut().for_each(|x| *x = &*x * &inv);
                echelon.push((pivot, red, comb));
                let next = a.mul_vec(&w)?;
                basis.push(std::mem::replace(&mut w, next));
            }
        }
    }
}

/// Splits `lcm(a, b)` as `f * g` with `f | a`, `g | b` and `gcd(f, g) = 1`.
fn coprime_split(a: &Polynomial, b: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    let mut f = a.clone();
    let mut g = b.divmod(&a.gcd(b)?)?.0;
    loop {
        let d = f.gcd(&g)?;
        if d.degree() == Some(0) {
            return Ok((f, g));
        }
        f = f.divmod(&d)?.0;
        g = g.mul(&d)?;
    }
}

/// A vector whose local minimal polynomial is the minimal polynomial of `A`.
fn maximal_vector(a: &Matrix) -> Result<(Vec<Scalar>, Polynomial)> {
    let field = a.field();
    let n = a.rows();
    let unit = |i: usize| -> Vec<Scalar> {
        (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()
    };
    let mut v = unit(0);
    let mut mu = krylov(a, &v)?.1;
    for i in 1..n {
        let e = unit(i);
        let mu_e = krylov(a, &e)?.1;
        if mu_e.divides(&mu)? {
            continue;
        }
        let (f, g) = coprime_split(&mu, &mu_e)?;
        let u = mu.divmod(&f)?.0.apply(a, &v)?;
        let w = mu_e.divmod(&g)?.0.apply(a, &e)?;
        v = u.iter().zip(&w).map(|(x, y)| x + y).collect();
        mu = f.mul(&g)?;
    }
    Ok((v, mu))
}

fn cyclic_decomposition(a: &Matrix) -> Result<(Vec<Polynomial>, Matrix)> {
    let field = a.field();
    let n = a.rows();
    let (v, mu) = maximal_vector(a)?;
    let (krylov_basis, local) = krylov(a, &v)?;
    debug_assert_eq!(local, mu);
    let d = krylov_basis.len();
    let cyclic = Matrix::from_columns(field, n, &krylov_basis)?;
    if d == n {
        return Ok((vec![mu], cyclic));
    }

    // phi vanishes on v, ..., A^{d-2} v and is 1 on A^{d-1} v; the common
    // kernel of phi, phi A, ..., phi A^{d-1} is an invariant complement.
    let mut target = vec![field.zero(); d];
    target[d - 1] = field.one();
    let phi = cyclic
        .transpose()
        .solve(&target)?
        .ok_or(Error::BasisFailure)?;
    let mut rows = vec![phi];
    for _ in 1..d {
        let next = a.vec_mul(rows.last().expect("nonempty"))?;
        rows.push(next);
    }
    let (_, complement) = Matrix::from_rows(field, rows)?.rank_kernel();
    if complement.len() != n - d {
        return Err(Error::BasisFailure);
    }
    let complement = Matrix::from_columns(field, n, &complement)?;
    let basis = cyclic.hstack(&complement)?;
    let image = basis.inverse()?.mul(a)?.mul(&complement)?;
    debug_assert!(image.submatrix(0, 0, d, n - d).is_zero());
    let restricted = image.submatrix(d, 0, n - d, n - d);

    let (rest, t_rest) = cyclic_decomposition(&restricted)?;
    let t = cyclic.hstack(&complement.mul(&t_rest)?)?;
    let mut factors = vec![mu];
    factors.extend(rest);
    Ok((factors, t))
}
