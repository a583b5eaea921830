//! Dense univariate polynomials over a [`Field`], coefficients in ascending degree.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(field: Field, coeffs: Vec<Scalar>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| !field.contains(c)) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        Ok(Self::normalized(field, coeffs))
    }

    fn normalized(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> Self {
        Self::normalized(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Self {
        Polynomial { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::normalized(c.field(), vec![c])
    }

    /// `X^k`.
    pub fn monomial(field: Field, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(field.one());
        Polynomial { field, coeffs }
    }

    /// `X - c`.
    pub fn linear(c: &Scalar) -> Self {
        let f = c.field();
        Polynomial { field: f, coeffs: vec![-c, f.one()] }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `X^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Scalar::is_one)
    }

    /// Scales to leading coefficient 1.
    pub fn to_monic(&self) -> Result<Self> {
        let lc = self.leading().ok_or(Error::DivisionByZero)?.inv()?;
        Ok(self.scale(&lc))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()))
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::normalized(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::normalized(
            self.field,
            (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::normalized(
            self.field,
            (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect(),
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(Self::normalized(self.field, out))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor.leading().expect("nonzero").inv()?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&d| d >= dd) else {
            return Ok((Self::zero(self.field), self.clone()));
        };
        let mut quot = vec![self.field.zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * b);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::normalized(self.field, quot), Self::normalized(self.field, rem)))
    }

    /// Quotient when `divisor` divides `self`, `None` otherwise.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>> {
        let (q, r) = self.divmod(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.divmod(self)?.1.is_zero())
    }

    /// Greatest common divisor, normalized to be monic (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divmod(&b)?.1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.to_monic()
        }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// `P(A)` by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Result<Matrix> {
        let n = a.square_size()?;
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a)?.add(&Matrix::identity(self.field, n).scale(c))?;
        }
        Ok(acc)
    }

    /// `P(A) v` without forming `P(A)`.
    pub fn apply(&self, a: &Matrix, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let mut acc = vec![self.field.zero(); v.len()];
        for c in self.coeffs.iter().rev() {
            acc = a.mul_vec(&acc)?;
            for (x, vi) in acc.iter_mut().zip(v) {
                *x = &*x + &(c * vi);
            }
        }
        Ok(acc)
    }
}

/// Quotient and remainder of `f` by `g`.
pub fn poly_divmod(f: &Polynomial, g: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    f.divmod(g)
}

/// Product of a nonempty list of polynomials over one field.
pub fn poly_product(factors: &[Polynomial]) -> Result<Polynomial> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptyInput("no factors"))?;
    rest.iter().try_fold(first.clone(), |acc, f| acc.mul(f))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let coeff = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
            match i {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}X")?,
                _ => write!(f, "{coeff}X^{i}")?,
            }
        }
        Ok(())
    }
}
