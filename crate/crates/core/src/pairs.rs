//! Pairs of matrices under simultaneous conjugation.
//!
//! For trace-zero 2x2 pairs the triple `(det A, tr AB, det B)` separates the
//! orbits on the locus where `g = x1 x3 (x2^2 - 4 x1 x3)` does not vanish, and
//! each such orbit meets the family [`QForm`] in four points (one point in
//! characteristic 2). For pairs of arbitrary size this module computes Hom
//! spaces between the corresponding modules over the free algebra on two
//! generators, and splits the fixed simple pair `S` off a pair that contains
//! it exactly once.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// A pair `(A, B)` of trace-zero 2x2 matrices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sl2Pair {
    a: Matrix,
    b: Matrix,
}

impl Sl2Pair {
    pub fn new(a: Matrix, b: Matrix) -> Result<Self> {
        for m in [&a, &b] {
            if (m.rows(), m.cols()) != (2, 2) {
                return Err(Error::DimensionMismatch(format!(
                    "expected a 2x2 matrix, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if a.field() != b.field() {
            return Err(Error::FieldMismatch(a.field().to_string(), b.field().to_string()));
        }
        if !a.trace()?.is_zero() || !b.trace()?.is_zero() {
            return Err(Error::TraceNonzero);
        }
        Ok(Sl2Pair { a, b })
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    /// `(g^-1 A g, g^-1 B g)`.
    pub fn conjugate_by(&self, g: &Matrix) -> Result<Sl2Pair> {
        Sl2Pair::new(self.a.conjugate_by(g)?, self.b.conjugate_by(g)?)
    }

    pub fn to_point(&self) -> PairPoint {
        PairPoint { m1: self.a.clone(), m2: self.b.clone() }
    }
}

/// `(det A, tr AB, det B)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantTriple {
    pub x1: Scalar,
    pub x2: Scalar,
    pub x3: Scalar,
}

impl InvariantTriple {
    pub fn new(x1: Scalar, x2: Scalar, x3: Scalar) -> Result<Self> {
        let f = x1.field();
        if x2.field() != f || x3.field() != f {
            return Err(Error::FieldMismatch(f.to_string(), x2.field().to_string()));
        }
        Ok(InvariantTriple { x1, x2, x3 })
    }

    pub fn field(&self) -> Field {
        self.x1.field()
    }

    /// Membership in the locus `g != 0`.
    pub fn in_y(&self) -> bool {
        !g_value(self).is_zero()
    }
}

/// The normal-form family: `A = [[a11, 1], [0, -a11]]`,
/// `B = [[b11, 0], [b21, -b11]]` with `a11 b11 b21 (4 a11 b11 + b21) != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QForm {
    pub a11: Scalar,
    pub b11: Scalar,
    pub b21: Scalar,
}

impl QForm {
    pub fn new(a11: Scalar, b11: Scalar, b21: Scalar) -> Result<Self> {
        let f = a11.field();
        if b11.field() != f || b21.field() != f {
            return Err(Error::FieldMismatch(f.to_string(), b11.field().to_string()));
        }
        let four_ab = &(&f.from_i64(4) * &a11) * &b11;
        let cond = &(&(&a11 * &b11) * &b21) * &(&four_ab + &b21);
        if cond.is_zero() {
            return Err(Error::NotInY);
        }
        Ok(QForm { a11, b11, b21 })
    }

    pub fn field(&self) -> Field {
        self.a11.field()
    }

    pub fn pair(&self) -> Sl2Pair {
        let f = self.field();
        let a = Matrix::new(f, 2, 2, vec![self.a11.clone(), f.one(), f.zero(), -&self.a11])
            .expect("2x2");
        let b = Matrix::new(f, 2, 2, vec![self.b11.clone(), f.zero(), self.b21.clone(), -&self.b11])
            .expect("2x2");
        Sl2Pair { a, b }
    }
}

pub fn invariants(pair: &Sl2Pair) -> InvariantTriple {
    let ab = pair.a.mul(&pair.b).expect("2x2 product");
    InvariantTriple {
        x1: pair.a.det().expect("square"),
        x2: ab.trace().expect("square"),
        x3: pair.b.det().expect("square"),
    }
}

/// `x1 x3 (x2^2 - 4 x1 x3)`.
pub fn g_value(y: &InvariantTriple) -> Scalar {
    let f = y.field();
    let x1x3 = &y.x1 * &y.x3;
    let disc = &(&y.x2 * &y.x2) - &(&f.from_i64(4) * &x1x3);
    &x1x3 * &disc
}

fn distinct_roots(x: &Scalar) -> Option<Vec<Scalar>> {
    let (r1, r2) = x.sqrt()?;
    Some(if r1 == r2 { vec![r1] } else { vec![r1, r2] })
}

/// All points of [`QForm`] over `y`, ordered by `(a11, b11)`.
pub fn q_points(y: &InvariantTriple) -> Result<Vec<QForm>> {
    if !y.in_y() {
        return Err(Error::NotInY);
    }
    let a_roots = distinct_roots(&-&y.x1).ok_or(Error::RootsMissingInField)?;
    let b_roots = distinct_roots(&-&y.x3).ok_or(Error::RootsMissingInField)?;
    let two = y.field().from_i64(2);
    let mut out = Vec::with_capacity(a_roots.len() * b_roots.len());
    for a11 in &a_roots {
        for b11 in &b_roots {
            let b21 = &y.x2 - &(&(&two * b11) * a11);
            out.push(QForm::new(a11.clone(), b11.clone(), b21)?);
        }
    }
    out.sort();
    Ok(out)
}

fn first_nonzero_is_one(mut v: Vec<Scalar>) -> Vec<Scalar> {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        let inv = lead.inv().expect("nonzero");
        v.iter_mut().for_each(|x| *x = &*x * &inv);
    }
    v
}

fn shift(m: &Matrix, lambda: &Scalar) -> Matrix {
    m.sub(&Matrix::identity(m.field(), m.rows()).scale(lambda)).expect("same shape")
}

/// A nonzero common eigenvector of `A` and `B`, if one exists.
///
/// Vectors are scaled so the first nonzero coordinate is 1; among all common
/// eigenlines the one whose leading coordinate comes first is returned (ties
/// broken by the canonical order of the remaining entries), so `e1` wins over
/// `e2`.
pub fn common_eigenvector(pair: &Sl2Pair) -> Result<Option<Vec<Scalar>>> {
    // trace zero: eigenvalues are the square roots of -det
    let a_eig = distinct_roots(&-&pair.a.det()?).ok_or(Error::EigenvaluesMissingInField)?;
    let b_eig = distinct_roots(&-&pair.b.det()?).ok_or(Error::EigenvaluesMissingInField)?;
    let mut best: Option<(usize, Vec<Scalar>)> = None;
    for la in &a_eig {
        for lb in &b_eig {
            let stacked = shift(&pair.a, la).vstack(&shift(&pair.b, lb))?;
            for v in stacked.rank_kernel().1 {
                let v = first_nonzero_is_one(v);
                let lead = v.iter().position(|x| !x.is_zero()).expect("kernel vectors are nonzero");
                let better = match &best {
                    None => true,
                    Some((l, w)) => (lead, &v) < (*l, w),
                };
                if better {
                    best = Some((lead, v));
                }
            }
        }
    }
    Ok(best.map(|(_, v)| v))
}

/// Conjugates a pair over `Y` into [`QForm`]: returns `g` and `q` with
/// `g^-1 A g`, `g^-1 B g` realizing `q`. `a11` and `b11` are the first square
/// roots of `-x1` and `-x3`.
pub fn reduce_to_q(pair: &Sl2Pair) -> Result<(Matrix, QForm)> {
    let y = invariants(pair);
    if !y.in_y() {
        return Err(Error::NotInY);
    }
    let field = pair.field();
    let (a11, _) = (-&y.x1).sqrt().ok_or(Error::EigenvaluesMissingInField)?;
    let (b11, _) = (-&y.x3).sqrt().ok_or(Error::EigenvaluesMissingInField)?;

    let eigvec = |m: &Matrix, lambda: &Scalar| -> Result<Vec<Scalar>> {
        shift(m, lambda).rank_kernel().1.into_iter().next().ok_or(Error::BasisFailure)
    };
    // A v1 = a11 v1, B w1 = -b11 w1
    let v1 = eigvec(&pair.a, &a11)?;
    let w1 = eigvec(&pair.b, &-&b11)?;
    // (A + a11) w1 is a multiple of v1, nonzero because w1 is no eigenvector of A
    let u = shift(&pair.a, &-&a11).mul_vec(&w1)?;
    let k = v1.iter().position(|x| !x.is_zero()).ok_or(Error::BasisFailure)?;
    let alpha = u[k].checked_div(&v1[k])?;
    if alpha.is_zero() {
        return Err(Error::BasisFailure);
    }
    let scaled: Vec<Scalar> = v1.iter().map(|x| &alpha * x).collect();
    let g = Matrix::from_columns(field, 2, &[scaled, w1])?;
    let conj = pair.conjugate_by(&g).map_err(|_| Error::BasisFailure)?;
    let q = QForm::new(a11, b11, conj.b.get(1, 0).clone())?;
    if q.pair() != conj {
        return Err(Error::BasisFailure);
    }
    Ok((g, q))
}

/// A pair `m = (m1, m2)` of square matrices of one size: a module over the
/// free algebra on two generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairPoint {
    pub m1: Matrix,
    pub m2: Matrix,
}

impl PairPoint {
    pub fn new(m1: Matrix, m2: Matrix) -> Result<Self> {
        let n = m1.square_size()?;
        if m2.square_size()? != n {
            return Err(Error::DimensionMismatch(format!(
                "pair components of sizes {n} and {}",
                m2.rows()
            )));
        }
        if m1.field() != m2.field() {
            return Err(Error::FieldMismatch(m1.field().to_string(), m2.field().to_string()));
        }
        Ok(PairPoint { m1, m2 })
    }

    pub fn size(&self) -> usize {
        self.m1.rows()
    }

    pub fn field(&self) -> Field {
        self.m1.field()
    }

    pub fn direct_sum(&self, other: &PairPoint) -> Result<PairPoint> {
        PairPoint::new(
            Matrix::block_diagonal(&[self.m1.clone(), other.m1.clone()])?,
            Matrix::block_diagonal(&[self.m2.clone(), other.m2.clone()])?,
        )
    }

    /// `(h^-1 m1 h, h^-1 m2 h)`.
    pub fn conjugate_by(&self, h: &Matrix) -> Result<PairPoint> {
        let inv = h.inverse()?;
        PairPoint::new(inv.mul(&self.m1)?.mul(h)?, inv.mul(&self.m2)?.mul(h)?)
    }

    pub fn to_sl2(&self) -> Result<Sl2Pair> {
        Sl2Pair::new(self.m1.clone(), self.m2.clone())
    }
}

/// The `2 n n' x n n'` system `f m_i - m'_i f = 0` in the entries of
/// `f` (row-major, `n' x n`).
pub fn intertwiner_system(m: &PairPoint, m2: &PairPoint) -> Result<Matrix> {
    if m.field() != m2.field() {
        return Err(Error::FieldMismatch(m.field().to_string(), m2.field().to_string()));
    }
    let field = m.field();
    let (n, np) = (m.size(), m2.size());
    let unknowns = n * np;
    let mut sys = Matrix::zeros(field, 2 * unknowns, unknowns);
    for (eq, (src, dst)) in [(&m.m1, &m2.m1), (&m.m2, &m2.m2)].into_iter().enumerate() {
        for a in 0..np {
            for b in 0..n {
                let row = eq * unknowns + a * n + b;
                for c in 0..n {
                    let col = a * n + c;
                    let v = sys.get(row, col) + src.get(c, b);
                    sys.set(row, col, v);
                }
                for c in 0..np {
                    let col = c * n + b;
                    let v = sys.get(row, col) - dst.get(a, c);
                    sys.set(row, col, v);
                }
            }
        }
    }
    Ok(sys)
}

/// A basis of `Hom(M, M')` as `n' x n` matrices, each scaled so its first
/// nonzero entry is 1.
pub fn hom_space(m: &PairPoint, m2: &PairPoint) -> Result<Vec<Matrix>> {
    let sys = intertwiner_system(m, m2)?;
    sys.rank_kernel()
        .1
        .into_iter()
        .map(|v| Matrix::new(m.field(), m2.size(), m.size(), first_nonzero_is_one(v)))
        .collect()
}

/// `dim Hom(M, M') = n n' - rank B(m, m')`.
pub fn hom_dimension(m: &PairPoint, m2: &PairPoint) -> Result<usize> {
    let sys = intertwiner_system(m, m2)?;
    Ok(sys.cols() - sys.rank())
}

/// The simple pair of size `n - 2`: `diag(1, ..., n-2)` and the cyclic
/// permutation `e_j -> e_{j+1}`.
pub fn simple_pair(field: Field, n: usize) -> Result<PairPoint> {
    if n < 3 {
        return Err(Error::DimensionMismatch(format!("simple pair needs n >= 3, got {n}")));
    }
    let k = n - 2;
    if let Some(p) = field.order() {
        if k as u64 > p {
            return Err(Error::DegenerateDiagonal(k, p));
        }
    }
    let s1 = Matrix::from_fn(field, k, k, |i, j| {
        if i == j { field.from_i64(i as i64 + 1) } else { field.zero() }
    });
    let s2 = Matrix::from_fn(field, k, k, |i, j| {
        if i == (j + 1) % k { field.one() } else { field.zero() }
    });
    PairPoint::new(s1, s2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitOff {
    /// The complement pair, 2x2.
    pub t: PairPoint,
    /// Basis `(f e_1, ..., f e_{n-2}, y1, y2)` with `h^-1 m h = s + t`.
    pub h: Matrix,
}

/// Splits the simple pair `S` off `m`, given `[S, M] = 1 = [M, S]` and a
/// nonvanishing composite `g f`.
pub fn split_off_simple(m: &PairPoint) -> Result<SplitOff> {
    let n = m.size();
    let field = m.field();
    let s = simple_pair(field, n)?;
    let into = hom_space(&s, m)?;
    let out = hom_space(m, &s)?;
    if into.len() != 1 || out.len() != 1 {
        return Err(Error::NotInW(into.len(), out.len()));
    }
    let (f, g) = (&into[0], &out[0]);
    if g.mul(f)?.is_zero() {
        return Err(Error::DegenerateComposite);
    }
    let (_, ker) = g.rank_kernel();
    if ker.len() != 2 {
        return Err(Error::BasisFailure);
    }
    let h = f.hstack(&Matrix::from_columns(field, n, &ker)?)?;
    let conj = m.conjugate_by(&h).map_err(|_| Error::BasisFailure)?;
    let k = n - 2;
    for (full, small) in [(&conj.m1, &s.m1), (&conj.m2, &s.m2)] {
        let split = full.submatrix(0, 0, k, k) == *small
            && full.submatrix(0, k, k, 2).is_zero()
            && full.submatrix(k, 0, 2, k).is_zero();
        if !split {
            return Err(Error::BasisFailure);
        }
    }
    let t = PairPoint::new(conj.m1.submatrix(k, k, 2, 2), conj.m2.submatrix(k, k, 2, 2))?;
    Ok(SplitOff { t, h })
}
