//! Generalized companion matrices and the affine representative family `A(p)`.
//!
//! For a partition `p` with `s` distinct part sizes, a point of `A(p)` is
//! determined by monic `Q_1, ..., Q_s` with `deg Q_i = q_i` (see
//! [`jump_data`]). Its `i`-th diagonal block is `C(Q_k, ..., Q_s)` where `k` is
//! the first jump index at or after `i`, so every block is a lower-right corner
//! of the first one and the whole family is an affine space of dimension `p_1`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::{poly_product, Polynomial};
use crate::rnf::{companion, Partition, RationalNormalForm};

/// `C(Q_1, ..., Q_s)`: the companions `B(Q_j)` along the diagonal with a 1 in
/// every subdiagonal position, including those joining consecutive blocks.
pub fn generalized_companion(qs: &[Polynomial]) -> Result<Matrix> {
    let blocks = qs.iter().map(companion).collect::<Result<Vec<_>>>()?;
    let mut m = Matrix::block_diagonal(&blocks)?;
    let one = m.field().one();
    for i in 1..m.rows() {
        m.set(i, i - 1, one.clone());
    }
    Ok(m)
}

/// The unique nilpotent member of `C(q)`: ones on the subdiagonal.
pub fn nilpotent_base(field: Field, q: &[usize]) -> Result<Matrix> {
    if q.contains(&0) {
        return Err(Error::DegreeZero);
    }
    let qs: Vec<Polynomial> = q.iter().map(|&d| Polynomial::monomial(field, d)).collect();
    generalized_companion(&qs)
}

/// Jump indices of a partition and the derived degrees `q_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpData {
    /// 1-based `j_1 < ... < j_{s-1}` with `p_j != p_{j+1}`.
    pub jumps: Vec<usize>,
    /// `q_i = p_{j_i} - p_{j_i + 1}` for `i < s`, and `q_s = p_r`.
    pub qs: Vec<usize>,
}

impl JumpData {
    pub fn s(&self) -> usize {
        self.qs.len()
    }

    /// `j_1, ..., j_{s-1}, j_s = r`.
    fn closed_jumps(&self, r: usize) -> Vec<usize> {
        let mut j = self.jumps.clone();
        j.push(r);
        j
    }
}

pub fn jump_data(p: &Partition) -> JumpData {
    let parts = p.parts();
    let jumps: Vec<usize> = (1..parts.len()).filter(|&i| parts[i - 1] != parts[i]).collect();
    let mut qs: Vec<usize> = jumps.iter().map(|&j| parts[j - 1] - parts[j]).collect();
    qs.push(*parts.last().expect("partitions are nonempty"));
    debug_assert_eq!(qs.iter().sum::<usize>(), p.largest());
    JumpData { jumps, qs }
}

/// A point of `A(p)` in coordinates: the partition and the monic `Q_1..Q_s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineRepresentative {
    partition: Partition,
    qs: Vec<Polynomial>,
}

impl AffineRepresentative {
    pub fn new(partition: Partition, qs: Vec<Polynomial>) -> Result<Self> {
        let jd = jump_data(&partition);
        if qs.len() != jd.s() {
            return Err(Error::DegreeMismatch { expected: jd.s(), found: qs.len() });
        }
        let field = qs[0].field();
        for (q, &deg) in qs.iter().zip(&jd.qs) {
            if q.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), q.field().to_string()));
            }
            if !q.is_monic() {
                return Err(Error::NotMonic);
            }
            let found = q.degree().unwrap_or(0);
            if found != deg {
                return Err(Error::DegreeMismatch { expected: deg, found });
            }
        }
        Ok(AffineRepresentative { partition, qs })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn qs(&self) -> &[Polynomial] {
        &self.qs
    }

    pub fn field(&self) -> Field {
        self.qs[0].field()
    }

    /// Index `k` (0-based) of the first polynomial used by each diagonal block.
    fn block_starts(&self) -> Vec<usize> {
        let r = self.partition.len();
        let closed = jump_data(&self.partition).closed_jumps(r);
        (1..=r)
            .map(|i| closed.iter().position(|&j| i <= j).expect("j_s = r"))
            .collect()
    }

    /// The realized block-diagonal matrix.
    pub fn matrix(&self) -> Matrix {
        let blocks: Vec<Matrix> = self
            .block_starts()
            .into_iter()
            .map(|k| generalized_companion(&self.qs[k..]).expect("validated polynomials"))
            .collect();
        Matrix::block_diagonal(&blocks).expect("nonempty blocks over one field")
    }

    /// `P_i = Q_k Q_{k+1} ... Q_s` for each block.
    pub fn to_rnf(&self) -> RationalNormalForm {
        let factors = self
            .block_starts()
            .into_iter()
            .map(|k| poly_product(&self.qs[k..]).expect("nonempty tail"))
            .collect();
        RationalNormalForm::new(factors).expect("products form a divisibility chain")
    }

    /// Number of free scalar coordinates, `sum q_i = p_1`.
    pub fn dimension(&self) -> usize {
        self.qs.iter().filter_map(Polynomial::degree).sum()
    }
}

pub fn affine_point(p: &Partition, qs: &[Polynomial]) -> Result<Matrix> {
    Ok(AffineRepresentative::new(p.clone(), qs.to_vec())?.matrix())
}

pub fn to_rnf(rep: &AffineRepresentative) -> RationalNormalForm {
    rep.to_rnf()
}

/// Inverse of [`to_rnf`]: `Q_i = P_{j_i} / P_{j_i + 1}` and `Q_s = P_r`.
pub fn to_affine(rnf: &RationalNormalForm) -> Result<AffineRepresentative> {
    let p = rnf.partition();
    let jd = jump_data(&p);
    let factors = rnf.factors();
    let mut qs = Vec::with_capacity(jd.s());
    for &j in &jd.jumps {
        let q = factors[j - 1]
            .exact_div(&factors[j])?
            .ok_or(Error::ChainViolation(j))?;
        qs.push(q);
    }
    qs.push(factors.last().expect("nonempty chain").clone());
    AffineRepresentative::new(p, qs)
}
