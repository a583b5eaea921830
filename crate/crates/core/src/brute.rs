//! Exhaustive oracles over small prime fields.
//!
//! These enumerate `GL_n(GF(p))` outright and share no code path with the
//! normal-form algorithms, so they serve as ground truth for similarity and
//! simultaneous similarity in tests and in the self-test.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// Refuse enumerations larger than this many matrices.
pub const ENUMERATION_LIMIT: u64 = 1 << 24;

fn enumeration_size(field: Field, rows: usize, cols: usize) -> Result<u64> {
    let p = field
        .order()
        .ok_or_else(|| Error::FieldMismatch("finite field".into(), field.to_string()))?;
    p.checked_pow((rows * cols) as u32)
        .filter(|&c| c <= ENUMERATION_LIMIT)
        .ok_or_else(|| Error::DimensionMismatch(format!("GF({p})^({rows}x{cols}) is too large to enumerate")))
}

/// Every `rows x cols` matrix over a finite field, in odometer order.
pub fn all_matrices(field: Field, rows: usize, cols: usize) -> Result<Vec<Matrix>> {
    let count = enumeration_size(field, rows, cols)?;
    let elems = field.elements().expect("finite");
    let len = rows * cols;
    let mut digits = vec![0usize; len];
    let mut out = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let data = digits.iter().map(|&d| elems[d].clone()).collect();
        out.push(Matrix::new(field, rows, cols, data)?);
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < elems.len() {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}

/// `GL_n` as pairs `(g, g^-1)`.
pub fn general_linear_group(field: Field, n: usize) -> Result<Vec<(Matrix, Matrix)>> {
    Ok(all_matrices(field, n, n)?
        .into_iter()
        .filter_map(|g| g.inverse().ok().map(|inv| (g, inv)))
        .collect())
}

/// Some `g` in `group` with `g^-1 a g = b` for every `(a, b)` in `pairs`.
pub fn find_conjugator<'a>(
    group: &'a [(Matrix, Matrix)],
    pairs: &[(&Matrix, &Matrix)],
) -> Option<&'a Matrix> {
    group
        .iter()
        .map(|(g, _)| g)
        .find(|g| pairs.iter().all(|(a, b)| a.mul(g).ok() == g.mul(b).ok()))
}

pub fn similar(group: &[(Matrix, Matrix)], a: &Matrix, b: &Matrix) -> bool {
    find_conjugator(group, &[(a, b)]).is_some()
}

pub fn simultaneously_similar(
    group: &[(Matrix, Matrix)],
    first: (&Matrix, &Matrix),
    second: (&Matrix, &Matrix),
) -> bool {
    find_conjugator(group, &[(first.0, second.0), (first.1, second.1)]).is_some()
}

/// Labels every `n x n` matrix with the index of its conjugacy class,
/// computed by sweeping orbits under `GL_n`.
pub fn conjugacy_classes(field: Field, n: usize) -> Result<HashMap<Matrix, usize>> {
    let group = general_linear_group(field, n)?;
    let mut label = HashMap::new();
    let mut next = 0;
    for a in all_matrices(field, n, n)? {
        if label.contains_key(&a) {
            continue;
        }
        for (g, inv) in &group {
            label.insert(inv.mul(&a)?.mul(g)?, next);
        }
        next += 1;
    }
    Ok(label)
}
