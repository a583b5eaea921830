// Invariant factors, the rational normal form R(A) and a transform T.

use normform::format::poly_list;
use normform::rnf::{invariant_factors, rnf_transform};
use normform::{Field, Matrix, Result};

pub fn run_example() -> Result<()> {
    let f5 = Field::prime(5)?;
    // diag(2, 2, 3) plus a nilpotent kick in the 2-eigenspace
    let d = Matrix::from_i64s(f5, 4, 4, &[2, 1, 0, 0, 0, 2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 3])?;
    let g = Matrix::from_i64s(f5, 4, 4, &[1, 2, 0, 1, 0, 1, 4, 0, 3, 0, 1, 2, 0, 1, 0, 1])?;
    let a = d.conjugate_by(&g)?;
    println!("A =\n{a}");

    let res = rnf_transform(&a)?;
    for p in res.form.factors() {
        println!("invariant factor {}    {}", poly_list(p), p);
    }
    println!("partition {}", res.form.partition());
    println!("R =\n{}T =\n{}", res.r, res.t);
    assert!(res.verify(&a));

    // conjugation leaves the normal form unchanged
    let h = Matrix::from_i64s(f5, 4, 4, &[1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1])?;
    assert_eq!(invariant_factors(&a.conjugate_by(&h)?)?, res.form);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
