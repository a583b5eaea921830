// Hom spaces between pair modules and splitting off the simple summand.

use normform::pairs::{hom_dimension, invariants, simple_pair, split_off_simple, QForm};
use normform::{Field, Matrix, Result};

pub fn run_example() -> Result<()> {
    let f11 = Field::prime(11)?;
    let s = simple_pair(f11, 4)?;
    let t = QForm::new(f11.from_i64(3), f11.from_i64(5), f11.from_i64(2))?.pair();
    println!("dim Hom(s, s) = {}", hom_dimension(&s, &s)?);
    println!("dim Hom(t, s) = {}", hom_dimension(&t.to_point(), &s)?);

    let g0 = Matrix::from_i64s(f11, 4, 4, &[1, 2, 0, 1, 0, 1, 3, 0, 4, 0, 1, 1, 0, 5, 0, 1])?;
    let m = s.direct_sum(&t.to_point())?.conjugate_by(&g0)?;
    let split = split_off_simple(&m)?;
    println!("h =\n{}", split.h);
    println!("h^-1 m1 h =\n{}", m.conjugate_by(&split.h)?.m1);
    let t2 = split.t.to_sl2()?;
    assert_eq!(invariants(&t2), invariants(&t));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
