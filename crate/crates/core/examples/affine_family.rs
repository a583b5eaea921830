// The affine representatives A(p) and their bijection with normal forms.

use normform::affine::{generalized_companion, jump_data, to_affine, AffineRepresentative};
use normform::rnf::invariant_factors;
use normform::{Field, Partition, Polynomial, Result};

pub fn run_example() -> Result<()> {
    let q = Field::rationals();
    // X^2 - 4X - 5, X - 3, X^2 - X - 2
    let qs = vec![
        Polynomial::from_i64s(q, &[-5, -4, 1]),
        Polynomial::from_i64s(q, &[-3, 1]),
        Polynomial::from_i64s(q, &[-2, -1, 1]),
    ];
    println!("C(Q1, Q2, Q3) =\n{}", generalized_companion(&qs)?);

    let p = Partition::new(vec![5, 3, 2, 2])?;
    let jd = jump_data(&p);
    println!("partition {p}: jumps {:?}, degrees {:?}", jd.jumps, jd.qs);
    let rep = AffineRepresentative::new(p, qs)?;
    let m = rep.matrix();
    println!("A(p) point ({} free parameters) =\n{m}", rep.dimension());

    let form = rep.to_rnf();
    for f in form.factors() {
        println!("P = {f}");
    }
    assert_eq!(invariant_factors(&m)?, form);
    assert_eq!(to_affine(&form)?, rep);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
