// Invariants, fibers and normal forms of traceless 2x2 pairs.

use normform::pairs::{common_eigenvector, g_value, invariants, q_points, reduce_to_q, InvariantTriple, Sl2Pair};
use normform::{Field, Matrix, Result};

pub fn run_example() -> Result<()> {
    let f7 = Field::prime(7)?;
    let y = InvariantTriple::new(f7.from_i64(6), f7.from_i64(1), f7.from_i64(3))?;
    println!("g(6, 1, 3) = {}", g_value(&y));
    let fiber = q_points(&y)?;
    for pt in &fiber {
        println!("Q point a11 = {}, b11 = {}, b21 = {}", pt.a11, pt.b11, pt.b21);
    }

    // a point of the fiber moved off the normal form
    let h = Matrix::from_i64s(f7, 2, 2, &[2, 3, 1, 4])?;
    let pair = fiber[1].pair().conjugate_by(&h)?;
    println!("A =\n{}B =\n{}", pair.a(), pair.b());
    let y = invariants(&pair);
    println!("F(A, B) = ({}, {}, {}), g = {}", y.x1, y.x2, y.x3, g_value(&y));
    if y.in_y() {
        let (g, form) = reduce_to_q(&pair)?;
        println!("reduced to a11 = {}, b11 = {}, b21 = {} by\n{g}", form.a11, form.b11, form.b21);
        assert_eq!(pair.conjugate_by(&g)?, form.pair());
    }
    match common_eigenvector(&pair) {
        Ok(Some(v)) => println!("common eigenvector {v:?}"),
        Ok(None) => println!("no common eigenvector"),
        Err(e) => println!("common eigenvector: {e}"),
    }
    let no_roots = Sl2Pair::new(
        Matrix::from_i64s(f7, 2, 2, &[0, 1, 1, 0])?,
        Matrix::from_i64s(f7, 2, 2, &[0, 1, 3, 0])?,
    )?;
    println!("B without eigenvalues in GF 7: {:?}", common_eigenvector(&no_roots));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
