// Exact scalars, polynomials and matrices over Q and GF(p).

use normform::{Field, Matrix, Polynomial, Result};

pub fn run_example() -> Result<()> {
    let q = Field::rationals();
    let half = q.parse_scalar("1/2")?;
    let third = q.parse_scalar("-1/3")?;
    println!("1/2 + (-1/3) = {}", &half + &third);

    let f7 = Field::prime(7)?;
    let x = f7.from_i64(3);
    println!("in {f7}: 3^-1 = {}, 3^6 = {}", x.inv()?, x.pow(6));
    if let Some((r1, r2)) = f7.from_i64(2).sqrt() {
        println!("square roots of 2 in {f7}: {r1}, {r2}");
    }

    let gf2 = Field::prime(2)?;
    let f = Polynomial::from_i64s(gf2, &[0, 1, 1]);
    let g = Polynomial::from_i64s(gf2, &[0, 1, 0, 1]);
    println!("over {gf2}: ({f}) * ({g}) = {}", f.mul(&g)?);
    let (quot, rem) = g.divmod(&f)?;
    println!("({g}) = ({f}) * ({quot}) + ({rem}), gcd = {}", f.gcd(&g)?);

    let a = Matrix::from_i64s(q, 3, 3, &[2, 1, 0, 0, 1, -1, 1, 0, 3])?;
    let inv = a.inverse()?;
    println!("det A = {}\nA^-1 =\n{inv}", a.det()?);
    assert_eq!(a.mul(&inv)?, Matrix::identity(q, 3));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
