//! Smith normal form with its unimodular certificates.

use fpfunctor::linalg::{determinant, kernel_basis, snf, solve};
use fpfunctor::IntMatrix;

fn main() {
    let a = IntMatrix::from_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let d = snf(&a);
    println!("A =\n{a:?}");
    println!("S = U A V =\n{:?}", d.s);
    println!("invariant factors: {:?}", d.invariant_factors().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("det U = {}, det V = {}", determinant(&d.u), determinant(&d.v));
    assert_eq!(d.u.mul(&a).mul(&d.v), d.s);

    let b = IntMatrix::from_rows(&[&[2], &[6], &[-2]]);
    match solve(&a, &b).unwrap() {
        Some(x) => println!("A x = b has the integer solution x = {x:?}"),
        None => println!("A x = b has no integer solution"),
    }

    let singular = IntMatrix::from_rows(&[&[1, 2, 3], &[2, 4, 6]]);
    println!("kernel basis of {singular:?}:\n{:?}", kernel_basis(&singular));
}
