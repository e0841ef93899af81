//! The Hilbert function, by formula and by computing lengths directly.

use fpfunctor::{hilbert_direct, hilbert_polynomial, hilbert_value, FpFunctor, FpModule, Prime};

fn main() {
    let g = FpFunctor::hom(&FpModule::cyclic(8))
        .direct_sum(&FpFunctor::simple(&Prime::of(2), 2))
        .direct_sum(&FpFunctor::tensor(&FpModule::cyclic(3)));
    for p in [2u64, 3, 5] {
        let p = Prime::of(p);
        let formula: Vec<i64> = (1..=6).map(|n| hilbert_value(&g, &p, n)).collect();
        let direct: Vec<u64> = (1..=6).map(|n| hilbert_direct(&g, &p, n)).collect();
        let poly = hilbert_polynomial(&g, &p);
        println!("p = {p}: formula {formula:?}, direct {direct:?}");
        println!("        eventually {}n + {} from n = {}", poly.slope, poly.constant, poly.threshold);
    }
}
