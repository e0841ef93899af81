//! Evaluating finitely presented functors at modules.

use fpfunctor::{FpFunctor, FpModule};

fn main() {
    let modules = [
        ("Z", FpModule::free(1)),
        ("Z/2", FpModule::cyclic(2)),
        ("Z/4", FpModule::cyclic(4)),
        ("Z/6", FpModule::cyclic(6)),
        ("Z/4+Z", FpModule::cyclic(4).direct_sum(&FpModule::free(1))),
    ];
    let functors = [
        ("Hom(Z,-)", FpFunctor::forgetful()),
        ("Hom(Z/2,-)", FpFunctor::hom(&FpModule::cyclic(2))),
        ("Z/2 (x) -", FpFunctor::tensor(&FpModule::cyclic(2))),
        ("Hom(Z/3,-) + Z/4 (x) -", FpFunctor::hom(&FpModule::cyclic(3)).direct_sum(&FpFunctor::tensor(&FpModule::cyclic(4)))),
    ];
    for (name, g) in &functors {
        let row: Vec<String> = modules
            .iter()
            .map(|(x, m)| format!("{x} -> {}", g.evaluate(m).structure_invariants()))
            .collect();
        println!("{name:>24}: {}", row.join(",  "));
        println!("{:>24}  dim G(Q) = {}, zero: {}", "", g.evaluate_at_fractions(), g.is_zero());
    }
}
