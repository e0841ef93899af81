//! Classes in the Grothendieck group and the rank.

use fpfunctor::{lmc, rank, rmc, FpFunctor, FpModule, Prime};

fn main() {
    let functors = [
        ("Hom(Z,-)", FpFunctor::forgetful()),
        ("Hom(Z/4,-)", FpFunctor::hom(&FpModule::cyclic(4))),
        ("Z/6 (x) -", FpFunctor::tensor(&FpModule::cyclic(6))),
        ("S_(3,2)", FpFunctor::simple(&Prime::of(3), 2)),
        ("Hom(Z/2+Z,-)", FpFunctor::hom(&FpModule::cyclic(2).direct_sum(&FpModule::free(1)))),
    ];
    for (name, g) in &functors {
        println!("{name:>14}: rank {}, lmc {}, rmc {}", rank(g), lmc(g), rmc(g));
    }
    let sum = FpFunctor::forgetful().direct_sum(&FpFunctor::hom(&FpModule::cyclic(4)));
    println!("lmc is additive on direct sums: {}", lmc(&sum));
    println!("as JSON: {}", serde_json::to_string(&lmc(&sum)).unwrap());
}
