//! Vanishing loci in the Ziegler spectrum of the integers.

use fpfunctor::{vanishing_locus, FpFunctor, FpModule, Prime, ZieglerPoint};

fn main() {
    let functors = [
        ("S_(2,1)", FpFunctor::simple(&Prime::of(2), 1)),
        ("Hom(Z/2,-)", FpFunctor::hom(&FpModule::cyclic(2))),
        ("Z/6 (x) -", FpFunctor::tensor(&FpModule::cyclic(6))),
        ("Hom(Z,-)", FpFunctor::forgetful()),
    ];
    for (name, g) in &functors {
        let v = vanishing_locus(g);
        println!("V({name}), closed: {}", v.is_closed());
        for line in v.to_string().lines() {
            println!("    {line}");
        }
        let probes = [ZieglerPoint::F(Prime::of(2), 1), ZieglerPoint::A(Prime::of(3)), ZieglerPoint::P(Prime::of(2)), ZieglerPoint::Q];
        let hits: Vec<String> = probes.iter().map(|pt| format!("{pt}: {}", v.contains(pt))).collect();
        println!("    {}", hits.join(", "));
    }
}
