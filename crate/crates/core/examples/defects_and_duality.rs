//! Contravariant and covariant defects, and the Auslander-Gruson-Jensen dual.

use fpfunctor::{FpFunctor, FpModule};

fn main() {
    let z2 = FpModule::cyclic(2);
    let functors = [
        ("Hom(Z/2,-)", FpFunctor::hom(&z2)),
        ("Z/2 (x) -", FpFunctor::tensor(&z2)),
        ("Hom(Z,-)", FpFunctor::forgetful()),
        ("S_(2,1)", FpFunctor::simple(&fpfunctor::Prime::of(2), 1)),
    ];
    for (name, g) in &functors {
        let d = g.agj_dual();
        println!("{name}");
        println!("  defect {}, covdefect {}", g.defect().structure_invariants(), g.covdefect().structure_invariants());
        println!("  dual: defect {}, covdefect {}", d.defect().structure_invariants(), d.covdefect().structure_invariants());
        println!("  dual at Z/2: {}, at Z/4: {}", d.evaluate(&z2).structure_invariants(), d.evaluate(&FpModule::cyclic(4)).structure_invariants());
    }

    // base change to Z/4: Hom(Z/2,-) stays nonzero, Hom(Z/3,-) dies
    for (name, g) in [("Hom(Z/2,-)", FpFunctor::hom(&z2)), ("Hom(Z/3,-)", FpFunctor::hom(&FpModule::cyclic(3)))] {
        let q = g.sigma_pushforward(&4.into()).unwrap();
        println!("{name} over Z/4: covdefect {}, zero: {}", q.covdefect().structure_invariants(), q.is_zero());
    }
}
