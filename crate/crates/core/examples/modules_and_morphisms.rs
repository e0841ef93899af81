//! Finitely presented abelian groups, morphisms, Hom groups and pushouts.

use fpfunctor::{hom_module, pushout, FpModule, IntMatrix, ModuleMorphism};

fn main() {
    // Z^2 modulo the columns (4, 2) and (0, 6)
    let m = FpModule::new(IntMatrix::from_rows(&[&[4, 0], &[2, 6]]));
    println!("M = {}", m.structure_invariants());
    println!("order {:?}, annihilator {}", m.order().map(|o| o.to_string()), m.annihilator());

    let z4 = FpModule::cyclic(4);
    let z2 = FpModule::cyclic(2);
    let double = ModuleMorphism::new(z2.clone(), z4.clone(), IntMatrix::from_rows(&[&[2]])).unwrap();
    println!("2: Z/2 -> Z/4 has kernel {} and cokernel {}", double.kernel().0.structure_invariants(), double.cokernel().0.structure_invariants());

    // multiplication by 3 on Z/2 is not a morphism into Z/3
    assert!(ModuleMorphism::new(z2.clone(), FpModule::cyclic(3), IntMatrix::from_rows(&[&[1]])).is_err());

    let hom = hom_module(&FpModule::cyclic(12), &FpModule::cyclic(18));
    println!("Hom(Z/12, Z/18) = {}", hom.module().structure_invariants());
    for i in 0..hom.generator_count() {
        println!("  generator {i}: {:?}", hom.generator_matrix(i));
    }

    let (p, _, _) = pushout(&double, &double).unwrap();
    println!("pushout of Z/4 <- Z/2 -> Z/4 along 2: {}", p.structure_invariants());

    println!("Hom(M, Z) has rank {}", m.dual().generators());
    println!("Auslander transpose of Z/4 + Z: {}", z4.direct_sum(&FpModule::free(1)).auslander_transpose().structure_invariants());
}
