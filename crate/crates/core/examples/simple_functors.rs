//! The simple functors S_(p,n) as kernels of maps between tensor functors.

use fpfunctor::{lmc, FpFunctor, FpModule, IntMatrix, ModuleMorphism, NatTrans, Prime};

fn main() {
    // S_(2,1) = ker((Z/2 (x) -) -> (Z/4 (x) -)) induced by 2: Z/2 -> Z/4
    let two = ModuleMorphism::new(FpModule::cyclic(2), FpModule::cyclic(4), IntMatrix::from_rows(&[&[2]])).unwrap();
    let (s21, inclusion) = NatTrans::tensor_map(&two).kernel();
    println!("S_(2,1) presented by {:?}", s21.alpha());
    println!("inclusion into Z/2 (x) - is given by {:?}", inclusion.rho());
    for n in 1..=4 {
        println!("  S_(2,1)(Z/2^{n}) = {}", s21.evaluate(&FpModule::cyclic(1 << n)).structure_invariants());
    }
    println!("  S_(2,1)(Z/3) = {}", s21.evaluate(&FpModule::cyclic(3)).structure_invariants());
    println!("  S_(2,1)(Z) = {}", s21.evaluate(&FpModule::free(1)).structure_invariants());

    for (p, n) in [(2u64, 2u32), (3, 2), (3, 3)] {
        let s = FpFunctor::simple(&Prime::of(p), n);
        let support: Vec<u32> = (1..=5)
            .filter(|&m| !s.evaluate(&FpModule::cyclic(Prime::of(p).pow(m))).is_zero())
            .collect();
        println!("S_({p},{n}) is nonzero at Z/{p}^m only for m in {support:?}; lmc = {}", lmc(&s));
    }
}
