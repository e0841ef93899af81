//! Closed sets of the Ziegler spectrum and membership in Serre subcategories.

use std::collections::BTreeMap;

use fpfunctor::{serre_member, ClosedSet, FDefault, FpFunctor, FpModule, NSet, Prime, PrimeSet, ZieglerPoint};

fn main() {
    let apq = ClosedSet::new(true, PrimeSet::all(), PrimeSet::all(), FDefault::None, BTreeMap::new());
    let f2 = ClosedSet::new(false, PrimeSet::empty(), PrimeSet::empty(), FDefault::None, BTreeMap::from([(Prime::of(2), NSet::all())]));
    let sets = [
        ("{A(p), P(p), Q}", apq.clone()),
        ("{Q}", ClosedSet::point(&ZieglerPoint::Q)),
        ("{A(2)}", ClosedSet::point(&ZieglerPoint::A(Prime::of(2)))),
        ("{F(2,n)}", f2.clone()),
        ("{F(2,n)} + {A(2), P(2), Q}", f2.union(&apq)),
    ];
    for (name, set) in &sets {
        println!("{name} closed: {}", set.is_closed());
    }

    let functors = [
        ("S_(2,1)", FpFunctor::simple(&Prime::of(2), 1)),
        ("Hom(Z/2,-)", FpFunctor::hom(&FpModule::cyclic(2))),
        ("Hom(Z,-)", FpFunctor::forgetful()),
    ];
    for (name, g) in &functors {
        for (set_name, set) in &sets {
            match serre_member(g, set) {
                Ok(member) => println!("{name} vanishes on {set_name}: {member}"),
                Err(e) => println!("{name} on {set_name}: {e}"),
            }
        }
    }
    println!("{}", serde_json::to_string_pretty(&apq).unwrap());
}
