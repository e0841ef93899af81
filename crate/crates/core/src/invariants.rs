//! Additive invariants of finitely presented functors.
//!
//! The Grothendieck group of finitely presented abelian groups as an additive
//! category is free on `[Z]` and the classes `[Z/p^l]`; a [`K0Class`] stores
//! the coefficient of `[Z]` (`pr`) and the signed multiplicities of the
//! torsion summands.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arith::{Integer, Prime};
use crate::fpmod::{FpModule, StructureInvariants};
use crate::functor::FpFunctor;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct K0Class {
    pub pr: i64,
    /// Zero multiplicities are never stored.
    pub torsion: BTreeMap<(Prime, u32), i64>,
}

impl K0Class {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: i64) -> Self {
        K0Class { pr: rank, torsion: BTreeMap::new() }
    }

    pub fn of_module(m: &FpModule) -> Self {
        Self::from(&m.structure_invariants())
    }

    pub fn is_zero(&self) -> bool {
        self.pr == 0 && self.torsion.is_empty()
    }

    pub fn multiplicity(&self, p: &Prime, l: u32) -> i64 {
        self.torsion.get(&(p.clone(), l)).copied().unwrap_or(0)
    }

    /// Primes with a nonzero multiplicity.
    pub fn support(&self) -> BTreeSet<Prime> {
        self.torsion.keys().map(|(p, _)| p.clone()).collect()
    }

    fn combine(&self, other: &K0Class, sign: i64) -> K0Class {
        let mut torsion = self.torsion.clone();
        for (key, &m) in &other.torsion {
            let e = torsion.entry(key.clone()).or_insert(0);
            *e += sign * m;
            if *e == 0 {
                torsion.remove(key);
            }
        }
        K0Class { pr: self.pr + sign * other.pr, torsion }
    }
}

impl From<&StructureInvariants> for K0Class {
    fn from(s: &StructureInvariants) -> Self {
        K0Class {
            pr: s.free_rank as i64,
            torsion: s.torsion.iter().map(|(k, &m)| (k.clone(), m as i64)).collect(),
        }
    }
}

impl Add for &K0Class {
    type Output = K0Class;

    fn add(self, rhs: &K0Class) -> K0Class {
        self.combine(rhs, 1)
    }
}

impl Sub for &K0Class {
    type Output = K0Class;

    fn sub(self, rhs: &K0Class) -> K0Class {
        self.combine(rhs, -1)
    }
}

impl Neg for &K0Class {
    type Output = K0Class;

    fn neg(self) -> K0Class {
        K0Class::zero().combine(self, -1)
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        if self.pr != 0 {
            terms.push(format!("{}[Z]", self.pr));
        }
        for ((p, l), m) in &self.torsion {
            terms.push(format!("{m}[Z/{p}^{l}]"));
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

/// One torsion entry of the on-disk K0 class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionEntry {
    pub p: Prime,
    pub l: u32,
    pub mult: i64,
}

/// On-disk form: `{"pr": int, "torsion": [{"p": "2", "l": 1, "mult": -1}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0ClassJson {
    pub pr: i64,
    pub torsion: Vec<TorsionEntry>,
}

impl From<&K0Class> for K0ClassJson {
    fn from(c: &K0Class) -> Self {
        K0ClassJson {
            pr: c.pr,
            torsion: c
                .torsion
                .iter()
                .map(|((p, l), &mult)| TorsionEntry { p: p.clone(), l: *l, mult })
                .collect(),
        }
    }
}

impl From<K0ClassJson> for K0Class {
    fn from(j: K0ClassJson) -> Self {
        let mut c = K0Class::free(j.pr);
        for e in j.torsion {
            c = &c + &K0Class { pr: 0, torsion: [((e.p, e.l), e.mult)].into_iter().filter(|(_, m)| *m != 0).collect() };
        }
        c
    }
}

impl Serialize for K0Class {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        K0ClassJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for K0Class {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(K0ClassJson::deserialize(deserializer)?.into())
    }
}

/// Left module class `[A] - [B] + [coker alpha]`.
pub fn lmc(g: &FpFunctor) -> K0Class {
    let a = K0Class::of_module(g.a());
    let b = K0Class::of_module(g.b());
    let c = K0Class::of_module(&g.alpha().cokernel().0);
    &(&a - &b) + &c
}

/// Image of `[M]` under the left-to-right conversion: for a presentation
/// `Z^r -> Z^g -> M -> 0` this is `[Tr M] - [Z^r] + [Z^g]`.
pub fn convert_module_class(m: &FpModule) -> K0Class {
    let tr = K0Class::of_module(&m.auslander_transpose());
    let r = m.relations().cols() as i64;
    let g = m.generators() as i64;
    &tr + &K0Class::free(g - r)
}

/// Right module class, obtained from the presentation by converting each term.
pub fn rmc(g: &FpFunctor) -> K0Class {
    let a = convert_module_class(g.a());
    let b = convert_module_class(g.b());
    let c = convert_module_class(&g.alpha().cokernel().0);
    &(&a - &b) + &c
}

pub fn rank(g: &FpFunctor) -> i64 {
    lmc(g).pr
}

/// `rank · n + Σ_l mult_{p,l} · min(l, n)`, from the K0 class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    pub rank: i64,
    pub coefficients: BTreeMap<(Prime, u32), i64>,
}

/// Eventual linear form of the Hilbert function at one prime: it agrees with
/// `slope · n + constant` for all `n >= threshold`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertPolynomial {
    pub slope: i64,
    pub constant: i64,
    pub threshold: u32,
}

impl HilbertPolynomial {
    pub fn at(&self, n: i64) -> i64 {
        self.slope * n + self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.slope == 0 && self.constant == 0
    }
}

impl HilbertData {
    pub fn of(g: &FpFunctor) -> Self {
        let class = lmc(g);
        HilbertData { rank: class.pr, coefficients: class.torsion }
    }

    fn at_prime<'a>(&'a self, p: &'a Prime) -> impl Iterator<Item = (u32, i64)> + 'a {
        self.coefficients
            .range((p.clone(), 0)..=(p.clone(), u32::MAX))
            .map(|((_, l), &m)| (*l, m))
    }

    pub fn value(&self, p: &Prime, n: u32) -> i64 {
        self.rank * i64::from(n)
            + self.at_prime(p).map(|(l, m)| m * i64::from(l.min(n))).sum::<i64>()
    }

    pub fn polynomial(&self, p: &Prime) -> HilbertPolynomial {
        let constant = self.at_prime(p).map(|(l, m)| m * i64::from(l)).sum();
        let threshold = self.at_prime(p).map(|(l, _)| l).max().unwrap_or(1).max(1);
        HilbertPolynomial { slope: self.rank, constant, threshold }
    }

    pub fn support(&self) -> BTreeSet<Prime> {
        self.coefficients.keys().map(|(p, _)| p.clone()).collect()
    }
}

/// Hilbert function from the closed formula.
pub fn hilbert_value(g: &FpFunctor, p: &Prime, n: u32) -> i64 {
    HilbertData::of(g).value(p, n)
}

/// Hilbert function by definition: the length of the covariant defect of the
/// base change of `G` to `Z/p^n`.
pub fn hilbert_direct(g: &FpFunctor, p: &Prime, n: u32) -> u64 {
    let m: Integer = p.pow(n);
    let reduced = g.sigma_pushforward(&m).expect("p^n is nonzero");
    reduced
        .covdefect()
        .length_of_finite()
        .expect("a module over Z/p^n is finite")
}

pub fn hilbert_polynomial(g: &FpFunctor, p: &Prime) -> HilbertPolynomial {
    HilbertData::of(g).polynomial(p)
}
