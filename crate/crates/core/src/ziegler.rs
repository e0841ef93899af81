//! Subsets of the Ziegler spectrum of the integers.
//!
//! The points are `F(p, n) = Z/p^n`, the `p`-adic integers `A(p)`, the Prüfer
//! groups `P(p)` and the rationals `Q`. None of the infinite modules is ever
//! materialized: a subset is described symbolically, uniformly outside a finite
//! set of primes, which covers every vanishing locus of a finitely presented
//! functor.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{factorize, Prime};
use crate::fpmod::FpModule;
use crate::functor::FpFunctor;
use crate::invariants::HilbertData;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZieglerError {
    #[error("the given set is not closed in the Ziegler spectrum")]
    NotClosed,
    #[error("invalid set description: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZieglerPoint {
    /// `Z/p^n`, `n >= 1`.
    F(Prime, u32),
    /// The `p`-adic integers.
    A(Prime),
    /// The Prüfer group `Z[1/p]/Z`.
    P(Prime),
    Q,
}

impl fmt::Display for ZieglerPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZieglerPoint::F(p, n) => write!(f, "F({p},{n})"),
            ZieglerPoint::A(p) => write!(f, "A({p})"),
            ZieglerPoint::P(p) => write!(f, "P({p})"),
            ZieglerPoint::Q => write!(f, "Q"),
        }
    }
}

/// A finite or cofinite subset of an infinite totally ordered universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FinCofin<T: Ord> {
    Finite(BTreeSet<T>),
    /// Everything except the listed elements.
    Cofinite(BTreeSet<T>),
}

/// Subset of the positive integers.
pub type NSet = FinCofin<u32>;
/// Subset of the primes.
pub type PrimeSet = FinCofin<Prime>;

impl<T: Ord + Clone> FinCofin<T> {
    pub fn empty() -> Self {
        FinCofin::Finite(BTreeSet::new())
    }

    pub fn all() -> Self {
        FinCofin::Cofinite(BTreeSet::new())
    }

    pub fn finite(items: impl IntoIterator<Item = T>) -> Self {
        FinCofin::Finite(items.into_iter().collect())
    }

    pub fn cofinite(exceptions: impl IntoIterator<Item = T>) -> Self {
        FinCofin::Cofinite(exceptions.into_iter().collect())
    }

    pub fn contains(&self, x: &T) -> bool {
        match self {
            FinCofin::Finite(s) => s.contains(x),
            FinCofin::Cofinite(s) => !s.contains(x),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FinCofin::Finite(_))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, FinCofin::Finite(s) if s.is_empty())
    }

    pub fn is_all(&self) -> bool {
        matches!(self, FinCofin::Cofinite(s) if s.is_empty())
    }

    /// The finite list stored (members or exceptions).
    pub fn listed(&self) -> &BTreeSet<T> {
        match self {
            FinCofin::Finite(s) | FinCofin::Cofinite(s) => s,
        }
    }

    pub fn complement(&self) -> Self {
        match self {
            FinCofin::Finite(s) => FinCofin::Cofinite(s.clone()),
            FinCofin::Cofinite(s) => FinCofin::Finite(s.clone()),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        use FinCofin::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.union(b).cloned().collect()),
            (Cofinite(a), Cofinite(b)) => Cofinite(a.intersection(b).cloned().collect()),
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => Cofinite(b.difference(a).cloned().collect()),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.complement().union(&other.complement()).complement()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        use FinCofin::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.is_subset(b),
            (Finite(a), Cofinite(b)) => a.is_disjoint(b),
            (Cofinite(_), Finite(_)) => false,
            (Cofinite(a), Cofinite(b)) => b.is_subset(a),
        }
    }
}

/// Behaviour of the `F`-part at primes without an explicit exception.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FDefault {
    All,
    None,
}

impl FDefault {
    fn as_nset(self) -> NSet {
        match self {
            FDefault::All => NSet::all(),
            FDefault::None => NSet::empty(),
        }
    }
}

/// The part of a set lying over one prime: `{F(p,n)}`, `A(p)`, `P(p)` and `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalPart {
    pub f: NSet,
    pub a: bool,
    pub p: bool,
    pub q: bool,
}

impl LocalPart {
    /// Closed subsets of the spectrum of a discrete valuation ring: with finitely
    /// many `F`-points the rest is one of `∅, {Q}, {A,Q}, {P,Q}, {A,P,Q}`; with
    /// infinitely many it must be `{A,P,Q}`.
    pub fn is_closed(&self) -> bool {
        if self.f.is_finite() {
            self.q || (!self.a && !self.p)
        } else {
            self.a && self.p && self.q
        }
    }

    pub fn is_subset(&self, other: &LocalPart) -> bool {
        self.f.is_subset(&other.f)
            && (!self.a || other.a)
            && (!self.p || other.p)
            && (!self.q || other.q)
    }
}

/// A subset of the Ziegler spectrum, uniform outside finitely many primes.
///
/// Despite the name this can describe non-closed sets too; [`ClosedSet::is_closed`]
/// decides closedness.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosedSet {
    q: bool,
    a: PrimeSet,
    p: PrimeSet,
    f_default: FDefault,
    /// Never contains an entry equal to the default.
    f_exceptions: BTreeMap<Prime, NSet>,
}

/// Vanishing loci are always closed; the alias documents intent.
pub type VanishingLocus = ClosedSet;

impl ClosedSet {
    pub fn new(q: bool, a: PrimeSet, p: PrimeSet, f_default: FDefault, f_exceptions: BTreeMap<Prime, NSet>) -> Self {
        let default = f_default.as_nset();
        let f_exceptions = f_exceptions.into_iter().filter(|(_, s)| *s != default).collect();
        ClosedSet { q, a, p, f_default, f_exceptions }
    }

    pub fn empty() -> Self {
        Self::new(false, PrimeSet::empty(), PrimeSet::empty(), FDefault::None, BTreeMap::new())
    }

    pub fn full() -> Self {
        Self::new(true, PrimeSet::all(), PrimeSet::all(), FDefault::All, BTreeMap::new())
    }

    pub fn point(pt: &ZieglerPoint) -> Self {
        let mut s = Self::empty();
        match pt {
            ZieglerPoint::F(p, n) => {
                s.f_exceptions.insert(p.clone(), NSet::finite([*n]));
            }
            ZieglerPoint::A(p) => s.a = PrimeSet::finite([p.clone()]),
            ZieglerPoint::P(p) => s.p = PrimeSet::finite([p.clone()]),
            ZieglerPoint::Q => s.q = true,
        }
        s
    }

    pub fn from_points<'a>(points: impl IntoIterator<Item = &'a ZieglerPoint>) -> Self {
        points.into_iter().fold(Self::empty(), |acc, pt| acc.union(&Self::point(pt)))
    }

    pub fn q(&self) -> bool {
        self.q
    }

    pub fn a_part(&self) -> &PrimeSet {
        &self.a
    }

    pub fn p_part(&self) -> &PrimeSet {
        &self.p
    }

    pub fn f_default(&self) -> FDefault {
        self.f_default
    }

    pub fn f_exceptions(&self) -> &BTreeMap<Prime, NSet> {
        &self.f_exceptions
    }

    /// The set of `n` with `F(p, n)` in the set.
    pub fn f_part(&self, p: &Prime) -> NSet {
        self.f_exceptions.get(p).cloned().unwrap_or_else(|| self.f_default.as_nset())
    }

    pub fn contains(&self, pt: &ZieglerPoint) -> bool {
        match pt {
            ZieglerPoint::F(p, n) => *n >= 1 && self.f_part(p).contains(n),
            ZieglerPoint::A(p) => self.a.contains(p),
            ZieglerPoint::P(p) => self.p.contains(p),
            ZieglerPoint::Q => self.q,
        }
    }

    /// Primes at which the description is not the generic one.
    pub fn listed_primes(&self) -> BTreeSet<Prime> {
        let mut out: BTreeSet<Prime> = self.f_exceptions.keys().cloned().collect();
        out.extend(self.a.listed().iter().cloned());
        out.extend(self.p.listed().iter().cloned());
        out
    }

    /// Local part at `p`, or at any unlisted prime when `p` is `None`.
    pub fn local_part(&self, p: Option<&Prime>) -> LocalPart {
        match p {
            Some(p) => LocalPart {
                f: self.f_part(p),
                a: self.a.contains(p),
                p: self.p.contains(p),
                q: self.q,
            },
            None => LocalPart {
                f: self.f_default.as_nset(),
                a: !self.a.is_finite(),
                p: !self.p.is_finite(),
                q: self.q,
            },
        }
    }

    fn local_parts_with<'a>(&'a self, other: &'a ClosedSet) -> impl Iterator<Item = (LocalPart, LocalPart)> + 'a {
        let mut primes = self.listed_primes();
        primes.extend(other.listed_primes());
        primes
            .into_iter()
            .map(Some)
            .chain(std::iter::once(None))
            .map(move |p| (self.local_part(p.as_ref()), other.local_part(p.as_ref())))
    }

    /// Whether the set is infinite on the `F`-points.
    pub fn has_infinite_f_part(&self) -> bool {
        self.f_default == FDefault::All || self.f_exceptions.values().any(|s| !s.is_finite())
    }

    /// Closed iff every local part is closed in the spectrum of the
    /// localization, and `Q` belongs to the set whenever infinitely many
    /// `F`-points do.
    pub fn is_closed(&self) -> bool {
        let local = self
            .listed_primes()
            .iter()
            .map(Some)
            .chain(std::iter::once(None))
            .all(|p| self.local_part(p).is_closed());
        local && (!self.has_infinite_f_part() || self.q)
    }

    pub fn is_subset(&self, other: &ClosedSet) -> bool {
        self.local_parts_with(other).all(|(x, y)| x.is_subset(&y))
    }

    fn combine(&self, other: &ClosedSet, op: impl Fn(&NSet, &NSet) -> NSet, pop: impl Fn(&PrimeSet, &PrimeSet) -> PrimeSet, bop: impl Fn(bool, bool) -> bool) -> ClosedSet {
        let default_set = op(&self.f_default.as_nset(), &other.f_default.as_nset());
        let f_default = if default_set.is_all() { FDefault::All } else { FDefault::None };
        let primes: BTreeSet<Prime> = self.f_exceptions.keys().chain(other.f_exceptions.keys()).cloned().collect();
        let f_exceptions = primes
            .into_iter()
            .map(|p| {
                let s = op(&self.f_part(&p), &other.f_part(&p));
                (p, s)
            })
            .collect();
        ClosedSet::new(bop(self.q, other.q), pop(&self.a, &other.a), pop(&self.p, &other.p), f_default, f_exceptions)
    }

    pub fn union(&self, other: &ClosedSet) -> ClosedSet {
        self.combine(other, NSet::union, PrimeSet::union, |a, b| a || b)
    }

    pub fn intersection(&self, other: &ClosedSet) -> ClosedSet {
        self.combine(other, NSet::intersection, PrimeSet::intersection, |a, b| a && b)
    }

    pub fn complement(&self) -> ClosedSet {
        let f_default = match self.f_default {
            FDefault::All => FDefault::None,
            FDefault::None => FDefault::All,
        };
        let f_exceptions = self.f_exceptions.iter().map(|(p, s)| (p.clone(), s.complement())).collect();
        ClosedSet::new(!self.q, self.a.complement(), self.p.complement(), f_default, f_exceptions)
    }

    pub fn difference(&self, other: &ClosedSet) -> ClosedSet {
        self.intersection(&other.complement())
    }

    /// The same set with the roles of `A` and `P` exchanged.
    pub fn swap_a_p(&self) -> ClosedSet {
        ClosedSet { a: self.p.clone(), p: self.a.clone(), ..self.clone() }
    }
}

impl fmt::Display for ClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn primes(s: &PrimeSet) -> String {
            let list = |xs: &BTreeSet<Prime>| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
            match s {
                FinCofin::Finite(xs) if xs.is_empty() => "none".into(),
                FinCofin::Finite(xs) => format!("p in {{{}}}", list(xs)),
                FinCofin::Cofinite(xs) if xs.is_empty() => "all p".into(),
                FinCofin::Cofinite(xs) => format!("all p except {{{}}}", list(xs)),
            }
        }
        fn ns(s: &NSet) -> String {
            let list = |xs: &BTreeSet<u32>| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
            match s {
                FinCofin::Finite(xs) if xs.is_empty() => "none".into(),
                FinCofin::Finite(xs) => format!("n in {{{}}}", list(xs)),
                FinCofin::Cofinite(xs) if xs.is_empty() => "all n".into(),
                FinCofin::Cofinite(xs) => format!("all n except {{{}}}", list(xs)),
            }
        }
        writeln!(f, "Q: {}", if self.q { "yes" } else { "no" })?;
        writeln!(f, "A: {}", primes(&self.a))?;
        writeln!(f, "P: {}", primes(&self.p))?;
        let default = match self.f_default {
            FDefault::All => "all n",
            FDefault::None => "none",
        };
        write!(f, "F: {default} at unlisted primes")?;
        for (p, s) in &self.f_exceptions {
            write!(f, "\n   at p={p}: {}", ns(s))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetMode {
    Finite,
    Cofinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeSetJson {
    pub mode: SetMode,
    pub primes: Vec<Prime>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FExceptionJson {
    pub prime: Prime,
    pub mode: SetMode,
    pub ns: Vec<u32>,
}

/// On-disk form of a [`ClosedSet`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosedSetJson {
    pub q: bool,
    pub a: PrimeSetJson,
    pub p: PrimeSetJson,
    pub f_default: FDefault,
    pub f_exceptions: Vec<FExceptionJson>,
}

fn fincofin_to_json<T: Ord + Clone>(s: &FinCofin<T>) -> (SetMode, Vec<T>) {
    match s {
        FinCofin::Finite(xs) => (SetMode::Finite, xs.iter().cloned().collect()),
        FinCofin::Cofinite(xs) => (SetMode::Cofinite, xs.iter().cloned().collect()),
    }
}

fn fincofin_from_json<T: Ord + Clone>(mode: SetMode, xs: Vec<T>) -> FinCofin<T> {
    match mode {
        SetMode::Finite => FinCofin::finite(xs),
        SetMode::Cofinite => FinCofin::cofinite(xs),
    }
}

impl From<&ClosedSet> for ClosedSetJson {
    fn from(s: &ClosedSet) -> Self {
        let prime_set = |ps: &PrimeSet| {
            let (mode, primes) = fincofin_to_json(ps);
            PrimeSetJson { mode, primes }
        };
        ClosedSetJson {
            q: s.q,
            a: prime_set(&s.a),
            p: prime_set(&s.p),
            f_default: s.f_default,
            f_exceptions: s
                .f_exceptions
                .iter()
                .map(|(prime, ns)| {
                    let (mode, ns) = fincofin_to_json(ns);
                    FExceptionJson { prime: prime.clone(), mode, ns }
                })
                .collect(),
        }
    }
}

impl TryFrom<ClosedSetJson> for ClosedSet {
    type Error = ZieglerError;

    fn try_from(j: ClosedSetJson) -> Result<Self, ZieglerError> {
        let mut f_exceptions = BTreeMap::new();
        for e in j.f_exceptions {
            if e.ns.contains(&0) {
                return Err(ZieglerError::Invalid("exponents n start at 1".into()));
            }
            let s = fincofin_from_json(e.mode, e.ns);
            if f_exceptions.insert(e.prime.clone(), s).is_some() {
                return Err(ZieglerError::Invalid(format!("prime {} listed twice in f_exceptions", e.prime)));
            }
        }
        Ok(ClosedSet::new(
            j.q,
            fincofin_from_json(j.a.mode, j.a.primes),
            fincofin_from_json(j.p.mode, j.p.primes),
            j.f_default,
            f_exceptions,
        ))
    }
}

impl Serialize for ClosedSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ClosedSetJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ClosedSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        ClosedSet::try_from(ClosedSetJson::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}

/// Zeros of `n ↦ rank·n + Σ_l c_l·min(l, n)` on the positive integers.
fn hilbert_zero_set(data: &HilbertData, p: &Prime) -> NSet {
    let poly = data.polynomial(p);
    let below: Vec<u32> = (1..poly.threshold).collect();
    let zeros_below = below.iter().copied().filter(|&n| data.value(p, n) == 0);
    if poly.slope == 0 {
        if poly.constant == 0 {
            let nonzero_below = below.iter().copied().filter(|&n| data.value(p, n) != 0);
            return NSet::cofinite(nonzero_below);
        }
        return NSet::finite(zeros_below);
    }
    let mut zeros: BTreeSet<u32> = zeros_below.collect();
    // slope·n + constant = 0 beyond the threshold
    if (-poly.constant) % poly.slope == 0 {
        let n = -poly.constant / poly.slope;
        if n >= i64::from(poly.threshold) {
            zeros.insert(u32::try_from(n).expect("root fits in u32"));
        }
    }
    FinCofin::Finite(zeros)
}

/// Primes `p` with `Z_(p) ⊗ M = 0`, decided through the annihilator.
fn localization_vanishes(m: &FpModule) -> PrimeSet {
    let ann = m.annihilator();
    if num_traits::Zero::is_zero(&ann) {
        return PrimeSet::empty();
    }
    let primes = factorize(&ann).expect("annihilator is nonzero").into_iter().map(|(p, _)| p);
    PrimeSet::cofinite(primes)
}

/// The set of points of the spectrum at which `G` vanishes.
pub fn vanishing_locus(g: &FpFunctor) -> VanishingLocus {
    let data = HilbertData::of(g);
    let rank = data.rank;
    let f_default = if rank == 0 { FDefault::All } else { FDefault::None };
    let f_exceptions = data.support().into_iter().map(|p| {
        let s = hilbert_zero_set(&data, &p);
        (p, s)
    });
    ClosedSet::new(
        rank == 0,
        localization_vanishes(&g.covdefect()),
        localization_vanishes(&g.defect()),
        f_default,
        f_exceptions.collect(),
    )
}

/// Whether `G` lies in the Serre subcategory of functors vanishing on the closed set `x`.
pub fn serre_member(g: &FpFunctor, x: &ClosedSet) -> Result<bool, ZieglerError> {
    if !x.is_closed() {
        return Err(ZieglerError::NotClosed);
    }
    Ok(x.is_subset(&vanishing_locus(g)))
}
