//! Finitely presented functors and natural transformations between them.
//!
//! A functor `G` is stored as its presentation morphism `alpha: A -> B`:
//!
//! ```text
//! Hom(B, -) --Hom(alpha, -)--> Hom(A, -) --> G --> 0
//! ```
//!
//! A natural transformation `G1 -> G2` between functors presented by
//! `alpha1: A1 -> B1` and `alpha2: A2 -> B2` is stored as `rho: A2 -> A1`
//! (it acts on `Hom(A1, -)` by precomposition). It is valid when there is some
//! `sigma: B2 -> B1` with `alpha1 ∘ rho = sigma ∘ alpha2`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{Integer, Prime};
use crate::fpmod::{
    biproduct, factor_through, induced_hom, pushout, stack, FpModule, ModuleError, ModuleMorphism,
};
use crate::linalg::{rank_over_fractions, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("rho does not map the presentation of the target into the presentation of the source")]
    NotNatural,
    #[error("natural transformation endpoints do not match: {0}")]
    Endpoints(String),
    #[error("base change along R -> R/0 is not supported")]
    ZeroModulus,
    #[error("unsupported ring {0:?}, only \"ZZ\" is available")]
    UnsupportedRing(String),
    #[error("invalid functor description: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpFunctor {
    alpha: ModuleMorphism,
}

impl FpFunctor {
    pub fn new(alpha: ModuleMorphism) -> Self {
        FpFunctor { alpha }
    }

    pub fn from_matrix(a: FpModule, b: FpModule, alpha: IntMatrix) -> Result<Self, FunctorError> {
        Ok(FpFunctor { alpha: ModuleMorphism::new(a, b, alpha)? })
    }

    /// `Hom(M, -)`, presented by `M -> 0`.
    pub fn hom(m: &FpModule) -> Self {
        FpFunctor { alpha: ModuleMorphism::zero(m, &FpModule::zero()) }
    }

    /// `N ⊗ -`. For `N = coker(u: Z^r -> Z^g)` the presentation is
    /// `u^T: Z^g -> Z^r`.
    pub fn tensor(n: &FpModule) -> Self {
        let u = n.relations();
        FpFunctor {
            alpha: ModuleMorphism::new_unchecked(
                FpModule::free(u.rows()),
                FpModule::free(u.cols()),
                u.transpose(),
            ),
        }
    }

    /// `Hom(Z, -)`.
    pub fn forgetful() -> Self {
        Self::hom(&FpModule::free(1))
    }

    pub fn zero() -> Self {
        Self::hom(&FpModule::zero())
    }

    /// The simple functor `S_{p,n}`: kernel of the map of tensor functors induced by
    /// `(1, p)^T: Z/p^n -> Z/p^(n-1) ⊕ Z/p^(n+1)`.
    pub fn simple(p: &Prime, n: u32) -> Self {
        assert!(n >= 1, "S_(p,n) needs n >= 1");
        let src = FpModule::cyclic(p.pow(n));
        let tgt = FpModule::cyclic(p.pow(n - 1)).direct_sum(&FpModule::cyclic(p.pow(n + 1)));
        let m = IntMatrix::from_vec(2, 1, vec![Integer::from(1), p.value().clone()]);
        let f = ModuleMorphism::new(src, tgt, m).expect("(1, p) is well defined");
        NatTrans::tensor_map(&f).kernel().0
    }

    pub fn alpha(&self) -> &ModuleMorphism {
        &self.alpha
    }

    /// `A`, the source of the presentation morphism.
    pub fn a(&self) -> &FpModule {
        self.alpha.src()
    }

    /// `B`, the target of the presentation morphism.
    pub fn b(&self) -> &FpModule {
        self.alpha.tgt()
    }

    pub fn direct_sum(&self, other: &FpFunctor) -> FpFunctor {
        let a = biproduct(self.a(), other.a());
        let b = biproduct(self.b(), other.b());
        let m = self.alpha.matrix().block_diag(other.alpha.matrix());
        FpFunctor { alpha: ModuleMorphism::new_unchecked(a.sum, b.sum, m) }
    }

    /// The same functor presented on minimal presentations of `A` and `B`.
    pub fn simplified(&self) -> FpFunctor {
        let (a, _, from_a) = self.a().minimal_presentation();
        let (b, to_b, _) = self.b().minimal_presentation();
        let m = to_b.matrix().mul(self.alpha.matrix()).mul(from_a.matrix());
        FpFunctor { alpha: ModuleMorphism::new_unchecked(a, b, m) }
    }

    /// `G(X) = coker(Hom(B, X) -> Hom(A, X))`.
    pub fn evaluate(&self, x: &FpModule) -> FpModule {
        let g = self.simplified();
        let (_, _, map) = induced_hom(&g.alpha, &x.minimal_presentation().0);
        map.cokernel().0
    }

    /// `dim_Q G(Q)`.
    pub fn evaluate_at_fractions(&self) -> usize {
        let ka = self.a().dual_basis();
        let kb = self.b().dual_basis();
        // Hom(B, Q) -> Hom(A, Q), y ↦ alpha^T y, inside Hom(A, Q) of dimension ka.cols()
        let image = self.alpha.matrix().transpose().mul(&kb);
        ka.cols() - rank_over_fractions(&image)
    }

    /// Contravariant defect: `ker(alpha)`.
    pub fn defect(&self) -> FpModule {
        self.alpha.kernel().0
    }

    /// Covariant defect: `coker(Hom(B, Z) -> Hom(A, Z))`.
    pub fn covdefect(&self) -> FpModule {
        self.alpha.dual().cokernel().0
    }

    /// `G ≅ 0` iff `alpha` is a split monomorphism.
    pub fn is_zero(&self) -> bool {
        let g = self.simplified();
        factor_through(&ModuleMorphism::identity(g.a()), &g.alpha)
            .expect("identity and alpha share a source")
            .is_some()
    }

    /// Base change along `R -> R/m`.
    pub fn sigma_pushforward(&self, m: &Integer) -> Result<QuotientFunctor, FunctorError> {
        if m.is_zero() {
            return Err(FunctorError::ZeroModulus);
        }
        Ok(QuotientFunctor { modulus: m.clone(), functor: FpFunctor { alpha: self.alpha.reduce_mod(m) } })
    }

    /// Auslander–Gruson–Jensen dual: kernel of `(A ⊗ -) -> (B ⊗ -)`.
    pub fn agj_dual(&self) -> FpFunctor {
        NatTrans::tensor_map(&self.alpha).kernel().0
    }
}

/// Tag of the only supported base ring.
pub const RING_TAG: &str = "ZZ";

/// On-disk form: `{"ring": "ZZ", "A": module, "B": module, "alpha": matrix}`
/// with `alpha` of shape `B.generators × A.generators`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorJson {
    pub ring: String,
    #[serde(rename = "A")]
    pub a: FpModule,
    #[serde(rename = "B")]
    pub b: FpModule,
    pub alpha: Vec<Vec<String>>,
}

impl From<&FpFunctor> for FunctorJson {
    fn from(g: &FpFunctor) -> Self {
        FunctorJson {
            ring: RING_TAG.to_string(),
            a: g.a().clone(),
            b: g.b().clone(),
            alpha: g.alpha.matrix().to_string_rows(),
        }
    }
}

impl TryFrom<FunctorJson> for FpFunctor {
    type Error = FunctorError;

    fn try_from(j: FunctorJson) -> Result<Self, FunctorError> {
        if j.ring != RING_TAG {
            return Err(FunctorError::UnsupportedRing(j.ring));
        }
        if j.alpha.len() != j.b.generators() {
            return Err(FunctorError::Invalid(format!(
                "alpha has {} rows but B has {} generators",
                j.alpha.len(),
                j.b.generators()
            )));
        }
        let alpha = IntMatrix::from_string_rows(&j.alpha, j.a.generators()).map_err(FunctorError::Invalid)?;
        FpFunctor::from_matrix(j.a, j.b, alpha)
    }
}

impl Serialize for FpFunctor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FunctorJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FpFunctor {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        FpFunctor::try_from(FunctorJson::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}

/// A functor over `R/m`, stored through integer data annihilated by `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientFunctor {
    modulus: Integer,
    functor: FpFunctor,
}

impl QuotientFunctor {
    pub fn modulus(&self) -> &Integer {
        &self.modulus
    }

    /// The presentation `R/m ⊗ alpha`, viewed over the integers.
    pub fn functor(&self) -> &FpFunctor {
        &self.functor
    }

    /// Covariant defect over `R/m`, dualizing into `R/m` itself.
    pub fn covdefect(&self) -> FpModule {
        let ring = FpModule::cyclic(self.modulus.clone());
        let (_, _, map) = induced_hom(&self.functor.alpha, &ring);
        map.cokernel().0
    }

    pub fn is_zero(&self) -> bool {
        self.functor.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    src: FpFunctor,
    tgt: FpFunctor,
    rho: ModuleMorphism,
}

impl NatTrans {
    pub fn new(src: FpFunctor, tgt: FpFunctor, rho: ModuleMorphism) -> Result<Self, FunctorError> {
        if rho.src() != tgt.a() || rho.tgt() != src.a() {
            return Err(FunctorError::Endpoints(
                "rho must map the presentation source of the target to that of the source".into(),
            ));
        }
        let nt = NatTrans { src, tgt, rho };
        if nt.witness()?.is_none() {
            return Err(FunctorError::NotNatural);
        }
        Ok(nt)
    }

    pub(crate) fn new_unchecked(src: FpFunctor, tgt: FpFunctor, rho: ModuleMorphism) -> Self {
        NatTrans { src, tgt, rho }
    }

    pub fn identity(g: &FpFunctor) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), ModuleMorphism::identity(g.a()))
    }

    pub fn zero(src: &FpFunctor, tgt: &FpFunctor) -> Self {
        Self::new_unchecked(src.clone(), tgt.clone(), ModuleMorphism::zero(tgt.a(), src.a()))
    }

    /// `f ⊗ -: (M ⊗ -) -> (N ⊗ -)` for `f: M -> N`.
    pub fn tensor_map(f: &ModuleMorphism) -> Self {
        let src = FpFunctor::tensor(f.src());
        let tgt = FpFunctor::tensor(f.tgt());
        let rho = ModuleMorphism::new_unchecked(tgt.a().clone(), src.a().clone(), f.matrix().transpose());
        Self::new_unchecked(src, tgt, rho)
    }

    /// `Hom(f, -): Hom(N, -) -> Hom(M, -)` for `f: M -> N`.
    pub fn hom_map(f: &ModuleMorphism) -> Self {
        Self::new_unchecked(FpFunctor::hom(f.tgt()), FpFunctor::hom(f.src()), f.clone())
    }

    pub fn src(&self) -> &FpFunctor {
        &self.src
    }

    pub fn tgt(&self) -> &FpFunctor {
        &self.tgt
    }

    pub fn rho(&self) -> &ModuleMorphism {
        &self.rho
    }

    /// Some `sigma: B2 -> B1` with `alpha1 ∘ rho = sigma ∘ alpha2`.
    pub fn witness(&self) -> Result<Option<ModuleMorphism>, FunctorError> {
        let lhs = self.src.alpha.compose(&self.rho)?;
        Ok(factor_through(&lhs, &self.tgt.alpha)?)
    }

    /// Zero iff `rho = tau ∘ alpha2` for some `tau: B2 -> A1`.
    pub fn is_zero(&self) -> bool {
        factor_through(&self.rho, &self.tgt.alpha)
            .expect("rho and alpha2 share a source")
            .is_some()
    }

    /// `phi ∘ inner`.
    pub fn compose(&self, inner: &NatTrans) -> Result<NatTrans, FunctorError> {
        if inner.tgt != self.src {
            return Err(FunctorError::Endpoints("natural transformations are not composable".into()));
        }
        let rho = inner.rho.compose(&self.rho)?;
        Ok(Self::new_unchecked(inner.src.clone(), self.tgt.clone(), rho))
    }

    /// The component `G1(X) -> G2(X)`.
    pub fn evaluate(&self, x: &FpModule) -> ModuleMorphism {
        let g1 = self.src.evaluate(x);
        let g2 = self.tgt.evaluate(x);
        // G_i(X) shares its generators with Hom(A_i, X)
        let (_, _, map) = induced_hom(&self.rho, x);
        ModuleMorphism::new_unchecked(g1, g2, map.matrix().clone())
    }

    /// Cokernel, presented by `(alpha2, rho): A2 -> B2 ⊕ A1`, with the projection from the target.
    pub fn cokernel(&self) -> (FpFunctor, NatTrans) {
        let alpha = stack(&self.tgt.alpha, &self.rho).expect("both leave A2");
        let coker = FpFunctor::new(alpha);
        let proj = Self::new_unchecked(self.tgt.clone(), coker.clone(), ModuleMorphism::identity(self.tgt.a()));
        (coker, proj)
    }

    /// Kernel with its inclusion into the source.
    ///
    /// `C` is the pushout of `A1 <-rho- A2 -alpha2-> B2` with leg `u: A1 -> C`,
    /// `D` the pushout of `C <-u- A1 -alpha1-> B1` with leg `v: C -> D`; the
    /// kernel is presented by `v` and included via `u`.
    pub fn kernel(&self) -> (FpFunctor, NatTrans) {
        let (_, u, _) = pushout(&self.rho, &self.tgt.alpha).expect("both leave A2");
        let (_, v, _) = pushout(&u, &self.src.alpha).expect("both leave A1");
        let ker = FpFunctor::new(v);
        let incl = Self::new_unchecked(ker.clone(), self.src.clone(), u);
        (ker, incl)
    }
}
