//! Finitely presented modules over the integers and their morphisms.
//!
//! Conventions used throughout the crate:
//!
//! * A module with `g` generators is the cokernel of its relations matrix,
//!   a `g x r` matrix acting on column vectors: `M = Z^g / rel * Z^r`.
//! * A morphism `M -> N` is an `N.generators x M.generators` matrix whose
//!   column `j` is the image of generator `j`. It is well defined when
//!   `matrix * rel_M = rel_N * X` for some integer `X`.
//!
//! Modules carry no canonical form. Two modules are compared through
//! [`StructureInvariants`] or explicit morphisms.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{factorize, omega_total, ArithError, Integer, Prime};
use crate::linalg::{image_basis, kernel_basis, snf, solve, IntMatrix, LinalgError, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix does not define a morphism: relations of the source are not mapped into the relations of the target")]
    NotWellDefined,
    #[error("morphisms do not share a source")]
    SourceMismatch,
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("module is infinite (free rank {0})")]
    Infinite(usize),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `Z^g` modulo the column span of a `g x r` relations matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpModule {
    relations: IntMatrix,
}

impl FpModule {
    /// The generator count is the row count of `relations`.
    pub fn new(relations: IntMatrix) -> Self {
        FpModule { relations }
    }

    pub fn with_generators(generators: usize, relations: IntMatrix) -> Result<Self, ModuleError> {
        if relations.rows() != generators {
            return Err(ModuleError::Shape(format!(
                "relations have {} rows but the module has {generators} generators",
                relations.rows()
            )));
        }
        Ok(FpModule { relations })
    }

    pub fn free(rank: usize) -> Self {
        FpModule { relations: IntMatrix::zeros(rank, 0) }
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    /// `Z/d`; `d = 0` gives `Z`.
    pub fn cyclic(d: impl Into<Integer>) -> Self {
        let d = d.into();
        if d.is_zero() {
            return Self::free(1);
        }
        FpModule { relations: IntMatrix::from_vec(1, 1, vec![d]) }
    }

    /// `Z/d_1 + ... + Z/d_k + Z^free_rank`.
    pub fn from_invariant_factors(factors: &[Integer], free_rank: usize) -> Self {
        factors
            .iter()
            .fold(Self::zero(), |acc, d| acc.direct_sum(&Self::cyclic(d.clone())))
            .direct_sum(&Self::free(free_rank))
    }

    pub fn generators(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn direct_sum(&self, other: &FpModule) -> FpModule {
        FpModule { relations: self.relations.block_diag(&other.relations) }
    }

    /// `M^k`.
    pub fn power(&self, k: usize) -> FpModule {
        FpModule { relations: IntMatrix::identity(k).kron(&self.relations) }
    }

    pub fn smith(&self) -> SmithDecomposition<Integer> {
        snf(&self.relations)
    }

    /// Non-unit invariant factors and the free rank.
    pub fn invariant_factors(&self) -> (Vec<Integer>, usize) {
        let factors = self.smith().invariant_factors();
        let free_rank = self.generators() - factors.len();
        let torsion = factors.into_iter().filter(|d| !d.is_one()).collect();
        (torsion, free_rank)
    }

    pub fn structure_invariants(&self) -> StructureInvariants {
        let (factors, free_rank) = self.invariant_factors();
        let mut torsion = BTreeMap::new();
        for d in &factors {
            for (p, e) in factorize(d).expect("invariant factors are nonzero") {
                *torsion.entry((p, e)).or_insert(0usize) += 1;
            }
        }
        StructureInvariants { free_rank, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors().1
    }

    pub fn is_zero(&self) -> bool {
        let (factors, free_rank) = self.invariant_factors();
        factors.is_empty() && free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// Group order, or `None` for infinite modules.
    pub fn order(&self) -> Option<Integer> {
        let (factors, free_rank) = self.invariant_factors();
        (free_rank == 0).then(|| factors.iter().product())
    }

    /// Nonnegative generator of `Ann(M)`: `0` when `M` has a free summand,
    /// otherwise the largest invariant factor (`1` for the zero module).
    pub fn annihilator(&self) -> Integer {
        let (factors, free_rank) = self.invariant_factors();
        if free_rank > 0 {
            return Integer::zero();
        }
        factors.last().cloned().unwrap_or_else(Integer::one)
    }

    /// Composition length of a finite module.
    pub fn length_of_finite(&self) -> Result<u64, ModuleError> {
        let (factors, free_rank) = self.invariant_factors();
        if free_rank > 0 {
            return Err(ModuleError::Infinite(free_rank));
        }
        let mut total = 0u64;
        for d in &factors {
            total += u64::from(omega_total(d)?);
        }
        Ok(total)
    }

    /// An isomorphic module `Z/d_1 + ... + Z/d_k + Z^f` with non-unit `d_i`,
    /// together with the isomorphisms `M -> M'` and `M' -> M`.
    pub fn minimal_presentation(&self) -> (FpModule, ModuleMorphism, ModuleMorphism) {
        let d = self.smith();
        let g = self.generators();
        let diag = d.invariant_factors();
        let units = diag.iter().take_while(|x| x.is_one()).count();
        let nonunit = diag[units..].to_vec();
        let kept: Vec<usize> = (units..g).collect();
        let small = FpModule::from_invariant_factors(&nonunit, g - diag.len());
        let u_inv = solve(&d.u, &IntMatrix::identity(g))
            .expect("square system")
            .expect("U is unimodular");
        let to = d.u.select_rows(kept.iter().copied());
        let from = u_inv.select_cols(kept.iter().copied());
        (
            small.clone(),
            ModuleMorphism::new_unchecked(self.clone(), small.clone(), to),
            ModuleMorphism::new_unchecked(small, self.clone(), from),
        )
    }

    /// Whether the column vector `v` (in generator coordinates) is zero in `M`.
    pub fn is_zero_element(&self, v: &IntMatrix) -> bool {
        solve(&self.relations, v).expect("element has generator shape").is_some()
    }

    /// Columns spanning `Hom(M, Z)` inside `Z^g` (row vectors killing the relations).
    pub fn dual_basis(&self) -> IntMatrix {
        kernel_basis(&self.relations.transpose())
    }

    /// `Hom(M, Z)`, always free.
    pub fn dual(&self) -> FpModule {
        FpModule::free(self.dual_basis().cols())
    }

    /// Cokernel of the transposed presentation `Z^g -> Z^r`.
    pub fn auslander_transpose(&self) -> FpModule {
        FpModule { relations: self.relations.transpose() }
    }

    /// `M / m M`.
    pub fn reduce_mod(&self, m: &Integer) -> FpModule {
        let g = self.generators();
        FpModule { relations: self.relations.hstack(&IntMatrix::identity(g).scale(m)) }
    }
}

impl fmt::Debug for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpModule(gens={}, rel={:?})", self.generators(), self.relations)
    }
}

/// On-disk form: `{"generators": g, "relations": [[decimal-string, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub generators: usize,
    pub relations: Vec<Vec<String>>,
}

impl From<&FpModule> for ModuleJson {
    fn from(m: &FpModule) -> Self {
        ModuleJson { generators: m.generators(), relations: m.relations.to_string_rows() }
    }
}

impl TryFrom<ModuleJson> for FpModule {
    type Error = String;

    fn try_from(j: ModuleJson) -> Result<Self, String> {
        if j.relations.len() != j.generators {
            return Err(format!(
                "relations have {} rows but the module has {} generators",
                j.relations.len(),
                j.generators
            ));
        }
        let cols = j.relations.first().map_or(0, Vec::len);
        Ok(FpModule::new(IntMatrix::from_string_rows(&j.relations, cols)?))
    }
}

impl Serialize for FpModule {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ModuleJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FpModule {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        FpModule::try_from(ModuleJson::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}

/// Free rank plus the multiplicity of each `Z/p^l` summand.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct StructureInvariants {
    pub free_rank: usize,
    pub torsion: BTreeMap<(Prime, u32), usize>,
}

impl StructureInvariants {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> Integer {
        self.torsion
            .iter()
            .map(|((p, l), &k)| num_traits::pow(p.pow(*l), k))
            .product()
    }
}

impl fmt::Display for StructureInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for ((p, l), &k) in &self.torsion {
            for _ in 0..k {
                parts.push(format!("Z/{}", p.pow(*l)));
            }
        }
        for _ in 0..self.free_rank {
            parts.push("Z".to_string());
        }
        write!(f, "{}", parts.join("+"))
    }
}

/// A morphism of finitely presented modules, checked well defined.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMorphism {
    src: FpModule,
    tgt: FpModule,
    matrix: IntMatrix,
}

impl fmt::Debug for ModuleMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMorphism({:?} -> {:?}, {:?})", self.src, self.tgt, self.matrix)
    }
}

impl ModuleMorphism {
    pub fn new(src: FpModule, tgt: FpModule, matrix: IntMatrix) -> Result<Self, ModuleError> {
        if matrix.shape() != (tgt.generators(), src.generators()) {
            return Err(ModuleError::Shape(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                tgt.generators(),
                src.generators()
            )));
        }
        let image = matrix.mul(src.relations());
        if solve(tgt.relations(), &image)?.is_none() {
            return Err(ModuleError::NotWellDefined);
        }
        Ok(ModuleMorphism { src, tgt, matrix })
    }

    /// For matrices that are well defined by construction.
    pub(crate) fn new_unchecked(src: FpModule, tgt: FpModule, matrix: IntMatrix) -> Self {
        debug_assert_eq!(matrix.shape(), (tgt.generators(), src.generators()));
        ModuleMorphism { src, tgt, matrix }
    }

    pub fn identity(m: &FpModule) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), IntMatrix::identity(m.generators()))
    }

    pub fn zero(src: &FpModule, tgt: &FpModule) -> Self {
        Self::new_unchecked(src.clone(), tgt.clone(), IntMatrix::zeros(tgt.generators(), src.generators()))
    }

    /// Multiplication by `c` on `M`.
    pub fn scalar(m: &FpModule, c: impl Into<Integer>) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), IntMatrix::identity(m.generators()).scale(&c.into()))
    }

    pub fn src(&self) -> &FpModule {
        &self.src
    }

    pub fn tgt(&self) -> &FpModule {
        &self.tgt
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMorphism) -> Result<ModuleMorphism, ModuleError> {
        if inner.tgt.generators() != self.src.generators() || inner.tgt.relations() != self.src.relations() {
            return Err(ModuleError::NotComposable);
        }
        Ok(Self::new_unchecked(inner.src.clone(), self.tgt.clone(), self.matrix.mul(&inner.matrix)))
    }

    pub fn add(&self, other: &ModuleMorphism) -> Result<ModuleMorphism, ModuleError> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(ModuleError::Shape("sum of morphisms with different endpoints".into()));
        }
        Ok(Self::new_unchecked(self.src.clone(), self.tgt.clone(), self.matrix.add(&other.matrix)))
    }

    pub fn neg(&self) -> ModuleMorphism {
        Self::new_unchecked(self.src.clone(), self.tgt.clone(), self.matrix.neg())
    }

    /// Zero as a morphism, i.e. every column lies in the relation lattice of the target.
    pub fn is_zero(&self) -> bool {
        solve(self.tgt.relations(), &self.matrix).expect("shapes checked").is_some()
    }

    /// Kernel `K` with its inclusion `K -> src`.
    pub fn kernel(&self) -> (FpModule, ModuleMorphism) {
        let g = self.src.generators();
        // x with f x in the relation lattice of the target
        let joint = self.matrix.hstack(self.tgt.relations());
        let pre = kernel_basis(&joint).select_rows(0..g);
        let basis = image_basis(&pre);
        let rel = solve(&basis, self.src.relations())
            .expect("shapes agree")
            .expect("source relations lie in the kernel lattice");
        let k = FpModule::new(rel);
        let incl = Self::new_unchecked(k.clone(), self.src.clone(), basis);
        (k, incl)
    }

    /// Cokernel `C` with the projection `tgt -> C`.
    pub fn cokernel(&self) -> (FpModule, ModuleMorphism) {
        let c = FpModule::new(self.matrix.hstack(self.tgt.relations()));
        let proj = Self::new_unchecked(self.tgt.clone(), c.clone(), IntMatrix::identity(self.tgt.generators()));
        (c, proj)
    }

    /// Image of `f`, presented as a submodule of the target, with the
    /// corestriction `src -> im` and the inclusion `im -> tgt`.
    pub fn image(&self) -> (FpModule, ModuleMorphism, ModuleMorphism) {
        let (k, incl) = self.kernel();
        let coim = ModuleMorphism::new_unchecked(k, self.src.clone(), incl.matrix).cokernel();
        let im = coim.0;
        let onto = coim.1;
        let into = Self::new_unchecked(im.clone(), self.tgt.clone(), self.matrix.clone());
        (im, onto, into)
    }

    /// `f^*: Hom(tgt, Z) -> Hom(src, Z)` on the free dual modules.
    pub fn dual(&self) -> ModuleMorphism {
        let kb = self.tgt.dual_basis();
        let ka = self.src.dual_basis();
        let images = self.matrix.transpose().mul(&kb);
        let m = solve(&ka, &images)
            .expect("shapes agree")
            .expect("precomposition lands in the dual lattice");
        Self::new_unchecked(FpModule::free(kb.cols()), FpModule::free(ka.cols()), m)
    }

    /// `R/m ⊗ f`.
    pub fn reduce_mod(&self, m: &Integer) -> ModuleMorphism {
        Self::new_unchecked(self.src.reduce_mod(m), self.tgt.reduce_mod(m), self.matrix.clone())
    }
}

/// `B1 ⊕ B2` with inclusions and projections.
pub struct Biproduct {
    pub sum: FpModule,
    pub in1: ModuleMorphism,
    pub in2: ModuleMorphism,
    pub pr1: ModuleMorphism,
    pub pr2: ModuleMorphism,
}

pub fn biproduct(a: &FpModule, b: &FpModule) -> Biproduct {
    let sum = a.direct_sum(b);
    let (ga, gb) = (a.generators(), b.generators());
    let i1 = IntMatrix::identity(ga).vstack(&IntMatrix::zeros(gb, ga));
    let i2 = IntMatrix::zeros(ga, gb).vstack(&IntMatrix::identity(gb));
    Biproduct {
        in1: ModuleMorphism::new_unchecked(a.clone(), sum.clone(), i1.clone()),
        in2: ModuleMorphism::new_unchecked(b.clone(), sum.clone(), i2.clone()),
        pr1: ModuleMorphism::new_unchecked(sum.clone(), a.clone(), i1.transpose()),
        pr2: ModuleMorphism::new_unchecked(sum.clone(), b.clone(), i2.transpose()),
        sum,
    }
}

/// `(f, g): A -> B1 ⊕ B2`.
pub fn stack(f: &ModuleMorphism, g: &ModuleMorphism) -> Result<ModuleMorphism, ModuleError> {
    if f.src != g.src {
        return Err(ModuleError::SourceMismatch);
    }
    let tgt = f.tgt.direct_sum(&g.tgt);
    Ok(ModuleMorphism::new_unchecked(f.src.clone(), tgt, f.matrix.vstack(&g.matrix)))
}

/// Pushout of `B1 <-f- A -g-> B2` with its two legs `B1 -> P`, `B2 -> P`.
pub fn pushout(
    f: &ModuleMorphism,
    g: &ModuleMorphism,
) -> Result<(FpModule, ModuleMorphism, ModuleMorphism), ModuleError> {
    let joint = stack(f, &g.neg())?;
    let (p, proj) = joint.cokernel();
    let bp = biproduct(&f.tgt, &g.tgt);
    let leg1 = proj.compose(&bp.in1)?;
    let leg2 = proj.compose(&bp.in2)?;
    Ok((p, leg1, leg2))
}

/// `Hom(M, N)` as a finitely presented group, together with the lattice of
/// representative matrices.
///
/// Generator `i` of [`HomModule::module`] is the morphism whose matrix is the
/// column-major unflattening of column `i` of the basis.
#[derive(Debug, Clone)]
pub struct HomModule {
    source: FpModule,
    target: FpModule,
    module: FpModule,
    basis: IntMatrix,
}

impl HomModule {
    pub fn new(source: &FpModule, target: &FpModule) -> HomModule {
        let (gs, gt) = (source.generators(), target.generators());
        let rs = source.relations().cols();
        // F ↦ F * rel_source, from N^{gs} to N^{rs}
        let phi = ModuleMorphism::new_unchecked(
            target.power(gs),
            target.power(rs),
            source.relations().transpose().kron(&IntMatrix::identity(gt)),
        );
        let (module, incl) = phi.kernel();
        HomModule { source: source.clone(), target: target.clone(), module, basis: incl.matrix }
    }

    pub fn module(&self) -> &FpModule {
        &self.module
    }

    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn generator_count(&self) -> usize {
        self.basis.cols()
    }

    pub fn generator_matrix(&self, i: usize) -> IntMatrix {
        IntMatrix::unvec(&self.basis.col(i), self.target.generators(), self.source.generators())
    }

    pub fn generator(&self, i: usize) -> ModuleMorphism {
        ModuleMorphism::new_unchecked(self.source.clone(), self.target.clone(), self.generator_matrix(i))
    }

    /// The morphism `Σ c_i · generator_i`.
    pub fn morphism(&self, coords: &[Integer]) -> ModuleMorphism {
        assert_eq!(coords.len(), self.generator_count());
        let v = self.basis.mul(&IntMatrix::column(coords.to_vec()));
        ModuleMorphism::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            IntMatrix::unvec(v.entries(), self.target.generators(), self.source.generators()),
        )
    }

    /// Coordinates of the given morphism matrices (one per column of the
    /// result). Panics if a matrix is not a well-defined morphism.
    pub fn coordinates_of(&self, matrices: &[IntMatrix]) -> IntMatrix {
        let rows = self.target.generators() * self.source.generators();
        let rhs = matrices
            .iter()
            .fold(IntMatrix::zeros(rows, 0), |acc, m| acc.hstack(&m.vec_column()));
        solve(&self.basis, &rhs)
            .expect("shapes agree")
            .expect("matrix is a well-defined morphism")
    }
}

pub fn hom_module(m: &FpModule, n: &FpModule) -> HomModule {
    HomModule::new(m, n)
}

/// `Hom(f, X): Hom(M', X) -> Hom(M, X)` for `f: M -> M'`, on the hom-module presentations.
pub fn induced_hom(f: &ModuleMorphism, x: &FpModule) -> (HomModule, HomModule, ModuleMorphism) {
    let h_tgt = HomModule::new(f.tgt(), x);
    let h_src = HomModule::new(f.src(), x);
    let images: Vec<IntMatrix> = (0..h_tgt.generator_count())
        .map(|i| h_tgt.generator_matrix(i).mul(f.matrix()))
        .collect();
    let m = h_src.coordinates_of(&images);
    let map = ModuleMorphism::new_unchecked(h_tgt.module.clone(), h_src.module.clone(), m);
    (h_tgt, h_src, map)
}

/// `Hom(X, f): Hom(X, M) -> Hom(X, M')` for `f: M -> M'`.
pub fn induced_hom_covariant(x: &FpModule, f: &ModuleMorphism) -> (HomModule, HomModule, ModuleMorphism) {
    let h_src = HomModule::new(x, f.src());
    let h_tgt = HomModule::new(x, f.tgt());
    let images: Vec<IntMatrix> = (0..h_src.generator_count())
        .map(|i| f.matrix().mul(&h_src.generator_matrix(i)))
        .collect();
    let m = h_tgt.coordinates_of(&images);
    let map = ModuleMorphism::new_unchecked(h_src.module.clone(), h_tgt.module.clone(), m);
    (h_src, h_tgt, map)
}

/// A morphism `h: Y -> Z` with `h ∘ g = f`, for `f: X -> Z` and `g: X -> Y`.
pub fn factor_through(f: &ModuleMorphism, g: &ModuleMorphism) -> Result<Option<ModuleMorphism>, ModuleError> {
    if f.src() != g.src() {
        return Err(ModuleError::SourceMismatch);
    }
    let hom = HomModule::new(g.tgt(), f.tgt());
    let gx = f.src().generators();
    let rows = f.tgt().generators() * gx;
    let mut lhs = IntMatrix::zeros(rows, 0);
    for i in 0..hom.generator_count() {
        lhs = lhs.hstack(&hom.generator_matrix(i).mul(g.matrix()).vec_column());
    }
    // equality of morphisms X -> Z holds modulo the relations of Z
    let slack = IntMatrix::identity(gx).kron(f.tgt().relations());
    let k = hom.generator_count();
    let sol = solve(&lhs.hstack(&slack), &f.matrix().vec_column())?;
    Ok(sol.map(|x| {
        let coords: Vec<Integer> = (0..k).map(|i| x[(i, 0)].clone()).collect();
        hom.morphism(&coords)
    }))
}
