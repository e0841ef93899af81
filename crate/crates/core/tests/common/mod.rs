//! Brute-force oracles and random corpora shared by the integration tests.
//!
//! Nothing here goes through Smith normal forms: finite groups are enumerated
//! element by element and invariant factors come from gcds of minors.

#![allow(dead_code)]

use std::collections::HashSet;

use fpfunctor::fpmod::stack;
use fpfunctor::{hom_module, FpFunctor, FpModule, IntMatrix, Integer, ModuleMorphism, NatTrans, Prime};
use num_integer::Integer as _;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(x: &Integer) -> i128 {
    x.to_i128().expect("entry fits in i128")
}

pub fn to_rows(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(small).collect()).collect()
}

// ---------------------------------------------------------------------------
// determinants and minors

pub fn laplace_det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * laplace_det(&minor)
            })
            .sum(),
    }
}

/// Cofactor expansion over arbitrary-precision integers.
pub fn laplace_det_big(m: &IntMatrix) -> Integer {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    if n == 0 {
        return Integer::from(1);
    }
    let mut total = Integer::from(0);
    for j in 0..n {
        if m[(0, j)] == Integer::from(0) {
            continue;
        }
        let minor = m.select_rows(1..n).select_cols((0..n).filter(|&c| c != j));
        let term = &m[(0, j)] * laplace_det_big(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `d_k`: gcd of all `k × k` minors, for `k = 1..=min(rows, cols)`.
pub fn minor_gcds(a: &[Vec<i128>], cols: usize) -> Vec<i128> {
    let rows = a.len();
    (1..=rows.min(cols))
        .map(|k| {
            let mut g = 0i128;
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j]).collect()).collect();
                    g = g.gcd(&laplace_det(&sub));
                }
            }
            g
        })
        .collect()
}

/// Nonzero invariant factors `d_k / d_(k-1)`.
pub fn invariant_factors_by_minors(a: &[Vec<i128>], cols: usize) -> Vec<i128> {
    let mut prev = 1i128;
    let mut out = Vec::new();
    for d in minor_gcds(a, cols) {
        if d == 0 {
            break;
        }
        out.push(d / prev);
        prev = d;
    }
    out
}

// ---------------------------------------------------------------------------
// finite abelian groups by enumeration

pub fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

fn reduce(x: i128, m: u64) -> u64 {
    x.rem_euclid(i128::from(m)) as u64
}

pub fn all_vectors(k: usize, m: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::with_capacity(k)];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn add(x: &[u64], y: &[u64], m: u64) -> Vec<u64> {
    x.iter().zip(y).map(|(a, b)| (a + b) % m).collect()
}

fn scale(x: &[u64], t: u64, m: u64) -> Vec<u64> {
    x.iter().map(|a| (a * t) % m).collect()
}

/// Row vector times matrix, modulo `m`.
pub fn row_times(v: &[u64], a: &[Vec<i128>], cols: usize, m: u64) -> Vec<u64> {
    (0..cols)
        .map(|j| reduce(v.iter().zip(a).map(|(&x, row)| i128::from(x) * row[j]).sum(), m))
        .collect()
}

/// Matrix times column vector, modulo `m`.
pub fn times_col(a: &[Vec<i128>], v: &[u64], m: u64) -> Vec<u64> {
    a.iter().map(|row| reduce(row.iter().zip(v).map(|(&c, &x)| c * i128::from(x)).sum(), m)).collect()
}

/// Smallest subgroup of `(Z/m)^k` containing `start` and `gens`.
pub fn span(start: HashSet<Vec<u64>>, gens: impl IntoIterator<Item = Vec<u64>>, k: usize, m: u64) -> HashSet<Vec<u64>> {
    let mut s = start;
    if s.is_empty() {
        s.insert(vec![0; k]);
    }
    for g in gens {
        if s.contains(&g) {
            continue;
        }
        let mut multiples = vec![g.clone()];
        let mut cur = add(&g, &g, m);
        while !s.contains(&cur) {
            multiples.push(cur.clone());
            cur = add(&cur, &g, m);
        }
        let old: Vec<Vec<u64>> = s.iter().cloned().collect();
        for x in &old {
            for y in &multiples {
                s.insert(add(x, y, m));
            }
        }
    }
    s
}

/// `H / N` for subgroups `N ⊆ H` of `(Z/m)^k`; `H` is listed, `N` is a set.
pub struct Quotient {
    pub m: u64,
    pub h: Vec<Vec<u64>>,
    pub n: HashSet<Vec<u64>>,
}

impl Quotient {
    pub fn order(&self) -> usize {
        self.h.len() / self.n.len()
    }

    /// Order followed by `|G[t]|` for each divisor `t` of `m`; this determines
    /// a group of exponent dividing `m` up to isomorphism.
    pub fn signature(&self) -> Vec<u128> {
        let mut sig = vec![self.order() as u128];
        for t in divisors(self.m) {
            let killed = self.h.iter().filter(|x| self.n.contains(&scale(x, t, self.m))).count();
            sig.push((killed / self.n.len()) as u128);
        }
        sig
    }
}

/// Same signature computed from the library's structure of `x`, if finite.
pub fn module_signature(x: &FpModule, m: u64) -> Option<Vec<u128>> {
    let inv = x.structure_invariants();
    if inv.free_rank > 0 {
        return None;
    }
    let orders: Vec<u128> = inv
        .torsion
        .iter()
        .flat_map(|((p, l), &k)| std::iter::repeat_n(p.pow(*l).to_u128().unwrap(), k))
        .collect();
    let mut sig = vec![orders.iter().product()];
    for t in divisors(m) {
        sig.push(orders.iter().map(|q| q.gcd(&u128::from(t))).product());
    }
    Some(sig)
}

/// `Hom(A, Z/m)` as row vectors `v` with `v · rel_A ≡ 0`.
pub fn hom_to_cyclic(a: &FpModule, m: u64) -> Vec<Vec<u64>> {
    let rel = to_rows(a.relations());
    let cols = a.relations().cols();
    all_vectors(a.generators(), m)
        .into_iter()
        .filter(|v| row_times(v, &rel, cols, m).iter().all(|&x| x == 0))
        .collect()
}

fn precompose_all(homs: &[Vec<u64>], f: &ModuleMorphism, m: u64) -> HashSet<Vec<u64>> {
    let mat = to_rows(f.matrix());
    let cols = f.matrix().cols();
    let mut out: HashSet<Vec<u64>> = homs.iter().map(|w| row_times(w, &mat, cols, m)).collect();
    if out.is_empty() {
        out.insert(vec![0; cols]);
    }
    out
}

/// `G(Z/m)` by enumeration.
pub fn brute_evaluate(g: &FpFunctor, m: u64) -> Quotient {
    let h = hom_to_cyclic(g.a(), m);
    let n = precompose_all(&hom_to_cyclic(g.b(), m), g.alpha(), m);
    Quotient { m, h, n }
}

/// Kernel of `phi` at `Z/m`, element by element.
pub fn brute_nat_kernel(phi: &NatTrans, m: u64) -> Quotient {
    let g1 = brute_evaluate(phi.src(), m);
    let im2 = precompose_all(&hom_to_cyclic(phi.tgt().b(), m), phi.tgt().alpha(), m);
    let rho = to_rows(phi.rho().matrix());
    let cols = phi.rho().matrix().cols();
    let h = g1.h.into_iter().filter(|v| im2.contains(&row_times(v, &rho, cols, m))).collect();
    Quotient { m, h, n: g1.n }
}

/// Cokernel of `phi` at `Z/m`, element by element.
pub fn brute_nat_cokernel(phi: &NatTrans, m: u64) -> Quotient {
    let g2 = brute_evaluate(phi.tgt(), m);
    let from_src = precompose_all(&hom_to_cyclic(phi.src().a(), m), phi.rho(), m);
    let k = phi.tgt().a().generators();
    let n = span(g2.n, from_src, k, m);
    Quotient { m, h: g2.h, n }
}

/// Order of a finite module from gcds of maximal minors, `None` if infinite.
pub fn order_by_minors(x: &FpModule) -> Option<u64> {
    let g = x.generators();
    if g == 0 {
        return Some(1);
    }
    let d = minor_gcds(&to_rows(x.relations()), x.relations().cols());
    match d.get(g - 1) {
        Some(&v) if v != 0 => Some(v.unsigned_abs() as u64),
        _ => None,
    }
}

fn relation_span(x: &FpModule, m: u64) -> HashSet<Vec<u64>> {
    let rel = to_rows(x.relations());
    let cols: Vec<Vec<u64>> = (0..x.relations().cols())
        .map(|j| rel.iter().map(|row| reduce(row[j], m)).collect())
        .collect();
    span(HashSet::new(), cols, x.generators(), m)
}

/// Kernel of a morphism of finite modules; `m` must kill both modules.
pub fn brute_morphism_kernel(f: &ModuleMorphism, m: u64) -> Quotient {
    let sub_tgt = relation_span(f.tgt(), m);
    let mat = to_rows(f.matrix());
    let h = all_vectors(f.src().generators(), m)
        .into_iter()
        .filter(|x| sub_tgt.contains(&times_col(&mat, x, m)))
        .collect();
    Quotient { m, h, n: relation_span(f.src(), m) }
}

/// Cokernel of a morphism of finite modules; `m` must kill both modules.
pub fn brute_morphism_cokernel(f: &ModuleMorphism, m: u64) -> Quotient {
    let mat = to_rows(f.matrix());
    let k = f.tgt().generators();
    let images: Vec<Vec<u64>> = (0..f.src().generators())
        .map(|j| {
            let mut e = vec![0; f.src().generators()];
            e[j] = 1;
            times_col(&mat, &e, m)
        })
        .collect();
    let n = span(relation_span(f.tgt(), m), images, k, m);
    Quotient { m, h: all_vectors(k, m), n }
}

// ---------------------------------------------------------------------------
// random corpora

pub struct Shape {
    pub max_gens: usize,
    pub max_rels: usize,
    pub bound: i64,
}

pub const CORPUS_SHAPE: Shape = Shape { max_gens: 4, max_rels: 4, bound: 20 };

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| {
        if rng.gen_bool(0.4) {
            Integer::from(0)
        } else {
            Integer::from(rng.gen_range(-bound..=bound))
        }
    })
}

pub fn random_module(rng: &mut ChaCha8Rng, shape: &Shape) -> FpModule {
    let g = rng.gen_range(0..=shape.max_gens);
    let r = rng.gen_range(0..=shape.max_rels);
    FpModule::new(random_matrix(rng, g, r, shape.bound))
}

/// A random element of `Hom(src, tgt)`, as a small combination of generators.
pub fn random_morphism(rng: &mut ChaCha8Rng, src: &FpModule, tgt: &FpModule) -> ModuleMorphism {
    let hom = hom_module(src, tgt);
    let coords: Vec<Integer> = (0..hom.generator_count()).map(|_| Integer::from(rng.gen_range(-3..=3))).collect();
    hom.morphism(&coords)
}

pub fn random_functor(rng: &mut ChaCha8Rng, shape: &Shape) -> FpFunctor {
    let a = random_module(rng, shape);
    let b = random_module(rng, shape);
    FpFunctor::new(random_morphism(rng, &a, &b))
}

/// Named functors followed by `random` random ones.
pub fn corpus(seed: u64, random: usize) -> Vec<FpFunctor> {
    let mut out = vec![
        FpFunctor::zero(),
        FpFunctor::forgetful(),
        FpFunctor::hom(&FpModule::cyclic(2)),
        FpFunctor::hom(&FpModule::cyclic(12)),
        FpFunctor::tensor(&FpModule::cyclic(2)),
        FpFunctor::tensor(&FpModule::cyclic(45)),
        FpFunctor::simple(&Prime::of(2), 1),
        FpFunctor::simple(&Prime::of(3), 2),
        FpFunctor::simple(&Prime::of(5), 1).direct_sum(&FpFunctor::hom(&FpModule::cyclic(4))),
        FpFunctor::tensor(&FpModule::cyclic(2)).direct_sum(&FpFunctor::forgetful()),
    ];
    let mut r = rng(seed);
    out.extend((0..random).map(|_| random_functor(&mut r, &CORPUS_SHAPE)));
    out
}

/// A natural transformation `G1 -> G2` small enough for enumeration at `Z/8`.
///
/// `G2` is presented by `A2 -> B1 ⊕ C` with components `alpha1 ∘ rho` and a
/// random `gamma`, so the projection onto `B1` witnesses naturality.
pub fn random_nat_trans(rng: &mut ChaCha8Rng) -> NatTrans {
    let gens3 = Shape { max_gens: 3, max_rels: 3, bound: 20 };
    let gens2 = Shape { max_gens: 2, max_rels: 3, bound: 20 };
    let a1 = random_module(rng, &gens3);
    let b1 = random_module(rng, &gens2);
    let alpha1 = random_morphism(rng, &a1, &b1);
    let a2 = random_module(rng, &gens3);
    let c = random_module(rng, &gens2);
    let rho = random_morphism(rng, &a2, &a1);
    let gamma = random_morphism(rng, &a2, &c);
    let alpha2 = stack(&alpha1.compose(&rho).unwrap(), &gamma).unwrap();
    NatTrans::new(FpFunctor::new(alpha1), FpFunctor::new(alpha2), rho).expect("projection witnesses naturality")
}

/// A random unimodular matrix and its inverse.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(n);
    let mut q = IntMatrix::identity(n);
    if n == 0 {
        return (p, q);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let (e, e_inv) = if i == j || rng.gen_bool(0.2) {
            // flip the sign of row i
            let e = IntMatrix::from_fn(n, n, |r, c| match (r == c, r == i) {
                (true, true) => Integer::from(-1),
                (true, false) => Integer::from(1),
                _ => Integer::from(0),
            });
            (e.clone(), e)
        } else {
            let c: i64 = *[-2, -1, 1, 2].choose(rng).unwrap();
            let elem = |c: i64| {
                IntMatrix::from_fn(n, n, |r, s| {
                    if r == s {
                        Integer::from(1)
                    } else if r == i && s == j {
                        Integer::from(c)
                    } else {
                        Integer::from(0)
                    }
                })
            };
            (elem(c), elem(-c))
        };
        p = e.mul(&p);
        q = q.mul(&e_inv);
    }
    (p, q)
}

/// Another presentation of the same functor: unimodular changes of generators
/// and relations of `A` and `B`, or an enlargement by a split summand.
pub fn mutate(rng: &mut ChaCha8Rng, g: &FpFunctor) -> FpFunctor {
    let (a, b, alpha) = (g.a(), g.b(), g.alpha().matrix());
    let (ga, gb) = (a.generators(), b.generators());
    let (ra, rb) = (a.relations(), b.relations());
    let rebuild = |ra: IntMatrix, rb: IntMatrix, alpha: IntMatrix| {
        FpFunctor::from_matrix(FpModule::new(ra), FpModule::new(rb), alpha).expect("mutation stays well defined")
    };
    match rng.gen_range(0..7) {
        0 => {
            let (p, p_inv) = random_unimodular(rng, ga, 6);
            rebuild(p.mul(ra), rb.clone(), alpha.mul(&p_inv))
        }
        1 => {
            let (p, _) = random_unimodular(rng, gb, 6);
            rebuild(ra.clone(), p.mul(rb), p.mul(alpha))
        }
        2 => {
            let (q, _) = random_unimodular(rng, ra.cols(), 6);
            let (q2, _) = random_unimodular(rng, rb.cols(), 6);
            rebuild(ra.mul(&q), rb.mul(&q2), alpha.clone())
        }
        3 => {
            // a redundant relation
            let v = random_matrix(rng, ra.cols(), 1, 3);
            rebuild(ra.hstack(&ra.mul(&v)), rb.clone(), alpha.clone())
        }
        4 => {
            // alpha ⊕ id_C
            let c = random_module(rng, &Shape { max_gens: 2, max_rels: 2, bound: 9 });
            let id = IntMatrix::identity(c.generators());
            rebuild(ra.block_diag(c.relations()), rb.block_diag(c.relations()), alpha.block_diag(&id))
        }
        5 => {
            // (alpha, 0): A -> B ⊕ C
            let c = random_module(rng, &Shape { max_gens: 2, max_rels: 2, bound: 9 });
            let zero = IntMatrix::zeros(c.generators(), ga);
            rebuild(ra.clone(), rb.block_diag(c.relations()), alpha.vstack(&zero))
        }
        _ => {
            // A ⊕ 0 with the zero module presented by a unit relation
            let unit = IntMatrix::from_rows(&[&[1]]);
            rebuild(ra.block_diag(&unit), rb.clone(), alpha.hstack(&IntMatrix::zeros(gb, 1)))
        }
    }
}
