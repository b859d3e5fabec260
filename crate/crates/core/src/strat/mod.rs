//! The projectives `P_i = T / G_i T`, their Hom-modules, and the reduced
//! endomorphism algebra `𝒜_Q`.
//!
//! Here `G_i = A_i A_{i+1} ⋯ A_n` in `Ω` order, and `Hom(P_i, P_j)` is
//! generated by `g_ij = ∏_{j ≤ k < i} A_k` modulo `G_j T`.

pub mod algebra;
pub mod radical;

use crate::arith::lattice::{left_kernel, IntLattice};
use crate::error::{Error, Result};
use crate::prime::{inertia_group, residues, PrimeIdeal};
use crate::tensor::{filtration, FilteredLattice, LatticeModule, TensorElement, TensorSquare};

pub use algebra::{center_check, CenterReport, FqAlgebra};
pub use radical::{
    column_witness, corner_data, corners_agree, is_semisimple, radical, ColumnWitness, CornerData,
    Radical, SimpleClass,
};

/// `G_i = A_i ⋯ A_n` for 1-based `i`; `G_{n+1} = 1`.
pub fn tail_product(ts: &TensorSquare, i: usize) -> TensorElement {
    (i..=ts.degree()).fold(ts.one(), |acc, k| ts.mul(&acc, &ts.a_element(k)))
}

/// `g_ij = ∏_{j ≤ k < i} A_k`, equal to 1 when `i ≤ j`.
pub fn hom_generator(ts: &TensorSquare, i: usize, j: usize) -> TensorElement {
    (j..i).fold(ts.one(), |acc, k| ts.mul(&acc, &ts.a_element(k)))
}

/// The projective `P_i` with its verified filtration.
#[derive(Clone, Debug)]
pub struct ProjectiveP {
    pub index: usize,
    pub module: LatticeModule,
    pub filtered: FilteredLattice,
}

/// Builds `P_i` and checks that its layers vanish before `i` and that its
/// top quotient has Z-rank `n`.
pub fn projective(ts: &TensorSquare, i: usize) -> Result<ProjectiveP> {
    let n = ts.degree();
    if i == 0 || i > n {
        return Err(Error::DimensionMismatch { expected: n, got: i });
    }
    let module = LatticeModule::cyclic_quotient(ts, &tail_product(ts, i));
    let filtered = filtration(ts, &module)?;
    let ranks = filtered.layer_ranks();
    let total = n * (n - i + 1);
    if ranks[0] != total || ranks[i - 1] != total || ranks[i] != total - n {
        return Err(Error::NotInCategory {
            layer: i,
            reason: format!("unexpected layer ranks {ranks:?}"),
        });
    }
    Ok(ProjectiveP { index: i, module, filtered })
}

/// `Hom(P_i, P_j)` as `(g_ij T + G_j T) / G_j T`.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub i: usize,
    pub j: usize,
    pub generator: TensorElement,
    pub lattice: IntLattice,
    pub relations: IntLattice,
}

impl HomModule {
    /// Rank over `S`.
    pub fn s_rank(&self, n: usize) -> usize {
        (self.lattice.rank() - self.relations.rank()) / n
    }
}

/// Computes `Hom(P_i, P_j)` and checks it equals the colon lattice
/// `{y : y G_i ∈ G_j T}` modulo `G_j T`.
pub fn hom_module(ts: &TensorSquare, i: usize, j: usize) -> Result<HomModule> {
    let n = ts.degree();
    let generator = hom_generator(ts, i, j);
    let relations = ts.ideal_lattice(&tail_product(ts, j));
    let lattice = ts.ideal_lattice(&generator).sum(&relations);
    let colon = IntLattice::full(ts.dim()).preimage(&ts.mul_matrix(&tail_product(ts, i)), &relations);
    if colon != lattice {
        return Err(Error::Certificate(format!("Hom({i}, {j}) differs from the colon lattice")));
    }
    let h = HomModule { i, j, generator, lattice, relations };
    if h.s_rank(n) != n + 1 - i.max(j) {
        return Err(Error::Certificate(format!("Hom({i}, {j}) has the wrong rank")));
    }
    Ok(h)
}

/// Composition `Hom(P_i, P_k) × Hom(P_k, P_j) → Hom(P_i, P_j)` on generators.
pub fn composition_closed(ts: &TensorSquare, homs: &[Vec<HomModule>]) -> bool {
    let n = ts.degree();
    (0..n).all(|i| {
        (0..n).all(|k| {
            (0..n).all(|j| {
                let p = ts.mul(&homs[i][k].generator, &homs[k][j].generator);
                homs[i][j].lattice.contains(&ts.flatten(&p)).unwrap_or(false)
            })
        })
    })
}

/// Multiplication by `A_1 ⋯ A_{i-1}` maps `P_i` isomorphically onto `T_{I_i}`
/// with `I_i = {Ω(k) : k ≥ i}`: checks the image against both the ideal and
/// the `φ`-kernel, and the kernel against `G_i T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityLattice {
    pub i: usize,
    pub image_is_ideal: bool,
    pub image_is_phi_kernel: bool,
    pub kernel_is_relations: bool,
    pub rank: usize,
}

impl DualityLattice {
    pub fn ok(&self) -> bool {
        self.image_is_ideal && self.image_is_phi_kernel && self.kernel_is_relations
    }
}

pub fn duality_lattice(ts: &TensorSquare, i: usize) -> DualityLattice {
    let n = ts.degree();
    let m = ts.mul_matrix(ts.a_product(i - 1));
    let image = IntLattice::full(ts.dim()).image(&m, ts.dim());
    let subset: Vec<usize> = (i..=n).map(|k| ts.omega()[k - 1]).collect();
    let (_, ideal) = ts.ideal_of_subset(&subset);
    let kernel = IntLattice::new(ts.dim(), left_kernel(&m, ts.dim())).expect("coordinate count");
    DualityLattice {
        i,
        image_is_ideal: image == ideal,
        image_is_phi_kernel: image == ts.kernel_lattice(&subset),
        kernel_is_relations: kernel == ts.ideal_lattice(&tail_product(ts, i)),
        rank: image.rank(),
    }
}

/// Residues `τ` in `Ω` order.
pub fn omega_residues(ts: &TensorSquare, q: &PrimeIdeal) -> Vec<crate::arith::FqElem> {
    let tau = residues(ts.galois(), q);
    ts.omega().iter().map(|&k| tau[k].clone()).collect()
}

/// `𝒜_Q`, with its residue classes cross-checked against the right cosets
/// of the inertia group.
pub fn algebra_mod_q(ts: &TensorSquare, q: &PrimeIdeal) -> Result<FqAlgebra> {
    let a = FqAlgebra::new(q.residue_field().clone(), omega_residues(ts, q));
    let e = inertia_group(ts.galois(), q)?;
    let mut group_cosets: Vec<Vec<usize>> = ts
        .galois()
        .cosets(e.members())?
        .into_iter()
        .map(|c| {
            let mut p: Vec<usize> = c.iter().map(|&k| ts.position(k) - 1).collect();
            p.sort_unstable();
            p
        })
        .collect();
    group_cosets.sort();
    let mut residue_cosets = a.cosets().to_vec();
    residue_cosets.sort();
    if group_cosets != residue_cosets {
        return Err(Error::Certificate("residue classes differ from inertia cosets".into()));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{cyclotomic, quadratic};
    use crate::prime::split_prime;

    #[test]
    fn projectives() {
        let ts = TensorSquare::new(quadratic(2).unwrap());
        let p1 = projective(&ts, 1).unwrap();
        assert!(p1.module.kernel().is_zero());
        let p2 = projective(&ts, 2).unwrap();
        assert_eq!(p2.filtered.layer_ranks(), vec![2, 2, 0]);
    }

    #[test]
    fn hom_ranks() {
        let ts = TensorSquare::new(cyclotomic(5).unwrap());
        let n = 4;
        let homs: Vec<Vec<HomModule>> = (1..=n)
            .map(|i| (1..=n).map(|j| hom_module(&ts, i, j).unwrap()).collect())
            .collect();
        let total: usize = homs.iter().flatten().map(|h| h.s_rank(n)).sum();
        assert_eq!(total, 30);
        assert!(composition_closed(&ts, &homs));
        let q = TensorSquare::new(quadratic(2).unwrap());
        let h = hom_module(&q, 2, 1).unwrap();
        assert_eq!(h.generator, q.a_element(1));
        assert_eq!(h.s_rank(2), 1);
    }

    #[test]
    fn duality() {
        let ts = TensorSquare::new(cyclotomic(5).unwrap());
        for i in 1..=4 {
            let d = duality_lattice(&ts, i);
            assert!(d.ok());
            assert_eq!(d.rank, 4 * (5 - i));
        }
    }

    #[test]
    fn reduced_algebras() {
        let ts = TensorSquare::new(quadratic(2).unwrap());
        for p in [2u64, 7] {
            let q = split_prime(ts.ring(), p).unwrap().remove(0);
            assert_eq!(algebra_mod_q(&ts, &q).unwrap().dim(), 5);
        }
        let z = TensorSquare::new(cyclotomic(5).unwrap());
        let q = split_prime(z.ring(), 11).unwrap().remove(0);
        let a = algebra_mod_q(&z, &q).unwrap();
        assert!(is_semisimple(&a).unwrap());
    }
}
