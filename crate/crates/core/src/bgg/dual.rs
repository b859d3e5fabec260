//! Duality on the standard projectives: `P_i` maps isomorphically onto the
//! ideal `T_{I_i}` by multiplication with `A_1 ⋯ A_{i-1}`, globally as
//! lattices and locally as reductions with matching coset blocks.

use crate::arith::field::{Field, FqField};
use crate::arith::fpoly::{self, Poly};
use crate::arith::linalg::Subspace;
use crate::prime::PrimeIdeal;
use crate::strat::{duality_lattice, omega_residues, DualityLattice};
use crate::tensor::local::{block_idempotents, reduced_modulus};
use crate::tensor::TensorSquare;

/// The reductions of `P_i` and `T_{I_i}` at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDual {
    pub p: u64,
    pub fdeg: usize,
    /// `dim x̄_c (F_Q[x] / Ḡ_i)` per coset.
    pub projective_blocks: Vec<usize>,
    /// `dim x̄_c (T_{I_i} ⊗ F_Q)` per coset.
    pub ideal_blocks: Vec<usize>,
    /// Multiplication by `ḡ` maps the first onto the second injectively.
    pub map_bijective: bool,
}

impl LocalDual {
    pub fn ok(&self) -> bool {
        self.map_bijective && self.projective_blocks == self.ideal_blocks
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualReport {
    pub global: DualityLattice,
    pub local: Vec<LocalDual>,
}

impl DualReport {
    pub fn ok(&self) -> bool {
        self.global.ok() && self.local.iter().all(LocalDual::ok)
    }
}

type Space = Subspace<FqField>;

fn coeffs(fq: &FqField, p: &Poly<FqField>, n: usize) -> Vec<crate::arith::FqElem> {
    let mut v = p.clone();
    v.resize(n, fq.zero());
    v
}

fn block_dims(fq: &FqField, v: &Space, idems: &[Poly<FqField>], fbar: &Poly<FqField>) -> Vec<usize> {
    let n = v.ambient();
    idems
        .iter()
        .map(|x| {
            let vs = v.basis().iter().map(|b| {
                let p = fpoly::trim(fq, b.clone());
                coeffs(fq, &fpoly::mulmod(fq, &p, x, fbar), n)
            });
            Space::from_vectors(fq, n, vs).dim()
        })
        .collect()
}

/// Local comparison at `q` for the 1-based index `i`.
pub fn local_dual(ts: &TensorSquare, i: usize, q: &PrimeIdeal) -> LocalDual {
    let fq = q.residue_field();
    let n = ts.degree();
    let taus = omega_residues(ts, q);
    let fbar = reduced_modulus(ts, q);
    let mut cosets: Vec<(crate::arith::FqElem, usize)> = Vec::new();
    for t in &taus {
        match cosets.iter_mut().find(|(u, _)| u == t) {
            Some(c) => c.1 += 1,
            None => cosets.push((t.clone(), 1)),
        }
    }
    let (ctaus, mults): (Vec<_>, Vec<_>) = cosets.into_iter().unzip();
    let idems = block_idempotents(fq, &ctaus, &mults);
    let lin = |l: usize| fpoly::linear(fq, &taus[l]);
    let head = (0..i - 1).fold(fpoly::one(fq), |acc, l| fpoly::mul(fq, &acc, &lin(l)));
    let tail = (i - 1..n).fold(fpoly::one(fq), |acc, l| fpoly::mul(fq, &acc, &lin(l)));
    let rank = n + 1 - i;

    let x = vec![fq.zero(), fq.one()];
    let projective = Space::from_vectors(fq, n, (0..rank).map(|t| coeffs(fq, &fpoly::pow(fq, &x, t), n)));
    let projective_blocks = block_dims(fq, &projective, &idems, &tail);

    let subset: Vec<usize> = (i..=n).map(|k| ts.omega()[k - 1]).collect();
    let (_, ideal) = ts.ideal_of_subset(&subset);
    let reduced = Space::from_vectors(
        fq,
        n,
        ideal.basis().iter().map(|v| {
            let t = ts.unflatten(v);
            t.coeffs().iter().map(|c| q.reduce(c)).collect::<Vec<_>>()
        }),
    );
    let ideal_blocks = block_dims(fq, &reduced, &idems, &fbar);
    let image = Space::from_vectors(
        fq,
        n,
        (0..rank).map(|t| coeffs(fq, &fpoly::mulmod(fq, &fpoly::pow(fq, &x, t), &head, &fbar), n)),
    );
    LocalDual {
        p: q.p(),
        fdeg: q.fdeg(),
        projective_blocks,
        ideal_blocks,
        map_bijective: image.dim() == rank && image == reduced,
    }
}

/// Global lattice isomorphism for `P_i` plus the local comparison at every
/// prime in `primes`.
pub fn dual_check(ts: &TensorSquare, i: usize, primes: &[PrimeIdeal]) -> DualReport {
    DualReport { global: duality_lattice(ts, i), local: primes.iter().map(|q| local_dual(ts, i, q)).collect() }
}
