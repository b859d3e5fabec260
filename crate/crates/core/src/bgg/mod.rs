//! Simple, projective and Verma modules of `𝒜_Q`, Verma flags, composition
//! multiplicities, Cartan matrices and reciprocity.
//!
//! Modules are quotients `sub / rel` of left ideals of the algebra. The
//! primitive idempotent of position `k` is `ε_k = e_kk x̄_{c(k)}`, so
//! `P(g_k) = A ε_k` and `[M : L(g_k)] = dim ε_k M`.

pub mod dual;

use crate::arith::field::Field;
use crate::arith::fpoly::{self, Poly};
use crate::arith::field::FqField;
use crate::error::{Error, Result};
use crate::strat::algebra::{Elem, FqAlgebra, Space};
use crate::strat::radical::Radical;

pub use dual::{dual_check, local_dual, DualReport, LocalDual};

/// The quotient `sub / rel` of two nested left ideals.
#[derive(Clone, Debug)]
pub struct AModule {
    sub: Space,
    rel: Space,
}

impl AModule {
    pub fn new(a: &FqAlgebra, sub: Space, rel: Space) -> Result<Self> {
        if !rel.is_subspace_of(a.field(), &sub) {
            return Err(Error::Certificate("relations are not contained in the module".into()));
        }
        if !a.is_left_ideal(&sub) || !a.is_left_ideal(&rel) {
            return Err(Error::Certificate("not stable under the algebra".into()));
        }
        Ok(AModule { sub, rel })
    }

    pub fn sub(&self) -> &Space {
        &self.sub
    }

    pub fn rel(&self) -> &Space {
        &self.rel
    }

    pub fn dim(&self) -> usize {
        self.sub.dim() - self.rel.dim()
    }

    /// `dim u M`.
    pub fn slice_dim(&self, a: &FqAlgebra, u: &Elem) -> usize {
        let image = a.span(self.sub.basis().iter().map(|m| a.mul(u, m)));
        image.sum(a.field(), &self.rel).dim() - self.rel.dim()
    }

    /// The `e_ii` slices partition the dimension.
    pub fn slices_partition(&self, a: &FqAlgebra) -> bool {
        (0..a.n()).map(|i| self.slice_dim(a, &a.e(i))).sum::<usize>() == self.dim()
    }

    /// `J M`, as the submodule `J sub + rel`.
    pub fn radical_sub(&self, a: &FqAlgebra, rad: &Radical) -> Space {
        let prods = rad.space.basis().iter().flat_map(|j| self.sub.basis().iter().map(move |m| (j, m)));
        a.span(prods.map(|(j, m)| a.mul(j, m))).sum(a.field(), &self.rel)
    }
}

/// `[M : L(g_i)] = dim ε_i M`.
pub fn multiplicity(a: &FqAlgebra, m: &AModule, i: usize) -> usize {
    m.slice_dim(a, &a.epsilon(i))
}

fn column(a: &FqAlgebra, k: usize) -> Space {
    let eps = a.epsilon(k);
    a.span((0..a.dim()).map(|b| a.mul(&a.basis_elem(b), &eps)))
}

fn entry_span(a: &FqAlgebra, j: usize, k: usize, p: &Poly<FqField>) -> Vec<Elem> {
    let fq = a.field();
    let x = vec![fq.zero(), fq.one()];
    let mut p = p.clone();
    let mut out = Vec::new();
    for _ in 0..a.entry_dim(j, k) {
        out.push(a.entry_element(j, k, &p).expect("divisible by the entry generator"));
        p = fpoly::mul(fq, &p, &x);
    }
    out
}

fn linear(a: &FqAlgebra, l: usize) -> Poly<FqField> {
    fpoly::linear(a.field(), &a.taus()[l])
}

/// `P(g_k) = A ε_k`.
pub fn projective_cover(a: &FqAlgebra, k: usize) -> AModule {
    AModule { sub: column(a, k), rel: Space::new(a.dim()) }
}

/// `L(g_k) = A ε_k / J ε_k`.
pub fn simple(a: &FqAlgebra, rad: &Radical, k: usize) -> Result<AModule> {
    let eps = a.epsilon(k);
    let rel = a.span(rad.space.basis().iter().map(|j| a.mul(j, &eps)));
    AModule::new(a, column(a, k), rel)
}

/// `X_k ε_k`: in column `k`, rows `j ≤ k` multiplied by `x - τ_k`, rows
/// `j > k` whole.
pub fn verma_relations(a: &FqAlgebra, k: usize) -> Space {
    let fq = a.field();
    let xc = a.block_idempotent(a.coset_of(k));
    let shifted = fpoly::mul(fq, &linear(a, k), xc);
    let vs = (0..a.n()).flat_map(|j| {
        let p = if j <= k { shifted.clone() } else { fpoly::mul(fq, a.small_g(j, k), xc) };
        entry_span(a, j, k, &p)
    });
    a.span(vs)
}

/// `M(g_k) = A ε_k / X_k ε_k`.
pub fn verma(a: &FqAlgebra, k: usize) -> Result<AModule> {
    AModule::new(a, column(a, k), verma_relations(a, k))
}

/// Simples and projective covers for every position.
#[derive(Clone, Debug)]
pub struct SimplesAndCovers {
    pub simples: Vec<AModule>,
    pub covers: Vec<AModule>,
}

impl SimplesAndCovers {
    pub fn simple_dims(&self) -> Vec<usize> {
        self.simples.iter().map(AModule::dim).collect()
    }

    pub fn cover_dims(&self) -> Vec<usize> {
        self.covers.iter().map(AModule::dim).collect()
    }
}

/// Builds all `L(g_k)` and `P(g_k)`, checking that `ε_j` acts on `L(g_k)`
/// with rank `δ_jk`, so the simples are pairwise non-isomorphic.
pub fn simples_and_covers(a: &FqAlgebra, rad: &Radical) -> Result<SimplesAndCovers> {
    let simples: Vec<AModule> = (0..a.n()).map(|k| simple(a, rad, k)).collect::<Result<_>>()?;
    for (k, l) in simples.iter().enumerate() {
        for j in 0..a.n() {
            if multiplicity(a, l, j) != usize::from(j == k) {
                return Err(Error::Certificate(format!("L({}) has the wrong ε_{} slice", k + 1, j + 1)));
            }
        }
    }
    let covers = (0..a.n()).map(|k| projective_cover(a, k)).collect();
    Ok(SimplesAndCovers { simples, covers })
}

/// Composition factors of `m` by peeling radical layers `J^t M / J^{t+1} M`.
/// Each layer's `e_jj` dimension vector is decomposed against those of the
/// explicit simples. Returns the multiplicity of each `L(g_k)`.
pub fn composition_factors(a: &FqAlgebra, rad: &Radical, simples: &[AModule], m: &AModule) -> Result<Vec<usize>> {
    let n = a.n();
    let profile: Vec<Vec<usize>> = simples
        .iter()
        .map(|l| (0..n).map(|j| l.slice_dim(a, &a.e(j))).collect())
        .collect();
    let mut counts = vec![0usize; n];
    let mut layer = m.clone();
    while layer.dim() > 0 {
        let below = layer.radical_sub(a, rad);
        if below == layer.sub {
            return Err(Error::Certificate("radical layer is empty".into()));
        }
        let top = AModule { sub: layer.sub.clone(), rel: below.clone() };
        let mut d: Vec<i64> = (0..n).map(|j| top.slice_dim(a, &a.e(j)) as i64).collect();
        for k in (0..n).rev() {
            let c = d[k];
            if c < 0 || profile[k][k] != 1 {
                return Err(Error::Certificate("layer does not decompose into simples".into()));
            }
            for j in 0..n {
                d[j] -= c * profile[k][j] as i64;
            }
            counts[k] += c as usize;
        }
        if d.iter().any(|&r| r != 0) {
            return Err(Error::Certificate("layer does not decompose into simples".into()));
        }
        layer = AModule { sub: below, rel: layer.rel.clone() };
    }
    Ok(counts)
}

/// The flag `P(g_i) = F_i ⊇ F_{i+1} ⊇ ⋯ ⊇ F_n = 0`, where `F_m` has entry
/// `(j, i)` generated by `∏_{i ≤ l < max(j, m)} (x - τ_l) x̄_c`.
#[derive(Clone, Debug)]
pub struct VermaFlag {
    pub index: usize,
    pub layer_dims: Vec<usize>,
    /// `(P(g_i) : M(g_k))` for every `k`.
    pub multiplicities: Vec<usize>,
}

fn flag_member(a: &FqAlgebra, i: usize, m: usize) -> Space {
    let fq = a.field();
    let xc = a.block_idempotent(a.coset_of(i));
    let vs = (0..a.n()).flat_map(|j| {
        let p = (i..j.max(m)).fold(xc.clone(), |acc, l| fpoly::mul(fq, &acc, &linear(a, l)));
        entry_span(a, j, i, &p)
    });
    a.span(vs)
}

/// Builds the flag of `P(g_i)` and identifies each nonzero quotient
/// `F_m / F_{m+1}` with `M(g_m)` through right multiplication by
/// `ḡ_mi x̄_c`: surjective onto the quotient with kernel `X_m ε_m`.
pub fn verma_flag(a: &FqAlgebra, i: usize) -> Result<VermaFlag> {
    let fq = a.field();
    let n = a.n();
    let members: Vec<Space> = (i..=n).map(|m| flag_member(a, i, m)).collect();
    if members[0] != column(a, i) || !members[n - i].is_zero() {
        return Err(Error::Certificate(format!("flag of P({}) has wrong ends", i + 1)));
    }
    let mut multiplicities = vec![0; n];
    let mut layer_dims = Vec::new();
    for m in i..n {
        let (upper, lower) = (&members[m - i], &members[m + 1 - i]);
        if !a.is_left_ideal(upper) || !lower.is_subspace_of(fq, upper) {
            return Err(Error::Certificate(format!("flag of P({}) is not a chain of submodules", i + 1)));
        }
        let d = upper.dim() - lower.dim();
        layer_dims.push(d);
        if d == 0 {
            continue;
        }
        let err = || Error::Certificate(format!("flag quotient {} of P({}) is not a Verma module", m + 1, i + 1));
        if a.coset_of(m) != a.coset_of(i) {
            return Err(err());
        }
        let p = fpoly::mul(fq, a.small_g(m, i), a.block_idempotent(a.coset_of(i)));
        let v = a.entry_element(m, i, &p).expect("entry generator");
        let source = column(a, m);
        let image = a.span(source.basis().iter().map(|s| a.mul(s, &v))).sum(fq, lower);
        let rel = verma_relations(a, m);
        let kernel_ok = rel.basis().iter().all(|r| lower.contains(fq, &a.mul(r, &v)));
        if image != *upper || !kernel_ok || source.dim() - rel.dim() != d {
            return Err(err());
        }
        multiplicities[m] = 1;
    }
    Ok(VermaFlag { index: i, layer_dims, multiplicities })
}

/// `D[k][i] = [M(g_k) : L(g_i)]`, `V[i][k] = (P(g_i) : M(g_k))` and the
/// Cartan matrix `C[i][j] = [P(g_i) : L(g_j)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityMatrix {
    pub d: Vec<Vec<usize>>,
    pub v: Vec<Vec<usize>>,
    pub c: Vec<Vec<usize>>,
}

/// Outcome of the reciprocity checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocityReport {
    pub matrices: MultiplicityMatrix,
    pub verma_dims: Vec<usize>,
    pub simple_dims: Vec<usize>,
    pub cover_dims: Vec<usize>,
    pub v_is_dt: bool,
    pub closed_form: bool,
    pub unitriangular: bool,
    pub cartan_is_dtd: bool,
    pub cartan_symmetric: bool,
    /// Dimension audits: `dim A = Σ dim L_k dim P_k` and
    /// `Σ dim P_i = Σ V[i][k] dim M_k`.
    pub dimension_audit: bool,
    /// Radical-peeling agreement, run when `dim A` is at most the oracle bound.
    pub peeling_agrees: Option<bool>,
    /// Entries `(i, j)` (1-based) where `V` and `Dᵀ` or the closed form differ.
    pub mismatches: Vec<(usize, usize)>,
}

impl ReciprocityReport {
    pub fn ok(&self) -> bool {
        self.v_is_dt
            && self.closed_form
            && self.unitriangular
            && self.cartan_is_dtd
            && self.cartan_symmetric
            && self.dimension_audit
            && self.peeling_agrees != Some(false)
    }
}

/// Largest algebra dimension on which the peeling oracle runs.
pub const PEELING_BOUND: usize = 12;

fn transpose(m: &[Vec<usize>]) -> Vec<Vec<usize>> {
    (0..m.len()).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

/// Computes `D` from multiplicity slices of Vermas and `V` from Verma flags,
/// then checks reciprocity, the closed form, and the Cartan identities.
pub fn check_reciprocity(a: &FqAlgebra, rad: &Radical) -> Result<ReciprocityReport> {
    let n = a.n();
    let sc = simples_and_covers(a, rad)?;
    let vermas: Vec<AModule> = (0..n).map(|k| verma(a, k)).collect::<Result<_>>()?;
    for m in vermas.iter().chain(&sc.covers).chain(&sc.simples) {
        if !m.slices_partition(a) {
            return Err(Error::Certificate("idempotent slices do not partition a module".into()));
        }
    }
    let d: Vec<Vec<usize>> = vermas.iter().map(|m| (0..n).map(|i| multiplicity(a, m, i)).collect()).collect();
    let v: Vec<Vec<usize>> =
        (0..n).map(|i| verma_flag(a, i).map(|f| f.multiplicities)).collect::<Result<_>>()?;
    let eps: Vec<Elem> = (0..n).map(|k| a.epsilon(k)).collect();
    let c: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| a.corner_dim(&eps[j], &eps[i])).collect()).collect();

    let dt = transpose(&d);
    let closed = |k: usize, i: usize| usize::from(k >= i && a.coset_of(k) == a.coset_of(i));
    let mut mismatches = Vec::new();
    for i in 0..n {
        for k in 0..n {
            if v[i][k] != dt[i][k] || d[k][i] != closed(k, i) {
                mismatches.push((i + 1, k + 1));
            }
        }
    }
    let dtd: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| d[k][i] * d[k][j]).sum()).collect()).collect();
    let verma_dims: Vec<usize> = vermas.iter().map(AModule::dim).collect();
    let simple_dims = sc.simple_dims();
    let cover_dims = sc.cover_dims();
    let audit_a: usize = simple_dims.iter().zip(&cover_dims).map(|(l, p)| l * p).sum();
    let audit_v: usize = (0..n).map(|i| (0..n).map(|k| v[i][k] * verma_dims[k]).sum::<usize>()).sum();
    let peeling_agrees = if a.dim() <= PEELING_BOUND {
        let mut agree = true;
        for (k, m) in vermas.iter().enumerate() {
            agree &= composition_factors(a, rad, &sc.simples, m)? == d[k];
        }
        for (i, p) in sc.covers.iter().enumerate() {
            agree &= composition_factors(a, rad, &sc.simples, p)? == c[i];
        }
        Some(agree)
    } else {
        None
    };
    Ok(ReciprocityReport {
        v_is_dt: v == dt,
        closed_form: (0..n).all(|k| (0..n).all(|i| d[k][i] == closed(k, i))),
        unitriangular: (0..n).all(|k| d[k][k] == 1 && (k + 1..n).all(|i| d[k][i] == 0)),
        cartan_is_dtd: c == dtd,
        cartan_symmetric: c == transpose(&c),
        dimension_audit: audit_a == a.dim() && audit_v == cover_dims.iter().sum::<usize>(),
        peeling_agrees,
        mismatches,
        matrices: MultiplicityMatrix { d, v, c },
        verma_dims,
        simple_dims,
        cover_dims,
    })
}
