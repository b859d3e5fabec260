//! `T = S ⊗_Z S`, realized as `S[x]/(f)` with `x = θ⊗1` and coefficients
//! acting as `1⊗s`.
//!
//! Flattened Z-coordinates of an element use index `a·n + b` for the
//! coefficient of `x^a θ^b`.

pub mod local;
pub mod module;

use num_traits::Zero;

use crate::arith::lattice::{left_kernel, IntLattice};
use crate::error::{Error, Result};
use crate::numfield::{GaloisRing, NumberRing, RingElement};
use crate::Int;

pub use local::{idempotents_at, residue_checks, Idempotents, LocalizedElement, ResidueReport};
pub use module::{
    check_map, check_sheaf_exact, filtration, is_exact, FilteredLattice, LatticeModule, ModuleMap,
    SheafVerdict,
};

/// Element `Σ_a x^a t_a` of `S[x]/(f)` with `t_a ∈ S`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    coeffs: Vec<RingElement>,
}

impl TensorElement {
    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RingElement::is_zero)
    }
}

/// The tensor square together with an ordering `Ω` of the group.
#[derive(Clone, Debug)]
pub struct TensorSquare {
    gr: GaloisRing,
    omega: Vec<usize>,
    /// `a_products[i] = A_1 ⋯ A_i` in `Ω` order.
    a_products: Vec<TensorElement>,
}

impl TensorSquare {
    /// Default ordering: declaration order.
    pub fn new(gr: GaloisRing) -> Self {
        let n = gr.degree();
        Self::with_order(gr, (0..n).collect()).expect("identity ordering")
    }

    /// `omega[i]` is the group index placed at position `i + 1`.
    pub fn with_order(gr: GaloisRing, omega: Vec<usize>) -> Result<Self> {
        let n = gr.degree();
        let mut seen = vec![false; n];
        if omega.len() != n {
            return Err(Error::InvalidOrdering(format!("expected {n} entries, got {}", omega.len())));
        }
        for &k in &omega {
            if k >= n || seen[k] {
                return Err(Error::InvalidOrdering(format!("{omega:?} is not a permutation")));
            }
            seen[k] = true;
        }
        let mut ts = TensorSquare { gr, omega, a_products: Vec::new() };
        let mut cur = ts.one();
        ts.a_products.push(cur.clone());
        for i in 1..=n {
            cur = ts.mul(&cur, &ts.a_element(i));
            ts.a_products.push(cur.clone());
        }
        Ok(ts)
    }

    pub fn galois(&self) -> &GaloisRing {
        &self.gr
    }

    pub fn ring(&self) -> &NumberRing {
        self.gr.ring()
    }

    pub fn degree(&self) -> usize {
        self.gr.degree()
    }

    /// Z-rank of `T`.
    pub fn dim(&self) -> usize {
        self.degree() * self.degree()
    }

    pub fn omega(&self) -> &[usize] {
        &self.omega
    }

    /// Position (1-based) of group index `k` in `Ω`.
    pub fn position(&self, k: usize) -> usize {
        self.omega.iter().position(|&j| j == k).unwrap() + 1
    }

    pub fn zero(&self) -> TensorElement {
        TensorElement { coeffs: vec![self.ring().zero(); self.degree()] }
    }

    pub fn one(&self) -> TensorElement {
        self.right(&self.ring().one())
    }

    /// `x = θ⊗1`.
    pub fn x(&self) -> TensorElement {
        self.left(&self.ring().theta())
    }

    /// `1⊗s`.
    pub fn right(&self, s: &RingElement) -> TensorElement {
        let mut t = self.zero();
        t.coeffs[0] = s.clone();
        t
    }

    /// `s⊗1`, i.e. `s(x)`.
    pub fn left(&self, s: &RingElement) -> TensorElement {
        let r = self.ring();
        TensorElement { coeffs: s.coords().iter().map(|c| r.from_int(c.clone())).collect() }
    }

    /// Element from coefficients of `x^a`, reducing modulo `f` when there are
    /// more than `n` of them.
    pub fn from_coeffs(&self, mut coeffs: Vec<RingElement>) -> TensorElement {
        let n = self.degree();
        let r = self.ring();
        let f = r.f().clone();
        while coeffs.len() > n {
            let top = coeffs.pop().unwrap();
            let k = coeffs.len() - n;
            if top.is_zero() {
                continue;
            }
            for j in 0..n {
                let fj = f.coeff(j);
                if !fj.is_zero() {
                    coeffs[k + j] = r.sub(&coeffs[k + j], &r.scale(&top, &fj));
                }
            }
        }
        coeffs.resize(n, r.zero());
        TensorElement { coeffs }
    }

    pub fn add(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        let r = self.ring();
        TensorElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| r.add(x, y)).collect() }
    }

    pub fn sub(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        let r = self.ring();
        TensorElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| r.sub(x, y)).collect() }
    }

    pub fn neg(&self, a: &TensorElement) -> TensorElement {
        let r = self.ring();
        TensorElement { coeffs: a.coeffs.iter().map(|x| r.neg(x)).collect() }
    }

    pub fn mul(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        let r = self.ring();
        let n = self.degree();
        let mut raw = vec![r.zero(); 2 * n - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] = r.add(&raw[i + j], &r.mul(x, y));
                }
            }
        }
        self.from_coeffs(raw)
    }

    /// Right action `t·(1⊗s)`.
    pub fn mul_right(&self, t: &TensorElement, s: &RingElement) -> TensorElement {
        let r = self.ring();
        TensorElement { coeffs: t.coeffs.iter().map(|c| r.mul(c, s)).collect() }
    }

    pub fn pow(&self, t: &TensorElement, e: usize) -> TensorElement {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, t))
    }

    /// `φ_k(t) = Σ_a σ_k(θ)^a t_a`, with `k` a group index.
    pub fn phi(&self, t: &TensorElement, k: usize) -> RingElement {
        let r = self.ring();
        t.coeffs.iter().enumerate().fold(r.zero(), |acc, (a, c)| {
            if c.is_zero() {
                acc
            } else {
                r.add(&acc, &r.mul(self.gr.image_power(k, a), c))
            }
        })
    }

    /// `(φ_{Ω(1)}(t), …, φ_{Ω(n)}(t))`.
    pub fn phi_tuple(&self, t: &TensorElement) -> Vec<RingElement> {
        self.omega.iter().map(|&k| self.phi(t, k)).collect()
    }

    /// `A_i = x - σ_{Ω(i)}(θ)` for `1 ≤ i ≤ n`, and `A_0 = 1`.
    pub fn a_element(&self, i: usize) -> TensorElement {
        if i == 0 {
            return self.one();
        }
        let r = self.ring();
        let mut t = self.x();
        t.coeffs[0] = r.neg(self.gr.group().image(self.omega[i - 1]));
        t
    }

    /// `A_1 ⋯ A_i`.
    pub fn a_product(&self, i: usize) -> &TensorElement {
        &self.a_products[i]
    }

    /// `∏_{l ≠ Ω(i)} (x - σ_l(θ))`, which kills everything except the
    /// `Ω(i)`-component.
    pub fn psi(&self, i: usize) -> TensorElement {
        (1..=self.degree())
            .filter(|&j| j != i)
            .fold(self.one(), |acc, j| self.mul(&acc, &self.a_element(j)))
    }

    /// Coordinates `c_i` with `t = Σ_i A_1⋯A_{i-1}·(1⊗c_i)`.
    pub fn a_coords(&self, t: &TensorElement) -> Vec<RingElement> {
        let r = self.ring();
        let n = self.degree();
        let mut cur = t.coeffs.clone();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let root = self.gr.group().image(self.omega[i]);
            // synthetic division of cur by (x - root)
            let m = cur.len();
            let mut q = vec![r.zero(); m.saturating_sub(1)];
            let mut acc = r.zero();
            for a in (0..m).rev() {
                acc = r.add(&r.mul(&acc, root), &cur[a]);
                if a > 0 {
                    q[a - 1] = acc.clone();
                }
            }
            out.push(acc);
            cur = q;
        }
        out
    }

    pub fn from_a_coords(&self, c: &[RingElement]) -> TensorElement {
        c.iter()
            .enumerate()
            .fold(self.zero(), |acc, (i, ci)| self.add(&acc, &self.mul_right(&self.a_products[i], ci)))
    }

    /// Matrix `M[k][i] = φ_{Ω(k)}(A_1⋯A_{i-1})`, lower triangular.
    pub fn triangular_matrix(&self) -> Vec<Vec<RingElement>> {
        let n = self.degree();
        (0..n)
            .map(|k| (0..n).map(|i| self.phi(&self.a_products[i], self.omega[k])).collect())
            .collect()
    }

    /// Inverse of [`Self::phi_tuple`]; `None` if the tuple is not in the
    /// image of `T`.
    pub fn from_phi_tuple(&self, v: &[RingElement]) -> Option<TensorElement> {
        let r = self.ring();
        let m = self.triangular_matrix();
        let n = self.degree();
        let mut c: Vec<RingElement> = Vec::with_capacity(n);
        for k in 0..n {
            let mut rest = v[k].clone();
            for (i, ci) in c.iter().enumerate() {
                rest = r.sub(&rest, &r.mul(&m[k][i], ci));
            }
            c.push(r.div_exact(&rest, &m[k][k])?);
        }
        Some(self.from_a_coords(&c))
    }

    /// Flattened Z-coordinates.
    pub fn flatten(&self, t: &TensorElement) -> Vec<Int> {
        t.coeffs.iter().flat_map(|c| c.coords().iter().cloned()).collect()
    }

    pub fn unflatten(&self, v: &[Int]) -> TensorElement {
        let n = self.degree();
        TensorElement {
            coeffs: v.chunks(n).map(|c| RingElement::from_coords(c.to_vec())).collect(),
        }
    }

    /// The Z-basis element `x^a θ^b` for flat index `a·n + b`.
    pub fn basis(&self, idx: usize) -> TensorElement {
        let n = self.degree();
        let mut t = self.zero();
        t.coeffs[idx / n] = self.ring().basis(idx % n);
        t
    }

    /// Integer matrix of multiplication by `t`, one row per basis element.
    pub fn mul_matrix(&self, t: &TensorElement) -> Vec<Vec<Int>> {
        (0..self.dim()).map(|i| self.flatten(&self.mul(t, &self.basis(i)))).collect()
    }

    /// Integer matrix of `φ_k : T -> S`.
    pub fn phi_matrix(&self, k: usize) -> Vec<Vec<Int>> {
        (0..self.dim()).map(|i| self.phi(&self.basis(i), k).into_coords()).collect()
    }

    /// Lattice of the principal ideal `gT`.
    pub fn ideal_lattice(&self, g: &TensorElement) -> IntLattice {
        IntLattice::new(self.dim(), self.mul_matrix(g)).expect("coordinate count")
    }

    /// Generator `∏_{σ_k ∉ I} A_k` of `T_I` and its lattice.
    pub fn ideal_of_subset(&self, subset: &[usize]) -> (TensorElement, IntLattice) {
        let g = (1..=self.degree())
            .filter(|&i| !subset.contains(&self.omega[i - 1]))
            .fold(self.one(), |acc, i| self.mul(&acc, &self.a_element(i)));
        let lat = self.ideal_lattice(&g);
        (g, lat)
    }

    /// `{t : φ_k(t) = 0 for every group index k ∉ subset}`.
    pub fn kernel_lattice(&self, subset: &[usize]) -> IntLattice {
        let n = self.degree();
        let outside: Vec<usize> = (0..n).filter(|k| !subset.contains(k)).collect();
        if outside.is_empty() {
            return IntLattice::full(self.dim());
        }
        let mats: Vec<Vec<Vec<Int>>> = outside.iter().map(|&k| self.phi_matrix(k)).collect();
        let rows: Vec<Vec<Int>> = (0..self.dim())
            .map(|i| mats.iter().flat_map(|m| m[i].iter().cloned()).collect())
            .collect();
        IntLattice::new(self.dim(), left_kernel(&rows, n * outside.len())).expect("coordinate count")
    }

    /// Image of a lattice of `T` under `φ_k`, in θ-coordinates.
    pub fn phi_image(&self, lat: &IntLattice, k: usize) -> IntLattice {
        lat.image(&self.phi_matrix(k), self.degree())
    }

    /// `(σ_k ⊗ 1)(t)`: substitutes `x ↦ σ_k(θ)(x)`.
    pub fn apply_left_aut(&self, k: usize, t: &TensorElement) -> TensorElement {
        let p = self.left(self.gr.group().image(k));
        t.coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, &p), &self.right(c)))
    }
}
