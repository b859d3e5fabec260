//! The reduced endomorphism algebra `𝒜_Q` as structure constants over `F_Q`.
//!
//! Entry `(i, j)` is `ḡ_ij · F_Q[x] / (Ḡ_j)`, where `Ḡ_j = ∏_{l ≥ j} (x - τ_l)`
//! and `ḡ_ij = ∏_{j ≤ l < i} (x - τ_l)`. Its basis is `ḡ_ij x^t` for
//! `t < n - max(i, j) + 1`, and products `(i,k)·(k,j)` land in `(i,j)`.
//! Positions are 0-based internally.

use crate::arith::field::{Field, FqElem, FqField};
use crate::arith::fpoly::{self, Poly};
use crate::arith::linalg::{self, Subspace};
use crate::tensor::local::block_idempotents;

/// An element as a dense coordinate vector.
pub type Elem = Vec<FqElem>;
pub type Space = Subspace<FqField>;

#[derive(Clone, Debug)]
pub struct FqAlgebra {
    fq: FqField,
    n: usize,
    taus: Vec<FqElem>,
    cosets: Vec<Vec<usize>>,
    coset_of: Vec<usize>,
    big_g: Vec<Poly<FqField>>,
    small_g: Vec<Vec<Poly<FqField>>>,
    offsets: Vec<Vec<usize>>,
    dims: Vec<Vec<usize>>,
    labels: Vec<(usize, usize, usize)>,
    fbar: Poly<FqField>,
    block_idems: Vec<Poly<FqField>>,
    /// `table[a * dim + b]`: sparse product of basis elements `a` and `b`.
    table: Vec<Vec<(usize, FqElem)>>,
}

impl FqAlgebra {
    /// Builds the algebra for residues `τ_1, …, τ_n` listed in `Ω` order.
    /// Positions with equal residues form the cosets.
    pub fn new(fq: FqField, taus: Vec<FqElem>) -> Self {
        let n = taus.len();
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        let mut coset_of = vec![0; n];
        for (l, t) in taus.iter().enumerate() {
            match cosets.iter().position(|c| taus[c[0]] == *t) {
                Some(c) => {
                    cosets[c].push(l);
                    coset_of[l] = c;
                }
                None => {
                    coset_of[l] = cosets.len();
                    cosets.push(vec![l]);
                }
            }
        }
        let lin: Vec<Poly<FqField>> = taus.iter().map(|t| fpoly::linear(&fq, t)).collect();
        let prod = |range: std::ops::Range<usize>| {
            range.fold(fpoly::one(&fq), |acc, l| fpoly::mul(&fq, &acc, &lin[l]))
        };
        let big_g: Vec<Poly<FqField>> = (0..n).map(|j| prod(j..n)).collect();
        let small_g: Vec<Vec<Poly<FqField>>> =
            (0..n).map(|i| (0..n).map(|j| prod(j..i.max(j))).collect()).collect();
        let dims: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| n - i.max(j)).collect()).collect();
        let mut offsets = vec![vec![0; n]; n];
        let mut labels = Vec::new();
        for i in 0..n {
            for j in 0..n {
                offsets[i][j] = labels.len();
                labels.extend((0..dims[i][j]).map(|t| (i, j, t)));
            }
        }
        let fbar = prod(0..n);
        let coset_tau: Vec<FqElem> = cosets.iter().map(|c| taus[c[0]].clone()).collect();
        let mults: Vec<usize> = cosets.iter().map(Vec::len).collect();
        let block_idems = block_idempotents(&fq, &coset_tau, &mults);
        let mut alg = FqAlgebra {
            fq,
            n,
            taus,
            cosets,
            coset_of,
            big_g,
            small_g,
            offsets,
            dims,
            labels,
            fbar,
            block_idems,
            table: Vec::new(),
        };
        alg.build_table();
        alg
    }

    fn build_table(&mut self) {
        let dim = self.dim();
        let mut table = vec![Vec::new(); dim * dim];
        let x = vec![self.fq.zero(), self.fq.one()];
        for i in 0..self.n {
            for k in 0..self.n {
                for j in 0..self.n {
                    for t1 in 0..self.dims[i][k] {
                        let a = fpoly::mul(&self.fq, &self.small_g[i][k], &fpoly::pow(&self.fq, &x, t1));
                        for t2 in 0..self.dims[k][j] {
                            let b = fpoly::mul(&self.fq, &self.small_g[k][j], &fpoly::pow(&self.fq, &x, t2));
                            let p = fpoly::mul(&self.fq, &a, &b);
                            let v = self.entry_coords(i, j, &p).expect("product lands in its entry");
                            let ia = self.offsets[i][k] + t1;
                            let ib = self.offsets[k][j] + t2;
                            table[ia * dim + ib] = v
                                .into_iter()
                                .enumerate()
                                .filter(|(_, c)| !self.fq.is_zero(c))
                                .map(|(t, c)| (self.offsets[i][j] + t, c))
                                .collect();
                        }
                    }
                }
            }
        }
        self.table = table;
    }

    pub fn field(&self) -> &FqField {
        &self.fq
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn taus(&self) -> &[FqElem] {
        &self.taus
    }

    /// Positions grouped by residue, ordered by smallest member.
    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn coset_of(&self, l: usize) -> usize {
        self.coset_of[l]
    }

    pub fn label(&self, idx: usize) -> (usize, usize, usize) {
        self.labels[idx]
    }

    pub fn index(&self, i: usize, j: usize, t: usize) -> usize {
        self.offsets[i][j] + t
    }

    pub fn entry_dim(&self, i: usize, j: usize) -> usize {
        self.dims[i][j]
    }

    pub fn big_g(&self, j: usize) -> &Poly<FqField> {
        &self.big_g[j]
    }

    pub fn small_g(&self, i: usize, j: usize) -> &Poly<FqField> {
        &self.small_g[i][j]
    }

    /// `f̄ = ∏ (x - τ_l)`.
    pub fn fbar(&self) -> &Poly<FqField> {
        &self.fbar
    }

    /// CRT idempotent `x̄_c` of `F_Q[x]/(f̄)` for coset `c`.
    pub fn block_idempotent(&self, c: usize) -> &Poly<FqField> {
        &self.block_idems[c]
    }

    /// Coordinates in entry `(i, j)` of a polynomial divisible by `ḡ_ij`
    /// modulo `Ḡ_j`.
    pub fn entry_coords(&self, i: usize, j: usize, p: &Poly<FqField>) -> Option<Vec<FqElem>> {
        let r = fpoly::rem(&self.fq, p, &self.big_g[j]);
        let q = fpoly::div_exact(&self.fq, &r, &self.small_g[i][j])?;
        let mut v = q;
        v.resize(self.dims[i][j], self.fq.zero());
        Some(v)
    }

    /// Element supported on entry `(i, j)` with polynomial `p`.
    pub fn entry_element(&self, i: usize, j: usize, p: &Poly<FqField>) -> Option<Elem> {
        let c = self.entry_coords(i, j, p)?;
        let mut v = self.zero();
        v[self.offsets[i][j]..self.offsets[i][j] + c.len()].clone_from_slice(&c);
        Some(v)
    }

    /// Polynomial of entry `(i, j)` of `u`.
    pub fn entry_poly(&self, u: &Elem, i: usize, j: usize) -> Poly<FqField> {
        let o = self.offsets[i][j];
        let q = fpoly::trim(&self.fq, u[o..o + self.dims[i][j]].to_vec());
        fpoly::mul(&self.fq, &q, &self.small_g[i][j])
    }

    pub fn zero(&self) -> Elem {
        vec![self.fq.zero(); self.dim()]
    }

    pub fn basis_elem(&self, idx: usize) -> Elem {
        let mut v = self.zero();
        v[idx] = self.fq.one();
        v
    }

    /// `e_ii`.
    pub fn e(&self, i: usize) -> Elem {
        self.basis_elem(self.index(i, i, 0))
    }

    pub fn one(&self) -> Elem {
        let mut v = self.zero();
        for i in 0..self.n {
            v[self.index(i, i, 0)] = self.fq.one();
        }
        v
    }

    pub fn is_zero(&self, u: &Elem) -> bool {
        u.iter().all(|c| self.fq.is_zero(c))
    }

    pub fn add(&self, u: &Elem, v: &Elem) -> Elem {
        u.iter().zip(v).map(|(a, b)| self.fq.add(a, b)).collect()
    }

    pub fn sub(&self, u: &Elem, v: &Elem) -> Elem {
        u.iter().zip(v).map(|(a, b)| self.fq.sub(a, b)).collect()
    }

    pub fn scale(&self, u: &Elem, c: &FqElem) -> Elem {
        u.iter().map(|a| self.fq.mul(a, c)).collect()
    }

    pub fn mul(&self, u: &Elem, v: &Elem) -> Elem {
        let dim = self.dim();
        let mut out = self.zero();
        for (a, ua) in u.iter().enumerate() {
            if self.fq.is_zero(ua) {
                continue;
            }
            let (_, k, _) = self.labels[a];
            let lo = self.offsets[k][0];
            let hi = self.offsets[k][self.n - 1] + self.dims[k][self.n - 1];
            for b in lo..hi {
                let vb = &v[b];
                if self.fq.is_zero(vb) {
                    continue;
                }
                let c = self.fq.mul(ua, vb);
                for (idx, s) in &self.table[a * dim + b] {
                    out[*idx] = self.fq.add(&out[*idx], &self.fq.mul(&c, s));
                }
            }
        }
        out
    }

    /// Algebra generators: `e_ii`, the neighbours `(i, i±1, 0)` and `x e_ii`.
    pub fn generators(&self) -> Vec<Elem> {
        let mut g: Vec<Elem> = (0..self.n).map(|i| self.e(i)).collect();
        for i in 0..self.n.saturating_sub(1) {
            g.push(self.basis_elem(self.index(i, i + 1, 0)));
            g.push(self.basis_elem(self.index(i + 1, i, 0)));
        }
        for i in 0..self.n {
            if self.dims[i][i] > 1 {
                g.push(self.basis_elem(self.index(i, i, 1)));
            }
        }
        g
    }

    /// True iff [`Self::generators`] generate the whole algebra.
    pub fn generators_span(&self) -> bool {
        self.right_ideal(&[self.one()]).dim() == self.dim()
    }

    pub fn span(&self, vs: impl IntoIterator<Item = Elem>) -> Space {
        Subspace::from_vectors(&self.fq, self.dim(), vs)
    }

    fn closure(&self, seeds: &[Elem], left: bool, right: bool) -> Space {
        let gens = self.generators();
        let mut s = Subspace::new(self.dim());
        let mut queue: Vec<Elem> = Vec::new();
        for v in seeds {
            if s.insert(&self.fq, v.clone()) {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for g in &gens {
                let mut next = Vec::new();
                if right {
                    next.push(self.mul(&v, g));
                }
                if left {
                    next.push(self.mul(g, &v));
                }
                for w in next {
                    if s.insert(&self.fq, w.clone()) {
                        queue.push(w);
                    }
                }
            }
        }
        s
    }

    /// Right ideal generated by `seeds`.
    pub fn right_ideal(&self, seeds: &[Elem]) -> Space {
        self.closure(seeds, false, true)
    }

    /// Left ideal generated by `seeds`.
    pub fn left_ideal(&self, seeds: &[Elem]) -> Space {
        self.closure(seeds, true, false)
    }

    pub fn two_sided_ideal(&self, seeds: &[Elem]) -> Space {
        self.closure(seeds, true, true)
    }

    pub fn is_left_ideal(&self, s: &Space) -> bool {
        let gens = self.generators();
        s.basis().iter().all(|v| gens.iter().all(|g| s.contains(&self.fq, &self.mul(g, v))))
    }

    pub fn is_right_ideal(&self, s: &Space) -> bool {
        let gens = self.generators();
        s.basis().iter().all(|v| gens.iter().all(|g| s.contains(&self.fq, &self.mul(v, g))))
    }

    /// Span of all products `u v` with `u ∈ a`, `v ∈ b`.
    pub fn product(&self, a: &Space, b: &Space) -> Space {
        let mut s = Subspace::new(self.dim());
        for u in a.basis() {
            for v in b.basis() {
                s.insert(&self.fq, self.mul(u, v));
            }
        }
        s
    }

    /// Associativity on all basis triples and the unit law on all basis
    /// elements.
    pub fn check_axioms(&self) -> bool {
        let dim = self.dim();
        let one = self.one();
        for a in 0..dim {
            let ea = self.basis_elem(a);
            if self.mul(&one, &ea) != ea || self.mul(&ea, &one) != ea {
                return false;
            }
        }
        for a in 0..dim {
            let ea = self.basis_elem(a);
            let (_, k, _) = self.labels[a];
            for b in (0..dim).filter(|&b| self.labels[b].0 == k) {
                let ab = self.mul(&ea, &self.basis_elem(b));
                let (_, l, _) = self.labels[b];
                for c in (0..dim).filter(|&c| self.labels[c].0 == l) {
                    let ec = self.basis_elem(c);
                    let bc = self.mul(&self.basis_elem(b), &ec);
                    if self.mul(&ab, &ec) != self.mul(&ea, &bc) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `e_ii` are orthogonal idempotents summing to 1.
    pub fn check_idempotents(&self) -> bool {
        let mut sum = self.zero();
        for i in 0..self.n {
            for j in 0..self.n {
                let p = self.mul(&self.e(i), &self.e(j));
                let want = if i == j { self.e(i) } else { self.zero() };
                if p != want {
                    return false;
                }
            }
            sum = self.add(&sum, &self.e(i));
        }
        sum == self.one()
    }

    /// `dim u A v`.
    pub fn corner_dim(&self, u: &Elem, v: &Elem) -> usize {
        let vs = (0..self.dim()).map(|b| self.mul(&self.mul(u, &self.basis_elem(b)), v));
        self.span(vs).dim()
    }

    /// Diagonal embedding of `p ∈ F_Q[x]/(f̄)`.
    pub fn diagonal(&self, p: &Poly<FqField>) -> Elem {
        let mut v = self.zero();
        for i in 0..self.n {
            let w = self.entry_element(i, i, p).expect("diagonal entry");
            v = self.add(&v, &w);
        }
        v
    }

    /// `ε_k = e_kk x̄_{c(k)}`, a primitive idempotent.
    pub fn epsilon(&self, k: usize) -> Elem {
        self.entry_element(k, k, &self.block_idems[self.coset_of[k]]).expect("diagonal entry")
    }

    /// Positions `(c_{t-1}, c_t]` belonging to the simple class topped by
    /// `k = c_t` in its coset.
    pub fn class_of(&self, k: usize) -> std::ops::RangeInclusive<usize> {
        let c = &self.cosets[self.coset_of[k]];
        let t = c.iter().position(|&l| l == k).unwrap();
        let lo = if t == 0 { 0 } else { c[t - 1] + 1 };
        lo..=k
    }

    /// The center, as the commutant of the generators.
    pub fn center(&self) -> Space {
        let gens = self.generators();
        let dim = self.dim();
        let rows: Vec<Elem> = (0..dim)
            .map(|b| {
                let eb = self.basis_elem(b);
                gens.iter()
                    .flat_map(|g| self.sub(&self.mul(&eb, g), &self.mul(g, &eb)))
                    .collect()
            })
            .collect();
        let k = linalg::left_kernel(&self.fq, &rows, dim * gens.len());
        self.span(k)
    }
}

/// Result of comparing the center with `F_Q[x]/(f̄)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterReport {
    pub dim: usize,
    pub commutative: bool,
    pub equals_embedding: bool,
}

impl CenterReport {
    pub fn ok(&self, n: usize) -> bool {
        self.dim == n && self.commutative && self.equals_embedding
    }
}

pub fn center_check(a: &FqAlgebra) -> CenterReport {
    let z = a.center();
    let commutative = z
        .basis()
        .iter()
        .all(|u| z.basis().iter().all(|v| a.mul(u, v) == a.mul(v, u)));
    let fq = a.field();
    let emb = a.span((0..a.n()).map(|t| {
        let mut p = vec![fq.zero(); t + 1];
        p[t] = fq.one();
        a.diagonal(&p)
    }));
    CenterReport { dim: z.dim(), commutative, equals_embedding: emb == z }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(p: u64, taus: &[u64]) -> FqAlgebra {
        let fq = FqField::prime(p).unwrap();
        FqAlgebra::new(fq.clone(), taus.iter().map(|&t| fq.from_base(t)).collect())
    }

    #[test]
    fn dimensions() {
        assert_eq!(alg(2, &[0, 0]).dim(), 5);
        assert_eq!(alg(7, &[3, 4]).dim(), 5);
        assert_eq!(alg(5, &[1, 1, 1, 1]).dim(), 30);
    }

    #[test]
    fn axioms_and_generation() {
        for a in [alg(2, &[0, 0]), alg(7, &[3, 4]), alg(5, &[1, 1, 1, 1]), alg(3, &[0, 1, 0, 1])] {
            assert!(a.check_axioms());
            assert!(a.check_idempotents());
            assert!(a.generators_span());
        }
    }

    #[test]
    fn pierce_dimensions() {
        let a = alg(5, &[1, 1, 1, 1]);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(a.corner_dim(&a.e(i), &a.e(j)), 4 - i.max(j));
            }
        }
    }

    #[test]
    fn center_is_residue_ring() {
        for a in [alg(2, &[0, 0]), alg(7, &[3, 4]), alg(5, &[1, 1, 1, 1]), alg(3, &[0, 1, 0, 1])] {
            assert!(center_check(&a).ok(a.n()));
        }
        let trivial = alg(3, &[2]);
        assert_eq!(trivial.dim(), 1);
        assert!(center_check(&trivial).ok(1));
    }

    #[test]
    fn simple_classes() {
        let a = alg(3, &[0, 1, 0, 1]);
        assert_eq!(a.class_of(0), 0..=0);
        assert_eq!(a.class_of(1), 0..=1);
        assert_eq!(a.class_of(2), 1..=2);
        assert_eq!(a.class_of(3), 2..=3);
    }
}
