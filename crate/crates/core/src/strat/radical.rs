//! Jacobson radical of `𝒜_Q` with a certificate, semisimplicity, the
//! nilpotent column witness and the comparison of coset blocks.

use crate::arith::field::{Field, FqField};
use crate::arith::fpoly::{self, Poly};
use crate::error::{Error, Result};

use super::algebra::{Elem, FqAlgebra, Space};

/// One simple class: positions `(c_{t-1}, c_t]` of coset `coset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleClass {
    pub coset: usize,
    pub top: usize,
    pub positions: Vec<usize>,
}

/// The radical together with the data that certifies it.
#[derive(Clone, Debug)]
pub struct Radical {
    pub space: Space,
    /// Smallest `k` with `J^k = 0`.
    pub nilpotency_index: usize,
    pub classes: Vec<SimpleClass>,
}

impl Radical {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Simple classes of the algebra, one per position, ordered by top.
pub fn simple_classes(a: &FqAlgebra) -> Vec<SimpleClass> {
    (0..a.n())
        .map(|k| SimpleClass { coset: a.coset_of(k), top: k, positions: a.class_of(k).collect() })
        .collect()
}

/// Cosets that link `i` and `j`: a member at or after `max(i, j)` and none in
/// `[min(i, j), max(i, j))`.
fn linking_cosets(a: &FqAlgebra, i: usize, j: usize) -> Vec<usize> {
    let (lo, hi) = (i.min(j), i.max(j));
    (0..a.cosets().len())
        .filter(|&c| {
            let m = &a.cosets()[c];
            m.iter().any(|&l| l >= hi) && !m.iter().any(|&l| lo <= l && l < hi)
        })
        .collect()
}

fn linear(a: &FqAlgebra, c: usize) -> Poly<FqField> {
    fpoly::linear(a.field(), &a.taus()[a.cosets()[c][0]])
}

/// Generator `ḡ_ij r_ij` of the radical in entry `(i, j)`.
fn radical_generator(a: &FqAlgebra, i: usize, j: usize) -> Poly<FqField> {
    let fq = a.field();
    linking_cosets(a, i, j)
        .into_iter()
        .fold(a.small_g(i, j).clone(), |acc, c| fpoly::mul(fq, &acc, &linear(a, c)))
}

/// Matrix units `E_ij` of one class: `ḡ_ij ḡ_ij(τ_c)^{-1} x̄_c` in entry `(i, j)`.
fn matrix_unit(a: &FqAlgebra, class: &SimpleClass, i: usize, j: usize) -> Elem {
    let fq = a.field();
    let g = a.small_g(i, j);
    let tau = &a.taus()[a.cosets()[class.coset][0]];
    let inv = fq.inv(&fpoly::eval(fq, g, tau)).expect("class positions avoid the coset");
    let p = fpoly::mul(fq, &fpoly::scale(fq, g, &inv), a.block_idempotent(class.coset));
    a.entry_element(i, j, &p).expect("divisible by the entry generator")
}

fn fail(msg: &str) -> Error {
    Error::Certificate(format!("radical candidate invalid: {msg}"))
}

/// Computes the radical and certifies it: it is a two-sided ideal, it is
/// nilpotent, and the quotient carries a full set of matrix units whose
/// count matches its dimension, so the quotient is semisimple.
pub fn radical(a: &FqAlgebra) -> Result<Radical> {
    let fq = a.field();
    let n = a.n();
    let x = vec![fq.zero(), fq.one()];
    let mut explicit = Vec::new();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let g = radical_generator(a, i, j);
            let mut p = g.clone();
            for _ in 0..a.entry_dim(i, j) {
                explicit.push(a.entry_element(i, j, &p).expect("in entry"));
                p = fpoly::mul(fq, &p, &x);
            }
            let e = a.entry_element(i, j, &g).expect("in entry");
            if !a.is_zero(&e) {
                gens.push(e);
            }
        }
    }
    let space = a.span(explicit);
    if a.right_ideal(&gens) != space {
        return Err(fail("entry generators do not generate it as a right ideal"));
    }
    if !a.is_left_ideal(&space) {
        return Err(fail("not a left ideal"));
    }

    let mut power = space.clone();
    let mut nilpotency_index = 1;
    while !power.is_zero() {
        let prods: Vec<Elem> = power
            .basis()
            .iter()
            .flat_map(|u| gens.iter().map(move |g| (u, g)))
            .map(|(u, g)| a.mul(u, g))
            .collect();
        let next = a.right_ideal(&prods);
        if next == power {
            return Err(fail("not nilpotent"));
        }
        power = next;
        nilpotency_index += 1;
    }

    let classes = simple_classes(a);
    let units: Vec<(usize, usize, usize, Elem)> = classes
        .iter()
        .enumerate()
        .flat_map(|(b, cl)| {
            cl.positions
                .iter()
                .flat_map(move |&i| cl.positions.iter().map(move |&j| (b, i, j)))
        })
        .map(|(b, i, j)| (b, i, j, matrix_unit(a, &classes[b], i, j)))
        .collect();
    let mut diag_sum = a.zero();
    for (b, i, j, u) in &units {
        if i == j {
            if space.contains(fq, u) {
                return Err(fail("a diagonal matrix unit lies in it"));
            }
            diag_sum = a.add(&diag_sum, u);
        }
        for (b2, k, l, v) in &units {
            let prod = a.mul(u, v);
            let want = if b == b2 && j == k {
                units.iter().find(|(b3, r, s, _)| b3 == b && r == i && s == l).unwrap().3.clone()
            } else {
                a.zero()
            };
            if !space.contains(fq, &a.sub(&prod, &want)) {
                return Err(fail("matrix unit relations fail modulo it"));
            }
        }
    }
    if !space.contains(fq, &a.sub(&diag_sum, &a.one())) {
        return Err(fail("matrix units do not sum to one modulo it"));
    }
    if units.len() + space.dim() != a.dim() {
        return Err(fail("quotient dimension differs from the matrix-unit count"));
    }
    Ok(Radical { space, nilpotency_index, classes })
}

pub fn is_semisimple(a: &FqAlgebra) -> Result<bool> {
    Ok(radical(a)?.dim() == 0)
}

/// The left ideal spanned by `ḡ_k1 (x - τ_c) x̄_c x^t` in column 1, where
/// `c` is the coset of the first position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnWitness {
    pub dim: usize,
    pub coset_size: usize,
    pub is_left_ideal: bool,
    pub is_right_ideal: bool,
    pub inside_radical: bool,
    /// `𝓑^{|E|} = 0`.
    pub vanishes_at_coset_size: bool,
}

impl ColumnWitness {
    pub fn ok(&self) -> bool {
        self.is_left_ideal
            && self.inside_radical
            && self.vanishes_at_coset_size
            && (self.dim > 0) == (self.coset_size > 1)
    }
}

pub fn column_witness(a: &FqAlgebra, rad: &Radical) -> ColumnWitness {
    let fq = a.field();
    let c = a.coset_of(0);
    let base = fpoly::mul(fq, &linear(a, c), a.block_idempotent(c));
    let x = vec![fq.zero(), fq.one()];
    let mut vs = Vec::new();
    for k in 0..a.n() {
        let mut p = fpoly::mul(fq, a.small_g(k, 0), &base);
        for _ in 0..a.entry_dim(k, 0) {
            vs.push(a.entry_element(k, 0, &p).expect("in entry"));
            p = fpoly::mul(fq, &p, &x);
        }
    }
    let b = a.span(vs);
    let coset_size = a.cosets()[c].len();
    let mut power = b.clone();
    for _ in 1..coset_size {
        power = a.product(&power, &b);
    }
    ColumnWitness {
        dim: b.dim(),
        coset_size,
        is_left_ideal: a.is_left_ideal(&b),
        is_right_ideal: a.is_right_ideal(&b),
        inside_radical: b.is_subspace_of(fq, &rad.space),
        vanishes_at_coset_size: power.is_zero(),
    }
}

/// Dimension and Cartan matrix of the basic corner `ε_c A ε_c` of a coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerData {
    pub coset: Vec<usize>,
    pub dim: usize,
    pub cartan: Vec<Vec<usize>>,
    pub block_dim: usize,
}

pub fn corner_data(a: &FqAlgebra) -> Vec<CornerData> {
    a.cosets()
        .iter()
        .enumerate()
        .map(|(c, members)| {
            let eps: Vec<Elem> = members.iter().map(|&k| a.epsilon(k)).collect();
            let total = eps.iter().fold(a.zero(), |acc, e| a.add(&acc, e));
            let cartan = eps
                .iter()
                .map(|u| eps.iter().map(|v| a.corner_dim(v, u)).collect())
                .collect();
            let xc = a.diagonal(a.block_idempotent(c));
            let block = a.span((0..a.dim()).map(|b| a.mul(&a.basis_elem(b), &xc)));
            CornerData { coset: members.clone(), dim: a.corner_dim(&total, &total), cartan, block_dim: block.dim() }
        })
        .collect()
}

/// True iff all coset corners have the same dimension and Cartan matrix.
pub fn corners_agree(data: &[CornerData]) -> bool {
    data.windows(2).all(|w| w[0].dim == w[1].dim && w[0].cartan == w[1].cartan)
}
