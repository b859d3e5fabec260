//! Bimodule subquotients `L/K` of free modules `T^r`, their canonical
//! filtrations and sheaf exactness of short sequences.

use crate::arith::lattice::{apply, IntLattice};
use crate::error::{Error, Result};
use crate::Int;

use super::{TensorElement, TensorSquare};

/// The module `L/K` with `K ⊆ L ⊆ T^rank`, both bimodule lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeModule {
    rank: usize,
    sub: IntLattice,
    kernel: IntLattice,
}

/// Block diagonal matrix of multiplication by `t` on `T^rank`.
pub fn diag_mul(ts: &TensorSquare, t: &TensorElement, rank: usize) -> Vec<Vec<Int>> {
    block_diag(&ts.mul_matrix(t), rank)
}

fn block_diag(m: &[Vec<Int>], rank: usize) -> Vec<Vec<Int>> {
    let d = m.len();
    let mut out = vec![vec![Int::from(0); d * rank]; d * rank];
    for b in 0..rank {
        for i in 0..d {
            out[b * d + i][b * d..(b + 1) * d].clone_from_slice(&m[i]);
        }
    }
    out
}

fn closed_under(lat: &IntLattice, m: &[Vec<Int>]) -> bool {
    lat.image(m, lat.ambient()).is_sublattice_of(lat)
}

impl LatticeModule {
    /// Checks `K ⊆ L` and that both are stable under `x` and `1⊗θ`.
    pub fn new(ts: &TensorSquare, rank: usize, sub: IntLattice, kernel: IntLattice) -> Result<Self> {
        let amb = rank * ts.dim();
        for l in [&sub, &kernel] {
            if l.ambient() != amb {
                return Err(Error::DimensionMismatch { expected: amb, got: l.ambient() });
            }
        }
        if !kernel.is_sublattice_of(&sub) {
            return Err(Error::NotInCategory { layer: 0, reason: "relations not contained in generators".into() });
        }
        let gx = diag_mul(ts, &ts.x(), rank);
        let gt = diag_mul(ts, &ts.right(&ts.ring().theta()), rank);
        for (l, what) in [(&sub, "generators"), (&kernel, "relations")] {
            if !closed_under(l, &gx) || !closed_under(l, &gt) {
                return Err(Error::NotInCategory { layer: 0, reason: format!("{what} not a bimodule lattice") });
            }
        }
        Ok(LatticeModule { rank, sub, kernel })
    }

    pub fn free(ts: &TensorSquare, rank: usize) -> Self {
        let amb = rank * ts.dim();
        LatticeModule { rank, sub: IntLattice::full(amb), kernel: IntLattice::zero(amb) }
    }

    /// The ideal `gT` as a submodule of `T`.
    pub fn ideal(ts: &TensorSquare, g: &TensorElement) -> Self {
        LatticeModule { rank: 1, sub: ts.ideal_lattice(g), kernel: IntLattice::zero(ts.dim()) }
    }

    /// `T / gT`.
    pub fn cyclic_quotient(ts: &TensorSquare, g: &TensorElement) -> Self {
        LatticeModule { rank: 1, sub: IntLattice::full(ts.dim()), kernel: ts.ideal_lattice(g) }
    }

    /// `⊕_k T / ker φ_{Ω(k)}`, which is `⊕_k S` with `T` acting through `φ_k`.
    pub fn phi_sum(ts: &TensorSquare) -> Self {
        let n = ts.degree();
        let d = ts.dim();
        let gens = ts
            .omega()
            .iter()
            .enumerate()
            .flat_map(|(b, &k)| {
                ts.kernel_lattice(&[k]).basis().iter().map(|row| {
                    let mut v = vec![Int::from(0); n * d];
                    v[b * d..(b + 1) * d].clone_from_slice(row);
                    v
                }).collect::<Vec<_>>()
            })
            .collect();
        LatticeModule {
            rank: n,
            sub: IntLattice::full(n * d),
            kernel: IntLattice::new(n * d, gens).expect("coordinate count"),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let a = self.ambient();
        let b = other.ambient();
        let embed = |l: &IntLattice, off: usize| -> Vec<Vec<Int>> {
            l.basis()
                .iter()
                .map(|r| {
                    let mut v = vec![Int::from(0); a + b];
                    v[off..off + r.len()].clone_from_slice(r);
                    v
                })
                .collect()
        };
        let mut s = embed(&self.sub, 0);
        s.extend(embed(&other.sub, a));
        let mut k = embed(&self.kernel, 0);
        k.extend(embed(&other.kernel, a));
        LatticeModule {
            rank: self.rank + other.rank,
            sub: IntLattice::new(a + b, s).unwrap(),
            kernel: IntLattice::new(a + b, k).unwrap(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient(&self) -> usize {
        self.sub.ambient()
    }

    pub fn sub(&self) -> &IntLattice {
        &self.sub
    }

    pub fn kernel(&self) -> &IntLattice {
        &self.kernel
    }

    /// Z-rank of `L/K`.
    pub fn z_rank(&self) -> usize {
        self.sub.rank() - self.kernel.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.sub == self.kernel
    }
}

/// A module with its layers `M^{g_0} = L ⊇ M^{g_1} ⊇ … ⊇ M^{g_n} = K`.
#[derive(Clone, Debug)]
pub struct FilteredLattice {
    module: LatticeModule,
    layers: Vec<IntLattice>,
}

impl FilteredLattice {
    pub fn module(&self) -> &LatticeModule {
        &self.module
    }

    /// `layers[i]` represents `M^{g_i}` as a lattice containing `K`.
    pub fn layers(&self) -> &[IntLattice] {
        &self.layers
    }

    /// Z-ranks of the layers modulo `K`.
    pub fn layer_ranks(&self) -> Vec<usize> {
        let k = self.module.kernel.rank();
        self.layers.iter().map(|l| l.rank() - k).collect()
    }
}

/// `M^{g_i} = {m ∈ L : Ψ_j m ∈ K for j ≤ i}`, where `Ψ_j` kills every
/// component except `Ω(j)`. Verifies that each successive quotient is
/// Z-torsion-free with `A_i` acting as zero on it.
pub fn filtration(ts: &TensorSquare, m: &LatticeModule) -> Result<FilteredLattice> {
    let n = ts.degree();
    let mut layers = vec![m.sub.clone()];
    for i in 1..=n {
        let psi = diag_mul(ts, &ts.psi(i), m.rank);
        let next = layers[i - 1].preimage(&psi, &m.kernel);
        let prev = &layers[i - 1];
        if !prev.quotient_is_torsion_free(&next) {
            return Err(Error::NotInCategory { layer: i, reason: "layer quotient has Z-torsion".into() });
        }
        let a = diag_mul(ts, &ts.a_element(i), m.rank);
        if !prev.image(&a, m.ambient()).is_sublattice_of(&next) {
            return Err(Error::NotInCategory { layer: i, reason: "twisted action fails on layer quotient".into() });
        }
        layers.push(next);
    }
    if layers[n] != m.kernel {
        return Err(Error::NotInCategory { layer: n, reason: "last layer is not zero".into() });
    }
    Ok(FilteredLattice { module: m.clone(), layers })
}

/// A map `T^r -> T^s` on representatives, one row per source coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    matrix: Vec<Vec<Int>>,
    cols: usize,
}

impl ModuleMap {
    pub fn new(matrix: Vec<Vec<Int>>, cols: usize) -> Self {
        ModuleMap { matrix, cols }
    }

    pub fn identity(dim: usize) -> Self {
        ModuleMap { matrix: IntLattice::full(dim).basis().to_vec(), cols: dim }
    }

    /// Map `T^r -> T^s` given by an `r × s` matrix of elements of `T`,
    /// acting by `(m_i) ↦ (Σ_i m_i t_{ij})_j`.
    pub fn from_tensor_matrix(ts: &TensorSquare, m: &[Vec<TensorElement>]) -> Self {
        let d = ts.dim();
        let r = m.len();
        let s = m.first().map_or(0, Vec::len);
        let mut matrix = vec![vec![Int::from(0); s * d]; r * d];
        for (i, row) in m.iter().enumerate() {
            for (j, t) in row.iter().enumerate() {
                let mm = ts.mul_matrix(t);
                for a in 0..d {
                    matrix[i * d + a][j * d..(j + 1) * d].clone_from_slice(&mm[a]);
                }
            }
        }
        ModuleMap { matrix, cols: s * d }
    }

    pub fn matrix(&self) -> &[Vec<Int>] {
        &self.matrix
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        apply(v, &self.matrix, self.cols)
    }

    pub fn image(&self, l: &IntLattice) -> IntLattice {
        l.image(&self.matrix, self.cols)
    }
}

/// Checks that `f` is a well-defined bimodule map `src -> tgt`.
pub fn check_map(ts: &TensorSquare, src: &LatticeModule, tgt: &LatticeModule, f: &ModuleMap) -> Result<()> {
    if f.matrix.len() != src.ambient() || f.cols != tgt.ambient() {
        return Err(Error::DimensionMismatch { expected: src.ambient(), got: f.matrix.len() });
    }
    if !f.image(&src.sub).is_sublattice_of(&tgt.sub) {
        return Err(Error::NotBimoduleMap("image leaves the target".into()));
    }
    if !f.image(&src.kernel).is_sublattice_of(&tgt.kernel) {
        return Err(Error::NotBimoduleMap("relations not respected".into()));
    }
    let acts = [ts.x(), ts.right(&ts.ring().theta())];
    for t in &acts {
        let ms = diag_mul(ts, t, src.rank);
        let mt = diag_mul(ts, t, tgt.rank);
        for b in src.sub.basis() {
            let lhs = f.apply(&apply(b, &ms, src.ambient()));
            let rhs = apply(&f.apply(b), &mt, tgt.ambient());
            let diff: Vec<Int> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            if !tgt.kernel.contains(&diff)? {
                return Err(Error::NotBimoduleMap("does not commute with the action".into()));
            }
        }
    }
    Ok(())
}

/// Exactness of `0 -> A' -> B' -> C' -> 0` for sub-lattices
/// `A' ⊆ L_A`, `B' ⊆ L_B`, `C' ⊆ L_C` taken modulo the relations of `mods`.
fn exact_on(
    [a, b, c]: [&IntLattice; 3],
    mods: [&LatticeModule; 3],
    f: &ModuleMap,
    g: &ModuleMap,
) -> std::result::Result<(), String> {
    let [ka, kb, kc] = mods.map(|m| &m.kernel);
    if a.preimage(&f.matrix, kb) != *ka {
        return Err("first map not injective".into());
    }
    if !f.image(a).is_sublattice_of(b) {
        return Err("first map leaves the layer".into());
    }
    let ker_g = b.preimage(&g.matrix, kc);
    if f.image(a).sum(kb) != ker_g {
        return Err("image differs from kernel".into());
    }
    if g.image(b).sum(kc) != *c {
        return Err("second map not surjective".into());
    }
    Ok(())
}

/// Plain exactness of `0 -> A -> B -> C -> 0`.
pub fn is_exact(a: &LatticeModule, b: &LatticeModule, c: &LatticeModule, f: &ModuleMap, g: &ModuleMap) -> bool {
    exact_on([&a.sub, &b.sub, &c.sub], [a, b, c], f, g).is_ok()
}

/// Per-layer exactness of a short exact sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafVerdict {
    /// `layers[i - 1]` is exactness on `M^{g_i}`.
    pub layers: Vec<bool>,
    pub first_failure: Option<usize>,
}

impl SheafVerdict {
    pub fn is_sheaf_exact(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Decides exactness of `0 -> A^{g_i} -> B^{g_i} -> C^{g_i} -> 0` for every
/// `i`, after checking both maps and plain exactness.
pub fn check_sheaf_exact(
    ts: &TensorSquare,
    a: &LatticeModule,
    b: &LatticeModule,
    c: &LatticeModule,
    f: &ModuleMap,
    g: &ModuleMap,
) -> Result<SheafVerdict> {
    check_map(ts, a, b, f)?;
    check_map(ts, b, c, g)?;
    if let Err(why) = exact_on([&a.sub, &b.sub, &c.sub], [a, b, c], f, g) {
        return Err(Error::NotExact(why));
    }
    let (fa, fb, fc) = (filtration(ts, a)?, filtration(ts, b)?, filtration(ts, c)?);
    let layers: Vec<bool> = (1..=ts.degree())
        .map(|i| {
            exact_on([&fa.layers[i], &fb.layers[i], &fc.layers[i]], [a, b, c], f, g).is_ok()
        })
        .collect();
    let first_failure = layers.iter().position(|ok| !ok).map(|i| i + 1);
    Ok(SheafVerdict { layers, first_failure })
}
