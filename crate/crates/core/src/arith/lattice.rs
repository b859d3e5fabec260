use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// The result is upper echelon, pivots are positive and entries above each
/// pivot lie in `[0, pivot)`. Zero rows are dropped.
pub fn hnf<T: Integer + Signed + Clone>(mut rows: Vec<Vec<T>>, ncols: usize) -> Vec<Vec<T>> {
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let mut have_pivot = false;
        loop {
            let piv = (r..rows.len())
                .filter(|&k| !rows[k][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(piv) = piv else { break };
            have_pivot = true;
            rows.swap(r, piv);
            let mut clean = true;
            for k in r + 1..rows.len() {
                if rows[k][c].is_zero() {
                    continue;
                }
                let q = rows[k][c].div_floor(&rows[r][c]);
                sub_scaled(&mut rows, k, r, &q, c);
                if !rows[k][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !have_pivot {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for k in 0..r {
            if rows[k][c].is_zero() {
                continue;
            }
            let q = rows[k][c].div_floor(&rows[r][c]);
            sub_scaled(&mut rows, k, r, &q, c);
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn sub_scaled<T: Integer + Signed + Clone>(rows: &mut [Vec<T>], k: usize, r: usize, q: &T, from: usize) {
    if q.is_zero() {
        return;
    }
    let (src, dst) = if k < r {
        let (a, b) = rows.split_at_mut(r);
        (&b[0], &mut a[k])
    } else {
        let (a, b) = rows.split_at_mut(k);
        (&a[r], &mut b[0])
    };
    for j in from..src.len() {
        if !src[j].is_zero() {
            dst[j] = dst[j].clone() - q.clone() * src[j].clone();
        }
    }
}

/// Basis of the integer left kernel `{c : c * M = 0}` of the matrix whose
/// rows are `rows`.
pub fn left_kernel<T: Integer + Signed + Clone>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let m = rows.len();
    let aug: Vec<Vec<T>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..m).map(|j| if i == j { T::one() } else { T::zero() }));
            v
        })
        .collect();
    hnf(aug, ncols + m)
        .into_iter()
        .filter(|r| r[..ncols].iter().all(|c| c.is_zero()))
        .map(|r| r[ncols..].to_vec())
        .collect()
}

/// `v * M` for a row vector `v` and a matrix given by its rows.
pub fn apply<T: Integer + Signed + Clone>(v: &[T], m: &[Vec<T>], ncols: usize) -> Vec<T> {
    let mut out = vec![T::zero(); ncols];
    for (vi, row) in v.iter().zip(m) {
        if vi.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            if !x.is_zero() {
                *o = o.clone() + vi.clone() * x.clone();
            }
        }
    }
    out
}

/// A finitely generated subgroup of Z^ambient, stored by its HNF basis.
///
/// Two lattices are equal exactly when their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntLattice<T = BigInt> {
    ambient: usize,
    basis: Vec<Vec<T>>,
}

impl<T: Integer + Signed + Clone> IntLattice<T> {
    pub fn new(ambient: usize, gens: Vec<Vec<T>>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, got: g.len() });
        }
        Ok(IntLattice { ambient, basis: hnf(gens, ambient) })
    }

    pub fn zero(ambient: usize) -> Self {
        IntLattice { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect();
        IntLattice { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical HNF; the stored basis already is one.
    pub fn hnf(&self) -> Self {
        self.clone()
    }

    /// Coordinates of `v` in the HNF basis, or `None` if `v` is not a member.
    pub fn coords(&self, v: &[T]) -> Result<Option<Vec<T>>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: v.len() });
        }
        let mut rest = v.to_vec();
        let mut out = Vec::with_capacity(self.basis.len());
        let mut col = 0;
        for row in &self.basis {
            let piv = row.iter().position(|c| !c.is_zero()).unwrap();
            if rest[col..piv].iter().any(|c| !c.is_zero()) {
                return Ok(None);
            }
            let (q, r) = rest[piv].div_rem(&row[piv]);
            if !r.is_zero() {
                return Ok(None);
            }
            if !q.is_zero() {
                for j in piv..self.ambient {
                    rest[j] = rest[j].clone() - q.clone() * row[j].clone();
                }
            }
            out.push(q);
            col = piv + 1;
        }
        Ok(rest.iter().all(|c| c.is_zero()).then_some(out))
    }

    pub fn contains(&self, v: &[T]) -> Result<bool> {
        Ok(self.coords(v)?.is_some())
    }

    /// True iff every basis vector of `self` lies in `other`.
    pub fn is_sublattice_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.basis.iter().all(|b| other.contains(b).unwrap_or(false))
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        IntLattice { ambient: self.ambient, basis: hnf(gens, self.ambient) }
    }

    /// Image under the linear map `v -> v * M` into Z^ncols.
    pub fn image(&self, m: &[Vec<T>], ncols: usize) -> Self {
        let gens = self.basis.iter().map(|b| apply(b, m, ncols)).collect();
        IntLattice { ambient: ncols, basis: hnf(gens, ncols) }
    }

    /// `{v in self : v * M in target}`.
    pub fn preimage(&self, m: &[Vec<T>], target: &Self) -> Self {
        let nc = target.ambient;
        let mut rows: Vec<Vec<T>> = self.basis.iter().map(|b| apply(b, m, nc)).collect();
        rows.extend(target.basis.iter().map(|c| c.iter().map(|x| -x.clone()).collect()));
        let r = self.basis.len();
        let gens = left_kernel(&rows, nc)
            .into_iter()
            .map(|k| apply(&k[..r], &self.basis, self.ambient))
            .collect();
        IntLattice { ambient: self.ambient, basis: hnf(gens, self.ambient) }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let id = IntLattice::<T>::full(self.ambient).basis;
        self.preimage(&id, other)
    }

    /// `{v in Z^ambient : k v in self for some k > 0}`.
    pub fn saturation(&self) -> Self {
        let a = self.ambient;
        if self.basis.is_empty() {
            return Self::zero(a);
        }
        let transposed: Vec<Vec<T>> = (0..a)
            .map(|j| self.basis.iter().map(|r| r[j].clone()).collect())
            .collect();
        let perp = left_kernel(&transposed, self.basis.len());
        if perp.is_empty() {
            return Self::full(a);
        }
        let cols: Vec<Vec<T>> = (0..a)
            .map(|i| perp.iter().map(|w| w[i].clone()).collect())
            .collect();
        IntLattice { ambient: a, basis: hnf(left_kernel(&cols, perp.len()), a) }
    }

    /// True iff `self / sub` has no torsion, for `sub` contained in `self`.
    pub fn quotient_is_torsion_free(&self, sub: &Self) -> bool {
        self.intersect(&sub.saturation()) == *sub
    }
}

/// Free-function form of HNF on a lattice value.
pub fn lattice_hnf<T: Integer + Signed + Clone>(l: &IntLattice<T>) -> IntLattice<T> {
    l.hnf()
}

/// Free-function form of membership.
pub fn lattice_member<T: Integer + Signed + Clone>(l: &IntLattice<T>, v: &[T]) -> Result<bool> {
    l.contains(v)
}
