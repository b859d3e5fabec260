//! Linear algebra over an abstract [`Field`].

use super::field::Field;

/// A subspace of F^n kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.pivots == other.pivots && self.rows == other.rows
    }
}

impl<F: Field> Subspace<F> {
    pub fn new(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<I>(f: &F, ambient: usize, vs: I) -> Self
    where
        I: IntoIterator<Item = Vec<F::Elem>>,
    {
        let mut s = Self::new(ambient);
        for v in vs {
            s.insert(f, v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing all pivot columns.
    pub fn reduce(&self, f: &F, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, f: &F, v: &[F::Elem]) -> bool {
        self.reduce(f, v).iter().all(|x| f.is_zero(x))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, f: &F, v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        let r = self.reduce(f, &v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]).unwrap();
        let r: Vec<F::Elem> = r.iter().map(|x| f.mul(x, &inv)).collect();
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Coordinates of a member with respect to [`Self::basis`].
    pub fn coords(&self, f: &F, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.contains(f, v)
            .then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, f: &F, other: &Self) -> Self {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(f, v.clone());
        }
        s
    }

    pub fn is_subspace_of(&self, f: &F, other: &Self) -> bool {
        self.rows.iter().all(|v| other.contains(f, v))
    }

    pub fn intersect(&self, f: &F, other: &Self) -> Self {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|v| v.iter().map(|x| f.neg(x)).collect()));
        let k = left_kernel(f, &rows, self.ambient);
        let r = self.rows.len();
        Self::from_vectors(
            f,
            self.ambient,
            k.into_iter().map(|c| combine(f, &c[..r], &self.rows, self.ambient)),
        )
    }
}

/// `sum c_i rows_i`.
pub fn combine<F: Field>(f: &F, c: &[F::Elem], rows: &[Vec<F::Elem>], ncols: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); ncols];
    for (ci, row) in c.iter().zip(rows) {
        if f.is_zero(ci) {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            if !f.is_zero(x) {
                *o = f.add(o, &f.mul(ci, x));
            }
        }
    }
    out
}

/// Basis of the left kernel `{c : c * M = 0}`.
pub fn left_kernel<F: Field>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let m = rows.len();
    let mut aug: Vec<Vec<F::Elem>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..m).map(|j| if i == j { f.one() } else { f.zero() }));
            v
        })
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m).find(|&k| !f.is_zero(&aug[k][c])) else {
            continue;
        };
        aug.swap(r, p);
        let inv = f.inv(&aug[r][c]).unwrap();
        for x in aug[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for k in 0..m {
            if k == r || f.is_zero(&aug[k][c]) {
                continue;
            }
            let t = aug[k][c].clone();
            let (a, b) = if k < r {
                let (lo, hi) = aug.split_at_mut(r);
                (&mut lo[k], &hi[0])
            } else {
                let (lo, hi) = aug.split_at_mut(k);
                (&mut hi[0], &lo[r])
            };
            for (x, y) in a.iter_mut().zip(b.iter()) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&t, y));
                }
            }
        }
        r += 1;
    }
    aug.into_iter().skip(r).map(|row| row[ncols..].to_vec()).collect()
}

pub fn rank<F: Field>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> usize {
    Subspace::from_vectors(f, ncols, rows.iter().cloned()).dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::PrimeField;

    #[test]
    fn insert_and_reduce() {
        let f = PrimeField::new(5).unwrap();
        let mut s = Subspace::new(3);
        assert!(s.insert(&f, vec![1, 2, 3]));
        assert!(!s.insert(&f, vec![2, 4, 1]));
        assert!(s.insert(&f, vec![0, 1, 1]));
        assert!(!s.insert(&f, vec![1, 3, 4]));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&f, &[0, 0, 0]));
        let c = s.coords(&f, &[1, 2, 3]).unwrap();
        assert_eq!(combine(&f, &c, s.basis(), 3), vec![1, 2, 3]);
    }

    #[test]
    fn kernel_over_f3() {
        let f = PrimeField::new(3).unwrap();
        let m = vec![vec![1, 1], vec![2, 2], vec![0, 1]];
        let k = left_kernel(&f, &m, 2);
        assert_eq!(k.len(), 1);
        assert_eq!(combine(&f, &k[0], &m, 2), vec![0, 0]);
    }

    #[test]
    fn intersection_dimension() {
        let f = PrimeField::new(7).unwrap();
        let a = Subspace::from_vectors(&f, 3, [vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::from_vectors(&f, 3, [vec![0, 1, 0], vec![0, 0, 1]]);
        let c = a.intersect(&f, &b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&f, &[0, 3, 0]));
    }
}
