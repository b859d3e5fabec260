//! The ring `S = Z[θ] = Z[x]/(f)` of a monic Galois polynomial together with
//! its automorphism group, given by the images `σ_i(θ)`.

use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::field::Rationals;
use crate::arith::lattice::left_kernel;
use crate::arith::linalg;
use crate::arith::{is_irreducible_over_q, IntLattice, IntPoly};
use crate::error::{Error, Result};
use crate::Int;

/// Element `Σ c_a θ^a` of `S`, with exactly `n` coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingElement {
    coords: Vec<Int>,
}

impl RingElement {
    pub fn from_coords(coords: Vec<Int>) -> Self {
        RingElement { coords }
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// True iff the element is an integer constant.
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }
}

/// The order `Z[θ]` with `θ` a root of the monic polynomial `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberRing {
    f: IntPoly,
    n: usize,
    /// `θ^k` reduced, for `k < 2n - 1`.
    powers: Vec<Vec<Int>>,
}

impl NumberRing {
    pub fn new(f: IntPoly) -> Result<Self> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = f.degree().unwrap();
        if n == 0 {
            return Err(Error::InvalidField("degree must be positive".into()));
        }
        let mut powers = Vec::with_capacity(2 * n);
        let mut cur = vec![Int::zero(); n];
        cur[0] = Int::one();
        for _ in 0..2 * n - 1 {
            powers.push(cur.clone());
            // multiply by θ: shift, then reduce θ^n = -Σ f_a θ^a
            let top = cur[n - 1].clone();
            for a in (1..n).rev() {
                cur[a] = cur[a - 1].clone();
            }
            cur[0] = Int::zero();
            if !top.is_zero() {
                for a in 0..n {
                    cur[a] -= &top * f.coeff(a);
                }
            }
        }
        Ok(NumberRing { f, n, powers })
    }

    pub fn f(&self) -> &IntPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> RingElement {
        RingElement { coords: vec![Int::zero(); self.n] }
    }

    pub fn one(&self) -> RingElement {
        self.from_int(Int::one())
    }

    pub fn from_int(&self, c: Int) -> RingElement {
        let mut coords = vec![Int::zero(); self.n];
        coords[0] = c;
        RingElement { coords }
    }

    pub fn theta(&self) -> RingElement {
        self.from_poly(&IntPoly::x())
    }

    /// `θ^a` as an element.
    pub fn basis(&self, a: usize) -> RingElement {
        RingElement { coords: self.powers[a].clone() }
    }

    /// Reduces an arbitrary polynomial in `θ` modulo `f`.
    pub fn from_poly(&self, p: &IntPoly) -> RingElement {
        let r = p.rem_monic(&self.f);
        let mut coords = vec![Int::zero(); self.n];
        for (a, c) in r.coeffs().iter().enumerate() {
            coords[a] = c.clone();
        }
        RingElement { coords }
    }

    /// Element from at most `n` coordinates, zero padded.
    pub fn element(&self, coords: &[Int]) -> Result<RingElement> {
        if coords.len() > self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: coords.len() });
        }
        let mut c = coords.to_vec();
        c.resize(self.n, Int::zero());
        Ok(RingElement { coords: c })
    }

    pub fn element_i64(&self, coords: &[i64]) -> RingElement {
        let c: Vec<Int> = coords.iter().map(|&x| Int::from(x)).collect();
        self.element(&c).expect("coordinate count")
    }

    pub fn to_poly(&self, a: &RingElement) -> IntPoly {
        IntPoly::new(a.coords.clone())
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect() }
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        RingElement { coords: a.coords.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, a: &RingElement, c: &Int) -> RingElement {
        RingElement { coords: a.coords.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let n = self.n;
        let mut raw = vec![Int::zero(); 2 * n - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        let mut coords = raw[..n].to_vec();
        for (k, c) in raw.iter().enumerate().skip(n) {
            if c.is_zero() {
                continue;
            }
            for (o, p) in coords.iter_mut().zip(&self.powers[k]) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        RingElement { coords }
    }

    pub fn pow(&self, a: &RingElement, e: usize) -> RingElement {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Evaluates the integer polynomial `p` at `a`.
    pub fn eval(&self, p: &IntPoly, a: &RingElement) -> RingElement {
        p.coeffs()
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, a), &self.from_int(c.clone())))
    }

    /// Integer matrix of multiplication by `a`: row `j` holds `a θ^j`.
    pub fn mul_matrix(&self, a: &RingElement) -> Vec<Vec<Int>> {
        (0..self.n).map(|j| self.mul(a, &self.basis(j)).coords).collect()
    }

    /// `a / d` if the quotient lies in `S`.
    pub fn div_exact(&self, a: &RingElement, d: &RingElement) -> Option<RingElement> {
        if d.is_zero() {
            return None;
        }
        let q = Rationals;
        let m: Vec<Vec<BigRational>> = self
            .mul_matrix(d)
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::from_integer).collect())
            .collect();
        let mut rows = m.clone();
        rows.push(a.coords.iter().map(|c| -BigRational::from_integer(c.clone())).collect());
        let k = linalg::left_kernel(&q, &rows, self.n);
        let v = k.into_iter().find(|v| !v[self.n].is_zero())?;
        let scale = v[self.n].clone();
        let mut coords = Vec::with_capacity(self.n);
        for c in &v[..self.n] {
            let x = c / &scale;
            if !x.is_integer() {
                return None;
            }
            coords.push(x.to_integer());
        }
        Some(RingElement { coords })
    }

    /// Absolute norm, as the determinant of the multiplication matrix.
    pub fn norm(&self, a: &RingElement) -> Int {
        det_int(&self.mul_matrix(a))
    }
}

/// Integer determinant by fraction-free elimination.
pub fn det_int(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Int::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        Int::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

/// Automorphism group of `S`, acting by `θ ↦ images[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisGroup {
    images: Vec<RingElement>,
    /// `image_powers[i][a] = σ_i(θ)^a`.
    image_powers: Vec<Vec<RingElement>>,
    /// `table[i][j]` is the index of `σ_i ∘ σ_j`.
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl GaloisGroup {
    pub fn order(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> &RingElement {
        &self.images[i]
    }

    pub fn images(&self) -> &[RingElement] {
        &self.images
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Index of `σ_i ∘ σ_j`.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// True iff `h` is closed under composition and contains the identity.
    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let n = self.order();
        !h.is_empty()
            && h.iter().all(|&i| i < n)
            && h.contains(&self.identity)
            && h.iter().all(|&a| h.iter().all(|&b| h.contains(&self.table[a][b])))
    }
}

/// A validated number ring with its Galois group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisRing {
    ring: NumberRing,
    group: GaloisGroup,
}

/// Validates `f` and the images `σ_i(θ)` and computes the composition table.
///
/// The first image must be `θ` itself.
pub fn build_field(f: IntPoly, sigma_images: &[Vec<Int>]) -> Result<GaloisRing> {
    let ring = NumberRing::new(f)?;
    let n = ring.degree();
    if sigma_images.len() != n {
        return Err(Error::InvalidField(format!(
            "expected {n} automorphism images, got {}",
            sigma_images.len()
        )));
    }
    if !is_irreducible_over_q(ring.f())? {
        return Err(Error::InvalidField(format!("{} is reducible over Q", ring.f())));
    }
    let images: Vec<RingElement> =
        sigma_images.iter().map(|c| ring.element(c)).collect::<Result<_>>()?;
    for (i, im) in images.iter().enumerate() {
        if !ring.eval(ring.f(), im).is_zero() {
            return Err(Error::NotAutomorphism { index: i });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if images[i] == images[j] {
                return Err(Error::DuplicateImages(i, j));
            }
        }
    }
    if images[0] != ring.theta() {
        return Err(Error::NotAGroup("the first automorphism must be the identity".into()));
    }
    let image_powers: Vec<Vec<RingElement>> = images
        .iter()
        .map(|im| {
            let mut pw = Vec::with_capacity(n);
            let mut cur = ring.one();
            for _ in 0..n {
                pw.push(cur.clone());
                cur = ring.mul(&cur, im);
            }
            pw
        })
        .collect();
    let mut group = GaloisGroup {
        images,
        image_powers,
        table: Vec::new(),
        inverse: Vec::new(),
        identity: 0,
    };
    let mut table = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let im = apply_with(&ring, &group.image_powers[i], &group.images[j]);
            table[i][j] = group.images.iter().position(|x| *x == im).ok_or_else(|| {
                Error::NotAGroup(format!("composition of {i} and {j} is not in the list"))
            })?;
        }
    }
    let mut inverse = vec![0; n];
    for i in 0..n {
        inverse[i] = (0..n)
            .find(|&j| table[i][j] == 0)
            .ok_or_else(|| Error::NotAGroup(format!("{i} has no inverse")))?;
        if table[inverse[i]][i] != 0 {
            return Err(Error::NotAGroup(format!("{i} has no two-sided inverse")));
        }
    }
    group.table = table;
    group.inverse = inverse;
    Ok(GaloisRing { ring, group })
}

fn apply_with(ring: &NumberRing, powers: &[RingElement], a: &RingElement) -> RingElement {
    let mut out = ring.zero();
    for (c, pw) in a.coords.iter().zip(powers) {
        if !c.is_zero() {
            out = ring.add(&out, &ring.scale(pw, c));
        }
    }
    out
}

impl GaloisRing {
    pub fn ring(&self) -> &NumberRing {
        &self.ring
    }

    pub fn group(&self) -> &GaloisGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.ring.degree()
    }

    /// `σ_i(θ)^a`.
    pub fn image_power(&self, i: usize, a: usize) -> &RingElement {
        &self.group.image_powers[i][a]
    }

    /// `σ_i(a)`, computed as `a(σ_i(θ))`.
    pub fn apply_aut(&self, i: usize, a: &RingElement) -> RingElement {
        apply_with(&self.ring, &self.group.image_powers[i], a)
    }

    /// Partition of the group into right cosets `Hσ`, ordered by smallest
    /// member; each cell is sorted.
    pub fn cosets(&self, h: &[usize]) -> Result<Vec<Vec<usize>>> {
        if !self.group.is_subgroup(h) {
            return Err(Error::NotSubgroup);
        }
        let n = self.group.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cell: Vec<usize> = h.iter().map(|&x| self.group.compose(x, s)).collect();
            cell.sort_unstable();
            cell.dedup();
            for &c in &cell {
                seen[c] = true;
            }
            out.push(cell);
        }
        Ok(out)
    }

    /// Z-basis (HNF, θ-coordinates) of the fixed ring `S^H`.
    pub fn fixed_subring(&self, h: &[usize]) -> Result<IntLattice> {
        if !self.group.is_subgroup(h) {
            return Err(Error::NotSubgroup);
        }
        let n = self.degree();
        let rows: Vec<Vec<Int>> = (0..n)
            .map(|a| {
                let b = self.ring.basis(a);
                h.iter()
                    .flat_map(|&s| self.ring.sub(&self.apply_aut(s, &b), &b).into_coords())
                    .collect()
            })
            .collect();
        let kernel = left_kernel(&rows, n * h.len());
        let lat = IntLattice::new(n, kernel)?;
        if !lat.contains(self.ring.one().coords())? {
            return Err(Error::Certificate("fixed ring misses 1".into()));
        }
        for x in lat.basis() {
            for y in lat.basis() {
                let p = self.ring.mul(&RingElement::from_coords(x.clone()), &RingElement::from_coords(y.clone()));
                if !lat.contains(p.coords())? {
                    return Err(Error::Certificate("fixed ring not closed under products".into()));
                }
            }
        }
        Ok(lat)
    }

    /// The matrix `D[a][k] = σ_k(θ^a)` of ring elements.
    pub fn dedekind_matrix(&self) -> Vec<Vec<RingElement>> {
        let n = self.degree();
        (0..n)
            .map(|a| (0..n).map(|k| self.image_power(k, a).clone()).collect())
            .collect()
    }

    /// Determinant of [`Self::dedekind_matrix`] in `S`, by expansion over
    /// column subsets.
    pub fn dedekind_determinant(&self) -> RingElement {
        let d = self.dedekind_matrix();
        let n = self.degree();
        let ring = &self.ring;
        let mut dp: Vec<Option<RingElement>> = vec![None; 1 << n];
        dp[0] = Some(ring.one());
        for mask in 1usize..(1 << n) {
            let row = mask.count_ones() as usize - 1;
            let mut acc = ring.zero();
            for k in 0..n {
                if mask >> k & 1 == 0 {
                    continue;
                }
                let minor = dp[mask & !(1 << k)].as_ref().unwrap();
                let term = ring.mul(&d[row][k], minor);
                let later = (mask >> (k + 1)).count_ones() as usize;
                acc = if later.is_multiple_of(2) { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
            }
            dp[mask] = Some(acc);
        }
        dp[(1 << n) - 1].take().unwrap()
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = IntPoly::new(self.coords.clone());
        write!(f, "{}", p.to_string().replace('x', "t"))
    }
}

/// Coordinates of `ζ^k` in `Z[ζ]` for the `p`-th cyclotomic polynomial.
pub fn cyclotomic_power(p: usize, k: usize) -> Vec<Int> {
    let n = p - 1;
    let k = k % p;
    if k < n {
        let mut v = vec![Int::zero(); n];
        v[k] = Int::one();
        v
    } else {
        vec![-Int::one(); n]
    }
}

/// Defining polynomial and automorphism images of `Z[√d]`.
pub fn quadratic_data(d: i64) -> (IntPoly, Vec<Vec<Int>>) {
    (
        IntPoly::from_i64s(&[-d, 0, 1]),
        vec![vec![Int::zero(), Int::one()], vec![Int::zero(), -Int::one()]],
    )
}

/// Defining polynomial and automorphisms `ζ ↦ ζ^k`, `k = 1..p-1`, of `Z[ζ_p]`.
pub fn cyclotomic_data(p: usize) -> (IntPoly, Vec<Vec<Int>>) {
    let f = IntPoly::new(vec![Int::one(); p]);
    (f, (1..p).map(|k| cyclotomic_power(p, k)).collect())
}

/// `Z[√d]` for squarefree `d ≡ 2, 3 mod 4`.
pub fn quadratic(d: i64) -> Result<GaloisRing> {
    if d == 0 || d == 1 || !matches!(d.rem_euclid(4), 2 | 3) || !is_squarefree(d.unsigned_abs()) {
        return Err(Error::InvalidField(format!(
            "d = {d} must be squarefree, not 0 or 1, and 2 or 3 mod 4"
        )));
    }
    let (f, s) = quadratic_data(d);
    build_field(f, &s)
}

/// `Z[ζ_p]` for an odd prime `p`.
pub fn cyclotomic(p: usize) -> Result<GaloisRing> {
    if p < 3 || !crate::arith::is_prime(p as u64) {
        return Err(Error::InvalidField(format!("{p} is not an odd prime")));
    }
    let (f, s) = cyclotomic_data(p);
    build_field(f, &s)
}

fn is_squarefree(m: u64) -> bool {
    let mut k = 2u64;
    while k * k <= m {
        if m.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Sign-aware gcd of all coordinates.
pub fn content(a: &RingElement) -> Int {
    a.coords.iter().fold(Int::zero(), |g, c| g.gcd(c)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_group() {
        let g = quadratic(2).unwrap();
        assert_eq!(g.group().order(), 2);
        let r = g.ring();
        assert_eq!(g.apply_aut(1, &r.theta()), r.element_i64(&[0, -1]));
        assert_eq!(g.apply_aut(1, &r.one()), r.one());
    }

    #[test]
    fn cyclotomic_group() {
        let g = cyclotomic(5).unwrap();
        assert_eq!(g.group().order(), 4);
        let r = g.ring();
        let z = r.theta();
        let a = r.add(&z, &r.pow(&z, 4));
        // ζ ↦ ζ^2 sends ζ + ζ^4 to ζ^2 + ζ^3
        assert_eq!(g.apply_aut(1, &a), r.element_i64(&[0, 0, 1, 1]));
        // cyclic: σ_2 has order 4
        let t = g.group().table();
        assert_eq!(t[1][1], 3);
        assert_eq!(t[t[1][1]][1], 2);
    }

    #[test]
    fn rejects_bad_images() {
        let (f, _) = quadratic_data(2);
        let s = vec![vec![Int::zero(), Int::one()], vec![Int::zero(), Int::one()]];
        assert_eq!(build_field(f.clone(), &s), Err(Error::DuplicateImages(0, 1)));
        let s = vec![vec![Int::zero(), Int::one()], vec![Int::one(), Int::one()]];
        assert_eq!(build_field(f, &s), Err(Error::NotAutomorphism { index: 1 }));
    }

    #[test]
    fn rejects_reducible() {
        let f = IntPoly::from_i64s(&[0, -1, 1]);
        let s = vec![vec![Int::zero(), Int::one()], vec![Int::one(), -Int::one()]];
        assert!(matches!(build_field(f, &s), Err(Error::InvalidField(_))));
    }

    #[test]
    fn cosets_and_fixed_rings() {
        let g = cyclotomic(5).unwrap();
        assert_eq!(g.cosets(&[0]).unwrap().len(), 4);
        assert_eq!(g.cosets(&[0, 1, 2, 3]).unwrap(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(g.cosets(&[0, 1]), Err(Error::NotSubgroup));
        let h = [0, 3];
        let fx = g.fixed_subring(&h).unwrap();
        assert_eq!(fx.rank(), 2);
        let r = g.ring();
        assert!(fx.contains(r.one().coords()).unwrap());
        let w = r.add(&r.theta(), &r.pow(&r.theta(), 4));
        assert!(fx.contains(w.coords()).unwrap());
        assert_eq!(g.fixed_subring(&[0]).unwrap(), IntLattice::full(4));
        let q2 = quadratic(2).unwrap();
        assert_eq!(q2.fixed_subring(&[0, 1]).unwrap().basis(), &[vec![Int::one(), Int::zero()]]);
    }

    #[test]
    fn dedekind_determinant_nonzero() {
        let g = quadratic(2).unwrap();
        // det [[1, 1], [√2, -√2]] = -2√2
        assert_eq!(g.dedekind_determinant(), g.ring().element_i64(&[0, -2]));
        assert!(!cyclotomic(5).unwrap().dedekind_determinant().is_zero());
    }

    #[test]
    fn exact_division() {
        let g = quadratic(2).unwrap();
        let r = g.ring();
        let a = r.element_i64(&[4, 2]);
        let d = r.element_i64(&[0, 2]);
        assert_eq!(r.div_exact(&a, &d), Some(r.element_i64(&[1, 1])));
        assert_eq!(r.div_exact(&r.one(), &d), None);
        assert_eq!(r.norm(&r.element_i64(&[1, 1])), Int::from(-1));
    }

    #[test]
    fn fraction_free_det() {
        let m = vec![
            vec![Int::from(2), Int::from(1), Int::from(0)],
            vec![Int::from(1), Int::from(3), Int::from(1)],
            vec![Int::from(0), Int::from(1), Int::from(4)],
        ];
        assert_eq!(det_int(&m), Int::from(18));
    }
}
