//! Primes of `S` above a rational prime, residue fields, valuations and
//! inertia groups.

use num_traits::Zero;

use crate::arith::field::{Field, FqElem, FqField, PrimeField};
use crate::arith::{factor_mod_p, fpoly, is_prime, IntLattice, IntPoly};
use crate::error::{Error, Result};
use crate::numfield::{GaloisRing, NumberRing, RingElement};
use crate::Int;

/// The prime `Q = (p, h(θ))` of `S`, with `h^e` the exact power of `h`
/// dividing `f` mod `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    p: u64,
    h: Vec<u64>,
    e: usize,
    fdeg: usize,
    residue_field: FqField,
}

impl PrimeIdeal {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Local factor, monic over `F_p`, lowest degree first.
    pub fn h(&self) -> &[u64] {
        &self.h
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn fdeg(&self) -> usize {
        self.fdeg
    }

    pub fn residue_field(&self) -> &FqField {
        &self.residue_field
    }

    /// Ring homomorphism `S -> F_Q`.
    pub fn reduce(&self, a: &RingElement) -> FqElem {
        let fp = self.residue_field.base();
        let c: Vec<u64> = a.coords().iter().map(|x| fp.reduce(x)).collect();
        self.residue_field.from_poly(&c)
    }

    /// Z-lattice of `Q` in θ-coordinates.
    pub fn lattice(&self, ring: &NumberRing) -> IntLattice {
        let n = ring.degree();
        let h = ring.from_poly(&IntPoly::new(self.h.iter().map(|&c| Int::from(c)).collect()));
        let mut gens: Vec<Vec<Int>> = (0..n)
            .map(|a| ring.mul(&h, &ring.basis(a)).into_coords())
            .collect();
        gens.extend((0..n).map(|a| ring.scale(&ring.basis(a), &Int::from(self.p)).into_coords()));
        IntLattice::new(n, gens).expect("coordinate count")
    }

    /// Lattice of `Q^k`; `Q^0 = S`.
    pub fn power_lattice(&self, ring: &NumberRing, k: usize) -> IntLattice {
        let n = ring.degree();
        let q = self.lattice(ring);
        let mut cur = IntLattice::full(n);
        for _ in 0..k {
            let gens = cur
                .basis()
                .iter()
                .flat_map(|x| {
                    let x = RingElement::from_coords(x.clone());
                    q.basis()
                        .iter()
                        .map(|y| ring.mul(&x, &RingElement::from_coords(y.clone())).into_coords())
                        .collect::<Vec<_>>()
                })
                .collect();
            cur = IntLattice::new(n, gens).expect("coordinate count");
        }
        cur
    }

    /// Largest `k` with `a ∈ Q^k`.
    pub fn valuation(&self, ring: &NumberRing, a: &RingElement) -> Result<usize> {
        if a.is_zero() {
            return Err(Error::InfiniteValuation);
        }
        let mut k = 0;
        loop {
            if !self.power_lattice(ring, k + 1).contains(a.coords())? {
                return Ok(k);
            }
            k += 1;
        }
    }

    /// First element of valuation 1 in a deterministic search over
    /// coordinates bounded by `B = 1, 2, 4, …`.
    pub fn uniformizer(&self, ring: &NumberRing) -> RingElement {
        let n = ring.degree();
        let q = self.lattice(ring);
        let q2 = self.power_lattice(ring, 2);
        // the local factor itself usually works
        let h = ring.from_poly(&IntPoly::new(self.h.iter().map(|&c| Int::from(c)).collect()));
        for cand in [h, ring.from_int(Int::from(self.p))] {
            if !q2.contains(cand.coords()).unwrap() {
                return cand;
            }
        }
        let mut bound: i64 = 1;
        loop {
            let width = (2 * bound + 1) as usize;
            let total = width.checked_pow(n as u32).expect("search space");
            for idx in 0..total {
                let mut r = idx;
                let coords: Vec<Int> = (0..n)
                    .map(|_| {
                        let d = (r % width) as i64 - bound;
                        r /= width;
                        Int::from(d)
                    })
                    .collect();
                if q.contains(&coords).unwrap() && !q2.contains(&coords).unwrap() {
                    return RingElement::from_coords(coords);
                }
            }
            bound *= 2;
        }
    }
}

/// Primes above `p`, one per irreducible factor of `f` mod `p`.
///
/// Fails if `p` divides the index of `Z[θ]` in the maximal order, where the
/// factor pattern would not describe the splitting.
pub fn split_prime(ring: &NumberRing, p: u64) -> Result<Vec<PrimeIdeal>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let factors = factor_mod_p(ring.f(), p)?;
    if !dedekind_maximal(ring.f(), p, &factors) {
        return Err(Error::NotMaximalAt(p));
    }
    let out: Vec<PrimeIdeal> = factors
        .into_iter()
        .map(|(h, e)| {
            let fdeg = h.len() - 1;
            let residue_field = FqField::new(p, h.clone())?;
            Ok(PrimeIdeal { p, h, e, fdeg, residue_field })
        })
        .collect::<Result<_>>()?;
    let total: usize = out.iter().map(|q| q.e * q.fdeg).sum();
    if total != ring.degree() {
        return Err(Error::Certificate(format!("sum of e*f is {total}, not {}", ring.degree())));
    }
    Ok(out)
}

/// Dedekind's criterion: `Z[θ]` is maximal at `p` iff
/// `gcd(F, g, h) = 1` mod `p`, where `g = Π h_i`, `h = Π h_i^{e_i - 1}` and
/// `F = (g h - f) / p`.
fn dedekind_maximal(f: &IntPoly, p: u64, factors: &[(Vec<u64>, usize)]) -> bool {
    let fp = PrimeField::new(p).expect("prime");
    let lift = |v: &[u64]| IntPoly::new(v.iter().map(|&c| Int::from(c)).collect());
    let mut g = IntPoly::one();
    let mut h = IntPoly::one();
    for (fac, e) in factors {
        let l = lift(fac);
        g = &g * &l;
        for _ in 1..*e {
            h = &h * &l;
        }
    }
    let diff = &(&g * &h) - f;
    let pp = Int::from(p);
    let big_f = IntPoly::new(diff.coeffs().iter().map(|c| c / &pp).collect());
    debug_assert!(diff.coeffs().iter().all(|c| (c % &pp).is_zero()));
    let red = |q: &IntPoly| fpoly::trim(&fp, q.reduce_mod(p));
    let d = fpoly::gcd(&fp, &fpoly::gcd(&fp, &red(&big_f), &red(&g)), &red(&h));
    fpoly::degree::<PrimeField>(&d) == Some(0)
}

/// Inertia group `E(Q)`: automorphisms acting trivially on `S/Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InertiaGroup {
    members: Vec<usize>,
}

impl InertiaGroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }
}

/// Computes `E(Q)` by testing `σ(θ) ≡ θ mod Q`, which suffices because
/// `S = Z[θ]`.
pub fn inertia_group(gr: &GaloisRing, q: &PrimeIdeal) -> Result<InertiaGroup> {
    let t = q.reduce(&gr.ring().theta());
    let members: Vec<usize> = (0..gr.group().order())
        .filter(|&i| q.reduce(gr.group().image(i)) == t)
        .collect();
    if members.len() != q.e || !gr.group().is_subgroup(&members) {
        return Err(Error::InertiaMismatch { expected: q.e, found: members.len() });
    }
    Ok(InertiaGroup { members })
}

/// Groups the automorphisms by their residue `σ(θ) mod Q`, in order of first
/// appearance.
pub fn residue_classes(gr: &GaloisRing, q: &PrimeIdeal) -> Vec<Vec<usize>> {
    let mut keys: Vec<FqElem> = Vec::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..gr.group().order() {
        let r = q.reduce(gr.group().image(i));
        match keys.iter().position(|k| *k == r) {
            Some(j) => out[j].push(i),
            None => {
                keys.push(r);
                out.push(vec![i]);
            }
        }
    }
    out
}

/// Residues `τ_k = σ_k(θ) mod Q` in `F_Q`.
pub fn residues(gr: &GaloisRing, q: &PrimeIdeal) -> Vec<FqElem> {
    (0..gr.group().order()).map(|i| q.reduce(gr.group().image(i))).collect()
}

/// True iff all primes in the list share `(e, fdeg)`.
pub fn uniform_splitting(primes: &[PrimeIdeal]) -> bool {
    primes.windows(2).all(|w| w[0].e == w[1].e && w[0].fdeg == w[1].fdeg)
}

/// True iff `a ∈ Q` via the residue map.
pub fn in_prime(q: &PrimeIdeal, a: &RingElement) -> bool {
    let fq = q.residue_field();
    fq.is_zero(&q.reduce(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{cyclotomic, quadratic};
    use num_traits::One;

    #[test]
    fn splitting_examples() {
        let g = quadratic(2).unwrap();
        let r = g.ring();
        let s2 = split_prime(r, 2).unwrap();
        assert_eq!(s2.len(), 1);
        assert_eq!((s2[0].e(), s2[0].fdeg(), s2[0].h()), (2, 1, &[0u64, 1][..]));
        let s7 = split_prime(r, 7).unwrap();
        assert_eq!(s7.len(), 2);
        assert!(s7.iter().all(|q| q.e() == 1 && q.fdeg() == 1));
        let z = cyclotomic(5).unwrap();
        let s5 = split_prime(z.ring(), 5).unwrap();
        assert_eq!(s5.len(), 1);
        assert_eq!((s5[0].e(), s5[0].fdeg(), s5[0].h()), (4, 1, &[4u64, 1][..]));
        assert_eq!(split_prime(r, 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn non_maximal_order_rejected() {
        // Z[√5] has index 2 in the ring of integers
        let f = IntPoly::from_i64s(&[-5, 0, 1]);
        let r = NumberRing::new(f).unwrap();
        assert_eq!(split_prime(&r, 2), Err(Error::NotMaximalAt(2)));
        assert!(split_prime(&r, 5).is_ok());
    }

    #[test]
    fn reductions() {
        let g = quadratic(2).unwrap();
        let r = g.ring();
        let q2 = &split_prime(r, 2).unwrap()[0];
        assert_eq!(q2.reduce(&r.theta()), vec![0]);
        let q7 = split_prime(r, 7).unwrap();
        let q = q7.iter().find(|q| q.h() == [4, 1]).unwrap();
        assert_eq!(q.reduce(&r.theta()), vec![3]);
        let z = cyclotomic(5).unwrap();
        let q5 = &split_prime(z.ring(), 5).unwrap()[0];
        assert_eq!(q5.reduce(&z.ring().theta()), vec![1]);
    }

    #[test]
    fn inertia_examples() {
        let g = quadratic(2).unwrap();
        let q2 = &split_prime(g.ring(), 2).unwrap()[0];
        assert_eq!(inertia_group(&g, q2).unwrap().members(), &[0, 1]);
        let q7 = &split_prime(g.ring(), 7).unwrap()[0];
        assert_eq!(inertia_group(&g, q7).unwrap().members(), &[0]);
        let z = cyclotomic(5).unwrap();
        let q5 = &split_prime(z.ring(), 5).unwrap()[0];
        assert_eq!(inertia_group(&z, q5).unwrap().order(), 4);
    }

    #[test]
    fn valuation_examples() {
        let g = quadratic(2).unwrap();
        let r = g.ring();
        let q2 = &split_prime(r, 2).unwrap()[0];
        assert_eq!(q2.valuation(r, &r.from_int(Int::from(2))), Ok(2));
        assert_eq!(q2.valuation(r, &r.theta()), Ok(1));
        assert_eq!(q2.valuation(r, &r.zero()), Err(Error::InfiniteValuation));
        let q7 = &split_prime(r, 7).unwrap()[0];
        assert_eq!(q7.valuation(r, &r.from_int(Int::from(3))), Ok(0));
        let u = q2.uniformizer(r);
        assert_eq!(q2.valuation(r, &u), Ok(1));
    }

    #[test]
    fn lattice_index_is_p_to_fdeg() {
        let z = cyclotomic(7).unwrap();
        for p in [2u64, 7, 13, 29] {
            for q in split_prime(z.ring(), p).unwrap() {
                let lat = q.lattice(z.ring());
                let det = lat.basis().iter().enumerate().fold(Int::one(), |acc, (i, row)| acc * &row[i]);
                assert_eq!(det, Int::from(p).pow(q.fdeg() as u32));
            }
        }
    }
}
