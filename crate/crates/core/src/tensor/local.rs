//! Localization `T ⊗ S_Q`, the orthogonal idempotents indexed by right cosets
//! of the inertia group, and their reductions modulo `Q`.

use crate::arith::field::{Field, FqElem, FqField};
use crate::arith::fpoly::{self, Poly};
use crate::error::{Error, Result};
use crate::numfield::RingElement;
use crate::prime::{inertia_group, residues, PrimeIdeal};
use crate::Int;

use super::{TensorElement, TensorSquare};

/// `num · (1⊗den)^{-1}` with `den ∉ Q`.
#[derive(Clone, Debug)]
pub struct LocalizedElement {
    pub num: TensorElement,
    pub den: RingElement,
}

impl LocalizedElement {
    pub fn new(q: &PrimeIdeal, num: TensorElement, den: RingElement) -> Result<Self> {
        if q.residue_field().is_zero(&q.reduce(&den)) {
            return Err(Error::DenominatorInPrime);
        }
        Ok(LocalizedElement { num, den })
    }

    pub fn from_tensor(ts: &TensorSquare, t: TensorElement) -> Self {
        LocalizedElement { num: t, den: ts.ring().one() }
    }

    pub fn mul(&self, ts: &TensorSquare, o: &Self) -> Self {
        LocalizedElement { num: ts.mul(&self.num, &o.num), den: ts.ring().mul(&self.den, &o.den) }
    }

    pub fn add(&self, ts: &TensorSquare, o: &Self) -> Self {
        let num = ts.add(&ts.mul_right(&self.num, &o.den), &ts.mul_right(&o.num, &self.den));
        LocalizedElement { num, den: ts.ring().mul(&self.den, &o.den) }
    }

    /// Equality by cross-multiplication.
    pub fn equals(&self, ts: &TensorSquare, o: &Self) -> bool {
        ts.mul_right(&self.num, &o.den) == ts.mul_right(&o.num, &self.den)
    }

    /// True iff `φ_k(self) = c` for the integer `c`.
    pub fn phi_is(&self, ts: &TensorSquare, k: usize, c: i64) -> bool {
        let r = ts.ring();
        ts.phi(&self.num, k) == r.scale(&self.den, &Int::from(c))
    }

    /// Image in `F_Q[x]/(f̄)`.
    pub fn reduce(&self, q: &PrimeIdeal) -> Poly<FqField> {
        let fq = q.residue_field();
        let inv = fq.inv(&q.reduce(&self.den)).expect("denominator outside Q");
        let p: Vec<FqElem> = self.num.coeffs().iter().map(|c| fq.mul(&q.reduce(c), &inv)).collect();
        fpoly::trim(fq, p)
    }
}

/// Orthogonal idempotents of `T ⊗ S_Q`, one per right coset of `E(Q)`.
#[derive(Clone, Debug)]
pub struct Idempotents {
    pub inertia: Vec<usize>,
    /// Right cosets `Eσ`, ordered by smallest member.
    pub cosets: Vec<Vec<usize>>,
    pub xs: Vec<LocalizedElement>,
    /// Elements `s_l` of the fixed ring used for each `σ_l ∉ E`.
    pub witnesses: Vec<(usize, RingElement)>,
}

/// Builds `x_1 = ∏_{σ_l ∉ E} y_l'` and its translates `(σ^{-1}⊗1)(x_1)`,
/// then checks idempotence, orthogonality, the partition of unity and the
/// `φ`-pattern exactly.
pub fn idempotents_at(ts: &TensorSquare, q: &PrimeIdeal) -> Result<Idempotents> {
    let gr = ts.galois();
    let r = ts.ring();
    let n = ts.degree();
    let e = inertia_group(gr, q)?;
    let inertia = e.members().to_vec();
    let cosets = gr.cosets(&inertia)?;
    let fixed = gr.fixed_subring(&inertia)?;
    let fq = q.residue_field();

    let mut witnesses = Vec::new();
    let mut x1 = LocalizedElement::from_tensor(ts, ts.one());
    for l in (0..n).filter(|l| !e.contains(*l)) {
        let s = search_witness(fixed.basis(), |s| {
            let d = r.sub(&gr.apply_aut(l, s), s);
            !fq.is_zero(&q.reduce(&d))
        })
        .ok_or_else(|| Error::Certificate(format!("no fixed-ring witness for automorphism {l}")))?;
        let sl = gr.apply_aut(l, &s);
        let y = LocalizedElement::new(q, ts.sub(&ts.left(&s), &ts.right(&sl)), r.sub(&s, &sl))?;
        x1 = x1.mul(ts, &y);
        witnesses.push((l, s));
    }
    let g = gr.group();
    let xs: Vec<LocalizedElement> = cosets
        .iter()
        .map(|c| LocalizedElement {
            num: ts.apply_left_aut(g.inverse(c[0]), &x1.num),
            den: x1.den.clone(),
        })
        .collect();

    for (i, xi) in xs.iter().enumerate() {
        if !xi.mul(ts, xi).equals(ts, xi) {
            return Err(Error::Certificate(format!("x_{} is not idempotent", i + 1)));
        }
        for (j, xj) in xs.iter().enumerate().skip(i + 1) {
            if !ts.mul(&xi.num, &xj.num).is_zero() {
                return Err(Error::Certificate(format!("x_{} x_{} is not zero", i + 1, j + 1)));
            }
        }
        for k in 0..n {
            let want = cosets[i].contains(&k) as i64;
            if !xi.phi_is(ts, k, want) {
                return Err(Error::Certificate(format!("phi pattern of x_{} fails at {k}", i + 1)));
            }
        }
    }
    let total = xs
        .iter()
        .skip(1)
        .fold(xs[0].clone(), |acc, x| acc.add(ts, x));
    if !total.equals(ts, &LocalizedElement::from_tensor(ts, ts.one())) {
        return Err(Error::Certificate("idempotents do not sum to 1".into()));
    }
    Ok(Idempotents { inertia, cosets, xs, witnesses })
}

/// First lattice combination, by increasing coefficient bound `1, 2, 4, …`,
/// that satisfies `ok`.
fn search_witness(basis: &[Vec<Int>], ok: impl Fn(&RingElement) -> bool) -> Option<RingElement> {
    let r = basis.len();
    let n = basis.first()?.len();
    let mut bound: i64 = 1;
    while bound <= 64 {
        let width = (2 * bound + 1) as u64;
        let total = width.checked_pow(r as u32)?;
        for idx in 0..total {
            let mut rest = idx;
            let mut v = vec![Int::from(0); n];
            for b in basis {
                let c = (rest % width) as i64 - bound;
                rest /= width;
                if c != 0 {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x += y * c;
                    }
                }
            }
            let s = RingElement::from_coords(v);
            if ok(&s) {
                return Some(s);
            }
        }
        bound *= 2;
    }
    None
}

/// Reduction of `f` in `F_Q[x]`.
pub fn reduced_modulus(ts: &TensorSquare, q: &PrimeIdeal) -> Poly<FqField> {
    let fq = q.residue_field();
    let p: Vec<FqElem> = ts
        .ring()
        .f()
        .coeffs()
        .iter()
        .map(|c| fq.from_base(fq.base().reduce(c)))
        .collect();
    fpoly::trim(fq, p)
}

/// CRT idempotents of `F_Q[x]/(f̄)` for the factors `(x - τ_c)^{m_c}`, one
/// per residue in `taus`.
pub fn block_idempotents(fq: &FqField, taus: &[FqElem], mults: &[usize]) -> Vec<Poly<FqField>> {
    let moduli: Vec<Poly<FqField>> = taus
        .iter()
        .zip(mults)
        .map(|(t, &m)| fpoly::pow(fq, &fpoly::linear(fq, t), m))
        .collect();
    (0..taus.len())
        .map(|c| {
            let res: Vec<Poly<FqField>> = (0..taus.len())
                .map(|d| if c == d { fpoly::one(fq) } else { Vec::new() })
                .collect();
            fpoly::crt(fq, &res, &moduli).expect("coprime moduli")
        })
        .collect()
}

/// Outcome of the residue-level checks at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueReport {
    pub e: usize,
    /// `σ_j(θ) ≡ σ_k(θ) mod Q` exactly when `σ_j, σ_k` share a right coset.
    pub residues_match_cosets: bool,
    /// `f̄ = ∏ (x - τ_c)^{|E|}`.
    pub factorization_ok: bool,
    /// For `e = 1`: `f̄` squarefree and evaluation at the `τ_k` bijective.
    pub crt_bijective: Option<bool>,
    /// Per coset: `α^{|E|} = 0` and `α^{|E|-1} ≠ 0` for `α = x - τ_c`.
    pub nilpotent_blocks: Vec<bool>,
    /// The global idempotents reduce to the CRT idempotents.
    pub idempotents_reduce: bool,
}

impl ResidueReport {
    pub fn all_ok(&self) -> bool {
        self.residues_match_cosets
            && self.factorization_ok
            && self.crt_bijective != Some(false)
            && self.nilpotent_blocks.iter().all(|&b| b)
            && self.idempotents_reduce
    }
}

pub fn residue_checks(ts: &TensorSquare, q: &PrimeIdeal, idem: &Idempotents) -> ResidueReport {
    let fq = q.residue_field();
    let n = ts.degree();
    let tau = residues(ts.galois(), q);
    let m = idem.inertia.len();
    let mut residues_match_cosets = true;
    for j in 0..n {
        for k in 0..n {
            let same = idem.cosets.iter().any(|c| c.contains(&j) && c.contains(&k));
            if same != (tau[j] == tau[k]) {
                residues_match_cosets = false;
            }
        }
    }
    let fbar = reduced_modulus(ts, q);
    let coset_tau: Vec<FqElem> = idem.cosets.iter().map(|c| tau[c[0]].clone()).collect();
    let product = coset_tau.iter().fold(fpoly::one(fq), |acc, t| {
        fpoly::mul(fq, &acc, &fpoly::pow(fq, &fpoly::linear(fq, t), m))
    });
    let factorization_ok = product == fbar;

    let crt_bijective = (q.e() == 1).then(|| {
        let d = fpoly::derivative(fq, &fbar);
        let squarefree = fpoly::degree::<FqField>(&fpoly::gcd(fq, &fbar, &d)) == Some(0);
        let rows: Vec<Vec<FqElem>> = (0..n)
            .map(|a| tau.iter().map(|t| fq.pow(t, a as u64)).collect())
            .collect();
        squarefree && crate::arith::linalg::rank(fq, &rows, n) == n
    });

    let blocks = block_idempotents(fq, &coset_tau, &vec![m; coset_tau.len()]);
    let nilpotent_blocks = coset_tau
        .iter()
        .zip(&blocks)
        .map(|(t, xb)| {
            let alpha = fpoly::linear(fq, t);
            let top = fpoly::mulmod(fq, &fpoly::pow(fq, &alpha, m), xb, &fbar);
            let below = fpoly::mulmod(fq, &fpoly::pow(fq, &alpha, m - 1), xb, &fbar);
            top.is_empty() && !below.is_empty()
        })
        .collect();
    let idempotents_reduce = idem
        .xs
        .iter()
        .zip(&blocks)
        .all(|(x, b)| fpoly::rem(fq, &x.reduce(q), &fbar) == *b);
    ResidueReport {
        e: q.e(),
        residues_match_cosets,
        factorization_ok,
        crt_bijective,
        nilpotent_blocks,
        idempotents_reduce,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{cyclotomic, quadratic};
    use crate::prime::split_prime;

    #[test]
    fn split_quadratic_prime() {
        let ts = TensorSquare::new(quadratic(2).unwrap());
        let q = split_prime(ts.ring(), 7).unwrap().remove(0);
        let idem = idempotents_at(&ts, &q).unwrap();
        assert_eq!(idem.xs.len(), 2);
        assert!(idem.xs[0].phi_is(&ts, 0, 1) && idem.xs[0].phi_is(&ts, 1, 0));
        // x_1 = (x + √2) / (2√2)
        let r = ts.ring();
        let expected = LocalizedElement {
            num: ts.add(&ts.x(), &ts.right(&r.theta())),
            den: r.element_i64(&[0, 2]),
        };
        assert!(idem.xs[0].equals(&ts, &expected));
        assert!(residue_checks(&ts, &q, &idem).all_ok());
    }

    #[test]
    fn totally_ramified_gives_one() {
        let ts = TensorSquare::new(cyclotomic(5).unwrap());
        let q = split_prime(ts.ring(), 5).unwrap().remove(0);
        let idem = idempotents_at(&ts, &q).unwrap();
        assert_eq!(idem.xs.len(), 1);
        assert!(idem.xs[0].equals(&ts, &LocalizedElement::from_tensor(&ts, ts.one())));
        let rep = residue_checks(&ts, &q, &idem);
        assert_eq!(rep.crt_bijective, None);
        assert!(rep.all_ok());
    }

    #[test]
    fn unramified_inert_and_split() {
        let ts = TensorSquare::new(cyclotomic(5).unwrap());
        for p in [2u64, 11, 19] {
            for q in split_prime(ts.ring(), p).unwrap() {
                let idem = idempotents_at(&ts, &q).unwrap();
                assert_eq!(idem.xs.len(), 4);
                let rep = residue_checks(&ts, &q, &idem);
                assert_eq!(rep.crt_bijective, Some(true));
                assert!(rep.all_ok());
            }
        }
    }

    #[test]
    fn rejects_denominator_in_prime() {
        let ts = TensorSquare::new(quadratic(2).unwrap());
        let q = split_prime(ts.ring(), 2).unwrap().remove(0);
        let r = ts.ring();
        assert!(matches!(
            LocalizedElement::new(&q, ts.one(), r.theta()),
            Err(Error::DenominatorInPrime)
        ));
    }
}
