use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::factor::{factor_mod_p, is_prime};
use super::fpoly;
use super::IntPoly;
use crate::error::{Error, Result};

/// A field given by a context value; elements carry no reference to it.
pub trait Field: Clone + Debug {
    type Elem: Clone + PartialEq + Eq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn int(&self, n: i64) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The prime field F_p for a word-sized prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, a: &BigInt) -> u64 {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        a.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i128) as u64)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

/// Element of F_p[y]/(h): `deg h` coefficients in `[0, p)`, lowest first.
pub type FqElem = Vec<u64>;

/// The finite field F_p[y]/(h) for a monic irreducible `h` over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqField {
    base: PrimeField,
    modulus: Vec<u64>,
}

impl FqField {
    /// Builds F_p[y]/(h); `h` is given lowest degree first and must be monic
    /// and irreducible over F_p.
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let modulus = fpoly::trim(&base, modulus);
        if modulus.last() != Some(&1) {
            return Err(Error::NotMonic);
        }
        let lifted = IntPoly::new(modulus.iter().map(|&c| BigInt::from(c)).collect());
        let fac = factor_mod_p(&lifted, p)?;
        if fac.len() != 1 || fac[0].1 != 1 {
            return Err(Error::ReducibleModulus(p));
        }
        Ok(FqField { base, modulus })
    }

    /// The prime field itself, viewed as F_p[y]/(y).
    pub fn prime(p: u64) -> Result<Self> {
        let base = PrimeField::new(p)?;
        Ok(FqField { base, modulus: vec![0, 1] })
    }

    pub fn p(&self) -> u64 {
        self.base.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    /// Number of elements, if it fits in a u128.
    pub fn order(&self) -> Option<u128> {
        (self.p() as u128).checked_pow(self.degree() as u32)
    }

    /// Reduces a polynomial over F_p (in `y`) into the field.
    pub fn from_poly(&self, poly: &[u64]) -> FqElem {
        let r = fpoly::rem(&self.base, &fpoly::trim(&self.base, poly.to_vec()), &self.modulus);
        let mut out = vec![0; self.degree()];
        out[..r.len()].copy_from_slice(&r);
        out
    }

    pub fn from_base(&self, a: u64) -> FqElem {
        let mut out = vec![0; self.degree()];
        out[0] = a % self.p();
        out
    }

    /// The generator `y` of F_p[y]/(h).
    pub fn gen(&self) -> FqElem {
        self.from_poly(&[0, 1])
    }

    /// Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: &FqElem) -> FqElem {
        self.pow(a, self.p())
    }
}

impl Field for FqField {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        vec![0; self.degree()]
    }
    fn one(&self) -> FqElem {
        self.from_base(1)
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let d = self.degree();
        if d == 1 {
            return vec![self.base.mul(&a[0], &b[0])];
        }
        let p = self.p() as u128;
        let mut prod = vec![0u128; 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + *x as u128 * *y as u128) % p;
            }
        }
        for k in (d..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                let m = self.modulus[j] as u128;
                prod[k - d + j] = (prod[k - d + j] + (p - c) * m) % p;
            }
        }
        prod[..d].iter().map(|&c| c as u64).collect()
    }
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return None;
        }
        let a = fpoly::trim(&self.base, a.clone());
        let (g, s, _) = fpoly::ext_gcd(&self.base, &a, &self.modulus);
        debug_assert_eq!(g, vec![1]);
        Some(self.from_poly(&s))
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn int(&self, n: i64) -> FqElem {
        self.from_base(self.base.int(n))
    }
}

/// The rational numbers, for exact solves over Q.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
}
