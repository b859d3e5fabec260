use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

/// Univariate polynomial with integer coefficients, lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial has no
/// coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntPoly<T = BigInt> {
    coeffs: Vec<T>,
}

impl<T: Integer + Signed + Clone> IntPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        IntPoly { coeffs: vec![T::zero(), T::one()] }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = T::zero();
        for c in self.coeffs.iter().skip(1) {
            k = k + T::one();
            out.push(c.clone() * k.clone());
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c.clone() / g.clone()).collect())
    }

    /// Quotient and remainder by a monic divisor, exact over the integers.
    pub fn divrem_monic(&self, d: &Self) -> (Self, Self) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![T::zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dj.clone();
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quo), Self::new(rem))
    }

    pub fn rem_monic(&self, d: &Self) -> Self {
        self.divrem_monic(d).1
    }

    /// Pseudo-remainder: `lc(d)^k * self mod d` with `k = deg self - deg d + 1`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let c = r.leading().unwrap().clone();
            let mut shifted = vec![T::zero(); dr - dd];
            shifted.extend(d.coeffs.iter().map(|a| a.clone() * c.clone()));
            r = r.scale(&lc) - Self::new(shifted);
        }
        r
    }

    /// Greatest common divisor over the rationals, returned primitive with
    /// positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |s, c| s + c.abs())
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn reduce_mod(&self, p: u64) -> Vec<u64>
    where
        T: ToPrimitive + From<u64>,
    {
        let pp = T::from(p);
        let mut out: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&pp).to_u64().expect("residue fits in u64"))
            .collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }
}

impl<T: Integer + Signed + Clone> Add for &IntPoly<T> {
    type Output = IntPoly<T>;
    fn add(self, rhs: &IntPoly<T>) -> IntPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Integer + Signed + Clone> Sub for &IntPoly<T> {
    type Output = IntPoly<T>;
    fn sub(self, rhs: &IntPoly<T>) -> IntPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Integer + Signed + Clone> Mul for &IntPoly<T> {
    type Output = IntPoly<T>;
    fn mul(self, rhs: &IntPoly<T>) -> IntPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        IntPoly::new(out)
    }
}

impl<T: Integer + Signed + Clone> Neg for &IntPoly<T> {
    type Output = IntPoly<T>;
    fn neg(self) -> IntPoly<T> {
        IntPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Integer + Signed + Clone> $tr for IntPoly<T> {
            type Output = IntPoly<T>;
            fn $m(self, rhs: IntPoly<T>) -> IntPoly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Integer + Signed + Clone + fmt::Display> fmt::Display for IntPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl IntPoly<BigInt> {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly<i64> {
        IntPoly::new(c.to_vec())
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn divrem_by_monic() {
        // x^3 - 2 = (x - 1)(x^2 + x + 1) - 1
        let (q, r) = p(&[-2, 0, 0, 1]).divrem_monic(&p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1, 1]));
        assert_eq!(r, p(&[-1]));
    }

    #[test]
    fn gcd_over_q() {
        // (x - 1)(x + 2) and (x - 1)(2x + 3)
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 2]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[0, 2])), p(&[1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-2, 0, 1]).to_string(), "x^2 - 2");
        assert_eq!(p(&[1, -3]).to_string(), "-3*x + 1");
    }

    #[test]
    fn reduce_mod_p() {
        assert_eq!(IntPoly::from_i64s(&[-2, 0, 1]).reduce_mod(7), vec![5, 0, 1]);
        assert_eq!(IntPoly::from_i64s(&[-2, 0, 2]).reduce_mod(2), Vec::<u64>::new());
    }
}
