//! Dense univariate polynomials over a [`Field`], as coefficient vectors
//! lowest degree first with no trailing zeros.

use super::field::Field;

pub type Poly<F> = Vec<<F as Field>::Elem>;

pub fn trim<F: Field>(f: &F, mut a: Poly<F>) -> Poly<F> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn degree<F: Field>(a: &Poly<F>) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn constant<F: Field>(f: &F, c: F::Elem) -> Poly<F> {
    trim(f, vec![c])
}

pub fn one<F: Field>(f: &F) -> Poly<F> {
    vec![f.one()]
}

/// The polynomial `x - a`.
pub fn linear<F: Field>(f: &F, a: &F::Elem) -> Poly<F> {
    vec![f.neg(a), f.one()]
}

pub fn add<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let n = a.len().max(b.len());
    let z = f.zero();
    trim(
        f,
        (0..n)
            .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect(),
    )
}

pub fn sub<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let n = a.len().max(b.len());
    let z = f.zero();
    trim(
        f,
        (0..n)
            .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect(),
    )
}

pub fn scale<F: Field>(f: &F, a: &Poly<F>, c: &F::Elem) -> Poly<F> {
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn mul<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>) {
    let db = degree::<F>(b).expect("division by zero polynomial");
    if a.len() <= db {
        return (Vec::new(), a.clone());
    }
    let lc_inv = f.inv(b.last().unwrap()).unwrap();
    let mut rem = a.clone();
    let mut quo = vec![f.zero(); a.len() - db];
    for k in (0..quo.len()).rev() {
        let c = f.mul(&rem[k + db], &lc_inv);
        if f.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, bj));
        }
        quo[k] = c;
    }
    rem.truncate(db);
    (trim(f, quo), trim(f, rem))
}

pub fn rem<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    divrem(f, a, b).1
}

/// Exact quotient, or `None` if `b` does not divide `a`.
pub fn div_exact<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Option<Poly<F>> {
    let (q, r) = divrem(f, a, b);
    r.is_empty().then_some(q)
}

pub fn monic<F: Field>(f: &F, a: &Poly<F>) -> Poly<F> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => scale(f, a, &f.inv(lc).unwrap()),
    }
}

/// Monic gcd.
pub fn gcd<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// Returns `(g, s, t)` with `g = s a + t b` and `g` monic.
pub fn ext_gcd<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (one(f), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), one(f));
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        let t = sub(f, &t0, &mul(f, &q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(lc) => {
            let li = f.inv(lc).unwrap();
            (scale(f, &r0, &li), scale(f, &s0, &li), scale(f, &t0, &li))
        }
    }
}

pub fn mulmod<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>, m: &Poly<F>) -> Poly<F> {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod<F: Field>(f: &F, a: &Poly<F>, mut e: u64, m: &Poly<F>) -> Poly<F> {
    let mut base = rem(f, a, m);
    let mut acc = rem(f, &one(f), m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &base, m);
        }
        base = mulmod(f, &base, &base, m);
        e >>= 1;
    }
    acc
}

pub fn pow<F: Field>(f: &F, a: &Poly<F>, e: usize) -> Poly<F> {
    (0..e).fold(one(f), |acc, _| mul(f, &acc, a))
}

pub fn derivative<F: Field>(f: &F, a: &Poly<F>) -> Poly<F> {
    trim(
        f,
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.int(i as i64)))
            .collect(),
    )
}

pub fn eval<F: Field>(f: &F, a: &Poly<F>, x: &F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// `prod (x - r)` over the given roots.
pub fn from_roots<F: Field>(f: &F, roots: &[F::Elem]) -> Poly<F> {
    roots
        .iter()
        .fold(one(f), |acc, r| mul(f, &acc, &linear(f, r)))
}

/// Chinese remaindering for pairwise coprime moduli: the unique `r` with
/// `deg r < deg prod m_i` and `r = a_i mod m_i`.
pub fn crt<F: Field>(f: &F, residues: &[Poly<F>], moduli: &[Poly<F>]) -> Option<Poly<F>> {
    let total = moduli.iter().fold(one(f), |acc, m| mul(f, &acc, m));
    let mut out = Vec::new();
    for (a, m) in residues.iter().zip(moduli) {
        let co = div_exact(f, &total, m)?;
        let (g, s, _) = ext_gcd(f, &co, m);
        if g != one(f) {
            return None;
        }
        let e = mulmod(f, &co, &s, &total);
        out = add(f, &out, &mulmod(f, &e, a, &total));
    }
    Some(rem(f, &out, &total))
}
