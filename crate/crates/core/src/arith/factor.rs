//! Factorization over prime fields (squarefree, distinct-degree and
//! equal-degree splitting) and an irreducibility test over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::PrimeField;
use super::fpoly::{self, Poly};
use super::IntPoly;
use crate::error::{Error, Result};

/// Environment variable holding the splitting seed.
pub const SEED_VAR: &str = "NRHW_SEED";

const DEFAULT_SEED: u64 = 0x6e72_6877;

/// Seed for equal-degree splitting: `NRHW_SEED` if set and numeric, else a
/// fixed default.
pub fn default_seed() -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes in `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Factorization of a monic `f` modulo a prime `p` into monic irreducible
/// factors with multiplicities, sorted by degree then coefficients.
pub fn factor_mod_p(f: &IntPoly, p: u64) -> Result<Vec<(Vec<u64>, usize)>> {
    factor_mod_p_seeded(f, p, default_seed())
}

pub fn factor_mod_p_seeded(f: &IntPoly, p: u64, seed: u64) -> Result<Vec<(Vec<u64>, usize)>> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let fp = PrimeField::new(p)?;
    let a = f.reduce_mod(p);
    Ok(factor_fp(&fp, &a, seed))
}

/// Factorization of a monic polynomial over F_p.
pub fn factor_fp(fp: &PrimeField, a: &Poly<PrimeField>, seed: u64) -> Vec<(Vec<u64>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    if fpoly::degree::<PrimeField>(a).unwrap_or(0) == 0 {
        return out;
    }
    for (g, m) in squarefree(fp, &fpoly::monic(fp, a)) {
        for (h, d) in distinct_degree(fp, &g) {
            for q in equal_degree(fp, &h, d, &mut rng) {
                out.push((q, m));
            }
        }
    }
    out.sort_by(|(x, _), (y, _)| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}

/// True iff the monic polynomial `g` over F_p is irreducible.
pub fn is_irreducible_fp(fp: &PrimeField, g: &Poly<PrimeField>) -> bool {
    let d = match fpoly::degree::<PrimeField>(g) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let g = fpoly::monic(fp, g);
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = fpoly::powmod(fp, &h, fp.p(), &g);
        if fpoly::gcd(fp, &g, &fpoly::sub(fp, &h, &x)).len() > 1 {
            return false;
        }
    }
    true
}

fn pth_root(fp: &PrimeField, a: &Poly<PrimeField>) -> Poly<PrimeField> {
    let p = fp.p() as usize;
    fpoly::trim(fp, a.iter().step_by(p).cloned().collect())
}

fn squarefree(fp: &PrimeField, a: &Poly<PrimeField>) -> Vec<(Poly<PrimeField>, usize)> {
    let one = fpoly::one(fp);
    let mut out = Vec::new();
    let b = fpoly::derivative(fp, a);
    let p = fp.p() as usize;
    if b.is_empty() {
        for (g, m) in squarefree(fp, &pth_root(fp, a)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = fpoly::gcd(fp, a, &b);
    let mut w = fpoly::div_exact(fp, a, &c).unwrap();
    let mut i = 1;
    while w != one {
        let y = fpoly::gcd(fp, &w, &c);
        let z = fpoly::div_exact(fp, &w, &y).unwrap();
        if z.len() > 1 {
            out.push((z, i));
        }
        i += 1;
        w = y.clone();
        c = fpoly::div_exact(fp, &c, &y).unwrap();
    }
    if c != one {
        for (g, m) in squarefree(fp, &pth_root(fp, &c)) {
            out.push((g, m * p));
        }
    }
    out
}

fn distinct_degree(fp: &PrimeField, a: &Poly<PrimeField>) -> Vec<(Poly<PrimeField>, usize)> {
    let x = vec![0, 1];
    let mut out = Vec::new();
    let mut g = a.clone();
    let mut h = x.clone();
    let mut d = 1;
    while g.len() > 1 && 2 * d < g.len() {
        h = fpoly::powmod(fp, &h, fp.p(), &g);
        let gd = fpoly::gcd(fp, &g, &fpoly::sub(fp, &h, &x));
        if gd.len() > 1 {
            g = fpoly::div_exact(fp, &g, &gd).unwrap();
            h = fpoly::rem(fp, &h, &g);
            out.push((gd, d));
        }
        d += 1;
    }
    if g.len() > 1 {
        let dg = g.len() - 1;
        out.push((g, dg));
    }
    out
}

fn equal_degree(
    fp: &PrimeField,
    a: &Poly<PrimeField>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Poly<PrimeField>> {
    let n = a.len() - 1;
    if n == d {
        return vec![a.clone()];
    }
    let p = fp.p();
    loop {
        let r: Poly<PrimeField> =
            fpoly::trim(fp, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if r.len() < 2 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = r.clone();
            let mut acc = r.clone();
            for _ in 1..d {
                t = fpoly::mulmod(fp, &t, &t, a);
                acc = fpoly::add(fp, &acc, &t);
            }
            acc
        } else {
            // r^((p^d - 1)/2) = (r * r^p * ... * r^(p^(d-1)))^((p-1)/2)
            let mut t = r.clone();
            let mut norm = r.clone();
            for _ in 1..d {
                t = fpoly::powmod(fp, &t, p, a);
                norm = fpoly::mulmod(fp, &norm, &t, a);
            }
            let s = fpoly::powmod(fp, &norm, (p - 1) / 2, a);
            fpoly::sub(fp, &s, &fpoly::one(fp))
        };
        let g = fpoly::gcd(fp, a, &b);
        if g.len() > 1 && g.len() < a.len() {
            let h = fpoly::div_exact(fp, a, &g).unwrap();
            let mut out = equal_degree(fp, &g, d, rng);
            out.extend(equal_degree(fp, &h, d, rng));
            return out;
        }
    }
}

/// Decides irreducibility of a monic integer polynomial over Q by lifting a
/// squarefree factorization modulo a small prime and testing every factor
/// combination of degree at most half.
pub fn is_irreducible_over_q(f: &IntPoly) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    if f.gcd(&f.derivative()).degree() != Some(0) {
        return Ok(false);
    }
    let seed = default_seed();
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    let mut q = 2u64;
    while tried < 8 {
        q += 1;
        if !is_prime(q) {
            continue;
        }
        let fp = PrimeField::new(q)?;
        let a = f.reduce_mod(q);
        if fpoly::gcd(&fp, &a, &fpoly::derivative(&fp, &a)).len() != 1 {
            continue;
        }
        tried += 1;
        let fac: Vec<Vec<u64>> = factor_fp(&fp, &a, seed).into_iter().map(|(g, _)| g).collect();
        if fac.len() == 1 {
            return Ok(true);
        }
        if best.as_ref().is_none_or(|(_, b)| fac.len() < b.len()) {
            best = Some((q, fac));
        }
    }
    let (p, factors) = best.expect("some prime keeps f squarefree");
    let bound = f.l1_norm() * (BigInt::one() << n) * 2;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &factors, p, k);
    let r = lifted.len();
    for mask in 1u64..(1u64 << r) {
        if mask.count_ones() as usize > r / 2 {
            continue;
        }
        let deg: usize = (0..r)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| lifted[i].degree().unwrap())
            .sum();
        if deg == 0 || deg > n / 2 {
            continue;
        }
        let mut g = IntPoly::one();
        for (i, li) in lifted.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g = symmetric_mod(&(&g * li), &modulus);
            }
        }
        if f.rem_monic(&g).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn symmetric_mod(a: &IntPoly, m: &BigInt) -> IntPoly {
    let half: BigInt = m / 2;
    IntPoly::new(
        a.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn lift_int(a: &[u64]) -> IntPoly {
    IntPoly::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

/// Lifts `f = prod u_i mod p` to a factorization modulo `p^k`.
fn hensel_lift(f: &IntPoly, factors: &[Vec<u64>], p: u64, k: u32) -> Vec<IntPoly> {
    let fp = PrimeField::new(p).unwrap();
    let m = BigInt::from(p).pow(k);
    let mut out = Vec::new();
    let mut cur = symmetric_mod(f, &m);
    for (i, g) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            out.push(cur.clone());
            break;
        }
        let h = factors[i + 1..]
            .iter()
            .fold(fpoly::one(&fp), |acc, u| fpoly::mul(&fp, &acc, u));
        let (gl, hl) = lift_two(&fp, &cur, g, &h, k);
        out.push(gl);
        cur = hl;
    }
    out
}

fn lift_two(
    fp: &PrimeField,
    f: &IntPoly,
    g: &Poly<PrimeField>,
    h: &Poly<PrimeField>,
    k: u32,
) -> (IntPoly, IntPoly) {
    let p = BigInt::from(fp.p());
    let (one, _, t) = fpoly::ext_gcd(fp, g, h);
    debug_assert_eq!(one, vec![1]);
    let mut gl = lift_int(g);
    let mut hl = lift_int(h);
    let mut pj = p.clone();
    for _ in 1..k {
        let diff = f - &(&gl * &hl);
        let e = IntPoly::new(diff.coeffs().iter().map(|c| c / &pj).collect());
        let eb = e.reduce_mod(fp.p());
        let a = fpoly::rem(fp, &fpoly::mul(fp, &t, &eb), g);
        let b = fpoly::div_exact(fp, &fpoly::sub(fp, &eb, &fpoly::mul(fp, &a, h)), g)
            .expect("Hensel step divides exactly");
        gl = &gl + &lift_int(&a).scale(&pj);
        hl = &hl + &lift_int(&b).scale(&pj);
        pj *= &p;
    }
    (gl, hl)
}
