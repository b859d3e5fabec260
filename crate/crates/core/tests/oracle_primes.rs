//! Splitting types from classical closed forms: Legendre symbols for
//! `Z[√d]` and multiplicative orders for `Z[ζ_ℓ]`.

use nrhw::arith::factor::primes_in;
use nrhw::numfield::{cyclotomic, quadratic, GaloisRing};
use nrhw::prime::{inertia_group, split_prime};

/// `(g, e, f)` of `p` in the ring.
fn observed(gr: &GaloisRing, p: u64) -> (usize, usize, usize) {
    let qs = split_prime(gr.ring(), p).unwrap();
    for q in &qs {
        assert_eq!(q.e(), qs[0].e());
        assert_eq!(q.fdeg(), qs[0].fdeg());
        assert_eq!(inertia_group(gr, q).unwrap().order(), q.e());
    }
    (qs.len(), qs[0].e(), qs[0].fdeg())
}

fn powmod(b: i64, mut e: u64, m: u64) -> u64 {
    let m = m as i128;
    let mut b = (b as i128).rem_euclid(m);
    let mut r = 1i128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r as u64
}

fn quadratic_type(d: i64, p: u64) -> (usize, usize, usize) {
    if (4 * d).rem_euclid(p as i64) == 0 {
        (1, 2, 1)
    } else if powmod(d, (p - 1) / 2, p) == 1 {
        (2, 1, 1)
    } else {
        (1, 1, 2)
    }
}

fn cyclotomic_type(l: u64, p: u64) -> (usize, usize, usize) {
    if p == l {
        return (1, (l - 1) as usize, 1);
    }
    let f = (1..).find(|&k| powmod(p as i64, k, l) == 1).unwrap() as usize;
    ((l as usize - 1) / f, 1, f)
}

#[test]
fn quadratic_fields() {
    for d in [2, 3, -1, 6, 7, -2, -5] {
        let gr = quadratic(d).unwrap();
        for p in primes_in(2, 50) {
            assert_eq!(observed(&gr, p), quadratic_type(d, p), "d={d} p={p}");
        }
    }
}

#[test]
fn cyclotomic_fields() {
    for l in [3u64, 5, 7] {
        let gr = cyclotomic(l as usize).unwrap();
        for p in primes_in(2, 50) {
            assert_eq!(observed(&gr, p), cyclotomic_type(l, p), "l={l} p={p}");
        }
    }
}

#[test]
fn frozen_examples() {
    assert_eq!(quadratic_type(2, 2), (1, 2, 1));
    assert_eq!(quadratic_type(2, 7), (2, 1, 1));
    assert_eq!(quadratic_type(2, 3), (1, 1, 2));
    assert_eq!(cyclotomic_type(5, 11), (4, 1, 1));
    assert_eq!(cyclotomic_type(7, 2), (2, 1, 3));
}
