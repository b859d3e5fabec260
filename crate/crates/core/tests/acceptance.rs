//! Acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use nrhw::arith::factor::primes_in;
use nrhw::arith::IntLattice;
use nrhw::bgg::{check_reciprocity, dual_check};
use nrhw::numfield::{cyclotomic, quadratic, GaloisRing};
use nrhw::prime::{split_prime, PrimeIdeal};
use nrhw::strat::{algebra_mod_q, column_witness, radical, FqAlgebra, Radical};
use nrhw::tensor::local::{idempotents_at, residue_checks};
use nrhw::tensor::{check_sheaf_exact, filtration, is_exact, LatticeModule, ModuleMap, TensorSquare};

type Check = Result<(), String>;

fn fields() -> Vec<(&'static str, GaloisRing)> {
    vec![
        ("Z[sqrt2]", quadratic(2).unwrap()),
        ("Z[sqrt3]", quadratic(3).unwrap()),
        ("Z[i]", quadratic(-1).unwrap()),
        ("Z[zeta5]", cyclotomic(5).unwrap()),
        ("Z[zeta7]", cyclotomic(7).unwrap()),
    ]
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// One reduced algebra of the sweep.
struct Site {
    field: &'static str,
    p: u64,
    q: PrimeIdeal,
    algebra: FqAlgebra,
    radical: Radical,
}

struct Sweep {
    tensors: Vec<(&'static str, TensorSquare)>,
    sites: Vec<Site>,
}

fn sweep() -> Result<Sweep, String> {
    let tensors: Vec<(&'static str, TensorSquare)> =
        fields().into_iter().map(|(name, gr)| (name, TensorSquare::new(gr))).collect();
    let mut sites = Vec::new();
    for (name, ts) in &tensors {
        for p in primes_in(2, 50) {
            for q in split_prime(ts.ring(), p).map_err(|e| format!("{name} p={p}: {e}"))? {
                let algebra = algebra_mod_q(ts, &q).map_err(|e| format!("{name} p={p}: {e}"))?;
                let radical = radical(&algebra).map_err(|e| format!("{name} p={p}: {e}"))?;
                sites.push(Site { field: name, p, q, algebra, radical });
            }
        }
    }
    Ok(Sweep { tensors, sites })
}

fn basis_and_annihilation(sw: &Sweep) -> Check {
    for (name, ts) in &sw.tensors {
        let n = ts.degree();
        ensure(ts.a_product(n).is_zero(), || format!("{name}: product of A-elements is not zero"))?;
        let m = ts.triangular_matrix();
        for k in 0..n {
            ensure(!m[k][k].is_zero(), || format!("{name}: zero diagonal at {k}"))?;
            for i in k + 1..n {
                ensure(m[k][i].is_zero(), || format!("{name}: entry ({k}, {i}) above the diagonal"))?;
            }
        }
    }
    Ok(())
}

fn principal_kernels(sw: &Sweep) -> Check {
    for (name, ts) in sw.tensors.iter().filter(|(_, ts)| ts.degree() <= 5) {
        let n = ts.degree();
        for mask in 0u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
            let (_, ideal) = ts.ideal_of_subset(&subset);
            ensure(ideal == ts.kernel_lattice(&subset), || format!("{name}: subset {subset:?}"))?;
        }
    }
    Ok(())
}

fn idempotents(sw: &Sweep) -> Check {
    for (name, ts) in &sw.tensors {
        for p in primes_in(2, 50) {
            for q in split_prime(ts.ring(), p).map_err(|e| e.to_string())? {
                let idem = idempotents_at(ts, &q).map_err(|e| format!("{name} p={p}: {e}"))?;
                ensure(idem.xs.len() * q.e() == ts.degree(), || format!("{name} p={p}: idempotent count"))?;
            }
        }
    }
    Ok(())
}

fn semisimplicity(sw: &Sweep) -> Check {
    for s in &sw.sites {
        let semisimple = s.radical.dim() == 0;
        ensure(semisimple == (s.q.e() == 1), || format!("{} p={}: e={} semisimple={semisimple}", s.field, s.p, s.q.e()))?;
        let w = column_witness(&s.algebra, &s.radical);
        ensure(w.ok(), || format!("{} p={}: column witness {w:?}", s.field, s.p))?;
    }
    let spot = |field: &str, p: u64, dim: usize, rad: usize| -> Check {
        let s = sw.sites.iter().find(|s| s.field == field && s.p == p).ok_or("missing site")?;
        ensure(s.algebra.dim() == dim && s.radical.dim() == rad, || {
            format!("{field} p={p}: dim {} rad {}", s.algebra.dim(), s.radical.dim())
        })
    };
    spot("Z[sqrt2]", 2, 5, 3)?;
    spot("Z[zeta5]", 5, 30, 26)
}

fn reciprocity(sw: &Sweep) -> Check {
    let mut spots = Vec::new();
    for s in &sw.sites {
        let r = check_reciprocity(&s.algebra, &s.radical).map_err(|e| format!("{} p={}: {e}", s.field, s.p))?;
        ensure(r.ok(), || format!("{} p={}: {:?}", s.field, s.p, r.mismatches))?;
        spots.push((s.field, s.p, r.matrices.c));
    }
    let cartan = |field: &str, p: u64| spots.iter().find(|s| s.0 == field && s.1 == p).map(|s| s.2.clone());
    ensure(cartan("Z[sqrt2]", 2) == Some(vec![vec![2, 1], vec![1, 1]]), || "Z[sqrt2] p=2 Cartan".into())?;
    let want: Vec<Vec<usize>> = (1..=4).map(|i| (1..=4).map(|k| 5 - usize::max(i, k)).collect()).collect();
    ensure(cartan("Z[zeta5]", 5) == Some(want), || "Z[zeta5] p=5 Cartan".into())
}

fn duality(sw: &Sweep) -> Check {
    for (name, ts) in &sw.tensors {
        let primes: Vec<PrimeIdeal> = sw.sites.iter().filter(|s| s.field == *name).map(|s| s.q.clone()).collect();
        for i in 1..=ts.degree() {
            let r = dual_check(ts, i, &primes);
            ensure(r.ok(), || format!("{name} i={i}: {r:?}"))?;
        }
    }
    Ok(())
}

fn sheaf_examples() -> Check {
    let gr = quadratic(2).unwrap();
    let ts = TensorSquare::new(gr.clone());
    let (g, _) = ts.ideal_of_subset(&[0]);
    let a = LatticeModule::ideal(&ts, &g);
    let b = LatticeModule::free(&ts, 1);
    let c = LatticeModule::cyclic_quotient(&ts, &g);
    let id = ModuleMap::identity(ts.dim());
    ensure(is_exact(&a, &b, &c, &id, &id), || "sequence is not exact".into())?;
    let v = check_sheaf_exact(&ts, &a, &b, &c, &id, &id).map_err(|e| e.to_string())?;
    ensure(!v.is_sheaf_exact(), || "sheaf exact under the standard order".into())?;
    let rev = TensorSquare::with_order(gr, vec![1, 0]).map_err(|e| e.to_string())?;
    let v = check_sheaf_exact(&rev, &a, &b, &c, &id, &id).map_err(|e| e.to_string())?;
    ensure(v.is_sheaf_exact(), || "not sheaf exact under the reversed order".into())?;

    for d in [2, 3, 6, 7] {
        let ts = TensorSquare::new(quadratic(d).unwrap());
        let fl = filtration(&ts, &LatticeModule::free(&ts, 1)).map_err(|e| e.to_string())?;
        let image = ts.phi_image(&fl.layers()[1], ts.omega()[1]);
        let two_root = ts.ring().element_i64(&[0, 2]);
        let want = IntLattice::new(2, ts.ring().mul_matrix(&two_root)).map_err(|e| e.to_string())?;
        ensure(image == want, || format!("d={d}: image is not 2 sqrt(d) S"))?;
    }
    Ok(())
}

fn unramified_crt(sw: &Sweep) -> Check {
    for (name, ts) in &sw.tensors {
        for p in primes_in(2, 50) {
            for q in split_prime(ts.ring(), p).map_err(|e| e.to_string())? {
                let idem = idempotents_at(ts, &q).map_err(|e| e.to_string())?;
                let r = residue_checks(ts, &q, &idem);
                ensure(r.all_ok(), || format!("{name} p={p}: {r:?}"))?;
                ensure((q.e() == 1) == r.crt_bijective.is_some(), || format!("{name} p={p}: CRT verdict missing"))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let sw = sweep();
    let mut all = true;
    let mut report = |n: usize, title: &str, r: Check| {
        match &r {
            Ok(()) => println!("criterion {n}: PASS  {title}"),
            Err(e) => println!("criterion {n}: FAIL  {title}: {e}"),
        }
        all &= r.is_ok();
    };
    match &sw {
        Ok(sw) => {
            report(1, "basis and annihilation", basis_and_annihilation(sw));
            report(2, "principal-ideal kernels", principal_kernels(sw));
            report(3, "idempotents", idempotents(sw));
            report(4, "semisimplicity", semisimplicity(sw));
            report(5, "reciprocity", reciprocity(sw));
            report(6, "duality", duality(sw));
            report(7, "sheaf exactness examples", sheaf_examples());
            report(8, "unramified CRT and ramified nilpotency", unramified_crt(sw));
        }
        Err(e) => {
            for n in 1..=8 {
                report(n, "sweep", Err(e.clone()));
            }
        }
    }
    println!("acceptance finished in {:.1} s", start.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
