//! Report builders for each subcommand.

use nrhw::arith::factor::primes_in;
use nrhw::bgg::{check_reciprocity, local_dual};
use nrhw::prime::{inertia_group, split_prime, PrimeIdeal};
use nrhw::strat::{
    algebra_mod_q, center_check, column_witness, composition_closed, corner_data, corners_agree, duality_lattice,
    hom_module, projective, radical, HomModule,
};
use nrhw::tensor::local::{idempotents_at, residue_checks};
use nrhw::tensor::{check_sheaf_exact, filtration, LatticeModule, ModuleMap, TensorSquare};
use nrhw::Int;
use rayon::prelude::*;

use crate::report::{FieldSummary, PrimeRecord, Report, Verdict};
use crate::spec::FieldSpecFile;

/// Checks run by `verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Semisimplicity,
    Reciprocity,
    Duality,
    Sheaf,
    All,
}

/// What to compute for each prime.
#[derive(Clone, Copy, Debug, Default)]
struct Want {
    idempotents: bool,
    algebra: bool,
    structure: bool,
    bgg: bool,
    duality: bool,
}

fn summary(spec: &FieldSpecFile, ts: &TensorSquare) -> FieldSummary {
    FieldSummary {
        name: spec.name.clone(),
        degree: ts.degree(),
        f: spec.f.clone(),
        order: ts.omega().iter().map(|k| k + 1).collect(),
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|k| k + 1).collect()
}

fn base_record(ts: &TensorSquare, p: u64, idx: usize, g: usize, q: &PrimeIdeal) -> PrimeRecord {
    let e = q.e();
    let splitting = (1..=g)
        .map(|k| if e > 1 { format!("Q{k}^{e}") } else { format!("Q{k}") })
        .collect::<Vec<_>>()
        .join(" ");
    let mut rec = PrimeRecord { p, ideal: idx + 1, splitting, e, fdeg: q.fdeg(), ..Default::default() };
    rec.verdicts.push(Verdict::with_detail(
        "e f g = n",
        e * q.fdeg() * g == ts.degree(),
        format!("{e} * {} * {g}", q.fdeg()),
    ));
    match inertia_group(ts.galois(), q) {
        Ok(inertia) => {
            rec.inertia_order = inertia.order();
            rec.inertia = one_based(inertia.members());
            if let Ok(cosets) = ts.galois().cosets(inertia.members()) {
                rec.cosets = cosets.iter().map(|c| one_based(c)).collect();
            }
            rec.verdicts.push(Verdict::new("inertia order equals e", true));
        }
        Err(err) => rec.verdicts.push(Verdict::with_detail("inertia order equals e", false, err.to_string())),
    }
    rec
}

fn fill_record(ts: &TensorSquare, q: &PrimeIdeal, want: Want, rec: &mut PrimeRecord) {
    let v = &mut rec.verdicts;
    if want.idempotents {
        match idempotents_at(ts, q) {
            Ok(idem) => {
                v.push(Verdict::new("idempotents", true));
                let r = residue_checks(ts, q, &idem);
                v.push(Verdict::with_detail("residue classes and CRT", r.all_ok(), if r.all_ok() { String::new() } else { format!("{r:?}") }));
            }
            Err(err) => v.push(Verdict::with_detail("idempotents", false, err.to_string())),
        }
    }
    if want.duality {
        let bad: Vec<usize> = (1..=ts.degree()).filter(|&i| !local_dual(ts, i, q).ok()).collect();
        v.push(Verdict::with_detail("local duality", bad.is_empty(), if bad.is_empty() { String::new() } else { format!("fails for i in {bad:?}") }));
    }
    if !(want.algebra || want.structure || want.bgg) {
        return;
    }
    let a = match algebra_mod_q(ts, q) {
        Ok(a) => a,
        Err(err) => {
            v.push(Verdict::with_detail("reduced algebra", false, err.to_string()));
            return;
        }
    };
    rec.algebra_dim = Some(a.dim());
    if want.structure {
        v.push(Verdict::new("associative and unital", a.check_axioms()));
        v.push(Verdict::new("diagonal idempotents", a.check_idempotents()));
        v.push(Verdict::new("generated by neighbours", a.generators_span()));
        let c = center_check(&a);
        rec.center_dim = Some(c.dim);
        v.push(Verdict::new("center is F_Q[x]/(f)", c.ok(a.n())));
    }
    let rad = match radical(&a) {
        Ok(r) => r,
        Err(err) => {
            v.push(Verdict::with_detail("radical certificate", false, err.to_string()));
            return;
        }
    };
    rec.radical_dim = Some(rad.dim());
    let semisimple = rad.dim() == 0;
    rec.semisimple = Some(semisimple);
    v.push(Verdict::with_detail(
        "semisimple iff unramified",
        semisimple == (q.e() == 1),
        format!("e = {}, semisimple = {semisimple}", q.e()),
    ));
    if want.structure {
        let w = column_witness(&a, &rad);
        v.push(Verdict::with_detail("nilpotent column witness", w.ok(), format!("dim {}, |E| = {}", w.dim, w.coset_size)));
        v.push(Verdict::new("coset corners agree", corners_agree(&corner_data(&a))));
    }
    if want.bgg {
        match check_reciprocity(&a, &rad) {
            Ok(r) => {
                let mm = if r.mismatches.is_empty() { String::new() } else { format!("mismatches at {:?}", r.mismatches) };
                v.push(Verdict::with_detail("reciprocity V = D^T", r.v_is_dt, mm.clone()));
                v.push(Verdict::with_detail("D matches the coset closed form", r.closed_form, mm));
                v.push(Verdict::new("D unitriangular", r.unitriangular));
                v.push(Verdict::new("C = D^T D", r.cartan_is_dtd));
                v.push(Verdict::new("C symmetric", r.cartan_symmetric));
                v.push(Verdict::new("dimension audit", r.dimension_audit));
                if let Some(agree) = r.peeling_agrees {
                    v.push(Verdict::new("radical peeling agrees", agree));
                }
                rec.simple_dims = Some(r.simple_dims);
                rec.verma_dims = Some(r.verma_dims);
                rec.d = Some(r.matrices.d);
                rec.v = Some(r.matrices.v);
                rec.c = Some(r.matrices.c);
            }
            Err(err) => v.push(Verdict::with_detail("reciprocity", false, err.to_string())),
        }
    }
}

/// Records for every prime above `p`, or a failing verdict if `p` cannot be
/// split.
fn prime_records(ts: &TensorSquare, p: u64, want: Want) -> Result<Vec<PrimeRecord>, Verdict> {
    let qs = split_prime(ts.ring(), p).map_err(|e| Verdict::with_detail(&format!("split p = {p}"), false, e.to_string()))?;
    Ok(qs
        .par_iter()
        .enumerate()
        .map(|(idx, q)| {
            let mut rec = base_record(ts, p, idx, qs.len(), q);
            fill_record(ts, q, want, &mut rec);
            rec
        })
        .collect())
}

fn report(command: &str, spec: &FieldSpecFile, ts: &TensorSquare, primes: &[u64], want: Want, mut verdicts: Vec<Verdict>) -> Report {
    let results: Vec<Result<Vec<PrimeRecord>, Verdict>> = primes.par_iter().map(|&p| prime_records(ts, p, want)).collect();
    let mut records = Vec::new();
    for r in results {
        match r {
            Ok(rs) => records.extend(rs),
            Err(v) => verdicts.push(v),
        }
    }
    Report { command: command.to_string(), field: summary(spec, ts), primes: records, verdicts, suite: None }
}

fn field_verdicts(ts: &TensorSquare) -> Vec<Verdict> {
    let n = ts.degree();
    let m = ts.triangular_matrix();
    let triangular = (0..n).all(|k| !m[k][k].is_zero() && (k + 1..n).all(|i| m[k][i].is_zero()));
    let mut out = vec![
        Verdict::new("Galois data", true),
        Verdict::new("product of A-elements vanishes", ts.a_product(n).is_zero()),
        Verdict::new("phi matrix of partial products is triangular", triangular),
    ];
    if n <= 5 {
        let ok = (0u32..(1 << n)).all(|mask| {
            let subset: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
            ts.ideal_of_subset(&subset).1 == ts.kernel_lattice(&subset)
        });
        out.push(Verdict::new("principal ideals equal phi-kernels", ok));
    }
    out
}

fn duality_verdicts(ts: &TensorSquare) -> Vec<Verdict> {
    (1..=ts.degree())
        .into_par_iter()
        .map(|i| {
            let d = duality_lattice(ts, i);
            Verdict::with_detail(&format!("duality lattice P_{i}"), d.ok(), format!("rank {}", d.rank))
        })
        .collect()
}

fn sheaf_verdicts(ts: &TensorSquare) -> Vec<Verdict> {
    let n = ts.degree();
    let mut out: Vec<Verdict> = (1..=n).map(|i| Verdict::from_result(&format!("projective P_{i} in the category"), &projective(ts, i))).collect();
    let homs: nrhw::Result<Vec<Vec<HomModule>>> =
        (1..=n).map(|i| (1..=n).map(|j| hom_module(ts, i, j)).collect()).collect();
    match homs {
        Ok(h) => {
            out.push(Verdict::new("Hom ranks and colon ideals", true));
            out.push(Verdict::new("composition of Hom generators", composition_closed(ts, &h)));
        }
        Err(e) => out.push(Verdict::with_detail("Hom ranks and colon ideals", false, e.to_string())),
    }
    let free = filtration(ts, &LatticeModule::free(ts, 1)).map(|f| f.layer_ranks());
    let want: Vec<usize> = (0..=n).rev().map(|k| k * n).collect();
    out.push(Verdict::new("free module layers", free.as_ref().ok() == Some(&want)));

    let m = LatticeModule::free(ts, 1);
    let s = LatticeModule::phi_sum(ts);
    let sum = m.direct_sum(&s);
    let (dm, ds) = (m.ambient(), s.ambient());
    let unit = |i: usize, j: usize| Int::from(i64::from(i == j));
    let inc = ModuleMap::new((0..dm).map(|i| (0..dm + ds).map(|j| unit(i, j)).collect()).collect(), dm + ds);
    let proj = ModuleMap::new((0..dm + ds).map(|i| (0..ds).map(|j| unit(i, j + dm)).collect()).collect(), ds);
    let split = check_sheaf_exact(ts, &m, &sum, &s, &inc, &proj);
    out.push(match split {
        Ok(v) => Verdict::new("split sequence is sheaf exact", v.is_sheaf_exact()),
        Err(e) => Verdict::with_detail("split sequence is sheaf exact", false, e.to_string()),
    });
    out
}

pub fn field_check(command: &str, spec: &FieldSpecFile, ts: &TensorSquare) -> Report {
    report(command, spec, ts, &[], Want::default(), field_verdicts(ts))
}

pub fn split(command: &str, spec: &FieldSpecFile, ts: &TensorSquare, p: u64) -> Report {
    report(command, spec, ts, &[p], Want { idempotents: true, ..Want::default() }, Vec::new())
}

pub fn algebra(command: &str, spec: &FieldSpecFile, ts: &TensorSquare, p: u64) -> Report {
    report(command, spec, ts, &[p], Want { algebra: true, structure: true, ..Want::default() }, Vec::new())
}

pub fn bgg(command: &str, spec: &FieldSpecFile, ts: &TensorSquare, p: u64) -> Report {
    report(command, spec, ts, &[p], Want { algebra: true, bgg: true, ..Want::default() }, Vec::new())
}

pub fn verify(command: &str, spec: &FieldSpecFile, ts: &TensorSquare, lo: u64, hi: u64, suite: Suite) -> Report {
    let all = suite == Suite::All;
    let want = Want {
        idempotents: all,
        algebra: all || suite == Suite::Semisimplicity,
        structure: all,
        bgg: all || suite == Suite::Reciprocity,
        duality: all || suite == Suite::Duality,
    };
    let mut verdicts = Vec::new();
    if all {
        verdicts.extend(field_verdicts(ts));
    }
    if all || suite == Suite::Duality {
        verdicts.extend(duality_verdicts(ts));
    }
    if all || suite == Suite::Sheaf {
        verdicts.extend(sheaf_verdicts(ts));
    }
    let mut r = report(command, spec, ts, &primes_in(lo, hi), want, verdicts);
    r.suite = Some(r.counts());
    r
}
