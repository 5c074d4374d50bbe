//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits nonzero on any failure outside `KNOWN_UNATTAINABLE`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use oddsig::descent::{
    family_invariants, family_rational_descent, family_real_definability, weil_descent_order2, DescentStatus,
    FamilyTriple,
};
use oddsig::exactnum::{CyclotomicElement, GaloisElement};
use oddsig::matgroup::{closure, closure_in, ProjGroup, DEFAULT_BOUND};
use oddsig::plane::{
    c2_family_curve, is_automorphism, is_smooth, is_smooth_by_elimination, xabc_curve, PlaneCurve, ProjMap,
};
use oddsig::polyring::{distinct_root_count, SparsePoly};
use oddsig::ramify::{odd_signature_verdict, signature, signature_report, OddVerdict, Signature};
use oddsig::superell::{build_family, family_maps, qgonal_compose, qgonal_real_descent, QGonalStatus};
use oddsig::tables::{nonnormal_rows, quartic_fixtures, quartic_rows};
use oddsig::Error;

type Outcome = Result<String, String>;

/// Criteria that cannot hold as stated, with the reason printed next to FAIL.
const KNOWN_UNATTAINABLE: &[(u32, &str)] = &[(
    4,
    "with a3 = 2(i-1) the product a2*a3 = 4i is not real, so (-z : iy : x) does not map X to its conjugate \
     and no Weil descent can be run; the corrected fixture a3 = 2(1+i) is checked on the next line",
)];

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn sig(s: &str) -> Signature {
    s.parse().unwrap()
}

fn fermat() -> (PlaneCurve, Vec<ProjMap>) {
    let x = PlaneCurve::new(SparsePoly::from_int_terms(4, 3, &[(&[4, 0, 0], 1), (&[0, 4, 0], 1), (&[0, 0, 4], 1)]).unwrap())
        .unwrap();
    let one = int(4, 1);
    let gens = vec![
        ProjMap::diagonal([zeta(4, 1), one.clone(), one.clone()]).unwrap(),
        ProjMap::diagonal([one.clone(), zeta(4, 1), one]).unwrap(),
        ProjMap::permutation(4, [1, 2, 0]).unwrap(),
        ProjMap::permutation(4, [1, 0, 2]).unwrap(),
    ];
    (x, gens)
}

fn criterion_1() -> Outcome {
    let (x, gens) = fermat();
    let g = closure(&gens, DEFAULT_BOUND).map_err(|e| e.to_string())?;
    ensure!(g.order() == 96, "closure order {}", g.order());
    let s = signature(&x, &g).map_err(|e| e.to_string())?;
    ensure!(s == sig("(0; 2, 3, 8)"), "signature {s}");
    Ok(format!("|G| = 96, signature {s}"))
}

/// The order-2 generator built from s_k = zeta^k - zeta^-k in a Hankel pattern.
fn klein_involution() -> ProjMap {
    let s = |k: i64| &zeta(7, k) - &zeta(7, -k);
    let e = [[1, 4, 2], [4, 2, 1], [2, 1, 4]];
    ProjMap::new(e.iter().map(|r| r.iter().map(|&k| s(k)).collect()).collect()).unwrap()
}

fn criterion_2() -> Outcome {
    let x = PlaneCurve::new(
        SparsePoly::from_int_terms(7, 3, &[(&[0, 1, 3], 1), (&[1, 3, 0], 1), (&[3, 0, 1], 1)]).unwrap(),
    )
    .unwrap();
    let inv = klein_involution();
    ensure!(inv.pow(2).is_identity() && !inv.is_identity(), "generator is not an involution");
    let gens = vec![
        ProjMap::diagonal([zeta(7, 1), zeta(7, 2), zeta(7, 4)]).unwrap(),
        ProjMap::permutation(7, [1, 2, 0]).unwrap(),
        inv,
    ];
    for a in &gens {
        ensure!(is_automorphism(&x, a).unwrap().is_some(), "{a} is not an automorphism");
    }
    let g = closure(&gens, DEFAULT_BOUND).map_err(|e| e.to_string())?;
    ensure!(g.order() == 168, "closure order {}", g.order());
    let s = signature(&x, &g).map_err(|e| e.to_string())?;
    ensure!(s == sig("(0; 2, 3, 7)"), "signature {s}");
    Ok(format!("|G| = 168, signature {s}"))
}

fn iotas() -> Vec<ProjMap> {
    vec![
        ProjMap::from_ints(1, [[-1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap(),
        ProjMap::from_ints(1, [[1, 0, 0], [0, -1, 0], [0, 0, 1]]).unwrap(),
    ]
}

fn criterion_3() -> Outcome {
    let x = xabc_curve(&int(1, 1), &int(1, 3), &int(1, 5)).unwrap();
    ensure!(is_smooth(&x) && is_smooth_by_elimination(&x), "X_{{1,3,5}} reported singular");
    let g = closure(&iotas(), DEFAULT_BOUND).unwrap();
    ensure!(g.order() == 4, "order {}", g.order());
    let s = signature(&x, &g).map_err(|e| e.to_string())?;
    ensure!(s == sig("(0; 2, 2, 2, 2, 2, 2)"), "signature {s}");
    let v = odd_signature_verdict(&s);
    ensure!(v == OddVerdict::Inconclusive, "verdict {v}");
    Ok(format!("smooth, |G| = 4, signature {s}, {v}"))
}

fn c2_curve(a3: CyclotomicElement) -> PlaneCurve {
    let one = int(4, 1);
    c2_family_curve(&one, &(&one - &zeta(4, 1)), &a3).unwrap()
}

fn c2_maps() -> (ProjMap, ProjMap) {
    let o = || int(4, 0);
    let mu = ProjMap::new(vec![vec![o(), o(), int(4, -1)], vec![o(), zeta(4, 1), o()], vec![int(4, 1), o(), o()]])
        .unwrap();
    let nu = ProjMap::from_ints(4, [[1, 0, 0], [0, -1, 0], [0, 0, 1]]).unwrap();
    (mu, nu)
}

fn c2_check(x: &PlaneCurve) -> Outcome {
    let (mu, nu) = c2_maps();
    ensure!(is_automorphism(x, &nu).unwrap().is_some(), "nu is not an automorphism");
    let g = closure_in(std::slice::from_ref(&nu), 4, DEFAULT_BOUND).unwrap();
    let s = signature(x, &g).map_err(|e| e.to_string())?;
    ensure!(s == sig("(1; 2, 2, 2, 2)"), "signature {s}");
    let v = weil_descent_order2(x, &mu, &g).map_err(|e| format!("nu ok, signature {s}; descent: {e}"))?;
    ensure!(v.status == DescentStatus::Obstructed, "status {}", v.status);
    ensure!(v.defects.len() == 2, "{} candidates", v.defects.len());
    ensure!(v.defects[0].candidate == mu && v.defects[0].defect == nu, "conj(mu) mu = {}", v.defects[0].defect);
    ensure!(
        v.defects[1].candidate == mu.compose(&nu) && v.defects[1].defect == nu,
        "conj(mu nu) mu nu = {}",
        v.defects[1].defect
    );
    Ok(format!("nu automorphism, signature {s}, OBSTRUCTED with both defects = nu"))
}

fn criterion_4() -> Outcome {
    c2_check(&c2_curve(&(&zeta(4, 1) - &int(4, 1)) * &int(4, 2)))
}

fn criterion_4_corrected() -> Outcome {
    c2_check(&c2_curve(&(&zeta(4, 1) + &int(4, 1)) * &int(4, 2)))
}

fn criterion_5() -> Outcome {
    let odd_rows = ["PSL2(7)", "S3", "D4", "S4", "C4^2:S3", "C4(C2)^2", "C4A4", "C6", "C9", "C3"];
    let mut checked = 0;
    for fx in quartic_fixtures().map_err(|e| e.to_string())? {
        let g = closure(&fx.generators, DEFAULT_BOUND).map_err(|e| e.to_string())?;
        let s = signature(&fx.curve, &g).map_err(|e| e.to_string())?;
        ensure!(s == fx.row.signature, "{}: computed {s}, table {}", fx.row.label, fx.row.signature);
        let expected = if odd_rows.contains(&fx.row.label) { OddVerdict::Odd } else { OddVerdict::Inconclusive };
        let v = odd_signature_verdict(&s);
        ensure!(v == expected, "{}: {v}", fx.row.label);
        checked += 1;
    }
    ensure!(checked == 12 && quartic_rows().len() == 12, "{checked} quartic rows");
    let rows = nonnormal_rows();
    ensure!(rows.len() == 7, "{} q-gonal rows", rows.len());
    let mut instances = 0;
    for row in &rows {
        let qs: Vec<u32> = [3, 5, 7, 11, 13].into_iter().filter(|&q| row.q.admits(q)).collect();
        ensure!(!qs.is_empty(), "{} has no admissible q", row.group);
        for q in qs {
            let s = row.signature(q).map_err(|e| e.to_string())?;
            ensure!(odd_signature_verdict(&s) == OddVerdict::Odd, "{} q = {q}: {s} not odd", row.group);
            instances += 1;
        }
    }
    Ok(format!("12 quartic rows (10 ODD, 2 INCONCLUSIVE), 7 q-gonal rows ODD over {instances} instances"))
}

fn criterion_6() -> Outcome {
    let even = qgonal_real_descent(3, 3, 2).map_err(|e| e.to_string())?;
    ensure!(even.status == QGonalStatus::Obstructed, "(3,3,2): {}", even.status);
    let odd = qgonal_real_descent(3, 3, 3).map_err(|e| e.to_string())?;
    ensure!(odd.status == QGonalStatus::Definable, "(3,3,3): {}", odd.status);
    ensure!(odd.witness.map(|w| w.1) == Some(1), "witness {:?}", odd.witness);
    for (m, n) in [(3, 2), (3, 3)] {
        let maps = family_maps(3, &build_family(m, n).unwrap()).unwrap();
        let sigma = GaloisElement::conjugation(maps.order);
        for k in 0..n {
            let phi = qgonal_compose(&maps.mu, &maps.nu.pow(k));
            let lhs = qgonal_compose(&phi.conjugate(&sigma).unwrap(), &phi);
            let rhs = qgonal_compose(&maps.tau_prime.pow(2 * k + 1), &maps.nu.pow(2 * k + 1));
            ensure!(lhs == rhs, "(m, n) = ({m}, {n}), k = {k}: {lhs} != {rhs}");
        }
    }
    Ok("(3,3,2) OBSTRUCTED; (3,3,3) DEFINABLE with k = 1; closed form holds for all k".into())
}

fn triple(a: CyclotomicElement, b: CyclotomicElement, c: CyclotomicElement) -> FamilyTriple {
    FamilyTriple::new(a, b, c).unwrap()
}

fn criterion_7() -> Outcome {
    let one = int(4, 1);
    let i = zeta(4, 1);
    let cases = [
        ("g1", triple(gauss(1, 2), gauss(1, -2), int(4, 5)), ProjMap::permutation(4, [0, 2, 1]).unwrap()),
        (
            "g3",
            triple(gauss(0, 1), gauss(0, 3), int(4, 5)),
            ProjMap::diagonal([i.clone(), one.clone(), one.clone()]).unwrap(),
        ),
        ("g4", triple(int(4, 1), gauss(0, 3), gauss(0, 5)), ProjMap::diagonal([one.clone(), one, i]).unwrap()),
    ];
    for (name, t, mu) in cases {
        let r = family_real_definability(&t).map_err(|e| format!("{name}: {e}"))?;
        let matched = r.matched.as_ref().map(|g| g.name.as_str());
        ensure!(matched == Some(name), "{name}: matched {matched:?}");
        ensure!(r.verdict.status == DescentStatus::Definable, "{name}: {}", r.verdict.status);
        ensure!(r.verdict.witness.as_ref() == Some(&mu), "{name}: witness {:?}", r.verdict.witness);
    }
    match family_real_definability(&triple(int(1, 1), int(1, 1), int(1, 1))) {
        Err(Error::ImpossibleCase(_)) => {}
        other => return Err(format!("3-cycle fixture gave {other:?}")),
    }
    Ok("g1 -> (x : z : y), g3 -> (ix : y : z), g4 -> (x : y : iz) DEFINABLE; 3-cycle raises ImpossibleCase".into())
}

fn criterion_8() -> Outcome {
    let t = triple(gauss(1, 2), gauss(1, -2), int(4, 5));
    let x = t.curve().unwrap();
    ensure!(is_smooth(&x), "example curve singular");
    let sq: Vec<CyclotomicElement> = t.to_array().iter().map(|a| a * a).collect();
    ensure!(sq[0] != sq[1] && sq[0] != sq[2] && sq[1] != sq[2], "squares not distinct");
    let j = family_invariants(&t);
    ensure!(j[..3].iter().all(CyclotomicElement::is_rational), "j1, j2, j3 = {}, {}, {}", j[0], j[1], j[2]);
    let rd = family_rational_descent(&t, &[GaloisElement::conjugation(4)]).map_err(|e| e.to_string())?;
    ensure!(rd.status == DescentStatus::Definable, "status {}", rd.status);
    let f = rd
        .assignments
        .iter()
        .find(|a| !a.sigma.is_identity())
        .map(|a| a.map.clone())
        .ok_or("no assignment for conjugation")?;
    ensure!(f == ProjMap::permutation(4, [0, 2, 1]).unwrap(), "f_sigma = {f}");
    ensure!(f.compose(&f).is_identity(), "f_sigma^2 = {}", f.compose(&f));
    Ok(format!("j = ({}, {}, {}) rational; f_sigma = {f}, f_sigma^2 = id", j[0], j[1], j[2]))
}

fn runner() -> TestRunner {
    let config = Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(name: &str, s: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner().run(&s, test).map_err(|e| format!("{name}: {e}"))
}

fn group_fixtures() -> Vec<(String, PlaneCurve, ProjGroup)> {
    let mut out: Vec<(String, PlaneCurve, ProjGroup)> = quartic_fixtures()
        .unwrap()
        .into_iter()
        .map(|fx| {
            let g = closure(&fx.generators, DEFAULT_BOUND).unwrap();
            (fx.row.label.to_string(), fx.curve, g)
        })
        .collect();
    let x = xabc_curve(&int(1, 1), &int(1, 3), &int(1, 5)).unwrap();
    for (k, a) in iotas().into_iter().enumerate() {
        out.push((format!("X_{{1,3,5}} iota_{}", k + 1), x.clone(), closure(&[a], DEFAULT_BOUND).unwrap()));
    }
    out
}

fn criterion_9() -> Outcome {
    run("field axioms", element_triple(), |(a, b, c)| {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
        Ok(())
    })?;
    let galois = element_triple().prop_flat_map(|(a, b, _)| {
        let n = a.order();
        (Just(a), Just(b), galois_exponent(n))
    });
    run("Galois homomorphism", galois, |(a, b, k)| {
        let s = GaloisElement::new(a.order(), k).unwrap();
        let g = |x: &CyclotomicElement| x.galois(&s).unwrap();
        prop_assert_eq!(g(&(&a * &b)), &g(&a) * &g(&b));
        prop_assert_eq!(g(&(&a + &b)), &g(&a) + &g(&b));
        prop_assert_eq!(a.conj().conj(), a.clone());
        Ok(())
    })?;
    let tol = 1e-9;
    let embedded = element_triple().prop_flat_map(|(a, b, _)| {
        let n = a.order();
        (Just(a), Just(b), galois_exponent(n))
    });
    run("complex embedding", embedded, |(a, b, k)| {
        let (ea, eb) = (embed(&a), embed(&b));
        let scale = ea.norm() * eb.norm();
        prop_assert!(close(embed(&(&a * &b)), ea * eb, scale, tol), "product {} {}", a, b);
        prop_assert!(close(embed(&(&a + &b)), ea + eb, ea.norm() + eb.norm(), tol), "sum");
        prop_assert!(close(embed(&(&a - &b)), ea - eb, ea.norm() + eb.norm(), tol), "difference");
        if !b.is_zero() {
            let q = a.checked_div(&b).unwrap();
            prop_assert!(close(embed(&q), ea / eb, (ea / eb).norm(), tol), "quotient {} / {}", a, b);
        }
        let s = GaloisElement::new(a.order(), k).unwrap();
        prop_assert!(close(embed(&a.galois(&s).unwrap()), embed_at(&a, k), ea.norm(), tol), "galois");
        prop_assert!(close(embed(&a.conj()), ea.conj(), ea.norm(), tol), "conjugation");
        Ok(())
    })?;
    let fixtures = group_fixtures();
    for (name, x, g) in &fixtures {
        let report = signature_report(x, g).map_err(|e| format!("{name}: {e}"))?;
        let order = g.order() as u64;
        let total = report.signature.ramification_total(order).map_err(|e| format!("{name}: {e}"))?;
        let genus = report.signature.source_genus(order).map_err(|e| format!("{name}: {e}"))?;
        ensure!(genus == 3, "{name}: Riemann-Hurwitz gives genus {genus}");
        ensure!(
            report.classes.iter().all(|c| c.exact_stabilizer_points >= 0),
            "{name}: negative stabilizer count"
        );
        let direct = fixed_point_total(x, g);
        ensure!(direct == total, "{name}: sum |Fix(g)| = {direct}, ramification total {total}");
        ensure!(report.ledger.fixed_point_total == direct, "{name}: report ledger {}", report.ledger.fixed_point_total);
    }
    Ok(format!(
        "3 x 1000 randomized cases (axioms, Galois laws, embedding at 1e-9); ledger on {} group fixtures",
        fixtures.len()
    ))
}

fn criterion_10() -> Outcome {
    let mut groups = 0;
    for (name, _, g) in group_fixtures() {
        if g.order() <= 24 {
            check_multiplication_table(&g).map_err(|e| format!("{name}: {e}"))?;
            groups += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut repeated = 0;
    for case in 0..200 {
        let coeffs: Vec<i64> = if case % 2 == 0 {
            (0..5).map(|_| rng.gen_range(-9..=9)).collect()
        } else {
            let size = rng.gen_range(1..=3);
            let pool: Vec<(i64, i64)> = (0..size)
                .map(|_| {
                    if rng.gen_bool(0.15) {
                        (1, 0)
                    } else {
                        (rng.gen_range(-4..=4), rng.gen_range(1..=4))
                    }
                })
                .collect();
            let mut p = vec![1i64];
            for _ in 0..4 {
                let (u, v) = pool[rng.gen_range(0..pool.len())];
                let mut next = vec![0i64; p.len() + 1];
                for (k, c) in p.iter().enumerate() {
                    next[k + 1] += c * u;
                    next[k] += c * v;
                }
                p = next;
            }
            p
        };
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let terms: Vec<(Vec<u32>, i64)> =
            coeffs.iter().enumerate().map(|(k, &c)| (vec![k as u32, 4 - k as u32], c)).collect();
        let refs: Vec<(&[u32], i64)> = terms.iter().map(|(e, c)| (e.as_slice(), *c)).collect();
        let f = SparsePoly::from_int_terms(1, 2, &refs).unwrap();
        let exact = distinct_root_count(&f).unwrap();
        let numeric = numeric_distinct_roots(&coeffs, 1e-6);
        ensure!(exact == numeric, "form {coeffs:?}: exact {exact}, numeric {numeric}");
        if exact < 4 {
            repeated += 1;
        }
    }
    Ok(format!(
        "{groups} multiplication tables verified; 200 binary quartics agree ({repeated} with repeated roots)"
    ))
}

fn main() -> ExitCode {
    let criteria: Vec<(u32, &str, fn() -> Outcome)> = vec![
        (1, "Fermat quartic group and signature", criterion_1),
        (2, "Klein quartic group and signature", criterion_2),
        (3, "X_{1,3,5} automorphisms and verdict", criterion_3),
        (4, "C2 quartic with a3 = 2(i-1)", criterion_4),
        (5, "odd-signature sweep", criterion_5),
        (6, "q-gonal real descent", criterion_6),
        (7, "X_{a,b,c} real descent cases", criterion_7),
        (8, "rational descent example", criterion_8),
        (9, "property suites", criterion_9),
        (10, "brute-force oracles", criterion_10),
    ];
    let mut unexpected = 0;
    for (id, title, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2}: PASS  {title}: {detail} [{secs:.1}s]"),
            Err(reason) => {
                println!("criterion {id:>2}: FAIL  {title}: {reason} [{secs:.1}s]");
                match KNOWN_UNATTAINABLE.iter().find(|(k, _)| *k == id) {
                    Some((_, why)) => println!("              known: {why}"),
                    None => unexpected += 1,
                }
            }
        }
        if id == 4 {
            match criterion_4_corrected() {
                Ok(detail) => println!("criterion  4: PASS  C2 quartic with a3 = 2(1+i): {detail}"),
                Err(reason) => {
                    println!("criterion  4: FAIL  C2 quartic with a3 = 2(1+i): {reason}");
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
