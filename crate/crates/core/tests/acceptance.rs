//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

mod support;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use signlab::adversary::{
    adv_ratio, build_and_certificate, build_or_certificate, spectral_norm, SymMatrix,
};
use signlab::composition::{check_supermultiplicativity, compose_functions, compose_witnesses, iterate_compose};
use signlab::cube::{correlation, l1_norm, BoolFunction};
use signlab::degree::{
    approx_degree, extract_dual_witness, is_degree_at_most, sign_degree, verify_dual_witness, Alpha,
    DegreeCertificate,
};
use signlab::formula::{build_minsky_papert, parse};
use signlab::sweep::sweep_formula_bound;

use support::{integer_representation_exists, random_functions, representation_holds, witness_holds};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Both certificates of a degree answer, re-checked by the test-side oracles.
fn certified(f: &BoolFunction, c: &DegreeCertificate) -> Result<(), String> {
    ensure(representation_holds(f, &c.representation, &c.alpha), || {
        format!("representation for {f} fails independent check")
    })?;
    match (&c.witness, c.degree) {
        (None, 0) => Ok(()),
        (Some(w), d) if w.claimed_degree == d => ensure(witness_holds(f, w, &c.alpha), || {
            format!("witness for {f} fails independent check")
        }),
        _ => Err(format!("witness missing or mislabelled for {f}")),
    }
}

fn within(budget: Duration, start: Instant, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < budget, || format!("{what} took {took:.2?}, budget {budget:?}"))
}

fn basic_gates() -> Check {
    for k in 2..=4 {
        for (name, f) in [("AND", BoolFunction::and(k)), ("OR", BoolFunction::or(k))] {
            let start = Instant::now();
            let c = sign_degree(&f).map_err(|e| e.to_string())?;
            within(Duration::from_secs(1), start, &format!("{name}_{k}"))?;
            ensure(c.degree == 1, || format!("sign_degree({name}_{k}) = {}", c.degree))?;
            certified(&f, &c)?;
        }
    }
    Ok("AND_k, OR_k have sign degree 1 for k = 2, 3, 4".into())
}

fn parity_tightness() -> Check {
    let formula = parse("(x1 & !x2) | (!x1 & x2)").map_err(|e| e.to_string())?;
    let f = formula.to_function(2).map_err(|e| e.to_string())?;
    let c = sign_degree(&f).map_err(|e| e.to_string())?;
    let root = formula.size().isqrt();
    ensure(c.degree == 2 && root == 2, || format!("size-4 XOR formula: degree {}, ⌊√4⌋ = {root}", c.degree))?;
    certified(&f, &c)?;
    for k in 1..=4 {
        let f = BoolFunction::parity(k);
        let c = sign_degree(&f).map_err(|e| e.to_string())?;
        ensure(c.degree == k, || format!("sign_degree(XOR_{k}) = {}", c.degree))?;
        certified(&f, &c)?;
    }
    Ok("XOR formula of size 4 has degree 2; XOR_k has degree k for k ≤ 4".into())
}

fn minsky_papert() -> Check {
    let f = build_minsky_papert(2)
        .and_then(|mp| mp.to_function(8))
        .map_err(|e| e.to_string())?;
    let inf = Alpha::Infinity;
    let rep1 = is_degree_at_most(&f, 1, &inf).map_err(|e| e.to_string())?;
    ensure(rep1.is_none(), || "degree-1 LP unexpectedly feasible".into())?;
    let w = extract_dual_witness(&f, 1, &inf).map_err(|e| e.to_string())?;
    ensure(w.claimed_degree == 2 && witness_holds(&f, &w, &inf), || "degree-2 lower bound witness rejected".into())?;
    let rep2 = is_degree_at_most(&f, 2, &inf)
        .map_err(|e| e.to_string())?
        .ok_or("degree-2 LP infeasible")?;
    ensure(representation_holds(&f, &rep2, &inf), || "degree-2 representation rejected".into())?;
    Ok("OR_2 ∘ AND_4 on 8 variables: infeasible at 1, feasible at 2, both certified".into())
}

fn composition_pairs() -> Check {
    let inf = Alpha::Infinity;
    let funcs = support::all_functions(2);
    let certs: Vec<DegreeCertificate> = funcs
        .iter()
        .map(|f| sign_degree(f).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let mut composed_checked = 0;
    for (f, cf) in funcs.iter().zip(&certs) {
        for (g, cg) in funcs.iter().zip(&certs) {
            let fg = compose_functions(f, g).map_err(|e| e.to_string())?;
            let product = cf.degree * cg.degree;
            // Only the lower bound matters; stop the LP ladder at the product.
            if product > 0 {
                let below = is_degree_at_most(&fg, product - 1, &inf).map_err(|e| e.to_string())?;
                ensure(below.is_none(), || format!("deg({f}∘{g}) < {product}"))?;
            }
            if cg.degree == 0 {
                continue;
            }
            let (Some(p), Some(q)) = (&cf.witness, &cg.witness) else {
                // f constant: there is no outer witness to compose.
                continue;
            };
            let h = compose_witnesses(f, g, p, q).map_err(|e| format!("{f}∘{g}: {e}"))?;
            ensure(verify_dual_witness(&fg, &h, &inf).ok() && witness_holds(&fg, &h, &inf), || {
                format!("composed witness for {f}∘{g} rejected")
            })?;
            ensure(l1_norm(&h.table).is_one(), || format!("ℓ₁ of composed witness for {f}∘{g} is not 1"))?;
            let lhs = correlation(&fg, &h.table).map_err(|e| e.to_string())?;
            let rhs = correlation(f, &p.table).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("{f}∘{g}: ⟨f∘g, h⟩ = {lhs} but ⟨f, p⟩ = {rhs}"))?;
            composed_checked += 1;
        }
    }
    Ok(format!("256 pairs satisfy the product bound; {composed_checked} composed witnesses verified exactly"))
}

fn finite_alpha() -> Check {
    let two = Alpha::integer(2).map_err(|e| e.to_string())?;
    let xor2 = BoolFunction::parity(2);
    let r = check_supermultiplicativity(&xor2, &xor2, &two).map_err(|e| e.to_string())?;
    let h = r.certificate.as_ref().ok_or("no composed certificate")?;
    let xor4 = BoolFunction::parity(4);
    ensure(r.certificate_verified && h.claimed_degree == 4 && witness_holds(&xor4, h, &two), || {
        "composed witness does not certify deg_2(XOR_4) ≥ 4".into()
    })?;
    let c = approx_degree(&xor4, &two).map_err(|e| e.to_string())?;
    ensure(c.degree == 4, || format!("deg_2(XOR_4) = {}", c.degree))?;
    certified(&xor4, &c)?;
    Ok("composed witness certifies deg_2(XOR_4) ≥ 4; LP gives exactly 4".into())
}

fn iterated() -> Check {
    for f in support::all_functions(2) {
        let d = sign_degree(&f).map_err(|e| e.to_string())?.degree;
        let f2 = iterate_compose(&f, 2).map_err(|e| e.to_string())?;
        ensure(f2.arity() == 4, || "f^(2) should have 4 inputs".into())?;
        if d > 0 {
            let below = is_degree_at_most(&f2, d * d - 1, &Alpha::Infinity).map_err(|e| e.to_string())?;
            ensure(below.is_none(), || format!("deg({f}^(2)) < {}", d * d))?;
        }
    }
    Ok("deg(f^(2)) ≥ deg(f)² for all 16 two-input f".into())
}

fn formula_sweep() -> Check {
    let report = sweep_formula_bound(6, 6).map_err(|e| e.to_string())?;
    if let Some(v) = report.violations.first() {
        return Err(format!("{} exceeds degree {}", v.formula, v.bound));
    }
    let formulas: usize = report.sizes.iter().map(|s| s.formulas).sum();
    Ok(format!(
        "{formulas} orbit representatives, {} distinct functions, all within ⌊√s⌋",
        report.distinct_functions()
    ))
}

fn adversary() -> Check {
    for k in 1..=8 {
        let or = adv_ratio(&BoolFunction::or(k), &build_or_certificate(k).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let and = adv_ratio(&BoolFunction::and(k), &build_and_certificate(k).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let root = (k as f64).sqrt();
        ensure((or.ratio - root).abs() <= 1e-6 && (and.ratio - root).abs() <= 1e-6, || {
            format!("k={k}: OR ratio {}, AND ratio {}, expected {root}", or.ratio, and.ratio)
        })?;
    }
    let close = |m: &SymMatrix, expected: f64, what: &str| -> Result<(), String> {
        let got = spectral_norm(m).map_err(|e| e.to_string())?;
        ensure((got - expected).abs() <= 1e-7, || format!("{what}: {got} vs {expected}"))
    };
    for k in 1..=16 {
        close(&SymMatrix::identity(k), 1.0, "identity")?;
        close(&SymMatrix::from_fn(k, |_, _| 1.0), k as f64, "all-ones")?;
        let star = SymMatrix::from_fn(k + 1, |i, j| if (i == 0) != (j == 0) { 1.0 } else { 0.0 });
        close(&star, (k as f64).sqrt(), "star")?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..200 {
        let (a, b, c): (f64, f64, f64) = (rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let mid = (a + c) / 2.0;
        let rad = (((a - c) / 2.0).powi(2) + b * b).sqrt();
        let m = SymMatrix::from_rows(&[vec![a, b], vec![b, c]]).map_err(|e| e.to_string())?;
        close(&m, mid.abs() + rad, "2×2")?;
    }
    Ok("star ratios equal √k for k ≤ 8; spectral norms match closed forms".into())
}

fn soundness() -> Check {
    let inf = Alpha::Infinity;
    let two = Alpha::integer(2).map_err(|e| e.to_string())?;
    let mut oracle: HashMap<(usize, Vec<i8>, usize), bool> = HashMap::new();
    let mut oracle_calls = 0;
    for f in random_functions(0, 500, 3) {
        for alpha in [&inf, &two] {
            let c = approx_degree(&f, alpha).map_err(|e| e.to_string())?;
            certified(&f, &c)?;
        }
        for d in 0..=f.arity().min(2) {
            let lp = is_degree_at_most(&f, d, &inf).map_err(|e| e.to_string())?.is_some();
            let brute = *oracle
                .entry((f.arity(), f.values().to_vec(), d))
                .or_insert_with(|| {
                    oracle_calls += 1;
                    integer_representation_exists(&f, d, 16)
                });
            ensure(lp == brute, || format!("{f} at degree {d}: LP says {lp}, integer search says {brute}"))?;
        }
    }
    Ok(format!("500 functions certified for α ∈ {{∞, 2}}; LP agrees with integer search on {oracle_calls} distinct cases"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Check); 9] = [
        ("1 basic gates", Duration::from_secs(6), basic_gates),
        ("2 parity tightness", Duration::from_secs(5), parity_tightness),
        ("3 Minsky–Papert n=2", Duration::from_secs(60), minsky_papert),
        ("4 composition, all 2-input pairs", Duration::from_secs(120), composition_pairs),
        ("5 composition, α = 2", Duration::from_secs(30), finite_alpha),
        ("6 iterated composition", Duration::from_secs(60), iterated),
        ("7 formula sweep, size ≤ 6, ≤ 6 vars", Duration::from_secs(600), formula_sweep),
        ("8 adversary certificates", Duration::from_secs(30), adversary),
        ("9 certificate soundness", Duration::from_secs(600), soundness),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run().and_then(|detail| within(budget, start, name).map(|()| detail));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS  {name:<38} {took:>9.2?}  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name:<38} {took:>9.2?}  {why}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 9 criteria failed");
        ExitCode::FAILURE
    }
}
