//! The reproduce suite: every desk-scale claim as a named, anchored check.

mod oracle;

use std::collections::HashMap;
use std::time::Duration;

use anyhow::{bail, Result};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use signlab::adversary::{
    adv_ratio_with, build_and_certificate, build_or_certificate, spectral_norm_with, AdversaryCertificate,
    PowerIteration, SymMatrix,
};
use signlab::composition::{check_supermultiplicativity, compose_functions, compose_witnesses, iterate_compose};
use signlab::cube::{correlation, l1_norm, BoolFunction};
use signlab::degree::{
    approx_degree, extract_dual_witness, is_degree_at_most, sign_degree, verify_dual_witness, Alpha,
    DegreeCertificate, DualWitness,
};
use signlab::formula::{build_minsky_papert, parse};
use signlab::sweep::{minimal_formula_sizes, sweep_formula_bound};

use crate::report::{with_timeout, Basis, Line, Status};

pub const GROUPS: &[&str] = &[
    "gates",
    "parity",
    "minsky-papert",
    "composition",
    "iterate",
    "sweep",
    "adversary",
    "soundness",
    "verify",
];

#[derive(Debug, Clone)]
pub struct Options {
    pub only: Vec<String>,
    pub seed: u64,
    pub timeout: Duration,
    /// Negative control: corrupt the witness file before verifying it.
    pub corrupt_witness: bool,
}

struct Verdict {
    computed: String,
    pass: bool,
    reason: Option<String>,
}

impl Verdict {
    fn equals(computed: impl ToString, expected: &str) -> Self {
        let computed = computed.to_string();
        Verdict { pass: computed == expected, computed, reason: None }
    }

    fn because(mut self, why: Option<String>) -> Self {
        if !self.pass {
            self.reason = why;
        }
        self
    }
}

type Job = Box<dyn FnOnce() -> Result<Verdict, String> + Send>;

struct Check {
    id: String,
    group: &'static str,
    anchor: &'static str,
    basis: Basis,
    expected: String,
    run: Job,
}

fn check(
    id: impl Into<String>,
    group: &'static str,
    anchor: &'static str,
    basis: Basis,
    expected: impl ToString,
    run: impl FnOnce(&str) -> Result<Verdict, String> + Send + 'static,
) -> Check {
    let expected = expected.to_string();
    let e = expected.clone();
    Check { id: id.into(), group, anchor, basis, expected, run: Box::new(move || run(&e)) }
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

/// Degree plus whether both certificates pass the exact checkers.
fn certified(f: &BoolFunction, alpha: &Alpha) -> Result<(DegreeCertificate, bool), String> {
    let c = approx_degree(f, alpha).map_err(err)?;
    let upper = c.representation.verify(f, alpha).is_ok();
    let lower = match &c.witness {
        None => c.degree == 0,
        Some(w) => w.claimed_degree == c.degree && verify_dual_witness(f, w, alpha).ok(),
    };
    Ok((c, upper && lower))
}

fn degree_check(f: BoolFunction, expected: &str) -> Result<Verdict, String> {
    let (c, ok) = certified(&f, &Alpha::Infinity)?;
    let v = Verdict::equals(c.degree, expected);
    Ok(Verdict { pass: v.pass && ok, ..v }.because(Some("certificate rejected or degree differs".into())))
}

fn gates() -> Vec<Check> {
    let mut out = Vec::new();
    for k in 2..=4 {
        for (name, f) in [("and", BoolFunction::and(k)), ("or", BoolFunction::or(k))] {
            out.push(check(format!("sign-degree-{name}-{k}"), "gates", "and-or-sign-degree", Basis::Claim, 1, move |e| {
                degree_check(f, e)
            }));
        }
    }
    out
}

fn parity() -> Vec<Check> {
    let mut out = vec![check("xor-formula-size-4", "parity", "parity-formula-tight", Basis::Claim, 2, |e| {
        let formula = parse("(x1 & !x2) | (!x1 & x2)").map_err(err)?;
        let f = formula.to_function(2).map_err(err)?;
        let v = degree_check(f, e)?;
        let tight = formula.size().isqrt().to_string() == e;
        Ok(Verdict { pass: v.pass && tight, ..v })
    })];
    for k in 1..=4 {
        out.push(check(format!("sign-degree-xor-{k}"), "parity", "parity-sign-degree", Basis::Claim, k, move |e| {
            degree_check(BoolFunction::parity(k), e)
        }));
    }
    out
}

fn minsky_papert() -> Vec<Check> {
    let mp = || {
        build_minsky_papert(2)
            .and_then(|f| f.to_function(8))
            .map_err(err)
    };
    vec![
        check("minsky-papert-2-degree-1", "minsky-papert", "minsky-papert", Basis::Claim, "infeasible", move |e| {
            let f = mp()?;
            let inf = Alpha::Infinity;
            if is_degree_at_most(&f, 1, &inf).map_err(err)?.is_some() {
                return Ok(Verdict::equals("feasible", e));
            }
            let w = extract_dual_witness(&f, 1, &inf).map_err(err)?;
            let ok = verify_dual_witness(&f, &w, &inf).ok();
            Ok(Verdict::equals(if ok { "infeasible" } else { "unverified" }, e))
        }),
        check("minsky-papert-2-degree-2", "minsky-papert", "minsky-papert", Basis::Claim, "feasible", move |e| {
            let f = mp()?;
            let computed = match is_degree_at_most(&f, 2, &Alpha::Infinity).map_err(err)? {
                Some(rep) if rep.verify(&f, &Alpha::Infinity).is_ok() => "feasible",
                Some(_) => "unverified",
                None => "infeasible",
            };
            Ok(Verdict::equals(computed, e))
        }),
    ]
}

fn all_functions(n: usize) -> Vec<BoolFunction> {
    (0..1u64 << (1 << n)).map(|t| BoolFunction::from_bits(n, t)).collect()
}

fn composition() -> Vec<Check> {
    vec![
        check("composition-pairs", "composition", "composition-product-bound", Basis::Claim, "256/256", |e| {
            let funcs = all_functions(2);
            let degrees: Vec<usize> = funcs
                .iter()
                .map(|f| sign_degree(f).map(|c| c.degree).map_err(err))
                .collect::<Result<_, _>>()?;
            let mut holding = 0;
            for (f, df) in funcs.iter().zip(&degrees) {
                for (g, dg) in funcs.iter().zip(&degrees) {
                    let fg = compose_functions(f, g).map_err(err)?;
                    let product = df * dg;
                    if product == 0 || is_degree_at_most(&fg, product - 1, &Alpha::Infinity).map_err(err)?.is_none() {
                        holding += 1;
                    }
                }
            }
            Ok(Verdict::equals(format!("{holding}/256"), e))
        }),
        // f and g both nonconstant: 14 × 14 pairs carry a composed witness.
        check("composition-witnesses", "composition", "composition-witness", Basis::Trivial, "196/196", |e| {
            let inf = Alpha::Infinity;
            let funcs = all_functions(2);
            let certs: Vec<DegreeCertificate> = funcs
                .iter()
                .map(|f| sign_degree(f).map_err(err))
                .collect::<Result<_, _>>()?;
            let (mut total, mut good) = (0, 0);
            for (f, cf) in funcs.iter().zip(&certs) {
                for (g, cg) in funcs.iter().zip(&certs) {
                    let (Some(p), Some(q)) = (&cf.witness, &cg.witness) else { continue };
                    total += 1;
                    let Ok(h) = compose_witnesses(f, g, p, q) else { continue };
                    let fg = compose_functions(f, g).map_err(err)?;
                    let exact = l1_norm(&h.table).is_one()
                        && correlation(&fg, &h.table).map_err(err)? == correlation(f, &p.table).map_err(err)?;
                    if exact && verify_dual_witness(&fg, &h, &inf).ok() {
                        good += 1;
                    }
                }
            }
            Ok(Verdict::equals(format!("{good}/{total}"), e))
        }),
        check("composition-alpha-2-xor", "composition", "composition-finite-alpha", Basis::Claim, 4, |e| {
            let two = Alpha::integer(2).map_err(err)?;
            let xor2 = BoolFunction::parity(2);
            let r = check_supermultiplicativity(&xor2, &xor2, &two).map_err(err)?;
            let certified = r.certificate.filter(|_| r.certificate_verified).map(|h| h.claimed_degree);
            Ok(Verdict::equals(certified.map_or("none".into(), |d| d.to_string()), e))
        }),
        check("approx-degree-2-xor-4", "composition", "composition-finite-alpha", Basis::Oracle, 4, |e| {
            let two = Alpha::integer(2).map_err(err)?;
            let (c, ok) = certified(&BoolFunction::parity(4), &two)?;
            let v = Verdict::equals(c.degree, e);
            Ok(Verdict { pass: v.pass && ok, ..v })
        }),
    ]
}

fn iterate() -> Vec<Check> {
    vec![check("iterated-composition-2", "iterate", "iterated-composition", Basis::Claim, "16/16", |e| {
        let mut holding = 0;
        for f in all_functions(2) {
            let d = sign_degree(&f).map_err(err)?.degree;
            let f2 = iterate_compose(&f, 2).map_err(err)?;
            if d == 0 || is_degree_at_most(&f2, d * d - 1, &Alpha::Infinity).map_err(err)?.is_none() {
                holding += 1;
            }
        }
        Ok(Verdict::equals(format!("{holding}/16"), e))
    })]
}

fn sweep() -> Vec<Check> {
    vec![check("formula-size-bound-6x6", "sweep", "formula-size-bound", Basis::Claim, 0, |e| {
        let r = sweep_formula_bound(6, 6).map_err(err)?;
        let why = r.violations.first().map(|v| format!("{} exceeds degree {}", v.formula, v.bound));
        Ok(Verdict::equals(r.violations.len(), e).because(why))
    })]
}

type StarBuilder = fn(usize) -> signlab::error::Result<AdversaryCertificate>;

fn adversary(seed: u64) -> Vec<Check> {
    let cfg = PowerIteration { seed, ..PowerIteration::default() };
    let mut out = Vec::new();
    for k in 1..=8 {
        let root = format!("{:.9}", (k as f64).sqrt());
        let stars: [(&str, BoolFunction, StarBuilder); 2] = [
            ("or", BoolFunction::or(k), build_or_certificate),
            ("and", BoolFunction::and(k), build_and_certificate),
        ];
        for (name, f, build) in stars {
            out.push(check(format!("adv-star-{name}-{k}"), "adversary", "adversary-and-or", Basis::Claim, &root, move |_| {
                let r = adv_ratio_with(&f, &build(k).map_err(err)?, &cfg).map_err(err)?;
                Ok(Verdict {
                    computed: format!("{:.9}", r.ratio),
                    pass: (r.ratio - (k as f64).sqrt()).abs() <= 1e-6,
                    reason: None,
                })
            }));
        }
    }
    out.push(check("spectral-closed-forms", "adversary", "spectral-norm", Basis::Oracle, 0, move |e| {
        let mut misses = 0;
        let mut close = |m: &SymMatrix, want: f64| -> Result<(), String> {
            let got = spectral_norm_with(m, &cfg).map_err(err)?;
            if (got - want).abs() > 1e-7 {
                misses += 1;
            }
            Ok(())
        };
        for k in 1..=16 {
            close(&SymMatrix::identity(k), 1.0)?;
            close(&SymMatrix::from_fn(k, |_, _| 1.0), k as f64)?;
            close(
                &SymMatrix::from_fn(k + 1, |i, j| if (i == 0) != (j == 0) { 1.0 } else { 0.0 }),
                (k as f64).sqrt(),
            )?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let (a, b, c): (f64, f64, f64) =
                (rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
            let m = SymMatrix::from_rows(&[vec![a, b], vec![b, c]]).map_err(err)?;
            close(&m, ((a + c) / 2.0).abs() + (((a - c) / 2.0).powi(2) + b * b).sqrt())?;
        }
        Ok(Verdict::equals(misses, e))
    }));
    out.push(check("adv-random-formula-bound", "adversary", "adversary-formula-bound", Basis::Claim, 0, move |e| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut violations = 0;
        for m in 1..=3 {
            let sizes = minimal_formula_sizes(m, 16).map_err(err)?;
            for f in all_functions(m) {
                let Some(&size) = sizes.get(&f.to_bits().expect("small arity")) else { continue };
                for _ in 0..100 {
                    let c = AdversaryCertificate::random(m, &mut rng).map_err(err)?;
                    let r = adv_ratio_with(&f, &c, &cfg).map_err(err)?;
                    if r.ratio > (size as f64).sqrt() + 1e-6 {
                        violations += 1;
                    }
                }
            }
        }
        Ok(Verdict::equals(violations, e))
    }));
    out.push(check("adv-or-of-ors", "adversary", "adversary-submultiplicative", Basis::Claim, "2.000000000", move |_| {
        let or4 = compose_functions(&BoolFunction::or(2), &BoolFunction::or(2)).map_err(err)?;
        let r = adv_ratio_with(&or4, &build_or_certificate(4).map_err(err)?, &cfg).map_err(err)?;
        Ok(Verdict { computed: format!("{:.9}", r.ratio), pass: r.ratio <= 2.0 + 1e-9, reason: None })
    }));
    out
}

fn soundness(seed: u64) -> Vec<Check> {
    let functions = move || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..500)
            .map(|_| {
                let n = rng.random_range(1..=3);
                BoolFunction::from_predicate(n, |_| rng.random_bool(0.5))
            })
            .collect::<Vec<_>>()
    };
    vec![
        check("certificate-soundness-500", "soundness", "certificate-soundness", Basis::Oracle, "500/500", move |e| {
            let two = Alpha::integer(2).map_err(err)?;
            let mut good = 0;
            for f in functions() {
                let (_, a) = certified(&f, &Alpha::Infinity)?;
                let (_, b) = certified(&f, &two)?;
                good += usize::from(a && b);
            }
            Ok(Verdict::equals(format!("{good}/500"), e))
        }),
        check("integer-oracle-agreement", "soundness", "certificate-soundness", Basis::Oracle, 0, move |e| {
            let mut memo: HashMap<(usize, Vec<i8>, usize), bool> = HashMap::new();
            let mut disagreements = 0;
            let mut first = None;
            for f in functions() {
                for d in 0..=f.arity().min(2) {
                    let lp = is_degree_at_most(&f, d, &Alpha::Infinity).map_err(err)?.is_some();
                    let brute = *memo
                        .entry((f.arity(), f.values().to_vec(), d))
                        .or_insert_with(|| oracle::integer_representation_exists(&f, d, 16));
                    if lp != brute {
                        disagreements += 1;
                        first.get_or_insert_with(|| format!("{f} at degree {d}: LP {lp}, integer search {brute}"));
                    }
                }
            }
            Ok(Verdict::equals(disagreements, e).because(first))
        }),
    ]
}

fn corrupt(witness: &str) -> String {
    let mut done = false;
    witness
        .lines()
        .map(|line| {
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts[..] {
                [mask, value] if !done && !line.contains('=') => {
                    done = true;
                    // scales the entry by 1/10 or 10, breaking unit ℓ₁ mass
                    format!("{mask} {value}0")
                }
                _ => line.to_string(),
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn verify(corrupt_witness: bool) -> Vec<Check> {
    vec![check("witness-file-verify", "verify", "witness-file-round-trip", Basis::Trivial, "verified", move |e| {
        let f = BoolFunction::parity(3);
        let w = sign_degree(&f).map_err(err)?.witness.ok_or("no witness for XOR_3")?;
        let path = std::env::temp_dir().join(format!("signlab-witness-{}.txt", std::process::id()));
        let mut text = w.to_string();
        if corrupt_witness {
            text = corrupt(&text);
        }
        std::fs::write(&path, text).map_err(err)?;
        let read = std::fs::read_to_string(&path).map_err(err);
        let _ = std::fs::remove_file(&path);
        let parsed: DualWitness = read?.parse().map_err(err)?;
        let report = verify_dual_witness(&f, &parsed, &parsed.alpha);
        let why = report.violations.first().map(ToString::to_string);
        Ok(Verdict::equals(if report.ok() { "verified" } else { "rejected" }, e).because(why))
    })]
}

fn all_checks(opts: &Options) -> Vec<Check> {
    [
        gates(),
        parity(),
        minsky_papert(),
        composition(),
        iterate(),
        sweep(),
        adversary(opts.seed),
        soundness(opts.seed),
        verify(opts.corrupt_witness),
    ]
    .into_iter()
    .flatten()
    .collect()
}

/// Runs the selected checks in canonical order. Individual failures and
/// timeouts become FAIL lines; they are not errors.
pub fn run(opts: &Options) -> Result<Vec<Line>> {
    for g in &opts.only {
        if !GROUPS.contains(&g.as_str()) {
            bail!("unknown group `{g}`; expected one of {}", GROUPS.join(", "));
        }
    }
    let mut lines = Vec::new();
    for c in all_checks(opts) {
        if !opts.only.is_empty() && !opts.only.iter().any(|g| g == c.group) {
            continue;
        }
        let (result, elapsed) = with_timeout(opts.timeout, c.run);
        let (status, computed, reason) = match result {
            Ok(Ok(v)) => (if v.pass { Status::Pass } else { Status::Fail }, v.computed, v.reason),
            Ok(Err(e)) => (Status::Fail, "error".to_string(), Some(e)),
            Err(t) => (Status::Fail, "timeout".to_string(), Some(format!("exceeded {}s", t.0.as_secs()))),
        };
        lines.push(Line {
            id: c.id,
            status,
            computed,
            expected: c.expected,
            basis: c.basis,
            anchor: c.anchor.to_string(),
            reason,
            elapsed: Some(elapsed),
        });
    }
    Ok(lines)
}
