use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;

use signlab::adversary::{
    adv_ratio_with, build_and_certificate, build_or_certificate, AdversaryCertificate, PowerIteration,
};
use signlab::composition::check_supermultiplicativity;
use signlab::cube::BoolFunction;
use signlab::degree::{
    approx_degree, extract_dual_witness, verify_dual_witness, Alpha, DegreeCertificate, DualWitness,
};
use signlab::error::Error;
use signlab::sweep::npn_orbit;

use crate::input::{self, function_spec, FunctionArgs};
use crate::report::Line;

/// What a command hands back to `main`: report lines and an exit code.
pub struct Outcome {
    pub lines: Vec<Line>,
    pub code: u8,
}

impl Outcome {
    fn ok(lines: Vec<Line>) -> Self {
        Outcome { lines, code: 0 }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SignDegArgs {
    #[command(flatten)]
    pub input: FunctionArgs,

    /// Write the lower-bound witness here instead of printing it
    #[arg(long, value_name = "PATH")]
    pub emit_witness: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DegreeArgs {
    /// Approximation parameter: a rational ≥ 1, or `inf` for sign degree
    #[arg(long, default_value = "inf")]
    pub alpha: Alpha,

    #[command(flatten)]
    pub rest: SignDegArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub input: FunctionArgs,

    /// Degree the witness should prove as a lower bound
    #[arg(long)]
    pub degree: usize,

    #[arg(long, default_value = "inf")]
    pub alpha: Alpha,

    /// Write the witness file here instead of standard output
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Witness file to check
    #[arg(long, value_name = "PATH")]
    pub witness: PathBuf,

    #[command(flatten)]
    pub input: FunctionArgs,

    /// Check against this α instead of the one in the witness header
    #[arg(long)]
    pub alpha: Option<Alpha>,
}

#[derive(Debug, Clone, Args)]
pub struct ComposeArgs {
    /// Outer function: truth table `n:<+->`, table file, or formula
    #[arg(long)]
    pub outer: String,

    /// Inner function, same forms as --outer
    #[arg(long)]
    pub inner: String,

    #[arg(long, default_value = "inf")]
    pub alpha: Alpha,

    /// Write the composed witness here instead of printing it
    #[arg(long, value_name = "PATH")]
    pub emit_witness: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AdversaryArgs {
    #[command(flatten)]
    pub input: FunctionArgs,

    /// Certificate file to evaluate against the function
    #[arg(long, value_name = "PATH")]
    pub certificate: Option<PathBuf>,

    /// Emit the star certificate for OR_k
    #[arg(long, value_name = "K", conflicts_with = "certificate")]
    pub or_certificate: Option<usize>,

    /// With --or-certificate, emit the AND_k mirror instead
    #[arg(long, requires = "or_certificate")]
    pub and: bool,

    /// Where to write an emitted certificate
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SurveyArgs {
    /// Number of inputs, at most 4
    #[arg(long)]
    pub nvars: usize,
}

fn print_certificate(f: &BoolFunction, c: &DegreeCertificate, emit: Option<&PathBuf>) -> Result<Vec<Line>> {
    let mut lines = vec![Line::info("degree", c.degree)];
    println!("function     {f}");
    println!("alpha        {}", c.alpha);
    println!("degree       {}", c.degree);
    println!("upper bound  p(x) = {}", c.representation);
    match (&c.witness, emit) {
        (None, _) => println!("lower bound  trivial at degree 0"),
        (Some(w), Some(path)) => {
            input::write(path, &w.to_string())?;
            println!("lower bound  witness written to {}", path.display());
            lines.push(Line::info("witness", path.display()));
        }
        (Some(w), None) => {
            println!("lower bound  witness:");
            print!("{w}");
        }
    }
    Ok(lines)
}

pub fn signdeg(args: &SignDegArgs) -> Result<Outcome> {
    degree(&DegreeArgs { alpha: Alpha::Infinity, rest: args.clone() })
}

pub fn degree(args: &DegreeArgs) -> Result<Outcome> {
    let f = args.rest.input.load()?;
    let c = approx_degree(&f, &args.alpha)?;
    print_certificate(&f, &c, args.rest.emit_witness.as_ref()).map(Outcome::ok)
}

pub fn witness(args: &WitnessArgs) -> Result<Outcome> {
    let f = args.input.load()?;
    if args.degree == 0 {
        bail!("degree 0 is a trivial lower bound and has no witness");
    }
    if args.degree > f.arity() {
        bail!("degree {} exceeds the arity {}", args.degree, f.arity());
    }
    let w = match extract_dual_witness(&f, args.degree - 1, &args.alpha) {
        Ok(w) => w,
        Err(Error::NotALowerBound { degree }) => {
            println!("no witness: the function has degree at most {degree} at alpha = {}", args.alpha);
            return Ok(Outcome { lines: vec![Line::info("witness", "none")], code: 1 });
        }
        Err(e) => return Err(e.into()),
    };
    match &args.output {
        Some(path) => {
            input::write(path, &w.to_string())?;
            println!("witness for degree >= {} written to {}", args.degree, path.display());
        }
        None => print!("{w}"),
    }
    Ok(Outcome::ok(vec![Line::info("witness", args.degree)]))
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let w: DualWitness = input::read(&args.witness)?.parse()?;
    let f = args.input.load()?;
    let alpha = args.alpha.clone().unwrap_or_else(|| w.alpha.clone());
    let report = verify_dual_witness(&f, &w, &alpha);
    println!("claimed degree  {}", w.claimed_degree);
    println!("alpha           {alpha} (correlation must reach {})", alpha.threshold());
    if let Some(a) = &report.attributes {
        println!("correlation     {}", a.correlation);
        println!("l1 mass         {}", a.l1);
        match a.orthogonality {
            Some(d) => println!("pure degree     {d}"),
            None => println!("pure degree     undefined (zero table)"),
        }
    }
    for v in &report.violations {
        println!("violation       {v}");
    }
    let ok = report.ok();
    println!("{}", if ok { "verified" } else { "rejected" });
    let mut line = Line::info("verify", if ok { "verified" } else { "rejected" });
    line.status = if ok { crate::report::Status::Pass } else { crate::report::Status::Fail };
    Ok(Outcome { lines: vec![line], code: if ok { 0 } else { 1 } })
}

pub fn compose(args: &ComposeArgs) -> Result<Outcome> {
    let f = function_spec(&args.outer)?;
    let g = function_spec(&args.inner)?;
    let r = check_supermultiplicativity(&f, &g, &args.alpha)?;
    println!("alpha = {}", r.alpha);
    print!("{r}");
    let mut lines = vec![
        Line::info("outer-degree", r.outer),
        Line::info("inner-degree", r.inner),
        Line::info("composed-degree", r.actual),
        Line::info("slack", r.slack()),
    ];
    if let Some(h) = &r.certificate {
        match &args.emit_witness {
            Some(path) => {
                input::write(path, &h.to_string())?;
                println!("composed witness written to {}", path.display());
                lines.push(Line::info("witness", path.display()));
            }
            None => {
                println!("composed witness:");
                print!("{h}");
            }
        }
    }
    let ok = r.holds() && (r.certificate.is_none() || r.certificate_verified);
    Ok(Outcome { lines, code: if ok { 0 } else { 1 } })
}

pub fn adversary(args: &AdversaryArgs, seed: u64) -> Result<Outcome> {
    if let Some(k) = args.or_certificate {
        let c = if args.and { build_and_certificate(k)? } else { build_or_certificate(k)? };
        match &args.output {
            Some(path) => {
                input::write(path, &c.to_string())?;
                println!("certificate written to {}", path.display());
            }
            None => print!("{c}"),
        }
        return Ok(Outcome::ok(vec![Line::info("certificate", k)]));
    }
    let Some(path) = &args.certificate else {
        bail!("give --certificate <path> or --or-certificate <k>");
    };
    let f = args.input.load()?;
    let c: AdversaryCertificate = input::read(path)?.parse()?;
    let cfg = PowerIteration { seed, ..PowerIteration::default() };
    let r = adv_ratio_with(&f, &c, &cfg)?;
    println!("numerator    {:.9}", r.numerator);
    for (i, d) in r.denominators.iter().enumerate() {
        println!("D_{:<2}         {:.9}", i + 1, d);
    }
    println!("ratio        {:.9}", r.ratio);
    Ok(Outcome::ok(vec![Line::info("ratio", format!("{:.9}", r.ratio))]))
}

/// Sign degree histogram over every function of `nvars` inputs, computed
/// once per symmetry class.
pub fn survey_histogram(nvars: usize) -> Result<BTreeMap<usize, (usize, Vec<u64>)>> {
    if nvars > 4 {
        bail!("survey supports at most 4 inputs, got {nvars}");
    }
    let total = 1u64 << (1 << nvars);
    let mut seen = vec![false; total as usize];
    let mut hist: BTreeMap<usize, (usize, Vec<u64>)> = BTreeMap::new();
    for t in 0..total {
        if seen[t as usize] {
            continue;
        }
        let orbit = npn_orbit(nvars, t);
        let d = signlab::degree::sign_degree_value(&BoolFunction::from_bits(nvars, t))?;
        let entry = hist.entry(d).or_default();
        for &u in &orbit {
            seen[u as usize] = true;
            entry.0 += 1;
            entry.1.push(u);
        }
    }
    for (_, members) in hist.values_mut() {
        members.sort_unstable();
    }
    Ok(hist)
}

pub fn survey(args: &SurveyArgs) -> Result<Outcome> {
    let hist = survey_histogram(args.nvars)?;
    println!("{:>6} {:>9}", "degree", "functions");
    let mut lines = Vec::new();
    for (d, (count, _)) in &hist {
        println!("{d:>6} {count:>9}");
        lines.push(Line::info(format!("survey-degree-{d}"), count));
    }
    let total: usize = hist.values().map(|(c, _)| c).sum();
    println!("{:>6} {total:>9}", "total");
    if let Some((d, (_, members))) = hist.iter().next_back() {
        if members.len() <= 8 {
            let names: Vec<String> = members
                .iter()
                .map(|&t| BoolFunction::from_bits(args.nvars, t).to_string())
                .collect();
            println!("degree {d} attained by {}", names.join(" "));
        }
    }
    Ok(Outcome::ok(lines))
}
