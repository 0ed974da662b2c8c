//! Sign degree and α-approximate degree by exact linear programming.
//!
//! `deg_α(f) ≤ d` asks for coefficients `c_T` (|T| ≤ d) with
//! `1 ≤ f(x)·Σ_T c_T χ_T(x) ≤ α` at every point (no upper bound when
//! α = ∞). The decider solves this system through its Farkas alternative,
//! whose tableau has one row per monomial rather than one per cube point:
//!
//! ```text
//! max Σ_x y⁺_x − α Σ_x y⁻_x
//!   s.t. Σ_x f(x)χ_T(x) (y⁺_x − y⁻_x) = 0   for |T| ≤ d
//!        Σ_x (y⁺_x + y⁻_x) ≤ 1,   y ≥ 0
//! ```
//!
//! The optimum is 0 exactly when the primal system is feasible, and then the
//! simplex multipliers of the monomial rows are a valid coefficient vector.
//! Every returned [`SignRepresentation`] is re-checked pointwise.
//!
//! Lower bounds come from a separate solve for a dual witness `p`:
//! maximize `⟨f,p⟩` subject to `ℓ₁(p) ≤ 1` and `⟨p,χ_T⟩ = 0` for |T| ≤ d.
//! Its optimum is the best uniform approximation error ε of f by degree-d
//! polynomials, and `deg_α(f) > d` exactly when ε > (α−1)/(α+1) (ε = 1 when
//! α = ∞). At the boundary ε = (α−1)/(α+1) the degree-d system is still
//! feasible, so a witness meeting the threshold with equality proves nothing;
//! the decider, not the extractor, is authoritative.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cube::{
    character_eval, correlation, l1_norm, parse_rational, BoolFunction, InputPoint, Rational,
    RationalTable,
};
use crate::error::{Error, Result};
use crate::fourier::{degree, CubeFunction};
use crate::simplex::{LpOutcome, StandardLp};

/// Approximation parameter: a finite rational α ≥ 1, or ∞ for sign degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Alpha {
    Finite(Rational),
    Infinity,
}

impl Alpha {
    pub fn finite(alpha: Rational) -> Result<Self> {
        if alpha < Rational::one() {
            return Err(Error::InvalidAlpha(alpha.to_string()));
        }
        Ok(Alpha::Finite(alpha))
    }

    pub fn integer(alpha: i64) -> Result<Self> {
        Self::finite(Rational::from_integer(alpha.into()))
    }

    /// Correlation a dual witness must reach: (α−1)/(α+1), or 1 when α = ∞.
    pub fn threshold(&self) -> Rational {
        match self {
            Alpha::Finite(a) => (a - Rational::one()) / (a + Rational::one()),
            Alpha::Infinity => Rational::one(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Alpha::Infinity)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Infinity => f.write_str("inf"),
            Alpha::Finite(a) if a.is_integer() => write!(f, "{}", a.numer()),
            Alpha::Finite(a) => write!(f, "{}/{}", a.numer(), a.denom()),
        }
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Alpha::Infinity),
            other => Alpha::finite(parse_rational(other)?),
        }
    }
}

/// A polynomial `p = Σ c_T χ_T` of degree at most `degree_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignRepresentation {
    pub arity: usize,
    pub degree_bound: usize,
    pub coeffs: BTreeMap<usize, Rational>,
}

impl SignRepresentation {
    pub fn evaluate(&self, x: InputPoint) -> Rational {
        let mut acc = Rational::zero();
        for (&t, c) in &self.coeffs {
            if character_eval(t, x) == 1 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        acc
    }

    pub fn to_table(&self) -> RationalTable {
        RationalTable::from_fn(self.arity, |m| self.evaluate(InputPoint(m)))
    }

    /// Checks `1 ≤ p(x)f(x)` (and `≤ α` when finite) at every point, by direct
    /// evaluation. Returns the first violating point on failure.
    pub fn verify(&self, f: &BoolFunction, alpha: &Alpha) -> std::result::Result<(), usize> {
        if f.arity() != self.arity
            || self
                .coeffs
                .keys()
                .any(|t| t.count_ones() as usize > self.degree_bound || *t >> self.arity != 0)
        {
            return Err(usize::MAX);
        }
        let one = Rational::one();
        for mask in 0..f.len() {
            let v = self.evaluate(InputPoint(mask));
            let pf = if f.value(mask) == 1 { v } else { -v };
            if pf < one {
                return Err(mask);
            }
            if let Alpha::Finite(a) = alpha {
                if &pf > a {
                    return Err(mask);
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for SignRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&t, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if t == 0 {
                continue;
            }
            for i in 0..self.arity {
                if t >> i & 1 == 1 {
                    write!(f, "·x{}", i + 1)?;
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A table `p` claimed to certify `deg_α(f) ≥ claimed_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualWitness {
    pub claimed_degree: usize,
    pub alpha: Alpha,
    pub table: RationalTable,
}

/// The three quantities checked against a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessAttributes {
    pub correlation: Rational,
    pub l1: Rational,
    /// Pure high degree of the table; `None` for the zero table.
    pub orthogonality: Option<usize>,
}

impl DualWitness {
    pub fn arity(&self) -> usize {
        self.table.arity()
    }

    pub fn attributes(&self, f: &BoolFunction) -> Result<WitnessAttributes> {
        Ok(WitnessAttributes {
            correlation: correlation(f, &self.table)?,
            l1: l1_norm(&self.table),
            orthogonality: self.table.fourier().min_degree(),
        })
    }
}

/// Header line `claimed_degree=<d> alpha=<a|inf>` followed by the table.
impl fmt::Display for DualWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "claimed_degree={} alpha={}", self.claimed_degree, self.alpha)?;
        write!(f, "{}", self.table)
    }
}

impl FromStr for DualWitness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut claimed = None;
        let mut alpha = None;
        let mut arity = None;
        let mut body = Vec::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if line.contains('=') {
                for kv in line.split_whitespace() {
                    let (k, v) = kv
                        .split_once('=')
                        .ok_or_else(|| Error::Format(format!("bad header field `{kv}`")))?;
                    match k {
                        "claimed_degree" => {
                            claimed = Some(v.parse().map_err(|_| Error::Format(format!("bad degree `{v}`")))?)
                        }
                        "alpha" => alpha = Some(v.parse()?),
                        "n" => arity = Some(v.parse().map_err(|_| Error::Format(format!("bad arity `{v}`")))?),
                        _ => return Err(Error::Format(format!("unknown header field `{k}`"))),
                    }
                }
            } else {
                body.push(line);
            }
        }
        let missing = |what: &str| Error::Format(format!("witness file lacks `{what}=`"));
        Ok(DualWitness {
            claimed_degree: claimed.ok_or_else(|| missing("claimed_degree"))?,
            alpha: alpha.ok_or_else(|| missing("alpha"))?,
            table: RationalTable::parse_body(arity.ok_or_else(|| missing("n"))?, body.into_iter())?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ArityMismatch { function: usize, witness: usize },
    Correlation { value: Rational, required: Rational },
    L1 { value: Rational },
    NotOrthogonal { subset: usize, coefficient: Rational },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ArityMismatch { function, witness } => {
                write!(f, "arity mismatch: function {function}, witness {witness}")
            }
            Violation::Correlation { value, required } => {
                write!(f, "correlation ⟨f,p⟩ = {value} < {required} (deficit {})", required - value)
            }
            Violation::L1 { value } => write!(f, "ℓ₁(p) = {value} ≠ 1"),
            Violation::NotOrthogonal { subset, coefficient } => write!(
                f,
                "⟨p,χ_T⟩ ≠ 0 for T = {} (|T| = {}, Fourier coefficient {coefficient})",
                subset_string(*subset),
                subset.count_ones()
            ),
        }
    }
}

pub fn subset_string(t: usize) -> String {
    let members: Vec<String> = (0..usize::BITS as usize)
        .filter(|i| t >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", members.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
    pub attributes: Option<WitnessAttributes>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the three witness conditions exactly: correlation at least the
/// α-threshold, unit ℓ₁ mass, and orthogonality to every character of
/// degree below the claimed degree.
pub fn verify_dual_witness(f: &BoolFunction, w: &DualWitness, alpha: &Alpha) -> VerifyReport {
    if f.arity() != w.arity() {
        return VerifyReport {
            violations: vec![Violation::ArityMismatch { function: f.arity(), witness: w.arity() }],
            attributes: None,
        };
    }
    let attrs = w.attributes(f).expect("arity checked");
    let mut violations = Vec::new();
    let required = alpha.threshold();
    if attrs.correlation < required {
        violations.push(Violation::Correlation { value: attrs.correlation.clone(), required });
    }
    if !attrs.l1.is_one() {
        violations.push(Violation::L1 { value: attrs.l1.clone() });
    }
    let spectrum = w.table.fourier();
    if let Some((subset, c)) = spectrum
        .nonzero()
        .find(|(t, _)| (t.count_ones() as usize) < w.claimed_degree)
    {
        violations.push(Violation::NotOrthogonal { subset, coefficient: c.clone() });
    }
    VerifyReport { violations, attributes: Some(attrs) }
}

fn low_monomials(arity: usize, d: usize) -> Vec<usize> {
    (0..1usize << arity)
        .filter(|t| t.count_ones() as usize <= d)
        .collect()
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn check_degree(f: &BoolFunction, d: usize) -> Result<()> {
    if d > f.arity() {
        return Err(Error::InvalidDegree { degree: d, arity: f.arity() });
    }
    Ok(())
}

/// Decides `deg_α(f) ≤ d`, returning a verified representation when it holds.
pub fn is_degree_at_most(
    f: &BoolFunction,
    d: usize,
    alpha: &Alpha,
) -> Result<Option<SignRepresentation>> {
    check_degree(f, d)?;
    let n = f.arity();

    // f itself has p·f = 1 everywhere, which is within [1, α] for every α.
    let exp = f.fourier();
    if exp.degree().unwrap_or(0) <= d {
        let rep = SignRepresentation {
            arity: n,
            degree_bound: d,
            coeffs: exp.nonzero().map(|(t, c)| (t, c.clone())).collect(),
        };
        return Ok(Some(rep));
    }

    let monomials = low_monomials(n, d);
    let points = f.len();
    let signed = |x: usize, t: usize| i64::from(f.value(x) * character_eval(t, InputPoint(x)));
    let two_sided = !alpha.is_infinite();
    let cols = if two_sided { 2 * points + 1 } else { points + 1 };

    let mut a = Vec::with_capacity(monomials.len() + 1);
    for &t in &monomials {
        let mut row = vec![Rational::zero(); cols];
        for x in 0..points {
            row[x] = int(signed(x, t));
            if two_sided {
                row[points + x] = int(-signed(x, t));
            }
        }
        a.push(row);
    }
    let mut norm = vec![Rational::one(); cols];
    let mut b = vec![Rational::zero(); monomials.len()];
    b.push(Rational::one());
    let mut c = vec![Rational::one(); points];
    if let Alpha::Finite(al) = alpha {
        c.extend(std::iter::repeat_n(-al.clone(), points));
    }
    c.push(Rational::zero());
    norm[cols - 1] = Rational::one();
    a.push(norm);

    let lp = StandardLp { a, b, c };
    let sol = match lp.solve() {
        LpOutcome::Optimal(sol) => sol,
        other => unreachable!("Farkas system is always feasible and bounded: {other:?}"),
    };
    if sol.value.is_positive() {
        return Ok(None);
    }
    let rep = SignRepresentation {
        arity: n,
        degree_bound: d,
        coeffs: monomials
            .iter()
            .zip(&sol.dual)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&t, c)| (t, c.clone()))
            .collect(),
    };
    rep.verify(f, alpha).map_err(|mask| {
        Error::InvalidWitness(format!("recovered representation fails at mask {mask}"))
    })?;
    Ok(Some(rep))
}

/// Best-correlation table orthogonal to all characters of degree ≤ d, scaled
/// to unit ℓ₁ mass. Returns `None` when the optimum is 0.
fn best_orthogonal_table(f: &BoolFunction, d: usize) -> Option<RationalTable> {
    let n = f.arity();
    let points = f.len();
    let monomials = low_monomials(n, d);
    let cols = 2 * points + 1;
    let mut a = Vec::with_capacity(monomials.len() + 1);
    for &t in &monomials {
        let mut row = vec![Rational::zero(); cols];
        for x in 0..points {
            let chi = i64::from(character_eval(t, InputPoint(x)));
            row[x] = int(chi);
            row[points + x] = int(-chi);
        }
        a.push(row);
    }
    a.push(vec![Rational::one(); cols]);
    let mut b = vec![Rational::zero(); monomials.len()];
    b.push(Rational::one());
    let mut c: Vec<Rational> = (0..points).map(|x| int(f.value(x).into())).collect();
    c.extend((0..points).map(|x| int(-i64::from(f.value(x)))));
    c.push(Rational::zero());

    let LpOutcome::Optimal(sol) = (StandardLp { a, b, c }).solve() else {
        unreachable!("witness LP is feasible (p = 0) and bounded (ℓ₁ ≤ 1)");
    };
    if !sol.value.is_positive() {
        return None;
    }
    let table = RationalTable::from_fn(n, |x| &sol.primal[x] - &sol.primal[points + x]);
    let mass = l1_norm(&table);
    Some(table.scale(&mass.recip()))
}

/// Extracts a witness proving `deg_α(f) ≥ d + 1`.
pub fn extract_dual_witness(f: &BoolFunction, d: usize, alpha: &Alpha) -> Result<DualWitness> {
    if is_degree_at_most(f, d, alpha)?.is_some() {
        return Err(Error::NotALowerBound { degree: d });
    }
    extract_known_infeasible(f, d, alpha)
}

fn extract_known_infeasible(f: &BoolFunction, d: usize, alpha: &Alpha) -> Result<DualWitness> {
    let table = best_orthogonal_table(f, d)
        .ok_or_else(|| Error::InvalidWitness("witness LP optimum is zero".into()))?;
    let w = DualWitness { claimed_degree: d + 1, alpha: alpha.clone(), table };
    let report = verify_dual_witness(f, &w, alpha);
    if !report.ok() {
        let why: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        return Err(Error::InvalidWitness(why.join("; ")));
    }
    Ok(w)
}

/// A degree together with certificates for both directions.
#[derive(Debug, Clone)]
pub struct DegreeCertificate {
    pub degree: usize,
    pub alpha: Alpha,
    /// Proves `deg_α(f) ≤ degree`.
    pub representation: SignRepresentation,
    /// Proves `deg_α(f) ≥ degree`; absent when the degree is 0.
    pub witness: Option<DualWitness>,
}

/// Minimal d with `deg_α(f) ≤ d`, searched upward from 0.
pub fn approx_degree(f: &BoolFunction, alpha: &Alpha) -> Result<DegreeCertificate> {
    for d in 0..=f.arity() {
        if let Some(rep) = is_degree_at_most(f, d, alpha)? {
            let witness = match d {
                0 => None,
                _ => Some(extract_known_infeasible(f, d - 1, alpha)?),
            };
            return Ok(DegreeCertificate { degree: d, alpha: alpha.clone(), representation: rep, witness });
        }
    }
    unreachable!("degree n is always feasible")
}

pub fn sign_degree(f: &BoolFunction) -> Result<DegreeCertificate> {
    approx_degree(f, &Alpha::Infinity)
}

/// Sign degree without witness extraction; cheaper for sweeps.
pub fn sign_degree_value(f: &BoolFunction) -> Result<usize> {
    let top = degree(f).unwrap_or(0);
    for d in 0..top {
        if is_degree_at_most(f, d, &Alpha::Infinity)?.is_some() {
            return Ok(d);
        }
    }
    Ok(top)
}
