//! Negative-weight adversary certificates.
//!
//! For a certificate Γ (a nonzero symmetric real matrix indexed by inputs)
//!
//! ```text
//! ratio(Γ) = ‖Γ∘F‖ / maxᵢ ‖Γ∘Dᵢ‖
//! ```
//!
//! where `F[x,y] = 1` iff `f(x) ≠ f(y)`, `Dᵢ[x,y] = 1` iff `xᵢ ≠ yᵢ`, `∘` is
//! the entrywise product and `‖·‖` the spectral norm. Any single Γ gives a
//! lower bound on ADV±(f); the maximum over Γ is not computed here.
//!
//! This is the only module that uses floating point.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cube::BoolFunction;
use crate::error::{Error, Result};
use crate::formula::Formula;

pub const MAX_DIMENSION: usize = 1 << 10;
pub const MAX_CERTIFICATE_ARITY: usize = 10;

/// Dense symmetric matrix, stored in full.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Builds from `entry(i, j)` for `i ≤ j` and mirrors.
    pub fn from_fn(dim: usize, mut entry: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                let v = entry(i, j);
                m.data[i * dim + j] = v;
                m.data[j * dim + i] = v;
            }
        }
        m
    }

    /// Row-major dense input; must be exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim > MAX_DIMENSION {
            return Err(Error::LimitsExceeded(format!("dimension {dim} exceeds {MAX_DIMENSION}")));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != dim) {
            return Err(Error::Format(format!("row {bad} has the wrong length")));
        }
        for i in 0..dim {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NonSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymMatrix { dim, data: rows.concat() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0)
    }

    /// Entrywise product with a 0/1 mask given as a predicate.
    pub fn masked(&self, keep: impl Fn(usize, usize) -> bool) -> Self {
        Self::from_fn(self.dim, |i, j| if keep(i, j) { self.get(i, j) } else { 0.0 })
    }

    pub fn scale(&self, factor: f64) -> Self {
        SymMatrix {
            dim: self.dim,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    fn apply(&self, v: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
    }
}

/// Settings for [`spectral_norm_with`].
#[derive(Debug, Clone, Copy)]
pub struct PowerIteration {
    pub seed: u64,
    /// Bound on ‖A²v − ρv‖ / ρ.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Iterations before a stalled run restarts from a fresh start vector.
    pub restart_after: usize,
}

impl Default for PowerIteration {
    fn default() -> Self {
        PowerIteration {
            seed: 0,
            tolerance: 1e-9,
            max_iterations: 100_000,
            restart_after: 20_000,
        }
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

pub fn spectral_norm(a: &SymMatrix) -> Result<f64> {
    spectral_norm_with(a, &PowerIteration::default())
}

/// Largest |eigenvalue| of a symmetric matrix, by power iteration on A².
///
/// A² is positive semidefinite, so the Rayleigh quotient ρ = ‖Av‖² of the
/// normalized iterate increases to ‖A‖² without sign oscillation.
pub fn spectral_norm_with(a: &SymMatrix, cfg: &PowerIteration) -> Result<f64> {
    let n = a.dim;
    if n > MAX_DIMENSION {
        return Err(Error::LimitsExceeded(format!("dimension {n} exceeds {MAX_DIMENSION}")));
    }
    if n == 0 || a.is_zero() {
        return Ok(0.0);
    }
    let mut w = vec![0.0; n];
    let mut u = vec![0.0; n];
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    let mut restart = 0u64;
    while iterations < cfg.max_iterations {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(restart));
        let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        normalize(&mut v);
        let budget = (iterations + cfg.restart_after).min(cfg.max_iterations);
        while iterations < budget {
            iterations += 1;
            a.apply(&v, &mut w);
            a.apply(&w, &mut u);
            let rho: f64 = w.iter().map(|x| x * x).sum();
            if rho == 0.0 {
                // start vector in the kernel
                break;
            }
            residual = u
                .iter()
                .zip(&v)
                .map(|(x, y)| (x - rho * y).powi(2))
                .sum::<f64>()
                .sqrt()
                / rho;
            if residual <= cfg.tolerance {
                return Ok(rho.sqrt());
            }
            v.copy_from_slice(&u);
            normalize(&mut v);
        }
        restart += 1;
    }
    Err(Error::NoConvergence { iterations, residual })
}

/// F and D₁ … D_m for a function on m variables.
#[derive(Debug, Clone)]
pub struct DifferenceMatrices {
    pub f: SymMatrix,
    pub d: Vec<SymMatrix>,
}

fn check_certificate_arity(m: usize) -> Result<()> {
    if m > MAX_CERTIFICATE_ARITY {
        return Err(Error::ArityOverflow { arity: m, max: MAX_CERTIFICATE_ARITY });
    }
    Ok(())
}

pub fn build_difference_matrices(f: &BoolFunction) -> Result<DifferenceMatrices> {
    let m = f.arity();
    check_certificate_arity(m)?;
    let dim = 1 << m;
    let fm = SymMatrix::from_fn(dim, |x, y| if f.value(x) != f.value(y) { 1.0 } else { 0.0 });
    let d = (0..m)
        .map(|i| SymMatrix::from_fn(dim, |x, y| ((x ^ y) >> i & 1) as f64))
        .collect();
    Ok(DifferenceMatrices { f: fm, d })
}

/// A candidate Γ for a function on `arity` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct AdversaryCertificate {
    pub arity: usize,
    pub gamma: SymMatrix,
    pub note: Option<String>,
}

impl AdversaryCertificate {
    pub fn new(arity: usize, gamma: SymMatrix) -> Result<Self> {
        check_certificate_arity(arity)?;
        if gamma.dim() != 1 << arity {
            return Err(Error::Format(format!(
                "Γ has dimension {}, expected 2^{arity}",
                gamma.dim()
            )));
        }
        Ok(AdversaryCertificate { arity, gamma, note: None })
    }

    /// Symmetric Γ with independent uniform entries in [-1, 1).
    pub fn random(arity: usize, rng: &mut impl Rng) -> Result<Self> {
        check_certificate_arity(arity)?;
        let gamma = SymMatrix::from_fn(1 << arity, |_, _| rng.random_range(-1.0..1.0));
        Ok(AdversaryCertificate { arity, gamma, note: Some("random".into()) })
    }
}

/// `m=<k>` then `x y value` for each nonzero entry with `x ≤ y`.
impl fmt::Display for AdversaryCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m={}", self.arity)?;
        let dim = self.gamma.dim();
        for x in 0..dim {
            for y in x..dim {
                let v = self.gamma.get(x, y);
                if v != 0.0 {
                    writeln!(f, "{x} {y} {v:?}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for AdversaryCertificate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Format("empty certificate".into()))?;
        let arity: usize = header
            .strip_prefix("m=")
            .and_then(|m| m.parse().ok())
            .ok_or_else(|| Error::Format(format!("expected `m=<k>`, got `{header}`")))?;
        check_certificate_arity(arity)?;
        let dim = 1usize << arity;
        let mut gamma = SymMatrix::zeros(dim);
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [x, y, v] = parts[..] else {
                return Err(Error::Format(format!("expected `x y value`, got `{line}`")));
            };
            let bad = || Error::Format(format!("bad certificate line `{line}`"));
            let x: usize = x.parse().map_err(|_| bad())?;
            let y: usize = y.parse().map_err(|_| bad())?;
            let v: f64 = v.parse().map_err(|_| bad())?;
            if x >= dim || y >= dim || !v.is_finite() {
                return Err(bad());
            }
            gamma.data[x * dim + y] = v;
            gamma.data[y * dim + x] = v;
        }
        Ok(AdversaryCertificate { arity, gamma, note: None })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdvRatio {
    /// ‖Γ∘F‖
    pub numerator: f64,
    /// ‖Γ∘Dᵢ‖ for i = 1 … m
    pub denominators: Vec<f64>,
    pub ratio: f64,
}

pub fn adv_ratio(f: &BoolFunction, c: &AdversaryCertificate) -> Result<AdvRatio> {
    adv_ratio_with(f, c, &PowerIteration::default())
}

pub fn adv_ratio_with(f: &BoolFunction, c: &AdversaryCertificate, cfg: &PowerIteration) -> Result<AdvRatio> {
    if f.arity() != c.arity {
        return Err(Error::ArityMismatch { left: f.arity(), right: c.arity });
    }
    if c.gamma.is_zero() {
        return Err(Error::ZeroCertificate);
    }
    let numerator = spectral_norm_with(&c.gamma.masked(|x, y| f.value(x) != f.value(y)), cfg)?;
    let denominators = (0..c.arity)
        .into_par_iter()
        .map(|i| spectral_norm_with(&c.gamma.masked(|x, y| (x ^ y) >> i & 1 == 1), cfg))
        .collect::<Result<Vec<f64>>>()?;
    let worst = denominators.iter().copied().fold(0.0, f64::max);
    if worst == 0.0 {
        return Err(Error::DegenerateCertificate);
    }
    Ok(AdvRatio { numerator, denominators, ratio: numerator / worst })
}

fn star_certificate(k: usize, center: usize, note: &str) -> Result<AdversaryCertificate> {
    if k == 0 || k > MAX_CERTIFICATE_ARITY {
        return Err(Error::LimitsExceeded(format!("star certificate needs 1 ≤ k ≤ {MAX_CERTIFICATE_ARITY}")));
    }
    let gamma = SymMatrix::from_fn(1 << k, |x, y| {
        let pair = (x == center && (y ^ center).count_ones() == 1)
            || (y == center && (x ^ center).count_ones() == 1);
        if pair {
            1.0
        } else {
            0.0
        }
    });
    Ok(AdversaryCertificate { arity: k, gamma, note: Some(note.into()) })
}

/// Star Γ for OR_k: the all-FALSE input against each input with exactly one
/// TRUE coordinate. Its ratio is √k.
pub fn build_or_certificate(k: usize) -> Result<AdversaryCertificate> {
    star_certificate(k, 0, "OR star")
}

/// Mirror of [`build_or_certificate`] for AND_k, centred at all-TRUE.
pub fn build_and_certificate(k: usize) -> Result<AdversaryCertificate> {
    if k == 0 || k > MAX_CERTIFICATE_ARITY {
        return Err(Error::LimitsExceeded(format!("star certificate needs 1 ≤ k ≤ {MAX_CERTIFICATE_ARITY}")));
    }
    star_certificate(k, (1 << k) - 1, "AND star")
}

/// The claimed upper bound √size on ADV± for a function with a formula of
/// this size. Recorded, not computed.
pub fn formula_adv_upper_bound(formula: &Formula) -> f64 {
    (formula.size() as f64).sqrt()
}
