//! Exact Fourier (Walsh–Hadamard) analysis over the rationals.
//!
//! \hat f_T = 2⁻ⁿ Σ_x f(x) χ_T(x). The forward transform is the usual
//! in-place butterfly followed by one division by 2ⁿ; for ±1 tables the
//! butterfly runs in machine integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cube::{BoolFunction, Rational, RationalTable};
use crate::error::{Error, Result};

/// Coefficients \hat f_T indexed densely by the subset mask T.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierExpansion {
    arity: usize,
    coeffs: Vec<Rational>,
}

impl FourierExpansion {
    pub fn from_coeffs(arity: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != 1 << arity {
            return Err(Error::TableLength { arity, len: coeffs.len() });
        }
        Ok(FourierExpansion { arity, coeffs })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeff(&self, subset: usize) -> &Rational {
        &self.coeffs[subset]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Nonzero coefficients in increasing subset-mask order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Largest |T| with a nonzero coefficient; `None` marks the zero function.
    pub fn degree(&self) -> Option<usize> {
        self.nonzero().map(|(t, _)| t.count_ones() as usize).max()
    }

    /// Smallest |T| with a nonzero coefficient; `None` marks the zero function.
    pub fn min_degree(&self) -> Option<usize> {
        self.nonzero().map(|(t, _)| t.count_ones() as usize).min()
    }

    /// Σ_T \hat f_T².
    pub fn squared_mass(&self) -> Rational {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Inverse transform: Σ_T \hat f_T χ_T(x) at every point.
    pub fn to_table(&self) -> RationalTable {
        let mut values = self.coeffs.clone();
        butterfly(&mut values);
        RationalTable::new(self.arity, values).expect("length preserved")
    }
}

fn butterfly<T>(values: &mut [T])
where
    T: Clone + std::ops::AddAssign + std::ops::Sub<Output = T>,
    for<'a> &'a T: std::ops::Sub<&'a T, Output = T>,
{
    let mut half = 1;
    while half < values.len() {
        for block in values.chunks_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let diff = &*a - &*b;
                *a += b.clone();
                *b = diff;
            }
        }
        half *= 2;
    }
}

/// Anything that lives on the cube and has a Fourier expansion.
pub trait CubeFunction {
    fn arity(&self) -> usize;
    fn fourier(&self) -> FourierExpansion;
}

impl CubeFunction for BoolFunction {
    fn arity(&self) -> usize {
        BoolFunction::arity(self)
    }

    fn fourier(&self) -> FourierExpansion {
        let mut sums: Vec<i64> = self.values().iter().map(|&v| i64::from(v)).collect();
        let mut half = 1;
        while half < sums.len() {
            for block in sums.chunks_mut(2 * half) {
                let (lo, hi) = block.split_at_mut(half);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x, y) = (*a, *b);
                    *a = x + y;
                    *b = x - y;
                }
            }
            half *= 2;
        }
        let denom = BigInt::one() << self.arity();
        FourierExpansion {
            arity: self.arity(),
            coeffs: sums
                .into_iter()
                .map(|s| Rational::new(BigInt::from(s), denom.clone()))
                .collect(),
        }
    }
}

impl CubeFunction for RationalTable {
    fn arity(&self) -> usize {
        RationalTable::arity(self)
    }

    fn fourier(&self) -> FourierExpansion {
        let mut values = self.entries().to_vec();
        butterfly(&mut values);
        let scale = Rational::new(BigInt::one(), BigInt::one() << self.arity());
        for v in &mut values {
            *v *= &scale;
        }
        FourierExpansion {
            arity: self.arity(),
            coeffs: values,
        }
    }
}

pub fn fourier_transform<F: CubeFunction + ?Sized>(f: &F) -> FourierExpansion {
    f.fourier()
}

/// Polynomial degree; `None` for the all-zero table.
pub fn degree<F: CubeFunction + ?Sized>(f: &F) -> Option<usize> {
    f.fourier().degree()
}

/// Largest d with \hat p_T = 0 for every |T| < d.
pub fn pure_high_degree<F: CubeFunction + ?Sized>(p: &F) -> Result<usize> {
    p.fourier().min_degree().ok_or(Error::ZeroFunction)
}
