//! Functions on the Boolean cube {-1,+1}ⁿ.
//!
//! Points are encoded as masks: bit `i` of the mask is set exactly when
//! `x_{i+1} = -1`, which is read as TRUE. Under this convention parity is
//! the top character and AND/OR are the usual gates with TRUE = -1.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the exact modules.
pub type Rational = BigRational;

/// Largest arity a dense table may have.
pub const MAX_ARITY: usize = 24;

pub(crate) fn check_arity(arity: usize) -> Result<()> {
    if arity > MAX_ARITY {
        return Err(Error::ArityOverflow { arity, max: MAX_ARITY });
    }
    Ok(())
}

/// A point of the cube, `mask < 2ⁿ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InputPoint(pub usize);

impl InputPoint {
    /// Coordinate `x_i` (1-indexed) as ±1.
    pub fn coord(self, i: usize) -> i8 {
        if self.0 >> (i - 1) & 1 == 1 {
            -1
        } else {
            1
        }
    }
}

/// χ_T(x) = ∏_{i∈T} x_i, i.e. -1 raised to |T ∩ x|.
pub fn character_eval(subset: usize, x: InputPoint) -> i8 {
    if (subset & x.0).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A Boolean function as a dense ±1 truth table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolFunction {
    arity: usize,
    values: Vec<i8>,
}

impl BoolFunction {
    pub fn new(arity: usize, values: Vec<i8>) -> Result<Self> {
        check_arity(arity)?;
        if values.len() != 1 << arity {
            return Err(Error::TableLength { arity, len: values.len() });
        }
        if let Some((mask, v)) = values.iter().enumerate().find(|(_, v)| v.abs() != 1) {
            return Err(Error::NotBoolean { mask, value: v.to_string() });
        }
        Ok(BoolFunction { arity, values })
    }

    /// Builds a function from a predicate that says whether the output is TRUE.
    ///
    /// # Panics
    ///
    /// Panics if `arity` exceeds [`MAX_ARITY`].
    pub fn from_predicate(arity: usize, mut is_true: impl FnMut(usize) -> bool) -> Self {
        assert!(arity <= MAX_ARITY, "arity {arity} exceeds {MAX_ARITY}");
        let values = (0..1usize << arity)
            .map(|mask| if is_true(mask) { -1 } else { 1 })
            .collect();
        BoolFunction { arity, values }
    }

    /// Truth table packed into a word; bit `mask` is set when the output is TRUE.
    ///
    /// # Panics
    ///
    /// Panics if `arity > 6`.
    pub fn from_bits(arity: usize, bits: u64) -> Self {
        assert!(arity <= 6);
        Self::from_predicate(arity, |m| bits >> m & 1 == 1)
    }

    pub fn to_bits(&self) -> Option<u64> {
        if self.arity > 6 {
            return None;
        }
        Some(
            self.values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == -1)
                .fold(0u64, |acc, (m, _)| acc | 1 << m),
        )
    }

    pub fn constant(arity: usize, value: i8) -> Self {
        Self::from_predicate(arity, |_| value == -1)
    }

    pub fn and(k: usize) -> Self {
        let all = (1usize << k) - 1;
        Self::from_predicate(k, |m| m == all)
    }

    pub fn or(k: usize) -> Self {
        Self::from_predicate(k, |m| m != 0)
    }

    /// XOR_k, which equals the character χ_{\[k\]}.
    pub fn parity(k: usize) -> Self {
        Self::from_predicate(k, |m| m.count_ones() % 2 == 1)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, mask: usize) -> i8 {
        self.values[mask]
    }

    pub fn is_true(&self, mask: usize) -> bool {
        self.values[mask] == -1
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// Pointwise negation -f.
    pub fn negate(&self) -> Self {
        BoolFunction {
            arity: self.arity,
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    /// f with variable `x_i` (1-indexed) replaced by its negation.
    pub fn negate_input(&self, i: usize) -> Self {
        let bit = 1 << (i - 1);
        Self::from_predicate(self.arity, |m| self.is_true(m ^ bit))
    }

    /// f with variables relabelled: new variable `perm[j]` takes the role of old variable `j`.
    pub fn permute_inputs(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.arity);
        Self::from_predicate(self.arity, |new_mask| {
            let old = (0..self.arity)
                .filter(|&j| new_mask >> perm[j] & 1 == 1)
                .fold(0, |acc, j| acc | 1 << j);
            self.is_true(old)
        })
    }

    pub fn to_rational_table(&self) -> RationalTable {
        RationalTable {
            arity: self.arity,
            entries: self
                .values
                .iter()
                .map(|&v| Rational::from_integer(BigInt::from(v)))
                .collect(),
        }
    }
}

impl fmt::Debug for BoolFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolFunction({self})")
    }
}

/// `n:<s>` with one `+`/`-` per mask, in mask order.
impl fmt::Display for BoolFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.arity)?;
        for &v in &self.values {
            f.write_str(if v == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for BoolFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Format("truth table must look like `n:<+->`".into()))?;
        let arity: usize = n
            .parse()
            .map_err(|_| Error::Format(format!("bad arity `{n}`")))?;
        check_arity(arity)?;
        let values = body
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::Format(format!("unexpected character `{other}` in truth table"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        BoolFunction::new(arity, values)
    }
}

/// A real-valued function on the cube with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalTable {
    arity: usize,
    entries: Vec<Rational>,
}

impl RationalTable {
    pub fn new(arity: usize, entries: Vec<Rational>) -> Result<Self> {
        check_arity(arity)?;
        if entries.len() != 1 << arity {
            return Err(Error::TableLength { arity, len: entries.len() });
        }
        Ok(RationalTable { arity, entries })
    }

    pub fn zeros(arity: usize) -> Self {
        RationalTable {
            arity,
            entries: vec![Rational::zero(); 1 << arity],
        }
    }

    pub fn from_fn(arity: usize, f: impl FnMut(usize) -> Rational) -> Self {
        RationalTable {
            arity,
            entries: (0..1usize << arity).map(f).collect(),
        }
    }

    /// χ_T scaled by `scale`.
    pub fn character(arity: usize, subset: usize, scale: &Rational) -> Self {
        Self::from_fn(arity, |m| {
            if character_eval(subset, InputPoint(m)) == 1 {
                scale.clone()
            } else {
                -scale.clone()
            }
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, mask: usize) -> &Rational {
        &self.entries[mask]
    }

    pub fn set(&mut self, mask: usize, value: Rational) {
        self.entries[mask] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        RationalTable {
            arity: self.arity,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    /// Pointwise product with a ±1 function.
    pub fn times_bool(&self, f: &BoolFunction) -> Result<Self> {
        same_arity(self.arity, f.arity())?;
        Ok(RationalTable {
            arity: self.arity,
            entries: self
                .entries
                .iter()
                .zip(f.values())
                .map(|(e, &v)| if v == 1 { e.clone() } else { -e })
                .collect(),
        })
    }

    /// Parses the `n=<k>` / `<mask> <num>/<den>` format. Header lines of the
    /// form `key=value key=value` after the first are left to the caller.
    pub fn parse_body<'a>(arity: usize, lines: impl Iterator<Item = &'a str>) -> Result<Self> {
        check_arity(arity)?;
        let mut table = RationalTable::zeros(arity);
        for line in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (mask, value) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::Format(format!("expected `<mask> <p>/<q>`, got `{line}`")))?;
            let mask: usize = mask
                .parse()
                .map_err(|_| Error::Format(format!("bad mask `{mask}`")))?;
            if mask >= 1 << arity {
                return Err(Error::Format(format!("mask {mask} out of range for arity {arity}")));
            }
            table.entries[mask] = parse_rational(value.trim())?;
        }
        Ok(table)
    }
}

/// `n=<k>` followed by `<mask> <num>/<den>` for each nonzero entry.
impl fmt::Display for RationalTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.arity)?;
        for (mask, e) in self.entries.iter().enumerate() {
            if !e.is_zero() {
                writeln!(f, "{mask} {}/{}", e.numer(), e.denom())?;
            }
        }
        Ok(())
    }
}

impl FromStr for RationalTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty rational table".into()))?;
        let arity = header
            .trim()
            .strip_prefix("n=")
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| Error::Format(format!("expected `n=<k>`, got `{header}`")))?;
        RationalTable::parse_body(arity, lines)
    }
}

/// Accepts `p/q`, `p`, or `-p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Format(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

pub(crate) fn same_arity(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::ArityMismatch { left, right });
    }
    Ok(())
}

/// Unnormalized ⟨a,b⟩ = Σ_x a(x)b(x).
pub fn inner_product(a: &RationalTable, b: &RationalTable) -> Result<Rational> {
    same_arity(a.arity, b.arity)?;
    Ok(a.entries.iter().zip(&b.entries).map(|(x, y)| x * y).sum())
}

/// Unnormalized ⟨f,p⟩ for a ±1 function f.
pub fn correlation(f: &BoolFunction, p: &RationalTable) -> Result<Rational> {
    same_arity(f.arity(), p.arity)?;
    let mut acc = Rational::zero();
    for (e, &v) in p.entries.iter().zip(f.values()) {
        if v == 1 {
            acc += e;
        } else {
            acc -= e;
        }
    }
    Ok(acc)
}

/// ℓ₁(p) = Σ_x |p(x)|.
pub fn l1_norm(p: &RationalTable) -> Rational {
    p.entries.iter().map(|e| e.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn character_examples() {
        // x = (-1,-1) is mask 0b11, x = (-1,+1) is mask 0b01.
        assert_eq!(character_eval(0, InputPoint(0b10)), 1);
        assert_eq!(character_eval(0b11, InputPoint(0b11)), 1);
        assert_eq!(character_eval(0b11, InputPoint(0b01)), -1);
    }

    #[test]
    fn gates_follow_true_is_minus_one() {
        let and = BoolFunction::and(2);
        assert_eq!(and.value(0b11), -1);
        assert_eq!(and.value(0b01), 1);
        let or = BoolFunction::or(2);
        assert_eq!(or.value(0b01), -1);
        assert_eq!(or.value(0), 1);
        let xor = BoolFunction::parity(2);
        for m in 0..4 {
            assert_eq!(xor.value(m), character_eval(0b11, InputPoint(m)));
        }
    }

    #[test]
    fn inner_product_examples() {
        let chi = RationalTable::character(2, 0b11, &q(1, 4));
        let xor = BoolFunction::parity(2);
        assert_eq!(correlation(&xor, &chi).unwrap(), q(1, 1));
        let empty = RationalTable::character(2, 0, &q(1, 1));
        assert_eq!(inner_product(&chi, &empty).unwrap(), q(0, 1));
        let and = BoolFunction::and(2).to_rational_table();
        assert_eq!(inner_product(&and, &and).unwrap(), q(4, 1));
    }

    #[test]
    fn inner_product_rejects_mismatched_arity() {
        let a = RationalTable::zeros(2);
        let b = RationalTable::zeros(3);
        assert_eq!(
            inner_product(&a, &b),
            Err(Error::ArityMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn l1_examples() {
        assert_eq!(l1_norm(&RationalTable::character(2, 0b11, &q(1, 4))), q(1, 1));
        assert_eq!(l1_norm(&RationalTable::zeros(2)), q(0, 1));
        let t = RationalTable::new(2, vec![q(1, 2), q(-1, 4), q(1, 8), q(1, 8)]).unwrap();
        assert_eq!(l1_norm(&t), q(1, 1));
    }

    #[test]
    fn truth_table_text_format() {
        let and: BoolFunction = "2:+++-".parse().unwrap();
        assert_eq!(and, BoolFunction::and(2));
        assert_eq!(and.to_string(), "2:+++-");
        assert!("2:++-".parse::<BoolFunction>().is_err());
        assert!("2:++x-".parse::<BoolFunction>().is_err());
        assert!("nope".parse::<BoolFunction>().is_err());
    }

    #[test]
    fn rational_table_text_format() {
        let t = RationalTable::new(2, vec![q(1, 2), q(0, 1), q(-3, 8), q(1, 8)]).unwrap();
        let text = t.to_string();
        assert_eq!(text, "n=2\n0 1/2\n2 -3/8\n3 1/8\n");
        assert_eq!(text.parse::<RationalTable>().unwrap(), t);
        assert!("n=2\n4 1/2\n".parse::<RationalTable>().is_err());
        assert!("n=2\n1 1/0\n".parse::<RationalTable>().is_err());
    }

    #[test]
    fn new_rejects_bad_tables() {
        assert!(matches!(BoolFunction::new(2, vec![1, 1, 1]), Err(Error::TableLength { .. })));
        assert!(matches!(BoolFunction::new(1, vec![1, 0]), Err(Error::NotBoolean { mask: 1, .. })));
        assert!(matches!(
            BoolFunction::new(25, vec![]),
            Err(Error::ArityOverflow { .. })
        ));
    }

    #[test]
    fn permute_and_negate_inputs() {
        // f = x1 & !x2
        let f = BoolFunction::from_predicate(2, |m| m == 0b01);
        let swapped = f.permute_inputs(&[1, 0]);
        assert!(swapped.is_true(0b10));
        let neg = f.negate_input(2);
        assert!(neg.is_true(0b11));
        assert_eq!(BoolFunction::from_bits(2, 0b1000), BoolFunction::and(2));
        assert_eq!(BoolFunction::and(2).to_bits(), Some(0b1000));
    }
}
