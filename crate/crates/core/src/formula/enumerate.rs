//! Exhaustive enumeration of small formulas.
//!
//! Order: by size, then tree shape, then gate labelling, then leaf
//! labelling. The number of formulas of size exactly `s` over `v` variables
//! is `Cat(s-1) · 2^(s-1) · (2v)^s`: Catalan many binary tree shapes, one
//! gate label per internal node, and one of `2v` literals per leaf.

use std::sync::Arc;

use super::{Formula, Gate, Literal};
use crate::error::{Error, Result};

pub const MAX_ENUM_SIZE: usize = 8;
pub const MAX_ENUM_VARS: usize = 8;

/// Unlabelled binary tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Shape {
    Leaf,
    Node(Arc<Shape>, Arc<Shape>),
}

impl Shape {
    fn internal_nodes(&self) -> usize {
        match self {
            Shape::Leaf => 0,
            Shape::Node(l, r) => 1 + l.internal_nodes() + r.internal_nodes(),
        }
    }

    /// Labels the tree: gates are consumed in preorder from the low bits of
    /// `gates` (bit set = OR), leaves left to right from `leaves`.
    pub(crate) fn label(&self, gates: &mut u32, leaves: &mut impl Iterator<Item = Literal>) -> Formula {
        match self {
            Shape::Leaf => Formula::Lit(leaves.next().expect("one literal per leaf")),
            Shape::Node(l, r) => {
                let gate = if *gates & 1 == 1 { Gate::Or } else { Gate::And };
                *gates >>= 1;
                let left = l.label(gates, leaves);
                let right = r.label(gates, leaves);
                Formula::Node(gate, Box::new(left), Box::new(right))
            }
        }
    }
}

/// All shapes with exactly `size` leaves, for every size up to `max_size`.
pub(crate) fn shapes_up_to(max_size: usize) -> Vec<Vec<Arc<Shape>>> {
    let mut by_size: Vec<Vec<Arc<Shape>>> = vec![Vec::new(), vec![Arc::new(Shape::Leaf)]];
    for s in 2..=max_size {
        let mut here = Vec::new();
        for a in 1..s {
            for l in &by_size[a] {
                for r in &by_size[s - a] {
                    here.push(Arc::new(Shape::Node(l.clone(), r.clone())));
                }
            }
        }
        by_size.push(here);
    }
    by_size
}

/// Catalan(size - 1).
pub fn count_shapes(size: usize) -> u128 {
    if size == 0 {
        return 0;
    }
    let n = (size - 1) as u128;
    // C(2n, n) / (n + 1), computed incrementally to stay exact.
    let mut c: u128 = 1;
    for i in 0..n {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// Number of formulas of size exactly `size` over `vars` variables.
pub fn count_formulas(size: usize, vars: usize) -> u128 {
    if size == 0 {
        return 0;
    }
    count_shapes(size) * (1u128 << (size - 1)) * (2 * vars as u128).pow(size as u32)
}

/// Lazily enumerates every formula with at most `max_size` leaves over
/// variables `x1 … x_{max_vars}`.
pub fn enumerate_formulas(max_size: usize, max_vars: usize) -> Result<FormulaIter> {
    if max_size == 0 || max_size > MAX_ENUM_SIZE {
        return Err(Error::LimitsExceeded(format!("max_size must be in 1..={MAX_ENUM_SIZE}, got {max_size}")));
    }
    if max_vars == 0 || max_vars > MAX_ENUM_VARS {
        return Err(Error::LimitsExceeded(format!("max_vars must be in 1..={MAX_ENUM_VARS}, got {max_vars}")));
    }
    Ok(FormulaIter {
        shapes: shapes_up_to(max_size),
        max_size,
        literals: 2 * max_vars as u64,
        size: 1,
        shape: 0,
        gates: 0,
        leaves: 0,
    })
}

pub struct FormulaIter {
    shapes: Vec<Vec<Arc<Shape>>>,
    max_size: usize,
    literals: u64,
    size: usize,
    shape: usize,
    gates: u32,
    leaves: u64,
}

impl FormulaIter {
    fn leaf_labellings(&self) -> u64 {
        self.literals.pow(self.size as u32)
    }
}

impl Iterator for FormulaIter {
    type Item = Formula;

    fn next(&mut self) -> Option<Formula> {
        if self.size > self.max_size {
            return None;
        }
        let shape = &self.shapes[self.size][self.shape];
        let mut code = self.leaves;
        let literals = self.literals;
        let mut lits = std::iter::from_fn(|| {
            let d = code % literals;
            code /= literals;
            Some(Literal {
                var: (d / 2) as usize + 1,
                negated: d % 2 == 1,
            })
        });
        let mut gates = self.gates;
        let formula = shape.label(&mut gates, &mut lits);

        // advance: leaves fastest, then gates, then shape, then size
        self.leaves += 1;
        if self.leaves == self.leaf_labellings() {
            self.leaves = 0;
            self.gates += 1;
            if self.gates == 1 << shape.internal_nodes() {
                self.gates = 0;
                self.shape += 1;
                if self.shape == self.shapes[self.size].len() {
                    self.shape = 0;
                    self.size += 1;
                }
            }
        }
        Some(formula)
    }
}
