//! Read-many AND/OR formulas over literals.
//!
//! Internal nodes are binary AND/OR gates and leaves are literals `x_i` or
//! `!x_i`. The size of a formula is its number of leaves. Evaluation uses the
//! TRUE = -1 convention of [`crate::cube`].

pub(crate) mod enumerate;
mod parse;

use std::fmt;

pub use enumerate::{count_formulas, count_shapes, enumerate_formulas, FormulaIter};
pub use parse::parse;

use crate::cube::{check_arity, BoolFunction, MAX_ARITY};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    And,
    Or,
}

impl Gate {
    pub fn dual(self) -> Gate {
        match self {
            Gate::And => Gate::Or,
            Gate::Or => Gate::And,
        }
    }
}

/// A literal `x_var` (1-indexed), possibly negated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Lit(Literal),
    Node(Gate, Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(var: usize) -> Self {
        Formula::Lit(Literal::pos(var))
    }

    pub fn not_var(var: usize) -> Self {
        Formula::Lit(Literal::neg(var))
    }

    pub fn and(left: Formula, right: Formula) -> Self {
        Formula::Node(Gate::And, Box::new(left), Box::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Self {
        Formula::Node(Gate::Or, Box::new(left), Box::new(right))
    }

    /// Number of leaves.
    pub fn size(&self) -> usize {
        match self {
            Formula::Lit(_) => 1,
            Formula::Node(_, l, r) => l.size() + r.size(),
        }
    }

    /// Largest variable index mentioned.
    pub fn max_var(&self) -> usize {
        match self {
            Formula::Lit(lit) => lit.var,
            Formula::Node(_, l, r) => l.max_var().max(r.max_var()),
        }
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<Literal> {
        let mut out = Vec::with_capacity(self.size());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Literal>) {
        match self {
            Formula::Lit(lit) => out.push(*lit),
            Formula::Node(_, l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    /// De Morgan dual: swap every gate and negate every leaf. Computes -f.
    pub fn dual(&self) -> Formula {
        match self {
            Formula::Lit(lit) => Formula::Lit(Literal {
                var: lit.var,
                negated: !lit.negated,
            }),
            Formula::Node(g, l, r) => Formula::Node(g.dual(), Box::new(l.dual()), Box::new(r.dual())),
        }
    }

    /// Truth table over `arity` variables.
    pub fn to_function(&self, arity: usize) -> Result<BoolFunction> {
        check_arity(arity)?;
        let max = self.max_var();
        if max > arity {
            return Err(Error::ArityTooSmall { var: max, arity });
        }
        let words = self.eval_words(arity);
        Ok(BoolFunction::from_predicate(arity, |m| words[m / 64] >> (m % 64) & 1 == 1))
    }

    /// Bit-parallel evaluation: bit `m` of the result is set when the formula
    /// is TRUE at mask `m`.
    fn eval_words(&self, arity: usize) -> Vec<u64> {
        let len = (1usize << arity).div_ceil(64);
        match self {
            Formula::Lit(lit) => {
                let mut words: Vec<u64> = (0..len)
                    .map(|w| {
                        (0..64)
                            .filter(|b| (w * 64 + b) >> (lit.var - 1) & 1 == 1)
                            .fold(0u64, |acc, b| acc | 1 << b)
                    })
                    .collect();
                if lit.negated {
                    words.iter_mut().for_each(|w| *w = !*w);
                }
                words
            }
            Formula::Node(g, l, r) => {
                let mut a = l.eval_words(arity);
                let b = r.eval_words(arity);
                for (x, y) in a.iter_mut().zip(b) {
                    *x = match g {
                        Gate::And => *x & y,
                        Gate::Or => *x | y,
                    };
                }
                a
            }
        }
    }
}

/// Prints with the fewest parentheses that still parse back to the same tree
/// (chains associate to the left).
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Lit(lit) => {
                if lit.negated {
                    f.write_str("!")?;
                }
                write!(f, "x{}", lit.var)
            }
            Formula::Node(g, l, r) => {
                let op = match g {
                    Gate::And => "&",
                    Gate::Or => "|",
                };
                let wrap_left = matches!((g, &**l), (Gate::And, Formula::Node(Gate::Or, ..)));
                let wrap_right = matches!(&**r, Formula::Node(..))
                    && !matches!((g, &**r), (Gate::Or, Formula::Node(Gate::And, ..)));
                write_child(f, l, wrap_left)?;
                write!(f, " {op} ")?;
                write_child(f, r, wrap_right)
            }
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Gate tree over the given leaves: balanced when the count is a power of
/// two, otherwise the left subtree takes the extra leaf at each split.
///
/// # Panics
///
/// Panics on an empty leaf list.
pub fn gate_tree(gate: Gate, leaves: &[Formula]) -> Formula {
    assert!(!leaves.is_empty(), "gate tree needs at least one leaf");
    if leaves.len() == 1 {
        return leaves[0].clone();
    }
    let mid = leaves.len().div_ceil(2);
    Formula::Node(
        gate,
        Box::new(gate_tree(gate, &leaves[..mid])),
        Box::new(gate_tree(gate, &leaves[mid..])),
    )
}

/// AND over `x_first, …, x_{first+k-1}`.
pub fn and_of_vars(first: usize, k: usize) -> Formula {
    let leaves: Vec<_> = (first..first + k).map(Formula::var).collect();
    gate_tree(Gate::And, &leaves)
}

/// OR over `x_first, …, x_{first+k-1}`.
pub fn or_of_vars(first: usize, k: usize) -> Formula {
    let leaves: Vec<_> = (first..first + k).map(Formula::var).collect();
    gate_tree(Gate::Or, &leaves)
}

/// OR of `n` disjoint AND blocks of `n²` variables each (size n³). Block `i`
/// uses variables `i·n²+1 … (i+1)·n²`, matching block-major composition.
pub fn build_minsky_papert(n: usize) -> Result<Formula> {
    if n == 0 {
        return Err(Error::Format("Minsky–Papert needs n ≥ 1".into()));
    }
    let block = n * n;
    let arity = n * block;
    if arity > MAX_ARITY {
        return Err(Error::ArityOverflow { arity, max: MAX_ARITY });
    }
    let blocks: Vec<_> = (0..n).map(|i| and_of_vars(i * block + 1, block)).collect();
    Ok(gate_tree(Gate::Or, &blocks))
}

/// Complete binary tree with `2^depth` distinct leaves; the root is AND and
/// gate labels alternate by level.
pub fn build_balanced_and_or(depth: u32) -> Formula {
    fn build(level: u32, depth: u32, next_var: &mut usize) -> Formula {
        if level == depth {
            *next_var += 1;
            return Formula::var(*next_var);
        }
        let gate = if level % 2 == 0 { Gate::And } else { Gate::Or };
        let l = build(level + 1, depth, next_var);
        let r = build(level + 1, depth, next_var);
        Formula::Node(gate, Box::new(l), Box::new(r))
    }
    build(0, depth, &mut 0)
}
