//! Exhaustive check of the bound deg_∞ ≤ ⌊√s⌋ for small formulas.
//!
//! Sign degree is unchanged by permuting inputs, negating inputs, negating
//! the output, and adding or removing variables the function ignores. So
//! instead of walking every formula, the sweep walks one representative per
//! orbit of those symmetries on formulas:
//!
//! - the root gate is AND (De Morgan turns an OR-rooted formula into the
//!   negation of an AND-rooted one);
//! - variables are numbered in order of first appearance, left to right;
//! - the first appearance of each variable is a positive literal.
//!
//! Each representative is evaluated on a 64-bit truth table, reduced to its
//! essential variables, and deduplicated; the LP then runs once per distinct
//! function, against the smallest size at which that function showed up.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::cube::BoolFunction;
use crate::degree::{is_degree_at_most, Alpha};
use crate::error::{Error, Result};
use crate::formula::enumerate::{shapes_up_to, Shape};
use crate::formula::{Formula, Literal};

pub const MAX_SWEEP_VARS: usize = 6;
pub const MAX_SWEEP_SIZE: usize = 8;

const VAR_WORDS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// ⌊√s⌋
pub fn isqrt(s: usize) -> usize {
    s.isqrt()
}

/// Leaf labellings in first-appearance order: restricted growth strings
/// over at most `max_vars` variables, with every repeat occurrence free to
/// be negated.
fn canonical_leaves(size: usize, max_vars: usize) -> Vec<Vec<Literal>> {
    fn grow(size: usize, max_vars: usize, used: usize, prefix: &mut Vec<Literal>, out: &mut Vec<Vec<Literal>>) {
        if prefix.len() == size {
            out.push(prefix.clone());
            return;
        }
        for var in 1..=used {
            for negated in [false, true] {
                prefix.push(Literal { var, negated });
                grow(size, max_vars, used, prefix, out);
                prefix.pop();
            }
        }
        if used < max_vars {
            prefix.push(Literal::pos(used + 1));
            grow(size, max_vars, used + 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(size, max_vars, 0, &mut Vec::new(), &mut out);
    out
}

/// Gate labellings with an AND root, as preorder bit patterns (bit set = OR).
fn canonical_gates(size: usize) -> impl Iterator<Item = u32> {
    let internal = size.saturating_sub(1);
    (0..1u32 << internal).filter(|g| g & 1 == 0)
}

fn check_limits(max_size: usize, max_vars: usize) -> Result<()> {
    if max_size == 0 || max_size > MAX_SWEEP_SIZE {
        return Err(Error::LimitsExceeded(format!("max_size must be in 1..={MAX_SWEEP_SIZE}, got {max_size}")));
    }
    if max_vars == 0 || max_vars > MAX_SWEEP_VARS {
        return Err(Error::LimitsExceeded(format!("max_vars must be in 1..={MAX_SWEEP_VARS}, got {max_vars}")));
    }
    Ok(())
}

/// The orbit representatives of a given size, as formulas.
pub fn canonical_formulas(size: usize, max_vars: usize) -> Result<Vec<Formula>> {
    check_limits(size, max_vars)?;
    let shapes = shapes_up_to(size);
    let leaves = canonical_leaves(size, max_vars);
    let mut out = Vec::new();
    for shape in &shapes[size] {
        for gates in canonical_gates(size) {
            for labelling in &leaves {
                let mut g = gates;
                out.push(shape.label(&mut g, &mut labelling.iter().copied()));
            }
        }
    }
    Ok(out)
}

fn eval(shape: &Shape, gates: &mut u32, leaves: &mut std::slice::Iter<'_, Literal>) -> u64 {
    match shape {
        Shape::Leaf => {
            let lit = leaves.next().expect("one literal per leaf");
            let w = VAR_WORDS[lit.var - 1];
            if lit.negated {
                !w
            } else {
                w
            }
        }
        Shape::Node(l, r) => {
            let gate = *gates & 1;
            *gates >>= 1;
            let a = eval(l, gates, leaves);
            let b = eval(r, gates, leaves);
            if gate == 1 {
                a | b
            } else {
                a & b
            }
        }
    }
}

/// Drops variables the 6-variable table does not depend on.
/// Returns the compressed arity and table.
pub fn essential_part(table: u64) -> (usize, u64) {
    let essential: Vec<usize> = (0..6)
        .filter(|&i| {
            let shift = 1 << i;
            (table & VAR_WORDS[i]) >> shift != table & !VAR_WORDS[i]
        })
        .collect();
    let k = essential.len();
    let mut out = 0u64;
    for m in 0..1usize << k {
        let full = essential
            .iter()
            .enumerate()
            .fold(0usize, |acc, (j, &i)| acc | (m >> j & 1) << i);
        out |= (table >> full & 1) << m;
    }
    (k, out)
}

/// All tables reachable from `table` (a function of `arity ≤ 6` inputs) by
/// permuting inputs, negating inputs, and negating the output. Sign degree
/// is constant on this set.
pub fn npn_orbit(arity: usize, table: u64) -> BTreeSet<u64> {
    assert!(arity <= MAX_SWEEP_VARS);
    let points = 1usize << arity;
    let full = if points == 64 { u64::MAX } else { (1u64 << points) - 1 };
    let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
    for i in 0..arity {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                (0..=p.len()).map(move |j| {
                    let mut q = p.clone();
                    q.insert(j, i);
                    q
                })
            })
            .collect();
    }
    let mut orbit = BTreeSet::new();
    for perm in &perms {
        for flip in 0..points {
            let mut image = 0u64;
            for m in 0..points {
                let moved = perm
                    .iter()
                    .enumerate()
                    .fold(0usize, |acc, (j, &pj)| acc | ((m ^ flip) >> j & 1) << pj);
                image |= (table >> m & 1) << moved;
            }
            orbit.insert(image);
            orbit.insert(!image & full);
        }
    }
    orbit
}

/// Outcome for formulas of one exact size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeSummary {
    pub size: usize,
    pub bound: usize,
    /// Orbit representatives enumerated.
    pub formulas: usize,
    /// Distinct functions (after dropping inessential variables) first
    /// reached at this size.
    pub new_functions: usize,
}

#[derive(Debug, Clone)]
pub struct SweepViolation {
    pub formula: Formula,
    pub bound: usize,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub max_size: usize,
    pub max_vars: usize,
    pub sizes: Vec<SizeSummary>,
    pub violations: Vec<SweepViolation>,
}

impl SweepReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn distinct_functions(&self) -> usize {
        self.sizes.iter().map(|s| s.new_functions).sum()
    }
}

/// Checks deg_∞(f) ≤ ⌊√s⌋ for every formula of size s ≤ `max_size` over at
/// most `max_vars` variables, one LP per distinct function.
pub fn sweep_formula_bound(max_size: usize, max_vars: usize) -> Result<SweepReport> {
    check_limits(max_size, max_vars)?;
    let shapes: Vec<Vec<Arc<Shape>>> = shapes_up_to(max_size);
    // (arity, table) -> (smallest size, a formula of that size)
    let mut seen: HashMap<(usize, u64), (usize, Formula)> = HashMap::new();
    let mut sizes = Vec::new();
    for size in 1..=max_size {
        let leaves = canonical_leaves(size, max_vars);
        let mut formulas = 0;
        let mut new_functions = 0;
        for shape in &shapes[size] {
            for gates in canonical_gates(size) {
                for labelling in &leaves {
                    formulas += 1;
                    let mut g = gates;
                    let table = eval(shape, &mut g, &mut labelling.iter());
                    let key = essential_part(table);
                    seen.entry(key).or_insert_with(|| {
                        new_functions += 1;
                        let mut g = gates;
                        (size, shape.label(&mut g, &mut labelling.iter().copied()))
                    });
                }
            }
        }
        sizes.push(SizeSummary {
            size,
            bound: isqrt(size),
            formulas,
            new_functions,
        });
    }

    let mut work: Vec<(&(usize, u64), &(usize, Formula))> = seen.iter().collect();
    work.sort_by_key(|(key, _)| **key);
    let failures = work
        .par_iter()
        .map(|((k, table), (size, formula))| {
            let f = BoolFunction::from_bits(*k, *table);
            let bound = isqrt(*size);
            // every function on k variables has degree at most k
            let ok = bound >= *k || is_degree_at_most(&f, bound, &Alpha::Infinity)?.is_some();
            Ok((!ok).then(|| SweepViolation { formula: formula.clone(), bound }))
        })
        .collect::<Result<Vec<Option<SweepViolation>>>>()?;
    Ok(SweepReport {
        max_size,
        max_vars,
        sizes,
        violations: failures.into_iter().flatten().collect(),
    })
}

/// Smallest formula size of every function of `arity` inputs that has a
/// formula with at most `max_size` leaves, keyed by packed truth table.
///
/// Dynamic programming over tables: a function has a formula of size s iff
/// it is a literal (s = 1) or the AND/OR of functions with formulas of sizes
/// a and s − a.
pub fn minimal_formula_sizes(arity: usize, max_size: usize) -> Result<HashMap<u64, usize>> {
    if arity == 0 || arity > 3 {
        return Err(Error::LimitsExceeded(format!("arity must be in 1..=3, got {arity}")));
    }
    let mask = (1u64 << (1 << arity)) - 1;
    let mut best: HashMap<u64, usize> = HashMap::new();
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new()];
    let literals: Vec<u64> = VAR_WORDS[..arity].iter().flat_map(|&w| [w & mask, !w & mask]).collect();
    for size in 1..=max_size {
        let mut fresh = Vec::new();
        let mut add = |t: u64, fresh: &mut Vec<u64>| {
            if let std::collections::hash_map::Entry::Vacant(e) = best.entry(t) {
                e.insert(size);
                fresh.push(t);
            }
        };
        if size == 1 {
            for &t in &literals {
                add(t, &mut fresh);
            }
        }
        for a in 1..=size / 2 {
            for &l in &by_size[a] {
                for &r in &by_size[size - a] {
                    add(l & r, &mut fresh);
                    add(l | r, &mut fresh);
                }
            }
        }
        by_size.push(fresh);
        if best.len() == 1 << (1 << arity) {
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::enumerate_formulas;
    use std::collections::HashSet;

    fn stirling2(n: usize, k: usize) -> usize {
        match (n, k) {
            (0, 0) => 1,
            (_, 0) | (0, _) => 0,
            _ => k * stirling2(n - 1, k) + stirling2(n - 1, k - 1),
        }
    }

    #[test]
    fn representative_counts() {
        for size in 1..=5 {
            let expected: usize = (1..=size.min(3))
                .map(|k| stirling2(size, k) << (size - k))
                .sum::<usize>()
                * crate::formula::count_shapes(size) as usize
                * (1 << size.saturating_sub(2));
            let got = canonical_formulas(size, 3).unwrap();
            assert_eq!(got.len(), expected, "size {size}");
        }
    }

    #[test]
    fn essential_part_examples() {
        assert_eq!(essential_part(0), (0, 0));
        assert_eq!(essential_part(u64::MAX), (0, 1));
        assert_eq!(essential_part(VAR_WORDS[3]), (1, 0b10));
        assert_eq!(essential_part(VAR_WORDS[1] & VAR_WORDS[4]), (2, 0b1000));
        assert_eq!(essential_part(VAR_WORDS[0] ^ VAR_WORDS[5]), (2, 0b0110));
    }

    /// NPN orbit of a small function: all input permutations, input
    /// negations and output negation, as packed tables.
    fn orbit(f: &BoolFunction) -> Vec<u64> {
        let n = f.arity();
        let mut perms: Vec<Vec<usize>> = vec![vec![]];
        for i in 0..n {
            perms = perms
                .into_iter()
                .flat_map(|p| (0..=p.len()).map(move |j| {
                    let mut q = p.clone();
                    q.insert(j, i);
                    q
                }))
                .collect();
        }
        let mut out = Vec::new();
        for p in &perms {
            let g = f.permute_inputs(p);
            for neg in 0..1usize << n {
                let mut h = g.clone();
                for i in (0..n).filter(|i| neg >> i & 1 == 1) {
                    h = h.negate_input(i + 1);
                }
                out.push(h.to_bits().unwrap());
                out.push(h.negate().to_bits().unwrap());
            }
        }
        out
    }

    #[test]
    fn representatives_cover_every_function_class() {
        // Every function computed by some formula of size ≤ 4 over 3 variables
        // lies in the orbit of a function computed by a representative.
        let reps: HashSet<(usize, u64)> = (1..=4)
            .flat_map(|s| canonical_formulas(s, 3).unwrap())
            .map(|f| {
                let t = f.to_function(6).unwrap().to_bits().unwrap();
                essential_part(t)
            })
            .collect();
        let mut classes = 0;
        for f in enumerate_formulas(4, 3).unwrap() {
            let t = f.to_function(6).unwrap().to_bits().unwrap();
            let (k, table) = essential_part(t);
            let g = BoolFunction::from_bits(k, table);
            assert!(
                orbit(&g).into_iter().any(|t| reps.contains(&(k, t))),
                "{f} has no representative"
            );
            classes += 1;
        }
        assert!(classes > 0);
    }

    #[test]
    fn small_sweep_holds() {
        let report = sweep_formula_bound(4, 4).unwrap();
        assert!(report.holds());
        assert_eq!(report.sizes.iter().map(|s| s.bound).collect::<Vec<_>>(), vec![1, 1, 1, 2]);
        // x1, x1 & x2, x1 & !x2 ... up to size 4; XOR_2 needs four leaves.
        assert!(report.sizes[3].new_functions > 0);
    }

    #[test]
    fn npn_class_counts() {
        // Known class counts: 2, 4, 14, 222 for one to four inputs.
        for (k, expected) in [(1, 2), (2, 4), (3, 14), (4, 222)] {
            let mut seen = HashSet::new();
            let mut classes = 0;
            for t in 0..1u64 << (1 << k) {
                if seen.insert(t) {
                    classes += 1;
                    seen.extend(npn_orbit(k, t));
                }
            }
            assert_eq!(classes, expected, "k={k}");
        }
    }

    #[test]
    fn minimal_sizes() {
        let two = minimal_formula_sizes(2, 4).unwrap();
        assert_eq!(two[&0b0110], 4);
        assert_eq!(two[&0b1000], 2);
        assert_eq!(two[&0b1010], 1);
        assert_eq!(two[&0b0000], 2);
        assert_eq!(two.len(), 16);
    }

}
