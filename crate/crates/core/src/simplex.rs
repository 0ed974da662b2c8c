//! Dense two-phase simplex over exact rationals.
//!
//! Solves `max cᵀx  s.t.  Ax = b, x ≥ 0`. Pivoting follows Bland's rule, so
//! the method terminates on degenerate problems (the degree LPs are highly
//! degenerate: most right-hand sides are zero). At an optimum the solver also
//! returns the simplex multipliers `π = c_B B⁻¹`, which solve the dual
//! `min bᵀπ  s.t.  Aᵀπ ≥ c`.

use num_traits::{One, Signed, Zero};

use crate::cube::Rational;

#[derive(Debug, Clone)]
pub struct StandardLp {
    /// Row-major constraint matrix, one row per equality.
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub primal: Vec<Rational>,
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced profits c_j - c_Bᵀ B⁻¹ A_j.
    profit: Vec<Rational>,
    value: Rational,
    structural: usize,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, p: usize, e: usize) {
        self.pivots += 1;
        let inv = self.rows[p][e].recip();
        let nz: Vec<usize> = (0..self.rows[p].len())
            .filter(|&j| !self.rows[p][j].is_zero())
            .collect();
        for &j in &nz {
            self.rows[p][j] *= &inv;
        }
        self.rhs[p] *= &inv;

        let pivot_row = std::mem::take(&mut self.rows[p]);
        let pivot_rhs = self.rhs[p].clone();
        for r in 0..self.rows.len() {
            if r == p || self.rows[r][e].is_zero() {
                continue;
            }
            let factor = self.rows[r][e].clone();
            for &j in &nz {
                let delta = &factor * &pivot_row[j];
                self.rows[r][j] -= delta;
            }
            self.rhs[r] -= &factor * &pivot_rhs;
        }
        if !self.profit[e].is_zero() {
            let factor = self.profit[e].clone();
            for &j in &nz {
                let delta = &factor * &pivot_row[j];
                self.profit[j] -= delta;
            }
            self.value += &factor * &pivot_rhs;
        }
        self.rows[p] = pivot_row;
        self.basis[p] = e;
    }

    /// Runs Bland's rule to optimality. Returns false when unbounded.
    fn optimize(&mut self) -> bool {
        loop {
            let Some(e) = (0..self.structural).find(|&j| self.profit[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let coef = &self.rows[r][e];
                if !coef.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / coef;
                let better = match &best {
                    None => true,
                    Some((br, bratio)) => {
                        ratio < *bratio || (ratio == *bratio && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((p, _)) = best else {
                return false;
            };
            self.pivot(p, e);
        }
    }

    fn set_objective(&mut self, costs: &[Rational]) {
        let cost = |j: usize| costs.get(j).cloned().unwrap_or_else(Rational::zero);
        let width = self.profit.len();
        self.profit = (0..width).map(cost).collect();
        self.value = Rational::zero();
        for r in 0..self.rows.len() {
            let cb = cost(self.basis[r]);
            if cb.is_zero() {
                continue;
            }
            for j in 0..width {
                if !self.rows[r][j].is_zero() {
                    let delta = &cb * &self.rows[r][j];
                    self.profit[j] -= delta;
                }
            }
            self.value += &cb * &self.rhs[r];
        }
    }
}

impl StandardLp {
    pub fn solve(&self) -> LpOutcome {
        let m = self.a.len();
        let n = self.c.len();
        debug_assert!(self.a.iter().all(|row| row.len() == n));
        debug_assert_eq!(self.b.len(), m);

        // Artificial columns n..n+m form the starting basis; rows with
        // negative rhs are flipped so the start is feasible.
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for (i, (row, b)) in self.a.iter().zip(&self.b).enumerate() {
            let flip = b.is_negative();
            let mut t: Vec<Rational> = row
                .iter()
                .map(|v| if flip { -v } else { v.clone() })
                .collect();
            t.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            rows.push(t);
            rhs.push(if flip { -b } else { b.clone() });
        }
        let mut tab = Tableau {
            rows,
            rhs,
            basis: (n..n + m).collect(),
            profit: vec![Rational::zero(); n + m],
            value: Rational::zero(),
            structural: n,
            pivots: 0,
        };

        // Phase I: maximize -Σ artificials.
        let phase_one: Vec<Rational> = (0..n + m)
            .map(|j| if j < n { Rational::zero() } else { -Rational::one() })
            .collect();
        tab.set_objective(&phase_one);
        tab.optimize();
        if !tab.value.is_zero() {
            return LpOutcome::Infeasible;
        }
        // Drive zero-level artificials out of the basis where possible; rows
        // with no structural entry are redundant and keep their artificial.
        for r in 0..m {
            if tab.basis[r] >= n {
                if let Some(e) = (0..n).find(|&j| !tab.rows[r][j].is_zero()) {
                    tab.pivot(r, e);
                }
            }
        }

        tab.set_objective(&self.c);
        if !tab.optimize() {
            return LpOutcome::Unbounded;
        }

        let mut primal = vec![Rational::zero(); n];
        for (r, &bv) in tab.basis.iter().enumerate() {
            if bv < n {
                primal[bv] = tab.rhs[r].clone();
            }
        }
        // π_i = c_Bᵀ B⁻¹ e_i, read from the artificial columns; undo row flips.
        let dual = (0..m)
            .map(|i| {
                let mut pi = Rational::zero();
                for (r, &bv) in tab.basis.iter().enumerate() {
                    if bv < n && !self.c[bv].is_zero() {
                        pi += &self.c[bv] * &tab.rows[r][n + i];
                    }
                }
                if self.b[i].is_negative() {
                    -pi
                } else {
                    pi
                }
            })
            .collect();
        LpOutcome::Optimal(LpSolution {
            value: tab.value,
            primal,
            dual,
            pivots: tab.pivots,
        })
    }
}
