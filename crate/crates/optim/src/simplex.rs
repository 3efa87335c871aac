//! Dense tableau simplex for small linear programs of the form
//!
//! ```text
//! maximize   c·x
//! subject to A x <= b,  x >= 0,  b >= 0
//! ```
//!
//! Requiring `b >= 0` makes the all-slack basis feasible, so no phase one is
//! needed. Pivoting uses Dantzig's rule and falls back to Bland's rule after a
//! run of degenerate pivots, which rules out cycling.

use thiserror::Error;

const COST_EPS: f64 = 1e-9;
const PIVOT_EPS: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("constraint {row} has negative right-hand side {value}")]
    NegativeRhs { row: usize, value: f64 },
    #[error("constraint {row} has {got} coefficients but the program has {expected} variables")]
    Dimension {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("non-finite coefficient in constraint {row}")]
    NonFinite { row: usize },
    #[error("objective is unbounded along variable {column}")]
    Unbounded { column: usize },
    #[error("simplex did not terminate within {0} pivots")]
    IterationLimit(usize),
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    objective: Vec<f64>,
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub value: f64,
    pub x: Vec<f64>,
    pub pivots: usize,
}

impl LinearProgram {
    pub fn new(objective: Vec<f64>) -> Self {
        LinearProgram {
            objective,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.rows.len()
    }

    /// Adds `coeffs · x <= rhs`. A short coefficient vector is padded with zeros.
    pub fn add_constraint(&mut self, mut coeffs: Vec<f64>, rhs: f64) -> Result<(), LpError> {
        let row = self.rows.len();
        if coeffs.len() > self.num_vars() {
            return Err(LpError::Dimension {
                row,
                got: coeffs.len(),
                expected: self.num_vars(),
            });
        }
        if !rhs.is_finite() || coeffs.iter().any(|v| !v.is_finite()) {
            return Err(LpError::NonFinite { row });
        }
        if rhs < 0.0 {
            return Err(LpError::NegativeRhs { row, value: rhs });
        }
        coeffs.resize(self.num_vars(), 0.0);
        self.rows.push(coeffs);
        self.rhs.push(rhs);
        Ok(())
    }

    pub fn solve(&self) -> Result<Solution, LpError> {
        Tableau::new(self).run()
    }
}

struct Tableau {
    vars: usize,
    rows: usize,
    width: usize,
    // row-major, `width = vars + rows + 1`; the last column is the right-hand side
    cells: Vec<f64>,
    cost: Vec<f64>,
    basis: Vec<usize>,
    objective: Vec<f64>,
    cost_eps: f64,
}

impl Tableau {
    fn new(lp: &LinearProgram) -> Self {
        let vars = lp.num_vars();
        let rows = lp.num_constraints();
        let width = vars + rows + 1;
        let mut cells = vec![0.0; rows * width];
        for (i, (row, &b)) in lp.rows.iter().zip(&lp.rhs).enumerate() {
            let line = &mut cells[i * width..(i + 1) * width];
            line[..vars].copy_from_slice(row);
            line[vars + i] = 1.0;
            line[width - 1] = b;
        }
        let mut cost = vec![0.0; width - 1];
        cost[..vars].copy_from_slice(&lp.objective);
        let scale = lp.objective.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
        Tableau {
            vars,
            rows,
            width,
            cells,
            cost,
            basis: (vars..vars + rows).collect(),
            objective: lp.objective.clone(),
            cost_eps: COST_EPS * scale,
        }
    }

    fn at(&self, row: usize, col: usize) -> f64 {
        self.cells[row * self.width + col]
    }

    fn rhs(&self, row: usize) -> f64 {
        self.at(row, self.width - 1)
    }

    fn entering(&self, bland: bool) -> Option<usize> {
        if bland {
            return self.cost.iter().position(|&c| c > self.cost_eps);
        }
        let mut best = None;
        let mut best_cost = self.cost_eps;
        for (j, &c) in self.cost.iter().enumerate() {
            if c > best_cost {
                best_cost = c;
                best = Some(j);
            }
        }
        best
    }

    fn leaving(&self, col: usize, bland: bool) -> Option<usize> {
        let mut best: Option<(usize, f64, f64)> = None;
        for i in 0..self.rows {
            let a = self.at(i, col);
            if a <= PIVOT_EPS {
                continue;
            }
            let ratio = self.rhs(i).max(0.0) / a;
            best = match best {
                None => Some((i, ratio, a)),
                Some((bi, br, ba)) => {
                    let tie = (ratio - br).abs() <= 1e-12 * (1.0 + br);
                    let better = if tie {
                        if bland {
                            self.basis[i] < self.basis[bi]
                        } else {
                            a > ba
                        }
                    } else {
                        ratio < br
                    };
                    if better {
                        Some((i, ratio, a))
                    } else {
                        Some((bi, br, ba))
                    }
                }
            };
        }
        best.map(|(i, _, _)| i)
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let w = self.width;
        let inv = 1.0 / self.at(pr, pc);
        let (before, rest) = self.cells.split_at_mut(pr * w);
        let (prow, after) = rest.split_at_mut(w);
        for v in prow.iter_mut() {
            *v *= inv;
        }
        prow[pc] = 1.0;
        let nz: Vec<usize> = (0..w).filter(|&j| prow[j] != 0.0).collect();
        let eliminate = |line: &mut [f64]| {
            let f = line[pc];
            if f != 0.0 {
                for &j in &nz {
                    line[j] -= f * prow[j];
                }
                line[pc] = 0.0;
            }
        };
        before.chunks_exact_mut(w).for_each(eliminate);
        after.chunks_exact_mut(w).for_each(eliminate);
        let f = self.cost[pc];
        if f != 0.0 {
            for &j in &nz {
                if j < w - 1 {
                    self.cost[j] -= f * prow[j];
                }
            }
            self.cost[pc] = 0.0;
        }
        self.basis[pr] = pc;
    }

    fn run(mut self) -> Result<Solution, LpError> {
        let limit = 50 * (self.vars + self.rows) + 1000;
        let mut pivots = 0;
        let mut degenerate_run = 0;
        let mut bland = false;
        while let Some(col) = self.entering(bland) {
            let Some(row) = self.leaving(col, bland) else {
                return Err(LpError::Unbounded { column: col });
            };
            if self.rhs(row) <= PIVOT_EPS {
                degenerate_run += 1;
                if degenerate_run > self.rows.max(50) {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
            }
            self.pivot(row, col);
            pivots += 1;
            if pivots > limit {
                return Err(LpError::IterationLimit(limit));
            }
        }
        let mut x = vec![0.0; self.vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.vars {
                x[b] = self.rhs(i).max(0.0);
            }
        }
        let value = x.iter().zip(&self.objective).map(|(a, c)| a * c).sum();
        Ok(Solution { value, x, pivots })
    }
}
