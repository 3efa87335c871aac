//! Exact maximization of `phi` over the budgeted set by linear programming.
//!
//! `phi` is a sum of minima of linear forms, so it is concave and piecewise
//! linear and its maximum is the optimum of the epigraph program
//!
//! ```text
//! maximize   sum_{r=rho..k} t_r
//! subject to t_r <= r^2/4,  t_r <= 1 s_1 + ... + r s_r,  sum s <= rho,  s, t >= 0
//! ```
//!
//! The normalized program drops the `t` variables: on tuples with
//! `s_1 = ... = s_{rho-1} = 0` whose prefixes respect the caps, `phi` equals
//! `sum (k - r + 1) r s_r`, and every feasible tuple can be moved into that set
//! without lowering `phi`. Both programs have the same optimum; the normalized
//! one has half the variables and is what the `rho` scans use.

use serde::Serialize;

use crate::simplex::LinearProgram;
use crate::tuple::{cap, check_parameters, claim1_normalize, phi, FeasibleTuple};
use crate::OptimError;

/// Coordinates below this are treated as zero when locating the support.
pub const SUPPORT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct PhiOptimum {
    pub value: f64,
    pub argmax: FeasibleTuple,
    /// First nonzero index of the maximizer; `None` for the zero tuple.
    pub beta: Option<usize>,
    pub gamma: Option<usize>,
    pub pivots: usize,
}

impl PhiOptimum {
    fn from_solution(
        n: usize,
        rho: usize,
        s: Vec<f64>,
        value: f64,
        pivots: usize,
    ) -> Result<Self, OptimError> {
        let k = n / 2;
        // Rounding can leave the total a few ulps above the budget.
        let total: f64 = s.iter().sum();
        let s = if total > rho as f64 {
            let scale = rho as f64 / total;
            s.into_iter().map(|v| v * scale).collect()
        } else {
            s
        };
        debug_assert_eq!(s.len(), k);
        let argmax = FeasibleTuple::new(n, rho, s)?;
        let support = argmax.support(SUPPORT_TOL);
        Ok(PhiOptimum {
            value,
            beta: support.map(|(b, _)| b),
            gamma: support.map(|(_, g)| g),
            argmax,
            pivots,
        })
    }
}

/// Maximizes `phi` through the epigraph program over all of `s_1..s_k`.
pub fn lp_max_phi(n: usize, rho: usize) -> Result<PhiOptimum, OptimError> {
    let k = check_parameters(n, rho)?;
    let terms = k - rho + 1;
    // variables: s_1..s_k, then t_rho..t_k
    let vars = k + terms;
    let mut objective = vec![0.0; vars];
    objective[k..].iter_mut().for_each(|c| *c = 1.0);
    let mut lp = LinearProgram::new(objective);

    let mut budget = vec![1.0; k];
    budget.resize(vars, 0.0);
    lp.add_constraint(budget, rho as f64)?;
    for (i, r) in (rho..=k).enumerate() {
        let mut row = vec![0.0; vars];
        row[k + i] = 1.0;
        lp.add_constraint(row, cap(r))?;

        let mut row = vec![0.0; vars];
        row[k + i] = 1.0;
        for j in 1..=r {
            row[j - 1] = -(j as f64);
        }
        lp.add_constraint(row, 0.0)?;
    }

    let sol = lp.solve()?;
    let s = sol.x[..k].to_vec();
    PhiOptimum::from_solution(n, rho, s, sol.value, sol.pivots)
}

/// Maximizes `phi` through the normalized linear program over `s_rho..s_k`.
pub fn lp_max_phi_normalized(n: usize, rho: usize) -> Result<PhiOptimum, OptimError> {
    let k = check_parameters(n, rho)?;
    let terms = k - rho + 1;
    let objective = (rho..=k).map(|r| ((k - r + 1) * r) as f64).collect();
    let mut lp = LinearProgram::new(objective);
    lp.add_constraint(vec![1.0; terms], rho as f64)?;
    for tau in rho..=k {
        let row = (rho..=tau).map(|j| j as f64).collect();
        lp.add_constraint(row, cap(tau))?;
    }

    let sol = lp.solve()?;
    let mut s = vec![0.0; rho - 1];
    s.extend_from_slice(&sol.x);
    PhiOptimum::from_solution(n, rho, s, sol.value, sol.pivots)
}

/// Recomputes `phi` at the reported maximizer after normalizing it.
pub fn recheck(opt: &PhiOptimum) -> f64 {
    phi(&claim1_normalize(&opt.argmax))
}
