//! Scans over the budget `rho` and the `n`-convergence table.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::lp::{lp_max_phi_normalized, PhiOptimum};
use crate::psi::{bound_coefficient, maximize_psi, phi_coefficient, to_f64, PsiMaximum};
use crate::OptimError;

const GRID_POINTS: usize = 40;

/// Best `phi` maximum over all admissible budgets for one `n`.
#[derive(Debug, Clone, Serialize)]
pub struct RhoScan {
    pub n: usize,
    pub best_rho: usize,
    pub best: PhiOptimum,
    /// Every `(rho, value)` evaluated, sorted by `rho`.
    pub evaluated: Vec<(usize, f64)>,
}

/// Geometric grid over `1..=max`, deduplicated and including both ends.
pub fn geometric_grid(max: usize, points: usize) -> Vec<usize> {
    if max <= points {
        return (1..=max).collect();
    }
    let ratio = (max as f64).powf(1.0 / (points - 1) as f64);
    let mut grid: Vec<usize> = (0..points)
        .map(|i| (ratio.powi(i as i32).round() as usize).clamp(1, max))
        .collect();
    grid.push(max);
    grid.sort_unstable();
    grid.dedup();
    grid
}

struct Scanner {
    n: usize,
    cache: BTreeMap<usize, PhiOptimum>,
}

impl Scanner {
    fn eval_many(&mut self, rhos: &[usize]) -> Result<(), OptimError> {
        let todo: Vec<usize> = rhos
            .iter()
            .copied()
            .filter(|r| !self.cache.contains_key(r))
            .collect();
        let n = self.n;
        let solved: Vec<(usize, PhiOptimum)> = todo
            .par_iter()
            .map(|&rho| lp_max_phi_normalized(n, rho).map(|o| (rho, o)))
            .collect::<Result<_, _>>()?;
        self.cache.extend(solved);
        Ok(())
    }

    fn value(&mut self, rho: usize) -> Result<f64, OptimError> {
        self.eval_many(&[rho])?;
        Ok(self.cache[&rho].value)
    }

    fn argmax_in(&self, lo: usize, hi: usize) -> usize {
        self.cache
            .range(lo..=hi)
            .fold(None::<(usize, f64)>, |acc, (&r, o)| match acc {
                Some((_, v)) if v >= o.value => acc,
                _ => Some((r, o.value)),
            })
            .map(|(r, _)| r)
            .expect("scanned range is non-empty")
    }
}

/// Maximizes the LP optimum over `rho in 1..=ceil(n/2) - 1`: a geometric grid,
/// ternary search on the bracket around the best grid point, then the `+-2`
/// neighbourhood of the incumbent.
pub fn best_over_rho(n: usize) -> Result<RhoScan, OptimError> {
    let max_rho = n.div_ceil(2).saturating_sub(1);
    if max_rho == 0 {
        return Err(OptimError::InvalidParameters { n, rho: 1 });
    }
    let mut scan = Scanner {
        n,
        cache: BTreeMap::new(),
    };
    let grid = geometric_grid(max_rho, GRID_POINTS);
    scan.eval_many(&grid)?;
    let best = scan.argmax_in(1, max_rho);
    let pos = grid.binary_search(&best).expect("best is a grid point");
    let (mut lo, mut hi) = (
        grid[pos.saturating_sub(1)],
        grid[(pos + 1).min(grid.len() - 1)],
    );

    while hi - lo > 2 {
        let m1 = lo + (hi - lo) / 3;
        let m2 = hi - (hi - lo) / 3;
        if scan.value(m1)? < scan.value(m2)? {
            lo = m1 + 1;
        } else {
            hi = m2 - 1;
        }
    }
    let incumbent = scan.argmax_in(1, max_rho);
    let around: Vec<usize> = (incumbent.saturating_sub(2).max(1)..=(incumbent + 2).min(max_rho))
        .chain(lo..=hi)
        .collect();
    scan.eval_many(&around)?;

    let best_rho = scan.argmax_in(1, max_rho);
    let evaluated = scan.cache.iter().map(|(&r, o)| (r, o.value)).collect();
    let best = scan.cache.remove(&best_rho).expect("cached");
    Ok(RhoScan {
        n,
        best_rho,
        best,
        evaluated,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub best_rho: usize,
    pub lp_value: f64,
    /// `lp_value / n^3`.
    pub ratio: f64,
    pub psi: PsiMaximum,
    pub psi_ratio: f64,
    /// `psi.value - lp_value`.
    pub gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// `15625 / 1597536` as a decimal.
    pub target_ratio: f64,
    /// `7/48 + 2 * ratio` of the last row.
    pub coefficient: f64,
    /// `7/48 + 2 * 15625/1597536` as a decimal.
    pub target_coefficient: f64,
}

pub fn convergence_report(n_values: &[usize]) -> Result<ConvergenceReport, OptimError> {
    let mut rows = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let scan = best_over_rho(n)?;
        let cube = (n as f64).powi(3);
        let psi = maximize_psi(n as f64);
        rows.push(ConvergenceRow {
            n,
            best_rho: scan.best_rho,
            lp_value: scan.best.value,
            ratio: scan.best.value / cube,
            psi_ratio: psi.value / cube,
            gap: psi.value - scan.best.value,
            psi,
        });
    }
    let last = rows.last().map(|r| r.ratio).unwrap_or(f64::NAN);
    Ok(ConvergenceReport {
        rows,
        target_ratio: to_f64(phi_coefficient()),
        coefficient: 7.0 / 48.0 + 2.0 * last,
        target_coefficient: to_f64(bound_coefficient()),
    })
}
