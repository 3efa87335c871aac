//! Budgeted tuples `(s_1, ..., s_k)` and the objective
//! `phi(s) = sum_{r=rho..k} min(r^2/4, 1 s_1 + ... + r s_r)`.

use serde::Serialize;

use crate::OptimError;

/// Relative slack allowed when checking the budget and the prefix caps.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Checks `0 < rho < n/2` and returns `k = floor(n/2)`.
pub fn check_parameters(n: usize, rho: usize) -> Result<usize, OptimError> {
    if rho == 0 || 2 * rho >= n {
        return Err(OptimError::InvalidParameters { n, rho });
    }
    Ok(n / 2)
}

pub(crate) fn cap(r: usize) -> f64 {
    (r * r) as f64 / 4.0
}

/// A point of the budgeted set: nonnegative `s_1..s_k` with `sum s <= rho`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibleTuple {
    n: usize,
    rho: usize,
    s: Vec<f64>,
}

impl FeasibleTuple {
    /// `s[j - 1]` holds `s_j`, and `s.len()` must equal `floor(n/2)`.
    pub fn new(n: usize, rho: usize, s: Vec<f64>) -> Result<Self, OptimError> {
        let k = check_parameters(n, rho)?;
        if s.len() != k {
            return Err(OptimError::Infeasible(format!(
                "expected {k} coordinates, got {}",
                s.len()
            )));
        }
        if let Some(j) = s.iter().position(|v| !v.is_finite() || *v < 0.0) {
            return Err(OptimError::Infeasible(format!(
                "s_{} = {} is not a nonnegative number",
                j + 1,
                s[j]
            )));
        }
        let total: f64 = s.iter().sum();
        if total > rho as f64 * (1.0 + FEASIBILITY_TOL) {
            return Err(OptimError::Infeasible(format!(
                "sum {total} exceeds budget {rho}"
            )));
        }
        Ok(FeasibleTuple { n, rho, s })
    }

    pub fn zeros(n: usize, rho: usize) -> Result<Self, OptimError> {
        let k = check_parameters(n, rho)?;
        Ok(FeasibleTuple {
            n,
            rho,
            s: vec![0.0; k],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn k(&self) -> usize {
        self.s.len()
    }

    /// `s_r` for `1 <= r <= k`.
    pub fn get(&self, r: usize) -> f64 {
        self.s[r - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.s
    }

    pub fn total(&self) -> f64 {
        self.s.iter().sum()
    }

    /// Weighted prefix sums: entry `r - 1` is `1 s_1 + ... + r s_r`.
    pub fn weighted_prefix(&self) -> Vec<f64> {
        self.s
            .iter()
            .enumerate()
            .scan(0.0, |acc, (i, v)| {
                *acc += (i + 1) as f64 * v;
                Some(*acc)
            })
            .collect()
    }

    /// Smallest `tau` in `rho..=k` whose prefix exceeds `tau^2/4`.
    pub fn first_cap_violation(&self) -> Option<usize> {
        let prefix = self.weighted_prefix();
        (self.rho..=self.k()).find(|&t| prefix[t - 1] > cap(t) * (1.0 + FEASIBILITY_TOL) + 1e-12)
    }

    /// True when `s_1 = ... = s_{rho-1} = 0` and every prefix respects its cap,
    /// i.e. every minimum in `phi` is attained by the prefix.
    pub fn is_normalized(&self) -> bool {
        self.s[..self.rho - 1].iter().all(|&v| v == 0.0) && self.first_cap_violation().is_none()
    }

    /// First and last indices `r` with `s_r > tol`.
    pub fn support(&self, tol: f64) -> Option<(usize, usize)> {
        let first = self.s.iter().position(|&v| v > tol)?;
        let last = self.s.iter().rposition(|&v| v > tol)?;
        Some((first + 1, last + 1))
    }
}

pub fn phi(t: &FeasibleTuple) -> f64 {
    let prefix = t.weighted_prefix();
    (t.rho..=t.k()).map(|r| cap(r).min(prefix[r - 1])).sum()
}

/// `sum_{r=rho..k} (k - r + 1) r s_r`, which equals [`phi`] on normalized tuples.
pub fn phi_linear(t: &FeasibleTuple) -> f64 {
    let k = t.k();
    (t.rho..=k)
        .map(|r| ((k - r + 1) * r) as f64 * t.get(r))
        .sum()
}

/// Maps a feasible tuple to a normalized one without decreasing `phi` or
/// increasing the total mass.
///
/// First the mass below `rho` is folded into `s_rho` so the weighted prefix at
/// `rho` is kept. Then, scanning `t = rho..k`, any prefix above `t^2/4` is cut
/// back to the cap by lowering `s_t`, and the removed amount is handed to
/// `s_{t+1}` (or dropped when `t = k`).
pub fn claim1_normalize(t: &FeasibleTuple) -> FeasibleTuple {
    let rho = t.rho;
    let k = t.k();
    let mut s = t.s.clone();

    if s[..rho - 1].iter().any(|&v| v != 0.0) {
        let folded: f64 = (1..=rho).map(|j| j as f64 * s[j - 1]).sum();
        s[..rho - 1].iter_mut().for_each(|v| *v = 0.0);
        s[rho - 1] = folded / rho as f64;
    }

    let mut prefix: f64 = 0.0;
    for r in rho..=k {
        let alpha = prefix + r as f64 * s[r - 1];
        if alpha > cap(r) {
            let excess = (alpha - cap(r)) / r as f64;
            s[r - 1] = (s[r - 1] - excess).max(0.0);
            if r < k {
                s[r] += excess;
            }
        }
        prefix += r as f64 * s[r - 1];
    }

    FeasibleTuple { n: t.n, rho, s }
}
