//! The two-parameter relaxation `psi(beta, gamma)` of the `phi` maximum and
//! its maximization over the quadrilateral cut out by
//! `0 <= beta <= gamma <= n/2` and `beta >= 0.4 gamma - 0.6 - 0.2 ln n`.

use num_rational::Ratio;
use serde::Serialize;

pub type Rational = Ratio<i128>;

pub fn psi(beta: f64, gamma: f64, n: f64) -> f64 {
    (-2.0 * beta.powi(3) - 4.0 * gamma.powi(3)
        + 3.0 * gamma * gamma * n
        + 6.0 * gamma * gamma
        + 6.0 * gamma
        + 2.0)
        / 24.0
}

/// Coefficient of `n^3` in `psi(a n, c n, n)`: `(-2a^3 - 4c^3 + 3c^2) / 24`.
pub fn psi_leading_coefficient(a: Rational, c: Rational) -> Rational {
    let two = Rational::from_integer(2);
    let three = Rational::from_integer(3);
    let four = Rational::from_integer(4);
    (-two * a * a * a - four * c * c * c + three * c * c) / Rational::from_integer(24)
}

/// Maximizer of the leading coefficient along `beta = 0.4 gamma`:
/// `(25/129, 125/258)`.
pub fn maximizer_fractions() -> (Rational, Rational) {
    (Rational::new(25, 129), Rational::new(125, 258))
}

/// `15625 / 1597536`, the asymptotic `phi_max / n^3`.
pub fn phi_coefficient() -> Rational {
    Rational::new(15625, 1597536)
}

/// `7/48 + 2 * 15625/1597536`, the leading coefficient of the reset-threshold bound.
pub fn bound_coefficient() -> Rational {
    Rational::new(7, 48) + Rational::from_integer(2) * phi_coefficient()
}

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub beta: f64,
    pub gamma: f64,
}

/// Vertices in boundary order: `(0,0)`, `(0, 0.5 ln n + 1.5)`,
/// `(0.2n - 0.2 ln n - 0.6, 0.5n)`, `(0.5n, 0.5n)`.
pub fn quadrilateral(n: f64) -> [Point; 4] {
    let ln = n.ln();
    [
        Point {
            beta: 0.0,
            gamma: 0.0,
        },
        Point {
            beta: 0.0,
            gamma: 0.5 * ln + 1.5,
        },
        Point {
            beta: 0.2 * n - 0.2 * ln - 0.6,
            gamma: 0.5 * n,
        },
        Point {
            beta: 0.5 * n,
            gamma: 0.5 * n,
        },
    ]
}

/// Slack of the summation inequality: `beta - (0.4 gamma - 0.6 - 0.2 ln n)`.
pub fn budget_slack(p: Point, n: f64) -> f64 {
    p.beta - (0.4 * p.gamma - 0.6 - 0.2 * n.ln())
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PsiMaximum {
    pub beta: f64,
    pub gamma: f64,
    pub value: f64,
    /// Index `i` of the edge from vertex `i` to vertex `i + 1 (mod 4)`.
    pub edge: usize,
}

const EDGE_SAMPLES: usize = 4096;

fn lerp(a: Point, b: Point, t: f64) -> Point {
    Point {
        beta: a.beta + t * (b.beta - a.beta),
        gamma: a.gamma + t * (b.gamma - a.gamma),
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo < 1e-15 {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    (lo + hi) / 2.0
}

/// Maximizes `psi` over the quadrilateral. `psi` is strictly decreasing in
/// `beta`, so the maximum lies on the boundary; each edge is sampled and the
/// best sample refined by golden-section search on its neighbouring bracket.
pub fn maximize_psi(n: f64) -> PsiMaximum {
    let v = quadrilateral(n);
    let mut best = PsiMaximum {
        beta: v[0].beta,
        gamma: v[0].gamma,
        value: psi(v[0].beta, v[0].gamma, n),
        edge: 0,
    };
    for edge in 0..4 {
        let (a, b) = (v[edge], v[(edge + 1) % 4]);
        let along = |t: f64| {
            let p = lerp(a, b, t);
            psi(p.beta, p.gamma, n)
        };
        let step = 1.0 / EDGE_SAMPLES as f64;
        let (i, _) = (0..=EDGE_SAMPLES)
            .map(|i| (i, along(i as f64 * step)))
            .fold(
                (0, f64::NEG_INFINITY),
                |acc, x| if x.1 > acc.1 { x } else { acc },
            );
        let lo = (i as f64 - 1.0).max(0.0) * step;
        let hi = (i as f64 + 1.0).min(EDGE_SAMPLES as f64) * step;
        let t = golden_max(along, lo, hi);
        let t = [lo, t, hi]
            .into_iter()
            .fold(t, |acc, c| if along(c) > along(acc) { c } else { acc });
        let p = lerp(a, b, t);
        let value = along(t);
        if value > best.value {
            best = PsiMaximum {
                beta: p.beta,
                gamma: p.gamma,
                value,
                edge,
            };
        }
    }
    best
}
