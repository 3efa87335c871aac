//! The simplex optimum against exhaustive vertex enumeration, random feasible
//! tuples, the normalization map and the analytic relaxation.

use proptest::prelude::*;
use synchro_optim::{
    best_over_rho, claim1_normalize, lp_max_phi, lp_max_phi_normalized, maximize_psi, phi,
    phi_linear, FeasibleTuple,
};

/// Solves a square system by Gaussian elimination with partial pivoting.
fn solve(mut m: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let d = b.len();
    for col in 0..d {
        let piv = (col..d).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for row in 0..d {
            if row != col {
                let f = m[row][col] / m[col][col];
                let pivot_row = m[col].clone();
                for (x, p) in m[row][col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= f * p;
                }
                b[row] -= f * b[col];
            }
        }
    }
    Some((0..d).map(|i| b[i] / m[i][i]).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Maximum of `sum (k - r + 1) r s_r` over `s_rho..s_k >= 0` with capped
/// prefixes and `sum s <= rho`, by trying every vertex.
fn vertex_oracle(n: usize, rho: usize) -> f64 {
    let k = n / 2;
    let d = k - rho + 1;
    let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
    for t in rho..=k {
        let coeffs = (rho..=k)
            .map(|j| if j <= t { j as f64 } else { 0.0 })
            .collect();
        rows.push((coeffs, (t * t) as f64 / 4.0));
    }
    rows.push((vec![1.0; d], rho as f64));
    for i in 0..d {
        let mut coeffs = vec![0.0; d];
        coeffs[i] = -1.0;
        rows.push((coeffs, 0.0));
    }
    let objective: Vec<f64> = (rho..=k).map(|r| ((k - r + 1) * r) as f64).collect();
    let mut best = f64::NEG_INFINITY;
    for active in combinations(rows.len(), d) {
        let m = active.iter().map(|&i| rows[i].0.clone()).collect();
        let b = active.iter().map(|&i| rows[i].1).collect();
        let Some(x) = solve(m, b) else { continue };
        let feasible = rows
            .iter()
            .all(|(c, rhs)| c.iter().zip(&x).map(|(a, v)| a * v).sum::<f64>() <= rhs + 1e-9);
        if feasible {
            best = best.max(objective.iter().zip(&x).map(|(a, v)| a * v).sum());
        }
    }
    best
}

fn params(max_n: usize) -> Vec<(usize, usize)> {
    (3..=max_n)
        .flat_map(|n| (1..n.div_ceil(2)).map(move |rho| (n, rho)))
        .collect()
}

#[test]
fn simplex_matches_vertex_enumeration() {
    for (n, rho) in params(16) {
        let oracle = vertex_oracle(n, rho);
        let lp = lp_max_phi_normalized(n, rho).unwrap().value;
        let epi = lp_max_phi(n, rho).unwrap().value;
        assert!(
            (lp - oracle).abs() < 1e-7 * oracle.max(1.0),
            "n={n} rho={rho}: {lp} vs {oracle}"
        );
        assert!(
            (epi - oracle).abs() < 1e-7 * oracle.max(1.0),
            "n={n} rho={rho}: {epi} vs {oracle}"
        );
    }
}

#[test]
fn epigraph_and_normalized_programs_agree() {
    for n in [30usize, 47, 80, 121] {
        for rho in [1, n / 7, n / 5, n / 3, n.div_ceil(2) - 1] {
            let a = lp_max_phi(n, rho).unwrap();
            let b = lp_max_phi_normalized(n, rho).unwrap();
            assert!(
                (a.value - b.value).abs() < 1e-7 * b.value,
                "n={n} rho={rho}"
            );
            assert!((phi(&a.argmax) - a.value).abs() < 1e-7 * a.value);
            assert!((phi(&b.argmax) - b.value).abs() < 1e-7 * b.value);
        }
    }
}

/// Random point of the budgeted simplex; half the draws land on its face.
fn random_tuple(n: usize, rho: usize, seed: u64) -> FeasibleTuple {
    let mut rng = unit_rng(seed);
    let k = n / 2;
    let raw: Vec<f64> = (0..k).map(|_| -(rng().max(1e-300)).ln()).collect();
    let sum: f64 = raw.iter().sum();
    let scale = if seed.is_multiple_of(2) { 1.0 } else { rng() };
    let s = raw.iter().map(|v| v / sum * rho as f64 * scale).collect();
    FeasibleTuple::new(n, rho, s).unwrap()
}

/// A splitmix64 stream mapped to `[0, 1)`.
fn unit_rng(seed: u64) -> impl FnMut() -> f64 {
    let mut state = seed;
    move || {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        ((z ^ (z >> 31)) >> 11) as f64 / (1u64 << 53) as f64
    }
}

const CONFIGS: [(usize, usize); 6] = [(10, 2), (10, 4), (25, 5), (40, 8), (64, 12), (101, 20)];

#[test]
fn optimum_dominates_random_tuples() {
    for (n, rho) in CONFIGS {
        let best = lp_max_phi_normalized(n, rho).unwrap().value;
        for seed in 0..1000 {
            let t = random_tuple(n, rho, seed);
            assert!(
                phi(&t) <= best * (1.0 + 1e-9),
                "n={n} rho={rho} seed={seed}"
            );
        }
    }
}

#[test]
fn normalization_is_feasible_and_monotone() {
    for (n, rho) in CONFIGS {
        for seed in 0..1000 {
            let t = random_tuple(n, rho, seed);
            let u = claim1_normalize(&t);
            assert!(FeasibleTuple::new(n, rho, u.values().to_vec()).is_ok());
            assert!(u.total() <= t.total() * (1.0 + 1e-12) + 1e-12);
            assert!(u.is_normalized(), "n={n} rho={rho} seed={seed}");
            assert!(phi(&u) >= phi(&t) - 1e-9 * phi(&t).max(1.0));
            assert!((phi_linear(&u) - phi(&u)).abs() < 1e-9 * phi(&u).max(1.0));
        }
    }
}

#[test]
fn maximizers_have_the_staircase_structure() {
    for n in [60usize, 120, 258] {
        for rho in [n / 10, n / 5, n / 4] {
            let opt = lp_max_phi_normalized(n, rho).unwrap();
            let (beta, gamma) = (opt.beta.unwrap(), opt.gamma.unwrap());
            let t = &opt.argmax;
            let prefix = t.weighted_prefix();
            let tol = 1e-7 * (n * n) as f64;
            for r in beta + 1..gamma {
                let cap = (r * r) as f64 / 4.0;
                assert!((prefix[r - 1] - cap).abs() < tol, "n={n} rho={rho} r={r}");
            }
            for r in beta + 2..gamma {
                assert!(
                    (t.get(r) - (0.5 - 0.25 / r as f64)).abs() < 1e-6,
                    "n={n} rho={rho} r={r}"
                );
            }
            if beta < t.k() {
                assert!(t.get(beta) + t.get(beta + 1) >= 0.25 * (beta + 1) as f64 - 1e-6);
            }
        }
    }
}

#[test]
fn relaxation_tracks_the_optimum() {
    for n in [258usize, 516, 1032] {
        let lp = best_over_rho(n).unwrap().best.value;
        let psi = maximize_psi(n as f64).value;
        let slack = (psi - lp).abs() / (n * n) as f64;
        println!("n={n}: lp={lp:.1} psi={psi:.1} |gap|/n^2={slack:.4}");
        assert!(slack < 0.1, "n={n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn normalization_never_loses_value(
        (n, rho, s) in (5usize..60).prop_flat_map(|n| (Just(n), 1..n.div_ceil(2)))
            .prop_flat_map(|(n, rho)| (Just(n), Just(rho), prop::collection::vec(0.0..1.0f64, n / 2)))
    ) {
        let total: f64 = s.iter().sum();
        let s: Vec<f64> = if total > rho as f64 { s.iter().map(|v| v * rho as f64 / total).collect() } else { s };
        let t = FeasibleTuple::new(n, rho, s).unwrap();
        let u = claim1_normalize(&t);
        prop_assert!(u.is_normalized());
        prop_assert!(phi(&u) >= phi(&t) - 1e-9 * phi(&t).max(1.0));
        prop_assert!(u.total() <= t.total() + 1e-9);
        prop_assert!(phi(&u) <= lp_max_phi_normalized(n, rho).unwrap().value * (1.0 + 1e-9));
    }
}
