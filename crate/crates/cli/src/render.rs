//! Plain-text renderings of the reports.

use std::fmt::Write as _;

use synchro_core::certify::rational_string;
use synchro_core::{BoundTable, CertificateReport, RankProfile, SynthesisTrace};
use synchro_optim::ConvergenceReport;

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn profile(p: &RankProfile, letters: usize) -> String {
    let mut out = String::new();
    writeln!(out, "lambda: {}", join(&p.lambda)).unwrap();
    writeln!(out, "delta: {}", join(&p.delta)).unwrap();
    writeln!(out, "rho: {}", p.rho).unwrap();
    let s: Vec<String> = (1..=p.k()).map(|r| format!("s_{r}={}", p.s(r))).collect();
    writeln!(out, "s: {}", s.join(" ")).unwrap();
    write!(
        out,
        "rt: {} word={}",
        p.reset_threshold(),
        p.witnesses.last().unwrap().display(letters)
    )
    .unwrap();
    out
}

pub fn trace(t: &SynthesisTrace, letters: usize) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:>4}  {:<12} {:>6} {:>7} {:>6} {:>7} {:>6}  ok",
        "step", "kind", "corank", "length", "added", "budget", "limit"
    )
    .unwrap();
    for (i, s) in t.steps.iter().enumerate() {
        let kind = serde_json::to_value(s.kind).unwrap();
        let limit = s.length_limit.map_or("-".to_string(), |l| l.to_string());
        writeln!(
            out,
            "{i:>4}  {:<12} {:>6} {:>7} {:>6} {:>7} {:>6}  {}",
            kind.as_str().unwrap(),
            s.corank,
            s.length,
            s.added,
            s.budget,
            limit,
            yes(s.bound_ok)
        )
        .unwrap();
    }
    writeln!(out, "word: {}", t.final_word.display(letters)).unwrap();
    writeln!(out, "length: {}", t.length()).unwrap();
    write!(out, "all bounds ok: {}", yes(t.all_bounds_ok())).unwrap();
    out
}

pub fn certificate(r: &CertificateReport) -> String {
    let opt = |v: Option<bool>| v.map_or("-", yes);
    let mut out = String::new();
    writeln!(out, "n={} m={} rho={}", r.n, r.m, r.rho).unwrap();
    if let Some(rt) = r.rt_exact {
        writeln!(out, "rt_exact: {rt}").unwrap();
    }
    writeln!(out, "rt_constructed: {}", r.rt_constructed).unwrap();
    writeln!(out, "cerny_bound: {}", r.cerny_bound).unwrap();
    writeln!(out, "pin_frankl_bound: {}", r.pin_frankl_bound).unwrap();
    writeln!(
        out,
        "corollary6_value: {}",
        rational_string(&r.corollary6_value)
    )
    .unwrap();
    let f = &r.flags;
    writeln!(out, "exact <= cerny: {}", opt(f.exact_le_cerny)).unwrap();
    writeln!(out, "exact <= pin_frankl: {}", opt(f.exact_le_pin_frankl)).unwrap();
    writeln!(out, "exact <= corollary6: {}", opt(f.exact_le_corollary6)).unwrap();
    writeln!(
        out,
        "constructed <= pin_frankl: {}",
        yes(f.constructed_le_pin_frankl)
    )
    .unwrap();
    writeln!(
        out,
        "constructed <= corollary6: {}",
        yes(f.constructed_le_corollary6)
    )
    .unwrap();
    write!(out, "steps within budget: {}", yes(f.steps_within_budget)).unwrap();
    out
}

pub fn convergence(report: &ConvergenceReport, bounds: &BoundTable) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:>6} {:>6} {:>16} {:>10} {:>10} {:>9} {:>9} {:>14} {:>11}",
        "n", "rho*", "lp_value", "ratio", "psi_ratio", "beta*/n", "gamma*/n", "gap", "coefficient"
    )
    .unwrap();
    for row in &report.rows {
        let n = row.n as f64;
        writeln!(
            out,
            "{:>6} {:>6} {:>16.3} {:>10.7} {:>10.7} {:>9.6} {:>9.6} {:>14.3} {:>11.7}",
            row.n,
            row.best_rho,
            row.lp_value,
            row.ratio,
            row.psi_ratio,
            row.psi.beta / n,
            row.psi.gamma / n,
            row.gap,
            7.0 / 48.0 + 2.0 * row.ratio
        )
        .unwrap();
    }
    writeln!(out, "target ratio: {:.7}", report.target_ratio).unwrap();
    writeln!(
        out,
        "coefficient: {:.7} (target {:.7})",
        report.coefficient, report.target_coefficient
    )
    .unwrap();
    writeln!(out).unwrap();
    writeln!(
        out,
        "{:>6} {:>14} {:>16} {:>16}",
        "n", "cerny", "pin_frankl", "cubic_estimate"
    )
    .unwrap();
    for row in &bounds.rows {
        writeln!(
            out,
            "{:>6} {:>14} {:>16} {:>16.0}",
            row.n, row.cerny, row.pin_frankl, row.cubic_estimate
        )
        .unwrap();
    }
    write!(
        out,
        "bound coefficient: {} = {}",
        rational_string(&bounds.coefficient),
        bounds.coefficient_decimal
    )
    .unwrap();
    out
}

pub fn convergence_csv(report: &ConvergenceReport) -> String {
    let mut out = String::from(
        "n,best_rho,lp_value,ratio,psi_value,psi_ratio,psi_beta,psi_gamma,gap,coefficient",
    );
    for row in &report.rows {
        write!(
            out,
            "\n{},{},{},{},{},{},{},{},{},{}",
            row.n,
            row.best_rho,
            row.lp_value,
            row.ratio,
            row.psi.value,
            row.psi_ratio,
            row.psi.beta,
            row.psi.gamma,
            row.gap,
            7.0 / 48.0 + 2.0 * row.ratio
        )
        .unwrap();
    }
    out
}
