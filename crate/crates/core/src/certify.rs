//! Bound certificates for a single automaton and the bound table.
//!
//! All bounds are exact integers or rationals; every flag is a plain
//! comparison against them.

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::spectrum::{rank_profile, RankProfile};
use crate::synthesis::{compression_budget, synthesize_with_profile, SynthesisTrace};

pub type Rational = Ratio<i128>;

/// `p/q`, or `p` for integers.
pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

/// `(n - 1)^2`.
pub fn cerny_bound(n: usize) -> u128 {
    let d = n.saturating_sub(1) as u128;
    d * d
}

/// Cumulative compression allowance `sum_{r=0}^{n-2} (r+1)(r+2)/2`, which
/// equals `(n^3 - n)/6`.
pub fn pin_frankl_bound(n: usize) -> u128 {
    (0..n.saturating_sub(1))
        .map(|r| compression_budget(r) as u128)
        .sum()
}

/// `(7/48) n^3 + 2 sum_{r=rho..floor(n/2)} min(r^2/4, 1 s_1 + ... + r s_r) + 3 n^2`.
pub fn corollary6_value(profile: &RankProfile) -> Rational {
    let n = profile.n as i128;
    Rational::new(7 * n * n * n, 48)
        + Rational::from_integer(2) * profile.phi_sum()
        + Rational::from_integer(3 * n * n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateFlags {
    pub exact_le_cerny: Option<bool>,
    pub exact_le_pin_frankl: Option<bool>,
    pub exact_le_corollary6: Option<bool>,
    pub constructed_le_pin_frankl: bool,
    pub constructed_le_corollary6: bool,
    pub steps_within_budget: bool,
}

impl CertificateFlags {
    pub fn all_true(&self) -> bool {
        [
            self.exact_le_cerny,
            self.exact_le_pin_frankl,
            self.exact_le_corollary6,
        ]
        .into_iter()
        .all(|f| f != Some(false))
            && self.constructed_le_pin_frankl
            && self.constructed_le_corollary6
            && self.steps_within_budget
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub n: usize,
    pub m: usize,
    pub rho: usize,
    pub rt_exact: Option<usize>,
    pub rt_constructed: usize,
    pub cerny_bound: u128,
    pub pin_frankl_bound: u128,
    #[serde(serialize_with = "serialize_rational")]
    pub corollary6_value: Rational,
    pub flags: CertificateFlags,
}

/// Builds the report from an already computed profile and trace.
pub fn certificate(
    automaton: &Automaton,
    profile: &RankProfile,
    trace: &SynthesisTrace,
    with_exact: bool,
) -> CertificateReport {
    let n = automaton.states();
    let cerny = cerny_bound(n);
    let pin_frankl = pin_frankl_bound(n);
    let cor6 = corollary6_value(profile);
    let rt_exact = with_exact.then(|| profile.reset_threshold());
    let constructed = trace.length();
    let le_cor6 = |len: usize| Rational::from_integer(len as i128) <= cor6;
    CertificateReport {
        n,
        m: automaton.letters(),
        rho: profile.rho,
        rt_exact,
        rt_constructed: constructed,
        cerny_bound: cerny,
        pin_frankl_bound: pin_frankl,
        corollary6_value: cor6,
        flags: CertificateFlags {
            exact_le_cerny: rt_exact.map(|rt| rt as u128 <= cerny),
            exact_le_pin_frankl: rt_exact.map(|rt| rt as u128 <= pin_frankl),
            exact_le_corollary6: rt_exact.map(le_cor6),
            constructed_le_pin_frankl: constructed as u128 <= pin_frankl,
            constructed_le_corollary6: le_cor6(constructed),
            steps_within_budget: trace.all_bounds_ok(),
        },
    }
}

/// Certifies `automaton`. The constructive pipeline consumes the full length
/// spectrum, so the exact threshold is always known; `with_exact` only
/// controls whether it is reported and compared.
pub fn certify(
    automaton: &Automaton,
    with_exact: bool,
    budget: usize,
) -> Result<CertificateReport> {
    let profile = rank_profile(automaton, budget)?;
    let trace = synthesize_with_profile(automaton, &profile, budget)?;
    Ok(certificate(automaton, &profile, &trace, with_exact))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub n: usize,
    pub cerny: u128,
    pub pin_frankl: u128,
    /// `(7/48 + 2 * 15625/1597536) n^3`, rounded.
    pub cubic_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundTable {
    pub rows: Vec<BoundRow>,
    #[serde(serialize_with = "serialize_rational")]
    pub coefficient: Rational,
    /// `coefficient` to six decimals.
    pub coefficient_decimal: String,
}

pub fn bound_table(n_values: &[usize]) -> Result<BoundTable> {
    let coefficient = synchro_optim::bound_coefficient();
    let c = synchro_optim::psi::to_f64(coefficient);
    let rows = n_values
        .iter()
        .map(|&n| {
            if n < 2 {
                return Err(Error::Precondition(format!(
                    "bound table needs n >= 2, got {n}"
                )));
            }
            Ok(BoundRow {
                n,
                cerny: cerny_bound(n),
                pin_frankl: pin_frankl_bound(n),
                cubic_estimate: (c * (n as f64).powi(3)).round(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(BoundTable {
        rows,
        coefficient,
        coefficient_decimal: format!("{c:.6}"),
    })
}
