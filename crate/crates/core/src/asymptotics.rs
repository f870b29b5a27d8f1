//! Numerical checks of the contraction bounds and of the limit
//! `d_{k,q} / dim L_k -> gcd(2, q^2 - 1) / (q^2 - 1)`.
//!
//! Floating point appears only in the comparisons; `d` and `dim L_k` are exact.

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::brauer::{dkq_general_from_profile, psi_lk, regular_classes, ClassKind};
use crate::digits::{build_profile, dim_lk, PrimePower};
use crate::error::{Error, Result};

/// Slack used for every floating-point inequality in this module.
pub const SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Contraction {
    /// `cos(2 pi / m)` with `m = max(4p, lcm(2, q +/- 1))`, for `q +/- 1 >= 4`.
    Cosine { m: u64, value: f64 },
    /// `q +/- 1 = 3`: the only digit factor is `|zeta_3 + zeta_3^{-1}| / 2 = 1/2`.
    Direct(f64),
    /// `mu_{q +/- 1} = {1}` or `{+1, -1}`, so there is no class to bound.
    NoNontrivialClasses,
}

impl Contraction {
    pub fn value(&self) -> Option<f64> {
        match *self {
            Contraction::Cosine { value, .. } | Contraction::Direct(value) => Some(value),
            Contraction::NoNontrivialClasses => None,
        }
    }
}

fn torus_order(pp: PrimePower, sign: i32) -> u64 {
    match sign {
        -1 => pp.q() - 1,
        1 => pp.q() + 1,
        _ => panic!("sign must be -1 or +1"),
    }
}

/// The contraction constant for the torus `mu_{q + sign}`.
pub fn contraction_constant(pp: PrimePower, sign: i32) -> Contraction {
    let n = torus_order(pp, sign);
    match n {
        0..=2 => Contraction::NoNontrivialClasses,
        3 => Contraction::Direct(0.5),
        _ => {
            let m = (4 * pp.p()).max(n.lcm(&2));
            Contraction::Cosine {
                m,
                value: (2.0 * PI / m as f64).cos(),
            }
        }
    }
}

/// Roots of `mu_n` other than `+1` and `-1`.
fn nontrivial_roots(n: u64) -> u64 {
    n - n.gcd(&2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassRatio {
    pub label: String,
    pub kind: ClassKind,
    pub ratio: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioBoundReport {
    pub k: BigUint,
    pub q: u64,
    pub m: u64,
    pub classes: Vec<ClassRatio>,
}

impl RatioBoundReport {
    pub fn passed(&self) -> bool {
        self.classes.iter().all(|c| c.pass)
    }
}

/// Checks `|psi_{L_k}(A_zeta)| / dim L_k < C^M` on every non-central regular class.
pub fn ratio_bound_check(k: &BigUint, pp: PrimePower) -> Result<RatioBoundReport> {
    if k.is_zero() {
        return Err(Error::InvalidArgument("ratio bound needs k >= 1".into()));
    }
    let profile = build_profile(k, pp);
    let m = profile.nonzero_digit_count();
    let dim = dim_lk(&profile).to_f64().unwrap_or(f64::INFINITY);
    let mut classes = Vec::new();
    for cls in regular_classes(pp) {
        let sign = match cls.kind {
            ClassKind::Central => continue,
            ClassKind::Split => -1,
            ClassKind::Nonsplit => 1,
        };
        let c = contraction_constant(pp, sign)
            .value()
            .expect("a non-central class lives on a torus with nontrivial roots");
        let ratio = psi_lk(&profile, &cls).numeric_embed().norm() / dim;
        let bound = c.powf(m as f64);
        classes.push(ClassRatio {
            label: cls.label(),
            kind: cls.kind,
            ratio,
            bound,
            pass: ratio < bound + SLACK,
        });
    }
    Ok(RatioBoundReport {
        k: k.clone(),
        q: pp.q(),
        m,
        classes,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChebyshevReport {
    pub p: u64,
    pub samples: usize,
    pub comparisons: u64,
    /// First few violations, if any.
    pub violations: Vec<String>,
}

impl ChebyshevReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn sine_ratio(l: u64, x: f64) -> f64 {
    (l as f64 * x).sin() / (l as f64 * x.sin())
}

/// Samples both parts of the sine-ratio lemma on uniform grids.
///
/// Part (a) is checked for `l = 2..=p` (it is an equality for `l = 1`), part
/// (b) for `lambda_0` in `(0, pi / (2p)]`, where every `l <= p` is admissible.
pub fn chebyshev_bound_check(p: u64, samples: usize) -> ChebyshevReport {
    assert!(samples >= 1);
    let mut report = ChebyshevReport {
        p,
        samples,
        comparisons: 0,
        violations: Vec::new(),
    };
    let fail = |report: &mut ChebyshevReport, msg: String| {
        if report.violations.len() < 10 {
            report.violations.push(msg);
        }
    };
    let grid = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / samples as f64;
    for l in 2..=p {
        for a in 1..=samples {
            let x0 = grid(0.0, PI / (2.0 * l as f64), a);
            let top = sine_ratio(l, x0);
            for b in 1..=samples {
                let x = grid(x0, PI / 2.0, b);
                report.comparisons += 1;
                if top <= sine_ratio(l, x).abs() {
                    fail(&mut report, format!("(a) l = {l}, lambda0 = {x0}, lambda = {x}"));
                }
            }
        }
    }
    for a in 1..=samples {
        let x0 = grid(0.0, PI / (2.0 * p as f64), a);
        for l in 1..p {
            report.comparisons += 1;
            if sine_ratio(l, x0).abs() <= sine_ratio(l + 1, x0).abs() {
                fail(&mut report, format!("(b) l = {l}, lambda0 = {x0}"));
            }
        }
    }
    report
}

/// `gcd(2, q^2 - 1) / (q^2 - 1)`.
pub fn target_ratio(pp: PrimePower) -> BigRational {
    let n = pp.q() * pp.q() - 1;
    BigRational::new(BigInt::from(n.gcd(&2)), BigInt::from(n))
}

/// `1/2 [N_- C_-^M / (q - 1) + N_+ C_+^M / (q + 1)]`, with `N_{+/-}` the
/// number of roots of `mu_{q +/- 1}` other than `+/- 1`.
pub fn envelope(pp: PrimePower, m: u64) -> f64 {
    let term = |sign: i32| {
        let n = torus_order(pp, sign);
        match contraction_constant(pp, sign).value() {
            Some(c) => nontrivial_roots(n) as f64 * c.powf(m as f64) / n as f64,
            None => 0.0,
        }
    };
    0.5 * (term(-1) + term(1))
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticReport {
    pub k: BigUint,
    pub q: u64,
    pub dim: BigUint,
    pub d: BigUint,
    pub ratio_exact: BigRational,
    pub ratio: f64,
    pub target: BigRational,
    /// `|ratio - target|`, rounded from the exact difference.
    pub deviation: f64,
    pub m: u64,
    pub envelope: f64,
}

impl AsymptoticReport {
    pub fn within_envelope(&self) -> bool {
        self.deviation <= self.envelope + SLACK * self.envelope.max(1e-300)
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("finite rational")
}

pub fn asymptotic_report(k: &BigUint, pp: PrimePower) -> Result<AsymptoticReport> {
    let profile = build_profile(k, pp);
    let dim = dim_lk(&profile);
    let d = dkq_general_from_profile(&profile)?.d;
    let ratio_exact = BigRational::new(BigInt::from(d.clone()), BigInt::from(dim.clone()));
    let target = target_ratio(pp);
    let deviation = rational_to_f64(&(&ratio_exact - &target).abs());
    let m = profile.nonzero_digit_count();
    Ok(AsymptoticReport {
        k: k.clone(),
        q: pp.q(),
        ratio: rational_to_f64(&ratio_exact),
        dim,
        d,
        ratio_exact,
        target,
        deviation,
        m,
        envelope: envelope(pp, m),
    })
}

/// Reports for each `k` of `schedule`; odd `k` is rejected for odd `p`.
pub fn convergence_sweep(pp: PrimePower, schedule: &[BigUint]) -> Result<Vec<AsymptoticReport>> {
    if pp.is_odd() {
        if let Some(k) = schedule.iter().find(|k| k.is_odd()) {
            return Err(Error::InvalidArgument(format!(
                "k = {k} is odd; d vanishes identically for odd p"
            )));
        }
    }
    schedule.iter().map(|k| asymptotic_report(k, pp)).collect()
}

/// The smallest `k` with all `M` base-`p` digits equal to `1` (for `p = 2`)
/// or to `2` (odd `p`, which keeps `k` even).
pub fn schedule_k(pp: PrimePower, m: u32) -> BigUint {
    let p = BigUint::from(pp.p());
    let repunit = (Pow::pow(&p, m) - BigUint::one()) / (&p - BigUint::one());
    if pp.is_odd() {
        repunit * 2u8
    } else {
        repunit
    }
}

pub fn schedule(pp: PrimePower, masses: &[u32]) -> Vec<BigUint> {
    masses.iter().map(|&m| schedule_k(pp, m)).collect()
}

/// Odd `k <= k_max` with `d_{k,q} != 0`; empty unless something is wrong.
pub fn odd_k_vanishing(pp: PrimePower, k_max: u64) -> Result<Vec<u64>> {
    if !pp.is_odd() {
        return Err(Error::InvalidArgument("vanishing needs odd p".into()));
    }
    let mut bad = Vec::new();
    for k in (1..=k_max).step_by(2) {
        let profile = build_profile(&BigUint::from(k), pp);
        if !dkq_general_from_profile(&profile)?.d.is_zero() {
            bad.push(k);
        }
    }
    Ok(bad)
}

/// `M = sum_{i >= 1, j} m_{i,j}`.
pub fn mass(k: &BigUint, pp: PrimePower) -> u64 {
    build_profile(k, pp).nonzero_digit_count()
}
