//! Brauer characters of `Delta_i`, `st` and `L_k` on the `p`-regular classes
//! of `SL2(F_q)`, and the Steinberg multiplicity `d_{k,q}` obtained from them.
//!
//! A semisimple class is named by a root of unity `zeta` of order dividing
//! `q - 1` (split torus) or `q + 1` (nonsplit torus). Character values live
//! in `Z[zeta_N]` with `N = lcm(2, q -/+ 1)`, the ring of the whole torus.
//!
//! The multiplicity is
//!
//! ```text
//! d = ( (q+1) S_- - (q-1) S_+ ) / ( 2 (q^2 - 1) )
//! ```
//!
//! where `S_-` and `S_+` sum `psi_{L_k}(A_zeta)` over every root in
//! `mu_{q-1}` and `mu_{q+1}` respectively (both `zeta` and `zeta^{-1}`, both
//! central elements). Each sum is a rational integer and the division is exact;
//! [`integrity_counters`] records how often both facts have been checked.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cyclotomic::{CycInt, CycRing};
use crate::digits::{build_profile, dim_lk, DigitProfile, PrimePower};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKind {
    Central,
    Split,
    Nonsplit,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassKind::Central => "central",
            ClassKind::Split => "split",
            ClassKind::Nonsplit => "nonsplit",
        })
    }
}

/// A `p`-regular class of `SL2(F_q)`, represented by `A_zeta` with
/// `zeta = zeta_n^exponent` for `n = torus_order`.
///
/// Central classes are carried on the split torus: `1` has exponent `0` and
/// `-1` has exponent `(q - 1) / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RegularClass {
    pub kind: ClassKind,
    pub torus_order: u64,
    pub exponent: u64,
    /// Number of group elements in the class.
    pub size: u64,
}

impl RegularClass {
    /// `true` for `zeta = -1` (only possible for odd `p`).
    pub fn is_minus_identity(&self) -> bool {
        self.kind == ClassKind::Central && self.exponent != 0
    }

    /// Each non-central class contains `A_zeta` and `A_{zeta^{-1}}`; this is
    /// the weight each individual root carries in a sum over `mu_{q -/+ 1}`.
    pub fn weight_per_root(&self) -> u64 {
        match self.kind {
            ClassKind::Central => self.size,
            _ => self.size / 2,
        }
    }

    /// Multiplicative order of `zeta`.
    pub fn element_order(&self) -> u64 {
        self.torus_order / self.torus_order.gcd(&self.exponent)
    }

    pub fn label(&self) -> String {
        match self.kind {
            ClassKind::Central if self.exponent == 0 => "1".to_string(),
            ClassKind::Central => "-1".to_string(),
            _ => format!("zeta{}^{}", self.torus_order, self.exponent),
        }
    }
}

/// `Z[zeta_{lcm(2, n)}]`, the ring holding character values on the torus `mu_n`.
pub fn torus_ring(n: u64) -> Arc<CycRing> {
    CycRing::new(n.lcm(&2))
}

/// The `q` regular classes: central first, then split, then nonsplit, each
/// torus in increasing exponent.
pub fn regular_classes(pp: PrimePower) -> Vec<RegularClass> {
    let q = pp.q();
    let mut out = vec![RegularClass {
        kind: ClassKind::Central,
        torus_order: q - 1,
        exponent: 0,
        size: 1,
    }];
    if pp.is_odd() {
        out.push(RegularClass {
            kind: ClassKind::Central,
            torus_order: q - 1,
            exponent: (q - 1) / 2,
            size: 1,
        });
    }
    // exponents a and n - a name the same class; skip the central ones
    for (kind, n, size) in [
        (ClassKind::Split, q - 1, q * (q + 1)),
        (ClassKind::Nonsplit, q + 1, q * (q - 1)),
    ] {
        for a in 1..=n / 2 {
            if 2 * a == n {
                continue;
            }
            out.push(RegularClass {
                kind,
                torus_order: n,
                exponent: a,
                size,
            });
        }
    }
    out
}

/// `sum_{l=0}^{i} zeta^{2l - i}` with `zeta = zeta_N^e`, `N` the ring conductor.
fn delta_at(ring: &Arc<CycRing>, e: i64, i: u64) -> CycInt {
    let i = i as i64;
    CycInt::from_exponents(ring, (0..=i).map(|l| (e * (2 * l - i), BigInt::from(1))))
}

fn ring_exponent(cls: &RegularClass) -> (Arc<CycRing>, i64) {
    let ring = torus_ring(cls.torus_order);
    let step = ring.conductor() / cls.torus_order;
    (ring, (step * cls.exponent) as i64)
}

/// Brauer character of `Delta_i` at `A_zeta`. Any `i >= 0` is accepted.
pub fn psi_delta(i: u64, cls: &RegularClass) -> CycInt {
    let (ring, e) = ring_exponent(cls);
    delta_at(&ring, e, i)
}

/// Brauer character of the Steinberg module.
pub fn psi_st(pp: PrimePower, cls: &RegularClass) -> i64 {
    match cls.kind {
        ClassKind::Central => pp.q() as i64,
        ClassKind::Split => 1,
        ClassKind::Nonsplit => -1,
    }
}

/// `psi_{L_k}` at the root `zeta_N^e` of `ring`:
/// `prod_{i,j} psi_{Delta_i}(zeta^{p^j})^{m_{i,j}}`.
fn psi_lk_at(profile: &DigitProfile, ring: &Arc<CycRing>, e: i64) -> CycInt {
    let n = ring.conductor() as i64;
    let p = profile.prime_power().p() as i64;
    let mut frob = vec![e.rem_euclid(n)];
    for _ in 1..profile.prime_power().e() {
        let last = *frob.last().unwrap();
        frob.push((last * p).rem_euclid(n));
    }
    profile
        .nonzero_counts()
        .fold(CycInt::one(ring), |acc, (i, j, m)| {
            &acc * &delta_at(ring, frob[j as usize], i).pow(m)
        })
}

/// Brauer character of `L_k` at a regular class.
pub fn psi_lk(profile: &DigitProfile, cls: &RegularClass) -> CycInt {
    let (ring, e) = ring_exponent(cls);
    psi_lk_at(profile, &ring, e)
}

/// A class function value at one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterValue {
    pub class: RegularClass,
    pub value: CycInt,
}

pub fn character<F>(pp: PrimePower, f: F) -> Vec<CharacterValue>
where
    F: Fn(&RegularClass) -> CycInt,
{
    regular_classes(pp)
        .into_iter()
        .map(|class| CharacterValue {
            value: f(&class),
            class,
        })
        .collect()
}

pub fn st_character(pp: PrimePower) -> Vec<CharacterValue> {
    character(pp, |cls| {
        CycInt::from_integer(&torus_ring(cls.torus_order), psi_st(pp, cls))
    })
}

pub fn lk_character(profile: &DigitProfile) -> Vec<CharacterValue> {
    character(profile.prime_power(), |cls| psi_lk(profile, cls))
}

/// `(1 / #G) sum_classes |C| phi(C) conj(psi(C))`, exactly.
///
/// Class values from different tori are accumulated in their own rings; each
/// torus total is Galois-stable and must come out rational.
pub fn brauer_inner_product(
    phi: &[CharacterValue],
    psi: &[CharacterValue],
    pp: PrimePower,
) -> Result<BigRational> {
    let classes = regular_classes(pp);
    if phi.len() != classes.len() || psi.len() != classes.len() {
        return Err(Error::InvalidArgument(format!(
            "characters must cover all {} regular classes",
            classes.len()
        )));
    }
    let mut totals: Vec<CycInt> = Vec::new();
    for cls in &classes {
        let find = |vals: &[CharacterValue]| {
            vals.iter()
                .find(|v| v.class == *cls)
                .map(|v| v.value.clone())
                .ok_or_else(|| Error::InvalidArgument(format!("class {} missing", cls.label())))
        };
        let term = find(phi)?
            .checked_mul(&find(psi)?.conjugate())?
            .scale(&BigInt::from(cls.size));
        match totals.iter_mut().find(|t| t.conductor() == term.conductor()) {
            Some(t) => *t = t.checked_add(&term)?,
            None => totals.push(term),
        }
    }
    let mut sum = BigInt::zero();
    for t in totals {
        sum += t.as_rational_integer()?;
    }
    Ok(BigRational::new(sum, BigInt::from(pp.group_order())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Torus sums of Brauer characters.
    General,
    /// Class-weighted inner product with the Steinberg character.
    InnerProduct,
    /// Explicit formula for small `q`.
    Closed,
    /// Linear algebra over `F_q`.
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::General => "general",
            Method::InnerProduct => "inner-product",
            Method::Closed => "closed",
            Method::Oracle => "oracle",
        })
    }
}

/// Intermediate values of the torus-sum route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub s_minus: BigInt,
    pub s_plus: BigInt,
    pub numerator: BigInt,
    pub divisor: BigInt,
}

/// A computed `d_{k,q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimResult {
    pub k: BigUint,
    pub q: u64,
    pub d: BigUint,
    pub method: Method,
    pub diagnostics: Option<Diagnostics>,
}

static ORBIT_SUMS_CHECKED: AtomicU64 = AtomicU64::new(0);
static ORBIT_SUM_FAILURES: AtomicU64 = AtomicU64::new(0);
static DIVISIONS_CHECKED: AtomicU64 = AtomicU64::new(0);
static DIVISION_FAILURES: AtomicU64 = AtomicU64::new(0);

/// Process-wide tallies of the integrality checks made by [`dkq_general`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntegrityCounters {
    pub orbit_sums_checked: u64,
    pub orbit_sum_failures: u64,
    pub divisions_checked: u64,
    pub division_failures: u64,
}

impl IntegrityCounters {
    pub fn since(&self, earlier: &IntegrityCounters) -> IntegrityCounters {
        IntegrityCounters {
            orbit_sums_checked: self.orbit_sums_checked - earlier.orbit_sums_checked,
            orbit_sum_failures: self.orbit_sum_failures - earlier.orbit_sum_failures,
            divisions_checked: self.divisions_checked - earlier.divisions_checked,
            division_failures: self.division_failures - earlier.division_failures,
        }
    }
}

pub fn integrity_counters() -> IntegrityCounters {
    IntegrityCounters {
        orbit_sums_checked: ORBIT_SUMS_CHECKED.load(Ordering::Relaxed),
        orbit_sum_failures: ORBIT_SUM_FAILURES.load(Ordering::Relaxed),
        divisions_checked: DIVISIONS_CHECKED.load(Ordering::Relaxed),
        division_failures: DIVISION_FAILURES.load(Ordering::Relaxed),
    }
}

/// `sum_{a=0}^{n-1} psi_{L_k}(zeta_n^{a * reindex})`. `reindex` must be a unit mod `n`.
pub fn torus_sum(profile: &DigitProfile, n: u64, reindex: u64) -> Result<BigInt> {
    let ring = torus_ring(n);
    let step = (ring.conductor() / n) as i64;
    let total = (0..n as i64)
        .map(|a| psi_lk_at(profile, &ring, step * ((a * reindex as i64) % n as i64)))
        .reduce(|x, y| &x + &y)
        .expect("torus is nonempty");
    ORBIT_SUMS_CHECKED.fetch_add(1, Ordering::Relaxed);
    total.as_rational_integer().inspect_err(|_| {
        ORBIT_SUM_FAILURES.fetch_add(1, Ordering::Relaxed);
    })
}

/// `d_{k,q} = dim Hom(st, L_k)` from the torus sums.
pub fn dkq_general(k: &BigUint, pp: PrimePower) -> Result<DimResult> {
    let profile = build_profile(k, pp);
    dkq_general_from_profile(&profile)
}

pub fn dkq_general_from_profile(profile: &DigitProfile) -> Result<DimResult> {
    let pp = profile.prime_power();
    let q = pp.q();
    let s_minus = torus_sum(profile, q - 1, 1)?;
    let s_plus = torus_sum(profile, q + 1, 1)?;
    let numerator = BigInt::from(q + 1) * &s_minus - BigInt::from(q - 1) * &s_plus;
    let divisor = BigInt::from(2 * (q * q - 1));
    DIVISIONS_CHECKED.fetch_add(1, Ordering::Relaxed);
    let (d, rem) = numerator.div_rem(&divisor);
    if !rem.is_zero() {
        DIVISION_FAILURES.fetch_add(1, Ordering::Relaxed);
        return Err(Error::Indivisible { numerator, divisor });
    }
    if d.is_negative() {
        return Err(Error::Inconsistent(format!(
            "negative multiplicity {d} for k = {}, q = {q}",
            profile.k()
        )));
    }
    Ok(DimResult {
        k: profile.k().clone(),
        q,
        d: d.to_biguint().expect("nonnegative"),
        method: Method::General,
        diagnostics: Some(Diagnostics {
            s_minus,
            s_plus,
            numerator,
            divisor,
        }),
    })
}

fn rational_to_dim(k: &BigUint, q: u64, value: BigRational, method: Method) -> Result<DimResult> {
    if !value.is_integer() || value.is_negative() {
        return Err(Error::Inconsistent(format!(
            "{method} route gave {value} for k = {k}, q = {q}"
        )));
    }
    Ok(DimResult {
        k: k.clone(),
        q,
        d: value.to_integer().to_biguint().expect("nonnegative"),
        method,
        diagnostics: None,
    })
}

/// `d_{k,q}` as `<psi_st, psi_{L_k}>` over classes with their sizes.
pub fn dkq_inner_product(k: &BigUint, pp: PrimePower) -> Result<DimResult> {
    let profile = build_profile(k, pp);
    let value = brauer_inner_product(&st_character(pp), &lk_character(&profile), pp)?;
    rational_to_dim(k, pp.q(), value, Method::InnerProduct)
}

/// `<psi_st, psi>_{mu_n} = (1/n) sum_{zeta in mu_n} psi_st(A_zeta) conj psi(A_zeta)`.
fn torus_inner_product(profile: &DigitProfile, n: u64, st_nontrivial: i64) -> Result<BigRational> {
    let pp = profile.prime_power();
    let ring = torus_ring(n);
    let step = ring.conductor() / n;
    let mut total = CycInt::zero(&ring);
    for a in 0..n {
        let central = a == 0 || (pp.is_odd() && 2 * a == n);
        let st = if central { pp.q() as i64 } else { st_nontrivial };
        let value = psi_lk_at(profile, &ring, (step * a) as i64).conjugate();
        total = &total + &value.scale(&BigInt::from(st));
    }
    Ok(BigRational::new(total.as_rational_integer()?, BigInt::from(n)))
}

/// The torus-inner-product rewriting of the multiplicity:
/// `(1/2)(<st, L>_{mu_{q-1}} + <st, L>_{mu_{q+1}})` minus the central values.
pub fn dkq_torus_form(k: &BigUint, pp: PrimePower) -> Result<BigRational> {
    let profile = build_profile(k, pp);
    let q = pp.q();
    let split = torus_inner_product(&profile, q - 1, 1)?;
    let nonsplit = torus_inner_product(&profile, q + 1, -1)?;
    let dim = BigInt::from(dim_lk(&profile));
    let central = if pp.is_odd() {
        let minus = if profile.parity_class()?.0 == 1 { -&dim } else { dim.clone() };
        &dim + minus
    } else {
        dim
    };
    Ok((split + nonsplit) / BigRational::from_integer(BigInt::from(2))
        - BigRational::from_integer(central))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn pp(q: u64) -> PrimePower {
        PrimePower::from_q(q).unwrap()
    }

    fn big(k: u64) -> BigUint {
        BigUint::from(k)
    }

    fn class(q: u64, kind: ClassKind, torus: u64, exp: u64) -> RegularClass {
        regular_classes(pp(q))
            .into_iter()
            .find(|c| c.kind == kind && c.torus_order == torus && c.exponent == exp)
            .unwrap()
    }

    fn int(x: &CycInt) -> i64 {
        i64::try_from(x.as_rational_integer().unwrap()).unwrap()
    }

    #[test]
    fn class_counts_and_sizes() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27] {
            let pp = pp(q);
            let classes = regular_classes(pp);
            assert_eq!(classes.len() as u64, q);
            let count = |k| classes.iter().filter(|c| c.kind == k).count() as u64;
            if pp.is_odd() {
                assert_eq!(count(ClassKind::Central), 2);
                assert_eq!(count(ClassKind::Split), (q - 3) / 2);
                assert_eq!(count(ClassKind::Nonsplit), (q - 1) / 2);
            } else {
                assert_eq!(count(ClassKind::Central), 1);
                assert_eq!(count(ClassKind::Split), (q - 2) / 2);
                assert_eq!(count(ClassKind::Nonsplit), q / 2);
            }
            // regular elements = all minus the non-central unipotent-type ones
            let regular: u64 = classes.iter().map(|c| c.size).sum();
            let central = count(ClassKind::Central);
            assert_eq!(regular, pp.group_order() - central * (q * q - 1));
            for c in &classes {
                match c.kind {
                    ClassKind::Central => assert_eq!(c.weight_per_root(), 1),
                    ClassKind::Split => assert_eq!(c.weight_per_root(), q * (q + 1) / 2),
                    ClassKind::Nonsplit => assert_eq!(c.weight_per_root(), q * (q - 1) / 2),
                }
            }
        }
    }

    #[test]
    fn class_labels() {
        let labels: Vec<_> = regular_classes(pp(5)).iter().map(|c| c.label()).collect();
        assert_eq!(labels, ["1", "-1", "zeta4^1", "zeta6^1", "zeta6^2"]);
        let labels: Vec<_> = regular_classes(pp(2)).iter().map(|c| c.label()).collect();
        assert_eq!(labels, ["1", "zeta3^1"]);
        assert_eq!(regular_classes(pp(3)).len(), 3);
    }

    #[test]
    fn delta_character_examples() {
        let z4 = class(5, ClassKind::Split, 4, 1);
        let z6 = class(5, ClassKind::Nonsplit, 6, 1);
        let minus = regular_classes(pp(5))[1];
        assert_eq!(int(&psi_delta(2, &z4)), -1);
        assert_eq!(int(&psi_delta(1, &z6)), 1);
        assert_eq!(int(&psi_delta(4, &minus)), 5);
        assert_eq!(int(&psi_delta(3, &minus)), -4);

        let z12 = class(11, ClassKind::Nonsplit, 12, 1);
        let v = psi_delta(1, &z12);
        let ring = CycRing::new(12);
        assert_eq!(v, &CycInt::root_of_unity(&ring, 1) + &CycInt::root_of_unity(&ring, -1));
        assert!((v.numeric_embed().re - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn delta_matches_sine_ratio() {
        // Im(z^{i+1}) / Im(z) for the complex lift
        for q in [5u64, 7, 11, 13] {
            for cls in regular_classes(pp(q)).iter().filter(|c| c.kind != ClassKind::Central) {
                let theta = 2.0 * std::f64::consts::PI * cls.exponent as f64 / cls.torus_order as f64;
                for i in 0..12u64 {
                    let expect = ((i + 1) as f64 * theta).sin() / theta.sin();
                    let got = psi_delta(i, cls).numeric_embed();
                    assert!((got.re - expect).abs() < 1e-9 && got.im.abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn steinberg_character() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11] {
            let pp = pp(q);
            let prof = build_profile(&big(q - 1), pp);
            for cls in regular_classes(pp) {
                assert_eq!(int(&psi_lk(&prof, &cls)), psi_st(pp, &cls), "q = {q}");
            }
        }
        assert_eq!(psi_st(pp(5), &regular_classes(pp(5))[0]), 5);
        assert_eq!(psi_st(pp(5), &regular_classes(pp(5))[2]), 1);
        assert_eq!(psi_st(pp(2), &regular_classes(pp(2))[1]), -1);
    }

    #[test]
    fn lk_character_examples() {
        let prof = build_profile(&big(4), pp(5));
        assert_eq!(int(&psi_lk(&prof, &class(5, ClassKind::Split, 4, 1))), 1);
        let prof = build_profile(&big(5), pp(2));
        assert_eq!(int(&psi_lk(&prof, &regular_classes(pp(2))[1])), 1);
        for q in [2u64, 3, 4, 5, 7, 9] {
            for k in 0..200u64 {
                let prof = build_profile(&big(k), pp(q));
                let at_one = psi_lk(&prof, &regular_classes(pp(q))[0]);
                assert_eq!(at_one.as_rational_integer().unwrap(), BigInt::from(dim_lk(&prof)));
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        for q in [2u64, 3, 5] {
            let st = st_character(pp(q));
            assert!(brauer_inner_product(&st, &st, pp(q)).unwrap().is_one());
        }
        let triv = lk_character(&build_profile(&big(0), pp(3)));
        assert!(brauer_inner_product(&st_character(pp(3)), &triv, pp(3)).unwrap().is_zero());
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11] {
            let st = lk_character(&build_profile(&big(q - 1), pp(q)));
            assert!(brauer_inner_product(&st_character(pp(q)), &st, pp(q)).unwrap().is_one());
        }
        let st = st_character(pp(3));
        assert!(brauer_inner_product(&st[..2], &st, pp(3)).is_err());
    }

    fn d(k: u64, q: u64) -> u64 {
        let r = dkq_general(&big(k), pp(q)).unwrap();
        u64::try_from(r.d).unwrap()
    }

    #[test]
    fn general_formula_examples() {
        assert_eq!(d(4, 5), 1);
        assert_eq!(d(0, 3), 0);
        assert_eq!(d(7, 3), 0);
        assert_eq!(d(1, 2), 1);
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
            assert_eq!(d(q - 1, q), 1, "Hom(st, st), q = {q}");
            assert_eq!(d(0, q), 0);
        }
        let r = dkq_general(&big(4), pp(5)).unwrap();
        let diag = r.diagnostics.unwrap();
        assert_eq!(diag.divisor, BigInt::from(48));
        assert_eq!(diag.numerator, diag.divisor);
    }

    #[test]
    fn routes_agree() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11] {
            for k in 0..=300u64 {
                let general = dkq_general(&big(k), pp(q)).unwrap();
                let inner = dkq_inner_product(&big(k), pp(q)).unwrap();
                assert_eq!(general.d, inner.d, "k = {k}, q = {q}");
            }
        }
    }

    #[test]
    fn torus_form_reading() {
        for q in [2u64, 3, 4, 5] {
            for k in 0..=200u64 {
                let general = dkq_general(&big(k), pp(q)).unwrap();
                let alt = dkq_torus_form(&big(k), pp(q)).unwrap();
                assert_eq!(alt, BigRational::from_integer(BigInt::from(general.d)));
            }
        }
    }

    #[test]
    fn odd_p_odd_k_vanishes() {
        for q in [3u64, 5, 7, 9, 11, 25] {
            for k in (1..400u64).step_by(2) {
                assert_eq!(d(k, q), 0);
            }
        }
    }

    #[test]
    fn frobenius_reindexing() {
        for q in [3u64, 4, 5, 8, 9] {
            let pp = pp(q);
            for k in [1u64, 6, 17, 40, 99] {
                let prof = build_profile(&big(k), pp);
                for n in [q - 1, q + 1] {
                    assert_eq!(torus_sum(&prof, n, 1).unwrap(), torus_sum(&prof, n, pp.p()).unwrap());
                }
            }
        }
    }

    #[test]
    fn counters_advance() {
        let before = integrity_counters();
        dkq_general(&big(10), pp(7)).unwrap();
        let delta = integrity_counters().since(&before);
        assert!(delta.orbit_sums_checked >= 2);
        assert!(delta.divisions_checked >= 1);
        assert_eq!(delta.orbit_sum_failures, 0);
    }
}
