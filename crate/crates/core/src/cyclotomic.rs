//! Exact arithmetic in `Z[zeta_N] = Z[x] / Phi_N(x)`.
//!
//! Elements are kept in the power basis `1, x, ..., x^{phi(N)-1}`, fully
//! reduced modulo the cyclotomic polynomial, so equality is coefficient
//! equality and the rational integers are exactly the constant vectors.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer polynomial, coefficients low to high.
pub type IntPoly = Vec<i64>;

#[cfg(test)]
fn poly_mul(a: &[i64], b: &[i64]) -> IntPoly {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = out[i + j]
                .checked_add(x.checked_mul(y).expect("coefficient overflow"))
                .expect("coefficient overflow");
        }
    }
    out
}

/// Exact division by a monic polynomial; panics if the remainder is nonzero.
fn poly_div_exact(num: &[i64], den: &[i64]) -> IntPoly {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cyclotomic_polynomial_shared(n: u64) -> Arc<IntPoly> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(hit) = phi_cache().lock().unwrap().get(&n) {
        return hit.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        let phi_d = cyclotomic_polynomial_shared(d);
        poly = poly_div_exact(&poly, &phi_d);
    }
    let poly = Arc::new(poly);
    phi_cache().lock().unwrap().entry(n).or_insert(poly).clone()
}

/// `Phi_N`, computed by recursive exact division and memoized per process.
pub fn cyclotomic_polynomial(n: u64) -> IntPoly {
    cyclotomic_polynomial_shared(n).as_ref().clone()
}

/// `Z[zeta_N]` for a fixed conductor `N`.
#[derive(Debug)]
pub struct CycRing {
    conductor: u64,
    modulus: Arc<IntPoly>,
    /// `x^j mod Phi_N` for `j = 0..N`.
    powers: Vec<IntPoly>,
}

fn ring_cache() -> &'static Mutex<HashMap<u64, Arc<CycRing>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycRing>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CycRing {
    /// Shared instance for conductor `n`.
    pub fn new(n: u64) -> Arc<CycRing> {
        if let Some(hit) = ring_cache().lock().unwrap().get(&n) {
            return hit.clone();
        }
        let modulus = cyclotomic_polynomial_shared(n);
        let d = modulus.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; d];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce the overflow term
            let top = cur[d - 1];
            for i in (1..d).rev() {
                cur[i] = cur[i - 1] - top * modulus[i];
            }
            cur[0] = -top * modulus[0];
        }
        let ring = Arc::new(CycRing {
            conductor: n,
            modulus,
            powers,
        });
        ring_cache()
            .lock()
            .unwrap()
            .entry(n)
            .or_insert(ring)
            .clone()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `phi(N)`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }
}

/// An element of `Z[zeta_N]` in canonical coordinates.
#[derive(Clone)]
pub struct CycInt {
    ring: Arc<CycRing>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.ring.conductor == other.ring.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CycInt {}

impl CycInt {
    pub fn zero(ring: &Arc<CycRing>) -> Self {
        CycInt {
            ring: ring.clone(),
            coeffs: vec![BigInt::zero(); ring.degree()],
        }
    }

    pub fn one(ring: &Arc<CycRing>) -> Self {
        Self::from_integer(ring, BigInt::one())
    }

    pub fn from_integer(ring: &Arc<CycRing>, n: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(ring);
        out.coeffs[0] = n.into();
        out
    }

    /// `zeta_N^{a mod N}`.
    pub fn root_of_unity(ring: &Arc<CycRing>, a: i64) -> Self {
        let n = ring.conductor as i64;
        let idx = a.rem_euclid(n) as usize;
        CycInt {
            ring: ring.clone(),
            coeffs: ring.powers[idx].iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    /// Reduces `sum_j acc[j] x^j` with `j < N`.
    fn from_exponent_sums(ring: &Arc<CycRing>, acc: Vec<BigInt>) -> Self {
        let d = ring.degree();
        let mut acc = acc;
        let mut coeffs: Vec<BigInt> = acc.drain(..d.min(acc.len())).collect();
        coeffs.resize(d, BigInt::zero());
        for (j, c) in acc.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in coeffs.iter_mut().zip(&ring.powers[d + j]) {
                if r != 0 {
                    *slot += &c * r;
                }
            }
        }
        CycInt {
            ring: ring.clone(),
            coeffs,
        }
    }

    /// `sum_j terms[j].1 * zeta^{terms[j].0}` reduced into this ring.
    pub fn from_exponents(ring: &Arc<CycRing>, terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let n = ring.conductor as i64;
        let mut acc = vec![BigInt::zero(); ring.conductor as usize];
        for (a, c) in terms {
            acc[a.rem_euclid(n) as usize] += c;
        }
        Self::from_exponent_sums(ring, acc)
    }

    pub fn ring(&self) -> &Arc<CycRing> {
        &self.ring
    }

    pub fn conductor(&self) -> u64 {
        self.ring.conductor
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring.conductor != other.ring.conductor {
            return Err(Error::RingMismatch {
                left: self.ring.conductor,
                right: other.ring.conductor,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(CycInt {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(CycInt {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let n = self.ring.conductor as usize;
        let mut acc = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[(i + j) % n] += a * b;
            }
        }
        Ok(Self::from_exponent_sums(&self.ring, acc))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        CycInt {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Binary exponentiation.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycInt::one(&self.ring);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The automorphism `zeta -> zeta^c`, `gcd(c, N) = 1`.
    pub fn galois(&self, c: i64) -> Self {
        assert_eq!(
            c.gcd(&(self.ring.conductor as i64)),
            1,
            "Galois exponent must be a unit"
        );
        Self::from_exponents(
            &self.ring,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(i, a)| (c * i as i64, a.clone())),
        )
    }

    /// Complex conjugation, `zeta -> zeta^{-1}`.
    pub fn conjugate(&self) -> Self {
        self.galois(-1)
    }

    /// The constant coefficient when every other coefficient vanishes.
    pub fn as_rational_integer(&self) -> Result<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    /// Image under `zeta_N -> exp(2 pi i / N)`. Checks only, never results.
    pub fn numeric_embed(&self) -> Complex64 {
        let n = self.ring.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / n;
                Complex64::from_polar(1.0, theta) * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }

    /// Maps into `Z[zeta_L]` for a multiple `L` of the conductor.
    pub fn embed_into(&self, target: &Arc<CycRing>) -> Result<Self> {
        let n = self.ring.conductor;
        if target.conductor % n != 0 {
            return Err(Error::InvalidArgument(format!(
                "conductor {} does not divide {}",
                n, target.conductor
            )));
        }
        let step = (target.conductor / n) as i64;
        Ok(Self::from_exponents(
            target,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(i, a)| (step * i as i64, a.clone())),
        ))
    }

    /// Largest absolute coefficient; handy for growth diagnostics.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]@{}", self.ring.conductor)
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Operator forms panic on a ring mismatch; use the `checked_*` methods when
// operands may come from different conductors.
impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.checked_add(rhs).unwrap()
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.checked_sub(rhs).unwrap()
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.checked_mul(rhs).unwrap()
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::iter::Sum<CycInt> for Option<CycInt> {
    fn sum<I: Iterator<Item = CycInt>>(iter: I) -> Self {
        iter.reduce(|a, b| &a + &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(n: u64) -> Arc<CycRing> {
        CycRing::new(n)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn euler_phi(n: u64) -> usize {
        (1..=n).filter(|k| k.gcd(&n) == 1).count()
    }

    #[test]
    fn cyclotomic_polynomial_examples() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        // first conductor with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn cyclotomic_polynomial_invariants() {
        for n in 1..=60u64 {
            let phi = cyclotomic_polynomial(n);
            assert_eq!(*phi.last().unwrap(), 1);
            assert_eq!(phi.len() - 1, euler_phi(n));
            // product over all divisors recovers x^n - 1
            let prod = (1..=n)
                .filter(|d| n % d == 0)
                .fold(vec![1i64], |acc, d| poly_mul(&acc, &cyclotomic_polynomial(d)));
            let mut expect = vec![0i64; n as usize + 1];
            expect[0] = -1;
            expect[n as usize] = 1;
            assert_eq!(prod, expect, "n = {n}");
        }
    }

    #[test]
    fn roots_of_unity() {
        let r4 = ring(4);
        assert_eq!(CycInt::root_of_unity(&r4, 1).coeffs(), ints(&[0, 1]).as_slice());
        assert_eq!(CycInt::root_of_unity(&r4, 2).coeffs(), ints(&[-1, 0]).as_slice());
        assert_eq!(
            CycInt::root_of_unity(&ring(6), 3),
            CycInt::from_integer(&ring(6), -1)
        );
        assert_eq!(CycInt::root_of_unity(&r4, -1), CycInt::root_of_unity(&r4, 3));
    }

    #[test]
    fn arithmetic_examples() {
        let r4 = ring(4);
        let z = CycInt::root_of_unity(&r4, 1);
        assert_eq!(&z * &z, CycInt::from_integer(&r4, -1));
        assert_eq!(z.pow(0), CycInt::one(&r4));

        let r5 = ring(5);
        let x = &CycInt::one(&r5) + &CycInt::root_of_unity(&r5, 1);
        let naive = (0..5).fold(CycInt::one(&r5), |acc, _| &acc * &x);
        assert_eq!(x.pow(5), naive);

        assert!(matches!(
            z.checked_add(&CycInt::one(&r5)),
            Err(Error::RingMismatch { left: 4, right: 5 })
        ));
    }

    #[test]
    fn conjugation_and_rationality() {
        let r4 = ring(4);
        let z4 = CycInt::root_of_unity(&r4, 1);
        assert_eq!(z4.conjugate(), -&z4);
        assert_eq!(CycInt::from_integer(&r4, 7).conjugate(), CycInt::from_integer(&r4, 7));
        let r12 = ring(12);
        let real = &CycInt::root_of_unity(&r12, 1) + &CycInt::root_of_unity(&r12, -1);
        assert_eq!(real.conjugate(), real);

        assert_eq!(CycInt::from_integer(&r4, 7).as_rational_integer(), Ok(BigInt::from(7)));
        assert!(z4.as_rational_integer().is_err());
        let s = (0..4)
            .map(|a| CycInt::root_of_unity(&r4, a * 2))
            .sum::<Option<CycInt>>()
            .unwrap();
        assert_eq!(s.as_rational_integer(), Ok(BigInt::zero()));
    }

    #[test]
    fn numeric_examples() {
        let r4 = ring(4);
        let c = CycInt::from_integer(&r4, 3).numeric_embed();
        assert!((c - Complex64::new(3.0, 0.0)).norm() < 1e-12);
        let i = CycInt::root_of_unity(&r4, 1).numeric_embed();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let r12 = ring(12);
        let sqrt3 = (&CycInt::root_of_unity(&r12, 1) + &CycInt::root_of_unity(&r12, -1)).numeric_embed();
        assert!((sqrt3.re - 3f64.sqrt()).abs() < 1e-12 && sqrt3.im.abs() < 1e-12);
    }

    #[test]
    fn root_powers() {
        for n in 1..=30u64 {
            let r = ring(n);
            let z = CycInt::root_of_unity(&r, 1);
            assert_eq!(z.pow(n), CycInt::one(&r));
            for a in 0..n {
                let prod = &z.pow(a) * &z.pow(n - a);
                assert_eq!(prod, CycInt::one(&r));
            }
        }
    }

    #[test]
    fn galois_orbit_sums_are_rational() {
        for n in 1..=30u64 {
            let r = ring(n);
            // v(zeta) = (1 + 2 zeta - zeta^3)^2 summed over every N-th root
            let total = (0..n as i64)
                .map(|a| {
                    let z = |e: i64| CycInt::root_of_unity(&r, a * e);
                    let v = &(&CycInt::one(&r) + &z(1).scale(&BigInt::from(2))) - &z(3);
                    &v * &v
                })
                .sum::<Option<CycInt>>()
                .unwrap();
            assert!(total.as_rational_integer().is_ok(), "n = {n}");
        }
    }

    #[test]
    fn embedding_is_compatible() {
        let r6 = ring(6);
        let r12 = ring(12);
        let x = &CycInt::root_of_unity(&r6, 1) + &CycInt::from_integer(&r6, 2);
        let y = CycInt::root_of_unity(&r6, 5);
        let lhs = (&x * &y).embed_into(&r12).unwrap();
        let rhs = &x.embed_into(&r12).unwrap() * &y.embed_into(&r12).unwrap();
        assert_eq!(lhs, rhs);
        assert!(x.embed_into(&ring(8)).is_err());
        assert_eq!(y.to_string(), "[1,-1]@6");
    }

    fn arb_element(n: u64) -> impl Strategy<Value = CycInt> {
        let d = ring(n).degree();
        proptest::collection::vec(-50i64..50, d).prop_map(move |v| CycInt {
            ring: ring(n),
            coeffs: ints(&v),
        })
    }

    fn arb_triple() -> impl Strategy<Value = (CycInt, CycInt, CycInt)> {
        (1u64..=30).prop_flat_map(|n| (arb_element(n), arb_element(n), arb_element(n)))
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
            prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        }

        #[test]
        fn numeric_embedding_is_homomorphic((a, b, _c) in arb_triple()) {
            let sum = (&a + &b).numeric_embed() - (a.numeric_embed() + b.numeric_embed());
            let prod = (&a * &b).numeric_embed() - a.numeric_embed() * b.numeric_embed();
            prop_assert!(sum.norm() < 1e-9);
            prop_assert!(prod.norm() < 1e-9 * (1.0 + a.numeric_embed().norm() * b.numeric_embed().norm()));
        }
    }
}
