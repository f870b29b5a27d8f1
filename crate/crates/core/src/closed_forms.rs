//! Explicit formulas for `d_{k,q}` when `q` is one of 2, 3, 4, 5, 7, 11.
//!
//! Everything is evaluated in exact integer arithmetic. Sign factors
//! `(-1)^n` and indicators `0^n` (equal to 1 for `n = 0`, else 0) are expanded
//! as integers, and the final division by 3, 4, 8, 12, 15, 24, 48 or 120 is
//! checked to be exact.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::digits::{build_profile, dim_lk, DigitProfile, PrimePower};
use crate::error::{Error, Result};

/// Lucas numbers: `2, 1, 3, 4, 7, 11, ...`.
pub fn lucas_number(n: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::from(2u32), BigUint::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Lucas numbers extended to negative indices by `L_{-n} = (-1)^n L_n`,
/// which keeps the recurrence valid in both directions.
pub fn lucas_signed(n: i64) -> BigInt {
    let magnitude = BigInt::from(lucas_number(n.unsigned_abs()));
    if n < 0 && n % 2 != 0 {
        -magnitude
    } else {
        magnitude
    }
}

fn sign(n: u64) -> BigInt {
    if n % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn zero_pow(n: u64) -> BigInt {
    if n == 0 {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

/// `b^{n/2} (1 + (-1)^n)`, which vanishes for odd `n`.
fn even_half_power(b: u32, n: u64) -> BigInt {
    if n % 2 == 0 {
        BigInt::from(2) * BigInt::from(b).pow((n / 2) as u32)
    } else {
        BigInt::zero()
    }
}

fn exact_div(num: BigInt, den: i64) -> Result<BigInt> {
    let den = BigInt::from(den);
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::Indivisible {
            numerator: num,
            divisor: den,
        });
    }
    Ok(quot)
}

fn to_dim(value: BigInt, q: u64) -> Result<BigUint> {
    value
        .to_biguint()
        .ok_or_else(|| Error::Inconsistent(format!("closed formula for q = {q} gave {value}")))
}

fn q7(prof: &DigitProfile, dim: &BigInt) -> Result<BigInt> {
    let m = |i| prof.m0(i);
    let t1 = (BigInt::one() + sign(m(1) + m(3) + m(5))) * dim;
    let t2 = BigInt::from(8)
        * zero_pow(m(2) + m(5))
        * sign(m(1) + m(4))
        * (BigInt::one() + sign(m(1) + m(3)));
    let t3 = BigInt::from(-6)
        * zero_pow(m(3))
        * (sign(m(2) + m(6)) * zero_pow(m(1) + m(5))
            + even_half_power(2, m(1) + m(5)) * sign(m(1) + m(4) + m(6)));
    exact_div(t1 + t2 + t3, 48)
}

// The -10 multiplies the three contributions of the nonsplit classes
// (orders 3 and 6, order 4, orders 12); the Lucas term belongs to the split
// torus and sits outside that bracket.
fn q11(prof: &DigitProfile, dim: &BigInt) -> Result<BigInt> {
    let m = |i| prof.m0(i);
    let odd = m(1) + m(3) + m(5) + m(7) + m(9);
    let t1 = dim * (BigInt::one() + sign(odd));
    let order_3_6 = (sign(m(1) + m(4) + m(7) + m(10)) + sign(m(3) + m(4) + m(9) + m(10)))
        * zero_pow(m(2) + m(5) + m(8));
    let order_4 = zero_pow(odd) * sign(m(2) + m(6) + m(10));
    let order_12 = zero_pow(m(5))
        * sign(m(1) + m(3) + m(6) + m(8) + m(10))
        * BigInt::from(2).pow((m(2) + m(8)) as u32)
        * even_half_power(3, m(1) + m(3) + m(7) + m(9));
    let t2 = BigInt::from(-10) * (order_3_6 + order_4 + order_12);
    let t3 = BigInt::from(12)
        * zero_pow(m(4) + m(9))
        * sign(m(8) + m(6))
        * (sign(m(3) + m(1)) + sign(m(5) + m(7)))
        * BigInt::from(lucas_number(m(1) + m(2) + m(6) + m(7)));
    exact_div(t1 + t2 + t3, 120)
}

// Lucas index taken as m_{1,0} - m_{1,1} with the signed extension.
fn q4(prof: &DigitProfile, dim: &BigInt) -> Result<BigInt> {
    let (a, b) = (prof.m(1, 0), prof.m(1, 1));
    let value = dim + BigInt::from(5) * sign(a + b)
        - BigInt::from(3) * sign(a) * lucas_signed(a as i64 - b as i64);
    exact_div(value, 15)
}

/// `d_{k,q}` from the explicit formula, or [`Error::Unsupported`].
pub fn dkq_closed(k: &BigUint, pp: PrimePower) -> Result<BigUint> {
    let q = pp.q();
    if !matches!(q, 2 | 3 | 4 | 5 | 7 | 11) {
        return Err(Error::Unsupported(q));
    }
    let prof = build_profile(k, pp);
    let dim = BigInt::from(dim_lk(&prof));
    let value = match q {
        2 => (dim + 1) / 3,
        3 if k.is_odd() => BigInt::zero(),
        3 => (dim + 1) / 4,
        5 if k.is_odd() => BigInt::zero(),
        5 => (dim + 7) / 12,
        7 => q7(&prof, &dim)?,
        11 => q11(&prof, &dim)?,
        4 => q4(&prof, &dim)?,
        _ => unreachable!(),
    };
    to_dim(value, q)
}

/// The sign-and-indicator expression that the floor formulas for
/// `q` in `{2, 3, 5}` simplify.
pub fn sign_form(k: &BigUint, pp: PrimePower) -> Result<BigInt> {
    let prof = build_profile(k, pp);
    let dim = BigInt::from(dim_lk(&prof));
    let m = |i| prof.m0(i);
    match pp.q() {
        2 => exact_div(dim - sign(m(1)), 3),
        3 => exact_div(
            (BigInt::one() + sign(m(1))) * dim - BigInt::from(2) * zero_pow(m(1)) * sign(m(2)),
            8,
        ),
        5 => exact_div(
            (dim - BigInt::from(4) * sign(m(4) + m(3)) * zero_pow(m(2)))
                * (BigInt::one() + sign(m(1) + m(3)))
                + BigInt::from(6) * sign(m(2)) * zero_pow(m(1) + m(3)),
            24,
        ),
        q => Err(Error::Unsupported(q)),
    }
}

/// The `q = 4` formula evaluated literally, with Lucas index `m_{1,1} - m_{1,0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Q4Literal {
    /// The index is negative and the Lucas number is undefined.
    NegativeIndex,
    Value(BigRational),
}

pub fn q4_literal(k: &BigUint) -> Q4Literal {
    let pp = PrimePower::new(2, 2).expect("4 = 2^2");
    let prof = build_profile(k, pp);
    let (a, b) = (prof.m(1, 0), prof.m(1, 1));
    if b < a {
        return Q4Literal::NegativeIndex;
    }
    let dim = BigInt::from(dim_lk(&prof));
    let num = dim + BigInt::from(5) * sign(a + b)
        - BigInt::from(3) * sign(a) * BigInt::from(lucas_number(b - a));
    Q4Literal::Value(BigRational::new(num, BigInt::from(15)))
}

/// Outcome of checking `dim L_k` against the residues allowed for `q = 2, 3, 5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueCheck {
    pub pass: bool,
    /// `false` when `k` is odd and `q` is 3 or 5: nothing is claimed.
    pub asserted: bool,
    pub modulus: u64,
    pub residue: u64,
    /// `m_0, ..., m_{p-1}`.
    pub digit_counts: Vec<u64>,
}

pub const Q2_RESIDUES: &[u64] = &[1, 2];
pub const Q3_RESIDUES: &[u64] = &[0, 1, 3];
pub const Q5_RESIDUES: &[u64] = &[0, 1, 3, 4, 5, 8, 9];

pub fn residue_class_check(k: &BigUint, pp: PrimePower) -> Result<ResidueCheck> {
    let (modulus, allowed, parity_restricted) = match pp.q() {
        2 => (3u64, Q2_RESIDUES, false),
        3 => (4, Q3_RESIDUES, true),
        5 => (12, Q5_RESIDUES, true),
        q => return Err(Error::Unsupported(q)),
    };
    let prof = build_profile(k, pp);
    let residue = (dim_lk(&prof) % modulus)
        .try_into()
        .expect("residue fits u64");
    let asserted = !(parity_restricted && k.is_odd());
    Ok(ResidueCheck {
        pass: !asserted || allowed.contains(&residue),
        asserted,
        modulus,
        residue,
        digit_counts: (0..pp.p()).map(|i| prof.m0(i)).collect(),
    })
}
