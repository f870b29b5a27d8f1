//! Base-`p` and base-`q` digit expansions and the digit statistics `m_{i,j}`.
//!
//! `m_{i,j}` counts the base-`q` digits of `k` whose `j`-th base-`p` digit is
//! `i`. Every base-`q` position `0..=t` is counted, so `k = 0` has a single
//! zero digit and `m_{0,j} = 1` for all `j`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `q = p^e` with `p` prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u64,
    e: u32,
    q: u64,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidArgument("exponent must be at least 1".into()));
        }
        let q = p
            .checked_pow(e)
            .ok_or_else(|| Error::InvalidArgument(format!("{p}^{e} overflows u64")))?;
        Ok(Self { p, e, q })
    }

    /// Factors `q` by trial division.
    pub fn from_q(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let mut p = 2u64;
        while p * p <= q && q % p != 0 {
            p += 1;
        }
        if q % p != 0 {
            p = q;
        }
        let mut rest = q;
        let mut e = 0u32;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q));
        }
        Self::new(p, e)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    /// `#SL2(F_q) = q (q^2 - 1)`.
    pub fn group_order(&self) -> u64 {
        self.q * (self.q * self.q - 1)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "{}", self.q)
        } else {
            write!(f, "{}^{}", self.p, self.e)
        }
    }
}

/// Little-endian digits of `k` in base `b`; zero expands to `[0]`.
pub fn expand_base(k: &BigUint, b: u64) -> Vec<u64> {
    assert!(b >= 2, "base must be at least 2");
    if b <= 256 {
        return k.to_radix_le(b as u32).into_iter().map(u64::from).collect();
    }
    if k.is_zero() {
        return vec![0];
    }
    let base = BigUint::from(b);
    let mut rest = k.clone();
    let mut out = Vec::new();
    while !rest.is_zero() {
        let (quot, rem) = rest.div_rem(&base);
        out.push(rem.to_u64().expect("digit below base"));
        rest = quot;
    }
    out
}

/// The digit data of `k` relative to `q = p^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitProfile {
    k: BigUint,
    pp: PrimePower,
    base_p: Vec<u64>,
    base_q: Vec<u64>,
    /// Row-major `p x e` table.
    counts: Vec<u64>,
}

pub fn build_profile(k: &BigUint, pp: PrimePower) -> DigitProfile {
    let p = pp.p();
    let e = pp.e() as usize;
    let base_p = expand_base(k, p);
    let base_q = expand_base(k, pp.q());
    let mut counts = vec![0u64; p as usize * e];
    for pos in 0..base_q.len() {
        for j in 0..e {
            let digit = base_p.get(pos * e + j).copied().unwrap_or(0);
            counts[digit as usize * e + j] += 1;
        }
    }
    DigitProfile {
        k: k.clone(),
        pp,
        base_p,
        base_q,
        counts,
    }
}

impl DigitProfile {
    pub fn k(&self) -> &BigUint {
        &self.k
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }

    pub fn base_p_digits(&self) -> &[u64] {
        &self.base_p
    }

    pub fn base_q_digits(&self) -> &[u64] {
        &self.base_q
    }

    /// `m_{i,j}`.
    pub fn m(&self, i: u64, j: u32) -> u64 {
        self.counts[i as usize * self.pp.e() as usize + j as usize]
    }

    /// `m_i = m_{i,0}`, the natural shorthand when `q = p`.
    pub fn m0(&self, i: u64) -> u64 {
        self.m(i, 0)
    }

    /// Number of nonzero base-`p` digits among the counted positions.
    pub fn nonzero_digit_count(&self) -> u64 {
        let e = self.pp.e() as usize;
        self.counts[e..].iter().sum()
    }

    /// Iterates `(i, j, m_{i,j})` over nonzero digits `i >= 1` with positive count.
    pub fn nonzero_counts(&self) -> impl Iterator<Item = (u64, u32, u64)> + '_ {
        let e = self.pp.e();
        (1..self.pp.p()).flat_map(move |i| {
            (0..e).filter_map(move |j| {
                let m = self.m(i, j);
                (m > 0).then_some((i, j, m))
            })
        })
    }

    /// `(k mod 2, sum over odd i and all j of m_{i,j} mod 2)`; the two agree for odd `p`.
    pub fn parity_class(&self) -> Result<(u8, u8)> {
        if !self.pp.is_odd() {
            return Err(Error::InvalidArgument(
                "parity identity needs an odd prime".into(),
            ));
        }
        let k_parity = u8::from(self.k.is_odd());
        let odd_sum: u64 = self
            .nonzero_counts()
            .filter(|(i, _, _)| i % 2 == 1)
            .map(|(_, _, m)| m)
            .sum();
        Ok((k_parity, (odd_sum % 2) as u8))
    }
}

/// `dim L_k = prod_{i >= 1, j} (i + 1)^{m_{i,j}}`.
pub fn dim_lk(profile: &DigitProfile) -> BigUint {
    profile
        .nonzero_counts()
        .fold(BigUint::one(), |acc, (i, _, m)| {
            acc * BigUint::from(i + 1).pow(m as u32)
        })
}
