//! Matrices of `Delta_k = Sym^k` and of its simple submodule `L_k`.
//!
//! The basis of `Delta_k` is `v_i = X^i Y^{k-i}` for `i = 0..=k`, and `g`
//! acts by `X -> aX + cY`, `Y -> bX + dY`, so column `i` of the matrix holds
//! the coefficients of `(aX + cY)^i (bX + dY)^{k-i}`. `L_k` is spanned by the
//! `v_i` whose base-`p` digits are bounded by those of `k`.

use std::collections::BTreeMap;

use super::field::{Fe, Gf};
use super::group::Sl2;
use super::matrix::GfMatrix;
use super::GuardConfig;
use crate::error::{Error, Result};

/// Every `r` whose base-`p` digits are bounded by those of `n`, ascending.
pub fn dominated(n: u64, p: u64) -> Vec<u64> {
    let mut out = vec![0u64];
    let (mut rest, mut place) = (n, 1u64);
    while rest > 0 {
        let digit = rest % p;
        out = out
            .iter()
            .flat_map(|&x| (0..=digit).map(move |t| x + t * place))
            .collect();
        rest /= p;
        place = place.saturating_mul(p);
    }
    out.sort_unstable();
    out
}

/// Indices `i` of the monomials spanning `L_k`.
pub fn lk_basis(k: u64, p: u64) -> Vec<u64> {
    dominated(k, p)
}

fn pow_mod(mut b: u64, mut n: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        n >>= 1;
    }
    acc
}

/// `C(n, r) mod p` by Lucas' theorem.
pub fn binom_mod_p(mut n: u64, mut r: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || r > 0 {
        let (a, b) = (n % p, r % p);
        if b > a {
            return 0;
        }
        let (mut num, mut den) = (1u64, 1u64);
        for t in 0..b {
            num = num * ((a - t) % p) % p;
            den = den * ((t + 1) % p) % p;
        }
        acc = acc * num % p * pow_mod(den, p - 2, p) % p;
        n /= p;
        r /= p;
    }
    acc
}

/// `(u X + w Y)^n` as coefficients indexed by the power of `X`.
fn linear_power(gf: &Gf, u: Fe, w: Fe, n: u64) -> Vec<Vec<Fe>> {
    let mut powers = vec![vec![1 as Fe]];
    for _ in 0..n {
        let prev = powers.last().unwrap();
        let mut next = vec![0 as Fe; prev.len() + 1];
        for (j, &x) in prev.iter().enumerate() {
            next[j] = gf.add(next[j], gf.mul(w, x));
            next[j + 1] = gf.add(next[j + 1], gf.mul(u, x));
        }
        powers.push(next);
    }
    powers
}

/// The full `(k+1) x (k+1)` matrix of `g` on `Delta_k`, by direct
/// polynomial multiplication.
pub fn delta_action(gf: &Gf, g: &Sl2, k: u64, guards: &GuardConfig) -> Result<GfMatrix> {
    guards.check("delta_action: k", k, guards.max_delta_k)?;
    let left = linear_power(gf, g.a, g.c, k);
    let right = linear_power(gf, g.b, g.d, k);
    let n = k as usize + 1;
    let mut m = GfMatrix::zeros(n, n);
    for i in 0..n {
        let (p_i, q_i) = (&left[i], &right[n - 1 - i]);
        for (r, &x) in p_i.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (s, &y) in q_i.iter().enumerate() {
                let v = gf.add(m.get(r + s, i), gf.mul(x, y));
                m.set(r + s, i, v);
            }
        }
    }
    Ok(m)
}

/// Nonzero terms of `(u X + w Y)^n`, from Lucas' theorem.
fn sparse_power(gf: &Gf, u: Fe, w: Fe, n: u64) -> Vec<(u64, Fe)> {
    let p = gf.prime_power().p();
    dominated(n, p)
        .into_iter()
        .filter_map(|r| {
            let coeff = gf.mul(
                gf.from_int(binom_mod_p(n, r, p) as i64),
                gf.mul(gf.pow(u, r), gf.pow(w, n - r)),
            );
            (coeff != 0).then_some((r, coeff))
        })
        .collect()
}

/// The matrix of `g` on `L_k` in the basis [`lk_basis`]. Fails if some
/// image leaves the span of that basis.
pub fn lk_action(gf: &Gf, g: &Sl2, k: u64, guards: &GuardConfig) -> Result<GfMatrix> {
    let basis = lk_basis(k, gf.prime_power().p());
    guards.check("lk_action: dim L_k", basis.len() as u64, guards.max_lk_dim)?;
    let n = basis.len();
    let mut m = GfMatrix::zeros(n, n);
    for (col, &i) in basis.iter().enumerate() {
        let left = sparse_power(gf, g.a, g.c, i);
        let right = sparse_power(gf, g.b, g.d, k - i);
        let mut image: BTreeMap<u64, Fe> = BTreeMap::new();
        for &(r, x) in &left {
            for &(s, y) in &right {
                let slot = image.entry(r + s).or_insert(0);
                *slot = gf.add(*slot, gf.mul(x, y));
            }
        }
        for (j, v) in image {
            if v == 0 {
                continue;
            }
            let row = basis.binary_search(&j).map_err(|_| {
                Error::Inconsistent(format!(
                    "L_{k} not stable: image of v_{i} under {g} has v_{j} component"
                ))
            })?;
            m.set(row, col, v);
        }
    }
    Ok(m)
}

/// `L_k(g)` as the Kronecker product of `Delta_{k_s}(F^s(g))` over the
/// base-`p` digits `k_s`, most significant factor outermost.
pub fn lk_action_factorized(gf: &Gf, g: &Sl2, k: u64, guards: &GuardConfig) -> Result<GfMatrix> {
    let p = gf.prime_power().p();
    let mut digits = Vec::new();
    let mut rest = k;
    while rest > 0 {
        digits.push(rest % p);
        rest /= p;
    }
    let mut acc = GfMatrix::identity(1);
    for (s, &ks) in digits.iter().enumerate().rev() {
        let factor = delta_action(gf, &g.frobenius(gf, s as u32), ks, guards)?;
        acc = acc.kronecker(&factor, gf);
    }
    guards.check("lk_action: dim L_k", acc.rows() as u64, guards.max_lk_dim)?;
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::{build_profile, dim_lk, PrimePower};
    use crate::oracle::group::sl2_elements;
    use num_bigint::BigUint;

    fn gf(q: u64) -> Gf {
        Gf::new(PrimePower::from_q(q).unwrap())
    }

    fn guards() -> GuardConfig {
        GuardConfig::default()
    }

    #[test]
    fn lucas_against_pascal() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let mut row = vec![1u64];
            for n in 0..=500u64 {
                for (r, &c) in row.iter().enumerate() {
                    assert_eq!(binom_mod_p(n, r as u64, p), c, "C({n},{r}) mod {p}");
                }
                let mut next = vec![1u64; row.len() + 1];
                for r in 1..row.len() {
                    next[r] = (row[r - 1] + row[r]) % p;
                }
                row = next;
            }
        }
    }

    #[test]
    fn basis_is_nonvanishing_binomials() {
        for p in [2u64, 3, 5, 7] {
            for k in 0..=500u64 {
                let direct: Vec<u64> = (0..=k).filter(|&i| binom_mod_p(k, i, p) != 0).collect();
                assert_eq!(lk_basis(k, p), direct);
            }
        }
    }

    #[test]
    fn basis_size_is_dimension() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let pp = PrimePower::from_q(q).unwrap();
            for k in 0..400u64 {
                let d = dim_lk(&build_profile(&BigUint::from(k), pp));
                assert_eq!(BigUint::from(lk_basis(k, pp.p()).len()), d);
            }
        }
    }

    #[test]
    fn delta_is_a_homomorphism() {
        for q in [2u64, 3, 4, 5, 9] {
            let f = gf(q);
            let els = sl2_elements(&f);
            for k in [0u64, 1, 2, 5, 11] {
                for g in els.iter().step_by(13) {
                    for h in els.iter().step_by(17) {
                        let lhs = delta_action(&f, &g.mul(h, &f), k, &guards()).unwrap();
                        let rhs = delta_action(&f, g, k, &guards())
                            .unwrap()
                            .mul(&delta_action(&f, h, k, &guards()).unwrap(), &f);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn lk_is_restriction_of_delta() {
        for q in [2u64, 3, 4, 5, 7, 9] {
            let f = gf(q);
            let p = f.prime_power().p();
            let els = sl2_elements(&f);
            for k in 0..=40u64 {
                let basis = lk_basis(k, p);
                for g in els.iter().step_by(19) {
                    let full = delta_action(&f, g, k, &guards()).unwrap();
                    let lk = lk_action(&f, g, k, &guards()).unwrap();
                    for (c, &i) in basis.iter().enumerate() {
                        for (r, &j) in basis.iter().enumerate() {
                            assert_eq!(lk.get(r, c), full.get(j as usize, i as usize));
                        }
                        let outside: usize = (0..=k as usize)
                            .filter(|j| basis.binary_search(&(*j as u64)).is_err())
                            .filter(|&j| full.get(j, i as usize) != 0)
                            .count();
                        assert_eq!(outside, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn tensor_factorization() {
        for q in [2u64, 3, 4, 8, 9] {
            let f = gf(q);
            let els = sl2_elements(&f);
            for k in [1u64, 3, 6, 7, 13, 26, 40, 63] {
                for g in els.iter().step_by(23) {
                    assert_eq!(
                        lk_action(&f, g, k, &guards()).unwrap(),
                        lk_action_factorized(&f, g, k, &guards()).unwrap(),
                        "q = {q}, k = {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn guards_trip() {
        let f = gf(3);
        let g = Sl2::identity();
        assert!(matches!(
            delta_action(&f, &g, 129, &guards()),
            Err(Error::GuardExceeded(_))
        ));
        // 3^6 - 1 has dim 729
        assert!(matches!(
            lk_action(&f, &g, 728, &guards()),
            Err(Error::GuardExceeded(_))
        ));
        assert!(delta_action(&f, &g, 129, &GuardConfig::unlimited()).is_ok());
    }
}
