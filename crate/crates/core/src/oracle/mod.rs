//! Brute-force linear algebra over explicit finite fields.
//!
//! `d_{k,q}` is computed here as `dim Hom_G(st, L_k)` by solving the
//! equivariance equations for the generators of `G = SL2(F_q)`, with no use of
//! characters. The same machinery recomputes Brauer characters from actual
//! eigenvalues, which cross-checks the character formulas in [`crate::brauer`].

mod audit;
mod field;
mod group;
mod matrix;
mod rep;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_bigint::{BigInt, BigUint};

pub use audit::{conjugacy_class_audit, ClassAudit, RegularClassAudit};
pub use field::{Embedding, Fe, Gf};
pub use group::{conjugacy_classes, sl2_elements, Sl2};
pub use matrix::{GfMatrix, RowEchelon};
pub use rep::{binom_mod_p, delta_action, dominated, lk_action, lk_action_factorized, lk_basis};

use crate::brauer::{psi_lk, DimResult, Method, RegularClass};
use crate::cyclotomic::{CycInt, CycRing};
use crate::digits::{build_profile, PrimePower};
use crate::error::{Error, Result};

pub const GUARD_OVERRIDE_VAR: &str = "STEINBERG_GUARD_OVERRIDE";

/// Size limits for the brute-force routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GuardConfig {
    pub max_delta_k: u64,
    pub max_lk_dim: u64,
    pub max_enum_q: u64,
    pub max_hom_q: u64,
    /// Bound on `q * dim L_k`, the number of unknowns in the Hom solve.
    pub max_hom_unknowns: u64,
}

impl Default for GuardConfig {
    fn default() -> Self {
        Self {
            max_delta_k: 128,
            max_lk_dim: 256,
            max_enum_q: 13,
            max_hom_q: 9,
            max_hom_unknowns: 10_000,
        }
    }
}

impl GuardConfig {
    pub fn unlimited() -> Self {
        Self {
            max_delta_k: u64::MAX,
            max_lk_dim: u64::MAX,
            max_enum_q: u64::MAX,
            max_hom_q: u64::MAX,
            max_hom_unknowns: u64::MAX,
        }
    }

    /// Default limits, or none when `STEINBERG_GUARD_OVERRIDE=1`.
    pub fn from_env() -> Self {
        match std::env::var(GUARD_OVERRIDE_VAR) {
            Ok(v) if v == "1" => Self::unlimited(),
            _ => Self::default(),
        }
    }

    pub(crate) fn check(&self, what: &str, value: u64, limit: u64) -> Result<()> {
        if value > limit {
            return Err(Error::GuardExceeded(format!("{what} = {value} exceeds {limit}")));
        }
        Ok(())
    }
}

/// Field tables for `F_q` and `F_{q^2}`, and the Brauer lift
/// `alpha^m -> zeta_{q^2-1}^m` for the stored generator `alpha` of `F_{q^2}^x`.
#[derive(Clone, Debug)]
pub struct OracleContext {
    pub pp: PrimePower,
    pub fq: Gf,
    pub fq2: Gf,
    pub embedding: Embedding,
    pub guards: GuardConfig,
    log: Vec<u64>,
}

impl OracleContext {
    pub fn new(pp: PrimePower) -> Self {
        Self::with_guards(pp, GuardConfig::from_env())
    }

    pub fn with_guards(pp: PrimePower, guards: GuardConfig) -> Self {
        let fq = Gf::new(pp);
        let big = PrimePower::new(pp.p(), 2 * pp.e()).expect("q^2 is a prime power");
        let fq2 = Gf::new(big);
        let embedding = Embedding::new(&fq, &fq2);
        let mut log = vec![u64::MAX; fq2.size()];
        let mut x: Fe = 1;
        for m in 0..fq2.size() as u64 - 1 {
            log[x as usize] = m;
            x = fq2.mul(x, fq2.generator());
        }
        Self {
            pp,
            fq,
            fq2,
            embedding,
            guards,
            log,
        }
    }

    /// `q^2 - 1`, the conductor of the lifted values.
    pub fn lift_order(&self) -> u64 {
        self.fq2.size() as u64 - 1
    }

    pub fn lift_ring(&self) -> std::sync::Arc<CycRing> {
        CycRing::new(self.lift_order())
    }

    /// Discrete logarithm to the base `alpha`.
    pub fn lift_exponent(&self, x: Fe) -> u64 {
        assert!(x != 0, "zero has no Brauer lift");
        self.log[x as usize]
    }

    pub fn lift(&self, x: Fe) -> CycInt {
        CycInt::root_of_unity(&self.lift_ring(), self.lift_exponent(x) as i64)
    }

    /// `zeta` for the class, as an element of `F_{q^2}`.
    pub fn eigenvalue(&self, cls: &RegularClass) -> Fe {
        let step = self.lift_order() / cls.torus_order;
        self.fq2.pow(self.fq2.generator(), cls.exponent * step)
    }

    /// The listed representative `±1` or `A_zeta` of a regular class.
    pub fn class_element(&self, cls: &RegularClass) -> Result<Sl2> {
        let (big, small) = (&self.fq2, &self.fq);
        let zeta = self.eigenvalue(cls);
        if zeta == 1 {
            return Ok(Sl2::identity());
        }
        if zeta == big.neg(1) {
            return Ok(Sl2::scalar(small, small.neg(1)));
        }
        let trace = big.add(zeta, big.inv(zeta));
        let b = self.embedding.pull_back(trace).ok_or_else(|| {
            Error::Inconsistent(format!("trace of class {} is not in F_q", cls.label()))
        })?;
        Ok(Sl2::companion(small, b))
    }

    /// The Brauer character of `L_k` at `cls`, from the eigenvalues of
    /// `L_k(A_zeta)` over `F_{q^2}`; lives in `Z[zeta_{q^2-1}]`.
    pub fn brauer_character(&self, k: u64, cls: &RegularClass) -> Result<CycInt> {
        let g = self.class_element(cls)?;
        let m = lk_action(&self.fq, &g, k, &self.guards)?.map(|x| self.embedding.map(x));
        let n = m.rows();
        let step = self.lift_order() / cls.torus_order;
        let root = self.fq2.pow(self.fq2.generator(), step);
        let mut total = 0usize;
        let mut terms = Vec::new();
        let mut lambda: Fe = 1;
        for j in 0..cls.torus_order {
            let shifted = m.sub(&GfMatrix::scalar(n, lambda), &self.fq2);
            let mult = shifted.nullity(&self.fq2);
            if mult > 0 {
                total += mult;
                terms.push(((j * step) as i64, BigInt::from(mult)));
            }
            lambda = self.fq2.mul(lambda, root);
        }
        if total != n {
            return Err(Error::Inconsistent(format!(
                "L_{k}({g}) has {total} eigenvectors in dimension {n}"
            )));
        }
        Ok(CycInt::from_exponents(&self.lift_ring(), terms))
    }

    /// Compares [`Self::brauer_character`] with [`psi_lk`] in a common ring.
    pub fn brauer_character_agrees(&self, k: u64, cls: &RegularClass) -> Result<bool> {
        let observed = self.brauer_character(k, cls)?;
        let formula = psi_lk(&build_profile(&BigUint::from(k), self.pp), cls);
        let n = num_integer::lcm(observed.conductor(), formula.conductor());
        let ring = CycRing::new(n);
        Ok(observed.embed_into(&ring)? == formula.embed_into(&ring)?)
    }

    /// `E12(x^j)` and `E21(x^j)` for `j < e`; they generate `SL2(F_q)`.
    pub fn generators(&self) -> Vec<Sl2> {
        (0..self.pp.e())
            .flat_map(|j| {
                let t = self.fq.basis_element(j);
                [Sl2::upper(t), Sl2::lower(t)]
            })
            .collect()
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> Sl2 {
        let q = self.fq.size() as Fe;
        loop {
            let mut draw = || rng.random_range(0..q);
            let (a, b, c, d) = (draw(), draw(), draw(), draw());
            if let Some(g) = Sl2::new(&self.fq, a, b, c, d) {
                return g;
            }
        }
    }

    /// A basis of `Hom_G(st, L_k)`, each map a `dim L_k x q` matrix.
    pub fn hom_space(&self, k: u64) -> Result<Vec<GfMatrix>> {
        let q = self.pp.q();
        self.guards.check("hom_dim_oracle: q", q, self.guards.max_hom_q)?;
        let dim = lk_basis(k, self.pp.p()).len() as u64;
        self.guards
            .check("hom_dim_oracle: q * dim L_k", q * dim, self.guards.max_hom_unknowns)?;
        let (d, qs) = (dim as usize, q as usize);
        let width = d * qs;
        let gf = &self.fq;

        let mut echelon = RowEchelon::new(width);
        'outer: for g in self.generators() {
            let l = lk_action(gf, &g, k, &self.guards)?;
            let s = lk_action(gf, &g, q - 1, &self.guards)?;
            // (L M - M S)[r][c] = sum_t L[r][t] M[t][c] - sum_t M[r][t] S[t][c]
            for r in 0..d {
                for c in 0..qs {
                    let mut row = vec![0 as Fe; width];
                    for t in 0..d {
                        row[t * qs + c] = gf.add(row[t * qs + c], l.get(r, t));
                    }
                    for t in 0..qs {
                        row[r * qs + t] = gf.sub(row[r * qs + t], s.get(t, c));
                    }
                    echelon.insert(row, gf);
                    if echelon.is_full() {
                        break 'outer;
                    }
                }
            }
        }
        let maps: Vec<GfMatrix> = echelon
            .nullspace(gf)
            .into_iter()
            .map(|v| GfMatrix::from_rows(&v.chunks(qs).map(<[Fe]>::to_vec).collect::<Vec<_>>()))
            .collect();

        let mut rng = ChaCha8Rng::seed_from_u64(k ^ (q << 40) ^ 0x5eed);
        for _ in 0..5 {
            let g = self.random_element(&mut rng);
            let l = lk_action(gf, &g, k, &self.guards)?;
            let s = lk_action(gf, &g, q - 1, &self.guards)?;
            for m in &maps {
                if l.mul(m, gf) != m.mul(&s, gf) {
                    return Err(Error::Inconsistent(format!(
                        "solution for k = {k} is not equivariant under {g}"
                    )));
                }
            }
        }
        Ok(maps)
    }

    pub fn hom_dim(&self, k: u64) -> Result<DimResult> {
        let d = self.hom_space(k)?.len();
        Ok(DimResult {
            k: BigUint::from(k),
            q: self.pp.q(),
            d: BigUint::from(d),
            method: Method::Oracle,
            diagnostics: None,
        })
    }
}

/// `dim Hom_G(st, L_k)` by Gaussian elimination over `F_q`.
pub fn hom_dim_oracle(k: u64, pp: PrimePower) -> Result<DimResult> {
    OracleContext::new(pp).hom_dim(k)
}

/// The Brauer character of `L_k` at `cls`, from eigenvalues over `F_{q^2}`.
pub fn brauer_char_oracle(k: u64, pp: PrimePower, cls: &RegularClass) -> Result<CycInt> {
    OracleContext::new(pp).brauer_character(k, cls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::{dkq_general, regular_classes, ClassKind};
    use proptest::prelude::*;

    fn ctx(q: u64) -> OracleContext {
        OracleContext::with_guards(PrimePower::from_q(q).unwrap(), GuardConfig::default())
    }

    #[test]
    fn class_elements_have_expected_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
            let c = ctx(q);
            for cls in regular_classes(c.pp) {
                let g = c.class_element(&cls).unwrap();
                assert_eq!(g.order(&c.fq), cls.element_order(), "q = {q}, {}", cls.label());
            }
        }
    }

    #[test]
    fn brauer_characters_match_formula() {
        for q in [2u64, 3, 4, 5] {
            let c = ctx(q);
            for k in 0..=30u64 {
                for cls in regular_classes(c.pp) {
                    assert!(c.brauer_character_agrees(k, &cls).unwrap(), "q = {q}, k = {k}, {}", cls.label());
                }
            }
        }
    }

    #[test]
    fn brauer_character_at_identity_is_dimension() {
        let c = ctx(7);
        let one = regular_classes(c.pp)[0];
        assert_eq!(c.brauer_character(20, &one).unwrap().as_rational_integer().unwrap(), BigInt::from(21));
    }

    #[test]
    fn hom_examples() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let c = ctx(q);
            assert_eq!(c.hom_dim(q - 1).unwrap().d, BigUint::from(1u8), "st is simple");
            assert_eq!(c.hom_dim(0).unwrap().d, BigUint::from(0u8));
        }
    }

    #[test]
    fn hom_agrees_with_general_small() {
        for q in [2u64, 3, 4, 5] {
            let c = ctx(q);
            for k in 0..=40u64 {
                let general = dkq_general(&BigUint::from(k), c.pp).unwrap().d;
                assert_eq!(c.hom_dim(k).unwrap().d, general, "q = {q}, k = {k}");
            }
        }
    }

    #[test]
    fn hom_guards() {
        let c = ctx(11);
        assert!(matches!(c.hom_dim(3), Err(Error::GuardExceeded(_))));
        // dim L_728 = 729 for q = 3
        assert!(matches!(ctx(3).hom_dim(728), Err(Error::GuardExceeded(_))));
    }

    #[test]
    fn generators_generate() {
        for q in [4u64, 8, 9] {
            let c = ctx(q);
            let gens = c.generators();
            let mut seen = std::collections::HashSet::from([Sl2::identity()]);
            let mut frontier = vec![Sl2::identity()];
            while let Some(x) = frontier.pop() {
                for g in &gens {
                    let y = x.mul(g, &c.fq);
                    if seen.insert(y) {
                        frontier.push(y);
                    }
                }
            }
            assert_eq!(seen.len() as u64, c.pp.group_order());
        }
    }

    #[test]
    fn lift_examples() {
        let c = ctx(3);
        // F_9^x has order 8; -1 lifts to the real root -1
        let minus_one = c.fq2.neg(1);
        assert_eq!(c.lift_exponent(minus_one), 4);
        assert_eq!(c.lift(minus_one).as_rational_integer().unwrap(), BigInt::from(-1));
        let nonsplit = regular_classes(c.pp)
            .into_iter()
            .find(|cls| cls.kind == ClassKind::Nonsplit)
            .unwrap();
        assert_eq!(c.fq2.order(c.eigenvalue(&nonsplit)), 4);
    }

    proptest! {
        #[test]
        fn lift_is_multiplicative(qi in 0usize..5, x in 1u16..u16::MAX, y in 1u16..u16::MAX) {
            let c = ctx([2u64, 3, 4, 5, 7][qi]);
            let n = c.fq2.size() as u16;
            let (x, y) = (x % (n - 1) + 1, y % (n - 1) + 1);
            let lhs = c.lift(c.fq2.mul(x, y));
            let rhs = &c.lift(x) * &c.lift(y);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn delta_homomorphism_random(qi in 0usize..4, k in 0u64..24, seed in any::<u64>()) {
            let c = ctx([2u64, 3, 4, 5][qi]);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (g, h) = (c.random_element(&mut rng), c.random_element(&mut rng));
            let lhs = delta_action(&c.fq, &g.mul(&h, &c.fq), k, &c.guards).unwrap();
            let rhs = delta_action(&c.fq, &g, k, &c.guards)
                .unwrap()
                .mul(&delta_action(&c.fq, &h, k, &c.guards).unwrap(), &c.fq);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
