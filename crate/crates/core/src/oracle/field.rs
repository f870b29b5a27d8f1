//! Explicit finite fields `F_{p^e}` with table arithmetic.

use std::fmt;

use crate::digits::PrimePower;

/// Field element: the packed coefficient vector `sum c_i p^i` in the
/// polynomial basis `1, x, ..., x^{e-1}`.
pub type Fe = u16;

/// `F_{p^e} = F_p[x] / (f)` with `f` the first monic irreducible of degree `e`
/// when coefficient tuples `(c_{e-1}, ..., c_0)` are scanned in increasing
/// lexicographic order.
#[derive(Clone)]
pub struct Gf {
    pp: PrimePower,
    /// `c_0, ..., c_{e-1}` of `f = x^e + sum c_i x^i`.
    modulus: Vec<u64>,
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
    generator: Fe,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gf")
            .field("q", &self.pp.q())
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

fn unpack(mut x: u64, p: u64, e: usize) -> Vec<u64> {
    (0..e)
        .map(|_| {
            let c = x % p;
            x /= p;
            c
        })
        .collect()
}

fn pack(coeffs: &[u64], p: u64) -> Fe {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c) as Fe
}

/// Remainder of `num` modulo the monic `den` over `F_p`.
fn poly_rem(num: &[u64], den: &[u64], p: u64) -> Vec<u64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    while rem.len() > dd {
        let c = rem.pop().unwrap();
        if c != 0 {
            let base = rem.len() - dd;
            for (j, &d) in den[..dd].iter().enumerate() {
                rem[base + j] = (rem[base + j] + p - (c * d) % p) % p;
            }
        }
    }
    rem
}

fn monic(low: &[u64]) -> Vec<u64> {
    let mut v = low.to_vec();
    v.push(1);
    v
}

fn is_irreducible(low: &[u64], p: u64) -> bool {
    let e = low.len();
    let f = monic(low);
    for d in 1..=e / 2 {
        for t in 0..p.pow(d as u32) {
            let g = monic(&unpack(t, p, d));
            if poly_rem(&f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Gf {
    pub fn new(pp: PrimePower) -> Self {
        let (p, e) = (pp.p(), pp.e() as usize);
        let q = pp.q() as usize;
        assert!(q <= u16::MAX as usize, "field too large for table arithmetic");
        let modulus = (0..q as u64)
            .map(|t| unpack(t, p, e))
            .find(|c| is_irreducible(c, p))
            .expect("irreducible polynomials exist in every degree");
        let f = monic(&modulus);

        let mut add = vec![0 as Fe; q * q];
        let mut mul = vec![0 as Fe; q * q];
        for x in 0..q {
            let cx = unpack(x as u64, p, e);
            for y in 0..q {
                let cy = unpack(y as u64, p, e);
                let sum: Vec<u64> = cx.iter().zip(&cy).map(|(a, b)| (a + b) % p).collect();
                add[x * q + y] = pack(&sum, p);
                let mut prod = vec![0u64; 2 * e - 1];
                for (i, a) in cx.iter().enumerate() {
                    for (j, b) in cy.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a * b) % p;
                    }
                }
                mul[x * q + y] = pack(&poly_rem(&prod, &f, p), p);
            }
        }
        let neg = (0..q)
            .map(|x| (0..q).find(|&y| add[x * q + y] == 0).unwrap() as Fe)
            .collect();
        let inv = (0..q)
            .map(|x| {
                if x == 0 {
                    0
                } else {
                    (1..q).find(|&y| mul[x * q + y] == 1).expect("field inverse") as Fe
                }
            })
            .collect();
        let mut gf = Gf {
            pp,
            modulus,
            add,
            mul,
            neg,
            inv,
            generator: 0,
        };
        gf.generator = (1..q as Fe)
            .find(|&g| gf.order(g) == q as u64 - 1)
            .expect("multiplicative group is cyclic");
        gf
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }

    pub fn size(&self) -> usize {
        self.pp.q() as usize
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn coeffs(&self, x: Fe) -> Vec<u64> {
        unpack(x as u64, self.pp.p(), self.pp.e() as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Fe {
        pack(coeffs, self.pp.p())
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fe {
        n.rem_euclid(self.pp.p() as i64) as Fe
    }

    /// `x^j`, for `j < e`; these form an `F_p`-basis.
    pub fn basis_element(&self, j: u32) -> Fe {
        self.pp.p().pow(j) as Fe
    }

    #[inline]
    pub fn add(&self, x: Fe, y: Fe) -> Fe {
        self.add[x as usize * self.size() + y as usize]
    }

    #[inline]
    pub fn sub(&self, x: Fe, y: Fe) -> Fe {
        self.add(x, self.neg[y as usize])
    }

    #[inline]
    pub fn mul(&self, x: Fe, y: Fe) -> Fe {
        self.mul[x as usize * self.size() + y as usize]
    }

    #[inline]
    pub fn neg(&self, x: Fe) -> Fe {
        self.neg[x as usize]
    }

    pub fn inv(&self, x: Fe) -> Fe {
        assert!(x != 0, "zero has no inverse");
        self.inv[x as usize]
    }

    pub fn pow(&self, x: Fe, mut n: u64) -> Fe {
        let (mut base, mut acc) = (x, 1 as Fe);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: Fe) -> u64 {
        assert!(x != 0);
        let mut y = x;
        let mut n = 1;
        while y != 1 {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    /// A generator of the multiplicative group.
    pub fn generator(&self) -> Fe {
        self.generator
    }

    pub fn is_square(&self, x: Fe) -> bool {
        (0..self.size() as Fe).any(|y| self.mul(y, y) == x)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.size() as Fe
    }
}

/// The embedding `F_q -> F_{q^2}` sending `x` to the first root of the
/// defining polynomial of `F_q`.
#[derive(Clone, Debug)]
pub struct Embedding {
    image: Vec<Fe>,
    preimage: Vec<Option<Fe>>,
}

impl Embedding {
    pub fn new(small: &Gf, big: &Gf) -> Self {
        let f = monic(small.modulus());
        let eval = |beta: Fe| {
            f.iter().rev().fold(0 as Fe, |acc, &c| {
                big.add(big.mul(acc, beta), big.from_int(c as i64))
            })
        };
        let beta = big
            .elements()
            .find(|&b| eval(b) == 0)
            .expect("F_{q^2} contains a root of every degree-e irreducible");
        let image: Vec<Fe> = small
            .elements()
            .map(|x| {
                small
                    .coeffs(x)
                    .iter()
                    .rev()
                    .fold(0 as Fe, |acc, &c| big.add(big.mul(acc, beta), big.from_int(c as i64)))
            })
            .collect();
        let mut preimage = vec![None; big.size()];
        for (x, &y) in image.iter().enumerate() {
            preimage[y as usize] = Some(x as Fe);
        }
        Embedding { image, preimage }
    }

    pub fn map(&self, x: Fe) -> Fe {
        self.image[x as usize]
    }

    pub fn pull_back(&self, y: Fe) -> Option<Fe> {
        self.preimage[y as usize]
    }
}
