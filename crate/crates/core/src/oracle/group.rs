//! Elements of `SL2(F_q)` and brute-force conjugacy classes.

use std::fmt;

use super::field::{Fe, Gf};
use super::matrix::GfMatrix;

/// `[[a, b], [c, d]]` with `ad - bc = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sl2 {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub d: Fe,
}

impl fmt::Display for Sl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Sl2 {
    pub fn new(gf: &Gf, a: Fe, b: Fe, c: Fe, d: Fe) -> Option<Self> {
        (gf.sub(gf.mul(a, d), gf.mul(b, c)) == 1).then_some(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self { a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn scalar(gf: &Gf, s: Fe) -> Self {
        assert_eq!(gf.mul(s, s), 1, "scalar must be a square root of one");
        Self { a: s, b: 0, c: 0, d: s }
    }

    pub fn upper(t: Fe) -> Self {
        Self { a: 1, b: t, c: 0, d: 1 }
    }

    pub fn lower(t: Fe) -> Self {
        Self { a: 1, b: 0, c: t, d: 1 }
    }

    /// `[[0, -1], [1, b]]`, characteristic polynomial `T^2 - bT + 1`.
    pub fn companion(gf: &Gf, b: Fe) -> Self {
        Self { a: 0, b: gf.neg(1), c: 1, d: b }
    }

    pub fn mul(&self, o: &Self, gf: &Gf) -> Self {
        let dot = |x: Fe, y: Fe, z: Fe, w: Fe| gf.add(gf.mul(x, y), gf.mul(z, w));
        Self {
            a: dot(self.a, o.a, self.b, o.c),
            b: dot(self.a, o.b, self.b, o.d),
            c: dot(self.c, o.a, self.d, o.c),
            d: dot(self.c, o.b, self.d, o.d),
        }
    }

    pub fn inverse(&self, gf: &Gf) -> Self {
        Self {
            a: self.d,
            b: gf.neg(self.b),
            c: gf.neg(self.c),
            d: self.a,
        }
    }

    /// `h g h^{-1}`.
    pub fn conjugate_by(&self, h: &Self, gf: &Gf) -> Self {
        h.mul(self, gf).mul(&h.inverse(gf), gf)
    }

    pub fn trace(&self, gf: &Gf) -> Fe {
        gf.add(self.a, self.d)
    }

    pub fn order(&self, gf: &Gf) -> u64 {
        let mut x = *self;
        let mut n = 1;
        while x != Self::identity() {
            x = x.mul(self, gf);
            n += 1;
        }
        n
    }

    /// Entrywise `x -> x^{p^s}`.
    pub fn frobenius(&self, gf: &Gf, s: u32) -> Self {
        let n = gf.prime_power().p().pow(s);
        Self {
            a: gf.pow(self.a, n),
            b: gf.pow(self.b, n),
            c: gf.pow(self.c, n),
            d: gf.pow(self.d, n),
        }
    }

    pub fn to_matrix(&self) -> GfMatrix {
        GfMatrix::from_rows(&[vec![self.a, self.b], vec![self.c, self.d]])
    }

    /// Dense index in `0..q^4`.
    pub fn key(&self, q: usize) -> usize {
        ((self.a as usize * q + self.b as usize) * q + self.c as usize) * q + self.d as usize
    }
}

/// All `q (q^2 - 1)` elements, lexicographic in `(a, b, c, d)`.
pub fn sl2_elements(gf: &Gf) -> Vec<Sl2> {
    let mut out = Vec::with_capacity(gf.prime_power().group_order() as usize);
    for a in gf.elements() {
        for b in gf.elements() {
            for c in gf.elements() {
                for d in gf.elements() {
                    if let Some(g) = Sl2::new(gf, a, b, c, d) {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

/// Conjugacy classes as sorted index lists into `elements`, ordered by
/// their first member.
pub fn conjugacy_classes(gf: &Gf, elements: &[Sl2]) -> Vec<Vec<usize>> {
    let q = gf.size();
    let mut index = vec![usize::MAX; q.pow(4)];
    for (i, g) in elements.iter().enumerate() {
        index[g.key(q)] = i;
    }
    let mut class_of = vec![usize::MAX; elements.len()];
    let mut classes = Vec::new();
    for (i, g) in elements.iter().enumerate() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for h in elements {
            let j = index[g.conjugate_by(h, gf).key(q)];
            if class_of[j] == usize::MAX {
                class_of[j] = id;
                members.push(j);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}
