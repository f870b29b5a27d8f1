//! Dense matrices over a table field.

use super::field::{Fe, Gf};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl GfMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    pub fn scalar(n: usize, c: Fe) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fe>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map(&self, f: impl Fn(Fe) -> Fe) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn mul(&self, other: &Self, gf: &Gf) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = gf.add(out.get(i, j), gf.mul(a, other.get(t, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self, gf: &Gf) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| gf.sub(a, b))
                .collect(),
        }
    }

    pub fn kronecker(&self, other: &Self, gf: &Gf) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, gf.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self, gf: &Gf) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = gf.inv(m.get(r, c));
            for j in c..m.cols {
                m.set(r, j, gf.mul(inv, m.get(r, j)));
            }
            for i in 0..m.rows {
                let f = m.get(i, c);
                if i == r || f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = gf.sub(m.get(i, j), gf.mul(f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, gf: &Gf) -> usize {
        self.rref(gf).1.len()
    }

    pub fn nullity(&self, gf: &Gf) -> usize {
        self.cols - self.rank(gf)
    }

    /// A basis of `{v : self * v = 0}`.
    pub fn nullspace(&self, gf: &Gf) -> Vec<Vec<Fe>> {
        let (m, pivots) = self.rref(gf);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = gf.neg(m.get(r, free));
                }
                v
            })
            .collect()
    }
}

/// Row space built one row at a time; rows are kept monic and zero before
/// their pivot.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    width: usize,
    rows: Vec<Vec<Fe>>,
    pivot_row: Vec<Option<usize>>,
}

impl RowEchelon {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            pivot_row: vec![None; width],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduces `row` against the stored rows; keeps it if independent.
    pub fn insert(&mut self, mut row: Vec<Fe>, gf: &Gf) -> bool {
        assert_eq!(row.len(), self.width);
        let mut lead = None;
        for c in 0..self.width {
            let f = row[c];
            if f == 0 {
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    let piv = &self.rows[r];
                    for j in c..self.width {
                        if piv[j] != 0 {
                            row[j] = gf.sub(row[j], gf.mul(f, piv[j]));
                        }
                    }
                }
                None => {
                    lead = Some(c);
                    break;
                }
            }
        }
        let Some(c) = lead else {
            return false;
        };
        let inv = gf.inv(row[c]);
        for x in &mut row[c..] {
            *x = gf.mul(inv, *x);
        }
        self.pivot_row[c] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn nullspace(&self, gf: &Gf) -> Vec<Vec<Fe>> {
        if self.rows.is_empty() {
            return GfMatrix::zeros(0, self.width).nullspace(gf);
        }
        GfMatrix::from_rows(&self.rows).nullspace(gf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::PrimePower;

    fn gf(q: u64) -> Gf {
        Gf::new(PrimePower::from_q(q).unwrap())
    }

    #[test]
    fn rank_and_nullspace() {
        let f = gf(5);
        let m = GfMatrix::from_rows(&[vec![1, 2, 3], vec![2, 0, 1], vec![3, 2, 4]]);
        // row 3 = row 1 + row 2 mod 5
        assert_eq!(m.rank(&f), 2);
        let ns = m.nullspace(&f);
        assert_eq!(ns.len(), 1);
        let col = GfMatrix::from_rows(&ns[0].iter().map(|&x| vec![x]).collect::<Vec<_>>());
        let prod = m.mul(&col, &f);
        assert!((0..3).all(|i| prod.get(i, 0) == 0));
    }

    #[test]
    fn echelon_matches_rref() {
        let f = gf(9);
        let rows: Vec<Vec<Fe>> = (0..12u16)
            .map(|i| (0..7u16).map(|j| (i * 7 + j * j * 3 + i * j) % 9).collect())
            .collect();
        let mut ech = RowEchelon::new(7);
        for r in &rows {
            ech.insert(r.clone(), &f);
        }
        let m = GfMatrix::from_rows(&rows);
        assert_eq!(ech.rank(), m.rank(&f));
        assert_eq!(ech.nullspace(&f).len(), m.nullspace(&f).len());
        for v in ech.nullspace(&f) {
            for r in &rows {
                let dot = r
                    .iter()
                    .zip(&v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn kronecker_mixed_product() {
        let f = gf(7);
        let a = GfMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = GfMatrix::from_rows(&[vec![0, 5, 1], vec![2, 2, 6], vec![1, 0, 3]]);
        let c = GfMatrix::from_rows(&[vec![6, 1], vec![0, 2]]);
        let d = GfMatrix::from_rows(&[vec![1, 1, 0], vec![4, 0, 2], vec![3, 3, 3]]);
        let lhs = a.kronecker(&b, &f).mul(&c.kronecker(&d, &f), &f);
        let rhs = a.mul(&c, &f).kronecker(&b.mul(&d, &f), &f);
        assert_eq!(lhs, rhs);
        assert_eq!(GfMatrix::identity(2).kronecker(&GfMatrix::identity(3), &f), GfMatrix::identity(6));
    }
}
