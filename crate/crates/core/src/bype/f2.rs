use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::IntMatrix;
use crate::error::{Error, Result};

/// A matrix over `Z/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<bool>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix { rows, cols, data: vec![false; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>], cols_if_empty: usize) -> Result<Self> {
        let cols = rows.first().map_or(cols_if_empty, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension("ragged Z/2 matrix".into()));
            }
            for (j, &x) in r.iter().enumerate() {
                if x > 1 {
                    return Err(Error::InvalidArgument(format!("Z/2 entry must be 0 or 1, got {x}")));
                }
                m.set(i, j, x == 1);
            }
        }
        Ok(m)
    }

    /// Entries reduced mod 2.
    pub fn from_int(m: &IntMatrix) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, m[(i, j)].is_odd());
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) as u8).collect()).collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        !self.data.iter().any(|&x| x)
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows, "F2 product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for j in 0..other.cols {
                        if other.get(k, j) {
                            let v = out.get(i, j);
                            out.set(i, j, !v);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.shape(), other.shape(), "F2 sum shape");
        F2Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a ^ b).collect() }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> F2Matrix {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &F2Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    /// `[[a, b], [c, d]]`.
    pub fn blocks(a: &F2Matrix, b: &F2Matrix, c: &F2Matrix, d: &F2Matrix) -> F2Matrix {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols, "block shapes");
        let mut m = Self::zeros(a.rows + c.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(0, a.cols, b);
        m.set_block(a.rows, 0, c);
        m.set_block(a.rows, a.cols, d);
        m
    }

    pub fn entries(&self) -> impl Iterator<Item = bool> + '_ {
        self.data.iter().copied()
    }
}

impl Serialize for F2Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            rows: usize,
            cols: usize,
            entries: Vec<Vec<u8>>,
        }
        Repr { rows: self.rows, cols: self.cols, entries: self.to_rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for F2Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            rows: usize,
            cols: usize,
            entries: Vec<Vec<u8>>,
        }
        let r = Repr::deserialize(d)?;
        let m = F2Matrix::from_rows(&r.entries, r.cols).map_err(serde::de::Error::custom)?;
        if m.shape() != (r.rows, r.cols) {
            return Err(serde::de::Error::custom("Z/2 matrix shape does not match its entries"));
        }
        Ok(m)
    }
}

/// Solves `f(x) = 0` for an affine map `f: F₂ⁿ → F₂ᵐ` given as a closure.
pub fn solve_affine(nvars: usize, f: impl Fn(&[bool]) -> Vec<bool>) -> Option<Vec<bool>> {
    let zero = vec![false; nvars];
    let c = f(&zero);
    let mut cols = Vec::with_capacity(nvars);
    for u in 0..nvars {
        let mut e = zero.clone();
        e[u] = true;
        cols.push(f(&e).iter().zip(&c).map(|(a, b)| a ^ b).collect::<Vec<bool>>());
    }
    // rows: equations M x = c
    let m = c.len();
    let mut rows: Vec<Vec<bool>> = (0..m).map(|i| (0..nvars).map(|u| cols[u][i]).chain([c[i]]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..nvars {
        let Some(p) = (r..m).find(|&i| rows[i][col]) else { continue };
        rows.swap(r, p);
        for i in 0..m {
            if i != r && rows[i][col] {
                let pr = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pr) {
                    *x ^= y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[nvars]) {
        return None;
    }
    let mut x = vec![false; nvars];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rows[i][nvars];
    }
    Some(x)
}
