use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form `U·M·V = D` together with the inverse transforms.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Snf {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Quotient rounded to the nearest integer, so remainders stay at most |p|/2.
fn nearest_quotient(a: &BigInt, p: &BigInt) -> BigInt {
    let q = a.div_floor(p);
    let r = a - &q * p;
    let two_r: BigInt = &r * 2;
    // floor remainders carry the sign of p, so r − p is the smaller one
    if two_r.abs() > p.abs() {
        q + 1
    } else {
        q
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_rows(i, j);
            self.u.swap_rows(i, j);
            self.u_inv.swap_cols(i, j);
        }
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_cols(i, j);
            self.v.swap_cols(i, j);
            self.v_inv.swap_rows(i, j);
        }
    }
    /// row i += c * row j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        self.a.add_row_multiple(i, j, c);
        self.u.add_row_multiple(i, j, c);
        self.u_inv.add_col_multiple(j, i, &-c);
    }
    /// col i += c * col j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        self.a.add_col_multiple(i, j, c);
        self.v.add_col_multiple(i, j, c);
        self.v_inv.add_row_multiple(j, i, &-c);
    }
    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Dense Smith normal form with smallest-magnitude pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
        v_inv: IntMatrix::identity(c),
    };
    let mut t = 0;
    while t < r.min(c) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = &w.a[(i, j)];
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < w.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                if !w.a[(i, t)].is_zero() {
                    let q = nearest_quotient(&w.a[(i, t)], &p);
                    w.add_row(i, t, &-q);
                    if !w.a[(i, t)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..c {
                if !w.a[(t, j)].is_zero() {
                    let q = nearest_quotient(&w.a[(t, j)], &p);
                    w.add_col(j, t, &-q);
                    if !w.a[(t, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // bring the smallest leftover in row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..r {
                    let x = &w.a[(i, t)];
                    if !x.is_zero() && x.abs() < w.a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    let x = &w.a[(t, j)];
                    if !x.is_zero() && x.abs() < w.a[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    w.swap_rows(t, best.0);
                } else if best.1 != t {
                    w.swap_cols(t, best.1);
                }
                continue;
            }
            let mut bad = None;
            'scan: for i in t + 1..r {
                for j in t + 1..c {
                    if !w.a[(i, j)].is_multiple_of(&p) {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    Snf { u: w.u, u_inv: w.u_inv, d: w.a, v: w.v, v_inv: w.v_inv, rank: t }
}

/// Nonzero invariant factors (including 1s) of `m`. Unit pivots are first
/// eliminated sparsely; the dense algorithm only sees the remainder.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .filter(|&j| !m[(i, j)].is_zero())
                .map(|j| (j, m[(i, j)].clone()))
                .collect()
        })
        .collect();
    elementary_divisors_sparse(&mut rows, m.cols())
}

/// Same as [`elementary_divisors`] for a row-sparse matrix; consumes the rows.
pub fn elementary_divisors_sparse(rows: &mut [BTreeMap<usize, BigInt>], ncols: usize) -> Vec<BigInt> {
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for &j in r.keys() {
            col_rows[j].push(i);
        }
    }
    let mut alive_row = vec![true; rows.len()];
    let mut units = 0usize;
    loop {
        // pick a unit entry with the smallest row weight
        let mut pick: Option<(usize, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            if !alive_row[i] || r.is_empty() {
                continue;
            }
            if pick.map_or(false, |p| p.2 <= r.len()) {
                continue;
            }
            if let Some((&j, _)) = r.iter().find(|(_, x)| x.abs().is_one()) {
                pick = Some((i, j, r.len()));
            }
        }
        let Some((pi, pj, _)) = pick else { break };
        let pivot_row = std::mem::take(&mut rows[pi]);
        alive_row[pi] = false;
        let u = pivot_row[&pj].clone();
        let others: Vec<usize> = col_rows[pj].iter().copied().filter(|&k| alive_row[k]).collect();
        for k in others {
            let Some(c) = rows[k].get(&pj).cloned() else { continue };
            let f = &c * &u; // u = ±1, so c/u = c*u
            for (&j, x) in &pivot_row {
                let e = rows[k].entry(j).or_insert_with(BigInt::zero);
                let was_zero = e.is_zero();
                *e -= &f * x;
                if e.is_zero() {
                    rows[k].remove(&j);
                } else if was_zero {
                    col_rows[j].push(k);
                }
            }
        }
        units += 1;
    }
    // compress the remainder
    let live_cols: Vec<usize> = {
        let mut s: Vec<usize> =
            rows.iter().enumerate().filter(|(i, _)| alive_row[*i]).flat_map(|(_, r)| r.keys().copied()).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    let live_rows: Vec<usize> = (0..rows.len()).filter(|&i| alive_row[i] && !rows[i].is_empty()).collect();
    let cidx: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(a, &b)| (b, a)).collect();
    let mut dense = IntMatrix::zeros(live_rows.len(), live_cols.len());
    for (ii, &i) in live_rows.iter().enumerate() {
        for (j, x) in &rows[i] {
            dense[(ii, cidx[j])] = x.clone();
        }
    }
    let mut out = vec![BigInt::one(); units];
    out.extend(dense_divisors(dense));
    out
}

/// Invariant factors without transform tracking.
fn dense_divisors(mut a: IntMatrix) -> Vec<BigInt> {
    let (r, c) = (a.rows(), a.cols());
    let mut t = 0;
    let mut out = Vec::new();
    while t < r.min(c) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = &a[(i, j)];
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        break;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let p = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                if !a[(i, t)].is_zero() {
                    let q = nearest_quotient(&a[(i, t)], &p);
                    a.add_row_multiple(i, t, &-q);
                    clean &= a[(i, t)].is_zero();
                }
            }
            for j in t + 1..c {
                if !a[(t, j)].is_zero() {
                    let q = nearest_quotient(&a[(t, j)], &p);
                    a.add_col_multiple(j, t, &-q);
                    clean &= a[(t, j)].is_zero();
                }
            }
            if !clean {
                let mut best = (t, t);
                for i in t + 1..r {
                    if !a[(i, t)].is_zero() && a[(i, t)].abs() < a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    if !a[(t, j)].is_zero() && a[(t, j)].abs() < a[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap_rows(t, best.0);
                } else {
                    a.swap_cols(t, best.1);
                }
                continue;
            }
            break;
        }
        out.push(a[(t, t)].abs());
        t += 1;
    }
    // diagonal entries need not yet form a divisibility chain; fix via gcd/lcm
    normalize_diagonal(out)
}

/// Turns an arbitrary list of nonzero diagonal entries into the
/// divisibility chain of the same diagonal matrix.
pub fn normalize_diagonal(mut d: Vec<BigInt>) -> Vec<BigInt> {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

pub fn rank(m: &IntMatrix) -> usize {
    elementary_divisors(m).len()
}

/// Row-style Hermite normal form: returns the nonzero rows, upper echelon,
/// positive pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (r, c) = (a.rows(), a.cols());
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in row..r {
                if !a[(i, col)].is_zero() && best.map_or(true, |b| a[(i, col)].abs() < a[(b, col)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(row, b);
            let p = a[(row, col)].clone();
            let mut clean = true;
            for i in row + 1..r {
                if !a[(i, col)].is_zero() {
                    let q = a[(i, col)].div_floor(&p);
                    a.add_row_multiple(i, row, &-q);
                    clean &= a[(i, col)].is_zero();
                }
            }
            if clean {
                break;
            }
        }
        if a[(row, col)].is_zero() {
            continue;
        }
        if a[(row, col)].is_negative() {
            a.negate_row(row);
        }
        let p = a[(row, col)].clone();
        for i in 0..row {
            let q = a[(i, col)].div_floor(&p);
            a.add_row_multiple(i, row, &-q);
        }
        row += 1;
    }
    a.select_rows(&(0..row).collect::<Vec<_>>())
}
