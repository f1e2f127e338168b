//! Dense matrices over a chain ring: products, Smith-style diagonalization,
//! left kernels, left solves and inverses.
//!
//! Vectors multiply matrices from the left throughout (`v * M`).

use crate::error::{Error, Result};
use crate::ring::{Ring, RingElem};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingMat {
    rows: usize,
    cols: usize,
    data: Vec<RingElem>,
}

impl RingMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RingMat {
            rows,
            cols,
            data: vec![RingElem::ZERO; rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Builds a `rows x cols` matrix; `cols` matters only when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<RingElem>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a {cols}-column matrix",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(RingMat {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RingMat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> RingElem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RingElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<RingElem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[RingElem]) {
        assert_eq!(row.len(), self.cols, "row length");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> RingMat {
        RingMat::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn map(&self, f: impl Fn(RingElem) -> RingElem) -> RingMat {
        RingMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&e| f(e)).collect(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> RingMat {
        RingMat::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    pub fn select_cols(&self, idx: &[usize]) -> RingMat {
        RingMat::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn hstack(&self, other: &RingMat) -> Result<RingMat> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let c = self.cols;
        Ok(RingMat::from_fn(self.rows, c + other.cols, |i, j| {
            if j < c {
                self.get(i, j)
            } else {
                other.get(i, j - c)
            }
        }))
    }

    pub fn vstack(&self, other: &RingMat) -> Result<RingMat> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(RingMat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn scale_row(&mut self, ring: &Ring, i: usize, f: RingElem) {
        for j in 0..self.cols {
            let v = ring.mul(f, self.get(i, j));
            self.set(i, j, v);
        }
    }

    /// `row[dst] -= f * row[src]`.
    fn row_axpy(&mut self, ring: &Ring, dst: usize, src: usize, f: RingElem) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = ring.sub(self.get(dst, j), ring.mul(f, self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    /// `col[dst] -= f * col[src]`.
    fn col_axpy(&mut self, ring: &Ring, dst: usize, src: usize, f: RingElem) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = ring.sub(self.get(i, dst), ring.mul(self.get(i, src), f));
            self.set(i, dst, v);
        }
    }
}

/// Row vector times matrix.
pub fn vec_mat(ring: &Ring, v: &[RingElem], m: &RingMat) -> Result<Vec<RingElem>> {
    if v.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} times {}-row matrix",
            v.len(),
            m.rows
        )));
    }
    Ok((0..m.cols)
        .map(|j| ring.sum(v.iter().enumerate().map(|(i, &a)| ring.mul(a, m.get(i, j)))))
        .collect())
}

pub fn mat_mul(ring: &Ring, a: &RingMat, b: &RingMat) -> Result<RingMat> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = RingMat::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let f = a.get(i, k);
            if f.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let v = ring.add(out.get(i, j), ring.mul(f, b.get(k, j)));
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}

/// `sigma^h` applied entrywise.
pub fn conj(ring: &Ring, a: &RingMat, h: u32) -> RingMat {
    a.map(|e| ring.sigma(e, h))
}

/// `P * M * Q = diag(theta^{d_0}, ..., theta^{d_{rank-1}}, 0, ...)`.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub p: RingMat,
    pub q: RingMat,
    pub d: Vec<u32>,
}

impl Diagonalization {
    pub fn rank(&self) -> usize {
        self.d.len()
    }

    pub fn diagonal(&self, ring: &Ring, rows: usize, cols: usize) -> RingMat {
        let mut m = RingMat::zeros(rows, cols);
        for (i, &d) in self.d.iter().enumerate() {
            m.set(i, i, ring.mul_theta_pow(ring.one(), d));
        }
        m
    }
}

pub fn diagonalize(ring: &Ring, m: &RingMat) -> Diagonalization {
    let s = ring.nilpotency();
    let mut a = m.clone();
    let mut p = RingMat::identity(ring, m.rows);
    let mut q = RingMat::identity(ring, m.cols);
    let mut d = Vec::new();
    for k in 0..m.rows.min(m.cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for i in k..a.rows {
            for j in k..a.cols {
                let v = ring.valuation(a.get(i, j));
                if v < s && best.is_none_or(|(b, _, _)| v < b) {
                    best = Some((v, i, j));
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((v, i, j)) = best else { break };
        a.swap_rows(k, i);
        p.swap_rows(k, i);
        a.swap_cols(k, j);
        q.swap_cols(k, j);
        let (_, unit) = ring.split_unit(a.get(k, k)).expect("nonzero pivot");
        let inv = ring.inv_unit(unit).expect("unit part");
        a.scale_row(ring, k, inv);
        p.scale_row(ring, k, inv);
        for i in k + 1..a.rows {
            let f = ring
                .div_theta_pow(a.get(i, k), v)
                .expect("minimal pivot divides column");
            a.row_axpy(ring, i, k, f);
            p.row_axpy(ring, i, k, f);
        }
        for j in k + 1..a.cols {
            let f = ring
                .div_theta_pow(a.get(k, j), v)
                .expect("minimal pivot divides row");
            a.col_axpy(ring, j, k, f);
            q.col_axpy(ring, j, k, f);
        }
        d.push(v);
    }
    Diagonalization { p, q, d }
}

pub fn is_invertible(ring: &Ring, m: &RingMat) -> Result<bool> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix is not square",
            m.rows, m.cols
        )));
    }
    let diag = diagonalize(ring, m);
    Ok(diag.rank() == m.rows && diag.d.iter().all(|&d| d == 0))
}

pub fn inverse(ring: &Ring, m: &RingMat) -> Result<Option<RingMat>> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix is not square",
            m.rows, m.cols
        )));
    }
    let diag = diagonalize(ring, m);
    if diag.rank() != m.rows || diag.d.iter().any(|&d| d != 0) {
        return Ok(None);
    }
    Ok(Some(mat_mul(ring, &diag.q, &diag.p)?))
}

/// Generators of the left kernel `{v : v * M = 0}`.
pub fn kernel(ring: &Ring, m: &RingMat) -> RingMat {
    let s = ring.nilpotency();
    let diag = diagonalize(ring, m);
    let mut out = RingMat::zeros(0, m.rows);
    for (i, &d) in diag.d.iter().enumerate() {
        if d > 0 {
            let row: Vec<RingElem> = diag
                .p
                .row(i)
                .iter()
                .map(|&e| ring.mul_theta_pow(e, s - d))
                .collect();
            out.push_row(&row);
        }
    }
    for i in diag.rank()..m.rows {
        out.push_row(diag.p.row(i));
    }
    out
}

/// Some `v` with `v * M = b`, if one exists.
pub fn solve(ring: &Ring, m: &RingMat, b: &[RingElem]) -> Result<Option<Vec<RingElem>>> {
    if b.len() != m.cols {
        return Err(Error::DimensionMismatch(format!(
            "target of length {} for {} columns",
            b.len(),
            m.cols
        )));
    }
    let diag = diagonalize(ring, m);
    let bq = vec_mat(ring, b, &diag.q)?;
    let mut w = vec![RingElem::ZERO; m.rows];
    for (j, &e) in bq.iter().enumerate() {
        if j < diag.rank() {
            match ring.div_theta_pow(e, diag.d[j]) {
                Some(c) => w[j] = c,
                None => return Ok(None),
            }
        } else if !e.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(vec_mat(ring, &w, &diag.p)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn z(p: u32, s: u32) -> Ring {
        Ring::new(RingSpec::integers(p, s)).unwrap()
    }

    fn mat(ring: &Ring, rows: &[&[i64]]) -> RingMat {
        let cols = rows.first().map_or(0, |r| r.len());
        RingMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| ring.from_int(v)).collect())
                .collect(),
            cols,
        )
        .unwrap()
    }

    #[test]
    fn product_example() {
        let z4 = z(2, 2);
        let a = mat(&z4, &[&[1, 2], &[0, 1]]);
        let b = mat(&z4, &[&[1, 0], &[1, 1]]);
        assert_eq!(mat_mul(&z4, &a, &b).unwrap(), mat(&z4, &[&[3, 2], &[1, 1]]));
    }

    #[test]
    fn diagonalize_examples() {
        let z4 = z(2, 2);
        let m = mat(&z4, &[&[2, 1], &[0, 2]]);
        let diag = diagonalize(&z4, &m);
        assert_eq!(diag.d, vec![0]);
        let pmq = mat_mul(&z4, &mat_mul(&z4, &diag.p, &m).unwrap(), &diag.q).unwrap();
        assert_eq!(pmq, diag.diagonal(&z4, 2, 2));

        let z8 = z(2, 3);
        assert_eq!(
            diagonalize(&z8, &mat(&z8, &[&[2, 0], &[0, 4]])).d,
            vec![1, 2]
        );
        assert_eq!(
            diagonalize(&z8, &RingMat::identity(&z8, 3)).d,
            vec![0, 0, 0]
        );
    }

    #[test]
    fn invertibility_examples() {
        let z4 = z(2, 2);
        assert!(is_invertible(&z4, &mat(&z4, &[&[1, 2], &[2, 1]])).unwrap());
        assert!(!is_invertible(&z4, &mat(&z4, &[&[2, 1], &[0, 2]])).unwrap());
        assert!(is_invertible(&z4, &mat(&z4, &[&[1, 2, 3]])).is_err());
        let m = mat(&z4, &[&[1, 2], &[2, 1]]);
        let inv = inverse(&z4, &m).unwrap().unwrap();
        assert_eq!(mat_mul(&z4, &m, &inv).unwrap(), RingMat::identity(&z4, 2));
    }

    #[test]
    fn kernel_examples() {
        let z4 = z(2, 2);
        assert_eq!(kernel(&z4, &RingMat::identity(&z4, 3)).rows(), 0);
        let m = mat(&z4, &[&[2, 1], &[0, 2]]);
        let k = kernel(&z4, &m);
        for i in 0..k.rows() {
            assert!(vec_mat(&z4, k.row(i), &m)
                .unwrap()
                .iter()
                .all(|e| e.is_zero()));
        }
        let z8 = z(2, 3);
        let k = kernel(&z8, &mat(&z8, &[&[4]]));
        assert_eq!(k, mat(&z8, &[&[2]]));
    }

    #[test]
    fn solve_examples() {
        let z8 = z(2, 3);
        let m = mat(&z8, &[&[2, 0], &[0, 4]]);
        let b = vec![z8.from_int(6), z8.from_int(4)];
        let v = solve(&z8, &m, &b).unwrap().unwrap();
        assert_eq!(vec_mat(&z8, &v, &m).unwrap(), b);
        assert_eq!(solve(&z8, &m, &[z8.from_int(1), z8.zero()]).unwrap(), None);
    }
}
