use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// Brute-force bound for [`FieldCode::min_distance`] and friends.
pub const FIELD_SWEEP_CAP: u64 = 1 << 20;

/// A linear code over a finite field.
#[derive(Clone, Debug)]
pub struct FieldCode {
    field: Arc<Field>,
    n: usize,
    generators: Vec<Vec<FieldElem>>,
    basis: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub(crate) fn rref(
    field: &Field,
    rows: &[Vec<FieldElem>],
    n: usize,
) -> (Vec<Vec<FieldElem>>, Vec<usize>) {
    let mut m: Vec<Vec<FieldElem>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(i) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, i);
        let inv = field.inv(m[r][c]).expect("nonzero");
        for e in m[r].iter_mut() {
            *e = field.mul(inv, *e);
        }
        let prow = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            let f = row[c];
            if k != r && !f.is_zero() {
                for (d, &a) in row.iter_mut().zip(&prow) {
                    *d = field.sub(*d, field.mul(f, a));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

impl FieldCode {
    pub fn new(field: Arc<Field>, n: usize, generators: Vec<Vec<FieldElem>>) -> Result<Self> {
        for g in &generators {
            if g.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator of length {} in a code of length {n}",
                    g.len()
                )));
            }
            if let Some(e) = g.iter().find(|e| e.index() >= field.order()) {
                return Err(Error::OutOfRange(format!(
                    "field index {} >= {}",
                    e.index(),
                    field.order()
                )));
            }
        }
        let (basis, pivots) = rref(&field, &generators, n);
        Ok(FieldCode {
            field,
            n,
            generators,
            basis,
            pivots,
        })
    }

    pub fn zero(field: Arc<Field>, n: usize) -> Self {
        FieldCode::new(field, n, Vec::new()).expect("no generators")
    }

    pub fn full(field: Arc<Field>, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            FieldElem::ONE
                        } else {
                            FieldElem::ZERO
                        }
                    })
                    .collect()
            })
            .collect();
        FieldCode::new(field, n, rows).expect("identity rows")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn generators(&self) -> &[Vec<FieldElem>] {
        &self.generators
    }

    /// Reduced row echelon basis.
    pub fn basis(&self) -> &[Vec<FieldElem>] {
        &self.basis
    }

    /// `Σ u_i v_i^{p^h}`.
    pub fn inner_product(&self, u: &[FieldElem], v: &[FieldElem], h: u32) -> FieldElem {
        let f = &self.field;
        u.iter().zip(v).fold(FieldElem::ZERO, |acc, (&a, &b)| {
            f.add(acc, f.mul(a, f.frobenius(b, h)))
        })
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let f = &self.field;
        let mut rest = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let a = rest[c];
            if !a.is_zero() {
                for (d, &e) in rest.iter_mut().zip(row) {
                    *d = f.sub(*d, f.mul(a, e));
                }
            }
        }
        rest.iter().all(|e| e.is_zero())
    }

    pub fn is_subcode_of(&self, other: &FieldCode) -> bool {
        self.field == other.field
            && self.n == other.n
            && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn row_space_equal(&self, other: &FieldCode) -> bool {
        self.dimension() == other.dimension() && self.is_subcode_of(other)
    }

    /// `{v : ⟨v, c⟩_h = 0 for all c}`, read off the echelon form of `σ^h(basis)`.
    pub fn dual(&self, h: u32) -> FieldCode {
        let f = &self.field;
        let conj: Vec<Vec<FieldElem>> = self
            .basis
            .iter()
            .map(|row| row.iter().map(|&e| f.frobenius(e, h)).collect())
            .collect();
        let (red, pivots) = rref(f, &conj, self.n);
        let free: Vec<usize> = (0..self.n).filter(|c| !pivots.contains(c)).collect();
        let rows = free
            .iter()
            .map(|&j| {
                let mut v = vec![FieldElem::ZERO; self.n];
                v[j] = FieldElem::ONE;
                for (row, &c) in red.iter().zip(&pivots) {
                    v[c] = f.neg(row[j]);
                }
                v
            })
            .collect();
        FieldCode::new(self.field.clone(), self.n, rows).expect("kernel rows")
    }

    pub fn intersect(&self, other: &FieldCode) -> Result<FieldCode> {
        if self.field != other.field || self.n != other.n {
            return Err(Error::DimensionMismatch(
                "codes over different spaces".into(),
            ));
        }
        let mut rows = self.dual(0).basis.clone();
        rows.extend(other.dual(0).basis.iter().cloned());
        Ok(FieldCode::new(self.field.clone(), self.n, rows)?.dual(0))
    }

    pub fn hull(&self, h: u32) -> FieldCode {
        self.intersect(&self.dual(h)).expect("same space")
    }

    /// `C ∩ C^{⊥_h} = 0`, decided by the rank of `G σ^h(G)^T`.
    pub fn is_lcd(&self, h: u32) -> bool {
        let k = self.dimension();
        let gram: Vec<Vec<FieldElem>> = self
            .basis
            .iter()
            .map(|u| {
                self.basis
                    .iter()
                    .map(|v| self.inner_product(u, v, h))
                    .collect()
            })
            .collect();
        rref(&self.field, &gram, k).0.len() == k
    }

    fn check_sweep(&self, cap: u64) -> Result<u64> {
        let size = (self.field.order() as u64).checked_pow(self.dimension() as u32);
        match size {
            Some(n) if n <= cap => Ok(n),
            _ => Err(Error::CapExceeded {
                what: "field code sweep",
                needed: (self.field.order() as u128).saturating_pow(self.dimension() as u32),
                cap: cap as u128,
            }),
        }
    }

    /// Every codeword, the first basis coefficient varying fastest.
    pub fn codewords(&self, cap: u64) -> Result<Vec<Vec<FieldElem>>> {
        let total = self.check_sweep(cap)?;
        let q = self.field.order() as u64;
        let f = &self.field;
        Ok((0..total)
            .map(|mut idx| {
                let mut w = vec![FieldElem::ZERO; self.n];
                for row in &self.basis {
                    let a = FieldElem((idx % q) as u32);
                    idx /= q;
                    if !a.is_zero() {
                        for (d, &e) in w.iter_mut().zip(row) {
                            *d = f.add(*d, f.mul(a, e));
                        }
                    }
                }
                w
            })
            .collect())
    }

    /// `A_i` for `i = 0..=n`.
    pub fn weight_distribution(&self, cap: u64) -> Result<Vec<u64>> {
        let mut dist = vec![0u64; self.n + 1];
        for w in self.codewords(cap)? {
            dist[hamming_weight(&w)] += 1;
        }
        Ok(dist)
    }

    /// Minimum Hamming weight of a nonzero codeword; `None` for the zero code.
    pub fn min_distance(&self, cap: u64) -> Result<Option<usize>> {
        let dist = self.weight_distribution(cap)?;
        Ok(dist.iter().skip(1).position(|&a| a > 0).map(|i| i + 1))
    }
}

pub fn hamming_weight(v: &[FieldElem]) -> usize {
    v.iter().filter(|e| !e.is_zero()).count()
}

pub fn hamming_distance(u: &[FieldElem], v: &[FieldElem]) -> usize {
    u.iter().zip(v).filter(|(a, b)| a != b).count()
}
