//! Mixed-alphabet spaces `S̄^α × S^β` with `S̄ = S / theta^r`, their vectors,
//! matrices and the `h`-Galois inner product.

mod code;
mod standard;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::RingMat;
use crate::ring::{Ring, RingElem, RingSpec};

pub use code::{LcdMethod, LcdReport, MixedCode, Separation, DEFAULT_ENUMERATION_CAP};
pub use standard::{mixed_standard_form, CodeType, StandardFormResult};

/// A vector `(x ‖ y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MixedVec {
    pub x: Vec<RingElem>,
    pub y: Vec<RingElem>,
}

impl MixedVec {
    pub fn new(x: Vec<RingElem>, y: Vec<RingElem>) -> Self {
        MixedVec { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(&self.y).all(|e| e.is_zero())
    }
}

/// A mixed matrix `(X ‖ Y)`, `X` over `S̄` and `Y` over `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedMat {
    pub x: RingMat,
    pub y: RingMat,
}

impl MixedMat {
    pub fn new(x: RingMat, y: RingMat) -> Result<Self> {
        if x.rows() != y.rows() {
            return Err(Error::DimensionMismatch(format!(
                "X has {} rows, Y has {}",
                x.rows(),
                y.rows()
            )));
        }
        Ok(MixedMat { x, y })
    }

    pub fn empty(alpha: usize, beta: usize) -> Self {
        MixedMat {
            x: RingMat::zeros(0, alpha),
            y: RingMat::zeros(0, beta),
        }
    }

    pub fn from_vecs(alpha: usize, beta: usize, rows: &[MixedVec]) -> Result<Self> {
        let x = RingMat::from_rows(rows.iter().map(|v| v.x.clone()).collect(), alpha)?;
        let y = RingMat::from_rows(rows.iter().map(|v| v.y.clone()).collect(), beta)?;
        Ok(MixedMat { x, y })
    }

    pub fn rows(&self) -> usize {
        self.x.rows()
    }

    pub fn row(&self, i: usize) -> MixedVec {
        MixedVec::new(self.x.row(i).to_vec(), self.y.row(i).to_vec())
    }

    pub fn row_vecs(&self) -> Vec<MixedVec> {
        (0..self.rows()).map(|i| self.row(i)).collect()
    }

    pub fn alpha(&self) -> usize {
        self.x.cols()
    }

    pub fn beta(&self) -> usize {
        self.y.cols()
    }
}

/// The ambient space `S̄^α × S^β`.
#[derive(Clone, Debug)]
pub struct Ambient {
    ring: Arc<Ring>,
    bar: Arc<Ring>,
    alpha: usize,
    beta: usize,
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        self.alpha == other.alpha
            && self.beta == other.beta
            && self.ring == other.ring
            && self.bar == other.bar
    }
}

impl Eq for Ambient {}

impl Ambient {
    pub fn new(spec: RingSpec, r: u32, alpha: usize, beta: usize) -> Result<Self> {
        Self::from_ring(Arc::new(Ring::new(spec)?), r, alpha, beta)
    }

    pub fn from_ring(ring: Arc<Ring>, r: u32, alpha: usize, beta: usize) -> Result<Self> {
        let bar = Arc::new(ring.bar_ring(r)?);
        Ok(Ambient {
            ring,
            bar,
            alpha,
            beta,
        })
    }

    /// Same rings, other block lengths.
    pub fn with_lengths(&self, alpha: usize, beta: usize) -> Self {
        Ambient {
            ring: self.ring.clone(),
            bar: self.bar.clone(),
            alpha,
            beta,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn bar_ring(&self) -> &Ring {
        &self.bar
    }

    pub fn r(&self) -> u32 {
        self.bar.nilpotency()
    }

    pub fn s(&self) -> u32 {
        self.ring.nilpotency()
    }

    /// `s - r`.
    pub fn shift(&self) -> u32 {
        self.s() - self.r()
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn len(&self) -> usize {
        self.alpha + self.beta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `log_{q^m}` of the number of vectors: `r α + s β`.
    pub fn log_size(&self) -> u32 {
        self.r() * self.alpha as u32 + self.s() * self.beta as u32
    }

    pub fn zero(&self) -> MixedVec {
        MixedVec::new(
            vec![RingElem::ZERO; self.alpha],
            vec![RingElem::ZERO; self.beta],
        )
    }

    pub fn check_vec(&self, v: &MixedVec) -> Result<()> {
        if v.x.len() != self.alpha || v.y.len() != self.beta {
            return Err(Error::DimensionMismatch(format!(
                "vector of block-length ({}, {}) in a ({}, {}) space",
                v.x.len(),
                v.y.len(),
                self.alpha,
                self.beta
            )));
        }
        if v.x.iter().any(|e| e.index() >= self.bar.size())
            || v.y.iter().any(|e| e.index() >= self.ring.size())
        {
            return Err(Error::OutOfRange("vector entry outside its ring".into()));
        }
        Ok(())
    }

    pub fn check_mat(&self, g: &MixedMat) -> Result<()> {
        if g.alpha() != self.alpha || g.beta() != self.beta {
            return Err(Error::DimensionMismatch(format!(
                "matrix of block-length ({}, {}) in a ({}, {}) space",
                g.alpha(),
                g.beta(),
                self.alpha,
                self.beta
            )));
        }
        (0..g.rows()).try_for_each(|i| self.check_vec(&g.row(i)))
    }

    /// Vector from integer entries, reduced into `S̄` and `S`.
    pub fn vec_from_ints(&self, x: &[i64], y: &[i64]) -> Result<MixedVec> {
        let v = MixedVec::new(
            x.iter().map(|&a| self.bar.from_int(a)).collect(),
            y.iter().map(|&a| self.ring.from_int(a)).collect(),
        );
        self.check_vec(&v)?;
        Ok(v)
    }

    pub fn mat_from_ints(&self, rows: &[(&[i64], &[i64])]) -> Result<MixedMat> {
        let vecs = rows
            .iter()
            .map(|(x, y)| self.vec_from_ints(x, y))
            .collect::<Result<Vec<_>>>()?;
        MixedMat::from_vecs(self.alpha, self.beta, &vecs)
    }

    pub fn add(&self, u: &MixedVec, v: &MixedVec) -> MixedVec {
        MixedVec::new(
            u.x.iter()
                .zip(&v.x)
                .map(|(&a, &b)| self.bar.add(a, b))
                .collect(),
            u.y.iter()
                .zip(&v.y)
                .map(|(&a, &b)| self.ring.add(a, b))
                .collect(),
        )
    }

    pub fn neg(&self, u: &MixedVec) -> MixedVec {
        MixedVec::new(
            u.x.iter().map(|&a| self.bar.neg(a)).collect(),
            u.y.iter().map(|&a| self.ring.neg(a)).collect(),
        )
    }

    pub fn sub(&self, u: &MixedVec, v: &MixedVec) -> MixedVec {
        self.add(u, &self.neg(v))
    }

    /// `a ∗ (x ‖ y) = (ā x ‖ a y)`.
    pub fn scalar_mul(&self, a: RingElem, v: &MixedVec) -> MixedVec {
        let abar = self.ring.reduce_to(&self.bar, a);
        MixedVec::new(
            v.x.iter().map(|&e| self.bar.mul(abar, e)).collect(),
            v.y.iter().map(|&e| self.ring.mul(a, e)).collect(),
        )
    }

    /// `P ∗ (X ‖ Y) = (P̄ X ‖ P Y)`.
    pub fn scalar_act(&self, p: &RingMat, g: &MixedMat) -> Result<MixedMat> {
        if p.cols() != g.rows() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns acting on {} rows",
                p.cols(),
                g.rows()
            )));
        }
        let rows: Vec<MixedVec> = (0..p.rows())
            .map(|i| {
                (0..p.cols()).fold(self.zero(), |acc, k| {
                    self.add(&acc, &self.scalar_mul(p.get(i, k), &g.row(k)))
                })
            })
            .collect();
        MixedMat::from_vecs(self.alpha, self.beta, &rows)
    }

    pub fn sigma(&self, v: &MixedVec, h: u32) -> MixedVec {
        MixedVec::new(
            v.x.iter().map(|&e| self.bar.sigma(e, h)).collect(),
            v.y.iter().map(|&e| self.ring.sigma(e, h)).collect(),
        )
    }

    pub fn sigma_mat(&self, g: &MixedMat, h: u32) -> MixedMat {
        MixedMat {
            x: g.x.map(|e| self.bar.sigma(e, h)),
            y: g.y.map(|e| self.ring.sigma(e, h)),
        }
    }

    /// `χ` on the `X` block: the `S`-module embedding into `S^{α+β}`.
    pub fn embed(&self, v: &MixedVec) -> Vec<RingElem> {
        v.x.iter()
            .map(|&e| self.ring.chi_unchecked(&self.bar, e))
            .chain(v.y.iter().copied())
            .collect()
    }

    /// Inverse of [`Ambient::embed`] on its image.
    pub fn unembed(&self, e: &[RingElem]) -> MixedVec {
        let shift = self.shift();
        let x = e[..self.alpha]
            .iter()
            .map(|&a| {
                let lifted = self
                    .ring
                    .div_theta_pow(a, shift)
                    .expect("entry lies in the image of chi");
                self.ring.reduce_to(&self.bar, lifted)
            })
            .collect();
        MixedVec::new(x, e[self.alpha..].to_vec())
    }

    /// Reduces the first `α` entries of an `S`-vector into `S̄`.
    pub fn project(&self, e: &[RingElem]) -> MixedVec {
        MixedVec::new(
            e[..self.alpha]
                .iter()
                .map(|&a| self.ring.reduce_to(&self.bar, a))
                .collect(),
            e[self.alpha..].to_vec(),
        )
    }

    /// `⟨u, v⟩_h = θ^{s-r} Σ ι(x_j σ̄^h(x'_j)) + Σ y_j σ^h(y'_j)`.
    pub fn inner_product(&self, u: &MixedVec, v: &MixedVec, h: u32) -> RingElem {
        let xs = self.bar.sum(
            u.x.iter()
                .zip(&v.x)
                .map(|(&a, &b)| self.bar.mul(a, self.bar.sigma(b, h))),
        );
        let ys = self.ring.sum(
            u.y.iter()
                .zip(&v.y)
                .map(|(&a, &b)| self.ring.mul(a, self.ring.sigma(b, h))),
        );
        self.ring.add(self.ring.chi_unchecked(&self.bar, xs), ys)
    }

    /// `⟨G1, G2⟩_h`, the matrix of pairwise row inner products.
    pub fn gram(&self, g1: &MixedMat, g2: &MixedMat, h: u32) -> Result<RingMat> {
        self.check_mat(g1)?;
        self.check_mat(g2)?;
        let (r1, r2) = (g1.row_vecs(), g2.row_vecs());
        Ok(RingMat::from_fn(r1.len(), r2.len(), |i, j| {
            self.inner_product(&r1[i], &r2[j], h)
        }))
    }

    /// Every vector of the space, `x` varying fastest.
    pub fn vectors(&self, cap: u64) -> Result<Vec<MixedVec>> {
        let size = (self.ring.residue_order() as u64).checked_pow(self.log_size());
        if size.is_none_or(|n| n > cap) {
            return Err(Error::CapExceeded {
                what: "ambient enumeration",
                needed: (self.ring.residue_order() as u128).saturating_pow(self.log_size()),
                cap: cap as u128,
            });
        }
        let radices: Vec<u32> = std::iter::repeat_n(self.bar.size(), self.alpha)
            .chain(std::iter::repeat_n(self.ring.size(), self.beta))
            .collect();
        let total: u64 = radices.iter().map(|&r| r as u64).product();
        Ok((0..total)
            .map(|mut idx| {
                let mut digits = Vec::with_capacity(radices.len());
                for &r in &radices {
                    digits.push(RingElem((idx % r as u64) as u32));
                    idx /= r as u64;
                }
                let y = digits.split_off(self.alpha);
                MixedVec::new(digits, y)
            })
            .collect())
    }

    pub fn format_vec(&self, v: &MixedVec) -> String {
        let xs: Vec<String> = v.x.iter().map(|&e| self.bar.format(e)).collect();
        let ys: Vec<String> = v.y.iter().map(|&e| self.ring.format(e)).collect();
        format!("({} ‖ {})", xs.join(","), ys.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2z4(alpha: usize, beta: usize) -> Ambient {
        Ambient::new(RingSpec::integers(2, 2), 1, alpha, beta).unwrap()
    }

    #[test]
    fn scalar_mul_examples() {
        let a = z2z4(1, 1);
        let v = a.vec_from_ints(&[1], &[1]).unwrap();
        assert_eq!(
            a.scalar_mul(a.ring().from_int(2), &v),
            a.vec_from_ints(&[0], &[2]).unwrap()
        );
        assert_eq!(a.scalar_mul(a.ring().one(), &v), v);

        let b = Ambient::new(RingSpec::integers(2, 3), 2, 2, 1).unwrap();
        let v = b.vec_from_ints(&[2, 1], &[5]).unwrap();
        assert_eq!(
            b.scalar_mul(b.ring().from_int(3), &v),
            b.vec_from_ints(&[2, 3], &[7]).unwrap()
        );
    }

    #[test]
    fn scalar_act_example() {
        let a = z2z4(1, 1);
        let g = a.mat_from_ints(&[(&[1], &[2])]).unwrap();
        let p = RingMat::from_rows(vec![vec![a.ring().from_int(3)]], 1).unwrap();
        let out = a.scalar_act(&p, &g).unwrap();
        assert_eq!(out.row(0), a.vec_from_ints(&[1], &[2]).unwrap());
    }

    #[test]
    fn inner_product_examples() {
        let a = z2z4(1, 1);
        let u = a.vec_from_ints(&[1], &[1]).unwrap();
        assert_eq!(a.inner_product(&u, &u, 0), a.ring().from_int(3));
        assert_eq!(a.inner_product(&u, &a.zero(), 0), a.ring().zero());
        let v = a.vec_from_ints(&[1], &[2]).unwrap();
        let w = a.vec_from_ints(&[1], &[3]).unwrap();
        assert_eq!(a.inner_product(&v, &w, 0), a.ring().zero());
    }

    #[test]
    fn gram_is_symmetric_for_h0() {
        let a = z2z4(3, 2);
        let g = a
            .mat_from_ints(&[(&[1, 1, 1], &[0, 2]), (&[0, 0, 0], &[1, 2])])
            .unwrap();
        let m = a.gram(&g, &g, 0).unwrap();
        assert_eq!(m, m.transpose());
        assert_eq!(m.get(0, 0), a.ring().from_int(2));
        assert_eq!(m.get(1, 1), a.ring().from_int(1));
        assert!(a.gram(&g, &MixedMat::empty(3, 2), 0).unwrap().is_zero());
    }

    #[test]
    fn embed_round_trip() {
        let a = Ambient::new(RingSpec::integers(2, 3), 2, 2, 1).unwrap();
        for v in a.vectors(1 << 16).unwrap() {
            assert_eq!(a.unembed(&a.embed(&v)), v);
        }
    }
}
