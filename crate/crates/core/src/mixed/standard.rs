//! Standard generator matrices and types of mixed codes.

use std::fmt;

use serde::Serialize;

use super::{Ambient, MixedMat, MixedVec};
use crate::error::Result;
use crate::linalg::RingMat;
use crate::ring::RingElem;

/// `(α, β; k_0..k_{r-1}; ℓ_0..ℓ_{s-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CodeType {
    pub alpha: usize,
    pub beta: usize,
    pub k: Vec<usize>,
    pub l: Vec<usize>,
}

impl CodeType {
    pub fn rank(&self) -> usize {
        self.k.iter().sum::<usize>() + self.l.iter().sum::<usize>()
    }

    /// `Σ (r-t) k_t + Σ (s-t) ℓ_t`, so that `|C| = (q^m)^{log_size}`.
    pub fn log_size(&self) -> u32 {
        let r = self.k.len();
        let s = self.l.len();
        let kx: usize = self.k.iter().enumerate().map(|(t, &k)| (r - t) * k).sum();
        let ly: usize = self.l.iter().enumerate().map(|(t, &l)| (s - t) * l).sum();
        (kx + ly) as u32
    }

    pub fn is_weakly_free(&self) -> bool {
        self.k.iter().skip(1).all(|&k| k == 0) && self.l.iter().skip(1).all(|&l| l == 0)
    }

    /// The type of any `h`-Galois dual when `r < s`. For `r = s` only the
    /// sums `k_t + ℓ_t` are determined.
    pub fn dual(&self) -> CodeType {
        let mirror = |v: &[usize], n: usize| {
            let mut out = vec![n - v.iter().sum::<usize>()];
            out.extend(v[1..].iter().rev());
            out
        };
        CodeType {
            alpha: self.alpha,
            beta: self.beta,
            k: mirror(&self.k, self.alpha),
            l: mirror(&self.l, self.beta),
        }
    }
}

impl fmt::Display for CodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "({},{};{};{})",
            self.alpha,
            self.beta,
            join(&self.k),
            join(&self.l)
        )
    }
}

#[derive(Clone, Debug)]
pub struct StandardFormResult {
    /// Nonzero rows: pivots on the `X` block first, then on the `Y` block,
    /// each group sorted by pivot valuation.
    pub standard: MixedMat,
    /// `P ∗ G'` equals `standard` followed by zero rows, where `G'` is the
    /// input with its columns permuted.
    pub p: RingMat,
    /// Column `j` of the output block is column `perm[j]` of the input block.
    pub perm_x: Vec<usize>,
    pub perm_y: Vec<usize>,
    pub code_type: CodeType,
}

/// Reduced rows in the `χ`-embedding, in input column order.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    /// Rows in pivot order.
    pub rows: Vec<Vec<RingElem>>,
    /// Pivot column (embedded index) and its valuation for each row.
    pub pivots: Vec<(usize, u32)>,
}

pub fn mixed_standard_form(amb: &Ambient, g: &MixedMat) -> Result<StandardFormResult> {
    Ok(reduce(amb, g)?.0)
}

pub(crate) fn reduce(amb: &Ambient, g: &MixedMat) -> Result<(StandardFormResult, Echelon)> {
    amb.check_mat(g)?;
    let ring = amb.ring();
    let s = amb.s();
    let (alpha, n, mu) = (amb.alpha(), amb.len(), g.rows());
    let mut rows: Vec<Vec<RingElem>> = (0..mu).map(|i| amb.embed(&g.row(i))).collect();
    let mut p: Vec<Vec<RingElem>> = RingMat::identity(ring, mu).row_vecs();
    let mut row_used = vec![false; mu];
    let mut col_used = vec![false; n];
    let mut pivots: Vec<(usize, usize, u32)> = Vec::new();

    let axpy = |dst: &mut Vec<RingElem>, src: &[RingElem], f: RingElem| {
        if !f.is_zero() {
            for (d, &a) in dst.iter_mut().zip(src) {
                *d = ring.sub(*d, ring.mul(f, a));
            }
        }
    };

    loop {
        let mut best: Option<(u32, bool, usize, usize)> = None;
        for i in (0..mu).filter(|&i| !row_used[i]) {
            for j in (0..n).filter(|&j| !col_used[j]) {
                let v = ring.valuation(rows[i][j]);
                let key = (v, j >= alpha, i, j);
                if v < s && best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let Some((v, _, i, j)) = best else { break };
        let (_, unit) = ring.split_unit(rows[i][j]).expect("pivot is nonzero");
        let inv = ring.inv_unit(unit).expect("unit part");
        for e in rows[i].iter_mut().chain(p[i].iter_mut()) {
            *e = ring.mul(inv, *e);
        }
        let (prow, pp) = (rows[i].clone(), p[i].clone());
        for k in (0..mu).filter(|&k| !row_used[k] && k != i) {
            let f = ring
                .div_theta_pow(rows[k][j], v)
                .expect("pivot valuation is minimal");
            axpy(&mut rows[k], &prow, f);
            axpy(&mut p[k], &pp, f);
        }
        row_used[i] = true;
        col_used[j] = true;
        pivots.push((i, j, v));
    }

    for idx in 0..pivots.len() {
        let (i, j, v) = pivots[idx];
        let (prow, pp) = (rows[i].clone(), p[i].clone());
        for &(i0, _, _) in &pivots[..idx] {
            if let Some(f) = ring.div_theta_pow(rows[i0][j], v) {
                axpy(&mut rows[i0], &prow, f);
                axpy(&mut p[i0], &pp, f);
            }
        }
    }

    let shift = amb.shift();
    let mut k = vec![0usize; amb.r() as usize];
    let mut l = vec![0usize; s as usize];
    let (mut x_order, mut y_order) = (Vec::new(), Vec::new());
    let (mut perm_x, mut perm_y) = (Vec::new(), Vec::new());
    for &(i, j, v) in &pivots {
        if j < alpha {
            k[(v - shift) as usize] += 1;
            x_order.push(i);
            perm_x.push(j);
        } else {
            l[v as usize] += 1;
            y_order.push(i);
            perm_y.push(j - alpha);
        }
    }
    let rest_x: Vec<usize> = (0..alpha).filter(|j| !perm_x.contains(j)).collect();
    let rest_y: Vec<usize> = (0..amb.beta()).filter(|j| !perm_y.contains(j)).collect();
    perm_x.extend(rest_x);
    perm_y.extend(rest_y);

    let order: Vec<usize> = x_order
        .iter()
        .chain(&y_order)
        .copied()
        .chain((0..mu).filter(|i| !row_used[*i]))
        .collect();
    let rank = pivots.len();
    let standard_rows: Vec<MixedVec> = order[..rank]
        .iter()
        .map(|&i| {
            let v = amb.unembed(&rows[i]);
            MixedVec::new(
                perm_x.iter().map(|&j| v.x[j]).collect(),
                perm_y.iter().map(|&j| v.y[j]).collect(),
            )
        })
        .collect();
    let standard = MixedMat::from_vecs(alpha, amb.beta(), &standard_rows)?;
    let p = RingMat::from_rows(order.iter().map(|&i| p[i].clone()).collect(), mu)?;

    let echelon = Echelon {
        rows: pivots.iter().map(|&(i, _, _)| rows[i].clone()).collect(),
        pivots: pivots.iter().map(|&(_, j, v)| (j, v)).collect(),
    };
    let code_type = CodeType {
        alpha,
        beta: amb.beta(),
        k,
        l,
    };
    Ok((
        StandardFormResult {
            standard,
            p,
            perm_x,
            perm_y,
            code_type,
        },
        echelon,
    ))
}

impl Echelon {
    /// Reduces an embedded vector against the pivots; `Some(coefficients)`
    /// when it lies in the span.
    pub(crate) fn decompose(&self, amb: &Ambient, target: &[RingElem]) -> Option<Vec<RingElem>> {
        let ring = amb.ring();
        let mut rest = target.to_vec();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, &(j, v)) in self.rows.iter().zip(&self.pivots) {
            let f = ring.div_theta_pow(rest[j], v)?;
            if !f.is_zero() {
                for (d, &a) in rest.iter_mut().zip(row) {
                    *d = ring.sub(*d, ring.mul(f, a));
                }
            }
            coeffs.push(f);
        }
        rest.iter().all(|e| e.is_zero()).then_some(coeffs)
    }
}
