//! Homogeneous weights and Jitman's Gray map `Φ` from `S̄^α × S^β` into
//! `F_{q^m}^{α q^{m(r-1)} + β q^{m(s-1)}}`.

mod field_code;
mod upsilon;

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::mixed::{Ambient, MixedCode, MixedVec};
use crate::ring::{Family, Ring, RingElem};

pub use field_code::{hamming_distance, hamming_weight, FieldCode, FIELD_SWEEP_CAP};
pub use upsilon::{
    d_set, lcd_transfer, InnerProductIdentities, TransferReport, Upsilon, UpsilonIdentities,
};

/// Homogeneous weight of `x` in a chain ring of nilpotency index `n`:
/// Hamming weight when `n = 1`, else `(Q-1) Q^{n-2}` below the socle and
/// `Q^{n-1}` on it, with `Q = q^m`.
pub fn hom_weight(ring: &Ring, x: RingElem) -> u64 {
    if x.is_zero() {
        return 0;
    }
    let n = ring.nilpotency();
    let q = ring.residue_order() as u64;
    if n == 1 {
        1
    } else if ring.valuation(x) + 1 < n {
        (q - 1) * q.pow(n - 2)
    } else {
        q.pow(n - 1)
    }
}

pub fn hom_weight_mixed(amb: &Ambient, v: &MixedVec) -> u64 {
    let xs: u64 = v.x.iter().map(|&a| hom_weight(amb.bar_ring(), a)).sum();
    let ys: u64 = v.y.iter().map(|&b| hom_weight(amb.ring(), b)).sum();
    xs + ys
}

pub fn hom_distance(amb: &Ambient, u: &MixedVec, v: &MixedVec) -> u64 {
    hom_weight_mixed(amb, &amb.sub(u, v))
}

/// `ε̲ = (0, 1, ε, ..., ε^{Q-2})` for the pinned primitive element `ε`.
pub fn epsilon_row(field: &Field) -> Vec<FieldElem> {
    let eps = field.primitive();
    let mut row = vec![FieldElem::ZERO];
    let mut x = FieldElem::ONE;
    for _ in 1..field.order() {
        row.push(x);
        x = field.mul(x, eps);
    }
    row
}

/// `G_{(Q,t)}`: `t` rows and `Q^{t-1}` columns. Row `t' < t-1` is
/// `ϖ^{⊗(t-t'-2)} ⊗ ε̲ ⊗ ϖ^{⊗t'}`, the last row is all ones; `t = 1` gives `(1)`.
pub fn rm_generator(field: &Field, t: u32) -> Result<Vec<Vec<FieldElem>>> {
    if t == 0 {
        return Err(Error::OutOfRange(
            "Reed-Muller generator needs t >= 1".into(),
        ));
    }
    let q = field.order() as u64;
    let width = q
        .checked_pow(t - 1)
        .filter(|&w| w <= 1 << 24)
        .ok_or(Error::SizeExceeded {
            what: "Reed-Muller generator",
            size: (q as u128).saturating_pow(t - 1),
            limit: 1 << 24,
        })?;
    let eps = epsilon_row(field);
    let mut rows = Vec::with_capacity(t as usize);
    for tp in 0..t - 1 {
        // the ε̲ factor sits at tensor position t', counted from the fastest index
        let stride = q.pow(tp);
        rows.push(
            (0..width)
                .map(|c| eps[((c / stride) % q) as usize])
                .collect(),
        );
    }
    rows.push(vec![FieldElem::ONE; width as usize]);
    Ok(rows)
}

fn combine(field: &Field, digits: &[FieldElem], g: &[Vec<FieldElem>], out: &mut Vec<FieldElem>) {
    let width = g[0].len();
    let start = out.len();
    out.resize(start + width, FieldElem::ZERO);
    for (&d, row) in digits.iter().zip(g) {
        if !d.is_zero() {
            for (o, &e) in out[start..].iter_mut().zip(row) {
                *o = field.add(*o, field.mul(d, e));
            }
        }
    }
}

/// The coordinatewise Gray map of a fixed ambient space.
#[derive(Clone, Debug)]
pub struct GrayMap {
    amb: Ambient,
    field: Arc<Field>,
    gx: Vec<Vec<FieldElem>>,
    gy: Vec<Vec<FieldElem>>,
}

impl GrayMap {
    pub fn new(amb: &Ambient) -> Result<Self> {
        let field = Arc::new(amb.ring().residue_field().clone());
        let gx = rm_generator(&field, amb.r())?;
        let gy = rm_generator(&field, amb.s())?;
        Ok(GrayMap {
            amb: amb.clone(),
            field,
            gx,
            gy,
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.amb
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn image_len(&self) -> usize {
        self.amb.alpha() * self.gx[0].len() + self.amb.beta() * self.gy[0].len()
    }

    /// `(γ̄(a_j) G_{(Q,r)})_j ‖ (γ(b_j) G_{(Q,s)})_j`.
    pub fn map(&self, v: &MixedVec) -> Vec<FieldElem> {
        let mut out = Vec::with_capacity(self.image_len());
        for &a in &v.x {
            combine(
                &self.field,
                &self.amb.bar_ring().theta_adic(a),
                &self.gx,
                &mut out,
            );
        }
        for &b in &v.y {
            combine(
                &self.field,
                &self.amb.ring().theta_adic(b),
                &self.gy,
                &mut out,
            );
        }
        out
    }

    /// Inverse on the image; `None` off it.
    pub fn unmap(&self, w: &[FieldElem]) -> Option<MixedVec> {
        if w.len() != self.image_len() {
            return None;
        }
        let decode = |chunk: &[FieldElem], g: &[Vec<FieldElem>], ring: &Ring| {
            // column 0 is γ_{t-1} alone; column Q^{t'} adds γ_{t'}
            let t = g.len();
            let last = chunk[0];
            let mut digits = Vec::with_capacity(t);
            for tp in 0..t - 1 {
                let c = (self.field.order() as usize).pow(tp as u32);
                digits.push(self.field.sub(chunk[c], last));
            }
            digits.push(last);
            let x = ring.from_theta_adic(&digits);
            let mut check = Vec::new();
            combine(&self.field, &digits, g, &mut check);
            (check == chunk).then_some(x)
        };
        let (wx, wy) = (self.gx[0].len(), self.gy[0].len());
        let ax = self.amb.alpha() * wx;
        let x = w[..ax]
            .chunks(wx)
            .map(|c| decode(c, &self.gx, self.amb.bar_ring()))
            .collect::<Option<Vec<_>>>()?;
        let y = w[ax..]
            .chunks(wy)
            .map(|c| decode(c, &self.gy, self.amb.ring()))
            .collect::<Option<Vec<_>>>()?;
        Some(MixedVec::new(x, y))
    }

    pub fn image(&self, c: &MixedCode, cap: u64) -> Result<GrayImage> {
        let words: BTreeSet<Vec<FieldElem>> =
            c.enumerate(cap)?.iter().map(|v| self.map(v)).collect();
        let words: Vec<Vec<FieldElem>> = words.into_iter().collect();
        if words.len() as u128 != c.cardinality() {
            return Err(Error::Invariant(
                "Gray map is not injective on the code".into(),
            ));
        }
        let span = FieldCode::new(self.field.clone(), self.image_len(), words.clone())?;
        let linear = (self.field.order() as u128).checked_pow(span.dimension() as u32)
            == Some(words.len() as u128);
        if !linear && self.amb.ring().family() == Family::QuasiGaloisRing {
            return Err(Error::Invariant(
                "Gray image of a code over F[θ] is not linear".into(),
            ));
        }
        Ok(GrayImage {
            len: self.image_len(),
            words,
            linear,
            span,
        })
    }

    /// Self-orthogonality of `Φ(C)` under `⟨ , ⟩_h`, checked on a basis of
    /// its span when `(r-1)(Q-1) >= 3`.
    pub fn self_orthogonality_check(
        &self,
        c: &MixedCode,
        h: u32,
        cap: u64,
    ) -> Result<SelfOrthogonality> {
        let q = self.field.order() as u64;
        let bound = (self.amb.r() as u64 - 1) * (q - 1);
        if bound < 3 {
            return Ok(SelfOrthogonality {
                bound,
                applicable: false,
                holds: None,
            });
        }
        let img = self.image(c, cap)?;
        let b = img.span.basis();
        let holds = b
            .iter()
            .all(|u| b.iter().all(|v| img.span.inner_product(u, v, h).is_zero()));
        Ok(SelfOrthogonality {
            bound,
            applicable: true,
            holds: Some(holds),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SelfOrthogonality {
    /// `(r-1)(q^m-1)`.
    pub bound: u64,
    pub applicable: bool,
    pub holds: Option<bool>,
}

/// `Φ(C)` as a sorted word list.
#[derive(Clone, Debug)]
pub struct GrayImage {
    len: usize,
    words: Vec<Vec<FieldElem>>,
    linear: bool,
    span: FieldCode,
}

impl GrayImage {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[Vec<FieldElem>] {
        &self.words
    }

    pub fn is_linear(&self) -> bool {
        self.linear
    }

    /// The image as a field code, when it is one.
    pub fn as_field_code(&self) -> Option<&FieldCode> {
        self.linear.then_some(&self.span)
    }

    /// The `F_{q^m}`-span of the image.
    pub fn span(&self) -> &FieldCode {
        &self.span
    }

    /// Minimum pairwise Hamming distance; `None` for a single word.
    pub fn min_distance(&self, cap: u64) -> Result<Option<usize>> {
        if let Some(fc) = self.as_field_code() {
            return fc.min_distance(cap.max(FIELD_SWEEP_CAP));
        }
        let n = self.words.len() as u128;
        let pairs = n * n.saturating_sub(1) / 2;
        if pairs > FIELD_SWEEP_CAP as u128 * 64 {
            return Err(Error::CapExceeded {
                what: "pairwise distances",
                needed: pairs,
                cap: FIELD_SWEEP_CAP as u128 * 64,
            });
        }
        let mut best: Option<usize> = None;
        for (i, u) in self.words.iter().enumerate() {
            for v in &self.words[i + 1..] {
                let d = hamming_distance(u, v);
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        Ok(best)
    }

    pub fn weight_distribution(&self) -> Vec<u64> {
        let mut dist = vec![0u64; self.len + 1];
        for w in &self.words {
            dist[hamming_weight(w)] += 1;
        }
        dist
    }
}

/// The `X` block of `C` over a residue field (`r = 1`), as a field code.
pub fn puncture_x(c: &MixedCode) -> Result<FieldCode> {
    let amb = c.ambient();
    if amb.r() != 1 {
        return Err(Error::Unsupported(
            "puncturing to the X block needs r = 1".into(),
        ));
    }
    let bar = amb.bar_ring();
    let field = Arc::new(bar.residue_field().clone());
    let rows = c
        .basis()
        .iter()
        .map(|v| v.x.iter().map(|&a| bar.residue(a)).collect())
        .collect();
    FieldCode::new(field, amb.alpha(), rows)
}
