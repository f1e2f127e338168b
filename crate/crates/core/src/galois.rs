//! The Galois group `G = ⟨(σ̄ ‖ σ)⟩` acting on mixed codes, and the passage
//! between codes over `S̄S` and over the fixed pair `R̄R`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{kernel, RingMat};
use crate::mixed::{Ambient, LcdMethod, MixedCode, MixedMat, MixedVec};
use crate::ring::RingElem;

#[derive(Clone, Debug)]
pub struct GaloisContext {
    amb: Ambient,
    sub: Ambient,
}

/// `C^{⊥_h}` compared with `C^{⊥_0}` for each `h`.
#[derive(Clone, Debug, Serialize)]
pub struct DualReport {
    pub invariant: bool,
    pub equal_to_euclidean: Vec<bool>,
}

impl GaloisContext {
    pub fn new(amb: &Ambient) -> Result<Self> {
        let sub = Ambient::new(
            amb.ring().spec().subring(),
            amb.r(),
            amb.alpha(),
            amb.beta(),
        )?;
        Ok(GaloisContext {
            amb: amb.clone(),
            sub,
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.amb
    }

    /// The space `R̄^α × R^β`.
    pub fn subring_ambient(&self) -> &Ambient {
        &self.sub
    }

    /// `m = |G|`.
    pub fn order(&self) -> u32 {
        self.amb.ring().degree()
    }

    /// Scans `S` and checks that the fixed points of `σ` are exactly `R`.
    pub fn check_fixed_ring(&self) -> Result<bool> {
        let ring = self.amb.ring();
        let sub = self.sub.ring();
        for x in ring.elements()? {
            if ring.in_subring(x) != ring.to_subring(sub, x).is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn lift_vec(&self, v: &MixedVec) -> MixedVec {
        let (bar, ring) = (self.amb.bar_ring(), self.amb.ring());
        MixedVec::new(
            v.x.iter()
                .map(|&e| bar.from_subring_unchecked(self.sub.bar_ring(), e))
                .collect(),
            v.y.iter()
                .map(|&e| ring.from_subring_unchecked(self.sub.ring(), e))
                .collect(),
        )
    }

    /// `v` as a vector over `R̄R`, if all its entries are fixed by `σ`.
    pub fn restrict_vec(&self, v: &MixedVec) -> Option<MixedVec> {
        let (bar, ring) = (self.amb.bar_ring(), self.amb.ring());
        let x =
            v.x.iter()
                .map(|&e| bar.to_subring(self.sub.bar_ring(), e))
                .collect::<Option<Vec<_>>>()?;
        let y =
            v.y.iter()
                .map(|&e| ring.to_subring(self.sub.ring(), e))
                .collect::<Option<Vec<_>>>()?;
        Some(MixedVec::new(x, y))
    }

    fn check_code(&self, c: &MixedCode) -> Result<()> {
        if c.ambient() != &self.amb {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    fn check_sub_code(&self, d: &MixedCode) -> Result<()> {
        if d.ambient() != &self.sub {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn sigma_code(&self, c: &MixedCode, h: u32) -> Result<MixedCode> {
        self.check_code(c)?;
        Ok(c.sigma(h))
    }

    pub fn is_invariant(&self, c: &MixedCode) -> Result<bool> {
        self.check_code(c)?;
        c.sigma(1).equals(c)
    }

    /// `C_G = ∩_{i<m} σ^i(C)`.
    pub fn g_core(&self, c: &MixedCode) -> Result<MixedCode> {
        self.check_code(c)?;
        let mut core = c.clone();
        for i in 1..self.order() {
            core = core.intersect(&c.sigma(i))?;
        }
        Ok(core)
    }

    /// The words `b_j ∗ g_i`, spanning `C` as an `R`-module.
    fn r_spanning_words(&self, c: &MixedCode) -> Vec<MixedVec> {
        let basis = self.amb.ring().subring_basis();
        c.basis()
            .iter()
            .flat_map(|g| basis.iter().map(move |&b| (b, g)))
            .map(|(b, g)| self.amb.scalar_mul(b, g))
            .collect()
    }

    /// `Res_R(C) = C ∩ (R̄^α × R^β)`, solving for `R`-combinations of
    /// `b_j ∗ g_i` whose non-constant basis coordinates vanish.
    pub fn res_subcode(&self, c: &MixedCode) -> Result<MixedCode> {
        self.check_code(c)?;
        let (ring, bar) = (self.amb.ring(), self.amb.bar_ring());
        let (sub, sub_bar) = (self.sub.ring(), self.sub.bar_ring());
        let m = ring.degree() as usize;
        let words = self.r_spanning_words(c);
        let mut constraints: Vec<Vec<RingElem>> = Vec::with_capacity(words.len());
        for w in &words {
            let mut row = Vec::with_capacity((m - 1) * self.amb.len());
            for &e in &w.x {
                for coord in bar.subring_coords(sub_bar, e).into_iter().skip(1) {
                    row.push(sub.chi_unchecked(sub_bar, coord));
                }
            }
            for &e in &w.y {
                row.extend(ring.subring_coords(sub, e).into_iter().skip(1));
            }
            constraints.push(row);
        }
        let ncols = (m - 1) * self.amb.len();
        let k = kernel(sub, &RingMat::from_rows(constraints, ncols)?);
        let mut gens = Vec::with_capacity(k.rows());
        for i in 0..k.rows() {
            let v = k
                .row(i)
                .iter()
                .zip(&words)
                .fold(self.amb.zero(), |acc, (&lambda, w)| {
                    let lam = ring.from_subring_unchecked(sub, lambda);
                    self.amb.add(&acc, &self.amb.scalar_mul(lam, w))
                });
            let restricted = self.restrict_vec(&v).ok_or_else(|| {
                Error::Invariant("subring-subcode solution left the subring".into())
            })?;
            gens.push(restricted);
        }
        MixedCode::from_vecs(&self.sub, &gens)
    }

    /// `Tr(C)`, the `R`-span of `Tr(b_j ∗ g_i)`.
    pub fn trace_code(&self, c: &MixedCode) -> Result<MixedCode> {
        self.check_code(c)?;
        let (ring, bar) = (self.amb.ring(), self.amb.bar_ring());
        let gens = self
            .r_spanning_words(c)
            .iter()
            .map(|w| {
                let t = MixedVec::new(
                    w.x.iter().map(|&e| bar.trace(e)).collect(),
                    w.y.iter().map(|&e| ring.trace(e)).collect(),
                );
                self.restrict_vec(&t)
                    .ok_or_else(|| Error::Invariant("trace left the subring".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        MixedCode::from_vecs(&self.sub, &gens)
    }

    /// `Ext(D)`, the `S`-span of a code over `R̄R`.
    pub fn ext_code(&self, d: &MixedCode) -> Result<MixedCode> {
        self.check_sub_code(d)?;
        let gens: Vec<MixedVec> = d.basis().iter().map(|v| self.lift_vec(v)).collect();
        MixedCode::from_vecs(&self.amb, &gens)
    }

    /// `Tr(C^{⊥_h}) = Res_R(C)^{⊥_0}`, both sides computed independently.
    pub fn delsarte_check(&self, c: &MixedCode, h: u32) -> Result<bool> {
        let left = self.trace_code(&c.dual(h))?;
        let right = self.res_subcode(c)?.dual(0);
        left.equals(&right)
    }

    /// A generator matrix over `R̄R` when `C` is invariant.
    pub fn subring_generator_matrix(&self, c: &MixedCode) -> Result<Option<MixedMat>> {
        if !self.is_invariant(c)? {
            return Ok(None);
        }
        let res = self.res_subcode(c)?;
        if !self.ext_code(&res)?.equals(c)? {
            return Err(Error::Invariant(
                "invariant code differs from Ext(Res(C))".into(),
            ));
        }
        Ok(Some(res.basis_mat()))
    }

    /// `χ(C) ⊆ S^{α+β}`.
    pub fn chi_code(&self, c: &MixedCode) -> Result<MixedCode> {
        self.check_code(c)?;
        let s = self.amb.s();
        let target = Ambient::from_ring(self.amb.ring_arc().clone(), s, 0, self.amb.len())?;
        let gens: Vec<MixedVec> = c
            .basis()
            .iter()
            .map(|v| MixedVec::new(vec![], self.amb.embed(v)))
            .collect();
        MixedCode::from_vecs(&target, &gens)
    }

    pub fn dual_report(&self, c: &MixedCode) -> Result<DualReport> {
        let invariant = self.is_invariant(c)?;
        let d0 = c.dual(0);
        let equal_to_euclidean = (0..self.order())
            .map(|h| c.dual(h).equals(&d0))
            .collect::<Result<Vec<_>>>()?;
        Ok(DualReport {
            invariant,
            equal_to_euclidean,
        })
    }

    /// For invariant `C`: `(is_lcd(C, h), is_lcd(Res_R(C), 0))`.
    pub fn invariant_lcd(&self, c: &MixedCode, h: u32, cap: u64) -> Result<(bool, bool)> {
        let lcd = c.is_lcd(h, LcdMethod::Oracle, cap)?.lcd;
        let res = self.res_subcode(c)?;
        let res_lcd = res.is_lcd(0, LcdMethod::Oracle, cap)?.lcd;
        Ok((lcd, res_lcd))
    }
}
