use std::collections::BTreeSet;

use serde::Serialize;

use super::{hom_distance, puncture_x, FieldCode, GrayMap};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::mixed::{Ambient, LcdMethod, MixedCode, MixedVec};
use crate::ring::{Family, RingElem, RingSpec};

/// Componentwise product `u ⋆ v`.
pub fn star(amb: &Ambient, u: &MixedVec, v: &MixedVec) -> MixedVec {
    let (bar, ring) = (amb.bar_ring(), amb.ring());
    MixedVec::new(
        u.x.iter().zip(&v.x).map(|(&a, &b)| bar.mul(a, b)).collect(),
        u.y.iter()
            .zip(&v.y)
            .map(|(&a, &b)| ring.mul(a, b))
            .collect(),
    )
}

/// `u^{⋆e}`, `e >= 1`.
pub fn star_pow(amb: &Ambient, u: &MixedVec, e: u32) -> MixedVec {
    let (bar, ring) = (amb.bar_ring(), amb.ring());
    let e = e.max(1) as u64;
    MixedVec::new(
        u.x.iter().map(|&a| bar.pow(a, e)).collect(),
        u.y.iter().map(|&b| ring.pow(b, e)).collect(),
    )
}

/// The maps `φ_q: Z_{q^2} -> F_q[θ]`, `b + qc ↦ π(b) + θπ(c)`, and
/// `Υ_q = (id ‖ φ_q)` on `Z_q^α × Z_{q^2}^β`.
#[derive(Clone, Debug)]
pub struct Upsilon {
    q: u32,
    source: Ambient,
    target: Ambient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UpsilonIdentities {
    pub distance: bool,
    pub scalar: bool,
    pub star: bool,
    pub addition: bool,
}

impl UpsilonIdentities {
    pub fn all(&self) -> bool {
        self.distance && self.scalar && self.star && self.addition
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InnerProductIdentities {
    /// `φ_q(⟨u,v⟩) = ⟨Υu, Υv⟩`.
    pub inner: bool,
    /// `q = 2`: `⟨Υu, Υv⟩ = θ ⟨ΦΥu, ΦΥv⟩_0`.
    pub binary: Option<bool>,
    /// `q = 3`: `⟨ΦΥu, ΦΥv⟩_0 = ⟨u_X, v_X⟩_0`.
    pub ternary: Option<bool>,
}

impl InnerProductIdentities {
    pub fn all(&self) -> bool {
        self.inner && self.binary.unwrap_or(true) && self.ternary.unwrap_or(true)
    }
}

impl Upsilon {
    pub fn new(q: u32, alpha: usize, beta: usize) -> Result<Self> {
        if q != 2 && q != 3 {
            return Err(Error::Unsupported(format!(
                "Υ_q is defined for q in {{2, 3}}, got {q}"
            )));
        }
        let source = Ambient::new(RingSpec::integers(q, 2), 1, alpha, beta)?;
        let target = Ambient::new(RingSpec::quasi(q, 2, 1), 1, alpha, beta)?;
        Ok(Upsilon { q, source, target })
    }

    /// `Υ_q` for a space of the form `Z_q^α × Z_{q^2}^β`.
    pub fn for_ambient(amb: &Ambient) -> Result<Self> {
        let spec = amb.ring().spec();
        if spec.family != Family::GaloisRing || spec.m != 1 || spec.s != 2 || amb.r() != 1 {
            return Err(Error::Unsupported(format!(
                "Υ_q needs a Z_q Z_{{q^2}} space, got {} with r = {}",
                amb.ring(),
                amb.r()
            )));
        }
        Upsilon::new(spec.p, amb.alpha(), amb.beta())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn source(&self) -> &Ambient {
        &self.source
    }

    pub fn target(&self) -> &Ambient {
        &self.target
    }

    pub fn phi(&self, b: RingElem) -> RingElem {
        let v = b.index();
        self.target
            .ring()
            .from_coords(&[v % self.q, v / self.q])
            .expect("digits below q")
    }

    pub fn phi_inv(&self, a: RingElem) -> RingElem {
        let c = self.target.ring().coords(a);
        RingElem(c[0] + self.q * c[1])
    }

    pub fn apply(&self, v: &MixedVec) -> MixedVec {
        MixedVec::new(v.x.clone(), v.y.iter().map(|&b| self.phi(b)).collect())
    }

    pub fn apply_inv(&self, v: &MixedVec) -> MixedVec {
        MixedVec::new(v.x.clone(), v.y.iter().map(|&b| self.phi_inv(b)).collect())
    }

    /// `q ∗ (u^{⋆(q-1)} ⋆ v^{⋆(q-1)})`.
    pub fn defect(&self, u: &MixedVec, v: &MixedVec) -> MixedVec {
        let amb = &self.source;
        let w = star(
            amb,
            &star_pow(amb, u, self.q - 1),
            &star_pow(amb, v, self.q - 1),
        );
        amb.scalar_mul(amb.ring().from_int(self.q as i64), &w)
    }

    /// Distance, scalar twist, `⋆` and additive defect identities of `Υ_q`
    /// for the pair `(u, v)` and scalar digits `x, y` in `0..q`.
    pub fn check_identities(
        &self,
        u: &MixedVec,
        v: &MixedVec,
        x: u32,
        y: u32,
    ) -> UpsilonIdentities {
        let (src, tgt) = (&self.source, &self.target);
        let (uu, vv) = (self.apply(u), self.apply(v));
        let distance = hom_distance(src, u, v) == hom_distance(tgt, &uu, &vv);
        let a = src.ring().from_int((x + self.q * y) as i64);
        let at = tgt
            .ring()
            .from_coords(&[x % self.q, y % self.q])
            .expect("digits below q");
        let scalar = self.apply(&src.scalar_mul(a, u)) == tgt.scalar_mul(at, &uu);
        let star_ok = self.apply(&star(src, u, v)) == star(tgt, &uu, &vv);
        let lhs = self.apply(&src.add(u, v));
        let rhs = tgt.add(&tgt.add(&uu, &vv), &self.apply(&self.defect(u, v)));
        UpsilonIdentities {
            distance,
            scalar,
            star: star_ok,
            addition: lhs == rhs,
        }
    }

    /// Inner-product identities; `None` when the defect of `(u, v)` is nonzero.
    pub fn check_inner_products(
        &self,
        u: &MixedVec,
        v: &MixedVec,
    ) -> Result<Option<InnerProductIdentities>> {
        if !self.defect(u, v).is_zero() {
            return Ok(None);
        }
        let (src, tgt) = (&self.source, &self.target);
        let (uu, vv) = (self.apply(u), self.apply(v));
        let t_inner = tgt.inner_product(&uu, &vv, 0);
        let inner = self.phi(src.inner_product(u, v, 0)) == t_inner;
        let gray = GrayMap::new(tgt)?;
        let (gu, gv) = (gray.map(&uu), gray.map(&vv));
        let f = gray.field();
        let dot = |a: &[FieldElem], b: &[FieldElem]| {
            a.iter()
                .zip(b)
                .fold(FieldElem::ZERO, |s, (&x, &y)| f.add(s, f.mul(x, y)))
        };
        let g_inner = dot(&gu, &gv);
        let ring = tgt.ring();
        let binary = (self.q == 2)
            .then(|| t_inner == ring.mul(ring.theta(), ring.teichmuller_lift(g_inner)));
        let ternary = (self.q == 3).then(|| {
            let bar = src.bar_ring();
            let ux: Vec<FieldElem> = u.x.iter().map(|&a| bar.residue(a)).collect();
            let vx: Vec<FieldElem> = v.x.iter().map(|&a| bar.residue(a)).collect();
            g_inner == dot(&ux, &vx)
        });
        Ok(Some(InnerProductIdentities {
            inner,
            binary,
            ternary,
        }))
    }

    /// `Υ_q(C)` as a word set and its `F_q F_q[θ]`-span.
    pub fn image(&self, c: &MixedCode, cap: u64) -> Result<(BTreeSet<MixedVec>, MixedCode)> {
        self.check_code(c)?;
        let words: BTreeSet<MixedVec> = c.enumerate(cap)?.iter().map(|w| self.apply(w)).collect();
        let rows: Vec<MixedVec> = words.iter().cloned().collect();
        let span = MixedCode::from_vecs(&self.target, &rows)?;
        Ok((words, span))
    }

    fn check_code(&self, c: &MixedCode) -> Result<()> {
        let amb = c.ambient();
        if amb.ring() != self.source.ring()
            || amb.r() != 1
            || amb.alpha() != self.source.alpha()
            || amb.beta() != self.source.beta()
        {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }
}

/// `D_C = { q ∗ (u^{⋆(q-1)} ⋆ v^{⋆(q-1)}) : u ∈ C, v ∈ C^⊥ }`, sorted.
pub fn d_set(c: &MixedCode, cap: u64) -> Result<Vec<MixedVec>> {
    let ups = Upsilon::for_ambient(c.ambient())?;
    let dual = c.dual(0);
    let pairs = c.cardinality() * dual.cardinality();
    if pairs > cap as u128 {
        return Err(Error::CapExceeded {
            what: "pairs in C × C^⊥",
            needed: pairs,
            cap: cap as u128,
        });
    }
    let words = c.enumerate(cap)?;
    let dual = dual.enumerate(cap)?;
    let mut out = BTreeSet::new();
    for u in &words {
        for v in &dual {
            out.insert(ups.defect(u, v));
        }
    }
    Ok(out.into_iter().collect())
}

/// LCD verdicts on both sides of `Υ_q` and `Φ_q`.
#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub q: u32,
    pub d_set: Vec<MixedVec>,
    /// `D_C = {0}`, the hypothesis of the LCD transfer.
    pub applicable: bool,
    pub source_lcd: bool,
    /// `Υ_q(C)` is closed under the `F_q F_q[θ]` operations.
    pub upsilon_linear: bool,
    pub upsilon_lcd: bool,
    pub gray_linear: bool,
    /// `q = 2`: the binary image `Φ_2(Υ_2(C))` is LCD.
    pub binary_lcd: Option<bool>,
    /// `q = 3`: the punctured code `C_X` is LCD.
    pub ternary_lcd: Option<bool>,
    /// `Υ_q(C^⊥) = Υ_q(C)^⊥` as sets.
    pub upsilon_dual_commutes: bool,
    /// `q = 2`: `Φ_2(Υ_2(C^⊥)) = Φ_2(Υ_2(C))^⊥` as sets.
    pub gray_dual_commutes: Option<bool>,
    /// All transfer biconditionals agree; `None` when not applicable.
    pub verdicts_consistent: Option<bool>,
    pub gray_generators: Vec<Vec<FieldElem>>,
}

pub fn lcd_transfer(c: &MixedCode, cap: u64) -> Result<TransferReport> {
    let ups = Upsilon::for_ambient(c.ambient())?;
    let q = ups.q();
    let d = d_set(c, cap)?;
    let applicable = d.iter().all(|w| w.is_zero());
    let source_lcd = c.is_lcd(0, LcdMethod::Both, cap)?.lcd;

    let (words, span) = ups.image(c, cap)?;
    let upsilon_linear = span.cardinality() == words.len() as u128;
    let upsilon_lcd = span.is_lcd(0, LcdMethod::Both, cap)?.lcd;

    let gray = GrayMap::new(ups.target())?;
    let gray_words: Vec<Vec<FieldElem>> = words.iter().map(|w| gray.map(w)).collect();
    let gray_span = FieldCode::new(gray.field().clone(), gray.image_len(), gray_words.clone())?;
    let gray_linear =
        (q as u128).checked_pow(gray_span.dimension() as u32) == Some(gray_words.len() as u128);

    let dual = c.dual(0);
    let dual_image: BTreeSet<MixedVec> =
        dual.enumerate(cap)?.iter().map(|w| ups.apply(w)).collect();
    let span_dual: BTreeSet<MixedVec> = span.dual(0).enumerate(cap)?.into_iter().collect();
    let upsilon_dual_commutes = dual_image == span_dual;

    let (binary_lcd, ternary_lcd, gray_dual_commutes) = if q == 2 {
        let lhs: BTreeSet<Vec<FieldElem>> = dual_image.iter().map(|w| gray.map(w)).collect();
        let rhs: BTreeSet<Vec<FieldElem>> = gray_span.dual(0).codewords(cap)?.into_iter().collect();
        (Some(gray_span.is_lcd(0)), None, Some(lhs == rhs))
    } else {
        (None, Some(puncture_x(c)?.is_lcd(0)), None)
    };
    let image_verdict = binary_lcd.or(ternary_lcd).expect("q is 2 or 3");
    let verdicts_consistent =
        applicable.then_some(source_lcd == upsilon_lcd && source_lcd == image_verdict);

    Ok(TransferReport {
        q,
        d_set: d,
        applicable,
        source_lcd,
        upsilon_linear,
        upsilon_lcd,
        gray_linear,
        binary_lcd,
        ternary_lcd,
        upsilon_dual_commutes,
        gray_dual_commutes,
        verdicts_consistent,
        gray_generators: gray_span.basis().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_values() {
        let u2 = Upsilon::new(2, 0, 1).unwrap();
        let ring = u2.target().ring();
        assert_eq!(u2.phi(RingElem(2)), ring.theta());
        assert_eq!(u2.phi(RingElem(3)), ring.add(ring.one(), ring.theta()));
        let u3 = Upsilon::new(3, 0, 1).unwrap();
        let ring = u3.target().ring();
        let two = ring.from_int(2);
        assert_eq!(u3.phi(RingElem(5)), ring.add(two, ring.theta()));
        for b in 0..9 {
            assert_eq!(u3.phi_inv(u3.phi(RingElem(b))), RingElem(b));
        }
        assert!(Upsilon::new(5, 1, 1).is_err());
    }

    #[test]
    fn star_over_z4() {
        let amb = Ambient::new(RingSpec::integers(2, 2), 1, 0, 2).unwrap();
        let u = amb.vec_from_ints(&[], &[1, 2]).unwrap();
        let v = amb.vec_from_ints(&[], &[2, 2]).unwrap();
        assert_eq!(star(&amb, &u, &v), amb.vec_from_ints(&[], &[2, 0]).unwrap());
        assert_eq!(star_pow(&amb, &u, 1), u);
    }

    fn z2z4_lcd_code() -> MixedCode {
        let amb = Ambient::new(RingSpec::integers(2, 2), 1, 3, 2).unwrap();
        let g = amb
            .mat_from_ints(&[(&[1, 1, 1], &[0, 2]), (&[0, 0, 0], &[1, 2])])
            .unwrap();
        MixedCode::new(&amb, g).unwrap()
    }

    #[test]
    fn transfer_on_small_binary_code() {
        let rep = lcd_transfer(&z2z4_lcd_code(), 1 << 16).unwrap();
        assert!(rep.applicable);
        assert!(rep.source_lcd && rep.upsilon_lcd);
        assert_eq!(rep.binary_lcd, Some(true));
        assert_eq!(rep.verdicts_consistent, Some(true));
        assert!(rep.upsilon_dual_commutes);
        assert_eq!(rep.gray_dual_commutes, Some(true));
    }

    #[test]
    fn transfer_on_self_orthogonal_code() {
        let amb = Ambient::new(RingSpec::integers(2, 2), 1, 0, 1).unwrap();
        let c = MixedCode::new(&amb, amb.mat_from_ints(&[(&[], &[2])]).unwrap()).unwrap();
        let rep = lcd_transfer(&c, 1 << 16).unwrap();
        assert!(!rep.source_lcd);
        if rep.applicable {
            assert_eq!(rep.binary_lcd, Some(false));
            assert_eq!(rep.verdicts_consistent, Some(true));
        }
    }

    #[test]
    fn d_set_of_zero_code() {
        let amb = Ambient::new(RingSpec::integers(3, 2), 1, 1, 1).unwrap();
        let d = d_set(&MixedCode::zero(&amb), 1 << 16).unwrap();
        assert_eq!(d, vec![amb.zero()]);
    }
}
