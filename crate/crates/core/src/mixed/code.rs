use serde::Serialize;

use super::standard::{reduce, CodeType, Echelon, StandardFormResult};
use super::{Ambient, MixedMat, MixedVec};
use crate::error::{Error, Result};
use crate::linalg::{inverse, is_invertible, kernel, mat_mul, RingMat};
use crate::ring::RingElem;

/// Default bound on the number of codewords listed by brute force.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 16;

/// An `S`-submodule of `S̄^α × S^β`.
#[derive(Clone, Debug)]
pub struct MixedCode {
    amb: Ambient,
    generators: MixedMat,
    sf: StandardFormResult,
    echelon: Echelon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LcdMethod {
    Oracle,
    Structural,
    Both,
}

impl std::str::FromStr for LcdMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(LcdMethod::Oracle),
            "structural" => Ok(LcdMethod::Structural),
            "both" => Ok(LcdMethod::Both),
            other => Err(Error::InvalidSpec(format!("unknown LCD method {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LcdReport {
    pub h: u32,
    pub method: LcdMethod,
    pub lcd: bool,
    pub weakly_free: bool,
    /// Whether `r < s` and the off-diagonal block `T σ^h(A)^T + ι(B σ̄^h(U)^T)` lies in `J(S)`.
    pub hypothesis: Option<bool>,
    /// `A σ^h(A)^T` and `B σ̄^h(B)^T` both invertible.
    pub structural: Option<bool>,
    /// Brute-force hull check.
    pub oracle: Option<bool>,
    /// The code is not weakly free or the structural hypothesis failed, so
    /// the verdict came from the hull.
    pub fallback: bool,
    pub agree: Option<bool>,
    /// `P` with `⟨G, G⟩_h P = diag(θ^{s-r} I, I)` for the standard generators.
    pub witness: Option<Vec<Vec<RingElem>>>,
    pub witness_ok: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct Separation {
    pub separable: bool,
    pub cx: MixedCode,
    pub cy: MixedCode,
}

struct Structural {
    hypothesis: bool,
    verdict: bool,
    witness: Option<(RingMat, bool)>,
}

impl MixedCode {
    pub fn new(amb: &Ambient, generators: MixedMat) -> Result<Self> {
        let (sf, echelon) = reduce(amb, &generators)?;
        Ok(MixedCode {
            amb: amb.clone(),
            generators,
            sf,
            echelon,
        })
    }

    pub fn from_vecs(amb: &Ambient, rows: &[MixedVec]) -> Result<Self> {
        Self::new(amb, MixedMat::from_vecs(amb.alpha(), amb.beta(), rows)?)
    }

    pub fn zero(amb: &Ambient) -> Self {
        Self::new(amb, MixedMat::empty(amb.alpha(), amb.beta())).expect("empty generator matrix")
    }

    /// The whole space, generated by `(I_α ‖ O; O ‖ I_β)`.
    pub fn full(amb: &Ambient) -> Self {
        let rows: Vec<MixedVec> = (0..amb.len())
            .map(|i| {
                let mut v = amb.zero();
                if i < amb.alpha() {
                    v.x[i] = amb.bar_ring().one();
                } else {
                    v.y[i - amb.alpha()] = amb.ring().one();
                }
                v
            })
            .collect();
        Self::from_vecs(amb, &rows).expect("identity generators")
    }

    pub fn ambient(&self) -> &Ambient {
        &self.amb
    }

    pub fn generators(&self) -> &MixedMat {
        &self.generators
    }

    pub fn standard_form(&self) -> &StandardFormResult {
        &self.sf
    }

    pub fn code_type(&self) -> &CodeType {
        &self.sf.code_type
    }

    pub fn rank(&self) -> usize {
        self.sf.code_type.rank()
    }

    /// `log_{q^m} |C|`.
    pub fn log_size(&self) -> u32 {
        self.sf.code_type.log_size()
    }

    /// `|C|`, saturating.
    pub fn cardinality(&self) -> u128 {
        (self.amb.ring().residue_order() as u128).saturating_pow(self.log_size())
    }

    /// Reduced generators in the input column order.
    pub fn basis(&self) -> Vec<MixedVec> {
        self.echelon
            .rows
            .iter()
            .map(|r| self.amb.unembed(r))
            .collect()
    }

    pub fn basis_mat(&self) -> MixedMat {
        MixedMat::from_vecs(self.amb.alpha(), self.amb.beta(), &self.basis()).expect("basis shape")
    }

    pub fn contains(&self, v: &MixedVec) -> Result<bool> {
        self.amb.check_vec(v)?;
        Ok(self
            .echelon
            .decompose(&self.amb, &self.amb.embed(v))
            .is_some())
    }

    fn check_same(&self, other: &MixedCode) -> Result<()> {
        if self.amb != other.amb {
            return Err(Error::DimensionMismatch(
                "codes live in different ambient spaces".into(),
            ));
        }
        Ok(())
    }

    pub fn is_subcode_of(&self, other: &MixedCode) -> Result<bool> {
        self.check_same(other)?;
        for v in self.basis() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &MixedCode) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.log_size() == other.log_size() && self.is_subcode_of(other)?)
    }

    /// Every codeword exactly once, as `m ∗ G` over the message space.
    pub fn enumerate(&self, cap: u64) -> Result<Vec<MixedVec>> {
        let size = (self.amb.ring().residue_order() as u64).checked_pow(self.log_size());
        if size.is_none_or(|n| n > cap) {
            return Err(Error::CapExceeded {
                what: "code enumeration",
                needed: self.cardinality(),
                cap: cap as u128,
            });
        }
        let ring = self.amb.ring();
        let s = ring.nilpotency();
        let coeff_sets: Vec<Vec<RingElem>> = self
            .echelon
            .pivots
            .iter()
            .map(|&(_, v)| ring.gamma_set(Some(s - v - 1)).collect())
            .collect();
        let mut words = Vec::with_capacity(size.unwrap_or(0) as usize);
        let mut idx = vec![0usize; coeff_sets.len()];
        loop {
            let mut acc = vec![RingElem::ZERO; self.amb.len()];
            for ((row, set), &i) in self.echelon.rows.iter().zip(&coeff_sets).zip(&idx) {
                let f = set[i];
                if !f.is_zero() {
                    for (a, &e) in acc.iter_mut().zip(row) {
                        *a = ring.add(*a, ring.mul(f, e));
                    }
                }
            }
            words.push(self.amb.unembed(&acc));
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return Ok(words);
                }
                idx[k] += 1;
                if idx[k] < coeff_sets[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    /// `σ^h(C)`.
    pub fn sigma(&self, h: u32) -> MixedCode {
        MixedCode::new(&self.amb, self.amb.sigma_mat(&self.basis_mat(), h)).expect("same shape")
    }

    /// `C^{⊥_h}`, from the left kernel of the `χ`-embedded constraint matrix.
    pub fn dual(&self, h: u32) -> MixedCode {
        let amb = &self.amb;
        let ring = amb.ring();
        let basis = self.basis();
        let constraints = RingMat::from_fn(amb.len(), basis.len(), |j, i| {
            if j < amb.alpha() {
                let e = amb.bar_ring().sigma(basis[i].x[j], h);
                ring.chi_unchecked(amb.bar_ring(), e)
            } else {
                ring.sigma(basis[i].y[j - amb.alpha()], h)
            }
        });
        let k = kernel(ring, &constraints);
        let rows: Vec<MixedVec> = (0..k.rows()).map(|i| amb.project(k.row(i))).collect();
        MixedCode::from_vecs(amb, &rows).expect("kernel rows fit the ambient space")
    }

    pub fn sum(&self, other: &MixedCode) -> Result<MixedCode> {
        self.check_same(other)?;
        let mut rows = self.basis();
        rows.extend(other.basis());
        MixedCode::from_vecs(&self.amb, &rows)
    }

    /// `C1 ∩ C2 = (C1^⊥ + C2^⊥)^⊥` for the Euclidean dual.
    pub fn intersect(&self, other: &MixedCode) -> Result<MixedCode> {
        Ok(self.dual(0).sum(&other.dual(0))?.dual(0))
    }

    pub fn hull(&self, h: u32) -> MixedCode {
        self.intersect(&self.dual(h)).expect("same ambient")
    }

    pub fn is_self_orthogonal(&self, h: u32) -> bool {
        let b = self.basis_mat();
        self.amb.gram(&b, &b, h).expect("basis shape").is_zero()
    }

    pub fn is_self_dual(&self, h: u32) -> bool {
        2 * self.log_size() == self.amb.log_size() && self.is_self_orthogonal(h)
    }

    pub fn is_weakly_free(&self) -> bool {
        self.code_type().is_weakly_free()
    }

    /// Projections `C_X`, `C_Y` (as codes of block-length `(α,0)` and
    /// `(0,β)`) and whether `C = C_X × C_Y`.
    pub fn separation(&self) -> Separation {
        let (alpha, beta) = (self.amb.alpha(), self.amb.beta());
        let basis = self.basis();
        let ax = self.amb.with_lengths(alpha, 0);
        let ay = self.amb.with_lengths(0, beta);
        let xs: Vec<MixedVec> = basis
            .iter()
            .map(|v| MixedVec::new(v.x.clone(), vec![]))
            .collect();
        let ys: Vec<MixedVec> = basis
            .iter()
            .map(|v| MixedVec::new(vec![], v.y.clone()))
            .collect();
        let cx = MixedCode::from_vecs(&ax, &xs).expect("projection");
        let cy = MixedCode::from_vecs(&ay, &ys).expect("projection");
        let separable = cx.log_size() + cy.log_size() == self.log_size();
        Separation { separable, cx, cy }
    }

    /// Whether some nonzero codeword is orthogonal to all of `C`, by listing `C`.
    pub fn oracle_lcd(&self, h: u32, cap: u64) -> Result<bool> {
        let basis = self.basis();
        for c in self.enumerate(cap)? {
            if !c.is_zero()
                && basis
                    .iter()
                    .all(|g| self.amb.inner_product(&c, g, h).is_zero())
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn structural(&self, h: u32) -> Structural {
        let amb = &self.amb;
        let (ring, bar) = (amb.ring(), amb.bar_ring());
        let shift = amb.shift();
        let std = &self.sf.standard;
        let kx = self.code_type().k[0];
        let ky = self.code_type().l[0];
        let top: Vec<usize> = (0..kx).collect();
        let bottom: Vec<usize> = (kx..kx + ky).collect();
        let b = std.x.select_rows(&top);
        let t = std.y.select_rows(&top).map(|e| {
            ring.div_theta_pow(e, shift)
                .expect("upper-right block divisible")
        });
        let u = std.x.select_rows(&bottom);
        let a = std.y.select_rows(&bottom);

        let conj_t = |m: &RingMat, on_bar: bool| {
            let r = if on_bar { bar } else { ring };
            m.map(|e| r.sigma(e, h)).transpose()
        };
        let tat = mat_mul(ring, &t, &conj_t(&a, false)).expect("shapes");
        let but = mat_mul(bar, &b, &conj_t(&u, true)).expect("shapes");
        let hypothesis = amb.r() < amb.s()
            && (0..kx).all(|i| {
                (0..ky).all(|j| {
                    let e = ring.add(tat.get(i, j), ring.lift_from(bar, but.get(i, j)));
                    ring.valuation(e) >= 1
                })
            });
        let aa = mat_mul(ring, &a, &conj_t(&a, false)).expect("shapes");
        let bb = mat_mul(bar, &b, &conj_t(&b, true)).expect("shapes");
        let verdict =
            is_invertible(ring, &aa).expect("square") && is_invertible(bar, &bb).expect("square");

        let witness = verdict.then(|| {
            let gram = amb.gram(std, std, h).expect("shapes");
            let n = RingMat::from_fn(kx + ky, kx + ky, |i, j| {
                let e = gram.get(i, j);
                if i < kx {
                    ring.div_theta_pow(e, shift).unwrap_or(RingElem::ZERO)
                } else {
                    e
                }
            });
            let top_divisible =
                (0..kx).all(|i| (0..kx + ky).all(|j| ring.valuation(gram.get(i, j)) >= shift));
            match inverse(ring, &n).expect("square") {
                Some(p) if top_divisible => {
                    let target =
                        RingMat::from_fn(kx + ky, kx + ky, |i, j| match (i == j, i < kx) {
                            (false, _) => RingElem::ZERO,
                            (true, true) => ring.mul_theta_pow(ring.one(), shift),
                            (true, false) => ring.one(),
                        });
                    let ok = mat_mul(ring, &gram, &p).expect("shapes") == target;
                    (p, ok)
                }
                _ => (RingMat::zeros(0, 0), false),
            }
        });
        Structural {
            hypothesis,
            verdict,
            witness,
        }
    }

    /// `h`-Galois LCD test.
    pub fn is_lcd(&self, h: u32, method: LcdMethod, cap: u64) -> Result<LcdReport> {
        let weakly_free = self.is_weakly_free();
        let mut report = LcdReport {
            h,
            method,
            lcd: false,
            weakly_free,
            hypothesis: None,
            structural: None,
            oracle: None,
            fallback: false,
            agree: None,
            witness: None,
            witness_ok: None,
        };
        if matches!(method, LcdMethod::Oracle | LcdMethod::Both) {
            report.oracle = Some(self.oracle_lcd(h, cap)?);
        }
        if matches!(method, LcdMethod::Structural | LcdMethod::Both) {
            if weakly_free {
                let st = self.structural(h);
                report.hypothesis = Some(st.hypothesis);
                report.structural = Some(st.verdict);
                if let Some((p, ok)) = st.witness {
                    report.witness = Some(p.row_vecs());
                    report.witness_ok = Some(ok);
                }
                report.fallback = !st.hypothesis;
            } else {
                report.fallback = true;
            }
            if report.fallback && report.oracle.is_none() {
                report.oracle = Some(match self.oracle_lcd(h, cap) {
                    Ok(v) => v,
                    Err(Error::CapExceeded { .. }) => self.hull(h).log_size() == 0,
                    Err(e) => return Err(e),
                });
            }
        }
        report.lcd = match (report.oracle, report.structural, report.fallback) {
            (Some(o), _, _) => o,
            (None, Some(s), false) => s,
            _ => unreachable!("a verdict is always computed"),
        };
        if let (Some(o), Some(s)) = (report.oracle, report.structural) {
            if report.hypothesis != Some(false) {
                report.agree = Some(o == s);
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn z2z4(alpha: usize, beta: usize) -> Ambient {
        Ambient::new(RingSpec::integers(2, 2), 1, alpha, beta).unwrap()
    }

    fn z2z4_lcd_code() -> MixedCode {
        let a = z2z4(3, 2);
        let g = a
            .mat_from_ints(&[(&[1, 1, 1], &[0, 2]), (&[0, 0, 0], &[1, 2])])
            .unwrap();
        MixedCode::new(&a, g).unwrap()
    }

    #[test]
    fn zero_and_full() {
        let a = z2z4(2, 1);
        let z = MixedCode::zero(&a);
        assert_eq!(z.cardinality(), 1);
        assert_eq!(z.enumerate(16).unwrap(), vec![a.zero()]);
        assert!(z.contains(&a.zero()).unwrap());
        let f = MixedCode::full(&a);
        assert_eq!(f.cardinality(), 16);
        assert_eq!(f.code_type().to_string(), "(2,1;2;1,0)");
        assert!(f.dual(0).equals(&z).unwrap());
        assert!(z.dual(0).equals(&f).unwrap());
    }

    #[test]
    fn z2z4_lcd_structure() {
        let c = z2z4_lcd_code();
        assert_eq!(c.code_type().to_string(), "(3,2;1;1,0)");
        assert_eq!(c.cardinality(), 8);
        let words = c.enumerate(1 << 16).unwrap();
        assert_eq!(words.len(), 8);
        let mut sorted = words.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 8);
        let report = c.is_lcd(0, LcdMethod::Both, 1 << 16).unwrap();
        assert!(report.lcd);
        assert_eq!(report.hypothesis, Some(true));
        assert_eq!(report.agree, Some(true));
        assert_eq!(report.witness_ok, Some(true));
        assert_eq!(c.hull(0).cardinality(), 1);
    }

    #[test]
    fn self_orthogonal_generator_is_not_lcd() {
        let a = z2z4(1, 1);
        let c = MixedCode::from_vecs(&a, &[a.vec_from_ints(&[0], &[2]).unwrap()]).unwrap();
        assert!(c.is_self_orthogonal(0));
        let report = c.is_lcd(0, LcdMethod::Both, 1 << 16).unwrap();
        assert!(!report.lcd);
        assert!(!report.weakly_free);
        assert!(c
            .hull(0)
            .contains(&a.vec_from_ints(&[0], &[2]).unwrap())
            .unwrap());
    }

    #[test]
    fn separable_blocks() {
        let a = z2z4(1, 1);
        let c = MixedCode::from_vecs(
            &a,
            &[
                a.vec_from_ints(&[1], &[0]).unwrap(),
                a.vec_from_ints(&[0], &[1]).unwrap(),
            ],
        )
        .unwrap();
        let sep = c.separation();
        assert!(sep.separable);
        assert_eq!(sep.cx.cardinality(), 2);
        assert_eq!(sep.cy.cardinality(), 4);
        let d = MixedCode::from_vecs(&a, &[a.vec_from_ints(&[1], &[1]).unwrap()]).unwrap();
        assert!(!d.separation().separable);
    }

    #[test]
    fn dual_cardinality_and_type() {
        let c = z2z4_lcd_code();
        let d = c.dual(0);
        assert_eq!(c.log_size() + d.log_size(), c.ambient().log_size());
        assert_eq!(d.code_type(), &c.code_type().dual());
        for g in c.basis() {
            for u in d.basis() {
                assert!(c.ambient().inner_product(&u, &g, 0).is_zero());
            }
        }
    }
}
