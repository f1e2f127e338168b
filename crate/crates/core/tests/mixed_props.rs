mod common;

use std::collections::BTreeSet;

use chainlcd::linalg::{is_invertible, RingMat};
use chainlcd::mixed::{Ambient, LcdMethod, MixedCode, MixedVec};
use chainlcd::{RingElem, RingSpec};
use common::*;
use rand::Rng;

const CAP: u64 = 1 << 16;

/// `θ^{s-r} ι(Σ x σ̄^h(x')) + Σ y σ^h(y')`, straight from the definition.
fn inner(amb: &Ambient, u: &MixedVec, v: &MixedVec, h: u32) -> RingElem {
    let (ring, bar) = (amb.ring(), amb.bar_ring());
    let xs = bar.sum(
        u.x.iter()
            .zip(&v.x)
            .map(|(&a, &b)| bar.mul(a, bar.sigma(b, h))),
    );
    let ys = ring.sum(
        u.y.iter()
            .zip(&v.y)
            .map(|(&a, &b)| ring.mul(a, ring.sigma(b, h))),
    );
    ring.add(ring.chi(bar, xs).unwrap(), ys)
}

fn word_set(c: &MixedCode) -> BTreeSet<MixedVec> {
    c.enumerate(CAP).unwrap().into_iter().collect()
}

fn cases(seed: u64, per_ring: usize) -> Vec<MixedCode> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    for spec in small_rings() {
        for _ in 0..per_ring {
            let amb = random_ambient(&mut rng, &spec, 3, 10);
            out.push(random_code(&mut rng, &amb, 3));
        }
    }
    out
}

#[test]
fn size_matches_enumeration() {
    for c in cases(31, 8) {
        let brute = brute_force_words(&c, CAP);
        assert_eq!(brute.len() as u128, c.cardinality(), "{}", c.code_type());
        assert_eq!(word_set(&c).len(), brute.len());
        assert_eq!(c.rank(), c.code_type().rank());
    }
}

#[test]
fn dual_matches_brute_force() {
    let mut rng = rng(32);
    for c in cases(32, 8) {
        let amb = c.ambient();
        let h = rng.gen_range(0..amb.ring().degree());
        let gens = c.generators().row_vecs();
        let brute: BTreeSet<MixedVec> = amb
            .vectors(CAP)
            .unwrap()
            .into_iter()
            .filter(|u| gens.iter().all(|g| inner(amb, u, g, h).is_zero()))
            .collect();
        assert_eq!(word_set(&c.dual(h)), brute);
        for u in c.enumerate(CAP).unwrap().iter().take(20) {
            for v in gens.iter() {
                assert_eq!(amb.inner_product(u, v, h), inner(amb, u, v, h));
            }
        }
    }
}

#[test]
fn hull_and_lcd_match_brute_force() {
    let mut rng = rng(33);
    for c in cases(33, 8) {
        let amb = c.ambient();
        let h = rng.gen_range(0..amb.ring().degree());
        let words = c.enumerate(CAP).unwrap();
        let brute: BTreeSet<MixedVec> = words
            .iter()
            .filter(|u| words.iter().all(|v| inner(amb, u, v, h).is_zero()))
            .cloned()
            .collect();
        assert_eq!(word_set(&c.hull(h)), brute);
        let rep = c.is_lcd(h, LcdMethod::Both, CAP).unwrap();
        assert_eq!(rep.lcd, brute.len() == 1);
        if rep.lcd {
            assert!(c.is_weakly_free());
        }
        if rep.hypothesis == Some(true) {
            assert_eq!(rep.agree, Some(true));
        }
        assert_eq!(c.is_self_orthogonal(h), brute.len() == words.len());
    }
}

#[test]
fn standard_form_invariants() {
    let mut rng = rng(34);
    for c in cases(34, 8) {
        let amb = c.ambient();
        let sf = c.standard_form();
        assert_eq!(sf.standard.rows(), c.code_type().rank());
        let again = MixedCode::new(amb, sf.standard.clone()).unwrap();
        assert_eq!(again.code_type(), c.code_type());

        // a random invertible change of generators keeps the type and the span
        let mu = c.generators().rows();
        let p = loop {
            let p = RingMat::from_fn(mu, mu, |_, _| random_elem(&mut rng, amb.ring()));
            if is_invertible(amb.ring(), &p).unwrap() {
                break p;
            }
        };
        let moved = MixedCode::new(amb, amb.scalar_act(&p, c.generators()).unwrap()).unwrap();
        assert_eq!(moved.code_type(), c.code_type());
        assert!(moved.equals(&c).unwrap());
        // column j of the standard form is column perm[j] of the input
        let unpermuted: Vec<MixedVec> = sf
            .standard
            .row_vecs()
            .iter()
            .map(|v| {
                let mut x = v.x.clone();
                let mut y = v.y.clone();
                for (j, &pj) in sf.perm_x.iter().enumerate() {
                    x[pj] = v.x[j];
                }
                for (j, &pj) in sf.perm_y.iter().enumerate() {
                    y[pj] = v.y[j];
                }
                MixedVec::new(x, y)
            })
            .collect();
        assert!(MixedCode::from_vecs(amb, &unpermuted)
            .unwrap()
            .equals(&c)
            .unwrap());
    }
}

#[test]
fn weakly_free_is_preserved_by_duality() {
    let mut rng = rng(35);
    for c in cases(35, 15) {
        let h = rng.gen_range(0..c.ambient().ring().degree());
        assert_eq!(c.is_weakly_free(), c.dual(h).is_weakly_free());
    }
}

#[test]
fn sums_and_intersections() {
    let mut rng = rng(36);
    for spec in small_rings() {
        for _ in 0..5 {
            let amb = random_ambient(&mut rng, &spec, 3, 10);
            let (a, b) = (
                random_code(&mut rng, &amb, 2),
                random_code(&mut rng, &amb, 2),
            );
            let (wa, wb) = (word_set(&a), word_set(&b));
            let meet: BTreeSet<MixedVec> = wa.intersection(&wb).cloned().collect();
            assert_eq!(word_set(&a.intersect(&b).unwrap()), meet);
            let sum: BTreeSet<MixedVec> = wa
                .iter()
                .flat_map(|u| wb.iter().map(|v| amb.add(u, v)))
                .collect();
            assert_eq!(word_set(&a.sum(&b).unwrap()), sum);
        }
    }
}

#[test]
fn hermitian_duality_over_gr42() {
    let amb = Ambient::new(RingSpec::galois(2, 2, 2), 1, 1, 2).unwrap();
    let mut rng = rng(37);
    for _ in 0..20 {
        let c = random_code(&mut rng, &amb, 2);
        let d1 = c.dual(1);
        assert!(d1.dual(1).equals(&c).unwrap());
        assert!(d1.equals(&c.sigma(1).dual(0)).unwrap());
        assert_eq!(c.log_size() + d1.log_size(), amb.log_size());
    }
}

#[test]
fn zero_and_full_codes() {
    let amb = Ambient::new(RingSpec::integers(2, 3), 2, 2, 2).unwrap();
    let zero = MixedCode::zero(&amb);
    let full = MixedCode::full(&amb);
    assert!(zero.dual(0).equals(&full).unwrap());
    assert!(full.dual(0).equals(&zero).unwrap());
    assert_eq!(full.code_type().to_string(), "(2,2;2,0;2,0,0)");
    assert!(full.is_lcd(0, LcdMethod::Both, CAP).unwrap().lcd);
    assert!(zero.is_lcd(0, LcdMethod::Oracle, CAP).unwrap().lcd);
}
