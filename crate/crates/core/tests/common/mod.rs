#![allow(dead_code)]

use chainlcd::galois::GaloisContext;
use chainlcd::mixed::{Ambient, MixedCode, MixedVec};
use chainlcd::{Ring, RingElem, RingSpec};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Z_4, Z_8, Z_9, F_2[θ]/θ², F_2[θ]/θ³, F_3[θ]/θ², GR(4,2), F_4[θ]/θ².
pub fn small_rings() -> Vec<RingSpec> {
    vec![
        RingSpec::integers(2, 2),
        RingSpec::integers(2, 3),
        RingSpec::integers(3, 2),
        RingSpec::quasi(2, 2, 1),
        RingSpec::quasi(2, 3, 1),
        RingSpec::quasi(3, 2, 1),
        RingSpec::galois(2, 2, 2),
        RingSpec::quasi(2, 2, 2),
    ]
}

pub fn random_elem(rng: &mut ChaCha8Rng, ring: &Ring) -> RingElem {
    ring.from_index(rng.gen_range(0..ring.size())).unwrap()
}

pub fn random_vec(rng: &mut ChaCha8Rng, amb: &Ambient) -> MixedVec {
    MixedVec::new(
        (0..amb.alpha())
            .map(|_| random_elem(rng, amb.bar_ring()))
            .collect(),
        (0..amb.beta())
            .map(|_| random_elem(rng, amb.ring()))
            .collect(),
    )
}

/// A space with `r < s` (when `s > 1`), `1 <= α + β`, `α, β <= max_len` and at most `2^max_bits` vectors.
pub fn random_ambient(
    rng: &mut ChaCha8Rng,
    spec: &RingSpec,
    max_len: usize,
    max_bits: u32,
) -> Ambient {
    loop {
        let r = if spec.s > 1 {
            rng.gen_range(1..spec.s)
        } else {
            1
        };
        let alpha = rng.gen_range(0..=max_len);
        let beta = rng.gen_range(0..=max_len);
        if alpha + beta == 0 {
            continue;
        }
        let amb = Ambient::new(spec.clone(), r, alpha, beta).unwrap();
        let q_bits = (amb.ring().residue_order() as f64).log2();
        if amb.log_size() as f64 * q_bits <= max_bits as f64 + 1e-9 {
            return amb;
        }
    }
}

pub fn random_code(rng: &mut ChaCha8Rng, amb: &Ambient, max_rows: usize) -> MixedCode {
    let rows = rng.gen_range(1..=max_rows);
    let vecs: Vec<MixedVec> = (0..rows)
        .map(|_| {
            let mut v = random_vec(rng, amb);
            // sparse and theta-multiple rows reach the non-free types
            if amb.s() > 1 && rng.gen_bool(0.3) {
                let t = rng.gen_range(1..amb.s());
                let f = amb.ring().mul_theta_pow(amb.ring().one(), t);
                v = amb.scalar_mul(f, &v);
            }
            v
        })
        .collect();
    MixedCode::from_vecs(amb, &vecs).unwrap()
}

/// A code that is invariant half of the time: `Ext` of a random subring code.
pub fn random_galois_code(rng: &mut ChaCha8Rng, ctx: &GaloisContext, max_rows: usize) -> MixedCode {
    if rng.gen_bool(0.5) {
        let d = random_code(rng, ctx.subring_ambient(), max_rows);
        ctx.ext_code(&d).unwrap()
    } else {
        random_code(rng, ctx.ambient(), max_rows)
    }
}

/// Every word of `C` by brute force over the whole space.
pub fn brute_force_words(c: &MixedCode, cap: u64) -> Vec<MixedVec> {
    c.ambient()
        .vectors(cap)
        .unwrap()
        .into_iter()
        .filter(|v| c.contains(v).unwrap())
        .collect()
}
