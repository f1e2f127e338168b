//! Finite fields `F_{p^k}` presented as `F_p[x]/(f)`.
//!
//! Elements are stored as a single integer index: the coefficient vector
//! `(a_0, ..., a_{k-1})` of the reduced polynomial read as base-`p` digits.
//! Zero is index 0 and one is index 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field (in bits of `p^k`) accepted by [`Field::new`].
pub const FIELD_BITS_LIMIT: u32 = 24;

/// Fields up to this order get exp/log tables.
const TABLE_LIMIT: u32 = 1 << 16;

/// Description of `F_{p^k}`. An empty `modulus` selects the built-in default.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn new(p: u32, k: u32) -> Self {
        FieldSpec {
            p,
            k,
            modulus: Vec::new(),
        }
    }

    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Self {
        let k = modulus.len().saturating_sub(1) as u32;
        FieldSpec { p, k, modulus }
    }
}

/// An element of a [`Field`], identified by its coefficient index.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElem(pub(crate) u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug)]
struct LogTables {
    // exp has length 2 * (order - 1) so that log a + log b never wraps.
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    order: u32,
    pow_p: Vec<u32>,
    tables: Option<LogTables>,
    primitive: FieldElem,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

/// Default moduli: Conway polynomials, coefficients low to high.
pub(crate) fn default_modulus(p: u32, k: u32) -> Option<Vec<u32>> {
    let table: &[u32] = match (p, k) {
        (_, 1) => return Some(vec![0, 1]),
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (3, 5) => &[1, 2, 0, 0, 0, 1],
        (3, 6) => &[2, 2, 1, 0, 2, 0, 1],
        (5, 2) => &[2, 4, 1],
        (5, 3) => &[3, 3, 0, 1],
        (5, 4) => &[2, 4, 4, 0, 1],
        (5, 5) => &[3, 4, 0, 0, 0, 1],
        (5, 6) => &[2, 0, 1, 4, 1, 0, 1],
        _ => return None,
    };
    Some(table.to_vec())
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `f`, over `F_p`.
fn poly_rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let deg = f.len() - 1;
    let mut r: Vec<u32> = a.iter().map(|&c| c % p).collect();
    let lead_inv = inv_mod_prime(f[deg], p);
    while r.len() > deg {
        let top = r.len() - 1;
        let c = (r[top] as u64 * lead_inv as u64 % p as u64) as u32;
        if c != 0 {
            let shift = top - deg;
            for (j, &fj) in f.iter().enumerate() {
                let sub = (c as u64 * fj as u64 % p as u64) as u32;
                r[shift + j] = (r[shift + j] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

fn inv_mod_prime(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Trial division by every monic polynomial of degree `1..=k/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k <= 1 {
        return true;
    }
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                g.push((v % p as u64) as u32);
                v /= p as u64;
            }
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Field> {
        let p = spec.p;
        if !is_prime(p) {
            return Err(Error::InvalidSpec(format!(
                "characteristic {p} is not prime"
            )));
        }
        if spec.k == 0 {
            return Err(Error::InvalidSpec(
                "extension degree must be at least 1".into(),
            ));
        }
        let bits = (spec.k as f64) * (p as f64).log2();
        if bits > FIELD_BITS_LIMIT as f64 + 1e-9 {
            return Err(Error::SizeExceeded {
                what: "field",
                size: (p as u128).pow(spec.k),
                limit: 1 << FIELD_BITS_LIMIT,
            });
        }
        let modulus = if spec.modulus.is_empty() {
            default_modulus(p, spec.k).ok_or_else(|| {
                Error::InvalidSpec(format!(
                    "no default modulus for F_{p}^{}; supply one",
                    spec.k
                ))
            })?
        } else {
            spec.modulus.clone()
        };
        if modulus.len() as u32 != spec.k + 1 {
            return Err(Error::InvalidSpec(format!(
                "modulus has degree {} but k = {}",
                modulus.len() as i64 - 1,
                spec.k
            )));
        }
        if modulus.iter().any(|&c| c >= p) || modulus[spec.k as usize] != 1 {
            return Err(Error::InvalidSpec(
                "modulus must be monic with coefficients in 0..p".into(),
            ));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(
                modulus.iter().map(|&c| c as u64).collect(),
            ));
        }
        let order = p.pow(spec.k);
        let pow_p = (0..spec.k).map(|j| p.pow(j)).collect();
        let mut field = Field {
            spec: FieldSpec {
                p,
                k: spec.k,
                modulus,
            },
            order,
            pow_p,
            tables: None,
            primitive: FieldElem::ONE,
        };
        field.primitive = field.find_primitive();
        if order <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.k
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// The least element (by index) generating the multiplicative group.
    pub fn primitive(&self) -> FieldElem {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.order).map(FieldElem)
    }

    pub fn from_index(&self, idx: u32) -> Result<FieldElem> {
        if idx >= self.order {
            return Err(Error::OutOfRange(format!(
                "field index {idx} >= {}",
                self.order
            )));
        }
        Ok(FieldElem(idx))
    }

    /// Embeds an integer through `Z -> F_p -> F_{p^k}`.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.spec.p as i64) as u32)
    }

    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        let p = self.spec.p;
        let mut v = a.0;
        (0..self.spec.k)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem> {
        if coeffs.len() > self.spec.k as usize {
            return Err(Error::OutOfRange(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.spec.k
            )));
        }
        let p = self.spec.p;
        if coeffs.iter().any(|&c| c >= p) {
            return Err(Error::OutOfRange(format!(
                "coefficient not reduced mod {p}"
            )));
        }
        Ok(FieldElem(
            coeffs.iter().zip(&self.pow_p).map(|(c, w)| c * w).sum(),
        ))
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.spec.p;
        if self.spec.k == 1 {
            return FieldElem((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0);
        for &w in &self.pow_p {
            out += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
        }
        FieldElem(out)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let p = self.spec.p;
        if self.spec.k == 1 {
            return FieldElem((p - a.0) % p);
        }
        let (mut x, mut out) = (a.0, 0);
        for &w in &self.pow_p {
            out += ((p - x % p) % p) * w;
            x /= p;
        }
        FieldElem(out)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        if self.spec.k == 1 {
            return FieldElem((a.0 as u64 * b.0 as u64 % self.spec.p as u64) as u32);
        }
        match &self.tables {
            Some(t) => FieldElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_poly(a, b),
        }
    }

    fn mul_poly(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.spec.p as u64;
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; ca.len() + cb.len() - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let rem = poly_rem(&prod, &self.spec.modulus, self.spec.p);
        FieldElem(rem.iter().zip(&self.pow_p).map(|(c, w)| c * w).sum())
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut result = FieldElem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        match &self.tables {
            Some(t) => {
                let n = self.order - 1;
                Some(FieldElem(t.exp[((n - t.log[a.0 as usize]) % n) as usize]))
            }
            None => Some(self.pow(a, self.order as u64 - 2)),
        }
    }

    /// `a -> a^{p^e}`.
    pub fn frobenius(&self, a: FieldElem, e: u32) -> FieldElem {
        let e = e % self.spec.k;
        let mut x = a;
        for _ in 0..e {
            x = self.pow(x, self.spec.p as u64);
        }
        x
    }

    /// Discrete logarithm base [`Field::primitive`]; `None` for zero.
    pub fn log(&self, a: FieldElem) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.log[a.0 as usize]),
            None => {
                let mut x = FieldElem::ONE;
                for i in 0..self.order - 1 {
                    if x == a {
                        return Some(i);
                    }
                    x = self.mul(x, self.primitive);
                }
                None
            }
        }
    }

    fn find_primitive(&self) -> FieldElem {
        let n = self.order - 1;
        if n == 1 {
            return FieldElem::ONE;
        }
        let factors = prime_factors(n);
        (1..self.order)
            .map(FieldElem)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&l| self.pow_slow(g, (n / l) as u64) != FieldElem::ONE)
            })
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn pow_slow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut result = FieldElem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_poly(result, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        result
    }

    fn build_tables(&self) -> LogTables {
        let n = (self.order - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; self.order as usize];
        let mut x = FieldElem::ONE;
        for i in 0..n {
            exp[i] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_poly(x, self.primitive);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        LogTables { exp, log }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let f = Field::new(FieldSpec::new(2, 2)).unwrap();
        assert_eq!(f.order(), 4);
        let x = f.from_coeffs(&[0, 1]).unwrap();
        // x^2 = x + 1
        assert_eq!(f.mul(x, x), f.from_coeffs(&[1, 1]).unwrap());
        assert_eq!(f.frobenius(x, 1), f.mul(x, x));
        assert_eq!(f.frobenius(x, 2), x);
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x + 1)^2 over F_2
        let err = Field::new(FieldSpec::with_modulus(2, vec![1, 0, 1])).unwrap_err();
        assert!(matches!(err, Error::ReducibleModulus(_)));
        // x^2 + 1 is irreducible over F_3
        assert!(Field::new(FieldSpec::with_modulus(3, vec![1, 0, 1])).is_ok());
    }

    #[test]
    fn default_moduli_are_irreducible() {
        for p in [2, 3, 5] {
            for k in 1..=6 {
                let f = Field::new(FieldSpec::new(p, k)).unwrap();
                assert_eq!(f.order(), p.pow(k));
            }
        }
    }

    #[test]
    fn primitive_element_generates() {
        for (p, k) in [(2, 1), (2, 3), (3, 1), (3, 2), (5, 2)] {
            let f = Field::new(FieldSpec::new(p, k)).unwrap();
            let g = f.primitive();
            let mut seen = std::collections::HashSet::new();
            let mut x = f.one();
            for _ in 0..f.order() - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u32, f.order() - 1);
        }
        // F_3: 2 is the only generator
        let f3 = Field::new(FieldSpec::new(3, 1)).unwrap();
        assert_eq!(f3.primitive().index(), 2);
    }

    #[test]
    fn table_and_polynomial_paths_agree() {
        let f = Field::new(FieldSpec::new(3, 3)).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul_poly(a, b));
            }
        }
    }

    #[test]
    fn size_limit() {
        assert!(matches!(
            Field::new(FieldSpec::with_modulus(2, vec![1; 26])),
            Err(Error::SizeExceeded { .. })
        ));
    }
}
