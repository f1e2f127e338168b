//! Finite chain rings from two constructible families.
//!
//! * Galois rings `GR(p^s, m) = Z_{p^s}[X]/(f)`, with `theta = p`.
//! * Quasi-Galois rings `F_{p^m}[theta]/(theta^s)`.
//!
//! Both carry the Galois extension `S | R` of degree `m` over the subring
//! `R = Z_{p^s}` (resp. `F_p[theta]/(theta^s)`), with `sigma` the canonical
//! Frobenius acting on every theta-adic digit.
//!
//! Elements are [`RingElem`] indices. Coordinates are `m` residues mod `p^s`
//! (Galois) or `s` residue-field digits (quasi-Galois), packed mixed-radix with
//! the lowest coordinate first. All operations go through a [`Ring`] handle.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{default_modulus, is_prime, Field, FieldElem, FieldSpec};

/// Total ring size limit, `q^{ms} <= 2^24`.
pub const RING_BITS_LIMIT: u32 = 24;
/// Largest ring whose elements may be listed.
pub const ENUMERATION_LIMIT: u32 = 1 << 16;

const MAX_COORDS: usize = RING_BITS_LIMIT as usize;
const BINARY_TABLE_LIMIT: u32 = 256;
const UNARY_TABLE_LIMIT: u32 = 1 << 16;

type Coords = [u32; MAX_COORDS];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    GaloisRing,
    QuasiGaloisRing,
}

/// Ring descriptor. `modulus` is low-to-high; empty selects the default
/// (Conway polynomial for `m >= 2`, `X` for `m = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    pub family: Family,
    pub p: u32,
    pub s: u32,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modulus: Vec<u64>,
}

impl RingSpec {
    pub fn galois(p: u32, s: u32, m: u32) -> Self {
        RingSpec {
            family: Family::GaloisRing,
            p,
            s,
            m,
            modulus: Vec::new(),
        }
    }

    pub fn quasi(p: u32, s: u32, m: u32) -> Self {
        RingSpec {
            family: Family::QuasiGaloisRing,
            p,
            s,
            m,
            modulus: Vec::new(),
        }
    }

    /// `Z_{p^s}`.
    pub fn integers(p: u32, s: u32) -> Self {
        Self::galois(p, s, 1)
    }

    pub fn with_modulus(mut self, modulus: Vec<u64>) -> Self {
        self.modulus = modulus;
        self
    }

    /// The spec of `S / theta^r S`.
    pub fn bar(&self, r: u32) -> Result<RingSpec> {
        if r == 0 || r > self.s {
            return Err(Error::OutOfRange(format!(
                "bar index r = {r} must lie in 1..={}",
                self.s
            )));
        }
        let mut spec = self.clone();
        spec.s = r;
        if spec.family == Family::GaloisRing {
            let pr = (self.p as u64).pow(r);
            spec.modulus = spec.modulus.iter().map(|&c| c % pr).collect();
        }
        Ok(spec)
    }

    /// The spec of the fixed subring `R` of the Galois group.
    pub fn subring(&self) -> RingSpec {
        RingSpec {
            family: self.family,
            p: self.p,
            s: self.s,
            m: 1,
            modulus: vec![0, 1],
        }
    }
}

#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct RingElem(pub(crate) u32);

impl RingElem {
    pub const ZERO: RingElem = RingElem(0);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Galois { ps: u64, modulus: Vec<u64> },
    Quasi,
}

#[derive(Clone, Debug)]
pub struct Ring {
    spec: RingSpec,
    field: Field,
    kind: Kind,
    radix: u32,
    ncoords: usize,
    size: u32,
    radix_pow: Vec<u32>,
    theta: RingElem,
    teich: Option<Vec<u32>>,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
    neg_table: Option<Vec<u32>>,
    sigma_table: Option<Vec<u32>>,
    valuation_table: Option<Vec<u8>>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, s, m) = (self.spec.p, self.spec.s, self.spec.m);
        match (self.spec.family, m) {
            (Family::GaloisRing, 1) => write!(f, "Z_{}", (p as u64).pow(s)),
            (Family::GaloisRing, _) => write!(f, "GR({}^{}, {})", p, s, m),
            (Family::QuasiGaloisRing, _) => write!(f, "F_{}[θ]/θ^{}", (p as u64).pow(m), s),
        }
    }
}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Ring> {
        let RingSpec {
            family, p, s, m, ..
        } = spec;
        if !is_prime(p) {
            return Err(Error::InvalidSpec(format!("p = {p} is not prime")));
        }
        if s == 0 || m == 0 {
            return Err(Error::InvalidSpec("s and m must be at least 1".into()));
        }
        let bits = (m as f64) * (s as f64) * (p as f64).log2();
        if bits > RING_BITS_LIMIT as f64 + 1e-9 {
            return Err(Error::SizeExceeded {
                what: "ring",
                size: (p as u128).saturating_pow(m * s),
                limit: 1 << RING_BITS_LIMIT,
            });
        }
        let modulus: Vec<u64> = if spec.modulus.is_empty() {
            default_modulus(p, m)
                .ok_or_else(|| {
                    Error::InvalidSpec(format!("no default modulus of degree {m} over F_{p}"))
                })?
                .into_iter()
                .map(u64::from)
                .collect()
        } else {
            spec.modulus.clone()
        };
        if modulus.len() as u32 != m + 1 || modulus[m as usize] != 1 {
            return Err(Error::InvalidSpec(format!(
                "modulus must be monic of degree {m}"
            )));
        }
        let (kind, radix, ncoords, reduced) = match family {
            Family::GaloisRing => {
                let ps = (p as u64).pow(s);
                if modulus.iter().any(|&c| c >= ps) {
                    return Err(Error::InvalidSpec(format!(
                        "modulus coefficients must lie in 0..{ps}"
                    )));
                }
                let reduced: Vec<u32> = modulus.iter().map(|&c| (c % p as u64) as u32).collect();
                (
                    Kind::Galois {
                        ps,
                        modulus: modulus.clone(),
                    },
                    ps as u32,
                    m as usize,
                    reduced,
                )
            }
            Family::QuasiGaloisRing => {
                if modulus.iter().any(|&c| c >= p as u64) {
                    return Err(Error::InvalidSpec(format!(
                        "modulus coefficients must lie in 0..{p}"
                    )));
                }
                let reduced: Vec<u32> = modulus.iter().map(|&c| c as u32).collect();
                (Kind::Quasi, p.pow(m), s as usize, reduced)
            }
        };
        let field = match Field::new(FieldSpec::with_modulus(p, reduced)) {
            Err(Error::ReducibleModulus(_)) => return Err(Error::ReducibleModulus(modulus)),
            other => other?,
        };
        let size = (radix as u64).pow(ncoords as u32) as u32;
        let radix_pow = (0..ncoords).map(|i| radix.pow(i as u32)).collect();
        let mut ring = Ring {
            spec: RingSpec {
                family,
                p,
                s,
                m,
                modulus,
            },
            field,
            kind,
            radix,
            ncoords,
            size,
            radix_pow,
            theta: RingElem::ZERO,
            teich: None,
            add_table: None,
            mul_table: None,
            neg_table: None,
            sigma_table: None,
            valuation_table: None,
        };
        ring.theta = ring.compute_theta();
        ring.build_tables();
        Ok(ring)
    }

    fn build_tables(&mut self) {
        let n = self.size;
        if n <= BINARY_TABLE_LIMIT {
            let mut add = Vec::with_capacity((n * n) as usize);
            let mut mul = Vec::with_capacity((n * n) as usize);
            for a in 0..n {
                for b in 0..n {
                    add.push(self.add_raw(RingElem(a), RingElem(b)).0);
                    mul.push(self.mul_raw(RingElem(a), RingElem(b)).0);
                }
            }
            self.add_table = Some(add);
            self.mul_table = Some(mul);
        }
        if self.field.order() <= UNARY_TABLE_LIMIT {
            let teich = self
                .field
                .elements()
                .map(|a| self.teichmuller_raw(a).0)
                .collect();
            self.teich = Some(teich);
        }
        if n <= UNARY_TABLE_LIMIT {
            self.neg_table = Some((0..n).map(|a| self.neg_raw(RingElem(a)).0).collect());
            self.valuation_table = Some(
                (0..n)
                    .map(|a| self.valuation_raw(RingElem(a)) as u8)
                    .collect(),
            );
            self.sigma_table = Some((0..n).map(|a| self.sigma_raw(RingElem(a)).0).collect());
        }
    }

    // ---- descriptors ----

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn family(&self) -> Family {
        self.spec.family
    }

    pub fn characteristic_prime(&self) -> u32 {
        self.spec.p
    }

    /// Nilpotency index of `theta`.
    pub fn nilpotency(&self) -> u32 {
        self.spec.s
    }

    /// Degree `m` of the extension over the fixed subring.
    pub fn degree(&self) -> u32 {
        self.spec.m
    }

    /// Order `q` of the residue field of the subring (always `p` here).
    pub fn q(&self) -> u32 {
        self.spec.p
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn residue_field(&self) -> &Field {
        &self.field
    }

    /// `q^m`, the residue field order.
    pub fn residue_order(&self) -> u32 {
        self.field.order()
    }

    pub fn zero(&self) -> RingElem {
        RingElem::ZERO
    }

    pub fn one(&self) -> RingElem {
        let mut c = [0u32; MAX_COORDS];
        c[0] = 1;
        self.encode(&c)
    }

    pub fn theta(&self) -> RingElem {
        self.theta
    }

    fn compute_theta(&self) -> RingElem {
        let mut c = [0u32; MAX_COORDS];
        match self.kind {
            Kind::Galois { ps, .. } => c[0] = (self.spec.p as u64 % ps) as u32,
            Kind::Quasi => {
                if self.spec.s >= 2 {
                    c[1] = 1;
                }
            }
        }
        self.encode(&c)
    }

    // ---- encoding ----

    fn decode(&self, x: RingElem) -> Coords {
        let mut c = [0u32; MAX_COORDS];
        let mut v = x.0;
        for slot in c.iter_mut().take(self.ncoords) {
            *slot = v % self.radix;
            v /= self.radix;
        }
        c
    }

    fn encode(&self, c: &Coords) -> RingElem {
        RingElem(
            c[..self.ncoords]
                .iter()
                .zip(&self.radix_pow)
                .map(|(a, w)| a * w)
                .sum(),
        )
    }

    pub fn from_index(&self, idx: u32) -> Result<RingElem> {
        if idx >= self.size {
            return Err(Error::OutOfRange(format!(
                "element index {idx} >= ring size {}",
                self.size
            )));
        }
        Ok(RingElem(idx))
    }

    /// Canonical coordinates: `m` residues mod `p^s` (Galois ring) or the `s`
    /// theta-digits as residue-field indices (quasi-Galois ring).
    pub fn coords(&self, x: RingElem) -> Vec<u32> {
        self.decode(x)[..self.ncoords].to_vec()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<RingElem> {
        if coords.len() > self.ncoords {
            return Err(Error::OutOfRange(format!(
                "{} coordinates given, ring has {}",
                coords.len(),
                self.ncoords
            )));
        }
        if coords.iter().any(|&c| c >= self.radix) {
            return Err(Error::OutOfRange(format!(
                "coordinate not reduced below {}",
                self.radix
            )));
        }
        let mut c = [0u32; MAX_COORDS];
        c[..coords.len()].copy_from_slice(coords);
        Ok(self.encode(&c))
    }

    /// Image of the integer `n` under `Z -> S`.
    pub fn from_int(&self, n: i64) -> RingElem {
        let mut c = [0u32; MAX_COORDS];
        c[0] = match self.kind {
            Kind::Galois { ps, .. } => n.rem_euclid(ps as i64) as u32,
            Kind::Quasi => n.rem_euclid(self.spec.p as i64) as u32,
        };
        self.encode(&c)
    }

    pub fn format(&self, x: RingElem) -> String {
        let c = self.coords(x);
        match self.kind {
            Kind::Galois { .. } if self.ncoords == 1 => c[0].to_string(),
            Kind::Galois { .. } => poly_string(&c, |v| v.to_string(), "x"),
            Kind::Quasi => {
                let k = self.field.degree();
                let digit = |v: u32| {
                    if k == 1 {
                        v.to_string()
                    } else {
                        format!("{:?}", self.field.coeffs(FieldElem(v)))
                    }
                };
                poly_string(&c, digit, "θ")
            }
        }
    }

    /// Every element, in index order. Errors above [`ENUMERATION_LIMIT`].
    pub fn elements(&self) -> Result<impl Iterator<Item = RingElem>> {
        if self.size > ENUMERATION_LIMIT {
            return Err(Error::CapExceeded {
                what: "ring enumeration",
                needed: self.size as u128,
                cap: ENUMERATION_LIMIT as u128,
            });
        }
        Ok((0..self.size).map(RingElem))
    }

    // ---- arithmetic ----

    fn add_raw(&self, a: RingElem, b: RingElem) -> RingElem {
        let (x, y) = (self.decode(a), self.decode(b));
        let mut c = [0u32; MAX_COORDS];
        match self.kind {
            Kind::Galois { ps, .. } => {
                for i in 0..self.ncoords {
                    c[i] = ((x[i] as u64 + y[i] as u64) % ps) as u32;
                }
            }
            Kind::Quasi => {
                for i in 0..self.ncoords {
                    c[i] = self.field.add(FieldElem(x[i]), FieldElem(y[i])).0;
                }
            }
        }
        self.encode(&c)
    }

    fn neg_raw(&self, a: RingElem) -> RingElem {
        let x = self.decode(a);
        let mut c = [0u32; MAX_COORDS];
        match self.kind {
            Kind::Galois { ps, .. } => {
                for i in 0..self.ncoords {
                    c[i] = ((ps - x[i] as u64) % ps) as u32;
                }
            }
            Kind::Quasi => {
                for i in 0..self.ncoords {
                    c[i] = self.field.neg(FieldElem(x[i])).0;
                }
            }
        }
        self.encode(&c)
    }

    fn mul_raw(&self, a: RingElem, b: RingElem) -> RingElem {
        let (x, y) = (self.decode(a), self.decode(b));
        let n = self.ncoords;
        let mut c = [0u32; MAX_COORDS];
        match &self.kind {
            Kind::Galois { ps, modulus } => {
                let ps = *ps;
                let mut prod = [0u64; 2 * MAX_COORDS];
                for i in 0..n {
                    if x[i] == 0 {
                        continue;
                    }
                    for j in 0..n {
                        prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % ps;
                    }
                }
                for i in (n..2 * n - 1).rev() {
                    let top = prod[i];
                    if top == 0 {
                        continue;
                    }
                    for j in 0..=n {
                        let sub = top * modulus[j] % ps;
                        prod[i - n + j] = (prod[i - n + j] + ps - sub) % ps;
                    }
                }
                for i in 0..n {
                    c[i] = prod[i] as u32;
                }
            }
            Kind::Quasi => {
                for i in 0..n {
                    if x[i] == 0 {
                        continue;
                    }
                    for j in 0..n - i {
                        let t = self.field.mul(FieldElem(x[i]), FieldElem(y[j]));
                        c[i + j] = self.field.add(FieldElem(c[i + j]), t).0;
                    }
                }
            }
        }
        self.encode(&c)
    }

    pub fn add(&self, a: RingElem, b: RingElem) -> RingElem {
        match &self.add_table {
            Some(t) => RingElem(t[(a.0 * self.size + b.0) as usize]),
            None => self.add_raw(a, b),
        }
    }

    pub fn neg(&self, a: RingElem) -> RingElem {
        match &self.neg_table {
            Some(t) => RingElem(t[a.0 as usize]),
            None => self.neg_raw(a),
        }
    }

    pub fn sub(&self, a: RingElem, b: RingElem) -> RingElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: RingElem, b: RingElem) -> RingElem {
        match &self.mul_table {
            Some(t) => RingElem(t[(a.0 * self.size + b.0) as usize]),
            None => self.mul_raw(a, b),
        }
    }

    pub fn pow(&self, a: RingElem, mut e: u64) -> RingElem {
        let mut result = self.one();
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

    pub fn sum<I: IntoIterator<Item = RingElem>>(&self, items: I) -> RingElem {
        items
            .into_iter()
            .fold(RingElem::ZERO, |acc, x| self.add(acc, x))
    }

    pub fn is_unit(&self, a: RingElem) -> bool {
        self.valuation(a) == 0
    }

    /// Multiplicative inverse of a unit, by Newton iteration from the residue
    /// field inverse.
    pub fn inv_unit(&self, a: RingElem) -> Result<RingElem> {
        let v = self.valuation(a);
        if v > 0 {
            return Err(Error::NotUnit(v));
        }
        let inv_res = self
            .field
            .inv(self.residue(a))
            .expect("unit has nonzero residue");
        let mut y = self.teichmuller_lift(inv_res);
        let two = self.from_int(2);
        for _ in 0..=self.spec.s {
            if self.mul(a, y) == self.one() {
                return Ok(y);
            }
            y = self.mul(y, self.sub(two, self.mul(a, y)));
        }
        Err(Error::Invariant("Newton inversion did not converge".into()))
    }

    // ---- valuation and theta-adic structure ----

    fn valuation_raw(&self, a: RingElem) -> u32 {
        let s = self.spec.s;
        if a.is_zero() {
            return s;
        }
        let c = self.decode(a);
        match self.kind {
            Kind::Galois { .. } => {
                let p = self.spec.p;
                c[..self.ncoords]
                    .iter()
                    .filter(|&&v| v != 0)
                    .map(|&v| {
                        let (mut v, mut t) = (v, 0);
                        while v % p == 0 {
                            v /= p;
                            t += 1;
                        }
                        t
                    })
                    .min()
                    .unwrap_or(s)
            }
            Kind::Quasi => c[..self.ncoords]
                .iter()
                .position(|&v| v != 0)
                .map_or(s, |i| i as u32),
        }
    }

    /// Largest `t` with `a` in `theta^t S`; `s` for zero.
    pub fn valuation(&self, a: RingElem) -> u32 {
        match &self.valuation_table {
            Some(t) => t[a.0 as usize] as u32,
            None => self.valuation_raw(a),
        }
    }

    /// `theta^t * a`.
    pub fn mul_theta_pow(&self, a: RingElem, t: u32) -> RingElem {
        if t == 0 {
            return a;
        }
        if t >= self.spec.s {
            return RingElem::ZERO;
        }
        let x = self.decode(a);
        let mut c = [0u32; MAX_COORDS];
        match self.kind {
            Kind::Galois { ps, .. } => {
                let f = (self.spec.p as u64).pow(t);
                for i in 0..self.ncoords {
                    c[i] = (x[i] as u64 * f % ps) as u32;
                }
            }
            Kind::Quasi => {
                let t = t as usize;
                c[t..self.ncoords].copy_from_slice(&x[..self.ncoords - t]);
            }
        }
        self.encode(&c)
    }

    /// Some `c` with `theta^t * c = a`, provided `valuation(a) >= t`.
    pub fn div_theta_pow(&self, a: RingElem, t: u32) -> Option<RingElem> {
        if t == 0 {
            return Some(a);
        }
        if self.valuation(a) < t {
            return None;
        }
        if a.is_zero() {
            return Some(RingElem::ZERO);
        }
        let x = self.decode(a);
        let mut c = [0u32; MAX_COORDS];
        match self.kind {
            Kind::Galois { .. } => {
                let f = self.spec.p.pow(t);
                for i in 0..self.ncoords {
                    c[i] = x[i] / f;
                }
            }
            Kind::Quasi => {
                let t = t as usize;
                c[..self.ncoords - t].copy_from_slice(&x[t..self.ncoords]);
            }
        }
        Some(self.encode(&c))
    }

    /// `a = theta^t * u` with `u` a unit; `None` for zero.
    pub fn split_unit(&self, a: RingElem) -> Option<(u32, RingElem)> {
        if a.is_zero() {
            return None;
        }
        let t = self.valuation(a);
        let u = self.div_theta_pow(a, t)?;
        Some((t, u))
    }

    /// Exact quotient `a / b` when `b` divides `a`.
    pub fn divide(&self, a: RingElem, b: RingElem) -> Option<RingElem> {
        if b.is_zero() {
            return if a.is_zero() {
                Some(RingElem::ZERO)
            } else {
                None
            };
        }
        let (t, u) = self.split_unit(b)?;
        let q = self.div_theta_pow(a, t)?;
        Some(self.mul(q, self.inv_unit(u).ok()?))
    }

    /// Canonical projection onto the residue field.
    pub fn residue(&self, a: RingElem) -> FieldElem {
        let c = self.decode(a);
        match self.kind {
            Kind::Galois { .. } => {
                let p = self.spec.p;
                let digits: Vec<u32> = c[..self.ncoords].iter().map(|v| v % p).collect();
                self.field.from_coeffs(&digits).expect("reduced digits")
            }
            Kind::Quasi => FieldElem(c[0]),
        }
    }

    fn teichmuller_raw(&self, a: FieldElem) -> RingElem {
        match self.kind {
            Kind::Quasi => {
                let mut c = [0u32; MAX_COORDS];
                c[0] = a.0;
                self.encode(&c)
            }
            Kind::Galois { .. } => {
                let mut c = [0u32; MAX_COORDS];
                for (slot, d) in c.iter_mut().zip(self.field.coeffs(a)) {
                    *slot = d;
                }
                let mut y = self.encode(&c);
                let e = self.field.order() as u64;
                for _ in 0..=self.spec.s {
                    let next = self.pow(y, e);
                    if next == y {
                        break;
                    }
                    y = next;
                }
                y
            }
        }
    }

    /// The Teichmüller representative of `a`: the unique root of
    /// `y^{q^m} = y` reducing to `a`.
    pub fn teichmuller_lift(&self, a: FieldElem) -> RingElem {
        match &self.teich {
            Some(t) => RingElem(t[a.0 as usize]),
            None => self.teichmuller_raw(a),
        }
    }

    /// Digits `gamma_0..gamma_{s-1}` with `a = sum iota(gamma_t) theta^t`.
    pub fn theta_adic(&self, a: RingElem) -> Vec<FieldElem> {
        let s = self.spec.s as usize;
        match self.kind {
            Kind::Quasi => self.decode(a)[..s].iter().map(|&v| FieldElem(v)).collect(),
            Kind::Galois { ps, .. } => {
                let p = self.spec.p;
                let n = self.ncoords;
                let mut c = self.decode(a);
                let mut out = Vec::with_capacity(s);
                for _ in 0..s {
                    let digits: Vec<u32> = c[..n].iter().map(|v| v % p).collect();
                    let gamma = self.field.from_coeffs(&digits).expect("reduced digits");
                    out.push(gamma);
                    let lift = self.decode(self.teichmuller_lift(gamma));
                    for i in 0..n {
                        let d = (c[i] as u64 + ps - lift[i] as u64) % ps;
                        c[i] = (d / p as u64) as u32;
                    }
                }
                out
            }
        }
    }

    /// Inverse of [`Ring::theta_adic`]; missing trailing digits are zero.
    pub fn from_theta_adic(&self, digits: &[FieldElem]) -> RingElem {
        let mut acc = RingElem::ZERO;
        for &g in digits.iter().take(self.spec.s as usize).rev() {
            acc = self.add(self.mul(acc, self.theta), self.teichmuller_lift(g));
        }
        acc
    }

    /// Highest nonzero theta-adic digit, `None` standing for `-infinity`.
    pub fn deg_theta(&self, a: RingElem) -> Option<u32> {
        self.theta_adic(a)
            .iter()
            .rposition(|g| !g.is_zero())
            .map(|t| t as u32)
    }

    /// Elements of theta-degree at most `j` (`None` = `-infinity`, giving `{0}`),
    /// ordered with `gamma_0` varying fastest.
    pub fn gamma_set(&self, j: Option<u32>) -> impl Iterator<Item = RingElem> + '_ {
        let digits = j.map_or(0, |j| (j + 1).min(self.spec.s)) as usize;
        let q = self.field.order() as u64;
        let count = q.pow(digits as u32);
        (0..count).map(move |mut idx| {
            let mut gammas = Vec::with_capacity(digits);
            for _ in 0..digits {
                gammas.push(FieldElem((idx % q) as u32));
                idx /= q;
            }
            self.from_theta_adic(&gammas)
        })
    }

    // ---- Galois group ----

    fn sigma_raw(&self, a: RingElem) -> RingElem {
        match self.kind {
            Kind::Quasi => {
                let x = self.decode(a);
                let mut c = [0u32; MAX_COORDS];
                for i in 0..self.ncoords {
                    c[i] = self.field.frobenius(FieldElem(x[i]), 1).0;
                }
                self.encode(&c)
            }
            Kind::Galois { .. } => {
                let digits: Vec<FieldElem> = self
                    .theta_adic(a)
                    .into_iter()
                    .map(|g| self.field.frobenius(g, 1))
                    .collect();
                self.from_theta_adic(&digits)
            }
        }
    }

    /// `sigma^h(a)` where `sigma` raises every theta-adic digit to the `q`-th power.
    pub fn sigma(&self, a: RingElem, h: u32) -> RingElem {
        let h = h % self.spec.m;
        let mut x = a;
        for _ in 0..h {
            x = match &self.sigma_table {
                Some(t) => RingElem(t[x.0 as usize]),
                None => self.sigma_raw(x),
            };
        }
        x
    }

    /// `sum_{i<m} sigma^i(a)`, an element of the fixed subring.
    pub fn trace(&self, a: RingElem) -> RingElem {
        let mut acc = RingElem::ZERO;
        let mut x = a;
        for _ in 0..self.spec.m {
            acc = self.add(acc, x);
            x = self.sigma(x, 1);
        }
        acc
    }

    pub fn in_subring(&self, a: RingElem) -> bool {
        self.sigma(a, 1) == a
    }

    // ---- quotient S -> S / theta^r ----

    pub fn bar_ring(&self, r: u32) -> Result<Ring> {
        Ring::new(self.spec.bar(r)?)
    }

    /// Whether `other` is `S / theta^r` for some `r`.
    pub fn is_quotient(&self, other: &Ring) -> bool {
        other.spec.s <= self.spec.s
            && self
                .spec
                .bar(other.spec.s)
                .map(|spec| spec == other.spec)
                .unwrap_or(false)
    }

    fn check_quotient(&self, bar: &Ring) -> Result<()> {
        if self.is_quotient(bar) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub(crate) fn reduce_to(&self, bar: &Ring, a: RingElem) -> RingElem {
        let x = self.decode(a);
        let mut c = [0u32; MAX_COORDS];
        match self.kind {
            Kind::Galois { .. } => {
                for i in 0..self.ncoords {
                    c[i] = x[i] % bar.radix;
                }
            }
            Kind::Quasi => c[..bar.ncoords].copy_from_slice(&x[..bar.ncoords]),
        }
        bar.encode(&c)
    }

    /// The reduction `S -> S / theta^r`.
    pub fn bar(&self, bar: &Ring, a: RingElem) -> Result<RingElem> {
        self.check_quotient(bar)?;
        Ok(self.reduce_to(bar, a))
    }

    /// Coordinatewise preimage of `a` in `S`.
    pub(crate) fn lift_from(&self, bar: &Ring, a: RingElem) -> RingElem {
        let mut c = [0u32; MAX_COORDS];
        let x = bar.decode(a);
        c[..bar.ncoords].copy_from_slice(&x[..bar.ncoords]);
        self.encode(&c)
    }

    /// The section of `bar` onto `Gamma_{r-1}(S)[theta]`: keep the `r`
    /// theta-adic digits of `a` and lift them with Teichmüller representatives.
    pub fn teichmuller_section(&self, bar: &Ring, a: RingElem) -> Result<RingElem> {
        self.check_quotient(bar)?;
        Ok(self.from_theta_adic(&bar.theta_adic(a)))
    }

    /// `chi(a) = theta^{s-r} * iota(a)`, the module embedding of `S/theta^r` into `S`.
    pub fn chi(&self, bar: &Ring, a: RingElem) -> Result<RingElem> {
        let lift = self.teichmuller_section(bar, a)?;
        Ok(self.mul_theta_pow(lift, self.spec.s - bar.spec.s))
    }

    /// `chi` without the quotient check, through a coordinatewise lift.
    /// `theta^{s-r} y` depends only on `y mod theta^r`, so any lift works.
    pub(crate) fn chi_unchecked(&self, bar: &Ring, a: RingElem) -> RingElem {
        self.mul_theta_pow(self.lift_from(bar, a), self.spec.s - bar.spec.s)
    }

    // ---- fixed subring R ----

    pub fn subring(&self) -> Result<Ring> {
        Ring::new(self.spec.subring())
    }

    pub(crate) fn is_subring(&self, sub: &Ring) -> bool {
        sub.spec == self.spec.subring()
    }

    /// Inclusion `R -> S`.
    pub fn from_subring(&self, sub: &Ring, a: RingElem) -> Result<RingElem> {
        if !self.is_subring(sub) {
            return Err(Error::RingMismatch);
        }
        Ok(self.from_subring_unchecked(sub, a))
    }

    pub(crate) fn from_subring_unchecked(&self, sub: &Ring, a: RingElem) -> RingElem {
        match self.kind {
            Kind::Galois { .. } => RingElem(a.0),
            Kind::Quasi => {
                let x = sub.decode(a);
                let mut c = [0u32; MAX_COORDS];
                c[..self.ncoords].copy_from_slice(&x[..self.ncoords]);
                self.encode(&c)
            }
        }
    }

    /// `a` as an element of `R`, if it lies there.
    pub fn to_subring(&self, sub: &Ring, a: RingElem) -> Option<RingElem> {
        let x = self.decode(a);
        let fits = match self.kind {
            Kind::Galois { .. } => x[1..self.ncoords].iter().all(|&v| v == 0),
            Kind::Quasi => x[..self.ncoords].iter().all(|&v| v < self.spec.p),
        };
        if !fits {
            return None;
        }
        let mut c = [0u32; MAX_COORDS];
        c[..sub.ncoords].copy_from_slice(&x[..sub.ncoords]);
        Some(sub.encode(&c))
    }

    /// The fixed `R`-basis of `S`: powers of the root of the modulus
    /// (Galois ring) or of the residue-field generator (quasi-Galois ring).
    pub fn subring_basis(&self) -> Vec<RingElem> {
        (0..self.spec.m as usize)
            .map(|j| {
                let mut c = [0u32; MAX_COORDS];
                match self.kind {
                    Kind::Galois { .. } => c[j] = 1,
                    Kind::Quasi => c[0] = self.spec.p.pow(j as u32),
                }
                self.encode(&c)
            })
            .collect()
    }

    /// Coordinates of `a` in [`Ring::subring_basis`], as elements of `R`.
    pub fn subring_coords(&self, sub: &Ring, a: RingElem) -> Vec<RingElem> {
        let x = self.decode(a);
        let m = self.spec.m as usize;
        match self.kind {
            Kind::Galois { .. } => (0..m).map(|j| RingElem(x[j])).collect(),
            Kind::Quasi => {
                let p = self.spec.p;
                (0..m)
                    .map(|j| {
                        let mut c = [0u32; MAX_COORDS];
                        for t in 0..self.ncoords {
                            c[t] = (x[t] / p.pow(j as u32)) % p;
                        }
                        sub.encode(&c)
                    })
                    .collect()
            }
        }
    }
}

fn poly_string(coeffs: &[u32], digit: impl Fn(u32) -> String, var: &str) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let d = digit(c);
            match i {
                0 => d,
                1 if d == "1" => var.to_string(),
                1 => format!("{d}{var}"),
                _ if d == "1" => format!("{var}^{i}"),
                _ => format!("{d}{var}^{i}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr42() -> Ring {
        Ring::new(RingSpec::galois(2, 2, 2).with_modulus(vec![1, 1, 1])).unwrap()
    }

    fn x_of(ring: &Ring) -> RingElem {
        ring.from_coords(&[0, 1]).unwrap()
    }

    #[test]
    fn construction_sizes() {
        let z4 = Ring::new(RingSpec::integers(2, 2)).unwrap();
        assert_eq!(z4.size(), 4);
        let gr = gr42();
        assert_eq!(gr.size(), 16);
        assert_eq!(gr.theta(), gr.from_int(2));
        assert!(gr.mul(gr.theta(), gr.theta()).is_zero());
        let q = Ring::new(RingSpec::quasi(2, 3, 1)).unwrap();
        assert_eq!(q.size(), 8);
        let t = q.theta();
        assert!(!q.mul(t, t).is_zero());
        assert!(q.pow(t, 3).is_zero());
    }

    #[test]
    fn construction_errors() {
        let reducible = RingSpec::galois(2, 2, 2).with_modulus(vec![1, 0, 1]);
        assert!(matches!(
            Ring::new(reducible),
            Err(Error::ReducibleModulus(_))
        ));
        assert!(matches!(
            Ring::new(RingSpec::integers(2, 25)),
            Err(Error::SizeExceeded { .. })
        ));
        assert!(matches!(
            Ring::new(RingSpec::integers(4, 2)),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn arithmetic_examples() {
        let z8 = Ring::new(RingSpec::integers(2, 3)).unwrap();
        assert_eq!(z8.mul(z8.from_int(3), z8.from_int(3)), z8.one());

        let gr = gr42();
        let x = x_of(&gr);
        assert_eq!(gr.mul(x, x), gr.from_coords(&[3, 3]).unwrap());

        let q = Ring::new(RingSpec::quasi(2, 3, 1)).unwrap();
        let a = q.from_coords(&[1, 1]).unwrap();
        let b = q.from_coords(&[1, 1, 1]).unwrap();
        assert_eq!(q.mul(a, b), q.one());
        assert_eq!(q.mul(a, a), q.from_coords(&[1, 0, 1]).unwrap());
    }

    #[test]
    fn inverse_of_non_unit_is_an_error() {
        let z8 = Ring::new(RingSpec::integers(2, 3)).unwrap();
        assert_eq!(z8.inv_unit(z8.from_int(4)), Err(Error::NotUnit(2)));
        assert_eq!(z8.inv_unit(z8.from_int(3)), Ok(z8.from_int(3)));
    }

    #[test]
    fn valuation_examples() {
        let z8 = Ring::new(RingSpec::integers(2, 3)).unwrap();
        assert_eq!(z8.valuation(z8.from_int(4)), 2);
        assert_eq!(z8.valuation(z8.zero()), 3);
        let gr = gr42();
        let e = gr.from_coords(&[2, 2]).unwrap();
        assert_eq!(gr.valuation(e), 1);
    }

    #[test]
    fn teichmuller_examples() {
        let z9 = Ring::new(RingSpec::integers(3, 2)).unwrap();
        let two = z9.residue_field().from_int(2);
        assert_eq!(z9.teichmuller_lift(two), z9.from_int(8));
        assert_eq!(
            z9.theta_adic(z9.from_int(2)),
            vec![two, z9.residue_field().one()]
        );

        let z8 = Ring::new(RingSpec::integers(2, 3)).unwrap();
        let one = z8.residue_field().one();
        assert_eq!(
            z8.theta_adic(z8.from_int(6)),
            vec![FieldElem::ZERO, one, one]
        );
        assert_eq!(z8.deg_theta(z8.zero()), None);
        assert_eq!(z8.deg_theta(z8.from_int(6)), Some(2));
    }

    #[test]
    fn bar_and_chi_examples() {
        let z8 = Ring::new(RingSpec::integers(2, 3)).unwrap();
        let z4 = z8.bar_ring(2).unwrap();
        assert_eq!(z8.bar(&z4, z8.from_int(6)).unwrap(), z4.from_int(2));
        let z2 = z8.bar_ring(1).unwrap();
        assert_eq!(z8.bar(&z2, z8.from_int(5)).unwrap(), z2.one());
        assert_eq!(z8.chi(&z4, z4.from_int(3)).unwrap(), z8.from_int(6));
        assert_eq!(z8.chi(&z4, z4.zero()).unwrap(), z8.zero());

        let z4b = Ring::new(RingSpec::integers(2, 2)).unwrap();
        let z2b = z4b.bar_ring(1).unwrap();
        assert_eq!(z4b.chi(&z2b, z2b.one()).unwrap(), z4b.from_int(2));
        assert_eq!(z4b.chi(&z8, z8.one()), Err(Error::RingMismatch));

        let gr = gr42();
        let f4 = gr.bar_ring(1).unwrap();
        let e = gr.from_coords(&[3, 2]).unwrap();
        assert_eq!(gr.bar(&f4, e).unwrap(), f4.from_coords(&[1, 0]).unwrap());
    }

    #[test]
    fn sigma_and_trace_examples() {
        let gr = gr42();
        let x = x_of(&gr);
        assert_eq!(gr.sigma(x, 1), gr.from_coords(&[3, 3]).unwrap());
        assert_eq!(gr.trace(x), gr.from_int(3));
        assert!(!gr.in_subring(gr.from_coords(&[0, 2]).unwrap()));
        assert!(gr.in_subring(gr.from_int(3)));
        let z8 = Ring::new(RingSpec::integers(2, 3)).unwrap();
        assert_eq!(z8.sigma(z8.from_int(5), 1), z8.from_int(5));
    }

    #[test]
    fn gamma_set_examples() {
        let z8 = Ring::new(RingSpec::integers(2, 3)).unwrap();
        let g: Vec<_> = z8.gamma_set(Some(0)).collect();
        assert_eq!(g, vec![z8.zero(), z8.one()]);
        let z9 = Ring::new(RingSpec::integers(3, 2)).unwrap();
        let mut g: Vec<_> = z9.gamma_set(Some(0)).map(|e| e.index()).collect();
        g.sort();
        assert_eq!(g, vec![0, 1, 8]);
        assert_eq!(z9.gamma_set(None).collect::<Vec<_>>(), vec![z9.zero()]);
    }

    #[test]
    fn subring_coordinates() {
        let gr = gr42();
        let r = gr.subring().unwrap();
        let e = gr.from_coords(&[3, 2]).unwrap();
        let coords = gr.subring_coords(&r, e);
        let rebuilt = gr.sum(
            coords
                .iter()
                .zip(gr.subring_basis())
                .map(|(&c, b)| gr.mul(gr.from_subring(&r, c).unwrap(), b)),
        );
        assert_eq!(rebuilt, e);
        assert_eq!(gr.to_subring(&r, gr.from_int(3)), Some(r.from_int(3)));
        assert_eq!(gr.to_subring(&r, e), None);
    }

    #[test]
    fn display() {
        let gr = gr42();
        assert_eq!(gr.format(gr.from_coords(&[3, 3]).unwrap()), "3x+3");
        assert_eq!(gr.to_string(), "GR(2^2, 2)");
        let q = Ring::new(RingSpec::quasi(2, 3, 1)).unwrap();
        assert_eq!(q.format(q.from_coords(&[1, 0, 1]).unwrap()), "θ^2+1");
    }
}
