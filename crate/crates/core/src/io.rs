//! JSON file formats for rings, mixed codes and field codes.
//!
//! A ring element is written either as an integer or as its coordinate
//! array. Integers are read through `Z -> S` for `Z_{p^s}` and as the raw
//! element index otherwise. Coordinates are `m` residues mod `p^s` for a
//! Galois ring and `s` residue-field indices for `F_{q^m}[θ]`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, FieldSpec};
use crate::gray::{FieldCode, GrayImage};
use crate::mixed::{Ambient, MixedCode, MixedMat, MixedVec};
use crate::ring::{Family, Ring, RingElem, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRepr {
    Int(i64),
    Coords(Vec<u32>),
}

impl ElemRepr {
    pub fn to_elem(&self, ring: &Ring) -> Result<RingElem> {
        match self {
            ElemRepr::Int(n) if ring.family() == Family::GaloisRing && ring.degree() == 1 => {
                Ok(ring.from_int(*n))
            }
            ElemRepr::Int(n) => {
                let idx = u32::try_from(*n)
                    .map_err(|_| Error::OutOfRange(format!("element index {n}")))?;
                ring.from_index(idx)
            }
            ElemRepr::Coords(c) => ring.from_coords(c),
        }
    }

    pub fn from_elem(ring: &Ring, x: RingElem) -> Self {
        if ring.family() == Family::GaloisRing && ring.degree() == 1 {
            ElemRepr::Int(x.index() as i64)
        } else {
            ElemRepr::Coords(ring.coords(x))
        }
    }

    pub fn to_field_elem(&self, field: &Field) -> Result<FieldElem> {
        match self {
            ElemRepr::Int(n) if field.degree() == 1 => Ok(field.from_int(*n)),
            ElemRepr::Int(n) => {
                let idx =
                    u32::try_from(*n).map_err(|_| Error::OutOfRange(format!("field index {n}")))?;
                field.from_index(idx)
            }
            ElemRepr::Coords(c) => field.from_coeffs(c),
        }
    }

    pub fn from_field_elem(field: &Field, a: FieldElem) -> Self {
        if field.degree() == 1 {
            ElemRepr::Int(a.index() as i64)
        } else {
            ElemRepr::Coords(field.coeffs(a))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsRepr {
    #[serde(default)]
    pub x: Vec<Vec<ElemRepr>>,
    #[serde(default)]
    pub y: Vec<Vec<ElemRepr>>,
}

/// `{"ring", "r", "alpha", "beta", "generators": {"x", "y"}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub ring: RingSpec,
    pub r: u32,
    pub alpha: usize,
    pub beta: usize,
    pub generators: GeneratorsRepr,
}

fn parse_rows(
    rows: &[Vec<ElemRepr>],
    count: usize,
    len: usize,
    ring: &Ring,
    block: &str,
) -> Result<Vec<Vec<RingElem>>> {
    if rows.is_empty() && len == 0 {
        return Ok(vec![Vec::new(); count]);
    }
    if rows.len() != count {
        return Err(Error::DimensionMismatch(format!(
            "{block} block has {} rows, expected {count}",
            rows.len()
        )));
    }
    rows.iter()
        .map(|row| {
            if row.len() != len {
                return Err(Error::DimensionMismatch(format!(
                    "{block} row of length {}, expected {len}",
                    row.len()
                )));
            }
            row.iter().map(|e| e.to_elem(ring)).collect()
        })
        .collect()
}

impl CodeFile {
    pub fn ambient(&self) -> Result<Ambient> {
        Ambient::new(self.ring.clone(), self.r, self.alpha, self.beta)
    }

    pub fn to_code(&self) -> Result<MixedCode> {
        let amb = self.ambient()?;
        let count = self.generators.x.len().max(self.generators.y.len());
        let x = parse_rows(&self.generators.x, count, self.alpha, amb.bar_ring(), "x")?;
        let y = parse_rows(&self.generators.y, count, self.beta, amb.ring(), "y")?;
        let rows: Vec<MixedVec> = x
            .into_iter()
            .zip(y)
            .map(|(x, y)| MixedVec::new(x, y))
            .collect();
        MixedCode::new(&amb, MixedMat::from_vecs(self.alpha, self.beta, &rows)?)
    }

    pub fn from_rows(amb: &Ambient, rows: &[MixedVec]) -> Self {
        CodeFile {
            ring: amb.ring().spec().clone(),
            r: amb.r(),
            alpha: amb.alpha(),
            beta: amb.beta(),
            generators: GeneratorsRepr {
                x: rows
                    .iter()
                    .map(|v| {
                        v.x.iter()
                            .map(|&e| ElemRepr::from_elem(amb.bar_ring(), e))
                            .collect()
                    })
                    .collect(),
                y: rows
                    .iter()
                    .map(|v| {
                        v.y.iter()
                            .map(|&e| ElemRepr::from_elem(amb.ring(), e))
                            .collect()
                    })
                    .collect(),
            },
        }
    }

    /// The code with its reduced basis as generators.
    pub fn from_code(c: &MixedCode) -> Self {
        CodeFile::from_rows(c.ambient(), &c.basis())
    }
}

pub fn vec_repr(amb: &Ambient, v: &MixedVec) -> GeneratorsRepr {
    GeneratorsRepr {
        x: vec![v
            .x
            .iter()
            .map(|&e| ElemRepr::from_elem(amb.bar_ring(), e))
            .collect()],
        y: vec![v
            .y
            .iter()
            .map(|&e| ElemRepr::from_elem(amb.ring(), e))
            .collect()],
    }
}

pub fn parse_code(json: &str) -> Result<MixedCode> {
    let file: CodeFile =
        serde_json::from_str(json).map_err(|e| Error::InvalidSpec(format!("code file: {e}")))?;
    file.to_code()
}

pub fn parse_ring(json: &str) -> Result<Ring> {
    let spec: RingSpec =
        serde_json::from_str(json).map_err(|e| Error::InvalidSpec(format!("ring file: {e}")))?;
    Ring::new(spec)
}

/// `{"field", "n", "generators"}`, plus `"linear"` for Gray images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldCodeFile {
    pub field: FieldSpec,
    pub n: usize,
    pub generators: Vec<Vec<ElemRepr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linear: Option<bool>,
}

impl FieldCodeFile {
    pub fn to_code(&self) -> Result<FieldCode> {
        let field = Arc::new(Field::new(self.field.clone())?);
        let rows = self
            .generators
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.to_field_elem(&field))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        FieldCode::new(field, self.n, rows)
    }

    pub fn from_code(c: &FieldCode) -> Self {
        let f = c.field();
        FieldCodeFile {
            field: f.spec().clone(),
            n: c.len(),
            generators: c
                .basis()
                .iter()
                .map(|r| r.iter().map(|&a| ElemRepr::from_field_elem(f, a)).collect())
                .collect(),
            linear: None,
        }
    }

    /// A linear image is written through its basis, a nonlinear one word by word.
    pub fn from_gray_image(img: &GrayImage) -> Self {
        let f = img.span().field();
        let rows: &[Vec<FieldElem>] = match img.as_field_code() {
            Some(fc) => fc.basis(),
            None => img.words(),
        };
        FieldCodeFile {
            field: f.spec().clone(),
            n: img.len(),
            generators: rows
                .iter()
                .map(|r| r.iter().map(|&a| ElemRepr::from_field_elem(f, a)).collect())
                .collect(),
            linear: Some(img.is_linear()),
        }
    }
}

pub fn parse_field_code(json: &str) -> Result<FieldCode> {
    let file: FieldCodeFile = serde_json::from_str(json)
        .map_err(|e| Error::InvalidSpec(format!("field code file: {e}")))?;
    file.to_code()
}
