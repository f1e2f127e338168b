//! Exact linear codes over mixed alphabets of finite chain rings.

pub mod error;
pub mod field;
pub mod galois;
pub mod gray;
pub mod io;
pub mod linalg;
pub mod mixed;
pub mod ring;

pub use error::{Error, Result};
pub use field::{Field, FieldElem, FieldSpec};
pub use ring::{Family, Ring, RingElem, RingSpec};
