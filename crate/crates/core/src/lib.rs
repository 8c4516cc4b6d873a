//! Exact constructions around plane cubics: polar operators and Hessians,
//! the Cayleyan curve, the two universal pencils of cubics whose members
//! carry 3-torsion symplectically (resp. anti-symplectically) isomorphic to
//! a base elliptic curve, the mod-3 Weil pairing over finite fields, and
//! the explicit genus-2 double cover tying the two sides together.
//!
//! Everything is exact: arbitrary-precision rationals, prime fields and
//! small extension fields. No floating point anywhere.

pub mod error;
pub mod field;
pub mod poly;
pub mod cubic;
pub mod ec;
pub mod fixtures;
pub mod genus2;
pub mod pencil;
pub mod polarity;

pub use error::{Error, Result};
