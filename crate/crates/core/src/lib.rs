//! Exact computations with bigraded chain complexes over the grid rings
//! `R = F2[U,V]/(UV)` and `X`: reduction, tensor products and duals,
//! local maps, standard representatives, and the concordance-style
//! invariants they determine.

pub mod cli;
pub mod complex;
pub mod error;
pub mod examples;
pub mod invariants;
pub mod io;
pub mod localeq;
pub mod ring;
pub mod standard;
pub mod verify;

pub use complex::{FreeComplex, FuvComplex, Generator};
pub use error::{Error, Result};
pub use localeq::{standardize, standardize_complex, LocalMapCert, MapKind, Standardization};
pub use ring::{Lattice, Monomial, RingElem, RingId, Side, Sign, SignedParam};
pub use standard::{realize, SemistandardSpec, StandardSpec, Zigzag};
