//! Exact arithmetic for Carlitzian multiple zeta values over F_q[θ].
//!
//! The crate is layered bottom-up: finite fields and the ring A = F_q[θ]
//! ([`field`], [`poly`], [`ratk`]), polynomials in t-variables with coefficients in
//! K ([`tpoly`]), the Carlitz sequences and twisted power sums ([`seq`],
//! [`powersum`]), multiple power sums and Bernoulli-Goss polynomials ([`mzv`], [`bg`]),
//! the skew ring K{τ} ([`skew`]), truncated Tate series ([`series`]) and the
//! registry of identity checks ([`identities`]).

pub mod arith;
pub mod bg;
pub mod error;
pub mod field;
pub mod identities;
pub mod mzv;
pub mod poly;
pub mod powersum;
pub mod ratk;
pub mod semichar;
pub mod seq;
pub mod series;
pub mod skew;
pub mod text;
pub mod tpoly;

pub use error::{Error, Result};
pub use field::{Field, FqElem};
pub use mzv::{MatrixData, Mode};
pub use poly::{APoly, Deg};
pub use ratk::{RatK, Val};
pub use semichar::SemiChar;
pub use series::TateSeries;
pub use skew::SkewPoly;
pub use tpoly::{Monomial, TPoly};
