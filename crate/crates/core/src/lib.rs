//! Exact intersection-theoretic computations for Frobenius pushforwards.
//!
//! The pipeline: a [`catalog::VarietySpec`] supplies Chern generators and top
//! intersection numbers; [`classes`] builds the Todd class; [`frobpush`] forms
//! `ch(F^e_* O_X)`, its endomorphism character, and integrates against the
//! Todd class to get `χ(End F^e_* O_X)`, either at a given `q = p^e` or as an
//! exact polynomial in `q`. [`diffop`] works with differential operators on
//! `F_p[t]` as matrices over the `p^e`-th power subring.

pub mod catalog;
pub mod chow;
pub mod classes;
pub mod diffop;
pub mod error;
pub mod frobpush;
pub mod rational;
pub mod reproduce;

pub use catalog::{Family, TiltingVerdict, VarietySpec, Verdict};
pub use chow::{integrate, GradedElement, Generator, Generators, IntersectionTable, Monomial};
pub use classes::{ChernCharacter, ToddClass};
pub use error::{Error, Result};
pub use frobpush::{chi_frob_end, chi_symbolic, FrobParams, QPolynomial};
