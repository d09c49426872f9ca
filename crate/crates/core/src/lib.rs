//! GIT-fans of torus actions on affine varieties, in exact arithmetic.
//!
//! ```
//! use gitfan::gitfan::{traverse, TraverseOptions};
//! use gitfan::poly::{grassmannian_grading, pluecker_ideal};
//!
//! let ideal = pluecker_ideal(4).unwrap();
//! let grading = grassmannian_grading(4).unwrap();
//! let fan = traverse(&ideal, &grading, &TraverseOptions::default()).unwrap();
//! assert_eq!(fan.fan.len(), 4);
//! ```

pub mod afaces;
pub mod arith;
pub mod cli;
pub mod cone;
pub mod error;
pub mod gitfan;
pub mod groebner;
pub mod poly;
