//! Exact fiberwise checks for representations up to homotopy of finite
//! groupoids and for shifted contact data on Lie groupoid fibers.
//!
//! Everything is computed over ℚ with arbitrary-precision rationals, so every
//! verdict is exact.
//!
//! * [`exactq`]: rational matrices, elimination, kernels and images.
//! * [`homalg`]: graded spaces, cochain complexes, maps, cones and homotopies.
//! * [`groupoid`]: finite groupoids and their nerves.
//! * [`ruth`]: representations up to homotopy, their coherence check and the
//!   dual, tensor, twisted dual, cone and semidirect-product constructions.
//! * [`shifted`]: non-degeneracy of 0-shifted and +1-shifted forms at a fiber.
//! * [`problem`], [`batch`], [`catalog`]: the JSON problem format, batch
//!   runner and built-in examples.
//!
//! ```
//! use fiberq::catalog::nonreg_example;
//! use fiberq::exactq::int;
//!
//! let p = nonreg_example(&int(0), &int(1));
//! assert!(p.check().unwrap().passes);
//! ```

pub mod batch;
pub mod catalog;
pub mod exactq;
pub mod groupoid;
pub mod homalg;
pub mod problem;
pub mod ruth;
pub mod shifted;

// Runs the code blocks of the guide as doc tests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/groupoids.md")]
    mod groupoids {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/shifted-forms.md")]
    mod shifted_forms {}
    #[doc = include_str!("../../../book/src/problem-files.md")]
    mod problem_files {}
}
