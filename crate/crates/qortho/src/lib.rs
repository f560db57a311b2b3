//! Sobolev-type generalized q-orthogonal polynomials.
//!
//! The crate implements the generalized little q-Jacobi polynomials
//! `P_n^{(g,x)}(z,c;q)` and generalized q-Laguerre polynomials
//! `L_n^{(g)}(z,c;q)`, their q-Bessel, little q-Laguerre and
//! Stieltjes–Wigert relatives, and the classical `q = 1` limits, together
//! with the machinery needed to study them:
//!
//! * [`qcore`] — q-numbers, q-shifted factorials, q-gamma/beta/binomial;
//! * [`hyper`] — basic hypergeometric series and polynomial coefficients;
//! * [`families`] — constructors for the nine families and their limits;
//! * [`qcalc`] — q-difference operators, the Sobolev operator `D_q^c(z^c y)`,
//!   Jackson integrals;
//! * [`recurrence`] — closed-form four-term recurrence coefficients;
//! * [`zeros`] — zeros via the recurrence pencil and via Aberth iteration,
//!   classification and interlacing;
//! * [`verify`] — residuals of q-difference equations and Sobolev orthogonality;
//! * [`precision`] — compensated arithmetic and the exact-rational mode.
//!
//! ```
//! use qortho::families::{coeffs, FamilyId, Params};
//! use qortho::zeros::aberth_roots;
//!
//! let p = Params::new(0.9, 0.5, 0.0, 1.0).unwrap();
//! let poly = coeffs(FamilyId::GenQLaguerre, 6, &p).unwrap();
//! let roots = aberth_roots(&poly, 1e-12).unwrap();
//! assert_eq!(roots.len(), 6);
//! ```

// Negated comparisons such as `!(x > -1.0)` are used on purpose: they also
// reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod families;
pub mod hyper;
pub mod precision;
pub mod qcalc;
pub mod qcore;
pub mod recurrence;
pub mod verify;
pub mod zeros;

pub use error::{QError, Result};
