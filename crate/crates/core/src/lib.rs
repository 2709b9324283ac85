//! Generalized (p,q)-trigonometric and hyperbolic functions.
//!
//! The forward maps `arcsin_{p,q}` and `arcsinh_{p,q}` are evaluated by
//! double-exponential quadrature of their defining integrals, and the
//! inverse maps `sin_{p,q}` / `sinh_{p,q}` by safeguarded Newton inversion.
//! On top of that sits a numerical engine for geometric (multiplicative)
//! convexity and a seeded verification harness for the inequalities
//!
//! ```text
//! sin_{p,q} sqrt(rs)  >= sqrt(sin_{p,q} r  * sin_{p,q} s)
//! sinh_{p,q} sqrt(rs) <= sqrt(sinh_{p,q} r * sinh_{p,q} s)
//! ```
//!
//! for `p, q > 1` and `r, s` in `(0, 1)`.

pub mod cli;
pub mod error;
pub mod geoconvex;
pub mod pq;
pub mod quadrature;
pub mod render;
pub mod sampling;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use pq::{EvalResult, PqConstants, PqParams};
