//! Integral simplicial homology and cohomology, cup and cap products, the
//! cap product supported on a subcomplex, and Borel-Moore homology of open
//! complements modelled as pairs `(X, Y)`.
//!
//! Sign conventions follow one fixed scheme throughout:
//!
//! * `(du)(x) = (-1)^{p+1} u(∂x)` for a `p`-cochain `u`;
//! * `(u ∪ v)[v_0..v_{p+q}] = u[v_0..v_p] · v[v_p..v_{p+q}]`;
//! * `σ ∩ u = u(front_p σ) · back_{m-p} σ`;
//! * `D(K) = Hom(K, Z)` with `(df)(x) = (-1)^{|f|+1} f(dx)`.

pub mod algebra;
pub mod bm;
pub mod bridge;
pub mod checks;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod products;

pub use error::{Error, Result};
