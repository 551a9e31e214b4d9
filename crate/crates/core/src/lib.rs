//! Exact-arithmetic invariants of punctured ball tangles.
//!
//! A ball tangle is a 1-manifold properly embedded in a ball meeting the
//! boundary in four marked points; an n-punctured ball tangle lives in a
//! ball with n open sub-balls removed, meeting every boundary sphere in
//! four points. The Kauffman bracket evaluated at A = e^{iπ/4} kills
//! every state with more than one circle, which makes the bracket of a
//! link an integer times an eighth root of unity. Packaging the
//! 2^{n+1} closure brackets of a punctured tangle into a 2 × 2^n integer
//! matrix modulo ±1 yields an isotopy invariant that turns hole-filling
//! into matrix multiplication against a dictionary-order product.
//!
//! The crate provides:
//!
//! - [`cyclotomic`]: exact arithmetic in Z[A]/(A⁴+1) and the normalized
//!   monomial form p·A^k,
//! - [`combinatorics`]: dictionary orders, the phase-exponent sequence
//!   and the dictionary-order (Kronecker-style) products,
//! - [`diagram`]: the combinatorial diagram model, primitive tangles,
//!   hole filling, closures, connect sums, an expression language and a
//!   raw file format,
//! - [`bracket`]: the state-sum bracket of closed diagrams,
//! - [`invariant`]: assembly of the matrix invariant,
//! - [`algebra`]: the composition/connect-sum formulas on invariants,
//!   determinant obstructions and the Krebes divisibility test,
//! - [`synthesis`]: realization of any column class by an explicit
//!   tangle,
//! - [`coxeter`]: the order-16 group generated by the elementary
//!   operations on 2x2 classes,
//! - [`random`]: seeded expression generators for the verification
//!   suites.

pub mod algebra;
pub mod bracket;
pub mod combinatorics;
pub mod coxeter;
pub mod cyclotomic;
pub mod diagram;
pub mod invariant;
pub mod random;
pub mod synthesis;

pub use algebra::SphericalMatrix;
pub use cyclotomic::{CycInt, ZPhi};
pub use diagram::{TangleDiagram, TangleExpr};
pub use invariant::{compute_f, PMatrix};
