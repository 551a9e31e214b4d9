//! Constructive realization of column invariants: given a target class
//! [p;q], emit a ball-tangle expression whose invariant is that class.
//!
//! The construction runs the Euclidean algorithm on |p|, |q|. With
//! 0 < a < b and b = q₁a + r₁, the class [b;a] splits as
//! [q₁;1] +_h [r₁;a], and [r₁;a] is the mirror of the quarter turn of
//! [a;r₁]; twists realize the base cases.

use thiserror::Error;

use crate::diagram::{elaborate, ElabError, TangleExpr};
use crate::invariant::{compute_f, InvariantError, PMatrix};

/// Targets beyond this magnitude would synthesize unreasonably many
/// crossings.
pub const MAX_TARGET: i64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("target ({0},{1}) exceeds the synthesis guard of {2}")]
    TargetTooLarge(i64, i64, i64),
    #[error("{0}")]
    Elaborate(#[from] ElabError),
    #[error("{0}")]
    Invariant(#[from] InvariantError),
}

fn hsum(a: TangleExpr, b: TangleExpr) -> TangleExpr {
    TangleExpr::HSum(Box::new(a), Box::new(b))
}

fn mirror(a: TangleExpr) -> TangleExpr {
    TangleExpr::Mirror(Box::new(a))
}

fn rot(a: TangleExpr) -> TangleExpr {
    TangleExpr::Rot(Box::new(a))
}

/// [0;r] as a tangle: the quarter turn of [r;0] = vtwist(r) +_h inf.
fn zero_over(r: i64) -> TangleExpr {
    rot(hsum(TangleExpr::VTwist(r), TangleExpr::Inf))
}

/// Realizes [b;a] for b > a >= 1 by the Euclidean recursion.
fn euclid(b: i64, a: i64) -> TangleExpr {
    debug_assert!(a >= 1 && b >= a);
    let q1 = b / a;
    let r1 = b % a;
    if r1 == 0 {
        // [q1·a; a] = [q1;1] +_h [0;a]
        return hsum(TangleExpr::HTwist(q1), zero_over(a));
    }
    // [b;a] = [q1;1] +_h [r1;a], and [r1;a] = [a;r1] rotated and mirrored.
    hsum(TangleExpr::HTwist(q1), mirror(rot(euclid(a, r1))))
}

/// A ball-tangle expression over {inf, zero, htwist, vtwist, hsum, rot,
/// mirror} whose invariant is the class [p;q].
pub fn synthesize(p: i64, q: i64) -> Result<TangleExpr, SynthesisError> {
    if p.abs() > MAX_TARGET || q.abs() > MAX_TARGET {
        return Err(SynthesisError::TargetTooLarge(p, q, MAX_TARGET));
    }
    // Sign normalization: [p;q] = [|p|; ±|q|], and the mirror fixes the
    // second coordinate's sign. Track whether a final mirror is needed.
    let a = p.abs();
    let b = q.abs();
    let needs_mirror = (p < 0) ^ (q < 0);
    let base = synthesize_nonneg(a, b);
    Ok(if needs_mirror { mirror(base) } else { base })
}

fn synthesize_nonneg(p: i64, q: i64) -> TangleExpr {
    debug_assert!(p >= 0 && q >= 0);
    match (p, q) {
        (0, 0) => hsum(TangleExpr::Inf, TangleExpr::Inf),
        (1, 0) => TangleExpr::Inf,
        (0, 1) => TangleExpr::Zero,
        (_, 0) => hsum(TangleExpr::VTwist(p), TangleExpr::Inf),
        (0, _) => zero_over(q),
        (_, 1) => TangleExpr::HTwist(p),
        (1, _) => TangleExpr::VTwist(q),
        _ if p >= q => euclid(p, q),
        // p < q: [p;q] is the mirrored quarter turn of [q;p]
        _ => mirror(rot(euclid(q, p))),
    }
}

/// Elaborates the recipe and compares its invariant with the target
/// class.
pub fn verify_recipe(recipe: &TangleExpr, p: i64, q: i64) -> Result<bool, SynthesisError> {
    let d = elaborate(recipe)?;
    let got = compute_f(&d)?;
    Ok(got == PMatrix::from_pair(p, q))
}
