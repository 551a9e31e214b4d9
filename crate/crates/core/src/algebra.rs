//! The invariant-level algebra: hole-filling composition, connect sums,
//! the elementary operations on 2x2 classes, determinant obstructions,
//! the Krebes divisibility test and the four-twist-box closed form.

use std::fmt;

use thiserror::Error;

use crate::combinatorics::{eta, CombinatoricsError, IntMatrix};
use crate::invariant::{canonicalize, PMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0}")]
    Combinatorics(#[from] CombinatoricsError),
    #[error("expected a 2x2 class, got 2x{0}")]
    NotSpherical(usize),
    #[error("head matrix has {cols} columns but {parts} parts were supplied")]
    PartCount { cols: usize, parts: usize },
}

/// A 2x2 integer matrix class [[α,γ],[β,δ]] modulo ±1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SphericalMatrix(PMatrix);

impl SphericalMatrix {
    pub fn new(alpha: i64, gamma: i64, beta: i64, delta: i64) -> SphericalMatrix {
        SphericalMatrix(PMatrix::from_rows(vec![alpha, gamma], vec![beta, delta]))
    }

    pub fn from_pmatrix(m: PMatrix) -> Result<SphericalMatrix, AlgebraError> {
        if m.cols() != 2 {
            return Err(AlgebraError::NotSpherical(m.cols()));
        }
        Ok(SphericalMatrix(m))
    }

    pub fn pmatrix(&self) -> &PMatrix {
        &self.0
    }

    pub fn into_pmatrix(self) -> PMatrix {
        self.0
    }

    pub fn alpha(&self) -> i64 {
        self.0.get(0, 0)
    }
    pub fn gamma(&self) -> i64 {
        self.0.get(0, 1)
    }
    pub fn beta(&self) -> i64 {
        self.0.get(1, 0)
    }
    pub fn delta(&self) -> i64 {
        self.0.get(1, 1)
    }

    /// αδ − βγ; well defined on the ±1 class.
    pub fn det(&self) -> i64 {
        self.alpha()
            .checked_mul(self.delta())
            .and_then(|ad| self.beta().checked_mul(self.gamma()).map(|bg| (ad, bg)))
            .and_then(|(ad, bg)| ad.checked_sub(bg))
            .expect("integer overflow in determinant")
    }
}

impl fmt::Display for SphericalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Matrix product of classes; well defined modulo ±1.
pub fn pm_mul(a: &PMatrix, b: &PMatrix) -> Result<PMatrix, AlgebraError> {
    Ok(canonicalize(a.as_int_matrix().mul(b.as_int_matrix())?))
}

/// The invariant of a filled tangle from the invariants of the parts:
/// the head matrix times the dictionary-order product of the parts.
pub fn compose_fill(head: &PMatrix, parts: &[PMatrix]) -> Result<PMatrix, AlgebraError> {
    if head.cols() != 1 << parts.len() {
        return Err(AlgebraError::PartCount { cols: head.cols(), parts: parts.len() });
    }
    let mats: Vec<&IntMatrix> = parts.iter().map(|p| p.as_int_matrix()).collect();
    let big = eta(&mats)?;
    Ok(canonicalize(head.as_int_matrix().mul(&big)?))
}

/// Spherical composition at the invariant level.
pub fn compose(outer: &SphericalMatrix, inner: &SphericalMatrix) -> SphericalMatrix {
    let m = pm_mul(outer.pmatrix(), inner.pmatrix()).expect("2x2 shapes always multiply");
    SphericalMatrix::from_pmatrix(m).expect("product of 2x2 is 2x2")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in connect-sum formula")
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow in connect-sum formula")
}

/// Horizontal connect sum on invariants: block (i,j) of the result is
/// [a_{1i}b_{2j} + a_{2i}b_{1j}; a_{2i}b_{2j}].
pub fn hsum(a: &PMatrix, b: &PMatrix) -> PMatrix {
    let cols = a.cols() * b.cols();
    let mut m = IntMatrix::zeros(2, cols);
    for i in 0..a.cols() {
        for j in 0..b.cols() {
            let c = i * b.cols() + j;
            m.set(
                0,
                c,
                checked_add(
                    checked_mul(a.get(0, i), b.get(1, j)),
                    checked_mul(a.get(1, i), b.get(0, j)),
                ),
            );
            m.set(1, c, checked_mul(a.get(1, i), b.get(1, j)));
        }
    }
    canonicalize(m)
}

/// Vertical connect sum on invariants: block (i,j) is
/// [a_{1i}b_{1j}; a_{2i}b_{1j} + a_{1i}b_{2j}].
pub fn vsum(a: &PMatrix, b: &PMatrix) -> PMatrix {
    let cols = a.cols() * b.cols();
    let mut m = IntMatrix::zeros(2, cols);
    for i in 0..a.cols() {
        for j in 0..b.cols() {
            let c = i * b.cols() + j;
            m.set(0, c, checked_mul(a.get(0, i), b.get(0, j)));
            m.set(
                1,
                c,
                checked_add(
                    checked_mul(a.get(1, i), b.get(0, j)),
                    checked_mul(a.get(0, i), b.get(1, j)),
                ),
            );
        }
    }
    canonicalize(m)
}

/// The four connect sums of a ball tangle into a spherical tangle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BallSumKind {
    OuterHorizontal,
    OuterVertical,
    InnerHorizontal,
    InnerVertical,
}

/// Closed forms for the invariant of a ball tangle [p;q] connect-summed
/// with a spherical tangle; the 1st and 2nd sums of each kind agree. The
/// determinant multiplies by q² for the horizontal kinds and p² for the
/// vertical kinds.
pub fn sphere_ball_sum(v: &PMatrix, s: &SphericalMatrix, kind: BallSumKind) -> SphericalMatrix {
    let (p, q) = v.as_pair().expect("ball tangle invariant is a column");
    let (a, b, g, d) = (s.alpha(), s.beta(), s.gamma(), s.delta());
    let mul = checked_mul;
    let add = checked_add;
    let rows = match kind {
        BallSumKind::OuterHorizontal => [
            [add(mul(p, b), mul(q, a)), add(mul(p, d), mul(q, g))],
            [mul(q, b), mul(q, d)],
        ],
        BallSumKind::OuterVertical => [
            [mul(p, a), mul(p, g)],
            [add(mul(q, a), mul(p, b)), add(mul(q, g), mul(p, d))],
        ],
        BallSumKind::InnerHorizontal => [
            [mul(q, a), add(mul(p, a), mul(q, g))],
            [mul(q, b), add(mul(p, b), mul(q, d))],
        ],
        BallSumKind::InnerVertical => [
            [add(mul(q, g), mul(p, a)), mul(p, g)],
            [add(mul(q, d), mul(p, b)), mul(p, d)],
        ],
    };
    SphericalMatrix::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
}

/// The elementary operations on 2x2 classes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ElementaryOp {
    /// mirror image
    Star,
    /// inside-outside swap
    Minus,
    /// quarter turn of the inner hole
    R1,
    /// quarter turn of the outer boundary
    R2,
    /// quarter turn of the whole tangle; equals R1 then R2
    Rot,
}

/// Closed forms of the elementary operations; all preserve det.
pub fn elementary_op(s: &SphericalMatrix, op: ElementaryOp) -> SphericalMatrix {
    let (a, b, g, d) = (s.alpha(), s.beta(), s.gamma(), s.delta());
    let (r0, r1) = match op {
        ElementaryOp::Star => ([a, -g], [-b, d]),
        ElementaryOp::Minus => ([d, g], [b, a]),
        ElementaryOp::R1 => ([-g, a], [-d, b]),
        ElementaryOp::R2 => ([-b, -d], [a, g]),
        ElementaryOp::Rot => ([d, -b], [-g, a]),
    };
    SphericalMatrix::new(r0[0], r0[1], r1[0], r1[1])
}

/// det mod 4 and the realizability verdict: classes 2 and 3 cannot be
/// the determinant of a spherical tangle invariant.
pub fn det_mod4_class(s: &SphericalMatrix) -> (u8, bool) {
    let class = s.det().rem_euclid(4) as u8;
    (class, class == 2 || class == 3)
}

/// Divisibility obstruction for embedding ball tangles disjointly in a
/// link: the product of the per-tangle gcds must divide the bracket
/// magnitude. gcd(0,0) is 0, and 0 divides only 0.
pub fn krebes_check(tangles: &[(i64, i64)], bracket_magnitude: i64) -> bool {
    let m = bracket_magnitude.unsigned_abs();
    let mut product: u64 = 1;
    for &(p, q) in tangles {
        let g = gcd(p.unsigned_abs(), q.unsigned_abs());
        product = product.checked_mul(g).expect("gcd product overflow");
    }
    if product == 0 {
        m == 0
    } else {
        m % product == 0
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Invariant of the four-twist-box spherical tangle with p₁..p₄ half
/// twists; its determinant is (p₁p₄ − p₂p₃)².
pub fn j_formula(p1: i64, p2: i64, p3: i64, p4: i64) -> SphericalMatrix {
    let mul3 = |x: i64, y: i64, z: i64| checked_mul(checked_mul(x, y), z);
    let alpha = [mul3(p1, p2, p3), mul3(p1, p2, p4), mul3(p1, p3, p4), mul3(p2, p3, p4)]
        .into_iter()
        .fold(0i64, checked_add);
    let gamma = -[checked_mul(p1, p3), checked_mul(p1, p4), checked_mul(p2, p3), checked_mul(p2, p4)]
        .into_iter()
        .fold(0i64, checked_add);
    let beta = [checked_mul(p1, p2), checked_mul(p1, p4), checked_mul(p3, p2), checked_mul(p3, p4)]
        .into_iter()
        .fold(0i64, checked_add);
    let delta = -checked_add(checked_add(p1, p2), checked_add(p3, p4));
    SphericalMatrix::new(alpha, gamma, beta, delta)
}
