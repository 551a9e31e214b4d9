//! The 2 × 2^n integer matrix invariant of an n-punctured ball tangle,
//! assembled from the 2^{n+1} closure brackets, and its sign-canonical
//! representative modulo ±1.
//!
//! Column k fills the holes with fundamental tangles according to the
//! k-th tuple of the dictionary order on {1,2}^n (1 = vertical arcs,
//! 2 = horizontal arcs); row 1 takes the numerator closure and row 2
//! the denominator closure. Entry (1,k) carries a phase factor A^{-2t_k}
//! and entry (2,k) a factor A^{-2t_k+2}, where t_k counts the
//! coordinates equal to 2. A common eighth root of unity is then divided
//! out; a diagram for which no such root makes every entry integral is
//! rejected.

use std::fmt;

use thiserror::Error;

use crate::bracket::{bracket_with_limit, BracketError, MAX_CROSSINGS};
use crate::combinatorics::{t_sequence, unrank, IntMatrix};
use crate::cyclotomic::ZPhi;
use crate::diagram::{Closure, Fundamental, TangleDiagram};

/// Largest hole count accepted by [`compute_f`]; 2^{n+1} state sums are
/// evaluated.
pub const MAX_HOLES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{0}")]
    Bracket(#[from] BracketError),
    #[error("{0}")]
    Diagram(#[from] crate::diagram::DiagramError),
    #[error("diagram has {0} holes, the invariant guard allows at most {1}")]
    TooManyHoles(usize, usize),
    #[error("invariant needs 4 outer points and 4-point holes, got outer {outer}, holes {holes:?}")]
    WrongArity { outer: usize, holes: Vec<usize> },
    #[error("no common phase makes the matrix integral (column {col}, row {row}); the diagram is not a consistent tangle")]
    PhaseIncoherent { row: usize, col: usize },
}

/// A 2 × 2^n integer matrix modulo ±1, stored as the representative
/// whose first nonzero entry in row-major order is positive.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PMatrix {
    m: IntMatrix,
}

impl PMatrix {
    /// Number of matrix columns (a power of two).
    pub fn cols(&self) -> usize {
        self.m.cols
    }

    /// log2 of the column count: the hole count of the tangles this
    /// matrix describes.
    pub fn holes(&self) -> usize {
        self.m.cols.trailing_zeros() as usize
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.m.get(row, col)
    }

    pub fn as_int_matrix(&self) -> &IntMatrix {
        &self.m
    }

    /// The column vector [p; q] as a pair; only for 2x1 matrices.
    pub fn as_pair(&self) -> Option<(i64, i64)> {
        if self.m.cols == 1 {
            Some((self.m.get(0, 0), self.m.get(1, 0)))
        } else {
            None
        }
    }

    pub fn from_pair(p: i64, q: i64) -> PMatrix {
        canonicalize(IntMatrix::from_rows(vec![vec![p], vec![q]]))
    }

    pub fn from_rows(r0: Vec<i64>, r1: Vec<i64>) -> PMatrix {
        assert_eq!(r0.len(), r1.len());
        assert!(r0.len().is_power_of_two(), "column count must be a power of two");
        canonicalize(IntMatrix::from_rows(vec![r0, r1]))
    }

    pub fn is_zero(&self) -> bool {
        self.m.entries().iter().all(|&v| v == 0)
    }
}

impl fmt::Display for PMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.cols == 1 {
            return write!(f, "[{};{}]", self.m.get(0, 0), self.m.get(1, 0));
        }
        let row = |r: usize| {
            self.m.row(r).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        };
        write!(f, "[[{}],[{}]]", row(0), row(1))
    }
}

/// Sign-normalizes a 2-row matrix: flips the sign iff the first nonzero
/// entry in row-major order is negative. The zero matrix is fixed.
pub fn canonicalize(m: IntMatrix) -> PMatrix {
    assert_eq!(m.rows, 2, "invariant matrices have two rows");
    match m.entries().iter().find(|&&v| v != 0) {
        Some(&v) if v < 0 => PMatrix { m: m.neg() },
        _ => PMatrix { m },
    }
}

/// The invariant of an n-punctured ball tangle diagram with 4-point
/// boundaries, n ≤ 5.
pub fn compute_f(d: &TangleDiagram) -> Result<PMatrix, InvariantError> {
    compute_f_with_limit(d, MAX_CROSSINGS)
}

pub fn compute_f_with_limit(d: &TangleDiagram, limit: usize) -> Result<PMatrix, InvariantError> {
    let brackets = closure_brackets_with_limit(d, limit)?;
    assemble(&brackets)
}

/// The 2 × 2^n array of closure brackets of a punctured tangle, before
/// phase alignment: entry (i, k) is the bracket of the k-th filling
/// closed by the numerator (i = 0) or denominator (i = 1) closure.
pub fn closure_brackets(d: &TangleDiagram) -> Result<[Vec<ZPhi>; 2], InvariantError> {
    closure_brackets_with_limit(d, MAX_CROSSINGS)
}

pub fn closure_brackets_with_limit(
    d: &TangleDiagram,
    limit: usize,
) -> Result<[Vec<ZPhi>; 2], InvariantError> {
    let n = d.holes();
    if n > MAX_HOLES {
        return Err(InvariantError::TooManyHoles(n, MAX_HOLES));
    }
    if d.outer_points() != 4 || (1..=n).any(|h| d.hole_points(h) != 4) {
        return Err(InvariantError::WrongArity {
            outer: d.outer_points(),
            holes: (1..=n).map(|h| d.hole_points(h)).collect(),
        });
    }
    let bounds = vec![2usize; n];
    let cols = 1usize << n;
    let mut rows = [Vec::with_capacity(cols), Vec::with_capacity(cols)];
    for k in 1..=cols {
        let alpha = unrank(k, &bounds).expect("column index in range");
        let fillers: Vec<TangleDiagram> = alpha
            .iter()
            .map(|&a| {
                TangleDiagram::fundamental(if a == 1 { Fundamental::One } else { Fundamental::Two })
            })
            .collect();
        let filled = d.fill(&fillers)?;
        rows[0].push(bracket_with_limit(&filled.close(Closure::Numerator)?, limit)?);
        rows[1].push(bracket_with_limit(&filled.close(Closure::Denominator)?, limit)?);
    }
    Ok(rows)
}

/// Applies the phase factors, divides out the common root of unity and
/// sign-normalizes.
fn assemble(brackets: &[Vec<ZPhi>; 2]) -> Result<PMatrix, InvariantError> {
    let cols = brackets[0].len();
    let n = cols.trailing_zeros() as usize;
    let t = t_sequence(n);
    let mut phased = IntMatrixPhased::new(cols);
    for k in 0..cols {
        let tk = t[k] as i64;
        phased.set(0, k, brackets[0][k].mul_power(-2 * tk));
        phased.set(1, k, brackets[1][k].mul_power(-2 * tk + 2));
    }
    // The first nonzero entry pins the common phase; the remaining
    // entries are validated rather than searched.
    let pivot = phased.first_nonzero();
    let shift = match pivot {
        None => 0, // the all-zero matrix takes z = 1
        Some((r, c)) => phased.get(r, c).phase as i64,
    };
    let mut m = IntMatrix::zeros(2, cols);
    for r in 0..2 {
        for c in 0..cols {
            let aligned = phased.get(r, c).mul_power(-shift);
            if aligned.phase != 0 {
                return Err(InvariantError::PhaseIncoherent { row: r + 1, col: c + 1 });
            }
            m.set(r, c, aligned.magnitude);
        }
    }
    Ok(canonicalize(m))
}

struct IntMatrixPhased {
    cols: usize,
    data: Vec<ZPhi>,
}

impl IntMatrixPhased {
    fn new(cols: usize) -> IntMatrixPhased {
        IntMatrixPhased { cols, data: vec![ZPhi::ZERO; 2 * cols] }
    }
    fn set(&mut self, r: usize, c: usize, v: ZPhi) {
        self.data[r * self.cols + c] = v;
    }
    fn get(&self, r: usize, c: usize) -> ZPhi {
        self.data[r * self.cols + c]
    }
    fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|z| !z.is_zero())
            .map(|i| (i / self.cols, i % self.cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{elaborate, parse_expr};

    fn f_of(text: &str) -> PMatrix {
        compute_f(&elaborate(&parse_expr(text).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn identity_spherical_tangle() {
        assert_eq!(f_of("I"), PMatrix::from_rows(vec![1, 0], vec![0, 1]));
    }

    #[test]
    fn fundamental_tangles() {
        assert_eq!(f_of("inf"), PMatrix::from_pair(1, 0));
        assert_eq!(f_of("zero"), PMatrix::from_pair(0, 1));
    }

    #[test]
    fn twists() {
        assert_eq!(f_of("htwist(1)"), PMatrix::from_pair(1, 1));
        assert_eq!(f_of("mirror(htwist(1))"), PMatrix::from_pair(1, -1));
        for p in -3..=3 {
            assert_eq!(f_of(&format!("htwist({p})")), PMatrix::from_pair(p, 1));
            assert_eq!(f_of(&format!("vtwist({p})")), PMatrix::from_pair(1, p));
        }
    }

    #[test]
    fn connect_sum_values() {
        assert_eq!(f_of("hsum(htwist(1),htwist(1))"), PMatrix::from_pair(2, 1));
        assert_eq!(f_of("hsum(vtwist(3),inf)"), PMatrix::from_pair(3, 0));
        assert_eq!(f_of("hsum(inf,inf)"), PMatrix::from_pair(0, 0));
    }

    #[test]
    fn lower_twist_spherical_tangle() {
        let b = f_of("vsum(htwist(1),I)");
        assert_eq!(b, PMatrix::from_rows(vec![1, 0], vec![1, 1]));
        let bb = f_of("compose(vsum(htwist(1),I),vsum(htwist(1),I))");
        assert_eq!(bb, PMatrix::from_rows(vec![1, 0], vec![2, 1]));
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(
            canonicalize(IntMatrix::from_rows(vec![vec![-1, 0], vec![0, -1]])),
            PMatrix::from_rows(vec![1, 0], vec![0, 1])
        );
        let zero = canonicalize(IntMatrix::from_rows(vec![vec![0, 0], vec![0, 0]]));
        assert!(zero.is_zero());
        assert_eq!(
            canonicalize(IntMatrix::from_rows(vec![vec![0, -3], vec![5, 0]])),
            PMatrix { m: IntMatrix::from_rows(vec![vec![0, 3], vec![-5, 0]]) }
        );
    }

    #[test]
    fn rotation_acts_as_stated_on_columns() {
        // [p;q] -> [q;-p] under a quarter turn
        assert_eq!(f_of("rot(htwist(2))"), PMatrix::from_pair(1, -2));
        assert_eq!(f_of("rot(rot(rot(rot(htwist(2)))))"), f_of("htwist(2)"));
    }

    #[test]
    fn double_mirror_and_double_swap_fix_the_invariant() {
        for text in ["vsum(htwist(1),I)", "compose(vsum(htwist(2),I),I)"] {
            let base = f_of(text);
            assert_eq!(f_of(&format!("mirror(mirror({text}))")), base);
            assert_eq!(f_of(&format!("swap(swap({text}))")), base);
        }
    }

    #[test]
    fn kink_insertion_fixes_the_invariant() {
        let d = elaborate(&parse_expr("vsum(htwist(1),I)").unwrap()).unwrap();
        let base = compute_f(&d).unwrap();
        for idx in 0..d.arc_count() {
            for positive in [true, false] {
                let kinked = d.insert_kink(idx, positive).unwrap();
                assert_eq!(compute_f(&kinked).unwrap(), base);
            }
        }
    }

    #[test]
    fn phase_incoherent_diagram_is_rejected() {
        // two chords crossing without a crossing: not a tangle diagram
        let text = "outer: 4\ncrossings: 0\narc: outer.1 outer.3\narc: outer.2 outer.4\n";
        let d = crate::diagram::parse_raw(text).unwrap();
        assert!(matches!(
            compute_f(&d),
            Err(InvariantError::PhaseIncoherent { .. })
        ));
    }

    #[test]
    fn hole_guard() {
        let mut e = String::from("I");
        for _ in 0..6 {
            e = format!("hsum({e},I)");
        }
        let d = elaborate(&parse_expr(&e).unwrap()).unwrap();
        assert_eq!(d.holes(), 7);
        assert!(matches!(compute_f(&d), Err(InvariantError::TooManyHoles(7, 5))));
    }
}
