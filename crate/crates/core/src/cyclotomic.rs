//! Exact arithmetic in Z[A]/(A^4 + 1), the ring generated by the eighth
//! root of unity A = e^{iπ/4}, together with the normalized monomial form
//! p·A^k used for bracket values.
//!
//! All sums of bracket state terms live in the full rank-4 ring; only the
//! final total is converted to the monomial form. Arithmetic is checked:
//! overflow aborts instead of wrapping.

use thiserror::Error;

/// Element c0 + c1·A + c2·A² + c3·A³ with A⁴ = −1.
///
/// The four coefficients are a unique representation; reduction by
/// A⁴ = −1 is applied eagerly during multiplication.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct CycInt {
    pub c: [i64; 4],
}

/// Raised when a ring element that should be a monomial p·A^k has two or
/// more nonzero coefficients. For bracket totals of valid diagrams this
/// signals a phase-coherence bug or an invalid (non-planar) input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a monomial in A: coefficients {0:?}")]
pub struct NotMonomial(pub [i64; 4]);

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow in cyclotomic addition")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in cyclotomic multiplication")
}

impl CycInt {
    pub const ZERO: CycInt = CycInt { c: [0; 4] };
    pub const ONE: CycInt = CycInt { c: [1, 0, 0, 0] };

    pub fn new(c0: i64, c1: i64, c2: i64, c3: i64) -> CycInt {
        CycInt { c: [c0, c1, c2, c3] }
    }

    pub fn from_int(n: i64) -> CycInt {
        CycInt { c: [n, 0, 0, 0] }
    }

    /// A^e for any integer exponent, using A⁸ = 1 and A⁴ = −1.
    pub fn unit_power(e: i64) -> CycInt {
        let e = e.rem_euclid(8) as usize;
        let mut c = [0i64; 4];
        if e < 4 {
            c[e] = 1;
        } else {
            c[e - 4] = -1;
        }
        CycInt { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0; 4]
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        let mut c = [0i64; 4];
        for k in 0..4 {
            c[k] = checked_add(self.c[k], other.c[k]);
        }
        CycInt { c }
    }

    pub fn neg(&self) -> CycInt {
        let mut c = [0i64; 4];
        for k in 0..4 {
            c[k] = self.c[k].checked_neg().expect("integer overflow negating cyclotomic");
        }
        CycInt { c }
    }

    pub fn sub(&self, other: &CycInt) -> CycInt {
        self.add(&other.neg())
    }

    /// Polynomial product reduced by A⁴ = −1.
    pub fn mul(&self, other: &CycInt) -> CycInt {
        let mut c = [0i64; 4];
        for i in 0..4 {
            if self.c[i] == 0 {
                continue;
            }
            for j in 0..4 {
                if other.c[j] == 0 {
                    continue;
                }
                let term = checked_mul(self.c[i], other.c[j]);
                let deg = i + j;
                if deg < 4 {
                    c[deg] = checked_add(c[deg], term);
                } else {
                    c[deg - 4] = checked_add(c[deg - 4], -term);
                }
            }
        }
        CycInt { c }
    }

    /// Adds p·A^e into an accumulator, with e an arbitrary integer.
    pub fn add_monomial(&mut self, p: i64, e: i64) {
        let e = e.rem_euclid(8) as usize;
        if e < 4 {
            self.c[e] = checked_add(self.c[e], p);
        } else {
            self.c[e - 4] = checked_add(self.c[e - 4], -p);
        }
    }
}

/// Normalized p·A^k with k ∈ {0,1,2,3}; zero is canonically (0, 0).
///
/// |p| is the magnitude of the value since |A| = 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ZPhi {
    pub magnitude: i64,
    pub phase: u8,
}

impl ZPhi {
    pub const ZERO: ZPhi = ZPhi { magnitude: 0, phase: 0 };

    pub fn new(magnitude: i64, phase: u8) -> ZPhi {
        if magnitude == 0 {
            ZPhi::ZERO
        } else {
            ZPhi { magnitude, phase: phase % 4 }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.magnitude == 0
    }

    /// Multiplies by A^e, renormalizing the phase into {0..3} and
    /// absorbing A^{k+4} = −A^k into the sign of the magnitude.
    pub fn mul_power(&self, e: i64) -> ZPhi {
        if self.magnitude == 0 {
            return ZPhi::ZERO;
        }
        let total = (self.phase as i64 + e).rem_euclid(8);
        if total < 4 {
            ZPhi { magnitude: self.magnitude, phase: total as u8 }
        } else {
            ZPhi {
                magnitude: self.magnitude.checked_neg().expect("overflow in phase shift"),
                phase: (total - 4) as u8,
            }
        }
    }

    pub fn mul(&self, other: &ZPhi) -> ZPhi {
        if self.magnitude == 0 || other.magnitude == 0 {
            return ZPhi::ZERO;
        }
        ZPhi::new(checked_mul(self.magnitude, other.magnitude), 0).mul_power(self.phase as i64 + other.phase as i64)
    }

    pub fn to_cyc(&self) -> CycInt {
        let mut c = CycInt::ZERO;
        c.add_monomial(self.magnitude, self.phase as i64);
        c
    }
}

/// Converts a ring element of the form p·A^k to its normalized monomial
/// form. Elements with two or more nonzero coefficients are rejected.
pub fn to_zphi(a: &CycInt) -> Result<ZPhi, NotMonomial> {
    let mut found: Option<(i64, u8)> = None;
    for (k, &ck) in a.c.iter().enumerate() {
        if ck != 0 {
            if found.is_some() {
                return Err(NotMonomial(a.c));
            }
            found = Some((ck, k as u8));
        }
    }
    Ok(match found {
        None => ZPhi::ZERO,
        Some((p, k)) => ZPhi { magnitude: p, phase: k },
    })
}
