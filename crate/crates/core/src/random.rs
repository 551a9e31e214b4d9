//! Seeded generators of random tangle expressions, used by the
//! randomized verification suites. All sampling is done with a
//! fixed-stream generator so runs are reproducible from a seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::TangleExpr;

pub struct ExprGen {
    rng: ChaCha8Rng,
}

impl ExprGen {
    pub fn new(seed: u64) -> ExprGen {
        ExprGen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn twist_amount(&mut self, budget: u64) -> i64 {
        let cap = budget.min(3) as i64;
        self.rng.gen_range(-cap..=cap)
    }

    /// A random 0-hole tangle expression with at most `budget` crossings.
    pub fn ball(&mut self, budget: u64) -> TangleExpr {
        use TangleExpr::*;
        let choice = if budget == 0 { self.rng.gen_range(0..2) } else { self.rng.gen_range(0..10) };
        match choice {
            0 => Inf,
            1 => Zero,
            2 => HTwist(self.twist_amount(budget)),
            3 => VTwist(self.twist_amount(budget)),
            4 | 5 => {
                let left = budget / 2;
                let a = self.ball(left);
                let b = self.ball(budget - a.crossing_count().min(budget));
                if choice == 4 {
                    HSum(Box::new(a), Box::new(b))
                } else {
                    VSum(Box::new(a), Box::new(b))
                }
            }
            6 => Mirror(Box::new(self.ball(budget))),
            7 => Rot(Box::new(self.ball(budget))),
            8 => {
                // run a ball through a spherical tangle
                let s = self.spherical(budget / 2);
                let used = s.crossing_count();
                Compose(Box::new(s), Box::new(self.ball(budget.saturating_sub(used))))
            }
            _ => {
                let a = self.ball(budget.saturating_sub(1));
                if self.rng.gen_bool(0.5) {
                    HFlip(Box::new(a))
                } else {
                    VFlip(Box::new(a))
                }
            }
        }
    }

    /// A random 1-hole tangle expression with at most `budget` crossings.
    pub fn spherical(&mut self, budget: u64) -> TangleExpr {
        use TangleExpr::*;
        let choice = if budget == 0 { self.rng.gen_range(0..3) } else { self.rng.gen_range(0..12) };
        match choice {
            0 => I,
            1 => Swap(Box::new(self.spherical(budget))),
            2 => R1(Box::new(self.spherical(budget))),
            3 => R2(Box::new(self.spherical(budget))),
            4 => Mirror(Box::new(self.spherical(budget))),
            5 => Rot(Box::new(self.spherical(budget))),
            6 | 7 => {
                let b = self.ball(budget / 2);
                let used = b.crossing_count();
                let s = self.spherical(budget.saturating_sub(used));
                if choice == 6 {
                    if self.rng.gen_bool(0.5) {
                        HSum(Box::new(b), Box::new(s))
                    } else {
                        HSum(Box::new(s), Box::new(b))
                    }
                } else if self.rng.gen_bool(0.5) {
                    VSum(Box::new(b), Box::new(s))
                } else {
                    VSum(Box::new(s), Box::new(b))
                }
            }
            8 | 9 => {
                let b = self.ball(budget / 2);
                let used = b.crossing_count();
                let s = self.spherical(budget.saturating_sub(used));
                if choice == 8 {
                    if self.rng.gen_bool(0.5) {
                        IHSum(Box::new(b), Box::new(s))
                    } else {
                        IHSum(Box::new(s), Box::new(b))
                    }
                } else if self.rng.gen_bool(0.5) {
                    IVSum(Box::new(b), Box::new(s))
                } else {
                    IVSum(Box::new(s), Box::new(b))
                }
            }
            10 => {
                let a = self.spherical(budget / 2);
                let used = a.crossing_count();
                Compose(Box::new(a), Box::new(self.spherical(budget.saturating_sub(used))))
            }
            _ => {
                // twist next to the hole
                let b = self.ball(budget);
                let s = Box::new(I);
                if self.rng.gen_bool(0.5) {
                    HSum(Box::new(b), s)
                } else {
                    VSum(Box::new(b), s)
                }
            }
        }
    }

    /// A random expression with the requested number of holes (0..=3)
    /// built by summing spherical and ball pieces.
    pub fn punctured(&mut self, holes: usize, budget: u64) -> TangleExpr {
        use TangleExpr::*;
        match holes {
            0 => self.ball(budget),
            1 => self.spherical(budget),
            _ => {
                let split = self.rng.gen_range(0..=holes.min(1));
                let left_holes = if split == 0 { 1 } else { holes - 1 };
                let right_holes = holes - left_holes;
                let a = self.punctured(left_holes, budget / 2);
                let used = a.crossing_count();
                let b = self.punctured(right_holes, budget.saturating_sub(used));
                if self.rng.gen_bool(0.5) {
                    HSum(Box::new(a), Box::new(b))
                } else {
                    VSum(Box::new(a), Box::new(b))
                }
            }
        }
    }

    /// A target class for synthesis with both coordinates in ±max.
    pub fn target(&mut self, max: i64) -> (i64, i64) {
        (self.rng.gen_range(-max..=max), self.rng.gen_range(-max..=max))
    }

    /// Uniform index below `n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}
