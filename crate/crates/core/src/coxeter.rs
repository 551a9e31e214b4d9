//! The order-16 group generated by the swap, inner-turn and mirror
//! operations on 2x2 classes, with the presentation
//! ⟨x,y,z | x² = y² = z² = 1, xyxy = yxyx, xz = zx, yz = zy⟩.
//!
//! x acts as the inside-outside swap, y as the inner quarter turn and z
//! as the mirror. Words act in opposite-composition order: the leftmost
//! letter is applied first.

use std::fmt;

use thiserror::Error;

use crate::algebra::{elementary_op, ElementaryOp, SphericalMatrix};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Letter {
    X,
    Y,
    Z,
}

/// A word over the three involutive generators.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GroupWord(pub Vec<Letter>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid letter '{0}', expected x, y or z")]
pub struct WordParseError(pub char);

impl GroupWord {
    pub fn parse(text: &str) -> Result<GroupWord, WordParseError> {
        let mut letters = Vec::new();
        for ch in text.chars() {
            match ch {
                'x' | 'X' => letters.push(Letter::X),
                'y' | 'Y' => letters.push(Letter::Y),
                'z' | 'Z' => letters.push(Letter::Z),
                c if c.is_whitespace() => {}
                c => return Err(WordParseError(c)),
            }
        }
        Ok(GroupWord(letters))
    }
}

/// Normal form (k, e, z): the dihedral part t^k x^e with t = xy of order
/// four, together with the central z bit. Sixteen distinct elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    rot: u8,
    refl: bool,
    zbit: bool,
}

pub const IDENTITY: GroupElement = GroupElement { rot: 0, refl: false, zbit: false };

impl GroupElement {
    pub fn generator(l: Letter) -> GroupElement {
        match l {
            Letter::X => GroupElement { rot: 0, refl: true, zbit: false },
            Letter::Y => GroupElement { rot: 3, refl: true, zbit: false },
            Letter::Z => GroupElement { rot: 0, refl: false, zbit: true },
        }
    }

    /// Group product; dihedral part composes by t^a x^e · t^b x^f =
    /// t^{a ± b} x^{e+f}, the z bit is central.
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        let rot = if self.refl {
            (self.rot + 4 - other.rot % 4) % 4
        } else {
            (self.rot + other.rot) % 4
        };
        GroupElement { rot, refl: self.refl ^ other.refl, zbit: self.zbit ^ other.zbit }
    }

    pub fn is_identity(&self) -> bool {
        *self == IDENTITY
    }

    /// The canonical alternating word in x, y for the dihedral part,
    /// followed by z when the central bit is set.
    pub fn canonical_word(&self) -> String {
        let dihedral = match (self.rot, self.refl) {
            (0, false) => "",
            (1, false) => "xy",
            (2, false) => "xyxy",
            (3, false) => "yx",
            (0, true) => "x",
            (1, true) => "xyx",
            (2, true) => "yxy",
            (3, true) => "y",
            _ => unreachable!(),
        };
        let mut w = dihedral.to_string();
        if self.zbit {
            w.push('z');
        }
        if w.is_empty() {
            w.push('1');
        }
        w
    }

    fn letters(&self) -> Vec<Letter> {
        self.canonical_word()
            .chars()
            .filter_map(|c| match c {
                'x' => Some(Letter::X),
                'y' => Some(Letter::Y),
                'z' => Some(Letter::Z),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_word())
    }
}

/// Folds a word into its normal form using the defining relations.
pub fn reduce(w: &GroupWord) -> GroupElement {
    w.0.iter().fold(IDENTITY, |acc, &l| acc.mul(&GroupElement::generator(l)))
}

/// Applies one generator to a 2x2 class: x is the inside-outside swap,
/// y the inner quarter turn, z the mirror.
pub fn act_letter(l: Letter, m: &SphericalMatrix) -> SphericalMatrix {
    let op = match l {
        Letter::X => ElementaryOp::Minus,
        Letter::Y => ElementaryOp::R1,
        Letter::Z => ElementaryOp::Star,
    };
    elementary_op(m, op)
}

/// Applies a group element, leftmost letter first.
pub fn act(g: &GroupElement, m: &SphericalMatrix) -> SphericalMatrix {
    g.letters().iter().fold(m.clone(), |acc, &l| act_letter(l, &acc))
}

/// Applies a raw word without reducing it, leftmost letter first.
pub fn act_word(w: &GroupWord, m: &SphericalMatrix) -> SphericalMatrix {
    w.0.iter().fold(m.clone(), |acc, &l| act_letter(l, &acc))
}

/// All sixteen elements (closure of the generators from the identity)
/// together with the multiplication table: `table[i][j]` is the index of
/// `elements[i] * elements[j]`.
pub fn enumerate_group() -> (Vec<GroupElement>, Vec<Vec<usize>>) {
    let gens = [Letter::X, Letter::Y, Letter::Z].map(GroupElement::generator);
    let mut elements = vec![IDENTITY];
    let mut frontier = vec![IDENTITY];
    while let Some(e) = frontier.pop() {
        for g in &gens {
            let next = e.mul(g);
            if !elements.contains(&next) {
                elements.push(next);
                frontier.push(next);
            }
        }
    }
    elements.sort_by_key(|e| (e.zbit, e.refl, e.rot));
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    let p = a.mul(b);
                    elements.iter().position(|e| *e == p).expect("closed under product")
                })
                .collect()
        })
        .collect();
    (elements, table)
}
