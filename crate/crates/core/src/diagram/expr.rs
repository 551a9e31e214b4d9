//! Expression language over tangle primitives and operators, with a
//! plain-text grammar:
//!
//! ```text
//! expr := "I" | "zero" | "inf" | "circle" | "htwist(" int ")" | "vtwist(" int ")"
//!       | "fill(" expr ("," expr)* ")" | "compose(" expr "," expr ")"
//!       | ("hsum"|"vsum"|"ihsum"|"ivsum") "(" expr "," expr ")"
//!       | ("mirror"|"swap"|"r1"|"r2"|"rot"|"hflip"|"vflip") "(" expr ")"
//! ```
//!
//! Whitespace is insignificant. Arity and hole counts are checked when an
//! expression is elaborated into a diagram.

use std::fmt;

use thiserror::Error;

use super::{DiagramError, TangleDiagram};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TangleExpr {
    I,
    Zero,
    Inf,
    Circle,
    HTwist(i64),
    VTwist(i64),
    Fill(Box<TangleExpr>, Vec<TangleExpr>),
    Compose(Box<TangleExpr>, Box<TangleExpr>),
    HSum(Box<TangleExpr>, Box<TangleExpr>),
    VSum(Box<TangleExpr>, Box<TangleExpr>),
    IHSum(Box<TangleExpr>, Box<TangleExpr>),
    IVSum(Box<TangleExpr>, Box<TangleExpr>),
    Mirror(Box<TangleExpr>),
    Swap(Box<TangleExpr>),
    R1(Box<TangleExpr>),
    R2(Box<TangleExpr>),
    Rot(Box<TangleExpr>),
    HFlip(Box<TangleExpr>),
    VFlip(Box<TangleExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElabError {
    #[error("{0}")]
    Diagram(#[from] DiagramError),
    #[error("compose needs a spherical left operand, got {0} holes")]
    ComposeHead(usize),
    #[error("rot/mirror/hflip/vflip apply to diagrams with at most one hole, got {0}")]
    TooManyHoles(usize),
}

impl TangleExpr {
    /// Total number of crossings the elaborated diagram will have.
    pub fn crossing_count(&self) -> u64 {
        use TangleExpr::*;
        match self {
            I | Zero | Inf | Circle => 0,
            HTwist(p) | VTwist(p) => p.unsigned_abs(),
            Fill(head, args) => {
                head.crossing_count() + args.iter().map(|a| a.crossing_count()).sum::<u64>()
            }
            Compose(a, b) | HSum(a, b) | VSum(a, b) | IHSum(a, b) | IVSum(a, b) => {
                a.crossing_count() + b.crossing_count()
            }
            Mirror(a) | Swap(a) | R1(a) | R2(a) | Rot(a) | HFlip(a) | VFlip(a) => a.crossing_count(),
        }
    }

    /// Number of holes of the elaborated diagram (without elaborating).
    pub fn hole_count(&self) -> usize {
        use TangleExpr::*;
        match self {
            I => 1,
            Zero | Inf | Circle | HTwist(_) | VTwist(_) => 0,
            Fill(_, args) => args.iter().map(|a| a.hole_count()).sum(),
            Compose(_, b) => b.hole_count(),
            HSum(a, b) | VSum(a, b) => a.hole_count() + b.hole_count(),
            IHSum(_, _) | IVSum(_, _) => 1,
            Mirror(a) | Swap(a) | R1(a) | R2(a) | Rot(a) | HFlip(a) | VFlip(a) => a.hole_count(),
        }
    }
}

/// Builds the diagram an expression denotes.
pub fn elaborate(e: &TangleExpr) -> Result<TangleDiagram, ElabError> {
    use TangleExpr::*;
    Ok(match e {
        I => TangleDiagram::identity_spherical(),
        Zero => TangleDiagram::zero_tangle(),
        Inf => TangleDiagram::inf_tangle(),
        Circle => TangleDiagram::free_circle(),
        HTwist(p) => TangleDiagram::htwist(*p),
        VTwist(q) => TangleDiagram::vtwist(*q),
        Fill(head, args) => {
            let h = elaborate(head)?;
            let parts: Vec<TangleDiagram> = args.iter().map(elaborate).collect::<Result<_, _>>()?;
            h.fill(&parts)?
        }
        Compose(outer, inner) => {
            let h = elaborate(outer)?;
            if h.holes() != 1 {
                return Err(ElabError::ComposeHead(h.holes()));
            }
            h.fill(&[elaborate(inner)?])?
        }
        HSum(a, b) => elaborate(a)?.hsum(&elaborate(b)?)?,
        VSum(a, b) => elaborate(a)?.vsum(&elaborate(b)?)?,
        IHSum(a, b) => elaborate(a)?.ihsum(&elaborate(b)?)?,
        IVSum(a, b) => elaborate(a)?.ivsum(&elaborate(b)?)?,
        Mirror(a) => {
            let d = elaborate(a)?;
            check_few_holes(&d)?;
            d.mirror()
        }
        Swap(a) => elaborate(a)?.swap()?,
        R1(a) => elaborate(a)?.r1()?,
        R2(a) => elaborate(a)?.r2()?,
        Rot(a) => {
            let d = elaborate(a)?;
            check_few_holes(&d)?;
            d.rot()
        }
        HFlip(a) => {
            let d = elaborate(a)?;
            check_few_holes(&d)?;
            d.hflip()
        }
        VFlip(a) => {
            let d = elaborate(a)?;
            check_few_holes(&d)?;
            d.vflip()
        }
    })
}

fn check_few_holes(d: &TangleDiagram) -> Result<(), ElabError> {
    if d.holes() > 1 {
        Err(ElabError::TooManyHoles(d.holes()))
    } else {
        Ok(())
    }
}

impl fmt::Display for TangleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use TangleExpr::*;
        match self {
            I => write!(f, "I"),
            Zero => write!(f, "zero"),
            Inf => write!(f, "inf"),
            Circle => write!(f, "circle"),
            HTwist(p) => write!(f, "htwist({p})"),
            VTwist(q) => write!(f, "vtwist({q})"),
            Fill(head, args) => {
                write!(f, "fill({head}")?;
                for a in args {
                    write!(f, ",{a}")?;
                }
                write!(f, ")")
            }
            Compose(a, b) => write!(f, "compose({a},{b})"),
            HSum(a, b) => write!(f, "hsum({a},{b})"),
            VSum(a, b) => write!(f, "vsum({a},{b})"),
            IHSum(a, b) => write!(f, "ihsum({a},{b})"),
            IVSum(a, b) => write!(f, "ivsum({a},{b})"),
            Mirror(a) => write!(f, "mirror({a})"),
            Swap(a) => write!(f, "swap({a})"),
            R1(a) => write!(f, "r1({a})"),
            R2(a) => write!(f, "r2({a})"),
            Rot(a) => write!(f, "rot({a})"),
            HFlip(a) => write!(f, "hflip({a})"),
            VFlip(a) => write!(f, "vflip({a})"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a name");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string())
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') || self.src.get(self.pos) == Some(&b'+') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<i64>().map_err(|_| ParseError { pos: start, msg: "expected an integer".into() })
    }

    fn args(&mut self, n: usize) -> Result<Vec<TangleExpr>, ParseError> {
        self.expect(b'(')?;
        let mut out = Vec::with_capacity(n);
        out.push(self.expr()?);
        for _ in 1..n {
            self.expect(b',')?;
            out.push(self.expr()?);
        }
        self.expect(b')')?;
        Ok(out)
    }

    fn expr(&mut self) -> Result<TangleExpr, ParseError> {
        let at = self.pos;
        let name = self.ident()?;
        let node = match name.as_str() {
            "I" => TangleExpr::I,
            "zero" => TangleExpr::Zero,
            "inf" => TangleExpr::Inf,
            "circle" => TangleExpr::Circle,
            "htwist" => {
                self.expect(b'(')?;
                let p = self.int()?;
                self.expect(b')')?;
                TangleExpr::HTwist(p)
            }
            "vtwist" => {
                self.expect(b'(')?;
                let q = self.int()?;
                self.expect(b')')?;
                TangleExpr::VTwist(q)
            }
            "fill" => {
                self.expect(b'(')?;
                let head = self.expr()?;
                let mut args = Vec::new();
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    args.push(self.expr()?);
                }
                self.expect(b')')?;
                TangleExpr::Fill(Box::new(head), args)
            }
            "compose" => {
                let mut a = self.args(2)?;
                let b = a.pop().unwrap();
                TangleExpr::Compose(Box::new(a.pop().unwrap()), Box::new(b))
            }
            "hsum" | "vsum" | "ihsum" | "ivsum" => {
                let mut a = self.args(2)?;
                let b = Box::new(a.pop().unwrap());
                let a = Box::new(a.pop().unwrap());
                match name.as_str() {
                    "hsum" => TangleExpr::HSum(a, b),
                    "vsum" => TangleExpr::VSum(a, b),
                    "ihsum" => TangleExpr::IHSum(a, b),
                    _ => TangleExpr::IVSum(a, b),
                }
            }
            "mirror" | "swap" | "r1" | "r2" | "rot" | "hflip" | "vflip" => {
                let mut a = self.args(1)?;
                let a = Box::new(a.pop().unwrap());
                match name.as_str() {
                    "mirror" => TangleExpr::Mirror(a),
                    "swap" => TangleExpr::Swap(a),
                    "r1" => TangleExpr::R1(a),
                    "r2" => TangleExpr::R2(a),
                    "rot" => TangleExpr::Rot(a),
                    "hflip" => TangleExpr::HFlip(a),
                    _ => TangleExpr::VFlip(a),
                }
            }
            other => {
                return Err(ParseError { pos: at, msg: format!("unknown name '{other}'") });
            }
        };
        Ok(node)
    }
}

/// Parses the expression grammar; reports the byte position on failure.
pub fn parse_expr(text: &str) -> Result<TangleExpr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.err("trailing input");
    }
    Ok(e)
}
