//! Constructor expressions such as `wedge(sphere(1),skeleton(simplex(3),1))`.

use std::fmt;
use std::str::FromStr;

use super::{FinSimpSet, SimplicialError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceExpr {
    Point,
    Simplex(usize),
    Boundary(usize),
    Sphere(usize),
    Wedge(Box<SpaceExpr>, Box<SpaceExpr>),
    Disjoint(Box<SpaceExpr>, Box<SpaceExpr>),
    Skeleton(Box<SpaceExpr>, usize),
}

impl SpaceExpr {
    /// Builds the simplicial set truncated at `trunc`.
    pub fn build(&self, trunc: usize) -> Result<FinSimpSet, SimplicialError> {
        match self {
            SpaceExpr::Point => Ok(FinSimpSet::point(trunc)),
            SpaceExpr::Simplex(d) => Ok(FinSimpSet::standard_simplex(*d, trunc)),
            SpaceExpr::Boundary(d) => FinSimpSet::boundary_simplex(*d, trunc),
            SpaceExpr::Sphere(d) => FinSimpSet::sphere(*d, trunc),
            SpaceExpr::Wedge(a, b) => FinSimpSet::wedge(&a.build(trunc)?, &b.build(trunc)?),
            SpaceExpr::Disjoint(a, b) => {
                FinSimpSet::disjoint_union(&a.build(trunc)?, &b.build(trunc)?)
            }
            SpaceExpr::Skeleton(a, n) => a.build(trunc)?.skeleton(*n),
        }
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Point => write!(f, "point"),
            SpaceExpr::Simplex(d) => write!(f, "simplex({d})"),
            SpaceExpr::Boundary(d) => write!(f, "boundary({d})"),
            SpaceExpr::Sphere(d) => write!(f, "sphere({d})"),
            SpaceExpr::Wedge(a, b) => write!(f, "wedge({a},{b})"),
            SpaceExpr::Disjoint(a, b) => write!(f, "disjoint({a},{b})"),
            SpaceExpr::Skeleton(a, n) => write!(f, "skeleton({a},{n})"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> SimplicialError {
        SimplicialError::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> Result<(), SimplicialError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<usize, SimplicialError> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("expected a non-negative integer"))
    }

    fn expr(&mut self) -> Result<SpaceExpr, SimplicialError> {
        let name = self.ident();
        let e = match name {
            "point" => return Ok(SpaceExpr::Point),
            "simplex" | "boundary" | "sphere" => {
                self.eat('(')?;
                let d = self.number()?;
                self.eat(')')?;
                match name {
                    "simplex" => SpaceExpr::Simplex(d),
                    "boundary" => SpaceExpr::Boundary(d),
                    _ => SpaceExpr::Sphere(d),
                }
            }
            "wedge" | "disjoint" => {
                self.eat('(')?;
                let a = self.expr()?;
                self.eat(',')?;
                let b = self.expr()?;
                self.eat(')')?;
                if name == "wedge" {
                    SpaceExpr::Wedge(Box::new(a), Box::new(b))
                } else {
                    SpaceExpr::Disjoint(Box::new(a), Box::new(b))
                }
            }
            "skeleton" => {
                self.eat('(')?;
                let a = self.expr()?;
                self.eat(',')?;
                let n = self.number()?;
                self.eat(')')?;
                SpaceExpr::Skeleton(Box::new(a), n)
            }
            "" => return Err(self.err("expected a constructor name")),
            other => return Err(self.err(&format!("unknown constructor '{other}'"))),
        };
        Ok(e)
    }
}

impl FromStr for SpaceExpr {
    type Err = SimplicialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}
