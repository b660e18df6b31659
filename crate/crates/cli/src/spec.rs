//! Map-spec mini-grammar.
//!
//! ```text
//! spec     := "chain" "[" item (";" item)* "]" | item
//! item     := "identity" DOMAIN
//!           | "aut" ("g2" | "g3") "h=" disc
//!           | "aut" "tetra" "word=" "[" tatom ("," tatom)* "]"
//!           | "aut" "penta" "omega=" NUM "gamma=" disc
//!           | "symlift" DOMAIN "g=" word
//!           | "trilift" "first=" word "second=" word
//!           | "route" DOMAIN "out=" outbound "via=" word "in=" inbound
//!           | "const" DOMAIN "x=" "(" NUM ("," NUM)* ")"
//!           | "mixedface" "(" NUM "," NUM "," NUM "," NUM ")"
//! word     := disc | "[" disc ("," disc)* "]"          last factor acts first
//! disc     := "mobius(" θ "," re "," im ")" | "rot(" θ ")"
//!           | "blaschke(" θ ["," re "," im] ")" | "scale(" re "," im ")"
//! tatom    := "l(" disc ")" | "r(" disc ")" | "f"
//! outbound := "halftrace" | "magic(" θ ")" | "coord(" k ")"
//! inbound  := "form1(" disc ")" | "form2(" disc ")" | "pinned(" re "," im ")"
//!           | "axis(" k ")" | "diagonal"
//! NUM      := ["-"] atom (("*" | "/") atom)*   atom := float | "pi"
//! ```
//!
//! Angles are in radians; `omega` and `magic` take the angle of the
//! unimodular parameter. Complex values are always re/im pairs.

use mu_domains::automorphisms::{Automorphism, GnAut, PentaAut, TetraAtom, TetraAut};
use mu_domains::disc::{BlaschkeProduct, MobiusTransform};
use mu_domains::dynamics::{Atom, DiscAtom, DiscWord, Inbound, Outbound, SelfMap};
use mu_domains::lab::target::mixed_face_map;
use mu_domains::{Domain, Point, C64};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    #[error("map spec: {0}")]
    Syntax(String),
    #[error("map spec: {0}")]
    Invalid(#[from] mu_domains::Error),
}

type Result<T> = std::result::Result<T, SpecError>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(f64),
    Punct(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect::<String>().to_ascii_lowercase()));
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v = text.parse().map_err(|_| SpecError::Syntax(format!("bad number `{text}`")))?;
            out.push(Tok::Num(v));
        } else if "()[],;=*/-+".contains(c) {
            out.push(Tok::Punct(c));
            i += 1;
        } else {
            return Err(SpecError::Syntax(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err<T>(&self, want: &str) -> Result<T> {
        let found = match self.toks.get(self.pos) {
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Num(v)) => format!("`{v}`"),
            Some(Tok::Punct(c)) => format!("`{c}`"),
            None => "end of input".into(),
        };
        Err(SpecError::Syntax(format!("expected {want}, found {found}")))
    }

    fn punct(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("`{c}`"))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        let hit = self.peek() == Some(&Tok::Punct(c));
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("a keyword"),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(&format!("`{kw}`")),
        }
    }

    fn key(&mut self, kw: &str) -> Result<()> {
        self.keyword(kw)?;
        self.punct('=')
    }

    fn atom_num(&mut self) -> Result<f64> {
        match self.next() {
            Some(Tok::Num(v)) => Ok(v),
            Some(Tok::Ident(s)) if s == "pi" => Ok(std::f64::consts::PI),
            _ => {
                self.pos -= 1;
                self.err("a number")
            }
        }
    }

    fn num(&mut self) -> Result<f64> {
        let sign = if self.eat('-') {
            -1.0
        } else {
            self.eat('+');
            1.0
        };
        let mut v = self.atom_num()?;
        // `2pi` reads as 2·π.
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == "pi") {
            v *= self.atom_num()?;
        }
        loop {
            if self.eat('*') {
                v *= self.atom_num()?;
            } else if self.eat('/') {
                v /= self.atom_num()?;
            } else {
                return Ok(sign * v);
            }
        }
    }

    fn args(&mut self, n: std::ops::RangeInclusive<usize>) -> Result<Vec<f64>> {
        self.punct('(')?;
        let mut v = vec![self.num()?];
        while self.eat(',') {
            v.push(self.num()?);
        }
        self.punct(')')?;
        if !n.contains(&v.len()) {
            return Err(SpecError::Syntax(format!("expected {n:?} arguments, got {}", v.len())));
        }
        Ok(v)
    }

    fn index(&mut self) -> Result<usize> {
        let v = self.args(1..=1)?[0];
        if v < 0.0 || v.fract() != 0.0 {
            return Err(SpecError::Syntax(format!("index must be a non-negative integer, got {v}")));
        }
        Ok(v as usize)
    }

    fn domain(&mut self) -> Result<Domain> {
        let name = self.ident()?;
        name.parse().map_err(|_| SpecError::Syntax(format!("unknown domain `{name}`")))
    }

    fn mobius(&mut self) -> Result<MobiusTransform> {
        match self.disc()? {
            DiscAtom::Mobius(m) => Ok(m),
            _ => Err(SpecError::Syntax("expected mobius(...) or rot(...)".into())),
        }
    }

    fn disc(&mut self) -> Result<DiscAtom> {
        let name = self.ident()?;
        Ok(match name.as_str() {
            "mobius" => {
                let a = self.args(3..=3)?;
                DiscAtom::Mobius(MobiusTransform::new(a[0], C64::new(a[1], a[2]))?)
            }
            "rot" => DiscAtom::Mobius(MobiusTransform::rotation_by(self.args(1..=1)?[0])),
            "blaschke" => {
                let a = self.args(1..=3)?;
                let mut zeros = vec![C64::new(0.0, 0.0)];
                match a.len() {
                    1 => {}
                    3 => zeros.push(C64::new(a[1], a[2])),
                    _ => return Err(SpecError::Syntax("blaschke takes an angle and optionally one zero".into())),
                }
                DiscAtom::Blaschke(BlaschkeProduct::new(C64::from_polar(1.0, a[0]), &zeros)?)
            }
            "scale" => {
                let a = self.args(2..=2)?;
                DiscAtom::Scale { factor: C64::new(a[0], a[1]) }
            }
            other => return Err(SpecError::Syntax(format!("unknown disc map `{other}`"))),
        })
    }

    fn word(&mut self) -> Result<DiscWord> {
        if !self.eat('[') {
            return Ok(DiscWord::new(vec![self.disc()?]));
        }
        let mut atoms = vec![self.disc()?];
        while self.eat(',') {
            atoms.push(self.disc()?);
        }
        self.punct(']')?;
        Ok(DiscWord::new(atoms))
    }

    fn tetra_atom(&mut self) -> Result<TetraAtom> {
        let name = self.ident()?;
        let inner = |p: &mut Parser| -> Result<MobiusTransform> {
            p.punct('(')?;
            let m = p.mobius()?;
            p.punct(')')?;
            Ok(m)
        };
        match name.as_str() {
            "l" => Ok(TetraAtom::L(inner(self)?)),
            "r" => Ok(TetraAtom::R(inner(self)?)),
            "f" => Ok(TetraAtom::F),
            other => Err(SpecError::Syntax(format!("unknown tetrablock atom `{other}`"))),
        }
    }

    fn outbound(&mut self) -> Result<Outbound> {
        let name = self.ident()?;
        match name.as_str() {
            "halftrace" => Ok(Outbound::HalfTrace),
            "magic" => Ok(Outbound::Magic { omega: C64::from_polar(1.0, self.args(1..=1)?[0]) }),
            "coord" => Ok(Outbound::Coordinate { index: self.index()? }),
            other => Err(SpecError::Syntax(format!("unknown outbound map `{other}`"))),
        }
    }

    fn inbound(&mut self) -> Result<Inbound> {
        let name = self.ident()?;
        let wrapped = |p: &mut Parser| -> Result<DiscAtom> {
            p.punct('(')?;
            let d = p.disc()?;
            p.punct(')')?;
            Ok(d)
        };
        match name.as_str() {
            "form1" => match wrapped(self)? {
                DiscAtom::Blaschke(b) => Ok(Inbound::Form1 { b }),
                _ => Err(SpecError::Syntax("form1 takes blaschke(...)".into())),
            },
            "form2" => match wrapped(self)? {
                DiscAtom::Mobius(a) => Ok(Inbound::Form2 { a }),
                _ => Err(SpecError::Syntax("form2 takes mobius(...)".into())),
            },
            "pinned" => {
                let a = self.args(2..=2)?;
                Ok(Inbound::Pinned { c: C64::new(a[0], a[1]) })
            }
            "axis" => Ok(Inbound::Axis { index: self.index()? }),
            "diagonal" => Ok(Inbound::Diagonal),
            other => Err(SpecError::Syntax(format!("unknown inbound map `{other}`"))),
        }
    }

    fn item(&mut self) -> Result<SelfMap> {
        let head = self.ident()?;
        let map = match head.as_str() {
            "identity" => SelfMap::identity(self.domain()?),
            "aut" => {
                let domain = self.domain()?;
                let aut = match domain {
                    Domain::G2 | Domain::G3 => {
                        self.key("h")?;
                        Automorphism::Gn(GnAut::new(domain.dim(), self.mobius()?)?)
                    }
                    Domain::Tetra => {
                        self.key("word")?;
                        self.punct('[')?;
                        let mut word = vec![self.tetra_atom()?];
                        while self.eat(',') {
                            word.push(self.tetra_atom()?);
                        }
                        self.punct(']')?;
                        Automorphism::Tetra(TetraAut::new(word))
                    }
                    Domain::Penta => {
                        self.key("omega")?;
                        let omega = C64::from_polar(1.0, self.num()?);
                        self.key("gamma")?;
                        Automorphism::Penta(PentaAut::new(omega, self.mobius()?)?)
                    }
                };
                SelfMap::automorphism(aut)
            }
            "symlift" => {
                let domain = self.domain()?;
                self.key("g")?;
                SelfMap::new(domain, vec![Atom::SymLift { g: self.word()? }])?
            }
            "trilift" => {
                if matches!(self.peek(), Some(Tok::Ident(s)) if s == "tetra") {
                    self.pos += 1;
                }
                self.key("first")?;
                let first = self.word()?;
                self.key("second")?;
                let second = self.word()?;
                SelfMap::new(Domain::Tetra, vec![Atom::TriangularLift { first, second }])?
            }
            "route" => {
                let domain = self.domain()?;
                self.key("out")?;
                let outbound = self.outbound()?;
                self.key("via")?;
                let via = self.word()?;
                self.key("in")?;
                let inbound = self.inbound()?;
                SelfMap::new(domain, vec![Atom::DiscRoute { outbound, via, inbound }])?
            }
            "const" => {
                let domain = self.domain()?;
                self.key("x")?;
                let v = self.args(2..=6)?;
                if v.len() != 2 * domain.dim() {
                    return Err(SpecError::Syntax(format!("{domain} points need {} reals", 2 * domain.dim())));
                }
                let coords: Vec<C64> = v.chunks(2).map(|c| C64::new(c[0], c[1])).collect();
                SelfMap::new(domain, vec![Atom::Constant { point: Point::new(&coords)? }])?
            }
            "mixedface" => {
                let a = self.args(4..=4)?;
                mixed_face_map(a[0], C64::new(a[1], a[2]), a[3])?
            }
            other => return Err(SpecError::Syntax(format!("unknown map `{other}`"))),
        };
        Ok(map)
    }

    fn spec(&mut self) -> Result<SelfMap> {
        if !matches!(self.peek(), Some(Tok::Ident(s)) if s == "chain") {
            return self.item();
        }
        self.pos += 1;
        self.punct('[')?;
        let mut map = self.item()?;
        while self.eat(';') {
            map = map.compose(&self.item()?)?;
        }
        self.punct(']')?;
        Ok(map)
    }
}

/// Parses a map spec; `chain[f; g]` is `f ∘ g`.
pub fn parse_map(spec: &str) -> Result<SelfMap> {
    let mut p = Parser { toks: tokenize(spec)?, pos: 0 };
    let map = p.spec()?;
    if p.pos < p.toks.len() {
        return p.err("end of input");
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mu_domains::automorphisms::PointMap;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn numbers() {
        let mut p = Parser { toks: tokenize("-pi/2, 2pi, 1.5e-3, 3*pi/4, +1").unwrap(), pos: 0 };
        let mut v = vec![p.num().unwrap()];
        while p.eat(',') {
            v.push(p.num().unwrap());
        }
        assert_eq!(v, vec![-PI / 2.0, 2.0 * PI, 1.5e-3, 3.0 * PI / 4.0, 1.0]);
    }

    #[test]
    fn g2_automorphism() {
        let f = parse_map("aut g2 h=mobius(pi,0,0)").unwrap();
        let Some(Automorphism::Gn(g)) = f.as_automorphism() else { panic!() };
        assert_eq!(g.n(), 2);
        assert!((g.h().unimodular() + 1.0).norm() < 1e-15);
        let y = f.apply(&Point::pair(c(0.5, 0.1), c(0.2, 0.0))).unwrap();
        assert!(y.dist(&Point::pair(c(-0.5, -0.1), c(0.2, 0.0))) < 1e-15);
    }

    #[test]
    fn every_form_parses() {
        let specs = [
            ("identity g3", Domain::G3),
            ("aut g3 h=rot(0.3)", Domain::G3),
            ("aut tetra word=[l(mobius(0.2,0.1,0)), f, r(rot(1))]", Domain::Tetra),
            ("aut penta omega=pi/3 gamma=mobius(1,0.2,-0.1)", Domain::Penta),
            ("symlift g2 g=[blaschke(0.5,0.3,0.1), scale(0.5,0)]", Domain::G2),
            ("symlift penta g=mobius(0,0.5,0)", Domain::Penta),
            ("trilift first=scale(0.5,0) second=rot(1)", Domain::Tetra),
            ("route g2 out=magic(0) via=scale(0.9,0) in=pinned(0.1,0.2)", Domain::G2),
            ("route tetra out=coord(2) via=rot(1) in=axis(2)", Domain::Tetra),
            ("route g2 out=halftrace via=rot(1) in=form2(mobius(0,-0.5,0))", Domain::G2),
            ("route penta out=halftrace via=rot(1) in=form1(blaschke(0))", Domain::Penta),
            ("route g3 out=halftrace via=rot(1) in=diagonal", Domain::G3),
            ("const tetra x=(0.1,0,0.2,0,0.02,0)", Domain::Tetra),
            ("mixedface(1, 0.2, 0.1, 0.3)", Domain::G2),
            ("chain[aut g2 h=mobius(0.4,0.2,0); symlift g2 g=scale(0.5,0)]", Domain::G2),
        ];
        for (s, d) in specs {
            let f = parse_map(s).unwrap_or_else(|e| panic!("{s}: {e}"));
            assert_eq!(f.domain(), d, "{s}");
        }
    }

    #[test]
    fn chain_applies_right_factor_first() {
        let f = parse_map("chain[const g2 x=(0.1,0,0,0); aut g2 h=rot(1)]").unwrap();
        let y = f.apply(&Point::pair(c(0.3, 0.0), c(0.0, 0.0))).unwrap();
        assert_eq!(y, Point::pair(c(0.1, 0.0), c(0.0, 0.0)));
        let g = parse_map("chain[aut g2 h=rot(pi); symlift g2 g=scale(0.5,0)]").unwrap();
        let y = g.apply(&Point::pair(c(0.4, 0.0), c(0.0, 0.0))).unwrap();
        assert!(y.dist(&Point::pair(c(-0.2, 0.0), c(0.0, 0.0))) < 1e-15);
    }

    #[test]
    fn errors() {
        for bad in [
            "",
            "aut g4 h=rot(1)",
            "aut g2 h=mobius(0,1,0)",
            "aut g2 h=mobius(0,0.1)",
            "symlift g2 g=scale(2,0)",
            "route tetra out=magic(0) via=rot(1) in=axis(0)",
            "chain[identity g2; identity g3]",
            "identity g2 extra",
            "const g2 x=(0.1,0)",
            "aut g2 h=mobius(0,0,0) $",
        ] {
            assert!(parse_map(bad).is_err(), "{bad}");
        }
    }
}
