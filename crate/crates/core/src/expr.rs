//! Formal pointed-space expressions and their text syntax.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! wedge      := product ("v" product)*
//! product    := halfsmash ("x" halfsmash)*
//! halfsmash  := join ("|x" join)*          left associative
//! join       := smash ("*" smash)*         left associative
//! smash      := unary ("^" unary)*
//! unary      := "Sigma" unary | "Omega" unary | atom
//! atom       := "S^" digits | "pt" | name | "(" wedge ")"
//! ```
//!
//! `CP_inf` and `HP_inf` are built-in generators whose loop spaces are `S^1`
//! and `S^3`. Any other name is a generator with no loop rule.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A named space. Two generators are equal when both the name and the
/// declared loop space agree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub name: String,
    pub loop_space: Option<Box<SpaceExpr>>,
}

impl Generator {
    pub fn new(name: impl Into<String>) -> Self {
        Generator {
            name: name.into(),
            loop_space: None,
        }
    }

    /// A generator `X` with the declared equivalence `ΩX ≃ loop_space`.
    pub fn with_loop(name: impl Into<String>, loop_space: SpaceExpr) -> Self {
        Generator {
            name: name.into(),
            loop_space: Some(Box::new(loop_space)),
        }
    }

    /// Infinite complex projective space, `ΩCP^∞ ≃ S^1`.
    pub fn cp_infinity() -> Self {
        Self::with_loop("CP_inf", SpaceExpr::Sphere(1))
    }

    /// Infinite quaternionic projective space, `ΩHP^∞ ≃ S^3`.
    pub fn hp_infinity() -> Self {
        Self::with_loop("HP_inf", SpaceExpr::Sphere(3))
    }

    fn builtin(name: &str) -> Option<Self> {
        match name {
            "CP_inf" => Some(Self::cp_infinity()),
            "HP_inf" => Some(Self::hp_infinity()),
            _ => None,
        }
    }
}

/// A formal pointed space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceExpr {
    Point,
    Sphere(u32),
    Generator(Generator),
    Wedge(Vec<SpaceExpr>),
    Smash(Vec<SpaceExpr>),
    Susp(Box<SpaceExpr>),
    Join(Box<SpaceExpr>, Box<SpaceExpr>),
    /// `left ⋊ right = (left × right) / (* × right)`
    HalfSmash(Box<SpaceExpr>, Box<SpaceExpr>),
    Product(Vec<SpaceExpr>),
    Loop(Box<SpaceExpr>),
}

impl SpaceExpr {
    pub fn sphere(d: u32) -> Self {
        SpaceExpr::Sphere(d)
    }

    pub fn generator(name: &str) -> Self {
        SpaceExpr::Generator(Generator::builtin(name).unwrap_or_else(|| Generator::new(name)))
    }

    pub fn susp(x: SpaceExpr) -> Self {
        SpaceExpr::Susp(Box::new(x))
    }

    pub fn loop_of(x: SpaceExpr) -> Self {
        SpaceExpr::Loop(Box::new(x))
    }

    pub fn join(a: SpaceExpr, b: SpaceExpr) -> Self {
        SpaceExpr::Join(Box::new(a), Box::new(b))
    }

    pub fn half_smash(a: SpaceExpr, b: SpaceExpr) -> Self {
        SpaceExpr::HalfSmash(Box::new(a), Box::new(b))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().map(SpaceExpr::size).sum::<usize>()
    }

    pub fn children(&self) -> Box<dyn Iterator<Item = &SpaceExpr> + '_> {
        use SpaceExpr::*;
        match self {
            Point | Sphere(_) | Generator(_) => Box::new(std::iter::empty()),
            Wedge(xs) | Smash(xs) | Product(xs) => Box::new(xs.iter()),
            Susp(x) | Loop(x) => Box::new(std::iter::once(x.as_ref())),
            Join(a, b) | HalfSmash(a, b) => Box::new([a.as_ref(), b.as_ref()].into_iter()),
        }
    }

    pub(crate) fn children_mut(&mut self) -> Vec<&mut SpaceExpr> {
        use SpaceExpr::*;
        match self {
            Point | Sphere(_) | Generator(_) => Vec::new(),
            Wedge(xs) | Smash(xs) | Product(xs) => xs.iter_mut().collect(),
            Susp(x) | Loop(x) => vec![x.as_mut()],
            Join(a, b) | HalfSmash(a, b) => vec![a.as_mut(), b.as_mut()],
        }
    }

    fn precedence(&self) -> u8 {
        use SpaceExpr::*;
        match self {
            Wedge(xs) | Product(xs) | Smash(xs) if xs.len() == 1 => xs[0].precedence(),
            Wedge(_) => 0,
            Product(_) => 1,
            HalfSmash(..) => 2,
            Join(..) => 3,
            Smash(_) => 4,
            Susp(_) | Loop(_) => 5,
            Point | Sphere(_) | Generator(_) => 6,
        }
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SpaceExpr::*;
        fn child(f: &mut fmt::Formatter<'_>, e: &SpaceExpr, paren: bool) -> fmt::Result {
            if paren {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        fn nary(f: &mut fmt::Formatter<'_>, xs: &[SpaceExpr], op: &str, level: u8) -> fmt::Result {
            if xs.len() == 1 {
                return write!(f, "{}", xs[0]);
            }
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                child(f, x, x.precedence() <= level)?;
            }
            Ok(())
        }
        match self {
            Point => f.write_str("pt"),
            Sphere(d) => write!(f, "S^{d}"),
            Generator(g) => f.write_str(&g.name),
            Wedge(xs) => nary(f, xs, "v", 0),
            Product(xs) => nary(f, xs, "x", 1),
            Smash(xs) => nary(f, xs, "^", 4),
            HalfSmash(a, b) => {
                child(f, a, a.precedence() < 2)?;
                f.write_str(" |x ")?;
                child(f, b, b.precedence() <= 2)
            }
            Join(a, b) => {
                child(f, a, a.precedence() < 3)?;
                f.write_str(" * ")?;
                child(f, b, b.precedence() <= 3)
            }
            Susp(x) => {
                f.write_str("Sigma ")?;
                child(f, x, x.precedence() < 5)
            }
            Loop(x) => {
                f.write_str("Omega ")?;
                child(f, x, x.precedence() < 5)
            }
        }
    }
}

impl FromStr for SpaceExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Sphere(u32),
    Name(String),
    Wedge,
    Product,
    HalfSmash,
    Join,
    Smash,
    Sigma,
    Omega,
    Point,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            '(' => {
                out.push((col, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((col, Token::RParen));
                i += 1;
            }
            '^' => {
                out.push((col, Token::Smash));
                i += 1;
            }
            '*' => {
                out.push((col, Token::Join));
                i += 1;
            }
            '|' => {
                if chars.get(i + 1) == Some(&'x') {
                    out.push((col, Token::HalfSmash));
                    i += 2;
                } else {
                    return Err(Error::parse(1, col, "expected `|x`"));
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if word == "S" && chars.get(i) == Some(&'^') && chars.get(i + 1).is_some_and(|c| c.is_ascii_digit()) {
                    i += 1;
                    let ds = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let digits: String = chars[ds..i].iter().collect();
                    let d = digits
                        .parse()
                        .map_err(|_| Error::parse(1, col, format!("sphere dimension {digits} too large")))?;
                    out.push((col, Token::Sphere(d)));
                    continue;
                }
                let tok = match word.as_str() {
                    "v" => Token::Wedge,
                    "x" => Token::Product,
                    "Sigma" => Token::Sigma,
                    "Omega" => Token::Omega,
                    "pt" => Token::Point,
                    _ => Token::Name(word),
                };
                out.push((col, tok));
            }
            other => return Err(Error::parse(1, col, format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nary(
        &mut self,
        op: Token,
        next: fn(&mut Self) -> Result<SpaceExpr>,
        build: fn(Vec<SpaceExpr>) -> SpaceExpr,
    ) -> Result<SpaceExpr> {
        let mut items = vec![next(self)?];
        while self.eat(&op) {
            items.push(next(self)?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            build(items)
        })
    }

    fn wedge(&mut self) -> Result<SpaceExpr> {
        self.nary(Token::Wedge, Self::product, SpaceExpr::Wedge)
    }

    fn product(&mut self) -> Result<SpaceExpr> {
        self.nary(Token::Product, Self::half_smash, SpaceExpr::Product)
    }

    fn half_smash(&mut self) -> Result<SpaceExpr> {
        let mut left = self.join()?;
        while self.eat(&Token::HalfSmash) {
            let right = self.join()?;
            left = SpaceExpr::half_smash(left, right);
        }
        Ok(left)
    }

    fn join(&mut self) -> Result<SpaceExpr> {
        let mut left = self.smash()?;
        while self.eat(&Token::Join) {
            let right = self.smash()?;
            left = SpaceExpr::join(left, right);
        }
        Ok(left)
    }

    fn smash(&mut self) -> Result<SpaceExpr> {
        self.nary(Token::Smash, Self::unary, SpaceExpr::Smash)
    }

    fn unary(&mut self) -> Result<SpaceExpr> {
        if self.eat(&Token::Sigma) {
            return Ok(SpaceExpr::susp(self.unary()?));
        }
        if self.eat(&Token::Omega) {
            return Ok(SpaceExpr::loop_of(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<SpaceExpr> {
        let col = self.column();
        let tok = self
            .tokens
            .get(self.pos)
            .map(|(_, t)| t.clone())
            .ok_or_else(|| Error::parse(1, col, "unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Token::Sphere(d) => Ok(SpaceExpr::Sphere(d)),
            Token::Point => Ok(SpaceExpr::Point),
            Token::Name(n) => Ok(SpaceExpr::generator(&n)),
            Token::LParen => {
                let inner = self.wedge()?;
                if !self.eat(&Token::RParen) {
                    return Err(Error::parse(1, self.column(), "expected `)`"));
                }
                Ok(inner)
            }
            other => Err(Error::parse(1, col, format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses the text syntax described in the module docs.
pub fn parse(input: &str) -> Result<SpaceExpr> {
    let tokens = tokenize(input)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: input.chars().count() + 1,
    };
    let e = p.wedge()?;
    if p.pos != p.tokens.len() {
        return Err(Error::parse(1, p.column(), "trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use SpaceExpr::*;

    fn s(d: u32) -> SpaceExpr {
        Sphere(d)
    }

    #[test]
    fn parses_atoms_and_operators() {
        assert_eq!(parse("S^3").unwrap(), s(3));
        assert_eq!(parse("pt").unwrap(), Point);
        assert_eq!(parse("CP_inf").unwrap(), Generator(super::Generator::cp_infinity()));
        assert_eq!(parse("X").unwrap(), Generator(super::Generator::new("X")));
        assert_eq!(parse("S^1 v S^2 v S^3").unwrap(), Wedge(vec![s(1), s(2), s(3)]));
        assert_eq!(parse("S^1 ^ S^2").unwrap(), Smash(vec![s(1), s(2)]));
        assert_eq!(parse("S^1 x S^1").unwrap(), Product(vec![s(1), s(1)]));
        assert_eq!(parse("S^1 * S^1").unwrap(), SpaceExpr::join(s(1), s(1)));
        assert_eq!(parse("S^1 |x S^2").unwrap(), SpaceExpr::half_smash(s(1), s(2)));
        assert_eq!(
            parse("Sigma (S^1 x S^1)").unwrap(),
            SpaceExpr::susp(Product(vec![s(1), s(1)]))
        );
        assert_eq!(
            parse("Omega CP_inf").unwrap(),
            SpaceExpr::loop_of(SpaceExpr::generator("CP_inf"))
        );
    }

    #[test]
    fn precedence() {
        // wedge < product < half-smash < join < smash < prefix
        assert_eq!(
            parse("S^1 x S^2 v S^3").unwrap(),
            Wedge(vec![Product(vec![s(1), s(2)]), s(3)])
        );
        assert_eq!(
            parse("Sigma S^1 ^ S^2").unwrap(),
            Smash(vec![SpaceExpr::susp(s(1)), s(2)])
        );
        assert_eq!(
            parse("S^1 * S^2 ^ S^3").unwrap(),
            SpaceExpr::join(s(1), Smash(vec![s(2), s(3)]))
        );
        assert_eq!(
            parse("S^1 |x S^2 |x S^3").unwrap(),
            SpaceExpr::half_smash(SpaceExpr::half_smash(s(1), s(2)), s(3))
        );
        assert_eq!(
            parse("(S^1 v S^2) v S^3").unwrap(),
            Wedge(vec![Wedge(vec![s(1), s(2)]), s(3)])
        );
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "",
            "S^",
            "(S^1",
            "S^1 v",
            "S^1 S^2",
            "S^1 | S^2",
            "S^1 + S^2",
            "S^99999999999",
        ] {
            assert!(matches!(parse(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
    }

    #[test]
    fn display_examples() {
        let e = SpaceExpr::susp(Product(vec![s(1), Wedge(vec![s(2), SpaceExpr::generator("CP_inf")])]));
        assert_eq!(e.to_string(), "Sigma (S^1 x (S^2 v CP_inf))");
        assert_eq!(
            SpaceExpr::join(SpaceExpr::join(s(1), s(2)), s(3)).to_string(),
            "S^1 * S^2 * S^3"
        );
        assert_eq!(
            SpaceExpr::join(s(1), SpaceExpr::join(s(2), s(3))).to_string(),
            "S^1 * (S^2 * S^3)"
        );
    }

    fn arb_expr() -> impl Strategy<Value = SpaceExpr> {
        let leaf = prop_oneof![
            Just(Point),
            (0u32..5).prop_map(Sphere),
            prop_oneof![Just("CP_inf"), Just("HP_inf"), Just("X"), Just("Y2")].prop_map(SpaceExpr::generator),
        ];
        leaf.prop_recursive(4, 32, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 2..4).prop_map(Wedge),
                prop::collection::vec(inner.clone(), 2..4).prop_map(Smash),
                prop::collection::vec(inner.clone(), 2..4).prop_map(Product),
                inner.clone().prop_map(SpaceExpr::susp),
                inner.clone().prop_map(SpaceExpr::loop_of),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| SpaceExpr::join(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| SpaceExpr::half_smash(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
        }
    }
}
