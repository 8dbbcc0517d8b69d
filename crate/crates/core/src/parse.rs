//! Text forms for algebra elements, torus points, bundle classes,
//! signatures and lattice files.
//!
//! Element grammar (left-associative, products evaluated in written order):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' uint)?
//! atom   := number 'i'? | 'i' | 'e' digits | '(' expr ')'
//! number := digits ('/' digits)?
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::clifford::{CliffordElement, Signature};
use crate::dual::BundleClass;
use crate::error::{Error, Result};
use crate::exact::{parse_gaussian_at, GaussianRational, Matrix, Rational};
use crate::torus::{LatticeSpec, TorusPoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementExpr {
    Scalar(GaussianRational),
    Generator(usize),
    Neg(Box<ElementExpr>),
    Add(Box<ElementExpr>, Box<ElementExpr>),
    Sub(Box<ElementExpr>, Box<ElementExpr>),
    Mul(Box<ElementExpr>, Box<ElementExpr>),
    Pow(Box<ElementExpr>, u32),
}

impl ElementExpr {
    pub fn eval(&self, sig: Signature) -> Result<CliffordElement> {
        Ok(match self {
            Self::Scalar(c) => CliffordElement::scalar(sig, c.clone()),
            Self::Generator(j) => CliffordElement::generator(sig, *j)?,
            Self::Neg(a) => a.eval(sig)?.neg(),
            Self::Add(a, b) => a.eval(sig)?.try_add(&b.eval(sig)?)?,
            Self::Sub(a, b) => a.eval(sig)?.try_sub(&b.eval(sig)?)?,
            Self::Mul(a, b) => a.eval(sig)?.try_mul(&b.eval(sig)?)?,
            Self::Pow(a, n) => a.eval(sig)?.pow(*n),
        })
    }

    /// Largest generator index referenced.
    pub fn max_generator(&self) -> usize {
        match self {
            Self::Scalar(_) => 0,
            Self::Generator(j) => *j,
            Self::Neg(a) | Self::Pow(a, _) => a.max_generator(),
            Self::Add(a, b) | Self::Sub(a, b) | Self::Mul(a, b) => a.max_generator().max(b.max_generator()),
        }
    }
}

impl fmt::Display for ElementExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Scalar(c) => write!(f, "({c})"),
            Self::Generator(j) => write!(f, "e{j}"),
            Self::Neg(a) => write!(f, "-({a})"),
            Self::Add(a, b) => write!(f, "{a} + {b}"),
            Self::Sub(a, b) => write!(f, "{a} - ({b})"),
            Self::Mul(a, b) => write!(f, "({a})*({b})"),
            Self::Pow(a, n) => write!(f, "({a})^{n}"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, bytes: src.as_bytes(), pos: 0 }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (start < self.pos).then(|| &self.src[start..self.pos])
    }

    fn expr(&mut self) -> Result<ElementExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = ElementExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = ElementExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<ElementExpr> {
        let mut lhs = self.unary()?;
        while self.eat(b'*') {
            lhs = ElementExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ElementExpr> {
        if self.eat(b'-') {
            return Ok(ElementExpr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<ElementExpr> {
        let atom = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let exp = self.digits().ok_or_else(|| self.err("expected non-negative integer exponent"))?;
            let n: u32 = exp.parse().map_err(|_| self.err("exponent too large"))?;
            return Ok(ElementExpr::Pow(Box::new(atom), n));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<ElementExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(ElementExpr::Scalar(GaussianRational::i()))
            }
            Some(b'e') => {
                self.pos += 1;
                let start = self.pos;
                let d = self.digits().ok_or_else(|| self.err("expected generator index after 'e'"))?;
                match d.parse::<usize>() {
                    Ok(j) if j > 0 => Ok(ElementExpr::Generator(j)),
                    _ => Err(Error::Syntax {
                        offset: start,
                        message: "generator index must be a positive integer".into(),
                    }),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().expect("digit").parse().expect("digits");
                let mut r = Rational::from_integer(num);
                if self.bytes.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    let d: BigInt =
                        self.digits().ok_or_else(|| self.err("expected denominator"))?.parse().expect("digits");
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    r /= Rational::from_integer(d);
                }
                if self.bytes.get(self.pos) == Some(&b'i') {
                    self.pos += 1;
                    return Ok(ElementExpr::Scalar(GaussianRational::new(Rational::zero(), r)));
                }
                Ok(ElementExpr::Scalar(GaussianRational::real(r)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub fn parse_element(src: &str) -> Result<ElementExpr> {
    let mut p = Parser::new(src);
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses and evaluates in one step.
pub fn parse_and_eval(src: &str, sig: Signature) -> Result<CliffordElement> {
    parse_element(src)?.eval(sig)
}

/// Comma-separated Gaussian-rational coordinates, unreduced.
pub fn parse_coordinates(src: &str) -> Result<Vec<GaussianRational>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in src.split(',') {
        out.push(parse_gaussian_at(part, offset)?);
        offset += part.len() + 1;
    }
    Ok(out)
}

/// A point literal on the default lattice of a rank-`2^k` spinor torus.
pub fn parse_point(src: &str, k: usize) -> Result<TorusPoint> {
    let coords = parse_coordinates(src)?;
    let expected = 1 << k;
    if coords.len() != expected {
        return Err(Error::ArityMismatch { expected, actual: coords.len() });
    }
    Ok(TorusPoint::from_lattice_coords(&coords))
}

/// Bundle literal `[c_1, ..., c_{2·2^k}]` of rationals.
pub fn parse_bundle(src: &str, k: usize) -> Result<BundleClass> {
    let trimmed = src.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or(Error::Syntax { offset: 0, message: "bundle literal must be bracketed".into() })?;
    let base = src.find('[').unwrap_or(0) + 1;
    let coords = parse_coordinates(inner).map_err(|e| match e {
        Error::Syntax { offset, message } => Error::Syntax { offset: offset + base, message },
        other => other,
    })?;
    let expected = 2 << k;
    if coords.len() != expected {
        return Err(Error::ArityMismatch { expected, actual: coords.len() });
    }
    let mut c = Vec::with_capacity(expected);
    for z in coords {
        if !z.is_real() {
            return Err(Error::InvalidScalar(format!("bundle component {z} is not real")));
        }
        c.push(z.re().clone());
    }
    Ok(BundleClass::new(&c))
}

/// `p,q` or `(p,q)`.
pub fn parse_signature(src: &str) -> Result<Signature> {
    let s = src.trim().trim_start_matches('(').trim_end_matches(')');
    let err = || Error::Syntax { offset: 0, message: format!("expected 'p,q', got '{src}'") };
    let (p, q) = s.split_once(',').ok_or_else(err)?;
    let p = p.trim().parse().map_err(|_| err())?;
    let q = q.trim().parse().map_err(|_| err())?;
    Signature::new(p, q)
}

/// Lattice file: a JSON array of rows of Gaussian-rational strings whose
/// columns are the lattice generators.
pub fn parse_lattice(json: &str) -> Result<LatticeSpec> {
    let rows: Vec<Vec<String>> = serde_json::from_str(json)
        .map_err(|e| Error::Syntax { offset: e.column(), message: format!("lattice file: {e}") })?;
    let rows =
        rows.iter().map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_rows(rows)?;
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows(), actual: m.cols() });
    }
    LatticeSpec::new(m)
}

/// Inverse of [`parse_lattice`].
pub fn lattice_to_json(lattice: &LatticeSpec) -> serde_json::Value {
    let rows: Vec<Vec<String>> =
        lattice.basis().to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    serde_json::json!(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Blade;

    fn sig(k: usize) -> Signature {
        Signature::euclidean(k)
    }

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn element_examples() {
        let s = sig(2);
        assert_eq!(parse_and_eval("e1*e2", s).unwrap(), CliffordElement::blade(s, Blade(0b11)));
        assert_eq!(parse_and_eval("e2*e1", s).unwrap(), CliffordElement::blade(s, Blade(0b11)).neg());
        let x = parse_and_eval("(1+i)*e3 - i", s).unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(x.coefficient(Blade(0b100)), g("1+i"));
        assert_eq!(x.coefficient(Blade::SCALAR), g("-i"));
    }

    #[test]
    fn precedence_and_powers() {
        let s = sig(1);
        assert_eq!(parse_and_eval("1 + 2*3", s).unwrap(), CliffordElement::scalar(s, g("7")));
        assert_eq!(parse_and_eval("(e1*e2)^2", s).unwrap(), CliffordElement::scalar(s, g("-1")));
        assert_eq!(parse_and_eval("e1^0", s).unwrap(), CliffordElement::one(s));
        assert_eq!(parse_and_eval("3/2i", s).unwrap(), CliffordElement::scalar(s, g("3/2i")));
        assert_eq!(parse_and_eval("1 - 2 - 3", s).unwrap(), CliffordElement::scalar(s, g("-4")));
        assert_eq!(parse_and_eval("-e1 + e1", s).unwrap(), CliffordElement::zero(s));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert_eq!(
            parse_element("e1 * ").unwrap_err(),
            Error::Syntax { offset: 5, message: "unexpected end of input".into() }
        );
        assert!(matches!(parse_element("e0"), Err(Error::Syntax { offset: 1, .. })));
        assert!(matches!(parse_element("(e1"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_element("e1 e2"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_element("1/0"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_element("e1^-1"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn out_of_range_generator() {
        assert!(matches!(parse_and_eval("e3", sig(1)), Err(Error::IndexOutOfRange { index: 3, dim: 2 })));
    }

    #[test]
    fn display_round_trip() {
        let s = sig(2);
        for src in ["0", "e1", "(3/2)*e1*e2 + (-i)*e3*e4", "(1/2-1/3i) + e1*e2*e3*e4", "(i)*e2"] {
            let x = parse_and_eval(src, s).unwrap();
            assert_eq!(parse_and_eval(&x.to_string(), s).unwrap(), x, "{src}");
        }
    }

    #[test]
    fn point_examples() {
        assert_eq!(parse_point("1/4, 0", 1).unwrap().coords(), &[g("1/4"), g("0")]);
        assert_eq!(parse_point("5/4-1/2i, 0", 1).unwrap().coords(), &[g("1/4+1/2i"), g("0")]);
        assert_eq!(parse_point("1/2", 2).unwrap_err(), Error::ArityMismatch { expected: 4, actual: 1 });
        assert!(matches!(parse_point("1/4, x", 1), Err(Error::Syntax { offset: 5, .. })));
    }

    #[test]
    fn bundle_literal() {
        let b = parse_bundle("[0, 0, 1/2, 0]", 1).unwrap();
        assert_eq!(b.to_string(), "[0, 0, 1/2, 0]");
        assert_eq!(parse_bundle("[3/2, 0, -1/4, 0]", 1).unwrap().to_string(), "[1/2, 0, 3/4, 0]");
        assert!(matches!(parse_bundle("[0, 0]", 1), Err(Error::ArityMismatch { .. })));
        assert!(matches!(parse_bundle("0, 0, 0, 0", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse_bundle("[i, 0, 0, 0]", 1), Err(Error::InvalidScalar(_))));
    }

    #[test]
    fn signatures() {
        assert_eq!(parse_signature("2,0").unwrap(), sig(1));
        assert_eq!(parse_signature("(1, 1)").unwrap(), Signature::new(1, 1).unwrap());
        assert!(parse_signature("2").is_err());
        assert!(matches!(parse_signature("1,2"), Err(Error::InvalidSignature { .. })));
    }

    #[test]
    fn lattice_file() {
        let l = parse_lattice(r#"[["1", "0"], ["0", "1+i"]]"#).unwrap();
        assert_eq!(l.basis().get(1, 1), &g("1+i"));
        assert_eq!(parse_lattice(&lattice_to_json(&l).to_string()).unwrap(), l);
        assert!(parse_lattice(r#"[["1", "0"], ["0", "0"]]"#).is_err());
        assert!(parse_lattice("not json").is_err());
    }
}
