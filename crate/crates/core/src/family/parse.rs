//! Text front end:
//!
//! ```text
//! line   := "f" NAT "=" term "-" term
//! term   := coeff ("*" factor)* | factor ("*" factor)*
//! factor := "x" NAT ("^" NAT)?
//! coeff  := "a" NAT | "b" NAT | RATIONAL
//! ```
//!
//! Generators are separated by `;` or newlines. A rational coefficient may
//! carry a leading minus sign.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{BinomialFamily, CoeffAssignment};
use crate::algebra::{Monomial, Poly};
use crate::error::FamilyError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Sym(char, usize),
    Num(BigRational),
    Eq,
    Minus,
    Plus,
    Star,
    Caret,
    Sep,
    Comma,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> FamilyError {
    FamilyError::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<(Vec<Spanned>, (usize, usize)), FamilyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    let digits = |i: &mut usize, col: &mut usize| -> String {
        let mut s = String::new();
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            s.push(chars[*i]);
            *i += 1;
            *col += 1;
        }
        s
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line: l0, column: c0 });
        match c {
            '\n' => {
                push(&mut out, Tok::Sep);
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            ';' | '=' | '-' | '+' | '*' | '^' | ',' => {
                let tok = match c {
                    ';' => Tok::Sep,
                    '=' => Tok::Eq,
                    '-' => Tok::Minus,
                    '+' => Tok::Plus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    _ => Tok::Comma,
                };
                push(&mut out, tok);
                i += 1;
                col += 1;
            }
            'f' | 'a' | 'b' | 'x' | 'X' => {
                i += 1;
                col += 1;
                let d = digits(&mut i, &mut col);
                let idx: usize = d
                    .parse()
                    .map_err(|_| err(l0, c0, format!("expected an index after {c:?}")))?;
                if idx == 0 {
                    return Err(err(l0, c0, "indices start at 1"));
                }
                push(&mut out, Tok::Sym(c.to_ascii_lowercase(), idx));
            }
            c if c.is_ascii_digit() => {
                let p = digits(&mut i, &mut col);
                let mut value = BigRational::from_integer(p.parse::<BigInt>().unwrap());
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    col += 1;
                    let q = digits(&mut i, &mut col);
                    let q: BigInt = q.parse().map_err(|_| err(line, col, "expected a denominator"))?;
                    if q.is_zero() {
                        return Err(err(l0, c0, "zero denominator"));
                    }
                    value /= BigRational::from_integer(q);
                }
                push(&mut out, Tok::Num(value));
            }
            other => return Err(err(l0, c0, format!("unexpected character {other:?}"))),
        }
    }
    Ok((out, (line, col)))
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

#[derive(Debug)]
enum CoeffLit {
    A(usize),
    B(usize),
    Value(BigRational),
}

#[derive(Debug)]
struct Term {
    coeff: CoeffLit,
    vars: BTreeMap<usize, u64>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|s| (s.line, s.column)).unwrap_or(self.end)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, FamilyError> {
        let (l, c) = self.here();
        Err(err(l, c, message))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), FamilyError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected {what}"))
        }
    }

    fn skip_separators(&mut self) {
        while self.peek() == Some(&Tok::Sep) {
            self.pos += 1;
        }
    }

    fn factor(&mut self, vars: &mut BTreeMap<usize, u64>) -> Result<(), FamilyError> {
        match self.bump() {
            Some(Tok::Sym('x', v)) => {
                let mut e = 1u64;
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    match self.bump() {
                        Some(Tok::Num(q)) if q.is_integer() && q >= BigRational::zero() => {
                            e = q.to_integer().try_into().map_err(|_| err(self.here().0, self.here().1, "exponent too large"))?;
                        }
                        _ => {
                            self.pos -= 1;
                            return self.fail("expected a natural exponent");
                        }
                    }
                }
                *vars.entry(v).or_insert(0) += e;
                Ok(())
            }
            _ => {
                self.pos -= 1;
                self.fail("expected a variable x<i>")
            }
        }
    }

    fn term(&mut self) -> Result<Term, FamilyError> {
        let mut vars = BTreeMap::new();
        let coeff = match self.peek().cloned() {
            Some(Tok::Sym('a', i)) => {
                self.pos += 1;
                Some(CoeffLit::A(i))
            }
            Some(Tok::Sym('b', i)) => {
                self.pos += 1;
                Some(CoeffLit::B(i))
            }
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Some(CoeffLit::Value(q))
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                match self.bump() {
                    Some(Tok::Num(q)) => Some(CoeffLit::Value(-q)),
                    _ => {
                        self.pos -= 1;
                        return self.fail("expected a number after '-'");
                    }
                }
            }
            Some(Tok::Sym('x', _)) => None,
            _ => return self.fail("expected a term"),
        };
        match coeff {
            Some(c) => {
                while self.peek() == Some(&Tok::Star) {
                    self.pos += 1;
                    self.factor(&mut vars)?;
                }
                Ok(Term { coeff: c, vars })
            }
            None => {
                self.factor(&mut vars)?;
                while self.peek() == Some(&Tok::Star) {
                    self.pos += 1;
                    self.factor(&mut vars)?;
                }
                Ok(Term {
                    coeff: CoeffLit::Value(BigRational::one()),
                    vars,
                })
            }
        }
    }
}

struct RawGenerator {
    index: usize,
    lead: Term,
    tail: Term,
}

pub(crate) fn parse_family(text: &str) -> Result<BinomialFamily, FamilyError> {
    let (toks, end) = lex(text)?;
    let mut p = Parser { toks, pos: 0, end };
    let mut raw = Vec::new();
    p.skip_separators();
    while p.peek().is_some() {
        let index = match p.bump() {
            Some(Tok::Sym('f', i)) => i,
            _ => {
                p.pos -= 1;
                return p.fail("expected a generator name f<i>");
            }
        };
        p.expect(Tok::Eq, "'='")?;
        let lead = p.term()?;
        p.expect(Tok::Minus, "'-' between the two terms")?;
        let tail = p.term()?;
        match p.peek() {
            None | Some(Tok::Sep) => {}
            _ => return p.fail("expected ';' or a newline after the generator"),
        }
        raw.push(RawGenerator { index, lead, tail });
        p.skip_separators();
    }
    build(raw, end)
}

fn build(raw: Vec<RawGenerator>, end: (usize, usize)) -> Result<BinomialFamily, FamilyError> {
    if raw.is_empty() {
        return Err(err(end.0, end.1, "no generators"));
    }
    let n = raw.len();
    let mut slots: Vec<Option<RawGenerator>> = (0..n).map(|_| None).collect();
    for g in raw {
        if g.index > n {
            return Err(FamilyError::MissingGenerator {
                generator: (1..=n).find(|i| slots[i - 1].is_none()).unwrap_or(n),
            });
        }
        if slots[g.index - 1].is_some() {
            return Err(FamilyError::DuplicateGenerator { generator: g.index });
        }
        let idx = g.index - 1;
        slots[idx] = Some(g);
    }
    let mut degrees = Vec::with_capacity(n);
    let mut tails = Vec::with_capacity(n);
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for (i, slot) in slots.into_iter().enumerate() {
        let g = slot.ok_or(FamilyError::MissingGenerator { generator: i + 1 })?;
        let lead = to_monomial(&g.lead, n)?;
        let Some(var) = lead.pure_power_variable() else {
            return Err(FamilyError::LeadingTerm { generator: i + 1 });
        };
        if var != i {
            return Err(FamilyError::LeadingTerm { generator: i + 1 });
        }
        degrees.push(lead.exponent(i));
        tails.push(to_monomial(&g.tail, n)?);
        a.push(match g.lead.coeff {
            CoeffLit::A(k) if k == i + 1 => None,
            CoeffLit::Value(v) => {
                if v.is_zero() {
                    return Err(FamilyError::ZeroLeadingCoefficient { generator: i + 1 });
                }
                Some(v)
            }
            CoeffLit::A(k) | CoeffLit::B(k) => {
                let sym = if matches!(g.lead.coeff, CoeffLit::A(_)) { "a" } else { "b" };
                return Err(FamilyError::SymbolMismatch {
                    generator: i + 1,
                    symbol: format!("{sym}{k}"),
                });
            }
        });
        b.push(match g.tail.coeff {
            CoeffLit::B(k) if k == i + 1 => None,
            CoeffLit::Value(v) => Some(v),
            CoeffLit::A(k) | CoeffLit::B(k) => {
                let sym = if matches!(g.tail.coeff, CoeffLit::A(_)) { "a" } else { "b" };
                return Err(FamilyError::SymbolMismatch {
                    generator: i + 1,
                    symbol: format!("{sym}{k}"),
                });
            }
        });
    }
    BinomialFamily::new(degrees, tails, CoeffAssignment::new(a, b)?)
}

fn to_monomial(t: &Term, n: usize) -> Result<Monomial, FamilyError> {
    let mut exps = vec![0u64; n];
    for (&v, &e) in &t.vars {
        if v > n {
            return Err(FamilyError::VariableOutOfRange { variable: v, n });
        }
        exps[v - 1] += e;
    }
    Ok(Monomial::new(exps))
}

/// Parses `x1^2*x3` (or `X1^2*X3`, or `1`) in `n` variables.
pub fn parse_monomial(text: &str, n: usize) -> Result<Monomial, FamilyError> {
    let p = parse_polynomial(text, n)?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if c.is_one() => Ok(m.clone()),
        _ => Err(err(1, 1, "expected a single monomial")),
    }
}

/// Parses a polynomial with rational coefficients such as
/// `x1^2*x2 - 3/2*x1*x2*x3 + 2`. Variables may be written `x` or `X`.
pub fn parse_polynomial(text: &str, n: usize) -> Result<Poly<BigRational>, FamilyError> {
    let (toks, end) = lex(text)?;
    let mut p = Parser { toks, pos: 0, end };
    let mut out = Poly::zero(n);
    let mut sign = BigRational::one();
    if p.peek() == Some(&Tok::Minus) {
        p.pos += 1;
        sign = -sign;
    }
    loop {
        let mut coeff = sign.clone();
        let mut vars = BTreeMap::new();
        loop {
            match p.peek().cloned() {
                Some(Tok::Num(q)) => {
                    p.pos += 1;
                    coeff *= q;
                }
                Some(Tok::Sym('x', _)) => {
                    p.factor(&mut vars)?;
                }
                _ => return p.fail("expected a number or a variable"),
            }
            if p.peek() == Some(&Tok::Star) {
                p.pos += 1;
            } else {
                break;
            }
        }
        let term = Term {
            coeff: CoeffLit::Value(BigRational::one()),
            vars,
        };
        out.add_term(to_monomial(&term, n)?, coeff);
        match p.bump() {
            None => break,
            Some(Tok::Plus) => sign = BigRational::one(),
            Some(Tok::Minus) => sign = -BigRational::one(),
            Some(Tok::Sep) if p.peek().is_none() => break,
            _ => {
                p.pos -= 1;
                return p.fail("expected '+' or '-'");
            }
        }
    }
    Ok(out)
}

/// Parses assignments like `a=1, b2=3/2, b5=0`. A bare `a` or `b` sets every index.
pub fn parse_assignment(text: &str, n: usize) -> Result<CoeffAssignment, FamilyError> {
    let mut a = vec![None; n];
    let mut b = vec![None; n];
    for part in text.split([',', ';']).map(str::trim).filter(|s| !s.is_empty()) {
        let Some((name, value)) = part.split_once('=') else {
            return Err(err(1, 1, format!("expected name=value in {part:?}")));
        };
        let name = name.trim();
        let value = crate::algebra::parse_rational(value)?;
        let (target, rest) = match name.chars().next() {
            Some('a') => (&mut a, &name[1..]),
            Some('b') => (&mut b, &name[1..]),
            _ => return Err(err(1, 1, format!("unknown coefficient {name:?}"))),
        };
        if rest.is_empty() {
            target.iter_mut().for_each(|v| *v = Some(value.clone()));
        } else {
            let i: usize = rest
                .parse()
                .map_err(|_| err(1, 1, format!("bad coefficient index in {name:?}")))?;
            if i == 0 || i > n {
                return Err(err(1, 1, format!("coefficient {name} out of range")));
            }
            target[i - 1] = Some(value);
        }
    }
    CoeffAssignment::new(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};

    #[test]
    fn parses_three_generator_family() {
        let f = parse_family("f1 = a1*x1^2 - b1*x1*x3 ; f2 = a2*x2^2 - b2*x2*x3 ; f3 = a3*x3^2 - b3*x2*x3")
            .unwrap();
        assert_eq!(f.n(), 3);
        assert_eq!(f.degrees(), &[2, 2, 2]);
        assert_eq!(f.tail(2), &Monomial::new(vec![0, 1, 1]));
        assert_eq!(f.mode(), super::super::CoeffMode::Symbolic);
    }

    #[test]
    fn order_and_whitespace_do_not_matter() {
        let f = parse_family("\n f2=a2*x2^2-b2*x1*x2\n\nf1 = x1^2 - 0*x1*x2 \n").unwrap();
        assert_eq!(f.coefficients().a()[0], Some(int(1)));
        assert_eq!(f.coefficients().b()[0], Some(int(0)));
        assert_eq!(f.coefficients().a()[1], None);
    }

    #[test]
    fn rational_and_negative_coefficients() {
        let f = parse_family("f1 = 3/2*x1^2 - -2*x1*x2; f2 = x2^2 - b2*x1*x2").unwrap();
        assert_eq!(f.coefficients().a()[0], Some(ratio(3, 2)));
        assert_eq!(f.coefficients().b()[0], Some(int(-2)));
    }

    #[test]
    fn reports_errors() {
        assert!(matches!(
            parse_family("f1 = a1*x1^2 - b1*x1^2"),
            Err(FamilyError::TailIsLeadingPower { generator: 1, .. })
        ));
        assert!(matches!(
            parse_family("f1 = a1*x1^3"),
            Err(FamilyError::Parse { line: 1, column: 13, .. })
        ));
        assert!(matches!(
            parse_family("f1 = a1*x1^2 - b1*x1*x2\nf1 = a1*x1^2 - b1*x1*x2"),
            Err(FamilyError::DuplicateGenerator { generator: 1 })
        ));
        assert!(matches!(
            parse_family("f1 = a1*x1^2 - b1*x1*x2\nf3 = a3*x3^2 - b3*x1*x2"),
            Err(FamilyError::MissingGenerator { generator: 2 })
        ));
        assert!(matches!(
            parse_family("f1 = a1*x1^2 - b1*x1"),
            Err(FamilyError::TailDegree { generator: 1, expected: 2, .. })
        ));
        assert!(matches!(
            parse_family("f1 = a1*x1^2 - b1*x1*x2\nf2 = a2*x2^2 -? b2*x1*x2"),
            Err(FamilyError::Parse { line: 2, column: 15, .. })
        ));
        assert!(matches!(
            parse_family("f1 = 0*x1^2 - b1*x1*x2\nf2 = a2*x2^2 - b2*x1*x2"),
            Err(FamilyError::ZeroLeadingCoefficient { generator: 1 })
        ));
        assert!(matches!(
            parse_family("f1 = a2*x1^2 - b1*x1*x2\nf2 = a2*x2^2 - b2*x1*x2"),
            Err(FamilyError::SymbolMismatch { generator: 1, .. })
        ));
        assert!(matches!(
            parse_family("f1 = a1*x2^2 - b1*x1*x2\nf2 = a2*x2^2 - b2*x1*x2"),
            Err(FamilyError::LeadingTerm { generator: 1 })
        ));
    }

    #[test]
    fn polynomials_and_assignments() {
        let p = parse_polynomial("x1^2*x2 - 3/2*x1*x2*x3 + 2", 3).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.coeff(&Monomial::new(vec![1, 1, 1])), Some(&ratio(-3, 2)));
        assert_eq!(parse_monomial("X1*X3^3", 3).unwrap(), Monomial::new(vec![1, 0, 3]));
        let s = parse_assignment("a=1, b2=3/2", 3).unwrap();
        assert_eq!(s.a(), &[Some(int(1)), Some(int(1)), Some(int(1))]);
        assert_eq!(s.b(), &[None, Some(ratio(3, 2)), None]);
        assert!(parse_assignment("a2=0", 3).is_err());
    }
}
