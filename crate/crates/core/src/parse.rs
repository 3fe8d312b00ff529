//! Polynomial text grammar, canonical serialization and system files.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' nat)?
//! base   := ident | nat | '(' expr ')' | '-' factor
//! ```
//!
//! Division is only allowed by a nonzero constant, so `3/4*x` and `x/2` are
//! fine while `1/x` is rejected. Juxtaposition (`xy`, `2x`) is not
//! multiplication. When the coefficient field has an imaginary unit and `i`
//! is not a declared variable, `i` denotes it.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::ParseError;
use crate::monomial::MonomialOrder;
use crate::poly::Poly;
use crate::scalar::{Field, Rational};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 512;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str, line0: usize) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (line0, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, cc) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            out.push(Token { tok: t, line: l, col: cc });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                return Err(ParseError::Syntax {
                    line: l,
                    col: cc + (i - start),
                    message: format!("unexpected `{}` after number", chars[i]),
                });
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Num(s.parse().unwrap()), line: l, col: cc });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Ident(s), line: l, col: cc });
            continue;
        }
        return Err(ParseError::Syntax { line: l, col: cc, message: format!("unexpected character `{c}`") });
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser<'a, C: Field> {
    toks: Vec<Token>,
    pos: usize,
    vars: &'a [String],
    _c: std::marker::PhantomData<C>,
}

impl<'a, C: Field> Parser<'a, C> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, t: &Token, message: &str) -> ParseError {
        ParseError::Syntax { line: t.line, col: t.col, message: message.to_string() }
    }

    fn expr(&mut self) -> Result<Poly<C>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<C>, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.next();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    let t = self.next();
                    let d = self.factor()?;
                    let c = d.constant_value().ok_or(ParseError::DivisionByNonConstant { line: t.line, col: t.col })?;
                    if c.is_zero() {
                        return Err(ParseError::DivisionByZero { line: t.line, col: t.col });
                    }
                    acc = acc.scale(&(C::one() / c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly<C>, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.next();
            return Ok(-&self.factor()?);
        }
        let base = self.base()?;
        if self.peek().tok == Tok::Caret {
            self.next();
            let t = self.next();
            let n = match t.tok {
                Tok::Num(n) => n,
                Tok::End => return Err(self.syntax(&t, "expected exponent")),
                _ => return Err(ParseError::NonConstantExponent { line: t.line, col: t.col }),
            };
            let e = n.to_u32().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| ParseError::ExponentTooLarge {
                value: n.to_string(),
                limit: MAX_EXPONENT,
                line: t.line,
                col: t.col,
            })?;
            if self.peek().tok == Tok::Caret {
                let t = self.peek().clone();
                return Err(self.syntax(&t, "chained exponents need parentheses"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Poly<C>, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Num(n) => Ok(Poly::constant(self.vars, C::from_rational(Rational::from_integer(n)))),
            Tok::Ident(name) => {
                if let Some(k) = self.vars.iter().position(|v| *v == name) {
                    Ok(Poly::var(self.vars, k))
                } else if name == "i" {
                    C::imaginary_unit()
                        .map(|u| Poly::constant(self.vars, u))
                        .ok_or(ParseError::UndeclaredIdentifier { name, line: t.line, col: t.col })
                } else {
                    Err(ParseError::UndeclaredIdentifier { name, line: t.line, col: t.col })
                }
            }
            Tok::LParen => {
                let e = self.expr()?;
                let close = self.next();
                if close.tok != Tok::RParen {
                    return Err(self.syntax(&close, "expected `)`"));
                }
                Ok(e)
            }
            Tok::End => Err(self.syntax(&t, "unexpected end of input")),
            _ => Err(self.syntax(&t, "expected a number, variable or `(`")),
        }
    }
}

fn parse_at<C: Field>(text: &str, vars: &[String], line: usize) -> Result<Poly<C>, ParseError> {
    let toks = lex(text, line)?;
    let mut p = Parser { toks, pos: 0, vars, _c: std::marker::PhantomData };
    let out = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        let msg = match t.tok {
            Tok::Ident(_) | Tok::Num(_) | Tok::LParen => "implicit multiplication is not allowed; use `*`",
            _ => "unexpected token",
        };
        return Err(p.syntax(&t, msg));
    }
    Ok(out)
}

/// Parses a polynomial over any coefficient field.
pub fn parse_poly_in<C: Field>(text: &str, vars: &[String]) -> Result<Poly<C>, ParseError> {
    check_vars(vars)?;
    parse_at(text, vars, 1)
}

/// Parses a rational polynomial.
pub fn parse_poly(text: &str, vars: &[String]) -> Result<Poly<Rational>, ParseError> {
    parse_poly_in(text, vars)
}

fn check_vars(vars: &[String]) -> Result<(), ParseError> {
    for (k, v) in vars.iter().enumerate() {
        let mut chars = v.chars();
        let ok = chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && chars.all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(ParseError::BadDeclaration(format!("`{v}` is not an identifier")));
        }
        if vars[..k].contains(v) {
            return Err(ParseError::BadDeclaration(format!("`{v}` declared twice")));
        }
    }
    Ok(())
}

/// Parses a comma-separated variable list such as `x, y`.
pub fn parse_var_list(text: &str) -> Result<Vec<String>, ParseError> {
    let vars: Vec<String> = text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    if vars.is_empty() {
        return Err(ParseError::BadDeclaration("empty variable list".into()));
    }
    check_vars(&vars)?;
    Ok(vars)
}

/// A parsed system file.
#[derive(Clone, Debug, PartialEq)]
pub struct System<C: Field = Rational> {
    pub vars: Vec<String>,
    pub polys: Vec<Poly<C>>,
    /// Source text of each polynomial, comments stripped.
    pub sources: Vec<String>,
}

/// Parses `vars: x, y` followed by one polynomial per line; `#` starts a
/// comment and blank lines are ignored.
pub fn parse_system_in<C: Field>(text: &str) -> Result<System<C>, ParseError> {
    let mut vars: Option<Vec<String>> = None;
    let mut polys = Vec::new();
    let mut sources = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match &vars {
            None => {
                let rest = line
                    .strip_prefix("vars:")
                    .ok_or(ParseError::MissingDeclaration { line: k + 1 })?;
                vars = Some(parse_var_list(rest)?);
            }
            Some(v) => {
                polys.push(parse_at(line, v, k + 1)?);
                sources.push(line.to_string());
            }
        }
    }
    let vars = vars.ok_or(ParseError::MissingDeclaration { line: 1 })?;
    Ok(System { vars, polys, sources })
}

pub fn parse_system(text: &str) -> Result<System<Rational>, ParseError> {
    parse_system_in(text)
}

/// Canonical text: terms in descending order, `c*m` with unit coefficients
/// elided, `^` for powers.
pub fn serialize_poly<C: Field>(p: &Poly<C>, order: &MonomialOrder) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (e, c) in p.sorted_terms(order) {
        let neg = c.is_negative();
        let a = if neg { -c.clone() } else { c.clone() };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono: Vec<String> = e
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(v, &k)| if k == 1 { p.vars()[v].clone() } else { format!("{}^{}", p.vars()[v], k) })
            .collect();
        if mono.is_empty() {
            s.push_str(&a.format_coeff());
        } else if a.is_one() {
            s.push_str(&mono.join("*"));
        } else {
            s.push_str(&a.format_coeff());
            s.push('*');
            s.push_str(&mono.join("*"));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{ExponentVector, OrderKind};
    use crate::poly::{var_names, MultiPoly};
    use crate::scalar::{int, rat, Gaussian};
    use proptest::prelude::*;

    fn xy() -> Vec<String> {
        var_names(&["x", "y"])
    }

    #[test]
    fn parses_curve() {
        let p = parse_poly("y^4 + x*y^3 + x*y^2 + x^2*y + x^2 + 1", &xy()).unwrap();
        assert_eq!(p.num_terms(), 6);
        assert_eq!(p.coeff(&ExponentVector::new(vec![2, 0])), int(1));
        assert!(parse_poly("0", &xy()).unwrap().is_zero());
    }

    #[test]
    fn expands_products() {
        let p = parse_poly("(x - y)*(x + y) - 1", &xy()).unwrap();
        let mut expect = MultiPoly::zero(&xy());
        expect.add_term(ExponentVector::new(vec![2, 0]), int(1));
        expect.add_term(ExponentVector::new(vec![0, 2]), int(-1));
        expect.add_term(ExponentVector::new(vec![0, 0]), int(-1));
        assert_eq!(p, expect);
    }

    #[test]
    fn fractions_and_unary_minus() {
        let p = parse_poly("-3/4*x + x/2 - -y", &xy()).unwrap();
        assert_eq!(p.coeff(&ExponentVector::new(vec![1, 0])), rat(-1, 4));
        assert_eq!(p.coeff(&ExponentVector::new(vec![0, 1])), int(1));
        assert_eq!(parse_poly("-x^2", &xy()).unwrap().coeff(&ExponentVector::new(vec![2, 0])), int(-1));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_poly("x + z", &xy()),
            Err(ParseError::UndeclaredIdentifier { name: "z".into(), line: 1, col: 5 })
        );
        assert!(matches!(parse_poly("x^y", &xy()), Err(ParseError::NonConstantExponent { line: 1, col: 3 })));
        assert!(matches!(parse_poly("1/x", &xy()), Err(ParseError::DivisionByNonConstant { .. })));
        assert!(matches!(parse_poly("1/0", &xy()), Err(ParseError::DivisionByZero { .. })));
        assert!(matches!(parse_poly("2x", &xy()), Err(ParseError::Syntax { col: 2, .. })));
        assert!(matches!(parse_poly("x y", &xy()), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("(x", &xy()), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("x^1000", &xy()), Err(ParseError::ExponentTooLarge { .. })));
        assert!(matches!(parse_poly("1.5", &xy()), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("i", &xy()), Err(ParseError::UndeclaredIdentifier { .. })));
    }

    #[test]
    fn gaussian_coefficients() {
        let p: Poly<Gaussian> = parse_poly_in("(1 + i)*x - i", &xy()).unwrap();
        assert_eq!(p.coeff(&ExponentVector::new(vec![1, 0])), Gaussian::new(int(1), int(1)));
        let s = serialize_poly(&p, &MonomialOrder::graded_lex(2));
        assert_eq!(parse_poly_in::<Gaussian>(&s, &xy()).unwrap(), p);
    }

    #[test]
    fn serialization() {
        let o = MonomialOrder::graded_lex(2);
        assert_eq!(serialize_poly(&MultiPoly::zero(&xy()), &o), "0");
        let p = parse_poly("y^4 + x*y^3 + x*y^2 + x^2*y + x^2 + 1", &xy()).unwrap();
        assert_eq!(serialize_poly(&p, &o), "x*y^3 + y^4 + x^2*y + x*y^2 + x^2 + 1");
        let y_first = MonomialOrder::with_precedence(OrderKind::GradedLex, vec![1, 0]).unwrap();
        assert_eq!(serialize_poly(&p, &y_first), "y^4 + x*y^3 + x*y^2 + x^2*y + x^2 + 1");
        let q = parse_poly("-x + 1/2*y - 3", &xy()).unwrap();
        assert_eq!(serialize_poly(&q, &o), "-x + 1/2*y - 3");
    }

    #[test]
    fn system_files() {
        let text = "# two curves\nvars: x, y\ny^2 - x  # parabola\n\ny - x\n";
        let s = parse_system(text).unwrap();
        assert_eq!(s.vars, xy());
        assert_eq!(s.polys.len(), 2);
        assert_eq!(s.sources[0], "y^2 - x");
        assert!(matches!(parse_system("y - x\n"), Err(ParseError::MissingDeclaration { line: 1 })));
        assert!(matches!(parse_system("vars: x\ny\n"), Err(ParseError::UndeclaredIdentifier { line: 2, .. })));
        assert!(matches!(parse_var_list("x, x"), Err(ParseError::BadDeclaration(_))));
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..4, 0u32..4), -20i64..=20, 1i64..=6), 0..8).prop_map(|terms| {
            MultiPoly::from_terms(
                &xy(),
                terms.into_iter().map(|((a, b), n, d)| (ExponentVector::new(vec![a, b]), rat(n, d))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn round_trip(p in arb_poly(), grevlex in any::<bool>(), swap in any::<bool>()) {
            let kind = if grevlex { OrderKind::Grevlex } else { OrderKind::GradedLex };
            let perm = if swap { vec![1, 0] } else { vec![0, 1] };
            let o = MonomialOrder::with_precedence(kind, perm).unwrap();
            let s = serialize_poly(&p, &o);
            prop_assert_eq!(parse_poly(&s, &xy()).unwrap(), p);
        }

        #[test]
        fn fuzz_never_panics(s in "[xy0-9+*/^()\\- i]{0,24}") {
            let _ = parse_poly(&s, &xy());
            let _ = parse_poly_in::<Gaussian>(&s, &xy());
        }
    }
}
