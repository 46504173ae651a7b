//! Text format for custom laws:
//!
//! ```text
//! group   := "group" NAME "dim" INT "char" INT mulstmt+
//! mulstmt := "mul" "[" INT "]" "=" poly
//! poly    := term (("+" | "-") term)*
//! term    := INT? factor ("*" factor)*
//! factor  := ("x" | "y") INT ("^" INT)?
//! ```
//!
//! `#` starts a comment running to the end of the line. A coefficient may be
//! followed by an optional `*`.

use super::{GroupLaw, Polynomial, Term};
use crate::error::{Error, Result};
use crate::finite_fields::is_prime;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_digit() {
            let mut v: u64 = 0;
            while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                v = v.checked_mul(10).and_then(|v| v.checked_add(d as u64)).ok_or(
                    Error::Syntax {
                        line: l,
                        column: col,
                        message: "integer literal too large".into(),
                    },
                )?;
                chars.next();
                column += 1;
            }
            out.push(Spanned {
                tok: Tok::Int(v),
                line: l,
                column: col,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphanumeric() || **c == '_') {
                s.push(c);
                chars.next();
                column += 1;
            }
            out.push(Spanned {
                tok: Tok::Ident(s),
                line: l,
                column: col,
            });
        } else if "[]=+-*^".contains(c) {
            chars.next();
            column += 1;
            out.push(Spanned {
                tok: Tok::Sym(c),
                line: l,
                column: col,
            });
        } else {
            return Err(Error::Syntax {
                line: l,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

struct RawFactor {
    var: char,
    index: u64,
    exp: u64,
    line: usize,
    column: usize,
}

struct RawTerm {
    negative: bool,
    coeff: u64,
    factors: Vec<RawFactor>,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, at: &Spanned, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: at.line,
            column: at.column,
            message: message.into(),
        })
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s == kw => Ok(()),
            _ => self.error(&t, format!("expected `{kw}`")),
        }
    }

    fn sym(&mut self, c: char) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            self.error(&t, format!("expected `{c}`"))
        }
    }

    fn int(&mut self) -> Result<u64> {
        let t = self.next();
        match t.tok {
            Tok::Int(v) => Ok(v),
            _ => self.error(&t, "expected an integer"),
        }
    }

    fn name(&mut self) -> Result<String> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => Ok(s),
            _ => self.error(&t, "expected a group name"),
        }
    }

    fn factor_start(&self) -> Option<(char, u64)> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let mut chars = s.chars();
                let var = chars.next()?;
                if var != 'x' && var != 'y' {
                    return None;
                }
                let rest = chars.as_str();
                if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
                    return None;
                }
                Some((var, rest.parse().ok()?))
            }
            _ => None,
        }
    }

    fn factor(&mut self) -> Result<RawFactor> {
        let at = self.peek().clone();
        let Some((var, index)) = self.factor_start() else {
            return self.error(&at, "expected a variable x<i> or y<i>");
        };
        self.next();
        let mut exp = 1;
        if self.peek().tok == Tok::Sym('^') {
            self.next();
            exp = self.int()?;
        }
        Ok(RawFactor {
            var,
            index,
            exp,
            line: at.line,
            column: at.column,
        })
    }

    fn term(&mut self, negative: bool) -> Result<RawTerm> {
        let mut coeff = 1;
        let mut factors = Vec::new();
        if let Tok::Int(v) = self.peek().tok {
            self.next();
            coeff = v;
            if self.peek().tok == Tok::Sym('*') {
                self.next();
                factors.push(self.factor()?);
            } else if self.factor_start().is_some() {
                factors.push(self.factor()?);
            }
        } else {
            factors.push(self.factor()?);
        }
        while self.peek().tok == Tok::Sym('*') {
            self.next();
            factors.push(self.factor()?);
        }
        Ok(RawTerm {
            negative,
            coeff,
            factors,
        })
    }

    fn poly(&mut self) -> Result<Vec<RawTerm>> {
        let mut negative = false;
        if self.peek().tok == Tok::Sym('-') {
            self.next();
            negative = true;
        }
        let mut terms = vec![self.term(negative)?];
        loop {
            match self.peek().tok {
                Tok::Sym('+') => {
                    self.next();
                    terms.push(self.term(false)?);
                }
                Tok::Sym('-') => {
                    self.next();
                    terms.push(self.term(true)?);
                }
                _ => return Ok(terms),
            }
        }
    }
}

/// Parses and validates a law written in the group DSL.
///
/// Syntax problems are reported as [`Error::Syntax`] with a line and column;
/// a non-prime characteristic, a broken identity axiom or a non-triangular
/// coordinate are reported as semantic errors.
pub fn parse_group_dsl(text: &str) -> Result<GroupLaw> {
    let mut ps = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    ps.keyword("group")?;
    let name = ps.name()?;
    ps.keyword("dim")?;
    let dim_at = ps.peek().clone();
    let dim = ps.int()?;
    if dim == 0 || dim > 64 {
        return ps.error(&dim_at, "dimension must be between 1 and 64");
    }
    let dim = dim as usize;
    ps.keyword("char")?;
    let p_at = ps.peek().clone();
    let p = ps.int()?;
    if p > u32::MAX as u64 {
        return ps.error(&p_at, "characteristic too large");
    }

    let mut stmts: Vec<Option<Vec<RawTerm>>> = (0..dim).map(|_| None).collect();
    loop {
        if ps.peek().tok == Tok::Eof {
            break;
        }
        ps.keyword("mul")?;
        ps.sym('[')?;
        let idx_at = ps.peek().clone();
        let idx = ps.int()?;
        ps.sym(']')?;
        ps.sym('=')?;
        let terms = ps.poly()?;
        if idx == 0 || idx as usize > dim {
            return ps.error(&idx_at, format!("coordinate index {idx} outside 1..={dim}"));
        }
        if stmts[idx as usize - 1].is_some() {
            return ps.error(&idx_at, format!("mul[{idx}] defined twice"));
        }
        stmts[idx as usize - 1] = Some(terms);
    }

    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = p as u32;
    let nvars = 2 * dim;
    let mut mul = Vec::with_capacity(dim);
    for (i, stmt) in stmts.into_iter().enumerate() {
        let Some(raw) = stmt else {
            return Err(Error::InvalidLaw(format!("mul[{}] is missing", i + 1)));
        };
        let mut terms = Vec::with_capacity(raw.len());
        for t in raw {
            let mut exps = vec![0u32; nvars];
            for f in &t.factors {
                if f.index == 0 || f.index as usize > dim {
                    return Err(Error::Syntax {
                        line: f.line,
                        column: f.column,
                        message: format!("variable {}{} outside 1..={dim}", f.var, f.index),
                    });
                }
                let v = f.index as usize - 1 + if f.var == 'y' { dim } else { 0 };
                let exp = u32::try_from(f.exp).ok().and_then(|e| e.checked_add(exps[v]));
                exps[v] = exp.ok_or_else(|| Error::InvalidLaw("exponent too large".into()))?;
            }
            let c = (t.coeff % p as u64) as u32;
            let coeff = if t.negative && c != 0 { p - c } else { c };
            terms.push(Term { coeff, exps });
        }
        mul.push(Polynomial::from_terms(p, nvars, terms));
    }
    GroupLaw::new(name, p, mul)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_laws::{builtin, Family};

    const N2: &str = "group n2 dim 2 char 3\nmul[1] = x1 + y1\nmul[2] = x2 + y2 + x1 * y1^3\n";

    #[test]
    fn n2_text_matches_builtin() {
        let law = parse_group_dsl(N2).unwrap();
        assert_eq!(law, builtin(Family::N2, 3).unwrap());
        assert_eq!(law.to_dsl(), N2);
    }

    #[test]
    fn builtins_round_trip() {
        for (fam, p) in [(Family::Ul(4), 3), (Family::GaPower(2), 5), (Family::N2, 2)] {
            let law = builtin(fam, p).unwrap();
            let back = parse_group_dsl(&law.to_dsl()).unwrap();
            assert_eq!(back, law);
            assert_eq!(back.name(), law.name());
        }
    }

    #[test]
    fn non_triangular_rejected() {
        let text = "group bad dim 2 char 3\nmul[1] = x1 + y1 + x2*y2\nmul[2] = x2 + y2\n";
        assert_eq!(
            parse_group_dsl(text).unwrap_err(),
            Error::NotTriangular {
                coordinate: 1,
                depends_on: 2
            }
        );
    }

    #[test]
    fn composite_characteristic_rejected() {
        let text = "group g dim 1 char 4\nmul[1] = x1 + y1\n";
        assert_eq!(parse_group_dsl(text).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn identity_violation_rejected() {
        let text = "group g dim 2 char 3\nmul[1] = x1 + y1\nmul[2] = x2 + y2 + x1*y1 + x1\n";
        assert!(matches!(parse_group_dsl(text), Err(Error::InvalidLaw(_))));
    }

    #[test]
    fn syntax_errors_carry_location() {
        let text = "group g dim 1 char 3\nmul[1] = x1 + + y1\n";
        match parse_group_dsl(text).unwrap_err() {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (2, 15)),
            e => panic!("unexpected {e:?}"),
        }
        let text = "group g dim 1 char 3\nmul[1] = x1 $ y1\n";
        assert!(matches!(
            parse_group_dsl(text),
            Err(Error::Syntax { line: 2, column: 13, .. })
        ));
    }

    #[test]
    fn coefficients_signs_and_comments() {
        let text = "# heisenberg-like\ngroup h dim 3 char 5\nmul[1] = x1 + y1\nmul[2] = x2 + y2\nmul[3] = x3 + y3 + 2 x1*y2 - x2 * y1 + 3*x2*y1\n";
        let law = parse_group_dsl(text).unwrap();
        assert_eq!(
            law.to_dsl().lines().nth(3).unwrap(),
            "mul[3] = x3 + y3 + 2 * x1 * y2 + 2 * x2 * y1"
        );
    }
}
