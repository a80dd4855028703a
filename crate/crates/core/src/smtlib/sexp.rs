//! A tiny s-expression reader, used to sanity-check emitted scripts and to
//! pull variable assignments out of solver models.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Sexp {
    Sym(String),
    List(Vec<Sexp>),
}

impl Sexp {
    pub fn sym(&self) -> Option<&str> {
        match self {
            Sexp::Sym(s) => Some(s),
            Sexp::List(_) => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::Sym(_) => None,
            Sexp::List(items) => Some(items),
        }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Sym(s) => f.write_str(s),
            Sexp::List(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Parses every complete top-level s-expression, skipping `;` comments and
/// ignoring stray atoms like the `sat`/`unsat` status line. Unbalanced
/// input yields `None`.
pub fn parse_all(input: &str) -> Option<Vec<Sexp>> {
    let mut lexer = Lexer {
        src: input.as_bytes(),
        pos: 0,
    };
    let mut out = Vec::new();
    loop {
        match lexer.next_token() {
            None => return Some(out),
            Some(Token::Open) => out.push(lexer.finish_list()?),
            Some(Token::Close) => return None,
            Some(Token::Atom(s)) => out.push(Sexp::Sym(s)),
        }
    }
}

enum Token {
    Open,
    Close,
    Atom(String),
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn next_token(&mut self) -> Option<Token> {
        loop {
            let c = *self.src.get(self.pos)?;
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else if c == b';' {
                while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
        let c = self.src[self.pos];
        match c {
            b'(' => {
                self.pos += 1;
                Some(Token::Open)
            }
            b')' => {
                self.pos += 1;
                Some(Token::Close)
            }
            b'|' => {
                // quoted symbol
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len() && self.src[self.pos] != b'|' {
                    self.pos += 1;
                }
                self.pos = (self.pos + 1).min(self.src.len());
                Some(Token::Atom(
                    String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(),
                ))
            }
            _ => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && !self.src[self.pos].is_ascii_whitespace()
                    && !matches!(self.src[self.pos], b'(' | b')' | b';')
                {
                    self.pos += 1;
                }
                Some(Token::Atom(
                    String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(),
                ))
            }
        }
    }

    fn finish_list(&mut self) -> Option<Sexp> {
        let mut items = Vec::new();
        loop {
            match self.next_token()? {
                Token::Open => items.push(self.finish_list()?),
                Token::Close => return Some(Sexp::List(items)),
                Token::Atom(s) => items.push(Sexp::Sym(s)),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_scripts() {
        let forms = parse_all("(set-logic QF_NRA)\n; comment\n(assert (> x 0))\n(check-sat)")
            .unwrap();
        assert_eq!(forms.len(), 3);
        assert_eq!(forms[0].list().unwrap()[0].sym(), Some("set-logic"));
    }

    #[test]
    fn rejects_unbalanced() {
        assert!(parse_all("(assert (> x 0)").is_none());
        assert!(parse_all(")").is_none());
    }

    #[test]
    fn tolerates_status_lines() {
        let forms = parse_all("sat\n(model (define-fun x () Real 1.0))").unwrap();
        assert_eq!(forms.len(), 2);
        assert_eq!(forms[0].sym(), Some("sat"));
    }
}
