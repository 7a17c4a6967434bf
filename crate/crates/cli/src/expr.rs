//! Builder expressions such as `(antichain 2) ^ point + chain 3`.
//!
//! `+` is disjoint union, `^` is ordinal sum and binds tighter than `+`.

use std::fmt;

use hibi_core::Poset;

/// Posets are stored as 64-bit masks.
const MAX_ELEMENTS: usize = 64;

/// A syntax error, with the byte offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at position {}: {}",
            self.position, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Word(String),
    Number(usize),
    Plus,
    Caret,
    Open,
    Close,
    End,
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl Lexer<'_> {
    fn next(&mut self) -> Result<(usize, Token), ParseError> {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = bytes.get(self.pos) else {
            return Ok((start, Token::End));
        };
        let token = match c {
            b'+' => Token::Plus,
            b'^' => Token::Caret,
            b'(' => Token::Open,
            b')' => Token::Close,
            b'0'..=b'9' => {
                while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = &self.text[start..self.pos];
                let n = digits.parse().map_err(|_| ParseError {
                    position: start,
                    message: format!("number `{digits}` is too large"),
                })?;
                return Ok((start, Token::Number(n)));
            }
            c if c.is_ascii_alphabetic() => {
                while self.pos < bytes.len() && bytes[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                return Ok((start, Token::Word(self.text[start..self.pos].to_string())));
            }
            _ => {
                let ch = self.text[start..].chars().next().unwrap();
                return Err(ParseError {
                    position: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        self.pos += 1;
        Ok((start, token))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: (usize, Token),
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Parser<'a>, ParseError> {
        let mut lexer = Lexer { text, pos: 0 };
        let peeked = lexer.next()?;
        Ok(Parser { lexer, peeked })
    }

    fn bump(&mut self) -> Result<(usize, Token), ParseError> {
        let next = self.lexer.next()?;
        Ok(std::mem::replace(&mut self.peeked, next))
    }

    fn combine(
        &self,
        pos: usize,
        a: &Poset,
        b: &Poset,
        ordinal: bool,
    ) -> Result<Poset, ParseError> {
        if a.len() + b.len() > MAX_ELEMENTS {
            return Err(ParseError {
                position: pos,
                message: format!("posets are limited to {MAX_ELEMENTS} elements"),
            });
        }
        Ok(if ordinal {
            a.ordinal_sum(b)
        } else {
            a.disjoint_union(b)
        })
    }

    fn expr(&mut self) -> Result<Poset, ParseError> {
        let mut acc = self.term()?;
        while self.peeked.1 == Token::Plus {
            let (pos, _) = self.bump()?;
            let rhs = self.term()?;
            acc = self.combine(pos, &acc, &rhs, false)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poset, ParseError> {
        let mut acc = self.atom()?;
        while self.peeked.1 == Token::Caret {
            let (pos, _) = self.bump()?;
            let rhs = self.atom()?;
            acc = self.combine(pos, &acc, &rhs, true)?;
        }
        Ok(acc)
    }

    fn size(&mut self, word: &str) -> Result<usize, ParseError> {
        match self.bump()? {
            (_, Token::Number(n)) if n <= MAX_ELEMENTS => Ok(n),
            (pos, Token::Number(_)) => Err(ParseError {
                position: pos,
                message: format!("posets are limited to {MAX_ELEMENTS} elements"),
            }),
            (pos, _) => Err(ParseError {
                position: pos,
                message: format!("`{word}` needs a non-negative size"),
            }),
        }
    }

    fn atom(&mut self) -> Result<Poset, ParseError> {
        match self.bump()? {
            (_, Token::Open) => {
                let inner = self.expr()?;
                match self.bump()? {
                    (_, Token::Close) => Ok(inner),
                    (pos, _) => Err(ParseError {
                        position: pos,
                        message: "expected `)`".into(),
                    }),
                }
            }
            (pos, Token::Word(w)) => match w.as_str() {
                "chain" => Ok(Poset::chain(self.size("chain")?)),
                "antichain" => Ok(Poset::antichain(self.size("antichain")?)),
                "point" => Ok(Poset::point()),
                _ => Err(ParseError {
                    position: pos,
                    message: format!("unknown poset `{w}`"),
                }),
            },
            (pos, Token::End) => Err(ParseError {
                position: pos,
                message: "unexpected end of expression".into(),
            }),
            (pos, t) => Err(ParseError {
                position: pos,
                message: format!("unexpected {t:?}"),
            }),
        }
    }
}

/// Parses a builder expression.
pub fn builder_expression(text: &str) -> Result<Poset, ParseError> {
    let mut parser = Parser::new(text)?;
    let poset = parser.expr()?;
    match parser.peeked {
        (_, Token::End) => Ok(poset),
        (pos, _) => Err(ParseError {
            position: pos,
            message: "trailing input".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_chains() {
        let p = builder_expression("chain 2 + chain 3").unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p, Poset::chain(2).disjoint_union(&Poset::chain(3)));
        assert_eq!(p.connected_components().len(), 2);
    }

    #[test]
    fn wedge() {
        let p = builder_expression("(antichain 2) ^ point").unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.lt(0, 2) && p.lt(1, 2) && !p.comparable(0, 1));
    }

    #[test]
    fn caret_binds_tighter() {
        let p = builder_expression("point + point ^ point").unwrap();
        assert_eq!(p, Poset::point().disjoint_union(&Poset::chain(2)));
        let q = builder_expression("(point + point) ^ point").unwrap();
        assert_eq!(q, Poset::antichain(2).ordinal_sum(&Poset::point()));
    }

    #[test]
    fn errors_carry_positions() {
        let e = builder_expression("chain -1").unwrap_err();
        assert_eq!(e.position, 6);
        assert_eq!(builder_expression("chain 2 +").unwrap_err().position, 9);
        assert_eq!(builder_expression("(point").unwrap_err().position, 6);
        assert_eq!(builder_expression("cube 3").unwrap_err().position, 0);
        assert_eq!(builder_expression("point point").unwrap_err().position, 6);
        assert!(builder_expression("chain 40 + chain 40").is_err());
        assert!(builder_expression("chain 99999999999999999999999").is_err());
    }

    #[test]
    fn empty_pieces() {
        assert_eq!(builder_expression("antichain 0").unwrap().len(), 0);
        assert_eq!(builder_expression("chain 0 ^ point").unwrap().len(), 1);
    }
}
