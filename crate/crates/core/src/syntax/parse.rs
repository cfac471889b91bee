use thiserror::Error;

use super::{is_valid_name, Regex, RESERVED};

/// Parse failure with the character offset at which it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected character {0:?}")]
    Unexpected(char),
    #[error("expected {0:?}")]
    Expected(char),
    #[error("expected a variable name")]
    ExpectedName,
    #[error("invalid variable name {0:?}")]
    InvalidName(String),
    #[error("variable {0:?} is bound or referenced inside its own binding")]
    Rebinding(String),
    #[error("`#` is only allowed as the entire regex")]
    EmptyNotAtRoot,
    #[error("unknown escape \\{0}")]
    UnknownEscape(char),
}

/// Parses the concrete syntax into an AST.
///
/// ```text
/// regex := alt
/// alt   := cat ('|' cat)*
/// cat   := rep+
/// rep   := atom ('+' | '*')*
/// atom  := CHAR | '\' ANY | '()' | '(' alt ')' | '{' NAME ':' alt '}' | '&' NAME | '#'
/// ```
pub fn parse(text: &str) -> Result<Regex, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        empty_at: None,
    };
    let r = p.alt()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.err(ParseErrorKind::Unexpected(c)));
    }
    if let Some(pos) = p.empty_at {
        if r != Regex::Empty {
            return Err(ParseError {
                pos,
                kind: ParseErrorKind::EmptyNotAtRoot,
            });
        }
    }
    Ok(r)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    empty_at: Option<usize>,
}

impl Parser {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            pos: self.pos,
            kind,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => Err(self.err(ParseErrorKind::Expected(c))),
            None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
        }
    }

    fn alt(&mut self) -> Result<Regex, ParseError> {
        let mut items = vec![self.cat()?];
        loop {
            self.skip_ws();
            if self.peek() != Some('|') {
                break;
            }
            self.pos += 1;
            items.push(self.cat()?);
        }
        Ok(Regex::alt_all(items).expect("at least one alternative"))
    }

    fn cat(&mut self) -> Result<Regex, ParseError> {
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some('|') | Some(')') | Some('}') => break,
                _ => items.push(self.rep()?),
            }
        }
        if items.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.err(ParseErrorKind::Unexpected(c)),
                None => self.err(ParseErrorKind::UnexpectedEnd),
            });
        }
        Ok(Regex::concat_all(items))
    }

    fn rep(&mut self) -> Result<Regex, ParseError> {
        let mut r = self.atom()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => r = Regex::plus(r),
                Some('*') => r = Regex::star(r),
                _ => break,
            }
            self.pos += 1;
        }
        Ok(r)
    }

    fn name(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        if name.is_empty() {
            self.pos = start;
            return Err(self.err(ParseErrorKind::ExpectedName));
        }
        if !is_valid_name(&name) {
            self.pos = start;
            return Err(self.err(ParseErrorKind::InvalidName(name)));
        }
        Ok(name)
    }

    fn atom(&mut self) -> Result<Regex, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let c = self
            .peek()
            .ok_or_else(|| self.err(ParseErrorKind::UnexpectedEnd))?;
        self.pos += 1;
        match c {
            '(' => {
                self.skip_ws();
                if self.peek() == Some(')') {
                    self.pos += 1;
                    return Ok(Regex::Epsilon);
                }
                let r = self.alt()?;
                self.expect(')')?;
                Ok(r)
            }
            '{' => {
                let name = self.name()?;
                self.expect(':')?;
                let body = self.alt()?;
                self.expect('}')?;
                if body.variables().contains(&name) {
                    return Err(ParseError {
                        pos: start,
                        kind: ParseErrorKind::Rebinding(name),
                    });
                }
                Ok(Regex::bind(name, body))
            }
            '&' => Ok(Regex::Ref(self.name()?)),
            '#' => {
                self.empty_at.get_or_insert(start);
                Ok(Regex::Empty)
            }
            '\\' => {
                let e = self
                    .peek()
                    .ok_or_else(|| self.err(ParseErrorKind::UnexpectedEnd))?;
                self.pos += 1;
                if RESERVED.contains(&e) || e.is_whitespace() {
                    Ok(Regex::Char(e))
                } else {
                    Err(ParseError {
                        pos: start,
                        kind: ParseErrorKind::UnknownEscape(e),
                    })
                }
            }
            c if RESERVED.contains(&c) => {
                self.pos = start;
                Err(self.err(ParseErrorKind::Unexpected(c)))
            }
            c => Ok(Regex::Char(c)),
        }
    }
}
