//! Reader for `.lp` files.
//!
//! ```text
//! program := rule*
//! rule    := atom "." | atom ":-" lit ("," lit)* "."
//! lit     := atom | "not" atom | "true" | "false" | "not true" | "not false"
//! atom    := ident [ "(" arg ("," arg)* ")" ]
//! ```
//!
//! `%` starts a comment that runs to the end of the line. Parenthesised
//! arguments are part of the atom name: `inf( a )` and `inf(a)` denote the
//! same atom.

use super::program::{Program, ProgramBuilder, Rule};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Atom(String),
    Not,
    True,
    False,
    If,
    Comma,
    Dot,
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn err(at: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: at.line,
        column: at.column,
        message: message.into(),
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            pos: Pos { line: 1, column: 1 },
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == '%' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn skip_blanks(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace() && *c != '\n') {
            self.bump();
        }
    }

    fn word(&mut self, allow_digit_start: bool) -> Option<String> {
        match self.chars.peek() {
            Some(&c) if ident_start(c) || (allow_digit_start && c.is_ascii_digit()) => {}
            _ => return None,
        }
        let mut s = String::new();
        while let Some(&c) = self.chars.peek() {
            if ident_char(c) {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        Some(s)
    }

    fn next(&mut self) -> Result<Option<(Tok, Pos)>> {
        self.skip_trivia();
        let at = self.pos;
        let Some(&c) = self.chars.peek() else {
            return Ok(None);
        };
        let tok = match c {
            '.' => {
                self.bump();
                Tok::Dot
            }
            ',' => {
                self.bump();
                Tok::Comma
            }
            ':' => {
                self.bump();
                if self.bump() != Some('-') {
                    return Err(err(at, "expected `:-`"));
                }
                Tok::If
            }
            c if ident_start(c) => {
                let mut name = self.word(false).unwrap_or_default();
                self.skip_blanks();
                if self.chars.peek() == Some(&'(') {
                    self.bump();
                    let mut args = Vec::new();
                    loop {
                        self.skip_blanks();
                        let arg_at = self.pos;
                        let arg = self
                            .word(true)
                            .ok_or_else(|| err(arg_at, "expected an argument identifier"))?;
                        args.push(arg);
                        self.skip_blanks();
                        match self.bump() {
                            Some(',') => continue,
                            Some(')') => break,
                            _ => return Err(err(self.pos, "expected `,` or `)` in argument list")),
                        }
                    }
                    name = format!("{name}({})", args.join(","));
                    Tok::Atom(name)
                } else {
                    match name.as_str() {
                        "not" => Tok::Not,
                        "true" => Tok::True,
                        "false" => Tok::False,
                        _ => Tok::Atom(name),
                    }
                }
            }
            other => return Err(err(at, format!("unexpected character `{other}`"))),
        };
        Ok(Some((tok, at)))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<(Tok, Pos)>,
}

impl Parser<'_> {
    fn peek(&mut self) -> Result<Option<&(Tok, Pos)>> {
        if self.peeked.is_none() {
            self.peeked = self.lexer.next()?;
        }
        Ok(self.peeked.as_ref())
    }

    fn next(&mut self) -> Result<Option<(Tok, Pos)>> {
        self.peek()?;
        Ok(self.peeked.take())
    }

    fn expect_any(&mut self, what: &str) -> Result<(Tok, Pos)> {
        let end = self.lexer.pos;
        self.next()?
            .ok_or_else(|| err(end, format!("unexpected end of input, expected {what}")))
    }
}

enum Lit {
    Pos(usize),
    Neg(usize),
    Const(bool),
}

pub fn parse_program(text: &str) -> Result<Program> {
    let mut parser = Parser {
        lexer: Lexer::new(text),
        peeked: None,
    };
    let mut builder = ProgramBuilder::new();
    while parser.peek()?.is_some() {
        let (tok, at) = parser.expect_any("a rule head")?;
        let head = match tok {
            Tok::Atom(name) => builder.intern(&name),
            Tok::True | Tok::False => return Err(err(at, "a truth constant cannot be a rule head")),
            other => return Err(err(at, format!("expected a rule head, found {other:?}"))),
        };
        let (tok, at) = parser.expect_any("`.` or `:-`")?;
        let mut lits = Vec::new();
        match tok {
            Tok::Dot => {}
            Tok::If => loop {
                let (tok, at) = parser.expect_any("a body literal")?;
                let lit = match tok {
                    Tok::Atom(name) => Lit::Pos(builder.intern(&name)),
                    Tok::True => Lit::Const(true),
                    Tok::False => Lit::Const(false),
                    Tok::Not => {
                        let (tok, at) = parser.expect_any("an atom after `not`")?;
                        match tok {
                            Tok::Atom(name) => Lit::Neg(builder.intern(&name)),
                            Tok::True => Lit::Const(false),
                            Tok::False => Lit::Const(true),
                            other => return Err(err(at, format!("expected an atom after `not`, found {other:?}"))),
                        }
                    }
                    other => return Err(err(at, format!("expected a body literal, found {other:?}"))),
                };
                lits.push(lit);
                let (tok, at) = parser.expect_any("`,` or `.`")?;
                match tok {
                    Tok::Comma => continue,
                    Tok::Dot => break,
                    other => return Err(err(at, format!("expected `,` or `.`, found {other:?}"))),
                }
            },
            other => return Err(err(at, format!("expected `.` or `:-`, found {other:?}"))),
        }
        let (mut pos, mut neg, mut consts) = (Vec::new(), Vec::new(), Vec::new());
        for lit in lits {
            match lit {
                Lit::Pos(p) => pos.push(p),
                Lit::Neg(q) => neg.push(q),
                Lit::Const(c) => consts.push(c),
            }
        }
        builder.push(Rule::new(head, pos, neg, consts));
    }
    builder.finish()
}
