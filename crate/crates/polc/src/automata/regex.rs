//! Regex parsing and Thompson construction.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term ('|' term)*
//! term   := factor+
//! factor := atom '*'?
//! atom   := letter | '(' expr ')' | '()'
//! ```
//!
//! `()` denotes the singleton language `{ε}`. The empty pattern is rejected.

use super::{Alphabet, Nfa};
use crate::{Error, Result};

enum Ast {
    Epsilon,
    Letter(char),
    Union(Box<Ast>, Box<Ast>),
    Concat(Box<Ast>, Box<Ast>),
    Star(Box<Ast>),
}

struct Parser<'a> {
    input: Vec<(usize, char)>,
    pos: usize,
    alphabet: &'a Alphabet,
    len_bytes: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &str, alphabet: &'a Alphabet) -> Parser<'a> {
        Parser {
            input: text.char_indices().collect(),
            pos: 0,
            alphabet,
            len_bytes: text.len(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(&(_, c)) = self.input.get(self.pos) {
            if c.is_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<(usize, char)> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn offset(&mut self) -> usize {
        self.peek().map(|(o, _)| o).unwrap_or(self.len_bytes)
    }

    fn err(&mut self, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn parse_expr(&mut self) -> Result<Ast> {
        let mut node = self.parse_term()?;
        while let Some((_, '|')) = self.peek() {
            self.bump();
            let rhs = self.parse_term()?;
            node = Ast::Union(Box::new(node), Box::new(rhs));
        }
        Ok(node)
    }

    fn parse_term(&mut self) -> Result<Ast> {
        let mut node = self.parse_factor()?;
        while let Some((_, c)) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let rhs = self.parse_factor()?;
            node = Ast::Concat(Box::new(node), Box::new(rhs));
        }
        Ok(node)
    }

    fn parse_factor(&mut self) -> Result<Ast> {
        let mut node = self.parse_atom()?;
        while let Some((_, '*')) = self.peek() {
            self.bump();
            node = Ast::Star(Box::new(node));
        }
        Ok(node)
    }

    fn parse_atom(&mut self) -> Result<Ast> {
        match self.peek() {
            None => Err(self.err("expected a letter or '(', found end of pattern")),
            Some((offset, c)) => {
                if c == '(' {
                    self.bump();
                    if let Some((_, ')')) = self.peek() {
                        self.bump();
                        return Ok(Ast::Epsilon);
                    }
                    let inner = self.parse_expr()?;
                    match self.bump() {
                        Some((_, ')')) => Ok(inner),
                        _ => Err(Error::Syntax {
                            offset,
                            message: "unclosed '('".into(),
                        }),
                    }
                } else if c == ')' || c == '*' || c == '|' {
                    Err(self.err(format!("unexpected '{c}'")))
                } else if self.alphabet.index_of(c).is_none() {
                    Err(Error::Syntax {
                        offset,
                        message: format!("letter '{c}' is not in the alphabet {}", self.alphabet),
                    })
                } else {
                    self.bump();
                    Ok(Ast::Letter(c))
                }
            }
        }
    }
}

/// Parses `text` into an NFA over `alphabet`.
///
/// Rejects the empty pattern (use `()` for `{ε}`) and letters outside the
/// alphabet; syntax errors carry the byte offset of the offending character.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Nfa> {
    let mut parser = Parser::new(text, alphabet);
    if parser.peek().is_none() {
        return Err(Error::Syntax {
            offset: 0,
            message: "empty pattern rejected; use \"()\" for {ε}".into(),
        });
    }
    let ast = parser.parse_expr()?;
    if let Some((offset, c)) = parser.peek() {
        return Err(Error::Syntax {
            offset,
            message: format!("unexpected '{c}' after end of expression"),
        });
    }
    let mut nfa = Nfa::new(alphabet.clone(), 0);
    let (start, end) = build(&ast, &mut nfa);
    nfa.mark_initial(start);
    nfa.mark_final(end);
    Ok(nfa)
}

/// Thompson construction; returns the fragment's (start, end) states.
fn build(ast: &Ast, nfa: &mut Nfa) -> (usize, usize) {
    match ast {
        Ast::Epsilon => {
            let s = nfa.add_state();
            let e = nfa.add_state();
            nfa.add_transition(s, None, e);
            (s, e)
        }
        Ast::Letter(c) => {
            let s = nfa.add_state();
            let e = nfa.add_state();
            nfa.add_transition(s, Some(*c), e);
            (s, e)
        }
        Ast::Union(l, r) => {
            let (ls, le) = build(l, nfa);
            let (rs, re) = build(r, nfa);
            let s = nfa.add_state();
            let e = nfa.add_state();
            nfa.add_transition(s, None, ls);
            nfa.add_transition(s, None, rs);
            nfa.add_transition(le, None, e);
            nfa.add_transition(re, None, e);
            (s, e)
        }
        Ast::Concat(l, r) => {
            let (ls, le) = build(l, nfa);
            let (rs, re) = build(r, nfa);
            nfa.add_transition(le, None, rs);
            (ls, re)
        }
        Ast::Star(inner) => {
            let (is, ie) = build(inner, nfa);
            let s = nfa.add_state();
            let e = nfa.add_state();
            nfa.add_transition(s, None, is);
            nfa.add_transition(s, None, e);
            nfa.add_transition(ie, None, is);
            nfa.add_transition(ie, None, e);
            (s, e)
        }
    }
}
