//! Recursive-descent parser for the program file format:
//!
//! ```text
//! program   := (directive | rule)*
//! directive := "#universe" atom ("," atom)* "."
//! rule      := head "." | head ":-" body "." | ":-" body "."
//! head      := atom ("|" atom)*
//! body      := literal ("," literal)*
//! literal   := atom | "not" atom | "not" "not" atom
//! ```
//!
//! `%` starts a line comment. A body may also be empty (`:- .`), which is
//! how the always-false constraint is written.

use std::collections::HashMap;

use crate::atoms::{is_identifier, AtomLimit, AtomSet, Symbols};
use crate::error::{Error, Result};
use crate::syntax::{Program, Rule};

/// Options for [`parse_program_with`].
#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    /// When set, every atom in the text must be one of these, and the
    /// universe of the result is exactly this list.
    pub declared: Option<Vec<String>>,
    /// Symbol table to extend. Its atoms keep their indices; atoms of the
    /// text that are new are appended.
    pub base: Option<Symbols>,
    pub limit: AtomLimit,
}

pub fn parse_program(text: &str) -> Result<Program> {
    parse_program_with(text, &ParseOptions::default())
}

pub fn parse_program_with(text: &str, opts: &ParseOptions) -> Result<Program> {
    let tokens = tokenize(text)?;
    let items = Parser { tokens, pos: 0 }.program()?;

    let mut names: Vec<String> = opts
        .base
        .as_ref()
        .map(|s| s.names().to_vec())
        .unwrap_or_default();
    let mut index: HashMap<String, usize> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), i))
        .collect();
    let mut intern = |name: &str| -> usize {
        if let Some(&i) = index.get(name) {
            return i;
        }
        index.insert(name.to_string(), names.len());
        names.push(name.to_string());
        names.len() - 1
    };

    let mut universe = AtomSet::EMPTY;
    let declared = match &opts.declared {
        Some(list) => {
            let mut d = AtomSet::EMPTY;
            for n in list {
                if !is_identifier(n) {
                    return Err(Error::InvalidAtomName(n.clone()));
                }
                let i = intern(n);
                if i >= crate::atoms::MAX_SYMBOLS {
                    return Err(too_many(opts));
                }
                d.insert(i);
            }
            universe = d;
            Some(d)
        }
        None => None,
    };

    let mut rules = Vec::new();
    for item in &items {
        match item {
            Item::Universe(atoms) => {
                for at in atoms {
                    let i = intern(&at.name);
                    if i >= crate::atoms::MAX_SYMBOLS {
                        return Err(too_many(opts));
                    }
                    check_declared(declared, i, at)?;
                    universe.insert(i);
                }
            }
            Item::Rule(raw) => {
                let mut to_set = |atoms: &[Located]| -> Result<AtomSet> {
                    let mut s = AtomSet::EMPTY;
                    for at in atoms {
                        let i = intern(&at.name);
                        if i >= crate::atoms::MAX_SYMBOLS {
                            return Err(too_many(opts));
                        }
                        check_declared(declared, i, at)?;
                        if s.contains(i) {
                            return Err(Error::Parse {
                                line: at.line,
                                column: at.column,
                                message: format!("duplicate atom `{}` in literal list", at.name),
                            });
                        }
                        s.insert(i);
                    }
                    Ok(s)
                };
                let rule = Rule::new(
                    to_set(&raw.head)?,
                    to_set(&raw.pos)?,
                    to_set(&raw.neg)?,
                    to_set(&raw.dneg)?,
                );
                universe = universe | rule.atoms();
                rules.push(rule);
            }
        }
    }

    if universe.len() > opts.limit.get() {
        return Err(Error::UniverseTooLarge {
            size: universe.len(),
            limit: opts.limit.get(),
        });
    }
    let symbols = match &opts.base {
        Some(base) if base.len() == names.len() => base.clone(),
        _ => Symbols::new(names)?,
    };
    Program::new(symbols, universe, rules)
}

fn too_many(opts: &ParseOptions) -> Error {
    Error::UniverseTooLarge {
        size: crate::atoms::MAX_SYMBOLS + 1,
        limit: opts.limit.get(),
    }
}

fn check_declared(declared: Option<AtomSet>, i: usize, at: &Located) -> Result<()> {
    match declared {
        Some(d) if !d.contains(i) => Err(Error::OutsideDeclaredUniverse {
            atom: at.name.clone(),
            line: at.line,
            column: at.column,
        }),
        _ => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Not,
    Universe,
    Comma,
    Dot,
    If,
    Bar,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

#[derive(Clone, Debug)]
struct Located {
    name: String,
    line: usize,
    column: usize,
}

#[derive(Debug, Default)]
struct RawRule {
    head: Vec<Located>,
    pos: Vec<Located>,
    neg: Vec<Located>,
    dneg: Vec<Located>,
}

#[derive(Debug)]
enum Item {
    Universe(Vec<Located>),
    Rule(RawRule),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let mut push = |tok| {
                out.push(Token {
                    tok,
                    line: line_no,
                    column,
                })
            };
            match c {
                '%' => break,
                c if c.is_whitespace() => i += 1,
                ',' => {
                    push(Tok::Comma);
                    i += 1;
                }
                '.' => {
                    push(Tok::Dot);
                    i += 1;
                }
                '|' => {
                    push(Tok::Bar);
                    i += 1;
                }
                ':' if chars.get(i + 1) == Some(&'-') => {
                    push(Tok::If);
                    i += 2;
                }
                '#' => {
                    let start = i;
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                        i += 1;
                    }
                    let word: String = chars[start..i].iter().collect();
                    if word != "#universe" {
                        return Err(Error::Parse {
                            line: line_no,
                            column,
                            message: format!("unknown directive `{word}`"),
                        });
                    }
                    push(Tok::Universe);
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    let word: String = chars[start..i].iter().collect();
                    push(if word == "not" {
                        Tok::Not
                    } else {
                        Tok::Ident(word)
                    });
                }
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        column,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        let (line, column) = match self.peek() {
            Some(t) => (t.line, t.column),
            None => self
                .tokens
                .last()
                .map(|t| (t.line, t.column + 1))
                .unwrap_or((1, 1)),
        };
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|t| &t.tok) == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error_here(format!("expected {what}")))
        }
    }

    fn atom(&mut self) -> Result<Located> {
        match self.peek() {
            Some(Token {
                tok: Tok::Ident(name),
                line,
                column,
            }) => {
                let at = Located {
                    name: name.clone(),
                    line: *line,
                    column: *column,
                };
                self.pos += 1;
                Ok(at)
            }
            _ => Err(self.error_here("expected atom")),
        }
    }

    fn program(mut self) -> Result<Vec<Item>> {
        let mut items = Vec::new();
        while self.peek().is_some() {
            if self.eat(&Tok::Universe) {
                let mut atoms = Vec::new();
                if !self.eat(&Tok::Dot) {
                    atoms.push(self.atom()?);
                    while self.eat(&Tok::Comma) {
                        atoms.push(self.atom()?);
                    }
                    self.expect(Tok::Dot, "`.` after #universe list")?;
                }
                items.push(Item::Universe(atoms));
            } else {
                items.push(Item::Rule(self.rule()?));
            }
        }
        Ok(items)
    }

    fn rule(&mut self) -> Result<RawRule> {
        let mut rule = RawRule::default();
        if !matches!(self.peek().map(|t| &t.tok), Some(Tok::If)) {
            rule.head.push(self.atom()?);
            while self.eat(&Tok::Bar) {
                rule.head.push(self.atom()?);
            }
            if self.eat(&Tok::Dot) {
                return Ok(rule);
            }
        }
        self.expect(Tok::If, "`:-` or `.`")?;
        if self.eat(&Tok::Dot) {
            return Ok(rule);
        }
        loop {
            if self.eat(&Tok::Not) {
                if self.eat(&Tok::Not) {
                    rule.dneg.push(self.atom()?);
                } else {
                    rule.neg.push(self.atom()?);
                }
            } else {
                rule.pos.push(self.atom()?);
            }
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::Dot, "`,` or `.` in rule body")?;
        Ok(rule)
    }
}
