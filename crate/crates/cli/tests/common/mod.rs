//! Helpers for driving the compiled binary, plus a small DOT syntax
//! checker covering the grammar subset the tool emits.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn fixture_path() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/workflow1.json"))
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowgroup"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout(args: &[&str]) -> String {
    let output = run(args);
    assert!(
        output.status.success(),
        "flowgroup {args:?} failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout).expect("utf-8 output")
}

// --- DOT syntax checking ------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Id(String),
    Quoted(String),
    Arrow,
    Semi,
    Comma,
    Equals,
    OpenBrace,
    CloseBrace,
    OpenBracket,
    CloseBracket,
}

fn tokenize(text: &str) -> Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '"' => {
                chars.next();
                let mut value = String::new();
                loop {
                    match chars.next() {
                        Some('\\') => match chars.next() {
                            Some(escaped) => value.push(escaped),
                            None => return Err("dangling escape".into()),
                        },
                        Some('"') => break,
                        Some(c) => value.push(c),
                        None => return Err("unterminated string".into()),
                    }
                }
                tokens.push(Token::Quoted(value));
            }
            '-' => {
                chars.next();
                match chars.next() {
                    Some('>') => tokens.push(Token::Arrow),
                    other => return Err(format!("expected -> but got -{other:?}")),
                }
            }
            ';' => {
                chars.next();
                tokens.push(Token::Semi);
            }
            ',' => {
                chars.next();
                tokens.push(Token::Comma);
            }
            '=' => {
                chars.next();
                tokens.push(Token::Equals);
            }
            '{' => {
                chars.next();
                tokens.push(Token::OpenBrace);
            }
            '}' => {
                chars.next();
                tokens.push(Token::CloseBrace);
            }
            '[' => {
                chars.next();
                tokens.push(Token::OpenBracket);
            }
            ']' => {
                chars.next();
                tokens.push(Token::CloseBracket);
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' => {
                let mut value = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '.' {
                        value.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Id(value));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    position: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.position)
    }

    fn next(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.position).cloned();
        self.position += 1;
        token
    }

    fn expect(&mut self, token: Token) -> Result<(), String> {
        match self.next() {
            Some(t) if t == token => Ok(()),
            other => Err(format!("expected {token:?}, got {other:?}")),
        }
    }

    fn name(&mut self) -> Result<String, String> {
        match self.next() {
            Some(Token::Id(v)) | Some(Token::Quoted(v)) => Ok(v),
            other => Err(format!("expected identifier, got {other:?}")),
        }
    }

    fn attr_list(&mut self) -> Result<(), String> {
        self.expect(Token::OpenBracket)?;
        loop {
            match self.peek() {
                Some(Token::CloseBracket) => {
                    self.next();
                    return Ok(());
                }
                _ => {
                    self.name()?;
                    self.expect(Token::Equals)?;
                    self.name()?;
                    if matches!(self.peek(), Some(Token::Comma)) {
                        self.next();
                    }
                }
            }
        }
    }

    fn statements(&mut self) -> Result<(), String> {
        loop {
            match self.peek() {
                Some(Token::CloseBrace) | None => return Ok(()),
                Some(Token::Id(keyword)) if keyword == "subgraph" => {
                    self.next();
                    self.name()?;
                    self.expect(Token::OpenBrace)?;
                    self.statements()?;
                    self.expect(Token::CloseBrace)?;
                }
                _ => {
                    self.name()?;
                    match self.peek() {
                        Some(Token::Arrow) => {
                            self.next();
                            self.name()?;
                            if matches!(self.peek(), Some(Token::OpenBracket)) {
                                self.attr_list()?;
                            }
                            self.expect(Token::Semi)?;
                        }
                        Some(Token::Equals) => {
                            self.next();
                            self.name()?;
                            self.expect(Token::Semi)?;
                        }
                        _ => {
                            if matches!(self.peek(), Some(Token::OpenBracket)) {
                                self.attr_list()?;
                            }
                            self.expect(Token::Semi)?;
                        }
                    }
                }
            }
        }
    }
}

/// Validate a DOT document against the emitted grammar subset.
pub fn check_dot(text: &str) -> Result<(), String> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, position: 0 };
    match parser.next() {
        Some(Token::Id(keyword)) if keyword == "digraph" => {}
        other => return Err(format!("expected digraph, got {other:?}")),
    }
    if !matches!(parser.peek(), Some(Token::OpenBrace)) {
        parser.name()?;
    }
    parser.expect(Token::OpenBrace)?;
    parser.statements()?;
    parser.expect(Token::CloseBrace)?;
    match parser.next() {
        None => Ok(()),
        other => Err(format!("trailing tokens: {other:?}")),
    }
}

#[test]
fn dot_checker_accepts_and_rejects() {
    check_dot("digraph \"g\" { \"a\"; \"a\" -> \"b\" [label=\"1\"]; }").unwrap();
    check_dot("digraph g { subgraph cluster_0 { label=\"x\"; \"a\"; } \"a\" -> \"b\"; }").unwrap();
    assert!(check_dot("graph g { }").is_err());
    assert!(check_dot("digraph g { \"a\" -> ; }").is_err());
    assert!(check_dot("digraph g { \"a\"; ").is_err());
}
