//! Tokenizer for the accepted source subset.
//!
//! The lexer is deliberately wider than the grammar: it tokenizes operators
//! the parser will reject, so a rejected construct is reported by the parser
//! with the offending token instead of as an opaque lexical error.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Int,
    Float,
    Str,
    Char,
    Punct,
    Eof,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub line: usize,
    pub column: usize,
}

impl Token {
    pub fn is_punct(&self, p: &str) -> bool {
        self.kind == TokenKind::Punct && self.text == p
    }

    pub fn is_word(&self, w: &str) -> bool {
        self.kind == TokenKind::Ident && self.text == w
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TokenKind::Eof => f.write_str("end of file"),
            _ => write!(f, "`{}`", self.text),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

const MULTI_PUNCT: [&str; 19] = [
    ">>>=", "<<=", ">>=", "...", "->", "::", "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=",
    "-=", "*=", "/=", "%=",
];
const SINGLE_PUNCT: &str = "{}()[];,.=<>+-*/%!&|^?:@~";

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars()
            .enumerate()
            .all(|(i, c)| self.peek_at(i) == Some(c))
    }
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, LexError> {
    let mut cur = Cursor::new(src);
    let mut tokens = Vec::new();

    while let Some(c) = cur.peek() {
        let (line, column) = (cur.line, cur.column);
        if c.is_whitespace() {
            cur.bump();
        } else if cur.starts_with("//") {
            while let Some(c) = cur.peek() {
                if c == '\n' {
                    break;
                }
                cur.bump();
            }
        } else if cur.starts_with("/*") {
            cur.bump();
            cur.bump();
            loop {
                if cur.starts_with("*/") {
                    cur.bump();
                    cur.bump();
                    break;
                }
                if cur.bump().is_none() {
                    return Err(LexError {
                        line,
                        column,
                        message: "unterminated block comment".into(),
                    });
                }
            }
        } else if c.is_alphabetic() || c == '_' || c == '$' {
            let mut text = String::new();
            while let Some(c) = cur.peek() {
                if c.is_alphanumeric() || c == '_' || c == '$' {
                    text.push(c);
                    cur.bump();
                } else {
                    break;
                }
            }
            tokens.push(Token {
                kind: TokenKind::Ident,
                text,
                line,
                column,
            });
        } else if c.is_ascii_digit() || (c == '.' && cur.peek_at(1).is_some_and(|d| d.is_ascii_digit())) {
            let mut text = String::new();
            let mut float = false;
            while let Some(c) = cur.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    text.push(c);
                    cur.bump();
                } else if c == '.' && cur.peek_at(1).is_some_and(|d| d.is_ascii_digit()) {
                    float = true;
                    text.push(c);
                    cur.bump();
                } else {
                    break;
                }
            }
            let lower = text.to_ascii_lowercase();
            if !lower.starts_with("0x") && (lower.ends_with('f') || lower.ends_with('d')) {
                float = true;
            }
            tokens.push(Token {
                kind: if float { TokenKind::Float } else { TokenKind::Int },
                text,
                line,
                column,
            });
        } else if c == '"' || c == '\'' {
            let quote = c;
            let mut text = String::new();
            text.push(quote);
            cur.bump();
            loop {
                match cur.bump() {
                    Some('\\') => {
                        text.push('\\');
                        match cur.bump() {
                            Some(e) if e != '\n' => text.push(e),
                            _ => {
                                return Err(LexError {
                                    line,
                                    column,
                                    message: "unterminated literal".into(),
                                })
                            }
                        }
                    }
                    Some(q) if q == quote => {
                        text.push(q);
                        break;
                    }
                    Some('\n') | None => {
                        return Err(LexError {
                            line,
                            column,
                            message: "unterminated literal".into(),
                        })
                    }
                    Some(other) => text.push(other),
                }
            }
            tokens.push(Token {
                kind: if quote == '"' { TokenKind::Str } else { TokenKind::Char },
                text,
                line,
                column,
            });
        } else if let Some(p) = MULTI_PUNCT.iter().find(|p| cur.starts_with(p)) {
            for _ in 0..p.chars().count() {
                cur.bump();
            }
            tokens.push(Token {
                kind: TokenKind::Punct,
                text: (*p).to_string(),
                line,
                column,
            });
        } else if SINGLE_PUNCT.contains(c) {
            cur.bump();
            tokens.push(Token {
                kind: TokenKind::Punct,
                text: c.to_string(),
                line,
                column,
            });
        } else {
            return Err(LexError {
                line,
                column,
                message: format!("unexpected character `{}`", c),
            });
        }
    }

    tokens.push(Token {
        kind: TokenKind::Eof,
        text: String::new(),
        line: cur.line,
        column: cur.column,
    });
    Ok(tokens)
}

/// Counts lines that carry code: neither blank nor comment-only.
///
/// Tolerant of malformed input (an unterminated comment simply runs to the
/// end of the text) so it can be computed before parsing.
pub fn code_line_count(src: &str) -> usize {
    #[derive(PartialEq)]
    enum State {
        Code,
        LineComment,
        BlockComment,
        Literal(char),
    }

    let chars: Vec<char> = src.chars().collect();
    let mut state = State::Code;
    let mut count = 0;
    let mut line_has_code = false;
    let mut i = 0;

    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        if c == '\n' {
            if line_has_code {
                count += 1;
            }
            line_has_code = false;
            if matches!(state, State::LineComment | State::Literal(_)) {
                state = State::Code;
            }
            i += 1;
            continue;
        }
        match state {
            State::Code => {
                if c == '/' && next == Some('/') {
                    state = State::LineComment;
                    i += 1;
                } else if c == '/' && next == Some('*') {
                    state = State::BlockComment;
                    i += 1;
                } else if !c.is_whitespace() {
                    line_has_code = true;
                    if c == '"' || c == '\'' {
                        state = State::Literal(c);
                    }
                }
            }
            State::LineComment => {}
            State::BlockComment => {
                if c == '*' && next == Some('/') {
                    state = State::Code;
                    i += 1;
                }
            }
            State::Literal(q) => {
                if c == '\\' {
                    i += 1;
                } else if c == q {
                    state = State::Code;
                }
            }
        }
        i += 1;
    }
    if line_has_code {
        count += 1;
    }
    count
}
