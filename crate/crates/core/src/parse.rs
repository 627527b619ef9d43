//! Tokenizer for the shared word grammar.
//!
//! ```text
//! word  := "1" | token ((whitespace | "*") token)*
//! token := name ("^" signed-integer)?
//! ```
//!
//! The empty string is accepted as the identity. Names are any run of
//! characters other than whitespace, `*` and `^`; interpreting a name is
//! left to the caller.

use std::fmt;

use thiserror::Error;

/// A parse failure, located by 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl fmt::Display) -> Self {
        Self {
            line,
            column,
            message: message.to_string(),
        }
    }

    pub(crate) fn at(token: &Token<'_>, message: impl fmt::Display) -> Self {
        Self::new(token.line, token.column, message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token<'a> {
    pub name: &'a str,
    pub exponent: i64,
    pub line: usize,
    pub column: usize,
}

impl Token<'_> {
    /// `1` with any exponent denotes the identity.
    pub fn is_identity(&self) -> bool {
        self.name == "1"
    }
}

fn is_separator(c: char) -> bool {
    c.is_whitespace() || c == '*'
}

pub fn tokenize(input: &str) -> Result<Vec<Token<'_>>, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1;
    let mut line_start = 0;
    let mut chars = input.char_indices().peekable();

    let column_of = |pos: usize, line_start: usize| input[line_start..pos].chars().count() + 1;

    while let Some(&(pos, c)) = chars.peek() {
        if c == '\n' {
            chars.next();
            line += 1;
            line_start = pos + 1;
            continue;
        }
        if is_separator(c) {
            chars.next();
            continue;
        }
        if c == '^' {
            return Err(ParseError::new(
                line,
                column_of(pos, line_start),
                "exponent without a generator name",
            ));
        }
        let start = pos;
        let mut end = input.len();
        while let Some(&(p, ch)) = chars.peek() {
            if is_separator(ch) || ch == '^' {
                end = p;
                break;
            }
            chars.next();
        }
        let name = &input[start..end];
        let column = column_of(start, line_start);
        let mut exponent = 1;
        if let Some(&(caret, '^')) = chars.peek() {
            chars.next();
            let exp_start = caret + 1;
            let mut exp_end = input.len();
            let mut first = true;
            while let Some(&(p, ch)) = chars.peek() {
                let sign_ok = first && (ch == '-' || ch == '+');
                if !(ch.is_ascii_digit() || sign_ok) {
                    exp_end = p;
                    break;
                }
                first = false;
                chars.next();
            }
            let text = &input[exp_start..exp_end];
            exponent = text.parse::<i64>().map_err(|_| {
                ParseError::new(
                    line,
                    column_of(exp_start, line_start),
                    format!("invalid exponent {text:?}"),
                )
            })?;
            if let Some(&(p, ch)) = chars.peek() {
                if !is_separator(ch) {
                    return Err(ParseError::new(
                        line,
                        column_of(p, line_start),
                        format!("unexpected character {ch:?} after exponent"),
                    ));
                }
            }
        }
        tokens.push(Token {
            name,
            exponent,
            line,
            column,
        });
    }
    Ok(tokens)
}
