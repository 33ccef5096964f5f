//! Tokenizer shared by the expression language and the network format.

use super::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    /// Identifiers, keywords and numbers.
    Word(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    /// `\/`
    Or,
    /// `/\`
    And,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-' | '+')
}

/// Tokenizes one line; `line` and columns are 1-based.
pub fn tokenize(text: &str, line: usize) -> Result<Vec<Token>, CliError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let simple = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, line, column });
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c == '#' {
            break;
        } else if c == '\\' || c == '/' {
            let tok = match (c, chars.get(i + 1)) {
                ('\\', Some('/')) => Tok::Or,
                ('/', Some('\\')) => Tok::And,
                _ => {
                    return Err(CliError::syntax(
                        line,
                        column,
                        format!("unexpected character `{c}`"),
                    ))
                }
            };
            out.push(Token { tok, line, column });
            i += 2;
        } else if is_word_char(c) {
            let start = i;
            while i < chars.len() && is_word_char(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Word(word),
                line,
                column,
            });
        } else {
            return Err(CliError::syntax(
                line,
                column,
                format!("unexpected character `{c}`"),
            ));
        }
    }
    Ok(out)
}

/// Cursor over a token list with position-aware errors.
pub struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(tokens: &'a [Token], line: usize, end_column: usize) -> Self {
        Cursor {
            tokens,
            pos: 0,
            line,
            end_column,
        }
    }

    pub fn peek(&self) -> Option<&'a Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub fn next(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    /// Position of the current token, or just past the input.
    pub fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map_or((self.line, self.end_column), |t| (t.line, t.column))
    }

    pub fn error(&self, message: impl Into<String>) -> CliError {
        let (line, column) = self.here();
        CliError::syntax(line, column, message)
    }

    pub fn expect(&mut self, want: Tok, what: &str) -> Result<(), CliError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    pub fn word(&mut self, what: &str) -> Result<(&'a str, usize, usize), CliError> {
        match self.tokens.get(self.pos) {
            Some(Token {
                tok: Tok::Word(w),
                line,
                column,
            }) => {
                self.pos += 1;
                Ok((w.as_str(), *line, *column))
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    pub fn number(&mut self, what: &str) -> Result<f64, CliError> {
        let (w, line, column) = self.word(what)?;
        w.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| CliError::syntax(line, column, format!("expected {what}, found `{w}`")))
    }

    pub fn integer(&mut self, what: &str) -> Result<u64, CliError> {
        let (w, line, column) = self.word(what)?;
        w.parse::<u64>()
            .map_err(|_| CliError::syntax(line, column, format!("expected {what}, found `{w}`")))
    }

    /// `[x, y, ...]`, possibly empty.
    pub fn number_list(&mut self) -> Result<Vec<f64>, CliError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut values = Vec::new();
        if self.peek() == Some(&Tok::RBracket) {
            self.pos += 1;
            return Ok(values);
        }
        loop {
            values.push(self.number("a number")?);
            match self.peek() {
                Some(Tok::Comma) => self.pos += 1,
                Some(Tok::RBracket) => {
                    self.pos += 1;
                    return Ok(values);
                }
                _ => return Err(self.error("expected `,` or `]`")),
            }
        }
    }
}
