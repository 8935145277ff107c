//! Tokenizer shared by the scene, disturbance and task file readers.
//!
//! Every format is line oriented: one directive per line, whitespace
//! separated tokens, `#` starts a comment, double quotes group a token.

use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    /// 1-based column of the first character.
    pub column: usize,
}

#[derive(Debug)]
pub(crate) struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    pub fn keyword(&self) -> &'a str {
        self.tokens[0].text
    }

    pub fn args(&self) -> &[Token<'a>] {
        &self.tokens[1..]
    }

    pub fn end_column(&self) -> usize {
        self.tokens.last().map(|t| t.column + t.text.len()).unwrap_or(1)
    }

    pub fn expect_arity(&self, min: usize, max: usize) -> Result<(), ParseError> {
        let n = self.args().len();
        if n < min {
            return Err(ParseError::syntax(
                self.number,
                self.end_column(),
                format!("`{}` expects at least {min} argument(s), found {n}", self.keyword()),
            ));
        }
        if n > max {
            let extra = &self.args()[max];
            return Err(ParseError::syntax(
                self.number,
                extra.column,
                format!("unexpected token `{}` after `{}`", extra.text, self.keyword()),
            ));
        }
        Ok(())
    }

    pub fn int(&self, i: usize) -> Result<i32, ParseError> {
        let t = &self.args()[i];
        t.text
            .parse::<i32>()
            .map_err(|_| ParseError::syntax(self.number, t.column, format!("expected integer, found `{}`", t.text)))
    }

    pub fn number(&self, i: usize) -> Result<f64, ParseError> {
        let t = &self.args()[i];
        match t.text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(ParseError::syntax(self.number, t.column, format!("expected number, found `{}`", t.text))),
        }
    }

    pub fn error_at(&self, i: usize, message: impl Into<String>) -> ParseError {
        ParseError::syntax(self.number, self.args()[i].column, message)
    }
}

pub(crate) fn lines(text: &str) -> Result<Vec<Line<'_>>, ParseError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let number = idx + 1;
        let tokens = tokenize(raw, number)?;
        if !tokens.is_empty() {
            out.push(Line { number, tokens });
        }
    }
    Ok(out)
}

/// `s` as a single token, quoted when it would otherwise split or start a
/// comment.
pub fn token(s: &str) -> String {
    if s.is_empty() || s.starts_with('"') || s.contains(|c: char| c.is_ascii_whitespace() || c == '#') {
        format!("\"{s}\"")
    } else {
        s.to_string()
    }
}

fn tokenize(raw: &str, number: usize) -> Result<Vec<Token<'_>>, ParseError> {
    let bytes = raw.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'#' {
            break;
        } else if c == b'"' {
            let start = i + 1;
            let Some(len) = raw[start..].find('"') else {
                return Err(ParseError::syntax(number, i + 1, "unterminated quoted string"));
            };
            tokens.push(Token { text: &raw[start..start + len], column: i + 1 });
            i = start + len + 1;
        } else {
            let start = i;
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'#' {
                i += 1;
            }
            tokens.push(Token { text: &raw[start..i], column: start + 1 });
        }
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_quotes() {
        let ls = lines("# header\n\nvariant \"Put a warm plate\" x # tail\n").unwrap();
        assert_eq!(ls.len(), 1);
        assert_eq!(ls[0].number, 3);
        let texts: Vec<_> = ls[0].tokens.iter().map(|t| t.text).collect();
        assert_eq!(texts, ["variant", "Put a warm plate", "x"]);
        assert_eq!(ls[0].tokens[2].column, 28);
    }

    #[test]
    fn token_quoting_round_trips() {
        for s in ["plain", "two words", "a#b", "", "tab\there"] {
            let line = format!("kw {}", token(s));
            let toks = tokenize(&line, 1).unwrap();
            assert_eq!(toks.len(), 2, "{line}");
            assert_eq!(toks[1].text, s);
        }
    }

    #[test]
    fn unterminated_quote() {
        let err = lines("variant \"oops").unwrap_err();
        assert_eq!((err.line, err.column), (1, 9));
    }
}
