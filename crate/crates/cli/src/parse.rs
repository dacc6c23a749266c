//! The `.pres` text format.
//!
//! ```text
//! # comment
//! alphabet: a b c d
//! relator: abcdbcabcd = 1
//! ```
//!
//! Relaxed files may also contain `relation: u = v` lines.

use smtk_core::oracle::SpecialPresentation;
use smtk_core::words::{Alphabet, Word, WordError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: relator is not of the form w = 1")]
    NonSpecialRelator { line: usize },
}

/// Alphabet plus relations `u = v` as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relations {
    pub alphabet: Alphabet,
    pub pairs: Vec<(Word, Word)>,
}

impl Relations {
    pub fn is_special(&self) -> bool {
        self.pairs.iter().all(|(_, v)| v.is_empty())
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn is_one(text: &str) -> bool {
    text.trim() == "1"
}

/// Reads `u = v` and `w = 1` lines. In strict mode only `relator: w = 1`
/// is allowed.
fn parse(text: &str, strict: bool) -> Result<Relations, ParseError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let Some((key, value)) = content.split_once(':') else {
            return Err(syntax(line, indent + 1, "expected `key: value`"));
        };
        let value_col = key.len() + 2 + (value.len() - value.trim_start().len());
        match key.trim() {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(syntax(line, indent + 1, "alphabet declared twice"));
                }
                let a = Alphabet::new(value.split_whitespace())
                    .map_err(|e| syntax(line, value_col, e.to_string()))?;
                alphabet = Some(a);
            }
            key @ ("relator" | "relation") => {
                let Some(a) = &alphabet else {
                    return Err(syntax(line, indent + 1, "relation before alphabet"));
                };
                let Some((lhs, rhs)) = value.split_once('=') else {
                    return Err(syntax(line, value_col, "expected `u = v`"));
                };
                if strict && (key == "relation" || !is_one(rhs)) {
                    return Err(ParseError::NonSpecialRelator { line });
                }
                let word_at = |part: &str, col: usize| -> Result<Word, ParseError> {
                    a.parse_word(part).map_err(|e| match e {
                        WordError::UnknownSymbol { text, offset } => {
                            let lead = part.len() - part.trim_start().len();
                            syntax(
                                line,
                                col + lead + offset,
                                format!("unknown symbol in `{text}`"),
                            )
                        }
                        other => syntax(line, col, other.to_string()),
                    })
                };
                let lhs_col = key.len() + 2 + indent;
                let u = word_at(lhs, lhs_col)?;
                let v = if is_one(rhs) {
                    Word::empty()
                } else {
                    word_at(rhs, key.len() + 2 + indent + lhs.len() + 1)?
                };
                if u.is_empty() {
                    return Err(syntax(line, lhs_col, "empty left-hand side"));
                }
                pairs.push((u, v));
            }
            other => {
                return Err(syntax(line, indent + 1, format!("unknown key `{other}`")));
            }
        }
    }
    let alphabet = alphabet.ok_or_else(|| syntax(1, 1, "missing `alphabet:` line"))?;
    Ok(Relations { alphabet, pairs })
}

/// Strict reading: every relation must be a relator `w = 1`.
pub fn parse_presentation(text: &str) -> Result<SpecialPresentation, ParseError> {
    let r = parse(text, true)?;
    let relators = r.pairs.into_iter().map(|(u, _)| u).collect();
    SpecialPresentation::new(r.alphabet, relators).map_err(|e| syntax(1, 1, e.to_string()))
}

/// Relaxed reading, also accepting `u = v` with `v ≠ 1`.
pub fn parse_relaxed(text: &str) -> Result<Relations, ParseError> {
    parse(text, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_examples() {
        let p = parse_presentation("alphabet: a b\nrelator: ab = 1").unwrap();
        assert_eq!(p.k(), 1);
        assert_eq!(p.alphabet().render(&p.relators()[0]), "ab");

        let p = parse_presentation("# two pieces\nalphabet: a b c d\nrelator: abcdbcabcd = 1\n")
            .unwrap();
        assert_eq!(p.max_relator_len(), 10);
    }

    #[test]
    fn undeclared_symbol_is_located() {
        let e = parse_presentation("alphabet: a\nrelator: ab = 1").unwrap_err();
        assert_eq!(
            e,
            ParseError::Syntax {
                line: 2,
                column: 11,
                message: "unknown symbol in `ab`".into()
            }
        );
    }

    #[test]
    fn strict_rejects_non_special() {
        assert_eq!(
            parse_presentation("alphabet: a b\nrelator: ab = ba"),
            Err(ParseError::NonSpecialRelator { line: 2 })
        );
        assert_eq!(
            parse_presentation("alphabet: a b\nrelation: ab = ba"),
            Err(ParseError::NonSpecialRelator { line: 2 })
        );
        let r = parse_relaxed("alphabet: a b\nrelation: ab = ba").unwrap();
        assert!(!r.is_special());
        assert_eq!(r.pairs.len(), 1);
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(
            parse_presentation("alphabet a b"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_presentation("relator: ab = 1"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_presentation("alphabet: a b\nrelator: ab"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_presentation("alphabet: a b\nfoo: ab"),
            Err(ParseError::Syntax {
                line: 2,
                column: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_presentation(""),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn multi_character_symbols() {
        let p = parse_presentation("alphabet: x y1 y\nrelator: x y1 y = 1").unwrap();
        assert_eq!(p.relators()[0].len(), 3);
    }
}
