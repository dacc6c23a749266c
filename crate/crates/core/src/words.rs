//! Alphabets, words and the short-lex order.
//!
//! Letters are interned indices into an [`Alphabet`]; the order of the
//! alphabet's symbols is the order used by short-lex. A [`Word`] does not
//! carry its alphabet, so graphical equality of words is plain structural
//! equality and words are cheap to hash and compare.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("invalid symbol name `{0}`")]
    InvalidSymbol(String),
    #[error("letter index {0} does not belong to this alphabet")]
    AlphabetMismatch(usize),
    #[error("cannot read `{text}` as a word: unknown symbol at offset {offset}")]
    UnknownSymbol { text: String, offset: usize },
    #[error("span {start}..{end} is not inside a word of length {len}")]
    BadSpan {
        start: usize,
        end: usize,
        len: usize,
    },
}

/// An interned symbol; the index doubles as its rank in short-lex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u16);

impl Letter {
    pub fn new(index: usize) -> Self {
        Letter(u16::try_from(index).expect("alphabet too large"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Tokens accepted as spellings of the empty word when they are not symbols.
const EMPTY_SPELLINGS: [&str; 3] = ["ε", "1", "eps"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut list = Vec::new();
        let mut index = HashMap::new();
        for symbol in symbols {
            let symbol = symbol.into();
            if symbol.is_empty()
                || symbol
                    .chars()
                    .any(|c| c.is_whitespace() || c == '=' || c == '#')
                || EMPTY_SPELLINGS.contains(&symbol.as_str())
            {
                return Err(WordError::InvalidSymbol(symbol));
            }
            if index.contains_key(&symbol) {
                return Err(WordError::DuplicateSymbol(symbol));
            }
            index.insert(symbol.clone(), Letter::new(list.len()));
            list.push(symbol);
        }
        if list.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        Ok(Alphabet {
            symbols: list,
            index,
        })
    }

    /// One single-character symbol per char of `chars`, in order.
    pub fn from_chars(chars: &str) -> Result<Self, WordError> {
        Self::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.symbols.len()).map(Letter::new)
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter.index()]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn letter(&self, symbol: &str) -> Option<Letter> {
        self.index.get(symbol).copied()
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.iter().all(|l| l.index() < self.symbols.len())
    }

    fn check(&self, w: &Word) -> Result<(), WordError> {
        match w.iter().find(|l| l.index() >= self.symbols.len()) {
            Some(l) => Err(WordError::AlphabetMismatch(l.index())),
            None => Ok(()),
        }
    }

    /// Short-lex comparison that also checks both words belong here.
    pub fn shortlex_cmp(&self, u: &Word, v: &Word) -> Result<Ordering, WordError> {
        self.check(u)?;
        self.check(v)?;
        Ok(shortlex_cmp(u, v))
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Reads a word. Whitespace-separated input is read token by token;
    /// otherwise symbols are matched greedily, longest first.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let trimmed = text.trim();
        if trimmed.is_empty()
            || (EMPTY_SPELLINGS.contains(&trimmed) && self.letter(trimmed).is_none())
        {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        if trimmed.split_whitespace().count() > 1 {
            let mut offset = 0;
            for token in trimmed.split_whitespace() {
                let at = offset + trimmed[offset..].find(token).unwrap_or(0);
                match self.letter(token) {
                    Some(l) => letters.push(l),
                    None => letters.extend(self.parse_glued(token, trimmed, at)?.iter()),
                }
                offset = at + token.len();
            }
        } else {
            letters.extend(self.parse_glued(trimmed, trimmed, 0)?.iter());
        }
        Ok(Word(letters))
    }

    fn parse_glued(&self, token: &str, text: &str, base: usize) -> Result<Word, WordError> {
        let mut longest_first: Vec<&String> = self.symbols.iter().collect();
        longest_first.sort_by_key(|s| std::cmp::Reverse(s.len()));
        let mut letters = Vec::new();
        let mut rest = token;
        let mut offset = base;
        while !rest.is_empty() {
            let hit = longest_first.iter().find(|s| rest.starts_with(s.as_str()));
            match hit {
                Some(s) => {
                    letters.push(self.index[s.as_str()]);
                    rest = &rest[s.len()..];
                    offset += s.len();
                }
                None => {
                    return Err(WordError::UnknownSymbol {
                        text: text.to_string(),
                        offset,
                    })
                }
            }
        }
        Ok(Word(letters))
    }

    /// Renders a word; `ε` for the empty word. Multi-character symbol sets
    /// are rendered space-separated so the output parses back.
    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.single_char() { "" } else { " " };
        w.iter()
            .map(|l| self.symbols[l.index()].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Like [`render`](Self::render) but empty renders as the empty string.
    pub fn render_plain(&self, w: &Word) -> String {
        if w.is_empty() {
            String::new()
        } else {
            self.render(w)
        }
    }

    /// All words of length at most `max_len`, in short-lex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for l in self.letters() {
                    next.push(w.pushed(l));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// A finite word. `Ord` is short-lex with respect to letter indices.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pushed(&self, letter: Letter) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(letter);
        Word(v)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn suffix_from(&self, n: usize) -> Word {
        Word(self.0[n..].to_vec())
    }

    pub fn slice(&self, span: Span) -> Word {
        Word(self.0[span.start..span.end].to_vec())
    }

    pub fn full_span(&self) -> Span {
        Span {
            start: 0,
            end: self.len(),
        }
    }

    /// Every occurrence of `pattern` as a start index. The empty pattern
    /// occurs at every position.
    pub fn occurrences(&self, pattern: &[Letter]) -> Vec<usize> {
        if pattern.is_empty() {
            return (0..=self.len()).collect();
        }
        if pattern.len() > self.len() {
            return Vec::new();
        }
        self.0
            .windows(pattern.len())
            .enumerate()
            .filter(|(_, w)| *w == pattern)
            .map(|(i, _)| i)
            .collect()
    }

    /// Replaces `len` letters at `at` with `with`.
    pub fn replaced(&self, at: usize, len: usize, with: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.len() - len + with.len());
        v.extend_from_slice(&self.0[..at]);
        v.extend_from_slice(with);
        v.extend_from_slice(&self.0[at + len..]);
        Word(v)
    }

    pub fn power(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        // Debug output only knows indices; 0 → a, 1 → b, ...
        for l in &self.0 {
            match u8::try_from(l.index()).ok().filter(|i| *i < 26) {
                Some(i) => write!(f, "{}", (b'a' + i) as char)?,
                None => write!(f, "<{}>", l.index())?,
            }
        }
        Ok(())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex_cmp(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Short-lex: shorter words first, equal lengths compared letter by letter.
pub fn shortlex_cmp(u: &[Letter], v: &[Letter]) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| u.cmp(v))
}

/// Half-open span `start..end` of positions in some word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize, word_len: usize) -> Result<Self, WordError> {
        if start <= end && end <= word_len {
            Ok(Span { start, end })
        } else {
            Err(WordError::BadSpan {
                start,
                end,
                len: word_len,
            })
        }
    }

    /// The span of the single letter at `pos`.
    pub fn letter(pos: usize) -> Self {
        Span {
            start: pos,
            end: pos + 1,
        }
    }

    pub fn len(self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(self) -> bool {
        self.start == self.end
    }

    pub fn contains(self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

/// All `|w| + 1` factorizations `w ≡ p·s`, shortest prefix first.
pub fn splits(w: &Word) -> Vec<(Word, Word)> {
    (0..=w.len())
        .map(|i| (w.prefix(i), w.suffix_from(i)))
        .collect()
}

/// All contiguous spans of `w`, empty ones included, ordered by start then end.
pub fn subword_spans(w: &Word) -> Vec<Span> {
    let n = w.len();
    let mut out = Vec::with_capacity((n + 1) * (n + 2) / 2);
    for start in 0..=n {
        for end in start..=n {
            out.push(Span { start, end });
        }
    }
    out
}
