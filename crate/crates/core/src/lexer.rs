//! Lossless lexical scanning of Java and Python snippets.
//!
//! Every byte of the input ends up in exactly one token, so concatenating the
//! token texts reproduces the source. Whitespace (including Python
//! indentation and line continuations) is kept in `Layout` tokens; string
//! literals and comments are single opaque tokens.

use std::fmt;

use serde::{Deserialize, Serialize};
use unicode_ident::{is_xid_continue, is_xid_start};

use crate::language::SourceLanguage;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TokenKind {
    Keyword,
    Identifier,
    Operator,
    Punctuation,
    NumberLiteral,
    StringLiteral,
    Comment,
    Layout,
}

impl TokenKind {
    /// Layout and comments carry no program structure.
    pub fn is_trivia(self) -> bool {
        matches!(self, TokenKind::Layout | TokenKind::Comment)
    }
}

/// Half-open byte interval `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub span: Span,
}

impl Token {
    pub fn is(&self, kind: TokenKind, text: &str) -> bool {
        self.kind == kind && self.text == text
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenStream {
    pub language: SourceLanguage,
    pub source: String,
    pub tokens: Vec<Token>,
}

impl TokenStream {
    /// Build a stream from already-scanned tokens, recomputing spans and source.
    pub fn from_tokens(language: SourceLanguage, tokens: Vec<(TokenKind, String)>) -> Self {
        let mut source = String::new();
        let tokens = tokens
            .into_iter()
            .map(|(kind, text)| {
                let start = source.len();
                source.push_str(&text);
                Token { kind, span: Span { start, end: source.len() }, text }
            })
            .collect();
        TokenStream { language, source, tokens }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Indices of tokens that are not layout or comments.
    pub fn significant_indices(&self) -> Vec<usize> {
        self.tokens
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.kind.is_trivia())
            .map(|(i, _)| i)
            .collect()
    }

    /// Texts of the significant tokens, the same shape as a dataset's `code_tokens`.
    pub fn significant_texts(&self) -> Vec<String> {
        self.tokens
            .iter()
            .filter(|t| !t.kind.is_trivia())
            .map(|t| t.text.clone())
            .collect()
    }

    pub fn kinds(&self) -> Vec<TokenKind> {
        self.tokens.iter().map(|t| t.kind).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexErrorKind {
    UnterminatedString,
    UnterminatedComment,
    IllegalCharacter(char),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct LexError {
    pub offset: usize,
    pub kind: LexErrorKind,
}

impl fmt::Display for LexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LexErrorKind::UnterminatedString => {
                write!(f, "unterminated string literal starting at byte {}", self.offset)
            }
            LexErrorKind::UnterminatedComment => {
                write!(f, "unterminated block comment starting at byte {}", self.offset)
            }
            LexErrorKind::IllegalCharacter(c) => {
                write!(f, "illegal character {:?} at byte {}", c, self.offset)
            }
        }
    }
}

pub fn tokenize(source: &str, language: SourceLanguage) -> Result<TokenStream, LexError> {
    let mut scanner = Scanner { src: source, pos: 0, language, tokens: Vec::new() };
    while scanner.pos < source.len() {
        scanner.scan_token()?;
    }
    Ok(TokenStream { language, source: source.to_string(), tokens: scanner.tokens })
}

pub fn detokenize(stream: &TokenStream) -> String {
    stream.tokens.iter().map(|t| t.text.as_str()).collect()
}

const PYTHON_OPERATORS: &[&str] = &[
    "**=", "//=", ">>=", "<<=", "...", "->", ":=", "**", "//", "<<", ">>", "<=", ">=", "==",
    "!=", "<>", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "@=", "+", "-", "*", "/", "%",
    "@", "&", "|", "^", "~", "<", ">", "=", "(", ")", "[", "]", "{", "}", ",", ":", ".", ";",
];

const PYTHON_PUNCTUATION: &[&str] = &["(", ")", "[", "]", "{", "}", ",", ":", ".", ";", "..."];

const JAVA_OPERATORS: &[&str] = &[
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
    ">=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "=", ">", "<", "!", "~",
    "?", ":", "+", "-", "*", "/", "&", "|", "^", "%", "@", "(", ")", "{", "}", "[", "]", ";",
    ",", ".",
];

const JAVA_PUNCTUATION: &[&str] = &["(", ")", "{", "}", "[", "]", ";", ",", ".", "...", "@", "::"];

const PYTHON_STRING_PREFIXES: &[&str] = &[
    "r", "u", "b", "f", "br", "rb", "fr", "rf", "ur", "t", "tr", "rt",
];

struct Scanner<'a> {
    src: &'a str,
    pos: usize,
    language: SourceLanguage,
    tokens: Vec<Token>,
}

impl<'a> Scanner<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.src.get(self.pos + offset..).and_then(|s| s.chars().next())
    }

    fn push(&mut self, kind: TokenKind, end: usize) {
        let span = Span { start: self.pos, end };
        self.tokens.push(Token { kind, text: self.src[self.pos..end].to_string(), span });
        self.pos = end;
    }

    fn error(&self, offset: usize, kind: LexErrorKind) -> LexError {
        LexError { offset, kind }
    }

    fn scan_token(&mut self) -> Result<(), LexError> {
        let c = self.peek().expect("scan past end");
        match self.language {
            SourceLanguage::Python => self.scan_python(c),
            SourceLanguage::Java => self.scan_java(c),
        }
    }

    fn scan_python(&mut self, c: char) -> Result<(), LexError> {
        if is_layout(c) || self.at_line_continuation(self.pos) {
            let end = self.layout_end(true);
            self.push(TokenKind::Layout, end);
        } else if c == '#' {
            let end = self.line_end(self.pos);
            self.push(TokenKind::Comment, end);
        } else if is_ident_start(c, self.language) {
            let end = self.ident_end(self.pos);
            let word = &self.src[self.pos..end];
            let quote = self.src[end..].chars().next();
            if matches!(quote, Some('\'' | '"'))
                && PYTHON_STRING_PREFIXES.contains(&word.to_ascii_lowercase().as_str())
            {
                let end = self.python_string_end(self.pos, end)?;
                self.push(TokenKind::StringLiteral, end);
            } else {
                let kind = self.word_kind(word);
                self.push(kind, end);
            }
        } else if c == '\'' || c == '"' {
            let end = self.python_string_end(self.pos, self.pos)?;
            self.push(TokenKind::StringLiteral, end);
        } else if c.is_ascii_digit() || (c == '.' && self.peek_at(1).is_some_and(|d| d.is_ascii_digit())) {
            let end = self.number_end();
            self.push(TokenKind::NumberLiteral, end);
        } else if let Some(op) = longest_match(self.rest(), PYTHON_OPERATORS) {
            let kind = if PYTHON_PUNCTUATION.contains(&op) {
                TokenKind::Punctuation
            } else {
                TokenKind::Operator
            };
            let end = self.pos + op.len();
            self.push(kind, end);
        } else {
            return Err(self.error(self.pos, LexErrorKind::IllegalCharacter(c)));
        }
        Ok(())
    }

    fn scan_java(&mut self, c: char) -> Result<(), LexError> {
        let rest = self.rest();
        if is_layout(c) {
            let end = self.layout_end(false);
            self.push(TokenKind::Layout, end);
        } else if rest.starts_with("//") {
            let end = self.line_end(self.pos);
            self.push(TokenKind::Comment, end);
        } else if let Some(body) = rest.strip_prefix("/*") {
            let end = match body.find("*/") {
                Some(i) => self.pos + 2 + i + 2,
                None => return Err(self.error(self.pos, LexErrorKind::UnterminatedComment)),
            };
            self.push(TokenKind::Comment, end);
        } else if is_ident_start(c, self.language) {
            let end = self.ident_end(self.pos);
            let kind = self.word_kind(&self.src[self.pos..end]);
            self.push(kind, end);
        } else if rest.starts_with("\"\"\"") {
            let end = self.quoted_end(self.pos + 3, "\"\"\"", true)?;
            self.push(TokenKind::StringLiteral, end);
        } else if c == '"' || c == '\'' {
            let delim = if c == '"' { "\"" } else { "'" };
            let end = self.quoted_end(self.pos + 1, delim, false)?;
            self.push(TokenKind::StringLiteral, end);
        } else if c.is_ascii_digit() || (c == '.' && self.peek_at(1).is_some_and(|d| d.is_ascii_digit())) {
            let end = self.number_end();
            self.push(TokenKind::NumberLiteral, end);
        } else if let Some(op) = longest_match(rest, JAVA_OPERATORS) {
            let kind = if JAVA_PUNCTUATION.contains(&op) {
                TokenKind::Punctuation
            } else {
                TokenKind::Operator
            };
            let end = self.pos + op.len();
            self.push(kind, end);
        } else {
            return Err(self.error(self.pos, LexErrorKind::IllegalCharacter(c)));
        }
        Ok(())
    }

    fn word_kind(&self, word: &str) -> TokenKind {
        if self.language.is_keyword(word) {
            TokenKind::Keyword
        } else {
            TokenKind::Identifier
        }
    }

    fn at_line_continuation(&self, at: usize) -> bool {
        let rest = &self.src[at..];
        rest.starts_with("\\\n") || rest.starts_with("\\\r")
    }

    fn layout_end(&self, continuations: bool) -> usize {
        let mut end = self.pos;
        loop {
            if continuations && self.at_line_continuation(end) {
                end += 1;
                continue;
            }
            match self.src[end..].chars().next() {
                Some(c) if is_layout(c) => end += c.len_utf8(),
                _ => return end,
            }
        }
    }

    fn line_end(&self, from: usize) -> usize {
        self.src[from..]
            .find(['\n', '\r'])
            .map_or(self.src.len(), |i| from + i)
    }

    fn ident_end(&self, from: usize) -> usize {
        let mut chars = self.src[from..].char_indices();
        chars.next();
        for (i, c) in chars {
            if !is_ident_continue(c, self.language) {
                return from + i;
            }
        }
        self.src.len()
    }

    /// `start` is where the token begins (prefix included), `quote_at` the first quote.
    fn python_string_end(&self, start: usize, quote_at: usize) -> Result<usize, LexError> {
        let q = &self.src[quote_at..quote_at + 1];
        let triple = q.repeat(3);
        if self.src[quote_at..].starts_with(&triple) {
            self.quoted_end_from(start, quote_at + 3, &triple, true)
        } else {
            self.quoted_end_from(start, quote_at + 1, q, false)
        }
    }

    fn quoted_end(&self, body: usize, delim: &str, multiline: bool) -> Result<usize, LexError> {
        self.quoted_end_from(self.pos, body, delim, multiline)
    }

    /// Scan a quoted body; a backslash always protects the following character.
    fn quoted_end_from(
        &self,
        start: usize,
        body: usize,
        delim: &str,
        multiline: bool,
    ) -> Result<usize, LexError> {
        let unterminated = || self.error(start, LexErrorKind::UnterminatedString);
        let mut i = body;
        while i < self.src.len() {
            let rest = &self.src[i..];
            if rest.starts_with(delim) {
                return Ok(i + delim.len());
            }
            let c = rest.chars().next().unwrap();
            match c {
                '\\' => {
                    let next = rest[1..].chars().next().ok_or_else(unterminated)?;
                    i += 1 + next.len_utf8();
                }
                '\n' | '\r' if !multiline => return Err(unterminated()),
                _ => i += c.len_utf8(),
            }
        }
        Err(unterminated())
    }

    /// Numeric literal in either language: radix prefixes, underscores,
    /// fractions, signed exponents and type/imaginary suffixes.
    fn number_end(&self) -> usize {
        let bytes = self.src.as_bytes();
        let mut i = self.pos;
        let radix = bytes.get(i) == Some(&b'0')
            && matches!(bytes.get(i + 1), Some(b'x' | b'X' | b'o' | b'O' | b'b' | b'B'));
        if radix {
            i += 2;
            while i < bytes.len() && (bytes[i].is_ascii_hexdigit() || bytes[i] == b'_') {
                i += 1;
            }
        } else {
            let digits = |mut i: usize| {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'_') {
                    i += 1;
                }
                i
            };
            i = digits(i);
            if bytes.get(i) == Some(&b'.') && !self.src[i..].starts_with("...") {
                i = digits(i + 1);
            }
            if matches!(bytes.get(i), Some(b'e' | b'E')) {
                let mut j = i + 1;
                if matches!(bytes.get(j), Some(b'+' | b'-')) {
                    j += 1;
                }
                if bytes.get(j).is_some_and(|b| b.is_ascii_digit()) {
                    i = digits(j);
                }
            }
        }
        let suffixes: &[u8] = match self.language {
            SourceLanguage::Python => b"jJlL",
            SourceLanguage::Java => b"lLfFdD",
        };
        if bytes.get(i).is_some_and(|b| suffixes.contains(b)) {
            i += 1;
        }
        i
    }
}

fn is_layout(c: char) -> bool {
    matches!(c, ' ' | '\t' | '\n' | '\r' | '\x0c' | '\x0b')
}

fn is_ident_start(c: char, language: SourceLanguage) -> bool {
    c == '_' || is_xid_start(c) || (language == SourceLanguage::Java && c == '$')
}

fn is_ident_continue(c: char, language: SourceLanguage) -> bool {
    is_xid_continue(c) || (language == SourceLanguage::Java && c == '$')
}

fn longest_match<'t>(rest: &str, table: &[&'t str]) -> Option<&'t str> {
    table
        .iter()
        .filter(|op| rest.starts_with(**op))
        .max_by_key(|op| op.len())
        .copied()
}

#[cfg(test)]
mod tests {
    use super::*;
    use TokenKind::*;

    fn kinds(src: &str, lang: SourceLanguage) -> Vec<TokenKind> {
        tokenize(src, lang).unwrap().kinds()
    }

    fn texts(src: &str, lang: SourceLanguage) -> Vec<String> {
        tokenize(src, lang).unwrap().tokens.into_iter().map(|t| t.text).collect()
    }

    #[test]
    fn single_keyword() {
        let s = tokenize("for", SourceLanguage::Python).unwrap();
        assert_eq!(s.tokens.len(), 1);
        assert_eq!(s.tokens[0].kind, Keyword);
    }

    #[test]
    fn java_declaration_with_comment() {
        let src = "int x = 0; // c";
        assert_eq!(
            kinds(src, SourceLanguage::Java),
            vec![Keyword, Layout, Identifier, Layout, Operator, Layout, NumberLiteral, Punctuation, Layout, Comment]
        );
        assert_eq!(detokenize(&tokenize(src, SourceLanguage::Java).unwrap()), src);
    }

    #[test]
    fn python_def_header() {
        let s = tokenize("def bubble_sort(arr):", SourceLanguage::Python).unwrap();
        let find = |text: &str| s.tokens.iter().find(|t| t.text == text).unwrap().kind;
        assert_eq!(find("def"), Keyword);
        assert_eq!(find("bubble_sort"), Identifier);
        assert_eq!(find("arr"), Identifier);
    }

    #[test]
    fn empty_source() {
        let s = tokenize("", SourceLanguage::Java).unwrap();
        assert!(s.tokens.is_empty());
        assert_eq!(detokenize(&s), "");
    }

    #[test]
    fn python_strings_are_opaque() {
        let src = "x = f'{name}' + r\"\\d\" + '''a\nb''' + b'\\''";
        let toks = tokenize(src, SourceLanguage::Python).unwrap();
        let strings: Vec<_> = toks.tokens.iter().filter(|t| t.kind == StringLiteral).map(|t| t.text.as_str()).collect();
        assert_eq!(strings, vec!["f'{name}'", "r\"\\d\"", "'''a\nb'''", "b'\\''"]);
        assert!(toks.tokens.iter().all(|t| t.text != "name"));
    }

    #[test]
    fn python_line_continuation_is_layout() {
        let src = "a = 1 + \\\n    2";
        let toks = texts(src, SourceLanguage::Python);
        assert!(toks.contains(&" \\\n    ".to_string()));
    }

    #[test]
    fn python_comment_stops_before_newline() {
        assert_eq!(
            texts("x # note\ny", SourceLanguage::Python),
            vec!["x", " ", "# note", "\n", "y"]
        );
    }

    #[test]
    fn java_text_block_and_char() {
        let src = "String s = \"\"\"\n  hi \"there\"\n\"\"\"; char c = '\\n';";
        let toks = tokenize(src, SourceLanguage::Java).unwrap();
        let strings: Vec<_> = toks.tokens.iter().filter(|t| t.kind == StringLiteral).collect();
        assert_eq!(strings.len(), 2);
        assert_eq!(strings[1].text, "'\\n'");
    }

    #[test]
    fn numbers() {
        let t = texts("0x1F 1_000 3.14e-2 10L .5 2j 1.0f", SourceLanguage::Java);
        assert!(t.contains(&"0x1F".to_string()));
        assert!(t.contains(&"3.14e-2".to_string()));
        assert!(t.contains(&"10L".to_string()));
        assert!(t.contains(&".5".to_string()));
        assert!(t.contains(&"1.0f".to_string()));
        let p = texts("x = 2j + 1e5 + 1if y else 0", SourceLanguage::Python);
        assert!(p.contains(&"2j".to_string()));
        assert!(p.contains(&"1e5".to_string()));
        assert!(p.contains(&"if".to_string()));
    }

    #[test]
    fn java_generics_and_operators() {
        let t = texts("Map<String, List<Integer>> m; x >>>= 2; a -> b; Foo::bar", SourceLanguage::Java);
        assert!(t.contains(&">>".to_string()));
        assert!(t.contains(&">>>=".to_string()));
        assert!(t.contains(&"->".to_string()));
        assert!(t.contains(&"::".to_string()));
    }

    #[test]
    fn unicode_identifiers_pass_through() {
        let s = tokenize("größe = 1", SourceLanguage::Python).unwrap();
        assert_eq!(s.tokens[0].kind, Identifier);
        assert_eq!(s.tokens[0].text, "größe");
        let j = tokenize("int $count = 1;", SourceLanguage::Java).unwrap();
        assert_eq!(j.tokens[2].text, "$count");
    }

    #[test]
    fn unterminated_string_reports_offset() {
        let err = tokenize("x = 'abc\n", SourceLanguage::Python).unwrap_err();
        assert_eq!(err, LexError { offset: 4, kind: LexErrorKind::UnterminatedString });
        let err = tokenize("s = \"\"\"abc", SourceLanguage::Java).unwrap_err();
        assert_eq!(err.kind, LexErrorKind::UnterminatedString);
    }

    #[test]
    fn unterminated_block_comment() {
        let err = tokenize("int x; /* open", SourceLanguage::Java).unwrap_err();
        assert_eq!(err, LexError { offset: 7, kind: LexErrorKind::UnterminatedComment });
    }

    #[test]
    fn illegal_characters() {
        let err = tokenize("x = `y`", SourceLanguage::Python).unwrap_err();
        assert_eq!(err.kind, LexErrorKind::IllegalCharacter('`'));
        let err = tokenize("int x = #1;", SourceLanguage::Java).unwrap_err();
        assert_eq!(err.offset, 8);
    }

    #[test]
    fn spans_partition_source() {
        let src = "def f(a):\n    return a  # id\n";
        let s = tokenize(src, SourceLanguage::Python).unwrap();
        let mut pos = 0;
        for t in &s.tokens {
            assert_eq!(t.span.start, pos);
            assert_eq!(&src[t.span.start..t.span.end], t.text);
            pos = t.span.end;
        }
        assert_eq!(pos, src.len());
    }

    #[test]
    fn from_tokens_recomputes_spans() {
        let s = TokenStream::from_tokens(
            SourceLanguage::Python,
            vec![(Identifier, "ab".into()), (Layout, " ".into()), (Identifier, "c".into())],
        );
        assert_eq!(s.source, "ab c");
        assert_eq!(s.tokens[2].span, Span { start: 3, end: 4 });
    }
}
