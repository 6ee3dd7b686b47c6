use serde::{Deserialize, Serialize};

/// One token of a document, carrying both its original surface form and the
/// normalized (lowercased, stemmed or lemmatized) form used for matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub norm: String,
    pub sent_idx: usize,
    pub tok_idx: usize,
    pub is_stopword: bool,
    pub is_alphanumeric: bool,
}

impl Token {
    /// True for word tokens that contain no letter, e.g. `2019` or `3.5`.
    pub fn is_numeric(&self) -> bool {
        self.is_alphanumeric && !self.surface.chars().any(char::is_alphabetic)
    }

    /// Word tokens that may take part in a keyphrase.
    pub fn is_content(&self) -> bool {
        self.is_alphanumeric && !self.is_stopword && !self.is_numeric()
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || ('\u{0300}'..='\u{036f}').contains(&c)
}

fn is_joiner(prev: char, c: char, next: char) -> bool {
    match c {
        '-' | '\'' | '\u{2019}' => is_word_char(prev) && is_word_char(next),
        '.' | ',' => prev.is_numeric() && next.is_numeric(),
        _ => false,
    }
}

struct Builder {
    tokens: Vec<Token>,
    sent: usize,
    sent_has_tokens: bool,
    pending_break: bool,
}

impl Builder {
    fn push(&mut self, surface: String, is_alphanumeric: bool) {
        if self.pending_break && self.sent_has_tokens {
            self.sent += 1;
            self.sent_has_tokens = false;
        }
        self.pending_break = false;
        let norm = surface.to_lowercase();
        self.tokens.push(Token {
            surface,
            norm,
            sent_idx: self.sent,
            tok_idx: self.tokens.len(),
            is_stopword: false,
            is_alphanumeric,
        });
        self.sent_has_tokens = true;
    }
}

/// Splits text into word and punctuation tokens with sentence indices.
///
/// Words are maximal runs of alphanumeric characters; hyphens and apostrophes
/// between letters and decimal separators between digits stay inside a word.
/// Every other non-space character becomes its own punctuation token.
/// Sentences end at `.`, `!`, `?` and newlines, except that a period directly
/// after a lone letter (`e.g.`, `U.S.`) is treated as an abbreviation.
pub fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<char> = text.chars().collect();
    let mut b = Builder { tokens: Vec::new(), sent: 0, sent_has_tokens: false, pending_break: false };
    let n = chars.len();
    let mut i = 0;
    while i < n {
        let c = chars[i];
        if c.is_whitespace() {
            if c == '\n' {
                b.pending_break = true;
            }
            i += 1;
            continue;
        }
        if is_word_char(c) {
            let start = i;
            i += 1;
            while i < n {
                if is_word_char(chars[i]) {
                    i += 1;
                } else if i + 1 < n && is_joiner(chars[i - 1], chars[i], chars[i + 1]) {
                    i += 2;
                } else {
                    break;
                }
            }
            b.push(chars[start..i].iter().collect(), true);
            continue;
        }
        b.push(c.to_string(), false);
        match c {
            '.' => {
                let abbreviation = i >= 1
                    && chars[i - 1].is_alphabetic()
                    && (i < 2 || !is_word_char(chars[i - 2]));
                if !abbreviation {
                    b.pending_break = true;
                }
            }
            '!' | '?' => b.pending_break = true,
            _ => {}
        }
        i += 1;
    }
    b.tokens
}
