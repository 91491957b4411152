//! Pushdown alphabets, words, and the combinatorial predicates on them:
//! balance, matched-call / matched-return, Dyck and prime Dyck words,
//! conjugacy.
//!
//! Letters are opaque tokens. Whether a letter is a call, a return or an
//! internal letter is looked up in the [`PushdownAlphabet`], never inferred
//! from its spelling.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Partition class of a letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LetterClass {
    Call,
    Return,
    Internal,
}

/// Index of a letter in its alphabet's canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub u16);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("alphabet is empty")]
    Empty,
    #[error("letter `{0}` appears more than once")]
    Duplicate(String),
    #[error("letter token must be nonempty and free of whitespace: {0:?}")]
    BadToken(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("too many letters ({0})")]
    TooLarge(usize),
}

/// A finite alphabet partitioned into call, return and internal letters.
///
/// The canonical letter order is: call letters, then return letters, then
/// internal letters, each group in the order given at construction.
#[derive(Clone, Debug)]
pub struct PushdownAlphabet {
    tokens: Vec<Arc<str>>,
    classes: Vec<LetterClass>,
    lookup: HashMap<Arc<str>, Letter>,
    n_call: usize,
    n_return: usize,
}

impl PartialEq for PushdownAlphabet {
    fn eq(&self, other: &Self) -> bool {
        self.tokens == other.tokens && self.classes == other.classes
    }
}

impl Eq for PushdownAlphabet {}

impl PushdownAlphabet {
    pub fn new<S: AsRef<str>>(call: &[S], ret: &[S], internal: &[S]) -> Result<Self, AlphabetError> {
        let total = call.len() + ret.len() + internal.len();
        if total == 0 {
            return Err(AlphabetError::Empty);
        }
        if total > u16::MAX as usize {
            return Err(AlphabetError::TooLarge(total));
        }
        let mut tokens = Vec::with_capacity(total);
        let mut classes = Vec::with_capacity(total);
        let mut lookup = HashMap::with_capacity(total);
        let groups = [
            (call, LetterClass::Call),
            (ret, LetterClass::Return),
            (internal, LetterClass::Internal),
        ];
        for (group, class) in groups {
            for tok in group {
                let tok = tok.as_ref();
                if tok.is_empty() || tok.chars().any(char::is_whitespace) {
                    return Err(AlphabetError::BadToken(tok.to_string()));
                }
                let arc: Arc<str> = Arc::from(tok);
                let letter = Letter(tokens.len() as u16);
                if lookup.insert(arc.clone(), letter).is_some() {
                    return Err(AlphabetError::Duplicate(tok.to_string()));
                }
                tokens.push(arc);
                classes.push(class);
            }
        }
        Ok(PushdownAlphabet {
            tokens,
            classes,
            lookup,
            n_call: call.len(),
            n_return: ret.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.tokens.len()).map(|i| Letter(i as u16))
    }

    pub fn call_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.n_call).map(|i| Letter(i as u16))
    }

    pub fn return_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (self.n_call..self.n_call + self.n_return).map(|i| Letter(i as u16))
    }

    pub fn internal_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (self.n_call + self.n_return..self.tokens.len()).map(|i| Letter(i as u16))
    }

    pub fn class(&self, letter: Letter) -> LetterClass {
        self.classes[letter.index()]
    }

    pub fn token(&self, letter: Letter) -> &str {
        &self.tokens[letter.index()]
    }

    pub fn token_arc(&self, letter: Letter) -> &Arc<str> {
        &self.tokens[letter.index()]
    }

    pub fn letter(&self, token: &str) -> Option<Letter> {
        self.lookup.get(token).copied()
    }

    pub fn tokens_of(&self, class: LetterClass) -> Vec<String> {
        self.letters()
            .filter(|&l| self.class(l) == class)
            .map(|l| self.token(l).to_string())
            .collect()
    }

    /// +1 for a call, -1 for a return, 0 for an internal letter.
    pub fn weight(&self, letter: Letter) -> i64 {
        match self.class(letter) {
            LetterClass::Call => 1,
            LetterClass::Return => -1,
            LetterClass::Internal => 0,
        }
    }

    /// Parses a word. Tokens are separated by whitespace; a chunk without
    /// whitespace that is not itself a token is split greedily by longest
    /// match (so `"(()"` and `"( ( )"` both parse over `{(, )}`).
    pub fn parse_word(&self, text: &str) -> Result<Word, AlphabetError> {
        let mut letters = Vec::new();
        for chunk in text.split_whitespace() {
            if let Some(l) = self.letter(chunk) {
                letters.push(l);
                continue;
            }
            let mut rest = chunk;
            while !rest.is_empty() {
                let best = self
                    .tokens
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| rest.starts_with(&***t))
                    .max_by_key(|(_, t)| t.len());
                match best {
                    Some((i, t)) => {
                        letters.push(Letter(i as u16));
                        rest = &rest[t.len()..];
                    }
                    None => return Err(AlphabetError::UnknownLetter(rest.to_string())),
                }
            }
        }
        Ok(Word(letters))
    }

    /// Space-separated tokens; the empty word renders as `ε`.
    pub fn render(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let parts: Vec<&str> = word.iter().map(|&l| self.token(l)).collect();
        parts.join(" ")
    }

    /// Pretty form used by reports: `Display` of the word with this alphabet.
    pub fn display<'a>(&'a self, word: &'a [Letter]) -> impl fmt::Display + 'a {
        struct D<'a>(&'a PushdownAlphabet, &'a [Letter]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.render(self.1))
            }
        }
        D(self, word)
    }
}

/// A finite word over a pushdown alphabet.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Rotation `u[k..] u[..k]`.
    pub fn rotated(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = Vec::with_capacity(self.0.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn power(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl std::ops::Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

/// Number of call letters minus number of return letters.
pub fn balance(alphabet: &PushdownAlphabet, u: &[Letter]) -> i64 {
    u.iter().map(|&l| alphabet.weight(l)).sum()
}

/// Every prefix has nonnegative balance.
pub fn is_matched_return(alphabet: &PushdownAlphabet, u: &[Letter]) -> bool {
    let mut b = 0i64;
    for &l in u {
        b += alphabet.weight(l);
        if b < 0 {
            return false;
        }
    }
    true
}

/// Every suffix has nonpositive balance.
pub fn is_matched_call(alphabet: &PushdownAlphabet, u: &[Letter]) -> bool {
    let mut b = 0i64;
    for &l in u.iter().rev() {
        b += alphabet.weight(l);
        if b > 0 {
            return false;
        }
    }
    true
}

pub fn is_dyck(alphabet: &PushdownAlphabet, u: &[Letter]) -> bool {
    // matched-return with zero balance implies matched-call
    is_matched_return(alphabet, u) && balance(alphabet, u) == 0
}

/// Nonempty Dyck word whose only Dyck prefixes are itself and ε.
pub fn is_prime_dyck(alphabet: &PushdownAlphabet, u: &[Letter]) -> bool {
    if u.is_empty() {
        return false;
    }
    let mut b = 0i64;
    for (i, &l) in u.iter().enumerate() {
        b += alphabet.weight(l);
        if b < 0 {
            return false;
        }
        if b == 0 && i + 1 < u.len() {
            return false;
        }
    }
    b == 0
}

/// Greedy factorization of a Dyck word into prime Dyck words (shortest
/// nonempty Dyck prefix first). Returns `None` if `u` is not Dyck.
pub fn prime_factors<'a>(alphabet: &PushdownAlphabet, u: &'a [Letter]) -> Option<Vec<&'a [Letter]>> {
    if !is_dyck(alphabet, u) {
        return None;
    }
    let mut out = Vec::new();
    let mut start = 0;
    let mut b = 0i64;
    for (i, &l) in u.iter().enumerate() {
        b += alphabet.weight(l);
        if b == 0 {
            out.push(&u[start..=i]);
            start = i + 1;
        }
    }
    Some(out)
}

/// All `|u|` rotations of `u` (`[ε]` for the empty word), duplicates kept.
pub fn conjugates(u: &[Letter]) -> Vec<Word> {
    if u.is_empty() {
        return vec![Word::empty()];
    }
    let w = Word(u.to_vec());
    (0..u.len()).map(|k| w.rotated(k)).collect()
}

pub fn is_conjugate(u: &[Letter], v: &[Letter]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    if u.is_empty() {
        return true;
    }
    (0..u.len()).any(|k| u[k..].iter().chain(&u[..k]).eq(v.iter()))
}

/// For a zero-balance word, the rotation starting right after the leftmost
/// position of minimal prefix balance. That rotation is a Dyck word.
pub fn rotate_to_dyck(alphabet: &PushdownAlphabet, u: &[Letter]) -> Option<Word> {
    if balance(alphabet, u) != 0 {
        return None;
    }
    let mut b = 0i64;
    let mut best = (0i64, 0usize);
    for (i, &l) in u.iter().enumerate() {
        b += alphabet.weight(l);
        if b < best.0 {
            best = (b, i + 1);
        }
    }
    Some(Word(u.to_vec()).rotated(best.1))
}

/// Lexicographically least rotation index test: is `u` the smallest of its
/// rotations (a necklace representative)?
pub fn is_necklace(u: &[Letter]) -> bool {
    let n = u.len();
    (1..n).all(|k| {
        let rot = u[k..].iter().chain(&u[..k]);
        u.iter().cmp(rot) != std::cmp::Ordering::Greater
    })
}

/// Smallest period `p` of the cyclic word (`u` equals `v^(n/p)`).
pub fn primitive_period(u: &[Letter]) -> usize {
    let n = u.len();
    (1..=n)
        .find(|&p| n % p == 0 && (p..n).all(|i| u[i] == u[i - p]))
        .unwrap_or(0)
}
