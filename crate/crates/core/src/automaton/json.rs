//! JSON document form of a Dyck automaton.
//!
//! ```json
//! {"alphabet":{"call":["a"],"return":["b"],"internal":["i"]},
//!  "states":["1"],
//!  "edges":[{"from":"1","label":"a","to":"1"}],
//!  "matched":[[0,1]]}
//! ```
//!
//! Keys are emitted in exactly this order. `matched` entries are
//! `[callEdgeIndex, returnEdgeIndex]`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphabetDocument {
    pub call: Vec<String>,
    #[serde(rename = "return")]
    pub ret: Vec<String>,
    pub internal: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub from: String,
    pub label: String,
    pub to: String,
}

impl EdgeDocument {
    pub fn new(from: &str, label: &str, to: &str) -> Self {
        EdgeDocument {
            from: from.to_string(),
            label: label.to_string(),
            to: to.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDocument {
    pub alphabet: AlphabetDocument,
    pub states: Vec<String>,
    pub edges: Vec<EdgeDocument>,
    pub matched: Vec<[usize; 2]>,
}

/// One violated invariant of an automaton document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    EmptyAlphabet,
    BadLetterToken(String),
    DuplicateLetter(String),
    DuplicateState(String),
    UnknownState { edge: usize, state: String },
    UnknownLabel { edge: usize, label: String },
    DuplicateEdge { edge: usize, first: usize },
    MatchedOutOfRange { pair: usize, index: usize },
    MatchedNotCall { pair: usize, edge: usize },
    MatchedNotReturn { pair: usize, edge: usize },
    DuplicateMatched { pair: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::EmptyAlphabet => write!(f, "alphabet has no letters"),
            Diagnostic::BadLetterToken(t) => write!(f, "letter token {t:?} is empty or contains whitespace"),
            Diagnostic::DuplicateLetter(t) => write!(f, "letter `{t}` appears more than once in the alphabet"),
            Diagnostic::DuplicateState(s) => write!(f, "state `{s}` is listed more than once"),
            Diagnostic::UnknownState { edge, state } => {
                write!(f, "edge {edge} references unknown state `{state}`")
            }
            Diagnostic::UnknownLabel { edge, label } => {
                write!(f, "edge {edge} is labeled `{label}`, which is not in the alphabet")
            }
            Diagnostic::DuplicateEdge { edge, first } => {
                write!(f, "edge {edge} duplicates edge {first}")
            }
            Diagnostic::MatchedOutOfRange { pair, index } => {
                write!(f, "matched pair {pair} references edge {index}, which does not exist")
            }
            Diagnostic::MatchedNotCall { pair, edge } => {
                write!(f, "matched pair {pair}: first edge {edge} is not a call edge")
            }
            Diagnostic::MatchedNotReturn { pair, edge } => {
                write!(f, "matched pair {pair}: second edge {edge} is not a return edge")
            }
            Diagnostic::DuplicateMatched { pair } => write!(f, "matched pair {pair} is listed twice"),
        }
    }
}

impl AutomatonDocument {
    /// Every violated invariant, in document order. Empty iff valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let a = &self.alphabet;
        let mut letters = std::collections::HashMap::new();
        for (toks, class) in [(&a.call, 0u8), (&a.ret, 1), (&a.internal, 2)] {
            for t in toks {
                if t.is_empty() || t.chars().any(char::is_whitespace) {
                    out.push(Diagnostic::BadLetterToken(t.clone()));
                }
                if letters.insert(t.as_str(), class).is_some() {
                    out.push(Diagnostic::DuplicateLetter(t.clone()));
                }
            }
        }
        if letters.is_empty() {
            out.push(Diagnostic::EmptyAlphabet);
        }
        let mut states = HashSet::new();
        for s in &self.states {
            if !states.insert(s.as_str()) {
                out.push(Diagnostic::DuplicateState(s.clone()));
            }
        }
        let mut seen_edges = std::collections::HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            for s in [&e.from, &e.to] {
                if !states.contains(s.as_str()) {
                    out.push(Diagnostic::UnknownState { edge: i, state: s.clone() });
                }
            }
            if !letters.contains_key(e.label.as_str()) {
                out.push(Diagnostic::UnknownLabel { edge: i, label: e.label.clone() });
            }
            if let Some(&first) = seen_edges.get(&(e.from.as_str(), e.label.as_str(), e.to.as_str())) {
                out.push(Diagnostic::DuplicateEdge { edge: i, first });
            } else {
                seen_edges.insert((e.from.as_str(), e.label.as_str(), e.to.as_str()), i);
            }
        }
        let class_of = |edge: usize| letters.get(self.edges[edge].label.as_str()).copied();
        let mut pairs = HashSet::new();
        for (k, &[c, r]) in self.matched.iter().enumerate() {
            let mut ok = true;
            for idx in [c, r] {
                if idx >= self.edges.len() {
                    out.push(Diagnostic::MatchedOutOfRange { pair: k, index: idx });
                    ok = false;
                }
            }
            if !ok {
                continue;
            }
            if class_of(c) != Some(0) {
                out.push(Diagnostic::MatchedNotCall { pair: k, edge: c });
            }
            if class_of(r) != Some(1) {
                out.push(Diagnostic::MatchedNotReturn { pair: k, edge: r });
            }
            if !pairs.insert((c, r)) {
                out.push(Diagnostic::DuplicateMatched { pair: k });
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("automaton documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
