//! Normal forms of symbolic words.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::TensorShape;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Symbol(pub char);

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn symbols(s: &str) -> Vec<Symbol> {
    s.chars().map(Symbol).collect()
}

fn min_rotation(seq: &[Symbol]) -> Vec<Symbol> {
    (0..seq.len().max(1))
        .map(|k| seq[k.min(seq.len())..].iter().chain(&seq[..k.min(seq.len())]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// A product of (1,1) symbols with scalar trace factors, e.g. `Tr(C)·Tr(A)·B`.
///
/// Trace factors are cyclically normalized and kept sorted; an empty trace
/// factor stands for `Tr(1)`, the dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceWord {
    main: Vec<Symbol>,
    traces: Vec<Vec<Symbol>>,
}

impl TraceWord {
    pub fn new(main: Vec<Symbol>, traces: Vec<Vec<Symbol>>) -> Self {
        let mut traces: Vec<Vec<Symbol>> = traces.iter().map(|t| min_rotation(t)).collect();
        traces.sort();
        TraceWord { main, traces }
    }

    pub fn symbol(s: char) -> Self {
        TraceWord::new(vec![Symbol(s)], Vec::new())
    }

    /// Parses `"Tr(A)Tr(BC)AB"`-style text: trace factors first, then the main word.
    pub fn parse(s: &str) -> Result<Self> {
        let mut rest = s.trim().replace(['·', '*', ' '], "");
        let mut traces = Vec::new();
        while let Some(r) = rest.strip_prefix("Tr(") {
            let close = r.find(')').ok_or_else(|| Error::Parse(format!("unclosed trace in {s:?}")))?;
            traces.push(symbols(&r[..close]));
            rest = r[close + 1..].to_string();
        }
        if rest.contains(['(', ')']) {
            return Err(Error::Parse(format!("trace factors must precede the main word in {s:?}")));
        }
        Ok(TraceWord::new(symbols(&rest), traces))
    }

    pub fn main(&self) -> &[Symbol] {
        &self.main
    }

    pub fn traces(&self) -> &[Vec<Symbol>] {
        &self.traces
    }

    pub fn concat(&self, other: &TraceWord) -> TraceWord {
        let mut main = self.main.clone();
        main.extend_from_slice(&other.main);
        let mut traces = self.traces.clone();
        traces.extend(other.traces.iter().cloned());
        traces.sort();
        TraceWord { main, traces }
    }

    /// `Tr` of this word: a scalar word.
    pub fn trace(&self) -> TraceWord {
        let mut traces = self.traces.clone();
        traces.push(min_rotation(&self.main));
        traces.sort();
        TraceWord {
            main: Vec::new(),
            traces,
        }
    }

    /// Renames every symbol through `f`.
    pub fn rename(&self, f: impl Fn(Symbol) -> Symbol) -> TraceWord {
        TraceWord::new(
            self.main.iter().map(|&s| f(s)).collect(),
            self.traces.iter().map(|t| t.iter().map(|&s| f(s)).collect()).collect(),
        )
    }
}

impl fmt::Display for TraceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .traces
            .iter()
            .map(|t| format!("Tr({})", t.iter().map(|s| s.0).collect::<String>()))
            .collect();
        if !self.main.is_empty() {
            parts.push(self.main.iter().map(|s| s.0).collect());
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

/// Type of a symbol in an alternating word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WordType {
    /// (2,1)
    High,
    /// (1,2)
    Low,
}

impl WordType {
    pub fn flip(self) -> Self {
        match self {
            WordType::High => WordType::Low,
            WordType::Low => WordType::High,
        }
    }

    pub fn shape(self) -> TensorShape {
        match self {
            WordType::High => TensorShape::HIGH,
            WordType::Low => TensorShape::LOW,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            WordType::High => "(2,1)",
            WordType::Low => "(1,2)",
        }
    }
}

/// A word whose symbols alternate between (2,1) and (1,2), starting with `first`.
/// Ordered by type first, then symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedWord {
    first: WordType,
    symbols: Vec<Symbol>,
}

impl GradedWord {
    pub fn new(first: WordType, symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.len().is_multiple_of(2) {
            return Err(Error::MalformedWord(format!(
                "an alternating word of odd length is required, got {} symbols",
                symbols.len()
            )));
        }
        Ok(GradedWord { first, symbols })
    }

    pub fn from_str_typed(first: WordType, s: &str) -> Result<Self> {
        Self::new(first, symbols(s))
    }

    pub fn letter(first: WordType, s: char) -> Self {
        GradedWord {
            first,
            symbols: vec![Symbol(s)],
        }
    }

    /// Tensor type of the whole word, which is the type of its first symbol.
    pub fn word_type(&self) -> WordType {
        self.first
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn type_at(&self, i: usize) -> WordType {
        if i.is_multiple_of(2) {
            self.first
        } else {
            self.first.flip()
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Juxtaposition of odd words requires the second to start with the
    /// opposite type; three odd words `x y z` with `y` flipped always compose.
    pub(crate) fn concat3(x: &GradedWord, y: &GradedWord, z: &GradedWord) -> GradedWord {
        debug_assert!(y.first == x.first.flip() && z.first == x.first);
        let mut symbols = x.symbols.clone();
        symbols.extend_from_slice(&y.symbols);
        symbols.extend_from_slice(&z.symbols);
        GradedWord {
            first: x.first,
            symbols,
        }
    }

    pub fn text(&self) -> String {
        self.symbols.iter().map(|s| s.0).collect()
    }
}

impl fmt::Display for GradedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.text(), self.first.tag())
    }
}
