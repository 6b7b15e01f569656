//! Canonical text form and DOT export of core graphs.
//!
//! ```text
//! base=0 vertices=2 alphabet=x,y
//! 0 y 1
//! 1 x 1
//! ```
//!
//! One line per edge `from generator to`, ordered by `(from, generator)`.

use std::fmt::Write as _;

use crate::words::{Alphabet, Letter};

use super::graph::{CoreGraph, GraphError, RegularGraph};
use super::Subgroup;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("missing header line")]
    MissingHeader,
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

impl Subgroup {
    pub fn serialize(&self) -> String {
        let g = self.core();
        let mut out = format!(
            "base={} vertices={} alphabet={}\n",
            g.base(),
            g.vertex_count(),
            g.alphabet()
        );
        for (u, l, v) in g.edges() {
            writeln!(out, "{u} {} {v}", g.alphabet().name(l.generator())).unwrap();
        }
        out
    }

    /// Parses the canonical form. Any vertex numbering is accepted as long
    /// as the graph is a core; the result is renumbered canonically.
    pub fn deserialize(text: &str) -> Result<Subgroup, FormatError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(FormatError::MissingHeader)?;
        let (mut base, mut count, mut alphabet) = (None, None, None);
        for field in header.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| syntax(hline, format!("expected key=value, found '{field}'")))?;
            let bad = |_| syntax(hline, format!("bad value for {key}"));
            match key {
                "base" => base = Some(value.parse::<usize>().map_err(bad)?),
                "vertices" => count = Some(value.parse::<usize>().map_err(bad)?),
                "alphabet" => {
                    alphabet = Some(
                        value
                            .parse::<Alphabet>()
                            .map_err(|e| syntax(hline, e.to_string()))?,
                    )
                }
                _ => return Err(syntax(hline, format!("unknown header field '{key}'"))),
            }
        }
        let missing = |k: &str| syntax(hline, format!("header lacks {k}"));
        let (base, count, alphabet) = (
            base.ok_or_else(|| missing("base"))?,
            count.ok_or_else(|| missing("vertices"))?,
            alphabet.ok_or_else(|| missing("alphabet"))?,
        );
        if count == 0 || base >= count {
            return Err(syntax(hline, "base must be a vertex"));
        }
        let mut g = RegularGraph::empty(alphabet.clone(), count, base);
        for (line, text) in lines {
            let parts: Vec<&str> = text.split_whitespace().collect();
            let [from, name, to] = parts[..] else {
                return Err(syntax(line, "expected 'from generator to'"));
            };
            let vertex = |s: &str| {
                s.parse::<usize>()
                    .ok()
                    .filter(|&v| v < count)
                    .ok_or_else(|| syntax(line, format!("bad vertex '{s}'")))
            };
            let gen = alphabet
                .position(name)
                .ok_or_else(|| syntax(line, format!("unknown generator '{name}'")))?;
            g.try_add_edge(vertex(from)?, Letter::new(gen, false), vertex(to)?)
                .map_err(|source| FormatError::Graph { line, source })?;
        }
        let core = CoreGraph::validate(&g).map_err(|source| FormatError::Graph { line: hline, source })?;
        Ok(core.into())
    }

    /// DOT digraph with one arrow per edge, labeled by its generator; the
    /// base is drawn as a double circle.
    pub fn to_dot(&self) -> String {
        let g = self.core();
        let mut out = String::from("digraph core {\n  rankdir=LR;\n  node [shape=circle];\n");
        writeln!(out, "  {} [shape=doublecircle];", g.base()).unwrap();
        for v in 0..g.vertex_count() {
            if v != g.base() {
                writeln!(out, "  {v};").unwrap();
            }
        }
        for (u, l, v) in g.edges() {
            writeln!(out, "  {u} -> {v} [label=\"{}\"];", g.alphabet().name(l.generator())).unwrap();
        }
        out.push_str("}\n");
        out
    }
}
