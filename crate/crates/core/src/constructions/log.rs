//! Audit trail for multi-step constructions.
//!
//! Every step records the subgroups it consumed and produced, and a list of
//! certificates: checkable claims about those subgroups together with the
//! value observed when the step ran. [`StageLog::reverify`] recomputes every
//! observation from the recorded subgroups.
//!
//! Text form (one block per step):
//!
//! ```text
//! step restrict-to-embedding
//!   in B [x,y] vertices=1 edges=0:y:0
//!   in E [x,y] vertices=2 edges=0:x:0,0:y:1,1:x:1,1:y:0
//!   out B' [x,y] vertices=2 edges=0:y:1,1:y:0
//!   cert relindex B B' expect=finite observed=2 ok
//! end
//! ```
//!
//! Subgroups are written as their canonical cores (`u:generator:v` per
//! edge), which keeps the report linear in the size of the graphs.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::stallings::{CoreGraph, GeneratorSet, RegularGraph, Subgroup};
use crate::words::{Alphabet, Letter, Word};

use super::{product::relative_index, RelativeIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("step '{step}': unknown subgroup '{name}'")]
    UnknownHandle { step: String, name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    In,
    Out,
}

/// A claim about named subgroups of a step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    /// Index of the subgroup in `F`.
    Index { subgroup: String },
    /// Index of `inner` in `outer`.
    RelativeIndex { outer: String, inner: String },
    Member { subgroup: String, word: Word },
    /// Some deficit vertex of the core lies outside the `Y`-frame.
    DeficitOutsideFrame { subgroup: String, frame: GeneratorSet },
    /// Conjugating any generator of `subgroup` by a generator of `by` (either
    /// side) stays in `subgroup`.
    Normalizes { by: String, subgroup: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Finite,
    Infinite,
    /// Relative index defined (a subgroup), finite or not.
    Contained,
    Yes,
    No,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub check: Check,
    pub expect: Expect,
    pub observed: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Step {
    pub name: String,
    pub handles: Vec<(Role, String, Subgroup)>,
    pub certificates: Vec<Certificate>,
}

impl Step {
    pub fn new(name: impl Into<String>) -> Self {
        Step { name: name.into(), ..Default::default() }
    }

    /// A step that records a transitivity merge which this library does not
    /// perform; it carries no subgroups or certificates.
    pub fn merge_placeholder() -> Self {
        Step::new(MERGE_PLACEHOLDER)
    }

    pub fn input(&mut self, name: &str, h: &Subgroup) -> &mut Self {
        self.handles.push((Role::In, name.to_string(), h.clone()));
        self
    }

    pub fn output(&mut self, name: &str, h: &Subgroup) -> &mut Self {
        self.handles.push((Role::Out, name.to_string(), h.clone()));
        self
    }

    pub fn handle(&self, name: &str) -> Option<&Subgroup> {
        self.handles.iter().rev().find(|(_, n, _)| n == name).map(|(_, _, h)| h)
    }

    /// Evaluates the claim against this step's subgroups and records it.
    pub fn certify(&mut self, check: Check, expect: Expect) -> bool {
        let observed = observe(&check, |n| self.handle(n))
            .unwrap_or_else(|name| panic!("certificate refers to unknown subgroup '{name}'"));
        let ok = satisfies(expect, &observed);
        self.certificates.push(Certificate { check, expect, observed, ok });
        ok
    }

    pub fn all_ok(&self) -> bool {
        self.certificates.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Certificate> {
        self.certificates.iter().filter(|c| !c.ok)
    }
}

pub const MERGE_PLACEHOLDER: &str = "transitivity-merge-not-performed";

fn observe<'a>(check: &Check, lookup: impl Fn(&str) -> Option<&'a Subgroup>) -> Result<String, String> {
    let get = |n: &str| lookup(n).ok_or_else(|| n.to_string());
    Ok(match check {
        Check::Index { subgroup } => get(subgroup)?.index().to_string(),
        Check::RelativeIndex { outer, inner } => relative_index(get(outer)?, get(inner)?).to_string(),
        Check::Member { subgroup, word } => yes_no(get(subgroup)?.contains(word)),
        Check::DeficitOutsideFrame { subgroup, frame } => {
            let h = get(subgroup)?;
            match super::cover::deficit_outside_frame(h, frame) {
                Some(v) => format!("vertex:{v}"),
                None => "none".to_string(),
            }
        }
        Check::Normalizes { by, subgroup } => yes_no(normalizes(get(by)?, get(subgroup)?)),
    })
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

/// Every generator `a` of `by` satisfies `a·v·a⁻¹ ∈ H` and `a⁻¹·v·a ∈ H`
/// for every generator `v` of `H`. Checked as `a H a⁻¹ = H`, which is
/// equivalent and linear in the size of the cores.
pub fn normalizes(by: &Subgroup, h: &Subgroup) -> bool {
    by.basis().iter().all(|a| h.conjugate(a) == *h)
}

fn satisfies(expect: Expect, observed: &str) -> bool {
    match expect {
        Expect::Finite => observed.parse::<usize>().is_ok(),
        Expect::Infinite => observed == "infinite",
        Expect::Contained => observed != RelativeIndex::NotSubgroup.to_string(),
        Expect::Yes => observed == "yes" || observed.starts_with("vertex:"),
        Expect::No => observed == "no" || observed == "none",
    }
}

/// Ordered record of the steps of a construction.
#[derive(Clone, Debug, Default)]
pub struct StageLog {
    pub steps: Vec<Step>,
}

impl StageLog {
    pub fn new() -> Self {
        StageLog::default()
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub fn append(&mut self, other: StageLog) {
        self.steps.extend(other.steps);
    }

    pub fn all_ok(&self) -> bool {
        self.steps.iter().all(Step::all_ok)
    }

    pub fn certificate_count(&self) -> usize {
        self.steps.iter().map(|s| s.certificates.len()).sum()
    }

    /// Recomputes every certificate from the recorded subgroups. Returns a
    /// description of each certificate that does not reproduce (different
    /// observation, or expectation not met).
    pub fn reverify(&self) -> Result<(), Vec<String>> {
        let mut problems = Vec::new();
        for (i, step) in self.steps.iter().enumerate() {
            for cert in &step.certificates {
                match observe(&cert.check, |n| step.handle(n)) {
                    Err(name) => problems.push(format!("step {i} ({}): unknown subgroup {name}", step.name)),
                    Ok(obs) => {
                        if obs != cert.observed || !satisfies(cert.expect, &obs) || cert.ok != satisfies(cert.expect, &cert.observed) {
                            problems.push(format!(
                                "step {i} ({}): {} observed {obs}, recorded {}",
                                step.name,
                                check_text(&cert.check, step),
                                cert.observed
                            ));
                        }
                    }
                }
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(problems)
        }
    }

    pub fn parse(text: &str) -> Result<StageLog, LogError> {
        parse_report(text)
    }
}

fn alphabet_for<'a>(step: &'a Step, name: &str) -> Option<&'a Alphabet> {
    step.handle(name).map(Subgroup::alphabet)
}

fn check_text(check: &Check, step: &Step) -> String {
    match check {
        Check::Index { subgroup } => format!("index {subgroup}"),
        Check::RelativeIndex { outer, inner } => format!("relindex {outer} {inner}"),
        Check::Member { subgroup, word } => {
            let w = alphabet_for(step, subgroup).map_or_else(String::new, |a| a.format_word(word));
            format!("member {subgroup} \"{w}\"")
        }
        Check::DeficitOutsideFrame { subgroup, frame } => {
            let y = alphabet_for(step, subgroup).map_or_else(String::new, |a| frame.format(a));
            format!("deficit-outside-frame {subgroup} {{{y}}}")
        }
        Check::Normalizes { by, subgroup } => format!("normalizes {by} {subgroup}"),
    }
}

fn expect_text(e: Expect) -> &'static str {
    match e {
        Expect::Finite => "finite",
        Expect::Infinite => "infinite",
        Expect::Contained => "contained",
        Expect::Yes => "yes",
        Expect::No => "no",
    }
}

impl fmt::Display for StageLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for step in &self.steps {
            writeln!(out, "step {}", step.name)?;
            for (role, name, h) in &step.handles {
                let role = match role {
                    Role::In => "in",
                    Role::Out => "out",
                };
                writeln!(out, "  {role} {name} [{}] {}", h.alphabet(), inline_core(h))?;
            }
            for c in &step.certificates {
                writeln!(
                    out,
                    "  cert {} expect={} observed={} {}",
                    check_text(&c.check, step),
                    expect_text(c.expect),
                    c.observed,
                    if c.ok { "ok" } else { "FAIL" }
                )?;
            }
            writeln!(out, "end")?;
        }
        f.write_str(&out)
    }
}

/// `vertices=N edges=u:g:v,...` (`edges=-` when there are none): the
/// canonical core, linear in its size.
fn inline_core(h: &Subgroup) -> String {
    let g = h.core();
    let edges: Vec<String> = g.edges().map(|(u, l, v)| format!("{u}:{}:{v}", h.alphabet().name(l.generator()))).collect();
    let edges = if edges.is_empty() { "-".to_string() } else { edges.join(",") };
    format!("vertices={} edges={edges}", g.vertex_count())
}

fn parse_inline_core(alphabet: &Alphabet, text: &str) -> Result<Subgroup, String> {
    let (v, e) = text.split_once(' ').ok_or("expected 'vertices=N edges=...'")?;
    let n: usize = v
        .strip_prefix("vertices=")
        .and_then(|n| n.parse().ok())
        .ok_or("expected vertices=N")?;
    let e = e.trim().strip_prefix("edges=").ok_or("expected edges=")?;
    let mut edges = Vec::new();
    if e != "-" {
        for item in e.split(',') {
            let parts: Vec<&str> = item.split(':').collect();
            let [u, g, w] = parts[..] else { return Err(format!("bad edge '{item}'")) };
            let gen = alphabet.position(g).ok_or_else(|| format!("unknown generator '{g}'"))?;
            let vertex = |t: &str| t.parse::<usize>().map_err(|_| format!("bad vertex '{t}'"));
            edges.push((vertex(u)?, Letter::new(gen, false), vertex(w)?));
        }
    }
    let g = RegularGraph::from_edges(alphabet.clone(), n, 0, &edges).map_err(|e| e.to_string())?;
    Ok(CoreGraph::validate(&g).map_err(|e| e.to_string())?.into())
}

fn parse_report(text: &str) -> Result<StageLog, LogError> {
    let mut log = StageLog::new();
    let mut current: Option<Step> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: &str| LogError::Parse { line, message: message.to_string() };
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(name) = t.strip_prefix("step ") {
            if current.is_some() {
                return Err(err("nested step"));
            }
            current = Some(Step::new(name.trim()));
            continue;
        }
        let step = current.as_mut().ok_or_else(|| err("line outside a step"))?;
        if t == "end" {
            log.push(current.take().unwrap());
        } else if let Some(rest) = t.strip_prefix("in ").map(|r| (Role::In, r)).or_else(|| t.strip_prefix("out ").map(|r| (Role::Out, r))) {
            let (role, rest) = rest;
            let (name, rest) = rest.split_once(' ').ok_or_else(|| err("expected handle name"))?;
            let rest = rest.trim();
            let close = rest.find(']').filter(|_| rest.starts_with('[')).ok_or_else(|| err("expected [alphabet]"))?;
            let alphabet: Alphabet = rest[1..close].parse().map_err(|e: crate::words::WordError| err(&e.to_string()))?;
            let h = parse_inline_core(&alphabet, rest[close + 1..].trim()).map_err(|m| err(&m))?;
            step.handles.push((role, name.to_string(), h));
        } else if let Some(rest) = t.strip_prefix("cert ") {
            let tokens = tokenize(rest);
            let field = |key: &str| {
                tokens
                    .iter()
                    .find_map(|tok| tok.strip_prefix(key))
                    .ok_or_else(|| err(&format!("missing {key}")))
            };
            let expect = match field("expect=")? {
                "finite" => Expect::Finite,
                "infinite" => Expect::Infinite,
                "contained" => Expect::Contained,
                "yes" => Expect::Yes,
                "no" => Expect::No,
                other => return Err(err(&format!("unknown expectation {other}"))),
            };
            let observed = field("observed=")?.to_string();
            let ok = match tokens.last().map(String::as_str) {
                Some("ok") => true,
                Some("FAIL") => false,
                _ => return Err(err("expected ok or FAIL")),
            };
            let arg = |k: usize| tokens.get(k).cloned().ok_or_else(|| err("missing argument"));
            let unknown = |name: &str| LogError::UnknownHandle { step: step.name.clone(), name: name.to_string() };
            let check = match tokens.first().map(String::as_str) {
                Some("index") => Check::Index { subgroup: arg(1)? },
                Some("relindex") => Check::RelativeIndex { outer: arg(1)?, inner: arg(2)? },
                Some("member") => {
                    let subgroup = arg(1)?;
                    let a = alphabet_for(step, &subgroup).ok_or_else(|| unknown(&subgroup))?.clone();
                    let word = a.parse_word(&arg(2)?).map_err(|e| err(&e.to_string()))?;
                    Check::Member { subgroup, word }
                }
                Some("deficit-outside-frame") => {
                    let subgroup = arg(1)?;
                    let a = alphabet_for(step, &subgroup).ok_or_else(|| unknown(&subgroup))?.clone();
                    let y = arg(2)?;
                    let inner = y.strip_prefix('{').and_then(|s| s.strip_suffix('}')).ok_or_else(|| err("expected {Y}"))?;
                    let frame = GeneratorSet::parse(&a, inner).map_err(|e| err(&e.to_string()))?;
                    Check::DeficitOutsideFrame { subgroup, frame }
                }
                Some("normalizes") => Check::Normalizes { by: arg(1)?, subgroup: arg(2)? },
                _ => return Err(err("unknown certificate kind")),
            };
            step.certificates.push(Certificate { check, expect, observed, ok });
        } else {
            return Err(err("unrecognized line"));
        }
    }
    if current.is_some() {
        return Err(LogError::Parse { line: text.lines().count(), message: "unterminated step".into() });
    }
    Ok(log)
}

/// Whitespace split that keeps double-quoted strings (quotes removed) together.
fn tokenize(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut had_quote = false;
    for c in s.chars() {
        match c {
            '"' => {
                quoted = !quoted;
                had_quote = true;
            }
            c if c.is_whitespace() && !quoted => {
                if !cur.is_empty() || had_quote {
                    out.push(std::mem::take(&mut cur));
                }
                had_quote = false;
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() || had_quote {
        out.push(cur);
    }
    out
}

/// Groups handles by name across the whole log (latest wins); convenient for
/// tests that want to look at a specific intermediate subgroup.
pub fn latest_handles(log: &StageLog) -> HashMap<String, Subgroup> {
    let mut map = HashMap::new();
    for step in &log.steps {
        for (_, name, h) in &step.handles {
            map.insert(name.clone(), h.clone());
        }
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trip_and_reverify() {
        let a: Alphabet = "x,y".parse().unwrap();
        let w = |t: &str| a.parse_word(t).unwrap();
        let h = Subgroup::from_generators(&a, &[w("x"), w("yy"), w("yxY")]);
        let k = Subgroup::from_generators(&a, &[w("x")]);
        let mut step = Step::new("demo");
        step.input("K", &k).output("H", &h);
        assert!(step.certify(Check::Index { subgroup: "H".into() }, Expect::Finite));
        assert!(step.certify(Check::RelativeIndex { outer: "H".into(), inner: "K".into() }, Expect::Contained));
        assert!(step.certify(Check::Member { subgroup: "H".into(), word: w("y") }, Expect::No));
        assert!(step.certify(Check::Normalizes { by: "K".into(), subgroup: "K".into() }, Expect::Yes));
        let mut log = StageLog::new();
        log.push(step);
        log.push(Step::merge_placeholder());
        let text = log.to_string();
        assert!(text.contains("cert member H \"y\" expect=no observed=no ok"));
        let back = StageLog::parse(&text).unwrap();
        assert_eq!(back.to_string(), text);
        back.reverify().unwrap();
    }

    #[test]
    fn failed_certificate_does_not_reverify() {
        let a: Alphabet = "x,y".parse().unwrap();
        let mut step = Step::new("t");
        step.output("K", &Subgroup::from_generators(&a, &[a.parse_word("x").unwrap()]));
        assert!(!step.certify(Check::Index { subgroup: "K".into() }, Expect::Finite));
        let mut log = StageLog::new();
        log.push(step);
        let text = log.to_string();
        assert!(text.contains("observed=infinite FAIL"));
        assert!(!log.all_ok());
        assert!(StageLog::parse(&text).unwrap().reverify().is_err());
    }

    #[test]
    fn tampered_observation_is_caught() {
        let a: Alphabet = "x,y".parse().unwrap();
        let mut step = Step::new("t");
        step.output("H", &Subgroup::full(&a));
        step.certify(Check::Index { subgroup: "H".into() }, Expect::Finite);
        let mut log = StageLog::new();
        log.push(step);
        let text = log.to_string().replace("observed=1", "observed=2");
        assert!(StageLog::parse(&text).unwrap().reverify().is_err());
    }

    #[test]
    fn tokenizer_keeps_quoted_words() {
        assert_eq!(tokenize("member J \"a1 a2^-1\" ok"), vec!["member", "J", "a1 a2^-1", "ok"]);
        assert_eq!(tokenize("member J \"\" ok"), vec!["member", "J", "", "ok"]);
    }
}
