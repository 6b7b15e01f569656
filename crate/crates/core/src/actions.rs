//! The action of `F` on the right cosets `Rg` of a subgroup `R`.
//!
//! Exact orbit sizes come from the index formula
//! `|(Rg)L| = [L' : L' ∩ R]` with `L' = gLg⁻¹`; the coset space itself is
//! only ever explored inside a finite ball, for cross-checks and reports.
//!
//! A coset `Rg` is named by reading `g` from the base of the core as far as
//! edges allow: the vertex reached plus the unread rest of `g`. Past a
//! missing edge the coset graph is a tree, so this name is unique.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::constructions::{intersect, relative_index, RelativeIndex};
use crate::stallings::Subgroup;
use crate::words::{Letter, Word};

/// `|(Rg)L|`, the size of the `L`-orbit of `Rg`.
pub fn orbit_size(r: &Subgroup, l: &Subgroup, g: &Word) -> RelativeIndex {
    let lg = l.conjugate(g);
    relative_index(&lg, &intersect(&lg, r))
}

/// A right coset `Rg`: core vertex where reading `g` stops, and the unread
/// (reduced) remainder, which leaves the core for good.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coset {
    pub vertex: usize,
    pub tail: Vec<Letter>,
}

impl Coset {
    pub fn of(r: &Subgroup, g: &Word) -> Coset {
        let mut c = Coset { vertex: r.core().base(), tail: Vec::new() };
        for &l in g.letters() {
            c = c.act(r, l);
        }
        c
    }

    /// `Rg ↦ Rgl`.
    pub fn act(&self, r: &Subgroup, l: Letter) -> Coset {
        let mut tail = self.tail.clone();
        match tail.last() {
            Some(&t) if t == l.inverse() => {
                tail.pop();
                Coset { vertex: self.vertex, tail }
            }
            Some(_) => {
                tail.push(l);
                Coset { vertex: self.vertex, tail }
            }
            None => match r.core().target(self.vertex, l) {
                Some(v) => Coset { vertex: v, tail },
                None => Coset { vertex: self.vertex, tail: vec![l] },
            },
        }
    }
}

/// The cosets `Rg` with `|g| ≤ radius`, each with its shortlex-least
/// representative.
#[derive(Clone, Debug)]
pub struct CosetBall {
    pub radius: usize,
    pub representatives: Vec<Word>,
    cosets: Vec<Coset>,
    position: HashMap<Coset, usize>,
}

impl CosetBall {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn position(&self, c: &Coset) -> Option<usize> {
        self.position.get(c).copied()
    }

    pub fn coset(&self, i: usize) -> &Coset {
        &self.cosets[i]
    }
}

/// Breadth-first search outward from `R`, letters in alphabet order, so the
/// first word found for each coset is its shortlex-least representative.
pub fn coset_ball(r: &Subgroup, radius: usize) -> CosetBall {
    let base = Coset::of(r, &Word::empty());
    let mut ball = CosetBall {
        radius,
        representatives: vec![Word::empty()],
        cosets: vec![base.clone()],
        position: HashMap::from([(base, 0)]),
    };
    let letters: Vec<Letter> = r.alphabet().letters().collect();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let rep = ball.representatives[i].clone();
        if rep.len() == radius {
            continue;
        }
        for &l in &letters {
            let c = ball.cosets[i].act(r, l);
            if !ball.position.contains_key(&c) {
                let j = ball.cosets.len();
                ball.position.insert(c.clone(), j);
                ball.cosets.push(c);
                ball.representatives.push(rep.concat(&Word::letter(l)));
                queue.push_back(j);
            }
        }
    }
    ball
}

/// A class of the partition of a ball under `L`. An open cell has a
/// generator move leaving the ball, so the orbit may be larger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCell {
    pub members: Vec<usize>,
    pub open: bool,
}

/// Joins `Rg` and `Rg·l` for each generator `l` of `L` (moves read through
/// the coset action one letter at a time, leaving the ball allowed in
/// between). Cells are listed by their smallest member.
pub fn orbits_on_ball(ball: &CosetBall, r: &Subgroup, l: &Subgroup) -> Vec<OrbitCell> {
    let n = ball.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let moves: Vec<Word> = l.basis().iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    let mut open = vec![false; n];
    for i in 0..n {
        for m in &moves {
            let mut c = ball.coset(i).clone();
            for &x in m.letters() {
                c = c.act(r, x);
            }
            match ball.position(&c) {
                Some(j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
                None => open[i] = true,
            }
        }
    }
    let mut cells: BTreeMap<usize, OrbitCell> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        let cell = cells.entry(root).or_insert(OrbitCell { members: Vec::new(), open: false });
        cell.members.push(i);
        cell.open |= open[i];
    }
    cells.into_values().collect()
}

/// Whether the cosets `Rg₁, …, Rg_k` are pairwise different.
pub fn cosets_distinct(r: &Subgroup, gs: &[Word]) -> bool {
    gs.iter()
        .enumerate()
        .all(|(i, gi)| gs[i + 1..].iter().all(|gj| !r.contains(&gi.concat(&gj.inverse()))))
}

/// DOT of the Schreier graph on a ball: cosets as nodes (labeled by their
/// representatives), one arrow per generator move staying in the ball.
pub fn ball_dot(ball: &CosetBall, r: &Subgroup) -> String {
    let a = r.alphabet();
    let mut out = String::from("digraph cosets {\n  node [shape=circle];\n  0 [shape=doublecircle];\n");
    for (i, w) in ball.representatives.iter().enumerate() {
        let label = if w.is_empty() { "ε".to_string() } else { a.format_word(w) };
        let _ = writeln!(out, "  {i} [label=\"{label}\"];");
    }
    for i in 0..ball.len() {
        for g in 0..a.rank() {
            if let Some(j) = ball.position(&ball.coset(i).act(r, a.generator(g))) {
                let _ = writeln!(out, "  {i} -> {j} [label=\"{}\"];", a.name(g));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// `⟨g w g⁻¹ : |g| ≤ k⟩`, a finitely generated piece of the normal closure
/// of `w`.
pub fn normal_closure_approximant(r: &Subgroup, w: &Word, k: usize) -> Subgroup {
    let a = r.alphabet();
    let gens: Vec<Word> = std::iter::once(Word::empty())
        .chain(crate::enumeration::shortlex_words(a, k))
        .map(|g| w.conjugate_by(&g))
        .collect();
    Subgroup::from_generators(a, &gens)
}

/// Orbit sizes `|R·N_k|` of the base coset under the approximants `N_k` of
/// the normal closure of `w`, for `k = 0..=max_k`.
pub fn normal_orbit_trend(r: &Subgroup, w: &Word, max_k: usize) -> Vec<(usize, RelativeIndex)> {
    (0..=max_k)
        .map(|k| (k, orbit_size(r, &normal_closure_approximant(r, w, k), &Word::empty())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn xy() -> Alphabet {
        "x,y".parse().unwrap()
    }

    fn sub(gens: &[&str]) -> Subgroup {
        let a = xy();
        let words: Vec<Word> = gens.iter().map(|g| a.parse_word(g).unwrap()).collect();
        Subgroup::from_generators(&a, &words)
    }

    fn w(t: &str) -> Word {
        xy().parse_word(t).unwrap()
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbit_size(&sub(&["x", "y"]), &sub(&["x"]), &Word::empty()), RelativeIndex::Finite(1));
        assert_eq!(orbit_size(&sub(&["x"]), &sub(&["y"]), &Word::empty()), RelativeIndex::Infinite);
    }

    #[test]
    fn balls() {
        let a = xy();
        assert_eq!(coset_ball(&Subgroup::full(&a), 3).len(), 1);
        let b = coset_ball(&sub(&["x"]), 1);
        let reps: Vec<String> = b.representatives.iter().map(|g| a.format_word(g)).collect();
        assert_eq!(reps, ["1", "y", "Y"]);
        let sizes: Vec<usize> = (0..5).map(|r| coset_ball(&sub(&["x", "yxY"]), r).len()).collect();
        assert!(sizes.windows(2).all(|p| p[0] <= p[1]));
    }

    #[test]
    fn distinctness() {
        let x = sub(&["x"]);
        assert!(cosets_distinct(&x, &[Word::empty()]));
        assert!(!cosets_distinct(&x, &[Word::empty(), w("x")]));
        assert!(cosets_distinct(&x, &[Word::empty(), w("y"), w("yy")]));
    }

    #[test]
    fn cells() {
        let x = sub(&["x"]);
        let ball = coset_ball(&x, 2);
        let trivial = orbits_on_ball(&ball, &x, &Subgroup::trivial(&xy()));
        assert!(trivial.iter().all(|c| c.members.len() == 1 && !c.open));
        let fixed = orbits_on_ball(&ball, &x, &x);
        assert_eq!(fixed[0], OrbitCell { members: vec![0], open: false });
    }
}
