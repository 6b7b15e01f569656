//! Shared fixtures and independent oracles for the integration tests.
//!
//! The oracles here deliberately avoid core graphs: reduction by repeated
//! scanning, membership by bounded generator closure over a Nielsen-reduced
//! generating set, and index by counting cosets inside a ball.
#![allow(dead_code)]

use std::collections::HashSet;

use fgsub::{Alphabet, Letter, Subgroup, Word};
use rand::Rng;

pub fn xy() -> Alphabet {
    "x,y".parse().unwrap()
}

pub fn w(t: &str) -> Word {
    xy().parse_word(t).unwrap()
}

pub fn sub(gens: &[&str]) -> Subgroup {
    let a = xy();
    let words: Vec<Word> = gens.iter().map(|g| a.parse_word(g).unwrap()).collect();
    Subgroup::from_generators(&a, &words)
}

pub fn random_word<R: Rng>(rng: &mut R, a: &Alphabet, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::from_index(rng.gen_range(0..a.letter_count()));
        if letters.last() != Some(&l.inverse()) {
            letters.push(l);
        }
    }
    Word::reduce(letters)
}

/// 1..=max_gens generators, each of length 1..=max_len.
pub fn random_generators<R: Rng>(rng: &mut R, a: &Alphabet, max_gens: usize, max_len: usize) -> Vec<Word> {
    let k = rng.gen_range(1..=max_gens);
    (0..k).map(|_| {
        let n = rng.gen_range(1..=max_len);
        random_word(rng, a, n)
    }).collect()
}

/// Resamples until the subgroup is nontrivial of infinite index.
pub fn random_infinite<R: Rng>(rng: &mut R, a: &Alphabet, max_gens: usize, max_len: usize) -> (Vec<Word>, Subgroup) {
    loop {
        let gens = random_generators(rng, a, max_gens, max_len);
        let h = Subgroup::from_generators(a, &gens);
        if !h.is_trivial() && !h.index().is_finite() {
            return (gens, h);
        }
    }
}

pub fn show(a: &Alphabet, gens: &[Word]) -> String {
    format!("<{}>", gens.iter().map(|g| a.format_word(g)).collect::<Vec<_>>().join(", "))
}

/// Free reduction by rescanning from the start after every cancellation.
pub fn naive_reduce(raw: &[Letter]) -> Vec<Letter> {
    let mut v = raw.to_vec();
    'scan: loop {
        for i in 0..v.len().saturating_sub(1) {
            if v[i + 1] == v[i].inverse() {
                v.drain(i..i + 2);
                continue 'scan;
            }
        }
        return v;
    }
}

fn inv(v: &[Letter]) -> Vec<Letter> {
    v.iter().rev().map(|l| l.inverse()).collect()
}

fn mul(u: &[Letter], v: &[Letter]) -> Vec<Letter> {
    let mut out = u.to_vec();
    for &l in v {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Nielsen transformations `u ↦ u^±1 v^±1` while they shorten some element
/// (the length conditions N0, N1). Generates the same subgroup.
pub fn nielsen_reduce(gens: &[Word]) -> Vec<Vec<Letter>> {
    let mut xs: Vec<Vec<Letter>> =
        gens.iter().map(|g| naive_reduce(g.letters())).filter(|g| !g.is_empty()).collect();
    'outer: loop {
        for i in 0..xs.len() {
            for j in 0..xs.len() {
                if i == j {
                    continue;
                }
                for (a, b) in [(false, false), (false, true), (true, false), (true, true)] {
                    let u = if a { inv(&xs[i]) } else { xs[i].clone() };
                    let v = if b { inv(&xs[j]) } else { xs[j].clone() };
                    let p = mul(&u, &v);
                    if p.len() < xs[i].len() {
                        if p.is_empty() {
                            xs.remove(i);
                        } else {
                            xs[i] = p;
                        }
                        continue 'outer;
                    }
                }
            }
        }
        return xs;
    }
}

/// Elements of `⟨gens⟩` of length ≤ `n`: products of the Nielsen-reduced
/// generators and their inverses, every partial product of length at most
/// `n` plus the longest generator.
pub fn closure_ball(gens: &[Word], n: usize) -> HashSet<Vec<Letter>> {
    let xs = nielsen_reduce(gens);
    let m = xs.iter().map(Vec::len).max().unwrap_or(0);
    let steps: Vec<Vec<Letter>> = xs.iter().flat_map(|x| [x.clone(), inv(x)]).collect();
    let bound = n + m;
    let mut seen: HashSet<Vec<Letter>> = HashSet::from([Vec::new()]);
    let mut frontier = vec![Vec::new()];
    while let Some(p) = frontier.pop() {
        for s in &steps {
            let q = mul(&p, s);
            if q.len() <= bound && seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.retain(|v| v.len() <= n);
    seen
}

/// All reduced words of length ≤ n (ε first), by increasing length.
pub fn all_words(a: &Alphabet, n: usize) -> Vec<Word> {
    let letters: Vec<Letter> = a.letters().collect();
    let mut out = vec![Word::empty()];
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &layer {
            for &l in &letters {
                if v.last() != Some(&l.inverse()) {
                    let mut u = v.clone();
                    u.push(l);
                    next.push(u);
                }
            }
        }
        out.extend(next.iter().map(|v| Word::reduce(v.iter().copied())));
        layer = next;
    }
    out
}

/// Number of right cosets `Hg` with a representative of length ≤ `radius`,
/// deciding `g h⁻¹ ∈ H` with [`closure_ball`]. Equals `[F:H]` whenever every
/// coset has such a representative.
pub fn coset_count(a: &Alphabet, gens: &[Word], radius: usize) -> usize {
    let members = closure_ball(gens, 2 * radius);
    let mut reps: Vec<Vec<Letter>> = Vec::new();
    for g in all_words(a, radius) {
        let g = g.letters().to_vec();
        if !reps.iter().any(|r| members.contains(&mul(&g, &inv(r)))) {
            reps.push(g);
        }
    }
    reps.len()
}
