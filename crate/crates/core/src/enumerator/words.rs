//! Words over a parity-split alphabet and the two substitution rules that
//! model gluing on the boundary of a graph.
//!
//! Letters print as `a`..`z` (even) and `A`..`Z` (odd); letter ids past the
//! alphabet print as `(n)` and `[n]`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::bigraph::{BilabelledGraph, Parity};
use crate::error::{Error, Result};

/// Cap on distinct states visited by [`is_infinitely_iterable`].
pub const ITERATION_GUARD: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub id: u32,
    pub parity: Parity,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// Fails if one id carries both parities.
    pub fn new(letters: Vec<Letter>) -> Result<Word> {
        let mut seen: HashMap<u32, Parity> = HashMap::new();
        for l in &letters {
            if *seen.entry(l.id).or_insert(l.parity) != l.parity {
                return Err(Error::Precondition(format!("letter {} used with both parities", l.id)));
            }
        }
        Ok(Word { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The unused id with the smallest index, so that rewriting `aaaa`
    /// introduces `B` next.
    fn fresh(&self, parity: Parity) -> Letter {
        let used: BTreeSet<u32> = self.letters.iter().map(|l| l.id).collect();
        let id = (0..).find(|i| !used.contains(i)).expect("unbounded range");
        Letter { id, parity }
    }

    /// Renames letters in order of first appearance, keeping parities.
    pub fn canonical(&self) -> Word {
        let mut names: HashMap<u32, u32> = HashMap::new();
        let letters = self
            .letters
            .iter()
            .map(|l| {
                let next = names.len() as u32;
                Letter { id: *names.entry(l.id).or_insert(next), parity: l.parity }
            })
            .collect();
        Word { letters }
    }

    /// Positions `i` where rule (B) applies to letters `i` and `i + 1`
    /// (cyclically, so the last position pairs the last and first letters).
    pub fn rule_b_positions(&self) -> Vec<usize> {
        let n = self.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n)
            .filter(|&i| {
                let (x, y) = (self.letters[i], self.letters[(i + 1) % n]);
                x.id != y.id && x.parity == y.parity
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            match (l.id < 26, l.parity) {
                (true, Parity::Even) => write!(f, "{}", (b'a' + l.id as u8) as char)?,
                (true, Parity::Odd) => write!(f, "{}", (b'A' + l.id as u8) as char)?,
                (false, Parity::Even) => write!(f, "({})", l.id)?,
                (false, Parity::Odd) => write!(f, "[{}]", l.id)?,
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let bad = || Error::Precondition(format!("cannot parse word {s:?}"));
        let mut letters = Vec::new();
        let mut chars = s.chars();
        while let Some(c) = chars.next() {
            let letter = match c {
                'a'..='z' => Letter { id: c as u32 - 'a' as u32, parity: Parity::Even },
                'A'..='Z' => Letter { id: c as u32 - 'A' as u32, parity: Parity::Odd },
                '(' | '[' => {
                    let close = if c == '(' { ')' } else { ']' };
                    let digits: String = chars.by_ref().take_while(|&d| d != close).collect();
                    let id = digits.parse().map_err(|_| bad())?;
                    Letter { id, parity: if c == '(' { Parity::Even } else { Parity::Odd } }
                }
                _ => return Err(bad()),
            };
            letters.push(letter);
        }
        Word::new(letters)
    }
}

/// Rule (A): letter `position` becomes `l` copies of a fresh letter of the
/// opposite parity. Needs `l` odd and at least 3.
pub fn apply_rule_a(w: &Word, position: usize, l: usize) -> Result<Word> {
    if l < 3 || l % 2 == 0 {
        return Err(Error::RuleNotApplicable(format!("rule (A) needs odd l >= 3, got {l}")));
    }
    let Some(&old) = w.letters.get(position) else {
        return Err(Error::RuleNotApplicable(format!("position {position} outside a word of length {}", w.len())));
    };
    let new = w.fresh(old.parity.flip());
    let mut letters = w.letters[..position].to_vec();
    letters.extend(std::iter::repeat(new).take(l));
    letters.extend_from_slice(&w.letters[position + 1..]);
    Ok(Word { letters })
}

/// Rule (B): letters `position` and `position + 1` (the last position pairs
/// with the first letter) must differ and share a parity; they become `l`
/// copies of a fresh letter of the opposite parity. Needs `l` even and at
/// least 2. In the wrap-around case one copy goes to the front and the rest
/// to the end.
pub fn apply_rule_b(w: &Word, position: usize, l: usize) -> Result<Word> {
    if l < 2 || l % 2 == 1 {
        return Err(Error::RuleNotApplicable(format!("rule (B) needs even l >= 2, got {l}")));
    }
    let n = w.len();
    if !w.rule_b_positions().contains(&position) {
        return Err(Error::RuleNotApplicable(format!("rule (B) does not apply at position {position} of {w}")));
    }
    let new = w.fresh(w.letters[position].parity.flip());
    let letters = if position + 1 < n {
        let mut v = w.letters[..position].to_vec();
        v.extend(std::iter::repeat(new).take(l));
        v.extend_from_slice(&w.letters[position + 2..]);
        v
    } else {
        let mut v = vec![new];
        v.extend_from_slice(&w.letters[1..n - 1]);
        v.extend(std::iter::repeat(new).take(l - 1));
        v
    };
    Ok(Word { letters })
}

/// Whether rule (B) with `l = 2` can be applied forever starting from `w`,
/// i.e. whether the graph of words up to renaming reachable that way has a
/// cycle. Gives up after [`ITERATION_GUARD`] states.
pub fn is_infinitely_iterable(w: &Word) -> Result<bool> {
    is_infinitely_iterable_with_guard(w, ITERATION_GUARD)
}

pub fn is_infinitely_iterable_with_guard(w: &Word, guard: usize) -> Result<bool> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    let successors = |w: &Word| -> Vec<Word> {
        let mut out: Vec<Word> = w
            .rule_b_positions()
            .into_iter()
            .map(|p| apply_rule_b(w, p, 2).expect("position is applicable").canonical())
            .collect();
        out.sort();
        out.dedup();
        out
    };
    let start = w.canonical();
    let mut marks: HashMap<Word, Mark> = HashMap::new();
    marks.insert(start.clone(), Mark::Open);
    let mut stack = vec![(start.clone(), successors(&start))];
    while let Some((word, next)) = stack.last_mut() {
        match next.pop() {
            Some(s) => match marks.get(&s) {
                Some(Mark::Open) => return Ok(true),
                Some(Mark::Done) => {}
                None => {
                    if marks.len() >= guard {
                        return Err(Error::GuardExceeded(guard));
                    }
                    marks.insert(s.clone(), Mark::Open);
                    let succ = successors(&s);
                    stack.push((s, succ));
                }
            },
            None => {
                marks.insert(word.clone(), Mark::Done);
                stack.pop();
            }
        }
    }
    Ok(false)
}

/// The word `a•_k .. a•_1 b•_1 .. b•_l` of a connected graph satisfying the
/// conditions: boundary vertices with stubs replaced by their neighbours,
/// each vertex its own letter with its parity.
pub fn boundary_word(g: &BilabelledGraph) -> Result<Word> {
    if !g.is_connected() {
        return Err(Error::Precondition("boundary words need a connected graph".into()));
    }
    let parity = g.parities().ok_or_else(|| Error::Precondition("graph is not bipartite".into()))?;
    let core = g.core();
    let letters = core
        .inputs
        .iter()
        .rev()
        .chain(&core.outputs)
        .map(|&v| Letter { id: v as u32, parity: parity[v] })
        .collect();
    Word::new(letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn derivation_example() {
        let w1 = apply_rule_a(&w("aaaa"), 0, 3).unwrap();
        assert_eq!(w1.to_string(), "BBBaaa");
        let w2 = apply_rule_a(&w1, 3, 5).unwrap();
        assert_eq!(w2.to_string(), "BBBCCCCCaa");
        let w3 = apply_rule_b(&w2, 2, 2).unwrap();
        assert_eq!(w3.to_string(), "BBddCCCCaa");
    }

    #[test]
    fn the_iteration_cycle() {
        let mut cur = w("aabb");
        for (pos, expect) in [(1, "aCCb"), (3, "DCCD"), (0, "aaCD"), (2, "aabb")] {
            cur = apply_rule_b(&cur, pos, 2).unwrap();
            assert_eq!(cur.to_string(), expect);
        }
        assert!(is_infinitely_iterable(&w("aabb")).unwrap());
    }

    #[test]
    fn words_that_stop() {
        assert!(w("aaaa").rule_b_positions().is_empty());
        assert!(w("aBcD").rule_b_positions().is_empty());
        assert!(!is_infinitely_iterable(&w("aaaa")).unwrap());
        assert!(!is_infinitely_iterable(&w("aBcD")).unwrap());
        assert!(!is_infinitely_iterable(&w("abbb")).unwrap());
        assert!(apply_rule_b(&w("aaaa"), 0, 2).is_err());
    }

    #[test]
    fn rule_preconditions() {
        assert!(apply_rule_a(&w("ab"), 0, 2).is_err());
        assert!(apply_rule_a(&w("ab"), 0, 1).is_err());
        assert!(apply_rule_a(&w("ab"), 2, 3).is_err());
        assert!(apply_rule_b(&w("ab"), 0, 3).is_err());
        assert!(apply_rule_b(&w("aB"), 0, 2).is_err());
        assert!("aA".parse::<Word>().is_err());
        assert!("a-".parse::<Word>().is_err());
    }

    #[test]
    fn long_ids_round_trip() {
        let word = Word::new(vec![
            Letter { id: 30, parity: Parity::Even },
            Letter { id: 31, parity: Parity::Odd },
            Letter { id: 2, parity: Parity::Even },
        ])
        .unwrap();
        assert_eq!(word.to_string(), "(30)[31]c");
        assert_eq!(w("(30)[31]c"), word);
        assert_eq!(word.canonical().to_string(), "aBc");
    }

    #[test]
    fn guard_is_enforced() {
        assert_eq!(is_infinitely_iterable_with_guard(&w("abab"), 1), Err(Error::GuardExceeded(1)));
    }

    #[test]
    fn boundary_words_of_the_stars() {
        assert_eq!(boundary_word(&BilabelledGraph::m(0, 4)).unwrap().canonical().to_string(), "aaaa");
        assert_eq!(boundary_word(&BilabelledGraph::x(0, 4)).unwrap().canonical().to_string(), "AAAA");
        let two = BilabelledGraph::m(0, 2).tensor(&BilabelledGraph::m(0, 2));
        assert!(boundary_word(&two).is_err());
    }
}
