//! The tensor image ι∘η of tree diagrams.

use std::collections::BTreeMap;

use crate::diagram::Diagram;
use crate::error::{domain, Result};
use crate::label::Label;

/// ℤ-combination of words over the labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorWord {
    terms: BTreeMap<Vec<Label>, i64>,
}

impl TensorWord {
    pub fn word(w: Vec<Label>) -> TensorWord {
        let mut t = TensorWord::default();
        t.add(w, 1);
        t
    }

    pub fn add(&mut self, w: Vec<Label>, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn add_all(&mut self, other: &TensorWord, c: i64) {
        for (w, k) in &other.terms {
            self.add(w.clone(), k * c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Label>, i64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Concatenation product.
    pub fn mul(&self, other: &TensorWord) -> TensorWord {
        let mut t = TensorWord::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                t.add(w, x * y);
            }
        }
        t
    }

    pub fn bracket(&self, other: &TensorWord) -> TensorWord {
        let mut t = self.mul(other);
        t.add_all(&other.mul(self), -1);
        t
    }

    /// `w ↦ sign · reverse(w)`.
    pub fn reversed(&self, sign: i64) -> TensorWord {
        let mut t = TensorWord::default();
        for (w, c) in &self.terms {
            t.add(w.iter().rev().copied().collect(), sign * c);
        }
        t
    }

    /// Left-normed bracketing `[..[x1,x2],..,xk]` of every word.
    pub fn dynkin(&self) -> TensorWord {
        let mut t = TensorWord::default();
        for (w, c) in &self.terms {
            let mut acc = TensorWord::word(vec![w[0]]);
            for &x in &w[1..] {
                acc = acc.bracket(&TensorWord::word(vec![x]));
            }
            t.add_all(&acc, *c);
        }
        t
    }
}

/// Expanded bracket word of the subtree seen through half-edge `h`.
fn subtree(d: &Diagram, h: usize) -> TensorWord {
    match d.label(h) {
        Some(l) => TensorWord::word(vec![l]),
        None => subtree(d, d.pair(d.next(h))).bracket(&subtree(d, d.pair(d.next(d.next(h))))),
    }
}

/// `(leg label, bracket word rooted at the leg)` for every leg of a tree.
pub fn eta(d: &Diagram) -> Result<Vec<(Label, TensorWord)>> {
    let s = d.stats();
    if !s.connected || s.betti != 0 {
        return domain(format!("η needs a tree, got Betti number {}", s.betti));
    }
    Ok(d.legs().into_iter().map(|v| (d.label(v).unwrap(), subtree(d, d.pair(v)))).collect())
}

pub fn iota_eta(d: &Diagram) -> Result<TensorWord> {
    let mut t = TensorWord::default();
    for (l, w) in eta(d)? {
        t.add_all(&TensorWord::word(vec![l]).mul(&w), 1);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn tripod_has_three_summands() {
        let d = parse("T(1+,2+,1-)").unwrap();
        assert_eq!(eta(&d).unwrap().len(), 3);
        let t = iota_eta(&d).unwrap();
        assert_eq!(t.reversed(-1), t);
    }

    #[test]
    fn loops_rejected() {
        assert!(eta(&parse("O(1+)").unwrap()).is_err());
    }
}
