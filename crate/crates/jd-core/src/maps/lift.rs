//! Symmetric diagrams, good lifts and the relation elements they produce.

use std::collections::BTreeMap;

use crate::canon::reversing_maps;
use crate::diagram::Diagram;
use crate::dsl::{circle, theta, tree};
use crate::error::{domain, Result};
use crate::label::Label;
use crate::maps::delta::{doubled, glued};
use crate::sum::DiagramSum;

/// A diagram with an involutive reversing map `r` on half-edges.
#[derive(Clone, Debug)]
pub struct SymmetricWitness {
    pub diagram: Diagram,
    pub r: Vec<usize>,
}

impl SymmetricWitness {
    pub fn new(diagram: Diagram, r: Vec<usize>) -> Result<SymmetricWitness> {
        let d = &diagram;
        let n = d.half_edges();
        let ok = r.len() == n
            && (0..n).all(|h| r[h] < n && r[r[h]] == h)
            && (0..n).all(|h| r[d.pair(h)] == d.pair(r[h]))
            && (0..n).all(|h| d.label(r[h]) == d.label(h))
            && (0..n).all(|h| d.is_leg(h) || d.next(r[d.next(h)]) == r[h]);
        if !ok {
            return domain("map is not a line symmetry");
        }
        Ok(SymmetricWitness { diagram, r })
    }

    /// Some line symmetry fixing all legs listed in `fixed`.
    pub fn find(d: &Diagram, fixed: &[usize]) -> Result<SymmetricWitness> {
        reversing_maps(d)
            .into_iter()
            .find(|r| (0..r.len()).all(|h| r[r[h]] == h) && fixed.iter().all(|&v| r[v] == v))
            .map(|r| SymmetricWitness { diagram: d.clone(), r })
            .ok_or_else(|| crate::error::JdError::Domain("no line symmetry with the requested fixed legs".into()))
    }
}

/// Legs in reading order for diagrams built by `tree` and `circle`.
fn reading_order(d: &Diagram) -> Vec<usize> {
    let mut legs = d.legs();
    legs.sort_unstable();
    legs
}

/// Subscripts 1..n per plain label; each non-fixed pair gets consecutive
/// subscripts with the lower one on its smaller half-edge.
pub fn good_lift(w: &SymmetricWitness) -> Diagram {
    let d = &w.diagram;
    let mut next_sub: BTreeMap<Label, u16> = BTreeMap::new();
    let mut sub = vec![0u16; d.half_edges()];
    for v in reading_order(d) {
        let u = w.r[v];
        if u < v {
            continue;
        }
        let c = next_sub.entry(d.label(v).unwrap().plain()).or_insert(0);
        *c += 1;
        sub[v] = *c;
        if u != v {
            *c += 1;
            sub[u] = *c;
        }
    }
    let mut b = d.to_builder();
    for v in d.legs() {
        let l = d.label(v).unwrap();
        b.set_label(v, Label::lifted(l.index, l.sign, sub[v], false));
    }
    b.finish().expect("relabeling keeps the diagram well formed")
}

/// Every `i^ε` carries subscripts exactly `1..n(i^ε)`, once each.
pub fn check_lift(d: &Diagram) -> Result<()> {
    let mut subs: BTreeMap<Label, Vec<u16>> = BTreeMap::new();
    for (_, l) in d.univalent_vertices() {
        match l.sub {
            Some(s) => subs.entry(l.plain()).or_default().push(s),
            None => return domain(format!("label {l} has no subscript")),
        }
    }
    for (l, mut s) in subs {
        s.sort_unstable();
        if s.iter().enumerate().any(|(i, &x)| x as usize != i + 1) {
            return domain(format!("subscripts of {l} are not 1..{}", s.len()));
        }
    }
    Ok(())
}

fn barred_except(d: &Diagram, skip: &[usize]) -> usize {
    d.legs().into_iter().filter(|v| !skip.contains(v) && d.label(*v).unwrap().barred).count()
}

fn parity(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(−1)^k J_v` with plain labels.
pub fn delta_tilde_v(d: &Diagram, v: usize) -> Result<DiagramSum> {
    let l = match d.label(v) {
        Some(l) => l,
        None => return domain("not a leg"),
    };
    let j = doubled(d, v, l)?.map_labels(Label::plain);
    let mut s = DiagramSum::new();
    s.add_term(&j, parity(barred_except(d, &[v])));
    Ok(s)
}

/// `(−1)^k J_vw` for legs labeled `i_j^ε` and `i_{j+1}^ε`.
pub fn delta_tilde_vw(d: &Diagram, v: usize, w: usize) -> Result<DiagramSum> {
    let (a, b) = match (d.label(v), d.label(w)) {
        (Some(a), Some(b)) => (a, b),
        _ => return domain("not a leg"),
    };
    let consecutive = matches!((a.sub, b.sub), (Some(x), Some(y)) if y == x + 1);
    if a.plain() != b.plain() || !consecutive {
        return domain(format!("{a} and {b} are not consecutive lifts of one label"));
    }
    let j = glued(d, v, w, a.plain())?.map_labels(Label::plain);
    let mut s = DiagramSum::new();
    s.add_term(&j, parity(barred_except(d, &[])));
    Ok(s)
}

/// Legs whose lifted subscript is below that of their mirror image.
fn lower_legs(w: &SymmetricWitness, lift: &Diagram) -> Vec<usize> {
    let sub = |v: usize| lift.label(v).unwrap().sub;
    lift.legs().into_iter().filter(|&v| w.r[v] != v && sub(v) < sub(w.r[v])).collect()
}

/// The relation element for symmetric diagrams of even degree.
pub fn sym_relation_even(w: &SymmetricWitness) -> Result<DiagramSum> {
    if w.diagram.ideg() % 2 != 0 {
        return domain("even relation needs even internal degree");
    }
    let lift = good_lift(w);
    let mut s = DiagramSum::new();
    for v in lift.legs() {
        if w.r[v] == v {
            s.add_sum(&delta_tilde_v(&lift, v)?, 1);
        }
    }
    for v in lower_legs(w, &lift) {
        s.add_sum(&delta_tilde_vw(&lift, v, w.r[v])?, 1);
    }
    Ok(s)
}

/// The element whose image is twice the lifted class, odd degree.
pub fn sym_relation_odd(w: &SymmetricWitness) -> Result<DiagramSum> {
    if w.diagram.ideg() % 2 != 1 {
        return domain("odd relation needs odd internal degree");
    }
    let lift = good_lift(w);
    let mut s = DiagramSum::new();
    for v in lift.legs() {
        s.add_sum(&delta_tilde_v(&lift, v)?, -1);
    }
    for v in lower_legs(w, &lift) {
        s.add_sum(&delta_tilde_vw(&lift, v, w.r[v])?, -1);
    }
    Ok(s)
}

/// `a1..am` followed by `a(m-1)..a1`.
fn palindrome(a: &[Label]) -> Vec<Label> {
    a.iter().chain(a.iter().rev().skip(1)).copied().collect()
}

pub fn one_loop_kernel_element(a: &[Label]) -> Result<DiagramSum> {
    let m = a.len();
    if m < 2 {
        return domain("needs at least two labels");
    }
    let mut s = DiagramSum::single(&circle(&palindrome(a)));
    let rev: Vec<Label> = a.iter().rev().copied().collect();
    s.add_term(&circle(&palindrome(&rev)), 1);
    for i in 1..m - 1 {
        let left: Vec<Label> = a[..i].iter().rev().copied().collect();
        s.add_term(&theta(&palindrome(&left), &a[i..i + 1], &palindrome(&a[i + 1..])), 1);
    }
    Ok(s)
}

/// `O(a1, a2..am..a2)` with the line symmetry fixing `a1` and `am`.
pub fn one_loop_witness(a: &[Label]) -> Result<SymmetricWitness> {
    let m = a.len();
    if m < 2 {
        return domain("needs at least two labels");
    }
    let mut w = a.to_vec();
    w.extend(a[1..m - 1].iter().rev());
    let d = circle(&w);
    let legs = reading_order(&d);
    SymmetricWitness::find(&d, &[legs[0], legs[m - 1]])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionKind {
    Tree,
    Circle,
}

/// `T(a1..a(m+1)..a1)` or `O(a1..am..a1)` with its mirror line.
pub fn two_torsion_witness(kind: TorsionKind, a: &[Label]) -> Result<SymmetricWitness> {
    if a.len() < 2 {
        return domain("needs at least two labels");
    }
    let w = palindrome(a);
    let d = match kind {
        TorsionKind::Tree => tree(&w),
        TorsionKind::Circle => circle(&w),
    };
    let mid = reading_order(&d)[a.len() - 1];
    SymmetricWitness::find(&d, &[mid])
}

/// Right-hand side for twice the lifted class of a symmetric tree or circle.
/// Signs follow the subscript convention of `good_lift`.
pub fn two_torsion_relation(kind: TorsionKind, a: &[Label]) -> Result<DiagramSum> {
    sym_relation_odd(&two_torsion_witness(kind, a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn lift_of_circle() {
        let w = two_torsion_witness(TorsionKind::Circle, &[Label::plus(1), Label::plus(2)]).unwrap();
        let l = good_lift(&w);
        check_lift(&l).unwrap();
        let expect = parse("O(1+_1,2+_1,1+_2)").unwrap();
        assert_eq!(crate::canon::canonicalize(&l), crate::canon::canonicalize(&expect));
        assert_eq!(l.lifted_rev().lifted_rev(), l);
    }

    #[test]
    fn bad_lift_rejected() {
        assert!(check_lift(&parse("O(1+_1,2+_1,1+_1)").unwrap()).is_err());
        assert!(check_lift(&parse("O(1+_1,2+_1,1+_3)").unwrap()).is_err());
    }

    #[test]
    fn two_label_kernel_element() {
        let s = one_loop_kernel_element(&[Label::plus(1), Label::minus(1)]).unwrap();
        assert_eq!(s.len(), 2);
        let s = one_loop_kernel_element(&[Label::plus(1), Label::minus(1), Label::plus(2), Label::minus(2)]).unwrap();
        assert_eq!(s.len(), 4);
    }
}
