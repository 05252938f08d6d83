//! The leg-doubling maps δ_v, δ_vw and their sums δ′, δ″.

use crate::diagram::{Builder, Diagram};
use crate::error::{domain, Result};
use crate::label::Label;
use crate::relations::Presentation;
use crate::sum::DiagramSum;

fn attach_leg(b: &mut Builder, h: usize, l: Label) {
    let x = b.leg(l);
    b.join(h, x);
}

/// First term of δ_v: the edge at `v` doubled, both new legs labeled
/// `label`.
pub(crate) fn doubled(d: &Diagram, v: usize, label: Label) -> Result<Diagram> {
    let s = d.pair(v);
    if d.is_leg(s) {
        return domain("δ_v is undefined on a strut");
    }
    let (hb, ha) = (d.next(s), d.next(d.next(s)));
    let (pa, pb) = (d.pair(ha), d.pair(hb));
    let mut b = d.to_builder();
    for h in [v, s, ha, hb] {
        b.kill(h);
    }
    let [l1, x1b, x1a] = b.vertex();
    let [l2, x2b, x2x1] = b.vertex();
    attach_leg(&mut b, l1, label);
    attach_leg(&mut b, l2, label);
    b.join(x1b, x2x1);
    if pa == hb {
        b.join(x1a, x2b);
    } else {
        b.join(x1a, pa);
        b.join(x2b, pb);
    }
    b.finish()
}

/// Second term of δ_v: a Y with legs `ℓ(v)*, ℓ(v)` grafted in place of `v`.
fn starred(d: &Diagram, v: usize) -> Result<Diagram> {
    let l = leg_label(d, v)?;
    let s = d.pair(v);
    let mut b = d.to_builder();
    b.kill(v);
    let [y0, y1, y2] = b.vertex();
    b.join(y0, s);
    attach_leg(&mut b, y1, l.star());
    attach_leg(&mut b, y2, l);
    b.finish()
}

fn leg_label(d: &Diagram, v: usize) -> Result<Label> {
    match d.label(v) {
        Some(l) => Ok(l),
        None => domain(format!("half-edge {v} is not a leg")),
    }
}

pub fn delta_v(d: &Diagram, v: usize) -> Result<DiagramSum> {
    let l = leg_label(d, v)?;
    let mut s = DiagramSum::single(&doubled(d, v, l)?);
    s.add_term(&starred(d, v)?, 1);
    Ok(s)
}

/// The Y glued along `v` and `w`; its third leg keeps their label.
pub(crate) fn glued(d: &Diagram, v: usize, w: usize, label: Label) -> Result<Diagram> {
    if v == w {
        return domain("δ_vw needs two distinct legs");
    }
    let (pv, pw) = (d.pair(v), d.pair(w));
    let mut b = d.to_builder();
    b.kill(v);
    b.kill(w);
    let [y0, y1, y2] = b.vertex();
    attach_leg(&mut b, y0, label);
    if pv == w {
        b.join(y1, y2);
    } else {
        b.join(y1, pw);
        b.join(y2, pv);
    }
    b.finish()
}

pub fn delta_vw(d: &Diagram, v: usize, w: usize) -> Result<DiagramSum> {
    let (a, b) = (leg_label(d, v)?, leg_label(d, w)?);
    if a != b {
        return domain(format!("δ_vw needs equal labels, got {a} and {b}"));
    }
    Ok(DiagramSum::single(&glued(d, v, w, a)?))
}

pub fn delta_prime(d: &Diagram) -> Result<DiagramSum> {
    let mut s = DiagramSum::new();
    for v in d.legs() {
        s.add_sum(&delta_v(d, v)?, 1);
    }
    Ok(s)
}

/// δ″ with legs ordered by half-edge id.
pub fn delta_double_prime(d: &Diagram) -> Result<DiagramSum> {
    delta_double_prime_ordered(d, &d.legs())
}

/// δ″ for the total order on legs given by their position in `order`.
pub fn delta_double_prime_ordered(d: &Diagram, order: &[usize]) -> Result<DiagramSum> {
    let mut legs = d.legs();
    legs.sort_unstable();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != legs {
        return domain("leg order is not a permutation of the legs");
    }
    let mut s = DiagramSum::new();
    for (i, &v) in order.iter().enumerate() {
        for &w in &order[i + 1..] {
            if d.label(v) == d.label(w) {
                s.add_sum(&delta_vw(d, v, w)?, 1);
            }
        }
    }
    Ok(s)
}

pub fn delta(d: &Diagram) -> Result<DiagramSum> {
    Ok(&delta_prime(d)? + &delta_double_prime(d)?)
}

/// Linear extension of a fallible diagram map.
pub fn on_sum(x: &DiagramSum, f: impl Fn(&Diagram) -> Result<DiagramSum>) -> Result<DiagramSum> {
    let mut s = DiagramSum::new();
    for (d, c) in x.terms() {
        s.add_sum(&f(d)?, c);
    }
    Ok(s)
}

/// δ′(x) in `target ⊗ ℤ/2`.
pub fn delta_prime_mod2(x: &DiagramSum, target: &Presentation) -> Result<Vec<u8>> {
    target.reduce_mod2(&on_sum(x, delta_prime)?)
}

/// Terms of `x` with first Betti number `l`.
pub fn loop_part(x: &DiagramSum, l: usize) -> DiagramSum {
    x.filter(|d| d.betti() == l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    fn p(s: &str) -> Diagram {
        parse(s).unwrap()
    }

    #[test]
    fn delta_on_one_leg_loop() {
        let d = p("O(1+)");
        let s = delta_v(&d, d.legs()[0]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.coeff(&p("O(1+,1+)")).abs(), 1);
        for (t, _) in s.terms() {
            assert_eq!((t.ideg(), t.betti()), (2, 1));
        }
    }

    #[test]
    fn double_prime_merges_equal_legs() {
        let s = delta_double_prime(&p("T(1+,2+,1+)")).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.coeff(&p("O(1+,2+)")).abs(), 1);
        assert!(delta_double_prime(&p("T(1+,2+,3+)")).unwrap().is_empty());
    }

    #[test]
    fn strut_is_rejected() {
        let d = p("T(1+,1-)");
        assert!(delta_v(&d, 0).is_err());
        let s = delta_vw(&p("T(1+,1+)"), 0, 1).unwrap();
        assert_eq!(s.terms().next().unwrap().0.betti(), 1);
    }
}
