//! Blow-up and blow-down between 1-loop and 2-loop strata, and the
//! reduction of eyeglass diagrams to the theta family.

use crate::canon::as_canonical;
use crate::diagram::Diagram;
use crate::dsl::{circle, theta};
use crate::error::{domain, Result};
use crate::label::Label;
use crate::maps::delta::{delta_double_prime, on_sum};
use crate::relations::{ihx, Presentation};
use crate::spine::{core_half_edges, eyeglass, spine_type, theta_paths, CorePath, SpineType};
use crate::sum::DiagramSum;

/// Replace the vertex containing `h` by a triangle.
pub fn bu_at(d: &Diagram, h: usize) -> Result<Diagram> {
    if d.is_leg(h) {
        return domain("blow-up needs a trivalent vertex");
    }
    let hs = [h, d.next(h), d.next(d.next(h))];
    let mut b = d.to_builder();
    for &x in &hs {
        b.kill(x);
    }
    let t = [b.vertex(), b.vertex(), b.vertex()];
    for i in 0..3 {
        let p = d.pair(hs[i]);
        match hs.iter().position(|&x| x == p) {
            Some(j) if j > i => b.join(t[i][0], t[j][0]),
            Some(_) => {}
            None => b.join(t[i][0], p),
        }
        b.join(t[i][1], t[(i + 1) % 3][2]);
    }
    b.finish()
}

/// Blow-up at the first trivalent vertex.
pub fn bu(d: &Diagram) -> Result<Diagram> {
    match d.trivalent_vertices().first() {
        Some(v) => bu_at(d, v[0]),
        None => domain("blow-up needs a trivalent vertex"),
    }
}

pub fn bu_iter(d: &Diagram, k: usize) -> Result<Diagram> {
    let mut d = d.clone();
    for _ in 0..k {
        d = bu(&d)?;
    }
    Ok(d)
}

/// Rewrite a 2-loop diagram as a combination of theta-spine diagrams.
pub fn eyeglass_to_theta(d: &Diagram) -> Result<DiagramSum> {
    if spine_type(d)? == SpineType::Theta {
        return Ok(DiagramSum::single(d));
    }
    let e = eyeglass(d)?;
    let hl = e.bridge.start;
    let (up_l, down_l) = (d.next(hl), d.next(d.next(hl)));
    let er = e.bridge.end;
    let (down_r, up_r) = (d.next(er), d.next(d.next(er)));
    let tv = &e.bridge.inner;
    let sign: i64 = tv.iter().map(|v| if d.next(v.off) == v.inn { 1 } else { -1 }).product();
    let mut out = DiagramSum::new();
    for eps in [1i64, -1] {
        for mask in 0u32..1 << tv.len() {
            let mut b = d.to_builder();
            for h in [hl, up_l, down_l, er, down_r, up_r] {
                b.kill(h);
            }
            for v in tv {
                b.kill(v.inn);
                b.kill(v.out);
                b.kill(v.off);
            }
            let [pr, pl, pv] = b.vertex();
            let [qr, qv, ql] = b.vertex();
            b.join(pv, qv);
            if d.pair(up_l) == down_l {
                b.join(pl, ql);
            } else if eps == 1 {
                b.join(pl, d.pair(up_l));
                b.join(ql, d.pair(down_l));
            } else {
                b.join(pl, d.pair(down_l));
                b.join(ql, d.pair(up_l));
            }
            let mut ends = [pr, qr];
            for (i, v) in tv.iter().enumerate() {
                let side = usize::from(mask >> i & 1 == 0);
                let [t, l, r] = b.vertex();
                b.join(t, d.pair(v.off));
                b.join(l, ends[side]);
                ends[side] = r;
            }
            if d.pair(up_r) == down_r {
                b.join(ends[0], ends[1]);
            } else {
                b.join(ends[0], d.pair(up_r));
                b.join(ends[1], d.pair(down_r));
            }
            out.add_term(&b.finish()?, sign * eps);
        }
    }
    Ok(out)
}

/// Use IHX to move every subtree hanging off the core onto the core, so
/// that each core vertex off the branch points carries a leg.
pub fn flatten(d: &Diagram) -> DiagramSum {
    let core = core_half_edges(d);
    let hanging = (0..d.half_edges()).find(|&h| {
        !d.is_leg(h) && !core[h] && !d.is_leg(d.pair(h)) && (core[d.next(h)] || core[d.next(d.next(h))])
    });
    match hanging {
        None => DiagramSum::single(d),
        Some(o) => {
            let [_, h, x] = ihx(d, o).expect("hanging edge joins two vertices");
            &flatten(&h) + &flatten(&x)
        }
    }
}

fn leg_word(d: &Diagram, p: &CorePath) -> Result<Vec<Label>> {
    p.inner
        .iter()
        .map(|v| match d.label(d.pair(v.off)) {
            Some(l) => Ok(l),
            None => domain("core path carries a subtree; flatten first"),
        })
        .collect()
}

/// Blow-down of a theta diagram whose core vertices all carry legs.
pub fn bd_theta(d: &Diagram) -> Result<DiagramSum> {
    let paths = theta_paths(d)?;
    let words = [leg_word(d, &paths[0])?, leg_word(d, &paths[1])?, leg_word(d, &paths[2])?];
    let rev = |w: &Vec<Label>| w.iter().rev().copied().collect::<Vec<_>>();
    let reversed = [rev(&words[0]), rev(&words[1]), rev(&words[2])];
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let form = as_canonical(d);
    for ws in [&words, &reversed] {
        for [i, j, k] in perms {
            let (a, b, c) = (&ws[i], &ws[j], &ws[k]);
            if !(a.len() >= c.len() && c.len() >= b.len()) {
                continue;
            }
            let t = as_canonical(&theta(a, b, c));
            if t.rep != form.rep {
                continue;
            }
            let sign = (form.sign * t.sign) as i64;
            let mut out = DiagramSum::new();
            if b.is_empty() {
                if c.is_empty() {
                    out.add_term(&circle(a), 2 * sign);
                } else {
                    let w: Vec<Label> = a.iter().chain(c.iter().rev()).copied().collect();
                    out.add_term(&circle(&w), sign);
                }
            }
            return Ok(out);
        }
    }
    domain("diagram does not match its theta presentation")
}

/// Blow-down `A_{n,2} -> A_{n-2,1}`, through the theta family.
pub fn bd(d: &Diagram) -> Result<DiagramSum> {
    let mut out = DiagramSum::new();
    for (t, c) in eyeglass_to_theta(d)?.terms() {
        for (f, k) in flatten(t).terms() {
            out.add_sum(&bd_theta(f)?, c * k);
        }
    }
    Ok(out)
}

/// `𝔟𝔡∘δ″` on `A_{2m-1,1}`, reduced in `target ⊗ ℤ/2` (`target = A_{2m-2,1}`).
pub fn fold_map(x: &DiagramSum, target: &Presentation) -> Result<Vec<u8>> {
    let two_loop = on_sum(x, delta_double_prime)?;
    target.reduce_mod2(&on_sum(&two_loop, bd)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    fn p(s: &str) -> Diagram {
        parse(s).unwrap()
    }

    #[test]
    fn blow_up_examples() {
        assert_eq!(as_canonical(&bu(&p("T(1+,2+,1+)")).unwrap()).rep, as_canonical(&p("O(1+,2+,1+)")).rep);
        let o = p("O(1+,2+,1-)");
        assert_eq!(as_canonical(&bu(&o).unwrap()).rep, as_canonical(&p("theta(1+;;1-,2+)")).rep);
        let s = bu(&o).unwrap();
        assert_eq!((s.ideg(), s.betti(), s.num_legs()), (5, 2, 3));
    }

    #[test]
    fn blow_down_table() {
        let one = |s: &str| {
            let x = bd(&p(s)).unwrap();
            x.terms().map(|(d, c)| (as_canonical(d).rep, c.abs())).collect::<Vec<_>>()
        };
        assert_eq!(one("theta(1+,2+;;1-)"), vec![(as_canonical(&p("O(1+,2+,1-)")).rep, 1)]);
        assert!(one("theta(1+;1-;2+)").is_empty());
        assert_eq!(one("theta(1+,1-,2+,2-;;)"), vec![(as_canonical(&p("O(1+,1-,2+,2-)")).rep, 2)]);
    }

    #[test]
    fn eyeglass_term_count() {
        let eg = p("G[t1=(1,2,3),t2=(3,4,5),t3=(2,1,6),t4=(5,4,7);u(1+)=6,u(2+)=7]");
        let f = eyeglass_to_theta(&eg).unwrap();
        assert!(f.terms().all(|(d, _)| spine_type(d).unwrap() == SpineType::Theta));
    }
}
