//! Integer weight systems from structure constants, evaluated by signed
//! edge colorings.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::dsl::tree;
use crate::gf2;
use crate::maps::{bu_iter, delta_double_prime};
use crate::relations::Presentation;
use crate::error::{domain, JdError, Result};
use crate::label::Label;
use crate::sum::DiagramSum;

/// Constants `c_{ijk}`, indices `0..d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub d: usize,
    c: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstantsJson {
    pub d: usize,
    /// `[i, j, k, c]` with 1-based indices.
    pub entries: Vec<[i64; 4]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    Antisymmetry,
    Jacobi,
    Diagonal,
    Cyclic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// 1-based indices.
    pub at: Vec<usize>,
}

impl StructureConstants {
    pub fn zero(d: usize) -> StructureConstants {
        StructureConstants { d, c: vec![0; d * d * d] }
    }

    /// `c_{ijk}` is the sign of `(i,j,k)` as a permutation of `(1,2,3)`.
    pub fn sl2() -> StructureConstants {
        let mut s = StructureConstants::zero(3);
        for (p, sign) in [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1)] {
            s.set(p[0], p[1], p[2], sign);
        }
        s
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        self.c[(i * self.d + j) * self.d + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: i64) {
        let d = self.d;
        self.c[(i * d + j) * d + k] = v;
    }

    pub fn from_json(j: &ConstantsJson) -> Result<StructureConstants> {
        let mut s = StructureConstants::zero(j.d);
        for &[i, k, l, v] in &j.entries {
            let ok = |x: i64| x >= 1 && x as usize <= j.d;
            if !(ok(i) && ok(k) && ok(l)) {
                return domain(format!("index out of range 1..{} in entry [{i},{k},{l},{v}]", j.d));
            }
            s.set(i as usize - 1, k as usize - 1, l as usize - 1, v);
        }
        Ok(s)
    }

    pub fn to_json(&self) -> ConstantsJson {
        let mut entries = Vec::new();
        for i in 0..self.d {
            for j in 0..self.d {
                for k in 0..self.d {
                    let v = self.get(i, j, k);
                    if v != 0 {
                        entries.push([i as i64 + 1, j as i64 + 1, k as i64 + 1, v]);
                    }
                }
            }
        }
        ConstantsJson { d: self.d, entries }
    }

    /// Every violated axiom instance; empty when the system is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let d = self.d;
        let mut out = Vec::new();
        let mut bad = |axiom, at: Vec<usize>| out.push(Violation { axiom, at: at.iter().map(|x| x + 1).collect() });
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = self.get(i, j, k);
                    if c != -self.get(j, i, k) {
                        bad(Axiom::Antisymmetry, vec![i, j, k]);
                    }
                    if i == j && c != 0 {
                        bad(Axiom::Diagonal, vec![i, j, k]);
                    }
                    if c != self.get(j, k, i) || c != self.get(k, i, j) {
                        bad(Axiom::Cyclic, vec![i, j, k]);
                    }
                    for l in 0..d {
                        let s: i64 = (0..d)
                            .map(|m| {
                                self.get(i, j, m) * self.get(m, k, l) - self.get(l, i, m) * self.get(m, j, k)
                                    + self.get(l, j, m) * self.get(m, i, k)
                            })
                            .sum();
                        if s != 0 {
                            bad(Axiom::Jacobi, vec![i, j, k, l]);
                        }
                    }
                }
            }
        }
        out
    }

    /// A transposition of two indices other than `m` under which `c` changes
    /// by a global sign, moving some index of every nonzero constant.
    fn swap_symmetry(&self, m: usize) -> Option<(usize, usize)> {
        let d = self.d;
        let all = |f: &dyn Fn(usize, usize, usize) -> bool| {
            (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| f(i, j, k))))
        };
        for p in (0..d).filter(|&p| p != m) {
            for q in (p + 1..d).filter(|&q| q != m) {
                let s = |x: usize| if x == p { q } else if x == q { p } else { x };
                let moves = all(&|i, j, k| self.get(i, j, k) == 0 || [i, j, k].iter().any(|&x| x == p || x == q));
                let even = all(&|i, j, k| self.get(s(i), s(j), s(k)) == self.get(i, j, k));
                let odd = all(&|i, j, k| self.get(s(i), s(j), s(k)) == -self.get(i, j, k));
                if moves && (even || odd) {
                    return Some((p, q));
                }
            }
        }
        None
    }
}

/// A monomial in `S(H ⊗ g)`: sorted `(label, basis index)` pairs, 1-based.
pub type Monomial = Vec<(Label, u8)>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightPolynomial {
    terms: BTreeMap<Monomial, i64>,
}

impl WeightPolynomial {
    pub fn add(&mut self, mut mono: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        mono.sort_unstable();
        let e = self.terms.entry(mono.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&mono);
        }
    }

    pub fn add_all(&mut self, other: &WeightPolynomial, c: i64) {
        for (m, v) in &other.terms {
            self.add(m.clone(), v * c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coeff(&self, mono: &[(Label, u8)]) -> i64 {
        let mut m = mono.to_vec();
        m.sort_unstable();
        self.terms.get(&m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: i64) -> WeightPolynomial {
        let mut w = WeightPolynomial::default();
        w.add_all(self, c);
        w
    }
}

impl fmt::Display for WeightPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c:+}")?;
            for (l, e) in m {
                write!(f, "({l}⊗e{e})")?;
            }
        }
        Ok(())
    }
}

struct Coloring<'a> {
    c: &'a StructureConstants,
    d: &'a Diagram,
    edge: Vec<usize>,
    vertices: Vec<[usize; 3]>,
    color: Vec<Option<u8>>,
    out: WeightPolynomial,
}

impl Coloring<'_> {
    fn run(&mut self, i: usize, weight: i64) {
        if i == self.vertices.len() {
            self.finish(weight);
            return;
        }
        let v = self.vertices[i];
        let free: Vec<usize> = {
            let mut f: Vec<usize> = v.iter().map(|&h| self.edge[h]).filter(|&e| self.color[e].is_none()).collect();
            f.dedup();
            f
        };
        let dim = self.c.d;
        let combos = dim.pow(free.len() as u32);
        for code in 0..combos {
            let mut x = code;
            for &e in &free {
                self.color[e] = Some((x % dim) as u8);
                x /= dim;
            }
            let col = |h: usize| self.color[self.edge[h]].unwrap() as usize;
            let w = self.c.get(col(v[0]), col(v[1]), col(v[2]));
            if w != 0 {
                self.run(i + 1, weight * w);
            }
        }
        for &e in &free {
            self.color[e] = None;
        }
    }

    /// Legs on struts still need a color.
    fn finish(&mut self, weight: i64) {
        let legs = self.d.legs();
        let open: Vec<usize> = {
            let mut o: Vec<usize> = legs.iter().map(|&h| self.edge[h]).filter(|&e| self.color[e].is_none()).collect();
            o.sort_unstable();
            o.dedup();
            o
        };
        let dim = self.c.d;
        for code in 0..dim.pow(open.len() as u32) {
            let mut x = code;
            for &e in &open {
                self.color[e] = Some((x % dim) as u8);
                x /= dim;
            }
            let mono: Monomial =
                legs.iter().map(|&h| (self.d.label(h).unwrap(), self.color[self.edge[h]].unwrap() + 1)).collect();
            self.out.add(mono, weight);
        }
        for &e in &open {
            self.color[e] = None;
        }
    }
}

/// Vertex order in which each vertex shares an edge with an earlier one
/// whenever possible, so constraints close early.
fn vertex_order(d: &Diagram) -> Vec<[usize; 3]> {
    let mut vs = d.trivalent_vertices();
    let ids = d.vertex_ids();
    let mut out = Vec::with_capacity(vs.len());
    let mut seen = vec![false; ids.iter().copied().max().map_or(0, |m| m + 1)];
    while !vs.is_empty() {
        let pos = vs.iter().position(|v| v.iter().any(|&h| seen[ids[d.pair(h)]])).unwrap_or(0);
        let v = vs.remove(pos);
        seen[ids[v[0]]] = true;
        out.push(v);
    }
    out
}

pub fn evaluate(c: &StructureConstants, d: &Diagram) -> WeightPolynomial {
    let n = d.half_edges();
    let mut edge = vec![usize::MAX; n];
    for (i, (a, b)) in d.edges().into_iter().enumerate() {
        edge[a] = i;
        edge[b] = i;
    }
    let n_edges = n / 2;
    let mut run = Coloring {
        c,
        d,
        edge,
        vertices: vertex_order(d),
        color: vec![None; n_edges],
        out: WeightPolynomial::default(),
    };
    run.run(0, 1);
    run.out
}

pub fn evaluate_sum(c: &StructureConstants, x: &DiagramSum) -> WeightPolynomial {
    let mut w = WeightPolynomial::default();
    for (d, k) in x.terms() {
        w.add_all(&evaluate(c, d), k);
    }
    w
}

/// Monomials with every basis index equal to `m` (1-based).
pub fn project(w: &WeightPolynomial, m: u8) -> WeightPolynomial {
    let mut out = WeightPolynomial::default();
    for (mono, c) in w.terms() {
        if mono.iter().all(|&(_, e)| e == m) {
            out.add(mono.clone(), c);
        }
    }
    out
}

/// Half of the `m`-projection of `W(x)`. Needs a color swap fixing `m`
/// that makes the projection even; odd coefficients are reported.
pub fn project_half(c: &StructureConstants, x: &DiagramSum, m: u8) -> Result<WeightPolynomial> {
    if m == 0 || m as usize > c.d {
        return domain(format!("basis index {m} outside 1..{}", c.d));
    }
    if c.swap_symmetry(m as usize - 1).is_none() {
        return domain("constants have no color swap fixing the projected index");
    }
    if x.terms().any(|(d, _)| d.ideg() == 0) {
        return domain("halving does not apply to struts");
    }
    let p = project(&evaluate_sum(c, x), m);
    let mut out = WeightPolynomial::default();
    for (mono, k) in p.terms() {
        if k % 2 != 0 {
            return Err(JdError::Domain(format!("odd coefficient {k} in the projection")));
        }
        out.add(mono.clone(), k / 2);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HigherLoopBounds {
    pub k: usize,
    pub g: u8,
    pub tor_rank: usize,
    pub ker_span_rank: usize,
    pub im_span_rank: usize,
}

/// `𝔟𝔲^k(T(a,b,a))` in `A_{2k+1,k}`.
pub fn blown_tripod(k: usize, a: Label, b: Label) -> Result<Diagram> {
    bu_iter(&tree(&[a, b, a]), k)
}

/// `½ pr_1 W(δ″(𝔟𝔲^k(T(a,b,a))))` under sl2.
pub fn half_weight_of_tripod(k: usize, a: Label, b: Label) -> Result<WeightPolynomial> {
    let d = blown_tripod(k, a, b)?;
    project_half(&StructureConstants::sl2(), &delta_double_prime(&d)?, 1)
}

/// Ranks bounding `A_{2k+1,k}` from below: the 2-torsion, the span of
/// `𝔟𝔲^k(T(a,b,a)) − 𝔟𝔲^k(T(b,a,b))` in it, and the mod-2 span of the
/// halved sl2 weights of `δ″(𝔟𝔲^k(T(a,b,a)))`.
pub fn higher_loop_bounds(k: usize, g: u8) -> Result<HigherLoopBounds> {
    if k > 2 {
        return Err(JdError::Cap { n: 2 * k + 1, cap: 5 });
    }
    let pres = Presentation::cached(2 * k + 1, k, g)?;
    let labels = Label::all(g);
    let mut ker = Vec::new();
    for (i, &a) in labels.iter().enumerate() {
        for &b in &labels[i + 1..] {
            let mut x = DiagramSum::single(&blown_tripod(k, a, b)?);
            x.add_term(&blown_tripod(k, b, a)?, -1);
            ker.push(pres.smith().torsion_bits(&pres.coords(&x)?));
        }
    }
    let mut monos: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut ims = Vec::new();
    for &a in &labels {
        for &b in &labels {
            let w = half_weight_of_tripod(k, a, b)?;
            let mut v = Vec::new();
            for (m, c) in w.terms() {
                let n = monos.len();
                let i = *monos.entry(m.clone()).or_insert(n);
                v.push((i, c.rem_euclid(2) as u8));
            }
            ims.push(v);
        }
    }
    let dense = |v: &Vec<(usize, u8)>| {
        let mut out = vec![0u8; monos.len()];
        for &(i, b) in v {
            out[i] ^= b;
        }
        out
    };
    let ims: Vec<Vec<u8>> = ims.iter().map(dense).collect();
    Ok(HigherLoopBounds {
        k,
        g,
        tor_rank: pres.torsion().len(),
        ker_span_rank: gf2::rank(&ker),
        im_span_rank: gf2::rank(&ims),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn sl2_is_valid() {
        assert!(StructureConstants::sl2().validate().is_empty());
        assert!(StructureConstants::zero(3).validate().is_empty());
        let mut c = StructureConstants::zero(3);
        c.set(0, 0, 1, 1);
        assert!(c.validate().iter().any(|v| v.axiom == Axiom::Diagonal));
    }

    #[test]
    fn json_round_trip() {
        let c = StructureConstants::sl2();
        let j = serde_json::to_string(&c.to_json()).unwrap();
        let back: ConstantsJson = serde_json::from_str(&j).unwrap();
        assert_eq!(StructureConstants::from_json(&back).unwrap(), c);
    }

    #[test]
    fn circle_with_two_legs() {
        let (a, b) = (Label::plus(1), Label::plus(2));
        let w = evaluate(&StructureConstants::sl2(), &parse("O(1+,2+)").unwrap());
        let mut expect = WeightPolynomial::default();
        for m in 1..=3 {
            expect.add(vec![(a, m), (b, m)], -2);
        }
        assert_eq!(w, expect);
    }

    #[test]
    fn example_pattern() {
        let (a, b, c) = (Label::plus(1), Label::minus(1), Label::plus(2));
        let w = |s: &str| evaluate(&StructureConstants::sl2(), &parse(s).unwrap());
        let m1 = [(a, 1), (a, 1), (b, 2), (b, 2), (c, 2), (c, 2)];
        let m2 = [(a, 1), (a, 1), (b, 1), (b, 1), (c, 2), (c, 2)];
        let x = w("T(1+,1-,2+,2+,1-,1+)");
        let y = w("T(1-,2+,1+,1+,2+,1-)");
        assert_eq!((x.coeff(&m1), x.coeff(&m2)), (1, 0));
        assert_eq!((y.coeff(&m1), y.coeff(&m2)), (0, 1));
    }

    #[test]
    fn halved_tripod() {
        let (a, b) = (Label::plus(1), Label::minus(1));
        for k in 0..=2 {
            let mut expect = WeightPolynomial::default();
            expect.add(vec![(a, 1), (b, 1)], 1);
            let sign = if k % 2 == 0 { -1 } else { 1 };
            assert_eq!(half_weight_of_tripod(k, a, b).unwrap(), expect.scale(sign), "k={k}");
        }
        assert!(project_half(&StructureConstants::sl2(), &DiagramSum::new(), 1).unwrap().is_zero());
    }

    #[test]
    fn bounds_genus_one() {
        let b = higher_loop_bounds(0, 1).unwrap();
        assert_eq!((b.tor_rank, b.ker_span_rank, b.im_span_rank), (4, 1, 3));
    }

    #[test]
    fn strut_weight() {
        let w = evaluate(&StructureConstants::sl2(), &parse("T(1+,1-)").unwrap());
        assert_eq!(w.terms().count(), 3);
    }
}
