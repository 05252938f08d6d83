//! Text syntax for diagrams.
//!
//! ```text
//! label   := ["~"] INT ("+"|"-") ["_" INT]
//! diagram := "T(" labels ")" | "O(" labels ")"
//!          | "theta(" labels? ";" labels? ";" labels? ")"
//!          | "G[" ("t" INT "=(" e "," e "," e ")")* ";" ("u(" label ")=" e)* "]"
//! ```
//!
//! Cyclic orders are counterclockwise as drawn. In `T(a1,..,an)` the legs
//! a2..a(n-1) hang from a horizontal path running from a1 to an; in `O(..)`
//! the legs are read clockwise around a circle with the legs outside; in
//! `theta(A;B;C)` the three sequences sit on the upper, middle and lower
//! arcs between the left and right spine vertices, read left to right, with
//! legs pointing away from the middle. In `G[..]` each edge id occurs twice.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::canon::{as_canonical, canonicalize};
use crate::diagram::{Builder, Diagram};
use crate::error::{JdError, Result};
use crate::label::{Label, Sign};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(JdError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.ws();
        if self.s[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<u64> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| JdError::Parse { pos: start, msg: "integer too large".into() })
    }

    fn label(&mut self) -> Result<Label> {
        let barred = self.eat(b'~');
        let start = self.pos;
        let index = self.int()?;
        if index == 0 || index > u8::MAX as u64 {
            return Err(JdError::Parse { pos: start, msg: "label index out of range".into() });
        }
        let sign = if self.eat(b'+') {
            Sign::Plus
        } else if self.eat(b'-') {
            Sign::Minus
        } else {
            return self.err("expected '+' or '-'");
        };
        let sub = if self.eat(b'_') {
            let s = self.int()?;
            if s == 0 || s > u16::MAX as u64 {
                return self.err("subscript out of range");
            }
            Some(s as u16)
        } else {
            None
        };
        Ok(Label { index: index as u8, sign, sub, barred })
    }

    /// Comma-separated labels up to (not including) one of `end`.
    fn labels(&mut self, end: &[u8]) -> Result<Vec<Label>> {
        let mut out = Vec::new();
        if self.peek().map_or(false, |c| end.contains(&c)) {
            return Ok(out);
        }
        loop {
            out.push(self.label()?);
            if !self.eat(b',') {
                break;
            }
        }
        Ok(out)
    }

    fn diagram(&mut self) -> Result<Diagram> {
        let d = if self.keyword("theta(") {
            let a = self.labels(b";")?;
            self.expect(b';')?;
            let b = self.labels(b";")?;
            self.expect(b';')?;
            let c = self.labels(b")")?;
            self.expect(b')')?;
            theta(&a, &b, &c)
        } else if self.keyword("T(") {
            let start = self.pos;
            let ls = self.labels(b")")?;
            self.expect(b')')?;
            if ls.len() < 2 {
                return Err(JdError::Parse { pos: start, msg: "T needs at least two labels".into() });
            }
            tree(&ls)
        } else if self.keyword("O(") {
            let start = self.pos;
            let ls = self.labels(b")")?;
            self.expect(b')')?;
            if ls.is_empty() {
                return Err(JdError::Parse { pos: start, msg: "O needs at least one label".into() });
            }
            circle(&ls)
        } else if self.keyword("G[") {
            self.generic()?
        } else {
            return self.err("expected T(, O(, theta( or G[");
        };
        Ok(d)
    }

    fn generic(&mut self) -> Result<Diagram> {
        let mut bd = Builder::new();
        let mut slots: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        if self.peek() != Some(b';') {
            loop {
                self.expect(b't')?;
                self.int()?;
                self.expect(b'=')?;
                self.expect(b'(')?;
                let v = bd.vertex();
                for (i, h) in v.iter().enumerate() {
                    if i > 0 {
                        self.expect(b',')?;
                    }
                    let e = self.int()?;
                    slots.entry(e).or_default().push(*h);
                }
                self.expect(b')')?;
                if !self.eat(b',') {
                    break;
                }
            }
        }
        self.expect(b';')?;
        if self.peek() != Some(b']') {
            loop {
                self.expect(b'u')?;
                self.expect(b'(')?;
                let l = self.label()?;
                self.expect(b')')?;
                self.expect(b'=')?;
                let e = self.int()?;
                let h = bd.leg(l);
                slots.entry(e).or_default().push(h);
                if !self.eat(b',') {
                    break;
                }
            }
        }
        self.expect(b']')?;
        for (e, hs) in &slots {
            if hs.len() != 2 {
                return Err(JdError::Unpaired(e.to_string()));
            }
            bd.join(hs[0], hs[1]);
        }
        bd.finish()
    }
}

/// Parse without a genus bound.
pub fn parse(text: &str) -> Result<Diagram> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let d = p.diagram()?;
    p.ws();
    if p.pos != p.s.len() {
        return p.err("trailing input");
    }
    Ok(d)
}

/// A single label such as `2-` or `~1+_3`.
pub fn parse_label(text: &str) -> Result<Label> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    p.ws();
    let l = p.label()?;
    p.ws();
    if p.pos != p.s.len() {
        return p.err("trailing input");
    }
    Ok(l)
}

pub fn parse_genus(text: &str, g: u8) -> Result<Diagram> {
    let d = parse(text)?;
    if let Some(l) = d.univalent_vertices().iter().map(|x| x.1).find(|l| l.index > g) {
        return Err(JdError::Genus { index: l.index, genus: g });
    }
    Ok(d)
}

/// The tree `T(a1,..,an)`; `T(a,b)` is a strut.
pub fn tree(ls: &[Label]) -> Diagram {
    let mut bd = Builder::new();
    tree_into(&mut bd, ls);
    bd.finish().expect("tree is well formed")
}

fn tree_into(bd: &mut Builder, ls: &[Label]) {
    let n = ls.len();
    let first = bd.leg(ls[0]);
    if n == 2 {
        let last = bd.leg(ls[1]);
        bd.join(first, last);
        return;
    }
    let mut open = first;
    for (i, &l) in ls.iter().enumerate().take(n - 1).skip(1) {
        let [leg, prev, next] = bd.vertex();
        let x = bd.leg(l);
        bd.join(leg, x);
        bd.join(prev, open);
        open = next;
        if i == n - 2 {
            let last = bd.leg(ls[n - 1]);
            bd.join(next, last);
        }
    }
}

/// `O(a1,..,an)`.
pub fn circle(ls: &[Label]) -> Diagram {
    let mut bd = Builder::new();
    let mut vs = Vec::new();
    for &l in ls {
        let [leg, prev, next] = bd.vertex();
        let x = bd.leg(l);
        bd.join(leg, x);
        vs.push((prev, next));
    }
    for i in 0..vs.len() {
        let j = (i + 1) % vs.len();
        bd.join(vs[i].1, vs[j].0);
    }
    bd.finish().expect("circle is well formed")
}

/// `theta(A;B;C)`.
pub fn theta(a: &[Label], b: &[Label], c: &[Label]) -> Diagram {
    let mut bd = Builder::new();
    let [lm, lt, lb] = bd.vertex();
    let [rt, rm, rb] = bd.vertex();
    for (ls, from, to, lower) in [(a, lt, rt, false), (b, lm, rm, false), (c, lb, rb, true)] {
        let mut open = from;
        for &l in ls {
            let v = bd.vertex();
            let x = bd.leg(l);
            let [leg, prev, next] = if lower { [v[0], v[2], v[1]] } else { v };
            bd.join(leg, x);
            bd.join(prev, open);
            open = next;
        }
        bd.join(open, to);
    }
    bd.finish().expect("theta is well formed")
}

/// Generic syntax with edges numbered in half-edge order.
pub fn to_generic(d: &Diagram) -> String {
    let mut edge = vec![0usize; d.half_edges()];
    for (k, (a, b)) in d.edges().into_iter().enumerate() {
        edge[a] = k + 1;
        edge[b] = k + 1;
    }
    let mut s = String::from("G[");
    for (i, [a, b, c]) in d.trivalent_vertices().into_iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        write!(s, "t{}=({},{},{})", i + 1, edge[a], edge[b], edge[c]).unwrap();
    }
    s.push(';');
    for (i, (h, l)) in d.univalent_vertices().into_iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        write!(s, "u({})={}", l, edge[h]).unwrap();
    }
    s.push(']');
    s
}

fn join_labels(ls: &[Label]) -> String {
    ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
}

/// Candidate named presentations of `d` ignoring cyclic orders.
fn named_candidates(d: &Diagram) -> Vec<String> {
    let st = d.stats();
    if !st.connected {
        return Vec::new();
    }
    let ids = d.vertex_ids();
    let mut out = Vec::new();
    match st.betti {
        0 => {
            if st.ideg == 0 {
                let ls: Vec<Label> = d.univalent_vertices().iter().map(|x| x.1).collect();
                out.push(format!("T({})", join_labels(&ls)));
                return out;
            }
            // caterpillar: walk from an end vertex with two legs
            for [h0, h1, h2] in d.trivalent_vertices() {
                for (ga, gb, go) in [(h0, h1, h2), (h1, h2, h0), (h2, h0, h1), (h1, h0, h2), (h0, h2, h1), (h2, h1, h0)] {
                    if !(d.is_leg(d.pair(ga)) && d.is_leg(d.pair(gb))) {
                        continue;
                    }
                    let mut ls = vec![d.label(d.pair(ga)).unwrap(), d.label(d.pair(gb)).unwrap()];
                    let mut h = go;
                    loop {
                        if d.is_leg(d.pair(h)) {
                            ls.push(d.label(d.pair(h)).unwrap());
                            if ls.len() == st.legs {
                                out.push(format!("T({})", join_labels(&ls)));
                            }
                            break;
                        }
                        let e = d.pair(h);
                        let (x, y) = (d.next(e), d.next(d.next(e)));
                        let (lx, ly) = (d.is_leg(d.pair(x)), d.is_leg(d.pair(y)));
                        if lx && ly {
                            let (a, b) = (d.label(d.pair(x)).unwrap(), d.label(d.pair(y)).unwrap());
                            for (p, q) in [(a, b), (b, a)] {
                                let mut full = ls.clone();
                                full.push(p);
                                full.push(q);
                                if full.len() == st.legs {
                                    out.push(format!("T({})", join_labels(&full)));
                                }
                            }
                            break;
                        } else if lx {
                            ls.push(d.label(d.pair(x)).unwrap());
                            h = y;
                        } else if ly {
                            ls.push(d.label(d.pair(y)).unwrap());
                            h = x;
                        } else {
                            break;
                        }
                    }
                }
            }
        }
        1 => {
            if st.ideg != st.legs {
                return out;
            }
            for [h0, h1, h2] in d.trivalent_vertices() {
                for (g, dir) in [(h0, h1), (h1, h2), (h2, h0), (h0, h2), (h1, h0), (h2, h1)] {
                    if !d.is_leg(d.pair(g)) {
                        continue;
                    }
                    let mut ls = Vec::new();
                    let mut g = g;
                    let mut h = dir;
                    let mut ok = true;
                    loop {
                        ls.push(d.label(d.pair(g)).unwrap());
                        let e = d.pair(h);
                        if e == dir || ids[e] == ids[dir] {
                            break;
                        }
                        let (x, y) = (d.next(e), d.next(d.next(e)));
                        if d.is_leg(d.pair(x)) {
                            g = x;
                            h = y;
                        } else if d.is_leg(d.pair(y)) {
                            g = y;
                            h = x;
                        } else {
                            ok = false;
                            break;
                        }
                        if ls.len() > st.legs {
                            ok = false;
                            break;
                        }
                    }
                    if ok && ls.len() == st.legs {
                        out.push(format!("O({})", join_labels(&ls)));
                    }
                }
            }
        }
        2 => {
            let spine: Vec<[usize; 3]> = d
                .trivalent_vertices()
                .into_iter()
                .filter(|v| v.iter().all(|&h| !d.is_leg(d.pair(h))))
                .collect();
            if spine.len() != 2 || st.ideg != st.legs + 2 {
                return out;
            }
            for (l, r) in [(0, 1), (1, 0)] {
                let mut arcs = Vec::new();
                for &start in &spine[l] {
                    let mut ls = Vec::new();
                    let mut h = start;
                    loop {
                        let e = d.pair(h);
                        if ids[e] == ids[spine[r][0]] {
                            break;
                        }
                        if ids[e] == ids[spine[l][0]] {
                            return Vec::new();
                        }
                        let (x, y) = (d.next(e), d.next(d.next(e)));
                        if d.is_leg(d.pair(x)) {
                            ls.push(d.label(d.pair(x)).unwrap());
                            h = y;
                        } else if d.is_leg(d.pair(y)) {
                            ls.push(d.label(d.pair(y)).unwrap());
                            h = x;
                        } else {
                            return Vec::new();
                        }
                    }
                    arcs.push(ls);
                }
                for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                    out.push(format!(
                        "theta({};{};{})",
                        join_labels(&arcs[p[0]]),
                        join_labels(&arcs[p[1]]),
                        join_labels(&arcs[p[2]])
                    ));
                }
            }
        }
        _ => {}
    }
    out
}

/// Named form with the AS sign relating it to `d`: `d = sign * parse(name)`.
/// Falls back to the generic syntax with sign 1.
pub fn pretty(d: &Diagram) -> (i8, String) {
    let target = as_canonical(d);
    let mut best: Option<(String, i8)> = None;
    for cand in named_candidates(d) {
        let Ok(e) = parse(&cand) else { continue };
        let f = as_canonical(&e);
        if f.rep != target.rep {
            continue;
        }
        let sign = target.sign * f.sign;
        let better = match &best {
            None => true,
            Some((s, sg)) => (sign != 1, &cand) < (*sg != 1, s),
        };
        if better {
            best = Some((cand, sign));
        }
    }
    match best {
        Some((s, sg)) => (sg, s),
        None => (1, to_generic(&canonicalize(d))),
    }
}

/// Named form when it matches `d` exactly (with cyclic orders).
pub fn exact_name(d: &Diagram) -> Option<String> {
    let c = canonicalize(d);
    let mut names: Vec<String> = named_candidates(d)
        .into_iter()
        .filter(|s| parse(s).map(|e| canonicalize(&e) == c).unwrap_or(false))
        .collect();
    names.sort();
    names.into_iter().next()
}

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegJson {
    pub label: String,
    pub edge: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub schema_version: u32,
    pub trivalent: Vec<[usize; 3]>,
    pub univalent: Vec<LegJson>,
    pub edges: usize,
    pub dsl: String,
    pub ideg: usize,
    pub betti: usize,
    pub legs: usize,
    pub connected: bool,
}

/// JSON view of the canonical form of `d`.
pub fn to_json(d: &Diagram) -> DiagramJson {
    let c = canonicalize(d);
    let mut edge = vec![0usize; c.half_edges()];
    for (k, (a, b)) in c.edges().into_iter().enumerate() {
        edge[a] = k + 1;
        edge[b] = k + 1;
    }
    let st = c.stats();
    DiagramJson {
        schema_version: SCHEMA_VERSION,
        trivalent: c.trivalent_vertices().into_iter().map(|[a, b, x]| [edge[a], edge[b], edge[x]]).collect(),
        univalent: c.univalent_vertices().into_iter().map(|(h, l)| LegJson { label: l.to_string(), edge: edge[h] }).collect(),
        edges: c.half_edges() / 2,
        dsl: to_generic(&c),
        ideg: st.ideg,
        betti: st.betti,
        legs: st.legs,
        connected: st.connected,
    }
}

pub fn from_json(j: &DiagramJson) -> Result<Diagram> {
    parse(&j.dsl)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let t = parse("T(1+,2-,1+)").unwrap().stats();
        assert_eq!((t.ideg, t.betti, t.legs), (1, 0, 3));
        let th = parse("theta(1+;2+;1-)").unwrap().stats();
        assert_eq!((th.ideg, th.betti, th.legs, th.connected), (5, 2, 3, true));
        let o = parse("O(1+)").unwrap().stats();
        assert_eq!((o.ideg, o.betti, o.legs), (1, 1, 1));
        let t4 = parse("T(1+,1-,1+,1-)").unwrap().stats();
        assert_eq!((t4.ideg, t4.betti, t4.legs, t4.connected), (2, 0, 4, true));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("T(1+"), Err(JdError::Parse { .. })));
        assert!(matches!(parse_genus("O(3+)", 2), Err(JdError::Genus { .. })));
        assert!(matches!(parse("G[t1=(1,2,3);u(1+)=1,u(1-)=2]"), Err(JdError::Unpaired(_))));
    }

    #[test]
    fn tree_orientation() {
        // T(a,b,c) is the vertex with ccw order (b, a, c)
        let d = parse("T(1+,2+,3+)").unwrap();
        let e = parse("G[t1=(2,1,3);u(1+)=1,u(2+)=2,u(3+)=3]").unwrap();
        assert_eq!(canonicalize(&d), canonicalize(&e));
    }

    #[test]
    fn generic_round_trip() {
        for s in ["T(1+,2-,1+,2+)", "O(1+,1-,2+)", "theta(1+,2+;;1-)", "theta(;;)", "T(1+,1-)"] {
            let c = canonicalize(&parse(s).unwrap());
            let g = to_generic(&c);
            assert_eq!(canonicalize(&parse(&g).unwrap()), c, "{s}");
        }
    }

    #[test]
    fn names_recovered() {
        for s in ["T(1+,2-,1+,2+)", "O(1+,1-,2+)", "theta(1+,2+;1-;2-)", "O(1+)", "T(1+,2+,1-)"] {
            let d = parse(s).unwrap();
            let n = exact_name(&d).expect(s);
            assert_eq!(canonicalize(&parse(&n).unwrap()), canonicalize(&d));
            let (sg, p) = pretty(&d.flip_vertex(d.trivalent_vertices()[0][0]));
            let f = as_canonical(&parse(&p).unwrap());
            assert_eq!(f.rep, as_canonical(&d).rep);
            let _ = sg;
        }
    }
}
