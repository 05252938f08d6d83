//! Canonical forms. `canonicalize` respects cyclic orders; `as_canonical`
//! forgets them and reports the sign relating the input to its class
//! representative under AS.

use std::cmp::Ordering;

use crate::diagram::Diagram;

const NONE: usize = usize::MAX;
const TRI: u32 = u32::MAX;

/// Split into connected components, each as its own diagram.
fn split(d: &Diagram) -> Vec<Diagram> {
    let n = d.half_edges();
    let mut comp = vec![NONE; n];
    let mut parts = Vec::new();
    for s in 0..n {
        if comp[s] != NONE {
            continue;
        }
        let c = parts.len();
        let mut members = vec![s];
        comp[s] = c;
        let mut i = 0;
        while i < members.len() {
            let h = members[i];
            for x in [d.pair(h), d.next(h)] {
                if comp[x] == NONE {
                    comp[x] = c;
                    members.push(x);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        parts.push(members);
    }
    if parts.len() <= 1 {
        return vec![d.clone()];
    }
    parts
        .iter()
        .map(|members| {
            let mut idx = vec![NONE; n];
            for (i, &h) in members.iter().enumerate() {
                idx[h] = i;
            }
            Diagram {
                pair: members.iter().map(|&h| idx[d.pair(h)] as u8).collect(),
                next: members.iter().map(|&h| idx[d.next(h)] as u8).collect(),
                leg: members.iter().map(|&h| d.label(h)).collect(),
            }
        })
        .collect()
}

fn concat(parts: &[Diagram]) -> Diagram {
    let mut pair = Vec::new();
    let mut next = Vec::new();
    let mut leg = Vec::new();
    for p in parts {
        let off = pair.len() as u8;
        pair.extend(p.pair.iter().map(|&x| x + off));
        next.extend(p.next.iter().map(|&x| x + off));
        leg.extend(p.leg.iter().copied());
    }
    Diagram { pair, next, leg }
}

fn leg_tag(d: &Diagram, h: usize) -> u32 {
    match d.label(h) {
        Some(l) => l.key(),
        None => TRI,
    }
}

fn relabel(d: &Diagram, order: &[usize], lab: &[usize]) -> Diagram {
    Diagram {
        pair: order.iter().map(|&h| lab[d.pair(h)] as u8).collect(),
        next: order.iter().map(|&h| lab[d.next(h)] as u8).collect(),
        leg: order.iter().map(|&h| d.label(h)).collect(),
    }
}

/// BFS labelling from `start`; returns `None` as soon as the code exceeds `best`.
fn oriented_walk(d: &Diagram, start: usize, best: Option<&[u32]>) -> Option<(Vec<u32>, Vec<usize>, Vec<usize>)> {
    let n = d.half_edges();
    let mut lab = vec![NONE; n];
    let mut order = Vec::with_capacity(n);
    let mut code = Vec::with_capacity(3 * n);
    let mut less = best.is_none();
    lab[start] = 0;
    order.push(start);
    let mut i = 0;
    while i < order.len() {
        let h = order[i];
        for x in [d.pair(h), d.next(h)] {
            if lab[x] == NONE {
                lab[x] = order.len();
                order.push(x);
            }
        }
        for e in [leg_tag(d, h), lab[d.pair(h)] as u32, lab[d.next(h)] as u32] {
            if !less {
                let b = best.unwrap()[code.len()];
                match e.cmp(&b) {
                    Ordering::Greater => return None,
                    Ordering::Less => less = true,
                    Ordering::Equal => {}
                }
            }
            code.push(e);
        }
        i += 1;
    }
    Some((code, order, lab))
}

fn starts(d: &Diagram, tag: impl Fn(usize) -> u32) -> Vec<usize> {
    let n = d.half_edges();
    let m = (0..n).map(&tag).min().unwrap_or(TRI);
    (0..n).filter(|&h| tag(h) == m).collect()
}

/// Canonical representative of the isomorphism class (cyclic orders kept).
pub fn canonicalize(d: &Diagram) -> Diagram {
    let parts = split(d);
    if parts.len() > 1 {
        let mut canon: Vec<Diagram> = parts.iter().map(canonicalize_connected).collect();
        canon.sort();
        return concat(&canon);
    }
    canonicalize_connected(d)
}

fn canonicalize_connected(d: &Diagram) -> Diagram {
    if d.half_edges() == 0 {
        return d.clone();
    }
    let mut best: Option<(Vec<u32>, Vec<usize>, Vec<usize>)> = None;
    for s in starts(d, |h| leg_tag(d, h)) {
        if let Some(r) = oriented_walk(d, s, best.as_ref().map(|b| b.0.as_slice())) {
            if best.as_ref().map_or(true, |b| r.0 < b.0) {
                best = Some(r);
            }
        }
    }
    let (_, order, lab) = best.unwrap();
    relabel(d, &order, &lab)
}

/// Result of canonicalizing modulo AS: `input = sign * rep`. If `torsion`,
/// the class satisfies `rep = -rep`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsForm {
    pub rep: Diagram,
    pub sign: i8,
    pub torsion: bool,
}

/// Tags refine "leg or trivalent" by what sits across the edge.
fn as_tag(d: &Diagram, h: usize) -> u32 {
    match d.label(h) {
        Some(l) => l.key(),
        None => match d.label(d.pair(h)) {
            Some(l) => (1 << 30) | l.key(),
            None => TRI,
        },
    }
}

#[derive(Clone)]
struct Walk {
    lab: Vec<usize>,
    order: Vec<usize>,
    code: Vec<u32>,
    i: usize,
    version: u64,
    less: bool,
}

struct AsSearch<'a> {
    d: &'a Diagram,
    tags: Vec<u32>,
    best: Option<Vec<u32>>,
    version: u64,
    best_walk: Option<Walk>,
    best_sign: i8,
    torsion: bool,
}

impl<'a> AsSearch<'a> {
    /// Label `x`; for a trivalent vertex also its siblings. Returns the
    /// alternative walk when the sibling order is a genuine tie.
    fn assign(&mut self, w: &mut Walk, x: usize) -> Option<Walk> {
        let d = self.d;
        w.lab[x] = w.order.len();
        w.order.push(x);
        if d.is_leg(x) {
            return None;
        }
        let y = d.next(x);
        let z = d.next(y);
        let (ty, tz) = (self.tags[y], self.tags[z]);
        let mut alt = None;
        let (first, second) = match ty.cmp(&tz) {
            Ordering::Less => (y, z),
            Ordering::Greater => (z, y),
            Ordering::Equal => {
                if d.is_leg(d.pair(y)) {
                    // two equal legs on one vertex: swapping them is an odd automorphism
                    self.torsion = true;
                } else {
                    let mut w2 = w.clone();
                    w2.lab[z] = w2.order.len();
                    w2.order.push(z);
                    w2.lab[y] = w2.order.len();
                    w2.order.push(y);
                    alt = Some(w2);
                }
                (y, z)
            }
        };
        w.lab[first] = w.order.len();
        w.order.push(first);
        w.lab[second] = w.order.len();
        w.order.push(second);
        alt
    }

    fn run(&mut self, mut w: Walk) {
        let d = self.d;
        loop {
            if w.i == w.order.len() {
                self.finish(w);
                return;
            }
            let h = w.order[w.i];
            let p = d.pair(h);
            if w.lab[p] == NONE {
                if let Some(alt) = self.assign(&mut w, p) {
                    self.run(alt);
                }
            }
            let lp = w.lab[p] as u32;
            if !self.emit(&mut w, self.tags[h]) || !self.emit(&mut w, lp) {
                return;
            }
            w.i += 1;
        }
    }

    fn emit(&self, w: &mut Walk, e: u32) -> bool {
        let best = match &self.best {
            None => {
                w.code.push(e);
                return true;
            }
            Some(b) => b,
        };
        if w.version != self.version {
            w.version = self.version;
            match w.code.as_slice().cmp(&best[..w.code.len()]) {
                Ordering::Greater => return false,
                Ordering::Less => w.less = true,
                Ordering::Equal => w.less = false,
            }
        }
        if !w.less {
            match e.cmp(&best[w.code.len()]) {
                Ordering::Greater => return false,
                Ordering::Less => w.less = true,
                Ordering::Equal => {}
            }
        }
        w.code.push(e);
        true
    }

    fn sign_of(&self, w: &Walk) -> i8 {
        let mut s = 1i8;
        for [a, b, c] in self.d.trivalent_vertices() {
            let (la, lb, lc) = (w.lab[a], w.lab[b], w.lab[c]);
            let inv = (la > lb) as u8 + (la > lc) as u8 + (lb > lc) as u8;
            if inv % 2 == 1 {
                s = -s;
            }
        }
        s
    }

    fn finish(&mut self, w: Walk) {
        let sign = self.sign_of(&w);
        let ord = match &self.best {
            None => Ordering::Less,
            Some(b) => w.code.cmp(b),
        };
        match ord {
            Ordering::Less => {
                self.best = Some(w.code.clone());
                self.version += 1;
                self.best_sign = sign;
                self.best_walk = Some(w);
            }
            Ordering::Equal => {
                if sign != self.best_sign {
                    self.torsion = true;
                }
            }
            Ordering::Greater => {}
        }
    }
}

fn as_connected(d: &Diagram) -> AsForm {
    if d.half_edges() == 0 {
        return AsForm { rep: d.clone(), sign: 1, torsion: false };
    }
    let tags: Vec<u32> = (0..d.half_edges()).map(|h| as_tag(d, h)).collect();
    let mut search = AsSearch { d, tags, best: None, version: 0, best_walk: None, best_sign: 1, torsion: false };
    for s in starts(d, |h| search.tags[h]) {
        let mut w = Walk {
            lab: vec![NONE; d.half_edges()],
            order: Vec::with_capacity(d.half_edges()),
            code: Vec::with_capacity(2 * d.half_edges()),
            i: 0,
            version: u64::MAX,
            less: false,
        };
        let alt = search.assign(&mut w, s);
        if let Some(a) = alt {
            search.run(a);
        }
        search.run(w);
    }
    let w = search.best_walk.take().unwrap();
    let mut rep = relabel(d, &w.order, &w.lab);
    // reference orientation: labels ascending within each block
    let mut h = 0;
    let mut seen = vec![false; rep.half_edges()];
    while h < rep.half_edges() {
        if !rep.is_leg(h) && !seen[h] {
            rep.next[h] = (h + 1) as u8;
            rep.next[h + 1] = (h + 2) as u8;
            rep.next[h + 2] = h as u8;
            seen[h] = true;
            seen[h + 1] = true;
            seen[h + 2] = true;
            h += 3;
        } else {
            h += 1;
        }
    }
    AsForm { rep, sign: search.best_sign, torsion: search.torsion }
}

/// Canonical AS class representative with the sign `d = sign * rep`.
pub fn as_canonical(d: &Diagram) -> AsForm {
    let parts = split(d);
    if parts.len() == 1 {
        return as_connected(d);
    }
    let mut forms: Vec<AsForm> = parts.iter().map(as_connected).collect();
    forms.sort_by(|a, b| a.rep.cmp(&b.rep));
    let sign = forms.iter().map(|f| f.sign).product();
    let torsion = forms.iter().any(|f| f.torsion);
    let reps: Vec<Diagram> = forms.into_iter().map(|f| f.rep).collect();
    AsForm { rep: concat(&reps), sign, torsion }
}

/// All isomorphisms `d -> e` preserving labels and cyclic orders, as
/// half-edge maps. For connected diagrams each is fixed by one image.
pub fn oriented_isomorphisms(d: &Diagram, e: &Diagram) -> Vec<Vec<usize>> {
    let n = d.half_edges();
    if n != e.half_edges() || n == 0 || !d.is_connected() {
        return Vec::new();
    }
    let s = (0..n).min_by_key(|&h| (leg_tag(d, h), h)).unwrap();
    let mut out = Vec::new();
    'outer: for t in 0..n {
        let mut map = vec![NONE; n];
        let mut inv = vec![NONE; n];
        map[s] = t;
        inv[t] = s;
        let mut queue = vec![s];
        let mut i = 0;
        while i < queue.len() {
            let h = queue[i];
            let k = map[h];
            if leg_tag(d, h) != leg_tag(e, k) {
                continue 'outer;
            }
            for (x, y) in [(d.pair(h), e.pair(k)), (d.next(h), e.next(k))] {
                if map[x] == NONE && inv[y] == NONE {
                    map[x] = y;
                    inv[y] = x;
                    queue.push(x);
                } else if map[x] != y {
                    continue 'outer;
                }
            }
            i += 1;
        }
        out.push(map);
    }
    out
}

/// Orientation-reversing automorphisms of `d`.
pub fn reversing_maps(d: &Diagram) -> Vec<Vec<usize>> {
    oriented_isomorphisms(d, &d.mirror())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn rotation_invariant() {
        let a = canonicalize(&parse("O(1+,2+,1-)").unwrap());
        let b = canonicalize(&parse("O(2+,1-,1+)").unwrap());
        assert_eq!(a, b);
        assert_eq!(canonicalize(&a), a);
    }

    #[test]
    fn mirror_distinct_oriented_same_unoriented() {
        let d = parse("T(1+,2+,3+)").unwrap();
        assert_ne!(canonicalize(&d), canonicalize(&d.mirror()));
        let (x, y) = (as_canonical(&d), as_canonical(&d.mirror()));
        assert_eq!(x.rep, y.rep);
        assert_eq!(x.sign, -y.sign);
        assert!(!x.torsion);
    }

    #[test]
    fn repeated_leg_is_torsion() {
        assert!(as_canonical(&parse("T(1+,1+,2+)").unwrap()).torsion);
        assert!(as_canonical(&parse("T(1+,2+,1+)").unwrap()).torsion);
        assert!(!as_canonical(&parse("O(1+,2+)").unwrap()).torsion);
    }

    #[test]
    fn tripod_symmetries() {
        let d = parse("T(1+,1+,1+)").unwrap();
        assert_eq!(oriented_isomorphisms(&d, &d).len(), 3);
        assert_eq!(reversing_maps(&d).len(), 3);
        assert!(reversing_maps(&parse("T(1+,2+,3+)").unwrap()).is_empty());
    }
}
