//! Uni-trivalent graphs with a rotation system, stored on half-edges.

use crate::error::{JdError, Result};
use crate::label::Label;

/// A Jacobi diagram. Every half-edge has a partner (`pair`). Half-edges at a
/// trivalent vertex form a 3-cycle under `next` (counterclockwise order);
/// a univalent vertex is a half-edge with `next(h) == h` and a label.
///
/// Equality is structural; compare canonical forms for isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    pub(crate) pair: Vec<u8>,
    pub(crate) next: Vec<u8>,
    pub(crate) leg: Vec<Option<Label>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stats {
    pub ideg: usize,
    pub betti: usize,
    pub legs: usize,
    pub connected: bool,
}

impl Diagram {
    pub fn half_edges(&self) -> usize {
        self.pair.len()
    }

    pub fn pair(&self, h: usize) -> usize {
        self.pair[h] as usize
    }

    pub fn next(&self, h: usize) -> usize {
        self.next[h] as usize
    }

    pub fn label(&self, h: usize) -> Option<Label> {
        self.leg[h]
    }

    pub fn is_leg(&self, h: usize) -> bool {
        self.leg[h].is_some()
    }

    /// Trivalent vertices as ccw triples, each starting at its smallest half-edge.
    pub fn trivalent_vertices(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for h in 0..self.half_edges() {
            if self.is_leg(h) {
                continue;
            }
            let a = self.next(h);
            let b = self.next(a);
            if h < a && h < b {
                out.push([h, a, b]);
            }
        }
        out
    }

    pub fn univalent_vertices(&self) -> Vec<(usize, Label)> {
        (0..self.half_edges())
            .filter_map(|h| self.leg[h].map(|l| (h, l)))
            .collect()
    }

    pub fn legs(&self) -> Vec<usize> {
        (0..self.half_edges()).filter(|&h| self.is_leg(h)).collect()
    }

    pub fn ideg(&self) -> usize {
        (self.half_edges() - self.num_legs()) / 3
    }

    pub fn num_legs(&self) -> usize {
        self.leg.iter().filter(|l| l.is_some()).count()
    }

    /// Vertex id of each half-edge: legs first in half-edge order, then trivalent vertices.
    pub fn vertex_ids(&self) -> Vec<usize> {
        let mut id = vec![usize::MAX; self.half_edges()];
        let mut k = 0;
        for h in 0..self.half_edges() {
            if id[h] != usize::MAX {
                continue;
            }
            let mut x = h;
            loop {
                id[x] = k;
                x = self.next(x);
                if x == h {
                    break;
                }
            }
            k += 1;
        }
        id
    }

    pub fn components(&self) -> usize {
        let id = self.vertex_ids();
        let nv = id.iter().copied().max().map(|m| m + 1).unwrap_or(0);
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        let mut comps = nv;
        for h in 0..self.half_edges() {
            let a = find(&mut parent, id[h]);
            let b = find(&mut parent, id[self.pair(h)]);
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components() <= 1
    }

    pub fn stats(&self) -> Stats {
        let edges = self.half_edges() / 2;
        let vertices = self.ideg() + self.num_legs();
        let comps = self.components();
        Stats {
            ideg: self.ideg(),
            betti: edges + comps - vertices,
            legs: self.num_legs(),
            connected: comps <= 1,
        }
    }

    pub fn betti(&self) -> usize {
        self.stats().betti
    }

    /// Edges as `(h, pair(h))` with `h < pair(h)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.half_edges())
            .filter(|&h| h < self.pair(h))
            .map(|h| (h, self.pair(h)))
            .collect()
    }

    /// True if some edge has both ends at one trivalent vertex.
    pub fn has_self_loop(&self) -> bool {
        let id = self.vertex_ids();
        (0..self.half_edges()).any(|h| !self.is_leg(h) && id[h] == id[self.pair(h)])
    }

    pub fn max_label_index(&self) -> u8 {
        self.leg.iter().flatten().map(|l| l.index).max().unwrap_or(0)
    }

    /// Reverse the cyclic order at every trivalent vertex.
    pub fn mirror(&self) -> Diagram {
        let mut next = self.next.clone();
        for h in 0..self.half_edges() {
            next[self.next(h)] = h as u8;
        }
        Diagram { pair: self.pair.clone(), next, leg: self.leg.clone() }
    }

    /// Reverse the cyclic order at the vertex containing `h`.
    pub fn flip_vertex(&self, h: usize) -> Diagram {
        let mut d = self.clone();
        if self.is_leg(h) {
            return d;
        }
        let a = self.next(h);
        let b = self.next(a);
        d.next[h] = b as u8;
        d.next[b] = a as u8;
        d.next[a] = h as u8;
        d
    }

    pub fn map_labels(&self, f: impl Fn(Label) -> Label) -> Diagram {
        Diagram {
            pair: self.pair.clone(),
            next: self.next.clone(),
            leg: self.leg.iter().map(|l| l.map(&f)).collect(),
        }
    }

    /// Mirror and bar every label.
    pub fn lifted_rev(&self) -> Diagram {
        self.mirror().map_labels(Label::bar)
    }

    /// Copy into a builder so that half-edges keep their ids.
    pub fn to_builder(&self) -> Builder {
        Builder {
            pair: self.pair.iter().map(|&p| p as usize).collect(),
            next: self.next.iter().map(|&p| p as usize).collect(),
            leg: self.leg.clone(),
            dead: vec![false; self.half_edges()],
        }
    }
}

/// Mutable construction site for diagrams. Half-edges can be deleted; ids
/// are compacted in `finish`.
#[derive(Clone, Debug, Default)]
pub struct Builder {
    pair: Vec<usize>,
    next: Vec<usize>,
    leg: Vec<Option<Label>>,
    dead: Vec<bool>,
}

const UNPAIRED: usize = usize::MAX;

impl Builder {
    pub fn new() -> Builder {
        Builder::default()
    }

    fn half(&mut self) -> usize {
        self.pair.push(UNPAIRED);
        self.next.push(self.pair.len() - 1);
        self.leg.push(None);
        self.dead.push(false);
        self.pair.len() - 1
    }

    /// New trivalent vertex; returned half-edges are in ccw order.
    pub fn vertex(&mut self) -> [usize; 3] {
        let a = self.half();
        let b = self.half();
        let c = self.half();
        self.next[a] = b;
        self.next[b] = c;
        self.next[c] = a;
        [a, b, c]
    }

    pub fn leg(&mut self, label: Label) -> usize {
        let h = self.half();
        self.leg[h] = Some(label);
        h
    }

    pub fn join(&mut self, a: usize, b: usize) {
        self.pair[a] = b;
        self.pair[b] = a;
    }

    pub fn pair(&self, h: usize) -> usize {
        self.pair[h]
    }

    pub fn next(&self, h: usize) -> usize {
        self.next[h]
    }

    pub fn label(&self, h: usize) -> Option<Label> {
        self.leg[h]
    }

    pub fn set_label(&mut self, h: usize, l: Label) {
        self.leg[h] = Some(l);
    }

    /// Set the ccw order of an existing vertex.
    pub fn set_order(&mut self, [a, b, c]: [usize; 3]) {
        self.next[a] = b;
        self.next[b] = c;
        self.next[c] = a;
    }

    /// Mark a half-edge (and nothing else) as deleted.
    pub fn kill(&mut self, h: usize) {
        self.dead[h] = true;
    }

    pub fn finish(self) -> Result<Diagram> {
        let n = self.pair.len();
        let mut new_id = vec![UNPAIRED; n];
        let mut k = 0;
        for h in 0..n {
            if !self.dead[h] {
                new_id[h] = k;
                k += 1;
            }
        }
        if k > u8::MAX as usize {
            return Err(JdError::Domain(format!("{k} half-edges exceed the supported size")));
        }
        let mut pair = Vec::with_capacity(k);
        let mut next = Vec::with_capacity(k);
        let mut leg = Vec::with_capacity(k);
        for h in 0..n {
            if self.dead[h] {
                continue;
            }
            let p = self.pair[h];
            if p == UNPAIRED || self.dead[p] || self.pair[p] != h || p == h {
                return Err(JdError::Unpaired(h.to_string()));
            }
            let nx = self.next[h];
            if self.dead[nx] {
                return Err(JdError::Domain(format!("vertex of half-edge {h} lost a half-edge")));
            }
            if self.leg[h].is_some() != (nx == h) {
                return Err(JdError::Domain(format!("half-edge {h} is neither leg nor trivalent")));
            }
            pair.push(new_id[p] as u8);
            next.push(new_id[nx] as u8);
            leg.push(self.leg[h]);
        }
        let d = Diagram { pair, next, leg };
        for h in 0..k {
            if !d.is_leg(h) && d.next(d.next(d.next(h))) != h {
                return Err(JdError::Domain("non-trivalent internal vertex".into()));
            }
        }
        Ok(d)
    }
}
