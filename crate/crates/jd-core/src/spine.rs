//! Two-cores of diagrams and their decomposition into paths between branch vertices.

use serde::Serialize;

use crate::diagram::Diagram;
use crate::error::{domain, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpineType {
    Theta,
    Eyeglass,
}

/// Core vertex on a path: entered through `inn`, left through `out`, with
/// the off-core half-edge `off`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathVertex {
    pub inn: usize,
    pub out: usize,
    pub off: usize,
}

/// A path in the core between branch vertices. `start` sits at the first
/// branch vertex, `end` at the last one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorePath {
    pub start: usize,
    pub end: usize,
    pub inner: Vec<PathVertex>,
}

/// Per-half-edge membership in the 2-core: the half-edge and its partner
/// both sit at trivalent vertices that survive iterated removal of leaves.
pub fn core_half_edges(d: &Diagram) -> Vec<bool> {
    let n = d.half_edges();
    let ids = d.vertex_ids();
    let nv = ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut alive = vec![true; nv];
    let mut deg = vec![0usize; nv];
    for h in 0..n {
        deg[ids[h]] += 1;
    }
    let mut stack: Vec<usize> = (0..nv).filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for h in 0..n {
            if ids[h] == v {
                let w = ids[d.pair(h)];
                if alive[w] {
                    deg[w] -= 1;
                    if deg[w] <= 1 {
                        stack.push(w);
                    }
                }
            }
        }
    }
    (0..n).map(|h| alive[ids[h]] && alive[ids[d.pair(h)]]).collect()
}

/// Core vertices of degree three, each given by one of its half-edges.
struct Core {
    core: Vec<bool>,
    branch: Vec<usize>,
}

impl Core {
    fn new(d: &Diagram) -> Core {
        let core = core_half_edges(d);
        let branch = d
            .trivalent_vertices()
            .into_iter()
            .filter(|v| v.iter().all(|&h| core[h]))
            .map(|v| v[0])
            .collect();
        Core { core, branch }
    }

    fn is_branch(&self, d: &Diagram, h: usize) -> bool {
        self.branch.iter().any(|&b| b == h || d.next(b) == h || d.next(d.next(b)) == h)
    }

    /// Follow the core from the branch half-edge `h` to the next branch vertex.
    fn walk(&self, d: &Diagram, h: usize) -> CorePath {
        let mut inner = Vec::new();
        let mut k = d.pair(h);
        while !self.is_branch(d, k) {
            let (a, b) = (d.next(k), d.next(d.next(k)));
            let (out, off) = if self.core[a] { (a, b) } else { (b, a) };
            inner.push(PathVertex { inn: k, out, off });
            k = d.pair(out);
        }
        CorePath { start: h, end: k, inner }
    }
}

fn two_loop(d: &Diagram) -> Result<Core> {
    let s = d.stats();
    if !s.connected || s.betti != 2 {
        return domain(format!("expected a connected 2-loop diagram, got Betti number {}", s.betti));
    }
    Ok(Core::new(d))
}

pub fn spine_type(d: &Diagram) -> Result<SpineType> {
    let c = two_loop(d)?;
    let b = c.branch[0];
    let same = |x: usize, y: usize| x == y || d.next(x) == y || d.next(d.next(x)) == y;
    let loops = [b, d.next(b), d.next(d.next(b))]
        .iter()
        .any(|&h| same(b, c.walk(d, h).end));
    Ok(if loops { SpineType::Eyeglass } else { SpineType::Theta })
}

/// The three paths of a theta spine, all leaving the same branch vertex,
/// in the ccw order there.
pub fn theta_paths(d: &Diagram) -> Result<[CorePath; 3]> {
    if spine_type(d)? != SpineType::Theta {
        return domain("spine is not a theta graph");
    }
    let c = Core::new(d);
    let b = c.branch[0];
    Ok([c.walk(d, b), c.walk(d, d.next(b)), c.walk(d, d.next(d.next(b)))])
}

/// Eyeglass decomposition: the bridge from one branch vertex to the other,
/// plus both loop paths (each starts and ends at the same branch vertex).
pub struct Eyeglass {
    pub bridge: CorePath,
    pub left_loop: CorePath,
    pub right_loop: CorePath,
}

pub fn eyeglass(d: &Diagram) -> Result<Eyeglass> {
    if spine_type(d)? != SpineType::Eyeglass {
        return domain("spine is not an eyeglass graph");
    }
    let c = Core::new(d);
    let b = c.branch[0];
    let hs = [b, d.next(b), d.next(d.next(b))];
    let same = |x: usize, y: usize| x == y || d.next(x) == y || d.next(d.next(x)) == y;
    let bridge_start = *hs.iter().find(|&&h| !same(b, c.walk(d, h).end)).unwrap();
    let bridge = c.walk(d, bridge_start);
    let left_loop = c.walk(d, d.next(bridge_start));
    let right_loop = c.walk(d, d.next(bridge.end));
    Ok(Eyeglass { bridge, left_loop, right_loop })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn classify() {
        assert_eq!(spine_type(&parse("theta(1+;;2+)").unwrap()).unwrap(), SpineType::Theta);
        let eg = parse("G[t1=(1,2,3),t2=(3,4,5),t3=(2,1,6),t4=(5,4,7);u(1+)=6,u(2+)=7]").unwrap();
        assert_eq!(spine_type(&eg).unwrap(), SpineType::Eyeglass);
        assert!(spine_type(&parse("O(1+,2+)").unwrap()).is_err());
    }

    #[test]
    fn theta_paths_cover_legs() {
        let d = parse("theta(1+,2+;1-;2-,1+,1+)").unwrap();
        let ps = theta_paths(&d).unwrap();
        let mut lens: Vec<usize> = ps.iter().map(|p| p.inner.len()).collect();
        lens.sort();
        assert_eq!(lens, vec![1, 2, 3]);
        for p in &ps {
            for v in &p.inner {
                assert!(d.is_leg(d.pair(v.off)));
            }
        }
    }
}
