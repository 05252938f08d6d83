//! Exhaustive generation of connected diagrams by inserting legs into edges.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::canon::{as_canonical, canonicalize};
use crate::diagram::{Builder, Diagram};
use crate::dsl::{circle, tree};
use crate::error::{JdError, Result};
use crate::label::Label;

pub const DEFAULT_MAX_DEGREE: usize = 8;
pub const HARD_MAX_DEGREE: usize = 10;

/// Degree cap: `JD_MAX_DEGREE` if set (never above the hard cap), else the default.
pub fn max_degree() -> usize {
    std::env::var("JD_MAX_DEGREE")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .map(|n| n.min(HARD_MAX_DEGREE))
        .unwrap_or(DEFAULT_MAX_DEGREE)
}

pub fn check_cap(n: usize) -> Result<()> {
    let cap = max_degree();
    if n > cap {
        Err(JdError::Cap { n, cap })
    } else {
        Ok(())
    }
}

/// Number of legs of a connected diagram of degree `n` and Betti number `l`.
pub fn leg_count(n: usize, l: usize) -> Option<usize> {
    (n + 2).checked_sub(2 * l)
}

/// An AS class: the representative from `as_canonical` and whether it is 2-torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsClass {
    pub rep: Diagram,
    pub torsion: bool,
}

type Cache = Mutex<HashMap<(usize, usize, u8), Arc<Vec<AsClass>>>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All connected diagrams of degree `n`, Betti `l`, genus `g`, up to isomorphism
/// and AS. Sorted by representative.
pub fn as_classes(n: usize, l: usize, g: u8) -> Result<Arc<Vec<AsClass>>> {
    check_cap(n)?;
    if g == 0 {
        return Err(JdError::Domain("genus must be at least 1".into()));
    }
    Ok(grow(n, l, g))
}

fn grow(n: usize, l: usize, g: u8) -> Arc<Vec<AsClass>> {
    if let Some(v) = cache().lock().unwrap().get(&(n, l, g)) {
        return v.clone();
    }
    let labels = Label::all(g);
    let mut found: BTreeMap<Diagram, bool> = BTreeMap::new();
    let mut push = |d: &Diagram| {
        let f = as_canonical(d);
        found.entry(f.rep).or_insert(f.torsion);
    };
    match leg_count(n, l) {
        None => {}
        Some(_) if n == 0 => {
            if l == 0 {
                for (i, &a) in labels.iter().enumerate() {
                    for &b in &labels[i..] {
                        push(&tree(&[a, b]));
                    }
                }
            }
        }
        Some(_) if n == 1 && l == 1 => {
            for &a in &labels {
                push(&circle(&[a]));
            }
        }
        Some(0) => {
            for p in grow(n, l - 1, 1).iter() {
                let legs = p.rep.legs();
                let (h1, h2) = (legs[0], legs[1]);
                let (q1, q2) = (p.rep.pair(h1), p.rep.pair(h2));
                if q1 == h2 {
                    continue;
                }
                let mut bd = p.rep.to_builder();
                bd.kill(h1);
                bd.kill(h2);
                bd.join(q1, q2);
                push(&bd.finish().expect("joined diagram is well formed"));
            }
        }
        Some(_) => {
            if n >= 1 {
                for p in grow(n - 1, l, g).iter() {
                    for (h, q) in p.rep.edges() {
                        for &a in &labels {
                            push(&insert_leg(&p.rep, h, q, a));
                        }
                    }
                }
            }
        }
    }
    let out: Arc<Vec<AsClass>> = Arc::new(found.into_iter().map(|(rep, torsion)| AsClass { rep, torsion }).collect());
    cache().lock().unwrap().insert((n, l, g), out.clone());
    out
}

/// Subdivide edge `{h, q}` with a new trivalent vertex carrying a leg `a`.
pub fn insert_leg(d: &Diagram, h: usize, q: usize, a: Label) -> Diagram {
    let mut bd: Builder = d.to_builder();
    let [x, y, z] = bd.vertex();
    let t = bd.leg(a);
    bd.join(x, h);
    bd.join(y, q);
    bd.join(z, t);
    bd.finish().expect("subdivision is well formed")
}

/// Every connected diagram of degree `n`, Betti `l`, genus `g`, one per
/// isomorphism class (cyclic orders kept). Sorted, canonical.
pub fn enumerate_diagrams(n: usize, l: usize, g: u8) -> Result<Vec<Diagram>> {
    let classes = as_classes(n, l, g)?;
    let mut out = BTreeSet::new();
    for c in classes.iter() {
        let verts = c.rep.trivalent_vertices();
        for mask in 0u32..(1 << verts.len()) {
            let mut d = c.rep.clone();
            for (i, v) in verts.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    d = d.flip_vertex(v[0]);
                }
            }
            out.insert(canonicalize(&d));
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_diagrams(1, 0, 1).unwrap().len(), 4);
        assert_eq!(enumerate_diagrams(1, 1, 1).unwrap().len(), 2);
        assert_eq!(as_classes(1, 0, 1).unwrap().len(), 4);
        assert_eq!(as_classes(0, 0, 1).unwrap().len(), 3);
    }

    #[test]
    fn euler_count() {
        for (n, l) in [(2, 0), (2, 1), (3, 1), (4, 2), (4, 3)] {
            for c in as_classes(n, l, 1).unwrap().iter() {
                let s = c.rep.stats();
                assert_eq!((s.ideg, s.betti, s.connected), (n, l, true));
                assert_eq!(s.legs + 2 * l, n + 2);
            }
        }
    }
}
