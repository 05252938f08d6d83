//! AS, IHX and self-loop relators and integer presentations of the strata.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde::Serialize;

use crate::canon::{as_canonical, canonicalize};
use crate::diagram::Diagram;
use crate::dsl::{theta, to_generic};
use crate::enumerate::{as_classes, enumerate_diagrams, leg_count, AsClass};
use crate::error::{JdError, Result};
use crate::label::Label;
use crate::snf::{Coords, Smith, SparseRow};
use crate::sum::DiagramSum;

/// The three diagrams `(I, H, X)` of the IHX relation `I - H - X = 0` at the
/// edge `{h, pair(h)}`, which must join two distinct trivalent vertices.
pub fn ihx(d: &Diagram, h: usize) -> Option<[Diagram; 3]> {
    let e = d.pair(h);
    if d.is_leg(h) || d.is_leg(e) {
        return None;
    }
    let (h1, h2) = (d.next(h), d.next(d.next(h)));
    let (h3, h4) = (d.next(e), d.next(d.next(e)));
    if [h1, h2].contains(&e) {
        return None;
    }
    let build = |u: [usize; 3], w: [usize; 3]| {
        let mut b = d.to_builder();
        b.set_order(u);
        b.set_order(w);
        b.finish().expect("IHX move keeps the diagram well formed")
    };
    Some([d.clone(), build([h, h4, h1], [e, h2, h3]), build([h, h1, h3], [e, h2, h4])])
}

/// Internal edges between distinct vertices, one half-edge each.
pub fn internal_edges(d: &Diagram) -> Vec<usize> {
    let ids = d.vertex_ids();
    d.edges()
        .into_iter()
        .filter(|&(a, b)| !d.is_leg(a) && !d.is_leg(b) && ids[a] != ids[b])
        .map(|(a, _)| a)
        .collect()
}

/// Every AS, IHX and self-loop relator on the oriented diagrams of a stratum.
pub fn relators(n: usize, l: usize, g: u8) -> Result<Vec<DiagramSum>> {
    let mut out = Vec::new();
    for d in enumerate_diagrams(n, l, g)? {
        for [v, _, _] in d.trivalent_vertices() {
            let mut s = DiagramSum::single(&d);
            s.add_term(&d.flip_vertex(v), 1);
            out.push(s);
        }
        for h in internal_edges(&d) {
            let [i, hh, x] = ihx(&d, h).unwrap();
            let mut s = DiagramSum::single(&i);
            s.add_term(&hh, -1);
            s.add_term(&x, -1);
            out.push(s);
        }
        if d.has_self_loop() {
            out.push(DiagramSum::single(&d));
        }
    }
    Ok(out)
}

/// `θ(a1..ap; b1..bq; c1..cr)` with `p, q, r ≥ 1` and `p+q+r+2 = n`.
pub fn theta_submodule_generators(n: usize, g: u8, symmetric_only: bool) -> Vec<DiagramSum> {
    let labels = Label::all(g);
    let mut out = Vec::new();
    if n < 5 {
        return out;
    }
    let total = n - 2;
    for p in 1..total {
        for q in 1..total - p {
            for word in words(&labels, total) {
                let (a, rest) = word.split_at(p);
                let (b, c) = rest.split_at(q);
                if symmetric_only && !(is_palindrome(a) && is_palindrome(b) && is_palindrome(c)) {
                    continue;
                }
                out.push(DiagramSum::single(&theta(a, b, c)));
            }
        }
    }
    out
}

fn is_palindrome(w: &[Label]) -> bool {
    w.iter().eq(w.iter().rev())
}

/// All words of length `len` over `alphabet`, lexicographic.
pub fn words(alphabet: &[Label], len: usize) -> Vec<Vec<Label>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * alphabet.len());
        for w in &out {
            for &a in alphabet {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Integer presentation of the stratum `A_{n,l}` (genus `g`) modulo extra relators.
pub struct Presentation {
    pub n: usize,
    pub l: usize,
    pub g: u8,
    classes: Arc<Vec<AsClass>>,
    index: HashMap<Diagram, usize>,
    rows: Vec<SparseRow>,
    n_extras: usize,
    smith: Smith,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationJson {
    pub n: usize,
    pub loops: usize,
    pub genus: u8,
    pub generators: Vec<String>,
    pub triplets: Vec<(usize, usize, i64)>,
    pub extras: usize,
    pub rank: usize,
    pub torsion: Vec<String>,
}

impl Presentation {
    pub fn build(n: usize, l: usize, g: u8, extras: &[DiagramSum]) -> Result<Presentation> {
        if leg_count(n, l).is_none() {
            return Err(JdError::Domain(format!("no connected diagrams with degree {n} and {l} loops")));
        }
        let classes = as_classes(n, l, g)?;
        let index: HashMap<Diagram, usize> = classes.iter().enumerate().map(|(i, c)| (c.rep.clone(), i)).collect();
        let mut pres = Presentation { n, l, g, classes, index, rows: Vec::new(), n_extras: extras.len(), smith: Smith::new(0, vec![]) };
        let mut rows = Vec::new();
        for (i, c) in pres.classes.iter().enumerate() {
            if c.torsion {
                rows.push(vec![(i, 2)]);
            }
            if c.rep.has_self_loop() {
                rows.push(vec![(i, 1)]);
                continue;
            }
            for h in internal_edges(&c.rep) {
                let [a, b, x] = ihx(&c.rep, h).unwrap();
                let mut row = Vec::with_capacity(3);
                for (d, k) in [(a, 1), (b, -1), (x, -1)] {
                    let f = as_canonical(&d);
                    row.push((pres.index[&f.rep], k * f.sign as i64));
                }
                rows.push(row);
            }
        }
        for x in extras {
            rows.push(pres.coords(x)?);
        }
        pres.smith = Smith::new(pres.classes.len(), rows.clone());
        pres.rows = rows;
        Ok(pres)
    }

    /// Stratum presentation without extras, memoized.
    pub fn cached(n: usize, l: usize, g: u8) -> Result<Arc<Presentation>> {
        type C = Mutex<HashMap<(usize, usize, u8, bool), Arc<Presentation>>>;
        static CACHE: OnceLock<C> = OnceLock::new();
        Self::memo(CACHE.get_or_init(Default::default), (n, l, g, false), || Presentation::build(n, l, g, &[]))
    }

    /// `A_{n,2} / <Θ_n^{≥1}>`, memoized.
    pub fn theta_quotient(n: usize, g: u8) -> Result<Arc<Presentation>> {
        type C = Mutex<HashMap<(usize, usize, u8, bool), Arc<Presentation>>>;
        static CACHE: OnceLock<C> = OnceLock::new();
        Self::memo(CACHE.get_or_init(Default::default), (n, 2, g, true), || {
            Presentation::build(n, 2, g, &theta_submodule_generators(n, g, false))
        })
    }

    fn memo(
        cache: &Mutex<HashMap<(usize, usize, u8, bool), Arc<Presentation>>>,
        key: (usize, usize, u8, bool),
        make: impl FnOnce() -> Result<Presentation>,
    ) -> Result<Arc<Presentation>> {
        if let Some(p) = cache.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let p = Arc::new(make()?);
        cache.lock().unwrap().insert(key, p.clone());
        Ok(p)
    }

    pub fn generators(&self) -> &[AsClass] {
        &self.classes
    }

    pub fn relator_rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn smith(&self) -> &Smith {
        &self.smith
    }

    pub fn rank(&self) -> usize {
        self.smith.rank()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.smith.torsion()
    }

    /// Coordinates of an oriented diagram in the generator basis.
    pub fn diagram_coords(&self, d: &Diagram) -> Result<(usize, i64)> {
        let f = as_canonical(d);
        match self.index.get(&f.rep) {
            Some(&i) => Ok((i, f.sign as i64)),
            None => Err(JdError::Stratum(to_generic(&canonicalize(d)))),
        }
    }

    pub fn coords(&self, x: &DiagramSum) -> Result<SparseRow> {
        let mut row = Vec::with_capacity(x.len());
        for (d, c) in x.terms() {
            let (i, s) = self.diagram_coords(d)?;
            row.push((i, s * c));
        }
        Ok(row)
    }

    pub fn reduce(&self, x: &DiagramSum) -> Result<Coords> {
        Ok(self.smith.reduce(&self.coords(x)?))
    }

    pub fn is_zero(&self, x: &DiagramSum) -> Result<bool> {
        Ok(self.reduce(x)?.is_zero())
    }

    pub fn reduce_mod2(&self, x: &DiagramSum) -> Result<Vec<u8>> {
        Ok(self.smith.reduce_mod2(&self.coords(x)?))
    }

    pub fn to_json(&self) -> PresentationJson {
        let mut triplets = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                triplets.push((r, c, v));
            }
        }
        PresentationJson {
            n: self.n,
            loops: self.l,
            genus: self.g,
            generators: self.classes.iter().map(|c| to_generic(&c.rep)).collect(),
            triplets,
            extras: self.n_extras,
            rank: self.rank(),
            torsion: self.torsion().iter().map(|t| t.to_string()).collect(),
        }
    }
}

/// `(rank, nontrivial invariant factors)`.
pub fn rank_and_torsion(p: &Presentation) -> (usize, Vec<BigInt>) {
    (p.rank(), p.torsion())
}
