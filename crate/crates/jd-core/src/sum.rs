use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::canon::{as_canonical, canonicalize};
use crate::diagram::Diagram;

/// Formal ℤ-combination of diagrams, keyed by canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagramSum {
    terms: BTreeMap<Diagram, i64>,
}

impl DiagramSum {
    pub fn new() -> DiagramSum {
        DiagramSum::default()
    }

    pub fn single(d: &Diagram) -> DiagramSum {
        let mut s = DiagramSum::new();
        s.add_term(d, 1);
        s
    }

    pub fn add_term(&mut self, d: &Diagram, c: i64) {
        if c == 0 {
            return;
        }
        self.add_canonical(canonicalize(d), c);
    }

    pub(crate) fn add_canonical(&mut self, d: Diagram, c: i64) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(d) {
            Entry::Vacant(v) => {
                if c != 0 {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add_sum(&mut self, other: &DiagramSum, c: i64) {
        for (d, v) in &other.terms {
            self.add_canonical(d.clone(), v * c);
        }
    }

    pub fn scale(&self, c: i64) -> DiagramSum {
        let mut s = DiagramSum::new();
        s.add_sum(self, c);
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, i64)> {
        self.terms.iter().map(|(d, c)| (d, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &Diagram) -> i64 {
        self.terms.get(&canonicalize(d)).copied().unwrap_or(0)
    }

    /// Odd-coefficient terms with coefficient 1.
    pub fn mod2(&self) -> DiagramSum {
        let mut s = DiagramSum::new();
        for (d, c) in &self.terms {
            if c.rem_euclid(2) == 1 {
                s.add_canonical(d.clone(), 1);
            }
        }
        s
    }

    /// Linear extension of `f`.
    pub fn map(&self, f: impl Fn(&Diagram) -> DiagramSum) -> DiagramSum {
        let mut s = DiagramSum::new();
        for (d, c) in &self.terms {
            s.add_sum(&f(d), *c);
        }
        s
    }

    /// Rewrite every term as its AS representative. Classes with
    /// `rep = -rep` keep their coefficient mod 2.
    pub fn as_normal(&self) -> DiagramSum {
        let mut acc: BTreeMap<Diagram, (i64, bool)> = BTreeMap::new();
        for (d, c) in &self.terms {
            let f = as_canonical(d);
            let e = acc.entry(canonicalize(&f.rep)).or_insert((0, f.torsion));
            e.0 += f.sign as i64 * c;
        }
        let mut s = DiagramSum::new();
        for (d, (c, torsion)) in acc {
            s.add_canonical(d, if torsion { c.rem_euclid(2) } else { c });
        }
        s
    }

    pub fn filter(&self, keep: impl Fn(&Diagram) -> bool) -> DiagramSum {
        DiagramSum { terms: self.terms.iter().filter(|(d, _)| keep(d)).map(|(d, c)| (d.clone(), *c)).collect() }
    }
}

impl From<&Diagram> for DiagramSum {
    fn from(d: &Diagram) -> DiagramSum {
        DiagramSum::single(d)
    }
}

impl Add for &DiagramSum {
    type Output = DiagramSum;
    fn add(self, o: &DiagramSum) -> DiagramSum {
        let mut s = self.clone();
        s.add_sum(o, 1);
        s
    }
}

impl Sub for &DiagramSum {
    type Output = DiagramSum;
    fn sub(self, o: &DiagramSum) -> DiagramSum {
        let mut s = self.clone();
        s.add_sum(o, -1);
        s
    }
}

impl Neg for &DiagramSum {
    type Output = DiagramSum;
    fn neg(self) -> DiagramSum {
        self.scale(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn cancellation() {
        let a = parse("O(1+,2+)").unwrap();
        let b = parse("O(2+,1+)").unwrap();
        let mut s = DiagramSum::single(&a);
        s.add_term(&b, -1);
        assert!(s.is_empty());
        s.add_term(&a, 3);
        assert_eq!(s.mod2().coeff(&a), 1);
    }
}
