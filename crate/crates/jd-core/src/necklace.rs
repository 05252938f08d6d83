//! Symmetric necklaces with an arrow along a symmetry axis.
//!
//! Beads are stored reading counterclockwise from the tail of the arrow.
//! A double-prime necklace `a1..am ^ am..a1` has both ends of the arrow at
//! midpoints between beads; a prime necklace `a1 a2..am |b| am..a2` has the
//! tail at bead `a1` and the head at bead `b`.

use std::fmt;

use serde::Serialize;

use crate::diagram::Diagram;
use crate::dsl::circle;
use crate::error::{domain, JdError, Result};
use crate::label::Label;
use crate::gf2;
use crate::maps::{delta_prime_mod2, fold_map};
use crate::relations::{words, Presentation};
use crate::sum::DiagramSum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ArrowKind {
    Prime,
    DoublePrime,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Necklace {
    pub kind: ArrowKind,
    pub beads: Vec<Label>,
}

impl Necklace {
    /// `a1..am ^ am..a1`.
    pub fn double_prime(a: &[Label]) -> Necklace {
        let beads = a.iter().chain(a.iter().rev()).copied().collect();
        Necklace { kind: ArrowKind::DoublePrime, beads }
    }

    /// `a1, a2..am, a(m+1), am..a2`.
    pub fn prime(a: &[Label]) -> Necklace {
        let m = a.len() - 1;
        let mut beads = a.to_vec();
        beads.extend(a[1..m].iter().rev());
        Necklace { kind: ArrowKind::Prime, beads }
    }

    /// Half the bead count.
    pub fn half_len(&self) -> usize {
        self.beads.len() / 2
    }

    fn is_symmetric(&self) -> bool {
        let n = self.beads.len();
        let b = &self.beads;
        match self.kind {
            ArrowKind::DoublePrime => (0..n).all(|i| b[i] == b[n - 1 - i]),
            ArrowKind::Prime => (0..n).all(|i| b[i] == b[(n - i) % n]),
        }
    }

    /// Rotate the arrow counterclockwise by `s` half-bead steps
    /// (a full turn is `2 * beads.len()`).
    pub fn rotate_arrow(&self, s: usize) -> Necklace {
        let n = self.beads.len();
        let tail = match self.kind {
            ArrowKind::Prime => 0,
            ArrowKind::DoublePrime => 2 * n - 1,
        };
        let t = (tail + s) % (2 * n);
        let (kind, first) = if t % 2 == 0 {
            (ArrowKind::Prime, t / 2)
        } else {
            (ArrowKind::DoublePrime, (t + 1) / 2 % n)
        };
        let beads = (0..n).map(|i| self.beads[(first + i) % n]).collect();
        Necklace { kind, beads }
    }

    /// Rotation by `π / 2^k`.
    pub fn rotate_pi_over(&self, k: u32) -> Option<Necklace> {
        let half = self.beads.len();
        if half % (1 << k) != 0 {
            return None;
        }
        Some(self.rotate_arrow(half >> k))
    }

    /// Least `e` with `x^{π/2^e} ≠ x`.
    pub fn period_exponent(&self) -> u32 {
        let mut e = 0;
        loop {
            match self.rotate_pi_over(e) {
                Some(y) if y == *self => e += 1,
                _ => return e,
            }
        }
    }

    pub fn iota(&self) -> Necklace {
        let e = self.period_exponent();
        self.rotate_pi_over(e).expect("e(x) keeps the rotation on the bead grid")
    }

    /// Merge the two beads at the head: `O(a1..am..a1)`.
    pub fn mh(&self) -> Result<Diagram> {
        let m = self.double_prime_half()?;
        Ok(circle(&[&self.beads[..m], &self.beads[m + 1..]].concat()))
    }

    /// Merge the beads at the head and at the tail: `O(a1..am..a2)`.
    pub fn mht(&self) -> Result<Diagram> {
        let m = self.double_prime_half()?;
        if m < 2 {
            return domain("merging at both ends needs at least four beads");
        }
        Ok(circle(&[&self.beads[..m], &self.beads[m + 1..2 * m - 1]].concat()))
    }

    fn double_prime_half(&self) -> Result<usize> {
        if self.kind != ArrowKind::DoublePrime {
            return domain("merging needs an arrow between beads");
        }
        Ok(self.half_len())
    }

    pub fn parse(text: &str) -> Result<Necklace> {
        let err = |msg: &str| JdError::Parse { pos: 0, msg: msg.to_string() };
        let body = text
            .trim()
            .strip_prefix("O(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| err("expected O(...)"))?;
        let (kind, head, beads) = if let Some((l, r)) = body.split_once('^') {
            let left = labels(l)?;
            let right = labels(r)?;
            let head = 2 * left.len() as isize - 1;
            (ArrowKind::DoublePrime, head, [left, right].concat())
        } else {
            let parts: Vec<&str> = body.split('|').collect();
            if parts.len() != 3 {
                return Err(err("expected '^' or '|b|' marking the arrow"));
            }
            let left = labels(parts[0])?;
            let mid = labels(parts[1])?;
            if mid.len() != 1 {
                return Err(err("the arrow must point at one bead"));
            }
            let head = 2 * left.len() as isize;
            (ArrowKind::Prime, head, [left, mid, labels(parts[2])?].concat())
        };
        let n = beads.len() as isize;
        if n == 0 || n % 2 == 1 {
            return Err(err("necklace needs an even number of beads"));
        }
        let tail = (head + n).rem_euclid(2 * n) as usize;
        let x = Necklace { kind: ArrowKind::Prime, beads }.rotate_arrow(tail);
        debug_assert_eq!(x.kind, kind);
        if !x.is_symmetric() {
            return Err(err("the arrow is not a symmetry axis"));
        }
        Ok(x)
    }
}

fn labels(s: &str) -> Result<Vec<Label>> {
    let s = s.trim().trim_matches(',');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| crate::dsl::parse_label(t.trim())).collect()
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.half_len();
        let join = |ls: &[Label]| ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",");
        match self.kind {
            ArrowKind::DoublePrime => write!(f, "O({}^{})", join(&self.beads[..m]), join(&self.beads[m..])),
            ArrowKind::Prime => write!(
                f,
                "O({},|{}|,{})",
                join(&self.beads[..m]),
                self.beads[m],
                join(&self.beads[m + 1..])
            ),
        }
    }
}

/// `(N′_{2m}, N″_{2m})` at genus `g`, sorted.
pub fn enumerate(m: usize, g: u8) -> Result<(Vec<Necklace>, Vec<Necklace>)> {
    if m == 0 {
        return domain("necklaces need at least two beads");
    }
    if m > 8 {
        return Err(JdError::Cap { n: 2 * m, cap: 16 });
    }
    let labels = Label::all(g);
    let mut prime: Vec<Necklace> = words(&labels, m + 1).iter().map(|w| Necklace::prime(w)).collect();
    let mut dprime: Vec<Necklace> = words(&labels, m).iter().map(|w| Necklace::double_prime(w)).collect();
    prime.sort();
    dprime.sort();
    Ok((prime, dprime))
}

/// One representative (the smaller one) per ι-orbit.
pub fn orbit_representatives(xs: &[Necklace]) -> Vec<(Necklace, Necklace)> {
    xs.iter().filter_map(|x| {
        let y = x.iota();
        (*x < y).then(|| (x.clone(), y))
    }).collect()
}

/// `𝔪𝔥(x) + 𝔪𝔥(ιx)` for the ι-orbits of double-prime necklaces with `e = 0`.
pub fn kernel_generators(m: usize, g: u8) -> Result<Vec<(Necklace, Necklace)>> {
    let (_, dp) = enumerate(m, g)?;
    let e0: Vec<Necklace> = dp.into_iter().filter(|x| x.period_exponent() == 0).collect();
    Ok(orbit_representatives(&e0))
}

/// Kernel of `δ′ mod 2` (joined with the fold map when `m` is even) on
/// `tor A_{2m−1,1}`, which the 𝔪𝔥 images of double-prime necklaces span.
#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub m: usize,
    pub g: u8,
    pub torsion_rank: usize,
    pub mh_rank: usize,
    pub kernel_rank: usize,
    pub span_rank: usize,
    /// Rank of kernel and span together; equal to both when they coincide.
    pub joint_rank: usize,
    pub expected: u64,
    /// Kernel vectors over the double-prime necklaces, as sums of 𝔪𝔥 images.
    #[serde(skip)]
    pub basis: Vec<DiagramSum>,
}

impl KernelReport {
    pub fn holds(&self) -> bool {
        let e = self.expected as usize;
        self.mh_rank == self.torsion_rank && self.kernel_rank == e && self.span_rank == e && self.joint_rank == e
    }
}

pub fn kernel_report(m: usize, g: u8) -> Result<KernelReport> {
    if m < 2 {
        return domain("kernel computation needs m ≥ 2");
    }
    let src = Presentation::cached(2 * m - 1, 1, g)?;
    let tgt = Presentation::cached(2 * m, 1, g)?;
    let fold = if m % 2 == 0 { Some(Presentation::cached(2 * m - 2, 1, g)?) } else { None };
    let (_, dp) = enumerate(m, g)?;
    let mhs: Vec<DiagramSum> = dp.iter().map(|x| x.mh().map(|d| DiagramSum::single(&d))).collect::<Result<_>>()?;
    let mut bits = Vec::with_capacity(mhs.len());
    let mut images = Vec::with_capacity(mhs.len());
    for s in &mhs {
        bits.push(src.smith().torsion_bits(&src.coords(s)?));
        let mut v = delta_prime_mod2(s, &tgt)?;
        if let Some(f) = &fold {
            v.extend(fold_map(s, f)?);
        }
        images.push(v);
    }
    let ker = gf2::kernel(&images);
    let pos = |y: &Necklace| dp.iter().position(|z| z == y).unwrap();
    let span: Vec<Vec<u8>> = kernel_generators(m, g)?
        .iter()
        .map(|(x, y)| {
            let mut v = vec![0u8; dp.len()];
            v[pos(x)] ^= 1;
            v[pos(y)] ^= 1;
            v
        })
        .collect();
    let joint: Vec<Vec<u8>> = ker.iter().chain(&span).cloned().collect();
    let basis = ker
        .iter()
        .map(|v| {
            let mut s = DiagramSum::new();
            for (i, _) in v.iter().enumerate().filter(|(_, &b)| b == 1) {
                s.add_sum(&mhs[i], 1);
            }
            s
        })
        .collect();
    Ok(KernelReport {
        m,
        g,
        torsion_rank: src.torsion().len(),
        mh_rank: gf2::rank(&bits),
        kernel_rank: ker.len(),
        span_rank: gf2::rank(&span),
        joint_rank: gf2::rank(&joint),
        expected: expected_kernel_rank(m as u32, g as u64),
        basis,
    })
}

/// `½((2g)^m − (2g)^{⌈m/2⌉})`.
pub fn expected_kernel_rank(m: u32, g: u64) -> u64 {
    let d = 2 * g;
    (d.pow(m) - d.pow(m.div_ceil(2))) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Label {
        crate::dsl::parse_label(s).unwrap()
    }

    #[test]
    fn counts() {
        let (p, d) = enumerate(2, 1).unwrap();
        assert_eq!((p.len(), d.len()), (8, 4));
        let all: Vec<Necklace> = p.iter().chain(&d).cloned().collect();
        let mut orbits: Vec<Necklace> = all.iter().map(|x| x.clone().min(x.iota())).collect();
        orbits.sort();
        orbits.dedup();
        assert_eq!(orbits.len(), 6);
        let (_, d) = enumerate(1, 1).unwrap();
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn text_round_trip() {
        for s in ["O(1+,2-^2-,1+)", "O(1+,|2+|,1-)", "O(1+,1-,|2+|,1-)"] {
            let x = Necklace::parse(s);
            if s == "O(1+,|2+|,1-)" {
                assert!(x.is_err());
                continue;
            }
            let x = x.unwrap();
            assert_eq!(Necklace::parse(&x.to_string()).unwrap(), x);
        }
        let x = Necklace::parse("O(2-,1+^1+,2-)").unwrap();
        assert_eq!(x, Necklace::double_prime(&[l("2-"), l("1+")]));
    }

    #[test]
    fn merging() {
        let x = Necklace::double_prime(&[l("1+"), l("2+")]);
        assert_eq!(x.mh().unwrap(), circle(&[l("1+"), l("2+"), l("1+")]));
        assert_eq!(x.mht().unwrap(), circle(&[l("1+"), l("2+")]));
        assert!(Necklace::prime(&[l("1+"), l("2+")]).mh().is_err());
    }

    #[test]
    fn uniform_beads_flip_kind() {
        let x = Necklace::double_prime(&[l("1+"), l("1+")]);
        assert_eq!(x.iota().kind, ArrowKind::Prime);
    }
}
