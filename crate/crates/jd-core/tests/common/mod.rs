#![allow(dead_code)]

use std::collections::BTreeSet;

use jd_core::enumerate::{enumerate_diagrams, leg_count};
use jd_core::Diagram;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Rotation system on `n` trivalent vertices: half-edge `3v + i` turns to
/// `3v + (i+1)%3`; `leg[h]` marks half-edges that carry a leg.
struct Shape {
    n: usize,
    mate: Vec<usize>,
    leg: Vec<bool>,
}

impl Shape {
    fn connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for i in 0..3 {
                let h = 3 * v + i;
                if !self.leg[h] {
                    let w = self.mate[h] / 3;
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Breadth-first relabeling from root `r`; legs are written with their
    /// colors so labeled and unlabeled codes share one routine.
    fn code_from(&self, r: usize, color: &[u32]) -> Vec<u32> {
        let mut num = vec![usize::MAX; self.n];
        let mut entry = vec![0usize; self.n];
        let mut queue = vec![r / 3];
        num[r / 3] = 0;
        entry[r / 3] = r;
        let mut code = Vec::new();
        let mut qi = 0;
        while qi < queue.len() {
            let v = queue[qi];
            qi += 1;
            let e = entry[v];
            for s in 0..3 {
                let h = 3 * v + (e % 3 + s) % 3;
                if self.leg[h] {
                    code.push(1_000_000 + color[h]);
                    continue;
                }
                let m = self.mate[h];
                let w = m / 3;
                if num[w] == usize::MAX {
                    num[w] = queue.len();
                    entry[w] = m;
                    queue.push(w);
                }
                code.push((num[w] * 3 + (m % 3 + 3 - entry[w] % 3) % 3) as u32);
            }
        }
        code
    }

    fn canonical(&self, color: &[u32]) -> Vec<u32> {
        (0..3 * self.n).map(|r| self.code_from(r, color)).min().unwrap()
    }
}

fn matchings(free: &[usize], mate: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
    match free.first() {
        None => out(mate),
        Some(&a) => {
            for i in 1..free.len() {
                let b = free[i];
                mate[a] = b;
                mate[b] = a;
                let rest: Vec<usize> = free[1..].iter().copied().filter(|&x| x != b).collect();
                matchings(&rest, mate, out);
            }
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// Connected diagrams of degree `n ≥ 1`, Betti `l`, genus `g`, counted up to
/// orientation-preserving isomorphism by brute force over all leg slots,
/// all pairings of the remaining half-edges, and all label assignments.
pub fn naive_count(n: usize, l: usize, g: u8) -> usize {
    let Some(k) = leg_count(n, l) else { return 0 };
    if k > 3 * n || (3 * n - k) % 2 == 1 {
        return 0;
    }
    let colors = 2 * g as u32;
    let mut shapes: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut total = 0;
    for s in subsets(3 * n, k) {
        let mut leg = vec![false; 3 * n];
        for &h in &s {
            leg[h] = true;
        }
        let free: Vec<usize> = (0..3 * n).filter(|&h| !leg[h]).collect();
        let mut mate = vec![usize::MAX; 3 * n];
        matchings(&free, &mut mate, &mut |m| {
            let sh = Shape { n, mate: m.to_vec(), leg: leg.clone() };
            if !sh.connected() {
                return;
            }
            let blank = vec![0u32; 3 * n];
            if !shapes.insert(sh.canonical(&blank)) {
                return;
            }
            let mut labeled: BTreeSet<Vec<u32>> = BTreeSet::new();
            let mut color = vec![0u32; 3 * n];
            for code in 0..colors.pow(k as u32) {
                let mut x = code;
                for &h in &s {
                    color[h] = x % colors;
                    x /= colors;
                }
                labeled.insert(sh.canonical(&color));
            }
            total += labeled.len();
        });
    }
    total
}

pub fn is_lyndon(w: &[u8]) -> bool {
    (1..w.len()).all(|i| w < &w[i..])
}

pub fn lyndon_count(n: usize, d: u8) -> u64 {
    let mut w = vec![0u8; n];
    let mut count = 0;
    loop {
        if is_lyndon(&w) {
            count += 1;
        }
        let mut i = n;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            w[i] += 1;
            if w[i] < d {
                break;
            }
            w[i] = 0;
        }
    }
}

/// A random connected diagram with at least two legs, degree 1..=4.
pub fn random_diagram(rng: &mut ChaCha8Rng) -> Diagram {
    loop {
        let n = rng.gen_range(1..=4);
        let l = rng.gen_range(0..=2);
        let g = rng.gen_range(1..=2);
        match leg_count(n, l) {
            Some(k) if k >= 2 => {}
            _ => continue,
        }
        let ds = enumerate_diagrams(n, l, g).unwrap();
        if let Some(d) = ds.choose(rng) {
            return d.clone();
        }
    }
}
