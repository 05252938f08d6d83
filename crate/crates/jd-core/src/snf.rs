//! Smith normal form of sparse integer relation matrices.
//!
//! Unit pivots are eliminated sparsely first, each recorded as a rewriting
//! rule for one generator. The remaining block goes through row echelon
//! form and a dense Smith reduction that tracks the column transform.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type SparseRow = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
pub struct Smith {
    n_gens: usize,
    /// `g_c = Σ a_j g_j`, applied in order.
    rules: Vec<(usize, Vec<(usize, i64)>)>,
    alive: Vec<usize>,
    alive_pos: HashMap<usize, usize>,
    /// Diagonal of the dense block, padded with zeros to `alive.len()`.
    diag: Vec<BigInt>,
    /// Column transform: coordinates are `x * v`.
    v: Vec<Vec<BigInt>>,
}

/// Coordinates in `⊕ ℤ/d_i ⊕ ℤ^r`: torsion entries reduced mod `d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coords {
    pub torsion: Vec<BigInt>,
    pub free: Vec<BigInt>,
}

impl Coords {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().all(Zero::is_zero) && self.free.iter().all(Zero::is_zero)
    }
}

fn normalize(row: &mut SparseRow) {
    row.sort_unstable_by_key(|e| e.0);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for &(c, v) in row.iter() {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    *row = out;
}

/// `a + k * b` on sorted sparse rows; `None` on overflow.
fn axpy(a: &SparseRow, k: i64, b: &SparseRow) -> Option<SparseRow> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, k.checked_mul(b[j].1)?));
            j += 1;
        } else {
            let v = a[i].1.checked_add(k.checked_mul(b[j].1)?)?;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

impl Smith {
    pub fn new(n_gens: usize, rows: Vec<SparseRow>) -> Smith {
        let mut rows: Vec<Option<SparseRow>> = rows
            .into_iter()
            .map(|mut r| {
                normalize(&mut r);
                if r.is_empty() {
                    None
                } else {
                    Some(r)
                }
            })
            .collect();
        let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); n_gens];
        for (i, r) in rows.iter().enumerate() {
            if let Some(r) = r {
                for &(c, _) in r {
                    col_rows[c].push(i);
                }
            }
        }
        let mut dead_col = vec![false; n_gens];
        let mut rules = Vec::new();

        // Greedy passes over rows by increasing length, pivoting on the unit
        // entry whose column is sparsest.
        loop {
            let mut order: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].is_some()).collect();
            order.sort_by_key(|&i| rows[i].as_ref().unwrap().len());
            let mut progress = false;
            for i in order {
                let Some(r) = rows[i].as_ref() else { continue };
                let pick = r.iter().filter(|e| e.1.abs() == 1).min_by_key(|e| col_rows[e.0].len()).map(|e| e.0);
                let Some(pc) = pick else { continue };
                let prow = rows[i].take().unwrap();
                let pv = prow.iter().find(|e| e.0 == pc).unwrap().1;
                let mut targets = std::mem::take(&mut col_rows[pc]);
                targets.sort_unstable();
                targets.dedup();
                let mut updates = Vec::with_capacity(targets.len());
                let mut overflow = false;
                for &k in &targets {
                    let Some(r) = rows[k].as_ref() else { continue };
                    let Ok(pos) = r.binary_search_by_key(&pc, |e| e.0) else { continue };
                    let rv = r[pos].1;
                    // row_k - (rv / pv) * prow, with pv = ±1
                    match axpy(r, -rv * pv, &prow) {
                        Some(nr) => updates.push((k, nr)),
                        None => {
                            overflow = true;
                            break;
                        }
                    }
                }
                if overflow {
                    rows[i] = Some(prow);
                    col_rows[pc] = targets;
                    continue;
                }
                for (k, nr) in updates {
                    for &(c, _) in &nr {
                        col_rows[c].push(k);
                    }
                    rows[k] = if nr.is_empty() { None } else { Some(nr) };
                }
                let expr: Vec<(usize, i64)> = prow.iter().filter(|e| e.0 != pc).map(|&(c, v)| (c, -v * pv)).collect();
                dead_col[pc] = true;
                rules.push((pc, expr));
                progress = true;
            }
            if !progress {
                break;
            }
        }
        Smith::finish(n_gens, rules, dead_col, rows)
    }

    fn finish(n_gens: usize, rules: Vec<(usize, Vec<(usize, i64)>)>, dead_col: Vec<bool>, rows: Vec<Option<SparseRow>>) -> Smith {
        let alive: Vec<usize> = (0..n_gens).filter(|&c| !dead_col[c]).collect();
        let alive_pos: HashMap<usize, usize> = alive.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let k = alive.len();
        let dense_rows = rows.into_iter().flatten().map(|r| {
            let mut d = vec![BigInt::zero(); k];
            for (c, v) in r {
                d[alive_pos[&c]] = BigInt::from(v);
            }
            d
        });
        let basis = echelon(dense_rows, k);
        let (diag, v) = dense_smith(basis, k);
        Smith { n_gens, rules, alive, alive_pos, diag, v }
    }

    pub fn generators(&self) -> usize {
        self.n_gens
    }

    /// Nontrivial invariant factors (> 1), ascending by divisibility.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| **d > BigInt::one()).cloned().collect()
    }

    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| d.is_zero()).count()
    }

    /// Number of invariant factors equal to 1.
    pub fn units(&self) -> usize {
        self.rules.len() + self.diag.iter().filter(|d| d.is_one()).count()
    }

    /// All nonzero invariant factors, including the units.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::one(); self.units()];
        out.extend(self.torsion());
        out
    }

    /// Normal form of `x` (generator coordinates) in the quotient.
    pub fn reduce(&self, x: &[(usize, i64)]) -> Coords {
        let mut acc: HashMap<usize, BigInt> = HashMap::new();
        for &(c, v) in x {
            *acc.entry(c).or_insert_with(BigInt::zero) += v;
        }
        for (c, expr) in &self.rules {
            if let Some(val) = acc.remove(c) {
                if val.is_zero() {
                    continue;
                }
                for &(j, a) in expr {
                    *acc.entry(j).or_insert_with(BigInt::zero) += &val * a;
                }
            }
        }
        let k = self.alive.len();
        let mut y = vec![BigInt::zero(); k];
        for (c, val) in acc {
            if val.is_zero() {
                continue;
            }
            let i = self.alive_pos[&c];
            for (j, yj) in y.iter_mut().enumerate() {
                if !self.v[i][j].is_zero() {
                    *yj += &val * &self.v[i][j];
                }
            }
        }
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (j, yj) in y.into_iter().enumerate() {
            let d = &self.diag[j];
            if d.is_zero() {
                free.push(yj);
            } else if !d.is_one() {
                torsion.push(yj.mod_floor(d));
            }
        }
        Coords { torsion, free }
    }

    /// Image in `A ⊗ ℤ/2` as bits: free coordinates, then even torsion coordinates.
    pub fn reduce_mod2(&self, x: &[(usize, i64)]) -> Vec<u8> {
        let c = self.reduce(x);
        let two = BigInt::from(2);
        let mut out: Vec<u8> = c.free.iter().map(|v| v.mod_floor(&two).to_u8().unwrap()).collect();
        for (v, d) in c.torsion.iter().zip(self.torsion()) {
            if d.is_even() {
                out.push(v.mod_floor(&two).to_u8().unwrap());
            }
        }
        out
    }

    /// Dimension of `A ⊗ ℤ/2`.
    pub fn dim_mod2(&self) -> usize {
        self.rank() + self.torsion().iter().filter(|d| d.is_even()).count()
    }

    /// Torsion coordinates of `x` reduced mod 2 (for factors equal to 2).
    pub fn torsion_bits(&self, x: &[(usize, i64)]) -> Vec<u8> {
        let c = self.reduce(x);
        let two = BigInt::from(2);
        c.torsion.iter().map(|v| v.mod_floor(&two).to_u8().unwrap()).collect()
    }
}

/// Row echelon basis of the lattice spanned by `rows`.
fn echelon(rows: impl Iterator<Item = Vec<BigInt>>, k: usize) -> Vec<Vec<BigInt>> {
    let mut piv: Vec<Option<Vec<BigInt>>> = vec![None; k];
    for mut r in rows {
        let mut c = 0;
        loop {
            while c < k && r[c].is_zero() {
                c += 1;
            }
            if c == k {
                break;
            }
            match piv[c].take() {
                None => {
                    if r[c].is_negative() {
                        for x in r.iter_mut() {
                            *x = -&*x;
                        }
                    }
                    piv[c] = Some(r);
                    break;
                }
                Some(p) => {
                    let e = p[c].extended_gcd(&r[c]);
                    // new pivot row = x*p + y*r; remainder row = (r[c]/g)*p - (p[c]/g)*r
                    let (a, b) = (&p[c] / &e.gcd, &r[c] / &e.gcd);
                    let mut np = vec![BigInt::zero(); k];
                    let mut rem = vec![BigInt::zero(); k];
                    for j in c..k {
                        np[j] = &e.x * &p[j] + &e.y * &r[j];
                        rem[j] = &b * &p[j] - &a * &r[j];
                    }
                    piv[c] = Some(np);
                    r = rem;
                }
            }
        }
    }
    // reduce entries above pivots to keep numbers small
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let cols: Vec<usize> = (0..k).filter(|&c| piv[c].is_some()).collect();
    for &c in cols.iter().rev() {
        let p = piv[c].clone().unwrap();
        for &c2 in cols.iter().filter(|&&c2| c2 < c) {
            let row = piv[c2].as_mut().unwrap();
            if !row[c].is_zero() {
                let q = row[c].div_floor(&p[c]);
                if !q.is_zero() {
                    for j in c..k {
                        row[j] -= &q * &p[j];
                    }
                }
            }
        }
    }
    for c in 0..k {
        if let Some(p) = piv[c].take() {
            out.push(p);
        }
    }
    out
}

/// Smith form of a dense matrix with `k` columns; returns the diagonal (length `k`)
/// and the column transform.
fn dense_smith(mut a: Vec<Vec<BigInt>>, k: usize) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
    let mut v: Vec<Vec<BigInt>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let m = a.len();
    let mut diag = vec![BigInt::zero(); k];
    let swap_cols = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    };
    let mut t = 0;
    while t < m.min(k) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..k {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        swap_cols(&mut a, &mut v, t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let pivot_row = a[t].clone();
                for j in t..k {
                    a[i][j] -= &q * &pivot_row[j];
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..k {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..m {
                    let s = &q * &a[i][t];
                    a[i][j] -= s;
                }
                for row in v.iter_mut() {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility against the trailing block
                let mut fix = None;
                'scan: for i in t + 1..m {
                    for j in t + 1..k {
                        if !(&a[i][j] % &a[t][t]).is_zero() {
                            fix = Some(i);
                            break 'scan;
                        }
                    }
                }
                match fix {
                    None => break,
                    Some(i) => {
                        for j in t..k {
                            let s = a[i][j].clone();
                            a[t][j] += s;
                        }
                        continue;
                    }
                }
            }
            // move the new smallest entry of row/column t to the pivot
            let mut bi = t;
            let mut bj = t;
            for i in t..m {
                if !a[i][t].is_zero() && (a[bi][bj].is_zero() || a[i][t].abs() < a[bi][bj].abs()) {
                    bi = i;
                    bj = t;
                }
            }
            for j in t..k {
                if !a[t][j].is_zero() && (a[bi][bj].is_zero() || a[t][j].abs() < a[bi][bj].abs()) {
                    bi = t;
                    bj = j;
                }
            }
            a.swap(t, bi);
            swap_cols(&mut a, &mut v, t, bj);
        }
        if a[t][t].is_negative() {
            for i in t..m {
                a[i][t] = -&a[i][t];
            }
            for row in v.iter_mut() {
                row[t] = -&row[t];
            }
        }
        diag[t] = a[t][t].clone();
        t += 1;
    }
    (diag, v)
}
