//! Linear algebra over ℤ/2 on bit vectors.

/// Incrementally built row-echelon basis.
#[derive(Clone, Debug, Default)]
pub struct Basis {
    rows: Vec<(usize, Vec<u8>)>,
}

impl Basis {
    pub fn new() -> Basis {
        Basis::default()
    }

    fn reduce(&self, v: &mut [u8]) {
        for (p, r) in &self.rows {
            if v[*p] == 1 {
                for (a, b) in v.iter_mut().zip(r) {
                    *a ^= b;
                }
            }
        }
    }

    /// Add `v`; false if it was already in the span.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        let mut v: Vec<u8> = v.iter().map(|x| x & 1).collect();
        self.reduce(&mut v);
        match v.iter().position(|&x| x == 1) {
            Some(p) => {
                for (_, r) in self.rows.iter_mut() {
                    if r[p] == 1 {
                        for (a, b) in r.iter_mut().zip(&v) {
                            *a ^= b;
                        }
                    }
                }
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut v: Vec<u8> = v.iter().map(|x| x & 1).collect();
        self.reduce(&mut v);
        v.iter().all(|&x| x == 0)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

pub fn rank(vs: &[Vec<u8>]) -> usize {
    let mut b = Basis::new();
    vs.iter().filter(|v| b.insert(v)).count()
}

/// Basis of `{c : Σ c_i v_i = 0}` for the vectors `vs`.
pub fn kernel(vs: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let k = vs.len();
    let width = vs.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<u8>> = vs
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut r: Vec<u8> = v.iter().map(|x| x & 1).collect();
            r.extend((0..k).map(|j| u8::from(j == i)));
            r
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..width {
        if let Some(p) = (pivot_row..k).find(|&r| rows[r][col] == 1) {
            rows.swap(pivot_row, p);
            let piv = rows[pivot_row].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != pivot_row && row[col] == 1 {
                    for (u, w) in row.iter_mut().zip(&piv) {
                        *u ^= w;
                    }
                }
            }
            pivot_row += 1;
        }
    }
    rows[pivot_row..].iter().map(|r| r[width..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_dependent_set() {
        let vs = vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0], vec![0, 0, 0]];
        assert_eq!(rank(&vs), 2);
        let ker = kernel(&vs);
        assert_eq!(ker.len(), 2);
        for c in &ker {
            let mut s = vec![0u8; 3];
            for (ci, v) in c.iter().zip(&vs) {
                if *ci == 1 {
                    for (a, b) in s.iter_mut().zip(v) {
                        *a ^= b;
                    }
                }
            }
            assert_eq!(s, vec![0, 0, 0]);
        }
    }
}
