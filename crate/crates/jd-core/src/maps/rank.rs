//! Closed-form ranks from the free Lie algebra.

fn divisors(n: u64) -> impl Iterator<Item = u64> {
    (1..=n).filter(move |e| n % e == 0)
}

pub fn mobius(mut n: u64) -> i64 {
    let mut m = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u64
}

/// Rank of the degree-`n` part of the free Lie algebra on `d` generators.
pub fn witt_rank(n: u64, d: u64) -> i128 {
    let s: i128 = divisors(n).map(|e| mobius(e) as i128 * (d as i128).pow((n / e) as u32)).sum();
    s / n as i128
}

/// Rank of the kernel of the bracket `H ⊗ L_{n+1} -> L_{n+2}`.
pub fn rank_d(n: u64, d: u64) -> i128 {
    d as i128 * witt_rank(n + 1, d) - witt_rank(n + 2, d)
}

/// `2g⁴ + 2g³ + (3/2)g² + (1/2)g`.
pub fn rank_a41(g: u64) -> i128 {
    let g = g as i128;
    (4 * g.pow(4) + 4 * g.pow(3) + 3 * g * g + g) / 2
}

/// The same rank as a necklace count with the totient function.
pub fn rank_a41_totient(g: u64) -> i128 {
    let d = 2 * g as i128;
    let cyc: i128 = [1u64, 2, 4].iter().map(|&e| totient(e) as i128 * d.pow(4 / e as u32)).sum();
    cyc / 8 + (d + 1) * d * d / 4
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(witt_rank(1, 2), 2);
        assert_eq!(witt_rank(2, 2), 1);
        assert_eq!(witt_rank(3, 2), 2);
        assert_eq!(rank_d(4, 2), 3);
        assert_eq!((rank_a41(1), rank_a41(2)), (6, 55));
        for g in 1..6 {
            assert_eq!(rank_a41(g), rank_a41_totient(g));
        }
        assert_eq!([mobius(1), mobius(4), mobius(6), mobius(7)], [1, 0, 1, -1]);
    }
}
