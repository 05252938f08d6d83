use jd_core::canon::{as_canonical, canonicalize};
use jd_core::dsl::to_generic;
use jd_core::enumerate::enumerate_diagrams;
use jd_core::maps::{delta_double_prime, delta_double_prime_ordered};
use jd_core::relations::Presentation;
use jd_core::{parse, Builder, Diagram, DiagramSum};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn pool() -> Vec<Diagram> {
    let mut out = Vec::new();
    for (n, l) in [(1, 0), (2, 0), (2, 1), (3, 1), (3, 0), (4, 2), (4, 1)] {
        out.extend(enumerate_diagrams(n, l, 1).unwrap());
    }
    out
}

/// Same diagram with vertices created in the order `perm` and each vertex
/// entered at rotation `rot`.
fn relabel(d: &Diagram, perm: &[usize], rot: &[usize]) -> Diagram {
    let vs = d.trivalent_vertices();
    let mut b = Builder::new();
    let mut new = vec![usize::MAX; d.half_edges()];
    for (i, &p) in perm.iter().enumerate() {
        let v = vs[p];
        let hs = b.vertex();
        for j in 0..3 {
            new[v[(j + rot[i % rot.len()]) % 3]] = hs[j];
        }
    }
    for h in d.legs() {
        new[h] = b.leg(d.label(h).unwrap());
    }
    for (x, y) in d.edges() {
        b.join(new[x], new[y]);
    }
    b.finish().unwrap()
}

fn shuffled(n: usize, keys: &[u32]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by_key(|&i| (keys[i % keys.len()], i));
    idx
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_ignores_ids(i in 0usize..10_000, keys in prop::collection::vec(any::<u32>(), 8), rot in prop::collection::vec(0usize..3, 8)) {
        let ds = pool();
        let d = &ds[i % ds.len()];
        let perm = shuffled(d.ideg(), &keys);
        let e = relabel(d, &perm, &rot);
        prop_assert_eq!(canonicalize(&e), canonicalize(d));
        prop_assert_eq!(as_canonical(&e), as_canonical(d));
    }

    #[test]
    fn euler_count(i in 0usize..10_000) {
        let ds = pool();
        let s = ds[i % ds.len()].stats();
        prop_assert_eq!(s.legs + 2 * s.betti, s.ideg + 2);
    }

    #[test]
    fn print_then_parse(i in 0usize..10_000) {
        let ds = pool();
        let d = &ds[i % ds.len()];
        prop_assert_eq!(canonicalize(&parse(&to_generic(d)).unwrap()), canonicalize(d));
    }

    #[test]
    fn flipping_a_vertex_negates(i in 0usize..10_000, v in 0usize..8) {
        let ds = pool();
        let d = &ds[i % ds.len()];
        let vs = d.trivalent_vertices();
        let f = d.flip_vertex(vs[v % vs.len()][0]);
        let (a, b) = (as_canonical(d), as_canonical(&f));
        prop_assert_eq!(&a.rep, &b.rep);
        prop_assert!(a.sign == -b.sign || a.torsion);
    }

    #[test]
    fn reduction_is_linear(i in 0usize..100, j in 0usize..100, a in -5i64..5, b in -5i64..5) {
        let p = Presentation::cached(3, 1, 1).unwrap();
        let ds = enumerate_diagrams(3, 1, 1).unwrap();
        let (x, y) = (DiagramSum::single(&ds[i % ds.len()]), DiagramSum::single(&ds[j % ds.len()]));
        let lhs = p.reduce(&(&x.scale(a) + &y.scale(b))).unwrap();
        let (rx, ry) = (p.reduce(&x).unwrap(), p.reduce(&y).unwrap());
        let tor = p.torsion();
        for (k, t) in tor.iter().enumerate() {
            let v: BigInt = BigInt::from(a) * &rx.torsion[k] + BigInt::from(b) * &ry.torsion[k];
            prop_assert_eq!(v.mod_floor(t), lhs.torsion[k].clone());
        }
        for k in 0..lhs.free.len() {
            prop_assert_eq!(BigInt::from(a) * &rx.free[k] + BigInt::from(b) * &ry.free[k], lhs.free[k].clone());
        }
    }

    #[test]
    fn double_prime_order_mod_two(i in 0usize..10_000, keys in prop::collection::vec(any::<u32>(), 8)) {
        let ds = pool();
        let d = &ds[i % ds.len()];
        let legs = d.legs();
        let order: Vec<usize> = shuffled(legs.len(), &keys).into_iter().map(|k| legs[k]).collect();
        let s = d.stats();
        let p = Presentation::cached(s.ideg + 1, s.betti + 1, 1).unwrap();
        let x = &delta_double_prime(d).unwrap() - &delta_double_prime_ordered(d, &order).unwrap();
        prop_assert!(p.reduce_mod2(&x).unwrap().iter().all(|&c| c == 0));
    }
}
