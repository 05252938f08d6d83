mod common;

use jd_core::enumerate::enumerate_diagrams;
use jd_core::maps::*;
use jd_core::relations::Presentation;
use jd_core::{parse, DiagramSum, Label};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn eta_reversal_symmetry() {
    for g in 1..=2 {
        for n in 1..=4 {
            for d in enumerate_diagrams(n, 0, g).unwrap() {
                let t = iota_eta(&d).unwrap();
                assert_eq!(t.reversed(if n % 2 == 0 { 1 } else { -1 }), t, "{d:?}");
            }
        }
    }
}

#[test]
fn eta_components_are_lie() {
    for n in 1..=4 {
        for d in enumerate_diagrams(n, 0, 1).unwrap() {
            for (_, w) in eta(&d).unwrap() {
                assert_eq!(w.dynkin(), {
                    let mut t = TensorWord::default();
                    t.add_all(&w, n as i64 + 1);
                    t
                });
            }
        }
    }
}

#[test]
fn double_prime_ignores_leg_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let d = common::random_diagram(&mut rng);
        let mut order = d.legs();
        order.shuffle(&mut rng);
        let a = delta_double_prime(&d).unwrap();
        let b = delta_double_prime_ordered(&d, &order).unwrap();
        let s = d.stats();
        if a.is_empty() && b.is_empty() {
            continue;
        }
        let p = Presentation::cached(s.ideg + 1, s.betti + 1, d.max_label_index()).unwrap();
        assert!(p.reduce_mod2(&(&a - &b)).unwrap().iter().all(|&x| x == 0), "{d:?}");
    }
}

#[test]
fn blow_down_inverts_blow_up() {
    for n in 5..=7 {
        let src = Presentation::cached(n - 2, 1, 1).unwrap();
        let tgt = Presentation::theta_quotient(n, 1).unwrap();
        assert_eq!(src.torsion(), tgt.torsion());
        assert_eq!(src.rank(), tgt.rank());
        for c in src.generators() {
            let mut x = bd(&bu(&c.rep).unwrap()).unwrap();
            x.add_term(&c.rep, -1);
            assert!(src.is_zero(&x).unwrap(), "n={n}");
        }
    }
}

#[test]
fn eyeglass_reduction_is_identity() {
    let p = Presentation::cached(6, 2, 1).unwrap();
    for c in p.generators() {
        let mut x = eyeglass_to_theta(&c.rep).unwrap();
        x.add_term(&c.rep, -1);
        assert!(p.is_zero(&x).unwrap());
    }
}

#[test]
fn symmetric_kernel_elements() {
    for m in 2..=4 {
        for a in jd_core::relations::words(&Label::all(1), m) {
            let w = one_loop_witness(&a).unwrap();
            assert_eq!(sym_relation_even(&w).unwrap().as_normal().mod2(), one_loop_kernel_element(&a).unwrap().as_normal().mod2());
        }
    }
}

#[test]
fn blow_up_of_tripod() {
    let d = bu(&parse("T(1+,2+,1+)").unwrap()).unwrap();
    let x = &DiagramSum::single(&d) - &DiagramSum::single(&parse("O(1+,2+,1+)").unwrap());
    assert!(Presentation::cached(3, 1, 2).unwrap().is_zero(&x).unwrap());
}
