mod common;

use std::time::Instant;

use jd_core::dsl::{circle, parse_label, theta};
use jd_core::enumerate::{enumerate_diagrams, leg_count};
use jd_core::maps::*;
use jd_core::necklace::{enumerate, kernel_report, orbit_representatives, Necklace};
use jd_core::relations::{relators, words, Presentation};
use jd_core::weight::*;
use jd_core::{parse, DiagramSum, Label};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn l(s: &str) -> Label {
    parse_label(s).unwrap()
}

fn p(s: &str) -> jd_core::Diagram {
    parse(s).unwrap()
}

fn kernel_rank() -> Outcome {
    for (m, g) in [(2, 1), (3, 1), (2, 2)] {
        let r = kernel_report(m, g).map_err(e)?;
        ensure(r.holds(), || format!("(m,g)=({m},{g}): {r:?}"))?;
    }
    Ok(())
}

fn a41_rank() -> Outcome {
    for (g, r) in [(1, 6), (2, 55)] {
        let pr = Presentation::cached(4, 1, g).map_err(e)?;
        ensure(pr.rank() == r && pr.torsion().is_empty(), || format!("g={g}: rank {} torsion {:?}", pr.rank(), pr.torsion()))?;
        ensure(rank_a41(g as u64) == r as i128 && rank_a41_totient(g as u64) == r as i128, || format!("closed form at g={g}"))?;
    }
    Ok(())
}

fn a4_decomposition() -> Outcome {
    let mut total = 0;
    let mut parts = Vec::new();
    for l in 0..=3 {
        let pr = Presentation::cached(4, l, 1).map_err(e)?;
        ensure(pr.torsion().is_empty(), || format!("torsion in A_4,{l}: {:?}", pr.torsion()))?;
        parts.push(pr.rank());
        total += pr.rank();
    }
    let d = rank_d(4, 2);
    ensure(d == parts[0] as i128, || format!("rank D = {d}, direct {}", parts[0]))?;
    ensure(parts[1..] == [6, 3, 1] && total == 13, || format!("ranks {parts:?}, total {total}"))
}

fn blow_up_bijection() -> Outcome {
    for n in 5..=7 {
        let src = Presentation::cached(n - 2, 1, 1).map_err(e)?;
        let tgt = Presentation::theta_quotient(n, 1).map_err(e)?;
        ensure(src.rank() == tgt.rank() && src.torsion() == tgt.torsion(), || {
            format!("n={n}: ({}, {:?}) vs ({}, {:?})", src.rank(), src.torsion(), tgt.rank(), tgt.torsion())
        })?;
        for c in src.generators() {
            let back = bd(&bu(&c.rep).map_err(e)?).map_err(e)?;
            ensure(src.is_zero(&(&back - &DiagramSum::single(&c.rep))).map_err(e)?, || format!("n={n}: bd∘bu ≠ id"))?;
        }
    }
    let a42 = Presentation::cached(4, 2, 1).map_err(e)?;
    ensure(a42.rank() == 3 && a42.torsion().is_empty(), || format!("A_4,2: {} {:?}", a42.rank(), a42.torsion()))?;
    let (a52, a10) = (Presentation::cached(5, 2, 1).map_err(e)?, Presentation::cached(1, 0, 1).map_err(e)?);
    ensure(a52.rank() == a10.rank() && a52.torsion() == a10.torsion(), || "A_5,2 vs A_1,0".into())
}

fn theta_vanishes() -> Outcome {
    for g in 1..=2 {
        let pr = Presentation::cached(5, 2, g).map_err(e)?;
        for w in words(&Label::all(g), 3) {
            let t = DiagramSum::single(&theta(&w[..1], &w[1..2], &w[2..]));
            ensure(pr.is_zero(&t).map_err(e)?, || format!("θ({};{};{}) ≠ 0", w[0], w[1], w[2]))?;
        }
    }
    Ok(())
}

fn weight_suite() -> Outcome {
    let c = StructureConstants::sl2();
    ensure(c.validate().is_empty(), || format!("{:?}", c.validate()))?;
    for g in 1..=2 {
        for n in 1..=4 {
            for lp in (0..=3).filter(|&lp| leg_count(n, lp).is_some()) {
                for r in relators(n, lp, g).map_err(e)? {
                    ensure(evaluate_sum(&c, &r).is_zero(), || format!("relator in ({n},{lp},{g})"))?;
                }
                for d in enumerate_diagrams(n, lp, g).map_err(e)? {
                    let w = evaluate(&c, &bu(&d).map_err(e)?);
                    ensure(w == evaluate(&c, &d).scale(-1), || format!("bu sign in ({n},{lp},{g})"))?;
                }
            }
        }
    }
    let mut circle_ab = WeightPolynomial::default();
    for m in 1..=3 {
        circle_ab.add(vec![(l("1+"), m), (l("2-"), m)], -2);
    }
    ensure(evaluate(&c, &p("O(1+,2-)")) == circle_ab, || "W(O(a,b))".into())?;
    let (a, b, cc) = (l("1+"), l("1-"), l("2+"));
    let m1 = [(a, 1), (a, 1), (b, 2), (b, 2), (cc, 2), (cc, 2)];
    let m2 = [(a, 1), (a, 1), (b, 1), (b, 1), (cc, 2), (cc, 2)];
    let x = evaluate(&c, &p("T(1+,1-,2+,2+,1-,1+)"));
    let y = evaluate(&c, &p("T(1-,2+,1+,1+,2+,1-)"));
    let got = [x.coeff(&m1), x.coeff(&m2), y.coeff(&m1), y.coeff(&m2)];
    ensure(got == [1, 0, 0, 1], || format!("pattern {got:?}"))
}

fn higher_loop() -> Outcome {
    for k in 0..=2 {
        let hb = higher_loop_bounds(k, 1).map_err(e)?;
        ensure((hb.tor_rank, hb.ker_span_rank, hb.im_span_rank) == (4, 1, 3), || format!("{hb:?}"))?;
        for a in Label::all(1) {
            for b in Label::all(1).into_iter().filter(|&b| b != a) {
                let w = half_weight_of_tripod(k, a, b).map_err(e)?;
                let mut one = WeightPolynomial::default();
                one.add(vec![(a, 1), (b, 1)], 1);
                // values live in ℚ/ℤ, where ½ = −½
                ensure(w == one || w == one.scale(-1), || format!("k={k}: {w}"))?;
            }
        }
    }
    Ok(())
}

fn necklace_suite() -> Outcome {
    for g in 1..=2u8 {
        for m in 1..=4usize {
            let (pr, dp) = enumerate(m, g).map_err(e)?;
            let q = 2u64 * g as u64;
            let all: Vec<Necklace> = pr.iter().chain(&dp).cloned().collect();
            let orbits = orbit_representatives(&all).len() as u64;
            ensure(pr.len() as u64 == q.pow(m as u32 + 1) && dp.len() as u64 == q.pow(m as u32), || format!("m={m} g={g}"))?;
            ensure(2 * orbits == q.pow(m as u32 + 1) + q.pow(m as u32), || format!("orbits m={m} g={g}"))?;
            for x in &all {
                let y = x.iota();
                ensure(&y != x && &y.iota() == x, || format!("ι at {x}"))?;
            }
        }
    }
    let (a, b) = (l("1+"), l("1-"));
    let x = Necklace::double_prime(&[a, b, b, a, a, b, b, a]);
    ensure(x.period_exponent() == 2, || "e(x)".into())?;
    ensure(x.iota() == Necklace::double_prime(&[b, a, a, b, b, a, a, b]), || "ι(x)".into())?;
    ensure(x.mh().map_err(e)? == circle(&[a, b, b, a, a, b, b, a, b, b, a, a, b, b, a]), || "𝔪𝔥(x)".into())?;
    ensure(x.iota().mh().map_err(e)? == circle(&[b, a, a, b, b, a, a, b, a, a, b, b, a, a, b]), || "𝔪𝔥(ιx)".into())
}

fn sum_of(terms: &[(i64, &str)]) -> DiagramSum {
    let mut s = DiagramSum::new();
    for &(c, t) in terms {
        s.add_term(&p(t), c);
    }
    s
}

fn same_up_to_sign(x: &DiagramSum, y: &DiagramSum) -> bool {
    let (x, y) = (x.as_normal(), y.as_normal());
    x == y || x == y.scale(-1).as_normal()
}

fn symmetric_relations() -> Outcome {
    let errs: Vec<String> = [example_displays(), kernel_elements(), eta_symmetry()].into_iter().filter_map(Result::err).collect();
    ensure(errs.is_empty(), || errs.join("; "))
}

fn example_displays() -> Outcome {
    let (i, j, k) = (l("1+"), l("1-"), l("2+"));
    let circle_display = sum_of(&[(1, "O(1+,1-,1-,1+)"), (2, "O(1+,1+,1-,1+)"), (1, "theta(;1+;1-)")]);
    let got = two_torsion_relation(TorsionKind::Circle, &[i, j]).map_err(e)?;
    ensure(same_up_to_sign(&got, &circle_display), || format!("circle display: got {:?}", got.as_normal()))?;
    let tree_display = sum_of(&[
        (1, "T(1+,1-,2+,2+,1-,1+)"),
        (2, "T(1+,1+,1-,2+,1-,1+)"),
        (2, "T(1+,1-,1-,2+,1-,1+)"),
        (1, "O(2+,1-,1+,1-)"),
        (1, "O(2+,1+,1-,1+)"),
    ]);
    let got = two_torsion_relation(TorsionKind::Tree, &[i, j, k]).map_err(e)?;
    let diff = (&got.as_normal() - &tree_display.as_normal()).as_normal();
    let sum = (&got.as_normal() + &tree_display.as_normal()).as_normal();
    ensure(same_up_to_sign(&got, &tree_display), || {
        format!("tree display differs: {} terms off (opposite sign: {} terms off)", diff.len(), sum.len())
    })
}

fn kernel_elements() -> Outcome {
    for (m, g) in [(2, 1), (3, 1), (2, 2)] {
        let src = Presentation::cached(2 * m - 1, 1, g).map_err(e)?;
        let tgt = Presentation::cached(2 * m, 1, g).map_err(e)?;
        let fold = if m % 2 == 0 { Some(Presentation::cached(2 * m - 2, 1, g).map_err(e)?) } else { None };
        for a in words(&Label::all(g), m) {
            let x = loop_part(&one_loop_kernel_element(&a).map_err(e)?, 1);
            src.coords(&x).map_err(e)?;
            let mut img = delta_prime_mod2(&x, &tgt).map_err(e)?;
            if let Some(f) = &fold {
                img.extend(fold_map(&x, f).map_err(e)?);
            }
            ensure(img.iter().all(|&v| v == 0), || format!("m={m}: kernel element for {a:?} maps to nonzero"))?;
            let w = one_loop_witness(&a).map_err(e)?;
            let even = sym_relation_even(&w).map_err(e)?.as_normal().mod2();
            ensure(even == one_loop_kernel_element(&a).map_err(e)?.as_normal().mod2(), || format!("m={m}: relation element"))?;
        }
    }
    Ok(())
}

fn eta_symmetry() -> Outcome {
    for g in 1..=2 {
        for n in 1..=4 {
            for d in enumerate_diagrams(n, 0, g).map_err(e)? {
                let t = iota_eta(&d).map_err(e)?;
                ensure(t.reversed(if n % 2 == 0 { 1 } else { -1 }) == t, || format!("ι∘η at n={n}"))?;
            }
        }
    }
    Ok(())
}

fn oracle_suite() -> Outcome {
    for g in 1..=2 {
        for n in 1..=4 {
            for lp in 0..=3 {
                let fast = enumerate_diagrams(n, lp, g).map(|d| d.len()).unwrap_or(0);
                let naive = common::naive_count(n, lp, g);
                ensure(fast == naive, || format!("({n},{lp},{g}): {fast} vs {naive}"))?;
            }
        }
    }
    for d in 1..=4u8 {
        for n in 1..=8 {
            let (w, ly) = (witt_rank(n as u64, d as u64), common::lyndon_count(n, d) as i128);
            ensure(w == ly, || format!("n={n} d={d}: {w} vs {ly}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let d = common::random_diagram(&mut rng);
        let mut order = d.legs();
        order.shuffle(&mut rng);
        let x = &delta_double_prime(&d).map_err(e)? - &delta_double_prime_ordered(&d, &order).map_err(e)?;
        let s = d.stats();
        let pr = Presentation::cached(s.ideg + 1, s.betti + 1, d.max_label_index()).map_err(e)?;
        ensure(pr.reduce_mod2(&x).map_err(e)?.iter().all(|&v| v == 0), || "δ″ depends on the leg order".into())?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 kernel rank of the one-loop map", kernel_rank),
        ("2 rank of A_4,1", a41_rank),
        ("3 decomposition of A_4", a4_decomposition),
        ("4 blow-up bijection", blow_up_bijection),
        ("5 theta diagrams vanish in A_5,2", theta_vanishes),
        ("6 weight system suite", weight_suite),
        ("7 higher-loop bounds", higher_loop),
        ("8 necklace suite", necklace_suite),
        ("9 symmetric relation suite", symmetric_relations),
        ("10 oracle equivalence", oracle_suite),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(()) => println!("PASS {name} ({secs:.2}s)"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name} ({secs:.2}s): {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
