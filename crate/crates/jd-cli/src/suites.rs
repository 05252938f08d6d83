use jd_core::dsl::{parse_label, theta};
use jd_core::enumerate::{enumerate_diagrams, leg_count};
use jd_core::maps::*;
use jd_core::necklace::{enumerate, expected_kernel_rank, kernel_report, orbit_representatives, Necklace};
use jd_core::relations::{relators, words, Presentation};
use jd_core::weight::{evaluate_sum, higher_loop_bounds, StructureConstants};
use jd_core::{parse, DiagramSum, JdError, Label, Result};

pub const SUITES: [&str; 9] = [
    "ker-sn1",
    "bu-isom",
    "theta-vanish",
    "weight-axioms",
    "higher-loop",
    "necklace-counts",
    "sym-relations",
    "eta-symmetry",
    "a4-decomposition",
];

pub struct Check {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

fn check(name: impl Into<String>, expected: impl ToString, got: impl ToString) -> Check {
    let (expected, got) = (expected.to_string(), got.to_string());
    Check { name: name.into(), pass: expected == got, expected, got }
}

fn holds(name: impl Into<String>, ok: bool) -> Check {
    check(name, true, ok)
}

pub struct Params {
    pub genus: u8,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub system: StructureConstants,
}

pub fn run(suite: &str, p: &Params) -> Result<Vec<Check>> {
    match suite {
        "ker-sn1" => ker_sn1(p.m.unwrap_or(2), p.genus),
        "bu-isom" => bu_isom(p.n.map_or(vec![5, 6, 7], |n| vec![n]), p.genus),
        "theta-vanish" => theta_vanish(p.genus),
        "weight-axioms" => weight_axioms(&p.system, p.genus),
        "higher-loop" => higher_loop(p.k.map_or(vec![0, 1, 2], |k| vec![k]), p.genus),
        "necklace-counts" => necklace_counts(p.m.unwrap_or(4), p.genus),
        "sym-relations" => sym_relations(p.genus),
        "eta-symmetry" => eta_symmetry(p.n.unwrap_or(4), p.genus),
        "a4-decomposition" => a4_decomposition(p.genus),
        _ => Err(JdError::Domain(format!("unknown suite {suite}"))),
    }
}

fn ker_sn1(m: usize, g: u8) -> Result<Vec<Check>> {
    let r = kernel_report(m, g)?;
    let e = expected_kernel_rank(m as u32, g as u64);
    Ok(vec![
        check("mh images span the torsion", r.torsion_rank, r.mh_rank),
        check("kernel rank", e, r.kernel_rank),
        check("rank of the e=0 pair span", e, r.span_rank),
        check("kernel equals the pair span", e, r.joint_rank),
    ])
}

fn bu_isom(ns: Vec<usize>, g: u8) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in ns {
        let src = Presentation::cached(n - 2, 1, g)?;
        let tgt = Presentation::theta_quotient(n, g)?;
        out.push(check(format!("n={n} rank"), src.rank(), tgt.rank()));
        out.push(check(format!("n={n} torsion"), fmt_torsion(&src), fmt_torsion(&tgt)));
        let mut ok = true;
        for c in src.generators() {
            let back = bd(&bu(&c.rep)?)?;
            ok &= src.is_zero(&(&back - &DiagramSum::single(&c.rep)))?;
        }
        out.push(holds(format!("n={n} bd∘bu = id on generators"), ok));
    }
    Ok(out)
}

pub fn fmt_torsion(p: &Presentation) -> String {
    let t = p.torsion();
    if t.is_empty() {
        "none".into()
    } else {
        t.iter().map(|x| format!("Z/{x}")).collect::<Vec<_>>().join(" ")
    }
}

fn theta_vanish(g: u8) -> Result<Vec<Check>> {
    let p = Presentation::cached(5, 2, g)?;
    let mut out = Vec::new();
    for w in words(&Label::all(g), 3) {
        let t = DiagramSum::single(&theta(&w[..1], &w[1..2], &w[2..]));
        out.push(check(format!("θ({};{};{})", w[0], w[1], w[2]), "0", if p.is_zero(&t)? { "0" } else { "nonzero" }));
    }
    Ok(out)
}

fn weight_axioms(c: &StructureConstants, g: u8) -> Result<Vec<Check>> {
    let v = c.validate();
    let mut out = vec![check("violated axioms", 0, v.len())];
    for n in 1..=3 {
        for l in (0..=2).filter(|&l| leg_count(n, l).is_some()) {
            let mut ok = true;
            for r in relators(n, l, g)? {
                ok &= evaluate_sum(c, &r).is_zero();
            }
            out.push(holds(format!("relators vanish n={n} l={l}"), ok));
        }
    }
    Ok(out)
}

fn higher_loop(ks: Vec<usize>, g: u8) -> Result<Vec<Check>> {
    let g2 = g as usize;
    let mut out = Vec::new();
    for k in ks {
        let b = higher_loop_bounds(k, g)?;
        out.push(check(format!("k={k} torsion rank"), 4 * g2 * g2, b.tor_rank));
        out.push(check(format!("k={k} kernel span rank"), g2 * (2 * g2 - 1), b.ker_span_rank));
        out.push(check(format!("k={k} weight image rank"), g2 * (2 * g2 + 1), b.im_span_rank));
    }
    Ok(out)
}

fn necklace_counts(max_m: usize, g: u8) -> Result<Vec<Check>> {
    let q = 2 * g as u64;
    let mut out = Vec::new();
    for m in 1..=max_m {
        let (p, d) = enumerate(m, g)?;
        let all: Vec<Necklace> = p.iter().chain(&d).cloned().collect();
        out.push(check(format!("m={m} prime"), q.pow(m as u32 + 1), p.len()));
        out.push(check(format!("m={m} double prime"), q.pow(m as u32), d.len()));
        out.push(check(format!("m={m} orbits"), (q.pow(m as u32 + 1) + q.pow(m as u32)) / 2, orbit_representatives(&all).len()));
        out.push(holds(format!("m={m} ι free involution"), all.iter().all(|x| x.iota() != *x && x.iota().iota() == *x)));
    }
    Ok(out)
}

fn labels(s: &[&str]) -> Vec<Label> {
    s.iter().map(|x| parse_label(x).unwrap()).collect()
}

fn display_sum(terms: &[(i64, &str)]) -> Result<DiagramSum> {
    let mut s = DiagramSum::new();
    for &(c, t) in terms {
        s.add_term(&parse(t)?, c);
    }
    Ok(s)
}

fn matches_up_to_sign(x: &DiagramSum, y: &DiagramSum) -> bool {
    let (x, y) = (x.as_normal(), y.as_normal());
    x == y || x == y.scale(-1).as_normal()
}

/// Uses the labels `1+, 1-, 2+` for the displayed examples regardless of genus.
fn sym_relations(g: u8) -> Result<Vec<Check>> {
    let ij = labels(&["1+", "1-"]);
    let ijk = labels(&["1+", "1-", "2+"]);
    let circle_display = display_sum(&[(1, "O(1+,1-,1-,1+)"), (2, "O(1+,1+,1-,1+)"), (1, "theta(;1+;1-)")])?;
    let tree_display = display_sum(&[
        (1, "T(1+,1-,2+,2+,1-,1+)"),
        (2, "T(1+,1+,1-,2+,1-,1+)"),
        (2, "T(1+,1-,1-,2+,1-,1+)"),
        (1, "O(2+,1-,1+,1-)"),
        (1, "O(2+,1+,1-,1+)"),
    ])?;
    let mut out = vec![
        holds("circle relation display", matches_up_to_sign(&two_torsion_relation(TorsionKind::Circle, &ij)?, &circle_display)),
        holds("tree relation display", matches_up_to_sign(&two_torsion_relation(TorsionKind::Tree, &ijk)?, &tree_display)),
    ];
    for m in 2..=3 {
        let tgt = Presentation::cached(2 * m, 1, g)?;
        let fold = if m % 2 == 0 { Some(Presentation::cached(2 * m - 2, 1, g)?) } else { None };
        let mut in_kernel = true;
        let mut agrees = true;
        for a in words(&Label::all(g), m) {
            let x = one_loop_kernel_element(&a)?;
            let one = loop_part(&x, 1);
            let mut img = delta_prime_mod2(&one, &tgt)?;
            if let Some(f) = &fold {
                img.extend(fold_map(&one, f)?);
            }
            in_kernel &= img.iter().all(|&b| b == 0);
            agrees &= sym_relation_even(&one_loop_witness(&a)?)?.as_normal().mod2() == x.as_normal().mod2();
        }
        out.push(holds(format!("m={m} one-loop elements in the kernel"), in_kernel));
        out.push(holds(format!("m={m} even relation element"), agrees));
    }
    Ok(out)
}

fn eta_symmetry(max_n: usize, g: u8) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let mut ok = true;
        for d in enumerate_diagrams(n, 0, g)? {
            let t = iota_eta(&d)?;
            ok &= t.reversed(if n % 2 == 0 { 1 } else { -1 }) == t;
        }
        out.push(holds(format!("n={n} ι∘η reversal symmetric"), ok));
    }
    Ok(out)
}

fn a4_decomposition(g: u8) -> Result<Vec<Check>> {
    let gi = g as i128;
    let expected = [rank_d(4, 2 * g as u64), rank_a41(g as u64), gi * (2 * gi + 1), 1];
    let mut out = Vec::new();
    let mut total = 0;
    for (l, e) in expected.iter().enumerate() {
        let p = Presentation::cached(4, l, g)?;
        out.push(check(format!("rank A_4,{l}"), e, p.rank()));
        out.push(check(format!("torsion A_4,{l}"), "none", fmt_torsion(&p)));
        total += p.rank() as i128;
    }
    out.push(check("rank A_4", expected.iter().sum::<i128>(), total));
    Ok(out)
}
