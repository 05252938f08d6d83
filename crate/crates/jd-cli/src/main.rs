mod report;
mod suites;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use jd_core::dsl::{pretty, to_json};
use jd_core::maps::*;
use jd_core::necklace::{enumerate, kernel_report, orbit_representatives, Necklace};
use jd_core::relations::Presentation;
use jd_core::weight::{evaluate_sum, project, project_half, ConstantsJson, StructureConstants};
use jd_core::{parse, parse_genus, Diagram, DiagramSum, JdError};

use report::{Format, Report};

#[derive(Parser)]
#[command(name = "jd", version, about = "Jacobi diagrams modulo AS, IHX and self-loop relations")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    out: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a diagram and print its canonical form.
    Parse {
        expr: String,
        #[arg(long)]
        genus: Option<u8>,
    },
    /// Rank and invariant factors of a stratum.
    Module {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        loops: usize,
        #[arg(long, default_value_t = 1)]
        genus: u8,
        /// Quotient a 2-loop stratum by the theta diagrams with nonempty blocks.
        #[arg(long)]
        theta_quotient: bool,
        #[arg(long)]
        generators: bool,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1)]
        genus: u8,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value = "sl2")]
        system: String,
    },
    /// Apply a diagram map.
    Map {
        #[arg(long)]
        name: String,
        #[arg(long)]
        input: String,
        /// Leg index in reading order, for delta-v.
        #[arg(long)]
        leg: Option<usize>,
        #[arg(long)]
        genus: Option<u8>,
    },
    /// Evaluate a weight system.
    Weight {
        #[arg(long, default_value = "sl2")]
        system: String,
        #[arg(long)]
        input: String,
        /// Keep only monomials with this basis index.
        #[arg(long)]
        project: Option<u8>,
        /// Halve the projection (requires --project).
        #[arg(long, requires = "project")]
        half: bool,
    },
    /// Necklaces with arrow.
    Necklace {
        /// Number of beads, 2m.
        #[arg(long, required_unless_present = "inspect")]
        length: Option<usize>,
        #[arg(long, default_value_t = 1)]
        genus: u8,
        /// Cardinalities; the default action.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        kernel: bool,
        /// A necklace such as "O(1+,1- ^ 1-,1+)"; prints e, ι, 𝔪𝔥 and 𝔪𝔥𝔱.
        #[arg(long)]
        inspect: Option<String>,
    },
}

enum Failure {
    Err(JdError),
    Usage(String),
}

impl From<JdError> for Failure {
    fn from(e: JdError) -> Failure {
        Failure::Err(e)
    }
}

fn exit_code(e: &JdError) -> u8 {
    match e {
        JdError::Parse { .. } | JdError::Genus { .. } | JdError::Unpaired(_) => 2,
        JdError::Cap { .. } => 3,
        JdError::Domain(_) | JdError::Stratum(_) => 4,
    }
}

fn read_diagram(text: &str, genus: Option<u8>) -> Result<Diagram, JdError> {
    match genus {
        Some(g) => parse_genus(text, g),
        None => parse(text),
    }
}

fn constants(system: &str) -> Result<StructureConstants, Failure> {
    if system == "sl2" {
        return Ok(StructureConstants::sl2());
    }
    let text = std::fs::read_to_string(system).map_err(|e| Failure::Usage(format!("{system}: {e}")))?;
    let j: ConstantsJson = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{system}: {e}")))?;
    Ok(StructureConstants::from_json(&j)?)
}

fn sum_report(x: &DiagramSum) -> Report {
    let mut terms = Vec::new();
    let mut r = Report::new(Value::Null, vec!["coefficient", "diagram", "generic"]);
    for (d, c) in x.as_normal().terms() {
        let (sign, name) = pretty(d);
        let coeff = c * sign as i64;
        let generic = to_json(d).dsl;
        r.row(vec![coeff.to_string(), name.clone(), generic.clone()]);
        terms.push(json!({"coefficient": coeff, "diagram": name, "generic": generic}));
    }
    r.json = json!({ "terms": terms });
    r
}

fn cmd_parse(expr: &str, genus: Option<u8>) -> Result<Report, Failure> {
    let d = read_diagram(expr, genus)?;
    let j = to_json(&d);
    let (sign, name) = pretty(&d);
    let mut r = Report::new(json!({"input": expr, "name": name, "sign": sign, "diagram": j}), vec!["field", "value"]);
    for (k, v) in [
        ("name", name.clone()),
        ("sign", sign.to_string()),
        ("generic", j.dsl.clone()),
        ("ideg", j.ideg.to_string()),
        ("betti", j.betti.to_string()),
        ("legs", j.legs.to_string()),
        ("connected", j.connected.to_string()),
    ] {
        r.row(vec![k.into(), v]);
    }
    Ok(r)
}

fn cmd_module(n: usize, loops: usize, genus: u8, tq: bool, gens: bool) -> Result<Report, Failure> {
    let t = Instant::now();
    let p = if tq {
        if loops != 2 {
            return Err(Failure::Usage("--theta-quotient needs --loops 2".into()));
        }
        Presentation::theta_quotient(n, genus)?
    } else {
        Presentation::cached(n, loops, genus)?
    };
    let secs = t.elapsed().as_secs_f64();
    let torsion: Vec<String> = p.torsion().iter().map(|x| x.to_string()).collect();
    let mut j = json!({
        "n": n, "loops": loops, "genus": genus, "theta_quotient": tq,
        "generators": p.generators().len(), "relators": p.relator_rows().len(),
        "rank": p.rank(), "torsion": torsion, "seconds": secs,
    });
    if gens {
        j["generator_list"] = json!(p.generators().iter().map(|c| pretty(&c.rep).1).collect::<Vec<_>>());
    }
    let mut r = Report::new(j, vec!["field", "value"]);
    r.row(vec!["generators".into(), p.generators().len().to_string()]);
    r.row(vec!["rank".into(), p.rank().to_string()]);
    r.row(vec!["torsion".into(), suites::fmt_torsion(&p)]);
    r.row(vec!["seconds".into(), format!("{secs:.3}")]);
    Ok(r)
}

fn cmd_verify(suite: &str, params: &suites::Params) -> Result<(Report, bool), Failure> {
    if !suites::SUITES.contains(&suite) {
        return Err(Failure::Usage(format!("unknown suite {suite}; known: {}", suites::SUITES.join(", "))));
    }
    let checks = suites::run(suite, params)?;
    let pass = checks.iter().all(|c| c.pass);
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| json!({"check": c.name, "expected": c.expected, "got": c.got, "pass": c.pass}))
        .collect();
    let mut r = Report::new(json!({"suite": suite, "pass": pass, "checks": rows}), vec!["check", "expected", "got", "status"]);
    for c in &checks {
        r.row(vec![c.name.clone(), c.expected.clone(), c.got.clone(), if c.pass { "PASS" } else { "FAIL" }.into()]);
    }
    r.row(vec![suite.into(), String::new(), String::new(), if pass { "PASS" } else { "FAIL" }.into()]);
    Ok((r, pass))
}

fn cmd_map(name: &str, input: &str, leg: Option<usize>, genus: Option<u8>) -> Result<Report, Failure> {
    let d = read_diagram(input, genus)?;
    let one = |x: Diagram| DiagramSum::single(&x);
    let x = match name {
        "delta-prime" => delta_prime(&d)?,
        "delta-double-prime" => delta_double_prime(&d)?,
        "delta" => delta(&d)?,
        "delta-v" => {
            let legs = d.legs();
            let i = leg.ok_or_else(|| Failure::Usage("delta-v needs --leg".into()))?;
            let v = *legs.get(i).ok_or_else(|| Failure::Usage(format!("leg {i} out of range 0..{}", legs.len())))?;
            delta_v(&d, v)?
        }
        "bu" => one(bu(&d)?),
        "bd" => bd(&d)?,
        "eyeglass-to-theta" => eyeglass_to_theta(&d)?,
        "mirror" => one(d.mirror()),
        "normal" => one(d),
        "eta" | "iota-eta" => return eta_report(name, &d),
        _ => {
            return Err(Failure::Usage(format!(
                "unknown map {name}; known: delta-prime, delta-double-prime, delta, delta-v, bu, bd, eyeglass-to-theta, mirror, normal, eta, iota-eta"
            )))
        }
    };
    Ok(sum_report(&x))
}

fn word(w: &[jd_core::Label]) -> String {
    w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

fn eta_report(name: &str, d: &Diagram) -> Result<Report, Failure> {
    let mut r = Report::new(Value::Null, vec!["root", "coefficient", "word"]);
    let mut rows = Vec::new();
    let parts: Vec<(String, TensorWord)> = if name == "eta" {
        eta(d)?.into_iter().map(|(l, t)| (l.to_string(), t)).collect()
    } else {
        vec![(String::new(), iota_eta(d)?)]
    };
    for (root, t) in parts {
        for (w, c) in t.terms() {
            r.row(vec![root.clone(), c.to_string(), word(w)]);
            rows.push(json!({"root": root, "coefficient": c, "word": word(w)}));
        }
    }
    r.json = json!({ "terms": rows });
    Ok(r)
}

fn cmd_weight(system: &str, input: &str, proj: Option<u8>, half: bool) -> Result<Report, Failure> {
    let c = constants(system)?;
    let v = c.validate();
    if !v.is_empty() {
        return Err(Failure::Usage(format!("constants violate {} axiom instances, first {:?} at {:?}", v.len(), v[0].axiom, v[0].at)));
    }
    let x = DiagramSum::single(&parse(input)?);
    let w = match (proj, half) {
        (Some(m), true) => project_half(&c, &x, m)?,
        (Some(m), false) => project(&evaluate_sum(&c, &x), m),
        (None, _) => evaluate_sum(&c, &x),
    };
    let mut r = Report::new(Value::Null, vec!["coefficient", "monomial"]);
    let mut rows = Vec::new();
    for (mono, k) in w.terms() {
        let m: Vec<String> = mono.iter().map(|(l, e)| format!("{l}⊗e{e}")).collect();
        r.row(vec![k.to_string(), m.join(" ")]);
        rows.push(json!({"coefficient": k, "monomial": mono.iter().map(|(l, e)| json!([l.to_string(), e])).collect::<Vec<_>>()}));
    }
    r.json = json!({"system": system, "half": half, "project": proj, "terms": rows});
    Ok(r)
}

fn cmd_necklace(length: Option<usize>, g: u8, list: bool, kernel: bool, inspect: Option<String>) -> Result<Report, Failure> {
    if let Some(text) = inspect {
        let x = Necklace::parse(&text)?;
        let y = x.iota();
        let dp = x.kind == jd_core::necklace::ArrowKind::DoublePrime;
        let name = |d: Result<Diagram, JdError>| d.map(|d| pretty(&d).1).unwrap_or_default();
        let (mh, mht) = if dp { (name(x.mh()), name(x.mht())) } else { (String::new(), String::new()) };
        let mut r = Report::new(
            json!({"necklace": x.to_string(), "kind": x.kind, "e": x.period_exponent(), "iota": y.to_string(), "mh": mh, "mht": mht}),
            vec!["field", "value"],
        );
        for (k, v) in [("kind", format!("{:?}", x.kind)), ("e", x.period_exponent().to_string()), ("iota", y.to_string()), ("mh", mh), ("mht", mht)] {
            r.row(vec![k.into(), v]);
        }
        return Ok(r);
    }
    let m = match length {
        Some(l) if l % 2 == 0 && l > 0 => l / 2,
        _ => return Err(Failure::Usage("--length must be a positive even bead count".into())),
    };
    if kernel {
        let k = kernel_report(m, g)?;
        let basis: Vec<Value> = k.basis.iter().map(|s| sum_report(s).json).collect();
        let mut r = Report::new(
            json!({"m": m, "genus": g, "torsion_rank": k.torsion_rank, "kernel_rank": k.kernel_rank, "span_rank": k.span_rank,
                   "joint_rank": k.joint_rank, "expected": k.expected, "holds": k.holds(), "basis": basis}),
            vec!["field", "value"],
        );
        for (f, v) in [("torsion_rank", k.torsion_rank), ("kernel_rank", k.kernel_rank), ("span_rank", k.span_rank), ("joint_rank", k.joint_rank)] {
            r.row(vec![f.into(), v.to_string()]);
        }
        r.row(vec!["expected".into(), k.expected.to_string()]);
        return Ok(r);
    }
    let (p, d) = enumerate(m, g)?;
    let all: Vec<Necklace> = p.iter().chain(&d).cloned().collect();
    let orbits = orbit_representatives(&all).len();
    if list {
        let mut r = Report::new(Value::Null, vec!["kind", "necklace", "e", "iota"]);
        let mut rows = Vec::new();
        for x in &all {
            r.row(vec![format!("{:?}", x.kind), x.to_string(), x.period_exponent().to_string(), x.iota().to_string()]);
            rows.push(json!({"kind": x.kind, "necklace": x.to_string(), "e": x.period_exponent(), "iota": x.iota().to_string()}));
        }
        r.json = json!({ "necklaces": rows });
        return Ok(r);
    }
    let mut r = Report::new(json!({"prime": p.len(), "doublePrime": d.len(), "orbits": orbits}), vec!["field", "value"]);
    r.row(vec!["prime".into(), p.len().to_string()]);
    r.row(vec!["doublePrime".into(), d.len().to_string()]);
    r.row(vec!["orbits".into(), orbits.to_string()]);
    Ok(r)
}

fn run(cli: Cli) -> Result<(Report, bool), Failure> {
    let ok = |r: Report| Ok((r, true));
    match cli.cmd {
        Cmd::Parse { expr, genus } => ok(cmd_parse(&expr, genus)?),
        Cmd::Module { n, loops, genus, theta_quotient, generators } => ok(cmd_module(n, loops, genus, theta_quotient, generators)?),
        Cmd::Verify { suite, genus, m, n, k, system } => {
            let params = suites::Params { genus, m, n, k, system: constants(&system)? };
            cmd_verify(&suite, &params)
        }
        Cmd::Map { name, input, leg, genus } => ok(cmd_map(&name, &input, leg, genus)?),
        Cmd::Weight { system, input, project, half } => ok(cmd_weight(&system, &input, project, half)?),
        Cmd::Necklace { length, genus, list, kernel, inspect, .. } => ok(cmd_necklace(length, genus, list, kernel, inspect)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let fmt = cli.out;
    match run(cli) {
        Ok((r, pass)) => {
            if let Err(e) = r.emit(fmt) {
                eprintln!("jd: {e}");
                return ExitCode::from(1);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("jd: {msg}");
            ExitCode::from(4)
        }
        Err(Failure::Err(e)) => {
            eprintln!("jd: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
