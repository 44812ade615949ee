use std::fmt::Write as _;

use drinfeld::double::Double;
use drinfeld::fusion::{
    check_round_trip_from_fusion, check_round_trip_from_hopf, enumerate_fusion_data, is_normal_fusion,
};
use drinfeld::group::{conjugacy_classes, Caps, Group, GroupInput};
use drinfeld::hopf::{build_hopf, enumerate_hopf_data, is_normal_bruteforce, is_normal_datum};
use drinfeld::verify::{sample_indices, verify_suite, Depth};
use drinfeld::{Error, Result};
use serde_json::{json, Value};

use crate::{Cli, Command};

/// Data checked by `--brute-force` when `--seed` asks for a sample.
const SAMPLE_SIZE: usize = 500;

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, code: 0 }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn labels(g: &Group, elements: &[usize]) -> String {
    let parts: Vec<String> = elements.iter().map(|&x| g.label(x)).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn run(cli: &Cli, input: &GroupInput, caps: Caps) -> Result<Output> {
    let name = input.name();
    if let Command::Verify = cli.command {
        let g = input.build_unverified(caps)?;
        let report = verify_suite(&g, &name, Depth::Full, caps)?;
        let text = if cli.json {
            pretty(&report.to_json())
        } else {
            format!("{report}\n")
        };
        let code = if report.passed() { 0 } else { 3 };
        if let Some(f) = report.first_failure() {
            eprintln!(
                "theorem violated: {} ({})",
                f.name,
                f.counterexample.as_deref().unwrap_or("no detail")
            );
        }
        return Ok(Output { text, code });
    }
    let g = input.build(caps)?;
    match &cli.command {
        Command::Classes => classes(&g, &name, cli.json),
        Command::Chartable => chartable(&g, &name, cli.json),
        Command::DoubleIrreps => double_irreps(&Double::new(&g)?, cli.json),
        Command::DoubleKernel { rep } => double_kernel(&Double::new(&g)?, rep, cli.json),
        Command::CenterBasis => center_basis(&Double::new(&g)?, &name, cli.json),
        Command::HopfEnumerate { normal, brute_force } => {
            hopf_enumerate(&Double::new(&g)?, *normal, *brute_force, cli.seed, caps, cli.json)
        }
        Command::FusionEnumerate { normal } => fusion_enumerate(&Double::new(&g)?, *normal, caps, cli.json),
        Command::Correspond => correspond(&Double::new(&g)?, caps, cli.json),
        Command::Verify => unreachable!("handled above"),
    }
}

fn classes(g: &Group, name: &str, as_json: bool) -> Result<Output> {
    let cl = conjugacy_classes(g);
    if as_json {
        let rows: Vec<Value> = (0..cl.len())
            .map(|c| {
                let r = cl.representative(c);
                json!({
                    "index": c,
                    "size": cl.size(c),
                    "order": g.element_order(r),
                    "representative": r,
                    "elements": cl.class(c),
                })
            })
            .collect();
        return Ok(Output::ok(pretty(&json!({ "group": name, "order": g.order(), "classes": rows }))));
    }
    let mut s = format!("{name}: order {}, {} classes\n", g.order(), cl.len());
    writeln!(s, "{:>5} {:>5} {:>5}  representative", "class", "size", "order").unwrap();
    for c in 0..cl.len() {
        let r = cl.representative(c);
        writeln!(s, "{c:>5} {:>5} {:>5}  {}", cl.size(c), g.element_order(r), g.label(r)).unwrap();
    }
    Ok(Output::ok(s))
}

fn chartable(g: &Group, name: &str, as_json: bool) -> Result<Output> {
    let t = drinfeld::chartable::character_table(g)?;
    if as_json {
        return Ok(Output::ok(pretty(&t.to_json(name))));
    }
    let mut s = format!("{name}: {} irreducible characters, values in Q(z{})\n", t.len(), t.value_order());
    writeln!(s, "class sizes: {:?}", t.classes().sizes()).unwrap();
    for (i, chi) in t.irreducibles().iter().enumerate() {
        let vals: Vec<String> = chi.values().iter().map(ToString::to_string).collect();
        writeln!(s, "χ{i}: {}", vals.join(" | ")).unwrap();
    }
    Ok(Output::ok(s))
}

fn double_irreps(d: &Double, as_json: bool) -> Result<Output> {
    if as_json {
        let rows: Vec<Value> = (0..d.len()).map(|i| d.irrep_json(i)).collect();
        return Ok(Output::ok(pretty(&Value::Array(rows))));
    }
    let g = d.group();
    let mut s = format!("{} irreducible modules\n", d.len());
    writeln!(s, "{:>6}  {:>14}  {:>9}", "rep", "representative", "dimension").unwrap();
    for r in d.irreps() {
        let rep = g.label(d.classes().representative(r.class_index));
        writeln!(s, "{:>6}  {rep:>14}  {:>9}", r.address(), r.dimension).unwrap();
    }
    let total: u64 = d.irreps().iter().map(|r| r.dimension * r.dimension).sum();
    writeln!(s, "sum of squared dimensions: {total}").unwrap();
    Ok(Output::ok(s))
}

fn double_kernel(d: &Double, rep: &str, as_json: bool) -> Result<Output> {
    let i = d.parse_address(rep)?;
    let g = d.group();
    let kernel = d.double_kernel(i);
    let st = d.double_kernel_structured(i)?;
    if as_json {
        let v = json!({
            "rep": d.irrep(i).address(),
            "kernel": kernel.iter().map(|l| json!({ "chi": l.chi, "l": l.l })).collect::<Vec<_>>(),
            "structured": { "f0_order": st.s, "l0": st.l0, "M0": st.m0.elements() },
        });
        return Ok(Output::ok(pretty(&v)));
    }
    let mut s = format!("kernel of {}: {} labels\n", d.irrep(i).address(), kernel.len());
    for l in &kernel {
        writeln!(s, "  χ{} ⋈ {}", l.chi, g.label(l.l)).unwrap();
    }
    writeln!(
        s,
        "structured: f0 of order {}, l0 = {}, M0 = {}",
        st.s,
        g.label(st.l0),
        labels(g, st.m0.elements())
    )
    .unwrap();
    Ok(Output::ok(s))
}

fn center_basis(d: &Double, name: &str, as_json: bool) -> Result<Output> {
    let basis = d.central_character_basis();
    if as_json {
        let rows: Vec<Value> = basis.iter().map(|&(p, z)| json!({ "p_class": p, "z_class": z })).collect();
        return Ok(Output::ok(pretty(&json!({ "group": name, "count": basis.len(), "basis": rows }))));
    }
    let g = d.group();
    let mut s = format!("{} central characters p_D ⋈ z_C\n", basis.len());
    for (p, z) in basis {
        let (a, b) = (d.classes().representative(p), d.classes().representative(z));
        writeln!(s, "  D = class {p} ({}), C = class {z} ({})", g.label(a), g.label(b)).unwrap();
    }
    Ok(Output::ok(s))
}

fn hopf_enumerate(
    d: &Double,
    normal_only: bool,
    brute_force: bool,
    seed: Option<u64>,
    caps: Caps,
    as_json: bool,
) -> Result<Output> {
    let g = d.group();
    let entries = enumerate_hopf_data(d, normal_only, caps)?;
    let data: Vec<_> = entries.iter().flat_map(|e| e.data.iter()).collect();
    let checked = match (brute_force, seed) {
        (false, _) => Vec::new(),
        (true, None) => (0..data.len()).collect(),
        (true, Some(s)) => sample_indices(data.len(), SAMPLE_SIZE, s),
    };
    let mut rows = Vec::with_capacity(data.len());
    let mut text = format!("{} Hopf subalgebras from {} data\n", entries.len(), data.len());
    let mut next = checked.iter().peekable();
    for (k, datum) in data.iter().enumerate() {
        let normal = is_normal_datum(g, datum);
        let mut row = datum.to_json(g, normal);
        if next.peek() == Some(&&k) {
            next.next();
            let brute = is_normal_bruteforce(d, &build_hopf(d, datum)?)?;
            if brute != normal {
                return Err(Error::violated(
                    "normald(g)",
                    serde_json::to_string(&row).expect("json"),
                ));
            }
            row["normal_bruteforce"] = json!(brute);
        }
        writeln!(
            text,
            "  dim {:>4}  {}  N = {}  M = {}  |X| = {}",
            datum.dimension(g),
            if normal { "normal    " } else { "not normal" },
            labels(g, datum.n().elements()),
            labels(g, datum.m().elements()),
            datum.x().len()
        )
        .unwrap();
        rows.push(row);
    }
    if brute_force {
        writeln!(text, "normality confirmed against the integral on {} data", checked.len()).unwrap();
    }
    Ok(Output::ok(if as_json { pretty(&Value::Array(rows)) } else { text }))
}

fn fusion_enumerate(d: &Double, normal_only: bool, caps: Caps, as_json: bool) -> Result<Output> {
    let g = d.group();
    let mut rows = Vec::new();
    let mut text = String::new();
    for fd in enumerate_fusion_data(d, caps)? {
        let normal = is_normal_fusion(g, &fd);
        if normal_only && !normal {
            continue;
        }
        let row = fd.to_json(d, normal)?;
        let objects: Vec<String> = row["objects"]
            .as_array()
            .expect("objects")
            .iter()
            .map(|o| o.as_str().expect("address").to_string())
            .collect();
        writeln!(
            text,
            "  K = {}  H = {}  {}  objects [{}]",
            labels(g, fd.k().elements()),
            labels(g, fd.h().elements()),
            if normal { "normal    " } else { "not normal" },
            objects.join(" ")
        )
        .unwrap();
        rows.push(row);
    }
    let text = format!("{} fusion subcategories\n{text}", rows.len());
    Ok(Output::ok(if as_json { pretty(&Value::Array(rows)) } else { text }))
}

fn correspond(d: &Double, caps: Caps, as_json: bool) -> Result<Output> {
    let g = d.group();
    let mut pairs = Vec::new();
    let mut text = String::new();
    for entry in enumerate_hopf_data(d, true, caps)? {
        for datum in &entry.data {
            let fd = check_round_trip_from_hopf(d, datum)?;
            let fusion = fd.to_json(d, true)?;
            writeln!(
                text,
                "  Hopf dim {:>4} N = {} M = {}  ->  objects {}",
                datum.dimension(g),
                labels(g, datum.n().elements()),
                labels(g, datum.m().elements()),
                fusion["objects"]
            )
            .unwrap();
            pairs.push(json!({ "hopf": datum.to_json(g, true), "fusion": fusion }));
        }
    }
    let mut reverse = 0;
    for fd in enumerate_fusion_data(d, caps)? {
        if is_normal_fusion(g, &fd) {
            check_round_trip_from_fusion(d, &fd)?;
            reverse += 1;
        }
    }
    if as_json {
        let v = json!({ "pairs": pairs, "normal_fusion_round_trips": reverse });
        return Ok(Output::ok(pretty(&v)));
    }
    let head = format!(
        "{} normal Hopf data mapped and inverted; {reverse} normal fusion data round-tripped\n",
        pairs.len()
    );
    Ok(Output::ok(head + &text))
}
