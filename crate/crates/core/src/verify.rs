//! The full invariant suite: every structural statement the toolkit relies
//! on, checked exhaustively on one group and reported check by check.

use std::fmt;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chartable::{stable_linear_characters, CharacterTable};
use crate::double::{Double, DualIrrepLabel, LabelSet};
use crate::error::{Error, Result};
use crate::fusion::{
    centrality_of_regular_character, check_round_trip_from_fusion, check_round_trip_from_hopf,
    datum_from_subcategory, enumerate_fusion_data, fusion_from_datum, is_normal_fusion,
};
use crate::group::{conjugacy_classes, Caps, Group};
use crate::hopf::{
    build_hopf, enumerate_hopf_data, is_normal_bruteforce, is_normal_datum, kernel_to_datum, HopfDatum,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    /// Everything except enumeration of Hopf and fusion data.
    Quick,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: Status,
    /// Number of instances checked.
    pub instances: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub group: String,
    pub order: usize,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify {} (order {})", self.group, self.order)?;
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            write!(f, "  [{tag}] {:<28} {:>6}", c.name, c.instances)?;
            if let Some(ce) = &c.counterexample {
                write!(f, "  counterexample: {ce}")?;
            }
            writeln!(f)?;
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        write!(f, "{} checks, {failed} failed", self.checks.len())
    }
}

struct Runner {
    checks: Vec<CheckOutcome>,
}

impl Runner {
    /// Records one check. Cap errors abort the suite; every other error
    /// marks the check failed with the error as counterexample.
    fn run(&mut self, name: &'static str, f: impl FnOnce() -> Result<usize>) -> Result<bool> {
        match f() {
            Ok(instances) => {
                self.checks.push(CheckOutcome {
                    name,
                    status: Status::Pass,
                    instances,
                    counterexample: None,
                });
                Ok(true)
            }
            Err(e) if e.is_cap() => Err(e),
            Err(e) => {
                self.checks.push(CheckOutcome {
                    name,
                    status: Status::Fail,
                    instances: 0,
                    counterexample: Some(e.to_string()),
                });
                Ok(false)
            }
        }
    }

    fn skip(&mut self, names: &[&'static str]) {
        for &name in names {
            self.checks.push(CheckOutcome {
                name,
                status: Status::Skipped,
                instances: 0,
                counterexample: None,
            });
        }
    }
}

const TABLE_DEPENDENT: &[&str] = &[
    "lemma groupzeros",
    "lemma multip",
    "lemma compairs",
    "lemma charnh",
    "lemma z",
    "lemma valus",
    "frobenius reciprocity",
    "double dimensions",
    "double character formula",
    "fusion orthonormality",
    "lemma centrality",
    "kernel structure",
    "kernel of (1, γ)",
    "z-sets",
    "kernel decomposition",
    "central pairs",
    "hopf normality",
    "main vs main2",
    "fusion parametrization",
    "quotient correspondence",
    "prop ka",
    "prop ka successor",
];

fn fail(check: &str, detail: String) -> Error {
    Error::violated(check, detail)
}

/// Runs the suite on `g`, computing its character table.
pub fn verify_suite(g: &Group, name: &str, depth: Depth, caps: Caps) -> Result<VerifyReport> {
    let mut runner = Runner { checks: Vec::new() };
    if !runner.run("group axioms", || g.check_axioms().map(|_| g.order() * g.order()))? {
        runner.skip(&["table orthogonality"]);
        runner.skip(TABLE_DEPENDENT);
        return Ok(report(g, name, runner));
    }
    let mut table = None;
    runner.run("table orthogonality", || {
        let t = crate::chartable::character_table(g)?;
        let n = t.len();
        table = Some(t);
        Ok(n * n)
    })?;
    match table {
        Some(t) => run_with_table(g, name, t, depth, caps),
        None => {
            runner.skip(TABLE_DEPENDENT);
            Ok(report(g, name, runner))
        }
    }
}

/// Runs the suite against a supplied table of `g` (checked first).
pub fn run_with_table(g: &Group, name: &str, table: CharacterTable, depth: Depth, caps: Caps) -> Result<VerifyReport> {
    let mut r = Runner { checks: Vec::new() };
    r.run("group axioms", || g.check_axioms().map(|_| g.order() * g.order()))?;
    let ok = r.run("table orthogonality", || {
        table.check_orthogonality()?;
        Ok(table.len() * table.len())
    })?;
    if !ok {
        r.skip(TABLE_DEPENDENT);
        return Ok(report(g, name, r));
    }
    let classes = conjugacy_classes(g);
    let normals = g.normal_subgroups(&classes, caps)?;
    let e = g.exponent();
    let index = |n: usize, d: usize| BigRational::new(n.into(), d.into());

    r.run("lemma groupzeros", || {
        let mut count = 0;
        for n in &normals {
            let nt = CharacterTable::for_subgroup(g, n, e)?;
            for alpha in nt.irreducibles() {
                let ind = nt.induce(alpha, &table)?;
                let stable = (0..g.order()).all(|x| {
                    nt.embedding().iter().all(|&y| nt.value_ambient(alpha, g.conj(x, y)) == nt.value_ambient(alpha, y))
                });
                for y in 0..g.order() {
                    let v = table.value(&ind, y);
                    match nt.value_ambient(alpha, y) {
                        None if !v.is_zero() => {
                            return Err(fail("groupzeros", format!("induced character nonzero at {} outside N", g.label(y))))
                        }
                        Some(a) if stable && *v != a.scale(&index(g.order(), n.order())) => {
                            return Err(fail("groupzeros", format!("stable induction wrong at {}", g.label(y))))
                        }
                        _ => {}
                    }
                }
                count += 1;
            }
        }
        Ok(count)
    })?;

    r.run("lemma multip", || {
        let mut count = 0;
        for n in &normals {
            let st = stable_linear_characters(g, n)?;
            let nt = st.table();
            let up = |i: usize| nt.induce(&st.element(i).to_character(nt), &table);
            for i in 0..st.len() {
                for j in 0..st.len() {
                    let lhs = up(i)?.product(&up(j)?);
                    let rhs = up(st.mul(i, j))?.scale(&index(g.order(), n.order()));
                    if lhs != rhs {
                        return Err(fail("multip", format!("x↑x'↑ ≠ [G:N](xx')↑ for |N| = {}", n.order())));
                    }
                    count += 1;
                }
            }
        }
        Ok(count)
    })?;

    r.run("lemma compairs", || {
        for &a in classes.representatives() {
            let na = g.normal_closure(a);
            let core = g.core(&g.centralizer(a));
            if !g.commute_elementwise(&na, &core) {
                return Err(fail("compairs", format!("N({0}) and core C({0}) do not commute", g.label(a))));
            }
        }
        Ok(classes.len())
    })?;

    r.run("lemma charnh", || {
        for &h in classes.representatives() {
            let nh = g.normal_closure(h);
            for (i, chi) in table.irreducibles().iter().enumerate() {
                let fixed = table.value(chi, h) == chi.degree();
                let over = nh.is_subgroup_of(&table.kernel_of_character(chi));
                if fixed != over {
                    return Err(fail("charnh", format!("χ_{i} at {}", g.label(h))));
                }
            }
        }
        Ok(classes.len() * table.len())
    })?;

    r.run("lemma z", || {
        for &h in classes.representatives() {
            let nh = g.normal_closure(h);
            let gn = g.commutator_subgroup(&g.whole(), &nh);
            for (i, chi) in table.irreducibles().iter().enumerate() {
                let scalar = table.value(chi, h).abs_sq() == chi.degree().abs_sq();
                let over = gn.is_subgroup_of(&table.kernel_of_character(chi));
                if scalar != over {
                    return Err(fail("z", format!("χ_{i} at {}", g.label(h))));
                }
            }
        }
        Ok(classes.len() * table.len())
    })?;

    r.run("lemma valus", || {
        let mut count = 0;
        for &h in classes.representatives() {
            let nh = g.normal_closure(h);
            let nt = CharacterTable::for_subgroup(g, &nh, e)?;
            let eps_up = nt.induce(&nt.trivial(), &table)?;
            for chi in table.irreducibles() {
                let w = table.value(chi, h);
                if w.abs_sq() != chi.degree().abs_sq() {
                    continue;
                }
                let prod = chi.product(&eps_up);
                for (m, mu) in table.irreducibles().iter().enumerate() {
                    if table.value(mu, h) * chi.degree() == w * mu.degree() {
                        if table.inner_product(&prod, mu)?.is_zero() {
                            return Err(fail("valus", format!("μ_{m} missing at {}", g.label(h))));
                        }
                        count += 1;
                    }
                }
            }
        }
        Ok(count)
    })?;

    let d = match Double::new(g) {
        Ok(d) => d,
        Err(err) if err.is_cap() => return Err(err),
        Err(err) => {
            r.run("frobenius reciprocity", || Err(err))?;
            r.skip(&TABLE_DEPENDENT[7..]);
            return Ok(report(g, name, r));
        }
    };

    r.run("frobenius reciprocity", || {
        let mut count = 0;
        for c in 0..classes.len() {
            let ct = d.centralizer_table(c);
            ct.check_orthogonality()?;
            for alpha in ct.irreducibles() {
                let up = ct.induce(alpha, &table)?;
                for chi in table.irreducibles() {
                    let down = table.restrict(chi, ct)?;
                    if table.inner_product(&up, chi)? != ct.inner_product(alpha, &down)? {
                        return Err(fail("frobenius", format!("centralizer of class {c}")));
                    }
                    count += 1;
                }
            }
        }
        Ok(count)
    })?;

    r.run("double dimensions", || {
        let total: u64 = d.irreps().iter().map(|r| r.dimension * r.dimension).sum();
        let n = g.order() as u64;
        if total != n * n {
            return Err(fail("double dimensions", format!("Σ dim² = {total}, |G|² = {}", n * n)));
        }
        Ok(d.len())
    })?;

    r.run("double character formula", || {
        let n = g.order();
        for i in 0..d.len() {
            let ch = d.double_character(i);
            for x in 0..n {
                for l in 0..n {
                    if d.value_on(ch, x, l) != d.character_by_formula(i, x, l) {
                        return Err(fail(
                            "formula",
                            format!("{} at ({}, {})", d.irrep(i).address(), g.label(x), g.label(l)),
                        ));
                    }
                }
            }
        }
        Ok(d.len() * n * n)
    })?;

    r.run("fusion orthonormality", || {
        let f = d.fusion_table()?;
        for i in 0..d.len() {
            for j in 0..d.len() {
                let (a, b) = (&d.double_character(i).values, &d.double_character(j).values);
                let p = d.orbit_pairing(a, b);
                if depth == Depth::Full && p != d.integral_pairing(a, b) {
                    return Err(Error::OrthogonalityBroken(format!("pairings differ at ({i}, {j})")));
                }
                if p.to_integer() != Some(((i == j) as i64).into()) {
                    return Err(Error::OrthogonalityBroken(format!("⟨{i}, {j}⟩ = {p}")));
                }
                if f.multiplicity(i, j, 0) != (f.dual(i) == j) as u32 {
                    return Err(Error::OrthogonalityBroken(format!("unit in {i} ⊗ {j}")));
                }
            }
        }
        Ok(d.len() * d.len())
    })?;

    r.run("lemma centrality", || {
        let r = classes.len();
        for dd in 0..r {
            for c in 0..r {
                let el = d.class_pair_element(dd, c);
                if d.is_central_in_double(&el) != d.is_central_in_double_fast(&el) {
                    return Err(fail("centrality", format!("p_D ⋈ z_C for classes ({dd}, {c})")));
                }
            }
        }
        Ok(r * r)
    })?;

    r.run("kernel structure", || {
        for i in 0..d.len() {
            let datum = kernel_to_datum(&d, i)?;
            let desc = build_hopf(&d, &datum)?;
            if !is_normal_bruteforce(&d, &desc)? {
                return Err(fail("kerndescr", format!("integral of the kernel of {} is not central", d.irrep(i).address())));
            }
        }
        Ok(d.len())
    })?;

    r.run("kernel of (1, γ)", || {
        for gi in 0..d.centralizer_table(0).len() {
            let i = d.index_of(0, gi).expect("identity class irreps");
            let ct = d.centralizer_table(0);
            let ker = ct.to_ambient(g, &ct.kernel_of_character(ct.irr(gi)));
            let expected: LabelSet = (0..table.len())
                .flat_map(|chi| ker.elements().iter().map(move |&l| DualIrrepLabel { chi, l }))
                .collect();
            if d.double_kernel(i) != expected {
                return Err(fail("corollary", format!("kernel of (1, γ_{gi})")));
            }
        }
        Ok(d.centralizer_table(0).len())
    })?;

    r.run("z-sets", || {
        for i in 0..d.len() {
            d.double_z(i)?;
        }
        Ok(d.len())
    })?;

    r.run("kernel decomposition", || {
        for i in 0..d.len() {
            d.goursat_decompose(&d.double_kernel(i))?;
        }
        Ok(d.len())
    })?;

    r.run("central pairs", || {
        let pairs = d.central_character_basis().len();
        let dual = d.center_dimension_dual();
        let double = d.center_dimension_double();
        if pairs != dual || pairs != double {
            return Err(fail("ctrl", format!("{pairs} pairs, dual centre {dual}, double centre {double}")));
        }
        Ok(pairs)
    })?;

    let ka = |n, m| -> Result<()> {
        let datum = HopfDatum::with_trivial_x(g, n, m)?;
        let desc = build_hopf(&d, &datum)?;
        if !is_normal_datum(g, &datum) || !is_normal_bruteforce(&d, &desc)? {
            return Err(fail("ka", format!("datum of dimension {} is not normal", datum.dimension(g))));
        }
        Ok(())
    };

    if depth == Depth::Full {
        r.run("hopf normality", || {
            let mut count = 0;
            for entry in enumerate_hopf_data(&d, false, caps)? {
                if !d.is_label_closed(&entry.description.labels())? {
                    return Err(fail("genhopfdg", "a datum's label set is not closed".into()));
                }
                for datum in &entry.data {
                    let desc = build_hopf(&d, datum)?;
                    let fast = is_normal_datum(g, datum);
                    if fast != is_normal_bruteforce(&d, &desc)? {
                        return Err(fail(
                            "normald(g)",
                            serde_json::to_string(&datum.to_json(g, fast)).expect("json"),
                        ));
                    }
                    count += 1;
                }
            }
            Ok(count)
        })?;

        let fusion_data = enumerate_fusion_data(&d, caps);
        r.run("main vs main2", || {
            let data = fusion_data.clone()?;
            for fd in &data {
                let sub = fusion_from_datum(&d, fd)?;
                if is_normal_fusion(g, fd) != centrality_of_regular_character(&d, &sub) {
                    return Err(fail("main2", serde_json::to_string(&fd.to_json(&d, is_normal_fusion(g, fd))?).expect("json")));
                }
            }
            Ok(data.len())
        })?;

        r.run("fusion parametrization", || {
            let data = fusion_data.clone()?;
            for fd in &data {
                let sub = fusion_from_datum(&d, fd)?;
                if &datum_from_subcategory(&d, &sub)? != fd {
                    return Err(Error::ParametrizationViolated(format!("round trip of {:?}", sub.addresses(&d))));
                }
            }
            Ok(data.len())
        })?;

        r.run("quotient correspondence", || {
            let mut count = 0;
            for entry in enumerate_hopf_data(&d, true, caps)? {
                for datum in &entry.data {
                    check_round_trip_from_hopf(&d, datum)?;
                    count += 1;
                }
            }
            for fd in fusion_data.clone()? {
                if is_normal_fusion(g, &fd) {
                    check_round_trip_from_fusion(&d, &fd)?;
                    count += 1;
                }
            }
            Ok(count)
        })?;
    } else {
        r.skip(&["hopf normality", "main vs main2", "fusion parametrization", "quotient correspondence"]);
    }

    r.run("prop ka", || ka(g.whole(), g.center()).map(|_| 1))?;
    r.run("prop ka successor", || ka(g.center(), g.whole()).map(|_| 1))?;

    Ok(report(g, name, r))
}

fn report(g: &Group, name: &str, r: Runner) -> VerifyReport {
    VerifyReport {
        group: name.to_string(),
        order: g.order(),
        checks: r.checks,
    }
}

/// Sorted sample of `k` distinct indices below `len`, or all of them when
/// `len <= k`. Deterministic in `seed`.
pub fn sample_indices(len: usize, k: usize, seed: u64) -> Vec<usize> {
    if len <= k {
        return (0..len).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = rand::seq::index::sample(&mut rng, len, k).into_vec();
    out.sort_unstable();
    out
}

/// Wall-clock helper for callers that report timings.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}
