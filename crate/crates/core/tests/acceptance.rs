//! Acceptance suite: one line per criterion, all comparisons exact.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::{fusion_catalogue, group};
use drinfeld::double::{Double, DualIrrepLabel, LabelSet};
use drinfeld::fusion::{centrality_of_regular_character, enumerate_fusion_data, fusion_from_datum, is_normal_fusion};
use drinfeld::group::Caps;
use drinfeld::hopf::{build_hopf, enumerate_hopf_data, is_normal_bruteforce, is_normal_datum, kernel_to_datum, HopfDatum};
use drinfeld::verify::{sample_indices, verify_suite, Depth, Status};

const CORPUS: [&str; 7] = ["C6", "S3", "D8", "Q8", "A4", "S4", "S3xC2"];
/// Groups on which classification results are checked exhaustively.
const SMALL: [&str; 3] = ["S3", "D8", "Q8"];
/// Wall-clock budget for building every corpus double, in seconds.
const RUNTIME_BUDGET_SECS: f64 = 10.0;
const S4_SAMPLE: usize = 500;
const S4_SEED: u64 = 2024;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(bad: Vec<String>, detail: String) -> Outcome {
    let passed = bad.is_empty();
    let detail = if passed { detail } else { format!("{detail}; failures: {}", bad.join(", ")) };
    Outcome { passed, detail }
}

fn doubles() -> Vec<(&'static str, Double)> {
    CORPUS.iter().map(|&n| (n, Double::new(&group(n)).unwrap())).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for name in CORPUS {
        let g = group(name);
        let d = Double::new(&g).unwrap();
        let sum: u64 = d.irreps().iter().map(|r| r.dimension * r.dimension).sum();
        if sum != (g.order() * g.order()) as u64 {
            bad.push(format!("{name}: Σ dim² = {sum}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= RUNTIME_BUDGET_SECS {
        bad.push(format!("runtime {secs:.2}s ≥ {RUNTIME_BUDGET_SECS}s"));
    }
    outcome(bad, format!("Σ dim² = |G|² on {} groups in {secs:.2}s", CORPUS.len()))
}

fn criterion_2(ds: &[(&str, Double)]) -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for (name, d) in ds {
        for i in 0..d.len() {
            count += 1;
            let st = d.double_kernel_structured(i).unwrap();
            let mut structured = LabelSet::new();
            let mut overlap = false;
            for (chis, coset) in &st.blocks {
                for &chi in chis {
                    for &l in coset {
                        overlap |= !structured.insert(DualIrrepLabel { chi, l });
                    }
                }
            }
            let normal = kernel_to_datum(d, i).and_then(|datum| {
                let desc = build_hopf(d, &datum)?;
                Ok(is_normal_datum(d.group(), &datum) && is_normal_bruteforce(d, &desc)?)
            });
            if overlap || structured != d.double_kernel(i) || !matches!(normal, Ok(true)) {
                bad.push(format!("{name} {}", d.irrep(i).address()));
            }
        }
    }
    outcome(bad, format!("structured kernels on {count} irreducibles"))
}

fn criterion_3(ds: &[(&str, Double)]) -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for (name, d) in ds {
        let g = d.group();
        let ct = d.centralizer_table(0);
        for gi in 0..ct.len() {
            count += 1;
            let gamma = ct.irr(gi);
            // ker γ by definition: γ(l) = γ(1).
            let ker: Vec<usize> = (0..g.order())
                .filter(|&l| ct.value_ambient(gamma, l) == Some(gamma.degree()))
                .collect();
            let expected: LabelSet = (0..d.table().len())
                .flat_map(|chi| ker.iter().map(move |&l| DualIrrepLabel { chi, l }))
                .collect();
            if d.double_kernel(d.index_of(0, gi).unwrap()) != expected {
                bad.push(format!("{name} γ{gi}"));
            }
        }
    }
    outcome(bad, format!("kernel of (e, γ) on {count} characters"))
}

fn criterion_4(ds: &[(&str, Double)]) -> Outcome {
    let mut bad = Vec::new();
    let mut counts = Vec::new();
    for (name, d) in ds {
        let pairs = d.central_character_basis().len();
        let dual = d.center_dimension_dual();
        let double = d.center_dimension_double();
        counts.push(format!("{name}={pairs}"));
        if pairs != dual || pairs != double {
            bad.push(format!("{name}: {pairs} vs {dual} vs {double}"));
        }
    }
    let s3 = ds.iter().find(|(n, _)| *n == "S3").unwrap();
    if s3.1.center_dimension_double() != 6 {
        bad.push("S3 centre dimension is not 6".into());
    }
    outcome(bad, format!("pair counts {}", counts.join(" ")))
}

fn criterion_5(ds: &[(&str, Double)]) -> Outcome {
    let mut bad = Vec::new();
    let mut checked = Vec::new();
    for (name, d) in ds.iter().filter(|(n, _)| SMALL.contains(n) || *n == "S4") {
        let data: Vec<HopfDatum> = enumerate_hopf_data(d, false, Caps::default())
            .unwrap()
            .into_iter()
            .flat_map(|e| e.data)
            .collect();
        let picks = if *name == "S4" {
            sample_indices(data.len(), S4_SAMPLE, S4_SEED)
        } else {
            (0..data.len()).collect()
        };
        for &k in &picks {
            let desc = build_hopf(d, &data[k]).unwrap();
            if is_normal_datum(d.group(), &data[k]) != is_normal_bruteforce(d, &desc).unwrap() {
                bad.push(format!("{name} datum {k}"));
            }
        }
        checked.push(format!("{name}={}/{}", picks.len(), data.len()));
    }
    outcome(bad, format!("fast vs integral on {}", checked.join(" ")))
}

fn criterion_6(ds: &[(&str, Double)]) -> Outcome {
    let mut bad = Vec::new();
    let mut counts = Vec::new();
    for (name, d) in ds.iter().filter(|(n, _)| SMALL.contains(n)) {
        let data = enumerate_fusion_data(d, Caps::default()).unwrap();
        for fd in &data {
            let sub = fusion_from_datum(d, fd).unwrap();
            if is_normal_fusion(d.group(), fd) != centrality_of_regular_character(d, &sub) {
                bad.push(format!("{name} {:?}", sub.addresses(d)));
            }
        }
        counts.push(format!("{name}={}", data.len()));
    }
    outcome(bad, format!("normality criteria agree on {}", counts.join(" ")))
}

fn criterion_7(ds: &[(&str, Double)]) -> Outcome {
    let mut bad = Vec::new();
    let mut counts = Vec::new();
    for (name, d) in ds.iter().filter(|(n, _)| SMALL.contains(n)) {
        let catalogue = fusion_catalogue(d);
        let data = enumerate_fusion_data(d, Caps::default()).unwrap();
        let images: BTreeSet<BTreeSet<usize>> = data
            .iter()
            .map(|fd| fusion_from_datum(d, fd).unwrap().objects)
            .collect();
        if images.len() != data.len() || images != catalogue {
            bad.push(format!("{name}: {} data, {} images, {} closed sets", data.len(), images.len(), catalogue.len()));
        }
        counts.push(format!("{name}={}", catalogue.len()));
    }
    outcome(bad, format!("closed object sets {}", counts.join(" ")))
}

fn criterion_8(ds: &[(&str, Double)]) -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for (name, d) in ds {
        for i in 0..d.len() {
            count += 1;
            if let Err(e) = d.goursat_decompose(&d.double_kernel(i)) {
                bad.push(format!("{name} {}: {e}", d.irrep(i).address()));
            }
        }
    }
    outcome(bad, format!("decomposed {count} kernels"))
}

fn criterion_9() -> Outcome {
    const LEMMAS: [&str; 8] = [
        "table orthogonality",
        "lemma groupzeros",
        "lemma multip",
        "lemma charnh",
        "lemma z",
        "lemma valus",
        "frobenius reciprocity",
        "fusion orthonormality",
    ];
    let mut bad = Vec::new();
    let mut instances = 0;
    for name in CORPUS {
        let report = verify_suite(&group(name), name, Depth::Quick, Caps::default()).unwrap();
        for lemma in LEMMAS {
            let check = report.checks.iter().find(|c| c.name == lemma).unwrap();
            instances += check.instances;
            if check.status != Status::Pass {
                bad.push(format!("{name} {lemma}: {:?}", check.counterexample));
            }
        }
    }
    outcome(bad, format!("{instances} lemma instances"))
}

fn criterion_10(ds: &[(&str, Double)]) -> Outcome {
    let mut bad = Vec::new();
    for (name, d) in ds {
        let g = d.group();
        for (n, m, which) in [(g.whole(), g.center(), "(G, Z)"), (g.center(), g.whole(), "(Z, G)")] {
            let datum = HopfDatum::with_trivial_x(g, n, m).unwrap();
            let desc = build_hopf(d, &datum).unwrap();
            if !is_normal_datum(g, &datum) || !is_normal_bruteforce(d, &desc).unwrap() {
                bad.push(format!("{name} {which}"));
            }
        }
    }
    outcome(bad, format!("both data normal on {} groups", ds.len()))
}

#[test]
fn acceptance() {
    let c1 = criterion_1();
    let ds = doubles();
    let results = [
        c1,
        criterion_2(&ds),
        criterion_3(&ds),
        criterion_4(&ds),
        criterion_5(&ds),
        criterion_6(&ds),
        criterion_7(&ds),
        criterion_8(&ds),
        criterion_9(),
        criterion_10(&ds),
    ];
    for (i, r) in results.iter().enumerate() {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {}: {}", i + 1, r.detail);
    }
    let failed: Vec<usize> = (0..results.len()).filter(|&i| !results[i].passed).map(|i| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
