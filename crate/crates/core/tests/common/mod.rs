//! Brute-force catalogues used as oracles by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use drinfeld::double::{Double, DualIrrepLabel, LabelSet};
use drinfeld::group::{group_preset, Caps, Group};

pub fn group(name: &str) -> Group {
    group_preset(name, None, Caps::default()).unwrap()
}

pub fn double(name: &str) -> Double {
    Double::new(&group(name)).unwrap()
}

/// Smallest superset of `start` closed under an associative product and an
/// involution, given as closures returning the new elements.
fn close<T: Ord + Copy>(
    start: &BTreeSet<T>,
    product: impl Fn(T, T) -> Vec<T>,
    dual: impl Fn(T) -> T,
) -> BTreeSet<T> {
    let mut set = start.clone();
    let mut queue: VecDeque<T> = set.iter().copied().collect();
    while let Some(a) = queue.pop_front() {
        let mut fresh = vec![dual(a)];
        for &b in &set {
            fresh.extend(product(a, b));
            fresh.extend(product(b, a));
        }
        for x in fresh {
            if set.insert(x) {
                queue.push_back(x);
            }
        }
    }
    set
}

/// Every closed set containing `unit`, found by adjoining one element at a
/// time to already closed sets.
fn catalogue<T: Ord + Copy>(
    universe: &[T],
    unit: T,
    product: impl Fn(T, T) -> Vec<T> + Copy,
    dual: impl Fn(T) -> T + Copy,
) -> BTreeSet<BTreeSet<T>> {
    let bottom = close(&BTreeSet::from([unit]), product, dual);
    let mut found = BTreeSet::from([bottom.clone()]);
    let mut queue = VecDeque::from([bottom]);
    while let Some(s) = queue.pop_front() {
        for &a in universe {
            if s.contains(&a) {
                continue;
            }
            let mut t = s.clone();
            t.insert(a);
            let t = close(&t, product, dual);
            if found.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    found
}

/// All label sets of `D(G)*` irreducibles closed under products and duals:
/// the candidates for Hopf subalgebras of `D(G)`.
pub fn closed_label_sets(d: &Double) -> BTreeSet<LabelSet> {
    let universe: Vec<DualIrrepLabel> = d.all_labels().collect();
    let unit = DualIrrepLabel { chi: 0, l: 0 };
    catalogue(&universe, unit, |a, b| d.label_product(a, b).unwrap(), |a| d.label_dual(a))
}

/// All sets of irreducible `D(G)`-modules closed under tensor products and
/// duals.
pub fn fusion_catalogue(d: &Double) -> BTreeSet<BTreeSet<usize>> {
    let f = d.fusion_table().unwrap();
    let universe: Vec<usize> = (0..d.len()).collect();
    catalogue(&universe, d.unit(), |i, j| f.constituents(i, j), |i| f.dual(i))
}
