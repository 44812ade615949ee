//! Finite groups stored as dense multiplication tables.
//!
//! Element `0` is always the identity. All subgroup constructions in this
//! module return [`Subgroup`] values whose element lists are sorted, so two
//! equal subgroups compare equal regardless of how they were built.

mod classes;
mod ingest;
mod presets;

pub use classes::{conjugacy_classes, ClassPartition};
pub use ingest::GroupInput;
pub use presets::{group_preset, Preset};

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_integer::Integer;

use crate::error::{Error, Result};

/// Size limits enforced when groups and lattices are materialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_order: usize,
    pub max_classes: usize,
    /// Bound on enumerated data, catalogues and closed sets.
    pub max_enumerated: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: 512,
            max_classes: 32,
            max_enumerated: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    elem_order: Vec<u32>,
    exponent: u32,
    labels: Option<Vec<String>>,
}

impl Group {
    /// Builds a group from a row-major multiplication table, checking every
    /// group axiom exhaustively.
    pub fn from_table(rows: &[Vec<usize>], caps: Caps) -> Result<Group> {
        let g = Self::from_table_unverified(rows, caps)?;
        g.check_axioms()?;
        Ok(g)
    }

    /// Like [`Group::from_table`] but only checks shape, identity and the
    /// Latin-square property. Associativity is left to [`Group::check_axioms`].
    pub fn from_table_unverified(rows: &[Vec<usize>], caps: Caps) -> Result<Group> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > caps.max_order {
            return Err(Error::GroupTooLarge {
                order: n,
                cap: caps.max_order,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            let mut seen = vec![false; n];
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidGroup(format!("entry {v} out of range in row {i}")));
                }
                if seen[v] {
                    return Err(Error::InvalidGroup(format!("row {i} repeats entry {v}")));
                }
                seen[v] = true;
                table.push(v as u32);
            }
        }
        for g in 0..n {
            if table[g] as usize != g || table[g * n] as usize != g {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        Self::from_raw(n, table, None)
    }

    fn from_raw(n: usize, table: Vec<u32>, labels: Option<Vec<String>>) -> Result<Group> {
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
            if inv[a] == u32::MAX {
                return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
            }
        }
        let mut elem_order = vec![0u32; n];
        for (g, slot) in elem_order.iter_mut().enumerate() {
            let mut x = g;
            let mut k = 1u32;
            while x != 0 {
                x = table[x * n + g] as usize;
                k += 1;
                if k as usize > n {
                    return Err(Error::InvalidGroup(format!("element {g} has no finite order")));
                }
            }
            *slot = k;
        }
        let exponent = elem_order.iter().fold(1u32, |acc, &o| acc.lcm(&o));
        Ok(Group {
            order: n,
            table,
            inv,
            elem_order,
            exponent,
            labels,
        })
    }

    /// Exhaustive identity, inverse and associativity check.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        for g in 0..n {
            if self.mul(0, g) != g || self.mul(g, 0) != g {
                return Err(Error::InvalidGroup(format!("identity law fails at {g}")));
            }
            if self.mul(g, self.inv(g)) != 0 || self.mul(self.inv(g), g) != 0 {
                return Err(Error::InvalidGroup(format!("inverse law fails at {g}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Closure of a set of permutations of `{0..degree-1}` under composition.
    ///
    /// Composition is `(p * q)(i) = p(q(i))`. Elements are indexed breadth-first
    /// from the identity, each layer sorted by its image tuple.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>], caps: Caps) -> Result<Group> {
        for (i, p) in generators.iter().enumerate() {
            if p.len() != degree {
                return Err(Error::InvalidGroup(format!(
                    "generator {i} has {} images, expected {degree}",
                    p.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &v in p {
                if v >= degree || seen[v] {
                    return Err(Error::InvalidGroup(format!("generator {i} is not a bijection")));
                }
                seen[v] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut seen: HashSet<Vec<usize>> = HashSet::from([identity]);
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let mut next = BTreeSet::new();
            for &x in &layer {
                for s in generators {
                    let p: Vec<usize> = elements[x].iter().map(|&i| s[i]).collect();
                    if !seen.contains(&p) {
                        next.insert(p);
                    }
                }
            }
            layer.clear();
            for p in next {
                seen.insert(p.clone());
                layer.push(elements.len());
                elements.push(p);
                if elements.len() > caps.max_order {
                    return Err(Error::GroupTooLarge {
                        order: elements.len(),
                        cap: caps.max_order,
                    });
                }
            }
        }
        let n = elements.len();
        let index: std::collections::HashMap<&[usize], usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let mut table = Vec::with_capacity(n * n);
        for p in &elements {
            for q in &elements {
                let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
                table.push(index[pq.as_slice()] as u32);
            }
        }
        let labels = elements.iter().map(|p| cycle_notation(p)).collect();
        Self::from_raw(n, table, Some(labels))
    }

    pub fn direct_product(a: &Group, b: &Group, caps: Caps) -> Result<Group> {
        let (n, m) = (a.order, b.order);
        if n * m > caps.max_order {
            return Err(Error::GroupTooLarge {
                order: n * m,
                cap: caps.max_order,
            });
        }
        let mut table = Vec::with_capacity(n * m * n * m);
        for x in 0..n * m {
            for y in 0..n * m {
                let (x1, x2) = (x / m, x % m);
                let (y1, y2) = (y / m, y % m);
                table.push((a.mul(x1, y1) * m + b.mul(x2, y2)) as u32);
            }
        }
        let labels = (0..n * m)
            .map(|x| format!("({},{})", a.label(x / m), b.label(x % m)))
            .collect();
        Self::from_raw(n * m, table, Some(labels))
    }

    pub(crate) fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g x g⁻¹`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `a b a⁻¹ b⁻¹`
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let o = self.elem_order[g] as i64;
        let k = k.rem_euclid(o);
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, g);
        }
        x
    }

    pub fn element_order(&self, g: usize) -> u32 {
        self.elem_order[g]
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => format!("g{g}"),
        }
    }

    /// The multiplication table as nested rows.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::new_unchecked((0..self.order).collect(), self.order, true)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::new_unchecked(vec![0], self.order, true)
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut elements = vec![0usize];
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = self.mul(x, s);
                if !member[y] {
                    member[y] = true;
                    elements.push(y);
                    queue.push_back(y);
                }
            }
        }
        self.subgroup_from_closed(elements)
    }

    /// Validates that `elements` is a subgroup and wraps it.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        let mut member = vec![false; self.order];
        for &e in elements {
            if e >= self.order {
                return Err(Error::InvalidInput(format!("element {e} out of range")));
            }
            member[e] = true;
        }
        if !member[0] {
            return Err(Error::InvalidInput("subset does not contain the identity".into()));
        }
        for &a in elements {
            if !member[self.inv(a)] {
                return Err(Error::InvalidInput("subset not closed under inverses".into()));
            }
            for &b in elements {
                if !member[self.mul(a, b)] {
                    return Err(Error::InvalidInput("subset not closed under multiplication".into()));
                }
            }
        }
        let elements: Vec<usize> = (0..self.order).filter(|&g| member[g]).collect();
        Ok(self.subgroup_from_closed(elements))
    }

    pub(crate) fn subgroup_from_closed(&self, mut elements: Vec<usize>) -> Subgroup {
        elements.sort_unstable();
        elements.dedup();
        let mut member = vec![false; self.order];
        for &e in &elements {
            member[e] = true;
        }
        let normal = (0..self.order).all(|g| elements.iter().all(|&h| member[self.conj(g, h)]));
        Subgroup {
            elements,
            member,
            normal,
        }
    }

    pub fn centralizer(&self, a: usize) -> Subgroup {
        let elements = (0..self.order)
            .filter(|&g| self.mul(g, a) == self.mul(a, g))
            .collect();
        self.subgroup_from_closed(elements)
    }

    /// `C_G(N)`: elements commuting with every element of `n`.
    pub fn centralizer_of_set(&self, n: &Subgroup) -> Subgroup {
        let elements = (0..self.order)
            .filter(|&g| n.elements.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        self.subgroup_from_closed(elements)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer_of_set(&self.whole())
    }

    /// Smallest normal subgroup containing `a`: generated by the class of `a`.
    pub fn normal_closure(&self, a: usize) -> Subgroup {
        let class: BTreeSet<usize> = (0..self.order).map(|g| self.conj(g, a)).collect();
        let gens: Vec<usize> = class.into_iter().collect();
        self.generate(&gens)
    }

    /// Normal closure of an arbitrary set of elements.
    pub fn normal_closure_of(&self, set: &[usize]) -> Subgroup {
        let class: BTreeSet<usize> = set
            .iter()
            .flat_map(|&a| (0..self.order).map(move |g| (g, a)))
            .map(|(g, a)| self.conj(g, a))
            .collect();
        let gens: Vec<usize> = class.into_iter().collect();
        self.generate(&gens)
    }

    /// `core_G(H) = ∩_g gHg⁻¹`.
    pub fn core(&self, h: &Subgroup) -> Subgroup {
        let elements = h
            .elements
            .iter()
            .copied()
            .filter(|&x| (0..self.order).all(|g| h.contains(self.conj(g, x))))
            .collect();
        self.subgroup_from_closed(elements)
    }

    /// `[A, B]`, generated by all `a b a⁻¹ b⁻¹`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let gens: BTreeSet<usize> = a
            .elements
            .iter()
            .flat_map(|&x| b.elements.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect();
        let gens: Vec<usize> = gens.into_iter().collect();
        self.generate(&gens)
    }

    pub fn commute_elementwise(&self, n: &Subgroup, m: &Subgroup) -> bool {
        n.elements
            .iter()
            .all(|&x| m.elements.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let elements = a
            .elements
            .iter()
            .copied()
            .filter(|&x| b.contains(x))
            .collect();
        self.subgroup_from_closed(elements)
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = a.elements.clone();
        gens.extend_from_slice(&b.elements);
        self.generate(&gens)
    }

    /// All normal subgroups, found as class unions closed under
    /// multiplication. Sorted by order, then lexicographically.
    pub fn normal_subgroups(&self, classes: &ClassPartition, caps: Caps) -> Result<Vec<Subgroup>> {
        let r = classes.len();
        if r > caps.max_classes {
            return Err(Error::LatticeTooLarge {
                classes: r,
                cap: caps.max_classes,
            });
        }
        let mask_of = |s: &Subgroup| -> u64 {
            (0..r).fold(0u64, |m, c| {
                if s.contains(classes.representative(c)) {
                    m | (1 << c)
                } else {
                    m
                }
            })
        };
        let trivial = self.trivial_subgroup();
        let mut seen: HashSet<u64> = HashSet::from([mask_of(&trivial)]);
        let mut found = vec![trivial];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for c in 1..r {
                let rep = classes.representative(c);
                if found[i].contains(rep) {
                    continue;
                }
                let mut gens = found[i].elements.clone();
                gens.extend_from_slice(classes.class(c));
                let n = self.generate(&gens);
                let mask = mask_of(&n);
                if seen.insert(mask) {
                    found.push(n);
                    queue.push_back(found.len() - 1);
                }
            }
        }
        found.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.elements.cmp(&b.elements))
        });
        Ok(found)
    }

    /// Quotient by a normal subgroup. Cosets are represented by their least
    /// element and indexed in increasing order of that representative.
    pub fn quotient(&self, n: &Subgroup) -> Result<(Group, Vec<usize>)> {
        if !n.is_normal() {
            return Err(Error::NotNormal(format!(
                "subgroup of order {} is not normal",
                n.order()
            )));
        }
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if proj[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &x in &n.elements {
                proj[self.mul(g, x)] = idx;
            }
        }
        let q = reps.len();
        let mut table = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                table.push(proj[self.mul(a, b)] as u32);
            }
        }
        let labels = reps.iter().map(|&g| format!("{}N", self.label(g))).collect();
        let quotient = Self::from_raw(q, table, Some(labels))?;
        Ok((quotient, proj))
    }

    /// Materializes a subgroup as a group in its own right. The returned
    /// vector maps local indices to ambient indices; the identity stays at 0.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (Group, Vec<usize>) {
        let embed = h.elements.clone();
        let m = embed.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &embed {
            for &b in &embed {
                table.push(h.position(self.mul(a, b)).expect("subgroup closed") as u32);
            }
        }
        let labels = embed.iter().map(|&g| self.label(g)).collect();
        let group = Self::from_raw(m, table, Some(labels)).expect("subgroup table is a group");
        (group, embed)
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        let body: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
        out.push('(');
        out.push_str(&body.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// A subgroup of an ambient group, stored as a sorted element list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
    member: Vec<bool>,
    normal: bool,
}

impl Subgroup {
    fn new_unchecked(elements: Vec<usize>, ambient: usize, normal: bool) -> Self {
        let mut member = vec![false; ambient];
        for &e in &elements {
            member[e] = true;
        }
        Subgroup {
            elements,
            member,
            normal,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        self.member.get(g).copied().unwrap_or(false)
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Group {
        Group::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]], Caps::default()).unwrap()
    }

    fn find(g: &Group, label: &str) -> usize {
        (0..g.order()).find(|&x| g.label(x) == label).unwrap()
    }

    #[test]
    fn permutation_closure_orders() {
        assert_eq!(s3().order(), 6);
        let trivial = Group::from_permutations(1, &[], Caps::default()).unwrap();
        assert_eq!(trivial.order(), 1);
        let c4 = Group::from_permutations(4, &[vec![1, 2, 3, 0]], Caps::default()).unwrap();
        assert_eq!(c4.order(), 4);
        assert_eq!(c4.exponent(), 4);
    }

    #[test]
    fn size_cap_is_enforced() {
        let caps = Caps {
            max_order: 5,
            ..Caps::default()
        };
        let err = Group::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]], caps).unwrap_err();
        assert!(matches!(err, Error::GroupTooLarge { .. }));
    }

    #[test]
    fn rejects_non_bijection() {
        let err = Group::from_permutations(3, &[vec![0, 0, 2]], Caps::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidGroup(_)));
    }

    #[test]
    fn centralizers_in_s3() {
        let g = s3();
        let t = find(&g, "(0 1)");
        let c = find(&g, "(0 1 2)");
        assert_eq!(g.centralizer(0), g.whole());
        assert_eq!(g.centralizer(t).elements(), &[0, t]);
        let a3 = g.generate(&[c]);
        assert_eq!(a3.order(), 3);
        assert_eq!(g.centralizer(c), a3);
        assert_eq!(g.centralizer_of_set(&a3), a3);
        assert_eq!(g.centralizer_of_set(&g.trivial_subgroup()), g.whole());
    }

    #[test]
    fn closures_cores_commutators() {
        let g = s3();
        let t = find(&g, "(0 1)");
        let c = find(&g, "(0 1 2)");
        let a3 = g.generate(&[c]);
        assert!(g.normal_closure(0).is_trivial());
        assert_eq!(g.normal_closure(c), a3);
        assert_eq!(g.normal_closure(t), g.whole());
        assert_eq!(g.core(&g.whole()), g.whole());
        assert!(g.core(&g.generate(&[t])).is_trivial());
        assert_eq!(g.core(&a3), a3);
        assert_eq!(g.commutator_subgroup(&g.whole(), &a3), a3);
        assert!(g.commutator_subgroup(&a3, &a3).is_trivial());
        assert!(g
            .commutator_subgroup(&g.whole(), &g.trivial_subgroup())
            .is_trivial());
        assert!(!g.commute_elementwise(&g.whole(), &a3));
        assert!(g.commute_elementwise(&g.trivial_subgroup(), &g.whole()));
    }

    #[test]
    fn compairs_for_every_element() {
        let g = s3();
        for a in 0..g.order() {
            let na = g.normal_closure(a);
            let cc = g.core(&g.centralizer(a));
            assert!(na.is_normal() && cc.is_normal());
            assert!(g.commute_elementwise(&na, &cc));
        }
    }

    #[test]
    fn quotient_of_s3_by_a3() {
        let g = s3();
        let a3 = g.generate(&[find(&g, "(0 1 2)")]);
        let (q, proj) = g.quotient(&a3).unwrap();
        assert_eq!(q.order(), 2);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(proj[g.mul(a, b)], q.mul(proj[a], proj[b]));
            }
        }
        let (same, _) = g.quotient(&g.trivial_subgroup()).unwrap();
        assert_eq!(same.order(), 6);
        let t = find(&g, "(0 1)");
        assert!(matches!(
            g.quotient(&g.generate(&[t])),
            Err(Error::NotNormal(_))
        ));
    }

    #[test]
    fn subgroup_validation() {
        let g = s3();
        let t = find(&g, "(0 1)");
        let c = find(&g, "(0 1 2)");
        assert!(g.subgroup(&[0, t]).is_ok());
        assert!(g.subgroup(&[0, c]).is_err());
        assert!(g.subgroup(&[t]).is_err());
        let a3 = g.generate(&[c]);
        assert_eq!(g.subgroup(a3.elements()).unwrap(), a3);
    }

    #[test]
    fn table_round_trip_and_axioms() {
        let g = s3();
        let h = Group::from_table(&g.table_rows(), Caps::default()).unwrap();
        assert_eq!(h.order(), 6);
        let mut bad = g.table_rows();
        bad[1].swap(0, 1);
        assert!(Group::from_table(&bad, Caps::default()).is_err());
    }
}
