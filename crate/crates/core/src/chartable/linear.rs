//! Linear characters of normal subgroups, the group `G_st(N)` of G-stable
//! ones, and characters lying over a stable linear character.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_integer::Integer;

use super::{Character, CharacterTable};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

/// A linear character of a subgroup `N`, stored as exponents `k` with
/// `λ(n) = ζ_E^k`, indexed by the local element index of `N`'s table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearCharacter {
    exps: Vec<u32>,
    modulus: u32,
}

impl LinearCharacter {
    pub fn trivial(n: usize, modulus: u32) -> Self {
        LinearCharacter {
            exps: vec![0; n],
            modulus,
        }
    }

    pub fn from_exponents(exps: Vec<u32>, modulus: u32) -> Self {
        let exps = exps.into_iter().map(|k| k % modulus).collect();
        LinearCharacter { exps, modulus }
    }

    /// Reads a degree-one character off `table`.
    pub fn from_character(table: &CharacterTable, chi: &Character) -> Option<Self> {
        let exps = (0..table.order())
            .map(|x| table.value(chi, x).as_root_of_unity())
            .collect::<Option<Vec<u32>>>()?;
        Some(LinearCharacter {
            exps,
            modulus: table.value_order(),
        })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn exponent_at(&self, local: usize) -> u32 {
        self.exps[local]
    }

    pub fn value_at(&self, local: usize) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.exps[local] as i64, self.modulus).expect("positive modulus")
    }

    pub fn mul(&self, other: &Self) -> Self {
        LinearCharacter {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| (a + b) % self.modulus)
                .collect(),
            modulus: self.modulus,
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let m = self.modulus as i64;
        LinearCharacter {
            exps: self
                .exps
                .iter()
                .map(|&a| (a as i64 * k).rem_euclid(m) as u32)
                .collect(),
            modulus: self.modulus,
        }
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Multiplicative order in the dual group.
    pub fn order(&self) -> u32 {
        let g = self.exps.iter().fold(self.modulus, |acc, &e| acc.gcd(&e));
        self.modulus / g
    }

    pub fn to_character(&self, table: &CharacterTable) -> Character {
        table.class_function(|x| self.value_at(x))
    }

    /// G-stability: `λ(g n g⁻¹) = λ(n)`.
    pub fn is_stable(&self, g: &Group, table: &CharacterTable) -> bool {
        let emb = table.embedding();
        (0..g.order()).all(|x| {
            emb.iter().enumerate().all(|(local, &n)| {
                let c = table.local_of(g.conj(x, n)).expect("normal subgroup");
                self.exps[c] == self.exps[local]
            })
        })
    }
}

/// `G_st(N)` with its group law. Element 0 is the trivial character.
#[derive(Debug, Clone)]
pub struct StableDual {
    n: Subgroup,
    table: CharacterTable,
    elements: Vec<LinearCharacter>,
    index: HashMap<LinearCharacter, usize>,
}

/// All G-stable linear characters of the normal subgroup `n`.
pub fn stable_linear_characters(g: &Group, n: &Subgroup) -> Result<StableDual> {
    if !n.is_normal() {
        return Err(Error::NotNormal(format!("subgroup of order {}", n.order())));
    }
    let table = CharacterTable::for_subgroup(g, n, g.exponent())?;
    let mut elements: Vec<LinearCharacter> = table
        .irreducibles()
        .iter()
        .filter(|c| c.degree_u64() == Some(1))
        .filter_map(|c| LinearCharacter::from_character(&table, c))
        .filter(|l| l.is_stable(g, &table))
        .collect();
    // trivial first (irreducibles already start with it), rest in table order
    debug_assert!(elements.first().is_some_and(LinearCharacter::is_trivial));
    elements.dedup();
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect();
    Ok(StableDual {
        n: n.clone(),
        table,
        elements,
        index,
    })
}

impl StableDual {
    pub fn subgroup(&self) -> &Subgroup {
        &self.n
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[LinearCharacter] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &LinearCharacter {
        &self.elements[i]
    }

    pub fn index_of(&self, l: &LinearCharacter) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].mul(&self.elements[j])]
    }

    pub fn pow(&self, i: usize, k: i64) -> usize {
        self.index[&self.elements[i].pow(k)]
    }

    pub fn order_of(&self, i: usize) -> u32 {
        self.elements[i].order()
    }

    /// Subgroup generated by the given element indices, sorted.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Every subgroup of `G_st(N)`, by closure from the trivial subgroup.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let trivial = vec![0usize];
        let mut seen = BTreeSet::from([trivial.clone()]);
        let mut queue = VecDeque::from([trivial]);
        while let Some(s) = queue.pop_front() {
            for x in 0..self.len() {
                if s.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = s.clone();
                gens.push(x);
                let t = self.generate(&gens);
                if seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// A small generating set of the subgroup `elements` (greedy).
    pub fn generators_of(&self, elements: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for &x in elements {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.generate(&gens);
            }
        }
        gens
    }
}

/// `Irr(G)|_α`: irreducible characters of `G` whose restriction to `N` is
/// `χ(1)·α`. Cross-checked against the constituents of `α↑G`.
pub fn irr_over(
    g: &Group,
    g_table: &CharacterTable,
    n_table: &CharacterTable,
    alpha: &LinearCharacter,
) -> Result<Vec<usize>> {
    if !alpha.is_stable(g, n_table) {
        return Err(Error::UnstableCharacter(
            "linear character is not G-stable".into(),
        ));
    }
    let alpha_char = alpha.to_character(n_table);
    let mut by_restriction = Vec::new();
    for (i, chi) in g_table.irreducibles().iter().enumerate() {
        let res = g_table.restrict(chi, n_table)?;
        let d = chi.degree().to_rational().expect("integral degree");
        if res == alpha_char.scale(&d) {
            by_restriction.push(i);
        }
    }
    let induced = n_table.induce(&alpha_char, g_table)?;
    let by_induction = g_table.constituents(&induced)?;
    if by_restriction != by_induction {
        return Err(Error::violated(
            "irr_over",
            format!("restriction gives {by_restriction:?}, induction gives {by_induction:?}"),
        ));
    }
    Ok(by_restriction)
}

/// `[G, N]`, with the check that the irreducibles acting on `N` by scalars
/// are exactly those trivial on `[G, N]`.
pub fn co_commutator_quotient(g: &Group, g_table: &CharacterTable, n: &Subgroup) -> Result<Subgroup> {
    if !n.is_normal() {
        return Err(Error::NotNormal(format!("subgroup of order {}", n.order())));
    }
    let gn = g.commutator_subgroup(&g.whole(), n);
    for (i, chi) in g_table.irreducibles().iter().enumerate() {
        let scalar_on_n = n.is_subgroup_of(&g_table.z_of_character(chi));
        let trivial_on_gn = gn.is_subgroup_of(&g_table.kernel_of_character(chi));
        if scalar_on_n != trivial_on_gn {
            return Err(Error::violated(
                "co_commutator_quotient",
                format!("irreducible {i}: scalar on N = {scalar_on_n}, trivial on [G,N] = {trivial_on_gn}"),
            ));
        }
    }
    Ok(gn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::character_table;
    use crate::group::{group_preset, Caps};

    fn setup(name: &str) -> (Group, CharacterTable) {
        let g = group_preset(name, None, Caps::default()).unwrap();
        let t = character_table(&g).unwrap();
        (g, t)
    }

    #[test]
    fn stable_duals() {
        let (g, _) = setup("S3");
        assert_eq!(stable_linear_characters(&g, &g.trivial_subgroup()).unwrap().len(), 1);
        let a3 = g.generate(&[(0..6).find(|&x| g.element_order(x) == 3).unwrap()]);
        assert_eq!(stable_linear_characters(&g, &a3).unwrap().len(), 1);
        assert_eq!(stable_linear_characters(&g, &g.whole()).unwrap().len(), 2);
        let (q, _) = setup("Q8");
        let z = stable_linear_characters(&q, &q.center()).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(z.subgroups().len(), 2);
        let t = g.generate(&[(0..6).find(|&x| g.element_order(x) == 2).unwrap()]);
        assert!(matches!(stable_linear_characters(&g, &t), Err(Error::NotNormal(_))));
    }

    #[test]
    fn dual_group_law() {
        let (g, _) = setup("C6");
        let d = stable_linear_characters(&g, &g.whole()).unwrap();
        assert_eq!(d.len(), 6);
        assert_eq!(d.subgroups().len(), 4);
        let orders: BTreeSet<u32> = (0..6).map(|i| d.order_of(i)).collect();
        assert_eq!(orders, BTreeSet::from([1, 2, 3, 6]));
        for i in 0..6 {
            assert_eq!(d.mul(i, d.pow(i, -1)), 0);
        }
        let (k, _) = setup("C2xC2");
        let dk = stable_linear_characters(&k, &k.whole()).unwrap();
        assert_eq!(dk.subgroups().len(), 5);
        assert_eq!(dk.generators_of(&(0..4).collect::<Vec<_>>()).len(), 2);
    }

    #[test]
    fn characters_over() {
        let (g, t) = setup("S3");
        let triv = g.trivial_subgroup();
        let tt = CharacterTable::for_subgroup(&g, &triv, 6).unwrap();
        let eps = LinearCharacter::trivial(1, 6);
        assert_eq!(irr_over(&g, &t, &tt, &eps).unwrap(), vec![0, 1, 2]);
        let a3 = g.generate(&[(0..6).find(|&x| g.element_order(x) == 3).unwrap()]);
        let ta = CharacterTable::for_subgroup(&g, &a3, 6).unwrap();
        assert_eq!(irr_over(&g, &t, &ta, &LinearCharacter::trivial(3, 6)).unwrap(), vec![0, 1]);
        let faithful = LinearCharacter::from_character(&ta, ta.irr(1)).unwrap();
        assert!(matches!(irr_over(&g, &t, &ta, &faithful), Err(Error::UnstableCharacter(_))));
    }

    #[test]
    fn commutator_quotients() {
        let (g, t) = setup("S3");
        assert!(co_commutator_quotient(&g, &t, &g.trivial_subgroup()).unwrap().is_trivial());
        let a3 = g.generate(&[(0..6).find(|&x| g.element_order(x) == 3).unwrap()]);
        assert_eq!(co_commutator_quotient(&g, &t, &a3).unwrap(), a3);
        let (q, tq) = setup("Q8");
        assert!(co_commutator_quotient(&q, &tq, &q.center()).unwrap().is_trivial());
    }
}
