//! Irreducible representations of the Drinfeld double `D(G)`, their
//! characters, kernels and fusion rules.
//!
//! Conventions: `D(G)` has basis `p_x ⋈ g` with
//! `(p_x ⋈ g)(p_y ⋈ h) = δ_{x, g y g⁻¹} p_x ⋈ gh`, antipode
//! `S(p_x ⋈ g) = p_{g⁻¹x⁻¹g} ⋈ g⁻¹` and coproduct
//! `Δ(p_x ⋈ g) = Σ_{uv = x} (p_v ⋈ g) ⊗ (p_u ⋈ g)`.
//! Irreducibles are pairs `(a, γ)` with `a` a class representative and
//! `γ ∈ Irr(C_G(a))`. Irreducible characters of `D(G)*` are `χ ⋈ l` with
//! `χ ∈ Irr(G)`, `l ∈ G`.

mod algebra;
mod fusion_rules;
mod kernel;

pub use algebra::{DoubleElement, DualElement, StructureConstants};
pub use fusion_rules::FusionTable;
pub use kernel::{DoubleZ, GoursatDecomposition, StructuredKernel};

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_rational::BigRational;
use serde::Serialize;

use crate::chartable::{character_table, CharacterTable};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, ClassPartition, Group, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DoubleIrrep {
    pub class_index: usize,
    pub gamma_index: usize,
    pub dimension: u64,
}

impl DoubleIrrep {
    /// External address `"a:g"`.
    pub fn address(&self) -> String {
        format!("{}:{}", self.class_index, self.gamma_index)
    }
}

/// Values of a `D(G)`-character on the orbits of commuting pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCharacter {
    pub values: Vec<Cyclotomic>,
    pub dimension: u64,
}

/// The irreducible character `χ ⋈ l` of `D(G)*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DualIrrepLabel {
    pub chi: usize,
    pub l: usize,
}

pub type LabelSet = BTreeSet<DualIrrepLabel>;

/// Shared context for all `D(G)` computations on one group.
#[derive(Debug)]
pub struct Double {
    group: Group,
    classes: ClassPartition,
    table: CharacterTable,
    centralizers: Vec<Subgroup>,
    cent_tables: Vec<CharacterTable>,
    /// `transporter[x]`: least `g` with `x = g a g⁻¹`, `a` the representative of `x`'s class.
    transporter: Vec<usize>,
    orbit_offset: Vec<usize>,
    irreps: Vec<DoubleIrrep>,
    characters: Vec<DoubleCharacter>,
    normal_closures: Vec<OnceLock<Result<(Subgroup, CharacterTable)>>>,
    irr_products: OnceLock<Result<Vec<Vec<Vec<usize>>>>>,
    fusion: OnceLock<Result<FusionTable>>,
    double_constants: OnceLock<StructureConstants>,
    dual_constants: OnceLock<StructureConstants>,
}

impl Double {
    pub fn new(group: &Group) -> Result<Double> {
        let group = group.clone();
        let classes = conjugacy_classes(&group);
        let table = character_table(&group)?;
        let e = group.exponent();
        let n = group.order();
        let mut centralizers = Vec::with_capacity(classes.len());
        let mut cent_tables = Vec::with_capacity(classes.len());
        let mut transporter = vec![usize::MAX; n];
        for c in 0..classes.len() {
            let a = classes.representative(c);
            let cg = group.centralizer(a);
            cent_tables.push(CharacterTable::for_subgroup(&group, &cg, e)?);
            centralizers.push(cg);
            for g in 0..n {
                let x = group.conj(g, a);
                if transporter[x] == usize::MAX {
                    transporter[x] = g;
                }
            }
        }
        let mut orbit_offset = Vec::with_capacity(classes.len() + 1);
        let mut irreps = Vec::new();
        let mut characters = Vec::new();
        let mut total = 0;
        for t in &cent_tables {
            orbit_offset.push(total);
            total += t.classes().len();
        }
        orbit_offset.push(total);
        for c in 0..classes.len() {
            for (k, gamma) in cent_tables[c].irreducibles().iter().enumerate() {
                let gdeg = gamma.degree_u64().expect("integral degree");
                let dimension = classes.size(c) as u64 * gdeg;
                irreps.push(DoubleIrrep {
                    class_index: c,
                    gamma_index: k,
                    dimension,
                });
                let mut values = vec![Cyclotomic::zero(e)?; total];
                for (j, v) in gamma.values().iter().enumerate() {
                    values[orbit_offset[c] + j] = v.clone();
                }
                characters.push(DoubleCharacter { values, dimension });
            }
        }
        let normal_closures = (0..classes.len()).map(|_| OnceLock::new()).collect();
        Ok(Double {
            group,
            classes,
            table,
            centralizers,
            cent_tables,
            transporter,
            orbit_offset,
            irreps,
            characters,
            normal_closures,
            irr_products: OnceLock::new(),
            fusion: OnceLock::new(),
            double_constants: OnceLock::new(),
            dual_constants: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn classes(&self) -> &ClassPartition {
        &self.classes
    }

    /// `Irr(G)`.
    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn exponent(&self) -> u32 {
        self.group.exponent()
    }

    pub fn centralizer(&self, class: usize) -> &Subgroup {
        &self.centralizers[class]
    }

    pub fn centralizer_table(&self, class: usize) -> &CharacterTable {
        &self.cent_tables[class]
    }

    pub fn irreps(&self) -> &[DoubleIrrep] {
        &self.irreps
    }

    pub fn irrep(&self, i: usize) -> &DoubleIrrep {
        &self.irreps[i]
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn index_of(&self, class_index: usize, gamma_index: usize) -> Option<usize> {
        self.irreps
            .iter()
            .position(|r| r.class_index == class_index && r.gamma_index == gamma_index)
    }

    /// Parses `"a:g"`.
    pub fn parse_address(&self, s: &str) -> Result<usize> {
        let bad = || Error::InvalidInput(format!("bad representation selector `{s}`"));
        let (a, g) = s.split_once(':').ok_or_else(bad)?;
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let g: usize = g.trim().parse().map_err(|_| bad())?;
        self.index_of(a, g).ok_or_else(|| {
            Error::InvalidInput(format!("no irreducible representation `{a}:{g}`"))
        })
    }

    /// The unit object `(e, ε)`.
    pub fn unit(&self) -> usize {
        0
    }

    pub fn transporter(&self, x: usize) -> usize {
        self.transporter[x]
    }

    pub fn num_orbits(&self) -> usize {
        *self.orbit_offset.last().expect("nonempty")
    }

    /// Orbit of the commuting pair `(x, l)`, `None` if they do not commute.
    pub fn orbit_of(&self, x: usize, l: usize) -> Option<usize> {
        let g = &self.group;
        if g.mul(x, l) != g.mul(l, x) {
            return None;
        }
        let c = self.classes.class_of(x);
        let t = self.transporter[x];
        let y = g.conj(g.inv(t), l);
        let ct = &self.cent_tables[c];
        let local = ct.local_of(y).expect("conjugated into the centralizer");
        Some(self.orbit_offset[c] + ct.classes().class_of(local))
    }

    /// `(class index, centralizer class index)` of an orbit.
    pub fn orbit_parts(&self, o: usize) -> (usize, usize) {
        let c = self.orbit_offset.partition_point(|&off| off <= o) - 1;
        (c, o - self.orbit_offset[c])
    }

    pub fn orbit_size(&self, o: usize) -> usize {
        let (c, k) = self.orbit_parts(o);
        self.classes.size(c) * self.cent_tables[c].classes().size(k)
    }

    /// A representative pair `(a, l)` of the orbit.
    pub fn orbit_representative(&self, o: usize) -> (usize, usize) {
        let (c, k) = self.orbit_parts(o);
        let ct = &self.cent_tables[c];
        (
            self.classes.representative(c),
            ct.embedding()[ct.classes().representative(k)],
        )
    }

    pub fn double_character(&self, i: usize) -> &DoubleCharacter {
        &self.characters[i]
    }

    /// `ρ(p_x ⋈ l)` for a class function `ρ` stored on orbits.
    pub fn value_on(&self, ch: &DoubleCharacter, x: usize, l: usize) -> Cyclotomic {
        match self.orbit_of(x, l) {
            Some(o) => ch.values[o].clone(),
            None => Cyclotomic::zero(self.exponent()).expect("positive exponent"),
        }
    }

    /// Character value of irrep `i` at `p_x ⋈ l`, straight from the coset
    /// formula: `γ(g⁻¹ l g)` if `x = g a g⁻¹` and `g⁻¹ l g ∈ C_G(a)`.
    pub fn character_by_formula(&self, i: usize, x: usize, l: usize) -> Cyclotomic {
        let r = self.irreps[i];
        let g = &self.group;
        let zero = Cyclotomic::zero(self.exponent()).expect("positive exponent");
        if self.classes.class_of(x) != r.class_index {
            return zero;
        }
        let a = self.classes.representative(r.class_index);
        let ct = &self.cent_tables[r.class_index];
        let mut acc = zero;
        for t in 0..g.order() {
            // one representative per left coset tC_G(a): the least element
            if (0..t).any(|s| self.centralizers[r.class_index].contains(g.mul(g.inv(s), t))) {
                continue;
            }
            if g.conj(t, a) != x {
                continue;
            }
            if let Some(v) = ct.value_ambient(ct.irr(r.gamma_index), g.conj(g.inv(t), l)) {
                acc += v;
            }
        }
        acc
    }

    /// `ρ̂(χ ⋈ l) = χ(a) Σ_{cosets g, g⁻¹lg ∈ C_G(a)} γ(g⁻¹ l g)`.
    pub fn eval_on_dual_irrep(&self, i: usize, label: DualIrrepLabel) -> Cyclotomic {
        let r = self.irreps[i];
        let ch = &self.characters[i];
        let mut acc = Cyclotomic::zero(self.exponent()).expect("positive exponent");
        for &x in self.classes.class(r.class_index) {
            if let Some(o) = self.orbit_of(x, label.l) {
                acc += &ch.values[o];
            }
        }
        let a = self.classes.representative(r.class_index);
        &self.table.value(self.table.irr(label.chi), a).clone() * &acc
    }

    /// Value that `χ ⋈ l` takes on irrep `i` when it acts as its counit.
    pub fn counit_value(&self, i: usize, chi: usize) -> Cyclotomic {
        let d = self.table.irr(chi).degree_u64().expect("integral") * self.irreps[i].dimension;
        Cyclotomic::from_integer(d as i64, self.exponent()).expect("positive exponent")
    }

    /// All labels `χ ⋈ l`.
    pub fn all_labels(&self) -> impl Iterator<Item = DualIrrepLabel> + '_ {
        (0..self.table.len())
            .flat_map(move |chi| (0..self.group.order()).map(move |l| DualIrrepLabel { chi, l }))
    }

    /// Labels acting on irrep `i` as the counit scalar.
    pub fn double_kernel(&self, i: usize) -> LabelSet {
        let mut out = LabelSet::new();
        for chi in 0..self.table.len() {
            let target = self.counit_value(i, chi);
            for l in 0..self.group.order() {
                let label = DualIrrepLabel { chi, l };
                if self.eval_on_dual_irrep(i, label) == target {
                    out.insert(label);
                }
            }
        }
        out
    }

    /// `N(a)` for a class together with its character table.
    pub fn normal_closure_data(&self, class: usize) -> Result<&(Subgroup, CharacterTable)> {
        self.normal_closures[class]
            .get_or_init(|| {
                let n = self.group.normal_closure(self.classes.representative(class));
                let t = CharacterTable::for_subgroup(&self.group, &n, self.exponent())?;
                Ok((n, t))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Constituents of `χ_i χ_j` in `Irr(G)`.
    pub fn irr_product(&self, i: usize, j: usize) -> Result<&[usize]> {
        let table = self
            .irr_products
            .get_or_init(|| {
                let t = &self.table;
                (0..t.len())
                    .map(|i| {
                        (0..t.len())
                            .map(|j| t.constituents(&t.irr(i).product(t.irr(j))))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect()
            })
            .as_ref()
            .map_err(Clone::clone)?;
        Ok(&table[i][j])
    }

    /// Index of `χ*` in `Irr(G)`.
    pub fn irr_dual(&self, i: usize) -> usize {
        let d = self.table.irr(i).dual();
        self.table
            .irreducibles()
            .iter()
            .position(|c| *c == d)
            .expect("dual of an irreducible is irreducible")
    }

    /// Constituents of `(χ ⋈ l)(χ' ⋈ l') = (χχ') ⋈ ll'`.
    pub fn label_product(&self, a: DualIrrepLabel, b: DualIrrepLabel) -> Result<Vec<DualIrrepLabel>> {
        let l = self.group.mul(a.l, b.l);
        Ok(self
            .irr_product(a.chi, b.chi)?
            .iter()
            .map(|&chi| DualIrrepLabel { chi, l })
            .collect())
    }

    /// `S(χ ⋈ l) = χ* ⋈ l⁻¹`.
    pub fn label_dual(&self, a: DualIrrepLabel) -> DualIrrepLabel {
        DualIrrepLabel {
            chi: self.irr_dual(a.chi),
            l: self.group.inv(a.l),
        }
    }

    /// Whether a label set is closed under products, duals and contains the unit.
    pub fn is_label_closed(&self, set: &LabelSet) -> Result<bool> {
        if !set.contains(&DualIrrepLabel { chi: 0, l: 0 }) {
            return Ok(false);
        }
        for &a in set {
            if !set.contains(&self.label_dual(a)) {
                return Ok(false);
            }
            for &b in set {
                if !self.label_product(a, b)?.iter().all(|x| set.contains(x)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Ordered pairs of classes `(D, C)` whose elements commute pairwise;
    /// each stands for the central element `p_D ⋈ z_C`.
    pub fn central_character_basis(&self) -> Vec<(usize, usize)> {
        let r = self.classes.len();
        let g = &self.group;
        let mut out = Vec::new();
        for d in 0..r {
            for c in 0..r {
                let ok = self.classes.class(d).iter().all(|&x| {
                    self.classes
                        .class(c)
                        .iter()
                        .all(|&y| g.mul(x, y) == g.mul(y, x))
                });
                if ok {
                    out.push((d, c));
                }
            }
        }
        out
    }

    /// Rational scalar helper at the ambient cyclotomic order.
    pub(crate) fn rational(&self, r: BigRational) -> Cyclotomic {
        Cyclotomic::from_rational(r, self.exponent()).expect("positive exponent")
    }

    pub fn irrep_json(&self, i: usize) -> serde_json::Value {
        let r = self.irreps[i];
        serde_json::json!({
            "rep": r.address(),
            "class": r.class_index,
            "representative": self.group.label(self.classes.representative(r.class_index)),
            "gamma": r.gamma_index,
            "dimension": r.dimension,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{group_preset, Caps};

    pub(crate) fn double(name: &str) -> Double {
        let g = group_preset(name, None, Caps::default()).unwrap();
        Double::new(&g).unwrap()
    }

    #[test]
    fn s3_irreps() {
        let d = double("S3");
        assert_eq!(d.len(), 8);
        let mut dims: Vec<u64> = d.irreps().iter().map(|r| r.dimension).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 2, 2, 2, 2, 3, 3]);
        assert_eq!(dims.iter().map(|x| x * x).sum::<u64>(), 36);
        assert_eq!(d.num_orbits(), 8);
    }

    #[test]
    fn trivial_and_abelian() {
        let d = double("C1");
        assert_eq!(d.len(), 1);
        assert_eq!(d.irrep(0).dimension, 1);
        let d = double("C6");
        assert_eq!(d.len(), 36);
        assert!(d.irreps().iter().all(|r| r.dimension == 1));
    }

    #[test]
    fn orbit_values_match_coset_formula() {
        for name in ["S3", "Q8", "A4"] {
            let d = double(name);
            let n = d.group().order();
            let mut orbit_total = 0;
            for o in 0..d.num_orbits() {
                orbit_total += d.orbit_size(o);
                let (a, l) = d.orbit_representative(o);
                assert_eq!(d.orbit_of(a, l), Some(o));
            }
            let commuting = (0..n)
                .flat_map(|x| (0..n).map(move |l| (x, l)))
                .filter(|&(x, l)| d.group().mul(x, l) == d.group().mul(l, x))
                .count();
            assert_eq!(orbit_total, commuting);
            for i in 0..d.len() {
                let ch = d.double_character(i);
                for x in 0..n {
                    for l in 0..n {
                        assert_eq!(d.value_on(ch, x, l), d.character_by_formula(i, x, l));
                    }
                }
                let dim = Cyclotomic::from_integer(ch.dimension as i64, d.exponent()).unwrap();
                let at_unit = (0..n).fold(Cyclotomic::zero(d.exponent()).unwrap(), |acc, x| {
                    acc + d.value_on(ch, x, 0)
                });
                assert_eq!(at_unit, dim);
            }
        }
    }

    #[test]
    fn evaluation_examples() {
        let d = double("S3");
        for label in d.all_labels() {
            assert_eq!(d.eval_on_dual_irrep(0, label), d.counit_value(0, label.chi));
        }
        for i in 0..d.len() {
            let v = d.eval_on_dual_irrep(i, DualIrrepLabel { chi: 0, l: 0 });
            assert_eq!(v.to_integer().unwrap(), (d.irrep(i).dimension as i64).into());
        }
    }

    #[test]
    fn selectors() {
        let d = double("S3");
        assert_eq!(d.parse_address("0:0").unwrap(), 0);
        assert!(d.parse_address("9:0").is_err());
        assert!(d.parse_address("x").is_err());
        assert_eq!(d.irrep(d.parse_address("1:1").unwrap()).address(), "1:1");
    }

    #[test]
    fn central_pairs() {
        assert_eq!(double("S3").central_character_basis().len(), 6);
        assert_eq!(double("C2").central_character_basis().len(), 4);
    }
}
