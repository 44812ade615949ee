//! Exact character tables of a group and of its subgroups.
//!
//! A [`CharacterTable`] belongs to a *local* group together with an embedding
//! of its elements into an ambient group. Tables of subgroups such as
//! `C_G(a)` are computed on the subgroup's own multiplication table and their
//! values embedded into the ambient field `ℚ(ζ_E)`, `E = exp(G)`.

mod dixon;
mod linear;

pub use dixon::dixon_prime;
pub use linear::{co_commutator_quotient, irr_over, stable_linear_characters, LinearCharacter, StableDual};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, ClassPartition, Group, Subgroup};

/// A class function, stored by class index of its table's local group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    values: Vec<Cyclotomic>,
}

impl Character {
    pub fn new(values: Vec<Cyclotomic>) -> Self {
        Character { values }
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// Degree as an integer; `None` for virtual characters of non-integral degree.
    pub fn degree_u64(&self) -> Option<u64> {
        self.values[0]
            .to_integer()
            .and_then(|d| u64::try_from(d).ok())
    }

    /// Pointwise product (tensor product character).
    pub fn product(&self, other: &Character) -> Character {
        Character::new(self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect())
    }

    pub fn sum(&self, other: &Character) -> Character {
        Character::new(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, r: &BigRational) -> Character {
        Character::new(self.values.iter().map(|v| v.scale(r)).collect())
    }

    /// `χ*`, the complex conjugate character.
    pub fn dual(&self) -> Character {
        Character::new(self.values.iter().map(Cyclotomic::conj).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let degree = match self.degree_u64() {
            Some(d) => serde_json::Value::from(d),
            None => self.values[0].to_json(),
        };
        serde_json::json!({
            "degree": degree,
            "values": self.values.iter().map(Cyclotomic::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Group,
    classes: ClassPartition,
    embedding: Vec<usize>,
    value_order: u32,
    irreducibles: Vec<Character>,
}

/// Irreducible characters of `g` with values in `ℚ(ζ_{exp g})`.
pub fn character_table(g: &Group) -> Result<CharacterTable> {
    CharacterTable::build(g.clone(), (0..g.order()).collect(), g.exponent())
}

impl CharacterTable {
    /// Table of a subgroup `h ≤ g`, values embedded at cyclotomic order
    /// `value_order` (a multiple of `exp h`).
    pub fn for_subgroup(g: &Group, h: &Subgroup, value_order: u32) -> Result<CharacterTable> {
        let (local, embedding) = g.subgroup_as_group(h);
        Self::build(local, embedding, value_order)
    }

    fn build(group: Group, embedding: Vec<usize>, value_order: u32) -> Result<CharacterTable> {
        let classes = conjugacy_classes(&group);
        let mut irreducibles: Vec<Character> = dixon::irreducible_characters(&group, &classes)?
            .into_iter()
            .map(|c| {
                Ok(Character::new(
                    c.values
                        .iter()
                        .map(|v| v.embed(value_order))
                        .collect::<Result<Vec<_>>>()?,
                ))
            })
            .collect::<Result<_>>()?;
        irreducibles.sort_by(|a, b| {
            let trivial = |c: &Character| !c.values.iter().all(Cyclotomic::is_one);
            trivial(a)
                .cmp(&trivial(b))
                .then_with(|| a.degree_u64().cmp(&b.degree_u64()))
                .then_with(|| a.values.cmp(&b.values))
        });
        let table = CharacterTable {
            group,
            classes,
            embedding,
            value_order,
            irreducibles,
        };
        table.check_orthogonality()?;
        Ok(table)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn classes(&self) -> &ClassPartition {
        &self.classes
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn value_order(&self) -> u32 {
        self.value_order
    }

    pub fn irreducibles(&self) -> &[Character] {
        &self.irreducibles
    }

    pub fn irr(&self, i: usize) -> &Character {
        &self.irreducibles[i]
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    /// Local index to ambient index.
    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    pub fn local_of(&self, ambient: usize) -> Option<usize> {
        self.embedding.binary_search(&ambient).ok()
    }

    /// `χ(g)` for a local element `g`.
    pub fn value<'a>(&self, chi: &'a Character, local: usize) -> &'a Cyclotomic {
        chi.value(self.classes.class_of(local))
    }

    /// `χ(g)` for an ambient element, `None` outside the subgroup.
    pub fn value_ambient<'a>(&self, chi: &'a Character, ambient: usize) -> Option<&'a Cyclotomic> {
        self.local_of(ambient).map(|l| self.value(chi, l))
    }

    fn constant(&self, v: i64) -> Cyclotomic {
        Cyclotomic::from_integer(v, self.value_order).expect("nonzero order")
    }

    pub fn trivial(&self) -> Character {
        Character::new(vec![self.constant(1); self.classes.len()])
    }

    /// `t_G`: `|G|` at the identity and zero elsewhere.
    pub fn regular(&self) -> Character {
        let mut v = vec![self.constant(0); self.classes.len()];
        v[0] = self.constant(self.order() as i64);
        Character::new(v)
    }

    /// Builds a class function from per-element values on the local group.
    pub fn class_function(&self, f: impl Fn(usize) -> Cyclotomic) -> Character {
        Character::new(
            (0..self.classes.len())
                .map(|c| f(self.classes.representative(c)))
                .collect(),
        )
    }

    /// `(1/|G|) Σ_g χ(g) conj(μ(g))`.
    pub fn inner_product(&self, chi: &Character, mu: &Character) -> Result<BigRational> {
        let mut acc = Cyclotomic::zero(self.value_order)?;
        for c in 0..self.classes.len() {
            let t = &chi.values[c] * &mu.values[c].conj();
            acc += &t.scale(&BigRational::from_integer(self.classes.size(c).into()));
        }
        acc.to_rational()
            .map(|r| r / BigRational::from_integer(self.order().into()))
            .ok_or(Error::NotRational)
    }

    /// Multiplicities of every irreducible in `chi`.
    pub fn decompose(&self, chi: &Character) -> Result<Vec<BigRational>> {
        self.irreducibles
            .iter()
            .map(|x| self.inner_product(chi, x))
            .collect()
    }

    /// Indices of irreducible constituents of a genuine character.
    pub fn constituents(&self, chi: &Character) -> Result<Vec<usize>> {
        Ok(self
            .decompose(chi)?
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_positive())
            .map(|(i, _)| i)
            .collect())
    }

    /// Restriction of `chi` (a character of this table) to the group of
    /// `small`, whose elements must lie in this table's group.
    pub fn restrict(&self, chi: &Character, small: &CharacterTable) -> Result<Character> {
        let values = (0..small.classes.len())
            .map(|c| {
                let amb = small.embedding[small.classes.representative(c)];
                self.value_ambient(chi, amb).cloned().ok_or_else(|| {
                    Error::InvalidInput("restriction target is not a subgroup".into())
                })
            })
            .collect::<Result<_>>()?;
        Ok(Character::new(values))
    }

    /// Induction of `alpha` (a character of this table) up to `big`.
    pub fn induce(&self, alpha: &Character, big: &CharacterTable) -> Result<Character> {
        let mut contained = true;
        let mut values = Vec::with_capacity(big.classes.len());
        for c in 0..big.classes.len() {
            // ind(g) = |G| / (|H| |C|) Σ_{y ∈ C ∩ H} α(y)
            let mut acc = Cyclotomic::zero(self.value_order)?;
            for &y in big.classes.class(c) {
                if let Some(v) = self.value_ambient(alpha, big.embedding[y]) {
                    acc += v;
                }
            }
            let f = BigRational::new(
                big.order().into(),
                (self.order() * big.classes.size(c)).into(),
            );
            values.push(acc.scale(&f));
        }
        for &h in &self.embedding {
            contained &= big.local_of(h).is_some();
        }
        if !contained {
            return Err(Error::InvalidInput("induction source is not a subgroup".into()));
        }
        Ok(Character::new(values))
    }

    /// `ker χ = {g : χ(g) = χ(1)}` in the local group.
    pub fn kernel_of_character(&self, chi: &Character) -> Subgroup {
        let d = chi.degree();
        let elements = (0..self.order())
            .filter(|&g| self.value(chi, g) == d)
            .collect();
        self.group.subgroup_from_closed(elements)
    }

    /// `Z(χ) = {g : |χ(g)|² = χ(1)²}` in the local group.
    pub fn z_of_character(&self, chi: &Character) -> Subgroup {
        let d2 = chi.degree().abs_sq();
        let elements = (0..self.order())
            .filter(|&g| self.value(chi, g).abs_sq() == d2)
            .collect();
        self.group.subgroup_from_closed(elements)
    }

    /// Maps a subgroup of the local group to the ambient group.
    pub fn to_ambient(&self, ambient: &Group, s: &Subgroup) -> Subgroup {
        ambient.subgroup_from_closed(s.elements().iter().map(|&x| self.embedding[x]).collect())
    }

    /// Row and column orthogonality and `Σ χ(1)² = |G|`, exactly.
    pub fn check_orthogonality(&self) -> Result<()> {
        let r = self.classes.len();
        if self.irreducibles.len() != r {
            return Err(Error::OrthogonalityBroken(format!(
                "{} irreducibles for {r} classes",
                self.irreducibles.len()
            )));
        }
        let sum_sq: u64 = self
            .irreducibles
            .iter()
            .map(|c| c.degree_u64().map(|d| d * d))
            .sum::<Option<u64>>()
            .ok_or_else(|| Error::OrthogonalityBroken("non-integral degree".into()))?;
        if sum_sq != self.order() as u64 {
            return Err(Error::OrthogonalityBroken(format!(
                "sum of squared degrees {sum_sq} != |G| = {}",
                self.order()
            )));
        }
        for (i, a) in self.irreducibles.iter().enumerate() {
            for (j, b) in self.irreducibles.iter().enumerate().skip(i) {
                let ip = self.inner_product(a, b).map_err(|_| {
                    Error::OrthogonalityBroken(format!("<chi_{i}, chi_{j}> is irrational"))
                })?;
                let want = if i == j { BigRational::one() } else { BigRational::zero() };
                if ip != want {
                    return Err(Error::OrthogonalityBroken(format!(
                        "row orthogonality: <chi_{i}, chi_{j}> = {ip}"
                    )));
                }
            }
        }
        for k in 0..r {
            for l in k..r {
                let mut acc = Cyclotomic::zero(self.value_order)?;
                for chi in &self.irreducibles {
                    acc += &(&chi.values[k] * &chi.values[l].conj());
                }
                let want = if k == l {
                    BigRational::new(self.order().into(), self.classes.size(k).into())
                } else {
                    BigRational::zero()
                };
                if acc.to_rational() != Some(want) {
                    return Err(Error::OrthogonalityBroken(format!(
                        "column orthogonality fails for classes {k}, {l}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self, group_name: &str) -> serde_json::Value {
        serde_json::json!({
            "group": group_name,
            "classes": self.classes.sizes(),
            "exponent": self.value_order,
            "irreducibles": self.irreducibles.iter().map(Character::to_json).collect::<Vec<_>>(),
        })
    }

    #[cfg(test)]
    pub(crate) fn corrupt_for_test(&mut self, i: usize, class: usize, v: Cyclotomic) {
        self.irreducibles[i].values[class] = v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{group_preset, Caps};

    fn table(name: &str) -> (Group, CharacterTable) {
        let g = group_preset(name, None, Caps::default()).unwrap();
        let t = character_table(&g).unwrap();
        (g, t)
    }

    fn int(n: i64, e: u32) -> Cyclotomic {
        Cyclotomic::from_integer(n, e).unwrap()
    }

    fn degrees(t: &CharacterTable) -> Vec<u64> {
        t.irreducibles().iter().map(|c| c.degree_u64().unwrap()).collect()
    }

    #[test]
    fn s3_table() {
        let (g, t) = table("S3");
        assert_eq!(degrees(&t), vec![1, 1, 2]);
        // classes ordered by representative: {e}, then whichever non-identity comes first
        let trans = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let cyc = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        let two = t.irr(2);
        assert_eq!(t.value(two, 0), &int(2, 6));
        assert_eq!(t.value(two, trans), &int(0, 6));
        assert_eq!(t.value(two, cyc), &int(-1, 6));
        assert!(t.irr(0).values().iter().all(Cyclotomic::is_one));
    }

    #[test]
    fn cyclic_and_quaternion() {
        let (_, c3) = table("C3");
        assert_eq!(degrees(&c3), vec![1, 1, 1]);
        for chi in c3.irreducibles() {
            for v in chi.values() {
                assert!(v.as_root_of_unity().is_some());
            }
        }
        let (_, q8) = table("Q8");
        assert_eq!(degrees(&q8), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn corpus_tables_are_orthogonal() {
        for name in ["C1", "C2", "C6", "S3", "D8", "Q8", "A4", "S4", "S3xC2", "C4xC2", "A5", "D10"] {
            let (g, t) = table(name);
            assert_eq!(t.len(), conjugacy_classes(&g).len(), "{name}");
            t.check_orthogonality().unwrap();
        }
    }

    #[test]
    fn galois_compatibility() {
        for name in ["C5", "A4", "S3xC2", "A5"] {
            let (g, t) = table(name);
            let e = g.exponent() as i64;
            for chi in t.irreducibles() {
                for x in 0..g.order() {
                    for j in (1..e).filter(|j| num_integer::gcd(*j, e) == 1) {
                        let lhs = t.value(chi, x).galois_power(j).unwrap();
                        assert_eq!(&lhs, t.value(chi, g.pow(x, j)));
                    }
                }
            }
        }
    }

    #[test]
    fn fault_injection_is_detected() {
        let (_, mut t) = table("S3");
        t.corrupt_for_test(2, 1, int(1, 6));
        assert!(matches!(t.check_orthogonality(), Err(Error::OrthogonalityBroken(_))));
    }

    #[test]
    fn restrict_and_induce() {
        let (g, t) = table("S3");
        let cyc = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        let a3 = g.generate(&[cyc]);
        let ta3 = CharacterTable::for_subgroup(&g, &a3, 6).unwrap();
        assert_eq!(t.restrict(&t.trivial(), &ta3).unwrap(), ta3.trivial());
        assert_eq!(t.restrict(t.irr(2), &t).unwrap(), *t.irr(2));
        let res = t.restrict(t.irr(2), &ta3).unwrap();
        assert_eq!(ta3.decompose(&res).unwrap(), vec![0.into(), 1.into(), 1.into()]
            .into_iter()
            .map(|n: i64| BigRational::from_integer(n.into()))
            .collect::<Vec<_>>());
        let ind = ta3.induce(&ta3.trivial(), &t).unwrap();
        assert_eq!(ind, t.irr(0).sum(t.irr(1)));
        assert_eq!(t.inner_product(&ind, &t.trivial()).unwrap(), BigRational::one());
        assert_eq!(ta3.induce(ta3.irr(1), &t).unwrap(), *t.irr(2));
        assert_eq!(t.induce(&t.trivial(), &t).unwrap(), t.trivial());
    }

    #[test]
    fn kernels_and_z() {
        let (g, t) = table("S3");
        assert_eq!(t.kernel_of_character(t.irr(0)), g.whole());
        assert_eq!(t.kernel_of_character(t.irr(1)).order(), 3);
        assert!(t.kernel_of_character(t.irr(2)).is_trivial());
        assert_eq!(t.z_of_character(t.irr(0)), g.whole());
        assert!(t.z_of_character(t.irr(2)).is_trivial());
        let (c4, t4) = table("C4");
        let faithful = t4
            .irreducibles()
            .iter()
            .find(|c| t4.kernel_of_character(c).is_trivial())
            .unwrap();
        assert_eq!(t4.z_of_character(faithful), c4.whole());
    }

    #[test]
    fn products() {
        let (_, t) = table("S3");
        assert_eq!(t.irr(2).product(&t.trivial()), *t.irr(2));
        assert_eq!(t.irr(1).product(t.irr(1)), t.trivial());
        assert_eq!(t.regular(), t.irreducibles().iter().fold(
            Character::new(vec![int(0, 6); 3]),
            |acc, c| acc.sum(&c.scale(&BigRational::from_integer(c.degree_u64().unwrap().into()))),
        ));
    }
}
