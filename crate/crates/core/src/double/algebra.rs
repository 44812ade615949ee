//! `D(G)` and `D(G)*` as explicit algebras on the basis `p_x ⋈ g`
//! (resp. its dual basis `e_{x,g}`), with centrality oracles.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;

use super::Double;
use crate::cyclotomic::Cyclotomic;
use crate::group::Group;
use crate::linalg::rational_rank;

/// A vector on the basis indexed by pairs `(x, g)`, stored sparsely under
/// the key `x·|G| + g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairVector {
    n: usize,
    coeffs: BTreeMap<usize, Cyclotomic>,
}

/// Element of `D(G)` on the basis `p_x ⋈ g`.
pub type DoubleElement = PairVector;
/// Element of `D(G)*` as a function on the basis `p_x ⋈ g`.
pub type DualElement = PairVector;

impl PairVector {
    pub fn zero(n: usize) -> Self {
        PairVector {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn key(&self, x: usize, g: usize) -> usize {
        x * self.n + g
    }

    pub fn add_at(&mut self, x: usize, g: usize, v: &Cyclotomic) {
        if v.is_zero() {
            return;
        }
        let k = self.key(x, g);
        let remove = match self.coeffs.get_mut(&k) {
            Some(c) => {
                *c += v;
                c.is_zero()
            }
            None => {
                self.coeffs.insert(k, v.clone());
                false
            }
        };
        if remove {
            self.coeffs.remove(&k);
        }
    }

    pub fn get(&self, x: usize, g: usize) -> Option<&Cyclotomic> {
        self.coeffs.get(&(x * self.n + g))
    }

    /// Nonzero entries as `((x, g), coefficient)`.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Cyclotomic)> {
        self.coeffs.iter().map(move |(&k, v)| ((k / self.n, k % self.n), v))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut out = PairVector::zero(self.n);
        for (&k, v) in &self.coeffs {
            let s = v.scale(r);
            if !s.is_zero() {
                out.coeffs.insert(k, s);
            }
        }
        out
    }
}

/// Nonzero products of basis elements, all with coefficient one.
#[derive(Debug)]
pub struct StructureConstants {
    n: usize,
    /// `by_left[b1] = [(b2, b)]` with `b1 · b2 = b`.
    by_left: Vec<Vec<(u32, u32)>>,
    /// `by_right[b2] = [(b1, b)]` with `b1 · b2 = b`.
    by_right: Vec<Vec<(u32, u32)>>,
}

impl StructureConstants {
    fn from_products(n: usize, products: impl Iterator<Item = (usize, usize, usize)>) -> Self {
        let mut by_left = vec![Vec::new(); n * n];
        let mut by_right = vec![Vec::new(); n * n];
        for (b1, b2, b) in products {
            by_left[b1].push((b2 as u32, b as u32));
            by_right[b2].push((b1 as u32, b as u32));
        }
        StructureConstants {
            n,
            by_left,
            by_right,
        }
    }

    /// `(p_x ⋈ g)(p_y ⋈ h) = δ_{x, g y g⁻¹} p_x ⋈ gh`.
    pub fn double(g: &Group) -> Self {
        let n = g.order();
        let products = (0..n).flat_map(move |x| {
            (0..n).flat_map(move |a| {
                let y = g.conj(g.inv(a), x);
                (0..n).map(move |h| (x * n + a, y * n + h, x * n + g.mul(a, h)))
            })
        });
        Self::from_products(n, products)
    }

    /// Product of `D(G)*` dual to `Δ(p_x ⋈ g) = Σ_{uv=x} (p_v ⋈ g) ⊗ (p_u ⋈ g)`:
    /// `e_{b1} e_{b2} = Σ_b [b1 ⊗ b2 occurs in Δ(b)] e_b`.
    pub fn dual(g: &Group) -> Self {
        let n = g.order();
        let products = (0..n).flat_map(move |x| {
            (0..n).flat_map(move |a| {
                coproduct(g, x, a)
                    .into_iter()
                    .map(move |((v, gv), (u, gu))| (v * n + gv, u * n + gu, x * n + a))
            })
        });
        Self::from_products(n, products)
    }

    pub fn multiply(&self, a: &PairVector, b: &PairVector) -> PairVector {
        let n = self.n;
        let mut out = PairVector::zero(n);
        for (&k1, v1) in &a.coeffs {
            for &(k2, r) in &self.by_left[k1] {
                if let Some(v2) = b.coeffs.get(&(k2 as usize)) {
                    let r = r as usize;
                    out.add_at(r / n, r % n, &(v1 * v2));
                }
            }
        }
        out
    }

    /// `[c, e_b]` collected over all basis elements `b`, keyed by `(b, result)`.
    /// `add(t, v, sign)` accumulates `±v` into `t`.
    fn brackets<T, F>(&self, support: &[(usize, T)], zero: &T, add: F) -> HashMap<(u32, u32), T>
    where
        T: Clone,
        F: Fn(&mut T, &T, bool),
    {
        let mut acc: HashMap<(u32, u32), T> = HashMap::new();
        for (s, v) in support {
            for &(b2, r) in &self.by_left[*s] {
                add(acc.entry((b2, r)).or_insert_with(|| zero.clone()), v, true);
            }
            for &(b1, r) in &self.by_right[*s] {
                add(acc.entry((b1, r)).or_insert_with(|| zero.clone()), v, false);
            }
        }
        acc
    }

    /// Whether `c` commutes with every basis element.
    pub fn is_central(&self, c: &PairVector) -> bool {
        let support: Vec<(usize, Cyclotomic)> =
            c.coeffs.iter().map(|(&k, v)| (k, v.clone())).collect();
        let zero = match support.first() {
            Some((_, v)) => Cyclotomic::zero(v.order()).expect("positive order"),
            None => return true,
        };
        let acc = self.brackets(&support, &zero, |t, v, plus| {
            if plus {
                *t += v;
            } else {
                *t = &*t - v;
            }
        });
        acc.values().all(Cyclotomic::is_zero)
    }

    /// Dimension of the centre intersected with the span of the given integer
    /// vectors, computed by exact elimination.
    pub fn central_subspace_dimension(&self, spanning: &[Vec<(usize, i64)>]) -> usize {
        let rows: Vec<BTreeMap<usize, BigRational>> = spanning
            .iter()
            .map(|vec| {
                let acc = self.brackets(vec, &0i64, |t, v, plus| {
                    if plus {
                        *t += *v;
                    } else {
                        *t -= *v;
                    }
                });
                let width = (self.n * self.n) as u64;
                acc.into_iter()
                    .filter(|(_, v)| *v != 0)
                    .map(|((b, r), v)| {
                        ((b as u64 * width + r as u64) as usize, BigRational::from_integer(v.into()))
                    })
                    .collect()
            })
            .collect();
        // spanning vectors are linearly independent by construction
        spanning.len() - rational_rank(rows)
    }
}

/// `Δ(p_x ⋈ g) = Σ_{uv = x} (p_v ⋈ g) ⊗ (p_u ⋈ g)`.
pub fn coproduct(g: &Group, x: usize, a: usize) -> Vec<((usize, usize), (usize, usize))> {
    (0..g.order())
        .map(|v| {
            let u = g.mul(x, g.inv(v));
            ((v, a), (u, a))
        })
        .collect()
}

/// `S(p_x ⋈ g) = p_{g⁻¹x⁻¹g} ⋈ g⁻¹`.
pub fn antipode(g: &Group, x: usize, a: usize) -> (usize, usize) {
    let ai = g.inv(a);
    (g.conj(ai, g.inv(x)), ai)
}

impl Double {
    pub fn double_constants(&self) -> &StructureConstants {
        self.double_constants
            .get_or_init(|| StructureConstants::double(&self.group))
    }

    pub fn dual_constants(&self) -> &StructureConstants {
        self.dual_constants
            .get_or_init(|| StructureConstants::dual(&self.group))
    }

    /// Exhaustive commutation test in `D(G)`.
    pub fn is_central_in_double(&self, c: &DoubleElement) -> bool {
        self.double_constants().is_central(c)
    }

    /// Support on commuting pairs and invariance under simultaneous
    /// conjugation.
    pub fn is_central_in_double_fast(&self, c: &DoubleElement) -> bool {
        let g = &self.group;
        let zero = Cyclotomic::zero(self.exponent()).expect("positive exponent");
        for ((x, h), v) in c.iter() {
            if g.mul(x, h) != g.mul(h, x) {
                return false;
            }
            for t in 0..g.order() {
                if c.get(g.conj(t, x), g.conj(t, h)).unwrap_or(&zero) != v {
                    return false;
                }
            }
        }
        true
    }

    /// Exhaustive commutation test in `D(G)*`, product derived from `Δ`.
    pub fn is_central_in_dual(&self, c: &DualElement) -> bool {
        self.dual_constants().is_central(c)
    }

    /// For each `g`, `x ↦ c(x, g)` is a class function.
    pub fn is_central_in_dual_fast(&self, c: &DualElement) -> bool {
        let g = &self.group;
        let zero = Cyclotomic::zero(self.exponent()).expect("positive exponent");
        c.iter().all(|((x, a), v)| {
            (0..g.order()).all(|t| c.get(g.conj(t, x), a).unwrap_or(&zero) == v)
        })
    }

    /// A `D(G)`-character as a function on the basis.
    pub fn character_as_dual(&self, values: &[Cyclotomic]) -> DualElement {
        let n = self.group.order();
        let mut out = PairVector::zero(n);
        for x in 0..n {
            for l in 0..n {
                if let Some(o) = self.orbit_of(x, l) {
                    out.add_at(x, l, &values[o]);
                }
            }
        }
        out
    }

    /// `p_D ⋈ z_C = Σ_{x ∈ D, g ∈ C} p_x ⋈ g`.
    pub fn class_pair_element(&self, d: usize, c: usize) -> DoubleElement {
        let one = Cyclotomic::one(self.exponent()).expect("positive exponent");
        let mut out = PairVector::zero(self.group.order());
        for &x in self.classes.class(d) {
            for &g in self.classes.class(c) {
                out.add_at(x, g, &one);
            }
        }
        out
    }

    /// `dim(Z(D(G)*) ∩ span{D(G)-characters})`, using that the characters
    /// span the indicator functions of commuting-pair orbits.
    pub fn center_dimension_dual(&self) -> usize {
        let n = self.group.order();
        let mut spanning: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.num_orbits()];
        for x in 0..n {
            for l in 0..n {
                if let Some(o) = self.orbit_of(x, l) {
                    spanning[o].push((x * n + l, 1));
                }
            }
        }
        self.dual_constants().central_subspace_dimension(&spanning)
    }

    /// `dim(Z(D(G)) ∩ span{χ ⋈ l})`, the span being `{p_D ⋈ l}`.
    pub fn center_dimension_double(&self) -> usize {
        let n = self.group.order();
        let spanning: Vec<Vec<(usize, i64)>> = (0..self.classes.len())
            .flat_map(|d| {
                (0..n).map(move |l| {
                    self.classes
                        .class(d)
                        .iter()
                        .map(|&x| (x * n + l, 1))
                        .collect()
                })
            })
            .collect();
        self.double_constants().central_subspace_dimension(&spanning)
    }

    /// The idempotent integral `p_1 ⋈ (1/|G|) Σ g` of `D(G)`.
    pub fn integral(&self) -> DoubleElement {
        let n = self.group.order();
        let w = self.rational(BigRational::new(1.into(), n.into()));
        let mut out = PairVector::zero(n);
        for g in 0..n {
            out.add_at(0, g, &w);
        }
        out
    }

    /// Evaluates a function on the basis (a `D(G)*` element) at a `D(G)` element.
    pub fn pair(&self, f: &DualElement, a: &DoubleElement) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.exponent()).expect("positive exponent");
        for ((x, g), v) in a.iter() {
            if let Some(w) = f.get(x, g) {
                acc += &(v * w);
            }
        }
        acc
    }
}
