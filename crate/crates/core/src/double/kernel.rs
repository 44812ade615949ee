//! Kernels of irreducible `D(G)`-characters in their structured form, the
//! sets `Z(ρ)` and the fiber-product decomposition of a kernel.

use std::collections::{BTreeMap, BTreeSet};

use super::{Double, DualIrrepLabel, LabelSet};
use crate::chartable::{irr_over, LinearCharacter};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::Subgroup;

/// `ker ρ = ⊔_{i<s} Irr(G)|_{f0^i} × l0^i M0` for `ρ = (a, γ)`.
#[derive(Debug, Clone)]
pub struct StructuredKernel {
    /// `N(a)`.
    pub n: Subgroup,
    /// G-stable linear character of `N(a)`, of order `s`.
    pub f0: LinearCharacter,
    pub s: u32,
    pub l0: usize,
    /// `core_G(ker_{C_G(a)} γ)`.
    pub m0: Subgroup,
    /// `(Irr(G)|_{f0^i}, l0^i M0)` for `i = 0..s`.
    pub blocks: Vec<(Vec<usize>, Vec<usize>)>,
}

/// `Z(ρ)`: labels whose value on `ρ` has modulus equal to the counit value.
#[derive(Debug, Clone)]
pub struct DoubleZ {
    /// `[G, N(a)]`; the `kG*`-side is `Irr(G/[G, N(a)])`.
    pub commutator: Subgroup,
    /// Group side found by evaluation.
    pub group_side: Subgroup,
    /// `core_G(Z_{C_G(a)} γ)`, which contains `group_side`.
    pub core_z: Subgroup,
    pub chis: Vec<usize>,
    pub labels: LabelSet,
}

/// Fiber-product shape of a kernel: `K = ⊔_{x ∈ X} F_x × L_x` with `X ≅ K2/L`.
#[derive(Debug, Clone)]
pub struct GoursatDecomposition {
    /// `{χ : χ ⋈ e ∈ K}`.
    pub l_chi: Vec<usize>,
    /// `{l : ε ⋈ l ∈ K}`, normal in `group_projection`.
    pub l_group: Vec<usize>,
    /// `{l : χ ⋈ l ∈ K for some χ}`.
    pub group_projection: Vec<usize>,
    pub x_order: usize,
    pub x_cyclic: bool,
    /// One `(fiber, coset)` per element of `X`, trivial component first.
    pub components: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Double {
    pub fn double_kernel_structured(&self, i: usize) -> Result<StructuredKernel> {
        let g = &self.group;
        let e = self.exponent();
        let r = self.irreps[i];
        let c = r.class_index;
        let a = self.classes.representative(c);
        let ct = &self.cent_tables[c];
        let gamma = ct.irr(r.gamma_index);
        let kernel = self.double_kernel(i);
        let fail = |detail: String| Error::violated("kerndescr", detail);

        let m0 = g.core(&ct.to_ambient(g, &ct.kernel_of_character(gamma)));

        // ratios χ(a)/χ(1) over the kernel form the group of s-th roots of unity
        let table = &self.table;
        let ratio = |chi: usize| -> Option<u32> {
            let x = table.irr(chi);
            let d = x.degree().to_rational()?;
            table.value(x, a).div_rational(&d).ok()?.as_root_of_unity()
        };
        let mut exps = BTreeSet::new();
        for label in &kernel {
            let k = ratio(label.chi)
                .ok_or_else(|| fail(format!("χ_{}(a)/χ(1) is not a root of unity", label.chi)))?;
            exps.insert(k);
        }
        let s = exps.len() as u32;
        if s == 0 || !e.is_multiple_of(s) || exps.iter().any(|k| k % (e / s) != 0) {
            return Err(fail(format!("ratios {exps:?} are not a group of roots of unity")));
        }
        let step = e / s;

        let (n, nt) = self.normal_closure_data(c)?;
        let chi0 = kernel
            .iter()
            .map(|lb| lb.chi)
            .find(|&chi| ratio(chi) == Some(step % e))
            .ok_or_else(|| fail("no character realizes the generating ratio".into()))?;
        let x0 = table.irr(chi0);
        let d0 = x0.degree().to_rational().expect("integral degree");
        let f0_exps = nt
            .embedding()
            .iter()
            .map(|&amb| {
                table
                    .value(x0, amb)
                    .div_rational(&d0)
                    .ok()
                    .and_then(|v| v.as_root_of_unity())
            })
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| fail("restriction to N(a) is not a multiple of a linear character".into()))?;
        let f0 = LinearCharacter::from_exponents(f0_exps, e);
        if f0.order() != s {
            return Err(fail(format!("f0 has order {}, expected {s}", f0.order())));
        }

        // l0: γ(t⁻¹ l0 t) = ω⁻¹ γ(1) on every coset t
        let gdeg = gamma.degree().clone();
        let target = &Cyclotomic::root_of_unity(-(step as i64), e)? * &gdeg;
        let l0 = if s == 1 {
            0
        } else {
            (0..g.order())
                .find(|&l| {
                    self.classes.class(c).iter().all(|&x| {
                        let t = self.transporter[x];
                        ct.value_ambient(gamma, g.conj(g.inv(t), l)) == Some(&target)
                    })
                })
                .ok_or_else(|| fail("no element l0 pairs with f0".into()))?
        };

        let mut blocks = Vec::with_capacity(s as usize);
        let mut union = LabelSet::new();
        let mut covered = BTreeSet::new();
        for k in 0..s {
            let fi = f0.pow(k as i64);
            let chis = irr_over(g, table, nt, &fi)?;
            let li = g.pow(l0, k as i64);
            let coset: Vec<usize> = {
                let mut v: Vec<usize> = m0.elements().iter().map(|&m| g.mul(li, m)).collect();
                v.sort_unstable();
                v
            };
            for &l in &coset {
                if !covered.insert(l) {
                    return Err(fail(format!("cosets l0^i M0 overlap at i = {k}")));
                }
                for &chi in &chis {
                    union.insert(DualIrrepLabel { chi, l });
                }
            }
            blocks.push((chis, coset));
        }
        if !m0.contains(g.pow(l0, s as i64)) {
            return Err(fail("l0^s is not in M0".into()));
        }
        if union != kernel {
            return Err(fail(format!(
                "structured form has {} labels, kernel has {}",
                union.len(),
                kernel.len()
            )));
        }
        Ok(StructuredKernel {
            n: n.clone(),
            f0,
            s,
            l0,
            m0,
            blocks,
        })
    }

    /// Labels with `|ρ̂(χ ⋈ l)| = χ(1) dim ρ`, with their product structure
    /// `Irr(G/[G, N(a)]) × Z'` verified.
    pub fn double_z(&self, i: usize) -> Result<DoubleZ> {
        let g = &self.group;
        let r = self.irreps[i];
        let c = r.class_index;
        let ct = &self.cent_tables[c];
        let gamma = ct.irr(r.gamma_index);
        let mut labels = LabelSet::new();
        for label in self.all_labels() {
            let v = self.eval_on_dual_irrep(i, label);
            if v.abs_sq() == self.counit_value(i, label.chi).abs_sq() {
                labels.insert(label);
            }
        }
        let (n, _) = self.normal_closure_data(c)?;
        let commutator = g.commutator_subgroup(&g.whole(), n);
        let chis: Vec<usize> = (0..self.table.len())
            .filter(|&chi| commutator.is_subgroup_of(&self.table.kernel_of_character(self.table.irr(chi))))
            .collect();
        let group_side_elems: Vec<usize> = labels
            .iter()
            .filter(|lb| lb.chi == 0)
            .map(|lb| lb.l)
            .collect();
        let group_side = g
            .subgroup(&group_side_elems)
            .map_err(|e| Error::violated("double_z", format!("group side is not a subgroup: {e}")))?;
        let expected: LabelSet = chis
            .iter()
            .flat_map(|&chi| group_side.elements().iter().map(move |&l| DualIrrepLabel { chi, l }))
            .collect();
        if expected != labels {
            return Err(Error::violated(
                "double_z",
                format!("Z(ρ) for {} is not a product set", r.address()),
            ));
        }
        let core_z = g.core(&ct.to_ambient(g, &ct.z_of_character(gamma)));
        if !group_side.is_subgroup_of(&core_z) {
            return Err(Error::violated("double_z", "group side escapes core(Z γ)".to_string()));
        }
        Ok(DoubleZ {
            commutator,
            group_side,
            core_z,
            chis,
            labels,
        })
    }

    /// Decomposes a kernel (or any closed label set) as a fiber product.
    pub fn goursat_decompose(&self, kernel: &LabelSet) -> Result<GoursatDecomposition> {
        let g = &self.group;
        let fail = |detail: String| Error::violated("genkern", detail);
        let mut fibers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for lb in kernel {
            fibers.entry(lb.l).or_default().push(lb.chi);
        }
        let l_chi = fibers.get(&0).cloned().unwrap_or_default();
        if !l_chi.contains(&0) {
            return Err(fail("unit label missing".into()));
        }
        let l_group: Vec<usize> = fibers
            .iter()
            .filter(|(_, chis)| chis.contains(&0))
            .map(|(&l, _)| l)
            .collect();
        let projection: Vec<usize> = fibers.keys().copied().collect();
        let k2 = g
            .subgroup(&projection)
            .map_err(|e| fail(format!("projection to G is not a subgroup: {e}")))?;
        let l = g
            .subgroup(&l_group)
            .map_err(|e| fail(format!("L is not a subgroup: {e}")))?;
        let normal_in_k2 = k2
            .elements()
            .iter()
            .all(|&x| l.elements().iter().all(|&y| l.contains(g.conj(x, y))));
        if !normal_in_k2 {
            return Err(fail("L is not normal in the projection".into()));
        }
        // cosets of L in K2, each carrying one fiber
        let mut components: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let mut seen = BTreeSet::new();
        for &x in k2.elements() {
            if seen.contains(&x) {
                continue;
            }
            let mut coset: Vec<usize> = l.elements().iter().map(|&y| g.mul(x, y)).collect();
            coset.sort_unstable();
            let fiber = fibers[&x].clone();
            for &y in &coset {
                if fibers.get(&y) != Some(&fiber) {
                    return Err(fail(format!("fiber is not constant on the coset of {}", g.label(x))));
                }
                seen.insert(y);
            }
            components.push((fiber, coset));
        }
        let distinct: BTreeSet<&Vec<usize>> = components.iter().map(|(f, _)| f).collect();
        if distinct.len() != components.len() {
            return Err(fail("two cosets share a fiber".into()));
        }
        for (fi, (fa, _)) in components.iter().enumerate() {
            for (fb, _) in components.iter().skip(fi + 1) {
                if fa.iter().any(|x| fb.contains(x)) {
                    return Err(fail("fibers overlap".into()));
                }
            }
        }
        // power condition: x^n ∈ L  ⇒  constituents of η^n lie in L_χ
        let coset_order = |x: usize| -> usize {
            let mut y = x;
            let mut k = 1;
            while !l.contains(y) {
                y = g.mul(y, x);
                k += 1;
            }
            k
        };
        let mut x_cyclic = false;
        for (fiber, coset) in &components {
            let x = coset[0];
            let n = coset_order(x);
            if n == components.len() {
                x_cyclic = true;
            }
            for &eta in fiber {
                let mut power = vec![0usize];
                for _ in 0..n {
                    let mut next = BTreeSet::new();
                    for &p in &power {
                        next.extend(self.irr_product(p, eta)?.iter().copied());
                    }
                    power = next.into_iter().collect();
                }
                if !power.iter().all(|c| l_chi.contains(c)) {
                    return Err(fail(format!(
                        "η^{n} has constituents outside L for η = χ_{eta}"
                    )));
                }
            }
        }
        Ok(GoursatDecomposition {
            l_chi,
            l_group,
            group_projection: projection,
            x_order: components.len(),
            x_cyclic,
            components,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::double;

    #[test]
    fn kernels_match_structure_on_s3_and_q8() {
        for name in ["S3", "Q8", "C4", "A4"] {
            let d = double(name);
            for i in 0..d.len() {
                let sk = d.double_kernel_structured(i).unwrap();
                let total: usize = sk.blocks.iter().map(|(c, l)| c.len() * l.len()).sum();
                assert_eq!(total, d.double_kernel(i).len(), "{name} rep {i}");
            }
        }
    }

    #[test]
    fn trivial_rep_kernel_is_everything() {
        let d = double("S3");
        assert_eq!(d.double_kernel(0).len(), 3 * 6);
        let sk = d.double_kernel_structured(0).unwrap();
        assert_eq!(sk.s, 1);
        assert_eq!(sk.l0, 0);
        let gd = d.goursat_decompose(&d.double_kernel(0)).unwrap();
        assert_eq!(gd.x_order, 1);
        assert_eq!(gd.l_chi, vec![0, 1, 2]);
    }

    #[test]
    fn identity_class_kernels() {
        let d = double("S3");
        for k in 0..3 {
            let i = d.index_of(0, k).unwrap();
            let sk = d.double_kernel_structured(i).unwrap();
            assert_eq!(sk.s, 1);
            assert!(sk.f0.is_trivial());
            let gamma = d.table().irr(k);
            assert_eq!(sk.m0, d.table().kernel_of_character(gamma));
        }
    }

    #[test]
    fn kernels_are_closed() {
        let d = double("S3");
        for i in 0..d.len() {
            assert!(d.is_label_closed(&d.double_kernel(i)).unwrap());
        }
    }

    #[test]
    fn z_of_three_cycle_rep() {
        let d = double("S3");
        let c = (0..d.classes().len())
            .find(|&c| d.group().element_order(d.classes().representative(c)) == 3)
            .unwrap();
        let i = d.index_of(c, 1).unwrap();
        let z = d.double_z(i).unwrap();
        assert_eq!(z.commutator.order(), 3);
        assert_eq!(z.chis, vec![0, 1]);
        // the product form holds with a trivial group side, strictly smaller
        // than core(Z γ) = A3
        assert!(z.group_side.is_trivial());
        assert_eq!(z.core_z.order(), 3);
    }
}
