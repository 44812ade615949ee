//! Hopf subalgebras `D(N, M, X, ψ)` of `D(G)`: construction from a datum,
//! normality (closed form and integral centrality), enumeration, and the
//! datum attached to the kernel of an irreducible.
//!
//! For `x ∈ X` the block is `C_{x↑} ⋈ kψ0(x)M`, where `C_{x↑}` is spanned
//! by the matrix coefficients of `Irr(G)|_x`. In label form the subalgebra is
//! `{χ ⋈ l : χ ∈ Irr(G)|_x, l ∈ ψ0(x)M}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::json;

use crate::chartable::{irr_over, stable_linear_characters, StableDual};
use crate::cyclotomic::Cyclotomic;
use crate::double::{Double, DoubleElement, DualIrrepLabel, LabelSet};
use crate::error::{Error, Result};
use crate::group::{Caps, Group, Subgroup};

/// Classifying datum `(N, M, X, ψ)`.
#[derive(Debug, Clone)]
pub struct HopfDatum {
    n: Subgroup,
    m: Subgroup,
    stable: Arc<StableDual>,
    /// Indices into `G_st(N)`, sorted, starting with the trivial character.
    x: Vec<usize>,
    /// Least element of the coset `ψ(x)`, aligned with `x`.
    psi0: Vec<usize>,
}

impl HopfDatum {
    /// Validates normality of `N` and `M`, that `X` is a subgroup of
    /// `G_st(N)` and that `ψ` is an injective homomorphism into `G/M`.
    pub fn new(
        g: &Group,
        n: Subgroup,
        m: Subgroup,
        stable: Arc<StableDual>,
        x: Vec<usize>,
        psi0: Vec<usize>,
    ) -> Result<Self> {
        let bad = |s: String| Err(Error::InvalidDatum(s));
        if !n.is_normal() || !m.is_normal() {
            return Err(Error::NotNormal("N and M must be normal in G".into()));
        }
        if stable.subgroup() != &n {
            return bad("stable characters belong to a different N".into());
        }
        if x.len() != psi0.len() {
            return bad("ψ must assign one coset per element of X".into());
        }
        let mut order: Vec<usize> = (0..x.len()).collect();
        order.sort_by_key(|&i| x[i]);
        let x_sorted: Vec<usize> = order.iter().map(|&i| x[i]).collect();
        if x_sorted.iter().any(|&i| i >= stable.len()) || stable.generate(&x_sorted) != x_sorted {
            return bad("X is not a subgroup of G_st(N)".into());
        }
        let canon = |h: usize| m.elements().iter().map(|&e| g.mul(h, e)).min().expect("M nonempty");
        let psi0: Vec<usize> = order.iter().map(|&i| canon(psi0[i])).collect();
        if psi0[0] != 0 {
            return bad("ψ does not send the trivial character into M".into());
        }
        let pos: HashMap<usize, usize> = x_sorted.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        for i in 0..x_sorted.len() {
            for j in 0..x_sorted.len() {
                let k = pos[&stable.mul(x_sorted[i], x_sorted[j])];
                if canon(g.mul(psi0[i], psi0[j])) != psi0[k] {
                    return bad("ψ is not a homomorphism".into());
                }
            }
        }
        let mut images = psi0.clone();
        images.sort_unstable();
        images.dedup();
        if images.len() != psi0.len() {
            return bad("ψ is not injective".into());
        }
        Ok(HopfDatum {
            n,
            m,
            stable,
            x: x_sorted,
            psi0,
        })
    }

    /// `(N, M, {1}, 1)`.
    pub fn with_trivial_x(g: &Group, n: Subgroup, m: Subgroup) -> Result<Self> {
        let stable = Arc::new(stable_linear_characters(g, &n)?);
        HopfDatum::new(g, n, m, stable, vec![0], vec![0])
    }

    pub fn n(&self) -> &Subgroup {
        &self.n
    }

    pub fn m(&self) -> &Subgroup {
        &self.m
    }

    pub fn stable(&self) -> &StableDual {
        &self.stable
    }

    /// Elements of `X` as indices into [`HopfDatum::stable`].
    pub fn x(&self) -> &[usize] {
        &self.x
    }

    pub fn psi0(&self) -> &[usize] {
        &self.psi0
    }

    /// `|X||G||M| / |N|`.
    pub fn dimension(&self, g: &Group) -> u64 {
        (self.x.len() * g.order() * self.m.order() / self.n.order()) as u64
    }

    /// `ψ0(x)M` for the `p`-th element of `X`, sorted.
    pub fn coset(&self, g: &Group, p: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.m.elements().iter().map(|&e| g.mul(self.psi0[p], e)).collect();
        v.sort_unstable();
        v
    }

    fn sort_key(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>) {
        (
            self.n.elements().to_vec(),
            self.m.elements().to_vec(),
            self.x.clone(),
            self.psi0.clone(),
        )
    }

    pub fn to_json(&self, g: &Group, normal: bool) -> serde_json::Value {
        let gens = self.stable.generators_of(&self.x);
        let psi: serde_json::Map<String, serde_json::Value> = self
            .psi0
            .iter()
            .enumerate()
            .map(|(p, &h)| (format!("x{p}"), json!(h)))
            .collect();
        json!({
            "N": self.n.elements(),
            "M": self.m.elements(),
            "X": {
                "order": self.x.len(),
                "modulus": self.stable.table().value_order(),
                "generator_values": gens
                    .iter()
                    .map(|&i| self.stable.element(i).exponents().to_vec())
                    .collect::<Vec<_>>(),
            },
            "psi": psi,
            "dimension": self.dimension(g),
            "normal": normal,
        })
    }
}

/// One block `Irr(G)|_x × ψ0(x)M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfBlock {
    /// Index into `G_st(N)`.
    pub x: usize,
    pub chis: Vec<usize>,
    pub coset: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct HopfSubalgebraDescription {
    pub datum: HopfDatum,
    pub blocks: Vec<HopfBlock>,
}

impl HopfSubalgebraDescription {
    pub fn labels(&self) -> LabelSet {
        self.blocks
            .iter()
            .flat_map(|b| {
                b.chis
                    .iter()
                    .flat_map(move |&chi| b.coset.iter().map(move |&l| DualIrrepLabel { chi, l }))
            })
            .collect()
    }
}

/// Assembles the blocks and checks disjointness and the dimension formula.
pub fn build_hopf(d: &Double, datum: &HopfDatum) -> Result<HopfSubalgebraDescription> {
    let g = d.group();
    let table = d.table();
    let mut blocks = Vec::with_capacity(datum.x.len());
    let mut dim = 0u64;
    let mut seen_chis = vec![false; table.len()];
    for (p, &xi) in datum.x.iter().enumerate() {
        let chis = irr_over(g, table, datum.stable.table(), datum.stable.element(xi))?;
        let coalgebra: u64 = chis
            .iter()
            .map(|&c| table.irr(c).degree_u64().expect("integral degree").pow(2))
            .sum();
        if coalgebra as usize * datum.n.order() != g.order() {
            return Err(Error::violated(
                "genhopfdg",
                format!("dim C_(x↑) = {coalgebra}, expected |G|/|N|"),
            ));
        }
        for &c in &chis {
            if std::mem::replace(&mut seen_chis[c], true) {
                return Err(Error::violated("genhopfdg", format!("character {c} lies over two elements of X")));
            }
        }
        let coset = datum.coset(g, p);
        dim += coalgebra * coset.len() as u64;
        blocks.push(HopfBlock { x: xi, chis, coset });
    }
    if dim != datum.dimension(g) {
        return Err(Error::violated(
            "genhopfdg",
            format!("blocks span {dim}, formula gives {}", datum.dimension(g)),
        ));
    }
    Ok(HopfSubalgebraDescription {
        datum: datum.clone(),
        blocks,
    })
}

/// `ψ(X) ⊆ C_G(N)/M ∩ Z(G/M)` and `[N, M] = 1`.
pub fn is_normal_datum(g: &Group, datum: &HopfDatum) -> bool {
    if !g.commute_elementwise(&datum.n, &datum.m) {
        return false;
    }
    (0..datum.x.len()).all(|p| {
        let coset = datum.coset(g, p);
        let centralizes_n = coset
            .iter()
            .all(|&h| datum.n.elements().iter().all(|&y| g.mul(h, y) == g.mul(y, h)));
        let central_mod_m = (0..g.order()).all(|t| coset.binary_search(&g.conj(t, datum.psi0[p])).is_ok());
        centralizes_n && central_mod_m
    })
}

/// `Λ = |N|/(|X||G|) Σ_x x↑ ⋈ ψ0(x)Λ_M` with `Λ_M = (1/|M|) Σ_{m ∈ M} m`.
pub fn hopf_integral(d: &Double, desc: &HopfSubalgebraDescription) -> Result<DoubleElement> {
    let g = d.group();
    let datum = &desc.datum;
    let nt = datum.stable.table();
    let c = BigRational::new(
        datum.n.order().into(),
        (datum.x.len() * g.order() * datum.m.order()).into(),
    );
    let mut lam = DoubleElement::zero(g.order());
    for block in &desc.blocks {
        let induced = nt.induce(&datum.stable.element(block.x).to_character(nt), d.table())?;
        for y in 0..g.order() {
            let v = d.table().value(&induced, y).scale(&c);
            for &h in &block.coset {
                lam.add_at(y, h, &v);
            }
        }
    }
    Ok(lam)
}

/// `(1/dim) Σ_{χ ⋈ l} χ(1) · (χ ⋈ l)` for a closed label set, with
/// `χ ⋈ l = Σ_y χ(y) p_y ⋈ l`: the regular character of the dual.
pub fn label_integral(d: &Double, labels: &LabelSet) -> DoubleElement {
    let g = d.group();
    let table = d.table();
    let degree = |chi: usize| table.irr(chi).degree().to_rational().expect("integral degree");
    let dim: BigRational = labels.iter().map(|lb| degree(lb.chi) * degree(lb.chi)).sum();
    let mut lam = DoubleElement::zero(g.order());
    for lb in labels {
        let w = degree(lb.chi) / &dim;
        for y in 0..g.order() {
            lam.add_at(y, lb.l, &table.value(table.irr(lb.chi), y).scale(&w));
        }
    }
    lam
}

/// Centrality of the idempotent integral, tested against every basis
/// element of `D(G)`. Fails hard if `Λ` is not an idempotent of counit 1.
pub fn is_normal_bruteforce(d: &Double, desc: &HopfSubalgebraDescription) -> Result<bool> {
    let lam = hopf_integral(d, desc)?;
    let counit: Cyclotomic = lam
        .iter()
        .filter(|((y, _), _)| *y == 0)
        .fold(Cyclotomic::zero(d.exponent())?, |acc, (_, v)| &acc + v);
    if !counit.is_one() {
        return Err(Error::violated("genhopfdg", format!("ε(Λ) = {counit}")));
    }
    if d.double_constants().multiply(&lam, &lam) != lam {
        return Err(Error::violated("genhopfdg", "Λ² ≠ Λ"));
    }
    Ok(d.is_central_in_double(&lam))
}

/// A Hopf subalgebra with every datum realizing it.
#[derive(Debug, Clone)]
pub struct EnumeratedHopf {
    pub description: HopfSubalgebraDescription,
    pub data: Vec<HopfDatum>,
    pub dimension: u64,
}

/// Injective homomorphisms `X → Q` with images in `allowed` (a subgroup),
/// built generator by generator. Each result lists `ψ(x)` aligned with `x`.
fn injective_homs(stable: &StableDual, x: &[usize], q: &Group, allowed: &[usize]) -> Vec<Vec<usize>> {
    if x.len() > allowed.len() {
        return Vec::new();
    }
    let gens = stable.generators_of(x);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = stable.order_of(s);
            allowed.iter().copied().filter(|&t| q.element_order(t) == o).collect()
        })
        .collect();
    let pos: HashMap<usize, usize> = x.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let mut out = Vec::new();
    let mut images = vec![0usize; gens.len()];
    fn walk(
        depth: usize,
        images: &mut Vec<usize>,
        candidates: &[Vec<usize>],
        extend: &dyn Fn(&[usize]) -> Option<Vec<usize>>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == candidates.len() {
            if let Some(map) = extend(images) {
                out.push(map);
            }
            return;
        }
        for &t in &candidates[depth] {
            images[depth] = t;
            walk(depth + 1, images, candidates, extend, out);
        }
    }
    let extend = |imgs: &[usize]| -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; x.len()];
        map[pos[&0]] = 0;
        let mut queue = vec![0usize];
        while let Some(xi) = queue.pop() {
            let v = map[pos[&xi]];
            for (s, &t) in gens.iter().zip(imgs) {
                let y = pos[&stable.mul(xi, *s)];
                let w = q.mul(v, t);
                if map[y] == usize::MAX {
                    map[y] = w;
                    queue.push(x[y]);
                } else if map[y] != w {
                    return None;
                }
            }
        }
        let mut sorted = map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        (sorted.len() == map.len()).then_some(map)
    };
    walk(0, &mut images, &candidates, &extend, &mut out);
    out
}

/// Every datum `(N, M, X, ψ)`, grouped by the subalgebra it describes.
/// With `normal_only`, pairs with `[N, M] ≠ 1` are skipped and `ψ` is
/// restricted to `C_G(N)M/M ∩ Z(G/M)` before enumeration.
pub fn enumerate_hopf_data(d: &Double, normal_only: bool, caps: Caps) -> Result<Vec<EnumeratedHopf>> {
    let g = d.group();
    let normals = g.normal_subgroups(d.classes(), caps)?;
    let stables: Vec<Arc<StableDual>> = normals
        .par_iter()
        .map(|n| stable_linear_characters(g, n).map(Arc::new))
        .collect::<Result<_>>()?;
    let x_lists: Vec<Vec<Vec<usize>>> = stables.iter().map(|s| s.subgroups()).collect();
    let pairs: Vec<(usize, usize)> = (0..normals.len())
        .flat_map(|i| (0..normals.len()).map(move |j| (i, j)))
        .collect();
    let per_pair: Vec<Vec<HopfDatum>> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Vec<HopfDatum>> {
            let (n, m) = (&normals[i], &normals[j]);
            if normal_only && !g.commute_elementwise(n, m) {
                return Ok(Vec::new());
            }
            let (q, proj) = g.quotient(m)?;
            let mut rep = vec![usize::MAX; q.order()];
            for h in (0..g.order()).rev() {
                rep[proj[h]] = h;
            }
            let allowed: Vec<usize> = (0..q.order())
                .filter(|&t| {
                    !normal_only
                        || ((0..q.order()).all(|u| q.mul(t, u) == q.mul(u, t))
                            && n.elements().iter().all(|&y| g.mul(rep[t], y) == g.mul(y, rep[t])))
                })
                .collect();
            let mut out = Vec::new();
            for x in &x_lists[i] {
                for images in injective_homs(&stables[i], x, &q, &allowed) {
                    let psi0 = images.iter().map(|&t| rep[t]).collect();
                    out.push(HopfDatum::new(g, n.clone(), m.clone(), stables[i].clone(), x.clone(), psi0)?);
                    if out.len() > caps.max_enumerated {
                        return Err(Error::CapExceeded(format!(
                            "more than {} Hopf data",
                            caps.max_enumerated
                        )));
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let total: usize = per_pair.iter().map(Vec::len).sum();
    if total > caps.max_enumerated {
        return Err(Error::CapExceeded(format!("{total} Hopf data")));
    }

    let mut grouped: BTreeMap<LabelSet, Vec<HopfDatum>> = BTreeMap::new();
    let descriptions: Vec<(HopfSubalgebraDescription, LabelSet)> = per_pair
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|datum| {
            let desc = build_hopf(d, datum)?;
            let labels = desc.labels();
            Ok((desc, labels))
        })
        .collect::<Result<_>>()?;
    let mut first: BTreeMap<LabelSet, HopfSubalgebraDescription> = BTreeMap::new();
    for (desc, labels) in descriptions {
        grouped.entry(labels.clone()).or_default().push(desc.datum.clone());
        first.entry(labels).or_insert(desc);
    }
    let mut out: Vec<EnumeratedHopf> = grouped
        .into_iter()
        .map(|(labels, mut data)| {
            data.sort_by_key(HopfDatum::sort_key);
            let mut description = first.remove(&labels).expect("grouped together");
            description.datum = data[0].clone();
            let dimension = description.datum.dimension(g);
            EnumeratedHopf {
                description,
                data,
                dimension,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.dimension
            .cmp(&b.dimension)
            .then_with(|| a.data[0].sort_key().cmp(&b.data[0].sort_key()))
    });
    Ok(out)
}

/// `D(N(a), core_G(ker γ), ⟨f0⟩, f0^i ↦ l0^i M)` for the irreducible `i`,
/// checked to be normal and to reproduce the kernel.
pub fn kernel_to_datum(d: &Double, i: usize) -> Result<HopfDatum> {
    let g = d.group();
    let sk = d.double_kernel_structured(i)?;
    let stable = Arc::new(stable_linear_characters(g, &sk.n)?);
    let fail = |detail: String| Error::violated("kerndescr", detail);
    let f = stable
        .index_of(&sk.f0)
        .ok_or_else(|| fail("f0 is not a G-stable linear character of N(a)".into()))?;
    let (x, psi0): (Vec<usize>, Vec<usize>) = (0..sk.s as i64)
        .map(|k| (stable.pow(f, k), g.pow(sk.l0, k)))
        .unzip();
    let datum = HopfDatum::new(g, sk.n.clone(), sk.m0.clone(), stable, x, psi0)
        .map_err(|e| fail(format!("kernel datum is invalid: {e}")))?;
    if !is_normal_datum(g, &datum) {
        return Err(fail(format!("kernel datum of {} is not normal", d.irrep(i).address())));
    }
    if build_hopf(d, &datum)?.labels() != d.double_kernel(i) {
        return Err(fail(format!("datum of {} does not reproduce the kernel", d.irrep(i).address())));
    }
    Ok(datum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_preset;

    fn double(name: &str) -> Double {
        Double::new(&group_preset(name, None, Caps::default()).unwrap()).unwrap()
    }

    #[test]
    fn dimension_examples() {
        let d = double("S3");
        let g = d.group();
        let e = g.trivial_subgroup();
        let w = g.whole();
        let z = g.center();
        for (n, m, dim) in [(e.clone(), e.clone(), 6), (w.clone(), z.clone(), 1), (z, w, 36)] {
            let datum = HopfDatum::with_trivial_x(g, n, m).unwrap();
            assert_eq!(datum.dimension(g), dim);
            build_hopf(&d, &datum).unwrap();
        }
    }

    #[test]
    fn normality_examples() {
        let d = double("S3");
        let g = d.group();
        let a3 = g.commutator_subgroup(&g.whole(), &g.whole());
        assert_eq!(a3.order(), 3);
        let cases = [
            (g.whole(), g.center(), true),
            (g.whole(), a3.clone(), false),
            (a3.clone(), a3.clone(), true),
        ];
        for (n, m, expected) in cases {
            let datum = HopfDatum::with_trivial_x(g, n, m).unwrap();
            assert_eq!(is_normal_datum(g, &datum), expected);
            let desc = build_hopf(&d, &datum).unwrap();
            assert_eq!(is_normal_bruteforce(&d, &desc).unwrap(), expected);
        }
    }

    #[test]
    fn integrals_agree() {
        let d = double("Q8");
        for entry in enumerate_hopf_data(&d, false, Caps::default()).unwrap() {
            let lam = hopf_integral(&d, &entry.description).unwrap();
            assert_eq!(lam, label_integral(&d, &entry.description.labels()));
        }
    }

    #[test]
    fn invalid_data_are_rejected() {
        let d = double("S3");
        let g = d.group();
        let a3 = g.commutator_subgroup(&g.whole(), &g.whole());
        let stable = Arc::new(stable_linear_characters(g, &g.whole()).unwrap());
        assert_eq!(stable.len(), 2);
        let t = (0..6).find(|&h| !a3.contains(h)).unwrap();
        // sign ↦ (12)A3 is fine; sign ↦ A3 is not injective
        assert!(HopfDatum::new(g, g.whole(), a3.clone(), stable.clone(), vec![0, 1], vec![0, t]).is_ok());
        assert!(HopfDatum::new(g, g.whole(), a3.clone(), stable.clone(), vec![0, 1], vec![0, 0]).is_err());
        // a transposition does not generate a normal subgroup
        let not_normal = g.generate(&[t]);
        assert!(HopfDatum::with_trivial_x(g, g.whole(), not_normal).is_err());
    }

    #[test]
    fn trivial_group_has_one_datum() {
        let d = double("C1");
        let all = enumerate_hopf_data(&d, false, Caps::default()).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].data.len(), 1);
    }

    #[test]
    fn abelian_counts_are_subgroups_of_the_square() {
        // D(A) ≅ k[Â × A]; subgroups of C2², C3², C4²
        for (name, count) in [("C2", 5), ("C3", 6), ("C4", 15)] {
            let d = double(name);
            let all = enumerate_hopf_data(&d, false, Caps::default()).unwrap();
            assert_eq!(all.len(), count, "{name}");
            assert!(all.iter().all(|e| e.data.len() == 1));
            let normal = enumerate_hopf_data(&d, true, Caps::default()).unwrap();
            assert_eq!(normal.len(), count, "{name}");
        }
    }

    #[test]
    fn kernels_give_normal_data() {
        for name in ["S3", "Q8", "D8"] {
            let d = double(name);
            for i in 0..d.len() {
                let datum = kernel_to_datum(&d, i).unwrap();
                let desc = build_hopf(&d, &datum).unwrap();
                assert!(is_normal_bruteforce(&d, &desc).unwrap(), "{name} {i}");
            }
        }
    }

    #[test]
    fn kernel_of_identity_class_irrep() {
        let d = double("S3");
        let g = d.group();
        for gi in 0..d.table().len() {
            let i = d.index_of(0, gi).unwrap();
            let datum = kernel_to_datum(&d, i).unwrap();
            assert!(datum.n().is_trivial());
            assert_eq!(datum.x().len(), 1);
            let ker = d.table().kernel_of_character(d.table().irr(gi));
            assert_eq!(datum.m(), &ker);
            assert_eq!(datum.dimension(g), (6 * ker.order()) as u64);
        }
    }

    #[test]
    fn fast_and_brute_force_normality_agree() {
        for name in ["S3", "Q8"] {
            let d = double(name);
            let all = enumerate_hopf_data(&d, false, Caps::default()).unwrap();
            let normal = enumerate_hopf_data(&d, true, Caps::default()).unwrap();
            let mut count = 0;
            for e in &all {
                for datum in &e.data {
                    let desc = build_hopf(&d, datum).unwrap();
                    let fast = is_normal_datum(d.group(), datum);
                    assert_eq!(fast, is_normal_bruteforce(&d, &desc).unwrap(), "{name}");
                    count += fast as usize;
                }
            }
            assert_eq!(count, normal.iter().map(|e| e.data.len()).sum::<usize>());
        }
    }

    #[test]
    fn json_shape() {
        let d = double("S3");
        let g = d.group();
        let datum = HopfDatum::with_trivial_x(g, g.whole(), g.center()).unwrap();
        let v = datum.to_json(g, true);
        assert_eq!(v["dimension"], 1);
        assert_eq!(v["X"]["order"], 1);
        assert_eq!(v["N"].as_array().unwrap().len(), 6);
    }
}
