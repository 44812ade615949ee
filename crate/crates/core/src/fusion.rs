//! Fusion subcategories `S(K, H, B)` of `Rep(D(G))`, the data recovered from
//! an object set, normality, and the correspondence with normal Hopf
//! subalgebras.
//!
//! `G`-invariance of a bicharacter is simultaneous,
//! `B(xkx⁻¹, xhx⁻¹) = B(k, h)`, which is what makes `(K, H, B) ↦ S(K, H, B)`
//! a bijection onto all fusion subcategories. The separate condition
//! `B(xkx⁻¹, h) = B(k, h) = B(k, xhx⁻¹)` characterizes the normal ones.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::chartable::{stable_linear_characters, LinearCharacter};
use crate::cyclotomic::Cyclotomic;
use crate::double::{Double, LabelSet};
use crate::error::{Error, Result};
use crate::group::{Caps, Group, Subgroup};
use crate::hopf::{build_hopf, is_normal_datum, HopfDatum};

/// A bicharacter `K × H → μ_E` stored as exponents of `ζ_E`, indexed by
/// positions in `K` and `H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bicharacter {
    k: Subgroup,
    h: Subgroup,
    modulus: u32,
    exps: Vec<u32>,
}

impl Bicharacter {
    pub fn trivial(k: Subgroup, h: Subgroup, modulus: u32) -> Self {
        let exps = vec![0; k.order() * h.order()];
        Bicharacter { k, h, modulus, exps }
    }

    /// From a function on `K × H`; multiplicativity is not checked here.
    pub fn from_fn(k: Subgroup, h: Subgroup, modulus: u32, f: impl Fn(usize, usize) -> u32) -> Self {
        let exps = k
            .elements()
            .iter()
            .flat_map(|&a| h.elements().iter().map(move |&b| (a, b)))
            .map(|(a, b)| f(a, b) % modulus)
            .collect();
        Bicharacter { k, h, modulus, exps }
    }

    pub fn k(&self) -> &Subgroup {
        &self.k
    }

    pub fn h(&self) -> &Subgroup {
        &self.h
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Exponent of `B(a, b)`; both arguments are ambient elements.
    pub fn exp(&self, a: usize, b: usize) -> u32 {
        let i = self.k.position(a).expect("first argument in K");
        let j = self.h.position(b).expect("second argument in H");
        self.exps[i * self.h.order() + j]
    }

    pub fn value(&self, a: usize, b: usize) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.exp(a, b) as i64, self.modulus).expect("positive modulus")
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_multiplicative(&self, g: &Group) -> bool {
        let m = self.modulus;
        let (ks, hs) = (self.k.elements(), self.h.elements());
        ks.iter().all(|&a| {
            ks.iter().all(|&a2| {
                hs.iter()
                    .all(|&b| self.exp(g.mul(a, a2), b) == (self.exp(a, b) + self.exp(a2, b)) % m)
            })
        }) && ks.iter().all(|&a| {
            hs.iter().all(|&b| {
                hs.iter()
                    .all(|&b2| self.exp(a, g.mul(b, b2)) == (self.exp(a, b) + self.exp(a, b2)) % m)
            })
        })
    }

    /// `B(xkx⁻¹, xhx⁻¹) = B(k, h)`.
    pub fn is_invariant(&self, g: &Group) -> bool {
        (0..g.order()).all(|x| {
            self.k.elements().iter().all(|&a| {
                self.h
                    .elements()
                    .iter()
                    .all(|&b| self.exp(g.conj(x, a), g.conj(x, b)) == self.exp(a, b))
            })
        })
    }

    /// `{h ∈ H : B(k, h) = 1 for all k ∈ K}`.
    pub fn radical(&self, g: &Group) -> Subgroup {
        let elems: Vec<usize> = self
            .h
            .elements()
            .iter()
            .copied()
            .filter(|&b| self.k.elements().iter().all(|&a| self.exp(a, b) == 0))
            .collect();
        g.generate(&elems)
    }

    /// Values on generator pairs, `[k, h, exponent]`.
    pub fn to_json(&self, g: &Group) -> serde_json::Value {
        let pairing: Vec<[usize; 3]> = small_generators(g, &self.k)
            .iter()
            .flat_map(|&a| {
                small_generators(g, &self.h)
                    .into_iter()
                    .map(move |b| [a, b, self.exp(a, b) as usize])
            })
            .collect();
        json!({"pairing": pairing, "order": self.modulus})
    }
}

fn small_generators(g: &Group, s: &Subgroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = g.trivial_subgroup();
    for &x in s.elements() {
        if !span.contains(x) {
            gens.push(x);
            span = g.generate(&gens);
        }
    }
    gens
}

/// Extends generator images to a homomorphism `s → Z/m` on positions of `s`,
/// or `None` if the assignment is inconsistent.
fn extend_hom(g: &Group, s: &Subgroup, gens: &[usize], images: &[u32], m: u32) -> Option<Vec<u32>> {
    let mut map = vec![u32::MAX; s.order()];
    map[0] = 0;
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        let v = map[s.position(x).expect("in subgroup")];
        for (&t, &img) in gens.iter().zip(images) {
            let y = g.mul(x, t);
            let w = (v + img) % m;
            let p = s.position(y).expect("closed");
            if map[p] == u32::MAX {
                map[p] = w;
                stack.push(y);
            } else if map[p] != w {
                return None;
            }
        }
    }
    Some(map)
}

/// `(K, H, B)` with `K, H` normal, commuting elementwise, `B` invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FusionDatum {
    b: Bicharacter,
}

impl FusionDatum {
    pub fn new(g: &Group, b: Bicharacter) -> Result<Self> {
        if !b.k.is_normal() || !b.h.is_normal() {
            return Err(Error::NotNormal("K and H must be normal in G".into()));
        }
        if !g.commute_elementwise(&b.k, &b.h) {
            return Err(Error::InvalidDatum("K and H do not centralize each other".into()));
        }
        if !b.is_multiplicative(g) {
            return Err(Error::InvalidDatum("B is not a bicharacter".into()));
        }
        if !b.is_invariant(g) {
            return Err(Error::InvalidDatum("B is not G-invariant".into()));
        }
        Ok(FusionDatum { b })
    }

    pub fn k(&self) -> &Subgroup {
        &self.b.k
    }

    pub fn h(&self) -> &Subgroup {
        &self.b.h
    }

    pub fn bicharacter(&self) -> &Bicharacter {
        &self.b
    }

    pub fn to_json(&self, d: &Double, normal: bool) -> Result<serde_json::Value> {
        let objects = fusion_from_datum(d, self)?;
        Ok(json!({
            "K": self.k().elements(),
            "H": self.h().elements(),
            "B": self.b.to_json(d.group()),
            "normal": normal,
            "objects": objects.addresses(d),
        }))
    }
}

/// A set of irreducible `D(G)`-modules, by index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FusionSubcategory {
    pub objects: BTreeSet<usize>,
}

impl FusionSubcategory {
    pub fn addresses(&self, d: &Double) -> Vec<String> {
        self.objects.iter().map(|&i| d.irrep(i).address()).collect()
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Contains the unit and is closed under duals and tensor constituents.
    pub fn is_closed(&self, d: &Double) -> Result<bool> {
        let f = d.fusion_table()?;
        if !self.objects.contains(&d.unit()) {
            return Ok(false);
        }
        for &i in &self.objects {
            if !self.objects.contains(&f.dual(i)) {
                return Ok(false);
            }
            for &j in &self.objects {
                if !f.constituents(i, j).iter().all(|k| self.objects.contains(k)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `Σ dim(X) ch_X`, summed over orbits.
    pub fn regular_character(&self, d: &Double) -> Vec<Cyclotomic> {
        let mut r = vec![Cyclotomic::zero(d.exponent()).expect("positive exponent"); d.num_orbits()];
        for &i in &self.objects {
            let ch = d.double_character(i);
            let dim = num_rational::BigRational::from_integer(ch.dimension.into());
            for (o, v) in ch.values.iter().enumerate() {
                r[o] = &r[o] + &v.scale(&dim);
            }
        }
        r
    }
}

/// Objects `(a, γ)` with `a ∈ K` and `γ(h) = B(a, h) γ(1)` on `H`, checked
/// to form a fusion subcategory.
pub fn fusion_from_datum(d: &Double, datum: &FusionDatum) -> Result<FusionSubcategory> {
    let b = &datum.b;
    let mut objects = BTreeSet::new();
    for (i, r) in d.irreps().iter().enumerate() {
        let a = d.classes().representative(r.class_index);
        if !b.k.contains(a) {
            continue;
        }
        let ct = d.centralizer_table(r.class_index);
        let gamma = ct.irr(r.gamma_index);
        let ok = b.h.elements().iter().all(|&h| {
            let v = ct.value_ambient(gamma, h).expect("H centralizes K");
            *v == &b.value(a, h) * gamma.degree()
        });
        if ok {
            objects.insert(i);
        }
    }
    let sub = FusionSubcategory { objects };
    if !sub.is_closed(d)? {
        return Err(Error::ParametrizationViolated(format!(
            "S(K, H, B) with |K| = {}, |H| = {} is not closed: {:?}",
            b.k.order(),
            b.h.order(),
            sub.addresses(d)
        )));
    }
    Ok(sub)
}

/// `(K_D, H_D, B_D)`; the bicharacter is assembled from every object and
/// every conjugating element, and must come out single-valued.
pub fn datum_from_subcategory(d: &Double, sub: &FusionSubcategory) -> Result<FusionDatum> {
    let g = d.group();
    let e = d.exponent();
    let ill = |detail: String| Error::violated("fusion datum well-definedness", detail);
    let reps: Vec<usize> = sub
        .objects
        .iter()
        .map(|&i| d.classes().representative(d.irrep(i).class_index))
        .collect();
    let k = g.normal_closure_of(&reps);
    let mut h = g.whole();
    for &i in &sub.objects {
        let r = d.irrep(i);
        if r.class_index == 0 {
            let ct = d.centralizer_table(0);
            let ker = ct.to_ambient(g, &ct.kernel_of_character(ct.irr(r.gamma_index)));
            h = g.intersection(&h, &ker);
        }
    }

    // B on conjugates of the representatives
    let mut known = vec![u32::MAX; k.order() * h.order()];
    let idx = |a: usize, b: usize| k.position(a).expect("in K") * h.order() + h.position(b).expect("in H");
    for &i in &sub.objects {
        let r = d.irrep(i);
        let a = d.classes().representative(r.class_index);
        let ct = d.centralizer_table(r.class_index);
        let gamma = ct.irr(r.gamma_index);
        let deg = gamma.degree().to_rational().expect("integral degree");
        for t in 0..g.order() {
            let conj = g.conj(g.inv(t), a);
            for &hh in h.elements() {
                let v = ct
                    .value_ambient(gamma, g.conj(t, hh))
                    .ok_or_else(|| ill("H does not centralize the support".into()))?;
                let ex = v
                    .div_rational(&deg)?
                    .as_root_of_unity()
                    .ok_or_else(|| ill(format!("γ(h)/γ(1) is not a root of unity for {}", r.address())))?;
                let ex = ex * (e / v.order()) % e;
                let slot = &mut known[idx(conj, hh)];
                if *slot == u32::MAX {
                    *slot = ex;
                } else if *slot != ex {
                    return Err(ill(format!("B({conj}, {hh}) takes two values")));
                }
            }
        }
    }
    // extend multiplicatively in the first slot
    let mut done: Vec<bool> = k.elements().iter().map(|&a| known[idx(a, 0)] != u32::MAX).collect();
    let seeds: Vec<usize> = k.elements().iter().copied().filter(|&a| done[k.position(a).expect("in K")]).collect();
    let mut stack = seeds.clone();
    while let Some(a) = stack.pop() {
        for &s in &seeds {
            let c = g.mul(a, s);
            let fresh = !std::mem::replace(&mut done[k.position(c).expect("closed")], true);
            for &hh in h.elements() {
                let v = (known[idx(a, hh)] + known[idx(s, hh)]) % e;
                let slot = &mut known[idx(c, hh)];
                if fresh {
                    *slot = v;
                } else if *slot != v {
                    return Err(ill(format!("B is not multiplicative at ({c}, {hh})")));
                }
            }
            if fresh {
                stack.push(c);
            }
        }
    }
    if known.contains(&u32::MAX) {
        return Err(ill("B is not determined on all of K".into()));
    }
    let b = Bicharacter {
        k,
        h,
        modulus: e,
        exps: known,
    };
    FusionDatum::new(g, b).map_err(|err| ill(err.to_string()))
}

/// All invariant bicharacters on `K × H`, as homomorphisms out of generator
/// images with orders dividing the generator orders.
pub fn enumerate_invariant_bicharacters(g: &Group, k: &Subgroup, h: &Subgroup, caps: Caps) -> Result<Vec<Bicharacter>> {
    let m = g.exponent();
    let kg = small_generators(g, k);
    let hg = small_generators(g, h);
    let slots: Vec<(usize, usize)> = kg.iter().flat_map(|&a| hg.iter().map(move |&b| (a, b))).collect();
    let choices: Vec<Vec<u32>> = slots
        .iter()
        .map(|&(a, b)| {
            let o = num_integer::gcd(g.element_order(a), g.element_order(b));
            (0..o).map(|j| j * (m / o)).collect()
        })
        .collect();
    let total: f64 = choices.iter().map(|c| c.len() as f64).product();
    if total > caps.max_enumerated as f64 {
        return Err(Error::CapExceeded(format!("{total} candidate pairings")));
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; slots.len()];
    loop {
        // B(gen_k, -) extended over H for each K-generator, then over K
        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(kg.len());
        let mut ok = true;
        for i in 0..kg.len() {
            let imgs: Vec<u32> = (0..hg.len()).map(|j| choices[i * hg.len() + j][pick[i * hg.len() + j]]).collect();
            match extend_hom(g, h, &hg, &imgs, m) {
                Some(r) => rows.push(r),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let mut exps = vec![0u32; k.order() * h.order()];
            for j in 0..h.order() {
                let imgs: Vec<u32> = rows.iter().map(|r| r[j]).collect();
                match extend_hom(g, k, &kg, &imgs, m) {
                    Some(col) => {
                        for (i, v) in col.into_iter().enumerate() {
                            exps[i * h.order() + j] = v;
                        }
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let b = Bicharacter {
                    k: k.clone(),
                    h: h.clone(),
                    modulus: m,
                    exps,
                };
                if b.is_multiplicative(g) && b.is_invariant(g) {
                    out.push(b);
                }
            }
        }
        // next assignment
        let mut p = 0;
        loop {
            if p == slots.len() {
                return Ok(out);
            }
            pick[p] += 1;
            if pick[p] < choices[p].len() {
                break;
            }
            pick[p] = 0;
            p += 1;
        }
    }
}

/// Every `(K, H, B)`, ordered by `(K, H)` as normal subgroups, then by `B`.
pub fn enumerate_fusion_data(d: &Double, caps: Caps) -> Result<Vec<FusionDatum>> {
    let g = d.group();
    let normals = g.normal_subgroups(d.classes(), caps)?;
    let pairs: Vec<(&Subgroup, &Subgroup)> = normals
        .iter()
        .flat_map(|k| normals.iter().map(move |h| (k, h)))
        .filter(|(k, h)| g.commute_elementwise(k, h))
        .collect();
    let per: Vec<Vec<FusionDatum>> = pairs
        .par_iter()
        .map(|(k, h)| {
            enumerate_invariant_bicharacters(g, k, h, caps)?
                .into_iter()
                .map(|b| FusionDatum::new(g, b))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let out: Vec<FusionDatum> = per.into_iter().flatten().collect();
    if out.len() > caps.max_enumerated {
        return Err(Error::CapExceeded(format!("{} fusion data", out.len())));
    }
    Ok(out)
}

/// `B(gag⁻¹, h) = B(a, h) = B(a, yhy⁻¹)` checked literally.
pub fn is_normal_fusion(g: &Group, datum: &FusionDatum) -> bool {
    let b = &datum.b;
    (0..g.order()).all(|x| {
        b.k.elements().iter().all(|&a| {
            b.h.elements().iter().all(|&h| {
                let v = b.exp(a, h);
                b.exp(g.conj(x, a), h) == v && b.exp(a, g.conj(x, h)) == v
            })
        })
    })
}

/// Centrality of `r_D = Σ dim(X) ch_X` in `D(G)*`, by exhaustive commutation.
pub fn centrality_of_regular_character(d: &Double, sub: &FusionSubcategory) -> bool {
    let r = d.character_as_dual(&sub.regular_character(d));
    d.is_central_in_dual(&r)
}

/// Irreducibles whose kernel contains the given labels: the objects of
/// `Rep(D(G)//L)`.
pub fn quotient_objects(d: &Double, labels: &LabelSet) -> FusionSubcategory {
    let objects = (0..d.len())
        .into_par_iter()
        .filter(|&i| labels.is_subset(&d.double_kernel(i)))
        .collect();
    FusionSubcategory { objects }
}

/// Direction of [`normal_quotient_correspondence`].
#[derive(Debug, Clone)]
pub enum Correspondence {
    Forward(HopfDatum),
    Backward(FusionDatum),
}

/// Forward: `K = N`, `H = ⟨ψ0(x), M⟩`, `B(n, ψ0(x)m) = x(n)⁻¹`.
pub fn forward(d: &Double, datum: &HopfDatum) -> Result<FusionDatum> {
    let g = d.group();
    if !is_normal_datum(g, datum) {
        return Err(Error::InvalidDatum("forward correspondence needs a normal datum".into()));
    }
    let mut gens: Vec<usize> = datum.psi0().to_vec();
    gens.extend_from_slice(datum.m().elements());
    let h = g.generate(&gens);
    let nt = datum.stable().table();
    let cosets: Vec<Vec<usize>> = (0..datum.x().len()).map(|p| datum.coset(g, p)).collect();
    let e = g.exponent();
    let b = Bicharacter::from_fn(datum.n().clone(), h.clone(), e, |a, hh| {
        let p = cosets.iter().position(|c| c.binary_search(&hh).is_ok()).expect("H is the union of the cosets");
        let x = datum.stable().element(datum.x()[p]);
        let local = nt.local_of(a).expect("a ∈ N");
        (e - x.exponent_at(local) % e) % e
    });
    FusionDatum::new(g, b).map_err(|err| Error::violated("mainn", err.to_string()))
}

/// Backward: `D(K, K^⊥, X, ψ)` with `X = {B(−, h)}`, `K^⊥` the radical of
/// `B` and `ψ(B(−, h)) = h⁻¹ K^⊥`, the sign that inverts [`forward`].
pub fn backward(d: &Double, datum: &FusionDatum) -> Result<HopfDatum> {
    let g = d.group();
    if !is_normal_fusion(g, datum) {
        return Err(Error::InvalidDatum("backward correspondence needs a normal fusion datum".into()));
    }
    let b = &datum.b;
    let k = b.k.clone();
    let radical = b.radical(g);
    let stable = Arc::new(stable_linear_characters(g, &k)?);
    let nt = stable.table();
    let mut x = Vec::new();
    let mut psi0 = Vec::new();
    for &hh in b.h.elements() {
        let exps: Vec<u32> = nt.embedding().iter().map(|&a| b.exp(a, hh)).collect();
        let lc = LinearCharacter::from_exponents(exps, nt.value_order());
        let xi = stable
            .index_of(&lc)
            .ok_or_else(|| Error::violated("main2", "B(−, h) is not a G-stable linear character"))?;
        if !x.contains(&xi) {
            x.push(xi);
            psi0.push(g.inv(hh));
        }
    }
    HopfDatum::new(g, k, radical, stable, x, psi0).map_err(|err| Error::violated("main2", err.to_string()))
}

pub fn normal_quotient_correspondence(d: &Double, input: &Correspondence) -> Result<Correspondence> {
    match input {
        Correspondence::Forward(h) => forward(d, h).map(Correspondence::Backward),
        Correspondence::Backward(f) => backward(d, f).map(Correspondence::Forward),
    }
}

/// Checks both round trips on element-space descriptions and that the
/// forward image is the quotient category of the Hopf subalgebra.
pub fn check_round_trip_from_hopf(d: &Double, datum: &HopfDatum) -> Result<FusionDatum> {
    let fd = forward(d, datum)?;
    let labels = build_hopf(d, datum)?.labels();
    let objects = fusion_from_datum(d, &fd)?;
    if objects != quotient_objects(d, &labels) {
        return Err(Error::violated(
            "mainn",
            format!("S(K, H, B) = {:?} is not the quotient category", objects.addresses(d)),
        ));
    }
    let back = backward(d, &fd)?;
    if build_hopf(d, &back)?.labels() != labels {
        return Err(Error::violated("main2", "backward(forward(L)) ≠ L"));
    }
    Ok(fd)
}

pub fn check_round_trip_from_fusion(d: &Double, datum: &FusionDatum) -> Result<HopfDatum> {
    let hd = backward(d, datum)?;
    let fd = forward(d, &hd)?;
    if fusion_from_datum(d, &fd)? != fusion_from_datum(d, datum)? {
        return Err(Error::violated("main2", "forward(backward(S)) ≠ S"));
    }
    Ok(hd)
}
