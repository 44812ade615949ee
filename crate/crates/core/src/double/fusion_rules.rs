//! Fusion rules of `Rep(D(G))` from characters.

use num_rational::BigRational;
use rayon::prelude::*;

use super::Double;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// `N_{ij}^k` for all irreducibles together with duals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionTable {
    n: usize,
    mult: Vec<u32>,
    duals: Vec<usize>,
}

impl FusionTable {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn multiplicity(&self, i: usize, j: usize, k: usize) -> u32 {
        self.mult[(i * self.n + j) * self.n + k]
    }

    /// Irreducible constituents of `V_i ⊗ V_j`.
    pub fn constituents(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&k| self.multiplicity(i, j, k) > 0)
            .collect()
    }

    pub fn dual(&self, i: usize) -> usize {
        self.duals[i]
    }
}

impl Double {
    fn orbit_lookup(&self) -> Vec<Option<usize>> {
        let n = self.group().order();
        (0..n * n).map(|k| self.orbit_of(k / n, k % n)).collect()
    }

    /// Values of `χ_i χ_j` (tensor product character) on orbit representatives:
    /// `P(x, g) = Σ_{uv = x} χ_i(p_v ⋈ g) χ_j(p_u ⋈ g)`.
    fn tensor_values(&self, lookup: &[Option<usize>], i: usize, j: usize) -> Vec<Cyclotomic> {
        let g = self.group();
        let n = g.order();
        let (ci, cj) = (self.double_character(i), self.double_character(j));
        (0..self.num_orbits())
            .map(|o| {
                let (x, a) = self.orbit_representative(o);
                let mut acc = Cyclotomic::zero(self.exponent()).expect("positive exponent");
                for v in 0..n {
                    let u = g.mul(x, g.inv(v));
                    if let (Some(ov), Some(ou)) = (lookup[v * n + a], lookup[u * n + a]) {
                        acc += &(&ci.values[ov] * &cj.values[ou]);
                    }
                }
                acc
            })
            .collect()
    }

    /// `⟨ρ, ψ⟩ = (1/|G|) Σ_{commuting (x, g)} ρ(x, g) conj ψ(x, g)`.
    pub fn orbit_pairing(&self, rho: &[Cyclotomic], psi: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.exponent()).expect("positive exponent");
        for o in 0..self.num_orbits() {
            let w = BigRational::from_integer(self.orbit_size(o).into());
            acc += &(&rho[o] * &psi[o].conj()).scale(&w);
        }
        acc.scale(&BigRational::new(1.into(), self.group().order().into()))
    }

    /// `ρ(Λ₁) ψ(S(Λ₂))` for the integral `Λ = p_1 ⋈ (1/|G|) Σ g`, summed literally.
    pub fn integral_pairing(&self, rho: &[Cyclotomic], psi: &[Cyclotomic]) -> Cyclotomic {
        let g = self.group();
        let n = g.order();
        let mut acc = Cyclotomic::zero(self.exponent()).expect("positive exponent");
        for a in 0..n {
            for v in 0..n {
                let u = g.inv(v);
                let (sx, sa) = super::algebra::antipode(g, u, a);
                if let (Some(o1), Some(o2)) = (self.orbit_of(v, a), self.orbit_of(sx, sa)) {
                    acc += &(&rho[o1] * &psi[o2]);
                }
            }
        }
        acc.scale(&BigRational::new(1.into(), n.into()))
    }

    /// Index of the irreducible with character `χ_i ∘ S`.
    fn dual_irrep(&self, i: usize) -> Result<usize> {
        let g = self.group();
        let ch = self.double_character(i);
        let target: Vec<Cyclotomic> = (0..self.num_orbits())
            .map(|o| {
                let (x, a) = self.orbit_representative(o);
                let (sx, sa) = super::algebra::antipode(g, x, a);
                self.value_on(ch, sx, sa)
            })
            .collect();
        (0..self.len())
            .find(|&j| self.double_character(j).values == target)
            .ok_or_else(|| {
                Error::OrthogonalityBroken(format!("no irreducible dual to {}", self.irrep(i).address()))
            })
    }

    /// Full fusion table, computed once.
    pub fn fusion_table(&self) -> Result<&FusionTable> {
        self.fusion
            .get_or_init(|| self.compute_fusion())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn compute_fusion(&self) -> Result<FusionTable> {
        let m = self.len();
        let lookup = self.orbit_lookup();
        let rows: Vec<Vec<u32>> = (0..m * m)
            .into_par_iter()
            .map(|ij| {
                let (i, j) = (ij / m, ij % m);
                let p = self.tensor_values(&lookup, i, j);
                (0..m)
                    .map(|k| {
                        let c = self.orbit_pairing(&p, &self.double_character(k).values);
                        c.to_integer()
                            .and_then(|z| u32::try_from(z).ok())
                            .ok_or_else(|| {
                                Error::OrthogonalityBroken(format!(
                                    "multiplicity of {} in {} ⊗ {} is {}",
                                    self.irrep(k).address(),
                                    self.irrep(i).address(),
                                    self.irrep(j).address(),
                                    c
                                ))
                            })
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let duals = (0..m).map(|i| self.dual_irrep(i)).collect::<Result<_>>()?;
        Ok(FusionTable {
            n: m,
            mult: rows.into_iter().flatten().collect(),
            duals,
        })
    }

    /// `N_{ij}^k` computed from characters without the cached table.
    pub fn fusion_multiplicity(&self, i: usize, j: usize, k: usize) -> Result<u32> {
        let p = self.tensor_values(&self.orbit_lookup(), i, j);
        let c = self.orbit_pairing(&p, &self.double_character(k).values);
        c.to_integer()
            .and_then(|z| u32::try_from(z).ok())
            .ok_or_else(|| Error::OrthogonalityBroken(format!("multiplicity {c}")))
    }
}
