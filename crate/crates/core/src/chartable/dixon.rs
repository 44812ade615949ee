//! Dixon–Schneider: simultaneous eigenvectors of the class-sum matrices over
//! a prime field, lifted to exact cyclotomic values.

use num_integer::Roots;
use num_rational::BigRational;

use super::Character;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{ClassPartition, Group};
use crate::linalg::{is_prime, mod_inv, mod_pow, nullspace_mod_p, primitive_root, rref_mod_p};

/// Least prime `p ≡ 1 (mod e)` with `p > 2√n`.
pub fn dixon_prime(n: usize, e: u32) -> u64 {
    let n = n as u64;
    let e = e as u64;
    let mut p = e + 1;
    while p * p <= 4 * n || !is_prime(p) {
        p += e;
    }
    p
}

/// `coeff[j][i][k] = #{x ∈ C_j : x⁻¹ z_k ∈ C_i}`.
fn class_coefficients(g: &Group, cp: &ClassPartition) -> Vec<Vec<Vec<u64>>> {
    let r = cp.len();
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for k in 0..r {
        let z = cp.representative(k);
        for (j, aj) in a.iter_mut().enumerate() {
            for &x in cp.class(j) {
                let i = cp.class_of(g.mul(g.inv(x), z));
                aj[i][k] += 1;
            }
        }
    }
    a
}

/// Splits `F_p^r` into common eigenspaces of the class matrices. Each returned
/// vector is a central character `ω` normalized so that `ω[0] = 1`.
fn central_characters(a: &[Vec<Vec<u64>>], p: u64) -> Result<Vec<Vec<u64>>> {
    let r = a.len();
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|k| u64::from(i == k)).collect())
        .collect();
    let mut pending = vec![identity];
    let mut done: Vec<Vec<u64>> = Vec::new();
    let broken = |msg: &str| Error::OrthogonalityBroken(format!("class algebra does not split: {msg}"));
    for mj in a.iter().skip(1) {
        let mut next = Vec::new();
        for basis in pending {
            if basis.len() == 1 {
                done.push(basis.into_iter().next().expect("one vector"));
                continue;
            }
            for space in split(mj, basis, p)? {
                if space.len() == 1 {
                    done.push(space.into_iter().next().expect("one vector"));
                } else {
                    next.push(space);
                }
            }
        }
        pending = next;
        if pending.is_empty() {
            break;
        }
    }
    for basis in pending {
        if basis.len() != 1 {
            return Err(broken("eigenspace of dimension > 1 remains"));
        }
        done.extend(basis);
    }
    if done.len() != r {
        return Err(broken("wrong number of eigenvectors"));
    }
    for v in done.iter_mut() {
        if v[0] == 0 {
            return Err(broken("eigenvector vanishes on the identity class"));
        }
        let inv = mod_inv(v[0], p);
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
    }
    Ok(done)
}

/// Eigenspace decomposition of `m` (acting on columns) restricted to the
/// invariant subspace spanned by the RREF rows of `basis`.
fn split(m: &[Vec<u64>], mut basis: Vec<Vec<u64>>, p: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let pivots = rref_mod_p(&mut basis, p);
    let d = basis.len();
    let r = m.len();
    // restricted matrix: column s = coordinates of m·b_s
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| (0..r).map(|i| (0..r).map(|k| m[i][k] * b[k] % p).sum::<u64>() % p).collect())
        .collect();
    let restricted: Vec<Vec<u64>> = (0..d)
        .map(|t| (0..d).map(|s| images[s][pivots[t]]).collect())
        .collect();
    let mut spaces = Vec::new();
    let mut total = 0;
    for lambda in 0..p {
        let shifted: Vec<Vec<u64>> = restricted
            .iter()
            .enumerate()
            .map(|(t, row)| {
                row.iter()
                    .enumerate()
                    .map(|(s, &v)| if s == t { (v + p - lambda) % p } else { v })
                    .collect()
            })
            .collect();
        let null = nullspace_mod_p(&shifted, d, p);
        if null.is_empty() {
            continue;
        }
        total += null.len();
        let mut space: Vec<Vec<u64>> = null
            .iter()
            .map(|c| {
                (0..r)
                    .map(|i| (0..d).map(|s| c[s] * basis[s][i] % p).sum::<u64>() % p)
                    .collect()
            })
            .collect();
        rref_mod_p(&mut space, p);
        spaces.push(space);
        if total == d {
            break;
        }
    }
    if total != d {
        return Err(Error::OrthogonalityBroken(
            "class matrix is not diagonalizable over the chosen prime".into(),
        ));
    }
    Ok(spaces)
}

/// Irreducible characters of `g`, with values in `ℚ(ζ_E)` for `E = exp(g)`,
/// in no particular order.
pub fn irreducible_characters(g: &Group, cp: &ClassPartition) -> Result<Vec<Character>> {
    let n = g.order() as u64;
    let e = g.exponent();
    let r = cp.len();
    let p = dixon_prime(g.order(), e);
    let a = class_coefficients(g, cp);
    let omegas = central_characters(&a, p)?;
    let sizes: Vec<u64> = cp.sizes().iter().map(|&s| s as u64).collect();
    let inverse_class: Vec<usize> = (0..r)
        .map(|k| cp.class_of(g.inv(cp.representative(k))))
        .collect();
    let root = mod_pow(primitive_root(p), (p - 1) / e as u64, p);
    let sqrt_n = n.sqrt();

    let mut out = Vec::with_capacity(r);
    for omega in omegas {
        let s = (0..r).fold(0u64, |acc, k| {
            let t = omega[k] * omega[inverse_class[k]] % p * mod_inv(sizes[k] % p, p) % p;
            (acc + t) % p
        });
        if s == 0 {
            return Err(Error::OrthogonalityBroken("degenerate central character".into()));
        }
        let d2 = n % p * mod_inv(s, p) % p;
        let d = (1..=sqrt_n)
            .find(|&d| d * d % p == d2)
            .ok_or_else(|| Error::OrthogonalityBroken("no admissible degree".into()))?;
        let chi_mod: Vec<u64> = (0..r)
            .map(|k| omega[k] * d % p * mod_inv(sizes[k] % p, p) % p)
            .collect();
        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let z = cp.representative(k);
            let o = g.element_order(z) as u64;
            let zo = mod_pow(root, e as u64 / o, p);
            let inv_o = mod_inv(o % p, p);
            let mut coeffs = vec![BigRational::from_integer(0.into()); e as usize];
            let mut power = 0usize;
            let powers: Vec<u64> = (0..o)
                .map(|_| {
                    let v = chi_mod[cp.class_of(power)];
                    power = g.mul(power, z);
                    v
                })
                .collect();
            for j in 0..o {
                // m_j = (1/o) Σ_t χ(z^t) ζ^{-jt}
                let m = (0..o).fold(0u64, |acc, t| {
                    let w = mod_pow(zo, (o - (j * t) % o) % o, p);
                    (acc + powers[t as usize] * w) % p
                }) * inv_o
                    % p;
                if m > d {
                    return Err(Error::OrthogonalityBroken(format!(
                        "eigenvalue multiplicity {m} exceeds degree {d}"
                    )));
                }
                coeffs[(j * (e as u64 / o)) as usize] = BigRational::from_integer(m.into());
            }
            values.push(Cyclotomic::from_exponent_coeffs(&coeffs, e)?);
        }
        out.push(Character::new(values));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_choice() {
        // S3: E = 6, bound 2√6 ≈ 4.9
        assert_eq!(dixon_prime(6, 6), 7);
        assert_eq!(dixon_prime(1, 1), 3);
        assert_eq!(dixon_prime(24, 12), 13);
        let p = dixon_prime(512, 8);
        assert!(p % 8 == 1 && p * p > 4 * 512);
    }
}
