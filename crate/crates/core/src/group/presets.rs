use std::fmt;
use std::str::FromStr;

use super::{Caps, Group};
use crate::error::{Error, Result};

/// Named groups. Dihedral groups are indexed by their order, so `D8` is the
/// symmetry group of the square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preset {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion8,
    Product(Box<Preset>, Box<Preset>),
}

impl Preset {
    pub fn from_token(name: &str, parameter: Option<usize>) -> Result<Preset> {
        let need = || {
            parameter.ok_or_else(|| Error::ParameterOutOfRange(format!("`{name}` needs a parameter")))
        };
        match name.to_ascii_lowercase().as_str() {
            "cyclic" => Ok(Preset::Cyclic(need()?)),
            "dihedral" => Ok(Preset::Dihedral(need()?)),
            "symmetric" => Ok(Preset::Symmetric(need()?)),
            "alternating" => Ok(Preset::Alternating(need()?)),
            "quaternion8" | "quaternion" => Ok(Preset::Quaternion8),
            _ if parameter.is_none() => name.parse(),
            _ => Err(Error::UnknownPreset(name.to_string())),
        }
    }

    pub fn build(&self, caps: Caps) -> Result<Group> {
        let out_of_range = |what: &str, n: usize| {
            Err(Error::ParameterOutOfRange(format!("{what} {n}")))
        };
        match *self {
            Preset::Cyclic(n) => {
                if n == 0 {
                    return out_of_range("cyclic order", n);
                }
                check_cap(n, caps)?;
                let gens = if n == 1 { vec![] } else { vec![cycle(n)] };
                Group::from_permutations(n, &gens, caps)
            }
            Preset::Dihedral(order) => {
                if order == 0 || order % 2 == 1 {
                    return out_of_range("dihedral order", order);
                }
                check_cap(order, caps)?;
                let n = order / 2;
                match n {
                    1 => Preset::Cyclic(2).build(caps),
                    2 => Preset::Product(Box::new(Preset::Cyclic(2)), Box::new(Preset::Cyclic(2))).build(caps),
                    _ => {
                        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
                        Group::from_permutations(n, &[cycle(n), reflection], caps)
                    }
                }
            }
            Preset::Symmetric(n) => {
                if n == 0 {
                    return out_of_range("symmetric degree", n);
                }
                check_cap(factorial(n), caps)?;
                let gens = match n {
                    1 => vec![],
                    2 => vec![cycle(2)],
                    _ => vec![transposition(n, 0, 1), cycle(n)],
                };
                Group::from_permutations(n, &gens, caps)
            }
            Preset::Alternating(n) => {
                if n == 0 {
                    return out_of_range("alternating degree", n);
                }
                check_cap(factorial(n).div_ceil(2), caps)?;
                let gens: Vec<Vec<usize>> = (2..n)
                    .map(|k| {
                        let mut p: Vec<usize> = (0..n).collect();
                        p[0] = 1;
                        p[1] = k;
                        p[k] = 0;
                        p
                    })
                    .collect();
                Group::from_permutations(n, &gens, caps)
            }
            Preset::Quaternion8 => quaternion8(caps),
            Preset::Product(ref a, ref b) => {
                let ga = a.build(caps)?;
                let gb = b.build(caps)?;
                Group::direct_product(&ga, &gb, caps)
            }
        }
    }
}

fn check_cap(order: usize, caps: Caps) -> Result<()> {
    if order > caps.max_order {
        Err(Error::GroupTooLarge {
            order,
            cap: caps.max_order,
        })
    } else {
        Ok(())
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k)).unwrap_or(usize::MAX)
}

fn cycle(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

fn transposition(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(a, b);
    p
}

fn quaternion8(caps: Caps) -> Result<Group> {
    // index = 2*unit + sign with units 1,i,j,k and sign bit for -1.
    const UNIT_MUL: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let rows: Vec<Vec<usize>> = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (u, neg) = UNIT_MUL[a / 2][b / 2];
                    let sign = (a % 2 == 1) ^ (b % 2 == 1) ^ neg;
                    2 * u + sign as usize
                })
                .collect()
        })
        .collect();
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    Ok(Group::from_table(&rows, caps)?.with_labels(labels))
}

impl FromStr for Preset {
    type Err = Error;

    /// Parses compact names: `C6`, `D8`, `S3`, `A4`, `Q8`, and products
    /// joined by `x` or `×`, e.g. `S3xC2`.
    fn from_str(s: &str) -> Result<Preset> {
        let s = s.trim();
        let unknown = || Error::UnknownPreset(s.to_string());
        if let Some((a, b)) = s.split_once(['x', '×']) {
            return Ok(Preset::Product(Box::new(a.parse()?), Box::new(b.parse()?)));
        }
        if s.eq_ignore_ascii_case("q8") {
            return Ok(Preset::Quaternion8);
        }
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(unknown)?;
        let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
        match head.to_ascii_uppercase() {
            'C' => Ok(Preset::Cyclic(n)),
            'D' => Ok(Preset::Dihedral(n)),
            'S' => Ok(Preset::Symmetric(n)),
            'A' => Ok(Preset::Alternating(n)),
            _ => Err(unknown()),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Cyclic(n) => write!(f, "C{n}"),
            Preset::Dihedral(n) => write!(f, "D{n}"),
            Preset::Symmetric(n) => write!(f, "S{n}"),
            Preset::Alternating(n) => write!(f, "A{n}"),
            Preset::Quaternion8 => write!(f, "Q8"),
            Preset::Product(a, b) => write!(f, "{a}x{b}"),
        }
    }
}

/// Builds a named group: either a family token (`symmetric`, `cyclic`, ...)
/// with a parameter, or a compact name such as `S3xC2`.
pub fn group_preset(name: &str, parameter: Option<usize>, caps: Caps) -> Result<Group> {
    Preset::from_token(name, parameter)?.build(caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::conjugacy_classes;

    fn build(name: &str) -> Group {
        group_preset(name, None, Caps::default()).unwrap()
    }

    #[test]
    fn orders_and_exponents() {
        for (name, order, exponent) in [
            ("C1", 1, 1),
            ("C2", 2, 2),
            ("C6", 6, 6),
            ("S3", 6, 6),
            ("D8", 8, 4),
            ("D4", 4, 2),
            ("Q8", 8, 4),
            ("A4", 12, 6),
            ("S4", 24, 12),
            ("S3xC2", 12, 6),
            ("A5", 60, 30),
        ] {
            let g = build(name);
            assert_eq!(g.order(), order, "{name}");
            assert_eq!(g.exponent(), exponent, "{name}");
            g.check_axioms().unwrap();
        }
    }

    #[test]
    fn family_tokens() {
        let caps = Caps::default();
        assert_eq!(group_preset("symmetric", Some(3), caps).unwrap().order(), 6);
        assert_eq!(group_preset("dihedral", Some(8), caps).unwrap().order(), 8);
        assert_eq!(group_preset("quaternion8", None, caps).unwrap().exponent(), 4);
        assert!(matches!(group_preset("dihedral", Some(7), caps), Err(Error::ParameterOutOfRange(_))));
        assert!(matches!(group_preset("cyclic", Some(0), caps), Err(Error::ParameterOutOfRange(_))));
        assert!(matches!(group_preset("Z5", None, caps), Err(Error::UnknownPreset(_))));
        assert!(matches!(group_preset("frobenius", Some(20), caps), Err(Error::UnknownPreset(_))));
        assert!(matches!(group_preset("S7", None, caps), Err(Error::GroupTooLarge { .. })));
    }

    #[test]
    fn quaternion_structure() {
        let q = build("Q8");
        assert_eq!(q.label(1), "-1");
        assert_eq!(q.center().elements(), &[0, 1]);
        let (k, _) = q.quotient(&q.center()).unwrap();
        assert_eq!(k.order(), 4);
        assert_eq!(k.exponent(), 2);
        let cp = conjugacy_classes(&q);
        assert_eq!(q.normal_subgroups(&cp, Caps::default()).unwrap().len(), 6);
    }

    #[test]
    fn display_round_trip() {
        for name in ["C6", "D8", "S3xC2", "Q8", "A4"] {
            let p: Preset = name.parse().unwrap();
            assert_eq!(p.to_string(), name);
        }
    }
}
