//! Exact arithmetic in `ℚ(ζ_E)`.
//!
//! Values live in the power basis `1, ζ, …, ζ^{φ(E)-1}` modulo the cyclotomic
//! polynomial `Φ_E`, so equality is coefficient-wise. Binary operations on
//! values of different orders embed both operands into the lcm order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Per-order field data: `Φ_E` and the reduction of every `ζ^j`, `0 ≤ j < E`.
#[derive(Debug)]
pub struct Field {
    order: u32,
    phi: usize,
    /// `red[j]` = coordinates of `ζ^j` as sparse `(index, coefficient)` pairs.
    red: Vec<Vec<(usize, i64)>>,
}

impl Field {
    pub fn get(order: u32) -> Result<Arc<Field>> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Field>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.read().expect("field cache poisoned").get(&order) {
            return Ok(f.clone());
        }
        let field = Arc::new(Field::build(order));
        let mut w = cache.write().expect("field cache poisoned");
        Ok(w.entry(order).or_insert(field).clone())
    }

    fn build(order: u32) -> Field {
        let phi_poly = cyclotomic_polynomial(order as usize);
        let phi = phi_poly.len() - 1;
        let mut red = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; phi];
        if phi > 0 {
            cur[0] = 1;
        }
        for _ in 0..order {
            red.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i, c))
                    .collect(),
            );
            // multiply by ζ and reduce the overflow with Φ_E (monic)
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c -= top * phi_poly[i];
                }
            }
        }
        Field { order, phi, red }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree `φ(E)` of the field over `ℚ`.
    pub fn degree(&self) -> usize {
        self.phi
    }
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = exact_div(&p, &cyclotomic_polynomial(d));
    }
    p
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// An element of `ℚ(ζ_E)` in canonical power-basis form.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<Field>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Result<Self> {
        let field = Field::get(order)?;
        let coeffs = vec![BigRational::zero(); field.phi];
        Ok(Cyclotomic { field, coeffs })
    }

    pub fn from_rational(r: BigRational, order: u32) -> Result<Self> {
        let mut z = Self::zero(order)?;
        z.coeffs[0] = r;
        Ok(z)
    }

    pub fn from_integer(n: i64, order: u32) -> Result<Self> {
        Self::from_rational(BigRational::from_integer(n.into()), order)
    }

    pub fn one(order: u32) -> Result<Self> {
        Self::from_integer(1, order)
    }

    /// `ζ_E^k`.
    pub fn root_of_unity(k: i64, order: u32) -> Result<Self> {
        let mut z = Self::zero(order)?;
        let j = k.rem_euclid(order as i64) as usize;
        for &(i, c) in &z.field.red[j] {
            z.coeffs[i] = BigRational::from_integer(c.into());
        }
        Ok(z)
    }

    /// Builds `Σ_j c_j ζ^j` from exponent-indexed rational coefficients.
    pub fn from_exponent_coeffs(coeffs: &[BigRational], order: u32) -> Result<Self> {
        let mut z = Self::zero(order)?;
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                z.add_scaled_root(j, c);
            }
        }
        Ok(z)
    }

    fn add_scaled_root(&mut self, j: usize, c: &BigRational) {
        let e = self.field.order as usize;
        for &(i, r) in &self.field.red[j % e] {
            self.coeffs[i] += c * BigInt::from(r);
        }
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Re-expresses the value at order `target`, which must be a multiple of
    /// the current order.
    pub fn embed(&self, target: u32) -> Result<Self> {
        let e = self.order();
        if target == e {
            return Ok(self.clone());
        }
        if target == 0 || !target.is_multiple_of(e) {
            return Err(Error::InvalidInput(format!(
                "cannot embed order {e} into order {target}"
            )));
        }
        let step = (target / e) as usize;
        let mut z = Self::zero(target)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                z.add_scaled_root(i * step, c);
            }
        }
        Ok(z)
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.order().lcm(&b.order());
        (a.embed(l).expect("lcm"), b.embed(l).expect("lcm"))
    }

    fn same_order_op(&self, other: &Self, f: impl Fn(&Self, &Self) -> Self) -> Self {
        if self.order() == other.order() {
            f(self, other)
        } else {
            let (a, b) = Self::aligned(self, other);
            f(&a, &b)
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn div_rational(&self, r: &BigRational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::InvalidInput("division by zero".into()));
        }
        Ok(self.scale(&r.recip()))
    }

    fn apply_power_map(&self, j: usize) -> Self {
        let e = self.order() as usize;
        let mut z = Cyclotomic {
            field: self.field.clone(),
            coeffs: vec![BigRational::zero(); self.field.phi],
        };
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                z.add_scaled_root((i * j) % e, c);
            }
        }
        z
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let e = self.order() as usize;
        self.apply_power_map(e - 1)
    }

    /// `z · conj(z)`.
    pub fn abs_sq(&self) -> Self {
        self * &self.conj()
    }

    /// Galois automorphism `ζ ↦ ζ^j`.
    pub fn galois_power(&self, j: i64) -> Result<Self> {
        let e = self.order();
        let jj = j.rem_euclid(e as i64);
        if jj.gcd(&(e as i64)) != 1 {
            return Err(Error::NotCoprime { j, order: e });
        }
        Ok(self.apply_power_map(jj as usize))
    }

    /// If the value is `ζ_E^k`, the exponent `k`.
    pub fn as_root_of_unity(&self) -> Option<u32> {
        let e = self.order();
        (0..e).find(|&k| {
            let red = &self.field.red[k as usize];
            let mut idx = 0;
            self.coeffs.iter().enumerate().all(|(i, c)| {
                if idx < red.len() && red[idx].0 == i {
                    let ok = *c == BigRational::from_integer(red[idx].1.into());
                    idx += 1;
                    ok
                } else {
                    c.is_zero()
                }
            })
        })
    }

    /// Approximate complex value, for display only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let e = self.order() as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = std::f64::consts::TAU * i as f64 / e;
            (re + c * t.cos(), im + c * t.sin())
        })
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order() == other.order() {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::aligned(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on power-basis coefficients after a common embedding. A
/// total order for deterministic sorting, not an ordering of complex numbers.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.order() == other.order() {
            self.coeffs.cmp(&other.coeffs)
        } else {
            let (a, b) = Self::aligned(self, other);
            a.coeffs.cmp(&b.coeffs)
        }
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.same_order_op(rhs, |a, b| Cyclotomic {
            field: a.field.clone(),
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        })
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.same_order_op(rhs, |a, b| Cyclotomic {
            field: a.field.clone(),
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        })
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.same_order_op(rhs, |a, b| {
            let mut out = Cyclotomic {
                field: a.field.clone(),
                coeffs: vec![BigRational::zero(); a.field.phi],
            };
            for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    out.add_scaled_root(i + j, &(x * y));
                }
            }
            out
        })
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.order() == rhs.order() {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

/// Renders e.g. `2`, `-1`, `z3`, `1 + 2*z4^3` where `zE` is `ζ_E`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.order();
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let mono = match i {
                0 => String::new(),
                1 => format!("z{e}"),
                _ => format!("z{e}^{i}"),
            };
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            terms.push((c.is_negative(), body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (neg, body)) in terms.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

fn int_to_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

fn json_to_int(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl Cyclotomic {
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| serde_json::Value::Array(vec![int_to_json(c.numer()), int_to_json(c.denom())]))
            .collect();
        serde_json::json!({ "order": self.order(), "coeffs": coeffs })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::InvalidInput("malformed cyclotomic JSON".into());
        let order = v
            .get("order")
            .and_then(|o| o.as_u64())
            .and_then(|o| u32::try_from(o).ok())
            .ok_or_else(bad)?;
        let coeffs = v.get("coeffs").and_then(|c| c.as_array()).ok_or_else(bad)?;
        let mut z = Self::zero(order)?;
        if coeffs.len() != z.coeffs.len() {
            return Err(bad());
        }
        for (slot, pair) in z.coeffs.iter_mut().zip(coeffs) {
            let pair = pair.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let num = json_to_int(&pair[0]).ok_or_else(bad)?;
            let den = json_to_int(&pair[1]).ok_or_else(bad)?;
            if den.is_zero() {
                return Err(bad());
            }
            *slot = BigRational::new(num, den);
        }
        Ok(z)
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Cyclotomic::from_json(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(k: i64, e: u32) -> Cyclotomic {
        Cyclotomic::root_of_unity(k, e).unwrap()
    }

    fn int(n: i64, e: u32) -> Cyclotomic {
        Cyclotomic::from_integer(n, e).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // first n with a coefficient outside {-1,0,1}
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn roots_of_unity() {
        assert!(z(0, 7).is_one());
        assert_eq!(z(1, 3) + z(2, 3), int(-1, 3));
        assert_eq!(z(2, 4), int(-1, 4));
        assert_eq!(z(6, 6), int(1, 6));
        assert_eq!(z(-1, 5), z(4, 5));
        assert!(matches!(Cyclotomic::root_of_unity(1, 0), Err(Error::ZeroOrder)));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!((int(1, 4) + z(1, 4)) * (int(1, 4) - z(1, 4)), int(2, 4));
        assert_eq!(z(1, 6) * z(5, 6), int(1, 6));
        assert_eq!(z(1, 5) + Cyclotomic::zero(5).unwrap(), z(1, 5));
    }

    #[test]
    fn conjugation_and_modulus() {
        assert_eq!(int(3, 5).conj(), int(3, 5));
        assert_eq!(z(1, 5).conj(), z(4, 5));
        assert_eq!((z(1, 3) - z(2, 3)).conj(), z(2, 3) - z(1, 3));
        assert!(z(7, 12).abs_sq().is_one());
        assert_eq!((int(1, 4) + z(1, 4)).abs_sq(), int(2, 4));
        assert!(Cyclotomic::zero(9).unwrap().abs_sq().is_zero());
    }

    #[test]
    fn galois_action() {
        let w = z(1, 5);
        assert_eq!(w.galois_power(1).unwrap(), w);
        assert_eq!(w.galois_power(2).unwrap(), z(2, 5));
        let s = z(1, 3) + z(2, 3);
        assert_eq!(s.galois_power(2).unwrap(), s);
        assert!(matches!(z(1, 6).galois_power(3), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn mixed_orders_embed() {
        assert_eq!(z(1, 2), z(3, 6));
        assert_eq!(z(1, 3) * z(1, 2), z(5, 6));
        assert_eq!((z(1, 4) + z(1, 3)).order(), 12);
        assert_eq!(z(1, 3).embed(12).unwrap(), z(4, 12));
        assert!(z(1, 3).embed(10).is_err());
    }

    #[test]
    fn root_lookup_and_rational() {
        assert_eq!(z(5, 12).as_root_of_unity(), Some(5));
        assert_eq!(int(2, 12).as_root_of_unity(), None);
        assert_eq!(int(-1, 4).as_root_of_unity(), Some(2));
        assert_eq!((z(1, 3) + z(2, 3)).to_integer(), Some(BigInt::from(-1)));
        assert_eq!(z(1, 3).to_rational(), None);
    }

    #[test]
    fn json_round_trip() {
        let v = (z(1, 8) + int(3, 8)).scale(&BigRational::new(2.into(), 3.into()));
        let j = v.to_json();
        assert_eq!(j["order"], 8);
        assert_eq!(j["coeffs"][0], serde_json::json!([2, 1]));
        assert_eq!(Cyclotomic::from_json(&j).unwrap(), v);
        let s = serde_json::to_string(&v).unwrap();
        let back: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(Cyclotomic::from_json(&serde_json::json!({"order": 8, "coeffs": []})).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(int(-1, 3).to_string(), "-1");
        assert_eq!(z(1, 4).to_string(), "z4");
        assert_eq!((int(1, 4) - z(1, 4)).to_string(), "1 - z4");
        assert_eq!(Cyclotomic::zero(3).unwrap().to_string(), "0");
    }

    fn element(e: u32) -> impl Strategy<Value = Cyclotomic> {
        proptest::collection::vec((-4i64..=4, 1i64..=3), e as usize).prop_map(move |cs| {
            let rs: Vec<BigRational> = cs
                .into_iter()
                .map(|(n, d)| BigRational::new(n.into(), d.into()))
                .collect();
            Cyclotomic::from_exponent_coeffs(&rs, e).unwrap()
        })
    }

    fn triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
        (1u32..=60).prop_flat_map(|e| (element(e), element(e), element(e)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn field_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }

        #[test]
        fn abs_sq_is_real_and_definite((a, _, _) in triple()) {
            let n = a.abs_sq();
            prop_assert_eq!(n.conj(), n.clone());
            prop_assert_eq!(n.is_zero(), a.is_zero());
        }

        #[test]
        fn roots_cycle(e in 1u32..=60, k in -200i64..200) {
            let w = Cyclotomic::root_of_unity(k, e).unwrap();
            let mut p = Cyclotomic::one(e).unwrap();
            for _ in 0..e {
                p = &p * &w;
            }
            prop_assert!(p.is_one());
            prop_assert_eq!(w.as_root_of_unity(), Some(k.rem_euclid(e as i64) as u32));
        }

        #[test]
        fn embedding_is_compatible(m in 1u32..=5, (a, b) in (element(6), element(6))) {
            let big = 6 * m;
            prop_assert_eq!((&a * &b).embed(big).unwrap(), &a.embed(big).unwrap() * &b.embed(big).unwrap());
            prop_assert_eq!(a.embed(big).unwrap(), a);
        }
    }
}
