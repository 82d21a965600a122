//! Division rings with an involution.
//!
//! Three concrete rings are provided behind one runtime-tagged [`Element`]:
//! arbitrary-precision rationals, prime fields `GF(p)`, and quaternions with
//! rational components. The involution is the identity on the two fields and
//! quaternion conjugation on `H(Q)`.
//!
//! Arithmetic between elements of different rings is a programming error and
//! panics; [`crate::matrix::Matrix`] guarantees that all of its entries share
//! one ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Which division ring a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Rationals,
    PrimeField(u64),
    RationalQuaternions,
}

impl Ring {
    /// `GF(p)`; fails unless `p` is prime.
    pub fn prime_field(p: u64) -> Result<Ring> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Ring::PrimeField(p) => p,
            _ => 0,
        }
    }

    pub fn is_commutative(self) -> bool {
        !matches!(self, Ring::RationalQuaternions)
    }

    /// The field the ring is a finite-dimensional algebra over.
    pub fn base_field(self) -> Ring {
        match self {
            Ring::RationalQuaternions => Ring::Rationals,
            other => other,
        }
    }

    /// Dimension over [`Ring::base_field`].
    pub fn degree(self) -> usize {
        match self {
            Ring::RationalQuaternions => 4,
            _ => 1,
        }
    }

    pub fn zero(self) -> Element {
        self.from_i64(0)
    }

    pub fn one(self) -> Element {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Element {
        match self {
            Ring::Rationals => Element::Rational(BigRational::from_integer(BigInt::from(n))),
            Ring::PrimeField(p) => Element::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
            Ring::RationalQuaternions => {
                Element::Quaternion(Box::new(Quaternion::real(BigRational::from_integer(n.into()))))
            }
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> Result<Element> {
        let den_el = self.from_i64(den);
        Ok(&self.from_i64(num) * &den_el.invert()?)
    }

    /// Builds an element from coordinates over [`Ring::base_field`].
    pub fn from_coords(self, coords: &[Element]) -> Result<Element> {
        if coords.len() != self.degree() {
            return Err(Error::shape(format!(
                "{} coordinates for a ring of degree {}",
                coords.len(),
                self.degree()
            )));
        }
        match self {
            Ring::RationalQuaternions => {
                let mut parts = Vec::with_capacity(4);
                for c in coords {
                    match c {
                        Element::Rational(r) => parts.push(r.clone()),
                        other => {
                            return Err(Error::RingMismatch {
                                expected: Ring::Rationals,
                                found: other.ring(),
                            })
                        }
                    }
                }
                let z = parts.pop().unwrap();
                let y = parts.pop().unwrap();
                let x = parts.pop().unwrap();
                let w = parts.pop().unwrap();
                Ok(Element::Quaternion(Box::new(Quaternion { w, x, y, z })))
            }
            _ => {
                let c = &coords[0];
                if c.ring() != self {
                    return Err(Error::RingMismatch {
                        expected: self,
                        found: c.ring(),
                    });
                }
                Ok(c.clone())
            }
        }
    }

    /// Parses the text encoding of one element.
    pub fn parse_element(self, text: &str) -> Result<Element> {
        let text = text.trim();
        match self {
            Ring::Rationals => Ok(Element::Rational(parse_rational(text)?)),
            Ring::PrimeField(p) => {
                let n: i128 = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad residue `{text}`")))?;
                Ok(Element::Residue {
                    value: n.rem_euclid(p as i128) as u64,
                    modulus: p,
                })
            }
            Ring::RationalQuaternions => {
                let inner = text
                    .strip_prefix('[')
                    .and_then(|t| t.strip_suffix(']'))
                    .ok_or_else(|| Error::Parse(format!("bad quaternion `{text}`")))?;
                let parts: Vec<&str> = inner.split(',').collect();
                if parts.len() != 4 {
                    return Err(Error::Parse(format!("quaternion needs 4 components: `{text}`")));
                }
                let coords = parts
                    .iter()
                    .map(|s| parse_rational(s.trim().trim_matches('"')).map(Element::Rational))
                    .collect::<Result<Vec<_>>>()?;
                self.from_coords(&coords)
            }
        }
    }

    /// Decodes one element of the JSON interchange format.
    pub fn element_from_json(self, value: &serde_json::Value) -> Result<Element> {
        use serde_json::Value;
        match (self, value) {
            (Ring::RationalQuaternions, Value::Array(items)) => {
                if items.len() != 4 {
                    return Err(Error::Parse("quaternion needs 4 components".into()));
                }
                let coords = items
                    .iter()
                    .map(|v| Ring::Rationals.element_from_json(v))
                    .collect::<Result<Vec<_>>>()?;
                self.from_coords(&coords)
            }
            (_, Value::String(s)) => self.parse_element(s),
            (_, Value::Number(n)) => self.parse_element(&n.to_string()),
            (_, other) => Err(Error::Parse(format!("unexpected entry {other} for ring {self}"))),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "GF({p})"),
            Ring::RationalQuaternions => write!(f, "H(Q)"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        let t = s.trim();
        match t {
            "Q" | "rationals" => return Ok(Ring::Rationals),
            "H(Q)" | "H" | "rational_quaternions" | "quaternions" => return Ok(Ring::RationalQuaternions),
            _ => {}
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("GF"))
            .ok_or_else(|| Error::Parse(format!("unknown ring `{s}`")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in `{s}`")))?;
        Ring::prime_field(p)
    }
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Ring, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `w + x i + y j + z k` with rational components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub w: BigRational,
    pub x: BigRational,
    pub y: BigRational,
    pub z: BigRational,
}

impl Quaternion {
    pub fn real(w: BigRational) -> Self {
        Quaternion {
            w,
            x: BigRational::zero(),
            y: BigRational::zero(),
            z: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    fn norm_sqr(&self) -> BigRational {
        &self.w * &self.w + &self.x * &self.x + &self.y * &self.y + &self.z * &self.z
    }

    fn conj(&self) -> Quaternion {
        Quaternion {
            w: self.w.clone(),
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }

    fn mul(&self, o: &Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (&self.w, &self.x, &self.y, &self.z);
        let (a2, b2, c2, d2) = (&o.w, &o.x, &o.y, &o.z);
        Quaternion {
            w: a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            x: a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            y: a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            z: a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        }
    }

    fn components(&self) -> [&BigRational; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }
}

/// A division-ring scalar in canonical form, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
    Quaternion(Box<Quaternion>),
}

impl Element {
    pub fn ring(&self) -> Ring {
        match self {
            Element::Rational(_) => Ring::Rationals,
            Element::Residue { modulus, .. } => Ring::PrimeField(*modulus),
            Element::Quaternion(_) => Ring::RationalQuaternions,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Rational(r) => r.is_zero(),
            Element::Residue { value, .. } => *value == 0,
            Element::Quaternion(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Element::Rational(r) => r.is_one(),
            Element::Residue { value, .. } => *value == 1,
            Element::Quaternion(q) => q.w.is_one() && q.x.is_zero() && q.y.is_zero() && q.z.is_zero(),
        }
    }

    /// Two-sided multiplicative inverse.
    pub fn invert(&self) -> Result<Element> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(match self {
            Element::Rational(r) => Element::Rational(r.recip()),
            Element::Residue { value, modulus } => Element::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
            Element::Quaternion(q) => {
                let n = q.norm_sqr();
                let c = q.conj();
                Element::Quaternion(Box::new(Quaternion {
                    w: &c.w / &n,
                    x: &c.x / &n,
                    y: &c.y / &n,
                    z: &c.z / &n,
                }))
            }
        })
    }

    /// The involutive anti-automorphism `a -> a*`.
    pub fn conjugate(&self) -> Element {
        match self {
            Element::Quaternion(q) => Element::Quaternion(Box::new(q.conj())),
            other => other.clone(),
        }
    }

    /// Coordinates over the base field (basis `1, i, j, k` for quaternions).
    pub fn coords(&self) -> Vec<Element> {
        match self {
            Element::Quaternion(q) => q
                .components()
                .into_iter()
                .map(|c| Element::Rational(c.clone()))
                .collect(),
            other => vec![other.clone()],
        }
    }

    /// Matrix of `x -> self * x` over the base field, as rows.
    ///
    /// Column `j` holds the coordinates of `self * e_j`.
    pub fn regular_representation(&self) -> Vec<Vec<Element>> {
        self.representation(|a, e| a * e)
    }

    /// Matrix of `x -> x * self` over the base field, as rows.
    pub fn right_representation(&self) -> Vec<Vec<Element>> {
        self.representation(|a, e| e * a)
    }

    fn representation(&self, act: impl Fn(&Element, &Element) -> Element) -> Vec<Vec<Element>> {
        let ring = self.ring();
        let d = ring.degree();
        let base = ring.base_field();
        let mut rows = vec![vec![base.zero(); d]; d];
        for j in 0..d {
            let mut unit = vec![base.zero(); d];
            unit[j] = base.one();
            let e = ring.from_coords(&unit).expect("unit coordinates");
            for (i, c) in act(self, &e).coords().into_iter().enumerate() {
                rows[i][j] = c;
            }
        }
        rows
    }

    /// JSON interchange value: string for rationals, number for residues,
    /// 4-array of strings for quaternions.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::Value;
        match self {
            Element::Rational(r) => Value::String(format_rational(r)),
            Element::Residue { value, .. } => Value::from(*value),
            Element::Quaternion(q) => Value::Array(
                q.components()
                    .into_iter()
                    .map(|c| Value::String(format_rational(c)))
                    .collect(),
            ),
        }
    }

    fn check_same(&self, other: &Element) {
        if self.ring() != other.ring() {
            panic!("ring mismatch: {} vs {}", self.ring(), other.ring());
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Rational(r) => write!(f, "{}", format_rational(r)),
            Element::Residue { value, .. } => write!(f, "{value}"),
            Element::Quaternion(q) => write!(
                f,
                "[{},{},{},{}]",
                format_rational(&q.w),
                format_rational(&q.x),
                format_rational(&q.y),
                format_rational(&q.z)
            ),
        }
    }
}

impl Add for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        self.check_same(rhs);
        match (self, rhs) {
            (Element::Rational(a), Element::Rational(b)) => Element::Rational(a + b),
            (Element::Residue { value: a, modulus }, Element::Residue { value: b, .. }) => Element::Residue {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            (Element::Quaternion(a), Element::Quaternion(b)) => Element::Quaternion(Box::new(Quaternion {
                w: &a.w + &b.w,
                x: &a.x + &b.x,
                y: &a.y + &b.y,
                z: &a.z + &b.z,
            })),
            _ => unreachable!(),
        }
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        match self {
            Element::Rational(a) => Element::Rational(-a),
            Element::Residue { value, modulus } => Element::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
            Element::Quaternion(q) => Element::Quaternion(Box::new(Quaternion {
                w: -&q.w,
                x: -&q.x,
                y: -&q.y,
                z: -&q.z,
            })),
        }
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        self.check_same(rhs);
        match (self, rhs) {
            (Element::Rational(a), Element::Rational(b)) => Element::Rational(a - b),
            (Element::Residue { value: a, modulus }, Element::Residue { value: b, .. }) => Element::Residue {
                value: ((*a as u128 + (*modulus - *b) as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            (Element::Quaternion(a), Element::Quaternion(b)) => Element::Quaternion(Box::new(Quaternion {
                w: &a.w - &b.w,
                x: &a.x - &b.x,
                y: &a.y - &b.y,
                z: &a.z - &b.z,
            })),
            _ => unreachable!(),
        }
    }
}

impl Mul for &Element {
    type Output = Element;

    fn mul(self, rhs: &Element) -> Element {
        self.check_same(rhs);
        match (self, rhs) {
            (Element::Rational(a), Element::Rational(b)) => Element::Rational(a * b),
            (Element::Residue { value: a, modulus }, Element::Residue { value: b, .. }) => Element::Residue {
                value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            (Element::Quaternion(a), Element::Quaternion(b)) => Element::Quaternion(Box::new(a.mul(b))),
            _ => unreachable!(),
        }
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    let r = BigRational::new(num, den);
    debug_assert!(r.denom().is_positive());
    Ok(r)
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
