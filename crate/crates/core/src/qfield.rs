//! Exact arithmetic in Q(√2) and in quaternions with Q(√2) coordinates.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A rational number kept in machine words while it fits, promoted to
/// arbitrary precision otherwise. Values that fit are always `Small`, so the
/// derived equality and hashing are exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Rat {
    Small { n: i64, d: i64 },
    Big(BigRational),
}

impl Default for Rat {
    fn default() -> Self {
        Rat::Small { n: 0, d: 1 }
    }
}

impl Rat {
    fn int(n: i64) -> Self {
        Rat::Small { n, d: 1 }
    }

    fn from_i128(n: i128, d: i128) -> Self {
        assert!(d != 0, "zero denominator");
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rat::Small { n, d },
            _ => Rat::Big(BigRational::new(n.into(), d.into())),
        }
    }

    fn from_big(r: BigRational) -> Self {
        use num_traits::ToPrimitive;
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small { n, d },
            _ => Rat::Big(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small { n, d } => BigRational::new((*n).into(), (*d).into()),
            Rat::Big(r) => r.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rat::Small { n: 0, .. })
    }

    fn is_one(&self) -> bool {
        matches!(self, Rat::Small { n: 1, d: 1 })
    }

    fn signum(&self) -> i8 {
        match self {
            Rat::Small { n, .. } => n.signum() as i8,
            Rat::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    fn add(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small { n: 0, .. }, _) => o.clone(),
            (_, Rat::Small { n: 0, .. }) => self.clone(),
            (Rat::Small { n: a, d: b }, Rat::Small { n: c, d: e }) => {
                let (a, b, c, e) = (*a as i128, *b as i128, *c as i128, *e as i128);
                Rat::from_i128(a * e + c * b, b * e)
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }

    fn neg(&self) -> Rat {
        match self {
            Rat::Small { n, d } if *n != i64::MIN => Rat::Small { n: -n, d: *d },
            _ => Rat::from_big(-self.to_big()),
        }
    }

    fn sub(&self, o: &Rat) -> Rat {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small { n: 0, .. }, _) | (_, Rat::Small { n: 0, .. }) => Rat::default(),
            (Rat::Small { n: a, d: b }, Rat::Small { n: c, d: e }) => {
                Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *e as i128)
            }
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }

    fn div(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small { n: a, d: b }, Rat::Small { n: c, d: e }) => {
                Rat::from_i128(*a as i128 * *e as i128, *b as i128 * *c as i128)
            }
            _ => Rat::from_big(self.to_big() / o.to_big()),
        }
    }
}

impl Ord for Rat {
    fn cmp(&self, o: &Rat) -> Ordering {
        match (self, o) {
            (Rat::Small { n: a, d: b }, Rat::Small { n: c, d: e }) => {
                (*a as i128 * *e as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, o: &Rat) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small { n, d: 1 } => write!(f, "{n}"),
            Rat::Small { n, d } => write!(f, "{n}/{d}"),
            Rat::Big(r) => write!(f, "{r}"),
        }
    }
}

fn rat_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    let cand = BigRational::new(n, d);
    (&cand * &cand == *r).then_some(cand)
}

/// The number `a + b·√2` with exact rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem {
    a: Rat,
    b: Rat,
}

impl FieldElem {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        FieldElem { a: Rat::from_big(a), b: Rat::from_big(b) }
    }

    /// Rational part.
    pub fn a(&self) -> BigRational {
        self.a.to_big()
    }

    /// Coefficient of √2.
    pub fn b(&self) -> BigRational {
        self.b.to_big()
    }

    pub fn from_int(n: i64) -> Self {
        FieldElem { a: Rat::int(n), b: Rat::default() }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        FieldElem { a: Rat::from_i128(n.into(), d.into()), b: Rat::default() }
    }

    /// `(n/d)·√2`.
    pub fn sqrt2_ratio(n: i64, d: i64) -> Self {
        FieldElem { a: Rat::default(), b: Rat::from_i128(n.into(), d.into()) }
    }

    pub fn zero() -> Self {
        FieldElem::default()
    }

    pub fn one() -> Self {
        FieldElem::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a − b√2`.
    pub fn conjugate(&self) -> Self {
        FieldElem { a: self.a.clone(), b: self.b.neg() }
    }

    fn norm_rat(&self) -> Rat {
        self.a.mul(&self.a).sub(&Rat::int(2).mul(&self.b.mul(&self.b)))
    }

    /// Field norm `a² − 2b²`.
    pub fn field_norm(&self) -> BigRational {
        self.norm_rat().to_big()
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm_rat();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElem { a: self.a.div(&n), b: self.b.neg().div(&n) })
    }

    pub fn checked_div(&self, rhs: &FieldElem) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let r = Rat::from_big(r.clone());
        FieldElem { a: self.a.mul(&r), b: self.b.mul(&r) }
    }

    /// Sign of the real number `a + b√2`.
    pub fn signum(&self) -> i8 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sa == 0 || sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        // Opposite signs: compare a² against 2b².
        match self.a.mul(&self.a).cmp(&Rat::int(2).mul(&self.b.mul(&self.b))) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    /// Square root inside Q(√2), if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.signum() < 0 {
            return None;
        }
        let (a, b) = (self.a(), self.b());
        let two = BigRational::from_integer(2.into());
        if b.is_zero() {
            if let Some(r) = rat_sqrt(&a) {
                return Some(FieldElem::new(r, BigRational::zero()));
            }
            return rat_sqrt(&(&a / &two)).map(|r| FieldElem::new(BigRational::zero(), r));
        }
        // (c + d√2)² = a + b√2  ⇔  c² + 2d² = a, 2cd = b.
        let disc = rat_sqrt(&self.field_norm())?;
        for s in [&a + &disc, &a - &disc] {
            if let Some(c) = rat_sqrt(&(s / &two)) {
                if c.is_zero() {
                    continue;
                }
                let d = &b / (&two * &c);
                let cand = FieldElem::new(c, d);
                if &cand * &cand == *self {
                    return Some(cand);
                }
            }
        }
        None
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        FieldElem { a: self.a.add(&rhs.a), b: self.b.add(&rhs.b) }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        FieldElem { a: self.a.sub(&rhs.a), b: self.b.sub(&rhs.b) }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        if self.b.is_zero() && rhs.b.is_zero() {
            return FieldElem { a: self.a.mul(&rhs.a), b: Rat::default() };
        }
        let a = self.a.mul(&rhs.a).add(&Rat::int(2).mul(&self.b.mul(&rhs.b)));
        let b = self.a.mul(&rhs.b).add(&self.b.mul(&rhs.a));
        FieldElem { a, b }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { a: self.a.neg(), b: self.b.neg() }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { a: self.a.neg(), b: self.b.neg() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√2", self.b),
            (false, false) => {
                if self.b.signum() < 0 {
                    write!(f, "{}-{}√2", self.a, self.b.neg())
                } else {
                    write!(f, "{}+{}√2", self.a, self.b)
                }
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FieldElemRepr {
    a: String,
    b: String,
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldElemRepr { a: self.a.to_string(), b: self.b.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = FieldElemRepr::deserialize(d)?;
        let a = r.a.parse().map_err(serde::de::Error::custom)?;
        let b = r.b.parse().map_err(serde::de::Error::custom)?;
        Ok(FieldElem::new(a, b))
    }
}

/// `w + x·i + y·j + z·k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: FieldElem,
    pub x: FieldElem,
    pub y: FieldElem,
    pub z: FieldElem,
}

impl Quaternion {
    pub fn new(w: FieldElem, x: FieldElem, y: FieldElem, z: FieldElem) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        Quaternion::new(
            FieldElem::from_int(w),
            FieldElem::from_int(x),
            FieldElem::from_int(y),
            FieldElem::from_int(z),
        )
    }

    pub fn one() -> Self {
        Quaternion::from_ints(1, 0, 0, 0)
    }
    pub fn i() -> Self {
        Quaternion::from_ints(0, 1, 0, 0)
    }
    pub fn j() -> Self {
        Quaternion::from_ints(0, 0, 1, 0)
    }
    pub fn k() -> Self {
        Quaternion::from_ints(0, 0, 0, 1)
    }

    /// Basis unit by index: 0 → i, 1 → j, 2 → k.
    pub fn basis(idx: usize) -> Self {
        let mut v = [FieldElem::zero(), FieldElem::zero(), FieldElem::zero()];
        v[idx] = FieldElem::one();
        Quaternion::pure(v)
    }

    pub fn pure(v: [FieldElem; 3]) -> Self {
        let [x, y, z] = v;
        Quaternion::new(FieldElem::zero(), x, y, z)
    }

    pub fn vector(&self) -> [FieldElem; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.w.clone(), -&self.x, -&self.y, -&self.z)
    }

    pub fn norm(&self) -> FieldElem {
        &(&(&self.w * &self.w) + &(&self.x * &self.x)) + &(&(&self.y * &self.y) + &(&self.z * &self.z))
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn is_pure(&self) -> bool {
        self.w.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.is_real() && self.w.is_one()
    }

    /// `±1`.
    pub fn is_central_unit(&self) -> bool {
        self.is_real() && (self.w.is_one() || (-&self.w).is_one())
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_one() {
            return Ok(self.conj());
        }
        let inv = n.inverse()?;
        let c = self.conj();
        Ok(Quaternion::new(&c.w * &inv, &c.x * &inv, &c.y * &inv, &c.z * &inv))
    }

    pub fn scale(&self, s: &FieldElem) -> Self {
        Quaternion::new(&self.w * s, &self.x * s, &self.y * s, &self.z * s)
    }

    /// `self · v · self⁻¹` for a unit `self`.
    pub fn conjugate(&self, v: &Quaternion) -> Quaternion {
        &(self * v) * &self.conj()
    }
}

impl<'a> Mul<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn mul(self, r: &Quaternion) -> Quaternion {
        let (a, b, c, d) = (&self.w, &self.x, &self.y, &self.z);
        let (e, f, g, h) = (&r.w, &r.x, &r.y, &r.z);
        let w = &(&(a * e) - &(b * f)) - &(&(c * g) + &(d * h));
        let x = &(&(a * f) + &(b * e)) + &(&(c * h) - &(d * g));
        let y = &(&(a * g) - &(b * h)) + &(&(c * e) + &(d * f));
        let z = &(&(a * h) + &(b * g)) + &(&(d * e) - &(c * f));
        Quaternion::new(w, x, y, z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, r: Quaternion) -> Quaternion {
        &self * &r
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.w, -&self.x, -&self.y, -&self.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        -&self
    }
}

/// Cosine and sine of `2π·s/8`.
fn eighth_turn(s: i64) -> (FieldElem, FieldElem) {
    let h = || FieldElem::sqrt2_ratio(1, 2);
    let table = |s: i64| -> FieldElem {
        match s.rem_euclid(8) {
            0 => FieldElem::one(),
            1 | 7 => h(),
            2 | 6 => FieldElem::zero(),
            3 | 5 => -h(),
            _ => FieldElem::from_int(-1),
        }
    };
    (table(s), table(s - 2))
}

/// `cos θ + u·sin θ` for `θ = 2π·t/n`; only angles that are multiples of π/4.
pub fn exp_axis(u: &Quaternion, t: i64, n: i64) -> Result<Quaternion> {
    if n == 0 {
        return Err(Error::DivisionByZero);
    }
    let g = t.gcd(&n);
    let (tr, nr) = ((t / g) * n.signum(), (n / g).abs());
    if 8 % nr != 0 {
        return Err(Error::UnsupportedAngle { t, n });
    }
    let (c, s) = eighth_turn(tr * (8 / nr));
    let mut q = u.scale(&s);
    q.w = c;
    Ok(q)
}

/// An element of S³×S³.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub left: Quaternion,
    pub right: Quaternion,
}

impl GroupElement {
    pub fn new(left: Quaternion, right: Quaternion) -> Self {
        GroupElement { left, right }
    }

    pub fn identity() -> Self {
        GroupElement::new(Quaternion::one(), Quaternion::one())
    }

    pub fn from_ints(l: [i64; 4], r: [i64; 4]) -> Self {
        GroupElement::new(
            Quaternion::from_ints(l[0], l[1], l[2], l[3]),
            Quaternion::from_ints(r[0], r[1], r[2], r[3]),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.left.is_one() && self.right.is_one()
    }

    pub fn is_unit(&self) -> bool {
        self.left.is_unit() && self.right.is_unit()
    }

    /// Inverse of a pair of unit quaternions.
    pub fn inverse(&self) -> Self {
        GroupElement::new(self.left.conj(), self.right.conj())
    }

    pub fn is_central(&self) -> bool {
        self.left.is_central_unit() && self.right.is_central_unit()
    }

    pub fn swap_factors(&self) -> Self {
        GroupElement::new(self.right.clone(), self.left.clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = GroupElement::identity();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Least `n ≤ max` with `selfⁿ = 1`.
    pub fn order(&self, max: u32) -> Option<u32> {
        let mut acc = self.clone();
        for n in 1..=max {
            if acc.is_identity() {
                return Some(n);
            }
            acc = &acc * self;
        }
        None
    }

    /// `self · g · self⁻¹`.
    pub fn conjugate(&self, g: &GroupElement) -> GroupElement {
        &(self * g) * &self.inverse()
    }
}

impl<'a> Mul<&'a GroupElement> for &'a GroupElement {
    type Output = GroupElement;
    fn mul(self, r: &GroupElement) -> GroupElement {
        GroupElement::new(&self.left * &r.left, &self.right * &r.right)
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement::new(-&self.left, -&self.right)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(lit) = literal_name(self) {
            return f.write_str(&lit);
        }
        write!(f, "[{}, {}, {}, {}]", self.w, self.x, self.y, self.z)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.left, self.right)
    }
}

/// Grammar literal for `q` when it is `±1`, `±i`, `±j`, `±k` or `e(u,t/8)`.
pub fn literal_name(q: &Quaternion) -> Option<String> {
    const AXES: [&str; 3] = ["i", "j", "k"];
    for s in [1i64, -1] {
        let sign = if s < 0 { "-" } else { "" };
        if *q == Quaternion::from_ints(s, 0, 0, 0) {
            return Some(format!("{sign}1"));
        }
        for (idx, name) in AXES.iter().enumerate() {
            if *q == Quaternion::basis(idx).scale(&FieldElem::from_int(s)) {
                return Some(format!("{sign}{name}"));
            }
        }
    }
    for (idx, name) in AXES.iter().enumerate() {
        for t in [1, 3, 5, 7] {
            if exp_axis(&Quaternion::basis(idx), t, 8).ok().as_ref() == Some(q) {
                return Some(format!("e({name},{t}/8)"));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = FieldElem::from_ratio(i64::MAX, 7);
        let sq = &big * &big;
        let want = BigRational::new(i64::MAX.into(), 7.into());
        assert_eq!(sq.a(), &want * &want);
        assert!(matches!(sq.a, Rat::Big(_)));
        // Back in range after dividing out: must compare equal to the small form.
        let back = sq.checked_div(&big).unwrap();
        assert_eq!(back, big);
        assert!(matches!(back.a, Rat::Small { .. }));
        let min = FieldElem::from_int(i64::MIN);
        assert_eq!((-min).a(), -BigRational::from_integer(i64::MIN.into()));
    }

    fn fe(a: (i64, i64), b: (i64, i64)) -> FieldElem {
        FieldElem::new(BigRational::new(a.0.into(), a.1.into()), BigRational::new(b.0.into(), b.1.into()))
    }

    #[test]
    fn conjugate_product() {
        assert_eq!(&fe((1, 1), (1, 1)) * &fe((1, 1), (-1, 1)), FieldElem::from_int(-1));
        let h = fe((0, 1), (1, 2));
        assert_eq!(&h * &h, FieldElem::from_ratio(1, 2));
    }

    #[test]
    fn division_multiplies_back() {
        let x = fe((3, 1), (2, 1));
        let y = fe((1, 1), (1, 1));
        let q = x.checked_div(&y).unwrap();
        assert_eq!(&q * &y, x);
        assert_eq!(x.checked_div(&FieldElem::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn signs_and_roots() {
        assert_eq!(fe((-1, 1), (1, 1)).signum(), 1);
        assert_eq!(fe((3, 1), (-2, 1)).signum(), 1);
        assert_eq!(fe((1, 1), (-1, 1)).signum(), -1);
        assert_eq!(FieldElem::from_ratio(1, 2).sqrt(), Some(FieldElem::sqrt2_ratio(1, 2)));
        assert_eq!(fe((3, 1), (2, 1)).sqrt(), Some(fe((1, 1), (1, 1))));
        assert_eq!(FieldElem::from_int(3).sqrt(), None);
    }

    #[test]
    fn hamilton_products() {
        assert_eq!(&Quaternion::i() * &Quaternion::j(), Quaternion::k());
        let e = exp_axis(&Quaternion::i(), 1, 8).unwrap();
        assert_eq!(&e * &e, Quaternion::i());
        let j = Quaternion::j();
        assert_eq!(&(&j * &Quaternion::i()) * &j.inverse().unwrap(), -Quaternion::i());
    }

    #[test]
    fn exp_axis_values() {
        let e = exp_axis(&Quaternion::i(), 1, 8).unwrap();
        let h = FieldElem::sqrt2_ratio(1, 2);
        assert_eq!(e, Quaternion::new(h.clone(), h, FieldElem::zero(), FieldElem::zero()));
        assert_eq!(exp_axis(&Quaternion::j(), 1, 4).unwrap(), Quaternion::j());
        assert_eq!(exp_axis(&Quaternion::i(), 2, 16).unwrap(), e);
        assert!(matches!(exp_axis(&Quaternion::i(), 1, 16), Err(Error::UnsupportedAngle { .. })));
        assert!(matches!(exp_axis(&Quaternion::i(), 1, 3), Err(Error::UnsupportedAngle { .. })));
    }

    #[test]
    fn literal_names() {
        assert_eq!(literal_name(&-Quaternion::k()).as_deref(), Some("-k"));
        let e = exp_axis(&Quaternion::j(), 3, 8).unwrap();
        assert_eq!(literal_name(&e).as_deref(), Some("e(j,3/8)"));
    }
}
