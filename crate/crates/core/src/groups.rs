//! Finite subgroups of S³×S³, slope circles, and linear algebra on so(3)⊕so(3).

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qfield::{exp_axis, FieldElem, GroupElement, Quaternion};

pub const DEFAULT_CAP: usize = 64;

/// A finite subgroup, stored as a sorted element list.
///
/// Equality and ordering look at the element set only.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteSubgroup {
    pub elements: Vec<GroupElement>,
    pub generators: Vec<GroupElement>,
}

impl PartialEq for FiniteSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for FiniteSubgroup {}

impl std::hash::Hash for FiniteSubgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state)
    }
}

impl PartialOrd for FiniteSubgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteSubgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.elements.cmp(&other.elements)
    }
}

/// Smallest subgroup containing `generators`.
pub fn closure(generators: &[GroupElement], cap: usize) -> Result<FiniteSubgroup> {
    for g in generators {
        if !g.is_unit() {
            return Err(Error::NotASubgroup(format!("generator {g} is not a unit pair")));
        }
        if !g.pow(8).is_identity() {
            return Err(Error::ExponentTooLarge);
        }
    }
    let mut gens: Vec<&GroupElement> = generators.iter().filter(|g| !g.is_identity()).collect();
    gens.sort();
    gens.dedup();
    let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
    seen.insert(GroupElement::identity());
    let mut frontier = vec![GroupElement::identity()];
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = &x * g;
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::ClosureExceedsCap { cap });
                }
                if !y.pow(8).is_identity() {
                    return Err(Error::ExponentTooLarge);
                }
                seen.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    Ok(FiniteSubgroup { elements: seen.into_iter().collect(), generators: generators.to_vec() })
}

impl FiniteSubgroup {
    pub fn trivial() -> Self {
        FiniteSubgroup { elements: vec![GroupElement::identity()], generators: vec![] }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset_of(&self, other: &FiniteSubgroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    /// Subgroup generated by the elements satisfying `pred`.
    pub fn subgroup_where(&self, pred: impl Fn(&GroupElement) -> bool) -> FiniteSubgroup {
        let gens: Vec<_> = self.elements.iter().filter(|g| pred(g)).cloned().collect();
        closure(&gens, self.order().max(1)).expect("subset of a finite group closes inside it")
    }

    /// Normal closure in `self` of the subgroup generated by `gens`.
    pub fn normal_closure(&self, gens: &[GroupElement]) -> FiniteSubgroup {
        let conj: Vec<_> =
            self.elements.iter().flat_map(|h| gens.iter().map(move |g| h.conjugate(g))).collect();
        closure(&conj, self.order().max(1)).expect("conjugates stay inside the ambient group")
    }

    /// Order of an element of this group.
    pub fn element_order(&self, g: &GroupElement) -> u32 {
        g.order(8).expect("elements have order dividing 8")
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u32 {
        self.elements.iter().map(|g| self.element_order(g)).fold(1, |a, b| a.lcm(&b))
    }

    pub fn is_cyclic(&self) -> bool {
        self.exponent() as usize == self.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements.iter().all(|a| self.elements.iter().all(|b| a * b == b * a))
    }

    /// `H ∩ Z(G)` with `Z(G) = {(±1,±1)}`.
    pub fn central_part(&self) -> FiniteSubgroup {
        self.subgroup_where(GroupElement::is_central)
    }

    /// `gHg⁻¹` for `g` normalizing or not.
    pub fn conjugated(&self, g: &GroupElement) -> FiniteSubgroup {
        let mut elements: Vec<_> = self.elements.iter().map(|h| g.conjugate(h)).collect();
        elements.sort();
        let generators = self.generators.iter().map(|h| g.conjugate(h)).collect();
        FiniteSubgroup { elements, generators }
    }

    pub fn map(&self, f: impl Fn(&GroupElement) -> GroupElement) -> FiniteSubgroup {
        let mut elements: Vec<_> = self.elements.iter().map(&f).collect();
        elements.sort();
        elements.dedup();
        let generators = self.generators.iter().map(&f).collect();
        FiniteSubgroup { elements, generators }
    }

    /// Deterministic small generating set: larger orders first, then element order.
    pub fn greedy_generators(&self) -> Vec<GroupElement> {
        let mut cands: Vec<&GroupElement> = self.elements.iter().filter(|g| !g.is_identity()).collect();
        cands.sort_by_key(|g| std::cmp::Reverse(self.element_order(g)));
        let mut gens: Vec<GroupElement> = Vec::new();
        let mut span = FiniteSubgroup::trivial();
        for g in cands {
            if span.order() == self.order() {
                break;
            }
            if !span.contains(g) {
                gens.push(g.clone());
                span = closure(&gens, self.order()).expect("subset of a finite group");
            }
        }
        gens
    }

    pub fn with_greedy_generators(mut self) -> Self {
        self.generators = self.greedy_generators();
        self
    }

    pub fn normalized_by(&self, g: &GroupElement) -> bool {
        self.elements.iter().all(|h| self.contains(&g.conjugate(h)))
    }

    /// Isomorphism label for the small groups occurring here.
    pub fn structure(&self) -> String {
        let n = self.order();
        let exp = self.exponent() as usize;
        match n {
            1 => "1".into(),
            _ if exp == n => format!("Z{n}"),
            4 => "Z2+Z2".into(),
            8 if !self.is_abelian() => {
                let involutions = self.elements.iter().filter(|g| self.element_order(g) == 2).count();
                if involutions == 1 { "Q".into() } else { "D4".into() }
            }
            8 if exp == 4 => "Z4+Z2".into(),
            8 => "Z2+Z2+Z2".into(),
            _ => format!("order {n}"),
        }
    }

    /// Order and label of `self / (self ∩ Z(G))`.
    pub fn effective_structure(&self) -> String {
        let kernel = self.central_part();
        let n = self.order() / kernel.order();
        match n {
            1 => "1".into(),
            2 => "Z2".into(),
            4 => {
                let sq_in_kernel = self.elements.iter().all(|g| kernel.contains(&(g * g)));
                if sq_in_kernel { "Z2+Z2".into() } else { "Z4".into() }
            }
            _ => format!("order {n}"),
        }
    }
}

impl fmt::Display for FiniteSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|g| g.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The circle `{(e^{p·u·θ}, e^{q·u·θ})}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlopeCircle {
    pub axis: Quaternion,
    pub p: i64,
    pub q: i64,
}

impl SlopeCircle {
    pub fn new(axis: Quaternion, p: i64, q: i64) -> Self {
        SlopeCircle { axis, p, q }
    }

    /// Circle on basis axis `idx` (0 → i, 1 → j, 2 → k).
    pub fn on_basis(idx: usize, p: i64, q: i64) -> Self {
        SlopeCircle::new(Quaternion::basis(idx), p, q)
    }

    pub fn is_coprime(&self) -> bool {
        self.p.gcd(&self.q) == 1
    }

    /// The point at `θ = 2π·t/n`.
    pub fn point(&self, t: i64, n: i64) -> Result<GroupElement> {
        Ok(GroupElement::new(exp_axis(&self.axis, self.p * t, n)?, exp_axis(&self.axis, self.q * t, n)?))
    }

    /// Index of the basis axis, if the axis is `±i`, `±j` or `±k`.
    pub fn basis_axis(&self) -> Option<(usize, i8)> {
        basis_index(&self.axis)
    }

    pub fn line(&self) -> TangentLine {
        let v = self.axis.vector();
        let p = FieldElem::from_int(self.p);
        let q = FieldElem::from_int(self.q);
        TangentLine::new(v.clone().map(|c| &c * &p), v.map(|c| &c * &q))
    }

    /// Exact membership test for an arbitrary element.
    pub fn contains(&self, g: &GroupElement) -> bool {
        let (Some(z1), Some(z2)) = (on_axis(&g.left, &self.axis), on_axis(&g.right, &self.axis)) else {
            return false;
        };
        let e = self.p.extended_gcd(&self.q);
        let (a, b) = match e.gcd {
            1 => (e.x, e.y),
            -1 => (-e.x, -e.y),
            _ => return false,
        };
        // With a·p + b·q = 1 the parameter is forced: ζ = z1^a · z2^b.
        let zeta = z1.pow(a).mul(&z2.pow(b));
        zeta.pow(self.p) == z1 && zeta.pow(self.q) == z2
    }

    pub fn swap_factors(&self) -> Self {
        SlopeCircle::new(self.axis.clone(), self.q, self.p)
    }
}

impl fmt::Display for SlopeCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{},{})", self.axis, self.p, self.q)
    }
}

pub(crate) fn basis_index(u: &Quaternion) -> Option<(usize, i8)> {
    for idx in 0..3 {
        let b = Quaternion::basis(idx);
        if *u == b {
            return Some((idx, 1));
        }
        if *u == -&b {
            return Some((idx, -1));
        }
    }
    None
}

/// A unit complex number `c + s·ι` with coordinates in Q(√2).
#[derive(Clone, Debug, PartialEq, Eq)]
struct UnitComplex {
    c: FieldElem,
    s: FieldElem,
}

impl UnitComplex {
    fn mul(&self, o: &UnitComplex) -> UnitComplex {
        UnitComplex { c: &(&self.c * &o.c) - &(&self.s * &o.s), s: &(&self.c * &o.s) + &(&self.s * &o.c) }
    }

    fn pow(&self, n: i64) -> UnitComplex {
        let base = if n < 0 { UnitComplex { c: self.c.clone(), s: -&self.s } } else { self.clone() };
        let mut acc = UnitComplex { c: FieldElem::one(), s: FieldElem::zero() };
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }
}

/// Writes `x = c + s·u` when `x` lies in span(1, u).
fn on_axis(x: &Quaternion, u: &Quaternion) -> Option<UnitComplex> {
    let v = x.vector();
    let uv = u.vector();
    let pivot = uv.iter().position(|c| !c.is_zero())?;
    let s = v[pivot].checked_div(&uv[pivot]).ok()?;
    (0..3).all(|i| v[i] == &s * &uv[i]).then(|| UnitComplex { c: x.w.clone(), s })
}

/// Sign character of `F` acting on the circle, or `None` if some element moves it.
pub fn normalizes_circle(f: &FiniteSubgroup, c: &SlopeCircle) -> Option<Vec<(GroupElement, i8)>> {
    let mut chars = Vec::with_capacity(f.order());
    for h in &f.elements {
        let l = h.left.conjugate(&c.axis);
        let r = h.right.conjugate(&c.axis);
        let neg = -&c.axis;
        let sign_of = |img: &Quaternion, slope: i64| -> Option<Option<i8>> {
            if slope == 0 {
                Some(None)
            } else if *img == c.axis {
                Some(Some(1))
            } else if *img == neg {
                Some(Some(-1))
            } else {
                None
            }
        };
        let (sl, sr) = (sign_of(&l, c.p)?, sign_of(&r, c.q)?);
        let eps = match (sl, sr) {
            (Some(a), Some(b)) if a != b => return None,
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => 1,
        };
        chars.push((h.clone(), eps));
    }
    Some(chars)
}

/// `C ∩ F`, found by scanning the points of order dividing the exponent of `F`.
pub fn circle_torsion_intersect(c: &SlopeCircle, f: &FiniteSubgroup) -> Result<FiniteSubgroup> {
    let n = f.exponent() as i64;
    let mut gens = Vec::new();
    for t in 0..n {
        let pt = c.point(t, n)?;
        if f.contains(&pt) {
            gens.push(pt);
        }
    }
    closure(&gens, f.order())
}

/// An element of so(3)⊕so(3), written as a pair of imaginary quaternion vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TangentLine {
    pub left: [FieldElem; 3],
    pub right: [FieldElem; 3],
}

impl TangentLine {
    pub fn new(left: [FieldElem; 3], right: [FieldElem; 3]) -> Self {
        TangentLine { left, right }
    }

    pub fn from_quaternions(l: &Quaternion, r: &Quaternion) -> Self {
        TangentLine::new(l.vector(), r.vector())
    }

    pub fn is_zero(&self) -> bool {
        self.left.iter().chain(self.right.iter()).all(FieldElem::is_zero)
    }

    fn coords(&self) -> Vec<FieldElem> {
        self.left.iter().chain(self.right.iter()).cloned().collect()
    }

    pub fn scale(&self, s: &FieldElem) -> TangentLine {
        TangentLine::new(self.left.clone().map(|c| &c * s), self.right.clone().map(|c| &c * s))
    }
}

/// Lines `(i,i)`, `(j,j)`, `(k,k)` of the diagonal subalgebra.
pub fn diagonal_lines() -> Vec<TangentLine> {
    (0..3).map(|idx| TangentLine::from_quaternions(&Quaternion::basis(idx), &Quaternion::basis(idx))).collect()
}

/// Componentwise `v ↦ g·v·g⁻¹`.
pub fn ad_conjugate(g: &GroupElement, l: &TangentLine) -> TangentLine {
    let lq = g.left.conjugate(&Quaternion::pure(l.left.clone()));
    let rq = g.right.conjugate(&Quaternion::pure(l.right.clone()));
    TangentLine::from_quaternions(&lq, &rq)
}

fn cross(a: &[FieldElem; 3], b: &[FieldElem; 3]) -> [FieldElem; 3] {
    let two = FieldElem::from_int(2);
    let c = |x: usize, y: usize| &(&(&a[x] * &b[y]) - &(&a[y] * &b[x])) * &two;
    [c(1, 2), c(2, 0), c(0, 1)]
}

/// Lie bracket, twice the componentwise cross product; `None` when zero.
pub fn bracket(l1: &TangentLine, l2: &TangentLine) -> Option<TangentLine> {
    let out = TangentLine::new(cross(&l1.left, &l2.left), cross(&l1.right, &l2.right));
    (!out.is_zero()).then_some(out)
}

/// Incremental row-echelon basis over Q(√2) for vectors of length 6.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<FieldElem>)>,
}

impl EchelonBasis {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v`; returns the reduced remainder when it was independent.
    pub fn insert(&mut self, v: &TangentLine) -> bool {
        let mut r = v.coords();
        for (piv, row) in &self.rows {
            if !r[*piv].is_zero() {
                let f = r[*piv].clone();
                for (x, y) in r.iter_mut().zip(row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        let Some(piv) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = r[piv].inverse().expect("pivot is nonzero");
        let r: Vec<FieldElem> = r.iter().map(|c| c * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[piv].is_zero() {
                let f = row[piv].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        self.rows.push((piv, r));
        true
    }
}

/// Dimension of the span of `lines`.
pub fn rank_over_field(lines: &[TangentLine]) -> usize {
    let mut b = EchelonBasis::default();
    for l in lines {
        b.insert(l);
        if b.rank() == 6 {
            break;
        }
    }
    b.rank()
}

/// Dimension of the Lie subalgebra generated by `lines`.
pub fn bracket_closure_rank(lines: &[TangentLine]) -> usize {
    let mut basis = EchelonBasis::default();
    let mut gens: Vec<TangentLine> = Vec::new();
    let mut queue: Vec<TangentLine> = lines.to_vec();
    while let Some(v) = queue.pop() {
        if !basis.insert(&v) {
            continue;
        }
        if basis.rank() == 6 {
            return 6;
        }
        for g in &gens {
            if let Some(b) = bracket(g, &v) {
                queue.push(b);
            }
        }
        gens.push(v);
    }
    basis.rank()
}

/// Identity component of the centralizer of a finite group in one S³ factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FactorCentralizer {
    Full,
    Circle(Quaternion),
    Trivial,
}

/// `N(H)₀ = C(H)₀`, one entry per factor.
pub fn normalizer_identity_component(h: &FiniteSubgroup) -> [FactorCentralizer; 2] {
    let factor = |pick: fn(&GroupElement) -> &Quaternion| -> FactorCentralizer {
        let noncentral: Vec<&Quaternion> =
            h.elements.iter().map(pick).filter(|q| !q.is_central_unit()).collect();
        let Some(first) = noncentral.first() else {
            return FactorCentralizer::Full;
        };
        let v = Quaternion::pure(first.vector());
        let Some(len) = v.norm().sqrt() else {
            return FactorCentralizer::Trivial;
        };
        let mut u = v.scale(&len.inverse().expect("noncentral unit has nonzero imaginary part"));
        if u.vector().iter().find(|c| !c.is_zero()).is_some_and(|c| c.signum() < 0) {
            u = -u;
        }
        if noncentral.iter().all(|q| on_axis(q, &u).is_some()) {
            FactorCentralizer::Circle(u)
        } else {
            FactorCentralizer::Trivial
        }
    };
    [factor(|g| &g.left), factor(|g| &g.right)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ge(l: [i64; 4], r: [i64; 4]) -> GroupElement {
        GroupElement::from_ints(l, r)
    }
    const ONE: [i64; 4] = [1, 0, 0, 0];
    const MONE: [i64; 4] = [-1, 0, 0, 0];
    const I: [i64; 4] = [0, 1, 0, 0];
    const J: [i64; 4] = [0, 0, 1, 0];
    const MJ: [i64; 4] = [0, 0, -1, 0];

    #[test]
    fn closure_examples() {
        let q = closure(&[ge(I, I), ge(J, MJ)], DEFAULT_CAP).unwrap();
        assert_eq!(q.order(), 8);
        assert_eq!(q.structure(), "Q");
        let z = closure(&[ge(I, I), ge(MONE, ONE)], DEFAULT_CAP).unwrap();
        assert_eq!(z.order(), 8);
        assert_eq!(z.structure(), "Z4+Z2");
        assert_eq!(closure(&[ge(MONE, ONE)], DEFAULT_CAP).unwrap().order(), 2);
    }

    #[test]
    fn closure_cap() {
        let e = GroupElement::new(exp_axis(&Quaternion::i(), 1, 8).unwrap(), Quaternion::one());
        let f = GroupElement::new(exp_axis(&Quaternion::j(), 1, 8).unwrap(), Quaternion::one());
        let j = GroupElement::new(Quaternion::j(), Quaternion::one());
        assert_eq!(closure(&[e.clone(), j.clone()], 64).unwrap().order(), 16);
        assert_eq!(closure(&[e.clone(), j], 10), Err(Error::ClosureExceedsCap { cap: 10 }));
        assert_eq!(closure(&[e, f], 64), Err(Error::ExponentTooLarge));
    }

    #[test]
    fn sign_character() {
        let q = closure(&[ge(I, I), ge(J, MJ)], DEFAULT_CAP).unwrap();
        let chars = normalizes_circle(&q, &SlopeCircle::on_basis(0, 1, 1)).unwrap();
        let eps = chars.iter().find(|(h, _)| *h == ge(J, MJ)).unwrap().1;
        assert_eq!(eps, -1);
        let tilt = closure(
            &[GroupElement::new(exp_axis(&Quaternion::i(), 1, 8).unwrap(), Quaternion::one())],
            DEFAULT_CAP,
        )
        .unwrap();
        assert!(normalizes_circle(&tilt, &SlopeCircle::on_basis(1, 1, 1)).is_none());
        assert!(normalizes_circle(&FiniteSubgroup::trivial(), &SlopeCircle::on_basis(2, 3, 5)).is_some());
    }

    #[test]
    fn circle_membership() {
        let c = SlopeCircle::on_basis(0, 1, 2);
        assert!(c.contains(&ge(MONE, ONE)));
        assert!(!c.contains(&ge(I, I)));
        assert!(c.contains(&c.point(3, 8).unwrap()));
        let c0 = SlopeCircle::on_basis(0, 1, 0);
        assert!(c0.contains(&ge(I, ONE)));
        assert!(!c0.contains(&ge(I, MONE)));
    }

    #[test]
    fn brackets() {
        let ii = TangentLine::from_quaternions(&Quaternion::i(), &Quaternion::i());
        let jj = TangentLine::from_quaternions(&Quaternion::j(), &Quaternion::j());
        let kk2 = TangentLine::from_quaternions(&Quaternion::k(), &Quaternion::k()).scale(&FieldElem::from_int(2));
        assert_eq!(bracket(&ii, &jj), Some(kk2));
        let i0 = TangentLine::from_quaternions(&Quaternion::i(), &Quaternion::from_ints(0, 0, 0, 0));
        let j0 = TangentLine::from_quaternions(&Quaternion::from_ints(0, 0, 0, 0), &Quaternion::j());
        assert_eq!(bracket(&i0, &j0), None);
        assert_eq!(rank_over_field(&diagonal_lines()), 3);
        assert_eq!(bracket_closure_rank(&diagonal_lines()), 3);
    }

    #[test]
    fn ad_examples() {
        let ii = TangentLine::from_quaternions(&Quaternion::i(), &Quaternion::i());
        let g = GroupElement::new(Quaternion::j(), Quaternion::one());
        assert_eq!(ad_conjugate(&g, &ii), TangentLine::from_quaternions(&-Quaternion::i(), &Quaternion::i()));
        let e = exp_axis(&Quaternion::i(), 1, 8).unwrap();
        let jj = TangentLine::from_quaternions(&Quaternion::j(), &Quaternion::j());
        let kk = TangentLine::from_quaternions(&Quaternion::k(), &Quaternion::k());
        assert_eq!(ad_conjugate(&GroupElement::new(e.clone(), e), &jj), kk);
    }

    #[test]
    fn normalizer_components() {
        let z = closure(&[ge(I, I), ge(MONE, ONE)], DEFAULT_CAP).unwrap();
        let n = normalizer_identity_component(&z);
        assert_eq!(n, [FactorCentralizer::Circle(Quaternion::i()), FactorCentralizer::Circle(Quaternion::i())]);
        let q = closure(&[ge(I, I), ge(J, MJ)], DEFAULT_CAP).unwrap();
        assert_eq!(normalizer_identity_component(&q), [FactorCentralizer::Trivial, FactorCentralizer::Trivial]);
        let c = closure(&[ge(MONE, ONE)], DEFAULT_CAP).unwrap();
        assert_eq!(normalizer_identity_component(&c), [FactorCentralizer::Full, FactorCentralizer::Full]);
    }
}
