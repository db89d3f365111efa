//! Canonical forms under K-swap, factor swap, global conjugation, conjugation
//! of K⁺ by N(H)₀ and slope reparametrization.
//!
//! Conjugators are drawn from the binary octahedral group in each factor,
//! which acts on the axes `±i, ±j, ±k` by the 24 signed permutations of
//! determinant one. That keeps the search in integer arithmetic until the
//! final comparison of principal isotropy groups.

use std::cmp::Ordering;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{
    basis_index, normalizer_identity_component, FactorCentralizer, FiniteSubgroup, SlopeCircle,
};
use crate::qfield::{exp_axis, GroupElement, Quaternion};

use super::{conjugate_k, validate, Diagram, IsotropySubgroup};

/// A rotation of R³ permuting the coordinate axes: `e_c ↦ sign[c]·e_{perm[c]}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Rot {
    perm: [usize; 3],
    sign: [i8; 3],
}

impl Rot {
    fn apply_axis(&self, c: usize) -> (usize, i8) {
        (self.perm[c], self.sign[c])
    }

    fn apply_quaternion(&self, q: &Quaternion) -> Quaternion {
        let v = q.vector();
        let mut out = v.clone();
        for c in 0..3 {
            out[self.perm[c]] = if self.sign[c] < 0 { -&v[c] } else { v[c].clone() };
        }
        let mut r = Quaternion::pure(out);
        r.w = q.w.clone();
        r
    }
}

struct Octahedral {
    rots: Vec<Rot>,
    quats: Vec<Quaternion>,
}

fn octahedral() -> &'static Octahedral {
    static OCT: OnceLock<Octahedral> = OnceLock::new();
    OCT.get_or_init(|| {
        // The binary octahedral group has elements of order 3, so the
        // exponent-8 closure does not apply; enumerate it directly.
        let gens = [
            exp_axis(&Quaternion::i(), 1, 8).expect("eighth turn"),
            exp_axis(&Quaternion::j(), 1, 8).expect("eighth turn"),
        ];
        let mut group = vec![Quaternion::one()];
        let mut next = 0;
        while next < group.len() {
            for g in &gens {
                let y = &group[next] * g;
                if !group.contains(&y) {
                    group.push(y);
                }
            }
            next += 1;
        }
        debug_assert_eq!(group.len(), 48);
        let mut rots: Vec<Rot> = Vec::new();
        let mut quats = Vec::new();
        for g in &group {
            let mut rot = Rot { perm: [0; 3], sign: [1; 3] };
            for c in 0..3 {
                let (idx, s) = basis_index(&g.conjugate(&Quaternion::basis(c))).expect("octahedral symmetry");
                rot.perm[c] = idx;
                rot.sign[c] = s;
            }
            if !rots.contains(&rot) {
                rots.push(rot);
                quats.push(g.clone());
            }
        }
        // Identity first so the identity witness is found before any other tie.
        let id = rots.iter().position(|r| r.perm == [0, 1, 2] && r.sign == [1, 1, 1]).expect("identity");
        rots.swap(0, id);
        quats.swap(0, id);
        Octahedral { rots, quats }
    })
}

/// Integer shape of a singular isotropy group.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Shape {
    Diag,
    Circle { axis: usize, p: i64, q: i64 },
}

impl Shape {
    /// `ΔS³` first, then by axis, `p`, positive `q` before negative, `|q|`.
    fn order_key(&self) -> (u8, usize, i64, bool, i64) {
        match *self {
            Shape::Diag => (0, 0, 0, false, 0),
            Shape::Circle { axis, p, q } => (1, axis, p, q < 0, q.abs()),
        }
    }
}

impl Ord for Shape {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Shape {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn normalized_circle(axis: usize, p: i64, q: i64) -> Shape {
    if p < 0 || (p == 0 && q < 0) {
        Shape::Circle { axis, p: -p, q: -q }
    } else {
        Shape::Circle { axis, p, q }
    }
}

impl Shape {
    fn transform(&self, r1: &Rot, r2: &Rot) -> Option<Shape> {
        match *self {
            Shape::Diag => (r1 == r2).then_some(Shape::Diag),
            Shape::Circle { axis, p, q } => {
                let (b1, s1) = r1.apply_axis(axis);
                let (b2, s2) = r2.apply_axis(axis);
                let b = if p == 0 {
                    b2
                } else if q == 0 || b1 == b2 {
                    b1
                } else {
                    return None;
                };
                Some(normalized_circle(b, s1 as i64 * p, s2 as i64 * q))
            }
        }
    }

    fn swap(&self) -> Shape {
        match *self {
            Shape::Diag => Shape::Diag,
            Shape::Circle { axis, p, q } => normalized_circle(axis, q, p),
        }
    }
}

/// Whether the finite part of a singular isotropy group is `H` or trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Fin {
    H,
    Trivial,
}

type SideKey = (Shape, Fin);

fn side(k: &IsotropySubgroup, h: &FiniteSubgroup) -> Result<SideKey> {
    let fin = |f: &FiniteSubgroup| -> Result<Fin> {
        if f == h {
            Ok(Fin::H)
        } else if f.is_trivial() {
            Ok(Fin::Trivial)
        } else {
            Err(Error::NonCanonicalizable("finite part is neither H nor trivial".into()))
        }
    };
    match k {
        IsotropySubgroup::DiagS3Dot { finite } => Ok((Shape::Diag, fin(finite)?)),
        IsotropySubgroup::CircleDot { circle, finite } => {
            let (axis, _) = circle
                .basis_axis()
                .ok_or_else(|| Error::NonCanonicalizable(format!("axis of {circle} is not ±i, ±j or ±k")))?;
            Ok((normalized_circle(axis, circle.p, circle.q), fin(finite)?))
        }
        IsotropySubgroup::Finite { .. } => Err(Error::NonCanonicalizable("finite isotropy group".into())),
    }
}

/// Moves taking a diagram to its canonical form, applied in this order:
/// factor swap, conjugation of K⁺ alone, global conjugation, K-swap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub factor_swap: bool,
    pub kplus_conjugator: GroupElement,
    pub global_conjugator: GroupElement,
    pub k_swap: bool,
}

impl Witness {
    pub fn identity() -> Self {
        Witness {
            factor_swap: false,
            kplus_conjugator: GroupElement::identity(),
            global_conjugator: GroupElement::identity(),
            k_swap: false,
        }
    }

    /// Applies the moves with exact quaternion products.
    pub fn apply(&self, d: &Diagram) -> Result<Diagram> {
        let d = if self.factor_swap { d.swap_factors() } else { d.clone() };
        let d = Diagram::new(d.k_minus.clone(), conjugate_k(&d.k_plus, &self.kplus_conjugator)?, d.h.clone());
        let d = d.conjugated(&self.global_conjugator)?;
        let d = if self.k_swap { d.swap_k() } else { d };
        Ok(normalize_circles(&d))
    }
}

/// Rewrites every basis-axis circle with a positive axis and `p > 0`.
fn normalize_circles(d: &Diagram) -> Diagram {
    let fix = |k: &IsotropySubgroup| -> IsotropySubgroup {
        match k {
            IsotropySubgroup::CircleDot { circle, finite } => {
                let mut c = circle.clone();
                if let Some((idx, _)) = c.basis_axis() {
                    c.axis = Quaternion::basis(idx);
                }
                if c.p < 0 || (c.p == 0 && c.q < 0) {
                    c.p = -c.p;
                    c.q = -c.q;
                }
                IsotropySubgroup::CircleDot { circle: c, finite: finite.clone() }
            }
            other => other.clone(),
        }
    };
    Diagram::new(fix(&d.k_minus), fix(&d.k_plus), d.h.clone())
}

/// Rotations sampling one factor of N(H)₀.
fn factor_sample(c: &FactorCentralizer) -> Vec<usize> {
    let oct = octahedral();
    match c {
        FactorCentralizer::Full => (0..oct.rots.len()).collect(),
        FactorCentralizer::Circle(u) => match basis_index(u) {
            Some((a, _)) => (0..oct.rots.len()).filter(|&r| oct.rots[r].apply_axis(a) == (a, 1)).collect(),
            None => vec![0],
        },
        FactorCentralizer::Trivial => vec![0],
    }
}

fn transform_h(h: &FiniteSubgroup, fswap: bool, r1: &Rot, r2: &Rot) -> Vec<GroupElement> {
    let mut out: Vec<GroupElement> = h
        .elements
        .iter()
        .map(|g| {
            let (l, r) = if fswap { (&g.right, &g.left) } else { (&g.left, &g.right) };
            GroupElement::new(r1.apply_quaternion(l), r2.apply_quaternion(r))
        })
        .collect();
    out.sort();
    out
}

struct Best {
    sides: (SideKey, SideKey),
    h: Vec<GroupElement>,
    witness: (bool, (usize, usize), (usize, usize), bool),
}

/// Canonical representative together with the moves reaching it.
pub fn canonical_form_with_witness(d: &Diagram) -> Result<(Diagram, Witness)> {
    let oct = octahedral();
    let n = oct.rots.len();
    let sm = side(&d.k_minus, &d.h)?;
    let sp = side(&d.k_plus, &d.h)?;
    let mut best: Option<Best> = None;
    for fswap in [false, true] {
        let (m0, p0) = if fswap { (sm.0.swap(), sp.0.swap()) } else { (sm.0.clone(), sp.0.clone()) };
        let hf = if fswap { d.h.map(GroupElement::swap_factors) } else { d.h.clone() };
        let nz = normalizer_identity_component(&hf);
        let (a1s, a2s) = (factor_sample(&nz[0]), factor_sample(&nz[1]));
        for b1 in 0..n {
            for b2 in 0..n {
                let (rb1, rb2) = (&oct.rots[b1], &oct.rots[b2]);
                let Some(m) = m0.transform(rb1, rb2) else { continue };
                let mut h_cache: Option<Vec<GroupElement>> = None;
                for &a1 in &a1s {
                    for &a2 in &a2s {
                        let Some(pa) = p0.transform(&oct.rots[a1], &oct.rots[a2]) else { continue };
                        let Some(p) = pa.transform(rb1, rb2) else { continue };
                        for kswap in [false, true] {
                            let sides = if kswap {
                                ((p.clone(), sp.1), (m.clone(), sm.1))
                            } else {
                                ((m.clone(), sm.1), (p.clone(), sp.1))
                            };
                            let ord = best.as_ref().map_or(Ordering::Less, |b| sides.cmp(&b.sides));
                            if ord == Ordering::Greater {
                                continue;
                            }
                            let h = h_cache.get_or_insert_with(|| transform_h(&d.h, fswap, rb1, rb2));
                            let better = ord == Ordering::Less || best.as_ref().is_some_and(|b| *h < b.h);
                            if better {
                                best = Some(Best {
                                    sides,
                                    h: h.clone(),
                                    witness: (fswap, (a1, a2), (b1, b2), kswap),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    let best = best.ok_or_else(|| Error::NonCanonicalizable("no witness keeps both circles in slope form".into()))?;
    let h = FiniteSubgroup { elements: best.h.clone(), generators: Vec::new() }.with_greedy_generators();
    let build = |(shape, fin): &SideKey| -> IsotropySubgroup {
        let finite = match fin {
            Fin::H => h.clone(),
            Fin::Trivial => FiniteSubgroup::trivial(),
        };
        match shape {
            Shape::Diag => IsotropySubgroup::DiagS3Dot { finite },
            Shape::Circle { axis, p, q } => {
                IsotropySubgroup::CircleDot { circle: SlopeCircle::on_basis(*axis, *p, *q), finite }
            }
        }
    };
    let canon = Diagram::new(build(&best.sides.0), build(&best.sides.1), h.clone());
    let (fswap, (a1, a2), (b1, b2), kswap) = best.witness;
    let q = |r: usize| oct.quats[r].clone();
    let witness = Witness {
        factor_swap: fswap,
        kplus_conjugator: GroupElement::new(q(a1), q(a2)),
        global_conjugator: GroupElement::new(q(b1), q(b2)),
        k_swap: kswap,
    };
    Ok((canon, witness))
}

/// Deterministic representative of the equivalence class of `d`.
pub fn canonical_form(d: &Diagram) -> Result<Diagram> {
    canonical_form_with_witness(d).map(|(c, _)| c)
}

/// Outcome of an equivalence test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Equivalence {
    /// Both diagrams reach the same canonical form.
    Equivalent { first: Witness, second: Witness },
    /// Canonical forms and invariants both differ.
    NotEquivalent { differing: String },
    /// Canonical forms differ but the computed invariants agree.
    NotIdentified,
}

fn invariants(d: &Diagram) -> Result<(Vec<u32>, usize, usize, Option<u32>)> {
    let v = validate(d)?;
    let mut ls = vec![v.l_minus, v.l_plus];
    ls.sort();
    let m = crate::weyl::weyl_group(d, crate::weyl::DEFAULT_WEYL_CAP).ok().map(|w| w.half_order);
    Ok((ls, v.pi1_order, d.h.order(), m))
}

pub fn equivalent(d1: &Diagram, d2: &Diagram) -> Result<Equivalence> {
    let (c1, w1) = canonical_form_with_witness(d1)?;
    let (c2, w2) = canonical_form_with_witness(d2)?;
    if c1 == c2 {
        return Ok(Equivalence::Equivalent { first: w1, second: w2 });
    }
    let (i1, i2) = (invariants(d1)?, invariants(d2)?);
    let mut diffs = Vec::new();
    if i1.0 != i2.0 {
        diffs.push(format!("fiber dimensions {:?} vs {:?}", i1.0, i2.0));
    }
    if i1.1 != i2.1 {
        diffs.push(format!("pi1 order {} vs {}", i1.1, i2.1));
    }
    if i1.2 != i2.2 {
        diffs.push(format!("|H| {} vs {}", i1.2, i2.2));
    }
    if i1.3 != i2.3 {
        diffs.push(format!("Weyl half-order {:?} vs {:?}", i1.3, i2.3));
    }
    if diffs.is_empty() {
        Ok(Equivalence::NotIdentified)
    } else {
        Ok(Equivalence::NotEquivalent { differing: diffs.join("; ") })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse;

    #[test]
    fn octahedral_rotations() {
        assert_eq!(octahedral().rots.len(), 24);
    }

    #[test]
    fn sign_and_order_normalization() {
        let a = parse("K-=C(i,-1,-1)*H; K+=C(j,3,5)*H; H=gen{(i,i),(j,-j)}").unwrap();
        let c = canonical_form(&a).unwrap();
        assert_eq!(c.k_minus.circle().unwrap(), &SlopeCircle::on_basis(0, 1, 1));
        assert_eq!(c.k_plus.circle().unwrap(), &SlopeCircle::on_basis(1, 3, 5));
        let b = parse("K-=C(i,3,5)*H; K+=C(j,1,1)*H; H=gen{(i,-i),(j,j)}").unwrap();
        let cb = canonical_form(&b).unwrap();
        assert_eq!(cb.k_minus.circle().unwrap(), &SlopeCircle::on_basis(0, 1, 1));
        assert_eq!(cb, c);
    }

    #[test]
    fn witness_reproduces_canonical_form() {
        let d = parse("K-=C(i,1,-1)*H; K+=C(j,3,5)*H; H=gen{(i,-i),(j,-j)}").unwrap();
        let (c, w) = canonical_form_with_witness(&d).unwrap();
        let applied = w.apply(&d).unwrap();
        assert_eq!(applied.k_minus, c.k_minus);
        assert_eq!(applied.k_plus, c.k_plus);
        assert_eq!(applied.h, c.h);
    }

    #[test]
    fn sign_twisted_quaternion_group() {
        let a = parse("K-=C(i,1,-1)*H; K+=C(j,3,5)*H; H=gen{(i,-i),(j,-j)}").unwrap();
        let b = parse("K-=C(i,1,1)*H; K+=C(j,3,5)*H; H=gen{(i,i),(j,-j)}").unwrap();
        let via = b.conjugated(&GroupElement::new(Quaternion::j(), Quaternion::one())).unwrap();
        assert_eq!(normalize_circles(&via).k_minus, a.k_minus);
        assert!(matches!(equivalent(&a, &b).unwrap(), Equivalence::Equivalent { .. }));
    }
}
