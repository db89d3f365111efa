//! Group diagrams `H ⊂ {K⁻, K⁺} ⊂ S³×S³`: model, validation and equivalence.

mod equiv;
mod parse;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{circle_torsion_intersect, normalizes_circle, FiniteSubgroup, SlopeCircle};
use crate::qfield::{literal_name, GroupElement};

pub use equiv::{canonical_form, canonical_form_with_witness, equivalent, Equivalence, Witness};
pub use parse::parse;

/// A singular isotropy group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IsotropySubgroup {
    Finite { finite: FiniteSubgroup },
    CircleDot { circle: SlopeCircle, finite: FiniteSubgroup },
    DiagS3Dot { finite: FiniteSubgroup },
}

impl IsotropySubgroup {
    pub fn finite_part(&self) -> &FiniteSubgroup {
        match self {
            IsotropySubgroup::Finite { finite }
            | IsotropySubgroup::CircleDot { finite, .. }
            | IsotropySubgroup::DiagS3Dot { finite } => finite,
        }
    }

    pub fn circle(&self) -> Option<&SlopeCircle> {
        match self {
            IsotropySubgroup::CircleDot { circle, .. } => Some(circle),
            _ => None,
        }
    }

    /// Membership in the identity component.
    pub fn identity_component_contains(&self, g: &GroupElement) -> bool {
        match self {
            IsotropySubgroup::Finite { .. } => g.is_identity(),
            IsotropySubgroup::CircleDot { circle, .. } => circle.contains(g),
            IsotropySubgroup::DiagS3Dot { .. } => g.left == g.right,
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match self {
            IsotropySubgroup::Finite { finite } => finite.contains(g),
            _ => self
                .finite_part()
                .elements
                .iter()
                .any(|f| self.identity_component_contains(&(g * &f.inverse()))),
        }
    }

    /// Intersection of the identity component with a finite group.
    pub fn identity_component_meet(&self, h: &FiniteSubgroup) -> Result<FiniteSubgroup> {
        match self {
            IsotropySubgroup::CircleDot { circle, .. } => circle_torsion_intersect(circle, h),
            _ => Ok(h.subgroup_where(|g| self.identity_component_contains(g))),
        }
    }

    fn map_finite(&self, f: impl Fn(&FiniteSubgroup) -> FiniteSubgroup) -> Self {
        match self {
            IsotropySubgroup::Finite { finite } => IsotropySubgroup::Finite { finite: f(finite) },
            IsotropySubgroup::CircleDot { circle, finite } => {
                IsotropySubgroup::CircleDot { circle: circle.clone(), finite: f(finite) }
            }
            IsotropySubgroup::DiagS3Dot { finite } => IsotropySubgroup::DiagS3Dot { finite: f(finite) },
        }
    }

    fn swap_factors(&self) -> Self {
        let k = self.map_finite(|f| f.map(GroupElement::swap_factors));
        match k {
            IsotropySubgroup::CircleDot { circle, finite } => {
                IsotropySubgroup::CircleDot { circle: circle.swap_factors(), finite }
            }
            other => other,
        }
    }
}

/// A cohomogeneity one group diagram for `G = S³×S³`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Diagram {
    pub ambient: String,
    pub k_minus: IsotropySubgroup,
    pub k_plus: IsotropySubgroup,
    pub h: FiniteSubgroup,
}

impl Diagram {
    pub fn new(k_minus: IsotropySubgroup, k_plus: IsotropySubgroup, h: FiniteSubgroup) -> Self {
        Diagram { ambient: "S3xS3".into(), k_minus, k_plus, h }
    }

    /// `K = C·H` on both sides.
    pub fn circles(c_minus: SlopeCircle, c_plus: SlopeCircle, h: FiniteSubgroup) -> Self {
        Diagram::new(
            IsotropySubgroup::CircleDot { circle: c_minus, finite: h.clone() },
            IsotropySubgroup::CircleDot { circle: c_plus, finite: h.clone() },
            h,
        )
    }

    pub fn swap_k(&self) -> Self {
        Diagram::new(self.k_plus.clone(), self.k_minus.clone(), self.h.clone())
    }

    pub fn swap_factors(&self) -> Self {
        Diagram::new(
            self.k_minus.swap_factors(),
            self.k_plus.swap_factors(),
            self.h.map(GroupElement::swap_factors),
        )
    }

    /// Global conjugation by `g`; fails when a circle would need two different axes.
    pub fn conjugated(&self, g: &GroupElement) -> Result<Self> {
        Ok(Diagram::new(conjugate_k(&self.k_minus, g)?, conjugate_k(&self.k_plus, g)?, self.h.conjugated(g)))
    }

    /// Both singular isotropy groups have the form `C·F`.
    pub fn circle_pair(&self) -> Option<(&SlopeCircle, &SlopeCircle)> {
        Some((self.k_minus.circle()?, self.k_plus.circle()?))
    }
}

/// `gKg⁻¹`, kept in slope-circle form.
pub(crate) fn conjugate_k(k: &IsotropySubgroup, g: &GroupElement) -> Result<IsotropySubgroup> {
    match k.map_finite(|f| f.conjugated(g)) {
        IsotropySubgroup::CircleDot { circle, finite } => {
            let l = g.left.conjugate(&circle.axis);
            let r = g.right.conjugate(&circle.axis);
            let (axis, q) = if circle.p == 0 || l == r {
                (r, circle.q)
            } else if circle.q == 0 {
                (l, circle.q)
            } else if l == -&r {
                (l, -circle.q)
            } else {
                return Err(Error::NonCanonicalizable(format!("conjugate of {circle} is not a slope circle")));
            };
            Ok(IsotropySubgroup::CircleDot { circle: SlopeCircle::new(axis, circle.p, q), finite })
        }
        IsotropySubgroup::DiagS3Dot { .. } if g.left != g.right && g.left != -&g.right => {
            Err(Error::NonCanonicalizable("conjugate of ΔS³ is a different diagonal".into()))
        }
        other => Ok(other),
    }
}

/// The effective group `G / (H ∩ Z(G))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EffectiveGroup {
    S3xS3,
    SO4,
    SO3xS3,
    S3xSO3,
    SO3xSO3,
}

impl EffectiveGroup {
    fn from_kernel(kernel: &FiniteSubgroup) -> Self {
        let has = |l: i64, r: i64| kernel.contains(&GroupElement::from_ints([l, 0, 0, 0], [r, 0, 0, 0]));
        match (has(-1, -1), has(-1, 1), has(1, -1)) {
            (true, true, _) | (true, _, true) | (_, true, true) => EffectiveGroup::SO3xSO3,
            (true, false, false) => EffectiveGroup::SO4,
            (false, true, false) => EffectiveGroup::SO3xS3,
            (false, false, true) => EffectiveGroup::S3xSO3,
            (false, false, false) => EffectiveGroup::S3xS3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub l_minus: u32,
    pub l_plus: u32,
    pub components_kminus: usize,
    pub components_kplus: usize,
    pub pi1_order: usize,
    pub effective_kernel_order: usize,
    pub effective_group: EffectiveGroup,
    pub h_structure: String,
    pub hbar: String,
}

fn check_group(name: &str, k: &IsotropySubgroup) -> Result<()> {
    match k {
        IsotropySubgroup::CircleDot { circle, finite } => {
            if circle.p == 0 && circle.q == 0 {
                return Err(Error::NotASubgroup(format!("{name}: slope (0,0)")));
            }
            if !circle.is_coprime() {
                return Err(Error::NotASubgroup(format!("{name}: slope ({},{}) not coprime", circle.p, circle.q)));
            }
            if !circle.axis.is_pure() || !circle.axis.is_unit() {
                return Err(Error::NotASubgroup(format!("{name}: axis is not a pure unit quaternion")));
            }
            if normalizes_circle(finite, circle).is_none() {
                return Err(Error::NotASphere(format!("{name}: finite part does not normalize the circle")));
            }
        }
        IsotropySubgroup::DiagS3Dot { finite } => {
            let ok = finite.elements.iter().all(|f| f.left == f.right || f.left == -&f.right);
            if !ok {
                return Err(Error::NotASphere(format!("{name}: finite part does not normalize ΔS³")));
            }
        }
        IsotropySubgroup::Finite { .. } => {
            return Err(Error::NotASphere(format!("{name}: finite isotropy gives an exceptional orbit")));
        }
    }
    Ok(())
}

/// `(l, components of K)` after checking that `K/H` is a sphere.
fn sphere_data(name: &str, k: &IsotropySubgroup, h: &FiniteSubgroup) -> Result<(u32, usize)> {
    let f = k.finite_part();
    let comps = f.order() / k.identity_component_meet(f)?.order();
    let h_meet = k.identity_component_meet(h)?;
    let hit = h.order() / h_meet.order();
    if comps != hit {
        return Err(Error::NotASphere(format!("{name}/H has {} components", comps / hit)));
    }
    match k {
        IsotropySubgroup::DiagS3Dot { .. } if !h_meet.is_trivial() => Err(Error::NotASphere(format!(
            "{name}/H is S³ modulo a group of order {}",
            h_meet.order()
        ))),
        IsotropySubgroup::DiagS3Dot { .. } => Ok((3, comps)),
        _ => Ok((1, comps)),
    }
}

/// Structural checks plus fundamental group and effective kernel.
pub fn validate(d: &Diagram) -> Result<ValidationReport> {
    let mut data = Vec::new();
    for (name, k) in [("K-", &d.k_minus), ("K+", &d.k_plus)] {
        check_group(name, k)?;
        if let Some(h) = d.h.elements.iter().find(|h| !k.contains(h)) {
            return Err(Error::NotASubgroup(format!("H element {h} is not in {name}")));
        }
        data.push(sphere_data(name, k, &d.h)?);
    }
    let mut gens = d.k_minus.identity_component_meet(&d.h)?.elements;
    gens.extend(d.k_plus.identity_component_meet(&d.h)?.elements);
    let generated = d.h.normal_closure(&gens);
    let kernel = d.h.central_part();
    Ok(ValidationReport {
        l_minus: data[0].0,
        l_plus: data[1].0,
        components_kminus: data[0].1,
        components_kplus: data[1].1,
        pi1_order: d.h.order() / generated.order(),
        effective_kernel_order: kernel.order(),
        effective_group: EffectiveGroup::from_kernel(&kernel),
        h_structure: d.h.structure(),
        hbar: d.h.effective_structure(),
    })
}

/// Orders of `H̄₋`, `H̄₊` and their intersection in the effective group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelTriviality {
    pub pass: bool,
    pub h_minus_order: usize,
    pub h_plus_order: usize,
    pub intersection_order: usize,
}

/// Subgroup of `H` acting trivially on `K/H`.
fn ineffective_part(k: &IsotropySubgroup, h: &FiniteSubgroup) -> FiniteSubgroup {
    match k {
        IsotropySubgroup::CircleDot { circle, .. } => {
            let chars = normalizes_circle(h, circle).unwrap_or_default();
            h.subgroup_where(|g| chars.iter().any(|(x, e)| x == g && *e == 1))
        }
        _ => h.central_part(),
    }
}

pub fn kernel_triviality_check(d: &Diagram) -> KernelTriviality {
    let hm = ineffective_part(&d.k_minus, &d.h);
    let hp = ineffective_part(&d.k_plus, &d.h);
    let z = d.h.central_part().order();
    let meet = hm.subgroup_where(|g| hp.contains(g));
    KernelTriviality {
        pass: meet.elements.iter().all(GroupElement::is_central),
        h_minus_order: hm.order() / z,
        h_plus_order: hp.order() / z,
        intersection_order: meet.order() / z,
    }
}

fn fmt_k(k: &IsotropySubgroup, h: &FiniteSubgroup, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let suffix = |fin: &FiniteSubgroup| -> String {
        if fin == h {
            "*H".into()
        } else if fin.is_trivial() {
            String::new()
        } else {
            format!("*{fin}")
        }
    };
    match k {
        IsotropySubgroup::CircleDot { circle, finite } => {
            let (axis, sign) = match circle.basis_axis() {
                Some((idx, s)) => (["i", "j", "k"][idx].to_string(), s as i64),
                None => (circle.axis.to_string(), 1),
            };
            write!(f, "C({},{},{}){}", axis, sign * circle.p, sign * circle.q, suffix(finite))
        }
        IsotropySubgroup::DiagS3Dot { finite } => write!(f, "DS3{}", suffix(finite)),
        IsotropySubgroup::Finite { finite } => write!(f, "{finite}"),
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("K-=")?;
        fmt_k(&self.k_minus, &self.h, f)?;
        f.write_str("; K+=")?;
        fmt_k(&self.k_plus, &self.h, f)?;
        let gens = if self.h.generators.iter().all(|g| literal_name(&g.left).is_some() && literal_name(&g.right).is_some()) {
            &self.h.generators
        } else {
            &self.h.elements
        };
        let gens: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        write!(f, "; H=gen{{{}}}", gens.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1() -> Diagram {
        parse("K-=C(i,1,1)*H; K+=C(j,1,3)*H; H=gen{(i,i),(j,-j)}").unwrap()
    }

    #[test]
    fn p1_validates() {
        let r = validate(&p1()).unwrap();
        assert_eq!((r.l_minus, r.l_plus, r.pi1_order), (1, 1, 1));
        assert_eq!(r.effective_kernel_order, 2);
        assert_eq!(r.effective_group, EffectiveGroup::SO4);
        assert_eq!(r.hbar, "Z2+Z2");
    }

    #[test]
    fn q1_validates() {
        let d = parse("K-=C(i,1,1)*H; K+=C(j,1,2)*H; H=gen{(i,i),(-1,1)}").unwrap();
        let r = validate(&d).unwrap();
        assert_eq!((r.l_minus, r.l_plus, r.pi1_order), (1, 1, 1));
        assert_eq!(r.effective_kernel_order, 4);
        assert_eq!(r.effective_group, EffectiveGroup::SO3xSO3);
        let kt = kernel_triviality_check(&d);
        assert!(kt.pass);
        assert_eq!((kt.h_minus_order, kt.h_plus_order), (2, 1));
    }

    #[test]
    fn e1_validates() {
        let d = parse("K-=DS3*H; K+=C(i,1,2); H=gen{(-1,1)}").unwrap();
        let r = validate(&d).unwrap();
        assert_eq!((r.l_minus, r.l_plus, r.pi1_order), (3, 1, 1));
        assert_eq!(r.effective_group, EffectiveGroup::SO3xS3);
    }

    #[test]
    fn h_outside_k_is_rejected() {
        let d = parse("K-=DS3*H; K+=C(i,2,3); H=gen{(-1,1)}").unwrap();
        assert!(matches!(validate(&d), Err(Error::NotASubgroup(_))));
    }

    #[test]
    fn diagonal_fiber_must_be_s3() {
        let d = parse("K-=DS3*H; K+=C(i,1,1); H=gen{(-1,-1)}").unwrap();
        assert!(matches!(validate(&d), Err(Error::NotASphere(_))));
    }

    #[test]
    fn identical_sides_fail_kernel_check() {
        let d = parse("K-=C(i,1,1)*H; K+=C(i,1,1)*H; H=gen{(i,i),(j,-j)}").unwrap();
        assert!(!kernel_triviality_check(&d).pass);
        assert!(kernel_triviality_check(&p1()).pass);
    }

    #[test]
    fn display_round_trips() {
        let d = p1();
        assert_eq!(parse(&d.to_string()).unwrap(), d);
    }
}
