//! Weyl group of a diagram: the involutions `w±` and the dihedral order of `⟨w₋, w₊⟩`.

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, IsotropySubgroup};
use crate::error::{Error, Result};
use crate::groups::FiniteSubgroup;
use crate::qfield::{GroupElement, Quaternion};

pub const DEFAULT_WEYL_CAP: u32 = 48;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylResult {
    pub w_minus: GroupElement,
    pub w_plus: GroupElement,
    /// Order of `w₋w₊` modulo `H`; `|W| = 2·half_order`.
    pub half_order: u32,
    #[serde(rename = "type")]
    pub weyl_type: String,
    /// Powers of `w₋w₊` tested before one landed in `H`.
    pub word_log: Vec<u32>,
}

impl WeylResult {
    pub fn order(&self) -> u32 {
        2 * self.half_order
    }
}

fn is_involution_mod(a: &GroupElement, k: &IsotropySubgroup, h: &FiniteSubgroup) -> bool {
    !h.contains(a) && h.contains(&a.pow(2)) && h.normalized_by(a) && k.contains(a)
}

/// The unique involution of `(N(H) ∩ K)/H`, up to `H`.
pub fn weyl_representative(k: &IsotropySubgroup, h: &FiniteSubgroup) -> Result<GroupElement> {
    let base = match k {
        IsotropySubgroup::CircleDot { circle, .. } => {
            let m = k.identity_component_meet(h)?.order() as i64;
            circle.point(1, 2 * m)?
        }
        IsotropySubgroup::DiagS3Dot { .. } => {
            let minus = -Quaternion::one();
            GroupElement::new(minus.clone(), minus)
        }
        IsotropySubgroup::Finite { .. } => {
            return Err(Error::NoRepresentative("finite isotropy group has no circle or sphere factor".into()))
        }
    };
    std::iter::once(base.clone())
        .chain(h.elements.iter().map(|x| &base * x))
        .find(|a| is_involution_mod(a, k, h))
        .ok_or_else(|| Error::NoRepresentative(format!("no translate of {base} normalizes H")))
}

pub fn weyl_group(d: &Diagram, cap: u32) -> Result<WeylResult> {
    let w_minus = weyl_representative(&d.k_minus, &d.h)?;
    let w_plus = weyl_representative(&d.k_plus, &d.h)?;
    let step = &w_minus * &w_plus;
    let mut g = step.clone();
    let mut word_log = Vec::new();
    for n in 1..=cap {
        word_log.push(n);
        if d.h.contains(&g) {
            return Ok(WeylResult { w_minus, w_plus, half_order: n, weyl_type: format!("D{n}"), word_log });
        }
        g = &g * &step;
    }
    Err(Error::OrderExceedsCap { cap: cap as usize })
}
