//! Slope algebra for the Konishi frame bundles over the Hitchin orbifolds:
//! the Spin(4) → SO(3)×SO(3) slope transform, assembly of the two
//! SO(3)-level slope pairs, and identification with the S³×S³ families.

use num_integer::Integer;
use serde::Serialize;

use crate::catalog_scan::recognize;
use crate::diagram::{canonical_form, validate, Diagram};
use crate::error::{Error, Result};
use crate::groups::{closure, SlopeCircle, DEFAULT_CAP};
use crate::qfield::{GroupElement, Quaternion};

pub type SlopePair = (i64, i64);

/// A circle of slope `(p, q)` in Spin(4) = S³×S³ maps to slope `(p+q, p−q)`
/// in SO(3)×SO(3).
pub fn spin4_to_so3so3(p: i64, q: i64) -> SlopePair {
    (p + q, p - q)
}

/// Slopes of a circle in SO(3)×SO(3)×SO(3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct So3SlopeTriple {
    pub s1: i64,
    pub s2: i64,
    pub s3: i64,
}

impl So3SlopeTriple {
    /// Applies [`spin4_to_so3so3`] to the last two coordinates.
    pub fn from_frame(s1: i64, p: i64, q: i64) -> Self {
        let (s2, s3) = spin4_to_so3so3(p, q);
        So3SlopeTriple { s1, s2, s3 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bundle {
    Selfdual,
    Antiselfdual,
}

impl std::fmt::Display for Bundle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Bundle::Selfdual => "selfdual",
            Bundle::Antiselfdual => "antiselfdual",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KonishiSlopes {
    pub k: i64,
    pub left: So3SlopeTriple,
    pub right: So3SlopeTriple,
    pub selfdual: [SlopePair; 2],
    pub antiselfdual: [SlopePair; 2],
}

impl KonishiSlopes {
    pub fn pairs(&self, bundle: Bundle) -> [SlopePair; 2] {
        match bundle {
            Bundle::Selfdual => self.selfdual,
            Bundle::Antiselfdual => self.antiselfdual,
        }
    }
}

/// Frame slopes left `(1,1,2)`, right `(k,k,−2)`, transformed and projected
/// onto the two SO(3)×SO(3) quotients.
pub fn konishi_slopes(k: i64) -> Result<KonishiSlopes> {
    if k < 1 {
        return Err(Error::Unrecognized(format!("k must be positive, got {k}")));
    }
    let left = So3SlopeTriple::from_frame(1, 1, 2);
    let right = So3SlopeTriple::from_frame(k, k, -2);
    Ok(KonishiSlopes {
        k,
        left,
        right,
        selfdual: [(left.s1, left.s2), (right.s1, right.s2)],
        antiselfdual: [(left.s1, left.s3), (right.s1, right.s3)],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HitchinIdentification {
    pub k: i64,
    pub bundle: Bundle,
    pub so3_slopes: [SlopePair; 2],
    /// The S³×S³ slopes after lifting.
    pub slopes: [SlopePair; 2],
    pub diagram: String,
    pub family: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<String>,
    pub cover_note: String,
}

/// Lifts an SO(3)-level pair to S³×S³: `(2a, 2b)` becomes `(a, b)`, odd pairs
/// are kept.
fn lift(pair: SlopePair) -> Result<SlopePair> {
    let (p, q) = pair;
    let lifted = if p.is_even() && q.is_even() { (p / 2, q / 2) } else { pair };
    if lifted.0.is_even() && lifted.1.is_even() || lifted.0.gcd(&lifted.1) != 1 {
        return Err(Error::Unrecognized(format!("slope ({p},{q}) does not lift to a primitive S³×S³ slope")));
    }
    Ok(lifted)
}

fn is_odd_pair((p, q): SlopePair) -> bool {
    p.is_odd() && q.is_odd()
}

fn sign_for((p, q): SlopePair) -> Quaternion {
    if ((q - p) / 2).is_even() {
        Quaternion::one()
    } else {
        -Quaternion::one()
    }
}

/// The S³×S³ diagram with `a` on the i-axis and `b` on the j-axis. Two odd
/// pairs get the sign-twisted diagonal quaternion group; an odd and a mixed
/// pair get `⟨(i,i), (−1,1)⟩`.
pub fn lifted_diagram(a: SlopePair, b: SlopePair) -> Result<Diagram> {
    let (a, b) = match (is_odd_pair(a), is_odd_pair(b)) {
        (true, true) | (true, false) => (a, b),
        (false, true) => (b, a),
        (false, false) => {
            return Err(Error::Unrecognized(format!("slopes {a:?}, {b:?} have no odd pair")));
        }
    };
    let (i, j) = (Quaternion::i(), Quaternion::j());
    let gens = if is_odd_pair(b) {
        vec![
            GroupElement::new(i.clone(), &sign_for(a) * &i),
            GroupElement::new(j.clone(), &sign_for(b) * &j),
        ]
    } else {
        vec![GroupElement::new(i.clone(), i), GroupElement::new(-Quaternion::one(), Quaternion::one())]
    };
    let h = closure(&gens, DEFAULT_CAP)?;
    Ok(Diagram::circles(SlopeCircle::on_basis(0, a.0, a.1), SlopeCircle::on_basis(1, b.0, b.1), h))
}

fn cover_note(family: &str, k: i64, bundle: Bundle) -> String {
    let base = family.split('_').next().unwrap_or(family);
    match (bundle, base) {
        (Bundle::Antiselfdual, "P" | "Q") => {
            format!("{family} is the universal cover of H_{k}; H_{k} = {family}/Z2")
        }
        _ => format!("{bundle} bundle for k={k} has the slopes of {family}"),
    }
}

/// Identifies a pair of SO(3)-level slopes with a known S³×S³ diagram.
pub fn identify_family(k: i64, bundle: Bundle, so3_slopes: [SlopePair; 2]) -> Result<HitchinIdentification> {
    let a = lift(so3_slopes[0])?;
    let b = lift(so3_slopes[1])?;
    let d = lifted_diagram(a, b)?;
    validate(&d).map_err(|e| Error::Unrecognized(format!("lifted diagram is not valid: {e}")))?;
    let rec = recognize(&d)?
        .ok_or_else(|| Error::Unrecognized(format!("slopes {a:?}, {b:?} match no known family")))?;
    Ok(HitchinIdentification {
        k,
        bundle,
        so3_slopes,
        slopes: [a, b],
        diagram: canonical_form(&d)?.to_string(),
        cover_note: cover_note(&rec.label, k, bundle),
        family: rec.label,
        aliases: rec.aliases,
    })
}

pub type BundleIdentifications = Vec<(Bundle, Result<HitchinIdentification>)>;

/// Both bundles for `k`; an unrecognized bundle is reported as an error entry.
pub fn identify_all(k: i64) -> Result<(KonishiSlopes, BundleIdentifications)> {
    let s = konishi_slopes(k)?;
    let out = [Bundle::Antiselfdual, Bundle::Selfdual]
        .into_iter()
        .map(|b| (b, identify_family(k, b, s.pairs(b))))
        .collect();
    Ok((s, out))
}

/// The diagram of the 2-fold quotient `H_k` of a P- or Q-family diagram:
/// the principal isotropy group gains one element, `(−1,1)` for P and `(j,j)`
/// for Q.
pub fn subcover_diagram(d: &Diagram) -> Result<Diagram> {
    let rec = recognize(d)?.ok_or_else(|| Error::Unrecognized(d.to_string()))?;
    let extra = match rec.name.split('_').next() {
        Some("P") => GroupElement::new(-Quaternion::one(), Quaternion::one()),
        Some("Q") => GroupElement::new(Quaternion::j(), Quaternion::j()),
        _ => return Err(Error::Unrecognized(format!("{} has no Hitchin subcover", rec.label))),
    };
    let mut gens = d.h.greedy_generators();
    gens.push(extra);
    let h = closure(&gens, DEFAULT_CAP)?;
    let (a, b) = d.circle_pair().ok_or_else(|| Error::Unrecognized(d.to_string()))?;
    Ok(Diagram::circles(a.clone(), b.clone(), h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform_examples() {
        assert_eq!(spin4_to_so3so3(1, 1), (2, 0));
        assert_eq!(spin4_to_so3so3(1, 2), (3, -1));
        assert_eq!(spin4_to_so3so3(5, -2), (3, 7));
    }

    #[test]
    fn anchors() {
        assert_eq!(konishi_slopes(1).unwrap().antiselfdual, [(1, -1), (1, 3)]);
        assert_eq!(konishi_slopes(2).unwrap().antiselfdual, [(1, -1), (2, 4)]);
        assert_eq!(konishi_slopes(3).unwrap().selfdual, [(1, 3), (3, 1)]);
    }

    #[test]
    fn small_identifications() {
        let id = |k, b| identify_family(k, b, konishi_slopes(k).unwrap().pairs(b)).unwrap().family;
        assert_eq!(id(1, Bundle::Antiselfdual), "P_1");
        assert_eq!(id(2, Bundle::Antiselfdual), "Q_1");
        assert_eq!(id(3, Bundle::Antiselfdual), "P_2");
        assert_eq!(id(4, Bundle::Antiselfdual), "Q_2");
        assert_eq!(id(3, Bundle::Selfdual), "B7");
        assert_eq!(id(4, Bundle::Selfdual), "R");
    }

    #[test]
    fn subcovers_have_fundamental_group_two() {
        for (name, k) in [("P_k", 1), ("P_k", 2), ("Q_k", 1), ("Q_k", 3)] {
            let d = crate::catalog_scan::lookup(name, Some(k)).unwrap().diagram;
            let sub = subcover_diagram(&d).unwrap();
            assert_eq!(sub.h.order(), 2 * d.h.order());
            assert_eq!(validate(&sub).unwrap().pi1_order, 2, "{name} {k}");
        }
    }
}
