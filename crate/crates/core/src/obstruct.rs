//! Curvature obstructions, run in a fixed order and collected into a report.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::diagram::{kernel_triviality_check, validate, Diagram, IsotropySubgroup, ValidationReport};
use crate::groups::{
    ad_conjugate, bracket_closure_rank, circle_torsion_intersect, diagonal_lines, normalizer_identity_component,
    rank_over_field, FactorCentralizer, FiniteSubgroup, SlopeCircle, TangentLine,
};
use crate::qfield::{exp_axis, FieldElem, GroupElement, Quaternion};
use crate::weyl::{weyl_group, WeylResult, DEFAULT_WEYL_CAP};

pub const CHECK_ORDER: [&str; 11] = [
    "validate",
    "kernel_triviality",
    "rank",
    "forbidden_elements",
    "weight_minus",
    "weight_plus",
    "frankel",
    "weyl_group",
    "weyl_bounds",
    "linear_primitivity",
    "group_primitivity",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass {
        /// Set when the pass rests on a finite sample of a continuous family.
        #[serde(skip_serializing_if = "std::ops::Not::not")]
        sampled: bool,
    },
    Fail { reason: String },
    NotApplicable { reason: String },
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict::Pass { sampled: false }
    }

    pub fn fail(reason: impl Into<String>) -> Self {
        Verdict::Fail { reason: reason.into() }
    }

    pub fn not_applicable(reason: impl Into<String>) -> Self {
        Verdict::NotApplicable { reason: reason.into() }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Overall {
    Survives,
    Rejected { check: String, reason: String },
}

/// Check name → verdict, kept in pipeline order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdicts(pub Vec<(String, Verdict)>);

impl Verdicts {
    pub fn get(&self, name: &str) -> Option<&Verdict> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

impl Serialize for Verdicts {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub verdicts: Verdicts,
    pub overall: Overall,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weyl: Option<WeylResult>,
}

impl ObstructionReport {
    pub fn survives(&self) -> bool {
        self.overall == Overall::Survives
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PipelineOptions {
    /// Skip everything after the first failure; skipped checks are recorded
    /// as not evaluated.
    pub stop_at_first_fail: bool,
}

/// Corank of `H` in the rank-2 group `S³×S³`, given the rank of `H`.
pub fn rank_verdict(h_rank: u32) -> Verdict {
    match 2u32.saturating_sub(h_rank) {
        0 | 2 => Verdict::pass(),
        c => Verdict::fail(format!("corank {c}")),
    }
}

pub fn check_rank(_d: &Diagram) -> Verdict {
    rank_verdict(0)
}

pub fn check_forbidden_elements(h: &FiniteSubgroup) -> Verdict {
    let bad = h.elements.iter().find(|g| {
        (g.right.is_central_unit() && !g.left.is_central_unit())
            || (g.left.is_central_unit() && !g.right.is_central_unit())
    });
    match bad {
        Some(g) => Verdict::fail(format!("H contains {g}")),
        None => Verdict::pass(),
    }
}

/// Normal weight `k = |C ∩ H|` against the weights of `S²T` on the orbit.
pub fn check_weight(c: &SlopeCircle, h: &FiniteSubgroup) -> Verdict {
    let k = match circle_torsion_intersect(c, h) {
        Ok(f) => f.order() as i64,
        Err(e) => return Verdict::fail(e.to_string()),
    };
    let (p, q) = (c.p, c.q);
    if (2 * (p - q)).abs() == k || (2 * (p + q)).abs() == k || (4 * p.abs() == k && 4 * q.abs() == k) {
        Verdict::pass()
    } else {
        Verdict::fail(format!("slope ({p},{q}) has no weight equal to the normal weight {k}"))
    }
}

fn weight_side(k: &IsotropySubgroup, h: &FiniteSubgroup) -> Verdict {
    match k.circle() {
        Some(c) => check_weight(c, h),
        None => Verdict::not_applicable("fiber is not a circle"),
    }
}

pub fn check_frankel(d: &Diagram) -> Verdict {
    let Some((cm, cp)) = d.circle_pair() else {
        return Verdict::not_applicable("needs circle fibers on both sides");
    };
    let min_p = cm.p.abs().min(cp.p.abs());
    let min_q = cm.q.abs().min(cp.q.abs());
    let minus_one = GroupElement::new(-Quaternion::one(), -Quaternion::one());
    let strict = d.h.elements.iter().any(|h| d.h.element_order(h) == 4 && h.pow(2) == minus_one);
    let bound = if strict { 1 } else { 2 };
    if min_p <= bound && min_q <= bound {
        Verdict::pass()
    } else {
        Verdict::fail(format!("min|p| = {min_p}, min|q| = {min_q}, bound {bound}"))
    }
}

fn lie_lines(k: &IsotropySubgroup) -> Vec<TangentLine> {
    match k {
        IsotropySubgroup::CircleDot { circle, .. } => vec![circle.line()],
        IsotropySubgroup::DiagS3Dot { .. } => diagonal_lines(),
        IsotropySubgroup::Finite { .. } => Vec::new(),
    }
}

pub fn check_linear_primitivity(d: &Diagram, w: &WeylResult) -> Verdict {
    let step = &w.w_minus * &w.w_plus;
    let mut lines = Vec::new();
    let mut g = GroupElement::identity();
    for _ in 0..w.half_order {
        for x in [g.clone(), &g * &w.w_minus] {
            for l in lie_lines(&d.k_minus).iter().chain(lie_lines(&d.k_plus).iter()) {
                lines.push(ad_conjugate(&x, l));
            }
        }
        g = &g * &step;
    }
    match rank_over_field(&lines) {
        6 => Verdict::pass(),
        r => Verdict::fail(format!("isotropy algebras along the geodesic span dimension {r}")),
    }
}

fn plain_cross(a: &[FieldElem; 3], b: &[FieldElem; 3]) -> [FieldElem; 3] {
    let c = |x: usize, y: usize| &(&a[x] * &b[y]) - &(&a[y] * &b[x]);
    [c(1, 2), c(2, 0), c(0, 1)]
}

/// A rotation of R³ about a unit axis by a multiple of π/4.
#[derive(Clone, Debug)]
struct Rotation {
    axis: [FieldElem; 3],
    cos: FieldElem,
    sin: FieldElem,
}

impl Rotation {
    fn new(u: &Quaternion, eighths: i64) -> Self {
        let e = exp_axis(&Quaternion::i(), eighths, 8).expect("eighth turns are exact");
        Rotation { axis: u.vector(), cos: e.w, sin: e.x }
    }

    fn apply(&self, v: &[FieldElem; 3]) -> [FieldElem; 3] {
        let uxv = plain_cross(&self.axis, v);
        let dot = (0..3).fold(FieldElem::zero(), |acc, c| &acc + &(&self.axis[c] * &v[c]));
        let one_minus = &FieldElem::one() - &self.cos;
        std::array::from_fn(|c| {
            let t = &(&v[c] * &self.cos) + &(&uxv[c] * &self.sin);
            &t + &(&(&self.axis[c] * &dot) * &one_minus)
        })
    }
}

fn factor_rotations(c: &FactorCentralizer) -> Vec<Option<Rotation>> {
    let mut out = vec![None];
    let axes: Vec<Quaternion> = match c {
        FactorCentralizer::Full => (0..3).map(Quaternion::basis).collect(),
        FactorCentralizer::Circle(u) => vec![u.clone()],
        FactorCentralizer::Trivial => Vec::new(),
    };
    for u in &axes {
        out.extend((1..8).map(|s| Some(Rotation::new(u, s))));
    }
    out
}

fn rotate_line(l: &TangentLine, r1: &Option<Rotation>, r2: &Option<Rotation>) -> TangentLine {
    let side = |r: &Option<Rotation>, v: &[FieldElem; 3]| r.as_ref().map_or_else(|| v.clone(), |r| r.apply(v));
    TangentLine::new(side(r1, &l.left), side(r2, &l.right))
}

/// `K⁻` and each sampled `N(H)₀`-conjugate of `K⁺` must generate `G`.
pub fn check_group_primitivity(d: &Diagram) -> Verdict {
    if let Some((cm, cp)) = d.circle_pair() {
        if cm.p.abs() == cm.q.abs() && cp.p.abs() == cp.q.abs() {
            return Verdict::fail("both slopes have |p| = |q|; a torus conjugate of K+ stays in a proper subgroup");
        }
    }
    let lm = lie_lines(&d.k_minus);
    let lp = lie_lines(&d.k_plus);
    let nz = normalizer_identity_component(&d.h);
    let (s1, s2) = (factor_rotations(&nz[0]), factor_rotations(&nz[1]));
    let sampled = s1.len() * s2.len() > 1;
    for r1 in &s1 {
        for r2 in &s2 {
            let mut lines = lm.clone();
            lines.extend(lp.iter().map(|l| rotate_line(l, r1, r2)));
            let rank = bracket_closure_rank(&lines);
            if rank < 6 {
                return Verdict::fail(format!("a sampled N(H)0-conjugate generates a subalgebra of dimension {rank}"));
            }
        }
    }
    Verdict::Pass { sampled }
}

pub fn check_weyl_bounds(d: &Diagram, l_sum: u32, w: &WeylResult) -> Verdict {
    let dim = 6;
    if w.order() * l_sum < 2 * dim {
        return Verdict::fail(format!("|W| = {} below 2·{dim}/{l_sum}", w.order()));
    }
    if !d.h.is_cyclic() {
        return Verdict::not_applicable("lower bound holds; upper bound needs H/H0 cyclic");
    }
    if w.order() > 8 {
        return Verdict::fail(format!("|W| = {} exceeds 8 with H cyclic", w.order()));
    }
    Verdict::pass()
}

pub fn run_pipeline(d: &Diagram) -> ObstructionReport {
    run_pipeline_with(d, PipelineOptions::default())
}

pub fn run_pipeline_with(d: &Diagram, opts: PipelineOptions) -> ObstructionReport {
    let mut verdicts: Vec<(String, Verdict)> = Vec::new();
    let mut stopped = false;
    let mut record = |name: &str, f: &mut dyn FnMut() -> Verdict, verdicts: &mut Vec<(String, Verdict)>| {
        let v = if stopped { Verdict::not_applicable("not evaluated: an earlier check failed") } else { f() };
        if v.is_fail() && opts.stop_at_first_fail {
            stopped = true;
        }
        verdicts.push((name.to_string(), v));
    };

    let validation = validate(d);
    let report = validation.as_ref().ok().cloned();
    verdicts.push((
        "validate".into(),
        match &validation {
            Ok(_) => Verdict::pass(),
            Err(e) => Verdict::fail(e.to_string()),
        },
    ));
    let Some(vr) = report else {
        for name in &CHECK_ORDER[1..] {
            verdicts.push((name.to_string(), Verdict::not_applicable("not evaluated: validation failed")));
        }
        return finish(verdicts, None, None);
    };

    record(
        "kernel_triviality",
        &mut || {
            let kt = kernel_triviality_check(d);
            if kt.pass {
                Verdict::pass()
            } else {
                Verdict::fail(format!("H- and H+ share {} noncentral elements", kt.intersection_order))
            }
        },
        &mut verdicts,
    );
    record("rank", &mut || check_rank(d), &mut verdicts);
    record("forbidden_elements", &mut || check_forbidden_elements(&d.h), &mut verdicts);
    record("weight_minus", &mut || weight_side(&d.k_minus, &d.h), &mut verdicts);
    record("weight_plus", &mut || weight_side(&d.k_plus, &d.h), &mut verdicts);
    record("frankel", &mut || check_frankel(d), &mut verdicts);

    let mut weyl = None;
    record(
        "weyl_group",
        &mut || match weyl_group(d, DEFAULT_WEYL_CAP) {
            Ok(w) => {
                weyl = Some(w);
                Verdict::pass()
            }
            Err(e) => Verdict::fail(e.to_string()),
        },
        &mut verdicts,
    );
    let l_sum = vr.l_minus + vr.l_plus;
    let needs_weyl = || Verdict::not_applicable("requires the Weyl group");
    record(
        "weyl_bounds",
        &mut || weyl.as_ref().map_or_else(needs_weyl, |w| check_weyl_bounds(d, l_sum, w)),
        &mut verdicts,
    );
    record(
        "linear_primitivity",
        &mut || weyl.as_ref().map_or_else(needs_weyl, |w| check_linear_primitivity(d, w)),
        &mut verdicts,
    );
    record("group_primitivity", &mut || check_group_primitivity(d), &mut verdicts);
    finish(verdicts, Some(vr), weyl)
}

fn finish(verdicts: Vec<(String, Verdict)>, validation: Option<ValidationReport>, weyl: Option<WeylResult>) -> ObstructionReport {
    let overall = verdicts
        .iter()
        .find_map(|(name, v)| match v {
            Verdict::Fail { reason } => Some(Overall::Rejected { check: name.clone(), reason: reason.clone() }),
            _ => None,
        })
        .unwrap_or(Overall::Survives);
    ObstructionReport { verdicts: Verdicts(verdicts), overall, validation, weyl }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse;
    use crate::groups::{closure, DEFAULT_CAP};

    fn rejected_at(text: &str) -> String {
        match run_pipeline(&parse(text).unwrap()).overall {
            Overall::Rejected { check, .. } => check,
            Overall::Survives => "survives".into(),
        }
    }

    #[test]
    fn weight_examples() {
        let h = closure(
            &[GroupElement::from_ints([0, 1, 0, 0], [0, -1, 0, 0]), GroupElement::from_ints([0, 0, 1, 0], [0, 0, -1, 0])],
            DEFAULT_CAP,
        )
        .unwrap();
        let q = closure(
            &[GroupElement::from_ints([0, 1, 0, 0], [0, 1, 0, 0]), GroupElement::from_ints([0, 0, 1, 0], [0, 0, -1, 0])],
            DEFAULT_CAP,
        )
        .unwrap();
        assert_eq!(check_weight(&SlopeCircle::on_basis(0, 1, 1), &q), Verdict::pass());
        assert_eq!(check_weight(&SlopeCircle::on_basis(1, 3, 5), &h), Verdict::pass());
        assert!(check_weight(&SlopeCircle::on_basis(0, 1, 5), &q).is_fail());
    }

    #[test]
    fn forbidden() {
        let bad = closure(&[GroupElement::from_ints([0, 1, 0, 0], [1, 0, 0, 0])], DEFAULT_CAP).unwrap();
        assert!(check_forbidden_elements(&bad).is_fail());
        let ok = closure(&[GroupElement::from_ints([-1, 0, 0, 0], [-1, 0, 0, 0])], DEFAULT_CAP).unwrap();
        assert_eq!(check_forbidden_elements(&ok), Verdict::pass());
    }

    #[test]
    fn rank_rule() {
        assert_eq!(rank_verdict(0), Verdict::pass());
        assert!(rank_verdict(1).is_fail());
    }

    #[test]
    fn rejection_points() {
        assert_eq!(rejected_at("K-=C(i,1,1)*H; K+=C(j,1,3)*H; H=gen{(i,i),(j,-j)}"), "survives");
        assert_eq!(rejected_at("K-=C(i,1,5)*H; K+=C(j,1,1)*H; H=gen{(i,i),(j,j)}"), "weight_minus");
        assert_eq!(rejected_at("K-=C(i,3,5)*H; K+=C(j,5,7)*H; H=gen{(i,-i),(j,-j)}"), "frankel");
        let square = parse("K-=C(i,1,1)*H; K+=C(j,1,1)*H; H=gen{(i,i),(j,j)}").unwrap();
        assert!(run_pipeline(&square).verdicts.get("group_primitivity").unwrap().is_fail());
    }

    #[test]
    fn rotation_matches_adjoint() {
        // A quarter turn of R³ is Ad of an eighth turn in S³.
        let r = Rotation::new(&Quaternion::i(), 2);
        let e = exp_axis(&Quaternion::i(), 1, 8).unwrap();
        let v = Quaternion::j().vector();
        assert_eq!(r.apply(&v), e.conjugate(&Quaternion::j()).vector());
    }
}
