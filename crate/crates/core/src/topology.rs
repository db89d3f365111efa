//! Integral cohomology of the two slope families from their Mayer–Vietoris
//! matrices, via Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// JSON form of integers: a plain number when it fits in `i64`, a decimal
/// string otherwise.
mod int_json {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Small(i64),
        Big(String),
    }

    fn to_repr(n: &BigInt) -> Repr {
        n.to_i64().map_or_else(|| Repr::Big(n.to_string()), Repr::Small)
    }

    fn from_repr<E: serde::de::Error>(r: Repr) -> Result<BigInt, E> {
        match r {
            Repr::Small(n) => Ok(n.into()),
            Repr::Big(s) => s.parse().map_err(E::custom),
        }
    }

    pub mod one {
        use super::*;

        pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
            to_repr(n).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
            from_repr(Repr::deserialize(d)?)
        }
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            v.iter().map(to_repr).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            Vec::<Repr>::deserialize(d)?.into_iter().map(from_repr).collect()
        }
    }

    pub mod matrix {
        use super::*;

        pub fn serialize<S: Serializer>(m: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
            m.iter().map(|r| r.iter().map(to_repr).collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
            Vec::<Vec<Repr>>::deserialize(d)?
                .into_iter()
                .map(|r| r.into_iter().map(from_repr).collect())
                .collect()
        }
    }
}

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    /// Invariant factors, nonnegative, each dividing the next.
    #[serde(with = "int_json::vec")]
    pub diagonal: Vec<BigInt>,
    #[serde(with = "int_json::matrix")]
    pub u: IntMatrix,
    #[serde(with = "int_json::matrix")]
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn d(&self, i: usize) -> BigInt {
        self.diagonal.get(i).cloned().unwrap_or_default()
    }
}

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j])).collect())
        .collect()
}

/// `row_dst += f·row_src` in `a`, mirrored on `u`.
fn add_row(a: &mut IntMatrix, u: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    for m in [a, u] {
        let s = m[src].clone();
        for (x, y) in m[dst].iter_mut().zip(&s) {
            *x += f * y;
        }
    }
}

/// `col_dst += f·col_src` in `a`, mirrored on `v`.
fn add_col(a: &mut IntMatrix, v: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    for m in [a, v] {
        for row in m.iter_mut() {
            let s = row[src].clone();
            row[dst] += f * s;
        }
    }
}

fn swap_rows(a: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize) {
    a.swap(i, j);
    u.swap(i, j);
}

fn swap_cols(a: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize) {
    for m in [a, v] {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// `U·A·V = diag(d₁, d₂, …)` with `U`, `V` unimodular.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut a = a.clone();
    let (mut u, mut v) = (identity(m), identity(n));
    for t in 0..m.min(n) {
        loop {
            let pivot = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
            let Some((pi, pj)) = pivot else {
                break;
            };
            swap_rows(&mut a, &mut u, t, pi);
            swap_cols(&mut a, &mut v, t, pj);
            let mut clean = true;
            for i in t + 1..m {
                let f = -(a[i][t].div_floor(&a[t][t]));
                add_row(&mut a, &mut u, i, t, &f);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                let f = -(a[t][j].div_floor(&a[t][t]));
                add_col(&mut a, &mut v, j, t, &f);
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let stray = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match stray {
                Some(i) => add_row(&mut a, &mut u, t, i, &BigInt::one()),
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for m in [&mut a, &mut u] {
                for x in m[t].iter_mut() {
                    *x = -&*x;
                }
            }
        }
    }
    let diagonal = (0..m.min(n)).map(|i| a[i][i].clone()).collect();
    SnfResult { diagonal, u, v }
}

pub fn det2(a: &IntMatrix) -> BigInt {
    &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0]
}

/// A finitely generated abelian group `Z^r ⊕ Z_{t₁} ⊕ …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: u32,
    #[serde(with = "int_json::vec")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn z() -> Self {
        AbelianGroup { free_rank: 1, torsion: Vec::new() }
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        let n = n.into();
        if n.is_zero() {
            Self::z()
        } else if n.is_one() {
            Self::zero()
        } else {
            AbelianGroup { free_rank: 0, torsion: vec![n] }
        }
    }

    /// `coker` and `ker` of a map `Z^n → Z^m` in Smith form.
    fn from_snf(snf: &SnfResult, rows: usize, cols: usize) -> (Self, Self) {
        let nonzero: Vec<&BigInt> = snf.diagonal.iter().filter(|d| !d.is_zero()).collect();
        let r = nonzero.len();
        let coker = AbelianGroup {
            free_rank: (rows - r) as u32,
            torsion: nonzero.into_iter().filter(|d| !d.is_one()).cloned().collect(),
        };
        let ker = AbelianGroup { free_rank: (cols - r) as u32, torsion: Vec::new() };
        (coker, ker)
    }

    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    P,
    N,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" | "p" => Ok(Family::P),
            "N" | "n" => Ok(Family::N),
            other => Err(Error::FamilyMismatch(format!("unknown family {other}"))),
        }
    }
}

fn sq(x: i64) -> BigInt {
    BigInt::from(x) * BigInt::from(x)
}

fn exact_div(n: BigInt, d: i64, what: &str) -> Result<BigInt> {
    let (q, r) = n.div_rem(&BigInt::from(d));
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::NonIntegralEntry(format!("{what} is not divisible by {d}")))
    }
}

fn coprime(p: i64, q: i64) -> bool {
    p.gcd(&q) == 1
}

/// Restriction map for the family with all slopes odd.
pub fn mv_matrix_p(pm: i64, qm: i64, pp: i64, qp: i64) -> Result<IntMatrix> {
    if [pm, qm, pp, qp].iter().any(|x| x % 2 == 0) {
        return Err(Error::NonIntegralEntry("all four slopes must be odd".into()));
    }
    if !coprime(pm, qm) || !coprime(pp, qp) {
        return Err(Error::FamilyMismatch("slope pairs must be coprime".into()));
    }
    Ok(vec![
        vec![exact_div(sq(pm) + sq(qm), 2, "pm²+qm²")?, -exact_div(sq(pp) + sq(qp), 2, "pp²+qp²")?],
        vec![exact_div(sq(pm) - sq(qm), 8, "pm²-qm²")?, -exact_div(sq(pp) - sq(qp), 8, "pp²-qp²")?],
    ])
}

/// Restriction map for the family with `pp` even and the other slopes odd.
pub fn mv_matrix_n(pm: i64, qm: i64, pp: i64, qp: i64) -> Result<IntMatrix> {
    if pm % 2 == 0 || qm % 2 == 0 || qp % 2 == 0 || pp % 2 != 0 {
        return Err(Error::NonIntegralEntry("expected pm, qm, qp odd and pp even".into()));
    }
    if !coprime(pm, qm) || !coprime(pp, qp) {
        return Err(Error::FamilyMismatch("slope pairs must be coprime".into()));
    }
    Ok(vec![
        vec![exact_div(sq(pm) + sq(qm), 2, "pm²+qm²")?, -(sq(pp) + sq(qp))],
        vec![exact_div(sq(pm) - sq(qm), 2, "pm²-qm²")?, -(sq(pp) - sq(qp))],
    ])
}

/// Brings N-family slopes to the form with `pp` even: the odd pair goes on
/// `K⁻`, and a factor swap fixes the position of the even entry.
pub fn n_family_normal_form(pm: i64, qm: i64, pp: i64, qp: i64) -> Result<[i64; 4]> {
    let odd = |p: i64, q: i64| p % 2 != 0 && q % 2 != 0;
    let (mut s, mut t) = ((pm, qm), (pp, qp));
    if !odd(s.0, s.1) {
        std::mem::swap(&mut s, &mut t);
    }
    if !odd(s.0, s.1) || odd(t.0, t.1) {
        return Err(Error::FamilyMismatch("N family needs one odd pair and one mixed-parity pair".into()));
    }
    if t.0 % 2 != 0 {
        s = (s.1, s.0);
        t = (t.1, t.0);
    }
    Ok([s.0, s.1, t.0, t.1])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyInvariants {
    pub family: Family,
    pub slopes: [i64; 4],
    pub two_connected: bool,
    #[serde(rename = "H2")]
    pub h2: AbelianGroup,
    #[serde(rename = "H3")]
    pub h3: AbelianGroup,
    #[serde(rename = "H4")]
    pub h4: AbelianGroup,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi3: Option<AbelianGroup>,
    #[serde(with = "int_json::one")]
    pub det: BigInt,
    #[serde(with = "int_json::vec")]
    pub snf: Vec<BigInt>,
    #[serde(with = "int_json::matrix")]
    pub matrix: IntMatrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

pub fn invariants_from_slopes(family: Family, slopes: [i64; 4]) -> Result<TopologyInvariants> {
    let [pm, qm, pp, qp] = match family {
        Family::P => slopes,
        Family::N => n_family_normal_form(slopes[0], slopes[1], slopes[2], slopes[3])?,
    };
    let cross = sq(pm) * sq(qp) - sq(pp) * sq(qm);
    let (matrix, closed) = match family {
        Family::P => (mv_matrix_p(pm, qm, pp, qp)?, exact_div(cross, 8, "closed form")?),
        Family::N => (mv_matrix_n(pm, qm, pp, qp)?, cross),
    };
    let det = det2(&matrix);
    if det != closed {
        return Err(Error::InternalInconsistency(format!("det {det} differs from closed form {closed}")));
    }
    let snf = smith_normal_form(&matrix);
    if mat_mul(&mat_mul(&snf.u, &matrix), &snf.v) != diag(&snf.diagonal) {
        return Err(Error::InternalInconsistency("Smith form does not reconstruct".into()));
    }
    let (coker, ker) = AbelianGroup::from_snf(&snf, 2, 2);
    if !det.is_zero() && coker.order() != Some(det.abs()) {
        return Err(Error::InternalInconsistency("cokernel order differs from |det|".into()));
    }
    let caveat = (det.is_zero() && family == Family::N).then(|| "degenerate, P-family rule applied".to_string());
    let out = match family {
        Family::P => TopologyInvariants {
            family,
            slopes: [pm, qm, pp, qp],
            two_connected: true,
            h2: AbelianGroup::zero(),
            h3: ker,
            h4: coker.clone(),
            pi3: Some(coker),
            det,
            snf: snf.diagonal,
            matrix,
            caveat,
        },
        Family::N => TopologyInvariants {
            family,
            slopes: [pm, qm, pp, qp],
            two_connected: false,
            h2: AbelianGroup::z(),
            h3: ker,
            h4: coker,
            pi3: None,
            det,
            snf: snf.diagonal,
            matrix,
            caveat,
        },
    };
    Ok(out)
}

fn diag(d: &[BigInt]) -> IntMatrix {
    let n = d.len();
    (0..n).map(|i| (0..n).map(|j| if i == j { d[i].clone() } else { BigInt::zero() }).collect()).collect()
}

/// Family and slopes read off a diagram with circle fibers on both sides.
pub fn family_of(d: &Diagram) -> Result<(Family, [i64; 4])> {
    let (cm, cp) = d
        .circle_pair()
        .ok_or_else(|| Error::FamilyMismatch("both singular isotropy groups must be circle type".into()))?;
    let slopes = [cm.p, cm.q, cp.p, cp.q];
    match d.h.structure().as_str() {
        "Q" if slopes.iter().all(|x| x % 2 != 0) => Ok((Family::P, slopes)),
        "Z4+Z2" => Ok((Family::N, slopes)),
        s => Err(Error::FamilyMismatch(format!("principal isotropy {s} with slopes {slopes:?}"))),
    }
}

pub fn invariants(d: &Diagram) -> Result<TopologyInvariants> {
    let (family, slopes) = family_of(d)?;
    invariants_from_slopes(family, slopes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_matrices() {
        assert_eq!(mv_matrix_p(1, 1, 1, 3).unwrap(), int_matrix(&[&[1, -5], &[0, 1]]));
        let m = mv_matrix_p(1, 1, 3, 5).unwrap();
        assert_eq!(m, int_matrix(&[&[1, -17], &[0, 2]]));
        assert_eq!(det2(&m), BigInt::from(2));
        assert_eq!(det2(&mv_matrix_p(3, 1, 1, 3).unwrap()).abs(), BigInt::from(10));
        assert!(matches!(mv_matrix_p(1, 1, 2, 3), Err(Error::NonIntegralEntry(_))));
    }

    #[test]
    fn snf_examples() {
        let s = smith_normal_form(&int_matrix(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        let s = smith_normal_form(&int_matrix(&[&[1, -5], &[0, 1]]));
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(1)]);
        let s = smith_normal_form(&int_matrix(&[&[2, 0], &[0, 0]]));
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(0)]);
    }

    #[test]
    fn n_family() {
        let q1 = invariants_from_slopes(Family::N, [1, 1, 1, 2]).unwrap();
        assert_eq!(q1.h4.to_string(), "Z_3");
        let r = invariants_from_slopes(Family::N, [3, 1, 1, 2]).unwrap();
        assert_eq!(r.h4.to_string(), "Z_35");
    }

    #[test]
    fn degenerate_slopes() {
        let p = invariants_from_slopes(Family::P, [1, 3, 1, 3]).unwrap();
        assert_eq!(p.det, BigInt::zero());
        assert_eq!(p.h3.free_rank, 1);
        assert_eq!(p.h4.free_rank, 1);
    }
}
