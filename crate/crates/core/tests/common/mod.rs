//! Independent oracles shared by the integration tests. Nothing here calls
//! the exact-angle or Smith normal form code it is used to check.

#![allow(dead_code)]

use std::f64::consts::PI;

use cohom::groups::{FiniteSubgroup, SlopeCircle};
use cohom::qfield::{FieldElem, GroupElement, Quaternion};
use cohom::topology::{IntMatrix, SnfResult};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

pub fn field_f64(x: &FieldElem) -> f64 {
    x.a().to_f64().unwrap() + x.b().to_f64().unwrap() * 2f64.sqrt()
}

pub fn quat_f64(q: &Quaternion) -> [f64; 4] {
    [field_f64(&q.w), field_f64(&q.x), field_f64(&q.y), field_f64(&q.z)]
}

fn close(a: [f64; 4], b: [f64; 4]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
}

/// `cos θ + u sin θ` in floating point.
fn float_exp(u: [f64; 4], theta: f64) -> [f64; 4] {
    let (s, c) = theta.sin_cos();
    [c, u[1] * s, u[2] * s, u[3] * s]
}

/// Elements of `f` hit by the circle at the `8·|F|` angles `2πt/(8|F|)`.
pub fn torsion_by_scan(c: &SlopeCircle, f: &FiniteSubgroup) -> Vec<GroupElement> {
    let n = 8 * f.order();
    let u = quat_f64(&c.axis);
    let table: Vec<([f64; 4], [f64; 4])> =
        f.elements.iter().map(|g| (quat_f64(&g.left), quat_f64(&g.right))).collect();
    let mut hits = Vec::new();
    for t in 0..n {
        let theta = 2.0 * PI * t as f64 / n as f64;
        let pt = (float_exp(u, c.p as f64 * theta), float_exp(u, c.q as f64 * theta));
        for (g, (l, r)) in f.elements.iter().zip(&table) {
            if close(pt.0, *l) && close(pt.1, *r) {
                hits.push(g.clone());
            }
        }
    }
    hits.sort();
    hits.dedup();
    hits
}

fn det(a: &IntMatrix) -> BigInt {
    match a.len() {
        0 => BigInt::from(1),
        1 => a[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: IntMatrix = a[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &a[0][j] * det(&minor);
                if j % 2 == 0 { term } else { -term }
            })
            .sum(),
    }
}

fn product(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum()).collect())
        .collect()
}

/// Checks `U·A·V = diag(d)`, unimodularity, signs and the divisibility chain.
pub fn check_snf(a: &IntMatrix, r: &SnfResult) -> Result<(), String> {
    let (m, n) = (a.len(), a.first().map_or(0, Vec::len));
    let d = product(&product(&r.u, a), &r.v);
    for (i, row) in d.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let want = if i == j { r.diagonal.get(i).cloned().unwrap_or_default() } else { BigInt::zero() };
            if *x != want {
                return Err(format!("U·A·V differs at ({i},{j}): {x} vs {want}"));
            }
        }
    }
    if r.u.len() != m || r.v.len() != n {
        return Err("transform shapes".into());
    }
    for (name, t) in [("U", &r.u), ("V", &r.v)] {
        if det(t).abs() != BigInt::from(1) {
            return Err(format!("{name} is not unimodular"));
        }
    }
    if r.diagonal.iter().any(|x| x.is_negative()) {
        return Err("negative invariant factor".into());
    }
    for w in r.diagonal.windows(2) {
        let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
        if !ok {
            return Err(format!("{} does not divide {}", w[0], w[1]));
        }
    }
    Ok(())
}

/// Closed forms for the determinant of the Mayer-Vietoris matrix.
pub fn closed_form_p(s: [i64; 4]) -> i128 {
    let [pm, qm, pp, qp] = s.map(i128::from);
    (pm * pm * qp * qp - pp * pp * qm * qm) / 8
}

pub fn closed_form_n(s: [i64; 4]) -> i128 {
    let [pm, qm, pp, qp] = s.map(i128::from);
    pm * pm * qp * qp - pp * pp * qm * qm
}
