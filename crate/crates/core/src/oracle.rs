//! Reference tope graphs by linear programming, for any central arrangement.
//!
//! Regions are found by inserting hyperplanes one at a time and asking, for every
//! known region, whether the new hyperplane cuts it. Two regions are adjacent when
//! they differ in one hyperplane and that hyperplane carries a common facet.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::graph::TopeGraph;
use crate::linalg::{self, Vector};
use crate::lp::{self, Constraint};
use crate::scalar::Scalar;
use crate::tope::{Sign, Tope};

/// Every region of `a` with an interior point, in insertion order.
pub fn regions(a: &Arrangement, max_topes: usize) -> Result<Vec<(Tope, Vector)>> {
    let n = a.dim();
    let normals = a.normals();
    let mut current: Vec<(Vec<Sign>, Vector)> = vec![(Vec::new(), vec![Scalar::zero(); n])];
    for (k, alpha) in normals.iter().enumerate() {
        let mut next = Vec::with_capacity(current.len() * 2);
        for (signs, witness) in current {
            let here = linalg::dot(alpha, &witness).signum();
            for s in [Sign::Plus, Sign::Minus] {
                let point = if Sign::of(here) == Some(s) {
                    Some(witness.clone())
                } else {
                    let mut cs = cone_constraints(&normals[..k], &signs);
                    cs.push(Constraint::ge(oriented(alpha, s), Scalar::one()));
                    lp::feasible_point(n, &cs)
                };
                if let Some(x) = point {
                    let mut t = signs.clone();
                    t.push(s);
                    next.push((t, x));
                }
            }
        }
        if next.len() > max_topes {
            return Err(Error::SizeLimit {
                what: "oracle regions",
                limit: max_topes,
            });
        }
        current = next;
    }
    Ok(current.into_iter().map(|(s, x)| (Tope::from_signs(&s), x)).collect())
}

/// The tope graph of `a`, computed without any simpliciality assumption.
pub fn oracle_tope_graph(a: &Arrangement, max_topes: usize) -> Result<TopeGraph> {
    let normals = a.normals();
    let topes: Vec<Tope> = regions(a, max_topes)?.into_iter().map(|(t, _)| t).collect();
    let index: std::collections::HashMap<&Tope, usize> = topes.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut pairs = Vec::new();
    for (i, t) in topes.iter().enumerate() {
        let signs: Vec<Sign> = t.signs().collect();
        for h in 0..a.len() {
            let Some(&j) = index.get(&t.flipped(h)) else { continue };
            if j < i {
                continue;
            }
            let mut cs: Vec<Constraint> = normals
                .iter()
                .zip(&signs)
                .enumerate()
                .filter(|&(k, _)| k != h)
                .map(|(_, (alpha, &s))| Constraint::ge(oriented(alpha, s), Scalar::one()))
                .collect();
            cs.push(Constraint::eq(normals[h].clone(), Scalar::zero()));
            if lp::feasible_point(a.dim(), &cs).is_some() {
                pairs.push((i, j));
            }
        }
    }
    drop(index);
    TopeGraph::new(a.len(), topes, &pairs)
}

fn cone_constraints(normals: &[Vector], signs: &[Sign]) -> Vec<Constraint> {
    normals
        .iter()
        .zip(signs)
        .map(|(alpha, &s)| Constraint::ge(oriented(alpha, s), Scalar::one()))
        .collect()
}

fn oriented(alpha: &[Scalar], s: Sign) -> Vector {
    match s {
        Sign::Plus => alpha.to_vec(),
        Sign::Minus => alpha.iter().map(|x| -x).collect(),
    }
}
