//! Exact feasibility of linear systems via a phase-one simplex with Bland's rule.

use crate::linalg::Vector;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vector,
    pub rel: Relation,
    pub rhs: Scalar,
}

impl Constraint {
    pub fn ge(coeffs: Vector, rhs: Scalar) -> Self {
        Constraint {
            coeffs,
            rel: Relation::Ge,
            rhs,
        }
    }

    pub fn eq(coeffs: Vector, rhs: Scalar) -> Self {
        Constraint {
            coeffs,
            rel: Relation::Eq,
            rhs,
        }
    }
}

/// Returns a point of `{x ∈ R^n : constraints}` or `None` if the system is infeasible.
/// Variables are free.
pub fn feasible_point(n: usize, constraints: &[Constraint]) -> Option<Vector> {
    let rows = constraints.len();
    if rows == 0 {
        return Some(vec![Scalar::zero(); n]);
    }
    let slack_rows: Vec<usize> = (0..rows).filter(|&i| constraints[i].rel == Relation::Ge).collect();
    // columns: u (n) | w (n) | slacks | artificials | rhs
    let n_slack = slack_rows.len();
    let art0 = 2 * n + n_slack;
    let cols = art0 + rows;
    let mut t: Vec<Vector> = Vec::with_capacity(rows);
    for (i, c) in constraints.iter().enumerate() {
        debug_assert_eq!(c.coeffs.len(), n);
        let flip = c.rhs.is_negative();
        let sgn = |x: &Scalar| if flip { -x } else { x.clone() };
        let mut row = vec![Scalar::zero(); cols + 1];
        for (j, a) in c.coeffs.iter().enumerate() {
            row[j] = sgn(a);
            row[n + j] = -&row[j];
        }
        if let Some(k) = slack_rows.iter().position(|&r| r == i) {
            row[2 * n + k] = sgn(&Scalar::from_int(-1));
        }
        row[art0 + i] = Scalar::one();
        row[cols] = sgn(&c.rhs);
        t.push(row);
    }
    let mut basis: Vec<usize> = (art0..art0 + rows).collect();

    loop {
        // reduced cost of column j is minus its sum over rows with an artificial basic
        let entering = (0..art0).find(|&j| {
            let mut s = Scalar::zero();
            for (row, &b) in t.iter().zip(&basis) {
                if b >= art0 && !row[j].is_zero() {
                    s = &s + &row[j];
                }
            }
            s.is_positive()
        });
        let Some(j) = entering else { break };
        let mut leave: Option<(usize, Scalar)> = None;
        for (i, row) in t.iter().enumerate() {
            if !row[j].is_positive() {
                continue;
            }
            let ratio = &row[cols] / &row[j];
            let better = match &leave {
                None => true,
                Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, _)) = leave else {
            // unbounded direction cannot occur in phase one (objective bounded below)
            unreachable!("phase-one objective is bounded");
        };
        pivot(&mut t, r, j);
        basis[r] = j;
    }

    let infeasible = basis.iter().zip(&t).any(|(&b, row)| b >= art0 && !row[cols].is_zero());
    if infeasible {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (&b, row) in basis.iter().zip(&t) {
        if b < n {
            x[b] = &x[b] + &row[cols];
        } else if b < 2 * n {
            x[b - n] = &x[b - n] - &row[cols];
        }
    }
    debug_assert!(constraints.iter().all(|c| {
        let v = crate::linalg::dot(&c.coeffs, &x);
        match c.rel {
            Relation::Ge => v >= c.rhs,
            Relation::Eq => v == c.rhs,
        }
    }));
    Some(x)
}

fn pivot(t: &mut [Vector], r: usize, c: usize) {
    let inv = t[r][c].recip();
    for x in t[r].iter_mut() {
        if !x.is_zero() {
            *x = &*x * &inv;
        }
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, p) in row.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *x = &*x - &(&f * p);
            }
        }
    }
}

/// A point with `⟨a, x⟩ > 0` for every row `a`, found through the homogenized
/// system `⟨a, x⟩ ≥ 1`.
pub fn strictly_positive_point(n: usize, rows: &[Vector]) -> Option<Vector> {
    let cs: Vec<Constraint> = rows.iter().map(|a| Constraint::ge(a.clone(), Scalar::one())).collect();
    feasible_point(n, &cs)
}
