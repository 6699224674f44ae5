//! Dense exact linear algebra over [`Scalar`].

use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = &acc + &(x * y);
    }
    acc
}

pub fn scale(v: &[Scalar], c: &Scalar) -> Vector {
    v.iter().map(|x| x * c).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Reduced row-echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vector], cols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        if !inv.is_one() {
            for x in m[r].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vector], cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// Reduces `v` against an RREF basis; the result is zero iff `v` lies in its span.
pub fn reduce(v: &[Scalar], basis: &[Vector], pivots: &[usize]) -> Vector {
    let mut out = v.to_vec();
    for (row, &p) in basis.iter().zip(pivots) {
        if out[p].is_zero() {
            continue;
        }
        let f = out[p].clone();
        for (x, y) in out.iter_mut().zip(row) {
            if !y.is_zero() {
                *x = &*x - &(&f * y);
            }
        }
    }
    out
}

pub fn in_span(v: &[Scalar], basis: &[Vector], pivots: &[usize]) -> bool {
    is_zero(&reduce(v, basis, pivots))
}

/// Basis of `{x : row · x = 0 for every row}`, one vector per free column.
pub fn kernel(rows: &[Vector], cols: usize) -> Vec<Vector> {
    let (r, pivots) = rref(rows, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse(m: &[Vector]) -> Option<Vec<Vector>> {
    let n = m.len();
    let aug: Vec<Vector> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Row vector times matrix.
pub fn vec_mat(v: &[Scalar], m: &[Vector]) -> Vector {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![Scalar::zero(); cols];
    for (x, row) in v.iter().zip(m) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            if !y.is_zero() {
                *o = &*o + &(x * y);
            }
        }
    }
    out
}

/// Whether `a` and `b` are nonzero multiples of each other.
pub fn proportional(a: &[Scalar], b: &[Scalar]) -> bool {
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if b[i].is_zero() {
        return false;
    }
    let f = &b[i] / &a[i];
    a.iter().zip(b).all(|(x, y)| &(x * &f) == y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![v(&[1, -1, 0]), v(&[1, 0, -1]), v(&[0, 1, -1])];
        assert_eq!(rank(&rows, 3), 2);
        let k = kernel(&rows, 3);
        assert_eq!(k, vec![v(&[1, 1, 1])]);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![v(&[1, -1]), v(&[0, 1])];
        let inv = inverse(&m).unwrap();
        assert_eq!(vec_mat(&v(&[1, 1]), &inv), v(&[1, 2]));
        assert!(inverse(&[v(&[1, 2]), v(&[2, 4])]).is_none());
    }

    #[test]
    fn proportionality() {
        assert!(proportional(&v(&[0, 2, -4]), &v(&[0, -1, 2])));
        assert!(!proportional(&v(&[1, 2]), &v(&[1, 3])));
    }
}
