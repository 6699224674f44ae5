//! Generators for the named arrangement families and the signed-permutation model
//! of the regions of `B_n`.

use std::fmt;
use std::str::FromStr;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::{Rational, Scalar};
use crate::tope::{Sign, Tope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// `A_{n-1}` in `R^n`.
    A {
        n: usize,
    },
    B {
        n: usize,
    },
    D {
        n: usize,
    },
    Dns {
        n: usize,
        s: usize,
    },
    /// `m` lines through the origin of the plane at equal angles.
    I2m {
        m: usize,
    },
    /// Near-pencil: `m - 1` planes through a line and one transversal plane.
    R0 {
        m: usize,
    },
    /// Sidelines and mirror axes of the coned `m`-gon.
    R1 {
        m: usize,
    },
    /// `R1(2m)` with the line at infinity.
    R2 {
        m: usize,
    },
}

impl FamilySpec {
    /// Builds a spec from a family name and the parameters the CLI accepts.
    pub fn from_parts(family: &str, n: Option<usize>, s: Option<usize>, m: Option<usize>) -> Result<FamilySpec> {
        let need = |v: Option<usize>, what: &str| {
            v.ok_or_else(|| Error::InvalidFamily(format!("family {family} needs --{what}")))
        };
        let spec = match family.to_ascii_lowercase().as_str() {
            "a" => FamilySpec::A { n: need(n, "n")? },
            "b" => FamilySpec::B { n: need(n, "n")? },
            "d" => FamilySpec::D { n: need(n, "n")? },
            "dns" => FamilySpec::Dns {
                n: need(n, "n")?,
                s: need(s, "s")?,
            },
            "i2m" => FamilySpec::I2m { m: need(m, "m")? },
            "r0" => FamilySpec::R0 { m: need(m, "m")? },
            "r1" => FamilySpec::R1 { m: need(m, "m")? },
            "r2" => FamilySpec::R2 { m: need(m, "m")? },
            other => return Err(Error::InvalidFamily(format!("unknown family `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            FamilySpec::A { n } | FamilySpec::B { n } => n >= 2,
            FamilySpec::D { n } => n >= 4,
            FamilySpec::Dns { n, s } => n >= 2 && s <= n,
            FamilySpec::I2m { m } | FamilySpec::R0 { m } => m >= 3,
            FamilySpec::R1 { m } => (3..=6).contains(&m),
            FamilySpec::R2 { m } => (2..=3).contains(&m),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidFamily(self.to_string()))
        }
    }

    /// Hyperplane count from the defining formulas.
    pub fn hyperplane_count(&self) -> usize {
        match *self {
            FamilySpec::A { n } => n * (n - 1) / 2,
            FamilySpec::B { n } => n * n,
            FamilySpec::D { n } => n * (n - 1),
            FamilySpec::Dns { n, s } => n * (n - 1) + s,
            FamilySpec::I2m { m } | FamilySpec::R0 { m } => m,
            FamilySpec::R1 { m } => 2 * m,
            FamilySpec::R2 { m } => 4 * m + 1,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::A { n } => write!(f, "A(n={n})"),
            FamilySpec::B { n } => write!(f, "B(n={n})"),
            FamilySpec::D { n } => write!(f, "D(n={n})"),
            FamilySpec::Dns { n, s } => write!(f, "Dns(n={n},s={s})"),
            FamilySpec::I2m { m } => write!(f, "I2m(m={m})"),
            FamilySpec::R0 { m } => write!(f, "R0(m={m})"),
            FamilySpec::R1 { m } => write!(f, "R1(m={m})"),
            FamilySpec::R2 { m } => write!(f, "R2(m={m})"),
        }
    }
}

fn int(x: i64) -> Scalar {
    Scalar::from_int(x)
}

fn unit(n: usize, i: usize) -> Vector {
    (0..n).map(|k| int((k == i) as i64)).collect()
}

fn pm(n: usize, i: usize, j: usize, sign: i64) -> Vector {
    let mut v = unit(n, i);
    v[j] = int(sign);
    v
}

fn type_d_roots(n: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(pm(n, i, j, -1));
            out.push(pm(n, i, j, 1));
        }
    }
    out
}

/// Exact normals of the family, sorted canonically.
pub fn generate(spec: FamilySpec) -> Result<Arrangement> {
    spec.validate()?;
    let (dim, normals) = match spec {
        FamilySpec::A { n } => {
            let mut out = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    out.push(pm(n, i, j, -1));
                }
            }
            (n, out)
        }
        FamilySpec::B { n } => {
            let mut out = type_d_roots(n);
            out.extend((0..n).map(|i| unit(n, i)));
            (n, out)
        }
        FamilySpec::D { n } => (n, type_d_roots(n)),
        FamilySpec::Dns { n, s } => {
            let mut out = type_d_roots(n);
            out.extend((0..s).map(|i| unit(n, i)));
            (n, out)
        }
        FamilySpec::I2m { m } => (2, dihedral_lines(m)?),
        FamilySpec::R0 { m } => {
            let mut out = vec![vec![int(0), int(1), int(0)]];
            out.extend((1..=m as i64 - 2).map(|k| vec![int(0), int(1), int(-k)]));
            out.push(vec![int(1), int(0), int(0)]);
            (3, out)
        }
        FamilySpec::R1 { m } => (3, polygon_with_axes(m)?),
        FamilySpec::R2 { m } => {
            let mut out = polygon_with_axes(2 * m)?;
            out.push(vec![int(0), int(0), int(1)]);
            (3, out)
        }
    };
    Arrangement::new_sorted(dim, normals)
}

/// Normals `(-tan θ, 1)` of the lines at angles `θ = kπ/m`, and `(1, 0)` for the
/// vertical line.
fn dihedral_lines(m: usize) -> Result<Vec<Vector>> {
    let tangents: Vec<Option<Scalar>> = match m {
        3 => {
            let r3 = Scalar::sqrt(3)?;
            vec![Some(int(0)), Some(r3.clone()), Some(-&r3)]
        }
        4 => vec![Some(int(0)), Some(int(1)), None, Some(int(-1))],
        6 => {
            let r3 = Scalar::sqrt(3)?;
            let third = &r3 / &int(3);
            vec![
                Some(int(0)),
                Some(third.clone()),
                Some(r3.clone()),
                None,
                Some(-&r3),
                Some(-&third),
            ]
        }
        8 => {
            let r2 = Scalar::sqrt(2)?;
            let small = &r2 - &int(1);
            let big = &r2 + &int(1);
            vec![
                Some(int(0)),
                Some(small.clone()),
                Some(int(1)),
                Some(big.clone()),
                None,
                Some(-&big),
                Some(int(-1)),
                Some(-&small),
            ]
        }
        12 => {
            let r3 = Scalar::sqrt(3)?;
            let t15 = &int(2) - &r3;
            let t30 = &r3 / &int(3);
            let t75 = &int(2) + &r3;
            vec![
                Some(int(0)),
                Some(t15.clone()),
                Some(t30.clone()),
                Some(int(1)),
                Some(r3.clone()),
                Some(t75.clone()),
                None,
                Some(-&t75),
                Some(-&r3),
                Some(int(-1)),
                Some(-&t30),
                Some(-&t15),
            ]
        }
        _ => {
            return Err(Error::UnsupportedField(format!(
                "lines at multiples of π/{m} need coordinates outside a single Q(√d); supported m: 3, 4, 6, 8, 12"
            )))
        }
    };
    Ok(tangents
        .into_iter()
        .map(|t| match t {
            Some(t) => vec![-&t, int(1)],
            None => vec![int(1), int(0)],
        })
        .collect())
}

/// Vertices of an affine image of the regular `m`-gon centred at the origin.
fn polygon(m: usize) -> Result<Vec<(Scalar, Scalar)>> {
    let q = |a: i64, b: i64| Scalar::from(Rational::new(a, b));
    Ok(match m {
        3 => vec![(int(1), int(0)), (int(0), int(1)), (int(-1), int(-1))],
        4 => vec![(int(1), int(0)), (int(0), int(1)), (int(-1), int(0)), (int(0), int(-1))],
        5 => {
            let r5 = Scalar::sqrt(5)?;
            let c72 = &(&r5 - &int(1)) / &int(4);
            let c144 = -&(&(&r5 + &int(1)) / &int(4));
            let y2 = &(&r5 - &int(1)) / &int(2);
            vec![
                (int(1), int(0)),
                (c72.clone(), int(1)),
                (c144.clone(), y2.clone()),
                (c144, -&y2),
                (c72, int(-1)),
            ]
        }
        6 => vec![
            (int(1), int(0)),
            (q(1, 2), int(1)),
            (q(-1, 2), int(1)),
            (int(-1), int(0)),
            (q(-1, 2), int(-1)),
            (q(1, 2), int(-1)),
        ],
        _ => {
            return Err(Error::UnsupportedField(format!(
                "no exact {m}-gon model in a single quadratic field; supported m: 3, 4, 5, 6"
            )))
        }
    })
}

/// The plane through the origin and the points `(p, 1)`, `(q, 1)`.
fn coned_line(p: &(Scalar, Scalar), q: &(Scalar, Scalar)) -> Vector {
    vec![&p.1 - &q.1, &q.0 - &p.0, &(&p.0 * &q.1) - &(&p.1 * &q.0)]
}

fn polygon_with_axes(m: usize) -> Result<Vec<Vector>> {
    let v = polygon(m)?;
    let centre = (int(0), int(0));
    let mut out: Vec<Vector> = (0..m).map(|k| coned_line(&v[k], &v[(k + 1) % m])).collect();
    if m % 2 == 1 {
        out.extend(v.iter().map(|p| coned_line(&centre, p)));
    } else {
        out.extend((0..m / 2).map(|k| coned_line(&centre, &v[k])));
        let half = Scalar::from(Rational::new(1, 2));
        out.extend((0..m / 2).map(|k| {
            let (a, b) = (&v[k], &v[k + 1]);
            let mid = (&(&a.0 + &b.0) * &half, &(&a.1 + &b.1) * &half);
            coned_line(&centre, &mid)
        }));
    }
    Ok(out)
}

/// A region of `B_n`: the chamber `|x_{σ(1)}| > … > |x_{σ(n)}| > 0` with
/// `sign(x_k) = δ(k)`. Values of `sigma` and indices of `delta` are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    sigma: Vec<usize>,
    delta: Vec<Sign>,
}

impl SignedPermutation {
    pub fn new(sigma: Vec<usize>, delta: Vec<Sign>) -> Result<SignedPermutation> {
        let n = sigma.len();
        if delta.len() != n {
            return Err(Error::LengthMismatch(n, delta.len()));
        }
        let mut seen = vec![false; n];
        for &v in &sigma {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidInput(format!("{sigma:?} is not a permutation")));
            }
        }
        Ok(SignedPermutation { sigma, delta })
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn delta(&self) -> &[Sign] {
        &self.delta
    }

    /// The coordinate with the smallest absolute value, `σ(n)`.
    pub fn last(&self) -> usize {
        *self.sigma.last().unwrap()
    }

    /// The integral interior point `x_{σ(i)} = δ(σ(i))·(n + 1 − i)`.
    pub fn witness(&self) -> Vec<i64> {
        let n = self.n();
        let mut x = vec![0; n];
        for (pos, &k) in self.sigma.iter().enumerate() {
            let mag = (n - pos) as i64;
            x[k] = if self.delta[k] == Sign::Plus { mag } else { -mag };
        }
        x
    }

    /// All `2^n n!` signed permutations, in lexicographic order of `(σ, δ)`.
    pub fn all(n: usize) -> Vec<SignedPermutation> {
        let mut out = Vec::new();
        for sigma in permutations(n) {
            for mask in 0..1u32 << n {
                let delta = (0..n)
                    .map(|k| {
                        if mask >> (n - 1 - k) & 1 == 1 {
                            Sign::Minus
                        } else {
                            Sign::Plus
                        }
                    })
                    .collect();
                out.push(SignedPermutation {
                    sigma: sigma.clone(),
                    delta,
                });
            }
        }
        out
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .sigma
            .iter()
            .map(|&k| format!("{}{}", self.delta[k].as_char(), k + 1))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    while let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) {
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// The tope of `a` containing the witness of `sp`; for `a = B_n` this is the
/// region of `sp`, for a subarrangement its image.
pub fn tope_of_signed_perm(sp: &SignedPermutation, a: &Arrangement) -> Tope {
    let x: Vector = sp.witness().into_iter().map(Scalar::from_int).collect();
    a.tope_of_point(&x)
        .expect("signed-permutation witnesses avoid every hyperplane of B_n")
}

/// The hyperplane separating two adjacent regions of `B_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignedPermEdge {
    /// `H_{e_k}`.
    Coordinate(usize),
    /// `H_{e_i - e_j}` (`plus == false`) or `H_{e_i + e_j}`, with `i < j`.
    Root { i: usize, j: usize, plus: bool },
}

impl SignedPermEdge {
    pub fn normal(&self, n: usize) -> Vector {
        match *self {
            SignedPermEdge::Coordinate(k) => unit(n, k),
            SignedPermEdge::Root { i, j, plus } => pm(n, i, j, if plus { 1 } else { -1 }),
        }
    }
}

/// Adjacency of two regions of `B_n` in signed-permutation form.
pub fn signed_perm_adjacent(a: &SignedPermutation, b: &SignedPermutation) -> Option<SignedPermEdge> {
    if a.n() != b.n() {
        return None;
    }
    if a.sigma == b.sigma {
        let diff: Vec<usize> = (0..a.n()).filter(|&k| a.delta[k] != b.delta[k]).collect();
        return match diff.as_slice() {
            [k] if a.last() == *k => Some(SignedPermEdge::Coordinate(*k)),
            _ => None,
        };
    }
    if a.delta != b.delta {
        return None;
    }
    let diff: Vec<usize> = (0..a.n()).filter(|&p| a.sigma[p] != b.sigma[p]).collect();
    match diff.as_slice() {
        [p, q] if *q == p + 1 && a.sigma[*p] == b.sigma[*q] && a.sigma[*q] == b.sigma[*p] => {
            let (x, y) = (a.sigma[*p], a.sigma[*q]);
            Some(SignedPermEdge::Root {
                i: x.min(y),
                j: x.max(y),
                plus: a.delta[x] != a.delta[y],
            })
        }
        _ => None,
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses `A(n=3)`, `Dns(n=4,s=2)`, `R1(m=5)` and the like.
    fn from_str(s: &str) -> Result<FamilySpec> {
        let bad = || Error::InvalidFamily(format!("cannot parse family spec `{s}`"));
        let (name, rest) = s.trim().split_once('(').ok_or_else(bad)?;
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        let (mut n, mut sv, mut m) = (None, None, None);
        for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            let v: usize = v.trim().parse().map_err(|_| bad())?;
            match k.trim() {
                "n" => n = Some(v),
                "s" => sv = Some(v),
                "m" => m = Some(v),
                _ => return Err(bad()),
            }
        }
        FamilySpec::from_parts(name, n, sv, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(sigma: &[usize], delta: &str) -> SignedPermutation {
        let t: Tope = delta.parse().unwrap();
        SignedPermutation::new(sigma.to_vec(), t.signs().collect()).unwrap()
    }

    #[test]
    fn counts_match_formulas() {
        let specs = [
            FamilySpec::A { n: 4 },
            FamilySpec::B { n: 3 },
            FamilySpec::D { n: 4 },
            FamilySpec::Dns { n: 4, s: 2 },
            FamilySpec::I2m { m: 8 },
            FamilySpec::R0 { m: 6 },
            FamilySpec::R1 { m: 5 },
            FamilySpec::R1 { m: 6 },
            FamilySpec::R2 { m: 2 },
            FamilySpec::R2 { m: 3 },
        ];
        for s in specs {
            assert_eq!(generate(s).unwrap().len(), s.hyperplane_count(), "{s}");
        }
    }

    #[test]
    fn invalid_and_unsupported() {
        assert!(matches!(generate(FamilySpec::D { n: 3 }), Err(Error::InvalidFamily(_))));
        assert!(matches!(
            generate(FamilySpec::I2m { m: 5 }),
            Err(Error::UnsupportedField(_))
        ));
        assert!(matches!(
            generate(FamilySpec::R1 { m: 7 }),
            Err(Error::InvalidFamily(_))
        ));
        assert_eq!(
            "Dns(n=4,s=2)".parse::<FamilySpec>().unwrap(),
            FamilySpec::Dns { n: 4, s: 2 }
        );
    }

    #[test]
    fn witness_and_tope() {
        let b2 = generate(FamilySpec::B { n: 2 }).unwrap();
        let p = sp(&[0, 1], "++");
        assert_eq!(p.witness(), vec![2, 1]);
        assert_eq!(tope_of_signed_perm(&p, &b2).minus_count(), 0);
        let q = sp(&[0, 1], "--");
        assert_eq!(tope_of_signed_perm(&q, &b2), tope_of_signed_perm(&p, &b2).negated());
    }

    #[test]
    fn adjacency_rules() {
        let base = sp(&[0, 1], "++");
        assert_eq!(
            signed_perm_adjacent(&base, &sp(&[0, 1], "+-")),
            Some(SignedPermEdge::Coordinate(1))
        );
        assert_eq!(signed_perm_adjacent(&base, &sp(&[0, 1], "-+")), None);
        assert_eq!(
            signed_perm_adjacent(&base, &sp(&[1, 0], "++")),
            Some(SignedPermEdge::Root {
                i: 0,
                j: 1,
                plus: false
            })
        );
        assert_eq!(
            signed_perm_adjacent(&sp(&[0, 1], "+-"), &sp(&[1, 0], "+-")),
            Some(SignedPermEdge::Root { i: 0, j: 1, plus: true })
        );
    }

    #[test]
    fn permutations_are_lexicographic() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(SignedPermutation::all(3).len(), 48);
    }
}
