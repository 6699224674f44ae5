//! Central hyperplane arrangements with exact normals, and the structural
//! operations on them: deletion, restriction and products.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::scalar::{FieldTag, Rational, Scalar};
use crate::tope::{Sign, Tope};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A linear hyperplane `{x : ⟨normal, x⟩ = 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: Vector,
    index: usize,
}

impl Hyperplane {
    pub fn normal(&self) -> &[Scalar] {
        &self.normal
    }

    pub fn index(&self) -> usize {
        self.index
    }
}

/// Rescales a nonzero vector to its canonical representative: first nonzero entry
/// positive, and the common rational factor cleared so that the rational and
/// irrational parts of all entries are coprime integers.
pub fn canonical_normal(v: &[Scalar]) -> Option<Vector> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.recip();
    let mut w: Vector = v.iter().map(|x| x * &inv).collect();
    let parts: Vec<Rational> = w
        .iter()
        .flat_map(|x| [x.rational_part(), x.irrational_part()])
        .filter(|r| !r.is_zero())
        .collect();
    let lcm = parts.iter().fold(BigInt::one(), |acc, r| acc.lcm(&r.denom()));
    let gcd = parts
        .iter()
        .fold(BigInt::zero(), |acc, r| acc.gcd(&(r.numer() * &lcm / r.denom())));
    let factor = Scalar::from(Rational::from_big(lcm, gcd.abs()));
    if !factor.is_one() {
        w = w.iter().map(|x| x * &factor).collect();
    }
    Some(w)
}

/// An ordered set of linear hyperplanes in `R^dim` over one exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    field: FieldTag,
    hyperplanes: Vec<Hyperplane>,
}

/// Old-to-new index correspondence produced by [`Arrangement::delete`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexMap {
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

impl IndexMap {
    pub fn dropping(m: usize, drop: &[usize]) -> IndexMap {
        let mut old_to_new = vec![None; m];
        let mut new_to_old = Vec::new();
        for (i, slot) in old_to_new.iter_mut().enumerate() {
            if !drop.contains(&i) {
                *slot = Some(new_to_old.len());
                new_to_old.push(i);
            }
        }
        IndexMap { old_to_new, new_to_old }
    }
}

/// The tope of the subarrangement: the retained coordinates of `t`.
pub fn project_tope(map: &IndexMap, t: &Tope) -> Tope {
    t.select(&map.new_to_old)
}

impl Arrangement {
    /// Builds an arrangement in file order. Normals are canonicalized; zero or
    /// proportional normals are rejected, as are entries from more than one field.
    pub fn new(dim: usize, normals: Vec<Vector>) -> Result<Arrangement> {
        if normals.is_empty() {
            return Err(Error::Empty);
        }
        let mut field = FieldTag::Rational;
        let mut seen: HashMap<Vector, usize> = HashMap::new();
        let mut hyperplanes = Vec::with_capacity(normals.len());
        for (index, v) in normals.into_iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "normal {index} has {} entries, expected {dim}",
                    v.len()
                )));
            }
            for x in &v {
                field = field
                    .join(x.field())
                    .ok_or_else(|| Error::FieldMismatch(format!("normal {index} leaves {field}")))?;
            }
            let normal = canonical_normal(&v).ok_or(Error::ZeroNormal(index))?;
            if let Some(&j) = seen.get(&normal) {
                return Err(Error::DuplicateHyperplane(j, index));
            }
            seen.insert(normal.clone(), index);
            hyperplanes.push(Hyperplane { normal, index });
        }
        Ok(Arrangement {
            dim,
            field,
            hyperplanes,
        })
    }

    /// Like [`Arrangement::new`] but sorts the canonical normals lexicographically.
    pub fn new_sorted(dim: usize, normals: Vec<Vector>) -> Result<Arrangement> {
        let a = Arrangement::new(dim, normals)?;
        let mut ns: Vec<Vector> = a.hyperplanes.into_iter().map(|h| h.normal).collect();
        ns.sort();
        Arrangement::new(dim, ns)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn normal(&self, i: usize) -> &[Scalar] {
        &self.hyperplanes[i].normal
    }

    pub fn normals(&self) -> Vec<Vector> {
        self.hyperplanes.iter().map(|h| h.normal.clone()).collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.normals(), self.dim)
    }

    /// Rank of the subarrangement on `indices`.
    pub fn rank_of(&self, indices: &[usize]) -> usize {
        let rows: Vec<Vector> = indices.iter().map(|&i| self.normal(i).to_vec()).collect();
        linalg::rank(&rows, self.dim)
    }

    /// Index of the hyperplane with the given (not necessarily canonical) normal.
    pub fn position(&self, normal: &[Scalar]) -> Option<usize> {
        let c = canonical_normal(normal)?;
        self.hyperplanes.iter().position(|h| h.normal == c)
    }

    /// The sign vector of a point, or `None` if it lies on some hyperplane.
    pub fn tope_of_point(&self, x: &[Scalar]) -> Option<Tope> {
        let signs: Option<Vec<Sign>> = self
            .hyperplanes
            .iter()
            .map(|h| Sign::of(linalg::dot(&h.normal, x).signum()))
            .collect();
        signs.map(|s| Tope::from_signs(&s))
    }

    /// Removes the listed hyperplanes, keeping the rest in their original order.
    pub fn delete(&self, drop: &[usize]) -> Result<(Arrangement, IndexMap)> {
        if let Some(&bad) = drop.iter().find(|&&i| i >= self.len()) {
            return Err(Error::IndexOutOfRange(bad));
        }
        let map = IndexMap::dropping(self.len(), drop);
        if map.new_to_old.is_empty() {
            return Err(Error::DropAll);
        }
        let hyperplanes = map
            .new_to_old
            .iter()
            .enumerate()
            .map(|(index, &old)| Hyperplane {
                normal: self.hyperplanes[old].normal.clone(),
                index,
            })
            .collect();
        Ok((
            Arrangement {
                dim: self.dim,
                field: self.field,
                hyperplanes,
            },
            map,
        ))
    }

    /// The arrangement induced on hyperplane `h`, written in the coordinates of the
    /// kernel basis of its normal. Hyperplanes that meet `h` in the same subspace
    /// collapse to one, in order of first appearance.
    pub fn restrict(&self, h: usize) -> Result<Arrangement> {
        if h >= self.len() {
            return Err(Error::IndexOutOfRange(h));
        }
        if self.len() < 2 {
            return Err(Error::InvalidInput("restriction needs two hyperplanes".into()));
        }
        let basis = linalg::kernel(&[self.normal(h).to_vec()], self.dim);
        let mut induced: Vec<Vector> = Vec::new();
        for (i, hp) in self.hyperplanes.iter().enumerate() {
            if i == h {
                continue;
            }
            let v: Vector = basis.iter().map(|b| linalg::dot(&hp.normal, b)).collect();
            let Some(c) = canonical_normal(&v) else {
                continue;
            };
            if !induced.contains(&c) {
                induced.push(c);
            }
        }
        Arrangement::new(self.dim - 1, induced)
    }

    /// Product arrangement in `R^(n1+n2)`; hyperplanes of `self` come first.
    pub fn product(&self, other: &Arrangement) -> Result<Arrangement> {
        self.field
            .join(other.field)
            .ok_or_else(|| Error::FieldMismatch(format!("{} vs {}", self.field, other.field)))?;
        let n = self.dim + other.dim;
        let mut normals = Vec::with_capacity(self.len() + other.len());
        for h in &self.hyperplanes {
            let mut v = h.normal.clone();
            v.resize(n, Scalar::zero());
            normals.push(v);
        }
        for h in &other.hyperplanes {
            let mut v = vec![Scalar::zero(); self.dim];
            v.extend(h.normal.iter().cloned());
            normals.push(v);
        }
        Arrangement::new(n, normals)
    }

    /// Reorders hyperplanes by `order[new] = old`.
    pub fn permuted(&self, order: &[usize]) -> Result<Arrangement> {
        Arrangement::new(self.dim, order.iter().map(|&i| self.normal(i).to_vec()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ints(rows: &[&[i64]]) -> Vec<Vector> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect()
    }

    fn b2() -> Arrangement {
        Arrangement::new(2, ints(&[&[1, 0], &[0, 1], &[1, -1], &[1, 1]])).unwrap()
    }

    #[test]
    fn canonical_form() {
        let c = canonical_normal(&ints(&[&[0, -2, 4]])[0]).unwrap();
        assert_eq!(c, ints(&[&[0, 1, -2]])[0]);
        let half = vec![Scalar::ratio(1, 2), Scalar::ratio(-1, 3)];
        assert_eq!(canonical_normal(&half).unwrap(), ints(&[&[3, -2]])[0]);
        let s = Scalar::sqrt(5).unwrap();
        let v = vec![s.clone(), Scalar::from_int(5)];
        // (√5, 5) ~ (1, √5)
        assert_eq!(canonical_normal(&v).unwrap(), vec![Scalar::one(), s]);
    }

    #[test]
    fn rejects_duplicates_and_zero() {
        let e = Arrangement::new(2, ints(&[&[1, 1], &[-2, -2]]));
        assert_eq!(e, Err(Error::DuplicateHyperplane(0, 1)));
        let e = Arrangement::new(2, ints(&[&[1, 1], &[0, 0]]));
        assert_eq!(e, Err(Error::ZeroNormal(1)));
        let mixed = vec![
            vec![Scalar::sqrt(2).unwrap(), Scalar::one()],
            vec![Scalar::sqrt(3).unwrap(), Scalar::one()],
        ];
        assert!(matches!(Arrangement::new(2, mixed), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn delete_examples() {
        let (d, map) = b2().delete(&[1]).unwrap();
        assert_eq!(d.normals(), ints(&[&[1, 0], &[1, -1], &[1, 1]]));
        assert_eq!(map.old_to_new, vec![Some(0), None, Some(1), Some(2)]);
        let (same, _) = b2().delete(&[]).unwrap();
        assert_eq!(same, b2());
        let e12 = Arrangement::new(2, ints(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(e12.delete(&[1]).unwrap().0.normals(), ints(&[&[1, 0]]));
        assert_eq!(e12.delete(&[0, 1]).unwrap_err(), Error::DropAll);
    }

    #[test]
    fn projection() {
        let (_, map) = b2().delete(&[1]).unwrap();
        let t: Tope = "++++".parse().unwrap();
        assert_eq!(project_tope(&map, &t).to_string(), "+++");
        let t: Tope = "+-+-".parse().unwrap();
        assert_eq!(project_tope(&map, &t).to_string(), "++-");
    }

    #[test]
    fn restrict_examples() {
        let boolean = Arrangement::new(3, ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        let r = boolean.restrict(2).unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(r.len(), 2);
        assert_eq!(r.rank(), 2);

        let a2 = Arrangement::new(3, ints(&[&[1, -1, 0], &[1, 0, -1], &[0, 1, -1]])).unwrap();
        let r = a2.restrict(0).unwrap();
        assert_eq!(r.len(), 1);
        // oracle: both other normals together with e1-e2 span only a plane
        assert_eq!(a2.rank_of(&[0, 1, 2]), 2);

        let b3 = Arrangement::new(
            3,
            ints(&[
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
                &[1, -1, 0],
                &[1, 1, 0],
                &[1, 0, -1],
                &[1, 0, 1],
                &[0, 1, -1],
                &[0, 1, 1],
            ]),
        )
        .unwrap();
        let r = b3.restrict(2).unwrap();
        assert_eq!(r.len(), 4);
        let mut got = r.normals();
        got.sort();
        let mut want = ints(&[&[1, 0], &[0, 1], &[1, -1], &[1, 1]]);
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn product_padding() {
        let e = Arrangement::new(1, ints(&[&[1]])).unwrap();
        let p = e.product(&e).unwrap();
        assert_eq!(p.normals(), ints(&[&[1, 0], &[0, 1]]));
        let a2 = Arrangement::new(3, ints(&[&[1, -1, 0], &[1, 0, -1], &[0, 1, -1]])).unwrap();
        let p = a2.product(&e).unwrap();
        assert_eq!((p.dim(), p.len()), (4, 4));
        let q2 = Arrangement::new(2, vec![vec![Scalar::one(), Scalar::sqrt(2).unwrap()]]).unwrap();
        let q3 = Arrangement::new(2, vec![vec![Scalar::one(), Scalar::sqrt(3).unwrap()]]).unwrap();
        assert!(matches!(q2.product(&q3), Err(Error::FieldMismatch(_))));
        assert_eq!(q2.product(&e).unwrap().field(), FieldTag::Quadratic(2));
    }
}
