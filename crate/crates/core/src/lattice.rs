//! Intersection lattices, modular elements and supersolvable decompositions.

use std::collections::HashMap;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::linalg::{self, Vector};

/// An intersection subspace, identified by the full set of hyperplanes containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    generators: Vec<usize>,
    rank: usize,
    /// RREF of the defining equations; canonical for the subspace.
    key: Vec<Vector>,
    pivots: Vec<usize>,
    subspace: Vec<Vector>,
}

impl Flat {
    /// Sorted indices of every hyperplane containing the subspace.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Codimension of the subspace.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn key(&self) -> &[Vector] {
        &self.key
    }

    /// A basis of the subspace itself.
    pub fn subspace(&self) -> &[Vector] {
        &self.subspace
    }

    pub fn contains_hyperplane(&self, h: usize) -> bool {
        self.generators.binary_search(&h).is_ok()
    }
}

#[derive(Debug, Clone)]
pub struct Lattice {
    dim: usize,
    normals: Vec<Vector>,
    flats: Vec<Flat>,
    /// `levels[k]` is the id range of the rank-`k` flats.
    levels: Vec<std::ops::Range<usize>>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    by_generators: HashMap<Vec<usize>, usize>,
}

pub const DEFAULT_FLAT_LIMIT: usize = 1_000_000;

/// Builds the lattice rank by rank: the covers of a flat are the closures of its
/// generators plus one more hyperplane.
pub fn build_lattice(a: &Arrangement, limit: usize) -> Result<Lattice> {
    let dim = a.dim();
    let normals = a.normals();
    let bottom = Flat {
        generators: Vec::new(),
        rank: 0,
        key: Vec::new(),
        pivots: Vec::new(),
        subspace: linalg::kernel(&[], dim),
    };
    let mut flats = vec![bottom];
    let mut levels = Vec::new();
    levels.push(0..1);
    let mut up: Vec<Vec<usize>> = vec![Vec::new()];
    let mut down: Vec<Vec<usize>> = vec![Vec::new()];
    let mut by_generators = HashMap::from([(Vec::new(), 0)]);
    loop {
        let current = levels.last().unwrap().clone();
        let start = flats.len();
        for x in current {
            let mut covered: Vec<usize> = Vec::new();
            for h in 0..normals.len() {
                if flats[x].contains_hyperplane(h) || covered.iter().any(|&c| flats[c].contains_hyperplane(h)) {
                    continue;
                }
                let mut rows = flats[x].key.clone();
                rows.push(normals[h].clone());
                let (key, pivots) = linalg::rref(&rows, dim);
                let generators: Vec<usize> = (0..normals.len())
                    .filter(|&k| linalg::in_span(&normals[k], &key, &pivots))
                    .collect();
                let id = match by_generators.get(&generators) {
                    Some(&id) => id,
                    None => {
                        let id = flats.len();
                        if id >= limit {
                            return Err(Error::SizeLimit {
                                what: "intersection lattice",
                                limit,
                            });
                        }
                        by_generators.insert(generators.clone(), id);
                        flats.push(Flat {
                            rank: pivots.len(),
                            subspace: linalg::kernel(&key, dim),
                            generators,
                            key,
                            pivots,
                        });
                        up.push(Vec::new());
                        down.push(Vec::new());
                        id
                    }
                };
                covered.push(id);
                up[x].push(id);
                down[id].push(x);
            }
        }
        if flats.len() == start {
            break;
        }
        // canonical order within a rank: by generator set
        let mut order: Vec<usize> = (start..flats.len()).collect();
        order.sort_by(|&i, &j| flats[i].generators.cmp(&flats[j].generators));
        let mut relabel: Vec<usize> = (0..flats.len()).collect();
        for (k, &old) in order.iter().enumerate() {
            relabel[old] = start + k;
        }
        let mut moved: Vec<Option<Flat>> = flats.drain(start..).map(Some).collect();
        let mut moved_down: Vec<Option<Vec<usize>>> = down.drain(start..).map(Some).collect();
        for &old in &order {
            flats.push(moved[old - start].take().unwrap());
            down.push(moved_down[old - start].take().unwrap());
        }
        up.truncate(start);
        up.resize(flats.len(), Vec::new());
        for list in up.iter_mut() {
            for id in list.iter_mut() {
                *id = relabel[*id];
            }
            list.sort_unstable();
        }
        for (k, f) in flats.iter().enumerate().skip(start) {
            by_generators.insert(f.generators.clone(), k);
        }
        levels.push(start..flats.len());
    }
    Ok(Lattice {
        dim,
        normals,
        flats,
        levels,
        up,
        down,
        by_generators,
    })
}

impl Lattice {
    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, id: usize) -> &Flat {
        &self.flats[id]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    pub fn level(&self, rank: usize) -> std::ops::Range<usize> {
        self.levels[rank].clone()
    }

    /// Number of flats of each rank.
    pub fn rank_counts(&self) -> Vec<usize> {
        self.levels.iter().map(|r| r.len()).collect()
    }

    /// Flats covering `id`.
    pub fn covers_up(&self, id: usize) -> &[usize] {
        &self.up[id]
    }

    /// Flats covered by `id`.
    pub fn covers_down(&self, id: usize) -> &[usize] {
        &self.down[id]
    }

    pub fn find(&self, generators: &[usize]) -> Option<usize> {
        self.by_generators.get(generators).copied()
    }

    /// `x ≤ y` in reverse inclusion of subspaces.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.flats[x]
            .generators
            .iter()
            .all(|&h| self.flats[y].contains_hyperplane(h))
    }

    /// The flat spanned by a set of hyperplanes.
    pub fn closure(&self, hyperplanes: &[usize]) -> usize {
        let rows: Vec<Vector> = hyperplanes.iter().map(|&h| self.normals[h].clone()).collect();
        let (key, pivots) = linalg::rref(&rows, self.dim);
        let gens: Vec<usize> = (0..self.normals.len())
            .filter(|&k| linalg::in_span(&self.normals[k], &key, &pivots))
            .collect();
        self.by_generators[&gens]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        let mut gens = self.flats[x].generators.clone();
        gens.extend_from_slice(&self.flats[y].generators);
        gens.sort_unstable();
        gens.dedup();
        self.closure(&gens)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        let common: Vec<usize> = self.flats[x]
            .generators
            .iter()
            .copied()
            .filter(|&h| self.flats[y].contains_hyperplane(h))
            .collect();
        self.closure(&common)
    }

    fn join_rank(&self, x: usize, y: usize) -> usize {
        let mut rows = self.flats[x].key.clone();
        rows.extend(self.flats[y].key.iter().cloned());
        linalg::rank(&rows, self.dim)
    }

    fn meet_rank(&self, x: usize, y: usize) -> usize {
        let rows: Vec<Vector> = self.flats[x]
            .generators
            .iter()
            .filter(|&&h| self.flats[y].contains_hyperplane(h))
            .map(|&h| self.normals[h].clone())
            .collect();
        linalg::rank(&rows, self.dim)
    }

    /// The rank identity for `x` against every flat below `top`.
    fn is_modular_below(&self, x: usize, top: usize) -> bool {
        let rx = self.flats[x].rank;
        (0..self.flats.len())
            .filter(|&w| top == self.top() || self.leq(w, top))
            .all(|w| self.join_rank(x, w) + self.meet_rank(x, w) == rx + self.flats[w].rank)
    }
}

pub fn is_modular(l: &Lattice, x: usize) -> bool {
    l.is_modular_below(x, l.top())
}

/// One step of a supersolvable decomposition. Indices refer to the original
/// arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionLevel {
    pub a0: Vec<usize>,
    pub a1: Vec<usize>,
}

/// Levels from the full arrangement downwards; the last `a0` has rank two.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SupersolvableDecomposition {
    pub levels: Vec<DecompositionLevel>,
}

/// Searches modular coatoms of `[0̂, X]` with backtracking, starting at `X = 1̂`.
/// Among candidates the largest `A0` comes first, then the lexicographically
/// smallest.
pub fn supersolvable_decomposition(a: &Arrangement) -> Result<Option<SupersolvableDecomposition>> {
    let l = build_lattice(a, DEFAULT_FLAT_LIMIT)?;
    Ok(decompose_lattice(&l))
}

pub fn decompose_lattice(l: &Lattice) -> Option<SupersolvableDecomposition> {
    let mut levels = Vec::new();
    if descend(l, l.top(), &mut levels) {
        Some(SupersolvableDecomposition { levels })
    } else {
        None
    }
}

fn descend(l: &Lattice, x: usize, levels: &mut Vec<DecompositionLevel>) -> bool {
    if l.flat(x).rank <= 2 {
        return true;
    }
    let all = l.flat(x).generators.clone();
    let mut candidates: Vec<usize> = l
        .covers_down(x)
        .iter()
        .copied()
        .filter(|&c| l.is_modular_below(c, x))
        .collect();
    candidates.sort_by(|&p, &q| {
        let (gp, gq) = (&l.flat(p).generators, &l.flat(q).generators);
        gq.len().cmp(&gp.len()).then_with(|| gp.cmp(gq))
    });
    for c in candidates {
        let a0 = l.flat(c).generators.clone();
        let a1: Vec<usize> = all.iter().copied().filter(|h| a0.binary_search(h).is_err()).collect();
        if a1.is_empty() || !closure_condition(l, &a0, &a1) {
            continue;
        }
        levels.push(DecompositionLevel { a0, a1 });
        if descend(l, c, levels) {
            return true;
        }
        levels.pop();
    }
    false
}

fn closure_condition(l: &Lattice, a0: &[usize], a1: &[usize]) -> bool {
    a1.iter().enumerate().all(|(i, &p)| {
        a1[i + 1..].iter().all(|&q| {
            let line = l.closure(&[p, q]);
            a0.iter().any(|&h| l.flat(line).contains_hyperplane(h))
        })
    })
}

/// Re-checks a decomposition with plain linear algebra: ranks drop by one per
/// level, the parts partition the previous `A0`, and for every pair in `A1` some
/// hyperplane of `A0` contains their intersection.
pub fn validate_decomposition(a: &Arrangement, d: &SupersolvableDecomposition) -> bool {
    let normals = a.normals();
    let rank_of = |s: &[usize]| {
        let rows: Vec<Vector> = s.iter().map(|&h| normals[h].clone()).collect();
        linalg::rank(&rows, a.dim())
    };
    let mut current: Vec<usize> = (0..a.len()).collect();
    let mut r = rank_of(&current);
    for level in &d.levels {
        let mut union: Vec<usize> = level.a0.iter().chain(&level.a1).copied().collect();
        union.sort_unstable();
        let before = union.len();
        union.dedup();
        if union != current || before != union.len() || level.a1.is_empty() {
            return false;
        }
        if rank_of(&level.a0) + 1 != r {
            return false;
        }
        for (i, &p) in level.a1.iter().enumerate() {
            for &q in &level.a1[i + 1..] {
                let rows = vec![normals[p].clone(), normals[q].clone()];
                let (basis, pivots) = linalg::rref(&rows, a.dim());
                if !level.a0.iter().any(|&h| linalg::in_span(&normals[h], &basis, &pivots)) {
                    return false;
                }
            }
        }
        current = {
            let mut c = level.a0.clone();
            c.sort_unstable();
            c
        };
        r -= 1;
    }
    r <= 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn arr(rows: &[&[i64]]) -> Arrangement {
        let normals = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect();
        Arrangement::new(rows[0].len(), normals).unwrap()
    }

    fn near_pencil(m: i64) -> Arrangement {
        let mut rows: Vec<Vec<i64>> = vec![vec![0, 1, 0]];
        rows.extend((1..=m - 2).map(|k| vec![0, 1, -k]));
        rows.push(vec![1, 0, 0]);
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        arr(&refs)
    }

    #[test]
    fn boolean_and_a2() {
        let l = build_lattice(&arr(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 100).unwrap();
        assert_eq!(l.rank_counts(), vec![1, 3, 3, 1]);
        let l = build_lattice(&arr(&[&[1, -1, 0], &[0, 1, -1], &[1, 0, -1]]), 100).unwrap();
        assert_eq!(l.rank_counts(), vec![1, 3, 1]);
        assert_eq!(l.flat(l.top()).generators(), &[0, 1, 2]);
        assert_eq!(l.flat(l.top()).subspace().len(), 1);
    }

    #[test]
    fn near_pencil_modular_line() {
        let a = near_pencil(6);
        let l = build_lattice(&a, 1000).unwrap();
        // pencil line plus 5 lines meeting the extra plane
        assert_eq!(l.rank_counts(), vec![1, 6, 6, 1]);
        let pencil = l.find(&[0, 1, 2, 3, 4]).unwrap();
        assert!(is_modular(&l, pencil));
        assert!(is_modular(&l, l.bottom()) && is_modular(&l, l.top()));
        let d = decompose_lattice(&l).unwrap();
        assert_eq!(
            d.levels,
            vec![DecompositionLevel {
                a0: vec![0, 1, 2, 3, 4],
                a1: vec![5]
            }]
        );
        assert!(validate_decomposition(&a, &d));
    }

    #[test]
    fn rank_two_has_empty_chain() {
        let a = arr(&[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]);
        let d = supersolvable_decomposition(&a).unwrap().unwrap();
        assert!(d.levels.is_empty());
    }

    #[test]
    fn covers_and_order() {
        let l = build_lattice(&arr(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]), 100).unwrap();
        for x in 0..l.len() {
            for &y in l.covers_up(x) {
                assert!(l.covers_down(y).contains(&x));
                assert_eq!(l.flat(y).rank(), l.flat(x).rank() + 1);
                assert!(l.leq(x, y));
            }
        }
        let e1 = l.find(&[0]).unwrap();
        let e2 = l.find(&[1]).unwrap();
        assert_eq!(l.flat(l.join(e1, e2)).generators(), &[0, 1, 3]);
        assert_eq!(l.meet(e1, e2), l.bottom());
    }

    #[test]
    fn size_limit() {
        let a = arr(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(matches!(build_lattice(&a, 5), Err(Error::SizeLimit { .. })));
    }
}
