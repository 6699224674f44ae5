//! Tope graphs of simplicial arrangements by walking across walls.
//!
//! A region is described by its wall roots together with the expansion of every
//! root that is positive on the region in the basis of those walls. All entries of
//! that table are non-negative and the walls themselves are the unit rows. Crossing
//! a wall only needs the rank-two subsystems spanned by the crossed wall and one
//! other wall, so each step is a local rebase of the table.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::graph::TopeGraph;
use crate::linalg::{self, Vector};
use crate::lp;
use crate::scalar::Scalar;
use crate::tope::Tope;

/// Tuning knobs for [`build_tope_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Seed of the generic directions used to locate the first region.
    pub seed: u64,
    /// Abort with [`Error::SizeLimit`] beyond this many topes.
    pub max_topes: usize,
    /// Fresh directions tried before giving up on a degenerate one.
    pub direction_attempts: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            seed: 0,
            max_topes: 10_000_000,
            direction_attempts: 32,
        }
    }
}

/// One root per hyperplane, all positive on a common base region.
#[derive(Debug, Clone)]
pub struct PositiveSystem {
    dim: usize,
    rank: usize,
    roots: Vec<Vector>,
    /// Roots in coordinates of their own span (length `rank`).
    reduced: Vec<Vector>,
    /// A point where every root is strictly positive.
    interior: Vector,
}

impl PositiveSystem {
    pub fn new(dim: usize, roots: Vec<Vector>) -> Result<PositiveSystem> {
        if roots.is_empty() {
            return Err(Error::Empty);
        }
        for (i, r) in roots.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::DimensionMismatch(format!("root {i} has length {}", r.len())));
            }
            if linalg::is_zero(r) {
                return Err(Error::ZeroNormal(i));
            }
            if let Some(j) = (0..i).find(|&j| linalg::proportional(&roots[j], r)) {
                return Err(Error::DuplicateHyperplane(j, i));
            }
        }
        let interior = lp::strictly_positive_point(dim, &roots).ok_or(Error::EmptyBaseRegion)?;
        Ok(Self::assemble(dim, roots, interior))
    }

    fn assemble(dim: usize, roots: Vec<Vector>, interior: Vector) -> PositiveSystem {
        let (_, pivots) = linalg::rref(&roots, dim);
        let reduced = roots
            .iter()
            .map(|r| pivots.iter().map(|&p| r[p].clone()).collect())
            .collect();
        PositiveSystem {
            dim,
            rank: pivots.len(),
            roots,
            reduced,
            interior,
        }
    }

    /// Orients the normals of `a` towards a generic point chosen from `seed`.
    /// Returns the system and the orientation: `orientation[k] = -` means root `k`
    /// is the negated normal.
    pub fn from_arrangement(a: &Arrangement, seed: u64) -> Result<(PositiveSystem, Tope)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_7090);
        let mut bound = 8i64;
        for _ in 0..1000 {
            let x: Vector = (0..a.dim())
                .map(|_| Scalar::from_int(rng.gen_range(-bound..=bound)))
                .collect();
            if let Some(orientation) = a.tope_of_point(&x) {
                let roots = a
                    .normals()
                    .into_iter()
                    .zip(orientation.signs())
                    .map(|(n, s)| match s {
                        crate::tope::Sign::Plus => n,
                        crate::tope::Sign::Minus => n.iter().map(|v| -v).collect(),
                    })
                    .collect();
                return Ok((Self::assemble(a.dim(), roots, x), orientation));
            }
            bound = (bound * 2).min(1 << 40);
        }
        Err(Error::DegenerateDirection(1000))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn interior(&self) -> &[Scalar] {
        &self.interior
    }
}

/// The state of the walk at one region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionFrame {
    tope: Tope,
    /// `walls[j]` is the root id of the `j`-th wall.
    walls: Vec<usize>,
    /// Row `k` (length `rank`) expands `tope[k]·α_k` in the wall basis.
    expansion: Vec<Scalar>,
    rank: usize,
}

impl RegionFrame {
    pub fn tope(&self) -> &Tope {
        &self.tope
    }

    pub fn walls(&self) -> &[usize] {
        &self.walls
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn row(&self, root: usize) -> &[Scalar] {
        &self.expansion[root * self.rank..(root + 1) * self.rank]
    }

    pub fn is_unit_row(&self, root: usize) -> bool {
        let row = self.row(root);
        row.iter().filter(|x| !x.is_zero()).count() == 1 && row.iter().any(Scalar::is_one)
    }

    /// Non-negative entries, and exactly the wall rows are unit vectors.
    pub fn check(&self) -> Result<()> {
        if let Some(k) = (0..self.tope.len()).find(|&k| self.row(k).iter().any(Scalar::is_negative)) {
            return Err(Error::NotSimplicial(format!(
                "root {k} has a negative coordinate at region {}",
                self.tope
            )));
        }
        let units = (0..self.tope.len()).filter(|&k| self.is_unit_row(k)).count();
        let walls_are_units = self
            .walls
            .iter()
            .enumerate()
            .all(|(j, &w)| self.row(w)[j].is_one() && self.is_unit_row(w));
        if units != self.rank || !walls_are_units {
            return Err(Error::NotSimplicial(format!(
                "{units} unit rows for rank {} at region {}",
                self.rank, self.tope
            )));
        }
        Ok(())
    }
}

/// Locates the base region: one extreme ray of the cone of roots per level, each
/// found by maximizing a generic direction over the roots normalized against an
/// interior functional, then descending into the tangent cone at that ray.
pub fn initial_region(p: &PositiveSystem, opts: &BuildOptions) -> Result<RegionFrame> {
    for attempt in 0..opts.direction_attempts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(attempt as u64));
        match find_walls(p, &mut rng) {
            Some(walls) => return frame_from_walls(p, walls),
            None => continue,
        }
    }
    Err(Error::DegenerateDirection(opts.direction_attempts))
}

/// `None` when the direction tied between two distinct candidates.
fn find_walls(p: &PositiveSystem, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    let mut gens: Vec<(usize, Vector)> = p.roots.iter().cloned().enumerate().collect();
    let mut functional = p.interior.clone();
    let mut walls = Vec::with_capacity(p.rank);
    for _ in 0..p.rank {
        // normalize against the functional; proportional generators keep the farthest
        let mut points: Vec<(usize, Vector, Scalar)> = Vec::new();
        let mut by_point: HashMap<Vector, usize> = HashMap::new();
        for (id, g) in &gens {
            let h = linalg::dot(g, &functional);
            debug_assert!(h.is_positive());
            let beta = linalg::scale(g, &h.recip());
            match by_point.get(&beta) {
                Some(&k) if points[k].2 >= h => {}
                Some(&k) => points[k] = (*id, beta, h),
                None => {
                    by_point.insert(beta.clone(), points.len());
                    points.push((*id, beta, h));
                }
            }
        }
        if points.is_empty() {
            return None;
        }
        let direction: Vector = (0..p.dim)
            .map(|_| Scalar::from_int(rng.gen_range(-1000..=1000)))
            .collect();
        let values: Vec<Scalar> = points.iter().map(|(_, b, _)| linalg::dot(&direction, b)).collect();
        let best = values.iter().max().unwrap();
        let winners: Vec<usize> = (0..points.len()).filter(|&k| values[k] == *best).collect();
        if winners.len() > 1 {
            return None;
        }
        let (id, vertex, _) = points.swap_remove(winners[0]);
        walls.push(id);
        gens = points
            .into_iter()
            .map(|(k, b, _)| (k, linalg::sub(&b, &vertex)))
            .collect();
        functional = direction.iter().map(|x| -x).collect();
    }
    Some(walls)
}

fn frame_from_walls(p: &PositiveSystem, walls: Vec<usize>) -> Result<RegionFrame> {
    let basis: Vec<Vector> = walls.iter().map(|&w| p.reduced[w].clone()).collect();
    let inv = linalg::inverse(&basis).ok_or(Error::NotSimplicialCone)?;
    let mut expansion = Vec::with_capacity(p.len() * p.rank);
    for r in &p.reduced {
        let coords = linalg::vec_mat(r, &inv);
        if coords.iter().any(Scalar::is_negative) {
            return Err(Error::NotSimplicialCone);
        }
        expansion.extend(coords);
    }
    let frame = RegionFrame {
        tope: Tope::all_plus(p.len()),
        walls,
        expansion,
        rank: p.rank,
    };
    frame.check().map_err(|_| Error::NotSimplicialCone)?;
    Ok(frame)
}

/// The root generated by walls `i` and `j` whose direction is closest to wall `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosestRoot {
    pub root: usize,
    /// `entry_i / entry_j`.
    pub quotient: Scalar,
    /// `entry_j`.
    pub denominator: Scalar,
}

/// Among rows supported exactly on walls `{i, j}`, the one maximizing
/// `entry_i / entry_j`.
pub fn closest_root(f: &RegionFrame, i: usize, j: usize) -> Result<Option<ClosestRoot>> {
    assert!(i != j && i < f.rank && j < f.rank);
    let mut best: Option<ClosestRoot> = None;
    for k in 0..f.tope.len() {
        let row = f.row(k);
        if !row[i].is_positive() || !row[j].is_positive() {
            continue;
        }
        if row.iter().enumerate().any(|(l, x)| l != i && l != j && !x.is_zero()) {
            continue;
        }
        let q = &row[i] / &row[j];
        match &best {
            Some(b) if b.quotient == q => return Err(Error::TieDetected),
            Some(b) if b.quotient > q => {}
            _ => {
                best = Some(ClosestRoot {
                    root: k,
                    quotient: q,
                    denominator: row[j].clone(),
                })
            }
        }
    }
    Ok(best)
}

/// The frame of the neighbouring region across wall `i`.
pub fn cross_wall(f: &RegionFrame, i: usize) -> Result<RegionFrame> {
    let r = f.rank;
    let sep = f.walls[i];
    let mut found: Vec<(usize, ClosestRoot)> = Vec::new();
    for j in (0..r).filter(|&j| j != i) {
        if let Some(c) = closest_root(f, i, j)? {
            found.push((j, c));
        }
    }
    let m = f.tope.len();
    let mut expansion = Vec::with_capacity(m * r);
    for k in 0..m {
        let row = f.row(k);
        if k == sep {
            expansion.extend_from_slice(row);
            continue;
        }
        let start = expansion.len();
        expansion.extend_from_slice(row);
        let new_row = &mut expansion[start..];
        let mut xi = -&row[i];
        for (j, c) in &found {
            let xj = &row[*j];
            if xj.is_zero() {
                continue;
            }
            xi = &xi + &(&c.quotient * xj);
            new_row[*j] = xj / &c.denominator;
        }
        new_row[i] = xi;
    }
    let mut walls = f.walls.clone();
    for (j, c) in &found {
        walls[*j] = c.root;
    }
    let next = RegionFrame {
        tope: f.tope.flipped(sep),
        walls,
        expansion,
        rank: r,
    };
    next.check()?;
    Ok(next)
}

/// Explores all regions from the base region, depth first. Topes are relative to
/// the positive system (the base region is all `+`).
pub fn build_tope_graph(p: &PositiveSystem, opts: &BuildOptions) -> Result<TopeGraph> {
    let init = initial_region(p, opts)?;
    let r = p.rank;
    let mut topes = vec![init.tope.clone()];
    let mut index: HashMap<Tope, usize> = HashMap::from([(init.tope.clone(), 0)]);
    let mut wall_sets: Vec<Vec<usize>> = Vec::new();
    if cfg!(debug_assertions) {
        wall_sets.push(sorted(&init.walls));
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut stack: Vec<(RegionFrame, usize, Vec<usize>)> = vec![(init, 0, (0..r).rev().collect())];
    while let Some((frame, id, mut pending)) = stack.pop() {
        let Some(i) = pending.pop() else { continue };
        let next = cross_wall(&frame, i)?;
        if !pending.is_empty() {
            stack.push((frame, id, pending));
        }
        match index.get(&next.tope) {
            Some(&known) => {
                if cfg!(debug_assertions) && wall_sets[known] != sorted(&next.walls) {
                    return Err(Error::NotSimplicial(format!(
                        "region {} reached with two different wall sets",
                        next.tope
                    )));
                }
                if id < known {
                    pairs.push((id, known));
                } else {
                    pairs.push((known, id));
                }
            }
            None => {
                let new_id = topes.len();
                if new_id >= opts.max_topes {
                    return Err(Error::SizeLimit {
                        what: "tope graph",
                        limit: opts.max_topes,
                    });
                }
                topes.push(next.tope.clone());
                index.insert(next.tope.clone(), new_id);
                if cfg!(debug_assertions) {
                    wall_sets.push(sorted(&next.walls));
                }
                pairs.push((id.min(new_id), id.max(new_id)));
                let rest: Vec<usize> = (0..r).rev().filter(|&j| j != i).collect();
                if !rest.is_empty() {
                    stack.push((next, new_id, rest));
                }
            }
        }
    }
    drop(index);
    pairs.sort_unstable();
    pairs.dedup();
    TopeGraph::new(p.len(), topes, &pairs)
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

/// Tope graph of an arrangement in its own orientation, via the region walk.
pub fn arrangement_tope_graph(a: &Arrangement, opts: &BuildOptions) -> Result<TopeGraph> {
    let (p, orientation) = PositiveSystem::from_arrangement(a, opts.seed)?;
    let g = build_tope_graph(&p, opts)?;
    Ok(g.reoriented(&orientation))
}
