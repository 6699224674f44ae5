use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::ToPrimitive;

use crate::arrangement::Arrangement;
use crate::builder::BuildOptions;
use crate::catalogue::{generate, permutations, FamilySpec};
use crate::error::{Error, Result};
use crate::tope::{adjacency, Sign, Tope};

use super::search::{search_cycle, SearchOutcome};
use super::supersolvable::{any_tope_graph, supersolvable_cycle};
use super::HamiltonCertificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DnsMethod {
    /// Subgraph cycles spliced along a spanning tree of quadrilaterals.
    Glued,
    Supersolvable,
    Search,
}

#[derive(Debug, Clone)]
pub struct DnsOutcome {
    pub certificate: HamiltonCertificate,
    pub method: DnsMethod,
    /// Number of `A_{n-2}` subgraphs (gluing only).
    pub subgraphs: usize,
    /// Fewest pairwise edge-disjoint quadrilaterals available on a spanning-tree
    /// edge (gluing only).
    pub min_disjoint_quadrilaterals: Option<usize>,
}

/// A Hamiltonian cycle of `T(D_{n,s})`. From `n = 6` on, only the gluing
/// construction is used; smaller cases fall back to the supersolvable recursion
/// and then to search.
pub fn dns_cycle(n: usize, s: usize, opts: &BuildOptions, search_budget: u64) -> Result<DnsOutcome> {
    let spec = FamilySpec::Dns { n, s };
    let a = generate(spec)?;
    if n >= 6 {
        return glued(n, s, &a);
    }
    let mut first_error = None;
    if n >= 4 && s < n {
        match glued(n, s, &a) {
            Ok(out) => return Ok(out),
            Err(e) => first_error = Some(e),
        }
    }
    match supersolvable_cycle(&a, opts) {
        Ok(certificate) => {
            return Ok(DnsOutcome {
                certificate,
                method: DnsMethod::Supersolvable,
                subgraphs: 0,
                min_disjoint_quadrilaterals: None,
            })
        }
        Err(Error::NotSupersolvable) => {}
        Err(e) => return Err(e),
    }
    let g = any_tope_graph(&a, opts)?;
    match search_cycle(&g, search_budget) {
        SearchOutcome::Found(certificate) => Ok(DnsOutcome {
            certificate,
            method: DnsMethod::Search,
            subgraphs: 0,
            min_disjoint_quadrilaterals: None,
        }),
        _ => Err(first_error.unwrap_or(Error::NotSupersolvable)),
    }
}

/// A region of `B_n` in signed-permutation form, `delta` as a bit mask (bit `k`
/// set means `x_k < 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Region {
    sigma: Vec<usize>,
    delta: u32,
}

impl Region {
    fn last(&self) -> usize {
        *self.sigma.last().unwrap()
    }

    fn witness(&self) -> Vec<i64> {
        let n = self.sigma.len();
        let mut x = vec![0; n];
        for (pos, &k) in self.sigma.iter().enumerate() {
            let mag = (n - pos) as i64;
            x[k] = if self.delta >> k & 1 == 1 { -mag } else { mag };
        }
        x
    }
}

fn integer_normals(a: &Arrangement) -> Result<Vec<Vec<i64>>> {
    a.normals()
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| {
                    x.as_rational()
                        .filter(|r| r.is_integer())
                        .and_then(|r| r.numer().to_i64())
                        .ok_or_else(|| Error::InvalidInput("non-integral normal".into()))
                })
                .collect()
        })
        .collect()
}

fn tope_at(normals: &[Vec<i64>], x: &[i64]) -> Tope {
    let signs: Vec<Sign> = normals
        .iter()
        .map(|nv| {
            let v: i64 = nv.iter().zip(x).map(|(a, b)| a * b).sum();
            debug_assert!(v != 0);
            if v > 0 {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect();
    Tope::from_signs(&signs)
}

/// Permutation of `0..k` (largest coordinate first) for each tope of the cycle of
/// `A_{k-1}` in `R^k`.
fn pattern_cycle(k: usize) -> Result<Vec<Vec<usize>>> {
    let a = generate(FamilySpec::A { n: k })?;
    let c = supersolvable_cycle(&a, &BuildOptions::default())?;
    let pairs: Vec<(usize, usize)> = a
        .normals()
        .iter()
        .map(|v| {
            let i = v.iter().position(|x| x.is_positive()).unwrap();
            let j = v.iter().position(|x| x.is_negative()).unwrap();
            (i, j)
        })
        .collect();
    Ok(c.topes()
        .iter()
        .map(|t| {
            let mut above = vec![0usize; k];
            for (h, &(i, j)) in pairs.iter().enumerate() {
                // sign + means x_i > x_j
                if t.get(h) == Sign::Plus {
                    above[j] += 1;
                } else {
                    above[i] += 1;
                }
            }
            let mut perm = vec![0; k];
            for (coord, &pos) in above.iter().enumerate() {
                perm[pos] = coord;
            }
            perm
        })
        .collect())
}

/// Cycle edge `(x, y)` of one subgraph together with the crossing partners
/// `x'`, `y'` whose edge lies on the other subgraph's cycle.
type Quad = (usize, usize, usize, usize);

fn glued(n: usize, s: usize, a: &Arrangement) -> Result<DnsOutcome> {
    let normals = integer_normals(a)?;
    let mut regions: Vec<(Tope, Region)> = Vec::new();
    for sigma in permutations(n) {
        for delta in 0..1u32 << n {
            let r = Region {
                sigma: sigma.clone(),
                delta,
            };
            let j = r.last();
            // regions across a deleted H_{e_j} coincide; keep δ(j) = +
            if j >= s && delta >> j & 1 == 1 {
                continue;
            }
            regions.push((tope_at(&normals, &r.witness()), r));
        }
    }
    regions.sort_by(|x, y| x.0.cmp(&y.0));
    let total = regions.len();
    let by_tope: HashMap<&Tope, usize> = regions.iter().enumerate().map(|(i, (t, _))| (t, i)).collect();
    if by_tope.len() != total {
        return Err(Error::InvalidGraph(
            "signed permutations do not give distinct topes".into(),
        ));
    }
    let by_region: HashMap<&Region, usize> = regions.iter().enumerate().map(|(i, (_, r))| (r, i)).collect();

    // subgraphs V_{δ,j}, numbered by their smallest tope
    let mut sub_ids: HashMap<(usize, u32), usize> = HashMap::new();
    let mut sub_of = vec![0usize; total];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (v, (_, r)) in regions.iter().enumerate() {
        let key = (r.last(), r.delta);
        let id = *sub_ids.entry(key).or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        sub_of[v] = id;
        members[id].push(v);
    }

    // one common cycle, relabelled into every subgraph by the increasing map
    let pattern = pattern_cycle(n - 1)?;
    let mut nxt = vec![usize::MAX; total];
    let mut prv = vec![usize::MAX; total];
    for (&(j, delta), &id) in &sub_ids {
        let phi: Vec<usize> = (0..n).filter(|&x| x != j).collect();
        let order: Vec<usize> = pattern
            .iter()
            .map(|p| {
                let mut sigma: Vec<usize> = p.iter().map(|&x| phi[x]).collect();
                sigma.push(j);
                by_region[&Region { sigma, delta }]
            })
            .collect();
        if order.len() != members[id].len() {
            return Err(Error::InvalidGraph("pattern cycle does not cover a subgraph".into()));
        }
        for k in 0..order.len() {
            let (x, y) = (order[k], order[(k + 1) % order.len()]);
            if adjacency(&regions[x].0, &regions[y].0)?.is_none() {
                return Err(Error::InvalidGraph("pattern step is not an edge".into()));
            }
            nxt[x] = y;
            prv[y] = x;
        }
    }
    drop(by_region);

    // crossing neighbours, found by single sign flips
    let m = a.len();
    let cross: Vec<Vec<usize>> = (0..total)
        .map(|v| {
            (0..m)
                .filter_map(|h| by_tope.get(&regions[v].0.flipped(h)).copied())
                .filter(|&w| sub_of[w] != sub_of[v])
                .collect()
        })
        .collect();
    drop(by_tope);

    let on_cycle = |x: usize, y: usize| nxt[x] == y || prv[x] == y;
    let mut candidates: HashMap<(usize, usize), Vec<Quad>> = HashMap::new();
    for x in 0..total {
        let y = nxt[x];
        for &x2 in &cross[x] {
            for &y2 in &cross[y] {
                if sub_of[x2] != sub_of[y2] || !on_cycle(x2, y2) {
                    continue;
                }
                let (p, q) = (sub_of[x], sub_of[x2]);
                if p > q {
                    continue;
                }
                let quad = if x < y { (x, y, x2, y2) } else { (y, x, y2, x2) };
                candidates.entry((p, q)).or_default().push(quad);
            }
        }
    }
    for list in candidates.values_mut() {
        list.sort_unstable();
        list.dedup();
    }

    // spanning tree of the incidence graph, breadth first from the all-+ tope
    let subs = members.len();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); subs];
    for &(p, q) in candidates.keys() {
        incident[p].push(q);
        incident[q].push(p);
    }
    for l in incident.iter_mut() {
        l.sort_unstable();
    }
    let root_vertex = 0;
    debug_assert_eq!(regions[0].0.minus_count(), 0);
    let root = sub_of[root_vertex];
    let mut parent = vec![usize::MAX; subs];
    parent[root] = root;
    let mut tree: Vec<(usize, usize)> = Vec::new();
    let mut queue = VecDeque::from([root]);
    while let Some(p) = queue.pop_front() {
        for &c in &incident[p] {
            if parent[c] == usize::MAX {
                parent[c] = p;
                tree.push((p, c));
                queue.push_back(c);
            }
        }
    }
    if tree.len() + 1 != subs {
        return Err(Error::InvalidGraph("subgraph incidence graph is disconnected".into()));
    }

    // reserve one quadrilateral per tree edge, never reusing a cycle edge
    let edge_key = |x: usize, y: usize| (x.min(y), x.max(y));
    let mut reserved: HashSet<(usize, usize)> = HashSet::new();
    let mut chosen: Vec<(usize, usize, Quad)> = Vec::with_capacity(tree.len());
    let mut min_disjoint = usize::MAX;
    for &(p, c) in &tree {
        let list = &candidates[&(p.min(c), p.max(c))];
        min_disjoint = min_disjoint.min(disjoint_count(list));
        let pick = list
            .iter()
            .find(|&&(x, y, x2, y2)| !reserved.contains(&edge_key(x, y)) && !reserved.contains(&edge_key(x2, y2)));
        let &(x, y, x2, y2) = pick.ok_or(Error::QuadrilateralExhausted(p, c))?;
        reserved.insert(edge_key(x, y));
        reserved.insert(edge_key(x2, y2));
        chosen.push((p, c, (x, y, x2, y2)));
    }
    debug_assert_eq!(reserved.len(), 2 * chosen.len());

    for (p, c, (x, y, x2, y2)) in chosen {
        // orient so that (a1, b1) lies in the parent's component, a2/b2 in the child
        let ((mut a1, mut b1), (mut a2, mut b2)) = if sub_of[x] == p {
            ((x, y), (x2, y2))
        } else {
            ((x2, y2), (x, y))
        };
        debug_assert_eq!(sub_of[a2], c);
        if nxt[a1] != b1 {
            std::mem::swap(&mut a1, &mut b1);
            std::mem::swap(&mut a2, &mut b2);
        }
        if nxt[a1] != b1 {
            return Err(Error::EdgeNotInCycle);
        }
        if nxt[b2] != a2 {
            for &v in &members[c] {
                std::mem::swap(&mut nxt[v], &mut prv[v]);
            }
        }
        if nxt[b2] != a2 {
            return Err(Error::EdgeNotInCycle);
        }
        nxt[a1] = a2;
        prv[a2] = a1;
        nxt[b2] = b1;
        prv[b1] = b2;
    }

    let mut walk = Vec::with_capacity(total);
    let mut v = root_vertex;
    loop {
        walk.push(regions[v].0.clone());
        v = nxt[v];
        if v == root_vertex || walk.len() > total {
            break;
        }
    }
    if walk.len() != total {
        return Err(Error::InvalidGraph(format!(
            "spliced walk has {} of {total} topes",
            walk.len()
        )));
    }
    Ok(DnsOutcome {
        certificate: HamiltonCertificate::from_topes(m, &walk)?,
        method: DnsMethod::Glued,
        subgraphs: subs,
        min_disjoint_quadrilaterals: Some(min_disjoint),
    })
}

/// Size of a greedy family of quadrilaterals sharing no cycle edge.
fn disjoint_count(list: &[Quad]) -> usize {
    let mut used: HashSet<(usize, usize)> = HashSet::new();
    let mut count = 0;
    for &(x, y, x2, y2) in list {
        let e1 = (x.min(y), x.max(y));
        let e2 = (x2.min(y2), x2.max(y2));
        if !used.contains(&e1) && !used.contains(&e2) {
            used.insert(e1);
            used.insert(e2);
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamilton::verify_certificate;

    #[test]
    fn pattern_is_a_cycle_of_permutations() {
        let p = pattern_cycle(3).unwrap();
        assert_eq!(p.len(), 6);
        for k in 0..6 {
            let (x, y) = (&p[k], &p[(k + 1) % 6]);
            let diff: Vec<usize> = (0..3).filter(|&i| x[i] != y[i]).collect();
            assert_eq!(diff.len(), 2);
            assert_eq!(diff[1], diff[0] + 1);
        }
    }

    #[test]
    fn small_cases() {
        for (n, s) in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)] {
            let out = dns_cycle(n, s, &BuildOptions::default(), 1_000_000).unwrap();
            let a = generate(FamilySpec::Dns { n, s }).unwrap();
            let g = any_tope_graph(&a, &BuildOptions::default()).unwrap();
            assert_eq!(
                verify_certificate(&g, &out.certificate),
                Ok(()),
                "D({n},{s}) via {:?}",
                out.method
            );
        }
    }
}
