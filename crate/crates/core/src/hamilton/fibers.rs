use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::TopeGraph;
use crate::tope::Tope;

/// The topes over one region of a subarrangement, in path order from `ε+` to `ε−`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    /// Restriction to the subarrangement's hyperplanes, in the order given.
    pub base_tope: Tope,
    /// Tope ids of the graph.
    pub members: Vec<usize>,
}

impl Fiber {
    pub fn eps_plus(&self) -> usize {
        self.members[0]
    }

    pub fn eps_minus(&self) -> usize {
        *self.members.last().unwrap()
    }
}

/// Fibers as unoriented paths, each starting at its smaller-id endpoint and sorted
/// by base tope.
pub(crate) fn fiber_paths(g: &TopeGraph, a0: &[usize], a1: &[usize]) -> Result<Vec<Fiber>> {
    let mut all: Vec<usize> = a0.iter().chain(a1).copied().collect();
    all.sort_unstable();
    if all != (0..g.m()).collect::<Vec<_>>() {
        return Err(Error::InvalidInput(format!(
            "split {a0:?} / {a1:?} does not partition {} hyperplanes",
            g.m()
        )));
    }
    let mut in_a1 = vec![false; g.m()];
    for &h in a1 {
        in_a1[h] = true;
    }
    let mut groups: HashMap<Tope, Vec<usize>> = HashMap::new();
    for (id, t) in g.topes().iter().enumerate() {
        groups.entry(t.select(a0)).or_default().push(id);
    }
    let mut out = Vec::with_capacity(groups.len());
    for (base_tope, members) in groups {
        let path = order_path(g, &members, &in_a1, a1.len())
            .map_err(|why| Error::NotAPath(format!("fiber over {base_tope}: {why}")))?;
        out.push(Fiber {
            base_tope,
            members: path,
        });
    }
    out.sort_by(|x, y| x.base_tope.cmp(&y.base_tope));
    Ok(out)
}

fn order_path(
    g: &TopeGraph,
    members: &[usize],
    in_a1: &[bool],
    steps: usize,
) -> std::result::Result<Vec<usize>, String> {
    if members.len() != steps + 1 {
        return Err(format!("{} topes, expected {}", members.len(), steps + 1));
    }
    let local: HashMap<usize, usize> = members.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let inner: Vec<Vec<(usize, usize)>> = members
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter(|&&(w, h)| in_a1[h] && local.contains_key(&w))
                .copied()
                .collect()
        })
        .collect();
    if members.len() == 1 {
        return Ok(members.to_vec());
    }
    let ends: Vec<usize> = (0..members.len()).filter(|&k| inner[k].len() == 1).collect();
    if ends.len() != 2 || inner.iter().any(|l| l.is_empty() || l.len() > 2) {
        return Err("induced subgraph is not a path".into());
    }
    let first = members[ends[0]].min(members[ends[1]]);
    let mut path = vec![first];
    let mut used = vec![false; in_a1.len()];
    let mut prev = usize::MAX;
    let mut cur = first;
    while path.len() < members.len() {
        let &(next, h) = inner[local[&cur]]
            .iter()
            .find(|&&(w, _)| w != prev)
            .ok_or("path ends early")?;
        if std::mem::replace(&mut used[h], true) {
            return Err(format!("hyperplane {h} crossed twice"));
        }
        prev = cur;
        cur = next;
        path.push(cur);
    }
    Ok(path)
}

/// Partitions the topes of `g` by their restriction to `a0`, orders each class as a
/// path, and puts `ε+` first: the endpoint whose `a1` signs agree with `base`.
pub fn fibers(g: &TopeGraph, a0: &[usize], a1: &[usize], base: &Tope) -> Result<Vec<Fiber>> {
    let mut out = fiber_paths(g, a0, a1)?;
    for f in &mut out {
        orient(g, f, a1, base)?;
    }
    Ok(out)
}

pub(crate) fn orient(g: &TopeGraph, f: &mut Fiber, a1: &[usize], base: &Tope) -> Result<()> {
    let agrees = |id: usize, flip: bool| a1.iter().all(|&h| (g.tope(id).get(h) == base.get(h)) != flip);
    let (first, last) = (f.eps_plus(), f.eps_minus());
    if agrees(first, false) && agrees(last, true) {
        Ok(())
    } else if agrees(last, false) && agrees(first, true) {
        f.members.reverse();
        Ok(())
    } else {
        Err(Error::NotAPath(format!(
            "fiber over {} has no all-positive and all-negative endpoints",
            f.base_tope
        )))
    }
}
