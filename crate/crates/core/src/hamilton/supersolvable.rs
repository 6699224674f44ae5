use crate::arrangement::Arrangement;
use crate::builder::{arrangement_tope_graph, BuildOptions};
use crate::error::{Error, Result};
use crate::graph::TopeGraph;
use crate::lattice::{supersolvable_decomposition, DecompositionLevel};
use crate::oracle::oracle_tope_graph;

use super::fibers::{fiber_paths, orient, Fiber};
use super::HamiltonCertificate;

/// Tope ids of a graph that is a single cycle (or one edge), from tope 0 towards its
/// smaller neighbour.
pub fn cycle_of_polygon(g: &TopeGraph) -> Result<Vec<usize>> {
    if g.len() == 2 && g.edges().len() == 1 {
        return Ok(vec![0, 1]);
    }
    if g.len() < 3 || (0..g.len()).any(|v| g.degree(v) != 2) {
        return Err(Error::NotSupersolvable);
    }
    let mut order = vec![0];
    let mut prev = usize::MAX;
    let mut cur = 0;
    loop {
        let next = g
            .neighbors(cur)
            .iter()
            .map(|&(w, _)| w)
            .filter(|&w| w != prev)
            .min()
            .unwrap();
        if next == 0 {
            break;
        }
        prev = cur;
        cur = next;
        order.push(cur);
    }
    if order.len() != g.len() {
        return Err(Error::NotSupersolvable);
    }
    Ok(order)
}

/// Builds the cycle level by level: a cycle on the regions of `A0` is lifted by
/// walking the fibers over it alternately from `ε+` to `ε−` and back.
pub fn supersolvable_cycle_abstract(g: &TopeGraph, chain: &[DecompositionLevel]) -> Result<HamiltonCertificate> {
    // coords[l][k] is the original hyperplane of coordinate k at level l
    let mut coords: Vec<Vec<usize>> = vec![(0..g.m()).collect()];
    let mut graphs: Vec<TopeGraph> = Vec::with_capacity(chain.len());
    let mut splits: Vec<(Vec<usize>, Vec<usize>)> = Vec::with_capacity(chain.len());
    let mut paths: Vec<Vec<Fiber>> = Vec::with_capacity(chain.len());
    for level in chain {
        let here = coords.last().unwrap().clone();
        let local = |hs: &[usize]| -> Result<Vec<usize>> {
            hs.iter()
                .map(|h| {
                    here.iter()
                        .position(|x| x == h)
                        .ok_or_else(|| Error::InvalidInput(format!("hyperplane {h} is not in the current level")))
                })
                .collect()
        };
        let a0 = local(&level.a0)?;
        let a1 = local(&level.a1)?;
        let current = graphs.last().unwrap_or(g);
        let (next, map) = current.contract(&a1)?;
        let mut a0_ordered = map.new_to_old.clone();
        a0_ordered.retain(|k| a0.contains(k));
        if a0_ordered.len() != a0.len() || a0.len() + a1.len() != here.len() {
            return Err(Error::InvalidInput("split does not partition the level".into()));
        }
        paths.push(fiber_paths(current, &a0_ordered, &a1)?);
        splits.push((a0_ordered, a1));
        coords.push(map.new_to_old.iter().map(|&k| here[k]).collect());
        graphs.push(next);
    }
    let bottom = graphs.last().unwrap_or(g);
    let mut cycle = cycle_of_polygon(bottom)?;
    let depth = chain.len();
    let graph_at = |l: usize| if l == 0 { g } else { &graphs[l - 1] };

    // canonical bases: tope 0 at the bottom, lifted to the smaller endpoint above
    let mut bases = vec![0usize; depth + 1];
    for l in (0..depth).rev() {
        let below = graph_at(l + 1).tope(bases[l + 1]);
        let f = paths[l]
            .iter()
            .find(|f| &f.base_tope == below)
            .ok_or_else(|| Error::NotAPath("no fiber over the base region".into()))?;
        bases[l] = f.eps_plus().min(f.eps_minus());
    }

    for l in (0..depth).rev() {
        let gl = graph_at(l);
        let above = graph_at(l + 1);
        if cycle.len() % 2 != 0 {
            return Err(Error::InvalidGraph(format!(
                "odd cycle of length {} on a central arrangement",
                cycle.len()
            )));
        }
        let base = gl.tope(bases[l]).clone();
        let a1 = &splits[l].1;
        let mut over: Vec<Option<Fiber>> = vec![None; above.len()];
        for mut f in std::mem::take(&mut paths[l]) {
            orient(gl, &mut f, a1, &base)?;
            let id = above
                .id(&f.base_tope)
                .ok_or_else(|| Error::InvalidGraph(format!("fiber base {} is not a tope below", f.base_tope)))?;
            over[id] = Some(f);
        }
        let mut lifted = Vec::with_capacity(gl.len());
        for (i, &r) in cycle.iter().enumerate() {
            let f = over[r].as_ref().ok_or(Error::NotSupersolvable)?;
            if i % 2 == 0 {
                lifted.extend_from_slice(&f.members);
            } else {
                lifted.extend(f.members.iter().rev());
            }
        }
        debug_assert_eq!(lifted[0], bases[l]);
        cycle = lifted;
    }
    let topes: Vec<_> = cycle.iter().map(|&v| g.tope(v).clone()).collect();
    HamiltonCertificate::from_topes(g.m(), &topes)
}

/// Tope graph by the region walk, or by the oracle when the arrangement is not
/// simplicial.
pub(crate) fn any_tope_graph(a: &Arrangement, opts: &BuildOptions) -> Result<TopeGraph> {
    match arrangement_tope_graph(a, opts) {
        Err(Error::NotSimplicial(_) | Error::NotSimplicialCone) => oracle_tope_graph(a, opts.max_topes),
        other => other,
    }
}

pub fn supersolvable_cycle(a: &Arrangement, opts: &BuildOptions) -> Result<HamiltonCertificate> {
    let g = any_tope_graph(a, opts)?;
    if a.rank() < 2 {
        return supersolvable_cycle_abstract(&g, &[]);
    }
    let d = supersolvable_decomposition(a)?.ok_or(Error::NotSupersolvable)?;
    supersolvable_cycle_abstract(&g, &d.levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::{generate, FamilySpec};
    use crate::hamilton::verify_certificate;

    #[test]
    fn small_families() {
        for spec in [
            FamilySpec::I2m { m: 4 },
            FamilySpec::B { n: 3 },
            FamilySpec::A { n: 4 },
            FamilySpec::R0 { m: 6 },
            FamilySpec::R1 { m: 3 },
        ] {
            let a = generate(spec).unwrap();
            let g = any_tope_graph(&a, &BuildOptions::default()).unwrap();
            let c = supersolvable_cycle(&a, &BuildOptions::default()).unwrap();
            assert_eq!(verify_certificate(&g, &c), Ok(()), "{spec}");
        }
    }

    #[test]
    fn d4_is_rejected() {
        let a = generate(FamilySpec::D { n: 4 }).unwrap();
        assert_eq!(
            supersolvable_cycle(&a, &BuildOptions::default()),
            Err(Error::NotSupersolvable)
        );
    }
}
