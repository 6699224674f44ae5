use clap::ValueEnum;
use topecycle::catalogue::{generate, FamilySpec};
use topecycle::hamilton::{
    dns_cycle, product_cycle, search_cycle, supersolvable_cycle, DnsMethod, HamiltonCertificate, SearchOutcome,
};
use topecycle::oracle::oracle_tope_graph;
use topecycle::{arrangement_tope_graph, Arrangement, BuildOptions, Error, Scalar, TopeGraph};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphAlgo {
    /// Wall-crossing walk from a positive system.
    #[value(alias = "appendixA")]
    Walk,
    /// Brute-force region enumeration.
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Supersolvable,
    Dns,
    Product,
    Search,
}

#[derive(Debug, Clone, Default)]
pub struct Settings {
    pub build: BuildOptions,
    pub search_budget: u64,
}

pub struct Cycle {
    pub certificate: HamiltonCertificate,
    pub method: String,
}

pub fn tope_graph(a: &Arrangement, algo: GraphAlgo, opts: &BuildOptions) -> CliResult<TopeGraph> {
    Ok(match algo {
        GraphAlgo::Walk => arrangement_tope_graph(a, opts)?,
        GraphAlgo::Oracle => oracle_tope_graph(a, opts.max_topes)?,
    })
}

/// The walk where it applies, the oracle for non-simplicial input.
pub fn any_tope_graph(a: &Arrangement, opts: &BuildOptions) -> CliResult<TopeGraph> {
    match arrangement_tope_graph(a, opts) {
        Err(Error::NotSimplicial(_) | Error::NotSimplicialCone) => Ok(oracle_tope_graph(a, opts.max_topes)?),
        other => Ok(other?),
    }
}

pub fn search(g: &TopeGraph, budget: u64) -> CliResult<HamiltonCertificate> {
    match search_cycle(g, budget) {
        SearchOutcome::Found(c) => Ok(c),
        SearchOutcome::ProvedNone => Err(CliError::NoCycle),
        SearchOutcome::BudgetExceeded => Err(CliError::BudgetExceeded(budget)),
    }
}

/// Rewrites a certificate whose hyperplane `k` is hyperplane `to_input[k]` of the input.
fn relabel(c: &HamiltonCertificate, to_input: &[usize]) -> CliResult<HamiltonCertificate> {
    let mut inverse = vec![0; to_input.len()];
    for (k, &i) in to_input.iter().enumerate() {
        inverse[i] = k;
    }
    let start = c.start().select(&inverse);
    let flips = c.flips().iter().map(|&f| to_input[f]).collect();
    Ok(HamiltonCertificate::new(c.m(), start, flips)?)
}

/// Groups of hyperplanes whose normals share no coordinate with other groups,
/// ordered by their smallest index.
pub fn blocks(a: &Arrangement) -> Vec<Vec<usize>> {
    let m = a.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for c in 0..a.dim() {
        let mut first = None;
        for i in 0..m {
            if a.normal(i)[c].is_zero() {
                continue;
            }
            match first {
                None => first = Some(i),
                Some(f) => {
                    let (x, y) = (find(&mut parent, f), find(&mut parent, i));
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; m];
    for i in 0..m {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

/// The block's hyperplanes restricted to the coordinates they use.
fn block_arrangement(a: &Arrangement, block: &[usize]) -> CliResult<Arrangement> {
    let coords: Vec<usize> = (0..a.dim())
        .filter(|&c| block.iter().any(|&i| !a.normal(i)[c].is_zero()))
        .collect();
    let normals = block
        .iter()
        .map(|&i| coords.iter().map(|&c| a.normal(i)[c].clone()).collect::<Vec<Scalar>>())
        .collect();
    Ok(Arrangement::new(coords.len(), normals)?)
}

/// `(n, s, to_input)` when `a` is `D_{n,s}` up to the order of its hyperplanes.
pub fn match_dns(a: &Arrangement) -> Option<(usize, usize, Vec<usize>)> {
    let n = a.dim();
    (0..=n).find_map(|s| {
        let d = generate(FamilySpec::Dns { n, s }).ok()?;
        if d.len() != a.len() {
            return None;
        }
        let to_input = (0..d.len())
            .map(|k| a.position(d.normal(k)))
            .collect::<Option<Vec<_>>>()?;
        Some((n, s, to_input))
    })
}

fn dns(a: &Arrangement, settings: &Settings) -> CliResult<Cycle> {
    let (n, s, to_input) =
        match_dns(a).ok_or_else(|| CliError::Usage("the arrangement is not of type D_{n,s}".into()))?;
    let out = dns_cycle(n, s, &settings.build, settings.search_budget)?;
    let tag = match out.method {
        DnsMethod::Glued => "dns",
        DnsMethod::Supersolvable => "dns/supersolvable",
        DnsMethod::Search => "dns/search",
    };
    Ok(Cycle {
        certificate: relabel(&out.certificate, &to_input)?,
        method: tag.into(),
    })
}

fn supersolvable(a: &Arrangement, settings: &Settings) -> CliResult<Cycle> {
    Ok(Cycle {
        certificate: supersolvable_cycle(a, &settings.build)?,
        method: "supersolvable".into(),
    })
}

fn searched(a: &Arrangement, settings: &Settings) -> CliResult<Cycle> {
    let g = any_tope_graph(a, &settings.build)?;
    Ok(Cycle {
        certificate: search(&g, settings.search_budget)?,
        method: "search".into(),
    })
}

/// Without a product structure: the gluing construction for `D_{n,s}`, then the
/// supersolvable recursion, then search.
fn irreducible(a: &Arrangement, settings: &Settings) -> CliResult<Cycle> {
    if a.dim() >= 4 && match_dns(a).is_some() {
        return dns(a, settings);
    }
    match supersolvable(a, settings) {
        Err(CliError::Core(Error::NotSupersolvable)) => searched(a, settings),
        other => other,
    }
}

fn product(a: &Arrangement, settings: &Settings) -> CliResult<Cycle> {
    let groups = blocks(a);
    if groups.len() < 2 {
        return Err(CliError::Usage("the arrangement does not split into blocks".into()));
    }
    let mut acc: Option<(TopeGraph, HamiltonCertificate)> = None;
    let mut methods = Vec::new();
    for block in &groups {
        let b = block_arrangement(a, block)?;
        let g = any_tope_graph(&b, &settings.build)?;
        let cycle = irreducible(&b, settings)?;
        methods.push(cycle.method);
        acc = Some(match acc {
            None => (g, cycle.certificate),
            Some((g0, c0)) => {
                let c = product_cycle(&g0, &c0, &g, &cycle.certificate)?;
                (g0.box_product(&g), c)
            }
        });
    }
    let (_, c) = acc.expect("at least two blocks");
    let order: Vec<usize> = groups.concat();
    Ok(Cycle {
        certificate: relabel(&c, &order)?,
        method: format!("product({})", methods.join(",")),
    })
}

pub fn cycle_of_arrangement(a: &Arrangement, method: Method, settings: &Settings) -> CliResult<Cycle> {
    match method {
        Method::Auto if blocks(a).len() > 1 => product(a, settings),
        Method::Auto => irreducible(a, settings),
        Method::Supersolvable => supersolvable(a, settings),
        Method::Dns => dns(a, settings),
        Method::Product => product(a, settings),
        Method::Search => searched(a, settings),
    }
}

pub fn cycle_of_graph(g: &TopeGraph, method: Method, settings: &Settings) -> CliResult<Cycle> {
    match method {
        Method::Auto | Method::Search => Ok(Cycle {
            certificate: search(g, settings.search_budget)?,
            method: "search".into(),
        }),
        other => Err(CliError::Usage(format!(
            "method {other:?} needs an arrangement file, not a graph file"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use topecycle::hamilton::verify_certificate;

    #[test]
    fn blocks_of_a_product() {
        let a2 = generate(FamilySpec::A { n: 3 }).unwrap();
        let b2 = generate(FamilySpec::B { n: 2 }).unwrap();
        let p = a2.product(&b2).unwrap();
        assert_eq!(blocks(&p), vec![vec![0, 1, 2], vec![3, 4, 5, 6]]);
        assert_eq!(blocks(&b2).len(), 1);
    }

    #[test]
    fn relabelled_product_verifies() {
        let a2 = generate(FamilySpec::A { n: 3 }).unwrap();
        let b2 = generate(FamilySpec::B { n: 2 }).unwrap();
        let p = a2.product(&b2).unwrap().permuted(&[4, 0, 6, 1, 3, 2, 5]).unwrap();
        let settings = Settings::default();
        let c = cycle_of_arrangement(&p, Method::Auto, &settings).unwrap();
        assert!(c.method.starts_with("product"));
        let g = any_tope_graph(&p, &settings.build).unwrap();
        assert_eq!(verify_certificate(&g, &c.certificate), Ok(()));
    }

    #[test]
    fn dns_is_recognised_in_any_order() {
        let d = generate(FamilySpec::Dns { n: 4, s: 2 }).unwrap();
        let order: Vec<usize> = (0..d.len()).rev().collect();
        let shuffled = d.permuted(&order).unwrap();
        let (n, s, to_input) = match_dns(&shuffled).unwrap();
        assert_eq!((n, s), (4, 2));
        assert_eq!(to_input, order);
        assert!(match_dns(&generate(FamilySpec::A { n: 4 }).unwrap()).is_none());
    }
}
