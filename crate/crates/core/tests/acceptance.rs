//! One pass/fail line per acceptance criterion. Run with
//! `cargo test -p topecycle --test acceptance`.
//!
//! `ACCEPTANCE_RANK3_DIR` adds a directory of rank-3 arrangement files to the
//! search criterion; `ACCEPTANCE_SEARCH_BUDGET` sets its node budget.

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use topecycle::catalogue::{generate, FamilySpec};
use topecycle::hamilton::{
    cycle_of_polygon, dns_cycle, product_cycle, search_cycle, supersolvable_cycle, DnsMethod, HamiltonCertificate,
    SearchOutcome,
};
use topecycle::io::{parse_arrangement, write_arrangement};
use topecycle::lattice::supersolvable_decomposition;
use topecycle::oracle::oracle_tope_graph;
use topecycle::{arrangement_tope_graph, Arrangement, BuildOptions, Scalar, Tope, TopeGraph};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn build(a: &Arrangement) -> Result<TopeGraph, String> {
    arrangement_tope_graph(a, &BuildOptions::default()).map_err(|e| e.to_string())
}

fn gen(spec: FamilySpec) -> Result<Arrangement, String> {
    generate(spec).map_err(|e| format!("{spec}: {e}"))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Walks the certificate from scratch: one sign change per step, each step an
/// edge of `g`, no tope twice, every tope once, and back at the start.
fn check_walk(g: &TopeGraph, c: &HamiltonCertificate) -> Result<(), String> {
    ensure(c.m() == g.m(), || {
        format!("certificate on {} hyperplanes, graph on {}", c.m(), g.m())
    })?;
    let mut cur = c.start().clone();
    let mut seen = HashSet::new();
    for (step, &f) in c.flips().iter().enumerate() {
        ensure(seen.insert(cur.clone()), || {
            format!("tope {cur} repeated at step {step}")
        })?;
        let next = cur.flipped(f);
        ensure(cur.hamming(&next) == 1, || {
            format!("step {step} is not a single sign change")
        })?;
        let (a, b) = (g.id(&cur), g.id(&next));
        ensure(
            matches!((a, b), (Some(a), Some(b)) if g.edge_type(a, b) == Some(f)),
            || format!("step {step} from {cur} across {f} is not an edge"),
        )?;
        cur = next;
    }
    ensure(cur == *c.start(), || format!("walk ends at {cur}, not at the start"))?;
    ensure(seen.len() == g.len(), || {
        format!("{} of {} topes visited", seen.len(), g.len())
    })
}

fn timed<T>(limit: Duration, f: impl FnOnce() -> Result<T, String>) -> Result<(T, Duration), String> {
    let clock = Instant::now();
    let out = f()?;
    let spent = clock.elapsed();
    ensure(spent <= limit, || format!("took {spent:?}, limit {limit:?}"))?;
    Ok((out, spent))
}

fn region_fixtures() -> Outcome {
    let cases = [
        (FamilySpec::R0 { m: 6 }, 6, 20),
        (FamilySpec::R1 { m: 5 }, 10, 60),
        (FamilySpec::R2 { m: 3 }, 13, 96),
        (FamilySpec::R0 { m: 25 }, 25, 96),
    ];
    let mut notes = Vec::new();
    for (spec, lines, regions) in cases {
        let a = gen(spec)?;
        ensure(a.len() == lines, || format!("{spec} has {} hyperplanes", a.len()))?;
        let (g, spent) = timed(Duration::from_secs(5), || build(&a))?;
        ensure(g.len() == regions, || {
            format!("{spec}: {} topes, expected {regions}", g.len())
        })?;
        notes.push(format!("{spec} {lines}h/{regions}t {:.0?}", spent));
    }
    Ok(notes.join(", "))
}

fn counting_identities() -> Outcome {
    let mut notes = Vec::new();
    let check = |spec: FamilySpec, expect: usize, limit: Duration| -> Result<Duration, String> {
        let a = gen(spec)?;
        let (g, spent) = timed(limit, || build(&a))?;
        ensure(g.len() == expect, || {
            format!("{spec}: {} topes, expected {expect}", g.len())
        })?;
        let twice = a.rank() * g.len();
        ensure(2 * g.edges().len() == twice, || {
            format!("{spec}: {} edges, rank·T/2 = {}", g.edges().len(), twice / 2)
        })?;
        Ok(spent)
    };
    for n in 2..=7 {
        check(FamilySpec::A { n }, factorial(n), Duration::from_secs(60))?;
    }
    notes.push("A_1..A_6 = n!".to_owned());
    for n in 2..=6 {
        let spent = check(FamilySpec::B { n }, (1 << n) * factorial(n), Duration::from_secs(300))?;
        if n == 6 {
            notes.push(format!("B_6 = 46080 in {spent:.1?}"));
        }
    }
    for spec in [
        FamilySpec::D { n: 4 },
        FamilySpec::D { n: 5 },
        FamilySpec::R1 { m: 6 },
        FamilySpec::R2 { m: 2 },
    ] {
        let a = gen(spec)?;
        let g = build(&a)?;
        ensure(2 * g.edges().len() == a.rank() * g.len(), || {
            format!("{spec}: edge count")
        })?;
    }
    notes.push("edges = rank·T/2 throughout".to_owned());
    Ok(notes.join(", "))
}

fn small_catalogue() -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    specs.extend((2..=6).map(|n| FamilySpec::A { n }));
    specs.extend((2..=4).map(|n| FamilySpec::B { n }));
    specs.push(FamilySpec::D { n: 4 });
    for n in 2..=4 {
        specs.extend((0..=n).map(|s| FamilySpec::Dns { n, s }));
    }
    specs.extend([3, 4, 6, 8, 12].map(|m| FamilySpec::I2m { m }));
    specs.extend((3..=20).map(|m| FamilySpec::R0 { m }));
    specs.extend((3..=6).map(|m| FamilySpec::R1 { m }));
    specs.extend((2..=3).map(|m| FamilySpec::R2 { m }));
    specs
}

fn builder_oracle() -> Outcome {
    let mut count = 0;
    for spec in small_catalogue() {
        let a = gen(spec)?;
        let fast = build(&a)?;
        if fast.len() > 2000 {
            continue;
        }
        let slow = oracle_tope_graph(&a, 2000).map_err(|e| format!("{spec}: {e}"))?;
        ensure(fast == slow, || format!("{spec}: builder and oracle differ"))?;
        count += 1;
    }
    Ok(format!("{count} arrangements, identical topes and edges"))
}

fn coordinate_index(a: &Arrangement, n: usize, k: usize) -> usize {
    let mut e = vec![Scalar::zero(); n];
    e[k] = Scalar::one();
    a.position(&e).expect("coordinate hyperplane present")
}

fn contraction_identity() -> Outcome {
    let mut count = 0;
    for n in 2..=5 {
        let b = gen(FamilySpec::B { n })?;
        let tb = build(&b)?;
        for s in 0..=n {
            let d = gen(FamilySpec::Dns { n, s })?;
            let drop: Vec<usize> = (s..n).map(|k| coordinate_index(&b, n, k)).collect();
            let (contracted, map) = tb.contract(&drop).map_err(|e| e.to_string())?;
            let order: Vec<usize> = (0..d.len())
                .map(|j| {
                    let old = b.position(d.normal(j)).expect("D_{n,s} hyperplane lies in B_n");
                    map.old_to_new[old].expect("kept hyperplane")
                })
                .collect();
            let expect = build(&d)?;
            ensure(contracted.permuted(&order) == expect, || {
                format!("n={n} s={s}: graphs differ")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs (n, s) with n ≤ 5"))
}

/// `m` lines through the origin of the plane with rational slopes.
fn plane_lines(m: usize) -> Result<Arrangement, String> {
    let mut normals = vec![vec![Scalar::one(), Scalar::zero()]];
    normals.extend((0..m as i64 - 1).map(|k| vec![Scalar::from_int(k), Scalar::one()]));
    Arrangement::new(2, normals).map_err(|e| e.to_string())
}

fn supersolvable_suite() -> Outcome {
    let mut cases: Vec<(String, Arrangement)> = Vec::new();
    for m in 1..=20 {
        cases.push((format!("{m} lines"), plane_lines(m)?));
    }
    let mut specs: Vec<FamilySpec> = [3, 4, 6, 8, 12].map(|m| FamilySpec::I2m { m }).to_vec();
    specs.extend((3..=12).map(|m| FamilySpec::R0 { m }));
    specs.extend((3..=6).map(|m| FamilySpec::R1 { m }));
    specs.extend((2..=3).map(|m| FamilySpec::R2 { m }));
    specs.extend((2..=5).map(|n| FamilySpec::B { n }));
    for spec in specs {
        cases.push((spec.to_string(), gen(spec)?));
    }
    for (x, y) in [(3, 3), (4, 5), (6, 4)] {
        let p = gen(FamilySpec::R0 { m: x })?.product(&gen(FamilySpec::R0 { m: y })?);
        cases.push((format!("R0({x})×R0({y})"), p.map_err(|e| e.to_string())?));
    }
    let p = gen(FamilySpec::R0 { m: 5 })?.product(&gen(FamilySpec::B { n: 2 })?);
    cases.push(("R0(5)×B2".into(), p.map_err(|e| e.to_string())?));
    let total = cases.len();
    for (name, a) in cases {
        let c = supersolvable_cycle(&a, &BuildOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        check_walk(&build(&a)?, &c).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{total}/{total} certificates verified"))
}

fn dns_suite() -> Outcome {
    let opts = BuildOptions::default();
    let mut count = 0;
    let mut fewest = usize::MAX;
    let clock = Instant::now();
    for n in 2..=6 {
        for s in 1..n {
            let out = dns_cycle(n, s, &opts, 50_000_000).map_err(|e| format!("D({n},{s}): {e}"))?;
            let g = build(&gen(FamilySpec::Dns { n, s })?)?;
            check_walk(&g, &out.certificate).map_err(|e| format!("D({n},{s}): {e}"))?;
            if n == 6 {
                let bound = factorial(n - 2) / 4;
                ensure(out.method == DnsMethod::Glued, || format!("D(6,{s}) was not glued"))?;
                let have = out.min_disjoint_quadrilaterals.unwrap_or(0);
                ensure(have >= bound, || {
                    format!("D(6,{s}): {have} disjoint quadrilaterals < {bound}")
                })?;
                fewest = fewest.min(have);
            }
            count += 1;
        }
    }
    let spent = clock.elapsed();
    ensure(spent <= Duration::from_secs(600), || format!("suite took {spent:?}"))?;
    Ok(format!(
        "{count} certificates verified, n=6 glued with ≥ {fewest} disjoint quadrilaterals per tree edge, {spent:.1?}"
    ))
}

fn polygon(g: &TopeGraph) -> Result<HamiltonCertificate, String> {
    let ids = cycle_of_polygon(g).map_err(|e| e.to_string())?;
    let topes: Vec<Tope> = ids.iter().map(|&v| g.tope(v).clone()).collect();
    HamiltonCertificate::from_topes(g.m(), &topes).map_err(|e| e.to_string())
}

fn products() -> Outcome {
    let k2 =
        TopeGraph::from_topes(1, vec![Tope::all_plus(1), Tope::all_plus(1).negated()]).map_err(|e| e.to_string())?;
    let hexagon = build(&gen(FamilySpec::I2m { m: 3 })?)?;
    let a2 = build(&gen(FamilySpec::A { n: 3 })?)?;
    let b2 = build(&gen(FamilySpec::B { n: 2 })?)?;
    let pairs = [
        ("K2×K2", &k2, &k2),
        ("hexagon×K2", &hexagon, &k2),
        ("hexagon×hexagon", &hexagon, &hexagon),
        ("T(A2)×T(B2)", &a2, &b2),
    ];
    for (name, g1, g2) in pairs {
        let c = product_cycle(g1, &polygon(g1)?, g2, &polygon(g2)?).map_err(|e| format!("{name}: {e}"))?;
        let g = g1.box_product(g2);
        ensure(c.len() == g1.len() * g2.len(), || format!("{name}: wrong length"))?;
        check_walk(&g, &c).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok("4/4 certificates verified".into())
}

fn rank3_files() -> Result<Vec<(String, Arrangement)>, String> {
    let mut dirs = vec![Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/rank3")];
    if let Ok(extra) = std::env::var("ACCEPTANCE_RANK3_DIR") {
        dirs.push(PathBuf::from(extra));
    }
    let mut out = Vec::new();
    for dir in dirs {
        let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
            .map_err(|e| format!("{}: {e}", dir.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "arr"))
            .collect();
        paths.sort();
        for p in paths {
            let text = std::fs::read_to_string(&p).map_err(|e| e.to_string())?;
            let a = parse_arrangement(&text).map_err(|e| format!("{}: {e}", p.display()))?;
            out.push((p.file_name().unwrap().to_string_lossy().into_owned(), a));
        }
    }
    // catalogue arrangements of rank 3, passed through the file format
    let mut specs: Vec<FamilySpec> = (3..=30).map(|m| FamilySpec::R0 { m }).collect();
    specs.push(FamilySpec::R0 { m: 400 });
    specs.extend((3..=6).map(|m| FamilySpec::R1 { m }));
    specs.extend((2..=3).map(|m| FamilySpec::R2 { m }));
    specs.extend((0..=3).map(|s| FamilySpec::Dns { n: 3, s }));
    specs.push(FamilySpec::A { n: 4 });
    for spec in specs {
        let a = parse_arrangement(&write_arrangement(&gen(spec)?)).map_err(|e| e.to_string())?;
        out.push((spec.to_string(), a));
    }
    Ok(out)
}

fn search_and_classification() -> Outcome {
    let budget: u64 = std::env::var("ACCEPTANCE_SEARCH_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(20_000_000);
    let mut searched = 0;
    for (name, a) in rank3_files()? {
        ensure(a.rank() == 3, || format!("{name} has rank {}", a.rank()))?;
        let g = build(&a).map_err(|e| format!("{name}: {e}"))?;
        if g.len() > 5000 {
            continue;
        }
        match search_cycle(&g, budget) {
            SearchOutcome::Found(c) => check_walk(&g, &c).map_err(|e| format!("{name}: {e}"))?,
            SearchOutcome::ProvedNone => return Err(format!("{name}: search proved no cycle")),
            SearchOutcome::BudgetExceeded => return Err(format!("{name}: budget {budget} exceeded")),
        }
        searched += 1;
    }
    let mut expect: Vec<(FamilySpec, bool)> = Vec::new();
    expect.extend((3..=12).map(|m| (FamilySpec::R0 { m }, true)));
    expect.extend((3..=6).map(|m| (FamilySpec::R1 { m }, true)));
    expect.extend((2..=3).map(|m| (FamilySpec::R2 { m }, true)));
    expect.extend([(FamilySpec::D { n: 4 }, false), (FamilySpec::D { n: 5 }, false)]);
    for (spec, yes) in &expect {
        let found = supersolvable_decomposition(&gen(*spec)?)
            .map_err(|e| e.to_string())?
            .is_some();
        ensure(found == *yes, || format!("{spec}: supersolvable = {found}"))?;
    }
    Ok(format!(
        "{searched} rank-3 files searched and verified (budget {budget}); {} classifications agree",
        expect.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("region-count fixtures", region_fixtures),
        ("counting identities", counting_identities),
        ("builder-oracle equivalence", builder_oracle),
        ("contraction identity", contraction_identity),
        ("supersolvable constructor", supersolvable_suite),
        ("D_{n,s} constructor", dns_suite),
        ("product combiner", products),
        ("rank-3 search and supersolvability", search_and_classification),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let clock = Instant::now();
        let outcome = run();
        let spent = clock.elapsed();
        match outcome {
            Ok(detail) => println!("PASS  [{}] {name}: {detail} ({spent:.1?})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  [{}] {name}: {detail} ({spent:.1?})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
