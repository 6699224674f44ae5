use std::collections::{HashMap, HashSet};

use proptest::prelude::*;
use topecycle::catalogue::{generate, signed_perm_adjacent, tope_of_signed_perm, FamilySpec, SignedPermutation};
use topecycle::hamilton::{fibers, supersolvable_cycle, verify_certificate};
use topecycle::lattice::{build_lattice, supersolvable_decomposition, validate_decomposition, DEFAULT_FLAT_LIMIT};
use topecycle::{arrangement_tope_graph, Arrangement, BuildOptions, Tope, TopeGraph};

fn graph(a: &Arrangement) -> TopeGraph {
    arrangement_tope_graph(a, &BuildOptions::default()).unwrap()
}

fn same_normals(a: &Arrangement, b: &Arrangement) -> bool {
    let set = |x: &Arrangement| x.normals().into_iter().collect::<HashSet<_>>();
    a.len() == b.len() && set(a) == set(b)
}

#[test]
fn extreme_dns_members() {
    for n in 2..=5 {
        let full = generate(FamilySpec::Dns { n, s: n }).unwrap();
        assert!(same_normals(&full, &generate(FamilySpec::B { n }).unwrap()), "n={n}");
        if n >= 4 {
            let none = generate(FamilySpec::Dns { n, s: 0 }).unwrap();
            assert!(same_normals(&none, &generate(FamilySpec::D { n }).unwrap()), "n={n}");
        }
    }
}

#[test]
fn signed_permutations_give_the_b_graph() {
    for n in 2..=4 {
        let b = generate(FamilySpec::B { n }).unwrap();
        let g = graph(&b);
        let perms = SignedPermutation::all(n);
        let topes: Vec<Tope> = perms.iter().map(|sp| tope_of_signed_perm(sp, &b)).collect();
        let distinct: HashSet<&Tope> = topes.iter().collect();
        assert_eq!(distinct.len(), g.len(), "n={n}: not a bijection");
        let mut edges = 0;
        for (x, sx) in perms.iter().enumerate() {
            for (y, sy) in perms.iter().enumerate().skip(x + 1) {
                let (a, c) = (g.id(&topes[x]).unwrap(), g.id(&topes[y]).unwrap());
                let rule = signed_perm_adjacent(sx, sy).map(|e| b.position(&e.normal(n)).unwrap());
                assert_eq!(rule, g.edge_type(a, c), "n={n}: {sx} {sy}");
                edges += rule.is_some() as usize;
            }
        }
        assert_eq!(edges, g.edges().len());
    }
}

#[test]
fn fixed_sign_classes_are_symmetric_group_graphs() {
    for n in 2..=4 {
        let a = generate(FamilySpec::A { n }).unwrap();
        let ga = graph(&a);
        let perms = SignedPermutation::all(n);
        let mut classes: HashMap<Vec<_>, Vec<&SignedPermutation>> = HashMap::new();
        for sp in &perms {
            classes.entry(sp.delta().to_vec()).or_default().push(sp);
        }
        assert_eq!(classes.len(), 1 << n);
        let a_tope = |sp: &SignedPermutation| {
            let plain = SignedPermutation::new(sp.sigma().to_vec(), vec![topecycle::Sign::Plus; n]).unwrap();
            tope_of_signed_perm(&plain, &a)
        };
        for class in classes.values() {
            for (i, x) in class.iter().enumerate() {
                for y in &class[i + 1..] {
                    let in_b = signed_perm_adjacent(x, y).is_some();
                    let (p, q) = (ga.id(&a_tope(x)).unwrap(), ga.id(&a_tope(y)).unwrap());
                    assert_eq!(in_b, ga.edge_type(p, q).is_some(), "{x} {y}");
                }
            }
        }
    }
}

#[test]
fn central_symmetry_and_edge_types() {
    for spec in [
        FamilySpec::B { n: 3 },
        FamilySpec::D { n: 4 },
        FamilySpec::R1 { m: 5 },
        FamilySpec::R2 { m: 3 },
        FamilySpec::Dns { n: 4, s: 3 },
    ] {
        let g = graph(&generate(spec).unwrap());
        for (id, t) in g.topes().iter().enumerate() {
            let opposite = g.id(&t.negated()).unwrap_or_else(|| panic!("{spec}: -{t} missing"));
            assert_eq!(g.degree(id), g.degree(opposite));
        }
        for e in g.edges() {
            let (x, y) = (g.tope(e.a), g.tope(e.b));
            assert_eq!(x.hamming(y), 1);
            assert_ne!(x.get(e.kind), y.get(e.kind));
        }
        // every hyperplane is a wall somewhere
        assert!(g.edge_type_counts().iter().all(|&c| c > 0), "{spec}");
    }
}

#[test]
fn r_families_have_valid_chains() {
    let specs = (3..=8)
        .map(|m| FamilySpec::R0 { m })
        .chain((3..=6).map(|m| FamilySpec::R1 { m }))
        .chain((2..=3).map(|m| FamilySpec::R2 { m }));
    for spec in specs {
        let a = generate(spec).unwrap();
        let d = supersolvable_decomposition(&a)
            .unwrap()
            .unwrap_or_else(|| panic!("{spec}"));
        assert!(validate_decomposition(&a, &d), "{spec}");
        let level = &d.levels[0];
        let g = graph(&a);
        // some tope lies far out along the modular line; it orients every fiber
        let fs = g
            .topes()
            .iter()
            .find_map(|base| fibers(&g, &level.a0, &level.a1, base).ok())
            .unwrap_or_else(|| panic!("{spec}: no consistent orientation"));
        let first = g.tope(fs[0].eps_plus()).select(&level.a1);
        for f in &fs {
            assert_eq!(g.tope(f.eps_plus()).select(&level.a1), first);
            assert_eq!(g.tope(f.eps_minus()).select(&level.a1), first.negated());
        }
        assert!(fs.iter().all(|f| f.members.len() == level.a1.len() + 1), "{spec}");
        assert_eq!(fs.iter().map(|f| f.members.len()).sum::<usize>(), g.len());
    }
}

#[test]
fn near_pencil_fibers_pair_up() {
    let a = generate(FamilySpec::R0 { m: 6 }).unwrap();
    let g = graph(&a);
    let fs = fibers(&g, &[0, 1, 2, 3, 4], &[5], g.tope(0)).unwrap();
    assert_eq!(fs.len(), 10);
    assert!(fs.iter().all(|f| f.members.len() == 2));
}

fn shuffle(len: usize, keys: &[u64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by_key(|&i| (keys[i % keys.len()].wrapping_mul(i as u64 + 7), i));
    order
}

fn family() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        (3usize..=9).prop_map(|m| FamilySpec::R0 { m }),
        (3usize..=6).prop_map(|m| FamilySpec::R1 { m }),
        (2usize..=3).prop_map(|m| FamilySpec::R2 { m }),
        (2usize..=4).prop_map(|n| FamilySpec::B { n }),
        (2usize..=4).prop_flat_map(|n| (0..=n).prop_map(move |s| FamilySpec::Dns { n, s })),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lattice_ignores_hyperplane_order(spec in family(), keys in prop::collection::vec(any::<u64>(), 1..6)) {
        let a = generate(spec).unwrap();
        let b = a.permuted(&shuffle(a.len(), &keys)).unwrap();
        let la = build_lattice(&a, DEFAULT_FLAT_LIMIT).unwrap();
        let lb = build_lattice(&b, DEFAULT_FLAT_LIMIT).unwrap();
        prop_assert_eq!(la.rank_counts(), lb.rank_counts());
        let sa = supersolvable_decomposition(&a).unwrap().is_some();
        let sb = supersolvable_decomposition(&b).unwrap().is_some();
        prop_assert_eq!(sa, sb);
    }

    #[test]
    fn graph_follows_hyperplane_order(spec in family(), keys in prop::collection::vec(any::<u64>(), 1..6)) {
        let a = generate(spec).unwrap();
        let order = shuffle(a.len(), &keys);
        let b = a.permuted(&order).unwrap();
        prop_assert_eq!(graph(&b), graph(&a).permuted(&order));
    }

    #[test]
    fn supersolvable_cycles_survive_reordering(m in 3usize..=6, keys in prop::collection::vec(any::<u64>(), 1..6)) {
        let a = generate(FamilySpec::R1 { m }).unwrap();
        let b = a.permuted(&shuffle(a.len(), &keys)).unwrap();
        let c = supersolvable_cycle(&b, &BuildOptions::default()).unwrap();
        prop_assert_eq!(verify_certificate(&graph(&b), &c), Ok(()));
    }
}
