use super::*;
use crate::perm::Permutation;
use crate::zoo::{alternating, cyclic, dihedral, direct_product, direct_with_z2};

fn d10_in(degree: usize) -> PermGroup {
    PermGroup::new(
        degree,
        vec![
            Permutation::from_cycles(degree, &[&[0, 1, 2, 3, 4]]).unwrap(),
            Permutation::from_cycles(degree, &[&[1, 4], &[2, 3]]).unwrap(),
        ],
    )
    .unwrap()
}

#[test]
fn a5_on_d10_cosets_gives_k6() {
    let action = CosetAction::new(&alternating(5).unwrap(), &d10_in(5)).unwrap();
    let subs = action.suborbits();
    let five = subs.iter().find(|s| s.length == 5).unwrap();
    let g = orbital_graph(&action, five).unwrap();
    assert_eq!(g.vertex_count(), 6);
    assert_eq!(g.edge_count(), 15);
    assert!(connectivity_certificate(&action, five).unwrap());
    assert!(g.is_connected());
}

#[test]
fn trivial_and_directed_suborbits_are_rejected() {
    let action = CosetAction::new(&alternating(5).unwrap(), &d10_in(5)).unwrap();
    let trivial = action.suborbits().into_iter().find(|s| s.length == 1).unwrap();
    assert!(orbital_graph(&action, &trivial).is_err());
    let mut fake = action.suborbits().into_iter().find(|s| s.length == 5).unwrap();
    fake.self_paired = false;
    assert!(orbital_graph(&action, &fake).is_err());
}

#[test]
fn certificate_detects_a_proper_join() {
    let g = direct_product(&alternating(5).unwrap(), &cyclic(2).unwrap()).unwrap();
    let action = CosetAction::new(&g, &d10_in(7)).unwrap();
    assert_eq!(action.degree(), 12);
    let mut split = 0;
    for s in action.suborbits().iter().filter(|s| s.length == 5 && s.self_paired) {
        let graph = orbital_graph(&action, s).unwrap();
        let certified = connectivity_certificate(&action, s).unwrap();
        assert_eq!(certified, graph.is_connected());
        if !certified {
            // two copies of K6, one per coset of A5
            assert_eq!(graph.component_count(), 2);
            split += 1;
        }
    }
    assert_eq!(split, 1);
}

#[test]
fn regular_cyclic_action_is_connected() {
    let z7 = cyclic(7).unwrap();
    let action = CosetAction::new(&z7, &PermGroup::trivial(7)).unwrap();
    let s = action.suborbits().into_iter().find(|s| s.points == vec![1]).unwrap();
    assert!(connectivity_certificate(&action, &s).unwrap());
}

#[test]
fn non_self_paired_suborbits_give_valency_ten() {
    let g = direct_product(&alternating(5).unwrap(), &dihedral(5).unwrap()).unwrap();
    let mut checked = 0;
    for h in find_subgroups_of_order(&g, 10, 0).unwrap() {
        let action = CosetAction::new(&g, &h).unwrap();
        let subs = action.suborbits();
        for s in subs.iter().filter(|s| s.length == 5 && !s.self_paired) {
            let union = symmetrized_orbital_graph(&action, s, &subs[s.paired_with]);
            assert_eq!(union.regular_degree(), Some(10));
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn a5_times_d10_has_one_graph_with_full_group() {
    let g = direct_product(&alternating(5).unwrap(), &dihedral(5).unwrap()).unwrap();
    let cands = enumerate_pentavalent(&g, &[10], 0).unwrap();
    let exact: Vec<_> = cands.iter().filter(|c| c.aut_order == Some(600)).collect();
    assert_eq!(exact.len(), 1);
    assert_eq!(exact[0].degree, 60);
    assert_eq!(exact[0].stabilizer_kind, GroupKind::D10);
    for c in &cands {
        assert!(c.connected && c.transitivity.arc_transitive);
        assert_eq!(c.graph.regular_degree(), Some(5));
        assert!(c.group_action.iter().all(|p| c.graph.is_automorphism(p)));
    }
}

#[test]
fn enumeration_is_seed_stable() {
    let g = direct_product(&alternating(5).unwrap(), &dihedral(5).unwrap()).unwrap();
    let a = enumerate_pentavalent(&g, &[10], 3).unwrap();
    let b = enumerate_pentavalent(&g, &[10], 3).unwrap();
    let forms = |v: &[GraphCandidate]| v.iter().map(|c| c.graph6()).collect::<Vec<_>>();
    assert_eq!(forms(&a), forms(&b));
}

#[test]
fn bad_stabilizer_orders_fail() {
    let g = alternating(5).unwrap();
    assert!(enumerate_pentavalent(&g, &[7], 0).is_err());
    assert!(enumerate_pentavalent(&g, &[12], 0).is_err());
    let big = crate::zoo::symmetric(7).unwrap();
    assert!(enumerate_pentavalent(&big, &[140], 0).is_err());
}

#[test]
fn dump_writes_one_file_per_candidate() {
    let g = alternating(5).unwrap();
    let cands = enumerate_with(
        &g,
        &[10],
        &EnumerateOptions {
            group_label: "A5".into(),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(cands.len(), 1);
    assert_eq!(cands[0].graph6(), b"E~~w");
    let dir = tempfile::tempdir().unwrap();
    let files = dump_candidates(&cands, dir.path()).unwrap();
    assert_eq!(files.len(), 1);
    assert!(files[0].ends_with("A5/6/candidate_0.json"));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&files[0]).unwrap()).unwrap();
    assert_eq!(v["graph6"], "E~~w");
    // |A5| = 60 is less than the 6 * 5 * 4 two-arcs of K6
    assert_eq!(v["s"], 1);
    assert_eq!(v["stab_kind"], "D10");
}

#[test]
fn stabilizers_with_a_core_are_skipped() {
    // every order-20 subgroup of A5 x Z2 is D10 x Z2 and contains the centre
    let g = direct_with_z2(&alternating(5).unwrap()).unwrap();
    assert!(enumerate_pentavalent(&g, &[20], 0).unwrap().is_empty());
    // order 10 gives the icosahedron and K_{6,6} minus a perfect matching
    let found = enumerate_pentavalent(&g, &[10], 0).unwrap();
    let mut seen: Vec<(bool, Option<u128>)> =
        found.iter().map(|c| (c.graph.is_bipartite(), c.aut_order)).collect();
    seen.sort_unstable();
    assert_eq!(seen, vec![(false, Some(120)), (true, Some(1440))]);
}
