use std::collections::BTreeSet;

use cwilf::equivalence::{
    classify, family_members, match_partition, parse_profile, pattern_row, verify_phi, FamilyKind, Stat,
    S5_TABLE_PATTERNS,
};
use cwilf::{Budget, Permutation};

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn profile(s: &str) -> BTreeSet<Stat> {
    parse_profile(s).unwrap()
}

#[test]
fn length_five_table() {
    let expected = [
        // Printed with inv = 1; the inversions are (4,3) and (5,3).
        ("12453", 1, 2, true),
        ("12543", 2, 3, true),
        ("14253", 2, 3, false),
        ("15243", 2, 4, false),
        ("13452", 1, 3, true),
        ("13542", 2, 4, true),
        ("14352", 2, 4, true),
        ("14532", 2, 5, true),
        ("15342", 2, 5, true),
        ("15432", 3, 6, true),
    ];
    let budget = Budget::default();
    for ((tau, des, inv, mo), listed) in expected.into_iter().zip(S5_TABLE_PATTERNS) {
        assert_eq!(tau, listed);
        let row = pattern_row(&p(tau), &budget).unwrap();
        assert_eq!((row.des, row.inv, row.minimal_overlapping), (des, inv, mo), "{tau}");
    }
}

#[test]
fn inversions_of_12453_by_pair_count() {
    let e = p("12453").into_entries();
    let pairs: Vec<(u32, u32)> = (0..5)
        .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
        .filter(|&(i, j)| e[i] > e[j])
        .map(|(i, j)| (e[i], e[j]))
        .collect();
    assert_eq!(pairs, vec![(4, 3), (5, 3)]);
}

#[test]
fn des_and_des_inv_classes() {
    let budget = Budget::default();
    let pats = [p("13542"), p("14352"), p("14532"), p("15342")];
    let by_des = classify(&pats, &profile("des"), 8, &budget).unwrap();
    assert_eq!(by_des.classes.len(), 1);
    let by_des_inv = classify(&pats, &profile("des,inv"), 8, &budget).unwrap();
    assert_eq!(
        by_des_inv.classes,
        vec![vec![p("13542"), p("14352")], vec![p("14532"), p("15342")]]
    );
    let sep = by_des_inv.separation(&p("13542"), &p("15342")).unwrap();
    // The two classes first differ once a permutation can contain a match.
    assert_eq!(sep.first_difference, 5);
    assert!(by_des_inv.separation(&p("13542"), &p("14352")).is_none());
}

#[test]
fn phi_is_a_statistic_preserving_bijection() {
    let budget = Budget::default();
    let (a, b) = (p("14532"), p("15342"));
    for n in 1..=8 {
        let r = verify_phi(&a, &b, n, &budget).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.preserves_inv, Some(true));
        let total = r.partition.a + r.partition.b + r.partition.c + r.partition.d;
        assert_eq!(total, cwilf::perm::factorial(n));
    }
    // Both patterns fit together only once they can share a single letter.
    assert_eq!(match_partition(&a, &b, 8, &budget).unwrap().c, 0);
    assert!(match_partition(&a, &b, 9, &budget).unwrap().c > 0);
}

#[test]
fn des_lrmin_classes_follow_the_bijection() {
    let budget = Budget::default();
    for (a, b) in [("14532", "15342"), ("13542", "15342"), ("13542", "14532")] {
        let r = classify(&[p(a), p(b)], &profile("des,lrmin"), 8, &budget).unwrap();
        assert_eq!(r.classes.len(), 1, "{a} {b}");
    }
}

#[test]
fn family_variants_share_a_class() {
    let budget = Budget::default();
    for blocks in 1..=2 {
        let members = family_members(FamilyKind::T, blocks).unwrap();
        assert_eq!(members.len(), 1 << blocks);
        let r = classify(&members, &profile("des,inv"), 9, &budget).unwrap();
        assert_eq!(r.classes.len(), 1, "blocks = {blocks}");
    }
}
