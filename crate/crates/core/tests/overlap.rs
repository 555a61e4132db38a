use cwilf::overlap::{
    are_mutually_minimal_overlapping_by, closed_form_mp, enumerate_max_packings, is_minimal_overlapping_by,
    mutual_scan_table, scan_table, Method,
};
use cwilf::perm::RankRange;
use cwilf::{Budget, Permutation};

fn all(j: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    RankRange::full(j).for_each(|s| out.push(Permutation::new(s.to_vec()).unwrap()));
    out
}

#[test]
fn fast_path_matches_scan_up_to_six() {
    let budget = Budget::default();
    for j in 3..=6 {
        let table = scan_table(j, &budget).unwrap();
        assert_eq!(table.len(), all(j).len());
        for (tau, verdict) in &table {
            let fast = is_minimal_overlapping_by(tau, Method::PrefixSuffix, &budget).unwrap();
            assert_eq!(fast.verdict, *verdict, "{tau}");
        }
    }
}

#[test]
fn mutual_fast_path_matches_scan_up_to_five() {
    let budget = Budget::default();
    for j in 3..=5 {
        let minimal: Vec<Permutation> = scan_table(j, &budget)
            .unwrap()
            .into_iter()
            .filter_map(|(t, v)| v.then_some(t))
            .collect();
        let clashes = mutual_scan_table(j, &budget).unwrap();
        for a in &minimal {
            for b in &minimal {
                if a >= b {
                    continue;
                }
                let fast = are_mutually_minimal_overlapping_by(a, b, Method::PrefixSuffix, &budget).unwrap();
                assert_eq!(fast.verdict, !clashes.contains(&(a.clone(), b.clone())), "{a} {b}");
            }
        }
    }
}

#[test]
fn per_pair_scan_matches_table_for_four() {
    let budget = Budget::default();
    let minimal: Vec<Permutation> = scan_table(4, &budget)
        .unwrap()
        .into_iter()
        .filter_map(|(t, v)| v.then_some(t))
        .collect();
    let clashes = mutual_scan_table(4, &budget).unwrap();
    for a in &minimal {
        for b in &minimal {
            if a < b {
                let r = are_mutually_minimal_overlapping_by(a, b, Method::DefinitionScan, &budget).unwrap();
                assert_eq!(r.verdict, !clashes.contains(&(a.clone(), b.clone())));
            }
        }
    }
}

#[test]
fn one_then_two_patterns_are_mutually_minimal() {
    let budget = Budget::default();
    for j in 3..=6 {
        let table = scan_table(j, &budget).unwrap();
        let pinned: Vec<Permutation> = all(j)
            .into_iter()
            .filter(|t| t.first() == Some(1) && t.last() == Some(2))
            .collect();
        for t in &pinned {
            assert!(table[t], "{t}");
        }
        let clashes = if j <= 5 { Some(mutual_scan_table(j, &budget).unwrap()) } else { None };
        for a in &pinned {
            for b in &pinned {
                if a < b {
                    let fast = are_mutually_minimal_overlapping_by(a, b, Method::PrefixSuffix, &budget).unwrap();
                    assert!(fast.verdict, "{a} {b}");
                    if let Some(c) = &clashes {
                        assert!(!c.contains(&(a.clone(), b.clone())));
                    }
                }
            }
        }
    }
}

#[test]
fn closed_form_matches_enumeration_in_s4() {
    let budget = Budget::default();
    let mut checked = 0;
    for tau in all(4) {
        if tau.first() != Some(1) || !is_minimal_overlapping_by(&tau, Method::DefinitionScan, &budget).unwrap().verdict {
            continue;
        }
        for n in 0..=2 {
            let row = enumerate_max_packings(&tau, n + 1, &budget).unwrap();
            assert_eq!(closed_form_mp(&tau, n).unwrap(), row.poly, "{tau} n={n}");
        }
        checked += 1;
    }
    assert!(checked >= 3);
}

#[test]
fn closed_form_for_1342_over_s7() {
    let budget = Budget::default();
    let tau: Permutation = "1342".parse().unwrap();
    let row = enumerate_max_packings(&tau, 2, &budget).unwrap();
    assert_eq!(row.length, 7);
    assert_eq!(closed_form_mp(&tau, 1).unwrap(), row.poly);
}
