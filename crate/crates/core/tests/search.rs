use subcube::search::*;
use subcube::{canonical_form, is_irreducible};

fn exact(r: &SearchReport) -> Option<u64> {
    assert!(r.complete, "{} truncated after {} nodes", r.objective, r.nodes);
    r.optimum()
}

fn defaults() -> SearchConstraints {
    SearchConstraints::default()
}

#[test]
fn min_size_table() {
    let r = min_size_search(3, 2, &defaults()).unwrap();
    assert_eq!((exact(&r), r.classes), (Some(5), Some(1)));
    let r = min_size_search(4, 2, &defaults()).unwrap();
    assert_eq!((exact(&r), r.classes), (Some(7), Some(2)));
    let r = min_size_search(3, 3, &defaults()).unwrap();
    assert_eq!((exact(&r), r.classes), (Some(13), Some(1)));
    for cert in &r.certificates {
        let Certificate::Subcubes(f) = cert else { panic!("subcube certificate expected") };
        assert!(f.is_partition() && f.is_tight() && is_irreducible(f));
        assert_eq!(canonical_form(f).unwrap().form, *f);
    }
}

#[test]
fn max_points_table() {
    for (n, want) in [(3, 2), (4, 4), (5, 8)] {
        assert_eq!(exact(&max_points_search(n, &defaults()).unwrap()), Some(want), "n = {n}");
    }
}

#[test]
fn max_size_table() {
    assert_eq!(exact(&max_size_search(3, &defaults()).unwrap()), Some(5));
    let r = max_size_search(4, &defaults()).unwrap();
    assert_eq!(exact(&r), Some(9));
    // no irreducible partition of length 4 has ten members
    let ten = SearchConstraints { min_size: Some(10), require_irreducible: true, prune_reducible_pairs: true, ..defaults() };
    let mut found = 0;
    let stats = enumerate_partitions(4, 2, &ten, |_| found += 1).unwrap();
    assert!(stats.complete);
    assert_eq!(found, 0);
}

#[test]
fn homogeneous_table() {
    let r = homogeneous_search(4, 3, &defaults()).unwrap();
    assert_eq!((r.status(), r.classes), (SearchStatus::Found, Some(1)));
    for (n, k) in [(5, 2), (3, 1), (4, 1), (5, 1)] {
        assert_eq!(homogeneous_search(n, k, &defaults()).unwrap().status(), SearchStatus::NoneExists, "({n}, {k})");
    }
    let fixed = SearchConstraints { fix_first_subcube: true, ..defaults() };
    let r = homogeneous_search(6, 4, &fixed).unwrap();
    assert_eq!((r.status(), r.classes, r.value), (SearchStatus::Found, Some(1), Some(16)));
}

#[test]
fn homogeneous_five_four_does_not_exist() {
    let fixed = SearchConstraints { fix_first_subcube: true, ..defaults() };
    assert_eq!(homogeneous_search(5, 4, &fixed).unwrap().status(), SearchStatus::NoneExists);
}

#[test]
fn min_cover_table() {
    for (n, q) in [(2, 2), (3, 2), (2, 3)] {
        let r = min_cover_search(n, q, &defaults()).unwrap();
        assert_eq!(exact(&r), Some(bounds(n, q).unwrap().cover_lower), "(n, q) = ({n}, {q})");
    }
}

#[test]
fn avsp_min_size_table() {
    for (n, want) in [(3, 4), (4, 6)] {
        let r = avsp_min_size_search(n, &defaults()).unwrap();
        assert_eq!(exact(&r), Some(want));
        let Certificate::Affine(g) = &r.certificates[0] else { panic!("affine certificate expected") };
        assert!(g.is_partition() && g.is_tight() && g.is_irreducible());
        assert!(want >= bounds(n, 2).unwrap().avsp_lower);
    }
}

#[test]
fn threads_do_not_change_results() {
    let one = min_size_search(4, 2, &defaults()).unwrap();
    let three = min_size_search(4, 2, &SearchConstraints { threads: 3, ..defaults() }).unwrap();
    assert_eq!(one.to_porcelain().lines().filter(|l| !l.starts_with("elapsed")).collect::<Vec<_>>(),
        three.to_porcelain().lines().filter(|l| !l.starts_with("elapsed")).collect::<Vec<_>>());
}

#[test]
fn budget_exhaustion_is_not_nonexistence() {
    let r = max_points_search(4, &SearchConstraints::with_budget(20)).unwrap();
    assert_eq!(r.status(), SearchStatus::Truncated);
    assert_eq!(r.optimum(), None);
    assert!(min_size_search(3, 2, &SearchConstraints::with_budget(0)).is_err());
}

#[test]
fn min_size_five() {
    let fixed = SearchConstraints { fix_first_subcube: true, threads: 4, ..defaults() };
    assert_eq!(exact(&min_size_search(5, 2, &fixed).unwrap()), Some(9));
}

#[test]
fn max_size_five() {
    assert_eq!(exact(&max_size_search(5, &defaults()).unwrap()), Some(20));
}
