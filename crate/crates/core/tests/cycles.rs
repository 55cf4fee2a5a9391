use std::collections::{BTreeSet, HashMap};

use pancake::cycles::{canonicalize, enumerate_cycles, verify_classification, CycleLabel};
use pancake::graph::neighbors;
use pancake::{GraphKind, Kind};

/// Cycles through vertex 0 of an explicit adjacency list, one per vertex
/// set and edge order, found by extending every path from 0.
fn oracle_cycles(g: GraphKind, length: usize) -> BTreeSet<Vec<usize>> {
    let order = g.order().unwrap() as usize;
    let adj: Vec<Vec<(usize, usize)>> = (0..order)
        .map(|r| {
            let v = g.unrank(r as u64).unwrap();
            let flips: Vec<usize> = g.flips().collect();
            neighbors(g, &v).unwrap().iter().zip(flips).map(|(w, i)| (g.rank(w).unwrap() as usize, i)).collect()
        })
        .collect();
    let mut found = BTreeSet::new();
    let mut path = vec![0usize];
    extend(&adj, length, &mut path, &mut found);
    found
}

fn extend(adj: &[Vec<(usize, usize)>], length: usize, path: &mut Vec<usize>, found: &mut BTreeSet<Vec<usize>>) {
    let last = *path.last().unwrap();
    for &(w, _) in &adj[last] {
        if path.len() == length {
            if w == 0 {
                // Keep the direction whose second vertex is smaller.
                let backward: Vec<usize> = std::iter::once(0).chain(path[1..].iter().rev().copied()).collect();
                found.insert(if path[1] < backward[1] { path.clone() } else { backward });
            }
            continue;
        }
        if path.contains(&w) {
            continue;
        }
        path.push(w);
        extend(adj, length, path, found);
        path.pop();
    }
}

#[test]
fn enumeration_matches_an_explicit_graph_search() {
    for (kind, n, length) in [
        (Kind::Plain, 4, 6),
        (Kind::Plain, 4, 8),
        (Kind::Plain, 4, 9),
        (Kind::Plain, 5, 7),
        (Kind::Plain, 5, 8),
        (Kind::Burnt, 3, 8),
        (Kind::Burnt, 3, 9),
        (Kind::Burnt, 4, 8),
    ] {
        let g = GraphKind::new(kind, n).unwrap();
        let ours: BTreeSet<Vec<usize>> = enumerate_cycles(g, length)
            .unwrap()
            .into_iter()
            .map(|c| c.vertices.iter().map(|&r| r as usize).collect())
            .collect();
        assert_eq!(ours, oracle_cycles(g, length), "{g} length {length}");
    }
}

#[test]
fn cycle_counts_through_the_identity() {
    let expected = [
        (Kind::Plain, 3, 6, 1),
        (Kind::Plain, 4, 6, 1),
        (Kind::Plain, 4, 7, 7),
        (Kind::Plain, 4, 8, 10),
        (Kind::Plain, 4, 9, 12),
        (Kind::Plain, 5, 7, 14),
        (Kind::Plain, 5, 8, 43),
        (Kind::Plain, 5, 9, 84),
        (Kind::Plain, 6, 8, 103),
        (Kind::Burnt, 2, 8, 1),
        (Kind::Burnt, 2, 9, 0),
        (Kind::Burnt, 3, 8, 6),
        (Kind::Burnt, 3, 9, 12),
        (Kind::Burnt, 4, 8, 18),
        (Kind::Burnt, 4, 9, 48),
        (Kind::Burnt, 5, 8, 40),
    ];
    for (kind, n, length, count) in expected {
        let g = GraphKind::new(kind, n).unwrap();
        assert_eq!(enumerate_cycles(g, length).unwrap().len(), count, "{g} length {length}");
    }
}

#[test]
fn each_form_is_realized_once_per_pair_of_readings() {
    // Every reading of a form, started at the identity, traces a cycle
    // through it; each cycle is traced by exactly two readings.
    for (g, length) in [(GraphKind::plain(5).unwrap(), 8), (GraphKind::burnt(4).unwrap(), 9)] {
        let mut by_form: HashMap<Vec<usize>, usize> = HashMap::new();
        for c in enumerate_cycles(g, length).unwrap() {
            *by_form.entry(c.canonical.labels().to_vec()).or_default() += 1;
        }
        for (form, count) in by_form {
            let mut readings = BTreeSet::new();
            for flip in [false, true] {
                let mut seq = form.clone();
                if flip {
                    seq.reverse();
                }
                for _ in 0..length {
                    seq.rotate_left(1);
                    readings.insert(seq.clone());
                }
            }
            assert!(readings.iter().all(|r| canonicalize(&CycleLabel(r.clone())).labels() == &form[..]));
            assert_eq!(count * 2, readings.len(), "{g} {form:?}");
        }
    }
}

#[test]
fn classification_holds_where_it_is_checked() {
    for (kind, n, length) in [
        (Kind::Plain, 4, 6),
        (Kind::Plain, 4, 7),
        (Kind::Plain, 5, 8),
        (Kind::Plain, 6, 7),
        (Kind::Burnt, 3, 9),
        (Kind::Burnt, 5, 8),
    ] {
        let g = GraphKind::new(kind, n).unwrap();
        let report = verify_classification(g, length).unwrap();
        assert!(report.is_confirmed(), "{g} length {length}: {:?}", report.unmatched);
        assert_eq!(report.matched_cycles(), report.total);
        assert!(report.unrealized.is_empty(), "{g} length {length}: {:?}", report.unrealized);
    }
}
