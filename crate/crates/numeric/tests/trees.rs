use std::collections::{BTreeSet, HashSet};

use hodgecor_numeric::{enumerate_plane_trees, Vertex};

fn catalan(k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (2 * (2 * i + 1)) / (i + 2))
}

#[test]
fn counts_are_catalan_numbers() {
    assert_eq!(enumerate_plane_trees(2).len(), 1);
    assert_eq!(enumerate_plane_trees(3).len(), 1);
    assert_eq!(enumerate_plane_trees(4).len(), 2);
    assert_eq!(enumerate_plane_trees(5).len(), 5);
    for leaves in 3..9 {
        assert_eq!(enumerate_plane_trees(leaves).len() as u64, catalan(leaves as u64 - 2));
    }
}

#[test]
fn structure() {
    for leaves in 2..8 {
        let trees = enumerate_plane_trees(leaves);
        let n = leaves - 1;
        let mut distinct = HashSet::new();
        for t in &trees {
            assert_eq!(t.leaf_count, leaves);
            assert_eq!(t.edges.len(), 2 * n - 1);
            if leaves > 2 {
                assert_eq!(t.internal_count(), n - 1);
            }
            let mut degree = vec![0; t.internal_count()];
            let mut leaf_seen = vec![0; leaves];
            for &(a, b) in &t.edges {
                for v in [a, b] {
                    match v {
                        Vertex::Internal(k) => degree[k] += 1,
                        Vertex::Leaf(i) => leaf_seen[i] += 1,
                    }
                }
            }
            assert!(degree.iter().all(|&d| d == 3));
            assert!(leaf_seen.iter().all(|&d| d == 1));
            // the counterclockwise neighbor lists agree with the edge list
            for k in 0..t.internal_count() {
                let from_edges: BTreeSet<String> = t
                    .edges
                    .iter()
                    .filter_map(|&(a, b)| {
                        if a == Vertex::Internal(k) {
                            Some(format!("{b:?}"))
                        } else if b == Vertex::Internal(k) {
                            Some(format!("{a:?}"))
                        } else {
                            None
                        }
                    })
                    .collect();
                let listed: BTreeSet<String> = t.adjacent(k).iter().map(|v| format!("{v:?}")).collect();
                assert_eq!(from_edges, listed);
            }
            assert!(distinct.insert(format!("{:?}", t.edges)));
        }
    }
}

#[test]
fn weight_three_trees() {
    let trees = enumerate_plane_trees(4);
    let (i, l) = (Vertex::Internal, Vertex::Leaf);
    assert_eq!(trees[0].edges, vec![(i(0), l(0)), (i(0), l(1)), (i(0), i(1)), (i(1), l(2)), (i(1), l(3))]);
    assert_eq!(trees[1].edges, vec![(i(0), l(0)), (i(0), i(1)), (i(1), l(1)), (i(1), l(2)), (i(0), l(3))]);
}
