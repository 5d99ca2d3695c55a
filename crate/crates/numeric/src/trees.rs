//! Plane trivalent trees with leaves `0..=n` in boundary order.

use serde::{Deserialize, Serialize};

/// A tree vertex: a boundary leaf or an internal trivalent vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Vertex {
    Leaf(usize),
    Internal(usize),
}

/// A plane trivalent tree.
///
/// The tree is rooted at leaf 0; every internal vertex lists its neighbors
/// counterclockwise starting from the one towards leaf 0. Internal vertices
/// and edges are numbered in depth-first preorder (edge to the parent, then
/// the left subtree, then the right subtree), and this order of edges fixes
/// the orientation used by the Feynman integral.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneTree {
    pub leaf_count: usize,
    pub neighbors: Vec<[Vertex; 3]>,
    pub edges: Vec<(Vertex, Vertex)>,
}

#[derive(Clone, Debug)]
enum Shape {
    Leaf(usize),
    Node(Box<Shape>, Box<Shape>),
}

fn shapes(lo: usize, hi: usize) -> Vec<Shape> {
    if lo == hi {
        return vec![Shape::Leaf(lo)];
    }
    let mut out = Vec::new();
    for mid in lo..hi {
        for l in shapes(lo, mid) {
            for r in shapes(mid + 1, hi) {
                out.push(Shape::Node(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

fn build(shape: &Shape, parent: Vertex, tree: &mut PlaneTree) -> Vertex {
    match shape {
        Shape::Leaf(i) => {
            tree.edges.push((parent, Vertex::Leaf(*i)));
            Vertex::Leaf(*i)
        }
        Shape::Node(l, r) => {
            let me = Vertex::Internal(tree.neighbors.len());
            tree.neighbors.push([parent, parent, parent]);
            tree.edges.push((parent, me));
            let lv = build(l, me, tree);
            let rv = build(r, me, tree);
            let Vertex::Internal(k) = me else { unreachable!() };
            // counterclockwise with leaves numbered clockwise-increasing along the boundary
            tree.neighbors[k] = [parent, rv, lv];
            me
        }
    }
}

impl PlaneTree {
    pub fn internal_count(&self) -> usize {
        self.neighbors.len()
    }

    /// Neighbors of an internal vertex.
    pub fn adjacent(&self, k: usize) -> [Vertex; 3] {
        self.neighbors[k]
    }
}

/// Every plane trivalent tree with `n_leaves` boundary leaves.
pub fn enumerate_plane_trees(n_leaves: usize) -> Vec<PlaneTree> {
    assert!(n_leaves >= 2, "a plane tree needs at least two leaves");
    if n_leaves == 2 {
        return vec![PlaneTree {
            leaf_count: 2,
            neighbors: Vec::new(),
            edges: vec![(Vertex::Leaf(0), Vertex::Leaf(1))],
        }];
    }
    let n = n_leaves - 1;
    let mut out = Vec::new();
    for shape in shapes(1, n) {
        let mut tree = PlaneTree { leaf_count: n_leaves, neighbors: Vec::new(), edges: Vec::new() };
        // leaf 0 hangs off the root, so the root edge comes first
        let Shape::Node(l, r) = &shape else { unreachable!() };
        let root = Vertex::Internal(0);
        tree.neighbors.push([Vertex::Leaf(0); 3]);
        tree.edges.push((root, Vertex::Leaf(0)));
        let lv = build(l, root, &mut tree);
        let rv = build(r, root, &mut tree);
        tree.neighbors[0] = [Vertex::Leaf(0), rv, lv];
        out.push(tree);
    }
    out
}
