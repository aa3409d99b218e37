//! Fixed constructions with canonical labelings.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// `K_{n,n}` minus the perfect matching `{i, n+i}`. Left part is `0..n`,
/// right part is `n..2n`, edge `(i, n+j)` iff `i != j`.
pub fn crown(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::BadParameter(format!(
            "crown graph needs n >= 3, got {n}"
        )));
    }
    let edges = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, n + j)));
    Graph::new(2 * n, edges)
}

/// Pole 0, upper pentagon 1..=5, lower pentagon 6..=10, pole 11.
pub fn icosahedron() -> Graph {
    let mut edges = Vec::with_capacity(30);
    for i in 0..5 {
        let up = 1 + i;
        let up_next = 1 + (i + 1) % 5;
        let low = 6 + i;
        let low_next = 6 + (i + 1) % 5;
        edges.extend([(0, up), (up, up_next), (low, low_next), (low, 11)]);
        // antiprism band
        edges.extend([(up, low), (up, low_next)]);
    }
    Graph::new(12, edges).expect("icosahedron edge list is simple")
}

/// 14-cycle with chords `i ~ i+5` for even `i` (LCF `[5,-5]^7`).
pub fn heawood() -> Graph {
    let cycle = (0..14).map(|i| (i, (i + 1) % 14));
    let chords = (0..14).step_by(2).map(|i| (i, (i + 5) % 14));
    Graph::new(14, cycle.chain(chords)).expect("Heawood edge list is simple")
}

/// 2-subsets of `{0..4}` in lexicographic order.
fn pairs_of_five() -> Vec<(usize, usize)> {
    (0..5)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .collect()
}

/// Kneser graph K(5,2): 2-subsets of `{0..4}` in lexicographic order,
/// adjacent when disjoint.
pub fn petersen() -> Graph {
    let subsets = pairs_of_five();
    let disjoint =
        |(a, b): (usize, usize), (c, d): (usize, usize)| a != c && a != d && b != c && b != d;
    let mut edges = Vec::new();
    for (i, &s) in subsets.iter().enumerate() {
        for (j, &t) in subsets.iter().enumerate().skip(i + 1) {
            if disjoint(s, t) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(subsets.len(), edges).expect("Kneser graph is simple")
}

/// Line graph of a graph: vertex `i` is the `i`-th edge in lexicographic
/// order, adjacency is a shared endpoint.
pub fn line_graph(g: &Graph) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut adj = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                adj.push((i, j));
            }
        }
    }
    Graph::new(edges.len(), adj).expect("line graph is simple")
}

pub fn petersen_line() -> Graph {
    line_graph(&petersen())
}

/// H(3,3): vertex `9x + 3y + z` for `(x, y, z)` in `{0,1,2}^3`, adjacent when
/// the strings differ in exactly one coordinate.
pub fn hamming33() -> Graph {
    let digits = |v: usize| [v / 9, (v / 3) % 3, v % 3];
    let mut edges = Vec::new();
    for u in 0..27 {
        for v in u + 1..27 {
            let (du, dv) = (digits(u), digits(v));
            if du.iter().zip(&dv).filter(|(a, b)| a != b).count() == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::new(27, edges).expect("Hamming graph is simple")
}

/// Robertson's pentagon/pentagram construction. Pentagon vertex `(P,h,j)`
/// is `5h + j`, pentagram vertex `(Q,i,j)` is `25 + 5i + j`.
pub fn hoffman_singleton() -> Graph {
    let p = |h: usize, j: usize| 5 * h + j;
    let q = |i: usize, j: usize| 25 + 5 * i + j;
    let mut edges = Vec::with_capacity(175);
    for h in 0..5 {
        for j in 0..5 {
            edges.push((p(h, j), p(h, (j + 1) % 5)));
            edges.push((q(h, j), q(h, (j + 2) % 5)));
        }
    }
    for h in 0..5 {
        for j in 0..5 {
            for i in 0..5 {
                edges.push((p(h, j), q(i, (h * i + j) % 5)));
            }
        }
    }
    Graph::new(50, edges).expect("Hoffman-Singleton edge list is simple")
}

/// Subgraph induced on the vertices at distance exactly 2 from `v`, in
/// increasing original id order.
pub fn second_subconstituent(g: &Graph, v: usize) -> Result<Graph> {
    if v >= g.vertex_count() {
        return Err(Error::BadVertexList(format!("vertex {v} out of range")));
    }
    let dist = g.bfs(v);
    if let Some(u) = dist.iter().position(Option::is_none) {
        return Err(Error::DisconnectedGraph(v, u));
    }
    let layer: Vec<usize> = (0..g.vertex_count())
        .filter(|&x| dist[x] == Some(2))
        .collect();
    g.induced_subgraph(&layer)
}

pub fn hs_second_subconstituent() -> Graph {
    second_subconstituent(&hoffman_singleton(), 0).expect("Hoffman-Singleton is connected")
}

/// Vertices of the Hoffman-Singleton graph at distance at least 2 from both
/// ends of its least edge.
pub fn sylvester() -> Graph {
    let hs = hoffman_singleton();
    let (u, v) = hs.edges().next().expect("nonempty graph");
    let (du, dv) = (hs.bfs(u), hs.bfs(v));
    let far = |d: &Option<u32>| d.is_some_and(|d| d >= 2);
    let keep: Vec<usize> = (0..hs.vertex_count())
        .filter(|&x| far(&du[x]) && far(&dv[x]))
        .collect();
    hs.induced_subgraph(&keep)
        .expect("distinct in-range vertices")
}
