//! Undirected simple graphs on dense `0..n` labels.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// An undirected simple graph. Neighbor lists are kept sorted so every
/// traversal visits vertices in increasing id order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {u} {v} out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate edge at vertex {v}")));
            }
        }
        Ok(Self { adj })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph is simple")
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadParameter(format!("cycle needs n >= 3, got {n}")));
        }
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == k).then_some(k)
    }

    /// Distances from `source` by BFS.
    pub fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have a distance");
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn all_pairs_distances(&self) -> DistanceMatrix {
        let n = self.vertex_count();
        let mut dist = Vec::with_capacity(n * n);
        for x in 0..n {
            dist.extend(self.bfs(x));
        }
        DistanceMatrix { n, dist }
    }

    /// Largest distance between two vertices. The empty graph and `K_1`
    /// have diameter 0.
    pub fn diameter(&self) -> Result<u32> {
        self.all_pairs_distances().diameter()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    /// Subgraph induced on `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let n = self.vertex_count();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= n {
                return Err(Error::BadVertexList(format!("vertex {v} out of range")));
            }
            if position[v] != usize::MAX {
                return Err(Error::BadVertexList(format!("vertex {v} listed twice")));
            }
            position[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        for (i, &v) in vertices.iter().enumerate() {
            adj[i] = self.adj[v]
                .iter()
                .filter_map(|&w| (position[w] != usize::MAX).then_some(position[w]))
                .collect();
            adj[i].sort_unstable();
        }
        Ok(Graph { adj })
    }

    /// Relabels so that vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        Graph::new(
            self.vertex_count(),
            self.edges().map(|(u, v)| (perm[u], perm[v])),
        )
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            let mut queue = VecDeque::from([s]);
            dist[s] = 0;
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Parses the edge-list text format: `n <count>` then one `u v` pair
    /// per line with `u < v`. Lines starting with `#` are comments.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing `n <count>` header".into(),
        })?;
        let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["n", count] => parse_usize(count, line)?,
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected `n <count>`, got `{header}`"),
                })
            }
        };
        let mut edges = Vec::new();
        for (line, body) in lines {
            let fields: Vec<&str> = body.split_whitespace().collect();
            let [u, v] = fields.as_slice() else {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected `u v`, got `{body}`"),
                });
            };
            let (u, v) = (parse_usize(u, line)?, parse_usize(v, line)?);
            if u >= v {
                return Err(Error::Parse {
                    line,
                    msg: format!("edge `{u} {v}` must have u < v"),
                });
            }
            if v >= n {
                return Err(Error::Parse {
                    line,
                    msg: format!("vertex {v} out of range for n = {n}"),
                });
            }
            edges.push((u, v));
        }
        Graph::new(n, edges).map_err(|e| Error::Parse {
            line: 0,
            msg: e.to_string(),
        })
    }

    /// Canonical edge-list text, edges in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.vertex_count());
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}

pub(crate) fn parse_usize(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("`{s}` is not a non-negative integer"),
    })
}

/// Dense all-pairs shortest-path distances; `None` marks unreachable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<Option<u32>>,
}

impl DistanceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> Option<u32> {
        self.dist[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[Option<u32>] {
        &self.dist[x * self.n..(x + 1) * self.n]
    }

    pub fn first_unreachable(&self) -> Option<(usize, usize)> {
        let i = self.dist.iter().position(Option::is_none)?;
        Some((i / self.n, i % self.n))
    }

    pub fn diameter(&self) -> Result<u32> {
        if let Some((x, y)) = self.first_unreachable() {
            return Err(Error::DisconnectedGraph(x, y));
        }
        Ok(self.dist.iter().flatten().copied().max().unwrap_or(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_distances() {
        let d = Graph::path(3).all_pairs_distances();
        assert_eq!(d.get(0, 2), Some(2));
        assert_eq!(d.get(2, 0), Some(2));
        assert_eq!(Graph::path(3).diameter().unwrap(), 2);
    }

    #[test]
    fn disconnected_pairs_are_unreachable() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let d = g.all_pairs_distances();
        assert_eq!(d.get(0, 2), None);
        assert_eq!(d.get(0, 1), Some(1));
        assert!(matches!(g.diameter(), Err(Error::DisconnectedGraph(0, 2))));
        assert!(!g.is_connected());
    }

    #[test]
    fn complete_graph_has_diameter_one() {
        assert_eq!(Graph::complete(4).diameter().unwrap(), 1);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn induced_subgraph_of_k4() {
        let k3 = Graph::complete(4).induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(k3, Graph::complete(3));
        let g = Graph::complete(4);
        assert!(matches!(
            g.induced_subgraph(&[0, 0]),
            Err(Error::BadVertexList(_))
        ));
        assert!(matches!(
            g.induced_subgraph(&[4]),
            Err(Error::BadVertexList(_))
        ));
    }

    #[test]
    fn induced_subgraph_preserves_list_order() {
        let p = Graph::path(4);
        let sub = p.induced_subgraph(&[3, 2, 0]).unwrap();
        assert!(sub.has_edge(0, 1));
        assert_eq!(sub.edge_count(), 1);
    }

    #[test]
    fn girth_of_small_graphs() {
        assert_eq!(Graph::cycle(5).unwrap().girth(), Some(5));
        assert_eq!(Graph::complete(4).girth(), Some(3));
        assert_eq!(Graph::path(5).girth(), None);
    }

    #[test]
    fn edge_list_roundtrip() {
        let g = Graph::cycle(6).unwrap();
        let text = g.to_edge_list();
        assert!(text.starts_with("n 6\n0 1\n0 5\n"));
        assert!(text.ends_with("4 5\n"));
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_comments_and_errors() {
        let g = Graph::parse_edge_list("# triangle\nn 3\n0 1\n# chord\n1 2\n0 2\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        assert!(matches!(
            Graph::parse_edge_list("n 3\n1 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(Graph::parse_edge_list("3\n").is_err());
        assert!(Graph::parse_edge_list("n 2\n0 2\n").is_err());
        assert!(Graph::parse_edge_list("n 2\n0 1\n0 1\n").is_err());
        assert!(Graph::parse_edge_list("").is_err());
    }
}
