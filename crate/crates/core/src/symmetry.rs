//! Automorphism groups of colorings, orbitals on ordered pairs, and the
//! distance-transitivity and algebraicity tests.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scheme::ColoredCompleteGraph;

/// A permutation of `0..n` in image notation: `x` maps to `images[x]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::BadParameter(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self` after `other`: `x -> self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn preserves(&self, cg: &ColoredCompleteGraph) -> bool {
        preserves(self, cg.point_count(), cg.as_matrix())
    }
}

fn preserves(p: &Permutation, n: usize, color: &[u16]) -> bool {
    p.degree() == n
        && (0..n).all(|x| (0..n).all(|y| color[p.apply(x) * n + p.apply(y)] == color[x * n + y]))
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Generators of a permutation group of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationSet {
    n: usize,
    generators: Vec<Permutation>,
}

impl PermutationSet {
    pub fn new(n: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != n) {
            return Err(Error::BadParameter(format!(
                "generator of degree {} in a set of degree {n}",
                g.degree()
            )));
        }
        Ok(Self { n, generators })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Group order by Schreier-Sims over the generators alone.
    pub fn order(&self) -> u128 {
        StabilizerChain::build(self).order()
    }

    /// Orbit of `x`, sorted.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[x] = true;
        let mut orbit = vec![x];
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            head += 1;
            for g in &self.generators {
                let z = g.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    orbit.push(z);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    /// One `g: i0 i1 ...` line per generator.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for g in &self.generators {
            out.push_str(&format!("g: {g}\n"));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut n = None;
        let mut generators = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("g:") {
                let images = rest
                    .split_whitespace()
                    .map(|t| crate::graph::parse_usize(t, lineno))
                    .collect::<Result<Vec<_>>>()?;
                generators.push(Permutation::new(images).map_err(|e| Error::Parse {
                    line: lineno,
                    msg: e.to_string(),
                })?);
            } else if let Some(rest) = line.strip_prefix('n') {
                n = Some(crate::graph::parse_usize(rest.trim(), lineno)?);
            } else {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unexpected line '{line}'"),
                });
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 1,
            msg: "missing 'n <count>' header".into(),
        })?;
        Self::new(n, generators)
    }
}

struct Level {
    base: usize,
    generators: Vec<Permutation>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Permutation>>,
}

/// Knuth's incremental Schreier-Sims.
struct StabilizerChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    fn build(ps: &PermutationSet) -> Self {
        let mut chain = Self {
            n: ps.degree(),
            levels: Vec::new(),
        };
        for g in ps.generators() {
            chain.insert(g.clone(), 0);
        }
        chain
    }

    fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// `g` lies in the stabilizer of the base points above level `i`.
    /// A residue that fails to sift at level `j` becomes a strong
    /// generator of every level from `i` to `j`.
    fn insert(&mut self, g: Permutation, i: usize) {
        let mut h = g;
        let mut j = i;
        loop {
            if h.is_identity() {
                return;
            }
            if j == self.levels.len() {
                let base = (0..self.n)
                    .find(|&x| h.apply(x) != x)
                    .expect("non-identity");
                let mut transversal = vec![None; self.n];
                transversal[base] = Some(Permutation::identity(self.n));
                self.levels.push(Level {
                    base,
                    generators: Vec::new(),
                    orbit: vec![base],
                    transversal,
                });
                break;
            }
            let level = &self.levels[j];
            match &level.transversal[h.apply(level.base)] {
                Some(u) => {
                    h = u.inverse().compose(&h);
                    j += 1;
                }
                None => break,
            }
        }
        for l in i..=j {
            self.levels[l].generators.push(h.clone());
        }
        for l in (i..=j).rev() {
            self.extend_orbit(l);
        }
    }

    /// Closes the orbit at level `i` under its newest generator, sifting
    /// the Schreier generators this produces into level `i + 1`.
    fn extend_orbit(&mut self, i: usize) {
        let gi = self.levels[i].generators.len() - 1;
        let mut work: VecDeque<(usize, usize)> =
            self.levels[i].orbit.iter().map(|&b| (b, gi)).collect();
        while let Some((b, si)) = work.pop_front() {
            let level = &mut self.levels[i];
            let s = level.generators[si].clone();
            let c = s.apply(b);
            let ub = level.transversal[b].clone().expect("orbit point");
            match &level.transversal[c] {
                None => {
                    level.transversal[c] = Some(s.compose(&ub));
                    level.orbit.push(c);
                    work.extend((0..level.generators.len()).map(|k| (c, k)));
                }
                Some(uc) => {
                    let schreier = uc.inverse().compose(&s).compose(&ub);
                    self.insert(schreier, i + 1);
                }
            }
        }
    }
}

/// Union of all ordered pairs reachable from one another under the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitalPartition {
    n: usize,
    id: Vec<usize>,
    count: usize,
}

impl OrbitalPartition {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn orbital(&self, x: usize, y: usize) -> usize {
        self.id[x * self.n + y]
    }

    /// Least pair (row-major) of each orbital, indexed by orbital id.
    pub fn representatives(&self) -> Vec<(usize, usize)> {
        let mut reps = vec![None; self.count];
        for (p, &o) in self.id.iter().enumerate() {
            reps[o].get_or_insert((p / self.n, p % self.n));
        }
        reps.into_iter()
            .map(|r| r.expect("nonempty orbital"))
            .collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count];
        for &o in &self.id {
            sizes[o] += 1;
        }
        sizes
    }

    /// Whether every orbital lies inside one color class.
    pub fn refines(&self, cg: &ColoredCompleteGraph) -> bool {
        let reps = self.representatives();
        (0..self.n * self.n).all(|p| {
            let (x, y) = reps[self.id[p]];
            cg.as_matrix()[p] == cg.get(x, y)
        })
    }

    pub fn summary(&self) -> OrbitalSummary {
        let orbitals = self
            .representatives()
            .into_iter()
            .zip(self.sizes())
            .enumerate()
            .map(|(id, ((x, y), size))| OrbitalSample {
                id,
                size,
                sample: [x, y],
            })
            .collect();
        OrbitalSummary {
            count: self.count,
            orbitals,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitalSample {
    pub id: usize,
    pub size: usize,
    pub sample: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitalSummary {
    pub count: usize,
    pub orbitals: Vec<OrbitalSample>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbits of the generated group on ordered pairs, numbered by least pair.
pub fn orbitals(ps: &PermutationSet) -> OrbitalPartition {
    let n = ps.degree();
    let mut parent: Vec<usize> = (0..n * n).collect();
    for g in ps.generators() {
        for x in 0..n {
            for y in 0..n {
                let a = find(&mut parent, x * n + y);
                let b = find(&mut parent, g.apply(x) * n + g.apply(y));
                if a != b {
                    let (lo, hi) = (a.min(b), a.max(b));
                    parent[hi] = lo;
                }
            }
        }
    }
    let mut number: BTreeMap<usize, usize> = BTreeMap::new();
    let id: Vec<usize> = (0..n * n)
        .map(|p| {
            let root = find(&mut parent, p);
            let next = number.len();
            *number.entry(root).or_insert(next)
        })
        .collect();
    OrbitalPartition {
        n,
        id,
        count: number.len(),
    }
}

/// Sequence of generator indices carrying `(x, y)` to `(u, v)`, if any.
pub fn orbital_witness(
    ps: &PermutationSet,
    from: (usize, usize),
    to: (usize, usize),
) -> Option<Vec<usize>> {
    let n = ps.degree();
    let key = |(x, y): (usize, usize)| x * n + y;
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n * n];
    let mut seen = vec![false; n * n];
    seen[key(from)] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(pair) = queue.pop_front() {
        if pair == to {
            let mut word = Vec::new();
            let mut cur = key(pair);
            while let Some((p, g)) = prev[cur] {
                word.push(g);
                cur = p;
            }
            word.reverse();
            return Some(word);
        }
        for (gi, g) in ps.generators().iter().enumerate() {
            let next = (g.apply(pair.0), g.apply(pair.1));
            if !std::mem::replace(&mut seen[key(next)], true) {
                prev[key(next)] = Some((key(pair), gi));
                queue.push_back(next);
            }
        }
    }
    None
}

pub const DEFAULT_MAX_VERTICES: usize = 200;

/// Generators together with the base and basic orbit lengths found by the
/// search; the product of the orbit lengths is the group order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismGroup {
    pub generators: PermutationSet,
    pub base: Vec<usize>,
    pub orbit_lengths: Vec<usize>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> u128 {
        self.orbit_lengths.iter().map(|&l| l as u128).product()
    }
}

/// Backtracking search over individualization/refinement trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AutomorphismSearch {
    pub max_vertices: Option<usize>,
}

impl Default for AutomorphismSearch {
    fn default() -> Self {
        Self {
            max_vertices: Some(DEFAULT_MAX_VERTICES),
        }
    }
}

impl AutomorphismSearch {
    pub fn unbounded() -> Self {
        Self { max_vertices: None }
    }

    fn guard(&self, n: usize) -> Result<()> {
        match self.max_vertices {
            Some(limit) if n > limit => Err(Error::SizeGuard { n, limit }),
            _ => Ok(()),
        }
    }

    pub fn coloring_group(&self, cg: &ColoredCompleteGraph) -> Result<AutomorphismGroup> {
        self.guard(cg.point_count())?;
        Ok(Search::new(cg.point_count(), cg.as_matrix()).run())
    }

    /// Adjacency group: diagonal, edge and non-edge colors.
    pub fn graph_group(&self, g: &Graph) -> Result<AutomorphismGroup> {
        let n = g.vertex_count();
        self.guard(n)?;
        let matrix = adjacency_colors(g);
        Ok(Search::new(n, &matrix).run())
    }

    pub fn is_distance_transitive(&self, g: &Graph) -> Result<bool> {
        let dist = g.all_pairs_distances();
        let d = dist.diameter()? as usize;
        let group = self.graph_group(g)?;
        let orb = orbitals(&group.generators);
        if orb.count() != d + 1 {
            return Ok(false);
        }
        let reps = orb.representatives();
        let n = g.vertex_count();
        Ok((0..n).all(|x| {
            (0..n).all(|y| {
                let (u, v) = reps[orb.orbital(x, y)];
                dist.get(x, y) == dist.get(u, v)
            })
        }))
    }

    pub fn is_algebraic(&self, cg: &ColoredCompleteGraph) -> Result<bool> {
        let group = self.coloring_group(cg)?;
        let orb = orbitals(&group.generators);
        Ok(orb.count() == cg.color_count() + 1 && orb.refines(cg))
    }
}

fn adjacency_colors(g: &Graph) -> Vec<u16> {
    let n = g.vertex_count();
    let mut m = vec![2u16; n * n];
    for x in 0..n {
        m[x * n + x] = 0;
        for &y in g.neighbors(x) {
            m[x * n + y] = 1;
        }
    }
    m
}

pub fn automorphism_group(cg: &ColoredCompleteGraph) -> Result<AutomorphismGroup> {
    AutomorphismSearch::default().coloring_group(cg)
}

pub fn automorphism_generators(cg: &ColoredCompleteGraph) -> Result<PermutationSet> {
    Ok(automorphism_group(cg)?.generators)
}

pub fn graph_automorphism_group(g: &Graph) -> Result<AutomorphismGroup> {
    AutomorphismSearch::default().graph_group(g)
}

pub fn graph_automorphism_generators(g: &Graph) -> Result<PermutationSet> {
    Ok(graph_automorphism_group(g)?.generators)
}

/// Orbitals of `Aut(g)` coincide with the distance classes.
pub fn is_distance_transitive(g: &Graph) -> Result<bool> {
    AutomorphismSearch::default().is_distance_transitive(g)
}

/// Every color class, the diagonal included, is a single orbital of the
/// coloring's automorphism group.
pub fn is_algebraic(cg: &ColoredCompleteGraph) -> Result<bool> {
    AutomorphismSearch::default().is_algebraic(cg)
}

/// Ordered partition of the points with cells in a canonical order.
#[derive(Clone)]
struct Partition {
    cells: Vec<Vec<usize>>,
}

impl Partition {
    fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// First smallest non-singleton cell.
    fn target_cell(&self) -> Option<usize> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
    }

    fn individualize(&self, cell: usize, v: usize) -> Partition {
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        for (i, c) in self.cells.iter().enumerate() {
            if i == cell {
                cells.push(vec![v]);
                cells.push(c.iter().copied().filter(|&x| x != v).collect());
            } else {
                cells.push(c.clone());
            }
        }
        Partition { cells }
    }
}

struct Search<'a> {
    n: usize,
    colors: usize,
    matrix: &'a [u16],
}

struct Node {
    partition: Partition,
    trace: u64,
}

impl<'a> Search<'a> {
    fn new(n: usize, matrix: &'a [u16]) -> Self {
        let colors = matrix.iter().copied().max().map_or(1, |c| c as usize + 1);
        Self { n, colors, matrix }
    }

    /// Splits cells by (cell, color, count) profiles until stable. The
    /// returned hash depends only on the labeling-invariant split history.
    fn refine(&self, mut p: Partition) -> Node {
        let mut hasher = DefaultHasher::new();
        loop {
            let k = p.cells.len();
            let mut cell_of = vec![0usize; self.n];
            for (i, c) in p.cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = i;
                }
            }
            let profile = |v: usize| -> Vec<u32> {
                let mut counts = vec![0u32; k * self.colors];
                let row = &self.matrix[v * self.n..(v + 1) * self.n];
                for (w, &c) in row.iter().enumerate() {
                    counts[cell_of[w] * self.colors + c as usize] += 1;
                }
                counts
            };
            let mut next = Vec::with_capacity(k);
            let mut split = false;
            for (i, cell) in p.cells.iter().enumerate() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut groups: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
                for &v in cell {
                    groups.entry(profile(v)).or_default().push(v);
                }
                if groups.len() > 1 {
                    split = true;
                    (i, groups.len()).hash(&mut hasher);
                    for (sig, members) in &groups {
                        sig.hash(&mut hasher);
                        members.len().hash(&mut hasher);
                    }
                }
                next.extend(groups.into_values());
            }
            p.cells = next;
            if !split {
                break;
            }
            0usize.hash(&mut hasher);
        }
        p.cells.len().hash(&mut hasher);
        Node {
            partition: p,
            trace: hasher.finish(),
        }
    }

    fn leaf_permutation(&self, first: &Partition, leaf: &Partition) -> Option<Permutation> {
        let mut images = vec![0; self.n];
        for (a, b) in first.cells.iter().zip(&leaf.cells) {
            images[a[0]] = b[0];
        }
        let p = Permutation(images);
        preserves(&p, self.n, self.matrix).then_some(p)
    }

    /// Depth-first search below `node` (at `depth` on the first path) for an
    /// automorphism whose leaf matches the first leaf.
    fn find_automorphism(&self, path: &[Node], depth: usize, node: &Node) -> Option<Permutation> {
        if node.partition.is_discrete() {
            let first = &path.last().expect("nonempty path").partition;
            return self.leaf_permutation(first, &node.partition);
        }
        let cell = node.partition.target_cell().expect("not discrete");
        for &v in &node.partition.cells[cell] {
            let child = self.refine(node.partition.individualize(cell, v));
            if child.trace != path[depth + 1].trace
                || child.partition.cells.len() != path[depth + 1].partition.cells.len()
            {
                continue;
            }
            if let Some(p) = self.find_automorphism(path, depth + 1, &child) {
                return Some(p);
            }
        }
        None
    }

    fn run(&self) -> AutomorphismGroup {
        let n = self.n;
        let mut path = vec![self.refine(Partition {
            cells: if n == 0 {
                vec![]
            } else {
                vec![(0..n).collect()]
            },
        })];
        let mut base = Vec::new();
        let mut targets = Vec::new();
        while let Some(cell) = path.last().unwrap().partition.target_cell() {
            let parent = &path.last().unwrap().partition;
            let v = parent.cells[cell][0];
            base.push(v);
            targets.push(cell);
            let child = self.refine(parent.individualize(cell, v));
            path.push(child);
        }

        let mut generators: Vec<Permutation> = Vec::new();
        let mut orbit_lengths = vec![0; base.len()];
        for level in (0..base.len()).rev() {
            let candidates = path[level].partition.cells[targets[level]].clone();
            let mut orbit = orbit_of(n, &generators, base[level]);
            for &w in &candidates {
                if orbit[w] {
                    continue;
                }
                let child = self.refine(path[level].partition.individualize(targets[level], w));
                if child.trace != path[level + 1].trace {
                    continue;
                }
                if let Some(p) = self.find_automorphism(&path, level + 1, &child) {
                    generators.push(p);
                    orbit = orbit_of(n, &generators, base[level]);
                }
            }
            orbit_lengths[level] = orbit.iter().filter(|&&b| b).count();
        }
        generators.reverse();
        AutomorphismGroup {
            generators: PermutationSet { n, generators },
            base,
            orbit_lengths,
        }
    }
}

fn orbit_of(n: usize, generators: &[Permutation], x: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in generators {
            let z = g.apply(y);
            if !seen[z] {
                seen[z] = true;
                stack.push(z);
            }
        }
    }
    seen
}
