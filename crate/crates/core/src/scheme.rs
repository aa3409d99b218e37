//! Distance colorings, brute-force intersection numbers and intersection
//! arrays.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{parse_usize, Graph};

/// A symmetric coloring of the complete graph `K_n`. The diagonal carries
/// the identity color 0; off-diagonal pairs carry a diversity color in
/// `1..=m`, and each diversity color is used at least once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredCompleteGraph {
    n: usize,
    m: usize,
    color: Vec<u16>,
}

impl ColoredCompleteGraph {
    /// Validates and wraps a row-major `n x n` color matrix.
    pub fn new(n: usize, m: usize, color: Vec<u16>) -> Result<Self> {
        if color.len() != n * n {
            return Err(Error::InvalidColoring(format!(
                "expected {} entries, got {}",
                n * n,
                color.len()
            )));
        }
        if m > u16::MAX as usize {
            return Err(Error::InvalidColoring(format!("too many colors: {m}")));
        }
        let mut used = vec![false; m + 1];
        for x in 0..n {
            for y in 0..n {
                let c = color[x * n + y];
                if x == y {
                    if c != 0 {
                        return Err(Error::InvalidColoring(format!(
                            "diagonal entry ({x},{x}) has color {c}, expected 0"
                        )));
                    }
                    continue;
                }
                if c == 0 || c as usize > m {
                    return Err(Error::InvalidColoring(format!(
                        "pair ({x},{y}) has color {c} outside 1..={m}"
                    )));
                }
                if c != color[y * n + x] {
                    return Err(Error::InvalidColoring(format!(
                        "pair ({x},{y}) is not symmetric"
                    )));
                }
                used[c as usize] = true;
            }
        }
        if let Some(c) = (1..=m).find(|&c| !used[c]) {
            return Err(Error::InvalidColoring(format!("color {c} is never used")));
        }
        Ok(Self { n, m, color })
    }

    pub fn from_fn(n: usize, m: usize, f: impl Fn(usize, usize) -> u16) -> Result<Self> {
        let color = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                if x == y {
                    0
                } else {
                    f(x.min(y), x.max(y))
                }
            })
            .collect();
        Self::new(n, m, color)
    }

    pub fn point_count(&self) -> usize {
        self.n
    }

    /// Number of diversity colors.
    pub fn color_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u16 {
        self.color[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[u16] {
        &self.color[x * self.n..(x + 1) * self.n]
    }

    pub fn as_matrix(&self) -> &[u16] {
        &self.color
    }

    /// Unordered pairs `x < y` of color `c`.
    pub fn pairs_of_color(&self, c: u16) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |x| (x + 1..n).map(move |y| (x, y)))
            .filter(move |&(x, y)| self.get(x, y) == c)
    }

    /// Copy with the pair `{x, y}` recolored.
    pub fn with_recolored(&self, x: usize, y: usize, c: u16) -> Result<Self> {
        if x == y || x >= self.n || y >= self.n {
            return Err(Error::InvalidColoring(format!("cannot recolor ({x},{y})")));
        }
        let mut color = self.color.clone();
        color[x * self.n + y] = c;
        color[y * self.n + x] = c;
        Self::new(self.n, self.m, color)
    }

    /// Relabels so point `x` becomes `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut color = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                color[perm[x] * n + perm[y]] = self.get(x, y);
            }
        }
        Self::new(n, self.m, color)
    }

    /// Parses `n <count> colors <m>` followed by one `u v c` line per
    /// unordered pair `u < v`. Every pair must appear exactly once.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing `n <count> colors <m>` header".into(),
        })?;
        let (n, m) = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["n", n, "colors", m] => (parse_usize(n, line)?, parse_usize(m, line)?),
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected `n <count> colors <m>`, got `{header}`"),
                })
            }
        };
        let mut color = vec![0u16; n * n];
        let mut seen = vec![false; n * n];
        for (line, body) in lines {
            let fields: Vec<&str> = body.split_whitespace().collect();
            let [u, v, c] = fields.as_slice() else {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected `u v c`, got `{body}`"),
                });
            };
            let (u, v, c) = (
                parse_usize(u, line)?,
                parse_usize(v, line)?,
                parse_usize(c, line)?,
            );
            if u >= v || v >= n {
                return Err(Error::Parse {
                    line,
                    msg: format!("pair `{u} {v}` needs u < v < {n}"),
                });
            }
            if c == 0 || c > m {
                return Err(Error::Parse {
                    line,
                    msg: format!("color {c} outside 1..={m}"),
                });
            }
            if std::mem::replace(&mut seen[u * n + v], true) {
                return Err(Error::Parse {
                    line,
                    msg: format!("pair `{u} {v}` listed twice"),
                });
            }
            color[u * n + v] = c as u16;
            color[v * n + u] = c as u16;
        }
        let missing = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .find(|&(u, v)| !seen[u * n + v]);
        if let Some((u, v)) = missing {
            return Err(Error::Parse {
                line: 0,
                msg: format!("pair `{u} {v}` has no color"),
            });
        }
        Self::new(n, m, color).map_err(|e| Error::Parse {
            line: 0,
            msg: e.to_string(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n {} colors {}\n", self.n, self.m);
        for x in 0..self.n {
            for y in x + 1..self.n {
                writeln!(out, "{x} {y} {}", self.get(x, y)).unwrap();
            }
        }
        out
    }
}

/// Colors each pair by its graph distance; `m` is the diameter.
pub fn distance_coloring(g: &Graph) -> Result<ColoredCompleteGraph> {
    let dist = g.all_pairs_distances();
    let m = dist.diameter()?;
    let n = g.vertex_count();
    let color = (0..n * n)
        .map(|i| dist.get(i / n, i % n).expect("connected") as u16)
        .collect();
    ColoredCompleteGraph::new(n, m as usize, color)
}

/// Exact counts `p[h][i][j]` for colors `0..=d`, with layer sizes `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionTensor {
    d: usize,
    k: Vec<u64>,
    p: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    k: Vec<u64>,
    p: Vec<Vec<Vec<u64>>>,
}

impl IntersectionTensor {
    /// Builds a tensor from nested `p[h][i][j]`; `k[i]` is read off
    /// `p[0][i][i]`.
    pub fn from_nested(p: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        let size = p.len();
        if size == 0 {
            return Err(Error::InconsistentTensor("empty tensor".into()));
        }
        if p.iter()
            .any(|m| m.len() != size || m.iter().any(|r| r.len() != size))
        {
            return Err(Error::InconsistentTensor("tensor is not cubic".into()));
        }
        let k = (0..size).map(|i| p[0][i][i]).collect();
        let flat = p.into_iter().flatten().flatten().collect();
        Ok(Self {
            d: size - 1,
            k,
            p: flat,
        })
    }

    /// Number of diversity colors.
    pub fn diameter(&self) -> usize {
        self.d
    }

    pub fn layer_sizes(&self) -> &[u64] {
        &self.k
    }

    pub fn k(&self, i: usize) -> u64 {
        self.k[i]
    }

    #[inline]
    pub fn get(&self, h: usize, i: usize, j: usize) -> u64 {
        let s = self.d + 1;
        self.p[(h * s + i) * s + j]
    }

    pub fn set(&mut self, h: usize, i: usize, j: usize, value: u64) {
        let s = self.d + 1;
        self.p[(h * s + i) * s + j] = value;
    }

    pub fn point_count(&self) -> u64 {
        self.k.iter().sum()
    }

    pub fn nested(&self) -> Vec<Vec<Vec<u64>>> {
        let s = self.d + 1;
        (0..s)
            .map(|h| {
                (0..s)
                    .map(|i| (0..s).map(|j| self.get(h, i, j)).collect())
                    .collect()
            })
            .collect()
    }

    fn indices(&self) -> impl Iterator<Item = (usize, usize, usize)> {
        let s = self.d + 1;
        (0..s).flat_map(move |h| (0..s).flat_map(move |i| (0..s).map(move |j| (h, i, j))))
    }

    /// `k_h p^h_{ij} = k_i p^i_{hj}` for every index triple.
    pub fn check_khp_identity(&self) -> bool {
        self.indices().all(|(h, i, j)| {
            self.k[h] as u128 * self.get(h, i, j) as u128
                == self.k[i] as u128 * self.get(i, h, j) as u128
        })
    }

    /// `sum_j p^h_{ij} = k_i` for every `h, i`.
    pub fn row_sums_hold(&self) -> bool {
        let s = self.d + 1;
        (0..s).all(|h| (0..s).all(|i| (0..s).map(|j| self.get(h, i, j)).sum::<u64>() == self.k[i]))
    }

    pub fn is_symmetric(&self) -> bool {
        self.indices()
            .all(|(h, i, j)| self.get(h, i, j) == self.get(h, j, i))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TensorJson {
            k: self.k.clone(),
            p: self.nested(),
        })
        .expect("plain integers serialize")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let parsed: TensorJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InconsistentTensor(e.to_string()))?;
        let tensor = Self::from_nested(parsed.p)?;
        if tensor.k != parsed.k {
            return Err(Error::InconsistentTensor(
                "k does not match p[0][i][i]".into(),
            ));
        }
        Ok(tensor)
    }
}

impl Serialize for IntersectionTensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TensorJson {
            k: self.k.clone(),
            p: self.nested(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntersectionTensor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parsed = TensorJson::deserialize(d)?;
        let tensor = Self::from_nested(parsed.p).map_err(serde::de::Error::custom)?;
        if tensor.k != parsed.k {
            return Err(serde::de::Error::custom("k does not match p[0][i][i]"));
        }
        Ok(tensor)
    }
}

/// First index triple whose count differs between two base pairs of the
/// same color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonUniformReport {
    pub triple: [usize; 3],
    pub first_base: [usize; 2],
    pub first_count: u64,
    pub second_base: [usize; 2],
    pub second_count: u64,
}

impl fmt::Display for NonUniformReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [h, i, j] = self.triple;
        write!(
            f,
            "p^{h}_{{{i}{j}}} is {} over {:?} but {} over {:?}",
            self.first_count, self.first_base, self.second_count, self.second_base
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorOutcome {
    Uniform(IntersectionTensor),
    NonUniform(NonUniformReport),
}

impl TensorOutcome {
    pub fn is_uniform(&self) -> bool {
        matches!(self, TensorOutcome::Uniform(_))
    }

    pub fn tensor(&self) -> Option<&IntersectionTensor> {
        match self {
            TensorOutcome::Uniform(t) => Some(t),
            TensorOutcome::NonUniform(_) => None,
        }
    }

    pub fn into_tensor(self) -> Option<IntersectionTensor> {
        match self {
            TensorOutcome::Uniform(t) => Some(t),
            TensorOutcome::NonUniform(_) => None,
        }
    }
}

/// Counts `|{z : color(x,z) = i, color(z,y) = j}|` for every ordered pair
/// `(x, y)` and checks that the count depends only on `color(x,y)`.
///
/// Pairs are scanned in row-major order; the first pair of each color is
/// the baseline the others are compared against.
pub fn count_tensor(cg: &ColoredCompleteGraph) -> TensorOutcome {
    let n = cg.point_count();
    let s = cg.color_count() + 1;
    let mut baseline: Vec<Option<(usize, usize, Vec<u32>)>> = vec![None; s];
    let mut counts = vec![0u32; s * s];
    for x in 0..n {
        let row_x = cg.row(x);
        for y in 0..n {
            counts.iter_mut().for_each(|c| *c = 0);
            for z in 0..n {
                counts[row_x[z] as usize * s + cg.get(z, y) as usize] += 1;
            }
            let h = cg.get(x, y) as usize;
            match &baseline[h] {
                None => baseline[h] = Some((x, y, counts.clone())),
                Some((bx, by, base)) => {
                    if let Some(idx) = (0..s * s).find(|&idx| base[idx] != counts[idx]) {
                        return TensorOutcome::NonUniform(NonUniformReport {
                            triple: [h, idx / s, idx % s],
                            first_base: [*bx, *by],
                            first_count: base[idx] as u64,
                            second_base: [x, y],
                            second_count: counts[idx] as u64,
                        });
                    }
                }
            }
        }
    }
    let mut p = vec![0u64; s * s * s];
    for (h, entry) in baseline.iter().enumerate() {
        if let Some((_, _, base)) = entry {
            for (idx, &c) in base.iter().enumerate() {
                p[h * s * s + idx] = c as u64;
            }
        }
    }
    let k = (0..s).map(|i| p[i * s + i]).collect();
    TensorOutcome::Uniform(IntersectionTensor { d: s - 1, k, p })
}

/// Brute-force distance-regularity test; the outcome carries the tensor or
/// a witness.
pub fn distance_regularity(g: &Graph) -> Result<TensorOutcome> {
    Ok(count_tensor(&distance_coloring(g)?))
}

pub fn is_distance_regular(g: &Graph) -> Result<bool> {
    Ok(distance_regularity(g)?.is_uniform())
}

/// `{b_0, ..., b_{d-1}; c_1, ..., c_d}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntersectionArray {
    b: Vec<u64>,
    c: Vec<u64>,
}

impl IntersectionArray {
    /// `b` holds `b_0..b_{d-1}` and `c` holds `c_1..c_d`.
    pub fn new(b: Vec<u64>, c: Vec<u64>) -> Result<Self> {
        if b.is_empty() || b.len() != c.len() {
            return Err(Error::InvalidArray(format!(
                "need d >= 1 entries on each side, got {} and {}",
                b.len(),
                c.len()
            )));
        }
        if b.iter().chain(&c).any(|&v| v == 0) {
            return Err(Error::InvalidArray("entries must be positive".into()));
        }
        if c[0] != 1 {
            return Err(Error::InvalidArray(format!("c_1 must be 1, got {}", c[0])));
        }
        let arr = Self { b, c };
        for i in 0..=arr.diameter() {
            if arr.b(i) + arr.c(i) > arr.b(0) {
                return Err(Error::InvalidArray(format!(
                    "a_{i} = b_0 - b_{i} - c_{i} is negative"
                )));
            }
        }
        Ok(arr)
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    /// `b_i`, with `b_d = 0`.
    pub fn b(&self, i: usize) -> u64 {
        self.b.get(i).copied().unwrap_or(0)
    }

    /// `c_i`, with `c_0 = 0`.
    pub fn c(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }

    /// `a_i = b_0 - b_i - c_i`.
    pub fn a(&self, i: usize) -> u64 {
        self.b(0) - self.b(i) - self.c(i)
    }

    pub fn valency(&self) -> u64 {
        self.b(0)
    }

    /// `k_0 = 1`, `k_{i+1} = k_i b_i / c_{i+1}` with every division exact.
    pub fn layer_sizes(&self) -> Result<Vec<u64>> {
        let mut k = vec![1u64];
        for i in 0..self.diameter() {
            let numerator = k[i] as u128 * self.b(i) as u128;
            let denominator = self.c(i + 1) as u128;
            if !numerator.is_multiple_of(denominator) {
                return Err(Error::NonIntegralLayer {
                    index: i + 1,
                    numerator,
                    denominator,
                });
            }
            let next = u64::try_from(numerator / denominator)
                .map_err(|_| Error::InvalidArray(format!("k_{} overflows", i + 1)))?;
            k.push(next);
        }
        Ok(k)
    }

    pub fn vertex_count(&self) -> Result<u64> {
        Ok(self.layer_sizes()?.iter().sum())
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

impl FromStr for IntersectionArray {
    type Err = Error;

    /// Accepts `b0,b1,b2;c1,c2,c3`, optionally wrapped in braces.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse { line: 1, msg };
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let (bs, cs) = body
            .split_once(';')
            .ok_or_else(|| bad(format!("expected `b0,...;c1,...`, got `{s}`")))?;
        let numbers = |part: &str| -> Result<Vec<u64>> {
            part.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|_| bad(format!("`{t}` is not a positive integer")))
                })
                .collect()
        };
        IntersectionArray::new(numbers(bs)?, numbers(cs)?)
    }
}

impl Serialize for IntersectionArray {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntersectionArray {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Reads `b_i = p^i_{1,i+1}` and `c_i = p^i_{1,i-1}` off a distance-coloring
/// tensor and checks `a_i = p^i_{1,i}` against `b_0 - b_i - c_i`.
pub fn extract_array(t: &IntersectionTensor) -> Result<IntersectionArray> {
    let d = t.diameter();
    if d == 0 {
        return Err(Error::InconsistentTensor("no diversity colors".into()));
    }
    let b: Vec<u64> = (0..d).map(|i| t.get(i, 1, i + 1)).collect();
    let c: Vec<u64> = (1..=d).map(|i| t.get(i, 1, i - 1)).collect();
    for i in 0..=d {
        let bi = b.get(i).copied().unwrap_or(0);
        let ci = if i == 0 { 0 } else { c[i - 1] };
        let ai = t.get(i, 1, i);
        if ai + bi + ci != b[0] {
            return Err(Error::InconsistentTensor(format!(
                "a_{i} = {ai} but b_0 - b_{i} - c_{i} = {} - {bi} - {ci}",
                b[0]
            )));
        }
    }
    IntersectionArray::new(b, c).map_err(|e| Error::InconsistentTensor(e.to_string()))
}

pub fn layer_sizes(arr: &IntersectionArray) -> Result<Vec<u64>> {
    arr.layer_sizes()
}

pub fn check_khp_identity(t: &IntersectionTensor) -> bool {
    t.check_khp_identity()
}
