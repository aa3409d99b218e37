//! Four-atom algebra catalog and representation checks on colored complete
//! graphs.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diam3::{Atom, CycleTable, CycleType};
use crate::error::{Error, Result};
use crate::scheme::{ColoredCompleteGraph, IntersectionTensor};

use CycleType::*;

/// One row of the catalog of mandatory diversity cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub mandatory: &'static [CycleType],
}

impl CatalogEntry {
    pub fn table(&self) -> CycleTable {
        CycleTable::new(self.mandatory.iter().copied())
    }
}

/// The eight algebras, in Maddux's numbering, whose representations come
/// out of the distance-regular construction.
pub const CATALOG: [CatalogEntry; 8] = [
    CatalogEntry {
        name: "26_65",
        mandatory: &[Aaa, Abb, Abc],
    },
    CatalogEntry {
        name: "27_65",
        mandatory: &[Aaa, Bbb, Abb, Baa, Abc],
    },
    CatalogEntry {
        name: "28_65",
        mandatory: &[Aaa, Abb, Acc, Abc],
    },
    CatalogEntry {
        name: "30_65",
        mandatory: &[Aaa, Ccc, Abb, Baa, Caa, Abc],
    },
    CatalogEntry {
        name: "31_65",
        mandatory: &[Aaa, Bbb, Ccc, Abb, Baa, Caa, Abc],
    },
    CatalogEntry {
        name: "57_65",
        mandatory: &[Aaa, Bbb, Abb, Baa, Acc, Caa, Bcc, Abc],
    },
    CatalogEntry {
        name: "59_65",
        mandatory: &[Aaa, Ccc, Abb, Baa, Acc, Caa, Bcc, Abc],
    },
    CatalogEntry {
        name: "61_65",
        mandatory: &[Aaa, Bbb, Ccc, Abb, Baa, Acc, Caa, Bcc, Abc],
    },
];

/// Normalizes `30_65`, `30₆₅` and `3065`-style spellings.
fn normalize_name(name: &str) -> String {
    const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    let mut out = String::new();
    let mut in_subscript = false;
    for ch in name.trim().chars() {
        if let Some(d) = SUBSCRIPTS.iter().position(|&s| s == ch) {
            if !in_subscript {
                out.push('_');
                in_subscript = true;
            }
            out.push(char::from(b'0' + d as u8));
        } else {
            out.push(ch);
        }
    }
    if !out.contains('_') && out.len() == 4 && out.chars().all(|c| c.is_ascii_digit()) {
        out.insert(2, '_');
    }
    out
}

pub fn catalog_entry(name: &str) -> Result<&'static CatalogEntry> {
    let key = normalize_name(name);
    CATALOG
        .iter()
        .find(|e| e.name == key)
        .ok_or_else(|| Error::UnknownAlgebra(name.to_string()))
}

/// Mandatory cycles over diversity colors `1..=colors`, as sorted color
/// triples. Every other triple is forbidden.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSpec {
    colors: usize,
    mandatory: BTreeSet<[u16; 3]>,
}

fn sorted(mut t: [u16; 3]) -> [u16; 3] {
    t.sort_unstable();
    t
}

impl CycleSpec {
    pub fn new(colors: usize, triples: impl IntoIterator<Item = [u16; 3]>) -> Result<Self> {
        let mut mandatory = BTreeSet::new();
        for t in triples {
            if t.iter().any(|&c| c == 0 || c as usize > colors) {
                return Err(Error::BadParameter(format!(
                    "cycle {t:?} uses a color outside 1..={colors}"
                )));
            }
            mandatory.insert(sorted(t));
        }
        Ok(Self { colors, mandatory })
    }

    /// Maps atoms to colors by distance (`b` = 1, `a` = 2, `c` = 3).
    pub fn from_table(table: &CycleTable) -> Self {
        let triples = table
            .mandatory()
            .iter()
            .map(|t| t.distances().map(|d| d as u16));
        Self::new(3, triples).expect("distances are 1..=3")
    }

    /// Triples `{h, i, j}` of diversity colors with `p^h_{ij} > 0`.
    pub fn from_tensor(t: &IntersectionTensor) -> Self {
        let d = t.diameter();
        let mut triples = Vec::new();
        for h in 1..=d {
            for i in 1..=d {
                for j in 1..=d {
                    if t.get(h, i, j) > 0 {
                        triples.push([h as u16, i as u16, j as u16]);
                    }
                }
            }
        }
        Self::new(d, triples).expect("colors in range")
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn is_mandatory(&self, t: [u16; 3]) -> bool {
        self.mandatory.contains(&sorted(t))
    }

    pub fn mandatory(&self) -> &BTreeSet<[u16; 3]> {
        &self.mandatory
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    MissingMandatory,
    ForbiddenPresent,
}

/// `triple` is `[color(u,v), color(u,apex), color(apex,v)]` with
/// `base = [u, v]`. A missing mandatory cycle has no apex; its last two
/// colors are the legs that could not be completed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub triple: [u16; 3],
    pub base: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apex: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepReport {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    pub violations: Vec<Violation>,
    /// Set when more violations exist than were recorded.
    #[serde(default)]
    pub truncated: bool,
}

impl RepReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub const DEFAULT_VIOLATION_CAP: usize = 10;

/// Checks that every base pair of every color in a mandatory cycle extends
/// to that cycle (in both leg orders), and that no triangle anywhere forms
/// a forbidden cycle. Violations are recorded in pair scan order up to
/// `cap`.
pub fn verify_representation_capped(
    cg: &ColoredCompleteGraph,
    spec: &CycleSpec,
    cap: usize,
) -> Result<RepReport> {
    let m = cg.color_count();
    if spec.colors() != m {
        return Err(Error::ColorCountMismatch {
            expected: spec.colors(),
            actual: m,
        });
    }
    let n = cg.point_count();
    let s = m + 1;
    // for each base color h, the (i, j) leg orders that must be present
    let mut required: Vec<Vec<(u16, u16)>> = vec![Vec::new(); s];
    for &[x, y, z] in spec.mandatory() {
        for (h, i, j) in [(x, y, z), (y, x, z), (z, x, y)] {
            let list = &mut required[h as usize];
            for legs in [(i, j), (j, i)] {
                if !list.contains(&legs) {
                    list.push(legs);
                }
            }
        }
    }

    let mut violations = Vec::new();
    let mut total = 0usize;
    let mut record = |v: Violation| {
        total += 1;
        if violations.len() < cap {
            violations.push(v);
        }
    };
    let mut present = vec![false; s * s];
    for x in 0..n {
        for y in x + 1..n {
            let h = cg.get(x, y);
            present.iter_mut().for_each(|p| *p = false);
            for z in 0..n {
                present[cg.get(x, z) as usize * s + cg.get(z, y) as usize] = true;
            }
            for &(i, j) in &required[h as usize] {
                if !present[i as usize * s + j as usize] {
                    record(Violation {
                        kind: ViolationKind::MissingMandatory,
                        triple: [h, i, j],
                        base: [x, y],
                        apex: None,
                    });
                }
            }
            for z in y + 1..n {
                let (i, j) = (cg.get(x, z), cg.get(z, y));
                if !spec.is_mandatory([h, i, j]) {
                    record(Violation {
                        kind: ViolationKind::ForbiddenPresent,
                        triple: [h, i, j],
                        base: [x, y],
                        apex: Some(z),
                    });
                }
            }
        }
    }
    Ok(RepReport {
        status: if total == 0 {
            Status::Pass
        } else {
            Status::Fail
        },
        algebra: None,
        violations,
        truncated: total > cap,
    })
}

pub fn verify_representation(cg: &ColoredCompleteGraph, spec: &CycleSpec) -> Result<RepReport> {
    verify_representation_capped(cg, spec, DEFAULT_VIOLATION_CAP)
}

/// Verifies against a catalog algebra using the distance letter convention.
pub fn verify_against(cg: &ColoredCompleteGraph, algebra: &str) -> Result<RepReport> {
    let entry = catalog_entry(algebra)?;
    let mut report = verify_representation(cg, &CycleSpec::from_table(&entry.table()))?;
    report.algebra = Some(entry.name.to_string());
    Ok(report)
}

/// Images of `a`, `b`, `c` under an atom renaming.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomPermutation(pub [Atom; 3]);

impl AtomPermutation {
    pub const IDENTITY: AtomPermutation = AtomPermutation([Atom::A, Atom::B, Atom::C]);

    /// All six renamings, identity first.
    pub fn all() -> [AtomPermutation; 6] {
        use Atom::*;
        [
            AtomPermutation([A, B, C]),
            AtomPermutation([A, C, B]),
            AtomPermutation([B, A, C]),
            AtomPermutation([B, C, A]),
            AtomPermutation([C, A, B]),
            AtomPermutation([C, B, A]),
        ]
    }

    pub fn apply(self, atom: Atom) -> Atom {
        let idx = Atom::ALL.iter().position(|&a| a == atom).expect("atom");
        self.0[idx]
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }
}

impl fmt::Display for AtomPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "a->{a} b->{b} c->{c}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identification {
    pub name: String,
    /// Renaming that carries the input table onto the catalog row.
    pub permutation: AtomPermutation,
}

/// Matches a cycle table against the catalog, allowing any renaming of the
/// three atoms. The identity renaming is tried first.
pub fn identify(ct: &CycleTable) -> Option<Identification> {
    for perm in AtomPermutation::all() {
        let renamed = ct.renamed(|a| perm.apply(a));
        if let Some(entry) = CATALOG.iter().find(|e| e.table() == renamed) {
            return Some(Identification {
                name: entry.name.to_string(),
                permutation: perm,
            });
        }
    }
    None
}

/// Connected components of the graph of `color`-edges, each sorted, ordered
/// by least vertex. Isolated vertices form singleton components.
pub fn color_components(cg: &ColoredCompleteGraph, color: u16) -> Vec<Vec<usize>> {
    let n = cg.point_count();
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut head = 0;
        while head < members.len() {
            let u = members[head];
            head += 1;
            for (w, c) in comp.iter_mut().enumerate() {
                if *c == usize::MAX && cg.get(u, w) == color {
                    *c = id;
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

fn is_clique(cg: &ColoredCompleteGraph, members: &[usize], color: u16) -> bool {
    members
        .iter()
        .enumerate()
        .all(|(i, &u)| members[i + 1..].iter().all(|&v| cg.get(u, v) == color))
}

const B: u16 = 1;
const A: u16 = 2;
const C: u16 = 3;

fn require_three_colors(cg: &ColoredCompleteGraph) -> Result<()> {
    if cg.color_count() != 3 {
        return Err(Error::ColorCountMismatch {
            expected: 3,
            actual: cg.color_count(),
        });
    }
    Ok(())
}

/// Clique/matching structure: `c`-edges form disjoint cliques, `b`-edges
/// between any two cliques form a perfect matching, and every other edge
/// between cliques is `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueMatchingReport {
    pub components_are_cliques: bool,
    /// Sizes of the `c`-cliques, ascending.
    pub clique_sizes: Vec<usize>,
    pub clique_pairs: usize,
    pub imperfect_matchings: usize,
    pub non_a_cross_edges: usize,
}

impl CliqueMatchingReport {
    pub fn holds(&self) -> bool {
        self.components_are_cliques && self.imperfect_matchings == 0 && self.non_a_cross_edges == 0
    }
}

pub fn check_3065_structure(cg: &ColoredCompleteGraph) -> Result<CliqueMatchingReport> {
    require_three_colors(cg)?;
    let comps = color_components(cg, C);
    let components_are_cliques = comps.iter().all(|m| is_clique(cg, m, C));
    let mut clique_sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    clique_sizes.sort_unstable();

    let mut imperfect_matchings = 0;
    let mut non_a_cross_edges = 0;
    let mut clique_pairs = 0;
    for (i, p) in comps.iter().enumerate() {
        for q in &comps[i + 1..] {
            clique_pairs += 1;
            let b_degree =
                |u: usize, other: &[usize]| other.iter().filter(|&&v| cg.get(u, v) == B).count();
            let perfect = p.len() == q.len()
                && p.iter().all(|&u| b_degree(u, q) == 1)
                && q.iter().all(|&v| b_degree(v, p) == 1);
            if !perfect {
                imperfect_matchings += 1;
            }
            non_a_cross_edges += p
                .iter()
                .flat_map(|&u| q.iter().map(move |&v| (u, v)))
                .filter(|&(u, v)| !matches!(cg.get(u, v), A | B))
                .count();
        }
    }
    Ok(CliqueMatchingReport {
        components_are_cliques,
        clique_sizes,
        clique_pairs,
        imperfect_matchings,
        non_a_cross_edges,
    })
}

/// Instance-level consequences of the lower bound for `31_65`: `c`-edges
/// form disjoint cliques, each of size at least 3, at least 5 of them, so
/// at least 15 points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub components_are_cliques: bool,
    pub clique_sizes: Vec<usize>,
    pub clique_count: usize,
    pub point_count: usize,
    pub cliques_at_least_3: bool,
    pub at_least_5_cliques: bool,
    pub at_least_15_points: bool,
}

impl MinimalityReport {
    pub fn holds(&self) -> bool {
        self.components_are_cliques
            && self.cliques_at_least_3
            && self.at_least_5_cliques
            && self.at_least_15_points
    }
}

pub fn check_3165_minimality_properties(cg: &ColoredCompleteGraph) -> Result<MinimalityReport> {
    require_three_colors(cg)?;
    let comps = color_components(cg, C);
    let mut clique_sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    clique_sizes.sort_unstable();
    Ok(MinimalityReport {
        components_are_cliques: comps.iter().all(|m| is_clique(cg, m, C)),
        cliques_at_least_3: clique_sizes.iter().all(|&s| s >= 3),
        at_least_5_cliques: comps.len() >= 5,
        at_least_15_points: cg.point_count() >= 15,
        clique_count: comps.len(),
        point_count: cg.point_count(),
        clique_sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::scheme::distance_coloring;

    fn table(s: &str) -> CycleTable {
        s.parse().unwrap()
    }

    fn hs2_coloring() -> ColoredCompleteGraph {
        distance_coloring(&generators::hs_second_subconstituent()).unwrap()
    }

    fn petersen_line_coloring() -> ColoredCompleteGraph {
        distance_coloring(&generators::petersen_line()).unwrap()
    }

    #[test]
    fn catalog_names() {
        assert_eq!(catalog_entry("30_65").unwrap().name, "30_65");
        assert_eq!(catalog_entry("30₆₅").unwrap().name, "30_65");
        assert_eq!(catalog_entry("3165").unwrap().name, "31_65");
        assert!(matches!(
            catalog_entry("29_65"),
            Err(Error::UnknownAlgebra(_))
        ));
    }

    #[test]
    fn catalog_never_needs_cbb() {
        assert!(CATALOG.iter().all(|e| !e.mandatory.contains(&Cbb)));
    }

    #[test]
    fn identify_examples() {
        let id = identify(&table("aaa,abb,abc")).unwrap();
        assert_eq!(id.name, "26_65");
        assert!(id.permutation.is_identity());
        assert_eq!(
            identify(&table("aaa,bbb,ccc,abb,baa,caa,abc"))
                .unwrap()
                .name,
            "31_65"
        );
        assert_eq!(identify(&table("cbb")), None);
    }

    #[test]
    fn identify_under_renaming() {
        // 26_65 with b and c swapped
        let swapped = table("aaa,acc,abc");
        let id = identify(&swapped).unwrap();
        assert_eq!(id.name, "26_65");
        assert_eq!(id.permutation.0, [Atom::A, Atom::C, Atom::B]);
    }

    #[test]
    fn hs2_is_3065() {
        let report = verify_against(&hs2_coloring(), "30_65").unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.algebra.as_deref(), Some("30_65"));
    }

    #[test]
    fn hs2_is_not_3165() {
        let report = verify_against(&hs2_coloring(), "31_65").unwrap();
        assert!(!report.passed());
        assert!(report
            .violations
            .iter()
            .all(|v| v.kind == ViolationKind::MissingMandatory));
        assert!(report.violations.iter().all(|v| v.triple == [1, 1, 1]));
        assert!(report.truncated);
        assert_eq!(report.violations.len(), DEFAULT_VIOLATION_CAP);
    }

    #[test]
    fn petersen_line_is_3165() {
        assert!(verify_against(&petersen_line_coloring(), "31_65")
            .unwrap()
            .passed());
    }

    #[test]
    fn recolored_edge_breaks_3065() {
        let cg = hs2_coloring();
        let (x, y) = cg.pairs_of_color(A).next().unwrap();
        let bad = cg.with_recolored(x, y, B).unwrap();
        let report = verify_against(&bad, "30_65").unwrap();
        assert_eq!(report.status, Status::Fail);
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn color_count_mismatch() {
        let k4 = distance_coloring(&crate::Graph::complete(4)).unwrap();
        assert!(matches!(
            verify_against(&k4, "30_65"),
            Err(Error::ColorCountMismatch {
                expected: 3,
                actual: 1
            })
        ));
        assert!(check_3065_structure(&k4).is_err());
    }

    #[test]
    fn general_color_count() {
        // the pentagon: 1;1 = 1' + 2, 2;2 = 1' + 1, 1;2 = 1 + 2
        let c5 = distance_coloring(&crate::Graph::cycle(5).unwrap()).unwrap();
        let spec = CycleSpec::new(2, [[1, 1, 2], [1, 2, 2]]).unwrap();
        assert!(verify_representation(&c5, &spec).unwrap().passed());
        let wrong = CycleSpec::new(2, [[1, 1, 2]]).unwrap();
        let report = verify_representation(&c5, &wrong).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| v.kind == ViolationKind::ForbiddenPresent && v.apex.is_some()));
        assert!(CycleSpec::new(2, [[1, 1, 3]]).is_err());
    }

    #[test]
    fn hs2_clique_structure() {
        let r = check_3065_structure(&hs2_coloring()).unwrap();
        assert_eq!(r.clique_sizes, vec![6; 7]);
        assert_eq!(r.clique_pairs, 21);
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn petersen_line_clique_structure() {
        // each vertex has one b-neighbour in each of the other four c-triangles
        let r = check_3065_structure(&petersen_line_coloring()).unwrap();
        assert_eq!(r.clique_sizes, vec![3; 5]);
        assert_eq!(r.imperfect_matchings, 0);
    }

    #[test]
    fn single_clique_structure() {
        let k3 = ColoredCompleteGraph::from_fn(3, 3, |_, _| C);
        assert!(k3.is_err(), "colors 1 and 2 unused");
        let cg = ColoredCompleteGraph::from_fn(4, 3, |x, y| match (x, y) {
            (0, 1) => B,
            (0, 2) => A,
            _ => C,
        })
        .unwrap();
        let comps = color_components(&cg, C);
        assert_eq!(comps, vec![vec![0, 1, 2, 3]]);
        let r = check_3065_structure(&cg).unwrap();
        assert!(!r.components_are_cliques);
        assert_eq!(r.clique_pairs, 0);
    }

    #[test]
    fn minimality_on_petersen_line() {
        let r = check_3165_minimality_properties(&petersen_line_coloring()).unwrap();
        assert_eq!(r.clique_sizes, vec![3; 5]);
        assert_eq!((r.clique_count, r.point_count), (5, 15));
        assert!(r.holds());
    }

    #[test]
    fn minimality_flags_small_instances() {
        // 12 points: four c-triangles, all cross edges b
        let cg = ColoredCompleteGraph::from_fn(12, 3, |x, y| {
            if x / 3 == y / 3 {
                C
            } else if (x + y) % 2 == 0 {
                A
            } else {
                B
            }
        })
        .unwrap();
        let r = check_3165_minimality_properties(&cg).unwrap();
        assert!(r.components_are_cliques && r.cliques_at_least_3);
        assert!(!r.at_least_5_cliques);
        assert!(!r.at_least_15_points);
        assert!(!r.holds());
    }
}
