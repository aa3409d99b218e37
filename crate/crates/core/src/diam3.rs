//! Closed-form intersection numbers for diameter-3 distance-regular graphs
//! and the cycle table they determine.
//!
//! Atoms follow the distance convention `b` = 1, `a` = 2, `c` = 3. Every
//! formula is evaluated as an exact rational exactly as written and must
//! come out a non-negative integer.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scheme::{IntersectionArray, IntersectionTensor};

type Q = Ratio<i128>;

/// A diversity atom of a four-atom symmetric integral relation algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Atom {
    A,
    B,
    C,
}

impl Atom {
    pub const ALL: [Atom; 3] = [Atom::A, Atom::B, Atom::C];

    /// Graph distance carried by the atom.
    pub fn distance(self) -> usize {
        match self {
            Atom::B => 1,
            Atom::A => 2,
            Atom::C => 3,
        }
    }

    pub fn from_distance(d: usize) -> Option<Atom> {
        match d {
            1 => Some(Atom::B),
            2 => Some(Atom::A),
            3 => Some(Atom::C),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Atom::A => 'a',
            Atom::B => 'b',
            Atom::C => 'c',
        }
    }

    pub fn from_letter(ch: char) -> Option<Atom> {
        match ch {
            'a' => Some(Atom::A),
            'b' => Some(Atom::B),
            'c' => Some(Atom::C),
            _ => None,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// The ten diversity cycle types. `Xyy` means one `x` edge and two `y`
/// edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CycleType {
    Aaa,
    Bbb,
    Ccc,
    Abb,
    Baa,
    Acc,
    Caa,
    Bcc,
    Cbb,
    Abc,
}

impl CycleType {
    pub const ALL: [CycleType; 10] = [
        CycleType::Aaa,
        CycleType::Bbb,
        CycleType::Ccc,
        CycleType::Abb,
        CycleType::Baa,
        CycleType::Acc,
        CycleType::Caa,
        CycleType::Bcc,
        CycleType::Cbb,
        CycleType::Abc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CycleType::Aaa => "aaa",
            CycleType::Bbb => "bbb",
            CycleType::Ccc => "ccc",
            CycleType::Abb => "abb",
            CycleType::Baa => "baa",
            CycleType::Acc => "acc",
            CycleType::Caa => "caa",
            CycleType::Bcc => "bcc",
            CycleType::Cbb => "cbb",
            CycleType::Abc => "abc",
        }
    }

    pub fn atoms(self) -> [Atom; 3] {
        let mut chars = self
            .name()
            .chars()
            .map(|c| Atom::from_letter(c).expect("atom letter"));
        [
            chars.next().unwrap(),
            chars.next().unwrap(),
            chars.next().unwrap(),
        ]
    }

    /// The cycle whose edge multiset is `atoms`, in any order.
    pub fn from_atoms(atoms: [Atom; 3]) -> CycleType {
        let mut key = atoms;
        key.sort();
        CycleType::ALL
            .into_iter()
            .find(|t| {
                let mut other = t.atoms();
                other.sort();
                other == key
            })
            .expect("every multiset of three atoms is a cycle type")
    }

    /// Sorted distance triple of the cycle's edges.
    pub fn distances(self) -> [usize; 3] {
        let mut d = self.atoms().map(Atom::distance);
        d.sort();
        d
    }

    /// The `(h, i, j)` whose positivity decides the cycle in the summary
    /// table of simplest criteria.
    pub fn relevant_number(self) -> (usize, usize, usize) {
        self.criteria()[0]
    }

    /// Every intersection number `p^h_{ij}` (with `i <= j`) whose positivity
    /// is equivalent to the cycle occurring.
    pub fn criteria(self) -> &'static [(usize, usize, usize)] {
        match self {
            CycleType::Aaa => &[(2, 2, 2)],
            CycleType::Bbb => &[(1, 1, 1)],
            CycleType::Ccc => &[(3, 3, 3)],
            CycleType::Abb => &[(1, 1, 2), (2, 1, 1)],
            CycleType::Baa => &[(2, 1, 2), (1, 2, 2)],
            CycleType::Acc => &[(3, 2, 3), (2, 3, 3)],
            CycleType::Caa => &[(3, 2, 2), (2, 2, 3)],
            CycleType::Bcc => &[(3, 1, 3), (1, 3, 3)],
            CycleType::Cbb => &[(1, 1, 3), (3, 1, 1)],
            CycleType::Abc => &[(2, 1, 3), (1, 2, 3), (3, 1, 2)],
        }
    }

    /// Applies an atom renaming.
    pub fn renamed(self, map: impl Fn(Atom) -> Atom) -> CycleType {
        CycleType::from_atoms(self.atoms().map(map))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CycleType {
    type Err = Error;

    /// Accepts any ordering of the three letters, e.g. `bab` for `abb`.
    fn from_str(s: &str) -> Result<Self> {
        let letters: Vec<Atom> = s.trim().chars().filter_map(Atom::from_letter).collect();
        match letters.as_slice() {
            [x, y, z] if s.trim().chars().count() == 3 => Ok(CycleType::from_atoms([*x, *y, *z])),
            _ => Err(Error::Parse {
                line: 1,
                msg: format!("`{s}` is not a cycle over a, b, c"),
            }),
        }
    }
}

impl Serialize for CycleType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for CycleType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Mandatory diversity cycles; the other cycle types are forbidden.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CycleTable {
    mandatory: BTreeSet<CycleType>,
}

impl CycleTable {
    pub fn new(mandatory: impl IntoIterator<Item = CycleType>) -> Self {
        Self {
            mandatory: mandatory.into_iter().collect(),
        }
    }

    pub fn mandatory(&self) -> &BTreeSet<CycleType> {
        &self.mandatory
    }

    pub fn forbidden(&self) -> BTreeSet<CycleType> {
        CycleType::ALL
            .into_iter()
            .filter(|t| !self.mandatory.contains(t))
            .collect()
    }

    pub fn is_mandatory(&self, t: CycleType) -> bool {
        self.mandatory.contains(&t)
    }

    pub fn renamed(&self, map: impl Fn(Atom) -> Atom + Copy) -> CycleTable {
        CycleTable::new(self.mandatory.iter().map(|t| t.renamed(map)))
    }

    /// Mandatory cycles in the fixed ten-type order.
    pub fn mandatory_names(&self) -> Vec<&'static str> {
        CycleType::ALL
            .into_iter()
            .filter(|t| self.mandatory.contains(t))
            .map(CycleType::name)
            .collect()
    }

    pub fn forbidden_names(&self) -> Vec<&'static str> {
        CycleType::ALL
            .into_iter()
            .filter(|t| !self.mandatory.contains(t))
            .map(CycleType::name)
            .collect()
    }
}

impl FromStr for CycleTable {
    type Err = Error;

    /// Comma- or whitespace-separated cycle names, optionally bracketed.
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<BTreeSet<_>>>()
            .map(|mandatory| CycleTable { mandatory })
    }
}

#[derive(Serialize, Deserialize)]
struct CycleTableJson {
    mandatory: Vec<CycleType>,
    forbidden: Vec<CycleType>,
}

impl Serialize for CycleTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycleTableJson {
            mandatory: CycleType::ALL
                .into_iter()
                .filter(|t| self.is_mandatory(*t))
                .collect(),
            forbidden: CycleType::ALL
                .into_iter()
                .filter(|t| !self.is_mandatory(*t))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycleTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = CycleTableJson::deserialize(d)?;
        let table = CycleTable::new(json.mandatory);
        let forbidden: BTreeSet<CycleType> = json.forbidden.into_iter().collect();
        if table.forbidden() != forbidden {
            return Err(serde::de::Error::custom(
                "forbidden is not the complement of mandatory",
            ));
        }
        Ok(table)
    }
}

/// Closed-form `p^h_{ij}` for `h, i, j` in `1..=3` from a diameter-3 array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diam3Formulas {
    array: IntersectionArray,
    k: [u64; 4],
    p: [[[u64; 3]; 3]; 3],
}

fn checked(entry: String, value: Q) -> Result<u64> {
    if !value.is_integer() {
        return Err(Error::NonIntegralEntry {
            entry,
            value: value.to_string(),
        });
    }
    let v = value.to_integer();
    if v < 0 {
        return Err(Error::NegativeEntry {
            entry,
            value: v.to_string(),
        });
    }
    u64::try_from(v).map_err(|_| Error::InvalidArray(format!("{entry} overflows")))
}

fn q(v: u64) -> Q {
    Q::from_integer(v as i128)
}

/// `p^3_{23}` before substituting `a_2 = b_0 - b_2 - c_2`.
pub fn p23_3_unsimplified(arr: &IntersectionArray) -> Result<Q> {
    if arr.diameter() != 3 {
        return Err(Error::InvalidArray(format!(
            "diameter {} != 3",
            arr.diameter()
        )));
    }
    let (b0, b1) = (q(arr.b(0)), q(arr.b(1)));
    let (c2, c3) = (q(arr.c(2)), q(arr.c(3)));
    let (a1, a2, a3) = (q(arr.a(1)), q(arr.a(2)), q(arr.a(3)));
    Ok(b0 * b1 / c2 - c3 - c3 * (a2 + a3 - a1) / c2)
}

impl Diam3Formulas {
    pub fn array(&self) -> &IntersectionArray {
        &self.array
    }

    pub fn layer_sizes(&self) -> [u64; 4] {
        self.k
    }

    /// `p^h_{ij}` for `h, i, j` in `1..=3`.
    pub fn get(&self, h: usize, i: usize, j: usize) -> u64 {
        self.p[h - 1][i - 1][j - 1]
    }

    /// The full `(d+1)^3` tensor, filling index-0 entries from their
    /// definitions (`p^0_{ij} = k_i [i=j]`, `p^h_{0j} = [h=j]`,
    /// `p^h_{i0} = [h=i]`).
    pub fn to_tensor(&self) -> IntersectionTensor {
        let nested = (0..4)
            .map(|h| {
                (0..4)
                    .map(|i| {
                        (0..4)
                            .map(|j| match (h, i, j) {
                                (0, i, j) => {
                                    if i == j {
                                        self.k[i]
                                    } else {
                                        0
                                    }
                                }
                                (h, 0, j) => u64::from(h == j),
                                (h, i, 0) => u64::from(h == i),
                                (h, i, j) => self.get(h, i, j),
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        IntersectionTensor::from_nested(nested).expect("4x4x4 tensor")
    }

    /// Entries keyed `"p^h_ij"` for JSON output.
    pub fn entries(&self) -> Vec<(String, u64)> {
        let mut out = Vec::new();
        for h in 1..=3 {
            for i in 1..=3 {
                for j in i..=3 {
                    out.push((format!("p^{h}_{i}{j}"), self.get(h, i, j)));
                }
            }
        }
        out
    }
}

/// Evaluates every diversity intersection number of a diameter-3 array.
pub fn closed_form_tensor(arr: &IntersectionArray) -> Result<Diam3Formulas> {
    if arr.diameter() != 3 {
        return Err(Error::InvalidArray(format!(
            "closed forms need diameter 3, got {}",
            arr.diameter()
        )));
    }
    let (b0, b1, b2) = (q(arr.b(0)), q(arr.b(1)), q(arr.b(2)));
    let (c2, c3) = (q(arr.c(2)), q(arr.c(3)));
    let (a1, a2, a3) = (q(arr.a(1)), q(arr.a(2)), q(arr.a(3)));
    let zero = Q::from_integer(0);

    let k3 = b0 * b1 * b2 / (c2 * c3);

    // base b, distance 1
    let p1_11 = a1;
    let p1_12 = b1;
    let p1_13 = zero;
    let p1_22 = b1 * a2 / c2;
    let p1_23 = b1 * b2 / c2;
    let p1_33 = b1 * b2 * a3 / (c2 * c3);

    // base a, distance 2
    let p2_11 = c2;
    let p2_12 = a2;
    let p2_13 = b2;
    let p2_22 = (b1 * c2 + a2 * a2 + b2 * c3 - b0 - a1 * a2) / c2;
    let p2_23 = b2 * (a2 + a3 - a1) / c2;
    let p2_33 = k3 - b2 - b2 * (a2 + a3 - a1) / c2;

    // base c, distance 3
    let p3_11 = zero;
    let p3_12 = c3;
    let p3_13 = a3;
    let p3_22 = c3 * (a2 + a3 - a1) / c2;
    let p3_23 = (a3 * (a3 - a1) + b2 * c3 - b0) / c2;
    let p3_33 = k3 - 1 - a3 - (a3 * (a3 - a1) + b2 * c3 - b0) / c2;

    let unsimplified = p23_3_unsimplified(arr)?;
    if unsimplified != p3_23 {
        return Err(Error::FormulaMismatch {
            entry: "p^3_23".into(),
            left: p3_23.to_string(),
            right: unsimplified.to_string(),
        });
    }

    let rows = [
        [
            (1, 1, p1_11),
            (1, 2, p1_12),
            (1, 3, p1_13),
            (2, 2, p1_22),
            (2, 3, p1_23),
            (3, 3, p1_33),
        ],
        [
            (1, 1, p2_11),
            (1, 2, p2_12),
            (1, 3, p2_13),
            (2, 2, p2_22),
            (2, 3, p2_23),
            (3, 3, p2_33),
        ],
        [
            (1, 1, p3_11),
            (1, 2, p3_12),
            (1, 3, p3_13),
            (2, 2, p3_22),
            (2, 3, p3_23),
            (3, 3, p3_33),
        ],
    ];
    let mut p = [[[0u64; 3]; 3]; 3];
    for (h, row) in rows.into_iter().enumerate() {
        for (i, j, value) in row {
            let v = checked(format!("p^{}_{i}{j}", h + 1), value)?;
            p[h][i - 1][j - 1] = v;
            p[h][j - 1][i - 1] = v;
        }
    }
    let k = arr.layer_sizes()?;
    Ok(Diam3Formulas {
        array: arr.clone(),
        k: [k[0], k[1], k[2], k[3]],
        p,
    })
}

/// A cycle is mandatory iff its relevant intersection number is positive.
pub fn cycle_table(arr: &IntersectionArray) -> Result<CycleTable> {
    let f = closed_form_tensor(arr)?;
    Ok(cycle_table_from(|h, i, j| f.get(h, i, j)))
}

/// Positivity pattern of a (brute-force) diameter-3 tensor.
pub fn cycle_table_of_tensor(t: &IntersectionTensor) -> Result<CycleTable> {
    if t.diameter() != 3 {
        return Err(Error::InconsistentTensor(format!(
            "cycle tables need 3 diversity colors, got {}",
            t.diameter()
        )));
    }
    Ok(cycle_table_from(|h, i, j| t.get(h, i, j)))
}

fn cycle_table_from(p: impl Fn(usize, usize, usize) -> u64) -> CycleTable {
    CycleTable::new(CycleType::ALL.into_iter().filter(|t| {
        let (h, i, j) = t.relevant_number();
        p(h, i, j) > 0
    }))
}

/// One product `x;y` of diversity atoms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Composition {
    pub left: Atom,
    pub right: Atom,
    pub identity: bool,
    pub atoms: Vec<Atom>,
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        if self.identity {
            terms.push("1'".into());
        }
        terms.extend(self.atoms.iter().map(Atom::to_string));
        let rhs = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        write!(f, "{};{} = {rhs}", self.left, self.right)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionTable {
    pub products: Vec<Composition>,
}

impl CompositionTable {
    pub fn product(&self, x: Atom, y: Atom) -> &Composition {
        let (x, y) = (x.min(y), x.max(y));
        self.products
            .iter()
            .find(|c| c.left == x && c.right == y)
            .expect("every pair is listed")
    }
}

impl fmt::Display for CompositionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.products {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `x;y` contains `z` iff `{x, y, z}` is a mandatory cycle, and contains the
/// identity iff `x = y`.
pub fn composition_table(ct: &CycleTable) -> CompositionTable {
    let mut products = Vec::new();
    for (n, &x) in Atom::ALL.iter().enumerate() {
        for &y in &Atom::ALL[n..] {
            let atoms = Atom::ALL
                .into_iter()
                .filter(|&z| ct.is_mandatory(CycleType::from_atoms([x, y, z])))
                .collect();
            products.push(Composition {
                left: x,
                right: y,
                identity: x == y,
                atoms,
            });
        }
    }
    CompositionTable { products }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn array(s: &str) -> IntersectionArray {
        s.parse().unwrap()
    }

    fn table(s: &str) -> CycleTable {
        s.parse().unwrap()
    }

    #[test]
    fn hs_second_subconstituent_entries() {
        let f = closed_form_tensor(&array("6,5,1;1,1,6")).unwrap();
        assert_eq!(f.get(2, 2, 2), 21);
        assert_eq!(f.get(2, 3, 3), 0);
        assert_eq!(f.get(2, 2, 3), 4);
        assert_eq!(f.get(3, 3, 3), 4);
        assert_eq!(f.get(3, 2, 3), 0);
        assert_eq!(f.layer_sizes(), [1, 6, 30, 5]);
    }

    #[test]
    fn heawood_entries() {
        let f = closed_form_tensor(&array("3,2,2;1,1,3")).unwrap();
        assert_eq!(f.get(3, 2, 3), 3);
        assert_eq!(f.get(3, 2, 2), 0);
        assert_eq!(f.get(3, 3, 3), 0);
    }

    #[test]
    fn structural_zeros() {
        for s in [
            "6,5,1;1,1,6",
            "3,2,2;1,1,3",
            "110,81,12;1,18,90",
            "4,2,1;1,1,4",
        ] {
            let f = closed_form_tensor(&array(s)).unwrap();
            assert_eq!(f.get(1, 1, 3), 0);
            assert_eq!(f.get(3, 1, 1), 0);
        }
    }

    #[test]
    fn rejects_infeasible_arrays() {
        assert_eq!(
            closed_form_tensor(&array("3,1,1;1,1,1")).unwrap_err(),
            Error::NegativeEntry {
                entry: "p^2_22".into(),
                value: "-1".into()
            }
        );
        assert_eq!(
            closed_form_tensor(&array("4,1,1;1,2,1")).unwrap_err(),
            Error::NonIntegralEntry {
                entry: "p^1_22".into(),
                value: "1/2".into()
            }
        );
        assert!(closed_form_tensor(&array("3,2;1,1")).is_err());
    }

    #[test]
    fn unsimplified_form_agrees() {
        for s in [
            "6,5,1;1,1,6",
            "3,2,2;1,1,3",
            "110,81,12;1,18,90",
            "5,4,2;1,1,4",
            "6,4,2;1,2,3",
        ] {
            let a = array(s);
            let f = closed_form_tensor(&a).unwrap();
            assert_eq!(
                p23_3_unsimplified(&a).unwrap(),
                Q::from_integer(f.get(3, 2, 3) as i128)
            );
        }
    }

    #[test]
    fn cycle_tables_from_arrays() {
        assert_eq!(
            cycle_table(&array("6,5,1;1,1,6")).unwrap(),
            table("aaa,ccc,abb,baa,caa,abc")
        );
        for n in 3..30u64 {
            let a = IntersectionArray::new(vec![n - 1, n - 2, 1], vec![1, n - 2, n - 1]).unwrap();
            assert_eq!(
                cycle_table(&a).unwrap(),
                table("aaa abb abc"),
                "crown n={n}"
            );
        }
        assert_eq!(
            cycle_table(&array("110,81,12;1,18,90")).unwrap(),
            table("aaa,bbb,abb,baa,acc,caa,bcc,abc")
        );
    }

    #[test]
    fn cycle_type_parsing() {
        assert_eq!("bab".parse::<CycleType>().unwrap(), CycleType::Abb);
        assert_eq!("cba".parse::<CycleType>().unwrap(), CycleType::Abc);
        assert!("ab".parse::<CycleType>().is_err());
        assert!("abd".parse::<CycleType>().is_err());
        assert!("abbb".parse::<CycleType>().is_err());
        for t in CycleType::ALL {
            assert_eq!(t.name().parse::<CycleType>().unwrap(), t);
            let (h, i, j) = t.relevant_number();
            let mut d = [h, i, j];
            d.sort();
            assert_eq!(d, t.distances());
        }
    }

    #[test]
    fn composition_of_3065() {
        let ct = composition_table(&table("aaa,ccc,abb,baa,caa,abc"));
        let rendered = ct.to_string();
        assert_eq!(
            rendered,
            "a;a = 1' + a + b + c\na;b = a + b + c\na;c = a + b\nb;b = 1' + a\nb;c = a\nc;c = 1' + c\n"
        );
    }

    #[test]
    fn composition_edge_cases() {
        let empty = composition_table(&CycleTable::default());
        assert_eq!(empty.product(Atom::A, Atom::A).to_string(), "a;a = 1'");
        assert_eq!(empty.product(Atom::A, Atom::B).to_string(), "a;b = 0");
        let crown = composition_table(&table("aaa,abb,abc"));
        assert_eq!(crown.product(Atom::C, Atom::B).atoms, vec![Atom::A]);
    }

    #[test]
    fn cycle_table_json() {
        let ct = table("abc aaa");
        let json = serde_json::to_value(&ct).unwrap();
        assert_eq!(json["mandatory"], serde_json::json!(["aaa", "abc"]));
        assert_eq!(json["forbidden"].as_array().unwrap().len(), 8);
        assert_eq!(serde_json::from_value::<CycleTable>(json).unwrap(), ct);
    }
}
