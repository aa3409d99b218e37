//! Named graph families behind a common trait, looked up by name at runtime.
//!
//! [`FamilyRegistry::builtin`] registers every construction in [`named`].
//! Callers may register extra families (an externally supplied edge list,
//! for instance) or replace a builtin under the same name.

pub mod named;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use named::{
    crown, hamming33, heawood, hoffman_singleton, hs_second_subconstituent, icosahedron,
    line_graph, petersen, petersen_line, second_subconstituent, sylvester,
};

/// A graph construction selectable by name.
pub trait GraphFamily: Send + Sync {
    fn name(&self) -> &str;

    fn description(&self) -> &str;

    /// Whether the family needs an integer size parameter.
    fn takes_parameter(&self) -> bool {
        false
    }

    fn build(&self, parameter: Option<usize>) -> Result<Graph>;
}

/// The families that ship with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Crown,
    Icosahedron,
    Heawood,
    Petersen,
    PetersenLine,
    Hamming33,
    Sylvester,
    HoffmanSingleton,
    HsSecondSubconstituent,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Crown,
        Family::Icosahedron,
        Family::Heawood,
        Family::Petersen,
        Family::PetersenLine,
        Family::Hamming33,
        Family::Sylvester,
        Family::HoffmanSingleton,
        Family::HsSecondSubconstituent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Crown => "crown",
            Family::Icosahedron => "icosahedron",
            Family::Heawood => "heawood",
            Family::Petersen => "petersen",
            Family::PetersenLine => "petersen_line",
            Family::Hamming33 => "hamming33",
            Family::Sylvester => "sylvester",
            Family::HoffmanSingleton => "hoffman_singleton",
            Family::HsSecondSubconstituent => "hs2nd",
        }
    }

    fn aliases(self) -> &'static [&'static str] {
        match self {
            Family::HsSecondSubconstituent => &["hs_second_subconstituent"],
            Family::PetersenLine => &["petersen-line"],
            Family::HoffmanSingleton => &["hoffman-singleton", "hs"],
            _ => &[],
        }
    }

    fn description(self) -> &'static str {
        match self {
            Family::Crown => "K_{n,n} minus a perfect matching (needs --n >= 3)",
            Family::Icosahedron => "icosahedral graph, 12 vertices",
            Family::Heawood => "Heawood graph, 14 vertices",
            Family::Petersen => "Petersen graph as Kneser K(5,2), 10 vertices",
            Family::PetersenLine => "line graph of the Petersen graph, 15 vertices",
            Family::Hamming33 => "Hamming graph H(3,3), 27 vertices",
            Family::Sylvester => "Sylvester graph, 36 vertices",
            Family::HoffmanSingleton => "Hoffman-Singleton graph, 50 vertices",
            Family::HsSecondSubconstituent => {
                "second subconstituent of Hoffman-Singleton, 42 vertices"
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s || f.aliases().contains(&s))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// A family together with its parameter; only crown graphs take one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub parameter: Option<usize>,
}

impl FamilySpec {
    pub fn new(family: Family, parameter: Option<usize>) -> Result<Self> {
        match (family, parameter) {
            (Family::Crown, Some(n)) if n >= 3 => {}
            (Family::Crown, Some(n)) => {
                return Err(Error::BadParameter(format!(
                    "crown graph needs n >= 3, got {n}"
                )))
            }
            (Family::Crown, None) => {
                return Err(Error::BadParameter(
                    "crown graph needs a size parameter".into(),
                ))
            }
            (f, Some(_)) => return Err(Error::BadParameter(format!("{f} takes no parameter"))),
            (_, None) => {}
        }
        Ok(Self { family, parameter })
    }

    pub fn fixed(family: Family) -> Self {
        Self::new(family, None).expect("parameterless family")
    }
}

/// Builds the graph named by `spec`.
pub fn generate(spec: FamilySpec) -> Result<Graph> {
    let spec = FamilySpec::new(spec.family, spec.parameter)?;
    Ok(match spec.family {
        Family::Crown => crown(spec.parameter.expect("validated"))?,
        Family::Icosahedron => icosahedron(),
        Family::Heawood => heawood(),
        Family::Petersen => petersen(),
        Family::PetersenLine => petersen_line(),
        Family::Hamming33 => hamming33(),
        Family::Sylvester => sylvester(),
        Family::HoffmanSingleton => hoffman_singleton(),
        Family::HsSecondSubconstituent => hs_second_subconstituent(),
    })
}

struct Builtin(Family);

impl GraphFamily for Builtin {
    fn name(&self) -> &str {
        self.0.name()
    }

    fn description(&self) -> &str {
        self.0.description()
    }

    fn takes_parameter(&self) -> bool {
        self.0 == Family::Crown
    }

    fn build(&self, parameter: Option<usize>) -> Result<Graph> {
        generate(FamilySpec::new(self.0, parameter)?)
    }
}

/// A family that always returns one stored graph, e.g. an ingested edge list.
pub struct FixedGraph {
    name: String,
    description: String,
    graph: Graph,
}

impl FixedGraph {
    pub fn new(name: impl Into<String>, description: impl Into<String>, graph: Graph) -> Self {
        Self {
            name: name.into(),
            description: description.into(),
            graph,
        }
    }
}

impl GraphFamily for FixedGraph {
    fn name(&self) -> &str {
        &self.name
    }

    fn description(&self) -> &str {
        &self.description
    }

    fn build(&self, parameter: Option<usize>) -> Result<Graph> {
        match parameter {
            None => Ok(self.graph.clone()),
            Some(_) => Err(Error::BadParameter(format!(
                "{} takes no parameter",
                self.name
            ))),
        }
    }
}

#[derive(Default)]
pub struct FamilyRegistry {
    families: BTreeMap<String, Box<dyn GraphFamily>>,
    aliases: BTreeMap<String, String>,
}

impl FamilyRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn builtin() -> Self {
        let mut registry = Self::new();
        for family in Family::ALL {
            registry.register(Box::new(Builtin(family)));
            for alias in family.aliases() {
                registry
                    .aliases
                    .insert(alias.to_string(), family.name().to_string());
            }
        }
        registry
    }

    /// Adds a family, replacing any previous one with the same name.
    pub fn register(&mut self, family: Box<dyn GraphFamily>) {
        self.families.insert(family.name().to_string(), family);
    }

    pub fn get(&self, name: &str) -> Result<&dyn GraphFamily> {
        let key = self.aliases.get(name).map_or(name, String::as_str);
        self.families
            .get(key)
            .map(Box::as_ref)
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))
    }

    pub fn build(&self, name: &str, parameter: Option<usize>) -> Result<Graph> {
        self.get(name)?.build(parameter)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.families.keys().map(String::as_str)
    }

    pub fn families(&self) -> impl Iterator<Item = &dyn GraphFamily> {
        self.families.values().map(Box::as_ref)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_spec_validation() {
        assert!(FamilySpec::new(Family::Crown, Some(3)).is_ok());
        assert!(matches!(
            FamilySpec::new(Family::Crown, Some(2)),
            Err(Error::BadParameter(_))
        ));
        assert!(FamilySpec::new(Family::Crown, None).is_err());
        assert!(FamilySpec::new(Family::Heawood, Some(4)).is_err());
    }

    #[test]
    fn generate_examples() {
        let g = generate(FamilySpec::new(Family::Crown, Some(5)).unwrap()).unwrap();
        assert_eq!((g.vertex_count(), g.regular_degree()), (10, Some(4)));
        let g = generate(FamilySpec::fixed(Family::PetersenLine)).unwrap();
        assert_eq!((g.vertex_count(), g.regular_degree()), (15, Some(4)));
        let g = generate(FamilySpec::fixed(Family::HsSecondSubconstituent)).unwrap();
        assert_eq!((g.vertex_count(), g.regular_degree()), (42, Some(6)));
    }

    #[test]
    fn registry_lookup_by_name_and_alias() {
        let reg = FamilyRegistry::builtin();
        assert_eq!(reg.names().count(), Family::ALL.len());
        assert_eq!(reg.build("hs2nd", None).unwrap().vertex_count(), 42);
        assert_eq!(
            reg.build("hs_second_subconstituent", None)
                .unwrap()
                .vertex_count(),
            42
        );
        assert!(reg.get("crown").unwrap().takes_parameter());
        assert_eq!(reg.build("crown", Some(4)).unwrap().vertex_count(), 8);
        assert!(matches!(reg.get("moscow"), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn registered_family_replaces_builtin() {
        let mut reg = FamilyRegistry::builtin();
        reg.register(Box::new(FixedGraph::new(
            "heawood",
            "stand-in",
            Graph::complete(3),
        )));
        assert_eq!(reg.build("heawood", None).unwrap(), Graph::complete(3));
        assert!(reg.build("heawood", Some(1)).is_err());
    }

    #[test]
    fn family_names_parse() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("johnson".parse::<Family>().is_err());
    }
}
