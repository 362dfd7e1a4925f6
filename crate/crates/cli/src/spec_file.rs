//! On-disk JSON form of a variety spec.

use std::collections::BTreeMap;

use frobtilt::rational::{from_wire, to_wire};
use frobtilt::{Error, Family, Generator, Generators, IntersectionTable, Monomial, VarietySpec};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietySpecFile {
    pub name: String,
    pub dim: usize,
    pub generators: Vec<Generator>,
    /// Monomial string (`"c1^2"`, `"c1*c2"`) to a `"num/den"` value.
    pub intersections: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
}

impl VarietySpecFile {
    pub fn parse(json: &str) -> Result<Self, Error> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_spec(&self) -> Result<VarietySpec, Error> {
        let gens = Generators::new(self.generators.clone())?;
        let mut table = IntersectionTable::new(&gens, self.dim);
        for (m, v) in &self.intersections {
            table.insert(Monomial::parse(m, &gens)?, from_wire(v)?)?;
        }
        VarietySpec::new(self.name.clone(), table, self.family)
    }

    pub fn from_spec(spec: &VarietySpec) -> Self {
        let table = spec.table();
        let gens = table.generators();
        VarietySpecFile {
            name: spec.name().to_string(),
            dim: spec.dim(),
            generators: gens.iter().cloned().collect(),
            intersections: table
                .iter()
                .map(|(m, v)| (m.display(gens).to_string(), to_wire(v)))
                .collect(),
            family: spec.family(),
        }
    }
}
