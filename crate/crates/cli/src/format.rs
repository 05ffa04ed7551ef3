//! JSON file formats. Unknown keys are rejected so that typos in fixtures
//! surface as errors instead of silently changing a computation.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use bmtop_core::bridge::{SimplicialChain, SimplicialCochain};
use bmtop_core::complex::{SimplicialComplex, Subcomplex, VertexId};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A vertex token: a JSON integer or a nonempty string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Token {
    Int(i64),
    Name(String),
}

impl From<&VertexId> for Token {
    fn from(v: &VertexId) -> Self {
        match v {
            VertexId::Int(i) => Token::Int(*i),
            VertexId::Name(s) => Token::Name(s.clone()),
        }
    }
}

impl Token {
    fn to_vertex(&self) -> Result<VertexId, CliError> {
        match self {
            Token::Int(i) => Ok(VertexId::Int(*i)),
            Token::Name(s) if s.is_empty() => Err(CliError::Input("empty vertex token".into())),
            Token::Name(s) if s.contains(',') => Err(CliError::Input(format!(
                "vertex token {s:?} contains a comma"
            ))),
            Token::Name(s) => Ok(VertexId::Name(s.clone())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub name: String,
    /// Maximal simplices; faces are implied.
    pub simplices: Vec<Vec<Token>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_order: Option<Vec<Token>>,
}

/// Values of a chain or cochain, keyed by comma-joined increasing tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellValuesFile {
    pub degree: i64,
    pub values: BTreeMap<String, i64>,
}

fn tuples(simplices: &[Vec<Token>]) -> Result<Vec<Vec<VertexId>>, CliError> {
    simplices
        .iter()
        .map(|s| s.iter().map(Token::to_vertex).collect())
        .collect()
}

impl ComplexFile {
    pub fn to_complex(&self) -> Result<SimplicialComplex, CliError> {
        let maximal = tuples(&self.simplices)?;
        let order = self
            .vertex_order
            .as_ref()
            .map(|o| {
                o.iter()
                    .map(Token::to_vertex)
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        let x = SimplicialComplex::from_maximal_simplices(&maximal, order.as_deref())?;
        Ok(x.with_name(self.name.as_str()))
    }

    /// Canonical form: maximal simplices in the complex's order and an
    /// explicit vertex order.
    pub fn from_complex(x: &SimplicialComplex) -> Self {
        let simplices = x
            .maximal_simplices()
            .iter()
            .map(|s| x.labels(s).iter().map(Token::from).collect())
            .collect();
        Self {
            name: x.name().unwrap_or_default().to_string(),
            simplices,
            vertex_order: Some(x.vertices().iter().map(Token::from).collect()),
        }
    }

    /// Reads this file's simplices as a subcomplex of `parent`.
    pub fn to_subcomplex(&self, parent: &Arc<SimplicialComplex>) -> Result<Subcomplex, CliError> {
        if self.vertex_order.is_some() {
            return Err(CliError::Input(
                "a subcomplex file takes its vertex order from the ambient complex".into(),
            ));
        }
        Ok(Subcomplex::from_labels(parent, &tuples(&self.simplices)?)?)
    }
}

/// Splits `"a,b,c"` and resolves each part against the vertex tokens of `x`.
fn resolve_key(key: &str, lookup: &HashMap<String, VertexId>) -> Result<Vec<VertexId>, CliError> {
    key.split(',')
        .map(|part| {
            lookup.get(part.trim()).cloned().ok_or_else(|| {
                CliError::Input(format!("key {key:?}: unknown vertex {:?}", part.trim()))
            })
        })
        .collect()
}

fn token_lookup(x: &SimplicialComplex) -> Result<HashMap<String, VertexId>, CliError> {
    let mut lookup = HashMap::new();
    for v in x.vertices() {
        if let Some(prev) = lookup.insert(v.to_string(), v.clone()) {
            return Err(CliError::Input(format!(
                "vertices {prev:?} and {v:?} print the same, so keys are ambiguous"
            )));
        }
    }
    Ok(lookup)
}

impl CellValuesFile {
    fn entries(&self, x: &SimplicialComplex) -> Result<Vec<(Vec<VertexId>, BigInt)>, CliError> {
        let lookup = token_lookup(x)?;
        let mut out = Vec::new();
        for (key, &value) in &self.values {
            let tuple = resolve_key(key, &lookup)?;
            if tuple.len() as i64 != self.degree + 1 {
                return Err(CliError::Input(format!(
                    "key {key:?} is not a simplex of dimension {}",
                    self.degree
                )));
            }
            out.push((tuple, BigInt::from(value)));
        }
        Ok(out)
    }

    pub fn to_chain(&self, x: &Arc<SimplicialComplex>) -> Result<SimplicialChain, CliError> {
        Ok(SimplicialChain::from_labels(
            x,
            self.degree,
            self.entries(x)?,
        )?)
    }

    pub fn to_cochain(&self, x: &Arc<SimplicialComplex>) -> Result<SimplicialCochain, CliError> {
        Ok(SimplicialCochain::from_labels(
            x,
            self.degree,
            self.entries(x)?,
        )?)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_complex(path: &Path) -> Result<Arc<SimplicialComplex>, CliError> {
    Ok(Arc::new(read_json::<ComplexFile>(path)?.to_complex()?))
}
