//! The JSON instance document and its conversion to and from core types.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::Path;

use seatplan::reductions::GadgetNotes;
use seatplan::{Arrangement, Instance, PreferenceProfile, Rational, SeatGraph};
use serde::{Deserialize, Serialize};

pub const FORMAT: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema violation: {0}")]
    Schema(String),
    #[error(transparent)]
    Invalid(#[from] seatplan::Error),
}

/// A preference entry: a plain integer or a rational string `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Text(String),
}

impl Value {
    fn to_rational(&self, at: (usize, usize)) -> Result<Rational, DocumentError> {
        match self {
            Value::Int(v) => Ok(Rational::from(*v)),
            Value::Text(s) => s
                .parse()
                .map_err(|_| DocumentError::Schema(format!("preferences[{}][{}]: {s:?} is not a rational", at.0, at.1))),
        }
    }

    fn from_rational(r: Rational) -> Value {
        match i64::try_from(r.numer()) {
            Ok(v) if r.is_integer() => Value::Int(v),
            _ => Value::Text(r.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeatGraphDoc {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoleDoc {
    pub name: String,
    pub agents: Vec<usize>,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NotesDoc {
    pub roles: Vec<RoleDoc>,
    pub constants: BTreeMap<String, String>,
}

impl From<&GadgetNotes> for NotesDoc {
    fn from(n: &GadgetNotes) -> NotesDoc {
        NotesDoc {
            roles: n
                .roles
                .iter()
                .map(|r| RoleDoc {
                    name: r.name.clone(),
                    agents: r.agents.clone(),
                    vertices: r.vertices.clone(),
                })
                .collect(),
            constants: n.constants.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub problem: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start_arrangement: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<NotesDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub format: u32,
    pub agents: usize,
    pub preferences: Vec<Vec<Value>>,
    pub seat_graph: SeatGraphDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrangement: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

/// A validated document.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub instance: Instance,
    pub arrangement: Option<Arrangement>,
    pub start_arrangement: Option<Arrangement>,
    pub metadata: Metadata,
}

impl InstanceDocument {
    pub fn from_instance(instance: &Instance, arrangement: Option<&Arrangement>, metadata: Option<Metadata>) -> Self {
        let n = instance.agent_count();
        InstanceDocument {
            format: FORMAT,
            agents: n,
            preferences: (0..n)
                .map(|p| instance.profile().row(p).iter().map(|&r| Value::from_rational(r)).collect())
                .collect(),
            seat_graph: SeatGraphDoc {
                vertices: instance.graph().vertex_count(),
                edges: instance.graph().edges().iter().map(|&(u, v)| [u, v]).collect(),
            },
            arrangement: arrangement.map(|a| a.seats().to_vec()),
            metadata,
        }
    }

    pub fn parse(text: &str) -> Result<InstanceDocument, DocumentError> {
        serde_json::from_str(text).map_err(|e| {
            let message = e.to_string();
            // serde_json appends its own position; keep only the message
            let message = message.split(" at line ").next().unwrap_or(&message).to_string();
            if e.is_data() {
                DocumentError::Schema(format!("{message} (line {}, column {})", e.line(), e.column()))
            } else {
                DocumentError::Parse {
                    line: e.line(),
                    column: e.column(),
                    message,
                }
            }
        })
    }

    pub fn to_json(&self) -> String {
        crate::report::pretty(&serde_json::to_value(self).expect("documents always serialize"))
    }

    /// Checks the schema and the core invariants.
    pub fn load(&self) -> Result<Loaded, DocumentError> {
        if self.format != FORMAT {
            return Err(DocumentError::Schema(format!("unsupported format {}, expected {FORMAT}", self.format)));
        }
        let n = self.agents;
        if self.preferences.len() != n {
            return Err(DocumentError::Schema(format!(
                "preferences has {} rows for {n} agents",
                self.preferences.len()
            )));
        }
        if self.seat_graph.vertices != n {
            return Err(DocumentError::Schema(format!(
                "seat_graph has {} vertices for {n} agents",
                self.seat_graph.vertices
            )));
        }
        let mut rows = Vec::with_capacity(n);
        for (p, row) in self.preferences.iter().enumerate() {
            if row.len() != n {
                return Err(DocumentError::Schema(format!("preferences[{p}] has {} entries, expected {n}", row.len())));
            }
            rows.push(row.iter().enumerate().map(|(q, v)| v.to_rational((p, q))).collect::<Result<Vec<_>, _>>()?);
        }
        let graph = SeatGraph::new(n, self.seat_graph.edges.iter().map(|&[u, v]| (u, v)))
            .map_err(|e| DocumentError::Schema(format!("seat_graph: {e}")))?;
        let instance = Instance::new(graph, PreferenceProfile::new(rows)?)?;
        let arrangement = self.arrangement.clone().map(|a| load_arrangement(&instance, a, "arrangement")).transpose()?;
        let metadata = self.metadata.clone().unwrap_or_default();
        if let Some(t) = &metadata.target {
            t.parse::<Rational>()
                .map_err(|_| DocumentError::Schema(format!("metadata.target: {t:?} is not a rational")))?;
        }
        let start_arrangement = metadata
            .start_arrangement
            .clone()
            .map(|a| load_arrangement(&instance, a, "metadata.start_arrangement"))
            .transpose()?;
        Ok(Loaded {
            instance,
            arrangement,
            start_arrangement,
            metadata,
        })
    }
}

fn load_arrangement(instance: &Instance, seats: Vec<usize>, field: &str) -> Result<Arrangement, DocumentError> {
    if seats.len() != instance.agent_count() {
        return Err(DocumentError::Schema(format!(
            "{field} has {} entries for {} agents",
            seats.len(),
            instance.agent_count()
        )));
    }
    Arrangement::new(seats).map_err(|e| DocumentError::Schema(format!("{field}: {e}")))
}

/// Reads a document from a file, or from standard input for `-`.
pub fn read_document(path: &Path) -> Result<InstanceDocument, DocumentError> {
    let io = |source| DocumentError::Io {
        path: path.display().to_string(),
        source,
    };
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        s
    } else {
        fs::read_to_string(path).map_err(io)?
    };
    InstanceDocument::parse(&text)
}

pub fn load_instance(path: &Path) -> Result<Loaded, DocumentError> {
    read_document(path)?.load()
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"format":1,"agents":2,"preferences":[[0,1],[2,0]],"seat_graph":{"vertices":2,"edges":[[0,1]]}}"#;

    #[test]
    fn minimal_document_loads() {
        let loaded = InstanceDocument::parse(MINIMAL).unwrap().load().unwrap();
        assert_eq!(loaded.instance.agent_count(), 2);
        assert_eq!(loaded.instance.profile().get(1, 0), Rational::from(2));
    }

    #[test]
    fn duplicate_edge_is_named() {
        let text = MINIMAL.replace("[[0,1]]", "[[0,1],[1,0]]");
        let err = InstanceDocument::parse(&text).unwrap().load().unwrap_err();
        assert!(matches!(err, DocumentError::Schema(_)));
        assert!(err.to_string().contains("duplicate edge (1, 0)"), "{err}");
    }

    #[test]
    fn shape_mismatches() {
        let text = MINIMAL.replace("\"agents\":2", "\"agents\":3");
        assert!(matches!(InstanceDocument::parse(&text).unwrap().load(), Err(DocumentError::Schema(_))));
        let text = MINIMAL.replace("[2,0]", "[\"x\",0]");
        assert!(matches!(InstanceDocument::parse(&text).unwrap().load(), Err(DocumentError::Schema(_))));
        assert!(matches!(InstanceDocument::parse("{\"format\":"), Err(DocumentError::Parse { .. })));
        assert!(matches!(InstanceDocument::parse("{\"format\":1}"), Err(DocumentError::Schema(_))));
    }

    #[test]
    fn rationals_as_strings() {
        let text = MINIMAL.replace("[2,0]", "[\"3/2\",0]");
        let loaded = InstanceDocument::parse(&text).unwrap().load().unwrap();
        assert_eq!(loaded.instance.profile().get(1, 0), Rational::new(3, 2));
        let back = InstanceDocument::from_instance(&loaded.instance, None, None);
        assert_eq!(back.preferences[1][0], Value::Text("3/2".into()));
        assert_eq!(back.preferences[0][1], Value::Int(1));
    }
}
