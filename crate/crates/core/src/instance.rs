//! JSON instance files.
//!
//! ```json
//! { "kind": "transformations", "base_size": 2, "maps": [[[0, 0]], [[0, 0], [1, 1]]] }
//! { "kind": "abstract", "size": 1, "mul": [[0]], "meet": [[0]], "xi": [[0, 0]], "delta": [[0, 0]] }
//! ```
//!
//! Tables are row-major, relations and maps are pair lists. `name` and
//! `seed` are optional metadata.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::abstract_system::AbstractSystem;
use crate::error::{Error, Result};
use crate::partial_map::PartialMap;
use crate::relation::Relation;
use crate::trans_semigroup::TransSystem;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum InstanceBody {
    #[serde(rename = "transformations")]
    Transformations {
        base_size: usize,
        /// Seed maps; the system is their closure under `∘` and `∩`.
        maps: Vec<Vec<(usize, usize)>>,
    },
    #[serde(rename = "abstract")]
    Abstract {
        size: usize,
        mul: Vec<Vec<usize>>,
        meet: Vec<Vec<usize>>,
        xi: Vec<(usize, usize)>,
        delta: Vec<(usize, usize)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(flatten)]
    pub body: InstanceBody,
}

fn bad(path: impl std::fmt::Display, msg: impl std::fmt::Display) -> Error {
    Error::Instance(format!("{path}: {msg}"))
}

impl InstanceFile {
    pub fn transformations(base_size: usize, maps: &[PartialMap]) -> Self {
        Self {
            name: None,
            seed: None,
            body: InstanceBody::Transformations {
                base_size,
                maps: maps.iter().map(|m| m.pairs().collect()).collect(),
            },
        }
    }

    pub fn from_abstract(sys: &AbstractSystem) -> Self {
        Self {
            name: None,
            seed: None,
            body: InstanceBody::Abstract {
                size: sys.size(),
                mul: sys.mul_table(),
                meet: sys.meet_table(),
                xi: sys.xi_rel().pairs().collect(),
                delta: sys.delta_rel().pairs().collect(),
            },
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn is_concrete(&self) -> bool {
        matches!(self.body, InstanceBody::Transformations { .. })
    }

    /// Range and shape checks, with errors tagged by the offending field.
    pub fn check(&self) -> Result<()> {
        match &self.body {
            InstanceBody::Transformations { base_size, maps } => {
                if *base_size == 0 {
                    return Err(bad("base_size", "must be positive"));
                }
                if maps.is_empty() {
                    return Err(bad("maps", "at least one map is required"));
                }
                for (i, pairs) in maps.iter().enumerate() {
                    PartialMap::from_pairs(*base_size, pairs)
                        .map_err(|e| bad(format_args!("maps[{i}]"), e))?;
                }
            }
            InstanceBody::Abstract {
                size,
                mul,
                meet,
                xi,
                delta,
            } => {
                if *size == 0 {
                    return Err(bad("size", "must be positive"));
                }
                for (name, table) in [("mul", mul), ("meet", meet)] {
                    if table.len() != *size {
                        return Err(bad(name, format_args!("{} rows, expected {size}", table.len())));
                    }
                    for (i, row) in table.iter().enumerate() {
                        if row.len() != *size {
                            return Err(bad(
                                format_args!("{name}[{i}]"),
                                format_args!("{} entries, expected {size}", row.len()),
                            ));
                        }
                        if let Some((j, v)) = row.iter().enumerate().find(|(_, &v)| v >= *size) {
                            return Err(bad(format_args!("{name}[{i}][{j}]"), format_args!("{v} out of range")));
                        }
                    }
                }
                for (name, pairs) in [("xi", xi), ("delta", delta)] {
                    if let Some((k, (a, b))) =
                        pairs.iter().enumerate().find(|(_, &(a, b))| a >= *size || b >= *size)
                    {
                        return Err(bad(format_args!("{name}[{k}]"), format_args!("pair ({a},{b}) out of range")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Seed maps of a transformation instance.
    pub fn seed_maps(&self) -> Result<Vec<PartialMap>> {
        self.check()?;
        match &self.body {
            InstanceBody::Transformations { base_size, maps } => maps
                .iter()
                .map(|pairs| PartialMap::from_pairs(*base_size, pairs))
                .collect(),
            InstanceBody::Abstract { .. } => Err(Error::Instance(
                "kind: expected \"transformations\"".into(),
            )),
        }
    }

    pub fn to_trans_system(&self, cap: usize) -> Result<TransSystem> {
        TransSystem::generate(&self.seed_maps()?, cap)
    }

    /// The abstract system: given directly, or encoded from the generated
    /// transformation semigroup.
    pub fn to_abstract(&self, cap: usize) -> Result<AbstractSystem> {
        self.check()?;
        match &self.body {
            InstanceBody::Transformations { .. } => Ok(self.to_trans_system(cap)?.to_abstract()),
            InstanceBody::Abstract {
                size,
                mul,
                meet,
                xi,
                delta,
            } => AbstractSystem::new(
                mul.clone(),
                meet.clone(),
                Relation::from_pairs(*size, xi.iter().copied()),
                Relation::from_pairs(*size, delta.iter().copied()),
            ),
        }
    }
}

/// Parses and range-checks an instance. Syntax errors carry line and column.
pub fn parse_str(text: &str) -> Result<InstanceFile> {
    let inst: InstanceFile =
        serde_json::from_str(text).map_err(|e| Error::Instance(e.to_string()))?;
    inst.check()?;
    Ok(inst)
}

pub fn parse_instance(path: &Path) -> Result<InstanceFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Instance(format!("{}: {e}", path.display())))?;
    parse_str(&text).map_err(|e| match e {
        Error::Instance(msg) => Error::Instance(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Pretty JSON that keeps table rows, pairs and single maps on one line.
pub fn to_string(inst: &InstanceFile) -> String {
    let value = serde_json::to_value(inst).expect("instances always serialize");
    let mut out = String::new();
    render(&value, 0, &mut out);
    out.push('\n');
    out
}

const WIDTH: usize = 72;

fn depth(v: &Value) -> usize {
    match v {
        Value::Array(items) => 1 + items.iter().map(depth).max().unwrap_or(0),
        _ => 0,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(fields) => {
            out.push_str("{\n");
            for (i, (k, val)) in fields.iter().enumerate() {
                out.push_str(&format!("{}{}: ", pad(indent + 1), Value::String(k.clone())));
                render(val, indent + 1, out);
                out.push_str(if i + 1 < fields.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if depth(v) > 2 || (depth(v) == 2 && v.to_string().len() > WIDTH) => {
            // pairs are packed several to a line, table rows get a line each
            let pack = items.iter().all(|i| i.as_array().is_some_and(|a| a.len() <= 2));
            let mut lines: Vec<String> = Vec::new();
            for item in items {
                let mut text = String::new();
                render(item, indent + 1, &mut text);
                match lines.last_mut() {
                    Some(line) if pack && line.len() + text.len() + 2 <= WIDTH => {
                        line.push_str(", ");
                        line.push_str(&text);
                    }
                    _ => lines.push(text),
                }
            }
            out.push_str("[\n");
            for (i, line) in lines.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(line);
                out.push_str(if i + 1 < lines.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        _ => out.push_str(&v.to_string()),
    }
}

pub fn write_instance(inst: &InstanceFile, path: &Path) -> Result<()> {
    std::fs::write(path, to_string(inst))
        .map_err(|e| Error::Instance(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_abstract_file() {
        let inst = parse_str(
            r#"{"kind": "abstract", "size": 1, "mul": [[0]], "meet": [[0]],
                "xi": [[0, 0]], "delta": [[0, 0]]}"#,
        )
        .unwrap();
        let sys = inst.to_abstract(64).unwrap();
        assert_eq!(sys.size(), 1);
        assert!(sys.validate().passed());
    }

    #[test]
    fn non_functional_map_rejected_with_index() {
        let err = parse_str(
            r#"{"kind": "transformations", "base_size": 2, "maps": [[[0, 1]], [[1, 0], [1, 1]]]}"#,
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("maps[1]") && msg.contains("element 1"), "{msg}");
    }

    #[test]
    fn syntax_error_has_position() {
        let msg = parse_str("{\"kind\": \"abstract\",\n  \"size\": }").unwrap_err().to_string();
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn out_of_range_entries_tagged() {
        let msg = parse_str(
            r#"{"kind": "abstract", "size": 1, "mul": [[0]], "meet": [[0]], "xi": [[0, 3]], "delta": []}"#,
        )
        .unwrap_err()
        .to_string();
        assert!(msg.starts_with("xi[0]"), "{msg}");
    }

    #[test]
    fn round_trip() {
        let seeds = [
            PartialMap::from_pairs(2, &[(0, 0)]).unwrap(),
            PartialMap::identity(2),
        ];
        let inst = InstanceFile::transformations(2, &seeds).named("delta0-id").with_seed(3);
        let text = to_string(&inst);
        assert!(text.contains("[[0,0]]"), "{text}");
        assert_eq!(parse_str(&text).unwrap(), inst);

        let sys = inst.to_abstract(64).unwrap();
        let abs = InstanceFile::from_abstract(&sys);
        assert_eq!(parse_str(&to_string(&abs)).unwrap(), abs);
        assert_eq!(abs.to_abstract(64).unwrap().mul_table(), sys.mul_table());
    }
}
