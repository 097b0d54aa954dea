//! The named-group degree table.
//!
//! The table ships inside the crate (`data/named_groups.txt`) and can be
//! replaced at run time by pointing `PRIMEGRAPH_DATA` at another file in
//! the same format. Every row is validated when the table is loaded.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use super::{DegreeSet, GroupError};

pub const DATA_ENV: &str = "PRIMEGRAPH_DATA";

const BUNDLED: &str = include_str!("../../data/named_groups.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Degree set printed verbatim in the literature.
    Quoted,
    /// Read off a published character table.
    ExternalTable,
}

impl Source {
    fn parse(tag: &str) -> Option<Self> {
        match tag {
            "quoted" => Some(Source::Quoted),
            "external-table" => Some(Source::ExternalTable),
            _ => None,
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Quoted => "quoted",
            Source::ExternalTable => "external-table",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Solvability {
    Solvable,
    Nonsolvable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedGroupEntry {
    pub id: String,
    pub degree_set: DegreeSet,
    pub source: Source,
    pub class: Option<Solvability>,
    pub notes: String,
}

/// Read-only after construction.
#[derive(Debug, Clone, Default)]
pub struct NamedTable {
    entries: BTreeMap<String, NamedGroupEntry>,
    order: Vec<String>,
}

impl NamedTable {
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let mut table = NamedTable::default();
        for (index, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let entry = parse_row(line).map_err(|message| GroupError::Data {
                line: index + 1,
                message,
            })?;
            if table.entries.contains_key(&entry.id) {
                return Err(GroupError::Data {
                    line: index + 1,
                    message: format!("duplicate id {:?}", entry.id),
                });
            }
            table.order.push(entry.id.clone());
            table.entries.insert(entry.id.clone(), entry);
        }
        Ok(table)
    }

    pub fn bundled() -> Result<Self, GroupError> {
        Self::parse(BUNDLED)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, GroupError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// The file named by `PRIMEGRAPH_DATA` if set, the bundled table otherwise.
    pub fn load() -> Result<Self, GroupError> {
        match std::env::var_os(DATA_ENV) {
            Some(path) if !path.is_empty() => Self::from_path(path),
            _ => Self::bundled(),
        }
    }

    pub fn get(&self, id: &str) -> Option<&NamedGroupEntry> {
        self.entries.get(id)
    }

    /// Entries in file order.
    pub fn entries(&self) -> impl Iterator<Item = &NamedGroupEntry> {
        self.order.iter().map(|id| &self.entries[id])
    }

    /// Ids sorted ascending.
    pub fn ids(&self) -> Vec<String> {
        self.entries.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn parse_row(line: &str) -> Result<NamedGroupEntry, String> {
    let mut fields = line.splitn(5, ';').map(str::trim);
    let id = fields.next().unwrap_or_default();
    if id.is_empty() {
        return Err("empty id".into());
    }
    let degrees_field = fields.next().ok_or("missing degree list")?;
    let mut degrees = Vec::new();
    for item in degrees_field.split(',') {
        let d: u128 = item
            .trim()
            .parse()
            .map_err(|_| format!("bad degree {:?}", item.trim()))?;
        if degrees.contains(&d) {
            return Err(format!("degree {d} listed twice"));
        }
        degrees.push(d);
    }
    let degree_set = DegreeSet::new(degrees).map_err(|e| e.to_string())?;
    let source_tag = fields.next().ok_or("missing source tag")?;
    let source =
        Source::parse(source_tag).ok_or_else(|| format!("unknown source tag {source_tag:?}"))?;
    let class = match fields.next() {
        None | Some("") => None,
        Some("solvable") => Some(Solvability::Solvable),
        Some("nonsolvable") => Some(Solvability::Nonsolvable),
        Some(other) => return Err(format!("unknown class {other:?}")),
    };
    let notes = fields.next().unwrap_or_default().to_string();
    Ok(NamedGroupEntry {
        id: id.to_string(),
        degree_set,
        source,
        class,
        notes,
    })
}

/// Degree set of a named group, verbatim from the table.
pub fn named_degrees(table: &NamedTable, id: &str) -> Result<DegreeSet, GroupError> {
    table
        .get(id)
        .map(|e| e.degree_set.clone())
        .ok_or_else(|| GroupError::UnknownId {
            id: id.to_string(),
            available: table.ids(),
        })
}
