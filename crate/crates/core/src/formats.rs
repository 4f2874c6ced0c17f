//! On-disk descriptions of quantales, spaces, relations and topologies.
//!
//! All documents are small JSON tables of labels. Cross-references (an
//! element of the quantale, a point of the space) are written as labels
//! and resolved at load time, so a typo fails loudly with the offending
//! name instead of silently shifting an index.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::json;

use crate::cotopology::{Cotopology, Mode};
use crate::duality::CrispTopology;
use crate::error::{Error, Result};
use crate::fuzzy::{FuzzySet, PointSet};
use crate::qorder::QOrder;
use crate::quantale::{El, Quantale, StandardKind};

/// Reads and deserializes a JSON document, mapping errors to [`Error::BadInput`]
/// with the path and (for parse errors) line/column.
pub fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::BadInput(format!("{}: {e}", path.display())))
}

/// A quantale, either by standard name
/// (`{"standard": "godel", "n": 3}`) or by explicit tables
/// (`{"labels": [...], "leq": [[0|1]], "tensor": [[index]]}`).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum QuantaleFile {
    Standard {
        standard: String,
        #[serde(default)]
        n: Option<usize>,
    },
    Explicit {
        labels: Vec<String>,
        leq: Vec<Vec<u8>>,
        tensor: Vec<Vec<usize>>,
    },
}

impl QuantaleFile {
    pub fn into_quantale(self) -> Result<Quantale> {
        match self {
            QuantaleFile::Standard { standard, n } => {
                let kind = StandardKind::parse(&standard)?;
                Quantale::standard(kind, n.unwrap_or(0))
            }
            QuantaleFile::Explicit { labels, leq, tensor } => {
                let leq = leq
                    .into_iter()
                    .map(|row| row.into_iter().map(|b| b != 0).collect())
                    .collect();
                Quantale::new(labels, leq, tensor)
            }
        }
    }
}

fn resolve_el(q: &Quantale, label: &str, ctx: &str) -> Result<El> {
    q.find(label)
        .ok_or_else(|| Error::BadInput(format!("unknown quantale element `{label}` in {ctx}")))
}

/// A point set with named fuzzy sets:
/// `{"points": [...], "fuzzy_sets": {name: [element-label]}}`.
#[derive(Debug, Clone, Deserialize)]
pub struct SpaceSetsFile {
    pub points: Vec<String>,
    #[serde(default)]
    pub fuzzy_sets: BTreeMap<String, Vec<String>>,
}

impl SpaceSetsFile {
    pub fn resolve(&self, q: &Quantale) -> Result<(Arc<PointSet>, BTreeMap<String, FuzzySet>)> {
        let space = PointSet::new(self.points.clone())?;
        let mut sets = BTreeMap::new();
        for (name, row) in &self.fuzzy_sets {
            let values = row
                .iter()
                .map(|l| resolve_el(q, l, &format!("fuzzy set `{name}`")))
                .collect::<Result<Vec<El>>>()?;
            sets.insert(name.clone(), FuzzySet::new(&space, values, q)?);
        }
        Ok((space, sets))
    }
}

/// A Q-order: `{"points": [...], "R": [[element-label]]}` with `R[x][y]`
/// the degree to which `x ≤ y`.
#[derive(Debug, Clone, Deserialize)]
pub struct QOrderFile {
    pub points: Vec<String>,
    #[serde(rename = "R")]
    pub rel: Vec<Vec<String>>,
}

impl QOrderFile {
    pub fn resolve(&self, q: &Quantale) -> Result<QOrder> {
        let space = PointSet::new(self.points.clone())?;
        let rel = self
            .rel
            .iter()
            .map(|row| row.iter().map(|l| resolve_el(q, l, "R")).collect())
            .collect::<Result<Vec<Vec<El>>>>()?;
        QOrder::new(&space, rel, q)
    }
}

/// A cotopology presented by a subbasis:
/// `{"points": [...], "subbasis": [[element-label]], "mode": "plain"|"stratified"|"costratified"|"strong"}`.
#[derive(Debug, Clone, Deserialize)]
pub struct CotopologyFile {
    pub points: Vec<String>,
    #[serde(default)]
    pub subbasis: Vec<Vec<String>>,
    #[serde(default = "default_mode")]
    pub mode: String,
}

fn default_mode() -> String {
    "stratified".into()
}

impl CotopologyFile {
    pub fn resolve(&self, q: &Quantale, cap: usize) -> Result<Cotopology> {
        let space = PointSet::new(self.points.clone())?;
        let mode = Mode::parse(&self.mode)?;
        let mut subbasis = Vec::new();
        for row in &self.subbasis {
            let values = row
                .iter()
                .map(|l| resolve_el(q, l, "subbasis"))
                .collect::<Result<Vec<El>>>()?;
            subbasis.push(FuzzySet::new(&space, values, q)?);
        }
        Cotopology::generate(q, &space, &subbasis, mode, cap)
    }
}

/// A crisp topological space by closed subsets:
/// `{"points": [...], "closed_subsets": [[point-name]]}`.
#[derive(Debug, Clone, Deserialize)]
pub struct CrispFile {
    pub points: Vec<String>,
    pub closed_subsets: Vec<Vec<String>>,
}

impl CrispFile {
    pub fn resolve(&self) -> Result<CrispTopology> {
        let space = PointSet::new(self.points.clone())?;
        let mut masks = Vec::new();
        for subset in &self.closed_subsets {
            let mut mask = 0u64;
            for name in subset {
                let x = space.find(name).ok_or_else(|| {
                    Error::BadInput(format!("unknown point `{name}` in closed_subsets"))
                })?;
                mask |= 1 << x;
            }
            masks.push(mask);
        }
        CrispTopology::new(&space, masks)
    }
}

/// The fully derived tables of a quantale (for audit reports): every
/// operation rendered by label.
pub fn quantale_tables(q: &Quantale) -> serde_json::Value {
    let table = |op: &dyn Fn(El, El) -> El| -> Vec<Vec<&str>> {
        q.elements()
            .map(|p| q.elements().map(|r| q.label(op(p, r))).collect())
            .collect()
    };
    let coprimes: Vec<&str> = q.coprimes().iter().map(|&p| q.label(p)).collect();
    json!({
        "labels": q.labels(),
        "size": q.size(),
        "linear": q.is_linear(),
        "double_negation": q.double_negation_witness().is_none(),
        "coprimes": coprimes,
        "enough_coprimes": q.has_enough_coprimes(),
        "tensor": table(&|p, r| q.tensor(p, r)),
        "join": table(&|p, r| q.join(p, r)),
        "meet": table(&|p, r| q.meet(p, r)),
        "res": table(&|p, r| q.res(p, r)),
    })
}
