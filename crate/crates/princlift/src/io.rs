//! JSON documents. Output is canonical: keys and lists sorted.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::congruence::Congruence;
use crate::gadget::Orientation;
use crate::order::{Lattice, OrderError, Poset, QuasiOrder};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.into(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| IoError::Parse {
        path: path.into(),
        source,
    })
}

/// Pretty JSON with sorted object keys and a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    // serde_json's Map is ordered by key unless `preserve_order` is on
    let v = serde_json::to_value(value).expect("documents serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|source| IoError::Write {
                path: dir.into(),
                source,
            })?;
        }
    }
    fs::write(path, to_canonical_json(value)).map_err(|source| IoError::Write {
        path: path.into(),
        source,
    })
}

fn default_true() -> bool {
    true
}

/// `{elements, le, bounded}`; `le` is any generating set of the order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    #[serde(default)]
    pub le: Vec<(String, String)>,
    #[serde(default = "default_true")]
    pub bounded: bool,
}

impl PosetDoc {
    /// Canonical document of a poset: sorted elements and sorted covers.
    pub fn from_poset(p: &Poset) -> Self {
        let mut elements = p.labels().to_vec();
        elements.sort();
        let mut le: Vec<(String, String)> = p
            .covers()
            .into_iter()
            .map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
            .collect();
        le.sort();
        PosetDoc {
            elements,
            le,
            bounded: p.is_bounded(),
        }
    }

    /// Canonical document of a quasiorder: every strict related pair.
    pub fn from_quasiorder(q: &QuasiOrder) -> Self {
        let mut elements = q.labels().to_vec();
        elements.sort();
        let mut le: Vec<(String, String)> = q
            .pairs()
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (q.label(a).to_string(), q.label(b).to_string()))
            .collect();
        le.sort();
        PosetDoc {
            elements,
            le,
            bounded: !q.least_elements().is_empty() && !q.greatest_elements().is_empty(),
        }
    }

    pub fn to_quasiorder(&self) -> Result<QuasiOrder, OrderError> {
        QuasiOrder::closure(&self.elements, &self.le)
    }

    pub fn to_poset(&self) -> Result<Poset, OrderError> {
        let p = self.to_quasiorder()?.into_poset()?;
        if self.bounded && !p.is_bounded() {
            return Err(OrderError::NotBounded);
        }
        Ok(p)
    }

    pub fn to_lattice(&self) -> Result<Lattice, OrderError> {
        Lattice::from_poset(self.to_poset()?)
    }
}

/// Sorted list of sorted label blocks.
pub type CongruenceDoc = Vec<Vec<String>>;

pub fn congruence_doc(c: &Congruence, l: &QuasiOrder) -> CongruenceDoc {
    c.label_blocks(l)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiColoredDoc {
    #[serde(flatten)]
    pub lattice: PosetDoc,
    pub colors: PosetDoc,
    pub gamma: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlueprintDoc {
    #[serde(flatten)]
    pub lattice: PosetDoc,
    pub boundary: BTreeMap<String, String>,
    pub rank: u8,
    pub orientation: Orientation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameAnchorDoc {
    pub a: String,
    pub b: String,
}

/// The frame lattice: a lattice doc plus its inner anchor pair and marked elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MnhDoc {
    #[serde(flatten)]
    pub lattice: PosetDoc,
    pub anchor: FrameAnchorDoc,
    pub marked: Vec<String>,
}

/// Colors for `build-n`: the carrier and the sets Z and U.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorsDoc {
    pub elements: Vec<String>,
    #[serde(rename = "Z")]
    pub z: Vec<String>,
    #[serde(rename = "U")]
    pub u: Vec<String>,
}

pub type PairsDoc = Vec<(String, String)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub name: String,
    pub src: String,
    pub dst: String,
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDoc {
    pub objects: BTreeMap<String, Vec<String>>,
    pub morphisms: Vec<MorphismDoc>,
}

/// A poset-valued functor on a category: one poset per object, one map per morphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorDoc {
    pub objects: BTreeMap<String, PosetDoc>,
    pub morphisms: BTreeMap<String, BTreeMap<String, String>>,
}

/// A map between two labeled structures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDoc {
    pub src: String,
    pub dst: String,
    pub map: BTreeMap<String, String>,
}
