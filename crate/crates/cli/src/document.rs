//! The input document and its normal form.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use srlim_core::SimplicialComplex;

use crate::CliError;

/// A complex as written by the user: vertex labels and generating faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

/// Numeric labels sort by value, everything else after them by text.
fn label_order(a: &str, b: &str) -> Ordering {
    let numeric = |s: &str| !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
    match (numeric(a), numeric(b)) {
        (true, true) => {
            let (ta, tb) = (a.trim_start_matches('0'), b.trim_start_matches('0'));
            ta.len()
                .cmp(&tb.len())
                .then_with(|| ta.cmp(tb))
                .then_with(|| a.cmp(b))
        }
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (false, false) => a.cmp(b),
    }
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    /// The complex with vertices in sorted label order.
    pub fn to_complex(&self) -> Result<SimplicialComplex, CliError> {
        let mut labels = self.vertices.clone();
        labels.sort_by(|a, b| label_order(a, b));
        Ok(SimplicialComplex::from_facets(&labels, &self.facets)?)
    }

    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexDocument {
            vertices: k.labels().to_vec(),
            facets: k.facets().iter().map(|f| k.face_labels(*f)).collect(),
        }
    }

    /// Sorted labels, maximal facets only, each facet in vertex order and
    /// the facets in lexicographic order.
    pub fn normalized(&self) -> Result<Self, CliError> {
        Ok(Self::from_complex(&self.to_complex()?))
    }

    /// Compact serialization used for hashing.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    /// Hex SHA-256 of the canonical serialization.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }
}
