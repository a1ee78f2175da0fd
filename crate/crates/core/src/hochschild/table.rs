//! Homology tables: what every computation reports.

use std::time::Instant;

use serde::{Serialize, Serializer};

use crate::exactlin::{alternating_sum, ChainComplex, Grading, LinalgError, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexKind {
    Raw,
    Normalized,
    /// `Hom_A(C(K, A), M)`.
    Cochain,
}

/// Per-degree homology of one complex plus the inputs that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    pub space: String,
    pub algebra: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<String>,
    pub complex: ComplexKind,
    pub grading: Grading,
    pub truncation: usize,
    pub degree_bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<usize>,
    pub chain_dims: Vec<usize>,
    pub dims: Vec<usize>,
    /// `certified[n]` is false for the top degree, where the neighbouring
    /// differential outside the computed range is missing and the reported
    /// number is only an upper bound.
    pub certified: Vec<bool>,
    pub euler_characteristic: i64,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "serialize_reps")]
    pub representatives: Option<Vec<Vec<SparseVec>>>,
    pub elapsed_ms: u64,
}

fn serialize_reps<S: Serializer>(reps: &Option<Vec<Vec<SparseVec>>>, s: S) -> Result<S::Ok, S::Error> {
    let as_text: Option<Vec<Vec<Vec<(usize, String)>>>> = reps.as_ref().map(|degrees| {
        degrees
            .iter()
            .map(|vs| vs.iter().map(|v| v.iter().map(|(i, x)| (*i, x.to_string())).collect()).collect())
            .collect()
    });
    as_text.serialize(s)
}

/// Labels carried into the table.
#[derive(Clone, Debug)]
pub(crate) struct TableLabels {
    pub space: String,
    pub algebra: String,
    pub coefficients: Option<String>,
    pub kind: ComplexKind,
    pub truncation: usize,
    pub weight: Option<usize>,
}

impl HomologyTable {
    pub(crate) fn from_complex(
        c: &ChainComplex,
        labels: TableLabels,
        representatives: bool,
        started: Instant,
    ) -> Result<Self, LinalgError> {
        let dims = c.homology_dims();
        let reps = if representatives {
            Some(
                (0..c.dims().len())
                    .map(|n| c.homology_with_representatives(n).map(|(_, r)| r))
                    .collect::<Result<Vec<_>, _>>()?,
            )
        } else {
            None
        };
        let top = c.top_degree();
        Ok(HomologyTable {
            space: labels.space,
            algebra: labels.algebra,
            coefficients: labels.coefficients,
            complex: labels.kind,
            grading: c.grading(),
            truncation: labels.truncation,
            degree_bound: top,
            weight: labels.weight,
            chain_dims: c.dims().to_vec(),
            certified: (0..=top).map(|n| c.is_certified(n)).collect(),
            euler_characteristic: c.euler_characteristic(),
            dims,
            representatives: reps,
            elapsed_ms: started.elapsed().as_millis() as u64,
        })
    }

    /// Dimensions in the certified degrees only.
    pub fn certified_dims(&self) -> Vec<usize> {
        self.dims
            .iter()
            .zip(&self.certified)
            .filter(|(_, c)| **c)
            .map(|(d, _)| *d)
            .collect()
    }

    /// Whether `Σ(−1)^n dim C_n = Σ(−1)^n dim H_n`.
    pub fn euler_consistent(&self) -> bool {
        alternating_sum(&self.dims) == self.euler_characteristic
    }

    /// JSON with the timing field zeroed, for byte comparisons.
    pub fn to_json_without_timing(&self) -> String {
        let mut t = self.clone();
        t.elapsed_ms = 0;
        serde_json::to_string_pretty(&t).expect("tables serialize")
    }
}
