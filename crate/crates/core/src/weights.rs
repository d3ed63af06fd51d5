//! Point weights together with the differential degree.

use crate::poset::{PointId, PointPosetWindow};
use crate::rational::{self, Q};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("no weight for point {0:?}")]
    MissingWeight(String),
    #[error("weight given for unknown point {0:?}")]
    UnknownPoint(String),
    #[error("{0}")]
    Parse(String),
}

/// Weights `w(p)` indexed by [`PointId`], plus the degree `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightScheme {
    values: Vec<Q>,
    degree: Q,
}

impl WeightScheme {
    pub fn new(values: Vec<Q>, degree: Q) -> Self {
        WeightScheme { values, degree }
    }

    pub fn uniform(p: &PointPosetWindow, value: Q, degree: Q) -> Self {
        WeightScheme { values: vec![value; p.len()], degree }
    }

    pub fn from_fn(p: &PointPosetWindow, degree: Q, f: impl Fn(PointId) -> Q) -> Self {
        WeightScheme { values: p.points().map(f).collect(), degree }
    }

    /// The differential degree.
    pub fn degree(&self) -> &Q {
        &self.degree
    }

    pub fn weight(&self, p: PointId) -> &Q {
        &self.values[p.index()]
    }

    pub fn get(&self, p: PointId) -> Option<&Q> {
        self.values.get(p.index())
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn set(&mut self, p: PointId, value: Q) {
        self.values[p.index()] = value;
    }

    pub fn set_degree(&mut self, degree: Q) {
        self.degree = degree;
    }

    /// `k·w` and `k·r`.
    pub fn scaled(&self, k: &Q) -> Self {
        WeightScheme { values: self.values.iter().map(|v| v * k).collect(), degree: &self.degree * k }
    }

    /// Every weight and `r` strictly positive.
    pub fn is_positive(&self) -> bool {
        self.degree.is_positive() && self.values.iter().all(|v| v.is_positive())
    }

    /// Every weight and `r` an integer.
    pub fn is_integral(&self) -> bool {
        rational::is_integral(&self.degree) && self.values.iter().all(rational::is_integral)
    }

    pub fn sum<'a>(&self, points: impl IntoIterator<Item = &'a PointId>) -> Q {
        points.into_iter().fold(Q::zero(), |acc, p| acc + self.weight(*p))
    }

    pub fn to_file(&self, p: &PointPosetWindow) -> WeightFile {
        WeightFile {
            degree: self.degree.to_string(),
            weights: p.points().map(|q| (p.name(q).to_string(), self.weight(q).to_string())).collect(),
        }
    }

    pub fn from_file(p: &PointPosetWindow, file: &WeightFile) -> Result<Self, WeightError> {
        let degree = rational::parse(&file.degree).map_err(WeightError::Parse)?;
        for name in file.weights.keys() {
            if p.id(name).is_none() {
                return Err(WeightError::UnknownPoint(name.clone()));
            }
        }
        let values = p
            .points()
            .map(|q| {
                let s = file.weights.get(p.name(q)).ok_or_else(|| WeightError::MissingWeight(p.name(q).to_string()))?;
                rational::parse(s).map_err(WeightError::Parse)
            })
            .collect::<Result<Vec<Q>, _>>()?;
        Ok(WeightScheme { values, degree })
    }

    pub fn to_json(&self, p: &PointPosetWindow) -> String {
        serde_json::to_string_pretty(&self.to_file(p)).expect("weights serialize")
    }

    pub fn from_json(p: &PointPosetWindow, s: &str) -> Result<Self, WeightError> {
        let file: WeightFile = serde_json::from_str(s).map_err(|e| WeightError::Parse(e.to_string()))?;
        Self::from_file(p, &file)
    }
}

/// JSON shape: `{"r": "p/q", "weights": {"<point id>": "p/q", ...}}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct WeightFile {
    #[serde(rename = "r")]
    pub degree: String,
    pub weights: BTreeMap<String, String>,
}
