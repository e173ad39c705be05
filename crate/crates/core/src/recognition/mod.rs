//! Bottom-up recognition of template instances in a situation.
//!
//! Constraints are instantiated in the template's plan order. Each step
//! enumerates tuples for the constraint's unbound object slots, grades the
//! relation on the resolved members and prunes the branch as soon as the
//! running minimum drops below the threshold or reaches 0.

mod eval;
mod search;
mod situation;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fgr::{Component, FgrKind};
use crate::geometry::{Angle, OrientedPoint, Point2};
use crate::spatial_index::DEFAULT_K;

pub use eval::{evaluate_assignment, Evaluation};
pub use search::{recognize, CandidateStream, Matcher};
pub use situation::{compatible, Situation, SituationObject};

pub(crate) use eval::{Context, State};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RecognitionError {
    #[error("threshold {0} is outside [0, 1]")]
    ThresholdOutOfRange(f64),
    #[error("invalid situation: {0}")]
    InvalidSituation(String),
    #[error("situation object `{object}` has {attribute} = `{value}`, outside the template schema")]
    SchemaIncompatible {
        object: String,
        attribute: String,
        value: String,
    },
    #[error("invalid mapping: {0}")]
    InvalidMapping(String),
    #[error("invalid options: {0}")]
    InvalidOptions(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchOptions {
    pub use_span_filter: bool,
    /// Neighbors per object in the span filter's table.
    pub knn: usize,
    /// Keep only the best instances, plus any tied with the last one kept.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_instances: Option<usize>,
    /// Explore top-level branches on the rayon pool.
    #[serde(default = "default_parallel")]
    pub parallel: bool,
}

fn default_parallel() -> bool {
    true
}

impl Default for MatchOptions {
    fn default() -> Self {
        Self {
            use_span_filter: true,
            knn: DEFAULT_K,
            max_instances: None,
            parallel: true,
        }
    }
}

impl MatchOptions {
    pub fn unfiltered() -> Self {
        Self { use_span_filter: false, ..Self::default() }
    }
}

/// Search counters. All but `wall_time_ms` are deterministic.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchStats {
    /// Relation evaluations performed on candidate tuples.
    pub tuples_evaluated: u64,
    /// Evaluations that ended their branch.
    pub cuts: u64,
    /// Partial tuples discarded by the span filter.
    pub span_rejections: u64,
    /// Complete mappings evaluated.
    pub mappings_evaluated: u64,
    pub wall_time_ms: f64,
}

impl MatchStats {
    pub(crate) fn absorb(&mut self, other: &MatchStats) {
        self.tuples_evaluated += other.tuples_evaluated;
        self.cuts += other.cuts;
        self.span_rejections += other.span_rejections;
        self.mappings_evaluated += other.mappings_evaluated;
    }

    /// The counters without timing, for comparisons across runs.
    pub fn counts(&self) -> (u64, u64, u64, u64) {
        (self.tuples_evaluated, self.cuts, self.span_rejections, self.mappings_evaluated)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pairing {
    pub template_object: String,
    pub situation_object: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDegree {
    pub component: Component,
    pub degree: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintResult {
    pub id: String,
    pub kind: FgrKind,
    pub proximity: f64,
    pub components: Vec<ComponentDegree>,
    /// Reference point under the constraint's own mode.
    pub reference: OrientedPoint,
    /// Member locations as graded, nested relations by their reference points.
    pub members: Vec<Point2>,
}

/// Values the recognition process supplied for undefined attributes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assignment {
    pub situation_object: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Angle>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub attributes: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemplateInstance {
    /// One pairing per template object, in template order.
    pub mapping: Vec<Pairing>,
    /// One result per constraint, in declaration order.
    pub constraints: Vec<ConstraintResult>,
    /// Minimum over the constraint proximities.
    pub overall: f64,
    /// Constraint attaining the minimum, first in declaration order on ties.
    pub weakest: String,
    pub assignments: Vec<Assignment>,
}

impl TemplateInstance {
    pub fn situation_ids(&self) -> Vec<&str> {
        self.mapping.iter().map(|p| p.situation_object.as_str()).collect()
    }

    pub fn situation_object(&self, template_object: &str) -> Option<&str> {
        self.mapping
            .iter()
            .find(|p| p.template_object == template_object)
            .map(|p| p.situation_object.as_str())
    }

    pub fn constraint(&self, id: &str) -> Option<&ConstraintResult> {
        self.constraints.iter().find(|c| c.id == id)
    }

    pub fn weakest_constraint(&self) -> &ConstraintResult {
        self.constraint(&self.weakest).expect("weakest constraint is reported")
    }
}

/// Descending overall proximity, then ascending mapping.
pub fn sort_instances(instances: &mut [TemplateInstance]) {
    instances.sort_by(|a, b| {
        b.overall
            .total_cmp(&a.overall)
            .then_with(|| a.situation_ids().cmp(&b.situation_ids()))
    });
}

/// Results of a recognition run.
#[derive(Debug, Clone, PartialEq)]
pub struct Recognition {
    pub instances: Vec<TemplateInstance>,
    pub stats: MatchStats,
}
