//! Observed situations and their compatibility with a template.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::geometry::{Angle, Isometry, OrientedPoint, Point2};
use crate::template::{CompiledTemplate, Conventions};

use super::RecognitionError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SituationObject {
    pub id: String,
    pub location: Point2,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Angle>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub attributes: BTreeMap<String, String>,
}

impl SituationObject {
    pub fn new(id: impl Into<String>, location: Point2, orientation: Option<Angle>) -> Self {
        Self {
            id: id.into(),
            location,
            orientation,
            attributes: BTreeMap::new(),
        }
    }

    pub fn with_attribute(mut self, name: impl Into<String>, value: impl Into<String>) -> Self {
        self.attributes.insert(name.into(), value.into());
        self
    }

    pub fn oriented_point(&self) -> OrientedPoint {
        OrientedPoint::new(self.location, self.orientation)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Situation {
    pub id: String,
    #[serde(default)]
    pub conventions: Conventions,
    pub objects: Vec<SituationObject>,
}

impl Situation {
    pub fn new(id: impl Into<String>, objects: Vec<SituationObject>) -> Self {
        Self {
            id: id.into(),
            conventions: Conventions::default(),
            objects,
        }
    }

    /// Checks unique ids, finite locations and supported units.
    pub fn validate(&self) -> Result<(), RecognitionError> {
        if !self.conventions.is_supported() {
            return Err(RecognitionError::InvalidSituation(format!(
                "unsupported conventions: angles `{}`, distances `{}`",
                self.conventions.angles, self.conventions.distances
            )));
        }
        let mut seen = HashSet::new();
        for o in &self.objects {
            if !seen.insert(o.id.as_str()) {
                return Err(RecognitionError::InvalidSituation(format!("duplicate object id `{}`", o.id)));
            }
            if !o.location.is_finite() {
                return Err(RecognitionError::InvalidSituation(format!(
                    "object `{}` has a non-finite location",
                    o.id
                )));
            }
        }
        Ok(())
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.objects.iter().position(|o| o.id == id)
    }

    /// The same situation moved by a rigid motion.
    pub fn transformed(&self, motion: &Isometry) -> Situation {
        let mut out = self.clone();
        for o in &mut out.objects {
            let p = motion.apply(o.oriented_point());
            o.location = p.location;
            o.orientation = p.orientation;
        }
        out
    }
}

/// Whether a situation object can play a template object's role: every
/// attribute the situation defines must equal the template's requirement.
pub fn compatible(ct: &CompiledTemplate, template_object: usize, object: &SituationObject) -> bool {
    ct.object(template_object)
        .attributes
        .iter()
        .all(|(k, v)| object.attributes.get(k).is_none_or(|have| have == v))
}

/// Rejects situation attributes whose values lie outside the template's
/// enumeration for that attribute.
pub(crate) fn check_schema(ct: &CompiledTemplate, s: &Situation) -> Result<(), RecognitionError> {
    let schema = &ct.template().schema;
    for o in &s.objects {
        for (attribute, value) in &o.attributes {
            if schema.allows(attribute, value) == Some(false) {
                return Err(RecognitionError::SchemaIncompatible {
                    object: o.id.clone(),
                    attribute: attribute.clone(),
                    value: value.clone(),
                });
            }
        }
    }
    Ok(())
}
