//! JSON files: templates, situations, generator specs and match reports.
//!
//! Output is pretty-printed with struct fields in declaration order and
//! floats in shortest round-trip form, so saving the same value twice gives
//! byte-identical files and loading gives back the exact value.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generate::{GenSpec, TemplateRef};
use crate::oracle::OracleRun;
use crate::recognition::{MatchOptions, MatchStats, Recognition, RecognitionError, Situation, TemplateInstance};
use crate::template::{validate_template, Template, ValidationReport};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {}", path.display())]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {}", path.display())]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{}:{line}:{column}: {message} (at `{field}`)", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        /// Path of the offending field, e.g. `constraints[2].relation.base`.
        field: String,
        message: String,
    },
    #[error("{}: invalid template: {report}", path.display())]
    InvalidTemplate { path: PathBuf, report: ValidationReport },
    #[error("{}: {reason}", path.display())]
    InvalidSituation { path: PathBuf, reason: RecognitionError },
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Read { path: path.to_owned(), source })
}

/// Parses JSON text, reporting the position and field path of any error.
pub fn parse_json<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, IoError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        IoError::Parse {
            path: path.to_owned(),
            line: inner.line(),
            column: inner.column(),
            field,
            message: inner.to_string(),
        }
    })
}

pub fn load_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T, IoError> {
    let path = path.as_ref();
    parse_json(path, &read(path)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn save_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<(), IoError> {
    write_text(path, &to_json(value))
}

pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<(), IoError> {
    let path = path.as_ref();
    fs::write(path, text).map_err(|source| IoError::Write { path: path.to_owned(), source })
}

/// Loads and validates a template.
pub fn load_template(path: impl AsRef<Path>) -> Result<Template, IoError> {
    let path = path.as_ref();
    let t: Template = load_json(path)?;
    let report = validate_template(&t);
    if !report.is_ok() {
        return Err(IoError::InvalidTemplate { path: path.to_owned(), report });
    }
    Ok(t)
}

pub fn load_situation(path: impl AsRef<Path>) -> Result<Situation, IoError> {
    let path = path.as_ref();
    let s: Situation = load_json(path)?;
    s.validate()
        .map_err(|reason| IoError::InvalidSituation { path: path.to_owned(), reason })?;
    Ok(s)
}

/// Loads a generator spec, inlining templates given by path. Paths are
/// relative to the spec file.
pub fn load_gen_spec(path: impl AsRef<Path>) -> Result<GenSpec, IoError> {
    let path = path.as_ref();
    let mut spec: GenSpec = load_json(path)?;
    let base = path.parent().unwrap_or(Path::new(""));
    for plant in &mut spec.plants {
        if let TemplateRef::Path(p) = &plant.template {
            plant.template = TemplateRef::Inline(Box::new(load_template(base.join(p))?));
        }
    }
    Ok(spec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Search,
    Oracle,
}

/// Everything a match run found, with full per-constraint breakdowns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchReport {
    pub template_id: String,
    pub situation_id: String,
    pub threshold: f64,
    pub method: Method,
    /// Search options; absent for oracle runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<MatchOptions>,
    pub instances: Vec<TemplateInstance>,
    pub statistics: MatchStats,
}

impl MatchReport {
    pub fn from_search(
        template_id: &str,
        situation_id: &str,
        threshold: f64,
        options: MatchOptions,
        rec: Recognition,
    ) -> Self {
        Self {
            template_id: template_id.to_owned(),
            situation_id: situation_id.to_owned(),
            threshold,
            method: Method::Search,
            options: Some(options),
            instances: rec.instances,
            statistics: rec.stats,
        }
    }

    pub fn from_oracle(template_id: &str, situation_id: &str, threshold: f64, run: OracleRun, wall_time_ms: f64) -> Self {
        Self {
            template_id: template_id.to_owned(),
            situation_id: situation_id.to_owned(),
            threshold,
            method: Method::Oracle,
            options: None,
            instances: run.instances,
            statistics: MatchStats {
                mappings_evaluated: run.mappings_evaluated,
                wall_time_ms,
                ..MatchStats::default()
            },
        }
    }
}

pub fn load_report(path: impl AsRef<Path>) -> Result<MatchReport, IoError> {
    load_json(path)
}
