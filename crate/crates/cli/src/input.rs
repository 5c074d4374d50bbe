//! Input documents: a `kind` tag plus the payload of the matching type.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use oddsig::{FamilyTriple, GaloisElement, GroupDoc, PlaneCurve, ProjMap, QGonalCurve, QGonalMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputDocument {
    PlaneCurve(PlaneCurve),
    ProjectiveMap(ProjMap),
    QgonalCurve(QGonalCurve),
    QgonalMap(QGonalMap),
    Group(GroupDoc),
    FamilyTriple(FamilyTriple),
    GaloisAction(GaloisElement),
}

impl InputDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            InputDocument::PlaneCurve(_) => "plane_curve",
            InputDocument::ProjectiveMap(_) => "projective_map",
            InputDocument::QgonalCurve(_) => "qgonal_curve",
            InputDocument::QgonalMap(_) => "qgonal_map",
            InputDocument::Group(_) => "group",
            InputDocument::FamilyTriple(_) => "family_triple",
            InputDocument::GaloisAction(_) => "galois_action",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{source_name}:{line}:{column}: parse error: {message}")]
    Parse {
        source_name: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{source_name}: schema error: {message}")]
    Schema { source_name: String, message: String },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Compute(#[from] oddsig::Error),
}

impl CliError {
    /// 3 when a resource bound was hit, 2 for every other input or
    /// precondition error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Compute(oddsig::Error::BoundExceeded(_)) => 3,
            _ => 2,
        }
    }
}

pub fn parse_input(text: &str) -> Result<InputDocument, CliError> {
    parse_named(text, "<input>")
}

fn parse_named(text: &str, name: &str) -> Result<InputDocument, CliError> {
    serde_json::from_str(text).map_err(|e| {
        if e.is_data() {
            CliError::Schema {
                source_name: name.to_string(),
                message: format!("{e}"),
            }
        } else {
            CliError::Parse {
                source_name: name.to_string(),
                line: e.line(),
                column: e.column(),
                message: format!("{e}"),
            }
        }
    })
}

pub fn load(path: &Path) -> Result<InputDocument, CliError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: name.clone(),
        message: e.to_string(),
    })?;
    parse_named(&text, &name)
}

fn wrong_kind(path: &Path, want: &str, doc: &InputDocument) -> CliError {
    CliError::Schema {
        source_name: path.display().to_string(),
        message: format!("expected kind {want}, found {}", doc.kind()),
    }
}

macro_rules! loader {
    ($name:ident, $variant:ident, $ty:ty, $kind:literal) => {
        pub fn $name(path: &Path) -> Result<$ty, CliError> {
            match load(path)? {
                InputDocument::$variant(v) => Ok(v),
                other => Err(wrong_kind(path, $kind, &other)),
            }
        }
    };
}

loader!(load_curve, PlaneCurve, PlaneCurve, "plane_curve");
loader!(load_map, ProjectiveMap, ProjMap, "projective_map");
loader!(load_qgonal_curve, QgonalCurve, QGonalCurve, "qgonal_curve");
loader!(load_group, Group, GroupDoc, "group");
loader!(load_triple, FamilyTriple, FamilyTriple, "family_triple");
loader!(load_galois, GaloisAction, GaloisElement, "galois_action");
