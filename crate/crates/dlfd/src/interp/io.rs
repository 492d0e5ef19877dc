//! JSON serialization for finite interpretations (`.dlfdmodel` files).
//!
//! The on-disk shape is `{"n": .., "features": {name: [..; n]}, "concepts":
//! {name: [sorted elements]}}`. Maps are emitted in sorted name order and
//! extents in ascending order, so serialization is deterministic.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::ast::{ConceptName, FeatureName};

use super::{FiniteInterpretation, ModelError};

#[derive(Serialize, Deserialize)]
pub(crate) struct ModelFile {
    n: usize,
    features: BTreeMap<String, Vec<usize>>,
    concepts: BTreeMap<String, Vec<usize>>,
}

/// The serializable file form of an interpretation, also embedded in search
/// reports so models always serialize the same way.
pub(crate) fn model_file(i: &FiniteInterpretation) -> ModelFile {
    ModelFile {
        n: i.n(),
        features: i
            .features()
            .map(|(f, t)| (f.as_str().to_owned(), t.to_vec()))
            .collect(),
        concepts: i
            .concepts()
            .map(|(c, e)| (c.as_str().to_owned(), e.iter().copied().collect()))
            .collect(),
    }
}

/// Renders an interpretation as pretty-printed JSON with a trailing newline.
pub fn to_json_string(i: &FiniteInterpretation) -> String {
    let mut s =
        serde_json::to_string_pretty(&model_file(i)).expect("model serialization cannot fail");
    s.push('\n');
    s
}

/// Parses and validates an interpretation from JSON text.
pub fn from_json_str(s: &str) -> Result<FiniteInterpretation, ModelError> {
    let file: ModelFile = serde_json::from_str(s).map_err(|e| ModelError::Json(e.to_string()))?;
    let features = file
        .features
        .into_iter()
        .map(|(f, t)| Ok((FeatureName::new(&f)?, t)))
        .collect::<Result<BTreeMap<_, _>, ModelError>>()?;
    let concepts = file
        .concepts
        .into_iter()
        .map(|(c, e)| Ok((ConceptName::new(&c)?, e.into_iter().collect())))
        .collect::<Result<BTreeMap<_, _>, ModelError>>()?;
    FiniteInterpretation::new(file.n, features, concepts)
}

/// Reads a model file from disk.
pub fn read_model(path: &Path) -> Result<FiniteInterpretation, ModelError> {
    let text = std::fs::read_to_string(path).map_err(|e| ModelError::Json(e.to_string()))?;
    from_json_str(&text)
}

/// Writes a model file to disk.
pub fn write_model(path: &Path, i: &FiniteInterpretation) -> std::io::Result<()> {
    std::fs::write(path, to_json_string(i))
}
