use serde::{Deserialize, Serialize};

use super::{ComplexError, SimplicialComplex};

/// A vertex label as it appears in JSON: a string or an integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelJson {
    Str(String),
    Int(i64),
}

impl LabelJson {
    pub fn as_label(&self) -> String {
        match self {
            LabelJson::Str(s) => s.clone(),
            LabelJson::Int(i) => i.to_string(),
        }
    }
}

/// `{"vertices": [...], "edges": [[u, v], ...]}` (flag completion) or
/// `{"vertices": [...], "faces": [[...], ...]}` (downward closure).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub vertices: Vec<LabelJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(LabelJson, LabelJson)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<LabelJson>>>,
}

impl ComplexJson {
    pub fn build(&self) -> Result<SimplicialComplex, ComplexError> {
        let vertices: Vec<String> = self.vertices.iter().map(LabelJson::as_label).collect();
        match (&self.edges, &self.faces) {
            (Some(_), Some(_)) => {
                Err(ComplexError::Malformed("give either \"edges\" or \"faces\", not both".into()))
            }
            (Some(edges), None) => {
                let edges: Vec<(String, String)> =
                    edges.iter().map(|(a, b)| (a.as_label(), b.as_label())).collect();
                SimplicialComplex::flag_completion(&vertices, &edges)
            }
            (None, faces) => {
                let faces: Vec<Vec<String>> = faces
                    .iter()
                    .flatten()
                    .map(|f| f.iter().map(LabelJson::as_label).collect())
                    .collect();
                SimplicialComplex::from_faces(&vertices, &faces)
            }
        }
    }
}

impl SimplicialComplex {
    pub fn from_json_str(text: &str) -> Result<Self, ComplexError> {
        let json: ComplexJson =
            serde_json::from_str(text).map_err(|e| ComplexError::Malformed(e.to_string()))?;
        json.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec;

    #[test]
    fn parses_edges_and_faces() {
        let c4 = SimplicialComplex::from_json_str(
            r#"{"vertices":[1,2,3,4],"edges":[[1,2],[2,3],[3,4],[4,1]]}"#,
        )
        .unwrap();
        assert_eq!(c4.reduced_betti(FieldSpec::Q).reduced_betti, vec![0, 0, 1]);
        let tri = SimplicialComplex::from_json_str(r#"{"vertices":["a","b","c"],"faces":[["a","b","c"]]}"#)
            .unwrap();
        assert_eq!(tri.num_faces(2), 1);
    }

    #[test]
    fn rejects_malformed() {
        assert!(SimplicialComplex::from_json_str(r#"{"vertices":[1],"edges":[],"faces":[]}"#).is_err());
        assert!(SimplicialComplex::from_json_str(r#"{"vertices":[1],"edges":[[1,2]]}"#).is_err());
        assert!(SimplicialComplex::from_json_str(r#"{"verts":[1]}"#).is_err());
    }

    #[test]
    fn profile_json() {
        let p = crate::complex::standard::cycle(4).reduced_betti(FieldSpec::F2);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"field":"F2","reduced_betti":[0,0,1]}"#);
    }
}
