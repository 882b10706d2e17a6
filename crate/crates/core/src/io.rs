//! JSON documents for graphs and results.
//!
//! Bipartite graph:
//! `{"emerald": ["e0", ...], "violet": ["v0", ...], "edges": [["e0", "v0"], ...]}`
//!
//! Ordinary multigraph (repeated pairs are parallel edges):
//! `{"vertices": ["a", ...], "edges": [["a", "b"], ...]}`

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bigraph::{BipartiteGraph, OrdinaryGraph};
use crate::error::{Error, Result};
use crate::hypertree::HypertreeSet;
use crate::triangulate::{FaceVector, Triangulation};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BipartiteDoc {
    emerald: Vec<String>,
    violet: Vec<String>,
    edges: Vec<(String, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrdinaryDoc {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph> {
    let doc: BipartiteDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    BipartiteGraph::new(&doc.emerald, &doc.violet, &doc.edges)
}

pub fn parse_ordinary(text: &str) -> Result<OrdinaryGraph> {
    let doc: OrdinaryDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    OrdinaryGraph::new(&doc.vertices, &doc.edges)
}

pub fn bipartite_to_json(g: &BipartiteGraph) -> Value {
    let edges: Vec<(String, String)> = (0..g.edge_count())
        .map(|i| {
            let (a, b) = g.edge_labels(i);
            (a.to_string(), b.to_string())
        })
        .collect();
    serde_json::to_value(BipartiteDoc {
        emerald: g.emerald().to_vec(),
        violet: g.violet().to_vec(),
        edges,
    })
    .expect("plain data serializes")
}

pub fn ordinary_to_json(g: &OrdinaryGraph) -> Value {
    let v = g.vertices();
    json!({
        "vertices": v,
        "edges": g.edges().iter().map(|&(a, b)| [&v[a], &v[b]]).collect::<Vec<_>>(),
    })
}

/// Hypertrees as integer arrays in class order.
pub fn hypertrees_to_json(set: &HypertreeSet) -> Value {
    json!(set.to_vecs())
}

/// Members as arrays of `[emerald, violet]` label pairs.
pub fn triangulation_to_json(t: &Triangulation<'_>) -> Value {
    let g = t.graph();
    let members: Vec<Vec<[&str; 2]>> = t
        .members()
        .iter()
        .map(|m| {
            m.edges()
                .iter()
                .map(|i| {
                    let (a, b) = g.edge_labels(i);
                    [a, b]
                })
                .collect()
        })
        .collect();
    json!({ "seed": t.seed(), "members": members })
}

pub fn face_vector_to_json(fv: &FaceVector) -> Value {
    json!({
        "f": fv.f,
        "f_interior": fv.f_interior,
        "h": fv.h.to_json(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bipartite_round_trip() {
        let g = BipartiteGraph::complete(3, 2);
        let text = bipartite_to_json(&g).to_string();
        assert_eq!(parse_bipartite(&text).unwrap(), g);
    }

    #[test]
    fn ordinary_round_trip() {
        let g = OrdinaryGraph::from_indices(2, &[(0, 1), (0, 1), (1, 0)]).unwrap();
        let text = ordinary_to_json(&g).to_string();
        assert_eq!(parse_ordinary(&text).unwrap(), g);
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(parse_bipartite("{"), Err(Error::Schema(_))));
        assert!(matches!(
            parse_bipartite(r#"{"emerald": ["a"], "edges": []}"#),
            Err(Error::Schema(_))
        ));
        assert!(matches!(
            parse_bipartite(
                r#"{"emerald": ["a"], "violet": ["b"], "edges": [["a", "b"]], "x": 1}"#
            ),
            Err(Error::Schema(_))
        ));
        assert_eq!(
            parse_bipartite(r#"{"emerald": ["a"], "violet": ["b"], "edges": [["a", "c"]]}"#),
            Err(Error::UnknownLabel("c".into()))
        );
        assert!(matches!(
            parse_ordinary(r#"{"vertices": ["a"], "edges": [["a", "a"]]}"#),
            Err(Error::Loop(_))
        ));
    }
}
