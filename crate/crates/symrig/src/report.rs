//! JSON shapes of command output.

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use symrig_core::{
    Graph, Placement, RigidityReport, SymGenericReport, SymmetryGroup, TypeAssignment,
};

/// A JSON object whose keys keep insertion order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Ordered<V>(pub Vec<(String, V)>);

impl<V: Serialize> Serialize for Ordered<V> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// `{"Id": "id", "s": "(v1 v2)(v5 v6)"}` in group order.
pub fn type_json(graph: &Graph, group: &SymmetryGroup, phi: &TypeAssignment) -> Ordered<String> {
    Ordered(phi.describe(graph, group))
}

/// `{"v1": [x, y], …}` in vertex order.
pub fn coordinates_json(graph: &Graph, p: &Placement) -> Ordered<Vec<f64>> {
    Ordered(
        (0..p.len())
            .map(|v| (graph.label(v), p.point(v).to_vec()))
            .collect(),
    )
}

pub fn edge_names(graph: &Graph, edges: &[(usize, usize)]) -> Vec<[String; 2]> {
    edges
        .iter()
        .map(|&(u, v)| [graph.label(u), graph.label(v)])
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct RigidityJson {
    pub rank: usize,
    pub rows: usize,
    pub columns: usize,
    pub affine_span_dim: usize,
    pub trivial_dim: usize,
    pub infinitesimally_rigid: bool,
    pub independent: bool,
    pub isostatic: bool,
}

impl From<&RigidityReport> for RigidityJson {
    fn from(r: &RigidityReport) -> Self {
        RigidityJson {
            rank: r.rank,
            rows: r.row_count,
            columns: r.col_count,
            affine_span_dim: r.affine_span_dim,
            trivial_dim: r.trivial_dim,
            infinitesimally_rigid: r.infinitesimally_rigid,
            independent: r.independent,
            isostatic: r.isostatic,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameworkJson {
    /// Whether the given coordinates realize the class's type.
    pub in_class: bool,
    pub rigidity: RigidityJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub coordinates: Ordered<Vec<f64>>,
    pub rigidity: RigidityJson,
}

/// How a symmetry-generic property was decided.
pub fn evidence(found: bool, trials: usize) -> String {
    if found {
        "certified".into()
    } else {
        format!("no witness in {trials} trials")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassJson {
    #[serde(rename = "type")]
    pub type_map: Ordered<String>,
    pub homomorphism: bool,
    pub k: usize,
    pub empty: bool,
    pub offending_edges: Vec<[String; 2]>,
    pub trials: usize,
    pub samples_drawn: usize,
    pub ranks: Vec<usize>,
    pub max_rank: Option<usize>,
    pub rigid: bool,
    pub independent: bool,
    pub isostatic: bool,
    pub evidence: Ordered<String>,
    /// A sample of maximal rank.
    pub witness: Option<WitnessJson>,
}

impl ClassJson {
    pub fn new(
        graph: &Graph,
        group: &SymmetryGroup,
        phi: &TypeAssignment,
        report: &SymGenericReport,
        trials: usize,
    ) -> Self {
        let n = report.samples_drawn;
        let ev = |found: bool| {
            if report.empty {
                "class is empty".to_string()
            } else {
                evidence(found, n)
            }
        };
        ClassJson {
            type_map: type_json(graph, group, phi),
            homomorphism: symrig_core::is_homomorphism(group, phi),
            k: report.k,
            empty: report.empty,
            offending_edges: edge_names(graph, &report.offending_edges),
            trials,
            samples_drawn: n,
            ranks: report.ranks.clone(),
            max_rank: report.max_rank,
            rigid: report.generically_rigid(),
            independent: report.generically_independent(),
            isostatic: report.generically_isostatic(),
            evidence: Ordered(vec![
                ("rigid".into(), ev(report.generically_rigid())),
                ("independent".into(), ev(report.generically_independent())),
                ("isostatic".into(), ev(report.generically_isostatic())),
            ]),
            witness: report.best.as_ref().map(|w| WitnessJson {
                coordinates: coordinates_json(graph, &w.placement),
                rigidity: (&w.report).into(),
            }),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeJson {
    pub group: String,
    pub group_order: usize,
    pub dimension: usize,
    pub vertices: usize,
    pub edges: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub framework: Option<FrameworkJson>,
    pub classes: Vec<ClassJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TypeEntryJson {
    #[serde(rename = "type")]
    pub type_map: Ordered<String>,
    pub homomorphism: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TypesJson {
    pub coincidence_group: Vec<String>,
    pub coincidence_order: usize,
    pub normalized: bool,
    pub count: usize,
    pub types: Vec<TypeEntryJson>,
    pub homomorphic_type_exists: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisJson {
    #[serde(rename = "type")]
    pub type_map: Ordered<String>,
    pub k: usize,
    pub residual: f64,
    pub basis: Vec<Ordered<Vec<f64>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EmptyJson {
    pub empty: bool,
    pub edges: Vec<[String; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleJson {
    #[serde(rename = "type")]
    pub type_map: Ordered<String>,
    pub k: usize,
    pub seed: u64,
    pub samples: Vec<Ordered<Vec<f64>>>,
}

/// One oracle run, or the reason it was skipped.
#[derive(Debug, Clone, Serialize)]
pub struct OracleCheck {
    pub ran: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    #[serde(flatten)]
    pub details: serde_json::Map<String, serde_json::Value>,
}

impl OracleCheck {
    pub fn skipped(reason: impl Into<String>) -> Self {
        OracleCheck {
            ran: false,
            reason: Some(reason.into()),
            agree: None,
            details: Default::default(),
        }
    }

    pub fn ran(agree: Option<bool>, details: serde_json::Map<String, serde_json::Value>) -> Self {
        OracleCheck {
            ran: true,
            reason: None,
            agree,
            details,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleJson {
    pub types: OracleCheck,
    pub kernel: OracleCheck,
    pub generic: OracleCheck,
}
