//! The JSON problem file.
//!
//! ```json
//! {
//!   "graph": {"vertices": ["v1", "v2"], "edges": [["v1", "v2"]]},
//!   "dimension": 2,
//!   "group": {"schoenflies": "C2"},
//!   "type": {"C2": "(v1 v2)"},
//!   "coordinates": {"v1": [0.5, 0.2], "v2": [-0.5, -0.2]},
//!   "seed": 7,
//!   "tolerances": {"rank": 1e-8, "geom": 1e-9}
//! }
//! ```
//!
//! `type` is `"auto"` (default), `"enumerate"`, or a map from group element
//! labels to cycle strings; elements left out of the map, other than `Id`,
//! are an error. `group` instead may list `generators`, each a `dimension ×
//! dimension` orthogonal matrix given row by row with an optional label.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use symrig_core::{
    close_group, schoenflies_group, Graph, GroupParams, OrthogonalOp, Permutation, Placement,
    SymmetryGroup, TypeAssignment,
};

use crate::InputError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub graph: GraphSpec,
    pub dimension: usize,
    pub group: GroupSpec,
    #[serde(rename = "type", default)]
    pub type_spec: TypeSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<BTreeMap<String, Vec<f64>>>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schoenflies: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub secondary: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mirror_angle: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<GeneratorSpec>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub matrix: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeMode {
    /// The homomorphic type of the given coordinates if there is one,
    /// otherwise the first one found.
    #[default]
    Auto,
    /// Every type of the given coordinates.
    Enumerate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TypeSpec {
    Mode(TypeMode),
    Explicit(BTreeMap<String, String>),
}

impl Default for TypeSpec {
    fn default() -> Self {
        TypeSpec::Mode(TypeMode::Auto)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_rank_tol")]
    pub rank: f64,
    #[serde(default = "default_geom_tol")]
    pub geom: f64,
}

fn default_rank_tol() -> f64 {
    symrig_core::DEFAULT_RANK_TOL
}

fn default_geom_tol() -> f64 {
    symrig_core::DEFAULT_GEOM_TOL
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank: default_rank_tol(),
            geom: default_geom_tol(),
        }
    }
}

/// How the type of the problem is fixed once the file is resolved.
#[derive(Debug, Clone, PartialEq)]
pub enum ResolvedType {
    Mode(TypeMode),
    Explicit(TypeAssignment),
}

/// A problem file turned into core objects.
#[derive(Debug, Clone)]
pub struct Problem {
    pub graph: Graph,
    pub group: SymmetryGroup,
    pub type_spec: ResolvedType,
    pub placement: Option<Placement>,
    pub seed: u64,
    pub tolerances: Tolerances,
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemFile, InputError> {
    let file: ProblemFile =
        serde_json::from_str(text).map_err(|e| InputError::Parse(e.to_string()))?;
    file.resolve()?;
    Ok(file)
}

impl ProblemFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }

    pub fn resolve(&self) -> Result<Problem, InputError> {
        if self.dimension == 0 {
            return Err(InputError::Parse("dimension must be at least 1".into()));
        }
        let graph = self.build_graph()?;
        let group = self.build_group()?;
        let type_spec = match &self.type_spec {
            TypeSpec::Mode(m) => ResolvedType::Mode(*m),
            TypeSpec::Explicit(map) => ResolvedType::Explicit(build_type(&graph, &group, map)?),
        };
        let placement = self
            .coordinates
            .as_ref()
            .map(|c| build_placement(&graph, self.dimension, c))
            .transpose()?;
        for (name, tol) in [
            ("rank", self.tolerances.rank),
            ("geom", self.tolerances.geom),
        ] {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(InputError::Parse(format!(
                    "tolerance {name} must be positive"
                )));
            }
        }
        Ok(Problem {
            graph,
            group,
            type_spec,
            placement,
            seed: self.seed,
            tolerances: self.tolerances,
        })
    }

    fn build_graph(&self) -> Result<Graph, InputError> {
        let names = &self.graph.vertices;
        if names.is_empty() {
            return Err(InputError::Parse("graph has no vertices".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(InputError::Parse(format!("duplicate vertex {name:?}")));
            }
            if name.is_empty() || name.contains(|c: char| c.is_whitespace() || "(),".contains(c)) {
                return Err(InputError::Parse(format!(
                    "vertex name {name:?} must be non-empty without spaces, commas or parentheses"
                )));
            }
        }
        let index = |name: &str| {
            names
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| InputError::Parse(format!("edge uses unknown vertex {name:?}")))
        };
        let mut edges = Vec::with_capacity(self.graph.edges.len());
        for [a, b] in &self.graph.edges {
            let (i, j) = (index(a)?, index(b)?);
            if i == j {
                return Err(InputError::SelfLoop(a.clone()));
            }
            edges.push((i, j));
        }
        let graph = Graph::new(names.len(), edges).map_err(|e| match e {
            symrig_core::Error::DuplicateEdge(i, j) => {
                InputError::Parse(format!("duplicate edge {{{}, {}}}", names[i], names[j]))
            }
            other => InputError::Parse(other.to_string()),
        })?;
        graph
            .with_labels(names.clone())
            .map_err(|e| InputError::Parse(e.to_string()))
    }

    fn build_group(&self) -> Result<SymmetryGroup, InputError> {
        let g = &self.group;
        match (&g.schoenflies, &g.generators) {
            (Some(name), None) => {
                let params = GroupParams {
                    m: g.m,
                    theta: g.theta,
                    axis: g.axis,
                    secondary: g.secondary,
                    mirror_angle: g.mirror_angle,
                };
                schoenflies_group(name, &params, self.dimension).map_err(|e| match e {
                    symrig_core::Error::UnknownName(n) => InputError::UnknownGroup(n),
                    other => InputError::Parse(other.to_string()),
                })
            }
            (None, Some(generators)) => {
                if g.m.is_some()
                    || g.theta.is_some()
                    || g.axis.is_some()
                    || g.secondary.is_some()
                    || g.mirror_angle.is_some()
                {
                    return Err(InputError::Parse(
                        "group parameters only apply to schoenflies names".into(),
                    ));
                }
                let d = self.dimension;
                let mut ops = Vec::with_capacity(generators.len());
                for (i, gen) in generators.iter().enumerate() {
                    if gen.matrix.len() != d || gen.matrix.iter().any(|r| r.len() != d) {
                        return Err(InputError::Parse(format!("generator {i} is not {d}x{d}")));
                    }
                    let m = DMatrix::from_fn(d, d, |r, c| gen.matrix[r][c]);
                    let label = gen.label.clone().unwrap_or_default();
                    let op = OrthogonalOp::from_approx(m, label, 1e-6).map_err(|_| {
                        InputError::Parse(format!("generator {i} is not orthogonal"))
                    })?;
                    ops.push(op);
                }
                if ops.is_empty() {
                    return Ok(SymmetryGroup::trivial(d));
                }
                close_group(&ops).map_err(|e| InputError::Parse(e.to_string()))
            }
            _ => Err(InputError::Parse(
                "group needs exactly one of schoenflies or generators".into(),
            )),
        }
    }
}

fn build_type(
    graph: &Graph,
    group: &SymmetryGroup,
    map: &BTreeMap<String, String>,
) -> Result<TypeAssignment, InputError> {
    for label in map.keys() {
        if group.index_of(label).is_none() {
            return Err(InputError::BadPermutation(format!(
                "group has no element labelled {label:?}"
            )));
        }
    }
    let mut images = Vec::with_capacity(group.order());
    for e in group.elements() {
        let perm = match map.get(e.label()) {
            Some(text) => graph
                .parse_permutation(text)
                .map_err(|err| InputError::BadPermutation(format!("{}: {err}", e.label())))?,
            None if e.is_identity() => Permutation::identity(graph.vertex_count()),
            None => {
                return Err(InputError::BadPermutation(format!(
                    "no image given for element {}",
                    e.label()
                )))
            }
        };
        images.push(perm);
    }
    let phi = TypeAssignment::new(images);
    phi.check(graph, group)
        .map_err(|e| InputError::BadPermutation(e.to_string()))?;
    Ok(phi)
}

fn build_placement(
    graph: &Graph,
    dim: usize,
    coords: &BTreeMap<String, Vec<f64>>,
) -> Result<Placement, InputError> {
    for name in coords.keys() {
        if graph.index_of(name).is_none() {
            return Err(InputError::Parse(format!(
                "coordinates for unknown vertex {name:?}"
            )));
        }
    }
    let mut flat = Vec::with_capacity(graph.vertex_count() * dim);
    for i in 0..graph.vertex_count() {
        let name = graph.label(i);
        let point = coords
            .get(&name)
            .ok_or_else(|| InputError::Parse(format!("no coordinates for vertex {name:?}")))?;
        if point.len() != dim {
            return Err(InputError::Parse(format!(
                "vertex {name:?} has {} coordinates, expected {dim}",
                point.len()
            )));
        }
        if point.iter().any(|x| !x.is_finite()) {
            return Err(InputError::Parse(format!(
                "vertex {name:?} has a non-finite coordinate"
            )));
        }
        flat.extend_from_slice(point);
    }
    Placement::new(dim, flat).map_err(|e| InputError::Parse(e.to_string()))
}
