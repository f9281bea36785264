//! Simple graphs, their automorphism groups, and the coincidence subgroup
//! `Aut(G, p)` of automorphisms that move every vertex onto a vertex placed
//! at the same point.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::perm::{default_label, Permutation};
use crate::placement::Placement;

/// A finite simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<bool>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from zero-based edges. Edges are stored as `(i, j)` with
    /// `i < j`, sorted.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adjacency = alloc::vec![false; n * n];
        let mut list = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { index: v, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if adjacency[i * n + j] {
                return Err(Error::DuplicateEdge(i, j));
            }
            adjacency[i * n + j] = true;
            adjacency[j * n + i] = true;
            list.push((i, j));
        }
        list.sort_unstable();
        Ok(Graph {
            n,
            edges: list,
            adjacency,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)));
        Graph::new(a + b, edges).expect("complete bipartite graph is simple")
    }

    pub fn cycle(n: usize) -> Self {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1))).expect("path is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.n + j]
    }

    pub fn degree(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| self.is_adjacent(i, j)).count()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.is_adjacent(i, j))
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of vertex `i`: its label, or `v{i+1}`.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => default_label(i),
        }
    }

    /// Resolves a vertex name: a label if labels are set, else `v{k}`.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|x| x == name),
            None => crate::perm::default_lookup(self.n)(name),
        }
    }

    /// Renders a permutation of this graph's vertices in cycle notation.
    pub fn cycle_string(&self, perm: &Permutation) -> String {
        perm.to_cycle_string(|i| self.label(i))
    }

    pub fn parse_permutation(&self, text: &str) -> Result<Permutation> {
        Permutation::parse_cycles(text, self.n, |s| self.index_of(s))
    }
}

/// Whether `sigma` maps the edge set onto itself.
pub fn is_automorphism(graph: &Graph, sigma: &Permutation) -> Result<bool> {
    if sigma.len() != graph.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: graph.vertex_count(),
            found: sigma.len(),
        });
    }
    // A bijection on vertices is injective on edges, so mapping every edge to
    // an edge already maps the edge set onto itself.
    Ok(graph
        .edges()
        .iter()
        .all(|&(i, j)| graph.is_adjacent(sigma.apply(i), sigma.apply(j))))
}

/// All automorphisms of `graph`, sorted lexicographically by image sequence.
///
/// Backtracking over vertex images; a candidate image must have the same
/// degree and the same adjacency to every vertex already placed.
pub fn automorphisms(graph: &Graph, cap: usize) -> Result<Vec<Permutation>> {
    let n = graph.vertex_count();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let degrees: Vec<usize> = (0..n).map(|i| graph.degree(i)).collect();
    let mut images = alloc::vec![usize::MAX; n];
    let mut used = alloc::vec![false; n];
    let mut out = Vec::new();
    search(graph, &degrees, 0, &mut images, &mut used, &mut out);
    out.sort();
    Ok(out)
}

fn search(
    graph: &Graph,
    degrees: &[usize],
    v: usize,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Permutation>,
) {
    let n = graph.vertex_count();
    if v == n {
        out.push(Permutation::from_images(images.clone()).expect("bijective by construction"));
        return;
    }
    for c in 0..n {
        if used[c] || degrees[c] != degrees[v] {
            continue;
        }
        if (0..v).any(|u| graph.is_adjacent(v, u) != graph.is_adjacent(c, images[u])) {
            continue;
        }
        images[v] = c;
        used[c] = true;
        search(graph, degrees, v + 1, images, used, out);
        used[c] = false;
    }
    images[v] = usize::MAX;
}

/// `Aut(G, p)`: automorphisms `α` with `‖p(v) − p(α(v))‖ ≤ tol` for every `v`.
pub fn coincidence_automorphisms(
    graph: &Graph,
    placement: &Placement,
    tol: f64,
    cap: usize,
) -> Result<Vec<Permutation>> {
    if placement.len() != graph.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: graph.vertex_count(),
            found: placement.len(),
        });
    }
    Ok(automorphisms(graph, cap)?
        .into_iter()
        .filter(|a| (0..graph.vertex_count()).all(|v| placement.distance(v, a.apply(v)) <= tol))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::default_lookup;
    use itertools::Itertools;

    fn brute_force(graph: &Graph) -> Vec<Permutation> {
        let n = graph.vertex_count();
        (0..n)
            .permutations(n)
            .map(|imgs| Permutation::from_images(imgs).unwrap())
            .filter(|p| is_automorphism(graph, p).unwrap())
            .sorted()
            .collect()
    }

    fn two_triangles() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Graph::new(2, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert_eq!(Graph::new(0, []), Err(Error::EmptyGraph));
    }

    #[test]
    fn k2_has_two_automorphisms() {
        let aut = automorphisms(&Graph::complete(2), 12).unwrap();
        assert_eq!(aut.len(), 2);
        assert!(aut[0].is_identity());
    }

    #[test]
    fn two_triangles_sharing_an_edge() {
        let g = two_triangles();
        let aut = automorphisms(&g, 12).unwrap();
        assert_eq!(aut, brute_force(&g));
        let expected: Vec<Permutation> = ["id", "(v1 v2)", "(v3 v4)", "(v1 v2)(v3 v4)"]
            .iter()
            .map(|s| Permutation::parse_cycles(s, 4, default_lookup(4)).unwrap())
            .sorted()
            .collect();
        assert_eq!(aut, expected);
    }

    #[test]
    fn nine_cycle_is_dihedral() {
        let g = Graph::cycle(9);
        let aut = automorphisms(&g, 12).unwrap();
        assert_eq!(aut.len(), 18);
        assert_eq!(aut, brute_force(&g));
    }

    #[test]
    fn complete_graph_orders() {
        let mut f = 1;
        for n in 1..=5 {
            f *= n;
            assert_eq!(automorphisms(&Graph::complete(n), 12).unwrap().len(), f);
        }
    }

    #[test]
    fn is_automorphism_examples() {
        let k3 = Graph::complete(3);
        for imgs in (0..3).permutations(3) {
            assert!(is_automorphism(&k3, &Permutation::from_images(imgs).unwrap()).unwrap());
        }
        let path = Graph::path(3);
        let swap = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        assert!(!is_automorphism(&path, &swap).unwrap());
        let g = two_triangles();
        let s13 = Permutation::from_cycles(4, &[&[0, 2]]).unwrap();
        assert!(!is_automorphism(&g, &s13).unwrap());
        assert!(matches!(
            is_automorphism(&g, &Permutation::identity(3)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            automorphisms(&Graph::cycle(13), 12),
            Err(Error::CapExceeded { n: 13, cap: 12 })
        ));
        assert_eq!(automorphisms(&Graph::cycle(13), 13).unwrap().len(), 26);
    }

    #[test]
    fn coincidence_group_of_two_triangles() {
        let g = two_triangles();
        let p =
            Placement::from_points(2, &[[1.0, 0.2], [-1.0, -0.2], [0.0, 0.0], [0.0, 0.0]]).unwrap();
        let a = coincidence_automorphisms(&g, &p, 1e-9, 12).unwrap();
        assert_eq!(a.len(), 2);
        assert!(a[0].is_identity());
        assert_eq!(g.cycle_string(&a[1]), "(v3 v4)");
    }

    #[test]
    fn nine_cycle_with_threefold_placement() {
        let g = Graph::cycle(9);
        let pts: Vec<[f64; 2]> = (0..9)
            .map(|i| {
                let t = 2.0 * core::f64::consts::PI / 3.0 * i as f64;
                let (s, c) = (libm::sin(t), libm::cos(t));
                [0.7 * c - 0.2 * s, 0.7 * s + 0.2 * c]
            })
            .collect();
        let p = Placement::from_points(2, &pts).unwrap();
        let a = coincidence_automorphisms(&g, &p, 1e-9, 12).unwrap();
        let gamma = Permutation::from_images((0..9).map(|i| (i + 1) % 9).collect()).unwrap();
        let expected: Vec<Permutation> = [0, 3, 6].iter().map(|&k| gamma.pow(k)).sorted().collect();
        assert_eq!(a, expected);
    }
}
