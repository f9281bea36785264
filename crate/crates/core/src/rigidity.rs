//! Rigidity matrix and infinitesimal rigidity verdicts.

use alloc::vec::Vec;
use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{numeric_rank, numeric_rank_floored};
use crate::placement::Placement;

/// A graph together with a placement in which no bar has coincident ends.
#[derive(Debug, Clone, PartialEq)]
pub struct Framework {
    graph: Graph,
    placement: Placement,
}

impl Framework {
    pub fn new(graph: Graph, placement: Placement, tol: f64) -> Result<Self> {
        if placement.len() != graph.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: graph.vertex_count(),
                found: placement.len(),
            });
        }
        if let Some(&(u, v)) = graph
            .edges()
            .iter()
            .find(|&&(u, v)| placement.distance(u, v) <= tol)
        {
            return Err(Error::InvalidFramework(u, v));
        }
        Ok(Framework { graph, placement })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn placement(&self) -> &Placement {
        &self.placement
    }

    pub fn dim(&self) -> usize {
        self.placement.dim()
    }

    pub fn into_parts(self) -> (Graph, Placement) {
        (self.graph, self.placement)
    }
}

/// The `|E| × dn` rigidity matrix. Defined for any placement; a bar with
/// coincident ends gives a zero row.
pub fn rigidity_matrix(graph: &Graph, placement: &Placement) -> DMatrix<f64> {
    let d = placement.dim();
    let mut r = DMatrix::zeros(graph.edge_count(), d * graph.vertex_count());
    for (row, &(i, j)) in graph.edges().iter().enumerate() {
        let (pi, pj) = (placement.point(i), placement.point(j));
        for k in 0..d {
            r[(row, d * i + k)] = pi[k] - pj[k];
            r[(row, d * j + k)] = pj[k] - pi[k];
        }
    }
    r
}

/// Dimension of the affine span of the points: the rank of the matrix with
/// rows `p_i − p_1`, measured after scaling into the unit box.
pub fn affine_span_dim(placement: &Placement) -> usize {
    let n = placement.len();
    if n <= 1 {
        return 0;
    }
    let p = placement.normalized();
    let d = p.dim();
    let first = p.point(0);
    let diffs = DMatrix::from_fn(n - 1, d, |r, c| p.point(r + 1)[c] - first[c]);
    numeric_rank_floored(&diffs, crate::DEFAULT_RANK_TOL, 1.0)
}

/// The `d` translations and `d(d−1)/2` rotations `u(v_i) = A p_i`, `A`
/// running over the elementary skew-symmetric matrices. May be linearly
/// dependent for degenerate placements.
pub fn trivial_motion_basis(placement: &Placement) -> Vec<Vec<f64>> {
    let (n, d) = (placement.len(), placement.dim());
    let mut out = Vec::with_capacity(d + d * (d - 1) / 2);
    for k in 0..d {
        let mut u = alloc::vec![0.0; d * n];
        for i in 0..n {
            u[d * i + k] = 1.0;
        }
        out.push(u);
    }
    for a in 0..d {
        for b in a + 1..d {
            let mut u = alloc::vec![0.0; d * n];
            for i in 0..n {
                let p = placement.point(i);
                u[d * i + a] = p[b];
                u[d * i + b] = -p[a];
            }
            out.push(u);
        }
    }
    out
}

/// Rank data and verdicts for one framework.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityReport {
    pub rank: usize,
    pub row_count: usize,
    pub col_count: usize,
    pub affine_span_dim: usize,
    /// Dimension of the space of trivial infinitesimal motions.
    pub trivial_dim: usize,
    pub infinitesimally_rigid: bool,
    pub independent: bool,
    pub isostatic: bool,
}

/// Infinitesimal rigidity, independence and isostaticity of `framework`.
///
/// Coordinates are scaled into the unit box first; ranks count singular
/// values above `rank_tol · σ_max`. The framework is rigid when
/// `rank = dn − (d+1 choose 2)` (for `n ≥ d`), or when the graph is complete
/// and the points are affinely independent.
pub fn rigidity_verdict(framework: &Framework, rank_tol: f64) -> RigidityReport {
    let graph = framework.graph();
    let p = framework.placement().normalized();
    let (n, d) = (p.len(), p.dim());
    let r = rigidity_matrix(graph, &p);
    let rank = numeric_rank(&r, rank_tol);
    let span = affine_span_dim(&p);

    let motions = trivial_motion_basis(&p);
    let t = DMatrix::from_fn(d * n, motions.len(), |row, col| motions[col][row]);
    let trivial_dim = numeric_rank_floored(&t, rank_tol, 1.0);

    let full = (d * n) as i64 - (d * (d + 1) / 2) as i64;
    let by_rank = n >= d && rank as i64 == full;
    let by_simplex = graph.is_complete() && span + 1 == n;
    let rigid = by_rank || by_simplex;
    let independent = rank == graph.edge_count();
    RigidityReport {
        rank,
        row_count: graph.edge_count(),
        col_count: d * n,
        affine_span_dim: span,
        trivial_dim,
        infinitesimally_rigid: rigid,
        independent,
        isostatic: rigid && independent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;
    use proptest::prelude::*;

    fn k33() -> Graph {
        Graph::complete_bipartite(3, 3)
    }

    #[test]
    fn k2_row() {
        let g = Graph::complete(2);
        let p = Placement::from_points(2, &[[0.0, 0.0], [1.0, 0.0]]).unwrap();
        let r = rigidity_matrix(&g, &p);
        assert_eq!(r, DMatrix::from_row_slice(1, 4, &[-1.0, 0.0, 1.0, 0.0]));
    }

    #[test]
    fn collinear_triangle_has_rank_two() {
        let g = Graph::complete(3);
        let p = Placement::from_points(2, &[[1.0, 0.0], [-1.0, 0.0], [0.0, 0.0]]).unwrap();
        assert_eq!(numeric_rank(&rigidity_matrix(&g, &p), 1e-8), 2);
        let f = Framework::new(g, p, 1e-9).unwrap();
        let rep = rigidity_verdict(&f, 1e-8);
        assert!(!rep.infinitesimally_rigid);
        assert_eq!(rep.affine_span_dim, 1);
    }

    #[test]
    fn coincident_points_give_zero_matrix() {
        let g = Graph::complete(3);
        let p = Placement::zeros(3, 2);
        assert_eq!(max_abs(&rigidity_matrix(&g, &p)), 0.0);
        assert_eq!(
            Framework::new(g, p, 1e-9).unwrap_err(),
            Error::InvalidFramework(0, 1)
        );
    }

    #[test]
    fn generic_triangle() {
        let g = Graph::complete(3);
        let p = Placement::from_points(2, &[[0.1, 0.2], [0.9, -0.3], [-0.4, 0.7]]).unwrap();
        let rep = rigidity_verdict(&Framework::new(g, p, 1e-9).unwrap(), 1e-8);
        assert_eq!(rep.rank, 3);
        assert!(rep.isostatic);
        assert_eq!(rep.trivial_dim, 3);
    }

    #[test]
    fn affine_spans() {
        let line = Placement::from_points(2, &[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]).unwrap();
        assert_eq!(affine_span_dim(&line), 1);
        let tet = Placement::from_points(
            3,
            &[
                [0.1, 0.2, 0.3],
                [0.9, -0.1, 0.2],
                [-0.3, 0.8, 0.1],
                [0.2, 0.1, -0.7],
            ],
        )
        .unwrap();
        assert_eq!(affine_span_dim(&tet), 3);
        let flat = Placement::from_points(
            3,
            &[
                [0.1, 0.2, 0.0],
                [0.9, -0.1, 0.0],
                [-0.3, 0.8, 0.0],
                [0.2, 0.1, 0.0],
            ],
        )
        .unwrap();
        assert_eq!(affine_span_dim(&flat), 2);
    }

    #[test]
    fn k2_in_space_is_rigid_through_the_simplex_branch() {
        let g = Graph::complete(2);
        let p = Placement::from_points(3, &[[0.1, 0.2, 0.3], [-0.5, 0.4, 0.0]]).unwrap();
        let rep = rigidity_verdict(&Framework::new(g, p, 1e-9).unwrap(), 1e-8);
        assert_eq!(rep.rank, 1);
        assert!(rep.infinitesimally_rigid && rep.isostatic);
        assert_eq!(rep.trivial_dim, 5);

        let g = Graph::new(2, []).unwrap();
        let p = Placement::from_points(3, &[[0.1, 0.2, 0.3], [-0.5, 0.4, 0.0]]).unwrap();
        let rep = rigidity_verdict(&Framework::new(g, p, 1e-9).unwrap(), 1e-8);
        assert!(!rep.infinitesimally_rigid);
    }

    #[test]
    fn generic_k33_is_isostatic() {
        let p = Placement::from_points(
            2,
            &[
                [0.3, 0.9],
                [-0.7, 0.2],
                [0.5, -0.6],
                [0.1, 0.4],
                [-0.8, -0.5],
                [0.9, 0.05],
            ],
        )
        .unwrap();
        let rep = rigidity_verdict(&Framework::new(k33(), p, 1e-9).unwrap(), 1e-8);
        assert_eq!((rep.rank, rep.row_count), (9, 9));
        assert!(rep.isostatic);
    }

    #[test]
    fn coplanar_k4_in_space() {
        let p = Placement::from_points(
            3,
            &[
                [0.1, 0.2, 0.0],
                [0.9, -0.1, 0.0],
                [-0.3, 0.8, 0.0],
                [0.2, -0.6, 0.0],
            ],
        )
        .unwrap();
        let rep = rigidity_verdict(&Framework::new(Graph::complete(4), p, 1e-9).unwrap(), 1e-8);
        assert_eq!(rep.rank, 5);
        assert!(!rep.infinitesimally_rigid);
        assert_eq!(rep.affine_span_dim, 2);
    }

    #[test]
    fn trivial_motions_are_in_the_kernel() {
        let g = Graph::complete(4);
        for d in [2usize, 3] {
            let coords: Vec<f64> = (0..4 * d)
                .map(|i| ((i * 7 + 3) % 11) as f64 / 11.0 - 0.4)
                .collect();
            let mut p = Placement::new(d, coords).unwrap();
            p.point_mut(0).iter_mut().for_each(|x| *x = 0.0);
            let r = rigidity_matrix(&g, &p);
            let motions = trivial_motion_basis(&p);
            assert_eq!(motions.len(), d + d * (d - 1) / 2);
            for u in motions {
                let ru = &r * nalgebra::DVector::from_vec(u);
                assert!(ru.amax() <= 1e-8 * max_abs(&r).max(1.0));
            }
        }
    }

    fn arb_k4_3d() -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(-1.0f64..1.0, 12)
    }

    proptest! {
        #[test]
        fn verdict_invariant_under_rotation(coords in arb_k4_3d(), angle in 0.0f64..core::f64::consts::TAU) {
            let p = Placement::new(3, coords).unwrap();
            let g = Graph::complete(4);
            prop_assume!(Framework::new(g.clone(), p.clone(), 1e-3).is_ok());
            let rot = crate::group::OrthogonalOp::rotation_3d([0.3, -0.5, 0.8], angle);
            let q = p.transformed(rot.matrix()).unwrap();
            let a = rigidity_verdict(&Framework::new(g.clone(), p, 1e-9).unwrap(), 1e-8);
            let b = rigidity_verdict(&Framework::new(g, q, 1e-9).unwrap(), 1e-8);
            prop_assert_eq!(a.rank, b.rank);
            prop_assert_eq!(a.infinitesimally_rigid, b.infinitesimally_rigid);
        }

        #[test]
        fn rank_is_bounded(coords in proptest::collection::vec(-1.0f64..1.0, 12)) {
            let p = Placement::new(2, coords).unwrap();
            let g = Graph::complete_bipartite(3, 3);
            prop_assume!(Framework::new(g.clone(), p.clone(), 1e-6).is_ok());
            let rep = rigidity_verdict(&Framework::new(g, p, 1e-9).unwrap(), 1e-8);
            prop_assert!(rep.rank <= rep.row_count.min(rep.col_count - rep.trivial_dim));
        }
    }
}
