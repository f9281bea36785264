//! The symmetric configuration space `U = ∩_x ker(M^(x) − P_Φ(x))` of a class
//! `R_(G,S,Φ)`, sampling from it, and symmetry-generic rigidity verdicts.
//!
//! `M^(x)` is block diagonal with `n` copies of `M_x`; `P_Φ(x)` is the
//! permutation matrix of `Φ(x)` expanded by `d × d` identity blocks, so that
//! `(P_Φ(x) p)_v = p_{Φ(x)(v)}`. A configuration `p ∈ ℝ^{dn}` lies in `U`
//! exactly when `M_x p(v) = p(Φ(x)(v))` for all `x` and `v`.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{is_homomorphism, TypeAssignment};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{LinearSubspace, SymmetryGroup};
use crate::linalg::{self, null_space};
use crate::placement::Placement;
use crate::rigidity::{rigidity_verdict, Framework, RigidityReport};
use crate::KERNEL_TOL;

/// The block `M^(x) − P_Φ(x)` for one group element.
pub fn constraint_block(group: &SymmetryGroup, x: usize, phi: &TypeAssignment) -> DMatrix<f64> {
    let d = group.dim();
    let perm = phi.image(x);
    let n = perm.len();
    let m = group.element(x).matrix();
    let mut block = DMatrix::zeros(d * n, d * n);
    for v in 0..n {
        block.view_mut((d * v, d * v), (d, d)).copy_from(m);
        let w = perm.apply(v);
        for k in 0..d {
            block[(d * v + k, d * w + k)] -= 1.0;
        }
    }
    block
}

/// All constraint blocks stacked. The identity element contributes a block
/// only when `Φ(Id) ≠ id`.
pub fn constraint_matrix(group: &SymmetryGroup, phi: &TypeAssignment) -> DMatrix<f64> {
    let d = group.dim();
    let n = phi.image(0).len();
    let active: Vec<usize> = (0..group.order())
        .filter(|&x| x != 0 || !phi.image(0).is_identity())
        .collect();
    let mut stacked = DMatrix::zeros(active.len() * d * n, d * n);
    for (i, &x) in active.iter().enumerate() {
        stacked
            .view_mut((i * d * n, 0), (d * n, d * n))
            .copy_from(&constraint_block(group, x, phi));
    }
    stacked
}

/// `max_{x, j} ‖(M^(x) − P_Φ(x)) u_j‖` over the columns `u_j` of `vectors`.
pub fn max_residual(group: &SymmetryGroup, phi: &TypeAssignment, vectors: &DMatrix<f64>) -> f64 {
    (0..group.order())
        .map(|x| {
            let r = constraint_block(group, x, phi) * vectors;
            (0..r.ncols())
                .map(|j| r.column(j).norm())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

/// Orthonormal basis `u_1 … u_k` of `U`, one column per basis vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigSpaceBasis {
    n: usize,
    dim: usize,
    basis: DMatrix<f64>,
}

impl ConfigSpaceBasis {
    pub fn from_matrix(n: usize, dim: usize, basis: DMatrix<f64>) -> Self {
        debug_assert_eq!(basis.nrows(), n * dim);
        ConfigSpaceBasis { n, dim, basis }
    }

    /// `k = dim U`.
    pub fn k(&self) -> usize {
        self.basis.ncols()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn vector(&self, j: usize) -> Vec<f64> {
        self.basis.column(j).iter().copied().collect()
    }

    /// The configuration `Σ t_j u_j`.
    pub fn combine(&self, t: &[f64]) -> Placement {
        let p = &self.basis * DVector::from_column_slice(t);
        Placement::new(self.dim, p.iter().copied().collect()).expect("d divides dn")
    }

    /// Whether the configuration lies in `U` up to `tol` (distance to `U`).
    pub fn contains(&self, p: &Placement, tol: f64) -> bool {
        let v = DVector::from_column_slice(p.as_slice());
        let proj = &self.basis * (self.basis.transpose() * &v);
        (v - proj).norm() <= tol
    }
}

/// Computes `U` for the class `R_(G,S,Φ)` as the kernel of the stacked
/// constraint matrix.
pub fn config_space_basis(
    graph: &Graph,
    group: &SymmetryGroup,
    phi: &TypeAssignment,
) -> Result<ConfigSpaceBasis> {
    phi.check(graph, group)?;
    let n = graph.vertex_count();
    let basis = null_space(&constraint_matrix(group, phi), KERNEL_TOL);
    Ok(ConfigSpaceBasis {
        n,
        dim: group.dim(),
        basis,
    })
}

/// Result of the exact emptiness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Emptiness {
    pub empty: bool,
    /// Edges whose endpoints coincide in every configuration of `U`.
    pub edges: Vec<(usize, usize)>,
}

/// The class contains no framework iff some edge `{u, v}` has
/// `p_u − p_v = 0` on all of `U`; this is checked on the basis vectors.
pub fn class_is_empty(graph: &Graph, basis: &ConfigSpaceBasis, tol: f64) -> Emptiness {
    let d = basis.dim();
    let b = basis.matrix();
    let edges: Vec<(usize, usize)> = graph
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| {
            (0..b.ncols()).all(|j| {
                let diff: Vec<f64> = (0..d)
                    .map(|k| b[(d * u + k, j)] - b[(d * v + k, j)])
                    .collect();
                linalg::norm(&diff) <= tol
            })
        })
        .collect();
    Emptiness {
        empty: !edges.is_empty(),
        edges,
    }
}

fn has_coincident_bar(graph: &Graph, p: &Placement, tol: f64) -> bool {
    graph.edges().iter().any(|&(u, v)| p.distance(u, v) <= tol)
}

/// Draws `t ∈ [−1, 1]^k` uniformly, forms `Σ t_j u_j`, scales it into the
/// unit box and redraws while some bar is shorter than `tol`.
pub fn sample_config<R: Rng + ?Sized>(
    graph: &Graph,
    basis: &ConfigSpaceBasis,
    rng: &mut R,
    retries: usize,
    tol: f64,
) -> Result<Placement> {
    let attempts = retries.max(1);
    for _ in 0..attempts {
        let t: Vec<f64> = (0..basis.k())
            .map(|_| rng.random_range(-1.0..=1.0))
            .collect();
        let p = basis.combine(&t).normalized();
        if !has_coincident_bar(graph, &p, tol) {
            return Ok(p);
        }
    }
    Err(Error::SamplingExhausted(attempts))
}

/// Vertex orbits under `x ↦ Φ(x)` together with the subspace each orbit
/// representative is confined to.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitStructure {
    pub orbits: Vec<Vec<usize>>,
    /// Smallest vertex of each orbit.
    pub representatives: Vec<usize>,
    /// `F(v_i)`: intersection of the symmetry elements of all `x` with
    /// `Φ(x)(v_i) = v_i`.
    pub fixed_spaces: Vec<LinearSubspace>,
}

/// Orbit decomposition for a homomorphic type.
pub fn orbit_structure(
    graph: &Graph,
    group: &SymmetryGroup,
    phi: &TypeAssignment,
) -> Result<OrbitStructure> {
    phi.check(graph, group)?;
    if !is_homomorphism(group, phi) {
        return Err(Error::NotAHomomorphism);
    }
    let n = graph.vertex_count();
    let d = group.dim();
    let mut seen = alloc::vec![false; n];
    let mut orbits = Vec::new();
    let mut representatives = Vec::new();
    let mut fixed_spaces = Vec::new();
    for v in 0..n {
        if seen[v] {
            continue;
        }
        let mut orbit: Vec<usize> = (0..group.order()).map(|x| phi.image(x).apply(v)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &w in &orbit {
            seen[w] = true;
        }
        let stabilizer: Vec<usize> = (0..group.order())
            .filter(|&x| phi.image(x).apply(v) == v)
            .collect();
        let mut stacked = DMatrix::zeros(stabilizer.len() * d, d);
        for (i, &x) in stabilizer.iter().enumerate() {
            let shifted = group.element(x).matrix() - DMatrix::identity(d, d);
            stacked.view_mut((i * d, 0), (d, d)).copy_from(&shifted);
        }
        fixed_spaces.push(LinearSubspace::from_basis(null_space(&stacked, KERNEL_TOL)));
        representatives.push(v);
        orbits.push(orbit);
    }
    Ok(OrbitStructure {
        orbits,
        representatives,
        fixed_spaces,
    })
}

fn unit_ball_point<R: Rng + ?Sized>(space: &LinearSubspace, rng: &mut R) -> Vec<f64> {
    let f = space.dim();
    let d = space.ambient_dim();
    if f == 0 {
        return alloc::vec![0.0; d];
    }
    let coeffs = loop {
        let c: Vec<f64> = (0..f).map(|_| rng.random_range(-1.0..=1.0)).collect();
        if linalg::norm(&c) <= 1.0 {
            break c;
        }
    };
    let v = space.basis() * DVector::from_vec(coeffs);
    v.iter().copied().collect()
}

/// Places each orbit representative uniformly in the unit ball of its
/// `F(v_i)` and lets the group place the rest of the orbit:
/// `p(Φ(x)(v_i)) = M_x p(v_i)`.
pub fn orbit_sample<R: Rng + ?Sized>(
    graph: &Graph,
    group: &SymmetryGroup,
    phi: &TypeAssignment,
    orbits: &OrbitStructure,
    rng: &mut R,
    retries: usize,
    tol: f64,
) -> Result<Placement> {
    let n = graph.vertex_count();
    let d = group.dim();
    let attempts = retries.max(1);
    for _ in 0..attempts {
        let mut p = Placement::zeros(n, d);
        let mut placed = alloc::vec![false; n];
        for (&rep, space) in orbits.representatives.iter().zip(&orbits.fixed_spaces) {
            let base = unit_ball_point(space, rng);
            for x in 0..group.order() {
                let w = phi.image(x).apply(rep);
                let q = group.element(x).apply(&base);
                if placed[w] {
                    let diff: Vec<f64> = q.iter().zip(p.point(w)).map(|(a, b)| a - b).collect();
                    if linalg::norm(&diff) > 1e-9 {
                        return Err(Error::InconsistentPropagation(w));
                    }
                } else {
                    p.point_mut(w).copy_from_slice(&q);
                    placed[w] = true;
                }
            }
        }
        if has_coincident_bar(graph, &p, tol) {
            continue;
        }
        let residual = (0..group.order())
            .map(|x| {
                (constraint_block(group, x, phi) * DVector::from_column_slice(p.as_slice())).norm()
            })
            .fold(0.0, f64::max);
        if residual > 1e-8 {
            return Err(Error::InconsistentPropagation(0));
        }
        return Ok(p);
    }
    Err(Error::SamplingExhausted(attempts))
}

/// Knobs for [`sym_generic_verdict`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymGenericOptions {
    pub trials: usize,
    pub seed: u64,
    pub rank_tol: f64,
    pub geom_tol: f64,
    pub retries: usize,
}

impl Default for SymGenericOptions {
    fn default() -> Self {
        SymGenericOptions {
            trials: 20,
            seed: 0,
            rank_tol: crate::DEFAULT_RANK_TOL,
            geom_tol: crate::DEFAULT_GEOM_TOL,
            retries: 100,
        }
    }
}

/// A sampled member of the class with its rigidity report.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub placement: Placement,
    pub report: RigidityReport,
}

/// Outcome of sampling a class.
///
/// A `Some` witness certifies the corresponding symmetry-generic property
/// for the whole class (one rigid member makes almost all members rigid). A
/// `None` only means no witness turned up in `samples_drawn` draws.
#[derive(Debug, Clone, PartialEq)]
pub struct SymGenericReport {
    pub k: usize,
    pub empty: bool,
    pub offending_edges: Vec<(usize, usize)>,
    pub samples_drawn: usize,
    pub ranks: Vec<usize>,
    pub max_rank: Option<usize>,
    /// A sample of maximal rank.
    pub best: Option<Witness>,
    pub rigid_witness: Option<Witness>,
    pub independent_witness: Option<Witness>,
    pub isostatic_witness: Option<Witness>,
}

impl SymGenericReport {
    pub fn generically_rigid(&self) -> bool {
        self.rigid_witness.is_some()
    }

    pub fn generically_independent(&self) -> bool {
        self.independent_witness.is_some()
    }

    pub fn generically_isostatic(&self) -> bool {
        self.isostatic_witness.is_some()
    }
}

/// Samples `trials` members of `R_(G,S,Φ)` and collects rigidity witnesses.
pub fn sym_generic_verdict(
    graph: &Graph,
    group: &SymmetryGroup,
    phi: &TypeAssignment,
    options: &SymGenericOptions,
) -> Result<SymGenericReport> {
    let basis = config_space_basis(graph, group, phi)?;
    let emptiness = class_is_empty(graph, &basis, options.geom_tol);
    let mut report = SymGenericReport {
        k: basis.k(),
        empty: emptiness.empty,
        offending_edges: emptiness.edges,
        samples_drawn: 0,
        ranks: Vec::new(),
        max_rank: None,
        best: None,
        rigid_witness: None,
        independent_witness: None,
        isostatic_witness: None,
    };
    if report.empty {
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for _ in 0..options.trials {
        let p = sample_config(graph, &basis, &mut rng, options.retries, options.geom_tol)?;
        let framework = Framework::new(graph.clone(), p, options.geom_tol)?;
        let rep = rigidity_verdict(&framework, options.rank_tol);
        report.samples_drawn += 1;
        report.ranks.push(rep.rank);
        let witness = || Witness {
            placement: framework.placement().clone(),
            report: rep.clone(),
        };
        if report.max_rank.is_none_or(|m| rep.rank > m) {
            report.max_rank = Some(rep.rank);
            report.best = Some(witness());
        }
        if rep.infinitesimally_rigid && report.rigid_witness.is_none() {
            report.rigid_witness = Some(witness());
        }
        if rep.independent && report.independent_witness.is_none() {
            report.independent_witness = Some(witness());
        }
        if rep.isostatic && report.isostatic_witness.is_none() {
            report.isostatic_witness = Some(witness());
        }
    }
    Ok(report)
}

/// Seeded generator used by the sampling entry points.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
