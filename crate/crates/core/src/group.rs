//! Finite orthogonal groups in dimensions 2 and 3.
//!
//! Groups are built from generator matrices and closed numerically. Entries
//! within `1e-12` of `0, ±1/2, ±1` are snapped to those values after every
//! product so repeated multiplication does not drift, and two matrices are
//! the same element when their entries agree to `1e-9`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{self, max_abs_diff};
use crate::KERNEL_TOL;

/// Entry-wise tolerance for orthogonality and determinant checks.
pub const ORTHO_TOL: f64 = 1e-12;
/// Max-entry distance below which two matrices are the same group element.
pub const MATRIX_EQ_TOL: f64 = 1e-9;
/// Largest group the closure will build (`I_h` has 120 elements).
pub const MAX_GROUP_ORDER: usize = 200;

const SNAP_TOL: f64 = 1e-12;

fn snap(m: &mut DMatrix<f64>) {
    for x in m.iter_mut() {
        for target in [0.0, 0.5, -0.5, 1.0, -1.0] {
            if (*x - target).abs() <= SNAP_TOL {
                *x = target;
            }
        }
    }
}

fn orthogonality_error(m: &DMatrix<f64>) -> f64 {
    let d = m.nrows();
    max_abs_diff(&(m.transpose() * m), &DMatrix::identity(d, d))
}

/// An origin-fixing isometry of `ℝ^d`, i.e. an orthogonal matrix `M_x`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalOp {
    matrix: DMatrix<f64>,
    label: String,
}

impl OrthogonalOp {
    /// Wraps `matrix`, which must be square and orthogonal to `1e-12`.
    pub fn new(matrix: DMatrix<f64>, label: impl Into<String>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        if orthogonality_error(&matrix) > ORTHO_TOL {
            return Err(Error::NonOrthogonalGenerator(0));
        }
        let mut matrix = matrix;
        snap(&mut matrix);
        Ok(OrthogonalOp {
            matrix,
            label: label.into(),
        })
    }

    /// Accepts a matrix that is orthogonal only to `tol` (e.g. typed with a few
    /// digits) and replaces it by the nearest orthogonal matrix `U Vᵀ`.
    pub fn from_approx(matrix: DMatrix<f64>, label: impl Into<String>, tol: f64) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        if orthogonality_error(&matrix) > tol {
            return Err(Error::NonOrthogonalGenerator(0));
        }
        let svd = matrix.svd(true, true);
        let polished = svd.u.expect("u requested") * svd.v_t.expect("v_t requested");
        OrthogonalOp::new(polished, label)
    }

    pub fn identity(dim: usize) -> Self {
        OrthogonalOp {
            matrix: DMatrix::identity(dim, dim),
            label: "Id".into(),
        }
    }

    /// Counter-clockwise rotation of the plane by `angle`.
    pub fn rotation_2d(angle: f64) -> Self {
        let (s, c) = (libm::sin(angle), libm::cos(angle));
        let mut m = DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
        snap(&mut m);
        OrthogonalOp::unlabeled(m)
    }

    /// Reflection in the line through the origin at `angle` to the x-axis.
    pub fn reflection_2d(angle: f64) -> Self {
        let (s, c) = (libm::sin(2.0 * angle), libm::cos(2.0 * angle));
        let mut m = DMatrix::from_row_slice(2, 2, &[c, s, s, -c]);
        snap(&mut m);
        OrthogonalOp::unlabeled(m)
    }

    /// Right-handed rotation by `angle` about `axis`.
    pub fn rotation_3d(axis: [f64; 3], angle: f64) -> Self {
        let k = unit(axis);
        let (s, c) = (libm::sin(angle), libm::cos(angle));
        let mut m = DMatrix::zeros(3, 3);
        let cross = [[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]];
        for r in 0..3 {
            for col in 0..3 {
                let id = if r == col { 1.0 } else { 0.0 };
                m[(r, col)] = c * id + s * cross[r][col] + (1.0 - c) * k[r] * k[col];
            }
        }
        snap(&mut m);
        OrthogonalOp::unlabeled(m)
    }

    /// Reflection in the plane through the origin with the given normal.
    pub fn reflection_3d(normal: [f64; 3]) -> Self {
        let n = unit(normal);
        let mut m = DMatrix::identity(3, 3);
        for r in 0..3 {
            for c in 0..3 {
                m[(r, c)] -= 2.0 * n[r] * n[c];
            }
        }
        snap(&mut m);
        OrthogonalOp::unlabeled(m)
    }

    /// Point inversion `−I`.
    pub fn inversion(dim: usize) -> Self {
        OrthogonalOp::unlabeled(-DMatrix::identity(dim, dim))
    }

    fn unlabeled(matrix: DMatrix<f64>) -> Self {
        let label = geometric_label(&matrix);
        OrthogonalOp { matrix, label }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.determinant()
    }

    pub fn is_identity(&self) -> bool {
        let d = self.dim();
        max_abs_diff(&self.matrix, &DMatrix::identity(d, d)) <= MATRIX_EQ_TOL
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d)
            .map(|r| (0..d).map(|c| self.matrix[(r, c)] * v[c]).sum())
            .collect()
    }

    /// `self · other` as matrices (apply `other` first).
    pub fn compose(&self, other: &OrthogonalOp) -> OrthogonalOp {
        let mut m = &self.matrix * &other.matrix;
        snap(&mut m);
        OrthogonalOp::unlabeled(m)
    }

    pub fn approx_eq(&self, other: &OrthogonalOp) -> bool {
        max_abs_diff(&self.matrix, &other.matrix) <= MATRIX_EQ_TOL
    }

    /// The symmetry element `F_x = ker(M_x − I)`.
    pub fn fixed_subspace(&self) -> LinearSubspace {
        let d = self.dim();
        let shifted = &self.matrix - DMatrix::identity(d, d);
        LinearSubspace {
            basis: linalg::null_space(&shifted, KERNEL_TOL),
            ambient: d,
        }
    }

    /// Least `k ≥ 1` with `M^k = I`.
    pub fn order(&self) -> Result<usize> {
        let d = self.dim();
        let id = DMatrix::identity(d, d);
        let mut power = self.matrix.clone();
        for k in 1..=MAX_GROUP_ORDER {
            if max_abs_diff(&power, &id) <= MATRIX_EQ_TOL {
                return Ok(k);
            }
            power = &power * &self.matrix;
            snap(&mut power);
        }
        Err(Error::OrderBoundExceeded(MAX_GROUP_ORDER))
    }
}

/// Order of a group element; see [`OrthogonalOp::order`].
pub fn element_order(x: &OrthogonalOp) -> Result<usize> {
    x.order()
}

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = linalg::norm(&v);
    [v[0] / n, v[1] / n, v[2] / n]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// `(m, k)` with `angle = 2πk/m`, `gcd(k, m) = 1`, `0 ≤ k < m`.
fn rational_turn(angle: f64) -> Option<(usize, usize)> {
    let turns = angle / (2.0 * PI);
    for m in 1..=MAX_GROUP_ORDER {
        let x = turns * m as f64;
        let k = libm::round(x);
        if (x - k).abs() < 1e-6 {
            let k = (k as i64).rem_euclid(m as i64) as usize;
            return Some((m, k));
        }
    }
    None
}

fn power_label(prefix: &str, angle: f64) -> String {
    match rational_turn(angle) {
        Some((1, _)) => "Id".into(),
        Some((m, 1)) => format!("{prefix}{m}"),
        Some((m, k)) => format!("{prefix}{m}^{k}"),
        None => format!("{prefix}?"),
    }
}

/// Rotation axis with a canonical sign together with the rotation angle in
/// `[0, 2π)` about that axis.
fn axis_angle(r: &DMatrix<f64>) -> ([f64; 3], f64) {
    let w = [
        (r[(2, 1)] - r[(1, 2)]) / 2.0,
        (r[(0, 2)] - r[(2, 0)]) / 2.0,
        (r[(1, 0)] - r[(0, 1)]) / 2.0,
    ];
    let cos = ((r[(0, 0)] + r[(1, 1)] + r[(2, 2)] - 1.0) / 2.0).clamp(-1.0, 1.0);
    let sin = linalg::norm(&w);
    let (mut axis, mut angle) = if sin > 1e-9 {
        ([w[0] / sin, w[1] / sin, w[2] / sin], libm::atan2(sin, cos))
    } else if cos > 0.0 {
        ([0.0, 0.0, 1.0], 0.0)
    } else {
        // Half-turn: the axis is any non-zero column of (R + I)/2.
        let mut best = [0.0; 3];
        let mut best_norm = 0.0;
        for c in 0..3 {
            let col = [
                (r[(0, c)] + if c == 0 { 1.0 } else { 0.0 }) / 2.0,
                (r[(1, c)] + if c == 1 { 1.0 } else { 0.0 }) / 2.0,
                (r[(2, c)] + if c == 2 { 1.0 } else { 0.0 }) / 2.0,
            ];
            let n = linalg::norm(&col);
            if n > best_norm {
                best_norm = n;
                best = col;
            }
        }
        (unit(best), PI)
    };
    let leading = axis.iter().copied().find(|x| x.abs() > 1e-9).unwrap_or(1.0);
    if leading < 0.0 {
        axis = [-axis[0], -axis[1], -axis[2]];
        angle = 2.0 * PI - angle;
    }
    (axis, angle)
}

/// Schoenflies-style name of an orthogonal matrix in dimension 2 or 3:
/// `Id`, `C{m}^{k}`, `s`, `i`, `S{m}^{k}`. Rotation exponents refer to a
/// canonically oriented axis.
pub fn geometric_label(m: &DMatrix<f64>) -> String {
    let d = m.nrows();
    let det = m.determinant();
    match d {
        2 => {
            if det > 0.0 {
                power_label("C", libm::atan2(m[(1, 0)], m[(0, 0)]))
            } else {
                "s".into()
            }
        }
        3 => {
            if det > 0.0 {
                let (_, angle) = axis_angle(m);
                power_label("C", angle)
            } else {
                let (_, psi) = axis_angle(&(-m));
                match rational_turn(psi + PI) {
                    Some((1, _)) => "s".into(),
                    Some((2, 1)) => "i".into(),
                    _ => power_label("S", psi + PI),
                }
            }
        }
        _ => "g".into(),
    }
}

/// A linear subspace of `ℝ^d` given by an orthonormal basis (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSubspace {
    basis: DMatrix<f64>,
    ambient: usize,
}

impl LinearSubspace {
    pub fn from_basis(basis: DMatrix<f64>) -> Self {
        let ambient = basis.nrows();
        LinearSubspace { basis, ambient }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Orthonormal spanning vectors as columns; `d × 0` for `{0}`.
    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// Distance from `v` to the subspace is at most `tol`.
    pub fn contains(&self, v: &[f64], tol: f64) -> bool {
        let v = nalgebra::DVector::from_column_slice(v);
        let proj = &self.basis * (self.basis.transpose() * &v);
        (v - proj).norm() <= tol
    }
}

/// A finite subgroup of `O(ℝ^d)` with a precomputed multiplication table.
/// Element 0 is always the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryGroup {
    dim: usize,
    elements: Vec<OrthogonalOp>,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl SymmetryGroup {
    /// Wraps a complete element list. The identity is moved to the front;
    /// duplicates or a missing product are errors.
    pub fn from_elements(dim: usize, mut elements: Vec<OrthogonalOp>) -> Result<Self> {
        for (i, e) in elements.iter().enumerate() {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.dim(),
                });
            }
            if orthogonality_error(e.matrix()) > ORTHO_TOL {
                return Err(Error::NonOrthogonalGenerator(i));
            }
        }
        let id = elements
            .iter()
            .position(|e| e.is_identity())
            .ok_or_else(|| Error::NotAGroup("identity missing".into()))?;
        let first = elements.remove(id);
        elements.insert(0, first);
        let n = elements.len();
        for i in 0..n {
            for j in i + 1..n {
                if elements[i].approx_eq(&elements[j]) {
                    return Err(Error::NotAGroup(format!(
                        "duplicate elements {} and {}",
                        elements[i].label(),
                        elements[j].label()
                    )));
                }
            }
        }
        let find = |m: &DMatrix<f64>| {
            elements
                .iter()
                .position(|e| max_abs_diff(e.matrix(), m) <= MATRIX_EQ_TOL)
        };
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                let prod = a.matrix() * b.matrix();
                let k = find(&prod).ok_or_else(|| {
                    Error::NotAGroup(format!("{}·{} is not an element", a.label(), b.label()))
                })?;
                table.push(k);
            }
        }
        let inverses = (0..n)
            .map(|i| {
                (0..n)
                    .find(|&j| table[i * n + j] == 0)
                    .expect("closed finite set")
            })
            .collect();
        Ok(SymmetryGroup {
            dim,
            elements,
            table,
            inverses,
        })
    }

    pub fn trivial(dim: usize) -> Self {
        SymmetryGroup::from_elements(dim, alloc::vec![OrthogonalOp::identity(dim)])
            .expect("trivial group")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[OrthogonalOp] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &OrthogonalOp {
        &self.elements[i]
    }

    /// Index of `M_a · M_b`.
    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn find(&self, m: &DMatrix<f64>) -> Option<usize> {
        self.elements
            .iter()
            .position(|e| max_abs_diff(e.matrix(), m) <= MATRIX_EQ_TOL)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.label() == label)
    }

    /// Re-checks every group invariant: orthogonality, `det = ±1`, identity
    /// first, distinct elements, closure under products and inverses.
    pub fn validate(&self) -> Result<()> {
        let n = self.order();
        if !self.elements[0].is_identity() {
            return Err(Error::NotAGroup("element 0 is not the identity".into()));
        }
        for e in &self.elements {
            if orthogonality_error(e.matrix()) > ORTHO_TOL {
                return Err(Error::NotAGroup(format!("{} is not orthogonal", e.label())));
            }
            let det = e.determinant();
            if (det.abs() - 1.0).abs() > ORTHO_TOL {
                return Err(Error::NotAGroup(format!("det {} = {det}", e.label())));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && self.elements[i].approx_eq(&self.elements[j]) {
                    return Err(Error::NotAGroup("duplicate elements".into()));
                }
                let prod = self.elements[i].matrix() * self.elements[j].matrix();
                if self.find(&prod) != Some(self.product(i, j)) {
                    return Err(Error::NotAGroup("product table inconsistent".into()));
                }
            }
            let inv = self.elements[i].matrix().transpose();
            if self.find(&inv) != Some(self.inverse(i)) {
                return Err(Error::NotAGroup("inverse missing".into()));
            }
        }
        Ok(())
    }

    /// The subgroup generated by the given elements, together with the map
    /// from subgroup indices to indices in `self`. Labels are preserved.
    pub fn generated_subgroup(&self, generators: &[usize]) -> Result<(SymmetryGroup, Vec<usize>)> {
        let mut members = alloc::vec![0usize];
        let mut i = 0;
        while i < members.len() {
            for &g in generators {
                let p = self.product(members[i], g);
                if !members.contains(&p) {
                    members.push(p);
                }
            }
            i += 1;
        }
        let elements = members.iter().map(|&k| self.elements[k].clone()).collect();
        let sub = SymmetryGroup::from_elements(self.dim, elements)?;
        Ok((sub, members))
    }

    /// The group `{Q M Qᵀ}` for an orthogonal `Q`, labels kept.
    pub fn conjugated(&self, q: &DMatrix<f64>) -> Result<SymmetryGroup> {
        let elements = self
            .elements
            .iter()
            .map(|e| {
                let mut m = q * e.matrix() * q.transpose();
                snap(&mut m);
                OrthogonalOp::new(m, e.label())
            })
            .collect::<Result<Vec<_>>>()?;
        SymmetryGroup::from_elements(self.dim, elements)
    }
}

/// Closes a set of generators under multiplication.
///
/// Breadth-first over right multiplication by generators. Generators keep
/// their labels when they have one; other elements get geometric labels,
/// with `.2`, `.3`, … appended to repeated names.
pub fn close_group(generators: &[OrthogonalOp]) -> Result<SymmetryGroup> {
    let dim = match generators.first() {
        Some(g) => g.dim(),
        None => return Err(Error::BadParam("no generators".into())),
    };
    for (i, g) in generators.iter().enumerate() {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.dim(),
            });
        }
        if orthogonality_error(g.matrix()) > ORTHO_TOL {
            return Err(Error::NonOrthogonalGenerator(i));
        }
    }
    let mut elements: Vec<OrthogonalOp> = alloc::vec![OrthogonalOp::identity(dim)];
    let mut i = 0;
    while i < elements.len() {
        for g in generators {
            let candidate = elements[i].compose(g);
            if !elements.iter().any(|e| e.approx_eq(&candidate)) {
                if elements.len() == MAX_GROUP_ORDER {
                    return Err(Error::NotClosedWithinBound(MAX_GROUP_ORDER));
                }
                elements.push(candidate);
            }
        }
        i += 1;
    }
    for e in elements.iter_mut() {
        if let Some(g) = generators.iter().find(|g| g.approx_eq(e)) {
            if !g.label().is_empty() {
                e.label = g.label.clone();
            }
        }
    }
    dedupe_labels(&mut elements);
    SymmetryGroup::from_elements(dim, elements)
}

fn dedupe_labels(elements: &mut [OrthogonalOp]) {
    let mut seen: Vec<(String, usize)> = Vec::new();
    for e in elements.iter_mut() {
        match seen.iter_mut().find(|(l, _)| *l == e.label) {
            Some((_, count)) => {
                *count += 1;
                e.label = format!("{}.{}", e.label, count);
            }
            None => seen.push((e.label.clone(), 1)),
        }
    }
}

/// Orientation and size parameters for [`schoenflies_group`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GroupParams {
    /// Order `m` of the principal rotation, for names written with a
    /// placeholder (`Cm`, `Dmh`, …) instead of a number.
    pub m: Option<usize>,
    /// 2D: angle of the (first) mirror line to the x-axis. Defaults to 0.
    pub theta: Option<f64>,
    /// 3D: principal axis. Defaults to z.
    pub axis: Option<[f64; 3]>,
    /// 3D: reference direction perpendicular to the axis (the `D_m` half-turn
    /// axis, and the in-plane direction of the `C_s`/`C_mv` mirror). Defaults
    /// to x.
    pub secondary: Option<[f64; 3]>,
    /// `D_md`: angle, in the plane perpendicular to the principal axis,
    /// between the half-turn axis and the mirror plane. Defaults to `π/(2m)`.
    pub mirror_angle: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    C1,
    Cs,
    Ci,
    Cn,
    Cnv,
    Cnh,
    Dn,
    Dnh,
    Dnd,
    S2n,
    T,
    Td,
    Th,
    O,
    Oh,
    I,
    Ih,
}

fn parse_name(name: &str, m_param: Option<usize>) -> Result<(Family, usize)> {
    let fixed = match name {
        "C1" => Some(Family::C1),
        "Cs" => Some(Family::Cs),
        "Ci" => Some(Family::Ci),
        "T" => Some(Family::T),
        "Td" => Some(Family::Td),
        "Th" => Some(Family::Th),
        "O" => Some(Family::O),
        "Oh" => Some(Family::Oh),
        "I" => Some(Family::I),
        "Ih" => Some(Family::Ih),
        _ => None,
    };
    if let Some(f) = fixed {
        return Ok((f, 1));
    }
    let unknown = || Error::UnknownName(name.to_string());
    let mut chars = name.chars();
    let head = chars.next().ok_or_else(unknown)?;
    let rest = chars.as_str();
    let split = rest
        .find(|c: char| !(c.is_ascii_digit() || c == 'm' || c == 'n'))
        .unwrap_or(rest.len());
    let (middle, suffix) = rest.split_at(split);
    let m = if middle.is_empty() {
        return Err(unknown());
    } else if middle == "m" || middle == "n" {
        m_param.ok_or_else(|| Error::BadParam(format!("{name} needs the parameter m")))?
    } else if middle.chars().all(|c| c.is_ascii_digit()) {
        let v: usize = middle.parse().map_err(|_| unknown())?;
        if v == 0 {
            return Err(unknown());
        }
        if let Some(p) = m_param {
            if p != v {
                return Err(Error::BadParam(format!("m = {p} contradicts {name}")));
            }
        }
        v
    } else {
        return Err(unknown());
    };
    let family = match (head, suffix) {
        ('C', "") => Family::Cn,
        ('C', "v") => Family::Cnv,
        ('C', "h") => Family::Cnh,
        ('D', "") => Family::Dn,
        ('D', "h") => Family::Dnh,
        ('D', "d") => Family::Dnd,
        ('S', "") => Family::S2n,
        _ => return Err(unknown()),
    };
    if family == Family::S2n {
        if m % 2 != 0 || m < 4 {
            return Err(Error::BadParam(format!(
                "S_k needs an even k >= 4, got {m}"
            )));
        }
        return Ok((family, m / 2));
    }
    if m < 2 {
        return Err(Error::BadParam(format!("{name} needs m >= 2")));
    }
    Ok((family, m))
}

/// Builds a point group from its Schoenflies name.
///
/// Dimension 2 knows `C1`, `Cs`, `Cm`, `Cmv`; dimension 3 the full list
/// `C1, Cs, Ci, Cm, Cmv, Cmh, Dm, Dmh, Dmd, S2m, T, Td, Th, O, Oh, I, Ih`.
/// `m` is either written into the name (`C3v`, `S4`) or given as
/// [`GroupParams::m`].
///
/// Conventions: the 2D mirror lies along the x-axis (rotated by `theta`); the
/// mirrors of `Cmv` in 2D are labelled `s_0 … s_{m−1}`, `s_k` at angle
/// `theta + kπ/m`. In 3D the principal axis is z, the `C_s` mirror is the
/// xz-plane, the `D_m` half-turn axis is x, and polyhedral groups are
/// axis-aligned (the icosahedral groups in the golden-ratio orientation with
/// a five-fold axis along `(0, 1, φ)`). `axis`/`secondary` rotate the whole
/// frame.
pub fn schoenflies_group(name: &str, params: &GroupParams, dim: usize) -> Result<SymmetryGroup> {
    let (family, m) = parse_name(name, params.m)?;
    match dim {
        2 => planar_group(name, family, m, params),
        3 => spatial_group(family, m, params),
        _ => Err(Error::BadParam(format!("dimension {dim} is not 2 or 3"))),
    }
}

fn planar_group(
    name: &str,
    family: Family,
    m: usize,
    params: &GroupParams,
) -> Result<SymmetryGroup> {
    let theta = params.theta.unwrap_or(0.0);
    let rotations = |m: usize| -> Vec<OrthogonalOp> {
        (0..m)
            .map(|k| {
                if k == 0 {
                    OrthogonalOp::identity(2)
                } else {
                    OrthogonalOp::rotation_2d(2.0 * PI * k as f64 / m as f64)
                }
            })
            .collect()
    };
    let elements = match family {
        Family::C1 => rotations(1),
        Family::Cs => {
            let mut e = rotations(1);
            e.push(OrthogonalOp::reflection_2d(theta).with_label("s"));
            e
        }
        Family::Cn => rotations(m),
        Family::Cnv => {
            let mut e = rotations(m);
            for k in 0..m {
                let angle = theta + PI * k as f64 / m as f64;
                e.push(OrthogonalOp::reflection_2d(angle).with_label(format!("s_{k}")));
            }
            e
        }
        _ => return Err(Error::UnknownName(format!("{name} (dimension 2)"))),
    };
    SymmetryGroup::from_elements(2, elements)
}

fn frame(params: &GroupParams) -> Result<DMatrix<f64>> {
    let z = unit(params.axis.unwrap_or([0.0, 0.0, 1.0]));
    if z.iter().any(|v| !v.is_finite()) {
        return Err(Error::BadParam("axis must be non-zero".into()));
    }
    let guess = params.secondary.unwrap_or(if z[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    });
    let dot = guess[0] * z[0] + guess[1] * z[1] + guess[2] * z[2];
    let x_raw = [
        guess[0] - dot * z[0],
        guess[1] - dot * z[1],
        guess[2] - dot * z[2],
    ];
    if linalg::norm(&x_raw) < 1e-9 {
        return Err(Error::BadParam(
            "secondary direction is parallel to the axis".into(),
        ));
    }
    let x = unit(x_raw);
    let y = cross(z, x);
    Ok(DMatrix::from_column_slice(
        3,
        3,
        &[x[0], x[1], x[2], y[0], y[1], y[2], z[0], z[1], z[2]],
    ))
}

fn spatial_group(family: Family, m: usize, params: &GroupParams) -> Result<SymmetryGroup> {
    const Z: [f64; 3] = [0.0, 0.0, 1.0];
    let cm = || OrthogonalOp::rotation_3d(Z, 2.0 * PI / m as f64);
    let c2x = || OrthogonalOp::rotation_3d([1.0, 0.0, 0.0], PI);
    let sigma_h = || OrthogonalOp::reflection_3d(Z);
    let sigma_xz = || OrthogonalOp::reflection_3d([0.0, 1.0, 0.0]);
    let c2z = || OrthogonalOp::rotation_3d(Z, PI);
    let c3d = || OrthogonalOp::rotation_3d([1.0, 1.0, 1.0], 2.0 * PI / 3.0);
    let phi = (1.0 + libm::sqrt(5.0)) / 2.0;
    let c5 = || OrthogonalOp::rotation_3d([0.0, 1.0, phi], 2.0 * PI / 5.0);
    let inv = || OrthogonalOp::inversion(3);

    let (generators, expected) = match family {
        Family::C1 => (alloc::vec![OrthogonalOp::identity(3)], 1),
        Family::Cs => (alloc::vec![sigma_xz()], 2),
        Family::Ci => (alloc::vec![inv()], 2),
        Family::Cn => (alloc::vec![cm()], m),
        Family::Cnv => (alloc::vec![cm(), sigma_xz()], 2 * m),
        Family::Cnh => (alloc::vec![cm(), sigma_h()], 2 * m),
        Family::Dn => (alloc::vec![cm(), c2x()], 2 * m),
        Family::Dnh => (alloc::vec![cm(), c2x(), sigma_h()], 4 * m),
        Family::Dnd => {
            let a = params.mirror_angle.unwrap_or(PI / (2.0 * m as f64));
            let normal = [-libm::sin(a), libm::cos(a), 0.0];
            (
                alloc::vec![cm(), c2x(), OrthogonalOp::reflection_3d(normal)],
                4 * m,
            )
        }
        Family::S2n => {
            let s = OrthogonalOp::rotation_3d(Z, PI / m as f64).compose(&sigma_h());
            (alloc::vec![s], 2 * m)
        }
        Family::T => (alloc::vec![c2z(), c3d()], 12),
        Family::Td => (
            alloc::vec![c2z(), c3d(), OrthogonalOp::reflection_3d([1.0, -1.0, 0.0])],
            24,
        ),
        Family::Th => (alloc::vec![c2z(), c3d(), inv()], 24),
        Family::O => (
            alloc::vec![OrthogonalOp::rotation_3d(Z, PI / 2.0), c3d()],
            24,
        ),
        Family::Oh => (
            alloc::vec![OrthogonalOp::rotation_3d(Z, PI / 2.0), c3d(), inv()],
            48,
        ),
        Family::I => (alloc::vec![c2z(), c3d(), c5()], 60),
        Family::Ih => (alloc::vec![c2z(), c3d(), c5(), inv()], 120),
    };
    let q = frame(params)?;
    let oriented: Vec<OrthogonalOp> = generators
        .iter()
        .map(|g| {
            let mut mat = &q * g.matrix() * q.transpose();
            snap(&mut mat);
            OrthogonalOp::unlabeled(mat).with_label("")
        })
        .collect();
    let group = close_group(&oriented).map_err(|e| match e {
        Error::NotClosedWithinBound(n) => {
            Error::BadParam(format!("parameters generate more than {n} elements"))
        }
        other => other,
    })?;
    if group.order() != expected {
        return Err(Error::BadParam(format!(
            "parameters generate a group of order {} instead of {expected}",
            group.order()
        )));
    }
    Ok(group)
}
