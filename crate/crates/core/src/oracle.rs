//! Independent, deliberately naive cross-checks for tests and audits.
//!
//! Nothing here shares code paths with the main algorithms: types are found
//! by scanning every permutation, genericity by enumerating minors, and
//! kernel dimensions by exact integer elimination.

use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{TypeAssignment, ENUMERATION_LIMIT};
use crate::error::{Error, Result};
use crate::generic::constraint_matrix;
use crate::graph::{is_automorphism, Graph};
use crate::group::SymmetryGroup;
use crate::linalg::null_space;
use crate::perm::Permutation;
use crate::placement::Placement;
use crate::KERNEL_TOL;

/// Largest vertex count accepted by [`brute_force_type_search`].
pub const BRUTE_FORCE_MAX_VERTICES: usize = 9;
/// Largest group order accepted by [`brute_force_type_search`].
pub const BRUTE_FORCE_MAX_GROUP: usize = 6;
/// Largest vertex count accepted by [`exhaustive_generic_check`].
pub const MINOR_MAX_VERTICES: usize = 4;
/// Largest denominator used by [`kernel_oracle`].
pub const MAX_DENOMINATOR: i64 = 1_000_000;
/// How close an entry must be to its rational snap.
pub const RATIONAL_TOL: f64 = 1e-9;

/// Steps `idx` to the next permutation in lexicographic order.
fn next_permutation(idx: &mut [usize]) -> bool {
    let n = idx.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && idx[i - 1] >= idx[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while idx[j] <= idx[i - 1] {
        j -= 1;
    }
    idx.swap(i - 1, j);
    idx[i..].reverse();
    true
}

/// Steps `idx` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn realizes(group: &SymmetryGroup, x: usize, images: &[usize], p: &Placement, tol: f64) -> bool {
    let m = group.element(x).matrix();
    let d = p.dim();
    (0..p.len()).all(|v| {
        let q = p.point(v);
        let target = p.point(images[v]);
        (0..d).all(|r| {
            let image: f64 = (0..d).map(|c| m[(r, c)] * q[c]).sum();
            (image - target[r]).abs() <= tol
        })
    })
}

/// Every type of `(graph, p)` found by testing all `n!` permutations against
/// every group element, returned as the full Cartesian product in
/// lexicographic order.
pub fn brute_force_type_search(
    graph: &Graph,
    p: &Placement,
    group: &SymmetryGroup,
    tol: f64,
) -> Result<Vec<TypeAssignment>> {
    let n = graph.vertex_count();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::CapExceeded {
            n,
            cap: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    if group.order() > BRUTE_FORCE_MAX_GROUP {
        return Err(Error::CapExceeded {
            n: group.order(),
            cap: BRUTE_FORCE_MAX_GROUP,
        });
    }
    if p.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: p.len(),
        });
    }
    if p.dim() != group.dim() {
        return Err(Error::DimensionMismatch {
            expected: group.dim(),
            found: p.dim(),
        });
    }
    let mut valid: Vec<Vec<Permutation>> = alloc::vec![Vec::new(); group.order()];
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let candidates: Vec<usize> = (0..group.order())
            .filter(|&x| realizes(group, x, &idx, p, tol))
            .collect();
        if !candidates.is_empty() {
            let sigma = Permutation::from_images(idx.clone())?;
            if is_automorphism(graph, &sigma)? {
                for x in candidates {
                    valid[x].push(sigma.clone());
                }
            }
        }
        if !next_permutation(&mut idx) {
            break;
        }
    }
    let count = valid
        .iter()
        .try_fold(1u128, |acc, v| acc.checked_mul(v.len() as u128))
        .unwrap_or(u128::MAX);
    if count > ENUMERATION_LIMIT {
        return Err(Error::ExplosionGuard {
            count,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut out: Vec<Vec<Permutation>> = alloc::vec![Vec::new()];
    for choices in &valid {
        out = out
            .iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c.clone());
                    next
                })
            })
            .collect();
    }
    Ok(out.into_iter().map(TypeAssignment::new).collect())
}

fn complete_rigidity_matrix(p: &Placement) -> DMatrix<f64> {
    let n = p.len();
    let d = p.dim();
    let rows = n * n.saturating_sub(1) / 2;
    let mut r = DMatrix::zeros(rows, d * n);
    let mut row = 0;
    for u in 0..n {
        for v in u + 1..n {
            for k in 0..d {
                let diff = p.point(u)[k] - p.point(v)[k];
                r[(row, d * u + k)] = diff;
                r[(row, d * v + k)] = -diff;
            }
            row += 1;
        }
    }
    r
}

fn minor(m: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> f64 {
    DMatrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])]).determinant()
}

/// Whether `p` avoids every minor of the rigidity matrix of `K_n` that is not
/// identically zero on the symmetric configuration space of `(group, phi)`.
///
/// A minor vanishing at `p` (|det| ≤ `tol`, with `p` scaled to the unit box)
/// is declared identically zero on `U` iff it also vanishes at `evals`
/// random points `Σ t_j u_j` with `t ∈ [−1, 1]^k`.
pub fn exhaustive_generic_check(
    p: &Placement,
    group: &SymmetryGroup,
    phi: &TypeAssignment,
    evals: usize,
    tol: f64,
    seed: u64,
) -> Result<bool> {
    let n = p.len();
    let d = p.dim();
    if n > MINOR_MAX_VERTICES {
        return Err(Error::CapExceeded {
            n,
            cap: MINOR_MAX_VERTICES,
        });
    }
    if d != 2 {
        return Err(Error::Unsupported(alloc::format!(
            "minor enumeration needs dimension 2, got {d}"
        )));
    }
    if group.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: group.dim(),
            found: d,
        });
    }
    if phi.len() != group.order() {
        return Err(Error::LengthMismatch {
            expected: group.order(),
            found: phi.len(),
        });
    }
    if let Some(bad) = phi.images().iter().find(|img| img.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    let basis = null_space(&constraint_matrix(group, phi), KERNEL_TOL);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<DMatrix<f64>> = (0..evals)
        .map(|_| {
            let t = DMatrix::from_fn(basis.ncols(), 1, |_, _| rng.random_range(-1.0..=1.0));
            let q = &basis * t;
            let q = Placement::new(d, q.iter().copied().collect()).expect("d divides dn");
            complete_rigidity_matrix(&q)
        })
        .collect();
    let r = complete_rigidity_matrix(&p.normalized());
    let (nr, nc) = r.shape();
    for size in 1..=nr.min(nc) {
        let mut rows: Vec<usize> = (0..size).collect();
        loop {
            let mut cols: Vec<usize> = (0..size).collect();
            loop {
                if minor(&r, &rows, &cols).abs() <= tol
                    && samples.iter().any(|s| minor(s, &rows, &cols).abs() > tol)
                {
                    return Ok(false);
                }
                if !next_combination(&mut cols, nc) {
                    break;
                }
            }
            if !next_combination(&mut rows, nr) {
                break;
            }
        }
    }
    Ok(true)
}

/// Best rational approximation `num/den` with `den ≤ MAX_DENOMINATOR` by
/// continued fractions, if one is within [`RATIONAL_TOL`].
pub fn rationalize(x: f64) -> Result<(i64, i64)> {
    if !x.is_finite() || x.abs() > 1e12 {
        return Err(Error::NotRationalizable(x));
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut rest = x;
    loop {
        let a = libm::floor(rest);
        let ai = a as i64;
        let h = ai * h1 + h0;
        let k = ai * k1 + k0;
        if k > MAX_DENOMINATOR {
            return Err(Error::NotRationalizable(x));
        }
        if (x - h as f64 / k as f64).abs() <= RATIONAL_TOL {
            return Ok((h, k));
        }
        (h0, h1, k0, k1) = (h1, h, k1, k);
        let frac = rest - a;
        if frac == 0.0 {
            return Err(Error::NotRationalizable(x));
        }
        rest = 1.0 / frac;
    }
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn exact_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for j in c + 1..cols {
                let value = (&a[r][j] * &a[rank][c] - &a[r][c] * &a[rank][j]) / &prev;
                a[r][j] = value;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].abs();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Kernel dimension of `m` computed exactly after snapping every entry to a
/// small-denominator rational. Only meaningful when the entries are exact
/// rationals (e.g. groups with `m ∈ {2, 4}` and axis-aligned mirrors).
pub fn kernel_oracle(m: &DMatrix<f64>) -> Result<usize> {
    let mut rows = Vec::with_capacity(m.nrows());
    for i in 0..m.nrows() {
        let fracs = (0..m.ncols())
            .map(|j| rationalize(m[(i, j)]))
            .collect::<Result<Vec<_>>>()?;
        let lcm = fracs
            .iter()
            .fold(BigInt::one(), |acc, &(_, den)| acc.lcm(&BigInt::from(den)));
        rows.push(
            fracs
                .iter()
                .map(|&(num, den)| BigInt::from(num) * (&lcm / BigInt::from(den)))
                .collect(),
        );
    }
    Ok(m.ncols() - exact_rank(rows))
}
