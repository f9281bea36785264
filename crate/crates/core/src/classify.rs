//! Types `Φ : S → Aut(G)` of symmetric frameworks.
//!
//! A realization `(G, p)` is of type `Φ` when `M_x p(v) = p(Φ(x)(v))` for
//! every group element `x` and vertex `v`. For a fixed realization the valid
//! choices for `Φ(x)` form the coset `Φ0(x)·Aut(G, p)` of any one valid
//! choice `Φ0(x)`, so all types are enumerated as a product of cosets.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{automorphisms, coincidence_automorphisms, is_automorphism, Graph};
use crate::group::SymmetryGroup;
use crate::linalg;
use crate::perm::Permutation;
use crate::placement::Placement;

/// Largest number of type assignments that will be materialized.
pub const ENUMERATION_LIMIT: u128 = 100_000;

/// One automorphism per group element, indexed like the group's elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeAssignment {
    images: Vec<Permutation>,
}

impl TypeAssignment {
    pub fn new(images: Vec<Permutation>) -> Self {
        TypeAssignment { images }
    }

    /// Every element mapped to the identity automorphism.
    pub fn trivial(group_order: usize, n: usize) -> Self {
        TypeAssignment {
            images: alloc::vec![Permutation::identity(n); group_order],
        }
    }

    pub fn image(&self, x: usize) -> &Permutation {
        &self.images[x]
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `Φ(Id) = id`.
    pub fn is_normalized(&self) -> bool {
        self.images.first().is_some_and(|p| p.is_identity())
    }

    /// Restriction to a subgroup, given the subgroup-to-group index map
    /// returned by [`SymmetryGroup::generated_subgroup`].
    pub fn restrict(&self, members: &[usize]) -> TypeAssignment {
        TypeAssignment {
            images: members.iter().map(|&i| self.images[i].clone()).collect(),
        }
    }

    /// Checks that the assignment is total over `group` and that every image
    /// is an automorphism of `graph`.
    pub fn check(&self, graph: &Graph, group: &SymmetryGroup) -> Result<()> {
        if self.images.len() != group.order() {
            return Err(Error::LengthMismatch {
                expected: group.order(),
                found: self.images.len(),
            });
        }
        for (x, p) in self.images.iter().enumerate() {
            if !is_automorphism(graph, p)? {
                return Err(Error::NotAnAutomorphism(
                    group.element(x).label().to_string(),
                ));
            }
        }
        Ok(())
    }

    /// `(element label, cycle notation)` pairs.
    pub fn describe(&self, graph: &Graph, group: &SymmetryGroup) -> Vec<(String, String)> {
        self.images
            .iter()
            .enumerate()
            .map(|(x, p)| (group.element(x).label().to_string(), graph.cycle_string(p)))
            .collect()
    }
}

fn check_shapes(graph: &Graph, placement: &Placement, group: &SymmetryGroup) -> Result<()> {
    if placement.dim() != group.dim() {
        return Err(Error::DimensionMismatch {
            expected: group.dim(),
            found: placement.dim(),
        });
    }
    if placement.len() != graph.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: graph.vertex_count(),
            found: placement.len(),
        });
    }
    Ok(())
}

/// `max_v ‖M_x p(v) − p(α(v))‖`.
fn symmetry_defect(group: &SymmetryGroup, x: usize, alpha: &Permutation, p: &Placement) -> f64 {
    let op = group.element(x);
    (0..p.len())
        .map(|v| {
            let image = op.apply(p.point(v));
            let target = p.point(alpha.apply(v));
            let diff: Vec<f64> = image.iter().zip(target).map(|(a, b)| a - b).collect();
            linalg::norm(&diff)
        })
        .fold(0.0, f64::max)
}

/// Whether `(graph, placement)` is a framework of type `phi`.
///
/// Also requires adjacent vertices to sit more than `tol` apart.
pub fn verify_type(
    graph: &Graph,
    placement: &Placement,
    group: &SymmetryGroup,
    phi: &TypeAssignment,
    tol: f64,
) -> Result<bool> {
    check_shapes(graph, placement, group)?;
    phi.check(graph, group)?;
    if graph
        .edges()
        .iter()
        .any(|&(u, v)| placement.distance(u, v) <= tol)
    {
        return Ok(false);
    }
    Ok((0..group.order()).all(|x| symmetry_defect(group, x, phi.image(x), placement) <= tol))
}

/// For each element, the first automorphism (in lexicographic order) that
/// realizes it; `Err(x)` names the first element with none.
fn base_type(
    placement: &Placement,
    group: &SymmetryGroup,
    aut: &[Permutation],
    tol: f64,
) -> core::result::Result<TypeAssignment, usize> {
    let mut images = Vec::with_capacity(group.order());
    for x in 0..group.order() {
        let alpha = aut
            .iter()
            .find(|a| symmetry_defect(group, x, a, placement) <= tol)
            .ok_or(x)?;
        images.push(alpha.clone());
    }
    Ok(TypeAssignment::new(images))
}

/// Some type of the realization, or `None` when some group element is not a
/// symmetry operation of it (then `(G, p) ∉ R_(G,S)`).
pub fn find_base_type(
    graph: &Graph,
    placement: &Placement,
    group: &SymmetryGroup,
    tol: f64,
    cap: usize,
) -> Result<Option<TypeAssignment>> {
    check_shapes(graph, placement, group)?;
    let aut = automorphisms(graph, cap)?;
    Ok(base_type(placement, group, &aut, tol).ok())
}

/// All types of one realization, as cosets of `Aut(G, p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TypeCatalog {
    base: TypeAssignment,
    stabilizer: Vec<Permutation>,
    cosets: Vec<Vec<Permutation>>,
}

impl TypeCatalog {
    /// The type assembled from the first valid automorphism of each element.
    pub fn base(&self) -> &TypeAssignment {
        &self.base
    }

    /// `Aut(G, p)`, sorted.
    pub fn coincidence_group(&self) -> &[Permutation] {
        &self.stabilizer
    }

    /// Valid images of element `x`: the coset `Φ0(x)·Aut(G, p)`, sorted.
    pub fn valid_images(&self, x: usize) -> &[Permutation] {
        &self.cosets[x]
    }

    pub fn group_order(&self) -> usize {
        self.cosets.len()
    }

    /// `|Aut(G,p)|^|S|`, or `|Aut(G,p)|^(|S|−1)` when normalized.
    pub fn count(&self, normalized: bool) -> u128 {
        let k = self.stabilizer.len() as u128;
        let e = self.cosets.len() as u32 - u32::from(normalized);
        k.checked_pow(e).unwrap_or(u128::MAX)
    }

    fn choices(&self, normalized: bool) -> Vec<Vec<Permutation>> {
        let mut choices = self.cosets.clone();
        if normalized {
            let n = self.base.image(0).len();
            choices[0] = alloc::vec![Permutation::identity(n)];
        }
        choices
    }

    /// Visits every type in lexicographic order (last element varies fastest)
    /// until `visit` returns `false`.
    fn for_each(&self, normalized: bool, mut visit: impl FnMut(TypeAssignment) -> bool) {
        let choices = self.choices(normalized);
        let mut idx = alloc::vec![0usize; choices.len()];
        loop {
            let t = TypeAssignment::new(
                idx.iter()
                    .zip(&choices)
                    .map(|(&i, c)| c[i].clone())
                    .collect(),
            );
            if !visit(t) {
                return;
            }
            let mut pos = choices.len();
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    /// Every type, refusing above [`ENUMERATION_LIMIT`].
    pub fn types(&self, normalized: bool) -> Result<Vec<TypeAssignment>> {
        let count = self.count(normalized);
        if count > ENUMERATION_LIMIT {
            return Err(Error::ExplosionGuard {
                count,
                limit: ENUMERATION_LIMIT,
            });
        }
        let mut out = Vec::with_capacity(count as usize);
        self.for_each(normalized, |t| {
            out.push(t);
            true
        });
        Ok(out)
    }
}

/// Builds the [`TypeCatalog`] of a realization.
pub fn type_catalog(
    graph: &Graph,
    placement: &Placement,
    group: &SymmetryGroup,
    tol: f64,
    cap: usize,
) -> Result<TypeCatalog> {
    check_shapes(graph, placement, group)?;
    let aut = automorphisms(graph, cap)?;
    let base = base_type(placement, group, &aut, tol)
        .map_err(|x| Error::NotInClass(group.element(x).label().to_string()))?;
    let stabilizer = coincidence_automorphisms(graph, placement, tol, cap)?;
    let cosets = base
        .images()
        .iter()
        .map(|b| {
            let mut c: Vec<Permutation> = stabilizer.iter().map(|beta| b.compose(beta)).collect();
            c.sort();
            c
        })
        .collect();
    Ok(TypeCatalog {
        base,
        stabilizer,
        cosets,
    })
}

/// The catalog together with the full list of types.
///
/// With `normalized`, only types with `Φ(Id) = id` are listed.
pub fn enumerate_types(
    graph: &Graph,
    placement: &Placement,
    group: &SymmetryGroup,
    tol: f64,
    normalized: bool,
    cap: usize,
) -> Result<(TypeCatalog, Vec<TypeAssignment>)> {
    let catalog = type_catalog(graph, placement, group, tol, cap)?;
    let types = catalog.types(normalized)?;
    Ok((catalog, types))
}

/// `Φ(x·y) = Φ(x) ∘ Φ(y)` for all pairs.
pub fn is_homomorphism(group: &SymmetryGroup, phi: &TypeAssignment) -> bool {
    let n = group.order();
    if phi.len() != n {
        return false;
    }
    (0..n).all(|a| {
        (0..n).all(|b| *phi.image(group.product(a, b)) == phi.image(a).compose(phi.image(b)))
    })
}

/// A type of the realization that is a group homomorphism, if one exists.
///
/// When `Aut(G, p)` is trivial the type is unique and always a homomorphism;
/// otherwise the normalized catalog is scanned exhaustively.
pub fn find_homomorphic_type(
    graph: &Graph,
    placement: &Placement,
    group: &SymmetryGroup,
    tol: f64,
    cap: usize,
) -> Result<Option<TypeAssignment>> {
    let catalog = type_catalog(graph, placement, group, tol, cap)?;
    if catalog.coincidence_group().len() == 1 {
        let unique = catalog.base().clone();
        debug_assert!(is_homomorphism(group, &unique));
        return Ok(Some(unique));
    }
    let count = catalog.count(true);
    if count > ENUMERATION_LIMIT {
        return Err(Error::ExplosionGuard {
            count,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut found = None;
    catalog.for_each(true, |t| {
        if is_homomorphism(group, &t) {
            found = Some(t);
            false
        } else {
            true
        }
    });
    Ok(found)
}
