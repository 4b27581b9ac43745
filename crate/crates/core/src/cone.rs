//! Rational polyhedral cones.
//!
//! A [`RationalCone`] always carries both descriptions: generators (extremal
//! rays plus a lineality basis) and inequalities (facet normals plus a basis
//! of the orthogonal complement of the span). Conversions between the two go
//! through the double description method, so duality is just an exchange of
//! the two halves.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{
    canonical_vector_set, rank, saturation_basis, smith_normal_form, IntMatrix, IntVector,
    SublatticeChart,
};

/// Highest ambient rank accepted by [`hilbert_basis`].
pub const DEFAULT_RANK_LIMIT: usize = 4;

/// `{x : ⟨a, x⟩ ≥ 0 for all constraints a} = span(lineality) + cone(rays)`
struct Polyhedral {
    lineality: Vec<IntVector>,
    rays: Vec<IntVector>,
}

fn primitive(v: IntVector) -> IntVector {
    let g = v.content();
    if g.is_zero() {
        v
    } else {
        v.div_exact(&g)
    }
}

/// Double description: converts an inequality system into generators.
///
/// Starts from the whole space and intersects with one half-space at a time.
/// While the current cone still has a lineality direction that the new
/// constraint does not annihilate, that direction becomes a ray; otherwise the
/// usual positive/negative combination step runs with the algebraic adjacency
/// test (two rays are adjacent iff the constraints tight at both have rank
/// `d - 2`, `d` being the dimension modulo the lineality space).
fn double_description(constraints: &[IntVector], dim: usize) -> Polyhedral {
    let mut lineality: Vec<IntVector> = (0..dim).map(|i| IntVector::unit(dim, i)).collect();
    let mut rays: Vec<IntVector> = Vec::new();
    let mut processed: Vec<IntVector> = Vec::new();

    for a in constraints.iter().filter(|a| !a.is_zero()) {
        assert_eq!(a.dim(), dim, "constraint of the wrong length");
        if let Some(pos) = lineality.iter().position(|l| !a.dot(l).is_zero()) {
            let mut pivot = lineality.remove(pos);
            let mut s0 = a.dot(&pivot);
            if s0.is_negative() {
                pivot = -&pivot;
                s0 = -s0;
            }
            let project = |x: &IntVector| {
                let s = a.dot(x);
                if s.is_zero() {
                    x.clone()
                } else {
                    primitive(&x.scale(&s0) - &pivot.scale(&s))
                }
            };
            lineality = lineality.iter().map(project).collect();
            rays = rays.iter().map(project).collect();
            rays.push(primitive(pivot));
        } else {
            let values: Vec<BigInt> = rays.iter().map(|r| a.dot(r)).collect();
            let d = dim - lineality.len();
            let mut next: Vec<IntVector> = Vec::new();
            let mut positive = Vec::new();
            let mut negative = Vec::new();
            for (i, s) in values.iter().enumerate() {
                if s.is_negative() {
                    negative.push(i);
                } else {
                    next.push(rays[i].clone());
                    if s.is_positive() {
                        positive.push(i);
                    }
                }
            }
            for &p in &positive {
                for &n in &negative {
                    if !adjacent(&rays[p], &rays[n], &processed, d, dim) {
                        continue;
                    }
                    let combo = &rays[n].scale(&values[p]) - &rays[p].scale(&values[n]);
                    next.push(primitive(combo));
                }
            }
            next.sort();
            next.dedup();
            rays = next;
        }
        processed.push(a.clone());
    }
    Polyhedral { lineality, rays }
}

fn adjacent(p: &IntVector, n: &IntVector, processed: &[IntVector], d: usize, dim: usize) -> bool {
    if d < 2 {
        return false;
    }
    let tight: Vec<IntVector> = processed
        .iter()
        .filter(|a| a.dot(p).is_zero() && a.dot(n).is_zero())
        .cloned()
        .collect();
    rank(&tight, dim) == d - 2
}

/// Canonical generators: a Hermite basis of the lineality space and the
/// primitive extremal rays of the pointed part lying in its orthogonal
/// complement.
fn canonical_generators(constraints: &[IntVector], dim: usize) -> Polyhedral {
    let first = double_description(constraints, dim);
    let lineality = saturation_basis(&first.lineality, dim);
    if lineality.is_empty() {
        return Polyhedral {
            lineality,
            rays: canonical_vector_set(first.rays),
        };
    }
    let mut pinned = constraints.to_vec();
    for l in &lineality {
        pinned.push(l.clone());
        pinned.push(-l);
    }
    let second = double_description(&pinned, dim);
    debug_assert!(second.lineality.is_empty());
    Polyhedral {
        lineality,
        rays: canonical_vector_set(second.rays),
    }
}

fn with_negatives(rays: &[IntVector], lineality: &[IntVector]) -> Vec<IntVector> {
    let mut out = rays.to_vec();
    for l in lineality {
        out.push(l.clone());
        out.push(-l);
    }
    out
}

/// A rational polyhedral cone in ℚⁿ with both of its descriptions.
///
/// Identity is the canonical generator data: two cones are equal iff they
/// have the same rank, the same primitive extremal rays and the same
/// lineality space.
#[derive(Clone, Debug)]
pub struct RationalCone {
    rank: usize,
    rays: Vec<IntVector>,
    lineality: Vec<IntVector>,
    facets: Vec<IntVector>,
    equations: Vec<IntVector>,
}

impl PartialEq for RationalCone {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.lineality == other.lineality
    }
}

impl Eq for RationalCone {}

fn check_dims(rank: usize, vectors: &[IntVector]) -> Result<()> {
    match vectors.iter().find(|v| v.dim() != rank) {
        Some(v) => Err(Error::RankMismatch {
            expected: rank,
            found: v.dim(),
        }),
        None => Ok(()),
    }
}

impl RationalCone {
    /// The cone generated by `generators` (any finite set, possibly redundant).
    pub fn from_generators(rank: usize, generators: &[IntVector]) -> Result<Self> {
        check_dims(rank, generators)?;
        let dual = canonical_generators(generators, rank);
        let primal = canonical_generators(&with_negatives(&dual.rays, &dual.lineality), rank);
        Ok(RationalCone {
            rank,
            rays: primal.rays,
            lineality: primal.lineality,
            facets: dual.rays,
            equations: dual.lineality,
        })
    }

    /// The cone `{x : ⟨u, x⟩ ≥ 0 for every u in inequalities}`.
    pub fn from_inequalities(rank: usize, inequalities: &[IntVector]) -> Result<Self> {
        check_dims(rank, inequalities)?;
        let primal = canonical_generators(inequalities, rank);
        let dual = canonical_generators(&with_negatives(&primal.rays, &primal.lineality), rank);
        Ok(RationalCone {
            rank,
            rays: primal.rays,
            lineality: primal.lineality,
            facets: dual.rays,
            equations: dual.lineality,
        })
    }

    pub fn zero(rank: usize) -> Self {
        Self::from_generators(rank, &[]).expect("no generators to mismatch")
    }

    pub fn full_space(rank: usize) -> Self {
        Self::from_inequalities(rank, &[]).expect("no inequalities to mismatch")
    }

    /// Ambient lattice rank.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Primitive extremal rays of the pointed part, sorted.
    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    /// Hermite basis of the largest linear subspace contained in the cone.
    pub fn lineality(&self) -> &[IntVector] {
        &self.lineality
    }

    /// A generating set: the rays followed by `±` the lineality basis.
    pub fn generators(&self) -> Vec<IntVector> {
        with_negatives(&self.rays, &self.lineality)
    }

    /// Primitive facet normals (the rays of the dual cone).
    pub fn facets(&self) -> &[IntVector] {
        &self.facets
    }

    /// Basis of the linear forms vanishing on the cone.
    pub fn equations(&self) -> &[IntVector] {
        &self.equations
    }

    /// A defining system `⟨u, ·⟩ ≥ 0`: facets plus `±` equations.
    pub fn inequalities(&self) -> Vec<IntVector> {
        with_negatives(&self.facets, &self.equations)
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.rank - self.equations.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_strongly_convex() && self.rays.len() == self.dim()
    }

    pub fn contains_point(&self, v: &IntVector) -> bool {
        assert_eq!(v.dim(), self.rank, "point of the wrong rank");
        self.facets.iter().all(|u| !u.dot(v).is_negative())
            && self.equations.iter().all(|u| u.dot(v).is_zero())
    }

    pub fn contains_cone(&self, other: &RationalCone) -> bool {
        other.generators().iter().all(|g| self.contains_point(g))
    }

    /// `σ∨ = {u : ⟨u, v⟩ ≥ 0 for all v ∈ σ}` in the dual lattice.
    pub fn dual(&self) -> RationalCone {
        RationalCone {
            rank: self.rank,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn intersection(&self, other: &RationalCone) -> Result<RationalCone> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        let mut ineqs = self.inequalities();
        ineqs.extend(other.inequalities());
        RationalCone::from_inequalities(self.rank, &ineqs)
    }

    /// Image under the linear map `m` (`m` has `rank` columns).
    pub fn image(&self, m: &IntMatrix) -> Result<RationalCone> {
        if m.cols() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: m.cols(),
            });
        }
        let gens: Vec<IntVector> = self.generators().iter().map(|g| m.apply(g)).collect();
        RationalCone::from_generators(m.rows(), &gens)
    }

    /// Faces as index sets into [`rays`](Self::rays), from the whole cone down
    /// to the apex. Only meaningful for strongly convex cones.
    pub(crate) fn face_ray_sets(&self) -> Vec<Vec<usize>> {
        let tight: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|u| {
                (0..self.rays.len())
                    .filter(|&i| u.dot(&self.rays[i]).is_zero())
                    .collect()
            })
            .collect();
        let all: BTreeSet<usize> = (0..self.rays.len()).collect();
        let mut seen = BTreeSet::from([all.clone()]);
        let mut queue = VecDeque::from([all]);
        while let Some(face) = queue.pop_front() {
            for t in &tight {
                let smaller: BTreeSet<usize> = face.intersection(t).copied().collect();
                if smaller != face && seen.insert(smaller.clone()) {
                    queue.push_back(smaller);
                }
            }
        }
        let mut faces: Vec<Vec<usize>> = seen.into_iter().map(|s| s.into_iter().collect()).collect();
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces
    }

    pub(crate) fn subcone(&self, indices: &[usize]) -> RationalCone {
        let gens: Vec<IntVector> = indices.iter().map(|&i| self.rays[i].clone()).collect();
        RationalCone::from_generators(self.rank, &gens).expect("rays share the cone's rank")
    }
}

impl Serialize for RationalCone {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RationalCone", 5)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("rays", &self.rays)?;
        st.serialize_field("lineality", &self.lineality)?;
        st.serialize_field("facets", &self.facets)?;
        st.serialize_field("equations", &self.equations)?;
        st.end()
    }
}

impl std::fmt::Display for RationalCone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Cone(")?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

pub fn dual_cone(sigma: &RationalCone) -> RationalCone {
    sigma.dual()
}

pub fn is_strongly_convex(sigma: &RationalCone) -> bool {
    sigma.is_strongly_convex()
}

pub fn contains_point(sigma: &RationalCone, v: &IntVector) -> bool {
    sigma.contains_point(v)
}

/// All faces of a strongly convex cone, including `{0}` and the cone itself.
pub fn faces(sigma: &RationalCone) -> Result<Vec<RationalCone>> {
    if !sigma.is_strongly_convex() {
        return Err(Error::UnsupportedCone(format!(
            "{sigma} contains a line; its faces are not enumerated"
        )));
    }
    Ok(sigma
        .face_ray_sets()
        .iter()
        .map(|s| sigma.subcone(s))
        .collect())
}

/// Whether `tau = sigma ∩ u⊥` for some `u ∈ sigma∨`.
pub fn is_face_of(tau: &RationalCone, sigma: &RationalCone) -> bool {
    if tau.rank() != sigma.rank() || !sigma.contains_cone(tau) {
        return false;
    }
    let tau_gens = tau.generators();
    let mut ineqs = sigma.inequalities();
    let supporting: Vec<IntVector> = ineqs
        .iter()
        .filter(|u| tau_gens.iter().all(|g| u.dot(g).is_zero()))
        .map(|u| -u)
        .collect();
    ineqs.extend(supporting);
    match RationalCone::from_inequalities(sigma.rank(), &ineqs) {
        Ok(face) => face == *tau,
        Err(_) => false,
    }
}

/// Simplicial with ray generators extending to a basis of the lattice.
pub fn is_smooth_cone(sigma: &RationalCone) -> bool {
    sigma.is_simplicial() && crate::lattice::extends_to_basis(sigma.rays(), sigma.rank())
}

/// Minimal generating set of the semigroup `sigma ∩ ℤⁿ`, sorted.
pub fn hilbert_basis(sigma: &RationalCone) -> Result<Vec<IntVector>> {
    hilbert_basis_with_limit(sigma, DEFAULT_RANK_LIMIT)
}

pub fn hilbert_basis_with_limit(sigma: &RationalCone, limit: usize) -> Result<Vec<IntVector>> {
    if !sigma.is_strongly_convex() {
        return Err(Error::UnsupportedCone(format!(
            "{sigma} is not pointed; its lattice points do not form a pointed semigroup"
        )));
    }
    if sigma.rank() > limit {
        return Err(Error::UnsupportedRank {
            rank: sigma.rank(),
            limit,
        });
    }
    if sigma.rays().is_empty() {
        return Ok(Vec::new());
    }
    // Work in the saturated lattice of the span, where the cone is full-dimensional.
    let chart = SublatticeChart::new(sigma.rays(), sigma.rank());
    let d = chart.rank();
    let local_rays: Vec<IntVector> = sigma
        .rays()
        .iter()
        .map(|r| chart.to_local(r).expect("rays lie in their own span"))
        .collect();
    let local = RationalCone::from_generators(d, &local_rays)?;
    let basis = full_dimensional_hilbert_basis(&local);
    let mut out: Vec<IntVector> = basis.iter().map(|c| chart.from_local(c)).collect();
    out.sort();
    Ok(out)
}

fn full_dimensional_hilbert_basis(cone: &RationalCone) -> Vec<IntVector> {
    let d = cone.rank();
    let faces: Vec<(Vec<usize>, usize)> = cone
        .face_ray_sets()
        .into_iter()
        .map(|f| {
            let gens: Vec<IntVector> = f.iter().map(|&i| cone.rays()[i].clone()).collect();
            let dim = rank(&gens, d);
            (f, dim)
        })
        .collect();
    let all: Vec<usize> = (0..cone.rays().len()).collect();
    let simplices = triangulate(&all, d, &faces);

    let mut candidates: BTreeSet<IntVector> = cone.rays().iter().cloned().collect();
    for simplex in &simplices {
        let gens: Vec<IntVector> = simplex.iter().map(|&i| cone.rays()[i].clone()).collect();
        candidates.extend(parallelepiped_points(&gens));
    }

    // A strictly positive grading: the sum of the facet normals.
    let grading = cone
        .facets()
        .iter()
        .fold(IntVector::zero(d), |acc, u| &acc + u);
    let mut by_degree: Vec<(BigInt, IntVector)> = candidates
        .into_iter()
        .map(|c| (grading.dot(&c), c))
        .collect();
    by_degree.sort();

    let mut basis: Vec<IntVector> = Vec::new();
    for (_, x) in by_degree {
        let reducible = basis.iter().any(|h| {
            let rest = &x - h;
            !rest.is_zero() && cone.contains_point(&rest)
        });
        if !reducible {
            basis.push(x);
        }
    }
    basis
}

/// Pulling triangulation: cone the first ray over the triangulated facets
/// that avoid it.
fn triangulate(face: &[usize], dim: usize, faces: &[(Vec<usize>, usize)]) -> Vec<Vec<usize>> {
    if face.len() == dim {
        return vec![face.to_vec()];
    }
    let apex = face[0];
    let mut out = Vec::new();
    for (facet, facet_dim) in faces {
        if *facet_dim + 1 != dim
            || facet.contains(&apex)
            || !facet.iter().all(|i| face.contains(i))
        {
            continue;
        }
        for mut simplex in triangulate(facet, dim - 1, faces) {
            simplex.insert(0, apex);
            out.push(simplex);
        }
    }
    out
}

/// Nonzero lattice points of the half-open parallelepiped
/// `{Σ λᵢ gᵢ : 0 ≤ λᵢ < 1}` of linearly independent `gens` spanning ℚ^d.
fn parallelepiped_points(gens: &[IntVector]) -> Vec<IntVector> {
    let d = gens.len();
    let g = IntMatrix::from_columns(gens, d);
    let det = g.determinant();
    let abs_det = det.abs();
    let sign = if det.is_negative() { BigInt::from(-1) } else { BigInt::from(1) };
    let adj = g.adjugate();
    // ℤ^d / gℤ^d ≅ ⊕ ℤ/dᵢ: representatives are u⁻¹·c with 0 ≤ cᵢ < dᵢ
    let snf = smith_normal_form(&g);
    let moduli: Vec<usize> = snf
        .diagonal()
        .iter()
        .map(|x| x.to_usize().expect("parallelepiped too large to enumerate"))
        .collect();
    let total: usize = moduli.iter().product();
    let mut out = Vec::with_capacity(total);
    for index in 0..total {
        let mut rest = index;
        let mut c = Vec::with_capacity(d);
        for &m in &moduli {
            c.push(BigInt::from(rest % m));
            rest /= m;
        }
        let x = snf.u_inv.apply(&IntVector::new(c));
        let numerators = adj.apply(&x);
        let fractional = IntVector::new(
            numerators
                .coords()
                .iter()
                .map(|n| (n * &sign).mod_floor(&abs_det))
                .collect(),
        );
        let p = g.apply(&fractional).div_exact(&abs_det);
        if !p.is_zero() {
            out.push(p);
        }
    }
    out
}
