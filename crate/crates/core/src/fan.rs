//! Fans of strongly convex cones and the toric-variety properties that can
//! be read off from them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cone::{is_face_of, is_smooth_cone, RationalCone};
use crate::error::{Error, Result};
use crate::lattice::{extends_to_basis, rank, saturation_basis, IntMatrix, IntVector, SublatticeChart};

/// A broken fan axiom. Cone indices refer to [`Fan::max_cones`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotStronglyConvex { cone: usize },
    RaysNotExtremal { cone: usize },
    BadIntersection { first: usize, second: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotStronglyConvex { cone } => {
                write!(f, "cone {cone} is not strongly convex")
            }
            Violation::RaysNotExtremal { cone } => {
                write!(f, "the listed rays of cone {cone} are not exactly its extremal rays")
            }
            Violation::BadIntersection { first, second } => write!(
                f,
                "cones {first} and {second} intersect in a set that is not a face of both"
            ),
        }
    }
}

/// A finite collection of cones in ℤⁿ, stored by its rays and maximal cones.
///
/// Rays are primitive and sorted; every maximal cone is a sorted list of
/// indices into the rays. A fan without rays has the single cone `{0}`.
#[derive(Clone, Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<IntVector>,
    max_cones: Vec<Vec<usize>>,
    max_cone_cache: OnceLock<Vec<RationalCone>>,
    violations: OnceLock<Vec<Violation>>,
    cones: OnceLock<Vec<Vec<usize>>>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.max_cones == other.max_cones
    }
}

impl Eq for Fan {}

impl Fan {
    /// Builds a fan from possibly non-primitive rays and cones given as ray
    /// indices. Structural problems (wrong lengths, zero or duplicate rays,
    /// unknown indices, unused rays) are errors; the geometric fan axioms are
    /// checked separately by [`validate`].
    pub fn new(rank: usize, rays: Vec<IntVector>, cones: Vec<Vec<usize>>) -> Result<Fan> {
        for (i, r) in rays.iter().enumerate() {
            if r.dim() != rank {
                return Err(Error::Schema(format!(
                    "ray {i} has {} coordinates, expected {rank}",
                    r.dim()
                )));
            }
            if r.is_zero() {
                return Err(Error::Schema(format!("ray {i} is zero")));
            }
        }
        let primitive: Vec<IntVector> = rays
            .iter()
            .map(|r| r.div_exact(&r.content()))
            .collect();
        let mut order: Vec<usize> = (0..rays.len()).collect();
        order.sort_by(|&a, &b| primitive[a].cmp(&primitive[b]));
        for w in order.windows(2) {
            if primitive[w[0]] == primitive[w[1]] {
                return Err(Error::Schema(format!(
                    "rays {} and {} span the same ray {}",
                    w[0].min(w[1]),
                    w[0].max(w[1]),
                    primitive[w[0]]
                )));
            }
        }
        let mut position = vec![0; rays.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let sorted_rays: Vec<IntVector> = order.iter().map(|&i| primitive[i].clone()).collect();

        let mut used = vec![false; rays.len()];
        let mut normalized: BTreeSet<Vec<usize>> = BTreeSet::new();
        for (ci, cone) in cones.iter().enumerate() {
            let mut idx = Vec::with_capacity(cone.len());
            for &i in cone {
                if i >= rays.len() {
                    return Err(Error::Schema(format!(
                        "cone {ci} refers to ray {i}, but there are only {} rays",
                        rays.len()
                    )));
                }
                used[i] = true;
                idx.push(position[i]);
            }
            idx.sort_unstable();
            idx.dedup();
            normalized.insert(idx);
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::Schema(format!("ray {i} belongs to no cone")));
        }
        // keep only inclusion-maximal cones
        let all: Vec<Vec<usize>> = normalized.into_iter().collect();
        let mut max_cones: Vec<Vec<usize>> = all
            .iter()
            .filter(|c| {
                !all.iter()
                    .any(|d| d.len() > c.len() && c.iter().all(|i| d.binary_search(i).is_ok()))
            })
            .cloned()
            .collect();
        if max_cones.is_empty() {
            max_cones.push(Vec::new());
        }
        Ok(Fan {
            rank,
            rays: sorted_rays,
            max_cones,
            max_cone_cache: OnceLock::new(),
            violations: OnceLock::new(),
            cones: OnceLock::new(),
        })
    }

    /// Convenience constructor from small integer data.
    pub fn from_i64(rank: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Result<Fan> {
        Fan::new(
            rank,
            rays.iter().map(|r| IntVector::from_i64s(r)).collect(),
            cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    /// The fan of `{0}` in ℤⁿ: the torus `(K^×)ⁿ`.
    pub fn torus(rank: usize) -> Fan {
        Fan::new(rank, Vec::new(), Vec::new()).expect("empty fan is well formed")
    }

    /// Aⁿ: the positive orthant.
    pub fn affine_space(n: usize) -> Fan {
        let rays = (0..n).map(|i| IntVector::unit(n, i)).collect();
        Fan::new(n, rays, vec![(0..n).collect()]).expect("orthant is well formed")
    }

    /// Aⁿ ∖ {0}: all proper faces of the orthant.
    pub fn punctured_affine_space(n: usize) -> Fan {
        let rays = (0..n).map(|i| IntVector::unit(n, i)).collect();
        let cones = (0..n)
            .map(|skip| (0..n).filter(|&i| i != skip).collect())
            .collect();
        Fan::new(n, rays, cones).expect("orthant boundary is well formed")
    }

    /// Pⁿ: rays `e₁, …, eₙ, −Σeᵢ`, maximal cones all n-subsets.
    pub fn projective_space(n: usize) -> Fan {
        let mut rays: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
        rays.push(IntVector::new(vec![BigInt::from(-1); n]));
        let cones = (0..=n)
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        Fan::new(n, rays, cones).expect("projective fan is well formed")
    }

    /// Hirzebruch surface F_k.
    pub fn hirzebruch(k: i64) -> Fan {
        Fan::from_i64(
            2,
            &[&[1, 0], &[0, 1], &[-1, k], &[0, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
        )
        .expect("Hirzebruch fan is well formed")
    }

    /// The blow-up of A² at the origin.
    pub fn blown_up_plane() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[1, 1], &[0, 1]], &[&[0, 1], &[1, 2]])
            .expect("blow-up fan is well formed")
    }

    /// The blow-up of P² at a torus-fixed point.
    pub fn blown_up_projective_plane() -> Fan {
        Fan::from_i64(
            2,
            &[&[1, 0], &[1, 1], &[0, 1], &[-1, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
        )
        .expect("blow-up fan is well formed")
    }

    /// The affine toric variety of a single strongly convex cone.
    pub fn single_cone(cone: &RationalCone) -> Result<Fan> {
        if !cone.is_strongly_convex() {
            return Err(Error::UnsupportedCone(format!("{cone} is not strongly convex")));
        }
        let n = cone.rays().len();
        Fan::new(cone.rank(), cone.rays().to_vec(), vec![(0..n).collect()])
    }

    /// The product fan in ℤ^(n+m).
    pub fn product(&self, other: &Fan) -> Fan {
        let (n, m) = (self.rank, other.rank);
        let mut rays = Vec::new();
        for r in &self.rays {
            let mut c = r.coords().to_vec();
            c.extend(std::iter::repeat_n(BigInt::from(0), m));
            rays.push(IntVector::new(c));
        }
        for r in &other.rays {
            let mut c = vec![BigInt::from(0); n];
            c.extend(r.coords().iter().cloned());
            rays.push(IntVector::new(c));
        }
        let offset = self.rays.len();
        let mut cones = Vec::new();
        for a in &self.max_cones {
            for b in &other.max_cones {
                let mut c = a.clone();
                c.extend(b.iter().map(|i| i + offset));
                cones.push(c);
            }
        }
        Fan::new(n + m, rays, cones).expect("product of well-formed fans")
    }

    /// Applies a linear map to every ray (`m` must be unimodular for the
    /// result to be an isomorphic fan).
    pub fn transform(&self, m: &IntMatrix) -> Result<Fan> {
        if m.cols() != self.rank || m.rows() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: m.cols(),
            });
        }
        let rays = self.rays.iter().map(|r| m.apply(r)).collect();
        Fan::new(self.rank, rays, self.max_cones.clone())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn cone_from_indices(&self, indices: &[usize]) -> RationalCone {
        let gens: Vec<IntVector> = indices.iter().map(|&i| self.rays[i].clone()).collect();
        RationalCone::from_generators(self.rank, &gens).expect("rays share the fan's rank")
    }

    /// The maximal cones as [`RationalCone`]s, in the order of [`max_cones`](Self::max_cones).
    pub fn max_cone_objects(&self) -> &[RationalCone] {
        self.max_cone_cache.get_or_init(|| {
            self.max_cones
                .iter()
                .map(|c| self.cone_from_indices(c))
                .collect()
        })
    }

    pub fn violations(&self) -> &[Violation] {
        self.violations.get_or_init(|| compute_violations(self))
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidFan(self.violations().to_vec()))
        }
    }

    /// Every cone of the fan as a sorted ray-index set, ordered by dimension
    /// and then lexicographically. For an invalid fan only the listed cones
    /// are returned.
    pub fn cones(&self) -> &[Vec<usize>] {
        self.cones.get_or_init(|| {
            if !self.is_valid() {
                return self.max_cones.clone();
            }
            let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
            for (indices, cone) in self.max_cones.iter().zip(self.max_cone_objects()) {
                // the cone's canonical rays are exactly the listed ones, in the same order
                for face in cone.face_ray_sets() {
                    all.insert(face.iter().map(|&k| indices[k]).collect());
                }
            }
            let mut out: Vec<Vec<usize>> = all.into_iter().collect();
            out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            out
        })
    }

    fn dim_of(&self, indices: &[usize]) -> usize {
        let gens: Vec<IntVector> = indices.iter().map(|&i| self.rays[i].clone()).collect();
        rank(&gens, self.rank)
    }

    /// Dimension of the ℚ-span of the rays.
    pub fn ray_span_rank(&self) -> usize {
        rank(&self.rays, self.rank)
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fan(rank {}; rays", self.rank)?;
        for r in &self.rays {
            write!(f, " {r}")?;
        }
        write!(f, "; cones {:?})", self.max_cones)
    }
}

fn compute_violations(fan: &Fan) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut good = Vec::new();
    for (i, (indices, cone)) in fan.max_cones.iter().zip(fan.max_cone_objects()).enumerate() {
        if !cone.is_strongly_convex() {
            out.push(Violation::NotStronglyConvex { cone: i });
            continue;
        }
        let listed: Vec<IntVector> = indices.iter().map(|&k| fan.rays[k].clone()).collect();
        if cone.rays() != listed.as_slice() {
            out.push(Violation::RaysNotExtremal { cone: i });
            continue;
        }
        good.push(i);
    }
    let cones = fan.max_cone_objects();
    for (a, &i) in good.iter().enumerate() {
        for &j in &good[a + 1..] {
            let meet = cones[i]
                .intersection(&cones[j])
                .expect("cones of one fan share the rank");
            if !is_face_of(&meet, &cones[i]) || !is_face_of(&meet, &cones[j]) {
                out.push(Violation::BadIntersection { first: i, second: j });
            }
        }
    }
    out
}

/// Checks every fan axiom; the error lists each violation.
pub fn validate(fan: &Fan) -> std::result::Result<(), Vec<Violation>> {
    if fan.is_valid() {
        Ok(())
    } else {
        Err(fan.violations().to_vec())
    }
}

/// Whether the support is all of ℚⁿ.
///
/// Decided by facet pairing: every maximal cone is full-dimensional and every
/// codimension-one cone lies in exactly two maximal cones.
pub fn is_complete(fan: &Fan) -> Result<bool> {
    fan.ensure_valid()?;
    let n = fan.rank;
    if fan.max_cones.iter().any(|c| fan.dim_of(c) != n) {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }
    for wall in fan.cones().iter().filter(|c| fan.dim_of(c) + 1 == n) {
        let containing = fan
            .max_cones
            .iter()
            .filter(|m| wall.iter().all(|i| m.binary_search(i).is_ok()))
            .count();
        if containing != 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tests whether `X(Σ)` is quasi-affine by comparing Σ with the faces of
/// `ω = Cone(Σ(1))`; returns `ω` when it is.
///
/// `X(Σ)` is quasi-affine exactly when ω is strongly convex and every cone of
/// Σ is a face of ω, in which case `X(Σ) ⊆ X(ω)` is an open toric embedding
/// with complement of codimension at least two. The "if" direction is the
/// open-embedding argument (a subfan of the face fan of ω is an open subset
/// of the affine variety `X(ω)`).
pub fn quasi_affine_envelope(fan: &Fan) -> Result<(bool, Option<RationalCone>)> {
    fan.ensure_valid()?;
    let omega = RationalCone::from_generators(fan.rank, &fan.rays)?;
    if !omega.is_strongly_convex() {
        return Ok((false, None));
    }
    if fan
        .max_cone_objects()
        .iter()
        .all(|sigma| is_face_of(sigma, &omega))
    {
        Ok((true, Some(omega)))
    } else {
        Ok((false, None))
    }
}

/// Splits off the torus factor: `X = X′ × (K^×)^k` where `k` is the corank of
/// the ray span and `X′` is the same fan written in a basis of the saturated
/// span.
pub fn degenerate_split(fan: &Fan) -> (usize, Fan) {
    let span = fan.ray_span_rank();
    let k = fan.rank - span;
    if k == 0 {
        return (0, fan.clone());
    }
    let chart = SublatticeChart::new(&fan.rays, fan.rank);
    let local: Vec<IntVector> = fan
        .rays
        .iter()
        .map(|r| chart.to_local(r).expect("ray lies in the ray span"))
        .collect();
    let reduced = Fan::new(span, local, fan.max_cones.clone())
        .expect("a change of basis keeps the fan well formed");
    (k, reduced)
}

pub fn is_smooth_fan(fan: &Fan) -> bool {
    fan.max_cone_objects().iter().all(is_smooth_cone)
}

/// The subfan of smooth cones, i.e. the fan of the smooth locus.
pub fn smooth_locus_subfan(fan: &Fan) -> Fan {
    let smooth: Vec<Vec<usize>> = fan
        .cones()
        .iter()
        .filter(|c| is_smooth_cone(&fan.cone_from_indices(c)))
        .cloned()
        .collect();
    Fan::new(fan.rank, fan.rays.clone(), smooth).expect("subfan keeps every ray")
}

/// Recognizes fans isomorphic to `P^{n₁} × ⋯ × P^{n_k}` and returns the
/// sorted factor dimensions.
pub fn detect_projective_product(fan: &Fan) -> Option<Vec<usize>> {
    if !matches!(is_complete(fan), Ok(true)) || !is_smooth_fan(fan) {
        return None;
    }
    let n = fan.rank;
    let m = fan.rays.len();
    if m > 20 {
        return None;
    }
    if !sum_of(fan, &(0..m).collect::<Vec<_>>()).is_zero() {
        return None;
    }
    // circuits: minimal nonempty zero-sum subsets
    let zero_sum: Vec<u32> = (1u32..(1 << m))
        .filter(|&mask| sum_of(fan, &members(mask, m)).is_zero())
        .collect();
    let circuits: Vec<u32> = zero_sum
        .iter()
        .copied()
        .filter(|&s| !zero_sum.iter().any(|&t| t != s && t & s == t))
        .collect();

    let mut found = None;
    partitions(&circuits, (1 << m) - 1, &mut Vec::new(), &mut |groups| {
        if found.is_none() {
            found = check_product(fan, groups, n);
        }
        found.is_some()
    });
    found
}

fn members(mask: u32, m: usize) -> Vec<usize> {
    (0..m).filter(|i| mask & (1 << i) != 0).collect()
}

fn sum_of(fan: &Fan, indices: &[usize]) -> IntVector {
    indices
        .iter()
        .fold(IntVector::zero(fan.rank), |acc, &i| &acc + &fan.rays[i])
}

/// Enumerates partitions of `remaining` into the given blocks; stops when the
/// callback returns `true`.
fn partitions(
    blocks: &[u32],
    remaining: u32,
    chosen: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    if remaining == 0 {
        return visit(chosen);
    }
    let lowest = remaining & remaining.wrapping_neg();
    for &b in blocks {
        if b & lowest != 0 && b & !remaining == 0 {
            chosen.push(b);
            let stop = partitions(blocks, remaining & !b, chosen, visit);
            chosen.pop();
            if stop {
                return true;
            }
        }
    }
    false
}

fn check_product(fan: &Fan, groups: &[u32], n: usize) -> Option<Vec<usize>> {
    let m = fan.rays.len();
    let mut dims = Vec::new();
    let mut basis = Vec::new();
    let mut sets = Vec::new();
    for &g in groups {
        let idx = members(g, m);
        let vecs: Vec<IntVector> = idx.iter().map(|&i| fan.rays[i].clone()).collect();
        let r = rank(&vecs, n);
        if idx.len() != r + 1 {
            return None;
        }
        dims.push(r);
        basis.extend(saturation_basis(&vecs, n));
        sets.push(idx);
    }
    if basis.len() != n || !extends_to_basis(&basis, n) {
        return None;
    }
    // maximal cones must be exactly the products of (Sᵢ minus one ray)
    let mut expected: BTreeSet<Vec<usize>> = BTreeSet::from([Vec::new()]);
    for set in &sets {
        let mut next = BTreeSet::new();
        for partial in &expected {
            for &drop in set {
                let mut c = partial.clone();
                c.extend(set.iter().filter(|&&i| i != drop));
                c.sort_unstable();
                next.insert(c);
            }
        }
        expected = next;
    }
    let actual: BTreeSet<Vec<usize>> = fan.max_cones.iter().cloned().collect();
    if actual != expected {
        return None;
    }
    dims.sort_unstable();
    Some(dims)
}

/// One entry per cone: the cone and the dimension `n − dim σ` of its torus orbit.
pub fn orbit_inventory(fan: &Fan) -> Vec<(RationalCone, usize)> {
    fan.cones()
        .iter()
        .map(|c| (fan.cone_from_indices(c), fan.rank - fan.dim_of(c)))
        .collect()
}

/// Whether the lattice map `phi` (a `rank(target) × rank(source)` matrix)
/// sends every cone of `source` into some cone of `target`.
pub fn is_fan_morphism(phi: &IntMatrix, source: &Fan, target: &Fan) -> Result<bool> {
    if phi.cols() != source.rank {
        return Err(Error::RankMismatch {
            expected: source.rank,
            found: phi.cols(),
        });
    }
    if phi.rows() != target.rank {
        return Err(Error::RankMismatch {
            expected: target.rank,
            found: phi.rows(),
        });
    }
    let targets = target.max_cone_objects();
    Ok(source.max_cones.iter().all(|cone| {
        let images: Vec<IntVector> = cone.iter().map(|&i| phi.apply(&source.rays[i])).collect();
        targets
            .iter()
            .any(|t| images.iter().all(|x| t.contains_point(x)))
    }))
}

/// `Cone(Σ(1))∨`: its lattice points index a basis of the global regular
/// functions `K[X]`.
pub fn global_functions_cone(fan: &Fan) -> RationalCone {
    RationalCone::from_generators(fan.rank, &fan.rays)
        .expect("rays share the fan's rank")
        .dual()
}

/// Number of maximal cones containing each ray; handy for reports.
pub fn ray_multiplicities(fan: &Fan) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for c in &fan.max_cones {
        for &i in c {
            *out.entry(i).or_insert(0) += 1;
        }
    }
    out
}
