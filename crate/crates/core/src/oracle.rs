//! Brute-force cross-checks for the exact algorithms.
//!
//! Everything here works on `i64` coordinates in bounded boxes and uses its
//! own membership tests (cross products and determinants) instead of the
//! double-description and Smith-form code of the main modules.

use crate::cone::RationalCone;
use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, IntVector};
use crate::surfaces::SurfaceForm;

fn small(v: &IntVector) -> Result<Vec<i64>> {
    v.to_i64s()
        .ok_or_else(|| Error::DegenerateInput(format!("{v} does not fit in 64-bit integers")))
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn det2(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn cross(a: &[i64], b: &[i64]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// All points of `[-bound, bound]^dim` in lexicographic order.
fn box_points(dim: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * bound + 1) as usize;
    let total = side.pow(dim as u32);
    (0..total).map(move |mut idx| {
        let mut p = vec![0i64; dim];
        for slot in p.iter_mut().rev() {
            *slot = (idx % side) as i64 - bound;
            idx /= side;
        }
        p
    })
}

/// Membership in a pointed rank-2 cone given by its rays.
struct PlanarCone {
    rays: Vec<Vec<i64>>,
}

impl PlanarCone {
    fn contains(&self, x: &[i64]) -> bool {
        match self.rays.as_slice() {
            [] => x.iter().all(|&c| c == 0),
            [g] => det2(g, x) == 0 && dot(g, x) >= 0,
            [g, h] => {
                let orient = det2(g, h).signum();
                det2(g, x) * orient >= 0 && det2(x, h) * orient >= 0
            }
            _ => unreachable!("a pointed planar cone has at most two rays"),
        }
    }
}

/// Membership in a full-dimensional pointed rank-3 cone, from every plane
/// through two rays that supports the cone.
struct SpatialCone {
    normals: Vec<[i64; 3]>,
}

impl SpatialCone {
    fn new(rays: &[Vec<i64>]) -> SpatialCone {
        let mut normals = Vec::new();
        for i in 0..rays.len() {
            for j in i + 1..rays.len() {
                let mut n = cross(&rays[i], &rays[j]);
                if n == [0, 0, 0] {
                    continue;
                }
                let signs: Vec<i64> = rays.iter().map(|r| dot(&n, r).signum()).collect();
                if signs.iter().all(|&s| s >= 0) {
                    normals.push(n);
                } else if signs.iter().all(|&s| s <= 0) {
                    n = [-n[0], -n[1], -n[2]];
                    normals.push(n);
                }
            }
        }
        SpatialCone { normals }
    }

    fn contains(&self, x: &[i64]) -> bool {
        self.normals.iter().all(|n| dot(n, x) >= 0)
    }
}

/// Irreducible nonzero points among `points` (sorted by a positive grading),
/// where `x` is reducible when `x − h` lies in the cone for an irreducible `h`
/// found earlier.
fn sieve(mut points: Vec<Vec<i64>>, grading: &[i64], member: impl Fn(&[i64]) -> bool) -> Vec<Vec<i64>> {
    points.sort_by_key(|p| (dot(grading, p), p.clone()));
    let mut irreducible: Vec<Vec<i64>> = Vec::new();
    for x in points {
        let reducible = irreducible.iter().any(|h| {
            let diff: Vec<i64> = x.iter().zip(h).map(|(a, b)| a - b).collect();
            diff.iter().any(|&c| c != 0) && member(&diff)
        });
        if !reducible {
            irreducible.push(x);
        }
    }
    irreducible.sort();
    irreducible
}

fn to_vectors(points: Vec<Vec<i64>>) -> Vec<IntVector> {
    points.into_iter().map(|p| IntVector::from_i64s(&p)).collect()
}

/// Hilbert basis of a pointed rank-2 cone by enumerating `[-bound, bound]²`.
///
/// A point is kept when no other nonzero lattice point `y` of the cone has
/// `x − y` in the cone. Complete when `bound` is at least every coordinate of
/// the generators, which bounds the fundamental parallelepiped in rank 2.
pub fn brute_hilbert_basis(sigma: &RationalCone, bound: i64) -> Result<Vec<IntVector>> {
    if sigma.rank() != 2 {
        return Err(Error::UnsupportedRank {
            rank: sigma.rank(),
            limit: 2,
        });
    }
    if !sigma.is_strongly_convex() {
        return Err(Error::UnsupportedCone(format!("{sigma} is not pointed")));
    }
    let cone = PlanarCone {
        rays: sigma.rays().iter().map(small).collect::<Result<_>>()?,
    };
    let points: Vec<Vec<i64>> = box_points(2, bound)
        .filter(|p| p.iter().any(|&c| c != 0) && cone.contains(p))
        .collect();
    let mut out = Vec::new();
    for x in &points {
        let reducible = points.iter().any(|y| {
            let diff = [x[0] - y[0], x[1] - y[1]];
            y != x && cone.contains(&diff)
        });
        if !reducible {
            out.push(x.clone());
        }
    }
    out.sort();
    Ok(to_vectors(out))
}

/// Irreducible lattice points of a full-dimensional pointed rank-3 cone in
/// `[-bound, bound]³`. Equal to the Hilbert basis whenever the box contains
/// the whole basis.
pub fn brute_irreducibles_rank3(sigma: &RationalCone, bound: i64) -> Result<Vec<IntVector>> {
    if sigma.rank() != 3 {
        return Err(Error::UnsupportedRank {
            rank: sigma.rank(),
            limit: 3,
        });
    }
    if !sigma.is_strongly_convex() || !sigma.is_full_dimensional() {
        return Err(Error::UnsupportedCone(format!(
            "{sigma} is not a full-dimensional pointed cone"
        )));
    }
    let rays: Vec<Vec<i64>> = sigma.rays().iter().map(small).collect::<Result<_>>()?;
    let cone = SpatialCone::new(&rays);
    // an interior grading: the sum of the supporting normals is positive on
    // every nonzero point of a pointed full-dimensional cone
    let grading: Vec<i64> = (0..3).map(|i| cone.normals.iter().map(|n| n[i]).sum()).collect();
    let points: Vec<Vec<i64>> = box_points(3, bound)
        .filter(|p| p.iter().any(|&c| c != 0) && cone.contains(p))
        .collect();
    Ok(to_vectors(sieve(points, &grading, |x| cone.contains(x))))
}

/// Checks a claimed dual cone pointwise on `[-bound, bound]^n`: `u` pairs
/// nonnegatively with every generator of `sigma` exactly when the claimed cone
/// contains it.
pub fn brute_dual_equivalence(sigma: &RationalCone, claimed: &RationalCone, bound: i64) -> bool {
    if sigma.rank() != claimed.rank() {
        return false;
    }
    let Ok(gens) = sigma
        .generators()
        .iter()
        .map(small)
        .collect::<Result<Vec<Vec<i64>>>>()
    else {
        return false;
    };
    box_points(sigma.rank(), bound).all(|u| {
        let pairs_nonneg = gens.iter().all(|g| dot(g, &u) >= 0);
        pairs_nonneg == claimed.contains_point(&IntVector::from_i64s(&u))
    })
}

/// First point of the box where the claimed dual cone is wrong.
pub fn dual_witness(sigma: &RationalCone, claimed: &RationalCone, bound: i64) -> Option<IntVector> {
    let gens: Vec<Vec<i64>> = sigma.generators().iter().map(|g| small(g).ok()).collect::<Option<_>>()?;
    box_points(sigma.rank(), bound)
        .find(|u| {
            gens.iter().all(|g| dot(g, u) >= 0) != claimed.contains_point(&IntVector::from_i64s(u))
        })
        .map(|u| IntVector::from_i64s(&u))
}

/// Searches `GL₂(ℤ)` for a matrix carrying `Cone((1,0),(a,b))` onto
/// `Cone((1,0),(a′,b′))`.
///
/// The image of `(1,0)` must be one of the two target rays, which fixes the
/// first column; the second column ranges over `[-bound, bound]²`. Any
/// witness is checked. The search is complete once `bound ≥ b`, since a
/// solution has second column `(r′ − a·r)/b` with entries at most `a + 1`.
pub fn brute_surface_iso_search(s: &SurfaceForm, t: &SurfaceForm, bound: i64) -> Option<IntMatrix> {
    let gens = |f: &SurfaceForm| -> Option<[Vec<i64>; 2]> {
        let [e, v] = f.generators();
        Some([e.to_i64s()?, v.to_i64s()?])
    };
    let [_, source] = gens(s)?;
    let target = gens(t)?;
    for (i, first) in target.iter().enumerate() {
        let other = &target[1 - i];
        for p in -bound..=bound {
            for q in -bound..=bound {
                let det = first[0] * q - first[1] * p;
                if det.abs() != 1 {
                    continue;
                }
                let image = [
                    first[0] * source[0] + p * source[1],
                    first[1] * source[0] + q * source[1],
                ];
                if image[..] == other[..] {
                    return Some(IntMatrix::from_i64_rows(&[&[first[0], p], &[first[1], q]]));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> IntVector {
        IntVector::from_i64s(c)
    }

    fn cone(rank: usize, gens: &[&[i64]]) -> RationalCone {
        let g: Vec<IntVector> = gens.iter().map(|c| v(c)).collect();
        RationalCone::from_generators(rank, &g).unwrap()
    }

    #[test]
    fn planar_examples() {
        assert_eq!(
            brute_hilbert_basis(&cone(2, &[&[1, 0], &[0, 1]]), 3).unwrap(),
            vec![v(&[0, 1]), v(&[1, 0])]
        );
        assert_eq!(
            brute_hilbert_basis(&cone(2, &[&[0, 1], &[2, -1]]), 2).unwrap(),
            vec![v(&[0, 1]), v(&[1, 0]), v(&[2, -1])]
        );
        assert_eq!(
            brute_hilbert_basis(&cone(2, &[&[0, 1], &[3, -2]]), 3).unwrap(),
            vec![v(&[0, 1]), v(&[1, 0]), v(&[2, -1]), v(&[3, -2])]
        );
        assert_eq!(brute_hilbert_basis(&cone(2, &[&[2, 3]]), 4).unwrap(), vec![v(&[2, 3])]);
        assert!(matches!(
            brute_hilbert_basis(&cone(3, &[&[1, 0, 0]]), 2),
            Err(Error::UnsupportedRank { rank: 3, .. })
        ));
    }

    #[test]
    fn spatial_example() {
        let sigma = cone(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
        let found = brute_irreducibles_rank3(&sigma, 3).unwrap();
        assert_eq!(found, vec![v(&[0, 1, 0]), v(&[1, 0, 0]), v(&[1, 1, 1]), v(&[1, 1, 2])]);
    }

    #[test]
    fn dual_examples() {
        let quadrant = cone(2, &[&[1, 0], &[0, 1]]);
        assert!(brute_dual_equivalence(&quadrant, &quadrant, 3));
        let sigma = cone(2, &[&[1, 0], &[1, 2]]);
        assert!(brute_dual_equivalence(&sigma, &cone(2, &[&[0, 1], &[2, -1]]), 5));
        assert!(!brute_dual_equivalence(&sigma, &quadrant, 5));
        assert!(dual_witness(&sigma, &quadrant, 5).is_some());
        let w = dual_witness(&sigma, &quadrant, 5).unwrap();
        assert!(cone(2, &[&[0, 1], &[2, -1]]).contains_point(&w) != quadrant.contains_point(&w));
    }

    #[test]
    fn iso_search_examples() {
        let f = |a, b| SurfaceForm::new(a, b).unwrap();
        assert!(brute_surface_iso_search(&f(2, 5), &f(3, 5), 8).is_some());
        assert!(brute_surface_iso_search(&f(1, 3), &f(2, 3), 8).is_none());
        let m = brute_surface_iso_search(&f(3, 7), &f(3, 7), 8).unwrap();
        assert_eq!(m, IntMatrix::identity(2));
    }
}
