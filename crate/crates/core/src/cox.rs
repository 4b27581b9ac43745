//! Class groups and Cox quotient presentations of non-degenerate toric
//! varieties.
//!
//! With rays `p₁, …, p_m` spanning ℚⁿ there is an exact sequence
//! `0 → M → ℤ^m → Cl(X) → 0`, the first map being `u ↦ (⟨u,pᵢ⟩)ᵢ`. Its
//! cokernel is read off a Smith form of the `m × n` pairing matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{hermite_normal_form, serialize_ints, smith_normal_form, IntMatrix, IntVector};

/// `Cl(X) ≅ ℤ^free_rank ⊕ ⊕ ℤ/dᵢ`.
///
/// Column `i` of `degree_map` is the class of the i-th ray divisor: free
/// coordinates first, then one coordinate per torsion factor reduced into
/// `[0, dᵢ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassGroupPresentation {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_ints")]
    pub torsion: Vec<BigInt>,
    pub degree_map: IntMatrix,
}

impl ClassGroupPresentation {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order, or `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    /// The class `[D_i]` as free coordinates followed by torsion residues.
    pub fn degree(&self, ray: usize) -> IntVector {
        self.degree_map.column(ray)
    }

    /// Reduces an arbitrary coordinate vector into canonical form.
    pub fn reduce(&self, class: &IntVector) -> IntVector {
        let mut c = class.clone();
        for (k, d) in self.torsion.iter().enumerate() {
            let i = self.free_rank + k;
            c[i] = c[i].mod_floor(d);
        }
        c
    }
}

impl fmt::Display for ClassGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            r => parts.push(format!("ℤ^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("ℤ/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// The `m × n` matrix whose rows are the rays.
pub fn pairing_matrix(fan: &Fan) -> IntMatrix {
    IntMatrix::from_rows(fan.rays(), fan.rank())
}

fn require_non_degenerate(fan: &Fan) -> Result<()> {
    fan.ensure_valid()?;
    if fan.ray_span_rank() != fan.rank() {
        return Err(Error::DegenerateFan);
    }
    Ok(())
}

/// The cokernel of `M → ℤ^m`.
pub fn divisor_class_group(fan: &Fan) -> Result<ClassGroupPresentation> {
    require_non_degenerate(fan)?;
    let n = fan.rank();
    let m = fan.rays().len();
    let p = pairing_matrix(fan);
    let snf = smith_normal_form(&p);
    let diag = snf.diagonal();

    // free part: the rows of U beyond the rank, brought to Hermite form
    let free_rows: Vec<IntVector> = (n..m).map(|i| snf.u.row(i)).collect();
    let free = hermite_normal_form(&free_rows, m);
    debug_assert_eq!(free.len(), m - n);

    let mut rows = free;
    let mut torsion = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if d > &BigInt::one() {
            let row = snf.u.row(i);
            rows.push(IntVector::new(row.coords().iter().map(|x| x.mod_floor(d)).collect()));
            torsion.push(d.clone());
        }
    }
    Ok(ClassGroupPresentation {
        free_rank: m - n,
        torsion,
        degree_map: IntMatrix::from_rows(&rows, m),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxVariable {
    pub name: String,
    pub ray: IntVector,
    pub degree: IntVector,
}

/// `X ≅ (K^m ∖ Z) // G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxPresentation {
    pub class_group: ClassGroupPresentation,
    pub variables: Vec<CoxVariable>,
    /// One squarefree exponent vector per maximal cone, supported on the rays
    /// outside it. `Z` is their common zero set.
    pub irrelevant_monomials: Vec<Vec<u32>>,
    /// `G = { t : ∏ tᵢ^{wᵢ} = 1 }` for every listed `w`.
    pub quasitorus_relations: Vec<IntVector>,
    pub summary: String,
}

impl CoxPresentation {
    /// `Z = ∅` exactly when some generator of the irrelevant ideal is the
    /// empty monomial 1.
    pub fn irrelevant_locus_is_empty(&self) -> bool {
        self.irrelevant_monomials
            .iter()
            .any(|mono| mono.iter().all(|&e| e == 0))
    }

    pub fn monomial_string(&self, exponents: &[u32]) -> String {
        let factors: Vec<&str> = exponents
            .iter()
            .zip(&self.variables)
            .filter(|(&e, _)| e > 0)
            .map(|(_, v)| v.name.as_str())
            .collect();
        if factors.is_empty() {
            "1".into()
        } else {
            factors.join("*")
        }
    }

    pub fn relation_string(&self, w: &IntVector) -> String {
        let factors: Vec<String> = w
            .coords()
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, e)| {
                if e.is_one() {
                    format!("t{}", i + 1)
                } else {
                    format!("t{}^{e}", i + 1)
                }
            })
            .collect();
        if factors.is_empty() {
            "1 = 1".into()
        } else {
            format!("{} = 1", factors.join("*"))
        }
    }
}

pub fn cox_presentation(fan: &Fan) -> Result<CoxPresentation> {
    let class_group = divisor_class_group(fan)?;
    let m = fan.rays().len();
    let variables = fan
        .rays()
        .iter()
        .enumerate()
        .map(|(i, ray)| CoxVariable {
            name: format!("x{}", i + 1),
            ray: ray.clone(),
            degree: class_group.degree(i),
        })
        .collect();
    let irrelevant_monomials = fan
        .max_cones()
        .iter()
        .map(|cone| {
            (0..m)
                .map(|i| u32::from(cone.binary_search(&i).is_err()))
                .collect()
        })
        .collect();
    let quasitorus_relations = pairing_matrix(fan).transpose().row_vectors();
    let mut cox = CoxPresentation {
        class_group,
        variables,
        irrelevant_monomials,
        quasitorus_relations,
        summary: String::new(),
    };
    let z = if cox.irrelevant_locus_is_empty() {
        "∅".to_string()
    } else {
        let monos: Vec<String> = cox
            .irrelevant_monomials
            .iter()
            .map(|e| cox.monomial_string(e))
            .collect();
        format!("V({})", monos.join(", "))
    };
    let relations: Vec<String> = cox
        .quasitorus_relations
        .iter()
        .map(|w| cox.relation_string(w))
        .collect();
    cox.summary = format!(
        "X ≅ X̂ // G with X̂ = K^{m} ∖ Z, Z = {z}, Cl(X) ≅ {}, G = {{ t ∈ (K^×)^{m} : {} }}",
        cox.class_group,
        relations.join(", ")
    );
    Ok(cox)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface(a: i64, b: i64) -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[a, b]], &[&[0, 1]]).unwrap()
    }

    fn exact(cl: &ClassGroupPresentation, fan: &Fan) {
        let composed = cl.degree_map.mul(&pairing_matrix(fan));
        for i in 0..composed.rows() {
            for j in 0..composed.cols() {
                let x = &composed[(i, j)];
                if i < cl.free_rank {
                    assert!(x.is_zero());
                } else {
                    assert!(x.is_multiple_of(&cl.torsion[i - cl.free_rank]));
                }
            }
        }
    }

    #[test]
    fn affine_space_has_trivial_group() {
        for n in 1..4 {
            let f = Fan::affine_space(n);
            let cl = divisor_class_group(&f).unwrap();
            assert!(cl.is_trivial());
            assert_eq!(cl.order(), Some(BigInt::one()));
        }
    }

    #[test]
    fn projective_space_degrees() {
        let f = Fan::projective_space(2);
        let cl = divisor_class_group(&f).unwrap();
        assert_eq!(cl.free_rank, 1);
        assert!(cl.torsion.is_empty());
        for i in 0..3 {
            assert_eq!(cl.degree(i), IntVector::from_i64s(&[1]));
        }
        exact(&cl, &f);
    }

    #[test]
    fn cyclic_surfaces() {
        for (a, b) in [(1, 2), (1, 3), (2, 3), (2, 5), (3, 7)] {
            let f = surface(a, b);
            let cl = divisor_class_group(&f).unwrap();
            assert_eq!(cl.free_rank, 0);
            assert_eq!(cl.torsion, vec![BigInt::from(b)]);
            exact(&cl, &f);
            let cox = cox_presentation(&f).unwrap();
            assert!(cox.irrelevant_locus_is_empty());
            assert_eq!(
                cox.quasitorus_relations,
                vec![IntVector::from_i64s(&[1, a]), IntVector::from_i64s(&[0, b])]
            );
            // weights (-a, 1) up to the choice of generator
            let d0 = &cox.variables[0].degree[0];
            let d1 = &cox.variables[1].degree[0];
            assert!((d0 + d1 * BigInt::from(a)).is_multiple_of(&BigInt::from(b)));
        }
    }

    #[test]
    fn punctured_plane_presentation() {
        let cox = cox_presentation(&Fan::punctured_affine_space(2)).unwrap();
        assert!(cox.class_group.is_trivial());
        assert_eq!(cox.irrelevant_monomials, vec![vec![0, 1], vec![1, 0]]);
        assert!(!cox.irrelevant_locus_is_empty());
        assert!(cox.summary.contains("V(x2, x1)"));
    }

    #[test]
    fn projective_plane_presentation() {
        let cox = cox_presentation(&Fan::projective_space(2)).unwrap();
        assert_eq!(cox.variables.len(), 3);
        assert_eq!(cox.irrelevant_monomials.len(), 3);
        assert!(cox
            .irrelevant_monomials
            .iter()
            .all(|m| m.iter().sum::<u32>() == 1));
        assert_eq!(cox.quasitorus_relations.len(), 2);
    }

    #[test]
    fn products_and_torsion_free_smooth_fans() {
        let p1p1 = Fan::projective_space(1).product(&Fan::projective_space(1));
        let cl = divisor_class_group(&p1p1).unwrap();
        assert_eq!(cl.free_rank, 2);
        assert!(cl.torsion.is_empty());
        exact(&cl, &p1p1);
        for f in [Fan::hirzebruch(3), Fan::blown_up_projective_plane()] {
            assert!(divisor_class_group(&f).unwrap().torsion.is_empty());
        }
    }

    #[test]
    fn simplicial_index_matches_torsion() {
        let f = Fan::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 2, 6]], &[&[0, 1, 2]]).unwrap();
        let cl = divisor_class_group(&f).unwrap();
        assert_eq!(cl.order(), Some(BigInt::from(6)));
        exact(&cl, &f);
    }

    #[test]
    fn degenerate_fans_are_rejected() {
        let f = Fan::from_i64(2, &[&[1, 0]], &[&[0]]).unwrap();
        assert_eq!(divisor_class_group(&f), Err(Error::DegenerateFan));
        assert!(matches!(cox_presentation(&Fan::torus(1)), Err(Error::DegenerateFan)));
    }
}
