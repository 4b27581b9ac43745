//! Affine toric surfaces `X_{a,b}` and the hypersurfaces `x_{n+1}^b = x₁⋯xₙ`.
//!
//! `X_{a,b}` always means the surface of the cone `Cone((1,0),(a,b))`. The
//! weights of the cyclic quotient presentation `A²/C_b` are read from the Cox
//! quasitorus rather than assumed, because the cone label and the weight
//! label of the same surface differ (cone label `a` has weight label
//! `b − a`).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::classify::{theta_toric, Verdict};
use crate::cone::{hilbert_basis_with_limit, RationalCone, DEFAULT_RANK_LIMIT};
use crate::cox::cox_presentation;
use crate::error::{Error, Result};
use crate::fan::{smooth_locus_subfan, Fan};
use crate::lattice::{serialize_int, IntMatrix, IntVector};

/// Normal form `(a, b)`: `gcd(a, b) = 1` and either `(0, 1)` or `b > a ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceForm {
    #[serde(serialize_with = "serialize_int")]
    a: BigInt,
    #[serde(serialize_with = "serialize_int")]
    b: BigInt,
}

impl SurfaceForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<SurfaceForm> {
        let (a, b) = (a.into(), b.into());
        let smooth = a.is_zero() && b.is_one();
        let singular = b > a && a >= BigInt::one() && a.gcd(&b).is_one();
        if smooth || singular {
            Ok(SurfaceForm { a, b })
        } else {
            Err(Error::InvalidSurfaceForm {
                a: a.to_string(),
                b: b.to_string(),
            })
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_smooth(&self) -> bool {
        self.b.is_one()
    }

    /// `Cone((1,0),(a,b))`.
    pub fn cone(&self) -> RationalCone {
        RationalCone::from_generators(2, &self.generators()).expect("rank-2 generators")
    }

    pub fn generators(&self) -> [IntVector; 2] {
        [
            IntVector::from_i64s(&[1, 0]),
            IntVector::new(vec![self.a.clone(), self.b.clone()]),
        ]
    }

    pub fn fan(&self) -> Fan {
        Fan::single_cone(&self.cone()).expect("normal-form cones are strongly convex")
    }
}

impl fmt::Display for SurfaceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X_({},{})", self.a, self.b)
    }
}

/// `T ∈ GL₂(ℤ)` with `T·first = (1,0)` and `T·second = (a,b)`, `0 ≤ a < b`.
fn reduce_ordered(first: &IntVector, second: &IntVector) -> (BigInt, BigInt, IntMatrix) {
    let (p, q) = (&first[0], &first[1]);
    let eg = p.extended_gcd(q);
    let (mut x, mut y) = (eg.x, eg.y);
    if eg.gcd.is_negative() {
        x = -x;
        y = -y;
    }
    // rows (x, y) and (-q, p): determinant x·p + y·q = 1
    let mut t = IntMatrix::zeros(2, 2);
    t[(0, 0)] = x;
    t[(0, 1)] = y;
    t[(1, 0)] = -q.clone();
    t[(1, 1)] = p.clone();
    let image = t.apply(second);
    let (c, mut d) = (image[0].clone(), image[1].clone());
    if d.is_negative() {
        t[(1, 0)] = -t[(1, 0)].clone();
        t[(1, 1)] = -t[(1, 1)].clone();
        d = -d;
    }
    let a = c.mod_floor(&d);
    let shift = (&a - &c) / &d;
    // shear (1 shift; 0 1) applied on the left
    let row1 = t.row(1);
    t[(0, 0)] += &shift * &row1[0];
    t[(0, 1)] += &shift * &row1[1];
    (a, d, t)
}

/// Normal form of a full-dimensional strongly convex rank-2 cone and a
/// unimodular matrix carrying its rays to `(1,0)` and `(a,b)`.
///
/// Both ray orders are reduced; they give `a` and `a⁻¹ mod b`, and the smaller
/// one is kept so that the form depends only on the isomorphism class.
pub fn cone_normal_form_2d(sigma: &RationalCone) -> Result<(SurfaceForm, IntMatrix)> {
    if sigma.rank() != 2 || !sigma.is_strongly_convex() || sigma.rays().len() != 2 {
        return Err(Error::UnsupportedCone(format!(
            "{sigma} is not a full-dimensional strongly convex cone in rank 2"
        )));
    }
    let rays = sigma.rays();
    let one = reduce_ordered(&rays[0], &rays[1]);
    let two = reduce_ordered(&rays[1], &rays[0]);
    let (a, b, t) = if two.0 < one.0 { two } else { one };
    let form = if b.is_one() {
        SurfaceForm::new(0, 1)?
    } else {
        SurfaceForm::new(a, b)?
    };
    Ok((form, t))
}

/// `X_{a,b} ≅ X_{a′,b′}` iff `b = b′` and `a = a′` or `a·a′ ≡ 1 (mod b)`.
pub fn surfaces_isomorphic(s: &SurfaceForm, t: &SurfaceForm) -> bool {
    s.b == t.b && (s.a == t.a || (&s.a * &t.a).mod_floor(&s.b).is_one())
}

/// Inverse of `x` modulo `m`, if it exists.
fn inverse_mod(x: &BigInt, m: &BigInt) -> Option<BigInt> {
    let eg = x.extended_gcd(m);
    eg.gcd.abs().is_one().then(|| (eg.x * eg.gcd.signum()).mod_floor(m))
}

/// The cyclic quotient `A²/C_b` with `ζ·(x, y) = (ζ^weight x, ζ y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientData {
    #[serde(serialize_with = "serialize_int")]
    pub order: BigInt,
    /// Weights of the Cox coordinates of the rays `(1,0)` and `(a,b)`, scaled
    /// so the second is 1.
    pub weights: IntVector,
    /// The first weight: the label of the surface in the weight convention.
    #[serde(serialize_with = "serialize_int")]
    pub weight_label: BigInt,
    pub action: String,
}

/// A three-generator semigroup `x, y, z` with `k·z = x + y`, i.e. the
/// hypersurface `z^k = xy`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypersurface {
    #[serde(serialize_with = "serialize_int")]
    pub degree: BigInt,
    pub x: IntVector,
    pub y: IntVector,
    pub z: IntVector,
    pub equation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub form: SurfaceForm,
    pub cone: Vec<IntVector>,
    pub dual_cone: Vec<IntVector>,
    /// Minimal generators of `σ∨ ∩ M`, i.e. of the coordinate ring.
    pub hilbert_basis: Vec<IntVector>,
    pub quotient: Option<QuotientData>,
    pub hypersurface: Option<Hypersurface>,
    /// Whether the smooth locus is a homogeneous space of an algebraic group.
    pub smooth_locus_homogeneous_space: bool,
    pub theta: Verdict,
    pub theta_smooth_locus: Verdict,
}

/// Finds `z` among three generators with `k·z = x + y` for an integer `k ≥ 2`.
pub fn detect_hypersurface(basis: &[IntVector]) -> Option<Hypersurface> {
    if basis.len() != 3 {
        return None;
    }
    for zi in 0..3 {
        let others: Vec<&IntVector> = (0..3).filter(|&i| i != zi).map(|i| &basis[i]).collect();
        let sum = others[0] + others[1];
        let z = &basis[zi];
        let pivot = z.coords().iter().position(|c| !c.is_zero())?;
        let (k, rem) = sum[pivot].div_rem(&z[pivot]);
        if rem.is_zero() && k > BigInt::one() && z.scale(&k) == sum {
            return Some(Hypersurface {
                equation: format!("z^{k} = x*y"),
                degree: k,
                x: others[0].clone(),
                y: others[1].clone(),
                z: z.clone(),
            });
        }
    }
    None
}

pub fn surface_report(s: &SurfaceForm) -> Result<SurfaceReport> {
    let form = SurfaceForm::new(s.a.clone(), s.b.clone())?;
    let fan = form.fan();
    let cone = form.cone();
    let dual = cone.dual();
    let hilbert_basis = hilbert_basis_with_limit(&dual, DEFAULT_RANK_LIMIT)?;
    let theta = theta_toric(&fan)?;
    let theta_smooth_locus = match &theta.smooth_locus {
        Some(reg) => (**reg).clone(),
        None => theta.clone(),
    };

    let quotient = if form.is_smooth() {
        None
    } else {
        let cox = cox_presentation(&fan)?;
        let order = cox.class_group.torsion[0].clone();
        let weight_of = |ray: &IntVector| {
            let v = cox
                .variables
                .iter()
                .find(|v| &v.ray == ray)
                .expect("every ray has a Cox variable");
            v.degree[cox.class_group.free_rank].clone()
        };
        let [e1, second] = form.generators();
        let (w1, w2) = (weight_of(&e1), weight_of(&second));
        let scale = inverse_mod(&w2, &order).expect("the weight of a ray generates the group");
        let label = (&w1 * &scale).mod_floor(&order);
        Some(QuotientData {
            action: format!("ζ·(x, y) = (ζ^{label} x, ζ y), ζ^{order} = 1"),
            weights: IntVector::new(vec![label.clone(), BigInt::one()]),
            weight_label: label,
            order,
        })
    };
    // the smooth locus is a homogeneous space exactly for the weight label 1
    let smooth_locus_homogeneous_space = quotient
        .as_ref()
        .is_none_or(|q| q.weight_label.is_one());

    Ok(SurfaceReport {
        hypersurface: detect_hypersurface(&hilbert_basis),
        cone: cone.rays().to_vec(),
        dual_cone: dual.rays().to_vec(),
        hilbert_basis,
        quotient,
        smooth_locus_homogeneous_space,
        theta,
        theta_smooth_locus,
        form,
    })
}

/// A question that may be settled computationally or left open.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Yes,
    No,
    OpenProblem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub n: usize,
    #[serde(serialize_with = "serialize_int")]
    pub b: BigInt,
    /// The cone whose lattice points give the coordinate ring.
    pub dual_cone: Vec<IntVector>,
    /// The cone of the affine toric variety.
    pub cone: Vec<IntVector>,
    pub generators: Vec<IntVector>,
    /// Index into `generators` of `u_{n+1}` with `b·u_{n+1} = u₁ + ⋯ + uₙ`.
    pub apex: Option<usize>,
    pub equation: String,
    pub smooth_locus_max_cones: Vec<Vec<usize>>,
    pub smooth_locus_rays: Vec<IntVector>,
    pub theta_smooth_locus: Verdict,
    pub smooth_locus_homogeneous_space: Answer,
}

impl FamilyReport {
    /// `n + 1` generators with the expected relation.
    pub fn is_hypersurface(&self) -> bool {
        self.apex.is_some() && self.generators.len() == self.n + 1
    }
}

/// `X(n, b) = { x_{n+1}^b = x₁⋯xₙ }` from its cone
/// `Cone(e₁, …, e_{n−1}, (b−1)Σ_{i<n} eᵢ + b·eₙ)` of characters.
pub fn hypersurface_family(n: usize, b: i64, rank_limit: usize) -> Result<FamilyReport> {
    if n < 2 || b < 2 {
        return Err(Error::DegenerateInput(format!(
            "the family needs n ≥ 2 and b ≥ 2, got n = {n}, b = {b}"
        )));
    }
    if n > rank_limit {
        return Err(Error::UnsupportedRank {
            rank: n,
            limit: rank_limit,
        });
    }
    let mut gens: Vec<IntVector> = (0..n - 1).map(|i| IntVector::unit(n, i)).collect();
    let mut last = vec![BigInt::from(b - 1); n];
    last[n - 1] = BigInt::from(b);
    gens.push(IntVector::new(last));
    let characters = RationalCone::from_generators(n, &gens)?;
    let sigma = characters.dual();
    let generators = hilbert_basis_with_limit(&characters, rank_limit)?;

    let b_big = BigInt::from(b);
    let total = generators
        .iter()
        .fold(IntVector::zero(n), |acc, g| &acc + g);
    // b·u = Σ others  ⟺  (b + 1)·u = Σ all
    let apex = generators
        .iter()
        .position(|u| u.scale(&(&b_big + 1)) == total);

    let fan = Fan::single_cone(&sigma)?;
    let reg = smooth_locus_subfan(&fan);
    let theta_smooth_locus = theta_toric(&reg)?;
    let smooth_locus_homogeneous_space = if n == 2 {
        let (form, _) = cone_normal_form_2d(&sigma)?;
        if surface_report(&form)?.smooth_locus_homogeneous_space {
            Answer::Yes
        } else {
            Answer::No
        }
    } else {
        Answer::OpenProblem
    };

    Ok(FamilyReport {
        n,
        b: b_big,
        dual_cone: characters.rays().to_vec(),
        cone: sigma.rays().to_vec(),
        generators,
        apex,
        equation: format!("x{}^{b} = {}", n + 1, (1..=n).map(|i| format!("x{i}")).collect::<Vec<_>>().join("*")),
        smooth_locus_max_cones: reg.max_cones().to_vec(),
        smooth_locus_rays: reg.rays().to_vec(),
        theta_smooth_locus,
        smooth_locus_homogeneous_space,
    })
}
