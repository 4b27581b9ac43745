//! Transitivity degrees θ(X) for toric varieties and for declared homogeneous
//! spaces of linear algebraic groups.
//!
//! Answers are bound pairs over `0 < 1 < 2 < 3 < ∞`. Every rule application
//! appends a [`Certificate`] recording the bounds after that step, so the
//! chain can be replayed and checked for monotonicity.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fan::{
    degenerate_split, detect_projective_product, global_functions_cone, is_complete,
    is_smooth_fan, quasi_affine_envelope, smooth_locus_subfan, Fan,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ThetaValue {
    Zero,
    One,
    Two,
    Three,
    Infinite,
}

impl ThetaValue {
    pub fn as_str(self) -> &'static str {
        match self {
            ThetaValue::Zero => "0",
            ThetaValue::One => "1",
            ThetaValue::Two => "2",
            ThetaValue::Three => "3",
            ThetaValue::Infinite => "inf",
        }
    }

    pub fn parse(s: &str) -> Option<ThetaValue> {
        Some(match s {
            "0" => ThetaValue::Zero,
            "1" => ThetaValue::One,
            "2" => ThetaValue::Two,
            "3" => ThetaValue::Three,
            "inf" | "∞" => ThetaValue::Infinite,
            _ => return None,
        })
    }
}

impl fmt::Display for ThetaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaValue::Infinite => write!(f, "∞"),
            other => write!(f, "{}", other.as_str()),
        }
    }
}

impl Serialize for ThetaValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Three-valued answer for properties the rules may leave open.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl From<bool> for Tri {
    fn from(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

/// The statements a verdict may rest on. This is the whitelist: a citation
/// string in a report is valid exactly when it is the key of one of these.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Citation {
    CurveClassification,
    TwoTransitiveActions,
    CompleteToricHomogeneity,
    ProjectiveProductDegree,
    InvertibleFunctionObstruction,
    NonQuasiAffineObstruction,
    QuasiAffineToricHomogeneous,
    QuasiAffineToricFlexible,
    QuasiAffineToricInfinite,
    FlexibleInfiniteTransitivity,
    FirstTypeInfinite,
    SecondTypeOne,
    EpimorphicOpenProblem,
    ToricCriterionOpen,
    QuasiAffineConjecture,
    DegenerateSplit,
    SingularLocusInvariant,
    ProductOfHomogeneous,
    TransitiveAction,
}

impl Citation {
    pub const ALL: [Citation; 19] = [
        Citation::CurveClassification,
        Citation::TwoTransitiveActions,
        Citation::CompleteToricHomogeneity,
        Citation::ProjectiveProductDegree,
        Citation::InvertibleFunctionObstruction,
        Citation::NonQuasiAffineObstruction,
        Citation::QuasiAffineToricHomogeneous,
        Citation::QuasiAffineToricFlexible,
        Citation::QuasiAffineToricInfinite,
        Citation::FlexibleInfiniteTransitivity,
        Citation::FirstTypeInfinite,
        Citation::SecondTypeOne,
        Citation::EpimorphicOpenProblem,
        Citation::ToricCriterionOpen,
        Citation::QuasiAffineConjecture,
        Citation::DegenerateSplit,
        Citation::SingularLocusInvariant,
        Citation::ProductOfHomogeneous,
        Citation::TransitiveAction,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Citation::CurveClassification => "theorem:homogeneous-curves",
            Citation::TwoTransitiveActions => "theorem:two-transitive-actions",
            Citation::CompleteToricHomogeneity => "theorem:complete-toric-homogeneity",
            Citation::ProjectiveProductDegree => "theorem:projective-product-degree",
            Citation::InvertibleFunctionObstruction => "theorem:invertible-function-obstruction",
            Citation::NonQuasiAffineObstruction => "proposition:non-quasi-affine-obstruction",
            Citation::QuasiAffineToricHomogeneous => "theorem:quasi-affine-toric-homogeneous",
            Citation::QuasiAffineToricFlexible => "theorem:quasi-affine-toric-flexible",
            Citation::QuasiAffineToricInfinite => "theorem:quasi-affine-toric-infinite",
            Citation::FlexibleInfiniteTransitivity => "theorem:flexible-infinite-transitivity",
            Citation::FirstTypeInfinite => "proposition:first-type-infinite",
            Citation::SecondTypeOne => "proposition:second-type-one",
            Citation::EpimorphicOpenProblem => "problem:epimorphic-subgroups",
            Citation::ToricCriterionOpen => "problem:toric-homogeneity-criterion",
            Citation::QuasiAffineConjecture => "conjecture:quasi-affine-infinite",
            Citation::DegenerateSplit => "structural:degenerate-split",
            Citation::SingularLocusInvariant => "structural:singular-locus-invariant",
            Citation::ProductOfHomogeneous => "structural:product-of-homogeneous",
            Citation::TransitiveAction => "structural:transitive-action",
        }
    }

    /// One-line summary of what the cited statement asserts.
    pub fn statement(self) -> &'static str {
        match self {
            Citation::CurveClassification => {
                "the smooth curves with transitive automorphism group are P¹, A¹ and A¹∖{0}, \
                 all homogeneous spaces, with θ equal to 3, 2 and 1"
            }
            Citation::TwoTransitiveActions => {
                "an effective algebraic group action with θ ≥ 2 is the projective action on Pⁿ \
                 or an affine action on Aⁿ; only PGL₂ on P¹ reaches θ = 3"
            }
            Citation::CompleteToricHomogeneity => {
                "a complete toric variety is homogeneous iff it is a product of projective spaces"
            }
            Citation::ProjectiveProductDegree => {
                "for a product of k projective spaces θ ≥ 2 iff k = 1; θ(Pⁿ) = 2 for n ≥ 2"
            }
            Citation::InvertibleFunctionObstruction => {
                "a homogeneous variety with a non-constant invertible regular function has θ = 1"
            }
            Citation::NonQuasiAffineObstruction => {
                "a homogeneous variety that is not quasi-affine and has K[X] ≠ K has θ = 1"
            }
            Citation::QuasiAffineToricHomogeneous => {
                "a smooth quasi-affine toric variety is homogeneous"
            }
            Citation::QuasiAffineToricFlexible => {
                "a non-degenerate quasi-affine toric variety is flexible"
            }
            Citation::QuasiAffineToricInfinite => {
                "a smooth non-degenerate quasi-affine toric variety of dimension ≥ 2 has θ = ∞"
            }
            Citation::FlexibleInfiniteTransitivity => {
                "for quasi-affine X of dimension ≥ 2, flexibility is equivalent to infinite \
                 transitivity of SAut(X) on the smooth locus"
            }
            Citation::FirstTypeInfinite => {
                "a quasi-affine homogeneous space of the first type with dimension ≥ 2 has θ = ∞"
            }
            Citation::SecondTypeOne => "a homogeneous space of the second type has θ = 1",
            Citation::EpimorphicOpenProblem => {
                "θ(G/H) for an epimorphic subgroup H is an open problem"
            }
            Citation::ToricCriterionOpen => {
                "no criterion for homogeneity of a general toric variety in terms of its fan is known"
            }
            Citation::QuasiAffineConjecture => {
                "conjecturally a homogeneous quasi-affine variety of dimension ≥ 2 without \
                 non-constant invertible functions has θ = ∞"
            }
            Citation::DegenerateSplit => {
                "a toric variety whose rays span a corank-k subspace is X′ × (K^×)^k with X′ \
                 non-degenerate, given by the same fan in the saturated ray lattice"
            }
            Citation::SingularLocusInvariant => {
                "automorphisms preserve the singular locus, so a singular variety with smooth \
                 points is not homogeneous"
            }
            Citation::ProductOfHomogeneous => "a product of homogeneous varieties is homogeneous",
            Citation::TransitiveAction => {
                "a homogeneous space is acted on transitively, so θ ≥ 1"
            }
        }
    }

    pub fn from_key(key: &str) -> Option<Citation> {
        Citation::ALL.iter().copied().find(|c| c.key() == key)
    }

    /// Whether a citation string belongs to the whitelist.
    pub fn is_whitelisted(key: &str) -> bool {
        Citation::from_key(key).is_some()
    }
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl Serialize for Citation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.key())
    }
}

/// One rule application and the bounds it leaves behind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub fact: String,
    pub citation: Citation,
    pub lower: ThetaValue,
    pub upper: ThetaValue,
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Certificate", 5)?;
        st.serialize_field("fact", &self.fact)?;
        st.serialize_field("citation", &self.citation)?;
        st.serialize_field("statement", self.citation.statement())?;
        st.serialize_field("lower", &self.lower)?;
        st.serialize_field("upper", &self.upper)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub lower: ThetaValue,
    pub upper: ThetaValue,
    pub homogeneous: Tri,
    pub flexible: Tri,
    /// Prediction of the quasi-affine conjecture; never feeds the bounds.
    pub conjectural: Option<ThetaValue>,
    pub certificates: Vec<Certificate>,
    /// θ of the smooth locus, reported for singular toric varieties.
    pub smooth_locus: Option<Box<Verdict>>,
}

impl Verdict {
    fn open() -> Verdict {
        Verdict {
            lower: ThetaValue::Zero,
            upper: ThetaValue::Infinite,
            homogeneous: Tri::Unknown,
            flexible: Tri::Unknown,
            conjectural: None,
            certificates: Vec::new(),
            smooth_locus: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// The value when exact.
    pub fn value(&self) -> Option<ThetaValue> {
        self.is_exact().then_some(self.lower)
    }

    /// Intersects the bounds with `[lower, upper]` and records why.
    fn narrow(&mut self, lower: ThetaValue, upper: ThetaValue, citation: Citation, fact: impl Into<String>) {
        self.lower = self.lower.max(lower);
        self.upper = self.upper.min(upper);
        debug_assert!(self.lower <= self.upper, "contradictory rules");
        self.certificates.push(Certificate {
            fact: fact.into(),
            citation,
            lower: self.lower,
            upper: self.upper,
        });
    }

    fn note(&mut self, citation: Citation, fact: impl Into<String>) {
        self.narrow(ThetaValue::Zero, ThetaValue::Infinite, citation, fact);
    }

    fn exact(&mut self, value: ThetaValue, citation: Citation, fact: impl Into<String>) {
        self.narrow(value, value, citation, fact);
    }

    fn not_homogeneous(&mut self, citation: Citation, fact: impl Into<String>) {
        self.homogeneous = Tri::No;
        self.exact(ThetaValue::Zero, citation, fact);
    }

    /// Every citation in the chain, including the smooth-locus sub-verdict.
    pub fn citations(&self) -> Vec<Citation> {
        let mut out: Vec<Citation> = self.certificates.iter().map(|c| c.citation).collect();
        if let Some(reg) = &self.smooth_locus {
            out.extend(reg.citations());
        }
        out
    }

    /// Whether each certificate's bounds lie inside the previous one's.
    pub fn is_monotone(&self) -> bool {
        let mut lower = ThetaValue::Zero;
        let mut upper = ThetaValue::Infinite;
        for c in &self.certificates {
            if c.lower < lower || c.upper > upper || c.lower > c.upper {
                return false;
            }
            lower = c.lower;
            upper = c.upper;
        }
        lower == self.lower && upper == self.upper
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "θ = {}", self.lower)?;
        } else {
            write!(f, "θ ∈ [{}, {}]", self.lower, self.upper)?;
        }
        write!(f, " (homogeneous: {}, flexible: {})", self.homogeneous, self.flexible)
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Verdict", 8)?;
        st.serialize_field("lower", &self.lower)?;
        st.serialize_field("upper", &self.upper)?;
        st.serialize_field("exact", &self.is_exact())?;
        st.serialize_field("homogeneous", &self.homogeneous)?;
        st.serialize_field("flexible", &self.flexible)?;
        st.serialize_field("conjectural", &self.conjectural)?;
        st.serialize_field("certificates", &self.certificates)?;
        st.serialize_field("smooth_locus", &self.smooth_locus)?;
        st.end()
    }
}

/// Decides θ(X(Σ)) as far as the known theorems allow.
pub fn theta_toric(fan: &Fan) -> Result<Verdict> {
    let n = fan.rank();
    if n == 0 {
        return Err(Error::DegenerateInput(
            "the transitivity degree of a point is not defined".into(),
        ));
    }
    fan.ensure_valid()?;
    let mut v = Verdict::open();
    let (k, reduced) = degenerate_split(fan);
    v.note(
        Citation::DegenerateSplit,
        format!("the rays span a subspace of corank {k}, so X ≅ X′ × (K^×)^{k} with dim X′ = {}", n - k),
    );

    if n == 1 {
        let (value, name, flexible) = match fan.rays().len() {
            0 => (ThetaValue::One, "K^×", Tri::Unknown),
            1 => (ThetaValue::Two, "A¹", Tri::Yes),
            _ => (ThetaValue::Three, "P¹", Tri::Unknown),
        };
        v.homogeneous = Tri::Yes;
        v.flexible = flexible;
        v.exact(value, Citation::CurveClassification, format!("X is the curve {name}"));
        return Ok(v);
    }

    if is_complete(fan)? {
        match detect_projective_product(fan) {
            Some(dims) => {
                v.homogeneous = Tri::Yes;
                let names: Vec<String> = dims.iter().map(|d| format!("P^{d}")).collect();
                v.narrow(
                    ThetaValue::One,
                    ThetaValue::Infinite,
                    Citation::CompleteToricHomogeneity,
                    format!("the fan is complete and X ≅ {}", names.join(" × ")),
                );
                if dims.len() >= 2 {
                    v.exact(
                        ThetaValue::One,
                        Citation::ProjectiveProductDegree,
                        format!("X has {} projective factors", dims.len()),
                    );
                } else {
                    v.exact(
                        ThetaValue::Two,
                        Citation::TwoTransitiveActions,
                        format!("X ≅ P^{} with dimension ≥ 2 cannot move a collinear triple to a general one", dims[0]),
                    );
                }
            }
            None => v.not_homogeneous(
                Citation::CompleteToricHomogeneity,
                "the fan is complete but X is not a product of projective spaces",
            ),
        }
        return Ok(v);
    }

    let smooth = is_smooth_fan(fan);
    let (quasi_affine, _) = quasi_affine_envelope(fan)?;
    if quasi_affine && k == 0 {
        v.flexible = Tri::Yes;
        v.note(
            Citation::QuasiAffineToricFlexible,
            "X is quasi-affine and non-degenerate",
        );
    }

    if !smooth {
        v.not_homogeneous(
            Citation::SingularLocusInvariant,
            "some cone of the fan is not smooth, so X has a proper non-empty singular locus",
        );
        let reg = smooth_locus_subfan(fan);
        v.smooth_locus = Some(Box::new(theta_toric(&reg)?));
        if quasi_affine && k == 0 {
            v.note(
                Citation::FlexibleInfiniteTransitivity,
                "SAut(X) acts infinitely transitively on the smooth locus",
            );
        }
        return Ok(v);
    }

    if quasi_affine {
        v.homogeneous = Tri::Yes;
        v.narrow(
            ThetaValue::One,
            ThetaValue::Infinite,
            Citation::QuasiAffineToricHomogeneous,
            "X is smooth and quasi-affine",
        );
        if k >= 1 {
            v.exact(
                ThetaValue::One,
                Citation::InvertibleFunctionObstruction,
                format!("X has a torus factor of rank {k}"),
            );
        } else {
            v.exact(
                ThetaValue::Infinite,
                Citation::QuasiAffineToricInfinite,
                format!("X is smooth, non-degenerate, quasi-affine of dimension {n}"),
            );
        }
        return Ok(v);
    }

    if k >= 1 {
        let factor = theta_toric(&reduced)?;
        if factor.homogeneous == Tri::Yes {
            v.homogeneous = Tri::Yes;
            v.narrow(
                ThetaValue::One,
                ThetaValue::Infinite,
                Citation::ProductOfHomogeneous,
                "X′ and the torus factor are homogeneous",
            );
            v.exact(
                ThetaValue::One,
                Citation::InvertibleFunctionObstruction,
                format!("X has a torus factor of rank {k}"),
            );
        } else {
            v.narrow(
                ThetaValue::Zero,
                ThetaValue::One,
                Citation::InvertibleFunctionObstruction,
                format!("X has a torus factor of rank {k}; homogeneity of X′ is not decided"),
            );
        }
        return Ok(v);
    }

    if !global_functions_cone(fan).is_zero() {
        v.narrow(
            ThetaValue::Zero,
            ThetaValue::One,
            Citation::NonQuasiAffineObstruction,
            "X is not quasi-affine and has non-constant regular functions",
        );
    } else {
        v.note(
            Citation::ToricCriterionOpen,
            "X is smooth, neither complete nor quasi-affine, with K[X] = K",
        );
    }
    Ok(v)
}

/// Declared type of a homogeneous space: whether the subgroup cut out by
/// all characters still acts transitively.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceType {
    First,
    Second,
    Unknown,
}

/// For one-dimensional spaces, which curve it is.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    AffineLine,
    PuncturedLine,
    ProjectiveLine,
}

/// What is known about a homogeneous space `G/H` of a linear algebraic group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceDeclaration {
    pub dim: usize,
    pub quasi_affine: bool,
    pub space_type: SpaceType,
    /// `K[X] ≠ K`.
    pub has_nonconstant_functions: Tri,
    /// `K[G/H] = K`.
    pub epimorphic: Tri,
    pub complete: Tri,
    pub curve: Option<CurveKind>,
}

impl SpaceDeclaration {
    pub fn new(dim: usize, quasi_affine: bool, space_type: SpaceType) -> SpaceDeclaration {
        SpaceDeclaration {
            dim,
            quasi_affine,
            space_type,
            has_nonconstant_functions: Tri::Unknown,
            epimorphic: Tri::Unknown,
            complete: Tri::Unknown,
            curve: None,
        }
    }

    /// `SL_n` acting on itself by left translations.
    pub fn special_linear(n: usize) -> SpaceDeclaration {
        SpaceDeclaration {
            has_nonconstant_functions: Tri::Yes,
            epimorphic: Tri::No,
            complete: Tri::No,
            ..SpaceDeclaration::new(n * n - 1, true, SpaceType::First)
        }
    }

    /// `GL_n` acting on itself: `det` is a non-constant invertible function.
    pub fn general_linear(n: usize) -> SpaceDeclaration {
        SpaceDeclaration {
            has_nonconstant_functions: Tri::Yes,
            epimorphic: Tri::No,
            complete: Tri::No,
            ..SpaceDeclaration::new(n * n, true, SpaceType::Second)
        }
    }

    pub fn check(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InconsistentDeclaration(msg.into()));
        if self.dim == 0 {
            return bad("dimension must be positive");
        }
        if self.epimorphic == Tri::Yes && self.has_nonconstant_functions == Tri::Yes {
            return bad("an epimorphic stabilizer leaves only constant functions");
        }
        if self.epimorphic == Tri::Yes && self.quasi_affine {
            return bad("a quasi-affine space of positive dimension has non-constant functions");
        }
        if self.quasi_affine && self.has_nonconstant_functions == Tri::No {
            return bad("a quasi-affine space of positive dimension has non-constant functions");
        }
        if self.complete == Tri::Yes && self.quasi_affine {
            return bad("a complete space of positive dimension is not quasi-affine");
        }
        if self.complete == Tri::Yes && self.has_nonconstant_functions == Tri::Yes {
            return bad("a complete variety has only constant functions");
        }
        if self.space_type == SpaceType::Second
            && (self.has_nonconstant_functions == Tri::No || self.epimorphic == Tri::Yes)
        {
            return bad("a space of the second type has a non-constant invertible function");
        }
        if let Some(curve) = self.curve {
            if self.dim != 1 {
                return bad("a curve kind was given for a space of dimension other than 1");
            }
            let consistent = match curve {
                CurveKind::AffineLine => self.quasi_affine && self.space_type != SpaceType::Second,
                CurveKind::PuncturedLine => self.quasi_affine && self.space_type != SpaceType::First,
                CurveKind::ProjectiveLine => !self.quasi_affine && self.space_type != SpaceType::Second,
            };
            if !consistent {
                return bad("the declared curve contradicts the other flags");
            }
        }
        Ok(())
    }
}

/// Decides θ(G/H) from a declaration.
pub fn theta_homogeneous_space(d: &SpaceDeclaration) -> Result<Verdict> {
    d.check()?;
    let mut v = Verdict::open();
    v.homogeneous = Tri::Yes;
    v.narrow(
        ThetaValue::One,
        ThetaValue::Infinite,
        Citation::TransitiveAction,
        format!("X is a homogeneous space of dimension {}", d.dim),
    );

    if d.dim == 1 {
        let curve = d.curve.or(match (d.quasi_affine, d.space_type) {
            (true, SpaceType::First) => Some(CurveKind::AffineLine),
            (true, SpaceType::Second) => Some(CurveKind::PuncturedLine),
            (false, _) if d.complete == Tri::Yes => Some(CurveKind::ProjectiveLine),
            _ => None,
        });
        if let Some(curve) = curve {
            let (value, name) = match curve {
                CurveKind::AffineLine => (ThetaValue::Two, "A¹"),
                CurveKind::PuncturedLine => (ThetaValue::One, "A¹∖{0}"),
                CurveKind::ProjectiveLine => (ThetaValue::Three, "P¹"),
            };
            v.exact(value, Citation::CurveClassification, format!("X is the curve {name}"));
            return Ok(v);
        }
    }

    match d.space_type {
        SpaceType::Second => {
            v.exact(
                ThetaValue::One,
                Citation::SecondTypeOne,
                "X is of the second type",
            );
            return Ok(v);
        }
        SpaceType::First if d.quasi_affine && d.dim >= 2 => {
            v.flexible = Tri::Yes;
            v.exact(
                ThetaValue::Infinite,
                Citation::FirstTypeInfinite,
                format!("X is of the first type, quasi-affine, of dimension {}", d.dim),
            );
            return Ok(v);
        }
        _ => {}
    }

    if !d.quasi_affine && d.has_nonconstant_functions == Tri::Yes {
        v.exact(
            ThetaValue::One,
            Citation::NonQuasiAffineObstruction,
            "X is not quasi-affine and K[X] ≠ K",
        );
        return Ok(v);
    }

    if d.epimorphic == Tri::Yes && d.complete != Tri::Yes {
        v.note(
            Citation::EpimorphicOpenProblem,
            "the stabilizer is epimorphic and X is not declared complete",
        );
        return Ok(v);
    }

    if d.quasi_affine && d.dim >= 2 && d.space_type == SpaceType::Unknown {
        v.conjectural = Some(ThetaValue::Infinite);
        v.note(
            Citation::QuasiAffineConjecture,
            "X is quasi-affine of dimension at least 2 and its type is undecided",
        );
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;
    use ThetaValue::*;

    fn exact(f: &Fan) -> ThetaValue {
        let v = theta_toric(f).unwrap();
        assert!(v.is_monotone());
        v.value().unwrap_or_else(|| panic!("not exact: {v}"))
    }

    #[test]
    fn theta_order() {
        assert!(Zero < One && One < Two && Two < Three && Three < Infinite);
        for t in [Zero, One, Two, Three, Infinite] {
            assert_eq!(ThetaValue::parse(t.as_str()), Some(t));
        }
    }

    #[test]
    fn toric_table() {
        assert_eq!(exact(&Fan::affine_space(1)), Two);
        assert_eq!(exact(&Fan::affine_space(2)), Infinite);
        assert_eq!(exact(&Fan::affine_space(3)), Infinite);
        assert_eq!(exact(&Fan::projective_space(1)), Three);
        assert_eq!(exact(&Fan::projective_space(2)), Two);
        assert_eq!(exact(&Fan::projective_space(3)), Two);
        assert_eq!(exact(&Fan::torus(1)), One);
        assert_eq!(exact(&Fan::torus(2)), One);
        assert_eq!(exact(&Fan::punctured_affine_space(2)), Infinite);
        assert_eq!(exact(&Fan::punctured_affine_space(3)), Infinite);
        let p1 = Fan::projective_space(1);
        assert_eq!(exact(&p1.product(&p1)), One);
        assert_eq!(exact(&p1.product(&Fan::projective_space(2))), One);
        assert_eq!(exact(&Fan::hirzebruch(1)), Zero);
        let line_times_torus = Fan::from_i64(2, &[&[1, 0]], &[&[0]]).unwrap();
        assert_eq!(exact(&line_times_torus), One);
    }

    #[test]
    fn singular_surface() {
        let x = Fan::from_i64(2, &[&[1, 0], &[1, 2]], &[&[0, 1]]).unwrap();
        let v = theta_toric(&x).unwrap();
        assert_eq!(v.value(), Some(Zero));
        assert_eq!(v.homogeneous, Tri::No);
        assert_eq!(v.flexible, Tri::Yes);
        let reg = v.smooth_locus.as_ref().unwrap();
        assert_eq!(reg.value(), Some(Infinite));
        assert_eq!(reg.homogeneous, Tri::Yes);
        assert!(v.is_monotone() && reg.is_monotone());
    }

    #[test]
    fn blow_up_is_bounded() {
        let v = theta_toric(&Fan::blown_up_plane()).unwrap();
        assert_eq!((v.lower, v.upper), (Zero, One));
        assert_eq!(v.homogeneous, Tri::Unknown);
        assert_eq!(
            v.certificates.last().unwrap().citation,
            Citation::NonQuasiAffineObstruction
        );
    }

    #[test]
    fn projective_line_times_torus() {
        let f = Fan::from_i64(2, &[&[1, 0], &[-1, 0]], &[&[0], &[1]]).unwrap();
        let v = theta_toric(&f).unwrap();
        assert_eq!(v.value(), Some(One));
        assert_eq!(v.homogeneous, Tri::Yes);
    }

    #[test]
    fn blow_up_times_torus_stays_open() {
        let f = Fan::blown_up_plane().product(&Fan::torus(1));
        let v = theta_toric(&f).unwrap();
        assert_eq!((v.lower, v.upper), (Zero, One));
    }

    #[test]
    fn point_and_invalid_fans_error() {
        assert!(matches!(theta_toric(&Fan::torus(0)), Err(Error::DegenerateInput(_))));
        let bad = Fan::from_i64(2, &[&[1, 0], &[-1, 0]], &[&[0, 1]]).unwrap();
        assert!(matches!(theta_toric(&bad), Err(Error::InvalidFan(_))));
    }

    #[test]
    fn citations_are_whitelisted() {
        for c in Citation::ALL {
            assert_eq!(Citation::from_key(c.key()), Some(c));
            assert!(!c.statement().is_empty());
        }
        let keys: std::collections::BTreeSet<_> = Citation::ALL.iter().map(|c| c.key()).collect();
        assert_eq!(keys.len(), Citation::ALL.len());
        assert!(!Citation::is_whitelisted("made up"));
    }

    #[test]
    fn homogeneous_spaces() {
        for n in 2..5 {
            let v = theta_homogeneous_space(&SpaceDeclaration::special_linear(n)).unwrap();
            assert_eq!(v.value(), Some(Infinite));
            let v = theta_homogeneous_space(&SpaceDeclaration::general_linear(n)).unwrap();
            assert_eq!(v.value(), Some(One));
        }
        let not_qa = SpaceDeclaration {
            has_nonconstant_functions: Tri::Yes,
            ..SpaceDeclaration::new(3, false, SpaceType::Unknown)
        };
        let v = theta_homogeneous_space(&not_qa).unwrap();
        assert_eq!(v.value(), Some(One));
        assert_eq!(v.certificates.last().unwrap().citation, Citation::NonQuasiAffineObstruction);

        let epi = SpaceDeclaration {
            epimorphic: Tri::Yes,
            has_nonconstant_functions: Tri::No,
            complete: Tri::No,
            ..SpaceDeclaration::new(4, false, SpaceType::First)
        };
        let v = theta_homogeneous_space(&epi).unwrap();
        assert!(!v.is_exact());
        assert_eq!(v.certificates.last().unwrap().citation, Citation::EpimorphicOpenProblem);

        let undecided = SpaceDeclaration::new(3, true, SpaceType::Unknown);
        let v = theta_homogeneous_space(&undecided).unwrap();
        assert_eq!((v.lower, v.upper), (One, Infinite));
        assert_eq!(v.conjectural, Some(Infinite));
        assert!(v.citations().contains(&Citation::QuasiAffineConjecture));
        let sl2 = theta_homogeneous_space(&SpaceDeclaration::special_linear(2)).unwrap();
        assert_eq!(sl2.conjectural, None);
    }

    #[test]
    fn homogeneous_curves() {
        let line = SpaceDeclaration::new(1, true, SpaceType::First);
        assert_eq!(theta_homogeneous_space(&line).unwrap().value(), Some(Two));
        let punctured = SpaceDeclaration::new(1, true, SpaceType::Second);
        assert_eq!(theta_homogeneous_space(&punctured).unwrap().value(), Some(One));
        let p1 = SpaceDeclaration {
            complete: Tri::Yes,
            ..SpaceDeclaration::new(1, false, SpaceType::First)
        };
        assert_eq!(theta_homogeneous_space(&p1).unwrap().value(), Some(Three));
    }

    #[test]
    fn inconsistent_declarations() {
        let d = SpaceDeclaration {
            epimorphic: Tri::Yes,
            has_nonconstant_functions: Tri::Yes,
            ..SpaceDeclaration::new(2, false, SpaceType::Unknown)
        };
        assert!(matches!(theta_homogeneous_space(&d), Err(Error::InconsistentDeclaration(_))));
        let d = SpaceDeclaration {
            curve: Some(CurveKind::ProjectiveLine),
            ..SpaceDeclaration::new(1, true, SpaceType::First)
        };
        assert!(d.check().is_err());
        assert!(SpaceDeclaration::new(0, true, SpaceType::First).check().is_err());
    }
}
