//! Biorthogonal systems: pairing audits, the two-dimensional worked example,
//! and Gram-based constructions of candidate biorthogonal functionals.
//!
//! A system `{x_i}` with functionals `{F_i}` is biorthogonal when
//! `F_i(x_j) = δ_ij`; the quantity of interest throughout is the norm product
//! `‖x_i‖ · ‖F_i‖_*`, which the audits measure and never assert equal to 1.
//! Two constructions manufacture functionals from an inner-product structure
//! `G` (see [`crate::hilbert`]): the *literal* one scales `(·, x_i)_H`
//! directly, the *complement* one first strips the `G`-projection of `x_i`
//! onto the span of the other vectors so biorthogonality holds by
//! construction. The two coincide exactly when the system is `G`-orthogonal,
//! and the audit reports that comparison rather than assuming it.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hilbert::{HilbertError, HilbertStructure};
use crate::norms::{Functional, NormError, NormSpec};

/// Default biorthogonality-defect tolerance.
pub const DEFECT_TOL: f64 = 1e-8;
/// Relative singular-value cutoff for numerical rank decisions.
pub const RANK_REL_TOL: f64 = 1e-9;
/// Condition number beyond which projections fall back to a pseudo-inverse.
pub const CONDITION_FALLBACK: f64 = 1e12;

#[derive(Debug, Error)]
pub enum BiorthoError {
    #[error(transparent)]
    Norm(#[from] NormError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error("system must contain at least one vector")]
    EmptySystem,
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{vectors} vectors paired with {functionals} functionals")]
    CountMismatch { vectors: usize, functionals: usize },
    #[error("operation requires a two-dimensional space, got dim {0}")]
    NotTwoDimensional(usize),
    #[error("invalid form: {0}")]
    BadForm(String),
    #[error("degenerate denominator at index {index}: {value:.3e}")]
    DegenerateDenominator { index: usize, value: f64 },
    #[error("could not draw a well-conditioned random system (seed {seed})")]
    RandomDegenerate { seed: u64 },
    #[error("invalid system encoding: {0}")]
    Encoding(String),
}

/// Which functional construction to run against a system.
///
/// The serialized names (`literal`, `complement`, `min-norm`) are part of the
/// scenario-file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Construction {
    #[serde(rename = "literal")]
    Literal,
    #[serde(rename = "complement")]
    Complement,
    #[serde(rename = "min-norm")]
    MinNorm,
}

impl Construction {
    pub fn label(self) -> &'static str {
        match self {
            Construction::Literal => "literal",
            Construction::Complement => "complement",
            Construction::MinNorm => "min-norm",
        }
    }
}

/// A candidate system `{x_i}` in a normed space. No structure is assumed at
/// construction; fundamental/minimal status is computed by the checks below.
#[derive(Debug, Clone)]
pub struct SystemOfVectors {
    space: NormSpec,
    vectors: Vec<DVector<f64>>,
}

impl SystemOfVectors {
    pub fn new(space: NormSpec, vectors: Vec<DVector<f64>>) -> Result<Self, BiorthoError> {
        if vectors.is_empty() {
            return Err(BiorthoError::EmptySystem);
        }
        for v in &vectors {
            if v.len() != space.dim() {
                return Err(BiorthoError::DimensionMismatch {
                    expected: space.dim(),
                    got: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(BiorthoError::Norm(NormError::NonFinite));
            }
        }
        Ok(SystemOfVectors { space, vectors })
    }

    pub fn standard_basis(space: NormSpec) -> Self {
        let dim = space.dim();
        let vectors = (0..dim)
            .map(|i| DVector::from_fn(dim, |k, _| if k == i { 1.0 } else { 0.0 }))
            .collect();
        SystemOfVectors { space, vectors }
    }

    pub fn space(&self) -> &NormSpec {
        &self.space
    }

    pub fn vectors(&self) -> &[DVector<f64>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Column matrix of the vectors (dim × n).
    pub fn column_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_columns(&self.vectors)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let x: Vec<Vec<f64>> = self.vectors.iter().map(|v| v.iter().copied().collect()).collect();
        serde_json::json!({ "space": self.space.to_json(), "X": x })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, BiorthoError> {
        let (space, x, f) = parse_system_fields(v)?;
        if f.is_some() {
            return Err(BiorthoError::Encoding("unexpected field \"F\" on a plain system".into()));
        }
        SystemOfVectors::new(space, x)
    }
}

/// Draw a random unit-norm system of `dim` vectors, redrawing until the
/// column matrix is well-conditioned (σ_min ≥ 5e−3 · σ_max). Deterministic
/// given the seed.
pub fn random_system(space: &NormSpec, seed: u64) -> Result<SystemOfVectors, BiorthoError> {
    let n = space.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'draw: for _ in 0..200 {
        let mut cols = Vec::with_capacity(n);
        for _ in 0..n {
            let v = DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
            let norm = space.norm(&v)?;
            if norm < 1e-9 {
                continue 'draw;
            }
            cols.push(v / norm);
        }
        let sv = DMatrix::from_columns(&cols).svd(false, false).singular_values;
        if sv.min() >= 5e-3 * sv.max() {
            return SystemOfVectors::new(space.clone(), cols);
        }
    }
    Err(BiorthoError::RandomDegenerate { seed })
}

/// Numerical-rank verdict for the fundamental/total checks.
#[derive(Debug, Clone, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub required: usize,
    pub passes: bool,
    pub singular_values: Vec<f64>,
}

fn rank_report(matrix: DMatrix<f64>, required: usize, tol: f64) -> RankReport {
    let sv = matrix.svd(false, false).singular_values;
    let smax = sv.max();
    let rank = if smax == 0.0 { 0 } else { sv.iter().filter(|&&s| s > smax * tol).count() };
    RankReport { rank, required, passes: rank >= required, singular_values: sv.iter().copied().collect() }
}

/// Fundamental iff span{x_i} is the whole space: the column matrix has full
/// rank at the given relative tolerance.
pub fn check_fundamental(s: &SystemOfVectors, tol: f64) -> RankReport {
    rank_report(s.column_matrix(), s.space.dim(), tol)
}

/// Per-index minimality: the Euclidean distance from `x_i` to the span of
/// the remaining vectors must exceed `tol`.
#[derive(Debug, Clone, Serialize)]
pub struct MinimalityRow {
    pub index: usize,
    pub distance: f64,
    pub passes: bool,
}

pub fn check_minimal(s: &SystemOfVectors, tol: f64) -> Vec<MinimalityRow> {
    let n = s.len();
    (0..n)
        .map(|i| {
            let others: Vec<DVector<f64>> = (0..n)
                .filter(|&j| j != i)
                .map(|j| s.vectors[j].clone())
                .collect();
            let distance = if others.is_empty() {
                s.vectors[i].norm()
            } else {
                let b = DMatrix::from_columns(&others);
                let beta = b
                    .clone()
                    .svd(true, true)
                    .solve(&s.vectors[i], 1e-14)
                    .expect("least squares on computed SVD");
                (&s.vectors[i] - b * beta).norm()
            };
            MinimalityRow { index: i, distance, passes: distance > tol }
        })
        .collect()
}

/// Total iff no nonzero vector is annihilated by every functional: the
/// functional coordinate matrix has full rank.
pub fn check_total(dim: usize, functionals: &[Functional], tol: f64) -> RankReport {
    if functionals.is_empty() {
        return RankReport { rank: 0, required: dim, passes: dim == 0, singular_values: vec![] };
    }
    let rows = DMatrix::from_fn(functionals.len(), dim, |i, j| functionals[i].coords()[j]);
    rank_report(rows, dim, tol)
}

/// A system paired with functionals, its pairing matrix `P[i][j] = F_i(x_j)`,
/// and the norm products. Built eagerly: constructing the value computes the
/// pairing, each `‖F_i‖_*` (cached on the functionals), and the defect.
#[derive(Debug, Clone)]
pub struct BiorthogonalSystem {
    system: SystemOfVectors,
    functionals: Vec<Functional>,
    pairing: DMatrix<f64>,
    products: Vec<f64>,
    defect: f64,
}

impl BiorthogonalSystem {
    pub fn new(
        system: SystemOfVectors,
        mut functionals: Vec<Functional>,
    ) -> Result<Self, BiorthoError> {
        let n = system.len();
        if functionals.len() != n {
            return Err(BiorthoError::CountMismatch {
                vectors: n,
                functionals: functionals.len(),
            });
        }
        let dim = system.space.dim();
        for f in &functionals {
            if f.dim() != dim {
                return Err(BiorthoError::DimensionMismatch { expected: dim, got: f.dim() });
            }
        }
        let pairing =
            DMatrix::from_fn(n, n, |i, j| functionals[i].apply(&system.vectors[j]));
        let mut defect = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((pairing[(i, j)] - target).abs());
            }
        }
        let mut products = Vec::with_capacity(n);
        for (i, f) in functionals.iter_mut().enumerate() {
            let dual = f.dual_norm_in(&system.space)?;
            products.push(system.space.norm(&system.vectors[i])? * dual);
        }
        Ok(BiorthogonalSystem { system, functionals, pairing, products, defect })
    }

    pub fn system(&self) -> &SystemOfVectors {
        &self.system
    }

    pub fn functionals(&self) -> &[Functional] {
        &self.functionals
    }

    pub fn pairing(&self) -> &DMatrix<f64> {
        &self.pairing
    }

    pub fn products(&self) -> &[f64] {
        &self.products
    }

    /// `max_{i,j} |P[i][j] − δ_ij|`.
    pub fn defect(&self) -> f64 {
        self.defect
    }

    pub fn is_biorthogonal(&self, tol: f64) -> bool {
        self.defect <= tol
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.system.to_json();
        let f: Vec<Vec<f64>> =
            self.functionals.iter().map(|f| f.coords().iter().copied().collect()).collect();
        v["F"] = serde_json::json!(f);
        v
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, BiorthoError> {
        let (space, x, f) = parse_system_fields(v)?;
        let f = f.ok_or_else(|| BiorthoError::Encoding("missing field \"F\"".into()))?;
        let system = SystemOfVectors::new(space, x)?;
        BiorthogonalSystem::new(system, f.into_iter().map(Functional::new).collect())
    }
}

type SystemFields = (NormSpec, Vec<DVector<f64>>, Option<Vec<DVector<f64>>>);

fn parse_system_fields(v: &serde_json::Value) -> Result<SystemFields, BiorthoError> {
    let obj = v.as_object().ok_or_else(|| BiorthoError::Encoding("expected object".into()))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "space" | "X" | "F") {
            return Err(BiorthoError::Encoding(format!("unknown field {key:?}")));
        }
    }
    let space = NormSpec::from_json(
        obj.get("space").ok_or_else(|| BiorthoError::Encoding("missing \"space\"".into()))?,
    )?;
    let parse_rows = |key: &str| -> Result<Vec<DVector<f64>>, BiorthoError> {
        let rows: Vec<Vec<f64>> = serde_json::from_value(
            obj.get(key).cloned()
                .ok_or_else(|| BiorthoError::Encoding(format!("missing {key:?}")))?,
        )
        .map_err(|e| BiorthoError::Encoding(e.to_string()))?;
        Ok(rows.into_iter().map(DVector::from_vec).collect())
    };
    let x = parse_rows("X")?;
    let f = if obj.contains_key("F") { Some(parse_rows("F")?) } else { None };
    Ok((space, x, f))
}

/// Per-index line of a product audit.
#[derive(Debug, Clone, Serialize)]
pub struct AuditRow {
    pub index: usize,
    pub norm_x: f64,
    pub dual_norm_f: f64,
    pub product: f64,
    pub defect_row_max: f64,
}

/// Full measurement of a paired system: defect, products, and the four
/// structural checks (fundamental / minimal / total / biorthogonal).
///
/// Products are reported, never asserted: whether they equal 1 is exactly
/// the question under study.
#[derive(Debug, Clone, Serialize)]
pub struct SystemAudit {
    pub rows: Vec<AuditRow>,
    pub defect: f64,
    pub max_product: f64,
    pub min_product: f64,
    pub fundamental: bool,
    pub minimal: bool,
    pub total: bool,
    pub biorthogonal: bool,
    pub defect_tol: f64,
}

pub fn audit_products(b: &BiorthogonalSystem, defect_tol: f64) -> SystemAudit {
    let n = b.system.len();
    let rows: Vec<AuditRow> = (0..n)
        .map(|i| {
            let mut row_defect = 0.0f64;
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                row_defect = row_defect.max((b.pairing[(i, j)] - target).abs());
            }
            AuditRow {
                index: i,
                norm_x: b
                    .system
                    .space
                    .norm(&b.system.vectors[i])
                    .expect("dimensions validated at construction"),
                dual_norm_f: b.functionals[i].cached_dual_norm().unwrap_or(0.0),
                product: b.products[i],
                defect_row_max: row_defect,
            }
        })
        .collect();
    let max_product = b.products.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min_product = b.products.iter().copied().fold(f64::INFINITY, f64::min);
    SystemAudit {
        rows,
        defect: b.defect,
        max_product,
        min_product,
        fundamental: check_fundamental(&b.system, RANK_REL_TOL).passes,
        minimal: check_minimal(&b.system, RANK_REL_TOL).iter().all(|r| r.passes),
        total: check_total(b.system.space.dim(), &b.functionals, RANK_REL_TOL).passes,
        biorthogonal: b.defect <= defect_tol,
        defect_tol,
    }
}

// ---------------------------------------------------------------------------
// Two-dimensional scaled-functional machinery.
// ---------------------------------------------------------------------------

/// A rank-≤2 inner product `⟨y|z⟩ = t₁(y·x̄₁)(z·x̄₁) + t₂(y·x̄₂)(z·x̄₂)` on R²
/// together with scale factors `α₁, α₂` for the derived functionals
/// `S_i(y) = ⟨y|x_i⟩ / (α_i ⟨x_i|x_i⟩)`.
#[derive(Debug, Clone)]
pub struct R2Form {
    t1: f64,
    t2: f64,
    xbar1: Functional,
    xbar2: Functional,
    alpha1: f64,
    alpha2: f64,
}

impl R2Form {
    pub fn new(
        t1: f64,
        xbar1: Functional,
        xbar2: Functional,
        alpha1: f64,
        alpha2: f64,
    ) -> Result<Self, BiorthoError> {
        if !(t1 > 0.0 && t1 < 1.0) {
            return Err(BiorthoError::BadForm(format!("t1 = {t1} must lie in (0, 1)")));
        }
        if !(alpha1 > 0.0) || !(alpha2 > 0.0) {
            return Err(BiorthoError::BadForm(format!(
                "alphas must be positive, got ({alpha1}, {alpha2})"
            )));
        }
        for f in [&xbar1, &xbar2] {
            if f.dim() != 2 {
                return Err(BiorthoError::NotTwoDimensional(f.dim()));
            }
        }
        Ok(R2Form { t1, t2: 1.0 - t1, xbar1, xbar2, alpha1, alpha2 })
    }

    pub fn alphas(&self) -> (f64, f64) {
        (self.alpha1, self.alpha2)
    }

    /// Gram matrix `t₁ x̄₁x̄₁ᵀ + t₂ x̄₂x̄₂ᵀ` of the form.
    pub fn gram(&self) -> DMatrix<f64> {
        let b1 = self.xbar1.coords();
        let b2 = self.xbar2.coords();
        DMatrix::from_fn(2, 2, |i, j| self.t1 * b1[i] * b1[j] + self.t2 * b2[i] * b2[j])
    }

    pub fn inner(&self, y: &DVector<f64>, z: &DVector<f64>) -> Result<f64, BiorthoError> {
        for v in [y, z] {
            if v.len() != 2 {
                return Err(BiorthoError::NotTwoDimensional(v.len()));
            }
        }
        Ok(self.t1 * self.xbar1.apply(y) * self.xbar1.apply(z)
            + self.t2 * self.xbar2.apply(y) * self.xbar2.apply(z))
    }

    /// The map `y ↦ ⟨y|x⟩ / ⟨x|x⟩` as a functional (the α-free part of S).
    pub fn scaling_map(&self, x: &DVector<f64>, index: usize) -> Result<Functional, BiorthoError> {
        let denom = self.inner(x, x)?;
        if denom <= 1e-14 {
            return Err(BiorthoError::DegenerateDenominator { index, value: denom });
        }
        Ok(Functional::new(self.gram() * x / denom))
    }

    /// The scaled functionals `S_i = scaling_map(x_i) / α_i`, with Euclidean
    /// dual norms cached (the machinery lives in the Euclidean plane).
    pub fn s_functionals(
        &self,
        x1: &DVector<f64>,
        x2: &DVector<f64>,
    ) -> Result<(Functional, Functional), BiorthoError> {
        let euclid = NormSpec::euclidean(2);
        let mut s = Vec::with_capacity(2);
        for (i, (x, alpha)) in [(x1, self.alpha1), (x2, self.alpha2)].into_iter().enumerate() {
            let mut f = self.scaling_map(x, i)?.scale(1.0 / alpha);
            f.dual_norm_in(&euclid)?;
            s.push(f);
        }
        let s2 = s.pop().expect("two functionals");
        let s1 = s.pop().expect("two functionals");
        Ok((s1, s2))
    }
}

/// Scale factors that normalize the S-functionals: `α_i` is the dual norm of
/// the map `y ↦ ⟨y|x_i⟩/⟨x_i|x_i⟩`, so dividing by it gives `‖S_i‖_* = 1`.
pub fn choose_alpha(
    space: &NormSpec,
    t1: f64,
    xbar1: &Functional,
    xbar2: &Functional,
    x1: &DVector<f64>,
    x2: &DVector<f64>,
) -> Result<(f64, f64), BiorthoError> {
    let form = R2Form::new(t1, xbar1.clone(), xbar2.clone(), 1.0, 1.0)?;
    let mut alphas = [0.0; 2];
    for (i, x) in [x1, x2].into_iter().enumerate() {
        let map = form.scaling_map(x, i)?;
        let a = space.dual_norm(map.coords())?.value;
        if a <= 1e-14 {
            return Err(BiorthoError::DegenerateDenominator { index: i, value: a });
        }
        alphas[i] = a;
    }
    Ok((alphas[0], alphas[1]))
}

// ---------------------------------------------------------------------------
// Built-in worked example (unit vectors e1 and e1+e2 in the Euclidean plane).
// ---------------------------------------------------------------------------

pub mod worked_example {
    //! The fixed 2-D example: `x₁ = (1,0)`, `x₂ = (1,1)` with biorthogonal
    //! functionals `x̄₁ = (1,−1)`, `x̄₂ = (0,1)` in the Euclidean plane, plus
    //! the audit of its scaled S-functionals under three α-readings.

    use super::*;

    pub fn vectors() -> (DVector<f64>, DVector<f64>) {
        (DVector::from_column_slice(&[1.0, 0.0]), DVector::from_column_slice(&[1.0, 1.0]))
    }

    pub fn functionals() -> (Functional, Functional) {
        (Functional::from_slice(&[1.0, -1.0]), Functional::from_slice(&[0.0, 1.0]))
    }

    /// The example as a paired system in the Euclidean plane.
    pub fn system() -> BiorthogonalSystem {
        let (x1, x2) = vectors();
        let (f1, f2) = functionals();
        let s = SystemOfVectors::new(NormSpec::euclidean(2), vec![x1, x2])
            .expect("fixed data is valid");
        BiorthogonalSystem::new(s, vec![f1, f2]).expect("fixed data is valid")
    }

    /// One way of fixing the scale factors α in the S-functionals.
    #[derive(Debug, Clone, Serialize)]
    pub struct SReading {
        /// `closed_form` (divide by ‖x̄₁‖ and ‖x₂‖), `stated_alpha`
        /// (α₁ = 1, α₂ = ‖x₂‖), or `unit_norm` (α_i = ‖S̃_i‖ so ‖S_i‖ = 1).
        pub label: String,
        pub alpha: [f64; 2],
        pub s1: Vec<f64>,
        pub s2: Vec<f64>,
        /// `s_values[i][j] = S_i(x_j)`.
        pub s_values: [[f64; 2]; 2],
        pub dual_norms: [f64; 2],
        /// `‖S_i‖_* · ‖x_i‖`.
        pub products: [f64; 2],
        pub unit_diagonal: bool,
        pub unit_norms: bool,
        pub unit_products: bool,
    }

    #[derive(Debug, Clone, Serialize)]
    pub struct WorkedExampleReport {
        pub pairing: [[f64; 2]; 2],
        pub defect: f64,
        /// `‖x_i‖ · ‖x̄_i‖` for the base biorthogonal pair (both √2).
        pub base_products: [f64; 2],
        pub readings: Vec<SReading>,
        /// `‖S̃_i‖·‖x_i‖ / S̃_i(x_i)`: the product forced by S_i(x_i) = 1,
        /// independent of the α choice.
        pub products_at_unit_diagonal: [f64; 2],
        /// Numerically false claims, one line each.
        pub flags: Vec<String>,
        pub audit: SystemAudit,
    }

    fn reading(
        form_t1: f64,
        label: &str,
        alpha: (f64, f64),
        tol: f64,
    ) -> Result<SReading, BiorthoError> {
        let (x1, x2) = vectors();
        let (b1, b2) = functionals();
        let form = R2Form::new(form_t1, b1, b2, alpha.0, alpha.1)?;
        let (s1, s2) = form.s_functionals(&x1, &x2)?;
        let s_values = [
            [s1.apply(&x1), s1.apply(&x2)],
            [s2.apply(&x1), s2.apply(&x2)],
        ];
        let dual_norms = [
            s1.cached_dual_norm().expect("cached by s_functionals"),
            s2.cached_dual_norm().expect("cached by s_functionals"),
        ];
        let euclid = NormSpec::euclidean(2);
        let products = [
            dual_norms[0] * euclid.norm(&x1)?,
            dual_norms[1] * euclid.norm(&x2)?,
        ];
        Ok(SReading {
            label: label.to_string(),
            alpha: [alpha.0, alpha.1],
            s1: s1.coords().iter().copied().collect(),
            s2: s2.coords().iter().copied().collect(),
            s_values,
            dual_norms,
            products,
            unit_diagonal: (0..2).all(|i| (s_values[i][i] - 1.0).abs() <= tol),
            unit_norms: dual_norms.iter().all(|&d| (d - 1.0).abs() <= tol),
            unit_products: products.iter().all(|&p| (p - 1.0).abs() <= tol),
        })
    }

    /// Reproduce the example's numbers and audit every reading of its scale
    /// factors, flagging each stated property that fails numerically.
    pub fn audit(tol: f64) -> WorkedExampleReport {
        let bi = system();
        let (x1, x2) = vectors();
        let (b1, b2) = functionals();
        let euclid = NormSpec::euclidean(2);
        let norm_x2 = euclid.norm(&x2).expect("dim 2");
        let norm_b1 = euclid.norm(b1.coords()).expect("dim 2");

        let t1 = 0.5;
        // Three ways to read the scale factors: the closed-form functionals
        // divide by (‖x̄₁‖, ‖x₂‖); the stated choice is (1, ‖x₂‖); unit-norm
        // α comes from choose_alpha.
        let (ua1, ua2) = choose_alpha(&euclid, t1, &b1, &b2, &x1, &x2).expect("fixed data");
        let readings = vec![
            reading(t1, "closed_form", (norm_b1, norm_x2), tol).expect("fixed data"),
            reading(t1, "stated_alpha", (1.0, norm_x2), tol).expect("fixed data"),
            reading(t1, "unit_norm", (ua1, ua2), tol).expect("fixed data"),
        ];

        let form = R2Form::new(t1, b1, b2, 1.0, 1.0).expect("fixed data");
        let mut products_at_unit_diagonal = [0.0; 2];
        for (i, x) in [&x1, &x2].into_iter().enumerate() {
            let map = form.scaling_map(x, i).expect("fixed data");
            let dn = euclid.dual_norm(map.coords()).expect("dim 2").value;
            products_at_unit_diagonal[i] =
                dn * euclid.norm(x).expect("dim 2") / map.apply(x);
        }

        let mut flags = Vec::new();
        for r in &readings {
            if !r.unit_diagonal {
                flags.push(format!(
                    "{}: S_i(x_i) = ({:.12}, {:.12}), diagonal differs from 1",
                    r.label, r.s_values[0][0], r.s_values[1][1]
                ));
            }
            if !r.unit_norms {
                flags.push(format!(
                    "{}: dual norms ({:.12}, {:.12}) differ from 1",
                    r.label, r.dual_norms[0], r.dual_norms[1]
                ));
            }
            if !r.unit_products {
                flags.push(format!(
                    "{}: products ({:.12}, {:.12}) differ from 1",
                    r.label, r.products[0], r.products[1]
                ));
            }
        }
        if products_at_unit_diagonal.iter().any(|&p| p > 1.0 + tol) {
            flags.push(format!(
                "no alpha choice gives S_i(x_i) = 1 and ‖S_i‖·‖x_i‖ = 1 together \
                 (products at unit diagonal: {:.12}, {:.12})",
                products_at_unit_diagonal[0], products_at_unit_diagonal[1]
            ));
        }

        let pairing = [
            [bi.pairing()[(0, 0)], bi.pairing()[(0, 1)]],
            [bi.pairing()[(1, 0)], bi.pairing()[(1, 1)]],
        ];
        WorkedExampleReport {
            pairing,
            defect: bi.defect(),
            base_products: [bi.products()[0], bi.products()[1]],
            readings,
            products_at_unit_diagonal,
            flags,
            audit: audit_products(&bi, tol.max(DEFECT_TOL)),
        }
    }
}

// ---------------------------------------------------------------------------
// Gram-based functional constructions.
// ---------------------------------------------------------------------------

fn check_construction_inputs(
    hs: &HilbertStructure,
    s: &SystemOfVectors,
    i: usize,
) -> Result<(), BiorthoError> {
    if hs.space().dim() != s.space.dim() {
        return Err(BiorthoError::DimensionMismatch {
            expected: s.space.dim(),
            got: hs.space().dim(),
        });
    }
    if i >= s.len() {
        return Err(BiorthoError::DimensionMismatch { expected: s.len(), got: i });
    }
    Ok(())
}

/// The direct construction: `f_i(y) = (‖x_i‖_B² / ‖x_i‖_H²) · (y, x_i)_H`,
/// i.e. coordinates `(‖x_i‖² / ‖x_i‖_H²) · G x_i`.
///
/// Satisfies `f_i(x_i) = ‖x_i‖_B²` by construction; its values on the other
/// vectors are whatever `(x_j, x_i)_H` makes them — the audit measures that,
/// nothing here asserts biorthogonality.
pub fn literal_functional(
    hs: &HilbertStructure,
    s: &SystemOfVectors,
    i: usize,
    tol: f64,
) -> Result<Functional, BiorthoError> {
    check_construction_inputs(hs, s, i)?;
    let x = &s.vectors[i];
    let h2 = hs.inner(x, x)?;
    if h2 <= tol {
        return Err(BiorthoError::DegenerateDenominator { index: i, value: h2 });
    }
    let nb = s.space.norm(x)?;
    Ok(Functional::new(hs.gram() * x * (nb * nb / h2)))
}

/// Solve the SPD system `A y = b` through a symmetric eigendecomposition,
/// truncating the spectrum below `λ_max / CONDITION_FALLBACK` — the exact
/// solve when well-conditioned, a pseudo-inverse beyond that.
fn solve_spd_with_fallback(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    let eig = a.clone().symmetric_eigen();
    let lam_max = eig.eigenvalues.amax();
    let cut = lam_max / CONDITION_FALLBACK;
    let mut y = DVector::zeros(b.len());
    for k in 0..eig.eigenvalues.len() {
        let lam = eig.eigenvalues[k];
        if lam <= cut {
            continue;
        }
        let v = eig.eigenvectors.column(k).into_owned();
        y += &v * (v.dot(b) / lam);
    }
    y
}

/// `x_i` minus its `G`-projection onto span{x_j : j ≠ i}.
fn g_complement(
    hs: &HilbertStructure,
    s: &SystemOfVectors,
    i: usize,
) -> Result<DVector<f64>, BiorthoError> {
    let others: Vec<usize> = (0..s.len()).filter(|&j| j != i).collect();
    if others.is_empty() {
        return Ok(s.vectors[i].clone());
    }
    let k = others.len();
    let mut a = DMatrix::zeros(k, k);
    let mut b = DVector::zeros(k);
    for (r, &jr) in others.iter().enumerate() {
        b[r] = hs.inner(&s.vectors[jr], &s.vectors[i])?;
        for (c, &jc) in others.iter().enumerate().skip(r) {
            let v = hs.inner(&s.vectors[jr], &s.vectors[jc])?;
            a[(r, c)] = v;
            a[(c, r)] = v;
        }
    }
    let beta = solve_spd_with_fallback(&a, &b);
    let mut z = s.vectors[i].clone();
    for (r, &jr) in others.iter().enumerate() {
        z -= &s.vectors[jr] * beta[r];
    }
    Ok(z)
}

/// The complement construction: project `x_i` off span{x_j : j ≠ i} in
/// `G`-geometry first, then scale — `f_i(y) = (‖x_i‖_B² / (x_i, z_i)_H) ·
/// (y, z_i)_H` with `z_i` the projection residual.
///
/// `f_i(x_j) = ‖x_i‖_B² δ_ij` up to the linear-solve tolerance, because
/// `z_i ⊥_G x_j` for `j ≠ i` by construction.
pub fn complement_functional(
    hs: &HilbertStructure,
    s: &SystemOfVectors,
    i: usize,
    tol: f64,
) -> Result<Functional, BiorthoError> {
    check_construction_inputs(hs, s, i)?;
    let x = &s.vectors[i];
    let z = g_complement(hs, s, i)?;
    let xz = hs.inner(x, &z)?;
    if xz <= tol {
        return Err(BiorthoError::DegenerateDenominator { index: i, value: xz });
    }
    let nb = s.space.norm(x)?;
    Ok(Functional::new(hs.gram() * z * (nb * nb / xz)))
}

/// How far the literal and complement outputs are from each other, next to
/// the `G`-orthogonality of the system — the two coincide exactly when the
/// system is `G`-orthogonal, and this report lets the caller verify that
/// equivalence instead of trusting it.
#[derive(Debug, Clone, Serialize)]
pub struct CoincidenceReport {
    /// Max coordinatewise difference between normalized literal and
    /// complement functionals.
    pub max_coord_diff: f64,
    /// `max_{i ≠ j} |(x_i, x_j)_H|`.
    pub max_cross_inner: f64,
    pub coincide: bool,
    pub g_orthogonal: bool,
    pub tol: f64,
}

pub fn coincidence_report(
    hs: &HilbertStructure,
    s: &SystemOfVectors,
    tol: f64,
) -> Result<CoincidenceReport, BiorthoError> {
    let mut max_coord_diff = 0.0f64;
    let mut max_cross_inner = 0.0f64;
    for i in 0..s.len() {
        let nb = s.space.norm(&s.vectors[i])?;
        let scale = 1.0 / (nb * nb);
        let lit = literal_functional(hs, s, i, 1e-14)?.scale(scale);
        let comp = complement_functional(hs, s, i, 1e-14)?.scale(scale);
        max_coord_diff = max_coord_diff.max((lit.coords() - comp.coords()).amax());
        for j in 0..s.len() {
            if j != i {
                max_cross_inner =
                    max_cross_inner.max(hs.inner(&s.vectors[i], &s.vectors[j])?.abs());
            }
        }
    }
    Ok(CoincidenceReport {
        max_coord_diff,
        max_cross_inner,
        coincide: max_coord_diff <= tol,
        g_orthogonal: max_cross_inner <= tol,
        tol,
    })
}

/// Run one Gram-based construction across all indices and assemble the
/// result as a paired system, descaling each functional by `‖x_i‖_B²` so the
/// intended pairing diagonal is 1.
pub fn construct_biorthogonal(
    hs: &HilbertStructure,
    s: &SystemOfVectors,
    which: Construction,
    tol: f64,
) -> Result<BiorthogonalSystem, BiorthoError> {
    let build = |i: usize| -> Result<Functional, BiorthoError> {
        match which {
            Construction::Literal => literal_functional(hs, s, i, tol),
            Construction::Complement => complement_functional(hs, s, i, tol),
            Construction::MinNorm => Err(BiorthoError::BadForm(
                "min-norm construction is provided by the extension solver".into(),
            )),
        }
    };
    let functionals = (0..s.len())
        .map(|i| {
            let nb = s.space.norm(&s.vectors[i])?;
            Ok(build(i)?.scale(1.0 / (nb * nb)))
        })
        .collect::<Result<Vec<_>, BiorthoError>>()?;
    BiorthogonalSystem::new(s.clone(), functionals)
}
