//! Norm specifications on R^n with dual norms, certificates, and duality maps.
//!
//! Three families are supported: `ℓ_p` norms, weighted `ℓ_p` norms
//! `‖x‖ = (Σ w_k |x_k|^p)^{1/p}` (with `max_k w_k |x_k|` at `p = ∞`), and
//! polyhedral norms `‖x‖ = max_k |⟨a_k, x⟩|` given by the rows of a full
//! column-rank matrix `A`. Dual norms come with a maximizer certificate
//! `x̂` (`‖x̂‖ ≤ 1`, `f(x̂) = ‖f‖_*`), and duality maps return a support
//! functional `u*` with `u*(u) = ‖u‖²` and `‖u*‖_* = ‖u‖`, breaking ties in
//! the set-valued cases by the minimal Euclidean norm selection.

use nalgebra::{DMatrix, DVector};
use serde::de::Error as _;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lp;

/// Tolerance for closed-form identities (dual-norm certificates, duality-map
/// normalization checks).
pub const TOL_CLOSED_FORM: f64 = 1e-9;
/// Tolerance for values obtained by LP or iterative solvers.
pub const TOL_ITERATIVE: f64 = 1e-6;
/// Relative slack used when detecting ties (active rows, argmax sets).
const TIE_REL_TOL: f64 = 1e-12;
/// Largest tie set the polyhedral duality map resolves exactly.
const MAX_TIE_SET: usize = 16;

#[derive(Debug, Error)]
pub enum NormError {
    #[error("dimension must be positive")]
    ZeroDim,
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("p-norm exponent must satisfy p >= 1, got {0}")]
    BadExponent(f64),
    #[error("weights must be strictly positive and match the dimension")]
    BadWeights,
    #[error("polyhedral matrix must have at least `dim` rows and full column rank")]
    BadPolyhedral,
    #[error("duality map is undefined at the zero vector")]
    ZeroVector,
    #[error("vector contains a non-finite entry")]
    NonFinite,
    #[error("tie set of {0} active rows exceeds the exact resolution limit")]
    TieSetTooLarge(usize),
    #[error("linear program failed: {0}")]
    Lp(String),
    #[error("invalid norm encoding: {0}")]
    Encoding(String),
}

impl From<lp::LpError> for NormError {
    fn from(e: lp::LpError) -> Self {
        NormError::Lp(e.to_string())
    }
}

/// Exponent of an `ℓ_p` norm: a finite `p ≥ 1` or `∞`.
///
/// Infinity is an explicit variant (not an `f64` sentinel); the JSON encoding
/// is a number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn validate(self) -> Result<(), NormError> {
        match self {
            Exponent::Finite(p) if p.is_finite() && p >= 1.0 => Ok(()),
            Exponent::Finite(p) => Err(NormError::BadExponent(p)),
            Exponent::Infinity => Ok(()),
        }
    }

    /// Conjugate exponent `q` with `1/p + 1/q = 1`.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }

    /// The finite value, if any.
    pub fn finite_value(self) -> Option<f64> {
        match self {
            Exponent::Finite(p) => Some(p),
            Exponent::Infinity => None,
        }
    }

    pub fn is_one(self) -> bool {
        matches!(self, Exponent::Finite(p) if p == 1.0)
    }

    pub fn is_two(self) -> bool {
        matches!(self, Exponent::Finite(p) if p == 2.0)
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => s.serialize_f64(*p),
            Exponent::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(p) => Ok(Exponent::Finite(p)),
            Repr::Text(s) if s == "inf" => Ok(Exponent::Infinity),
            Repr::Text(s) => Err(D::Error::custom(format!(
                "exponent must be a number or \"inf\", got {s:?}"
            ))),
        }
    }
}

/// The norm family of a [`NormSpec`].
#[derive(Debug, Clone)]
pub enum NormKind {
    PNorm {
        p: Exponent,
    },
    WeightedPNorm {
        p: Exponent,
        weights: DVector<f64>,
    },
    /// `‖x‖ = max_k |⟨a_k, x⟩|` over the rows `a_k` of `rows`.
    Polyhedral {
        rows: DMatrix<f64>,
    },
}

/// A validated norm on R^n.
#[derive(Debug, Clone)]
pub struct NormSpec {
    dim: usize,
    kind: NormKind,
}

/// Dual norm value together with a maximizer certificate:
/// `‖witness‖ ≤ 1 + tol` and `f(witness) ≥ value − tol`.
#[derive(Debug, Clone)]
pub struct DualNorm {
    pub value: f64,
    pub witness: DVector<f64>,
}

/// A linear functional in coordinates, with an optional cached dual norm.
#[derive(Debug, Clone)]
pub struct Functional {
    coords: DVector<f64>,
    dual_norm: Option<f64>,
}

impl Functional {
    pub fn new(coords: DVector<f64>) -> Self {
        Functional { coords, dual_norm: None }
    }

    pub fn from_slice(coords: &[f64]) -> Self {
        Functional::new(DVector::from_column_slice(coords))
    }

    /// Evaluate `f(x)`.
    pub fn apply(&self, x: &DVector<f64>) -> f64 {
        self.coords.dot(x)
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Dual norm in `space`, computed once and cached.
    pub fn dual_norm_in(&mut self, space: &NormSpec) -> Result<f64, NormError> {
        if let Some(v) = self.dual_norm {
            return Ok(v);
        }
        let v = space.dual_norm(&self.coords)?.value;
        self.dual_norm = Some(v);
        Ok(v)
    }

    /// Cached dual norm, if one has been computed.
    pub fn cached_dual_norm(&self) -> Option<f64> {
        self.dual_norm
    }

    pub fn scale(&self, factor: f64) -> Functional {
        Functional {
            coords: &self.coords * factor,
            dual_norm: self.dual_norm.map(|v| v * factor.abs()),
        }
    }
}

impl NormSpec {
    pub fn pnorm(dim: usize, p: Exponent) -> Result<Self, NormError> {
        if dim == 0 {
            return Err(NormError::ZeroDim);
        }
        p.validate()?;
        Ok(NormSpec { dim, kind: NormKind::PNorm { p } })
    }

    pub fn euclidean(dim: usize) -> Self {
        NormSpec::pnorm(dim, Exponent::Finite(2.0)).expect("dim > 0")
    }

    pub fn weighted_pnorm(
        dim: usize,
        p: Exponent,
        weights: DVector<f64>,
    ) -> Result<Self, NormError> {
        if dim == 0 {
            return Err(NormError::ZeroDim);
        }
        p.validate()?;
        if weights.len() != dim || weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
            return Err(NormError::BadWeights);
        }
        Ok(NormSpec { dim, kind: NormKind::WeightedPNorm { p, weights } })
    }

    pub fn polyhedral(rows: DMatrix<f64>) -> Result<Self, NormError> {
        let dim = rows.ncols();
        if dim == 0 || rows.nrows() < dim {
            return Err(NormError::BadPolyhedral);
        }
        if rows.iter().any(|v| !v.is_finite()) {
            return Err(NormError::NonFinite);
        }
        // Full column rank makes max_k |<a_k, x>| definite, hence a norm.
        let svd = rows.clone().svd(false, false);
        let smax = svd.singular_values.max();
        let rank = svd.singular_values.iter().filter(|&&s| s > smax * 1e-12).count();
        if rank < dim {
            return Err(NormError::BadPolyhedral);
        }
        Ok(NormSpec { dim, kind: NormKind::Polyhedral { rows } })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &NormKind {
        &self.kind
    }

    /// Short human-readable label, e.g. `l_2.5^3` or `poly[5]^2`.
    pub fn label(&self) -> String {
        match &self.kind {
            NormKind::PNorm { p } => format!("l_{p}^{}", self.dim),
            NormKind::WeightedPNorm { p, .. } => format!("wl_{p}^{}", self.dim),
            NormKind::Polyhedral { rows } => format!("poly[{}]^{}", rows.nrows(), self.dim),
        }
    }

    fn check_dim(&self, x: &DVector<f64>) -> Result<(), NormError> {
        if x.len() != self.dim {
            return Err(NormError::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(NormError::NonFinite);
        }
        Ok(())
    }

    /// Evaluate `‖x‖`.
    pub fn norm(&self, x: &DVector<f64>) -> Result<f64, NormError> {
        self.check_dim(x)?;
        Ok(match &self.kind {
            NormKind::PNorm { p } => pnorm_value(*p, x, None),
            NormKind::WeightedPNorm { p, weights } => pnorm_value(*p, x, Some(weights)),
            NormKind::Polyhedral { rows } => (rows * x).amax(),
        })
    }

    /// Dual norm `‖f‖_* = sup { f(x) : ‖x‖ ≤ 1 }` with a maximizer certificate.
    ///
    /// `ℓ_p` and weighted `ℓ_p` duals are closed-form (Hölder); the polyhedral
    /// dual solves `min ‖λ‖_1` subject to `Aᵀλ = f` and takes the LP dual
    /// solution as the certificate.
    pub fn dual_norm(&self, f: &DVector<f64>) -> Result<DualNorm, NormError> {
        self.check_dim(f)?;
        if f.amax() == 0.0 {
            return Ok(DualNorm { value: 0.0, witness: DVector::zeros(self.dim) });
        }
        match &self.kind {
            NormKind::PNorm { p } => Ok(pnorm_dual(*p, f, None)),
            NormKind::WeightedPNorm { p, weights } => Ok(pnorm_dual(*p, f, Some(weights))),
            NormKind::Polyhedral { rows } => polyhedral_dual(rows, f),
        }
    }

    /// Duality map: a functional `u*` with `u*(u) = ‖u‖²` and `‖u*‖_* = ‖u‖`.
    ///
    /// For smooth norms (`1 < p < ∞`) the support functional is unique. At
    /// `p = 1`, `p = ∞`, and for polyhedral norms the map is set-valued; this
    /// returns the selection of minimal Euclidean norm, which is unique and
    /// makes the map deterministic.
    pub fn duality_map(&self, u: &DVector<f64>) -> Result<Functional, NormError> {
        self.check_dim(u)?;
        if u.amax() == 0.0 {
            return Err(NormError::ZeroVector);
        }
        let norm_u = self.norm(u)?;
        let coords = match &self.kind {
            NormKind::PNorm { p } => pnorm_duality_map(*p, u, None, norm_u),
            NormKind::WeightedPNorm { p, weights } => {
                pnorm_duality_map(*p, u, Some(weights), norm_u)
            }
            NormKind::Polyhedral { rows } => polyhedral_duality_map(rows, u, norm_u)?,
        };
        Ok(Functional { coords, dual_norm: Some(norm_u) })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(NormSpecRepr::from(self)).expect("norm spec serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, NormError> {
        let repr: NormSpecRepr = serde_json::from_value(v.clone())
            .map_err(|e| NormError::Encoding(e.to_string()))?;
        repr.try_into()
    }
}

/// `(Σ w_k |x_k|^p)^{1/p}`, scaled by `max |x_k|` to avoid overflow for large
/// `p`; `max_k w_k |x_k|` at `p = ∞` (weights default to 1).
fn pnorm_value(p: Exponent, x: &DVector<f64>, weights: Option<&DVector<f64>>) -> f64 {
    let w = |k: usize| weights.map_or(1.0, |w| w[k]);
    match p {
        Exponent::Infinity => {
            (0..x.len()).map(|k| w(k) * x[k].abs()).fold(0.0, f64::max)
        }
        Exponent::Finite(p) if p == 1.0 => (0..x.len()).map(|k| w(k) * x[k].abs()).sum(),
        Exponent::Finite(p) => {
            let m = x.amax();
            if m == 0.0 {
                return 0.0;
            }
            let sum: f64 = (0..x.len()).map(|k| w(k) * (x[k].abs() / m).powf(p)).sum();
            m * sum.powf(1.0 / p)
        }
    }
}

/// Hölder dual of a (weighted) `ℓ_p` norm with its maximizer.
fn pnorm_dual(p: Exponent, f: &DVector<f64>, weights: Option<&DVector<f64>>) -> DualNorm {
    let n = f.len();
    let w = |k: usize| weights.map_or(1.0, |w| w[k]);
    match p {
        // Dual of l_1 is l_inf: maximize at the single best coordinate.
        Exponent::Finite(p) if p == 1.0 => {
            let (mut best, mut val) = (0, f64::NEG_INFINITY);
            for k in 0..n {
                let r = f[k].abs() / w(k);
                if r > val {
                    (best, val) = (k, r);
                }
            }
            let mut witness = DVector::zeros(n);
            witness[best] = f[best].signum() / w(best);
            DualNorm { value: val, witness }
        }
        // Dual of l_inf is l_1: sign vector (scaled by 1/w) is the maximizer.
        Exponent::Infinity => {
            let value = (0..n).map(|k| f[k].abs() / w(k)).sum();
            let witness =
                DVector::from_fn(n, |k, _| if f[k] == 0.0 { 0.0 } else { f[k].signum() / w(k) });
            DualNorm { value, witness }
        }
        Exponent::Finite(p) => {
            // ‖f‖_* = (Σ |f_k|^q w_k^{1-q})^{1/q}; maximizer x̂_k ∝ sgn(f_k)(|f_k|/w_k)^{q-1}.
            let q = p / (p - 1.0);
            let m = f.amax();
            let sum: f64 = (0..n).map(|k| (f[k].abs() / m).powf(q) * w(k).powf(1.0 - q)).sum();
            let value = m * sum.powf(1.0 / q);
            let mut witness =
                DVector::from_fn(n, |k, _| f[k].signum() * (f[k].abs() / w(k)).powf(q - 1.0));
            let wnorm = pnorm_value(Exponent::Finite(p), &witness, weights);
            witness /= wnorm;
            DualNorm { value, witness }
        }
    }
}

/// Duality map of a (weighted) `ℓ_p` norm at `u ≠ 0`.
fn pnorm_duality_map(
    p: Exponent,
    u: &DVector<f64>,
    weights: Option<&DVector<f64>>,
    norm_u: f64,
) -> DVector<f64> {
    let n = u.len();
    let w = |k: usize| weights.map_or(1.0, |w| w[k]);
    match p {
        // u*_k = ‖u‖ w_k sgn(u_k) on the support, 0 elsewhere (minimal
        // Euclidean selection among |f_k| ≤ ‖u‖ w_k off the support).
        Exponent::Finite(p) if p == 1.0 => DVector::from_fn(n, |k, _| {
            if u[k] == 0.0 {
                0.0
            } else {
                norm_u * w(k) * u[k].signum()
            }
        }),
        // Supported on the argmax set M of w_k|u_k|; minimizing Σ f_k² under
        // Σ |f_k|/w_k = ‖u‖ gives f_k ∝ 1/w_k on M.
        Exponent::Infinity => {
            let active: Vec<usize> =
                (0..n).filter(|&k| w(k) * u[k].abs() >= norm_u * (1.0 - TIE_REL_TOL)).collect();
            let denom: f64 = active.iter().map(|&k| w(k).powi(-2)).sum();
            let mut f = DVector::zeros(n);
            for &k in &active {
                f[k] = u[k].signum() * norm_u / (w(k) * denom);
            }
            f
        }
        // Smooth case: u*_k = ‖u‖^{2-p} w_k |u_k|^{p-1} sgn(u_k).
        Exponent::Finite(p) => DVector::from_fn(n, |k, _| {
            if u[k] == 0.0 {
                0.0
            } else {
                norm_u.powf(2.0 - p) * w(k) * u[k].abs().powf(p - 1.0) * u[k].signum()
            }
        }),
    }
}

/// Polyhedral dual norm via the LP `min Σ(λ⁺+λ⁻)` s.t. `Aᵀ(λ⁺−λ⁻) = f`.
///
/// The optimum equals `‖f‖_*` (f is a convex combination of `±a_k` scaled by
/// the value), and the LP dual vector `y` is exactly the maximizer:
/// `|⟨a_k, y⟩| ≤ 1` and `⟨f, y⟩ = ‖f‖_*`.
fn polyhedral_dual(rows: &DMatrix<f64>, f: &DVector<f64>) -> Result<DualNorm, NormError> {
    let (m, n) = (rows.nrows(), rows.ncols());
    let mut coef = DMatrix::zeros(n, 2 * m);
    let at = rows.transpose();
    coef.view_mut((0, 0), (n, m)).copy_from(&at);
    coef.view_mut((0, m), (n, m)).copy_from(&(-&at));
    let lp = lp::StandardLp { coef, rhs: f.clone(), cost: DVector::repeat(2 * m, 1.0) };
    let sol = lp::solve(&lp)?;
    Ok(DualNorm { value: sol.value, witness: sol.dual })
}

/// Polyhedral duality map: minimal Euclidean point of
/// `‖u‖ · conv{ sgn(⟨a_k,u⟩) a_k : k active }`.
///
/// Every point of that set is a valid support functional at `u`; the minimal
/// Euclidean one is unique. It is found by enumerating candidate faces
/// (subsets of the active rows) and solving the equality-constrained
/// least-squares problem on each, which is exact for the small tie sets that
/// occur in practice; tie sets above [`MAX_TIE_SET`] are rejected.
fn polyhedral_duality_map(
    rows: &DMatrix<f64>,
    u: &DVector<f64>,
    norm_u: f64,
) -> Result<DVector<f64>, NormError> {
    let n = rows.ncols();
    let vals = rows * u;
    let active: Vec<usize> =
        (0..rows.nrows()).filter(|&k| vals[k].abs() >= norm_u * (1.0 - TIE_REL_TOL)).collect();
    // Signed active rows b_k = sgn(<a_k,u>) a_k; all satisfy <b_k, u> = ‖u‖.
    let b: Vec<DVector<f64>> =
        active.iter().map(|&k| rows.row(k).transpose() * vals[k].signum()).collect();
    if b.len() == 1 {
        return Ok(&b[0] * norm_u);
    }
    if b.len() > MAX_TIE_SET {
        return Err(NormError::TieSetTooLarge(b.len()));
    }
    let point = min_norm_point(&b, n);
    Ok(point * norm_u)
}

/// Minimal Euclidean norm point of `conv{b_1, …, b_r}` by face enumeration.
///
/// For each nonempty subset T, the minimum-norm point of the affine hull of
/// `{b_k}_{k∈T}` solves the KKT system `[G 1; 1ᵀ 0][μ; λ] = [0; 1]` with
/// `G = BᵀB`; candidates with `μ ≥ 0` lie in the convex hull, and the best
/// feasible candidate over all faces is the global minimizer.
fn min_norm_point(b: &[DVector<f64>], dim: usize) -> DVector<f64> {
    let r = b.len();
    let mut best: Option<(f64, DVector<f64>)> = None;
    for mask in 1u32..(1 << r) {
        let idx: Vec<usize> = (0..r).filter(|&k| mask & (1 << k) != 0).collect();
        let t = idx.len();
        // KKT system for min ‖Σ μ_k b_k‖² with Σ μ_k = 1.
        let mut kkt = DMatrix::zeros(t + 1, t + 1);
        for i in 0..t {
            for j in 0..t {
                kkt[(i, j)] = b[idx[i]].dot(&b[idx[j]]);
            }
            kkt[(i, t)] = 1.0;
            kkt[(t, i)] = 1.0;
        }
        let mut rhs = DVector::zeros(t + 1);
        rhs[t] = 1.0;
        let svd = kkt.svd(true, true);
        let Ok(mu_lambda) = svd.solve(&rhs, 1e-12) else { continue };
        let mu = mu_lambda.rows(0, t);
        if mu.iter().any(|&m| m < -1e-10) || (mu.sum() - 1.0).abs() > 1e-8 {
            continue;
        }
        let mut point = DVector::zeros(dim);
        for (i, &k) in idx.iter().enumerate() {
            point += &b[k] * mu[i];
        }
        let obj = point.norm_squared();
        if best.as_ref().is_none_or(|(v, _)| obj < v - 1e-14) {
            best = Some((obj, point));
        }
    }
    best.expect("singleton faces are always feasible").1
}

/// Flat JSON encoding of a [`NormSpec`]:
/// `{"dim": n, "kind": "pnorm" | "weighted_pnorm" | "polyhedral", "p": …, "w": […], "A": [[…]]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NormSpecRepr {
    dim: usize,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<Exponent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    w: Option<Vec<f64>>,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none")]
    a: Option<Vec<Vec<f64>>>,
}

impl From<&NormSpec> for NormSpecRepr {
    fn from(spec: &NormSpec) -> Self {
        let (kind, p, w, a) = match &spec.kind {
            NormKind::PNorm { p } => ("pnorm", Some(*p), None, None),
            NormKind::WeightedPNorm { p, weights } => {
                ("weighted_pnorm", Some(*p), Some(weights.iter().copied().collect()), None)
            }
            NormKind::Polyhedral { rows } => {
                let a = rows.row_iter().map(|r| r.iter().copied().collect()).collect();
                ("polyhedral", None, None, Some(a))
            }
        };
        NormSpecRepr { dim: spec.dim, kind: kind.to_string(), p, w, a }
    }
}

impl TryFrom<NormSpecRepr> for NormSpec {
    type Error = NormError;

    fn try_from(repr: NormSpecRepr) -> Result<Self, NormError> {
        let need_p = || {
            repr.p.ok_or_else(|| NormError::Encoding("missing exponent \"p\"".into()))
        };
        match repr.kind.as_str() {
            "pnorm" => {
                if repr.w.is_some() || repr.a.is_some() {
                    return Err(NormError::Encoding("pnorm takes only \"p\"".into()));
                }
                NormSpec::pnorm(repr.dim, need_p()?)
            }
            "weighted_pnorm" => {
                if repr.a.is_some() {
                    return Err(NormError::Encoding("weighted_pnorm takes \"p\" and \"w\"".into()));
                }
                let w = repr
                    .w
                    .ok_or_else(|| NormError::Encoding("missing weights \"w\"".into()))?;
                NormSpec::weighted_pnorm(repr.dim, need_p()?, DVector::from_vec(w))
            }
            "polyhedral" => {
                if repr.p.is_some() || repr.w.is_some() {
                    return Err(NormError::Encoding("polyhedral takes only \"A\"".into()));
                }
                let a = repr.a.ok_or_else(|| NormError::Encoding("missing rows \"A\"".into()))?;
                let m = a.len();
                if m == 0 || a.iter().any(|row| row.len() != repr.dim) {
                    return Err(NormError::Encoding("rows of \"A\" must have length dim".into()));
                }
                let rows = DMatrix::from_fn(m, repr.dim, |i, j| a[i][j]);
                NormSpec::polyhedral(rows)
            }
            other => Err(NormError::Encoding(format!("unknown norm kind {other:?}"))),
        }
    }
}
