//! Inner products `(u, v) = Σₙ tₙ uₙ*(u) uₙ*(v)` induced by a weighted family
//! of functionals, realized as an explicit Gram matrix.
//!
//! A finite family `{uₙ*}` with positive weights `tₙ` summing to 1 defines a
//! positive-semidefinite bilinear form on the ambient space — the
//! finite-dimensional slice of the classical embedding of a separable Banach
//! space into a Hilbert space. When every `‖uₙ*‖_* ≤ 1` the embedding is
//! norm-decreasing (`‖u‖_H ≤ sup_n |uₙ*(u)| ≤ ‖u‖_B`), which
//! [`HilbertStructure::check_continuity`] audits sample-wise.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use thiserror::Error;

use crate::norms::{Functional, NormError, NormSpec};

/// Weights must sum to 1 within this tolerance.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;
/// Stored vs recomputed Gram mismatch above this is a load error.
pub const GRAM_LOAD_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum HilbertError {
    #[error(transparent)]
    Norm(#[from] NormError),
    #[error("weights must sum to 1 (off by {0:.3e})")]
    WeightSum(f64),
    #[error("weights must be strictly positive")]
    BadWeight,
    #[error("functional family is empty")]
    EmptyFamily,
    #[error("functional {index} has dual norm {dual_norm}, expected <= 1 + tol")]
    FunctionalNotNormalized { index: usize, dual_norm: f64 },
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid inner-product structure encoding: {0}")]
    Encoding(String),
}

/// `tₙ ∝ 2⁻ⁿ`, renormalized so the finite truncation sums to 1 exactly.
pub fn geometric_weights(m: usize) -> DVector<f64> {
    let raw = DVector::from_fn(m, |n, _| 0.5f64.powi(n as i32 + 1));
    let sum = raw.sum();
    raw / sum
}

/// `tₙ = 1/m`.
pub fn uniform_weights(m: usize) -> DVector<f64> {
    DVector::repeat(m, 1.0 / m as f64)
}

/// Normalize each vector to unit norm and take its duality map.
///
/// The returned functionals satisfy `uₙ*(uₙ/‖uₙ‖) = 1 = ‖uₙ*‖_*`, the
/// normalization that makes the embedding continuity bound hold.
pub fn build_duality_family(
    space: &NormSpec,
    vectors: &[DVector<f64>],
) -> Result<Vec<Functional>, HilbertError> {
    vectors
        .iter()
        .map(|v| {
            let norm = space.norm(v)?;
            if norm == 0.0 {
                return Err(HilbertError::Norm(NormError::ZeroVector));
            }
            Ok(space.duality_map(&(v / norm))?)
        })
        .collect()
}

/// How a Gram matrix sits relative to zero at a given tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    Definite,
    Semidefinite,
}

/// A weighted functional family and the Gram matrix of its inner product.
///
/// Immutable after construction; the minimum eigenvalue of `G` is computed
/// once at build time.
#[derive(Debug, Clone)]
pub struct HilbertStructure {
    space: NormSpec,
    weights: DVector<f64>,
    functionals: Vec<Functional>,
    gram: DMatrix<f64>,
    min_eigenvalue: f64,
}

/// Sample-wise audit of the norm-decreasing property of the embedding.
#[derive(Debug, Clone, Serialize)]
pub struct ContinuityReport {
    pub sample_count: usize,
    /// `max h_norm(u) / norm(u)` over nonzero samples (0 if none).
    pub max_ratio: f64,
    /// `max h_norm(u) − norm(u)` over samples (absolute slack).
    pub max_excess: f64,
    pub worst_index: Option<usize>,
    pub min_eigenvalue: f64,
    pub functional_dual_norms: Vec<f64>,
    /// `max_ratio ≤ 1 + tol`.
    pub within_tol: bool,
}

impl HilbertStructure {
    /// Build `G = Σₙ tₙ uₙ uₙᵀ` from functionals and weights.
    ///
    /// Weights must be strictly positive and sum to 1 within
    /// [`WEIGHT_SUM_TOL`]; the family must be nonempty and match the space's
    /// dimension. `G` is assembled entry-wise over `i ≤ j` and mirrored, so
    /// it is symmetric to the last bit.
    pub fn new(
        space: NormSpec,
        functionals: Vec<Functional>,
        weights: DVector<f64>,
    ) -> Result<Self, HilbertError> {
        if functionals.is_empty() {
            return Err(HilbertError::EmptyFamily);
        }
        if weights.len() != functionals.len() {
            return Err(HilbertError::DimensionMismatch {
                expected: functionals.len(),
                got: weights.len(),
            });
        }
        if weights.iter().any(|&t| !(t > 0.0) || !t.is_finite()) {
            return Err(HilbertError::BadWeight);
        }
        let off = (weights.sum() - 1.0).abs();
        if off > WEIGHT_SUM_TOL {
            return Err(HilbertError::WeightSum(off));
        }
        let dim = space.dim();
        for u in &functionals {
            if u.dim() != dim {
                return Err(HilbertError::DimensionMismatch { expected: dim, got: u.dim() });
            }
        }
        let mut gram = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let s: f64 = functionals
                    .iter()
                    .zip(weights.iter())
                    .map(|(u, &t)| t * u.coords()[i] * u.coords()[j])
                    .sum();
                gram[(i, j)] = s;
                gram[(j, i)] = s;
            }
        }
        let min_eigenvalue = gram.clone().symmetric_eigen().eigenvalues.min();
        Ok(HilbertStructure { space, weights, functionals, gram, min_eigenvalue })
    }

    pub fn space(&self) -> &NormSpec {
        &self.space
    }

    pub fn weights(&self) -> &DVector<f64> {
        &self.weights
    }

    pub fn functionals(&self) -> &[Functional] {
        &self.functionals
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    /// `Definite` iff the smallest eigenvalue of `G` clears `tol`.
    pub fn definiteness(&self, tol: f64) -> Definiteness {
        if self.min_eigenvalue > tol {
            Definiteness::Definite
        } else {
            Definiteness::Semidefinite
        }
    }

    fn check_dim(&self, u: &DVector<f64>) -> Result<(), HilbertError> {
        if u.len() != self.space.dim() {
            return Err(HilbertError::DimensionMismatch {
                expected: self.space.dim(),
                got: u.len(),
            });
        }
        Ok(())
    }

    /// `(u, v) = uᵀ G v`.
    pub fn inner(&self, u: &DVector<f64>, v: &DVector<f64>) -> Result<f64, HilbertError> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        Ok((u.transpose() * &self.gram * v)[(0, 0)])
    }

    /// `‖u‖_H = √(uᵀ G u)`; the quadratic form is clamped at 0 so roundoff
    /// in the semidefinite case cannot produce NaN.
    pub fn h_norm(&self, u: &DVector<f64>) -> Result<f64, HilbertError> {
        Ok(self.inner(u, u)?.max(0.0).sqrt())
    }

    /// Audit `h_norm(u) ≤ norm(u)` over the samples.
    ///
    /// The bound is only guaranteed when every family member has dual norm at
    /// most 1; a functional violating that precondition is reported as an
    /// error rather than silently folded into the ratio.
    pub fn check_continuity(
        &self,
        samples: &[DVector<f64>],
        tol: f64,
    ) -> Result<ContinuityReport, HilbertError> {
        let mut dual_norms = Vec::with_capacity(self.functionals.len());
        for (index, u) in self.functionals.iter().enumerate() {
            let dn = self.space.dual_norm(u.coords())?.value;
            if dn > 1.0 + tol {
                return Err(HilbertError::FunctionalNotNormalized { index, dual_norm: dn });
            }
            dual_norms.push(dn);
        }
        let mut max_ratio = 0.0;
        let mut max_excess = f64::NEG_INFINITY;
        let mut worst_index = None;
        for (k, u) in samples.iter().enumerate() {
            let nb = self.space.norm(u)?;
            let nh = self.h_norm(u)?;
            if nh - nb > max_excess {
                max_excess = nh - nb;
            }
            if nb == 0.0 {
                continue;
            }
            let ratio = nh / nb;
            if ratio > max_ratio {
                max_ratio = ratio;
                worst_index = Some(k);
            }
        }
        if samples.is_empty() {
            max_excess = 0.0;
        }
        Ok(ContinuityReport {
            sample_count: samples.len(),
            max_ratio,
            max_excess,
            worst_index,
            min_eigenvalue: self.min_eigenvalue,
            functional_dual_norms: dual_norms,
            within_tol: max_ratio <= 1.0 + tol,
        })
    }

    /// `{"space": …, "t": […], "U": [[…]], "G": [[…]]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let u: Vec<Vec<f64>> =
            self.functionals.iter().map(|f| f.coords().iter().copied().collect()).collect();
        let g: Vec<Vec<f64>> =
            self.gram.row_iter().map(|r| r.iter().copied().collect()).collect();
        serde_json::json!({
            "space": self.space.to_json(),
            "t": self.weights.iter().copied().collect::<Vec<f64>>(),
            "U": u,
            "G": g,
        })
    }

    /// Load and re-validate; the stored Gram is recomputed from `(t, U)` and
    /// a mismatch above [`GRAM_LOAD_TOL`] rejects the file.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, HilbertError> {
        let obj = v.as_object().ok_or_else(|| HilbertError::Encoding("expected object".into()))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "space" | "t" | "U" | "G") {
                return Err(HilbertError::Encoding(format!("unknown field {key:?}")));
            }
        }
        let space = NormSpec::from_json(
            obj.get("space").ok_or_else(|| HilbertError::Encoding("missing \"space\"".into()))?,
        )?;
        let t: Vec<f64> = parse_field(obj, "t")?;
        let u: Vec<Vec<f64>> = parse_field(obj, "U")?;
        let functionals = u.into_iter().map(|row| Functional::from_slice(&row)).collect();
        let built = HilbertStructure::new(space, functionals, DVector::from_vec(t))?;
        if let Some(gv) = obj.get("G") {
            let g: Vec<Vec<f64>> = serde_json::from_value(gv.clone())
                .map_err(|e| HilbertError::Encoding(e.to_string()))?;
            let dim = built.space.dim();
            if g.len() != dim || g.iter().any(|row| row.len() != dim) {
                return Err(HilbertError::Encoding("stored \"G\" has wrong shape".into()));
            }
            let mut mismatch = 0.0f64;
            for i in 0..dim {
                for j in 0..dim {
                    mismatch = mismatch.max((g[i][j] - built.gram[(i, j)]).abs());
                }
            }
            if mismatch > GRAM_LOAD_TOL {
                return Err(HilbertError::Encoding(format!(
                    "stored Gram differs from recomputed by {mismatch:.3e}"
                )));
            }
        }
        Ok(built)
    }
}

fn parse_field<T: serde::de::DeserializeOwned>(
    obj: &serde_json::Map<String, serde_json::Value>,
    key: &str,
) -> Result<T, HilbertError> {
    let v = obj.get(key).ok_or_else(|| HilbertError::Encoding(format!("missing {key:?}")))?;
    serde_json::from_value(v.clone()).map_err(|e| HilbertError::Encoding(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::Exponent;
    use approx::assert_relative_eq;

    fn vec2(a: f64, b: f64) -> DVector<f64> {
        DVector::from_column_slice(&[a, b])
    }

    /// The running hand example: U = {(1,−1), (0,1)}, t = (½, ½).
    fn hand_structure() -> HilbertStructure {
        HilbertStructure::new(
            NormSpec::euclidean(2),
            vec![Functional::from_slice(&[1.0, -1.0]), Functional::from_slice(&[0.0, 1.0])],
            vec2(0.5, 0.5),
        )
        .unwrap()
    }

    #[test]
    fn gram_of_orthonormal_family_is_diagonal() {
        let hs = HilbertStructure::new(
            NormSpec::euclidean(2),
            vec![Functional::from_slice(&[1.0, 0.0]), Functional::from_slice(&[0.0, 1.0])],
            vec2(0.5, 0.5),
        )
        .unwrap();
        assert_eq!(hs.gram(), &DMatrix::from_diagonal(&vec2(0.5, 0.5)));
        assert_relative_eq!(hs.h_norm(&vec2(1.0, 1.0)).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn gram_matches_hand_expansion() {
        let hs = hand_structure();
        let expect = DMatrix::from_row_slice(2, 2, &[0.5, -0.5, -0.5, 1.0]);
        assert_relative_eq!((hs.gram() - expect).norm(), 0.0, epsilon = 1e-15);
        // x1 = (1,0): (x1, x1) = t1 = 1/2, so h_norm = 1/sqrt(2).
        let x1 = vec2(1.0, 0.0);
        let x2 = vec2(1.0, 1.0);
        assert_relative_eq!(hs.inner(&x1, &x1).unwrap(), 0.5, epsilon = 1e-15);
        assert_relative_eq!(hs.h_norm(&x1).unwrap(), 0.5f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(hs.inner(&x1, &x2).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn duality_family_normalizes_then_maps() {
        let family = build_duality_family(
            &NormSpec::euclidean(2),
            &[vec2(3.0, 4.0)],
        )
        .unwrap();
        assert_relative_eq!(family[0].coords()[0], 0.6, epsilon = 1e-15);
        assert_relative_eq!(family[0].coords()[1], 0.8, epsilon = 1e-15);

        let l1 = NormSpec::pnorm(2, Exponent::Finite(1.0)).unwrap();
        let family = build_duality_family(&l1, &[vec2(2.0, 0.0)]).unwrap();
        assert_relative_eq!(family[0].coords()[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(family[0].coords()[1], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn weight_validation_rejects_bad_sums() {
        let f = vec![Functional::from_slice(&[1.0, 0.0])];
        let err = HilbertStructure::new(NormSpec::euclidean(2), f, vec2(0.5, 0.4));
        assert!(matches!(err, Err(HilbertError::DimensionMismatch { .. })));
        let f = vec![Functional::from_slice(&[1.0, 0.0]), Functional::from_slice(&[0.0, 1.0])];
        let err = HilbertStructure::new(NormSpec::euclidean(2), f, vec2(0.5, 0.4));
        assert!(matches!(err, Err(HilbertError::WeightSum(_))));
    }

    #[test]
    fn geometric_and_uniform_weights_sum_to_one() {
        for m in 1..40 {
            assert!((geometric_weights(m).sum() - 1.0).abs() <= WEIGHT_SUM_TOL);
            assert!((uniform_weights(m).sum() - 1.0).abs() <= WEIGHT_SUM_TOL);
        }
    }

    #[test]
    fn continuity_holds_for_duality_families() {
        let space = NormSpec::pnorm(3, Exponent::Finite(1.0)).unwrap();
        let vectors: Vec<DVector<f64>> = (0..5)
            .map(|k| DVector::from_fn(3, |i, _| ((i + 2 * k + 1) as f64).sin()))
            .collect();
        let family = build_duality_family(&space, &vectors).unwrap();
        let hs = HilbertStructure::new(space, family, geometric_weights(5)).unwrap();
        let report = hs.check_continuity(&vectors, 1e-9).unwrap();
        assert!(report.within_tol, "max ratio {}", report.max_ratio);
        assert!(report.max_excess <= 1e-9);
        assert!(report.min_eigenvalue >= -1e-10);
    }

    #[test]
    fn continuity_rejects_oversized_functionals() {
        // ‖(1,−1)‖_* = √2 > 1 in the Euclidean plane: precondition violated.
        let err = hand_structure().check_continuity(&[], 1e-9);
        assert!(matches!(err, Err(HilbertError::FunctionalNotNormalized { index: 0, .. })));
    }

    #[test]
    fn empty_sample_list_reports_vacuous_ratio() {
        let hs = HilbertStructure::new(
            NormSpec::euclidean(2),
            vec![Functional::from_slice(&[1.0, 0.0]), Functional::from_slice(&[0.0, 1.0])],
            vec2(0.5, 0.5),
        )
        .unwrap();
        let report = hs.check_continuity(&[], 1e-9).unwrap();
        assert_eq!(report.max_ratio, 0.0);
        assert_eq!(report.sample_count, 0);
        assert!(report.within_tol);
    }

    #[test]
    fn json_round_trip_and_gram_cross_check() {
        let hs = hand_structure();
        let json = hs.to_json();
        let back = HilbertStructure::from_json(&json).unwrap();
        assert_relative_eq!((back.gram() - hs.gram()).norm(), 0.0, epsilon = 1e-15);

        // Tamper with one Gram entry: the load must fail.
        let mut bad = json.clone();
        bad["G"][0][0] = serde_json::json!(0.75);
        assert!(matches!(
            HilbertStructure::from_json(&bad),
            Err(HilbertError::Encoding(_))
        ));
    }

    #[test]
    fn rank_deficient_family_is_semidefinite_with_kernel_vector() {
        let hs = HilbertStructure::new(
            NormSpec::euclidean(2),
            vec![Functional::from_slice(&[1.0, 0.0])],
            DVector::from_column_slice(&[1.0]),
        )
        .unwrap();
        assert_eq!(hs.definiteness(1e-10), Definiteness::Semidefinite);
        // e2 is annihilated by the family, so its h-norm vanishes.
        assert!(hs.h_norm(&vec2(0.0, 1.0)).unwrap() <= 1e-8);
    }
}
