//! Brute-force oracles for cross-checking the solvers in small dimensions.
//!
//! For norms whose unit ball is a polytope (p ∈ {1, ∞}, weighted variants,
//! polyhedral), everything linear is decided at the ball's vertices. This
//! module enumerates those vertices exhaustively (dim ≤ 3) and answers dual
//! norms, minimal-extension optima, and Auerbach determinants by direct
//! search — independent of the LP and exchange machinery it is used to audit.
//! Errors are plain strings: these functions back tests and audits, not
//! production paths.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::norms::{Exponent, NormKind, NormSpec};

/// Largest dimension the exhaustive oracles accept.
pub const MAX_ORACLE_DIM: usize = 3;

fn check_dim(space: &NormSpec) -> Result<(), String> {
    if space.dim() > MAX_ORACLE_DIM {
        return Err(format!(
            "vertex oracle supports dim <= {MAX_ORACLE_DIM}, got {}",
            space.dim()
        ));
    }
    Ok(())
}

/// All sign patterns over `n` coordinates as ±1 vectors.
fn sign_patterns(n: usize) -> Vec<DVector<f64>> {
    (0..1usize << n)
        .map(|mask| {
            DVector::from_fn(n, |k, _| if mask & (1 << k) != 0 { -1.0 } else { 1.0 })
        })
        .collect()
}

/// Vertices of `{v : max_k |⟨row_k, v⟩| ≤ 1}` by exhausting row subsets and
/// sign choices. Rows must span the space (the set is a bounded polytope).
fn vertices_of_max_abs_ball(rows: &[DVector<f64>], dim: usize) -> Vec<DVector<f64>> {
    let m = rows.len();
    let mut vertices: Vec<DVector<f64>> = Vec::new();
    let mut subset = vec![0usize; dim];
    // Enumerate all dim-subsets of row indices via a simple odometer.
    let mut push_candidates = |idx: &[usize], out: &mut Vec<DVector<f64>>| {
        let a = DMatrix::from_fn(dim, dim, |i, j| rows[idx[i]][j]);
        let Some(inv) = a.try_inverse() else { return };
        for s in sign_patterns(dim) {
            let v = &inv * &s;
            let feasible = rows.iter().all(|r| r.dot(&v).abs() <= 1.0 + 1e-9);
            if feasible && !out.iter().any(|u| (u - &v).amax() <= 1e-8) {
                out.push(v);
            }
        }
    };
    fn subsets(
        start: usize,
        depth: usize,
        m: usize,
        subset: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize], &mut Vec<DVector<f64>>),
        out: &mut Vec<DVector<f64>>,
    ) {
        let dim = subset.len();
        if depth == dim {
            f(subset, out);
            return;
        }
        for i in start..m {
            subset[depth] = i;
            subsets(i + 1, depth + 1, m, subset, f, out);
        }
    }
    subsets(0, 0, m, &mut subset, &mut push_candidates, &mut vertices);
    vertices
}

/// Vertices of the unit ball, for the polyhedral-type norms (p ∈ {1, ∞},
/// weighted variants, polyhedral rows) in dimension ≤ 3.
pub fn ball_vertices(space: &NormSpec) -> Result<Vec<DVector<f64>>, String> {
    check_dim(space)?;
    let n = space.dim();
    let weights = |w: Option<&DVector<f64>>, k: usize| w.map_or(1.0, |w| w[k]);
    let (p, w): (Exponent, Option<&DVector<f64>>) = match space.kind() {
        NormKind::PNorm { p } => (*p, None),
        NormKind::WeightedPNorm { p, weights } => (*p, Some(weights)),
        NormKind::Polyhedral { rows } => {
            let row_vecs: Vec<DVector<f64>> =
                (0..rows.nrows()).map(|k| rows.row(k).transpose()).collect();
            return Ok(vertices_of_max_abs_ball(&row_vecs, n));
        }
    };
    match p {
        // Cross-polytope: ±e_k / w_k.
        Exponent::Finite(pv) if pv == 1.0 => {
            let mut out = Vec::with_capacity(2 * n);
            for k in 0..n {
                for s in [1.0, -1.0] {
                    let mut v = DVector::zeros(n);
                    v[k] = s / weights(w, k);
                    out.push(v);
                }
            }
            Ok(out)
        }
        // Box: one corner per sign pattern, coordinates 1 / w_k.
        Exponent::Infinity => Ok(sign_patterns(n)
            .into_iter()
            .map(|s| DVector::from_fn(n, |k, _| s[k] / weights(w, k)))
            .collect()),
        _ => Err(format!("unit ball of {} is not a polytope", space.label())),
    }
}

/// Dual norm as a direct maximum of `f` over the ball's vertices.
pub fn dual_norm_by_vertices(space: &NormSpec, f: &DVector<f64>) -> Result<f64, String> {
    let vertices = ball_vertices(space)?;
    Ok(vertices.iter().map(|v| f.dot(v)).fold(0.0, f64::max))
}

/// Randomized lower bound on the dual norm: the maximum of `f` over sampled
/// unit-norm vectors. Valid for every norm kind; always ≤ the true value.
pub fn sampled_dual_lower_bound(
    space: &NormSpec,
    f: &DVector<f64>,
    samples: usize,
    seed: u64,
) -> Result<f64, String> {
    let n = space.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0.0f64;
    for _ in 0..samples {
        let x = DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let norm = space.norm(&x).map_err(|e| e.to_string())?;
        if norm < 1e-12 {
            continue;
        }
        best = best.max(f.dot(&x).abs() / norm);
    }
    Ok(best)
}

/// Minimal-dual-norm extension optimum by strong duality:
/// `min{‖f‖_* : f(v_k) = c_k} = max{μᵀc : ‖Σ μ_k v_k‖ ≤ 1}`, and the
/// right-hand constraint set is a polytope in μ whose vertices are
/// enumerated directly. Constraint vectors must be linearly independent.
pub fn min_extension_by_vertices(
    space: &NormSpec,
    constraints: &[(DVector<f64>, f64)],
) -> Result<f64, String> {
    check_dim(space)?;
    let d = space.dim();
    let k = constraints.len();
    if k == 0 || k > d {
        return Err(format!("need 1..=dim constraints, got {k}"));
    }
    let v = DMatrix::from_fn(k, d, |i, j| constraints[i].0[j]);
    let c = DVector::from_fn(k, |i, _| constraints[i].1);
    let sv = v.clone().svd(false, false).singular_values;
    if sv.min() <= 1e-10 * sv.max() {
        return Err("constraint vectors are not linearly independent".into());
    }
    // ‖Vᵀμ‖_B as a max-of-|rows| norm on μ-space.
    let col = |j: usize| -> DVector<f64> { v.column(j).into_owned() };
    let rows_mu: Vec<DVector<f64>> = match space.kind() {
        NormKind::PNorm { p } | NormKind::WeightedPNorm { p, .. } => {
            let w = match space.kind() {
                NormKind::WeightedPNorm { weights, .. } => weights.clone(),
                _ => DVector::from_element(d, 1.0),
            };
            match p {
                // Σ_j w_j |⟨col_j, μ⟩| = max over sign patterns s of
                // ⟨Σ_j s_j w_j col_j, μ⟩.
                Exponent::Finite(pv) if *pv == 1.0 => sign_patterns(d)
                    .into_iter()
                    .map(|s| {
                        let mut row = DVector::zeros(k);
                        for j in 0..d {
                            row += col(j) * (s[j] * w[j]);
                        }
                        row
                    })
                    .collect(),
                // max_j w_j |⟨col_j, μ⟩|: one row per coordinate.
                Exponent::Infinity => (0..d).map(|j| col(j) * w[j]).collect(),
                _ => return Err(format!("{} has no polytope dual ball", space.label())),
            }
        }
        // max_t |⟨a_t, Vᵀμ⟩| = max_t |⟨V a_t, μ⟩|.
        NormKind::Polyhedral { rows } => {
            (0..rows.nrows()).map(|t| &v * rows.row(t).transpose()).collect()
        }
    };
    let vertices = vertices_of_max_abs_ball(&rows_mu, k);
    if vertices.is_empty() {
        return Err("dual polytope has no vertices (degenerate constraints)".into());
    }
    Ok(vertices.iter().map(|mu| c.dot(mu)).fold(0.0, f64::max))
}

/// Largest |det| over tuples of unit-ball vertices — the Auerbach optimum for
/// polyhedral-type norms, where the determinant's multilinearity puts a
/// maximizer at vertex tuples.
pub fn max_det_by_vertices(space: &NormSpec) -> Result<f64, String> {
    let vertices = ball_vertices(space)?;
    let n = space.dim();
    let m = vertices.len();
    if m < n {
        return Err("fewer vertices than dimensions".into());
    }
    let mut best = 0.0f64;
    let mut idx = vec![0usize; n];
    fn walk(
        start: usize,
        depth: usize,
        m: usize,
        n: usize,
        idx: &mut Vec<usize>,
        vertices: &[DVector<f64>],
        best: &mut f64,
    ) {
        if depth == n {
            let a = DMatrix::from_fn(n, n, |i, j| vertices[idx[j]][i]);
            *best = best.max(a.determinant().abs());
            return;
        }
        for i in start..m {
            idx[depth] = i;
            walk(i + 1, depth + 1, m, n, idx, vertices, best);
        }
    }
    walk(0, 0, m, n, &mut idx, &vertices, &mut best);
    Ok(best)
}
