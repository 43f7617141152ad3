//! Command implementations: run the audits, write report files, and map the
//! measurements to the exit-code contract (0 within tolerance, 2 out of
//! tolerance, 1 operational error).

use std::path::Path;
use std::time::Instant;

use serde_json::json;

use crate::biortho::{
    audit_products, coincidence_report, construct_biorthogonal, worked_example,
    BiorthogonalSystem, Construction, SystemAudit, SystemOfVectors, DEFECT_TOL,
};
use crate::extension::{auerbach_search, min_biorthogonal_functionals, ExtensionResult};
use crate::hilbert::{build_duality_family, geometric_weights, HilbertStructure};
use crate::norms::{Exponent, NormSpec};
use crate::report::{fmt_f64, write_json, CsvTable};

use super::scenario::{self, GeneratorKind};
use super::{CliError, RunContext};

/// Gate on `|product − 1|` for the unit-product claim. Generic systems land
/// outside it — that is a finding the exit code reports, not a failure.
pub const PRODUCT_CLAIM_TOL: f64 = 1e-4;

/// Exit status for "audits ran, some measured claim out of tolerance".
pub const EXIT_OUT_OF_TOL: i32 = 2;

/// Denominator cutoff below which a construction is reported degenerate.
const DEGENERATE_TOL: f64 = 1e-14;

/// Reproduction gate for the built-in example's frozen values.
const EXAMPLE_GATE: f64 = 1e-12;

fn products_csv(audit: &SystemAudit) -> CsvTable {
    let mut csv = CsvTable::new(&["i", "norm_x", "dual_norm_f", "product", "defect_row_max"]);
    for row in &audit.rows {
        csv.push(vec![
            row.index.to_string(),
            fmt_f64(row.norm_x),
            fmt_f64(row.dual_norm_f),
            fmt_f64(row.product),
            fmt_f64(row.defect_row_max),
        ]);
    }
    csv
}

fn write_json_report(ctx: &RunContext, file: &str, value: &serde_json::Value) -> Result<(), CliError> {
    let path = ctx.out_path(file);
    write_json(&path, value).map_err(|e| CliError::io(&path, e))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn write_csv_report(ctx: &RunContext, file: &str, csv: &CsvTable) -> Result<(), CliError> {
    let path = ctx.out_path(file);
    csv.write_to(&path).map_err(|e| CliError::io(&path, e))?;
    println!("wrote {}", path.display());
    Ok(())
}

/// Whether an audit satisfies both the biorthogonality-defect gate and the
/// unit-product claim.
fn claim_within_tol(audit: &SystemAudit, defect_tol: f64) -> bool {
    audit.defect <= defect_tol
        && audit.max_product <= 1.0 + PRODUCT_CLAIM_TOL
        && audit.min_product >= 1.0 - PRODUCT_CLAIM_TOL
}

/// Audit the built-in 2-dimensional worked example.
///
/// Exit 0 only when the frozen values — products `(√2, √2)` and identity
/// pairing — reproduce within `1e−12`; the scaled functionals' readings are
/// reported either way.
pub fn cmd_audit_example(ctx: &RunContext) -> Result<i32, CliError> {
    let report = worked_example::audit(ctx.tol.unwrap_or(1e-9));
    let name = "example12";

    let value = json!({
        "name": name,
        "report": serde_json::to_value(&report).expect("report serializes"),
    });
    write_json_report(ctx, &format!("{name}.audit.json"), &value)?;
    write_csv_report(ctx, &format!("{name}.products.csv"), &products_csv(&report.audit))?;

    let sqrt2 = std::f64::consts::SQRT_2;
    let product_err = report
        .base_products
        .iter()
        .map(|&p| (p - sqrt2).abs())
        .fold(0.0, f64::max);
    println!(
        "audit-example: products = ({}, {}), pairing defect = {}",
        fmt_f64(report.base_products[0]),
        fmt_f64(report.base_products[1]),
        fmt_f64(report.defect),
    );
    for flag in &report.flags {
        println!("  flag: {flag}");
    }
    if product_err <= EXAMPLE_GATE && report.defect <= EXAMPLE_GATE {
        println!("status: reproduced within {EXAMPLE_GATE:e}");
        Ok(0)
    } else {
        println!(
            "status: out of tolerance (product error {}, pairing defect {})",
            fmt_f64(product_err),
            fmt_f64(report.defect),
        );
        Ok(EXIT_OUT_OF_TOL)
    }
}

/// Run the constructions a scenario selects and audit each result.
pub fn cmd_construct(ctx: &RunContext, file: &Path) -> Result<i32, CliError> {
    let scn = scenario::load_scenario(file)?;
    let space = NormSpec::from_json(&scn.space)?;
    let system = scenario::build_system(&space, &scn.system, ctx.seed)?;
    let defect_tol = ctx.tol.unwrap_or(scn.tolerances.defect);

    let mut constructions: Vec<Construction> = Vec::new();
    for c in &scn.constructions {
        if !constructions.contains(c) {
            constructions.push(*c);
        }
    }
    let needs_hilbert = constructions
        .iter()
        .any(|c| matches!(c, Construction::Literal | Construction::Complement));
    let hilbert = if needs_hilbert {
        Some(scenario::build_hilbert(&space, &system, &scn.hilbert)?)
    } else {
        None
    };

    let mut entries = serde_json::Map::new();
    let mut csv =
        CsvTable::new(&["construction", "i", "norm_x", "dual_norm_f", "product", "defect_row_max"]);
    let mut trace_csv = CsvTable::new(&["construction", "index", "iteration", "objective", "gap"]);
    let mut all_ok = true;

    for &c in &constructions {
        let (bi, extension): (BiorthogonalSystem, Option<Vec<ExtensionResult>>) = match c {
            Construction::MinNorm => {
                let (bi, results) = min_biorthogonal_functionals(&system)?;
                (bi, Some(results))
            }
            gram_based => {
                let hs = hilbert.as_ref().expect("hilbert built when a Gram construction runs");
                (construct_biorthogonal(hs, &system, gram_based, DEGENERATE_TOL)?, None)
            }
        };
        let audit = audit_products(&bi, defect_tol);
        for row in &audit.rows {
            csv.push(vec![
                c.label().to_string(),
                row.index.to_string(),
                fmt_f64(row.norm_x),
                fmt_f64(row.dual_norm_f),
                fmt_f64(row.product),
                fmt_f64(row.defect_row_max),
            ]);
        }
        let ok = claim_within_tol(&audit, defect_tol);
        all_ok &= ok;
        println!(
            "construct {}: {} defect = {}, products in [{}, {}]{}",
            scn.name,
            c.label(),
            fmt_f64(audit.defect),
            fmt_f64(audit.min_product),
            fmt_f64(audit.max_product),
            if ok { "" } else { " (out of tolerance)" },
        );
        let mut entry = json!({
            "audit": serde_json::to_value(&audit).expect("audit serializes"),
            "functionals": bi
                .functionals()
                .iter()
                .map(|f| f.coords().iter().copied().collect::<Vec<f64>>())
                .collect::<Vec<_>>(),
            "claim_within_tol": ok,
        });
        if let Some(results) = extension {
            entry["extension"] =
                serde_json::Value::Array(results.iter().map(|r| r.to_json()).collect());
            if ctx.trace {
                for (i, r) in results.iter().enumerate() {
                    for t in &r.trace {
                        trace_csv.push(vec![
                            c.label().to_string(),
                            i.to_string(),
                            t.iteration.to_string(),
                            fmt_f64(t.objective),
                            fmt_f64(t.gap),
                        ]);
                    }
                }
            }
        }
        entries.insert(c.label().to_string(), entry);
    }

    let coincidence = if constructions.contains(&Construction::Literal)
        && constructions.contains(&Construction::Complement)
    {
        let hs = hilbert.as_ref().expect("both Gram constructions selected");
        let rep = coincidence_report(hs, &system, defect_tol)?;
        println!(
            "construct {}: literal/complement coincide = {}, G-orthogonal = {}",
            scn.name, rep.coincide, rep.g_orthogonal,
        );
        Some(serde_json::to_value(&rep).expect("report serializes"))
    } else {
        None
    };

    // The norm-decreasing bound only applies to normalized families; when the
    // configured family is not, record why instead of failing the run.
    let continuity = hilbert.as_ref().map(|hs| {
        match hs.check_continuity(system.vectors(), scn.tolerances.continuity) {
            Ok(rep) => json!({ "report": rep }),
            Err(e) => json!({ "skipped": e.to_string() }),
        }
    });

    let hilbert_summary = hilbert.as_ref().map(|hs| {
        json!({
            "t": hs.weights().iter().copied().collect::<Vec<f64>>(),
            "min_eigenvalue": hs.min_eigenvalue(),
            "definiteness": hs.definiteness(1e-10),
        })
    });

    let value = json!({
        "name": scn.name,
        "space": space.to_json(),
        "system": system.to_json(),
        "defect_tol": defect_tol,
        "constructions": serde_json::Value::Object(entries),
        "coincidence": coincidence,
        "continuity": continuity,
        "hilbert": hilbert_summary,
    });
    write_json_report(ctx, &format!("{}.audit.json", scn.name), &value)?;
    write_csv_report(ctx, &format!("{}.products.csv", scn.name), &csv)?;
    if ctx.trace && !trace_csv.is_empty() {
        write_csv_report(ctx, &format!("{}.trace.csv", scn.name), &trace_csv)?;
    }
    Ok(if all_ok { 0 } else { EXIT_OUT_OF_TOL })
}

/// Sweep `ℓ_p^n` over a dimension range and tabulate product statistics.
pub fn cmd_sweep(ctx: &RunContext, file: &Path) -> Result<i32, CliError> {
    let sw = scenario::load_sweep(file)?;
    let name = sw.name.clone().unwrap_or_else(|| "sweep".to_string());
    let seed0 = sw.seed.or(ctx.seed);
    if sw.generator.needs_seed() && seed0.is_none() {
        return Err(CliError::Usage(format!(
            "sweep generator {:?} requires a seed (file field or --seed)",
            sw.generator.label()
        )));
    }

    let mut columns = vec!["n", "construction", "max_product", "min_product", "defect"];
    if ctx.trace {
        columns.push("wall_ms");
    }
    let mut csv = CsvTable::new(&columns);
    let mut all_ok = true;

    for n in sw.n_min..=sw.n_max {
        let space = NormSpec::pnorm(n, sw.p)?;
        let seed_n = seed0.map(|s| s.wrapping_add(n as u64));
        let system = build_sweep_system(&space, sw.generator, seed_n)?;
        let needs_hilbert = sw
            .constructions
            .iter()
            .any(|c| matches!(c, Construction::Literal | Construction::Complement));
        let hilbert = if needs_hilbert {
            let family = build_duality_family(&space, system.vectors())?;
            Some(HilbertStructure::new(space.clone(), family, geometric_weights(system.len()))?)
        } else {
            None
        };
        for &c in &sw.constructions {
            let start = Instant::now();
            let bi = match c {
                Construction::MinNorm => min_biorthogonal_functionals(&system)?.0,
                gram_based => {
                    let hs = hilbert.as_ref().expect("hilbert built when needed");
                    construct_biorthogonal(hs, &system, gram_based, DEGENERATE_TOL)?
                }
            };
            let audit = audit_products(&bi, ctx.tol.unwrap_or(DEFECT_TOL));
            all_ok &= claim_within_tol(&audit, ctx.tol.unwrap_or(DEFECT_TOL));
            let mut row = vec![
                n.to_string(),
                c.label().to_string(),
                fmt_f64(audit.max_product),
                fmt_f64(audit.min_product),
                fmt_f64(audit.defect),
            ];
            if ctx.trace {
                row.push(start.elapsed().as_millis().to_string());
            }
            csv.push(row);
        }
    }

    write_csv_report(ctx, &format!("{name}.sweep.csv"), &csv)?;
    println!(
        "sweep {name}: n = {}..={}, p = {}, generator = {}",
        sw.n_min,
        sw.n_max,
        sw.p,
        sw.generator.label(),
    );
    Ok(if all_ok { 0 } else { EXIT_OUT_OF_TOL })
}

fn build_sweep_system(
    space: &NormSpec,
    generator: GeneratorKind,
    seed: Option<u64>,
) -> Result<SystemOfVectors, CliError> {
    match generator {
        GeneratorKind::Random => Ok(crate::biortho::random_system(
            space,
            seed.expect("seed checked before the sweep loop"),
        )?),
        GeneratorKind::Auerbach => Ok(auerbach_search(
            space,
            64,
            seed.expect("seed checked before the sweep loop"),
        )?
        .system),
        GeneratorKind::StandardBasis => Ok(SystemOfVectors::standard_basis(space.clone())),
        GeneratorKind::Example12 => unreachable!("rejected by sweep validation"),
    }
}

/// Run the Auerbach determinant-maximization search on `ℓ_p^dim`.
pub fn cmd_auerbach(
    ctx: &RunContext,
    dim: usize,
    p_text: &str,
    max_sweeps: usize,
) -> Result<i32, CliError> {
    let p = parse_exponent(p_text)?;
    let space = NormSpec::pnorm(dim, p)?;
    let seed = ctx
        .seed
        .ok_or_else(|| CliError::Usage("auerbach requires --seed <u64>".to_string()))?;
    let outcome = auerbach_search(&space, max_sweeps, seed)?;
    let audit = audit_products(&outcome.bi, ctx.tol.unwrap_or(DEFECT_TOL));

    let name = format!("auerbach-l{p}-d{dim}-seed{seed}");
    let mut value = json!({
        "name": name,
        "space": space.to_json(),
        "system": outcome.bi.to_json(),
        "audit": serde_json::to_value(&audit).expect("audit serializes"),
        "eps": outcome.eps,
        "converged": outcome.converged,
        "sweeps": outcome.sweeps,
        "final_det": outcome.det_trace.last().copied(),
    });
    if ctx.trace {
        value["det_trace"] = serde_json::to_value(&outcome.det_trace).expect("trace serializes");
    }
    write_json_report(ctx, &format!("{name}.audit.json"), &value)?;
    write_csv_report(ctx, &format!("{name}.products.csv"), &products_csv(&audit))?;

    println!(
        "auerbach {}: eps = {}, converged = {} after {} sweeps, |det| = {}",
        space.label(),
        fmt_f64(outcome.eps),
        outcome.converged,
        outcome.sweeps,
        fmt_f64(outcome.det_trace.last().copied().unwrap_or(0.0)),
    );
    let ok = outcome.converged && outcome.eps <= PRODUCT_CLAIM_TOL;
    Ok(if ok { 0 } else { EXIT_OUT_OF_TOL })
}

fn parse_exponent(text: &str) -> Result<Exponent, CliError> {
    if text == "inf" {
        return Ok(Exponent::Infinity);
    }
    text.parse::<f64>().map(Exponent::Finite).map_err(|_| {
        CliError::Usage(format!("invalid exponent {text:?}: expected a number or \"inf\""))
    })
}
