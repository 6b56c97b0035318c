//! Output formatting: JSON documents stamped with the schema tag, CSV
//! tables, and the typed error-to-exit-code mapping.

use clap::ValueEnum;
use llab_core::algebra::poly::eliminate_t;
use llab_core::augvar::{PointCounts, Stratum};
use llab_core::rulings::{CountPrediction, DualBoundaryReport, DualCell, RulingStats};
use llab_core::stokes::{OrbitReport, StokesDiagram};
use llab_core::Dga;
use serde_json::json;
use std::collections::BTreeMap;
use std::fmt::Display;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(e: impl Display) -> CliError {
        CliError { code: 2, message: e.to_string() }
    }
    pub fn domain(e: impl Display) -> CliError {
        CliError { code: 3, message: e.to_string() }
    }
    pub fn invariant(e: impl Display) -> CliError {
        CliError { code: 4, message: e.to_string() }
    }
}

pub fn emit_json(value: &serde_json::Value) -> Result<(), CliError> {
    println!("{}", serde_json::to_string_pretty(value).map_err(CliError::domain)?);
    Ok(())
}

pub fn emit_dga(braid: &str, dga: &Dga, format: Format) -> Result<(), CliError> {
    let gens: Vec<_> = dga
        .generators
        .iter()
        .map(|g| {
            json!({
                "name": g.sym.to_string(),
                "grading": g.grading,
                "differential": dga.differential(g.sym).to_string(),
            })
        })
        .collect();
    // the eliminated cusp polynomials Q_i, when the shape applies
    let cusp_polys = eliminate_t(dga)
        .ok()
        .map(|pairs| pairs.iter().map(|(_, qp)| qp.to_string()).collect::<Vec<_>>());
    match format {
        Format::Json => emit_json(&json!({
            "schema": llab_core::SCHEMA,
            "braid": braid,
            "n": dga.n,
            "letters": dga.letters,
            "basepoints": dga.num_basepoints,
            "generators": gens,
            "cusp_polynomials": cusp_polys,
        })),
        Format::Csv => {
            println!("name,grading,differential");
            for g in &dga.generators {
                println!("{},{},\"{}\"", g.sym, g.grading, dga.differential(g.sym));
            }
            Ok(())
        }
    }
}

pub fn emit_rulings(braid: &str, stats: &[RulingStats], format: Format) -> Result<(), CliError> {
    match format {
        Format::Json => emit_json(&json!({
            "schema": llab_core::SCHEMA,
            "braid": braid,
            "count": stats.len(),
            "rulings": stats.iter().map(|st| json!({
                "key": st.key,
                "s": st.s,
                "r": st.r,
                "d": st.d,
                "euler": st.euler,
                "genus": st.genus,
                "eyes": st.eyes.eyes.len(),
                "switch_incidence": st.eyes.switch_incidence,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            println!("key,s,r,d,euler,genus");
            for st in stats {
                let genus = st.genus.map(|g| g.to_string()).unwrap_or_default();
                println!("{},{},{},{},{},{}", st.key, st.s, st.r, st.d, st.euler, genus);
            }
            Ok(())
        }
    }
}

pub struct AugCountRow {
    pub q: u8,
    pub observed: u64,
    pub predicted: CountPrediction,
    pub counts: Option<PointCounts>,
}

pub fn emit_aug_counts(braid: &str, rows: &[AugCountRow], format: Format) -> Result<(), CliError> {
    match format {
        Format::Json => emit_json(&json!({
            "schema": llab_core::SCHEMA,
            "braid": braid,
            "rows": rows.iter().map(|r| json!({
                "q": r.q,
                "observed": r.observed,
                "predicted_total": r.predicted.aug_total,
                "predicted_mb": r.predicted.mb_total,
                "counts": r.counts.as_ref().map(|c| json!({
                    "aug_all_cusps": c.aug_all_cusps,
                    "aug_single": c.aug_single,
                    "mb": c.mb,
                })),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            println!("q,observed,predicted_total,mb");
            for r in rows {
                let mb = r.counts.as_ref().map(|c| c.mb.to_string()).unwrap_or_default();
                println!("{},{},{},{}", r.q, r.observed, r.predicted.aug_total, mb);
            }
            Ok(())
        }
    }
}

pub fn emit_strata(
    braid: &str,
    q: u8,
    strata: &BTreeMap<String, Stratum>,
    predicted: &CountPrediction,
    format: Format,
) -> Result<(), CliError> {
    let pred_of = |key: &str| {
        predicted.per_ruling.iter().find(|p| p.key == key).map(|p| p.aug_stratum).unwrap_or(0)
    };
    match format {
        Format::Json => emit_json(&json!({
            "schema": llab_core::SCHEMA,
            "braid": braid,
            "q": q,
            "strata": strata.values().map(|st| json!({
                "ruling": st.ruling_key,
                "s": st.s,
                "r": st.r,
                "predicted": pred_of(&st.ruling_key),
                "observed": st.members.len(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            println!("braid,q,ruling,s,r,predicted,observed");
            for st in strata.values() {
                println!(
                    "\"{}\",{},{},{},{},{},{}",
                    braid,
                    q,
                    st.ruling_key,
                    st.s,
                    st.r,
                    pred_of(&st.ruling_key),
                    st.members.len()
                );
            }
            Ok(())
        }
    }
}

pub fn emit_dual_boundary(braid: &str, report: &DualBoundaryReport) -> Result<(), CliError> {
    let label = match report.homotopy_type {
        DualCell::Sphere(k) => format!("S^{k}"),
        DualCell::Contractible => "contractible".to_string(),
        DualCell::Empty => "undefined (moduli space is a point)".to_string(),
    };
    emit_json(&json!({
        "schema": llab_core::SCHEMA,
        "braid": braid,
        "d": report.d,
        "dual_boundary": label,
        "defined": report.defined,
        "removal_order": report.removal_order.iter().map(|c| json!({
            "ruling": c.ruling_key,
            "dim": c.dim,
            "torus_rank": c.torus_rank,
            "affine_rank": c.affine_rank,
            "cell": match c.cell {
                DualCell::Sphere(k) => format!("S^{k}"),
                DualCell::Contractible => "contractible".to_string(),
                DualCell::Empty => "empty".to_string(),
            },
        })).collect::<Vec<_>>(),
    }))
}

pub fn emit_stokes(
    orbits: &OrbitReport,
    diag: &StokesDiagram,
    format: Format,
) -> Result<(), CliError> {
    let word = format!(
        "{}: {}",
        diag.word.n,
        diag.word.letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
    );
    match format {
        Format::Json => emit_json(&json!({
            "schema": llab_core::SCHEMA,
            "strands": diag.strands,
            "orbits": orbits.orbits.iter().map(|o| json!({
                "members": o.members,
                "size": o.size,
            })).collect::<Vec<_>>(),
            "reduced": orbits.reduced,
            "eps": diag.eps,
            "samples": diag.samples,
            "crossings": diag.crossings.iter().map(|c| json!({
                "theta": format!("{:.9}", c.theta),
                "level": c.level,
            })).collect::<Vec<_>>(),
            "braid": word,
        })),
        Format::Csv => {
            println!("theta,level");
            for c in &diag.crossings {
                println!("{:.9},{}", c.theta, c.level);
            }
            println!("braid,\"{word}\"");
            Ok(())
        }
    }
}
