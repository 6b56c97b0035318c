//! llab: Legendrian invariants of positive braid closures from the command
//! line. Subcommands compute the Chekanov-Eliashberg DGA, normal rulings,
//! augmentation counts and strata over small finite fields, moduli
//! dimensions and dual-boundary reports, quiver representation checks,
//! Stokes braids of formal irregular types, Newton polygon slopes, SVG
//! renderings, and a full per-braid verification battery.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain error (e.g. a
//! disconnected closure where connectivity is required), 4 invariant
//! violation (a theorem-level cross-check failed).

mod output;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use llab_core::augvar::{enumerate_augmentations, point_counts, stratify};
use llab_core::braidfront::{
    cylindrical_closure, ng_resolution, parse_braid, rainbow_closure, BasepointMode, FrontDiagram,
};
use llab_core::dga::build_dga;
use llab_core::render;
use llab_core::rulings::{
    classify_and_count, dimension_and_top_ruling, dual_boundary_type, enumerate_rulings,
    eye_decomposition, predicted_counts,
};
use llab_core::sheafrep::{
    build_quiver, equivariance_and_injectivity, phi_of_augmentation, sheaf_count_oracle_n2,
    validate_rep,
};
use llab_core::stokes::{galois_orbits, newton_slopes, parse_formal_type, stokes_braid};
use output::{CliError, Format};

#[derive(Parser)]
#[command(name = "llab", version, about = "Legendrian invariants of positive braid closures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    AllCusps,
    Single,
}

impl From<ModeArg> for BasepointMode {
    fn from(m: ModeArg) -> BasepointMode {
        match m {
            ModeArg::AllCusps => BasepointMode::AllCusps,
            ModeArg::Single => BasepointMode::Single,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generators, gradings and differentials of the rainbow-closure DGA.
    Dga {
        braid: String,
        #[arg(long, value_enum, default_value = "all-cusps")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Census of normal rulings with (s, r, d), euler characteristic and genus.
    Rulings {
        braid: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Augmentation counts over F_q with the ruling-predicted totals.
    AugCount {
        braid: String,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        q: Vec<u8>,
        #[arg(long, value_enum, default_value = "all-cusps")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Stratify augmentations by their Barannikov ruling and compare with
    /// the predicted stratum sizes.
    Strata {
        braid: String,
        #[arg(long, default_value_t = 3)]
        q: u8,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Moduli dimension d = s(ρ_m) - n + 1 from the all-switch ruling.
    Dim { braid: String },
    /// Dual boundary homotopy type report and the cell removal order.
    DualBoundary { braid: String },
    /// Quiver representation checks: Φ validity for every augmentation,
    /// torus equivariance, injectivity, and the 2-strand counting oracle.
    SheafCheck {
        braid: String,
        #[arg(long, default_value_t = 3)]
        q: u8,
    },
    /// Cylindrical braid word of the Stokes diagram of a formal type.
    StokesBraid {
        /// Inline formal type, e.g. "N=2; g = 2/3,0 t^-3; g = -2/3,0 t^-3"
        formal_type: String,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, default_value_t = 4096)]
        samples: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Positive Newton polygon slopes of a (δ-power, x-power) monomial list,
    /// e.g. "2,0 1,0 0,-3".
    Newton { points: String },
    /// Render a front, a ruling overlay, or a Stokes diagram as SVG.
    Render {
        #[arg(long, value_enum, default_value = "front")]
        kind: RenderKind,
        /// Braid word for front/ruling/cylindrical renders.
        #[arg(long)]
        braid: Option<String>,
        /// Ruling switch-string key (from `rulings`) for the overlay.
        #[arg(long)]
        ruling: Option<String>,
        /// Formal type for Stokes renders.
        #[arg(long)]
        formal_type: Option<String>,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, default_value_t = 1024)]
        samples: usize,
    },
    /// Run the full cross-check battery on one braid.
    Verify {
        braid: String,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        q: Vec<u8>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderKind {
    Front,
    Cylindrical,
    Ruling,
    Stokes,
}

fn front_of(braid: &str, mode: BasepointMode) -> Result<FrontDiagram, CliError> {
    let b = parse_braid(braid).map_err(CliError::usage)?;
    rainbow_closure(&b, mode).map_err(CliError::domain)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Dga { braid, mode, format } => {
            let front = front_of(&braid, mode.into())?;
            let lag = ng_resolution(&front).map_err(CliError::domain)?;
            let dga = build_dga(&lag).map_err(CliError::domain)?;
            output::emit_dga(&braid, &dga, format)
        }
        Command::Rulings { braid, format } => {
            let front = front_of(&braid, BasepointMode::AllCusps)?;
            let rulings = enumerate_rulings(&front).map_err(CliError::domain)?;
            let stats: Vec<_> = rulings
                .iter()
                .map(|r| classify_and_count(&front, r))
                .collect::<Result<_, _>>()
                .map_err(CliError::invariant)?;
            output::emit_rulings(&braid, &stats, format)
        }
        Command::AugCount { braid, q, mode, format } => {
            let front = front_of(&braid, mode.into())?;
            let lag = ng_resolution(&front).map_err(CliError::domain)?;
            let dga = build_dga(&lag).map_err(CliError::domain)?;
            let connected = front.braid().is_connected_closure();
            let mut rows = Vec::new();
            for &qv in &q {
                let observed =
                    enumerate_augmentations(&dga, qv).map_err(CliError::domain)?.len() as u64;
                let predicted = predicted_counts(&front, qv).map_err(CliError::domain)?;
                let counts = if connected && mode == ModeArg::AllCusps {
                    let single_front = front_of(&braid, BasepointMode::Single)?;
                    let single_dga =
                        build_dga(&ng_resolution(&single_front).map_err(CliError::domain)?)
                            .map_err(CliError::domain)?;
                    Some(point_counts(&dga, &single_dga, qv).map_err(CliError::invariant)?)
                } else {
                    None
                };
                rows.push(output::AugCountRow { q: qv, observed, predicted, counts });
            }
            output::emit_aug_counts(&braid, &rows, format)
        }
        Command::Strata { braid, q, format } => {
            let front = front_of(&braid, BasepointMode::AllCusps)?;
            let lag = ng_resolution(&front).map_err(CliError::domain)?;
            let dga = build_dga(&lag).map_err(CliError::domain)?;
            let augs = enumerate_augmentations(&dga, q).map_err(CliError::domain)?;
            let strata = stratify(&dga, &augs).map_err(CliError::invariant)?;
            let predicted = predicted_counts(&front, q).map_err(CliError::domain)?;
            output::emit_strata(&braid, q, &strata, &predicted, format)
        }
        Command::Dim { braid } => {
            let front = front_of(&braid, BasepointMode::AllCusps)?;
            let report = dimension_and_top_ruling(&front).map_err(CliError::domain)?;
            output::emit_json(&serde_json::json!({
                "schema": llab_core::SCHEMA,
                "braid": braid,
                "d": report.d,
                "top_ruling": report.top_ruling_key,
                "s_plus_2r": report.s_plus_2r,
                "num_rulings": report.num_rulings,
            }))
        }
        Command::DualBoundary { braid } => {
            let front = front_of(&braid, BasepointMode::AllCusps)?;
            let report = dual_boundary_type(&front).map_err(CliError::domain)?;
            output::emit_dual_boundary(&braid, &report)
        }
        Command::SheafCheck { braid, q } => {
            let front = front_of(&braid, BasepointMode::AllCusps)?;
            let lag = ng_resolution(&front).map_err(CliError::domain)?;
            let dga = build_dga(&lag).map_err(CliError::domain)?;
            let quiver = build_quiver(&front);
            let augs = enumerate_augmentations(&dga, q).map_err(CliError::domain)?;
            for eps in &augs {
                let rep = phi_of_augmentation(&front, eps).map_err(CliError::invariant)?;
                validate_rep(&quiver, &rep).map_err(CliError::invariant)?;
            }
            let equiv = equivariance_and_injectivity(&dga, q).map_err(CliError::invariant)?;
            if !(equiv.equivariant && equiv.injective && equiv.orbit_injective) {
                return Err(CliError::invariant(format!(
                    "equivariance/injectivity failed: {equiv:?}"
                )));
            }
            let oracle = if front.n == 2 && connected_braid(&braid)? {
                let b = parse_braid(&braid).map_err(CliError::usage)?;
                let count = sheaf_count_oracle_n2(&b, q).map_err(CliError::domain)?;
                let single_front = front_of(&braid, BasepointMode::Single)?;
                let single_dga =
                    build_dga(&ng_resolution(&single_front).map_err(CliError::domain)?)
                        .map_err(CliError::domain)?;
                let mb =
                    enumerate_augmentations(&single_dga, q).map_err(CliError::domain)?.len() as u64;
                if count != (q as u64 - 1) * mb {
                    return Err(CliError::invariant(format!(
                        "line-configuration count {count} != (q-1)·mb = {}",
                        (q as u64 - 1) * mb
                    )));
                }
                Some(count)
            } else {
                None
            };
            output::emit_json(&serde_json::json!({
                "schema": llab_core::SCHEMA,
                "braid": braid,
                "q": q,
                "augmentations": equiv.augmentations,
                "phi_valid": true,
                "equivariant": equiv.equivariant,
                "injective": equiv.injective,
                "orbit_injective": equiv.orbit_injective,
                "line_count_oracle": oracle,
            }))
        }
        Command::StokesBraid { formal_type, eps, samples, format } => {
            let tau = parse_formal_type(&formal_type).map_err(CliError::domain)?;
            let orbits = galois_orbits(&tau);
            let diag = stokes_braid(&tau, eps, samples).map_err(CliError::domain)?;
            output::emit_stokes(&orbits, &diag, format)
        }
        Command::Newton { points } => {
            let mut pts = Vec::new();
            for tok in points.split_whitespace() {
                let (a, b) = tok
                    .split_once(',')
                    .ok_or_else(|| CliError::usage(format!("bad point {tok:?}, expected i,j")))?;
                let i: i64 =
                    a.parse().map_err(|_| CliError::usage(format!("bad point {tok:?}")))?;
                let j: i64 =
                    b.parse().map_err(|_| CliError::usage(format!("bad point {tok:?}")))?;
                pts.push((i, j));
            }
            if pts.is_empty() {
                return Err(CliError::usage("empty monomial list".to_string()));
            }
            let slopes = newton_slopes(&pts);
            output::emit_json(&serde_json::json!({
                "schema": llab_core::SCHEMA,
                "points": pts,
                "positive_slopes": slopes.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            }))
        }
        Command::Render { kind, braid, ruling, formal_type, eps, samples } => {
            let svg = match kind {
                RenderKind::Front => {
                    let braid = braid.ok_or_else(|| CliError::usage("--braid required"))?;
                    render::front_svg(&front_of(&braid, BasepointMode::AllCusps)?)
                }
                RenderKind::Cylindrical => {
                    let braid = braid.ok_or_else(|| CliError::usage("--braid required"))?;
                    let b = parse_braid(&braid).map_err(CliError::usage)?;
                    render::front_svg(&cylindrical_closure(&b))
                }
                RenderKind::Ruling => {
                    let braid = braid.ok_or_else(|| CliError::usage("--braid required"))?;
                    let key = ruling.ok_or_else(|| CliError::usage("--ruling required"))?;
                    let front = front_of(&braid, BasepointMode::AllCusps)?;
                    let rulings = enumerate_rulings(&front).map_err(CliError::domain)?;
                    let r = rulings
                        .iter()
                        .find(|r| r.key() == key)
                        .ok_or_else(|| CliError::usage(format!("no ruling with key {key}")))?;
                    let eyes = eye_decomposition(front.n, &front.letters, r);
                    render::ruling_svg(&front, r, &eyes)
                }
                RenderKind::Stokes => {
                    let ft = formal_type
                        .ok_or_else(|| CliError::usage("--formal-type required"))?;
                    let tau = parse_formal_type(&ft).map_err(CliError::domain)?;
                    let diag = stokes_braid(&tau, eps, samples).map_err(CliError::domain)?;
                    render::stokes_svg(&diag)
                }
            };
            print!("{svg}");
            Ok(())
        }
        Command::Verify { braid, q, threads } => verify::run_verify(&braid, &q, threads),
    }
}

fn connected_braid(braid: &str) -> Result<bool, CliError> {
    Ok(parse_braid(braid).map_err(CliError::usage)?.is_connected_closure())
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}
