//! Command-line front end: verification suites, spectra, spring maps,
//! geometry reports, the P-representation tables and the Born-Oppenheimer
//! comparison, over a JSON run configuration.

use clap::{Parser, Subcommand};
use fourbody::config::{RunConfig, ValidatedConfig};
use fourbody::model::{self, SpecialModel, SpecialOperator};
use fourbody::rational::{parse_rat, rat_i, rat_string, rat_to_f64, Rat};
use fourbody::spectra::{self, EnergyValue, SpectrumLevel};
use fourbody::{geometry, reduced, report};
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fourbody",
    about = "Exact operator algebra for the four-body oscillator in the rho-representation",
    version
)]
struct Cli {
    /// JSON run configuration (defaults apply when absent).
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,
    /// Output path (stdout when absent).
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Output format: json | csv (csv applies to spectrum tables).
    #[arg(long, global = true)]
    format: Option<String>,
    /// Seed for the randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Model variant: generic | equal | atomic | molecular | three-center.
    #[arg(long, global = true)]
    variant: Option<String>,
    /// Graded-basis cutoff (<= 4).
    #[arg(long = "N", global = true)]
    n: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites and emit the JSON report
    /// (exit 0 iff no check fails).
    Verify,
    /// Emit the spectrum table of the configured operator.
    Spectrum,
    /// Spring-constant maps: exact forward, Newton inverse.
    Springs {
        /// forward | inverse
        #[arg(long, default_value = "forward")]
        direction: String,
        /// Six target spring constants "nu12,nu13,nu14,nu23,nu24,nu34" for
        /// the inverse map (defaults to the forward image of the configured
        /// gauge, i.e. a round trip).
        #[arg(long)]
        nu: Option<String>,
        /// Residual tolerance of the Newton iteration.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Geometric quantities and identities at a point.
    Geometry {
        /// Six comma-separated rho values "r12,r13,r14,r23,r24,r34"
        /// (default: the unit point).
        #[arg(long)]
        point: Option<String>,
    },
    /// P-representation tables: exactly-solvable Laguerre levels and the
    /// quasi-exactly-solvable sextic block.
    Prep {
        /// Number of exactly-solvable levels to list (N = 0..levels, <= 10).
        #[arg(long, default_value_t = 10)]
        levels: u32,
        /// QES coupling A as a rational; enables the QES block.
        #[arg(long)]
        qes_coupling: Option<String>,
        /// QES block size N.
        #[arg(long, default_value_t = 2)]
        qes_n: u32,
    },
    /// Born-Oppenheimer gap expansion against the exact model.
    Bo {
        /// Comma-separated light masses (rationals).
        #[arg(long, default_value = "1/1000,1/10000")]
        light: String,
    },
}

fn load_config(cli: &Cli) -> Result<(RunConfig, ValidatedConfig), fourbody::Error> {
    let mut raw = match &cli.config {
        Some(path) => {
            let bytes = std::fs::read(path)
                .map_err(|e| fourbody::Error::Config(format!("cannot read config: {e}")))?;
            RunConfig::parse_json(&bytes)?
        }
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        raw.seed = seed;
    }
    if let Some(variant) = &cli.variant {
        raw.variant = variant.clone();
        // variants that need infinite masses get them when the config still
        // holds the all-finite default
        let template = RunConfig::default();
        if raw.masses == template.masses {
            match variant.as_str() {
                "atomic" => raw.masses[0] = "inf".into(),
                "molecular" => {
                    raw.masses[0] = "inf".into();
                    raw.masses[1] = "inf".into();
                    raw.gauge[0] = "0".into();
                    raw.rho12.get_or_insert_with(|| "1".into());
                }
                "three-center" => {
                    for i in 0..3 {
                        raw.masses[i] = "inf".into();
                    }
                    raw.gauge[0] = "0".into();
                    raw.gauge[1] = "0".into();
                    raw.gauge[3] = "0".into();
                    raw.rho12.get_or_insert_with(|| "1".into());
                    raw.rho13.get_or_insert_with(|| "1".into());
                    raw.rho23.get_or_insert_with(|| "1".into());
                }
                _ => {}
            }
        }
    }
    if let Some(n) = cli.n {
        raw.n = n;
    }
    if let Some(fmt) = &cli.format {
        raw.format = Some(fmt.clone());
    }
    let validated = raw.validate()?;
    Ok((raw, validated))
}

fn emit(cli: &Cli, content: &str) -> Result<(), fourbody::Error> {
    match &cli.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| fourbody::Error::Config(format!("cannot write output: {e}"))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.write_all(b"\n"))
                .map_err(|e| fourbody::Error::Config(format!("cannot write output: {e}")))
        }
    }
}

fn spectrum_rows(cfg: &ValidatedConfig) -> Result<(Vec<SpectrumLevel>, Option<Rat>), fourbody::Error> {
    // base energy shift (potential curve) for the frozen-coordinate variants
    match &cfg.model {
        SpecialModel::Generic(mc) => {
            let h = model::build_h_es(mc, &cfg.gauge, &cfg.d);
            Ok((spectra::spectrum(&h, cfg.n)?, None))
        }
        SpecialModel::EqualMasses { m } => {
            let mc = geometry::MassConfig::equal(m.clone())?;
            let h = model::build_h_es(&mc, &cfg.gauge, &cfg.d);
            Ok((spectra::spectrum(&h, cfg.n)?, None))
        }
        SpecialModel::Atomic { .. } => {
            match model::build_special(&cfg.model, &cfg.gauge, &cfg.d)? {
                SpecialOperator::Six(h) => Ok((spectra::spectrum(&h, cfg.n)?, None)),
                _ => unreachable!("atomic is six-dimensional"),
            }
        }
        SpecialModel::MolecularTwoCenter { m, rho12 } => {
            let base = model::molecular_e0(m, &cfg.gauge, &cfg.d, rho12);
            match model::build_special(&cfg.model, &cfg.gauge, &cfg.d)? {
                SpecialOperator::Five(h) => Ok((spectra::spectrum(&h, cfg.n)?, Some(base))),
                _ => unreachable!("molecular is five-dimensional"),
            }
        }
        SpecialModel::ThreeCenter {
            m,
            rho12,
            rho13,
            rho23,
        } => {
            let base = model::three_center_e0(m, &cfg.gauge, &cfg.d, rho12, rho13, rho23);
            match model::build_special(&cfg.model, &cfg.gauge, &cfg.d)? {
                SpecialOperator::Three(h) => Ok((spectra::spectrum(&h, cfg.n)?, Some(base))),
                _ => unreachable!("three-center is three-dimensional"),
            }
        }
    }
}

fn shifted_energy(level: &SpectrumLevel, base: &Option<Rat>) -> EnergyValue {
    match (base, &level.energy) {
        (None, e) => e.clone(),
        (Some(b), EnergyValue::Exact(e)) => EnergyValue::Exact(b + e),
        (Some(b), EnergyValue::Approx { value, residual }) => EnergyValue::Approx {
            value: rat_to_f64(b) + value,
            residual: *residual,
        },
    }
}

fn spectrum_csv(levels: &[SpectrumLevel], base: &Option<Rat>, variant: &str) -> String {
    let k = levels.first().map(|l| l.quantum_numbers.len()).unwrap_or(6);
    let prefix = if variant == "molecular" || variant == "three-center" {
        "k"
    } else {
        "n"
    };
    let all_exact = levels
        .iter()
        .all(|l| matches!(l.energy, EnergyValue::Exact(_)));
    let mut out = String::new();
    for i in 1..=k {
        out.push_str(&format!("{prefix}{i},"));
    }
    if all_exact {
        out.push_str("energy_numerator,energy_denominator,multiplicity\n");
    } else {
        out.push_str("energy,residual,multiplicity\n");
    }
    for level in levels {
        for q in &level.quantum_numbers {
            out.push_str(&format!("{q},"));
        }
        match (all_exact, shifted_energy(level, base)) {
            (true, EnergyValue::Exact(e)) => {
                out.push_str(&format!("{},{},{}\n", e.numer(), e.denom(), level.multiplicity));
            }
            (_, e) => {
                let (v, r) = match e {
                    EnergyValue::Exact(x) => (rat_to_f64(&x), 0.0),
                    EnergyValue::Approx { value, residual } => (value, residual),
                };
                out.push_str(&format!("{v:.12e},{r:.3e},{}\n", level.multiplicity));
            }
        }
    }
    out
}

fn spectrum_json(levels: &[SpectrumLevel], base: &Option<Rat>) -> Value {
    let rows: Vec<Value> = levels
        .iter()
        .map(|level| {
            let energy = match shifted_energy(level, base) {
                EnergyValue::Exact(e) => json!({"exact": rat_string(&e)}),
                EnergyValue::Approx { value, residual } => {
                    json!({"value": value, "residual": residual})
                }
            };
            json!({
                "quantum_numbers": level.quantum_numbers,
                "energy": energy,
                "multiplicity": level.multiplicity,
            })
        })
        .collect();
    json!({"levels": rows})
}

fn parse_six(s: &str, what: &str) -> Result<[Rat; 6], fourbody::Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 6 {
        return Err(fourbody::Error::Config(format!(
            "{what} takes six comma-separated rationals"
        )));
    }
    let mut out = std::array::from_fn(|_| Rat::from_integer(0.into()));
    for (i, p) in parts.iter().enumerate() {
        out[i] = parse_rat(p)?;
    }
    Ok(out)
}

fn mass_config_of(model: &SpecialModel) -> Result<geometry::MassConfig, fourbody::Error> {
    match model {
        SpecialModel::Generic(mc) => Ok(mc.clone()),
        SpecialModel::EqualMasses { m } => geometry::MassConfig::equal(m.clone()),
        _ => Err(fourbody::Error::Config(
            "this command needs finite masses (variant generic or equal)".into(),
        )),
    }
}

fn cmd_verify(cli: &Cli, cfg: &ValidatedConfig) -> Result<bool, fourbody::Error> {
    let rep = report::run_full_suite(cfg);
    let body = serde_json::to_string_pretty(&rep)
        .map_err(|e| fourbody::Error::Config(format!("serialize: {e}")))?;
    emit(cli, &body)?;
    Ok(rep.all_green())
}

fn cmd_spectrum(cli: &Cli, raw: &RunConfig, cfg: &ValidatedConfig) -> Result<(), fourbody::Error> {
    let (levels, base) = spectrum_rows(cfg)?;
    let format = raw.format.clone().unwrap_or_else(|| "csv".into());
    if format == "csv" {
        emit(cli, spectrum_csv(&levels, &base, &raw.variant).trim_end())
    } else {
        let body = serde_json::to_string_pretty(&spectrum_json(&levels, &base))
            .map_err(|e| fourbody::Error::Config(format!("serialize: {e}")))?;
        emit(cli, &body)
    }
}

fn cmd_springs(
    cli: &Cli,
    cfg: &ValidatedConfig,
    direction: &str,
    nu_arg: &Option<String>,
    tol: f64,
) -> Result<(), fourbody::Error> {
    let mc = mass_config_of(&cfg.model)?;
    match direction {
        "forward" => {
            let nu = model::forward_spring_map(&mc, &cfg.gauge);
            let names = ["nu12", "nu13", "nu14", "nu23", "nu24", "nu34"];
            let map: serde_json::Map<String, Value> = names
                .iter()
                .zip(nu.0.iter())
                .map(|(n, v)| (n.to_string(), Value::String(rat_string(v))))
                .collect();
            let body = serde_json::to_string_pretty(&json!({"direction": "forward", "nu": map}))
                .unwrap();
            emit(cli, &body)
        }
        "inverse" => {
            let target = match nu_arg {
                Some(s) => model::SpringConstants(parse_six(s, "--nu")?),
                None => model::forward_spring_map(&mc, &cfg.gauge),
            };
            let seed = [1.0f64; 6];
            match model::inverse_spring_map(&mc, &target, seed, tol) {
                Ok(gp) => {
                    let body = serde_json::to_string_pretty(&json!({
                        "direction": "inverse",
                        "gauge": gp.to_vec(),
                        "residual_tolerance": tol,
                        "positivity": "all-positive",
                    }))
                    .unwrap();
                    emit(cli, &body)
                }
                Err(fourbody::Error::NegativeRoot(gp)) => {
                    let body = serde_json::to_string_pretty(&json!({
                        "direction": "inverse",
                        "gauge": gp,
                        "residual_tolerance": tol,
                        "positivity": "negative-root",
                    }))
                    .unwrap();
                    emit(cli, &body)
                }
                Err(e) => Err(e),
            }
        }
        other => Err(fourbody::Error::Config(format!(
            "unknown direction {other:?} (forward | inverse)"
        ))),
    }
}

fn cmd_geometry(cli: &Cli, cfg: &ValidatedConfig, point: &Option<String>) -> Result<(), fourbody::Error> {
    let mc = mass_config_of(&cfg.model)?;
    let coords = match point {
        Some(s) => parse_six(s, "--point")?,
        None => std::array::from_fn(|_| Rat::from_integer(1.into())),
    };
    let x = geometry::RhoPoint::new(coords)?;
    let det = geometry::det_identity_check(&mc, &x);
    let mut body = json!({
        "point": x.0.iter().map(rat_string).collect::<Vec<_>>(),
        "v4_squared": rat_string(&geometry::v4_squared(&x)),
        "cayley_menger": rat_string(&geometry::cayley_menger_v4_squared(&x)),
        "domain": geometry::domain_check(&x),
        "det_identity": {
            "lhs": rat_string(&det.lhs),
            "rhs": rat_string(&det.rhs),
            "equal": det.equal,
        },
        "sum_v2m": rat_string(&geometry::sum_v2m(&mc, &x)),
        "sum_v3m": rat_string(&geometry::sum_v3m(&mc, &x)),
    });
    if geometry::domain_check(&x) == geometry::DomainVerdict::Interior {
        let (tr, or) = geometry::gauge_factor_and_veff(&mc, &cfg.d, &x)?;
        body["veff"] = json!({
            "transcribed": rat_string(&tr),
            "oracle": rat_string(&or),
            "equal": tr == or,
        });
        body["radial_measure"] = match geometry::radial_measure(&cfg.d, &x)? {
            geometry::MeasureValue::Exact(v) => json!({"exact": rat_string(&v)}),
            geometry::MeasureValue::Symbolic(base, exp) => json!({
                "base": rat_string(&base),
                "exponent": rat_string(&exp),
            }),
        };
    }
    emit(cli, &serde_json::to_string_pretty(&body).unwrap())
}

fn cmd_prep(
    cli: &Cli,
    raw: &RunConfig,
    cfg: &ValidatedConfig,
    levels: u32,
    qes_coupling: &Option<String>,
    qes_n: u32,
) -> Result<(), fourbody::Error> {
    if levels > 10 {
        return Err(fourbody::Error::Config("levels is capped at 10".into()));
    }
    let mut rows = Vec::new();
    for n in 0..=levels {
        let (_, e) = reduced::es_laguerre(&cfg.d, &cfg.gauge.omega, n)?;
        rows.push((n, e));
    }
    let format = raw.format.clone().unwrap_or_else(|| "json".into());
    if format == "csv" && qes_coupling.is_none() {
        let mut out = String::from("N,energy_numerator,energy_denominator\n");
        for (n, e) in &rows {
            out.push_str(&format!("{n},{},{}\n", e.numer(), e.denom()));
        }
        return emit(cli, out.trim_end());
    }
    let mut body = json!({
        "es_levels": rows
            .iter()
            .map(|(n, e)| json!({"N": n, "energy": rat_string(e)}))
            .collect::<Vec<_>>(),
        "gap": rat_string(&(rat_i(4) * &cfg.gauge.omega)),
    });
    if let Some(a) = qes_coupling {
        let q = reduced::QesParams {
            coupling: parse_rat(a)?,
            n: qes_n,
            omega: cfg.gauge.omega.clone(),
            d: cfg.d.clone(),
        };
        let m = reduced::qes_model(&q)?;
        body["qes"] = json!({
            "N": qes_n,
            "coupling": a,
            "eigenvalues": m.eigenvalues,
            "all_real": m.all_real,
            "potential": {
                "inverse_p": rat_string(&m.potential.inverse_p),
                "linear": rat_string(&m.potential.linear),
                "quadratic": rat_string(&m.potential.quadratic),
                "cubic": rat_string(&m.potential.cubic),
                "constant": rat_string(&m.potential.constant),
            },
            "prefactor_exponent": rat_string(&m.prefactor_exponent),
        });
    }
    emit(cli, &serde_json::to_string_pretty(&body).unwrap())
}

fn cmd_bo(cli: &Cli, cfg: &ValidatedConfig, light: &str) -> Result<(), fourbody::Error> {
    let masses: Result<Vec<Rat>, _> = light.split(',').map(parse_rat).collect();
    let exp = fourbody::bo::bo_gap_expansion_check(&cfg.gauge, &cfg.d, &masses?)?;
    let body = json!({
        "gaps": exp.gaps.iter().map(|(m, g)| json!({"m": m, "gap": g})).collect::<Vec<_>>(),
        "leading": exp.leading,
        "leading_displayed": exp.leading_displayed,
        "second": exp.second,
        "second_displayed": exp.second_displayed,
        "gap_ratio": exp.gap_ratio,
    });
    emit(cli, &serde_json::to_string_pretty(&body).unwrap())
}

fn run() -> Result<bool, fourbody::Error> {
    let cli = Cli::parse();
    let (raw, cfg) = load_config(&cli)?;
    match &cli.command {
        Command::Verify => cmd_verify(&cli, &cfg),
        Command::Spectrum => cmd_spectrum(&cli, &raw, &cfg).map(|_| true),
        Command::Springs {
            direction,
            nu,
            tol,
        } => cmd_springs(&cli, &cfg, direction, nu, *tol).map(|_| true),
        Command::Geometry { point } => cmd_geometry(&cli, &cfg, point).map(|_| true),
        Command::Prep {
            levels,
            qes_coupling,
            qes_n,
        } => cmd_prep(&cli, &raw, &cfg, *levels, qes_coupling, *qes_n).map(|_| true),
        Command::Bo { light } => cmd_bo(&cli, &cfg, light).map(|_| true),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                fourbody::Error::Config(_) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
