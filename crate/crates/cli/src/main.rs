//! `grdt` — reproducible verification runs over character tables, twisted
//! unramified characteristics, and torsion quotients of truncated group-ring
//! unit groups. Every run writes a single JSON report whose default filename
//! is a content hash of the run configuration; identical configurations
//! produce byte-identical reports.

use clap::{Parser, Subcommand};
use grdt_core::chars::{character_table, xi_set};
use grdt_core::dt::{
    brute_force_units, dt_compute, verify_exponent_bound, verify_kernel_exponent,
    verify_global_annihilation, DtError,
};
use grdt_core::group::{load_group_json, GroupRef};
use grdt_core::ram::{
    annihilation_exponent, load_global_json, load_local_json, table_of, twisted_c, RamError,
};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "grdt", version, about = "group-ring torsion quotient verifier")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// largest truncation level tried before giving up
    #[arg(long, global = true)]
    precision_cap: Option<u32>,
    /// sample count for randomized verification
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    /// RNG seed, echoed into every report
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// bound on internal parallelism
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// report path (default: content hash of the configuration)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Orders, classes, normal subgroups, and character kernels of a group
    GroupInfo { file: PathBuf },
    /// Full character table with degrees, values, and kernel sizes
    Chartable { file: PathBuf },
    /// Twisted unramified characteristic of a local or global datum
    Cfrak { file: PathBuf },
    /// Invariant factors and exponent bounds of the torsion quotient
    Dt { file: PathBuf },
    /// Bound, kernel-exponent, and brute-force oracle verification
    Verify { file: PathBuf },
}

/// Failure classes mapped onto exit codes: input errors exit 2, precision
/// exhaustion exits 3, and a falsified mathematical check exits 1.
enum Failure {
    Input(String),
    Math(String),
    Precision(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Math(_) => 1,
            Failure::Input(_) => 2,
            Failure::Precision(_) => 3,
        }
    }
    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Math(m) | Failure::Precision(m) => m,
        }
    }
}

impl From<DtError> for Failure {
    fn from(e: DtError) -> Failure {
        match e {
            DtError::PrecisionExhausted(_) => Failure::Precision(e.to_string()),
            DtError::NotPGroup(..) | DtError::Group(_) | DtError::Char(_) => {
                Failure::Input(e.to_string())
            }
            DtError::Ram(r) => Failure::from(r),
            _ => Failure::Math(e.to_string()),
        }
    }
}

impl From<RamError> for Failure {
    fn from(e: RamError) -> Failure {
        match e {
            RamError::ClosedFormMismatch => Failure::Math(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))
}

fn load_group_file(path: &Path) -> Result<GroupRef, Failure> {
    load_group_json(&read_file(path)?).map_err(|e| Failure::Input(e.to_string()))
}

/// The unique prime that can divide the order of an admissible group.
fn residue_prime(order: usize) -> Result<u64, Failure> {
    let mut n = order as u64;
    for p in 2..=n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            if n != 1 {
                return Err(Failure::Input(format!(
                    "group order {} is not a prime power",
                    order
                )));
            }
            return Ok(p);
        }
    }
    Err(Failure::Input("trivial group has no residue prime".into()))
}

fn cmd_group_info(group: &GroupRef) -> Result<(Value, bool), Failure> {
    let table = character_table(group).map_err(|e| Failure::Input(e.to_string()))?;
    let classes = group.conjugacy_classes();
    let normals = group.normal_subgroups();
    let xi = xi_set(&table);
    let report = json!({
        "name": group.name,
        "order": group.order,
        "abelian": group.is_abelian(),
        "exponent": group.exponent(),
        "class_sizes": classes.iter().map(Vec::len).collect::<Vec<_>>(),
        "normal_subgroups": normals.iter().map(|s| &s.members).collect::<Vec<_>>(),
        "character_kernels": xi.iter().map(|s| &s.members).collect::<Vec<_>>(),
    });
    Ok((report, true))
}

fn cmd_chartable(group: &GroupRef) -> Result<(Value, bool), Failure> {
    let table = character_table(group).map_err(|e| Failure::Input(e.to_string()))?;
    let chars: Vec<Value> = (0..table.irreducibles.len())
        .map(|i| {
            let chi = &table.irreducibles[i];
            json!({
                "degree": chi.degree_usize(),
                "values": chi.values,
                "kernel_size": table.kernel(chi).order(),
            })
        })
        .collect();
    let report = json!({
        "group": group.name,
        "order": group.order,
        "num_classes": table.reps.len(),
        "class_representatives": table.reps,
        "irreducibles": chars,
    });
    Ok((report, true))
}

fn cmd_cfrak(path: &Path, cap: Option<u32>) -> Result<(Value, bool), Failure> {
    let text = read_file(path)?;
    let sniff: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))?;
    if sniff.get("wild_places").is_some() {
        let g = load_global_json(&text)?;
        let report = verify_global_annihilation(&g)?;
        let table = character_table(&g.group).map_err(|e| Failure::Input(e.to_string()))?;
        let c = grdt_core::ram::global_c(&table, &g)?;
        let _ = cap;
        let value = json!({
            "kind": "global",
            "group": g.group.name,
            "wild_places": g.places.len(),
            "c": c.to_json(),
            "n": report.n,
            "power": report.power,
            "vacuous": report.vacuous,
            "class_trivial": report.class_trivial,
        });
        let ok = report.class_trivial;
        Ok((value, ok))
    } else {
        let d = load_local_json(&text)?;
        let table = table_of(&d)?;
        let validation = d.validate()?;
        let c = twisted_c(&table, &d)?;
        let exponent = annihilation_exponent(&table, &d)?;
        let value = json!({
            "kind": "local",
            "group": d.group.name,
            "residue_char": d.residue_char,
            "weakly_ramified": d.weakly_ramified(),
            "wild": d.wild(),
            "checks": validation.checks.iter()
                .map(|c| json!({"name": c.name, "ok": c.ok}))
                .collect::<Vec<_>>(),
            "closed_form_agreement": true,
            "c": c.to_json(),
            "annihilation_exponent": exponent,
            "inertia_index": d.inertia_index(),
        });
        let ok = validation.ok() && d.inertia_index() as u64 % exponent == 0;
        Ok((value, ok))
    }
}

fn cmd_dt(group: &GroupRef, cap: Option<u32>, seed: u64) -> Result<(Value, bool), Failure> {
    let p = residue_prime(group.order)?;
    let engine = dt_compute(group, p, cap)?;
    let bounds = verify_exponent_bound(&engine);
    let report = json!({
        "group": group.name,
        "p": p,
        "precision": engine.k,
        "invariant_factors": engine.invariant_factors,
        "exponent": engine.exponent(),
        "bounds": {"lower": bounds.lower, "upper": bounds.upper},
        "checks": {"bounds_ok": bounds.ok},
        "seed": seed,
    });
    Ok((report, bounds.ok))
}

fn cmd_verify(
    group: &GroupRef,
    cap: Option<u32>,
    samples: usize,
    seed: u64,
) -> Result<(Value, bool), Failure> {
    let p = residue_prime(group.order)?;
    let engine = dt_compute(group, p, cap)?;
    let bounds = verify_exponent_bound(&engine);
    let kernel = verify_kernel_exponent(&engine, samples, seed)?;
    // the exhaustive oracle only fits small rings
    let feasible = (p as f64).powi((engine.k as usize * group.order) as i32) <= 1.2e7;
    let oracle = if feasible {
        let r = brute_force_units(&engine)?;
        json!({
            "ring_size": r.ring_size,
            "unit_count": r.unit_count,
            "distinct_norms": r.distinct_norms,
            "all_in_generated": r.all_in_generated,
        })
    } else {
        Value::Null
    };
    let oracle_ok = oracle
        .get("all_in_generated")
        .map_or(true, |v| v.as_bool().unwrap_or(false));
    let ok = bounds.ok && kernel.ok() && oracle_ok;
    let report = json!({
        "group": group.name,
        "p": p,
        "precision": engine.k,
        "invariant_factors": engine.invariant_factors,
        "exponent": engine.exponent(),
        "bounds": {"lower": bounds.lower, "upper": bounds.upper},
        "kernel": {
            "samples": kernel.samples,
            "kernel_hits": kernel.kernel_hits,
            "power_failures": kernel.power_failures,
            "congruence_failures": kernel.congruence_failures,
        },
        "oracle": oracle,
        "checks": {"bounds_ok": bounds.ok, "kernel_ok": kernel.ok(), "oracle_ok": oracle_ok},
        "seed": seed,
    });
    Ok((report, ok))
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, bytes)
        .and_then(|_| std::fs::rename(&tmp, path))
        .map_err(|e| Failure::Input(format!("writing {}: {}", path.display(), e)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // ignore the error if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let (command, input) = match &cli.cmd {
        Cmd::GroupInfo { file } => ("group-info", file),
        Cmd::Chartable { file } => ("chartable", file),
        Cmd::Cfrak { file } => ("cfrak", file),
        Cmd::Dt { file } => ("dt", file),
        Cmd::Verify { file } => ("verify", file),
    };
    let config = json!({
        "command": command,
        "input": input.file_name().map(|s| s.to_string_lossy().into_owned()),
        "precision_cap": cli.precision_cap,
        "samples": cli.samples,
        "seed": cli.seed,
    });

    let result = match &cli.cmd {
        Cmd::GroupInfo { file } => load_group_file(file).and_then(|g| cmd_group_info(&g)),
        Cmd::Chartable { file } => load_group_file(file).and_then(|g| cmd_chartable(&g)),
        Cmd::Cfrak { file } => cmd_cfrak(file, cli.precision_cap),
        Cmd::Dt { file } => {
            load_group_file(file).and_then(|g| cmd_dt(&g, cli.precision_cap, cli.seed))
        }
        Cmd::Verify { file } => load_group_file(file)
            .and_then(|g| cmd_verify(&g, cli.precision_cap, cli.samples, cli.seed)),
    };

    match result {
        Ok((body, ok)) => {
            let report = json!({"config": config, "report": body, "ok": ok});
            let pretty = format!(
                "{}\n",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            let path = cli.out.unwrap_or_else(|| {
                let hash = Sha256::digest(config.to_string().as_bytes());
                let hex: String = hash.iter().take(8).map(|b| format!("{:02x}", b)).collect();
                PathBuf::from(format!("grdt-{}.json", hex))
            });
            if let Err(f) = write_atomic(&path, pretty.as_bytes()) {
                eprintln!("error: {}", f.message());
                return ExitCode::from(f.code());
            }
            print!("{}", pretty);
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: mathematical check failed (see report {})", path.display());
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
