use std::fs;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use spflag::classifier::{self, Classification, KacBound};
use spflag::compositions::DimVector;
use spflag::decomposer;
use spflag::enumerator::{self, OrbitFamily};
use spflag::exactlin::{Field, F2, F3, F5, Q};
use spflag::flagobj::FlagObject;
use spflag::{census, Error};

#[derive(Parser)]
#[command(name = "spflag", version, about = "Symplectic triple flag varieties: classification, orbit counts, representatives")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for enumeration and census.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Field of the input objects.
    #[arg(long, global = true, value_enum, default_value_t = FieldArg::Q)]
    field: FieldArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "F2")]
    F2,
    #[value(name = "F3")]
    F3,
    #[value(name = "F5")]
    F5,
}

#[derive(Subcommand)]
enum Command {
    /// Finite type or infinite-type witness.
    Classify { dims: String },
    /// Tits form value and what it says about indecomposables.
    Qform { dims: String },
    /// Dimensions of the flag varieties and of the group.
    Dims { dims: String },
    /// Number of orbits.
    Count { dims: String },
    /// Orbit families as JSON lines.
    Enumerate {
        dims: String,
        #[arg(long)]
        limit: Option<usize>,
        /// Also write one representative per family to this file.
        #[arg(long)]
        reps: Option<String>,
    },
    /// Representative of one orbit family.
    Rep {
        dims: String,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Krull-Schmidt decomposition of an object file.
    Decompose { object: String },
    /// Whether two objects lie in the same orbit.
    Identify { a: String, b: String },
    /// Brute-force orbit count over a prime field.
    Census {
        dims: String,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
}

enum Failure {
    Invalid(Value),
    Infinite(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InfiniteType(w) => Failure::Infinite(json!({ "infinite_witness": w.name() })),
            e => Failure::Invalid(json!({ "error": e.kind(), "message": e.to_string() })),
        }
    }
}

fn io_failure(path: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(json!({ "error": "io", "message": format!("{}: {}", path, e) }))
}

fn parse_dims(s: &str) -> Result<DimVector, Failure> {
    Ok(s.parse::<DimVector>()?)
}

fn read_object<F: Field>(path: &str) -> Result<FlagObject<F>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    serde_json::from_str(&text).map_err(|e| Failure::Invalid(json!({ "error": "parse", "message": format!("{}: {}", path, e) })))
}

fn require_q(field: FieldArg, what: &str) -> Result<(), Failure> {
    if field == FieldArg::Q {
        Ok(())
    } else {
        Err(Failure::Invalid(json!({
            "error": "field_mismatch",
            "message": format!("{} works over Q only", what),
        })))
    }
}

fn classify(d: &DimVector) -> Result<Value, Failure> {
    Ok(match classifier::classify(d)? {
        Classification::Finite(t) => json!({ "type": t.name() }),
        Classification::Infinite(w) => json!({ "infinite_witness": w.name() }),
    })
}

fn qform(d: &DimVector) -> Value {
    let bound = match classifier::kac_bound(d) {
        KacBound::NoIndecomposable => "none",
        KacBound::AtMostOne => "at_most_one",
        KacBound::Unbounded => "unbounded",
    };
    json!({ "q": classifier::tits_q(d), "indecomposables": bound })
}

fn dims(d: &DimVector) -> Result<Value, Failure> {
    classifier::validate_symmetric(d)?;
    let n = d.weight() as u64 / 2;
    let flags = d.comps().iter().map(classifier::sp_flag_dim).collect::<Result<Vec<_>, _>>()?;
    let total: u64 = flags.iter().sum();
    let group = classifier::sp_group_dim(n);
    Ok(json!({ "flag_dims": flags, "total": total, "sp_group_dim": group }))
}

fn enumerate(d: &DimVector, limit: Option<usize>, reps: Option<&str>) -> Result<(), Failure> {
    let fams = enumerator::orbit_families(d)?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut kept: Vec<OrbitFamily> = Vec::new();
    for f in fams.take(limit.unwrap_or(usize::MAX)) {
        writeln!(out, "{}", serde_json::to_string(&f).expect("serializable")).map_err(|e| io_failure("stdout", e))?;
        if reps.is_some() {
            kept.push(f);
        }
    }
    out.flush().map_err(|e| io_failure("stdout", e))?;
    if let Some(path) = reps {
        let objects = kept
            .par_iter()
            .map(|f| enumerator::orbit_representative(f).map(|x| json!({ "family": f, "object": x })))
            .collect::<Result<Vec<_>, _>>()?;
        let text = serde_json::to_string_pretty(&objects).expect("serializable");
        fs::write(path, text + "\n").map_err(|e| io_failure(path, e))?;
    }
    Ok(())
}

fn rep(d: &DimVector, index: usize) -> Result<Value, Failure> {
    let total = enumerator::orbit_count(d)?;
    let f = enumerator::orbit_families(d)?.nth(index).ok_or_else(|| {
        Failure::Invalid(json!({
            "error": "index",
            "message": format!("index {} out of range, there are {} families", index, total),
        }))
    })?;
    let x = enumerator::orbit_representative(&f)?;
    Ok(json!({ "family": f, "object": x }))
}

fn decompose(path: &str, field: FieldArg, seed: u64) -> Result<Value, Failure> {
    require_q(field, "decompose")?;
    let x: FlagObject<Q> = read_object(path)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pieces = decomposer::decompose(&x, &mut rng)?;
    let summands: Vec<Value> = pieces
        .iter()
        .map(|p| json!({ "dims": p.object.dim_vector(), "basis": p.basis }))
        .collect();
    let mut out = json!({ "summands": summands });
    if x.k() == 3 && x.is_symplectic() {
        out["family"] = serde_json::to_value(decomposer::sp_decompose(&x, &mut rng)?).expect("serializable");
    }
    Ok(out)
}

fn identify_finite<F: Field>(a: &str, b: &str) -> Result<Value, Failure> {
    let x: FlagObject<F> = read_object(a)?;
    let y: FlagObject<F> = read_object(b)?;
    let iso = decomposer::finite_field_isomorphism(&x, &y, false)?;
    if !(x.is_symplectic() && y.is_symplectic()) || iso.is_none() {
        return Ok(json!({ "isomorphic": iso.is_some(), "same_orbit": Value::Null, "certificate": iso }));
    }
    // over a finite field an isomorphism need not be symplectic
    let sp = decomposer::finite_field_isomorphism(&x, &y, true)?;
    Ok(json!({ "isomorphic": true, "same_orbit": sp.is_some(), "certificate": sp.or(iso) }))
}

fn identify(a: &str, b: &str, field: FieldArg, seed: u64) -> Result<Value, Failure> {
    match field {
        FieldArg::F2 => return identify_finite::<F2>(a, b),
        FieldArg::F3 => return identify_finite::<F3>(a, b),
        FieldArg::F5 => return identify_finite::<F5>(a, b),
        FieldArg::Q => {}
    }
    let x: FlagObject<Q> = read_object(a)?;
    let y: FlagObject<Q> = read_object(b)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let iso = decomposer::isomorphism(&x, &y, &mut rng)?;
    let symplectic = x.is_symplectic() && y.is_symplectic();
    Ok(json!({
        "isomorphic": iso.is_some(),
        "same_orbit": if symplectic { Value::Bool(iso.is_some()) } else { Value::Null },
        "certificate": iso,
    }))
}

fn run(cli: Cli) -> Result<Option<Value>, Failure> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| Failure::Invalid(json!({ "error": "jobs", "message": e.to_string() })))?;
    }
    let out = match &cli.command {
        Command::Classify { dims: s } => classify(&parse_dims(s)?)?,
        Command::Qform { dims: s } => qform(&parse_dims(s)?),
        Command::Dims { dims: s } => dims(&parse_dims(s)?)?,
        Command::Count { dims: s } => json!({ "orbits": enumerator::orbit_count(&parse_dims(s)?)?.to_string() }),
        Command::Enumerate { dims: s, limit, reps } => {
            enumerate(&parse_dims(s)?, *limit, reps.as_deref())?;
            return Ok(None);
        }
        Command::Rep { dims: s, index } => rep(&parse_dims(s)?, *index)?,
        Command::Decompose { object } => decompose(object, cli.field, cli.seed)?,
        Command::Identify { a, b } => identify(a, b, cli.field, cli.seed)?,
        Command::Census { dims: s, q } => {
            let c = census::orbit_census(&parse_dims(s)?, *q)?;
            serde_json::to_value(c).expect("serializable")
        }
    };
    Ok(Some(out))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{}", e);
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("{}", json!({ "error": "usage", "message": msg.trim() }));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(Some(v)) => {
            println!("{}", v);
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(Failure::Invalid(v)) => {
            eprintln!("{}", v);
            ExitCode::from(2)
        }
        Err(Failure::Infinite(v)) => {
            eprintln!("{}", v);
            ExitCode::from(3)
        }
    }
}
