use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use homquery::algebra::{direct_product, direct_sum, exponential};
use homquery::counting_collapse::{
    bigint_from_json, bigint_to_json, find_distinct_positive_combination, lovasz_witness,
    profile_collision, solve_polynomial, vandermonde_c,
};
use homquery::duality::{verify_duality, DualityPair};
use homquery::homomorphisms::{core, hom_count, surjective_hom_count, Semiring};
use homquery::limits::Limits;
use homquery::oracle::{enumerate_instances, find_collision_bruteforce, ClassPredicate};
use homquery::query_algorithms::{
    algorithm_to_formula, formula_to_algorithm, left_profile, lift_bool_to_nat,
    lift_right_bool_to_nat, normalize_connected, right_profile, CqFormula, LeftAlgorithm,
    QueryAlgorithm, RightAlgorithm,
};
use homquery::structures::{Girth, Instance, Schema};
use homquery::Error;

/// Homomorphism counts, query algorithms and profile collisions on JSON
/// instances. Results are printed as JSON on standard output.
#[derive(Parser)]
#[command(name = "homquery", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of homomorphisms A → B
    Count {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "nat")]
        semiring: Semiring,
    },
    /// Number of homomorphisms A → B that are onto the elements of B
    Sur {
        a: PathBuf,
        b: PathBuf,
    },
    /// Left profile hom(F, D) or right profile hom(D, F)
    #[command(group(ArgGroup::new("side").required(true).args(["left", "right"])))]
    Profile {
        #[arg(long)]
        left: bool,
        #[arg(long)]
        right: bool,
        /// JSON array of instances
        queries: PathBuf,
        database: PathBuf,
        #[arg(long, default_value = "nat")]
        semiring: Semiring,
    },
    /// Runs a query algorithm on an instance
    Eval {
        algorithm: PathBuf,
        database: PathBuf,
        /// Treat the algorithm as a right algorithm
        #[arg(long)]
        right: bool,
    },
    Core {
        a: PathBuf,
    },
    Girth {
        a: PathBuf,
    },
    Components {
        a: PathBuf,
    },
    /// Direct sum of the given instances
    Sum {
        #[arg(required = true)]
        parts: Vec<PathBuf>,
    },
    /// Direct product of the given instances
    Product {
        #[arg(required = true)]
        parts: Vec<PathBuf>,
    },
    /// The exponential Y^Z
    Power {
        base: PathBuf,
        exponent: PathBuf,
    },
    /// Distinguishing induced subinstance of F′ when F has no surjection onto it
    Lovasz {
        f: PathBuf,
        f_prime: PathBuf,
    },
    /// Integer polynomial through the points t(i) with values b(i)
    Polysolve {
        /// JSON array of count vectors
        vectors: PathBuf,
        /// JSON array of integer targets
        targets: PathBuf,
    },
    /// Homomorphically equivalent A′, B′ with equal left profiles over F
    Collide {
        queries: PathBuf,
        a: PathBuf,
        b: PathBuf,
    },
    /// Boolean algorithm to the equivalent natural-number one
    Lift {
        algorithm: PathBuf,
        #[arg(long)]
        right: bool,
    },
    /// Left algorithm with connected queries only
    Normalize {
        algorithm: PathBuf,
    },
    ToFormula {
        algorithm: PathBuf,
    },
    ToAlgorithm {
        formula: PathBuf,
    },
    /// Checks a claimed duality {"F": [...], "D": [...]} on small instances
    VerifyDuality {
        pair: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Exhaustive search for two instances with equal profiles on opposite
    /// sides of a class
    SearchCollision {
        queries: PathBuf,
        class: PathBuf,
        #[arg(long, default_value_t = 2)]
        bound: usize,
        #[arg(long, default_value = "nat")]
        semiring: Semiring,
    },
    /// Every instance over a schema up to a number of elements
    Enumerate {
        /// `{"R":2}` or `R:2,S:1`
        #[arg(long)]
        schema: String,
        #[arg(long)]
        max: usize,
        /// Keep one instance per isomorphism class
        #[arg(long)]
        dedup: bool,
    },
}

enum Failure {
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<Value, Failure>;

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Domain(Error::Parse(format!("{}: {e}", path.display()))))
}

fn instance(path: &Path) -> Result<Instance, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(homquery::structures::parse_instance(&text)?)
}

fn instances(paths: &[PathBuf]) -> Result<Vec<Instance>, Failure> {
    paths.iter().map(|p| instance(p)).collect()
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("library values serialize")
}

fn parse_schema(text: &str) -> Result<Schema, Error> {
    if text.trim_start().starts_with('{') {
        return serde_json::from_str(text).map_err(|e| Error::Parse(format!("schema: {e}")));
    }
    let mut relations = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, arity) = part
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("schema entry `{part}` is not NAME:ARITY")))?;
        let arity: usize = arity
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("arity `{arity}` is not a number")))?;
        relations.push((name.trim().to_owned(), arity));
    }
    Schema::new(relations)
}

fn run(command: Command, limits: &Limits) -> Outcome {
    Ok(match command {
        Command::Count { a, b, semiring } => {
            json!({ "count": hom_count(&instance(&a)?, &instance(&b)?, semiring)? })
        }
        Command::Sur { a, b } => {
            json!({ "count": surjective_hom_count(&instance(&a)?, &instance(&b)?)? })
        }
        Command::Profile {
            left,
            queries,
            database,
            semiring,
            ..
        } => {
            let queries: Vec<Instance> = read(&queries)?;
            let d = instance(&database)?;
            let profile = if left {
                left_profile(&queries, &d, semiring)?
            } else {
                right_profile(&d, &queries, semiring)?
            };
            to_json(&profile)
        }
        Command::Eval {
            algorithm,
            database,
            right,
        } => {
            let alg: QueryAlgorithm = read(&algorithm)?;
            let d = instance(&database)?;
            let accepted = if right {
                RightAlgorithm::new(alg).eval(&d)?
            } else {
                LeftAlgorithm::new(alg).eval(&d)?
            };
            json!({ "accepted": accepted })
        }
        Command::Core { a } => to_json(&core(&instance(&a)?)),
        Command::Girth { a } => match instance(&a)?.girth() {
            Girth::Finite(n) => json!({ "girth": n }),
            Girth::Infinite => json!({ "girth": "infinity" }),
        },
        Command::Components { a } => to_json(&instance(&a)?.connected_components()),
        Command::Sum { parts } => {
            let parts = instances(&parts)?;
            to_json(&direct_sum(parts[0].schema(), &parts)?)
        }
        Command::Product { parts } => to_json(&direct_product(&instances(&parts)?, limits)?),
        Command::Power { base, exponent } => to_json(&exponential(
            &instance(&base)?,
            &instance(&exponent)?,
            limits,
        )?),
        Command::Lovasz { f, f_prime } => {
            to_json(&lovasz_witness(&instance(&f)?, &instance(&f_prime)?)?)
        }
        Command::Polysolve { vectors, targets } => {
            let vectors: Vec<Vec<u64>> = read(&vectors)?;
            let raw: Vec<Value> = read(&targets)?;
            let targets: Vec<BigInt> =
                raw.iter().map(bigint_from_json).collect::<Result<_, _>>()?;
            let (_, u) = find_distinct_positive_combination(&vectors)?;
            let c = vandermonde_c(&u)?;
            let p = solve_polynomial(&vectors, &targets)?;
            json!({ "a": p.a, "u": u, "c": bigint_to_json(&c), "e": to_json(&p)["e"] })
        }
        Command::Collide { queries, a, b } => {
            let queries: Vec<Instance> = read(&queries)?;
            to_json(&profile_collision(
                &queries,
                &instance(&a)?,
                &instance(&b)?,
                limits,
            )?)
        }
        Command::Lift { algorithm, right } => {
            let alg: QueryAlgorithm = read(&algorithm)?;
            if right {
                to_json(&lift_right_bool_to_nat(&RightAlgorithm::new(alg))?)
            } else {
                to_json(&lift_bool_to_nat(&LeftAlgorithm::new(alg))?)
            }
        }
        Command::Normalize { algorithm } => to_json(&normalize_connected(&read(&algorithm)?)?),
        Command::ToFormula { algorithm } => to_json(&algorithm_to_formula(&read(&algorithm)?)?),
        Command::ToAlgorithm { formula } => {
            let formula: CqFormula = read(&formula)?;
            to_json(&formula_to_algorithm(&formula)?)
        }
        Command::VerifyDuality { pair, bound } => {
            let pair: DualityPair = read(&pair)?;
            to_json(&verify_duality(&pair, bound, limits)?)
        }
        Command::SearchCollision {
            queries,
            class,
            bound,
            semiring,
        } => {
            let queries: Vec<Instance> = read(&queries)?;
            let class: ClassPredicate = read(&class)?;
            match find_collision_bruteforce(&queries, &class, bound, semiring, limits)? {
                Some((p, q)) => json!({ "collision": { "p": to_json(&p), "q": to_json(&q) } }),
                None => json!({ "collision": null }),
            }
        }
        Command::Enumerate { schema, max, dedup } => to_json(&enumerate_instances(
            &parse_schema(&schema)?,
            max,
            dedup,
            limits,
        )?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = Limits::from_env()
        .map_err(Failure::Domain)
        .and_then(|limits| run(cli.command, &limits));
    match outcome {
        Ok(value) => {
            println!("{value}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let (kind, message) = match failure {
                Failure::Domain(e) => (e.kind(), e.to_string()),
                Failure::Io(m) => ("io", m),
            };
            println!("{}", json!({ "kind": kind, "message": message }));
            ExitCode::from(1)
        }
    }
}
