//! `vgroup`: command-line access to the vgroup library.
//!
//! Exit status: 0 on success, 1 when an input violates an operation's
//! precondition, 2 on syntax errors (including bad command lines).

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use vgroup::algebra::{multiply as algebra_multiply, reduce_mod_iv, sigma_of, AlgebraElement, UnarySum};
use vgroup::element::{compose, enumerate_elements_bounded, parse_entries, TableRepr, DEFAULT_ELEMENT_BOUND};
use vgroup::generators::{
    evaluate_balanced, evaluate_balanced_parallel, evaluate_sequential, find_witness, GenWord,
};
use vgroup::normalform::{canonical_factor, element_to_word, length_ratio};
use vgroup::random::random_genword;
use vgroup::subgroups::{verify_distortion, FreeWord};
use vgroup::words::{enumerate_maximal_codes_bounded, DEFAULT_ENUMERATION_BOUND};
use vgroup::{multiply, ParseError, Table, Word};

#[derive(Parser)]
#[command(name = "vgroup", version, about = "Exact computation in Thompson's group V")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a generator word to its maximal table.
    Eval {
        word: String,
        /// Use the pairwise composition tree.
        #[arg(long)]
        balanced: bool,
        /// Use the pairwise tree with subtrees evaluated in parallel.
        #[arg(long, conflicts_with = "balanced")]
        parallel: bool,
    },
    /// Decide whether a generator word is the identity.
    Wp { word: String },
    /// Product `t2 · t1` (t1 acts first).
    Compose {
        t2: String,
        t1: String,
        /// Print the literal composition without maximal extension.
        #[arg(long)]
        literal: bool,
    },
    /// Maximal extension of a table.
    Reduce { table: String },
    /// Factor `g = β · π · α` through the balanced code of size ‖g‖.
    Factor { table: String },
    /// Compile a table into a word over the nine generators.
    Compile { table: String },
    /// Closed-form distortion witness for a word in α (a) and β (b).
    Distortion { word: String },
    /// Polycyclic-monoid algebra operations.
    Algebra {
        #[command(subcommand)]
        op: AlgebraOp,
    },
    /// List maximal prefix codes (or elements) of a given size.
    Enumerate {
        n: usize,
        /// List maximally extended elements of table size n instead of codes.
        #[arg(long)]
        elements: bool,
        /// Largest n accepted for codes.
        #[arg(long, env = "VGROUP_MAX_CODES", default_value_t = DEFAULT_ENUMERATION_BOUND)]
        max_codes: usize,
        /// Largest n accepted for elements.
        #[arg(long, env = "VGROUP_MAX_ELEMENTS", default_value_t = DEFAULT_ELEMENT_BOUND)]
        max_elements: usize,
    },
    /// Time sequential against balanced evaluation of random words.
    Bench(BenchArgs),
}

#[derive(Subcommand)]
enum AlgebraOp {
    /// Product of two sums.
    Mul {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Normal form of a maximal unary sum.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        sum: String,
    },
    /// The unary sum of a table.
    FromTable { table: String },
}

#[derive(Args)]
struct BenchArgs {
    /// Word lengths to time.
    #[arg(long = "n", value_delimiter = ',', default_values_t = [1usize, 16, 64, 256])]
    n: Vec<usize>,
    /// Random words per length.
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Also time the parallel balanced evaluation.
    #[arg(long)]
    parallel: bool,
}

enum Failure {
    Parse(String),
    Domain(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Failure {
        Failure::Parse(e.to_string())
    }
}

impl From<vgroup::Error> for Failure {
    fn from(e: vgroup::Error) -> Failure {
        Failure::Domain(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

/// Text and JSON renderings of one command's result.
struct Output {
    text: String,
    json: Value,
}

#[derive(Serialize)]
struct TableJson {
    text: String,
    size: usize,
    #[serde(flatten)]
    repr: TableRepr,
}

fn table_json(t: &Table) -> TableJson {
    TableJson {
        text: t.to_string(),
        size: t.size(),
        repr: t.to_repr(),
    }
}

fn to_value<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

/// A table given as `[x->y, ...]` or as JSON `{"domain": [...], "range": [...]}`.
fn parse_table(s: &str) -> CliResult<Table> {
    let entries = if s.trim_start().starts_with('{') {
        let repr: TableRepr =
            serde_json::from_str(s).map_err(|e| Failure::Parse(format!("parse error in JSON table: {e}")))?;
        if repr.domain.len() != repr.range.len() {
            return Err(Failure::Parse("domain and range arrays differ in length".into()));
        }
        let mut entries = Vec::new();
        for (x, y) in repr.domain.iter().zip(&repr.range) {
            entries.push((x.parse::<Word>()?, y.parse::<Word>()?));
        }
        entries
    } else {
        parse_entries(s)?
    };
    Ok(Table::new(entries)?)
}

fn parse_word(s: &str) -> CliResult<GenWord> {
    Ok(s.parse::<GenWord>()?)
}

fn parse_unary(s: &str) -> CliResult<UnarySum> {
    let sum: AlgebraElement = s.parse()?;
    Ok(UnarySum::try_from(sum)?)
}

fn table_output(command: &str, t: &Table, extra: Value) -> Output {
    let mut json = json!({ "command": command, "table": table_json(t) });
    if let (Value::Object(map), Value::Object(more)) = (&mut json, extra) {
        map.extend(more);
    }
    Output {
        text: t.to_string(),
        json,
    }
}

fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Eval {
            word,
            balanced,
            parallel,
        } => {
            let w = parse_word(word)?;
            let (strategy, t) = if *parallel {
                ("parallel", evaluate_balanced_parallel(&w))
            } else if *balanced {
                ("balanced", evaluate_balanced(&w))
            } else {
                ("sequential", evaluate_sequential(&w))
            };
            Ok(table_output("eval", &t, json!({ "word": w.to_string(), "strategy": strategy })))
        }
        Command::Wp { word } => {
            let w = parse_word(word)?;
            let witness = find_witness(&w);
            let text = match &witness {
                None => "IDENTITY".to_string(),
                Some(x) => format!("NOT IDENTITY\nwitness: {x}"),
            };
            Ok(Output {
                text,
                json: json!({
                    "command": "wp",
                    "word": w.to_string(),
                    "identity": witness.is_none(),
                    "witness": witness.map(|x| x.to_string()),
                }),
            })
        }
        Command::Compose { t2, t1, literal } => {
            let (t2, t1) = (parse_table(t2)?, parse_table(t1)?);
            let t = if *literal { compose(&t2, &t1) } else { multiply(&t2, &t1) };
            Ok(table_output("compose", &t, json!({ "literal": literal })))
        }
        Command::Reduce { table } => {
            let t = parse_table(table)?;
            Ok(table_output("reduce", &t.max_extend(), json!({})))
        }
        Command::Factor { table } => {
            let g = parse_table(table)?.max_extend();
            let f = canonical_factor(&g)?;
            Ok(Output {
                text: format!("alpha: {}\npi: {}\nbeta: {}", f.alpha, f.pi, f.beta),
                json: json!({
                    "command": "factor",
                    "alpha": table_json(&f.alpha),
                    "pi": table_json(&f.pi),
                    "beta": table_json(&f.beta),
                }),
            })
        }
        Command::Compile { table } => {
            let g = parse_table(table)?.max_extend();
            let w = element_to_word(&g)?;
            let ratio = length_ratio(w.len(), g.size());
            let word = if w.is_empty() { "1".to_string() } else { w.to_string() };
            Ok(Output {
                text: format!("{word}\nlength: {}\ntable size: {}\nratio: {ratio:.4}", w.len(), g.size()),
                json: json!({
                    "command": "compile",
                    "word": word,
                    "length": w.len(),
                    "table_size": g.size(),
                    "ratio": ratio,
                }),
            })
        }
        Command::Distortion { word } => {
            let mu: FreeWord = word.parse()?;
            let r = verify_distortion(&mu)?;
            let text = format!(
                "y: {}\n|y|: {}\nfree length: {}\ntable size: {}\nclosed form matches: {}\n|y| > free length: {}\ntable size > free length: {}",
                r.witness.y,
                r.witness.y.len(),
                r.free_length,
                r.table_size,
                r.closed_form_matches,
                r.witness_longer,
                r.table_size_exceeds
            );
            let mut json = to_value(&r);
            json["command"] = json!("distortion");
            json["y_length"] = json!(r.witness.y.len());
            Ok(Output { text, json })
        }
        Command::Algebra { op } => {
            let (name, result) = match op {
                AlgebraOp::Mul { left, right } => {
                    let (l, r): (AlgebraElement, AlgebraElement) = (left.parse()?, right.parse()?);
                    ("mul", algebra_multiply(&l, &r))
                }
                AlgebraOp::Reduce { sum } => {
                    let s = parse_unary(sum)?;
                    ("reduce", reduce_mod_iv(&s)?.as_element().clone())
                }
                AlgebraOp::FromTable { table } => {
                    let t = parse_table(table)?;
                    ("from-table", sigma_of(&t).as_element().clone())
                }
            };
            Ok(Output {
                text: result.to_string(),
                json: json!({
                    "command": "algebra",
                    "op": name,
                    "result": result.to_string(),
                    "terms": result.len(),
                }),
            })
        }
        Command::Enumerate {
            n,
            elements,
            max_codes,
            max_elements,
        } => {
            let (kind, items): (&str, Vec<String>) = if *elements {
                let all = enumerate_elements_bounded(*n, *max_elements)?;
                ("elements", all.iter().map(|t| t.to_string()).collect())
            } else {
                let all = enumerate_maximal_codes_bounded(*n, *max_codes)?;
                ("codes", all.iter().map(|c| c.to_string()).collect())
            };
            let mut text = items.len().to_string();
            for item in &items {
                text.push('\n');
                text.push_str(item);
            }
            Ok(Output {
                text,
                json: json!({
                    "command": "enumerate",
                    "n": n,
                    "kind": kind,
                    "count": items.len(),
                    "items": items,
                }),
            })
        }
        Command::Bench(args) => bench(args, cli.seed),
    }
}

#[derive(Serialize)]
struct BenchRow {
    n: usize,
    trials: usize,
    sequential_us: f64,
    balanced_us: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    parallel_us: Option<f64>,
}

fn mean_micros<F: FnMut(&GenWord) -> Table>(words: &[GenWord], mut f: F) -> (f64, Vec<Table>) {
    let start = Instant::now();
    let out: Vec<Table> = words.iter().map(&mut f).collect();
    let us = start.elapsed().as_secs_f64() * 1e6 / words.len().max(1) as f64;
    ((us * 1000.0).round() / 1000.0, out)
}

fn bench(args: &BenchArgs, seed: u64) -> CliResult<Output> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for &n in &args.n {
        let words: Vec<GenWord> = (0..args.trials).map(|_| random_genword(&mut rng, n)).collect();
        let (sequential_us, seq) = mean_micros(&words, evaluate_sequential);
        let (balanced_us, bal) = mean_micros(&words, evaluate_balanced);
        if seq != bal {
            return Err(Failure::Domain(format!("sequential and balanced evaluation disagree at n = {n}")));
        }
        let parallel_us = if args.parallel {
            let (us, par) = mean_micros(&words, evaluate_balanced_parallel);
            if par != seq {
                return Err(Failure::Domain(format!("parallel evaluation disagrees at n = {n}")));
            }
            Some(us)
        } else {
            None
        };
        rows.push(BenchRow {
            n,
            trials: args.trials,
            sequential_us,
            balanced_us,
            parallel_us,
        });
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        writer
            .serialize(row)
            .map_err(|e| Failure::Domain(format!("writing CSV: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Failure::Domain(format!("writing CSV: {e}")))?;
    let text = String::from_utf8(bytes).expect("CSV is UTF-8").trim_end().to_string();
    Ok(Output {
        text,
        json: json!({ "command": "bench", "seed": seed, "rows": rows }),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("JSON output")
            } else {
                out.text
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let (kind, message, code) = match failure {
                Failure::Parse(m) => ("parse", m, 2),
                Failure::Domain(m) => ("domain", m, 1),
            };
            if cli.json {
                let err = json!({ "error": { "kind": kind, "message": message } });
                eprintln!("{}", serde_json::to_string_pretty(&err).expect("JSON output"));
            } else {
                eprintln!("error: {message}");
            }
            ExitCode::from(code)
        }
    }
}
