use std::process::ExitCode;
use std::sync::Arc;

use baxter_core::expr::{self, Value};
use baxter_core::ideals::{baxter_ideal_member, IdealSpec};
use baxter_core::random::DEFAULT_SEED;
use baxter_core::shuffle::enumerate_mixable_shuffles;
use baxter_core::standard::{phi, phi_complete, phi_precondition_holds};
use baxter_core::verify::{run_suite, Suite};
use baxter_core::{BaxterContext, Coefficient, Error, Ring};
use clap::{Parser, Subcommand};
use serde_json::{json, Value as Json};

#[derive(Parser, Debug)]
#[command(name = "baxter", version, about = "Exact computations in free Baxter algebras of weight λ")]
struct Cli {
    /// Coefficient ring: int, rat or mod:<m>.
    #[arg(long, global = true, default_value = "int")]
    ring: String,
    /// The weight λ, an element of the ring.
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    lambda: String,
    /// Comma-separated variable names.
    #[arg(long, global = true, default_value = "x,y")]
    vars: String,
    /// Working precision (top degree kept) for series.
    #[arg(long, global = true, default_value_t = 12)]
    precision: usize,
    /// Seed for randomized verification suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression and print its canonical form.
    Eval { expr: String },
    /// Print the first entries of the image in the sequence model.
    Phi {
        #[arg(long)]
        len: usize,
        expr: String,
    },
    /// Test membership in the Baxter ideal generated by variables or a scalar.
    IdealMember {
        /// `x,y` for a variable ideal or `scalar:<c>` for a scalar one.
        #[arg(long)]
        gens: String,
        expr: String,
    },
    /// Run a verification suite.
    Verify { suite: String },
    /// List the (m, n)-mixable shuffles.
    EnumerateShuffles { m: usize, n: usize },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn context(cli: &Cli) -> Result<Arc<BaxterContext>, Failure> {
    let ring: Ring = cli.ring.parse()?;
    let lambda = Coefficient::parse_in(ring, &cli.lambda)?;
    let vars: Vec<&str> = cli.vars.split(',').map(str::trim).filter(|v| !v.is_empty()).collect();
    Ok(BaxterContext::new(ring, lambda, &vars)?)
}

fn context_json(cli: &Cli, ctx: &BaxterContext) -> Json {
    let mut c = ctx.to_json();
    c["precision"] = json!(cli.precision);
    c["seed"] = json!(cli.seed);
    c
}

fn emit(cli: &Cli, ctx: Option<&BaxterContext>, command: &str, key: &str, payload: Json, text: &str) {
    if cli.json {
        let context = ctx.map_or_else(|| json!({ "seed": cli.seed }), |c| context_json(cli, c));
        let doc = json!({ "command": command, "context": context, key: payload });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        println!("{text}");
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Eval { expr } => {
            let ctx = context(cli)?;
            let v = expr::eval_str(expr, &ctx, cli.precision)?;
            let mut payload = v.to_json();
            payload["text"] = json!(v.to_string());
            emit(cli, Some(&ctx), "eval", "result", payload, &v.to_string());
        }
        Command::Phi { len, expr } => {
            let ctx = context(cli)?;
            if !phi_precondition_holds(&ctx) {
                eprintln!("note: λ = {} is zero or a zero divisor in {}; the map need not be injective", ctx.lambda(), ctx.ring());
            }
            let seq = match expr::eval_str(expr, &ctx, cli.precision)? {
                Value::Finite(a) => phi(&a, *len),
                Value::Series(a) => phi_complete(&a, *len)?,
            };
            emit(cli, Some(&ctx), "phi", "result", seq.to_json(), &seq.to_string());
        }
        Command::IdealMember { gens, expr } => {
            let ctx = context(cli)?;
            let spec = IdealSpec::parse(ctx.ring(), gens)?;
            if let Some(w) = spec.triviality_warning() {
                eprintln!("warning: {w}");
            }
            let a = expr::parse_element(expr, &ctx)?;
            let member = baxter_ideal_member(&a, &spec)?;
            let payload = json!({ "ideal": spec.to_string(), "element": a.to_string(), "member": member });
            emit(cli, Some(&ctx), "ideal-member", "result", payload, &member.to_string());
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let reports = run_suite(suite, cli.seed)?;
            let passed = reports.iter().filter(|r| r.passed()).count();
            let mut text: Vec<String> = reports.iter().map(ToString::to_string).collect();
            text.push(format!("{passed}/{} reports passed", reports.len()));
            let payload = serde_json::to_value(&reports).expect("serializable");
            emit(cli, None, "verify", "report", payload, &text.join("\n"));
            if passed != reports.len() {
                return Err(Failure::Verification);
            }
        }
        Command::EnumerateShuffles { m, n } => {
            let all = enumerate_mixable_shuffles(*m, *n);
            let mut text = vec![format!("count: {}", all.len())];
            text.extend(all.iter().map(|s| format!("sigma={:?} merged={:?}", s.sigma, s.merged)));
            let list: Vec<Json> = all.iter().map(|s| json!({ "sigma": s.sigma, "merged": s.merged })).collect();
            let payload = json!({ "m": m, "n": n, "count": all.len(), "shuffles": list });
            emit(cli, None, "enumerate-shuffles", "result", payload, &text.join("\n"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
