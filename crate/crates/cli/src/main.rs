mod report;

use std::io::{self, Read};
use std::process::ExitCode;

use churchforge::compiler::{all_inputs, compile, min_width, verify, CompiledFunction};
use churchforge::encodings::numeral_of_normal_form;
use churchforge::gexpr::GFunction;
use churchforge::model::{compat_falsify, numeral_trajectory, FiniteModel, ModelError, DEFAULT_CAP};
use churchforge::reduce::{normalize, Fuel, Strategy, DEFAULT_FUEL};
use churchforge::syntax::{parse_gfunction, parse_term, parse_type, print_term, print_type};
use churchforge::types::{check_type_detailed, infer_principal};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use report::{Emitter, Format, Record};

/// Compile arithmetic expressions into simply typed λ-terms over Church
/// numerals, verify them, and probe finite models.
#[derive(Parser)]
#[command(name = "churchforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text", env = "CHURCHFORGE_FORMAT")]
    format: Format,

    /// Reduction step limit per normalization.
    #[arg(long, global = true, default_value_t = DEFAULT_FUEL, env = "CHURCHFORGE_FUEL")]
    fuel: u64,
}

#[derive(Args)]
struct ExprArgs {
    /// Expression text, `@path` to read a file, or `-` for stdin.
    expr: String,

    /// Tuple width; defaults to the smallest admissible width.
    #[arg(short = 's', long = "width", env = "CHURCHFORGE_WIDTH")]
    width: Option<usize>,

    /// Arity; defaults to the largest projection index.
    #[arg(long)]
    arity: Option<usize>,
}

#[derive(Args)]
struct ModelArgs {
    /// Size of the base set.
    #[arg(short = 'q', long = "base-size", default_value_t = 2, env = "CHURCHFORGE_BASE_SIZE")]
    base_size: u32,

    /// Largest domain the model may enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP, env = "CHURCHFORGE_CAP")]
    cap: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Compile an expression and print the term, its type and the width.
    Compile(ExprArgs),
    /// Check a compiled expression on every argument vector up to a bound.
    Verify {
        #[command(flatten)]
        expr: ExprArgs,
        /// Largest argument value.
        #[arg(long, default_value_t = 5, env = "CHURCHFORGE_MAX_INPUT")]
        max_input: u64,
        /// Verify a deliberately wrong term instead.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Run a compiled expression on specific arguments.
    Eval {
        #[command(flatten)]
        expr: ExprArgs,
        /// Argument values.
        args: Vec<u64>,
    },
    /// Normalize a λ-term.
    Normalize {
        /// Term text, `@path` or `-`.
        term: String,
        /// β strategy.
        #[arg(long, value_enum, default_value = "normal")]
        strategy: StrategyArg,
    },
    /// Infer the principal type of a λ-term, or check it against a type.
    Typecheck {
        /// Term text, `@path` or `-`.
        term: String,
        /// Type to check against.
        #[arg(long = "type", short = 't')]
        ty: Option<String>,
    },
    /// Preperiod and period of the numerals over a payload type.
    Trajectory {
        /// Payload type, e.g. `o` or `o -> o`.
        #[arg(default_value = "o")]
        ty: String,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Look for numerals a built-in function fails to respect.
    Compat {
        /// Function to test.
        #[arg(value_enum)]
        function: Builtin,
        /// Payload type.
        #[arg(default_value = "o")]
        ty: String,
        #[command(flatten)]
        model: ModelArgs,
        /// Largest numeral to try.
        #[arg(long, default_value_t = 10, env = "CHURCHFORGE_N_BOUND")]
        n_bound: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    /// Leftmost-outermost.
    Normal,
    /// Rightmost-innermost.
    Applicative,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    Pred,
    Div2,
    Mod2,
}

impl Builtin {
    fn name(self) -> &'static str {
        match self {
            Builtin::Pred => "pred",
            Builtin::Div2 => "div2",
            Builtin::Mod2 => "mod2",
        }
    }

    fn apply(self, n: u64) -> u64 {
        match self {
            Builtin::Pred => n.saturating_sub(1),
            Builtin::Div2 => n / 2,
            Builtin::Mod2 => n % 2,
        }
    }
}

/// Exit status for a failed check.
const FAILED: u8 = 1;
/// Exit status for unreadable or invalid input.
const BAD_INPUT: u8 = 2;
/// Exit status when a model is too large to enumerate.
const TOO_LARGE: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Failure {
        Failure {
            code: BAD_INPUT,
            message: message.to_string(),
        }
    }

    fn model(e: ModelError) -> Failure {
        let code = match e {
            ModelError::CapExceeded { .. } => TOO_LARGE,
            _ => BAD_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read_source(arg: &str) -> Result<String, Failure> {
    let text = if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::input(format!("stdin: {e}")))?;
        s
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))?
    } else {
        arg.to_string()
    };
    Ok(text.trim().to_string())
}

fn load_expr(args: &ExprArgs) -> Result<(String, GFunction, CompiledFunction), Failure> {
    let src = read_source(&args.expr)?;
    let f = parse_gfunction(&src, args.arity).map_err(Failure::input)?;
    let width = args.width.unwrap_or_else(|| min_width(f.expr()).s_min);
    let c = compile(&f, width).map_err(Failure::input)?;
    Ok((src, f, c))
}

fn run_compile(out: &mut Emitter, args: &ExprArgs) -> Outcome {
    let (src, _, c) = load_expr(args)?;
    let term = print_term(c.term());
    let ty = print_type(c.claimed_type());
    out.text(format!("term:  {term}"));
    out.text(format!("type:  {ty}"));
    out.text(format!("width: {}", c.width()));
    out.record(Record {
        ty: Some(ty),
        width: Some(c.width()),
        ..Record::new("compile", json!(src), json!(term))
    });
    Ok(true)
}

fn run_verify(out: &mut Emitter, args: &ExprArgs, max_input: u64, corrupt: bool, fuel: Fuel) -> Outcome {
    let (src, f, c) = load_expr(args)?;
    let c = if corrupt { c.corrupted() } else { c };
    let inputs = all_inputs(f.arity(), max_input);
    let report = verify(&c, &f, &inputs, fuel);
    let ty = print_type(c.claimed_type());
    match &report.type_check {
        Ok(()) => out.text(format!("type check: ok ({ty})")),
        Err(e) => out.text(format!("type check: FAILED ({ty}): {e}")),
    }
    out.record(Record {
        ty: Some(ty.clone()),
        width: Some(c.width()),
        ..Record::new(
            "verify",
            json!({ "expr": src, "check": "type" }),
            json!({ "pass": report.type_check.is_ok(),
                    "error": report.type_check.as_ref().err().map(|e| e.to_string()) }),
        )
    });
    for o in &report.outcomes {
        let shown = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
        let status = if o.pass { "ok" } else { "FAIL" };
        let mut line = format!(
            "{:?} -> expected {}, got {}  {status}  ({} steps)",
            o.args,
            shown(o.expected),
            shown(o.actual),
            o.steps
        );
        if let Some(e) = &o.error {
            line.push_str(&format!("  {e}"));
        }
        out.text(line);
        out.record(Record {
            width: Some(c.width()),
            steps: Some(o.steps),
            ..Record::new(
                "verify",
                json!({ "expr": src, "args": o.args }),
                json!({ "pass": o.pass, "expected": o.expected, "actual": o.actual, "error": o.error }),
            )
        });
    }
    let passed = report.passed();
    out.text(format!(
        "{}/{} passed{}",
        report.pass_count(),
        report.outcomes.len(),
        if report.type_check.is_ok() { "" } else { ", type check failed" }
    ));
    out.record(Record {
        ty: Some(ty),
        width: Some(c.width()),
        ..Record::new(
            "verify",
            json!({ "expr": src, "max_input": max_input }),
            json!({ "pass": passed, "passed": report.pass_count(), "total": report.outcomes.len() }),
        )
    });
    Ok(passed)
}

fn run_eval(out: &mut Emitter, args: &ExprArgs, values: &[u64], fuel: Fuel) -> Outcome {
    let (src, f, c) = load_expr(args)?;
    let expected = f.eval(values).map_err(Failure::input)?;
    let n = normalize(&c.apply(values), fuel, Strategy::LeftmostOutermost).map_err(Failure::input)?;
    let actual = numeral_of_normal_form(&n.term);
    let pass = actual == Some(expected);
    match actual {
        Some(v) => out.text(format!("{v}")),
        None => out.text(format!("not a numeral: {}", print_term(&n.term))),
    }
    if !pass {
        out.text(format!("mismatch: expected {expected}"));
    }
    out.record(Record {
        width: Some(c.width()),
        steps: Some(n.steps()),
        ..Record::new(
            "eval",
            json!({ "expr": src, "args": values }),
            json!({ "pass": pass, "expected": expected, "actual": actual }),
        )
    });
    Ok(pass)
}

fn run_normalize(out: &mut Emitter, term: &str, strategy: StrategyArg, fuel: Fuel) -> Outcome {
    let src = read_source(term)?;
    let t = parse_term(&src).map_err(Failure::input)?;
    let strategy = match strategy {
        StrategyArg::Normal => Strategy::LeftmostOutermost,
        StrategyArg::Applicative => Strategy::RightmostInnermost,
    };
    let n = normalize(&t, fuel, strategy).map_err(Failure::input)?;
    let printed = print_term(&n.term);
    out.text(printed.clone());
    if let Some(v) = numeral_of_normal_form(&n.term) {
        out.text(format!("numeral: {v}"));
    }
    out.text(format!("steps: {} beta, {} eta", n.beta_steps, n.eta_steps));
    out.record(Record {
        steps: Some(n.steps()),
        ..Record::new("normalize", json!(src), json!(printed))
    });
    Ok(true)
}

fn run_typecheck(out: &mut Emitter, term: &str, ty: Option<&str>) -> Outcome {
    let src = read_source(term)?;
    let t = parse_term(&src).map_err(Failure::input)?;
    match ty {
        None => {
            let (result, pass) = match infer_principal(&t) {
                Ok(p) => (print_type(&p), true),
                Err(e) => (e.to_string(), false),
            };
            out.text(format!("{}{result}", if pass { "" } else { "not typable: " }));
            out.record(Record {
                ty: pass.then(|| result.clone()),
                ..Record::new("typecheck", json!(src), json!({ "pass": pass, "principal": result }))
            });
            Ok(pass)
        }
        Some(target) => {
            let target = parse_type(target).map_err(Failure::input)?;
            let shown = print_type(&target);
            let checked = check_type_detailed(&t, &target);
            let pass = checked.is_ok();
            match &checked {
                Ok(()) => out.text(format!("ok: {shown}")),
                Err(e) => out.text(format!("does not have type {shown}: {e}")),
            }
            out.record(Record {
                ty: Some(shown),
                ..Record::new(
                    "typecheck",
                    json!(src),
                    json!({ "pass": pass, "error": checked.err().map(|e| e.to_string()) }),
                )
            });
            Ok(pass)
        }
    }
}

fn model_of(args: &ModelArgs) -> Result<FiniteModel, Failure> {
    if args.base_size == 0 {
        return Err(Failure::input("the base set must be non-empty"));
    }
    Ok(FiniteModel::new(args.base_size, args.cap))
}

fn run_trajectory(out: &mut Emitter, ty: &str, args: &ModelArgs) -> Outcome {
    let tau = parse_type(ty).map_err(Failure::input)?;
    let m = model_of(args)?;
    let t = numeral_trajectory(&tau, &m).map_err(Failure::model)?;
    let shown = print_type(&tau);
    out.text(format!(
        "preperiod {} period {} ({} distinct states, q={})",
        t.preperiod(),
        t.period(),
        t.states().len(),
        args.base_size
    ));
    out.record(Record {
        ty: Some(shown.clone()),
        ..Record::new(
            "trajectory",
            json!({ "type": shown, "q": args.base_size, "cap": args.cap }),
            json!({ "preperiod": t.preperiod(), "period": t.period(), "states": t.states().len() }),
        )
    });
    Ok(true)
}

fn run_compat(out: &mut Emitter, f: Builtin, ty: &str, args: &ModelArgs, n_bound: u64) -> Outcome {
    let tau = parse_type(ty).map_err(Failure::input)?;
    let m = model_of(args)?;
    let found = compat_falsify(|n| f.apply(n), &tau, &m, n_bound).map_err(Failure::model)?;
    let shown = print_type(&tau);
    let input = json!({ "function": f.name(), "type": shown, "q": args.base_size, "n_bound": n_bound });
    match found {
        Some(w) => {
            out.text(format!(
                "{}: {} and {} are equal in the model but {}({}) = {} and {}({}) = {} are not",
                f.name(),
                w.n,
                w.n_prime,
                f.name(),
                w.n,
                w.image,
                f.name(),
                w.n_prime,
                w.image_prime
            ));
            out.record(Record {
                ty: Some(shown),
                witness: Some(json!({ "n": w.n, "n_prime": w.n_prime, "image": w.image, "image_prime": w.image_prime })),
                ..Record::new("compat", input, json!("counterexample"))
            });
        }
        None => {
            out.text(format!("{}: no counterexample <= {n_bound}", f.name()));
            out.record(Record {
                ty: Some(shown),
                ..Record::new("compat", input, json!("none"))
            });
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fuel = Fuel::new(cli.fuel);
    let mut out = Emitter::new(cli.format);
    let outcome = match &cli.command {
        Command::Compile(args) => run_compile(&mut out, args),
        Command::Verify {
            expr,
            max_input,
            corrupt,
        } => run_verify(&mut out, expr, *max_input, *corrupt, fuel),
        Command::Eval { expr, args } => run_eval(&mut out, expr, args, fuel),
        Command::Normalize { term, strategy } => run_normalize(&mut out, term, *strategy, fuel),
        Command::Typecheck { term, ty } => run_typecheck(&mut out, term, ty.as_deref()),
        Command::Trajectory { ty, model } => run_trajectory(&mut out, ty, model),
        Command::Compat {
            function,
            ty,
            model,
            n_bound,
        } => run_compat(&mut out, *function, ty, model, *n_bound),
    };
    out.flush();
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(FAILED),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
