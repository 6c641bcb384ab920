use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rug::{Float, Rational};
use serde_json::{json, Value};

use tornheim_core::closed_form::{
    closed_form_table, double_euler_closed_with, tornheim_closed, EvaluationResult, ZeroConvention,
};
use tornheim_core::numeric::{
    classical_double_euler, q_zeta1, q_zeta2, render_bound, render_fixed, tornheim_q,
    PrecisionConfig, QParam, Summation,
};
use tornheim_core::rational::parse_rational;
use tornheim_core::reduction::{corollary1_reduce, theorem1_reduce, Variant};
use tornheim_core::verify::{expression_report, run_family, Report, FAMILIES};
use tornheim_core::{Error, Sign, SignedIndex, ZetaExpression};

#[derive(Parser)]
#[command(
    name = "tornheim",
    version,
    about = "Signed Tornheim double series and their q-analogs: exact closed forms, numeric values and identity checks"
)]
struct Cli {
    /// Decimal digits for numeric work
    #[arg(long, global = true, default_value_t = 30)]
    digits: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Series {
    #[value(name = "T")]
    T,
    #[value(name = "S")]
    S,
    #[value(name = "R")]
    R,
    #[value(name = "zeta2")]
    Zeta2,
    #[value(name = "qzeta")]
    Qzeta,
}

impl Series {
    fn variant(self) -> Option<Variant> {
        match self {
            Series::T => Some(Variant::T),
            Series::S => Some(Variant::S),
            Series::R => Some(Variant::R),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Series::T => "T",
            Series::S => "S",
            Series::R => "R",
            Series::Zeta2 => "zeta2",
            Series::Qzeta => "qzeta",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a series: exact closed form when one exists, numeric value always
    Eval {
        #[arg(value_enum)]
        series: Series,
        /// r s t for T/S/R, s1 s2 for zeta2, s for qzeta
        #[arg(allow_negative_numbers = true, required = true)]
        args: Vec<String>,
        /// Evaluate the q-analog at this q > 1
        #[arg(long)]
        q: Option<String>,
        /// Signs attached to the summation indices, e.g. `--signs=+-`
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
    },
    /// Print the reduction of T, S or R to double (q-)zeta values
    Reduce {
        #[arg(value_enum)]
        series: Series,
        r: u32,
        s: u32,
        #[arg(allow_negative_numbers = true)]
        t: String,
        /// Classical (q -> 1) reduction instead of the q-analog one
        #[arg(long)]
        classical: bool,
    },
    /// Run an identity sweep, or check a user expression with
    /// `verify expr R 5 5 5 -- "<expr>"` (the `--` lets the expression start with a minus)
    Verify {
        /// lemma1, theorem1, corollary1, corollary2, corollary3, table or expr
        family: String,
        #[arg(allow_negative_numbers = true)]
        args: Vec<String>,
        /// Upper end of the index range swept
        #[arg(long)]
        max: Option<u32>,
        /// Use this single q instead of the default grid
        #[arg(long)]
        q: Option<String>,
    },
    /// List every closed form of odd weight up to the bound
    Table {
        #[arg(long, default_value_t = 15)]
        max_weight: i64,
    },
}

enum Failure {
    Core(Error),
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(), Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn parse_signs(text: &str, n: usize) -> Result<Vec<Sign>, Failure> {
    let signs: Option<Vec<Sign>> = text.chars().map(|c| Sign::parse(&c.to_string())).collect();
    match signs {
        Some(s) if s.len() == n => Ok(s),
        _ => usage(format!(
            "--signs expects {n} characters from '+' and '-', got `{text}`"
        )),
    }
}

fn parse_int(text: &str) -> Result<i64, Failure> {
    text.trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("expected an integer, got `{text}`")))
}

fn parse_q(text: &str) -> Result<QParam, Failure> {
    Ok(QParam::new(parse_rational(text)?)?)
}

fn arity(series: Series, args: &[String], n: usize) -> Outcome {
    if args.len() != n {
        return usage(format!(
            "{} takes {n} arguments, got {}",
            series.name(),
            args.len()
        ));
    }
    Ok(())
}

fn sign_label(signs: &[Sign]) -> String {
    signs.iter().map(|s| s.symbol()).collect()
}

/// What an evaluation produced, rendered once for either format.
struct Evaluation {
    label: String,
    closed: Option<EvaluationResult>,
    value: Float,
    tail_bound: Option<Float>,
    note: Option<&'static str>,
}

impl Evaluation {
    fn numeric(label: String, sum: Summation, note: Option<&'static str>) -> Self {
        Evaluation {
            label,
            closed: None,
            value: sum.value,
            tail_bound: Some(sum.tail_bound),
            note,
        }
    }

    fn print(&self, format: Format, digits: u32, extra: Value) {
        let value = render_fixed(&self.value, digits);
        match format {
            Format::Human => {
                if let Some(note) = self.note {
                    println!("{}: {note}", self.label);
                }
                match &self.closed {
                    Some(c) => println!("{} ≈ {value}…", c.expression),
                    None => println!("{} ≈ {value}", self.label),
                }
                if let Some(b) = &self.tail_bound {
                    println!("tail bound: {}", render_bound(b));
                }
            }
            Format::Json => {
                let mut out = json!({
                    "series": self.label,
                    "value": value,
                    "digits": digits,
                    "tail_bound": self.tail_bound.as_ref().map(render_bound),
                    "closed_form": self.closed,
                    "note": self.note,
                });
                if let (Value::Object(map), Value::Object(more)) = (&mut out, extra) {
                    map.extend(more);
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out).expect("serializable")
                );
            }
        }
    }
}

const NUMERIC_ONLY: &str = "no closed form, numeric only";

fn eval_tornheim(
    variant: Variant,
    args: &[String],
    q: Option<&str>,
    signs: Option<&str>,
    prec: &PrecisionConfig,
) -> Result<Evaluation, Failure> {
    let (sigma, tau) = match signs {
        Some(text) => {
            let s = parse_signs(text, 2)?;
            (s[0], s[1])
        }
        None => variant.signs(),
    };
    let name = variant.to_string();
    if let Some(q) = q {
        let qp = parse_q(q)?;
        let [r, s, t] = [0, 1, 2].map(|i| parse_rational(&args[i]));
        let (r, s, t) = (r?, s?, t?);
        let sum = tornheim_q(&r, &s, &t, sigma, tau, &qp, prec)?;
        let label = format!(
            "{name}[{r},{s},{t};{}{}] at q={}",
            sigma.symbol(),
            tau.symbol(),
            qp.rational()
        );
        return Ok(Evaluation::numeric(label, sum, None));
    }
    let (mut r, mut s, t) = (
        parse_int(&args[0])?,
        parse_int(&args[1])?,
        parse_int(&args[2])?,
    );
    let (variant, swap) = Variant::from_signs(sigma, tau);
    if swap {
        std::mem::swap(&mut r, &mut s);
    }
    let label = format!("{variant}({r},{s},{t})");
    let reduction = corollary1_reduce(r, s, t, variant)?;
    if t >= 1 && (r + s + t) % 2 == 1 {
        let closed = tornheim_closed(r, s, t, variant)?;
        let value = closed.expression.numeric(prec);
        return Ok(Evaluation {
            label,
            closed: Some(closed),
            value,
            tail_bound: None,
            note: None,
        });
    }
    Ok(Evaluation::numeric(
        label,
        reduction.evaluate(prec)?,
        Some(NUMERIC_ONLY),
    ))
}

fn eval_zeta2(
    args: &[String],
    q: Option<&str>,
    signs: Option<&str>,
    prec: &PrecisionConfig,
) -> Result<Evaluation, Failure> {
    let signs = match signs {
        Some(text) => parse_signs(text, 2)?,
        None => vec![Sign::Plus, Sign::Plus],
    };
    if let Some(q) = q {
        let qp = parse_q(q)?;
        let (s1, s2) = (parse_rational(&args[0])?, parse_rational(&args[1])?);
        let sum = q_zeta2((&s1, signs[0]), (&s2, signs[1]), &qp, prec)?;
        let label = format!(
            "zeta_q[{},{};{}] at q={}",
            s1,
            s2,
            sign_label(&signs),
            qp.rational()
        );
        return Ok(Evaluation::numeric(label, sum, None));
    }
    let outer = SignedIndex::new(parse_int(&args[0])?, signs[0]);
    let inner = SignedIndex::new(parse_int(&args[1])?, signs[1]);
    let label = format!("zeta({outer}, {inner})");
    let mut provenance = Vec::new();
    let closed = double_euler_closed_with(
        outer.value,
        inner.value,
        outer.sign,
        inner.sign,
        ZeroConvention::default(),
        &mut provenance,
    );
    match closed {
        Ok(expression) => {
            let value = expression.numeric(prec);
            Ok(Evaluation {
                label,
                closed: Some(EvaluationResult {
                    expression,
                    provenance,
                }),
                value,
                tail_bound: None,
                note: None,
            })
        }
        Err(Error::Unsupported(_)) => Ok(Evaluation::numeric(
            label,
            classical_double_euler(outer, inner, prec)?,
            Some(NUMERIC_ONLY),
        )),
        Err(e) => Err(e.into()),
    }
}

fn eval_qzeta(
    args: &[String],
    q: Option<&str>,
    signs: Option<&str>,
    prec: &PrecisionConfig,
) -> Result<Evaluation, Failure> {
    let Some(q) = q else {
        return usage("qzeta is a q-analog; pass --q with q > 1");
    };
    let qp = parse_q(q)?;
    let sign = match signs {
        Some(text) => parse_signs(text, 1)?[0],
        None => Sign::Plus,
    };
    let s = parse_rational(&args[0])?;
    let sum = q_zeta1(&s, sign, &qp, prec)?;
    let label = format!("zeta_q[{s};{}] at q={}", sign.symbol(), qp.rational());
    Ok(Evaluation::numeric(label, sum, None))
}

fn cmd_eval(
    cli: &Cli,
    series: Series,
    args: &[String],
    q: Option<&str>,
    signs: Option<&str>,
) -> Outcome {
    let prec = PrecisionConfig::new(cli.digits)?;
    let evaluation = match series {
        Series::Zeta2 => {
            arity(series, args, 2)?;
            eval_zeta2(args, q, signs, &prec)?
        }
        Series::Qzeta => {
            arity(series, args, 1)?;
            eval_qzeta(args, q, signs, &prec)?
        }
        _ => {
            arity(series, args, 3)?;
            eval_tornheim(series.variant().expect("T, S or R"), args, q, signs, &prec)?
        }
    };
    let extra = json!({ "args": args, "q": q });
    evaluation.print(cli.format, cli.digits, extra);
    Ok(())
}

fn cmd_reduce(cli: &Cli, series: Series, r: u32, s: u32, t: &str, classical: bool) -> Outcome {
    let Some(variant) = series.variant() else {
        return usage("reduce works on T, S or R");
    };
    if classical {
        let t = parse_int(t)?;
        let red = corollary1_reduce(r as i64, s as i64, t, variant)?;
        match cli.format {
            Format::Human => println!("{variant}({r},{s},{t}) = {red}"),
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&red).expect("serializable")
            ),
        }
    } else {
        let t = parse_rational(t)?;
        let red = theorem1_reduce(r, s, &t, variant)?;
        match cli.format {
            Format::Human => println!("{variant}[{r},{s},{t}] = {red}"),
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&red).expect("serializable")
            ),
        }
    }
    Ok(())
}

fn cmd_verify(
    cli: &Cli,
    family: &str,
    args: &[String],
    max: Option<u32>,
    q: Option<&str>,
) -> Outcome {
    let prec = PrecisionConfig::new(cli.digits)?;
    let report: Report = if family == "expr" {
        if args.len() != 5 {
            return usage("verify expr takes SERIES r s t EXPRESSION, e.g. verify expr R 1 1 1 -- \"-(5/8)*zeta(3)\"");
        }
        let variant = match args[0].as_str() {
            "T" => Variant::T,
            "S" => Variant::S,
            "R" => Variant::R,
            other => return usage(format!("series must be T, S or R, got `{other}`")),
        };
        let (r, s, t) = (
            parse_int(&args[1])?,
            parse_int(&args[2])?,
            parse_int(&args[3])?,
        );
        let expression: ZetaExpression = args[4].parse()?;
        expression_report(&expression, r, s, t, variant, &prec)?
    } else {
        if !FAMILIES.contains(&family) {
            return usage(format!(
                "unknown family `{family}`; expected one of {}, expr",
                FAMILIES.join(", ")
            ));
        }
        if !args.is_empty() {
            return usage(format!("verify {family} takes no positional arguments"));
        }
        let qs: Option<Vec<Rational>> = match q {
            Some(q) => Some(vec![parse_q(q)?.rational().clone()]),
            None => None,
        };
        run_family(family, max, qs, &prec)?
    };
    match cli.format {
        Format::Human => println!("{report}"),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        ),
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_table(cli: &Cli, max_weight: i64) -> Outcome {
    let table = closed_form_table(max_weight)?;
    match cli.format {
        Format::Human => {
            for e in &table {
                println!(
                    "{}({},{},{}) = {}",
                    e.variant, e.r, e.s, e.t, e.result.expression
                );
            }
        }
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&table).expect("serializable")
        ),
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Eval {
            series,
            args,
            q,
            signs,
        } => cmd_eval(cli, *series, args, q.as_deref(), signs.as_deref()),
        Command::Reduce {
            series,
            r,
            s,
            t,
            classical,
        } => cmd_reduce(cli, *series, *r, *s, t, *classical),
        Command::Verify {
            family,
            args,
            max,
            q,
        } => cmd_verify(cli, family, args, *max, q.as_deref()),
        Command::Table { max_weight } => cmd_table(cli, *max_weight),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(3),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Precision(_) => ExitCode::from(4),
                _ => ExitCode::from(2),
            }
        }
    }
}
