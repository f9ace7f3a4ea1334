use std::fmt::Write as _;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use otheta::endomorphism::{gallery, twisted_check, Endomorphism, Gallery, UnitaryPair};
use otheta::modular::min_eigenvalue;
use otheta::oracle::{default_stratum, GradedActionModel};
use otheta::semigroup::parse_word;
use otheta::verify::{run_suite, Suite, SuiteConfig};
use otheta::{parse_expression, Degree, Element, Error, ExactScalar, ModularContext, Permutation2D, Word};

/// Exact computations in the single-vertex 2-graph algebra.
#[derive(Parser)]
#[command(name = "otheta", version)]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Options {
    #[arg(long, global = true, default_value_t = 2)]
    m: u16,
    #[arg(long, global = true, default_value_t = 2)]
    n: u16,
    /// Builtin name (`identity`, `flip`) or path to a relation file.
    #[arg(long, global = true, default_value = "identity")]
    theta: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Degree bound `a,b` for random elements.
    #[arg(long, global = true, default_value = "2,2")]
    level: String,
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    #[arg(long = "float-tol", global = true, default_value_t = 1e-9)]
    float_tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word such as `f1.e2`.
    Nf {
        word: String,
    },
    Mul {
        a: String,
        b: String,
    },
    Omega {
        a: String,
    },
    Inner {
        a: String,
        b: String,
    },
    /// Checks the twisted identity for a pair `(U, V)`.
    Twisted {
        u: String,
        v: String,
    },
    Endo {
        #[command(subcommand)]
        action: EndoAction,
    },
    Kms {
        a: String,
        b: String,
    },
    /// Distinct values `m^a n^b` with `|a|, |b| <= window`.
    Spectrum {
        window: i64,
    },
    /// Gram matrix of the matrix units `S[u;v]` with `d(u) = d(v) = level`.
    Gram {
        level: String,
    },
    /// Compares two elements through the graded action.
    Oracle {
        a: String,
        b: String,
    },
    /// Runs a named suite: semigroup, algebra, modular, kms, endo or all.
    Check {
        suite: String,
    },
}

#[derive(Subcommand)]
enum EndoAction {
    /// `PAIR` is `U, V` or a gallery name: ex39(U), ex310(U, V), ex311(U, V),
    /// ex312, ex313, canonical(p, q), inner(W).
    Apply { pair: String, expr: String },
}

const MAX_LEVEL: Degree = Degree { e: 3, f: 3 };

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

struct Session {
    opts: Options,
    theta: Arc<Permutation2D>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = Session::new(cli.opts).and_then(|s| s.run(&cli.command));
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_level(s: &str) -> Result<Degree, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |x: &str| {
        x.parse::<i64>()
            .map_err(|_| Failure::Usage(format!("bad level `{s}`, expected a,b")))
    };
    let d = match parts.as_slice() {
        [k] => Degree::new(num(k)?, num(k)?),
        [a, b] => Degree::new(num(a)?, num(b)?),
        _ => return Err(Failure::Usage(format!("bad level `{s}`, expected a,b"))),
    };
    if !d.is_nonnegative() {
        return Err(Failure::Usage(format!("level `{s}` must be nonnegative")));
    }
    Ok(d)
}

/// Rationals print bare; anything else in the scalar syntax.
fn show(x: &ExactScalar) -> String {
    match x.as_rational() {
        Some(r) => r.to_string(),
        None => x.to_string(),
    }
}

/// Splits at commas outside brackets and parentheses.
fn split_args(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (k, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..k].trim());
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

impl Session {
    fn new(opts: Options) -> Result<Self, Failure> {
        let theta = match opts.theta.as_str() {
            "identity" | "id" | "flip" => Permutation2D::builtin(&opts.theta, opts.m, opts.n)?,
            path => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read theta file `{path}`: {e}")))?;
                Permutation2D::parse(&text)?
            }
        };
        if opts.samples == 0 {
            return Err(Failure::Usage("--samples must be at least 1".into()));
        }
        if opts.float_tol.is_nan() || opts.float_tol < 0.0 {
            return Err(Failure::Usage("--float-tol must be nonnegative".into()));
        }
        Ok(Session {
            opts,
            theta: Arc::new(theta),
        })
    }

    fn expr(&self, src: &str) -> Result<Element, Failure> {
        parse_expression(src, &self.theta).map_err(|e| match e {
            Error::Syntax { pos, msg } => Failure::Usage(format!("syntax error at {pos} in `{src}`: {msg}")),
            other => Failure::Usage(other.to_string()),
        })
    }

    fn modular(&self) -> Result<ModularContext, Failure> {
        Ok(ModularContext::new(self.theta.clone(), self.opts.float_tol)?)
    }

    fn records(&self) -> bool {
        self.opts.format == Format::Records
    }

    /// Renders `(key, value)` lines in the chosen format.
    fn render(&self, rows: &[(&str, String)]) -> String {
        let mut out = String::new();
        for (k, v) in rows {
            let _ = if self.records() {
                writeln!(out, "{k}\t{v}")
            } else {
                writeln!(out, "{k}: {v}")
            };
        }
        out
    }

    /// One value in text mode, a record line otherwise.
    fn single(&self, key: &str, value: String) -> String {
        if self.records() {
            format!("{key}\t{value}\n")
        } else {
            format!("{value}\n")
        }
    }

    fn verdict(&self, ok: bool, rows: &[(&str, String)]) -> Outcome {
        let mut rows = rows.to_vec();
        rows.push(("result", if ok { "pass" } else { "fail" }.to_string()));
        let out = self.render(&rows);
        if ok {
            Ok(out)
        } else {
            Err(Failure::Check(out))
        }
    }

    fn run(&self, cmd: &Command) -> Outcome {
        match cmd {
            Command::Nf { word } => {
                let w = parse_word(&self.theta, word)?;
                if self.records() {
                    Ok(self.render(&[("word", w.to_string()), ("degree", w.degree().to_string())]))
                } else {
                    Ok(format!("{w}\n"))
                }
            }
            Command::Mul { a, b } => {
                let p = self.expr(a)?.try_mul(&self.expr(b)?)?;
                Ok(self.single("product", p.to_string()))
            }
            Command::Omega { a } => Ok(self.single("omega", show(&self.modular()?.omega(&self.expr(a)?)))),
            Command::Inner { a, b } => {
                let x = self.modular()?.inner(&self.expr(a)?, &self.expr(b)?)?;
                Ok(self.single("inner", show(&x)))
            }
            Command::Twisted { u, v } => {
                let (u, v) = (self.expr(u)?, self.expr(v)?);
                let r = twisted_check(&u, &v)?;
                self.verdict(
                    r.holds(),
                    &[
                        ("u", u.to_string()),
                        ("v", v.to_string()),
                        ("u_unitary", r.u_unitary.to_string()),
                        ("v_unitary", r.v_unitary.to_string()),
                        ("residual", r.residual.to_string()),
                    ],
                )
            }
            Command::Endo {
                action: EndoAction::Apply { pair, expr },
            } => {
                let pair = self.pair(pair)?;
                let endo = Endomorphism::from_pair(pair)?;
                let x = self.expr(expr)?;
                Ok(self.single("image", endo.apply(&x).to_string()))
            }
            Command::Kms { a, b } => {
                let (a, b) = (self.expr(a)?, self.expr(b)?);
                let w = self.modular()?.kms_check(&a, &b)?;
                self.verdict(
                    w.holds,
                    &[
                        ("a", a.to_string()),
                        ("b", b.to_string()),
                        ("lhs", show(&w.lhs)),
                        ("rhs", show(&w.rhs)),
                    ],
                )
            }
            Command::Spectrum { window } => {
                if *window < 0 || *window > MAX_LEVEL.e {
                    return Err(Failure::Usage(format!("window must lie in 0..={}", MAX_LEVEL.e)));
                }
                let values = self.modular()?.delta_spectrum(*window);
                let mut out = String::new();
                for v in &values {
                    out.push_str(&self.single("value", show(v)));
                }
                Ok(out)
            }
            Command::Gram { level } => self.gram(parse_level(level)?),
            Command::Oracle { a, b } => {
                let (a, b) = (self.expr(a)?, self.expr(b)?);
                let d = default_stratum([&a, &b]);
                let reach = [&a, &b]
                    .iter()
                    .flat_map(|x| x.terms().map(|(t, _)| t.u.degree()))
                    .fold(Degree::ZERO, Degree::join);
                let top = d + reach;
                let model = GradedActionModel::new(self.theta.clone(), top.e.max(top.f));
                let equal = model.oracle_equal(&a, &b)?;
                self.verdict(
                    equal,
                    &[
                        ("a", a.to_string()),
                        ("b", b.to_string()),
                        ("stratum", d.to_string()),
                        ("equal", equal.to_string()),
                    ],
                )
            }
            Command::Check { suite } => self.check(suite),
        }
    }

    fn pair(&self, src: &str) -> Result<UnitaryPair, Failure> {
        let src = src.trim();
        let (name, args) = match src.find('(') {
            Some(k)
                if src.ends_with(')')
                    && src[..k].chars().all(|c| c.is_ascii_alphanumeric())
                    && !src[..k].is_empty() =>
            {
                (&src[..k], split_args(&src[k + 1..src.len() - 1]))
            }
            _ => (src, Vec::new()),
        };
        let arity = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(Failure::Usage(format!("`{name}` takes {k} argument(s)")))
            }
        };
        let which = match name {
            "ex39" => {
                arity(1)?;
                Gallery::Ex39(self.expr(args[0])?)
            }
            "ex310" => {
                arity(2)?;
                Gallery::Ex310(self.expr(args[0])?, self.expr(args[1])?)
            }
            "ex311" => {
                arity(2)?;
                Gallery::Ex311(self.expr(args[0])?, self.expr(args[1])?)
            }
            "ex312" => Gallery::Ex312,
            "ex313" => Gallery::Ex313,
            "canonical" => {
                arity(2)?;
                let num = |s: &str| {
                    s.parse::<i64>()
                        .map_err(|_| Failure::Usage(format!("bad degree `{s}`")))
                };
                let (p, q) = (num(args[0])?, num(args[1])?);
                if p < 0 || q < 0 || !Degree::new(p, q).le(MAX_LEVEL) {
                    return Err(Failure::Usage(format!(
                        "canonical degree must lie in (0,0)..={MAX_LEVEL}"
                    )));
                }
                Gallery::Canonical(p, q)
            }
            "inner" => {
                arity(1)?;
                Gallery::Inner(self.expr(args[0])?)
            }
            _ => {
                let parts = split_args(src);
                let [u, v] = parts.as_slice() else {
                    return Err(Failure::Usage(format!(
                        "expected `U, V` or a gallery name, got `{src}`"
                    )));
                };
                return Ok(UnitaryPair::new(self.expr(u)?, self.expr(v)?)?);
            }
        };
        Ok(gallery(&self.theta, &which)?)
    }

    fn gram(&self, level: Degree) -> Outcome {
        if !level.le(Degree::new(1, 1)) {
            return Err(Failure::Usage("gram level must be at most 1,1".into()));
        }
        let words: Vec<Word> = self.theta.enumerate_words(level);
        let basis: Vec<Element> = words
            .iter()
            .flat_map(|u| {
                words
                    .iter()
                    .map(|v| Element::generator(&self.theta, u.clone(), v.clone()))
            })
            .collect();
        let ctx = self.modular()?;
        let g = ctx.gram_matrix(&basis)?;
        let diag = ctx.omega(&basis[0]);
        let scalar_identity = g.iter().enumerate().all(|(a, row)| {
            row.iter()
                .enumerate()
                .all(|(b, x)| if a == b { x == &diag } else { x.is_zero() })
        });
        let min = min_eigenvalue(&g).unwrap_or(f64::NAN);
        self.verdict(
            scalar_identity && min > self.opts.float_tol,
            &[
                ("size", basis.len().to_string()),
                ("diagonal", show(&diag)),
                ("scalar_identity", scalar_identity.to_string()),
                ("min_eigenvalue", format!("{min:.12}")),
            ],
        )
    }

    fn check(&self, suite: &str) -> Outcome {
        let suite: Suite = suite.parse()?;
        let level = parse_level(&self.opts.level)?;
        if !level.le(MAX_LEVEL) {
            return Err(Failure::Usage(format!(
                "--level must be at most {},{}",
                MAX_LEVEL.e, MAX_LEVEL.f
            )));
        }
        let cfg = SuiteConfig {
            theta: self.theta.clone(),
            seed: self.opts.seed,
            level,
            samples: self.opts.samples,
            float_tol: self.opts.float_tol,
        };
        let report = run_suite(suite, &cfg);
        let out = if self.records() {
            report.to_records(&cfg)
        } else {
            format!("{report}\n")
        };
        if report.passed() {
            Ok(out)
        } else {
            Err(Failure::Check(out))
        }
    }
}
