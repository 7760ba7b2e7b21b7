//! `ritt-lab`: exact polynomial composition dynamics from the command line.
//!
//! Every command prints one JSON report on stdout. Input errors go to stderr
//! with a nonzero exit code; an `Unknown` verdict is a normal result.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ritt_lab::io::parse_poly;
use ritt_lab::io::report::{bounds_from_env, Report};
use ritt_lab::semigroup::{
    classify, common_iterate, free_collision_search, twisted_pair, SearchBounds, SemidirectContext,
    SemidirectElement,
};
use ritt_lab::{
    all_decompositions, aut_group, aut_stabilization, chebyshev, g_group, is_special,
    linear_equivalence, right_factor, ritt_first, ritt_second_family, verify_aut, verify_twist,
    Dressing, Error, Poly, RittSecondFamily,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "ritt-lab",
    version,
    about = "Exact polynomial composition dynamics over the rationals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct BoundArgs {
    /// Largest multiplier on the minimal exponent pair.
    #[arg(long)]
    tmax: Option<usize>,
    /// Largest iterate tried when testing commutation.
    #[arg(long)]
    lmax: Option<usize>,
    /// Longest composition word in collision searches.
    #[arg(long)]
    wordmax: Option<usize>,
}

impl BoundArgs {
    /// Flags override `RITT_LAB_BOUNDS`, which overrides the defaults.
    fn resolve(self) -> Result<SearchBounds, Error> {
        let base = bounds_from_env()?;
        SearchBounds::new(
            self.tmax.unwrap_or(base.tmax),
            self.lmax.unwrap_or(base.lmax),
            self.wordmax.unwrap_or(base.wordmax),
        )
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SemidirectOp {
    Mul,
    Realize,
    LeftAmenable,
}

#[derive(Subcommand)]
enum RittFamily {
    /// A = z^s R(z)^n, C = z^n, B = z^n, D = z^s R(z^n).
    Power {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
    /// A = T_m, C = T_n, B = T_n, D = T_m.
    Chebyshev {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum Command {
    /// P ∘ Q.
    Compose {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// P composed with itself k times.
    Iterate {
        #[arg(allow_hyphen_values = true)]
        p: String,
        k: usize,
    },
    /// Normalized right factor of degree m, or all decompositions.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        p: String,
        m: Option<usize>,
    },
    /// Conjugacy to z^n or ±T_n.
    Special {
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// Whether P = σ ∘ Q ∘ ν for affine σ, ν over ℂ.
    Equiv {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Affine maps commuting with P.
    Aut {
        #[arg(allow_hyphen_values = true)]
        p: String,
        /// Also report Aut of the first K iterates.
        #[arg(long)]
        iterates: Option<usize>,
    },
    /// Affine σ with P ∘ σ = ν ∘ P, and the twist σ ↦ ν.
    Gsym {
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// Chebyshev polynomial T_n.
    Chebyshev { n: usize },
    /// Search for A^k = B^l.
    CommonIterate {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Search for A^2k = A^k ∘ B^l and B^2l = B^l ∘ A^k.
    Twisted {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Left and right amenability of the semigroup generated by P1, P2, ...
    Classify {
        #[arg(required = true, allow_hyphen_values = true)]
        generators: Vec<String>,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Two distinct composition words in A, B with the same polynomial.
    FreeCollision {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Arithmetic in the rotation-by-R semidirect product.
    Semidirect {
        #[arg(allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum)]
        op: SemidirectOp,
        /// Element as "j,s".
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
    },
    /// |F_N \ X·F_N| / |F_N| in the semidirect product.
    Folner {
        #[arg(allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        x: String,
        #[arg(long)]
        n: u64,
    },
    /// Common outer and inner factors of a solution of A ∘ C = B ∘ D.
    Ritt1 {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// Build and check a second-family quadruple.
    Ritt2Verify {
        #[command(subcommand)]
        family: RittFamily,
    },
}

#[derive(Debug)]
enum Failure {
    Input {
        arg: String,
        text: String,
        err: Error,
    },
    Library(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

fn poly(arg: &str, text: &str) -> Result<Poly, Failure> {
    parse_poly(text).map_err(|err| Failure::Input {
        arg: arg.to_string(),
        text: text.to_string(),
        err,
    })
}

fn element(arg: &str, text: &str) -> Result<SemidirectElement, Failure> {
    let parsed = text.split_once(',').and_then(|(j, s)| {
        Some(SemidirectElement::new(
            j.trim().parse().ok()?,
            s.trim().parse().ok()?,
        ))
    });
    parsed.ok_or_else(|| {
        Failure::Usage(format!(
            "--{arg} expects \"j,s\" with nonnegative integers, got {text:?}"
        ))
    })
}

fn required<'a>(arg: &str, v: &'a Option<String>) -> Result<&'a str, Failure> {
    v.as_deref()
        .ok_or_else(|| Failure::Usage(format!("--{arg} is required for this operation")))
}

/// The generator list accepts leading hyphens, so it also swallows any bound
/// flags written after it; pull those back out.
fn split_bound_flags(
    args: Vec<String>,
    mut bounds: BoundArgs,
) -> Result<(Vec<String>, BoundArgs), Failure> {
    let mut generators = Vec::new();
    let mut it = args.into_iter();
    while let Some(arg) = it.next() {
        let (name, inline) = match arg.split_once('=') {
            Some((n, v)) if n.starts_with("--") => (n.to_string(), Some(v.to_string())),
            _ => (arg.clone(), None),
        };
        let slot = match name.as_str() {
            "--tmax" => &mut bounds.tmax,
            "--lmax" => &mut bounds.lmax,
            "--wordmax" => &mut bounds.wordmax,
            _ => {
                generators.push(arg);
                continue;
            }
        };
        let value = inline
            .or_else(|| it.next())
            .ok_or_else(|| Failure::Usage(format!("{name} needs a value")))?;
        *slot = Some(value.parse().map_err(|_| {
            Failure::Usage(format!("{name} expects a positive integer, got {value:?}"))
        })?);
    }
    Ok((generators, bounds))
}

fn run(command: Command) -> Result<Report, Failure> {
    let report = match command {
        Command::Compose { p, q } => {
            let value = poly("P", &p)?.compose(&poly("Q", &q)?).to_string();
            Report::new("compose", [("P", p), ("Q", q)], &value)?
        }
        Command::Iterate { p, k } => {
            let value = poly("P", &p)?.iterate(k).to_string();
            Report::new("iterate", [("P", json!(p)), ("k", json!(k))], &value)?
        }
        Command::Decompose { p, m } => {
            let f = poly("P", &p)?;
            match m {
                Some(m) => Report::new(
                    "decompose",
                    [("P", json!(p)), ("m", json!(m))],
                    &right_factor(&f, m)?,
                )?,
                None => Report::new("decompose", [("P", p)], &all_decompositions(&f)?)?,
            }
        }
        Command::Special { p } => {
            let kind = is_special(&poly("P", &p)?)?;
            Report::new("special", [("P", p)], &kind)?
        }
        Command::Equiv { p, q } => {
            let result = linear_equivalence(&poly("P", &p)?, &poly("Q", &q)?)?;
            Report::new("equiv", [("P", p), ("Q", q)], &result)?
        }
        Command::Aut { p, iterates } => {
            let f = poly("P", &p)?;
            let group = aut_group(&f)?;
            let mut result = json!({ "group": group, "verified": verify_aut(&group) });
            let mut input = vec![("P", json!(p))];
            if let Some(k) = iterates {
                result["iterates"] =
                    serde_json::to_value(aut_stabilization(&f, k)?).expect("plain data");
                input.push(("iterates", json!(k)));
            }
            Report::new("aut", input, &result)?
        }
        Command::Gsym { p } => {
            let group = g_group(&poly("P", &p)?)?;
            let result = json!({ "group": group, "verified": verify_twist(&group) });
            Report::new("gsym", [("P", p)], &result)?
        }
        Command::Chebyshev { n } => {
            Report::new("chebyshev", [("n", n)], &chebyshev(n).to_string())?
        }
        Command::CommonIterate { a, b, bounds } => {
            let bounds = bounds.resolve()?;
            let d = common_iterate(&poly("A", &a)?, &poly("B", &b)?, &bounds)?;
            Report::new("common-iterate", [("A", a), ("B", b)], &d)?.with_bounds(bounds)
        }
        Command::Twisted { a, b, bounds } => {
            let bounds = bounds.resolve()?;
            let d = twisted_pair(&poly("A", &a)?, &poly("B", &b)?, &bounds)?;
            Report::new("twisted", [("A", a), ("B", b)], &d)?.with_bounds(bounds)
        }
        Command::Classify { generators, bounds } => {
            let (generators, bounds) = split_bound_flags(generators, bounds)?;
            let bounds = bounds.resolve()?;
            let polys = generators
                .iter()
                .enumerate()
                .map(|(i, g)| poly(&format!("P{}", i + 1), g))
                .collect::<Result<Vec<_>, _>>()?;
            let verdict = classify(&polys, &bounds)?;
            let notes = verdict.notes.clone();
            Report::new("classify", [("generators", generators)], &verdict)?
                .with_bounds(bounds)
                .with_citations(notes)
        }
        Command::FreeCollision { a, b, bounds } => {
            let bounds = bounds.resolve()?;
            let found = free_collision_search(&poly("A", &a)?, &poly("B", &b)?, &bounds)?;
            let result = match found {
                Some((u, v)) => json!({ "collision": [u, v] }),
                None => json!({ "collision": Value::Null }),
            };
            Report::new("free-collision", [("A", a), ("B", b)], &result)?
                .with_bounds(bounds)
                .with_citations([
                    "no collision up to the word bound is evidence of freeness, not a proof",
                ])
        }
        Command::Semidirect { r, d, op, x, y } => {
            let ctx = SemidirectContext::from_poly(&poly("R", &r)?, d)?;
            let mut input = vec![("R", json!(r)), ("d", json!(d))];
            let value = match op {
                SemidirectOp::Mul => {
                    let (xs, ys) = (required("x", &x)?, required("y", &y)?);
                    input.extend([("op", json!("mul")), ("x", json!(xs)), ("y", json!(ys))]);
                    json!({ "product": ctx.mul(&element("x", xs)?, &element("y", ys)?)? })
                }
                SemidirectOp::Realize => {
                    let xs = required("x", &x)?;
                    input.extend([("op", json!("realize")), ("x", json!(xs))]);
                    json!({ "poly": ctx.realize(&element("x", xs)?)?.to_string() })
                }
                SemidirectOp::LeftAmenable => {
                    input.push(("op", json!("left-amenable")));
                    json!({ "left_amenable": ctx.left_amenable() })
                }
            };
            let result = json!({ "context": ctx, "value": value });
            Report::new("semidirect", input, &result)?
        }
        Command::Folner { r, d, x, n } => {
            let ctx = SemidirectContext::from_poly(&poly("R", &r)?, d)?;
            let ratio = ctx.folner_ratio(&element("x", &x)?, n)?;
            let result = json!({ "context": ctx, "ratio": ratio.to_string() });
            Report::new(
                "folner",
                [
                    ("R", json!(r)),
                    ("d", json!(d)),
                    ("x", json!(x)),
                    ("n", json!(n)),
                ],
                &result,
            )?
        }
        Command::Ritt1 { a, c, b, d } => {
            let f = ritt_first(
                &poly("A", &a)?,
                &poly("C", &c)?,
                &poly("B", &b)?,
                &poly("D", &d)?,
            )?;
            Report::new("ritt1", [("A", a), ("C", c), ("B", b), ("D", d)], &f)?
        }
        Command::Ritt2Verify { family } => {
            let (fam, input) = match family {
                RittFamily::Power { r, n, s } => (
                    RittSecondFamily::Power {
                        r: poly("r", &r)?,
                        n,
                        s,
                    },
                    vec![
                        ("family", json!("power")),
                        ("R", json!(r)),
                        ("n", json!(n)),
                        ("s", json!(s)),
                    ],
                ),
                RittFamily::Chebyshev { m, n } => (
                    RittSecondFamily::Chebyshev { m, n },
                    vec![
                        ("family", json!("chebyshev")),
                        ("m", json!(m)),
                        ("n", json!(n)),
                    ],
                ),
            };
            let q = ritt_second_family(&fam, &Dressing::default())?;
            let result = json!({ "quadruple": q, "holds": q.holds() });
            Report::new("ritt2-verify", input, &result)?
        }
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            // a closed pipe downstream is not our failure
            let _ = writeln!(std::io::stdout().lock(), "{}", report.to_json());
            ExitCode::SUCCESS
        }
        Err(Failure::Input { arg, text, err }) => {
            eprintln!("error: {arg}: {err}");
            let offset = match err {
                Error::Syntax { offset, .. }
                | Error::NonPolynomial { offset }
                | Error::UnsupportedVariable { offset, .. } => Some(offset),
                _ => None,
            };
            if let Some(offset) = offset {
                eprintln!("  {text}");
                let col = text[..offset.min(text.len())].chars().count();
                eprintln!("  {}^", " ".repeat(col));
            }
            ExitCode::from(1)
        }
        Err(Failure::Library(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
