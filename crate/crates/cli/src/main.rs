use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;

use symalt::antisymmetric::{
    alternant_basis, catalan_exact, decompose_n2, decompose_nrj, factor_d1, generator_report, lower_bound,
    scientific_3sf, upper_bound, QuotientOptions, RankMethod, DEFAULT_MONOMIAL_LIMIT,
};
use symalt::group::{
    antisymmetrize, generate_subgroup, is_antisymmetric, is_invariant, symmetrize, FiniteGroup, Permutation,
    DEFAULT_GROUP_CAP,
};
use symalt::numeric::{
    antisymmetrization_monotonicity_check, build_grid, ck_norm_on_grid, counterexample_ratio, fit_polynomial,
    fit_polynomial_f64, symmetrization_monotonicity_check, Point,
};
use symalt::poly::{parse, parse_rational, Polynomial};
use symalt::symmetric::rewrite_in_powersums;

#[derive(Parser)]
#[command(name = "symalt", version, about = "Symmetric and antisymmetric polynomial toolkit")]
struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the library's parallel loops.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PolyInput {
    /// File holding the polynomial.
    #[arg(short = 'f', long = "file", conflicts_with = "poly")]
    file: Option<PathBuf>,

    /// Polynomial text given inline.
    #[arg(short = 'p', long = "poly")]
    poly: Option<String>,

    #[arg(long)]
    n: usize,

    #[arg(long)]
    d: usize,
}

#[derive(Args)]
struct GroupArg {
    /// Subgroup generators as 1-based one-line images, e.g. "2,1,3;2,3,1".
    /// Defaults to the full symmetric group.
    #[arg(long)]
    group: Option<String>,
}

#[derive(Args)]
struct GridArgs {
    /// Lower corner of the box, one rational per coordinate (comma separated).
    #[arg(long, allow_hyphen_values = true)]
    lo: String,

    /// Upper corner of the box.
    #[arg(long, allow_hyphen_values = true)]
    hi: String,

    #[arg(long, default_value_t = 3)]
    resolution: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum RankArg {
    Exact,
    Modular,
    Confirmed,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProjectionArg {
    Symmetrize,
    Antisymmetrize,
}

#[derive(Subcommand)]
enum Command {
    /// Average a polynomial over a group.
    Symmetrize {
        #[command(flatten)]
        input: PolyInput,
        #[command(flatten)]
        group: GroupArg,
    },
    /// Signed average over the full symmetric group.
    Antisymmetrize {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Test invariance or antisymmetry.
    Check {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, conflicts_with = "antisymmetric", required_unless_present = "antisymmetric")]
        invariant: bool,
        #[arg(long)]
        antisymmetric: bool,
        #[command(flatten)]
        group: GroupArg,
    },
    /// Rewrite a symmetric polynomial over the power sums.
    Rewrite {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Divide an antisymmetric polynomial (d = 1) by the Vandermonde.
    VandermondeFactor {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Write an antisymmetric polynomial (n = 2) as a sum of D_l·g_l.
    DecomposeN2 {
        #[command(flatten)]
        input: PolyInput,
    },
    /// List the alternant basis of degree at most C(n,2).
    Alternants {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Bounds and the exact minimal number of module generators.
    Generators {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Also list a minimal generating set.
        #[arg(long)]
        list: bool,
        /// Force the quotient-rank computation even when a closed form exists.
        #[arg(long)]
        quotient: bool,
        #[arg(long, value_enum, default_value = "exact")]
        rank: RankArg,
        #[arg(long, default_value_t = DEFAULT_MONOMIAL_LIMIT)]
        monomial_limit: u128,
    },
    /// Lower/upper bounds and exact counts as CSV.
    BoundsTable {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Render upper bounds with three significant figures.
        #[arg(long)]
        pretty: bool,
    },
    /// C^k norm of a polynomial on a tensor grid.
    CkNorm {
        #[command(flatten)]
        input: PolyInput,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Least-squares fit in the monomial basis.
    Fit {
        /// CSV rows: the n·d coordinates (row-major) followed by the value.
        #[arg(long)]
        samples: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        degree: u32,
        /// Solve in floating point instead of exactly.
        #[arg(long)]
        float: bool,
    },
    /// Compare ‖f - Π(P̂)‖ with ‖f - P̂‖ on a grid.
    Monotonicity {
        #[command(flatten)]
        input: PolyInput,
        /// File holding the approximant P̂.
        #[arg(long, conflicts_with = "phat")]
        phat_file: Option<PathBuf>,
        /// Approximant P̂ given inline.
        #[arg(long)]
        phat: Option<String>,
        #[arg(long, value_enum, default_value = "symmetrize")]
        mode: ProjectionArg,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// |f(x(ε))| / ‖η(x(ε))‖ for the power-sum counterexample.
    Counterexample {
        #[arg(long, default_value_t = 4)]
        m: usize,
        /// Comma-separated rationals; defaults to 1/10, …, 1/1000000.
        #[arg(long)]
        eps: Option<String>,
    },
}

type CliResult = Result<String, Box<dyn std::error::Error>>;

fn read_poly(input: &PolyInput) -> Result<Polynomial, Box<dyn std::error::Error>> {
    let text = match (&input.file, &input.poly) {
        (Some(path), _) => std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?,
        (None, Some(t)) => t.clone(),
        (None, None) => return Err("give a polynomial with -f FILE or -p TEXT".into()),
    };
    Ok(parse(text.trim(), input.n, input.d)?)
}

fn read_group(arg: &GroupArg, n: usize) -> Result<FiniteGroup, Box<dyn std::error::Error>> {
    let Some(text) = &arg.group else {
        return Ok(FiniteGroup::symmetric(n)?);
    };
    let mut gens = Vec::new();
    for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let images = part
            .split(',')
            .map(|v| v.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| format!("bad permutation {part:?}: {e}"))?;
        gens.push(Permutation::from_one_line(&images)?);
    }
    Ok(generate_subgroup(n, &gens, DEFAULT_GROUP_CAP)?)
}

fn rationals(list: &str) -> Result<Vec<BigRational>, Box<dyn std::error::Error>> {
    Ok(list
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>, _>>()?)
}

fn grid_for(args: &GridArgs, n: usize, group: &FiniteGroup) -> Result<symalt::numeric::SampleGrid, Box<dyn std::error::Error>> {
    Ok(build_grid(&rationals(&args.lo)?, &rationals(&args.hi)?, args.resolution, n, group)?)
}

fn poly_out(p: &Polynomial, json: bool) -> String {
    if json {
        format!("{}\n", p.to_json())
    } else {
        format!("{p}\n")
    }
}

fn degree_text(p: &Polynomial) -> String {
    p.degree().map_or_else(|| "none".to_string(), |k| k.to_string())
}

fn run(cli: Cli) -> CliResult {
    let json = cli.json;
    match cli.command {
        Command::Symmetrize { input, group } => {
            let p = read_poly(&input)?;
            let g = read_group(&group, input.n)?;
            Ok(poly_out(&symmetrize(&p, &g)?, json))
        }
        Command::Antisymmetrize { input } => Ok(poly_out(&antisymmetrize(&read_poly(&input)?), json)),
        Command::Check {
            input,
            invariant,
            antisymmetric,
            group,
        } => {
            let p = read_poly(&input)?;
            let (name, holds) = if antisymmetric {
                ("antisymmetric", is_antisymmetric(&p))
            } else {
                debug_assert!(invariant);
                ("invariant", is_invariant(&p, &read_group(&group, input.n)?))
            };
            if json {
                Ok(format!(
                    "{}\n",
                    serde_json::json!({ name: holds, "degree": p.degree() })
                ))
            } else {
                Ok(format!("{name}: {holds}, degree: {}\n", degree_text(&p)))
            }
        }
        Command::Rewrite { input } => {
            let expr = rewrite_in_powersums(&read_poly(&input)?)?;
            if json {
                Ok(format!("{}\n", serde_json::to_string(&expr.to_json())?))
            } else {
                Ok(format!("{expr}\n"))
            }
        }
        Command::VandermondeFactor { input } => Ok(poly_out(&factor_d1(&read_poly(&input)?)?, json)),
        Command::DecomposeN2 { input } => {
            let gs = decompose_n2(&read_poly(&input)?)?;
            if json {
                let v: Vec<_> = gs.iter().map(symalt::poly::PolynomialJson::from).collect();
                Ok(format!("{}\n", serde_json::to_string(&v)?))
            } else {
                let mut out = String::new();
                for (l, g) in gs.iter().enumerate() {
                    writeln!(out, "g_{} = {g}", l + 1)?;
                }
                Ok(out)
            }
        }
        Command::Alternants { n, d } => {
            if n < 2 || d < 1 {
                return Err("alternants need n ≥ 2 and d ≥ 1".into());
            }
            let basis = alternant_basis(n, d);
            if json {
                let v: Vec<_> = basis
                    .iter()
                    .map(|a| {
                        serde_json::json!({
                            "rows": a.rows,
                            "degree": a.degree(),
                            "polynomial": symalt::poly::PolynomialJson::from(&a.polynomial),
                        })
                    })
                    .collect();
                Ok(format!("{}\n", serde_json::to_string(&v)?))
            } else {
                let mut out = format!("{} alternants\n", basis.len());
                for a in &basis {
                    let rows: Vec<String> = a
                        .rows
                        .iter()
                        .map(|r| format!("({})", r.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
                        .collect();
                    writeln!(out, "degree {}: {}", a.degree(), rows.join(" "))?;
                }
                Ok(out)
            }
        }
        Command::Generators {
            n,
            d,
            list,
            quotient,
            rank,
            monomial_limit,
        } => {
            let opts = QuotientOptions {
                monomial_limit,
                rank_method: match rank {
                    RankArg::Exact => RankMethod::Exact,
                    RankArg::Modular => RankMethod::Modular,
                    RankArg::Confirmed => RankMethod::ModularConfirmed,
                },
            };
            let mut report = generator_report(n, d, list, &opts)?;
            if quotient {
                let count = symalt::antisymmetric::minimal_generator_count(n, d, &opts)?;
                report.exact = Some(count.into());
                report.exact_method = symalt::antisymmetric::ExactMethod::QuotientRank;
            }
            if json {
                return Ok(format!("{}\n", report.to_json()));
            }
            let exact = report.exact.as_ref().map_or_else(|| "unknown".to_string(), ToString::to_string);
            let mut out = format!(
                "lower={} exact={} upper={}\n",
                report.lower_bound, exact, report.upper_bound
            );
            if let Some(gens) = &report.generators {
                for g in gens {
                    writeln!(out, "{g}")?;
                }
            }
            Ok(out)
        }
        Command::BoundsTable {
            d,
            n_min,
            n_max,
            pretty,
        } => {
            if n_min < 2 || n_max < n_min || d < 1 {
                return Err("need 2 ≤ n-min ≤ n-max and d ≥ 1".into());
            }
            let mut out = String::from("n,r,j,lower,upper,exact\n");
            for n in n_min..=n_max {
                let nrj = decompose_nrj(n as u64, d as u64)?;
                let lower = lower_bound(n as u64, d as u64)?;
                let upper = upper_bound(n as u64, d as u64)?;
                let upper = if pretty { scientific_3sf(&upper) } else { upper.to_string() };
                let exact = match d {
                    1 => "1".to_string(),
                    2 => catalan_exact(n as u64).to_string(),
                    _ if n == 2 => d.to_string(),
                    _ => String::new(),
                };
                writeln!(out, "{n},{},{},{lower},{upper},{exact}", nrj.r, nrj.j)?;
            }
            Ok(out)
        }
        Command::CkNorm { input, grid, group, k } => {
            let p = read_poly(&input)?;
            let g = read_group(&group, input.n)?;
            let grid = grid_for(&grid, input.n, &g)?;
            let report = ck_norm_on_grid(&p, &grid, k)?;
            if json {
                Ok(format!("{}\n", report.to_json()))
            } else {
                Ok(report.to_csv())
            }
        }
        Command::Fit {
            samples,
            n,
            d,
            degree,
            float,
        } => {
            let text = std::fs::read_to_string(&samples).map_err(|e| format!("{}: {e}", samples.display()))?;
            let rows: Vec<Vec<&str>> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| l.split(',').map(str::trim).collect())
                .collect();
            if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n * d + 1) {
                return Err(format!("sample row {} has {} fields, expected {}", i + 1, r.len(), n * d + 1).into());
            }
            if float {
                let parsed = rows
                    .iter()
                    .map(|r| {
                        let v = r.iter().map(|s| s.parse::<f64>()).collect::<Result<Vec<_>, _>>()?;
                        Ok(((0..n).map(|i| v[i * d..(i + 1) * d].to_vec()).collect(), v[n * d]))
                    })
                    .collect::<Result<Vec<_>, std::num::ParseFloatError>>()?;
                let fit = fit_polynomial_f64(&parsed, degree, n, d)?;
                if json {
                    let terms: Vec<_> = fit
                        .basis
                        .iter()
                        .zip(&fit.coefficients)
                        .map(|(m, c)| serde_json::json!({ "exp": m.row_vectors(), "coef": c }))
                        .collect();
                    return Ok(format!("{}\n", serde_json::json!({ "terms": terms, "residual": fit.residual })));
                }
                let mut out = String::new();
                for (m, c) in fit.basis.iter().zip(&fit.coefficients) {
                    writeln!(out, "{c:+e}*{m}")?;
                }
                writeln!(out, "residual={:e}", fit.residual)?;
                Ok(out)
            } else {
                let mut parsed: Vec<(Point, BigRational)> = Vec::with_capacity(rows.len());
                for r in &rows {
                    let v = r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
                    parsed.push(((0..n).map(|i| v[i * d..(i + 1) * d].to_vec()).collect(), v[n * d].clone()));
                }
                let fit = fit_polynomial(&parsed, degree, n, d)?;
                if json {
                    return Ok(format!(
                        "{}\n",
                        serde_json::json!({
                            "polynomial": symalt::poly::PolynomialJson::from(&fit.polynomial),
                            "residual": fit.residual.to_string(),
                        })
                    ));
                }
                Ok(format!("{}\nresidual={}\n", fit.polynomial, fit.residual))
            }
        }
        Command::Monotonicity {
            input,
            phat_file,
            phat,
            mode,
            grid,
            group,
            k,
        } => {
            let f = read_poly(&input)?;
            let p_hat = read_poly(&PolyInput {
                file: phat_file,
                poly: phat,
                n: input.n,
                d: input.d,
            })?;
            let r = match mode {
                ProjectionArg::Symmetrize => {
                    let g = read_group(&group, input.n)?;
                    let grid = grid_for(&grid, input.n, &g)?;
                    symmetrization_monotonicity_check(&f, &p_hat, &g, &grid, k)?
                }
                ProjectionArg::Antisymmetrize => {
                    let g = FiniteGroup::symmetric(input.n)?;
                    let grid = grid_for(&grid, input.n, &g)?;
                    antisymmetrization_monotonicity_check(&f, &p_hat, &grid, k)?
                }
            };
            if json {
                Ok(format!(
                    "{}\n",
                    serde_json::json!({ "lhs": r.lhs.to_string(), "rhs": r.rhs.to_string(), "ok": r.ok })
                ))
            } else {
                Ok(format!("lhs={} rhs={} ok={}\n", r.lhs, r.rhs, r.ok))
            }
        }
        Command::Counterexample { m, eps } => {
            let eps = match eps {
                Some(list) => rationals(&list)?,
                None => (1..=6)
                    .map(|e| BigRational::new(1.into(), num_bigint::BigInt::from(10u64.pow(e))))
                    .collect(),
            };
            let rows = eps
                .iter()
                .map(|e| counterexample_ratio(e, m))
                .collect::<Result<Vec<_>, _>>()?;
            if json {
                return Ok(format!("{}\n", serde_json::to_string(&rows)?));
            }
            let mut out = String::from("eps,f_val,eta_norm,ratio,growth\n");
            for (i, r) in rows.iter().enumerate() {
                let growth = if i == 0 || rows[i - 1].ratio.is_zero() {
                    String::new()
                } else {
                    format!("{:.6}", r.ratio / rows[i - 1].ratio)
                };
                writeln!(out, "{:e},{:e},{:e},{:.6},{growth}", r.eps, r.f_val, r.eta_norm, r.ratio)?;
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
