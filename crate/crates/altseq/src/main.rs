use std::fs::File;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::ToPrimitive;

use altseq::dist::{distribution_dp_family_limited, distribution_dp_limited, DEFAULT_N_MAX};
use altseq::error::Error;
use altseq::fit::{
    fit_inverse_powers, fit_odd_scaled, sqrt_rational, to_decimal_string, OddSample,
    DEFAULT_DIGITS,
};
use altseq::io::{
    self, distribution_csv, distribution_json, fit_report_json, histogram_csv, histogram_json,
    report_json, write_moments_csv, FitComparison, MomentsCsv,
};
use altseq::mc::{empirical_histogram, tv_distance};
use altseq::moment::{
    gaussian_moment, moments_from_table, published_even_correction, published_odd_coeffs, rational,
    DEFAULT_MAX_ORDER,
};
use altseq::perm::{as_linear, Convention, Permutation};
use altseq::verify::{run_verification, VerifyConfig};

/// Environment variable naming the default output directory for relative
/// `--out` paths.
const OUT_DIR_ENV: &str = "ALTSEQ_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "altseq",
    version,
    about = "Exact distribution, moments, and asymptotics of the longest alternating subsequence statistic"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    /// Alternations start with a descent: a1 > a2 < a3 > ...
    Descent,
    /// Alternations start with an ascent: a1 < a2 > a3 < ...
    Ascent,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Convention {
        match c {
            ConventionArg::Descent => Convention::DescentFirst,
            ConventionArg::Ascent => Convention::AscentFirst,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the statistic on one permutation.
    Eval {
        /// Comma-separated one-based values, e.g. 2,1,3
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value = "descent")]
        convention: ConventionArg,
    },
    /// Exact counts of the statistic over S_n.
    Dist {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, value_enum, default_value = "descent")]
        convention: ConventionArg,
        /// Resource cap on n for the dynamic program.
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact moments over a range of n, as CSV with "p/q" cells.
    Moments {
        /// Inclusive range start:stop:step, e.g. 4:200:1
        #[arg(long)]
        n_range: String,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_moment: usize,
        #[arg(long, value_enum, default_value = "descent")]
        convention: ConventionArg,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit an inverse-power series to one column of a moments CSV.
    Fit {
        #[arg(long)]
        input: PathBuf,
        /// Column to fit: alpha_{2r} (plain) or q_{2r+1} (rescaled by
        /// sqrt(n/m_2) to target alpha_{2r+1} sqrt(n)).
        #[arg(long)]
        moment: String,
        /// Highest inverse power J of the fitted series.
        #[arg(long, default_value_t = 3)]
        orders: usize,
        /// Significant decimal digits for square roots.
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        precision: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded empirical histogram of the statistic.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, value_enum, default_value = "descent")]
        convention: ConventionArg,
        /// Also print the total variation distance to the exact table.
        #[arg(long)]
        compare_exact: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the whole formula-verification suite.
    Verify {
        #[arg(long, default_value_t = 200)]
        n_max: usize,
        /// Fitting window start:stop:step; skipped when above n-max.
        #[arg(long, default_value = "100:200:10")]
        fit_n_range: String,
        #[arg(long, default_value_t = 3)]
        orders: usize,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        precision: usize,
        #[arg(long, default_value_t = 200_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "descent")]
        convention: ConventionArg,
        /// Write the JSON report here (human-readable table goes to stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn resolve_out(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
            return PathBuf::from(dir).join(path);
        }
    }
    path.to_path_buf()
}

fn emit(out: Option<&PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(p) => {
            let p = resolve_out(p);
            File::create(p)?.write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

fn parse_range(s: &str) -> Result<(u64, u64, u64), Error> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "range must be start:stop:step, got {s:?}"
        )));
    }
    let nums: Vec<u64> = parts
        .iter()
        .map(|p| p.parse().map_err(|_| Error::Parse(format!("bad range component {p:?}"))))
        .collect::<Result<_, _>>()?;
    if nums[0] == 0 || nums[2] == 0 || nums[1] < nums[0] {
        return Err(Error::Parse(format!("invalid range {s:?}")));
    }
    Ok((nums[0], nums[1], nums[2]))
}

fn run(cmd: Cmd) -> Result<ExitCode, Error> {
    match cmd {
        Cmd::Eval { perm, convention } => {
            let values: Vec<u32> = perm
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad value {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            let w = Permutation::new(values)?;
            println!("{}", as_linear(&w, convention.into()));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Dist {
            n,
            format,
            convention,
            n_max,
            out,
        } => {
            let t = distribution_dp_limited(n, convention.into(), n_max)?;
            let content = match format {
                Format::Json => format!("{:#}\n", distribution_json(&t)),
                Format::Csv => {
                    let mut buf = Vec::new();
                    distribution_csv(&mut buf, &t)?;
                    String::from_utf8(buf).unwrap()
                }
            };
            emit(out.as_ref(), &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Moments {
            n_range,
            max_moment,
            convention,
            n_max,
            out,
        } => {
            let (start, stop, step) = parse_range(&n_range)?;
            let family =
                distribution_dp_family_limited(stop as usize, convention.into(), n_max)?;
            let tables: Vec<_> = (start..=stop)
                .step_by(step as usize)
                .map(|n| moments_from_table(&family[n as usize - 1], max_moment))
                .collect::<Result<_, _>>()?;
            let mut buf = Vec::new();
            write_moments_csv(&mut buf, &tables, max_moment)?;
            emit(out.as_ref(), &String::from_utf8(buf).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Fit {
            input,
            moment,
            orders,
            precision,
            out,
        } => {
            let csv = MomentsCsv::read(File::open(&input)?)?;
            let report = fit_command(&csv, &moment, orders, precision)?;
            emit(out.as_ref(), &format!("{report:#}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sample {
            n,
            samples,
            seed,
            format,
            convention,
            compare_exact,
            out,
        } => {
            let h = empirical_histogram(n, samples, seed, convention.into())?;
            let mut content = match format {
                Format::Json => format!("{:#}\n", histogram_json(&h)),
                Format::Csv => {
                    let mut buf = Vec::new();
                    histogram_csv(&mut buf, &h)?;
                    String::from_utf8(buf).unwrap()
                }
            };
            if compare_exact {
                let t = distribution_dp_limited(n, convention.into(), DEFAULT_N_MAX)?;
                content.push_str(&format!("tv_distance: {:.6}\n", tv_distance(&h, &t)?));
            }
            emit(out.as_ref(), &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            n_max,
            fit_n_range,
            orders,
            precision,
            samples,
            seed,
            convention,
            out,
        } => {
            let fit_range = parse_range(&fit_n_range)?;
            let cfg = VerifyConfig {
                n_max,
                fit_range,
                fit_degree: orders,
                precision_digits: precision,
                mc_samples: samples,
                mc_seed: seed,
                convention: convention.into(),
                ..VerifyConfig::default()
            };
            let report = run_verification(&cfg)?;
            print!("{}", report.to_text());
            if let Some(p) = out {
                emit(Some(&p), &format!("{:#}\n", report_json(&report)))?;
            }
            Ok(ExitCode::from(report.exit_code() as u8))
        }
    }
}

/// Build the fit report for one CSV column. `alpha_*` and plain columns fit
/// directly; `q_{2r+1}` columns are rescaled by sqrt(n/m_2) so the fitted
/// series targets alpha_{2r+1} sqrt(n).
fn fit_command(
    csv: &MomentsCsv,
    moment: &str,
    orders: usize,
    precision: usize,
) -> Result<serde_json::Value, Error> {
    let series;
    let mut comparisons: Vec<FitComparison> = Vec::new();

    let push_cmp = |comparisons: &mut Vec<FitComparison>,
                    label: &str,
                    target: f64,
                    target_str: String,
                    fitted: &num::BigRational| {
        let f = fitted.to_f64().unwrap();
        comparisons.push(FitComparison {
            label: label.to_string(),
            target: target_str,
            fitted: to_decimal_string(fitted, 20),
            abs_err: (f - target).abs(),
            rel_err: (f - target).abs() / target.abs().max(1e-300),
        });
    };

    if let Some(order) = moment.strip_prefix("q_") {
        let order: usize = order
            .parse()
            .map_err(|_| Error::Parse(format!("bad moment selector {moment:?}")))?;
        if order % 2 == 0 || order < 3 {
            return Err(Error::InvalidArgument(format!(
                "odd selector must name q_3, q_5, ...: {moment:?}"
            )));
        }
        let r = (order - 1) / 2;
        let q = csv.column(moment)?;
        let m2 = csv.column("m_2")?;
        let samples: Vec<OddSample> = q
            .into_iter()
            .map(|(n, q_odd)| {
                let m2_val = m2
                    .iter()
                    .find(|(m, _)| *m == n)
                    .ok_or_else(|| Error::Parse(format!("no m_2 row for n = {n}")))?
                    .1
                    .clone();
                Ok(OddSample { n, q_odd, m2: m2_val })
            })
            .collect::<Result<_, Error>>()?;
        series = fit_odd_scaled(&samples, orders, precision)?;
        let coeffs = published_odd_coeffs(r as i64);
        let target_rat = &coeffs.leading_sqrt10 * sqrt_rational(&rational(10, 1), precision);
        push_cmp(
            &mut comparisons,
            &format!("c0 vs -(sqrt(10)/43) (2r)!/(2^r r!) (r-1), r = {r}"),
            target_rat.to_f64().unwrap(),
            to_decimal_string(&target_rat, 20),
            &series.coefficients[0],
        );
    } else {
        let samples = csv.column(moment)?;
        series = fit_inverse_powers(&samples, orders)?;
        if let Some(order) = moment.strip_prefix("alpha_") {
            let order: usize = order
                .parse()
                .map_err(|_| Error::Parse(format!("bad moment selector {moment:?}")))?;
            if order % 2 != 0 || order == 0 {
                return Err(Error::InvalidArgument(format!(
                    "even selector must name alpha_2, alpha_4, ...: {moment:?}"
                )));
            }
            let r = order / 2;
            let g = gaussian_moment(r as u32);
            push_cmp(
                &mut comparisons,
                &format!("c0 vs (2r)!/(2^r r!), r = {r}"),
                g.to_f64().unwrap(),
                io::format_rational(&g),
                &series.coefficients[0],
            );
            let corr = published_even_correction(r as i64);
            let ratio = &series.coefficients[1] / &series.coefficients[0];
            push_cmp(
                &mut comparisons,
                &format!("c1/c0 vs r(r-1)(10r-713)/1764, r = {r}"),
                corr.to_f64().unwrap(),
                io::format_rational(&corr),
                &ratio,
            );
        }
    }

    Ok(fit_report_json(moment, orders, precision, &series, &comparisons))
}
