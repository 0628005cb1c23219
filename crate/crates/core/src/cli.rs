//! Command-line front end.
//!
//! Maps are exchanged as JSON (`{"h": …, "g": …, "class": …}`), read from a
//! file path or from standard input when the path is `-`.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bohr;
use crate::bounds::{self, ClassProfile, DistortionVariant};
use crate::catalog;
use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;
use crate::invariance::{self, DiskAutomorphism};
use crate::numcheck::{self, GridSpec};
use crate::series::{Complex, PowerSeries, DEFAULT_ORDER};

#[derive(Parser, Debug)]
#[command(name = "harmap", version, about = "Truncated-series experiments with planar harmonic mappings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump a named function: k, l, K, L, M, V or identity.
    Catalog {
        name: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Exponent n of V_α.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Parameter α of V_α.
        #[arg(long, default_value = "0.2", allow_hyphen_values = true)]
        alpha: String,
    },
    /// Analytic slice h + εg.
    Slice {
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
    },
    /// ε-rotation h + conj(εg).
    Rotate {
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
    },
    /// Affine transform A_c or Koebe transform K_φ.
    Transform(TransformArgs),
    /// Coefficient bounds of a class profile.
    BoundsCheck {
        map: String,
        #[arg(long)]
        profile: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        upto: usize,
    },
    /// Growth and covering bounds for an order α.
    GrowthTable {
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_delimiter = ',')]
        radii: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Jacobian and derivative bounds for an order α.
    DistortionTable {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        b1: f64,
        #[arg(long, value_delimiter = ',')]
        radii: Vec<f64>,
        #[arg(long, default_value = "LEMMA_B")]
        variant: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Bohr radius of a class profile.
    BohrRadius {
        #[arg(long)]
        profile: String,
    },
    /// Majorant sum of a map against a profile's covering radius.
    BohrCheck {
        map: String,
        #[arg(long)]
        profile: String,
        #[arg(long)]
        r: f64,
    },
    /// Univalence and convexity of the slices h + εg.
    StabilityTable(StabilityArgs),
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("kind").required(true).args(["affine", "auto"])))]
struct TransformArgs {
    map: String,
    /// Affine parameter c.
    #[arg(long, allow_hyphen_values = true)]
    affine: Option<String>,
    /// Disk automorphism as `a,theta`.
    #[arg(long, allow_hyphen_values = true)]
    auto: Option<String>,
    #[arg(long, default_value_t = invariance::DEFAULT_MAX_SHIFT)]
    max_shift: f64,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("samples").required(true).multiple(true).args(["eps_circle", "eps_disk"])))]
struct StabilityArgs {
    map: String,
    /// Number of equispaced ε on the unit circle.
    #[arg(long)]
    eps_circle: Option<usize>,
    /// Number of radial levels of ε in the closed disk.
    #[arg(long)]
    eps_disk: Option<usize>,
    #[arg(long, default_value_t = 16)]
    radii: usize,
    #[arg(long, default_value_t = 0.75)]
    r_max: f64,
    #[arg(long, default_value_t = 192)]
    angles: usize,
    #[arg(long, default_value_t = numcheck::DEFAULT_TOL)]
    tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code: 0 on success, 1 on domain errors, 2 on usage errors.
pub fn run(args: &[String], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let text = err.render().to_string();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match execute(cli.command, stdin) {
        Ok(text) => {
            if stdout.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            1
        }
    }
}

fn execute(command: Command, stdin: &mut dyn Read) -> Result<String> {
    match command {
        Command::Catalog {
            name,
            order,
            format,
            n,
            alpha,
        } => catalog_entry(&name, order, n, parse_complex(&alpha)?, format),
        Command::Slice { map, eps } => {
            let f = read_map(&map, stdin)?;
            to_json(&f.analytic_slice(parse_complex(&eps)?)?)
        }
        Command::Rotate { map, eps } => {
            let f = read_map(&map, stdin)?;
            to_json(&f.epsilon_rotate(parse_complex(&eps)?)?)
        }
        Command::Transform(args) => {
            let f = read_map(&args.map, stdin)?;
            let out = match (args.affine, args.auto) {
                (Some(c), _) => invariance::affine_transform(&f, parse_complex(&c)?)?,
                (None, Some(spec)) => {
                    let phi = parse_automorphism(&spec)?;
                    invariance::koebe_transform_with_limit(&f, &phi, args.max_shift)?
                }
                (None, None) => unreachable!("clap enforces one of --affine/--auto"),
            };
            to_json(&out)
        }
        Command::BoundsCheck { map, profile, upto } => {
            let f = read_map(&map, stdin)?;
            let profile = ClassProfile::by_name(&profile)?;
            to_json(&bounds::check_coeff_bounds(&f, &profile, upto))
        }
        Command::GrowthTable { alpha, radii, format } => growth_table(alpha, &radii, format),
        Command::DistortionTable {
            alpha,
            b1,
            radii,
            variant,
            format,
        } => distortion_table(alpha, b1, &radii, DistortionVariant::parse(&variant)?, format),
        Command::BohrRadius { profile } => to_json(&bohr::bohr_radius(&ClassProfile::by_name(&profile)?)?),
        Command::BohrCheck { map, profile, r } => {
            let f = read_map(&map, stdin)?;
            to_json(&bohr::bohr_check(&f, &ClassProfile::by_name(&profile)?, r)?)
        }
        Command::StabilityTable(args) => {
            let f = read_map(&args.map, stdin)?;
            let grid = GridSpec::new(args.radii, 0.05f64.min(args.r_max), args.r_max, args.angles, args.tol)?;
            let mut samples = Vec::new();
            if let Some(k) = args.eps_circle {
                samples.extend(numcheck::circle_samples(k));
            }
            if let Some(k) = args.eps_disk {
                samples.extend(numcheck::disk_samples(k));
            }
            Ok(numcheck::stability_scan(&f, &samples, &grid)?.to_csv())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string(value).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn read_map(path: &str, stdin: &mut dyn Read) -> Result<HarmonicMap> {
    let mut text = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Error::InvalidParameter(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::InvalidParameter(format!("reading {path}: {e}")))?;
    }
    serde_json::from_str(&text).map_err(|e| Error::InvalidParameter(format!("map JSON: {e}")))
}

fn catalog_entry(name: &str, order: usize, n: usize, alpha: Complex, format: Format) -> Result<String> {
    let map = match name {
        "k" => return series_output(&catalog::koebe(order)?, format),
        "l" => return series_output(&catalog::half_plane(order)?, format),
        "K" => catalog::harmonic_koebe(order)?,
        "L" => catalog::harmonic_half_plane(order)?,
        "M" => catalog::mapping_m(order)?,
        "V" => catalog::v_alpha(n, alpha, order)?,
        "identity" => HarmonicMap::identity(order),
        other => return Err(Error::UnknownName(format!("catalog entry {other}"))),
    };
    match format {
        Format::Json => to_json(&map),
        Format::Csv => {
            let mut out = String::from("n,a_n,b_n\n");
            for i in 0..=map.order() {
                out.push_str(&format!("{i},{},{}\n", fmt_value(map.h()[i]), fmt_value(map.g()[i])));
            }
            Ok(out)
        }
    }
}

fn series_output(s: &PowerSeries, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(s),
        Format::Csv => {
            let mut out = String::from("n,a_n\n");
            for (i, c) in s.coeffs().iter().enumerate() {
                out.push_str(&format!("{i},{}\n", fmt_value(*c)));
            }
            Ok(out)
        }
    }
}

/// Reals print plainly, complex values as `a+bi`.
fn fmt_value(c: Complex) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.im < 0.0 {
        format!("{}-{}i", c.re, -c.im)
    } else {
        format!("{}+{}i", c.re, c.im)
    }
}

#[derive(Serialize)]
struct GrowthRow {
    r: f64,
    lower: f64,
    upper: f64,
}

fn growth_table(alpha: f64, radii: &[f64], format: Format) -> Result<String> {
    let rows = radii
        .iter()
        .map(|&r| {
            let (lower, upper) = bounds::growth_interval(alpha, r)?;
            Ok(GrowthRow { r, lower, upper })
        })
        .collect::<Result<Vec<_>>>()?;
    match format {
        Format::Json => to_json(&serde_json::json!({
            "alpha": alpha,
            "covering_radius": bounds::covering_radius(alpha)?,
            "rows": rows,
        })),
        Format::Csv => {
            let mut out = String::from("r,lower,upper\n");
            for row in rows {
                out.push_str(&format!("{},{},{}\n", row.r, row.lower, row.upper));
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct DistortionRow {
    r: f64,
    jacobian_lower: f64,
    jacobian_upper: f64,
    h_bound: f64,
    g_bound: f64,
}

fn distortion_table(alpha: f64, b1: f64, radii: &[f64], variant: DistortionVariant, format: Format) -> Result<String> {
    let rows = radii
        .iter()
        .map(|&r| {
            let (jacobian_lower, jacobian_upper) = bounds::jacobian_interval(alpha, b1, r)?;
            let (h_bound, g_bound) = bounds::derivative_bounds(alpha, b1, r, variant)?;
            Ok(DistortionRow {
                r,
                jacobian_lower,
                jacobian_upper,
                h_bound,
                g_bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut out = String::from("r,jacobian_lower,jacobian_upper,h_bound,g_bound\n");
            for row in rows {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    row.r, row.jacobian_lower, row.jacobian_upper, row.h_bound, row.g_bound
                ));
            }
            Ok(out)
        }
    }
}

fn parse_automorphism(spec: &str) -> Result<DiskAutomorphism> {
    let (a, theta) = spec
        .rsplit_once(',')
        .ok_or_else(|| Error::InvalidParameter(format!("expected a,theta, got {spec}")))?;
    let theta: f64 = theta
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad angle {theta}")))?;
    DiskAutomorphism::new(parse_complex(a)?, theta)
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` or the polar form `r@theta`.
pub fn parse_complex(text: &str) -> Result<Complex> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidParameter(format!("cannot parse complex number {text:?}"));
    let real = |t: &str| t.parse::<f64>().map_err(|_| bad());
    if let Some((r, theta)) = s.split_once('@') {
        return Ok(Complex::from_polar(real(r)?, real(theta)?));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::new(real(&s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imaginary = |t: &str| match t {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(t),
    };
    match split {
        Some(k) => Ok(Complex::new(real(&body[..k])?, imaginary(&body[k..])?)),
        None => Ok(Complex::new(0.0, imaginary(body)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn complex_syntax() {
        assert_eq!(parse_complex("1").unwrap(), c(1.0, 0.0));
        assert_eq!(parse_complex("-1").unwrap(), c(-1.0, 0.0));
        assert_eq!(parse_complex("0.5+0.25i").unwrap(), c(0.5, 0.25));
        assert_eq!(parse_complex("0.5-0.25i").unwrap(), c(0.5, -0.25));
        assert_eq!(parse_complex("-2i").unwrap(), c(0.0, -2.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1-i").unwrap(), c(1.0, -1.0));
        assert_eq!(parse_complex("1e-3+2E-2i").unwrap(), c(1e-3, 2e-2));
        assert_eq!(parse_complex("-1e-3-2e+2i").unwrap(), c(-1e-3, -200.0));
        let p = parse_complex("1@3.141592653589793").unwrap();
        assert!((p - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+xi").is_err());
    }

    #[test]
    fn automorphism_syntax() {
        let phi = parse_automorphism("0.3-0.2i,1.5").unwrap();
        assert_eq!(phi.a(), c(0.3, -0.2));
        assert_eq!(phi.theta(), 1.5);
        assert!(parse_automorphism("0.3").is_err());
        assert!(parse_automorphism("1.5,0").is_err());
    }

    #[test]
    fn value_formatting() {
        assert_eq!(fmt_value(c(2.5, 0.0)), "2.5");
        assert_eq!(fmt_value(c(1.0, -2.0)), "1-2i");
        assert_eq!(fmt_value(c(0.0, 0.5)), "0+0.5i");
    }
}
