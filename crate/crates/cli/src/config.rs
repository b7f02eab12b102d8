//! Run configuration: the JSON config file and its merge with command-line
//! flags.
//!
//! A config file is a single JSON document; unknown keys are rejected so that
//! typos surface immediately. Every key is optional. Command-line flags take
//! precedence over the file, and built-in defaults fill whatever remains:
//! t-adic field, base `c = p` or `2`, orbit length 500 with checkpoints
//! 10/50/100/200/500, thresholds 1/4, 1/2, 3/4, factorization bound 10^6,
//! exact mode, one thread, 12 decimal digits.

use crate::error::CliError;
use crate::parse::{parse_poly, parse_rational};
use berkstat_core::equidist::{
    self, PowerMode, RunOptions, DEFAULT_BOUND, DEFAULT_RANDOM_MEMBERS, DEFAULT_SEED,
};
use berkstat_core::{FieldKind, FieldSpec, Poly};
use num_rational::BigRational;
use serde::Deserialize;
use std::path::PathBuf;

/// Decimal digits printed after the point when no override is given.
pub const DEFAULT_DIGITS: usize = 12;

/// The JSON config file. All keys optional; unknown keys are errors.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    /// Field kind: `"t"` or `"p"`.
    pub field: Option<String>,
    /// The prime, for the p-adic kind.
    pub p: Option<u64>,
    /// Base of the realized absolute value, as a rational literal.
    pub base: Option<String>,
    /// The experiment point, in point syntax.
    pub point: Option<String>,
    /// Orbit length.
    pub lmax: Option<u64>,
    /// Strictly ascending checkpoint lengths.
    pub checkpoints: Option<Vec<u64>>,
    /// Statistic thresholds, as rational literals in (0, 1).
    pub thresholds: Option<Vec<String>>,
    /// Test family selection.
    pub family: Option<FamilyConfig>,
    /// Seed of the pseudo-random family members.
    pub seed: Option<u64>,
    /// Trial-division bound for dependence analysis.
    pub bound: Option<u64>,
    /// Engine mode: `"exact"`, `"adaptive"`, or `"adaptive:P0,CAP"`.
    pub mode: Option<String>,
    /// Worker threads for per-member evaluation.
    pub threads: Option<usize>,
    /// Decimal digits in rendered values.
    pub digits: Option<usize>,
    /// Output directory for artifacts.
    pub out: Option<String>,
}

/// Test family selection inside the config file: either a named preset or an
/// explicit list of polynomials.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyConfig {
    /// Preset name; only `"default"` is defined.
    pub preset: Option<String>,
    /// Number of pseudo-random members appended by the preset.
    pub random: Option<usize>,
    /// Explicit members, in polynomial syntax (excludes `preset`).
    pub polys: Option<Vec<String>>,
}

impl ConfigFile {
    /// Loads and validates a config file.
    pub fn load(path: &PathBuf) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {}", path.display(), e)))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("config {}: {}", path.display(), e)))
    }
}

/// The resolved test family request.
#[derive(Debug, Clone)]
pub enum FamilySpec {
    /// The default family with the given number of random members.
    Default { random: usize },
    /// Explicit members.
    Inline(Vec<Poly>),
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Settings {
    pub spec: FieldSpec,
    pub digits: usize,
}

/// Settings of a statistics run (`weyl` and `stats`).
#[derive(Debug, Clone)]
pub struct RunSettings {
    pub point_text: String,
    pub family: FamilySpec,
    pub seed: u64,
    pub thresholds: Vec<BigRational>,
    pub options: RunOptions,
    pub out: PathBuf,
}

/// Builds the field and rendering settings from flags and config.
pub fn resolve_settings(
    field: Option<&str>,
    p: Option<u64>,
    base: Option<&str>,
    digits: Option<usize>,
    cfg: &ConfigFile,
) -> Result<Settings, CliError> {
    let kind_text = field
        .map(str::to_owned)
        .or_else(|| cfg.field.clone())
        .unwrap_or_else(|| "t".into());
    let kind = match kind_text.as_str() {
        "t" => FieldKind::TAdic,
        "p" => FieldKind::PAdic,
        other => {
            return Err(CliError::Usage(format!(
                "unknown field kind '{}' (use 't' or 'p')",
                other
            )))
        }
    };
    let p = p.or(cfg.p);
    let base = match base.map(str::to_owned).or_else(|| cfg.base.clone()) {
        Some(text) => Some(parse_rational(&text).map_err(CliError::Parse)?),
        None => None,
    };
    let spec = match (kind, base) {
        (FieldKind::TAdic, None) => {
            if p.is_some() {
                return Err(CliError::Usage(
                    "the t-adic field takes no prime; drop --p or use --field p".into(),
                ));
            }
            FieldSpec::t_adic()
        }
        (FieldKind::PAdic, None) => {
            let p = p.ok_or_else(|| CliError::Usage("--field p requires --p <prime>".into()))?;
            FieldSpec::p_adic(p)?
        }
        (kind, Some(base)) => FieldSpec::new(kind, p, base)?,
    };
    let digits = digits.or(cfg.digits).unwrap_or(DEFAULT_DIGITS);
    Ok(Settings { spec, digits })
}

/// Parses an engine mode string.
pub fn parse_mode(text: &str) -> Result<PowerMode, CliError> {
    if text == "exact" {
        return Ok(PowerMode::Exact);
    }
    if text == "adaptive" {
        return Ok(PowerMode::adaptive_default());
    }
    if let Some(rest) = text.strip_prefix("adaptive:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() == 2 {
            if let (Ok(initial), Ok(cap)) = (parts[0].parse(), parts[1].parse()) {
                return Ok(PowerMode::Adaptive { initial, cap });
            }
        }
    }
    Err(CliError::Usage(format!(
        "unknown mode '{}' (use 'exact', 'adaptive', or 'adaptive:P0,CAP')",
        text
    )))
}

/// Parses a family selector: `default`, `default:K`, or a semicolon-separated
/// list of polynomials.
pub fn parse_family(text: &str) -> Result<FamilySpec, CliError> {
    if text == "default" {
        return Ok(FamilySpec::Default {
            random: DEFAULT_RANDOM_MEMBERS,
        });
    }
    if let Some(k) = text.strip_prefix("default:") {
        let random = k
            .parse()
            .map_err(|_| CliError::Usage(format!("bad family random count '{}'", k)))?;
        return Ok(FamilySpec::Default { random });
    }
    let polys = text
        .split(';')
        .map(|s| parse_poly(s).map_err(CliError::Parse))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FamilySpec::Inline(polys))
}

fn family_from_config(fc: &FamilyConfig) -> Result<FamilySpec, CliError> {
    match (&fc.preset, &fc.polys) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "family.preset and family.polys are mutually exclusive".into(),
        )),
        (_, Some(polys)) => {
            let polys = polys
                .iter()
                .map(|s| parse_poly(s).map_err(CliError::Parse))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FamilySpec::Inline(polys))
        }
        (Some(name), None) if name == "default" => Ok(FamilySpec::Default {
            random: fc.random.unwrap_or(DEFAULT_RANDOM_MEMBERS),
        }),
        (Some(name), None) => Err(CliError::Usage(format!("unknown family preset '{}'", name))),
        (None, None) => Ok(FamilySpec::Default {
            random: fc.random.unwrap_or(DEFAULT_RANDOM_MEMBERS),
        }),
    }
}

/// Flag values a statistics subcommand may carry.
#[derive(Debug, Clone, Default)]
pub struct RunFlags {
    pub z: Option<String>,
    pub lmax: Option<u64>,
    pub checkpoints: Option<String>,
    pub family: Option<String>,
    pub seed: Option<u64>,
    pub bound: Option<u64>,
    pub mode: Option<String>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
}

/// Builds the run settings of `weyl`/`stats` from flags and config.
pub fn resolve_run(flags: &RunFlags, cfg: &ConfigFile) -> Result<RunSettings, CliError> {
    let point_text = flags
        .z
        .clone()
        .or_else(|| cfg.point.clone())
        .ok_or_else(|| CliError::Usage("a point is required (--z or config 'point')".into()))?;
    let family = match (&flags.family, &cfg.family) {
        (Some(text), _) => parse_family(text)?,
        (None, Some(fc)) => family_from_config(fc)?,
        (None, None) => FamilySpec::Default {
            random: DEFAULT_RANDOM_MEMBERS,
        },
    };
    let lmax = flags
        .lmax
        .or(cfg.lmax)
        .unwrap_or_else(equidist::default_lmax);
    let checkpoints = match (&flags.checkpoints, &cfg.checkpoints) {
        (Some(text), _) => text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::Usage(format!("bad checkpoint '{}'", s)))
            })
            .collect::<Result<Vec<_>, _>>()?,
        (None, Some(list)) => list.clone(),
        // Default checkpoints, clipped to the orbit length and always ending
        // exactly at it.
        (None, None) => {
            let mut list: Vec<u64> = equidist::default_checkpoints()
                .into_iter()
                .filter(|&c| c < lmax)
                .collect();
            list.push(lmax);
            list
        }
    };
    let thresholds = match &cfg.thresholds {
        Some(list) => list
            .iter()
            .map(|s| parse_rational(s).map_err(CliError::Parse))
            .collect::<Result<Vec<_>, _>>()?,
        None => [(1, 4), (1, 2), (3, 4)]
            .iter()
            .map(|&(n, d)| BigRational::new(n.into(), d.into()))
            .collect(),
    };
    let mode = match flags.mode.clone().or_else(|| cfg.mode.clone()) {
        Some(text) => parse_mode(&text)?,
        None => PowerMode::Exact,
    };
    let options = RunOptions {
        lmax,
        checkpoints,
        bound: flags.bound.or(cfg.bound).unwrap_or(DEFAULT_BOUND),
        threads: flags.threads.or(cfg.threads).unwrap_or(1),
        mode,
    };
    let out = flags
        .out
        .clone()
        .or_else(|| cfg.out.clone().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    Ok(RunSettings {
        point_text,
        family,
        seed: flags.seed.or(cfg.seed).unwrap_or(DEFAULT_SEED),
        thresholds,
        options,
        out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_resolution() {
        let cfg = ConfigFile::default();
        let s = resolve_settings(None, None, None, None, &cfg).unwrap();
        assert_eq!(s.spec, FieldSpec::t_adic());
        assert_eq!(s.digits, DEFAULT_DIGITS);

        let s = resolve_settings(Some("p"), Some(7), None, Some(3), &cfg).unwrap();
        assert_eq!(s.spec, FieldSpec::p_adic(7).unwrap());
        assert_eq!(s.digits, 3);

        assert!(resolve_settings(Some("p"), None, None, None, &cfg).is_err());
        assert!(resolve_settings(Some("q"), None, None, None, &cfg).is_err());
        assert!(resolve_settings(None, Some(7), None, None, &cfg).is_err());
    }

    #[test]
    fn flags_override_config() {
        let cfg: ConfigFile = serde_json::from_str(
            r#"{"field": "t", "point": "(1 : 2+t : 4)", "lmax": 100,
                "checkpoints": [10, 20], "seed": 7, "mode": "adaptive"}"#,
        )
        .unwrap();
        let flags = RunFlags {
            seed: Some(9),
            mode: Some("exact".into()),
            ..RunFlags::default()
        };
        let run = resolve_run(&flags, &cfg).unwrap();
        assert_eq!(run.point_text, "(1 : 2+t : 4)");
        assert_eq!(run.seed, 9);
        assert_eq!(run.options.mode, PowerMode::Exact);
        assert_eq!(run.options.checkpoints, vec![10, 20]);
        assert_eq!(run.options.lmax, 100);
    }

    #[test]
    fn unknown_config_keys_are_rejected() {
        let err = serde_json::from_str::<ConfigFile>(r#"{"lmxa": 10}"#).unwrap_err();
        assert!(err.to_string().contains("lmxa"));
    }

    #[test]
    fn mode_and_family_selectors() {
        assert_eq!(parse_mode("exact").unwrap(), PowerMode::Exact);
        assert_eq!(
            parse_mode("adaptive:8,64").unwrap(),
            PowerMode::Adaptive { initial: 8, cap: 64 }
        );
        assert!(parse_mode("fuzzy").is_err());
        assert!(matches!(
            parse_family("default:2").unwrap(),
            FamilySpec::Default { random: 2 }
        ));
        let FamilySpec::Inline(polys) = parse_family("X0 - X1; X0 + X1").unwrap() else {
            panic!("expected inline members");
        };
        assert_eq!(polys.len(), 2);
    }
}
