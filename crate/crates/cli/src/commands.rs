//! Subcommand implementations.
//!
//! Each command parses its text inputs with [`crate::parse`], calls into
//! `berkstat-core`, and prints values as `num/den decimal` lines. The
//! statistics commands additionally write the CSV/JSON artifacts described
//! in [`crate::report`].

use crate::config::{FamilySpec, RunSettings, Settings};
use crate::decimal::decimal;
use crate::error::CliError;
use crate::parse::{
    parse_point, parse_poly, parse_rational_list, rational_text, ParsedPoint,
};
use crate::report::{report_json, series_csv};
use berkstat_core::berkovich::{self, BerkPoint};
use berkstat_core::equidist::{
    self, compute_series, convergence_report, default_family, witness_check, SeriesSet,
    TestFamily, TorusPoint,
};
use berkstat_core::{multdep, reduction, Error, FieldKind, Poly, ResidueScalar, Scalar};
use num_rational::BigRational;
use num_traits::One;
use std::path::Path;

/// One value line: the exact rational followed by its decimal rendering.
fn value_line(q: &BigRational, digits: usize) -> String {
    format!("{} {}", rational_text(q), decimal(q, digits))
}

/// Resolves a parsed point against an optional companion polynomial, which
/// fixes the coordinate count of the `gauss` keyword.
fn resolve_point(parsed: ParsedPoint, companion: Option<&Poly>) -> Result<BerkPoint, CliError> {
    match parsed {
        ParsedPoint::Concrete(z) => Ok(z),
        ParsedPoint::Gauss => match companion {
            Some(f) if f.num_vars() > 0 => Ok(BerkPoint::gauss(f.num_vars())),
            Some(_) => Err(CliError::Core(Error::InvalidArgument(
                "the gauss point needs a polynomial with at least one variable",
            ))),
            None => Err(CliError::Core(Error::InvalidArgument(
                "the gauss point needs a companion polynomial to fix its coordinate count",
            ))),
        },
    }
}

/// Pads the polynomial up to the coordinate count of the point, so that
/// `X0 - X1` can be evaluated against a three-coordinate point.
fn align(f: Poly, z: &BerkPoint) -> Result<Poly, CliError> {
    if f.num_vars() < z.num_coords() {
        Ok(f.pad_to(z.num_coords())?)
    } else {
        Ok(f)
    }
}

/// `height --f <poly>`: the height (maximal coefficient absolute value).
pub fn height(settings: &Settings, f_text: &str) -> Result<(), CliError> {
    let f = parse_poly(f_text)?;
    let h = f.height(&settings.spec)?;
    println!("{}", value_line(&h, settings.digits));
    Ok(())
}

/// `seminorm --f <poly> --z <point>`: the multiplicative seminorm `[f]` at
/// the point.
pub fn seminorm(settings: &Settings, f_text: &str, z_text: &str) -> Result<(), CliError> {
    let f = parse_poly(f_text)?;
    let z = resolve_point(parse_point(z_text)?, Some(&f))?;
    let f = align(f, &z)?;
    let v = berkovich::seminorm(&settings.spec, &z, &f)?;
    println!("{}", value_line(&v, settings.digits));
    Ok(())
}

/// `lambda --f <poly> --z <point>`: the normalized statistic
/// `[f](z) / (H(f) * sup(z)^deg)`.
pub fn lambda(settings: &Settings, f_text: &str, z_text: &str) -> Result<(), CliError> {
    let f = parse_poly(f_text)?;
    let z = resolve_point(parse_point(z_text)?, Some(&f))?;
    let f = align(f, &z)?;
    let v = berkovich::lambda(&settings.spec, &z, &f)?;
    println!("{}", value_line(&v, settings.digits));
    Ok(())
}

/// `reduce --z <point>`: the image under the reduction map (a residue point
/// in canonical scaling, or `GENERIC` for the Gauss class).
pub fn reduce(settings: &Settings, z_text: &str) -> Result<(), CliError> {
    let z = match parse_point(z_text)? {
        // Every Gauss point reduces to the generic point, so no coordinate
        // count is needed.
        ParsedPoint::Gauss => BerkPoint::gauss(1),
        ParsedPoint::Concrete(z) => z,
    };
    let image = reduction::reduce_point(&settings.spec, &z)?;
    println!("{}", image);
    Ok(())
}

/// Converts parsed rational literals into residue field elements.
fn residue_coords(
    settings: &Settings,
    qs: Vec<BigRational>,
) -> Result<Vec<ResidueScalar>, CliError> {
    match settings.spec.kind() {
        FieldKind::TAdic => Ok(qs.into_iter().map(ResidueScalar::rat).collect()),
        FieldKind::PAdic => qs
            .into_iter()
            .map(|q| {
                settings
                    .spec
                    .reduce(&Scalar::from_rat(q))
                    .map_err(CliError::from)
            })
            .collect(),
    }
}

/// `multdep <coords>`: a basis of the multiplicative relation lattice of the
/// residue coordinates, one `relation:` line per basis vector.
pub fn multdep_cmd(settings: &Settings, coords_text: &str, bound: u64) -> Result<(), CliError> {
    let coords = residue_coords(settings, parse_rational_list(coords_text)?)?;
    let basis = multdep::relation_basis(&coords, bound)?;
    if basis.is_empty() {
        println!("independent");
    } else {
        for rel in &basis {
            println!("relation: {}", rel);
        }
    }
    Ok(())
}

/// Builds the torus point of a statistics run from a parsed point.
fn torus_point(settings: &Settings, parsed: ParsedPoint) -> Result<TorusPoint, CliError> {
    match parsed {
        ParsedPoint::Concrete(BerkPoint::TypeI(coords)) => {
            Ok(TorusPoint::new(&settings.spec, coords)?)
        }
        _ => Err(CliError::Core(Error::UnsupportedPoint(
            "statistics runs need a type-I point with unit coordinates",
        ))),
    }
}

/// `witness --z <point>`: the dependence certificate at the point, when one
/// exists: the first basis relation, its witness form, and the discrepancy
/// `A` with `|A| < 1`.
pub fn witness(settings: &Settings, z_text: &str, bound: u64) -> Result<(), CliError> {
    let a = torus_point(settings, parse_point(z_text)?)?;
    let ratios = a.residue_ratios(&settings.spec)?;
    let basis = multdep::relation_basis(&ratios, bound)?;
    let Some(first) = basis.first() else {
        println!("nondegenerate");
        return Ok(());
    };
    let w = witness_check(&settings.spec, &a, first.coeffs())?;
    println!("relation: {}", first);
    println!("witness: {}", w.polynomial);
    println!("A: {}", w.discrepancy);
    println!("absA: {}", value_line(&w.discrepancy_abs, settings.digits));
    Ok(())
}

/// Builds the test family of a run.
fn build_family(
    settings: &Settings,
    a: &TorusPoint,
    run: &RunSettings,
) -> Result<TestFamily, CliError> {
    let n = a.dim() + 1;
    match &run.family {
        FamilySpec::Default { random } => Ok(default_family(
            &settings.spec,
            a,
            run.seed,
            *random,
            run.options.bound,
        )?),
        FamilySpec::Inline(polys) => {
            let members = polys
                .iter()
                .map(|f| {
                    if f.num_vars() < n {
                        f.pad_to(n).map_err(CliError::from)
                    } else {
                        Ok(f.clone())
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(TestFamily::new(&settings.spec, n, members)?)
        }
    }
}

fn write_artifact(path: &Path, bytes: &str) -> Result<(), CliError> {
    std::fs::write(path, bytes)
        .map_err(|e| CliError::Io(format!("cannot write {}: {}", path.display(), e)))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn prepare_out(run: &RunSettings) -> Result<(), CliError> {
    std::fs::create_dir_all(&run.out)
        .map_err(|e| CliError::Io(format!("cannot create {}: {}", run.out.display(), e)))
}

/// `weyl`: the full convergence experiment. Writes `report.json` and
/// `series.csv` into the output directory and prints the verdict.
pub fn weyl(settings: &Settings, run: &RunSettings) -> Result<(), CliError> {
    let a = torus_point(settings, parse_point(&run.point_text)?)?;
    let family = build_family(settings, &a, run)?;
    let report = convergence_report(&settings.spec, &a, &family, &run.options)?;
    println!("verdict: {}", report.verdict);
    if let Some(w) = &report.witness {
        println!(
            "relation: {}",
            w.relation
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        );
        println!("witness: {}", w.polynomial);
        println!("absA: {}", value_line(&w.discrepancy_abs, settings.digits));
    }
    if let Some(p) = report.precision_used {
        println!("precision: {}", p);
    }
    prepare_out(run)?;
    let json = report_json(
        &settings.spec,
        &a.point(),
        &run.options,
        run.seed,
        &family,
        &report,
        settings.digits,
    );
    write_artifact(&run.out.join("report.json"), &json)?;
    write_artifact(
        &run.out.join("series.csv"),
        &series_csv(&report.members, settings.digits),
    )?;
    Ok(())
}

/// `stats`: the statistics series of every family member, without a verdict.
/// Writes `series.csv`, prints the table, and spot-checks the lower-bound
/// inequality `S_l >= t*(1 - count_below(t)/l)` at the configured
/// thresholds.
pub fn stats(settings: &Settings, run: &RunSettings) -> Result<(), CliError> {
    let a = torus_point(settings, parse_point(&run.point_text)?)?;
    let family = build_family(settings, &a, run)?;
    let set: SeriesSet = compute_series(&settings.spec, &a, &family, &run.options)?;
    for member in &set.members {
        println!("member: {}", member.poly);
        for p in &member.series {
            println!(
                "  l={} S={} count_below_1={} count_below_1_2={}",
                p.l,
                value_line(&p.s, settings.digits),
                p.count_below_one,
                p.count_below_half,
            );
        }
    }
    check_lower_bound(settings, &a, &family, &run.options.lmax, &run.thresholds)?;
    prepare_out(run)?;
    write_artifact(
        &run.out.join("series.csv"),
        &series_csv(&set.members, settings.digits),
    )?;
    Ok(())
}

/// Verifies `S_l >= t*(1 - count_below(t)/l)` exactly for every member and
/// threshold at a short orbit length, and prints one summary line.
fn check_lower_bound(
    settings: &Settings,
    a: &TorusPoint,
    family: &TestFamily,
    lmax: &u64,
    thresholds: &[BigRational],
) -> Result<(), CliError> {
    if thresholds.is_empty() {
        return Ok(());
    }
    let l = (*lmax).min(50);
    let z = equidist::powers_multiset(&settings.spec, a, l)?;
    let total = BigRational::from_integer(l.into());
    for f in family.members() {
        let s = equidist::s_statistic(&settings.spec, &z, f)?;
        for t in thresholds {
            let count = equidist::count_below(&settings.spec, &z, f, t)?;
            let bound =
                t * (BigRational::one() - BigRational::from_integer(count.into()) / &total);
            assert!(
                s >= bound,
                "lower bound violated at l={} for {} with t={}",
                l,
                f,
                t
            );
        }
    }
    let list = thresholds
        .iter()
        .map(rational_text)
        .collect::<Vec<_>>()
        .join(", ");
    println!(
        "checked S_l >= t*(1 - count_below(t)/l) at l={} for t = {}: ok",
        l, list
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use berkstat_core::FieldSpec;

    fn settings() -> Settings {
        Settings {
            spec: FieldSpec::t_adic(),
            digits: 12,
        }
    }

    #[test]
    fn gauss_points_resolve_against_the_polynomial() {
        let f = parse_poly("X0^2 + X1^2").unwrap();
        let z = resolve_point(ParsedPoint::Gauss, Some(&f)).unwrap();
        assert_eq!(z, BerkPoint::gauss(2));
        assert!(resolve_point(ParsedPoint::Gauss, None).is_err());
    }

    #[test]
    fn polynomials_pad_up_to_the_point() {
        let f = parse_poly("X0 - X1").unwrap();
        let z = BerkPoint::gauss(3);
        assert_eq!(align(f, &z).unwrap().num_vars(), 3);
    }

    #[test]
    fn residue_coordinates_follow_the_field_kind() {
        let qs = parse_rational_list("2,4").unwrap();
        let coords = residue_coords(&settings(), qs.clone()).unwrap();
        assert!(matches!(coords[0], ResidueScalar::Rat(_)));

        let p7 = Settings {
            spec: FieldSpec::p_adic(7).unwrap(),
            digits: 12,
        };
        let coords = residue_coords(&p7, qs).unwrap();
        assert_eq!(coords, vec![ResidueScalar::fp(2, 7), ResidueScalar::fp(4, 7)]);
    }

    #[test]
    fn statistics_commands_reject_non_type_i_points() {
        let err = torus_point(&settings(), ParsedPoint::Gauss).unwrap_err();
        assert_eq!(err.exit_code(), 5);
    }
}
