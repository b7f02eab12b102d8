//! Statistics of power orbits on the unit torus and their equidistribution
//! diagnostics.
//!
//! For a projective point `a = (a_0 : ... : a_N)` whose coordinates are all
//! units, the multiset `Z_l(a) = { a^j : 1 <= j <= l }` of coordinatewise
//! powers stays on the unit torus. For a height-1 homogeneous form `f`, the
//! running average `S_l(f) = (1/l) sum_j lambda_f(a^j)` and the counts of
//! points with `lambda_f < threshold` measure how much of the orbit meets the
//! zero locus of the reduced form. The module provides:
//!
//! * exact statistics over explicit multisets and discrete measures;
//! * multiplicative-dependence analysis of the residue data, with an explicit
//!   witness form built from any relation;
//! * a convergence report over a family of test forms, computed by an
//!   incremental power engine (exact scalars, or truncated power series with
//!   adaptive precision for the t-adic field).
//!
//! Both engine modes produce identical numbers; the adaptive mode only
//! changes how fast the valuations are resolved.

mod series;

use crate::berkovich::{self, BerkPoint};
use crate::error::{Error, Result};
use crate::field::{rat_int_pow, FieldKind, FieldSpec, ResidueScalar, Scalar, Valuation};
use crate::multdep::{self, Relation};
use crate::poly::Poly;
use crate::sample;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use series::TruncSeries;

/// Default factorization bound for dependence analysis.
pub const DEFAULT_BOUND: u64 = 1_000_000;
/// Default seed for the pseudo-random members of the default family.
pub const DEFAULT_SEED: u64 = 42;
/// Default number of pseudo-random members in the default family.
pub const DEFAULT_RANDOM_MEMBERS: usize = 4;
/// Default initial precision of the adaptive engine.
pub const DEFAULT_INITIAL_PRECISION: usize = 16;
/// Default precision cap of the adaptive engine.
pub const DEFAULT_PRECISION_CAP: usize = 4096;

/// Default orbit length.
pub fn default_lmax() -> u64 {
    500
}

/// Default checkpoint set.
pub fn default_checkpoints() -> Vec<u64> {
    vec![10, 50, 100, 200, 500]
}

/// A projective point all of whose coordinates are units (valuation 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusPoint {
    coords: Vec<Scalar>,
}

impl TorusPoint {
    /// Validates that every coordinate has valuation exactly 0.
    pub fn new(spec: &FieldSpec, coords: Vec<Scalar>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: 0,
            });
        }
        for (index, c) in coords.iter().enumerate() {
            if spec.valuation(c)? != Valuation::Finite(0) {
                return Err(Error::NotAUnit { index });
            }
        }
        Ok(TorusPoint { coords })
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// The dimension `N` of the ambient projective space.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// The point as a type-I Berkovich point.
    pub fn point(&self) -> BerkPoint {
        BerkPoint::type_i(self.coords.clone())
    }

    /// Exact coordinatewise power `a^j`.
    pub fn power_coords(&self, j: u64) -> Vec<Scalar> {
        self.coords
            .iter()
            .map(|c| c.pow(j as i64).expect("unit coordinates have all powers"))
            .collect()
    }

    /// Residues of all coordinates.
    pub fn residues(&self, spec: &FieldSpec) -> Result<Vec<ResidueScalar>> {
        self.coords.iter().map(|c| spec.reduce(c)).collect()
    }

    /// Residues of the affine ratios `a_n / a_0` for `n = 1..N`; this is the
    /// data whose multiplicative relations drive the diagnostics.
    pub fn residue_ratios(&self, spec: &FieldSpec) -> Result<Vec<ResidueScalar>> {
        self.coords[1..]
            .iter()
            .map(|c| spec.reduce(&c.div(&self.coords[0])?))
            .collect()
    }
}

/// A finite multiset of Berkovich points with integer multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiset {
    points: Vec<(BerkPoint, u64)>,
}

impl Multiset {
    pub fn new(points: Vec<(BerkPoint, u64)>) -> Self {
        Multiset {
            points: points.into_iter().filter(|(_, m)| *m > 0).collect(),
        }
    }

    /// Total multiplicity.
    pub fn total(&self) -> u64 {
        self.points.iter().map(|(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(BerkPoint, u64)> {
        self.points.iter()
    }
}

/// The orbit multiset `Z_l(a) = { a^j : 1 <= j <= l }`; each power enters
/// with multiplicity 1 (repeated projective points are kept separate).
pub fn powers_multiset(spec: &FieldSpec, a: &TorusPoint, l: u64) -> Result<Multiset> {
    let _ = spec;
    let mut cur = vec![Scalar::one(); a.coords.len()];
    let mut points = Vec::with_capacity(l as usize);
    for _ in 1..=l {
        for (c, base) in cur.iter_mut().zip(&a.coords) {
            *c = c.mul(base);
        }
        points.push((BerkPoint::type_i(cur.clone()), 1));
    }
    Ok(Multiset { points })
}

/// The average `S(f) = (1/|Z|) sum lambda_f(z)` over a multiset.
pub fn s_statistic(spec: &FieldSpec, z: &Multiset, f: &Poly) -> Result<BigRational> {
    let total = z.total();
    if total == 0 {
        return Err(Error::EmptyMultiset);
    }
    let mut sum = BigRational::zero();
    for (p, m) in z.iter() {
        let lam = berkovich::lambda(spec, p, f)?;
        sum += lam * BigRational::from_integer((*m).into());
    }
    Ok(sum / BigRational::from_integer(total.into()))
}

/// The number of multiset points with `lambda_f < t`, for `0 < t < 1`.
pub fn count_below(spec: &FieldSpec, z: &Multiset, f: &Poly, t: &BigRational) -> Result<u64> {
    if !(t > &BigRational::zero() && t < &BigRational::one()) {
        return Err(Error::ThresholdOutOfRange);
    }
    if z.total() == 0 {
        return Err(Error::EmptyMultiset);
    }
    let mut count = 0;
    for (p, m) in z.iter() {
        if &berkovich::lambda(spec, p, f)? < t {
            count += m;
        }
    }
    Ok(count)
}

/// The number of multiset points with `lambda_f` strictly below 1; these are
/// exactly the points whose reduction lies on the reduced hypersurface.
pub fn count_nongeneric(spec: &FieldSpec, z: &Multiset, f: &Poly) -> Result<u64> {
    if z.total() == 0 {
        return Err(Error::EmptyMultiset);
    }
    let one = BigRational::one();
    let mut count = 0;
    for (p, m) in z.iter() {
        if berkovich::lambda(spec, p, f)? < one {
            count += m;
        }
    }
    Ok(count)
}

/// The fraction of multiset points whose reduction avoids the reduced
/// hypersurface (`lambda_f = 1`).
pub fn generic_fraction(spec: &FieldSpec, z: &Multiset, f: &Poly) -> Result<BigRational> {
    let total = z.total();
    if total == 0 {
        return Err(Error::EmptyMultiset);
    }
    let miss = total - count_nongeneric(spec, z, f)?;
    Ok(BigRational::new(miss.into(), total.into()))
}

/// A discrete probability measure on Berkovich points: finitely many atoms
/// with positive rational weights summing to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteMeasure {
    atoms: Vec<(BerkPoint, BigRational)>,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<(BerkPoint, BigRational)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("measure has no atoms"));
        }
        let mut total = BigRational::zero();
        for (_, w) in &atoms {
            if w <= &BigRational::zero() {
                return Err(Error::InvalidMeasure("weights must be positive"));
            }
            total += w;
        }
        if !total.is_one() {
            return Err(Error::InvalidMeasure("weights must sum to 1"));
        }
        Ok(DiscreteMeasure { atoms })
    }

    /// The Dirac measure at one point.
    pub fn dirac(point: BerkPoint) -> Self {
        DiscreteMeasure {
            atoms: vec![(point, BigRational::one())],
        }
    }

    /// The Dirac measure at the Gauss point in `n` coordinates.
    pub fn gauss(n: usize) -> Self {
        DiscreteMeasure::dirac(BerkPoint::gauss(n))
    }

    /// The uniform averaging measure of a nonempty multiset.
    pub fn from_multiset(z: &Multiset) -> Result<Self> {
        let total = z.total();
        if total == 0 {
            return Err(Error::EmptyMultiset);
        }
        let t = BigRational::from_integer(total.into());
        let atoms = z
            .iter()
            .map(|(p, m)| {
                (
                    p.clone(),
                    BigRational::from_integer((*m).into()) / t.clone(),
                )
            })
            .collect();
        Ok(DiscreteMeasure { atoms })
    }

    pub fn atoms(&self) -> &[(BerkPoint, BigRational)] {
        &self.atoms
    }
}

/// The exact integral of `lambda_f` against a discrete measure.
pub fn integrate_lambda(spec: &FieldSpec, mu: &DiscreteMeasure, f: &Poly) -> Result<BigRational> {
    let mut sum = BigRational::zero();
    for (p, w) in &mu.atoms {
        sum += berkovich::lambda(spec, p, f)? * w;
    }
    Ok(sum)
}

/// The canonical witness form of an integer relation vector `l`:
/// a two-term height-1 homogeneous polynomial that vanishes along the orbit
/// direction singled out by the relation.
///
/// With `l` sign-fixed so that `sum l_i >= 0` and `r = max(0, -min l_i)`,
/// the form is `X_1^(l_1+r) ... X_N^(l_N+r) - X_0^(sum l) (X_1...X_N)^r`.
pub fn witness_polynomial(rel: &[i64]) -> Result<Poly> {
    if rel.iter().all(|&c| c == 0) {
        return Err(Error::ZeroRelation);
    }
    let total: i64 = rel.iter().sum();
    let rel: Vec<i64> = if total < 0 {
        rel.iter().map(|c| -c).collect()
    } else {
        rel.to_vec()
    };
    let total = total.abs();
    let r = rel.iter().copied().min().map_or(0, |m| (-m).max(0));
    let n = rel.len();
    let mut pos = vec![0u32; n + 1];
    let mut neg = vec![0u32; n + 1];
    neg[0] = u32::try_from(total).expect("relation exponent fits u32");
    for (i, &c) in rel.iter().enumerate() {
        pos[i + 1] = u32::try_from(c + r).expect("relation exponent fits u32");
        neg[i + 1] = u32::try_from(r).expect("relation exponent fits u32");
    }
    Poly::from_terms(
        n + 1,
        vec![(pos, Scalar::one()), (neg, Scalar::from_int(-1))],
    )
}

/// A verified witness of multiplicative dependence at a torus point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessData {
    /// The relation vector the witness was built from.
    pub relation: Vec<i64>,
    /// The witness form.
    pub polynomial: Poly,
    /// The exact discrepancy `A = prod (a_i/a_0)^(l_i) - 1`.
    pub discrepancy: Scalar,
    /// The absolute value `|A|`; it bounds every `S_l` of the witness form.
    pub discrepancy_abs: BigRational,
}

/// Builds and verifies the witness data of a relation at a torus point.
///
/// The relation must hold at the residue of the point (this is what makes
/// `|A| < 1` and the witness form effective).
pub fn witness_check(spec: &FieldSpec, a: &TorusPoint, rel: &[i64]) -> Result<WitnessData> {
    if rel.len() != a.dim() {
        return Err(Error::ArityMismatch {
            expected: a.dim(),
            found: rel.len(),
        });
    }
    if rel.iter().all(|&c| c == 0) {
        return Err(Error::ZeroRelation);
    }
    let ratios = a.residue_ratios(spec)?;
    if !multdep::subgroup_member(&ratios, rel)? {
        return Err(Error::RelationNotSatisfiedAtResidue);
    }
    let mut prod = Scalar::one();
    for (c, &e) in a.coords[1..].iter().zip(rel) {
        let ratio = c.div(&a.coords[0])?;
        prod = prod.mul(&ratio.pow(e)?);
    }
    let discrepancy = prod.sub(&Scalar::one());
    let discrepancy_abs = spec.abs(&discrepancy)?;
    Ok(WitnessData {
        relation: rel.to_vec(),
        polynomial: witness_polynomial(rel)?,
        discrepancy,
        discrepancy_abs,
    })
}

/// A validated family of test forms: nonzero, homogeneous, height exactly 1,
/// all in the same number of variables.
#[derive(Debug, Clone)]
pub struct TestFamily {
    nvars: usize,
    members: Vec<Poly>,
}

impl TestFamily {
    pub fn new(spec: &FieldSpec, nvars: usize, members: Vec<Poly>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for f in &members {
            if f.num_vars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: f.num_vars(),
                });
            }
            if f.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            if !f.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            if !f.height(spec)?.is_one() {
                return Err(Error::NotNormalized);
            }
        }
        Ok(TestFamily { nvars, members })
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn members(&self) -> &[Poly] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Canonical unit lift of a residue scalar back into the field.
fn lift(r: &ResidueScalar) -> Scalar {
    match r {
        ResidueScalar::Rat(q) => Scalar::from_rat(q.clone()),
        ResidueScalar::Fp { value, .. } => {
            Scalar::from_int(i64::try_from(*value).expect("residue value fits i64"))
        }
    }
}

/// The default test family at a torus point:
///
/// 1. the coordinate forms `X_0 ... X_N`;
/// 2. all differences `X_m - X_n` for `m < n`;
/// 3. the residue-matched forms `c X_0 - X_n` with `c` the canonical lift of
///    the residue of `a_n / a_0` (skipped when `c = 1`, which duplicates a
///    difference);
/// 4. the witness form of the first relation, when the residue data is
///    multiplicatively dependent;
/// 5. `n_random` pseudo-random height-1 forms of degree at most 3, drawn from
///    the seed (resampled on the rare collision with an earlier member).
pub fn default_family(
    spec: &FieldSpec,
    a: &TorusPoint,
    seed: u64,
    n_random: usize,
    bound: u64,
) -> Result<TestFamily> {
    let n = a.coords.len();
    let mut members: Vec<Poly> = Vec::new();
    for i in 0..n {
        members.push(Poly::var(n, i));
    }
    for m in 0..n {
        for k in (m + 1)..n {
            members.push(Poly::var(n, m).sub(&Poly::var(n, k))?);
        }
    }
    let ratios = a.residue_ratios(spec)?;
    for (idx, r) in ratios.iter().enumerate() {
        let c = lift(r);
        if !c.is_one() {
            let form = Poly::var(n, 0).scale(&c).sub(&Poly::var(n, idx + 1))?;
            members.push(form);
        }
    }
    let basis = multdep::relation_basis(&ratios, bound)?;
    if let Some(first) = basis.first() {
        members.push(witness_polynomial(first.coeffs())?);
    }
    let mut rng = sample::rng(seed);
    let mut ids: Vec<String> = members.iter().map(|f| f.to_string()).collect();
    for _ in 0..n_random {
        loop {
            let f = sample::random_unit_form(spec, &mut rng, n, 3);
            let id = f.to_string();
            if !ids.contains(&id) {
                ids.push(id);
                members.push(f);
                break;
            }
        }
    }
    TestFamily::new(spec, n, members)
}

/// How the power engine computes valuations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerMode {
    /// Full exact scalar arithmetic.
    Exact,
    /// Truncated power series with doubling precision (t-adic runs only;
    /// p-adic runs compute exactly regardless).
    Adaptive { initial: usize, cap: usize },
}

impl Default for PowerMode {
    fn default() -> Self {
        PowerMode::Exact
    }
}

impl PowerMode {
    /// The default adaptive configuration.
    pub fn adaptive_default() -> Self {
        PowerMode::Adaptive {
            initial: DEFAULT_INITIAL_PRECISION,
            cap: DEFAULT_PRECISION_CAP,
        }
    }
}

/// Parameters of a statistics run.
#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Orbit length: powers `j = 1..=lmax` are available to checkpoints.
    pub lmax: u64,
    /// Strictly ascending orbit lengths at which statistics are recorded.
    pub checkpoints: Vec<u64>,
    /// Trial-division bound for dependence analysis.
    pub bound: u64,
    /// Worker threads for per-member evaluation (1 = serial).
    pub threads: usize,
    /// Engine mode.
    pub mode: PowerMode,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            lmax: default_lmax(),
            checkpoints: default_checkpoints(),
            bound: DEFAULT_BOUND,
            threads: 1,
            mode: PowerMode::Exact,
        }
    }
}

impl RunOptions {
    fn validate(&self) -> Result<()> {
        if self.lmax < 1 {
            return Err(Error::InvalidArgument("lmax must be at least 1"));
        }
        if self.checkpoints.is_empty() {
            return Err(Error::InvalidArgument("checkpoints must be nonempty"));
        }
        if self.checkpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "checkpoints must be strictly ascending",
            ));
        }
        if self.checkpoints[0] < 1 || *self.checkpoints.last().unwrap() > self.lmax {
            return Err(Error::InvalidArgument(
                "checkpoints must lie between 1 and lmax",
            ));
        }
        if self.threads < 1 {
            return Err(Error::InvalidArgument("threads must be at least 1"));
        }
        if let PowerMode::Adaptive { initial, cap } = self.mode {
            if initial < 1 {
                return Err(Error::InvalidArgument(
                    "initial precision must be at least 1",
                ));
            }
            if initial > cap {
                return Err(Error::InvalidArgument(
                    "initial precision must not exceed the cap",
                ));
            }
        }
        Ok(())
    }
}

/// One recorded row of a member's statistics series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPoint {
    /// The orbit length `l` of this checkpoint.
    pub l: u64,
    /// `S_l` of the member.
    pub s: BigRational,
    /// Points of `Z_l` with `lambda < 1`.
    pub count_below_one: u64,
    /// Points of `Z_l` with `lambda < 1/2`.
    pub count_below_half: u64,
}

/// The statistics series of one family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberSeries {
    pub poly: Poly,
    pub series: Vec<SeriesPoint>,
}

/// The output of the engine: one series per member, plus the truncation
/// precision the adaptive mode settled on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesSet {
    pub members: Vec<MemberSeries>,
    pub precision_used: Option<usize>,
}

/// Final verdict of a convergence report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Nondegenerate data, and every count series is constant over the last
    /// half of the checkpoints.
    ConsistentEquidistributed,
    /// Degenerate data: the witness form pins `S_l` below `|A| < 1` forever.
    FailsWithWitness,
    /// Nondegenerate data but counts still moving at the end of the run.
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::ConsistentEquidistributed => "CONSISTENT_EQUIDISTRIBUTED",
            Verdict::FailsWithWitness => "FAILS_WITH_WITNESS",
            Verdict::Inconclusive => "INCONCLUSIVE",
        };
        write!(f, "{}", s)
    }
}

/// The full outcome of a convergence run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatReport {
    /// True when the residue data has no nontrivial relation.
    pub nondegenerate: bool,
    /// Canonical basis of the relation lattice of the residue ratios.
    pub relation_basis: Vec<Relation>,
    /// Witness data, present exactly when the data is degenerate.
    pub witness: Option<WitnessData>,
    pub verdict: Verdict,
    /// Series of the members the verdict was computed from (the full family
    /// when nondegenerate; the witness form alone when degenerate).
    pub members: Vec<MemberSeries>,
    /// Adaptive truncation precision of the run, when that engine ran.
    pub precision_used: Option<usize>,
}

/// Running aggregation of one member's statistics.
struct Aggregate {
    sum: BigRational,
    below_one: u64,
    below_half: u64,
    series: Vec<SeriesPoint>,
}

impl Aggregate {
    fn new() -> Self {
        Aggregate {
            sum: BigRational::zero(),
            below_one: 0,
            below_half: 0,
            series: Vec::new(),
        }
    }

    fn observe(&mut self, lam: BigRational, one: &BigRational, half: &BigRational) {
        if &lam < half {
            self.below_half += 1;
        }
        if &lam < one {
            self.below_one += 1;
        }
        self.sum += lam;
    }

    fn checkpoint(&mut self, l: u64) {
        self.series.push(SeriesPoint {
            l,
            s: self.sum.clone() / BigRational::from_integer(l.into()),
            count_below_one: self.below_one,
            count_below_half: self.below_half,
        });
    }
}

/// Shared layout: the distinct monomials of the family and, per member, the
/// coefficient attached to each monomial index.
fn family_layout(family: &TestFamily) -> (Vec<Vec<u32>>, Vec<Vec<(Scalar, usize)>>) {
    let mut index = std::collections::BTreeMap::new();
    for f in family.members() {
        for (e, _) in f.terms() {
            let next = index.len();
            index.entry(e.0.clone()).or_insert(next);
        }
    }
    let mut monomials = vec![Vec::new(); index.len()];
    for (e, i) in &index {
        monomials[*i] = e.clone();
    }
    let members = family
        .members()
        .iter()
        .map(|f| {
            f.terms()
                .map(|(e, c)| (c.clone(), index[&e.0]))
                .collect()
        })
        .collect();
    (monomials, members)
}

/// The exact value of one monomial at the coordinates.
fn monomial_value(coords: &[Scalar], exps: &[u32]) -> Scalar {
    let mut acc = Scalar::one();
    for (c, &e) in coords.iter().zip(exps) {
        if e > 0 {
            acc = acc.mul(&c.pow(e as i64).expect("nonnegative power"));
        }
    }
    acc
}

fn build_pool(threads: usize) -> Option<rayon::ThreadPool> {
    if threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("worker pool"),
        )
    } else {
        None
    }
}

/// Applies `calc` to every member, optionally on the pool; order-preserving.
fn map_members<T, F>(pool: &Option<rayon::ThreadPool>, members: &[Vec<T>], calc: F) -> Vec<BigRational>
where
    T: Sync,
    F: Fn(&Vec<T>) -> BigRational + Sync,
{
    match pool {
        Some(p) => p.install(|| members.par_iter().map(&calc).collect()),
        None => members.iter().map(&calc).collect(),
    }
}

/// Exact engine: incremental monomial powers in full scalar arithmetic.
fn exact_series(
    spec: &FieldSpec,
    a: &TorusPoint,
    family: &TestFamily,
    opts: &RunOptions,
) -> Result<Vec<MemberSeries>> {
    let (monomials, members) = family_layout(family);
    let bases: Vec<Scalar> = monomials
        .iter()
        .map(|e| monomial_value(&a.coords, e))
        .collect();
    let mut powers = vec![Scalar::one(); bases.len()];
    let mut aggs: Vec<Aggregate> = (0..members.len()).map(|_| Aggregate::new()).collect();
    let one = BigRational::one();
    let half = BigRational::new(1.into(), 2.into());
    let pool = build_pool(opts.threads);
    let mut next_cp = 0usize;
    let last = *opts.checkpoints.last().unwrap();
    for j in 1..=last {
        for (p, b) in powers.iter_mut().zip(&bases) {
            *p = p.mul(b);
        }
        let lambdas = map_members(&pool, &members, |terms: &Vec<(Scalar, usize)>| {
            let mut acc = Scalar::zero();
            for (c, m) in terms {
                acc = acc.add(&c.mul(&powers[*m]));
            }
            spec.abs(&acc).expect("family scalars match the field")
        });
        for (agg, lam) in aggs.iter_mut().zip(lambdas) {
            agg.observe(lam, &one, &half);
        }
        if next_cp < opts.checkpoints.len() && j == opts.checkpoints[next_cp] {
            for agg in aggs.iter_mut() {
                agg.checkpoint(j);
            }
            next_cp += 1;
        }
    }
    Ok(family
        .members()
        .iter()
        .zip(aggs)
        .map(|(poly, agg)| MemberSeries {
            poly: poly.clone(),
            series: agg.series,
        })
        .collect())
}

/// Coefficient of a member term, pre-lowered for the truncated engine.
enum TCoeff {
    Rat(BigRational),
    Series(TruncSeries),
}

enum AdaptiveOutcome {
    Done(Vec<MemberSeries>),
    NeedMorePrecision,
}

/// One full adaptive pass at a fixed precision.
#[allow(clippy::too_many_arguments)]
fn adaptive_pass(
    spec: &FieldSpec,
    a: &TorusPoint,
    family: &TestFamily,
    opts: &RunOptions,
    monomials: &[Vec<u32>],
    members: &[Vec<(Scalar, usize)>],
    exact_bases: &[Scalar],
    prec: usize,
) -> Result<AdaptiveOutcome> {
    let coords_t: Vec<TruncSeries> = a
        .coords
        .iter()
        .map(|c| TruncSeries::from_scalar(c, prec))
        .collect();
    let bases: Vec<TruncSeries> = monomials
        .iter()
        .map(|e| {
            let mut acc = TruncSeries::one(prec);
            for (c, &k) in coords_t.iter().zip(e) {
                for _ in 0..k {
                    acc = acc.mul(c);
                }
            }
            acc
        })
        .collect();
    let t_members: Vec<Vec<(TCoeff, usize)>> = members
        .iter()
        .map(|terms| {
            terms
                .iter()
                .map(|(c, m)| {
                    let tc = match c {
                        Scalar::Rat(q) => TCoeff::Rat(q.clone()),
                        s => TCoeff::Series(TruncSeries::from_scalar(s, prec)),
                    };
                    (tc, *m)
                })
                .collect()
        })
        .collect();
    let mut powers = vec![TruncSeries::one(prec); bases.len()];
    let mut aggs: Vec<Aggregate> = (0..members.len()).map(|_| Aggregate::new()).collect();
    let one = BigRational::one();
    let half = BigRational::new(1.into(), 2.into());
    let mut next_cp = 0usize;
    let last = *opts.checkpoints.last().unwrap();
    for j in 1..=last {
        for (p, b) in powers.iter_mut().zip(&bases) {
            *p = p.mul(b);
        }
        for (mi, terms) in t_members.iter().enumerate() {
            let mut acc: Option<TruncSeries> = None;
            for (c, m) in terms {
                let term = match c {
                    TCoeff::Rat(q) => powers[*m].scale(q),
                    TCoeff::Series(s) => powers[*m].mul(s),
                };
                acc = Some(match acc {
                    None => term,
                    Some(prev) => prev.add(&term),
                });
            }
            let value = acc.expect("members are nonzero");
            let lam = match value.first_nonzero() {
                Some(k) => rat_int_pow(spec.base(), -(k as i64)),
                None => {
                    // Not resolved at this precision: decide exactly whether
                    // the value is a structural zero.
                    let mut exact = Scalar::zero();
                    for (c, m) in &members[mi] {
                        let pw = exact_bases[*m].pow(j as i64).expect("unit bases");
                        exact = exact.add(&c.mul(&pw));
                    }
                    if exact.is_zero() {
                        BigRational::zero()
                    } else {
                        return Ok(AdaptiveOutcome::NeedMorePrecision);
                    }
                }
            };
            aggs[mi].observe(lam, &one, &half);
        }
        if next_cp < opts.checkpoints.len() && j == opts.checkpoints[next_cp] {
            for agg in aggs.iter_mut() {
                agg.checkpoint(j);
            }
            next_cp += 1;
        }
    }
    Ok(AdaptiveOutcome::Done(
        family
            .members()
            .iter()
            .zip(aggs)
            .map(|(poly, agg)| MemberSeries {
                poly: poly.clone(),
                series: agg.series,
            })
            .collect(),
    ))
}

/// Adaptive engine: truncated power series with doubling precision and an
/// exact fallback for structural zeros.
fn adaptive_series(
    spec: &FieldSpec,
    a: &TorusPoint,
    family: &TestFamily,
    opts: &RunOptions,
    initial: usize,
    cap: usize,
) -> Result<(Vec<MemberSeries>, usize)> {
    let (monomials, members) = family_layout(family);
    let exact_bases: Vec<Scalar> = monomials
        .iter()
        .map(|e| monomial_value(&a.coords, e))
        .collect();
    let mut prec = initial;
    loop {
        if prec > cap {
            return Err(Error::PrecisionCapExceeded { cap });
        }
        match adaptive_pass(
            spec,
            a,
            family,
            opts,
            &monomials,
            &members,
            &exact_bases,
            prec,
        )? {
            AdaptiveOutcome::Done(members) => return Ok((members, prec)),
            AdaptiveOutcome::NeedMorePrecision => {
                prec = prec.saturating_mul(2);
            }
        }
    }
}

/// Computes the statistics series of every family member at the checkpoint
/// lengths, using the engine selected by the options.
///
/// Both modes produce identical series; the adaptive mode is only available
/// meaningfully for the t-adic field and falls back to exact arithmetic on
/// p-adic runs.
pub fn compute_series(
    spec: &FieldSpec,
    a: &TorusPoint,
    family: &TestFamily,
    opts: &RunOptions,
) -> Result<SeriesSet> {
    opts.validate()?;
    if family.num_vars() != a.coords.len() {
        return Err(Error::ArityMismatch {
            expected: a.coords.len(),
            found: family.num_vars(),
        });
    }
    match (opts.mode, spec.kind()) {
        (PowerMode::Adaptive { initial, cap }, FieldKind::TAdic) => {
            let (members, prec) = adaptive_series(spec, a, family, opts, initial, cap)?;
            Ok(SeriesSet {
                members,
                precision_used: Some(prec),
            })
        }
        _ => Ok(SeriesSet {
            members: exact_series(spec, a, family, opts)?,
            precision_used: None,
        }),
    }
}

/// True when both count series of every member are constant over the last
/// half (rounded up) of the checkpoints.
fn counts_stable(members: &[MemberSeries], n_checkpoints: usize) -> bool {
    let take = (n_checkpoints + 1) / 2;
    let start = n_checkpoints - take;
    members.iter().all(|m| {
        let tail = &m.series[start..];
        tail.iter()
            .all(|p| p.count_below_one == tail[0].count_below_one)
            && tail
                .iter()
                .all(|p| p.count_below_half == tail[0].count_below_half)
    })
}

/// Runs the full convergence experiment at a torus point.
///
/// Degenerate residue data short-circuits to the witness form: its series is
/// computed, checked against the bound `S_l <= |A|`, and the verdict is
/// [`Verdict::FailsWithWitness`]. Nondegenerate data runs the whole family
/// and reports [`Verdict::ConsistentEquidistributed`] exactly when every
/// count series has stopped moving over the last half of the checkpoints.
pub fn convergence_report(
    spec: &FieldSpec,
    a: &TorusPoint,
    family: &TestFamily,
    opts: &RunOptions,
) -> Result<StatReport> {
    opts.validate()?;
    let ratios = a.residue_ratios(spec)?;
    let basis = multdep::relation_basis(&ratios, opts.bound)?;
    if let Some(first) = basis.first() {
        let witness = witness_check(spec, a, first.coeffs())?;
        let wfamily = TestFamily::new(spec, a.coords.len(), vec![witness.polynomial.clone()])?;
        let set = compute_series(spec, a, &wfamily, opts)?;
        for p in &set.members[0].series {
            assert!(
                p.s <= witness.discrepancy_abs,
                "witness bound violated: S_{} = {} > {}",
                p.l,
                p.s,
                witness.discrepancy_abs
            );
        }
        Ok(StatReport {
            nondegenerate: false,
            relation_basis: basis,
            witness: Some(witness),
            verdict: Verdict::FailsWithWitness,
            members: set.members,
            precision_used: set.precision_used,
        })
    } else {
        let set = compute_series(spec, a, family, opts)?;
        let verdict = if counts_stable(&set.members, opts.checkpoints.len()) {
            Verdict::ConsistentEquidistributed
        } else {
            Verdict::Inconclusive
        };
        Ok(StatReport {
            nondegenerate: true,
            relation_basis: basis,
            witness: None,
            verdict,
            members: set.members,
            precision_used: set.precision_used,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::TPoly;

    fn ftad() -> FieldSpec {
        FieldSpec::t_adic()
    }

    fn tfrac(n: &[i64], d: &[i64]) -> Scalar {
        Scalar::from_fraction(TPoly::from(n), TPoly::from(d)).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// The running example: (1 : 2 + t : 4) over Q(t).
    fn witness_point() -> TorusPoint {
        TorusPoint::new(
            &ftad(),
            vec![Scalar::one(), tfrac(&[2, 1], &[1]), Scalar::from_int(4)],
        )
        .unwrap()
    }

    /// A nondegenerate point: (1 : 2 + t : 3 - t).
    fn free_point() -> TorusPoint {
        TorusPoint::new(
            &ftad(),
            vec![Scalar::one(), tfrac(&[2, 1], &[1]), tfrac(&[3, -1], &[1])],
        )
        .unwrap()
    }

    #[test]
    fn torus_point_validation() {
        let spec = ftad();
        assert!(TorusPoint::new(&spec, vec![Scalar::one(), Scalar::from_int(3)]).is_ok());
        assert_eq!(
            TorusPoint::new(&spec, vec![Scalar::one(), Scalar::t()]),
            Err(Error::NotAUnit { index: 1 })
        );
        assert_eq!(
            TorusPoint::new(&spec, vec![Scalar::zero()]),
            Err(Error::NotAUnit { index: 0 })
        );
        assert_eq!(
            TorusPoint::new(&spec, vec![]),
            Err(Error::ArityMismatch {
                expected: 1,
                found: 0
            })
        );
        let f3 = FieldSpec::p_adic(3).unwrap();
        assert_eq!(
            TorusPoint::new(&f3, vec![Scalar::one(), Scalar::from_int(6)]),
            Err(Error::NotAUnit { index: 1 })
        );
    }

    #[test]
    fn powers_multiset_lists_powers() {
        let spec = ftad();
        let a = witness_point();
        let z = powers_multiset(&spec, &a, 4).unwrap();
        assert_eq!(z.total(), 4);
        let pts: Vec<_> = z.iter().collect();
        for (j, (p, m)) in pts.iter().enumerate() {
            assert_eq!(*m, 1);
            let expected = BerkPoint::type_i(a.power_coords(j as u64 + 1));
            assert!(berkovich::points_equal(&spec, p, &expected).unwrap());
        }
    }

    #[test]
    fn residue_ratios_of_the_example() {
        let spec = ftad();
        let a = witness_point();
        assert_eq!(
            a.residue_ratios(&spec).unwrap(),
            vec![
                ResidueScalar::rat(rat(2, 1)),
                ResidueScalar::rat(rat(4, 1))
            ]
        );
    }

    #[test]
    fn witness_polynomial_examples() {
        // (2, -1) -> X1^3 - X0*X1*X2
        let f = witness_polynomial(&[2, -1]).unwrap();
        assert_eq!(f.to_string(), "X1^3 - X0*X1*X2");
        // (6) -> X1^6 - X0^6
        let f = witness_polynomial(&[6]).unwrap();
        assert_eq!(f.to_string(), "X1^6 - X0^6");
        // (1, 0) -> X1 - X0
        let f = witness_polynomial(&[1, 0]).unwrap();
        assert_eq!(f.to_string(), "X1 - X0");
        // (1, -1) -> X1^2 - X1*X2
        let f = witness_polynomial(&[1, -1]).unwrap();
        assert_eq!(f.to_string(), "X1^2 - X1*X2");
        // sign fix: (-1, -1) behaves like (1, 1)
        assert_eq!(
            witness_polynomial(&[-1, -1]).unwrap(),
            witness_polynomial(&[1, 1]).unwrap()
        );
        assert_eq!(witness_polynomial(&[0, 0]), Err(Error::ZeroRelation));
    }

    #[test]
    fn witness_polynomials_are_height_one_homogeneous() {
        let f5 = FieldSpec::p_adic(5).unwrap();
        for rel in [
            vec![2, -1],
            vec![1, 1],
            vec![-3, 2],
            vec![4],
            vec![1, -1, 2],
        ] {
            let f = witness_polynomial(&rel).unwrap();
            assert!(f.is_homogeneous(), "not homogeneous for {:?}", rel);
            assert!(f.height(&ftad()).unwrap().is_one());
            assert!(f.height(&f5).unwrap().is_one());
        }
    }

    #[test]
    fn witness_check_of_the_example() {
        let spec = ftad();
        let a = witness_point();
        let w = witness_check(&spec, &a, &[2, -1]).unwrap();
        // A = (2 + t)^2 / 4 - 1 = t + t^2/4
        assert_eq!(w.discrepancy.to_string(), "t + 1/4*t^2");
        assert_eq!(w.discrepancy_abs, rat(1, 2));
        assert_eq!(w.polynomial.to_string(), "X1^3 - X0*X1*X2");
        // a relation that fails at the residue is rejected
        assert_eq!(
            witness_check(&spec, &a, &[1, 1]),
            Err(Error::RelationNotSatisfiedAtResidue)
        );
        assert_eq!(
            witness_check(&spec, &a, &[0, 0]),
            Err(Error::ZeroRelation)
        );
        assert_eq!(
            witness_check(&spec, &a, &[1]),
            Err(Error::ArityMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn witness_lambda_is_constant_at_half() {
        // lambda of the witness form at a^j is |A| = 1/2 for every j >= 1.
        let spec = ftad();
        let a = witness_point();
        let w = witness_check(&spec, &a, &[2, -1]).unwrap();
        let z = powers_multiset(&spec, &a, 6).unwrap();
        for (p, _) in z.iter() {
            assert_eq!(berkovich::lambda(&spec, p, &w.polynomial).unwrap(), rat(1, 2));
        }
        let s = s_statistic(&spec, &z, &w.polynomial).unwrap();
        assert_eq!(s, rat(1, 2));
    }

    #[test]
    fn engine_matches_multiset_statistics() {
        let spec = ftad();
        let a = free_point();
        let family = default_family(&spec, &a, DEFAULT_SEED, 2, DEFAULT_BOUND).unwrap();
        let opts = RunOptions {
            lmax: 8,
            checkpoints: vec![3, 8],
            ..RunOptions::default()
        };
        let set = compute_series(&spec, &a, &family, &opts).unwrap();
        for ms in &set.members {
            for pt in &ms.series {
                let z = powers_multiset(&spec, &a, pt.l).unwrap();
                assert_eq!(pt.s, s_statistic(&spec, &z, &ms.poly).unwrap());
                assert_eq!(pt.count_below_one, count_nongeneric(&spec, &z, &ms.poly).unwrap());
                assert_eq!(
                    pt.count_below_half,
                    count_below(&spec, &z, &ms.poly, &rat(1, 2)).unwrap()
                );
            }
        }
    }

    #[test]
    fn count_below_threshold_domain() {
        let spec = ftad();
        let a = witness_point();
        let z = powers_multiset(&spec, &a, 3).unwrap();
        let f = Poly::var(3, 0);
        assert_eq!(
            count_below(&spec, &z, &f, &BigRational::one()),
            Err(Error::ThresholdOutOfRange)
        );
        assert_eq!(
            count_below(&spec, &z, &f, &BigRational::zero()),
            Err(Error::ThresholdOutOfRange)
        );
        assert_eq!(
            count_below(&spec, &z, &f, &rat(3, 2)),
            Err(Error::ThresholdOutOfRange)
        );
        assert_eq!(count_below(&spec, &z, &f, &rat(1, 2)).unwrap(), 0);
    }

    #[test]
    fn empty_multiset_is_rejected() {
        let spec = ftad();
        let z = Multiset::new(vec![]);
        let f = Poly::var(3, 0);
        assert_eq!(s_statistic(&spec, &z, &f), Err(Error::EmptyMultiset));
        assert_eq!(count_nongeneric(&spec, &z, &f), Err(Error::EmptyMultiset));
    }

    #[test]
    fn gauss_atom_integrates_to_one() {
        let spec = ftad();
        let mu = DiscreteMeasure::gauss(3);
        let f = Poly::var(3, 0).sub(&Poly::var(3, 1)).unwrap();
        assert_eq!(integrate_lambda(&spec, &mu, &f).unwrap(), BigRational::one());
        let f3 = FieldSpec::p_adic(3).unwrap();
        assert_eq!(integrate_lambda(&f3, &mu, &f).unwrap(), BigRational::one());
    }

    #[test]
    fn measure_validation() {
        let p = BerkPoint::gauss(1);
        assert_eq!(
            DiscreteMeasure::new(vec![]),
            Err(Error::InvalidMeasure("measure has no atoms"))
        );
        assert_eq!(
            DiscreteMeasure::new(vec![(p.clone(), rat(1, 2))]),
            Err(Error::InvalidMeasure("weights must sum to 1"))
        );
        assert_eq!(
            DiscreteMeasure::new(vec![(p.clone(), rat(3, 2)), (p.clone(), rat(-1, 2))]),
            Err(Error::InvalidMeasure("weights must be positive"))
        );
        assert!(DiscreteMeasure::new(vec![(p.clone(), rat(1, 2)), (p, rat(1, 2))]).is_ok());
    }

    #[test]
    fn uniform_measure_integral_matches_s_statistic() {
        let spec = ftad();
        let a = witness_point();
        let z = powers_multiset(&spec, &a, 5).unwrap();
        let mu = DiscreteMeasure::from_multiset(&z).unwrap();
        let f = witness_polynomial(&[2, -1]).unwrap();
        assert_eq!(
            integrate_lambda(&spec, &mu, &f).unwrap(),
            s_statistic(&spec, &z, &f).unwrap()
        );
    }

    #[test]
    fn default_family_of_the_degenerate_example() {
        let spec = ftad();
        let a = witness_point();
        let fam = default_family(&spec, &a, DEFAULT_SEED, 4, DEFAULT_BOUND).unwrap();
        let ids: Vec<String> = fam.members().iter().map(|f| f.to_string()).collect();
        // coordinates, differences, residue-matched lifts, witness, 4 random
        assert_eq!(fam.len(), 3 + 3 + 2 + 1 + 4);
        assert!(ids.contains(&"X0".to_string()));
        assert!(ids.contains(&"X0 - X1".to_string()));
        assert!(ids.contains(&"X1 - X2".to_string()));
        assert!(ids.contains(&"2*X0 - X1".to_string()));
        assert!(ids.contains(&"4*X0 - X2".to_string()));
        assert!(ids.contains(&"X1^3 - X0*X1*X2".to_string()));
        // deterministic under the seed
        let again = default_family(&spec, &a, DEFAULT_SEED, 4, DEFAULT_BOUND).unwrap();
        let ids2: Vec<String> = again.members().iter().map(|f| f.to_string()).collect();
        assert_eq!(ids, ids2);
        // no duplicate identifiers
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
    }

    #[test]
    fn degenerate_report_is_fails_with_witness() {
        let spec = ftad();
        let a = witness_point();
        let fam = default_family(&spec, &a, DEFAULT_SEED, 2, DEFAULT_BOUND).unwrap();
        let opts = RunOptions {
            lmax: 20,
            checkpoints: vec![10, 20],
            ..RunOptions::default()
        };
        let rep = convergence_report(&spec, &a, &fam, &opts).unwrap();
        assert!(!rep.nondegenerate);
        assert_eq!(rep.verdict, Verdict::FailsWithWitness);
        assert_eq!(rep.relation_basis.len(), 1);
        assert_eq!(rep.relation_basis[0].coeffs(), &[2, -1]);
        let w = rep.witness.as_ref().unwrap();
        assert_eq!(w.discrepancy_abs, rat(1, 2));
        // single member: the witness form, with S = 1/2 at every checkpoint
        assert_eq!(rep.members.len(), 1);
        assert_eq!(rep.members[0].poly.to_string(), "X1^3 - X0*X1*X2");
        for p in &rep.members[0].series {
            assert_eq!(p.s, rat(1, 2));
            assert_eq!(p.count_below_one, p.l);
            assert_eq!(p.count_below_half, 0);
        }
    }

    #[test]
    fn nondegenerate_report_converges() {
        let spec = ftad();
        let a = free_point();
        let fam = default_family(&spec, &a, DEFAULT_SEED, 4, DEFAULT_BOUND).unwrap();
        let opts = RunOptions {
            lmax: 40,
            checkpoints: vec![10, 20, 30, 40],
            ..RunOptions::default()
        };
        let rep = convergence_report(&spec, &a, &fam, &opts).unwrap();
        assert!(rep.nondegenerate);
        assert!(rep.relation_basis.is_empty());
        assert!(rep.witness.is_none());
        assert_eq!(rep.verdict, Verdict::ConsistentEquidistributed);
        assert_eq!(rep.members.len(), fam.len());
        // the member 2*X0 - X1 has exactly one non-generic power (j = 1)
        let ms = rep
            .members
            .iter()
            .find(|m| m.poly.to_string() == "2*X0 - X1")
            .expect("lift member present");
        for p in &ms.series {
            assert_eq!(p.count_below_one, 1);
            assert_eq!(p.count_below_half, 0);
            assert_eq!(
                p.s,
                (BigRational::from_integer((p.l - 1).into()) + rat(1, 2))
                    / BigRational::from_integer(p.l.into())
            );
        }
        // plain differences stay generic forever
        let ms = rep
            .members
            .iter()
            .find(|m| m.poly.to_string() == "X0 - X1")
            .expect("difference member present");
        for p in &ms.series {
            assert_eq!(p.s, BigRational::one());
            assert_eq!(p.count_below_one, 0);
        }
    }

    #[test]
    fn adaptive_matches_exact() {
        let spec = ftad();
        let a = free_point();
        let fam = default_family(&spec, &a, DEFAULT_SEED, 4, DEFAULT_BOUND).unwrap();
        let exact = RunOptions {
            lmax: 30,
            checkpoints: vec![15, 30],
            ..RunOptions::default()
        };
        let adaptive = RunOptions {
            mode: PowerMode::adaptive_default(),
            ..exact.clone()
        };
        let se = compute_series(&spec, &a, &fam, &exact).unwrap();
        let sa = compute_series(&spec, &a, &fam, &adaptive).unwrap();
        assert_eq!(se.precision_used, None);
        assert_eq!(sa.precision_used, Some(DEFAULT_INITIAL_PRECISION));
        for (me, ma) in se.members.iter().zip(&sa.members) {
            assert_eq!(me.poly, ma.poly);
            assert_eq!(me.series, ma.series);
        }
    }

    #[test]
    fn adaptive_handles_structural_zeros() {
        // X0 - X1 at (1 + t : 1 + t) vanishes identically on the orbit; the
        // adaptive engine must resolve this exactly instead of capping out.
        let spec = ftad();
        let a = TorusPoint::new(
            &spec,
            vec![tfrac(&[1, 1], &[1]), tfrac(&[1, 1], &[1])],
        )
        .unwrap();
        let f = Poly::var(2, 0).sub(&Poly::var(2, 1)).unwrap();
        let fam = TestFamily::new(&spec, 2, vec![f]).unwrap();
        let opts = RunOptions {
            lmax: 6,
            checkpoints: vec![3, 6],
            mode: PowerMode::Adaptive { initial: 4, cap: 8 },
            ..RunOptions::default()
        };
        let set = compute_series(&spec, &a, &fam, &opts).unwrap();
        for p in &set.members[0].series {
            assert_eq!(p.s, BigRational::zero());
            assert_eq!(p.count_below_one, p.l);
            assert_eq!(p.count_below_half, p.l);
        }
        // exact mode agrees
        let eopts = RunOptions {
            mode: PowerMode::Exact,
            ..opts
        };
        let eset = compute_series(&spec, &a, &fam, &eopts).unwrap();
        assert_eq!(eset.members[0].series, set.members[0].series);
    }

    #[test]
    fn adaptive_precision_cap() {
        // 1 - (1 + t^40)^j has valuation 40: a cap of 16 must fail, a cap of
        // 64 must resolve with lambda = 2^(-40).
        let spec = ftad();
        let mut deep = vec![0i64; 41];
        deep[0] = 1;
        deep[40] = 1;
        let a = TorusPoint::new(&spec, vec![Scalar::one(), tfrac(&deep, &[1])]).unwrap();
        let f = Poly::var(2, 0).sub(&Poly::var(2, 1)).unwrap();
        let fam = TestFamily::new(&spec, 2, vec![f]).unwrap();
        let base = RunOptions {
            lmax: 3,
            checkpoints: vec![3],
            ..RunOptions::default()
        };
        let capped = RunOptions {
            mode: PowerMode::Adaptive { initial: 4, cap: 16 },
            ..base.clone()
        };
        assert_eq!(
            compute_series(&spec, &a, &fam, &capped),
            Err(Error::PrecisionCapExceeded { cap: 16 })
        );
        let roomy = RunOptions {
            mode: PowerMode::Adaptive { initial: 4, cap: 64 },
            ..base
        };
        let set = compute_series(&spec, &a, &fam, &roomy).unwrap();
        assert_eq!(set.precision_used, Some(64));
        let lam = rat_int_pow(&rat(2, 1), -40);
        assert_eq!(set.members[0].series[0].s, lam);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let spec = ftad();
        let a = free_point();
        let fam = default_family(&spec, &a, DEFAULT_SEED, 3, DEFAULT_BOUND).unwrap();
        let serial = RunOptions {
            lmax: 12,
            checkpoints: vec![6, 12],
            threads: 1,
            ..RunOptions::default()
        };
        let parallel = RunOptions {
            threads: 3,
            ..serial.clone()
        };
        let s1 = compute_series(&spec, &a, &fam, &serial).unwrap();
        let s3 = compute_series(&spec, &a, &fam, &parallel).unwrap();
        assert_eq!(s1, s3);
    }

    #[test]
    fn run_option_validation() {
        let spec = ftad();
        let a = free_point();
        let fam = default_family(&spec, &a, DEFAULT_SEED, 1, DEFAULT_BOUND).unwrap();
        let bad = |opts: RunOptions| compute_series(&spec, &a, &fam, &opts);
        assert!(matches!(
            bad(RunOptions {
                checkpoints: vec![],
                ..RunOptions::default()
            }),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            bad(RunOptions {
                lmax: 5,
                checkpoints: vec![2, 10],
                ..RunOptions::default()
            }),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            bad(RunOptions {
                lmax: 5,
                checkpoints: vec![4, 2],
                ..RunOptions::default()
            }),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            bad(RunOptions {
                threads: 0,
                ..RunOptions::default()
            }),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            bad(RunOptions {
                mode: PowerMode::Adaptive { initial: 32, cap: 16 },
                ..RunOptions::default()
            }),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn p_adic_runs_compute_exactly_in_adaptive_mode() {
        let f7 = FieldSpec::p_adic(7).unwrap();
        let a = TorusPoint::new(&f7, vec![Scalar::one(), Scalar::from_int(3)]).unwrap();
        let fam = default_family(&f7, &a, DEFAULT_SEED, 1, DEFAULT_BOUND).unwrap();
        let opts = RunOptions {
            lmax: 12,
            checkpoints: vec![6, 12],
            mode: PowerMode::adaptive_default(),
            ..RunOptions::default()
        };
        let set = compute_series(&f7, &a, &fam, &opts).unwrap();
        assert_eq!(set.precision_used, None);
        // degenerate: ord(3 mod 7) = 6, witness X1^6 - X0^6
        let rep = convergence_report(&f7, &a, &fam, &opts).unwrap();
        assert!(!rep.nondegenerate);
        let w = rep.witness.as_ref().unwrap();
        assert_eq!(w.polynomial.to_string(), "X1^6 - X0^6");
        assert_eq!(w.discrepancy_abs, rat(1, 7));
        // the witness S series is bounded by |A| = 1/7
        for p in &rep.members[0].series {
            assert!(p.s <= rat(1, 7));
        }
    }

    #[test]
    fn generic_fraction_complements_nongeneric_count() {
        let spec = ftad();
        let a = witness_point();
        let z = powers_multiset(&spec, &a, 8).unwrap();
        let f = witness_polynomial(&[2, -1]).unwrap();
        // every power is non-generic for the witness form
        assert_eq!(count_nongeneric(&spec, &z, &f).unwrap(), 8);
        assert_eq!(generic_fraction(&spec, &z, &f).unwrap(), BigRational::zero());
        let g = Poly::var(3, 0);
        assert_eq!(generic_fraction(&spec, &z, &g).unwrap(), BigRational::one());
    }
}
