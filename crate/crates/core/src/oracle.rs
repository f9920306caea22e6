//! Brute-force checks that do not go through the classification formulas.
//!
//! Generator laws are recovered by solving a linear system in the power
//! basis, isomorphisms are verified by building the explicit basis map
//! `xⁱ ↦ yⁱ` and testing it on every product, and isomorphism is decided by
//! trying every root-of-unity rescaling of the generator. Nothing here calls
//! [`generator_law`](crate::classification::generator_law) or
//! [`normalize`](crate::classification::normalize); the [`fuzz`] campaign
//! compares the two sides.

use std::fmt;

use nalgebra::{DMatrix, DVector, RealField};
use num_complex::Complex;
use num_traits::{Float, Zero};
use rand::Rng;
use twofloat::TwoFloat;

use crate::algebra::{CyclicAlgebra, Element, Law};
use crate::classification::{
    detect_type, generator_law, isomorphic, isomorphic_by_orbit, normalize,
};
use crate::error::{Error, Result};
use crate::sampling;
use crate::scalar::{max_norm, principal_root, roots_of_unity, Real, Tolerance};

/// Field usable by the oracle's dense linear algebra.
pub trait OracleReal: Real + RealField {}

impl<T: Real + RealField> OracleReal for T {}

/// Largest accepted relative deviation between the two generator-law routes.
pub const LAW_AGREEMENT: f64 = 1e-7;
/// Largest accepted Cayley–Hamilton residual.
pub const CAYLEY_HAMILTON_LIMIT: f64 = 1e-8;
/// Tail entries with `0 < |α| <= NEAR_BOUNDARY_FACTOR·eps` make a trial
/// ambiguous between two types; such trials are skipped and reported.
pub const NEAR_BOUNDARY_FACTOR: f64 = 10.0;
/// Sampled generators whose equilibrated power basis has `σ_min/σ_max`
/// below this (or below `NEAR_BOUNDARY_FACTOR·eps`, if larger) are redrawn
/// before the law comparison.
pub const GENERATOR_CONDITION_FLOOR: f64 = 1e-6;
/// Redraws allowed before an ill-conditioned sample is used anyway.
const GENERATOR_REDRAWS: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport<T> {
    pub passed: bool,
    pub residual: T,
    pub witness: Option<String>,
}

/// Refinement sweeps applied after the first LU solve.
const REFINEMENT_STEPS: usize = 3;

/// Power basis of `x` with its row/column equilibration and LU factors.
///
/// Singular when some power vanishes relative to its predecessor or when the
/// smallest singular value of the equilibrated matrix is at or below `eps`
/// times the largest. Both tests are invariant under diagonal rescaling.
struct PowerBasis<T: OracleReal> {
    unscaled: DMatrix<Complex<T>>,
    scaled: DMatrix<Complex<T>>,
    lu: nalgebra::LU<Complex<T>, nalgebra::Dyn, nalgebra::Dyn>,
    row_scales: Vec<T>,
    col_scales: Vec<T>,
}

impl<T: OracleReal> PowerBasis<T> {
    fn new(algebra: &CyclicAlgebra<T>, x: &Element<T>) -> Result<Self> {
        let n = algebra.dim();
        algebra.element(x.coords().to_vec())?;
        let eq = algebra
            .equilibrated_power_basis(x)
            .ok_or_else(|| Error::NotAGenerator("some power of x vanishes".into()))?;
        let scaled = DMatrix::from_fn(n, n, |r, c| eq.entries[r][c]);
        let ratio = singular_value_ratio(&scaled);
        if ratio <= algebra.tolerance().eps() {
            return Err(Error::NotAGenerator(format!(
                "power basis singular: σ_min/σ_max = {ratio:e}"
            )));
        }
        let powers = algebra.power_basis(x)?;
        let unscaled = DMatrix::from_fn(n, n, |r, c| powers[c][r]);
        Ok(Self {
            lu: scaled.clone().lu(),
            unscaled,
            scaled,
            row_scales: eq.row_scales,
            col_scales: eq.col_scales,
        })
    }

    /// Coordinates of `v` (standard basis) in the power basis.
    fn solve(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        let rhs = DVector::from_iterator(
            v.len(),
            v.iter().zip(&self.row_scales).map(|(&z, &r)| z * r),
        );
        let mut y = self
            .lu
            .solve(&rhs)
            .expect("nonsingular after the singular-value check");
        for _ in 0..REFINEMENT_STEPS {
            let residual = &rhs - &self.scaled * &y;
            if let Some(dy) = self.lu.solve(&residual) {
                y += dy;
            }
        }
        y.iter()
            .zip(&self.col_scales)
            .map(|(&yj, &c)| yj * c)
            .collect()
    }
}

fn singular_value_ratio<T: OracleReal>(m: &DMatrix<Complex<T>>) -> T {
    let sv = m.clone().singular_values();
    let (smin, smax) = sv.iter().fold((sv[0], sv[0]), |(lo, hi), &s| {
        (Float::min(s, lo), Float::max(s, hi))
    });
    smin / smax
}

/// `σ_min/σ_max` of the equilibrated power basis of `x`; zero when some
/// power of `x` vanishes.
pub fn power_basis_conditioning<T: OracleReal>(
    algebra: &CyclicAlgebra<T>,
    x: &Element<T>,
) -> Result<T> {
    let n = algebra.dim();
    algebra.element(x.coords().to_vec())?;
    Ok(match algebra.equilibrated_power_basis(x) {
        None => T::zero(),
        Some(eq) => singular_value_ratio(&DMatrix::from_fn(n, n, |r, c| eq.entries[r][c])),
    })
}

/// [`sampling::generator`], redrawn while the power basis is worse
/// conditioned than [`GENERATOR_CONDITION_FLOOR`] or `NEAR_BOUNDARY_FACTOR·eps`. Returns the sample, the
/// number of redraws and whether the sample meets the floor.
pub fn well_conditioned_generator<T: OracleReal, R: Rng + ?Sized>(
    rng: &mut R,
    algebra: &CyclicAlgebra<T>,
) -> (Element<T>, usize, bool) {
    let floor = Float::max(
        T::lit(GENERATOR_CONDITION_FLOOR),
        algebra.tolerance().eps() * T::lit(NEAR_BOUNDARY_FACTOR),
    );
    let mut redraws = 0;
    loop {
        let x = sampling::generator(rng, algebra);
        let ok = power_basis_conditioning(algebra, &x).is_ok_and(|r| r >= floor);
        if ok || redraws == GENERATOR_REDRAWS {
            return (x, redraws, ok);
        }
        redraws += 1;
    }
}

/// Law of `x` found by expressing `x·xⁿ` in the basis `x, …, xⁿ`.
///
/// The coefficient on `x` itself is dropped (it vanishes identically). A
/// singular power basis means `x` is not a generator. Singularity is decided
/// in working precision; the powers and the solve are carried out in
/// double-double arithmetic and rounded back, so the result is accurate to
/// working precision for any power basis passing the singularity test.
pub fn law_by_linear_solve<T: OracleReal>(
    algebra: &CyclicAlgebra<T>,
    x: &Element<T>,
) -> Result<Law<T>> {
    PowerBasis::new(algebra, x)?;
    let tail = algebra.tail().iter().map(|&z| widen(z)).collect();
    let eps = Tolerance::new(TwoFloat::from(algebra.tolerance().eps().to_f64().unwrap()))?;
    let wide = CyclicAlgebra::build(algebra.dim(), tail, eps)?;
    let wx = Element::new(x.coords().iter().map(|&z| widen(z)).collect());
    let powers = wide.power_basis(&wx)?;
    let product = wide.multiply(&wx, powers.last().expect("positive dimension"))?;
    let coords = gauss_solve(&powers, product.coords())
        .ok_or_else(|| Error::NotAGenerator("power basis singular in extended precision".into()))?;
    Ok(Law::new(coords[1..].iter().map(|&z| narrow(z)).collect()))
}

fn widen<T: Real>(z: Complex<T>) -> Complex<TwoFloat> {
    let lift = |v: T| TwoFloat::from(v.to_f64().expect("finite"));
    Complex::new(lift(z.re), lift(z.im))
}

fn narrow<T: Real>(z: Complex<TwoFloat>) -> Complex<T> {
    Complex::new(T::lit(f64::from(z.re)), T::lit(f64::from(z.im)))
}

/// Solves `Σ cⱼ·columnsⱼ = rhs` by Gaussian elimination with partial pivoting.
fn gauss_solve<T: Real>(columns: &[Element<T>], rhs: &[Complex<T>]) -> Option<Vec<Complex<T>>> {
    let n = rhs.len();
    let mut m: Vec<Vec<Complex<T>>> = (0..n)
        .map(|r| {
            let mut row: Vec<Complex<T>> = columns.iter().map(|col| col[r]).collect();
            row.push(rhs[r]);
            row
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).max_by(|&i, &j| {
            m[i][col]
                .norm()
                .partial_cmp(&m[j][col].norm())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if m[pivot_row][col].is_zero() {
            return None;
        }
        m.swap(col, pivot_row);
        let (upper, lower) = m.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower {
            let factor = row[col] / pivot_row[col];
            for (x, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = *x - factor * p;
            }
        }
    }
    let mut out = vec![Complex::zero(); n];
    for r in (0..n).rev() {
        let mut acc = m[r][n];
        for c in r + 1..n {
            acc = acc - m[r][c] * out[c];
        }
        out[r] = acc / m[r][r];
    }
    Some(out)
}

/// Builds `f: A → B` with `f(xⁱ) = yⁱ` and measures `f(uv) − f(u)f(v)` over
/// all pairs of standard basis vectors of `A`.
///
/// Each residual is divided by `max(|f(uv)|, |f(u)f(v)|, |f(u)|·|f(v)|)`,
/// which makes it invariant under rescaling either generator; the report
/// passes when the worst is within `A`'s tolerance.
pub fn explicit_iso_check<T: OracleReal>(
    a: &CyclicAlgebra<T>,
    b: &CyclicAlgebra<T>,
    x: &Element<T>,
    y: &Element<T>,
) -> Result<OracleReport<T>> {
    if a.dim() != b.dim() {
        return Err(Error::InvalidArgument(format!(
            "dimensions {} and {} differ",
            a.dim(),
            b.dim()
        )));
    }
    let n = a.dim();
    let pa = PowerBasis::new(a, x)?;
    let pb = PowerBasis::new(b, y)?;
    // f = P_B · P_A⁻¹, assembled column by column from f(aʲ) = P_B·(P_A⁻¹ aʲ)
    let pb_matrix = &pb.unscaled;
    let mut f = DMatrix::from_element(n, n, Complex::zero());
    for j in 1..=n {
        let coords = pa.solve(a.basis(j).coords());
        let image = pb_matrix * DVector::from_column_slice(&coords);
        f.set_column(j - 1, &image);
    }
    let apply = |v: &Element<T>| -> Element<T> {
        let out = &f * DVector::from_column_slice(v.coords());
        Element::new(out.iter().copied().collect())
    };

    let mut worst = T::zero();
    let mut witness = None;
    for i in 1..=n {
        let fu = apply(&a.basis(i));
        for j in 1..=n {
            let fv = apply(&a.basis(j));
            let lhs = apply(&a.multiply(&a.basis(i), &a.basis(j))?);
            let rhs = b.multiply(&fu, &fv)?;
            let scale = Float::max(
                Float::max(lhs.max_norm(), rhs.max_norm()),
                fu.max_norm() * fv.max_norm(),
            );
            let diff = (&lhs - &rhs).max_norm();
            let residual = if diff.is_zero() {
                T::zero()
            } else {
                diff / scale
            };
            if residual > worst {
                worst = residual;
                witness = Some(format!("f(a^{i}·a^{j}) ≠ f(a^{i})·f(a^{j})"));
            }
        }
    }
    let passed = worst <= a.tolerance().eps();
    Ok(OracleReport {
        passed,
        residual: worst,
        witness: if passed { None } else { witness },
    })
}

/// First power whose tail coefficient exceeds `eps`, and that coefficient.
fn leading_term<T: Real>(algebra: &CyclicAlgebra<T>) -> Option<(usize, Complex<T>)> {
    let eps = algebra.tolerance().eps();
    algebra
        .tail()
        .iter()
        .enumerate()
        .find(|(_, a)| a.norm() > eps)
        .map(|(i, &a)| (i + 2, a))
}

/// `c·a` with `c^{n-k+1}αₖ = 1` on the principal branch, or `a` itself for a
/// nilpotent algebra.
fn normalized_generator<T: Real>(algebra: &CyclicAlgebra<T>) -> (Element<T>, usize) {
    let n = algebra.dim();
    match leading_term(algebra) {
        None => (algebra.generator(), 1),
        Some((k, alpha)) => {
            let order = n - k + 1;
            let c = principal_root(alpha, -1, order as u64).expect("nonzero leading coefficient");
            (algebra.generator().scale(c), order)
        }
    }
}

/// Decides isomorphism by explicit maps: `A`'s normalized generator rotated
/// by every root of unity of the relevant order, against `B`'s normalized
/// generator. Algebras of different dimension are never isomorphic.
pub fn iso_by_search<T: OracleReal>(a: &CyclicAlgebra<T>, b: &CyclicAlgebra<T>) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let (x0, order) = normalized_generator(a);
    let (y, _) = normalized_generator(b);
    let roots = roots_of_unity::<T>(order).expect("order is positive");
    roots.into_iter().any(|w| {
        explicit_iso_check(a, b, &x0.scale(w), &y)
            .map(|report| report.passed)
            .unwrap_or(false)
    })
}

#[derive(Clone, Copy, Debug)]
pub struct FuzzConfig<T> {
    pub trials: usize,
    pub dim_max: usize,
    pub seed: u64,
    pub tol: Tolerance<T>,
}

/// A check that went the wrong way, with enough data to replay it.
#[derive(Clone, Debug, PartialEq)]
pub struct Disagreement<T> {
    pub trial: usize,
    pub check: &'static str,
    pub n: usize,
    pub tail: Vec<Complex<T>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzReport<T> {
    pub config_trials: usize,
    pub dim_max: usize,
    pub seed: u64,
    pub eps: T,
    pub trials_run: usize,
    pub checks_run: usize,
    /// Trials whose tail sat within the near-boundary band of zero.
    pub near_boundary: Vec<usize>,
    /// Sampled elements that both generator tests rejected.
    pub degenerate_generators: usize,
    /// Generator samples discarded as ill-conditioned.
    pub generator_redraws: usize,
    /// Trials whose generator stayed ill-conditioned after every redraw; the
    /// law comparison is skipped for them.
    pub ill_conditioned_trials: Vec<usize>,
    pub max_law_deviation: T,
    pub max_cayley_hamilton: T,
    pub max_leibniz: T,
    pub isomorphic_pairs: usize,
    pub non_isomorphic_pairs: usize,
    pub disagreement: Option<Disagreement<T>>,
}

impl<T: Real> FuzzReport<T> {
    pub fn passed(&self) -> bool {
        self.disagreement.is_none()
    }
}

impl<T: Real> fmt::Display for FuzzReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "fuzz: seed {} trials {} dim-max {} tolerance {:e}",
            self.seed, self.config_trials, self.dim_max, self.eps
        )?;
        writeln!(f, "trials run: {}", self.trials_run)?;
        writeln!(f, "checks run: {}", self.checks_run)?;
        writeln!(
            f,
            "near-boundary trials skipped: {} {:?}",
            self.near_boundary.len(),
            self.near_boundary
        )?;
        writeln!(
            f,
            "degenerate generator samples: {}",
            self.degenerate_generators
        )?;
        writeln!(
            f,
            "ill-conditioned generator redraws: {}",
            self.generator_redraws
        )?;
        writeln!(
            f,
            "law comparison skipped (ill-conditioned): {} {:?}",
            self.ill_conditioned_trials.len(),
            self.ill_conditioned_trials
        )?;
        writeln!(
            f,
            "pairs: {} isomorphic, {} non-isomorphic",
            self.isomorphic_pairs, self.non_isomorphic_pairs
        )?;
        writeln!(f, "max law deviation: {:e}", self.max_law_deviation)?;
        writeln!(
            f,
            "max Cayley-Hamilton residual: {:e}",
            self.max_cayley_hamilton
        )?;
        writeln!(f, "max Leibniz residual: {:e}", self.max_leibniz)?;
        match &self.disagreement {
            None => write!(f, "result: pass"),
            Some(d) => {
                writeln!(f, "result: FAIL")?;
                writeln!(f, "first disagreement in trial {}: {}", d.trial, d.check)?;
                writeln!(f, "  dimension {}", d.n)?;
                let tail: Vec<String> = d
                    .tail
                    .iter()
                    .map(|z| format!("[{:e}, {:e}]", z.re, z.im))
                    .collect();
                writeln!(f, "  tail [{}]", tail.join(", "))?;
                write!(f, "  {}", d.detail)
            }
        }
    }
}

/// Seeded campaign comparing every formula against its brute-force
/// counterpart. Trial `i` draws from its own stream, so results do not
/// depend on evaluation order. Stops at the first disagreement.
pub fn fuzz<T: OracleReal>(config: &FuzzConfig<T>) -> FuzzReport<T> {
    let mut report = FuzzReport {
        config_trials: config.trials,
        dim_max: config.dim_max,
        seed: config.seed,
        eps: config.tol.eps(),
        trials_run: 0,
        checks_run: 0,
        near_boundary: Vec::new(),
        degenerate_generators: 0,
        generator_redraws: 0,
        ill_conditioned_trials: Vec::new(),
        max_law_deviation: T::zero(),
        max_cayley_hamilton: T::zero(),
        max_leibniz: T::zero(),
        isomorphic_pairs: 0,
        non_isomorphic_pairs: 0,
        disagreement: None,
    };
    let dim_max = config.dim_max.max(1);
    for trial in 0..config.trials {
        let mut rng = sampling::trial_rng(config.seed, trial as u64);
        let n = if dim_max < 2 {
            1
        } else {
            rng.random_range(2..=dim_max)
        };
        let mut algebra = sampling::algebra_any(&mut rng, n, config.tol);
        if n >= 2 && rng.random_ratio(1, 20) {
            // sub-threshold entry: ambiguous between two types
            let mut tail = algebra.tail().to_vec();
            let at = rng.random_range(0..tail.len());
            let half = config.tol.eps() / T::lit(2.0);
            tail[at] = sampling::complex_in_annulus::<T, _>(&mut rng, 1.0, 1.0) * half;
            algebra = CyclicAlgebra::build(n, tail, config.tol).expect("same shape");
        }
        report.trials_run += 1;
        if let Err(d) = run_trial(trial, &algebra, &mut rng, &mut report) {
            report.disagreement = Some(d);
            break;
        }
    }
    report
}

/// Whether some tail entry is nonzero but within the near-boundary band.
pub fn near_boundary<T: Real>(algebra: &CyclicAlgebra<T>) -> bool {
    let band = algebra.tolerance().eps() * T::lit(NEAR_BOUNDARY_FACTOR);
    algebra.tail().iter().any(|a| {
        let m = a.norm();
        m > T::zero() && m <= band
    })
}

fn law_deviation<T: Real>(reference: &Law<T>, other: &Law<T>) -> T {
    let scale = reference.max_norm().max(T::one());
    let diff: Vec<Complex<T>> = reference
        .coefficients()
        .iter()
        .zip(other.coefficients())
        .map(|(&x, &y)| x - y)
        .collect();
    max_norm(&diff) / scale
}

fn run_trial<T: OracleReal, R: Rng>(
    trial: usize,
    algebra: &CyclicAlgebra<T>,
    rng: &mut R,
    report: &mut FuzzReport<T>,
) -> std::result::Result<(), Disagreement<T>> {
    let fail = |check: &'static str, detail: String| Disagreement {
        trial,
        check,
        n: algebra.dim(),
        tail: algebra.tail().to_vec(),
        detail,
    };
    if near_boundary(algebra) {
        report.near_boundary.push(trial);
        return Ok(());
    }
    let n = algebra.dim();
    let tol = algebra.tolerance();

    let leibniz = algebra.verify_leibniz();
    report.checks_run += 1;
    report.max_leibniz = Float::max(report.max_leibniz, leibniz.residual);
    if !leibniz.passed {
        return Err(fail("leibniz identity", leibniz.to_string()));
    }

    let ch = algebra.cayley_hamilton_residual();
    report.checks_run += 1;
    report.max_cayley_hamilton = Float::max(report.max_cayley_hamilton, ch);
    if ch >= T::lit(CAYLEY_HAMILTON_LIMIT) {
        return Err(fail("cayley-hamilton", format!("residual {ch:e}")));
    }

    let form = normalize(algebra);
    report.checks_run += 1;
    if !normalize(&form.to_algebra(tol)).approx_eq(&form, tol) {
        return Err(fail("normalize idempotence", format!("{form:?}")));
    }

    let (x, redraws, conditioned) = well_conditioned_generator(rng, algebra);
    report.generator_redraws += redraws;
    if !conditioned {
        report.ill_conditioned_trials.push(trial);
    }
    report.checks_run += usize::from(conditioned);
    match (
        law_by_linear_solve(algebra, &x),
        generator_law(algebra, x.leading()),
    ) {
        _ if !conditioned => {}
        (Ok(solved), Ok(formula)) => {
            let dev = law_deviation(&formula, &solved);
            report.max_law_deviation = Float::max(report.max_law_deviation, dev);
            if dev >= T::lit(LAW_AGREEMENT) {
                return Err(fail(
                    "generator law",
                    format!("x = {:?}: deviation {dev:e}", x.coords()),
                ));
            }
            if formula.leading_power(tol) != detect_type(algebra).k() {
                return Err(fail(
                    "type uniqueness",
                    format!("x = {:?}: law {:?}", x.coords(), formula.coefficients()),
                ));
            }
        }
        (Err(_), _) if !algebra.is_generator(&x).unwrap_or(true) => {
            report.degenerate_generators += 1;
        }
        (solved, formula) => {
            return Err(fail(
                "generator detection",
                format!(
                    "x = {:?}: linear solve {:?}, formula {:?}",
                    x.coords(),
                    solved.err(),
                    formula.err()
                ),
            ));
        }
    }

    if n >= 2 {
        let constructed = rng.random_bool(0.5);
        let partner = if constructed {
            let s = sampling::rescaling::<T, _>(rng, 0.5, 2.0);
            let law = generator_law(algebra, s).expect("|s| >= 0.5");
            CyclicAlgebra::build(n, law.into_coefficients(), tol).expect("law has tail layout")
        } else {
            sampling::algebra_any(rng, n, tol)
        };
        if !near_boundary(&partner) {
            report.checks_run += 1;
            let by_form = isomorphic(algebra, &partner);
            let by_orbit = isomorphic_by_orbit(algebra, &partner);
            let by_search = iso_by_search(algebra, &partner);
            if by_form {
                report.isomorphic_pairs += 1;
            } else {
                report.non_isomorphic_pairs += 1;
            }
            if by_form != by_search || by_form != by_orbit || (constructed && !by_form) {
                return Err(fail(
                    "isomorphism",
                    format!(
                        "partner tail {:?}: canonical {by_form}, orbit {by_orbit}, search {by_search}, constructed {constructed}",
                        partner.tail()
                    ),
                ));
            }
        }
    }
    Ok(())
}
