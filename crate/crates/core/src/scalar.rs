//! Complex scalars over a generic real type, the comparison tolerance, roots
//! of unity and principal fractional powers.
//!
//! Everything in the crate is generic over [`Real`], which is implemented for
//! `f32` and `f64`. All comparisons go through a single absolute [`Tolerance`];
//! `approx_eq` is reflexive and symmetric but not transitive, so callers that
//! need an equivalence relation (orbit membership, canonical forms) compare
//! against explicitly computed representatives instead of chaining.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

use crate::error::{Error, Result};

/// Real field underlying the complex scalars.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in every Real")
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + LowerExp
        + Default
        + Send
        + Sync
        + 'static
{
}

/// Default absolute comparison threshold.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Absolute threshold used for every approximate comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance<T> {
    eps: T,
}

impl<T: Real> Tolerance<T> {
    /// Fails unless `eps` is finite and strictly positive.
    pub fn new(eps: T) -> Result<Self> {
        if eps.is_finite() && eps > T::zero() {
            Ok(Self { eps })
        } else {
            Err(Error::InvalidArgument(format!(
                "tolerance must be finite and positive, got {eps}"
            )))
        }
    }

    pub fn eps(&self) -> T {
        self.eps
    }

    /// Same tolerance scaled by `factor` (> 0).
    pub fn scaled(&self, factor: T) -> Self {
        Self {
            eps: self.eps * factor,
        }
    }
}

impl<T: Real> Default for Tolerance<T> {
    fn default() -> Self {
        Self {
            eps: T::lit(DEFAULT_EPS),
        }
    }
}

pub fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `|x - y| <= eps` in the complex modulus.
pub fn approx_eq<T: Real>(x: Complex<T>, y: Complex<T>, tol: Tolerance<T>) -> bool {
    (x - y).norm() <= tol.eps
}

/// Componentwise [`approx_eq`] on equal-length slices; unequal lengths compare unequal.
pub fn approx_eq_slice<T: Real>(xs: &[Complex<T>], ys: &[Complex<T>], tol: Tolerance<T>) -> bool {
    xs.len() == ys.len() && xs.iter().zip(ys).all(|(&x, &y)| approx_eq(x, y, tol))
}

/// Largest component modulus, zero for an empty slice.
pub fn max_norm<T: Real>(xs: &[Complex<T>]) -> T {
    xs.iter().map(|z| z.norm()).fold(T::zero(), T::max)
}

/// The `m` values `exp(2πij/m)` for `j = 0..m`, in that order.
///
/// Quarter turns (`1, i, -1, -i`) are produced exactly so that sign and
/// conjugation symmetries of orbits survive without rounding noise.
pub fn roots_of_unity<T: Real>(m: usize) -> Result<Vec<Complex<T>>> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "roots of unity need a positive order".into(),
        ));
    }
    Ok((0..m).map(|j| root_of_unity(j, m)).collect())
}

/// `exp(2πi j/m)`, with `j` reduced modulo `m`.
pub fn root_of_unity<T: Real>(j: usize, m: usize) -> Complex<T> {
    let j = j % m;
    if (4 * j).is_multiple_of(m) {
        return match 4 * j / m {
            0 => Complex::new(T::one(), T::zero()),
            1 => Complex::new(T::zero(), T::one()),
            2 => Complex::new(-T::one(), T::zero()),
            _ => Complex::new(T::zero(), -T::one()),
        };
    }
    let turn = T::from_usize(j).unwrap() / T::from_usize(m).unwrap();
    Complex::from_polar(T::one(), T::TAU() * turn)
}

/// Principal value of `x^(p/q)`, taking `arg x` in `(-π, π]`.
///
/// `q` must be positive and `x` nonzero when the exponent is negative.
pub fn principal_root<T: Real>(x: Complex<T>, p: i64, q: u64) -> Result<Complex<T>> {
    if q == 0 {
        return Err(Error::InvalidArgument("root index must be positive".into()));
    }
    if !is_finite(x) {
        return Err(Error::Domain(format!("non-finite base {x}")));
    }
    if p == 0 {
        return Ok(Complex::new(T::one(), T::zero()));
    }
    if x.re == T::zero() && x.im == T::zero() {
        return if p < 0 {
            Err(Error::Domain("zero raised to a negative power".into()))
        } else {
            Ok(Complex::new(T::zero(), T::zero()))
        };
    }
    let exponent = T::from_i64(p).unwrap() / T::from_u64(q).unwrap();
    let modulus = x.norm().powf(exponent);
    // num-complex's arg is atan2(im, re); only -0.0 imaginary parts can land
    // on -π, which is folded back onto the principal branch.
    let mut theta = x.arg();
    if theta <= -T::PI() {
        theta = T::PI();
    }
    Ok(Complex::from_polar(modulus, theta * exponent))
}

/// Total-orderable snap of a scalar onto the tolerance grid.
///
/// Orders lexicographically by `(re, im)`. Scalars within `eps` of each other
/// map to equal or adjacent keys; which of two neighbouring cells a value
/// lands in near a cell boundary is decided by rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub re: i128,
    pub im: i128,
}

pub fn canonical_key<T: Real>(x: Complex<T>, tol: Tolerance<T>) -> CanonicalKey {
    CanonicalKey {
        re: snap(x.re, tol.eps),
        im: snap(x.im, tol.eps),
    }
}

fn snap<T: Real>(v: T, eps: T) -> i128 {
    let cell = (v / eps).round();
    match cell.to_i128() {
        Some(k) => k,
        None if cell.is_nan() => 0,
        None if cell > T::zero() => i128::MAX,
        None => i128::MIN,
    }
}
