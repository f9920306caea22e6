//! Seeded random algebras, generators and tuples for property checks.

use num_complex::Complex;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{CyclicAlgebra, Element};
use crate::scalar::{Real, Tolerance};

/// Tail coefficients are drawn with modulus in this range.
pub const TAIL_MODULUS: (f64, f64) = (1e-2, 10.0);
/// Leading generator coordinates are drawn with modulus in this range.
pub const LEADING_MODULUS: (f64, f64) = (0.1, 10.0);
/// Smallest admissible modulus of a sampled generator's leading law
/// coefficient `c₁^{n-k+1}αₖ`, unless `LAW_LEAD_MARGIN·eps` is larger.
pub const LAW_LEAD_FLOOR: f64 = 1e-4;
pub const LAW_LEAD_MARGIN: f64 = 10.0;

/// Independent stream for trial `index` of a campaign seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Log-uniform modulus in `[lo, hi]`, uniform phase.
pub fn complex_in_annulus<T: Real, R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> Complex<T> {
    let modulus = (lo.ln() + rng.random::<f64>() * (hi.ln() - lo.ln())).exp();
    let phase = rng.random::<f64>() * std::f64::consts::TAU;
    Complex::new(T::lit(modulus * phase.cos()), T::lit(modulus * phase.sin()))
}

/// Uniform in the square `[-r, r]²`.
pub fn complex_in_box<T: Real, R: Rng + ?Sized>(rng: &mut R, r: f64) -> Complex<T> {
    Complex::new(
        T::lit(rng.random_range(-r..=r)),
        T::lit(rng.random_range(-r..=r)),
    )
}

/// Tail that is zero below power `k` and has annulus-sampled entries from `k` on.
pub fn tail_of_type<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Vec<Complex<T>> {
    (2..=n)
        .map(|j| {
            if j < k {
                Complex::zero()
            } else {
                complex_in_annulus(rng, TAIL_MODULUS.0, TAIL_MODULUS.1)
            }
        })
        .collect()
}

/// Random non-nilpotent algebra of dimension `n >= 2` with its type drawn
/// uniformly from `2..=n`.
pub fn algebra<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    tol: Tolerance<T>,
) -> CyclicAlgebra<T> {
    let k = rng.random_range(2..=n);
    CyclicAlgebra::build(n, tail_of_type(rng, n, k), tol).expect("sampled tail has n - 1 entries")
}

/// Random algebra of dimension `n`; nilpotent with probability 1/8.
pub fn algebra_any<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    tol: Tolerance<T>,
) -> CyclicAlgebra<T> {
    if n < 2 || rng.random_ratio(1, 8) {
        CyclicAlgebra::nilpotent(n, tol).expect("positive dimension")
    } else {
        algebra(rng, n, tol)
    }
}

/// Random generator candidate: annulus-sampled `c₁`, remaining coordinates
/// uniform in the unit box. When the algebra is non-nilpotent, `c₁` is
/// redrawn until the leading law coefficient `c₁^{n-k+1}αₖ` is at least
/// [`LAW_LEAD_FLOOR`] and `LAW_LEAD_MARGIN·eps` in modulus.
pub fn generator<T: Real, R: Rng + ?Sized>(rng: &mut R, algebra: &CyclicAlgebra<T>) -> Element<T> {
    let n = algebra.dim();
    let eps = algebra.tolerance().eps();
    let lead = algebra
        .tail()
        .iter()
        .enumerate()
        .find(|(_, a)| a.norm() > eps)
        .map(|(i, &a)| (i + 2, a));
    let c1 = loop {
        let c1: Complex<T> = complex_in_annulus(rng, LEADING_MODULUS.0, LEADING_MODULUS.1);
        match lead {
            None => break c1,
            Some((k, alpha)) => {
                let lead_coeff = c1.powi((n - k + 1) as i32) * alpha;
                let floor = T::lit(LAW_LEAD_FLOOR).max(eps * T::lit(LAW_LEAD_MARGIN));
                if lead_coeff.norm() >= floor {
                    break c1;
                }
            }
        }
    };
    let mut coords = vec![c1];
    coords.extend((1..n).map(|_| complex_in_box::<T, R>(rng, 1.0)));
    Element::new(coords)
}

/// Random scalar of modulus in `[lo, hi]` for generator rescalings.
pub fn rescaling<T: Real, R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> Complex<T> {
    complex_in_annulus(rng, lo, hi)
}
