//! Cyclic Leibniz algebras, their elements and left-multiplication operators.
//!
//! An `n`-dimensional cyclic Leibniz algebra is spanned by the powers
//! `a, a², …, aⁿ` of a generator `a`, where `aʲ⁺¹ = a·aʲ` and
//!
//! ```text
//! a·aⁿ = α₂a² + α₃a³ + ⋯ + αₙaⁿ.
//! ```
//!
//! The coefficients `(α₂, …, αₙ)` are the *tail*. There is no `α₁`: the
//! Leibniz identity forces it to vanish, so the type cannot express it.
//! Left multiplication by `aʲ` is zero for every `j ≥ 2`, hence
//! `L_x = c₁·L_a` for `x = c₁a + ⋯ + cₙaⁿ`.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{is_finite, max_norm, Real, Tolerance};

/// Coordinates `(c₁, …, cₙ)` in the basis `a, a², …, aⁿ`.
///
/// `coords()[j]` is the coefficient of `aʲ⁺¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<T> {
    coords: Vec<Complex<T>>,
}

impl<T: Real> Element<T> {
    pub fn new(coords: Vec<Complex<T>>) -> Self {
        Self { coords }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            coords: vec![Complex::zero(); n],
        }
    }

    /// The basis vector `a^power`, `1 <= power <= n`.
    pub fn basis(n: usize, power: usize) -> Self {
        assert!(
            (1..=n).contains(&power),
            "basis power {power} outside 1..={n}"
        );
        let mut e = Self::zero(n);
        e.coords[power - 1] = Complex::new(T::one(), T::zero());
        e
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex<T>] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Complex<T>> {
        self.coords
    }

    /// Leading coordinate `c₁`, the coefficient of `a`.
    pub fn leading(&self) -> Complex<T> {
        self.coords.first().copied().unwrap_or_else(Complex::zero)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            coords: self.coords.iter().map(|&c| s * c).collect(),
        }
    }

    pub fn max_norm(&self) -> T {
        max_norm(&self.coords)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl<T> Index<usize> for Element<T> {
    type Output = Complex<T>;

    fn index(&self, j: usize) -> &Complex<T> {
        &self.coords[j]
    }
}

impl<T: Real> Add for &Element<T> {
    type Output = Element<T>;

    fn add(self, rhs: &Element<T>) -> Element<T> {
        assert_eq!(self.dim(), rhs.dim(), "element dimensions differ");
        Element::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(&x, &y)| x + y)
                .collect(),
        )
    }
}

impl<T: Real> Sub for &Element<T> {
    type Output = Element<T>;

    fn sub(self, rhs: &Element<T>) -> Element<T> {
        assert_eq!(self.dim(), rhs.dim(), "element dimensions differ");
        Element::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(&x, &y)| x - y)
                .collect(),
        )
    }
}

impl<T: Real> Neg for &Element<T> {
    type Output = Element<T>;

    fn neg(self) -> Element<T> {
        Element::new(self.coords.iter().map(|&x| -x).collect())
    }
}

impl<T: Real> Mul<&Element<T>> for Complex<T> {
    type Output = Element<T>;

    fn mul(self, rhs: &Element<T>) -> Element<T> {
        rhs.scale(self)
    }
}

/// Dense `n×n` matrix of a left-multiplication operator; column `j` is the
/// image of `aʲ⁺¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultOperator<T> {
    n: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Real> MultOperator<T> {
    fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![Complex::zero(); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row * self.n + col]
    }

    fn set(&mut self, row: usize, col: usize, value: Complex<T>) {
        self.entries[row * self.n + col] = value;
    }

    pub fn column(&self, col: usize) -> Element<T> {
        Element::new((0..self.n).map(|row| self.get(row, col)).collect())
    }

    pub fn apply(&self, v: &Element<T>) -> Element<T> {
        assert_eq!(v.dim(), self.n, "operator and vector dimensions differ");
        Element::new(
            (0..self.n)
                .map(|row| {
                    (0..self.n).fold(Complex::zero(), |acc, col| {
                        acc + self.get(row, col) * v[col]
                    })
                })
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|&e| s * e).collect(),
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}

/// Multiplication law `x·xⁿ = λ₂x² + ⋯ + λₙxⁿ` of a generator `x`.
///
/// Coefficients are stored for powers `2..=n`, the same layout as an
/// algebra's tail; building an algebra from them yields one in which the
/// standard generator obeys this law.
#[derive(Clone, Debug, PartialEq)]
pub struct Law<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> Law<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Self {
        Self { coeffs }
    }

    /// Dimension of the algebra the law lives in.
    pub fn dim(&self) -> usize {
        self.coeffs.len() + 1
    }

    pub fn coefficients(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    /// `λ_power` for `2 <= power <= n`.
    pub fn coefficient(&self, power: usize) -> Complex<T> {
        self.coeffs[power - 2]
    }

    /// Coefficients from `power` through `n`.
    pub fn from_power(&self, power: usize) -> &[Complex<T>] {
        &self.coeffs[power - 2..]
    }

    /// Smallest power whose coefficient exceeds `eps` in modulus, or `None`
    /// for the zero law.
    pub fn leading_power(&self, tol: Tolerance<T>) -> Option<usize> {
        self.coeffs
            .iter()
            .position(|c| c.norm() > tol.eps())
            .map(|i| i + 2)
    }

    pub fn max_norm(&self) -> T {
        max_norm(&self.coeffs)
    }
}

/// Cyclic Leibniz algebra of dimension `n` given by its tail `(α₂, …, αₙ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicAlgebra<T> {
    tail: Vec<Complex<T>>,
    tol: Tolerance<T>,
}

impl<T: Real> CyclicAlgebra<T> {
    /// Algebra with `a·aⁿ = Σ tail[i]·aⁱ⁺²`. The tail must have exactly
    /// `n - 1` finite entries.
    pub fn build(n: usize, tail: Vec<Complex<T>>, tol: Tolerance<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if tail.len() != n - 1 {
            return Err(Error::InvalidArgument(format!(
                "dimension {n} needs {} tail coefficients, got {}",
                n - 1,
                tail.len()
            )));
        }
        if let Some(bad) = tail.iter().position(|&z| !is_finite(z)) {
            return Err(Error::InvalidArgument(format!(
                "tail coefficient α{} is not finite",
                bad + 2
            )));
        }
        Ok(Self { tail, tol })
    }

    /// The nilpotent algebra `a·aⁿ = 0`.
    pub fn nilpotent(n: usize, tol: Tolerance<T>) -> Result<Self> {
        Self::build(n, vec![Complex::zero(); n.saturating_sub(1)], tol)
    }

    pub fn dim(&self) -> usize {
        self.tail.len() + 1
    }

    pub fn tail(&self) -> &[Complex<T>] {
        &self.tail
    }

    pub fn tolerance(&self) -> Tolerance<T> {
        self.tol
    }

    pub fn with_tolerance(mut self, tol: Tolerance<T>) -> Self {
        self.tol = tol;
        self
    }

    /// `α_power` for `2 <= power <= n`.
    pub fn coefficient(&self, power: usize) -> Complex<T> {
        self.tail[power - 2]
    }

    /// The generator `a`.
    pub fn generator(&self) -> Element<T> {
        Element::basis(self.dim(), 1)
    }

    /// The basis vector `a^power`.
    pub fn basis(&self, power: usize) -> Element<T> {
        Element::basis(self.dim(), power)
    }

    pub fn element(&self, coords: Vec<Complex<T>>) -> Result<Element<T>> {
        let x = Element::new(coords);
        self.check_dim(&x)?;
        Ok(x)
    }

    fn check_dim(&self, x: &Element<T>) -> Result<()> {
        if x.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "element has {} coordinates, algebra has dimension {}",
                x.dim(),
                self.dim()
            )))
        }
    }

    /// `L_a(y) = a·y`: shifts `aʲ ↦ aʲ⁺¹` and folds `aⁿ` onto the tail.
    pub(crate) fn apply_generator(&self, y: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.dim();
        let mut out = vec![Complex::zero(); n];
        out[1..].copy_from_slice(&y[..n - 1]);
        let top = y[n - 1];
        if !top.is_zero() {
            for (i, &alpha) in self.tail.iter().enumerate() {
                out[i + 1] = out[i + 1] + top * alpha;
            }
        }
        out
    }

    /// Companion matrix of `L_a`: ones on the subdiagonal, last column
    /// `(0, α₂, …, αₙ)`.
    pub fn companion(&self) -> MultOperator<T> {
        let n = self.dim();
        let mut op = MultOperator::zero(n);
        for j in 0..n - 1 {
            op.set(j + 1, j, Complex::new(T::one(), T::zero()));
        }
        for (i, &alpha) in self.tail.iter().enumerate() {
            op.set(i + 1, n - 1, alpha);
        }
        op
    }

    /// `L_x = c₁·L_a`.
    pub fn left_mult(&self, x: &Element<T>) -> Result<MultOperator<T>> {
        self.check_dim(x)?;
        Ok(self.companion().scale(x.leading()))
    }

    /// The product `x·y = c₁(x)·L_a(y)`.
    pub fn multiply(&self, x: &Element<T>, y: &Element<T>) -> Result<Element<T>> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.multiply_unchecked(x, y))
    }

    pub(crate) fn multiply_unchecked(&self, x: &Element<T>, y: &Element<T>) -> Element<T> {
        let c1 = x.leading();
        if c1.is_zero() {
            return Element::zero(self.dim());
        }
        Element::new(
            self.apply_generator(y.coords())
                .into_iter()
                .map(|v| c1 * v)
                .collect(),
        )
    }

    /// `[x, x², …, xⁿ]` with `xʲ⁺¹ = x·xʲ`. Independence is not checked.
    pub fn power_basis(&self, x: &Element<T>) -> Result<Vec<Element<T>>> {
        self.check_dim(x)?;
        let mut powers = Vec::with_capacity(self.dim());
        powers.push(x.clone());
        for _ in 1..self.dim() {
            let next = self.multiply_unchecked(x, powers.last().unwrap());
            powers.push(next);
        }
        Ok(powers)
    }

    /// Whether `x` generates the algebra.
    ///
    /// Requires `|c₁| > eps` and a numerically independent power basis: the
    /// leading coordinate alone is not sufficient, e.g. `a - α⁻¹a²` squares
    /// to zero in the algebra `a·a² = αa²`. Independence is decided by
    /// partial-pivoting elimination on the row- and column-equilibrated
    /// power basis, with a pivot threshold of `eps`.
    pub fn is_generator(&self, x: &Element<T>) -> Result<bool> {
        self.check_dim(x)?;
        if x.leading().norm() <= self.tol.eps() {
            return Ok(false);
        }
        Ok(self
            .equilibrated_power_basis(x)
            .is_some_and(|m| pivots_above(m.entries, self.tol.eps())))
    }

    /// Equilibrated power basis of `x`, or `None` when some power `xʲ⁺¹`
    /// vanishes relative to `eps·|c₁|·max(1, |α|∞)·|xʲ|`, the bound its size
    /// would have if `xʲ` were generic.
    pub(crate) fn equilibrated_power_basis(&self, x: &Element<T>) -> Option<Equilibrated<T>> {
        let n = self.dim();
        let powers = self.power_basis(x).ok()?;
        let op_norm = max_norm(&self.tail).max(T::one());
        let growth = self.tol.eps() * x.leading().norm() * op_norm;
        if powers[0].max_norm() <= T::zero() {
            return None;
        }
        for pair in powers.windows(2) {
            if pair[1].max_norm() <= growth * pair[0].max_norm() {
                return None;
            }
        }
        let mut entries: Vec<Vec<Complex<T>>> = (0..n)
            .map(|row| powers.iter().map(|p| p[row]).collect())
            .collect();
        let mut row_scales = Vec::with_capacity(n);
        for row in entries.iter_mut() {
            let s = max_norm(row);
            if s <= T::zero() || !s.is_finite() {
                return None;
            }
            row.iter_mut().for_each(|z| *z = *z / s);
            row_scales.push(s.recip());
        }
        let mut col_scales = Vec::with_capacity(n);
        for col in 0..n {
            let s = (0..n)
                .map(|row| entries[row][col].norm())
                .fold(T::zero(), T::max);
            if s <= T::zero() {
                return None;
            }
            for row in entries.iter_mut() {
                row[col] = row[col] / s;
            }
            col_scales.push(s.recip());
        }
        Some(Equilibrated {
            entries,
            row_scales,
            col_scales,
        })
    }

    /// Structure constants `aⁱ·aʲ` of this algebra.
    pub fn structure_table(&self) -> MultiplicationTable<T> {
        let n = self.dim();
        let products = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .map(|(i, j)| self.multiply_unchecked(&self.basis(i), &self.basis(j)))
            .collect();
        MultiplicationTable { n, products }
    }

    /// Checks `x(yz) = (xy)z + y(xz)` on every basis triple.
    pub fn verify_leibniz(&self) -> LeibnizReport<T> {
        self.structure_table().verify_leibniz(self.tol)
    }

    /// Characteristic polynomial `tⁿ − αₙtⁿ⁻¹ − ⋯ − α₂t` of `L_a`, read off
    /// the tail. Coefficients are in ascending degree; the last one is 1.
    pub fn char_poly(&self) -> Vec<Complex<T>> {
        let n = self.dim();
        let mut coeffs = vec![Complex::zero(); n + 1];
        for (i, &alpha) in self.tail.iter().enumerate() {
            // α_{i+2} multiplies t^{i+1}
            coeffs[i + 1] = -alpha;
        }
        coeffs[n] = Complex::new(T::one(), T::zero());
        coeffs
    }

    /// Largest `‖f(L_a)aʲ‖∞` over the basis, where `f` is the characteristic
    /// polynomial, divided by `max(1, Σₘ |fₘ|·‖L_aᵐaʲ‖∞)`.
    ///
    /// Dividing by the size of the summed terms keeps the figure comparable
    /// across tails whose powers of `L_a` grow large. It is zero in exact
    /// arithmetic, and exactly zero for the nilpotent algebra.
    pub fn cayley_hamilton_residual(&self) -> T {
        let n = self.dim();
        let poly = self.char_poly();
        let mut worst = T::zero();
        for j in 1..=n {
            let mut power = self.basis(j).into_coords();
            let mut sum: Vec<Complex<T>> = vec![Complex::zero(); n];
            let mut scale = T::zero();
            for (m, &coeff) in poly.iter().enumerate() {
                if m > 0 {
                    power = self.apply_generator(&power);
                }
                if coeff.is_zero() {
                    continue;
                }
                for (s, &p) in sum.iter_mut().zip(&power) {
                    *s = *s + coeff * p;
                }
                scale = scale + coeff.norm() * max_norm(&power);
            }
            let residual = max_norm(&sum) / scale.max(T::one());
            worst = worst.max(residual);
        }
        worst
    }
}

/// Power basis `P = [x, …, xⁿ]` rescaled to `R·P·C`, where the diagonal
/// factors give every row and then every column unit max-norm.
pub(crate) struct Equilibrated<T> {
    pub entries: Vec<Vec<Complex<T>>>,
    pub row_scales: Vec<T>,
    pub col_scales: Vec<T>,
}

/// Partial-pivoting elimination; any pivot at or below `eps` declares the
/// matrix singular.
fn pivots_above<T: Real>(mut m: Vec<Vec<Complex<T>>>, eps: T) -> bool {
    let n = m.len();
    for col in 0..n {
        let (pivot_row, pivot) =
            (col..n)
                .map(|r| (r, m[r][col].norm()))
                .fold(
                    (col, T::zero()),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        if pivot <= eps {
            return false;
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
    true
}

/// Raw structure constants `eᵢ·eⱼ` of an `n`-dimensional algebra, used to
/// check the Leibniz identity independently of how the product was defined.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicationTable<T> {
    n: usize,
    products: Vec<Element<T>>,
}

impl<T: Real> MultiplicationTable<T> {
    /// All products zero.
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            products: vec![Element::zero(n); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `a^i · a^j` for 1-based powers.
    pub fn product(&self, i: usize, j: usize) -> &Element<T> {
        &self.products[(i - 1) * self.n + (j - 1)]
    }

    /// Overwrites `a^i · a^j`.
    pub fn set(&mut self, i: usize, j: usize, value: Element<T>) -> Result<()> {
        if value.dim() != self.n || !(1..=self.n).contains(&i) || !(1..=self.n).contains(&j) {
            return Err(Error::InvalidArgument(format!(
                "product a^{i}·a^{j} does not fit a {}-dimensional table",
                self.n
            )));
        }
        self.products[(i - 1) * self.n + (j - 1)] = value;
        Ok(())
    }

    /// Bilinear extension of the table.
    pub fn mul(&self, x: &Element<T>, y: &Element<T>) -> Element<T> {
        let mut out = vec![Complex::zero(); self.n];
        for (i, &xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, &yj) in y.coords().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                for (o, &p) in out.iter_mut().zip(self.products[i * self.n + j].coords()) {
                    *o = *o + w * p;
                }
            }
        }
        Element::new(out)
    }

    /// Checks `x(yz) = (xy)z + y(xz)` for every basis triple.
    ///
    /// Trilinearity makes the basis check equivalent to the full identity.
    /// Each residual is divided by `max(1, largest term)`; the check passes
    /// when the worst one is at most `eps`.
    pub fn verify_leibniz(&self, tol: Tolerance<T>) -> LeibnizReport<T> {
        let n = self.n;
        let mut worst = T::zero();
        let mut worst_triple = (1, 1, 1);
        let mut first_violation = None;
        for i in 1..=n {
            let x = Element::basis(n, i);
            for j in 1..=n {
                let y = Element::basis(n, j);
                let xy = self.product(i, j);
                for k in 1..=n {
                    let z = Element::basis(n, k);
                    let lhs = self.mul(&x, self.product(j, k));
                    let first = self.mul(xy, &z);
                    let second = self.mul(&y, self.product(i, k));
                    let diff = &(&lhs - &first) - &second;
                    let scale = lhs
                        .max_norm()
                        .max(first.max_norm())
                        .max(second.max_norm())
                        .max(T::one());
                    let residual = diff.max_norm() / scale;
                    if residual > tol.eps() && first_violation.is_none() {
                        first_violation = Some((i, j, k));
                    }
                    if residual > worst {
                        worst = residual;
                        worst_triple = (i, j, k);
                    }
                }
            }
        }
        LeibnizReport {
            passed: worst <= tol.eps(),
            residual: worst,
            worst_triple,
            first_violation,
        }
    }
}

/// Outcome of a Leibniz-identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct LeibnizReport<T> {
    pub passed: bool,
    /// Worst relative residual over all basis triples.
    pub residual: T,
    /// Powers `(i, j, k)` of the triple `(aⁱ, aʲ, aᵏ)` attaining the residual.
    pub worst_triple: (usize, usize, usize),
    /// First triple in lexicographic order whose residual exceeds `eps`.
    pub first_violation: Option<(usize, usize, usize)>,
}

impl<T: Real> fmt::Display for LeibnizReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.worst_triple;
        write!(
            f,
            "{} (residual {:e} at a^{i}, a^{j}, a^{k})",
            if self.passed { "pass" } else { "FAIL" },
            self.residual
        )?;
        if let Some((i, j, k)) = self.first_violation {
            write!(f, ", first violation at a^{i}, a^{j}, a^{k}")?;
        }
        Ok(())
    }
}
