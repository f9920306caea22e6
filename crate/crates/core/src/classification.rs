//! Type detection, normalization and isomorphism classes.
//!
//! A non-nilpotent algebra has a unique *type* `k`: the smallest power with
//! a nonzero tail coefficient. Rescaling the generator `a ↦ c·a` sends the
//! tail coefficient `αⱼ` to `c^{n-j+1}αⱼ`, so choosing `c = αₖ^{-1/(n-k+1)}`
//! makes the law read
//!
//! ```text
//! x·xⁿ = xᵏ + γₖ₊₁xᵏ⁺¹ + ⋯ + γₙxⁿ.
//! ```
//!
//! The remaining freedom is an `(n-k+1)`-th root of unity `ω`, acting on
//! `(γₖ₊₁, …, γₙ)` by `(ω^d γₖ₊₁, ω^{d-1} γₖ₊₂, …, ω γₙ)` with `d = n - k`.
//! Two algebras are isomorphic exactly when they share `n`, `k` and an orbit.
//! The canonical representative of an orbit is its smallest member under the
//! lexicographic [`canonical_key`] order.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex;
use num_traits::Zero;

use crate::algebra::{CyclicAlgebra, Law};
use crate::error::{Error, Result};
use crate::scalar::{
    approx_eq_slice, canonical_key, principal_root, root_of_unity, CanonicalKey, Real, Tolerance,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeLabel {
    Nilpotent,
    /// Type `k`, `2 <= k <= n`.
    TypeK(usize),
}

impl TypeLabel {
    pub fn k(&self) -> Option<usize> {
        match *self {
            TypeLabel::Nilpotent => None,
            TypeLabel::TypeK(k) => Some(k),
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeLabel::Nilpotent => f.write_str("nilpotent"),
            TypeLabel::TypeK(k) => write!(f, "type {k}"),
        }
    }
}

/// Coefficients `(γₖ₊₁, …, γₙ)` following the normalized leading term.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaTuple<T>(pub Vec<Complex<T>>);

impl<T: Real> GammaTuple<T> {
    pub fn new(entries: Vec<Complex<T>>) -> Self {
        Self(entries)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.0
    }

    /// Order `d + 1` of the root-of-unity group acting on tuples of length `d`.
    pub fn group_order(&self) -> usize {
        self.len() + 1
    }

    /// Acts by `ω = exp(2πi·j/(d+1))`: entry `i` (0-based) is multiplied by
    /// `ω^{d-i}`. Powers of `ω` are reduced modulo `d + 1` before evaluation.
    pub fn rotate(&self, j: usize) -> Self {
        let d = self.len();
        let m = d + 1;
        Self(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &g)| root_of_unity::<T>((j % m) * (d - i), m) * g)
                .collect(),
        )
    }

    pub fn keys(&self, tol: Tolerance<T>) -> Vec<CanonicalKey> {
        self.0.iter().map(|&g| canonical_key(g, tol)).collect()
    }

    pub fn approx_eq(&self, other: &Self, tol: Tolerance<T>) -> bool {
        approx_eq_slice(&self.0, &other.0, tol)
    }
}

/// Fingerprint of an isomorphism class.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalForm<T> {
    pub n: usize,
    pub label: TypeLabel,
    /// Canonical orbit representative; empty for the nilpotent algebra and
    /// for type `n`.
    pub gamma: GammaTuple<T>,
}

impl<T: Real> CanonicalForm<T> {
    /// Law `a·aⁿ = aᵏ + Σ γ` in tail layout (zeros below `k`).
    pub fn law(&self) -> Law<T> {
        let mut coeffs = vec![Complex::zero(); self.n - 1];
        if let TypeLabel::TypeK(k) = self.label {
            coeffs[k - 2] = Complex::new(T::one(), T::zero());
            coeffs[k - 1..].copy_from_slice(self.gamma.entries());
        }
        Law::new(coeffs)
    }

    /// The representative algebra whose generator obeys [`Self::law`].
    pub fn to_algebra(&self, tol: Tolerance<T>) -> CyclicAlgebra<T> {
        CyclicAlgebra::build(self.n, self.law().into_coefficients(), tol)
            .expect("canonical law has tail layout")
    }

    pub fn approx_eq(&self, other: &Self, tol: Tolerance<T>) -> bool {
        self.n == other.n && self.label == other.label && self.gamma.approx_eq(&other.gamma, tol)
    }
}

/// `Nilpotent` when every tail coefficient is within `eps` of zero, else the
/// smallest power with `|αₖ| > eps`.
pub fn detect_type<T: Real>(algebra: &CyclicAlgebra<T>) -> TypeLabel {
    let eps = algebra.tolerance().eps();
    algebra
        .tail()
        .iter()
        .position(|a| a.norm() > eps)
        .map_or(TypeLabel::Nilpotent, |i| TypeLabel::TypeK(i + 2))
}

/// Law obeyed by every generator whose leading coordinate is `c1`:
/// coefficient `c1^{n-j+1}·αⱼ` at each power `j >= k`, zero below `k`.
///
/// The nilpotent algebra yields the zero law.
pub fn generator_law<T: Real>(algebra: &CyclicAlgebra<T>, c1: Complex<T>) -> Result<Law<T>> {
    let tol = algebra.tolerance();
    if c1.norm() <= tol.eps() {
        return Err(Error::NotAGenerator(format!(
            "leading coordinate {c1} is within {} of zero",
            tol.eps()
        )));
    }
    let n = algebra.dim();
    let mut coeffs = vec![Complex::zero(); n - 1];
    let Some(k) = detect_type(algebra).k() else {
        return Ok(Law::new(coeffs));
    };
    // walk j downward from n so the power of c1 grows by one each step
    let mut power = c1;
    for j in (k..=n).rev() {
        coeffs[j - 2] = power * algebra.coefficient(j);
        power = power * c1;
    }
    Ok(Law::new(coeffs))
}

/// Type label and the tuple `(γₖ₊₁, …, γₙ)` reached by the principal choice
/// `c₁ = αₖ^{-1/(n-k+1)}`, before picking an orbit representative.
pub fn normalize_leading<T: Real>(algebra: &CyclicAlgebra<T>) -> (TypeLabel, GammaTuple<T>) {
    let label = detect_type(algebra);
    let Some(k) = label.k() else {
        return (label, GammaTuple::empty());
    };
    let n = algebra.dim();
    let d = n - k;
    let alpha_k = algebra.coefficient(k);
    let c1 = principal_root(alpha_k, -1, (d + 1) as u64)
        .expect("|αₖ| > eps, so the negative power exists");
    debug_assert!({
        let lead = c1.powi((d + 1) as i32) * alpha_k;
        (lead - Complex::new(T::one(), T::zero())).norm() <= T::lit(1e-6)
    });
    // γ_{k+i} = c1^{d+1-i} α_{k+i}
    let mut gamma = vec![Complex::zero(); d];
    let mut power = c1;
    for i in (1..=d).rev() {
        gamma[i - 1] = power * algebra.coefficient(k + i);
        power = power * c1;
    }
    (label, GammaTuple(gamma))
}

/// Canonical form: normalized leading coefficient, then the orbit minimum.
pub fn normalize<T: Real>(algebra: &CyclicAlgebra<T>) -> CanonicalForm<T> {
    let tol = algebra.tolerance();
    let (label, gamma) = normalize_leading(algebra);
    CanonicalForm {
        n: algebra.dim(),
        label,
        gamma: canonical_representative(&gamma, tol),
    }
}

/// Distinct members of the orbit of `g`, in order of the root index `j`;
/// the first member is `g` itself. Members within `eps` componentwise of an
/// earlier member are dropped.
pub fn orbit<T: Real>(g: &GammaTuple<T>, tol: Tolerance<T>) -> Vec<GammaTuple<T>> {
    let mut members: Vec<GammaTuple<T>> = Vec::with_capacity(g.group_order());
    for j in 0..g.group_order() {
        let candidate = g.rotate(j);
        if !members.iter().any(|m| m.approx_eq(&candidate, tol)) {
            members.push(candidate);
        }
    }
    members
}

/// Smallest orbit member under lexicographic key order; earlier members win
/// ties.
pub fn canonical_representative<T: Real>(g: &GammaTuple<T>, tol: Tolerance<T>) -> GammaTuple<T> {
    let mut best: Option<(Vec<CanonicalKey>, GammaTuple<T>)> = None;
    for member in orbit(g, tol) {
        let keys = member.keys(tol);
        let better = match &best {
            None => true,
            Some((best_keys, _)) => keys.cmp(best_keys) == Ordering::Less,
        };
        if better {
            best = Some((keys, member));
        }
    }
    best.map(|(_, m)| m).unwrap_or_else(GammaTuple::empty)
}

/// Whether `g2` lies within `eps` of some rotation of `g1`.
pub fn equivalent<T: Real>(
    g1: &GammaTuple<T>,
    g2: &GammaTuple<T>,
    tol: Tolerance<T>,
) -> Result<bool> {
    if g1.len() != g2.len() {
        return Err(Error::InvalidArgument(format!(
            "tuples of lengths {} and {} cannot be compared",
            g1.len(),
            g2.len()
        )));
    }
    Ok((0..g1.group_order()).any(|j| g1.rotate(j).approx_eq(g2, tol)))
}

/// Isomorphism by comparing canonical forms under `a`'s tolerance.
pub fn isomorphic<T: Real>(a: &CyclicAlgebra<T>, b: &CyclicAlgebra<T>) -> bool {
    a.dim() == b.dim() && normalize(a).approx_eq(&normalize(b), a.tolerance())
}

/// Isomorphism by orbit membership of the normalized tuples, without
/// choosing representatives.
pub fn isomorphic_by_orbit<T: Real>(a: &CyclicAlgebra<T>, b: &CyclicAlgebra<T>) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let (label_a, gamma_a) = normalize_leading(a);
    let (label_b, gamma_b) = normalize_leading(b);
    label_a == label_b && equivalent(&gamma_a, &gamma_b, a.tolerance()).unwrap_or(false)
}

/// Largest dimension accepted by [`family_table`].
pub const MAX_TABLE_DIMENSION: usize = 16;

/// One clause of the classification in a fixed dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `a·aⁿ = 0`.
    Nilpotent,
    /// `a·aⁿ = aⁿ`.
    Top,
    /// `a·aⁿ = aᵏ + αₖ₊₁aᵏ⁺¹ + ⋯ + αₙaⁿ` with `n - k` free parameters taken
    /// modulo the cyclic group of order `n - k + 1`.
    Parametric { k: usize, parameters: usize },
}

impl Family {
    pub fn orbit_order(&self) -> usize {
        match *self {
            Family::Parametric { parameters, .. } => parameters + 1,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTable {
    pub n: usize,
    pub families: Vec<Family>,
}

/// Classification families of dimension `n`: nilpotent, type `n`, then type
/// `k` for `k = n-1` down to `2`.
pub fn family_table(n: usize) -> Result<FamilyTable> {
    if !(2..=MAX_TABLE_DIMENSION).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "table dimension must lie in 2..={MAX_TABLE_DIMENSION}, got {n}"
        )));
    }
    let mut families = vec![Family::Nilpotent, Family::Top];
    families.extend((2..n).rev().map(|k| Family::Parametric {
        k,
        parameters: n - k,
    }));
    Ok(FamilyTable { n, families })
}

impl fmt::Display for FamilyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        writeln!(
            f,
            "dimension {n}: every cyclic Leibniz algebra is isomorphic to exactly one of"
        )?;
        for (i, family) in self.families.iter().enumerate() {
            write!(f, "  ({}) a*a^{n} = ", i + 1)?;
            match *family {
                Family::Nilpotent => writeln!(f, "0  (nilpotent)")?,
                Family::Top => writeln!(f, "a^{n}")?,
                Family::Parametric { k, parameters } => {
                    let names: Vec<String> = (k + 1..=n).map(|j| format!("p{j}")).collect();
                    write!(f, "a^{k}")?;
                    for (j, name) in (k + 1..=n).zip(&names) {
                        write!(f, " + {name}*a^{j}")?;
                    }
                    let m = parameters + 1;
                    let rotated: Vec<String> = names
                        .iter()
                        .enumerate()
                        .map(|(i, name)| match parameters - i {
                            1 => format!("w*{name}"),
                            e => format!("w^{e}*{name}"),
                        })
                        .collect();
                    if parameters == 1 {
                        writeln!(f, ",  {} in C/~,  {} ~ -{}", names[0], names[0], names[0])?;
                    } else {
                        writeln!(
                            f,
                            ",  ({}) in C^{parameters}/~,  ({}) ~ ({}) for w = e^(2*pi*i/{m})",
                            names.join(", "),
                            names.join(", "),
                            rotated.join(", ")
                        )?;
                    }
                }
            }
        }
        Ok(())
    }
}
