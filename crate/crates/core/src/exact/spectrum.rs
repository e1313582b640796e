//! Eigenvalue magnitudes of antisymmetric matrices.
//!
//! A real antisymmetric `A` has eigenvalues `±iμ` (plus zeros). Writing the
//! characteristic polynomial as `λ^z · q(λ²)` and substituting `y = −λ²`
//! gives a polynomial whose roots are exactly the `μ²`. Those roots are
//! isolated with Sturm sequences over `Q`; a root is promoted to an exact
//! rational when the simplest rational inside its isolating interval is a
//! root. Only irrational `μ²` fall back to a floating approximation, and even
//! then `μ ≠ 0` is certified because the zero roots were stripped exactly.

use num_traits::{One, Signed, Zero};

use super::matrix::ExactMatrix;
use super::poly::{simplest_rational_between, RationalPoly};
use super::scalar::{rational_sqrt, rational_to_f64, Rational, Scalar};
use crate::error::{Error, Result};

/// Width below which floating approximations are reported.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum Magnitude {
    /// `μ` is rational.
    Exact(Rational),
    /// `μ = √r` with rational `r` that is not a perfect square.
    SqrtOf(Rational),
    /// `μ²` is irrational; it lies in `[lo, hi]` and `μ ≈ approx`.
    Approx { lo: Rational, hi: Rational, approx: f64 },
}

impl Magnitude {
    pub fn approx(&self) -> f64 {
        match self {
            Magnitude::Exact(r) => rational_to_f64(r),
            Magnitude::SqrtOf(r) => rational_to_f64(r).sqrt(),
            Magnitude::Approx { approx, .. } => *approx,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Magnitude::Exact(r) => Some(r),
            _ => None,
        }
    }

    /// `μ²` when it is rational.
    pub fn squared(&self) -> Option<Rational> {
        match self {
            Magnitude::Exact(r) => Some(r * r),
            Magnitude::SqrtOf(r) => Some(r.clone()),
            Magnitude::Approx { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub magnitude: Magnitude,
    /// Number of `±iμ` pairs with this magnitude.
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenSplit {
    /// Sorted by increasing magnitude. Every `μ` is certified nonzero.
    pub pairs: Vec<EigenPair>,
    pub zero_multiplicity: usize,
    /// The input was `i·A` with `A` real antisymmetric; its eigenvalues are
    /// then the real numbers `∓μ` rather than `±iμ`.
    pub imaginary_input: bool,
    /// Squarefree factors of the polynomial in `y = μ²`, with multiplicities.
    pub squared_factors: Vec<(RationalPoly, usize)>,
}

impl EigenSplit {
    pub fn pair_count(&self) -> usize {
        self.pairs.iter().map(|p| p.multiplicity).sum()
    }

    pub fn is_exact(&self) -> bool {
        self.pairs.iter().all(|p| matches!(p.magnitude, Magnitude::Exact(_)))
    }

    /// `λ^z · Π (λ² + μ²)^m` rebuilt from the factors, for comparison with the
    /// characteristic polynomial of the real antisymmetric part.
    pub fn reconstruct_charpoly(&self) -> RationalPoly {
        let mut p = RationalPoly::x().pow(self.zero_multiplicity);
        for (f, m) in &self.squared_factors {
            // f(y) with y = −λ², made monic in λ
            let mut coeffs = vec![Rational::zero(); 2 * f.coeffs().len()];
            for (k, c) in f.coeffs().iter().enumerate() {
                coeffs[2 * k] = if k % 2 == 0 { c.clone() } else { -c.clone() };
            }
            p = p.mul(&RationalPoly::new(coeffs).monic().pow(*m));
        }
        p
    }
}

/// Eigenvalue magnitudes of a real (or purely imaginary) antisymmetric matrix.
pub fn antisym_eigensplit(m: &ExactMatrix) -> Result<EigenSplit> {
    m.require_square("antisym_eigensplit")?;
    if !m.is_antisymmetric() {
        return Err(Error::Precondition("antisym_eigensplit needs an antisymmetric matrix".into()));
    }
    let (real, imaginary_input) = if m.is_real() {
        (m.clone(), false)
    } else if m.is_imaginary() {
        (m.scale(&-Scalar::i()), true)
    } else {
        return Err(Error::Precondition(
            "antisym_eigensplit needs a real or purely imaginary matrix".into(),
        ));
    };
    let cp = real.charpoly()?;
    let cp = RationalPoly::new(cp.iter().map(|c| c.re.clone()).collect());
    let zero_multiplicity = cp.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
    let stripped = &cp.coeffs()[zero_multiplicity..];
    // y = −λ²
    let s = RationalPoly::new(
        stripped
            .iter()
            .step_by(2)
            .enumerate()
            .map(|(k, c)| if k % 2 == 0 { c.clone() } else { -c.clone() })
            .collect(),
    );
    let squared_factors = s.squarefree_decomposition();
    let mut pairs = Vec::new();
    for (f, mult) in &squared_factors {
        for magnitude in positive_roots_as_magnitudes(f) {
            pairs.push(EigenPair { magnitude, multiplicity: *mult });
        }
    }
    pairs.sort_by(|a, b| a.magnitude.approx().total_cmp(&b.magnitude.approx()));
    Ok(EigenSplit { pairs, zero_multiplicity, imaginary_input, squared_factors })
}

fn positive_roots_as_magnitudes(f: &RationalPoly) -> Vec<Magnitude> {
    let d = f.denominator_lcm() * f.leading().denom();
    let d = Rational::from_integer(d);
    // distinct rationals with denominators <= D are at least 1/D² apart
    let rational_width = Rational::one() / (&d * &d) / Rational::from_integer(2.into());
    let float_width = Rational::new(1.into(), 10u64.pow(14).into());
    let width = rational_width.min(float_width);
    let bound = f.root_bound();
    f.isolate_roots(&Rational::zero(), &bound, &width)
        .into_iter()
        .map(|(lo, hi)| {
            let candidate = simplest_rational_between(&lo, &hi);
            if f.eval(&candidate).is_zero() {
                match rational_sqrt(&candidate) {
                    Some(mu) => Magnitude::Exact(mu),
                    None => Magnitude::SqrtOf(candidate),
                }
            } else {
                let approx = ((rational_to_f64(&lo) + rational_to_f64(&hi)) / 2.0).sqrt();
                debug_assert!(lo.is_positive() || lo.is_zero());
                Magnitude::Approx { lo, hi, approx }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    fn exact_pairs(s: &EigenSplit) -> Vec<(Rational, usize)> {
        s.pairs.iter().map(|p| (p.magnitude.exact().unwrap().clone(), p.multiplicity)).collect()
    }

    #[test]
    fn unit_rotation_block() {
        let s = antisym_eigensplit(&ExactMatrix::from_ints(&[[0, 1], [-1, 0]])).unwrap();
        assert_eq!(exact_pairs(&s), vec![(int(1), 1)]);
        assert_eq!(s.zero_multiplicity, 0);
    }

    #[test]
    fn scaled_block() {
        let s = antisym_eigensplit(&ExactMatrix::from_ints(&[[0, 2], [-2, 0]])).unwrap();
        assert_eq!(exact_pairs(&s), vec![(int(2), 1)]);
    }

    #[test]
    fn block_diagonal_one_and_three() {
        // characteristic polynomial (λ²+1)(λ²+9) expanded by hand: λ⁴ + 10λ² + 9
        let m = ExactMatrix::block_diag(&[
            ExactMatrix::from_ints(&[[0, 1], [-1, 0]]),
            ExactMatrix::from_ints(&[[0, 3], [-3, 0]]),
        ]);
        let cp = m.charpoly().unwrap();
        let expected: Vec<Scalar> = [9, 0, 10, 0, 1].iter().map(|&x| Scalar::from_int(x)).collect();
        assert_eq!(cp, expected);
        let s = antisym_eigensplit(&m).unwrap();
        assert_eq!(exact_pairs(&s), vec![(int(1), 1), (int(3), 1)]);
    }

    #[test]
    fn repeated_and_zero_eigenvalues() {
        let r = ExactMatrix::from_ints(&[[0, 1], [-1, 0]]);
        let m = ExactMatrix::block_diag(&[r.clone(), r, ExactMatrix::zeros(1, 1)]);
        let s = antisym_eigensplit(&m).unwrap();
        assert_eq!(exact_pairs(&s), vec![(int(1), 2)]);
        assert_eq!(s.zero_multiplicity, 1);
    }

    #[test]
    fn irrational_magnitude_is_flagged() {
        // eigenvalues 0, ±i√2
        let m = ExactMatrix::from_ints(&[[0, 1, 1], [-1, 0, 0], [-1, 0, 0]]);
        let s = antisym_eigensplit(&m).unwrap();
        assert_eq!(s.pairs.len(), 1);
        assert_eq!(s.pairs[0].magnitude, Magnitude::SqrtOf(int(2)));
        assert_eq!(s.zero_multiplicity, 1);
    }

    #[test]
    fn imaginary_input_is_accepted() {
        let m = ExactMatrix::from_strs(&[["0", "i"], ["-i", "0"]]);
        let s = antisym_eigensplit(&m).unwrap();
        assert!(s.imaginary_input);
        assert_eq!(exact_pairs(&s), vec![(int(1), 1)]);
    }

    #[test]
    fn rejects_non_antisymmetric() {
        let m = ExactMatrix::from_ints(&[[0, 1], [1, 0]]);
        assert!(matches!(antisym_eigensplit(&m), Err(Error::Precondition(_))));
        let mixed = ExactMatrix::from_strs(&[["0", "1+i"], ["-1-i", "0"]]);
        assert!(antisym_eigensplit(&mixed).is_err());
    }
}
