use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Rational, Scalar};
use crate::theory::{IndexLabel, KinematicMatrix};

/// `F(∂_t) = Σ_k c_k ∂_t^k`, real rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativePolynomial {
    /// `c_k` at index `k`, no trailing zeros.
    coefficients: Vec<Rational>,
}

impl DerivativePolynomial {
    pub fn new(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    /// Complex coefficients are rejected.
    pub fn from_scalars(c: &[Scalar]) -> Result<Self> {
        if c.iter().any(|x| !x.is_real()) {
            return Err(Error::Reduction("F(∂_t) must have real coefficients".into()));
        }
        Ok(Self::new(c.iter().map(|x| x.re.clone()).collect()))
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        self.coefficients.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree `N`; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn is_even(&self) -> bool {
        self.coefficients.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        self.coefficients.iter().rev().fold(Rational::zero(), |acc, c| acc * s + c)
    }
}

impl fmt::Display for DerivativePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let d = match k {
                0 => String::new(),
                1 => "d".to_string(),
                _ => format!("d^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&d)?;
            } else {
                write!(f, "{mag} {d}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Serialized as its text form, e.g. `"d^4 - 1"`.
impl Serialize for DerivativePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Sums of terms `c`, `d`, `d^k`, `c d^k` or `c*d^k` with rational `c`.
impl FromStr for DerivativePolynomial {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::Reduction(format!("malformed polynomial `{text}`: {m}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (k, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && k > start {
                terms.push(&compact[start..k]);
                start = k;
            }
        }
        terms.push(&compact[start..]);
        let mut coeffs: Vec<Rational> = Vec::new();
        for term in terms {
            let (sign, body) = match term.as_bytes()[0] {
                b'-' => (-Rational::one(), &term[1..]),
                b'+' => (Rational::one(), &term[1..]),
                _ => (Rational::one(), term),
            };
            let (coef, power) = match body.find('d') {
                None => (body, 0),
                Some(p) => {
                    let c = body[..p].trim_end_matches('*');
                    let rest = &body[p + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|e| e.parse::<usize>().ok())
                            .ok_or_else(|| bad(&format!("bad exponent in `{term}`")))?
                    };
                    (c, power)
                }
            };
            let c = if coef.is_empty() {
                Rational::one()
            } else {
                let s: Scalar = coef.parse().map_err(|_| bad(&format!("bad coefficient `{coef}`")))?;
                if !s.is_real() {
                    return Err(bad("coefficients must be real"));
                }
                s.re
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Rational::zero());
            }
            coeffs[power] += sign * c;
        }
        Ok(Self::new(coeffs))
    }
}

/// `Π_i = Σ_m coefficient · ξ_m`: the Ostrogradsky momentum conjugate to
/// `ξ_i = ∂_t^{i−1} φ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentumCombination {
    /// 1-based auxiliary index of the conjugate coordinate.
    pub conjugate_to: usize,
    /// `(1-based auxiliary index, coefficient)`
    pub terms: Vec<(usize, Scalar)>,
}

/// Symbolic elimination of the auxiliaries: for `φ ∝ e^{st}` the first-order
/// system `(2K s − M) ξ = 0` must reproduce `F(s) φ = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EliminationCheck {
    /// `det(2K s − M)` rescaled to the leading coefficient of `F`.
    pub determinant: DerivativePolynomial,
    pub determinant_matches: bool,
    /// `(2K s − M)(1, s, …, s^{N−1})ᵀ = F(s) w` with a constant `w`.
    pub residual_matches: bool,
    pub residual_direction: Vec<Scalar>,
}

impl EliminationCheck {
    pub fn recovers_f(&self) -> bool {
        self.determinant_matches && self.residual_matches
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionResult {
    pub polynomial: DerivativePolynomial,
    /// `ξ_n = ∂_t^{n−1} φ`, `n = 1 … N`.
    pub auxiliary_fields: Vec<String>,
    pub first_order_k0: KinematicMatrix,
    /// `H = ½ ξᵀ M ξ`
    pub hamiltonian: ExactMatrix,
    pub momentum_combinations: Vec<MomentumCombination>,
    pub elimination: EliminationCheck,
}

fn auxiliary_name(m: usize) -> String {
    match m {
        0 => "phi".to_string(),
        1 => "d phi".to_string(),
        _ => format!("d^{m} phi"),
    }
}

/// Rewrites `L ∼ −½ φ F(∂_t) φ` with auxiliaries `ξ_n = ∂_t^{n−1} φ` so that
/// it is linear in first time derivatives.
///
/// Up to total derivatives `L = ½ Σ_{k=0}^{n} a_k (∂_t^k φ)²` with `n = N/2`
/// and `a_k = (−1)^{k+1} c_{2k}`. The canonical pairs are `q_i = ξ_i` and
/// `p_i = Σ_j (−1)^j a_{i+j} ξ_{i+2j+1}` for `i = 1 … n`, and
/// `L = ½ Σ (p q̇ − ṗ q) − H(q, p)`.
pub fn ostrogradsky_reduce(f: &DerivativePolynomial) -> Result<ReductionResult> {
    let big_n = f.degree();
    if f.coefficients().is_empty() || big_n < 2 {
        return Err(Error::Reduction(format!("F = {f} has degree {big_n}; at least 2 is needed")));
    }
    if big_n % 2 == 1 {
        return Err(Error::Reduction(format!(
            "F = {f} has odd degree {big_n}; reversible motion needs an even F"
        )));
    }
    if !f.is_even() {
        return Err(Error::Reduction(format!("F = {f} is not an even function of ∂_t")));
    }
    let n = big_n / 2;
    let a: Vec<Rational> = (0..=n)
        .map(|k| {
            let c = f.coefficient(2 * k);
            if k % 2 == 0 {
                -c
            } else {
                c
            }
        })
        .collect();

    // T maps ξ (0-based m ↔ ∂^m φ) to X = (q_1 … q_n, p_1 … p_n)
    let mut t = ExactMatrix::zeros(big_n, big_n);
    let mut momentum_combinations = Vec::with_capacity(n);
    for i in 1..=n {
        t.set(i - 1, i - 1, Scalar::one());
        let mut terms = Vec::new();
        let mut j = 0;
        while i + j <= n {
            let m = i + 2 * j; // ∂^{i+2j} φ = ξ_{i+2j+1}
            if m < big_n {
                let c = if j % 2 == 0 { a[i + j].clone() } else { -a[i + j].clone() };
                if !c.is_zero() {
                    t.set(n + i - 1, m, Scalar::real(c.clone()));
                    terms.push((m + 1, Scalar::real(c)));
                }
            }
            j += 1;
        }
        momentum_combinations.push(MomentumCombination { conjugate_to: i, terms });
    }

    let half = Scalar::from_ratio(1, 2);
    let mut kq = ExactMatrix::zeros(big_n, big_n);
    let mut mq = ExactMatrix::zeros(big_n, big_n);
    for i in 0..n {
        kq.set(i, n + i, -&half);
        kq.set(n + i, i, half.clone());
    }
    for i in 0..n.saturating_sub(1) {
        // p_i q_{i+1}
        mq.set(n + i, i + 1, Scalar::one());
        mq.set(i + 1, n + i, Scalar::one());
    }
    let top = a[n].clone();
    if top.is_zero() {
        return Err(Error::Reduction("leading coefficient vanishes".into()));
    }
    mq.set(2 * n - 1, 2 * n - 1, Scalar::real(Rational::one() / top));
    for k in 0..n {
        mq.set(k, k, Scalar::real(-a[k].clone()));
    }
    let tt = t.transpose();
    let k_xi = &(&tt * &kq) * &t;
    let m_xi = &(&tt * &mq) * &t;

    let index_map = (0..big_n).map(|m| IndexLabel { field: 0, flavor: 0, copy: 0, component: m }).collect();
    let first_order_k0 = KinematicMatrix::new(k_xi.clone(), index_map)?;
    let elimination = eliminate(f, &k_xi, &m_xi);
    Ok(ReductionResult {
        polynomial: f.clone(),
        auxiliary_fields: (0..big_n).map(auxiliary_name).collect(),
        first_order_k0,
        hamiltonian: m_xi,
        momentum_combinations,
        elimination,
    })
}

fn operator_at(k: &ExactMatrix, m: &ExactMatrix, s: &Rational) -> ExactMatrix {
    &k.scale_rational(&(s * Rational::from_integer(2.into()))) - m
}

fn eliminate(f: &DerivativePolynomial, k: &ExactMatrix, m: &ExactMatrix) -> EliminationCheck {
    let big_n = f.degree();
    // both sides have degree ≤ N in s, so N+1 sample points decide equality
    let samples: Vec<Rational> = (0..=big_n as i64).map(|x| Rational::from_integer(x.into())).collect();
    let dets: Vec<Rational> = samples
        .iter()
        .map(|s| operator_at(k, m, s).determinant().map(|d| d.re).unwrap_or_else(|_| Rational::zero()))
        .collect();
    let determinant = interpolate(&samples, &dets);
    let lead = determinant.coefficient(big_n);
    let determinant = if lead.is_zero() {
        determinant
    } else {
        let scale = f.coefficient(big_n) / lead;
        DerivativePolynomial::new(determinant.coefficients().iter().map(|c| c * &scale).collect())
    };
    let determinant_matches = determinant == *f;

    let residual = |s: &Rational| {
        let mut v = Vec::with_capacity(big_n);
        let mut p = Rational::one();
        for _ in 0..big_n {
            v.push(Scalar::real(p.clone()));
            p *= s;
        }
        operator_at(k, m, s).mul_vec(&v)
    };
    // w from a point where F does not vanish
    let probe = (1..)
        .map(|x: i64| Rational::new(x.into(), 7.into()))
        .find(|s| !f.eval(s).is_zero())
        .expect("nonzero polynomial");
    let fp = Scalar::real(f.eval(&probe));
    let inv = fp.inv().expect("nonzero");
    let w: Vec<Scalar> = residual(&probe).iter().map(|x| x * &inv).collect();
    let residual_matches = samples.iter().all(|s| {
        let fs = Scalar::real(f.eval(s));
        residual(s).iter().zip(&w).all(|(r, wi)| *r == &fs * wi)
    });
    EliminationCheck { determinant, determinant_matches, residual_matches, residual_direction: w }
}

/// Lagrange interpolation through `(x_i, y_i)`.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> DerivativePolynomial {
    let n = xs.len();
    let mut out = vec![Rational::zero(); n];
    for i in 0..n {
        // basis polynomial ℓ_i, built by multiplying (x − x_j)
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &xs[j];
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let scale = &ys[i] / denom;
        for (d, c) in basis.iter().enumerate() {
            out[d] += c * &scale;
        }
    }
    DerivativePolynomial::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> DerivativePolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(poly("d^2 + 1"), DerivativePolynomial::from_ints(&[1, 0, 1]));
        assert_eq!(poly("d^4-1"), DerivativePolynomial::from_ints(&[-1, 0, 0, 0, 1]));
        assert_eq!(poly("2*d^2 - 3/4"), DerivativePolynomial::new(vec![crate::exact::ratio(-3, 4), crate::exact::int(0), crate::exact::int(2)]));
        assert_eq!(poly("d^4 - 1").to_string(), "d^4 - 1");
        assert_eq!(poly("-d^2 + 1/2").to_string(), "-d^2 + 1/2");
        assert!("d^x".parse::<DerivativePolynomial>().is_err());
        assert!("d^2 + i".parse::<DerivativePolynomial>().is_err());
    }

    #[test]
    fn klein_gordon_in_time() {
        let r = ostrogradsky_reduce(&poly("d^2 + 1")).unwrap();
        assert_eq!(r.auxiliary_fields, vec!["phi", "d phi"]);
        assert_eq!(
            r.first_order_k0.matrix,
            ExactMatrix::from_strs(&[["0", "-1/2"], ["1/2", "0"]])
        );
        assert_eq!(r.hamiltonian, ExactMatrix::identity(2));
        assert!(r.elimination.recovers_f());
        assert_eq!(r.momentum_combinations[0].terms, vec![(2, Scalar::one())]);
    }

    #[test]
    fn quartic() {
        let r = ostrogradsky_reduce(&poly("d^4 - 1")).unwrap();
        assert_eq!(r.auxiliary_fields.len(), 4);
        assert!(r.first_order_k0.matrix.is_antisymmetric());
        assert!(r.elimination.recovers_f(), "{:?}", r.elimination);
    }

    #[test]
    fn rejections() {
        assert!(ostrogradsky_reduce(&poly("d^3")).is_err());
        assert!(ostrogradsky_reduce(&poly("d^2 + d")).is_err());
        assert!(ostrogradsky_reduce(&poly("5")).is_err());
        assert!(DerivativePolynomial::from_scalars(&[Scalar::i()]).is_err());
    }
}
