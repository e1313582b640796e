use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Rational, Scalar};

/// Components of `ψ`.
pub const PSI_LAYOUT: [&str; 5] = ["phi", "d_t phi", "d_x phi", "d_y phi", "d_z phi"];
/// Components of `ψ̄`; the gradient entries flip sign.
pub const PSI_BAR_LAYOUT: [&str; 5] = ["phi", "d_t phi", "-d_x phi", "-d_y phi", "-d_z phi"];

/// Diagonal metric `g = diag(g₀, g₁, g₂, g₃)`, written as a sign string such
/// as `+---`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Metric(pub [i8; 4]);

impl Metric {
    pub const MOSTLY_MINUS: Metric = Metric([1, -1, -1, -1]);
    pub const MOSTLY_PLUS: Metric = Metric([-1, 1, 1, 1]);

    pub fn g(&self, mu: usize, nu: usize) -> i64 {
        if mu == nu {
            self.0[mu] as i64
        } else {
            0
        }
    }

    pub fn dot(&self, a: &[Rational; 4], b: &[Rational; 4]) -> Rational {
        (0..4).map(|m| &a[m] * &b[m] * Rational::from_integer(self.0[m].into())).sum()
    }
}

impl Default for Metric {
    fn default() -> Self {
        Metric::MOSTLY_MINUS
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.0 {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs: Vec<i8> = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(Error::Precondition(format!("metric `{s}`: use four of `+`/`-`"))),
            })
            .collect::<Result<_>>()?;
        let arr: [i8; 4] =
            signs.try_into().map_err(|_| Error::Precondition(format!("metric `{s}` needs four signs")))?;
        Ok(Metric(arr))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaSet {
    pub betas: [ExactMatrix; 4],
    pub metric: Metric,
    pub mass: Scalar,
}

impl BetaSet {
    pub fn beta(&self, mu: usize) -> &ExactMatrix {
        &self.betas[mu]
    }

    pub fn with_metric(mut self, metric: Metric) -> Self {
        self.metric = metric;
        self
    }

    /// `β·k = Σ_μ k^μ β_μ`
    pub fn contract(&self, k: &[Rational; 4]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(5, 5);
        for (mu, km) in k.iter().enumerate() {
            out = &out + &self.betas[mu].scale_rational(km);
        }
        out
    }
}

/// The spin-0 Duffin-Kemmer matrices on `ψ = (φ, φ̇, ∂_xφ, ∂_yφ, ∂_zφ)`:
/// `β₀` couples `φ` and `φ̇` by `±i`, `β_a` couples `φ` and `∂_aφ` by `−i`.
pub fn duffin_kemmer_construct(mass: Rational) -> Result<BetaSet> {
    if !mass.is_positive() {
        return Err(Error::Precondition(format!("mass {mass} must be positive")));
    }
    let i = Scalar::i();
    let mut b0 = ExactMatrix::zeros(5, 5);
    b0.set(0, 1, i.clone());
    b0.set(1, 0, -&i);
    let spatial = |c: usize| {
        let mut b = ExactMatrix::zeros(5, 5);
        b.set(0, c, -&i);
        b.set(c, 0, -&i);
        b
    };
    Ok(BetaSet { betas: [b0, spatial(2), spatial(3), spatial(4)], metric: Metric::default(), mass: Scalar::real(mass) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleResult {
    pub mu: usize,
    pub nu: usize,
    pub lambda: usize,
    pub holds: bool,
}

/// The trilinear relations in the form they are usually quoted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrintedRelation {
    /// `β_μ³ = β_μ`
    Cube,
    /// `β_μ β_ν β_μ = β_μ`, `μ ≠ ν`
    Sandwich,
    /// `β_μ β_ν² + β_ν² β_μ = β_μ`, `μ ≠ ν`
    SquareAnticommutator,
    /// `β_μ β_ν β_λ + β_λ β_ν β_μ = 0`, `μ, ν, λ` pairwise distinct
    DistinctTriple,
}

impl fmt::Display for PrintedRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrintedRelation::Cube => "b_mu^3 = b_mu",
            PrintedRelation::Sandwich => "b_mu b_nu b_mu = b_mu",
            PrintedRelation::SquareAnticommutator => "b_mu b_nu^2 + b_nu^2 b_mu = b_mu",
            PrintedRelation::DistinctTriple => "b_mu b_nu b_la + b_la b_nu b_mu = 0",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrintedRelationResult {
    pub relation: PrintedRelation,
    pub indices: Vec<usize>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DkpReport {
    pub metric: Metric,
    /// `β_μβ_νβ_λ + β_λβ_νβ_μ = g_{μν}β_λ + g_{λν}β_μ` for every triple.
    pub standard: Vec<TripleResult>,
    pub printed: Vec<PrintedRelationResult>,
}

impl DkpReport {
    pub fn standard_passed(&self) -> usize {
        self.standard.iter().filter(|t| t.holds).count()
    }

    pub fn standard_holds(&self) -> bool {
        self.standard.iter().all(|t| t.holds)
    }

    pub fn printed_failures(&self) -> impl Iterator<Item = &PrintedRelationResult> {
        self.printed.iter().filter(|r| !r.holds)
    }
}

pub fn verify_dkp_algebra(betas: &BetaSet) -> DkpReport {
    let b = &betas.betas;
    let g = |m, n| Scalar::from_int(betas.metric.g(m, n));
    let mut standard = Vec::with_capacity(64);
    for mu in 0..4 {
        for nu in 0..4 {
            for lambda in 0..4 {
                let lhs = &(&(&b[mu] * &b[nu]) * &b[lambda]) + &(&(&b[lambda] * &b[nu]) * &b[mu]);
                let rhs = &b[lambda].scale(&g(mu, nu)) + &b[mu].scale(&g(lambda, nu));
                standard.push(TripleResult { mu, nu, lambda, holds: lhs == rhs });
            }
        }
    }
    let mut printed = Vec::new();
    for mu in 0..4 {
        let cube = &(&b[mu] * &b[mu]) * &b[mu];
        printed.push(PrintedRelationResult { relation: PrintedRelation::Cube, indices: vec![mu], holds: cube == b[mu] });
    }
    for mu in 0..4 {
        for nu in (0..4).filter(|&nu| nu != mu) {
            let s = &(&b[mu] * &b[nu]) * &b[mu];
            printed.push(PrintedRelationResult { relation: PrintedRelation::Sandwich, indices: vec![mu, nu], holds: s == b[mu] });
        }
    }
    for mu in 0..4 {
        for nu in (0..4).filter(|&nu| nu != mu) {
            let sq = &b[nu] * &b[nu];
            let s = &(&b[mu] * &sq) + &(&sq * &b[mu]);
            printed.push(PrintedRelationResult {
                relation: PrintedRelation::SquareAnticommutator,
                indices: vec![mu, nu],
                holds: s == b[mu],
            });
        }
    }
    for mu in 0..4 {
        for nu in (0..4).filter(|&nu| nu != mu) {
            for lambda in (0..4).filter(|&l| l != mu && l != nu) {
                let s = &(&(&b[mu] * &b[nu]) * &b[lambda]) + &(&(&b[lambda] * &b[nu]) * &b[mu]);
                printed.push(PrintedRelationResult {
                    relation: PrintedRelation::DistinctTriple,
                    indices: vec![mu, nu, lambda],
                    holds: s.is_zero(),
                });
            }
        }
    }
    DkpReport { metric: betas.metric, standard, printed }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalPolynomialCheck {
    pub k: [String; 4],
    pub k_squared: String,
    pub holds: bool,
}

/// `(β·k)³ = (k·k)(β·k)` with `k·k` taken in the set's metric.
pub fn dkp_minimal_polynomial_check(betas: &BetaSet, k: &[Rational; 4]) -> MinimalPolynomialCheck {
    let bk = betas.contract(k);
    let kk = betas.metric.dot(k, k);
    let cube = &(&bk * &bk) * &bk;
    let holds = cube == bk.scale_rational(&kk);
    MinimalPolynomialCheck { k: k.clone().map(|x| x.to_string()), k_squared: kk.to_string(), holds }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::theory::{KinematicMatrix, Statistics};

    fn betas() -> BetaSet {
        duffin_kemmer_construct(int(1)).unwrap()
    }

    #[test]
    fn printed_entries() {
        let b = betas();
        assert_eq!(b.beta(0).get(0, 1), &Scalar::i());
        assert_eq!(b.beta(0).get(1, 0), &-Scalar::i());
        assert_eq!(b.beta(1).get(0, 2), &-Scalar::i());
        assert_eq!(b.beta(1).get(2, 0), &-Scalar::i());
        assert!(b.beta(0).is_antisymmetric());
        for m in &b.betas {
            assert!(m.is_imaginary());
        }
        assert!(duffin_kemmer_construct(int(0)).is_err());
    }

    #[test]
    fn beta0_split() {
        let k = KinematicMatrix::bare(betas().beta(0).clone()).unwrap();
        let s = crate::invariance::constraint_split(&k, Statistics::Bose);
        assert_eq!(s.canonical_indices, vec![0, 1]);
        assert_eq!(s.constraint_indices, vec![2, 3, 4]);
        assert_eq!(s.nonsingular_block, ExactMatrix::from_strs(&[["0", "i"], ["-i", "0"]]));
    }

    #[test]
    fn standard_relation_depends_on_metric() {
        assert_eq!(verify_dkp_algebra(&betas()).standard_passed(), 64);
        let r = verify_dkp_algebra(&betas().with_metric(Metric::MOSTLY_PLUS));
        assert!(!r.standard_holds());
    }

    #[test]
    fn spatial_cube_mismatch() {
        let r = verify_dkp_algebra(&betas());
        let cubes: Vec<bool> =
            r.printed.iter().filter(|p| p.relation == PrintedRelation::Cube).map(|p| p.holds).collect();
        assert_eq!(cubes, vec![true, false, false, false]);
    }

    #[test]
    fn minimal_polynomial() {
        let b = betas();
        let k = |a: [i64; 4]| a.map(int);
        let c = dkp_minimal_polynomial_check(&b, &k([0, 1, 0, 0]));
        assert!(c.holds);
        assert_eq!(c.k_squared, "-1");
        assert!(dkp_minimal_polynomial_check(&b, &k([2, 1, 1, 1])).holds);
        assert!(!dkp_minimal_polynomial_check(&b.with_metric(Metric::MOSTLY_PLUS), &k([0, 1, 0, 0])).holds);
    }

    #[test]
    fn metric_parse() {
        assert_eq!("+---".parse::<Metric>().unwrap(), Metric::MOSTLY_MINUS);
        assert_eq!(Metric::MOSTLY_PLUS.to_string(), "-+++");
        assert!("++".parse::<Metric>().is_err());
    }
}
