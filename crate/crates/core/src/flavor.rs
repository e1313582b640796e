//! Flavor-antisymmetrized kinematic terms: detection, diagonalization of the
//! flavor structure, the opposite-sign sectors and the negative-norm states
//! they carry, and the Kirchoff lint on mode expansions.

use std::collections::BTreeMap;

use nalgebra::{Complex, DMatrix};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{antisym_eigensplit, rational_sqrt, ExactMatrix, Magnitude, Scalar, SymmetryClass, Vector};
use crate::fock::{gram_matrix, ModeExpansion, OperatorKind, OperatorWord, RelationTable};
use crate::quantizer::BracketType;
use crate::su2::SpinLabel;
use crate::theory::{IndexLabel, KinematicMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlavorAntisymmetry {
    pub is_flavor_antisymmetric: bool,
    /// `K⁰_{1r,2s}`
    pub block: ExactMatrix,
    /// `K⁰_{1r,1s}` and `K⁰_{2r,2s}` both vanish and `K⁰_{2r,1s} = K⁰_{1r,2s}`.
    pub is_flavor_symmetric_offdiagonal: bool,
    /// `K⁰_{1r,2s}` and `K⁰_{2r,1s}` vanish.
    pub is_flavor_diagonal: bool,
}

/// Index map for a matrix whose first half carries flavor 1 and second half
/// flavor 2.
pub fn flavor_pair(matrix: ExactMatrix) -> Result<KinematicMatrix> {
    let n = matrix.rows();
    if n % 2 != 0 {
        return Err(Error::Dimension { op: "flavor_pair", detail: format!("odd dimension {n}") });
    }
    let map = (0..n)
        .map(|i| IndexLabel { field: 0, flavor: i / (n / 2), copy: 0, component: i % (n / 2) })
        .collect();
    KinematicMatrix::new(matrix, map)
}

/// Splits `K⁰` by its two-valued flavor label.
pub fn detect_flavor_antisymmetry(k: &KinematicMatrix) -> Result<FlavorAntisymmetry> {
    let max = k.index_map.iter().map(|l| l.flavor).max().unwrap_or(0);
    if max != 1 {
        return Err(Error::Precondition(format!(
            "flavor analysis supports exactly two flavors, found {}",
            max + 1
        )));
    }
    let key = |l: &IndexLabel| (l.field, l.copy, l.component);
    let first: Vec<usize> = (0..k.dim()).filter(|&i| k.index_map[i].flavor == 0).collect();
    let mut second = Vec::with_capacity(first.len());
    for &i in &first {
        let partner = (0..k.dim())
            .find(|&j| k.index_map[j].flavor == 1 && key(&k.index_map[j]) == key(&k.index_map[i]))
            .ok_or_else(|| Error::Precondition("flavor labels do not pair up".into()))?;
        second.push(partner);
    }
    if second.len() * 2 != k.dim() {
        return Err(Error::Precondition("flavor labels do not pair up".into()));
    }
    let m = &k.matrix;
    let k11 = m.submatrix(&first, &first);
    let k22 = m.submatrix(&second, &second);
    let k12 = m.submatrix(&first, &second);
    let k21 = m.submatrix(&second, &first);
    let diagonal_blocks_vanish = k11.is_zero() && k22.is_zero();
    Ok(FlavorAntisymmetry {
        is_flavor_antisymmetric: diagonal_blocks_vanish && k21 == -&k12 && !k12.is_zero(),
        is_flavor_symmetric_offdiagonal: diagonal_blocks_vanish && k21 == k12 && !k12.is_zero(),
        is_flavor_diagonal: k12.is_zero() && k21.is_zero(),
        block: k12,
    })
}

/// Columns `S₀` with `S = S₀ · diag(N)^{−1/2}` unitary, `S₀† S₀ = diag(N)` and
/// `Λ S₀ = S₀ D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactDiagonalization {
    pub columns: ExactMatrix,
    pub norms: Vec<Scalar>,
    pub diagonal: ExactMatrix,
}

impl ExactDiagonalization {
    /// The unitary `S` itself, when every column norm is a rational square.
    pub fn unitary(&self) -> Option<ExactMatrix> {
        let mut s = self.columns.clone();
        for (c, n) in self.norms.iter().enumerate() {
            let inv = Scalar::real(rational_sqrt(&n.re)?).inv()?;
            for r in 0..s.rows() {
                let v = s.get(r, c) * &inv;
                s.set(r, c, v);
            }
        }
        Some(s)
    }

    /// `S⁻¹ = diag(N)⁻¹ S₀†` applied to `Λ S₀`.
    pub fn verify(&self, lambda: &ExactMatrix) -> bool {
        let gram = &self.columns.adjoint() * &self.columns;
        gram == ExactMatrix::diagonal(&self.norms) && (lambda * &self.columns) == (&self.columns * &self.diagonal)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericDiagonalization {
    /// Unitary columns, `(re, im)`.
    pub columns: Vec<Vec<(f64, f64)>>,
    pub eigenvalues: Vec<(f64, f64)>,
    /// `max |Λ S − S D|`
    pub residual: f64,
}

/// One eigenvalue of `Λ`; the sign of its nonzero part is always exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlavorEigenvalue {
    /// Exact value when rational.
    pub value: Option<Scalar>,
    /// `μ²`, when rational.
    pub magnitude_squared: Option<Scalar>,
    /// Sign of the imaginary part (of the real part for imaginary `Λ`); 0
    /// for a zero eigenvalue.
    pub sign: i8,
    pub approx: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlavorDiagonalization {
    /// Ascending by imaginary part, then real part.
    pub eigenvalues: Vec<FlavorEigenvalue>,
    pub exact: Option<ExactDiagonalization>,
    pub numeric: Option<NumericDiagonalization>,
    /// `Λ` had imaginary entries; its eigenvalues are then real.
    pub imaginary_input: bool,
}

impl FlavorDiagonalization {
    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }
}

/// Diagonalizes an antisymmetric `Λ` (real, or `i` times real) by a unitary
/// change of basis. Columns of `S` are ordered by ascending imaginary part of
/// the eigenvalue, each phased so its first nonzero entry is real positive.
pub fn diagonalize_flavor(lambda: &ExactMatrix) -> Result<FlavorDiagonalization> {
    if !lambda.is_square() || !lambda.is_antisymmetric() {
        return Err(Error::Precondition("diagonalize_flavor needs a square antisymmetric matrix".into()));
    }
    let split = antisym_eigensplit(lambda)?;
    let imaginary_input = split.imaginary_input;
    // eigenvalue ±iμ for real input, ±μ for i·(real) input; in both cases
    // the (Im, Re) order puts the most negative first
    let mut eigenvalues = Vec::new();
    let make = |sign: i8, m: &Magnitude| {
        let value = m.exact().map(|mu| {
            let v = Scalar::real(mu.clone());
            let v = if imaginary_input { v } else { v.times_i() };
            if sign < 0 { -v } else { v }
        });
        FlavorEigenvalue {
            value,
            magnitude_squared: m.squared().map(Scalar::real),
            sign,
            approx: format!("{:.12}", sign as f64 * m.approx()),
        }
    };
    let mut negatives = Vec::new();
    let mut positives = Vec::new();
    for p in &split.pairs {
        for _ in 0..p.multiplicity {
            negatives.push(make(-1, &p.magnitude));
            positives.push(make(1, &p.magnitude));
        }
    }
    // pairs are sorted by increasing μ: −iμ_max comes first
    negatives.reverse();
    let zero = FlavorEigenvalue {
        value: Some(Scalar::zero()),
        magnitude_squared: Some(Scalar::zero()),
        sign: 0,
        approx: format!("{:.12}", 0.0),
    };
    eigenvalues.extend(negatives);
    eigenvalues.extend(std::iter::repeat_n(zero, split.zero_multiplicity));
    eigenvalues.extend(positives);

    if split.is_exact() {
        let exact = exact_diagonalization(lambda, &eigenvalues)?;
        Ok(FlavorDiagonalization { eigenvalues, exact: Some(exact), numeric: None, imaginary_input })
    } else {
        let numeric = numeric_diagonalization(lambda, imaginary_input);
        Ok(FlavorDiagonalization { eigenvalues, exact: None, numeric: Some(numeric), imaginary_input })
    }
}

fn inner(u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter().zip(v).fold(Scalar::zero(), |acc, (a, b)| acc + &(&a.conj() * b))
}

fn exact_diagonalization(lambda: &ExactMatrix, eigenvalues: &[FlavorEigenvalue]) -> Result<ExactDiagonalization> {
    let n = lambda.rows();
    let mut groups: Vec<(Scalar, usize)> = Vec::new();
    for e in eigenvalues {
        let v = e.value.clone().expect("exact path");
        match groups.last_mut() {
            Some((last, count)) if *last == v => *count += 1,
            _ => groups.push((v, 1)),
        }
    }
    let mut cols: Vec<Vector> = Vec::with_capacity(n);
    let mut norms = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    for (value, multiplicity) in groups {
        let shifted = lambda - &ExactMatrix::identity(n).scale(&value);
        let kernel = shifted.kernel();
        if kernel.len() != multiplicity {
            return Err(Error::Precondition(format!(
                "eigenvalue {value}: eigenspace has dimension {} but multiplicity {multiplicity}",
                kernel.len()
            )));
        }
        let mut basis: Vec<Vector> = Vec::new();
        for v in kernel {
            let mut w = v;
            for u in &basis {
                let f = &inner(u, &w) / &inner(u, u);
                w = w.iter().zip(u).map(|(a, b)| a - &(&f * b)).collect();
            }
            let lead = w.iter().find(|x| !x.is_zero()).cloned().expect("nonzero kernel vector");
            let inv = lead.inv().expect("nonzero");
            w = w.iter().map(|x| x * &inv).collect();
            basis.push(w);
        }
        for w in basis {
            norms.push(inner(&w, &w));
            diag.push(value.clone());
            cols.push(w);
        }
    }
    let mut columns = ExactMatrix::zeros(n, n);
    for (c, v) in cols.iter().enumerate() {
        for (r, x) in v.iter().enumerate() {
            columns.set(r, c, x.clone());
        }
    }
    let d = ExactDiagonalization { columns, norms, diagonal: ExactMatrix::diagonal(&diag) };
    if !d.verify(lambda) {
        return Err(Error::Precondition("exact diagonalization failed its own check".into()));
    }
    Ok(d)
}

fn numeric_diagonalization(lambda: &ExactMatrix, imaginary_input: bool) -> NumericDiagonalization {
    let n = lambda.rows();
    let to_c = |s: &Scalar| {
        let (re, im) = s.to_f64_pair();
        Complex::new(re, im)
    };
    let l = DMatrix::from_fn(n, n, |r, c| to_c(lambda.get(r, c)));
    // Hermitian companion: iΛ for real Λ, Λ itself for imaginary Λ
    let h = if imaginary_input { l.clone() } else { l.map(|z| z * Complex::new(0.0, 1.0)) };
    let eig = nalgebra::SymmetricEigen::new(h);
    let mut order: Vec<(f64, f64, usize)> = (0..n)
        .map(|k| {
            let x = eig.eigenvalues[k];
            // eigenvalue of Λ: −i x for real Λ, x for imaginary Λ
            let (re, im) = if imaginary_input { (x, 0.0) } else { (0.0, -x) };
            (im, re, k)
        })
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut columns = vec![vec![(0.0, 0.0); n]; n];
    let mut eigenvalues = Vec::with_capacity(n);
    let mut residual: f64 = 0.0;
    for (c, &(im, re, k)) in order.iter().enumerate() {
        let v = eig.eigenvectors.column(k);
        let lead = v.iter().find(|z| z.norm() > 1e-9).copied().unwrap_or(Complex::new(1.0, 0.0));
        let phase = lead.conj() / lead.norm();
        let v: Vec<Complex<f64>> = v.iter().map(|z| z * phase).collect();
        let lam = Complex::new(re, im);
        for r in 0..n {
            let lv: Complex<f64> = (0..n).map(|s| l[(r, s)] * v[s]).sum();
            residual = residual.max((lv - lam * v[r]).norm());
            columns[r][c] = (v[r].re, v[r].im);
        }
        eigenvalues.push((re, im));
    }
    NumericDiagonalization { columns, eigenvalues, residual }
}

/// One-quantum state of negative squared norm, computed by the Fock engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegativeNormWitness {
    pub relation_table: String,
    pub state: String,
    pub gram: ExactMatrix,
    pub squared_norm: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlavorDiagnosis {
    pub is_flavor_antisymmetric: bool,
    /// `K⁰_{1r,2s}`
    pub block: ExactMatrix,
    /// Unnormalized columns of `S` (see [`ExactDiagonalization`]); absent on
    /// the numeric path.
    pub transformation: Option<ExactMatrix>,
    pub column_norms: Vec<Scalar>,
    pub diagonal: Option<ExactMatrix>,
    pub eigenvalues: Vec<FlavorEigenvalue>,
    /// Relative sign of each sector's kinematic term, zero sectors omitted.
    pub sector_signs: Vec<i8>,
    pub negative_norm: bool,
    pub witness: Option<NegativeNormWitness>,
    pub inverted_connection_attempt: bool,
}

impl FlavorDiagnosis {
    pub fn positive_sectors(&self) -> usize {
        self.sector_signs.iter().filter(|&&s| s > 0).count()
    }

    pub fn negative_sectors(&self) -> usize {
        self.sector_signs.iter().filter(|&&s| s < 0).count()
    }
}

/// Statistics the diagonalized sectors inherit from `K⁰_{1r,2s}`.
fn block_bracket(k_block: &ExactMatrix) -> BracketType {
    match k_block.symmetry_class() {
        SymmetryClass::Symmetric => BracketType::Anticommutator,
        _ => BracketType::Commutator,
    }
}

/// Relation table of the diagonalized sectors: sector `k` contributes an
/// annihilator `a{k}` and a creator `b{k}dag` whose elementary bracket is the
/// sector's sign.
pub fn sector_relation_table(signs: &[i8], bracket: BracketType) -> RelationTable {
    let mut t = RelationTable::new(bracket);
    for (k, &s) in signs.iter().enumerate() {
        t.set_pair(&format!("a{}", k + 1), &format!("b{}dag", k + 1), Scalar::from_int(s as i64))
            .expect("fresh symbols");
    }
    t
}

/// Signs of the diagonalized kinematic terms relative to the first nonzero
/// sector, and the negative-norm witness they imply.
pub fn sector_sign_analysis(
    diag: &FlavorDiagonalization,
    k_block: &ExactMatrix,
    spin: SpinLabel,
    is_flavor_antisymmetric: bool,
) -> Result<FlavorDiagnosis> {
    let first = diag.eigenvalues.iter().map(|e| e.sign).find(|&s| s != 0).unwrap_or(1);
    let sector_signs: Vec<i8> = diag.eigenvalues.iter().filter(|e| e.sign != 0).map(|e| e.sign * first).collect();
    let negative_norm = sector_signs.contains(&-1);
    let witness = if negative_norm {
        let table = sector_relation_table(&sector_signs, block_bracket(k_block));
        let k = sector_signs.iter().position(|&s| s < 0).expect("negative sector") + 1;
        let state = OperatorWord::parse(&format!("b{k}dag"));
        let gram = gram_matrix(std::slice::from_ref(&state), &table)?;
        Some(NegativeNormWitness {
            relation_table: table.to_text(),
            state: state.symbols.join(" "),
            squared_norm: gram.matrix.get(0, 0).clone(),
            gram: gram.matrix,
        })
    } else {
        None
    };
    let class = k_block.symmetry_class();
    let inverted_connection_attempt = is_flavor_antisymmetric
        && ((spin.is_integer() && class == SymmetryClass::Symmetric)
            || (!spin.is_integer() && class == SymmetryClass::Antisymmetric));
    let exact = diag.exact.as_ref();
    Ok(FlavorDiagnosis {
        is_flavor_antisymmetric,
        block: k_block.clone(),
        transformation: exact.map(|e| e.columns.clone()),
        column_norms: exact.map(|e| e.norms.clone()).unwrap_or_default(),
        diagonal: exact.map(|e| e.diagonal.clone()),
        eigenvalues: diag.eigenvalues.clone(),
        sector_signs,
        negative_norm,
        witness,
        inverted_connection_attempt,
    })
}

/// Full flavor diagnosis of a two-flavor kinematic block of total dimension
/// `2·half`.
///
/// An antisymmetric coupling `[[0, K_b], [−K_b, 0]]` factors as the flavor
/// pattern `[[0,1],[−1,0]]` times `K_b`; diagonalizing the pattern gives the
/// sectors `∓i K_b`. A flavor-diagonal block has all sectors positive.
pub fn analyze_flavor_block(block: &KinematicMatrix, half: usize, spin: SpinLabel) -> Result<FlavorDiagnosis> {
    if block.dim() != 2 * half {
        return Err(Error::Dimension {
            op: "analyze_flavor_block",
            detail: format!("block of dimension {} is not two flavors of {half}", block.dim()),
        });
    }
    let det = detect_flavor_antisymmetry(block)?;
    if det.is_flavor_antisymmetric {
        let pattern = ExactMatrix::from_ints(&[[0, 1], [-1, 0]]);
        let mut diag = diagonalize_flavor(&pattern)?;
        if let Some(e) = diag.exact.as_mut() {
            e.columns = e.columns.kron(&ExactMatrix::identity(half));
            e.norms = e.norms.iter().flat_map(|n| std::iter::repeat_n(n.clone(), half)).collect();
            let d: Vec<ExactMatrix> = (0..2).map(|k| det.block.scale(e.diagonal.get(k, k))).collect();
            e.diagonal = ExactMatrix::block_diag(&d);
        }
        return sector_sign_analysis(&diag, &det.block, spin, true);
    }
    let signs = vec![1; 2];
    Ok(FlavorDiagnosis {
        is_flavor_antisymmetric: false,
        block: det.block,
        transformation: None,
        column_norms: Vec::new(),
        diagonal: None,
        eigenvalues: Vec::new(),
        sector_signs: signs,
        negative_norm: false,
        witness: None,
        inverted_connection_attempt: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "detail", rename_all = "lowercase")]
pub enum KirchoffResult {
    Compliant,
    Violation(String),
}

impl KirchoffResult {
    pub fn is_compliant(&self) -> bool {
        matches!(self, KirchoffResult::Compliant)
    }
}

/// Every mode must carry both an annihilation part and a creation part.
pub fn kirchoff_check(expansion: &ModeExpansion) -> KirchoffResult {
    let mut seen: BTreeMap<&str, (bool, bool)> = BTreeMap::new();
    for t in &expansion.terms {
        let e = seen.entry(t.mode.as_str()).or_default();
        match t.kind {
            OperatorKind::Annihilator => e.0 = true,
            OperatorKind::Creator => e.1 = true,
        }
    }
    if seen.is_empty() {
        return KirchoffResult::Violation(format!("field `{}` has an empty mode expansion", expansion.field));
    }
    let bad: Vec<String> = seen
        .iter()
        .filter(|(_, &(a, c))| !(a && c))
        .map(|(m, &(a, _))| format!("{m} ({} part only)", if a { "annihilation" } else { "creation" }))
        .collect();
    if bad.is_empty() {
        KirchoffResult::Compliant
    } else {
        KirchoffResult::Violation(format!("field `{}`: modes {}", expansion.field, bad.join(", ")))
    }
}
