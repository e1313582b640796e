//! Spin-j representations of SU(2) and their invariant bilinear forms.
//!
//! Basis convention: states are ordered `m = j, j−1, …, −j`.
//!
//! The ladder elements `√((j−m)(j+m+1))` are irrational in general, so the
//! generators are stored in a *rationalized* spherical basis
//! `|m⟩' = d_m |m⟩` with `d_m / d_{m+1} = √((j−m)(j+m+1))`. In that basis
//! `J₊` carries the integers `(j−m)(j+m+1)` and `J₋` carries ones; the
//! conjugation is a similarity transform, so commutators are unchanged, and
//! the invariant form keeps its standard shape `C_{m,−m} = (−1)^{j−m}` up to
//! an overall constant (because `d_m d_{−m}` does not depend on `m`).

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, rational_sqrt, ExactMatrix, Rational, Scalar, SymmetryClass};

/// Largest supported `2j`.
pub const MAX_TWO_J: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinLabel {
    two_j: u32,
}

impl SpinLabel {
    pub const fn from_two_j(two_j: u32) -> Self {
        Self { two_j }
    }

    pub fn two_j(self) -> u32 {
        self.two_j
    }

    pub fn is_integer(self) -> bool {
        self.two_j % 2 == 0
    }

    /// `(−1)^{2j}`
    pub fn parity(self) -> i8 {
        if self.is_integer() {
            1
        } else {
            -1
        }
    }

    /// Dimension of the complex spherical representation, `2j+1`.
    pub fn multiplet_dim(self) -> usize {
        self.two_j as usize + 1
    }

    /// Number of hermitian field components: `2j+1` for integer spin,
    /// `2(2j+1)` for half-integer spin (realified).
    pub fn hermitian_dim(self) -> usize {
        if self.is_integer() {
            self.multiplet_dim()
        } else {
            2 * self.multiplet_dim()
        }
    }

    pub fn check_supported(self) -> Result<Self> {
        if self.two_j > MAX_TWO_J {
            Err(Error::UnsupportedSpin(self.two_j))
        } else {
            Ok(self)
        }
    }

    /// Magnetic quantum number `m` of the basis state at `index`.
    fn m(self, index: usize) -> Rational {
        Rational::new((self.two_j as i64 - 2 * index as i64).into(), 2.into())
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.two_j / 2)
        } else {
            write!(f, "{}/2", self.two_j)
        }
    }
}

impl FromStr for SpinLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("malformed spin {s:?}"));
        let two_j = match s.split_once('/') {
            Some((n, "2")) => n.parse::<u32>().map_err(|_| bad())?,
            Some(_) => return Err(bad()),
            None => s.parse::<u32>().map_err(|_| bad())?.checked_mul(2).ok_or_else(bad)?,
        };
        Ok(Self { two_j })
    }
}

impl Serialize for SpinLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SpinLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Rotation generators (ħ = 1) acting on a `dim`-dimensional index space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepGenerators {
    pub dim: usize,
    pub jx: ExactMatrix,
    pub jy: ExactMatrix,
    pub jz: ExactMatrix,
}

impl RepGenerators {
    pub fn trivial(dim: usize) -> Self {
        let z = ExactMatrix::zeros(dim, dim);
        Self { dim, jx: z.clone(), jy: z.clone(), jz: z }
    }

    pub fn all(&self) -> [&ExactMatrix; 3] {
        [&self.jx, &self.jy, &self.jz]
    }

    /// `[Jx, Jy] = iJz` and cyclic permutations, exactly.
    pub fn commutators_hold(&self) -> bool {
        let comm = |a: &ExactMatrix, b: &ExactMatrix| &(a * b) - &(b * a);
        let i = Scalar::i();
        comm(&self.jx, &self.jy) == self.jz.scale(&i)
            && comm(&self.jy, &self.jz) == self.jx.scale(&i)
            && comm(&self.jz, &self.jx) == self.jy.scale(&i)
    }

    /// `I_n ⊗ G`: `n` independent copies, copy index outermost.
    pub fn repeated(&self, n: usize) -> Self {
        let id = ExactMatrix::identity(n);
        Self {
            dim: self.dim * n,
            jx: id.kron(&self.jx),
            jy: id.kron(&self.jy),
            jz: id.kron(&self.jz),
        }
    }

    pub fn direct_sum(parts: &[RepGenerators]) -> Self {
        let pick = |f: fn(&RepGenerators) -> &ExactMatrix| {
            ExactMatrix::block_diag(&parts.iter().map(|p| f(p).clone()).collect::<Vec<_>>())
        };
        Self {
            dim: parts.iter().map(|p| p.dim).sum(),
            jx: pick(|g| &g.jx),
            jy: pick(|g| &g.jy),
            jz: pick(|g| &g.jz),
        }
    }

    pub fn conjugate_by(&self, u: &ExactMatrix, u_inv: &ExactMatrix) -> Self {
        let c = |g: &ExactMatrix| &(u_inv * g) * u;
        Self { dim: u.cols(), jx: c(&self.jx), jy: c(&self.jy), jz: c(&self.jz) }
    }

    /// `Gᵀ M + M G = 0` for all three generators.
    pub fn preserves(&self, m: &ExactMatrix) -> bool {
        self.all().iter().all(|g| (&(&g.transpose() * m) + &(m * *g)).is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisTag {
    Spherical,
    Hermitian,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantForm {
    pub matrix: ExactMatrix,
    pub class: SymmetryClass,
    pub basis: BasisTag,
}

/// Generators in the rationalized spherical basis.
pub fn spin_generators(j: SpinLabel) -> RepGenerators {
    let n = j.multiplet_dim();
    let mut jp = ExactMatrix::zeros(n, n);
    let mut jm = ExactMatrix::zeros(n, n);
    let mut jz = ExactMatrix::zeros(n, n);
    for i in 0..n {
        jz.set(i, i, Scalar::real(j.m(i)));
        if i > 0 {
            // J₊|m⟩' = (j−m)(j+m+1)|m+1⟩' with j−m = i
            let c2 = i as i64 * (j.two_j as i64 - i as i64 + 1);
            jp.set(i - 1, i, Scalar::from_int(c2));
            jm.set(i, i - 1, Scalar::one());
        }
    }
    let half = crate::exact::ratio(1, 2);
    let jx = (&jp + &jm).scale_rational(&half);
    // (J₊ − J₋)/(2i) = −i(J₊ − J₋)/2
    let jy = (&jp - &jm).scale(&Scalar::imag(-half));
    RepGenerators { dim: n, jx, jy, jz }
}

/// `C_{m,m'} = (−1)^{j−m} δ_{m',−m}` in the spherical basis.
pub fn invariant_bilinear(j: SpinLabel) -> InvariantForm {
    let n = j.multiplet_dim();
    let mut c = ExactMatrix::zeros(n, n);
    for i in 0..n {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        c.set(i, n - 1 - i, Scalar::from_int(sign));
    }
    let class = c.symmetry_class();
    InvariantForm { matrix: c, class, basis: BasisTag::Spherical }
}

/// Real (hermitian-field) realization of a spin-j multiplet.
#[derive(Clone, Debug)]
pub struct HermitianBasis {
    pub spin: SpinLabel,
    /// Maps hermitian-field coordinates `ξ` to rationalized spherical
    /// coordinates: `ψ' = change_of_basis · ξ`. Square for integer spin;
    /// `n × 2n` (`ψ = x + i y`) for half-integer spin.
    pub change_of_basis: ExactMatrix,
    /// Generators acting on `ξ`; `i·G` is real.
    pub generators: RepGenerators,
    pub form: InvariantForm,
}

impl HermitianBasis {
    /// The invariant form is the identity (integer spin) so the rotation
    /// matrices are orthogonal, not merely real.
    pub fn is_orthonormal(&self) -> bool {
        self.form.matrix == ExactMatrix::identity(self.form.matrix.rows())
    }
}

/// Builds the hermitian field basis for spin `j`.
///
/// Integer spin: the fixed points of the rationalized time-reversal map
/// `ψ'_{−m} = (−1)^m ψ'_m* / r_m` with the integer
/// `r_m = Π_{k<m} (j−k)(j+k+1)` give a rational real basis ordered
/// `Re_j, Im_j, …, Re_1, Im_1, m=0`. Columns are rescaled so the invariant
/// form is the identity wherever the needed factor is rational, which covers
/// `j ≤ 1` completely (for `j = 1` this is the Cartesian x, y, z basis).
/// For `j ≥ 2` a positive diagonal weight remains.
///
/// Half-integer spin: realification `ψ = x + i y`, `ξ = (x, y)`. With
/// `J = A + iB` the real generator is `[[B, A], [−A, B]]` and `G = i·that`.
/// The form is the imaginary part of the spherical form `C`,
/// `[[0, C], [C, 0]]`; for `j = 1/2`, `C = iσ₂` and this is exactly
/// `i·[[0, σ₂], [σ₂, 0]]` in the `(x₁, x₂, y₁, y₂)` ordering (identity
/// permutation).
pub fn hermitian_basis(j: SpinLabel) -> HermitianBasis {
    if j.is_integer() {
        integer_hermitian_basis(j)
    } else {
        half_integer_hermitian_basis(j)
    }
}

fn integer_hermitian_basis(j: SpinLabel) -> HermitianBasis {
    let n = j.multiplet_dim();
    let jj = j.two_j as i64 / 2;
    let spherical = spin_generators(j);
    let c = invariant_bilinear(j).matrix;
    let index = |m: i64| (jj - m) as usize;
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for m in (1..=jj).rev() {
        let r_m: i64 = (0..m).map(|k| (jj - k) * (jj + k + 1)).product();
        let t = crate::exact::ratio(if m % 2 == 0 { 1 } else { -1 }, r_m);
        let mut re = vec![Scalar::zero(); n];
        re[index(m)] = Scalar::one();
        re[index(-m)] = Scalar::real(t.clone());
        let mut im = vec![Scalar::zero(); n];
        im[index(m)] = Scalar::i();
        im[index(-m)] = Scalar::imag(-t);
        cols.push(re);
        cols.push(im);
    }
    let mut zero = vec![Scalar::zero(); n];
    zero[index(0)] = Scalar::one();
    cols.push(zero);

    let mut u = ExactMatrix::from_rows(cols).expect("square").transpose();
    let raw = &(&u.transpose() * &c) * &u;
    let first = raw.get(0, 0).clone();
    for a in 0..n {
        let w = (raw.get(a, a) / &first).re;
        if let Some(root) = rational_sqrt(&w) {
            if !root.is_zero() {
                let inv = Scalar::real(root).inv().expect("nonzero");
                for r in 0..n {
                    let v = u.get(r, a) * &inv;
                    u.set(r, a, v);
                }
            }
        }
    }
    let u_inv = u.inverse().expect("real basis is invertible");
    let generators = spherical.conjugate_by(&u, &u_inv);
    let mut form = &(&u.transpose() * &c) * &u;
    let scale = form.get(0, 0).inv().expect("definite form");
    form = form.scale(&scale);
    HermitianBasis {
        spin: j,
        change_of_basis: u,
        generators,
        form: InvariantForm { class: form.symmetry_class(), matrix: form, basis: BasisTag::Hermitian },
    }
}

fn half_integer_hermitian_basis(j: SpinLabel) -> HermitianBasis {
    let n = j.multiplet_dim();
    let spherical = spin_generators(j);
    let realify = |g: &ExactMatrix| {
        let a = g.map(|x| Scalar::real(x.re.clone()));
        let b = g.map(|x| Scalar::real(x.im.clone()));
        let mut r = ExactMatrix::zeros(2 * n, 2 * n);
        for p in 0..n {
            for q in 0..n {
                r.set(p, q, b.get(p, q).clone());
                r.set(p, n + q, a.get(p, q).clone());
                r.set(n + p, q, -a.get(p, q));
                r.set(n + p, n + q, b.get(p, q).clone());
            }
        }
        r.scale(&Scalar::i())
    };
    let generators = RepGenerators {
        dim: 2 * n,
        jx: realify(&spherical.jx),
        jy: realify(&spherical.jy),
        jz: realify(&spherical.jz),
    };
    let c = invariant_bilinear(j).matrix;
    let mut form = ExactMatrix::zeros(2 * n, 2 * n);
    let mut change = ExactMatrix::zeros(n, 2 * n);
    for p in 0..n {
        change.set(p, p, Scalar::one());
        change.set(p, n + p, Scalar::i());
        for q in 0..n {
            form.set(p, n + q, c.get(p, q).clone());
            form.set(n + p, q, c.get(p, q).clone());
        }
    }
    HermitianBasis {
        spin: j,
        change_of_basis: change,
        generators,
        form: InvariantForm { class: form.symmetry_class(), matrix: form, basis: BasisTag::Hermitian },
    }
}

/// Hermitian bases for every supported spin, built once.
pub fn cached_hermitian_basis(j: SpinLabel) -> Result<&'static HermitianBasis> {
    static CACHE: OnceLock<Vec<HermitianBasis>> = OnceLock::new();
    let j = j.check_supported()?;
    let all = CACHE.get_or_init(|| (0..=MAX_TWO_J).map(|t| hermitian_basis(SpinLabel::from_two_j(t))).collect());
    Ok(&all[j.two_j as usize])
}

/// Positive definite symmetric invariant form in hermitian coordinates.
///
/// Integer spin: the hermitian-basis form itself. Half-integer spin:
/// `diag(W, W)` where `W_m = Π_{m' > m} (j−m')(j+m'+1)` is the norm of the
/// rationalized basis vector `|m⟩'` up to a common factor.
pub fn symmetric_invariant_form(j: SpinLabel) -> ExactMatrix {
    if j.is_integer() {
        return hermitian_basis(j).form.matrix;
    }
    let n = j.multiplet_dim();
    let mut w = Vec::with_capacity(n);
    let mut acc = Rational::from_integer(1.into());
    for i in 0..n {
        if i > 0 {
            acc *= int(i as i64 * (j.two_j as i64 - i as i64 + 1));
        }
        w.push(Scalar::real(acc.clone()));
    }
    let half = ExactMatrix::diagonal(&w);
    ExactMatrix::block_diag(&[half.clone(), half])
}

/// All bilinear forms `M` with `Gₐᵀ M + M Gₐ = 0`, split by symmetry.
#[derive(Clone, Debug)]
pub struct InvariantFormSpace {
    pub sym_basis: Vec<ExactMatrix>,
    pub antisym_basis: Vec<ExactMatrix>,
}

impl InvariantFormSpace {
    pub fn sym_dim(&self) -> usize {
        self.sym_basis.len()
    }

    pub fn antisym_dim(&self) -> usize {
        self.antisym_basis.len()
    }

    pub fn basis_of(&self, class: SymmetryClass) -> &[ExactMatrix] {
        match class {
            SymmetryClass::Symmetric => &self.sym_basis,
            SymmetryClass::Antisymmetric => &self.antisym_basis,
            _ => &[],
        }
    }
}

pub fn invariant_form_space(gens: &RepGenerators) -> InvariantFormSpace {
    InvariantFormSpace {
        sym_basis: solve_invariant_forms(gens, true),
        antisym_basis: solve_invariant_forms(gens, false),
    }
}

/// Exact nullspace of the stacked invariance equations, restricted to
/// symmetric (or antisymmetric) unknowns. `Gᵀ M + M G` inherits the symmetry
/// of `M`, so only the upper triangle of each equation is imposed.
fn solve_invariant_forms(gens: &RepGenerators, symmetric: bool) -> Vec<ExactMatrix> {
    let n = gens.dim;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (r..n).map(move |s| (r, s)))
        .filter(|&(r, s)| symmetric || r < s)
        .collect();
    if pairs.is_empty() {
        return Vec::new();
    }
    let unknown = |r: usize, s: usize| -> Option<(usize, i64)> {
        if r == s && !symmetric {
            return None;
        }
        let (a, b, sign) = if r <= s { (r, s, 1) } else { (s, r, if symmetric { 1 } else { -1 }) };
        let k = pairs.binary_search(&(a, b)).expect("pair index");
        Some((k, sign))
    };
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in gens.all() {
        for &(r, s) in &pairs {
            let mut row = vec![Scalar::zero(); pairs.len()];
            // (Gᵀ M + M G)_{rs} = Σ_k G_{kr} M_{ks} + M_{rk} G_{ks}
            for k in 0..n {
                let gkr = g.get(k, r);
                if !gkr.is_zero() {
                    if let Some((u, sign)) = unknown(k, s) {
                        row[u] += &gkr.scale(&int(sign));
                    }
                }
                let gks = g.get(k, s);
                if !gks.is_zero() {
                    if let Some((u, sign)) = unknown(r, k) {
                        row[u] += &gks.scale(&int(sign));
                    }
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        ExactMatrix::zeros(1, pairs.len())
    } else {
        ExactMatrix::from_rows(rows).expect("uniform rows")
    };
    system
        .kernel()
        .into_iter()
        .map(|v| {
            let mut m = ExactMatrix::zeros(n, n);
            for (k, &(r, s)) in pairs.iter().enumerate() {
                m.set(r, s, v[k].clone());
                let mirrored = if symmetric { v[k].clone() } else { -&v[k] };
                if r != s {
                    m.set(s, r, mirrored);
                }
            }
            m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spin(s: &str) -> SpinLabel {
        s.parse().unwrap()
    }

    #[test]
    fn spin_label_text() {
        assert_eq!(spin("1/2").two_j(), 1);
        assert_eq!(spin("2").two_j(), 4);
        assert_eq!(spin("4/2").two_j(), 4);
        assert_eq!(SpinLabel::from_two_j(3).to_string(), "3/2");
        assert_eq!(SpinLabel::from_two_j(4).to_string(), "2");
        assert!("1/3".parse::<SpinLabel>().is_err());
        assert!("-1".parse::<SpinLabel>().is_err());
        assert_eq!(spin("1/2").parity(), -1);
        assert_eq!(spin("1/2").hermitian_dim(), 4);
        assert_eq!(spin("1").hermitian_dim(), 3);
    }

    #[test]
    fn spin_zero_generators_vanish() {
        let g = spin_generators(spin("0"));
        assert_eq!(g.dim, 1);
        assert!(g.all().iter().all(|m| m.is_zero()));
    }

    #[test]
    fn spin_half_is_half_pauli() {
        let g = spin_generators(spin("1/2"));
        assert_eq!(g.jz, ExactMatrix::from_strs(&[["1/2", "0"], ["0", "-1/2"]]));
        assert_eq!(g.jx, ExactMatrix::from_strs(&[["0", "1/2"], ["1/2", "0"]]));
        assert_eq!(g.jy, ExactMatrix::from_strs(&[["0", "-1/2i"], ["1/2i", "0"]]));
    }

    #[test]
    fn commutators_for_all_supported_spins() {
        for two_j in 0..=MAX_TWO_J {
            let g = spin_generators(SpinLabel::from_two_j(two_j));
            assert!(g.commutators_hold(), "2j={two_j}");
        }
    }

    #[test]
    fn spin_half_bilinear_is_i_sigma_y() {
        let f = invariant_bilinear(spin("1/2"));
        assert_eq!(f.matrix, ExactMatrix::from_ints(&[[0, 1], [-1, 0]]));
        assert_eq!(f.class, SymmetryClass::Antisymmetric);
    }

    #[test]
    fn spin_zero_bilinear() {
        let f = invariant_bilinear(spin("0"));
        assert_eq!(f.matrix, ExactMatrix::identity(1));
        assert_eq!(f.class, SymmetryClass::Symmetric);
    }

    #[test]
    fn spin_one_hermitian_basis_is_cartesian() {
        let h = hermitian_basis(spin("1"));
        assert_eq!(h.form.matrix, ExactMatrix::identity(3));
        for g in h.generators.all() {
            let ig = g.scale(&Scalar::i());
            assert!(ig.is_real() && ig.is_antisymmetric(), "{g:?}");
        }
        assert!(h.generators.commutators_hold());
    }

    #[test]
    fn spin_zero_hermitian_basis_is_trivial() {
        let h = hermitian_basis(spin("0"));
        assert_eq!(h.change_of_basis, ExactMatrix::identity(1));
        assert_eq!(h.form.matrix, ExactMatrix::identity(1));
    }

    #[test]
    fn spin_half_hermitian_form_is_majorana() {
        let h = hermitian_basis(spin("1/2"));
        let sigma2 = ExactMatrix::from_strs(&[["0", "-i"], ["i", "0"]]);
        let beta = ExactMatrix::from_ints(&[[0, 1], [1, 0]]).kron(&sigma2);
        assert_eq!(h.form.matrix, beta.scale(&Scalar::i()));
        assert!(h.form.matrix.is_real());
        assert_eq!(h.form.class, SymmetryClass::Antisymmetric);
        assert!(h.generators.preserves(&h.form.matrix));
        for g in h.generators.all() {
            let ig = g.scale(&Scalar::i());
            assert!(ig.is_real() && ig.is_antisymmetric());
        }
    }

    #[test]
    fn form_space_small_cases() {
        let one = invariant_form_space(&RepGenerators::trivial(1));
        assert_eq!((one.sym_dim(), one.antisym_dim()), (1, 0));
        let two = invariant_form_space(&RepGenerators::trivial(2));
        assert_eq!((two.sym_dim(), two.antisym_dim()), (3, 1));
        let maj = invariant_form_space(&hermitian_basis(spin("1/2")).generators);
        assert_eq!((maj.sym_dim(), maj.antisym_dim()), (1, 3));
        assert_eq!(maj.sym_basis[0], ExactMatrix::identity(4));
    }
    #[test]
    fn every_supported_spin_has_real_generators_and_invariant_forms() {
        for two_j in 0..=MAX_TWO_J {
            let j = SpinLabel::from_two_j(two_j);
            let h = hermitian_basis(j);
            assert_eq!(h.generators.dim, j.hermitian_dim());
            assert!(h.generators.commutators_hold(), "2j={two_j}");
            for g in h.generators.all() {
                assert!(g.scale(&Scalar::i()).is_real(), "2j={two_j}");
            }
            assert!(h.generators.preserves(&h.form.matrix), "2j={two_j}");
            let expected = if j.is_integer() { SymmetryClass::Symmetric } else { SymmetryClass::Antisymmetric };
            assert_eq!(h.form.class, expected);
            let s = symmetric_invariant_form(j);
            assert!(s.is_symmetric() && s.is_diagonal(), "2j={two_j}");
            assert!(s.entries().iter().enumerate().all(|(k, x)| k % (s.cols() + 1) != 0 || x.re > Rational::zero()));
            assert!(h.generators.preserves(&s), "2j={two_j}");
        }
    }

    #[test]
    fn cache_rejects_large_spin() {
        assert!(cached_hermitian_basis(SpinLabel::from_two_j(9)).is_err());
        assert_eq!(cached_hermitian_basis(spin("1")).unwrap().form.matrix, ExactMatrix::identity(3));
    }
}
