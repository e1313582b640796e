//! Symbolic second quantization over a declared table of elementary
//! (anti)commutators.
//!
//! Relation-table text format:
//!
//! ```text
//! bracket = commutator | anticommutator
//! pair <A> <Bdag> = <scalar>
//! generators <symbol> ...
//! ```
//!
//! A trailing `dag` marks a creator. Only annihilator/creator pairs carry
//! values; every other elementary bracket is zero. `generators` declares
//! symbols that take part in no nonzero bracket. A pair may be written
//! creator-first, in which case the bracket's own exchange symmetry is used.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Rational, Scalar};
use crate::quantizer::BracketType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Creator,
    Annihilator,
}

impl OperatorKind {
    pub fn of_symbol(symbol: &str) -> Self {
        if symbol.len() > 3 && symbol.ends_with("dag") {
            OperatorKind::Creator
        } else {
            OperatorKind::Annihilator
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub symbol: String,
    pub kind: OperatorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTable {
    generators: Vec<Generator>,
    bracket: BracketType,
    /// `(annihilator, creator) → [A, B†]∓`
    values: BTreeMap<(usize, usize), Scalar>,
}

fn valid_symbol(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '\'')
}

impl RelationTable {
    pub fn new(bracket: BracketType) -> Self {
        Self { generators: Vec::new(), bracket, values: BTreeMap::new() }
    }

    pub fn bracket(&self) -> BracketType {
        self.bracket
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Registers a symbol (idempotent) and returns its id.
    pub fn declare(&mut self, symbol: &str) -> Result<usize> {
        if let Some(i) = self.generators.iter().position(|g| g.symbol == symbol) {
            return Ok(i);
        }
        if !valid_symbol(symbol) {
            return Err(Error::RelationTable(format!("invalid symbol `{symbol}`")));
        }
        self.generators.push(Generator { symbol: symbol.to_string(), kind: OperatorKind::of_symbol(symbol) });
        Ok(self.generators.len() - 1)
    }

    /// Sets the elementary bracket of two symbols, in either order.
    pub fn set_pair(&mut self, first: &str, second: &str, value: Scalar) -> Result<()> {
        let a = self.declare(first)?;
        let b = self.declare(second)?;
        let (ann, cre, v) = match (self.kind(a), self.kind(b)) {
            (OperatorKind::Annihilator, OperatorKind::Creator) => (a, b, value),
            (OperatorKind::Creator, OperatorKind::Annihilator) => {
                let v = match self.bracket {
                    BracketType::Commutator => -value,
                    BracketType::Anticommutator => value,
                };
                (b, a, v)
            }
            _ => {
                if value.is_zero() {
                    return Ok(());
                }
                return Err(Error::RelationTable(format!(
                    "`{first}` and `{second}` are of the same kind; only annihilator/creator pairs may be nonzero"
                )));
            }
        };
        if let Some(old) = self.values.get(&(ann, cre)) {
            if *old != v {
                return Err(Error::RelationTable(format!(
                    "conflicting values for ({}, {}): {old} and {v}",
                    self.symbol(ann),
                    self.symbol(cre)
                )));
            }
        }
        self.values.insert((ann, cre), v);
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut table: Option<RelationTable> = None;
        let mut pending: Vec<(usize, String)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |m: &str| Error::RelationTable(format!("line {lineno}: {m}"));
            if let Some(rest) = line.strip_prefix("bracket") {
                let value = rest.trim().strip_prefix('=').ok_or_else(|| bad("expected `bracket = ...`"))?.trim();
                let b = match value {
                    "commutator" => BracketType::Commutator,
                    "anticommutator" => BracketType::Anticommutator,
                    other => return Err(bad(&format!("unknown bracket `{other}`"))),
                };
                if table.is_some() {
                    return Err(bad("duplicate `bracket` line"));
                }
                table = Some(RelationTable::new(b));
            } else {
                pending.push((lineno, line.to_string()));
            }
        }
        let mut table = table.ok_or_else(|| Error::RelationTable("missing `bracket = ...` line".into()))?;
        for (lineno, line) in pending {
            let bad = |m: &str| Error::RelationTable(format!("line {lineno}: {m}"));
            if let Some(rest) = line.strip_prefix("pair ") {
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| bad("expected `pair A Bdag = value`"))?;
                let syms: Vec<&str> = lhs.split_whitespace().collect();
                if syms.len() != 2 {
                    return Err(bad("a pair names exactly two symbols"));
                }
                let v: Scalar = rhs.trim().parse().map_err(|_| bad(&format!("malformed scalar `{}`", rhs.trim())))?;
                table.set_pair(syms[0], syms[1], v).map_err(|e| bad(&e.to_string()))?;
            } else if let Some(rest) = line.strip_prefix("generators ") {
                for s in rest.split_whitespace() {
                    table.declare(s).map_err(|e| bad(&e.to_string()))?;
                }
            } else {
                return Err(bad(&format!("unrecognized line `{line}`")));
            }
        }
        Ok(table)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "bracket = {}\n",
            match self.bracket {
                BracketType::Commutator => "commutator",
                BracketType::Anticommutator => "anticommutator",
            }
        );
        let paired: Vec<usize> = self.values.keys().flat_map(|&(a, c)| [a, c]).collect();
        let lone: Vec<&str> =
            (0..self.generators.len()).filter(|i| !paired.contains(i)).map(|i| self.symbol(i)).collect();
        if !lone.is_empty() {
            out.push_str(&format!("generators {}\n", lone.join(" ")));
        }
        for (&(a, c), v) in &self.values {
            out.push_str(&format!("pair {} {} = {v}\n", self.symbol(a), self.symbol(c)));
        }
        out
    }

    pub fn symbol(&self, id: usize) -> &str {
        &self.generators[id].symbol
    }

    pub fn kind(&self, id: usize) -> OperatorKind {
        self.generators[id].kind
    }

    pub fn id(&self, symbol: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.symbol == symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    /// Elementary bracket `[A, B†]∓` of an annihilator with a creator.
    pub fn value(&self, ann: usize, cre: usize) -> Scalar {
        self.values.get(&(ann, cre)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `X†` for a symbol `X`: the `dag` partner when declared, else the
    /// unique partner with a nonzero bracket.
    pub fn adjoint_id(&self, id: usize) -> Result<usize> {
        let sym = self.symbol(id);
        let (named, partners): (String, Vec<usize>) = match self.kind(id) {
            OperatorKind::Creator => (
                sym[..sym.len() - 3].to_string(),
                self.values.iter().filter(|((_, c), v)| *c == id && !v.is_zero()).map(|((a, _), _)| *a).collect(),
            ),
            OperatorKind::Annihilator => (
                format!("{sym}dag"),
                self.values.iter().filter(|((a, _), v)| *a == id && !v.is_zero()).map(|((_, c), _)| *c).collect(),
            ),
        };
        if let Ok(i) = self.id(&named) {
            if self.kind(i) != self.kind(id) {
                return Ok(i);
            }
        }
        match partners.as_slice() {
            [one] => Ok(*one),
            [] => Err(Error::RelationTable(format!("`{sym}` has no adjoint in this table"))),
            _ => Err(Error::RelationTable(format!("adjoint of `{sym}` is ambiguous"))),
        }
    }

    fn resolve(&self, word: &OperatorWord) -> Result<Vec<usize>> {
        word.symbols.iter().map(|s| self.id(s)).collect()
    }

    /// Position of a symbol in normal order: creators first, then by id.
    fn key(&self, id: usize) -> (u8, usize) {
        match self.kind(id) {
            OperatorKind::Creator => (0, id),
            OperatorKind::Annihilator => (1, id),
        }
    }
}

/// A product of generators with a coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OperatorWord {
    pub coefficient: Scalar,
    pub symbols: Vec<String>,
}

impl OperatorWord {
    pub fn new(coefficient: Scalar, symbols: Vec<String>) -> Self {
        Self { coefficient, symbols }
    }

    /// Whitespace-separated symbols, coefficient one.
    pub fn parse(text: &str) -> Self {
        Self::new(Scalar::one(), text.split_whitespace().map(str::to_string).collect())
    }

    pub fn identity(coefficient: Scalar) -> Self {
        Self::new(coefficient, Vec::new())
    }

    pub fn scaled(mut self, c: &Scalar) -> Self {
        self.coefficient = &self.coefficient * c;
        self
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coefficient.compact();
        let complex = !self.coefficient.is_real() && !self.coefficient.is_imaginary();
        let syms = self.symbols.join(" ");
        match (self.symbols.is_empty(), c.as_str()) {
            (true, _) => f.write_str(&c),
            (false, "1") => f.write_str(&syms),
            (false, "-1") => write!(f, "-{syms}"),
            (false, _) if complex => write!(f, "({c}) {syms}"),
            (false, _) => write!(f, "{c} {syms}"),
        }
    }
}

/// Sum of normally ordered words, in canonical order (shorter words first,
/// then by symbol ids).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub terms: Vec<OperatorWord>,
}

impl NormalForm {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the empty word.
    pub fn constant(&self) -> Scalar {
        self.terms.iter().find(|t| t.symbols.is_empty()).map(|t| t.coefficient.clone()).unwrap_or_else(Scalar::zero)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, t) in self.terms.iter().enumerate() {
            let text = t.to_string();
            match (n, text.strip_prefix('-')) {
                (0, _) => f.write_str(&text)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {text}")?,
            }
        }
        Ok(())
    }
}

/// Positions `i` where the pair `(w[i], w[i+1])` can be rewritten.
fn reducible_positions(table: &RelationTable, w: &[usize]) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&i| {
            let (x, y) = (w[i], w[i + 1]);
            table.key(x) > table.key(y) || (x == y && table.bracket == BracketType::Anticommutator)
        })
        .collect()
}

/// Normal ordering with the leftmost reducible pair rewritten first.
pub fn normal_order(word: &OperatorWord, table: &RelationTable) -> Result<NormalForm> {
    normal_order_with(word, table, &mut |_: &[usize]| 0)
}

/// Normal ordering where `choose` picks which of the reducible positions
/// (given in increasing order) to rewrite next. The result does not depend
/// on the choices.
pub fn normal_order_with(
    word: &OperatorWord,
    table: &RelationTable,
    choose: &mut dyn FnMut(&[usize]) -> usize,
) -> Result<NormalForm> {
    let ids = table.resolve(word)?;
    let sign = match table.bracket {
        BracketType::Commutator => Scalar::one(),
        BracketType::Anticommutator => -Scalar::one(),
    };
    let mut pool: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    let mut done: BTreeMap<(usize, Vec<usize>), Scalar> = BTreeMap::new();
    if !word.coefficient.is_zero() {
        pool.insert(ids, word.coefficient.clone());
    }
    let add = |map: &mut BTreeMap<Vec<usize>, Scalar>, w: Vec<usize>, c: Scalar| {
        let entry = map.entry(w).or_insert_with(Scalar::zero);
        *entry += &c;
    };
    while let Some((w, c)) = pool.pop_last() {
        if c.is_zero() {
            continue;
        }
        let positions = reducible_positions(table, &w);
        if positions.is_empty() {
            let e = done.entry((w.len(), w)).or_insert_with(Scalar::zero);
            *e += &c;
            continue;
        }
        let pick = choose(&positions).min(positions.len() - 1);
        let i = positions[pick];
        let (x, y) = (w[i], w[i + 1]);
        if x == y {
            // an anticommuting generator squares to half its vanishing self-bracket
            continue;
        }
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        add(&mut pool, swapped, &c * &sign);
        if table.kind(x) == OperatorKind::Annihilator && table.kind(y) == OperatorKind::Creator {
            let v = table.value(x, y);
            if !v.is_zero() {
                let mut contracted = w[..i].to_vec();
                contracted.extend_from_slice(&w[i + 2..]);
                add(&mut pool, contracted, &c * &v);
            }
        }
    }
    let terms = done
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((_, w), c)| OperatorWord::new(c, w.iter().map(|&i| table.symbol(i).to_string()).collect()))
        .collect();
    Ok(NormalForm { terms })
}

/// `⟨0| word |0⟩`
pub fn vacuum_expectation(word: &OperatorWord, table: &RelationTable) -> Result<Scalar> {
    Ok(normal_order(word, table)?.constant())
}

/// Reversed word of adjoint symbols with conjugated coefficient.
pub fn adjoint(word: &OperatorWord, table: &RelationTable) -> Result<OperatorWord> {
    let ids = table.resolve(word)?;
    let symbols = ids
        .iter()
        .rev()
        .map(|&i| table.adjoint_id(i).map(|j| table.symbol(j).to_string()))
        .collect::<Result<Vec<_>>>()?;
    Ok(OperatorWord::new(word.coefficient.conj(), symbols))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positives: usize,
    pub negatives: usize,
    pub zeros: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramResult {
    pub matrix: ExactMatrix,
    pub signature: Signature,
}

impl GramResult {
    pub fn has_negative_norm(&self) -> bool {
        self.signature.negatives > 0
    }
}

/// `G_mn = ⟨0| adjoint(w_m) w_n |0⟩` for creator-only words `w`.
pub fn gram_matrix(states: &[OperatorWord], table: &RelationTable) -> Result<GramResult> {
    for s in states {
        for sym in &s.symbols {
            let id = table.id(sym)?;
            if table.kind(id) != OperatorKind::Creator {
                return Err(Error::Precondition(format!("state `{s}` contains the non-creator `{sym}`")));
            }
        }
    }
    let n = states.len();
    let mut g = ExactMatrix::zeros(n, n);
    for (m, wm) in states.iter().enumerate() {
        let bra = adjoint(wm, table)?;
        for (k, wk) in states.iter().enumerate() {
            let mut symbols = bra.symbols.clone();
            symbols.extend(wk.symbols.iter().cloned());
            let w = OperatorWord::new(&bra.coefficient * &wk.coefficient, symbols);
            g.set(m, k, vacuum_expectation(&w, table)?);
        }
    }
    if !g.is_hermitian() {
        return Err(Error::RelationTable(format!("Gram matrix {g:?} is not Hermitian")));
    }
    let signature = hermitian_inertia(&g)?;
    Ok(GramResult { matrix: g, signature })
}

/// Inertia of a Hermitian matrix by exact congruence diagonalization.
pub fn hermitian_inertia(m: &ExactMatrix) -> Result<Signature> {
    if !m.is_hermitian() {
        return Err(Error::Precondition("inertia needs a Hermitian matrix".into()));
    }
    let mut a = m.clone();
    let n = a.rows();
    let mut active: Vec<usize> = (0..n).collect();
    let mut sig = Signature { positives: 0, negatives: 0, zeros: 0 };
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&k| !a.get(k, k).is_zero());
        let k = match pivot {
            Some(k) => k,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a.get(i, j).is_zero());
                let Some((i, j)) = pair else {
                    sig.zeros += active.len();
                    break;
                };
                // row_i += t row_j, col_i += t̄ col_j makes A_ii = 2|A_ji|²
                let t = a.get(j, i).conj();
                add_congruent(&mut a, i, j, &t);
                i
            }
        };
        let d = a.get(k, k).re.clone();
        if d.is_positive() {
            sig.positives += 1;
        } else {
            sig.negatives += 1;
        }
        let dk = Scalar::real(d);
        for &i in &active {
            if i == k || a.get(i, k).is_zero() {
                continue;
            }
            let f = -&(a.get(i, k) / &dk);
            add_congruent(&mut a, i, k, &f);
        }
        active.retain(|&i| i != k);
    }
    Ok(sig)
}

fn add_congruent(a: &mut ExactMatrix, i: usize, j: usize, t: &Scalar) {
    let n = a.rows();
    for c in 0..n {
        let v = a.get(i, c) + &(t * a.get(j, c));
        a.set(i, c, v);
    }
    let tc = t.conj();
    for r in 0..n {
        let v = a.get(r, i) + &(&tc * a.get(r, j));
        a.set(r, i, v);
    }
}

/// `e^{−i(kx−ωt)}` (annihilation part) or `e^{+i(kx−ωt)}` (creation part).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Negative,
    Positive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeTerm {
    pub symbol: String,
    pub kind: OperatorKind,
    pub mode: String,
    pub frequency: Rational,
    pub phase: Phase,
}

impl ModeTerm {
    /// The term carries `1/√(normalization_radicand)`, i.e. `1/√(2ω)`.
    pub fn normalization_radicand(&self) -> Rational {
        &self.frequency * Rational::from_integer(2.into())
    }
}

/// `ξ = Σ_k (2ω_k)^{−1/2} (… e^{−i(kx−ωt)} + … e^{+i(kx−ωt)})`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeExpansion {
    pub field: String,
    pub terms: Vec<ModeTerm>,
}

impl ModeExpansion {
    pub fn new(field: impl Into<String>, terms: Vec<ModeTerm>) -> Result<Self> {
        for t in &terms {
            if !t.frequency.is_positive() {
                return Err(Error::Precondition(format!("mode `{}` needs a positive frequency", t.mode)));
            }
            let expected = match t.kind {
                OperatorKind::Annihilator => Phase::Negative,
                OperatorKind::Creator => Phase::Positive,
            };
            if t.phase != expected {
                return Err(Error::Precondition(format!("`{}` carries the wrong phase", t.symbol)));
            }
        }
        Ok(Self { field: field.into(), terms })
    }

    /// A hermitian field: every mode contributes `a_k` and `a_k†` together.
    pub fn hermitian(field: &str, modes: &[(&str, Rational)]) -> Self {
        let mut terms = Vec::new();
        for (label, omega) in modes {
            let sym = format!("{field}_{label}");
            terms.push(ModeTerm {
                symbol: sym.clone(),
                kind: OperatorKind::Annihilator,
                mode: label.to_string(),
                frequency: omega.clone(),
                phase: Phase::Negative,
            });
            terms.push(ModeTerm {
                symbol: format!("{sym}dag"),
                kind: OperatorKind::Creator,
                mode: label.to_string(),
                frequency: omega.clone(),
                phase: Phase::Positive,
            });
        }
        Self::new(field, terms).expect("positive frequencies")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(text: &str) -> RelationTable {
        RelationTable::parse(text).unwrap()
    }

    #[test]
    fn single_boson_step() {
        let t = table("bracket = commutator\npair a adag = 1\n");
        let n = normal_order(&OperatorWord::parse("a adag"), &t).unwrap();
        assert_eq!(n.to_string(), "1 + adag a");
    }

    #[test]
    fn negative_fermi_pair() {
        let t = table("bracket = anticommutator\npair c ddag = -1\n");
        let n = normal_order(&OperatorWord::parse("c ddag"), &t).unwrap();
        assert_eq!(n.to_string(), "-1 - ddag c");
        assert_eq!(vacuum_expectation(&OperatorWord::parse("c ddag"), &t).unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn wick_pairing_count() {
        let t = table("bracket = commutator\npair a bdag = 1\n");
        let n = normal_order(&OperatorWord::parse("a a bdag bdag"), &t).unwrap();
        let get = |w: &str| {
            let syms: Vec<String> = w.split_whitespace().map(str::to_string).collect();
            n.terms.iter().find(|t| t.symbols == syms).map(|t| t.coefficient.clone()).unwrap()
        };
        assert_eq!(n.terms.len(), 3);
        assert_eq!(get("bdag bdag a a"), Scalar::one());
        assert_eq!(get("bdag a"), Scalar::from_int(4));
        assert_eq!(get(""), Scalar::from_int(2));
    }

    #[test]
    fn normal_ordered_word_has_zero_expectation() {
        let t = table("bracket = commutator\npair a adag = 1\n");
        assert!(vacuum_expectation(&OperatorWord::parse("adag a"), &t).unwrap().is_zero());
    }

    #[test]
    fn unknown_symbol() {
        let t = table("bracket = commutator\npair a adag = 1\n");
        assert!(matches!(normal_order(&OperatorWord::parse("a x"), &t), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn fermion_squares_vanish() {
        let t = table("bracket = anticommutator\npair a adag = 1\n");
        assert!(normal_order(&OperatorWord::parse("adag adag"), &t).unwrap().is_zero());
    }

    #[test]
    fn gram_examples() {
        let t = table("bracket = anticommutator\npair c ddag = -1\n");
        let g = gram_matrix(&[OperatorWord::parse("ddag")], &t).unwrap();
        assert_eq!(g.matrix, ExactMatrix::from_ints(&[[-1]]));
        assert_eq!(g.signature, Signature { positives: 0, negatives: 1, zeros: 0 });

        let t = table("bracket = anticommutator\npair a bdag = 1\n");
        let g = gram_matrix(&[OperatorWord::parse("bdag")], &t).unwrap();
        assert_eq!(g.matrix, ExactMatrix::from_ints(&[[1]]));

        let t = table("bracket = commutator\npair a adag = 1\npair b bdag = 1\n");
        let g = gram_matrix(&[OperatorWord::parse("adag"), OperatorWord::parse("bdag")], &t).unwrap();
        assert_eq!(g.matrix, ExactMatrix::identity(2));
        assert_eq!(g.signature.positives, 2);
    }

    #[test]
    fn gram_rejects_annihilators() {
        let t = table("bracket = commutator\npair a adag = 1\n");
        assert!(gram_matrix(&[OperatorWord::parse("a")], &t).is_err());
    }

    #[test]
    fn inertia_with_zero_diagonal() {
        let m = ExactMatrix::from_ints(&[[0, 1], [1, 0]]);
        assert_eq!(hermitian_inertia(&m).unwrap(), Signature { positives: 1, negatives: 1, zeros: 0 });
        let m = ExactMatrix::from_strs(&[["0", "i", "0"], ["-i", "0", "0"], ["0", "0", "0"]]);
        assert_eq!(hermitian_inertia(&m).unwrap(), Signature { positives: 1, negatives: 1, zeros: 1 });
    }

    #[test]
    fn creator_first_pair_uses_exchange_symmetry() {
        let t = table("bracket = commutator\npair adag a = -1\n");
        assert_eq!(t.value(t.id("a").unwrap(), t.id("adag").unwrap()), Scalar::one());
        assert!(RelationTable::parse("bracket = commutator\npair a adag = 1\npair adag a = 1\n").is_err());
        assert!(RelationTable::parse("bracket = commutator\npair a b = 1\n").is_err());
    }

    #[test]
    fn table_text_round_trip() {
        let t = table("bracket = anticommutator\ngenerators x\npair c ddag = -1\n");
        assert_eq!(RelationTable::parse(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn mode_expansion_invariants() {
        let e = ModeExpansion::hermitian("xi", &[("k1", crate::exact::int(3))]);
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.terms[0].normalization_radicand(), crate::exact::int(6));
        let bad = ModeTerm {
            symbol: "a".into(),
            kind: OperatorKind::Annihilator,
            mode: "k".into(),
            frequency: crate::exact::int(0),
            phase: Phase::Negative,
        };
        assert!(ModeExpansion::new("f", vec![bad]).is_err());
    }
}
