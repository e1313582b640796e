//! Brute-force matrix realizations of two-mode relation tables.

#![allow(dead_code)]

use spinstat::fock::RelationTable;

pub const ALPHABET: [&str; 4] = ["a", "bdag", "c", "ddag"];

/// Highest occupation kept per bosonic mode.
pub const CUTOFF: usize = 4;

#[derive(Clone, Copy, Debug)]
pub struct TwoModes {
    pub fermionic: bool,
    /// `[a, bdag]` and `[c, ddag]` (or anticommutators).
    pub values: [i64; 2],
}

impl TwoModes {
    pub fn table(&self) -> RelationTable {
        let text = format!(
            "bracket = {}\npair a bdag = {}\npair c ddag = {}\n",
            if self.fermionic { "anticommutator" } else { "commutator" },
            self.values[0],
            self.values[1]
        );
        RelationTable::parse(&text).unwrap()
    }
}

type Mat = Vec<Vec<i64>>;

fn zeros(n: usize) -> Mat {
    vec![vec![0; n]; n]
}

fn identity(n: usize) -> Mat {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

fn kron(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.len(), b.len());
    let mut out = zeros(n * m);
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// Single-mode lowering operator in the unnormalized number basis,
/// `f|n> = n|n-1>`, with its occupation-parity metric `(-1)^n`.
fn single_mode(fermionic: bool) -> (Mat, Mat) {
    let dim = if fermionic { 2 } else { CUTOFF + 1 };
    let mut f = zeros(dim);
    let mut eta = zeros(dim);
    for n in 0..dim {
        eta[n][n] = if n % 2 == 0 { 1 } else { -1 };
        if n > 0 {
            f[n - 1][n] = n as i64;
        }
    }
    (f, eta)
}

/// Operators for `a, bdag, c, ddag`. A mode with value `-1` takes the
/// creator as the adjoint of the lowering operator in the indefinite metric
/// `eta = (-1)^n`.
pub fn realize(modes: TwoModes) -> Vec<Mat> {
    let (f, eta) = single_mode(modes.fermionic);
    let dim = f.len();
    let raise = |v: i64| -> Mat {
        let mut up = zeros(dim);
        for n in 0..dim - 1 {
            up[n + 1][n] = 1;
        }
        match v {
            1 => up,
            -1 => mul(&mul(&eta, &up), &eta),
            _ => panic!("oracle supports values +1 and -1"),
        }
    };
    let id = identity(dim);
    // Jordan-Wigner string on the second mode
    let string = if modes.fermionic { eta.clone() } else { id.clone() };
    vec![
        kron(&f, &id),
        kron(&raise(modes.values[0]), &id),
        kron(&string, &f),
        kron(&string, &raise(modes.values[1])),
    ]
}

/// `<0| w |0>` with the symbols applied right to left.
pub fn oracle_vev(ops: &[Mat], word: &[usize]) -> i64 {
    let dim = ops[0].len();
    let mut v = vec![0i64; dim];
    v[0] = 1;
    for &s in word.iter().rev() {
        let op = &ops[s];
        v = (0..dim).map(|i| (0..dim).map(|j| op[i][j] * v[j]).sum()).collect();
    }
    v[0]
}

/// All words over `ALPHABET` of length `0..=max_len`, as index lists.
pub fn all_words(max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for s in 0..ALPHABET.len() {
                let mut x: Vec<usize> = w.clone();
                x.push(s);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn word_text(word: &[usize]) -> String {
    word.iter().map(|&s| ALPHABET[s]).collect::<Vec<_>>().join(" ")
}
