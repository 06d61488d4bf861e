//! Rack, degenerate and quandle chain complexes.
//!
//! `C_n^R(X)` is free on the `n`-tuples over `X`. Two maps lower the degree:
//!
//! ```text
//! d1(a1..an) = Σ_i (-1)^i (a1, .., â_i, .., an)
//! d2(a1..an) = Σ_i (-1)^i (a1∗ai, .., a_{i-1}∗ai, a_{i+1}, .., an)
//! ```
//!
//! and `∂± = d1 ± d2`. Both maps vanish on degree ≤ 1; from degree 2 to 1 they
//! are the non-zero maps `d1(a,b) = (a) - (b)`, `d2(a,b) = (a∗b) - (b)`.
//! The degenerate subcomplex is spanned by tuples with two equal neighbours,
//! and the quandle complex is the quotient, represented on the complementary
//! (non-degenerate) tuples.
//!
//! Bases are ordered lexicographically, so every matrix here is reproducible.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quandle::Operation;
use crate::snf::IntMatrix;

/// Largest degree handled by [`verify_complex_identities`].
pub const MAX_IDENTITY_DEGREE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Rack,
    Degenerate,
    Quandle,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Rack => "rack",
            Flavor::Degenerate => "degenerate",
            Flavor::Quandle => "quandle",
        })
    }
}

/// Which of `∂⁺ = d1 + d2` and `∂⁻ = d1 − d2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "pos")]
    Plus,
    #[serde(rename = "neg")]
    Minus,
}

impl Sign {
    pub fn d2_factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn kind(self) -> BoundaryKind {
        match self {
            Sign::Plus => BoundaryKind::Plus,
            Sign::Minus => BoundaryKind::Minus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "pos",
            Sign::Minus => "neg",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryKind {
    D1,
    D2,
    Plus,
    Minus,
}

impl BoundaryKind {
    /// Coefficients `(α, β)` with the map equal to `α·d1 + β·d2`.
    fn coefficients(self) -> (i64, i64) {
        match self {
            BoundaryKind::D1 => (1, 0),
            BoundaryKind::D2 => (0, 1),
            BoundaryKind::Plus => (1, 1),
            BoundaryKind::Minus => (1, -1),
        }
    }
}

pub fn is_degenerate(tuple: &[usize]) -> bool {
    tuple.windows(2).any(|w| w[0] == w[1])
}

/// Ordered generators of `C_n^W(X)` for one flavor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleBasis {
    degree: usize,
    order: usize,
    flavor: Flavor,
    tuples: Vec<Vec<usize>>,
    // position of each tuple, indexed by its base-`order` code
    index: Vec<usize>,
}

impl TupleBasis {
    pub fn new(order: usize, degree: usize, flavor: Flavor) -> Self {
        let total = order.pow(degree as u32);
        let mut tuples = Vec::new();
        let mut index = vec![usize::MAX; if degree == 0 { 0 } else { total }];
        if degree > 0 {
            for code in 0..total {
                let t = decode(code, order, degree);
                let keep = match flavor {
                    Flavor::Rack => true,
                    Flavor::Degenerate => is_degenerate(&t),
                    Flavor::Quandle => !is_degenerate(&t),
                };
                if keep {
                    index[code] = tuples.len();
                    tuples.push(t);
                }
            }
        }
        Self { degree, order, flavor, tuples, index }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn position(&self, tuple: &[usize]) -> Option<usize> {
        if tuple.len() != self.degree || tuple.iter().any(|&a| a >= self.order) {
            return None;
        }
        let i = *self.index.get(encode(tuple, self.order))?;
        (i != usize::MAX).then_some(i)
    }
}

fn decode(mut code: usize, order: usize, degree: usize) -> Vec<usize> {
    let mut t = vec![0; degree];
    for slot in t.iter_mut().rev() {
        *slot = code % order;
        code /= order;
    }
    t
}

fn encode(tuple: &[usize], order: usize) -> usize {
    tuple.iter().fold(0, |acc, &a| acc * order + a)
}

/// A finitely supported integer combination of `n`-tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntChain {
    degree: usize,
    terms: BTreeMap<Vec<usize>, i64>,
}

impl IntChain {
    pub fn zero(degree: usize) -> Self {
        Self { degree, terms: BTreeMap::new() }
    }

    pub fn generator(tuple: Vec<usize>) -> Self {
        let mut c = Self::zero(tuple.len());
        c.add_term(tuple, 1);
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn add_term(&mut self, tuple: Vec<usize>, coeff: i64) {
        assert_eq!(tuple.len(), self.degree, "tuple length must match chain degree");
        if coeff == 0 {
            return;
        }
        match self.terms.entry(tuple) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, tuple: &[usize]) -> i64 {
        self.terms.get(tuple).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled_add(&mut self, other: &IntChain, k: i64) {
        for (t, c) in other.terms() {
            self.add_term(t.clone(), c * k);
        }
    }
}

impl fmt::Display for IntChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (t, c)) in self.terms().enumerate() {
            let sep = if i == 0 { "" } else { " " };
            let sign = if c < 0 { "-" } else if i == 0 { "" } else { "+" };
            let body: Vec<String> = t.iter().map(|a| a.to_string()).collect();
            write!(f, "{sep}{sign}{}({})", if c.abs() == 1 { String::new() } else { c.abs().to_string() }, body.join(","))?;
        }
        Ok(())
    }
}

/// Image of one generator under `α·d1 + β·d2`, accumulated into `out`.
fn boundary_of_tuple<X: Operation + ?Sized>(
    x: &X,
    tuple: &[usize],
    kind: BoundaryKind,
    scale: i64,
    out: &mut IntChain,
) {
    let n = tuple.len();
    if n <= 1 {
        return;
    }
    let (alpha, beta) = kind.coefficients();
    for i in 0..n {
        // (-1)^i with 1-based i
        let sign = if i % 2 == 0 { -1 } else { 1 };
        if alpha != 0 {
            let face: Vec<usize> =
                tuple.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &a)| a).collect();
            out.add_term(face, sign * alpha * scale);
        }
        if beta != 0 {
            let ai = tuple[i];
            let face: Vec<usize> = tuple
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(j, &a)| if j < i { x.op(a, ai) } else { a })
                .collect();
            out.add_term(face, sign * beta * scale);
        }
    }
}

fn apply<X: Operation + ?Sized>(x: &X, chain: &IntChain, kind: BoundaryKind) -> IntChain {
    let mut out = IntChain::zero(chain.degree().saturating_sub(1));
    for (t, c) in chain.terms() {
        boundary_of_tuple(x, t, kind, c, &mut out);
    }
    out
}

/// `d1` does not use the operation; any table of matching order will do.
pub fn d1_apply<X: Operation + ?Sized>(x: &X, chain: &IntChain) -> IntChain {
    apply(x, chain, BoundaryKind::D1)
}

pub fn d2_apply<X: Operation + ?Sized>(x: &X, chain: &IntChain) -> IntChain {
    apply(x, chain, BoundaryKind::D2)
}

pub fn boundary_apply<X: Operation + ?Sized>(x: &X, chain: &IntChain, sign: Sign) -> IntChain {
    apply(x, chain, sign.kind())
}

/// Sparse integer matrix of a boundary map in fixed tuple bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub source_degree: usize,
    pub flavor: Flavor,
    pub kind: BoundaryKind,
    rows: usize,
    cols: usize,
    // column-major: columns[j] = sorted (row, value) pairs
    columns: Vec<Vec<(usize, i64)>>,
}

impl BoundaryMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.columns[col]
            .binary_search_by_key(&row, |&(r, _)| r)
            .map(|k| self.columns[col][k].1)
            .unwrap_or(0)
    }

    pub fn column(&self, col: usize) -> &[(usize, i64)] {
        &self.columns[col]
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m.set(i, j, v.into());
            }
        }
        m
    }

    /// Plain-text integer grid, one row per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.entry(i, j).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// `self · rhs` as a dense row-major grid.
    pub fn compose(&self, rhs: &BoundaryMatrix) -> Vec<Vec<i64>> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in composition");
        let mut out = vec![vec![0i64; rhs.cols]; self.rows];
        for (j, col) in rhs.columns.iter().enumerate() {
            for &(k, v) in col {
                for &(i, w) in &self.columns[k] {
                    out[i][j] += w * v;
                }
            }
        }
        out
    }
}

/// Matrix of `kind` from degree `n` to `n − 1` on the given flavor.
///
/// For the degenerate flavor the image is read off in the degenerate basis,
/// which is exact whenever the table is a quandle. For the quandle flavor
/// the rack matrix is restricted to non-degenerate columns and projected
/// onto non-degenerate rows.
pub fn boundary_matrix_of_kind<X: Operation + ?Sized>(
    x: &X,
    n: usize,
    kind: BoundaryKind,
    flavor: Flavor,
) -> BoundaryMatrix {
    let order = x.order();
    let source = TupleBasis::new(order, n, flavor);
    let target = TupleBasis::new(order, n.saturating_sub(1), flavor);
    let columns = source
        .tuples()
        .iter()
        .map(|t| {
            let mut img = IntChain::zero(n.saturating_sub(1));
            boundary_of_tuple(x, t, kind, 1, &mut img);
            let mut col: Vec<(usize, i64)> = img
                .terms()
                .filter_map(|(u, c)| target.position(u).map(|i| (i, c)))
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    BoundaryMatrix {
        source_degree: n,
        flavor,
        kind,
        rows: target.len(),
        cols: source.len(),
        columns,
    }
}

pub fn boundary_matrix<X: Operation + ?Sized>(
    x: &X,
    n: usize,
    sign: Sign,
    flavor: Flavor,
) -> BoundaryMatrix {
    boundary_matrix_of_kind(x, n, sign.kind(), flavor)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityFailure {
    pub identity: String,
    pub degree: usize,
    /// Source generator whose image violates the identity.
    pub witness: Vec<usize>,
    /// Offending target generator and its coefficient.
    pub target: Vec<usize>,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub max_degree: usize,
    pub checks: usize,
    pub failure: Option<IdentityFailure>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `d1² = d2² = d1d2 + d2d1 = ∂⁺∂⁺ = ∂⁻∂⁻ = 0` on the rack complex for
/// every degree up to `max_degree`, and that `d1`, `d2` carry degenerate
/// tuples to degenerate chains. Stops at the first failure.
pub fn verify_complex_identities<X: Operation + ?Sized>(
    x: &X,
    max_degree: usize,
) -> Result<IdentityReport> {
    if max_degree > MAX_IDENTITY_DEGREE {
        return Err(Error::UnsupportedDegree(max_degree));
    }
    let order = x.order();
    let mut checks = 0;
    let kinds = [BoundaryKind::D1, BoundaryKind::D2, BoundaryKind::Plus, BoundaryKind::Minus];
    for n in 2..=max_degree {
        let upper: Vec<BoundaryMatrix> =
            kinds.iter().map(|&k| boundary_matrix_of_kind(x, n, k, Flavor::Rack)).collect();
        let lower: Vec<BoundaryMatrix> =
            kinds.iter().map(|&k| boundary_matrix_of_kind(x, n - 1, k, Flavor::Rack)).collect();
        let d1d1 = lower[0].compose(&upper[0]);
        let d2d2 = lower[1].compose(&upper[1]);
        let d1d2 = lower[0].compose(&upper[1]);
        let d2d1 = lower[1].compose(&upper[0]);
        let anti: Vec<Vec<i64>> = d1d2
            .iter()
            .zip(&d2d1)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect())
            .collect();
        let pp = lower[2].compose(&upper[2]);
        let mm = lower[3].compose(&upper[3]);
        let named = [
            ("d1d1", d1d1),
            ("d2d2", d2d2),
            ("d1d2+d2d1", anti),
            ("plus∘plus", pp),
            ("minus∘minus", mm),
        ];
        let source = TupleBasis::new(order, n, Flavor::Rack);
        let target = TupleBasis::new(order, n.saturating_sub(2), Flavor::Rack);
        for (name, grid) in named {
            checks += 1;
            for (i, row) in grid.iter().enumerate() {
                if let Some(j) = row.iter().position(|&v| v != 0) {
                    return Ok(IdentityReport {
                        max_degree,
                        checks,
                        failure: Some(IdentityFailure {
                            identity: name.to_string(),
                            degree: n,
                            witness: source.tuples()[j].clone(),
                            target: target.tuples()[i].clone(),
                            value: row[j],
                        }),
                    });
                }
            }
        }
        // subcomplex: degenerate generators map into the degenerate span
        // (degree 1 has no degenerate tuples at all)
        for kind in [BoundaryKind::D1, BoundaryKind::D2] {
            checks += 1;
            for t in TupleBasis::new(order, n, Flavor::Degenerate).tuples() {
                let mut img = IntChain::zero(n - 1);
                boundary_of_tuple(x, t, kind, 1, &mut img);
                let stray = img.terms().find(|(u, _)| !is_degenerate(u)).map(|(u, c)| (u.clone(), c));
                if let Some((u, c)) = stray {
                    return Ok(IdentityReport {
                        max_degree,
                        checks,
                        failure: Some(IdentityFailure {
                            identity: format!("{kind:?} preserves degenerate span").to_lowercase(),
                            degree: n,
                            witness: t.clone(),
                            target: u,
                            value: c,
                        }),
                    });
                }
            }
        }
    }
    Ok(IdentityReport { max_degree, checks, failure: None })
}
