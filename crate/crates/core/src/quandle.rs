//! Finite quandles as dense operation tables.
//!
//! Elements are the indices `0..n`. Entry `(a, b)` of the table is `a ∗ b`;
//! the row is the left operand. A [`QuandleTable`] can only be obtained
//! through validation, so every value of the type satisfies the three
//! axioms. [`RawTable`] carries an arbitrary binary operation and exists so
//! that chain-level code can be run on non-quandles as a negative control.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order accepted by [`enumerate_quandles`].
pub const MAX_ENUMERATION_ORDER: usize = 5;

/// A finite binary operation on `0..order()`.
pub trait Operation {
    fn order(&self) -> usize;
    fn op(&self, a: usize, b: usize) -> usize;
}

/// An unchecked square operation table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RawTable {
    n: usize,
    entries: Vec<usize>,
}

impl RawTable {
    /// Checks only the structure: square shape and entries in range.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {a} has length {}, expected {n}",
                    row.len()
                )));
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::MalformedTable(format!(
                        "entry ({a},{b}) = {v} out of range 0..{n}"
                    )));
                }
                entries.push(v);
            }
        }
        Ok(Self { n, entries })
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

impl Operation for RawTable {
    fn order(&self) -> usize {
        self.n
    }

    fn op(&self, a: usize, b: usize) -> usize {
        self.entries[a * self.n + b]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axiom {
    /// `a ∗ a = a`
    Idempotence,
    /// every right translation `x ↦ x ∗ b` is a bijection
    RightInvertibility,
    /// `(a ∗ b) ∗ c = (a ∗ c) ∗ (b ∗ c)`
    SelfDistributivity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Idempotence => "axiom 1 (idempotence)",
            Axiom::RightInvertibility => "axiom 2 (right invertibility)",
            Axiom::SelfDistributivity => "axiom 3 (right self-distributivity)",
        };
        f.write_str(s)
    }
}

/// One failed axiom instance.
///
/// Witness layout: idempotence `[a]`; right invertibility `[a1, a2, b]` with
/// `a1 ∗ b = a2 ∗ b`; self-distributivity `[a, b, c]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.axiom, self.witness)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks the three quandle axioms on a table.
///
/// Structural problems (non-square, out-of-range entries) are reported as
/// an `Err`; axiom failures are collected in the report.
pub fn validate_quandle(rows: &[Vec<usize>]) -> Result<ValidationReport> {
    let raw = RawTable::from_rows(rows)?;
    Ok(validate_raw(&raw))
}

fn validate_raw(t: &RawTable) -> ValidationReport {
    let n = t.n;
    let mut violations = Vec::new();
    for a in 0..n {
        if t.op(a, a) != a {
            violations.push(Violation { axiom: Axiom::Idempotence, witness: vec![a] });
        }
    }
    for b in 0..n {
        let mut seen: Vec<Option<usize>> = vec![None; n];
        for a in 0..n {
            let c = t.op(a, b);
            match seen[c] {
                Some(prev) => violations.push(Violation {
                    axiom: Axiom::RightInvertibility,
                    witness: vec![prev, a, b],
                }),
                None => seen[c] = Some(a),
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t.op(t.op(a, b), c) != t.op(t.op(a, c), t.op(b, c)) {
                    violations.push(Violation {
                        axiom: Axiom::SelfDistributivity,
                        witness: vec![a, b, c],
                    });
                }
            }
        }
    }
    ValidationReport { valid: violations.is_empty(), violations }
}

/// A validated finite quandle with its dual operation precomputed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuandleTable {
    n: usize,
    op: Vec<usize>,
    inv: Vec<usize>,
}

impl fmt::Debug for QuandleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuandleTable").field("n", &self.n).field("rows", &self.rows()).finish()
    }
}

impl Operation for QuandleTable {
    fn order(&self) -> usize {
        self.n
    }

    fn op(&self, a: usize, b: usize) -> usize {
        self.op[a * self.n + b]
    }
}

impl QuandleTable {
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let raw = RawTable::from_rows(rows)?;
        Self::from_raw(raw)
    }

    pub fn from_raw(raw: RawTable) -> Result<Self> {
        let report = validate_raw(&raw);
        if let Some(v) = report.violations.first() {
            return Err(Error::NotAQuandle(v.to_string()));
        }
        Ok(Self::assume_valid(raw.n, raw.entries))
    }

    fn assume_valid(n: usize, op: Vec<usize>) -> Self {
        let mut inv = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                inv[op[a * n + b] * n + b] = a;
            }
        }
        Self { n, op, inv }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `c ∗⁻¹ b`, the unique `a` with `a ∗ b = c`.
    pub fn inv_op(&self, c: usize, b: usize) -> usize {
        self.inv[c * self.n + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.op.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn to_raw(&self) -> RawTable {
        RawTable { n: self.n, entries: self.op.clone() }
    }

    pub fn is_involutory(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.op(self.op(a, b), b) == a))
    }

    pub fn is_connected(&self) -> bool {
        orbits(self).blocks.len() == 1
    }

    /// The same table relabeled by `perm` (element `a` becomes `perm[a]`).
    pub fn relabel(&self, perm: &[usize]) -> QuandleTable {
        let n = self.n;
        let mut op = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                op[perm[a] * n + perm[b]] = perm[self.op(a, b)];
            }
        }
        Self::assume_valid(n, op)
    }

    /// Lexicographically least relabeling; equal for isomorphic quandles.
    pub fn canonical_form(&self) -> QuandleTable {
        let n = self.n;
        let mut best: Option<Vec<usize>> = None;
        for perm in permutations(n) {
            let mut op = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    op[perm[a] * n + perm[b]] = perm[self.op(a, b)];
                }
            }
            if best.as_ref().map_or(true, |cur| op < *cur) {
                best = Some(op);
            }
        }
        Self::assume_valid(n, best.expect("at least one permutation"))
    }

    pub fn is_isomorphic(&self, other: &QuandleTable) -> bool {
        self.n == other.n && self.canonical_form() == other.canonical_form()
    }

    pub fn flat(&self) -> &[usize] {
        &self.op
    }
}

impl PartialOrd for QuandleTable {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuandleTable {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.op).cmp(&(other.n, &other.op))
    }
}

/// The dual quandle `(X, ∗⁻¹)`.
pub fn dual(q: &QuandleTable) -> QuandleTable {
    QuandleTable::assume_valid(q.n, q.inv.clone())
}

pub fn trivial_quandle(n: usize) -> Result<QuandleTable> {
    if n == 0 {
        return Err(Error::MalformedTable("order must be positive".into()));
    }
    let op = (0..n).flat_map(|a| std::iter::repeat(a).take(n)).collect();
    Ok(QuandleTable::assume_valid(n, op))
}

/// `i ∗ j = 2j − i mod n`.
pub fn dihedral_quandle(n: usize) -> Result<QuandleTable> {
    if n == 0 {
        return Err(Error::MalformedTable("order must be positive".into()));
    }
    let op = (0..n)
        .flat_map(|i| (0..n).map(move |j| (2 * j + n - i) % n))
        .collect();
    Ok(QuandleTable::assume_valid(n, op))
}

/// Conjugation `a ∗ b = b⁻¹ a b` on the conjugacy class of `representative`
/// in the group with multiplication table `group` (`group[g][h] = g·h`).
///
/// Class elements are relabeled `0..k` in increasing group-index order; the
/// returned vector maps each label back to its group element.
pub fn conjugation_quandle(
    group: &[Vec<usize>],
    representative: usize,
) -> Result<(QuandleTable, Vec<usize>)> {
    let g = RawTable::from_rows(group).map_err(|e| Error::InvalidGroup(e.to_string()))?;
    let m = g.n;
    if representative >= m {
        return Err(Error::InvalidGroup(format!("representative {representative} out of range")));
    }
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                if g.op(g.op(x, y), z) != g.op(x, g.op(y, z)) {
                    return Err(Error::InvalidGroup(format!("not associative at ({x},{y},{z})")));
                }
            }
        }
    }
    let e = (0..m)
        .find(|&e| (0..m).all(|x| g.op(e, x) == x && g.op(x, e) == x))
        .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
    let mut inverse = vec![0; m];
    for x in 0..m {
        inverse[x] = (0..m)
            .find(|&y| g.op(x, y) == e)
            .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no inverse")))?;
    }
    let conj = |a: usize, b: usize| g.op(g.op(inverse[b], a), b);
    let class: BTreeSet<usize> = (0..m).map(|h| conj(representative, h)).collect();
    let elems: Vec<usize> = class.into_iter().collect();
    let index_of = |x: usize| elems.binary_search(&x).expect("class closed under conjugation");
    let k = elems.len();
    let mut op = vec![0; k * k];
    for (i, &a) in elems.iter().enumerate() {
        for (j, &b) in elems.iter().enumerate() {
            op[i * k + j] = index_of(conj(a, b));
        }
    }
    Ok((QuandleTable::assume_valid(k, op), elems))
}

/// Partition of the elements into orbits under right translations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    /// Blocks sorted by their least element; each block is sorted.
    pub blocks: Vec<Vec<usize>>,
    pub orbit_of: Vec<usize>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

pub fn orbits(q: &QuandleTable) -> OrbitPartition {
    let n = q.n;
    let mut orbit_of = vec![usize::MAX; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let mut block = vec![start];
        orbit_of[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in 0..n {
                for z in [q.op(x, y), q.inv_op(x, y)] {
                    if orbit_of[z] == usize::MAX {
                        orbit_of[z] = id;
                        block.push(z);
                        queue.push_back(z);
                    }
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    OrbitPartition { blocks, orbit_of }
}

pub fn is_connected(q: &QuandleTable) -> bool {
    q.is_connected()
}

/// The orbit of `a` as a quandle, with the embedding `sub index → X index`.
pub fn subquandle_on_orbit(q: &QuandleTable, a: usize) -> (QuandleTable, Vec<usize>) {
    let parts = orbits(q);
    let embedding = parts.blocks[parts.orbit_of[a]].clone();
    let k = embedding.len();
    let mut op = vec![0; k * k];
    for (i, &x) in embedding.iter().enumerate() {
        for (j, &y) in embedding.iter().enumerate() {
            let z = q.op(x, y);
            op[i * k + j] = embedding.binary_search(&z).expect("orbits are subquandles");
        }
    }
    (QuandleTable::assume_valid(k, op), embedding)
}

/// All quandles of order `n`, sorted; with `dedupe_iso` one canonical
/// representative per isomorphism class.
pub fn enumerate_quandles(n: usize, dedupe_iso: bool) -> Result<Vec<QuandleTable>> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(Error::UnsupportedOrder { order: n, max: MAX_ENUMERATION_ORDER });
    }
    // columns[b] lists the permutations x ↦ x ∗ b that fix b
    let all_perms = permutations(n);
    let candidates: Vec<Vec<&Vec<usize>>> = (0..n)
        .map(|b| all_perms.iter().filter(|p| p[b] == b).collect())
        .collect();

    let mut found = Vec::new();
    let mut cols: Vec<&Vec<usize>> = Vec::with_capacity(n);
    search_columns(n, &candidates, &mut cols, &mut found);

    let mut out: Vec<QuandleTable> = found
        .into_iter()
        .map(|op| QuandleTable::assume_valid(n, op))
        .collect();
    if dedupe_iso {
        let classes: BTreeSet<QuandleTable> = out.iter().map(|q| q.canonical_form()).collect();
        out = classes.into_iter().collect();
    } else {
        out.sort();
    }
    Ok(out)
}

fn search_columns<'a>(
    n: usize,
    candidates: &'a [Vec<&'a Vec<usize>>],
    cols: &mut Vec<&'a Vec<usize>>,
    found: &mut Vec<Vec<usize>>,
) {
    let k = cols.len();
    if k == n {
        let mut op = vec![0; n * n];
        for (b, col) in cols.iter().enumerate() {
            for a in 0..n {
                op[a * n + b] = col[a];
            }
        }
        found.push(op);
        return;
    }
    for &perm in &candidates[k] {
        cols.push(perm);
        if distributive_so_far(n, cols) {
            search_columns(n, candidates, cols, found);
        }
        cols.pop();
    }
}

/// Checks axiom 3 for the pairs `(b, c)` that became decidable once the last
/// column was placed.
fn distributive_so_far(n: usize, cols: &[&Vec<usize>]) -> bool {
    let k = cols.len() - 1;
    for b in 0..=k {
        for c in 0..=k {
            let bc = cols[c][b];
            if bc > k || b.max(c).max(bc) != k {
                continue;
            }
            for a in 0..n {
                if cols[c][cols[b][a]] != cols[bc][cols[c][a]] {
                    return false;
                }
            }
        }
    }
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        out.push(perm.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("pivot exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

/// On-disk quandle document: `{"n": 3, "table": [[0,2,1],[2,1,0],[1,0,2]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuandleFile {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl QuandleFile {
    pub fn from_table(q: &QuandleTable) -> Self {
        Self { n: q.n, table: q.rows(), labels: None }
    }

    pub fn raw(&self) -> Result<RawTable> {
        if self.table.len() != self.n {
            return Err(Error::MalformedTable(format!(
                "declared n = {} but table has {} rows",
                self.n,
                self.table.len()
            )));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.n {
                return Err(Error::MalformedTable("labels length differs from n".into()));
            }
        }
        RawTable::from_rows(&self.table)
    }

    pub fn to_quandle(&self) -> Result<QuandleTable> {
        QuandleTable::from_raw(self.raw()?)
    }
}

pub fn parse_quandle_json(text: &str) -> Result<QuandleTable> {
    let file: QuandleFile = serde_json::from_str(text)?;
    file.to_quandle()
}

pub fn quandle_to_json(q: &QuandleTable) -> String {
    serde_json::to_string(&QuandleFile::from_table(q)).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d3_rows() -> Vec<Vec<usize>> {
        vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]
    }

    #[test]
    fn dihedral_three_matches_formula_rows() {
        assert_eq!(dihedral_quandle(3).unwrap().rows(), d3_rows());
        assert!(validate_quandle(&d3_rows()).unwrap().valid);
    }

    #[test]
    fn trivial_two_is_valid() {
        let r = validate_quandle(&[vec![0, 0], vec![1, 1]]).unwrap();
        assert!(r.valid);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn non_bijective_column_is_reported() {
        let r = validate_quandle(&[vec![0, 0], vec![0, 1]]).unwrap();
        assert!(!r.valid);
        assert!(r.violations.contains(&Violation {
            axiom: Axiom::RightInvertibility,
            witness: vec![0, 1, 0],
        }));
    }

    #[test]
    fn structural_errors_are_not_axiom_failures() {
        assert!(matches!(
            validate_quandle(&[vec![0, 1], vec![1]]),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            validate_quandle(&[vec![0, 5], vec![1, 1]]),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn duals() {
        let t3 = trivial_quandle(3).unwrap();
        assert_eq!(dual(&t3), t3);
        let d3 = dihedral_quandle(3).unwrap();
        assert_eq!(dual(&d3), d3);
        for q in enumerate_quandles(4, false).unwrap() {
            let d = dual(&q);
            assert!(validate_quandle(&d.rows()).unwrap().valid);
            assert_eq!(dual(&d), q);
            for a in 0..4 {
                for b in 0..4 {
                    assert_eq!(d.op(q.op(a, b), b), a);
                    assert_eq!(q.op(d.op(a, b), b), a);
                }
            }
        }
    }

    #[test]
    fn order_one_constructions_agree() {
        assert_eq!(trivial_quandle(1).unwrap(), dihedral_quandle(1).unwrap());
    }

    fn s3() -> Vec<Vec<usize>> {
        // S3 as permutations of {0,1,2}, composed as (g·h)(x) = h(g(x))
        let perms = permutations(3);
        let idx = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        perms
            .iter()
            .map(|g| perms.iter().map(|h| idx(&(0..3).map(|x| h[g[x]]).collect())).collect())
            .collect()
    }

    #[test]
    fn transpositions_in_s3_give_d3() {
        let perms = permutations(3);
        let transposition = perms.iter().position(|p| *p == vec![1, 0, 2]).unwrap();
        let (q, elems) = conjugation_quandle(&s3(), transposition).unwrap();
        assert_eq!(q.n(), 3);
        assert_eq!(elems.len(), 3);
        assert!(q.is_connected());
        // brute-force isomorphism search over all relabelings
        let d3 = dihedral_quandle(3).unwrap();
        assert!(permutations(3).iter().any(|p| q.relabel(p) == d3));
    }

    #[test]
    fn conjugation_rejects_non_groups() {
        let bad = vec![vec![0, 0], vec![1, 1]];
        assert!(matches!(conjugation_quandle(&bad, 0), Err(Error::InvalidGroup(_))));
    }

    #[test]
    fn orbit_examples() {
        let t3 = orbits(&trivial_quandle(3).unwrap());
        assert_eq!(t3.blocks, vec![vec![0], vec![1], vec![2]]);
        let d4 = orbits(&dihedral_quandle(4).unwrap());
        assert_eq!(d4.blocks, vec![vec![0, 2], vec![1, 3]]);
        assert!(dihedral_quandle(3).unwrap().is_connected());
    }

    #[test]
    fn orbit_of_d4_zero_is_t2() {
        let d4 = dihedral_quandle(4).unwrap();
        let (sub, emb) = subquandle_on_orbit(&d4, 0);
        assert_eq!(emb, vec![0, 2]);
        assert_eq!(sub, trivial_quandle(2).unwrap());
        // an orbit need not be connected as a quandle in its own right
        assert!(!sub.is_connected());
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(emb[sub.op(i, j)], d4.op(emb[i], emb[j]));
            }
        }
        let d3 = dihedral_quandle(3).unwrap();
        let (sub, emb) = subquandle_on_orbit(&d3, 1);
        assert_eq!(sub, d3);
        assert_eq!(emb, vec![0, 1, 2]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_quandles(1, false).unwrap().len(), 1);
        assert_eq!(enumerate_quandles(2, true).unwrap(), vec![trivial_quandle(2).unwrap()]);
        assert_eq!(enumerate_quandles(3, true).unwrap().len(), 3);
        assert_eq!(enumerate_quandles(4, true).unwrap().len(), 7);
        assert!(enumerate_quandles(6, false).is_err());
        assert!(enumerate_quandles(0, false).is_err());
    }

    #[test]
    fn enumeration_contains_standard_families() {
        for n in 1..=4 {
            let all = enumerate_quandles(n, true).unwrap();
            let t = trivial_quandle(n).unwrap().canonical_form();
            assert!(all.contains(&t));
        }
        let d3 = dihedral_quandle(3).unwrap().canonical_form();
        assert!(enumerate_quandles(3, true).unwrap().contains(&d3));
    }

    #[test]
    fn json_round_trip_and_labels() {
        let q = parse_quandle_json(r#"{"n": 3, "table": [[0,2,1],[2,1,0],[1,0,2]]}"#).unwrap();
        assert_eq!(q, dihedral_quandle(3).unwrap());
        assert_eq!(parse_quandle_json(&quandle_to_json(&q)).unwrap(), q);
        let labelled = r#"{"n": 2, "table": [[0,0],[1,1]], "labels": ["x","y"]}"#;
        assert!(parse_quandle_json(labelled).is_ok());
        assert!(parse_quandle_json(r#"{"n": 3, "table": [[0,0],[1,1]]}"#).is_err());
    }
}
