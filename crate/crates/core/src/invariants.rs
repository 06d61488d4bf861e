//! Quandle colorings and the 2-cocycle state-sum invariants Φ±.
//!
//! The group-ring notation is written additively: the weight of a crossing
//! is `s(τ)·φ(x, y)` with `x` the source color, `y` the over color, and `s`
//! the writhe `w` (negative invariant) or the checkerboard sign `ε`
//! (positive invariant). A coloring contributes the sum of its weights and
//! the invariant is the multiset of contributions over all colorings.
//!
//! At a crossing the under-arc on the source side of the over-arc carries
//! `x` and the other under-arc carries `x ∗ y`. The source side is the
//! incoming under-arc when `w = +1` and the outgoing one when `w = −1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chain::Sign;
use crate::diagram::{over_passages, PreparedDiagram};
use crate::error::{Error, Result};
use crate::homology::{cocycle_basis, Cochain2, CoefficientGroup};
use crate::quandle::{Operation, QuandleTable};

/// Environment variable capping sweep parallelism.
pub const THREADS_ENV: &str = "QUANDLE_KIT_THREADS";

/// Arc id → quandle element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring(pub Vec<usize>);

impl Coloring {
    pub fn color(&self, arc: usize) -> usize {
        self.0[arc]
    }
}

/// Arcs meeting at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingArcs {
    pub source: usize,
    pub over: usize,
    pub target: usize,
}

pub fn crossing_arcs(p: &PreparedDiagram, c: usize) -> CrossingArcs {
    let x = p.diagram.crossings()[c];
    let arc = |e: usize| p.arcs.arc_of[e];
    let (under_in, under_out) = (arc(x[0]), arc(x[2]));
    let (source, target) =
        if p.diagram.writhe_sign(c) > 0 { (under_in, under_out) } else { (under_out, under_in) };
    CrossingArcs { source, over: arc(x[1]), target }
}

fn all_crossing_arcs(p: &PreparedDiagram) -> Vec<CrossingArcs> {
    (0..p.diagram.crossing_count()).map(|c| crossing_arcs(p, c)).collect()
}

/// First crossing violating the coloring rule, if any.
pub fn coloring_violation(p: &PreparedDiagram, x: &QuandleTable, rho: &Coloring) -> Option<usize> {
    if rho.0.len() != p.arcs.len() || rho.0.iter().any(|&c| c >= x.n()) {
        return Some(usize::MAX);
    }
    all_crossing_arcs(p)
        .iter()
        .position(|t| x.op(rho.color(t.source), rho.color(t.over)) != rho.color(t.target))
}

pub fn is_coloring(p: &PreparedDiagram, x: &QuandleTable, rho: &Coloring) -> bool {
    coloring_violation(p, x, rho).is_none()
}

/// All colorings, in lexicographic order, by backtracking over arcs.
///
/// Each crossing is checked as soon as its last arc is assigned.
pub fn enumerate_colorings(p: &PreparedDiagram, x: &QuandleTable) -> Vec<Coloring> {
    let arcs = p.arcs.len();
    let n = x.n();
    let mut checks: Vec<Vec<CrossingArcs>> = vec![Vec::new(); arcs];
    for t in all_crossing_arcs(p) {
        checks[t.source.max(t.over).max(t.target)].push(t);
    }
    let mut out = Vec::new();
    let mut colors = vec![0usize; arcs];
    fn go(
        k: usize,
        n: usize,
        x: &QuandleTable,
        checks: &[Vec<CrossingArcs>],
        colors: &mut [usize],
        out: &mut Vec<Coloring>,
    ) {
        if k == colors.len() {
            out.push(Coloring(colors.to_vec()));
            return;
        }
        for v in 0..n {
            colors[k] = v;
            if checks[k].iter().all(|t| x.op(colors[t.source], colors[t.over]) == colors[t.target]) {
                go(k + 1, n, x, checks, colors, out);
            }
        }
    }
    if n > 0 {
        go(0, n, x, &checks, &mut colors, &mut out);
    }
    out
}

/// Exhaustive scan of all `|X|^arcs` assignments.
pub fn brute_force_colorings(p: &PreparedDiagram, x: &QuandleTable) -> Vec<Coloring> {
    let arcs = p.arcs.len();
    let n = x.n();
    let total = (n as u64).checked_pow(arcs as u32).expect("scan size fits in u64");
    (0..total)
        .filter_map(|mut code| {
            let mut colors = vec![0; arcs];
            for slot in colors.iter_mut().rev() {
                *slot = (code % n as u64) as usize;
                code /= n as u64;
            }
            let rho = Coloring(colors);
            is_coloring(p, x, &rho).then_some(rho)
        })
        .collect()
}

/// `ρ ∗ a`: every arc color `c` becomes `c ∗ a`.
pub fn act_coloring(x: &QuandleTable, rho: &Coloring, a: usize) -> Coloring {
    Coloring(rho.0.iter().map(|&c| x.op(c, a)).collect())
}

/// `ρ ∗⁻¹ a`, the inverse action.
pub fn act_coloring_inverse(x: &QuandleTable, rho: &Coloring, a: usize) -> Coloring {
    Coloring(rho.0.iter().map(|&c| x.inv_op(c, a)).collect())
}

/// Crossing sign used as the exponent of the weight in each mode.
pub fn weight_sign(p: &PreparedDiagram, c: usize, mode: Sign) -> i64 {
    match mode {
        Sign::Minus => p.signs.writhe[c] as i64,
        Sign::Plus => p.signs.epsilon[c] as i64,
    }
}

/// `Σ_τ s(τ)·φ(x_τ, y_τ)` reduced into the cochain's group.
pub fn contribution(p: &PreparedDiagram, rho: &Coloring, phi: &Cochain2, mode: Sign) -> Result<i64> {
    let mut total: i128 = 0;
    for c in 0..p.diagram.crossing_count() {
        let t = crossing_arcs(p, c);
        total += weight_sign(p, c, mode) as i128 * phi.get(rho.color(t.source), rho.color(t.over)) as i128;
    }
    let g = phi.coeff();
    let total = match g.modulus() {
        Some(m) => total.rem_euclid(m as i128),
        None => total,
    };
    i64::try_from(total).map_err(|_| Error::Overflow(format!("contribution {total} exceeds i64")))
}

/// Multiset of group elements with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingValue {
    pub coeff: CoefficientGroup,
    pub counts: BTreeMap<i64, u64>,
}

impl GroupRingValue {
    pub fn new(coeff: CoefficientGroup) -> Self {
        Self { coeff, counts: BTreeMap::new() }
    }

    pub fn insert(&mut self, element: i64) {
        *self.counts.entry(self.coeff.reduce(element)).or_insert(0) += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// True iff every contribution is the identity.
    ///
    /// An empty multiset cannot arise from valid inputs (constant colorings
    /// always exist) and is reported as an error.
    pub fn is_trivial(&self) -> Result<bool> {
        if self.counts.is_empty() {
            return Err(Error::NoColorings);
        }
        Ok(self.counts.keys().all(|&k| k == 0))
    }

    /// `[["0", 9]]`-style pairs in ascending element order.
    pub fn to_pairs(&self) -> Vec<(String, u64)> {
        self.counts.iter().map(|(&k, &v)| (self.coeff.format_element(k), v)).collect()
    }
}

impl std::fmt::Display for GroupRingValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self.to_pairs().iter().map(|(k, v)| format!("{v}·[{k}]")).collect();
        f.write_str(&terms.join(" + "))
    }
}

fn check_cochain(x: &QuandleTable, phi: &Cochain2) -> Result<()> {
    if phi.n() != x.n() {
        return Err(Error::InvalidCochain(format!(
            "cochain is on {} elements, quandle has {}",
            phi.n(),
            x.n()
        )));
    }
    Ok(())
}

/// State sum over precomputed colorings.
pub fn state_sum_over(
    p: &PreparedDiagram,
    colorings: &[Coloring],
    phi: &Cochain2,
    mode: Sign,
) -> Result<GroupRingValue> {
    let mut v = GroupRingValue::new(phi.coeff());
    for rho in colorings {
        v.insert(contribution(p, rho, phi, mode)?);
    }
    Ok(v)
}

pub fn state_sum(p: &PreparedDiagram, x: &QuandleTable, phi: &Cochain2, mode: Sign) -> Result<GroupRingValue> {
    check_cochain(x, phi)?;
    state_sum_over(p, &enumerate_colorings(p, x), phi, mode)
}

/// Machine-readable result of one invariant evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantDocument {
    pub quandle: String,
    pub diagram: String,
    pub mode: Sign,
    pub coeff: CoefficientGroup,
    pub colorings: u64,
    pub invariant: Vec<(String, u64)>,
    pub trivial: bool,
}

impl InvariantDocument {
    pub fn new(quandle: &str, diagram: &str, mode: Sign, value: &GroupRingValue) -> Result<Self> {
        Ok(Self {
            quandle: quandle.to_string(),
            diagram: diagram.to_string(),
            mode,
            coeff: value.coeff,
            colorings: value.total(),
            invariant: value.to_pairs(),
            trivial: value.is_trivial()?,
        })
    }
}

/// `Σ_τ ε(τ)·(−2ψ(y_τ) + ψ(x_τ) + ψ(x_τ∗y_τ))` for one coloring.
pub fn epsilon_zero_sum(p: &PreparedDiagram, rho: &Coloring, psi: &[i64]) -> i64 {
    (0..p.diagram.crossing_count())
        .map(|c| {
            let t = crossing_arcs(p, c);
            let s = p.signs.epsilon[c] as i64;
            s * (-2 * psi[rho.color(t.over)] + psi[rho.color(t.source)] + psi[rho.color(t.target)])
        })
        .sum()
}

/// A coloring and element `k` for which the zero-sum identity fails with
/// `ψ` the indicator of `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroSumFailure {
    pub coloring: Coloring,
    pub element: usize,
    pub value: i64,
}

/// Checks the zero-sum identity for every coloring and every `ψ`.
///
/// The sum is linear in `ψ`, so the indicator functions cover all maps.
pub fn epsilon_zero_sum_failure(
    p: &PreparedDiagram,
    n: usize,
    colorings: &[Coloring],
) -> Option<ZeroSumFailure> {
    let mut psi = vec![0i64; n];
    for k in 0..n {
        psi[k] = 1;
        for rho in colorings {
            let value = epsilon_zero_sum(p, rho, &psi);
            if value != 0 {
                return Some(ZeroSumFailure { coloring: rho.clone(), element: k, value });
            }
        }
        psi[k] = 0;
    }
    None
}

/// Two consecutive over-passages of one arc with equal ε.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternationFailure {
    pub arc: usize,
    pub crossings: [usize; 2],
}

pub fn epsilon_alternation_failure(p: &PreparedDiagram) -> Option<AlternationFailure> {
    let eps = &p.signs.epsilon;
    over_passages(&p.diagram, &p.arcs).into_iter().enumerate().find_map(|(arc, seq)| {
        seq.windows(2)
            .find(|w| eps[w[0]] == eps[w[1]])
            .map(|w| AlternationFailure { arc, crossings: [w[0], w[1]] })
    })
}

/// A `(ρ, a)` pair at which an action identity fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionWitness {
    pub coloring: Coloring,
    pub element: usize,
    pub contribution: i64,
    pub acted_contribution: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionReport {
    pub pairs_checked: usize,
    pub failure: Option<ActionWitness>,
}

impl ActionReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

fn action_check(
    p: &PreparedDiagram,
    x: &QuandleTable,
    colorings: &[Coloring],
    phi: &Cochain2,
    ok: impl Fn(i64, i64) -> bool,
) -> Result<ActionReport> {
    check_cochain(x, phi)?;
    let mut pairs_checked = 0;
    for rho in colorings {
        let c0 = contribution(p, rho, phi, Sign::Plus)?;
        for a in 0..x.n() {
            let acted = act_coloring(x, rho, a);
            let c1 = contribution(p, &acted, phi, Sign::Plus)?;
            pairs_checked += 1;
            if !ok(c0, c1) {
                let failure = ActionWitness { coloring: rho.clone(), element: a, contribution: c0, acted_contribution: c1 };
                return Ok(ActionReport { pairs_checked, failure: Some(failure) });
            }
        }
    }
    Ok(ActionReport { pairs_checked, failure: None })
}

/// Positive contributions of `ρ` and `ρ ∗ a` cancel for every pair.
pub fn check_action_cancellation(
    p: &PreparedDiagram,
    x: &QuandleTable,
    colorings: &[Coloring],
    phi: &Cochain2,
) -> Result<ActionReport> {
    let g = phi.coeff();
    action_check(p, x, colorings, phi, |c0, c1| g.reduce(c0 + c1) == 0)
}

/// Positive contributions of `ρ` and `ρ ∗ a` agree for every pair.
pub fn check_action_invariance(
    p: &PreparedDiagram,
    x: &QuandleTable,
    colorings: &[Coloring],
    phi: &Cochain2,
) -> Result<ActionReport> {
    action_check(p, x, colorings, phi, |c0, c1| c0 == c1)
}

/// Runs `f` on a rayon pool sized by [`THREADS_ENV`] when set.
pub fn with_sweep_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let threads = std::env::var(THREADS_ENV).ok().and_then(|s| s.trim().parse::<usize>().ok()).unwrap_or(0);
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// A named diagram in a sweep.
#[derive(Clone, Debug)]
pub struct SweepDiagram {
    pub name: String,
    pub diagram: PreparedDiagram,
}

/// Verdict for one `(X, K, φ)` cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepCell {
    pub quandle: usize,
    pub diagram: String,
    pub basis_index: usize,
    pub cocycle: Vec<Vec<i64>>,
    pub colorings: u64,
    pub invariant: Vec<(String, u64)>,
    pub trivial: bool,
    /// A coloring with a nonzero contribution.
    pub witness: Option<(Coloring, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub mode: Sign,
    pub coeff: CoefficientGroup,
    pub quandles: Vec<Vec<Vec<usize>>>,
    pub cells: Vec<SweepCell>,
}

impl SweepReport {
    pub fn all_trivial(&self) -> bool {
        self.cells.iter().all(|c| c.trivial)
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &SweepCell> {
        self.cells.iter().filter(|c| !c.trivial)
    }
}

fn sweep_cells(
    qi: usize,
    x: &QuandleTable,
    d: &SweepDiagram,
    basis: &[Cochain2],
    mode: Sign,
) -> Result<Vec<SweepCell>> {
    let colorings = enumerate_colorings(&d.diagram, x);
    basis
        .iter()
        .enumerate()
        .map(|(bi, phi)| {
            let mut value = GroupRingValue::new(phi.coeff());
            let mut witness = None;
            for rho in &colorings {
                let c = contribution(&d.diagram, rho, phi, mode)?;
                if c != 0 && witness.is_none() {
                    witness = Some((rho.clone(), c));
                }
                value.insert(c);
            }
            Ok(SweepCell {
                quandle: qi,
                diagram: d.name.clone(),
                basis_index: bi,
                cocycle: phi.rows(),
                colorings: value.total(),
                trivial: value.is_trivial()?,
                invariant: value.to_pairs(),
                witness,
            })
        })
        .collect()
}

/// Evaluates the invariant for every quandle, diagram and basis cocycle.
///
/// Over ℤ a basis of `Z²` suffices since contributions are additive in
/// `φ`; over `ℤ/m` the basis is a spanning set. Cells are ordered by
/// quandle, then diagram, then basis index.
pub fn theorem_sweep(
    quandles: &[QuandleTable],
    diagrams: &[SweepDiagram],
    coeff: CoefficientGroup,
    mode: Sign,
) -> Result<SweepReport> {
    use rayon::prelude::*;
    let bases = quandles.iter().map(|x| cocycle_basis(x, mode, coeff)).collect::<Result<Vec<_>>>()?;
    let tasks: Vec<(usize, usize)> =
        (0..quandles.len()).flat_map(|q| (0..diagrams.len()).map(move |k| (q, k))).collect();
    let chunks = with_sweep_pool(|| {
        tasks
            .par_iter()
            .map(|&(q, k)| sweep_cells(q, &quandles[q], &diagrams[k], &bases[q], mode))
            .collect::<Vec<_>>()
    });
    let mut cells = Vec::new();
    for chunk in chunks {
        cells.extend(chunk?);
    }
    Ok(SweepReport { mode, coeff, quandles: quandles.iter().map(QuandleTable::rows).collect(), cells })
}

/// Outcome of the positive action identities across a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSweepFailure {
    pub quandle: usize,
    pub diagram: String,
    pub basis_index: usize,
    pub identity: String,
    pub witness: ActionWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSweepReport {
    pub pairs_checked: usize,
    pub failures: Vec<ActionSweepFailure>,
}

/// Checks both action identities for every `(X, K, φ ∈ basis Z²_{Q+}(X;ℤ))`.
pub fn action_sweep(quandles: &[QuandleTable], diagrams: &[SweepDiagram]) -> Result<ActionSweepReport> {
    use rayon::prelude::*;
    let tasks: Vec<(usize, usize)> =
        (0..quandles.len()).flat_map(|q| (0..diagrams.len()).map(move |k| (q, k))).collect();
    let results = with_sweep_pool(|| {
        tasks
            .par_iter()
            .map(|&(qi, k)| -> Result<(usize, Vec<ActionSweepFailure>)> {
                let x = &quandles[qi];
                let d = &diagrams[k];
                let colorings = enumerate_colorings(&d.diagram, x);
                let mut pairs = 0;
                let mut failures = Vec::new();
                for (bi, phi) in cocycle_basis(x, Sign::Plus, CoefficientGroup::Integers)?.iter().enumerate() {
                    let checks = [
                        ("cancellation", check_action_cancellation(&d.diagram, x, &colorings, phi)?),
                        ("invariance", check_action_invariance(&d.diagram, x, &colorings, phi)?),
                    ];
                    for (name, report) in checks {
                        pairs += report.pairs_checked;
                        if let Some(witness) = report.failure {
                            failures.push(ActionSweepFailure {
                                quandle: qi,
                                diagram: d.name.clone(),
                                basis_index: bi,
                                identity: name.to_string(),
                                witness,
                            });
                        }
                    }
                }
                Ok((pairs, failures))
            })
            .collect::<Vec<_>>()
    });
    let mut report = ActionSweepReport { pairs_checked: 0, failures: Vec::new() };
    for r in results {
        let (pairs, failures) = r?;
        report.pairs_checked += pairs;
        report.failures.extend(failures);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::corpus_diagram;
    use crate::quandle::{dihedral_quandle, trivial_quandle};

    fn d3() -> QuandleTable {
        dihedral_quandle(3).unwrap()
    }

    #[test]
    fn coloring_counts() {
        let trefoil = corpus_diagram("trefoil").unwrap();
        let fig8 = corpus_diagram("figure8").unwrap();
        assert_eq!(enumerate_colorings(&trefoil, &d3()).len(), 9);
        assert_eq!(enumerate_colorings(&fig8, &d3()).len(), 3);
        let t4 = trivial_quandle(4).unwrap();
        assert_eq!(enumerate_colorings(&trefoil, &t4).len(), 4);
        let unlink = corpus_diagram("unlink2").unwrap();
        assert_eq!(enumerate_colorings(&unlink, &t4).len(), 16);
    }

    #[test]
    fn backtracking_matches_scan() {
        let x = d3();
        for name in ["trefoil", "figure8", "hopf", "trefoil_kinked"] {
            let p = corpus_diagram(name).unwrap();
            assert_eq!(enumerate_colorings(&p, &x), brute_force_colorings(&p, &x), "{name}");
        }
    }

    #[test]
    fn action_permutes_colorings() {
        let x = d3();
        let p = corpus_diagram("trefoil").unwrap();
        let all = enumerate_colorings(&p, &x);
        let mut acted: Vec<Coloring> = all.iter().map(|r| act_coloring(&x, r, 0)).collect();
        acted.sort();
        assert_eq!(acted, all);
        for r in &all {
            assert_eq!(act_coloring_inverse(&x, &act_coloring(&x, r, 2), 2), *r);
        }
        let constant = Coloring(vec![1; 3]);
        assert_eq!(act_coloring(&x, &constant, 0), Coloring(vec![x.op(1, 0); 3]));
    }

    #[test]
    fn zero_cochain_contributes_identity() {
        let x = d3();
        let p = corpus_diagram("figure8").unwrap();
        let v = state_sum(&p, &x, &Cochain2::zero(3, CoefficientGroup::Integers), Sign::Minus).unwrap();
        assert_eq!(v.to_pairs(), vec![("0".to_string(), 3)]);
        assert!(v.is_trivial().unwrap());
    }

    #[test]
    fn triviality_verdicts() {
        let mut v = GroupRingValue::new(CoefficientGroup::Integers);
        assert!(matches!(v.is_trivial(), Err(Error::NoColorings)));
        for _ in 0..2 {
            v.insert(0);
            v.insert(1);
        }
        assert!(!v.is_trivial().unwrap());
        assert_eq!(v.total(), 4);
    }

    #[test]
    fn hopf_link_sees_linking() {
        let t2 = trivial_quandle(2).unwrap();
        let phi = Cochain2::indicator(2, CoefficientGroup::Integers, 0, 1).unwrap();
        let hopf = state_sum(&corpus_diagram("hopf").unwrap(), &t2, &phi, Sign::Minus).unwrap();
        let unlink = state_sum(&corpus_diagram("unlink2").unwrap(), &t2, &phi, Sign::Minus).unwrap();
        assert_eq!(hopf.total(), 4);
        assert!(!hopf.is_trivial().unwrap());
        assert!(unlink.is_trivial().unwrap());
        assert_ne!(hopf, unlink);
    }

    #[test]
    fn document_shape() {
        let x = d3();
        let p = corpus_diagram("trefoil").unwrap();
        let v = state_sum(&p, &x, &Cochain2::zero(3, CoefficientGroup::Integers), Sign::Minus).unwrap();
        let doc = InvariantDocument::new("d3", "trefoil", Sign::Minus, &v).unwrap();
        assert_eq!(
            serde_json::to_string(&doc).unwrap(),
            r#"{"quandle":"d3","diagram":"trefoil","mode":"neg","coeff":"Z","colorings":9,"invariant":[["0",9]],"trivial":true}"#
        );
    }

    #[test]
    fn mismatched_cochain_is_rejected() {
        let p = corpus_diagram("trefoil").unwrap();
        let phi = Cochain2::zero(2, CoefficientGroup::Integers);
        assert!(matches!(state_sum(&p, &d3(), &phi, Sign::Plus), Err(Error::InvalidCochain(_))));
    }
}
