//! Homology and cohomology of the rack, degenerate and quandle complexes,
//! plus quandle 2-cocycles and 2-coboundaries.
//!
//! Over ℤ everything comes from Smith normal forms of the boundary
//! matrices. With `c_n = dim C_n` and `r_n = rank ∂_n`:
//!
//! - `H_n` has free rank `c_n − r_n − r_{n+1}` and the torsion of `coker ∂_{n+1}`;
//! - `H^n` has the same free rank and the torsion of `coker ∂_n`.
//!
//! Over ℚ only the rank is reported. Over ℤ/m the groups follow from the
//! integral ones by the universal coefficient sequences, which split for
//! these free complexes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::chain::{boundary_matrix, Flavor, Sign, TupleBasis};
use crate::error::{Error, Result};
use crate::quandle::{Operation, QuandleTable};
use crate::snf::{hermite_rows, integer_kernel, invariant_factors, smith_normal_form, IntMatrix};

/// Largest degree accepted by the (co)homology entry points.
pub const MAX_HOMOLOGY_DEGREE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientGroup {
    Integers,
    IntegersMod(u64),
    Rationals,
}

impl CoefficientGroup {
    pub fn modulus(self) -> Option<u64> {
        match self {
            CoefficientGroup::IntegersMod(m) => Some(m),
            _ => None,
        }
    }

    /// Canonical representative of `v` in the group.
    pub fn reduce(self, v: i64) -> i64 {
        match self {
            CoefficientGroup::IntegersMod(m) => v.rem_euclid(m as i64),
            _ => v,
        }
    }

    pub fn format_element(self, v: i64) -> String {
        self.reduce(v).to_string()
    }
}

impl fmt::Display for CoefficientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientGroup::Integers => f.write_str("Z"),
            CoefficientGroup::Rationals => f.write_str("Q"),
            CoefficientGroup::IntegersMod(m) => write!(f, "Z{m}"),
        }
    }
}

impl FromStr for CoefficientGroup {
    type Err = Error;

    /// Accepts `Z`, `Q`, `Z<m>`, `Z/<m>` and `Zmod<m>` with `m ≥ 2`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" | "z" => return Ok(CoefficientGroup::Integers),
            "Q" | "q" => return Ok(CoefficientGroup::Rationals),
            _ => {}
        }
        let digits = t
            .strip_prefix("Zmod")
            .or_else(|| t.strip_prefix("Z/"))
            .or_else(|| t.strip_prefix('Z'))
            .ok_or_else(|| Error::Coefficient(s.to_string()))?;
        match digits.parse::<u64>() {
            Ok(m) if (2..=i64::MAX as u64).contains(&m) => Ok(CoefficientGroup::IntegersMod(m)),
            _ => Err(Error::Coefficient(s.to_string())),
        }
    }
}

impl Serialize for CoefficientGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CoefficientGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A finitely generated abelian group `ℤ^r ⊕ ℤ/t1 ⊕ … ⊕ ℤ/tk` with
/// `t1 | t2 | …` and every `ti > 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupDescriptor {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroupDescriptor {
    /// Canonical form of `ℤ^free_rank ⊕ ⊕ ℤ/c` for arbitrary cyclic orders
    /// (orders 0 are ignored here; orders 1 vanish).
    pub fn from_cyclic(free_rank: usize, orders: &[u64]) -> Self {
        Self { free_rank, torsion: invariant_factor_form(orders) }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Prime-power decomposition of the torsion part, sorted.
    pub fn elementary_divisors(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .torsion
            .iter()
            .flat_map(|&t| factorize(t).into_iter().map(|(p, e)| p.pow(e)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Order of the group when finite.
    pub fn order(&self) -> Option<u128> {
        (self.free_rank == 0).then(|| self.torsion.iter().map(|&t| t as u128).product())
    }
}

impl fmt::Display for AbelianGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn invariant_factor_form(orders: &[u64]) -> Vec<u64> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &o in orders.iter().filter(|&&o| o > 1) {
        for (p, e) in factorize(o) {
            by_prime.entry(p).or_default().push(p.pow(e));
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        // largest powers go to the last factors
        for (k, q) in powers.iter().enumerate() {
            out[len - 1 - k] *= q;
        }
    }
    out
}

fn to_u64(v: &BigInt) -> Result<u64> {
    v.to_u64().ok_or_else(|| Error::Overflow(format!("{v} does not fit in u64")))
}

fn to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64().ok_or_else(|| Error::Overflow(format!("{v} does not fit in i64")))
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 || n > MAX_HOMOLOGY_DEGREE {
        return Err(Error::UnsupportedDegree(n));
    }
    Ok(())
}

struct DegreeData {
    dim: usize,
    rank_in: usize,
    rank_out: usize,
    // invariant factors of ∂_n and ∂_{n+1}
    factors_in: Vec<u64>,
    factors_out: Vec<u64>,
}

fn degree_data<X: Operation + ?Sized>(x: &X, flavor: Flavor, sign: Sign, n: usize) -> Result<DegreeData> {
    let dim = TupleBasis::new(x.order(), n, flavor).len();
    let d_in = invariant_factors(&boundary_matrix(x, n, sign, flavor).to_int_matrix());
    let d_out = invariant_factors(&boundary_matrix(x, n + 1, sign, flavor).to_int_matrix());
    Ok(DegreeData {
        dim,
        rank_in: d_in.len(),
        rank_out: d_out.len(),
        factors_in: d_in.iter().map(to_u64).collect::<Result<_>>()?,
        factors_out: d_out.iter().map(to_u64).collect::<Result<_>>()?,
    })
}

fn integral_homology<X: Operation + ?Sized>(
    x: &X,
    flavor: Flavor,
    sign: Sign,
    n: usize,
) -> Result<AbelianGroupDescriptor> {
    if n == 0 {
        return Ok(AbelianGroupDescriptor::default());
    }
    let d = degree_data(x, flavor, sign, n)?;
    Ok(AbelianGroupDescriptor::from_cyclic(d.dim - d.rank_in - d.rank_out, &d.factors_out))
}

fn integral_cohomology<X: Operation + ?Sized>(
    x: &X,
    flavor: Flavor,
    sign: Sign,
    n: usize,
) -> Result<AbelianGroupDescriptor> {
    let d = degree_data(x, flavor, sign, n)?;
    Ok(AbelianGroupDescriptor::from_cyclic(d.dim - d.rank_in - d.rank_out, &d.factors_in))
}

fn gcd_orders(group: &AbelianGroupDescriptor, m: u64) -> Vec<u64> {
    group.torsion.iter().map(|&t| t.gcd(&m)).collect()
}

/// `H_n` of the chosen complex with coefficients in `coeff`.
///
/// Over ℤ/m the result is a finite group, reported with `free_rank = 0`.
pub fn homology_group<X: Operation + ?Sized>(
    x: &X,
    flavor: Flavor,
    sign: Sign,
    n: usize,
    coeff: CoefficientGroup,
) -> Result<AbelianGroupDescriptor> {
    check_degree(n)?;
    let h = integral_homology(x, flavor, sign, n)?;
    Ok(match coeff {
        CoefficientGroup::Integers => h,
        CoefficientGroup::Rationals => AbelianGroupDescriptor { free_rank: h.free_rank, torsion: vec![] },
        CoefficientGroup::IntegersMod(m) => {
            // H_n ⊗ ℤ/m ⊕ Tor(H_{n-1}, ℤ/m)
            let below = integral_homology(x, flavor, sign, n - 1)?;
            let mut orders = vec![m; h.free_rank];
            orders.extend(gcd_orders(&h, m));
            orders.extend(gcd_orders(&below, m));
            AbelianGroupDescriptor::from_cyclic(0, &orders)
        }
    })
}

/// `H^n` of the chosen cochain complex with coefficients in `coeff`.
pub fn cohomology_group<X: Operation + ?Sized>(
    x: &X,
    flavor: Flavor,
    sign: Sign,
    n: usize,
    coeff: CoefficientGroup,
) -> Result<AbelianGroupDescriptor> {
    check_degree(n)?;
    let h = integral_cohomology(x, flavor, sign, n)?;
    Ok(match coeff {
        CoefficientGroup::Integers => h,
        CoefficientGroup::Rationals => AbelianGroupDescriptor { free_rank: h.free_rank, torsion: vec![] },
        CoefficientGroup::IntegersMod(m) => {
            // Hom(H_n, ℤ/m) ⊕ Ext(H_{n-1}, ℤ/m)
            let hn = integral_homology(x, flavor, sign, n)?;
            let below = integral_homology(x, flavor, sign, n - 1)?;
            let mut orders = vec![m; hn.free_rank];
            orders.extend(gcd_orders(&hn, m));
            orders.extend(gcd_orders(&below, m));
            AbelianGroupDescriptor::from_cyclic(0, &orders)
        }
    })
}

/// Rank and torsion comparison of `H_n^R` against `H_n^D ⊕ H_n^Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCheck {
    pub rack: AbelianGroupDescriptor,
    pub degenerate: AbelianGroupDescriptor,
    pub quandle: AbelianGroupDescriptor,
    pub ranks_add_up: bool,
    pub torsion_compatible: bool,
}

impl SplitCheck {
    pub fn holds(&self) -> bool {
        self.ranks_add_up && self.torsion_compatible
    }
}

pub fn rank_split_report(x: &QuandleTable, n: usize, sign: Sign) -> Result<SplitCheck> {
    let z = CoefficientGroup::Integers;
    let rack = homology_group(x, Flavor::Rack, sign, n, z)?;
    let degenerate = homology_group(x, Flavor::Degenerate, sign, n, z)?;
    let quandle = homology_group(x, Flavor::Quandle, sign, n, z)?;
    let ranks_add_up = rack.free_rank == degenerate.free_rank + quandle.free_rank;
    let mut sum = degenerate.elementary_divisors();
    sum.extend(quandle.elementary_divisors());
    sum.sort_unstable();
    let torsion_compatible = rack.elementary_divisors() == sum;
    Ok(SplitCheck { rack, degenerate, quandle, ranks_add_up, torsion_compatible })
}

/// True iff `H_n^R ≅ H_n^D ⊕ H_n^Q` at the level of ranks and torsion.
pub fn rank_split_check(x: &QuandleTable, n: usize, sign: Sign) -> Result<bool> {
    Ok(rank_split_report(x, n, sign)?.holds())
}

/// A quandle 2-cochain `φ: X × X → G` with `φ(a, a) = 0`.
///
/// Values are stored as integers; for `ℤ/m` they are kept reduced into
/// `0..m`. A cochain tagged ℚ holds integral values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain2 {
    coeff: CoefficientGroup,
    n: usize,
    values: Vec<i64>,
}

impl Cochain2 {
    pub fn zero(n: usize, coeff: CoefficientGroup) -> Self {
        Self { coeff, n, values: vec![0; n * n] }
    }

    pub fn from_rows(coeff: CoefficientGroup, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut values = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCochain(format!("row {a} has length {}, expected {n}", row.len())));
            }
            for (b, &v) in row.iter().enumerate() {
                let v = coeff.reduce(v);
                if a == b && v != 0 {
                    return Err(Error::InvalidCochain(format!("diagonal entry ({a},{a}) is {v}, must be 0")));
                }
                values.push(v);
            }
        }
        Ok(Self { coeff, n, values })
    }

    /// Indicator of the single off-diagonal pair `(a, b)`.
    pub fn indicator(n: usize, coeff: CoefficientGroup, a: usize, b: usize) -> Result<Self> {
        if a == b || a >= n || b >= n {
            return Err(Error::InvalidCochain(format!("({a},{b}) is not an off-diagonal pair")));
        }
        let mut c = Self::zero(n, coeff);
        c.values[a * n + b] = 1;
        Ok(c)
    }

    fn from_pair_vector(n: usize, coeff: CoefficientGroup, pairs: &TupleBasis, v: &[i64]) -> Self {
        let mut c = Self::zero(n, coeff);
        for (t, &val) in pairs.tuples().iter().zip(v) {
            c.values[t[0] * n + t[1]] = coeff.reduce(val);
        }
        c
    }

    fn pair_vector(&self, pairs: &TupleBasis) -> Vec<BigInt> {
        pairs.tuples().iter().map(|t| BigInt::from(self.get(t[0], t[1]))).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self) -> CoefficientGroup {
        self.coeff
    }

    pub fn get(&self, a: usize, b: usize) -> i64 {
        self.values[a * self.n + b]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.values.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Cochain2) -> Cochain2 {
        assert_eq!(self.n, other.n, "cochains on different quandles");
        let values =
            self.values.iter().zip(&other.values).map(|(a, b)| self.coeff.reduce(a + b)).collect();
        Cochain2 { coeff: self.coeff, n: self.n, values }
    }

    pub fn scale(&self, k: i64) -> Cochain2 {
        let values = self.values.iter().map(|v| self.coeff.reduce(v * k)).collect();
        Cochain2 { coeff: self.coeff, n: self.n, values }
    }

    /// Same values read in another coefficient group.
    pub fn with_coeff(&self, coeff: CoefficientGroup) -> Cochain2 {
        let values = self.values.iter().map(|&v| coeff.reduce(v)).collect();
        Cochain2 { coeff, n: self.n, values }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CochainFile { coeff: self.coeff, values: self.rows() })
            .expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: CochainFile = serde_json::from_str(text)?;
        Self::from_rows(f.coeff, &f.values)
    }
}

/// On-disk cochain document: `{"coeff": "Z", "values": [[0, 1], [-1, 0]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CochainFile {
    pub coeff: CoefficientGroup,
    pub values: Vec<Vec<i64>>,
}

/// First triple at which the printed 2-cocycle identity fails, if any.
///
/// negative: `φ(x,z) − φ(x∗y,z) − φ(x,y) + φ(x∗z,y∗z) = 0`
///
/// positive: `−2φ(y,z) + φ(x,z) + φ(x∗y,z) − φ(x,y) − φ(x∗z,y∗z) = 0`
pub fn cocycle_violation(x: &QuandleTable, phi: &Cochain2, sign: Sign) -> Option<[usize; 3]> {
    let n = x.n();
    let g = phi.coeff();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (ab, ac, bc) = (x.op(a, b), x.op(a, c), x.op(b, c));
                let v = match sign {
                    Sign::Minus => phi.get(a, c) - phi.get(ab, c) - phi.get(a, b) + phi.get(ac, bc),
                    Sign::Plus => {
                        -2 * phi.get(b, c) + phi.get(a, c) + phi.get(ab, c)
                            - phi.get(a, b)
                            - phi.get(ac, bc)
                    }
                };
                if g.reduce(v) != 0 {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

pub fn is_cocycle(x: &QuandleTable, phi: &Cochain2, sign: Sign) -> bool {
    cocycle_violation(x, phi, sign).is_none()
}

/// `δψ` for a 1-cochain `ψ: X → G`:
/// negative `ψ(x) − ψ(x∗y)`, positive `ψ(x) + ψ(x∗y) − 2ψ(y)`.
pub fn coboundary_of(x: &QuandleTable, psi: &[i64], sign: Sign, coeff: CoefficientGroup) -> Cochain2 {
    let n = x.n();
    assert_eq!(psi.len(), n, "1-cochain length must equal the quandle order");
    let mut c = Cochain2::zero(n, coeff);
    for a in 0..n {
        for b in 0..n {
            let v = match sign {
                Sign::Minus => psi[a] - psi[x.op(a, b)],
                Sign::Plus => psi[a] + psi[x.op(a, b)] - 2 * psi[b],
            };
            c.values[a * n + b] = coeff.reduce(v);
        }
    }
    c
}

fn require_discrete(coeff: CoefficientGroup) -> Result<()> {
    if coeff == CoefficientGroup::Rationals {
        return Err(Error::Coefficient("Q (cocycle bases need Z or Z/m)".into()));
    }
    Ok(())
}

/// Matrix of `δ²: C²_Q → C³_Q`, rows indexed by non-degenerate triples.
fn delta2(x: &QuandleTable, sign: Sign) -> IntMatrix {
    boundary_matrix(x, 3, sign, Flavor::Quandle).to_int_matrix().transpose()
}

/// Matrix of `δ¹: C¹ → C²_Q`, rows indexed by non-degenerate pairs.
fn delta1(x: &QuandleTable, sign: Sign) -> IntMatrix {
    boundary_matrix(x, 2, sign, Flavor::Quandle).to_int_matrix().transpose()
}

fn vectors_to_cochains(
    x: &QuandleTable,
    coeff: CoefficientGroup,
    vectors: &[Vec<BigInt>],
) -> Result<Vec<Cochain2>> {
    let pairs = TupleBasis::new(x.n(), 2, Flavor::Quandle);
    let mut out = Vec::new();
    for v in vectors {
        let small: Vec<i64> = match coeff.modulus() {
            Some(m) => v.iter().map(|e| to_i64(&e.mod_floor(&BigInt::from(m)))).collect::<Result<_>>()?,
            None => v.iter().map(to_i64).collect::<Result<_>>()?,
        };
        let c = Cochain2::from_pair_vector(x.n(), coeff, &pairs, &small);
        if !c.is_zero() && !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Generators of `Z²_{Q±}(X; G)`.
///
/// Over ℤ this is a lattice basis of the integral kernel of `δ²` in Hermite
/// form. Over ℤ/m it is a spanning set: the free kernel directions of the
/// integral Smith form plus the `m`-torsion lifts `(m / gcd(d_i, m))·v_i`.
pub fn cocycle_basis(x: &QuandleTable, sign: Sign, coeff: CoefficientGroup) -> Result<Vec<Cochain2>> {
    require_discrete(coeff)?;
    let d2 = delta2(x, sign);
    match coeff.modulus() {
        None => vectors_to_cochains(x, coeff, &integer_kernel(&d2)),
        Some(m) => {
            let snf = smith_normal_form(&d2);
            let diag = snf.diagonal();
            let r = snf.rank();
            let big_m = BigInt::from(m);
            let mut gens = Vec::new();
            for j in 0..d2.cols() {
                let col = snf.v.column(j);
                if j >= r {
                    gens.push(col);
                } else {
                    let g = diag[j].gcd(&big_m);
                    if g > BigInt::from(1) {
                        let k = &big_m / &g;
                        gens.push(col.into_iter().map(|e| e * &k).collect());
                    }
                }
            }
            vectors_to_cochains(x, coeff, &gens)
        }
    }
}

/// Generators of `B²_{Q±}(X; G)`: a lattice basis over ℤ, the images
/// `δ(e_x)` over ℤ/m.
pub fn coboundary_basis(x: &QuandleTable, sign: Sign, coeff: CoefficientGroup) -> Result<Vec<Cochain2>> {
    require_discrete(coeff)?;
    let d1 = delta1(x, sign);
    let images: Vec<Vec<BigInt>> = (0..d1.cols()).map(|j| d1.column(j)).collect();
    match coeff.modulus() {
        None => vectors_to_cochains(x, coeff, &hermite_rows(images)),
        Some(_) => vectors_to_cochains(x, coeff, &images),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassOrder {
    Finite(u64),
    Infinite,
}

/// Least `k ≥ 1` with `k·φ` an integral coboundary.
pub fn cohomology_class_order(x: &QuandleTable, phi: &Cochain2, sign: Sign) -> Result<ClassOrder> {
    if phi.coeff() != CoefficientGroup::Integers {
        return Err(Error::Coefficient(format!("{} (class orders are computed over Z)", phi.coeff())));
    }
    let d1 = delta1(x, sign);
    let snf = smith_normal_form(&d1);
    let pairs = TupleBasis::new(x.n(), 2, Flavor::Quandle);
    let w = snf.u.mul_vec(&phi.pair_vector(&pairs));
    let diag = snf.diagonal();
    let mut k = BigInt::from(1);
    for (i, wi) in w.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_default();
        if d.is_zero() {
            if !wi.is_zero() {
                return Ok(ClassOrder::Infinite);
            }
        } else {
            let need = &d / d.gcd(wi);
            k = k.lcm(&need);
        }
    }
    Ok(ClassOrder::Finite(to_u64(&k)?))
}

/// `φ` restricted to the image of `embedding` (sub index → X index).
pub fn restrict_cocycle(phi: &Cochain2, embedding: &[usize]) -> Cochain2 {
    let k = embedding.len();
    let mut c = Cochain2::zero(k, phi.coeff());
    for (i, &a) in embedding.iter().enumerate() {
        for (j, &b) in embedding.iter().enumerate() {
            c.values[i * k + j] = phi.get(a, b);
        }
    }
    c
}
