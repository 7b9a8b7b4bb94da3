//! Matrix mutation, quasi-Cartan companions, the δ invariant and a
//! breadth-first scanner over mutation classes.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2forms::{classify_quadratic, q_from_skew, q_from_sym_even, F2Matrix, FormClass};
use crate::int::Int;
use crate::matrices::{det_exact, IntMatrix, SkewSymMatrix, SymEvenMatrix};
use crate::normalform::{reduce_mod4, CanonicalParams};

/// Mutation directions, 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MutationSequence(Vec<usize>);

impl MutationSequence {
    pub fn new(directions: Vec<usize>) -> Self {
        MutationSequence(directions)
    }

    pub fn directions(&self) -> &[usize] {
        &self.0
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&k| k == 0 || k > n) {
            Some(&k) => Err(Error::IndexOutOfRange { k, n }),
            None => Ok(()),
        }
    }
}

impl FromStr for MutationSequence {
    type Err = String;

    /// Comma-separated directions, e.g. `1,2,1`. Empty input is the empty sequence.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(MutationSequence::default());
        }
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| format!("bad direction {t:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(MutationSequence)
    }
}

impl fmt::Display for MutationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Signs `ε[i][j] = ε[j][i] ∈ {+1, -1}` for the off-diagonal entries of a
/// companion. Diagonal entries are stored as `+1` and never read.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignChoice {
    n: usize,
    signs: Vec<i8>,
}

impl SignChoice {
    pub fn new(rows: Vec<Vec<i8>>) -> Result<Self> {
        let n = rows.len();
        let mut signs = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidSigns(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, &e) in row.iter().enumerate() {
                if i == j {
                    signs.push(1);
                    continue;
                }
                if e != 1 && e != -1 {
                    return Err(Error::InvalidSigns(format!("entry ({i},{j}) is {e}, expected +1 or -1")));
                }
                if rows[j].get(i) != Some(&e) {
                    return Err(Error::InvalidSigns(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
                signs.push(e);
            }
        }
        Ok(SignChoice { n, signs })
    }

    /// Reads signs from an integer matrix; diagonal entries are ignored.
    pub fn from_matrix(m: &IntMatrix) -> Result<Self> {
        let rows = (0..m.n())
            .map(|i| {
                (0..m.n())
                    .map(|j| if i == j { 1 } else { m.get(i, j).to_i64().map_or(0, |x| x.clamp(-2, 2) as i8) })
                    .collect()
            })
            .collect();
        SignChoice::new(rows)
    }

    pub fn constant(n: usize, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1);
        SignChoice { n, signs: (0..n * n).map(|c| if c / n == c % n { 1 } else { sign }).collect() }
    }

    pub fn all_plus(n: usize) -> Self {
        SignChoice::constant(n, 1)
    }

    pub fn all_minus(n: usize) -> Self {
        SignChoice::constant(n, -1)
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut signs = vec![1i8; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let e = if rng.gen::<bool>() { 1 } else { -1 };
                signs[i * n + j] = e;
                signs[j * n + i] = e;
            }
        }
        SignChoice { n, signs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.signs[i * self.n + j]
    }
}

fn mutate_entries(b: &IntMatrix, k: usize) -> IntMatrix {
    let n = b.n();
    IntMatrix::from_fn(n, |i, j| {
        let bij = b.get(i, j);
        if i == k || j == k {
            return -bij;
        }
        let (bik, bkj) = (b.get(i, k), b.get(k, j));
        let plus = bik.positive_part() * bkj.positive_part();
        let minus = (-bik).positive_part() * (-bkj).positive_part();
        bij + plus - minus
    })
}

/// `μ_k(B)` with `k` 1-based.
pub fn mutate(b: &SkewSymMatrix, k: usize) -> Result<SkewSymMatrix> {
    let n = b.n();
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { k, n });
    }
    SkewSymMatrix::new(mutate_entries(b.as_matrix(), k - 1))
        .map_err(|e| Error::InternalInconsistency(format!("mutation broke skew-symmetry: {e}")))
}

pub fn mutate_seq(b: &SkewSymMatrix, seq: &MutationSequence) -> Result<SkewSymMatrix> {
    seq.validate(b.n())?;
    seq.directions().iter().try_fold(b.clone(), |acc, &k| mutate(&acc, k))
}

/// `𝔖(B) = V(B) + V(B)ᵀ`: diagonal 2, upper triangle copied from `B`.
pub fn standard_companion(b: &SkewSymMatrix) -> SymEvenMatrix {
    let m = IntMatrix::from_fn(b.n(), |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Int::from(2),
        std::cmp::Ordering::Less => b.get(i, j).clone(),
        std::cmp::Ordering::Greater => b.get(j, i).clone(),
    });
    SymEvenMatrix::new(m).expect("standard companion is symmetric with diagonal 2")
}

/// `A[i][i] = 2`, `A[i][j] = ε[i][j]·|B[i][j]|`.
pub fn companion_with_signs(b: &SkewSymMatrix, eps: &SignChoice) -> Result<SymEvenMatrix> {
    if eps.n() != b.n() {
        return Err(Error::DimensionMismatch { left: b.n(), right: eps.n() });
    }
    let m = IntMatrix::from_fn(b.n(), |i, j| {
        if i == j {
            Int::from(2)
        } else {
            let a = b.get(i, j).abs();
            if eps.get(i, j) < 0 {
                -a
            } else {
                a
            }
        }
    });
    Ok(SymEvenMatrix::new(m).expect("signed companion is symmetric with diagonal 2"))
}

pub fn is_companion(a: &SymEvenMatrix, b: &SkewSymMatrix) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: b.n() });
    }
    let two = Int::from(2);
    Ok((0..a.n())
        .all(|i| (0..a.n()).all(|j| if i == j { *a.get(i, i) == two } else { a.get(i, j).abs() == b.get(i, j).abs() })))
}

/// `det 𝔖(B) mod 4`.
pub fn delta(b: &SkewSymMatrix) -> u8 {
    det_exact(standard_companion(b).as_matrix()).rem_euclid(4) as u8
}

/// Whether δ separates two skew matrices whose reductions mod 2 have equal
/// rank, together with the structural criterion that predicts it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaDiscrepancy {
    pub differs: bool,
    pub criterion: bool,
    pub delta_left: u8,
    pub delta_right: u8,
    pub rank_mod2: usize,
    /// `1` iff `Q_B` is nonzero somewhere on `ker B̄`.
    pub radical_value_left: u8,
    pub radical_value_right: u8,
    pub explanation: String,
}

fn radical_value_name(v: u8) -> &'static str {
    if v == 0 {
        "{0}"
    } else {
        "F2"
    }
}

/// Compares `δ(B)` and `δ(B₂)` and evaluates the criterion `n` odd,
/// `rank B̄ = n - 1` and `Q_B(V̄₀) ≠ Q_{B₂}(V̄₀')`. The two must agree;
/// disagreement is reported as an internal inconsistency.
pub fn delta_discrepancy(b: &SkewSymMatrix, b2: &SkewSymMatrix) -> Result<DeltaDiscrepancy> {
    if b.n() != b2.n() {
        return Err(Error::DimensionMismatch { left: b.n(), right: b2.n() });
    }
    let n = b.n();
    let rank = F2Matrix::from_int_matrix(b.as_matrix()).rank();
    let rank2 = F2Matrix::from_int_matrix(b2.as_matrix()).rank();
    if rank != rank2 {
        return Err(Error::RankMismatch { left: rank, right: rank2 });
    }
    let (d, d2) = (delta(b), delta(b2));
    let rv = classify_quadratic(&q_from_skew(b)).radical_value;
    let rv2 = classify_quadratic(&q_from_skew(b2)).radical_value;
    let criterion = n % 2 == 1 && rank + 1 == n && rv != rv2;
    let explanation = if criterion {
        format!(
            "criterion met: n = {n} odd, rank {rank} = n-1, Q_B(V0)={}, Q_B'(V0')={}",
            radical_value_name(rv),
            radical_value_name(rv2)
        )
    } else if n.is_multiple_of(2) {
        format!("criterion not met: n = {n} even")
    } else if rank + 1 != n {
        format!("criterion not met: rank {rank} != n-1 = {}", n - 1)
    } else {
        format!("criterion not met: Q_B(V0) = Q_B'(V0') = {}", radical_value_name(rv))
    };
    if criterion != (d != d2) {
        return Err(Error::InternalInconsistency(format!(
            "delta values {d} and {d2} disagree with the criterion ({explanation})"
        )));
    }
    Ok(DeltaDiscrepancy {
        differs: d != d2,
        criterion,
        delta_left: d,
        delta_right: d2,
        rank_mod2: rank,
        radical_value_left: rv,
        radical_value_right: rv2,
        explanation,
    })
}

/// Checks that `Q_B` and `q_A` are the same form on the standard basis.
pub fn companion_q_coincidence(b: &SkewSymMatrix, a: &SymEvenMatrix) -> Result<bool> {
    if !is_companion(a, b)? {
        return Err(Error::NotACompanion);
    }
    Ok(q_from_skew(b) == q_from_sym_even(a))
}

/// Limits and sampling for [`scan_class_with`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    pub max_depth: usize,
    pub max_nodes: usize,
    /// Random sign choices per node, on top of all-plus and all-minus.
    pub random_signs: usize,
    pub seed: u64,
    /// Reduce every sampled companion and check that equal `m` means equal
    /// normal form.
    pub check_congruence: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { max_depth: 6, max_nodes: 10_000, random_signs: 8, seed: 0, check_congruence: true }
    }
}

/// Aggregated invariants over the visited part of a mutation class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassScanReport {
    pub visited: usize,
    pub depth_reached: usize,
    pub delta_values: BTreeSet<u8>,
    pub form_classes: BTreeSet<FormClass>,
    pub companion_det_mod4: BTreeSet<u8>,
    pub involution_violations: usize,
    /// Sampled companions whose normal form differs from an earlier one
    /// with the same `m`.
    pub congruence_violations: usize,
    /// Values of `m` seen across sampled companions.
    pub m_values: BTreeSet<usize>,
    pub truncated: bool,
}

impl ClassScanReport {
    /// Every invariant is constant over the scan and no check failed.
    pub fn is_consistent(&self) -> bool {
        self.delta_values.len() <= 1
            && self.form_classes.len() <= 1
            && self.companion_det_mod4.len() <= 1
            && self.involution_violations == 0
            && self.congruence_violations == 0
    }
}

pub fn scan_class(b: &SkewSymMatrix, max_depth: usize, max_nodes: usize) -> ClassScanReport {
    scan_class_with(b, &ScanConfig { max_depth, max_nodes, ..ScanConfig::default() })
}

/// Breadth-first scan, directions `1..=n` in order, deduplicating by exact
/// equality. `truncated` is set when the node cap or the depth limit leaves
/// some neighbour unvisited.
pub fn scan_class_with(b: &SkewSymMatrix, config: &ScanConfig) -> ClassScanReport {
    let n = b.n();
    let max_nodes = config.max_nodes.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = ClassScanReport::default();
    let mut by_m: BTreeMap<usize, CanonicalParams> = BTreeMap::new();

    let mut seen: HashSet<IntMatrix> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(b.as_matrix().clone());
    queue.push_back((b.clone(), 0usize));

    while let Some((node, depth)) = queue.pop_front() {
        report.visited += 1;
        report.depth_reached = report.depth_reached.max(depth);
        report.delta_values.insert(delta(&node));
        report.form_classes.insert(classify_quadratic(&q_from_skew(&node)));

        let mut signs = vec![SignChoice::all_plus(n), SignChoice::all_minus(n)];
        signs.extend((0..config.random_signs).map(|_| SignChoice::random(n, &mut rng)));
        for eps in &signs {
            let a = companion_with_signs(&node, eps).expect("dimensions agree");
            report.companion_det_mod4.insert(det_exact(a.as_matrix()).rem_euclid(4) as u8);
            if config.check_congruence {
                match reduce_mod4(&a) {
                    Ok(r) => {
                        report.m_values.insert(r.params.m);
                        let first = *by_m.entry(r.params.m).or_insert(r.params);
                        if first != r.params {
                            report.congruence_violations += 1;
                        }
                    }
                    Err(_) => report.congruence_violations += 1,
                }
            }
        }

        for k in 1..=n {
            let child = mutate(&node, k).expect("direction in range");
            if mutate(&child, k).ok().as_ref() != Some(&node) {
                report.involution_violations += 1;
            }
            if seen.contains(child.as_matrix()) {
                continue;
            }
            if depth >= config.max_depth || seen.len() >= max_nodes {
                report.truncated = true;
                continue;
            }
            seen.insert(child.as_matrix().clone());
            queue.push_back((child, depth + 1));
        }
    }
    report
}
