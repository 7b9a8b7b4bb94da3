//! Congruence normal forms modulo 4.
//!
//! Every symmetric integer matrix with even diagonal is congruent, by an
//! integer matrix of determinant ±1, to a block-diagonal matrix mod 4 built
//! from `r` copies of `[[2,1],[1,2]]`, `s` of `[[0,1],[1,0]]`, `t` of
//! `[[0,2],[2,0]]`, `p` of `[2]` and `m` of `[0]`. [`reduce_mod4`] finds such
//! a form with an explicit witness and then moves to the unique
//! representative with `p = 0, r ≤ 1` or `p ∈ {1,2}, r = 0`.

mod basis;
mod oracle;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use basis::BlockBasis;
pub use oracle::{brute_force_congruent_mod4, brute_force_orbit_mod4, invertible_mod4, ORACLE_MAX_N};

use crate::error::{Error, Result};
use crate::f2forms::{alternating_reduce, classify_form, radical_dims, F2Matrix, FormClass};
use crate::matrices::{det_exact, IntMatrix, SymEvenMatrix, UnimodularTransform};
use basis::WorkingBasis;

/// Block multiplicities of a normal form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalFormParams {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub p: usize,
    pub m: usize,
}

impl NormalFormParams {
    pub fn new(r: usize, s: usize, t: usize, p: usize, m: usize) -> Self {
        NormalFormParams { r, s, t, p, m }
    }

    pub fn dim(&self) -> usize {
        2 * (self.r + self.s + self.t) + self.p + self.m
    }

    /// `(r,s,t,p,m) ↦ (r,s,t+1,p-2,m)`; needs `p ≥ 3`.
    pub fn lower_p(&self) -> Result<Self> {
        if self.p < 3 {
            return Err(Error::PreconditionFailed { op: "lower_p", detail: format!("p = {} < 3", self.p) });
        }
        Ok(NormalFormParams { t: self.t + 1, p: self.p - 2, ..*self })
    }

    /// `(r,s,…) ↦ (r-2,s+2,…)`; needs `r ≥ 2`.
    pub fn lower_r(&self) -> Result<Self> {
        if self.r < 2 {
            return Err(Error::PreconditionFailed { op: "lower_r", detail: format!("r = {} < 2", self.r) });
        }
        Ok(NormalFormParams { r: self.r - 2, s: self.s + 2, ..*self })
    }

    /// `(r,s,…) ↦ (r-1,s+1,…)`; needs `p ≥ 1` and `r ≥ 1`.
    pub fn swap_r_to_s(&self) -> Result<Self> {
        if self.p == 0 || self.r == 0 {
            return Err(Error::PreconditionFailed {
                op: "swap_r_to_s",
                detail: format!("needs p >= 1 and r >= 1, got p = {}, r = {}", self.p, self.r),
            });
        }
        Ok(NormalFormParams { r: self.r - 1, s: self.s + 1, ..*self })
    }

    pub fn is_canonical(&self) -> bool {
        (self.p == 0 && self.r <= 1) || ((1..=2).contains(&self.p) && self.r == 0)
    }
}

impl fmt::Display for NormalFormParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, s={}, t={}, p={}, m={})", self.r, self.s, self.t, self.p, self.m)
    }
}

/// Normal-form parameters in canonical position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "NormalFormParams", into = "NormalFormParams")]
pub struct CanonicalParams(NormalFormParams);

impl CanonicalParams {
    pub fn new(params: NormalFormParams) -> Result<Self> {
        if params.is_canonical() {
            Ok(CanonicalParams(params))
        } else {
            Err(Error::PreconditionFailed { op: "CanonicalParams::new", detail: format!("{params} is not canonical") })
        }
    }

    pub fn params(&self) -> NormalFormParams {
        self.0
    }
}

impl std::ops::Deref for CanonicalParams {
    type Target = NormalFormParams;
    fn deref(&self) -> &NormalFormParams {
        &self.0
    }
}

impl TryFrom<NormalFormParams> for CanonicalParams {
    type Error = Error;
    fn try_from(p: NormalFormParams) -> Result<Self> {
        CanonicalParams::new(p)
    }
}

impl From<CanonicalParams> for NormalFormParams {
    fn from(c: CanonicalParams) -> Self {
        c.0
    }
}

impl fmt::Display for CanonicalParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Same rewriting as [`BlockBasis::canonicalize`], on the multiplicities alone.
pub fn canonicalize_params(params: NormalFormParams) -> CanonicalParams {
    let mut c = params;
    while c.p >= 3 {
        c = c.lower_p().expect("p >= 3");
    }
    if c.p == 0 {
        while c.r >= 2 {
            c = c.lower_r().expect("r >= 2");
        }
    } else {
        while c.r >= 1 {
            c = c.swap_r_to_s().expect("p >= 1, r >= 1");
        }
    }
    CanonicalParams(c)
}

/// The block-diagonal normal form, blocks in the order r, s, t, p, m.
pub fn params_to_matrix(params: &NormalFormParams) -> IntMatrix {
    let two = |rows: &[[i64; 2]; 2]| IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).unwrap();
    let mut blocks = Vec::new();
    blocks.extend(std::iter::repeat_n(two(&[[2, 1], [1, 2]]), params.r));
    blocks.extend(std::iter::repeat_n(two(&[[0, 1], [1, 0]]), params.s));
    blocks.extend(std::iter::repeat_n(two(&[[0, 2], [2, 0]]), params.t));
    blocks.extend(std::iter::repeat_n(IntMatrix::from_rows([[2]]).unwrap(), params.p));
    blocks.extend(std::iter::repeat_n(IntMatrix::zeros(1), params.m));
    IntMatrix::block_diag(&blocks)
}

/// Output of [`reduce_mod4`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionResult {
    pub params: CanonicalParams,
    pub witness: UnimodularTransform,
    pub normal_mod4: IntMatrix,
}

/// Reduces `A` to its canonical normal form mod 4 and returns the witness.
///
/// 1. Symplectic reduction of `A mod 2`, lifted to integers.
/// 2. Sign fix so that every hyperbolic pair pairs to `+1` mod 4.
/// 3. Clear `2`s between hyperbolic pairs and everything else (`v += 2f`,
///    `v += 2e`), sort pairs into the `r` and `s` types, and split off
///    radical vectors with `(g, g) ≡ 2`.
/// 4. The leftover block is `2Z'`; symplectic reduction of `Z' mod 2`
///    produces the `t` and `m` blocks.
/// 5. Canonicalize with the block moves.
///
/// The witness equation `PᵀAP ≡ N (mod 4)` and `det P = ±1` are checked
/// before returning.
pub fn reduce_mod4(a: &SymEvenMatrix) -> Result<ReductionResult> {
    let n = a.n();
    let mut work = WorkingBasis::new(a);

    // 1.
    let (frame, k, _) = alternating_reduce(&F2Matrix::from_int_matrix(a.as_matrix()))?;
    work.apply(frame.lift().matrix());
    let pairs: Vec<(usize, usize)> = (0..k).map(|i| (2 * i, 2 * i + 1)).collect();

    // 2.
    for &(e, f) in &pairs {
        match work.gram(e, f) {
            1 => {}
            3 => work.negate(f),
            other => {
                return Err(Error::InternalInconsistency(format!("hyperbolic pair ({e},{f}) pairs to {other} mod 4")))
            }
        }
    }

    // 3. Clearing.
    for &(e, f) in &pairs {
        for v in 0..n {
            if v == e || v == f {
                continue;
            }
            if work.gram(v, e) == 2 {
                work.add_multiple(v, f, 2);
            }
            if work.gram(v, f) == 2 {
                work.add_multiple(v, e, 2);
            }
        }
    }
    // Pair types: [[2,1],[1,0]] and [[0,1],[1,2]] are moved to [[0,1],[1,0]].
    let mut r_pairs = Vec::new();
    let mut s_pairs = Vec::new();
    for &(e, f) in &pairs {
        match (work.gram(e, e), work.gram(f, f)) {
            (2, 2) => r_pairs.push((e, f)),
            (0, 0) => s_pairs.push((e, f)),
            (2, 0) => {
                work.add_multiple(e, f, 1);
                s_pairs.push((e, f));
            }
            (0, 2) => {
                work.add_multiple(f, e, 1);
                s_pairs.push((e, f));
            }
            other => {
                return Err(Error::InternalInconsistency(format!("odd diagonal {other:?} in pair ({e},{f})")));
            }
        }
    }
    // Isolating (g, g) ≡ 2.
    let mut rest: Vec<usize> = (2 * k..n).collect();
    let mut p_vecs = Vec::new();
    while let Some(pos) = rest.iter().position(|&g| work.gram(g, g) == 2) {
        let g = rest.remove(pos);
        for &h in &rest {
            if work.gram(g, h) == 2 {
                work.add_multiple(h, g, 1);
            }
        }
        p_vecs.push(g);
    }

    // 4.
    let z = rest.len();
    let mut zbar = F2Matrix::zeros(z, z);
    for (i, &gi) in rest.iter().enumerate() {
        for (j, &gj) in rest.iter().enumerate() {
            zbar.set(i, j, work.gram(gi, gj) == 2);
        }
    }
    let (zframe, tk, _) = alternating_reduce(&zbar)?;
    work.apply_on(&rest, zframe.lift().matrix());
    let t_pairs: Vec<(usize, usize)> = (0..tk).map(|i| (rest[2 * i], rest[2 * i + 1])).collect();
    let m_vecs: Vec<usize> = rest[2 * tk..].to_vec();

    // 5.
    let mut blocks = BlockBasis::from_parts(work, r_pairs, s_pairs, t_pairs, p_vecs, m_vecs);
    if blocks.gram_mod4() != params_to_matrix(&blocks.params()) {
        return Err(Error::InternalInconsistency(format!(
            "reduction did not reach a normal form, got {}",
            blocks.params()
        )));
    }
    blocks.canonicalize()?;
    let params = CanonicalParams::new(blocks.params())?;
    let witness = blocks.witness()?;
    let normal_mod4 = params_to_matrix(&params);
    verify_witness(a.as_matrix(), &witness, &normal_mod4)?;
    Ok(ReductionResult { params, witness, normal_mod4 })
}

/// Checks `PᵀAP ≡ target (mod 4)` exactly; `P` is unimodular by construction.
pub fn verify_witness(a: &IntMatrix, p: &UnimodularTransform, target: &IntMatrix) -> Result<()> {
    let got = a.congruent_by(p.matrix())?;
    if got.eq_mod(target, 4) {
        Ok(())
    } else {
        Err(Error::InternalInconsistency(format!(
            "witness check failed: PᵀAP mod 4 = {:?}, expected {:?}",
            got.reduce_mod(4),
            target.reduce_mod(4)
        )))
    }
}

/// Every congruence invariant computed for one matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub n: usize,
    pub d0: usize,
    pub d00: usize,
    pub d000: usize,
    pub form_class: FormClass,
    pub det_mod4: u8,
    pub canonical: CanonicalParams,
}

/// Assembles the profile and cross-checks the parameters against the
/// radical data: `m = d000`, `2t+p+m = d0`, `p ≡ d0-d000 (mod 2)`,
/// `p = 0 ⇔ q(V̄₀) = 0`, `r = Arf` when `p = 0`, and `d00 = d0 - [p ≥ 1]`.
pub fn invariant_profile(a: &SymEvenMatrix) -> Result<InvariantProfile> {
    let dims = radical_dims(a);
    let form_class = classify_form(a);
    let det_mod4 = det_exact(a.as_matrix()).rem_euclid(4) as u8;
    let canonical = reduce_mod4(a)?.params;
    let c = canonical.params();

    let mut failures = Vec::new();
    if c.m != dims.d000 {
        failures.push(format!("m = {} but dim V000 = {}", c.m, dims.d000));
    }
    if 2 * c.t + c.p + c.m != dims.d0 {
        failures.push(format!("2t+p+m = {} but dim V0 = {}", 2 * c.t + c.p + c.m, dims.d0));
    }
    if c.p % 2 != (dims.d0 - dims.d000) % 2 {
        failures.push(format!("p = {} has the wrong parity for d0 - d000 = {}", c.p, dims.d0 - dims.d000));
    }
    if (c.p == 0) != (form_class.radical_value == 0) {
        failures.push(format!("p = {} but radical value {}", c.p, form_class.radical_value));
    }
    if c.p == 0 && form_class.arf != Some(c.r as u8) {
        failures.push(format!("r = {} but Arf = {:?}", c.r, form_class.arf));
    }
    let expected_d00 = if c.p >= 1 { dims.d0 - 1 } else { dims.d0 };
    if dims.d00 != expected_d00 {
        failures.push(format!("dim V00 = {} but expected {}", dims.d00, expected_d00));
    }
    if form_class.dim_radical != dims.d0 {
        failures.push(format!("form radical {} vs d0 {}", form_class.dim_radical, dims.d0));
    }
    if !failures.is_empty() {
        return Err(Error::InternalInconsistency(failures.join("; ")));
    }
    Ok(InvariantProfile { n: a.n(), d0: dims.d0, d00: dims.d00, d000: dims.d000, form_class, det_mod4, canonical })
}

/// `det A mod 4` from `(n, d0, d00)` alone.
pub fn det_mod4_from_dims(n: usize, d0: usize, d00: usize) -> u8 {
    if d0 == 0 {
        // n = 2(r+s) and det ≡ (-1)^(r+s).
        if (n / 2).is_multiple_of(2) {
            1
        } else {
            3
        }
    } else if d0 == 1 && d00 == 0 {
        2
    } else {
        0
    }
}

pub fn det_mod4_classify(profile: &InvariantProfile) -> u8 {
    det_mod4_from_dims(profile.n, profile.d0, profile.d00)
}

/// Result of [`congruent_mod4`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceDecision {
    pub congruent: bool,
    /// `P` with `PᵀAP ≡ A₂ (mod 4)`, present iff congruent.
    pub witness: Option<UnimodularTransform>,
    pub left: CanonicalParams,
    pub right: CanonicalParams,
}

/// Decides congruence mod 4 by comparing canonical parameters. When they
/// agree the witness is `P_A · P_{A₂}⁻¹`, checked before returning.
pub fn congruent_mod4(a: &SymEvenMatrix, a2: &SymEvenMatrix) -> Result<CongruenceDecision> {
    if a.n() != a2.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: a2.n() });
    }
    let ra = reduce_mod4(a)?;
    let rb = reduce_mod4(a2)?;
    if ra.params != rb.params {
        return Ok(CongruenceDecision { congruent: false, witness: None, left: ra.params, right: rb.params });
    }
    let p = ra.witness.compose(&rb.witness.inverse())?;
    verify_witness(a.as_matrix(), &p, a2.as_matrix())?;
    Ok(CongruenceDecision { congruent: true, witness: Some(p), left: ra.params, right: rb.params })
}

/// Checks a user-supplied witness: `P` unimodular and `PᵀAP ≡ A₂ (mod 4)`.
pub fn check_congruence_witness(a: &SymEvenMatrix, a2: &SymEvenMatrix, p: &IntMatrix) -> Result<bool> {
    if a.n() != a2.n() || a.n() != p.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: if a.n() != a2.n() { a2.n() } else { p.n() } });
    }
    let p = UnimodularTransform::new(p.clone())?;
    Ok(a.as_matrix().congruent_by(p.matrix())?.eq_mod(a2.as_matrix(), 4))
}

/// Integer matrix with the given normal form as entries (for tests and tools).
pub fn normal_form_matrix(params: &NormalFormParams) -> SymEvenMatrix {
    SymEvenMatrix::new(params_to_matrix(params)).expect("normal forms are symmetric with even diagonal")
}
