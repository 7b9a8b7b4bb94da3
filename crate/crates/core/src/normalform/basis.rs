//! Integer bases carried through the reduction.
//!
//! A [`WorkingBasis`] holds the current basis as the columns of an integer
//! matrix `P` together with the Gram matrix `PᵀAP` reduced mod 4. Every
//! change of basis updates both, so the Gram matrix never has to be
//! recomputed from scratch.

use crate::error::{Error, Result};
use crate::int::Int;
use crate::matrices::{IntMatrix, SymEvenMatrix, UnimodularTransform};

use super::{params_to_matrix, NormalFormParams};

#[derive(Clone, Debug)]
pub(crate) struct WorkingBasis {
    n: usize,
    p: IntMatrix,
    gram: Vec<u8>,
}

impl WorkingBasis {
    pub(crate) fn new(a: &SymEvenMatrix) -> Self {
        let n = a.n();
        WorkingBasis {
            n,
            p: IntMatrix::identity(n),
            gram: a.as_matrix().residues(4).into_iter().map(|x| x as u8).collect(),
        }
    }

    pub(crate) fn gram(&self, i: usize, j: usize) -> u8 {
        self.gram[i * self.n + j]
    }

    pub(crate) fn matrix(&self) -> &IntMatrix {
        &self.p
    }

    /// `v_target += c · v_source`.
    pub(crate) fn add_multiple(&mut self, target: usize, source: usize, c: i64) {
        debug_assert_ne!(target, source);
        let n = self.n;
        let c4 = c.rem_euclid(4);
        let g_ts = self.gram(target, source) as i64;
        let g_ss = self.gram(source, source) as i64;
        let g_tt = self.gram(target, target) as i64;
        for k in 0..n {
            if k == target {
                continue;
            }
            let v = (self.gram(target, k) as i64 + c4 * self.gram(source, k) as i64).rem_euclid(4) as u8;
            self.gram[target * n + k] = v;
            self.gram[k * n + target] = v;
        }
        self.gram[target * n + target] = (g_tt + 2 * c4 * g_ts + c4 * c4 * g_ss).rem_euclid(4) as u8;
        let c = Int::from(c);
        for i in 0..n {
            let v = self.p.get(i, target) + &c * self.p.get(i, source);
            self.p.set(i, target, v);
        }
    }

    /// `v_i ↦ -v_i`.
    pub(crate) fn negate(&mut self, i: usize) {
        let n = self.n;
        for k in 0..n {
            if k != i {
                let v = (4 - self.gram(i, k)) % 4;
                self.gram[i * n + k] = v;
                self.gram[k * n + i] = v;
            }
        }
        for r in 0..n {
            let v = -self.p.get(r, i);
            self.p.set(r, i, v);
        }
    }

    /// Replaces the columns listed in `cols` by integer combinations of
    /// themselves: new `cols[c]` = `Σ_r local[r][c] · old cols[r]`.
    pub(crate) fn apply_on(&mut self, cols: &[usize], local: &IntMatrix) {
        assert_eq!(cols.len(), local.n());
        let n = self.n;
        let mut full = IntMatrix::identity(n);
        for (r, &cr) in cols.iter().enumerate() {
            for (c, &cc) in cols.iter().enumerate() {
                full.set(cr, cc, local.get(r, c).clone());
            }
        }
        self.apply(&full);
    }

    /// `P ← P·T` and `G ← TᵀGT (mod 4)`.
    pub(crate) fn apply(&mut self, t: &IntMatrix) {
        let n = self.n;
        let t4: Vec<i64> = t.residues(4).into_iter().map(i64::from).collect();
        let g: Vec<i64> = self.gram.iter().map(|&x| x as i64).collect();
        // gt = G·T, then Tᵀ·gt, all mod 4.
        let mut gt = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let gik = g[i * n + k];
                if gik == 0 {
                    continue;
                }
                for j in 0..n {
                    gt[i * n + j] += gik * t4[k * n + j];
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let s: i64 = (0..n).map(|k| t4[k * n + i] * (gt[k * n + j] % 4)).sum();
                self.gram[i * n + j] = s.rem_euclid(4) as u8;
            }
        }
        self.p = self.p.mul(t).expect("dimensions agree");
    }
}

fn local(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).expect("square local matrix")
}

/// A basis whose mod-4 Gram matrix is a normal form, with the role of every
/// column recorded. Columns need not be in block order; [`witness`] permutes
/// them into the block order of [`params_to_matrix`].
///
/// [`witness`]: BlockBasis::witness
#[derive(Clone, Debug)]
pub struct BlockBasis {
    work: WorkingBasis,
    r: Vec<(usize, usize)>,
    s: Vec<(usize, usize)>,
    t: Vec<(usize, usize)>,
    p: Vec<usize>,
    m: Vec<usize>,
}

impl BlockBasis {
    pub(crate) fn from_parts(
        work: WorkingBasis,
        r: Vec<(usize, usize)>,
        s: Vec<(usize, usize)>,
        t: Vec<(usize, usize)>,
        p: Vec<usize>,
        m: Vec<usize>,
    ) -> Self {
        BlockBasis { work, r, s, t, p, m }
    }

    /// Wraps a matrix that is already a normal form mod 4, in block order,
    /// with the identity as starting witness.
    pub fn for_normal_matrix(a: &SymEvenMatrix, params: NormalFormParams) -> Result<Self> {
        let target = params_to_matrix(&params);
        if target.n() != a.n() {
            return Err(Error::DimensionMismatch { left: a.n(), right: target.n() });
        }
        if !a.as_matrix().eq_mod(&target, 4) {
            return Err(Error::PreconditionFailed {
                op: "for_normal_matrix",
                detail: format!("matrix is not the normal form {params} mod 4"),
            });
        }
        let mut idx = 0..a.n();
        let mut pairs = |count: usize| -> Vec<(usize, usize)> {
            (0..count).map(|_| (idx.next().unwrap(), idx.next().unwrap())).collect()
        };
        let r = pairs(params.r);
        let s = pairs(params.s);
        let t = pairs(params.t);
        let p: Vec<usize> = idx.by_ref().take(params.p).collect();
        let m: Vec<usize> = idx.collect();
        Ok(BlockBasis { work: WorkingBasis::new(a), r, s, t, p, m })
    }

    pub fn params(&self) -> NormalFormParams {
        NormalFormParams { r: self.r.len(), s: self.s.len(), t: self.t.len(), p: self.p.len(), m: self.m.len() }
    }

    /// Three `[2]` blocks become one `[[0,2],[2,0]]` block and one `[2]`:
    /// `g₁+g₂, g₂+g₃, g₁+g₂+g₃`.
    pub fn lower_p(&mut self) -> Result<()> {
        self.params().lower_p()?;
        let (g1, g2, g3) = (self.p[0], self.p[1], self.p[2]);
        self.work.apply_on(&[g1, g2, g3], &local(&[&[1, 0, 1], &[1, 1, 1], &[0, 1, 1]]));
        self.p.drain(0..2);
        self.t.push((g1, g2));
        self.check_layout("lower_p")
    }

    /// Two `[[2,1],[1,2]]` blocks become two `[[0,1],[1,0]]` blocks via
    /// `e₁+f₂, f₁+e₁+f₂, (e₂-f₁)+2(e₁+f₂), f₂+2f₁+e₂'`.
    pub fn lower_r(&mut self) -> Result<()> {
        self.params().lower_r()?;
        let (e1, f1) = self.r[0];
        let (e2, f2) = self.r[1];
        self.work.apply_on(&[e1, f1, e2, f2], &local(&[&[1, 1, 2, 2], &[0, 1, -1, 1], &[0, 0, 1, 1], &[1, 1, 2, 3]]));
        self.r.drain(0..2);
        self.s.push((e1, f1));
        self.s.push((e2, f2));
        self.check_layout("lower_r")
    }

    /// In the presence of a `[2]` block, one `[[2,1],[1,2]]` becomes
    /// `[[0,1],[1,0]]` via `e₁+g₁, f₁+e₁+g₁, g₁+2f₁`.
    pub fn swap_r_to_s(&mut self) -> Result<()> {
        self.params().swap_r_to_s()?;
        let (e1, f1) = self.r[0];
        let g1 = self.p[0];
        self.work.apply_on(&[e1, f1, g1], &local(&[&[1, 1, 0], &[0, 1, 2], &[1, 1, 1]]));
        self.r.remove(0);
        self.s.push((e1, f1));
        self.check_layout("swap_r_to_s")
    }

    /// Applies the moves until the parameters are the canonical representative.
    pub fn canonicalize(&mut self) -> Result<()> {
        while self.p.len() >= 3 {
            self.lower_p()?;
        }
        if self.p.is_empty() {
            while self.r.len() >= 2 {
                self.lower_r()?;
            }
        } else {
            while !self.r.is_empty() {
                self.swap_r_to_s()?;
            }
        }
        Ok(())
    }

    fn order(&self) -> Vec<usize> {
        let pairs = |v: &[(usize, usize)]| v.iter().flat_map(|&(a, b)| [a, b]).collect::<Vec<_>>();
        let mut order = pairs(&self.r);
        order.extend(pairs(&self.s));
        order.extend(pairs(&self.t));
        order.extend(&self.p);
        order.extend(&self.m);
        order
    }

    /// Current Gram matrix mod 4, in block order.
    pub fn gram_mod4(&self) -> IntMatrix {
        let order = self.order();
        IntMatrix::from_fn(order.len(), |i, j| Int::from(self.work.gram(order[i], order[j]) as i64))
    }

    /// The accumulated basis change, columns in block order.
    pub fn witness(&self) -> Result<UnimodularTransform> {
        let order = self.order();
        let p = self.work.matrix();
        UnimodularTransform::new(IntMatrix::from_fn(order.len(), |i, j| p.get(i, order[j]).clone()))
    }

    fn check_layout(&self, op: &str) -> Result<()> {
        let expected = params_to_matrix(&self.params());
        if self.gram_mod4() == expected {
            Ok(())
        } else {
            Err(Error::InternalInconsistency(format!(
                "{op} left the Gram matrix off its normal form {}",
                self.params()
            )))
        }
    }
}
