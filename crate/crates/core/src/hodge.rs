//! Finite tables of (mixed) Hodge-theoretic graded dimensions.
//!
//! Tables store graded dimensions only, never filtered vector spaces: every
//! statement checked downstream is about dimensions of associated graded
//! pieces, which keeps the data finite and exactly comparable.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::{Int, LaurentPoly};

/// Pure Hodge structure of a fixed weight: p -> h^{p, weight-p}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureHodgeVector {
    pub weight: i64,
    pub dims: BTreeMap<i64, u64>,
}

impl PureHodgeVector {
    pub fn new(weight: i64) -> Self {
        PureHodgeVector {
            weight,
            dims: BTreeMap::new(),
        }
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    /// h^{p,q} = h^{q,p}; holds for the cohomology of honest geometry.
    pub fn is_real_symmetric(&self) -> bool {
        self.dims.iter().all(|(&p, &d)| {
            let q = self.weight - p;
            self.dims.get(&q).copied().unwrap_or(0) == d
        })
    }
}

/// Validation window for the weights occurring in H^s.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    /// Smooth quasi-projective: s <= w <= 2s.
    SmoothOpen,
    /// Limiting mixed Hodge structures: 0 <= w <= 2s.
    Limit,
}

/// Dimensions of Gr_F^p Gr^W_w H^s for one space, finitely supported.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MixedHodgeTable {
    pub ambient_dim: u32,
    /// (s, p, w) -> dim
    pub dims: BTreeMap<(i64, i64, i64), u64>,
}

impl MixedHodgeTable {
    pub fn new(ambient_dim: u32) -> Self {
        MixedHodgeTable {
            ambient_dim,
            dims: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, s: i64, p: i64, w: i64, dim: u64) {
        if dim == 0 {
            return;
        }
        *self.dims.entry((s, p, w)).or_insert(0) += dim;
    }

    pub fn get(&self, s: i64, p: i64, w: i64) -> u64 {
        self.dims.get(&(s, p, w)).copied().unwrap_or(0)
    }

    pub fn betti(&self, s: i64) -> u64 {
        self.dims
            .iter()
            .filter(|((d, _, _), _)| *d == s)
            .map(|(_, &v)| v)
            .sum()
    }

    pub fn max_degree(&self) -> i64 {
        self.dims.keys().map(|&(s, _, _)| s).max().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn validate(&self, mode: WeightMode) -> Result<()> {
        for (&(s, p, w), &d) in &self.dims {
            if d == 0 {
                continue;
            }
            if s < 0 || s > 2 * self.ambient_dim as i64 {
                return Err(Error::validation(
                    format!("cell (s={s}, p={p}, w={w})"),
                    format!("degree outside 0..={}", 2 * self.ambient_dim),
                ));
            }
            let lo = match mode {
                WeightMode::SmoothOpen => s,
                WeightMode::Limit => 0,
            };
            if w < lo || w > 2 * s {
                return Err(Error::validation(
                    format!("cell (s={s}, p={p}, w={w})"),
                    format!("weight outside {lo}..={}", 2 * s),
                ));
            }
        }
        Ok(())
    }

    /// Tate twist by m: each cell (s, p, w) moves to (s, p-m, w-2m).
    ///
    /// Convention fixed by Q(-1) having type (1,1): F(m)^p = F^{m+p} and
    /// W(m)_k = W_{k+2m}, so graded indices shift by (-m, -2m).
    pub fn tate_twist(&self, m: i64) -> Self {
        let mut out = MixedHodgeTable::new(self.ambient_dim);
        for (&(s, p, w), &d) in &self.dims {
            out.add(s, p - m, w - 2 * m, d);
        }
        out
    }

    /// Künneth convolution; ambient dimensions add.
    pub fn kunneth(&self, other: &Self) -> Self {
        let mut out = MixedHodgeTable::new(self.ambient_dim + other.ambient_dim);
        for (&(s1, p1, w1), &d1) in &self.dims {
            for (&(s2, p2, w2), &d2) in &other.dims {
                out.add(s1 + s2, p1 + p2, w1 + w2, d1 * d2);
            }
        }
        out
    }

    /// First cell violating the Hodge-Tate condition w = 2p, if any.
    pub fn hodge_tate_witness(&self) -> Option<(i64, i64, i64)> {
        self.dims
            .iter()
            .find(|(&(_, p, w), &d)| d > 0 && w != 2 * p)
            .map(|(&cell, _)| cell)
    }

    pub fn is_hodge_tate(&self) -> bool {
        self.hodge_tate_witness().is_none()
    }

    /// The point table Q(0): the Künneth unit.
    pub fn point() -> Self {
        let mut t = MixedHodgeTable::new(0);
        t.add(0, 0, 0, 1);
        t
    }

    /// H^*((C*)^1) = { H^0 = Q(0), H^1 = Q(-1) }.
    pub fn torus_factor() -> Self {
        let mut t = MixedHodgeTable::new(1);
        t.add(0, 0, 0, 1);
        t.add(1, 1, 2, 1);
        t
    }

    /// H^*((C*)^n) with H^k = Q(-k)^(n choose k).
    pub fn torus(n: u32) -> Self {
        let mut t = MixedHodgeTable::point();
        for _ in 0..n {
            t = t.kunneth(&MixedHodgeTable::torus_factor());
        }
        t
    }
}

/// How a weight table is spread across perverse levels when assembling a
/// joint table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PerverseRule {
    /// Every cell of H^s sits in Gr^P at the given level (r = level - s).
    AllAtLevel(i64),
    /// Explicit cell-by-cell distribution (s, p, w, r, dim).
    Explicit(Vec<(i64, i64, i64, i64, u64)>),
}

/// Dimensions of Gr_F^a Gr^W_{s+b} Gr^P_{s+r} H^s.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PWTable {
    pub ambient_dim: u32,
    /// (s, a, b, r) -> dim
    pub dims: BTreeMap<(i64, i64, i64, i64), u64>,
}

impl PWTable {
    pub fn new(ambient_dim: u32) -> Self {
        PWTable {
            ambient_dim,
            dims: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, s: i64, a: i64, b: i64, r: i64, dim: u64) {
        if dim == 0 {
            return;
        }
        *self.dims.entry((s, a, b, r)).or_insert(0) += dim;
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// PW(u,t,w,p) = sum of dim * u^a t^s w^b p^r over all cells.
    pub fn pw_polynomial(&self) -> LaurentPoly {
        let mut poly = LaurentPoly::zero();
        for (&(s, a, b, r), &d) in &self.dims {
            poly.add_term([a, s, b, r], Int::from(d));
        }
        poly
    }

    /// Marginalize over the perverse index; recovers the weight table with
    /// w = s + b.
    pub fn weight_marginal(&self) -> MixedHodgeTable {
        let mut out = MixedHodgeTable::new(self.ambient_dim);
        for (&(s, a, b, _), &d) in &self.dims {
            out.add(s, a, s + b, d);
        }
        out
    }

    /// Marginalize over the weight index: (s, a, rho = s + r) -> dim.
    pub fn perverse_marginal(&self) -> PerverseHodgeTable {
        let mut out = PerverseHodgeTable::new(self.ambient_dim);
        for (&(s, a, _, r), &d) in &self.dims {
            out.add(s, a, s + r, d);
        }
        out
    }

    /// The torus PW table: dim C(n, s) at (s, s, s, n-s).
    pub fn torus(n: u32) -> Self {
        let mut t = PWTable::new(n);
        let mut binom: u64 = 1;
        for s in 0..=n as i64 {
            t.add(s, s, s, n as i64 - s, binom);
            binom = binom * (n as u64 - s as u64) / (s as u64 + 1);
        }
        t
    }
}

/// Dimensions of Gr_F^a Gr^P_rho H^s (no weight refinement).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PerverseHodgeTable {
    pub ambient_dim: u32,
    /// (s, a, rho) -> dim
    pub dims: BTreeMap<(i64, i64, i64), u64>,
}

impl PerverseHodgeTable {
    pub fn new(ambient_dim: u32) -> Self {
        PerverseHodgeTable {
            ambient_dim,
            dims: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, s: i64, a: i64, rho: i64, dim: u64) {
        if dim == 0 {
            return;
        }
        *self.dims.entry((s, a, rho)).or_insert(0) += dim;
    }

    pub fn get(&self, s: i64, a: i64, rho: i64) -> u64 {
        self.dims.get(&(s, a, rho)).copied().unwrap_or(0)
    }

    /// rho confined to [s, s + n]: the filtration length bound.
    pub fn validate(&self) -> Result<()> {
        for (&(s, a, rho), &d) in &self.dims {
            if d > 0 && (rho < s || rho > s + self.ambient_dim as i64) {
                return Err(Error::validation(
                    format!("cell (s={s}, a={a}, rho={rho})"),
                    format!(
                        "perverse level outside {s}..={}",
                        s + self.ambient_dim as i64
                    ),
                ));
            }
        }
        Ok(())
    }
}

/// Join a weight table with a perverse grading rule into a PW table.
///
/// The rule must distribute exactly the dimension of each weight cell;
/// anything else is a `MarginalMismatch`.
pub fn assemble_pw(weight: &MixedHodgeTable, rule: &PerverseRule) -> Result<PWTable> {
    let mut out = PWTable::new(weight.ambient_dim);
    match rule {
        PerverseRule::AllAtLevel(level) => {
            for (&(s, p, w), &d) in &weight.dims {
                out.add(s, p, w - s, level - s, d);
            }
        }
        PerverseRule::Explicit(cells) => {
            let mut accounted: BTreeMap<(i64, i64, i64), u64> = BTreeMap::new();
            for &(s, p, w, r, d) in cells {
                *accounted.entry((s, p, w)).or_insert(0) += d;
                out.add(s, p, w - s, r, d);
            }
            for (&cell, &d) in &weight.dims {
                if accounted.get(&cell).copied().unwrap_or(0) != d {
                    return Err(Error::MarginalMismatch(format!("{cell:?}")));
                }
            }
            for (&cell, &d) in &accounted {
                if weight.dims.get(&cell).copied().unwrap_or(0) != d {
                    return Err(Error::MarginalMismatch(format!("{cell:?}")));
                }
            }
        }
    }
    Ok(out)
}
