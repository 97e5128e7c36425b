//! The combinatorial perverse Leray filtration.
//!
//! Two independent routes compute the same graded dimensions: the flag route
//! takes kernels of restriction to preimages of a generic flag, the Cech
//! route takes homology of rows of relative cohomology groups connected by
//! boundary maps. `oracle_compare` asserts they agree degree by degree; that
//! agreement is the checkable content of the equivalence theorem.
//!
//! Index conventions. The Cech row for k has node H^{k-l}(Y{l}, Y{l+1}) at
//! level l, and its homology at level l is Gr^P_k H^{k-l}(Y). On the flag
//! side the calibrated convention sets P_{k+i} H^k = ker(H^k(Y) ->
//! H^k(Y{i+1})), which is the one that reproduces Gr^P_n H^k((C*)^n) = H^k;
//! the raw appendix indexing (kernel against Y{i}) is kept behind a
//! compatibility flag.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{homology_dim, subspace_contains};
use crate::{QMatrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IndexConvention {
    #[default]
    Calibrated,
    Appendix,
}

/// One Cech row: node l holds H^{k-l}(Y{l}, Y{l+1}) for l = 0..=N, and
/// `maps[l]` is the connecting map from node l to node l - 1.
#[derive(Debug, Clone, Default)]
pub struct CechRow {
    /// dims indexed by level l = 0..=N
    pub node_dims: Vec<u64>,
    /// level l (1..=N) -> matrix of rho_l
    pub maps: BTreeMap<usize, QMatrix>,
}

#[derive(Debug, Clone, Default)]
pub struct FlagComplex {
    pub ambient_dim: u32,
    /// number of potentials N = flag depth
    pub potentials: usize,
    /// dim H^k(Y) per degree
    pub space: BTreeMap<i64, u64>,
    /// dim H^k(Y{l}) per (level 1..=N, degree)
    pub flag_dims: BTreeMap<(usize, i64), u64>,
    /// restriction J_l: H^k(Y) -> H^k(Y{l}) per (level 1..=N, degree)
    pub restrictions: BTreeMap<(usize, i64), QMatrix>,
    /// Cech rows indexed by k
    pub cech: BTreeMap<i64, CechRow>,
    pub convention: IndexConvention,
}

impl FlagComplex {
    pub fn dim(&self, k: i64) -> u64 {
        self.space.get(&k).copied().unwrap_or(0)
    }

    fn restriction(&self, level: usize, k: i64) -> Result<QMatrix> {
        let target = self.flag_dims.get(&(level, k)).copied().unwrap_or(0);
        match self.restrictions.get(&(level, k)) {
            Some(m) => {
                if m.cols() != self.dim(k) as usize || m.rows() != target as usize {
                    return Err(Error::ShapeMismatch(format!(
                        "restriction to Y{{{level}}} in degree {k} is {}x{}, expected {target}x{}",
                        m.rows(),
                        m.cols(),
                        self.dim(k)
                    )));
                }
                Ok(m.clone())
            }
            None if target == 0 => Ok(QMatrix::zero(0, self.dim(k) as usize)),
            None => Err(Error::MissingRestriction { level, degree: k }),
        }
    }

    /// dim ker(J_l: H^k(Y) -> H^k(Y{l})); l = 0 is the identity, levels past
    /// the flag depth restrict to the empty set.
    fn kernel_dim(&self, level: usize, k: i64) -> Result<u64> {
        if level == 0 {
            return Ok(0);
        }
        if level > self.potentials {
            return Ok(self.dim(k));
        }
        let j = self.restriction(level, k)?;
        Ok(self.dim(k) - j.rank() as u64)
    }

    pub fn validate(&self) -> Result<()> {
        for &(level, k) in self.restrictions.keys() {
            self.restriction(level, k)?;
        }
        for (&k, row) in &self.cech {
            if row.node_dims.len() != self.potentials + 1 {
                return Err(Error::ShapeMismatch(format!(
                    "cech row {k} has {} nodes, expected {}",
                    row.node_dims.len(),
                    self.potentials + 1
                )));
            }
            for (&l, m) in &row.maps {
                if l == 0 || l > self.potentials {
                    return Err(Error::validation(
                        format!("cech row {k}"),
                        format!("map index {l} out of range"),
                    ));
                }
                if m.cols() != row.node_dims[l] as usize
                    || m.rows() != row.node_dims[l - 1] as usize
                {
                    return Err(Error::ShapeMismatch(format!(
                        "cech row {k} map at level {l} is {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        row.node_dims[l - 1],
                        row.node_dims[l]
                    )));
                }
            }
            for l in 1..self.potentials {
                let outer = self.cech_map(k, l);
                let inner = self.cech_map(k, l + 1);
                if !outer.mul(&inner)?.is_zero() {
                    return Err(Error::NotAComplex(format!(
                        "cech row {k}: rho_{l} . rho_{} is nonzero",
                        l + 1
                    )));
                }
            }
        }
        Ok(())
    }

    fn node_dim(&self, k: i64, l: usize) -> usize {
        self.cech
            .get(&k)
            .map_or(0, |r| r.node_dims.get(l).copied().unwrap_or(0) as usize)
    }

    fn cech_map(&self, k: i64, l: usize) -> QMatrix {
        match self.cech.get(&k).and_then(|r| r.maps.get(&l)) {
            Some(m) => m.clone(),
            None => QMatrix::zero(self.node_dim(k, l - 1), self.node_dim(k, l)),
        }
    }
}

/// Filtration dims per (degree k, level b): dim P_b H^k.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Filtration {
    pub levels: BTreeMap<(i64, i64), u64>,
}

impl Filtration {
    pub fn graded(&self, k: i64, b: i64) -> u64 {
        let at = self.levels.get(&(k, b)).copied().unwrap_or(0);
        let below = self.levels.get(&(k, b - 1)).copied().unwrap_or(0);
        at.saturating_sub(below)
    }
}

/// Kernel-form perverse filtration: levels b = k-1 ..= k+N per degree.
pub fn flag_filtration(fc: &FlagComplex) -> Result<Filtration> {
    let mut levels = BTreeMap::new();
    for &k in fc.space.keys() {
        for i in -1..=(fc.potentials as i64) {
            let j_index = match fc.convention {
                IndexConvention::Calibrated => i + 1,
                IndexConvention::Appendix => i,
            };
            let dim = if j_index < 0 {
                0
            } else {
                fc.kernel_dim(j_index as usize, k)?
            };
            levels.insert((k, k + i), dim);
        }
    }
    Ok(Filtration { levels })
}

/// Graded dims Gr^P_b H^k for b = k ..= k+N, out of the Cech rows:
/// Gr^P_b H^k is the homology of row b at node b - k.
pub fn perverse_e2(fc: &FlagComplex, k: i64) -> Result<BTreeMap<i64, u64>> {
    let mut out = BTreeMap::new();
    for i in 0..=(fc.potentials as i64) {
        let row_k = k + i;
        let l = i as usize;
        let d_out = if l == 0 {
            QMatrix::zero(0, fc.node_dim(row_k, 0))
        } else {
            fc.cech_map(row_k, l)
        };
        let d_in = if l == fc.potentials {
            QMatrix::zero(fc.node_dim(row_k, l), 0)
        } else {
            fc.cech_map(row_k, l + 1)
        };
        let h = homology_dim(&d_in, &d_out)
            .map_err(|e| Error::NotAComplex(format!("cech row {row_k} at level {l}: {e}")))?;
        out.insert(row_k, h as u64);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub degree: i64,
    pub level: i64,
    pub flag_dim: u64,
    pub cech_dim: u64,
}

/// Result of the flag-vs-Cech consistency check; failures are data.
#[derive(Debug, Clone, Default)]
pub struct OracleOutcome {
    pub discrepancies: Vec<Discrepancy>,
    /// E2 degeneration is an input assumption; a mismatch between graded
    /// totals and dim H^k is surfaced as a warning, not a failure.
    pub warnings: Vec<String>,
}

impl OracleOutcome {
    pub fn is_ok(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Assert the flag-kernel dims equal the Cech E2 dims at every degree.
pub fn oracle_compare(fc: &FlagComplex) -> Result<OracleOutcome> {
    fc.validate()?;
    let flag = flag_filtration(fc)?;
    let mut outcome = OracleOutcome::default();
    for k in 0..=(2 * fc.ambient_dim as i64) {
        let cech = perverse_e2(fc, k)?;
        let mut total = 0u64;
        for i in 0..=(fc.potentials as i64) {
            let b = k + i;
            let flag_dim = flag.graded(k, b);
            let cech_dim = cech.get(&b).copied().unwrap_or(0);
            total += cech_dim;
            if flag_dim != cech_dim {
                outcome.discrepancies.push(Discrepancy {
                    degree: k,
                    level: b,
                    flag_dim,
                    cech_dim,
                });
            }
        }
        if total != fc.dim(k) {
            outcome.warnings.push(format!(
                "degree {k}: cech graded total {total} differs from dim H^{k} = {}",
                fc.dim(k)
            ));
        }
    }
    Ok(outcome)
}

/// Filtration built from supplied image dimensions of the nested de Rham
/// subcomplexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GFiltration {
    pub filtration: Filtration,
}

/// Relabel image dims of the nested subcomplex chain as a filtration.
/// Input is (degree k, level b) -> dim; dims must be monotone in b.
pub fn de_rham_relabel(image_dims: &BTreeMap<(i64, i64), u64>) -> Result<GFiltration> {
    let mut prev: BTreeMap<i64, (i64, u64)> = BTreeMap::new();
    for (&(k, b), &d) in image_dims {
        if let Some(&(b0, d0)) = prev.get(&k) {
            if b > b0 && d < d0 {
                return Err(Error::NonMonotone(format!("degree {k}, level {b}")));
            }
        }
        prev.insert(k, (b, d));
    }
    Ok(GFiltration {
        filtration: Filtration {
            levels: image_dims.clone(),
        },
    })
}

/// The de Rham filtration equals the perverse one; mismatches reported as
/// (degree, level, flag dim, de Rham dim).
pub fn de_rham_check(fc: &FlagComplex, g: &GFiltration) -> Result<Vec<(i64, i64, u64, u64)>> {
    let flag = flag_filtration(fc)?;
    let mut mismatches = Vec::new();
    for (&(k, b), &gd) in &g.filtration.levels {
        let fd = flag.levels.get(&(k, b)).copied().unwrap_or_else(|| {
            if b >= k + fc.potentials as i64 {
                fc.dim(k)
            } else {
                0
            }
        });
        if fd != gd {
            mismatches.push((k, b, fd, gd));
        }
    }
    Ok(mismatches)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthViolation {
    pub degree: i64,
    pub reason: String,
}

/// P_{k-1} = 0 and the filtration reaches the full space by level
/// k + min(N, dim Y), per degree.
pub fn filtration_length_check(fc: &FlagComplex) -> Result<Vec<LengthViolation>> {
    let flag = flag_filtration(fc)?;
    let mut violations = Vec::new();
    let reach = fc.potentials.min(fc.ambient_dim as usize) as i64;
    for (&k, &dim) in &fc.space {
        if dim == 0 {
            continue;
        }
        let bottom = flag.levels.get(&(k, k - 1)).copied().unwrap_or(0);
        if bottom != 0 {
            violations.push(LengthViolation {
                degree: k,
                reason: format!("P_{} H^{k} has dimension {bottom}, expected 0", k - 1),
            });
        }
        let top = flag.levels.get(&(k, k + reach)).copied().unwrap_or(0);
        if top != dim {
            violations.push(LengthViolation {
                degree: k,
                reason: format!(
                    "P_{} H^{k} has dimension {top}, expected the full {dim}",
                    k + reach
                ),
            });
        }
    }
    Ok(violations)
}

/// Graded basis with cup-product structure constants and a perverse
/// filtration given by spanning vectors per level.
#[derive(Debug, Clone, Default)]
pub struct CupRing {
    pub potentials: usize,
    /// (name, degree) per basis element
    pub basis: Vec<(String, i64)>,
    /// product of basis elements (i, j) as a full coefficient vector
    pub products: BTreeMap<(usize, usize), Vec<Rational>>,
    /// (degree k, offset a in 0..=N) -> spanning vectors of P_{k+a} H^k in
    /// the coordinates of the degree-k basis elements
    pub filtration: BTreeMap<(i64, i64), Vec<Vec<Rational>>>,
}

impl CupRing {
    pub fn degree_indices(&self, k: i64) -> Vec<usize> {
        self.basis
            .iter()
            .enumerate()
            .filter(|(_, (_, d))| *d == k)
            .map(|(i, _)| i)
            .collect()
    }

    fn product(&self, i: usize, j: usize) -> Vec<Rational> {
        if let Some(v) = self.products.get(&(i, j)) {
            return v.clone();
        }
        // complete by graded commutativity
        if let Some(v) = self.products.get(&(j, i)) {
            let sign = self.basis[i].1 * self.basis[j].1;
            return v
                .iter()
                .map(|c| if sign % 2 == 0 { c.clone() } else { -c.clone() })
                .collect();
        }
        vec![num_traits::Zero::zero(); self.basis.len()]
    }

    pub fn validate(&self) -> Result<()> {
        for (&(i, j), v) in &self.products {
            if i >= self.basis.len() || j >= self.basis.len() {
                return Err(Error::validation(
                    "ring products",
                    "basis index out of range",
                ));
            }
            if v.len() != self.basis.len() {
                return Err(Error::DimensionMismatch(format!(
                    "product ({i},{j}) has {} coefficients, expected {}",
                    v.len(),
                    self.basis.len()
                )));
            }
            let target = self.basis[i].1 + self.basis[j].1;
            for (idx, c) in v.iter().enumerate() {
                if !num_traits::Zero::is_zero(c) && self.basis[idx].1 != target {
                    return Err(Error::validation(
                        format!("product ({i},{j})"),
                        format!("nonzero coefficient outside degree {target}"),
                    ));
                }
            }
            if let Some(w) = self.products.get(&(j, i)) {
                let sign = self.basis[i].1 * self.basis[j].1;
                let ok = v.iter().zip(w).all(|(a, b)| {
                    if sign % 2 == 0 {
                        a == b
                    } else {
                        *a == -b.clone()
                    }
                });
                if !ok {
                    return Err(Error::validation(
                        format!("products ({i},{j}) and ({j},{i})"),
                        "graded commutativity fails",
                    ));
                }
            }
        }
        for (&(k, a), spans) in &self.filtration {
            let dim = self.degree_indices(k).len();
            for (vi, v) in spans.iter().enumerate() {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch(format!(
                        "filtration span ({k},{a}) vector {vi} has length {}, expected {dim}",
                        v.len()
                    )));
                }
            }
            if let Some(above) = self.filtration.get(&(k, a + 1)) {
                for v in spans {
                    if !subspace_contains(above, v)? {
                        return Err(Error::validation(
                            format!("filtration ({k},{a})"),
                            "not contained in the next level",
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Cup product of two vectors given in degree coordinates, expanded over
    /// the structure constants; returns full-basis coordinates.
    fn cup(&self, k1: i64, v1: &[Rational], k2: i64, v2: &[Rational]) -> Vec<Rational> {
        let idx1 = self.degree_indices(k1);
        let idx2 = self.degree_indices(k2);
        let mut acc = vec![Rational::from_integer(0.into()); self.basis.len()];
        for (a, &bi) in idx1.iter().enumerate() {
            if num_traits::Zero::is_zero(&v1[a]) {
                continue;
            }
            for (b, &bj) in idx2.iter().enumerate() {
                if num_traits::Zero::is_zero(&v2[b]) {
                    continue;
                }
                let prod = self.product(bi, bj);
                let c = v1[a].clone() * v2[b].clone();
                for (idx, p) in prod.iter().enumerate() {
                    if !num_traits::Zero::is_zero(p) {
                        acc[idx] = acc[idx].clone() + c.clone() * p.clone();
                    }
                }
            }
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultViolation {
    pub degrees: (i64, i64),
    pub offsets: (i64, i64),
    pub vectors: (usize, usize),
}

/// Exhaustive check of the cup-product bound: a class in P_{k1+a1} H^{k1}
/// times a class in P_{k2+a2} H^{k2} must land in P_{k1+k2+min(a1,a2)}.
pub fn multiplicativity_check(ring: &CupRing) -> Result<Option<MultViolation>> {
    ring.validate()?;
    let n = ring.potentials as i64;
    let mut degrees: Vec<i64> = ring.filtration.keys().map(|&(k, _)| k).collect();
    degrees.dedup();
    for &k1 in &degrees {
        for &k2 in &degrees {
            for a1 in 0..=n {
                for a2 in 0..=n {
                    let (Some(s1), Some(s2)) = (
                        ring.filtration.get(&(k1, a1)),
                        ring.filtration.get(&(k2, a2)),
                    ) else {
                        continue;
                    };
                    let target_k = k1 + k2;
                    let target_a = a1.min(a2);
                    let target_idx = ring.degree_indices(target_k);
                    for (i1, v1) in s1.iter().enumerate() {
                        for (i2, v2) in s2.iter().enumerate() {
                            let full = ring.cup(k1, v1, k2, v2);
                            let w: Vec<Rational> =
                                target_idx.iter().map(|&b| full[b].clone()).collect();
                            if w.iter().all(num_traits::Zero::is_zero) {
                                continue;
                            }
                            let span = match ring.filtration.get(&(target_k, target_a)) {
                                Some(s) => s.clone(),
                                None => {
                                    return Err(Error::validation(
                                        format!("filtration ({target_k},{target_a})"),
                                        "level required by the product sweep is missing",
                                    ))
                                }
                            };
                            if !subspace_contains(&span, &w)? {
                                return Ok(Some(MultViolation {
                                    degrees: (k1, k2),
                                    offsets: (a1, a2),
                                    vectors: (i1, i2),
                                }));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}
