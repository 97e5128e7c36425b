//! Weight spectral sequences from strata data.
//!
//! A simple-normal-crossing compactification enters as its intersection
//! poset: one pure cohomology table per stratum and one raw Gysin matrix per
//! (stratum, removed component, degree). The engine applies the alternating
//! signs, assembles the E1 rows, and reads the weight-graded dimensions of
//! the open part off the E2 page. Gysin and face matrices are scenario data,
//! not computed from geometry: the engine's contract is the exactness of the
//! linear algebra.
//!
//! Rows are indexed by the total weight w: the row for weight w has node
//! H^{w-2m}(D(m))(-m) at depth m, and its E2 homology at depth m is
//! Gr^W_w H^{w-m}(U).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hodge::{MixedHodgeTable, PureHodgeVector};
use crate::specseq::{Block, BlockMatrix, ComplexRow, DoubleComplex, GradedSpace};
use crate::QMatrix;

/// Sorted set of component indices (1-based); empty means the ambient space.
pub type IndexSet = Vec<usize>;

#[derive(Debug, Clone, Default)]
pub struct Stratum {
    /// degree -> pure Hodge data, weight = degree.
    pub cohomology: BTreeMap<i64, PureHodgeVector>,
}

impl Stratum {
    pub fn dim_in_degree(&self, j: i64) -> u64 {
        self.cohomology.get(&j).map_or(0, |v| v.total())
    }

    /// Basis offset of the Hodge-index-p block inside H^j, blocks ascending in p.
    fn block_offset(&self, j: i64, p: i64) -> u64 {
        let Some(v) = self.cohomology.get(&j) else {
            return 0;
        };
        let mut off = 0;
        for (&p0, &d) in &v.dims {
            if p0 == p {
                return off;
            }
            off += d;
        }
        off
    }
}

#[derive(Debug, Clone, Default)]
pub struct StrataComplex {
    pub ambient_dim: u32,
    pub components: usize,
    pub strata: BTreeMap<IndexSet, Stratum>,
    /// (I, removed component i in I, degree j): raw Gysin H^j(D_I) -> H^{j+2}(D_{I minus i}).
    /// Rows and columns are ordered by ascending Hodge index within each degree.
    pub gysin: BTreeMap<(IndexSet, usize, i64), QMatrix>,
}

impl StrataComplex {
    /// Shape checks, block compatibility (Gysin shifts Hodge type by (1,1))
    /// and d1^2 = 0 on every weight row. Run once at load.
    pub fn validate(&self) -> Result<()> {
        for ((set, removed, degree), m) in &self.gysin {
            if !set.contains(removed) {
                return Err(Error::MissingStratum(format!(
                    "gysin removes {removed} which is not in {set:?}"
                )));
            }
            let target_set: IndexSet = set.iter().copied().filter(|i| i != removed).collect();
            let src = self
                .strata
                .get(set)
                .ok_or_else(|| Error::MissingStratum(format!("{set:?}")))?;
            let tgt = self
                .strata
                .get(&target_set)
                .ok_or_else(|| Error::MissingStratum(format!("{target_set:?}")))?;
            let (rows, cols) = (
                tgt.dim_in_degree(degree + 2) as usize,
                src.dim_in_degree(*degree) as usize,
            );
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "gysin {set:?} minus {removed} in degree {degree} is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )));
            }
            self.check_gysin_blocks(set, &target_set, *degree, m)?;
        }
        for w in 0..=(2 * self.ambient_dim as i64) {
            let row = self.weight_row(w)?;
            if let crate::specseq::RowReport::Violation { position, reason } = row.row.validate() {
                return Err(Error::NotAComplex(format!(
                    "weight-{w} row fails at position {position}: {reason}"
                )));
            }
        }
        Ok(())
    }

    /// Entries of a Gysin matrix may only connect Hodge block p to p + 1.
    fn check_gysin_blocks(
        &self,
        src_set: &IndexSet,
        tgt_set: &IndexSet,
        degree: i64,
        m: &QMatrix,
    ) -> Result<()> {
        let src = &self.strata[src_set];
        let tgt = &self.strata[tgt_set];
        let Some(sv) = src.cohomology.get(&degree) else {
            return Ok(());
        };
        let Some(tv) = tgt.cohomology.get(&(degree + 2)) else {
            return Ok(());
        };
        let block_of = |dims: &BTreeMap<i64, u64>, idx: u64| -> i64 {
            let mut off = 0;
            for (&p, &d) in dims {
                if idx < off + d {
                    return p;
                }
                off += d;
            }
            i64::MIN
        };
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !num_traits::Zero::is_zero(&m.get(i, j))
                    && block_of(&tv.dims, i as u64) != block_of(&sv.dims, j as u64) + 1
                {
                    return Err(Error::validation(
                        format!("gysin {src_set:?} degree {degree}"),
                        format!("entry ({i},{j}) crosses Hodge blocks"),
                    ));
                }
            }
        }
        Ok(())
    }

    fn strata_at_depth(&self, m: usize) -> Vec<(&IndexSet, &Stratum)> {
        self.strata
            .iter()
            .filter(|(set, _)| set.len() == m)
            .collect()
    }

    /// Direct sum of H^j over depth-m strata, Tate-twisted by (-m):
    /// a pure class of type (p0, j - p0) contributes to block (p0 + m, j - p0 + m).
    fn node(&self, m: usize, j: i64) -> GradedSpace {
        let mut space = GradedSpace::empty(format!("H^{j}(D({m}))({})", -(m as i64)));
        if j < 0 {
            return space;
        }
        for (_, stratum) in self.strata_at_depth(m) {
            if let Some(v) = stratum.cohomology.get(&j) {
                for (&p0, &d) in &v.dims {
                    space.add_block(Some((p0 + m as i64, j - p0 + m as i64)), d);
                }
            }
        }
        space
    }

    /// Signed Gysin sum out of depth m in inner degree j, as a block matrix
    /// between the twisted nodes. The engine applies the alternating sign
    /// (-1)^(position-1) over the position of the removed component in the
    /// sorted index set; user matrices stay raw pushforwards.
    fn gamma(&self, m: usize, j: i64) -> Result<BlockMatrix> {
        let source = self.node(m, j);
        let target = self.node(m - 1, j + 2);
        let mut per_block: BTreeMap<Block, QMatrix> = BTreeMap::new();
        for (set, stratum) in self.strata_at_depth(m) {
            let Some(sv) = stratum.cohomology.get(&j) else {
                continue;
            };
            for (pos, &i) in set.iter().enumerate() {
                let tgt_set: IndexSet = set.iter().copied().filter(|&x| x != i).collect();
                let raw = match self.gysin.get(&(set.clone(), i, j)) {
                    Some(raw) => raw,
                    None => {
                        if sv.total() > 0
                            && self
                                .strata
                                .get(&tgt_set)
                                .map_or(0, |s| s.dim_in_degree(j + 2))
                                > 0
                        {
                            return Err(Error::MissingStratum(format!(
                                "gysin matrix for {set:?} minus {i} in degree {j}"
                            )));
                        }
                        continue;
                    }
                };
                let tgt = &self.strata[&tgt_set];
                let negate = pos % 2 == 1;
                for (&p0, &cols) in &sv.dims {
                    let block = Some((p0 + m as i64, j - p0 + m as i64));
                    let bm = per_block.entry(block).or_insert_with(|| {
                        QMatrix::zero(
                            target.block_dim(&block) as usize,
                            source.block_dim(&block) as usize,
                        )
                    });
                    let src_off = self.block_node_offset(m, j, set, p0);
                    let tgt_off = self.block_node_offset(m - 1, j + 2, &tgt_set, p0 + 1);
                    let raw_src = stratum.block_offset(j, p0) as usize;
                    let raw_tgt = tgt.block_offset(j + 2, p0 + 1) as usize;
                    let rows = tgt
                        .cohomology
                        .get(&(j + 2))
                        .map_or(0, |v| v.dims.get(&(p0 + 1)).copied().unwrap_or(0))
                        as usize;
                    for r in 0..rows {
                        for c in 0..cols as usize {
                            let v = raw.get(raw_tgt + r, raw_src + c);
                            if !num_traits::Zero::is_zero(&v) {
                                let signed = if negate { -v } else { v };
                                let cur = bm.get(tgt_off + r, src_off + c);
                                bm.set(tgt_off + r, src_off + c, cur + signed);
                            }
                        }
                    }
                }
            }
        }
        let mut out = BlockMatrix::zero();
        for (b, m) in per_block {
            out.insert(b, m);
        }
        Ok(out)
    }

    /// Offset of stratum `set`'s Hodge-p0 part inside the twisted node block
    /// it lands in, strata in index-set order.
    fn block_node_offset(&self, m: usize, j: i64, set: &IndexSet, p0: i64) -> usize {
        let mut off = 0u64;
        for (s, stratum) in self.strata_at_depth(m) {
            if s == set {
                break;
            }
            if let Some(v) = stratum.cohomology.get(&j) {
                off += v.dims.get(&p0).copied().unwrap_or(0);
            }
        }
        off as usize
    }

    pub fn max_depth(&self) -> usize {
        self.strata.keys().map(|s| s.len()).max().unwrap_or(0)
    }

    /// E1 row of total weight w: nodes H^{w-2m}(D(m))(-m) with the signed
    /// Gysin sums as differentials, depths descending.
    pub fn weight_row(&self, w: i64) -> Result<WeightRow> {
        let m_max = self.max_depth().min((w.max(0) / 2) as usize);
        let mut nodes = Vec::new();
        let mut depths = Vec::new();
        for m in (0..=m_max).rev() {
            nodes.push(self.node(m, w - 2 * m as i64));
            depths.push(m);
        }
        let mut diffs = Vec::new();
        for m in (1..=m_max).rev() {
            diffs.push(self.gamma(m, w - 2 * m as i64)?);
        }
        Ok(WeightRow {
            weight: w,
            row: ComplexRow { nodes, diffs },
            depths,
        })
    }

    /// Weight-and-Hodge graded dimensions of H^*(U), U the open complement.
    /// Degeneration at E2 is a theorem; the engine never computes d2.
    pub fn weight_graded(&self) -> Result<MixedHodgeTable> {
        let mut table = MixedHodgeTable::new(self.ambient_dim);
        for w in 0..=(2 * self.ambient_dim as i64) {
            let wr = self.weight_row(w)?;
            let homology = wr.row.page_homology()?;
            for (pos, h) in homology.iter().enumerate() {
                let m = wr.depths[pos] as i64;
                let s = w - m;
                if s < 0 {
                    continue;
                }
                for (block, &d) in &h.blocks {
                    let p = block.map(|(p, _)| p).unwrap_or(0);
                    table.add(s, p, w, d);
                }
            }
        }
        Ok(table)
    }
}

/// A weight-w E1 row together with the depth carried by each node position.
#[derive(Debug, Clone)]
pub struct WeightRow {
    pub weight: i64,
    pub row: ComplexRow,
    /// node position -> strata depth m (positions run m_max, ..., 1, 0)
    pub depths: Vec<usize>,
}

/// Strata data over a simplicial variety: one strata complex per simplicial
/// level plus face pullbacks between consecutive levels.
#[derive(Debug, Clone, Default)]
pub struct SimplicialWeightComplex {
    pub ambient_dim: u32,
    pub levels: Vec<StrataComplex>,
    /// (level l, face index i <= l+1, depth m, degree j):
    /// pullback on depth-m totals, H^j(D^m at level l) -> H^j(D^m at level l+1).
    pub faces: BTreeMap<(usize, usize, usize, i64), QMatrix>,
}

impl SimplicialWeightComplex {
    pub fn validate(&self) -> Result<()> {
        for level in &self.levels {
            level.validate()?;
        }
        for ((l, _i, m, j), mat) in &self.faces {
            if *l + 1 >= self.levels.len() {
                return Err(Error::validation(
                    format!("face at level {l}"),
                    "target level out of range",
                ));
            }
            let cols = self.levels[*l].node(*m, *j).total() as usize;
            let rows = self.levels[*l + 1].node(*m, *j).total() as usize;
            if mat.rows() != rows || mat.cols() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "face at level {l} depth {m} degree {j} is {}x{}, expected {rows}x{cols}",
                    mat.rows(),
                    mat.cols()
                )));
            }
        }
        Ok(())
    }

    /// Alternating face sum at (level l, depth m, degree j).
    fn face_differential(&self, l: usize, m: usize, j: i64) -> QMatrix {
        let cols = self.levels[l].node(m, j).total() as usize;
        let rows = if l + 1 < self.levels.len() {
            self.levels[l + 1].node(m, j).total() as usize
        } else {
            0
        };
        let mut out = QMatrix::zero(rows, cols);
        for i in 0..=(l + 1) {
            if let Some(mat) = self.faces.get(&(l, i, m, j)) {
                let signed = if i % 2 == 0 {
                    mat.clone()
                } else {
                    mat.scale(&-<crate::Rational as num_traits::One>::one())
                };
                for r in 0..rows {
                    for c in 0..cols {
                        let v = signed.get(r, c);
                        if !num_traits::Zero::is_zero(&v) {
                            let cur = out.get(r, c);
                            out.set(r, c, cur + v);
                        }
                    }
                }
            }
        }
        out
    }

    /// Double complex of one total weight: x = -depth (Gysin direction),
    /// y = simplicial level (face direction).
    fn weight_double_complex(&self, w: i64) -> Result<DoubleComplex> {
        let mut dc = DoubleComplex::default();
        for (l, level) in self.levels.iter().enumerate() {
            let m_max = level.max_depth().min((w.max(0) / 2) as usize);
            for m in 0..=m_max {
                let j = w - 2 * m as i64;
                let node = level.node(m, j).collapsed();
                if node.total() > 0 {
                    dc.nodes.insert((-(m as i64), l as i64), node);
                }
                if m > 0 {
                    let gamma = level.gamma(m, j)?;
                    let on_totals = gamma.on_totals(&level.node(m - 1, j + 2), &level.node(m, j));
                    if !on_totals.is_zero() {
                        dc.horiz
                            .insert((-(m as i64), l as i64), BlockMatrix::plain(on_totals));
                    }
                }
                if l + 1 < self.levels.len() {
                    let d = self.face_differential(l, m, j);
                    if !d.is_zero() {
                        dc.vert
                            .insert((-(m as i64), l as i64), BlockMatrix::plain(d));
                    }
                }
            }
        }
        Ok(dc)
    }

    /// Weight-graded dimensions of H^* of the simplicial variety via
    /// totalization: position t = level - depth contributes to H^{w+t}.
    ///
    /// Face data is supplied on totals, so the Hodge split of a weight-w
    /// piece is not tracked here; pieces are recorded at the diagonal Hodge
    /// index, which is exact whenever the row is Hodge-Tate.
    pub fn weight_graded(&self) -> Result<MixedHodgeTable> {
        self.validate()?;
        let mut table = MixedHodgeTable::new(self.ambient_dim);
        for w in 0..=(2 * self.ambient_dim as i64) {
            let dc = self.weight_double_complex(w)?;
            if dc.nodes.is_empty() {
                continue;
            }
            let (row, t_min) = dc.totalize()?;
            let homology = row.page_homology()?;
            for (pos, h) in homology.iter().enumerate() {
                let t = t_min + pos as i64;
                let s = w + t;
                if s < 0 || h.total() == 0 {
                    continue;
                }
                table.add(s, w.div_euclid(2), w, h.total());
            }
        }
        Ok(table)
    }
}

/// Weight-graded dimensions of a compact normal-crossing variety via its
/// Mayer-Vietoris resolution; levels may carry only depth-0 strata.
pub fn nc_cohomology(sw: &SimplicialWeightComplex) -> Result<MixedHodgeTable> {
    for (l, level) in sw.levels.iter().enumerate() {
        if level.max_depth() > 0 {
            return Err(Error::validation(
                format!("level {l}"),
                "normal-crossing resolution carries no boundary strata",
            ));
        }
    }
    sw.weight_graded()
}

/// Weight-graded dimensions of an open simplicial variety; full double
/// complex with Gysin rows and face columns.
pub fn simplicial_weight_ss(sw: &SimplicialWeightComplex) -> Result<MixedHodgeTable> {
    sw.weight_graded()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn qm(rows: Vec<Vec<i64>>) -> QMatrix {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(q).collect())
                .collect(),
        )
        .unwrap()
    }

    fn pure(weight: i64, dims: &[(i64, u64)]) -> PureHodgeVector {
        let mut v = PureHodgeVector::new(weight);
        for &(p, d) in dims {
            v.dims.insert(p, d);
        }
        v
    }

    /// (P^1, {0, infinity})
    pub(crate) fn p1_two_points() -> StrataComplex {
        let mut sc = StrataComplex {
            ambient_dim: 1,
            components: 2,
            ..Default::default()
        };
        let mut x = Stratum::default();
        x.cohomology.insert(0, pure(0, &[(0, 1)]));
        x.cohomology.insert(2, pure(2, &[(1, 1)]));
        sc.strata.insert(vec![], x);
        for i in 1..=2 {
            let mut pt = Stratum::default();
            pt.cohomology.insert(0, pure(0, &[(0, 1)]));
            sc.strata.insert(vec![i], pt);
            sc.gysin.insert((vec![i], i, 0), qm(vec![vec![1]]));
        }
        sc
    }

    /// Product of two copies of (P^1, {0, infinity}); components 1, 2 are
    /// {0}, {inf} x P^1 and components 3, 4 are P^1 x {0}, {inf}.
    pub(crate) fn p1_product() -> StrataComplex {
        let mut sc = StrataComplex {
            ambient_dim: 2,
            components: 4,
            ..Default::default()
        };
        let mut x = Stratum::default();
        x.cohomology.insert(0, pure(0, &[(0, 1)]));
        x.cohomology.insert(2, pure(2, &[(1, 2)]));
        x.cohomology.insert(4, pure(4, &[(2, 1)]));
        sc.strata.insert(vec![], x);
        for i in 1..=4usize {
            let mut line = Stratum::default();
            line.cohomology.insert(0, pure(0, &[(0, 1)]));
            line.cohomology.insert(2, pure(2, &[(1, 1)]));
            sc.strata.insert(vec![i], line);
            let class = if i <= 2 {
                vec![vec![1], vec![0]]
            } else {
                vec![vec![0], vec![1]]
            };
            sc.gysin.insert((vec![i], i, 0), qm(class));
            sc.gysin.insert((vec![i], i, 2), qm(vec![vec![1]]));
        }
        for i in 1..=2usize {
            for j in 3..=4usize {
                let mut pt = Stratum::default();
                pt.cohomology.insert(0, pure(0, &[(0, 1)]));
                sc.strata.insert(vec![i, j], pt);
                sc.gysin.insert((vec![i, j], i, 0), qm(vec![vec![1]]));
                sc.gysin.insert((vec![i, j], j, 0), qm(vec![vec![1]]));
            }
        }
        sc
    }

    /// del Pezzo complement: X = Bl_n P^2, D = smooth elliptic E.
    pub(crate) fn del_pezzo_complement(n: u64) -> StrataComplex {
        let mut sc = StrataComplex {
            ambient_dim: 2,
            components: 1,
            ..Default::default()
        };
        let mut x = Stratum::default();
        x.cohomology.insert(0, pure(0, &[(0, 1)]));
        x.cohomology.insert(2, pure(2, &[(1, n + 1)]));
        x.cohomology.insert(4, pure(4, &[(2, 1)]));
        sc.strata.insert(vec![], x);
        let mut e = Stratum::default();
        e.cohomology.insert(0, pure(0, &[(0, 1)]));
        e.cohomology.insert(1, pure(1, &[(0, 1), (1, 1)]));
        e.cohomology.insert(2, pure(2, &[(1, 1)]));
        sc.strata.insert(vec![1], e);
        // [E] = -K is nonzero in H^2(X); the point class pushes to the point class
        let mut col = vec![vec![1]];
        col.extend(std::iter::repeat_n(vec![0], n as usize));
        sc.gysin.insert((vec![1], 1, 0), qm(col));
        sc.gysin.insert((vec![1], 1, 2), qm(vec![vec![1]]));
        sc
    }

    #[test]
    fn torus_n1_weight_rows() {
        let sc = p1_two_points();
        sc.validate().unwrap();

        let w0 = sc.weight_row(0).unwrap();
        assert_eq!(w0.row.nodes.len(), 1);
        assert_eq!(w0.row.nodes[0].total(), 1);

        let w2 = sc.weight_row(2).unwrap();
        let dims: Vec<u64> = w2.row.nodes.iter().map(|n| n.total()).collect();
        assert_eq!(dims, vec![2, 1]);
        assert_eq!(w2.depths, vec![1, 0]);
        let d = w2.row.diffs[0].on_totals(&w2.row.nodes[1], &w2.row.nodes[0]);
        assert_eq!(d.rank(), 1);
    }

    #[test]
    fn torus_n1_weight_graded() {
        let table = p1_two_points().weight_graded().unwrap();
        assert_eq!(table, MixedHodgeTable::torus(1));
    }

    #[test]
    fn product_weight_graded_matches_kunneth() {
        let sc = p1_product();
        sc.validate().unwrap();

        // weight-4 row: dims (4, 4, 1) with a rank-3 Gysin out of the points
        let w4 = sc.weight_row(4).unwrap();
        let dims: Vec<u64> = w4.row.nodes.iter().map(|n| n.total()).collect();
        assert_eq!(dims, vec![4, 4, 1]);
        let d = w4.row.diffs[0].on_totals(&w4.row.nodes[1], &w4.row.nodes[0]);
        assert_eq!(d.rank(), 3);

        assert_eq!(sc.weight_graded().unwrap(), MixedHodgeTable::torus(2));
    }

    #[test]
    fn empty_boundary_returns_pure_cohomology() {
        let mut sc = StrataComplex {
            ambient_dim: 1,
            components: 0,
            ..Default::default()
        };
        let mut x = Stratum::default();
        x.cohomology.insert(0, pure(0, &[(0, 1)]));
        x.cohomology.insert(2, pure(2, &[(1, 1)]));
        sc.strata.insert(vec![], x);
        let t = sc.weight_graded().unwrap();
        assert_eq!(t.get(0, 0, 0), 1);
        assert_eq!(t.get(2, 1, 2), 1);
    }

    #[test]
    fn del_pezzo_weight_graded() {
        // The Gysin sequence forces Gr^W_2 H^2(U_n) = Q(-1)^n and
        // Gr^W_3 H^2 = H^1(E)(-1); the Euler characteristic n + 3 pins the
        // weight-2 block at dimension n.
        for n in [0u64, 3, 6] {
            let table = del_pezzo_complement(n).weight_graded().unwrap();
            assert_eq!(table.get(0, 0, 0), 1);
            assert_eq!(table.betti(1), 0);
            assert_eq!(table.get(2, 1, 2), n);
            assert_eq!(table.get(2, 1, 3), 1);
            assert_eq!(table.get(2, 2, 3), 1);
            assert_eq!(table.betti(2), n + 2);
        }
    }

    fn point_level() -> StrataComplex {
        let mut sc = StrataComplex::default();
        let mut x = Stratum::default();
        x.cohomology.insert(0, pure(0, &[(0, 1)]));
        sc.strata.insert(vec![], x);
        sc
    }

    /// Wheel of two lines: two P^1 meeting at two points.
    fn wheel_of_two_lines() -> SimplicialWeightComplex {
        let mut level0 = StrataComplex {
            ambient_dim: 1,
            ..Default::default()
        };
        let mut x = Stratum::default();
        x.cohomology.insert(0, pure(0, &[(0, 2)]));
        x.cohomology.insert(2, pure(2, &[(1, 2)]));
        level0.strata.insert(vec![], x);

        let mut level1 = StrataComplex::default();
        let mut pts = Stratum::default();
        pts.cohomology.insert(0, pure(0, &[(0, 2)]));
        level1.strata.insert(vec![], pts);

        let mut sw = SimplicialWeightComplex {
            ambient_dim: 1,
            levels: vec![level0, level1],
            faces: BTreeMap::new(),
        };
        // both intersection points restrict from both components
        sw.faces
            .insert((0, 0, 0, 0), qm(vec![vec![1, 0], vec![1, 0]]));
        sw.faces
            .insert((0, 1, 0, 0), qm(vec![vec![0, 1], vec![0, 1]]));
        sw
    }

    #[test]
    fn wheel_of_two_lines_cohomology() {
        let t = nc_cohomology(&wheel_of_two_lines()).unwrap();
        assert_eq!(t.get(0, 0, 0), 1); // H^0 = Q
        assert_eq!(t.get(1, 0, 0), 1); // H^1 = Q(0)
        assert_eq!(t.get(2, 1, 2), 2); // H^2 = Q(-1)^2
        assert_eq!(t.dims.len(), 3);
    }

    #[test]
    fn single_smooth_component_is_identity() {
        let mut level0 = StrataComplex {
            ambient_dim: 1,
            ..Default::default()
        };
        let mut x = Stratum::default();
        x.cohomology.insert(0, pure(0, &[(0, 1)]));
        x.cohomology.insert(2, pure(2, &[(1, 1)]));
        level0.strata.insert(vec![], x);
        let sw = SimplicialWeightComplex {
            ambient_dim: 1,
            levels: vec![level0],
            faces: BTreeMap::new(),
        };
        let t = nc_cohomology(&sw).unwrap();
        assert_eq!(t.get(0, 0, 0), 1);
        assert_eq!(t.get(2, 1, 2), 1);
    }

    #[test]
    fn two_disjoint_points_direct_sum() {
        let mut level0 = StrataComplex::default();
        let mut x = Stratum::default();
        x.cohomology.insert(0, pure(0, &[(0, 2)]));
        level0.strata.insert(vec![], x);
        let sw = SimplicialWeightComplex {
            ambient_dim: 0,
            levels: vec![level0],
            faces: BTreeMap::new(),
        };
        assert_eq!(nc_cohomology(&sw).unwrap().get(0, 0, 0), 2);
    }

    #[test]
    fn nc_rejects_deep_strata() {
        let mut sw = wheel_of_two_lines();
        sw.levels[0] = p1_two_points();
        assert!(nc_cohomology(&sw).is_err());
    }

    /// Two affine lines meeting at a point (the coordinate cross in C^2).
    fn affine_cross() -> SimplicialWeightComplex {
        let mut level0 = StrataComplex {
            ambient_dim: 1,
            components: 2,
            ..Default::default()
        };
        let mut x = Stratum::default();
        x.cohomology.insert(0, pure(0, &[(0, 2)]));
        x.cohomology.insert(2, pure(2, &[(1, 2)]));
        level0.strata.insert(vec![], x);
        for i in 1..=2usize {
            let mut inf = Stratum::default();
            inf.cohomology.insert(0, pure(0, &[(0, 1)]));
            level0.strata.insert(vec![i], inf);
            let col = if i == 1 {
                vec![vec![1], vec![0]]
            } else {
                vec![vec![0], vec![1]]
            };
            level0.gysin.insert((vec![i], i, 0), qm(col));
        }

        let mut sw = SimplicialWeightComplex {
            ambient_dim: 1,
            levels: vec![level0, point_level()],
            faces: BTreeMap::new(),
        };
        sw.faces.insert((0, 0, 0, 0), qm(vec![vec![1, 0]]));
        sw.faces.insert((0, 1, 0, 0), qm(vec![vec![0, 1]]));
        sw
    }

    #[test]
    fn affine_cross_is_contractible_in_cohomology() {
        let t = simplicial_weight_ss(&affine_cross()).unwrap();
        assert_eq!(t.get(0, 0, 0), 1);
        assert_eq!(t.dims.len(), 1);
    }

    /// Two copies of C* glued along a shared point.
    fn glued_tori() -> SimplicialWeightComplex {
        let mut level0 = StrataComplex {
            ambient_dim: 1,
            components: 4,
            ..Default::default()
        };
        let mut x = Stratum::default();
        x.cohomology.insert(0, pure(0, &[(0, 2)]));
        x.cohomology.insert(2, pure(2, &[(1, 2)]));
        level0.strata.insert(vec![], x);
        // each copy of P^1 carries two boundary points
        for i in 1..=4usize {
            let mut pt = Stratum::default();
            pt.cohomology.insert(0, pure(0, &[(0, 1)]));
            level0.strata.insert(vec![i], pt);
            let col = if i <= 2 {
                vec![vec![1], vec![0]]
            } else {
                vec![vec![0], vec![1]]
            };
            level0.gysin.insert((vec![i], i, 0), qm(col));
        }
        let mut sw = SimplicialWeightComplex {
            ambient_dim: 1,
            levels: vec![level0, point_level()],
            faces: BTreeMap::new(),
        };
        sw.faces.insert((0, 0, 0, 0), qm(vec![vec![1, 0]]));
        sw.faces.insert((0, 1, 0, 0), qm(vec![vec![0, 1]]));
        sw
    }

    #[test]
    fn glued_tori_match_direct_sum_after_correction() {
        let t = simplicial_weight_ss(&glued_tori()).unwrap();
        // the direct sum of two C* tables has H^0 = Q^2; gluing along one
        // shared point removes one unit from H^0
        assert_eq!(t.get(0, 0, 0), 1);
        assert_eq!(t.get(1, 1, 2), 2);
        assert_eq!(t.dims.len(), 2);
    }

    #[test]
    fn totalize_matches_direct_mv_row() {
        // a compact NC curve has face maps only, so each totalized weight
        // row must agree with the direct Mayer-Vietoris row
        let sw = wheel_of_two_lines();
        let dc0 = sw.weight_double_complex(0).unwrap();
        let (row, t_min) = dc0.totalize().unwrap();
        assert_eq!(t_min, 0);
        let dims: Vec<u64> = row.nodes.iter().map(|n| n.total()).collect();
        assert_eq!(dims, vec![2, 2]);
        let d = row.diffs[0].on_totals(&row.nodes[1], &row.nodes[0]);
        assert_eq!(d, sw.face_differential(0, 0, 0));
    }

    #[test]
    fn gysin_sign_validation_rejects_bad_square() {
        let mut sc = p1_product();
        sc.gysin.insert((vec![1, 3], 1, 0), qm(vec![vec![-1]]));
        match sc.validate() {
            Err(Error::NotAComplex(msg)) => assert!(msg.contains("weight-4")),
            other => panic!("expected NotAComplex, got {other:?}"),
        }
    }

    #[test]
    fn blockwise_equals_totals_on_weight_rows() {
        let sc = p1_product();
        for w in 0..=4 {
            let wr = sc.weight_row(w).unwrap();
            let blocked: Vec<u64> = wr
                .row
                .page_homology()
                .unwrap()
                .iter()
                .map(|g| g.total())
                .collect();
            let collapsed: Vec<u64> = wr
                .row
                .collapse_blocks()
                .page_homology()
                .unwrap()
                .iter()
                .map(|g| g.total())
                .collect();
            assert_eq!(blocked, collapsed);
        }
    }

    #[test]
    fn betti_totals_match_declared() {
        let t = p1_product().weight_graded().unwrap();
        for (k, b) in [(0i64, 1u64), (1, 2), (2, 1)] {
            assert_eq!(t.betti(k), b);
        }
    }

    #[test]
    fn euler_preserved_through_pages() {
        let sc = p1_product();
        for w in 0..=4 {
            let wr = sc.weight_row(w).unwrap();
            let h = wr.row.page_homology().unwrap();
            let e2: i64 = h
                .iter()
                .enumerate()
                .map(|(i, n)| {
                    if i % 2 == 0 {
                        n.total() as i64
                    } else {
                        -(n.total() as i64)
                    }
                })
                .sum();
            assert_eq!(wr.row.euler_characteristic(), e2, "weight {w}");
        }
    }
}
