//! Bounded complexes and double complexes of graded rational vector spaces.
//!
//! Only two pages ever matter: the E1 page is supplied (as matrices between
//! graded nodes) and the E2 graded dimensions are returned. The weight and
//! perverse sequences both degenerate there, so no general-page machinery is
//! built.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::QMatrix;

/// Optional Hodge bidegree attached to a block of a node.
pub type Block = Option<(i64, i64)>;

/// One node of a complex: a direct sum of blocks keyed by Hodge bidegree.
/// Nodes without Hodge data carry a single `None` block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpace {
    pub name: String,
    pub blocks: BTreeMap<Block, u64>,
}

impl GradedSpace {
    pub fn plain(name: impl Into<String>, dim: u64) -> Self {
        let mut blocks = BTreeMap::new();
        if dim > 0 {
            blocks.insert(None, dim);
        }
        GradedSpace {
            name: name.into(),
            blocks,
        }
    }

    pub fn empty(name: impl Into<String>) -> Self {
        GradedSpace {
            name: name.into(),
            blocks: BTreeMap::new(),
        }
    }

    pub fn add_block(&mut self, block: Block, dim: u64) {
        if dim > 0 {
            *self.blocks.entry(block).or_insert(0) += dim;
        }
    }

    pub fn block_dim(&self, block: &Block) -> u64 {
        self.blocks.get(block).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.blocks.values().sum()
    }

    /// Merge all blocks into a single unlabelled one.
    pub fn collapsed(&self) -> Self {
        GradedSpace::plain(self.name.clone(), self.total())
    }

    /// Column offset of a block inside the total space, blocks in key order.
    fn block_offset(&self, block: &Block) -> u64 {
        let mut off = 0;
        for (b, d) in &self.blocks {
            if b == block {
                return off;
            }
            off += d;
        }
        off
    }
}

/// A block-diagonal map between graded nodes: one matrix per shared block key.
/// Missing keys are zero maps.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrix {
    pub blocks: BTreeMap<Block, QMatrix>,
}

impl BlockMatrix {
    pub fn zero() -> Self {
        BlockMatrix {
            blocks: BTreeMap::new(),
        }
    }

    pub fn plain(m: QMatrix) -> Self {
        let mut blocks = BTreeMap::new();
        blocks.insert(None, m);
        BlockMatrix { blocks }
    }

    pub fn insert(&mut self, block: Block, m: QMatrix) {
        self.blocks.insert(block, m);
    }

    pub fn block(&self, block: &Block, target: &GradedSpace, source: &GradedSpace) -> QMatrix {
        self.blocks.get(block).cloned().unwrap_or_else(|| {
            QMatrix::zero(
                target.block_dim(block) as usize,
                source.block_dim(block) as usize,
            )
        })
    }

    fn check_shapes(&self, target: &GradedSpace, source: &GradedSpace) -> Result<()> {
        for (b, m) in &self.blocks {
            let (rows, cols) = (target.block_dim(b) as usize, source.block_dim(b) as usize);
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "map {} -> {} block {:?} is {}x{}, expected {}x{}",
                    source.name,
                    target.name,
                    b,
                    m.rows(),
                    m.cols(),
                    rows,
                    cols
                )));
            }
        }
        Ok(())
    }

    /// Assemble the block-diagonal matrix on the total spaces.
    pub fn on_totals(&self, target: &GradedSpace, source: &GradedSpace) -> QMatrix {
        let mut m = QMatrix::zero(target.total() as usize, source.total() as usize);
        for (b, blk) in &self.blocks {
            let roff = target.block_offset(b) as usize;
            let coff = source.block_offset(b) as usize;
            for i in 0..blk.rows() {
                for j in 0..blk.cols() {
                    let v = blk.get(i, j);
                    if !num_traits::Zero::is_zero(&v) {
                        m.set(roff + i, coff + j, v);
                    }
                }
            }
        }
        m
    }
}

/// A bounded complex: `diffs[i]` maps `nodes[i]` to `nodes[i + 1]`.
#[derive(Debug, Clone)]
pub struct ComplexRow {
    pub nodes: Vec<GradedSpace>,
    pub diffs: Vec<BlockMatrix>,
}

/// Outcome of validating a row; failures are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowReport {
    Ok,
    Violation { position: usize, reason: String },
}

impl ComplexRow {
    pub fn validate(&self) -> RowReport {
        if self.nodes.is_empty() || self.diffs.len() + 1 != self.nodes.len() {
            return RowReport::Violation {
                position: 0,
                reason: format!(
                    "{} nodes need {} differentials, found {}",
                    self.nodes.len(),
                    self.nodes.len().saturating_sub(1),
                    self.diffs.len()
                ),
            };
        }
        for (i, d) in self.diffs.iter().enumerate() {
            if let Err(e) = d.check_shapes(&self.nodes[i + 1], &self.nodes[i]) {
                return RowReport::Violation {
                    position: i,
                    reason: e.to_string(),
                };
            }
        }
        for i in 0..self.diffs.len().saturating_sub(1) {
            let first = self.diffs[i].on_totals(&self.nodes[i + 1], &self.nodes[i]);
            let second = self.diffs[i + 1].on_totals(&self.nodes[i + 2], &self.nodes[i + 1]);
            match second.mul(&first) {
                Ok(comp) if comp.is_zero() => {}
                Ok(_) => {
                    return RowReport::Violation {
                        position: i,
                        reason: format!(
                            "composition {} -> {} -> {} is nonzero",
                            self.nodes[i].name,
                            self.nodes[i + 1].name,
                            self.nodes[i + 2].name
                        ),
                    }
                }
                Err(e) => {
                    return RowReport::Violation {
                        position: i,
                        reason: e.to_string(),
                    }
                }
            }
        }
        RowReport::Ok
    }

    /// E2 graded dimensions at every node, computed blockwise.
    ///
    /// The supplied differentials are block-diagonal (strictly compatible
    /// with the Hodge filtration), so homology splits per block.
    pub fn page_homology(&self) -> Result<Vec<GradedSpace>> {
        if let RowReport::Violation { position, reason } = self.validate() {
            return Err(Error::NotAComplex(format!(
                "at position {position}: {reason}"
            )));
        }
        let mut out = Vec::with_capacity(self.nodes.len());
        for i in 0..self.nodes.len() {
            let mut h = GradedSpace::empty(format!("E2({})", self.nodes[i].name));
            for b in self.nodes[i].blocks.keys() {
                let d_out = if i < self.diffs.len() {
                    self.diffs[i].block(b, &self.nodes[i + 1], &self.nodes[i])
                } else {
                    QMatrix::zero(0, self.nodes[i].block_dim(b) as usize)
                };
                let d_in = if i > 0 {
                    self.diffs[i - 1].block(b, &self.nodes[i], &self.nodes[i - 1])
                } else {
                    QMatrix::zero(self.nodes[i].block_dim(b) as usize, 0)
                };
                let dim = crate::linalg::homology_dim(&d_in, &d_out)?;
                h.add_block(*b, dim as u64);
            }
            out.push(h);
        }
        Ok(out)
    }

    /// Forget the block structure: totals with plain differentials.
    pub fn collapse_blocks(&self) -> ComplexRow {
        let nodes: Vec<GradedSpace> = self.nodes.iter().map(|n| n.collapsed()).collect();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(i, d)| BlockMatrix::plain(d.on_totals(&self.nodes[i + 1], &self.nodes[i])))
            .collect();
        ComplexRow { nodes, diffs }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                if i % 2 == 0 {
                    n.total() as i64
                } else {
                    -(n.total() as i64)
                }
            })
            .sum()
    }
}

/// Wrapper for `ComplexRow::validate` matching the checker signature.
pub fn validate_complex(row: &ComplexRow) -> RowReport {
    row.validate()
}

pub fn page_homology(row: &ComplexRow) -> Result<Vec<GradedSpace>> {
    row.page_homology()
}

/// A bounded double complex. `horiz` maps (x, y) -> (x+1, y) (Gysin-type),
/// `vert` maps (x, y) -> (x, y+1) (face-type). The raw differentials must
/// commute; the sign twist (-1)^(x+y) on the vertical part makes the total
/// differential square to zero.
#[derive(Debug, Clone, Default)]
pub struct DoubleComplex {
    pub nodes: BTreeMap<(i64, i64), GradedSpace>,
    pub horiz: BTreeMap<(i64, i64), BlockMatrix>,
    pub vert: BTreeMap<(i64, i64), BlockMatrix>,
}

impl DoubleComplex {
    pub fn node(&self, x: i64, y: i64) -> GradedSpace {
        self.nodes
            .get(&(x, y))
            .cloned()
            .unwrap_or_else(|| GradedSpace::empty(format!("({x},{y})")))
    }

    fn map(
        &self,
        table: &BTreeMap<(i64, i64), BlockMatrix>,
        from: (i64, i64),
        to: (i64, i64),
    ) -> QMatrix {
        let target = self.node(to.0, to.1);
        let source = self.node(from.0, from.1);
        match table.get(&from) {
            Some(bm) => bm.on_totals(&target, &source),
            None => QMatrix::zero(target.total() as usize, source.total() as usize),
        }
    }

    fn validate(&self) -> Result<()> {
        for (&(x, y), bm) in &self.horiz {
            bm.check_shapes(&self.node(x + 1, y), &self.node(x, y))?;
        }
        for (&(x, y), bm) in &self.vert {
            bm.check_shapes(&self.node(x, y + 1), &self.node(x, y))?;
        }
        for &(x, y) in self.nodes.keys() {
            let h2 = self
                .map(&self.horiz, (x + 1, y), (x + 2, y))
                .mul(&self.map(&self.horiz, (x, y), (x + 1, y)))?;
            if !h2.is_zero() {
                return Err(Error::NotAComplex(format!(
                    "horizontal square at ({x},{y})"
                )));
            }
            let v2 = self.map(&self.vert, (x, y + 1), (x, y + 2)).mul(&self.map(
                &self.vert,
                (x, y),
                (x, y + 1),
            ))?;
            if !v2.is_zero() {
                return Err(Error::NotAComplex(format!("vertical square at ({x},{y})")));
            }
            // raw differentials commute; the sign twist turns this into
            // anticommutation of the total differential
            let hv = self
                .map(&self.horiz, (x, y + 1), (x + 1, y + 1))
                .mul(&self.map(&self.vert, (x, y), (x, y + 1)))?;
            let vh = self
                .map(&self.vert, (x + 1, y), (x + 1, y + 1))
                .mul(&self.map(&self.horiz, (x, y), (x + 1, y)))?;
            if hv != vh {
                return Err(Error::SignRuleViolation(format!(
                    "differentials do not commute at ({x},{y})"
                )));
            }
        }
        Ok(())
    }

    /// Total complex along antidiagonals x + y = t, with the vertical maps
    /// twisted by (-1)^t. Returns the row and the position of its first node.
    pub fn totalize(&self) -> Result<(ComplexRow, i64)> {
        self.validate()?;
        if self.nodes.is_empty() {
            return Ok((
                ComplexRow {
                    nodes: vec![GradedSpace::empty("total")],
                    diffs: vec![],
                },
                0,
            ));
        }
        let t_min = self.nodes.keys().map(|&(x, y)| x + y).min().unwrap();
        let t_max = self.nodes.keys().map(|&(x, y)| x + y).max().unwrap();

        // per antidiagonal: ordered list of (x, y) and the direct sum node
        let mut diag_keys: BTreeMap<i64, Vec<(i64, i64)>> = BTreeMap::new();
        for &(x, y) in self.nodes.keys() {
            diag_keys.entry(x + y).or_default().push((x, y));
        }
        let mut nodes = Vec::new();
        let mut offsets: BTreeMap<(i64, i64), u64> = BTreeMap::new();
        for t in t_min..=t_max {
            let keys = diag_keys.get(&t).cloned().unwrap_or_default();
            let mut space = GradedSpace::empty(format!("Tot^{t}"));
            let mut off = 0;
            for &k in &keys {
                offsets.insert(k, off);
                let n = self.node(k.0, k.1);
                off += n.total();
                space.add_block(None, n.total());
            }
            nodes.push(space);
        }

        let mut diffs = Vec::new();
        for t in t_min..t_max {
            let src_dim = nodes[(t - t_min) as usize].total() as usize;
            let tgt_dim = nodes[(t - t_min + 1) as usize].total() as usize;
            let mut m = QMatrix::zero(tgt_dim, src_dim);
            let sign_neg = t.rem_euclid(2) == 1;
            for &key in diag_keys.get(&t).map(|v| v.as_slice()).unwrap_or(&[]) {
                let (x, y) = key;
                let src_off = offsets[&key] as usize;
                for (to, table, signed) in [
                    ((x + 1, y), &self.horiz, false),
                    ((x, y + 1), &self.vert, true),
                ] {
                    if self.node(to.0, to.1).total() == 0 {
                        continue;
                    }
                    let block = self.map(table, key, to);
                    let minus_one = -<crate::Rational as num_traits::One>::one();
                    let block = if signed && sign_neg {
                        block.scale(&minus_one)
                    } else {
                        block
                    };
                    let tgt_off = offsets.get(&to).copied().unwrap_or(0) as usize;
                    for i in 0..block.rows() {
                        for j in 0..block.cols() {
                            let v = block.get(i, j);
                            if !num_traits::Zero::is_zero(&v) {
                                m.set(tgt_off + i, src_off + j, v);
                            }
                        }
                    }
                }
            }
            diffs.push(BlockMatrix::plain(m));
        }

        let row = ComplexRow { nodes, diffs };
        if let RowReport::Violation { position, reason } = row.validate() {
            return Err(Error::SignRuleViolation(format!(
                "total differential fails at position {position}: {reason}"
            )));
        }
        Ok((row, t_min))
    }
}
