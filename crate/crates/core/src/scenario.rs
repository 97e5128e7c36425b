//! Scenario files: JSON descriptions of fixtures and the checks to run on
//! them. Rationals are strings ("3", "-1/2"), matrices are row-major string
//! grids, index sets are sorted integer arrays.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hodge::{MixedHodgeTable, PWTable, PerverseHodgeTable, PureHodgeVector, WeightMode};
use crate::lg::{LGHodgeTables, LGSpec};
use crate::linalg::Matrix;
use crate::perverse::{CechRow, CupRing, FlagComplex, IndexConvention};
use crate::weight::{SimplicialWeightComplex, StrataComplex};
use crate::{QMatrix, Rational};

fn parse_rational(s: &str, path: &str) -> Result<Rational> {
    Rational::from_str(s).map_err(|e| Error::validation(path, format!("bad rational {s:?}: {e}")))
}

fn parse_matrix(
    rows: &[Vec<String>],
    rows_expected: usize,
    cols_expected: usize,
    path: &str,
) -> Result<QMatrix> {
    if rows.is_empty() {
        return Ok(QMatrix::zero(rows_expected, cols_expected));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let mut r = Vec::with_capacity(row.len());
        for (j, cell) in row.iter().enumerate() {
            r.push(parse_rational(cell, &format!("{path}[{i}][{j}]"))?);
        }
        out.push(r);
    }
    let m = Matrix::from_rows(out).map_err(|e| Error::validation(path, e.to_string()))?;
    if m.rows() != rows_expected || m.cols() != cols_expected {
        return Err(Error::validation(
            path,
            format!(
                "matrix is {}x{}, expected {rows_expected}x{cols_expected}",
                m.rows(),
                m.cols()
            ),
        ));
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// raw serde shapes

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HodgeEntry {
    pub p: i64,
    pub dim: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StratumRecord {
    pub index_set: Vec<usize>,
    pub degree: i64,
    pub hodge: Vec<HodgeEntry>,
    #[serde(default)]
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GysinRecord {
    pub from_set: Vec<usize>,
    pub removed_index: usize,
    pub degree: i64,
    #[serde(default)]
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StrataBlock {
    pub ambient_dim: u32,
    #[serde(default)]
    pub components: usize,
    pub strata: Vec<StratumRecord>,
    #[serde(default)]
    pub gysin: Vec<GysinRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FaceRecord {
    pub level: usize,
    pub face: usize,
    #[serde(default)]
    pub depth: usize,
    pub degree: i64,
    #[serde(default)]
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimplicialBlock {
    pub ambient_dim: u32,
    pub levels: Vec<StrataBlock>,
    #[serde(default)]
    pub faces: Vec<FaceRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegreeDim {
    pub degree: i64,
    pub dim: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlagRecord {
    pub level: usize,
    pub degree: i64,
    pub dim: u64,
    #[serde(default)]
    pub restriction: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CechMapRecord {
    pub level: usize,
    #[serde(default)]
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CechRowRecord {
    pub k: i64,
    pub nodes: Vec<u64>,
    #[serde(default)]
    pub maps: Vec<CechMapRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlagBlock {
    pub ambient_dim: u32,
    pub potentials: usize,
    #[serde(default)]
    pub convention: Option<String>,
    pub space: Vec<DegreeDim>,
    #[serde(default)]
    pub flag: Vec<FlagRecord>,
    #[serde(default)]
    pub cech: Vec<CechRowRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisRecord {
    pub name: String,
    pub degree: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProductRecord {
    pub left: usize,
    pub right: usize,
    pub coefficients: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiltrationRecord {
    pub degree: i64,
    pub offset: i64,
    pub spans: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingBlock {
    pub potentials: usize,
    pub basis: Vec<BasisRecord>,
    #[serde(default)]
    pub products: Vec<ProductRecord>,
    #[serde(default)]
    pub filtration: Vec<FiltrationRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LgSpecBlock {
    pub n: u32,
    pub degrees: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableEntry {
    #[serde(default)]
    pub s: i64,
    #[serde(default)]
    pub p: Option<i64>,
    #[serde(default)]
    pub w: Option<i64>,
    #[serde(default)]
    pub a: Option<i64>,
    #[serde(default)]
    pub b: Option<i64>,
    #[serde(default)]
    pub r: Option<i64>,
    #[serde(default)]
    pub rho: Option<i64>,
    #[serde(default)]
    pub degree: Option<i64>,
    #[serde(default)]
    pub level: Option<i64>,
    pub dim: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableBlock {
    /// "mixed" (s, p, w), "pw" (s, a, b, r), "perverse" (s, a, rho) or
    /// "levels" (degree, level)
    pub kind: String,
    #[serde(default)]
    pub n: u32,
    /// weight validation mode: "smooth-open", "limit" or "none"
    #[serde(default)]
    pub mode: Option<String>,
    pub entries: Vec<TableEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LgFlavorEntry {
    pub p: i64,
    pub q: i64,
    pub dim: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LgTablesBlock {
    pub flavors: BTreeMap<String, Vec<LgFlavorEntry>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GluingBlock {
    pub total: Vec<DegreeDim>,
    pub parts: Vec<Vec<DegreeDim>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImageDimRecord {
    pub degree: i64,
    pub level: i64,
    pub dim: u64,
}

/// One check to run, dispatched on `op`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Task {
    pub name: String,
    pub op: String,
    #[serde(default)]
    pub table: Option<String>,
    #[serde(default)]
    pub strata: Option<String>,
    #[serde(default)]
    pub simplicial: Option<String>,
    #[serde(default)]
    pub flag: Option<String>,
    #[serde(default)]
    pub ring: Option<String>,
    #[serde(default)]
    pub lg_spec: Option<String>,
    #[serde(default)]
    pub lg_tables: Option<String>,
    #[serde(default)]
    pub gluing: Option<String>,
    #[serde(default)]
    pub n: Option<i64>,
    #[serde(default)]
    pub potentials: Option<i64>,
    #[serde(default)]
    pub u_side: Option<String>,
    #[serde(default)]
    pub v_side: Option<String>,
    #[serde(default)]
    pub y_perverse: Option<String>,
    #[serde(default)]
    pub weight: Option<String>,
    #[serde(default)]
    pub level: Option<i64>,
    #[serde(default)]
    pub limiting: Option<String>,
    #[serde(default)]
    pub witnesses: Vec<String>,
    #[serde(default)]
    pub left: Option<String>,
    #[serde(default)]
    pub right: Option<String>,
    #[serde(default)]
    pub variant: Option<String>,
    #[serde(default)]
    pub line: Option<serde_json::Value>,
    #[serde(default)]
    pub image_dims: Vec<ImageDimRecord>,
    /// "ok" (default), "violation" or "refused"
    #[serde(default)]
    pub expect: Option<String>,
    #[serde(default)]
    pub expect_poly: Option<String>,
    #[serde(default)]
    pub expect_table: Option<String>,
    #[serde(default)]
    pub expect_betti: Vec<DegreeDim>,
    #[serde(default)]
    pub expect_count: Option<u64>,
    #[serde(default)]
    pub expect_locus: Option<String>,
    #[serde(default)]
    pub compare_flavor: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub name: String,
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub strata: BTreeMap<String, StrataBlock>,
    #[serde(default)]
    pub simplicial: BTreeMap<String, SimplicialBlock>,
    #[serde(default)]
    pub flags: BTreeMap<String, FlagBlock>,
    #[serde(default)]
    pub rings: BTreeMap<String, RingBlock>,
    #[serde(default)]
    pub lg_specs: BTreeMap<String, LgSpecBlock>,
    #[serde(default)]
    pub tables: BTreeMap<String, TableBlock>,
    #[serde(default)]
    pub lg_tables: BTreeMap<String, LgTablesBlock>,
    #[serde(default)]
    pub gluing: BTreeMap<String, GluingBlock>,
    pub tasks: Vec<Task>,
}

// ---------------------------------------------------------------------------
// resolved scenario

/// Per-degree dims of the glued space and of its parts.
pub type GluingTables = (BTreeMap<i64, u64>, Vec<BTreeMap<i64, u64>>);

/// A resolved table of any of the four kinds.
#[derive(Debug, Clone)]
pub enum AnyTable {
    Mixed(MixedHodgeTable),
    Pw(PWTable),
    Perverse(PerverseHodgeTable),
    Levels(BTreeMap<(i64, i64), u64>),
}

#[derive(Debug, Clone, Default)]
pub struct Scenario {
    pub name: String,
    pub strata: BTreeMap<String, StrataComplex>,
    pub simplicial: BTreeMap<String, SimplicialWeightComplex>,
    pub flags: BTreeMap<String, FlagComplex>,
    pub rings: BTreeMap<String, CupRing>,
    pub lg_specs: BTreeMap<String, LGSpec>,
    pub tables: BTreeMap<String, AnyTable>,
    pub lg_tables: BTreeMap<String, LGHodgeTables>,
    pub gluing: BTreeMap<String, GluingTables>,
    pub tasks: Vec<Task>,
}

fn build_strata(block: &StrataBlock, path: &str) -> Result<StrataComplex> {
    let mut sc = StrataComplex {
        ambient_dim: block.ambient_dim,
        components: block.components,
        ..Default::default()
    };
    for (i, rec) in block.strata.iter().enumerate() {
        let mut set = rec.index_set.clone();
        set.sort_unstable();
        let stratum = sc.strata.entry(set).or_default();
        let vector = stratum
            .cohomology
            .entry(rec.degree)
            .or_insert_with(|| PureHodgeVector::new(rec.degree));
        for h in &rec.hodge {
            if h.dim == 0 {
                continue;
            }
            if vector.dims.insert(h.p, h.dim).is_some() {
                return Err(Error::validation(
                    format!("{path}.strata[{i}]"),
                    format!("duplicate Hodge index {} in degree {}", h.p, rec.degree),
                ));
            }
        }
    }
    for (i, rec) in block.gysin.iter().enumerate() {
        let mut set = rec.from_set.clone();
        set.sort_unstable();
        let src = sc
            .strata
            .get(&set)
            .ok_or_else(|| Error::validation(format!("{path}.gysin[{i}]"), "unknown stratum"))?;
        let tgt_set: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&x| x != rec.removed_index)
            .collect();
        let tgt = sc.strata.get(&tgt_set).ok_or_else(|| {
            Error::validation(format!("{path}.gysin[{i}]"), "unknown target stratum")
        })?;
        let m = parse_matrix(
            &rec.matrix,
            tgt.dim_in_degree(rec.degree + 2) as usize,
            src.dim_in_degree(rec.degree) as usize,
            &format!("{path}.gysin[{i}].matrix"),
        )?;
        sc.gysin.insert((set, rec.removed_index, rec.degree), m);
    }
    sc.validate()?;
    Ok(sc)
}

fn build_simplicial(block: &SimplicialBlock, path: &str) -> Result<SimplicialWeightComplex> {
    let mut levels = Vec::with_capacity(block.levels.len());
    for (i, b) in block.levels.iter().enumerate() {
        levels.push(build_strata(b, &format!("{path}.levels[{i}]"))?);
    }
    let mut sw = SimplicialWeightComplex {
        ambient_dim: block.ambient_dim,
        levels,
        faces: BTreeMap::new(),
    };
    for (i, rec) in block.faces.iter().enumerate() {
        if rec.level + 1 >= sw.levels.len() {
            return Err(Error::validation(
                format!("{path}.faces[{i}]"),
                "face level out of range",
            ));
        }
        let cols = sw.levels[rec.level]
            .strata
            .iter()
            .filter(|(s, _)| s.len() == rec.depth)
            .map(|(_, st)| st.dim_in_degree(rec.degree))
            .sum::<u64>() as usize;
        let rows = sw.levels[rec.level + 1]
            .strata
            .iter()
            .filter(|(s, _)| s.len() == rec.depth)
            .map(|(_, st)| st.dim_in_degree(rec.degree))
            .sum::<u64>() as usize;
        let m = parse_matrix(
            &rec.matrix,
            rows,
            cols,
            &format!("{path}.faces[{i}].matrix"),
        )?;
        sw.faces
            .insert((rec.level, rec.face, rec.depth, rec.degree), m);
    }
    sw.validate()?;
    Ok(sw)
}

fn build_flag(block: &FlagBlock, path: &str) -> Result<FlagComplex> {
    let convention = match block.convention.as_deref() {
        None | Some("calibrated") => IndexConvention::Calibrated,
        Some("appendix") => IndexConvention::Appendix,
        Some(other) => {
            return Err(Error::validation(
                path,
                format!("unknown convention {other:?}"),
            ))
        }
    };
    let mut fc = FlagComplex {
        ambient_dim: block.ambient_dim,
        potentials: block.potentials,
        convention,
        ..Default::default()
    };
    for d in &block.space {
        fc.space.insert(d.degree, d.dim);
    }
    for (i, rec) in block.flag.iter().enumerate() {
        fc.flag_dims.insert((rec.level, rec.degree), rec.dim);
        let m = parse_matrix(
            &rec.restriction,
            rec.dim as usize,
            fc.dim(rec.degree) as usize,
            &format!("{path}.flag[{i}].restriction"),
        )?;
        fc.restrictions.insert((rec.level, rec.degree), m);
    }
    for (i, rec) in block.cech.iter().enumerate() {
        let mut row = CechRow {
            node_dims: rec.nodes.clone(),
            maps: BTreeMap::new(),
        };
        for (j, mr) in rec.maps.iter().enumerate() {
            if mr.level == 0 || mr.level >= rec.nodes.len() {
                return Err(Error::validation(
                    format!("{path}.cech[{i}].maps[{j}]"),
                    "map level out of range",
                ));
            }
            let m = parse_matrix(
                &mr.matrix,
                rec.nodes[mr.level - 1] as usize,
                rec.nodes[mr.level] as usize,
                &format!("{path}.cech[{i}].maps[{j}].matrix"),
            )?;
            row.maps.insert(mr.level, m);
        }
        fc.cech.insert(rec.k, row);
    }
    fc.validate()?;
    Ok(fc)
}

fn build_ring(block: &RingBlock, path: &str) -> Result<CupRing> {
    let mut ring = CupRing {
        potentials: block.potentials,
        ..Default::default()
    };
    ring.basis = block
        .basis
        .iter()
        .map(|b| (b.name.clone(), b.degree))
        .collect();
    for (i, rec) in block.products.iter().enumerate() {
        if rec.coefficients.len() != ring.basis.len() {
            return Err(Error::validation(
                format!("{path}.products[{i}]"),
                format!(
                    "{} coefficients, expected {}",
                    rec.coefficients.len(),
                    ring.basis.len()
                ),
            ));
        }
        let mut v = Vec::with_capacity(rec.coefficients.len());
        for (j, c) in rec.coefficients.iter().enumerate() {
            v.push(parse_rational(
                c,
                &format!("{path}.products[{i}].coefficients[{j}]"),
            )?);
        }
        ring.products.insert((rec.left, rec.right), v);
    }
    for (i, rec) in block.filtration.iter().enumerate() {
        let mut spans = Vec::with_capacity(rec.spans.len());
        for (j, span) in rec.spans.iter().enumerate() {
            let mut v = Vec::with_capacity(span.len());
            for (k, c) in span.iter().enumerate() {
                v.push(parse_rational(
                    c,
                    &format!("{path}.filtration[{i}].spans[{j}][{k}]"),
                )?);
            }
            spans.push(v);
        }
        ring.filtration.insert((rec.degree, rec.offset), spans);
    }
    ring.validate()?;
    Ok(ring)
}

fn build_table(block: &TableBlock, path: &str) -> Result<AnyTable> {
    let need = |v: Option<i64>, field: &str, i: usize| {
        v.ok_or_else(|| {
            Error::validation(
                format!("{path}.entries[{i}]"),
                format!("missing field {field}"),
            )
        })
    };
    match block.kind.as_str() {
        "mixed" => {
            let mut t = MixedHodgeTable::new(block.n);
            for (i, e) in block.entries.iter().enumerate() {
                t.add(e.s, need(e.p, "p", i)?, need(e.w, "w", i)?, e.dim);
            }
            match block.mode.as_deref() {
                Some("smooth-open") => t.validate(WeightMode::SmoothOpen)?,
                Some("limit") => t.validate(WeightMode::Limit)?,
                Some("none") | None => {}
                Some(other) => {
                    return Err(Error::validation(path, format!("unknown mode {other:?}")))
                }
            }
            Ok(AnyTable::Mixed(t))
        }
        "pw" => {
            let mut t = PWTable::new(block.n);
            for (i, e) in block.entries.iter().enumerate() {
                t.add(
                    e.s,
                    need(e.a, "a", i)?,
                    need(e.b, "b", i)?,
                    need(e.r, "r", i)?,
                    e.dim,
                );
            }
            Ok(AnyTable::Pw(t))
        }
        "perverse" => {
            let mut t = PerverseHodgeTable::new(block.n);
            for (i, e) in block.entries.iter().enumerate() {
                t.add(e.s, need(e.a, "a", i)?, need(e.rho, "rho", i)?, e.dim);
            }
            t.validate()?;
            Ok(AnyTable::Perverse(t))
        }
        "levels" => {
            let mut t = BTreeMap::new();
            for (i, e) in block.entries.iter().enumerate() {
                let d = need(e.degree, "degree", i)?;
                let l = need(e.level, "level", i)?;
                *t.entry((d, l)).or_insert(0) += e.dim;
            }
            Ok(AnyTable::Levels(t))
        }
        other => Err(Error::validation(
            path,
            format!("unknown table kind {other:?}"),
        )),
    }
}

/// Parse and resolve a scenario from a JSON string.
pub fn parse(text: &str) -> Result<Scenario> {
    let file: ScenarioFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    resolve(&file)
}

/// Load a scenario file from disk.
pub fn load(path: impl AsRef<Path>) -> Result<Scenario> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Parse(format!("{}: {e}", path.as_ref().display())))?;
    parse(&text)
}

pub fn resolve(file: &ScenarioFile) -> Result<Scenario> {
    let mut sc = Scenario {
        name: file.name.clone(),
        ..Default::default()
    };
    for (name, block) in &file.strata {
        sc.strata.insert(
            name.clone(),
            build_strata(block, &format!("strata.{name}"))?,
        );
    }
    for (name, block) in &file.simplicial {
        sc.simplicial.insert(
            name.clone(),
            build_simplicial(block, &format!("simplicial.{name}"))?,
        );
    }
    for (name, block) in &file.flags {
        sc.flags
            .insert(name.clone(), build_flag(block, &format!("flags.{name}"))?);
    }
    for (name, block) in &file.rings {
        sc.rings
            .insert(name.clone(), build_ring(block, &format!("rings.{name}"))?);
    }
    for (name, block) in &file.lg_specs {
        sc.lg_specs
            .insert(name.clone(), LGSpec::new(block.n, block.degrees.clone())?);
    }
    for (name, block) in &file.tables {
        sc.tables
            .insert(name.clone(), build_table(block, &format!("tables.{name}"))?);
    }
    for (name, block) in &file.lg_tables {
        let mut tables = LGHodgeTables::default();
        for (flavor, entries) in &block.flavors {
            let mut cells = BTreeMap::new();
            for e in entries {
                *cells.entry((e.p, e.q)).or_insert(0) += e.dim;
            }
            tables.insert(flavor.clone(), cells);
        }
        sc.lg_tables.insert(name.clone(), tables);
    }
    for (name, block) in &file.gluing {
        let total: BTreeMap<i64, u64> = block.total.iter().map(|d| (d.degree, d.dim)).collect();
        let parts: Vec<BTreeMap<i64, u64>> = block
            .parts
            .iter()
            .map(|p| p.iter().map(|d| (d.degree, d.dim)).collect())
            .collect();
        sc.gluing.insert(name.clone(), (total, parts));
    }
    sc.tasks = file.tasks.clone();
    validate_references(&sc)?;
    Ok(sc)
}

fn validate_references(sc: &Scenario) -> Result<()> {
    let check = |exists: bool, task: &str, what: &str, name: &str| {
        if exists {
            Ok(())
        } else {
            Err(Error::validation(
                format!("tasks.{task}"),
                format!("unresolved {what} reference {name:?}"),
            ))
        }
    };
    for t in &sc.tasks {
        for (field, map_has) in [
            (
                &t.table,
                t.table.as_ref().map(|n| sc.tables.contains_key(n)),
            ),
            (
                &t.strata,
                t.strata.as_ref().map(|n| sc.strata.contains_key(n)),
            ),
            (
                &t.simplicial,
                t.simplicial.as_ref().map(|n| sc.simplicial.contains_key(n)),
            ),
            (&t.flag, t.flag.as_ref().map(|n| sc.flags.contains_key(n))),
            (&t.ring, t.ring.as_ref().map(|n| sc.rings.contains_key(n))),
            (
                &t.lg_spec,
                t.lg_spec.as_ref().map(|n| sc.lg_specs.contains_key(n)),
            ),
            (
                &t.lg_tables,
                t.lg_tables.as_ref().map(|n| sc.lg_tables.contains_key(n)),
            ),
            (
                &t.gluing,
                t.gluing.as_ref().map(|n| sc.gluing.contains_key(n)),
            ),
            (
                &t.u_side,
                t.u_side.as_ref().map(|n| sc.tables.contains_key(n)),
            ),
            (
                &t.v_side,
                t.v_side.as_ref().map(|n| sc.tables.contains_key(n)),
            ),
            (
                &t.y_perverse,
                t.y_perverse.as_ref().map(|n| sc.tables.contains_key(n)),
            ),
            (
                &t.weight,
                t.weight.as_ref().map(|n| sc.tables.contains_key(n)),
            ),
            (
                &t.limiting,
                t.limiting.as_ref().map(|n| sc.tables.contains_key(n)),
            ),
        ] {
            if let (Some(name), Some(exists)) = (field, map_has) {
                check(exists, &t.name, "data", name)?;
            }
        }
        for w in &t.witnesses {
            check(sc.tables.contains_key(w), &t.name, "witness", w)?;
        }
        if let Some(e) = &t.expect_table {
            check(sc.tables.contains_key(e), &t.name, "expected table", e)?;
        }
    }
    Ok(())
}

/// Optional invariants beyond load-time validation: reality symmetry of the
/// strata Hodge numbers, smooth-open weight windows for PW marginals, and
/// perverse level bounds. The shipped printed-polynomial fixture knowingly
/// violates the marginal window, so this is opt-in.
pub fn strict_validate(sc: &Scenario) -> Result<()> {
    for (name, complex) in &sc.strata {
        for (set, stratum) in &complex.strata {
            for (degree, v) in &stratum.cohomology {
                if !v.is_real_symmetric() {
                    return Err(Error::validation(
                        format!("strata.{name}.{set:?}"),
                        format!("H^{degree} is not real-symmetric"),
                    ));
                }
            }
        }
    }
    for (name, table) in &sc.tables {
        if let AnyTable::Pw(t) = table {
            t.weight_marginal()
                .validate(WeightMode::SmoothOpen)
                .map_err(|e| Error::validation(format!("tables.{name}"), e.to_string()))?;
            t.perverse_marginal()
                .validate()
                .map_err(|e| Error::validation(format!("tables.{name}"), e.to_string()))?;
        }
    }
    Ok(())
}
