//! Hybrid Landau-Ginzburg combinatorics: discriminant loci, generic-line
//! intersection counts, gluing dimension checks and the LG Hodge number
//! (KKP-type) identities.
//!
//! LG Hodge tables are scenario data or derived through the Hodge-Tate rule;
//! nothing here computes hypercohomology of adapted complexes from geometry.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Pow;

use crate::error::{Error, Result};
use crate::hodge::MixedHodgeTable;
use crate::Int;

/// Mirror data of a hypersurface-union pair in projective space: component
/// degrees must sum to n + 1 (the anticanonical condition).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LGSpec {
    pub n: u32,
    pub degrees: Vec<u32>,
}

impl LGSpec {
    pub fn new(n: u32, degrees: Vec<u32>) -> Result<Self> {
        if degrees.contains(&0) {
            return Err(Error::validation("lg spec", "degrees must be positive"));
        }
        let total: u32 = degrees.iter().sum();
        if total != n + 1 {
            return Err(Error::validation(
                "lg spec",
                format!("degrees sum to {total}, expected n + 1 = {}", n + 1),
            ));
        }
        Ok(LGSpec { n, degrees })
    }

    pub fn potentials(&self) -> usize {
        self.degrees.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscriminantVariant {
    TwoComponent,
    General,
}

/// The constant in the main component: pinned by the two-component formula,
/// carried as a marker otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstantTerm {
    Symbolic,
    Value(Int),
}

impl fmt::Display for ConstantTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstantTerm::Symbolic => write!(f, "const"),
            ConstantTerm::Value(v) => write!(f, "{v}"),
        }
    }
}

/// Discriminant locus {a_1^(k_1) ... a_N^(k_N) = const} together with the
/// coordinate hyperplanes {a_j = 0} that occur.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantLocus {
    pub exponents: Vec<u32>,
    pub constant: ConstantTerm,
    /// 1-based indices j whose hyperplane {a_j = 0} belongs to the locus
    pub coordinate_components: Vec<usize>,
}

impl DiscriminantLocus {
    fn var_name(&self, j: usize) -> String {
        if self.exponents.len() == 2 {
            ["a", "b"][j - 1].to_string()
        } else {
            format!("a{j}")
        }
    }
}

impl fmt::Display for DiscriminantLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut main = String::new();
        for (j, &k) in self.exponents.iter().enumerate() {
            let v = self.var_name(j + 1);
            if k == 1 {
                main.push_str(&v);
            } else {
                main.push_str(&format!("{v}^{k}"));
            }
        }
        write!(f, "{{{main} = {}}}", self.constant)?;
        for &j in &self.coordinate_components {
            write!(f, " u {{{} = 0}}", self.var_name(j))?;
        }
        Ok(())
    }
}

/// Discriminant locus of the Hori-Vafa hybrid potential.
///
/// The two-component case follows the three-case formula with the constant
/// n1^n1 * n2^n2, including both coordinate hyperplanes when n1, n2 > 1. The
/// general formula has a coordinate component only for each degree-1 factor;
/// the two disagree when every degree exceeds one, so reports should call
/// `variants_disagree`.
pub fn discriminant(spec: &LGSpec, variant: DiscriminantVariant) -> Result<DiscriminantLocus> {
    match variant {
        DiscriminantVariant::TwoComponent => {
            if spec.potentials() != 2 {
                return Err(Error::VariantMismatch(format!(
                    "two_component needs exactly 2 degrees, got {}",
                    spec.potentials()
                )));
            }
            let (n1, n2) = (spec.degrees[0], spec.degrees[1]);
            let value = Int::from(n1).pow(n1) * Int::from(n2).pow(n2);
            let coordinate_components = if n1 > 1 && n2 > 1 {
                vec![1, 2]
            } else if n1 == 1 {
                vec![1]
            } else {
                vec![2]
            };
            Ok(DiscriminantLocus {
                exponents: spec.degrees.clone(),
                constant: ConstantTerm::Value(value),
                coordinate_components,
            })
        }
        DiscriminantVariant::General => Ok(DiscriminantLocus {
            exponents: spec.degrees.clone(),
            constant: ConstantTerm::Symbolic,
            coordinate_components: (1..=spec.potentials())
                .filter(|&j| spec.degrees[j - 1] == 1)
                .collect(),
        }),
    }
}

/// Do the two printed formulas disagree on coordinate components?
pub fn variants_disagree(spec: &LGSpec) -> bool {
    spec.potentials() == 2 && spec.degrees.iter().all(|&k| k > 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    /// a_i = t + c_i for all i
    AntiDiagonal,
    /// only a_i varies, all other coordinates generic constants (1-based)
    Coordinate(usize),
}

/// Number of intersection points of a generic line with the main component.
pub fn line_counts(locus: &DiscriminantLocus, line: Line) -> u64 {
    match line {
        Line::AntiDiagonal => locus.exponents.iter().map(|&k| k as u64).sum(),
        Line::Coordinate(i) => locus.exponents.get(i - 1).copied().unwrap_or(0) as u64,
    }
}

/// Per-degree mismatch of the gluing identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingMismatch {
    pub degree: i64,
    pub total: u64,
    pub parts_sum: u64,
}

/// dim H^k(Y_sm, Y_shared) = sum of dim H^k(Y_i, Y_shared) per degree.
pub fn gluing_check(
    total: &BTreeMap<i64, u64>,
    parts: &[BTreeMap<i64, u64>],
) -> Vec<GluingMismatch> {
    let mut degrees: Vec<i64> = total.keys().copied().collect();
    for p in parts {
        degrees.extend(p.keys().copied());
    }
    degrees.sort_unstable();
    degrees.dedup();
    let mut mismatches = Vec::new();
    for k in degrees {
        let t = total.get(&k).copied().unwrap_or(0);
        let s: u64 = parts.iter().map(|p| p.get(&k).copied().unwrap_or(0)).sum();
        if t != s {
            mismatches.push(GluingMismatch {
                degree: k,
                total: t,
                parts_sum: s,
            });
        }
    }
    mismatches
}

/// Finite tables (p, q) -> dim per flavor, keyed by the flavor spelling used
/// in scenarios, e.g. "f(Y,h)", "h(Y,h1,h2)", "f(Y,h_(2))".
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LGHodgeTables {
    pub tables: BTreeMap<String, BTreeMap<(i64, i64), u64>>,
}

impl LGHodgeTables {
    pub fn insert(&mut self, flavor: impl Into<String>, cells: BTreeMap<(i64, i64), u64>) {
        self.tables.insert(flavor.into(), cells);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KkpMismatch {
    pub p: i64,
    pub q: i64,
    pub left: u64,
    pub right: u64,
}

/// Entrywise comparison of a flavor pair over the union of supports.
pub fn kkp_check(tables: &LGHodgeTables, left: &str, right: &str) -> Result<Vec<KkpMismatch>> {
    let l = tables
        .tables
        .get(left)
        .ok_or_else(|| Error::validation("kkp", format!("missing flavor {left}")))?;
    let r = tables
        .tables
        .get(right)
        .ok_or_else(|| Error::validation("kkp", format!("missing flavor {right}")))?;
    let mut cells: Vec<(i64, i64)> = l.keys().chain(r.keys()).copied().collect();
    cells.sort_unstable();
    cells.dedup();
    Ok(cells
        .into_iter()
        .filter_map(|(p, q)| {
            let a = l.get(&(p, q)).copied().unwrap_or(0);
            let b = r.get(&(p, q)).copied().unwrap_or(0);
            (a != b).then_some(KkpMismatch {
                p,
                q,
                left: a,
                right: b,
            })
        })
        .collect())
}

/// Derive the limiting-flavor table h^{p,q} = dim Gr^W_{2p} H^{p+q} from a
/// limiting mixed Hodge table, provided every witness satisfies the
/// Hodge-Tate hypothesis. Refuses (never fabricates) otherwise.
pub fn hodge_tate_kkp(
    limiting: &MixedHodgeTable,
    witnesses: &[(String, MixedHodgeTable)],
) -> Result<BTreeMap<(i64, i64), u64>> {
    for (name, table) in witnesses {
        if let Some((s, p, w)) = table.hodge_tate_witness() {
            return Err(Error::HypothesisFailed {
                witness: name.clone(),
                s,
                p,
                w,
            });
        }
    }
    let mut out: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    for (&(s, _, w), &d) in &limiting.dims {
        if w % 2 != 0 {
            return Err(Error::validation(
                "limiting table",
                format!("odd weight {w} in degree {s} has no (p, p) reading"),
            ));
        }
        let p = w / 2;
        let q = s - p;
        *out.entry((p, q)).or_insert(0) += d;
    }
    Ok(out)
}
