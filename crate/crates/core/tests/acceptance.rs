//! Acceptance suite: one test per criterion, each printing a pass line with
//! the checked statement. Everything is exact; the only tolerances are the
//! stated runtime budgets.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use pwcheck_core::hodge::{assemble_pw, MixedHodgeTable, PWTable, PerverseRule};
use pwcheck_core::mirror::{check_mirror_pw, MirrorPair};
use pwcheck_core::perverse;
use pwcheck_core::report::{self, Format};
use pwcheck_core::scenario::{self, AnyTable, Scenario};
use pwcheck_core::{Int, LaurentPoly};

fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn load(name: &str) -> Scenario {
    scenario::load(scenario_path(name)).unwrap_or_else(|e| panic!("loading {name}: {e}"))
}

fn utw_plus_p() -> LaurentPoly {
    LaurentPoly::monomial(Int::from(1), [1, 1, 1, 0]).add(&LaurentPoly::var(3))
}

fn within(budget: Duration, start: Instant, what: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "{what} took {elapsed:?}, budget {budget:?}"
    );
}

#[test]
fn criterion_01_torus_pw_polynomial() {
    let start = Instant::now();
    for n in 1..=8u32 {
        assert_eq!(
            PWTable::torus(n).pw_polynomial(),
            utw_plus_p().pow(n),
            "torus PW polynomial at n = {n}"
        );
    }
    within(Duration::from_secs(1), start, "criterion 1");
    println!("criterion 1 PASS: torus PW polynomial equals (utw+p)^n exactly for n = 1..8");
}

#[test]
fn criterion_02_torus_self_mirror() {
    let start = Instant::now();
    for n in 1..=8u32 {
        let pair = MirrorPair {
            n,
            u_side: PWTable::torus(n),
            v_side: PWTable::torus(n),
        };
        let residual = check_mirror_pw(&pair).unwrap();
        assert!(residual.is_zero(), "n = {n}: residual {residual}");
    }
    within(Duration::from_secs(1), start, "criterion 2");
    println!("criterion 2 PASS: torus self-mirror residual is exactly zero for n = 1..8");
}

#[test]
fn criterion_03_del_pezzo_pw_fixture() {
    let sc = load("del_pezzo_pw.json");
    for n in 0..=8i64 {
        let AnyTable::Pw(table) = &sc.tables[&format!("del_pezzo_n{n}_pw")] else {
            panic!("table kind")
        };
        let mut expected = LaurentPoly::zero();
        expected.add_term([0, 0, 0, 1], Int::from(1));
        expected.add_term([1, 0, 2, 2], Int::from(1));
        expected.add_term([1, 2, 2, 0], Int::from(1));
        expected.add_term([1, 0, 2, 0], Int::from(9 - n));
        assert_eq!(table.pw_polynomial(), expected, "n = {n}");
    }
    println!(
        "criterion 3 PASS: stored del Pezzo tables reproduce p + uw^2p^2 + ut^2w^2 + (9-n)uw^2 for n = 0..8"
    );
}

#[test]
fn criterion_04_weight_engine_kunneth() {
    let start = Instant::now();
    let torus = load("torus.json");
    let product = load("torus_product.json");
    assert_eq!(
        torus.strata["p1_pair"].weight_graded().unwrap(),
        MixedHodgeTable::torus(1),
        "n = 1"
    );
    assert_eq!(
        product.strata["p1_product"].weight_graded().unwrap(),
        MixedHodgeTable::torus(2),
        "n = 2"
    );
    // Kunneth consistency: the product equals the square of the factor
    let factor = torus.strata["p1_pair"].weight_graded().unwrap();
    assert_eq!(
        product.strata["p1_product"].weight_graded().unwrap(),
        factor.kunneth(&factor)
    );
    within(Duration::from_secs(1), start, "criterion 4");
    println!("criterion 4 PASS: weight engine reproduces the Kunneth powers of the torus factor for n = 1, 2");
}

#[test]
fn criterion_05_appendix_oracle() {
    let start = Instant::now();
    let fixtures = [
        ("torus.json", "torus_flag_n1"),
        ("torus_product.json", "torus_flag_n2"),
        ("affine_complement.json", "affine_cubic_flag"),
    ];
    for (file, flag) in fixtures {
        let sc = load(file);
        let outcome = perverse::oracle_compare(&sc.flags[flag]).unwrap();
        assert!(outcome.is_ok(), "{flag}: {:?}", outcome.discrepancies);
        assert!(
            outcome.warnings.is_empty(),
            "{flag}: {:?}",
            outcome.warnings
        );
    }
    within(Duration::from_secs(5), start, "criterion 5");
    println!("criterion 5 PASS: flag-kernel dims equal Cech E2 dims on the torus n = 1, 2 and affine-complement fixtures");
}

#[test]
fn criterion_06_multiplicativity() {
    let start = Instant::now();
    let good = load("torus_product.json");
    assert_eq!(
        perverse::multiplicativity_check(&good.rings["torus2_exterior"]).unwrap(),
        None,
        "exterior algebra of (C*)^2 satisfies the bound"
    );
    let bad = load("multiplicativity_violation.json");
    let violation = perverse::multiplicativity_check(&bad.rings["violating_ring"])
        .unwrap()
        .expect("the shipped violation fixture must be detected");
    assert_eq!(violation.degrees, (1, 1));
    within(Duration::from_secs(5), start, "criterion 6");
    println!("criterion 6 PASS: cup-product bound verified by exhaustive enumeration; shipped violation detected");
}

#[test]
fn criterion_07_discriminant_loci() {
    use pwcheck_core::lg::{discriminant, line_counts, DiscriminantVariant, LGSpec, Line};
    let conic = LGSpec::new(2, vec![2, 1]).unwrap();
    let locus = discriminant(&conic, DiscriminantVariant::TwoComponent).unwrap();
    assert_eq!(locus.to_string(), "{a^2b = 4} u {b = 0}");
    assert_eq!(line_counts(&locus, Line::AntiDiagonal), 3);
    assert_eq!(line_counts(&locus, Line::Coordinate(1)), 2);

    let cubic = LGSpec::new(3, vec![3, 1]).unwrap();
    let locus = discriminant(&cubic, DiscriminantVariant::TwoComponent).unwrap();
    assert_eq!(locus.to_string(), "{a^3b = 27} u {b = 0}");
    println!(
        "criterion 7 PASS: discriminant loci and line counts match the two-component formulas"
    );
}

#[test]
fn criterion_08_gluing() {
    let sc = load("two_potential.json");
    let (total, parts) = &sc.gluing["cech_node_split"];
    let mismatches = pwcheck_core::lg::gluing_check(total, parts);
    assert!(mismatches.is_empty(), "{mismatches:?}");
    println!(
        "criterion 8 PASS: the glued Cech node dimension splits as the sum of the relative parts"
    );
}

#[test]
fn criterion_09_kkp_propagation() {
    let sc = load("hodge_tate_kkp.json");
    let get = |name: &str| match &sc.tables[name] {
        AnyTable::Mixed(t) => t.clone(),
        _ => panic!("table kind"),
    };
    let witnesses: Vec<(String, MixedHodgeTable)> = ["witness_y", "witness_y1", "witness_y2"]
        .iter()
        .map(|w| (w.to_string(), get(w)))
        .collect();
    let h = pwcheck_core::lg::hodge_tate_kkp(&get("limiting_relative"), &witnesses).unwrap();
    let mut tables = sc.lg_tables["hybrid_flavors"].clone();
    tables.insert("derived", h);
    assert!(
        pwcheck_core::lg::kkp_check(&tables, "derived", "f(Y,h1,h2)")
            .unwrap()
            .is_empty()
    );

    let with_elliptic = vec![("witness_elliptic".to_string(), get("witness_elliptic"))];
    match pwcheck_core::lg::hodge_tate_kkp(&get("limiting_relative"), &with_elliptic) {
        Err(pwcheck_core::Error::HypothesisFailed { s, p, w, .. }) => {
            assert_eq!((s, p, w), (1, 0, 1));
        }
        other => panic!("expected refusal, got {other:?}"),
    }
    println!("criterion 9 PASS: Hodge-Tate propagation matches the stored de Rham flavor and refuses the elliptic witness");
}

#[test]
fn criterion_10_property_suites() {
    let start = Instant::now();

    // d1^2 = 0 on every loaded complex: loading re-validates all rows
    let names = [
        "torus.json",
        "torus_product.json",
        "del_pezzo_pw.json",
        "del_pezzo_weight.json",
        "del_pezzo_mirror.json",
        "conic_line.json",
        "cubic_plane.json",
        "two_potential.json",
        "hodge_tate_kkp.json",
        "simplicial.json",
        "affine_complement.json",
        "multiplicativity_violation.json",
    ];
    let mut scenarios = Vec::new();
    for name in names {
        scenarios.push((name, load(name)));
    }

    // Euler characteristic preserved through page_homology on weight rows
    for (name, sc) in &scenarios {
        for (sname, strata) in &sc.strata {
            for w in 0..=(2 * strata.ambient_dim as i64) {
                let row = strata.weight_row(w).unwrap();
                let h = row.row.page_homology().unwrap();
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
                assert_eq!(
                    row.row.euler_characteristic(),
                    e2,
                    "{name}/{sname} weight {w}"
                );
            }
        }
    }

    // Tate twist involution and Kunneth commutativity/associativity on all
    // shipped mixed tables
    let mut mixed: Vec<MixedHodgeTable> = vec![MixedHodgeTable::torus(3)];
    for (_, sc) in &scenarios {
        for table in sc.tables.values() {
            if let AnyTable::Mixed(t) = table {
                mixed.push(t.clone());
            }
        }
    }
    for t in &mixed {
        for m in -2i64..=2 {
            assert_eq!(t.tate_twist(m).tate_twist(-m), *t);
        }
    }
    for a in &mixed {
        for b in &mixed {
            assert_eq!(a.kunneth(b), b.kunneth(a));
            let c = &mixed[0];
            assert_eq!(a.kunneth(b).kunneth(c), a.kunneth(&b.kunneth(c)));
        }
    }

    // filtration monotonicity and length bounds on every shipped flag fixture
    for (name, sc) in &scenarios {
        for (fname, fc) in &sc.flags {
            let f = perverse::flag_filtration(fc).unwrap();
            let mut per_degree: BTreeMap<i64, Vec<u64>> = BTreeMap::new();
            for (&(k, _), &d) in &f.levels {
                per_degree.entry(k).or_default().push(d);
            }
            for (k, dims) in per_degree {
                assert!(
                    dims.windows(2).all(|w| w[0] <= w[1]),
                    "{name}/{fname} degree {k} not monotone"
                );
                assert_eq!(
                    dims.last().copied().unwrap_or(0),
                    fc.dim(k),
                    "{name}/{fname} degree {k} does not reach the full space"
                );
            }
            assert!(
                perverse::filtration_length_check(fc).unwrap().is_empty(),
                "{name}/{fname} length bounds"
            );
        }
    }

    // deterministic byte-identical reports
    let sc = load("torus.json");
    for format in [Format::Text, Format::Json] {
        let a = report::emit(&report::run(&sc, None, None), format, false);
        let b = report::emit(&report::run(&sc, None, None), format, false);
        assert_eq!(a, b, "report emission must be deterministic");
    }

    within(Duration::from_secs(30), start, "criterion 10");
    println!("criterion 10 PASS: d1^2 = 0 at load, Euler preservation, twist involution, Kunneth laws, filtration bounds, deterministic reports");
}

/// Stretch criterion, excluded from the default suite: the mirror identity
/// for del Pezzo complements with the V side derived from the
/// elliptic-fibration fixture. The honest derivation chain (weight engine +
/// affine perverse rule on the U side, fibration weight/flag data on the V
/// side) balances exactly.
#[test]
#[ignore = "stretch criterion: run with --ignored"]
fn criterion_11_del_pezzo_mirror_derived() {
    let sc = load("del_pezzo_mirror.json");

    // U side: derived from its own strata by the weight engine, all perverse
    // mass at level dim U = 2 since the complement is affine
    let u_weight = sc.strata["u3_strata"].weight_graded().unwrap();
    let u_pw = assemble_pw(&u_weight, &PerverseRule::AllAtLevel(2)).unwrap();
    let AnyTable::Pw(stored_u) = &sc.tables["u3_pw"] else {
        panic!("table kind")
    };
    assert_eq!(&u_pw, stored_u, "U-side assembly from strata");

    // V side: weight marginal must match the fibration weight engine output,
    // perverse marginal the flag/Cech dims
    let AnyTable::Pw(v_pw) = &sc.tables["fibration_pw"] else {
        panic!("table kind")
    };
    let v_weight = sc.strata["fibration_strata"].weight_graded().unwrap();
    assert_eq!(v_pw.weight_marginal(), v_weight, "V-side weight marginal");
    let flag = perverse::flag_filtration(&sc.flags["fibration_flag"]).unwrap();
    let mut by_level: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    for (&(s, _, rho), &d) in &v_pw.perverse_marginal().dims {
        *by_level.entry((s, rho)).or_insert(0) += d;
    }
    for (&(s, rho), &d) in &by_level {
        assert_eq!(
            flag.graded(s, rho),
            d,
            "V-side perverse marginal at (s={s}, rho={rho})"
        );
    }

    let pair = MirrorPair {
        n: 2,
        u_side: u_pw,
        v_side: v_pw.clone(),
    };
    let residual = check_mirror_pw(&pair).unwrap();
    assert!(residual.is_zero(), "residual {residual}");
    println!("criterion 11 PASS: del Pezzo mirror identity balances against the fibration-derived tables");
}

/// The printed del Pezzo polynomial cannot balance: its value at
/// (1, 1, 1, 1) is 12 - n while the complement has total Betti number n + 3,
/// and the identity forces equal totals. The residual against the derived V
/// side is pinned here so the discrepancy stays visible.
#[test]
#[ignore = "stretch criterion: documents the printed-fixture discrepancy"]
fn criterion_11_del_pezzo_mirror_printed_fixture_residual() {
    let sc = load("del_pezzo_mirror.json");
    let printed = load("del_pezzo_pw.json");
    let AnyTable::Pw(u_printed) = &printed.tables["del_pezzo_n3_pw"] else {
        panic!("kind")
    };
    let AnyTable::Pw(v_pw) = &sc.tables["fibration_pw"] else {
        panic!("kind")
    };
    let pair = MirrorPair {
        n: 2,
        u_side: u_printed.clone(),
        v_side: v_pw.clone(),
    };
    let residual = check_mirror_pw(&pair).unwrap();
    assert!(
        !residual.is_zero(),
        "the printed table unexpectedly balances; revisit the fixture notes"
    );
    let at_ones = u_printed
        .pw_polynomial()
        .evaluate([Int::from(1), Int::from(1), Int::from(1), Int::from(1)])
        .unwrap();
    assert_eq!(at_ones, Int::from(9)); // 12 - n at n = 3; the complement has 6
    println!("criterion 11 NOTE: printed fixture residual is {residual}");
}
