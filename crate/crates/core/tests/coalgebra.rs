use proptest::prelude::*;
use rbcoalg_core::coalgebra::{check_antisymmetry, check_cojacobi, is_morphism};
use rbcoalg_core::oracle::{
    builtin_fixtures_over, enumerate_structures, independent_coalgebra_check, lie_coalgebras, line, rb_operators,
    two_dim, StructureKind,
};
use rbcoalg_core::{Error, FieldSpec, LinearMap, RBComodule, RBLieCoalgebra, Signature, Space};

const FIELDS: [FieldSpec; 4] = [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Prime(5)];

fn all_coalgebras() -> Vec<(String, RBLieCoalgebra)> {
    let mut out = Vec::new();
    for f in FIELDS {
        for (name, c) in builtin_fixtures_over(f).unwrap().coalgebras() {
            out.push((format!("{f}/{name}"), c.clone()));
        }
    }
    out
}

#[test]
fn builtin_fixtures_load_over_every_test_field() {
    for f in FIELDS {
        let cat = builtin_fixtures_over(f).unwrap();
        assert!(cat.entries().iter().all(|e| e.fixture.passes_checks()));
        assert!(cat.get("zero").is_some());
        assert!(cat.get("two-dim/diag").is_some());
        assert!(cat.get("line-scrambled").is_some());
    }
}

#[test]
fn checkers_agree_with_structure_constant_expansion() {
    for (name, c) in all_coalgebras() {
        assert!(independent_coalgebra_check(&c), "{name}");
    }
}

#[test]
fn dual_algebras_pass_the_loop_based_checker() {
    for (name, c) in all_coalgebras() {
        let alg = c.dualize();
        assert!(alg.check_antisymmetry(), "{name}");
        assert!(alg.check_jacobi(), "{name}");
        assert!(alg.check_rb(), "{name}");
    }
}

#[test]
fn dual_bracket_reads_off_the_comultiplication() {
    // Δx = x⊗y − y⊗x gives [x*, y*] = x*
    let c = two_dim(FieldSpec::Rationals, [[0, 0], [0, 0]], 1).unwrap();
    let alg = c.dualize();
    let b = alg.bracket.matrix();
    let f = FieldSpec::Rationals;
    assert_eq!(b.get(0, 1), &f.one());
    assert_eq!(b.get(0, 2), &f.from_i64(-1));
    assert!((0..4).all(|k| b.get(1, k).is_zero()));
}

#[test]
fn derived_structures_pass_their_checkers() {
    for (name, c) in all_coalgebras() {
        let d = c.derived().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(d.check().all(), "{name}");
        let adj = RBComodule::adjoint(&c).derived().unwrap();
        assert!(adj.check().all(), "{name}");
    }
}

#[test]
fn two_dim_rb_operators_of_the_builtin_catalog() {
    let f = FieldSpec::Rationals;
    let diag = two_dim(f, [[1, 0], [0, 0]], -1).unwrap();
    assert!(diag.check().rota_baxter);
    // R = 2I gives 4Δx on the left and 6Δx on the right
    assert!(matches!(two_dim(f, [[2, 0], [0, 2]], -1), Err(Error::AxiomViolation(_))));
}

#[test]
fn corrupted_antisymmetry_is_reported_by_name() {
    let f = FieldSpec::Rationals;
    let c = Space::new(vec!["x".into(), "y".into()]).unwrap();
    let bad = LinearMap::new(
        (&c).into(),
        Signature::power(&c, 2),
        rbcoalg_core::Matrix::from_i64(f, &[&[0, 0], &[1, 0], &[1, 0], &[0, 0]]),
    )
    .unwrap();
    let r = LinearMap::zero(f, &c, &c);
    let err = RBLieCoalgebra::new(c, bad, r, f.one()).unwrap_err();
    match err {
        Error::AxiomViolation(s) => assert!(s.contains("(1.1)")),
        e => panic!("unexpected {e}"),
    }
}

#[test]
fn enumerator_counts_are_closed_form() {
    for (p, kind, expected) in [
        (2, StructureKind::LinearMaps { domain: 1, codomain: 1 }, 2),
        (3, StructureKind::Comultiplications { dim: 2 }, 3u64.pow(8)),
        (5, StructureKind::RbOperators { dim: 2 }, 625),
        (2, StructureKind::Triples { dim_c: 1, dim_m: 1 }, 8),
        (3, StructureKind::Comodules { dim_m: 1, dim_c: 2 }, 27),
    ] {
        let en = enumerate_structures(FieldSpec::Prime(p), kind, 1 << 20).unwrap();
        assert_eq!(en.count, expected);
        let all: Vec<_> = en.iter().collect();
        assert_eq!(all.len() as u64, expected);
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
        // lexicographic: the last coordinate varies fastest
        if expected > 1 {
            assert!(all[1].last().unwrap().is_one());
        }
    }
}

#[test]
fn enumerator_respects_the_budget() {
    let err = enumerate_structures(FieldSpec::Prime(5), StructureKind::Comultiplications { dim: 2 }, 1000).unwrap_err();
    assert!(matches!(err, Error::SearchBudgetExceeded { needed: 390625, budget: 1000 }));
}

#[test]
fn one_dimensional_lie_coalgebras_over_gf2() {
    // two candidates; Δ(e) = e⊗e is antisymmetric in characteristic 2 but
    // fails co-Jacobi, leaving only Δ = 0
    let f = FieldSpec::Prime(2);
    let en = enumerate_structures(f, StructureKind::Comultiplications { dim: 1 }, 10).unwrap();
    assert_eq!(en.count, 2);
    let s = Space::standard("c", 1);
    let second = LinearMap::from_vec((&s).into(), Signature::power(&s, 2), f, &en.get(1));
    assert!(check_antisymmetry(&second, &s).unwrap());
    assert!(!check_cojacobi(&second, &s).unwrap());
    let found = lie_coalgebras(f, 1, &f.zero(), 10).unwrap();
    assert_eq!(found.len(), 1);
    assert!(found[0].is_abelian());
}

#[test]
fn lie_coalgebra_enumeration_matches_expansion_oracle() {
    for p in [2, 3] {
        let f = FieldSpec::Prime(p);
        let s = Space::standard("c", 2);
        let en = enumerate_structures(f, StructureKind::Comultiplications { dim: 2 }, 1 << 20).unwrap();
        let by_oracle = en
            .iter()
            .filter(|v| {
                let delta = LinearMap::from_vec((&s).into(), Signature::power(&s, 2), f, v);
                let c = RBLieCoalgebra::raw(s.clone(), delta, LinearMap::zero(f, &s, &s), f.zero()).unwrap();
                independent_coalgebra_check(&c)
            })
            .count();
        assert_eq!(lie_coalgebras(f, 2, &f.zero(), 1 << 20).unwrap().len(), by_oracle);
    }
}

#[test]
fn every_operator_on_a_zero_comultiplication_is_rota_baxter() {
    let f = FieldSpec::Prime(3);
    let c = line(f, "c", 0, 1);
    assert_eq!(rb_operators(&c, 10).unwrap().len(), 3);
}

#[test]
fn automorphisms_commute_with_the_structure() {
    let f = FieldSpec::Prime(3);
    let c = two_dim(f, [[1, 0], [0, 0]], -1).unwrap();
    let s = c.space();
    let alpha = LinearMap::from_vec(s.into(), s.into(), f, &[f.from_i64(2), f.zero(), f.zero(), f.one()]);
    assert!(is_morphism(&c, &c, &alpha).unwrap());
    let beta = LinearMap::from_vec(s.into(), s.into(), f, &[f.one(), f.zero(), f.zero(), f.from_i64(2)]);
    assert!(!is_morphism(&c, &c, &beta).unwrap());
}

fn scaled(c: &RBLieCoalgebra, k: i64) -> RBLieCoalgebra {
    let f = c.field();
    RBLieCoalgebra::raw(c.space().clone(), c.delta().scale(&f.from_i64(k)), c.r().clone(), c.lambda().clone()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scaling_the_comultiplication_preserves_the_axioms(k in -5i64..=5, pick in 0usize..5) {
        let cat = builtin_fixtures_over(FieldSpec::Rationals).unwrap();
        let all = cat.coalgebras();
        let (_, c) = all[pick % all.len()];
        let s = scaled(c, k);
        prop_assert!(s.check().all());
        prop_assert!(independent_coalgebra_check(&s));
    }

    #[test]
    fn breaking_antisymmetry_is_detected(i in 0usize..4, k in 1i64..4) {
        let f = FieldSpec::Rationals;
        let c = two_dim(f, [[0, 0], [0, 0]], 1).unwrap();
        let mut m = c.delta().matrix().clone();
        // an e_a⊗e_a coefficient is fixed by τ, so Δ + τΔ picks up 2k
        let row = [0, 3][i % 2];
        m.add_at(row, i / 2, &f.from_i64(k));
        let delta = LinearMap::new(c.delta().domain().clone(), c.delta().codomain().clone(), m).unwrap();
        prop_assert!(!check_antisymmetry(&delta, c.space()).unwrap());
    }
}
