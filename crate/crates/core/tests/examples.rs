//! Worked examples for each module, checked against hand computations and
//! published small-group data.

use galmod_core::arith::{q_frac, q_int, Q};
use galmod_core::cli::dataset::{
    compare, parse_dataset, trivial_part_prediction, Dataset, DatasetRow,
};
use galmod_core::dist::table::{size_power_by_places, tail_band};
use galmod_core::dist::{
    closed_form_by_places, closed_form_moment, invert_moments, sample, sample_cokernel,
    truncated_table, weight, CokernelSamplerConfig,
};
use galmod_core::group::builtin::builtin;
use galmod_core::group::spec::group_from_spec;
use galmod_core::group::{Group, Subgroup};
use galmod_core::hecke::{
    augmentation_component, hecke_order, hecke_size_power, invariants_functor, lift_truncation,
    morita_lift, nongalois_table, omodule_from_generator, rank_independence_check, rank_transfer,
    OModule,
};
use galmod_core::limits::Limits;
use galmod_core::module::counting::{aut_formula, count_types, hom_formula, MapKind};
use galmod_core::module::{
    bruteforce_module_structures, enumerate_types, GammaModule, ModuleType, Partition,
    TruncationSpec,
};
use galmod_core::rep::character::character_table;
use galmod_core::rep::{algebra, good_primes, rank_u, Decomposition, RankSpec, Verdict};
use galmod_core::triples::{aut_count, build_class_triple, verify_uniqueness, AutMethod};
use galmod_core::verify::dihedral_involution;
use num_traits::{One, Signed, Zero};

fn setup(name: &str) -> (Group, Decomposition) {
    let g = builtin(name).unwrap();
    let dec = Decomposition::new(&g).unwrap();
    (g, dec)
}

fn sub(g: &Group, name: &str) -> Subgroup {
    g.named_subgroup(name).unwrap().clone()
}

fn ty(text: &str) -> ModuleType {
    ModuleType::parse(text).unwrap()
}

fn class_sizes(g: &Group) -> Vec<usize> {
    let mut s: Vec<usize> = g.classes().iter().map(|c| c.size()).collect();
    s.sort_unstable();
    s
}

/// Index of the only component of degree `h` in the list.
fn of_degree(dec: &Decomposition, comps: &[usize], h: u64) -> usize {
    let found: Vec<usize> = comps
        .iter()
        .copied()
        .filter(|&i| dec.components[i - 1].h == h)
        .collect();
    assert_eq!(found.len(), 1);
    found[0]
}

fn c2_inversion() -> GammaModule {
    GammaModule::new(vec![3], vec![vec![vec![2]]]).unwrap()
}

#[test]
fn groups_from_generators() {
    let s3 = group_from_spec(
        "name = \"S3\"\ndegree = 3\ngenerators = [\"(1 2)\", \"(1 2 3)\"]\n",
        200,
    )
    .unwrap();
    assert_eq!(s3.order(), 6);
    let d4 = group_from_spec(
        "name = \"D4\"\ndegree = 4\ngenerators = [\"(1 2 3 4)\", \"(1 3)\"]\n",
        200,
    )
    .unwrap();
    assert_eq!(d4.order(), 8);
    let one = group_from_spec("name = \"1\"\ndegree = 1\ngenerators = []\n", 200).unwrap();
    assert_eq!(one.order(), 1);
}

#[test]
fn conjugacy_classes() {
    assert_eq!(class_sizes(&builtin("S3").unwrap()), vec![1, 2, 3]);
    assert_eq!(class_sizes(&builtin("D4").unwrap()), vec![1, 1, 2, 2, 2]);
    assert_eq!(class_sizes(&Group::trivial()), vec![1]);
}

#[test]
fn cosets_and_quotients() {
    let s3 = builtin("S3").unwrap();
    let a3 = s3.subgroup_generated(&[s3.parse_element("(1 2 3)").unwrap()]);
    let c = s3.coset_and_quotient(&a3).unwrap();
    assert_eq!(c.cosets.len(), 2);
    assert!(c.is_normal);
    assert_eq!(c.quotient.unwrap().0.order(), 2);
    let t = s3.subgroup_generated(&[s3.parse_element("(1 2)").unwrap()]);
    let c = s3.coset_and_quotient(&t).unwrap();
    assert_eq!(c.cosets.len(), 3);
    assert!(!c.is_normal && c.quotient.is_none());
    let d4 = builtin("D4").unwrap();
    let c = d4.coset_and_quotient(&sub(&d4, "center")).unwrap();
    assert_eq!(c.cosets.len(), 4);
    let (q, hom) = c.quotient.unwrap();
    assert_eq!((q.order(), q.exponent()), (4, 2));
    assert!(hom.is_homomorphism(&d4, &q) && hom.is_surjective());
}

#[test]
fn character_tables() {
    let c2 = builtin("C2").unwrap();
    let t = character_table(&c2, 200).unwrap();
    let rows: Vec<Vec<Q>> = t
        .characters
        .iter()
        .map(|r| r.iter().map(|x| x.as_rational().unwrap()).collect())
        .collect();
    assert_eq!(
        rows,
        vec![vec![q_int(1), q_int(1)], vec![q_int(1), q_int(-1)]]
    );
    let s3 = character_table(&builtin("S3").unwrap(), 200).unwrap();
    assert_eq!(s3.degrees, vec![1, 1, 2]);
    let a5 = character_table(&builtin("A5").unwrap(), 200).unwrap();
    assert_eq!(a5.degrees, vec![1, 3, 3, 4, 5]);
    assert_eq!(a5.degrees.iter().map(|d| d * d).sum::<u64>(), 60);
    for row in 1..=2 {
        assert!(a5.characters[row].iter().any(|x| x.as_rational().is_none()));
    }
    a5.check().unwrap();
}

#[test]
fn dihedral_components() {
    let (g, dec) = setup("D4");
    let mut dims: Vec<usize> = dec.components.iter().map(|c| c.dim).collect();
    dims.sort_unstable();
    assert_eq!(dims, vec![1, 1, 1, 1, 4]);
    // (1 − σ²)/2 is the degree-two idempotent
    let s = g.parse_element("(1 2 3 4)").unwrap();
    let mut e = algebra::scale(&algebra::one(&g), &q_frac(1, 2));
    e[g.mul(s, s)] = q_frac(-1, 2);
    let c = dec.components.iter().find(|c| c.idempotent == e).unwrap();
    assert_eq!(c.h, 2);
}

#[test]
fn fused_components() {
    let (_, dec) = setup("A5");
    let fused: Vec<_> = dec
        .components
        .iter()
        .filter(|c| c.center_degree == 2)
        .collect();
    assert_eq!(fused.len(), 1);
    assert_eq!(fused[0].h, 3);
    let one = Decomposition::new(&Group::trivial()).unwrap();
    assert_eq!(one.num_components(), 1);
    assert_eq!(
        one.components[0].idempotent,
        algebra::one(&Group::trivial())
    );
}

#[test]
fn good_prime_examples() {
    let primes: Vec<u64> = vec![2, 3, 5, 7, 11, 13];
    let bad = |gname: &str, sname: &str| -> Vec<u64> {
        let (g, dec) = setup(gname);
        let aug = augmentation_component(&dec, &sub(&g, sname)).unwrap();
        good_primes(&dec, &aug.components, &primes)
            .values()
            .filter(|r| r.verdict != Verdict::Good)
            .map(|r| r.prime)
            .collect()
    };
    assert_eq!(bad("S3", "S2"), vec![3]);
    assert_eq!(bad("D4", "tau"), vec![2]);
    assert_eq!(bad("A5", "S3_twisted"), vec![2, 3, 5]);
}

#[test]
fn rank_vectors() {
    let (g, dec) = setup("C2");
    assert_eq!(*rank_u(&dec, &[g.whole()]).u(2), q_int(0));
    assert_eq!(*rank_u(&dec, &[g.trivial_subgroup()]).u(2), q_int(1));
    let (d4, dec4) = setup("D4");
    let r = rank_u(&dec4, &[d4.trivial_subgroup()]);
    assert!((2..=5).all(|i| *r.u(i) == q_int(1)));
}

#[test]
fn modules_from_types() {
    let (_, d4) = setup("D4");
    let m = GammaModule::from_type(&ty("5:3:(1)"), &d4).unwrap();
    assert_eq!(m.orders(), &[3, 3]);
    assert_eq!(m.type_of(&d4).unwrap(), ty("5:3:(1)"));
    assert!(GammaModule::from_type(&ModuleType::zero(), &d4)
        .unwrap()
        .is_zero());
    let (_, s3) = setup("S3");
    assert_eq!(
        GammaModule::from_type(&ty("3:2:(2)"), &s3)
            .unwrap()
            .orders(),
        &[4, 4]
    );
    let m = GammaModule::from_type(&ty("3:2:(2,1)"), &s3).unwrap();
    assert_eq!(m.type_of(&s3).unwrap(), ty("3:2:(2,1)"));
    let (_, c2) = setup("C2");
    assert_eq!(
        GammaModule::zero(1).type_of(&c2).unwrap(),
        ModuleType::zero()
    );
    assert_eq!(c2_inversion().type_of(&c2).unwrap(), ty("2:3:(1)"));
}

#[test]
fn fixed_points_and_norms() {
    let c2 = builtin("C2").unwrap();
    let fnorm = c2_inversion().fixed_and_norm(&c2, &c2.whole()).unwrap();
    assert_eq!(
        (fnorm.fixed.len(), fnorm.norm.len(), fnorm.tate_h0_trivial),
        (1, 1, true)
    );
    let trivial = GammaModule::new(vec![3], vec![vec![vec![1]]]).unwrap();
    let fnorm = trivial.fixed_and_norm(&c2, &c2.whole()).unwrap();
    assert_eq!(
        (fnorm.fixed.len(), fnorm.norm.len(), fnorm.tate_h0_trivial),
        (3, 3, true)
    );
}

#[test]
fn counting_formulas() {
    let p = Partition::new;
    assert_eq!(hom_formula(&p(vec![2, 1]), &p(vec![1]), 3).unwrap(), 9);
    assert_eq!(aut_formula(&p(vec![2, 1]), 3).unwrap(), 108);
    let (_, dec) = setup("C2");
    let zero = ModuleType::zero();
    assert_eq!(
        count_types(MapKind::Sur, &ty("2:3:(2,1)"), &zero, &dec).unwrap(),
        1
    );
    assert_eq!(count_types(MapKind::Sur, &zero, &zero, &dec).unwrap(), 1);
    assert_eq!(
        count_types(MapKind::Sur, &zero, &ty("2:3:(1)"), &dec).unwrap(),
        0
    );
}

#[test]
fn type_enumeration() {
    let (_, c2) = setup("C2");
    let t = enumerate_types(&c2, &[2], &TruncationSpec::new(vec![(3, 1)], Some(27))).unwrap();
    let names: Vec<String> = t.iter().map(ToString::to_string).collect();
    assert_eq!(names, ["0", "2:3:(1)", "2:3:(1,1)", "2:3:(1,1,1)"]);
    let (_, c3) = setup("C3");
    let t = enumerate_types(&c3, &[1], &TruncationSpec::new(vec![(2, 2)], Some(16))).unwrap();
    let mut parts: Vec<Vec<u32>> = t
        .iter()
        .map(|x| x.partition(1, 2).map_or(vec![], |p| p.parts().to_vec()))
        .collect();
    parts.sort();
    let mut want = vec![
        vec![],
        vec![1],
        vec![2],
        vec![1, 1],
        vec![2, 1],
        vec![2, 2],
        vec![1, 1, 1],
        vec![2, 1, 1],
        vec![1, 1, 1, 1],
    ];
    want.sort();
    assert_eq!(parts, want);
    assert_eq!(
        enumerate_types(&c2, &[2], &TruncationSpec::empty()).unwrap(),
        vec![ModuleType::zero()]
    );
}

#[test]
fn module_structures() {
    let limits = Limits::default();
    let c2 = builtin("C2").unwrap();
    assert_eq!(
        bruteforce_module_structures(&c2, &[3], &limits)
            .unwrap()
            .len(),
        2
    );
    assert_eq!(
        bruteforce_module_structures(&c2, &[2], &limits)
            .unwrap()
            .len(),
        1
    );
    let (s3, dec) = setup("S3");
    let found = bruteforce_module_structures(&s3, &[2, 2], &limits).unwrap();
    let standard = GammaModule::from_type(&ty("3:2:(1)"), &dec).unwrap();
    let with_trivial_invariants: Vec<_> = found.iter().filter(|s| s.trivial_invariants).collect();
    let typed = enumerate_types(&dec, &[3], &TruncationSpec::new(vec![(2, 1)], Some(4))).unwrap();
    assert_eq!(
        with_trivial_invariants.len(),
        typed.iter().filter(|t| t.order(&dec) == Some(4)).count()
    );
    assert!(galmod_core::module::isomorphic(
        &with_trivial_invariants[0].module,
        &standard,
        &limits
    )
    .unwrap());
}

#[test]
fn weights() {
    let (g, dec) = setup("C2");
    let imag = rank_u(&dec, &[g.whole()]);
    let real = rank_u(&dec, &[g.trivial_subgroup()]);
    assert_eq!(weight(&ModuleType::zero(), &real, &dec).unwrap(), q_int(1));
    assert_eq!(weight(&ty("2:3:(1)"), &imag, &dec).unwrap(), q_frac(1, 2));
    assert_eq!(weight(&ty("2:3:(1)"), &real, &dec).unwrap(), q_frac(1, 6));
    assert_eq!(
        size_power_by_places(&c2_inversion(), &real, &dec).unwrap(),
        q_int(3)
    );
}

#[test]
fn truncated_tables() {
    let (g, dec) = setup("C2");
    let imag = rank_u(&dec, &[g.whole()]);
    let t = truncated_table(
        &dec,
        &[2],
        &imag,
        &TruncationSpec::new(vec![(3, 1)], Some(27)),
    )
    .unwrap();
    let w: Vec<Q> = t.rows.iter().map(|r| r.weight.clone()).collect();
    assert_eq!(
        w,
        vec![q_int(1), q_frac(1, 2), q_frac(1, 48), q_frac(1, 11232)]
    );
    let t = truncated_table(&dec, &[2], &imag, &TruncationSpec::empty()).unwrap();
    assert_eq!(t.rows.len(), 1);
    assert_eq!(t.rows[0].probability, q_int(1));
    let real = rank_u(&dec, &[g.trivial_subgroup()]);
    let t = truncated_table(
        &dec,
        &[2],
        &real,
        &TruncationSpec::new(vec![(3, 1)], Some(3)),
    )
    .unwrap();
    let p: Vec<Q> = t.rows.iter().map(|r| r.probability.clone()).collect();
    assert_eq!(p, vec![q_frac(6, 7), q_frac(1, 7)]);
}

#[test]
fn closed_form_moments() {
    let (g, dec) = setup("C2");
    let real = rank_u(&dec, &[g.trivial_subgroup()]);
    assert_eq!(
        closed_form_moment(&ModuleType::zero(), &real, &[2], &dec).unwrap(),
        q_int(1)
    );
    assert_eq!(
        closed_form_by_places(&ModuleType::zero(), &real, &dec).unwrap(),
        q_int(1)
    );
    assert_eq!(
        closed_form_moment(&ty("2:3:(1)"), &real, &[2], &dec).unwrap(),
        q_frac(1, 3)
    );
    assert_eq!(
        closed_form_by_places(&ty("2:3:(1)"), &real, &dec).unwrap(),
        q_frac(1, 3)
    );
}

#[test]
fn dihedral_moment_closed_forms() {
    let (g, dec) = setup("D4");
    let o = hecke_order(&dec, &sub(&g, "tau"), &[3]).unwrap();
    let r = rank_u(&dec, &[g.trivial_subgroup()]);
    let v = rank_transfer(&r, &o.augmentation, &dec);
    let t = dihedral_involution(&g, &o).unwrap();
    for (sign, expect) in [(1, q_frac(1, 3)), (-1, q_frac(1, 9))] {
        let h = omodule_from_generator(&o, 3, Some((&t, &vec![vec![sign]])), vec![3]).unwrap();
        assert_eq!(
            Q::one() / hecke_size_power(&h, &o, &v, &dec).unwrap(),
            expect
        );
    }
}

#[test]
fn moment_inversion() {
    let (g, dec) = setup("C2");
    assert_eq!(
        invert_moments(&[ModuleType::zero()], &[q_int(1)], &dec).unwrap(),
        vec![q_int(1)]
    );
    // closed-form moments for u = 0 are all 1; compare with X/3X of a deeper table
    let imag = rank_u(&dec, &[g.whole()]);
    let types = enumerate_types(&dec, &[2], &TruncationSpec::new(vec![(3, 1)], Some(729))).unwrap();
    let x = invert_moments(&types, &vec![q_int(1); types.len()], &dec).unwrap();
    let deep = truncated_table(
        &dec,
        &[2],
        &imag,
        &TruncationSpec::new(vec![(3, 4)], Some(729)),
    )
    .unwrap();
    let deeper = truncated_table(
        &dec,
        &[2],
        &imag,
        &TruncationSpec::new(vec![(3, 5)], Some(729)),
    )
    .unwrap();
    let band = tail_band(1, &deep.normalizer, &deeper.normalizer);
    let reduced = deep.reduced(&[(3, 1)]);
    for (t, q) in types.iter().zip(&x) {
        let direct = reduced
            .iter()
            .find(|(a, _)| a == t)
            .map_or_else(Q::zero, |(_, p)| p.clone());
        assert!((q - direct).abs() <= band, "{t}");
    }
    // a table's own moments give back its probabilities
    let table = truncated_table(
        &dec,
        &[2],
        &imag,
        &TruncationSpec::new(vec![(3, 2)], Some(81)),
    )
    .unwrap();
    let types: Vec<ModuleType> = table.rows.iter().map(|r| r.module_type.clone()).collect();
    let m: Vec<Q> = types
        .iter()
        .map(|h| {
            galmod_core::dist::moment(&table, h, &dec)
                .unwrap()
                .truncated
        })
        .collect();
    let back = invert_moments(&types, &m, &dec).unwrap();
    assert!(table
        .rows
        .iter()
        .zip(&back)
        .all(|(r, b)| r.probability == *b));
}

#[test]
fn samplers() {
    let (g, dec) = setup("C2");
    let imag = rank_u(&dec, &[g.whole()]);
    let single = truncated_table(&dec, &[2], &imag, &TruncationSpec::empty()).unwrap();
    assert!(sample(&single, 5, 20)
        .unwrap()
        .iter()
        .all(ModuleType::is_zero));
    let table = truncated_table(
        &dec,
        &[2],
        &imag,
        &TruncationSpec::new(vec![(3, 2)], Some(81)),
    )
    .unwrap();
    assert_eq!(
        sample(&table, 9, 50).unwrap(),
        sample(&table, 9, 50).unwrap()
    );
    let cfg = CokernelSamplerConfig {
        prime: 3,
        size: 8,
        rank_offset: 0,
        precision: 6,
        seed: 5,
    };
    let draws = sample_cokernel(&cfg, 100_000).unwrap();
    let freq = draws.iter().filter(|p| p.is_empty()).count() as f64 / 1e5;
    assert!((freq - 0.560126).abs() < 0.02, "{freq}");
}

#[test]
fn class_triple_groups() {
    let limits = Limits::default();
    let c2 = builtin("C2").unwrap();
    let s = c2.parse_element("(1 2)").unwrap();
    let t = build_class_triple(&c2_inversion(), &c2, s, &limits).unwrap();
    assert_eq!(t.group.order(), 6);
    assert!(!t.group.is_abelian());
    assert_eq!(t.kernel.len(), 3);
    assert!(t.projection.is_surjective());
    let t0 = build_class_triple(&GammaModule::zero(1), &c2, c2.identity(), &limits).unwrap();
    assert_eq!(t0.group.order(), 2);
    assert_eq!(t0.c, t0.group.identity());
    let (s3, dec) = setup("S3");
    let h = GammaModule::from_type(&ty("3:5:(1)"), &dec).unwrap();
    let tr = s3.parse_element("(1 2)").unwrap();
    let t = build_class_triple(&h, &s3, tr, &limits).unwrap();
    assert_eq!(t.group.order(), 150);
    t.check(&s3).unwrap();
    assert!(verify_uniqueness(&t, &limits).unwrap());
}

#[test]
fn class_triple_automorphisms() {
    let limits = Limits::default();
    let (c2, dec) = setup("C2");
    let h = c2_inversion();
    for (s, expect) in [
        (c2.parse_element("(1 2)").unwrap(), 2u128),
        (c2.identity(), 6),
    ] {
        let t = build_class_triple(&h, &c2, s, &limits).unwrap();
        assert_eq!(
            aut_count(&t, &h, &dec, AutMethod::Formula, &limits).unwrap(),
            expect
        );
        assert_eq!(
            aut_count(&t, &h, &dec, AutMethod::BruteForce, &limits).unwrap(),
            expect
        );
        assert!(verify_uniqueness(&t, &limits).unwrap());
    }
    let zero = GammaModule::zero(1);
    for s in [c2.identity(), c2.parse_element("(1 2)").unwrap()] {
        let t = build_class_triple(&zero, &c2, s, &limits).unwrap();
        assert_eq!(
            aut_count(&t, &zero, &dec, AutMethod::BruteForce, &limits).unwrap(),
            1
        );
        assert!(verify_uniqueness(&t, &limits).unwrap());
    }
}

#[test]
fn augmentations() {
    let (d4, dec) = setup("D4");
    let aug = augmentation_component(&dec, &sub(&d4, "tau")).unwrap();
    let degrees: Vec<u64> = aug
        .components
        .iter()
        .map(|&i| dec.components[i - 1].h)
        .collect();
    assert_eq!(degrees, vec![1, 2]);
    assert_eq!(aug.idempotent, dec.idempotent_sum(&aug.components));
    for (name, sname, n) in [("S3", "S2", 3u64), ("S4", "S3", 4), ("S5", "S4", 5)] {
        let (g, dec) = setup(name);
        let aug = augmentation_component(&dec, &sub(&g, sname)).unwrap();
        assert!(aug.is_absolutely_irreducible(&dec));
        assert_eq!(dec.components[aug.components[0] - 1].h, n - 1);
    }
    let (a5, dec) = setup("A5");
    let aug = augmentation_component(&dec, &sub(&a5, "S3_twisted")).unwrap();
    let mut degrees: Vec<u64> = aug
        .components
        .iter()
        .map(|&i| dec.components[i - 1].h)
        .collect();
    degrees.sort_unstable();
    assert_eq!(degrees, vec![4, 5]);
}

#[test]
fn hecke_orders() {
    let (d4, dec) = setup("D4");
    let o = hecke_order(&dec, &sub(&d4, "tau"), &[3]).unwrap();
    assert_eq!(o.rank, 2);
    let t = dihedral_involution(&d4, &o).unwrap();
    assert!(o.at(3).unwrap().is_basis(&[o.identity.clone(), t]));
    let (s4, dec) = setup("S4");
    assert_eq!(hecke_order(&dec, &sub(&s4, "S3"), &[5]).unwrap().rank, 1);
    let (a5, dec) = setup("A5");
    let o = hecke_order(&dec, &sub(&a5, "S3_twisted"), &[7]).unwrap();
    assert_eq!(o.rank, 2);
    assert_eq!(
        o.component_dims.iter().map(|x| x.1).collect::<Vec<_>>(),
        vec![1, 1]
    );
}

#[test]
fn invariants_of_modules() {
    let (s3, dec) = setup("S3");
    let o = hecke_order(&dec, &sub(&s3, "S2"), &[2]).unwrap();
    let h = invariants_functor(
        &GammaModule::from_type(&ty("3:2:(1)"), &dec).unwrap(),
        &o,
        &dec,
    )
    .unwrap();
    assert_eq!(h.orders, vec![2]);
    assert!(invariants_functor(
        &GammaModule::from_type(&ModuleType::zero(), &dec).unwrap(),
        &o,
        &dec
    )
    .unwrap()
    .is_zero());
    let (d4, dec) = setup("D4");
    let o = hecke_order(&dec, &sub(&d4, "tau"), &[3]).unwrap();
    let lin = of_degree(&dec, &o.augmentation.components, 1);
    let m =
        GammaModule::from_type(&ModuleType::single(lin, 3, Partition::new(vec![1])), &dec).unwrap();
    let h = invariants_functor(&m, &o, &dec).unwrap();
    assert_eq!(h.orders, vec![3]);
    let t = dihedral_involution(&d4, &o).unwrap();
    let coords = o.at(3).unwrap().coordinates(&t).unwrap();
    assert_eq!(h.element_matrix(&coords).unwrap(), vec![vec![1]]);
}

#[test]
fn morita_lifts() {
    let limits = Limits::default();
    let (s3, dec) = setup("S3");
    let o = hecke_order(&dec, &sub(&s3, "S2"), &[2]).unwrap();
    let h = omodule_from_generator(&o, 2, None, vec![2]).unwrap();
    let lift = morita_lift(
        &h,
        &o,
        &dec,
        &lift_truncation(&h, &o.augmentation, &dec),
        &limits,
    )
    .unwrap();
    assert_eq!(lift.module_type, ty("3:2:(1)"));
    assert_eq!(lift.module.orders(), &[2, 2]);
    let zero = OModule::zero(2, 1);
    let lift = morita_lift(
        &zero,
        &o,
        &dec,
        &lift_truncation(&zero, &o.augmentation, &dec),
        &limits,
    )
    .unwrap();
    assert!(lift.module_type.is_zero());
    let (d4, dec) = setup("D4");
    let o = hecke_order(&dec, &sub(&d4, "tau"), &[3]).unwrap();
    let t = dihedral_involution(&d4, &o).unwrap();
    let h = omodule_from_generator(&o, 3, Some((&t, &vec![vec![-1]])), vec![3]).unwrap();
    let lift = morita_lift(
        &h,
        &o,
        &dec,
        &lift_truncation(&h, &o.augmentation, &dec),
        &limits,
    )
    .unwrap();
    assert_eq!(lift.module.orders(), &[3, 3]);
    assert_eq!(
        dec.components[lift.module_type.entries()[0].component - 1].h,
        2
    );
    assert_eq!((lift.aut_module, lift.aut_hecke), (2, 2));
}

#[test]
fn rank_transfers() {
    let (d4, dec) = setup("D4");
    let aug = augmentation_component(&dec, &sub(&d4, "tau")).unwrap();
    let v = rank_transfer(&rank_u(&dec, &[d4.trivial_subgroup()]), &aug, &dec);
    let lin = of_degree(&dec, &aug.components, 1);
    let two = of_degree(&dec, &aug.components, 2);
    assert_eq!(
        v,
        vec![
            (lin.min(two), if lin < two { q_int(1) } else { q_int(2) }),
            (lin.max(two), if lin < two { q_int(2) } else { q_int(1) })
        ]
    );
    for (name, sname, n) in [("S3", "S2", 3), ("S4", "S3", 4), ("S5", "S4", 5)] {
        let (g, dec) = setup(name);
        let aug = augmentation_component(&dec, &sub(&g, sname)).unwrap();
        let v = rank_transfer(&rank_u(&dec, &[g.trivial_subgroup()]), &aug, &dec);
        assert_eq!(v[0].1, q_int(n - 1));
        let zero = RankSpec::from_vector(vec![Q::zero(); dec.num_components()]);
        assert!(rank_transfer(&zero, &aug, &dec)
            .iter()
            .all(|(_, x)| x.is_zero()));
    }
}

#[test]
fn nongalois_weights() {
    let limits = Limits::default();
    let (d4, dec) = setup("D4");
    let o = hecke_order(&dec, &sub(&d4, "tau"), &[3]).unwrap();
    let r = rank_u(&dec, &[d4.trivial_subgroup()]);
    let rows = nongalois_table(
        &o,
        &dec,
        &r,
        &TruncationSpec::new(vec![(3, 1)], Some(9)),
        &limits,
    )
    .unwrap();
    assert_eq!(
        (rows[0].column_a.clone(), rows[0].column_b.clone()),
        (q_int(1), q_int(1))
    );
    let t = dihedral_involution(&d4, &o).unwrap();
    let minus = omodule_from_generator(&o, 3, Some((&t, &vec![vec![-1]])), vec![3]).unwrap();
    let row = rows
        .iter()
        .find(|row| row.module.isomorphic(&minus, &limits).unwrap())
        .unwrap();
    assert_eq!(
        (row.column_a.clone(), row.column_b.clone()),
        (q_frac(1, 18), q_frac(1, 18))
    );
    // the lift of Z/2 for S3 is the standard module of order 4
    let (s3, dec) = setup("S3");
    let o = hecke_order(&dec, &sub(&s3, "S2"), &[2]).unwrap();
    let r = rank_u(&dec, &[s3.trivial_subgroup()]);
    let rows = nongalois_table(
        &o,
        &dec,
        &r,
        &TruncationSpec::new(vec![(2, 1)], Some(4)),
        &limits,
    )
    .unwrap();
    let row = rows.iter().find(|row| row.module.order() == 2).unwrap();
    assert_eq!(
        (row.column_a.clone(), row.column_b.clone()),
        (q_frac(1, 4), q_frac(1, 4))
    );
}

#[test]
fn independence_instances() {
    let v4 = builtin("V4").unwrap();
    let first = sub(&v4, "first");
    assert!(
        rank_independence_check(&v4, &first, &first, &[v4.trivial_subgroup()])
            .unwrap()
            .holds
    );
    let d4 = builtin("D4").unwrap();
    let tau = sub(&d4, "tau");
    assert!(
        rank_independence_check(&d4, &d4.trivial_subgroup(), &tau, &[d4.trivial_subgroup()])
            .unwrap()
            .holds
    );
    let r = rank_independence_check(
        &d4,
        &sub(&d4, "center"),
        &sub(&d4, "tau_center"),
        &[d4.trivial_subgroup()],
    )
    .unwrap();
    assert!(r.holds);
}

#[test]
fn dataset_rows() {
    let d = parse_dataset("label,invariants\n-23,3\n-4027,3.3\n", true).unwrap();
    assert_eq!(
        d.rows,
        vec![
            DatasetRow {
                label: -23,
                invariants: vec![3]
            },
            DatasetRow {
                label: -4027,
                invariants: vec![3, 3]
            }
        ]
    );
    assert!(parse_dataset("label,invariants\n-3896,3.2\n", true).is_err());
}

#[test]
fn dataset_comparison() {
    let (g, dec) = setup("C2");
    let imag = rank_u(&dec, &[g.whole()]);
    let p = trivial_part_prediction(&dec, 2, &imag, &[3]);
    assert!((p - 0.560126).abs() < 1e-6);
    let data = parse_dataset(galmod_core::cli::SAMPLE_DATASET, true).unwrap();
    let rep = compare(
        &data,
        &dec,
        2,
        &imag,
        &TruncationSpec::new(vec![(3, 2)], Some(81)),
    )
    .unwrap();
    let text = rep.render(galmod_core::cli::Format::Text);
    assert!(
        text.contains("trivial part, limit: 0.560126077928"),
        "{text}"
    );
    let rep = compare(&data, &dec, 2, &imag, &TruncationSpec::empty()).unwrap();
    assert_eq!(rep.tables[0].rows.len(), 2);
    let all_trivial = Dataset {
        rows: vec![
            DatasetRow {
                label: -3,
                invariants: vec![]
            };
            4
        ],
        skipped: vec![],
    };
    let rep = compare(
        &all_trivial,
        &dec,
        2,
        &imag,
        &TruncationSpec::new(vec![(3, 1)], Some(27)),
    )
    .unwrap();
    let csv = rep.render(galmod_core::cli::Format::Csv);
    assert!(csv.lines().nth(1).unwrap().starts_with("0,4,1,1,"), "{csv}");
}
