//! Randomized checks of the algebraic invariants.

use galmod_core::arith::snf::{smith, zmul};
use galmod_core::arith::{parse_q, q_frac, q_int, Q};
use galmod_core::cli::dataset::{parse_dataset, DatasetRow};
use galmod_core::cli::{Cell, Format, Report, Table};
use galmod_core::dist::table::{size_power, size_power_by_places};
use galmod_core::dist::{invert_moments, moment, sample, truncated_table, weight};
use galmod_core::group::builtin::builtin;
use galmod_core::group::Group;
use galmod_core::limits::Limits;
use galmod_core::module::{
    count_maps, BruteCounter, GammaModule, MapKind, Method, ModuleType, Operand, Partition,
    TruncationSpec, TypeEntry,
};
use galmod_core::rep::{rank_u, Decomposition, RankSpec};
use num_bigint::BigInt;
use proptest::prelude::*;
use std::sync::OnceLock;

fn decomposition(name: &str) -> &'static Decomposition {
    static CACHE: OnceLock<Vec<(String, Decomposition)>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        ["C2", "S3", "D4", "A4"]
            .iter()
            .map(|n| {
                (
                    n.to_string(),
                    Decomposition::new(&builtin(n).unwrap()).unwrap(),
                )
            })
            .collect()
    });
    &all.iter().find(|(n, _)| n == name).unwrap().1
}

fn group(name: &str) -> &'static Group {
    &decomposition(name).group
}

fn partition(max_part: u32, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(Partition::new)
}

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn single(component: usize, p: u64, lambda: Partition) -> ModuleType {
    if lambda.is_empty() {
        ModuleType::zero()
    } else {
        ModuleType::single(component, p, lambda)
    }
}

proptest! {
    #[test]
    fn transpose_is_an_involution(lambda in partition(6, 6)) {
        let t = lambda.transpose();
        prop_assert_eq!(t.size(), lambda.size());
        prop_assert_eq!(t.transpose(), lambda.clone());
        prop_assert_eq!(t.len() as u32, lambda.largest());
    }

    #[test]
    fn partitions_parse_back(lambda in partition(9, 5)) {
        let text = format!("({})", lambda.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(","));
        prop_assert_eq!(Partition::parse(&text).unwrap(), lambda);
    }

    #[test]
    fn group_axioms(name in prop::sample::select(vec!["C2", "S3", "D4", "A4", "S4"]), seed in any::<[usize; 3]>()) {
        let g = builtin(name).unwrap();
        let n = g.order();
        let [a, b, c] = seed.map(|x| x % n);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        prop_assert_eq!(g.mul(g.identity(), a), a);
        let sizes: usize = g.classes().iter().map(|k| k.size()).sum();
        prop_assert_eq!(sizes, n);
        prop_assert!(g.classes().iter().all(|k| n % k.size() == 0));
        let h = g.subgroup_generated(&[a, b]);
        prop_assert_eq!(n % h.order(), 0);
        prop_assert_eq!(g.left_cosets(&h).len(), n / h.order());
        let (sub, incl) = g.subgroup_as_group(&h);
        prop_assert!(incl.is_homomorphism(&sub, &g));
        prop_assert_eq!(incl.kernel().len(), 1);
    }

    #[test]
    fn rank_is_additive_over_places(name in prop::sample::select(vec!["C2", "S3", "D4", "A4"]), picks in prop::collection::vec(any::<usize>(), 0..4), split in any::<usize>()) {
        let dec = decomposition(name);
        let g = &dec.group;
        let places: Vec<_> = picks.iter().map(|&i| g.subgroup_generated(&[i % g.order()])).collect();
        let k = if places.is_empty() { 0 } else { split % (places.len() + 1) };
        let both = rank_u(dec, &places);
        let left = rank_u(dec, &places[..k]);
        let right = rank_u(dec, &places[k..]);
        let none = rank_u(dec, &[]);
        for i in 1..=dec.num_components() {
            prop_assert_eq!(both.u(i) + none.u(i), left.u(i) + right.u(i));
        }
    }

    #[test]
    fn weights_factor_over_primes(l3 in partition(2, 2), l5 in partition(2, 2), u in 0i64..3) {
        let dec = decomposition("C2");
        let r = RankSpec::from_vector(vec![q_int(0), q_int(u)]);
        let t3 = single(2, 3, l3);
        let t5 = single(2, 5, l5);
        let both = t3.direct_sum(&t5).unwrap();
        prop_assert_eq!(weight(&both, &r, dec).unwrap(), weight(&t3, &r, dec).unwrap() * weight(&t5, &r, dec).unwrap());
    }
}

proptest! {
    #![proptest_config(cfg(24))]

    #[test]
    fn types_round_trip(name in prop::sample::select(vec!["S3", "D4"]), comp_pick in any::<usize>(), lambda in partition(2, 2)) {
        let dec = decomposition(name);
        let nontrivial: Vec<usize> = (2..=dec.num_components()).collect();
        let comp = nontrivial[comp_pick % nontrivial.len()];
        let t = single(comp, 5, lambda);
        let m = GammaModule::from_type(&t, dec).unwrap();
        prop_assert_eq!(m.order(), t.order(dec).unwrap());
        prop_assert_eq!(m.type_of(dec).unwrap(), t);
        let back = GammaModule::from_toml(&m.to_toml()).unwrap();
        prop_assert_eq!(back.orders(), m.orders());
    }

    #[test]
    fn both_routes_to_the_size_power(lambda in partition(2, 2), places in prop::collection::vec(any::<usize>(), 0..3)) {
        let dec = decomposition("S3");
        let g = &dec.group;
        let subs: Vec<_> = places.iter().map(|&i| g.subgroup_generated(&[i % g.order()])).collect();
        let r = rank_u(dec, &subs);
        for comp in [2, 3] {
            let t = single(comp, 5, lambda.clone());
            let m = GammaModule::from_type(&t, dec).unwrap();
            prop_assert_eq!(size_power(&t, &r, dec).unwrap(), size_power_by_places(&m, &r, dec).unwrap());
        }
    }

    #[test]
    fn hom_counts_agree(lambda in partition(2, 2), mu in partition(2, 2)) {
        let dec = decomposition("C2");
        let limits = Limits::default();
        let src = Operand::Type(single(2, 3, lambda));
        let dst = Operand::Type(single(2, 3, mu));
        for kind in [MapKind::Hom, MapKind::Sur, MapKind::Aut] {
            let f = count_maps(kind, &src, &dst, Method::Formula, dec, &limits).unwrap();
            let b = count_maps(kind, &src, &dst, Method::BruteForce, dec, &limits).unwrap();
            prop_assert_eq!(f, b, "{:?}", kind);
        }
    }

    #[test]
    fn hom_is_a_sum_of_surjections(lambda in partition(2, 2), mu in partition(2, 2)) {
        let dec = decomposition("C2");
        let counter = BruteCounter::new(&dec.group, Limits::default());
        let src = GammaModule::from_type(&single(2, 3, lambda), dec).unwrap();
        let dst = GammaModule::from_type(&single(2, 3, mu), dec).unwrap();
        prop_assert_eq!(counter.hom(&src, &dst).unwrap(), counter.sur_sum_over_submodules(&src, &dst).unwrap());
    }

    #[test]
    fn cohomologically_trivial_at_good_primes(comp in 2usize..=3, lambda in partition(2, 2), pick in any::<usize>()) {
        let dec = decomposition("S3");
        let g = group("S3");
        let m = GammaModule::from_type(&single(comp, 5, lambda), dec).unwrap();
        let h = g.subgroup_generated(&[pick % g.order()]);
        prop_assert!(m.fixed_and_norm(g, &h).unwrap().tate_h0_trivial);
    }

    #[test]
    fn moments_invert_to_probabilities(u in 0i64..3, n in 1u32..3) {
        let dec = decomposition("C2");
        let r = RankSpec::from_vector(vec![q_int(0), q_int(u)]);
        let table = truncated_table(dec, &[2], &r, &TruncationSpec::new(vec![(3, n)], Some(81))).unwrap();
        let types: Vec<ModuleType> = table.rows.iter().map(|row| row.module_type.clone()).collect();
        let m: Vec<Q> = types.iter().map(|h| moment(&table, h, dec).unwrap().truncated).collect();
        let back = invert_moments(&types, &m, dec).unwrap();
        for (row, b) in table.rows.iter().zip(&back) {
            prop_assert_eq!(&row.probability, b);
        }
    }

    #[test]
    fn sampling_is_deterministic(seed in any::<u64>()) {
        let dec = decomposition("C2");
        let r = RankSpec::from_vector(vec![q_int(0), q_int(0)]);
        let table = truncated_table(dec, &[2], &r, &TruncationSpec::new(vec![(3, 2)], Some(81))).unwrap();
        let a = sample(&table, seed, 40).unwrap();
        prop_assert_eq!(&a, &sample(&table, seed, 40).unwrap());
        prop_assert!(a.iter().all(|t| table.rows.iter().any(|row| &row.module_type == t)));
    }
}

fn chain() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..6, 0..4).prop_map(|steps| {
        let mut out: Vec<u64> = Vec::new();
        for s in steps {
            let next = out.last().map_or(s, |&d| d * (s - 1));
            out.push(next.max(2));
        }
        out
    })
}

proptest! {
    #[test]
    fn dataset_rows_round_trip(rows in prop::collection::vec((-100_000i64..100_000, chain()), 1..8)) {
        let rows: Vec<DatasetRow> = rows.into_iter().map(|(label, invariants)| DatasetRow { label, invariants }).collect();
        let mut text = String::from("label,invariants\n");
        for r in &rows {
            text.push_str(&format!("{},{}\n", r.label, r.encode_invariants()));
        }
        let parsed = parse_dataset(&text, true).unwrap();
        prop_assert_eq!(parsed.rows, rows);
    }

    #[test]
    fn csv_reports_round_trip(values in prop::collection::vec((-50i64..50, 1i64..50), 1..6)) {
        let mut report = Report::new("values");
        let mut t = Table::new("t", &["i", "x"]);
        for (i, &(n, d)) in values.iter().enumerate() {
            t.push(vec![Cell::from(i), Cell::from(q_frac(n, d))]);
        }
        report.tables.push(t);
        let csv = report.render(Format::Csv);
        let mut reader = csv::Reader::from_reader(csv.as_bytes());
        prop_assert_eq!(reader.headers().unwrap().iter().collect::<Vec<_>>(), vec!["i", "x", "x_decimal"]);
        for (rec, &(n, d)) in reader.records().zip(&values) {
            let rec = rec.unwrap();
            prop_assert_eq!(parse_q(&rec[1]).unwrap(), q_frac(n, d));
            let dec: f64 = rec[2].parse().unwrap();
            prop_assert!((dec - n as f64 / d as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn smith_form_diagonalizes(m in prop::collection::vec(prop::collection::vec(-9i64..10, 3), 3)) {
        let m: Vec<Vec<BigInt>> = m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let s = smith(&m);
        let d = zmul(&zmul(&s.u, &m), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j { s.diag[i].clone() } else { BigInt::from(0) };
                prop_assert_eq!(x, &want);
            }
        }
        for w in s.diag.windows(2) {
            prop_assert!(w[1] == BigInt::from(0) || (&w[1] % &w[0]) == BigInt::from(0));
        }
    }
}

#[test]
fn type_entries_are_sorted() {
    let t = ModuleType::new(vec![
        TypeEntry {
            component: 3,
            prime: 5,
            partition: Partition::new(vec![1]),
        },
        TypeEntry {
            component: 2,
            prime: 5,
            partition: Partition::new(vec![2]),
        },
    ])
    .unwrap();
    assert_eq!(ModuleType::parse(&t.to_string()).unwrap(), t);
}
