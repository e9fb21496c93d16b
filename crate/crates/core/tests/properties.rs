use std::collections::BTreeSet;

use hilbert_k::assembler::{rank_diff, whitehead_psl, whitehead_sl, ClassCounts, GroupData, Mode};
use hilbert_k::pchain::{build_e1, e1_rank_difference, OrbitPoset};
use hilbert_k::quad_field::{allowed_orders, elliptic_trace_candidates, is_elliptic_trace, FieldSpec};
use hilbert_k::AbGroupExpr;
use proptest::prelude::*;

fn square_free_fields(limit: u64) -> impl Iterator<Item = FieldSpec> {
    (2..=limit).filter_map(|d| FieldSpec::new(d).ok())
}

#[test]
fn candidates_closed_under_negation_and_conjugation() {
    for f in square_free_fields(200) {
        let cands = elliptic_trace_candidates(&f).unwrap();
        let traces: BTreeSet<String> = cands.iter().map(|c| c.trace.to_string()).collect();
        for c in &cands {
            assert!(is_elliptic_trace(&c.trace).unwrap());
            assert!(traces.contains(&(-&c.trace).to_string()), "d = {}: -{}", f.d(), c.trace);
            assert!(traces.contains(&c.trace.conjugate().to_string()), "d = {}: conj {}", f.d(), c.trace);
        }
        for t in [0, 1, -1] {
            assert!(traces.contains(&t.to_string()), "d = {}", f.d());
        }
    }
}

#[test]
fn extra_orders_need_the_matching_square_root() {
    // 2cos(pi/4) = sqrt 2, 2cos(pi/5) = (1 + sqrt 5)/2, 2cos(pi/6) = sqrt 3
    for f in square_free_fields(200) {
        let orders = allowed_orders(&f).unwrap();
        let d = f.d();
        assert!(orders.contains(&2) && orders.contains(&3));
        assert!(orders.iter().all(|o| (2..=6).contains(o)), "d = {d}: {orders:?}");
        assert_eq!(orders.contains(&4), d == 2, "d = {d}");
        assert_eq!(orders.contains(&5), d == 5, "d = {d}");
        assert_eq!(orders.contains(&6), d == 3, "d = {d}");
    }
}

fn class_counts() -> impl Strategy<Value = ClassCounts> {
    prop::collection::btree_map(2u64..=12, 1u64..=5, 0..6).prop_map(|m| ClassCounts::new(m).unwrap())
}

proptest! {
    #[test]
    fn relative_sl_page_matches_psl_page(counts in class_counts(), q in -3i64..=21) {
        let psl = build_e1(&OrbitPoset::psl(&counts), false).unwrap();
        let sl = build_e1(&OrbitPoset::sl(&counts), true).unwrap();
        prop_assert_eq!(&psl.columns, &sl.columns);
        let g = GroupData::generic("G", counts, None, Mode::Psl);
        prop_assert_eq!(e1_rank_difference(&psl, q), rank_diff(&g, q).unwrap());
    }

    #[test]
    fn sl_adds_z2_at_q1_and_z_at_q0(counts in class_counts(), k in 1u64..=12) {
        let ab = AbGroupExpr::cyclic(k);
        let psl = GroupData::generic("G", counts.clone(), Some(ab.clone()), Mode::Psl);
        let sl = psl.clone().with_mode(Mode::Sl);
        let w1 = whitehead_psl(&psl, 1).unwrap();
        prop_assert_eq!(whitehead_sl(&sl, 1).unwrap(), w1 + ab + AbGroupExpr::cyclic(2));
        let w0 = whitehead_psl(&psl, 0).unwrap();
        prop_assert_eq!(whitehead_sl(&sl, 0).unwrap(), w0 + AbGroupExpr::free(1));
    }

    #[test]
    fn rank_diff_vanishes_below_minus_one(counts in class_counts(), q in -40i64..-1) {
        let g = GroupData::generic("G", counts, None, Mode::Psl);
        prop_assert_eq!(rank_diff(&g, q).unwrap(), 0);
    }
}
