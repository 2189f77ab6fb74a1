//! Randomized laws over the canonical periodic representation. Every law is
//! checked two ways where possible: structurally (canonical equality) and
//! pointwise over a probe interval wide enough to cross both tails.

use proptest::collection::{btree_set, vec};
use proptest::prelude::*;

use sumsetlab::modular::ResidueSet;
use sumsetlab::sets::{EpForm, PeriodicSet};

const PROBE_LO: i64 = -200;
const PROBE_HI: i64 = 200;

fn probe_eq(a: &PeriodicSet, b: &PeriodicSet) -> bool {
    (PROBE_LO..=PROBE_HI).all(|z| a.member(z) == b.member(z))
}

fn arb_set() -> impl Strategy<Value = PeriodicSet> {
    (1i64..=6).prop_flat_map(|period| {
        (
            vec(0..period, 0..=period as usize),
            vec(0..period, 0..=period as usize),
            -40i64..=20,
            0i64..=40,
            btree_set(-40i64..=59, 0..12),
        )
            .prop_map(move |(low, high, mid_lo, span, mid_raw)| {
                let mid_hi = mid_lo + span;
                let mid: Vec<i64> = mid_raw
                    .into_iter()
                    .filter(|&z| z >= mid_lo && z < mid_hi)
                    .collect();
                PeriodicSet::from_parts(period, &low, &high, mid_lo, mid_hi, &mid)
                    .expect("generated parts are valid")
            })
    })
}

// Finite sets kept small so sumset periods stay far below any cap.
fn arb_finite() -> impl Strategy<Value = PeriodicSet> {
    btree_set(-30i64..=30, 0..6).prop_map(PeriodicSet::finite)
}

proptest! {
    #[test]
    fn canonical_form_is_a_fixed_point(a in arb_set()) {
        let rebuilt = PeriodicSet::from_parts(
            a.period(),
            &a.low_res().members(),
            &a.high_res().members(),
            a.mid_lo(),
            a.mid_hi(),
            a.mid(),
        ).unwrap();
        prop_assert_eq!(&rebuilt, &a);
        prop_assert_eq!(rebuilt.period(), a.period());
        prop_assert_eq!(rebuilt.mid_lo(), a.mid_lo());
        prop_assert_eq!(rebuilt.mid_hi(), a.mid_hi());
    }

    #[test]
    fn equality_agrees_with_pointwise_membership(a in arb_set(), b in arb_set()) {
        // Canonical equality must decide extensional equality. The probe
        // interval spans both tails of both operands, so disagreement out
        // there would already show up in here.
        prop_assert_eq!(a == b, probe_eq(&a, &b));
    }

    #[test]
    fn boolean_ops_match_pointwise_definitions(a in arb_set(), b in arb_set()) {
        let u = a.union(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        let d = a.difference(&b).unwrap();
        for z in PROBE_LO..=PROBE_HI {
            prop_assert_eq!(u.member(z), a.member(z) || b.member(z));
            prop_assert_eq!(i.member(z), a.member(z) && b.member(z));
            prop_assert_eq!(d.member(z), a.member(z) && !b.member(z));
        }
        prop_assert_eq!(u, b.union(&a).unwrap());
        prop_assert_eq!(i, b.intersect(&a).unwrap());
    }

    #[test]
    fn difference_splits_a_set(a in arb_set(), b in arb_set()) {
        let outside = a.difference(&b).unwrap();
        let inside = a.intersect(&b).unwrap();
        prop_assert_eq!(outside.union(&inside).unwrap(), a.clone());
        prop_assert!(outside.intersect(&b).unwrap().is_empty());
    }

    #[test]
    fn translate_and_negate_are_isometries(a in arb_set(), k in -50i64..=50) {
        prop_assert_eq!(a.translate(k).translate(-k), a.clone());
        prop_assert_eq!(a.negate().negate(), a.clone());
        let t = a.translate(k);
        for z in PROBE_LO..=PROBE_HI {
            prop_assert_eq!(t.member(z), a.member(z - k));
            prop_assert_eq!(a.negate().member(z), a.member(-z));
        }
    }

    #[test]
    fn sumset_laws(a in arb_set(), b in arb_finite(), k in -30i64..=30) {
        let ab = a.sumset(&b).unwrap();
        prop_assert_eq!(&ab, &b.sumset(&a).unwrap());

        // identity and translation compatibility
        prop_assert_eq!(&a.sumset(&PeriodicSet::finite([0])).unwrap(), &a);
        prop_assert_eq!(
            a.sumset(&PeriodicSet::finite([k])).unwrap(),
            a.translate(k)
        );

        // the sum reflects through negation
        prop_assert_eq!(ab.negate(), a.negate().sumset(&b.negate()).unwrap());
    }

    #[test]
    fn sumset_distributes_over_union(a in arb_set(), b in arb_set(), c in arb_finite()) {
        let lhs = a.union(&b).unwrap().sumset(&c).unwrap();
        let rhs = a.sumset(&c).unwrap().union(&b.sumset(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ep_form_realizes_its_description(
        period in 1i64..=5,
        a_pick in vec(0i64..60, 1..4),
        g_raw in btree_set(0i64..40, 0..5),
    ) {
        // one representative per class for A, G kept off A's classes
        let mut a: Vec<i64> = Vec::new();
        for v in a_pick {
            if !a.iter().any(|&x| x.rem_euclid(period) == v.rem_euclid(period)) {
                a.push(v);
            }
        }
        let g: Vec<i64> = g_raw
            .into_iter()
            .filter(|&z| !a.iter().any(|&x| x.rem_euclid(period) == z.rem_euclid(period)))
            .collect();
        let f: Vec<i64> = a.iter().map(|&x| x - period).filter(|&x| x >= 0).collect();

        let form = EpForm::new(period, a.clone(), f.clone(), PeriodicSet::finite(g.iter().copied()))?;
        let set = form.to_set().unwrap();
        for z in PROBE_LO..=PROBE_HI {
            let expect = a.iter().any(|&x| z >= x && (z - x) % period == 0)
                || f.contains(&z)
                || g.contains(&z);
            prop_assert_eq!(set.member(z), expect, "z = {}", z);
        }
    }

    #[test]
    fn residue_set_ops_respect_membership(
        n in 1i64..=12,
        xs in vec(0i64..12, 0..8),
        ys in vec(0i64..12, 0..8),
    ) {
        let s = ResidueSet::from_values_mod(n, xs.iter().copied()).unwrap();
        let t = ResidueSet::from_values_mod(n, ys.iter().copied()).unwrap();
        let su = s.union(&t).unwrap();
        let si = s.intersect(&t).unwrap();
        let sum = s.sumset(&t).unwrap();
        for r in 0..n {
            prop_assert_eq!(su.contains(r), s.contains(r) || t.contains(r));
            prop_assert_eq!(si.contains(r), s.contains(r) && t.contains(r));
            prop_assert_eq!(s.complement().contains(r), !s.contains(r));
            let expect = (0..n).any(|x| s.contains(x) && t.contains((r - x).rem_euclid(n)));
            prop_assert_eq!(sum.contains(r), expect);
        }
    }
}
