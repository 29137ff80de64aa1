use knotted_tori::criteria::{Criteria, Finiteness};
use knotted_tori::fcs::{fcs_contains, fcs_line_witness, fcs_window, line_solutions};
use knotted_tori::rank::{RankContext, RankInterval};
use knotted_tori::{
    knotted_tori_infinite, knotted_tori_infinite_via_components, DefaultProvider, LatticePoint,
    LineEquation,
};
use proptest::prelude::*;

fn brute_witness(i: i64, j: i64, a: i64, b: i64, c: i64) -> Option<LatticePoint> {
    (1..=c)
        .flat_map(|x| (1..=c).map(move |y| LatticePoint::new(x, y)))
        .find(|p| a * p.x + b * p.y == c && fcs_contains(i, j, *p))
}

fn interval() -> impl Strategy<Value = RankInterval> {
    (0u64..20, prop::option::of(0u64..20))
        .prop_map(|(lo, extra)| RankInterval::new(lo, extra.map(|e| lo + e)).unwrap())
}

proptest! {
    #[test]
    fn members_are_positive(i in -10i64..40, j in -10i64..40, x in -5i64..40, y in -5i64..40) {
        let p = LatticePoint::new(x, y);
        if fcs_contains(i, j, p) {
            prop_assert!(p.is_positive());
        }
    }

    #[test]
    fn depends_only_on_parity(i in 1i64..40, j in 1i64..40, x in 1i64..60, y in 1i64..60) {
        let p = LatticePoint::new(x, y);
        prop_assert_eq!(fcs_contains(i, j, p), fcs_contains(i + 2, j, p));
        prop_assert_eq!(fcs_contains(i, j, p), fcs_contains(i, j + 4, p));
    }

    #[test]
    fn reflection(i in 1i64..40, j in 1i64..40, x in 1i64..60, y in 1i64..60) {
        prop_assert_eq!(
            fcs_contains(i, j, LatticePoint::new(x, y)),
            fcs_contains(j, i, LatticePoint::new(y, x))
        );
    }

    #[test]
    fn line_witness_matches_brute_force(
        i in 1i64..12, j in 1i64..12, a in 1i64..15, b in 1i64..15, c in 1i64..120,
    ) {
        let eq = LineEquation::new(a, b, c).unwrap();
        prop_assert_eq!(fcs_line_witness(i, j, &eq), brute_witness(i, j, a, b, c));
    }

    #[test]
    fn line_solutions_are_exact(a in 1i64..15, b in 1i64..15, c in 1i64..120) {
        let eq = LineEquation::new(a, b, c).unwrap();
        let sols = line_solutions(&eq);
        prop_assert!(sols.windows(2).all(|w| w[0].x < w[1].x));
        let brute: Vec<_> = (1..=c)
            .flat_map(|x| (1..=c).map(move |y| LatticePoint::new(x, y)))
            .filter(|p| eq.holds_at(*p))
            .collect();
        prop_assert_eq!(sols, brute);
    }

    #[test]
    fn window_is_filtered_box(i in 1i64..10, j in 1i64..10, xm in 1i64..20, ym in 1i64..20) {
        let w = fcs_window(i, j, xm, ym).unwrap();
        let brute: Vec<_> = (1..=xm)
            .flat_map(|x| (1..=ym).map(move |y| LatticePoint::new(x, y)))
            .filter(|p| fcs_contains(i, j, *p))
            .collect();
        prop_assert_eq!(w, brute);
    }

    #[test]
    fn interval_addition(a in interval(), b in interval(), c in interval()) {
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!(a + RankInterval::ZERO, a);
        prop_assert_eq!((a + b).lo(), a.lo() + b.lo());
    }

    #[test]
    fn intersection_is_included(a in interval(), b in interval()) {
        if let Some(c) = a.intersect(&b) {
            prop_assert!(a.includes(&c) && b.includes(&c));
        } else {
            prop_assert!(a.hi().is_some_and(|h| h < b.lo()) || b.hi().is_some_and(|h| h < a.lo()));
        }
    }

    #[test]
    fn tori_verdicts_agree(p in 1u32..12, q in 1u32..60, dm in 0u32..40) {
        let m = 2 * p + q + 3 + dm;
        let c = Criteria::standard();
        if c.in_tori_domain(p, q, m) {
            let direct = knotted_tori_infinite(p, q, m).unwrap();
            let via = knotted_tori_infinite_via_components(p, q, m).unwrap();
            prop_assert_eq!(direct.finiteness(), via.finiteness());
            let d = DefaultProvider::default();
            let detail = RankContext::new(&c, &d).tori_rank_detail(p, q, m).unwrap();
            match direct.finiteness() {
                Finiteness::Finite => prop_assert_eq!(detail.tightened, RankInterval::ZERO),
                Finiteness::Infinite => prop_assert!(detail.tightened.is_positive()),
            }
        } else {
            prop_assert!(knotted_tori_infinite(p, q, m).is_err());
        }
    }
}
