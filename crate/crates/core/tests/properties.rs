mod common;

use std::sync::Arc;

use common::ints;
use fibmod::closedform::{r_rational, s_value, term_via_roots, RootPair};
use fibmod::explore::{fibonacci_square, positions_determine};
use fibmod::genfun::{expand, gf, gf_variables, numerator_basis_polys, q_poly, verify_gf};
use fibmod::module::combine;
use fibmod::{Elem, FibSpec, ModuleElem, MultiSequence, Poly, RecurrenceType, Ring, Sequence1D};
use proptest::prelude::*;

fn poly_ring(ring: &Ring) -> Arc<fibmod::PolyRing> {
    match ring {
        Ring::Polynomial(p) => p.clone(),
        _ => unreachable!(),
    }
}

fn rings() -> Vec<Ring> {
    vec![
        Ring::Integer,
        Ring::Rational,
        Ring::integers_mod(12u32).unwrap(),
        Ring::integers_mod(1_000_000_007u64).unwrap(),
        Ring::product(Ring::Integer, Ring::integers_mod(6u32).unwrap()),
        Ring::polynomial(Ring::Integer, ["x", "y"]).unwrap(),
    ]
}

fn elem_of(ring: &Ring) -> BoxedStrategy<Elem> {
    match ring {
        Ring::Integer => (-1_000_000i64..1_000_000).prop_map(Elem::int).boxed(),
        Ring::Rational => (-500i64..500, 1i64..60).prop_map(|(n, d)| Elem::rational(n, d)).boxed(),
        Ring::IntegersMod(_) => {
            let r = ring.clone();
            (0i64..2_000_000_000).prop_map(move |x| r.from_i64(x)).boxed()
        }
        Ring::Product(l, r) => (elem_of(l), elem_of(r)).prop_map(|(a, b)| Elem::pair(a, b)).boxed(),
        Ring::Polynomial(pr) => {
            let pr = pr.clone();
            let base = elem_of(pr.base());
            prop::collection::vec((0u32..3, 0u32..3, base), 0..5)
                .prop_map(move |ts| {
                    Elem::Poly(Poly::from_terms(&pr, ts.into_iter().map(|(i, j, c)| (vec![i, j], c))).unwrap())
                })
                .boxed()
        }
    }
}

fn ring_and_elems(n: usize) -> impl Strategy<Value = (Ring, Vec<Elem>)> {
    prop::sample::select(rings()).prop_flat_map(move |r| {
        let elems = prop::collection::vec(elem_of(&r), n);
        (Just(r), elems)
    })
}

/// An integer or modular recurrence of order <= 4 with a random rank-one
/// initial window.
fn seq1d() -> impl Strategy<Value = Sequence1D> {
    (prop::bool::ANY, prop::collection::vec(-3i64..=3, 1..=4)).prop_flat_map(|(modular, coeffs)| {
        let ring = if modular { Ring::integers_mod(1_000_000_007u64).unwrap() } else { Ring::Integer };
        let d = coeffs.len();
        prop::collection::vec(-9i64..=9, d)
            .prop_map(move |init| Sequence1D::from_i64(&ring, &coeffs, &init).unwrap())
    })
}

fn multiseq(p: std::ops::RangeInclusive<usize>, max_d: usize) -> impl Strategy<Value = MultiSequence> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 1..=max_d), p).prop_flat_map(|axes| {
        let spec = FibSpec::new(axes.iter().map(|c| RecurrenceType::from_i64(&Ring::Integer, c)).collect()).unwrap();
        prop::collection::vec(-9i64..=9, spec.free_rank())
            .prop_map(move |data| MultiSequence::from_i64(spec.clone(), &data).unwrap())
    })
}

proptest! {
    #[test]
    fn ring_axioms((ring, xs) in ring_and_elems(3)) {
        let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(a + &ring.zero(), a.clone());
        prop_assert_eq!(a * &ring.one(), a.clone());
        prop_assert!((a - a).is_zero());
        prop_assert_eq!(a + &(-a), ring.zero());
        prop_assert!(ring.contains(&(a * b)));
    }

    #[test]
    fn inverses_multiply_to_one((ring, xs) in ring_and_elems(1)) {
        if let Some(y) = xs[0].try_invert() {
            prop_assert_eq!(&xs[0] * &y, ring.one());
        }
    }

    #[test]
    fn elements_round_trip_through_json((ring, xs) in ring_and_elems(1)) {
        prop_assert_eq!(ring.decode(&xs[0].to_json()).unwrap(), xs[0].clone());
    }

    #[test]
    fn product_ring_is_componentwise(a in -99i64..99, b in -99i64..99, c in 0i64..7, d in 0i64..7) {
        let m7 = Ring::integers_mod(7u32).unwrap();
        let x = Elem::pair(Elem::int(a), m7.from_i64(c));
        let y = Elem::pair(Elem::int(b), m7.from_i64(d));
        prop_assert_eq!(&x * &y, Elem::pair(Elem::int(a * b), m7.from_i64(c * d)));
        prop_assert_eq!(&x + &y, Elem::pair(Elem::int(a + b), m7.from_i64(c + d)));
    }

    #[test]
    fn polynomial_eval_is_a_homomorphism(
        (ring, ps) in (Just(Ring::polynomial(Ring::Integer, ["x", "y"]).unwrap()))
            .prop_flat_map(|r| { let e = elem_of(&r); (Just(r), prop::collection::vec(e, 2)) }),
        u in -5i64..5, v in -5i64..5,
    ) {
        let _ = ring;
        let (Elem::Poly(p), Elem::Poly(q)) = (&ps[0], &ps[1]) else { unreachable!() };
        let at = [Elem::int(u), Elem::int(v)];
        let (pv, qv) = (p.eval(&at).unwrap(), q.eval(&at).unwrap());
        prop_assert_eq!(p.add(q).eval(&at).unwrap(), &pv + &qv);
        prop_assert_eq!(p.mul(q).eval(&at).unwrap(), &pv * &qv);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fast_terms_match_iteration(seq in seq1d(), n in 0usize..=2000) {
        prop_assert_eq!(seq.term_fast(n as u64), seq.term(n));
    }

    #[test]
    fn terms_decompose_over_the_basis(seq in seq1d(), n in 0u64..=200) {
        let coeffs = seq.recurrence().basis_values(n);
        prop_assert_eq!(combine(&coeffs, seq.initial()), seq.term(n as usize));
        for (i, c) in coeffs.iter().enumerate() {
            prop_assert_eq!(&seq.recurrence().basis_value(i, n).unwrap(), c);
        }
    }

    #[test]
    fn reconstruct_inverts_decompose(seq in seq1d()) {
        let back = Sequence1D::reconstruct(seq.recurrence(), seq.decompose()).unwrap();
        prop_assert_eq!(back.terms(0, 51), seq.terms(0, 51));
    }

    #[test]
    fn terms_are_linear(seq in seq1d(), other in prop::collection::vec(-9i64..=9, 4), shift in 0usize..20) {
        let d = seq.order();
        let ring = seq.ring().clone();
        let y = Sequence1D::scalar(seq.recurrence().clone(), ints(&ring, &other[..d])).unwrap();
        let sum = seq.add(&y).unwrap();
        for n in 0..40 {
            prop_assert_eq!(sum.term(n), seq.term(n).add(&y.term(n)));
            prop_assert_eq!(seq.shift(shift).term(n), seq.term(n + shift));
        }
    }

    #[test]
    fn backward_extension_runs_forward_again(
        coeffs in prop::collection::vec(-3i64..=3, 1..=3),
        last in prop::sample::select(vec![-1i64, 1]),
        init in prop::collection::vec(-9i64..=9, 4),
        extra in 0usize..8,
    ) {
        let mut coeffs = coeffs;
        coeffs.push(last);
        let d = coeffs.len();
        let seq = Sequence1D::from_i64(&Ring::Integer, &coeffs, &init[..d]).unwrap();
        let k = d + extra;
        let back = seq.extend_backward(k).unwrap();
        let start: Vec<ModuleElem> = (0..d).map(|i| back[k - 1 - i].clone()).collect();
        let forward = Sequence1D::new(seq.recurrence().clone(), start).unwrap();
        for i in 0..d + 5 {
            prop_assert_eq!(forward.term(k + i), seq.term(i));
        }
    }

    #[test]
    fn symbolic_basis_specializes(a in -4i64..=4, b in -4i64..=4, n in 0u64..25, i in 0usize..2) {
        let ring = Ring::polynomial(Ring::Integer, ["T", "U"]).unwrap();
        let pr = poly_ring(&ring);
        let rec = RecurrenceType::new(ring, vec![Elem::Poly(Poly::var(&pr, 0)), Elem::Poly(Poly::var(&pr, 1))]).unwrap();
        let Elem::Poly(p) = rec.basis_value(i, n).unwrap() else { unreachable!() };
        let direct = RecurrenceType::from_i64(&Ring::Integer, &[a, b]).basis_value(i, n).unwrap();
        prop_assert_eq!(p.eval(&[Elem::int(a), Elem::int(b)]).unwrap(), direct);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multi_fast_terms_match(m in multiseq(1..=3, 3), idx in prop::collection::vec(0usize..=14, 3)) {
        let idx = &idx[..m.dims()];
        let fast: Vec<u64> = idx.iter().map(|&i| i as u64).collect();
        prop_assert_eq!(m.term_fast(&fast), m.term(idx));
    }

    #[test]
    fn reduction_order_is_irrelevant(m in multiseq(3..=3, 3), idx in prop::collection::vec(0usize..=10, 3)) {
        let base = m.term(&idx);
        for order in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1]] {
            prop_assert_eq!(m.term_in_order(&idx, &order), base.clone());
        }
    }

    #[test]
    fn axis_shifts_translate(m in multiseq(2..=2, 3), axis in 0usize..2, count in 0usize..6) {
        let s = m.shift_axis(axis, count).unwrap();
        for n in 0..6 {
            for k in 0..6 {
                let mut idx = [n, k];
                idx[axis] += count;
                prop_assert_eq!(s.term(&[n, k]), m.term(&idx));
            }
        }
    }

    #[test]
    fn generating_functions_expand_to_terms(m in multiseq(1..=3, 3)) {
        let orders = vec![6; m.dims()];
        prop_assert_eq!(verify_gf(&m, &orders), Ok(true));
        let g = gf(&m).unwrap();
        let back = expand(&g, &orders).unwrap().times_denominators(&g);
        for (idx, c) in back.coeffs().iter() {
            let e: Vec<u32> = idx.iter().map(|&x| x as u32).collect();
            prop_assert_eq!(c.clone(), g.numerator().coeff(&e));
        }
    }

    #[test]
    fn numerator_is_linear_in_the_block(m in multiseq(2..=2, 3), c in -4i64..=4) {
        let scaled = m.scale(&Elem::int(c)).unwrap();
        let sum = m.add(&scaled).unwrap();
        let (g, gs, gsum) = (gf(&m).unwrap(), gf(&scaled).unwrap(), gf(&sum).unwrap());
        prop_assert_eq!(gsum.numerator().clone(), g.numerator().add(gs.numerator()));
        prop_assert_eq!(gsum.denominators(), g.denominators());
    }

    #[test]
    fn order_two_numerator_matches_direct_form(a in -5i64..=5, b in -5i64..=5, x0 in -9i64..=9, x1 in -9i64..=9) {
        // (1 - a t) x0 + t x1 against sum_i Q_i x_i
        let rec = RecurrenceType::from_i64(&Ring::Integer, &[a, b]);
        let v = &gf_variables(1)[0];
        let qs = numerator_basis_polys(&rec, v);
        let summed = qs[0].scale(&Elem::int(x0)).add(&qs[1].scale(&Elem::int(x1)));
        let pr = qs[0].ring().clone();
        let direct = Poly::from_terms(&pr, [(vec![0], Elem::int(x0)), (vec![1], Elem::int(x1 - a * x0))]).unwrap();
        prop_assert_eq!(summed, direct);
        let q = q_poly(&rec, v);
        prop_assert_eq!(q.coeff(&[0]), Elem::int(1));
    }

    #[test]
    fn delta_times_rational_form_is_s(r1 in -4i64..=4, r2 in -4i64..=4, n in -8i64..=20, i in 0usize..2) {
        let q = RootPair::from_i64(&Ring::Rational, r1, r2);
        if let Ok(r) = r_rational(i, n, &q) {
            prop_assert_eq!(&q.delta() * &r, s_value(i, n, &q).unwrap());
        }
    }

    #[test]
    fn negative_indices_match_backward_extension(
        r1 in prop::sample::select(vec![-2i64, -1, 1, 2, 3]),
        r2 in prop::sample::select(vec![-3i64, -1, 1, 2, 5]),
        init in prop::collection::vec(-5i64..=5, 2),
        k in 1usize..=10,
    ) {
        prop_assume!(r1 != r2);
        let q = RootPair::from_i64(&Ring::Rational, r1, r2);
        let seq = Sequence1D::scalar(q.recurrence(), ints(&Ring::Rational, &init)).unwrap();
        let back = seq.extend_backward(k).unwrap();
        let m = MultiSequence::from_sequence(&seq);
        prop_assert_eq!(term_via_roots(&m, &q, &[-(k as i64)], false).unwrap(), back[k - 1].clone());
    }

    #[test]
    fn determining_is_permutation_invariant(
        pos in prop::collection::btree_set((0usize..5, 0usize..5), 4),
        perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
    ) {
        let pos: Vec<Vec<usize>> = pos.into_iter().map(|(a, b)| vec![a, b]).collect();
        let shuffled: Vec<Vec<usize>> = perm.iter().map(|&i| pos[i].clone()).collect();
        let spec = fibonacci_square();
        prop_assert_eq!(positions_determine(&spec, &pos), positions_determine(&spec, &shuffled));
    }
}

#[test]
fn memo_is_invisible_under_concurrency() {
    let spec = FibSpec::new(vec![
        RecurrenceType::from_i64(&Ring::Integer, &[1, 1]),
        RecurrenceType::from_i64(&Ring::Integer, &[2, -1, 3]),
    ])
    .unwrap();
    let m = Arc::new(MultiSequence::from_i64(spec.clone(), &[1, -2, 0, 3, 5, -1]).unwrap());
    let handles: Vec<_> = (0..4)
        .map(|t| {
            let m = Arc::clone(&m);
            std::thread::spawn(move || {
                let mut out = Vec::new();
                for n in 0..30 {
                    for k in 0..30 {
                        let idx = if t % 2 == 0 { [n, k] } else { [29 - n, 29 - k] };
                        out.push((idx, m.term(&idx)));
                    }
                }
                out
            })
        })
        .collect();
    let fresh = MultiSequence::from_i64(spec, &[1, -2, 0, 3, 5, -1]).unwrap();
    for h in handles {
        for (idx, v) in h.join().unwrap() {
            assert_eq!(v, fresh.term_in_order(&idx, &[0, 1]));
        }
    }
}
