//! Exhaustive cross-module sweeps at desk scale.
//!
//! Everything in here is a finite quantifier chase: small quantales,
//! point sets of at most three points, full enumeration of `Q^X` where it
//! matters. The point is to pin the interplay between modules (orders vs.
//! cotopologies, closure vs. inclusion degree, duality vs. sobriety) with
//! no sampling and no tolerance.

use std::sync::Arc;

use qsober_core::cotopology::{self, Cotopology, Mode, DEFAULT_COTOPOLOGY_CAP};
use qsober_core::duality::{self, CrispTopology, TopMode};
use qsober_core::fuzzy::{self, FuzzySet, PointMap, PointSet, DEFAULT_ENUM_CAP};
use qsober_core::qorder::{self, QOrder};
use qsober_core::sobriety;
use qsober_core::{Quantale, StandardKind};

fn small_quantales() -> Vec<Quantale> {
    let mut out = vec![Quantale::standard(StandardKind::Boolean4, 0).unwrap()];
    for kind in [StandardKind::Godel, StandardKind::Lukasiewicz, StandardKind::NilpotentMin] {
        for n in 2..=4 {
            out.push(Quantale::standard(kind, n).unwrap());
        }
    }
    out
}

fn points(names: &[&str]) -> Arc<PointSet> {
    PointSet::new(names.iter().map(|s| s.to_string()).collect()).unwrap()
}

/// All maps from `src` to `dst`, in lexicographic order.
fn all_maps(src: &Arc<PointSet>, dst: &Arc<PointSet>) -> Vec<PointMap> {
    let mut out = Vec::new();
    let n = src.len();
    let m = dst.len();
    if m == 0 {
        if n == 0 {
            out.push(PointMap::new(src, dst, vec![]).unwrap());
        }
        return out;
    }
    let total = m.pow(n as u32);
    for mut code in 0..total {
        let mut entries = Vec::with_capacity(n);
        for _ in 0..n {
            entries.push(code % m);
            code /= m;
        }
        out.push(PointMap::new(src, dst, entries).unwrap());
    }
    out
}

#[test]
fn residuation_distributes_over_joins_and_meets_of_subsets() {
    // (⋁S)→q = ⋀{s→q : s ∈ S} and p→(⋀S) = ⋀{p→s : s ∈ S}, for every
    // subset S of every stock quantale with |Q| ≤ 6.
    let mut quantales = small_quantales();
    for kind in [StandardKind::Godel, StandardKind::Lukasiewicz, StandardKind::NilpotentMin] {
        quantales.push(Quantale::standard(kind, 5).unwrap());
        quantales.push(Quantale::standard(kind, 6).unwrap());
    }
    for q in &quantales {
        for mask in 0u32..(1 << q.size()) {
            let s: Vec<usize> = q.elements().filter(|&p| mask & (1 << p) != 0).collect();
            let join_s = q.join_all(s.iter().copied());
            let meet_s = q.meet_all(s.iter().copied());
            for p in q.elements() {
                assert_eq!(q.res(join_s, p), q.meet_all(s.iter().map(|&e| q.res(e, p))));
                assert_eq!(q.res(p, meet_s), q.meet_all(s.iter().map(|&e| q.res(p, e))));
            }
        }
    }
}

#[test]
fn sub_is_a_quantale_valued_order_on_fuzzy_sets() {
    for q in &small_quantales() {
        let xs = points(&["x", "y"]);
        let all = fuzzy::enumerate(q, &xs, DEFAULT_ENUM_CAP).unwrap();
        for a in &all {
            assert_eq!(fuzzy::sub(q, a, a).unwrap(), q.top());
            for b in &all {
                // A ≤ B pointwise exactly when the inclusion degree is 1.
                assert_eq!(a.leq(b, q).unwrap(), fuzzy::sub(q, a, b).unwrap() == q.top());
                for c in &all {
                    let lhs = q.tensor(fuzzy::sub(q, b, c).unwrap(), fuzzy::sub(q, a, b).unwrap());
                    assert!(q.leq(lhs, fuzzy::sub(q, a, c).unwrap()));
                }
            }
        }
    }
}

#[test]
fn images_and_preimages_are_adjoint_and_monotone() {
    // sub(f→A, B) = sub(A, f←B) for every map between spaces of at most
    // two points, plus monotonicity of both constructions in sub.
    for q in &small_quantales() {
        for nx in 1..=2usize {
            for ny in 1..=2usize {
                let xs = points(&["x", "y"][..nx]);
                let ys = points(&["u", "v"][..ny]);
                let from_x = fuzzy::enumerate(q, &xs, DEFAULT_ENUM_CAP).unwrap();
                let from_y = fuzzy::enumerate(q, &ys, DEFAULT_ENUM_CAP).unwrap();
                for f in all_maps(&xs, &ys) {
                    for a in &from_x {
                        let fa = fuzzy::image(q, &f, a).unwrap();
                        for b in &from_y {
                            assert_eq!(
                                fuzzy::sub(q, &fa, b).unwrap(),
                                fuzzy::sub(q, a, &fuzzy::preimage(&f, b).unwrap()).unwrap(),
                            );
                        }
                        for a2 in &from_x {
                            let fa2 = fuzzy::image(q, &f, a2).unwrap();
                            assert!(q.leq(
                                fuzzy::sub(q, a, a2).unwrap(),
                                fuzzy::sub(q, &fa, &fa2).unwrap()
                            ));
                        }
                    }
                    for b in &from_y {
                        let pb = fuzzy::preimage(&f, b).unwrap();
                        for b2 in &from_y {
                            let pb2 = fuzzy::preimage(&f, b2).unwrap();
                            assert!(q.leq(
                                fuzzy::sub(q, b, b2).unwrap(),
                                fuzzy::sub(q, &pb, &pb2).unwrap()
                            ));
                        }
                    }
                }
            }
        }
    }
}

/// Every valid Q-order on a two-point space: the diagonal is forced to 1,
/// the two off-diagonal degrees range over all transitive combinations.
fn all_two_point_orders(q: &Quantale, xs: &Arc<PointSet>) -> Vec<QOrder> {
    let mut out = Vec::new();
    for a in q.elements() {
        for b in q.elements() {
            let rel = vec![vec![q.top(), a], vec![b, q.top()]];
            if let Ok(r) = QOrder::new(xs, rel, q) {
                out.push(r);
            }
        }
    }
    out
}

#[test]
fn lower_sets_are_the_order_preserving_maps_into_the_left_carrier_order() {
    // φ is a lower set of R ⟺ φ : (X, R)^op → (Q, d_L) is
    // order-preserving.
    for q in &small_quantales() {
        let xs = points(&["x", "y"]);
        let dl = QOrder::d_left(q);
        for r in all_two_point_orders(q, &xs) {
            let op = r.opposite();
            for phi in fuzzy::enumerate(q, &xs, DEFAULT_ENUM_CAP).unwrap() {
                // Seen as a point map into the carrier, φ(x) is an index.
                let as_map = PointMap::new(&xs, dl.space(), phi.values().to_vec()).unwrap();
                assert_eq!(
                    r.is_lower_set(q, &phi).unwrap(),
                    qorder::order_preserving(q, &as_map, &op, &dl).unwrap(),
                );
            }
        }
    }
}

#[test]
fn irreducible_lower_sets_match_irreducible_closed_sets_of_alexandroff() {
    for q in &small_quantales() {
        let xs = points(&["x", "y"]);
        for r in all_two_point_orders(q, &xs) {
            let gamma = r.alexandroff(q, DEFAULT_ENUM_CAP).unwrap();
            assert_eq!(gamma.mode(), Mode::Strong);
            for phi in r.lower_sets(q, DEFAULT_ENUM_CAP).unwrap() {
                assert_eq!(
                    r.is_irreducible_lower_set(q, &phi, DEFAULT_ENUM_CAP).unwrap(),
                    sobriety::is_irreducible_closed(q, &gamma, &phi).unwrap(),
                );
            }
        }
    }
}

#[test]
fn specialization_of_alexandroff_recovers_the_order() {
    // The lower-set condition gives R(x,y) ≤ Ω(Γ(R))(x,y) for free; the
    // representable R(−,y) is itself a lower set and forces equality.
    // Equality is therefore asserted, not just refinement.
    for q in &small_quantales() {
        let xs = points(&["x", "y"]);
        for r in all_two_point_orders(q, &xs) {
            let omega = r.alexandroff(q, DEFAULT_ENUM_CAP).unwrap().specialization(q);
            for x in 0..2 {
                for y in 0..2 {
                    assert!(q.leq(r.value(x, y), omega.value(x, y)));
                    assert_eq!(omega.value(x, y), r.value(x, y));
                }
            }
        }
    }
}

/// A fixed bundle of generated spaces for the closure sweeps: for each
/// quantale, a few subbases on two points across all modes.
fn generated_spaces(q: &Quantale) -> Vec<Cotopology> {
    let xs = points(&["x", "y"]);
    let mut out = vec![
        Cotopology::indiscrete(q, &xs),
        Cotopology::discrete(q, &xs, DEFAULT_ENUM_CAP).unwrap(),
    ];
    let tops = q.top();
    let mid = q.size() / 2;
    let seeds = [
        vec![FuzzySet::new(&xs, vec![tops, q.bottom()], q).unwrap()],
        vec![FuzzySet::new(&xs, vec![mid, q.bottom()], q).unwrap()],
        vec![
            FuzzySet::new(&xs, vec![mid, tops], q).unwrap(),
            FuzzySet::new(&xs, vec![tops, q.bottom()], q).unwrap(),
        ],
    ];
    for subbasis in &seeds {
        for mode in [Mode::Plain, Mode::Stratified, Mode::Costratified, Mode::Strong] {
            out.push(
                Cotopology::generate(q, &xs, subbasis, mode, DEFAULT_COTOPOLOGY_CAP).unwrap(),
            );
        }
    }
    out
}

#[test]
fn closure_laws_hold_on_generated_spaces() {
    for q in &small_quantales() {
        for tau in generated_spaces(q) {
            let all = fuzzy::enumerate(q, tau.space(), DEFAULT_ENUM_CAP).unwrap();
            for a in &all {
                let cl = tau.closure(q, a).unwrap();
                // cl2: extensive; cl4: idempotent on this element.
                assert!(a.leq(&cl, q).unwrap());
                assert_eq!(tau.closure(q, &cl).unwrap(), cl);
                // cl1 on constants is covered below; cl3: join-homomorphism.
                for b in &all {
                    let clb = tau.closure(q, b).unwrap();
                    let join = fuzzy::join(q, a, b).unwrap();
                    assert_eq!(
                        tau.closure(q, &join).unwrap(),
                        fuzzy::join(q, &cl, &clb).unwrap()
                    );
                }
            }
            for p in q.elements() {
                let c = FuzzySet::constant(tau.space(), p);
                assert_eq!(tau.closure(q, &c).unwrap(), c);
            }
        }
    }
}

#[test]
fn stratification_is_equivalent_to_closure_preserving_sub() {
    // On stratified spaces: p & Ā ≤ closure(p & A) and
    // sub(A,B) ≤ sub(Ā,B̄). Conversely, a space whose closure preserves
    // sub must already satisfy the stratification axiom.
    for q in &small_quantales() {
        for tau in generated_spaces(q) {
            let all = fuzzy::enumerate(q, tau.space(), DEFAULT_ENUM_CAP).unwrap();
            let stratified = tau.is_stratified(q);
            let mut preserves_sub = true;
            for a in &all {
                let cl = tau.closure(q, a).unwrap();
                for b in &all {
                    let clb = tau.closure(q, b).unwrap();
                    if !q.leq(fuzzy::sub(q, a, b).unwrap(), fuzzy::sub(q, &cl, &clb).unwrap()) {
                        preserves_sub = false;
                    }
                }
                if stratified {
                    for p in q.elements() {
                        let scaled_cl = fuzzy::tensor_scale(q, p, &cl);
                        let cl_scaled =
                            tau.closure(q, &fuzzy::tensor_scale(q, p, a)).unwrap();
                        assert!(scaled_cl.leq(&cl_scaled, q).unwrap());
                    }
                }
            }
            assert_eq!(preserves_sub, stratified);
        }
    }
}

#[test]
fn closed_sets_support_sub_against_their_closure() {
    // On stratified spaces: sub(A, B) = sub(Ā, B) whenever B is closed
    // (the closure is the best closed approximation from above — this
    // direction is equivalent to stratification, so it is gated), and
    // sub(closure(1_x), A) = A(x) for closed A.
    for q in &small_quantales() {
        for tau in generated_spaces(q) {
            if !tau.is_stratified(q) {
                continue;
            }
            let all = fuzzy::enumerate(q, tau.space(), DEFAULT_ENUM_CAP).unwrap();
            for a in &all {
                let cl = tau.closure(q, a).unwrap();
                for b in tau.closed() {
                    assert_eq!(fuzzy::sub(q, a, b).unwrap(), fuzzy::sub(q, &cl, b).unwrap());
                }
            }
            {
                for x in 0..tau.space().len() {
                    let one_x = FuzzySet::singleton(tau.space(), x, q);
                    let cl = tau.closure(q, &one_x).unwrap();
                    for a in tau.closed() {
                        assert_eq!(fuzzy::sub(q, &cl, a).unwrap(), a.value(x));
                    }
                }
            }
        }
    }
}

#[test]
fn continuity_transfers_to_the_specialization_orders() {
    for q in &small_quantales() {
        let xs = points(&["x", "y"]);
        let seeds = [
            Cotopology::indiscrete(q, &xs),
            Cotopology::generate(
                q,
                &xs,
                &[FuzzySet::new(&xs, vec![q.top(), q.bottom()], q).unwrap()],
                Mode::Stratified,
                DEFAULT_COTOPOLOGY_CAP,
            )
            .unwrap(),
            Cotopology::discrete(q, &xs, DEFAULT_ENUM_CAP).unwrap(),
        ];
        for src in &seeds {
            for dst in &seeds {
                let ox = src.specialization(q);
                let oy = dst.specialization(q);
                for f in all_maps(&xs, &xs) {
                    if cotopology::is_continuous(&f, src, dst).unwrap() {
                        assert!(qorder::order_preserving(q, &f, &ox, &oy).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn irreducible_closed_sets_are_irreducible_lower_sets_of_the_specialization() {
    for q in &small_quantales() {
        for tau in generated_spaces(q) {
            if !tau.is_stratified(q) {
                continue;
            }
            let omega = tau.specialization(q);
            for f in sobriety::irreducible_closed_sets(q, &tau) {
                assert!(omega.is_lower_set(q, &f).unwrap());
                assert!(omega.is_irreducible_lower_set(q, &f, DEFAULT_ENUM_CAP).unwrap());
            }
        }
    }
}

#[test]
fn sobrification_reports_are_sober_across_generated_spaces() {
    for q in &small_quantales() {
        for tau in generated_spaces(q) {
            if !tau.is_stratified(q) {
                continue;
            }
            let sob = sobriety::sobrify(q, &tau).unwrap();
            assert!(sobriety::is_sober(q, &sob.space).is_sober());
            sobriety::verify_sobrification_lemma(q, &tau, &sob).unwrap();
            assert!(cotopology::is_continuous(&sob.eta, &tau, &sob.space).unwrap());
        }
    }
}

#[test]
fn negation_identities_and_involution_on_double_negation_quantales() {
    // sub(A,B) = sub(¬B,¬A) and ⋁(A & B) = ¬ sub(A, ¬B); negation swaps
    // validated topologies and cotopologies and is involutive.
    for q in &small_quantales() {
        if q.double_negation_witness().is_some() {
            continue;
        }
        let xs = points(&["x", "y"]);
        let all = fuzzy::enumerate(q, &xs, DEFAULT_ENUM_CAP).unwrap();
        for a in &all {
            assert_eq!(fuzzy::neg(q, &fuzzy::neg(q, a)), *a);
            for b in &all {
                assert_eq!(
                    fuzzy::sub(q, a, b).unwrap(),
                    fuzzy::sub(q, &fuzzy::neg(q, b), &fuzzy::neg(q, a)).unwrap(),
                );
                let sup = q.join_all(
                    a.values().iter().zip(b.values()).map(|(&u, &v)| q.tensor(u, v)),
                );
                assert_eq!(sup, q.neg(fuzzy::sub(q, a, &fuzzy::neg(q, b)).unwrap()));
            }
        }
        for tau in generated_spaces(q) {
            let topo = duality::negate_cotopology(q, &tau).unwrap();
            assert_eq!(topo.mode() == TopMode::Stratified, tau.is_stratified(q));
            let back = duality::negate_topology(q, &topo).unwrap();
            assert_eq!(back.closed(), tau.closed());
        }
    }
}

#[test]
fn scale_spaces_validate_and_embed_crisp_closures() {
    // ω_Q(X) is a stratified cotopology; 1_K is closed for every crisp
    // closed K and its scale closure is itself; the scale closure of a
    // crisp singleton matches the crisp closure.
    let quantales = [
        Quantale::standard(StandardKind::Godel, 3).unwrap(),
        Quantale::standard(StandardKind::Lukasiewicz, 3).unwrap(),
        Quantale::standard(StandardKind::Boolean4, 0).unwrap(),
    ];
    let xs = points(&["x", "y"]);
    for q in &quantales {
        for t in duality::all_crisp_topologies(&xs).unwrap() {
            let w = duality::lowen(q, &t, DEFAULT_ENUM_CAP).unwrap();
            assert!(w.is_stratified(q));
            for &k in t.closed_masks() {
                let one_k = FuzzySet::new(
                    &xs,
                    (0..xs.len())
                        .map(|x| if k & (1 << x) != 0 { q.top() } else { q.bottom() })
                        .collect(),
                    q,
                )
                .unwrap();
                assert!(w.contains(&one_k));
                assert_eq!(w.closure(q, &one_k).unwrap(), one_k);
            }
            for x in 0..xs.len() {
                let crisp_cl = t.closure(1 << x);
                let scale_cl = w.closure(q, &FuzzySet::singleton(&xs, x, q)).unwrap();
                for y in 0..xs.len() {
                    let expected = if crisp_cl & (1 << y) != 0 { q.top() } else { q.bottom() };
                    assert_eq!(scale_cl.value(y), expected);
                }
            }
        }
    }
}

#[test]
fn frame_points_biject_with_irreducibles_and_agree_on_sobriety() {
    // Over double-negation quantales the frame maps of ¬τ are exactly the
    // f_F of irreducible closed F, recovery is inverse to f_(−), and the
    // two sober notions agree. Brute-force assignment enumeration
    // cross-checks the bijection where it is affordable.
    let quantales = [
        Quantale::standard(StandardKind::Godel, 2).unwrap(),
        Quantale::standard(StandardKind::Lukasiewicz, 3).unwrap(),
        Quantale::standard(StandardKind::NilpotentMin, 4).unwrap(),
        Quantale::standard(StandardKind::Boolean4, 0).unwrap(),
    ];
    for q in &quantales {
        for tau in generated_spaces(q) {
            if !tau.is_stratified(q) {
                continue;
            }
            let topo = duality::negate_cotopology(q, &tau).unwrap();
            let frs = duality::fr_points(q, &topo).unwrap();
            let irr = sobriety::irreducible_closed_sets(q, &tau);
            assert_eq!(frs.len(), irr.len());
            for (fp, f) in frs.iter().zip(&irr) {
                assert_eq!(&fp.irreducible, f);
                assert!(duality::is_fr_map(q, &topo, &fp.map));
                assert_eq!(duality::fr_recover(q, &topo, &fp.map), *f);
            }
            if q.size().checked_pow(topo.len() as u32).is_some_and(|t| t <= 4096) {
                let mut brute = duality::fr_maps_brute(q, &topo, 4096).unwrap();
                brute.sort();
                let mut maps: Vec<_> = frs.iter().map(|fp| fp.map.clone()).collect();
                maps.sort();
                assert_eq!(maps, brute);
            }
            assert_eq!(
                duality::is_sober_topological(q, &topo).unwrap(),
                sobriety::is_sober(q, &tau).is_sober(),
            );
        }
    }
}

#[test]
fn point_evaluations_are_frame_maps() {
    let q = Quantale::standard(StandardKind::Boolean4, 0).unwrap();
    let xs = points(&["x", "y"]);
    let tau = Cotopology::discrete(&q, &xs, DEFAULT_ENUM_CAP).unwrap();
    let topo = duality::negate_cotopology(&q, &tau).unwrap();
    for x in 0..xs.len() {
        assert!(duality::is_fr_map(&q, &topo, &duality::point_evaluation(&topo, x)));
    }
}

#[test]
fn hausdorff_products_close_the_diagonal_only_when_expected() {
    // Chains: the discrete space is Hausdorff, the indiscrete one (with
    // ≥ 2 points) is not; the diamond's discrete space is Hausdorff too
    // (the counterexample needs Hausdorff to hold there).
    for q in &small_quantales() {
        let xs = points(&["x", "y"]);
        let disc = Cotopology::discrete(q, &xs, DEFAULT_ENUM_CAP).unwrap();
        assert!(disc.is_hausdorff(q, DEFAULT_ENUM_CAP).unwrap());
        let indisc = Cotopology::indiscrete(q, &xs);
        assert!(!indisc.is_hausdorff(q, DEFAULT_ENUM_CAP).unwrap());
    }
}

#[test]
fn sierpinski_scale_space_matches_the_direct_description() {
    // Over the Gödel 3-chain, the upper semicontinuous maps on the
    // Sierpiński space (closed point y) are exactly those with
    // λ(x) ≤ λ(y).
    let q = Quantale::standard(StandardKind::Godel, 3).unwrap();
    let xs = points(&["x", "y"]);
    let t = CrispTopology::new(&xs, vec![0b00, 0b10, 0b11]).unwrap();
    let w = duality::lowen(&q, &t, DEFAULT_ENUM_CAP).unwrap();
    let direct: Vec<FuzzySet> = fuzzy::enumerate(&q, &xs, DEFAULT_ENUM_CAP)
        .unwrap()
        .into_iter()
        .filter(|lam| q.leq(lam.value(0), lam.value(1)))
        .collect();
    assert_eq!(w.closed(), &direct[..]);
}
