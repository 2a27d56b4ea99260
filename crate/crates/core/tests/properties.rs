//! Randomized and enumerative property suites: exact Smith form contract,
//! simplicial identities under arbitrary operator words, epi-mono
//! factorization, limit universal properties, and the hom-count adjunctions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use segal_core::build::{boundary, circle, delta, point};
use segal_core::cosk::cosk;
use segal_core::group::{FiniteGroup, SimplicialGroup};
use segal_core::gspace::bar_group;
use segal_core::homology::euler_from_homology;
use segal_core::homs::{elem_to_map, hom_set};
use segal_core::limits::{into_limit, product, projection, pullback};
use segal_core::pi::{abelianization, hom_count, pi1_presentation};
use segal_core::simplex::{degenerate, Gen, Monotone};
use segal_core::smap::SimplicialMap;
use segal_core::snf::{determinant, from_i64, mat_mul, smith_normal_form, zeros};
use segal_core::space::{c_star, d_star, diagonal, SimplicialSpace};
use segal_core::sset::SimplicialSet;
use segal_core::verdict::Verdict;
use segal_core::weq::weak_equivalence_verdict;

const BUDGET: usize = 1 << 22;

fn wbar_z2(truncation: usize) -> SimplicialSet {
    segal_core::group::wbar(&SimplicialGroup::constant(&FiniteGroup::cyclic(2), truncation), BUDGET)
        .unwrap()
        .sset
}

fn fixtures() -> Vec<SimplicialSet> {
    vec![
        delta(2, 3).unwrap(),
        boundary(3, 3).unwrap(),
        circle(3).unwrap(),
        wbar_z2(3),
    ]
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=7, 1usize..=7).prop_flat_map(|(rows, cols)| {
        prop::collection::vec(prop::collection::vec(-30i64..=30, cols), rows)
    })
}

proptest! {
    #[test]
    fn smith_form_diagonalizes_with_unimodular_transforms(raw in matrix_strategy()) {
        let m = from_i64(&raw);
        let f = smith_normal_form(&m);
        let mut expected = zeros(f.rows, f.cols);
        for (i, d) in f.diag.iter().enumerate() {
            expected[i][i] = d.clone();
        }
        prop_assert_eq!(mat_mul(&mat_mul(&f.u, &m), &f.v), expected);
        prop_assert!(f.diag.iter().all(|d| d.is_positive()));
        prop_assert!(f.diag.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        prop_assert_eq!(determinant(&f.u).abs(), BigInt::one());
        prop_assert_eq!(determinant(&f.v).abs(), BigInt::one());
    }
}

fn monotone_into(target: usize) -> impl Strategy<Value = Monotone> {
    prop::collection::vec(0..=target, 1..=6).prop_map(move |mut v| {
        v.sort_unstable();
        Monotone::new(v, target)
    })
}

proptest! {
    #[test]
    fn factorization_recomposes_to_the_same_operator(op in (0usize..=5).prop_flat_map(monotone_into)) {
        let (missed, word) = op.factorize();
        prop_assert!(missed.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(word.windows(2).all(|w| w[0] > w[1]));
        let mut rebuilt = Monotone::identity(op.target);
        for &a in missed.iter().rev() {
            rebuilt = rebuilt.compose(&Monotone::coface(rebuilt.source_dim(), a));
        }
        for &j in word.iter().rev() {
            rebuilt = rebuilt.compose(&Monotone::codegeneracy(rebuilt.source_dim(), j));
        }
        prop_assert_eq!(rebuilt, op);
    }

    #[test]
    fn operator_composition_is_associative(
        (h, g, f) in (0usize..=4).prop_flat_map(monotone_into).prop_flat_map(|h| {
            monotone_into(h.source_dim()).prop_flat_map(move |g| {
                let h = h.clone();
                monotone_into(g.source_dim()).prop_map(move |f| (h.clone(), g.clone(), f))
            })
        })
    ) {
        prop_assert_eq!(h.compose(&g).compose(&f), h.compose(&g.compose(&f)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]
    #[test]
    fn operator_words_evaluate_the_same_stepwise_and_composed(
        which in 0usize..4,
        m_raw in 0usize..16,
        start_raw in 0usize..1024,
        word in prop::collection::vec((any::<bool>(), 0usize..8), 1..=6),
    ) {
        let x = &fixtures()[which];
        let m = m_raw % (x.truncation() + 1);
        let all = x.all_simplices(m);
        let r = all[start_raw % all.len()].clone();
        let mut stepwise = r.clone();
        let mut op = Monotone::identity(m);
        for &(prefer_face, idx) in &word {
            let dim = stepwise.dim();
            let face_ok = dim > 0;
            let degen_ok = dim < x.truncation();
            let use_face = match (face_ok, degen_ok) {
                (true, true) => prefer_face,
                (true, false) => true,
                (false, true) => false,
                (false, false) => break,
            };
            if use_face {
                let i = idx % (dim + 1);
                stepwise = x.face(i, &stepwise);
                op = op.compose(&Monotone::coface(dim, i));
            } else {
                let i = idx % (dim + 1);
                stepwise = degenerate(i, &stepwise);
                op = op.compose(&Monotone::codegeneracy(dim, i));
            }
        }
        prop_assert_eq!(x.eval(&r, &op), stepwise);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn products_are_symmetric_and_have_the_point_as_unit(i in 0usize..4, j in 0usize..4) {
        let xs = fixtures();
        let (x, y) = (&xs[i], &xs[j]);
        let xy = product(x, y, BUDGET).unwrap();
        let yx = product(y, x, BUDGET).unwrap();
        let swap = into_limit(&yx, &[projection(&xy, 1, y), projection(&xy, 0, x)]).unwrap();
        prop_assert!(swap.is_iso());

        let xp = product(x, &point(x.truncation()), BUDGET).unwrap();
        prop_assert!(projection(&xp, 0, x).is_iso());
    }
}

#[test]
fn hom_sets_from_simplices_count_all_simplices() {
    for x in fixtures() {
        for n in 0..=x.truncation() {
            let dn = delta(n, x.truncation()).unwrap();
            let homs = hom_set(&dn, &x, BUDGET).unwrap();
            assert_eq!(homs.len(), x.total_count(n), "dim {n}");
        }
    }
}

#[test]
fn coskeleton_is_right_adjoint_to_skeleton_by_hom_counts() {
    let xs = fixtures();
    for x in &xs {
        for y in &xs {
            for n in 1..=2 {
                let cy = cosk(y, n, BUDGET).unwrap();
                let lhs = hom_set(x, &cy.sset, BUDGET).unwrap().len();
                let rhs = hom_set(&x.skeleton(n), &y.skeleton(n), BUDGET).unwrap().len();
                assert_eq!(lhs, rhs, "n={n}");
            }
        }
    }
}

#[test]
fn pullbacks_satisfy_the_universal_property_by_hom_counts() {
    let pt = point(3);
    let b2 = boundary(2, 3).unwrap();
    let d2 = delta(2, 3).unwrap();
    let cospans = vec![
        (
            SimplicialMap::to_point(&delta(1, 3).unwrap(), &pt).unwrap(),
            SimplicialMap::to_point(&circle(3).unwrap(), &pt).unwrap(),
        ),
        (
            SimplicialMap::inclusion_by_name(&b2, &d2).unwrap(),
            SimplicialMap::inclusion_by_name(&b2, &d2).unwrap(),
        ),
    ];
    let tests = vec![point(3), delta(1, 3).unwrap(), circle(3).unwrap()];
    for (f, g) in &cospans {
        let p = pullback(f, g, BUDGET).unwrap();
        for t in &tests {
            let into_x = hom_set(t, &f.source, BUDGET).unwrap();
            let into_y = hom_set(t, &g.source, BUDGET).unwrap();
            let mut cones = 0usize;
            for a in &into_x {
                let fa = f.compose(&elem_to_map(t, &f.source, a));
                for b in &into_y {
                    let gb = g.compose(&elem_to_map(t, &g.source, b));
                    if fa == gb {
                        cones += 1;
                    }
                }
            }
            let into_p = hom_set(t, &p.sset, BUDGET).unwrap().len();
            assert_eq!(into_p, cones);
        }
    }
}

// Maps of simplicial spaces, enumerated level by level and filtered by the
// naturality squares against the external faces and degeneracies.
fn space_hom_count(b: &SimplicialSpace, t: &SimplicialSpace) -> usize {
    let m = b.ext_truncation();
    assert_eq!(m, t.ext_truncation());
    let cands: Vec<Vec<SimplicialMap>> = (0..=m)
        .map(|n| {
            hom_set(&b.levels[n], &t.levels[n], BUDGET)
                .unwrap()
                .iter()
                .map(|h| elem_to_map(&b.levels[n], &t.levels[n], h))
                .collect()
        })
        .collect();
    fn compatible(
        b: &SimplicialSpace,
        t: &SimplicialSpace,
        n: usize,
        prev: &SimplicialMap,
        cur: &SimplicialMap,
    ) -> bool {
        (0..=n).all(|i| t.faces[n][i].compose(cur) == prev.compose(&b.faces[n][i]))
            && (0..n).all(|i| t.degens[n - 1][i].compose(prev) == cur.compose(&b.degens[n - 1][i]))
    }
    fn go(
        b: &SimplicialSpace,
        t: &SimplicialSpace,
        cands: &[Vec<SimplicialMap>],
        chosen: &mut Vec<SimplicialMap>,
    ) -> usize {
        let n = chosen.len();
        if n == cands.len() {
            return 1;
        }
        let mut total = 0;
        for f in &cands[n] {
            if n > 0 && !compatible(b, t, n, &chosen[n - 1], f) {
                continue;
            }
            chosen.push(f.clone());
            total += go(b, t, cands, chosen);
            chosen.pop();
        }
        total
    }
    go(b, t, &cands, &mut Vec::new())
}

#[test]
fn diagonal_is_left_adjoint_by_hom_counts() {
    let bars = bar_group(&SimplicialGroup::constant(&FiniteGroup::cyclic(2), 2), 2, BUDGET)
        .unwrap()
        .space;
    let sources = vec![c_star(&delta(1, 2).unwrap()).unwrap(), bars];
    let targets = vec![point(2), delta(1, 2).unwrap(), circle(2).unwrap()];
    for b in &sources {
        let db = diagonal(b, BUDGET).unwrap();
        for k in &targets {
            let lhs = hom_set(&db.sset, k, BUDGET).unwrap().len();
            let rhs = space_hom_count(b, &d_star(k, b.ext_truncation(), BUDGET).unwrap().space);
            assert_eq!(lhs, rhs, "target truncation {}", k.truncation());
        }
    }
}

#[test]
fn euler_characteristics_match_generator_counts() {
    let torus = product(&circle(4).unwrap(), &circle(4).unwrap(), BUDGET).unwrap().sset;
    for x in [delta(2, 4).unwrap(), boundary(3, 5).unwrap(), circle(3).unwrap(), torus] {
        let top = x.truncation();
        assert_eq!(x.gen_count(top), 0);
        assert_eq!(x.gen_count(top - 1), 0);
        let from_gens: i64 = (0..=top)
            .map(|d| {
                let c = x.gen_count(d) as i64;
                if d % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum();
        assert_eq!(euler_from_homology(&x).unwrap(), from_gens);
    }
}

#[test]
fn fundamental_group_invariants_do_not_depend_on_the_basepoint() {
    let probes = [FiniteGroup::symmetric(3), FiniteGroup::cyclic(4)];
    for x in [boundary(2, 3).unwrap(), boundary(3, 3).unwrap(), delta(3, 3).unwrap()] {
        let reference = pi1_presentation(&x, None).unwrap();
        let ref_ab = abelianization(&reference);
        let ref_counts: Vec<_> = probes.iter().map(|g| hom_count(&reference, g)).collect();
        for v in 0..x.gen_count(0) {
            let p = pi1_presentation(&x, Some(Gen { dim: 0, idx: v })).unwrap();
            assert_eq!(abelianization(&p), ref_ab);
            let counts: Vec<_> = probes.iter().map(|g| hom_count(&p, g)).collect();
            assert_eq!(counts, ref_counts);
        }
    }
}

#[test]
fn weak_equivalence_verdicts_certify_identities() {
    for x in fixtures() {
        let report = weak_equivalence_verdict(&SimplicialMap::identity(&x), BUDGET).unwrap();
        assert_eq!(report.verdict, Verdict::Certified);
    }
}

#[test]
fn verdict_algebra_behaves_like_a_bounded_lattice() {
    use Verdict::*;
    let all = [Refuted, Consistent, Certified];
    for a in all {
        assert_eq!(a.and(Certified), a);
        assert_eq!(a.and(Refuted), Refuted);
        assert_eq!(a.weaken().is_certified(), false);
        assert_eq!(a.weaken().is_refuted(), a.is_refuted());
        for b in all {
            assert_eq!(a.and(b), b.and(a));
            for c in all {
                assert_eq!(a.and(b).and(c), a.and(b.and(c)));
            }
        }
    }
    assert_eq!(segal_core::verdict::all_of([Certified, Consistent, Certified]), Consistent);
    assert_eq!(segal_core::verdict::all_of([]), Certified);
}
