//! Construction of the denominator and multi-indexed polynomials by every route.

use miop::eta::EtaPoly;
use miop::families::{make_family, FamilyId, FamilySpec, VType};
use miop::idqm::{self, Typed};
use miop::method::Method;
use miop::presets;
use miop::query::{compute, IndexSet};
use miop::rdqm;
use miop::scalar::{gi, gr, rat, rint};
use miop::shift;
use miop::MiopError;

const RD: [Method; 3] = [Method::Original, Method::CaseA, Method::CaseB];
const I: VType = VType::I;
const II: VType = VType::II;

#[test]
fn ell_values() {
    assert_eq!(rdqm::ell(&[1]), 1);
    assert_eq!(rdqm::ell(&[]), 0);
    assert_eq!(rdqm::ell(&[1, 3]), 3);
    assert_eq!(idqm::ell(&[(1, I)]), 1);
    assert_eq!(idqm::ell(&[(1, I), (1, II)]), 3);
    assert_eq!(idqm::ell(&[]), 0);
}

#[test]
fn single_virtual_state_gives_its_polynomial() {
    for s in presets::rdqm_sets() {
        for m in RD {
            assert_eq!(rdqm::xi_check(&s, &[1], m).unwrap(), s.xi(1, I), "{} {m}", s.describe());
        }
    }
    let m = presets::meixner();
    assert_eq!(rdqm::xi_eta(&m, &[1], Method::Original).unwrap(), EtaPoly::new(vec![gi(1), gr(1, 4)]));
    for s in presets::idqm_generic_sets() {
        for t in [I, II] {
            assert_eq!(idqm::xi_check(&s, &[(1, t)], Method::Original).unwrap(), s.xi(1, t), "{}", s.describe());
        }
    }
}

#[test]
fn empty_index_set_collapses_to_eigenpolynomials() {
    for s in presets::rdqm_sets() {
        for m in RD {
            assert_eq!(rdqm::xi_check(&s, &[], m).unwrap(), s.model.one());
            for n in 0..=3 {
                assert_eq!(rdqm::p_check(&s, &[], n, m).unwrap(), s.p_check(n), "{} {m} n={n}", s.describe());
            }
        }
    }
    for s in presets::idqm_generic_sets() {
        for n in 0..=3 {
            assert_eq!(idqm::p_check(&s, &[], n, Method::CaseB).unwrap(), s.p_check(n));
        }
    }
}

#[test]
fn meixner_examples() {
    let m = presets::meixner();
    let xi = rdqm::xi_eta(&m, &[1, 2], Method::Original).unwrap();
    assert_eq!(xi.degree(), Some(2));
    assert_eq!(rdqm::xi_check(&m, &[1, 2], Method::Original).unwrap().eval_origin(), gi(1));

    let want = EtaPoly::new(vec![gi(1), gr(-3, 16), gr(-1, 16)]);
    for meth in RD {
        assert_eq!(rdqm::p_eta(&m, &[1], 1, meth).unwrap(), want, "{meth}");
    }
}

#[test]
fn n_zero_is_the_shifted_denominator() {
    for s in presets::rdqm_sets() {
        for d in [vec![1], vec![2], vec![1, 3]] {
            let p = rdqm::p_check(&s, &d, 0, Method::CaseB).unwrap();
            let xi = rdqm::xi_check(&s.sd(1), &d, Method::CaseB).unwrap();
            assert_eq!(p, xi, "{} D={d:?}", s.describe());
        }
    }
}

#[test]
fn rdqm_routes_agree_with_normalization_and_degree() {
    for s in presets::rdqm_sets() {
        for d in [vec![2], vec![1, 2], vec![1, 2, 3]] {
            let set = IndexSet::Rd(d.clone());
            for n in [None, Some(0), Some(2)] {
                let reference = set.build(&s, n, Method::Original).unwrap();
                assert_eq!(reference.eval_origin(), gi(1));
                let e = set.expand(&s, &reference, n).unwrap();
                assert_eq!(e.degree(), Some((set.ell() + n.unwrap_or(0)) as usize));
                for m in [Method::CaseA, Method::CaseB] {
                    assert_eq!(set.build(&s, n, m).unwrap(), reference, "{} D={d:?} n={n:?} {m}", s.describe());
                }
            }
        }
    }
}

fn five_way(s: &FamilySpec, d: &[Typed], n: Option<i64>) {
    let build = |m| match n {
        None => idqm::xi_check(s, d, m),
        Some(n) => idqm::p_check(s, d, n, m),
    };
    let reference = build(Method::Original).unwrap();
    let e = miop::eta_expand(&reference, &s.eta()).unwrap();
    assert!(e.is_real(), "{} {d:?}", s.describe());
    assert_eq!(e.degree(), Some((idqm::ell(d) + n.unwrap_or(0)) as usize));
    for m in idqm::methods_for(d).into_iter().skip(1) {
        assert_eq!(build(m).unwrap(), reference, "{} {d:?} n={n:?} {m}", s.describe());
    }
}

#[test]
fn idqm_routes_agree() {
    let w = presets::wilson_generic();
    five_way(&w, &[(1, I), (2, I)], None);
    five_way(&w, &[(1, I), (2, I)], Some(2));
    five_way(&w, &[(0, II), (2, II)], Some(1));
    five_way(&w, &[(1, I), (1, II)], Some(1));
    let aw = presets::askey_wilson_generic();
    five_way(&aw, &[(1, I), (1, II)], Some(1));
    five_way(&aw, &[(2, II), (1, II)], None);
    assert_eq!(idqm::methods_for(&[(1, I), (1, II)]).len(), 3);
    assert_eq!(idqm::methods_for(&[(1, II), (2, II)]).len(), 5);
}

#[test]
fn askey_wilson_split_set_mixed_pair() {
    let aw = presets::askey_wilson_split();
    let d = [(1, I), (1, II)];
    let reference = idqm::p_check(&aw, &d, 1, Method::Original).unwrap();
    for m in [Method::CaseA, Method::CaseB] {
        assert_eq!(idqm::p_check(&aw, &d, 1, m).unwrap(), reference);
    }
}

#[test]
fn symmetric_wilson_mixed_pair_degenerates() {
    // E~_1^I = E~_1^II at a = (1,1,1,1): the mixed pair's denominator vanishes
    // there, while nearby points have the generic degree with a leading
    // coefficient proportional to the distance.
    let d = [(1, I), (1, II)];
    let sym = presets::wilson_symmetric();
    assert_eq!(sym.e_tilde(1, I), sym.e_tilde(1, II));
    assert!(idqm::xi_check(&sym, &d, Method::Original).unwrap().is_zero());
    let mut leads = Vec::new();
    for k in [10, 20, 40] {
        let s = make_family(FamilyId::W, None, vec![rint(1), rint(1), rint(1), rint(1) + rat(1, k)], None).unwrap();
        let e = idqm::xi_eta(&s, &d, Method::Original).unwrap();
        assert_eq!(e.degree(), Some(3));
        leads.push((k, e.coeffs()[3].clone()));
    }
    // the scaled leading coefficient k * lead tends to a nonzero limit
    let scaled: Vec<_> = leads.iter().map(|(k, c)| &c.re * rint(*k)).collect();
    let sq = |x: &miop::Rational| x * x;
    assert!(scaled.iter().all(|x| sq(x) > rint(1)));
    assert!(sq(&(&scaled[1] - &scaled[2])) < sq(&(&scaled[0] - &scaled[1])));
}

#[test]
fn route_preconditions() {
    let w = presets::wilson_generic();
    let mixed = [(1, I), (1, II)];
    let err = idqm::xi_check(&w, &mixed, Method::SingleA).unwrap_err();
    assert!(matches!(err, MiopError::Config(_)));

    let bare = presets::askey_wilson(false).unwrap();
    assert!(idqm::xi_check(&bare, &[(1, I)], Method::Original).is_ok());
    let err = idqm::p_check(&bare, &mixed, 1, Method::CaseA).unwrap_err();
    assert!(matches!(err, MiopError::MissingWitness(_)), "{err:?}");

    let m = presets::meixner();
    assert!(rdqm::xi_check(&m, &[1, 1], Method::Original).is_err());
    assert!(rdqm::xi_check(&m, &[1, 2], Method::SingleA).is_err());
    assert!(compute(&m, &IndexSet::Id(vec![(1, I)]), None, Method::Original).is_err());
}

#[test]
fn shift_operator_examples() {
    let m = presets::meixner();
    let f = shift::forward(&m).unwrap();
    assert_eq!(f.apply(&m.p_check(1)).unwrap(), m.model.real(rat(1, 2)));
    for s in presets::all_sets() {
        let h = shift::hamiltonian(&s).unwrap();
        assert!(h.apply(&s.model.one()).unwrap().is_zero(), "{}", s.describe());
    }
    let aw = presets::askey_wilson_split();
    let f = shift::forward(&aw).unwrap();
    assert_eq!(f.apply(&aw.p_check(1)).unwrap(), aw.model.real(aw.f_n(1)));
}
