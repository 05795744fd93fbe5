//! Family data: derived constants, energies, factors, eigen and virtual-state
//! polynomials, potentials, auxiliary functions and normalization constants.

use miop::eta::{eta_expand, EtaPoly};
use miop::families::{make_family, FamilyId, FamilySpec, Params, VType};
use miop::lattice::CoordModel;
use miop::presets;
use miop::rdqm;
use miop::scalar::{g, gi, gr, rat, rint, GaussScalar, Rational};
use miop::special::poch;
use miop::MiopError;

fn all_specs() -> Vec<FamilySpec> {
    let mut v = presets::all_sets();
    v.push(presets::askey_wilson_generic());
    v
}

fn types(spec: &FamilySpec) -> Vec<VType> {
    if spec.id.is_idqm() {
        vec![VType::I, VType::II]
    } else {
        vec![VType::I]
    }
}

#[test]
fn derived_constants() {
    let m = presets::meixner();
    assert_eq!(m.kappa(), rint(1));
    assert_eq!(m.delta(), vec![rint(1), rint(0)]);
    assert_eq!(m.delta_tilde(VType::I), vec![rint(1), rint(0)]);

    // E_n = n (n + d~) with d~ = a + b + c - d - 1 = 3/2
    let r = presets::racah();
    assert_eq!(r.energy(1), rat(5, 2));
    assert_eq!(r.size, Some(5));

    // E_n = n (n + b1 - 1) with b1 = 4, and S(eta) = b1 eta - b3 with b3 = 4
    let w = presets::wilson_symmetric();
    assert_eq!(w.energy(2), rint(10));
    assert_eq!(w.s_eta(), EtaPoly::new(vec![gi(-4), gi(4)]));
}

#[test]
fn construction_rejects_bad_parameters() {
    assert!(matches!(make_family(FamilyId::M, None, vec![rint(2)], None), Err(MiopError::Inadmissible(_))));
    let q_out = make_family(FamilyId::LqL, Some(rint(2)), vec![rat(1, 2)], None);
    assert!(matches!(q_out, Err(MiopError::Inadmissible(_))));
    let non_integer_n = make_family(FamilyId::R, None, vec![rat(-9, 2), rint(7), rint(1), rat(1, 2)], None);
    assert!(matches!(non_integer_n, Err(MiopError::Inadmissible(_))));
}

#[test]
fn energies() {
    let m = presets::meixner();
    assert_eq!(m.energy(3), rat(3, 2));
    assert_eq!(m.e_tilde(1, VType::I), rat(-3, 2));
    assert_eq!(presets::wilson_symmetric().e_tilde(2, VType::I), rint(4));
    for s in all_specs() {
        assert_eq!(s.energy(0), rint(0), "{}", s.describe());
    }
}

#[test]
fn shift_factors_multiply_to_energies() {
    let w = presets::wilson_symmetric();
    assert_eq!(w.f_n(2), rint(-10));
    assert_eq!(w.b_n(1), rint(-1));
    assert_eq!(w.f_n(2) * w.b_n(1), w.energy(2));

    let aw = presets::askey_wilson_split();
    assert_eq!(aw.params.rho, Some([rat(1, 2), rat(1, 2)]));
    for s in [w, presets::wilson_generic(), aw, presets::askey_wilson_generic()] {
        assert_eq!(s.f_n(0) * s.b_n(-1), rint(0));
        for n in 1..=4 {
            assert_eq!(s.f_n(n) * s.b_n(n - 1), s.energy(n), "{} n={n}", s.describe());
        }
        for t in [VType::I, VType::II] {
            for v in 0..=4 {
                let prod = s.f_tilde(v, t).unwrap() * s.b_tilde(v, t).unwrap();
                assert_eq!(prod, s.e_tilde(v, t), "{} v={v}", s.describe());
            }
        }
    }
}

#[test]
fn half_alpha_powers_need_witnesses() {
    let aw = presets::askey_wilson(false).unwrap();
    let err = aw.f_tilde(1, VType::I).unwrap_err();
    assert!(matches!(err, MiopError::MissingWitness(_)));
    // even powers stay rational
    assert!(aw.alpha_half_pow(VType::I, 2).is_ok());
}

/// `2F1(-n, -x; beta; 1 - 1/c)` summed term by term at an integer `x`.
fn meixner_oracle(n: i64, x: i64, beta: &Rational, c: &Rational) -> Rational {
    let z = rint(1) - rint(1) / c;
    let mut acc = rint(0);
    let mut fact = rint(1);
    for k in 0..=n {
        if k > 0 {
            fact *= rint(k);
        }
        acc += poch(&rint(-n), k) * poch(&rint(-x), k) / (poch(beta, k) * &fact) * miop::scalar::pow_i(&z, k);
    }
    acc
}

#[test]
fn eigenpolynomials() {
    for s in all_specs() {
        assert_eq!(s.p_check(0), s.model.one());
        assert!(s.p_check(-1).is_zero());
        if !s.id.is_idqm() {
            for n in 0..=4 {
                assert_eq!(s.p_check(n).eval_origin(), gi(1), "{} n={n}", s.describe());
            }
        }
    }
    let m = presets::meixner();
    let x = m.model.var();
    assert_eq!(m.p_check(1), &m.model.one() - &x.scale(&gr(1, 2)));
    for n in 0..=4 {
        for xv in 0..=5 {
            let got = m.p_check(n).eval_at(&rint(xv)).unwrap();
            assert_eq!(got, g(meixner_oracle(n, xv, &rint(2), &rat(1, 2))), "n={n} x={xv}");
        }
    }
}

#[test]
fn virtual_state_polynomials() {
    for s in all_specs() {
        for t in types(&s) {
            assert_eq!(s.xi(0, t), s.model.one());
            for v in 1..=4 {
                let e = eta_expand(&s.xi(v, t), &s.eta()).unwrap();
                assert_eq!(e.degree(), Some(v as usize), "{} v={v}", s.describe());
            }
        }
    }
    let m = presets::meixner();
    assert_eq!(m.xi(1, VType::I), &m.model.one() + &m.model.var().scale(&gr(1, 4)));

    let w = presets::wilson_symmetric();
    let tv = vec![rint(0), rint(0), rint(1), rint(1)];
    assert_eq!(w.twist(VType::I).params.v, tv);
    let twisted = w.with_params(Params { v: tv, rho: None });
    assert_eq!(w.xi(1, VType::I), twisted.p_check(1));
}

#[test]
fn twist_is_an_involution_preserving_eta_and_phi() {
    for s in all_specs() {
        for t in types(&s) {
            let tw = s.twist(t);
            assert_eq!(tw.twist(t).params, s.params, "{}", s.describe());
            assert_eq!(tw.eta(), s.eta(), "{}", s.describe());
            assert_eq!(tw.phi(), s.phi(), "{}", s.describe());
        }
    }
}

#[test]
fn potentials() {
    let m = presets::meixner();
    let x = m.model.var();
    let b = m.b_fn();
    assert_eq!(b.num, (&x + &m.model.real(rint(2))).scale(&gr(1, 2)));
    assert_eq!(b.den, m.model.one());
    assert_eq!(m.d_fn().num, x);

    for s in [presets::racah(), presets::q_racah()] {
        assert!(s.b_fn().eval_at(&rint(5)).unwrap() == gi(0), "{}", s.describe());
        assert!(s.d_fn().eval_at(&rint(0)).unwrap() == gi(0), "{}", s.describe());
    }

    // AW: V(z) = prod (1 - a_j z) / ((1 - z^2)(1 - q z^2)) at z = 3
    let aw = presets::askey_wilson_split();
    let z = rint(3);
    let v = aw.v_fn();
    let at = |f: &miop::LatticeFun| f.poly.eval(&g(z.clone()));
    let want = aw.params.v.iter().fold(rint(1), |acc, a| acc * (rint(1) - a * &z))
        / ((rint(1) - &z * &z) * (rint(1) - aw.q() * &z * &z));
    assert_eq!(at(&v.num) / at(&v.den), g(want));
    let vs = v.star().unwrap();
    assert!(vs.same_as(&miop::lattice::LatticeRat::new(v.num.star().unwrap(), v.den.star().unwrap()).unwrap()));
}

#[test]
fn auxiliary_tables() {
    let m = presets::meixner();
    for j in 1..=4 {
        assert_eq!(m.r_j(j, 4), m.model.real(miop::scalar::pow_i(&rat(1, 2), j - 1)));
    }
    for mm in 0..=5 {
        assert_eq!(m.phi_m(mm).unwrap(), m.model.one());
    }
    // phi = (eta(x + 1) - eta(x)) / eta(1) for every rdQM family
    for s in presets::rdqm_sets() {
        let eta = s.eta();
        let e1 = eta.eval_at(&rint(1)).unwrap();
        assert_eq!((&eta.sh(1) - &eta).scale(&(gi(1) / e1)), s.phi(), "{}", s.describe());
    }
    let w = presets::wilson_symmetric();
    assert_eq!(w.u_eta(VType::I), EtaPoly::new(vec![gi(1), gi(2), gi(1)]));
    // U-check in y equals U(eta) composed with eta = -y^2
    for s in [w, presets::wilson_generic(), presets::askey_wilson_split()] {
        for t in [VType::I, VType::II] {
            assert_eq!(s.u_eta(t).to_lattice(&s.eta()), s.u_check(t), "{}", s.describe());
        }
    }
}

#[test]
fn normalization_constants() {
    let m = presets::meixner();
    assert_eq!(rdqm::c_d(&m, &[]).unwrap(), rint(1));
    assert_eq!(rdqm::c_dn(&m, &[], 3).unwrap(), rint(1));
    assert_eq!(rdqm::d_tilde_sq(&m, &[1], 0).unwrap(), rat(3, 4));
    assert_eq!(rdqm::c_dn(&m, &[1], 0).unwrap(), rat(-3, 4));
    // C_D is alternating in the order of D through its energy differences
    for s in presets::rdqm_sets() {
        let a = rdqm::c_d(&s, &[1, 2]).unwrap();
        let b = rdqm::c_d(&s, &[2, 1]).unwrap();
        assert_eq!(a, -b, "{}", s.describe());
    }
}

#[test]
fn coincident_virtual_energies_are_rejected() {
    // E~_v = -(c + v)(a + b - d - v - 1) is symmetric about v = 1 here
    let r = make_family(FamilyId::R, None, vec![rint(-5), rint(9), rat(1, 2), rat(1, 2)], None).unwrap();
    assert_eq!(r.e_tilde(0, VType::I), r.e_tilde(2, VType::I));
    assert!(matches!(rdqm::c_d(&r, &[0, 2]), Err(MiopError::Inadmissible(_))));
}

#[test]
fn nu_functional_relation() {
    for s in presets::rdqm_sets() {
        let bp = s.twist(VType::I).b_fn();
        let b = s.b_fn();
        for x in 0..=6i64 {
            if s.size.is_some_and(|n| x > n) {
                break;
            }
            let xr = rint(x);
            let lhs = g(s.nu_at(x + 1)) * g(s.alpha(VType::I)) * bp.eval_at(&xr).unwrap();
            let rhs: GaussScalar = b.eval_at(&xr).unwrap() * g(s.nu_at(x));
            assert_eq!(lhs, rhs, "{} x={x}", s.describe());
        }
    }
}

#[test]
fn models_match_families() {
    use miop::lattice::CoordKind::*;
    let kinds: Vec<_> = presets::all_sets().iter().map(|s| s.model.kind()).collect();
    assert_eq!(
        kinds,
        vec![AdditiveX, MultiplicativeT, MultiplicativeT, AdditiveX, MultiplicativeT, AdditiveY, AdditiveY, MultiplicativeZ]
    );
    assert_eq!(presets::askey_wilson_split().model, CoordModel::multiplicative_z(rat(1, 4)));
}
