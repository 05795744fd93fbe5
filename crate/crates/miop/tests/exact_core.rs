//! Exact scalars, lattice functions, shifts, conjugation, determinants and
//! expansion in the sinusoidal coordinate.

use miop::det::{det, try_det};
use miop::eta::{eta_expand, EtaPoly};
use miop::laurent::Laurent;
use miop::lattice::{CoordModel, LatticeFun};
use miop::presets;
use miop::scalar::{format_gauss, g, gi, gr, imag_unit, parse_gauss, rat, GaussScalar, Rational};
use miop::MiopError;
use proptest::prelude::*;

fn poly(m: &CoordModel, terms: &[(i64, GaussScalar)]) -> LatticeFun {
    m.from_poly(Laurent::from_terms(terms.iter().cloned())).unwrap()
}

fn x_plus(m: &CoordModel, c: i64) -> LatticeFun {
    &m.var() + &m.real(rat(c, 1))
}

#[test]
fn shift_examples() {
    let ax = CoordModel::additive_x();
    let x2 = ax.var().pow(2);
    assert_eq!(x2.sh(1), poly(&ax, &[(2, gi(1)), (1, gi(2)), (0, gi(1))]));

    let mt = CoordModel::multiplicative_t(rat(1, 4));
    assert_eq!(mt.var().sh(1), mt.var().scale(&gr(1, 4)));

    let mz = CoordModel::multiplicative_z(rat(1, 4));
    assert_eq!(mz.var().sh_half(1), mz.var().scale(&gi(2)));

    // y = i x, so x -> x + i c moves y by -c
    let ay = CoordModel::additive_y();
    assert_eq!(ay.var().sh(1), x_plus(&ay, -1));
}

#[test]
fn multiplicative_shift_needs_half_integer_steps() {
    let mt = CoordModel::multiplicative_t(rat(1, 4));
    let err = mt.var().shift(&rat(1, 3)).unwrap_err();
    assert!(matches!(err, MiopError::UnrepresentableShift(_)));
    assert!(err.to_string().contains("unrepresentable shift"));
    // additive models take any rational step
    let ax = CoordModel::additive_x();
    assert_eq!(ax.var().shift(&rat(1, 3)).unwrap(), &ax.var() + &ax.real(rat(1, 3)));
}

#[test]
fn star_examples() {
    let mz = CoordModel::multiplicative_z(rat(1, 4));
    let f = poly(&mz, &[(1, gi(1)), (-1, imag_unit())]);
    assert_eq!(f.star().unwrap(), poly(&mz, &[(-1, gi(1)), (1, -imag_unit())]));

    let ay = CoordModel::additive_y();
    let y2 = ay.var().pow(2);
    assert_eq!(y2.star().unwrap(), y2);

    let v1 = &x_plus(&ay, 1) * &x_plus(&ay, 2);
    let want = &(&ay.real(rat(1, 1)) - &ay.var()) * &(&ay.real(rat(2, 1)) - &ay.var());
    assert_eq!(v1.star().unwrap(), want);

    let err = CoordModel::additive_x().var().star().unwrap_err();
    assert!(matches!(err, MiopError::Unsupported(_)));
}

#[test]
fn determinant_examples() {
    let ax = CoordModel::additive_x();
    let x = ax.var();
    let x1 = x_plus(&ax, 1);
    assert_eq!(det(&[vec![x.clone()]]).unwrap(), x);
    let m = vec![vec![x.clone(), x1.clone()], vec![x.pow(2), x1.pow(2)]];
    assert_eq!(det(&m).unwrap(), &x.pow(2) + &x);
    let same = vec![vec![x.clone(), x.clone()], vec![x1.clone(), x1.clone()]];
    assert!(det(&same).unwrap().is_zero());
    assert!(matches!(try_det(&[vec![x.clone(), x1]]), Err(MiopError::Unsupported(_))));
}

#[test]
fn eta_expand_examples() {
    let ax = CoordModel::additive_x();
    let eta = &ax.var() * &x_plus(&ax, 1);
    let f = &ax.var().pow(2) + &ax.var();
    assert_eq!(eta_expand(&f, &eta).unwrap(), EtaPoly::new(vec![gi(0), gi(1)]));
    let err = eta_expand(&ax.var(), &eta).unwrap_err();
    assert!(err.to_string().contains("not a polynomial in eta"));

    let mt = CoordModel::multiplicative_t(rat(1, 4));
    let tinv = mt.monomial(gi(1), -1);
    let eta_qr = &(&tinv - &mt.one()) * &(&mt.one() - &mt.var().scale(&gr(1, 2)));
    let f = &eta_qr + &mt.real(rat(3, 1));
    assert_eq!(eta_expand(&f, &eta_qr).unwrap(), EtaPoly::new(vec![gi(3), gi(1)]));
}

#[test]
fn exact_division_examples() {
    let ax = CoordModel::additive_x();
    let x = ax.var();
    let num = &x.pow(2) + &x;
    assert_eq!(num.div_exact(&x).unwrap(), x_plus(&ax, 1));
    let bad = &x.pow(2) + &ax.one();
    assert_eq!(bad.div_exact(&x).unwrap_err(), MiopError::NonExactDivision);
}

#[test]
fn scalar_text_encoding() {
    let z = parse_gauss("3/4-1/2*i").unwrap();
    assert_eq!(z, GaussScalar::new(rat(3, 4), rat(-1, 2)));
    assert_eq!(format_gauss(&z), "3/4-1/2*i");
    assert_eq!(format_gauss(&gi(5)), "5");
    assert!(matches!(parse_gauss("1/0"), Err(MiopError::Parse(_))));
    let w = &z * &z.conj();
    assert!(w.im == rat(0, 1));
}

// ---------- properties ----------

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn gauss() -> impl Strategy<Value = GaussScalar> {
    (rational(), prop_oneof![Just(rat(0, 1)), rational()]).prop_map(|(a, b)| GaussScalar::new(a, b))
}

fn models() -> Vec<CoordModel> {
    vec![
        CoordModel::additive_x(),
        CoordModel::additive_y(),
        CoordModel::multiplicative_t(rat(1, 4)),
        CoordModel::multiplicative_z(rat(1, 9)),
    ]
}

fn half_step() -> impl Strategy<Value = Rational> {
    (-6i64..=6).prop_map(|h| rat(h, 2))
}

fn brute_det(m: &[Vec<LatticeFun>]) -> LatticeFun {
    fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
        if n == 0 {
            return vec![(vec![], true)];
        }
        let mut out = Vec::new();
        for (p, even) in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                // inserting at `pos` adds `n - 1 - pos` inversions
                out.push((q, even == ((n - 1 - pos) % 2 == 0)));
            }
        }
        out
    }
    let model = m[0][0].model.clone();
    perms(m.len()).into_iter().fold(model.zero(), |acc, (p, even)| {
        let term = p.iter().enumerate().fold(model.one(), |t, (r, &c)| &t * &m[r][c]);
        if even {
            &acc + &term
        } else {
            &acc - &term
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shifts_compose_additively(k in 0usize..4, a in half_step(), b in half_step(), f in element_any()) {
        let f = rebase(&models()[k], &f, k);
        let ab = &a + &b;
        prop_assert_eq!(f.shift(&a).unwrap().shift(&b).unwrap(), f.shift(&ab).unwrap());
        prop_assert_eq!(f.shift(&rat(0, 1)).unwrap(), f);
    }

    #[test]
    fn shift_is_a_ring_homomorphism(k in 0usize..4, c in half_step(), f in element_any(), h in element_any()) {
        let m = &models()[k];
        let (f, h) = (rebase(m, &f, k), rebase(m, &h, k));
        let lhs = (&f * &h).shift(&c).unwrap();
        let rhs = &f.shift(&c).unwrap() * &h.shift(&c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_laws_and_exact_division(k in 0usize..4, a in element_any(), b in element_any(), c in element_any()) {
        let m = &models()[k];
        let (a, b, c) = (rebase(m, &a, k), rebase(m, &b, k), rebase(m, &c, k));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a.clone());
        }
    }

    #[test]
    fn determinant_matches_permutation_expansion(n in 1usize..=4, entries in prop::collection::vec(element_any(), 16)) {
        let m = CoordModel::multiplicative_z(rat(1, 4));
        let mat: Vec<Vec<LatticeFun>> =
            (0..n).map(|r| (0..n).map(|c| rebase(&m, &entries[r * 4 + c], 2)).collect()).collect();
        prop_assert_eq!(det(&mat).unwrap(), brute_det(&mat));
    }

    #[test]
    fn star_is_an_involution_and_conjugates_values(a in element_any(), z in (1i64..=7, 1i64..=7)) {
        let mz = CoordModel::multiplicative_z(rat(1, 4));
        let f = rebase(&mz, &a, 3);
        let s = f.star().unwrap();
        prop_assert_eq!(s.star().unwrap(), f.clone());
        let zr = g(rat(z.0, z.1));
        let zinv = g(rat(z.1, z.0));
        let conj_f = Laurent::from_terms(f.poly.terms().map(|(k, c)| (k, c.conj())));
        prop_assert_eq!(s.poly.eval(&zr), conj_f.eval(&zinv));

        let ay = CoordModel::additive_y();
        let fy = rebase(&ay, &a, 1);
        prop_assert_eq!(fy.star().unwrap().star().unwrap(), fy);
    }

    #[test]
    fn eta_expansion_round_trips(which in 0usize..9, coeffs in prop::collection::vec(gauss(), 0..=9)) {
        let specs = [
            presets::meixner(),
            presets::little_q_laguerre(),
            presets::little_q_jacobi(),
            presets::racah(),
            presets::q_racah(),
            presets::wilson_generic(),
            presets::askey_wilson_split(),
            presets::racah().sd(2),
            presets::q_racah().sd(3),
        ];
        let eta = specs[which].eta();
        let p = EtaPoly::new(coeffs);
        let f = p.to_lattice(&eta);
        prop_assert_eq!(eta_expand(&f, &eta).unwrap(), p);
    }
}

/// Random Laurent data independent of the model.
fn element_any() -> impl Strategy<Value = Laurent<GaussScalar>> {
    (-2i64..=0, prop::collection::vec(gauss(), 0..4)).prop_map(|(lo, c)| Laurent::from_coeffs(lo, c))
}

/// Place Laurent data in model `k`, dropping negative powers on additive kinds.
fn rebase(m: &CoordModel, p: &Laurent<GaussScalar>, k: usize) -> LatticeFun {
    let p = if k < 2 { Laurent::from_terms(p.terms().filter(|(e, _)| *e >= 0).map(|(e, c)| (e, c.clone()))) } else { p.clone() };
    m.from_poly(p).unwrap()
}
