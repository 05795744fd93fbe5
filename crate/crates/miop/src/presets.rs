//! The parameter sets used by the default configuration and the acceptance run.

use crate::error::Result;
use crate::families::{make_family, split_witnesses, FamilyId, FamilySpec};
use crate::scalar::{rat, rint, Rational};

fn pow(q: &Rational, k: i64) -> Rational {
    crate::scalar::pow_i(q, k)
}

pub fn meixner() -> FamilySpec {
    make_family(FamilyId::M, None, vec![rint(2), rat(1, 2)], None).unwrap()
}

pub fn little_q_laguerre() -> FamilySpec {
    make_family(FamilyId::LqL, Some(rat(1, 4)), vec![rat(1, 2)], None).unwrap()
}

pub fn little_q_jacobi() -> FamilySpec {
    make_family(FamilyId::LqJ, Some(rat(1, 4)), vec![rat(1, 2), rat(1, 3)], None).unwrap()
}

/// Racah with `N = 5`.
pub fn racah() -> FamilySpec {
    make_family(FamilyId::R, None, vec![rint(-5), rint(7), rint(1), rat(1, 2)], None).unwrap()
}

/// q-Racah with `q = 1/4`, `N = 5`.
pub fn q_racah() -> FamilySpec {
    let q = rat(1, 4);
    make_family(FamilyId::QR, Some(q.clone()), vec![pow(&q, -5), rat(1, 4096), rat(1, 2), rat(1, 2)], None).unwrap()
}

pub fn wilson_symmetric() -> FamilySpec {
    make_family(FamilyId::W, None, vec![rint(1); 4], None).unwrap()
}

/// Asymmetric Wilson set with no coincidences among the energies used by the grids.
pub fn wilson_generic() -> FamilySpec {
    make_family(FamilyId::W, None, vec![rat(1, 2), rat(2, 3), rat(1, 3), rat(3, 5)], None).unwrap()
}

/// Askey-Wilson with `a1 a2 / q` and `a3 a4 / q` rational squares.
pub fn askey_wilson_split() -> FamilySpec {
    askey_wilson(true).unwrap()
}

pub fn askey_wilson(with_witnesses: bool) -> Result<FamilySpec> {
    let q = rat(1, 4);
    let v = vec![rat(1, 2), rat(1, 8), rat(1, 4), rat(1, 4)];
    let rho = if with_witnesses { split_witnesses(&q, &v) } else { None };
    make_family(FamilyId::AW, Some(q), v, rho)
}

/// Askey-Wilson with witnesses and no energy coincidences in the grids.
pub fn askey_wilson_generic() -> FamilySpec {
    let q = rat(1, 4);
    let v = vec![rat(1, 4), rat(1, 9), rat(1, 5), rat(1, 5)];
    let rho = split_witnesses(&q, &v);
    make_family(FamilyId::AW, Some(q), v, rho).unwrap()
}

pub fn rdqm_sets() -> Vec<FamilySpec> {
    vec![meixner(), little_q_laguerre(), little_q_jacobi(), racah(), q_racah()]
}

pub fn idqm_sets() -> Vec<FamilySpec> {
    vec![wilson_symmetric(), wilson_generic(), askey_wilson_split()]
}

/// Additional nondegenerate idQM sets exercised beside the acceptance sets.
pub fn idqm_generic_sets() -> Vec<FamilySpec> {
    vec![wilson_generic(), askey_wilson_generic()]
}

pub fn all_sets() -> Vec<FamilySpec> {
    let mut v = rdqm_sets();
    v.extend(idqm_sets());
    v
}
