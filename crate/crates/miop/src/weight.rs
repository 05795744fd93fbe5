//! Ratios of idQM ground-state weights `phi_0(x)^2` under parameter and
//! imaginary shifts. The weights are products of Gamma functions (W) or
//! infinite q-products (AW); ratios whose arguments differ by lattice steps
//! collapse to rational functions of the model variable.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{MiopError, Result};
use crate::families::{FamilyId, FamilySpec};
use crate::lattice::{CoordModel, LatticeFun, LatticeRat};
use crate::scalar::{g, Rational};

/// `Gamma(c + m y)^e` for W, `(c z^m; q)_inf^e` for AW.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightFactor {
    pub c: Rational,
    pub m: i64,
    pub e: i64,
}

/// Factors of `phi_0(x)^2`.
pub fn phi0_sq_factors(spec: &FamilySpec) -> Result<Vec<WeightFactor>> {
    let mut out = Vec::new();
    match spec.id {
        FamilyId::W => {
            for a in &spec.params.v {
                out.push(WeightFactor { c: a.clone(), m: 1, e: 1 });
                out.push(WeightFactor { c: a.clone(), m: -1, e: 1 });
            }
            out.push(WeightFactor { c: Rational::zero(), m: 2, e: -1 });
            out.push(WeightFactor { c: Rational::zero(), m: -2, e: -1 });
        }
        FamilyId::AW => {
            out.push(WeightFactor { c: Rational::one(), m: 2, e: 1 });
            out.push(WeightFactor { c: Rational::one(), m: -2, e: 1 });
            for a in &spec.params.v {
                out.push(WeightFactor { c: a.clone(), m: 1, e: -1 });
                out.push(WeightFactor { c: a.clone(), m: -1, e: -1 });
            }
        }
        _ => return Err(MiopError::Unsupported("weight factors are for idQM families".into())),
    }
    Ok(out)
}

/// Factors of `phi_0(x + i h gamma / 2)^2`.
pub fn shifted(spec: &FamilySpec, f: &[WeightFactor], h: i64) -> Result<Vec<WeightFactor>> {
    f.iter()
        .map(|w| {
            let c = if spec.id == FamilyId::W {
                &w.c - Rational::new(BigInt::from(w.m * h), BigInt::from(2))
            } else {
                &w.c * spec.model.q_half_pow(-w.m * h)?
            };
            Ok(WeightFactor { c, m: w.m, e: w.e })
        })
        .collect()
}

/// Integer `k` with `c = c0 + k` (W) or `c = c0 q^k` (AW).
fn lattice_gap(spec: &FamilySpec, c: &Rational, c0: &Rational) -> Option<i64> {
    if spec.id == FamilyId::W {
        let d = c - c0;
        return d.is_integer().then(|| i64::try_from(d.to_integer()).ok()).flatten();
    }
    if c0.is_zero() || c.is_zero() {
        return None;
    }
    let q = spec.model.q()?;
    let r = c / c0;
    let (mut up, mut down) = (Rational::one(), Rational::one());
    for k in 0..=256i64 {
        if up == r {
            return Some(k);
        }
        if down == r {
            return Some(-k);
        }
        up *= &q;
        down /= &q;
    }
    None
}

/// `(c0 + m y)_k` or `(c0 z^m; q)_k` as a lattice function.
fn finite_block(spec: &FamilySpec, model: &CoordModel, c0: &Rational, m: i64, k: i64) -> LatticeFun {
    let mut acc = model.one();
    if spec.id == FamilyId::W {
        let my = model.var().scale_r(&Rational::from_integer(m.into()));
        for i in 0..k {
            acc = &acc * &(&my + &model.real(c0 + Rational::from_integer(i.into())));
        }
    } else {
        let q = spec.q();
        let mut cc = c0.clone();
        for _ in 0..k {
            acc = &acc * &(&model.one() - &model.monomial(g(cc.clone()), m));
            cc *= &q;
        }
    }
    acc
}

/// `prod num / prod den` as a rational function; fails when the infinite parts
/// do not cancel.
pub fn ratio(spec: &FamilySpec, num: &[WeightFactor], den: &[WeightFactor]) -> Result<LatticeRat> {
    let model = &spec.model;
    // group by m, then by lattice class
    let mut groups: BTreeMap<i64, Vec<(Rational, i64)>> = BTreeMap::new();
    for w in num {
        groups.entry(w.m).or_default().push((w.c.clone(), w.e));
    }
    for w in den {
        groups.entry(w.m).or_default().push((w.c.clone(), -w.e));
    }
    let (mut top, mut bottom) = (model.one(), model.one());
    for (m, items) in groups {
        let mut classes: Vec<(Rational, Vec<(i64, i64)>)> = Vec::new();
        for (c, e) in items {
            match classes.iter_mut().find_map(|(c0, v)| lattice_gap(spec, &c, c0).map(|k| (c0, v, k))) {
                Some((c0, v, k)) if k < 0 => {
                    // move the base to the new leftmost point
                    *c0 = c.clone();
                    for it in v.iter_mut() {
                        it.0 -= k;
                    }
                    v.push((0, e));
                }
                Some((_, v, k)) => v.push((k, e)),
                None => classes.push((c, vec![(0, e)])),
            }
        }
        for (c0, v) in classes {
            if v.iter().map(|(_, e)| e).sum::<i64>() != 0 {
                return Err(MiopError::Unsupported("weight ratio is not rational".into()));
            }
            for (k, e) in v {
                let block = finite_block(spec, model, &c0, m, k);
                // W: Gamma(c0 + k + my) = Gamma(c0 + my) (c0 + my)_k
                // AW: (c0 q^k z^m)_inf = (c0 z^m)_inf / (c0 z^m)_k
                let up = (spec.id == FamilyId::W) == (e > 0);
                for _ in 0..e.abs() {
                    if up {
                        top = &top * &block;
                    } else {
                        bottom = &bottom * &block;
                    }
                }
            }
        }
    }
    LatticeRat::new(top, bottom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn unshifted_ratio_is_one() {
        for spec in [presets::wilson_generic(), presets::askey_wilson_generic()] {
            let f = phi0_sq_factors(&spec).unwrap();
            let r = ratio(&spec, &f, &f).unwrap();
            assert!(r.same_as(&LatticeRat::from_fun(spec.model.one())));
        }
    }

    #[test]
    fn wilson_half_shift() {
        // Gamma(a + y) / Gamma(a - 1 + y) = a - 1 + y
        let spec = presets::wilson_generic();
        let f = vec![WeightFactor { c: Rational::one(), m: 1, e: 1 }];
        let s = shifted(&spec, &f, 2).unwrap();
        let r = ratio(&spec, &f, &s).unwrap();
        assert!(r.same_as(&LatticeRat::from_fun(spec.model.var())));
    }
}
