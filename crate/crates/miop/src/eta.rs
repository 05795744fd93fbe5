//! Polynomials in the sinusoidal coordinate and the expansion onto its powers.

use std::collections::BTreeMap;

use crate::error::{MiopError, Result};
use crate::lattice::LatticeFun;
use crate::scalar::{format_gauss, parse_gauss, GaussScalar, Scalar};

/// Dense coefficient vector: `c[k]` multiplies `eta^k`. Trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct Eta<S> {
    c: Vec<S>,
}

impl<S: Scalar> Eta<S> {
    pub fn new(mut c: Vec<S>) -> Self {
        while matches!(c.last(), Some(x) if x.is_zero()) {
            c.pop();
        }
        Eta { c }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn eval(&self, eta: &S) -> S {
        self.c.iter().rev().fold(S::zero(), |acc, s| acc * eta.clone() + s.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Eta::new(self.c.iter().map(|x| x.clone() * s.clone()).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let get = |v: &Vec<S>, k: usize| v.get(k).cloned().unwrap_or_else(S::zero);
        Eta::new((0..n).map(|k| get(&self.c, k) - get(&o.c, k)).collect())
    }
}

impl Eta<GaussScalar> {
    /// Substitute `eta = eta(x)`.
    pub fn to_lattice(&self, eta: &LatticeFun) -> LatticeFun {
        let mut acc = eta.model.zero();
        for s in self.c.iter().rev() {
            acc = &(&acc * eta) + &eta.model.constant(s.clone());
        }
        acc
    }

    pub fn is_real(&self) -> bool {
        self.c.iter().all(|s| s.im == num_rational::BigRational::from_integer(0.into()))
    }

    /// `{"k": "coefficient"}` with nonzero entries only.
    pub fn to_map(&self) -> BTreeMap<String, String> {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, s)| !num_traits::Zero::is_zero(*s))
            .map(|(k, s)| (k.to_string(), format_gauss(s)))
            .collect()
    }

    pub fn from_map(m: &BTreeMap<String, String>) -> Result<Self> {
        let mut c = Vec::new();
        for (k, v) in m {
            let k: usize = k.parse().map_err(|_| MiopError::Parse(k.clone()))?;
            if c.len() <= k {
                c.resize(k + 1, num_traits::Zero::zero());
            }
            c[k] = parse_gauss(v)?;
        }
        Ok(Eta::new(c))
    }
}

/// Write `f(x) = p(eta(x))` by successive leading-term elimination.
pub fn eta_expand(f: &LatticeFun, eta: &LatticeFun) -> Result<Eta<GaussScalar>> {
    let (elo, ehi) = match (eta.poly.lo(), eta.poly.hi()) {
        (Some(l), Some(h)) if l < 0 || h > 0 => (l, h),
        _ => return Err(MiopError::NotInEta("eta must have positive or negative degree".into())),
    };
    let mut rest = f.clone();
    let mut powers = vec![eta.model.one()];
    let mut coeffs: Vec<GaussScalar> = Vec::new();
    loop {
        let (lo, hi) = match (rest.poly.lo(), rest.poly.hi()) {
            (Some(l), Some(h)) => (l, h),
            _ => break,
        };
        // degree of the eta power that must carry the extreme term
        let k = if ehi > 0 {
            if hi < 0 || hi % ehi != 0 {
                return Err(MiopError::NotInEta(format!("top exponent {hi}")));
            }
            hi / ehi
        } else {
            if lo > 0 || lo % elo != 0 {
                return Err(MiopError::NotInEta(format!("bottom exponent {lo}")));
            }
            lo / elo
        } as usize;
        if elo < 0 && k as i64 * elo > lo {
            return Err(MiopError::NotInEta(format!("bottom exponent {lo}")));
        }
        while powers.len() <= k {
            let next = &powers[powers.len() - 1] * eta;
            powers.push(next);
        }
        let p = &powers[k];
        let (ext, pext) = if ehi > 0 { (hi, p.poly.hi().unwrap()) } else { (lo, p.poly.lo().unwrap()) };
        debug_assert_eq!(ext, pext);
        let c = rest.poly.coeff(ext) / p.poly.coeff(pext);
        if coeffs.len() <= k {
            coeffs.resize(k + 1, num_traits::Zero::zero());
        }
        coeffs[k] = coeffs[k].clone() + c.clone();
        rest = &rest - &p.scale(&c);
    }
    Ok(Eta::new(coeffs))
}

pub type EtaPoly = Eta<GaussScalar>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::CoordModel;
    use crate::scalar::{gi, gr, rat};

    #[test]
    fn expand_qracah_style_eta() {
        let m = CoordModel::multiplicative_t(rat(1, 4));
        let t = m.var();
        let d = gr(1, 2);
        // eta = (1/t - 1)(1 - d t)
        let eta = (&m.monomial(gi(1), -1) - &m.one()) * (&m.one() - &t.scale(&d));
        let p = Eta::new(vec![gi(3), gi(-2), gr(5, 7)]);
        let f = p.to_lattice(&eta);
        assert_eq!(eta_expand(&f, &eta).unwrap(), p);
        assert!(eta_expand(&t, &eta).is_err());
    }

    #[test]
    fn expand_wilson_style_eta() {
        let m = CoordModel::additive_y();
        let x = m.x_fun();
        let eta = &x * &x;
        let p = Eta::new(vec![gi(1), gi(0), gi(4)]);
        assert_eq!(eta_expand(&p.to_lattice(&eta), &eta).unwrap(), p);
        assert!(eta_expand(&x, &eta).is_err());
    }

    #[test]
    fn json_map_round_trip() {
        let p = Eta::new(vec![gi(1), gi(0), gr(-3, 4)]);
        let m = p.to_map();
        assert_eq!(m.len(), 2);
        assert_eq!(Eta::from_map(&m).unwrap(), p);
    }
}
