//! Pochhammer symbols on scalars and on lattice functions.

use num_traits::One;

use crate::lattice::{CoordModel, LatticeFun};
use crate::scalar::{g, GaussScalar, Rational};

/// `(a)_k`
pub fn poch(a: &Rational, k: i64) -> Rational {
    assert!(k >= 0);
    let mut acc = Rational::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= &x;
        x += Rational::one();
    }
    acc
}

/// `(a; q)_k`
pub fn qpoch(a: &Rational, q: &Rational, k: i64) -> Rational {
    assert!(k >= 0);
    let mut acc = Rational::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= Rational::one() - &x;
        x *= q;
    }
    acc
}

/// `(c + v)_k` in the model variable `v`.
pub fn poch_var(m: &CoordModel, c: &GaussScalar, sign: i64, k: i64) -> LatticeFun {
    let mut acc = m.one();
    let v = if sign >= 0 { m.var() } else { -m.var() };
    for i in 0..k {
        let f = &v + &m.constant(c.clone() + g(Rational::from_integer(i.into())));
        acc = &acc * &f;
    }
    acc
}

/// `(c v^e; q)_k` in the model variable `v`.
pub fn qpoch_var(m: &CoordModel, c: &Rational, e: i64, k: i64) -> LatticeFun {
    let q = m.q().expect("multiplicative model");
    let mut acc = m.one();
    let mut cc = c.clone();
    for _ in 0..k {
        let f = &m.one() - &m.monomial(g(cc.clone()), e);
        acc = &acc * &f;
        cc *= &q;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint};

    #[test]
    fn scalar_symbols() {
        assert_eq!(poch(&rint(2), 3), rint(24));
        assert_eq!(poch(&rint(-2), 3), rint(0));
        assert_eq!(qpoch(&rat(1, 2), &rat(1, 2), 2), rat(3, 8));
    }
}
