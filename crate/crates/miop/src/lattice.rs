//! Functions on the lattice: Laurent polynomials in the model variable
//! (`x`, `y = i x`, `t = q^x` or `z = e^{i x}`) with Gaussian rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{MiopError, Result};
use crate::laurent::Laurent;
use crate::scalar::{g, imag_unit, pow_i, sqrt_exact, GaussScalar, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoordKind {
    /// variable `x`, shift `x -> x + c`
    AdditiveX,
    /// variable `y = i x`, shift `x -> x + i c` sends `y -> y - c`
    AdditiveY,
    /// variable `t = q^x`
    MultiplicativeT,
    /// variable `z = e^{i x}`, `gamma = log q`
    MultiplicativeZ,
}

impl CoordKind {
    pub fn is_multiplicative(self) -> bool {
        matches!(self, CoordKind::MultiplicativeT | CoordKind::MultiplicativeZ)
    }

    pub fn is_idqm(self) -> bool {
        matches!(self, CoordKind::AdditiveY | CoordKind::MultiplicativeZ)
    }
}

#[derive(Debug, PartialEq)]
struct ModelInner {
    kind: CoordKind,
    q: Option<Rational>,
    sqrt_q: Option<Rational>,
}

/// Coordinate model: variable kind plus `q` (and `s = sqrt q` when rational)
/// for multiplicative kinds.
#[derive(Clone, Debug)]
pub struct CoordModel(Arc<ModelInner>);

impl PartialEq for CoordModel {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0 == o.0
    }
}

impl CoordModel {
    pub fn additive_x() -> Self {
        CoordModel(Arc::new(ModelInner { kind: CoordKind::AdditiveX, q: None, sqrt_q: None }))
    }

    pub fn additive_y() -> Self {
        CoordModel(Arc::new(ModelInner { kind: CoordKind::AdditiveY, q: None, sqrt_q: None }))
    }

    pub fn multiplicative_t(q: Rational) -> Self {
        let sqrt_q = sqrt_exact(&q);
        CoordModel(Arc::new(ModelInner { kind: CoordKind::MultiplicativeT, q: Some(q), sqrt_q }))
    }

    pub fn multiplicative_z(q: Rational) -> Self {
        let sqrt_q = sqrt_exact(&q);
        CoordModel(Arc::new(ModelInner { kind: CoordKind::MultiplicativeZ, q: Some(q), sqrt_q }))
    }

    pub fn kind(&self) -> CoordKind {
        self.0.kind
    }

    pub fn sqrt_q(&self) -> Option<&Rational> {
        self.0.sqrt_q.as_ref()
    }

    pub fn q(&self) -> Option<Rational> {
        self.0.q.clone()
    }

    /// `q^(h/2)`; odd `h` needs a rational square root of `q`.
    pub fn q_half_pow(&self, h: i64) -> Result<Rational> {
        let q = self.0.q.as_ref().expect("multiplicative model");
        if h % 2 == 0 {
            Ok(pow_i(q, h / 2))
        } else {
            let s = self
                .sqrt_q()
                .ok_or_else(|| MiopError::UnrepresentableShift(format!("q^({h}/2) with irrational sqrt q")))?;
            Ok(pow_i(s, h))
        }
    }

    /// `q^e` for `e` with `2e` integral.
    pub fn q_pow(&self, e: &Rational) -> Result<Rational> {
        let h = twice_integral(e).ok_or_else(|| MiopError::UnrepresentableShift(e.to_string()))?;
        self.q_half_pow(h)
    }

    pub fn zero(&self) -> LatticeFun {
        LatticeFun { model: self.clone(), poly: Laurent::zero() }
    }

    pub fn one(&self) -> LatticeFun {
        self.constant(g(Rational::one()))
    }

    pub fn constant(&self, c: GaussScalar) -> LatticeFun {
        LatticeFun { model: self.clone(), poly: Laurent::constant(c) }
    }

    pub fn real(&self, c: Rational) -> LatticeFun {
        self.constant(g(c))
    }

    /// The model variable itself.
    pub fn var(&self) -> LatticeFun {
        self.monomial(g(Rational::one()), 1)
    }

    pub fn monomial(&self, c: GaussScalar, k: i64) -> LatticeFun {
        LatticeFun { model: self.clone(), poly: Laurent::monomial(c, k) }
    }

    pub fn from_poly(&self, poly: Laurent<GaussScalar>) -> Result<LatticeFun> {
        if !self.kind().is_multiplicative() && !poly.is_polynomial() {
            return Err(MiopError::Unsupported("negative powers in an additive model".into()));
        }
        Ok(LatticeFun { model: self.clone(), poly })
    }

    /// The function `x` itself (`x = -i y` in the `y` model); additive models only.
    pub fn x_fun(&self) -> LatticeFun {
        match self.kind() {
            CoordKind::AdditiveX => self.var(),
            CoordKind::AdditiveY => self.monomial(-imag_unit(), 1),
            _ => panic!("x is not a Laurent polynomial in a multiplicative model"),
        }
    }

    /// `q^x` (for `t`) or `e^{i x}` (for `z`); multiplicative models only.
    pub fn exp_fun(&self) -> LatticeFun {
        assert!(self.kind().is_multiplicative());
        self.var()
    }
}

/// `2 e` when it is an integer.
pub fn twice_integral(e: &Rational) -> Option<i64> {
    let t = e * Rational::from_integer(BigInt::from(2));
    if t.is_integer() {
        i64::try_from(t.to_integer()).ok()
    } else {
        None
    }
}

/// A Laurent polynomial in the model variable.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeFun {
    pub model: CoordModel,
    pub poly: Laurent<GaussScalar>,
}

impl LatticeFun {
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &GaussScalar) -> LatticeFun {
        LatticeFun { model: self.model.clone(), poly: self.poly.scale(c) }
    }

    pub fn scale_r(&self, c: &Rational) -> LatticeFun {
        self.scale(&g(c.clone()))
    }

    pub fn pow(&self, n: u32) -> LatticeFun {
        LatticeFun { model: self.model.clone(), poly: self.poly.pow(n) }
    }

    /// Shift `x -> x + c` (rdQM) or `x -> x + i c gamma` (idQM).
    pub fn shift(&self, c: &Rational) -> Result<LatticeFun> {
        let poly = match self.model.kind() {
            CoordKind::AdditiveX => self.poly.taylor_shift(&g(c.clone())).unwrap(),
            CoordKind::AdditiveY => self.poly.taylor_shift(&g(-c.clone())).unwrap(),
            CoordKind::MultiplicativeT => self.poly.scale_var(&g(self.model.q_pow(c)?)),
            CoordKind::MultiplicativeZ => self.poly.scale_var(&g(self.model.q_pow(&-c.clone())?)),
        };
        Ok(LatticeFun { model: self.model.clone(), poly })
    }

    /// Integer-step shift; panics only when the model cannot represent it, which
    /// never happens for integral steps.
    pub fn sh(&self, k: i64) -> LatticeFun {
        self.shift(&Rational::from_integer(BigInt::from(k))).unwrap()
    }

    /// Half-integer step `h/2`.
    pub fn sh_half(&self, h: i64) -> LatticeFun {
        self.shift(&Rational::new(BigInt::from(h), BigInt::from(2))).unwrap()
    }

    /// `f*(x)`: conjugate the Taylor coefficients in `x`.
    pub fn star(&self) -> Result<LatticeFun> {
        let poly = match self.model.kind() {
            CoordKind::AdditiveY => self.poly.map(|k, s| {
                let c = s.conj();
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            }),
            CoordKind::MultiplicativeZ => self.poly.map(|_, s| s.conj()).reflect(),
            _ => return Err(MiopError::Unsupported("star is defined for idQM models only".into())),
        };
        Ok(LatticeFun { model: self.model.clone(), poly })
    }

    pub fn div_exact(&self, d: &LatticeFun) -> Result<LatticeFun> {
        check_models(self, d)?;
        let q = self.poly.div_exact(&d.poly).ok_or(MiopError::NonExactDivision)?;
        if !self.model.kind().is_multiplicative() && !q.is_polynomial() {
            return Err(MiopError::NonExactDivision);
        }
        Ok(LatticeFun { model: self.model.clone(), poly: q })
    }

    /// Value at the rdQM point `x`; for `t` models `2x` must be integral.
    pub fn eval_at(&self, x: &Rational) -> Result<GaussScalar> {
        let v = match self.model.kind() {
            CoordKind::AdditiveX => g(x.clone()),
            CoordKind::MultiplicativeT => g(self.model.q_pow(x)?),
            _ => return Err(MiopError::Unsupported("use eval_imag for idQM models".into())),
        };
        Ok(self.poly.eval(&v))
    }

    /// Value at `x = 0`.
    pub fn eval_origin(&self) -> GaussScalar {
        let v = if self.model.kind().is_multiplicative() { g(Rational::one()) } else { g(Rational::zero()) };
        self.poly.eval(&v)
    }

    /// Value at the idQM point `x = i c gamma`.
    pub fn eval_imag(&self, c: &Rational) -> Result<GaussScalar> {
        Ok(self.shift(c)?.eval_origin())
    }

    pub fn is_real(&self) -> bool {
        self.poly.terms().all(|(_, s)| s.im.is_zero())
    }
}

fn check_models(a: &LatticeFun, b: &LatticeFun) -> Result<()> {
    if a.model == b.model {
        Ok(())
    } else {
        Err(MiopError::ModelMismatch)
    }
}

impl<'a> Add<&'a LatticeFun> for &'a LatticeFun {
    type Output = LatticeFun;
    fn add(self, o: &LatticeFun) -> LatticeFun {
        check_models(self, o).expect("model mismatch");
        LatticeFun { model: self.model.clone(), poly: &self.poly + &o.poly }
    }
}

impl<'a> Sub<&'a LatticeFun> for &'a LatticeFun {
    type Output = LatticeFun;
    fn sub(self, o: &LatticeFun) -> LatticeFun {
        check_models(self, o).expect("model mismatch");
        LatticeFun { model: self.model.clone(), poly: &self.poly - &o.poly }
    }
}

impl<'a> Mul<&'a LatticeFun> for &'a LatticeFun {
    type Output = LatticeFun;
    fn mul(self, o: &LatticeFun) -> LatticeFun {
        check_models(self, o).expect("model mismatch");
        LatticeFun { model: self.model.clone(), poly: &self.poly * &o.poly }
    }
}

impl Neg for &LatticeFun {
    type Output = LatticeFun;
    fn neg(self) -> LatticeFun {
        LatticeFun { model: self.model.clone(), poly: -&self.poly }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<LatticeFun> for LatticeFun {
            type Output = LatticeFun;
            fn $m(self, o: LatticeFun) -> LatticeFun {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a LatticeFun> for LatticeFun {
            type Output = LatticeFun;
            fn $m(self, o: &LatticeFun) -> LatticeFun {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<LatticeFun> for &'a LatticeFun {
            type Output = LatticeFun;
            fn $m(self, o: LatticeFun) -> LatticeFun {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for LatticeFun {
    type Output = LatticeFun;
    fn neg(self) -> LatticeFun {
        -&self
    }
}

impl fmt::Display for LatticeFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.model.kind() {
            CoordKind::AdditiveX => "x",
            CoordKind::AdditiveY => "y",
            CoordKind::MultiplicativeT => "t",
            CoordKind::MultiplicativeZ => "z",
        };
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .poly
            .terms()
            .map(|(k, s)| format!("({}){}^{}", crate::scalar::format_gauss(s), v, k))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Product of a list of lattice functions (the empty product is `one`).
pub fn product<'a, I: IntoIterator<Item = &'a LatticeFun>>(model: &CoordModel, it: I) -> LatticeFun {
    let mut acc = model.one();
    for f in it {
        acc = &acc * f;
    }
    acc
}

/// Quotient of lattice functions with a monic denominator.
#[derive(Clone, Debug)]
pub struct LatticeRat {
    pub num: LatticeFun,
    pub den: LatticeFun,
}

impl LatticeRat {
    pub fn new(num: LatticeFun, den: LatticeFun) -> Result<LatticeRat> {
        let lead = den.poly.lead().cloned().ok_or(MiopError::NonExactDivision)?;
        let inv = g(Rational::one()) / lead;
        Ok(LatticeRat { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn from_fun(f: LatticeFun) -> LatticeRat {
        let den = f.model.one();
        LatticeRat { num: f, den }
    }

    pub fn model(&self) -> &CoordModel {
        &self.num.model
    }

    pub fn mul(&self, o: &LatticeRat) -> LatticeRat {
        LatticeRat::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn mul_fun(&self, f: &LatticeFun) -> LatticeRat {
        LatticeRat { num: &self.num * f, den: self.den.clone() }
    }

    pub fn div(&self, o: &LatticeRat) -> Result<LatticeRat> {
        LatticeRat::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn add(&self, o: &LatticeRat) -> LatticeRat {
        LatticeRat::new(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den).unwrap()
    }

    pub fn sub(&self, o: &LatticeRat) -> LatticeRat {
        LatticeRat::new(&self.num * &o.den - &o.num * &self.den, &self.den * &o.den).unwrap()
    }

    pub fn scale(&self, c: &GaussScalar) -> LatticeRat {
        LatticeRat { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn shift(&self, c: &Rational) -> Result<LatticeRat> {
        LatticeRat::new(self.num.shift(c)?, self.den.shift(c)?)
    }

    pub fn sh(&self, k: i64) -> LatticeRat {
        self.shift(&Rational::from_integer(BigInt::from(k))).unwrap()
    }

    pub fn sh_half(&self, h: i64) -> LatticeRat {
        self.shift(&Rational::new(BigInt::from(h), BigInt::from(2))).unwrap()
    }

    pub fn star(&self) -> Result<LatticeRat> {
        LatticeRat::new(self.num.star()?, self.den.star()?)
    }

    pub fn pow(&self, n: u32) -> LatticeRat {
        LatticeRat::new(self.num.pow(n), self.den.pow(n)).unwrap()
    }

    /// Exact polynomial value, or `NonExactDivision`.
    pub fn to_fun(&self) -> Result<LatticeFun> {
        self.num.div_exact(&self.den)
    }

    pub fn eval_at(&self, x: &Rational) -> Result<GaussScalar> {
        let d = self.den.eval_at(x)?;
        if d.is_zero() {
            return Err(MiopError::NonExactDivision);
        }
        Ok(self.num.eval_at(x)? / d)
    }

    pub fn eval_origin(&self) -> Result<GaussScalar> {
        let d = self.den.eval_origin();
        if d.is_zero() {
            return Err(MiopError::NonExactDivision);
        }
        Ok(self.num.eval_origin() / d)
    }

    pub fn eval_imag(&self, c: &Rational) -> Result<GaussScalar> {
        self.shift(c)?.eval_origin()
    }

    /// Equality as rational functions.
    pub fn same_as(&self, o: &LatticeRat) -> bool {
        (&self.num * &o.den) == (&o.num * &self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gr, rat};

    #[test]
    fn z_shift_example() {
        let m = CoordModel::multiplicative_z(rat(1, 4));
        let z = m.var();
        // x -> x + i gamma / 2 maps z to z q^{-1/2} = 2z when q = 1/4
        assert_eq!(z.shift(&rat(1, 2)).unwrap(), z.scale(&gr(2, 1)));
    }

    #[test]
    fn star_examples() {
        let m = CoordModel::multiplicative_z(rat(1, 4));
        let f = &m.var() + &m.monomial(imag_unit(), -1);
        let want = &m.monomial(gr(1, 1), -1) - &m.monomial(imag_unit(), 1);
        assert_eq!(f.star().unwrap(), want);
        let my = CoordModel::additive_y();
        let x = my.x_fun();
        // x is real, so x* = x
        assert_eq!(x.star().unwrap(), x);
        let ix = x.scale(&imag_unit());
        assert_eq!(ix.star().unwrap(), -&ix);
    }

    #[test]
    fn t_shift_needs_half_integers() {
        let m = CoordModel::multiplicative_t(rat(1, 4));
        assert!(m.var().shift(&rat(1, 3)).is_err());
        assert_eq!(m.var().sh(1), m.var().scale(&gr(1, 4)));
    }
}
