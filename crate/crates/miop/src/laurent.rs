//! Dense Laurent polynomials over a generic scalar field.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{pow_i, Scalar};

/// `c[k]` is the coefficient of `v^(lo + k)`. The zero polynomial has empty `c`;
/// otherwise the first and last coefficients are nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent<S> {
    lo: i64,
    c: Vec<S>,
}

impl<S: Scalar> Laurent<S> {
    pub fn zero() -> Self {
        Laurent { lo: 0, c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(s: S) -> Self {
        Self::monomial(s, 0)
    }

    pub fn monomial(s: S, k: i64) -> Self {
        Self::from_coeffs(k, vec![s])
    }

    /// `v - root`-style linear factor `a + b v`.
    pub fn linear(a: S, b: S) -> Self {
        Self::from_coeffs(0, vec![a, b])
    }

    pub fn from_coeffs(lo: i64, c: Vec<S>) -> Self {
        let mut p = Laurent { lo, c };
        p.normalize();
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, S)>>(terms: I) -> Self {
        let mut acc = Self::zero();
        for (k, s) in terms {
            acc = &acc + &Self::monomial(s, k);
        }
        acc
    }

    fn normalize(&mut self) {
        while matches!(self.c.last(), Some(x) if x.is_zero()) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.lo += lead as i64;
        }
        if self.c.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lo(&self) -> Option<i64> {
        (!self.c.is_empty()).then_some(self.lo)
    }

    pub fn hi(&self) -> Option<i64> {
        (!self.c.is_empty()).then(|| self.lo + self.c.len() as i64 - 1)
    }

    pub fn is_polynomial(&self) -> bool {
        self.lo().map_or(true, |l| l >= 0)
    }

    pub fn coeff(&self, k: i64) -> S {
        let idx = k - self.lo;
        if idx < 0 || idx >= self.c.len() as i64 {
            S::zero()
        } else {
            self.c[idx as usize].clone()
        }
    }

    pub fn lead(&self) -> Option<&S> {
        self.c.last()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(move |(k, s)| (self.lo + k as i64, s))
    }

    pub fn map<F: Fn(i64, &S) -> S>(&self, f: F) -> Self {
        let c = self.c.iter().enumerate().map(|(k, s)| f(self.lo + k as i64, s)).collect();
        Self::from_coeffs(self.lo, c)
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|_, x| x.clone() * s.clone())
    }

    /// Multiplication by `v^k`.
    pub fn shift_exp(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Laurent { lo: self.lo + k, c: self.c.clone() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, v: &S) -> S {
        let mut acc = S::zero();
        for s in self.c.iter().rev() {
            acc = acc * v.clone() + s.clone();
        }
        acc * pow_i(v, self.lo)
    }

    /// `p(v + a)`; only for ordinary polynomials.
    pub fn taylor_shift(&self, a: &S) -> Option<Self> {
        if !self.is_polynomial() {
            return None;
        }
        let lin = Self::linear(a.clone(), S::one());
        let mut acc = Self::zero();
        let hi = match self.hi() {
            Some(h) => h,
            None => return Some(Self::zero()),
        };
        for k in (0..=hi).rev() {
            acc = &(&acc * &lin) + &Self::constant(self.coeff(k));
        }
        Some(acc)
    }

    /// `p(m v)`.
    pub fn scale_var(&self, m: &S) -> Self {
        self.map(|k, s| s.clone() * pow_i(m, k))
    }

    /// `p(1/v)`.
    pub fn reflect(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.c.clone();
        c.reverse();
        Laurent { lo: -self.hi().unwrap(), c }
    }

    /// Exact quotient `self / d`, `None` if the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // strip monomial factors, then ordinary long division from the top
        let (nlo, dlo) = (self.lo, d.lo);
        let mut rem: Vec<S> = self.c.clone();
        let dc = &d.c;
        let dl = dc.len();
        if rem.len() < dl {
            return None;
        }
        let lead = dc[dl - 1].clone();
        let qlen = rem.len() - dl + 1;
        let mut q = vec![S::zero(); qlen];
        for i in (0..qlen).rev() {
            let t = rem[i + dl - 1].clone() / lead.clone();
            if !t.is_zero() {
                for (j, dj) in dc.iter().enumerate() {
                    rem[i + j] = rem[i + j].clone() - t.clone() * dj.clone();
                }
            }
            q[i] = t;
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(nlo - dlo, q))
    }
}

impl<'a, S: Scalar> Add<&'a Laurent<S>> for &'a Laurent<S> {
    type Output = Laurent<S>;
    fn add(self, o: &Laurent<S>) -> Laurent<S> {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = self.hi().unwrap().max(o.hi().unwrap());
        let c = (lo..=hi).map(|k| self.coeff(k) + o.coeff(k)).collect();
        Laurent::from_coeffs(lo, c)
    }
}

impl<'a, S: Scalar> Sub<&'a Laurent<S>> for &'a Laurent<S> {
    type Output = Laurent<S>;
    fn sub(self, o: &Laurent<S>) -> Laurent<S> {
        self + &(-o)
    }
}

impl<S: Scalar> Neg for &Laurent<S> {
    type Output = Laurent<S>;
    fn neg(self) -> Laurent<S> {
        Laurent { lo: self.lo, c: self.c.iter().map(|x| -x.clone()).collect() }
    }
}

impl<'a, S: Scalar> Mul<&'a Laurent<S>> for &'a Laurent<S> {
    type Output = Laurent<S>;
    fn mul(self, o: &Laurent<S>) -> Laurent<S> {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        let mut c = vec![S::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Laurent::from_coeffs(self.lo + o.lo, c)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr<Laurent<S>> for Laurent<S> {
            type Output = Laurent<S>;
            fn $m(self, o: Laurent<S>) -> Laurent<S> {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
