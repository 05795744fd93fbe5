//! Difference operators as finite sums `sum_k c_k(x) f(x + s_k)` and the forward,
//! backward and Hamiltonian operators of both kinds of quantum mechanics.
//!
//! Steps follow `LatticeFun::shift`: `e^{d/dx}` is step `+1`; `e^{gamma p/2}` is
//! step `-1/2`.

use num_traits::One;

use crate::error::Result;
use crate::families::FamilySpec;
use crate::lattice::{LatticeFun, LatticeRat};
use crate::scalar::{g, gi, imag_unit, rat, GaussScalar, Rational};

#[derive(Clone, Debug)]
pub struct ShiftOperator {
    pub terms: Vec<(LatticeRat, Rational)>,
}

impl ShiftOperator {
    pub fn apply_rat(&self, f: &LatticeFun) -> Result<LatticeRat> {
        let mut acc: Option<LatticeRat> = None;
        for (c, s) in &self.terms {
            let term = c.mul_fun(&f.shift(s)?);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        Ok(acc.unwrap_or_else(|| LatticeRat::from_fun(f.model.zero())))
    }

    /// Apply to a polynomial; the result must again be a polynomial.
    pub fn apply(&self, f: &LatticeFun) -> Result<LatticeFun> {
        self.apply_rat(f)?.to_fun()
    }

    /// `self * other` (other acts first).
    pub fn compose(&self, other: &ShiftOperator) -> Result<ShiftOperator> {
        let mut terms = Vec::new();
        for (c2, s2) in &self.terms {
            for (c1, s1) in &other.terms {
                terms.push((c2.mul(&c1.shift(s2)?), s1 + s2));
            }
        }
        Ok(ShiftOperator { terms })
    }

    pub fn scale(&self, c: &GaussScalar) -> ShiftOperator {
        ShiftOperator { terms: self.terms.iter().map(|(k, s)| (k.scale(c), s.clone())).collect() }
    }
}

fn rat_of(f: LatticeFun) -> LatticeRat {
    LatticeRat::from_fun(f)
}

fn step(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `B(0; lambda)` as a number.
pub fn b_at_zero(spec: &FamilySpec) -> Result<Rational> {
    Ok(spec.b_fn().eval_at(&step(0))?.re)
}

/// rdQM forward shift `F = B(0) varphi^{-1} (1 - e^{d/dx})`.
pub fn rd_forward(spec: &FamilySpec) -> Result<ShiftOperator> {
    let b0 = g(b_at_zero(spec)?);
    let c = LatticeRat::new(spec.model.constant(b0), spec.phi())?;
    Ok(ShiftOperator { terms: vec![(c.clone(), step(0)), (c.scale(&gi(-1)), step(1))] })
}

/// rdQM backward shift `B = B(0)^{-1} (B(x) - D(x) e^{-d/dx}) varphi(x)`.
pub fn rd_backward(spec: &FamilySpec) -> Result<ShiftOperator> {
    let inv = g(Rational::one() / b_at_zero(spec)?);
    let phi = spec.phi();
    let t0 = spec.b_fn().mul_fun(&phi).scale(&inv);
    let t1 = spec.d_fn().mul_fun(&phi.sh(-1)).scale(&-inv);
    Ok(ShiftOperator { terms: vec![(t0, step(0)), (t1, step(-1))] })
}

/// rdQM `H~ = B (1 - e^{d/dx}) + D (1 - e^{-d/dx})`.
pub fn rd_hamiltonian(spec: &FamilySpec) -> ShiftOperator {
    let (b, d) = (spec.b_fn(), spec.d_fn());
    ShiftOperator {
        terms: vec![(b.add(&d), step(0)), (b.scale(&gi(-1)), step(1)), (d.scale(&gi(-1)), step(-1))],
    }
}

/// idQM forward shift `F = i varphi^{-1} (e^{gamma p/2} - e^{-gamma p/2})`.
pub fn id_forward(spec: &FamilySpec) -> Result<ShiftOperator> {
    let c = LatticeRat::new(spec.model.constant(imag_unit()), spec.phi())?;
    Ok(ShiftOperator { terms: vec![(c.clone(), rat(-1, 2)), (c.scale(&gi(-1)), rat(1, 2))] })
}

/// idQM backward shift `B = -i (V e^{gamma p/2} - V* e^{-gamma p/2}) varphi`.
pub fn id_backward(spec: &FamilySpec) -> Result<ShiftOperator> {
    let v = spec.v_fn();
    let vs = v.star()?;
    let phi = spec.phi();
    let t0 = v.mul_fun(&phi.sh_half(-1)).scale(&-imag_unit());
    let t1 = vs.mul_fun(&phi.sh_half(1)).scale(&imag_unit());
    Ok(ShiftOperator { terms: vec![(t0, rat(-1, 2)), (t1, rat(1, 2))] })
}

/// idQM `H~ = V (e^{gamma p} - 1) + V* (e^{-gamma p} - 1)`.
pub fn id_hamiltonian(spec: &FamilySpec) -> Result<ShiftOperator> {
    let v = spec.v_fn();
    let vs = v.star()?;
    Ok(ShiftOperator {
        terms: vec![(v.clone(), step(-1)), (vs.clone(), step(1)), (v.add(&vs).scale(&gi(-1)), step(0))],
    })
}

pub fn forward(spec: &FamilySpec) -> Result<ShiftOperator> {
    if spec.id.is_idqm() {
        id_forward(spec)
    } else {
        rd_forward(spec)
    }
}

pub fn backward(spec: &FamilySpec) -> Result<ShiftOperator> {
    if spec.id.is_idqm() {
        id_backward(spec)
    } else {
        rd_backward(spec)
    }
}

pub fn hamiltonian(spec: &FamilySpec) -> Result<ShiftOperator> {
    if spec.id.is_idqm() {
        id_hamiltonian(spec)
    } else {
        Ok(rd_hamiltonian(spec))
    }
}

/// Multiplication operator.
pub fn mult(f: LatticeFun) -> ShiftOperator {
    ShiftOperator { terms: vec![(rat_of(f), step(0))] }
}
