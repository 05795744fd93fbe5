//! Data of the seven families: Hamiltonian coefficients, spectra, sinusoidal
//! coordinates, eigenpolynomials, twists and virtual-state constants.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{MiopError, Result};
use crate::lattice::{product, CoordModel, LatticeFun, LatticeRat};
use crate::scalar::{g, gi, imag_unit, pow_i, rat, rint, sqrt_exact, GaussScalar, Rational};
use crate::special::{poch, poch_var, qpoch, qpoch_var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    M,
    LqL,
    LqJ,
    R,
    QR,
    W,
    AW,
}

impl FamilyId {
    pub const ALL: [FamilyId; 7] =
        [FamilyId::M, FamilyId::LqL, FamilyId::LqJ, FamilyId::R, FamilyId::QR, FamilyId::W, FamilyId::AW];
    pub const RDQM: [FamilyId; 5] = [FamilyId::M, FamilyId::LqL, FamilyId::LqJ, FamilyId::R, FamilyId::QR];

    pub fn code(self) -> &'static str {
        match self {
            FamilyId::M => "M",
            FamilyId::LqL => "lqL",
            FamilyId::LqJ => "lqJ",
            FamilyId::R => "R",
            FamilyId::QR => "qR",
            FamilyId::W => "W",
            FamilyId::AW => "AW",
        }
    }

    pub fn parse(s: &str) -> Result<FamilyId> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.code().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| MiopError::Config(format!("unknown family `{s}`")))
    }

    pub fn is_idqm(self) -> bool {
        matches!(self, FamilyId::W | FamilyId::AW)
    }

    /// Parameters enter as `q^lambda`.
    pub fn is_q(self) -> bool {
        matches!(self, FamilyId::LqL | FamilyId::LqJ | FamilyId::QR | FamilyId::AW)
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            FamilyId::M => &["beta", "c"],
            FamilyId::LqL => &["a"],
            FamilyId::LqJ => &["a", "b"],
            FamilyId::R | FamilyId::QR => &["a", "b", "c", "d"],
            FamilyId::W | FamilyId::AW => &["a1", "a2", "a3", "a4"],
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Virtual-state type; rdQM families only use `I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VType {
    I,
    II,
}

impl VType {
    pub fn other(self) -> VType {
        match self {
            VType::I => VType::II,
            VType::II => VType::I,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            VType::I => "I",
            VType::II => "II",
        }
    }

    /// Index pair carrying the type's own parameters (`0,1` for I, `2,3` for II).
    fn pair(self) -> (usize, usize) {
        match self {
            VType::I => (0, 1),
            VType::II => (2, 3),
        }
    }
}

/// Parameter values (`lambda`, or `q^lambda` for q-families) with optional
/// square roots `rho_1 = (a1 a2 / q)^(1/2)`, `rho_2 = (a3 a4 / q)^(1/2)` for AW.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub v: Vec<Rational>,
    pub rho: Option<[Rational; 2]>,
}

#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub id: FamilyId,
    pub model: CoordModel,
    pub params: Params,
    /// Lattice size `N` for finite families.
    pub size: Option<i64>,
}

fn inad(msg: impl Into<String>) -> MiopError {
    MiopError::Inadmissible(msg.into())
}

fn in_open(x: &Rational, lo: &Rational, hi: &Rational) -> bool {
    lo < x && x < hi
}

/// Build a family after checking the admissible ranges.
pub fn make_family(id: FamilyId, q: Option<Rational>, v: Vec<Rational>, rho: Option<[Rational; 2]>) -> Result<FamilySpec> {
    if v.len() != id.param_names().len() {
        return Err(inad(format!("{} expects {} parameters", id, id.param_names().len())));
    }
    let zero = Rational::zero();
    let one = Rational::one();
    let model = if id.is_q() {
        let q = q.ok_or_else(|| inad("q is required"))?;
        if !in_open(&q, &zero, &one) {
            return Err(inad("0 < q < 1 required"));
        }
        if id == FamilyId::AW {
            if sqrt_exact(&q).is_none() {
                return Err(inad("AW needs q with a rational square root"));
            }
            CoordModel::multiplicative_z(q)
        } else {
            CoordModel::multiplicative_t(q)
        }
    } else {
        match id {
            FamilyId::W => CoordModel::additive_y(),
            _ => CoordModel::additive_x(),
        }
    };
    let qv = model.q();
    let mut size = None;
    match id {
        FamilyId::M => {
            if !(v[0] > zero && in_open(&v[1], &zero, &one)) {
                return Err(inad("M needs beta > 0 and 0 < c < 1"));
            }
        }
        FamilyId::LqL => {
            let q = qv.clone().unwrap();
            if !in_open(&v[0], &zero, &(one.clone() / q)) {
                return Err(inad("lqL needs 0 < a < 1/q"));
            }
        }
        FamilyId::LqJ => {
            let q = qv.clone().unwrap();
            let qi = one.clone() / q;
            if !(in_open(&v[0], &zero, &qi) && v[1] < qi) {
                return Err(inad("lqJ needs 0 < a < 1/q and b < 1/q"));
            }
        }
        FamilyId::R => {
            let (a, b, c, d) = (&v[0], &v[1], &v[2], &v[3]);
            if !(a.is_integer() && a.is_negative()) {
                return Err(inad("R needs a = -N with N a positive integer"));
            }
            if !(in_open(d, &zero, &(a + b)) && in_open(c, &zero, &(d + &one))) {
                return Err(inad("R needs 0 < d < a + b and 0 < c < 1 + d"));
            }
            size = Some(i64::try_from(-a.to_integer()).map_err(|_| inad("N too large"))?);
        }
        FamilyId::QR => {
            let q = qv.clone().unwrap();
            let (a, b, c, d) = (&v[0], &v[1], &v[2], &v[3]);
            let n = (1..=64).find(|&n| &pow_i(&q, -n) == a).ok_or_else(|| inad("qR needs a = q^(-N)"))?;
            let ab = a * b;
            if !(zero < ab && ab < *d && *d < one && in_open(c, &(&q * d), &one)) {
                return Err(inad("qR needs 0 < ab < d < 1 and q d < c < 1"));
            }
            size = Some(n);
        }
        FamilyId::W => {
            if v.iter().any(|a| !a.is_positive()) {
                return Err(inad("W needs positive real parameters"));
            }
        }
        FamilyId::AW => {
            if v.iter().any(|a| a.abs() >= one) {
                return Err(inad("AW needs |a_i| < 1"));
            }
        }
    }
    if let Some(r) = &rho {
        if id != FamilyId::AW {
            return Err(inad("square-root witnesses only apply to AW"));
        }
        let q = qv.clone().unwrap();
        let want = [&v[0] * &v[1] / &q, &v[2] * &v[3] / &q];
        if &r[0] * &r[0] != want[0] || &r[1] * &r[1] != want[1] {
            return Err(inad("witness does not square to a_i a_j / q"));
        }
    }
    Ok(FamilySpec { id, model, params: Params { v, rho }, size })
}

/// The positive rational square roots for AW, when they exist.
pub fn split_witnesses(q: &Rational, v: &[Rational]) -> Option<[Rational; 2]> {
    let r1 = sqrt_exact(&(&v[0] * &v[1] / q))?;
    let r2 = sqrt_exact(&(&v[2] * &v[3] / q))?;
    Some([r1, r2])
}

fn r(n: i64) -> Rational {
    rint(n)
}

fn half(n: i64) -> Rational {
    rat(n, 2)
}

impl FamilySpec {
    pub fn p(&self, k: usize) -> &Rational {
        &self.params.v[k]
    }

    pub fn q(&self) -> Rational {
        self.model.q().expect("q-family")
    }

    fn qp(&self, k: i64) -> Rational {
        pow_i(&self.q(), k)
    }

    /// `q^(h/2)`.
    fn qh(&self, h: i64) -> Rational {
        self.model.q_half_pow(h).expect("half power of q")
    }

    pub fn with_params(&self, params: Params) -> FamilySpec {
        FamilySpec { id: self.id, model: self.model.clone(), params, size: self.size }
    }

    /// `lambda + e` for an exponent vector `e`.
    pub fn offset(&self, e: &[Rational]) -> FamilySpec {
        let mut v = self.params.v.clone();
        let mut rho = self.params.rho.clone();
        if self.id.is_q() {
            for (x, ei) in v.iter_mut().zip(e) {
                *x = &*x * self.model.q_pow(ei).expect("parameter shift");
            }
            // rho_k ~ q^((lambda_i + lambda_j - 1)/2) moves by q^((e_i + e_j)/2)
            rho = rho.and_then(|rr| {
                let h1 = (&e[0] + &e[1]).is_integer().then(|| (&e[0] + &e[1]).to_integer())?;
                let h2 = (&e[2] + &e[3]).is_integer().then(|| (&e[2] + &e[3]).to_integer())?;
                let h1 = i64::try_from(h1).ok()?;
                let h2 = i64::try_from(h2).ok()?;
                Some([
                    &rr[0] * self.model.q_half_pow(h1).ok()?,
                    &rr[1] * self.model.q_half_pow(h2).ok()?,
                ])
            });
        } else {
            for (x, ei) in v.iter_mut().zip(e) {
                *x = &*x + ei;
            }
        }
        self.with_params(Params { v, rho })
    }

    pub fn delta(&self) -> Vec<Rational> {
        match self.id {
            FamilyId::M => vec![r(1), r(0)],
            FamilyId::LqL => vec![r(1)],
            FamilyId::LqJ => vec![r(1), r(1)],
            FamilyId::R | FamilyId::QR => vec![r(1); 4],
            FamilyId::W | FamilyId::AW => vec![half(1); 4],
        }
    }

    pub fn delta_tilde(&self, t: VType) -> Vec<Rational> {
        match (self.id, t) {
            (FamilyId::M, _) => vec![r(1), r(0)],
            (FamilyId::LqL, _) => vec![r(-1)],
            (FamilyId::LqJ, _) => vec![r(-1), r(1)],
            (FamilyId::R | FamilyId::QR, _) => vec![r(0), r(0), r(1), r(1)],
            (_, VType::I) => vec![half(-1), half(-1), half(1), half(1)],
            (_, VType::II) => vec![half(1), half(1), half(-1), half(-1)],
        }
    }

    /// `lambda + u delta`
    pub fn sd(&self, u: i64) -> FamilySpec {
        if u == 0 {
            return self.clone();
        }
        let e: Vec<Rational> = self.delta().iter().map(|x| x * r(u)).collect();
        self.offset(&e)
    }

    /// `lambda + u delta~`
    pub fn sdt(&self, t: VType, u: i64) -> FamilySpec {
        if u == 0 {
            return self.clone();
        }
        let e: Vec<Rational> = self.delta_tilde(t).iter().map(|x| x * r(u)).collect();
        self.offset(&e)
    }

    /// The twist.
    pub fn twist(&self, t: VType) -> FamilySpec {
        let v = &self.params.v;
        let one = Rational::one();
        let mut rho = self.params.rho.clone();
        let nv: Vec<Rational> = match self.id {
            FamilyId::M => vec![v[0].clone(), &one / &v[1]],
            FamilyId::LqL => vec![&one / &v[0]],
            FamilyId::LqJ => vec![&one / &v[0], v[1].clone()],
            FamilyId::R => vec![&v[3] - &v[0] + &one, &v[3] - &v[1] + &one, v[2].clone(), v[3].clone()],
            FamilyId::QR => {
                let dq = &v[3] * self.q();
                vec![&dq / &v[0], &dq / &v[1], v[2].clone(), v[3].clone()]
            }
            FamilyId::W | FamilyId::AW => {
                let (i, j) = t.pair();
                let mut nv = v.clone();
                for k in [i, j] {
                    nv[k] = if self.id == FamilyId::W { &one - &v[k] } else { self.q() / &v[k] };
                }
                if let Some(rr) = rho.as_mut() {
                    let k = if t == VType::I { 0 } else { 1 };
                    rr[k] = &one / &rr[k];
                }
                nv
            }
        };
        self.with_params(Params { v: nv, rho })
    }

    pub fn kappa(&self) -> Rational {
        match self.id {
            FamilyId::M | FamilyId::R | FamilyId::W => r(1),
            _ => Rational::one() / self.q(),
        }
    }

    fn x(&self) -> LatticeFun {
        self.model.x_fun()
    }

    fn c(&self, v: Rational) -> LatticeFun {
        self.model.real(v)
    }

    fn t(&self) -> LatticeFun {
        self.model.var()
    }

    fn tinv(&self) -> LatticeFun {
        self.model.monomial(gi(1), -1)
    }

    /// `1 - c v^e`
    fn one_minus(&self, c: Rational, e: i64) -> LatticeFun {
        &self.model.one() - &self.model.monomial(g(c), e)
    }

    /// `x + c` (additive models)
    fn xp(&self, c: Rational) -> LatticeFun {
        &self.x() + &self.c(c)
    }

    // ---------- rdQM ----------

    pub fn b_fn(&self) -> LatticeRat {
        let v = &self.params.v;
        match self.id {
            FamilyId::M => LatticeRat::from_fun(self.xp(v[0].clone()).scale_r(&v[1])),
            FamilyId::LqL => LatticeRat::from_fun(self.tinv().scale_r(&v[0])),
            FamilyId::LqJ => {
                let f = &self.tinv() - &self.c(&v[1] * self.q());
                LatticeRat::from_fun(f.scale_r(&v[0]))
            }
            FamilyId::R => {
                let (a, b, c, d) = (&v[0], &v[1], &v[2], &v[3]);
                let num = -(self.xp(a.clone()) * self.xp(b.clone()) * self.xp(c.clone()) * self.xp(d.clone()));
                let two_x = self.x().scale_r(&r(2));
                let den = (&two_x + &self.c(d.clone())) * (&two_x + &self.c(d + r(1)));
                LatticeRat::new(num, den).unwrap()
            }
            FamilyId::QR => {
                let num = -(v.iter().map(|a| self.one_minus(a.clone(), 1)).fold(self.model.one(), |acc, f| acc * f));
                let d = &v[3];
                let den = self.one_minus(d.clone(), 2) * self.one_minus(d * self.q(), 2);
                LatticeRat::new(num, den).unwrap()
            }
            _ => panic!("B is an rdQM coefficient"),
        }
    }

    pub fn d_fn(&self) -> LatticeRat {
        let v = &self.params.v;
        match self.id {
            FamilyId::M => LatticeRat::from_fun(self.x()),
            FamilyId::LqL | FamilyId::LqJ => LatticeRat::from_fun(&self.tinv() - &self.model.one()),
            FamilyId::R => {
                let (a, b, c, d) = (&v[0], &v[1], &v[2], &v[3]);
                let num = -(self.xp(d - a) * self.xp(d - b) * self.xp(d - c) * self.x());
                let two_x = self.x().scale_r(&r(2));
                let den = (&two_x + &self.c(d - r(1))) * (&two_x + &self.c(d.clone()));
                LatticeRat::new(num, den).unwrap()
            }
            FamilyId::QR => {
                let (a, b, c, d) = (&v[0], &v[1], &v[2], &v[3]);
                let dt = self.qr_dtilde();
                let num = (self.one_minus(d / a, 1)
                    * self.one_minus(d / b, 1)
                    * self.one_minus(d / c, 1)
                    * self.one_minus(r(1), 1))
                .scale_r(&-dt);
                let den = self.one_minus(d / self.q(), 2) * self.one_minus(d.clone(), 2);
                LatticeRat::new(num, den).unwrap()
            }
            _ => panic!("D is an rdQM coefficient"),
        }
    }

    fn qr_dtilde(&self) -> Rational {
        let v = &self.params.v;
        &v[0] * &v[1] * &v[2] / (&v[3] * self.q())
    }

    fn r_dtilde(&self) -> Rational {
        let v = &self.params.v;
        &v[0] + &v[1] + &v[2] - &v[3] - r(1)
    }

    fn b1(&self) -> Rational {
        self.params.v.iter().fold(Rational::zero(), |a, b| a + b)
    }

    fn b3(&self) -> Rational {
        let v = &self.params.v;
        &v[0] * &v[1] * &v[2] + &v[0] * &v[1] * &v[3] + &v[0] * &v[2] * &v[3] + &v[1] * &v[2] * &v[3]
    }

    fn b4(&self) -> Rational {
        self.params.v.iter().fold(Rational::one(), |a, b| a * b)
    }

    /// `E_n`
    pub fn energy(&self, n: i64) -> Rational {
        let v = &self.params.v;
        let nn = r(n);
        match self.id {
            FamilyId::M => (r(1) - &v[1]) * nn,
            FamilyId::LqL => self.qp(-n) - r(1),
            FamilyId::LqJ => (self.qp(-n) - r(1)) * (r(1) - &v[0] * &v[1] * self.qp(n + 1)),
            FamilyId::R => &nn * (&nn + self.r_dtilde()),
            FamilyId::QR => (self.qp(-n) - r(1)) * (r(1) - self.qr_dtilde() * self.qp(n)),
            FamilyId::W => &nn * (&nn + self.b1() - r(1)),
            FamilyId::AW => (self.qp(-n) - r(1)) * (r(1) - self.b4() * self.qp(n - 1)),
        }
    }

    /// `eta(x)`
    pub fn eta(&self) -> LatticeFun {
        let v = &self.params.v;
        match self.id {
            FamilyId::M => self.x(),
            FamilyId::LqL | FamilyId::LqJ => &self.model.one() - &self.t(),
            FamilyId::R => &self.x() * &self.xp(v[3].clone()),
            FamilyId::QR => (&self.tinv() - &self.model.one()) * self.one_minus(v[3].clone(), 1),
            FamilyId::W => &self.x() * &self.x(),
            FamilyId::AW => (&self.t() + &self.tinv()).scale_r(&half(1)),
        }
    }

    /// `varphi(x)`
    pub fn phi(&self) -> LatticeFun {
        let v = &self.params.v;
        match self.id {
            FamilyId::M => self.model.one(),
            FamilyId::LqL | FamilyId::LqJ => self.t(),
            FamilyId::R => {
                let d = &v[3];
                (&self.x().scale_r(&r(2)) + &self.c(d + r(1))).scale_r(&(r(1) / (d + r(1))))
            }
            FamilyId::QR => {
                let dq = &v[3] * self.q();
                (&self.tinv() - &self.t().scale_r(&dq)).scale_r(&(r(1) / (r(1) - dq)))
            }
            FamilyId::W => self.x().scale_r(&r(2)),
            FamilyId::AW => (&self.t() - &self.tinv()).scale(&-imag_unit()),
        }
    }

    /// `P-check_n(x)`; zero for negative `n`.
    pub fn p_check(&self, n: i64) -> LatticeFun {
        let m = &self.model;
        if n < 0 {
            return m.zero();
        }
        let v = &self.params.v;
        let mut acc = m.zero();
        match self.id {
            FamilyId::M => {
                let (beta, c) = (&v[0], &v[1]);
                let z = r(1) - r(1) / c;
                for k in 0..=n {
                    let coef = poch(&r(-n), k) / (poch(beta, k) * poch(&r(1), k)) * pow_i(&z, k);
                    // (-x)_k
                    let px = product(m, &(0..k).map(|i| &self.c(r(i)) - &self.x()).collect::<Vec<_>>());
                    acc = &acc + &px.scale_r(&coef);
                }
            }
            FamilyId::LqL | FamilyId::LqJ => {
                let q = self.q();
                let a = &v[0];
                for k in 0..=n {
                    let mut coef = qpoch(&self.qp(-n), &q, k) / qpoch(&q, &q, k);
                    if self.id == FamilyId::LqJ {
                        let b = &v[1];
                        coef = coef * qpoch(&(a * b * self.qp(n + 1)), &q, k) / qpoch(&(b * &q), &q, k);
                    }
                    // [(-1)^k q^(k(k-1)/2)]^(-1) (t/a)^k (1/t; q)_k = ... prod (t - q^i)
                    let sign = if k % 2 == 0 { r(1) } else { r(-1) };
                    coef = coef * sign * self.qp(-k * (k - 1) / 2) * pow_i(a, -k);
                    let pt = product(m, &(0..k).map(|i| &self.t() - &self.c(self.qp(i))).collect::<Vec<_>>());
                    acc = &acc + &pt.scale_r(&coef);
                }
            }
            FamilyId::R => {
                let (a, b, c, d) = (&v[0], &v[1], &v[2], &v[3]);
                let dt = self.r_dtilde();
                for k in 0..=n {
                    let coef = poch(&r(-n), k) * poch(&(r(n) + &dt), k)
                        / (poch(a, k) * poch(b, k) * poch(c, k) * poch(&r(1), k));
                    let px = product(m, &(0..k).map(|i| &self.c(r(i)) - &self.x()).collect::<Vec<_>>())
                        * poch_var(m, &g(d.clone()), 1, k);
                    acc = &acc + &px.scale_r(&coef);
                }
            }
            FamilyId::QR => {
                let q = self.q();
                let (a, b, c, d) = (&v[0], &v[1], &v[2], &v[3]);
                let dt = self.qr_dtilde();
                for k in 0..=n {
                    let coef = qpoch(&self.qp(-n), &q, k) * qpoch(&(&dt * self.qp(n)), &q, k) * self.qp(k)
                        / (qpoch(a, &q, k) * qpoch(b, &q, k) * qpoch(c, &q, k) * qpoch(&q, &q, k));
                    let pt = qpoch_var(m, &r(1), -1, k) * qpoch_var(m, d, 1, k);
                    acc = &acc + &pt.scale_r(&coef);
                }
            }
            FamilyId::W => {
                let a1 = &v[0];
                let b1 = self.b1();
                for k in 0..=n {
                    let mut coef = poch(&r(-n), k) * poch(&(r(n) + &b1 - r(1)), k) / poch(&r(1), k);
                    for j in 1..4 {
                        coef = coef * poch(&(a1 + &v[j] + r(k)), n - k);
                    }
                    // (a1 + i x)_k (a1 - i x)_k with y = i x
                    let py = poch_var(m, &g(a1.clone()), 1, k) * poch_var(m, &g(a1.clone()), -1, k);
                    acc = &acc + &py.scale_r(&coef);
                }
            }
            FamilyId::AW => {
                let q = self.q();
                let a1 = &v[0];
                let b4 = self.b4();
                for k in 0..=n {
                    let mut coef = pow_i(a1, -n) * qpoch(&self.qp(-n), &q, k) * qpoch(&(&b4 * self.qp(n - 1)), &q, k)
                        * self.qp(k)
                        / qpoch(&q, &q, k);
                    for j in 1..4 {
                        coef = coef * qpoch(&(a1 * &v[j] * self.qp(k)), &q, n - k);
                    }
                    let pz = qpoch_var(m, a1, 1, k) * qpoch_var(m, a1, -1, k);
                    acc = &acc + &pz.scale_r(&coef);
                }
            }
        }
        acc
    }

    /// Virtual state polynomial `xi_v(x) = P_v(x; twist lambda)`.
    pub fn xi(&self, v: i64, t: VType) -> LatticeFun {
        self.twist(t).p_check(v)
    }

    /// Virtual energy.
    pub fn e_tilde(&self, v: i64, t: VType) -> Rational {
        let p = &self.params.v;
        let vv = r(v);
        match self.id {
            FamilyId::M => -(r(1) - &p[1]) * (&vv + &p[0]),
            FamilyId::LqL => -(r(1) - &p[0] * self.qp(-v)),
            FamilyId::LqJ => -(r(1) - &p[0] * self.qp(-v)) * (r(1) - &p[1] * self.qp(v + 1)),
            FamilyId::R => -(&p[2] + &vv) * (&p[0] + &p[1] - &p[3] - &vv - r(1)),
            FamilyId::QR => -(r(1) - &p[2] * self.qp(v)) * (r(1) - &p[0] * &p[1] / &p[3] * self.qp(-v - 1)),
            FamilyId::W => {
                let (i, j) = t.pair();
                let (k, l) = t.other().pair();
                -(&p[i] + &p[j] - &vv - r(1)) * (&p[k] + &p[l] + &vv)
            }
            FamilyId::AW => {
                let (i, j) = t.pair();
                let (k, l) = t.other().pair();
                -(r(1) - &p[i] * &p[j] * self.qp(-v - 1)) * (r(1) - &p[k] * &p[l] * self.qp(v))
            }
        }
    }

    pub fn alpha(&self, t: VType) -> Rational {
        let p = &self.params.v;
        match self.id {
            FamilyId::M => p[1].clone(),
            FamilyId::LqL | FamilyId::LqJ => p[0].clone(),
            FamilyId::R | FamilyId::W => r(1),
            FamilyId::QR => &p[0] * &p[1] / (&p[3] * self.q()),
            FamilyId::AW => {
                let (i, j) = t.pair();
                &p[i] * &p[j] / self.q()
            }
        }
    }

    pub fn alpha_prime(&self, t: VType) -> Rational {
        let p = &self.params.v;
        match self.id {
            FamilyId::M => -(r(1) - &p[1]) * &p[0],
            FamilyId::LqL => -(r(1) - &p[0]),
            FamilyId::LqJ => -(r(1) - &p[0]) * (r(1) - &p[1] * self.q()),
            FamilyId::R => -&p[2] * (&p[0] + &p[1] - &p[3] - r(1)),
            FamilyId::QR => -(r(1) - &p[2]) * (r(1) - &p[0] * &p[1] / (&p[3] * self.q())),
            FamilyId::W => {
                let (i, j) = t.pair();
                let (k, l) = t.other().pair();
                -(&p[i] + &p[j] - r(1)) * (&p[k] + &p[l])
            }
            FamilyId::AW => {
                let (i, j) = t.pair();
                let (k, l) = t.other().pair();
                -(r(1) - &p[i] * &p[j] / self.q()) * (r(1) - &p[k] * &p[l])
            }
        }
    }

    /// `alpha^(h/2)`; odd `h` needs the AW witnesses.
    pub fn alpha_half_pow(&self, t: VType, h: i64) -> Result<Rational> {
        if h % 2 == 0 {
            return Ok(pow_i(&self.alpha(t), h / 2));
        }
        match self.id {
            FamilyId::W | FamilyId::R => Ok(r(1)),
            FamilyId::AW => {
                let rr = self
                    .params
                    .rho
                    .as_ref()
                    .ok_or_else(|| MiopError::MissingWitness("AW alpha^(1/2) needs rho_1, rho_2".into()))?;
                let k = if t == VType::I { 0 } else { 1 };
                Ok(pow_i(&rr[k], h))
            }
            _ => Err(MiopError::Unsupported(format!("alpha^(1/2) for {}", self.id))),
        }
    }

    /// `nu(x)` at a lattice point, closed form.
    pub fn nu_at(&self, x: i64) -> Rational {
        let p = &self.params.v;
        match self.id {
            FamilyId::M => pow_i(&p[1], x),
            FamilyId::LqL | FamilyId::LqJ => pow_i(&p[0], x),
            FamilyId::R => {
                let (a, b, d) = (&p[0], &p[1], &p[3]);
                poch(&(r(1) - a - r(x)), x) * poch(b, x) / (poch(&(d - a + r(1)), x) * poch(&(b - d - r(x)), x))
            }
            FamilyId::QR => {
                let q = self.q();
                let (a, b, d) = (&p[0], &p[1], &p[3]);
                qpoch(&(self.qp(1 - x) / a), &q, x) * qpoch(b, &q, x)
                    / (qpoch(&(d * &q / a), &q, x) * qpoch(&(b / d * self.qp(-x)), &q, x))
            }
            _ => panic!("nu closed form is an rdQM datum"),
        }
    }

    /// `phi_0(x)^2` from the product of `B(y)/D(y+1)`.
    pub fn phi0_sq_at(&self, x: i64) -> Result<Rational> {
        let (b, d) = (self.b_fn(), self.d_fn());
        let mut acc = GaussScalar::one();
        for y in 0..x {
            acc = acc * b.eval_at(&r(y))? / d.eval_at(&r(y + 1))?;
        }
        Ok(acc.re)
    }

    /// `r_j(x + j - 1; lambda, M)` as a function of `x`.
    pub fn r_j(&self, j: i64, mm: i64) -> LatticeFun {
        let p = &self.params.v;
        let m = &self.model;
        match self.id {
            FamilyId::M => self.c(pow_i(&p[1], j - 1)),
            FamilyId::LqL | FamilyId::LqJ => m.monomial(g(pow_i(&p[0], j - 1)), mm),
            FamilyId::R => {
                let (a, b, d) = (&p[0], &p[1], &p[3]);
                let num = poch_var(m, &g(a.clone()), 1, j - 1)
                    * poch_var(m, &g(b.clone()), 1, j - 1)
                    * poch_var(m, &g(d - a + r(j)), 1, mm + 1 - j)
                    * poch_var(m, &g(d - b + r(j)), 1, mm + 1 - j);
                num.scale_r(&(r(1) / (poch(&(d - a + r(1)), mm) * poch(&(d - b + r(1)), mm))))
            }
            FamilyId::QR => {
                let q = self.q();
                let (a, b, d) = (&p[0], &p[1], &p[3]);
                let num = qpoch_var(m, a, 1, j - 1)
                    * qpoch_var(m, b, 1, j - 1)
                    * qpoch_var(m, &(d / a * self.qp(j)), 1, mm + 1 - j)
                    * qpoch_var(m, &(d / b * self.qp(j)), 1, mm + 1 - j);
                let cst = pow_i(&(a * b / (d * &q)), j - 1)
                    * qpoch(&(d * &q / a), &q, mm)
                    * qpoch(&(d * &q / b), &q, mm);
                num.shift_mono(-mm).scale_r(&(r(1) / cst))
            }
            _ => panic!("rdQM r_j"),
        }
    }

    /// `varphi_M(x)` as the product of divided differences of `eta`.
    pub fn phi_m(&self, mm: i64) -> Result<LatticeFun> {
        if self.id.is_idqm() {
            return self.phi_m_id(mm);
        }
        let eta = self.eta();
        let mut acc = self.model.one();
        for j in 1..=mm {
            for k in (j + 1)..=mm {
                let num = &eta.sh(k - 1) - &eta.sh(j - 1);
                let den = eta.eval_at(&r(k - j))?;
                acc = &acc * &num.scale(&(gi(1) / den));
            }
        }
        Ok(acc)
    }

    // ---------- idQM ----------

    /// `V(x)`
    pub fn v_fn(&self) -> LatticeRat {
        let p = &self.params.v;
        let m = &self.model;
        match self.id {
            FamilyId::W => {
                let y = m.var();
                let num = product(m, &p.iter().map(|a| &y + &self.c(a.clone())).collect::<Vec<_>>());
                let two_y = y.scale_r(&r(2));
                let den = &two_y * &(&two_y + &m.one());
                LatticeRat::new(num, den).unwrap()
            }
            FamilyId::AW => {
                let num = product(m, &p.iter().map(|a| self.one_minus(a.clone(), 1)).collect::<Vec<_>>());
                let den = self.one_minus(r(1), 2) * self.one_minus(self.q(), 2);
                LatticeRat::new(num, den).unwrap()
            }
            _ => panic!("V is an idQM potential"),
        }
    }

    /// `f_n`
    pub fn f_n(&self, n: i64) -> Rational {
        match self.id {
            FamilyId::W => -self.energy(n),
            FamilyId::AW => self.qh(n) * self.energy(n),
            _ => panic!("idQM f_n"),
        }
    }

    /// `b_k`, so that `b_{n-1}` pairs with `f_n`.
    pub fn b_n(&self, k: i64) -> Rational {
        match self.id {
            FamilyId::W => r(-1),
            FamilyId::AW => self.qh(-(k + 1)),
            _ => panic!("idQM b_n"),
        }
    }

    /// `f~_v`
    pub fn f_tilde(&self, v: i64, t: VType) -> Result<Rational> {
        let p = &self.params.v;
        let (i, j) = t.pair();
        let core = match self.id {
            FamilyId::W => &p[i] + &p[j] - r(v) - r(1),
            FamilyId::AW => -self.qh(v) * (r(1) - &p[i] * &p[j] * self.qp(-v - 1)),
            _ => panic!("idQM f~"),
        };
        Ok(self.alpha_half_pow(t, -1)? * core)
    }

    /// `b~_v`
    pub fn b_tilde(&self, v: i64, t: VType) -> Result<Rational> {
        let p = &self.params.v;
        let (k, l) = t.other().pair();
        let core = match self.id {
            FamilyId::W => -(&p[k] + &p[l] + r(v)),
            FamilyId::AW => self.qh(-v) * (r(1) - &p[k] * &p[l] * self.qp(v)),
            _ => panic!("idQM b~"),
        };
        Ok(self.alpha_half_pow(t, 1)? * core)
    }

    /// `v_1` for type I (`v_2` for type II): product over the type's own pair.
    pub fn v_pair(&self, t: VType) -> LatticeFun {
        let p = &self.params.v;
        let (i, j) = t.pair();
        let m = &self.model;
        match self.id {
            FamilyId::W => (&m.var() + &self.c(p[i].clone())) * (&m.var() + &self.c(p[j].clone())),
            FamilyId::AW => (self.one_minus(p[i].clone(), 1) * self.one_minus(p[j].clone(), 1)).shift_mono(-1),
            _ => panic!("idQM v pair"),
        }
    }

    /// `U-check^t(x)`
    pub fn u_check(&self, t: VType) -> LatticeFun {
        let p = &self.params.v;
        let (i, j) = t.pair();
        let m = &self.model;
        match self.id {
            FamilyId::W => {
                let y = m.var();
                let f = |a: &Rational| (&self.c(a.clone()) + &y) * (&self.c(a.clone()) - &y);
                f(&p[i]) * f(&p[j])
            }
            FamilyId::AW => {
                let f = |a: &Rational| self.one_minus(a.clone(), 1) * self.one_minus(a.clone(), -1);
                (f(&p[i]) * f(&p[j])).scale_r(&(r(1) / (&p[i] * &p[j])))
            }
            _ => panic!("idQM U"),
        }
    }

    /// `U^t(eta)` coefficients.
    pub fn u_eta(&self, t: VType) -> crate::eta::EtaPoly {
        let p = &self.params.v;
        let (i, j) = t.pair();
        let lin = |c0: Rational, c1: Rational| vec![g(c0), g(c1)];
        let (f1, f2) = match self.id {
            FamilyId::W => (lin(&p[i] * &p[i], r(1)), lin(&p[j] * &p[j], r(1))),
            FamilyId::AW => (
                lin(&p[i] + r(1) / &p[i], r(-2)),
                lin(&p[j] + r(1) / &p[j], r(-2)),
            ),
            _ => panic!("idQM U"),
        };
        let c = vec![
            f1[0].clone() * f2[0].clone(),
            f1[0].clone() * f2[1].clone() + f1[1].clone() * f2[0].clone(),
            f1[1].clone() * f2[1].clone(),
        ];
        crate::eta::Eta::new(c)
    }

    /// `S(eta)` coefficients.
    pub fn s_eta(&self) -> crate::eta::EtaPoly {
        let c = match self.id {
            FamilyId::W => vec![g(-self.b3()), g(self.b1())],
            FamilyId::AW => {
                let s = self.qh(-1);
                vec![g(&s * (self.b3() - self.b1())), g(&s * r(2) * (r(1) - self.b4()))]
            }
            _ => panic!("idQM S"),
        };
        crate::eta::Eta::new(c)
    }

    /// `r^t_j(x^(M)_j; lambda, M)` as a function of `x`.
    pub fn r_j_id(&self, t: VType, j: i64, mm: i64) -> Result<LatticeFun> {
        let p = &self.params.v;
        let m = &self.model;
        let (i1, i2) = t.pair();
        let alpha = self.sdt(t, mm - 1).alpha_half_pow(t, -(mm - 1))?;
        // kappa^((M-1)^2/2 - (j-1)(M-j)), as a half-integer power
        let kh = (mm - 1) * (mm - 1) - 2 * (j - 1) * (mm - j);
        let kap = match self.id {
            FamilyId::W => r(1),
            _ => self.qh(-kh),
        };
        let body = match self.id {
            FamilyId::W => {
                let sh = half(-(mm - 1));
                let mut acc = m.one();
                for k in [i1, i2] {
                    let c = g(&p[k] + &sh);
                    acc = acc * poch_var(m, &c, 1, j - 1) * poch_var(m, &c, -1, mm - j);
                }
                acc
            }
            FamilyId::AW => {
                let mut acc = m.monomial(gi(1), mm + 1 - 2 * j);
                for k in [i1, i2] {
                    let c = &p[k] * self.qh(-(mm - 1));
                    acc = acc * qpoch_var(m, &c, 1, j - 1) * qpoch_var(m, &c, -1, mm - j);
                }
                acc
            }
            _ => panic!("idQM r_j"),
        };
        Ok(body.scale_r(&(alpha * kap)))
    }

    /// First printed form of `varphi_M`.
    fn phi_m_id(&self, mm: i64) -> Result<LatticeFun> {
        let phi = self.phi();
        let mut acc = phi.pow(floor_half(mm));
        for k in 1..=(mm - 2) {
            let pair = &phi.sh_half(-k) * &phi.sh_half(k);
            acc = &acc * &pair.pow(floor_half(mm - k));
        }
        Ok(acc)
    }

    /// Second printed form of `varphi_M` (divided differences of `eta`).
    pub fn phi_m_id_alt(&self, mm: i64) -> Result<LatticeFun> {
        let eta = self.eta();
        let phi = self.phi();
        let mut acc = self.model.one();
        for j in 1..=mm {
            for k in (j + 1)..=mm {
                let num = &eta.sh_half(mm + 1 - 2 * j) - &eta.sh_half(mm + 1 - 2 * k);
                let den = phi.eval_imag(&half(j))?;
                acc = &acc * &num.scale(&(gi(1) / den));
            }
        }
        if self.id == FamilyId::AW {
            acc = acc.scale_r(&pow_i(&r(-2), mm * (mm - 1) / 2));
        }
        Ok(acc)
    }

    pub fn describe(&self) -> String {
        let names = self.id.param_names();
        let mut parts: Vec<String> =
            names.iter().zip(&self.params.v).map(|(n, v)| format!("{n}={v}")).collect();
        if let Some(q) = self.model.q() {
            parts.insert(0, format!("q={q}"));
        }
        format!("{}({})", self.id, parts.join(", "))
    }
}

fn floor_half(n: i64) -> u32 {
    n.max(0).div_euclid(2) as u32
}

impl LatticeFun {
    /// Multiplication by `v^k` in the model variable.
    pub fn shift_mono(&self, k: i64) -> LatticeFun {
        LatticeFun { model: self.model.clone(), poly: self.poly.shift_exp(k) }
    }
}
