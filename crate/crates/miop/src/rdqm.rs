//! Multi-indexed polynomials of the discrete quantum mechanics with real shifts
//! (M, lqL, lqJ, R, qR): the Casoratian definitions and the case A / case B
//! determinant forms.

use num_traits::{One, Zero};

use crate::det::det;
use crate::error::{MiopError, Result};
use crate::eta::{eta_expand, EtaPoly};
use crate::families::{FamilyId, FamilySpec, VType};
use crate::lattice::{product, LatticeFun, LatticeRat};
pub use crate::method::Method;
use crate::scalar::{floor_div, g, pow_i, rint, GaussScalar, Rational};
use crate::special::{poch, poch_var, qpoch, qpoch_var};

const I: VType = VType::I;

fn ri(n: i64) -> Rational {
    rint(n)
}

/// Virtual-state degrees must be distinct and non-negative.
pub fn check_d(d: &[i64]) -> Result<()> {
    for (k, &x) in d.iter().enumerate() {
        if x < 0 {
            return Err(MiopError::Config(format!("virtual degree {x} is negative")));
        }
        if d[..k].contains(&x) {
            return Err(MiopError::Config(format!("virtual degree {x} repeated")));
        }
    }
    Ok(())
}

/// `l_D = sum d_j - M(M-1)/2`
pub fn ell(d: &[i64]) -> i64 {
    let m = d.len() as i64;
    d.iter().sum::<i64>() - m * (m - 1) / 2
}

fn bp(spec: &FamilySpec) -> LatticeRat {
    spec.twist(I).b_fn()
}

fn bp_at(spec: &FamilySpec, x: i64) -> Result<Rational> {
    Ok(bp(spec).eval_at(&ri(x))?.re)
}

fn phi_m_at0(spec: &FamilySpec, m: i64) -> Result<Rational> {
    Ok(spec.phi_m(m)?.eval_at(&ri(0))?.re)
}

/// `C_D`
pub fn c_d(spec: &FamilySpec, d: &[i64]) -> Result<Rational> {
    let m = d.len() as i64;
    let alpha = spec.alpha(I);
    let mut acc = Rational::one() / phi_m_at0(spec, m)?;
    for j in 0..d.len() {
        for k in (j + 1)..d.len() {
            let gap = spec.e_tilde(d[j], I) - spec.e_tilde(d[k], I);
            if gap.is_zero() {
                return Err(MiopError::Inadmissible(format!("virtual degrees {} and {} share an energy", d[j], d[k])));
            }
            acc *= gap / (&alpha * bp_at(spec, j as i64)?);
        }
    }
    Ok(acc)
}

/// `d~_{D,n}^2`
pub fn d_tilde_sq(spec: &FamilySpec, d: &[i64], n: i64) -> Result<Rational> {
    let m = d.len() as i64;
    let alpha = spec.alpha(I);
    let en = spec.energy(n);
    let mut acc = phi_m_at0(spec, m)? / phi_m_at0(spec, m + 1)?;
    for (j, &dj) in d.iter().enumerate() {
        acc *= (&en - spec.e_tilde(dj, I)) / (&alpha * bp_at(spec, j as i64)?);
    }
    Ok(acc)
}

/// `C_{D,n}`
pub fn c_dn(spec: &FamilySpec, d: &[i64], n: i64) -> Result<Rational> {
    let sign = if d.len() % 2 == 0 { ri(1) } else { ri(-1) };
    Ok(sign * c_d(spec, d)? * d_tilde_sq(spec, d, n)?)
}

fn nonzero(x: Rational, what: &str) -> Result<Rational> {
    if x.is_zero() {
        Err(MiopError::Inadmissible(format!("{what} vanishes")))
    } else {
        Ok(x)
    }
}

fn det_or_one(spec: &FamilySpec, m: &[Vec<LatticeFun>]) -> LatticeFun {
    det(m).unwrap_or_else(|| spec.model.one())
}

fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        ri(1)
    } else {
        ri(-1)
    }
}

fn scale(f: &LatticeFun, c: &Rational) -> LatticeFun {
    f.scale(&g(c.clone()))
}

/// `E'_v(lambda')`
fn e_prime(spec: &FamilySpec, v: i64) -> Rational {
    spec.twist(I).energy(v)
}

/// `E~'_v(lambda')`
fn et_prime(spec: &FamilySpec, v: i64) -> Rational {
    spec.twist(I).e_tilde(v, I)
}

// ---------- original ----------

fn xi_original(spec: &FamilySpec, d: &[i64]) -> Result<LatticeFun> {
    let m = d.len();
    let xis: Vec<LatticeFun> = d.iter().map(|&v| spec.xi(v, I)).collect();
    let mat: Vec<Vec<LatticeFun>> =
        (0..m).map(|j| xis.iter().map(|f| f.sh(j as i64)).collect()).collect();
    let w = det_or_one(spec, &mat);
    let cd = nonzero(c_d(spec, d)?, "C_D")?;
    scale(&w, &(Rational::one() / cd)).div_exact(&spec.phi_m(m as i64)?)
}

fn p_original(spec: &FamilySpec, d: &[i64], n: i64) -> Result<LatticeFun> {
    let m = d.len() as i64;
    let xis: Vec<LatticeFun> = d.iter().map(|&v| spec.xi(v, I)).collect();
    let pn = spec.p_check(n);
    let mut mat = Vec::new();
    for j in 1..=(m + 1) {
        let mut row: Vec<LatticeFun> = xis.iter().map(|f| f.sh(j - 1)).collect();
        row.push(&spec.r_j(j, m) * &pn.sh(j - 1));
        mat.push(row);
    }
    let w = det_or_one(spec, &mat);
    let cdn = nonzero(c_dn(spec, d, n)?, "C_{D,n}")?;
    scale(&w, &(Rational::one() / cdn)).div_exact(&spec.phi_m(m + 1)?)
}

// ---------- case A ----------

fn a_entry(spec: &FamilySpec, dk: i64, j: i64) -> LatticeFun {
    let mut c = Rational::one();
    for m in 0..=(j - 2) {
        c *= e_prime(&spec.sdt(I, m), dk - m);
    }
    scale(&spec.sdt(I, j - 1).xi(dk + 1 - j, I), &c)
}

/// `nu(x; lambda + (j-1) delta~) / nu(x; lambda + M delta~)` in case A.
pub fn a_ratio(spec: &FamilySpec, j: i64, mm: i64) -> LatticeFun {
    let p = &spec.params.v;
    let model = &spec.model;
    let k = mm + 1 - j;
    match spec.id {
        FamilyId::M => model.one(),
        FamilyId::LqL | FamilyId::LqJ => model.monomial(g(Rational::one()), k),
        FamilyId::R => {
            let (a, b, d) = (&p[0], &p[1], &p[3]);
            let c1 = d - a + ri(j);
            let c2 = d - b + ri(j);
            let num = poch_var(model, &g(c1.clone()), 1, k) * poch_var(model, &g(c2.clone()), 1, k);
            scale(&num, &(Rational::one() / (poch(&c1, k) * poch(&c2, k))))
        }
        FamilyId::QR => {
            let q = spec.q();
            let (a, b, d) = (&p[0], &p[1], &p[3]);
            let c1 = d / a * pow_i(&q, j);
            let c2 = d / b * pow_i(&q, j);
            let num = qpoch_var(model, &c1, 1, k) * qpoch_var(model, &c2, 1, k);
            scale(&num.shift_mono(-k), &(Rational::one() / (qpoch(&c1, &q, k) * qpoch(&c2, &q, k))))
        }
        _ => unreachable!(),
    }
}

fn a_prefactor(spec: &FamilySpec, size: i64) -> Result<Rational> {
    // size = M for Xi and M+1 for P; the printed prefactors depend only on it
    let p = &spec.params.v;
    let s = size;
    let tri = s * (s - 1) / 2;
    Ok(match spec.id {
        FamilyId::M => {
            let mut den = Rational::one();
            for m in 1..s {
                den *= poch(&p[0], m);
            }
            pow_i(&-p[1].clone(), tri) / den
        }
        FamilyId::LqL | FamilyId::LqJ => {
            let q = spec.q();
            let mut v = pow_i(&-p[0].clone(), tri) / pow_i(&q, s * (s - 1) * (s - 2) / 6);
            if spec.id == FamilyId::LqJ {
                let bq = &p[1] * &q;
                for m in 1..s {
                    v /= qpoch(&bq, &q, m);
                }
            }
            v
        }
        FamilyId::R | FamilyId::QR => {
            let mut den = Rational::one();
            for m in 0..s {
                den *= pow_i(&bp_at(&spec.sdt(I, m), 0)?, s - 1 - m);
            }
            sign(tri) / den
        }
        _ => unreachable!(),
    })
}

fn xi_case_a(spec: &FamilySpec, d: &[i64]) -> Result<LatticeFun> {
    let m = d.len() as i64;
    let mat: Vec<Vec<LatticeFun>> =
        (1..=m).map(|j| d.iter().map(|&dk| a_entry(spec, dk, j)).collect()).collect();
    let pre = a_prefactor(spec, m)? / nonzero(c_d(spec, d)?, "C_D")?;
    Ok(scale(&det_or_one(spec, &mat), &pre))
}

fn p_case_a(spec: &FamilySpec, d: &[i64], n: i64) -> Result<LatticeFun> {
    let m = d.len() as i64;
    let mut mat = Vec::new();
    for j in 1..=(m + 1) {
        let mut row: Vec<LatticeFun> = d.iter().map(|&dk| a_entry(spec, dk, j)).collect();
        let mut c = Rational::one();
        for mm in 0..=(j - 2) {
            c *= et_prime(&spec.sdt(I, mm), n);
        }
        let last = &spec.sdt(I, j - 1).p_check(n) * &a_ratio(spec, j, m);
        row.push(scale(&last, &c));
        mat.push(row);
    }
    let pre = a_prefactor(spec, m + 1)? / nonzero(c_dn(spec, d, n)?, "C_{D,n}")?;
    Ok(scale(&det_or_one(spec, &mat), &pre))
}

// ---------- case B ----------

fn b_entry(spec: &FamilySpec, dk: i64, row: i64) -> LatticeFun {
    let ep = e_prime(spec, dk);
    if row % 2 == 1 {
        let l = (row + 1) / 2;
        scale(&spec.xi(dk, I).sh(l - 1), &pow_i(&ep, l - 1))
    } else {
        let l = row / 2;
        scale(&spec.sdt(I, 1).xi(dk - 1, I).sh(l - 1), &pow_i(&ep, l))
    }
}

/// `prod_{m=0}^{[(K-2)/2]} varphi(x+m)` and `prod prod B'(x+l+m)` for block size `K`.
fn b_x_factors(spec: &FamilySpec, k: i64) -> (LatticeFun, LatticeRat) {
    let phi = spec.phi();
    let top = floor_div(k - 2, 2);
    let phis: Vec<LatticeFun> = (0..=top).map(|m| phi.sh(m)).collect();
    let bpr = bp(spec);
    let mut bprod = LatticeRat::from_fun(spec.model.one());
    for m in 0..=top {
        for l in 1..=(k - 2 - 2 * m) {
            bprod = bprod.mul(&bpr.sh(l + m));
        }
    }
    (product(&spec.model, &phis), bprod)
}

fn b_assemble(spec: &FamilySpec, k: i64, mat: &[Vec<LatticeFun>], cst: Rational) -> Result<LatticeFun> {
    let (phis, bprod) = b_x_factors(spec, k);
    let num = (&det_or_one(spec, mat) * &phis) * &bprod.den;
    let den = &spec.phi_m(k)? * &bprod.num;
    scale(&num, &cst).div_exact(&den)
}

fn xi_case_b(spec: &FamilySpec, d: &[i64]) -> Result<LatticeFun> {
    let m = d.len() as i64;
    let mat: Vec<Vec<LatticeFun>> =
        (1..=m).map(|row| d.iter().map(|&dk| b_entry(spec, dk, row)).collect()).collect();
    let even = if m % 2 == 0 { m / 2 } else { 0 };
    let b0 = nonzero(bp_at(spec, 0)?, "B'(0)")?;
    let cst = sign(even) / (nonzero(c_d(spec, d)?, "C_D")? * pow_i(&b0, floor_div(m, 2)));
    b_assemble(spec, m, &mat, cst)
}

/// `nu(x+l-1; lambda) / nu(x; lambda + M delta~)` in case B.
fn b_ratio1(spec: &FamilySpec, l: i64, mm: i64) -> LatticeFun {
    let p = &spec.params.v;
    let model = &spec.model;
    match spec.id {
        FamilyId::M => model.real(pow_i(&p[1], l - 1)),
        FamilyId::LqL | FamilyId::LqJ => model.monomial(g(pow_i(&p[0], l - 1)), mm),
        FamilyId::R => {
            let (a, b, d) = (&p[0], &p[1], &p[3]);
            let num = poch_var(model, &g(d - a + ri(l)), 1, mm + 1 - l)
                * poch_var(model, &g(d - b + ri(l)), 1, mm + 1 - l)
                * poch_var(model, &g(a.clone()), 1, l - 1)
                * poch_var(model, &g(b.clone()), 1, l - 1);
            scale(&num, &(Rational::one() / (poch(&(d - a + ri(1)), mm) * poch(&(d - b + ri(1)), mm))))
        }
        FamilyId::QR => {
            let q = spec.q();
            let (a, b, d) = (&p[0], &p[1], &p[3]);
            let num = qpoch_var(model, &(d / a * pow_i(&q, l)), 1, mm + 1 - l)
                * qpoch_var(model, &(d / b * pow_i(&q, l)), 1, mm + 1 - l)
                * qpoch_var(model, a, 1, l - 1)
                * qpoch_var(model, b, 1, l - 1);
            let cst = pow_i(&(a * b / (d * &q)), l - 1)
                * qpoch(&(d * &q / a), &q, mm)
                * qpoch(&(d * &q / b), &q, mm);
            scale(&num.shift_mono(-mm), &(Rational::one() / cst))
        }
        _ => unreachable!(),
    }
}

/// `nu(x+l-1; lambda + delta~) / nu(x; lambda + M delta~)` in case B.
fn b_ratio2(spec: &FamilySpec, l: i64, mm: i64) -> LatticeFun {
    let p = &spec.params.v;
    let model = &spec.model;
    match spec.id {
        FamilyId::M => model.real(pow_i(&p[1], l - 1)),
        FamilyId::LqL | FamilyId::LqJ => {
            let q = spec.q();
            model.monomial(g(pow_i(&(&p[0] / &q), l - 1)), mm - 1)
        }
        FamilyId::R => {
            let (a, b, d) = (&p[0], &p[1], &p[3]);
            let num = poch_var(model, &g(d - a + ri(l + 1)), 1, mm - l)
                * poch_var(model, &g(d - b + ri(l + 1)), 1, mm - l)
                * poch_var(model, &g(a.clone()), 1, l - 1)
                * poch_var(model, &g(b.clone()), 1, l - 1);
            scale(&num, &(Rational::one() / (poch(&(d - a + ri(2)), mm - 1) * poch(&(d - b + ri(2)), mm - 1))))
        }
        FamilyId::QR => {
            let q = spec.q();
            let (a, b, d) = (&p[0], &p[1], &p[3]);
            let num = qpoch_var(model, &(d / a * pow_i(&q, l + 1)), 1, mm - l)
                * qpoch_var(model, &(d / b * pow_i(&q, l + 1)), 1, mm - l)
                * qpoch_var(model, a, 1, l - 1)
                * qpoch_var(model, b, 1, l - 1);
            let q2 = &q * &q;
            let cst = pow_i(&(a * b / (d * &q2)), l - 1)
                * qpoch(&(d * &q2 / a), &q, mm - 1)
                * qpoch(&(d * &q2 / b), &q, mm - 1);
            scale(&num.shift_mono(-(mm - 1)), &(Rational::one() / cst))
        }
        _ => unreachable!(),
    }
}

fn p_case_b(spec: &FamilySpec, d: &[i64], n: i64) -> Result<LatticeFun> {
    let m = d.len() as i64;
    let etp = et_prime(spec, n);
    let mut mat = Vec::new();
    for row in 1..=(m + 1) {
        let mut r: Vec<LatticeFun> = d.iter().map(|&dk| b_entry(spec, dk, row)).collect();
        let last = if row % 2 == 1 {
            let l = (row + 1) / 2;
            scale(&(&spec.p_check(n).sh(l - 1) * &b_ratio1(spec, l, m)), &pow_i(&etp, l - 1))
        } else {
            let l = row / 2;
            scale(&(&spec.sdt(I, 1).p_check(n).sh(l - 1) * &b_ratio2(spec, l, m)), &pow_i(&etp, l))
        };
        r.push(last);
        mat.push(r);
    }
    let odd = if m % 2 == 1 { (m + 1) / 2 } else { 0 };
    let b0 = nonzero(bp_at(spec, 0)?, "B'(0)")?;
    let cst = sign(odd) / (nonzero(c_dn(spec, d, n)?, "C_{D,n}")? * pow_i(&b0, floor_div(m + 1, 2)));
    b_assemble(spec, m + 1, &mat, cst)
}

// ---------- public entry points ----------

fn check_family(spec: &FamilySpec) -> Result<()> {
    if spec.id.is_idqm() {
        return Err(MiopError::Unsupported(format!("{} is an idQM family", spec.id)));
    }
    Ok(())
}

/// `Xi-check_D(x)` as a lattice function.
pub fn xi_check(spec: &FamilySpec, d: &[i64], method: Method) -> Result<LatticeFun> {
    check_family(spec)?;
    check_d(d)?;
    if d.is_empty() {
        return Ok(spec.model.one());
    }
    match method {
        Method::Original => xi_original(spec, d),
        Method::CaseA => xi_case_a(spec, d),
        Method::CaseB => xi_case_b(spec, d),
        _ => Err(MiopError::Unsupported(format!("{} is an idQM method", method.code()))),
    }
}

/// `P-check_{D,n}(x)` as a lattice function.
pub fn p_check(spec: &FamilySpec, d: &[i64], n: i64, method: Method) -> Result<LatticeFun> {
    check_family(spec)?;
    check_d(d)?;
    if n < 0 {
        return Ok(spec.model.zero());
    }
    if d.is_empty() {
        return Ok(spec.p_check(n));
    }
    match method {
        Method::Original => p_original(spec, d, n),
        Method::CaseA => p_case_a(spec, d, n),
        Method::CaseB => p_case_b(spec, d, n),
        _ => Err(MiopError::Unsupported(format!("{} is an idQM method", method.code()))),
    }
}

/// `Xi_D(eta)`, expanded on `eta(x; lambda + (M-1) delta)`.
pub fn xi_eta(spec: &FamilySpec, d: &[i64], method: Method) -> Result<EtaPoly> {
    let f = xi_check(spec, d, method)?;
    let m = d.len() as i64;
    eta_expand(&f, &spec.sd((m - 1).max(0)).eta())
}

/// `P_{D,n}(eta)`, expanded on `eta(x; lambda + M delta)`.
pub fn p_eta(spec: &FamilySpec, d: &[i64], n: i64, method: Method) -> Result<EtaPoly> {
    let f = p_check(spec, d, n, method)?;
    eta_expand(&f, &spec.sd(d.len() as i64).eta())
}

/// Value `Xi-check_D(x)` at an integer lattice point.
pub fn eval_int(f: &LatticeFun, x: i64) -> Result<GaussScalar> {
    f.eval_at(&ri(x))
}

pub fn methods() -> [Method; 3] {
    [Method::Original, Method::CaseA, Method::CaseB]
}
