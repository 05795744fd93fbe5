//! Multi-indexed polynomials of the discrete quantum mechanics with pure
//! imaginary shifts (W, AW): the original matrix definitions, the general case
//! A / case B forms and the single-type forms.

use num_traits::One;

use crate::det::det;
use crate::error::{MiopError, Result};
use crate::eta::{eta_expand, EtaPoly};
use crate::families::{FamilyId, FamilySpec, VType};
use crate::lattice::{product, LatticeFun};
use crate::scalar::{floor_div, g, i_pow, pow_i, rint, GaussScalar, Rational};

pub use crate::method::Method;

/// One virtual state: degree and twist type.
pub type Typed = (i64, VType);

pub fn check_d(d: &[Typed]) -> Result<()> {
    for (k, x) in d.iter().enumerate() {
        if x.0 < 0 {
            return Err(MiopError::Config(format!("virtual degree {} is negative", x.0)));
        }
        if d[..k].contains(x) {
            return Err(MiopError::Config(format!("virtual state ({}, {}) repeated", x.0, x.1.code())));
        }
    }
    Ok(())
}

pub fn counts(d: &[Typed]) -> (i64, i64) {
    let m1 = d.iter().filter(|x| x.1 == VType::I).count() as i64;
    (m1, d.len() as i64 - m1)
}

/// `l_D = sum d_j - M(M-1)/2 + 2 M_I M_II`
pub fn ell(d: &[Typed]) -> i64 {
    let m = d.len() as i64;
    let (m1, m2) = counts(d);
    d.iter().map(|x| x.0).sum::<i64>() - m * (m - 1) / 2 + 2 * m1 * m2
}

/// The common type of a single-type index set.
pub fn single_type(d: &[Typed]) -> Option<VType> {
    let t = d.first()?.1;
    d.iter().all(|x| x.1 == t).then_some(t)
}

// ---------- small helpers ----------

fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        rint(1)
    } else {
        rint(-1)
    }
}

/// `kappa^(h/2)`
fn kappa_half(spec: &FamilySpec, h: i64) -> Result<Rational> {
    match spec.id {
        FamilyId::W => Ok(Rational::one()),
        _ => spec.model.q_half_pow(-h),
    }
}

/// `(alpha^I alpha^II / kappa)^(h/2)`
fn alpha_pair_half(spec: &FamilySpec, h: i64) -> Result<Rational> {
    Ok(spec.alpha_half_pow(VType::I, h)? * spec.alpha_half_pow(VType::II, h)? * kappa_half(spec, -h)?)
}

/// `(alpha^t / alpha^tbar * kappa)^(h/2)`
fn alpha_ratio_half(spec: &FamilySpec, t: VType, h: i64) -> Result<Rational> {
    Ok(spec.alpha_half_pow(t, h)? * spec.alpha_half_pow(t.other(), -h)? * kappa_half(spec, h)?)
}

fn scale(f: &LatticeFun, c: &Rational) -> LatticeFun {
    f.scale_r(c)
}

/// `U-check^t(x; lambda + k delta)`
fn u(spec: &FamilySpec, t: VType, k: i64) -> LatticeFun {
    spec.sd(k).u_check(t)
}

fn s_at(spec: &FamilySpec) -> LatticeFun {
    spec.s_eta().to_lattice(&spec.eta())
}

fn powf(f: &LatticeFun, e: i64) -> LatticeFun {
    f.pow(e.max(0) as u32)
}

fn prod_f<I: IntoIterator<Item = LatticeFun>>(spec: &FamilySpec, it: I) -> LatticeFun {
    let v: Vec<LatticeFun> = it.into_iter().collect();
    product(&spec.model, &v)
}

/// `prod_{m=lo}^{hi} h(m)` over scalars.
fn prod_r<F: FnMut(i64) -> Result<Rational>>(lo: i64, hi: i64, mut h: F) -> Result<Rational> {
    let mut acc = Rational::one();
    for m in lo..=hi {
        acc *= h(m)?;
    }
    Ok(acc)
}

fn det_or_one(spec: &FamilySpec, m: &[Vec<LatticeFun>]) -> LatticeFun {
    det(m).unwrap_or_else(|| spec.model.one())
}

fn finish(num: LatticeFun, c: GaussScalar, den: &LatticeFun) -> Result<LatticeFun> {
    if den.is_zero() {
        return Err(MiopError::Inadmissible("route denominator vanishes identically at these parameters".into()));
    }
    num.scale(&c).div_exact(den)
}

fn f_t(spec: &FamilySpec, v: i64, t: VType) -> Result<Rational> {
    spec.f_tilde(v, t)
}

fn b_t(spec: &FamilySpec, v: i64, t: VType) -> Result<Rational> {
    spec.b_tilde(v, t)
}

fn e_t(spec: &FamilySpec, v: i64, t: VType) -> Rational {
    spec.e_tilde(v, t)
}

// ---------- original ----------

fn x_column(spec: &FamilySpec, v: i64, t: VType, size: i64) -> Result<Vec<LatticeFun>> {
    let xi = spec.xi(v, t);
    (1..=size)
        .map(|j| Ok(&spec.r_j_id(t.other(), j, size)? * &xi.sh_half(size + 1 - 2 * j)))
        .collect()
}

fn columns_to_rows(cols: Vec<Vec<LatticeFun>>) -> Vec<Vec<LatticeFun>> {
    let n = cols.first().map_or(0, |c| c.len());
    (0..n).map(|j| cols.iter().map(|c| c[j].clone()).collect()).collect()
}

fn xi_original(spec: &FamilySpec, d: &[Typed]) -> Result<LatticeFun> {
    let m = d.len() as i64;
    let (m1, m2) = counts(d);
    let cols = d.iter().map(|&(v, t)| x_column(spec, v, t, m)).collect::<Result<Vec<_>>>()?;
    let w = det_or_one(spec, &columns_to_rows(cols));
    let c = i_pow(m * (m - 1) / 2) * g(kappa_half(spec, -m1 * m2 * (m - 2))?);
    let mut den = spec.phi_m(m)?;
    for l in 0..m1 {
        den = &den * &powf(&u(spec, VType::II, 1 - m + 2 * l), m1 - 1 - l);
    }
    for l in 0..m2 {
        den = &den * &powf(&u(spec, VType::I, 1 - m + 2 * l), m2 - 1 - l);
    }
    finish(w, c, &den)
}

fn p_original(spec: &FamilySpec, d: &[Typed], n: i64) -> Result<LatticeFun> {
    let m = d.len() as i64;
    let size = m + 1;
    let (m1, m2) = counts(d);
    let mut cols = d.iter().map(|&(v, t)| x_column(spec, v, t, size)).collect::<Result<Vec<_>>>()?;
    let pn = spec.p_check(n);
    let z = (1..=size)
        .map(|j| {
            let r = &spec.r_j_id(VType::II, j, size)? * &spec.r_j_id(VType::I, j, size)?;
            Ok(&r * &pn.sh_half(size + 1 - 2 * j))
        })
        .collect::<Result<Vec<_>>>()?;
    cols.push(z);
    let w = det_or_one(spec, &columns_to_rows(cols));
    let c = i_pow(m * (m + 1) / 2) * g(kappa_half(spec, -m1 * m2 * (m + 2))?);
    let mut den = spec.phi_m(size)?;
    for l in 0..m1 {
        den = &den * &powf(&u(spec, VType::II, -m + 2 * l), m1 - l);
    }
    for l in 0..m2 {
        den = &den * &powf(&u(spec, VType::I, -m + 2 * l), m2 - l);
    }
    finish(w, c, &den)
}

// ---------- general case A ----------

/// Column entries for a virtual state in a case-A matrix of size `size`;
/// `base` is `M - 1` for `Xi` and `M` for `P`.
fn a_virtual(spec: &FamilySpec, v: i64, t: VType, size: i64, base: i64) -> Result<Vec<LatticeFun>> {
    let mut out = Vec::new();
    for j in 1..=size {
        let e = if j <= floor_div(size + 1, 2) {
            let c = prod_r(0, size - 2 * j, |m| f_t(&spec.sd(m), v, t))?;
            let us = prod_f(spec, (1..j).map(|l| u(spec, t, base - 2 * l)));
            scale(&(&us * &spec.sd(size + 1 - 2 * j).xi(v, t)), &c)
        } else {
            let k = 2 * j - size - 3;
            let c = b_t(&spec.sd(k), v, t)? * prod_r(0, k, |m| f_t(&spec.sd(m), v, t))?;
            let us = prod_f(spec, (1..=(size + 1 - j)).map(|l| u(spec, t, base - 2 * l)));
            scale(&(&us * &spec.sd(k).xi(v, t)), &c)
        };
        out.push(e);
    }
    Ok(out)
}

fn a_denominator(spec: &FamilySpec, d: &[Typed], off: i64, s_base: i64, s_count: i64) -> LatticeFun {
    let (m1, m2) = counts(d);
    let mut den = spec.model.one();
    for l in 0..m1 {
        den = &den * &powf(&u(spec, VType::I, m2 - m1 + off + 2 * l), l);
    }
    for l in 0..m2 {
        den = &den * &powf(&u(spec, VType::II, m1 - m2 + off + 2 * l), l);
    }
    for m in 1..=s_count {
        den = &den * &s_at(&spec.sd(s_base - 2 * m));
    }
    den
}

fn xi_case_a(spec: &FamilySpec, d: &[Typed]) -> Result<LatticeFun> {
    let m = d.len() as i64;
    let (m1, m2) = counts(d);
    let cols = d.iter().map(|&(v, t)| a_virtual(spec, v, t, m, m - 1)).collect::<Result<Vec<_>>>()?;
    let w = det_or_one(spec, &columns_to_rows(cols));
    let c = sign((m - 1) * m * (m + 1) / 6) * kappa_half(spec, -m1 * m2 * (m - 2))?;
    let den = a_denominator(spec, d, -1, m - 1, floor_div(m, 2));
    finish(w, g(c), &den)
}

fn p_case_a(spec: &FamilySpec, d: &[Typed], n: i64) -> Result<LatticeFun> {
    let m = d.len() as i64;
    let size = m + 1;
    let (m1, m2) = counts(d);
    let mut cols = d.iter().map(|&(v, t)| a_virtual(spec, v, t, size, m)).collect::<Result<Vec<_>>>()?;
    let mut last = Vec::new();
    for j in 1..=size {
        let e = if j <= floor_div(size + 1, 2) {
            let c = prod_r(0, size - 2 * j, |mm| Ok(spec.sd(mm).f_n(n - mm)))?;
            scale(&spec.sd(size + 1 - 2 * j).p_check(n - size - 1 + 2 * j), &c)
        } else {
            let k = 2 * j - size - 3;
            let c = spec.sd(k).b_n(n - k - 1) * prod_r(0, k, |mm| Ok(spec.sd(mm).f_n(n - mm)))?;
            scale(&spec.sd(k).p_check(n - k), &c)
        };
        last.push(e);
    }
    cols.push(last);
    let w = det_or_one(spec, &columns_to_rows(cols));
    let c = sign(m * (m + 1) * (m + 2) / 6) * kappa_half(spec, -m1 * m2 * (m + 2))?;
    let den = a_denominator(spec, d, 0, m, floor_div(m + 1, 2));
    finish(w, g(c), &den)
}

// ---------- general case B ----------

/// Case-B column for a virtual state in a matrix of size `size`.
fn b_virtual(spec: &FamilySpec, v: i64, t: VType, size: i64) -> Result<Vec<LatticeFun>> {
    let et = e_t(spec, v, t);
    let mut out = Vec::new();
    if size % 2 == 1 {
        let h = (size + 1) / 2;
        for j in 1..=size {
            let e = if j <= h {
                let us = prod_f(spec, (0..=((size - 3) / 2)).map(|l| u(spec, t, 2 * l)));
                scale(&(&us * &spec.xi(v, t)), &pow_i(&et, h - j))
            } else {
                let c = f_t(&spec.sd(1), v, t)? * f_t(spec, v, t)? * pow_i(&et, j - h - 1);
                let us = prod_f(spec, (1..=((size - 3) / 2)).map(|l| u(spec, t, 2 * l)));
                scale(&(&us * &spec.sd(2).xi(v, t)), &c)
            };
            out.push(e);
        }
    } else {
        let h = size / 2;
        for j in 1..=size {
            let e = if j <= h {
                let c = f_t(spec, v, t)? * pow_i(&et, h - j);
                let us = prod_f(spec, (1..=((size - 2) / 2)).map(|l| u(spec, t, 2 * l - 1)));
                scale(&(&us * &spec.sd(1).xi(v, t)), &c)
            } else {
                let c = b_t(&spec.sd(-1), v, t)? * pow_i(&et, j - h - 1);
                let us = prod_f(spec, (0..=((size - 2) / 2)).map(|l| u(spec, t, 2 * l - 1)));
                scale(&(&us * &spec.sd(-1).xi(v, t)), &c)
            };
            out.push(e);
        }
    }
    Ok(out)
}

/// Case-B denominator for a matrix of size `size` (`M` for `Xi`, `M+1` for `P`).
fn b_denominator(spec: &FamilySpec, d: &[Typed], size: i64) -> LatticeFun {
    let (m1, m2) = counts(d);
    let base = size - 1;
    let mut den = spec.model.one();
    for (t, mt) in [(VType::I, m1), (VType::II, m2)] {
        for m in 1..=mt {
            den = &den * &powf(&u(spec, t, base - 2 * m), mt - m);
        }
        for m in 0..=floor_div(size - 2, 2) {
            den = &den * &powf(&u(spec, t, base - 2 * m), m);
        }
    }
    let s_shift = if size % 2 == 0 { -1 } else { 0 };
    &den * &powf(&s_at(&spec.sd(s_shift)), floor_div(size, 2))
}

fn xi_case_b(spec: &FamilySpec, d: &[Typed]) -> Result<LatticeFun> {
    let m = d.len() as i64;
    let (m1, m2) = counts(d);
    let cols = d.iter().map(|&(v, t)| b_virtual(spec, v, t, m)).collect::<Result<Vec<_>>>()?;
    let w = det_or_one(spec, &columns_to_rows(cols));
    let c = sign(floor_div(m, 2))
        * kappa_half(spec, -m1 * m2 * (m - 2))?
        * alpha_pair_half(spec, -floor_div(m - 2, 2) * floor_div(m, 2))?;
    finish(w, g(c), &b_denominator(spec, d, m))
}

fn p_case_b(spec: &FamilySpec, d: &[Typed], n: i64) -> Result<LatticeFun> {
    let m = d.len() as i64;
    let size = m + 1;
    let (m1, m2) = counts(d);
    let mut cols = d.iter().map(|&(v, t)| b_virtual(spec, v, t, size)).collect::<Result<Vec<_>>>()?;
    let en = spec.energy(n);
    let mut last = Vec::new();
    if size % 2 == 1 {
        let h = (size + 1) / 2;
        for j in 1..=size {
            last.push(if j <= h {
                scale(&spec.p_check(n), &pow_i(&en, h - j))
            } else {
                let c = spec.sd(1).f_n(n - 1) * spec.f_n(n) * pow_i(&en, j - h - 1);
                scale(&spec.sd(2).p_check(n - 2), &c)
            });
        }
    } else {
        let h = size / 2;
        for j in 1..=size {
            last.push(if j <= h {
                scale(&spec.sd(1).p_check(n - 1), &(spec.f_n(n) * pow_i(&en, h - j)))
            } else {
                let c = spec.sd(-1).b_n(n) * pow_i(&en, j - h - 1);
                scale(&spec.sd(-1).p_check(n + 1), &c)
            });
        }
    }
    cols.push(last);
    let w = det_or_one(spec, &columns_to_rows(cols));
    let c = sign(floor_div(m + 1, 2))
        * kappa_half(spec, -m1 * m2 * (m + 2))?
        * alpha_pair_half(spec, -floor_div(m - 1, 2) * floor_div(m + 1, 2))?;
    finish(w, g(c), &b_denominator(spec, d, size))
}

// ---------- single type ----------

/// `f'_v(lambda)`, `b'_v(lambda)` etc. are the unprimed data at `t(lambda)`.
fn fp(spec: &FamilySpec, t: VType, v: i64) -> Rational {
    spec.twist(t).f_n(v)
}

fn bp(spec: &FamilySpec, t: VType, v: i64) -> Rational {
    spec.twist(t).b_n(v)
}

fn ftp(spec: &FamilySpec, t: VType, n: i64) -> Result<Rational> {
    spec.twist(t).f_tilde(n, t)
}

fn btp(spec: &FamilySpec, t: VType, n: i64) -> Result<Rational> {
    spec.twist(t).b_tilde(n, t)
}

fn sa_virtual(spec: &FamilySpec, v: i64, t: VType, size: i64) -> Vec<LatticeFun> {
    let sdt = |k: i64| spec.sdt(t, k);
    (1..=size)
        .map(|j| {
            if j <= floor_div(size + 1, 2) {
                let mut c = Rational::one();
                for m in 0..=(size - 2 * j) {
                    c *= fp(&sdt(m), t, v - m);
                }
                scale(&sdt(size + 1 - 2 * j).xi(v - size - 1 + 2 * j, t), &c)
            } else {
                let k = 2 * j - size - 3;
                let mut c = bp(&sdt(k), t, v - k - 1);
                for m in 0..=k {
                    c *= fp(&sdt(m), t, v - m);
                }
                scale(&sdt(k).xi(v - k, t), &c)
            }
        })
        .collect()
}

fn xi_single_a(spec: &FamilySpec, d: &[Typed], t: VType) -> Result<LatticeFun> {
    let m = d.len() as i64;
    let cols = d.iter().map(|&(v, _)| sa_virtual(spec, v, t, m)).collect();
    let w = det_or_one(spec, &columns_to_rows(cols));
    let tw = spec.twist(t);
    let den = prod_f(spec, (1..=floor_div(m, 2)).map(|k| s_at(&tw.sd(m - 1 - 2 * k))));
    finish(w, g(sign((m - 1) * m * (m + 1) / 6)), &den)
}

fn p_single_a(spec: &FamilySpec, d: &[Typed], n: i64, t: VType) -> Result<LatticeFun> {
    let m = d.len() as i64;
    let size = m + 1;
    let sdt = |k: i64| spec.sdt(t, k);
    let mut cols: Vec<Vec<LatticeFun>> = d.iter().map(|&(v, _)| sa_virtual(spec, v, t, size)).collect();
    let mut last = Vec::new();
    for j in 1..=size {
        last.push(if j <= floor_div(size + 1, 2) {
            let c = prod_r(0, size - 2 * j, |mm| ftp(&sdt(mm), t, n))?;
            let us = prod_f(spec, ((m + 2 - j)..=m).map(|l| u(spec, t, m - 2 * l)));
            scale(&(&us * &sdt(size + 1 - 2 * j).p_check(n)), &c)
        } else {
            let k = 2 * j - size - 3;
            let c = btp(&sdt(k), t, n)? * prod_r(0, k, |mm| ftp(&sdt(mm), t, n))?;
            let us = prod_f(spec, ((j - 1)..=m).map(|l| u(spec, t, m - 2 * l)));
            scale(&(&us * &sdt(k).p_check(n)), &c)
        });
    }
    cols.push(last);
    let w = det_or_one(spec, &columns_to_rows(cols));
    let tw = spec.twist(t);
    let den = prod_f(spec, (1..=floor_div(m + 1, 2)).map(|k| s_at(&tw.sd(m - 2 * k))));
    finish(w, g(sign(m * (m + 1) * (m + 2) / 6)), &den)
}

fn sb_virtual(spec: &FamilySpec, v: i64, t: VType, size: i64) -> Vec<LatticeFun> {
    let ep = spec.twist(t).energy(v);
    let sdt = |k: i64| spec.sdt(t, k);
    (1..=size)
        .map(|j| {
            if size % 2 == 1 {
                let h = (size + 1) / 2;
                if j <= h {
                    scale(&spec.xi(v, t), &pow_i(&ep, h - j))
                } else {
                    let c = fp(&sdt(1), t, v - 1) * fp(spec, t, v) * pow_i(&ep, j - h - 1);
                    scale(&sdt(2).xi(v - 2, t), &c)
                }
            } else {
                let h = size / 2;
                if j <= h {
                    scale(&sdt(1).xi(v - 1, t), &(fp(spec, t, v) * pow_i(&ep, h - j)))
                } else {
                    let c = bp(&sdt(-1), t, v) * pow_i(&ep, j - h - 1);
                    scale(&sdt(-1).xi(v + 1, t), &c)
                }
            }
        })
        .collect()
}

/// Single-type case-B denominator; `is_p` selects the `P` block.
fn sb_den(spec: &FamilySpec, t: VType, m: i64, is_p: bool) -> LatticeFun {
    let size = if is_p { m + 1 } else { m };
    let base = size - 1;
    let mut den = spec.model.one();
    for k in floor_div(size + 3, 2)..=m {
        den = &den * &powf(&u(spec, t, base - 2 * k), m - k);
    }
    for k in 0..=floor_div(size - 2, 2) {
        den = &den * &powf(&u(spec, t.other(), base - 2 * k), k);
    }
    let s_shift = if size % 2 == 0 { -1 } else { 0 };
    &den * &powf(&s_at(&spec.twist(t).sd(s_shift)), floor_div(size, 2))
}

fn xi_single_b(spec: &FamilySpec, d: &[Typed], t: VType) -> Result<LatticeFun> {
    let m = d.len() as i64;
    let cols = d.iter().map(|&(v, _)| sb_virtual(spec, v, t, m)).collect();
    let w = det_or_one(spec, &columns_to_rows(cols));
    let c = sign(floor_div(m, 2)) * alpha_ratio_half(spec, t, floor_div(m - 2, 2) * floor_div(m, 2))?;
    finish(w, g(c), &sb_den(spec, t, m, false))
}

fn p_single_b(spec: &FamilySpec, d: &[Typed], n: i64, t: VType) -> Result<LatticeFun> {
    let m = d.len() as i64;
    let size = m + 1;
    let sdt = |k: i64| spec.sdt(t, k);
    let mut cols: Vec<Vec<LatticeFun>> = d.iter().map(|&(v, _)| sb_virtual(spec, v, t, size)).collect();
    let etp = spec.twist(t).e_tilde(n, t);
    let mut last = Vec::new();
    for j in 1..=size {
        last.push(if size % 2 == 1 {
            let h = (size + 1) / 2;
            if j <= h {
                scale(&(&u(spec, t, -2) * &spec.p_check(n)), &pow_i(&etp, h - j))
            } else {
                let c = ftp(&sdt(1), t, n)? * ftp(spec, t, n)? * pow_i(&etp, j - h - 1);
                scale(&sdt(2).p_check(n), &c)
            }
        } else {
            let h = size / 2;
            if j <= h {
                scale(&sdt(1).p_check(n), &(ftp(spec, t, n)? * pow_i(&etp, h - j)))
            } else {
                let c = btp(&sdt(-1), t, n)? * pow_i(&etp, j - h - 1);
                scale(&(&u(spec, t, -1) * &sdt(-1).p_check(n)), &c)
            }
        });
    }
    cols.push(last);
    let w = det_or_one(spec, &columns_to_rows(cols));
    let c = sign(floor_div(m + 1, 2)) * alpha_ratio_half(spec, t, floor_div(m - 1, 2) * floor_div(m + 1, 2))?;
    finish(w, g(c), &sb_den(spec, t, m, true))
}

// ---------- public entry points ----------

fn check_family(spec: &FamilySpec) -> Result<()> {
    if !spec.id.is_idqm() {
        return Err(MiopError::Unsupported(format!("{} is an rdQM family", spec.id)));
    }
    Ok(())
}

fn need_single(d: &[Typed], method: Method) -> Result<VType> {
    single_type(d).ok_or_else(|| {
        MiopError::Config(format!("{} needs an index set of a single twist type", method.code()))
    })
}

/// `Xi-check_D(x)` as a lattice function.
pub fn xi_check(spec: &FamilySpec, d: &[Typed], method: Method) -> Result<LatticeFun> {
    check_family(spec)?;
    check_d(d)?;
    if d.is_empty() {
        return Ok(spec.model.one());
    }
    match method {
        Method::Original => xi_original(spec, d),
        Method::CaseA => xi_case_a(spec, d),
        Method::CaseB => xi_case_b(spec, d),
        Method::SingleA => xi_single_a(spec, d, need_single(d, method)?),
        Method::SingleB => xi_single_b(spec, d, need_single(d, method)?),
    }
}

/// `P-check_{D,n}(x)` as a lattice function.
pub fn p_check(spec: &FamilySpec, d: &[Typed], n: i64, method: Method) -> Result<LatticeFun> {
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
        Method::SingleA => p_single_a(spec, d, n, need_single(d, method)?),
        Method::SingleB => p_single_b(spec, d, n, need_single(d, method)?),
    }
}

pub fn xi_eta(spec: &FamilySpec, d: &[Typed], method: Method) -> Result<EtaPoly> {
    eta_expand(&xi_check(spec, d, method)?, &spec.eta())
}

pub fn p_eta(spec: &FamilySpec, d: &[Typed], n: i64, method: Method) -> Result<EtaPoly> {
    eta_expand(&p_check(spec, d, n, method)?, &spec.eta())
}

/// Routes applicable to `d`.
pub fn methods_for(d: &[Typed]) -> Vec<Method> {
    let mut v = vec![Method::Original, Method::CaseA, Method::CaseB];
    if single_type(d).is_some() {
        v.extend([Method::SingleA, Method::SingleB]);
    }
    v
}
