//! Shape-invariance and auxiliary identities of the seven families, checked as
//! exact lattice-function or rational-function equalities.

use num_traits::One;
use rayon::prelude::*;

use super::report::{CaseMeta, CaseRecord, Outcome, Value, VerifyReport};
use super::SuiteConfig;
use crate::error::{MiopError, Result};
use crate::families::{FamilyId, FamilySpec, VType};
use crate::lattice::{LatticeFun, LatticeRat};
use crate::rdqm::a_ratio;
use crate::scalar::{g, gi, imag_unit, pow_i, rint, Rational};
use crate::shift::{backward, forward, hamiltonian};
use crate::weight;

const SPLIT: &str = "skipped: needs split parameters";

#[derive(Clone, Copy, Debug, PartialEq)]
enum Ident {
    ForwardShift,
    BackwardShift,
    Hamiltonian,
    BackwardForward,
    ForwardBackward,
    XiForward,
    XiBackward,
    PrimedForwardXi,
    PrimedBackwardXi,
    PrimedForwardNuP,
    PrimedBackwardNuP,
    PhiFromEta,
    BRatio,
    DRatio,
    PhiGroundB,
    PhiGroundD,
    EnergyFactorization,
    VShift,
    VVStar,
    GroundShift,
    PhiMForms,
}

impl Ident {
    fn name(self) -> &'static str {
        match self {
            Ident::ForwardShift => "forward-shift",
            Ident::BackwardShift => "backward-shift",
            Ident::Hamiltonian => "hamiltonian",
            Ident::BackwardForward => "backward-forward",
            Ident::ForwardBackward => "forward-backward",
            Ident::XiForward => "xi-forward",
            Ident::XiBackward => "xi-backward",
            Ident::PrimedForwardXi => "primed-forward-xi",
            Ident::PrimedBackwardXi => "primed-backward-xi",
            Ident::PrimedForwardNuP => "primed-forward-nuP",
            Ident::PrimedBackwardNuP => "primed-backward-nuP",
            Ident::PhiFromEta => "phi-from-eta",
            Ident::BRatio => "B-ratio",
            Ident::DRatio => "D-ratio",
            Ident::PhiGroundB => "phi-ground-B",
            Ident::PhiGroundD => "phi-ground-D",
            Ident::EnergyFactorization => "energy-factorization",
            Ident::VShift => "V-shift",
            Ident::VVStar => "VV*",
            Ident::GroundShift => "ground-shift",
            Ident::PhiMForms => "phiM-forms",
        }
    }

    /// Needs `alpha^(1/2)` on AW.
    fn needs_split(self) -> bool {
        matches!(
            self,
            Ident::XiForward
                | Ident::XiBackward
                | Ident::PrimedForwardNuP
                | Ident::PrimedBackwardNuP
                | Ident::EnergyFactorization
        )
    }
}

struct Job {
    spec: FamilySpec,
    ident: Ident,
    index: Option<i64>,
    vtype: Option<VType>,
}

fn jobs_for(spec: &FamilySpec, k: i64, phi_m_max: i64) -> Vec<Job> {
    let mut out = Vec::new();
    let mut push = |ident: Ident, idx: Option<i64>, t: Option<VType>| {
        out.push(Job { spec: spec.clone(), ident, index: idx, vtype: t })
    };
    let from = |i: Ident| if matches!(i, Ident::BackwardShift | Ident::ForwardBackward | Ident::PrimedBackwardXi) { 1 } else { 0 };
    let common = [Ident::ForwardShift, Ident::BackwardShift, Ident::Hamiltonian, Ident::BackwardForward, Ident::ForwardBackward];
    for i in common {
        for n in from(i)..=k {
            push(i, Some(n), None);
        }
    }
    let typed = [
        Ident::XiForward,
        Ident::XiBackward,
        Ident::PrimedForwardXi,
        Ident::PrimedBackwardXi,
        Ident::PrimedForwardNuP,
        Ident::PrimedBackwardNuP,
    ];
    let types: Vec<VType> = if spec.id.is_idqm() { vec![VType::I, VType::II] } else { vec![VType::I] };
    for i in typed {
        for &t in &types {
            for n in from(i)..=k {
                push(i, Some(n), spec.id.is_idqm().then_some(t));
            }
        }
    }
    if spec.id.is_idqm() {
        for &t in &types {
            for v in 0..=k {
                push(Ident::EnergyFactorization, Some(v), Some(t));
            }
        }
        for i in [Ident::VShift, Ident::VVStar, Ident::GroundShift] {
            push(i, None, None);
        }
        for m in 0..=phi_m_max {
            push(Ident::PhiMForms, Some(m), None);
        }
    } else {
        for i in [Ident::PhiFromEta, Ident::BRatio, Ident::DRatio, Ident::PhiGroundB, Ident::PhiGroundD] {
            push(i, None, None);
        }
    }
    out
}

fn fun(f: LatticeFun) -> Value {
    Value::Fun(f)
}

fn rat_v(r: LatticeRat) -> Value {
    Value::Rat(r)
}

fn cmp(a: Value, b: Value) -> Result<Outcome> {
    Ok(Outcome::Compare(a, b))
}

fn r(n: i64) -> Rational {
    rint(n)
}

fn inv(x: &Rational) -> Result<Rational> {
    if num_traits::Zero::is_zero(x) {
        Err(MiopError::Inadmissible("division by a vanishing constant".into()))
    } else {
        Ok(Rational::one() / x)
    }
}

/// Family-wide relations among the forward, backward and Hamiltonian operators.
fn operator_case(spec: &FamilySpec, ident: Ident, n: i64) -> Result<Outcome> {
    let (f, b, h) = (forward(spec)?, backward(spec)?, hamiltonian(spec)?);
    let up = spec.sd(1);
    let pn = spec.p_check(n);
    let pm = up.p_check(n - 1);
    let e = spec.energy(n);
    let idqm = spec.id.is_idqm();
    match ident {
        Ident::ForwardShift => {
            let c = if idqm { spec.f_n(n) } else { e.clone() };
            cmp(fun(f.apply(&pn)?), fun(pm.scale_r(&c)))
        }
        Ident::BackwardShift => {
            let c = if idqm { spec.b_n(n - 1) } else { r(1) };
            cmp(fun(b.apply(&pm)?), fun(pn.scale_r(&c)))
        }
        Ident::Hamiltonian => cmp(fun(h.apply(&pn)?), fun(pn.scale_r(&e))),
        Ident::BackwardForward => cmp(fun(b.apply(&f.apply(&pn)?)?), fun(pn.scale_r(&e))),
        Ident::ForwardBackward => cmp(fun(f.apply(&b.apply(&pm)?)?), fun(pm.scale_r(&e))),
        _ => unreachable!(),
    }
}

// ---------- rdQM ----------

fn t_or_x(spec: &FamilySpec) -> LatticeFun {
    spec.model.var()
}

/// `(A, B, C)` of the forward relation of the virtual-state polynomial.
fn xi_forward_table(spec: &FamilySpec, v: i64) -> (LatticeFun, LatticeFun, LatticeFun) {
    let m = &spec.model;
    let p = &spec.params.v;
    let c = |x: Rational| m.real(x);
    let one = || m.one();
    let lin = |a: &Rational| &t_or_x(spec) + &c(a.clone());
    let qlin = |a: Rational, e: i64| &one() - &m.monomial(g(a), e);
    let vv = r(v);
    match spec.id {
        FamilyId::M => {
            let (beta, cc) = (&p[0], &p[1]);
            (one(), c(inv(cc).unwrap()), c(-(r(1) - cc) * (&vv + beta) / (cc * beta)))
        }
        FamilyId::LqL => {
            let (a, q) = (&p[0], spec.q());
            (one(), c(r(1) / a), c(-(r(1) - a * pow_i(&q, -v)) / a))
        }
        FamilyId::LqJ => {
            let (a, b, q) = (&p[0], &p[1], spec.q());
            let val = -(r(1) - a * pow_i(&q, -v)) * (r(1) - b * pow_i(&q, v + 1))
                / (a * (r(1) - b * &q));
            (one(), c(r(1) / a), c(val))
        }
        FamilyId::R => {
            let (a, b, cc, d) = (&p[0], &p[1], &p[2], &p[3]);
            let aa = &lin(a) * &lin(b);
            let bb = &lin(&(d - a + r(1))) * &lin(&(d - b + r(1)));
            let two_x = &t_or_x(spec).scale_r(&r(2)) + &c(d + r(1));
            let cc_ = two_x.scale_r(&((cc + &vv) * (a + b - d - r(1) - &vv) / cc));
            (aa, bb, cc_)
        }
        FamilyId::QR => {
            let (a, b, cc, d) = (&p[0], &p[1], &p[2], &p[3]);
            let q = spec.q();
            let qp = |k: i64| pow_i(&q, k);
            let aa = qlin(a.clone(), 1) * qlin(b.clone(), 1);
            let bb = (qlin(d * &q / a, 1) * qlin(d * &q / b, 1)).scale_r(&(a * b / (d * &q)));
            let k = (r(1) - cc * qp(v)) * (r(1) - a * b / d * qp(-v - 1)) / (r(1) - cc);
            (aa, bb, qlin(d * &q, 2).scale_r(&k))
        }
        _ => unreachable!(),
    }
}

/// `(A, B, C)` of the backward relation.
fn xi_backward_table(spec: &FamilySpec) -> (LatticeFun, LatticeFun, LatticeFun) {
    let m = &spec.model;
    let p = &spec.params.v;
    let c = |x: Rational| m.real(x);
    let x = t_or_x(spec);
    let lin = |a: &Rational| &x + &c(a.clone());
    let qlin = |a: Rational, e: i64| &m.one() - &m.monomial(g(a), e);
    match spec.id {
        FamilyId::M => (lin(&p[0]), x.clone(), c(p[0].clone())),
        FamilyId::LqL => (m.one(), qlin(r(1), 1), x.clone()),
        FamilyId::LqJ => {
            let bq = &p[1] * spec.q();
            (qlin(bq.clone(), 1), qlin(r(1), 1), x.scale_r(&(r(1) - bq)))
        }
        FamilyId::R => {
            let (cc, d) = (&p[2], &p[3]);
            let cc_ = (&x.scale_r(&r(2)) + &c(d.clone())).scale_r(cc);
            (&lin(cc) * &lin(d), &lin(&(d - cc)) * &x, cc_)
        }
        FamilyId::QR => {
            let (cc, d) = (&p[2], &p[3]);
            let bb = (qlin(d / cc, 1) * qlin(r(1), 1)).scale_r(cc);
            (qlin(cc.clone(), 1) * qlin(d.clone(), 1), bb, qlin(d.clone(), 2).scale_r(&(r(1) - cc)))
        }
        _ => unreachable!(),
    }
}

fn rd_case(spec: &FamilySpec, ident: Ident, idx: Option<i64>) -> Result<Outcome> {
    let t = VType::I;
    let k = idx.unwrap_or(0);
    match ident {
        Ident::XiForward => {
            let (a, b, c) = xi_forward_table(spec, k);
            let xi = spec.xi(k, t);
            cmp(fun(&(&a * &xi) - &(&b * &xi.sh(1))), fun(&c * &spec.sd(1).xi(k, t)))
        }
        Ident::XiBackward => {
            let (a, b, c) = xi_backward_table(spec);
            let xu = spec.sd(1).xi(k, t);
            cmp(fun(&(&a * &xu) - &(&b * &xu.sh(-1))), fun(&c * &spec.xi(k, t)))
        }
        Ident::PrimedForwardXi => {
            let tw = spec.twist(t);
            let lhs = forward(&tw)?.apply(&spec.xi(k, t))?;
            cmp(fun(lhs), fun(spec.sdt(t, 1).xi(k - 1, t).scale_r(&tw.energy(k))))
        }
        Ident::PrimedBackwardXi => {
            let lhs = backward(&spec.twist(t))?.apply(&spec.sdt(t, 1).xi(k - 1, t))?;
            cmp(fun(lhs), fun(spec.xi(k, t)))
        }
        Ident::PrimedForwardNuP => {
            // both sides divided by nu(x; lambda + delta~)
            let tw = spec.twist(t);
            let b0 = tw.b_fn().eval_at(&r(0))?;
            let phi = LatticeRat::new(spec.model.constant(b0), spec.phi())?;
            let r1 = LatticeRat::from_fun(a_ratio(spec, 1, 1));
            let step = spec.b_fn().div(&tw.b_fn().scale(&g(spec.alpha(t))))?;
            let p = spec.p_check(k);
            let inner = LatticeRat::from_fun(p.clone()).sub(&step.mul_fun(&p.sh(1)));
            let lhs = phi.mul(&r1).mul(&inner);
            let rhs = spec.sdt(t, 1).p_check(k).scale_r(&tw.e_tilde(k, t));
            cmp(rat_v(lhs), fun(rhs))
        }
        Ident::PrimedBackwardNuP => {
            // both sides divided by nu(x; lambda + delta~)
            let tw = spec.twist(t);
            let up = spec.sdt(t, 1);
            let b0 = tw.b_fn().eval_at(&r(0))?;
            let phi = spec.phi();
            let p = up.p_check(k);
            let back = up.d_fn().div(&up.twist(t).d_fn().scale(&g(up.alpha(t))))?;
            let t1 = tw.b_fn().mul_fun(&(&phi * &p));
            let t2 = tw.d_fn().mul_fun(&(&phi.sh(-1) * &p.sh(-1))).mul(&back);
            let lhs = t1.sub(&t2).scale(&(gi(1) / b0));
            let rhs = LatticeRat::from_fun(&a_ratio(spec, 1, 1) * &spec.p_check(k));
            cmp(rat_v(lhs), rat_v(rhs))
        }
        Ident::PhiFromEta => {
            let eta = spec.eta();
            let e1 = eta.eval_at(&r(1))?;
            cmp(fun(spec.phi()), fun((&eta.sh(1) - &eta).scale(&(gi(1) / e1))))
        }
        Ident::BRatio => {
            let kinv = g(inv(&spec.kappa())?);
            let lhs = spec.sd(1).b_fn().div(&spec.b_fn().sh(1))?;
            let rhs = LatticeRat::new(spec.phi().sh(1).scale(&kinv), spec.phi())?;
            cmp(rat_v(lhs), rat_v(rhs))
        }
        Ident::DRatio => {
            let kinv = g(inv(&spec.kappa())?);
            let lhs = spec.sd(1).d_fn().div(&spec.d_fn())?;
            let rhs = LatticeRat::new(spec.phi().sh(-1).scale(&kinv), spec.phi())?;
            cmp(rat_v(lhs), rat_v(rhs))
        }
        Ident::PhiGroundB | Ident::PhiGroundD => {
            let top = spec.size.map(|n| n - 1).unwrap_or(5).min(5);
            let up = spec.sd(1);
            let b0 = spec.b_fn().eval_at(&r(0))?.re;
            let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
            for x in 0..=top {
                let phi = spec.phi().eval_at(&r(x))?;
                lhs.push((format!("x={x}"), phi.clone() * phi));
                let val = if ident == Ident::PhiGroundB {
                    &b0 / spec.b_fn().eval_at(&r(x))?.re * up.phi0_sq_at(x)? / spec.phi0_sq_at(x)?
                } else {
                    &b0 / spec.d_fn().eval_at(&r(x + 1))?.re * up.phi0_sq_at(x)? / spec.phi0_sq_at(x + 1)?
                };
                rhs.push((format!("x={x}"), g(val)));
            }
            cmp(Value::Points(lhs), Value::Points(rhs))
        }
        _ => unreachable!(),
    }
}

// ---------- idQM ----------

fn id_case(spec: &FamilySpec, ident: Ident, idx: Option<i64>, t: Option<VType>) -> Result<Outcome> {
    let k = idx.unwrap_or(0);
    let t = t.unwrap_or(VType::I);
    let i = imag_unit();
    let phi = spec.phi();
    match ident {
        Ident::XiForward => {
            let xi = spec.xi(k, t);
            let v1 = spec.sdt(t, 1).v_pair(t);
            let lhs = &(&v1.star()? * &xi.sh_half(-1)) - &(&v1 * &xi.sh_half(1));
            let c = spec.alpha_half_pow(t, 1)? * spec.f_tilde(k, t)?;
            let rhs = (&phi * &spec.sd(1).xi(k, t)).scale(&-i.clone()).scale_r(&c);
            cmp(fun(lhs), fun(rhs))
        }
        Ident::XiBackward => {
            let xu = spec.sd(1).xi(k, t);
            let v2 = spec.v_pair(t.other());
            let lhs = &(&v2 * &xu.sh_half(-1)) - &(&v2.star()? * &xu.sh_half(1));
            let c = spec.alpha_half_pow(t, -1)? * spec.b_tilde(k, t)?;
            let rhs = (&phi * &spec.xi(k, t)).scale(&-i).scale_r(&c);
            cmp(fun(lhs), fun(rhs))
        }
        Ident::PrimedForwardXi => {
            let tw = spec.twist(t);
            let lhs = forward(spec)?.apply(&spec.xi(k, t))?;
            cmp(fun(lhs), fun(spec.sdt(t, 1).xi(k - 1, t).scale_r(&tw.f_n(k))))
        }
        Ident::PrimedBackwardXi => {
            let tw = spec.twist(t);
            let lhs = backward(&tw)?.apply(&spec.sdt(t, 1).xi(k - 1, t))?;
            cmp(fun(lhs), fun(spec.xi(k, t).scale_r(&tw.b_n(k - 1))))
        }
        Ident::PrimedForwardNuP => {
            // both sides divided by nu(x; lambda + delta~)
            let (r1, r2) = (spec.r_j_id(t, 1, 2)?, spec.r_j_id(t, 2, 2)?);
            let p = spec.p_check(k);
            let num = (&(&r2 * &p.sh_half(-1)) - &(&r1 * &p.sh_half(1))).scale(&i);
            let lhs = LatticeRat::new(num, phi)?;
            let rhs = spec.sdt(t, 1).p_check(k).scale_r(&spec.twist(t).f_tilde(k, t)?);
            cmp(rat_v(lhs), fun(rhs))
        }
        Ident::PrimedBackwardNuP => {
            // both sides divided by nu(x; lambda); nu(x; lambda + 2 delta~) / nu(x; lambda) = 1 / U(x; lambda - 2 delta)
            let tw = spec.twist(t);
            let up = spec.sdt(t, 1);
            let (r1, r2) = (up.r_j_id(t, 1, 2)?, up.r_j_id(t, 2, 2)?);
            let p = up.p_check(k);
            let v = tw.v_fn();
            let vs = v.star()?;
            let t1 = v.mul_fun(&(&(&phi.sh_half(-1) * &r2) * &p.sh_half(-1)));
            let t2 = vs.mul_fun(&(&(&phi.sh_half(1) * &r1) * &p.sh_half(1)));
            let u = LatticeRat::new(spec.model.one(), spec.sd(-2).u_check(t))?;
            let lhs = t1.sub(&t2).mul(&u).scale(&-i);
            let rhs = spec.p_check(k).scale_r(&tw.b_tilde(k, t)?);
            cmp(rat_v(lhs), fun(rhs))
        }
        Ident::EnergyFactorization => {
            let lhs = spec.f_tilde(k, t)? * spec.b_tilde(k, t)?;
            cmp(Value::Scalar(g(lhs)), Value::Scalar(g(spec.e_tilde(k, t))))
        }
        Ident::VShift => {
            let kinv = g(inv(&spec.kappa())?);
            let lhs = spec.sd(1).v_fn();
            let rhs = spec.v_fn().sh_half(-1).mul(&LatticeRat::new(phi.sh(-1).scale(&kinv), phi)?);
            cmp(rat_v(lhs), rat_v(rhs))
        }
        Ident::VVStar => {
            let v = spec.v_fn();
            let lhs = v.mul(&v.star()?);
            let c = spec.alpha(VType::I) * spec.alpha(VType::II) * inv(&spec.kappa())?;
            let num = (&spec.u_check(VType::I) * &spec.u_check(VType::II)).scale_r(&c);
            let den = &(&phi.sh_half(-1) * &phi.pow(2)) * &phi.sh_half(1);
            cmp(rat_v(lhs), rat_v(LatticeRat::new(num, den)?))
        }
        Ident::GroundShift => {
            let up = weight::phi0_sq_factors(&spec.sd(1))?;
            let here = weight::shifted(spec, &weight::phi0_sq_factors(spec)?, 1)?;
            let lhs = weight::ratio(spec, &up, &here)?;
            let rhs = spec.v_fn().sh_half(1).mul_fun(&phi.pow(2));
            cmp(rat_v(lhs), rat_v(rhs))
        }
        Ident::PhiMForms => cmp(fun(spec.phi_m(k)?), fun(spec.phi_m_id_alt(k)?)),
        _ => unreachable!(),
    }
}

fn run_job(label: &str, job: &Job) -> CaseRecord {
    let spec = &job.spec;
    let mut id = format!("identity/{label}/{}", job.ident.name());
    if let Some(t) = job.vtype {
        id.push_str(&format!("/{}", t.code()));
    }
    if let Some(k) = job.index {
        id.push_str(&format!("/{k}"));
    }
    let meta = CaseMeta { family: Some(label.to_string()), n: job.index, ..CaseMeta::default() };
    CaseRecord::run(id, meta, || {
        if spec.id == FamilyId::AW && job.ident.needs_split() && spec.params.rho.is_none() {
            return Ok(Outcome::Skip(SPLIT.into()));
        }
        match job.ident {
            Ident::ForwardShift
            | Ident::BackwardShift
            | Ident::Hamiltonian
            | Ident::BackwardForward
            | Ident::ForwardBackward => operator_case(spec, job.ident, job.index.unwrap_or(0)),
            _ if spec.id.is_idqm() => id_case(spec, job.ident, job.index, job.vtype),
            _ => rd_case(spec, job.ident, job.index),
        }
    })
}

/// All identities for every configured family with indices up to `identity_max_index`.
pub fn run_identity_suite(cfg: &SuiteConfig) -> Result<VerifyReport> {
    let specs = cfg.specs()?;
    let mut jobs = Vec::new();
    for spec in &specs {
        let label = spec.describe();
        for j in jobs_for(spec, cfg.identity_max_index, cfg.phi_m_max) {
            jobs.push((label.clone(), j));
        }
    }
    let recs: Vec<CaseRecord> =
        super::pool().install(|| jobs.par_iter().map(|(label, j)| run_job(label, j)).collect());
    Ok(VerifyReport::new("identity", recs))
}
