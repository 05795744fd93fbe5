//! Randomized checks of the two Casoratian determinant lemmas.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{CaseMeta, CaseRecord, Outcome, Value, VerifyReport};
use super::SuiteConfig;
use crate::det::det;
use crate::lattice::{product, CoordModel, LatticeFun};
use crate::scalar::{floor_div, g, i_pow, rat, GaussScalar};

fn coeff<R: Rng>(rng: &mut R) -> crate::scalar::Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

/// Random polynomial of degree at most 3 in the model variable.
fn poly<R: Rng>(rng: &mut R, m: &CoordModel) -> LatticeFun {
    let deg = rng.gen_range(0..=3);
    (0..=deg).fold(m.zero(), |acc, k| &acc + &m.monomial(g(coeff(rng)), k))
}

/// Random Laurent polynomial with exponents in `-2..=2` and Gaussian coefficients.
fn laurent<R: Rng>(rng: &mut R, m: &CoordModel) -> LatticeFun {
    let lo = rng.gen_range(-2..=0);
    let hi = rng.gen_range(0..=2);
    (lo..=hi).fold(m.zero(), |acc, k| {
        let im = if rng.gen_bool(0.5) { coeff(rng) } else { rat(0, 1) };
        &acc + &m.monomial(GaussScalar::new(coeff(rng), im), k)
    })
}

fn det_or_one(m: &CoordModel, mat: &[Vec<LatticeFun>]) -> LatticeFun {
    det(mat).unwrap_or_else(|| m.one())
}

/// `q(x) f(x) + r(x) f(x + 1)` applied in order `D_1` first.
fn apply_rd(q: &[LatticeFun], r: &[LatticeFun], upto: usize, f: &LatticeFun) -> LatticeFun {
    (0..upto).fold(f.clone(), |g, l| &(&q[l] * &g) + &(&r[l] * &g.sh(1)))
}

/// `det(prod D_l f_k) = prod_l prod_m r_m(x + l - 1) W_C[f](x)`.
pub fn check_casoratian_lemma_rdqm(n: usize, seed: u64) -> VerifyReport {
    let rec = CaseRecord::run(format!("lemma/rdqm/n={n}/seed={seed}"), CaseMeta { n: Some(n as i64), ..CaseMeta::default() }, || {
        let m = CoordModel::additive_x();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q: Vec<LatticeFun> = (0..n).map(|_| poly(&mut rng, &m)).collect();
        let r: Vec<LatticeFun> = (0..n).map(|_| poly(&mut rng, &m)).collect();
        let f: Vec<LatticeFun> = (0..n).map(|_| poly(&mut rng, &m)).collect();
        let lhs_mat: Vec<Vec<LatticeFun>> =
            (0..n).map(|j| f.iter().map(|fk| apply_rd(&q, &r, j, fk)).collect()).collect();
        let w_mat: Vec<Vec<LatticeFun>> = (0..n).map(|j| f.iter().map(|fk| fk.sh(j as i64)).collect()).collect();
        let mut pre = Vec::new();
        for l in 1..=n {
            for mm in 1..=(n - l) {
                pre.push(r[mm - 1].sh(l as i64 - 1));
            }
        }
        let rhs = &product(&m, &pre) * &det_or_one(&m, &w_mat);
        Ok(Outcome::Compare(Value::Fun(det_or_one(&m, &lhs_mat)), Value::Fun(rhs)))
    });
    VerifyReport::new("lemma", vec![rec])
}

/// `W_gamma[f](x) = i^(n(n-1)/2) det(f_k(x_j))`, `x_j = x + i((n+1)/2 - j) gamma`.
fn w_gamma(m: &CoordModel, f: &[LatticeFun]) -> LatticeFun {
    let n = f.len() as i64;
    let mat: Vec<Vec<LatticeFun>> =
        (1..=n).map(|j| f.iter().map(|fk| fk.sh_half(n + 1 - 2 * j)).collect()).collect();
    det_or_one(m, &mat).scale(&i_pow(n * (n - 1) / 2))
}

/// `q(x) f(x - i gamma/2) + r(x) f(x + i gamma/2)`.
fn apply_id(q: &LatticeFun, r: &LatticeFun, f: &LatticeFun) -> LatticeFun {
    &(q * &f.sh_half(-1)) + &(r * &f.sh_half(1))
}

fn chain_id(q: &[LatticeFun], r: &[LatticeFun], upto: i64, f: &LatticeFun) -> LatticeFun {
    (0..upto.max(0) as usize).fold(f.clone(), |g, l| apply_id(&q[l], &r[l], &g))
}

/// The interleaved `D / D'` determinant identity on the multiplicative `z` model.
pub fn check_casoratian_lemma_idqm(n: usize, seed: u64) -> VerifyReport {
    let rec = CaseRecord::run(format!("lemma/idqm/n={n}/seed={seed}"), CaseMeta { n: Some(n as i64), ..CaseMeta::default() }, || {
        let m = CoordModel::multiplicative_z(rat(1, 4));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |k: usize| -> Vec<LatticeFun> { (0..k).map(|_| laurent(&mut rng, &m)).collect() };
        let (q, r, qp, rp, f) = (draw(n), draw(n), draw(n), draw(n), draw(n));
        let ni = n as i64;
        let mut mat = Vec::new();
        for j in 1..=ni {
            let row: Vec<LatticeFun> = if j <= floor_div(ni + 1, 2) {
                f.iter().map(|fk| chain_id(&q, &r, ni + 1 - 2 * j, fk)).collect()
            } else {
                let k = (2 * j - ni - 1) as usize;
                f.iter().map(|fk| apply_id(&qp[k - 1], &rp[k - 1], &chain_id(&q, &r, 2 * j - ni - 2, fk))).collect()
            };
            mat.push(row);
        }
        let lhs = det_or_one(&m, &mat).scale(&i_pow(ni * (ni - 1) / 2));
        let mut pre = Vec::new();
        for mm in 1..=floor_div(ni, 2) {
            let k = (ni + 1 - 2 * mm) as usize - 1;
            pre.push(&(&r[k] * &qp[k]) - &(&rp[k] * &q[k]));
        }
        for mm in 0..=(ni - 2) {
            let k = (ni - 1 - mm) as usize - 1;
            for l in 0..=floor_div(mm - 1, 2) {
                let h = mm - 2 * l;
                pre.push(&r[k].sh_half(h) * &q[k].sh_half(-h));
            }
        }
        let rhs = &product(&m, &pre) * &w_gamma(&m, &f);
        Ok(Outcome::Compare(Value::Fun(lhs), Value::Fun(rhs)))
    });
    VerifyReport::new("lemma", vec![rec])
}

/// Both lemmas for `n = 1..=lemma_max_n` over every configured seed.
pub fn run_lemma_suite(cfg: &SuiteConfig) -> VerifyReport {
    let mut jobs = Vec::new();
    for n in 1..=cfg.lemma_max_n as usize {
        for &s in &cfg.lemma_seeds {
            jobs.push((false, n, s));
            jobs.push((true, n, s));
        }
    }
    let parts: Vec<VerifyReport> = super::pool().install(|| {
        jobs.par_iter()
            .map(|&(id, n, s)| if id { check_casoratian_lemma_idqm(n, s) } else { check_casoratian_lemma_rdqm(n, s) })
            .collect()
    });
    VerifyReport::merge("lemma", parts)
}
