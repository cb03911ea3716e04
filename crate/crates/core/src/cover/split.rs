//! Solving `U^2 - f V^2 = S` for `U` monic of degree `m` in `t` and `V`
//! within the graded degree bounds.
//!
//! Write `u_j`, `v_j` for the coefficients of `t^(m-j)` and `a_k` for those
//! of `S`. Comparing coefficients of `t^(2m-k)` gives
//!
//! ```text
//! a_k = sum_{i+j=k} u_i u_j - f sum_{i+j=k} v_i v_j      (u_0 = 1)
//! ```
//!
//! For `k <= m` this fixes `u_k`. Splitting on the first nonzero `v_p`, the
//! equations `k = m+1, ..., m+p` fix `v_{m+1-p}, ..., v_m` by division by
//! `2 f v_p`, and the rest are constraints. When `2p > m` nothing is left
//! free (`v_p` itself comes from `a_{2p}` by a square root); otherwise the
//! free unknowns `v_p, ..., v_{m-p}` are solved for exactly. A pivot `v_p`
//! of positive degree is handled by the unstructured system in all
//! unknowns.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::galois::DoubleCoverData;
use super::groebner::{rational_solutions, MPoly};
use crate::error::{Error, Result};
use crate::poly::{BasePolynomial, SpectralPoly, TPoly};

/// Monic `U` of degree `m` with `deg_t(S - U^2) < m`.
pub(super) fn top_square_root(s: &TPoly, m: usize) -> TPoly {
    let a = |k: usize| s.coeff(2 * m - k);
    let half = BigRational::new(1.into(), 2.into());
    let mut u = vec![BasePolynomial::one()];
    for k in 1..=m {
        let cross = (1..k).fold(BasePolynomial::zero(), |acc, i| &acc + &(&u[i] * &u[k - i]));
        u.push((&a(k) - &cross).scale(&half));
    }
    TPoly::new(u.into_iter().rev().collect())
}

fn assemble(u: &[BasePolynomial], v: &[BasePolynomial], m: usize) -> (TPoly, TPoly) {
    let big_u = TPoly::new((0..=m).map(|i| u[m - i].clone()).collect());
    let big_v = TPoly::new((0..m).map(|i| v[m - i].clone()).collect());
    (big_u, big_v)
}

/// Every `(U, V)` with `U^2 - f V^2 = s`, for trace-free `s` of even degree.
pub(super) fn split_trace_free(
    cover: &DoubleCoverData,
    s: &SpectralPoly,
) -> Result<Vec<(TPoly, TPoly)>> {
    let m = s.n() / 2;
    let dm = s.deg_m();
    let f = cover.f();
    let big_s = s.to_tpoly();
    // any solution has U = Ut mod f
    let ut = top_square_root(&big_s, m);
    let diff = &big_s - &(&ut * &ut);
    let Some(r) = diff
        .coeffs()
        .iter()
        .map(|c| c.exact_div(f))
        .collect::<Option<Vec<_>>>()
    else {
        return Ok(vec![]);
    };
    let vb = |j: usize| cover.coefficient_bounds(dm, j).1;
    if (1..=m / 2).any(|p| vb(p).is_some_and(|b| b > 0)) {
        return unstructured(cover, s, &ut, &TPoly::new(r));
    }
    let mut out = Vec::new();
    if diff.is_zero() {
        out.push((ut, TPoly::zero()));
    }
    for p in (1..=m).filter(|&p| vb(p).is_some()) {
        if 2 * p > m {
            out.extend(forced_branch(cover, s, p));
        } else {
            out.extend(scalar_branch(cover, s, p)?);
        }
    }
    Ok(out)
}

/// `E_k = sum u_i u_j - f sum v_i v_j - a_k` with the current values.
fn residual(
    f: &BasePolynomial,
    a: &BasePolynomial,
    u: &[BasePolynomial],
    v: &[BasePolynomial],
    k: usize,
) -> BasePolynomial {
    let m = u.len() - 1;
    let lo = k.saturating_sub(m);
    let uu = (lo..=k.min(m)).fold(BasePolynomial::zero(), |acc, i| &acc + &(&u[i] * &u[k - i]));
    let vv = (lo.max(1)..=k.min(m))
        .filter(|&i| k - i >= 1)
        .fold(BasePolynomial::zero(), |acc, i| &acc + &(&v[i] * &v[k - i]));
    &(&uu - &(f * &vv)) - a
}

fn within(p: &BasePolynomial, bound: Option<usize>) -> bool {
    match (p.degree(), bound) {
        (None, _) => true,
        (Some(d), Some(b)) => d <= b,
        (Some(_), None) => false,
    }
}

/// Branch with `v_1 = ... = v_{p-1} = 0`, `v_p != 0` and `2p > m`.
fn forced_branch(cover: &DoubleCoverData, s: &SpectralPoly, p: usize) -> Option<(TPoly, TPoly)> {
    let m = s.n() / 2;
    let dm = s.deg_m();
    let f = cover.f();
    let vb = |j: usize| cover.coefficient_bounds(dm, j).1;
    let half = BigRational::new(1.into(), 2.into());
    let mut u = vec![BasePolynomial::zero(); m + 1];
    let mut v = vec![BasePolynomial::zero(); m + 1];
    u[0] = BasePolynomial::one();
    for k in 1..=2 * m {
        let e = residual(f, &s.a(k), &u, &v, k);
        if k <= m {
            u[k] = e.scale(&-&half);
        } else if k == 2 * p {
            let vp = e.exact_div(f)?.sqrt()?;
            if vp.is_zero() || !within(&vp, vb(p)) {
                return None;
            }
            v[p] = vp;
        } else if k > 2 * p && k <= m + p {
            let d = f.scale(&BigRational::from_integer(2.into()));
            let q = e.exact_div(&(&d * &v[p]))?;
            if !within(&q, vb(k - p)) {
                return None;
            }
            v[k - p] = q;
        } else if !e.is_zero() {
            return None;
        }
    }
    Some(assemble(&u, &v, m))
}

/// Polynomial in `x` with coefficients in `Q[unknowns]`, ascending.
#[derive(Clone)]
struct SymX(Vec<MPoly>);

impl SymX {
    fn known(nvars: usize, p: &BasePolynomial) -> Self {
        SymX(
            p.coeffs()
                .iter()
                .map(|c| MPoly::constant(nvars, c.clone()))
                .collect(),
        )
    }

    fn coeff(&self, i: usize, nvars: usize) -> MPoly {
        self.0.get(i).cloned().unwrap_or_else(|| MPoly::zero(nvars))
    }

    fn add(&self, o: &SymX, nvars: usize) -> SymX {
        let n = self.0.len().max(o.0.len());
        SymX(
            (0..n)
                .map(|i| self.coeff(i, nvars).add(&o.coeff(i, nvars)))
                .collect(),
        )
    }

    fn mul(&self, o: &SymX, nvars: usize) -> SymX {
        if self.0.is_empty() || o.0.is_empty() {
            return SymX(vec![]);
        }
        let mut out = vec![MPoly::zero(nvars); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        SymX(out)
    }

    fn scale_poly(&self, c: &MPoly) -> SymX {
        SymX(self.0.iter().map(|a| a.mul(c)).collect())
    }

    /// Quotient by a known polynomial; the remainder's coefficients are
    /// pushed as equations.
    fn div_known(&self, d: &BasePolynomial, nvars: usize, eqs: &mut Vec<MPoly>) -> SymX {
        let dd = d.degree().expect("nonzero divisor");
        let lc_inv = d.leading().unwrap().recip();
        let mut r = self.0.clone();
        if r.len() <= dd {
            eqs.extend(r);
            return SymX(vec![]);
        }
        let mut q = vec![MPoly::zero(nvars); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].scale(&lc_inv);
            for (j, dc) in d.coeffs().iter().enumerate() {
                r[i + j] = r[i + j].sub(&c.scale(dc));
            }
            q[i] = c;
        }
        eqs.extend(r.into_iter().take(dd));
        SymX(q)
    }

    /// Drops coefficients above `bound`, recording them as equations.
    fn truncate(mut self, bound: Option<usize>, eqs: &mut Vec<MPoly>) -> SymX {
        let keep = bound.map_or(0, |b| b + 1);
        if self.0.len() > keep {
            eqs.extend(self.0.drain(keep..));
        }
        self
    }

    fn eval(&self, point: &[BigRational]) -> BasePolynomial {
        BasePolynomial::new(self.0.iter().map(|c| c.eval(point)).collect())
    }
}

fn sym_residual(f: &SymX, a: &SymX, u: &[SymX], v: &[SymX], k: usize, nvars: usize) -> SymX {
    let m = u.len() - 1;
    let lo = k.saturating_sub(m);
    let mut uu = SymX(vec![]);
    for i in lo..=k.min(m) {
        uu = uu.add(&u[i].mul(&u[k - i], nvars), nvars);
    }
    let mut vv = SymX(vec![]);
    for i in (lo.max(1)..=k.min(m)).filter(|&i| k - i >= 1) {
        vv = vv.add(&v[i].mul(&v[k - i], nvars), nvars);
    }
    let minus = MPoly::constant(nvars, -BigRational::one());
    uu.add(&f.mul(&vv, nvars).scale_poly(&minus), nvars)
        .add(&a.scale_poly(&minus), nvars)
}

/// Branch with `v_1 = ... = v_{p-1} = 0`, a nonzero scalar `v_p`, and
/// `2p <= m`. Unknowns: `v_p, ..., v_{m-p}` and `z = 1/v_p`.
fn scalar_branch(
    cover: &DoubleCoverData,
    s: &SpectralPoly,
    p: usize,
) -> Result<Vec<(TPoly, TPoly)>> {
    let m = s.n() / 2;
    let dm = s.deg_m();
    let vb = |j: usize| cover.coefficient_bounds(dm, j).1;
    // variable layout
    let mut slots: Vec<(usize, usize)> = Vec::new();
    let mut nvars = 0;
    for j in p..=m - p {
        if let Some(b) = vb(j) {
            slots.push((j, nvars));
            nvars += b + 1;
        }
    }
    let z = nvars;
    nvars += 1;
    let f = SymX::known(nvars, cover.f());
    let mut u = vec![SymX(vec![]); m + 1];
    let mut v = vec![SymX(vec![]); m + 1];
    u[0] = SymX::known(nvars, &BasePolynomial::one());
    for &(j, first) in &slots {
        let b = vb(j).unwrap();
        v[j] = SymX((first..=first + b).map(|i| MPoly::var(nvars, i)).collect());
    }
    let mut eqs = vec![MPoly::var(nvars, slots[0].1)
        .mul(&MPoly::var(nvars, z))
        .sub(&MPoly::constant(nvars, BigRational::one()))];
    let half_z = MPoly::var(nvars, z).scale(&BigRational::new(1.into(), 2.into()));
    let minus_half = MPoly::constant(nvars, BigRational::new((-1).into(), 2.into()));
    for k in 1..=2 * m {
        let a = SymX::known(nvars, &s.a(k));
        let e = sym_residual(&f, &a, &u, &v, k, nvars);
        if k <= m {
            u[k] = e.scale_poly(&minus_half);
        } else if k <= m + p {
            let q = e.div_known(cover.f(), nvars, &mut eqs).scale_poly(&half_z);
            v[k - p] = q.truncate(vb(k - p), &mut eqs);
        } else {
            eqs.extend(e.0);
        }
    }
    eqs.retain(|e| !e.is_zero());
    let sols = rational_solutions(&eqs, nvars)?;
    Ok(sols
        .iter()
        .map(|pt| {
            let u: Vec<_> = u.iter().map(|c| c.eval(pt)).collect();
            let v: Vec<_> = v.iter().map(|c| c.eval(pt)).collect();
            assemble(&u, &v, m)
        })
        .collect())
}

/// Polynomial in `(t, x)` with coefficients polynomial in the unknowns.
#[derive(Clone)]
struct Generic {
    nvars: usize,
    terms: BTreeMap<(usize, usize), MPoly>,
}

impl Generic {
    fn known(nvars: usize, p: &TPoly) -> Self {
        let mut terms = BTreeMap::new();
        for (i, c) in p.coeffs().iter().enumerate() {
            for (e, r) in c.coeffs().iter().enumerate() {
                if !r.is_zero() {
                    terms.insert((i, e), MPoly::constant(nvars, r.clone()));
                }
            }
        }
        Self { nvars, terms }
    }

    fn add(&self, o: &Generic) -> Generic {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            let e = out
                .terms
                .entry(*k)
                .or_insert_with(|| MPoly::zero(self.nvars));
            *e = e.add(c);
        }
        out
    }

    fn scale(&self, c: &BigRational) -> Generic {
        Generic {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, p)| (*k, p.scale(c))).collect(),
        }
    }

    fn mul(&self, o: &Generic) -> Generic {
        let mut terms: BTreeMap<(usize, usize), MPoly> = BTreeMap::new();
        for (&(t1, x1), p1) in &self.terms {
            for (&(t2, x2), p2) in &o.terms {
                let e = terms
                    .entry((t1 + t2, x1 + x2))
                    .or_insert_with(|| MPoly::zero(self.nvars));
                *e = e.add(&p1.mul(p2));
            }
        }
        Generic {
            nvars: self.nvars,
            terms,
        }
    }

    fn equations(self) -> Vec<MPoly> {
        self.terms.into_values().filter(|p| !p.is_zero()).collect()
    }
}

/// `(t-exponent, x-degree bound)` per block, in variable order.
fn generic_block(nvars: usize, first: usize, shape: &[(usize, usize)]) -> (Generic, usize) {
    let mut terms = BTreeMap::new();
    let mut idx = first;
    for &(texp, xdeg) in shape {
        for e in 0..=xdeg {
            terms.insert((texp, e), MPoly::var(nvars, nvars - 1 - idx));
            idx += 1;
        }
    }
    (Generic { nvars, terms }, idx)
}

fn read_block(sol: &[BigRational], first: usize, shape: &[(usize, usize)]) -> TPoly {
    let mut coeffs: Vec<BasePolynomial> = Vec::new();
    let mut idx = first;
    for &(texp, xdeg) in shape {
        if coeffs.len() <= texp {
            coeffs.resize(texp + 1, BasePolynomial::zero());
        }
        coeffs[texp] = BasePolynomial::new(
            (idx..=idx + xdeg)
                .map(|i| sol[sol.len() - 1 - i].clone())
                .collect(),
        );
        idx += xdeg + 1;
    }
    TPoly::new(coeffs)
}

/// All unknowns at once: `U = Ut + f W` and `2 Ut W + f W^2 - V^2 = R`.
fn unstructured(
    cover: &DoubleCoverData,
    s: &SpectralPoly,
    ut: &TPoly,
    r: &TPoly,
) -> Result<Vec<(TPoly, TPoly)>> {
    let m = s.n() / 2;
    let dm = s.deg_m();
    let f = cover.f();
    let df = f.degree().unwrap();
    let w_shape: Vec<(usize, usize)> = (2..=m)
        .filter_map(|j| (j * dm).checked_sub(df).map(|b| (m - j, b)))
        .collect();
    let v_shape: Vec<(usize, usize)> = (1..=m)
        .filter_map(|j| cover.coefficient_bounds(dm, j).1.map(|b| (m - j, b)))
        .collect();
    let nvars: usize = w_shape.iter().chain(&v_shape).map(|&(_, b)| b + 1).sum();
    if nvars == 0 {
        return Ok(if r.is_zero() {
            vec![(ut.clone(), TPoly::zero())]
        } else {
            vec![]
        });
    }
    let (v, next) = generic_block(nvars, 0, &v_shape);
    let (w, _) = generic_block(nvars, next, &w_shape);
    let ug = Generic::known(nvars, ut);
    let fg = Generic::known(nvars, &TPoly::constant(f.clone()));
    let two = BigRational::from_integer(2.into());
    let minus_one = -BigRational::one();
    let lhs = ug
        .mul(&w)
        .scale(&two)
        .add(&fg.mul(&w.mul(&w)))
        .add(&v.mul(&v).scale(&minus_one))
        .add(&Generic::known(nvars, r).scale(&minus_one));
    let eqs = lhs.equations();
    if eqs.is_empty() {
        return Err(Error::InvariantViolation(
            "splitting system has no equations".into(),
        ));
    }
    Ok(rational_solutions(&eqs, nvars)?
        .into_iter()
        .map(|sol| {
            let v = read_block(&sol, 0, &v_shape);
            let w = read_block(&sol, next, &w_shape);
            (ut + &w.scale(f), v)
        })
        .collect())
}
