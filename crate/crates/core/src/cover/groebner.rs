//! Multivariate polynomials over `Q` in graded reverse lex order,
//! Buchberger's algorithm, and rational solutions of zero-dimensional
//! systems.
//!
//! Bases over `Q` are computed modulo word-sized primes and lifted by
//! Chinese remaindering and rational reconstruction. A lift is accepted
//! once it is stable and passes an exact check over `Q`: every input
//! reduces to zero and every S-polynomial of the lift does too.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::poly::{rational_roots, BasePolynomial};

type Exps = SmallVec<[u16; 24]>;

/// Exponent vector ordered by graded reverse lex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Mono {
    deg: u32,
    e: Exps,
}

impl Mono {
    fn new(e: impl IntoIterator<Item = u16>) -> Self {
        let e: Exps = e.into_iter().collect();
        Mono {
            deg: e.iter().map(|&x| x as u32).sum(),
            e,
        }
    }

    fn degree(&self) -> u32 {
        self.deg
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.e.iter().zip(&other.e).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Deref for Mono {
    type Target = [u16];

    fn deref(&self) -> &[u16] {
        &self.e
    }
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u16], b: &[u16]) -> Mono {
    Mono::new(a.iter().zip(b).map(|(x, y)| *x.max(y)))
}

fn quotient(a: &[u16], b: &[u16]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn shift(m: &[u16], q: &[u16]) -> Mono {
    Mono::new(m.iter().zip(q).map(|(x, y)| x + y))
}

trait Field {
    type E: Clone + PartialEq;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

struct Rationals;

impl Field for Rationals {
    type E = BigRational;

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

/// `Z/p` for a prime `p < 2^31`.
struct Fp(u64);

impl Field for Fp {
    type E = u64;

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }

    fn inv(&self, a: &u64) -> u64 {
        let (mut base, mut e, mut acc) = (*a, self.0 - 2, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.0;
            }
            base = base * base % self.0;
            e >>= 1;
        }
        acc
    }
}

/// Sparse polynomial over a field; the last entry is the leading term.
type Terms<E> = BTreeMap<Mono, E>;

fn add_term<F: Field>(k: &F, p: &mut Terms<F::E>, m: Mono, c: F::E) {
    use std::collections::btree_map::Entry;
    match p.entry(m) {
        Entry::Vacant(e) => {
            if !k.is_zero(&c) {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            let s = k.add(e.get(), &c);
            if k.is_zero(&s) {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

fn is_constant<E>(p: &Terms<E>) -> bool {
    p.keys().all(|m| m.iter().all(|&e| e == 0))
}

fn leading<E>(p: &Terms<E>) -> &Mono {
    p.last_key_value().expect("nonzero polynomial").0
}

fn monic<F: Field>(k: &F, p: &Terms<F::E>) -> Terms<F::E> {
    match p.last_key_value() {
        Some((_, c)) => {
            let inv = k.inv(c);
            p.iter().map(|(m, a)| (m.clone(), k.mul(a, &inv))).collect()
        }
        None => Terms::new(),
    }
}

/// Full reduction of `p` modulo monic `basis` (every term, not only the
/// leading one).
fn reduce<F: Field>(k: &F, p: &Terms<F::E>, basis: &[&Terms<F::E>]) -> Terms<F::E> {
    let mut p = p.clone();
    let mut rem = Terms::new();
    while let Some((m, c)) = p.pop_last() {
        match basis.iter().find(|g| divides(leading(g), &m)) {
            Some(g) => {
                let q = quotient(&m, leading(g));
                let neg = k.neg(&c);
                // leading terms cancel; subtract the tail only
                for (tm, tc) in g.iter().rev().skip(1) {
                    add_term(k, &mut p, shift(tm, &q), k.mul(tc, &neg));
                }
            }
            None => {
                rem.insert(m, c);
            }
        }
    }
    rem
}

/// S-polynomial of two monic polynomials.
fn s_poly<F: Field>(k: &F, f: &Terms<F::E>, g: &Terms<F::E>) -> Terms<F::E> {
    let l = lcm(leading(f), leading(g));
    let qf = quotient(&l, leading(f));
    let qg = quotient(&l, leading(g));
    let mut out: Terms<F::E> = f.iter().map(|(m, c)| (shift(m, &qf), c.clone())).collect();
    for (m, c) in g {
        add_term(k, &mut out, shift(m, &qg), k.neg(c));
    }
    out
}

/// Basis under construction. Elements whose leading monomial becomes
/// divisible by a newer one are retired and their remainders re-added, so
/// the live set stays minimal.
struct Builder<'a, F: Field> {
    k: &'a F,
    slots: Vec<Option<Terms<F::E>>>,
    queue: BTreeSet<(Mono, usize, usize)>,
    pending: HashSet<(usize, usize)>,
}

impl<F: Field> Builder<'_, F> {
    fn live(&self) -> impl Iterator<Item = (usize, &Terms<F::E>)> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, g)| g.as_ref().map(|g| (i, g)))
    }

    fn lead(&self, i: usize) -> &Mono {
        leading(self.slots[i].as_ref().unwrap())
    }

    /// Returns `false` once a constant turns up.
    fn insert(&mut self, r: Terms<F::E>) -> bool {
        let k = self.k;
        let mut todo = vec![r];
        while let Some(p) = todo.pop() {
            let live: Vec<&Terms<F::E>> = self.live().map(|(_, g)| g).collect();
            let p = reduce(k, &p, &live);
            if p.is_empty() {
                continue;
            }
            if is_constant(&p) {
                return false;
            }
            let p = monic(k, &p);
            let lm = leading(&p).clone();
            let retired: Vec<usize> = self
                .live()
                .filter(|(_, h)| divides(&lm, leading(h)))
                .map(|(i, _)| i)
                .collect();
            for i in retired {
                todo.push(self.slots[i].take().unwrap());
            }
            let slots = &self.slots;
            self.queue
                .retain(|(_, a, b)| slots[*a].is_some() && slots[*b].is_some());
            self.pending
                .retain(|(a, b)| slots[*a].is_some() && slots[*b].is_some());
            let idx = self.slots.len();
            self.slots.push(Some(p));
            let others: Vec<usize> = self.live().map(|(i, _)| i).filter(|&i| i != idx).collect();
            for i in others {
                let l = lcm(self.lead(i), &lm);
                self.queue.insert((l, i, idx));
                self.pending.insert((i, idx));
            }
        }
        true
    }
}

/// Reduced basis over `k`, sorted by leading monomial; `[1]` for the unit
/// ideal.
fn buchberger<F: Field>(k: &F, nvars: usize, polys: &[Terms<F::E>]) -> Vec<Terms<F::E>> {
    let unit = || vec![Terms::from([(Mono::new(vec![0; nvars]), k.one())])];
    let mut b = Builder {
        k,
        slots: Vec::new(),
        queue: BTreeSet::new(),
        pending: HashSet::new(),
    };
    for p in polys {
        if !b.insert(p.clone()) {
            return unit();
        }
    }
    while let Some((l, i, j)) = b.queue.pop_first() {
        b.pending.remove(&(i, j));
        let (mi, mj) = (b.lead(i), b.lead(j));
        if mi.iter().zip(mj.iter()).all(|(a, c)| *a == 0 || *c == 0) {
            continue;
        }
        let key = |a: usize, c: usize| (a.min(c), a.max(c));
        let chain = b.live().any(|(t, g)| {
            t != i
                && t != j
                && divides(leading(g), &l)
                && !b.pending.contains(&key(i, t))
                && !b.pending.contains(&key(j, t))
        });
        if chain {
            continue;
        }
        let s = s_poly(
            k,
            b.slots[i].as_ref().unwrap(),
            b.slots[j].as_ref().unwrap(),
        );
        if !b.insert(s) {
            return unit();
        }
    }
    let live: Vec<Terms<F::E>> = b.live().map(|(_, g)| g.clone()).collect();
    let mut reduced: Vec<Terms<F::E>> = (0..live.len())
        .map(|i| {
            let others: Vec<&Terms<F::E>> = live
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g)
                .collect();
            let mut tail = live[i].clone();
            let (lm, lc) = tail.pop_last().unwrap();
            let mut g = reduce(k, &tail, &others);
            g.insert(lm, lc);
            monic(k, &g)
        })
        .collect();
    reduced.sort_by(|a, b| leading(a).cmp(leading(b)));
    reduced
}

/// Exact test that `gb` is a Groebner basis of an ideal containing `polys`.
fn certifies(gb: &[Terms<BigRational>], polys: &[Terms<BigRational>]) -> bool {
    let refs: Vec<&Terms<BigRational>> = gb.iter().collect();
    if polys
        .iter()
        .any(|p| !reduce(&Rationals, p, &refs).is_empty())
    {
        return false;
    }
    (0..gb.len()).all(|j| {
        (0..j).all(|i| {
            let (a, b) = (leading(&gb[i]), leading(&gb[j]));
            a.iter().zip(b.iter()).all(|(x, y)| *x == 0 || *y == 0)
                || reduce(&Rationals, &s_poly(&Rationals, &gb[i], &gb[j]), &refs).is_empty()
        })
    })
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn to_residue(c: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = c.numer().mod_floor(&pb).to_u64()?;
    let d = c.denom().mod_floor(&pb).to_u64()?;
    (d != 0).then(|| Fp(p).mul(&n, &Fp(p).inv(&d)))
}

/// `r/s` with `r = a s (mod m)` and `|r|, |s| <= sqrt(m/2)`.
fn reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        (r0, r1, s0, s1) = (r1, r2, s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

/// Residues of one basis shape accumulated over several primes.
struct Lift {
    modulus: BigInt,
    coeffs: Vec<Vec<(Mono, BigInt)>>,
    last: Option<Vec<Terms<BigRational>>>,
}

impl Lift {
    fn absorb(&mut self, gp: &[Terms<u64>], p: u64) {
        let pb = BigInt::from(p);
        let inv = BigInt::from(Fp(p).inv(&(&self.modulus % &pb).to_u64().unwrap()));
        for (acc, g) in self.coeffs.iter_mut().zip(gp) {
            let mut merged: BTreeMap<Mono, BigInt> = acc.drain(..).collect();
            for m in g.keys() {
                merged.entry(m.clone()).or_default();
            }
            for (m, a) in merged.iter_mut() {
                let b = BigInt::from(*g.get(m).unwrap_or(&0));
                let t = ((b - &*a) * &inv).mod_floor(&pb);
                *a += &self.modulus * t;
            }
            *acc = merged.into_iter().collect();
        }
        self.modulus *= pb;
    }

    fn rational(&self) -> Option<Vec<Terms<BigRational>>> {
        self.coeffs
            .iter()
            .map(|g| {
                g.iter()
                    .map(|(m, a)| reconstruct(a, &self.modulus).map(|c| (m.clone(), c)))
                    .filter(|t| t.as_ref().is_none_or(|(_, c)| !c.is_zero()))
                    .collect()
            })
            .collect()
    }
}

const MAX_PRIMES: usize = 400;

fn groebner_terms(nvars: usize, polys: &[Terms<BigRational>]) -> Vec<Terms<BigRational>> {
    let mut lifts: HashMap<Vec<Mono>, Lift> = HashMap::new();
    let primes = (1u64 << 30..1u64 << 31).rev().filter(|&p| is_prime(p));
    for p in primes.take(MAX_PRIMES) {
        let Some(reduced) = polys
            .iter()
            .map(|f| {
                let mut out = Terms::new();
                for (m, c) in f {
                    add_term(&Fp(p), &mut out, m.clone(), to_residue(c, p)?);
                }
                Some(out)
            })
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let gp = buchberger(&Fp(p), nvars, &reduced);
        let shape: Vec<Mono> = gp.iter().map(|g| leading(g).clone()).collect();
        let lift = lifts.entry(shape).or_insert_with(|| Lift {
            modulus: BigInt::one(),
            coeffs: vec![Vec::new(); gp.len()],
            last: None,
        });
        lift.absorb(&gp, p);
        let candidate = lift.rational();
        if let Some(gb) = candidate.as_ref().filter(|_| candidate == lift.last) {
            if certifies(gb, polys) {
                return gb.clone();
            }
        }
        lift.last = candidate;
    }
    buchberger(&Rationals, nvars, polys)
}

/// Sparse polynomial over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: Terms<BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono::new(vec![0; nvars]), c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(Mono::new(m), BigRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        is_constant(&self.terms)
    }

    fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.last_key_value()
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&Rationals, &mut out.terms, m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &other.terms {
            for (m2, c2) in &self.terms {
                add_term(&Rationals, &mut out.terms, shift(m2, m), c * c2);
            }
        }
        out
    }

    /// Sets variable `i` to `value`.
    pub fn substitute(&self, i: usize, value: &BigRational) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut ex = m.e.clone();
            let e = std::mem::take(&mut ex[i]);
            let c = c * num_traits::pow(value.clone(), e as usize);
            add_term(&Rationals, &mut out.terms, Mono::new(ex), c);
        }
        out
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.iter().zip(point).fold(c.clone(), |acc, (&e, x)| {
                    acc * num_traits::pow(x.clone(), e as usize)
                })
            })
            .sum()
    }
}

/// Reduced Groebner basis, sorted by leading monomial. `[1]` for the unit
/// ideal.
pub fn groebner(polys: &[MPoly]) -> Vec<MPoly> {
    let Some(nvars) = polys.first().map(MPoly::nvars) else {
        return vec![];
    };
    let terms: Vec<Terms<BigRational>> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.terms.clone())
        .collect();
    groebner_terms(nvars, &terms)
        .into_iter()
        .map(|terms| MPoly { nvars, terms })
        .collect()
}

fn reduce_mpoly(p: &MPoly, gb: &[MPoly]) -> MPoly {
    let refs: Vec<&Terms<BigRational>> = gb.iter().map(|g| &g.terms).collect();
    MPoly {
        nvars: p.nvars,
        terms: reduce(&Rationals, &p.terms, &refs),
    }
}

/// Monomials outside the leading-term ideal; `None` when there are
/// infinitely many (the system is not zero-dimensional).
fn normal_set(gb: &[MPoly], nvars: usize) -> Option<Vec<Mono>> {
    let leads: Vec<&Mono> = gb.iter().map(|g| g.leading().unwrap().0).collect();
    let mut caps = vec![None; nvars];
    for m in &leads {
        let support: Vec<usize> = (0..nvars).filter(|&i| m[i] > 0).collect();
        if let [i] = support[..] {
            caps[i] = Some(caps[i].map_or(m[i], |c: u16| c.min(m[i])));
        }
    }
    let caps: Vec<u16> = caps.into_iter().collect::<Option<_>>()?;
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    'outer: loop {
        if !leads.iter().any(|l| divides(l, &cur)) {
            out.push(Mono::new(cur.iter().copied()));
        }
        for i in 0..nvars {
            cur[i] += 1;
            if cur[i] < caps[i] {
                continue 'outer;
            }
            cur[i] = 0;
        }
        break;
    }
    out.sort();
    Some(out)
}

/// Monic generator of `I ∩ Q[x_z]`, from the first linear dependency among
/// the normal forms of `1, x_z, x_z^2, ...`.
fn eliminant(gb: &[MPoly], basis: &[Mono], z: usize, nvars: usize) -> BasePolynomial {
    let index: BTreeMap<&Mono, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let to_vec = |p: &MPoly| {
        let mut v = vec![BigRational::zero(); basis.len()];
        for (m, c) in &p.terms {
            v[index[m]] = c.clone();
        }
        v
    };
    let zvar = MPoly::var(nvars, z);
    // rows in echelon form, each with the combination of powers producing it
    let mut echelon: Vec<(usize, Vec<BigRational>, Vec<BigRational>)> = Vec::new();
    let mut power = reduce_mpoly(&MPoly::constant(nvars, BigRational::one()), gb);
    for k in 0..=basis.len() {
        let mut v = to_vec(&power);
        let mut combo = vec![BigRational::zero(); k + 1];
        combo[k] = BigRational::one();
        for (piv, row, rc) in &echelon {
            if v[*piv].is_zero() {
                continue;
            }
            let c = v[*piv].clone() / &row[*piv];
            for (a, b) in v.iter_mut().zip(row) {
                *a -= &c * b;
            }
            for (a, b) in combo.iter_mut().zip(rc) {
                *a -= &c * b;
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            Some(piv) => echelon.push((piv, v, combo)),
            None => return BasePolynomial::new(combo).make_monic(),
        }
        power = reduce_mpoly(&power.mul(&zvar), gb);
    }
    unreachable!("powers of one variable are dependent in a finite quotient")
}

/// All rational points of a zero-dimensional system.
///
/// The eliminant of the last variable is read off the finite quotient
/// algebra; each of its rational roots is substituted and the remaining
/// variables are solved recursively. A positive-dimensional system is
/// reported as an error.
pub fn rational_solutions(polys: &[MPoly], nvars: usize) -> Result<Vec<Vec<BigRational>>> {
    solve_prefix(polys.to_vec(), nvars, nvars)
}

fn solve_prefix(polys: Vec<MPoly>, nvars: usize, active: usize) -> Result<Vec<Vec<BigRational>>> {
    let polys: Vec<MPoly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    if polys.iter().any(MPoly::is_constant) {
        return Ok(vec![]);
    }
    if active == 0 {
        return Ok(vec![vec![]]);
    }
    let not_zero_dim = || {
        Error::InvariantViolation("undetermined-coefficient system is not zero-dimensional".into())
    };
    if polys.is_empty() {
        return Err(not_zero_dim());
    }
    let gb = groebner(&polys);
    if gb.iter().any(MPoly::is_constant) {
        return Ok(vec![]);
    }
    // variables already eliminated have exponent 0 everywhere; pin them so
    // the quotient stays finite
    let mut pinned = gb.clone();
    for i in active..nvars {
        pinned.push(MPoly::var(nvars, i));
    }
    let pinned = groebner(&pinned);
    let basis = normal_set(&pinned, nvars).ok_or_else(not_zero_dim)?;
    let z = active - 1;
    let elim = eliminant(&pinned, &basis, z, nvars);
    let mut out = Vec::new();
    for r in rational_roots(&elim) {
        let sub: Vec<MPoly> = gb.iter().map(|g| g.substitute(z, &r)).collect();
        for mut sol in solve_prefix(sub, nvars, z)? {
            sol.push(r.clone());
            out.push(sol);
        }
    }
    debug_assert!(out
        .iter()
        .all(|s| polys.iter().all(|p| p.eval(s).is_zero())));
    Ok(out)
}
