use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::base::BasePolynomial;
use super::matrix::poly_determinant;

/// Polynomial in the fibre coordinate `t` with coefficients in `Q[x]`,
/// stored ascending in `t` without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TPoly {
    coeffs: Vec<BasePolynomial>,
}

impl TPoly {
    pub fn new(mut coeffs: Vec<BasePolynomial>) -> Self {
        while coeffs.last().is_some_and(BasePolynomial::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BasePolynomial::one())
    }

    pub fn constant(c: BasePolynomial) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: BasePolynomial, k: usize) -> Self {
        let mut v = vec![BasePolynomial::zero(); k];
        v.push(c);
        Self::new(v)
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(BasePolynomial::one(), 1)
    }

    pub fn coeffs(&self) -> &[BasePolynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BasePolynomial {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BasePolynomial> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(BasePolynomial::is_one)
    }

    /// Largest `x`-degree among the coefficients.
    pub fn x_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(BasePolynomial::degree).max()
    }

    pub fn scale(&self, c: &BasePolynomial) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&BigRational::from_integer(i.into())))
                .collect(),
        )
    }

    /// Partial derivative in `x`.
    pub fn derivative_x(&self) -> Self {
        Self::new(self.coeffs.iter().map(BasePolynomial::derivative).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Division by a polynomial monic in `t`; exact over `Q[x]`.
    pub fn div_rem_monic(&self, d: &TPoly) -> (TPoly, TPoly) {
        assert!(d.is_monic(), "divisor must be monic in t");
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (TPoly::zero(), self.clone());
        }
        let mut q = vec![BasePolynomial::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = &r[i + j] - &(&c * dc);
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (TPoly::new(q), TPoly::new(r))
    }

    pub fn rem_monic(&self, d: &TPoly) -> TPoly {
        self.div_rem_monic(d).1
    }

    /// Quotient by a monic divisor when the division is exact.
    pub fn exact_div_monic(&self, d: &TPoly) -> Option<TPoly> {
        let (q, r) = self.div_rem_monic(d);
        r.is_zero().then_some(q)
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) a mod d`.
    pub fn pseudo_rem(&self, d: &TPoly) -> TPoly {
        let dd = d.degree().expect("pseudo-division by zero");
        let lead = d.leading().unwrap();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.leading().unwrap().clone();
            let shifted = TPoly::monomial(c, rd - dd);
            r = &r.scale(lead) - &(&shifted * d);
        }
        r
    }

    /// Monic gcd (in `x`) of the coefficients.
    pub fn content(&self) -> BasePolynomial {
        self.coeffs
            .iter()
            .fold(BasePolynomial::zero(), |g, c| BasePolynomial::gcd(&g, c))
    }

    pub fn primitive_part(&self) -> TPoly {
        let c = self.content();
        if c.is_zero() {
            return TPoly::zero();
        }
        TPoly::new(
            self.coeffs
                .iter()
                .map(|a| a.exact_div(&c).expect("content divides every coefficient"))
                .collect(),
        )
    }

    /// Greatest common divisor over `Q(x)`, primitive over `Q[x]` with
    /// monic leading coefficient (primitive remainder sequence).
    pub fn gcd(a: &TPoly, b: &TPoly) -> TPoly {
        let (mut a, mut b) = (a.primitive_part(), b.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        match a.leading() {
            Some(l) => a.scale(&BasePolynomial::constant(
                l.leading().expect("nonzero leading coefficient").recip(),
            )),
            None => a,
        }
    }

    /// Gcd normalized to be monic in `t`; `None` if that normalization
    /// leaves `Q[x]` (cannot happen when one argument is monic).
    pub fn gcd_monic(a: &TPoly, b: &TPoly) -> Option<TPoly> {
        let g = TPoly::gcd(a, b);
        let lead = g.leading()?.clone();
        let coeffs = g
            .coeffs
            .iter()
            .map(|c| c.exact_div(&lead))
            .collect::<Option<Vec<_>>>()?;
        Some(TPoly::new(coeffs))
    }

    /// `self(t + c)`
    pub fn shift_t(&self, c: &BasePolynomial) -> TPoly {
        let lin = TPoly::new(vec![c.clone(), BasePolynomial::one()]);
        self.coeffs.iter().rev().fold(TPoly::zero(), |acc, a| {
            &(&acc * &lin) + &TPoly::constant(a.clone())
        })
    }

    /// Substitutes `x = x0`, giving a polynomial in `t` over `Q`
    /// (returned as a [`BasePolynomial`] in the variable `t`).
    pub fn at_x(&self, x0: &BigRational) -> BasePolynomial {
        BasePolynomial::new(self.coeffs.iter().map(|c| c.eval(x0)).collect())
    }

    pub fn eval(&self, x0: &BigRational, t0: &BigRational) -> BigRational {
        self.at_x(x0).eval(t0)
    }

    /// Substitutes a polynomial in `x` for `t`.
    pub fn eval_t(&self, t: &BasePolynomial) -> BasePolynomial {
        self.coeffs
            .iter()
            .rev()
            .fold(BasePolynomial::zero(), |acc, c| &(&acc * t) + c)
    }
}

/// `Res_t(f, g)` as the determinant of the Sylvester matrix.
pub fn resultant(f: &TPoly, g: &TPoly) -> BasePolynomial {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return BasePolynomial::zero();
    };
    if m == 0 && n == 0 {
        return BasePolynomial::one();
    }
    let size = m + n;
    let mut rows = vec![vec![BasePolynomial::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.coeffs.iter().rev().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.coeffs.iter().rev().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    poly_determinant(rows)
}

impl Add for &TPoly {
    type Output = TPoly;

    fn add(self, rhs: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &TPoly {
    type Output = TPoly;

    fn sub(self, rhs: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TPoly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &TPoly {
    type Output = TPoly;

    fn mul(self, rhs: &TPoly) -> TPoly {
        if self.is_zero() || rhs.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![BasePolynomial::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        TPoly::new(out)
    }
}

impl Neg for &TPoly {
    type Output = TPoly;

    fn neg(self) -> TPoly {
        TPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let tp = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            parts.push(match (i, c.is_one()) {
                (0, _) => format!("({c})"),
                (_, true) => tp,
                _ => format!("({c})*{tp}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TPoly({self})")
    }
}
