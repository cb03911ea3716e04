use super::base::BasePolynomial;

/// Square matrix over `Q[x]`, row-major.
pub type PolyMatrix = Vec<Vec<BasePolynomial>>;

/// Determinant by fraction-free (Bareiss) elimination; every division is
/// exact in `Q[x]`.
pub fn poly_determinant(mut m: PolyMatrix) -> BasePolynomial {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return BasePolynomial::one();
    }
    let mut sign_flip = false;
    let mut prev = BasePolynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return BasePolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
            }
            m[i][k] = BasePolynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        -&d
    } else {
        d
    }
}

pub fn poly_mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..k).fold(BasePolynomial::zero(), |acc, l| {
                        &acc + &(&a[i][l] * &b[l][j])
                    })
                })
                .collect()
        })
        .collect()
}

pub fn poly_identity(n: usize) -> PolyMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BasePolynomial::one()
                    } else {
                        BasePolynomial::zero()
                    }
                })
                .collect()
        })
        .collect()
}
