use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest index held in the Stirling tables.
pub const STIRLING_MAX: usize = 30;

type Table = [[u128; STIRLING_MAX + 1]; STIRLING_MAX + 1];

struct Tables {
    first: Table,
    second: Table,
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let mut first = [[0u128; STIRLING_MAX + 1]; STIRLING_MAX + 1];
        let mut second = [[0u128; STIRLING_MAX + 1]; STIRLING_MAX + 1];
        first[0][0] = 1;
        second[0][0] = 1;
        for n in 1..=STIRLING_MAX {
            for k in 1..=n {
                first[n][k] = (n as u128 - 1) * first[n - 1][k] + first[n - 1][k - 1];
                second[n][k] = k as u128 * second[n - 1][k] + second[n - 1][k - 1];
            }
        }
        Tables { first, second }
    })
}

fn check(i: usize, j: usize) -> Result<()> {
    let index = i.max(j);
    if index > STIRLING_MAX {
        return Err(Error::OutOfRange {
            index,
            max: STIRLING_MAX,
        });
    }
    Ok(())
}

/// Stirling number of the second kind S(i, j).
pub fn stirling2(i: usize, j: usize) -> Result<u128> {
    check(i, j)?;
    Ok(tables().second[i][j])
}

/// Unsigned Stirling number of the first kind |s(r, i)|.
pub fn stirling1_unsigned(r: usize, i: usize) -> Result<u128> {
    check(r, i)?;
    Ok(tables().first[r][i])
}

/// Signed Stirling number of the first kind s(r, i).
pub fn stirling1_signed(r: usize, i: usize) -> Result<i128> {
    let u = stirling1_unsigned(r, i)? as i128;
    Ok(if (r - i.min(r)) % 2 == 1 { -u } else { u })
}

/// Rising factorial (a)_l.
pub fn pochhammer(a: f64, l: usize) -> f64 {
    let mut p = 1.0;
    for k in 0..l {
        p *= a + k as f64;
    }
    p
}

/// (a)_l * (a+l)_m, which equals (a)_{l+m}.
pub fn pochhammer_sum_split(a: f64, l: usize, m: usize) -> f64 {
    pochhammer(a, l) * pochhammer(a + l as f64, m)
}

/// Binomial coefficient C(n, k) as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c.round()
}

/// (a)_r written as the polynomial Σ c_k a^k with c_k = |s(r,k)|.
#[derive(Debug, Clone, PartialEq)]
pub struct PochPoly {
    pub r: usize,
    pub coeffs: Vec<f64>,
}

impl PochPoly {
    pub fn new(r: usize) -> Self {
        let coeffs = if r <= STIRLING_MAX {
            (0..=r).map(|k| tables().first[r][k] as f64).collect()
        } else {
            // multiply out a(a+1)...(a+r-1)
            let mut c = vec![0.0; r + 1];
            c[0] = 1.0;
            for m in 0..r {
                for k in (1..=m + 1).rev() {
                    c[k] = c[k - 1] + m as f64 * c[k];
                }
                c[0] *= m as f64;
            }
            c
        };
        PochPoly { r, coeffs }
    }

    pub fn eval(&self, a: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * a + c)
    }

    /// i-th derivative with respect to `a`.
    pub fn derivative(&self, a: f64, i: usize) -> f64 {
        if i > self.r {
            return 0.0;
        }
        let mut acc = 0.0;
        for k in (i..=self.r).rev() {
            let falling: f64 = ((k - i + 1)..=k).map(|m| m as f64).product();
            acc = acc * a + self.coeffs[k] * falling;
        }
        acc
    }
}

/// i-th derivative of (a)_r with respect to `a`.
pub fn poch_derivative(a: f64, r: usize, i: usize) -> f64 {
    PochPoly::new(r).derivative(a, i)
}
