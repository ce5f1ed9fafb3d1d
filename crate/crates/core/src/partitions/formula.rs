//! Exact box counts: three closed forms of the MacMahon number and its
//! q-analogue.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `(p-1)! (p-2)! ... 1!`, with `H(0) = 1`.
pub fn hyperfactorial(p: usize) -> BigUint {
    (1..p).fold(BigUint::one(), |acc, k| acc * factorial(k))
}

/// Triple product of `(i+j+k-1)/(i+j+k-2)`, accumulated as one fraction.
pub fn macmahon_product(a: usize, b: usize, c: usize) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c {
                num *= i + j + k - 1;
                den *= i + j + k - 2;
            }
        }
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// `C(n-1,a) C(n-2,a) ... C(n-b,a)` over the same product with `n = a+b`.
pub fn macmahon_binomial(a: usize, b: usize, c: usize) -> BigUint {
    let prod = |n: usize| (1..=b).fold(BigUint::one(), |acc, j| acc * binomial(n - j, a));
    prod(a + b + c) / prod(a + b)
}

/// The hyperfactorial form with `H(b+c-1)` in place of `H(b+c)` in the
/// denominator. It disagrees with the other two forms, e.g. 120 against 20
/// at (2,2,2); it is kept for diagnostics only.
pub fn macmahon_hyperfactorial_short(a: usize, b: usize, c: usize) -> (BigUint, BigUint) {
    let h = hyperfactorial;
    let num = h(a + b + c) * h(a) * h(b) * h(c);
    let den = h(a + b) * h((b + c).saturating_sub(1)) * h(c + a);
    (num, den)
}

/// The same form with `H(b+c)`, which agrees with the product form.
pub fn macmahon_hyperfactorial(a: usize, b: usize, c: usize) -> BigUint {
    let h = hyperfactorial;
    h(a + b + c) * h(a) * h(b) * h(c) / (h(a + b) * h(b + c) * h(c + a))
}

/// Number of plane partitions in an `a x b x c` box.
///
/// Evaluated by the product form and checked against the binomial form.
pub fn macmahon(a: usize, b: usize, c: usize) -> BigUint {
    let p = macmahon_product(a, b, c);
    assert_eq!(p, macmahon_binomial(a, b, c), "closed forms disagree at ({a},{b},{c})");
    p
}

/// Polynomial in `q` with non-negative integer coefficients, lowest degree
/// first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPolynomial(pub Vec<BigUint>);

impl QPolynomial {
    pub fn coefficients(&self) -> &[BigUint] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval_at_one(&self) -> BigUint {
        self.0.iter().sum()
    }

    /// Builds a polynomial from a histogram of degrees.
    pub fn from_degrees(degrees: impl IntoIterator<Item = usize>) -> Self {
        let mut coeffs: Vec<BigUint> = Vec::new();
        for d in degrees {
            if coeffs.len() <= d {
                coeffs.resize(d + 1, BigUint::zero());
            }
            coeffs[d] += 1u32;
        }
        if coeffs.is_empty() {
            coeffs.push(BigUint::zero());
        }
        Self(coeffs)
    }
}

/// Written `1 + q + 2q^2`, skipping zero terms.
impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if k > 0 && c.is_one() { String::new() } else { c.to_string() };
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{coeff}q")?,
                _ => write!(f, "{coeff}q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Generating polynomial of plane partitions in the box by number of boxes:
/// the triple product of `(1-q^(i+j+k-1))/(1-q^(i+j+k-2))`, divided out
/// exactly.
pub fn macdonald_q(a: usize, b: usize, c: usize) -> QPolynomial {
    // exponent balance: numerator factors count +1, denominator -1
    let top = a + b + c;
    let mut balance = vec![0i64; top + 1];
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c {
                balance[i + j + k - 1] += 1;
                balance[i + j + k - 2] -= 1;
            }
        }
    }
    let mut poly: Vec<BigInt> = vec![BigInt::one()];
    for (e, &m) in balance.iter().enumerate() {
        for _ in 0..m.max(0) {
            poly = mul_one_minus(&poly, e);
        }
    }
    for (e, &m) in balance.iter().enumerate() {
        for _ in 0..(-m).max(0) {
            poly = div_one_minus(&poly, e);
        }
    }
    while poly.len() > 1 && poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    QPolynomial(
        poly.into_iter()
            .map(|c| c.to_biguint().expect("coefficients are non-negative"))
            .collect(),
    )
}

fn mul_one_minus(p: &[BigInt], e: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + e];
    for (k, c) in p.iter().enumerate() {
        out[k] += c;
        out[k + e] -= c;
    }
    out
}

fn div_one_minus(p: &[BigInt], e: usize) -> Vec<BigInt> {
    assert!(e > 0 && p.len() > e, "division by 1 - q^{e} is not exact");
    let mut r = p.to_vec();
    // p = (1 - q^e) s  =>  s_k = p_k + s_(k-e)
    for k in e..r.len() {
        let prev = r[k - e].clone();
        r[k] += prev;
    }
    let deg = p.len() - e;
    assert!(r[deg..].iter().all(|c| c.is_zero()), "division by 1 - q^{e} is not exact");
    r.truncate(deg);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(macmahon(1, 1, 1), BigUint::from(2u32));
        assert_eq!(macmahon(2, 2, 2), BigUint::from(20u32));
        assert_eq!(macmahon(3, 4, 0), BigUint::one());
        assert_eq!(macmahon(0, 0, 0), BigUint::one());
    }

    #[test]
    fn short_hyperfactorial_form_is_off() {
        let (num, den) = macmahon_hyperfactorial_short(2, 2, 2);
        assert_eq!(&num / &den, BigUint::from(120u32));
        assert_eq!(macmahon_hyperfactorial(2, 2, 2), BigUint::from(20u32));
    }

    #[test]
    fn q_polynomials() {
        assert_eq!(macdonald_q(1, 1, 1).to_string(), "1 + q");
        assert_eq!(macdonald_q(2, 1, 1).to_string(), "1 + q + q^2");
        assert_eq!(macdonald_q(4, 3, 0).to_string(), "1");
        assert_eq!(macdonald_q(2, 2, 2).eval_at_one(), BigUint::from(20u32));
        assert!(macdonald_q(2, 2, 2).to_string().starts_with("1 + q + 3q^2 + "));
    }
}
