//! Dense univariate polynomials over the integers, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![BigInt::one()])
    }

    /// `c · t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.0.get(k).cloned().unwrap_or_default()
    }

    fn lead(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    fn scale(&self, c: &BigInt) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        Poly::new(self.0.iter().map(|x| x / &c).collect())
    }

    /// Exact quotient, or `None` if `divisor` does not divide `self` in Z[t].
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let (q, r) = self.div_rem_integral(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Long division that requires every quotient coefficient to be integral.
    fn div_rem_integral(&self, divisor: &Poly) -> Option<(Poly, Poly)> {
        let mut rem = self.0.clone();
        let dl = divisor.0.len();
        if rem.len() < dl {
            return Some((Poly::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); rem.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let top = &rem[k + dl - 1];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(divisor.lead());
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.0.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            q[k] = c;
        }
        Some((Poly::new(q), Poly::new(rem)))
    }

    /// Pseudo-remainder of `self` by `divisor`.
    fn pseudo_rem(&self, divisor: &Poly) -> Poly {
        let (Some(da), Some(db)) = (self.degree(), divisor.degree()) else {
            return self.clone();
        };
        if da < db {
            return self.clone();
        }
        let factor = num_traits::pow(divisor.lead().clone(), da - db + 1);
        let (_, r) = self
            .scale(&factor)
            .div_rem_integral(divisor)
            .expect("pseudo-division is integral");
        r
    }

    /// Primitive greatest common divisor with positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Power series coefficients of `self / den` up to `t^n`.
    ///
    /// Requires `den(0) = ±1`.
    pub fn series_div(&self, den: &Poly, n: usize) -> Vec<BigInt> {
        let d0 = den.coeff(0);
        assert!(d0.abs().is_one(), "constant term of the denominator must be ±1");
        let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut c = self.coeff(k);
            for j in 1..=k.min(den.0.len().saturating_sub(1)) {
                c -= &den.0[j] * &out[k - j];
            }
            out.push(c * &d0);
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.0.iter().map(|c| -c).collect())
    }
}

/// Determinant over Z[t] by fraction-free (Bareiss) elimination.
pub fn determinant(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}")?;
                    }
                    write!(f, "t")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn arithmetic_and_display() {
        assert_eq!((&p(&[1, 1]) * &p(&[1, -1])), p(&[1, 0, -1]));
        assert_eq!(p(&[1, -2, 1]).to_string(), "1 - 2t + t^2");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
        assert_eq!(p(&[3, 0, 0, 4]).to_string(), "3 + 4t^3");
        assert_eq!(p(&[1, 1, 0, 0]).degree(), Some(1));
    }

    #[test]
    fn division_and_gcd() {
        let a = &p(&[1, -1]) * &p(&[2, 3, 1]);
        assert_eq!(a.exact_div(&p(&[1, -1])), Some(p(&[2, 3, 1])));
        assert_eq!(p(&[1, 1]).exact_div(&p(&[0, 2])), None);
        let g = (&a * &p(&[5])).gcd(&(&p(&[1, -1]) * &p(&[0, 1])));
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn determinant_matches_expansion() {
        // [[1 - t, -t], [-t, 1 - t]] has determinant 1 - 2t.
        let m = vec![
            vec![p(&[1, -1]), p(&[0, -1])],
            vec![p(&[0, -1]), p(&[1, -1])],
        ];
        assert_eq!(determinant(m), p(&[1, -2]));
        let z = vec![vec![Poly::zero(), p(&[1])], vec![p(&[1]), Poly::zero()]];
        assert_eq!(determinant(z), p(&[-1]));
    }

    #[test]
    fn series_expansion() {
        let c = p(&[1, 1]).series_div(&p(&[1, -1]), 5);
        let want: Vec<BigInt> = [1, 2, 2, 2, 2, 2].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(c, want);
        let c = Poly::one().series_div(&p(&[1, -2, 1]), 4);
        let want: Vec<BigInt> = (1..=5).map(BigInt::from).collect();
        assert_eq!(c, want);
    }
}
