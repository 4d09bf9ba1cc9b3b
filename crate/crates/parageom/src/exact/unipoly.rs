//! Univariate polynomials over exact rationals: characteristic and minimal
//! polynomials, square-free parts, and low-degree discriminants.

use crate::error::{Error, Result};
use crate::exact::scalar::Scalar;
use std::fmt;

/// Coefficients in ascending degree, always trimmed of trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    c: Vec<Scalar>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        UniPoly::from_coeffs(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn from_coeffs(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(Scalar::is_zero) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.c.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.c.last()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(&self.coeff(i) + &other.coeff(i));
        }
        UniPoly::from_coeffs(c)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> UniPoly {
        if k.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            c: self.c.iter().map(|x| x * k).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![Scalar::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        UniPoly::from_coeffs(c)
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let d = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![Scalar::zero(); self.c.len().saturating_sub(d)];
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let factor = &(rem.leading().unwrap() / &lead);
            let shift = rd - d;
            quot[shift] = factor.clone();
            let mut sub = vec![Scalar::zero(); shift];
            sub.extend(divisor.c.iter().map(|x| x * factor));
            rem = rem.sub(&UniPoly::from_coeffs(sub));
        }
        Ok((UniPoly::from_coeffs(quot), rem))
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&l.recip().unwrap()),
        }
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        if self.c.len() <= 1 {
            return UniPoly::zero();
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| x * &Scalar::from_int(i as i64))
            .collect();
        UniPoly::from_coeffs(c)
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().is_none_or(|d| d == 0) {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        let (q, _) = self.div_rem(&g).unwrap();
        q.monic()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    /// Discriminant for degree 2 or 3 (closed formulas); other degrees are
    /// unsupported here.
    pub fn discriminant(&self) -> Result<Scalar> {
        match self.degree() {
            Some(2) => {
                let (a, b, c) = (self.coeff(2), self.coeff(1), self.coeff(0));
                Ok(&(&b * &b) - &(&Scalar::from_int(4) * &(&a * &c)))
            }
            Some(3) => {
                let (a, b, c, d) = (self.coeff(3), self.coeff(2), self.coeff(1), self.coeff(0));
                let t1 = &Scalar::from_int(18) * &(&(&a * &b) * &(&c * &d));
                let t2 = &Scalar::from_int(4) * &(&b.pow(3) * &d);
                let t3 = &b.pow(2) * &c.pow(2);
                let t4 = &Scalar::from_int(4) * &(&a * &c.pow(3));
                let t5 = &Scalar::from_int(27) * &(&a.pow(2) * &d.pow(2));
                Ok(&(&(&(&t1 - &t2) + &t3) - &t4) - &t5)
            }
            other => Err(Error::Unsupported(format!(
                "discriminant only implemented for degrees 2 and 3, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if a.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = a.abs();
            if i == 0 || !mag.is_one() {
                if mag.denom() == &num::BigInt::from(1) {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            if i == 1 {
                write!(f, "x")?;
            } else if i > 1 {
                write!(f, "x^{i}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    /// (x - r1)(x - r2)...(monic with the given integer roots).
    fn with_roots(roots: &[i64]) -> UniPoly {
        let mut p = UniPoly::constant(Scalar::one());
        for &r in roots {
            p = p.mul(&UniPoly::from_coeffs(vec![s(-r), s(1)]));
        }
        p
    }

    #[test]
    fn division_and_gcd() {
        let p = with_roots(&[1, -1, 2]);
        let q = with_roots(&[1, 3]);
        let (quot, rem) = p.div_rem(&q).unwrap();
        assert_eq!(quot.mul(&q).add(&rem), p);
        assert_eq!(p.gcd(&q), with_roots(&[1]));
        assert_eq!(p.gcd(&with_roots(&[5])).degree(), Some(0));
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        let p = with_roots(&[2, 2, 2, -1]);
        assert_eq!(p.squarefree_part(), with_roots(&[2, -1]));
        let q = with_roots(&[0, 1, 5]);
        assert_eq!(q.squarefree_part(), q);
    }

    #[test]
    fn discriminant_signs() {
        // Three distinct real roots: positive discriminant.
        assert!(with_roots(&[1, 2, 3]).discriminant().unwrap().is_positive());
        // x^3 + x has one real root and a complex pair: negative.
        let p = UniPoly::from_coeffs(vec![s(0), s(1), s(0), s(1)]);
        assert_eq!(p.discriminant().unwrap(), s(-4));
        // Repeated root: zero.
        assert!(with_roots(&[1, 1, 4]).discriminant().unwrap().is_zero());
    }

    #[test]
    fn eval_and_display() {
        let p = UniPoly::from_coeffs(vec![s(3), Scalar::ratio(-1, 2), s(0), s(1)]);
        assert_eq!(p.eval(&s(2)), s(10));
        assert_eq!(p.to_string(), "x^3 - 1/2*x + 3");
    }
}
