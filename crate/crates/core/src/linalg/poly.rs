//! Dense univariate polynomials over a [`Field`], coefficients low to high.

use std::fmt;

use super::field::Field;

#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| format!("({})x^{i}", self.field.to_text(c)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, coeffs: Vec<F::Elem>) -> Self {
        let mut p = Poly { field, coeffs };
        p.trim();
        p
    }

    pub fn zero(field: F) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(field: F, c: i64) -> Self {
        let c = field.from_i64(c);
        Self::new(field, vec![c])
    }

    /// `∏ (x - r)` over the given roots, with multiplicity.
    pub fn from_roots(field: F, roots: &[F::Elem]) -> Self {
        let mut p = Self::constant(field.clone(), 1);
        for r in roots {
            p = p.mul(&Poly::new(field.clone(), vec![field.neg(r), field.one()]));
        }
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(f.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f.clone(), self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.clone());
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                f.add_mul_assign(&mut out[i + j], a, b);
            }
        }
        Self::new(f.clone(), out)
    }

    /// Quotient and remainder. Panics when dividing by zero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = f.inv(divisor.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(f.clone()), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let t = f.mul(&c, b);
                rem[k + j] = f.sub(&rem[k + j], &t);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(f.clone(), quot), Self::new(f.clone(), rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).unwrap()),
        }
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.clone());
        }
        let g = self.gcd(other);
        let (q, _) = self.mul(other).divrem(&g);
        q.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
            .collect();
        Self::new(f.clone(), coeffs)
    }

    /// Product of the distinct irreducible factors (for characteristic 0, or
    /// when the derivative is nonzero in characteristic p).
    pub fn squarefree_part(&self) -> Self {
        let d = self.derivative();
        if d.is_zero() {
            return self.monic();
        }
        let g = self.gcd(&d);
        let (q, _) = self.divrem(&g);
        q.monic()
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.divrem(m).1;
        let mut acc = Self::constant(self.field.clone(), 1).divrem(m).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).divrem(m).1;
            }
            base = base.mul(&base).divrem(m).1;
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rational, Rationals};

    fn q(v: &[i64]) -> Poly<Rationals> {
        Poly::new(Rationals, v.iter().map(|&x| Rational::from_int(x)).collect())
    }

    #[test]
    fn division_identity() {
        let a = q(&[3, 0, -2, 5, 1]);
        let b = q(&[1, 2, 7]);
        let (qq, r) = a.divrem(&b);
        assert_eq!(qq.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = Poly::from_roots(Rationals, &[Rational::ONE, Rational::ONE, Rational::from_int(2)]);
        let b = Poly::from_roots(Rationals, &[Rational::ONE, Rational::from_int(5)]);
        assert_eq!(a.gcd(&b), Poly::from_roots(Rationals, &[Rational::ONE]));
        assert_eq!(
            a.squarefree_part(),
            Poly::from_roots(Rationals, &[Rational::ONE, Rational::from_int(2)])
        );
        assert_eq!(a.lcm(&b).degree(), Some(4));
    }

    #[test]
    fn powmod_matches_fermat() {
        let f = PrimeField::new(13).unwrap();
        let x = Poly::new(f, vec![0, 1]);
        let m = Poly::new(f, vec![2, 0, 0, 1]);
        // x^(13^3) ≡ x mod any cubic over GF(13) that splits into distinct factors of degree dividing 3.
        let h = x.powmod(13 * 13 * 13, &m);
        assert_eq!(h, x);
    }
}
