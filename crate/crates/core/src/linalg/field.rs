//! Exact scalar fields.
//!
//! A [`Field`] is a small context value (a zero-sized marker for ℚ, the
//! modulus for GF(p)) that performs arithmetic on plain element values. All
//! matrices and modules carry their field so that constants can be produced
//! without a sample element.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn characteristic(&self) -> u64;
    fn spec(&self) -> FieldSpec;
    fn to_text(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    /// A random element for seeded searches; small integers over ℚ.
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Distinct roots of `p` lying in the field. May be incomplete over ℚ when
    /// the coefficients are too large to factor by trial division.
    fn roots(&self, p: &Poly<Self>) -> Vec<Self::Elem>
    where
        Self: Sized;
    /// `Some(true)` if `p` is certainly irreducible, `Some(false)` if it
    /// certainly factors, `None` if the field cannot decide cheaply.
    fn is_irreducible(&self, p: &Poly<Self>) -> Option<bool>
    where
        Self: Sized;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc += a * b`
    fn add_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        if self.is_zero(a) || self.is_zero(b) {
            return;
        }
        *acc = self.add(acc, &self.mul(a, b));
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }
}

/// Textual field selector: `"Q"` or `"Fp:<p>"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Rational
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rational);
        }
        let p = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("fp:"))
            .or_else(|| s.strip_prefix("GF:"))
            .ok_or_else(|| Error::Config(format!("unknown field spec {s:?}; expected Q or Fp:<p>")))?;
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Config(format!("bad prime in field spec {s:?}")))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime(p))
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

/// GF(p) for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p >= 1 << 31 || !is_prime(p) {
            return Err(Error::Config(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        r
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: 101 }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::ZERO
    }
    fn one(&self) -> Rational {
        Rational::ONE
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_int(n)
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a.add(b)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a.sub(b)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a.mul(b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        a.neg()
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        a.inv()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn to_text(&self, a: &Rational) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<Rational> {
        Rational::parse(s).ok_or_else(|| Error::Parse(format!("bad rational {s:?}")))
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational {
        Rational::from_int(rng.gen_range(-64..=64))
    }
    fn roots(&self, p: &Poly<Self>) -> Vec<Rational> {
        rational_roots(p).0
    }
    fn is_irreducible(&self, p: &Poly<Self>) -> Option<bool> {
        let (roots, complete) = match p.degree() {
            None | Some(0) => return Some(false),
            Some(1) => return Some(true),
            _ => rational_roots(p),
        };
        match (p.degree(), roots.is_empty(), complete) {
            (_, false, _) => Some(false),
            (Some(2) | Some(3), true, true) => Some(true),
            _ => None,
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn add_mul_assign(&self, acc: &mut u64, a: &u64, b: &u64) {
        *acc = (*acc + a * b) % self.p;
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn to_text(&self, a: &u64) -> String {
        format!("{a} mod {}", self.p)
    }
    fn parse_elem(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        let (k, p) = match s.split_once("mod") {
            Some((k, p)) => (k.trim(), Some(p.trim())),
            None => (s, None),
        };
        if let Some(p) = p {
            if p.parse::<u64>().ok() != Some(self.p) {
                return Err(Error::Parse(format!("{s:?} is not an element of GF({})", self.p)));
            }
        }
        let k: i64 = k.parse().map_err(|_| Error::Parse(format!("bad GF({}) element {s:?}", self.p)))?;
        Ok(self.from_i64(k))
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn roots(&self, p: &Poly<Self>) -> Vec<u64> {
        prime_field_roots(self, p)
    }
    fn is_irreducible(&self, p: &Poly<Self>) -> Option<bool> {
        Some(ben_or_irreducible(self, p))
    }
}

/// Rational roots by the rational root theorem on the squarefree part, with
/// trial-division factoring of the extreme coefficients.
/// Rational roots and whether the candidate search was exhaustive.
fn rational_roots(p: &Poly<Rationals>) -> (Vec<Rational>, bool) {
    const MAX_CANDIDATES: usize = 1 << 16;
    if p.degree().unwrap_or(0) == 0 {
        return (Vec::new(), true);
    }
    let sq = p.squarefree_part();
    // Clear denominators.
    let mut lcm = BigInt::one();
    for c in sq.coeffs() {
        lcm = lcm.lcm(&c.denom());
    }
    let mut ints: Vec<BigInt> = sq.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut roots = Vec::new();
    while ints.first().is_some_and(|c| c.is_zero()) {
        if roots.is_empty() {
            roots.push(Rational::ZERO);
        }
        ints.remove(0);
    }
    if ints.len() <= 1 {
        return (roots, true);
    }
    let (a0, ad) = (ints[0].abs(), ints[ints.len() - 1].abs());
    let (Some(a0), Some(ad)) = (a0.to_u64(), ad.to_u64()) else {
        return (roots, false);
    };
    let (Some(num_divs), Some(den_divs)) = (divisors(a0), divisors(ad)) else {
        return (roots, false);
    };
    if num_divs.len().saturating_mul(den_divs.len()) > MAX_CANDIDATES {
        return (roots, false);
    }
    let mut cands: Vec<Rational> = Vec::new();
    for &n in &num_divs {
        for &d in &den_divs {
            if n.gcd(&d) != 1 {
                continue;
            }
            let (n, d) = (n as i64, d as i64);
            cands.push(Rational::new(n, d));
            cands.push(Rational::new(-n, d));
        }
    }
    for c in cands {
        if sq.eval(&c).is_zero() && !roots.contains(&c) {
            roots.push(c);
        }
    }
    roots.sort_by(|a, b| {
        let d = a.sub(b);
        d.signum().cmp(&0)
    });
    (roots, true)
}

/// Divisors of `n` by trial division, or `None` if `n` is too large to factor quickly.
fn divisors(n: u64) -> Option<Vec<u64>> {
    if n == 0 || n > (1u64 << 62) {
        return None;
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut m = n;
    let mut d = 2u64;
    let mut steps = 0u64;
    while d * d <= m {
        steps += 1;
        if steps > 2_000_000 {
            return None;
        }
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        factors.push((m, 1));
    }
    let mut divs = vec![1u64];
    for (q, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for &x in &divs {
            let mut pw = 1u64;
            for _ in 0..=e {
                next.push(x * pw);
                pw = pw.saturating_mul(q);
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Some(divs)
}

fn prime_field_roots(f: &PrimeField, p: &Poly<PrimeField>) -> Vec<u64> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let q = f.modulus();
    if q <= 1 << 16 {
        return (0..q).filter(|x| f.is_zero(&p.eval(x))).collect();
    }
    // Product of the distinct linear factors, then equal-degree splitting.
    let x = Poly::new(f.clone(), vec![0, 1]);
    let xp = x.powmod(q, p);
    let g = p.gcd(&xp.sub(&x));
    let mut roots = Vec::new();
    let mut stack = vec![g];
    let mut shift = 1u64;
    while let Some(g) = stack.pop() {
        match g.degree() {
            None | Some(0) => {}
            Some(1) => {
                let c = g.coeffs();
                roots.push(f.neg(&f.div(&c[0], &c[1])));
            }
            Some(_) => {
                let t = Poly::new(f.clone(), vec![shift % q, 1]);
                shift += 1;
                let h = t.powmod((q - 1) / 2, &g).sub(&Poly::constant(f.clone(), 1));
                let d = g.gcd(&h);
                let dd = d.degree().unwrap_or(0);
                if dd == 0 || Some(dd) == g.degree() {
                    stack.push(g);
                } else {
                    let (other, _) = g.divrem(&d);
                    stack.push(d);
                    stack.push(other);
                }
            }
        }
    }
    roots.sort_unstable();
    roots.dedup();
    roots
}

fn ben_or_irreducible(f: &PrimeField, p: &Poly<PrimeField>) -> bool {
    let Some(d) = p.degree() else { return false };
    if d == 0 {
        return false;
    }
    let x = Poly::new(f.clone(), vec![0, 1]);
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = h.powmod(f.modulus(), p);
        let g = p.gcd(&h.sub(&x));
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_spec_round_trip() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!("Fp:101".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(101));
        assert!("Fp:100".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(7).to_string(), "Fp:7");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(101).unwrap();
        assert_eq!(f.from_i64(-1), 100);
        assert_eq!(f.mul(&f.inv(&37).unwrap(), &37), 1);
        assert_eq!(f.to_text(&5), "5 mod 101");
        assert_eq!(f.parse_elem("100 mod 101").unwrap(), 100);
        assert!(f.parse_elem("3 mod 7").is_err());
    }

    #[test]
    fn rational_roots_of_product() {
        let q = Rationals;
        // (x - 1/2)^2 (x + 3)(x^2 + 1)
        let p = Poly::from_roots(q, &[Rational::new(1, 2), Rational::new(1, 2), Rational::from_int(-3)])
            .mul(&Poly::new(q, vec![Rational::ONE, Rational::ZERO, Rational::ONE]));
        assert_eq!(q.roots(&p), vec![Rational::from_int(-3), Rational::new(1, 2)]);
        assert_eq!(q.is_irreducible(&Poly::new(q, vec![Rational::ONE, Rational::ZERO, Rational::ONE])), Some(true));
    }

    #[test]
    fn large_prime_roots_split() {
        let f = PrimeField::new(1_000_003).unwrap();
        let p = Poly::from_roots(f, &[5, 17, 999_999, 17]);
        assert_eq!(f.roots(&p), vec![5, 17, 999_999]);
    }

    #[test]
    fn ben_or_detects_factors() {
        let f = PrimeField::new(7).unwrap();
        // x^2 + 1 is irreducible mod 7; x^2 - 2 = (x-3)(x+3) mod 7.
        assert_eq!(f.is_irreducible(&Poly::new(f, vec![1, 0, 1])), Some(true));
        assert_eq!(f.is_irreducible(&Poly::new(f, vec![5, 0, 1])), Some(false));
    }
}
