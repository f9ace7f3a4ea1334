//! Exact scalars: finite sums of Gaussian-rational multiples of radical
//! monomials `p1^r1 · p2^r2 ⋯` with primes `p` and rational exponents `r`.
//!
//! Canonical form keeps every exponent strictly inside `(0, 1)`; integer
//! parts are folded into the coefficient. Distinct fractional exponent
//! vectors over primes are linearly independent over `Q(i)`, so a scalar is
//! zero exactly when its term map is empty.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Exponent = Ratio<i64>;

/// `re + im·i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        Gaussian {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Gaussian::new(Rational::from_integer(re.into()), Rational::from_integer(im.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Gaussian::from_rational(Rational::new(num.into(), den.into()))
    }

    pub fn one() -> Self {
        Gaussian::from_ints(1, 0)
    }

    pub fn zero() -> Self {
        Gaussian::default()
    }

    pub fn i() -> Self {
        Gaussian::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_unit(&self) -> bool {
        self.norm_sqr().is_one()
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Gaussian::new(&self.re / &n, -&self.im / &n))
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Gaussian::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }

    fn scale(&self, r: &Rational) -> Self {
        Gaussian::new(&self.re * r, &self.im * r)
    }
}

impl Add for &Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: &Gaussian) -> Gaussian {
        Gaussian::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Mul for &Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: &Gaussian) -> Gaussian {
        Gaussian::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "({}{}{}i)", self.re, sign, self.im.abs())
    }
}

fn ratio_to_f64(r: &Rational) -> f64 {
    // numer/denom may individually overflow f64 even when the ratio does not
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            let shift = r.denom().bits().max(r.numer().bits()) as i64 - 60;
            let num = (r.numer() >> shift.max(0) as usize).to_f64().unwrap_or(0.0);
            let den = (r.denom() >> shift.max(0) as usize).to_f64().unwrap_or(1.0);
            num / den
        }
    }
}

/// Radical monomial: sorted `(prime, exponent)` pairs, exponents in `(0, 1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(u64, Exponent)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(u64, Exponent)] {
        &self.0
    }

    /// `p^r` split into a rational factor and a reduced monomial.
    fn from_prime_power(p: u64, r: Exponent) -> (Rational, Monomial) {
        let whole = r.floor().to_integer();
        let frac = r - Exponent::from_integer(whole);
        let factor = int_pow(p, whole);
        let mono = if frac.is_zero() {
            Monomial::one()
        } else {
            Monomial(vec![(p, frac)])
        };
        (factor, mono)
    }

    /// Product of two reduced monomials, re-reduced.
    fn mul(&self, other: &Monomial) -> (Rational, Monomial) {
        let mut factor = Rational::one();
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(pa, ra)), Some(&&(pb, rb))) if pa == pb => {
                    let (f, m) = Monomial::from_prime_power(pa, ra + rb);
                    factor *= f;
                    out.extend(m.0);
                    a.next();
                    b.next();
                }
                (Some(&&x), Some(&&y)) => {
                    if x.0 < y.0 {
                        out.push(x);
                        a.next();
                    } else {
                        out.push(y);
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    out.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        (factor, Monomial(out))
    }

    fn to_f64(&self) -> f64 {
        self.0
            .iter()
            .map(|&(p, r)| (p as f64).powf(*r.numer() as f64 / *r.denom() as f64))
            .product()
    }
}

fn int_pow(p: u64, k: i64) -> Rational {
    let base = BigInt::from(p);
    let mag = num_traits::pow(base, k.unsigned_abs() as usize);
    if k >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

/// Prime factorization of a positive integer by trial division.
pub fn factorize(mut x: u64) -> Vec<(u64, u32)> {
    assert!(x > 0, "factorize(0)");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= x {
        let mut k = 0;
        while x.is_multiple_of(p) {
            x /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

/// An exact scalar in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    terms: BTreeMap<Monomial, Gaussian>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::default()
    }

    pub fn one() -> Self {
        ExactScalar::from_gaussian(Gaussian::one())
    }

    pub fn i() -> Self {
        ExactScalar::from_gaussian(Gaussian::i())
    }

    pub fn from_int(k: i64) -> Self {
        ExactScalar::from_gaussian(Gaussian::from_ints(k, 0))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        ExactScalar::from_gaussian(Gaussian::ratio(num, den))
    }

    pub fn from_rational(r: Rational) -> Self {
        ExactScalar::from_gaussian(Gaussian::from_rational(r))
    }

    pub fn from_gaussian(g: Gaussian) -> Self {
        let mut terms = BTreeMap::new();
        if !g.is_zero() {
            terms.insert(Monomial::one(), g);
        }
        ExactScalar { terms }
    }

    /// `base^exponent` for a positive integer base.
    pub fn radical(base: u64, exponent: Exponent) -> Self {
        let mut factor = Rational::one();
        let mut mono = Monomial::one();
        for (p, k) in factorize(base) {
            let (f, m) = Monomial::from_prime_power(p, exponent * Exponent::from_integer(k as i64));
            factor *= f;
            let (f2, m2) = mono.mul(&m);
            factor *= f2;
            mono = m2;
        }
        let mut terms = BTreeMap::new();
        terms.insert(mono, Gaussian::from_rational(factor));
        ExactScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(Gaussian::is_one)
    }

    /// The value as a Gaussian rational, if it has no radical part.
    pub fn as_gaussian(&self) -> Option<Gaussian> {
        match self.terms.len() {
            0 => Some(Gaussian::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_gaussian().filter(|g| g.im.is_zero()).map(|g| g.re)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Gaussian)> {
        self.terms.iter()
    }

    pub fn conj(&self) -> Self {
        ExactScalar {
            terms: self.terms.iter().map(|(m, g)| (m.clone(), g.conj())).collect(),
        }
    }

    fn add_term(&mut self, mono: Monomial, coeff: Gaussian) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &ExactScalar) {
        for (m, g) in &rhs.terms {
            self.add_term(m.clone(), g.clone());
        }
    }

    pub fn scale_gaussian(&self, g: &Gaussian) -> Self {
        if g.is_zero() {
            return ExactScalar::zero();
        }
        ExactScalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * g)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return ExactScalar::zero();
        }
        ExactScalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.scale(r))).collect(),
        }
    }

    /// Numerical value. Each term is evaluated with a handful of correctly
    /// rounded operations, so the error is a few ulp per term.
    pub fn to_float(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, g)| g.to_complex() * m.to_f64())
            .fold(Complex64::new(0.0, 0.0), |a, b| a + b)
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            terms: self.terms.iter().map(|(m, g)| (m.clone(), -g)).collect(),
        }
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        // fast path: both purely Gaussian
        if let (Some(a), Some(b)) = (self.as_gaussian(), rhs.as_gaussian()) {
            return ExactScalar::from_gaussian(&a * &b);
        }
        let mut out = ExactScalar::zero();
        for (ma, ga) in &self.terms {
            for (mb, gb) in &rhs.terms {
                let (factor, mono) = ma.mul(mb);
                out.add_term(mono, (ga * gb).scale(&factor));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $f(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl From<Gaussian> for ExactScalar {
    fn from(g: Gaussian) -> Self {
        ExactScalar::from_gaussian(g)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, g)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{g}")?;
            for (p, r) in &m.0 {
                write!(f, "*{p}^({r})")?;
            }
        }
        Ok(())
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    /// Parses the printed form (`(1/2+0i)*2^(1/2) + (3-1i)`) as well as a bare
    /// rational such as `-3/4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(ExactScalar::zero());
        }
        if !s.starts_with('(') {
            let r = parse_rational(s)?;
            return Ok(ExactScalar::from_rational(r));
        }
        let mut out = ExactScalar::zero();
        for term in split_top_level(s, '+') {
            let term = term.trim();
            let mut factors = split_top_level(term, '*').into_iter();
            let head = factors.next().ok_or_else(|| Error::Parse("empty scalar term".into()))?;
            let mut value = ExactScalar::from_gaussian(parse_gaussian(head.trim())?);
            for fac in factors {
                let (p, r) = fac
                    .trim()
                    .split_once("^(")
                    .ok_or_else(|| Error::Parse(format!("bad radical factor `{fac}`")))?;
                let r = r
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("bad radical factor `{fac}`")))?;
                let p: u64 = p.parse().map_err(|_| Error::Parse(format!("bad base `{p}`")))?;
                if p == 0 {
                    return Err(Error::Parse("radical base must be positive".into()));
                }
                let r: Exponent = r.parse().map_err(|_| Error::Parse(format!("bad exponent `{r}`")))?;
                value = &value * &ExactScalar::radical(p, r);
            }
            out.add_assign_ref(&value);
        }
        Ok(out)
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..k]);
                start = k + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let den: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

fn parse_gaussian(s: &str) -> Result<Gaussian> {
    let inner = s
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix("i)"))
        .ok_or_else(|| Error::Parse(format!("expected `(re+imi)`, got `{s}`")))?;
    // split at the sign that separates re from im (skip a leading sign)
    let split = inner
        .char_indices()
        .skip(1)
        .find(|&(_, c)| c == '+' || c == '-')
        .map(|(k, _)| k)
        .ok_or_else(|| Error::Parse(format!("missing imaginary part in `{s}`")))?;
    let re = parse_rational(&inner[..split])?;
    let im_str = &inner[split..];
    let im_str = im_str
        .strip_prefix("+-")
        .map(|x| format!("-{x}"))
        .unwrap_or_else(|| im_str.to_string());
    let im = parse_rational(im_str.trim_start_matches('+'))?;
    Ok(Gaussian::new(re, im))
}

/// `m^(z·a) · n^(z·b)` for `δ = (a, b)`.
pub fn power_of_base(m: u64, n: u64, delta: crate::semigroup::Degree, z: Exponent) -> ExactScalar {
    let a = ExactScalar::radical(m, z * Exponent::from_integer(delta.e));
    let b = ExactScalar::radical(n, z * Exponent::from_integer(delta.f));
    &a * &b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::Degree;
    use proptest::prelude::*;

    fn sqrt2() -> ExactScalar {
        ExactScalar::radical(2, Exponent::new(1, 2))
    }

    #[test]
    fn radical_law() {
        assert_eq!(&sqrt2() * &sqrt2(), ExactScalar::from_int(2));
        let folded = ExactScalar::radical(2, Exponent::new(3, 2));
        assert_eq!(folded, &ExactScalar::from_int(2) * &sqrt2());
        assert_eq!(folded.to_string(), "(2+0i)*2^(1/2)");
    }

    #[test]
    fn gaussian_product() {
        let a = ExactScalar::from_gaussian(Gaussian::from_ints(1, 1));
        let b = ExactScalar::from_gaussian(Gaussian::from_ints(1, -1));
        assert_eq!(&a * &b, ExactScalar::from_int(2));
    }

    #[test]
    fn zero_test_spot_check() {
        let s = &(&sqrt2() + &ExactScalar::radical(2, Exponent::new(3, 2))) - &(&ExactScalar::from_int(3) * &sqrt2());
        assert!(s.is_zero());
    }

    #[test]
    fn power_of_base_examples() {
        assert_eq!(
            power_of_base(2, 3, Degree::new(1, -1), Exponent::from_integer(1)),
            ExactScalar::ratio(2, 3)
        );
        assert!(power_of_base(5, 7, Degree::ZERO, Exponent::new(3, 7)).is_one());
        assert!(power_of_base(4, 2, Degree::new(1, -2), Exponent::from_integer(1)).is_one());
        // shared primes interact: 4^(1/2) = 2
        assert_eq!(
            power_of_base(4, 3, Degree::new(1, 0), Exponent::new(1, 2)),
            ExactScalar::from_int(2)
        );
    }

    #[test]
    fn floats() {
        assert!((sqrt2().to_float().re - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!((ExactScalar::ratio(1, 6).to_float().re - 1.0 / 6.0).abs() < 1e-16);
        assert_eq!(ExactScalar::zero().to_float(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn print_parse() {
        let s = &ExactScalar::from_gaussian(Gaussian::new(
            Rational::new(1.into(), 2.into()),
            Rational::new((-1).into(), 3.into()),
        )) + &sqrt2();
        let printed = s.to_string();
        assert_eq!(printed.parse::<ExactScalar>().unwrap(), s);
        assert_eq!("-3/4".parse::<ExactScalar>().unwrap(), ExactScalar::ratio(-3, 4));
        assert_eq!(
            "(-1/2+-2i)".parse::<ExactScalar>().unwrap(),
            ExactScalar::from_gaussian(Gaussian::new(
                Rational::new((-1).into(), 2.into()),
                Rational::from_integer((-2).into())
            ))
        );
        assert!("(1+2)".parse::<ExactScalar>().is_err());
    }

    fn small_scalar() -> impl Strategy<Value = ExactScalar> {
        let term = (
            -5i64..=5,
            1i64..=4,
            -5i64..=5,
            prop_oneof![Just(1u64), Just(2), Just(3), Just(6)],
            0i64..4,
        );
        proptest::collection::vec(term, 0..3).prop_map(|ts| {
            let mut s = ExactScalar::zero();
            for (re, den, im, base, k) in ts {
                let g = Gaussian::new(Rational::new(re.into(), den.into()), Rational::from_integer(im.into()));
                let t = &ExactScalar::from_gaussian(g) * &ExactScalar::radical(base, Exponent::new(k, 4));
                s.add_assign_ref(&t);
            }
            s
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn conjugation(a in small_scalar(), b in small_scalar()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }

        #[test]
        fn power_exponent_law(e in -3i64..=3, f in -3i64..=3, p1 in -4i64..=4, p2 in -4i64..=4, q in 1i64..=4) {
            let d = Degree::new(e, f);
            let z1 = Exponent::new(p1, q);
            let z2 = Exponent::new(p2, 2);
            prop_assert_eq!(
                power_of_base(4, 6, d, z1 + z2),
                &power_of_base(4, 6, d, z1) * &power_of_base(4, 6, d, z2)
            );
        }

        #[test]
        fn printing_round_trips(a in small_scalar()) {
            prop_assert_eq!(a.to_string().parse::<ExactScalar>().unwrap(), a);
        }
    }
}
