//! Exact arithmetic on finite Laurent polynomials in a fixed positive
//! infinitesimal `ε`, with rational coefficients.
//!
//! An [`NsReal`] denotes `Σ cₖ·εᵏ` for finitely many integer exponents `k`.
//! Values are ordered quantitatively by the sign of their dominant term as
//! `ε → 0⁺` (the term with the smallest exponent), and qualitatively by
//! [`NsReal::qcompare`], which ignores differences that are infinitesimal
//! relative to the values being compared.
//!
//! The set is closed under addition, subtraction, multiplication and
//! negation. There is no general division.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Outcome of the qualitative comparison `≻`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QOrdering {
    Greater,
    Equivalent,
    Less,
}

impl QOrdering {
    pub fn reverse(self) -> Self {
        match self {
            QOrdering::Greater => QOrdering::Less,
            QOrdering::Equivalent => QOrdering::Equivalent,
            QOrdering::Less => QOrdering::Greater,
        }
    }
}

impl From<Ordering> for QOrdering {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Greater => QOrdering::Greater,
            Ordering::Equal => QOrdering::Equivalent,
            Ordering::Less => QOrdering::Less,
        }
    }
}

/// A finitely supported Laurent polynomial in `ε` with rational coefficients.
///
/// Terms are kept sorted by strictly increasing exponent with no zero
/// coefficients, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NsReal {
    terms: Vec<(i64, BigRational)>,
}

impl NsReal {
    pub fn zero() -> Self {
        NsReal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The infinitesimal `ε` itself.
    pub fn eps() -> Self {
        Self::eps_pow(1)
    }

    /// `εᵏ`; negative `k` gives an infinite value.
    pub fn eps_pow(k: i64) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    pub fn monomial(coefficient: BigRational, exponent: i64) -> Self {
        if coefficient.is_zero() {
            Self::zero()
        } else {
            NsReal {
                terms: vec![(exponent, coefficient)],
            }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `n/d` as a standard value. Panics if `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::monomial(r, 0)
    }

    /// Builds a value from arbitrary `(exponent, coefficient)` pairs,
    /// combining like terms and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let mut terms: Vec<_> = terms.into_iter().collect();
        terms.sort_by_key(|(k, _)| *k);
        let mut out: Vec<(i64, BigRational)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match out.last_mut() {
                Some((last, acc)) if *last == k => *acc += c,
                _ => out.push((k, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        NsReal { terms: out }
    }

    pub fn terms(&self) -> &[(i64, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `εᵏ` (zero when absent).
    pub fn coefficient(&self, k: i64) -> BigRational {
        self.terms
            .binary_search_by_key(&k, |(e, _)| *e)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    /// Exponent of the dominant term, `None` for zero.
    pub fn leading_exponent(&self) -> Option<i64> {
        self.terms.first().map(|(k, _)| *k)
    }

    pub fn leading_term(&self) -> Option<&(i64, BigRational)> {
        self.terms.first()
    }

    /// `-1`, `0` or `+1`: the sign of the dominant term.
    pub fn sign(&self) -> i8 {
        match self.terms.first() {
            None => 0,
            Some((_, c)) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    /// True when the value is a plain rational (a single `ε⁰` term or zero).
    pub fn is_standard(&self) -> bool {
        self.terms.iter().all(|(k, _)| *k == 0)
    }

    /// True when no term has a negative exponent.
    pub fn is_finite(&self) -> bool {
        self.leading_exponent().is_none_or(|k| k >= 0)
    }

    pub fn is_infinitesimal(&self) -> bool {
        self.leading_exponent().is_none_or(|k| k > 0)
    }

    /// The unique rational infinitely close to a finite value.
    pub fn standard_part(&self) -> Result<BigRational> {
        if !self.is_finite() {
            return Err(Error::InfiniteValue(self.to_string()));
        }
        Ok(self.coefficient(0))
    }

    /// Multiplies every coefficient by a rational.
    pub fn scale(&self, c: &BigRational) -> NsReal {
        if c.is_zero() {
            return NsReal::zero();
        }
        NsReal {
            terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect(),
        }
    }

    /// The qualitative order `≻`.
    ///
    /// For `x, y ≥ 0`, `x ≻ y` iff `x − y > 0` and `x − y` has the same
    /// dominant exponent as `x`, i.e. the standard part of `(x − y)/x` is
    /// strictly positive. Mixed signs: any `x ≥ 0` is `≻` any `y < 0`.
    /// Both negative: `x ≻ y` iff `−y ≻ −x`.
    pub fn qcompare(&self, other: &NsReal) -> QOrdering {
        if self.q_greater(other) {
            QOrdering::Greater
        } else if other.q_greater(self) {
            QOrdering::Less
        } else {
            QOrdering::Equivalent
        }
    }

    fn q_greater(&self, y: &NsReal) -> bool {
        let (sx, sy) = (self.sign(), y.sign());
        match (sx >= 0, sy >= 0) {
            (true, true) => {
                let d = self - y;
                d.sign() == 1 && d.leading_exponent() == self.leading_exponent()
            }
            (true, false) => true,
            (false, true) => false,
            (false, false) => (-y).q_greater(&-self),
        }
    }
}

impl Ord for NsReal {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl PartialOrd for NsReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn merge(a: &[(i64, BigRational)], b: &[(i64, BigRational)], negate_b: bool) -> NsReal {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let take_b = |c: &BigRational| if negate_b { -c } else { c.clone() };
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ka, ca)), Some((kb, cb))) if ka == kb => {
                let s = ca + take_b(cb);
                if !s.is_zero() {
                    out.push((*ka, s));
                }
                i += 1;
                j += 1;
            }
            (Some((ka, ca)), Some((kb, _))) if ka < kb => {
                out.push((*ka, ca.clone()));
                i += 1;
            }
            (Some((ka, ca)), None) => {
                out.push((*ka, ca.clone()));
                i += 1;
            }
            (_, Some((kb, cb))) => {
                out.push((*kb, take_b(cb)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    NsReal { terms: out }
}

impl Add for &NsReal {
    type Output = NsReal;
    fn add(self, rhs: &NsReal) -> NsReal {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl Sub for &NsReal {
    type Output = NsReal;
    fn sub(self, rhs: &NsReal) -> NsReal {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl Mul for &NsReal {
    type Output = NsReal;
    fn mul(self, rhs: &NsReal) -> NsReal {
        NsReal::from_terms(
            self.terms
                .iter()
                .flat_map(|(ka, ca)| rhs.terms.iter().map(move |(kb, cb)| (ka + kb, ca * cb))),
        )
    }
}

impl Neg for &NsReal {
    type Output = NsReal;
    fn neg(self) -> NsReal {
        NsReal {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for NsReal {
            type Output = NsReal;
            fn $m(self, rhs: NsReal) -> NsReal { (&self).$m(&rhs) }
        }
        impl $tr<&NsReal> for NsReal {
            type Output = NsReal;
            fn $m(self, rhs: &NsReal) -> NsReal { (&self).$m(rhs) }
        }
        impl $tr<NsReal> for &NsReal {
            type Output = NsReal;
            fn $m(self, rhs: NsReal) -> NsReal { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for NsReal {
    type Output = NsReal;
    fn neg(self) -> NsReal {
        -&self
    }
}

impl std::iter::Sum for NsReal {
    fn sum<I: Iterator<Item = NsReal>>(iter: I) -> NsReal {
        iter.fold(NsReal::zero(), |acc, x| acc + x)
    }
}

impl From<BigRational> for NsReal {
    fn from(r: BigRational) -> Self {
        NsReal::from_rational(r)
    }
}

impl From<i64> for NsReal {
    fn from(n: i64) -> Self {
        NsReal::from_int(n)
    }
}

impl fmt::Display for NsReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::formats::render_nsreal(self))
    }
}

impl fmt::Debug for NsReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NsReal({self})")
    }
}

impl std::str::FromStr for NsReal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::formats::parse_nsreal(s)
    }
}
