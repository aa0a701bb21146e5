//! Truncated formal power series in one variable `q` with exact rational
//! coefficients.
//!
//! Exponents are stored on the grid `(1/d)·ℤ` where `d` is the series'
//! denominator scale, so half-integer exponents (which show up in the B3
//! Weyl sums) need no separate type. A series of order `N` knows every
//! coefficient of `q^e` with `e < N`; everything at or above `N` has been
//! discarded. Results of binary operations carry the smaller order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default truncation order: enough for the deepest reference tables once
/// callers ask for `order + 1` terms.
pub const DEFAULT_ORDER: i64 = 25;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    /// scaled exponent `e` (meaning `q^{e/denom}`) to nonzero coefficient
    coeffs: BTreeMap<i64, BigRational>,
    order: i64,
    denom: i64,
}

/// One factor `∏_{n≥1} (1 − q^{period·n + offset})^{multiplicity}` of a
/// structured infinite product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductFactor {
    pub period: i64,
    pub offset: i64,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSpec {
    pub factors: Vec<ProductFactor>,
}

impl ProductSpec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends `∏_{n≥1}(1 − q^{period·n + offset})^{multiplicity}`.
    pub fn factor(mut self, period: i64, offset: i64, multiplicity: i64) -> Self {
        self.factors.push(ProductFactor { period, offset, multiplicity });
        self
    }

    pub fn validate(&self) -> Result<()> {
        for f in &self.factors {
            if f.period <= 0 {
                return Err(Error::Precondition(format!("product factor period must be positive, got {}", f.period)));
            }
            if f.period + f.offset <= 0 {
                return Err(Error::Precondition(format!(
                    "factor (1 - q^({}n{:+})) has a non-positive first exponent",
                    f.period, f.offset
                )));
            }
        }
        Ok(())
    }
}

/// Outcome of [`QSeries::compare`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    /// Coefficients agree for every exponent `< through + 1`.
    Equal {
        #[serde(with = "crate::report::exact")]
        through: Rational64,
    },
    Mismatch {
        #[serde(with = "crate::report::exact")]
        exponent: Rational64,
        #[serde(with = "crate::report::exact")]
        left: BigRational,
        #[serde(with = "crate::report::exact")]
        right: BigRational,
    },
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal { .. })
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Equal { through } => write!(f, "equal through q^{}", through),
            Comparison::Mismatch { exponent, left, right } => {
                write!(f, "mismatch at q^{}: {} vs {}", exponent, left, right)
            }
        }
    }
}

/// Wire form of a series: `[exponent, numerator, denominator]` triples, all as
/// strings so that big integers and fractional exponents survive JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub order: i64,
    pub terms: Vec<[String; 3]>,
}

impl QSeries {
    pub fn zero(order: i64) -> Self {
        QSeries { coeffs: BTreeMap::new(), order, denom: 1 }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(BigRational::one(), 0, order)
    }

    /// `c·q^exp` truncated to `order`.
    pub fn monomial(c: BigRational, exp: i64, order: i64) -> Self {
        let mut s = Self::zero(order);
        s.set_scaled(exp, c);
        s
    }

    /// Builds `Σ coeffs[i] q^i` from a dense integer list.
    pub fn from_ints(coeffs: &[i64], order: i64) -> Self {
        let mut s = Self::zero(order);
        for (i, &c) in coeffs.iter().enumerate() {
            s.set_scaled(i as i64, rat(c));
        }
        s
    }

    /// Builds a series on the grid `(1/denom)·ℤ` from scaled exponents.
    pub fn from_scaled<I>(terms: I, denom: i64, order: i64) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        assert!(denom >= 1, "denominator scale must be positive");
        let mut s = QSeries { coeffs: BTreeMap::new(), order, denom };
        for (e, c) in terms {
            let cur = s.coeffs.remove(&e).unwrap_or_else(BigRational::zero) + c;
            s.set_scaled(e, cur);
        }
        s
    }

    fn set_scaled(&mut self, e: i64, c: BigRational) {
        if c.is_zero() || e >= self.order * self.denom {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn denom_scale(&self) -> i64 {
        self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `q^exp` for an integer exponent.
    pub fn coeff(&self, exp: i64) -> BigRational {
        self.coeffs.get(&(exp * self.denom)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of `q^exp` for a rational exponent; zero off the grid.
    pub fn coeff_at(&self, exp: Rational64) -> BigRational {
        let scaled = exp * Rational64::from_integer(self.denom);
        if !scaled.is_integer() {
            return BigRational::zero();
        }
        self.coeffs.get(&scaled.to_integer()).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Iterates `(exponent, coefficient)` with exponents as rationals.
    pub fn terms(&self) -> impl Iterator<Item = (Rational64, &BigRational)> + '_ {
        let d = self.denom;
        self.coeffs.iter().map(move |(&e, c)| (Rational64::new(e, d), c))
    }

    /// Dense integer coefficients of `q^0 .. q^{len-1}`; `None` if some
    /// coefficient is not an integer or lies off the integer grid.
    pub fn to_int_vec(&self, len: usize) -> Option<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); len];
        for (&e, c) in &self.coeffs {
            if e % self.denom != 0 || !c.is_integer() {
                return None;
            }
            let k = e / self.denom;
            if k >= 0 && (k as usize) < len {
                out[k as usize] = c.to_integer();
            }
        }
        Some(out)
    }

    /// Lowest nonzero term as `(exponent, coefficient)`.
    pub fn lowest_term(&self) -> Option<(Rational64, BigRational)> {
        self.coeffs.iter().next().map(|(&e, c)| (Rational64::new(e, self.denom), c.clone()))
    }

    /// Re-expresses the series on the grid `(1/new_denom)·ℤ`.
    pub fn rescale(&self, new_denom: i64) -> Self {
        assert!(new_denom % self.denom == 0, "rescale must refine the grid");
        let f = new_denom / self.denom;
        QSeries {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e * f, c.clone())).collect(),
            order: self.order,
            denom: new_denom,
        }
    }

    /// Coarsens the exponent grid as far as the stored exponents allow.
    pub fn reduce_grid(&self) -> Self {
        let mut g = self.denom;
        for &e in self.coeffs.keys() {
            g = g.gcd(&e);
            if g == 1 {
                break;
            }
        }
        if g <= 1 {
            return self.clone();
        }
        QSeries {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e / g, c.clone())).collect(),
            order: self.order,
            denom: self.denom / g,
        }
    }

    fn common(a: &QSeries, b: &QSeries) -> (QSeries, QSeries) {
        let d = a.denom.lcm(&b.denom);
        (a.rescale(d), b.rescale(d))
    }

    /// Drops every term at or above `q^order` (never raises the order).
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        let bound = order * self.denom;
        QSeries { coeffs: self.coeffs.range(..bound).map(|(&e, c)| (e, c.clone())).collect(), order, denom: self.denom }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let (mut a, b) = Self::common(self, other);
        let order = a.order.min(b.order);
        a = a.truncate(order);
        for (&e, c) in b.coeffs.range(..order * a.denom) {
            let cur = a.coeffs.remove(&e).unwrap_or_else(BigRational::zero) + c;
            a.set_scaled(e, cur);
        }
        a
    }

    pub fn neg(&self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(), order: self.order, denom: self.denom }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigRational) -> QSeries {
        if k.is_zero() {
            return QSeries::zero(self.order);
        }
        QSeries { coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * k)).collect(), order: self.order, denom: self.denom }
    }

    /// Multiplies by `q^shift`; the order moves with the series.
    pub fn shift(&self, shift: Rational64) -> QSeries {
        let d = self.denom.lcm(shift.denom());
        let s = self.rescale(d);
        let k = (shift * Rational64::from_integer(d)).to_integer();
        let order_scaled = Rational64::from_integer(s.order) + shift;
        // the order stays an integer bound: take the floor of the shifted bound
        let order = order_scaled.floor().to_integer();
        let mut out = QSeries { coeffs: BTreeMap::new(), order, denom: d };
        for (&e, c) in &s.coeffs {
            out.set_scaled(e + k, c.clone());
        }
        out
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let (a, b) = Self::common(self, other);
        let order = a.order.min(b.order);
        let bound = order * a.denom;
        let mut acc: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (&ea, ca) in &a.coeffs {
            for (&eb, cb) in &b.coeffs {
                let e = ea + eb;
                if e >= bound {
                    // b is sorted ascending, later terms only grow
                    break;
                }
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        QSeries { coeffs: acc, order, denom: a.denom }
    }

    /// Multiplicative inverse modulo `q^order`, by solving for coefficients
    /// one grid step at a time.
    pub fn invert(&self) -> Result<QSeries> {
        let (e0, a0) = match self.coeffs.iter().next() {
            Some((&e, c)) => (e, c.clone()),
            None => return Err(Error::NotAUnit("zero series".into())),
        };
        if e0 != 0 {
            return Err(Error::NotAUnit(format!(
                "lowest exponent is {} rather than 0",
                Rational64::new(e0, self.denom)
            )));
        }
        let len = (self.order * self.denom).max(0) as usize;
        let inv0 = a0.recip();
        let mut b: Vec<BigRational> = vec![BigRational::zero(); len];
        if len > 0 {
            b[0] = inv0.clone();
        }
        let tail: Vec<(usize, &BigRational)> = self.coeffs.iter().skip(1).map(|(&e, c)| (e as usize, c)).collect();
        for n in 1..len {
            let mut s = BigRational::zero();
            for &(k, c) in &tail {
                if k > n {
                    break;
                }
                if !b[n - k].is_zero() {
                    s += c * &b[n - k];
                }
            }
            if !s.is_zero() {
                b[n] = -(s * &inv0);
            }
        }
        Ok(QSeries::from_scaled(b.into_iter().enumerate().map(|(i, c)| (i as i64, c)), self.denom, self.order))
    }

    /// Integer power; negative powers go through [`QSeries::invert`].
    pub fn pow(&self, n: i64) -> Result<QSeries> {
        let base = if n < 0 { self.invert()? } else { self.clone() };
        let mut result = QSeries::one(self.order);
        let mut sq = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(result)
    }

    /// Expands a structured product exactly through `q^{order-1}`.
    pub fn product(spec: &ProductSpec, order: i64) -> Result<QSeries> {
        spec.validate()?;
        let mut positive = QSeries::one(order);
        let mut negative = QSeries::one(order);
        for f in &spec.factors {
            let mut n = 1;
            loop {
                let e = f.period * n + f.offset;
                if e >= order {
                    break;
                }
                let mut binom = QSeries::one(order);
                binom.set_scaled(e, rat(-1));
                let target = if f.multiplicity >= 0 { &mut positive } else { &mut negative };
                for _ in 0..f.multiplicity.abs() {
                    *target = target.mul(&binom);
                }
                n += 1;
            }
        }
        Ok(positive.mul(&negative.invert()?))
    }

    /// Finds the least exponent where the two series differ, looking only at
    /// exponents both series know.
    pub fn compare(&self, other: &QSeries) -> Comparison {
        let (a, b) = Self::common(self, other);
        let order = a.order.min(b.order);
        let bound = order * a.denom;
        let keys: std::collections::BTreeSet<i64> =
            a.coeffs.range(..bound).chain(b.coeffs.range(..bound)).map(|(&e, _)| e).collect();
        for e in keys {
            let ca = a.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero);
            let cb = b.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero);
            if ca != cb {
                return Comparison::Mismatch { exponent: Rational64::new(e, a.denom), left: ca, right: cb };
            }
        }
        Comparison::Equal { through: Rational64::from_integer(order - 1) }
    }

    /// Divides by the lowest term, returning the normalized series (lowest
    /// term `1·q^0`, exponent grid reduced) and the divided-out leading term.
    pub fn normalize_lowest(&self) -> Result<(QSeries, Rational64, BigRational)> {
        let (e, c) = self.lowest_term().ok_or(Error::ZeroSeries)?;
        let shifted = self.shift(-e).scale(&c.recip());
        Ok((shifted.reduce_grid(), e, c))
    }

    pub fn to_report(&self) -> SeriesReport {
        SeriesReport {
            order: self.order,
            terms: self.terms().map(|(e, c)| [e.to_string(), c.numer().to_string(), c.denom().to_string()]).collect(),
        }
    }

    pub fn from_report(r: &SeriesReport) -> Result<QSeries> {
        let mut terms = Vec::with_capacity(r.terms.len());
        let mut denom = 1i64;
        for [e, n, d] in &r.terms {
            let e: Rational64 = e.parse().map_err(|_| Error::Parse(format!("bad exponent `{}`", e)))?;
            let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad numerator `{}`", n)))?;
            let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad denominator `{}`", d)))?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            denom = denom.lcm(e.denom());
            terms.push((e, BigRational::new(n, d)));
        }
        Ok(QSeries::from_scaled(
            terms.into_iter().map(|(e, c)| ((e * Rational64::from_integer(denom)).to_integer(), c)),
            denom,
            r.order,
        ))
    }

    /// Parses the text form written by `Display`, e.g.
    /// `1 + q^2 - 3/2*q^(7/2) + O(q^10)`. Without an `O(...)` term the order
    /// defaults to one past the highest exponent.
    pub fn parse(text: &str) -> Result<QSeries> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty series".into()));
        }
        // split into signed chunks at top-level + and -
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in cleaned.chars().enumerate() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth -= 1;
                    cur.push(ch);
                }
                '+' | '-' if depth == 0 && !cur.ends_with('^') => {
                    if (!cur.is_empty() || i > 0) && !cur.is_empty() {
                        chunks.push((neg, std::mem::take(&mut cur)));
                    }
                    neg = ch == '-';
                }
                _ => cur.push(ch),
            }
        }
        if !cur.is_empty() {
            chunks.push((neg, cur));
        }
        let mut order: Option<i64> = None;
        let mut terms: Vec<(Rational64, BigRational)> = Vec::new();
        for (neg, chunk) in chunks {
            if let Some(inner) = chunk.strip_prefix("O(").and_then(|s| s.strip_suffix(')')) {
                let e = parse_power(inner)?;
                if !e.is_integer() {
                    return Err(Error::Parse("order must be an integer".into()));
                }
                order = Some(e.to_integer());
                continue;
            }
            let (coef, exp) = match chunk.find('q') {
                None => (parse_rational(&chunk)?, Rational64::zero()),
                Some(pos) => {
                    let head = &chunk[..pos];
                    let head = head.strip_suffix('*').unwrap_or(head);
                    let c = if head.is_empty() { BigRational::one() } else { parse_rational(head)? };
                    (c, parse_power(&chunk[pos..])?)
                }
            };
            terms.push((exp, if neg { -coef } else { coef }));
        }
        let denom = terms.iter().fold(1i64, |d, (e, _)| d.lcm(e.denom()));
        let order = order.unwrap_or_else(|| terms.iter().map(|(e, _)| e.floor().to_integer() + 1).max().unwrap_or(1));
        Ok(QSeries::from_scaled(
            terms.into_iter().map(|(e, c)| ((e * Rational64::from_integer(denom)).to_integer(), c)),
            denom,
            order,
        ))
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad coefficient `{}`", s));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses `q`, `q^5`, `q^-3`, `q^(7/2)`.
fn parse_power(s: &str) -> Result<Rational64> {
    let bad = || Error::Parse(format!("bad power `{}`", s));
    let rest = s.strip_prefix('q').ok_or_else(bad)?;
    if rest.is_empty() {
        return Ok(Rational64::one());
    }
    let rest = rest.strip_prefix('^').ok_or_else(bad)?;
    let rest = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
    rest.parse::<Rational64>().map_err(|_| bad())
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            if e.is_zero() {
                write!(f, "{}", mag)?;
                continue;
            }
            if !unit {
                write!(f, "{}*", mag)?;
            }
            if e.is_one() {
                write!(f, "q")?;
            } else if e.is_integer() {
                write!(f, "q^{}", e)?;
            } else {
                write!(f, "q^({})", e)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries, n: usize) -> Vec<i64> {
        s.to_int_vec(n).unwrap().into_iter().map(|b| i64::try_from(b).unwrap()).collect()
    }

    #[test]
    fn add_cancels_and_merges() {
        let a = QSeries::from_ints(&[1, 1], 10);
        let b = QSeries::from_ints(&[-1, 1], 10);
        assert_eq!(a.add(&b), QSeries::monomial(rat(2), 1, 10));
        let c = QSeries::from_ints(&[1, 0, 1], 10);
        let d = QSeries::from_ints(&[0, 0, 1], 10);
        assert_eq!(ints(&c.add(&d), 3), vec![1, 0, 2]);
        assert_eq!(a.add(&QSeries::zero(10)), a);
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = QSeries::from_ints(&[1, 1], 10);
        let b = QSeries::from_ints(&[1, -1], 10);
        assert_eq!(ints(&a.mul(&b), 4), vec![1, 0, -1, 0]);
        assert_eq!(a.mul(&QSeries::one(10)), a);
    }

    #[test]
    fn order_is_minimum_of_operands() {
        let a = QSeries::from_ints(&[1, 1, 1], 8);
        let b = QSeries::from_ints(&[1, 1], 5);
        assert_eq!(a.add(&b).order(), 5);
        assert_eq!(a.mul(&b).order(), 5);
    }

    #[test]
    fn invert_geometric_and_errors() {
        let a = QSeries::from_ints(&[1, -1], 4);
        assert_eq!(ints(&a.invert().unwrap(), 4), vec![1, 1, 1, 1]);
        assert_eq!(QSeries::one(7).invert().unwrap(), QSeries::one(7));
        assert!(matches!(QSeries::monomial(rat(1), 1, 5).invert(), Err(Error::NotAUnit(_))));
        assert!(matches!(QSeries::zero(5).invert(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn euler_product_inverse_pair() {
        let euler = QSeries::product(&ProductSpec::new().factor(1, 0, 1), 6).unwrap();
        assert_eq!(ints(&euler, 6), vec![1, -1, -1, 0, 0, 1]);
        let inv = QSeries::product(&ProductSpec::new().factor(1, 0, -1), 6).unwrap();
        assert_eq!(ints(&inv, 6), vec![1, 1, 2, 3, 5, 7]);
        assert_eq!(euler.mul(&inv), QSeries::one(6));
        assert_eq!(QSeries::product(&ProductSpec::new(), 9).unwrap(), QSeries::one(9));
    }

    #[test]
    fn product_spec_rejects_bad_factors() {
        assert!(QSeries::product(&ProductSpec::new().factor(0, 3, 1), 5).is_err());
        assert!(QSeries::product(&ProductSpec::new().factor(2, -2, 1), 5).is_err());
    }

    #[test]
    fn rogers_ramanujan_product() {
        let spec = ProductSpec::new().factor(5, -2, -1).factor(5, -3, -1);
        let s = QSeries::product(&spec, 9).unwrap();
        assert_eq!(ints(&s, 9), vec![1, 0, 1, 1, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn compare_reports_first_mismatch() {
        let a = QSeries::from_ints(&[1, 0, 1], 6);
        let b = QSeries::from_ints(&[1, 0, 0, 1], 6);
        assert_eq!(a.compare(&a), Comparison::Equal { through: Rational64::from_integer(5) });
        match a.compare(&b) {
            Comparison::Mismatch { exponent, left, right } => {
                assert_eq!(exponent, Rational64::from_integer(2));
                assert_eq!(left, rat(1));
                assert_eq!(right, rat(0));
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn normalize_lowest_shifts_and_scales() {
        let s = QSeries::from_ints(&[1, 1], 20).shift(Rational64::from_integer(-8));
        let (n, e, c) = s.normalize_lowest().unwrap();
        assert_eq!(e, Rational64::from_integer(-8));
        assert!(c.is_one());
        assert_eq!(ints(&n, 2), vec![1, 1]);
        let (n, e, c) = QSeries::monomial(rat(3), 2, 10).normalize_lowest().unwrap();
        assert_eq!(e, Rational64::from_integer(2));
        assert_eq!(c, rat(3));
        assert_eq!(n.coeff(0), rat(1));
        assert_eq!(QSeries::zero(3).normalize_lowest().unwrap_err(), Error::ZeroSeries);
    }

    #[test]
    fn half_integer_grid_normalizes_away() {
        let s = QSeries::from_scaled(vec![(-3, rat(1)), (1, rat(2))], 2, 10);
        let (n, e, _) = s.normalize_lowest().unwrap();
        assert_eq!(e, Rational64::new(-3, 2));
        assert_eq!(n.denom_scale(), 1);
        assert_eq!(n.coeff(2), rat(2));
    }

    #[test]
    fn text_round_trip() {
        let s = QSeries::from_scaled(vec![(0, rat(1)), (3, ratio(-3, 2)), (8, rat(7))], 2, 9);
        let text = s.to_string();
        assert_eq!(text, "1 - 3/2*q^(3/2) + 7*q^4 + O(q^9)");
        assert_eq!(QSeries::parse(&text).unwrap(), s);
        let r = s.to_report();
        assert_eq!(QSeries::from_report(&r).unwrap(), s);
    }

    #[test]
    fn parse_handles_plain_tables() {
        let s = QSeries::parse("1+q^{2}+q^{3}+2 q^{4}".replace(['{', '}'], "").replace(" q", "*q").as_str()).unwrap();
        assert_eq!(ints(&s, 5), vec![1, 0, 1, 1, 2]);
        assert_eq!(s.order(), 5);
    }
}
