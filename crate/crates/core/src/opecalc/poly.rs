//! Polynomials of total degree at most 2 over ℚ.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Unknown index; `0` is reserved for the constant slot.
pub type Var = u32;

/// Keys are `(0, 0)` for the constant, `(0, i)` for `x_i` and `(i, j)`
/// with `i ≤ j` for `x_i x_j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<(Var, Var), BigRational>,
}

fn key(a: Var, b: Var) -> (Var, Var) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly::zero();
        p.add_term((0, 0), c);
        p
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn var(v: Var) -> Self {
        assert!(v > 0, "variable 0 is the constant slot");
        let mut p = Poly::zero();
        p.add_term((0, v), BigRational::one());
        p
    }

    fn add_term(&mut self, k: (Var, Var), c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|&(a, b)| usize::from(a > 0) + usize::from(b > 0)).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&(0, 0)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn linear_coeff(&self, v: Var) -> BigRational {
        self.terms.get(&(0, v)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Var, Var), &BigRational)> {
        self.terms.iter()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|&(a, b)| [a, b]).filter(|&v| v > 0).collect()
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (&k, c) in &other.terms {
            self.add_term(k, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, k: &BigRational) {
        if k.is_zero() {
            return;
        }
        for (&key, c) in &other.terms {
            self.add_term(key, c * k);
        }
    }

    pub fn scaled(&self, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(&key, c)| (key, c * k)).collect() }
    }

    pub fn neg(&self) -> Poly {
        self.scaled(&-BigRational::one())
    }

    /// Product; fails if the result would exceed degree 2.
    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        let d = self.degree() + other.degree();
        if d > 2 {
            return Err(Error::DegreeOverflow(d));
        }
        let mut out = Poly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                let vars: Vec<Var> = [a1, b1, a2, b2].into_iter().filter(|&v| v > 0).collect();
                let k = match vars.len() {
                    0 => (0, 0),
                    1 => (0, vars[0]),
                    _ => key(vars[0], vars[1]),
                };
                out.add_term(k, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Substitutes `x_v ↦ subs[v]` for every listed variable. Substitutes
    /// must be affine so that the degree never grows.
    pub fn substitute(&self, subs: &HashMap<Var, Poly>) -> Poly {
        if !self.vars().iter().any(|v| subs.contains_key(v)) {
            return self.clone();
        }
        let lookup = |v: Var| -> Poly {
            if v == 0 {
                Poly::one()
            } else {
                subs.get(&v).cloned().unwrap_or_else(|| Poly::var(v))
            }
        };
        let mut out = Poly::zero();
        for (&(a, b), c) in &self.terms {
            let term = lookup(a).mul(&lookup(b)).expect("affine substitution keeps degree ≤ 2");
            out.add_scaled(&term, c);
        }
        out
    }

    pub fn eval(&self, values: &HashMap<Var, BigRational>) -> Option<BigRational> {
        let get = |v: Var| -> Option<BigRational> {
            if v == 0 {
                Some(BigRational::one())
            } else {
                values.get(&v).cloned()
            }
        };
        let mut s = BigRational::zero();
        for (&(a, b), c) in &self.terms {
            s += c * get(a)? * get(b)?;
        }
        Some(s)
    }

    /// Divides by the coefficient of the leading term so that equal
    /// equations compare equal.
    pub fn monic(&self) -> Poly {
        match self.terms.iter().next_back() {
            None => Poly::zero(),
            Some((_, c)) => self.scaled(&c.recip()),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for v in [a, b] {
                if v > 0 {
                    write!(f, "*x{v}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::rat;

    #[test]
    fn arithmetic() {
        let x = Poly::var(1);
        let y = Poly::var(2);
        let mut s = x.clone();
        s.add_assign(&Poly::constant(rat(3)));
        let p = s.mul(&y).unwrap();
        assert_eq!(p.degree(), 2);
        assert!(p.mul(&x).is_err());
        let subs: HashMap<Var, Poly> = [(1, Poly::constant(rat(2)))].into();
        let q = p.substitute(&subs);
        assert_eq!(q, Poly::var(2).scaled(&rat(5)));
        let vals: HashMap<Var, BigRational> = [(2, rat(7))].into();
        assert_eq!(q.eval(&vals), Some(rat(35)));
        let mut z = x.clone();
        z.add_assign(&x.neg());
        assert!(z.is_zero());
    }
}
