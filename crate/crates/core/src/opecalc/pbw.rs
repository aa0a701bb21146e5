//! PBW monomials `L_{−n₁}⋯L_{−n_k} X` over the vacuum and primary fields.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::Poly;

/// `L_{−n₁}⋯L_{−n_k}` applied to the highest-weight vector `tail`, with
/// `n₁ ≥ … ≥ n_k`. Tail 0 is the vacuum, tail `i ≥ 1` the `i`-th primary.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial {
    pub modes: Vec<u8>,
    pub tail: u8,
}

impl PbwMonomial {
    pub fn vacuum() -> Self {
        PbwMonomial { modes: vec![], tail: 0 }
    }

    pub fn primary(i: u8) -> Self {
        PbwMonomial { modes: vec![], tail: i }
    }

    pub fn weight(&self, tail_weights: &[i64]) -> i64 {
        self.modes.iter().map(|&n| i64::from(n)).sum::<i64>() + tail_weights[usize::from(self.tail)]
    }

    pub fn is_valid(&self) -> bool {
        let min = if self.tail == 0 { 2 } else { 1 };
        self.modes.windows(2).all(|w| w[0] >= w[1]) && self.modes.iter().all(|&n| n >= min)
    }

    pub fn label(&self, names: &[String]) -> String {
        let mut s = String::new();
        for n in &self.modes {
            s.push_str(&format!("L-{n} "));
        }
        s.push_str(&names[usize::from(self.tail)]);
        s
    }
}

/// Partitions of `n` into parts `≥ min`, largest part first.
fn partitions(n: i64, min: i64, max: i64, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (min..=max.min(n)).rev() {
        prefix.push(part as u8);
        partitions(n - part, min, part, prefix, out);
        prefix.pop();
    }
}

/// Monomials of weight `k` over the vacuum module and one Verma module per
/// entry of `tail_weights[1..]` (`tail_weights[0]` is the vacuum weight 0).
pub fn pbw_basis(tail_weights: &[i64], k: i64) -> Vec<PbwMonomial> {
    let mut out = Vec::new();
    for (t, &h) in tail_weights.iter().enumerate() {
        let rest = k - h;
        if rest < 0 {
            continue;
        }
        let min = if t == 0 { 2 } else { 1 };
        let mut parts = Vec::new();
        partitions(rest, min, rest, &mut vec![], &mut parts);
        out.extend(parts.into_iter().map(|modes| PbwMonomial { modes, tail: t as u8 }));
    }
    out
}

/// Linear combination of PBW monomials with polynomial coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PbwState {
    pub terms: BTreeMap<PbwMonomial, Poly>,
}

impl PbwState {
    pub fn zero() -> Self {
        PbwState::default()
    }

    pub fn monomial(m: PbwMonomial) -> Self {
        let mut s = PbwState::zero();
        s.terms.insert(m, Poly::one());
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: &Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                x.add_assign(c);
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &PbwState) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    /// `self += k·other` for a rational `k`.
    pub fn add_scaled(&mut self, other: &PbwState, k: &BigRational) {
        if k.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &c.scaled(k));
        }
    }

    pub fn scaled(&self, k: &BigRational) -> PbwState {
        let mut s = PbwState::zero();
        s.add_scaled(self, k);
        s
    }

    pub fn degree(&self) -> usize {
        self.terms.values().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &PbwMonomial) -> Poly {
        self.terms.get(m).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> PbwState {
        let mut s = PbwState::zero();
        for (m, c) in &self.terms {
            s.add_term(m.clone(), &f(c));
        }
        s
    }
}

impl fmt::Display for PbwState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("[{c}] {:?}|{}", m.modes, m.tail)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_counts() {
        let w6 = [0, 6];
        let total: usize = (0..=11).map(|k| pbw_basis(&w6, k).len()).sum();
        assert_eq!(total, 75);
        assert_eq!(pbw_basis(&[0, 4, 6], 8).len(), 14);
        let vac6 = pbw_basis(&w6, 6).into_iter().filter(|m| m.tail == 0).count();
        assert_eq!(vac6, 4);
        assert!(pbw_basis(&w6, 9).iter().all(PbwMonomial::is_valid));
        assert!(pbw_basis(&w6, 1).is_empty());
    }
}
