//! Mode algebra on PBW states: Virasoro modes, primary-field modes and the
//! modes of arbitrary PBW states, all normal ordered back to PBW form.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::pbw::{PbwMonomial, PbwState};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::qseries::rat;

/// A strong generator: the Virasoro field or the `i`-th primary (`i ≥ 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    L,
    W(u8),
}

/// Products among primaries, indexed by `(i, j, n)` for `W^i_(n) W^j`.
#[derive(Clone, Debug)]
pub struct BracketTable {
    pub c: BigRational,
    /// `[0, Δ_1, Δ_2, …]`: highest weights of the vacuum and the primaries.
    pub tail_weights: Vec<i64>,
    pub names: Vec<String>,
    /// `W^i_(n) W^j` for `i ≤ j` and `n ≥ 0`.
    pub products: HashMap<(u8, u8, i64), PbwState>,
    /// Replacements for negative products, e.g. `W^i_(−1) W^i ↦ σ`.
    pub composites: HashMap<(u8, u8, i64), PbwState>,
}

impl BracketTable {
    pub fn weight(&self, m: &PbwMonomial) -> i64 {
        m.weight(&self.tail_weights)
    }

    pub fn field_weight(&self, f: Field) -> i64 {
        match f {
            Field::L => 2,
            Field::W(i) => self.tail_weights[usize::from(i)],
        }
    }

    pub fn primaries(&self) -> impl Iterator<Item = u8> {
        1..self.tail_weights.len() as u8
    }

    pub fn fields(&self) -> Vec<Field> {
        std::iter::once(Field::L).chain(self.primaries().map(Field::W)).collect()
    }

    pub fn field_name(&self, f: Field) -> String {
        match f {
            Field::L => "L".into(),
            Field::W(i) => self.names[usize::from(i)].clone(),
        }
    }

    pub fn state_of(&self, f: Field) -> PbwState {
        match f {
            Field::L => PbwState::monomial(PbwMonomial { modes: vec![2], tail: 0 }),
            Field::W(i) => PbwState::monomial(PbwMonomial::primary(i)),
        }
    }
}

pub(crate) fn binomial(n: i64, k: i64) -> BigRational {
    // generalized binomial coefficient for any integer n and k ≥ 0
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    BigRational::new(num, den)
}

fn factorial(k: i64) -> BigRational {
    (1..=k).fold(BigRational::one(), |acc, i| acc * rat(i))
}

type Memo<K> = RefCell<HashMap<K, Rc<PbwState>>>;

/// Evaluates modes against a fixed bracket table, memoizing every
/// monomial-level result.
pub struct ModeEngine<'a> {
    pub table: &'a BracketTable,
    l_memo: Memo<(i64, PbwMonomial)>,
    w_memo: Memo<(u8, i64, PbwMonomial)>,
    s_memo: Memo<(PbwMonomial, i64, PbwMonomial)>,
}

impl<'a> ModeEngine<'a> {
    pub fn new(table: &'a BracketTable) -> Self {
        ModeEngine {
            table,
            l_memo: RefCell::new(HashMap::new()),
            w_memo: RefCell::new(HashMap::new()),
            s_memo: RefCell::new(HashMap::new()),
        }
    }

    /// Virasoro mode `L_m` (so `L_m = L_(m+1)`).
    pub fn l_mode(&self, m: i64, x: &PbwMonomial) -> Rc<PbwState> {
        let k = (m, x.clone());
        if let Some(r) = self.l_memo.borrow().get(&k) {
            return r.clone();
        }
        let r = Rc::new(self.l_mode_raw(m, x));
        self.l_memo.borrow_mut().insert(k, r.clone());
        r
    }

    fn l_mode_raw(&self, m: i64, x: &PbwMonomial) -> PbwState {
        if self.table.weight(x) - m < 0 {
            return PbwState::zero();
        }
        let Some((&n1, rest)) = x.modes.split_first() else {
            return match m {
                _ if m > 0 => PbwState::zero(),
                0 => PbwState::monomial(x.clone()).scaled(&rat(self.table.tail_weights[usize::from(x.tail)])),
                -1 if x.tail == 0 => PbwState::zero(),
                _ => PbwState::monomial(PbwMonomial { modes: vec![(-m) as u8], tail: x.tail }),
            };
        };
        let n1 = i64::from(n1);
        if m < 0 && -m >= n1 {
            let mut modes = vec![(-m) as u8];
            modes.extend_from_slice(&x.modes);
            return PbwState::monomial(PbwMonomial { modes, tail: x.tail });
        }
        let rest = PbwMonomial { modes: rest.to_vec(), tail: x.tail };
        // L_m L_{−n1} R = L_{−n1} L_m R + (m+n1) L_{m−n1} R + δ_{m,n1} c(m³−m)/12 R
        let mut out = self.l_mode_state(-n1, &self.l_mode(m, &rest));
        out.add_scaled(&self.l_mode(m - n1, &rest), &rat(m + n1));
        if m == n1 {
            let central = &self.table.c * rat(m * m * m - m) / rat(12);
            out.add_scaled(&PbwState::monomial(rest), &central);
        }
        out
    }

    pub fn l_mode_state(&self, m: i64, s: &PbwState) -> PbwState {
        let mut out = PbwState::zero();
        for (x, c) in &s.terms {
            for (y, d) in &self.l_mode(m, x).terms {
                out.add_term(y.clone(), &c.mul(d).expect("Virasoro action has constant coefficients"));
            }
        }
        out
    }

    /// `T^{(l)} = L_{−1}^l / l!`.
    pub fn divided_translation(&self, l: i64, s: &PbwState) -> PbwState {
        let mut out = s.clone();
        for _ in 0..l {
            out = self.l_mode_state(-1, &out);
        }
        out.scaled(&factorial(l).recip())
    }

    /// `W^i_(j)` on a monomial.
    pub fn w_mode(&self, i: u8, j: i64, x: &PbwMonomial) -> Result<Rc<PbwState>> {
        let k = (i, j, x.clone());
        if let Some(r) = self.w_memo.borrow().get(&k) {
            return Ok(r.clone());
        }
        let r = Rc::new(self.w_mode_raw(i, j, x)?);
        self.w_memo.borrow_mut().insert(k, r.clone());
        Ok(r)
    }

    fn w_mode_raw(&self, i: u8, j: i64, x: &PbwMonomial) -> Result<PbwState> {
        let delta = self.table.tail_weights[usize::from(i)];
        if self.table.weight(x) + delta - j - 1 < 0 {
            return Ok(PbwState::zero());
        }
        let Some((&n1, rest)) = x.modes.split_first() else {
            return self.w_on_highest(i, j, x.tail);
        };
        let n1 = i64::from(n1);
        let rest = PbwMonomial { modes: rest.to_vec(), tail: x.tail };
        // W_(j) L_{−n1} R = L_{−n1} W_(j) R − ((1−n1)(Δ−1) − j) W_(j−n1) R
        let mut out = self.l_mode_state(-n1, &*self.w_mode(i, j, &rest)?);
        let coef = (1 - n1) * (delta - 1) - j;
        out.add_scaled(&*self.w_mode(i, j - n1, &rest)?, &rat(-coef));
        Ok(out)
    }

    fn w_on_highest(&self, i: u8, j: i64, tail: u8) -> Result<PbwState> {
        let t = &self.table;
        if tail == 0 {
            if j >= 0 {
                return Ok(PbwState::zero());
            }
            let k = -j - 1;
            let x = PbwMonomial { modes: vec![1; k as usize], tail: i };
            return Ok(PbwState::monomial(x).scaled(&factorial(k).recip()));
        }
        let weight = t.tail_weights[usize::from(i)] + t.tail_weights[usize::from(tail)] - j - 1;
        if j < 0 {
            return t.composites.get(&(i, tail, j)).cloned().ok_or(Error::WeightOverflow(weight));
        }
        if i <= tail {
            return Ok(t.products.get(&(i, tail, j)).cloned().unwrap_or_default());
        }
        // skew-symmetry: a_(j)b = Σ_l (−1)^{j+l+1} T^{(l)} (b_(j+l)a)
        let mut out = PbwState::zero();
        let mut l = 0;
        while weight - l >= 0 {
            let inner = self.w_on_highest(tail, j + l, i)?;
            let sign = if (j + l + 1) % 2 == 0 { rat(1) } else { rat(-1) };
            out.add_scaled(&self.divided_translation(l, &inner), &sign);
            l += 1;
        }
        Ok(out)
    }

    /// `f_(j)` on a monomial.
    pub fn field_mode(&self, f: Field, j: i64, x: &PbwMonomial) -> Result<Rc<PbwState>> {
        match f {
            Field::L => Ok(self.l_mode(j - 1, x)),
            Field::W(i) => self.w_mode(i, j, x),
        }
    }

    /// `f_(j)` on a state, multiplying coefficient polynomials.
    pub fn field_mode_state(&self, f: Field, j: i64, s: &PbwState) -> Result<PbwState> {
        let mut out = PbwState::zero();
        for (x, c) in &s.terms {
            for (y, d) in &self.field_mode(f, j, x)?.terms {
                out.add_term(y.clone(), &c.mul(d)?);
            }
        }
        Ok(out)
    }

    /// `s_(m) x` for PBW monomials `s` and `x`, via the iterate formula
    /// `(a_(n)b)_(m) = Σ_i (−1)^i C(n,i) [a_(n−i) b_(m+i) − (−1)^n b_(n+m−i) a_(i)]`
    /// with `a = L`.
    pub fn state_mode(&self, s: &PbwMonomial, m: i64, x: &PbwMonomial) -> Result<Rc<PbwState>> {
        let k = (s.clone(), m, x.clone());
        if let Some(r) = self.s_memo.borrow().get(&k) {
            return Ok(r.clone());
        }
        let r = Rc::new(self.state_mode_raw(s, m, x)?);
        self.s_memo.borrow_mut().insert(k, r.clone());
        Ok(r)
    }

    fn state_mode_raw(&self, s: &PbwMonomial, m: i64, x: &PbwMonomial) -> Result<PbwState> {
        let wt_s = self.table.weight(s);
        let wt_x = self.table.weight(x);
        if wt_s + wt_x - m - 1 < 0 {
            return Ok(PbwState::zero());
        }
        let Some((&k, rest)) = s.modes.split_first() else {
            return match s.tail {
                0 if m == -1 => Ok(PbwState::monomial(x.clone())),
                0 => Ok(PbwState::zero()),
                i => Ok((*self.w_mode(i, m, x)?).clone()),
            };
        };
        let k = i64::from(k);
        let t = PbwMonomial { modes: rest.to_vec(), tail: s.tail };
        if k == 1 {
            // (T t)_(m) = −m t_(m−1)
            return Ok(self.state_mode(&t, m - 1, x)?.scaled(&rat(-m)));
        }
        let n = 1 - k;
        let wt_t = wt_s - k;
        let top = (wt_t + wt_x - m - 1).max(wt_x + 1);
        let parity = if n % 2 == 0 { rat(1) } else { rat(-1) };
        let mut out = PbwState::zero();
        for i in 0..=top {
            let coef = binomial(i - n - 1, i);
            let inner = self.state_mode(&t, m + i, x)?;
            if !inner.is_zero() {
                out.add_scaled(&self.l_mode_state(n - i - 1, &inner), &coef);
            }
            let lx = self.l_mode(i - 1, x);
            if !lx.is_zero() {
                let mut acc = PbwState::zero();
                for (y, d) in &lx.terms {
                    for (z, e) in &self.state_mode(&t, n + m - i, y)?.terms {
                        acc.add_term(z.clone(), &d.mul(e)?);
                    }
                }
                out.add_scaled(&acc, &(-&coef * &parity));
            }
        }
        Ok(out)
    }

    /// `a_(m) b` for states, bilinear in the coefficients.
    pub fn mode(&self, a: &PbwState, m: i64, b: &PbwState) -> Result<PbwState> {
        let mut out = PbwState::zero();
        for (s, c) in &a.terms {
            for (x, d) in &b.terms {
                let cd = c.mul(d)?;
                if cd.is_zero() {
                    continue;
                }
                for (y, e) in &self.state_mode(s, m, x)?.terms {
                    out.add_term(y.clone(), &cd.mul(e)?);
                }
            }
        }
        Ok(out)
    }
}

/// Coefficient-free polynomial helper used by tests and reports.
pub fn constant_state(s: &PbwState) -> bool {
    s.terms.values().all(Poly::is_constant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::ratio;

    fn vir_table() -> BracketTable {
        BracketTable {
            c: ratio(-22, 5),
            tail_weights: vec![0, 6],
            names: vec!["1".into(), "W".into()],
            products: HashMap::new(),
            composites: HashMap::new(),
        }
    }

    #[test]
    fn virasoro_bracket() {
        let t = vir_table();
        let e = ModeEngine::new(&t);
        let l = PbwMonomial { modes: vec![2], tail: 0 };
        // L_(3) L = c/2 · 1, L_(1) L = 2L, L_(0) L = TL = L_{−3}1
        assert_eq!(*e.l_mode(2, &l), PbwState::monomial(PbwMonomial::vacuum()).scaled(&ratio(-11, 5)));
        assert_eq!(*e.l_mode(0, &l), PbwState::monomial(l.clone()).scaled(&rat(2)));
        assert_eq!(*e.l_mode(-1, &l), PbwState::monomial(PbwMonomial { modes: vec![3], tail: 0 }));
        assert!(e.l_mode(-1, &PbwMonomial::vacuum()).is_zero());
        // state_mode of L itself agrees with the field mode
        for m in -2..5 {
            for x in [l.clone(), PbwMonomial::primary(1), PbwMonomial { modes: vec![2, 1], tail: 1 }] {
                assert_eq!(*e.state_mode(&l, m, &x).unwrap(), *e.l_mode(m - 1, &x), "m={m} x={x:?}");
            }
        }
    }

    #[test]
    fn translation_covariance() {
        // (T a)_(m) = −m a_(m−1) checked against the iterate formula for a = L_{-3}1 = T L
        let t = vir_table();
        let e = ModeEngine::new(&t);
        let tl = PbwMonomial { modes: vec![3], tail: 0 };
        let l = PbwMonomial { modes: vec![2], tail: 0 };
        for m in 0..6 {
            let x = PbwMonomial { modes: vec![2], tail: 1 };
            let lhs = e.state_mode(&tl, m, &x).unwrap();
            let rhs = e.state_mode(&l, m - 1, &x).unwrap().scaled(&rat(-m));
            assert_eq!(*lhs, rhs, "m={m}");
        }
    }

    #[test]
    fn vacuum_is_identity() {
        let t = vir_table();
        let e = ModeEngine::new(&t);
        let x = PbwMonomial { modes: vec![3, 1], tail: 1 };
        assert_eq!(*e.state_mode(&PbwMonomial::vacuum(), -1, &x).unwrap(), PbwState::monomial(x.clone()));
        assert!(e.state_mode(&PbwMonomial::vacuum(), 0, &x).unwrap().is_zero());
        assert!(binomial(-2, 3) == rat(-4));
    }
}
