//! λ-brackets of the Virasoro field with primary fields, Jacobi-identity
//! constraint systems on unknown OPE coefficients, and their exact solution.
//!
//! A bracket table fixes `[L_λ L]`, `[L_λ W] = (T + Δλ)W` and an ansatz for
//! every `[W^i_λ W^j]` whose coefficients are unknowns over a PBW basis. The
//! commutator formula
//! `a_(m) b_(n) c − b_(n) a_(m) c = Σ_j C(m,j) (a_(j)b)_(m+n−j) c`
//! is expanded for nonnegative `m, n` and equated coefficient by coefficient.

mod cases;
mod modes;
mod pbw;
mod poly;
mod solve;

pub use cases::{build_ansatz, build_system, Ansatz, OpeCase, OpeCaseId};
pub use modes::{BracketTable, Field, ModeEngine};
pub use pbw::{pbw_basis, PbwMonomial, PbwState};
pub use poly::{Poly, Var};
pub use solve::{
    instantiate, solve_constraints, verify_ope_table, OpeValue, SolveReport, SolveStatus, Surd, VerifyReport,
    MAX_BRANCHES,
};

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::error::Result;

/// `[a_λ b] = Σ_n λ^n/n! a_(n)b`, stored against divided powers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaPoly {
    pub products: BTreeMap<i64, PbwState>,
}

impl LambdaPoly {
    pub fn degree(&self) -> Option<i64> {
        self.products.keys().next_back().copied()
    }

    pub fn product(&self, n: i64) -> PbwState {
        self.products.get(&n).cloned().unwrap_or_default()
    }
}

/// All nonnegative products `a_(n)b`.
pub fn lambda_bracket(engine: &ModeEngine, a: &PbwState, b: &PbwState) -> Result<LambdaPoly> {
    let wt = |s: &PbwState| s.terms.keys().map(|m| engine.table.weight(m)).max().unwrap_or(0);
    let top = wt(a) + wt(b) - 1;
    let mut out = LambdaPoly::default();
    for n in 0..=top {
        let p = engine.mode(a, n, b)?;
        if !p.is_zero() {
            out.products.insert(n, p);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub poly: Poly,
    pub provenance: String,
}

#[derive(Clone, Debug, Default)]
pub struct ConstraintSystem {
    pub variables: Vec<String>,
    pub equations: Vec<Equation>,
    /// `(variable, value)` pairs applied in order whenever elimination
    /// stalls; each one that is actually needed adds one to the family
    /// dimension.
    pub normalizations: Vec<(Var, BigRational)>,
    /// Primary indices whose signs multiply into each variable under
    /// `W^i ↦ −W^i`; solutions are reported modulo these symmetries.
    pub parity: Vec<Vec<u8>>,
}

impl ConstraintSystem {
    pub fn extend(&mut self, eqs: Vec<Equation>) {
        self.equations.extend(eqs);
    }

    /// True if every equation only mentions declared variables.
    pub fn is_well_formed(&self) -> bool {
        let n = self.variables.len() as Var;
        self.equations.iter().all(|e| e.poly.vars().iter().all(|&v| v >= 1 && v <= n))
    }
}

fn push_state(eqs: &mut Vec<Equation>, s: &PbwState, names: &[String], tag: &str) {
    for (m, c) in &s.terms {
        if !c.is_zero() {
            eqs.push(Equation { poly: c.clone(), provenance: format!("{tag} at {}", m.label(names)) });
        }
    }
}

/// Jacobi identities for the triple `(a, b, c)` with nonnegative modes and
/// output weight at most `bound`.
pub fn jacobi_constraints(engine: &ModeEngine, triple: (Field, Field, Field), bound: i64) -> Result<Vec<Equation>> {
    let t = engine.table;
    let (a, b, c) = triple;
    let (wa, wb, wc) = (t.field_weight(a), t.field_weight(b), t.field_weight(c));
    let sa = t.state_of(a);
    let sb = t.state_of(b);
    let sc = t.state_of(c);
    let mut eqs = Vec::new();
    let total = wa + wb + wc - 2;
    for m in 0..=total {
        for n in 0..=(total - m) {
            let w = total - m - n;
            if w > bound {
                continue;
            }
            let bc = engine.mode(&sb, n, &sc)?;
            let mut lhs = engine.mode(&sa, m, &bc)?;
            let ac = engine.mode(&sa, m, &sc)?;
            lhs.add_scaled(&engine.mode(&sb, n, &ac)?, &crate::qseries::rat(-1));
            for j in 0..=m {
                let ab = engine.mode(&sa, j, &sb)?;
                if ab.is_zero() {
                    continue;
                }
                let term = engine.mode(&ab, m + n - j, &sc)?;
                lhs.add_scaled(&term, &-modes::binomial(m, j));
            }
            let tag = format!("Jacobi({},{},{}) m={m} n={n}", t.field_name(a), t.field_name(b), t.field_name(c));
            push_state(&mut eqs, &lhs, &t.names, &tag);
        }
    }
    Ok(eqs)
}

/// Skew-symmetry `a_(k)a = Σ_l (−1)^{k+l+1} T^{(l)}(a_(k+l)a)` for the
/// ansatz of a primary with itself, up to output weight `bound`.
pub fn skew_constraints(engine: &ModeEngine, i: u8, bound: i64) -> Result<Vec<Equation>> {
    let t = engine.table;
    let delta = t.tail_weights[usize::from(i)];
    let s = PbwState::monomial(PbwMonomial::primary(i));
    let mut eqs = Vec::new();
    for k in 0..2 * delta {
        let w = 2 * delta - 1 - k;
        if w > bound {
            continue;
        }
        let mut lhs = engine.mode(&s, k, &s)?;
        for l in 0..=w {
            let inner = engine.mode(&s, k + l, &s)?;
            let sign = if (k + l + 1) % 2 == 0 { -1 } else { 1 };
            lhs.add_scaled(&engine.divided_translation(l, &inner), &crate::qseries::rat(sign));
        }
        push_state(&mut eqs, &lhs, &t.names, &format!("skew({}) k={k}", t.names[usize::from(i)]));
    }
    Ok(eqs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{rat, ratio};
    use std::collections::HashMap;

    fn table() -> BracketTable {
        BracketTable {
            c: ratio(-1420, 17),
            tail_weights: vec![0, 6],
            names: vec!["1".into(), "W6".into()],
            products: HashMap::new(),
            composites: HashMap::new(),
        }
    }

    #[test]
    fn virasoro_lambda_bracket() {
        let t = table();
        let e = ModeEngine::new(&t);
        let l = t.state_of(Field::L);
        let br = lambda_bracket(&e, &l, &l).unwrap();
        assert_eq!(br.degree(), Some(3));
        // L_(3)L = (c/2)·1 so the λ³ coefficient is c/12
        assert_eq!(br.product(3), PbwState::monomial(PbwMonomial::vacuum()).scaled(&ratio(-710, 17)));
        assert_eq!(br.product(1), l.scaled(&rat(2)));
        let vac = PbwState::monomial(PbwMonomial::vacuum());
        assert!(lambda_bracket(&e, &l, &vac).unwrap().products.is_empty());
        let w = t.state_of(Field::W(1));
        let lw = lambda_bracket(&e, &l, &w).unwrap();
        assert_eq!(lw.product(1), w.scaled(&rat(6)));
        assert_eq!(lw.product(0), PbwState::monomial(PbwMonomial { modes: vec![1], tail: 1 }));
    }

    #[test]
    fn virasoro_jacobi_is_identically_satisfied() {
        let t = table();
        let e = ModeEngine::new(&t);
        use Field::*;
        for triple in [(L, L, L), (L, L, W(1)), (L, W(1), L)] {
            let eqs = jacobi_constraints(&e, triple, 20).unwrap();
            assert!(eqs.is_empty(), "{triple:?}: {}", eqs[0].provenance);
        }
    }
}
