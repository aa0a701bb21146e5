//! The registered OPE systems and their ansatz tables.

use std::collections::HashMap;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use rayon::prelude::*;

use super::modes::{BracketTable, Field, ModeEngine};
use super::pbw::{pbw_basis, PbwState};
use super::poly::{Poly, Var};
use super::solve::{instantiate, SolveReport};
use super::{jacobi_constraints, skew_constraints, ConstraintSystem, Equation};
use crate::error::{Error, Result};
use crate::grading::{central_charge, Orbit};
use crate::qseries::{rat, ratio};
use crate::rootdata::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OpeCaseId {
    /// Virasoro plus one weight-6 primary at c = −1420/17.
    G2C1420,
    /// Virasoro plus one weight-6 primary at c = −590/9.
    G2C590,
    /// Virasoro plus primaries of weight 4 and 6 at c = −135/8, with the
    /// weight-8 relation `W⁴_(−1)W⁴ = σ₈`.
    B3C135,
    /// Virasoro plus primaries of weight 6, 8, 12; declared but not solved.
    F4,
}

impl OpeCaseId {
    pub const SOLVABLE: [OpeCaseId; 3] = [OpeCaseId::G2C1420, OpeCaseId::G2C590, OpeCaseId::B3C135];

    pub fn name(self) -> &'static str {
        match self {
            OpeCaseId::G2C1420 => "g2-c1420-17",
            OpeCaseId::G2C590 => "g2-c590-9",
            OpeCaseId::B3C135 => "b3-c135-8",
            OpeCaseId::F4 => "f4-c14-13",
        }
    }
}

impl FromStr for OpeCaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [OpeCaseId::G2C1420, OpeCaseId::G2C590, OpeCaseId::B3C135, OpeCaseId::F4]
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown OPE case `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct OpeCase {
    pub id: OpeCaseId,
    pub c: BigRational,
    /// Weights of the primary generators.
    pub primaries: Vec<i64>,
    /// Equations are imposed only at output weight ≤ bound.
    pub bound: i64,
    /// Primary whose `(−1)`-product with itself is replaced by an unknown
    /// state of the same weight.
    pub null_vector: Option<u8>,
    /// Field triples whose Jacobi identities are imposed.
    pub triples: Vec<(Field, Field, Field)>,
}

impl OpeCase {
    pub fn get(id: OpeCaseId) -> OpeCase {
        use Field::*;
        match id {
            OpeCaseId::G2C1420 | OpeCaseId::G2C590 => OpeCase {
                id,
                c: if id == OpeCaseId::G2C1420 { ratio(-1420, 17) } else { ratio(-590, 9) },
                primaries: vec![6],
                bound: 11,
                null_vector: None,
                triples: vec![(L, W(1), W(1)), (W(1), W(1), W(1))],
            },
            OpeCaseId::B3C135 => {
                let mut triples = Vec::new();
                for a in [L, W(1), W(2)] {
                    for b in [W(1), W(2)] {
                        for c in [W(1), W(2)] {
                            if a <= b {
                                triples.push((a, b, c));
                            }
                        }
                    }
                }
                OpeCase { id, c: ratio(-135, 8), primaries: vec![4, 6], bound: 8, null_vector: Some(1), triples }
            }
            OpeCaseId::F4 => OpeCase {
                id,
                c: central_charge(Label::F4, Orbit::Principal, 14, 13).expect("registered grading"),
                primaries: vec![6, 8, 12],
                bound: 23,
                null_vector: None,
                triples: vec![],
            },
        }
    }
}

/// A bracket table whose coefficients are unknowns, with bookkeeping.
#[derive(Clone, Debug)]
pub struct Ansatz {
    pub table: BracketTable,
    pub variables: Vec<String>,
    /// Number of unknowns in the primary-primary brackets.
    pub bracket_unknowns: usize,
    /// Number of unknowns in the null-vector replacement.
    pub null_unknowns: usize,
    /// `(variable, value)` pairs fixing the vacuum coefficient of each
    /// `[W^i_λ W^i]` to 1 in the λ-power convention.
    pub normalizations: Vec<(Var, BigRational)>,
    /// Sign of each variable under `W^i ↦ ε_i W^i`, as the list of primary
    /// indices whose signs multiply.
    pub parity: Vec<Vec<u8>>,
    /// `(i, j, tail)` for a coefficient of `W^i_(n)W^j` on a monomial over
    /// `tail`; the null-vector unknowns use `(i, i, tail)`.
    pub origin: Vec<(u8, u8, u8)>,
}

fn factorial(n: i64) -> BigRational {
    (1..=n).fold(rat(1), |a, k| a * rat(k))
}

pub fn build_ansatz(case: &OpeCase) -> Ansatz {
    let mut tail_weights = vec![0];
    tail_weights.extend(&case.primaries);
    let mut names = vec!["1".to_string()];
    names.extend(case.primaries.iter().map(|d| format!("W{d}")));
    let mut products = HashMap::new();
    let mut composites = HashMap::new();
    let mut variables = Vec::new();
    let mut parity = Vec::new();
    let mut normalizations = Vec::new();
    let mut origin = Vec::new();
    let k = case.primaries.len() as u8;
    let parity_of = |i: u8, j: u8, tail: u8| -> Vec<u8> {
        let mut p: Vec<u8> = [i, j, tail].into_iter().filter(|&x| x > 0).collect();
        p.sort();
        // ε² = 1
        let mut out = Vec::new();
        for x in p {
            if out.last() == Some(&x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        out
    };
    for i in 1..=k {
        for j in i..=k {
            let top = tail_weights[i as usize] + tail_weights[j as usize] - 1;
            for n in 0..=top {
                let w = top - n;
                let mut st = PbwState::zero();
                for m in pbw_basis(&tail_weights, w) {
                    variables.push(format!("{}_({n}){}[{}]", names[i as usize], names[j as usize], m.label(&names)));
                    let v = variables.len() as Var;
                    parity.push(parity_of(i, j, m.tail));
                    origin.push((i, j, m.tail));
                    if i == j && n == top {
                        normalizations.push((v, factorial(n)));
                    }
                    st.add_term(m, &Poly::var(v));
                }
                products.insert((i, j, n), st);
            }
        }
    }
    let bracket_unknowns = variables.len();
    if let Some(i) = case.null_vector {
        let w = 2 * tail_weights[i as usize];
        let mut st = PbwState::zero();
        for m in pbw_basis(&tail_weights, w) {
            variables.push(format!("sigma{w}[{}]", m.label(&names)));
            parity.push(parity_of(0, 0, m.tail));
            origin.push((i, i, m.tail));
            st.add_term(m, &Poly::var(variables.len() as Var));
        }
        composites.insert((i, i, -1), st);
    }
    let null_unknowns = variables.len() - bracket_unknowns;
    Ansatz {
        table: BracketTable { c: case.c.clone(), tail_weights, names, products, composites },
        variables,
        bracket_unknowns,
        null_unknowns,
        normalizations,
        parity,
        origin,
    }
}

impl Ansatz {
    /// The solved table over ℚ after `W^j ↦ W^j/√r_j` for every adjoined
    /// `√r_j`. This is an isomorphism over the extension, so its residuals
    /// vanish exactly when those of the normalized solution do.
    pub fn rational_table(&self, report: &SolveReport) -> Result<BracketTable> {
        let mut values = HashMap::new();
        for (v, val) in report.values.iter().enumerate() {
            let Some(y) = &val.coeff else {
                return Err(Error::Precondition(format!("{} is not determined", val.name)));
            };
            let (a, b, t) = self.origin[v];
            let mut x = y.clone();
            for surd in &report.surds {
                let j = surd.primary;
                let e =
                    i64::from(self.parity[v].contains(&j)) + i64::from(t == j) - i64::from(a == j) - i64::from(b == j);
                debug_assert!(e % 2 == 0);
                match e / 2 {
                    1 => x *= &surd.radicand,
                    -1 => x /= &surd.radicand,
                    _ => {}
                }
            }
            values.insert(v as Var + 1, x);
        }
        instantiate(&self.table, &values)
    }
}

/// The ansatz together with every Jacobi and skew-symmetry equation of the
/// case, generated in parallel over triples.
pub fn build_system(case: &OpeCase) -> Result<(Ansatz, ConstraintSystem)> {
    if case.triples.is_empty() {
        return Err(Error::Unsupported(format!("no constraint triples are declared for {}", case.id.name())));
    }
    let ansatz = build_ansatz(case);
    let table = &ansatz.table;
    let jobs: Vec<Option<(Field, Field, Field)>> =
        case.triples.iter().copied().map(Some).chain(table.primaries().map(|_| None)).collect();
    let batches: Vec<Result<Vec<Equation>>> = jobs
        .par_iter()
        .enumerate()
        .map(|(k, job)| {
            let engine = ModeEngine::new(table);
            match job {
                Some(t) => jacobi_constraints(&engine, *t, case.bound),
                None => skew_constraints(&engine, (k - case.triples.len() + 1) as u8, case.bound),
            }
        })
        .collect();
    let mut system = ConstraintSystem {
        variables: ansatz.variables.clone(),
        equations: Vec::new(),
        normalizations: ansatz.normalizations.clone(),
        parity: ansatz.parity.clone(),
    };
    for b in batches {
        system.extend(b?);
    }
    Ok((ansatz, system))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_counts() {
        let a = build_ansatz(&OpeCase::get(OpeCaseId::G2C1420));
        assert_eq!(a.bracket_unknowns, 75);
        assert_eq!(a.null_unknowns, 0);
        let b = build_ansatz(&OpeCase::get(OpeCaseId::B3C135));
        assert_eq!(b.null_unknowns, 14);
        assert_eq!(b.bracket_unknowns, 24 + 56 + 120);
        assert_eq!("b3-c135-8".parse::<OpeCaseId>().unwrap(), OpeCaseId::B3C135);
    }
}
