//! Exact solver for degree-≤2 systems: linear elimination over the
//! linearized system to a fixpoint, normalizations when elimination stalls,
//! and a bounded case split on univariate quadratics.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::modes::{BracketTable, ModeEngine};
use super::poly::{Poly, Var};
use super::{jacobi_constraints, skew_constraints, ConstraintSystem};
use crate::error::{Error, Result};

/// Case splits allowed before giving up.
pub const MAX_BRANCHES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    /// One solution after normalization, modulo the primary sign flips.
    Unique,
    /// Several inequivalent solutions survive.
    Multiple(usize),
    /// Some unknowns are left unconstrained.
    Underdetermined(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub unknowns: usize,
    pub equations: usize,
    /// Distinct equations after canonicalization.
    pub distinct_equations: usize,
    /// Normalizations that were needed plus unknowns left free.
    pub family_dimension: usize,
    /// Names of the normalized unknowns, in the order applied.
    pub normalized: Vec<String>,
    pub branches: usize,
    pub status: SolveStatus,
    /// Representative solution.
    pub values: Vec<OpeValue>,
    /// Square roots adjoined to reach the normalization.
    pub surds: Vec<Surd>,
    /// Every input equation vanishes on `values`.
    pub residual_zero: bool,
}

/// `√radicand` adjoined for the sign-odd unknowns of one primary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surd {
    pub primary: u8,
    #[serde(with = "crate::report::exact")]
    pub radicand: BigRational,
}

/// The exact value `coeff·√radicand`; `coeff` is `None` for a free unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpeValue {
    pub name: String,
    #[serde(with = "crate::report::exact::opt")]
    pub coeff: Option<BigRational>,
    #[serde(with = "crate::report::exact")]
    pub radicand: BigRational,
}

impl fmt::Display for OpeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.coeff {
            None => write!(f, "free"),
            Some(c) if self.radicand.is_one() || c.is_zero() => write!(f, "{c}"),
            Some(c) => write!(f, "{c}*sqrt({})", self.radicand),
        }
    }
}

impl SolveReport {
    /// Rational parts, keyed by unknown.
    pub fn value_map(&self) -> HashMap<Var, BigRational> {
        self.values.iter().enumerate().filter_map(|(i, v)| v.coeff.clone().map(|c| (i as Var + 1, c))).collect()
    }
}

/// Linearized column order: quadratic monomials, then unknowns, then the
/// constant. A row whose leading column is an unknown is a linear relation.
type Col = (u8, Var, Var);

fn col_of(k: (Var, Var)) -> Col {
    match k {
        (0, 0) => (2, 0, 0),
        (0, v) => (1, v, 0),
        (a, b) => (0, a, b),
    }
}

fn key_of(c: Col) -> (Var, Var) {
    match c {
        (2, _, _) => (0, 0),
        (1, v, _) => (0, v),
        (_, a, b) => (a, b),
    }
}

type Row = BTreeMap<Col, BigRational>;

fn row_of(p: &Poly) -> Row {
    p.terms().map(|(&k, c)| (col_of(k), c.clone())).collect()
}

fn sub_scaled(row: &mut Row, pivot: &Row, k: &BigRational) {
    for (c, v) in pivot {
        let e = row.entry(*c).or_insert_with(BigRational::zero);
        *e -= v * k;
        if e.is_zero() {
            row.remove(c);
        }
    }
}

fn poly_of(row: Row) -> Poly {
    let mut p = Poly::zero();
    for (c, v) in row {
        let mono = match key_of(c) {
            (0, 0) => Poly::one(),
            (0, x) => Poly::var(x),
            (a, b) => Poly::var(a).mul(&Poly::var(b)).expect("degree 2"),
        };
        p.add_scaled(&mono, &v);
    }
    p
}

/// Reduced row echelon basis of the span of `eqs` in the linearized
/// column order. Rows led by an unknown are linear relations.
fn reduced_basis(eqs: &[Poly]) -> Result<Vec<(Col, Poly)>> {
    let mut pivots: BTreeMap<Col, Row> = BTreeMap::new();
    for p in eqs {
        let mut row = row_of(p);
        while let Some((&lead, k)) = row.iter().next() {
            let Some(piv) = pivots.get(&lead) else { break };
            let k = k.clone();
            sub_scaled(&mut row, piv, &k);
        }
        let Some((&lead, k)) = row.iter().next() else { continue };
        if lead.0 == 2 {
            return Err(Error::Inconsistent(format!("{p} = 0 reduces to a nonzero constant")));
        }
        let inv = k.recip();
        row.values_mut().for_each(|v| *v *= &inv);
        pivots.insert(lead, row);
    }
    // back substitution, last pivot first
    let leads: Vec<Col> = pivots.keys().copied().collect();
    for (i, lead) in leads.iter().enumerate().rev() {
        let piv = pivots[lead].clone();
        for other in &leads[..i] {
            let row = pivots.get_mut(other).unwrap();
            if let Some(k) = row.get(lead).cloned() {
                sub_scaled(row, &piv, &k);
            }
        }
    }
    Ok(pivots.into_iter().map(|(lead, row)| (lead, poly_of(row))).collect())
}

fn canonical(eqs: impl IntoIterator<Item = Poly>) -> Vec<Poly> {
    let set: BTreeSet<Poly> = eqs.into_iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
    set.into_iter().collect()
}

#[derive(Clone)]
struct Branch {
    eqs: Vec<Poly>,
    /// Eliminated unknown ↦ affine expression in the free ones.
    subs: HashMap<Var, Poly>,
    normalized: Vec<Var>,
    /// Unknowns assumed nonzero on this branch.
    nonzero: BTreeSet<Var>,
}

impl Branch {
    /// Records `x = e` for every entry and rewrites everything else.
    fn bind_all(&mut self, new: HashMap<Var, Poly>) {
        for v in self.subs.values_mut() {
            *v = v.substitute(&new);
        }
        self.eqs = canonical(self.eqs.iter().map(|p| p.substitute(&new)));
        self.subs.extend(new);
    }

    fn bind(&mut self, x: Var, e: Poly) {
        self.bind_all([(x, e)].into());
    }

    fn eliminate(&mut self) -> Result<()> {
        loop {
            if let Some(p) = self.eqs.iter().find(|p| p.is_constant()) {
                return Err(Error::Inconsistent(format!("{p} = 0")));
            }
            self.cancel_nonzero();
            let basis = reduced_basis(&self.eqs)?;
            let rels: Vec<Poly> = basis.iter().filter(|(lead, _)| lead.0 == 1).map(|(_, p)| p.clone()).collect();
            if rels.is_empty() {
                self.eqs = canonical(basis.into_iter().map(|(_, p)| p));
                return Ok(());
            }
            // reduced echelon form: pivots never mention each other
            let mut new: HashMap<Var, Poly> = HashMap::new();
            for r in rels.iter().rev() {
                let r = r.substitute(&new);
                let Some(&x) = r.vars().iter().next() else {
                    if r.is_zero() {
                        continue;
                    }
                    return Err(Error::Inconsistent(format!("{r} = 0")));
                };
                let a = r.linear_coeff(x);
                let mut e = r.clone();
                e.add_scaled(&Poly::var(x), &-&a);
                new.insert(x, e.scaled(&-a.recip()));
            }
            self.bind_all(new);
        }
    }

    /// Divides out every factor known to be nonzero.
    fn cancel_nonzero(&mut self) {
        if self.nonzero.is_empty() {
            return;
        }
        let mut changed = false;
        let eqs: Vec<Poly> = self
            .eqs
            .iter()
            .map(|p| {
                let mut p = p.clone();
                while let Some(q) = self.nonzero.iter().find_map(|&x| divide(&p, x)) {
                    p = q;
                    changed = true;
                }
                p
            })
            .collect();
        if changed {
            self.eqs = canonical(eqs);
        }
    }

    fn expr(&self, v: Var) -> Poly {
        self.subs.get(&v).cloned().unwrap_or_else(|| Poly::var(v))
    }
}

/// `p / x` when every term of `p` contains the unknown `x`.
fn divide(p: &Poly, x: Var) -> Option<Poly> {
    let mut q = Poly::zero();
    for (&(a, b), c) in p.terms() {
        let rest = match (a, b) {
            (0, v) if v == x => Poly::one(),
            (u, v) if u == x && u > 0 => Poly::var(v),
            (u, v) if v == x && u > 0 => Poly::var(u),
            _ => return None,
        };
        q.add_scaled(&rest, c);
    }
    (!p.is_zero()).then_some(q)
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// Rational roots of `p`, which must involve the single unknown `x`.
fn univariate_roots(p: &Poly, x: Var) -> Result<Vec<BigRational>> {
    let a = p.terms().find(|(&k, _)| k == (x, x)).map(|(_, c)| c.clone()).unwrap_or_default();
    let b = p.linear_coeff(x);
    let c = p.constant_term();
    if a.is_zero() {
        return Ok(vec![-c / b]);
    }
    let disc = &b * &b - BigRational::from_integer(BigInt::from(4)) * &a * &c;
    let Some(s) = rational_sqrt(&disc) else {
        return Err(Error::UnresolvedBranch(format!("{p} = 0 has discriminant {disc}, not a rational square")));
    };
    let two_a = &a * BigRational::from_integer(BigInt::from(2));
    let mut roots = vec![(-&b - &s) / &two_a, (-&b + &s) / &two_a];
    roots.dedup();
    Ok(roots)
}

struct Search<'a> {
    system: &'a ConstraintSystem,
    branches: usize,
    finished: Vec<Branch>,
    surds: &'a [Surd],
    /// Set when a pure square `x² = r` with irrational root is met on a
    /// sign-odd unknown; the caller adjoins `√r` and starts over.
    request: Option<Surd>,
}

impl Search<'_> {
    fn run(&mut self, mut b: Branch) -> Result<()> {
        loop {
            match b.eliminate() {
                Ok(()) => {}
                // a dead branch is only fatal if it is the only one
                Err(e @ Error::Inconsistent(_)) if self.branches > 1 => {
                    let _ = e;
                    return Ok(());
                }
                Err(e) => return Err(e),
            }
            // normalizations come first so that the family dimension
            // counts exactly the ones that were needed
            let next = self.system.normalizations.iter().find(|(v, val)| {
                let e = b.expr(*v);
                !e.is_constant() && !b.normalized.contains(v) && !val.is_zero()
            });
            if let Some((v, val)) = next {
                b.normalized.push(*v);
                let mut e = b.expr(*v);
                e.add_scaled(&Poly::one(), &-val);
                b.eqs = canonical(b.eqs.iter().cloned().chain([e]));
                continue;
            }
            if b.eqs.is_empty() {
                self.finished.push(b);
                return Ok(());
            }
            let Some((p, x)) = b.eqs.iter().find_map(|p| {
                let vs = p.vars();
                (vs.len() == 1).then(|| (p.clone(), *vs.iter().next().unwrap()))
            }) else {
                if let Some(x) = common_factor(&b.eqs, &b.nonzero) {
                    // x = 0, or cancel x everywhere
                    self.split()?;
                    let mut zero = b.clone();
                    zero.bind(x, Poly::zero());
                    self.run(zero)?;
                    b.nonzero.insert(x);
                    self.run(b)?;
                    return Ok(());
                }
                return Err(Error::UnresolvedBranch(format!(
                    "{} quadratic equations left, none univariate; first: {}",
                    b.eqs.len(),
                    b.eqs[0]
                )));
            };
            if let Some(surd) = self.surd_for(&p, x) {
                self.request = Some(surd);
                return Err(Error::UnresolvedBranch(format!("{p} = 0 needs a square root")));
            }
            let roots = univariate_roots(&p, x)?;
            if roots.len() == 1 {
                b.bind(x, Poly::constant(roots[0].clone()));
                continue;
            }
            self.split()?;
            for r in roots {
                let mut child = b.clone();
                child.bind(x, Poly::constant(r));
                self.run(child)?;
            }
            return Ok(());
        }
    }
}

/// The unknown dividing the most equations, if it divides any.
fn common_factor(eqs: &[Poly], nonzero: &BTreeSet<Var>) -> Option<Var> {
    let mut count: BTreeMap<Var, usize> = BTreeMap::new();
    for p in eqs {
        for x in p.vars() {
            if !nonzero.contains(&x) && divide(p, x).is_some() {
                *count.entry(x).or_default() += 1;
            }
        }
    }
    // ties go to the smallest unknown
    count.into_iter().max_by_key(|&(x, n)| (n, std::cmp::Reverse(x))).map(|(x, _)| x)
}

impl Search<'_> {
    fn split(&mut self) -> Result<()> {
        self.branches += 1;
        if self.branches > MAX_BRANCHES {
            return Err(Error::UnresolvedBranch(format!("more than {MAX_BRANCHES} branches")));
        }
        Ok(())
    }

    fn surd_for(&self, p: &Poly, x: Var) -> Option<Surd> {
        let a = p.terms().find(|(&k, _)| k == (x, x)).map(|(_, c)| c.clone())?;
        if !p.linear_coeff(x).is_zero() {
            return None;
        }
        let r = -p.constant_term() / a;
        let primary = *self.system.parity.get(x as usize - 1)?.first()?;
        if rational_sqrt(&r).is_some() || self.surds.iter().any(|s| s.primary == primary) {
            return None;
        }
        Some(Surd { primary, radicand: r })
    }
}

/// Rewrites a sign-homogeneous equation under `x_v = √r·y_v` for every
/// unknown odd in `surd.primary`, cancelling the common power of `√r`.
fn adjoin(p: &Poly, surd: &Surd, parity: &[Vec<u8>]) -> Result<Poly> {
    let odd = |v: Var| v > 0 && parity[v as usize - 1].contains(&surd.primary);
    let mut out = Poly::zero();
    let mut kind = None;
    for (&(a, b), c) in p.terms() {
        let k = usize::from(odd(a)) + usize::from(odd(b));
        if *kind.get_or_insert(k % 2) != k % 2 {
            return Err(Error::Precondition(format!("equation {p} mixes sign parities")));
        }
        let mono = match (a, b) {
            (0, 0) => Poly::one(),
            (0, v) => Poly::var(v),
            (a, b) => Poly::var(a).mul(&Poly::var(b))?,
        };
        out.add_scaled(&mono, &if k == 2 { c * &surd.radicand } else { c.clone() });
    }
    Ok(out)
}

/// Smallest image of `values` under the sign symmetries.
fn sign_canonical(values: &[Option<BigRational>], parity: &[Vec<u8>]) -> Vec<Option<BigRational>> {
    let k = parity.iter().flatten().copied().max().unwrap_or(0);
    let mut best: Option<Vec<Option<BigRational>>> = None;
    for mask in 0u32..(1 << k) {
        let flip = |i: u8| mask >> (i - 1) & 1 == 1;
        let img: Vec<Option<BigRational>> = values
            .iter()
            .enumerate()
            .map(|(v, x)| {
                let odd = parity.get(v).is_some_and(|p| p.iter().filter(|&&i| flip(i)).count() % 2 == 1);
                x.as_ref().map(|x| if odd { -x } else { x.clone() })
            })
            .collect();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
    }
    best.unwrap_or_default()
}

pub fn solve_constraints(system: &ConstraintSystem) -> Result<SolveReport> {
    let eqs = canonical(system.equations.iter().map(|e| e.poly.clone()));
    let distinct = eqs.len();
    // every column has a definite sign parity, so the reduced rows stay
    // parity-homogeneous and survive `adjoin`
    let mut eqs = canonical(reduced_basis(&eqs)?.into_iter().map(|(_, p)| p));
    let mut surds: Vec<Surd> = Vec::new();
    let search = loop {
        let mut search = Search { system, branches: 1, finished: Vec::new(), surds: &surds, request: None };
        match search.run(Branch {
            eqs: eqs.clone(),
            subs: HashMap::new(),
            normalized: Vec::new(),
            nonzero: BTreeSet::new(),
        }) {
            Ok(()) => break (search.branches, search.finished),
            Err(e) => {
                let Some(surd) = search.request.take() else { return Err(e) };
                eqs = canonical(eqs.iter().map(|p| adjoin(p, &surd, &system.parity)).collect::<Result<Vec<_>>>()?);
                surds.push(surd);
            }
        }
    };
    let (branches, finished) = search;
    let search = Search { system, branches, finished, surds: &surds, request: None };
    if search.finished.is_empty() {
        return Err(Error::Inconsistent("every branch is inconsistent".into()));
    }
    let n = system.variables.len() as Var;
    let mut sols: BTreeMap<Vec<Option<BigRational>>, &Branch> = BTreeMap::new();
    for b in &search.finished {
        let values: Vec<Option<BigRational>> = (1..=n)
            .map(|v| {
                let e = b.expr(v);
                e.is_constant().then(|| e.constant_term())
            })
            .collect();
        sols.entry(sign_canonical(&values, &system.parity)).or_insert(b);
    }
    let (values, branch) = sols.iter().next().map(|(v, b)| (v.clone(), *b)).unwrap();
    let free: Vec<String> =
        values.iter().enumerate().filter(|(_, x)| x.is_none()).map(|(i, _)| system.variables[i].clone()).collect();
    let status = if !free.is_empty() {
        SolveStatus::Underdetermined(free.clone())
    } else if sols.len() > 1 {
        SolveStatus::Multiple(sols.len())
    } else {
        SolveStatus::Unique
    };
    let map: HashMap<Var, BigRational> =
        values.iter().enumerate().filter_map(|(i, x)| x.clone().map(|x| (i as Var + 1, x))).collect();
    let mut residual_zero = free.is_empty();
    for e in &system.equations {
        let mut p = e.poly.clone();
        for surd in &surds {
            p = adjoin(&p, surd, &system.parity)?;
        }
        residual_zero &= p.eval(&map).is_some_and(|r| r.is_zero());
    }
    let radicand = |v: usize| {
        surds
            .iter()
            .filter(|s| system.parity[v].contains(&s.primary))
            .fold(BigRational::one(), |acc, s| acc * &s.radicand)
    };
    Ok(SolveReport {
        unknowns: system.variables.len(),
        equations: system.equations.len(),
        distinct_equations: distinct,
        family_dimension: branch.normalized.len() + free.len(),
        normalized: branch.normalized.iter().map(|&v| system.variables[v as usize - 1].clone()).collect(),
        branches: search.branches,
        status,
        values: values
            .into_iter()
            .enumerate()
            .map(|(v, coeff)| OpeValue { name: system.variables[v].clone(), coeff, radicand: radicand(v) })
            .collect(),
        surds: surds.clone(),
        residual_zero,
    })
}

/// Substitutes solved values into a table with unknown coefficients.
pub fn instantiate(table: &BracketTable, values: &HashMap<Var, BigRational>) -> Result<BracketTable> {
    let fix = |s: &super::PbwState| -> Result<super::PbwState> {
        let mut out = super::PbwState::zero();
        for (m, p) in &s.terms {
            let x = p.eval(values).ok_or_else(|| Error::Precondition(format!("coefficient {p} is not determined")))?;
            out.add_term(m.clone(), &Poly::constant(x));
        }
        Ok(out)
    };
    let mut products = HashMap::new();
    for (k, s) in &table.products {
        products.insert(*k, fix(s)?);
    }
    let mut composites = HashMap::new();
    for (k, s) in &table.composites {
        composites.insert(*k, fix(s)?);
    }
    Ok(BracketTable { products, composites, ..table.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub triples: usize,
    pub identities: usize,
}

/// Re-expands every Jacobi identity among all generator triples and every
/// skew-symmetry relation up to output weight `bound`, requiring exact
/// zero.
pub fn verify_ope_table(table: &BracketTable, bound: i64) -> Result<VerifyReport> {
    if table.products.values().chain(table.composites.values()).any(|s| !super::modes::constant_state(s)) {
        return Err(Error::Precondition("table still has unknown coefficients".into()));
    }
    let fields = table.fields();
    let mut triples = Vec::new();
    for &a in &fields {
        for &b in &fields {
            for &c in &fields {
                triples.push((a, b, c));
            }
        }
    }
    let engine = ModeEngine::new(table);
    let mut identities = 0;
    let fail = |e: &super::Equation| Error::NonzeroResidual(format!("{}: residual {}", e.provenance, e.poly));
    for &t in &triples {
        let eqs = jacobi_constraints(&engine, t, bound)?;
        if let Some(e) = eqs.first() {
            return Err(fail(e));
        }
        identities += 1;
    }
    for i in table.primaries() {
        if let Some(e) = skew_constraints(&engine, i, bound)?.first() {
            return Err(fail(e));
        }
        identities += 1;
    }
    Ok(VerifyReport { triples: triples.len(), identities })
}
