//! Finite root systems, their signed Weyl groups, and the lattices used in
//! theta sums.
//!
//! Everything is expressed in simple-root coordinates with the Gram matrix
//! normalized so that long roots have squared norm 2. The E7 and E8 systems
//! additionally carry their simple roots in the standard 8-dimensional
//! ambient space, where their root lattices are realized.

mod cache;
mod lattice;

pub use cache::{cache_dir, CACHE_ENV, CACHE_FORMAT_VERSION};
pub use lattice::{LatticeModel, Membership};

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::qseries::{rat, ratio};

/// Default bound on the size of an enumerated Weyl group.
pub const DEFAULT_GROUP_BOUND: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    A1,
    G2,
    B3,
    F4,
    E7,
    E8,
}

impl Label {
    pub const ALL: [Label; 6] = [Label::A1, Label::G2, Label::B3, Label::F4, Label::E7, Label::E8];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::A1 => "A1",
            Label::G2 => "G2",
            Label::B3 => "B3",
            Label::F4 => "F4",
            Label::E7 => "E7",
            Label::E8 => "E8",
        }
    }

    /// Dimension of the simple Lie algebra.
    pub fn dimension(self) -> usize {
        match self {
            Label::A1 => 3,
            Label::G2 => 14,
            Label::B3 => 21,
            Label::F4 => 52,
            Label::E7 => 133,
            Label::E8 => 248,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Label::ALL
            .iter()
            .copied()
            .find(|l| l.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub matrix: IntMatrix,
    pub sign: i8,
}

impl WeylElement {
    pub fn apply(&self, v: &[BigRational]) -> Vector {
        self.matrix.iter().map(|row| row.iter().zip(v).map(|(&m, x)| x * rat(m)).sum()).collect()
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement { matrix: int_mat_mul(&self.matrix, &other.matrix), sign: self.sign * other.sign }
    }
}

pub(crate) fn int_mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter().map(|row| (0..n).map(|j| row.iter().zip(b).map(|(&x, brow)| x * brow[j]).sum()).collect()).collect()
}

pub(crate) fn int_det(m: &IntMatrix) -> i64 {
    let q: Matrix = m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let d = linalg::determinant(&q);
    assert!(d.is_integer());
    i64::try_from(d.to_integer()).expect("determinant fits in i64")
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub label: Label,
    pub rank: usize,
    pub gram: Matrix,
    pub weyl_vector: Vector,
    pub dual_coxeter: i64,
    pub comarks: Vec<i64>,
    pub generators: Vec<IntMatrix>,
    /// Simple roots as rows in the ambient Euclidean space (E7, E8 only).
    pub ambient_simple_roots: Option<Matrix>,
}

fn g2() -> (Matrix, Vector, Vec<IntMatrix>) {
    let gram = vec![vec![ratio(2, 3), rat(-1)], vec![rat(-1), rat(2)]];
    let rho = vec![rat(5), rat(3)];
    let gens = vec![vec![vec![-1, 3], vec![0, 1]], vec![vec![1, 0], vec![1, -1]]];
    (gram, rho, gens)
}

fn b3() -> (Matrix, Vector, Vec<IntMatrix>) {
    let gram = linalg::from_ints(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 1]]);
    let rho = vec![ratio(5, 2), rat(4), ratio(9, 2)];
    let gens = vec![
        vec![vec![-1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]],
        vec![vec![1, 0, 0], vec![1, -1, 1], vec![0, 0, 1]],
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 2, -1]],
    ];
    (gram, rho, gens)
}

fn f4() -> (Matrix, Vector, Vec<IntMatrix>) {
    let gram = vec![
        vec![rat(2), rat(-1), rat(0), rat(0)],
        vec![rat(-1), rat(2), rat(-1), rat(0)],
        vec![rat(0), rat(-1), rat(1), ratio(-1, 2)],
        vec![rat(0), rat(0), ratio(-1, 2), rat(1)],
    ];
    let rho = vec![rat(8), rat(15), rat(21), rat(11)];
    let gens = vec![
        vec![vec![-1, 1, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
        vec![vec![1, 0, 0, 0], vec![1, -1, 1, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
        vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 2, -1, 1], vec![0, 0, 0, 1]],
        vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 1, -1]],
    ];
    (gram, rho, gens)
}

fn half(v: &[i64]) -> Vector {
    v.iter().map(|&x| ratio(x, 2)).collect()
}

/// E8 simple roots (rows), doubled coordinates. The trivalent node is row 5.
pub(crate) fn e8_simple_roots() -> Matrix {
    [
        [2, -2, 0, 0, 0, 0, 0, 0],
        [0, 2, -2, 0, 0, 0, 0, 0],
        [0, 0, 2, -2, 0, 0, 0, 0],
        [0, 0, 0, 2, -2, 0, 0, 0],
        [0, 0, 0, 0, 2, -2, 0, 0],
        [0, 0, 0, 0, 0, 2, -2, 0],
        [0, 0, 0, 0, 0, 2, 2, 0],
        [-1, -1, -1, -1, -1, -1, -1, -1],
    ]
    .iter()
    .map(|r| half(r))
    .collect()
}

/// E7 simple roots inside the sum-zero hyperplane of the E8 lattice, in
/// Bourbaki order (α2 is the short arm, α4 the trivalent node).
pub(crate) fn e7_simple_roots() -> Matrix {
    [
        [0, -2, 2, 0, 0, 0, 0, 0],
        [-1, -1, -1, -1, 1, 1, 1, 1],
        [0, 0, -2, 2, 0, 0, 0, 0],
        [1, 1, 1, -1, 1, -1, -1, -1],
        [0, 0, 0, 0, -2, 2, 0, 0],
        [0, 0, 0, 0, 0, -2, 2, 0],
        [0, 0, 0, 0, 0, 0, -2, 2],
    ]
    .iter()
    .map(|r| half(r))
    .collect()
}

fn gram_from_rows(rows: &Matrix) -> Matrix {
    rows.iter().map(|a| rows.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum()).collect()).collect()
}

/// Reflection `r_i` in simple-root coordinates, acting on column vectors:
/// `r_i(α_j) = α_j − ⟨α_j, α_i^∨⟩ α_i`.
pub fn reflection_from_gram(gram: &Matrix, i: usize) -> IntMatrix {
    let n = gram.len();
    let mut m: IntMatrix = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
    for j in 0..n {
        let pairing = rat(2) * &gram[i][j] / &gram[i][i];
        assert!(pairing.is_integer(), "Cartan entries are integral");
        m[i][j] -= i64::try_from(pairing.to_integer()).unwrap();
    }
    m
}

/// Positive roots in simple-root coordinates, generated by reflecting
/// upward from the simple roots.
pub fn positive_roots(gram: &Matrix) -> Vec<Vec<i64>> {
    let n = gram.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    let refl: Vec<IntMatrix> = (0..n).map(|i| reflection_from_gram(gram, i)).collect();
    while let Some(beta) = queue.pop_front() {
        for r in &refl {
            let image: Vec<i64> = r.iter().map(|row| row.iter().zip(&beta).map(|(a, b)| a * b).sum()).collect();
            if image.iter().all(|&c| c >= 0) && image.iter().any(|&c| c > 0) && seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    roots
}

/// Comarks `a_i^∨` from the highest root θ = Σ k_i α_i:
/// `θ^∨ = Σ k_i (|α_i|²/2) α_i^∨`.
fn comarks(gram: &Matrix) -> Vec<i64> {
    let roots = positive_roots(gram);
    let theta = roots.last().expect("nonempty root system");
    theta
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let c = rat(k) * &gram[i][i] / rat(2);
            i64::try_from(c.to_integer()).unwrap()
        })
        .collect()
}

/// Weyl vector as the half sum of positive roots, in simple-root coordinates.
pub fn half_sum_positive_roots(gram: &Matrix) -> Vector {
    let n = gram.len();
    let mut acc = vec![BigRational::zero(); n];
    for r in positive_roots(gram) {
        for (a, &c) in acc.iter_mut().zip(&r) {
            *a += rat(c);
        }
    }
    acc.into_iter().map(|x| x / rat(2)).collect()
}

/// Registry lookup; the returned data is validated against its invariants.
pub fn build_root_system(label: Label) -> Result<RootSystem> {
    let (gram, rho, generators, ambient, h_dual) = match label {
        Label::A1 => (linalg::from_ints(&[&[2]]), vec![ratio(1, 2)], vec![vec![vec![-1]]], None, 2),
        Label::G2 => {
            let (g, r, gens) = g2();
            (g, r, gens, None, 4)
        }
        Label::B3 => {
            let (g, r, gens) = b3();
            (g, r, gens, None, 5)
        }
        Label::F4 => {
            let (g, r, gens) = f4();
            (g, r, gens, None, 9)
        }
        Label::E7 | Label::E8 => {
            let rows = if label == Label::E7 { e7_simple_roots() } else { e8_simple_roots() };
            let gram = gram_from_rows(&rows);
            let rho = half_sum_positive_roots(&gram);
            let gens = (0..gram.len()).map(|i| reflection_from_gram(&gram, i)).collect();
            (gram, rho, gens, Some(rows), if label == Label::E7 { 18 } else { 30 })
        }
    };
    let comarks = comarks(&gram);
    let rs = RootSystem {
        label,
        rank: gram.len(),
        gram,
        weyl_vector: rho,
        dual_coxeter: h_dual,
        comarks,
        generators,
        ambient_simple_roots: ambient,
    };
    rs.validate()?;
    Ok(rs)
}

impl RootSystem {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvariantViolation(format!("{}: {}", self.label, m)));
        if !linalg::is_symmetric(&self.gram) || !linalg::is_positive_definite(&self.gram) {
            return bad("Gram matrix is not symmetric positive definite".into());
        }
        let max_norm = self.gram.iter().enumerate().map(|(i, r)| r[i].clone()).max().unwrap();
        if max_norm != rat(2) {
            return bad("long roots must have squared norm 2".into());
        }
        for (i, g) in self.generators.iter().enumerate() {
            let sq = int_mat_mul(g, g);
            let id: IntMatrix = (0..self.rank).map(|r| (0..self.rank).map(|c| i64::from(r == c)).collect()).collect();
            if sq != id || int_det(g) != -1 {
                return bad(format!("generator r{} is not a reflection", i + 1));
            }
            if *g != reflection_from_gram(&self.gram, i) {
                return bad(format!("generator r{} disagrees with the Gram matrix", i + 1));
            }
        }
        let m_rho = linalg::mat_vec(&self.gram, &self.weyl_vector);
        for (i, v) in m_rho.iter().enumerate() {
            if *v != &self.gram[i][i] / rat(2) {
                return bad(format!("(ρ̄, α{}^∨) ≠ 1", i + 1));
            }
        }
        if 1 + self.comarks.iter().sum::<i64>() != self.dual_coxeter {
            return bad("dual Coxeter number differs from 1 + Σ comarks".into());
        }
        Ok(())
    }

    /// Inner product of two vectors in simple-root coordinates.
    pub fn inner(&self, a: &[BigRational], b: &[BigRational]) -> BigRational {
        linalg::bilinear(&self.gram, a, b)
    }

    pub fn norm2(&self, a: &[BigRational]) -> BigRational {
        self.inner(a, a)
    }

    /// Lacety: ratio of long to short squared root lengths.
    pub fn lacety(&self) -> i64 {
        let min = self.gram.iter().enumerate().map(|(i, r)| r[i].clone()).min().unwrap();
        let l = rat(2) / min;
        i64::try_from(l.to_integer()).unwrap()
    }

    /// Integer multiples `k_i` with `Q^∨ = ⊕ ℤ·k_i α_i`, i.e. `2/|α_i|²`.
    pub fn coroot_scales(&self) -> Vec<i64> {
        (0..self.rank)
            .map(|i| {
                let k = rat(2) / &self.gram[i][i];
                i64::try_from(k.to_integer()).unwrap()
            })
            .collect()
    }

    /// `x*` with `M·x* = (1,…,1)`, so the coordinate sum of β equals (β, x*).
    pub fn coordinate_sum_dual(&self) -> Result<Vector> {
        linalg::solve(&self.gram, &vec![BigRational::one(); self.rank])
    }

    pub fn coroot_lattice(&self) -> LatticeModel {
        LatticeModel::coroot(self)
    }
}

fn group_registry() -> &'static Mutex<HashMap<Label, Arc<Vec<WeylElement>>>> {
    static REG: OnceLock<Mutex<HashMap<Label, Arc<Vec<WeylElement>>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Closure of the generators under multiplication, breadth first from the
/// identity. Signs are tracked as the parity of word length.
pub fn close_group(generators: &[IntMatrix], bound: usize) -> Result<Vec<WeylElement>> {
    let n = generators.first().map_or(0, |g| g.len());
    let id: IntMatrix = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
    let mut seen: HashMap<IntMatrix, i8> = HashMap::new();
    let mut order: Vec<WeylElement> = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone(), 1);
    order.push(WeylElement { matrix: id.clone(), sign: 1 });
    queue.push_back((id, 1i8));
    while let Some((m, s)) = queue.pop_front() {
        for g in generators {
            let p = int_mat_mul(&m, g);
            if !seen.contains_key(&p) {
                if seen.len() >= bound {
                    return Err(Error::GroupTooLarge(bound));
                }
                seen.insert(p.clone(), -s);
                order.push(WeylElement { matrix: p.clone(), sign: -s });
                queue.push_back((p, -s));
            }
        }
    }
    Ok(order)
}

/// The finite Weyl group, memoized in-process and on disk.
pub fn weyl_group(rs: &RootSystem) -> Result<Arc<Vec<WeylElement>>> {
    weyl_group_bounded(rs, DEFAULT_GROUP_BOUND)
}

pub fn weyl_group_bounded(rs: &RootSystem, bound: usize) -> Result<Arc<Vec<WeylElement>>> {
    if let Some(g) = group_registry().lock().unwrap().get(&rs.label) {
        return Ok(g.clone());
    }
    let group = match cache::load(rs) {
        Some(g) => g,
        None => {
            let g = close_group(&rs.generators, bound)?;
            // a cache failure is not fatal
            let _ = cache::store(rs, &g);
            g
        }
    };
    let group = Arc::new(group);
    group_registry().lock().unwrap().insert(rs.label, group.clone());
    Ok(group)
}

/// Signed orbit `{(w·weight, ε(w))}`, deduplicated by image.
pub fn weyl_orbit_signed(rs: &RootSystem, weight: &[BigRational]) -> Result<Vec<(Vector, i8)>> {
    let group = weyl_group(rs)?;
    let mut seen: HashSet<Vector> = HashSet::new();
    let mut out = Vec::new();
    for w in group.iter() {
        let img = w.apply(weight);
        if seen.insert(img.clone()) {
            out.push((img, w.sign));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords(v: &[i64]) -> Vector {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn registry_values() {
        let g2 = build_root_system(Label::G2).unwrap();
        assert_eq!(g2.weyl_vector, coords(&[5, 3]));
        assert_eq!(g2.gram[0][0], ratio(2, 3));
        let b3 = build_root_system(Label::B3).unwrap();
        assert_eq!(b3.weyl_vector, vec![ratio(5, 2), rat(4), ratio(9, 2)]);
        let f4 = build_root_system(Label::F4).unwrap();
        assert_eq!(f4.weyl_vector, coords(&[8, 15, 21, 11]));
        for l in Label::ALL {
            let rs = build_root_system(l).unwrap();
            assert_eq!(rs.weyl_vector, half_sum_positive_roots(&rs.gram), "{}", l);
            let n_pos = positive_roots(&rs.gram).len();
            assert_eq!(rs.rank + 2 * n_pos, l.dimension(), "{}", l);
        }
        assert_eq!("e8".parse::<Label>().unwrap(), Label::E8);
        assert!(matches!("D4".parse::<Label>(), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn dual_coxeter_numbers() {
        let expect = [(Label::A1, 2), (Label::G2, 4), (Label::B3, 5), (Label::F4, 9), (Label::E7, 18), (Label::E8, 30)];
        for (l, h) in expect {
            assert_eq!(build_root_system(l).unwrap().dual_coxeter, h);
        }
    }

    #[test]
    fn e7_trivalent_node_is_alpha4() {
        let rs = build_root_system(Label::E7).unwrap();
        let degree = |i: usize| (0..7).filter(|&j| j != i && !rs.gram[i][j].is_zero()).count();
        assert_eq!(degree(3), 3);
        let e8 = build_root_system(Label::E8).unwrap();
        let degree8 = |i: usize| (0..8).filter(|&j| j != i && !e8.gram[i][j].is_zero()).count();
        assert_eq!(degree8(4), 3);
    }

    #[test]
    fn small_group_orders() {
        let g2 = build_root_system(Label::G2).unwrap();
        assert_eq!(close_group(&g2.generators, 100).unwrap().len(), 12);
        let a1 = build_root_system(Label::A1).unwrap();
        assert_eq!(close_group(&a1.generators, 100).unwrap().len(), 2);
        let b3 = build_root_system(Label::B3).unwrap();
        assert_eq!(close_group(&b3.generators, 10), Err(Error::GroupTooLarge(10)));
    }

    #[test]
    fn zero_weight_has_trivial_orbit() {
        let g2 = build_root_system(Label::G2).unwrap();
        let orbit = weyl_orbit_signed(&g2, &coords(&[0, 0])).unwrap();
        assert_eq!(orbit, vec![(coords(&[0, 0]), 1)]);
    }
}
