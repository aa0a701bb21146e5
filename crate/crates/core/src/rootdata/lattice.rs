use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{e7_simple_roots, e8_simple_roots, RootSystem};
use crate::linalg::{self, Matrix, Vector};
use crate::qseries::rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Integer or all-half-integer coordinates with even coordinate sum.
    E8,
    /// E8 vectors with vanishing coordinate sum.
    E7,
    /// `⊕ ℤ·k_i α_i` in simple-root coordinates.
    Coroot(Vec<i64>),
}

/// A lattice given by a basis inside an ambient space with inner product
/// `ambient_form` (the identity for the Euclidean E7/E8 models, the Gram
/// matrix of the root system for coroot lattices).
#[derive(Clone, Debug)]
pub struct LatticeModel {
    pub name: String,
    pub dimension: usize,
    pub basis: Matrix,
    pub ambient_form: Matrix,
    pub gram: Matrix,
    pub membership: Membership,
}

fn doubled(v: &[BigRational]) -> Option<Vec<i64>> {
    v.iter()
        .map(|x| {
            let d = x * rat(2);
            if d.is_integer() {
                d.to_integer().to_i64()
            } else {
                None
            }
        })
        .collect()
}

impl LatticeModel {
    fn from_basis(name: &str, basis: Matrix, ambient_form: Matrix, membership: Membership) -> Self {
        let gram =
            basis.iter().map(|a| basis.iter().map(|b| linalg::bilinear(&ambient_form, a, b)).collect()).collect();
        LatticeModel { name: name.to_string(), dimension: ambient_form.len(), basis, ambient_form, gram, membership }
    }

    pub fn e8() -> Self {
        Self::from_basis("E8", e8_simple_roots(), linalg::identity(8), Membership::E8)
    }

    pub fn e7() -> Self {
        Self::from_basis("E7", e7_simple_roots(), linalg::identity(8), Membership::E7)
    }

    pub fn coroot(rs: &RootSystem) -> Self {
        let scales = rs.coroot_scales();
        let n = rs.rank;
        let basis = (0..n)
            .map(|i| (0..n).map(|j| if i == j { rat(scales[i]) } else { BigRational::zero() }).collect())
            .collect();
        Self::from_basis(&format!("coroot lattice of {}", rs.label), basis, rs.gram.clone(), Membership::Coroot(scales))
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn norm2(&self, v: &[BigRational]) -> BigRational {
        linalg::bilinear(&self.ambient_form, v, v)
    }

    pub fn inner(&self, a: &[BigRational], b: &[BigRational]) -> BigRational {
        linalg::bilinear(&self.ambient_form, a, b)
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        if v.len() != self.dimension {
            return false;
        }
        match &self.membership {
            Membership::E8 | Membership::E7 => {
                let Some(d) = doubled(v) else { return false };
                let parity = d[0].rem_euclid(2);
                let same = d.iter().all(|x| x.rem_euclid(2) == parity);
                let sum: i64 = d.iter().sum();
                let e8 = same && sum.rem_euclid(4) == 0;
                e8 && (self.membership == Membership::E8 || sum == 0)
            }
            Membership::Coroot(scales) => v.iter().zip(scales).all(|(x, &k)| {
                let y = x / rat(k);
                y.is_integer()
            }),
        }
    }

    pub fn combine(&self, z: &[i64]) -> Vector {
        let mut v = vec![BigRational::zero(); self.dimension];
        for (zi, b) in z.iter().zip(&self.basis) {
            if *zi != 0 {
                let k = rat(*zi);
                for (x, y) in v.iter_mut().zip(b) {
                    *x += &k * y;
                }
            }
        }
        v
    }

    /// All lattice vectors `v` with `|v − center|² ≤ max_norm`, exactly.
    pub fn enumerate_shifted(&self, center: &[BigRational], max_norm: &BigRational) -> Vec<Vector> {
        self.enumerate_shifted_coeffs(center, max_norm).into_iter().map(|z| self.combine(&z)).collect()
    }

    /// As [`enumerate_shifted`](Self::enumerate_shifted) but returns basis
    /// coefficients.
    pub fn enumerate_shifted_coeffs(&self, center: &[BigRational], max_norm: &BigRational) -> Vec<Vec<i64>> {
        if max_norm.is_negative() {
            return vec![];
        }
        let n = self.rank();
        // Project the center onto the lattice span: G·z0 = B·A·center.
        let a_center = linalg::mat_vec(&self.ambient_form, center);
        let rhs: Vector = self.basis.iter().map(|b| b.iter().zip(&a_center).map(|(x, y)| x * y).sum()).collect();
        let z0 = linalg::solve(&self.gram, &rhs).expect("lattice Gram is nonsingular");
        let proj = {
            let mut p = vec![BigRational::zero(); self.dimension];
            for (c, b) in z0.iter().zip(&self.basis) {
                for (x, y) in p.iter_mut().zip(b) {
                    *x += c * y;
                }
            }
            p
        };
        let perp: Vector = center.iter().zip(&proj).map(|(c, p)| c - p).collect();
        let budget = max_norm - self.norm2(&perp);
        if budget.is_negative() {
            return vec![];
        }

        let (mu, d) = ldl(&self.gram);
        let mu_f: Vec<Vec<f64>> = mu.iter().map(|r| r.iter().map(to_f64).collect()).collect();
        let d_f: Vec<f64> = d.iter().map(to_f64).collect();
        let z0_f: Vec<f64> = z0.iter().map(to_f64).collect();
        let budget_f = to_f64(&budget);
        let slack = 1e-9 * (1.0 + budget_f.abs());

        let mut out = Vec::new();
        let mut z = vec![0i64; n];
        let ctx = Search { mu: &mu_f, d: &d_f, z0: &z0_f, slack };
        ctx.descend(n, budget_f, &mut z, &mut out);

        // exact filter
        out.retain(|z| {
            let y: Vector = z.iter().zip(&z0).map(|(&zi, c)| rat(zi) - c).collect();
            linalg::bilinear(&self.gram, &y, &y) <= budget
        });
        out.sort();
        out
    }
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `G = Lᵀ·diag(d)·L` with `L` unit upper triangular, so that
/// `yᵀGy = Σ_i d_i (y_i + Σ_{j>i} μ_ij y_j)²`.
fn ldl(g: &Matrix) -> (Matrix, Vector) {
    let n = g.len();
    let mut a = g.clone();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut d = vec![BigRational::zero(); n];
    for i in 0..n {
        d[i] = a[i][i].clone();
        for j in i + 1..n {
            mu[i][j] = &a[i][j] / &d[i];
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let t = &mu[i][j] * &a[i][k];
                a[j][k] -= t;
            }
        }
    }
    (mu, d)
}

struct Search<'a> {
    mu: &'a [Vec<f64>],
    d: &'a [f64],
    z0: &'a [f64],
    slack: f64,
}

impl Search<'_> {
    /// Fixes coordinates `level..n` and recurses on `level − 1`.
    fn descend(&self, level: usize, remaining: f64, z: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if level == 0 {
            out.push(z.clone());
            return;
        }
        let i = level - 1;
        let n = z.len();
        let mut shift = 0.0;
        for j in i + 1..n {
            shift += self.mu[i][j] * (z[j] as f64 - self.z0[j]);
        }
        // y_i + shift = t with d_i t² ≤ remaining
        let center = self.z0[i] - shift;
        let radius = ((remaining + self.slack).max(0.0) / self.d[i]).sqrt();
        let lo = (center - radius - 1e-9).ceil() as i64;
        let hi = (center + radius + 1e-9).floor() as i64;
        for zi in lo..=hi {
            let t = zi as f64 - center;
            let used = self.d[i] * t * t;
            if used <= remaining + self.slack {
                z[i] = zi;
                self.descend(i, remaining - used, z, out);
            }
        }
        z[i] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::ratio;
    use crate::rootdata::{build_root_system, Label};

    #[test]
    fn small_counts() {
        let e8 = LatticeModel::e8();
        let zero = vec![BigRational::zero(); 8];
        assert_eq!(e8.enumerate_shifted(&zero, &rat(0)), vec![zero.clone()]);
        assert_eq!(e8.enumerate_shifted(&zero, &rat(2)).len(), 241);
        assert_eq!(LatticeModel::e7().enumerate_shifted(&zero, &rat(2)).len(), 127);
        assert!(e8.enumerate_shifted(&zero, &rat(-1)).is_empty());
    }

    #[test]
    fn membership() {
        let e8 = LatticeModel::e8();
        let half: Vector = vec![ratio(1, 2); 8];
        assert!(e8.contains(&half));
        let mut odd = half.clone();
        odd[0] = ratio(-1, 2);
        assert!(!e8.contains(&odd));
        assert!(!LatticeModel::e7().contains(&half));
        let g2 = build_root_system(Label::G2).unwrap();
        let q = LatticeModel::coroot(&g2);
        assert!(q.contains(&[rat(3), rat(1)]));
        assert!(!q.contains(&[rat(1), rat(1)]));
    }

    #[test]
    fn far_center() {
        // a center outside the E7 span is handled by projection
        let e7 = LatticeModel::e7();
        let mut c = vec![BigRational::zero(); 8];
        c[0] = ratio(1, 2);
        let pts = e7.enumerate_shifted(&c, &rat(3));
        for p in &pts {
            assert!(e7.contains(p));
            let diff: Vector = p.iter().zip(&c).map(|(a, b)| a - b).collect();
            assert!(e7.norm2(&diff) <= rat(3));
        }
        assert!(!pts.is_empty());
    }
}
