//! Nilpotent orbit data: degree lists, graded dimensions, heit and ξ vectors,
//! and the central charge of the corresponding W-algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::qseries::rat;
use crate::rootdata::{build_root_system, Label, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orbit {
    Principal,
    /// The subregular orbit `E7(a1)` or `E8(a1)`.
    Subregular,
}

impl Orbit {
    pub fn name(self, algebra: Label) -> String {
        match self {
            Orbit::Principal => "principal".to_string(),
            Orbit::Subregular => format!("{}(a1)", algebra),
        }
    }

    /// Accepts `principal`, `prin`, `subregular`, and Bala–Carter labels
    /// such as `E8(a1)` or `E8a1`.
    pub fn parse(algebra: Label, s: &str) -> Result<Orbit> {
        let t: String = s.chars().filter(|c| !matches!(c, '(' | ')' | '_' | '-')).collect();
        let t = t.to_ascii_lowercase();
        let bc = format!("{}a1", algebra.as_str().to_ascii_lowercase());
        let orbit = match t.as_str() {
            "principal" | "prin" | "regular" => Orbit::Principal,
            "subregular" | "subreg" => Orbit::Subregular,
            x if x == bc => Orbit::Subregular,
            x if x == algebra.as_str().to_ascii_lowercase() => Orbit::Principal,
            _ => return Err(Error::UnknownOrbit { algebra: algebra.to_string(), orbit: s.to_string() }),
        };
        Ok(orbit)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitGrading {
    pub algebra: Label,
    pub orbit: Orbit,
    pub degrees: Vec<i64>,
    /// `j ↦ dim g_j` for `j ≥ 0`.
    pub dim_g: BTreeMap<i64, i64>,
    /// Grading value of each simple root, in the root system's order.
    pub heit: Vec<i64>,
    /// Shift vector for the near-boundary theta sum, in ambient coordinates.
    pub xi: Option<Vec<i64>>,
}

impl fmt::Display for OrbitGrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.algebra, self.orbit.name(self.algebra))
    }
}

fn registry(algebra: Label, orbit: Orbit) -> Option<(Vec<i64>, Vec<i64>, Option<Vec<i64>>)> {
    let ones = |n: usize| vec![1; n];
    match (algebra, orbit) {
        (Label::A1, Orbit::Principal) => Some((vec![1], ones(1), None)),
        (Label::G2, Orbit::Principal) => Some((vec![1, 5], ones(2), None)),
        (Label::B3, Orbit::Principal) => Some((vec![1, 3, 5], ones(3), None)),
        (Label::F4, Orbit::Principal) => Some((vec![1, 5, 7, 11], ones(4), None)),
        (Label::E7, Orbit::Subregular) => Some((
            vec![1, 3, 5, 5, 7, 8, 9, 11, 13],
            vec![1, 1, 1, 0, 1, 1, 1],
            Some(vec![8, -5, -4, -3, -2, -1, 0, 1]),
        )),
        (Label::E8, Orbit::Subregular) => Some((
            vec![1, 5, 7, 9, 11, 13, 14, 17, 19, 23],
            vec![1, 1, 1, 1, 0, 1, 1, 1],
            Some(vec![5, 4, 3, 2, 1, 1, 0, -18]),
        )),
        _ => None,
    }
}

/// `dim g_j` from a degree list: `#{d ≥ j}` for `j ≥ 1`, and
/// `dim g_0 = dim g_1 + #{d = 0}`.
pub fn graded_dimensions(degrees: &[i64]) -> BTreeMap<i64, i64> {
    let top = degrees.iter().copied().max().unwrap_or(0);
    let mut dims = BTreeMap::new();
    for j in 1..=top {
        dims.insert(j, degrees.iter().filter(|&&d| d >= j).count() as i64);
    }
    let zeros = degrees.iter().filter(|&&d| d == 0).count() as i64;
    dims.insert(0, dims.get(&1).copied().unwrap_or(0) + zeros);
    dims
}

/// Checks `dim g_0 + 2 Σ_{j≥1} dim g_j = dim g` and `Σ degrees = Σ_{j≥1} dim g_j`.
pub fn check_dimensions(dim: usize, degrees: &[i64]) -> Result<BTreeMap<i64, i64>> {
    let dims = graded_dimensions(degrees);
    let positive: i64 = dims.iter().filter(|(&j, _)| j >= 1).map(|(_, &d)| d).sum();
    let total = dims[&0] + 2 * positive;
    if total != dim as i64 {
        return Err(Error::InvariantViolation(format!(
            "graded dimensions of {:?} add up to {} instead of {}",
            degrees, total, dim
        )));
    }
    if degrees.iter().sum::<i64>() != positive {
        return Err(Error::InvariantViolation(format!("degree sum of {:?} mismatch", degrees)));
    }
    Ok(dims)
}

pub fn orbit_grading(algebra: Label, orbit: Orbit) -> Result<OrbitGrading> {
    let (degrees, heit, xi) = registry(algebra, orbit)
        .ok_or_else(|| Error::UnknownOrbit { algebra: algebra.to_string(), orbit: orbit.name(algebra) })?;
    let dim_g = check_dimensions(algebra.dimension(), &degrees)?;
    Ok(OrbitGrading { algebra, orbit, degrees, dim_g, heit, xi })
}

/// Every validated registry entry.
pub fn all_gradings() -> Vec<OrbitGrading> {
    Label::ALL
        .iter()
        .flat_map(|&l| [Orbit::Principal, Orbit::Subregular].map(|o| orbit_grading(l, o)))
        .filter_map(|g| g.ok())
        .collect()
}

impl OrbitGrading {
    pub fn root_system(&self) -> Result<RootSystem> {
        build_root_system(self.algebra)
    }

    pub fn dim(&self, j: i64) -> i64 {
        self.dim_g.get(&j).copied().unwrap_or(0)
    }

    /// Conformal weights `d + 1` of the strong generators, ascending.
    pub fn generator_weights(&self) -> Vec<i64> {
        let mut w: Vec<i64> = self.degrees.iter().map(|d| d + 1).collect();
        w.sort();
        w
    }

    pub fn xi_vector(&self) -> Result<Vector> {
        self.xi
            .as_ref()
            .map(|v| v.iter().map(|&x| rat(x)).collect())
            .ok_or_else(|| Error::NoXiDefined(self.to_string()))
    }

    /// `x = ν(h/2)` in simple-root coordinates: `M·x = heit`.
    pub fn half_h(&self, rs: &RootSystem) -> Result<Vector> {
        let heit: Vector = self.heit.iter().map(|&h| rat(h)).collect();
        linalg::solve(&rs.gram, &heit)
    }

    /// `c = dim g_0 − 12/(k+h∨)·|ρ̄ − (k+h∨)x|²` with `k + h∨ = p/u`.
    pub fn central_charge(&self, p: i64, u: i64) -> Result<BigRational> {
        if p == 0 || u <= 0 || num_integer::gcd(p, u) != 1 {
            return Err(Error::Precondition(format!("need gcd(p, u) = 1 and p/u ≠ 0, got {p}/{u}")));
        }
        let rs = self.root_system()?;
        let x = self.half_h(&rs)?;
        let rho = &rs.weyl_vector;
        let k = BigRational::new(p.into(), u.into());
        let rho2 = rs.norm2(rho);
        let rx = rs.inner(rho, &x);
        let x2 = rs.norm2(&x);
        let bracket = rho2 - rat(2) * &k * rx + &k * &k * x2;
        Ok(rat(self.dim(0)) - rat(12) * bracket / k)
    }
}

pub fn central_charge(algebra: Label, orbit: Orbit, p: i64, u: i64) -> Result<BigRational> {
    orbit_grading(algebra, orbit)?.central_charge(p, u)
}

/// Pairings `(ξ, α_i)` of the ξ vector with the ambient simple roots.
pub fn xi_pairings(g: &OrbitGrading) -> Result<Vec<BigRational>> {
    let xi = g.xi_vector()?;
    let rs = g.root_system()?;
    let rows = rs.ambient_simple_roots.ok_or_else(|| Error::NoXiDefined(g.to_string()))?;
    Ok(rows.iter().map(|a| a.iter().zip(&xi).fold(BigRational::zero(), |s, (x, y)| s + x * y)).collect())
}
