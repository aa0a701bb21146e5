//! Normalized q-characters of W-algebras: universal, boundary admissible,
//! near-boundary (theta) and principal (Weyl sum).
//!
//! All characters are reported with their lowest term scaled to `1·q^0`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grading::{orbit_grading, Orbit, OrbitGrading};
use crate::linalg::Vector;
use crate::qseries::{rat, ProductSpec, QSeries};
use crate::rootdata::{self, Label, LatticeModel, RootSystem};

/// `∏_{d} ∏_{n≥1} (1 − q^{d+n})^{-1}`, the character of the universal
/// W-algebra with strong generators of weights `d + 1`.
pub fn universal_w_character(grading: &OrbitGrading, order: i64) -> Result<QSeries> {
    universal_from_degrees(&grading.degrees, order)
}

pub fn universal_from_degrees(degrees: &[i64], order: i64) -> Result<QSeries> {
    let spec = degrees.iter().fold(ProductSpec::new(), |s, &d| s.factor(1, d, -1));
    QSeries::product(&spec, order)
}

fn check_coprime(what: &str, a: i64, b: i64) -> Result<()> {
    if a.gcd(&b) != 1 {
        return Err(Error::Precondition(format!("{what}: gcd({a}, {b}) ≠ 1")));
    }
    Ok(())
}

/// Product form of the boundary admissible character:
/// `∏[(1−q^{un})/(1−q^n)]^{dim g_0} · ∏_{j≥1}[∏(1−q^{u(n−1)+j})(1−q^{un−j})]^{dim g_j}`.
pub fn boundary_spec(grading: &OrbitGrading, u: i64) -> Result<ProductSpec> {
    let rs = grading.root_system()?;
    check_coprime("boundary level", rs.dual_coxeter, u)?;
    check_coprime("denominator vs lacety", u, rs.lacety())?;
    graded_product(grading, u)
}

fn graded_product(grading: &OrbitGrading, u: i64) -> Result<ProductSpec> {
    let top = grading.degrees.iter().copied().max().unwrap_or(0);
    if top >= u {
        return Err(Error::Precondition(format!("denominator {u} must exceed the top degree {top}")));
    }
    let g0 = grading.dim(0);
    let mut spec = ProductSpec::new().factor(u, 0, g0).factor(1, 0, -g0);
    for (&j, &dj) in grading.dim_g.range(1..) {
        spec = spec.factor(u, j - u, dj).factor(u, -j, dj);
    }
    Ok(spec)
}

pub fn boundary_character(grading: &OrbitGrading, u: i64, order: i64) -> Result<QSeries> {
    QSeries::product(&boundary_spec(grading, u)?, order)
}

/// `Σ_{α∈Q} q^{u|α|²/2 − (ξ,α)}` over all exponents below `order`. The
/// lowest exponent is `−|ξ|²/2u` or above, so the result usually starts at
/// a negative power.
pub fn shifted_theta(lattice: &LatticeModel, xi: &[BigRational], u: i64, order: i64) -> Result<QSeries> {
    if u < 1 {
        return Err(Error::Precondition(format!("theta scale u = {u} must be positive")));
    }
    let ur = rat(u);
    let center: Vector = xi.iter().map(|x| x / &ur).collect();
    let xi2 = lattice.norm2(xi);
    let max_norm = rat(2 * (order - 1)) / &ur + &xi2 / (&ur * &ur);
    let points = lattice.enumerate_shifted(&center, &max_norm);
    let mut acc: BTreeMap<i64, BigRational> = BTreeMap::new();
    for a in &points {
        let e = &ur * lattice.norm2(a) / rat(2) - lattice.inner(xi, a);
        if !e.is_integer() {
            return Err(Error::InvariantViolation(format!("theta exponent {e} is not integral")));
        }
        let e = e.to_integer().to_i64().expect("small exponent");
        if e < order {
            *acc.entry(e).or_insert_with(BigRational::zero) += BigRational::one();
        }
    }
    Ok(QSeries::from_scaled(acc, 1, order))
}

/// `shifted_theta` divided by its lowest term, valid through `q^{order−1}`.
pub fn normalized_theta(lattice: &LatticeModel, xi: &[BigRational], u: i64, order: i64) -> Result<QSeries> {
    let xi2 = lattice.norm2(xi);
    let depth = (xi2 / rat(2 * u)).ceil().to_integer().to_i64().unwrap_or(0);
    let raw = shifted_theta(lattice, xi, u, order + depth)?;
    Ok(raw.normalize_lowest()?.0.truncate(order))
}

fn lattice_for(label: Label) -> Result<LatticeModel> {
    match label {
        Label::E8 => Ok(LatticeModel::e8()),
        Label::E7 => Ok(LatticeModel::e7()),
        other => Err(Error::Precondition(format!("no ambient lattice model for {other}"))),
    }
}

/// Near-boundary admissible character at `k + h∨ = (h∨+1)/u`: the boundary
/// product times the normalized shifted theta series of the root lattice,
/// times the Heisenberg factor `∏(1−q^{un})^{−ℓ}`.
pub fn near_boundary_character(grading: &OrbitGrading, u: i64, order: i64) -> Result<QSeries> {
    let rs = grading.root_system()?;
    let lattice = lattice_for(rs.label)?;
    check_coprime("near-boundary level", rs.dual_coxeter + 1, u)?;
    let xi = grading.xi_vector()?;
    let boundary = QSeries::product(&graded_product(grading, u)?, order)?;
    let theta = normalized_theta(&lattice, &xi, u, order)?;
    let fock = QSeries::product(&ProductSpec::new().factor(u, 0, -(rs.rank as i64)), order)?;
    Ok(boundary.mul(&theta).mul(&fock).normalize_lowest()?.0)
}

/// One term of the Weyl-sum numerator, before summing over `w`.
fn orbit_theta(
    rs: &RootSystem,
    lattice: &LatticeModel,
    x_star: &[BigRational],
    mu: &[BigRational],
    sign: i8,
    p: i64,
    u: i64,
    lowest: &BigRational,
    order: i64,
) -> Vec<(BigRational, i64)> {
    let up = rat(u * p);
    let pr = rat(p);
    let ur = rat(u);
    let cs = |v: &[BigRational]| -> BigRational { v.iter().sum() };
    // e(α) = (up/2)|α − α0|² − (up/2)|α0|² − cs(μ)
    let alpha0: Vector = x_star.iter().zip(mu).map(|(x, m)| (&pr * x - &ur * m) / &up).collect();
    let a02 = rs.norm2(&alpha0);
    let cs_mu = cs(mu);
    let max_norm = rat(2) * (rat(order) + lowest + &cs_mu) / &up + &a02;
    let mut out = Vec::new();
    for a in lattice.enumerate_shifted(&alpha0, &max_norm) {
        let e = &ur * rs.inner(mu, &a) + &up * rs.norm2(&a) / rat(2) - &cs_mu - &pr * cs(&a);
        let k = e - lowest;
        if k < rat(order) {
            out.push((k, i64::from(sign)));
        }
    }
    out
}

/// Principal admissible character at `k + h∨ = p/u` through the Weyl sum
/// `Σ_w ε(w) Σ_{α∈Q^∨} q^{u[(w ρ̄,α) + p|α|²/2] − cs(w ρ̄ + pα)}` divided by
/// `∏(1−q^n)^ℓ`, where `cs` is the simple-root coordinate sum.
pub fn principal_character(rs: &RootSystem, p: i64, u: i64, order: i64) -> Result<QSeries> {
    if p < rs.dual_coxeter {
        return Err(Error::Precondition(format!("level p = {p} below h∨ = {}", rs.dual_coxeter)));
    }
    check_coprime("principal level", p, u)?;
    check_coprime("denominator vs lacety", u, rs.lacety())?;
    let lattice = rs.coroot_lattice();
    let x_star = rs.coordinate_sum_dual()?;
    let lowest = -rs.weyl_vector.iter().sum::<BigRational>();
    let orbit = rootdata::weyl_orbit_signed(rs, &rs.weyl_vector)?;
    let terms: Vec<(BigRational, i64)> = orbit
        .par_iter()
        .flat_map_iter(|(mu, sign)| orbit_theta(rs, &lattice, &x_star, mu, *sign, p, u, &lowest, order))
        .collect();
    let denom = terms.iter().fold(1i64, |d, (k, _)| d.lcm(&k.denom().to_i64().expect("small denominator")));
    let scaled = terms.into_iter().map(|(k, s)| {
        let e = (k * rat(denom)).to_integer().to_i64().unwrap();
        (e, rat(s))
    });
    let numerator = QSeries::from_scaled(scaled, denom, order);
    let (e0, c0) = numerator.lowest_term().ok_or(Error::ZeroSeries)?;
    if !e0.is_zero() || c0 != BigRational::one() {
        return Err(Error::NormalizationFailure(format!("{c0}·q^{e0}")));
    }
    let eta = QSeries::product(&ProductSpec::new().factor(1, 0, -(rs.rank as i64)), order)?;
    Ok(numerator.mul(&eta).reduce_grid())
}

/// Which engine produces a character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharKind {
    Universal,
    Boundary,
    NearBoundary,
    Principal,
}

impl std::str::FromStr for CharKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "universal" => Ok(CharKind::Universal),
            "boundary" => Ok(CharKind::Boundary),
            "near-boundary" | "near_boundary" | "nearboundary" => Ok(CharKind::NearBoundary),
            "principal" => Ok(CharKind::Principal),
            _ => Err(Error::Parse(format!("unknown character kind `{s}`"))),
        }
    }
}

/// A fully specified character request.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CharSpec {
    pub kind: CharKind,
    pub algebra: Label,
    pub orbit: Orbit,
    pub p: Option<i64>,
    pub u: Option<i64>,
}

impl CharSpec {
    pub fn universal(algebra: Label, orbit: Orbit) -> Self {
        CharSpec { kind: CharKind::Universal, algebra, orbit, p: None, u: None }
    }

    pub fn boundary(algebra: Label, orbit: Orbit, u: i64) -> Self {
        CharSpec { kind: CharKind::Boundary, algebra, orbit, p: None, u: Some(u) }
    }

    pub fn near_boundary(algebra: Label, u: i64) -> Self {
        CharSpec { kind: CharKind::NearBoundary, algebra, orbit: Orbit::Subregular, p: None, u: Some(u) }
    }

    pub fn principal(algebra: Label, p: i64, u: i64) -> Self {
        CharSpec { kind: CharKind::Principal, algebra, orbit: Orbit::Principal, p: Some(p), u: Some(u) }
    }

    /// Level numerator `p` implied by the kind.
    pub fn level(&self) -> Result<(i64, i64)> {
        let rs = rootdata::build_root_system(self.algebra)?;
        let u = self.u.ok_or_else(|| Error::Precondition("missing denominator u".into()))?;
        let p = match self.kind {
            CharKind::Boundary => rs.dual_coxeter,
            CharKind::NearBoundary => rs.dual_coxeter + 1,
            CharKind::Principal => self.p.ok_or_else(|| Error::Precondition("missing level p".into()))?,
            CharKind::Universal => return Err(Error::Precondition("universal character has no level".into())),
        };
        Ok((p, u))
    }

    pub fn grading(&self) -> Result<OrbitGrading> {
        orbit_grading(self.algebra, self.orbit)
    }

    pub fn compute(&self, order: i64) -> Result<QSeries> {
        let need_u = || self.u.ok_or_else(|| Error::Precondition("missing denominator u".into()));
        match self.kind {
            CharKind::Universal => universal_w_character(&self.grading()?, order),
            CharKind::Boundary => boundary_character(&self.grading()?, need_u()?, order),
            CharKind::NearBoundary => near_boundary_character(&self.grading()?, need_u()?, order),
            CharKind::Principal => {
                if self.orbit != Orbit::Principal {
                    return Err(Error::Precondition("principal character needs the principal orbit".into()));
                }
                let (p, u) = self.level()?;
                principal_character(&rootdata::build_root_system(self.algebra)?, p, u, order)
            }
        }
    }

    pub fn describe(&self) -> String {
        let orbit = self.orbit.name(self.algebra);
        match (self.kind, self.level()) {
            (CharKind::Universal, _) | (_, Err(_)) => format!("{:?} {} {}", self.kind, self.algebra, orbit),
            (_, Ok((p, u))) => format!("{:?} {} {} at {}/{}", self.kind, self.algebra, orbit, p, u),
        }
    }
}

/// `kind algebra orbit [p=P] [u=U]`, e.g. `near-boundary E8 E8a1 u=28`.
impl std::str::FromStr for CharSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let bad = || Error::Parse(format!("bad character spec `{s}`; expected `kind algebra orbit [p=P] [u=U]`"));
        if words.len() < 3 {
            return Err(bad());
        }
        let kind: CharKind = words[0].parse()?;
        let algebra: Label = words[1].parse()?;
        let orbit = Orbit::parse(algebra, words[2])?;
        let mut spec = CharSpec { kind, algebra, orbit, p: None, u: None };
        for kv in &words[3..] {
            let (k, v) = kv.split_once('=').ok_or_else(bad)?;
            let v: i64 = v.parse().map_err(|_| bad())?;
            match k {
                "p" => spec.p = Some(v),
                "u" => spec.u = Some(v),
                _ => return Err(bad()),
            }
        }
        Ok(spec)
    }
}

impl std::fmt::Display for CharSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self.kind {
            CharKind::Universal => "universal",
            CharKind::Boundary => "boundary",
            CharKind::NearBoundary => "near-boundary",
            CharKind::Principal => "principal",
        };
        let orbit: String = self.orbit.name(self.algebra).chars().filter(|c| !matches!(c, '(' | ')')).collect();
        write!(f, "{kind} {} {orbit}", self.algebra)?;
        if let Some(p) = self.p {
            write!(f, " p={p}")?;
        }
        if let Some(u) = self.u {
            write!(f, " u={u}")?;
        }
        Ok(())
    }
}

/// Checks that `a ≤ b` coefficientwise.
pub fn dominated_by(a: &QSeries, b: &QSeries) -> bool {
    let order = a.order().min(b.order());
    let d = a.denom_scale().lcm(&b.denom_scale());
    (0..order * d).all(|e| {
        let ex = num_rational::Rational64::new(e, d);
        let diff = b.coeff_at(ex) - a.coeff_at(ex);
        !diff.is_negative()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries, n: usize) -> Vec<i64> {
        s.to_int_vec(n).unwrap().iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn a1_boundary_is_rogers_ramanujan() {
        let g = orbit_grading(Label::A1, Orbit::Principal).unwrap();
        let b = boundary_character(&g, 5, 20).unwrap();
        let rr = QSeries::product(&ProductSpec::new().factor(5, -2, -1).factor(5, -3, -1), 20).unwrap();
        assert!(b.compare(&rr).is_equal());
    }

    #[test]
    fn e8_theta_counts() {
        let zero = vec![BigRational::zero(); 8];
        let t = shifted_theta(&LatticeModel::e8(), &zero, 1, 3).unwrap();
        assert_eq!(ints(&t, 3), vec![1, 240, 2160]);
        let t = shifted_theta(&LatticeModel::e7(), &zero, 5, 5).unwrap();
        assert_eq!(ints(&t, 5), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn principal_reduces_to_boundary() {
        let g2 = rootdata::build_root_system(Label::G2).unwrap();
        let grading = orbit_grading(Label::G2, Orbit::Principal).unwrap();
        let a = principal_character(&g2, 4, 17, 16).unwrap();
        let b = boundary_character(&grading, 17, 16).unwrap();
        assert!(a.compare(&b).is_equal(), "{}", a.compare(&b));
        let a1 = rootdata::build_root_system(Label::A1).unwrap();
        let vir = principal_character(&a1, 2, 5, 20).unwrap();
        let gr = orbit_grading(Label::A1, Orbit::Principal).unwrap();
        assert!(vir.compare(&boundary_character(&gr, 5, 20).unwrap()).is_equal());
    }

    #[test]
    fn preconditions() {
        let g2 = orbit_grading(Label::G2, Orbit::Principal).unwrap();
        assert!(matches!(boundary_character(&g2, 8, 10), Err(Error::Precondition(_))));
        assert!(matches!(boundary_character(&g2, 3, 10), Err(Error::Precondition(_))));
        assert!(near_boundary_character(&g2, 7, 10).is_err());
        let rs = rootdata::build_root_system(Label::G2).unwrap();
        assert!(principal_character(&rs, 3, 7, 10).is_err());
    }
}
