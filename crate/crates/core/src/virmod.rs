//! Virasoro Verma and vacuum characters, the linkage test for singular
//! vectors, and character bookkeeping of filtrations by Virasoro modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::charengine::universal_from_degrees;
use crate::error::{Error, Result};
use crate::qseries::{rat, ProductSpec, QSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirParams {
    #[serde(with = "crate::report::exact")]
    pub c: BigRational,
    #[serde(with = "crate::report::exact")]
    pub h: BigRational,
}

/// `q^h ∏_{n≥1}(1−q^n)^{−1}` in the relative grading.
pub fn verma_character(h: i64, order: i64) -> Result<QSeries> {
    if h < 0 {
        return Err(Error::Precondition(format!("Verma weight {h} must be nonnegative")));
    }
    let p = QSeries::product(&ProductSpec::new().factor(1, 0, -1), (order - h).max(0))?;
    Ok(p.shift(h.into()).truncate(order))
}

/// `∏_{n≥2}(1−q^n)^{−1}`.
pub fn vacuum_character(order: i64) -> Result<QSeries> {
    QSeries::product(&ProductSpec::new().factor(1, 1, -1), order)
}

/// Vacuum module plus one Verma module per weight.
pub fn module_sum_character(weights: &[i64], order: i64) -> Result<QSeries> {
    weights.iter().try_fold(vacuum_character(order)?, |acc, &h| Ok(acc.add(&verma_character(h, order)?)))
}

/// Element `a + b√d` of a real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Quad {
    a: BigRational,
    b: BigRational,
}

impl Quad {
    fn mul(&self, o: &Quad, d: &BigRational) -> Quad {
        Quad { a: &self.a * &o.a + &self.b * &o.b * d, b: &self.a * &o.b + &self.b * &o.a }
    }
    fn add(&self, o: &Quad) -> Quad {
        Quad { a: &self.a + &o.a, b: &self.b + &o.b }
    }
    fn scale(&self, k: &BigRational) -> Quad {
        Quad { a: &self.a * k, b: &self.b * k }
    }
}

fn is_square(x: &BigInt) -> bool {
    !x.is_negative() && {
        let r = x.sqrt();
        &r * &r == *x
    }
}

fn is_rational_square(x: &BigRational) -> bool {
    is_square(x.numer()) && is_square(x.denom())
}

mod exact_vec {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|x| x.parse().map_err(serde::de::Error::custom)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkageResult {
    pub params: VirParams,
    pub bound: i64,
    /// Solutions `(r, s)` up to overall sign, normalized with `s > 0` or
    /// `s = 0 < r`.
    pub solutions: Vec<(i64, i64)>,
    /// `h + rs` for each solution with `rs > 0`.
    #[serde(with = "exact_vec")]
    pub linked_weights: Vec<BigRational>,
    /// How the equalities were decided.
    pub certificate: String,
}

/// Integer pairs with `(r + νs)² = β²`, where
/// `ν = (c − 13 + √((c−1)(c−25)))/12` and `β² = (ν+1)² − 4hν`.
///
/// Both sides live in `ℚ(√D)`, `D = (c−1)(c−25)`, so each candidate is
/// decided exactly by comparing rational and irrational parts. The sign of
/// `β` is not fixed, which is why solutions are reported up to `±`.
pub fn linkage(c: &BigRational, h: &BigRational, bound: i64) -> Result<LinkageResult> {
    let d = (c - rat(1)) * (c - rat(25));
    if !d.is_positive() {
        return Err(Error::Precondition(format!("(c−1)(c−25) = {d} is not positive")));
    }
    if is_rational_square(&d) {
        return Err(Error::RationalNu(c.to_string()));
    }
    let twelfth = BigRational::new(1.into(), 12.into());
    let nu = Quad { a: (c - rat(13)) * &twelfth, b: twelfth.clone() };
    let one = Quad { a: rat(1), b: BigRational::zero() };
    let nu1 = nu.add(&one);
    let beta2 = nu1.mul(&nu1, &d).add(&nu.scale(&(rat(-4) * h)));
    let mut solutions = Vec::new();
    for s in 0..=bound {
        for r in -bound..=bound {
            if s == 0 && r <= 0 {
                continue;
            }
            let x = Quad { a: rat(r), b: BigRational::zero() }.add(&nu.scale(&rat(s)));
            if x.mul(&x, &d) == beta2 {
                solutions.push((r, s));
            }
        }
    }
    let linked_weights = solutions.iter().filter(|(r, s)| r * s > 0).map(|(r, s)| h + rat(r * s)).collect();
    Ok(LinkageResult {
        params: VirParams { c: c.clone(), h: h.clone() },
        bound,
        solutions,
        linked_weights,
        certificate: format!("exact arithmetic in Q(sqrt({d}))"),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorFate {
    /// The character already accounts for the generator at this weight.
    Absorbed,
    /// The generator needs a new Verma summand.
    Spawned,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEvent {
    pub weight: i64,
    pub fate: GeneratorFate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakPoint {
    pub weight: i64,
    pub character: String,
    /// Free (PBW) character on the Virasoro field and the spawned primaries.
    pub free_bound: String,
    pub module_sum: String,
    /// `free_bound − character`: the number of relations at this weight.
    pub defect: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SesReport {
    /// Highest weights of the summands; 0 is the vacuum module.
    pub summands: Vec<i64>,
    pub events: Vec<GeneratorEvent>,
    /// Highest exponent through which the character, the free bound and the
    /// module sum all agree.
    pub agreement_through: i64,
    pub first_break: Option<BreakPoint>,
    pub assumption: String,
}

/// Rebuilds a character from Virasoro modules, walking weights upward.
///
/// `weights` are the conformal weights of a strong generating set, one of
/// them the weight-2 Virasoro field. At each generator weight the excess of
/// `chi` over the free character of the fields kept so far decides how many
/// generators spawn a Verma summand; the rest are absorbed. The walk stops
/// at the first weight where the free character, the module sum and `chi`
/// no longer all agree.
pub fn ses_report(chi: &QSeries, weights: &[i64], order: i64) -> Result<SesReport> {
    let order = order.min(chi.order());
    let mut pending: Vec<i64> = weights.to_vec();
    pending.sort();
    if let Some(i) = pending.iter().position(|&w| w == 2) {
        pending.remove(i);
    } else {
        return Err(Error::Precondition("generator list lacks the weight-2 Virasoro field".into()));
    }

    let bound = universal_from_degrees(&weights.iter().map(|w| w - 1).collect::<Vec<_>>(), order)?;
    for k in 0..order {
        if chi.coeff(k) > bound.coeff(k) {
            return Err(Error::InconsistentCharacter {
                weight: k,
                actual: chi.coeff(k).to_string(),
                bound: bound.coeff(k).to_string(),
            });
        }
    }

    let mut spawned: Vec<i64> = Vec::new();
    let mut events = Vec::new();
    let free = |sp: &[i64]| -> Result<QSeries> {
        let mut degs = vec![1];
        degs.extend(sp.iter().map(|w| w - 1));
        universal_from_degrees(&degs, order)
    };
    let mut first_break = None;
    for k in 0..order {
        let at_k = pending.iter().filter(|&&w| w == k).count();
        if at_k > 0 {
            let excess = chi.coeff(k) - free(&spawned)?.coeff(k);
            let spawn = excess.to_integer().to_usize().unwrap_or(0).min(at_k);
            for i in 0..at_k {
                let fate = if i < spawn { GeneratorFate::Spawned } else { GeneratorFate::Absorbed };
                if fate == GeneratorFate::Spawned {
                    spawned.push(k);
                }
                events.push(GeneratorEvent { weight: k, fate });
            }
            pending.retain(|&w| w != k);
        }
        let u = free(&spawned)?.coeff(k);
        let r = module_sum_character(&spawned, order)?.coeff(k);
        let x = chi.coeff(k);
        if u != x || u != r {
            first_break = Some(BreakPoint {
                weight: k,
                character: x.to_string(),
                free_bound: u.to_string(),
                module_sum: r.to_string(),
                defect: (&u - &x).to_string(),
            });
            break;
        }
    }
    let agreement_through = first_break.as_ref().map_or(order - 1, |b| b.weight - 1);
    let mut summands = vec![0];
    summands.extend(&spawned);
    Ok(SesReport {
        summands,
        events,
        agreement_through,
        first_break,
        assumption: "extensions between the Virasoro summands split".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::ratio;

    fn ints(s: &QSeries, n: usize) -> Vec<i64> {
        s.to_int_vec(n).unwrap().iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn characters() {
        assert_eq!(ints(&verma_character(0, 5).unwrap(), 5), vec![1, 1, 2, 3, 5]);
        assert_eq!(ints(&verma_character(6, 11).unwrap(), 11), vec![0, 0, 0, 0, 0, 0, 1, 1, 2, 3, 5]);
        assert_eq!(verma_character(4, 20).unwrap().coeff(8), rat(5));
        assert_eq!(ints(&vacuum_character(7).unwrap(), 7), vec![1, 0, 1, 1, 2, 2, 4]);
        assert_eq!(module_sum_character(&[6], 12).unwrap().coeff(11), rat(21));
    }

    #[test]
    fn irreducible_vermas() {
        let r = linkage(&ratio(-1420, 17), &rat(6), 24).unwrap();
        assert!(r.solutions.is_empty());
        let r = linkage(&ratio(-135, 8), &rat(4), 24).unwrap();
        assert!(r.solutions.is_empty());
    }

    #[test]
    fn vacuum_linkage() {
        for c in [ratio(-135, 8), ratio(-1420, 17), ratio(-590, 9)] {
            let r = linkage(&c, &rat(0), 24).unwrap();
            assert_eq!(r.solutions, vec![(1, 1)]);
            assert_eq!(r.linked_weights, vec![rat(1)]);
        }
    }

    #[test]
    fn rational_nu_is_rejected() {
        // c = −22/5: (c−1)(c−25) = 27·147/25 = (63/5)²
        assert!(matches!(linkage(&ratio(-22, 5), &rat(0), 5), Err(Error::RationalNu(_))));
        assert!(matches!(linkage(&rat(10), &rat(0), 5), Err(Error::Precondition(_))));
    }
}
