//! Lattice enumeration and shifted theta series.
//!
//! The E8 shells come out as 1, 240, 2160, 6720. The shifted theta series
//! at u = 25 agrees with the Rogers–Ramanujan type product only once the
//! lattice Fock factor ∏(1−q^{25n})^{−8} is included.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use exw::charengine::normalized_theta;
use exw::grading::{orbit_grading, Orbit};
use exw::qseries::rat;
use exw::rootdata::{Label, LatticeModel};
use exw::{ProductSpec, QSeries};

fn main() -> exw::Result<()> {
    let e8 = LatticeModel::e8();
    let zero = vec![BigRational::zero(); 8];
    let mut shells = BTreeMap::new();
    for v in e8.enumerate_shifted(&zero, &rat(6)) {
        *shells.entry(e8.norm2(&v).to_string()).or_insert(0) += 1;
    }
    println!("E8 shells by norm: {shells:?}");

    let order = 26;
    let xi = orbit_grading(Label::E8, Orbit::Subregular)?.xi_vector()?;
    let theta = normalized_theta(&e8, &xi, 25, order)?;
    let product = ProductSpec::new().factor(25, -10, 1).factor(25, -15, 1).factor(5, -2, -1).factor(5, -3, -1);
    let product = QSeries::product(&product, order)?;
    let fock = QSeries::product(&ProductSpec::new().factor(25, 0, -8), order)?;
    println!("theta alone:       {}", theta.compare(&product));
    println!("theta · Fock:      {}", theta.mul(&fock).compare(&product));
    Ok(())
}
