//! Machine-readable reports emitted by the command-line front end.
//!
//! Every exact number is written as a string (`"-1420/17"`, `"240"`) so that
//! big integers survive JSON untouched. `Report` round-trips through
//! [`Report::to_json`] and [`Report::from_json`] without loss.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opecalc::{SolveReport, VerifyReport};
use crate::qseries::{Comparison, SeriesReport};
use crate::virmod::SesReport;

/// Serde adapter writing any `Display + FromStr` value as a string.
pub mod exact {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }

    /// The same for `Option<T>`, with `null` for `None`.
    pub mod opt {
        use super::*;

        pub fn serialize<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.collect_str(v),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, T, D>(d: D) -> Result<Option<T>, D::Error>
        where
            T: FromStr,
            T::Err: Display,
            D: Deserializer<'de>,
        {
            Option::<String>::deserialize(d)?.map(|s| s.parse().map_err(serde::de::Error::custom)).transpose()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Output {
    Series { label: String, series: SeriesReport },
    Comparison { left: String, right: String, result: Comparison },
    CentralCharge { label: String, value: String },
    Ses { label: String, report: SesReport },
    Solve { case: String, report: Box<SolveReport>, verify: Option<VerifyReport> },
    Grading { label: String, degrees: Vec<i64>, dimension: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    /// Command line as invoked.
    pub command: Vec<String>,
    pub inputs: BTreeMap<String, String>,
    pub outputs: Vec<Output>,
    pub verdicts: Vec<Verdict>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report { command, ..Report::default() }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn verdict(&mut self, check: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict { check: check.into(), passed, detail: detail.into() });
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only strings and integers")
    }

    pub fn from_json(s: &str) -> Result<Report> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Line-oriented rendering without timings, stable for diffing.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for o in &self.outputs {
            match o {
                Output::Series { label, series } => {
                    let s = crate::qseries::QSeries::from_report(series).map(|s| s.to_string());
                    out.push_str(&format!("{label}: {}\n", s.unwrap_or_else(|e| e.to_string())));
                }
                Output::Comparison { left, right, result } => {
                    out.push_str(&format!("{left} vs {right}: {result}\n"));
                }
                Output::CentralCharge { label, value } => out.push_str(&format!("{label}: c = {value}\n")),
                Output::Ses { label, report } => {
                    out.push_str(&format!(
                        "{label}: summands {:?}, agreement through q^{}",
                        report.summands, report.agreement_through
                    ));
                    if let Some(b) = &report.first_break {
                        out.push_str(&format!(", first break at weight {} (defect {})", b.weight, b.defect));
                    }
                    out.push('\n');
                }
                Output::Solve { case, report, verify } => {
                    out.push_str(&format!(
                        "{case}: {} unknowns, {} equations ({} distinct), family dimension {}, status {:?}\n",
                        report.unknowns,
                        report.equations,
                        report.distinct_equations,
                        report.family_dimension,
                        report.status
                    ));
                    out.push_str(&format!("  normalized: {}\n", report.normalized.join(", ")));
                    for s in &report.surds {
                        out.push_str(&format!("  adjoined sqrt({}) for primary {}\n", s.radicand, s.primary));
                    }
                    for v in &report.values {
                        out.push_str(&format!("  {} = {v}\n", v.name));
                    }
                    if let Some(v) = verify {
                        out.push_str(&format!("  verified {} identities over {} triples\n", v.identities, v.triples));
                    }
                }
                Output::Grading { label, degrees, dimension } => {
                    out.push_str(&format!("{label}: degrees {degrees:?}, dimension {dimension}\n"));
                }
            }
        }
        for v in &self.verdicts {
            out.push_str(&format!("[{}] {}: {}\n", if v.passed { "pass" } else { "FAIL" }, v.check, v.detail));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{ratio, QSeries};

    #[test]
    fn json_round_trip() {
        let mut r = Report::new(vec!["wcli".into(), "char".into()]);
        r.input("order", 5);
        let s = QSeries::from_ints(&[1, 0, 1, 1, 2], 5);
        r.outputs.push(Output::Series { label: "universal G2".into(), series: s.to_report() });
        r.outputs.push(Output::Comparison {
            left: "a".into(),
            right: "b".into(),
            result: Comparison::Mismatch {
                exponent: num_rational::Rational64::new(12, 1),
                left: ratio(33, 1),
                right: ratio(-1420, 17),
            },
        });
        r.verdict("check", true, "ok");
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"-1420/17\""));
        assert!(r.to_text().contains("1 + q^2 + q^3 + 2*q^4"));
    }
}
