//! Reference series tables, embedded as data.
//!
//! Each file holds `#` comment lines, a `spec:` line naming the computation
//! that should reproduce it, and a `series:` line in the text form of
//! [`QSeries`].

use std::path::Path;

use crate::charengine::CharSpec;
use crate::error::{Error, Result};
use crate::qseries::QSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoldenSpec {
    Character(CharSpec),
    /// Vacuum module plus one Verma module per listed weight.
    ModuleSum(Vec<i64>),
}

#[derive(Clone, Debug)]
pub struct GoldenTable {
    pub name: String,
    pub spec: GoldenSpec,
    pub series: QSeries,
}

const EMBEDDED: &[(&str, &str)] = &[
    ("boundary_g2_17", include_str!("../golden/boundary_g2_17.txt")),
    ("near_boundary_e8_25", include_str!("../golden/near_boundary_e8_25.txt")),
    ("near_boundary_e8_26", include_str!("../golden/near_boundary_e8_26.txt")),
    ("near_boundary_e8_27", include_str!("../golden/near_boundary_e8_27.txt")),
    ("near_boundary_e8_28", include_str!("../golden/near_boundary_e8_28.txt")),
    ("near_boundary_e8_29", include_str!("../golden/near_boundary_e8_29.txt")),
    ("near_boundary_e7_16", include_str!("../golden/near_boundary_e7_16.txt")),
    ("principal_g2_9_7", include_str!("../golden/principal_g2_9_7.txt")),
    ("principal_b3_8_7", include_str!("../golden/principal_b3_8_7.txt")),
    ("principal_f4_14_13", include_str!("../golden/principal_f4_14_13.txt")),
    ("universal_g2", include_str!("../golden/universal_g2.txt")),
    ("universal_b3", include_str!("../golden/universal_b3.txt")),
    ("module_sum_4_6", include_str!("../golden/module_sum_4_6.txt")),
];

pub fn table_names() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|(n, _)| *n)
}

fn field<'a>(text: &'a str, key: &str) -> Result<&'a str> {
    text.lines()
        .find_map(|l| l.strip_prefix(key).map(str::trim))
        .ok_or_else(|| Error::Parse(format!("missing `{key}` line")))
}

fn parse_spec(s: &str) -> Result<GoldenSpec> {
    if let Some(rest) = s.strip_prefix("module-sum") {
        let ws = rest
            .split_whitespace()
            .map(|w| w.parse().map_err(|_| Error::Parse(format!("bad golden spec `{s}`"))))
            .collect::<Result<_>>()?;
        return Ok(GoldenSpec::ModuleSum(ws));
    }
    Ok(GoldenSpec::Character(s.parse()?))
}

pub fn parse_table(name: &str, text: &str) -> Result<GoldenTable> {
    Ok(GoldenTable {
        name: name.to_string(),
        spec: parse_spec(field(text, "spec:")?)?,
        series: QSeries::parse(field(text, "series:")?)?,
    })
}

pub fn embedded(name: &str) -> Result<GoldenTable> {
    let (_, text) =
        EMBEDDED.iter().find(|(n, _)| *n == name).ok_or_else(|| Error::Parse(format!("no golden table `{name}`")))?;
    parse_table(name, text)
}

/// Loads a table from `dir/<name>.txt` if `dir` is given, else the embedded copy.
pub fn load(name: &str, dir: Option<&Path>) -> Result<GoldenTable> {
    match dir {
        None => embedded(name),
        Some(d) => {
            let path = d.join(format!("{name}.txt"));
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            parse_table(name, &text)
        }
    }
}

pub fn all() -> Result<Vec<GoldenTable>> {
    table_names().map(embedded).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Label;

    #[test]
    fn every_table_parses() {
        let tables = all().unwrap();
        assert_eq!(tables.len(), 13);
        for t in &tables {
            assert_eq!(t.series.coeff(0), crate::qseries::rat(1), "{}", t.name);
        }
        let e7 = embedded("near_boundary_e7_16").unwrap();
        assert_eq!(e7.spec, GoldenSpec::Character(CharSpec::near_boundary(Label::E7, 16)));
        assert_eq!(e7.series.order(), 26);
    }
}
