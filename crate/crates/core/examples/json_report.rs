//! Reports serialize every exact number as a string and read back
//! unchanged.

use exw::charengine::CharSpec;
use exw::report::{Output, Report};

fn main() -> exw::Result<()> {
    let spec: CharSpec = "near-boundary E8 E8a1 u=28".parse()?;
    let mut report = Report::new(vec!["json_report".into()]);
    report.input("spec", &spec).input("order", 8);
    let series = spec.compute(8)?;
    report.outputs.push(Output::Series { label: spec.to_string(), series: series.to_report() });
    report.verdict("lowest term is 1", series.coeff(0) == exw::qseries::rat(1), "normalized");

    let json = report.to_json();
    println!("{json}");
    assert_eq!(Report::from_json(&json)?, report);
    Ok(())
}
