//! Running a verification suite from code and writing a CSV report.

use qcong::harness::{render, run_suite, Format, Suite, SuiteSpec};

fn main() -> qcong::Result<()> {
    let spec = SuiteSpec {
        n_max: Some(17),
        ..SuiteSpec::new(Suite::ThmB)
    };
    let report = run_suite(&spec)?;
    print!("{}", render(&report, Format::Text));
    print!("{}", render(&report, Format::Csv));
    std::process::exit(report.exit_code());
}
