use std::process::ExitCode;

use formwitt_acceptance::{run_all, Config};

fn main() -> ExitCode {
    let reports = run_all(&Config::default(), |r| println!("{r}"));
    let passed = reports.iter().filter(|r| r.passed()).count();
    println!("acceptance: {passed}/{} criteria passed", reports.len());
    if passed == reports.len() && reports.len() == 10 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
