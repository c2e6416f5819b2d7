use std::process::ExitCode;

use isf_logconcave::cli::{dispatch, Dispatch};

fn main() -> ExitCode {
    match dispatch(std::env::args_os()) {
        Dispatch::Text(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Dispatch::Report { code, report } => {
            for d in &report.diagnostics {
                eprintln!("isf: {d}");
            }
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            ExitCode::from(code as u8)
        }
    }
}
