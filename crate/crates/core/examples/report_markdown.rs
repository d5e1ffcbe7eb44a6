//! Writes the full markdown and JSON reports for the bundled data.
//!
//!     cargo run --example report_markdown -- [output-dir]

use complementary_fidelity::analysis::full_report;
use complementary_fidelity::fixture;
use complementary_fidelity::iofmt::{emit_report, ReportFormat};

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1);
    let (z, x) = fixture::measured();
    let report = full_report(&z, &x, 0.5).expect("fixture tables are consistent");
    let markdown = emit_report(&report, ReportFormat::Markdown);
    match dir {
        Some(dir) => {
            let dir = std::path::Path::new(&dir);
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join("report.md"), &markdown)?;
            std::fs::write(
                dir.join("report.json"),
                emit_report(&report, ReportFormat::Json),
            )?;
            println!("wrote {}/report.md and report.json", dir.display());
        }
        None => print!("{}", String::from_utf8_lossy(&markdown)),
    }
    Ok(())
}
