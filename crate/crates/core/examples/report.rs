//! The full verdict for a theory, as text and as JSON.

use spinstat::report::{build_report, render_text};
use spinstat::theory::parse_theory;

fn main() -> spinstat::Result<()> {
    let spec = parse_theory("theory flipped\nfield phi spin=0 flavors=2\nflavor antisymmetric-pair\n")?;
    let report = build_report(&spec)?;
    print!("{}", render_text(&report));
    println!("exit code {}", report.status.exit_code());
    let json = report.to_json();
    println!("json: {} bytes, status {}", json.len(), report.status.token());
    Ok(())
}
