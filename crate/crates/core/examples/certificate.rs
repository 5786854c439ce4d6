//! Build the certificate for one field and print it as JSON.
//!
//! `cargo run --example certificate -- -5`

use g2check::padic::PrecisionContext;
use g2check::verdict::check_field;

fn main() -> g2check::Result<()> {
    let d = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(-5);
    let cert = check_field(d, PrecisionContext::default())?;
    println!("{}", cert.to_json());
    eprintln!("verdict: {}", cert.verdict.as_str());
    Ok(())
}
