//! Arbitrarily large holes: CRT certificates against exhaustive scans.

use weakmodel::adic::SchemeParams;
use weakmodel::sieve::{crt_hole, scan_hole};

fn main() -> weakmodel::Result<()> {
    let sf = SchemeParams::squarefree();
    println!("smallest runs of m consecutive non-squarefree integers:");
    for m in 1..=4 {
        let t = scan_hole(sf, m, 1_000_000)?;
        println!("  m={m}: starts at {:?}", t.map(|t| t[0]));
    }

    println!("CRT constructions:");
    for m in [3u64, 5, 10, 20] {
        let cert = crt_hole(sf, m)?;
        let ok = cert.verify().is_ok();
        println!("  m={m:>2}: t = {} (mod {}), verified: {ok}", cert.t[0], cert.modulus);
    }

    let plane = crt_hole(SchemeParams::visible_plane(), 2)?;
    println!("2x2 block of invisible points at {:?}", plane.t_as_i64());
    for a in &plane.assignments {
        println!("  offset {:?} divisible by {}", a.offset, a.prime);
    }
    println!("{}", serde_json::to_string_pretty(&plane.to_json())?);
    Ok(())
}
