//! Write a synthetic edge file for the `swconn-bench` binary.
//!
//!     cargo run --release --example generate_stream -- /tmp/stream.txt
//!     cargo run --release -- --help   # then benchmark it:
//!     target/release/swconn-bench --input /tmp/stream.txt \
//!         --strategy omst-d --alpha 40 --beta 4 --workload 1000 --verify

use std::io::{BufWriter, Write};

use swconn::synth::powerlaw_stream;

fn main() -> std::io::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "/tmp/swconn-stream.txt".to_string());
    let stream = powerlaw_stream(20_000, 500_000, 1000, 1.2, 1);
    let file = std::fs::File::create(&path)?;
    let mut out = BufWriter::new(file);
    writeln!(out, "# synthetic power-law stream: 500000 edges, 1000 per tick")?;
    for e in &stream {
        writeln!(out, "{} {} {}", e.u.0, e.v.0, e.t.0)?;
    }
    out.flush()?;
    println!("wrote {} edges to {path}", stream.len());
    Ok(())
}
