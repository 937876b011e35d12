//! Report records and their two output shapes: compact JSON lines for
//! machines, aligned text for terminals. Field order is fixed so that runs
//! with the same inputs serialize identically; wall time sits last so
//! consumers can strip it before comparing.

use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub check: String,
    pub command: String,
    pub group: String,
    pub d: usize,
    pub l: i64,
    pub seed: u64,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub residual: f64,
    pub sizes: Vec<u64>,
    pub tolerance: f64,
    pub pass: bool,
    pub wall_ms: u64,
}

pub fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl RunReport {
    pub fn emit(&self, json: bool) {
        if json {
            println!("{}", serde_json::to_string(self).expect("report is plain data"));
        } else {
            let verdict = if self.pass { "PASS" } else { "FAIL" };
            println!(
                "{} group={} d={} l={} seed={}: lhs=[{:.12}, {:.12}] rhs=[{:.12}, {:.12}] residual={:.3e} sizes={:?} {} ({} ms)",
                self.check,
                self.group,
                self.d,
                self.l,
                self.seed,
                self.lhs[0],
                self.lhs[1],
                self.rhs[0],
                self.rhs[1],
                self.residual,
                self.sizes,
                verdict,
                self.wall_ms
            );
        }
    }
}
