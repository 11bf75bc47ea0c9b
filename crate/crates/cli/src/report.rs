//! Machine-readable experiment reports.
//!
//! JSON is exact: every rational is a `[numerator, denominator]` pair. CSV
//! carries the same quantities plus a lossy decimal column for plotting.

use std::io::Write;

use mvlab_core::Rational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::document::integer_json;

#[derive(Debug, Clone, Serialize)]
pub struct InputRecord {
    pub source: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub argv: Vec<String>,
    pub seed: Option<u64>,
    pub inputs: Vec<InputRecord>,
    pub results: Value,
    pub verdict: String,
    pub exit_status: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Headline exact values, in order; also the CSV rows.
    #[serde(skip)]
    pub quantities: Vec<(String, Rational)>,
    pub timing: Timing,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["quantity", "numerator", "denominator", "decimal_lossy"])?;
        for (name, x) in &self.quantities {
            let decimal = x.to_f64().map(|f| f.to_string()).unwrap_or_default();
            w.write_record([
                name.as_str(),
                &x.numer().to_string(),
                &x.denom().to_string(),
                &decimal,
            ])?;
        }
        w.write_record(["verdict", &self.verdict, "", ""])?;
        w.flush()?;
        Ok(())
    }
}

/// Exact `[numerator, denominator]`.
pub fn exact(x: &Rational) -> Value {
    crate::document::rational_json(x)
}

pub fn integer(x: usize) -> Value {
    integer_json(&x.into())
}
