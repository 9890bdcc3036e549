use std::io::Write;
use std::path::Path;

use qpl_core::export::{round_sig, to_canonical_string};
use qpl_core::C64;
use serde_json::Value;

use crate::error::CliResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A command's result in both output shapes.
pub struct Report {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{}", round_sig(x))
    } else {
        String::new()
    }
}

pub fn cplx(z: C64) -> [String; 2] {
    [num(z.re), num(z.im)]
}

impl Report {
    pub fn render(&self, format: Format) -> CliResult<Vec<u8>> {
        match format {
            Format::Json => Ok(to_canonical_string(&self.json)?.into_bytes()),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(vec![]);
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                Ok(w.into_inner().map_err(|e| e.into_error())?)
            }
        }
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> CliResult<()> {
        let bytes = self.render(format)?;
        match out {
            Some(p) => std::fs::write(p, bytes)?,
            None => std::io::stdout().lock().write_all(&bytes)?,
        }
        Ok(())
    }
}
