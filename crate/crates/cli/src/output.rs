use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde::{Deserialize, Serialize};

use qstokes::report::Pair;

use crate::args::Opts;
use crate::CliError;

/// One evaluated value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueRecord {
    pub function: String,
    pub q: Pair,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Pair>,
    pub x: Pair,
    pub value: Pair,
}

/// A resummed value with the spiral window it needed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResumRecord {
    pub function: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    pub q: Pair,
    pub lambda: Pair,
    pub x: Pair,
    pub value: Pair,
    pub window: usize,
    pub tail: f64,
}

pub fn sink(opts: &Opts) -> Result<Box<dyn Write>, CliError> {
    Ok(match &opts.output {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError::Usage(format!("cannot create {}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn io_err(e: io::Error) -> CliError {
    CliError::Usage(format!("write failed: {e}"))
}

pub fn json_line(w: &mut dyn Write, v: &impl Serialize) -> Result<(), CliError> {
    let s = serde_json::to_string(v).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(w, "{s}").map_err(io_err)
}

pub const CSV_HEADER: &str = "re_x,im_x,re_val,im_val,status";

pub fn csv_row(w: &mut dyn Write, x: Pair, value: Option<Pair>, status: &str) -> Result<(), CliError> {
    let r = match value {
        Some(v) => writeln!(w, "{},{},{},{},{status}", x[0], x[1], v[0], v[1]),
        None => writeln!(w, "{},{},,,{status}", x[0], x[1]),
    };
    r.map_err(io_err)
}
