use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Plain,
    Json,
}

/// Writes each record either as its plain line or as one JSON object per line.
pub struct Out {
    format: Format,
    stdout: io::Stdout,
}

impl Out {
    pub fn new(format: Format) -> Self {
        Out { format, stdout: io::stdout() }
    }

    pub fn emit(&self, plain: impl AsRef<str>, record: Value) {
        let mut lock = self.stdout.lock();
        // A closed pipe is not worth a panic; the exit status still reports the result.
        let _ = match self.format {
            Format::Plain => writeln!(lock, "{}", plain.as_ref()),
            Format::Json => writeln!(lock, "{record}"),
        };
    }
}
