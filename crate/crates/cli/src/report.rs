use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Jsonl,
}

/// One line of `jsonl` output.
#[derive(Serialize)]
pub struct Record {
    pub command: &'static str,
    pub input: Value,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub ty: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<u64>,
}

impl Record {
    pub fn new(command: &'static str, input: Value, result: Value) -> Record {
        Record {
            command,
            input,
            result,
            witness: None,
            ty: None,
            width: None,
            steps: None,
        }
    }
}

/// Buffers output in the selected format.
pub struct Emitter {
    format: Format,
    out: io::BufWriter<io::Stdout>,
}

impl Emitter {
    pub fn new(format: Format) -> Emitter {
        Emitter {
            format,
            out: io::BufWriter::new(io::stdout()),
        }
    }

    pub fn text(&mut self, line: impl AsRef<str>) {
        if self.format == Format::Text {
            let _ = writeln!(self.out, "{}", line.as_ref());
        }
    }

    pub fn record(&mut self, record: Record) {
        if self.format == Format::Jsonl {
            let line = serde_json::to_string(&record).expect("records serialize");
            let _ = writeln!(self.out, "{line}");
        }
    }

    pub fn flush(&mut self) {
        let _ = self.out.flush();
    }
}
