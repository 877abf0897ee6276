use std::fmt::Display;

use clap::ValueEnum;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// Human-readable text.
    #[value(alias = "table")]
    Text,
    /// One `key<TAB>value` pair per line.
    Records,
}

/// Collects output lines; `records` mode writes `key\tvalue`, text mode
/// writes `key: value` unless a plain line is given.
pub struct Out {
    format: Format,
    buf: String,
}

impl Out {
    pub fn new(format: Format) -> Self {
        Out {
            format,
            buf: String::new(),
        }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    /// A key/value pair, rendered in both formats.
    pub fn kv(&mut self, key: &str, value: impl Display) {
        match self.format {
            Format::Text => self.buf.push_str(&format!("{key}: {value}\n")),
            Format::Records => self.buf.push_str(&format!("{key}\t{value}\n")),
        }
    }

    /// A line shown in text mode, with its records-mode counterpart.
    pub fn line(&mut self, text: impl Display, key: &str, value: impl Display) {
        match self.format {
            Format::Text => self.buf.push_str(&format!("{text}\n")),
            Format::Records => self.buf.push_str(&format!("{key}\t{value}\n")),
        }
    }

    /// A line shown in text mode only.
    pub fn text(&mut self, text: impl Display) {
        if self.format == Format::Text {
            self.buf.push_str(&format!("{text}\n"));
        }
    }

    pub fn finish(self) -> String {
        self.buf
    }
}
