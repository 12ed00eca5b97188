//! Deterministic output encoding.
//!
//! JSON is the canonical format: struct fields serialize in declaration
//! order and every finite float is written with exactly 12 significant
//! digits (`{:.11e}`), so identical runs produce byte-identical documents;
//! non-finite floats become `null`.  CSV output is RFC-4180 (CRLF record
//! terminators, quoting only where needed) with the same float formatting.

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter, Serializer};
use std::io::{self, Write};

/// Pretty JSON formatter with fixed-precision floats.
struct SigFigPretty<'a> {
    inner: PrettyFormatter<'a>,
}

impl SigFigPretty<'_> {
    fn new() -> Self {
        SigFigPretty {
            inner: PrettyFormatter::new(),
        }
    }
}

impl Formatter for SigFigPretty<'_> {
    #[inline]
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.11e}")
    }

    #[inline]
    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write!(writer, "{:.11e}", value as f64)
    }

    #[inline]
    fn begin_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    #[inline]
    fn end_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    #[inline]
    fn begin_array_value<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    #[inline]
    fn end_array_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    #[inline]
    fn begin_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    #[inline]
    fn end_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    #[inline]
    fn begin_object_key<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    #[inline]
    fn begin_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    #[inline]
    fn end_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

/// Output format selected with `--format`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Serializes a report to deterministic pretty JSON (trailing newline).
pub fn to_json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, SigFigPretty::new());
    value
        .serialize(&mut ser)
        .expect("report serialization to memory cannot fail");
    out.push(b'\n');
    out
}

/// A CSV writer with RFC-4180 settings, writing into memory.
pub fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .quote_style(csv::QuoteStyle::Necessary)
        .from_writer(Vec::new())
}

/// Finishes a CSV writer and returns the bytes.
pub fn csv_bytes(writer: csv::Writer<Vec<u8>>) -> Vec<u8> {
    writer
        .into_inner()
        .expect("flushing an in-memory CSV writer cannot fail")
}

/// A float as a CSV cell: 12 significant digits, empty for non-finite.
pub fn cell(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.11e}")
    } else {
        String::new()
    }
}
