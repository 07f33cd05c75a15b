//! CSV parsing and serialization.
//!
//! RFC-4180-style: comma-separated fields, optional double-quoting with `""`
//! escapes, `\n` or `\r\n` line endings. Quoted fields must not span lines.
//! The last column is the class, encoded `0` (Open) or `1` (Closed); all
//! other columns are numeric features.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::data::arff::parse_feature;
use crate::data::{Dataset, Instance, Label};
use crate::error::{ParseError, ParseErrorKind};

/// Parses CSV text into a [`Dataset`].
///
/// With `has_header`, the first non-empty line names the attributes (the
/// last column's name, the class, is dropped). Without it, features are
/// named `a1..aM`.
pub fn parse(text: &str, has_header: bool) -> Result<Dataset, ParseError> {
    let mut feature_names: Option<Vec<String>> = None;
    let mut instances: Vec<Instance> = Vec::new();
    let mut pending_header = has_header;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let fields = split_fields(raw, line_no)?;
        if pending_header {
            pending_header = false;
            if fields.len() < 2 {
                return Err(ParseError::new(
                    line_no,
                    ParseErrorKind::ArityMismatch {
                        expected: 2,
                        found: fields.len(),
                    },
                ));
            }
            feature_names = Some(fields[..fields.len() - 1].to_vec());
            continue;
        }
        let expected = match &feature_names {
            Some(names) => names.len() + 1,
            None => {
                if fields.len() < 2 {
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::ArityMismatch {
                            expected: 2,
                            found: fields.len(),
                        },
                    ));
                }
                let m = fields.len() - 1;
                feature_names = Some((1..=m).map(|j| format!("a{j}")).collect());
                fields.len()
            }
        };
        if fields.len() != expected {
            return Err(ParseError::new(
                line_no,
                ParseErrorKind::ArityMismatch {
                    expected,
                    found: fields.len(),
                },
            ));
        }
        let mut features = Vec::with_capacity(expected - 1);
        for token in &fields[..expected - 1] {
            features.push(parse_feature(token.trim(), line_no)?);
        }
        let label = match fields[expected - 1].trim() {
            "0" => Label::Open,
            "1" => Label::Closed,
            "?" => return Err(ParseError::new(line_no, ParseErrorKind::MissingValue)),
            other => {
                return Err(ParseError::new(
                    line_no,
                    ParseErrorKind::UnknownClassToken(other.to_string()),
                ))
            }
        };
        instances.push(Instance::new(features, label));
    }

    let feature_names = feature_names.unwrap_or_default();
    Ok(Dataset::new(feature_names, instances).expect("rows validated during parse"))
}

/// Renders a dataset as CSV, optionally with a header line. The class column
/// is named `class` and encoded `0`/`1`.
pub fn serialize(ds: &Dataset, with_header: bool) -> String {
    let mut out = String::new();
    if with_header {
        for name in ds.attribute_names() {
            let _ = write!(out, "{},", escape(name));
        }
        let _ = writeln!(out, "class");
    }
    for inst in ds.instances() {
        for v in &inst.features {
            let _ = write!(out, "{v},");
        }
        let _ = writeln!(out, "{}", inst.label.index());
    }
    out
}

fn escape(field: &str) -> String {
    if field.contains(['"', ',', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn split_fields(line: &str, line_no: usize) -> Result<Vec<String>, ParseError> {
    let mut fields = Vec::new();
    let mut cur = String::new();
    let mut chars = line.trim_end_matches('\r').chars().peekable();
    loop {
        match chars.next() {
            Some('"') if cur.trim().is_empty() => {
                cur.clear();
                loop {
                    match chars.next() {
                        Some('"') if chars.peek() == Some(&'"') => {
                            chars.next();
                            cur.push('"');
                        }
                        Some('"') => break,
                        Some(c) => cur.push(c),
                        None => {
                            return Err(ParseError::new(
                                line_no,
                                ParseErrorKind::UnterminatedQuote,
                            ))
                        }
                    }
                }
                // Quoted field is complete; only whitespace may precede the
                // separator or end of line.
                let saw_comma = loop {
                    match chars.next() {
                        Some(',') => break true,
                        None => break false,
                        Some(c) if c.is_whitespace() => continue,
                        Some(c) => {
                            return Err(ParseError::new(
                                line_no,
                                ParseErrorKind::NonNumericToken(c.to_string()),
                            ))
                        }
                    }
                };
                fields.push(core::mem::take(&mut cur));
                if !saw_comma {
                    return Ok(fields);
                }
            }
            Some(',') => fields.push(core::mem::take(&mut cur)),
            Some(c) => cur.push(c),
            None => {
                fields.push(cur);
                return Ok(fields);
            }
        }
    }
}
