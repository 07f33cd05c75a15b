//! ARFF parsing and serialization.
//!
//! Supports the subset the corpus uses: `@relation`, numeric `@attribute`
//! declarations, exactly one two-valued nominal attribute in last position
//! (the class), `@data`, comma-separated rows, and `%` comments. Keywords are
//! case-insensitive; attribute names and nominal values may be quoted with
//! `'` or `"`. Sparse rows, string/date attributes, and missing values are
//! out of scope; `?` in a row is a hard error.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::data::{Dataset, Instance, Label};
use crate::error::{ParseError, ParseErrorKind};

enum Decl {
    Numeric(String),
    Nominal(Vec<String>),
}

/// Parses ARFF text into a [`Dataset`].
///
/// The first nominal value maps to [`Label::Open`], the second to
/// [`Label::Closed`]; declaration order is the canonical class encoding.
pub fn parse(text: &str) -> Result<Dataset, ParseError> {
    let mut decls: Vec<Decl> = Vec::new();
    let mut saw_relation = false;
    let mut feature_names: Vec<String> = Vec::new();
    let mut class_values: Vec<String> = Vec::new();
    let mut in_data = false;
    let mut instances: Vec<Instance> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if in_data {
            instances.push(parse_row(line, line_no, &feature_names, &class_values)?);
            continue;
        }
        if let Some(rest) = keyword(line, "@relation") {
            if rest.trim().is_empty() {
                return Err(malformed(line_no, "@relation requires a name"));
            }
            saw_relation = true;
        } else if let Some(rest) = keyword(line, "@attribute") {
            if !saw_relation {
                return Err(malformed(line_no, "@attribute before @relation"));
            }
            decls.push(parse_attribute(rest.trim(), line_no)?);
        } else if keyword(line, "@data").is_some_and(|rest| rest.trim().is_empty()) {
            if !saw_relation {
                return Err(malformed(line_no, "@data before @relation"));
            }
            (feature_names, class_values) = validate_decls(decls, line_no)?;
            decls = Vec::new();
            in_data = true;
        } else {
            return Err(malformed(line_no, format!("unrecognized header line `{line}`")));
        }
    }

    if !in_data {
        return Err(ParseError::new(
            last_line.max(1),
            ParseErrorKind::MissingDataSection,
        ));
    }
    Ok(Dataset::new(feature_names, instances).expect("rows validated during parse"))
}

/// Renders a dataset as ARFF. Feature values use Rust's shortest
/// round-trip float formatting, so parse(serialize(ds)) reproduces every
/// bit; the class is emitted as the nominal `{0,1}` in label order.
pub fn serialize(ds: &Dataset, relation: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "@relation {relation}");
    for name in ds.attribute_names() {
        let _ = writeln!(out, "@attribute {} numeric", quote_if_needed(name));
    }
    let _ = writeln!(out, "@attribute class {{0,1}}");
    let _ = writeln!(out, "@data");
    for inst in ds.instances() {
        for v in &inst.features {
            let _ = write!(out, "{v},");
        }
        let _ = writeln!(out, "{}", inst.label.index());
    }
    out
}

/// Strips `prefix` (ASCII case-insensitive) when followed by whitespace or
/// end of line, returning the remainder.
fn keyword<'a>(line: &'a str, prefix: &str) -> Option<&'a str> {
    if line.len() < prefix.len() || !line.is_char_boundary(prefix.len()) {
        return None;
    }
    let (head, rest) = line.split_at(prefix.len());
    if !head.eq_ignore_ascii_case(prefix) {
        return None;
    }
    if rest.is_empty() || rest.starts_with(char::is_whitespace) {
        Some(rest)
    } else {
        None
    }
}

fn malformed(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::new(line, ParseErrorKind::MalformedDeclaration(message.into()))
}

fn parse_attribute(rest: &str, line_no: usize) -> Result<Decl, ParseError> {
    let (name, after) = take_name(rest)
        .ok_or_else(|| malformed(line_no, "@attribute requires a name and a type"))?;
    let ty = after.trim();
    if ty.is_empty() {
        return Err(malformed(line_no, format!("attribute `{name}` has no type")));
    }
    if let Some(body) = ty.strip_prefix('{') {
        let body = body
            .strip_suffix('}')
            .ok_or_else(|| malformed(line_no, "unterminated nominal value list"))?;
        let values: Vec<String> = body
            .split(',')
            .map(|v| unquote(v.trim()).to_string())
            .collect();
        if values.len() != 2 || values.iter().any(String::is_empty) {
            return Err(malformed(
                line_no,
                format!("class attribute `{name}` must declare exactly two values"),
            ));
        }
        Ok(Decl::Nominal(values))
    } else if ty.eq_ignore_ascii_case("numeric") || ty.eq_ignore_ascii_case("real") {
        Ok(Decl::Numeric(name))
    } else {
        Err(malformed(
            line_no,
            format!("unsupported attribute type `{ty}`"),
        ))
    }
}

/// Splits a declaration remainder into its (possibly quoted) name and the
/// text after it.
fn take_name(rest: &str) -> Option<(String, &str)> {
    let rest = rest.trim_start();
    let mut chars = rest.char_indices();
    match chars.next()? {
        (_, q @ ('\'' | '"')) => {
            let body_start = q.len_utf8();
            let close = rest[body_start..].find(q)?;
            let name = &rest[body_start..body_start + close];
            let after = &rest[body_start + close + q.len_utf8()..];
            (!name.is_empty()).then(|| (name.to_string(), after))
        }
        _ => {
            let end = rest.find(char::is_whitespace)?;
            Some((rest[..end].to_string(), &rest[end..]))
        }
    }
}

fn unquote(token: &str) -> &str {
    for q in ['\'', '"'] {
        if token.len() >= 2 && token.starts_with(q) && token.ends_with(q) {
            return &token[1..token.len() - 1];
        }
    }
    token
}

fn quote_if_needed(name: &str) -> String {
    if name.contains(char::is_whitespace) || name.contains(',') {
        format!("'{name}'")
    } else {
        name.to_string()
    }
}

fn validate_decls(
    decls: Vec<Decl>,
    line_no: usize,
) -> Result<(Vec<String>, Vec<String>), ParseError> {
    if decls.is_empty() {
        return Err(malformed(line_no, "no attributes declared before @data"));
    }
    let mut feature_names = Vec::with_capacity(decls.len() - 1);
    let mut class_values = None;
    let last = decls.len() - 1;
    for (i, decl) in decls.into_iter().enumerate() {
        match decl {
            Decl::Numeric(name) if i < last => feature_names.push(name),
            Decl::Numeric(_) => {
                return Err(malformed(line_no, "last attribute must be the nominal class"))
            }
            Decl::Nominal(values) if i == last => class_values = Some(values),
            Decl::Nominal(_) => {
                return Err(malformed(
                    line_no,
                    "nominal attribute allowed only in last position",
                ))
            }
        }
    }
    Ok((feature_names, class_values.expect("nominal checked present")))
}

pub(crate) fn parse_feature(token: &str, line_no: usize) -> Result<f64, ParseError> {
    if token == "?" {
        return Err(ParseError::new(line_no, ParseErrorKind::MissingValue));
    }
    let value: f64 = token.parse().map_err(|_| {
        ParseError::new(line_no, ParseErrorKind::NonNumericToken(token.to_string()))
    })?;
    if !value.is_finite() {
        return Err(ParseError::new(
            line_no,
            ParseErrorKind::NonFiniteValue(token.to_string()),
        ));
    }
    Ok(value)
}

fn parse_row(
    line: &str,
    line_no: usize,
    feature_names: &[String],
    class_values: &[String],
) -> Result<Instance, ParseError> {
    let expected = feature_names.len() + 1;
    let tokens: Vec<&str> = line.split(',').map(str::trim).collect();
    if tokens.len() != expected {
        return Err(ParseError::new(
            line_no,
            ParseErrorKind::ArityMismatch {
                expected,
                found: tokens.len(),
            },
        ));
    }
    let mut features = Vec::with_capacity(feature_names.len());
    for &token in &tokens[..feature_names.len()] {
        features.push(parse_feature(token, line_no)?);
    }
    let class_token = unquote(tokens[expected - 1]);
    if class_token == "?" {
        return Err(ParseError::new(line_no, ParseErrorKind::MissingValue));
    }
    let label = match class_values.iter().position(|v| v == class_token) {
        Some(i) => Label::from_index(i).expect("two nominal values"),
        None => {
            return Err(ParseError::new(
                line_no,
                ParseErrorKind::UnknownClassToken(class_token.to_string()),
            ))
        }
    };
    Ok(Instance::new(features, label))
}
