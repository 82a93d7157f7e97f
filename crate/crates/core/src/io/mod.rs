//! Plain-text file formats for instances and betweenness instances.
//!
//! Both formats are line oriented: `#` starts a comment, tokens are separated
//! by whitespace and the first meaningful line is a version header.

use thiserror::Error;

use crate::instance::ValidationError;
use crate::reductions::BetweennessError;

mod betweenness_file;
mod instance_file;

pub use betweenness_file::{parse_betweenness, serialize_betweenness};
pub use instance_file::{parse_instance, parse_raw_instance, serialize_instance};

pub const INSTANCE_HEADER: &str = "shelflist v1";
pub const BETWEENNESS_HEADER: &str = "betweenness v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error(transparent)]
    Betweenness(#[from] BetweennessError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SerializeError {
    #[error("name `{0}` cannot be written as a single token")]
    BadName(String),
}

/// Meaningful lines with their 1-based numbers, comments stripped.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split_once('#').map_or(line, |(before, _)| before);
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Names are single tokens; commas are reserved for list arguments.
fn check_name(line: usize, name: &str) -> Result<(), ParseError> {
    if name.contains(',') {
        return Err(syntax(line, format!("name `{name}` contains ','")));
    }
    Ok(())
}

fn writable(name: &str) -> Result<&str, SerializeError> {
    let ok =
        !name.is_empty() && !name.contains(|c: char| c.is_whitespace() || c == '#' || c == ',');
    if ok {
        Ok(name)
    } else {
        Err(SerializeError::BadName(name.to_string()))
    }
}

/// Checks the header line and returns the remaining lines.
fn expect_header<'a>(
    mut it: impl Iterator<Item = (usize, Vec<&'a str>)>,
    header: &str,
) -> Result<impl Iterator<Item = (usize, Vec<&'a str>)>, ParseError> {
    match it.next() {
        Some((_, tokens)) if tokens.join(" ") == header => Ok(it),
        Some((line, _)) => Err(syntax(line, format!("expected header `{header}`"))),
        None => Err(syntax(1, format!("empty file, expected header `{header}`"))),
    }
}
