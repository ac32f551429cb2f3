use std::fmt::Write as _;
use std::str::FromStr;

use super::{Framework, FrameworkBuilder};
use crate::error::{Error, Result};

/// Text encodings for frameworks.
///
/// `Apx` is the competition format: `arg(a).` and `att(a,b).` statements,
/// any number per line, `%` starts a comment.
///
/// `EdgeList` is a `# args` block with one name per line followed by
/// `src tgt` lines (optionally under a `# attacks` header). Other lines
/// starting with `#` are comments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameworkFormat {
    Apx,
    EdgeList,
}

impl FromStr for FrameworkFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "apx" => Ok(FrameworkFormat::Apx),
            "edge-list" | "edgelist" | "tgf" => Ok(FrameworkFormat::EdgeList),
            other => Err(Error::InvalidParameter(format!("unknown framework format `{other}`"))),
        }
    }
}

pub(super) fn parse_framework(text: &str, format: FrameworkFormat) -> Result<Framework> {
    match format {
        FrameworkFormat::Apx => parse_apx(text),
        FrameworkFormat::EdgeList => parse_edge_list(text),
    }
}

pub(super) fn write_framework(fw: &Framework, format: FrameworkFormat) -> String {
    let mut out = String::new();
    match format {
        FrameworkFormat::Apx => {
            for a in fw.arguments() {
                let _ = writeln!(out, "arg({a}).");
            }
            for &(a, b) in fw.attacks() {
                let _ = writeln!(out, "att({},{}).", fw.name(a), fw.name(b));
            }
        }
        FrameworkFormat::EdgeList => {
            out.push_str("# args\n");
            for a in fw.arguments() {
                let _ = writeln!(out, "{a}");
            }
            out.push_str("# attacks\n");
            for &(a, b) in fw.attacks() {
                let _ = writeln!(out, "{} {}", fw.name(a), fw.name(b));
            }
        }
    }
    out
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

/// Attaches a line number to name-level errors.
fn at_line(line: usize, err: Error) -> Error {
    match err {
        Error::Syntax { .. } => err,
        other => syntax(line, other.to_string()),
    }
}

fn parse_apx(text: &str) -> Result<Framework> {
    let mut builder = FrameworkBuilder::default();
    // Attacks are resolved after all arguments are known, so `att` may
    // precede the matching `arg` lines.
    let mut pending = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('%').next().unwrap_or("");
        let mut rest = line.trim();
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| syntax(line_no, format!("expected `(` in `{rest}`")))?;
            let close = rest[open..]
                .find(')')
                .map(|i| i + open)
                .ok_or_else(|| syntax(line_no, "missing `)`"))?;
            let keyword = rest[..open].trim();
            let inner = &rest[open + 1..close];
            let after = rest[close + 1..].trim_start();
            let after = after
                .strip_prefix('.')
                .ok_or_else(|| syntax(line_no, "statement must end with `.`"))?;
            match keyword {
                "arg" => {
                    let name = inner.trim();
                    builder
                        .add_argument(name)
                        .map_err(|e| at_line(line_no, e))?;
                }
                "att" => {
                    let mut parts = inner.split(',');
                    let (a, b) = match (parts.next(), parts.next(), parts.next()) {
                        (Some(a), Some(b), None) => (a.trim(), b.trim()),
                        _ => return Err(syntax(line_no, "att/2 takes exactly two arguments")),
                    };
                    pending.push((line_no, a.to_string(), b.to_string()));
                }
                other => return Err(syntax(line_no, format!("unknown statement `{other}`"))),
            }
            rest = after.trim_start();
        }
    }

    for (line_no, a, b) in pending {
        builder.add_attack(&a, &b).map_err(|e| match e {
            Error::UndeclaredArgument(_) => e,
            other => at_line(line_no, other),
        })?;
    }
    Ok(builder.build())
}

fn parse_edge_list(text: &str) -> Result<Framework> {
    #[derive(PartialEq)]
    enum Section {
        Preamble,
        Args,
        Attacks,
    }
    let mut builder = FrameworkBuilder::default();
    let mut section = Section::Preamble;

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('#') {
            match header.trim() {
                "args" | "arguments" => section = Section::Args,
                "attacks" => section = Section::Attacks,
                _ => {}
            }
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match (&section, tokens.as_slice()) {
            (Section::Preamble, _) => {
                return Err(syntax(line_no, "expected `# args` before any content"));
            }
            (Section::Args, [name]) => {
                builder.add_argument(name).map_err(|e| at_line(line_no, e))?;
            }
            (Section::Args | Section::Attacks, [a, b]) => {
                section = Section::Attacks;
                builder.add_attack(a, b)?;
            }
            _ => {
                return Err(syntax(
                    line_no,
                    format!("expected one name or a `src tgt` pair, found `{line}`"),
                ))
            }
        }
    }
    Ok(builder.build())
}
