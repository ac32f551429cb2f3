use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::framework::Framework;
use crate::models::social::{SocialFramework, VoteTally};
use crate::valuation::Valuation;

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

/// Splits `name value` or `name,value`; `#` starts a comment.
fn fields(raw: &str) -> Vec<&str> {
    let line = raw.split('#').next().unwrap_or("");
    line.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect()
}

fn parse_unit(line: usize, name: &str, token: &str) -> Result<f64> {
    let value: f64 = token
        .parse()
        .map_err(|_| syntax(line, format!("`{token}` is not a number")))?;
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::ValueOutOfRange {
            argument: name.to_string(),
            value,
        });
    }
    Ok(value)
}

/// One `name value` (or `name,value`) per line plus an optional
/// `default value` line (½ if absent) for unlisted arguments.
pub fn parse_initial_values(text: &str, fw: &Framework) -> Result<Valuation> {
    let mut values: Vec<Option<f64>> = vec![None; fw.len()];
    let mut default = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        match fields(raw).as_slice() {
            [] => {}
            ["default", v] => {
                if default.is_some() {
                    return Err(Error::DuplicateEntry("default".into()));
                }
                default = Some(parse_unit(line, "default", v)?);
            }
            [name, v] => {
                let x = fw.id(name)?;
                let value = parse_unit(line, name, v)?;
                if values[x].replace(value).is_some() {
                    return Err(Error::DuplicateEntry(name.to_string()));
                }
            }
            _ => return Err(syntax(line, format!("expected `name value`, found `{}`", raw.trim()))),
        }
    }
    let default = default.unwrap_or(0.5);
    Valuation::new(fw, values.into_iter().map(|v| v.unwrap_or(default)).collect())
}

fn parse_count(line: usize, token: &str) -> Result<u64> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("`{token}` is not a vote count")))
}

/// `arg <name> <pos> <neg>` and `att <src> <tgt> <pos> <neg>` lines. Every
/// argument needs votes; attacks without votes keep support 1.
pub fn parse_votes(text: &str, fw: &Framework, epsilon: f64) -> Result<SocialFramework> {
    let mut arg_votes: Vec<Option<VoteTally>> = vec![None; fw.len()];
    let mut att_votes = Vec::new();
    let mut seen_attacks = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        match fields(raw).as_slice() {
            [] => {}
            ["arg", name, p, m] => {
                let x = fw.id(name)?;
                let t = VoteTally::new(parse_count(line, p)?, parse_count(line, m)?);
                if arg_votes[x].replace(t).is_some() {
                    return Err(Error::DuplicateEntry(name.to_string()));
                }
            }
            ["att", s, t, p, m] => {
                if !seen_attacks.insert((s.to_string(), t.to_string())) {
                    return Err(Error::DuplicateEntry(format!("{s} -> {t}")));
                }
                att_votes.push((line, *s, *t, VoteTally::new(parse_count(line, p)?, parse_count(line, m)?)));
            }
            _ => return Err(syntax(line, format!("unrecognised vote line `{}`", raw.trim()))),
        }
    }
    let arg_votes = arg_votes
        .into_iter()
        .enumerate()
        .map(|(x, t)| t.ok_or_else(|| Error::InvalidParameter(format!("no votes for argument {}", fw.name(x)))))
        .collect::<Result<Vec<_>>>()?;
    let mut sf = SocialFramework::new(fw.clone(), arg_votes, epsilon)?;
    for (line, s, t, votes) in att_votes {
        sf.set_attack_votes(s, t, votes).map_err(|e| match e {
            Error::InvalidParameter(m) => syntax(line, m),
            other => other,
        })?;
    }
    Ok(sf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn initial_values() {
        let fw = fixtures::fig6();
        let v = parse_initial_values("X 0\nY 1\nW 1\nZ 0", &fw).unwrap();
        assert_eq!(v.values(), &[0.0, 1.0, 1.0, 0.0]);
        let v = parse_initial_values("default 0.5\n", &fw).unwrap();
        assert_eq!(v.values(), &[0.5; 4]);
        let v = parse_initial_values("# seed\nX,1 # source\ndefault 0\n", &fw).unwrap();
        assert_eq!(v.values(), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(parse_initial_values("", &fw).unwrap().values(), &[0.5; 4]);
    }

    #[test]
    fn initial_value_errors() {
        let fw = fixtures::fig6();
        assert!(matches!(
            parse_initial_values("X 1.5", &fw),
            Err(Error::ValueOutOfRange { .. })
        ));
        assert!(matches!(parse_initial_values("Q 1", &fw), Err(Error::UnknownArgument(_))));
        assert!(matches!(parse_initial_values("X 1\nX 0", &fw), Err(Error::DuplicateEntry(_))));
        assert!(matches!(parse_initial_values("X one", &fw), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_initial_values("X 1 2", &fw), Err(Error::Syntax { .. })));
    }

    #[test]
    fn votes() {
        let fw = fixtures::two_cycle("X", "Y");
        let sf = parse_votes("arg X 1 0\narg Y 1 0\natt X Y 3 1\n", &fw, 0.5).unwrap();
        assert_eq!(sf.argument_support(), vec![1.0 / 1.5; 2]);
        assert!(parse_votes("arg X 1 0\n", &fw, 0.5).is_err());
        assert!(parse_votes("arg X 1 0\narg Y 1 0\natt Y Y 1 1\n", &fw, 0.5).is_err());
        assert!(parse_votes("arg X 1 0\narg Y -1 0\n", &fw, 0.5).is_err());
        assert!(parse_votes("arg X 1 0\narg Y 1 0\n", &fw, 0.0).is_err());
    }
}
