//! Operation chains for `pbc transform`, e.g.
//! `minimal-lift; pseudo-twist-up f1; twist s - e1`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "op", content = "arg", rename_all = "kebab-case")]
pub enum Op {
    Pullback,
    Shriek,
    MinimalLift,
    /// Divisor expression, parsed once the stage of the class is known.
    Twist(String),
    /// 0-based component index.
    PseudoTwistUp(usize),
    PseudoTwistDown(usize),
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Pullback => f.write_str("pullback"),
            Op::Shriek => f.write_str("shriek"),
            Op::MinimalLift => f.write_str("minimal-lift"),
            Op::Twist(d) => write!(f, "twist {d}"),
            Op::PseudoTwistUp(k) => write!(f, "pseudo-twist-up f{}", k + 1),
            Op::PseudoTwistDown(k) => write!(f, "pseudo-twist-down f{}", k + 1),
        }
    }
}

fn component(arg: &str, op: &str) -> Result<usize> {
    let k = arg
        .strip_prefix('f')
        .and_then(|k| k.parse::<usize>().ok())
        .filter(|&k| k >= 1)
        .ok_or_else(|| {
            Error::Parse(format!(
                "`{op}` expects a component `fK` with K >= 1, got `{arg}`"
            ))
        })?;
    Ok(k - 1)
}

impl FromStr for Op {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (head, arg) = match text.split_once(char::is_whitespace) {
            Some((h, a)) => (h, a.trim()),
            None => (text, ""),
        };
        let no_arg = |op: Op| {
            if arg.is_empty() {
                Ok(op)
            } else {
                Err(Error::Parse(format!(
                    "`{head}` takes no argument, got `{arg}`"
                )))
            }
        };
        match head {
            "pullback" => no_arg(Op::Pullback),
            "shriek" => no_arg(Op::Shriek),
            "minimal-lift" => no_arg(Op::MinimalLift),
            "twist" if arg.is_empty() => Err(Error::Parse("`twist` needs a divisor".into())),
            "twist" => Ok(Op::Twist(arg.to_string())),
            "pseudo-twist-up" => component(arg, head).map(Op::PseudoTwistUp),
            "pseudo-twist-down" => component(arg, head).map(Op::PseudoTwistDown),
            _ => Err(Error::Parse(format!("unknown operation `{head}`"))),
        }
    }
}

/// Splits on `;` and parses each operation. Empty segments are skipped; an
/// all-empty chain is an error.
pub fn parse_chain(text: &str) -> Result<Vec<Op>> {
    let ops = text
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Op>>>()?;
    if ops.is_empty() {
        return Err(Error::Parse("empty operation chain".into()));
    }
    Ok(ops)
}
