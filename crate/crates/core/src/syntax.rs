//! Text format for equation systems.
//!
//! ```text
//! # comment
//! alphabet: a b c
//! mode: thue
//! null: abbcab
//! abbc <-> bcab
//! abbca <-> cabab
//! ```
//!
//! `alphabet:` comes first. `mode:` (`thue` or `semi`) and `null:` are
//! optional and precede the equations. Equations use `<->` in Thue mode and
//! `->` in semi-Thue mode; without a `mode:` line the arrows decide.

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::nullseq::NullSystem;
use crate::rewrite::{Equation, EquationSystem, Mode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFile {
    pub system: EquationSystem,
    pub null: Option<Word>,
}

impl SystemFile {
    pub fn null_system(&self) -> Result<NullSystem> {
        let r = self.null.clone().ok_or_else(|| Error::Invalid("no null: line".into()))?;
        NullSystem::new(r, self.system.clone())
    }
}

impl From<&NullSystem> for SystemFile {
    fn from(ns: &NullSystem) -> Self {
        SystemFile { system: ns.eqs.clone(), null: Some(ns.r.clone()) }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_system(text: &str) -> Result<SystemFile> {
    let mut alphabet: Option<Alphabet> = None;
    let mut mode: Option<Mode> = None;
    let mut null = None;
    let mut equations = Vec::new();
    let mut arrows: Option<(Mode, usize)> = None;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("alphabet:") {
            if alphabet.is_some() {
                return Err(parse_err(line_no, "second alphabet: line"));
            }
            let names: Vec<&str> = rest.split_whitespace().collect();
            alphabet = Some(Alphabet::new(names).map_err(|e| parse_err(line_no, e.to_string()))?);
            continue;
        }
        let Some(ab) = alphabet.as_ref() else {
            return Err(parse_err(line_no, "expected alphabet: before anything else"));
        };
        let word = |s: &str| ab.parse_word(s).map_err(|e| parse_err(line_no, e.to_string()));
        if let Some(rest) = line.strip_prefix("mode:") {
            if !equations.is_empty() || mode.is_some() {
                return Err(parse_err(line_no, "mode: must appear once, before the equations"));
            }
            mode = Some(match rest.trim() {
                "thue" => Mode::Thue,
                "semi" => Mode::SemiThue,
                other => return Err(parse_err(line_no, format!("unknown mode {other:?}"))),
            });
            continue;
        }
        if let Some(rest) = line.strip_prefix("null:") {
            if !equations.is_empty() || null.is_some() {
                return Err(parse_err(line_no, "null: must appear once, before the equations"));
            }
            null = Some(word(rest)?);
            continue;
        }
        let (lhs, rhs, arrow) = if let Some((l, r)) = line.split_once("<->") {
            (l, r, Mode::Thue)
        } else if let Some((l, r)) = line.split_once("->") {
            (l, r, Mode::SemiThue)
        } else {
            return Err(parse_err(line_no, "expected an equation with <-> or ->"));
        };
        match (mode, arrows) {
            (Some(m), _) if m != arrow => {
                return Err(parse_err(line_no, "arrow does not match the declared mode"));
            }
            (None, Some((m, first))) if m != arrow => {
                return Err(parse_err(line_no, format!("arrow differs from the one on line {first}")));
            }
            _ => {}
        }
        arrows.get_or_insert((arrow, line_no));
        let eq = Equation::new(word(lhs)?, word(rhs)?).map_err(|e| parse_err(line_no, e.to_string()))?;
        equations.push(eq);
    }

    let alphabet = alphabet.ok_or_else(|| parse_err(0, "missing alphabet: line"))?;
    let mode = mode.or(arrows.map(|(m, _)| m)).unwrap_or(Mode::Thue);
    let system = EquationSystem::new(alphabet, equations, mode)?;
    Ok(SystemFile { system, null })
}

pub fn render_system(file: &SystemFile) -> String {
    let sys = &file.system;
    let mut out = format!("alphabet: {}\n", sys.alphabet.names().join(" "));
    out.push_str(match sys.mode {
        Mode::Thue => "mode: thue\n",
        Mode::SemiThue => "mode: semi\n",
    });
    if let Some(r) = &file.null {
        out.push_str(&format!("null: {}\n", sys.alphabet.render(r)));
    }
    for e in &sys.equations {
        out.push_str(&sys.render_equation(e));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::example2;

    #[test]
    fn round_trip() {
        let text = "# example\nalphabet: a b c\nnull: abbcab\nabbc <-> bcab  # first\nabbca <-> cabab\n";
        let f = parse_system(text).unwrap();
        assert_eq!(f.system.mode, Mode::Thue);
        assert_eq!(f.system.equations.len(), 2);
        let rendered = render_system(&f);
        assert_eq!(parse_system(&rendered).unwrap(), f);
        assert_eq!(render_system(&parse_system(&rendered).unwrap()), rendered);
        assert_eq!(f.null_system().unwrap(), example2().null_system);
    }

    #[test]
    fn multi_character_names() {
        let f = parse_system("alphabet: x y1 y2\nx y1 -> y2\n").unwrap();
        assert_eq!(f.system.mode, Mode::SemiThue);
        assert_eq!(render_system(&f), "alphabet: x y1 y2\nmode: semi\nx y1 -> y2\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = |t: &str| match parse_system(t) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(bad("ab <-> ba\n"), 1);
        assert_eq!(bad("alphabet: a b\nab <-> ba\nab -> b\n"), 3);
        assert_eq!(bad("alphabet: a b\nmode: semi\nab <-> ba\n"), 3);
        assert_eq!(bad("alphabet: a b\nac <-> ca\n"), 2);
        assert_eq!(bad("alphabet: a b\nab = ba\n"), 2);
        assert_eq!(bad("# nothing\n"), 0);
    }
}
