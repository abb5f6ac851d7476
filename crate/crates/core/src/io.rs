//! Plain-text group files:
//!
//! ```text
//! # Sym(3)
//! degree 3
//! (1 2 3)
//! (1 2)
//! ```
//!
//! Blank lines and `#` comments are ignored; `()` is the identity.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Perm;

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let at = |msg: String| Error::Parse { line: Some(line_no), msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("degree") {
            if degree.is_some() {
                return Err(at("repeated degree line".into()));
            }
            let d: usize = rest.trim().parse().map_err(|_| at(format!("bad degree {:?}", rest.trim())))?;
            if d == 0 {
                return Err(at("degree must be positive".into()));
            }
            degree = Some(d);
            continue;
        }
        let Some(d) = degree else {
            return Err(at("expected `degree N` before the first generator".into()));
        };
        let g = Perm::parse(d, line).map_err(|e| match e {
            Error::Parse { msg, .. } => at(msg),
            other => at(other.to_string()),
        })?;
        gens.push(g);
    }
    let degree = degree.ok_or_else(|| Error::Parse { line: None, msg: "missing `degree N` line".into() })?;
    FiniteGroup::with_degree(degree, gens)
}

pub fn read_group(path: &Path) -> Result<FiniteGroup> {
    parse_group(&std::fs::read_to_string(path)?)
}

pub fn format_group(g: &FiniteGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for s in g.generators() {
        let _ = writeln!(out, "{s}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let g = parse_group("# S3\n\ndegree 3\n(1 2 3)  # rotation\n(1,2)\n").unwrap();
        assert_eq!(g.order(), 6);
        let t = parse_group("degree 4\n()\n").unwrap();
        assert!(t.is_trivial());
        assert_eq!(t.degree(), 4);
        assert_eq!(parse_group(&format_group(&g)).unwrap(), g);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let line = |text: &str| match parse_group(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        };
        assert_eq!(line("degree 3\n(1 2)\n(1 4)\n"), Some(3));
        assert_eq!(line("\n(1 2)\n"), Some(2));
        assert_eq!(line("degree x\n"), Some(1));
        assert_eq!(line("degree 3\n(1 2\n"), Some(2));
        assert_eq!(line("# nothing\n"), None);
    }
}
