use super::Poset;
use crate::error::{Error, Result};
use std::collections::HashSet;

/// Parses the line-oriented poset format:
///
/// ```text
/// elements: a b c
/// covers:
/// a b
/// a c
/// ```
///
/// Blank lines and lines starting with `#` are ignored. Each cover line
/// `x y` states that `y` covers `x`.
pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing `elements:` line".into(),
    })?;
    let rest = header.strip_prefix("elements:").ok_or(Error::Parse {
        line: line_no,
        message: "expected `elements:`".into(),
    })?;
    let names: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
    let mut seen = HashSet::new();
    for n in &names {
        if !seen.insert(n.as_str()) {
            return Err(Error::DuplicateElement(n.clone()));
        }
    }

    let (line_no, covers_header) = lines.next().ok_or(Error::Parse {
        line: line_no + 1,
        message: "missing `covers:` line".into(),
    })?;
    if covers_header != "covers:" {
        return Err(Error::Parse { line: line_no, message: "expected `covers:`".into() });
    }

    let lookup = |name: &str| {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UndeclaredElement(name.to_owned()))
    };
    let mut covers = Vec::new();
    let mut declared = HashSet::new();
    for (line_no, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [lo, hi] = tokens[..] else {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected two element names, found `{line}`"),
            });
        };
        let pair = (lookup(lo)?, lookup(hi)?);
        if !declared.insert(pair) {
            return Err(Error::DuplicateCover(lo.to_owned(), hi.to_owned()));
        }
        covers.push(pair);
    }
    Poset::from_covers(names, &covers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_chain() {
        let p = parse_poset("elements: a b\ncovers:\na b").unwrap();
        assert!(p.leq(0, 1));
        assert!(!p.leq(1, 0));
        assert_eq!(p.names(), &["a", "b"]);
    }

    #[test]
    fn antichain() {
        let p = parse_poset("elements: a b\ncovers:").unwrap();
        assert!(!p.comparable(0, 1));
    }

    #[test]
    fn comments_and_blank_lines() {
        let p = parse_poset("# diamond\nelements: 0 a b 1\n\ncovers:\n0 a\n# x\n0 b\na 1\nb 1\n")
            .unwrap();
        assert_eq!(p.length(0, 3).unwrap(), 2);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_poset("elements: a b\ncovers:\na b\nb a"),
            Err(Error::Cycle(_))
        ));
        assert!(matches!(
            parse_poset("elements: a b\ncovers:\na c"),
            Err(Error::UndeclaredElement(n)) if n == "c"
        ));
        assert!(matches!(
            parse_poset("elements: a b\ncovers:\na b\na b"),
            Err(Error::DuplicateCover(..))
        ));
        assert!(matches!(parse_poset("covers:"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poset("elements: a\nfoo"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_poset("elements: a b\ncovers:\na b c"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_poset("elements: a a\ncovers:"), Err(Error::DuplicateElement(_))));
    }

    #[test]
    fn text_round_trip() {
        let p = parse_poset("elements: x y z\ncovers:\nx y\nx z").unwrap();
        assert_eq!(parse_poset(&p.to_text()).unwrap(), p);
    }
}
