//! The textual poset format and its JSON counterpart.
//!
//! ```text
//! # the three-element example
//! elements: a b c;
//! order: a<c b<c
//! ```
//!
//! Identifiers are case-sensitive and their order fixes element indices.
//! `order` lists strict relations; chains such as `a<b<c` are accepted. The
//! poset is the reflexive-transitive closure of the listed pairs.

use convlab_core::Poset;

use crate::error::{LabError, Result};
use crate::formats::PosetJson;

/// Parse the DSL, or the JSON schema when the text starts with `{`.
pub fn parse_poset(text: &str) -> Result<Poset> {
    if text.trim_start().starts_with('{') {
        let json: PosetJson = serde_json::from_str(text)?;
        return json.to_poset();
    }
    let mut elements: Option<Vec<String>> = None;
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut seen_order = false;
    for (line, section) in sections(text) {
        let (key, body) = section.split_once(':').ok_or_else(|| LabError::Parse {
            line,
            msg: format!("expected `elements:` or `order:`, found `{}`", section.trim()),
        })?;
        match key.trim() {
            "elements" if elements.is_none() => {
                let ids: Vec<String> = body.split_whitespace().map(str::to_string).collect();
                if ids.is_empty() {
                    return Err(LabError::Parse { line, msg: "no elements declared".into() });
                }
                if let Some(bad) = ids.iter().find(|id| !valid_identifier(id)) {
                    return Err(LabError::Parse { line, msg: format!("invalid identifier `{bad}`") });
                }
                elements = Some(ids);
            }
            "order" if !seen_order => {
                if elements.is_none() {
                    return Err(LabError::Parse { line, msg: "`order` before `elements`".into() });
                }
                seen_order = true;
                pairs.extend(parse_order(body, line)?);
            }
            other => {
                return Err(LabError::Parse {
                    line,
                    msg: format!("unexpected or repeated section `{other}`"),
                })
            }
        }
    }
    let elements = elements.ok_or(LabError::Parse { line: 1, msg: "missing `elements:`".into() })?;
    build(&elements, &pairs)
}

/// Split into sections after removing `#` comments. A section ends at `;` or
/// where a line opens with a section keyword. Each section keeps its starting
/// line number.
fn sections(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut current = (1, String::new());
    let mut flush = |current: &mut (usize, String), next_line: usize| {
        let done = std::mem::replace(current, (next_line, String::new()));
        if !done.1.trim().is_empty() {
            out.push(done);
        }
    };
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let opens = ["elements", "order"]
            .iter()
            .any(|k| line.trim_start().strip_prefix(k).is_some_and(|r| r.trim_start().starts_with(':')));
        if opens || current.1.trim().is_empty() {
            flush(&mut current, i + 1);
        }
        for (k, piece) in line.split(';').enumerate() {
            if k > 0 {
                flush(&mut current, i + 1);
            }
            current.1.push_str(piece);
            current.1.push(' ');
        }
    }
    flush(&mut current, 0);
    out
}

fn parse_order(body: &str, line: usize) -> Result<Vec<(String, String)>> {
    let spaced = body.replace('<', " < ");
    let tokens: Vec<&str> = spaced.split_whitespace().collect();
    let mut pairs = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let lhs = tokens[i];
        if lhs == "<" || tokens.get(i + 1) != Some(&"<") {
            return Err(LabError::Parse { line, msg: format!("expected `x<y` near `{lhs}`") });
        }
        let mut prev = lhs;
        i += 1;
        while tokens.get(i) == Some(&"<") {
            let rhs = match tokens.get(i + 1) {
                Some(&t) if t != "<" => t,
                _ => return Err(LabError::Parse { line, msg: format!("dangling `<` after `{prev}`") }),
            };
            pairs.push((prev.to_string(), rhs.to_string()));
            prev = rhs;
            i += 2;
        }
    }
    Ok(pairs)
}

fn valid_identifier(id: &str) -> bool {
    !id.is_empty() && !id.contains(['<', ';', ':', '#', ',', '{', '}'])
}

/// Close `pairs` transitively over `elements`, rejecting duplicates, unknown
/// names and cycles.
pub(crate) fn build(elements: &[String], pairs: &[(String, String)]) -> Result<Poset> {
    for (i, e) in elements.iter().enumerate() {
        if elements[..i].contains(e) {
            return Err(LabError::DuplicateLabel(e.clone()));
        }
    }
    let index = |name: &str| {
        elements.iter().position(|e| e == name).ok_or_else(|| LabError::UnknownElement(name.to_string()))
    };
    let covers = pairs.iter().map(|(a, b)| Ok((index(a)?, index(b)?))).collect::<Result<Vec<_>>>()?;
    Ok(Poset::from_covers(elements.len(), &covers)?.with_labels(elements.iter().cloned())?)
}

/// The DSL text of `p`, listing its covers.
pub fn serialize_poset(p: &Poset) -> String {
    let order: Vec<String> =
        p.covers().into_iter().map(|(x, y)| format!("{}<{}", p.label(x), p.label(y))).collect();
    let elements = format!("elements: {}", p.labels().join(" "));
    if order.is_empty() {
        elements
    } else {
        format!("{elements}; order: {}", order.join(" "))
    }
}
