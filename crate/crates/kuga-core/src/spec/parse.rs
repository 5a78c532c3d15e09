//! Line-oriented parser for the group specification format.
//!
//! Every diagnostic carries a 1-based line and column.

use std::collections::BTreeMap;

use super::{
    BuildOptions, GroupSpec, RawFactor, RawSig, RawSpec, SatakeType, SpecError,
};

/// Parse and validate a complete specification.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecError> {
    parse_group_spec_with(text, BuildOptions::default())
}

pub fn parse_group_spec_with(
    text: &str,
    opts: BuildOptions,
) -> Result<GroupSpec, SpecError> {
    let raw = parse_raw(text)?;
    raw.build_with(opts)
}

/// Parse without semantic validation.
pub fn parse_raw(text: &str) -> Result<RawSpec, SpecError> {
    let mut raw = RawSpec::default();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let content = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        if content.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(content, lineno);
        let (word, col) = cur.word()?;
        match word.as_str() {
            "factor" => raw.factors.push(parse_factor_line(&mut cur)?),
            "galois" => raw.generators.push(parse_galois_line(&mut cur)?),
            other => {
                return Err(SpecError::Syntax {
                    line: lineno,
                    col,
                    msg: format!(
                        "unknown directive `{other}` (expected `factor` or `galois`)"
                    ),
                })
            }
        }
    }
    Ok(raw)
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor { text, pos: 0, line }
    }

    fn err(&self, col: usize, msg: impl Into<String>) -> SpecError {
        SpecError::Syntax {
            line: self.line,
            col,
            msg: msg.into(),
        }
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len()
            && self.text.as_bytes()[self.pos].is_ascii_whitespace()
        {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    /// Next whitespace-delimited token (used for directives and factor
    /// names).  Returns the token and its 1-based start column.
    fn word(&mut self) -> Result<(String, usize), SpecError> {
        self.skip_ws();
        let start = self.pos;
        if start >= self.text.len() {
            return Err(self.err(self.col(), "unexpected end of line"));
        }
        while self.pos < self.text.len()
            && !self.text.as_bytes()[self.pos].is_ascii_whitespace()
        {
            self.pos += 1;
        }
        Ok((self.text[start..self.pos].to_string(), start + 1))
    }

    /// `key=value` field where the value extends to the next whitespace
    /// (values never contain spaces except inside galois cycles, which
    /// use `rest()` instead).
    fn field(&mut self) -> Result<(String, String, usize), SpecError> {
        let (tok, col) = self.word()?;
        match tok.split_once('=') {
            Some((k, v)) if !k.is_empty() && !v.is_empty() => {
                Ok((k.to_string(), v.to_string(), col))
            }
            _ => Err(self.err(col, format!("expected `key=value`, found `{tok}`"))),
        }
    }

    /// Remainder of the line from the next non-space character.
    fn rest(&mut self) -> (&'a str, usize) {
        self.skip_ws();
        let start = self.pos;
        self.pos = self.text.len();
        (self.text[start..].trim_end(), start + 1)
    }
}

fn parse_factor_line(cur: &mut Cursor<'_>) -> Result<RawFactor, SpecError> {
    let (name, name_col) = cur.word()?;
    if name.contains('=') {
        return Err(cur.err(name_col, "factor name must come before any `key=value`"));
    }
    let mut satake_type = None;
    let mut n = None;
    let mut embeddings: Option<Vec<String>> = None;
    let mut sigs: BTreeMap<String, RawSig> = BTreeMap::new();
    while !cur.at_end() {
        let (key, value, col) = cur.field()?;
        match key.as_str() {
            "type" => {
                let t = match value.as_str() {
                    "I" => SatakeType::I,
                    "II" => SatakeType::II,
                    "III" => SatakeType::III,
                    "IV" => SatakeType::IV,
                    other => {
                        return Err(cur.err(
                            col,
                            format!("unknown type `{other}` (expected I, II, III or IV)"),
                        ))
                    }
                };
                if satake_type.replace(t).is_some() {
                    return Err(cur.err(col, "duplicate `type=` field"));
                }
            }
            "n" => {
                let v: u32 = value
                    .parse()
                    .map_err(|_| cur.err(col, format!("`n={value}` is not an integer")))?;
                if n.replace(v).is_some() {
                    return Err(cur.err(col, "duplicate `n=` field"));
                }
            }
            "embeddings" => {
                let list: Vec<String> =
                    value.split(',').map(|s| s.trim().to_string()).collect();
                if list.iter().any(|s| s.is_empty()) {
                    return Err(cur.err(col, "empty label in `embeddings=` list"));
                }
                if embeddings.replace(list).is_some() {
                    return Err(cur.err(col, "duplicate `embeddings=` field"));
                }
            }
            k if k.starts_with("sig(") => {
                let label = k
                    .strip_prefix("sig(")
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| {
                        cur.err(col, format!("malformed signature key `{k}`"))
                    })?;
                if label.is_empty() {
                    return Err(cur.err(col, "empty embedding label in `sig()`"));
                }
                let sig = parse_sig_value(&value)
                    .ok_or_else(|| {
                        cur.err(
                            col,
                            format!(
                                "signature `{value}` must be `(p,q)` or `compact`"
                            ),
                        )
                    })?;
                if sigs.insert(label.to_string(), sig).is_some() {
                    return Err(cur.err(
                        col,
                        format!("duplicate signature for embedding `{label}`"),
                    ));
                }
            }
            other => {
                return Err(cur.err(col, format!("unknown factor field `{other}`")));
            }
        }
    }
    let satake_type = satake_type
        .ok_or_else(|| cur.err(cur.col(), format!("factor `{name}` is missing `type=`")))?;
    let n =
        n.ok_or_else(|| cur.err(cur.col(), format!("factor `{name}` is missing `n=`")))?;
    let embeddings = embeddings.ok_or_else(|| {
        cur.err(cur.col(), format!("factor `{name}` is missing `embeddings=`"))
    })?;
    Ok(RawFactor {
        name,
        satake_type,
        n,
        embeddings,
        sigs,
    })
}

fn parse_sig_value(value: &str) -> Option<RawSig> {
    if value == "compact" {
        return Some(RawSig::CompactWord);
    }
    let inner = value.strip_prefix('(')?.strip_suffix(')')?;
    let (p, q) = inner.split_once(',')?;
    Some(RawSig::Pair(
        p.trim().parse().ok()?,
        q.trim().parse().ok()?,
    ))
}

fn parse_galois_line(cur: &mut Cursor<'_>) -> Result<Vec<Vec<String>>, SpecError> {
    let (rest, col) = cur.rest();
    let value = rest.strip_prefix("perm=").ok_or_else(|| {
        cur.err(col, "galois line must read `galois perm=(…)(…)`")
    })?;
    let line = cur.line;
    parse_cycles(value, line, col + "perm=".len())
}

/// Parse cycle notation `(a b c)(d e)`; labels separated by spaces or
/// commas inside each parenthesized cycle.
fn parse_cycles(
    s: &str,
    line: usize,
    start_col: usize,
) -> Result<Vec<Vec<String>>, SpecError> {
    let err = |off: usize, msg: String| SpecError::Syntax {
        line,
        col: start_col + off,
        msg,
    };
    let bytes = s.as_bytes();
    let mut cycles = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if bytes[i] != b'(' {
            return Err(err(i, format!("expected `(`, found `{}`", &s[i..i + 1])));
        }
        let close = s[i..]
            .find(')')
            .map(|j| i + j)
            .ok_or_else(|| err(i, "unclosed cycle `(`".into()))?;
        let inner = &s[i + 1..close];
        let labels: Vec<String> = inner
            .split(|c: char| c.is_ascii_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.to_string())
            .collect();
        if labels.is_empty() {
            return Err(err(i, "empty cycle `()`".into()));
        }
        cycles.push(labels);
        i = close + 1;
    }
    if cycles.is_empty() {
        return Err(err(0, "galois permutation has no cycles".into()));
    }
    Ok(cycles)
}
