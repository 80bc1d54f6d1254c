//! Group spec files: `key = value` lines, `#` comments.
//!
//! ```text
//! blocks = 1 3 3 1
//! kinds  = id sl sl id   # optional; default: id at both ends, sl inside
//! prime  = 2             # optional
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::nilpotent::{is_prime, BlockKind, BlockPattern, PatternError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecFile {
    pub blocks: Vec<usize>,
    /// `None` means the standard kinds for `blocks`.
    pub kinds: Option<Vec<BlockKind>>,
    pub prime: Option<u64>,
}

/// A parse error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> SpecError {
    SpecError { line, column, message: message.into() }
}

/// Whitespace-separated tokens of `s` with their 1-based columns, offset by `base`.
fn tokens(s: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices().chain(std::iter::once((s.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((base + s[..st].chars().count(), &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

pub fn parse_spec(text: &str) -> Result<SpecFile, SpecError> {
    let mut blocks: Option<(usize, Vec<usize>)> = None;
    let mut kinds: Option<(usize, usize, Vec<BlockKind>)> = None;
    let mut prime = None;
    let mut last_line = 0;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            let col = content.chars().take_while(|c| c.is_whitespace()).count() + 1;
            return Err(err(line, col, "expected `key = value`"));
        };
        let key_part = &content[..eq];
        let key_tokens = tokens(key_part, 1);
        let value_col = content[..eq].chars().count() + 2;
        let (key_col, key) = match key_tokens.as_slice() {
            [(c, k)] => (*c, *k),
            [] => return Err(err(line, 1, "missing key before `=`")),
            [_, (c, _), ..] => return Err(err(line, *c, "key must be a single word")),
        };
        let values = tokens(&content[eq + 1..], value_col);
        if values.is_empty() {
            return Err(err(line, value_col, format!("`{key}` needs a value")));
        }
        let duplicate = || err(line, key_col, format!("duplicate key `{key}`"));
        match key {
            "blocks" => {
                if blocks.is_some() {
                    return Err(duplicate());
                }
                let mut sizes = Vec::new();
                for (col, tok) in &values {
                    match tok.parse::<usize>() {
                        Ok(n) if n > 0 => sizes.push(n),
                        _ => return Err(err(line, *col, format!("block size must be a positive integer, got `{tok}`"))),
                    }
                }
                blocks = Some((line, sizes));
            }
            "kinds" => {
                if kinds.is_some() {
                    return Err(duplicate());
                }
                let mut ks = Vec::new();
                for (col, tok) in &values {
                    match *tok {
                        "id" => ks.push(BlockKind::Identity),
                        "sl" => ks.push(BlockKind::SL),
                        _ => return Err(err(line, *col, format!("kind must be `id` or `sl`, got `{tok}`"))),
                    }
                }
                kinds = Some((line, key_col, ks));
            }
            "prime" => {
                if prime.is_some() {
                    return Err(duplicate());
                }
                let (col, tok) = values[0];
                if let Some((c, _)) = values.get(1) {
                    return Err(err(line, *c, "`prime` takes a single value"));
                }
                match tok.parse::<u64>() {
                    Ok(p) if is_prime(p) => prime = Some(p),
                    Ok(p) => return Err(err(line, col, format!("{p} is not prime"))),
                    Err(_) => return Err(err(line, col, format!("prime must be a positive integer, got `{tok}`"))),
                }
            }
            other => return Err(err(line, key_col, format!("unknown key `{other}`"))),
        }
    }
    let Some((_, blocks)) = blocks else {
        return Err(err(last_line.max(1), 1, "missing `blocks`"));
    };
    if let Some((line, col, ks)) = &kinds {
        if ks.len() != blocks.len() {
            return Err(err(*line, *col, format!("{} kinds for {} blocks", ks.len(), blocks.len())));
        }
    }
    let spec = SpecFile { blocks, kinds: kinds.map(|(_, _, k)| k), prime };
    // remaining structural checks (at least two blocks, ...)
    spec.to_pattern().map_err(|e| err(1, 1, e.to_string()))?;
    Ok(spec)
}

impl SpecFile {
    pub fn to_pattern(&self) -> Result<BlockPattern, PatternError> {
        match &self.kinds {
            Some(k) => BlockPattern::new(self.blocks.clone(), k.clone(), self.prime),
            None => {
                let p = BlockPattern::standard(&self.blocks)?;
                match self.prime {
                    Some(q) => p.with_prime(q),
                    None => Ok(p),
                }
            }
        }
    }

    pub fn from_pattern(p: &BlockPattern) -> SpecFile {
        SpecFile { blocks: p.sizes().to_vec(), kinds: Some(p.kinds().to_vec()), prime: p.prime() }
    }
}

impl FromStr for SpecFile {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<SpecFile, SpecError> {
        parse_spec(s)
    }
}

impl fmt::Display for SpecFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<String>| v.join(" ");
        writeln!(f, "blocks = {}", join(self.blocks.iter().map(usize::to_string).collect()))?;
        if let Some(k) = &self.kinds {
            writeln!(f, "kinds = {}", join(k.iter().map(BlockKind::to_string).collect()))?;
        }
        if let Some(p) = self.prime {
            writeln!(f, "prime = {p}")?;
        }
        Ok(())
    }
}
