//! Plain-text code files: one generator per line as a `0`/`1` string.
//! Blank lines and lines starting with `#` are skipped. Column `i` is
//! coordinate `i`. The zero code is written as a single all-zero row so the
//! length survives a round trip.

use super::{BinaryWord, LinearCode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct TextError {
    pub line: usize,
    pub message: String,
}

impl TextError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// A generator row together with its 1-based source line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceRow {
    pub line: usize,
    pub word: BinaryWord,
}

/// Parses generator lines, checking that all rows share one length.
/// `first_line` is the 1-based line number of the first entry of `lines`.
pub fn parse_rows<'a>(
    lines: impl IntoIterator<Item = &'a str>,
    first_line: usize,
) -> Result<Vec<SourceRow>, TextError> {
    let mut rows: Vec<SourceRow> = Vec::new();
    for (offset, raw) in lines.into_iter().enumerate() {
        let line = first_line + offset;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let word = BinaryWord::parse(text).map_err(|e| TextError::new(line, e.to_string()))?;
        if let Some(first) = rows.first() {
            if first.word.len() != word.len() {
                return Err(TextError::new(
                    line,
                    format!(
                        "row has length {} but line {} has length {}",
                        word.len(),
                        first.line,
                        first.word.len()
                    ),
                ));
            }
        }
        rows.push(SourceRow { line, word });
    }
    Ok(rows)
}

/// Parses a whole code file.
pub fn parse_code(text: &str) -> Result<LinearCode, TextError> {
    let rows = parse_rows(text.lines(), 1)?;
    let Some(first) = rows.first() else {
        return Err(TextError::new(
            1,
            "no generator rows; write an all-zero row for the zero code",
        ));
    };
    let words: Vec<BinaryWord> = rows.iter().map(|r| r.word).collect();
    LinearCode::from_generators(first.word.len(), &words)
        .map_err(|e| TextError::new(first.line, e.to_string()))
}

/// Renders a code in the file format (canonical generators).
pub fn render_code(code: &LinearCode) -> String {
    let mut out = String::new();
    if code.dimension() == 0 {
        out.push_str(&"0".repeat(code.length()));
        out.push('\n');
    }
    for g in code.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blanks_skipped() {
        let c = parse_code("# RM(1,2)\n\n1111\n  0101 \n# tail\n0011\n").unwrap();
        assert_eq!(c.length(), 4);
        assert_eq!(c.dimension(), 3);
    }

    #[test]
    fn ragged_rows_report_line() {
        let err = parse_code("1100\n\n110\n").unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn bad_character_reports_line() {
        let err = parse_code("1100\n1020\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("position 2"), "{}", err.message);
    }

    #[test]
    fn zero_code_round_trips() {
        let z = LinearCode::zero(6).unwrap();
        assert_eq!(parse_code(&render_code(&z)).unwrap(), z);
        assert!(parse_code("# nothing\n").is_err());
    }
}
