use super::GoldenError;

/// One blank-line separated block: `key = value` header lines followed by
/// rows of space-separated integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// 1-based line of the first header or row.
    pub line: usize,
    pub header: Vec<(String, String)>,
    pub rows: Vec<Vec<i64>>,
}

impl Block {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.header
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str, GoldenError> {
        self.get(key).ok_or_else(|| GoldenError::Syntax {
            line: self.line,
            msg: format!("missing `{key} = ...` line"),
        })
    }
}

/// Splits golden text into blocks. Lines starting with `#` are ignored.
pub fn parse_blocks(text: &str) -> Result<Vec<Block>, GoldenError> {
    let mut blocks = Vec::new();
    let mut cur: Option<Block> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            blocks.extend(cur.take());
            continue;
        }
        let block = cur.get_or_insert_with(|| Block {
            line: lineno,
            header: vec![],
            rows: vec![],
        });
        if let Some((k, v)) = line.split_once('=') {
            if !block.rows.is_empty() {
                return Err(GoldenError::Syntax {
                    line: lineno,
                    msg: "header line after matrix rows".into(),
                });
            }
            block
                .header
                .push((k.trim().to_string(), v.trim().to_string()));
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| GoldenError::Syntax {
                line: lineno,
                msg: format!("{e}: {line:?}"),
            })?;
        block.rows.push(row);
    }
    blocks.extend(cur);
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_blocks_and_comments() {
        let text = "# head\n\nr = -59/2\n1 2 2\n0 1 2\n\n\nname = x\nr = -1\n2 -2\n# mid\n-2 2\n";
        let b = parse_blocks(text).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].get("r"), Some("-59/2"));
        assert_eq!(b[0].rows, vec![vec![1, 2, 2], vec![0, 1, 2]]);
        assert_eq!(b[0].line, 3);
        assert_eq!(b[1].get("name"), Some("x"));
        assert_eq!(b[1].rows.len(), 2);
        assert!(b[1].require("q").is_err());
    }

    #[test]
    fn syntax_errors() {
        assert!(parse_blocks("r = 1\n1 x 2\n").is_err());
        assert!(parse_blocks("1 2 3\nr = 1\n").is_err());
        assert_eq!(parse_blocks("\n# only comments\n").unwrap(), vec![]);
    }
}
