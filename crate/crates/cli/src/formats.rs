//! Plain-text file formats.
//!
//! ```text
//! symplectic p=<p> n=<n>        graph p=<p> k=<k> n=<n>
//! <2n digits, X part then Z>    <k+n integers per row, inputs first>
//!
//! gram p=<p> m=<m>              transcript p=<p> n=<n>
//! <m rows of m integers>        <one move per line>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;

use graphstab_core::{
    ExtensionBasis, FpMatrix, GraphCode, IsometryTranscript, Move, Prime, SymplecticCode,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses `keyword a=1 b=2` with exactly the listed keys, in order.
fn parse_header(
    line: Option<(usize, &str)>,
    keyword: &str,
    keys: &[&str],
) -> Result<Vec<usize>, ParseError> {
    let Some((no, line)) = line else {
        return err(1, format!("missing `{keyword}` header"));
    };
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some(keyword) {
        return err(no, format!("expected header starting with `{keyword}`"));
    }
    let mut values = Vec::with_capacity(keys.len());
    for key in keys {
        let Some(token) = tokens.next() else {
            return err(no, format!("header is missing `{key}=`"));
        };
        let Some(value) = token.strip_prefix(key).and_then(|t| t.strip_prefix('=')) else {
            return err(no, format!("expected `{key}=<value>`, found `{token}`"));
        };
        match value.parse::<usize>() {
            Ok(v) => values.push(v),
            Err(_) => return err(no, format!("`{key}` must be a non-negative integer")),
        }
    }
    if let Some(extra) = tokens.next() {
        return err(no, format!("unexpected header token `{extra}`"));
    }
    Ok(values)
}

fn parse_prime(line: usize, p: usize) -> Result<Prime, ParseError> {
    u32::try_from(p)
        .ok()
        .and_then(|p| Prime::new(p).ok())
        .map_or_else(|| err(line, format!("p={p} is not a supported prime")), Ok)
}

fn parse_row(line: usize, text: &str, len: usize) -> Result<Vec<i64>, ParseError> {
    let row = text
        .split_whitespace()
        .map(|t| t.parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .or_else(|_| err(line, "expected whitespace-separated integers"))?;
    if row.len() != len {
        return err(line, format!("expected {len} entries, found {}", row.len()));
    }
    Ok(row)
}

fn write_rows<T: fmt::Display>(f: &mut fmt::Formatter<'_>, rows: &[Vec<T>]) -> fmt::Result {
    for row in rows {
        let text: Vec<String> = row.iter().map(T::to_string).collect();
        writeln!(f, "{}", text.join(" "))?;
    }
    Ok(())
}

/// Generator rows of a symplectic code as written in the file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFile {
    pub p: Prime,
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
}

impl CodeFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let first = lines.next();
        let header_line = first.map_or(1, |(no, _)| no);
        let [p, n] = parse_header(first, "symplectic", &["p", "n"])?[..] else {
            unreachable!("two keys requested")
        };
        let p = parse_prime(header_line, p)?;
        if n == 0 {
            return err(header_line, "n must be at least 1");
        }
        let mut rows = Vec::new();
        for (no, line) in lines {
            let row = parse_row(no, line, 2 * n)?;
            if let Some(bad) = row.iter().find(|&&v| v < 0 || v >= p.get() as i64) {
                return err(no, format!("digit {bad} is outside [0, {p})"));
            }
            rows.push(row.into_iter().map(|v| v as u32).collect());
        }
        Ok(CodeFile { p, n, rows })
    }

    pub fn from_code(c: &SymplecticCode) -> Self {
        CodeFile {
            p: c.prime(),
            n: c.n(),
            rows: c.generator().to_rows(),
        }
    }

    pub fn to_code(&self) -> graphstab_core::Result<SymplecticCode> {
        let gen = FpMatrix::from_canonical_rows(self.p, 2 * self.n, &self.rows);
        SymplecticCode::new(self.n, &gen)
    }
}

impl fmt::Display for CodeFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "symplectic p={} n={}", self.p, self.n)?;
        write_rows(f, &self.rows)
    }
}

/// Adjacency rows as written; entries are reduced mod `p` on conversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub p: Prime,
    pub k: usize,
    pub n: usize,
    pub adj: Vec<Vec<i64>>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let first = lines.next();
        let header_line = first.map_or(1, |(no, _)| no);
        let [p, k, n] = parse_header(first, "graph", &["p", "k", "n"])?[..] else {
            unreachable!("three keys requested")
        };
        let p = parse_prime(header_line, p)?;
        if n == 0 {
            return err(header_line, "n must be at least 1");
        }
        let size = k + n;
        let mut adj = Vec::with_capacity(size);
        let mut last = header_line;
        for (no, line) in lines {
            if adj.len() == size {
                return err(no, format!("more than {size} adjacency rows"));
            }
            adj.push(parse_row(no, line, size)?);
            last = no;
        }
        if adj.len() != size {
            return err(
                last,
                format!("expected {size} adjacency rows, found {}", adj.len()),
            );
        }
        Ok(GraphFile { p, k, n, adj })
    }

    pub fn from_graph(g: &GraphCode) -> Self {
        let adj = g.adjacency();
        GraphFile {
            p: g.prime(),
            k: g.k(),
            n: g.n(),
            adj: (0..adj.rows())
                .map(|r| adj.row(r).iter().map(|&v| v as i64).collect())
                .collect(),
        }
    }

    pub fn to_graph(&self) -> graphstab_core::Result<GraphCode> {
        GraphCode::from_rows(self.p, self.k, self.n, &self.adj)
    }
}

impl fmt::Display for GraphFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph p={} k={} n={}", self.p, self.k, self.n)?;
        write_rows(f, &self.adj)
    }
}

/// Symmetric matrix `M` of a bicharacter on `F_p^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramFile {
    pub p: Prime,
    pub rows: Vec<Vec<i64>>,
}

impl GramFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let first = lines.next();
        let header_line = first.map_or(1, |(no, _)| no);
        let [p, m] = parse_header(first, "gram", &["p", "m"])?[..] else {
            unreachable!("two keys requested")
        };
        let p = parse_prime(header_line, p)?;
        if m == 0 {
            return err(header_line, "m must be at least 1");
        }
        let rows = lines
            .map(|(no, line)| parse_row(no, line, m))
            .collect::<Result<Vec<_>, _>>()?;
        if rows.len() != m {
            return err(
                header_line,
                format!("expected {m} rows, found {}", rows.len()),
            );
        }
        Ok(GramFile { p, rows })
    }

    pub fn to_basis(&self) -> graphstab_core::Result<ExtensionBasis> {
        ExtensionBasis::new(FpMatrix::from_rows(self.p, &self.rows)?)
    }
}

impl fmt::Display for GramFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gram p={} m={}", self.p, self.rows.len())?;
        write_rows(f, &self.rows)
    }
}

pub fn parse_transcript(text: &str) -> Result<IsometryTranscript, ParseError> {
    let mut lines = content_lines(text);
    let first = lines.next();
    let header_line = first.map_or(1, |(no, _)| no);
    let [p, n] = parse_header(first, "transcript", &["p", "n"])?[..] else {
        unreachable!("two keys requested")
    };
    let mut t = IsometryTranscript::new(parse_prime(header_line, p)?, n);
    for (no, line) in lines {
        let mv: Move = line.parse().or_else(|e: String| err(no, e))?;
        t.push(mv).or_else(|e| err(no, format!("{e}")))?;
    }
    Ok(t)
}

pub fn format_transcript(t: &IsometryTranscript) -> String {
    let mut out = format!("transcript p={} n={}\n", t.prime(), t.n());
    for mv in t.moves() {
        out.push_str(&mv.to_string());
        out.push('\n');
    }
    out
}
