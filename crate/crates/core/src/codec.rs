//! The three equivalent matrix representations (bit grid, row-code tuple,
//! column-code tuple) with conversions, lexicographic comparison, and the
//! text formats used on the wire.
//!
//! A matrix is stored as one code per row (the grid view is computed), which
//! keeps every row operation a single word operation. See [`crate::bitcore`]
//! for the bit-order convention.

use crate::bitcore::{bit_at, Code, MAX_WIDTH};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// An `n * m` binary matrix held as `n` row codes of width `m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinMatrix {
    n: usize,
    m: usize,
    rows: Vec<Code>,
}

impl BinMatrix {
    /// Builds a matrix from row codes. `m` is the column count; every code
    /// must fit in `m` bits.
    pub fn from_rows(rows: Vec<Code>, m: usize) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidArgument(
                "matrix needs at least one row".into(),
            ));
        }
        check_width(m)?;
        for (i, &x) in rows.iter().enumerate() {
            if !fits(x, m) {
                return Err(Error::InvalidArgument(format!(
                    "row {i} code {x} does not fit width {m}"
                )));
            }
        }
        let n = rows.len();
        Ok(BinMatrix { n, m, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Entry at row `i`, column `j` (0 or 1).
    #[inline]
    pub fn bit(&self, i: usize, j: usize) -> u8 {
        bit_at(self.rows[i], self.m - 1 - j, self.m) as u8
    }

    #[inline]
    pub fn row_code(&self, i: usize) -> Code {
        self.rows[i]
    }

    /// Row codes as a borrowed slice.
    pub fn codes(&self) -> &[Code] {
        &self.rows
    }

    /// The row-code tuple r = (x_1, ..., x_n).
    pub fn row_codes(&self) -> RowTuple {
        RowTuple {
            width: self.m,
            xs: self.rows.clone(),
        }
    }

    /// The column-code tuple c = (y_1, ..., y_m).
    pub fn col_codes(&self) -> ColTuple {
        ColTuple {
            width: self.n,
            ys: transpose_codes(&self.rows, self.m),
        }
    }

    pub fn transpose(&self) -> BinMatrix {
        BinMatrix {
            n: self.m,
            m: self.n,
            rows: transpose_codes(&self.rows, self.m),
        }
    }
}

impl fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinMatrix({}x{} {:?})", self.n, self.m, self.rows)
    }
}

/// Ordered tuple of row codes; the image of a matrix under the row mapping.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RowTuple {
    width: usize,
    xs: Vec<Code>,
}

/// Ordered tuple of column codes; the image under the column mapping.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ColTuple {
    width: usize,
    ys: Vec<Code>,
}

impl RowTuple {
    pub fn new(xs: Vec<Code>, width: usize) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::InvalidArgument(
                "row tuple needs at least one code".into(),
            ));
        }
        check_width(width)?;
        if let Some(&bad) = xs.iter().find(|&&x| !fits(x, width)) {
            return Err(Error::InvalidArgument(format!(
                "code {bad} does not fit width {width}"
            )));
        }
        Ok(RowTuple { width, xs })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a valid tuple always has at least one code
    }

    /// Bit width of each code (the matrix column count).
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn codes(&self) -> &[Code] {
        &self.xs
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.xs.windows(2).all(|w| w[0] <= w[1])
    }

    /// The matrix whose rows read back as this tuple.
    pub fn to_matrix(&self) -> BinMatrix {
        BinMatrix {
            n: self.xs.len(),
            m: self.width,
            rows: self.xs.clone(),
        }
    }

    /// Column codes of [`Self::to_matrix`], computed by bit transposition
    /// without materializing the grid.
    pub fn col_codes(&self) -> ColTuple {
        ColTuple {
            width: self.xs.len(),
            ys: transpose_codes(&self.xs, self.width),
        }
    }
}

impl ColTuple {
    pub fn new(ys: Vec<Code>, width: usize) -> Result<Self> {
        let t = RowTuple::new(ys, width)?;
        Ok(ColTuple {
            width: t.width,
            ys: t.xs,
        })
    }

    pub fn len(&self) -> usize {
        self.ys.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Bit width of each code (the matrix row count).
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn codes(&self) -> &[Code] {
        &self.ys
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.ys.windows(2).all(|w| w[0] <= w[1])
    }

    /// The matrix whose columns read back as this tuple.
    pub fn to_matrix(&self) -> BinMatrix {
        BinMatrix {
            n: self.width,
            m: self.ys.len(),
            rows: transpose_codes(&self.ys, self.width),
        }
    }
}

// Lexicographic order on the codes; width breaks ties so that Ord stays
// consistent with Eq across shapes.
impl Ord for RowTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.xs.cmp(&other.xs).then(self.width.cmp(&other.width))
    }
}

impl PartialOrd for RowTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ColTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ys.cmp(&other.ys).then(self.width.cmp(&other.width))
    }
}

impl PartialOrd for ColTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Transpose a stack of codes of the given width into `width` codes, one per
/// input bit position. The first input code lands in the most significant
/// output bit, so the top row stays the most significant bit.
fn transpose_codes(codes: &[Code], width: usize) -> Vec<Code> {
    let mut out = vec![0u64; width];
    for (j, slot) in out.iter_mut().enumerate() {
        let pos = width - 1 - j;
        let mut y = 0u64;
        for &x in codes {
            y = (y << 1) | ((x >> pos) & 1);
        }
        *slot = y;
    }
    out
}

fn fits(x: Code, width: usize) -> bool {
    width == MAX_WIDTH || x < (1u64 << width)
}

fn check_width(width: usize) -> Result<()> {
    if width == 0 {
        return Err(Error::InvalidArgument("width must be positive".into()));
    }
    if width > MAX_WIDTH {
        return Err(Error::InvalidArgument(format!(
            "width {width} exceeds the {MAX_WIDTH}-bit word limit"
        )));
    }
    Ok(())
}

/// Text representations of a matrix.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum MatrixStyle {
    /// One line of space-separated decimal row codes. Lines starting with
    /// `#` are comments; a `# width W` comment pins the column count when it
    /// cannot be inferred (non-square matrices).
    RowCodes,
    /// One line of `0`/`1` characters per row.
    BitGrid,
    /// A single JSON object `{"n":..,"m":..,"rows":[..]}`.
    JsonLine,
}

#[derive(Serialize, Deserialize)]
struct JsonRecord {
    n: usize,
    m: usize,
    rows: Vec<Code>,
}

/// Renders a matrix in the given style, without a trailing newline.
pub fn format_matrix(a: &BinMatrix, style: MatrixStyle) -> String {
    match style {
        MatrixStyle::RowCodes => {
            let codes = a
                .codes()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            if a.n() == a.m() {
                codes
            } else {
                format!("# width {}\n{}", a.m(), codes)
            }
        }
        MatrixStyle::BitGrid => {
            let mut lines = Vec::with_capacity(a.n());
            for i in 0..a.n() {
                let mut line = String::with_capacity(a.m());
                for j in 0..a.m() {
                    line.push(if a.bit(i, j) == 1 { '1' } else { '0' });
                }
                lines.push(line);
            }
            lines.join("\n")
        }
        MatrixStyle::JsonLine => {
            let rec = JsonRecord {
                n: a.n(),
                m: a.m(),
                rows: a.codes().to_vec(),
            };
            serde_json::to_string(&rec).expect("matrix record serializes")
        }
    }
}

/// Parses one matrix in the given style. Errors carry the 1-based line and
/// column of the offending character.
pub fn parse_matrix(text: &str, style: MatrixStyle) -> Result<BinMatrix> {
    match style {
        MatrixStyle::RowCodes => parse_row_codes(text),
        MatrixStyle::BitGrid => parse_bit_grid(text),
        MatrixStyle::JsonLine => parse_json_line(text),
    }
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn parse_row_codes(text: &str) -> Result<BinMatrix> {
    let mut width_directive: Option<usize> = None;
    let mut data: Option<(usize, &str)> = None;

    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() == 2 && toks[0] == "width" {
                let w = toks[1].parse::<usize>().map_err(|_| {
                    parse_err(lineno, 1, format!("bad width directive {:?}", toks[1]))
                })?;
                width_directive = Some(w);
            }
            continue;
        }
        if data.is_some() {
            return Err(parse_err(lineno, 1, "more than one row-codes line"));
        }
        data = Some((lineno, line));
    }

    let (lineno, line) = data.ok_or_else(|| parse_err(1, 1, "no row-codes line found"))?;

    let mut xs = Vec::new();
    let mut token_cols = Vec::new();
    let mut chars = line.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let mut end = start;
        while let Some(&(i, c)) = chars.peek() {
            if c.is_whitespace() {
                break;
            }
            end = i + c.len_utf8();
            chars.next();
        }
        let token = &line[start..end];
        let col = start + 1;
        let value = token.parse::<u64>().map_err(|_| {
            parse_err(
                lineno,
                col,
                format!("expected a decimal code, got {token:?}"),
            )
        })?;
        xs.push(value);
        token_cols.push(col);
    }

    if xs.is_empty() {
        return Err(parse_err(lineno, 1, "empty row-codes line"));
    }

    let width = width_directive.unwrap_or(xs.len());
    check_width(width).map_err(|e| parse_err(lineno, 1, e.to_string()))?;
    for (idx, &x) in xs.iter().enumerate() {
        if !fits(x, width) {
            return Err(parse_err(
                lineno,
                token_cols[idx],
                format!("code {x} does not fit width {width}"),
            ));
        }
    }
    BinMatrix::from_rows(xs, width)
}

fn parse_bit_grid(text: &str) -> Result<BinMatrix> {
    let mut rows: Vec<Code> = Vec::new();
    let mut width: Option<usize> = None;
    let mut done = false;

    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        if line.trim().is_empty() {
            if !rows.is_empty() {
                done = true;
            }
            continue;
        }
        if done {
            return Err(parse_err(lineno, 1, "unexpected content after the matrix"));
        }
        let mut code = 0u64;
        let mut len = 0usize;
        for (idx, c) in line.chars().enumerate() {
            let bit = match c {
                '0' => 0,
                '1' => 1,
                _ => {
                    return Err(parse_err(
                        lineno,
                        idx + 1,
                        format!("expected '0' or '1', got {c:?}"),
                    ))
                }
            };
            if len == MAX_WIDTH {
                return Err(parse_err(lineno, idx + 1, "row wider than 64 columns"));
            }
            code = (code << 1) | bit;
            len += 1;
        }
        match width {
            None => width = Some(len),
            Some(w) if w != len => {
                return Err(parse_err(
                    lineno,
                    1,
                    format!("row has {len} columns, expected {w}"),
                ))
            }
            _ => {}
        }
        rows.push(code);
    }

    let width = width.ok_or_else(|| parse_err(1, 1, "no grid lines found"))?;
    BinMatrix::from_rows(rows, width)
}

fn parse_json_line(text: &str) -> Result<BinMatrix> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(parse_err(1, 1, "empty input"));
    }
    let rec: JsonRecord = serde_json::from_str(trimmed)
        .map_err(|e| parse_err(e.line(), e.column().max(1), e.to_string()))?;
    if rec.rows.len() != rec.n {
        return Err(parse_err(
            1,
            1,
            format!(
                "rows array has {} entries but n = {}",
                rec.rows.len(),
                rec.n
            ),
        ));
    }
    let a = BinMatrix::from_rows(rec.rows, rec.m).map_err(|e| parse_err(1, 1, e.to_string()))?;
    Ok(a)
}
