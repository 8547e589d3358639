//! Strongly explicit measurement matrices.
//!
//! A matrix is a small descriptor, never a dense array: any single column is
//! generated on demand in O(rows) time and space, which is what makes
//! populations up to 2^32 items workable. Rows and columns are 1-based,
//! matching the usual test/item numbering.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitVec;
use crate::codes::{complement, int_to_binary, int_to_gray};
use crate::error::{Error, Result};

/// Which half of the d x 2d block design carries the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockSide {
    Left,
    Right,
}

/// Partition of `n` items into `kappa = ceil(n / block)` super items.
///
/// Super item `j` holds items `(j-1)*block + 1 ..= j*block`; the last one may
/// be short.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperItemPartition {
    n: u64,
    block: u64,
    kappa: u64,
}

impl SuperItemPartition {
    pub fn new(n: u64, block: u64) -> Result<Self> {
        if n == 0 || block == 0 {
            return Err(Error::Domain(format!(
                "partition needs n >= 1 and block >= 1, got n={n} block={block}"
            )));
        }
        Ok(SuperItemPartition {
            n,
            block,
            kappa: n.div_ceil(block),
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn block(&self) -> u64 {
        self.block
    }

    pub fn kappa(&self) -> u64 {
        self.kappa
    }

    /// Index of the super item containing item `i`.
    pub fn super_of(&self, item: u64) -> u64 {
        debug_assert!(item >= 1 && item <= self.n);
        (item - 1) / self.block + 1
    }

    /// First and last item of super item `j`.
    pub fn item_range(&self, j: u64) -> (u64, u64) {
        debug_assert!(j >= 1 && j <= self.kappa);
        let first = (j - 1) * self.block + 1;
        (first, (j * self.block).min(self.n))
    }
}

/// A measurement matrix descriptor with lazy column access.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeasurementMatrix {
    /// `width x cols`; column `j` is the binary representation of `j - 1`.
    Binary { width: u32, cols: u64 },
    /// `2*width x cols`; column `j` is binary(j-1) stacked on its complement.
    BinaryPair { width: u32, cols: u64 },
    /// `width x cols`; column `j` is the reflected Gray codeword of rank `j - 1`.
    Gray { width: u32, cols: u64 },
    /// `rows x cols` with `rows <= modulus`; entry (i, j) = 1 iff
    /// `((j - 1) mod modulus) + 1 == i`. With `rows == modulus` every column
    /// has weight exactly 1.
    ModSpacing { modulus: u64, rows: u64, cols: u64 },
    /// `half x 2*half`; identity in the left half, zeros in the right.
    BlockLeft { half: u64 },
    /// `half x 2*half`; zeros in the left half, identity in the right.
    BlockRight { half: u64 },
    /// Column replication: item column `i` equals inner column `super_of(i)`.
    Expanded {
        inner: Box<MeasurementMatrix>,
        partition: SuperItemPartition,
    },
    /// Vertical concatenation of children sharing a column count.
    Stacked { children: Vec<MeasurementMatrix> },
}

/// Binary-code matrix for a single positive: column `j` = binary(j - 1).
pub fn binary_code_matrix(n: u64) -> Result<MeasurementMatrix> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "binary code matrix needs n >= 2, got {n}"
        )));
    }
    Ok(MeasurementMatrix::Binary {
        width: ceil_log2(n),
        cols: n,
    })
}

/// The binary-plus-complement pair matrix: `2*ceil(log2 n) x n`, column `j` is
/// binary(j-1) stacked on its complement. Every column has weight exactly
/// `ceil(log2 n)`, and the union of two consecutive columns identifies them.
pub fn binary_pair_matrix(n: u64) -> Result<MeasurementMatrix> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "binary pair matrix needs n >= 2, got {n}"
        )));
    }
    Ok(MeasurementMatrix::BinaryPair {
        width: ceil_log2(n),
        cols: n,
    })
}

/// Gray-code matrix: `ceil(log2 kappa) x kappa`, column `j` is the reflected
/// Gray codeword of rank `j - 1`.
pub fn gray_matrix(kappa: u64) -> Result<MeasurementMatrix> {
    if kappa < 2 {
        return Err(Error::Domain(format!(
            "gray matrix needs kappa >= 2, got {kappa}"
        )));
    }
    Ok(MeasurementMatrix::Gray {
        width: ceil_log2(kappa),
        cols: kappa,
    })
}

/// `m x cols` spacing matrix: test `i` contains the columns spaced `m` apart
/// starting at `i`, i.e. entry (i, j) = 1 iff `((j - 1) mod m) + 1 == i`.
pub fn mod_spacing_matrix(modulus: u64, cols: u64) -> Result<MeasurementMatrix> {
    mod_spacing_rows(modulus, modulus, cols)
}

/// Spacing matrix keeping only the first `rows` of the `modulus` residue rows.
pub fn mod_spacing_rows(modulus: u64, rows: u64, cols: u64) -> Result<MeasurementMatrix> {
    if modulus == 0 || cols == 0 || rows == 0 || rows > modulus {
        return Err(Error::Domain(format!(
            "mod spacing needs 1 <= rows <= modulus and cols >= 1, got modulus={modulus} rows={rows} cols={cols}"
        )));
    }
    Ok(MeasurementMatrix::ModSpacing {
        modulus,
        rows,
        cols,
    })
}

/// `d x 2d` half-identity block design.
pub fn half_block_matrix(d: u64, side: BlockSide) -> Result<MeasurementMatrix> {
    if d == 0 {
        return Err(Error::Domain("half block matrix needs d >= 1".into()));
    }
    Ok(match side {
        BlockSide::Left => MeasurementMatrix::BlockLeft { half: d },
        BlockSide::Right => MeasurementMatrix::BlockRight { half: d },
    })
}

/// Replicate super-item columns over the items of each super item. The
/// outcome of the expanded matrix on any item set equals the outcome of the
/// inner matrix on the super items that set touches.
pub fn expand_to_items(
    inner: MeasurementMatrix,
    partition: SuperItemPartition,
) -> Result<MeasurementMatrix> {
    if inner.cols() != partition.kappa() {
        return Err(Error::Domain(format!(
            "expansion mismatch: inner matrix has {} columns, partition has {} super items",
            inner.cols(),
            partition.kappa()
        )));
    }
    Ok(MeasurementMatrix::Expanded {
        inner: Box::new(inner),
        partition,
    })
}

/// Stack matrices vertically. A single child is returned unchanged.
pub fn stack(mut children: Vec<MeasurementMatrix>) -> Result<MeasurementMatrix> {
    match children.len() {
        0 => Err(Error::Domain("cannot stack zero matrices".into())),
        1 => Ok(children.pop().unwrap()),
        _ => {
            let cols = children[0].cols();
            if children.iter().any(|c| c.cols() != cols) {
                return Err(Error::Domain(
                    "stacked children must share a column count".into(),
                ));
            }
            Ok(MeasurementMatrix::Stacked { children })
        }
    }
}

impl MeasurementMatrix {
    pub fn rows(&self) -> u64 {
        match self {
            MeasurementMatrix::Binary { width, .. } => *width as u64,
            MeasurementMatrix::BinaryPair { width, .. } => 2 * *width as u64,
            MeasurementMatrix::Gray { width, .. } => *width as u64,
            MeasurementMatrix::ModSpacing { rows, .. } => *rows,
            MeasurementMatrix::BlockLeft { half } | MeasurementMatrix::BlockRight { half } => *half,
            MeasurementMatrix::Expanded { inner, .. } => inner.rows(),
            MeasurementMatrix::Stacked { children } => children.iter().map(|c| c.rows()).sum(),
        }
    }

    pub fn cols(&self) -> u64 {
        match self {
            MeasurementMatrix::Binary { cols, .. }
            | MeasurementMatrix::BinaryPair { cols, .. }
            | MeasurementMatrix::Gray { cols, .. }
            | MeasurementMatrix::ModSpacing { cols, .. } => *cols,
            MeasurementMatrix::BlockLeft { half } | MeasurementMatrix::BlockRight { half } => {
                2 * half
            }
            MeasurementMatrix::Expanded { partition, .. } => partition.n(),
            MeasurementMatrix::Stacked { children } => children[0].cols(),
        }
    }

    /// Entry at row `i`, column `j` (both 1-based).
    pub fn entry(&self, i: u64, j: u64) -> bool {
        assert!(i >= 1 && i <= self.rows(), "row {i} out of range");
        assert!(j >= 1 && j <= self.cols(), "column {j} out of range");
        match self {
            MeasurementMatrix::Binary { width, .. } => {
                int_to_binary(j - 1, *width).unwrap().bit((i - 1) as u32)
            }
            MeasurementMatrix::BinaryPair { width, .. } => {
                let b = int_to_binary(j - 1, *width).unwrap();
                let w = *width as u64;
                if i <= w {
                    b.bit((i - 1) as u32)
                } else {
                    complement(b).bit((i - 1 - w) as u32)
                }
            }
            MeasurementMatrix::Gray { width, .. } => {
                int_to_gray(j - 1, *width).unwrap().bit((i - 1) as u32)
            }
            MeasurementMatrix::ModSpacing { modulus, .. } => ((j - 1) % modulus) + 1 == i,
            MeasurementMatrix::BlockLeft { .. } => j == i,
            MeasurementMatrix::BlockRight { half } => j == i + half,
            MeasurementMatrix::Expanded { inner, partition } => {
                inner.entry(i, partition.super_of(j))
            }
            MeasurementMatrix::Stacked { children } => {
                let mut row = i;
                for child in children {
                    let r = child.rows();
                    if row <= r {
                        return child.entry(row, j);
                    }
                    row -= r;
                }
                unreachable!("row bound checked above")
            }
        }
    }

    /// Column `j` as a bit vector of length `rows`, generated in O(rows).
    pub fn column(&self, j: u64) -> BitVec {
        let rows = usize::try_from(self.rows()).expect("row count fits in usize");
        let mut out = BitVec::zeros(rows);
        self.or_column_into(j, &mut out, 0);
        out
    }

    /// OR column `j` into `out` starting at bit `base`. This is the lazy
    /// generation path shared by the encoder; it never touches other columns.
    pub(crate) fn or_column_into(&self, j: u64, out: &mut BitVec, base: usize) {
        assert!(j >= 1 && j <= self.cols(), "column {j} out of range");
        match self {
            MeasurementMatrix::Binary { width, .. } => {
                let b = int_to_binary(j - 1, *width).unwrap();
                for (k, bit) in b.bits().enumerate() {
                    if bit {
                        out.set(base + k, true);
                    }
                }
            }
            MeasurementMatrix::BinaryPair { width, .. } => {
                let b = int_to_binary(j - 1, *width).unwrap();
                let w = *width as usize;
                for (k, bit) in b.bits().enumerate() {
                    if bit {
                        out.set(base + k, true);
                    } else {
                        out.set(base + w + k, true);
                    }
                }
            }
            MeasurementMatrix::Gray { width, .. } => {
                let g = int_to_gray(j - 1, *width).unwrap();
                for (k, bit) in g.bits().enumerate() {
                    if bit {
                        out.set(base + k, true);
                    }
                }
            }
            MeasurementMatrix::ModSpacing { modulus, rows, .. } => {
                let r = (j - 1) % modulus; // 0-based row index
                if r < *rows {
                    out.set(base + r as usize, true);
                }
            }
            MeasurementMatrix::BlockLeft { half } => {
                if j <= *half {
                    out.set(base + (j - 1) as usize, true);
                }
            }
            MeasurementMatrix::BlockRight { half } => {
                if j > *half {
                    out.set(base + (j - half - 1) as usize, true);
                }
            }
            MeasurementMatrix::Expanded { inner, partition } => {
                inner.or_column_into(partition.super_of(j), out, base);
            }
            MeasurementMatrix::Stacked { children } => {
                let mut offset = base;
                for child in children {
                    child.or_column_into(j, out, offset);
                    offset += child.rows() as usize;
                }
            }
        }
    }
}

/// Dense row-major matrix, used for the interop text format and as the
/// materialized counterpart in lazy-vs-dense checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: u64,
    cols: u64,
    row_bits: Vec<BitVec>,
}

/// Materialization (and the text format) is for small matrices only.
const MAX_MATERIALIZED_BITS: u64 = 1 << 26;

impl DenseMatrix {
    pub fn rows(&self) -> u64 {
        self.rows
    }

    pub fn cols(&self) -> u64 {
        self.cols
    }

    pub fn entry(&self, i: u64, j: u64) -> bool {
        assert!(i >= 1 && i <= self.rows && j >= 1 && j <= self.cols);
        self.row_bits[(i - 1) as usize].get((j - 1) as usize)
    }

    pub fn column(&self, j: u64) -> BitVec {
        let mut out = BitVec::zeros(self.rows as usize);
        for i in 1..=self.rows {
            if self.entry(i, j) {
                out.set((i - 1) as usize, true);
            }
        }
        out
    }
}

/// Materialize a descriptor row by row.
pub fn materialize(m: &MeasurementMatrix) -> Result<DenseMatrix> {
    let (rows, cols) = (m.rows(), m.cols());
    if rows.saturating_mul(cols) > MAX_MATERIALIZED_BITS {
        return Err(Error::TooLarge(format!(
            "refusing to materialize a {rows} x {cols} matrix"
        )));
    }
    let row_bits = (1..=rows)
        .map(|i| {
            let mut row = BitVec::zeros(cols as usize);
            for j in 1..=cols {
                if m.entry(i, j) {
                    row.set((j - 1) as usize, true);
                }
            }
            row
        })
        .collect();
    Ok(DenseMatrix {
        rows,
        cols,
        row_bits,
    })
}

/// Text form: first line `t n`, then `t` lines of `n` characters `0`/`1`,
/// row-major. Round-trips bit-exactly through [`DenseMatrix::from_str`].
pub fn to_text(m: &MeasurementMatrix) -> Result<String> {
    Ok(materialize(m)?.to_string())
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for row in &self.row_bits {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl FromStr for DenseMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let mut parts = header.split_whitespace();
        let rows: u64 = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| Error::Parse("matrix header must be `t n`".into()))?;
        let cols: u64 = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| Error::Parse("matrix header must be `t n`".into()))?;
        if parts.next().is_some() {
            return Err(Error::Parse("matrix header must be `t n`".into()));
        }
        if rows == 0 || cols == 0 || rows.saturating_mul(cols) > MAX_MATERIALIZED_BITS {
            return Err(Error::Parse(format!(
                "bad matrix dimensions {rows} x {cols}"
            )));
        }
        let mut row_bits = Vec::with_capacity(rows as usize);
        for i in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing matrix row {}", i + 1)))?;
            let row: BitVec = line.trim_end().parse()?;
            if row.len() as u64 != cols {
                return Err(Error::Parse(format!(
                    "row {} has {} columns, expected {cols}",
                    i + 1,
                    row.len()
                )));
            }
            row_bits.push(row);
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("trailing content after matrix rows".into()));
        }
        Ok(DenseMatrix {
            rows,
            cols,
            row_bits,
        })
    }
}

/// Smallest `w` with `2^w >= x`; 0 for `x = 1`.
pub fn ceil_log2(x: u64) -> u32 {
    assert!(x >= 1);
    64 - (x - 1).leading_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix_lines(m: &MeasurementMatrix) -> Vec<String> {
        let dense = materialize(m).unwrap();
        (1..=dense.rows())
            .map(|i| {
                (1..=dense.cols())
                    .map(|j| if dense.entry(i, j) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(1 << 32), 32);
        assert_eq!(ceil_log2((1 << 32) + 1), 33);
    }

    #[test]
    fn binary_pair_8_is_the_worked_example() {
        let m = binary_pair_matrix(8).unwrap();
        assert_eq!((m.rows(), m.cols()), (6, 8));
        assert_eq!(
            matrix_lines(&m),
            [
                "00001111", "00110011", "01010101", // binary(j-1)
                "11110000", "11001100", "10101010", // complement
            ]
        );
    }

    #[test]
    fn binary_pair_small_cases() {
        let m = binary_pair_matrix(2).unwrap();
        assert_eq!(m.column(1).to_string(), "01");
        assert_eq!(m.column(2).to_string(), "10");

        // n = 5: width 3, column 5 = binary(4) ++ complement.
        let m = binary_pair_matrix(5).unwrap();
        assert_eq!((m.rows(), m.cols()), (6, 5));
        assert_eq!(m.column(5).to_string(), "100011");
        assert_eq!(m.column(5).count_ones(), 3);

        assert!(binary_pair_matrix(1).is_err());
    }

    #[test]
    fn binary_pair_column_weight_exhaustive() {
        // Every column weighs exactly ceil(log2 n).
        for n in 2..=4096u64 {
            let m = binary_pair_matrix(n).unwrap();
            let w = ceil_log2(n) as usize;
            for j in 1..=n {
                assert_eq!(m.column(j).count_ones(), w, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn gray_matrix_examples() {
        let m = gray_matrix(4).unwrap();
        assert_eq!(matrix_lines(&m), ["0011", "0110"]);

        let m = gray_matrix(2).unwrap();
        assert_eq!(matrix_lines(&m), ["01"]);

        let m = gray_matrix(8).unwrap();
        for j in 1..=8 {
            assert_eq!(
                m.column(j).to_string(),
                int_to_gray(j - 1, 3).unwrap().to_string()
            );
        }
        assert!(gray_matrix(1).is_err());
    }

    #[test]
    fn mod_spacing_examples() {
        let l = mod_spacing_matrix(3, 4).unwrap();
        assert_eq!(matrix_lines(&l), ["1001", "0100", "0010"]);

        let v = mod_spacing_matrix(8, 16).unwrap();
        let lines = matrix_lines(&v);
        for (i, line) in lines.iter().enumerate() {
            let expected: String = (1..=16u64)
                .map(|j| if (j - 1) % 8 == i as u64 { '1' } else { '0' })
                .collect();
            assert_eq!(line, &expected);
        }
        // Column 8 lands in row 8, column 16 too.
        assert!(v.entry(8, 8) && v.entry(8, 16));

        let ones = mod_spacing_matrix(1, 5).unwrap();
        assert_eq!(matrix_lines(&ones), ["11111"]);
    }

    #[test]
    fn mod_spacing_weight_and_distinct_rows() {
        for m in 1..=12u64 {
            let cols = 3 * m + 2;
            let mat = mod_spacing_matrix(m, cols).unwrap();
            for j in 1..=cols {
                assert_eq!(mat.column(j).count_ones(), 1);
            }
            // Any m consecutive columns hit m distinct rows.
            for start in 1..=(cols - m + 1) {
                let mut seen = std::collections::HashSet::new();
                for j in start..start + m {
                    let col = mat.column(j);
                    let row = (0..col.len()).find(|&i| col.get(i)).unwrap();
                    assert!(seen.insert(row));
                }
            }
        }
    }

    #[test]
    fn mod_spacing_truncated_rows() {
        let h = mod_spacing_rows(4, 2, 6).unwrap();
        assert_eq!((h.rows(), h.cols()), (2, 6));
        assert_eq!(matrix_lines(&h), ["100010", "010001"]);
        // Columns in residues past `rows` are all-zero.
        assert!(h.column(3).is_zero() && h.column(4).is_zero());
        assert!(mod_spacing_rows(4, 5, 6).is_err());
        assert!(mod_spacing_rows(4, 0, 6).is_err());
    }

    #[test]
    fn half_block_examples() {
        let left = half_block_matrix(2, BlockSide::Left).unwrap();
        assert_eq!(matrix_lines(&left), ["1000", "0100"]);
        let right = half_block_matrix(2, BlockSide::Right).unwrap();
        assert_eq!(matrix_lines(&right), ["0010", "0001"]);
        let one = half_block_matrix(1, BlockSide::Left).unwrap();
        assert_eq!(matrix_lines(&one), ["10"]);
        assert!(half_block_matrix(0, BlockSide::Left).is_err());
    }

    #[test]
    fn expansion_replicates_columns() {
        let part = SuperItemPartition::new(16, 4).unwrap();
        let m = expand_to_items(gray_matrix(4).unwrap(), part).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 16));
        for (group, word) in [(1u64, "00"), (2, "01"), (3, "11"), (4, "10")] {
            for j in (group - 1) * 4 + 1..=group * 4 {
                assert_eq!(m.column(j).to_string(), word);
            }
        }

        // block = 1 expansion is the identity.
        let part = SuperItemPartition::new(4, 1).unwrap();
        let inner = gray_matrix(4).unwrap();
        let expanded = expand_to_items(inner.clone(), part).unwrap();
        assert_eq!(
            materialize(&expanded).unwrap(),
            materialize(&inner).unwrap()
        );

        // Short final super item: 2 super columns over 5 items with block 3.
        let part = SuperItemPartition::new(5, 3).unwrap();
        assert_eq!(part.kappa(), 2);
        let m = expand_to_items(binary_pair_matrix(2).unwrap(), part).unwrap();
        assert_eq!(m.cols(), 5);
        for j in 1..=3 {
            assert_eq!(m.column(j).to_string(), "01");
        }
        for j in 4..=5 {
            assert_eq!(m.column(j).to_string(), "10");
        }

        // Column-count mismatch is rejected.
        let part = SuperItemPartition::new(16, 4).unwrap();
        assert!(expand_to_items(gray_matrix(8).unwrap(), part).is_err());
    }

    #[test]
    fn stacking() {
        let s = stack(vec![
            gray_matrix(4).unwrap(),
            mod_spacing_matrix(3, 4).unwrap(),
        ])
        .unwrap();
        assert_eq!((s.rows(), s.cols()), (5, 4));
        assert_eq!(s.column(2).to_string(), "01010");

        let single = stack(vec![gray_matrix(4).unwrap()]).unwrap();
        assert_eq!(single, gray_matrix(4).unwrap());

        assert!(stack(vec![]).is_err());
        assert!(stack(vec![gray_matrix(4).unwrap(), gray_matrix(8).unwrap()]).is_err());
    }

    #[test]
    fn partition_bookkeeping() {
        let p = SuperItemPartition::new(10, 4).unwrap();
        assert_eq!(p.kappa(), 3);
        assert_eq!(p.item_range(1), (1, 4));
        assert_eq!(p.item_range(3), (9, 10));
        assert_eq!(p.super_of(4), 1);
        assert_eq!(p.super_of(5), 2);
        assert_eq!(p.super_of(10), 3);
        assert!(SuperItemPartition::new(0, 4).is_err());
    }

    #[test]
    fn lazy_columns_agree_with_materialization() {
        let part = SuperItemPartition::new(37, 5).unwrap();
        let cases = vec![
            binary_code_matrix(19).unwrap(),
            binary_pair_matrix(37).unwrap(),
            gray_matrix(37).unwrap(),
            mod_spacing_matrix(7, 37).unwrap(),
            mod_spacing_rows(10, 5, 37).unwrap(),
            half_block_matrix(6, BlockSide::Left).unwrap(),
            half_block_matrix(6, BlockSide::Right).unwrap(),
            expand_to_items(binary_pair_matrix(8).unwrap(), part).unwrap(),
            stack(vec![
                gray_matrix(12).unwrap(),
                mod_spacing_matrix(3, 12).unwrap(),
                mod_spacing_rows(6, 3, 12).unwrap(),
            ])
            .unwrap(),
        ];
        for m in cases {
            let dense = materialize(&m).unwrap();
            for j in 1..=m.cols() {
                assert_eq!(m.column(j), dense.column(j), "{m:?} column {j}");
            }
        }
    }

    #[test]
    fn lazy_vs_dense_exhaustive_small() {
        for n in 2..=256u64 {
            for m in [
                binary_code_matrix(n).unwrap(),
                binary_pair_matrix(n).unwrap(),
                gray_matrix(n).unwrap(),
                mod_spacing_matrix((n % 7) + 1, n).unwrap(),
            ] {
                let dense = materialize(&m).unwrap();
                for j in 1..=n {
                    assert_eq!(m.column(j), dense.column(j), "{m:?} column {j}");
                }
            }
        }
    }

    #[test]
    fn expansion_replicates_inner_columns_exhaustive() {
        for n in 2..=128u64 {
            for block in 1..=8u64 {
                let part = SuperItemPartition::new(n, block).unwrap();
                if part.kappa() < 2 {
                    continue;
                }
                for inner in [gray_matrix(part.kappa()), binary_pair_matrix(part.kappa())] {
                    let inner = inner.unwrap();
                    let expanded = expand_to_items(inner.clone(), part.clone()).unwrap();
                    for i in 1..=n {
                        assert_eq!(
                            expanded.column(i),
                            inner.column(part.super_of(i)),
                            "n={n} block={block} item={i}"
                        );
                    }
                }
            }
        }
    }

    mod random_agreement {
        use super::*;
        use proptest::prelude::*;

        fn arbitrary_matrix() -> impl Strategy<Value = MeasurementMatrix> {
            prop_oneof![
                (2u64..200).prop_map(|n| binary_pair_matrix(n).unwrap()),
                (2u64..200).prop_map(|n| binary_code_matrix(n).unwrap()),
                (2u64..200).prop_map(|k| gray_matrix(k).unwrap()),
                (1u64..20, 1u64..200).prop_map(|(m, c)| mod_spacing_matrix(m, c).unwrap()),
                (1u64..20, 1u64..200).prop_flat_map(|(m, c)| {
                    (1..=m).prop_map(move |r| mod_spacing_rows(m, r, c).unwrap())
                }),
                (1u64..64).prop_map(|d| half_block_matrix(d, BlockSide::Left).unwrap()),
                (1u64..64).prop_map(|d| half_block_matrix(d, BlockSide::Right).unwrap()),
                ((2u64..40), (1u64..9)).prop_map(|(kappa, block)| {
                    let part = SuperItemPartition::new(kappa * block, block).unwrap();
                    expand_to_items(gray_matrix(kappa).unwrap(), part).unwrap()
                }),
                (2u64..60).prop_map(|c| {
                    stack(vec![
                        binary_pair_matrix(c).unwrap(),
                        mod_spacing_matrix(3, c).unwrap(),
                    ])
                    .unwrap()
                }),
            ]
        }

        proptest! {
            #[test]
            fn lazy_columns_match_materialization(m in arbitrary_matrix()) {
                let dense = materialize(&m).unwrap();
                for j in 1..=m.cols() {
                    prop_assert_eq!(m.column(j), dense.column(j));
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let m = binary_pair_matrix(8).unwrap();
        let text = to_text(&m).unwrap();
        assert!(text.starts_with("6 8\n"));
        let parsed: DenseMatrix = text.parse().unwrap();
        assert_eq!(parsed, materialize(&m).unwrap());
        assert_eq!(parsed.to_string(), text);

        assert!("".parse::<DenseMatrix>().is_err());
        assert!("2 3\n101\n".parse::<DenseMatrix>().is_err());
        assert!("1 3\n10\n".parse::<DenseMatrix>().is_err());
        assert!("1 2\n1x\n".parse::<DenseMatrix>().is_err());
    }

    #[test]
    fn materialization_cap() {
        let m = MeasurementMatrix::ModSpacing {
            modulus: 1 << 20,
            rows: 1 << 20,
            cols: 1 << 20,
        };
        assert!(matches!(to_text(&m), Err(Error::TooLarge(_))));
    }
}
