//! Dense exact matrices over a [`Ring`].
//!
//! Row operations multiply on the left and column operations on the right.

use std::fmt;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::scalar::{Element, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Element>,
}

/// Output of [`Matrix::row_reduce_tracked`]: `transform * input = reduced`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedReduction {
    pub reduced: Matrix,
    pub transform: Matrix,
    pub pivot_columns: Vec<usize>,
}

impl TrackedReduction {
    pub fn rank(&self) -> usize {
        self.pivot_columns.len()
    }
}

/// One cell of a [`Matrix::block`] grid.
#[derive(Clone, Copy, Debug)]
pub enum Block<'a> {
    Of(&'a Matrix),
    Zero,
    Identity,
}

impl Matrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, data: Vec<Element>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|e| e.ring() != ring) {
            return Err(Error::RingMismatch {
                expected: ring,
                found: bad.ring(),
            });
        }
        Ok(Matrix { ring, rows, cols, data })
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring,
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<Element>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::shape("ragged rows"));
        }
        Matrix::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    /// Integer-entry shorthand, mostly for tests and examples.
    pub fn from_i64(ring: Ring, rows: &[&[i64]]) -> Matrix {
        let data = rows
            .iter()
            .map(|row| row.iter().map(|&v| ring.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(ring, data).expect("rectangular integer rows")
    }

    pub fn from_fn(ring: Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Element) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.ring(), ring, "entry ring");
                data.push(e);
            }
        }
        Matrix { ring, rows, cols, data }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Element) {
        assert_eq!(value.ring(), self.ring, "entry ring");
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Element] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Element] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Element::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    fn same_ring(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                expected: self.ring,
                found: other.ring,
            });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Product of a chain of matrices, left to right.
    pub fn product(factors: &[&Matrix]) -> Result<Matrix> {
        let (first, rest) = factors.split_first().ok_or_else(|| Error::shape("empty product"))?;
        rest.iter().try_fold((*first).clone(), |acc, m| acc.matmul(m))
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Element, &Element) -> Element) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.shape() != other.shape() {
            return Err(Error::shape(format!(
                "{}x{} and {}x{} differ",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn neg(&self) -> Matrix {
        self.map(|e| -e)
    }

    pub fn map(&self, f: impl Fn(&Element) -> Element) -> Matrix {
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// `c * self`, the scalar acting on the left.
    pub fn scale_left(&self, c: &Element) -> Matrix {
        self.map(|e| c * e)
    }

    /// `self * c`, the scalar acting on the right.
    pub fn scale_right(&self, c: &Element) -> Matrix {
        self.map(|e| e * c)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conjugate_transpose(&self) -> Matrix {
        Matrix::from_fn(self.ring, self.cols, self.rows, |i, j| self.get(j, i).conjugate())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.conjugate_transpose()
    }

    pub fn columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.ring, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn column_range(&self, start: usize, end: usize) -> Matrix {
        let idx: Vec<usize> = (start..end).collect();
        self.columns(&idx)
    }

    pub fn row_range(&self, start: usize, end: usize) -> Matrix {
        Matrix {
            ring: self.ring,
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    pub fn hstack(parts: &[&Matrix]) -> Result<Matrix> {
        let grid = vec![parts.iter().map(|m| Block::Of(m)).collect()];
        Matrix::block(&grid)
    }

    pub fn vstack(parts: &[&Matrix]) -> Result<Matrix> {
        let grid: Vec<Vec<Block>> = parts.iter().map(|m| vec![Block::Of(m)]).collect();
        Matrix::block(&grid)
    }

    /// Like [`Matrix::hstack`] but fixes the ring and height, so an empty
    /// list yields a `rows x 0` matrix.
    pub fn hstack_sized(ring: Ring, rows: usize, parts: &[&Matrix]) -> Result<Matrix> {
        let mut out = Matrix::zeros(ring, rows, 0);
        for part in parts {
            out = Matrix::hstack(&[&out, part])?;
        }
        Ok(out)
    }

    /// Assembles a block grid. Placeholders take their size from the other
    /// cells of their grid row and grid column.
    pub fn block(grid: &[Vec<Block>]) -> Result<Matrix> {
        let width = grid.first().map_or(0, Vec::len);
        if let Some(i) = grid.iter().position(|row| row.len() != width) {
            return Err(Error::shape(format!(
                "block row {i} has {} cells, expected {width}",
                grid[i].len()
            )));
        }
        let mut ring = None;
        let mut heights: Vec<Option<usize>> = vec![None; grid.len()];
        let mut widths: Vec<Option<usize>> = vec![None; width];
        for (i, row) in grid.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if let Block::Of(m) = cell {
                    match ring {
                        None => ring = Some(m.ring),
                        Some(r) if r != m.ring => {
                            return Err(Error::RingMismatch {
                                expected: r,
                                found: m.ring,
                            })
                        }
                        _ => {}
                    }
                    for (slot, size, what) in [(&mut heights[i], m.rows, "rows"), (&mut widths[j], m.cols, "cols")] {
                        match slot {
                            Some(s) if *s != size => {
                                return Err(Error::shape(format!("block ({i},{j}) has {size} {what}, expected {s}")))
                            }
                            _ => *slot = Some(size),
                        }
                    }
                }
            }
        }
        let ring = ring.ok_or_else(|| Error::shape("block grid has no matrix to fix the ring"))?;
        let heights: Vec<usize> = heights
            .into_iter()
            .enumerate()
            .map(|(i, h)| h.ok_or_else(|| Error::shape(format!("block row {i} has no sized cell"))))
            .collect::<Result<_>>()?;
        let widths: Vec<usize> = widths
            .into_iter()
            .enumerate()
            .map(|(j, w)| w.ok_or_else(|| Error::shape(format!("block column {j} has no sized cell"))))
            .collect::<Result<_>>()?;
        let total_rows: usize = heights.iter().sum();
        let total_cols: usize = widths.iter().sum();
        let mut out = Matrix::zeros(ring, total_rows, total_cols);
        let mut r0 = 0;
        for (i, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (j, cell) in row.iter().enumerate() {
                match cell {
                    Block::Of(m) => {
                        for a in 0..m.rows {
                            for b in 0..m.cols {
                                out.data[(r0 + a) * total_cols + c0 + b] = m.get(a, b).clone();
                            }
                        }
                    }
                    Block::Identity => {
                        if heights[i] != widths[j] {
                            return Err(Error::shape(format!(
                                "identity block ({i},{j}) would be {}x{}",
                                heights[i], widths[j]
                            )));
                        }
                        for a in 0..heights[i] {
                            out.data[(r0 + a) * total_cols + c0 + a] = ring.one();
                        }
                    }
                    Block::Zero => {}
                }
                c0 += widths[j];
            }
            r0 += heights[i];
        }
        Ok(out)
    }

    /// Places `blocks[k]` (an identity of the given size) at block row
    /// `rows[k]`, block column `cols[k]` of a partitioned zero matrix.
    pub fn partitioned_identity(
        ring: Ring,
        row_sizes: &[usize],
        col_sizes: &[usize],
        placements: &[(usize, usize)],
    ) -> Result<Matrix> {
        let offsets = |sizes: &[usize]| -> Vec<usize> {
            sizes
                .iter()
                .scan(0, |acc, &s| {
                    let start = *acc;
                    *acc += s;
                    Some(start)
                })
                .collect()
        };
        let (ro, co) = (offsets(row_sizes), offsets(col_sizes));
        let mut out = Matrix::zeros(ring, row_sizes.iter().sum(), col_sizes.iter().sum());
        for &(bi, bj) in placements {
            if row_sizes[bi] != col_sizes[bj] {
                return Err(Error::internal(format!(
                    "identity at block ({bi},{bj}) is {}x{}",
                    row_sizes[bi], col_sizes[bj]
                )));
            }
            for a in 0..row_sizes[bi] {
                out.set(ro[bi] + a, co[bj] + a, ring.one());
            }
        }
        Ok(out)
    }

    /// Rank by left-row-operation elimination.
    pub fn rank(&self) -> usize {
        if let Ring::PrimeField(p) = self.ring {
            return rank_mod_p(self, p);
        }
        let mut work = self.clone();
        eliminate(&mut work, None, false).len()
    }

    /// Reduced row echelon form with unit pivots and the left transform
    /// producing it.
    pub fn row_reduce_tracked(&self) -> TrackedReduction {
        let mut reduced = self.clone();
        let mut transform = Matrix::identity(self.ring, self.rows);
        let pivot_columns = eliminate(&mut reduced, Some(&mut transform), true);
        TrackedReduction {
            reduced,
            transform,
            pivot_columns,
        }
    }

    pub fn invert(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::shape(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let red = self.row_reduce_tracked();
        if red.rank() < self.rows {
            return Err(Error::SingularMatrix);
        }
        Ok(red.transform)
    }

    /// Basis (as columns) of `{x : self * x = 0}`.
    pub fn right_null_space(&self) -> Matrix {
        let red = self.row_reduce_tracked();
        let free: Vec<usize> = (0..self.cols).filter(|c| !red.pivot_columns.contains(c)).collect();
        let mut basis = Matrix::zeros(self.ring, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, self.ring.one());
            for (i, &pc) in red.pivot_columns.iter().enumerate() {
                basis.set(pc, k, -red.reduced.get(i, f));
            }
        }
        basis
    }

    /// Column indices forming a basis of the right column space.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut work = self.clone();
        eliminate(&mut work, None, false)
    }

    /// Some `x` with `self * x = rhs`, if one exists.
    pub fn solve_right(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        if rhs.rows != self.rows {
            return Err(Error::shape(format!(
                "right-hand side has {} rows, matrix has {}",
                rhs.rows, self.rows
            )));
        }
        let aug = Matrix::hstack_sized(self.ring, self.rows, &[self, rhs])?;
        let red = aug.row_reduce_tracked();
        if red.pivot_columns.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.ring, self.cols, rhs.cols);
        for (i, &pc) in red.pivot_columns.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, red.reduced.get(i, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        let (name, p) = ring_tag(self.ring);
        obj.insert("ring".into(), json!(name));
        if let Some(p) = p {
            obj.insert("p".into(), json!(p));
        }
        obj.insert("rows".into(), json!(self.rows));
        obj.insert("cols".into(), json!(self.cols));
        let data: Vec<Value> = (0..self.rows)
            .map(|i| Value::Array(self.row(i).iter().map(Element::to_json).collect()))
            .collect();
        obj.insert("data".into(), Value::Array(data));
        Value::Object(obj)
    }

    pub fn from_json(value: &Value) -> Result<Matrix> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("matrix must be a JSON object".into()))?;
        let ring = ring_from_tag(obj)?;
        let dim = |key: &str| -> Result<usize> {
            obj.get(key)
                .and_then(Value::as_u64)
                .map(|v| v as usize)
                .ok_or_else(|| Error::Parse(format!("matrix field `{key}` missing or not a count")))
        };
        let (rows, cols) = (dim("rows")?, dim("cols")?);
        let data = obj
            .get("data")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("matrix field `data` missing".into()))?;
        if data.len() != rows {
            return Err(Error::Parse(format!(
                "`data` has {} rows, `rows` says {rows}",
                data.len()
            )));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for (i, row) in data.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse(format!("`data[{i}]` is not an array")))?;
            if row.len() != cols {
                return Err(Error::Parse(format!(
                    "`data[{i}]` has {} entries, `cols` says {cols}",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                entries.push(
                    ring.element_from_json(v)
                        .map_err(|e| Error::Parse(format!("`data[{i}][{j}]`: {e}")))?,
                );
            }
        }
        Matrix::new(ring, rows, cols, entries)
    }
}

/// The `ring`/`p` pair used by the JSON interchange format.
pub fn ring_tag(ring: Ring) -> (&'static str, Option<u64>) {
    match ring {
        Ring::Rationals => ("rationals", None),
        Ring::PrimeField(p) => ("prime_field", Some(p)),
        Ring::RationalQuaternions => ("rational_quaternions", None),
    }
}

pub fn ring_from_tag(obj: &Map<String, Value>) -> Result<Ring> {
    let name = obj
        .get("ring")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("field `ring` missing".into()))?;
    match name {
        "rationals" => Ok(Ring::Rationals),
        "rational_quaternions" => Ok(Ring::RationalQuaternions),
        "prime_field" => {
            let p = obj
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("field `p` missing for prime_field".into()))?;
            Ring::prime_field(p)
        }
        other => other.parse(),
    }
}

impl serde::Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Matrix, D::Error> {
        let value = Value::deserialize(deserializer)?;
        Matrix::from_json(&value).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[{}x{} over {}]", self.rows, self.cols, self.ring);
        }
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let w = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>w$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

/// Gauss-Jordan on `m`, mirroring every row operation on `track`.
/// Returns pivot columns. Without `full`, rows above a pivot are left alone.
fn eliminate(m: &mut Matrix, mut track: Option<&mut Matrix>, full: bool) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if pr != r {
            swap_rows(m, pr, r);
            if let Some(t) = track.as_deref_mut() {
                swap_rows(t, pr, r);
            }
        }
        let inv = m.get(r, c).invert().expect("nonzero pivot");
        scale_row_left(m, r, &inv, c);
        if let Some(t) = track.as_deref_mut() {
            scale_row_left(t, r, &inv, 0);
        }
        let start = if full { 0 } else { r + 1 };
        for i in start..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if factor.is_zero() {
                continue;
            }
            add_left_multiple(m, i, r, &factor, c);
            if let Some(t) = track.as_deref_mut() {
                add_left_multiple(t, i, r, &factor, 0);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn swap_rows(m: &mut Matrix, a: usize, b: usize) {
    let cols = m.cols;
    for j in 0..cols {
        m.data.swap(a * cols + j, b * cols + j);
    }
}

fn scale_row_left(m: &mut Matrix, row: usize, c: &Element, from: usize) {
    let cols = m.cols;
    for j in from..cols {
        let idx = row * cols + j;
        if !m.data[idx].is_zero() {
            m.data[idx] = c * &m.data[idx];
        }
    }
}

/// `row_i <- row_i - factor * row_src`.
fn add_left_multiple(m: &mut Matrix, target: usize, src: usize, factor: &Element, from: usize) {
    let cols = m.cols;
    for j in from..cols {
        let s = &m.data[src * cols + j];
        if s.is_zero() {
            continue;
        }
        let delta = factor * s;
        let idx = target * cols + j;
        m.data[idx] = &m.data[idx] - &delta;
    }
}

fn rank_mod_p(m: &Matrix, p: u64) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<u64> = m
        .data
        .iter()
        .map(|e| match e {
            Element::Residue { value, .. } => *value,
            _ => unreachable!("prime-field matrix"),
        })
        .collect();
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = m.ring.from_i64(a[r * cols + c] as i64).invert().expect("nonzero pivot");
        let Element::Residue { value: inv, .. } = inv else {
            unreachable!()
        };
        for j in c..cols {
            a[r * cols + j] = mul(a[r * cols + j], inv);
        }
        for i in r + 1..rows {
            let f = a[i * cols + c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let s = a[r * cols + j];
                if s != 0 {
                    a[i * cols + j] = (a[i * cols + j] + p - mul(f, s)) % p;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quat(w: i64, x: i64, y: i64, z: i64) -> Element {
        Ring::RationalQuaternions
            .from_coords(&[w, x, y, z].map(|c| Ring::Rationals.from_i64(c)))
            .unwrap()
    }

    #[test]
    fn spec_ranks() {
        assert_eq!(Matrix::identity(Ring::Rationals, 3).rank(), 3);
        assert_eq!(Matrix::zeros(Ring::PrimeField(3), 2, 5).rank(), 0);
        let h = Ring::RationalQuaternions;
        let col = Matrix::from_rows(h, vec![vec![quat(0, 1, 0, 0)], vec![quat(0, 0, 1, 0)]]).unwrap();
        assert_eq!(col.rank(), 1);
        let m = Matrix::from_rows(
            h,
            vec![
                vec![quat(0, 1, 0, 0), quat(0, 0, 1, 0)],
                vec![quat(0, 0, 0, 1), quat(-1, 0, 0, 0)],
            ],
        )
        .unwrap();
        // k * i^-1 * j = 1, so the second row is a left multiple of the first
        // only when its last entry is +1
        assert_eq!(m.rank(), 2);
        let m = Matrix::from_rows(
            h,
            vec![
                vec![quat(0, 1, 0, 0), quat(0, 0, 1, 0)],
                vec![quat(0, 0, 0, 1), quat(1, 0, 0, 0)],
            ],
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn tracked_reduction_example() {
        let m = Matrix::from_i64(Ring::Rationals, &[&[2, 4], &[1, 2]]);
        let red = m.row_reduce_tracked();
        assert_eq!(red.reduced, Matrix::from_i64(Ring::Rationals, &[&[1, 2], &[0, 0]]));
        assert_eq!(red.pivot_columns, vec![0]);
        assert_eq!(red.transform.matmul(&m).unwrap(), red.reduced);
    }

    #[test]
    fn trivial_reductions() {
        let id = Matrix::identity(Ring::PrimeField(5), 3);
        let red = id.row_reduce_tracked();
        assert_eq!((red.reduced.clone(), red.transform.clone()), (id.clone(), id.clone()));
        assert_eq!(red.pivot_columns, vec![0, 1, 2]);
        let z = Matrix::zeros(Ring::Rationals, 2, 3);
        let red = z.row_reduce_tracked();
        assert_eq!(red.reduced, z);
        assert!(red.transform.is_identity());
        assert!(red.pivot_columns.is_empty());
    }

    #[test]
    fn block_identities() {
        let r = Ring::Rationals;
        let i2 = Matrix::identity(r, 2);
        let i3 = Matrix::identity(r, 3);
        let grid = vec![vec![Block::Of(&i2), Block::Zero], vec![Block::Zero, Block::Of(&i3)]];
        assert_eq!(Matrix::block(&grid).unwrap(), Matrix::identity(r, 5));
        let single = vec![vec![Block::Of(&i3)]];
        assert_eq!(Matrix::block(&single).unwrap(), i3);
    }

    #[test]
    fn block_reports_coordinate() {
        let r = Ring::Rationals;
        let a = Matrix::zeros(r, 2, 2);
        let b = Matrix::zeros(r, 3, 1);
        let err = Matrix::block(&[vec![Block::Of(&a), Block::Of(&b)]]).unwrap_err();
        assert_eq!(err, Error::shape("block (0,1) has 3 rows, expected 2"));
    }

    #[test]
    fn gf5_inverse() {
        let f = Ring::PrimeField(5);
        let m = Matrix::from_i64(f, &[&[2, 0], &[0, 3]]);
        assert_eq!(m.invert().unwrap(), Matrix::from_i64(f, &[&[3, 0], &[0, 2]]));
        assert_eq!(
            Matrix::from_i64(f, &[&[1, 2], &[2, 4]]).invert(),
            Err(Error::SingularMatrix)
        );
        assert!(matches!(Matrix::zeros(f, 2, 3).invert(), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn quaternion_conjugate_transpose() {
        let h = Ring::RationalQuaternions;
        let m = Matrix::from_rows(h, vec![vec![quat(0, 1, 0, 0), quat(0, 0, 1, 0)]]).unwrap();
        let expected = Matrix::from_rows(h, vec![vec![quat(0, -1, 0, 0)], vec![quat(0, 0, -1, 0)]]).unwrap();
        assert_eq!(m.conjugate_transpose(), expected);
    }

    #[test]
    fn null_space_and_solve() {
        let r = Ring::Rationals;
        let m = Matrix::from_i64(r, &[&[1, 2, 3], &[2, 4, 6]]);
        let n = m.right_null_space();
        assert_eq!(n.cols(), 2);
        assert!(m.matmul(&n).unwrap().is_zero());
        let rhs = Matrix::from_i64(r, &[&[6], &[12]]);
        let x = m.solve_right(&rhs).unwrap().unwrap();
        assert_eq!(m.matmul(&x).unwrap(), rhs);
        let bad = Matrix::from_i64(r, &[&[1], &[1]]);
        assert_eq!(m.solve_right(&bad).unwrap(), None);
    }

    #[test]
    fn empty_matrices() {
        let r = Ring::PrimeField(2);
        let e = Matrix::zeros(r, 3, 0);
        assert_eq!(e.rank(), 0);
        let a = Matrix::identity(r, 3);
        assert_eq!(Matrix::hstack(&[&a, &e]).unwrap(), a);
        assert_eq!(Matrix::zeros(r, 0, 0).invert().unwrap(), Matrix::zeros(r, 0, 0));
    }

    #[test]
    fn json_round_trip() {
        let h = Ring::RationalQuaternions;
        let m = Matrix::from_rows(h, vec![vec![quat(1, 0, -2, 3), h.from_ratio(1, 3).unwrap()]]).unwrap();
        let text = m.to_json().to_string();
        let back = Matrix::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_json().to_string(), text);
        let g = Matrix::from_i64(Ring::PrimeField(7), &[&[1, 6]]);
        assert_eq!(
            g.to_json().to_string(),
            r#"{"cols":2,"data":[[1,6]],"p":7,"ring":"prime_field","rows":1}"#
        );
    }

    #[test]
    fn json_errors_name_the_field() {
        let bad = serde_json::json!({"ring": "rationals", "rows": 1, "cols": 2, "data": [["1"]]});
        let err = Matrix::from_json(&bad).unwrap_err().to_string();
        assert!(err.contains("data[0]"), "{err}");
        let no_p = serde_json::json!({"ring": "prime_field", "rows": 0, "cols": 0, "data": []});
        assert!(Matrix::from_json(&no_p).unwrap_err().to_string().contains("`p`"));
    }
}
