//! Dense linear algebra over GF(2).
//!
//! Matrices are small (at most a few dozen rows and `2n` columns for the codes
//! handled here) so everything is plain row-major Gaussian elimination.
//!
//! The rewiring systems are written as `Λ · (β_Z ; β_X) = rhs`: a row
//! `(r_X | r_Z)` of `Λ` pairs its X-block with `β_Z` and its Z-block with
//! `β_X`, which makes each entry of the product the commutation bit
//! `c(row, X_{β_X} Z_{β_Z})`. Solutions returned by [`GF2Matrix::solve_affine`]
//! on such systems are therefore laid out Z-half first.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::bits::BitVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("row {row} has {found} columns, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },
    #[error("right-hand side has length {found}, matrix has {expected} rows")]
    RhsLength { expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(&'static str),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GF2Matrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: (0..rows).map(|_| BitVec::zeros(cols)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows, which must all have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self, Gf2Error> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Gf2Error::RaggedRows {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
        }
        Ok(Self { cols, rows })
    }

    /// Builds a matrix from 0/1 literals.
    pub fn from_u8_rows(rows: &[&[u8]]) -> Result<Self, Gf2Error> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| BitVec::from_u8s(r)).collect())
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn push_row(&mut self, row: BitVec) -> Result<(), Gf2Error> {
        if row.len() != self.cols {
            return Err(Gf2Error::RaggedRows {
                row: self.rows.len(),
                expected: self.cols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn transpose(&self) -> GF2Matrix {
        let mut t = GF2Matrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::Dimension("vector length must equal column count"));
        }
        Ok(BitVec::from_bools(self.rows.iter().map(|row| row.dot(v))))
    }

    pub fn mul(&self, other: &GF2Matrix) -> Result<GF2Matrix, Gf2Error> {
        if self.cols != other.num_rows() {
            return Err(Gf2Error::Dimension("inner dimensions differ"));
        }
        let mut out = GF2Matrix::zeros(self.rows.len(), other.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for k in row.ones() {
                out.rows[r].xor_assign(&other.rows[k]);
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and its pivot columns. Zero rows are kept at
    /// the bottom so the shape is unchanged.
    pub fn rref(&self) -> (GF2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == m.rows.len() {
                break;
            }
            let Some(found) = (next..m.rows.len()).find(|&r| m.rows[r].get(col)) else {
                continue;
            };
            m.rows.swap(next, found);
            let pivot_row = m.rows[next].clone();
            for (r, row) in m.rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{ v : M v = 0 }`, one vector per free column.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = alloc::vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVec::unit(self.cols, free);
                for (r, &p) in pivots.iter().enumerate() {
                    if reduced.rows[r].get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// All solutions of `M v = rhs`, or `None` when `rhs` is outside the
    /// column space. The particular solution sets every free variable to zero.
    pub fn solve_affine(&self, rhs: &BitVec) -> Result<Option<AffineSolutionSpace>, Gf2Error> {
        if rhs.len() != self.rows.len() {
            return Err(Gf2Error::RhsLength {
                expected: self.rows.len(),
                found: rhs.len(),
            });
        }
        // Augment with the right-hand side as an extra column.
        let augmented = GF2Matrix {
            cols: self.cols + 1,
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, row)| row.concat(&BitVec::from_bools([rhs.get(i)])))
                .collect(),
        };
        let (reduced, pivots) = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut particular = BitVec::zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            if reduced.rows[r].get(self.cols) {
                particular.set(p, true);
            }
        }
        Ok(Some(AffineSolutionSpace {
            particular,
            basis: self.nullspace(),
        }))
    }

    /// True when `v` lies in the row space.
    pub fn row_space_contains(&self, v: &BitVec) -> bool {
        RowReducer::new(self.rows.iter().cloned()).reduce(v.clone()).is_zero()
    }
}

impl fmt::Debug for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GF2Matrix {}x{} [", self.rows.len(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        f.write_str("]")
    }
}

/// Incremental echelon basis for span-membership tests.
#[derive(Clone, Debug, Default)]
pub struct RowReducer {
    basis: Vec<(usize, BitVec)>,
}

impl RowReducer {
    pub fn new<I: IntoIterator<Item = BitVec>>(rows: I) -> Self {
        let mut r = Self::default();
        for row in rows {
            r.insert(row);
        }
        r
    }

    /// Reduces `v` against the current basis.
    pub fn reduce(&self, mut v: BitVec) -> BitVec {
        for (pivot, row) in &self.basis {
            if v.get(*pivot) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Adds `v` to the span; returns `false` if it was already dependent.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let v = self.reduce(v);
        let Some(pivot) = v.first_one() else {
            return false;
        };
        // Keep the basis fully reduced on its own pivots.
        for (_, row) in &mut self.basis {
            if row.get(pivot) {
                row.xor_assign(&v);
            }
        }
        self.basis.push((pivot, v));
        true
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Solution set `particular ⊕ span(basis)` of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionSpace {
    pub particular: BitVec,
    pub basis: Vec<BitVec>,
}

impl AffineSolutionSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Member selected by a coefficient vector over the basis.
    pub fn member(&self, coefficients: &BitVec) -> BitVec {
        assert_eq!(coefficients.len(), self.basis.len());
        let mut v = self.particular.clone();
        for j in coefficients.ones() {
            v.xor_assign(&self.basis[j]);
        }
        v
    }

    /// Member number `index` in lexicographic order of coefficient tuples
    /// `(c_0, …, c_{d-1})`, `c_0` most significant.
    pub fn member_at(&self, index: u64) -> BitVec {
        let d = self.basis.len();
        assert!(d >= 64 || index < (1u64 << d), "solution index out of range");
        let coefficients = BitVec::from_bools((0..d).map(|j| {
            let shift = d - 1 - j;
            shift < 64 && (index >> shift) & 1 == 1
        }));
        self.member(&coefficients)
    }

    /// Members in lexicographic coefficient order, starting at the particular
    /// solution. Stops after `2^64` members for very large spaces.
    pub fn iter(&self) -> impl Iterator<Item = BitVec> + '_ {
        let d = self.basis.len();
        let count = if d >= 64 { u64::MAX } else { 1u64 << d };
        (0..count).map(move |i| self.member_at(i))
    }

    /// Members ordered by the number of basis vectors mixed in, then
    /// lexicographically within each count.
    pub fn iter_by_weight(&self) -> impl Iterator<Item = BitVec> + '_ {
        let d = self.basis.len();
        (0..=d).flat_map(move |w| {
            Combinations::new(d, w).map(move |set| {
                let mut v = self.particular.clone();
                for j in set {
                    v.xor_assign(&self.basis[j]);
                }
                v
            })
        })
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        RowReducer::new(self.basis.iter().cloned())
            .reduce(v.xor(&self.particular))
            .is_zero()
    }
}

/// Lexicographic `k`-subsets of `0..n`.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut idx = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if idx[i] < self.n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                self.current = Some(idx);
                break;
            }
        }
        Some(out)
    }
}

/// Assembles `Λ(M, α, L_X, L_Z)`: stabilizer rows, then the optional α row
/// `(α_X | α_Z)`, then `L_X^{(j)}`, `L_Z^{(j)}` for each logical qubit in turn.
pub fn build_lambda(
    stabilizers: &GF2Matrix,
    alpha: Option<(&BitVec, &BitVec)>,
    logicals: &[(BitVec, BitVec)],
) -> Result<GF2Matrix, Gf2Error> {
    let cols = stabilizers.num_cols();
    let mut lambda = stabilizers.clone();
    if let Some((ax, az)) = alpha {
        lambda.push_row(ax.concat(az))?;
    }
    for (lx, lz) in logicals {
        lambda.push_row(lx.clone())?;
        lambda.push_row(lz.clone())?;
    }
    if lambda.num_cols() != cols {
        return Err(Gf2Error::Dimension("Λ width changed"));
    }
    Ok(lambda)
}
