//! Linear matroids over prime fields.
//!
//! Representations are plain dense matrices whose columns are the ground
//! elements. Graphic, out-partition and uniform matroids have direct
//! constructions; direct sums are block diagonal and truncation multiplies by a
//! random matrix. Representative families use the exterior-algebra method: each
//! `s`-set becomes the vector of its `s x s` minors and a row basis of those
//! vectors is kept.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::graph::{Graph, Vertex};

/// The default field: `2^31 - 1`.
pub const DEFAULT_MODULUS: u64 = 2_147_483_647;

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_modulus(modulus: u64) -> Result<()> {
    if modulus >= 1 << 32 || !is_prime(modulus) {
        return invalid(format!("modulus {modulus} is not a prime below 2^32"));
    }
    Ok(())
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, m: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(m));
    pow_mod(a, m - 2, m)
}

/// Dense row-major matrix over `Z / modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(FieldMatrix {
            modulus,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    /// Builds a matrix from rows of (possibly unreduced) integers.
    pub fn from_rows(modulus: u64, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return invalid("ragged rows");
        }
        let mut m = FieldMatrix::zeros(modulus, rows.len(), cols)?;
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    fn unchecked_zeros(modulus: u64, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            modulus,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x % self.modulus;
    }

    /// `-1` as a field element.
    pub fn minus_one(&self) -> u64 {
        self.modulus - 1
    }

    pub fn select_columns(&self, cols: &[usize]) -> FieldMatrix {
        let mut out = FieldMatrix::unchecked_zeros(self.modulus, self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out.data[i * cols.len() + k] = self.get(i, j);
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> FieldMatrix {
        let mut out = FieldMatrix::unchecked_zeros(self.modulus, rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            out.data[k * self.cols..(k + 1) * self.cols]
                .copy_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        out
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut out = FieldMatrix::unchecked_zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.rows || self.modulus != other.modulus {
            return invalid("matrix shapes or moduli do not match");
        }
        let m = self.modulus;
        let mut out = FieldMatrix::unchecked_zeros(m, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cell = &mut out.data[i * other.cols + j];
                    *cell = (*cell + a * other.get(k, j)) % m;
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let m = self.modulus;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(sel) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if sel != row {
                for j in 0..self.cols {
                    self.data.swap(sel * self.cols + j, row * self.cols + j);
                }
            }
            let inv = inv_mod(self.get(row, col), m);
            for j in col..self.cols {
                let x = self.get(row, j);
                self.data[row * self.cols + j] = x * inv % m;
            }
            for r in 0..self.rows {
                let f = self.get(r, col);
                if r == row || f == 0 {
                    continue;
                }
                for j in col..self.cols {
                    let x = self.get(row, j);
                    let cell = &mut self.data[r * self.cols + j];
                    *cell = (*cell + (m - f) * x) % m;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.rref().len()
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> u64 {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let m = self.modulus;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1u64;
        for col in 0..n {
            let Some(sel) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if sel != col {
                for j in 0..n {
                    a.swap(sel * n + j, col * n + j);
                }
                det = (m - det) % m;
            }
            let pivot = a[col * n + col];
            det = det * pivot % m;
            let inv = inv_mod(pivot, m);
            for r in col + 1..n {
                let f = a[r * n + col] * inv % m;
                if f == 0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = (a[r * n + j] + (m - f) * a[col * n + j]) % m;
                }
            }
        }
        det
    }

    /// Rows spanning `{w : w^T A = 0}`, as a `(rows - rank) x rows` matrix.
    pub fn left_null_space(&self) -> FieldMatrix {
        let mut t = self.transpose();
        let pivots = t.rref();
        let free: Vec<usize> = (0..self.rows).filter(|c| !pivots.contains(c)).collect();
        let m = self.modulus;
        let mut out = FieldMatrix::unchecked_zeros(m, free.len(), self.rows);
        for (k, &f) in free.iter().enumerate() {
            out.data[k * self.rows + f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                let x = t.get(r, f);
                out.data[k * self.rows + pc] = (m - x) % m;
            }
        }
        out
    }
}

/// Label of a ground element: column `index` of part `part`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    pub part: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMatroid {
    pub matrix: FieldMatrix,
    pub ground: Vec<Element>,
}

impl LinearMatroid {
    pub fn new(matrix: FieldMatrix) -> Self {
        let ground = (0..matrix.cols()).map(|index| Element { part: 0, index }).collect();
        LinearMatroid { matrix, ground }
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Independence of a set of column positions; repeated positions are dependent.
    pub fn is_independent(&self, cols: &[usize]) -> bool {
        let mut sorted = cols.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == cols.len() && self.matrix.select_columns(cols).rank() == cols.len()
    }

    /// Same matroid with the matrix replaced by a basis of its row space.
    pub fn compressed(&self) -> LinearMatroid {
        let mut m = self.matrix.clone();
        let r = m.rref().len();
        let rows: Vec<usize> = (0..r).collect();
        LinearMatroid {
            matrix: m.select_rows(&rows),
            ground: self.ground.clone(),
        }
    }
}

/// Both orientations of every edge, sorted by `(tail, head)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcGround {
    pub arcs: Vec<(Vertex, Vertex)>,
    n: usize,
}

impl ArcGround {
    pub fn of(g: &Graph) -> Self {
        let mut arcs: Vec<(Vertex, Vertex)> = g.edges().iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
        arcs.sort_unstable();
        ArcGround { arcs, n: g.n() }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn index(&self, arc: (Vertex, Vertex)) -> Option<usize> {
        self.arcs.binary_search(&arc).ok()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }
}

/// Signed incidence matrix: arc `(u, v)` is `e_u - e_v`, so anti-parallel arcs
/// are parallel columns.
pub fn graphic_matroid_on_arcs(ground: &ArcGround, modulus: u64) -> Result<LinearMatroid> {
    let mut m = FieldMatrix::zeros(modulus, ground.vertex_count(), ground.len())?;
    for (j, &(u, v)) in ground.arcs.iter().enumerate() {
        m.set(u, j, 1);
        let minus = m.minus_one();
        m.set(v, j, minus);
    }
    Ok(LinearMatroid::new(m))
}

/// Arc `(u, v)` is the unit vector of its head `v`; arcs into `root` are zero.
pub fn out_partition_matroid(ground: &ArcGround, root: Vertex, modulus: u64) -> Result<LinearMatroid> {
    if root >= ground.vertex_count() {
        return invalid("root out of range");
    }
    let mut m = FieldMatrix::zeros(modulus, ground.vertex_count(), ground.len())?;
    for (j, &(_, v)) in ground.arcs.iter().enumerate() {
        if v != root {
            m.set(v, j, 1);
        }
    }
    Ok(LinearMatroid::new(m))
}

/// `r x n` Vandermonde matrix on the points `1..=n`.
pub fn uniform_matroid(n_elems: usize, r: usize, modulus: u64) -> Result<LinearMatroid> {
    check_modulus(modulus)?;
    if modulus <= n_elems as u64 {
        return invalid(format!("modulus {modulus} must exceed the ground size {n_elems}"));
    }
    let mut m = FieldMatrix::zeros(modulus, r, n_elems)?;
    for j in 0..n_elems {
        let x = j as u64 + 1;
        let mut power = 1u64;
        for i in 0..r {
            m.set(i, j, power);
            power = power * x % modulus;
        }
    }
    Ok(LinearMatroid::new(m))
}

/// Block-diagonal sum; element `(i, j)` is column `j` of part `i`.
pub fn direct_sum(parts: &[LinearMatroid]) -> Result<LinearMatroid> {
    let Some(first) = parts.first() else {
        return invalid("direct sum of no matroids");
    };
    let modulus = first.matrix.modulus();
    if parts.iter().any(|p| p.matrix.modulus() != modulus) {
        return invalid("all parts must share one modulus");
    }
    let rows: usize = parts.iter().map(|p| p.matrix.rows()).sum();
    let cols: usize = parts.iter().map(|p| p.matrix.cols()).sum();
    let mut m = FieldMatrix::zeros(modulus, rows, cols)?;
    let mut ground = Vec::with_capacity(cols);
    let (mut r0, mut c0) = (0, 0);
    for (pi, part) in parts.iter().enumerate() {
        for i in 0..part.matrix.rows() {
            for j in 0..part.matrix.cols() {
                m.set(r0 + i, c0 + j, part.matrix.get(i, j));
            }
        }
        ground.extend((0..part.matrix.cols()).map(|index| Element { part: pi, index }));
        r0 += part.matrix.rows();
        c0 += part.matrix.cols();
    }
    Ok(LinearMatroid { matrix: m, ground })
}

#[derive(Clone, Debug)]
pub struct Truncation {
    pub matroid: LinearMatroid,
    /// Upper bound on the probability that one fixed independent set of size
    /// at most `r` is reported dependent.
    pub failure_bound: f64,
}

/// Rank-`r` truncation: the compressed representation left-multiplied by a
/// uniformly random `r x rank` matrix.
pub fn truncate(m: &LinearMatroid, r: usize, seed: u64) -> Result<Truncation> {
    let base = m.compressed();
    let rank = base.matrix.rows();
    if r >= rank {
        return Ok(Truncation {
            matroid: base,
            failure_bound: 0.0,
        });
    }
    let modulus = base.matrix.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mix = FieldMatrix::zeros(modulus, r, rank)?;
    for i in 0..r {
        for j in 0..rank {
            mix.set(i, j, rng.gen_range(0..modulus));
        }
    }
    Ok(Truncation {
        matroid: LinearMatroid {
            matrix: mix.mul(&base.matrix)?,
            ground: base.ground,
        },
        failure_bound: r as f64 / modulus as f64,
    })
}

/// Calls `f` on every `size`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_subset(n: usize, size: usize, mut f: impl FnMut(&[usize])) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        f(&idx);
        let mut pos = size;
        while pos > 0 && idx[pos - 1] == n - size + pos - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return;
        }
        idx[pos - 1] += 1;
        for t in pos..size {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Exterior-algebra coordinates of the column span of `a` (`r x s`), up to a
/// nonzero scalar and a fixed sign per coordinate. Zero iff the columns are
/// dependent. For `s > r / 2` the minors of the left null space are used.
pub(crate) fn wedge_coordinates(a: &FieldMatrix) -> Vec<u64> {
    let (r, s) = (a.rows(), a.cols());
    if s > r {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(binomial(r, s) as usize);
    if s <= r - s {
        for_each_subset(r, s, |rows| out.push(a.select_rows(rows).det()));
    } else {
        let w = a.left_null_space();
        if w.rows() != r - s {
            return vec![0; binomial(r, s) as usize];
        }
        for_each_subset(r, r - s, |cols| out.push(w.select_columns(cols).det()));
    }
    out
}

/// Incrementally keeps the vectors that are linearly independent of the ones
/// kept before. Returns their positions.
pub(crate) fn independent_rows(vectors: &[Vec<u64>], modulus: u64) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut kept = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut v = v.clone();
        for (pc, row) in &basis {
            let f = v[*pc];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = (*x + (modulus - f) * y) % modulus;
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = inv_mod(v[pc], modulus);
            for x in v.iter_mut() {
                *x = *x * inv % modulus;
            }
            basis.push((pc, v));
            kept.push(idx);
        }
    }
    kept
}

/// Positions of a `q`-representative subfamily of `family` (sets of column
/// positions, all of one size `s`) in `m`, with at most `C(s + q, s)` members.
pub fn representative_indices(family: &[Vec<usize>], m: &LinearMatroid, q: usize, seed: u64) -> Result<Vec<usize>> {
    let Some(first) = family.first() else {
        return Ok(Vec::new());
    };
    let s = first.len();
    if family.iter().any(|x| x.len() != s) {
        return invalid("representative family needs sets of equal size");
    }
    let t = truncate(m, s + q, seed)?;
    let a = &t.matroid.matrix;
    let vectors: Vec<Vec<u64>> = family
        .iter()
        .map(|x| {
            let mut sorted = x.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != s {
                // repeated elements never extend anything
                return vec![0; binomial(a.rows(), s) as usize];
            }
            wedge_coordinates(&a.select_columns(x))
        })
        .collect();
    Ok(independent_rows(&vectors, a.modulus()))
}

/// A `q`-representative subfamily of `family` in `m`: for every `Y` with
/// `|Y| <= q`, some member extends `Y` iff some member of the output does.
pub fn representative_family(family: &[Vec<usize>], m: &LinearMatroid, q: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    let idx = representative_indices(family, m, q, seed)?;
    Ok(idx.into_iter().map(|i| family[i].clone()).collect())
}
