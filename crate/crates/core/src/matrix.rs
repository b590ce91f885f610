//! Dense exact linear algebra over a fixed cyclotomic field.
//!
//! Everything here is plain Gaussian elimination with exact division — no
//! pivot-size heuristics, no floating point.  Pivoting is leftmost nonzero
//! column, first nonzero row, which makes every echelon form (and hence
//! every basis this module returns) deterministic.

use crate::cyclo::{CycloElement, CycloError};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("shape mismatch: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u64, u64),
    #[error("matrix is singular")]
    Singular,
    #[error("linear system has no unique solution")]
    NoUniqueSolution,
    #[error("matrix is not scalar: entry ({0},{1}) breaks the pattern")]
    NotScalar(usize, usize),
    #[error("empty constraint list gives no matrix sizes to solve for")]
    NoConstraints,
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// Row-major matrix of cyclotomic entries, all of one order.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    order: u64,
    rows: usize,
    cols: usize,
    data: Vec<CycloElement>,
}

impl ExactMatrix {
    pub fn zero(order: u64, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            order,
            rows,
            cols,
            data: vec![CycloElement::zero(order); rows * cols],
        }
    }

    pub fn identity(order: u64, n: usize) -> Self {
        let mut m = Self::zero(order, n, n);
        for i in 0..n {
            m.set(i, i, CycloElement::one(order));
        }
        m
    }

    pub fn scalar(order: u64, n: usize, c: &CycloElement) -> Self {
        let mut m = Self::zero(order, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    /// The matrix sending basis vector e_x to e_{perm[x]}.
    pub fn permutation(order: u64, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zero(order, n, n);
        for (x, &px) in perm.iter().enumerate() {
            assert!(px < n, "permutation image out of range");
            m.set(px, x, CycloElement::one(order));
        }
        m
    }

    pub fn from_rows(order: u64, rows: Vec<Vec<CycloElement>>) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(order, nrows, ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(MatrixError::ShapeMismatch(nrows, ncols, i, row.len()));
            }
            for (j, v) in row.into_iter().enumerate() {
                if v.order() != order {
                    return Err(MatrixError::OrderMismatch(order, v.order()));
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &CycloElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycloElement) {
        assert_eq!(v.order(), self.order, "entry order mismatch");
        self.data[r * self.cols + c] = v;
    }

    fn check_order(&self, other: &Self) -> Result<(), MatrixError> {
        if self.order != other.order {
            return Err(MatrixError::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_order(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::ShapeMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.add(b);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.neg();
        }
        out
    }

    pub fn scale(&self, c: &CycloElement) -> Self {
        assert_eq!(c.order(), self.order, "scalar order mismatch");
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.mul(c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_order(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::ShapeMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = Self::zero(self.order, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.order, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> CycloElement {
        assert_eq!(self.rows, self.cols, "trace needs a square matrix");
        let mut t = CycloElement::zero(self.order);
        for i in 0..self.rows {
            t = t.add(self.at(i, i));
        }
        t
    }

    pub fn kron(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_order(other)?;
        let mut out = Self::zero(self.order, self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.at(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        out.set(
                            i1 * other.rows + i2,
                            j1 * other.cols + j2,
                            a.mul(other.at(i2, j2)),
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn promote(&self, new_order: u64) -> Result<Self, MatrixError> {
        let mut out = Self::zero(new_order, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).promote(new_order)?);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycloElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    /// The unique c with self = c·identity, if the matrix has that shape.
    pub fn as_scalar(&self) -> Result<CycloElement, MatrixError> {
        if self.rows != self.cols || self.rows == 0 {
            return Err(MatrixError::ShapeMismatch(self.rows, self.cols, self.rows, self.rows));
        }
        let c = self.at(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want_nonzero = i == j;
                if want_nonzero && self.at(i, j) != &c {
                    return Err(MatrixError::NotScalar(i, j));
                }
                if !want_nonzero && !self.at(i, j).is_zero() {
                    return Err(MatrixError::NotScalar(i, j));
                }
            }
        }
        Ok(c)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    let a = m.at(row, c).clone();
                    let b = m.at(pr, c).clone();
                    m.set(row, c, b);
                    m.set(pr, c, a);
                }
            }
            let inv = m
                .at(row, col)
                .inv()
                .expect("pivot is nonzero by selection");
            for c in 0..m.cols {
                m.set(row, c, m.at(row, c).mul(&inv));
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let f = m.at(r, col).clone();
                    for c in 0..m.cols {
                        let v = m.at(r, c).sub(&f.mul(m.at(row, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::ShapeMismatch(self.rows, self.cols, self.cols, self.rows));
        }
        let n = self.rows;
        let mut aug = Self::zero(self.order, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, CycloElement::one(self.order));
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return Err(MatrixError::Singular);
        }
        let mut out = Self::zero(self.order, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.at(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Unique X with self·X = rhs; requires full column rank and consistency.
    pub fn solve_right(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.check_order(rhs)?;
        if self.rows != rhs.rows {
            return Err(MatrixError::ShapeMismatch(
                self.rows, self.cols, rhs.rows, rhs.cols,
            ));
        }
        let mut aug = Self::zero(self.order, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            for j in 0..rhs.cols {
                aug.set(i, self.cols + j, rhs.at(i, j).clone());
            }
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != self.cols || pivots.iter().any(|&c| c >= self.cols) {
            return Err(MatrixError::NoUniqueSolution);
        }
        for i in self.cols..self.rows {
            for j in 0..rhs.cols {
                if !r.at(i, self.cols + j).is_zero() {
                    return Err(MatrixError::NoUniqueSolution);
                }
            }
        }
        let mut x = Self::zero(self.order, self.cols, rhs.cols);
        for i in 0..self.cols {
            for j in 0..rhs.cols {
                x.set(i, j, r.at(i, self.cols + j).clone());
            }
        }
        Ok(x)
    }

    /// The columns of self at the echelon pivot positions: a deterministic
    /// basis of the column space consisting of original columns.
    pub fn column_space_basis(&self) -> Self {
        let (_, pivots) = self.rref();
        let mut out = Self::zero(self.order, self.rows, pivots.len());
        for (k, &c) in pivots.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, k, self.at(i, c).clone());
            }
        }
        out
    }

    /// Basis vectors of the right null space, one per free column.
    pub fn null_space_basis(&self) -> Vec<Vec<CycloElement>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![CycloElement::zero(self.order); self.cols];
            v[free] = CycloElement::one(self.order);
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = r.at(prow, free).neg();
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over Q(z{})", self.rows, self.cols, self.order)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{}", self.at(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Simultaneous solution basis of T·A_k = B_k·T over all constraint pairs.
///
/// With A_k of size m and B_k of size n, the unknown T is n×m.  The returned
/// basis is in reduced echelon form under row-major vectorization of T, so
/// it is canonical for a given constraint list.
pub fn solve_sylvester(
    constraints: &[(ExactMatrix, ExactMatrix)],
) -> Result<Vec<ExactMatrix>, MatrixError> {
    let (first_a, first_b) = constraints.first().ok_or(MatrixError::NoConstraints)?;
    let order = first_a.order();
    let m = first_a.rows();
    let n = first_b.rows();
    for (a, b) in constraints {
        if a.rows() != m || a.cols() != m || b.rows() != n || b.cols() != n {
            return Err(MatrixError::ShapeMismatch(a.rows(), a.cols(), b.rows(), b.cols()));
        }
        if a.order() != order || b.order() != order {
            return Err(MatrixError::OrderMismatch(order, a.order().max(b.order())));
        }
    }
    let unknowns = n * m;
    let mut system = ExactMatrix::zero(order, constraints.len() * unknowns, unknowns);
    for (k, (a, b)) in constraints.iter().enumerate() {
        for i in 0..n {
            for j in 0..m {
                let row = (k * n + i) * m + j;
                // (T·A)_{ij} contributes A_{cj} at unknown T_{ic}.
                for c in 0..m {
                    let cur = system.at(row, i * m + c).add(a.at(c, j));
                    system.set(row, i * m + c, cur);
                }
                // (B·T)_{ij} contributes -B_{ir} at unknown T_{rj}.
                for r in 0..n {
                    let cur = system.at(row, r * m + j).sub(b.at(i, r));
                    system.set(row, r * m + j, cur);
                }
            }
        }
    }
    let kernel = system.null_space_basis();
    if kernel.is_empty() {
        return Ok(Vec::new());
    }
    // Canonicalize: the kernel vectors become rows of a matrix whose reduced
    // echelon form is the basis actually returned.
    let stacked = ExactMatrix::from_rows(order, kernel)?;
    let (reduced, pivots) = stacked.rref();
    let mut out = Vec::with_capacity(pivots.len());
    for r in 0..pivots.len() {
        let mut t = ExactMatrix::zero(order, n, m);
        for i in 0..n {
            for j in 0..m {
                t.set(i, j, reduced.at(r, i * m + j).clone());
            }
        }
        out.push(t);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn m(order: u64, rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            order,
            rows.iter()
                .map(|r| r.iter().map(|&v| CycloElement::from_int(order, v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn product_and_transpose() {
        let a = m(1, &[&[1, 2], &[3, 4]]);
        let b = m(1, &[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), m(1, &[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), m(1, &[&[1, 3], &[2, 4]]));
        assert_eq!(a.trace(), CycloElement::from_int(1, 5));
    }

    #[test]
    fn rref_finds_pivots_deterministically() {
        let a = m(1, &[&[0, 2, 4], &[1, 1, 1], &[1, 3, 5]]);
        let (r, pivots) = a.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r, m(1, &[&[1, 0, -1], &[0, 1, 2], &[0, 0, 0]]));
        let (again, _) = r.rref();
        assert_eq!(again, r);
    }

    #[test]
    fn inverse_with_cyclotomic_entries() {
        let i = CycloElement::root_of_unity(4, 1);
        let mut a = ExactMatrix::identity(4, 2);
        a.set(0, 1, i.clone());
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert_eq!(inv.at(0, 1), &i.neg());
        let sing = m(1, &[&[1, 2], &[2, 4]]);
        assert_eq!(sing.inverse(), Err(MatrixError::Singular));
    }

    #[test]
    fn solve_right_unique_solution() {
        let a = m(1, &[&[1, 0], &[1, 1], &[0, 3]]);
        let rhs = m(1, &[&[2], &[5], &[9]]);
        let x = a.solve_right(&rhs).unwrap();
        assert_eq!(a.mul(&x).unwrap(), rhs);
        let bad = m(1, &[&[1], &[1], &[1]]);
        assert_eq!(a.solve_right(&bad), Err(MatrixError::NoUniqueSolution));
    }

    #[test]
    fn null_space_of_rank_one_row() {
        let a = m(1, &[&[1, 1]]);
        let ns = a.null_space_basis();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0], CycloElement::from_int(1, -1));
        assert_eq!(ns[0][1], CycloElement::one(1));
    }

    #[test]
    fn column_space_basis_picks_original_columns() {
        let a = m(1, &[&[1, 2, 0], &[2, 4, 1]]);
        let b = a.column_space_basis();
        assert_eq!(b, m(1, &[&[1, 0], &[2, 1]]));
    }

    #[test]
    fn kronecker_product_shapes_and_values() {
        let swap = m(1, &[&[0, 1], &[1, 0]]);
        let id = ExactMatrix::identity(1, 2);
        let k = swap.kron(&id).unwrap();
        assert_eq!(k.rows(), 4);
        assert!(k.at(0, 2).is_one());
        assert!(k.at(1, 3).is_one());
        assert!(k.at(2, 0).is_one());
        assert!(k.at(0, 0).is_zero());
    }

    #[test]
    fn scalar_detection() {
        let s = ExactMatrix::scalar(1, 3, &CycloElement::from_int(1, 3));
        assert_eq!(s.as_scalar().unwrap(), CycloElement::from_int(1, 3));
        let mut bad = s.clone();
        bad.set(1, 1, CycloElement::from_int(1, 2));
        assert_eq!(bad.as_scalar(), Err(MatrixError::NotScalar(1, 1)));
        let mut off = s;
        off.set(0, 2, CycloElement::one(1));
        assert_eq!(off.as_scalar(), Err(MatrixError::NotScalar(0, 2)));
    }

    #[test]
    fn permutation_matrix_action() {
        let p = ExactMatrix::permutation(1, &[1, 2, 0]);
        let e0 = m(1, &[&[1], &[0], &[0]]);
        let moved = p.mul(&e0).unwrap();
        assert!(moved.at(1, 0).is_one());
    }

    #[test]
    fn sylvester_identity_constraints_span_everything() {
        let id = ExactMatrix::identity(1, 2);
        let basis = solve_sylvester(&[(id.clone(), id)]).unwrap();
        assert_eq!(basis.len(), 4);
        // Echelon canonical form: the standard matrix units in row-major order.
        for (k, t) in basis.iter().enumerate() {
            for i in 0..2 {
                for j in 0..2 {
                    let want = if i * 2 + j == k { 1 } else { 0 };
                    assert_eq!(t.at(i, j), &CycloElement::from_int(1, want));
                }
            }
        }
    }

    #[test]
    fn sylvester_diagonal_constraint_keeps_diagonals() {
        let d = m(1, &[&[1, 0], &[0, -1]]);
        let basis = solve_sylvester(&[(d.clone(), d)]).unwrap();
        assert_eq!(basis.len(), 2);
        for t in &basis {
            assert!(t.at(0, 1).is_zero());
            assert!(t.at(1, 0).is_zero());
        }
    }

    #[test]
    fn sylvester_distinct_scalars_force_zero() {
        let a = ExactMatrix::scalar(1, 2, &CycloElement::from_int(1, 2));
        let b = ExactMatrix::scalar(1, 2, &CycloElement::from_int(1, 3));
        assert!(solve_sylvester(&[(a, b)]).unwrap().is_empty());
    }

    #[test]
    fn sylvester_solutions_satisfy_constraints() {
        let a = m(1, &[&[0, 1], &[1, 0]]);
        let b = m(1, &[&[0, 1], &[1, 0]]);
        let basis = solve_sylvester(&[(a.clone(), b.clone())]).unwrap();
        assert!(!basis.is_empty());
        for t in &basis {
            assert_eq!(t.mul(&a).unwrap(), b.mul(t).unwrap());
        }
    }

    #[test]
    fn promote_embeds_entries() {
        let z3 = CycloElement::root_of_unity(3, 1);
        let mut a = ExactMatrix::identity(3, 1);
        a.set(0, 0, z3);
        let up = a.promote(6).unwrap();
        assert_eq!(up.at(0, 0), &CycloElement::root_of_unity(6, 2));
    }

    #[test]
    fn scale_multiplies_every_entry() {
        let a = m(1, &[&[1, 2], &[3, 4]]);
        let s = a.scale(&CycloElement::from_rational(1, rat_int(2)));
        assert_eq!(s, m(1, &[&[2, 4], &[6, 8]]));
    }
}
