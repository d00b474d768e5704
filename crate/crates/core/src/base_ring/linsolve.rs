//! Exact sparse Gaussian elimination over a [`Field`].
//!
//! Columns are eliminated left to right. Within a column the pivot is the
//! candidate row with the fewest nonzeros, ties going to the lowest row index,
//! so reduced forms and certificates are reproducible run to run.

use std::collections::{BTreeMap, BTreeSet};

use super::scalar::{Field, Scalar};

pub type SparseVec = BTreeMap<usize, Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Field,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(field: Field, ncols: usize) -> SparseMatrix {
        SparseMatrix {
            field,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(field: Field, ncols: usize, rows: Vec<SparseVec>) -> SparseMatrix {
        let mut m = SparseMatrix::new(field, ncols);
        for r in rows {
            m.push_row(r);
        }
        m
    }

    pub fn from_dense(field: Field, ncols: usize, rows: &[Vec<i64>]) -> SparseMatrix {
        let mut m = SparseMatrix::new(field, ncols);
        for r in rows {
            assert_eq!(r.len(), ncols);
            m.push_row(
                r.iter()
                    .enumerate()
                    .map(|(j, v)| (j, field.from_i64(*v)))
                    .collect(),
            );
        }
        m
    }

    /// Builds the matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(field: Field, nrows: usize, cols: &[SparseVec]) -> SparseMatrix {
        let mut rows = vec![SparseVec::new(); nrows];
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col {
                if !v.is_zero() {
                    rows[*i].insert(j, v.clone());
                }
            }
        }
        SparseMatrix {
            field,
            ncols: cols.len(),
            rows,
        }
    }

    pub fn push_row(&mut self, mut row: SparseVec) {
        row.retain(|j, v| {
            assert!(*j < self.ncols, "column {j} out of range");
            !v.is_zero()
        });
        self.rows.push(row);
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.ncols);
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .fold(self.field.zero(), |acc, (j, v)| &acc + &(v * &x[*j]))
            })
            .collect()
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.field, self.ncols, &self.rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub matrix: SparseMatrix,
    pub rhs: Vec<Scalar>,
}

impl LinearSystem {
    pub fn new(matrix: SparseMatrix, rhs: Vec<Scalar>) -> LinearSystem {
        assert_eq!(matrix.nrows(), rhs.len(), "rhs length must match row count");
        LinearSystem { matrix, rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Solved {
        solution: Vec<Scalar>,
        nullspace: Vec<Vec<Scalar>>,
    },
    /// `Σ witness[i]·row[i] = 0` while `Σ witness[i]·rhs[i] = value ≠ 0`.
    Infeasible { witness: Vec<Scalar>, value: Scalar },
}

/// Reduced row echelon form: pivot rows sorted by pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub ncols: usize,
    pub pivots: Vec<(usize, SparseVec, Scalar)>,
    pub inconsistent: bool,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let used: BTreeSet<usize> = self.pivots.iter().map(|p| p.0).collect();
        (0..self.ncols).filter(|c| !used.contains(c)).collect()
    }

    pub fn nullspace(&self, field: Field) -> Vec<Vec<Scalar>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![field.zero(); self.ncols];
                v[f] = field.one();
                for (pc, row, _) in &self.pivots {
                    if let Some(a) = row.get(&f) {
                        v[*pc] = -a;
                    }
                }
                v
            })
            .collect()
    }
}

pub fn row_reduce(matrix: &SparseMatrix, rhs: Option<&[Scalar]>) -> Echelon {
    let field = matrix.field;
    let zero = field.zero();
    let mut rows: Vec<SparseVec> = matrix.rows.clone();
    let mut b: Vec<Scalar> = match rhs {
        Some(r) => r.to_vec(),
        None => vec![zero.clone(); rows.len()],
    };
    let mut occ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); matrix.ncols];
    for (i, r) in rows.iter().enumerate() {
        for j in r.keys() {
            occ[*j].insert(i);
        }
    }
    let mut used = vec![false; rows.len()];
    let mut pivot_of_col: Vec<(usize, usize)> = Vec::new();

    for col in 0..matrix.ncols {
        let pivot = occ[col]
            .iter()
            .filter(|r| !used[**r])
            .min_by_key(|r| (rows[**r].len(), **r))
            .copied();
        let Some(p) = pivot else { continue };
        used[p] = true;
        let inv = rows[p][&col].inv().expect("pivot entry is nonzero");
        for v in rows[p].values_mut() {
            *v = &*v * &inv;
        }
        b[p] = &b[p] * &inv;
        let prow = rows[p].clone();
        let pb = b[p].clone();
        let others: Vec<usize> = occ[col].iter().copied().filter(|r| *r != p).collect();
        for o in others {
            let factor = rows[o][&col].clone();
            for (j, v) in &prow {
                let entry = rows[o].get(j).cloned().unwrap_or_else(|| zero.clone());
                let new = &entry - &(&factor * v);
                if new.is_zero() {
                    rows[o].remove(j);
                    occ[*j].remove(&o);
                } else {
                    rows[o].insert(*j, new);
                    occ[*j].insert(o);
                }
            }
            b[o] = &b[o] - &(&factor * &pb);
        }
        pivot_of_col.push((col, p));
    }

    let inconsistent = (0..rows.len()).any(|i| !used[i] && !b[i].is_zero());
    let pivots = pivot_of_col
        .into_iter()
        .map(|(c, r)| (c, rows[r].clone(), b[r].clone()))
        .collect();
    Echelon {
        ncols: matrix.ncols,
        pivots,
        inconsistent,
    }
}

pub fn rank(matrix: &SparseMatrix) -> usize {
    row_reduce(matrix, None).rank()
}

pub fn nullspace(matrix: &SparseMatrix) -> Vec<Vec<Scalar>> {
    row_reduce(matrix, None).nullspace(matrix.field)
}

/// Solves `A·v = b` exactly. On failure the witness is found by solving the
/// transposed system `Aᵀy = 0, bᵀy = 1`, which is consistent exactly when the
/// original one is not.
pub fn solve_linear(sys: &LinearSystem) -> LinearSolution {
    let field = sys.matrix.field;
    let ech = row_reduce(&sys.matrix, Some(&sys.rhs));
    if !ech.inconsistent {
        let mut solution = vec![field.zero(); sys.matrix.ncols];
        for (c, _, v) in &ech.pivots {
            solution[*c] = v.clone();
        }
        return LinearSolution::Solved {
            solution,
            nullspace: ech.nullspace(field),
        };
    }
    let nrows = sys.matrix.nrows();
    let mut dual = sys.matrix.transpose();
    dual.push_row(
        sys.rhs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect(),
    );
    let mut rhs = vec![field.zero(); dual.nrows()];
    *rhs.last_mut().unwrap() = field.one();
    let dual_ech = row_reduce(&dual, Some(&rhs));
    assert!(
        !dual_ech.inconsistent,
        "Fredholm alternative: an inconsistent system has a dual witness"
    );
    let mut witness = vec![field.zero(); nrows];
    for (c, _, v) in &dual_ech.pivots {
        witness[*c] = v.clone();
    }
    LinearSolution::Infeasible {
        witness,
        value: field.one(),
    }
}

/// Growing linearly independent set; `insert` reports whether the vector was new.
#[derive(Clone, Debug)]
pub struct SpanTracker {
    field: Field,
    rows: BTreeMap<usize, SparseVec>,
}

impl SpanTracker {
    pub fn new(field: Field) -> SpanTracker {
        SpanTracker {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v: SparseVec = v.iter().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (*k, x.clone())).collect();
        for (col, row) in &self.rows {
            let Some(f) = v.get(col).cloned() else { continue };
            for (j, a) in row {
                let cur = v.get(j).cloned().unwrap_or_else(|| self.field.zero());
                let new = &cur - &(&f * a);
                if new.is_zero() {
                    v.remove(j);
                } else {
                    v.insert(*j, new);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((lead, a)) = r.iter().next().map(|(k, a)| (*k, a.clone())) else {
            return false;
        };
        let inv = a.inv().unwrap();
        let r = r.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
        self.rows.insert(lead, r);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|x| q().from_i64(*x)).collect()
    }

    #[test]
    fn upper_triangular_solve() {
        let m = SparseMatrix::from_dense(q(), 2, &[vec![1, 1], vec![0, 1]]);
        let sys = LinearSystem::new(m, ints(&[2, 1]));
        assert_eq!(
            solve_linear(&sys),
            LinearSolution::Solved {
                solution: ints(&[1, 1]),
                nullspace: vec![]
            }
        );
    }

    #[test]
    fn zero_equals_one_is_infeasible() {
        let m = SparseMatrix::from_dense(q(), 1, &[vec![0]]);
        let sys = LinearSystem::new(m, ints(&[1]));
        match solve_linear(&sys) {
            LinearSolution::Infeasible { witness, value } => {
                assert_eq!(witness, ints(&[1]));
                assert!(!value.is_zero());
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn nullspace_of_row() {
        let m = SparseMatrix::from_dense(q(), 2, &[vec![1, 1]]);
        assert_eq!(nullspace(&m), vec![ints(&[-1, 1])]);
    }

    #[test]
    fn witness_combines_rows() {
        // x + y = 1, x + y = 2
        let m = SparseMatrix::from_dense(q(), 2, &[vec![1, 1], vec![1, 1]]);
        let sys = LinearSystem::new(m.clone(), ints(&[1, 2]));
        let LinearSolution::Infeasible { witness, value } = solve_linear(&sys) else {
            panic!("expected infeasible");
        };
        let combo = m.transpose().mul_vec(&witness);
        assert!(combo.iter().all(Scalar::is_zero));
        let c = witness
            .iter()
            .zip(&sys.rhs)
            .fold(q().zero(), |acc, (y, b)| &acc + &(y * b));
        assert_eq!(c, value);
    }

    #[test]
    fn span_tracker_detects_dependence() {
        let mut t = SpanTracker::new(q());
        let v = |a: i64, b: i64| -> SparseVec {
            [(0, q().from_i64(a)), (1, q().from_i64(b))]
                .into_iter()
                .filter(|(_, x)| !x.is_zero())
                .collect()
        };
        assert!(t.insert(&v(1, 2)));
        assert!(!t.insert(&v(2, 4)));
        assert!(t.insert(&v(0, 1)));
        assert!(t.contains(&v(5, 7)));
        assert_eq!(t.dim(), 2);
    }
}
