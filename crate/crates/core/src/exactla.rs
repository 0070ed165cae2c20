//! Exact dense linear algebra over a prime field F_p.
//!
//! Vectors are row vectors with entries reduced mod p. Matrices are dense and
//! row-major; `solve` and `kernel` use the column convention `m * x`, while
//! subspaces are spanned by rows. Elimination is exact, so there is no
//! pivoting strategy beyond "first nonzero".

use crate::{Budget, Error, Result};

const MAX_PRIME: u32 = 1 << 16;

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The field F_p. Cheap to copy; carried by every matrix and subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Fp> {
        if p > MAX_PRIME {
            return Err(Error::input(format!("prime {p} exceeds 2^16")));
        }
        if !is_prime(p) {
            return Err(Error::input(format!("{p} is not prime")));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> u32 {
        (a % self.p as u64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1u32;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero (callers guard).
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a % self.p != 0, "division by zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }
}

/// Dense matrix over F_p, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Fp, rows: Vec<Vec<u32>>, cols: usize) -> Result<Matrix> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::input(format!(
                    "row of length {} in a {}-column matrix",
                    r.len(),
                    cols
                )));
            }
        }
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            data.extend(r.into_iter().map(|x| x % field.p()));
        }
        Ok(Matrix {
            field,
            rows: n,
            cols,
            data,
        })
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<u32> {
        self.row(i).to_vec()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::input(format!(
                "dimension mismatch in product: {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a row vector on the left: `v * self`.
    pub fn apply_row(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.rows {
            return Err(Error::input("row vector length mismatch".to_string()));
        }
        let f = self.field;
        let mut out = vec![0u32; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..self.cols {
                out[j] = f.add(out[j], f.mul(c, self.get(i, j)));
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut sel = None;
            for i in r..m.rows {
                if m.get(i, c) != 0 {
                    sel = Some(i);
                    break;
                }
            }
            let Some(i) = sel else { continue };
            if i != r {
                for j in 0..m.cols {
                    let a = m.get(r, j);
                    let b = m.get(i, j);
                    m.set(r, j, b);
                    m.set(i, j, a);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                m.set(r, j, f.mul(inv, m.get(r, j)));
            }
            for i2 in 0..m.rows {
                if i2 != r && m.get(i2, c) != 0 {
                    let factor = m.get(i2, c);
                    for j in 0..m.cols {
                        let v = f.sub(m.get(i2, j), f.mul(factor, m.get(r, j)));
                        m.set(i2, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Right null space `{x : self * x = 0}`, presented as a row-spanned
    /// subspace of F_p^cols.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let f = self.field;
        let mut basis = Vec::new();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (row_idx, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row_idx, free));
            }
            basis.push(v);
        }
        Subspace::from_rows(f, self.cols, basis)
    }

    /// Column space of the matrix (the image of `x -> self * x`).
    pub fn image(&self) -> Subspace {
        self.transpose().row_space()
    }

    /// Row space of the matrix.
    pub fn row_space(&self) -> Subspace {
        let rows = (0..self.rows).map(|i| self.row_vec(i)).collect();
        Subspace::from_rows(self.field, self.cols, rows)
    }

    /// One solution of `self * x = rhs`, or None when inconsistent.
    pub fn solve(&self, rhs: &[u32]) -> Result<Option<Vec<u32>>> {
        if rhs.len() != self.rows {
            return Err(Error::input(format!(
                "rhs length {} does not match {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let f = self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, rhs[i]);
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (row_idx, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row_idx, self.cols);
        }
        Ok(Some(x))
    }
}

/// Incremental reduced echelon basis. Rows stay in canonical RREF (pivot
/// entries 1, pivot columns cleared, pivots strictly increasing), so two equal
/// spans always have identical row lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    field: Fp,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Fp, ambient: usize) -> Echelon {
        Echelon {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Reduces `v` against the current rows.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                for j in 0..self.ambient {
                    v[j] = f.sub(v[j], f.mul(c, row[j]));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Inserts a vector (entries need not be reduced mod p); returns true
    /// when the rank grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let f = self.field;
        let v: Vec<u32> = v.iter().map(|&x| x % f.p()).collect();
        let mut v = self.reduce(&v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]);
        for x in v.iter_mut() {
            *x = f.mul(inv, *x);
        }
        // clear the new pivot column in existing rows
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                for j in 0..self.ambient {
                    row[j] = f.sub(row[j], f.mul(c, v[j]));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, v);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace {
            field: self.field,
            ambient: self.ambient,
            basis: self.rows,
            pivots: self.pivots,
        }
    }
}

/// A subspace of F_p^n, held as a canonical RREF row basis. Equality of
/// values is equality of subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: Fp,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Fp, ambient: usize) -> Subspace {
        Echelon::new(field, ambient).into_subspace()
    }

    pub fn full(field: Fp, ambient: usize) -> Subspace {
        let mut e = Echelon::new(field, ambient);
        for i in 0..ambient {
            let mut v = vec![0u32; ambient];
            v[i] = 1;
            e.insert(&v);
        }
        e.into_subspace()
    }

    pub fn from_rows(field: Fp, ambient: usize, rows: Vec<Vec<u32>>) -> Subspace {
        let mut e = Echelon::new(field, ambient);
        for r in rows {
            e.insert(&r);
        }
        e.into_subspace()
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn to_echelon(&self) -> Echelon {
        Echelon {
            field: self.field,
            ambient: self.ambient,
            rows: self.basis.clone(),
            pivots: self.pivots.clone(),
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.to_echelon().contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient || self.field != other.field {
            return Err(Error::input(
                "subspace operation on mismatched ambient spaces".to_string(),
            ));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut e = self.to_echelon();
        for v in &other.basis {
            e.insert(v);
        }
        Ok(e.into_subspace())
    }

    /// Intersection via the Zassenhaus block trick.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let f = self.field;
        let n = self.ambient;
        let mut rows = Vec::new();
        for v in &self.basis {
            let mut r = v.clone();
            r.extend_from_slice(v);
            rows.push(r);
        }
        for v in &other.basis {
            let mut r = v.clone();
            r.extend(std::iter::repeat(0u32).take(n));
            rows.push(r);
        }
        let m = Matrix::from_rows(f, rows, 2 * n)?;
        let (r, _) = m.rref();
        let mut inter = Echelon::new(f, n);
        for i in 0..r.rows() {
            let left_zero = (0..n).all(|j| r.get(i, j) == 0);
            if left_zero {
                let right: Vec<u32> = (n..2 * n).map(|j| r.get(i, j)).collect();
                inter.insert(&right);
            }
        }
        Ok(inter.into_subspace())
    }

    /// All p^dim vectors of the subspace. Guarded by the enumeration budget.
    pub fn enumerate(&self, budget: &Budget) -> Result<Vec<Vec<u32>>> {
        let p = self.field.p() as u64;
        let count = p
            .checked_pow(self.dim() as u32)
            .ok_or_else(|| Error::budget("subspace enumeration overflows".to_string()))?;
        if count > budget.enum_limit {
            return Err(Error::budget(format!(
                "enumerating {count} vectors exceeds the budget of {}",
                budget.enum_limit
            )));
        }
        let f = self.field;
        let mut out = Vec::with_capacity(count as usize);
        let dim = self.dim();
        let mut coeffs = vec![0u32; dim];
        loop {
            let mut v = vec![0u32; self.ambient];
            for (c, row) in coeffs.iter().zip(&self.basis) {
                if *c != 0 {
                    for j in 0..self.ambient {
                        v[j] = f.add(v[j], f.mul(*c, row[j]));
                    }
                }
            }
            out.push(v);
            // odometer increment
            let mut k = 0;
            while k < dim {
                coeffs[k] += 1;
                if coeffs[k] < f.p() {
                    break;
                }
                coeffs[k] = 0;
                k += 1;
            }
            if k == dim {
                break;
            }
        }
        Ok(out)
    }
}

/// Iterator over nonzero vectors of F_p^n up to scalar multiples: exactly the
/// vectors whose first nonzero coordinate is 1. Spinning v and c*v give the
/// same cyclic submodule, so oracles only walk these.
pub struct ProjectivePoints {
    p: u32,
    n: usize,
    state: Option<(usize, Vec<u32>)>, // (position of leading 1, tail digits after it)
}

impl ProjectivePoints {
    pub fn new(field: Fp, n: usize) -> ProjectivePoints {
        let state = if n == 0 {
            None
        } else {
            Some((0, vec![0; n - 1]))
        };
        ProjectivePoints {
            p: field.p(),
            n,
            state,
        }
    }

    /// (p^n - 1) / (p - 1), saturating.
    pub fn count(field: Fp, n: usize) -> u64 {
        let p = field.p() as u64;
        let mut total = 0u64;
        let mut power = 1u64;
        for _ in 0..n {
            total = total.saturating_add(power);
            power = power.saturating_mul(p);
        }
        total
    }
}

impl Iterator for ProjectivePoints {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let (lead, tail) = self.state.as_mut()?;
        let mut v = vec![0u32; self.n];
        v[*lead] = 1;
        for (k, &d) in tail.iter().enumerate() {
            v[*lead + 1 + k] = d;
        }
        // advance: odometer on the tail, then move the leading 1 right
        let mut k = tail.len();
        loop {
            if k == 0 {
                let new_lead = *lead + 1;
                if new_lead >= self.n {
                    self.state = None;
                } else {
                    self.state = Some((new_lead, vec![0; self.n - new_lead - 1]));
                }
                break;
            }
            k -= 1;
            tail[k] += 1;
            if tail[k] < self.p {
                break;
            }
            tail[k] = 0;
        }
        Some(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    #[test]
    fn prime_guard() {
        assert!(Fp::new(4).is_err());
        assert!(Fp::new(1).is_err());
        assert!(Fp::new(65537).is_err());
        assert!(Fp::new(65521).is_ok());
    }

    #[test]
    fn rref_hand_example() {
        // over F_5, [[2,4],[1,2]] reduces to [[1,2],[0,0]] with rank 1
        let m = Matrix::from_rows(f(5), vec![vec![2, 4], vec![1, 2]], 2).unwrap();
        let (r, pivots) = m.rref();
        assert_eq!(r.row(0), &[1, 2]);
        assert_eq!(r.row(1), &[0, 0]);
        assert_eq!(pivots, vec![0]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let id = Matrix::identity(f(3), 3);
        assert!(id.kernel().is_zero());
        assert_eq!(id.image(), Subspace::full(f(3), 3));
    }

    #[test]
    fn image_is_the_column_space() {
        // x -> m x collapses onto the diagonal line
        let m = Matrix::from_rows(f(5), vec![vec![1, 2], vec![1, 2]], 2).unwrap();
        let im = m.image();
        assert_eq!(im.dim(), 1);
        assert!(im.contains(&[1, 1]));
    }

    #[test]
    fn solve_back_substitution() {
        // [[1,1],[0,1]] x = (0,1) over F_2 has solution (1,1)
        let m = Matrix::from_rows(f(2), vec![vec![1, 1], vec![0, 1]], 2).unwrap();
        let x = m.solve(&[0, 1]).unwrap().unwrap();
        assert_eq!(x, vec![1, 1]);
    }

    #[test]
    fn solve_inconsistent() {
        // m x = (x0, x0), so (1,1) is solvable and (1,0) is not
        let m = Matrix::from_rows(f(2), vec![vec![1, 0], vec![1, 0]], 2).unwrap();
        assert!(m.solve(&[1, 1]).unwrap().is_some());
        assert!(m.solve(&[1, 0]).unwrap().is_none());
    }

    #[test]
    fn solve_recovers_preimage() {
        let m = Matrix::from_rows(f(5), vec![vec![1, 2, 0], vec![3, 1, 4]], 3).unwrap();
        let v = vec![2u32, 0, 3];
        let rhs = {
            let col = Matrix::from_rows(f(5), v.iter().map(|&x| vec![x]).collect(), 1).unwrap();
            let prod = m.mul(&col).unwrap();
            (0..prod.rows()).map(|i| prod.get(i, 0)).collect::<Vec<_>>()
        };
        let w = m.solve(&rhs).unwrap().unwrap();
        let col = Matrix::from_rows(f(5), w.iter().map(|&x| vec![x]).collect(), 1).unwrap();
        let prod = m.mul(&col).unwrap();
        let rhs2: Vec<u32> = (0..prod.rows()).map(|i| prod.get(i, 0)).collect();
        assert_eq!(rhs, rhs2);
    }

    #[test]
    fn intersect_lines_in_plane() {
        let e1 = Subspace::from_rows(f(2), 2, vec![vec![1, 0]]);
        let diag = Subspace::from_rows(f(2), 2, vec![vec![1, 1]]);
        assert!(e1.intersect(&diag).unwrap().is_zero());
        let e2 = Subspace::from_rows(f(2), 2, vec![vec![0, 1]]);
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(f(2), 2));
    }

    #[test]
    fn enumerate_line_over_f3() {
        let line = Subspace::from_rows(f(3), 2, vec![vec![1, 0]]);
        let all = line.enumerate(&Budget::default()).unwrap();
        assert_eq!(all.len(), 3);
        assert!(all.contains(&vec![0, 0]));
        assert!(all.contains(&vec![1, 0]));
        assert!(all.contains(&vec![2, 0]));
    }

    #[test]
    fn enumerate_budget_guard() {
        let full = Subspace::full(f(5), 8);
        let tight = Budget {
            enum_limit: 100,
            ..Budget::default()
        };
        assert!(matches!(full.enumerate(&tight), Err(Error::Budget(_))));
    }

    #[test]
    fn projective_points_count() {
        let pts: Vec<_> = ProjectivePoints::new(f(3), 3).collect();
        assert_eq!(pts.len() as u64, ProjectivePoints::count(f(3), 3));
        assert_eq!(pts.len(), 13); // (27-1)/2
        for v in &pts {
            let lead = v.iter().position(|&x| x != 0).unwrap();
            assert_eq!(v[lead], 1);
        }
    }

    #[test]
    fn echelon_is_canonical() {
        let a = Subspace::from_rows(f(5), 3, vec![vec![1, 2, 3], vec![0, 1, 1]]);
        let b = Subspace::from_rows(f(5), 3, vec![vec![2, 4, 6], vec![1, 3, 4], vec![3, 6, 9]]);
        assert_eq!(a, b);
        assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn modular_law_on_random_subspaces() {
        // dim(sum) + dim(intersection) = dim a + dim b
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for &p in &[2u32, 3, 5] {
            let field = f(p);
            for ambient in [4usize, 6, 8] {
                for _ in 0..20 {
                    let mk = |next: &mut dyn FnMut() -> u64| {
                        let rows: Vec<Vec<u32>> = (0..(ambient / 2))
                            .map(|_| (0..ambient).map(|_| (next() % p as u64) as u32).collect())
                            .collect();
                        Subspace::from_rows(field, ambient, rows)
                    };
                    let a = mk(&mut next);
                    let b = mk(&mut next);
                    let s = a.sum(&b).unwrap();
                    let i = a.intersect(&b).unwrap();
                    assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
                    assert!(s.contains_subspace(&a));
                    assert!(a.contains_subspace(&i));
                }
            }
        }
    }
}
