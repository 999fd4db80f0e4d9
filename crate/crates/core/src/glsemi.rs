//! Exact integer matrices, the stabilizer decomposition of GL_{n+1}(Z)_{[y]}, and the
//! semidirect product Z^n ⋊_r Aut(F_n).

use std::fmt;

use thiserror::Error;

use crate::fgmap::{Endo, MapError};
use crate::fgword::{Basis, Gen, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not invertible over the integers")]
    NotUnimodular,
    #[error("matrix does not fix [y]: last column must be (0,…,0,1)")]
    NotStabilizer,
    #[error("integer overflow during elimination")]
    Overflow,
    #[error(transparent)]
    Map(#[from] MapError),
}

/// A dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<IntMatrix, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::Dimension("ragged rows".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::Dimension(format!("{}x{} times vector of length {}", self.rows, self.cols, v.len())));
        }
        Ok((0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum()).collect())
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<i64, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j) as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| a[i][k].checked_mul(a[k][j]).and_then(|y| x.checked_sub(y)))
                        .ok_or(MatrixError::Overflow)?;
                    a[i][j] = num / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| MatrixError::Overflow)
    }

    /// Inverse of a unimodular matrix, by unimodular row operations on [M | 1].
    pub fn inverse(&self) -> Result<IntMatrix, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| {
                let mut row: Vec<i128> = (0..n).map(|j| self.get(i, j) as i128).collect();
                row.extend((0..n).map(|j| (i == j) as i128));
                row
            })
            .collect();
        for c in 0..n {
            // Euclid on column c over rows c..n until a single nonzero entry remains.
            loop {
                let nz: Vec<usize> = (c..n).filter(|&r| a[r][c] != 0).collect();
                if nz.is_empty() {
                    return Err(MatrixError::NotUnimodular);
                }
                let p = *nz.iter().min_by_key(|&&r| a[r][c].abs()).unwrap();
                a.swap(c, p);
                if nz.len() == 1 {
                    break;
                }
                for r in c + 1..n {
                    if a[r][c] != 0 {
                        let q = a[r][c] / a[c][c];
                        row_sub(&mut a, r, c, q)?;
                    }
                }
            }
            if a[c][c].abs() != 1 {
                return Err(MatrixError::NotUnimodular);
            }
            if a[c][c] == -1 {
                for v in a[c].iter_mut() {
                    *v = -*v;
                }
            }
            for r in 0..n {
                if r != c && a[r][c] != 0 {
                    let q = a[r][c];
                    row_sub(&mut a, r, c, q)?;
                }
            }
        }
        let mut out = IntMatrix::zeros(n, n);
        for (i, row) in a.iter().enumerate() {
            for j in 0..n {
                out.set(i, j, i64::try_from(row[n + j]).map_err(|_| MatrixError::Overflow)?);
            }
        }
        Ok(out)
    }

    /// Rank over Q, by fraction-free integer elimination.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<i128>> = (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) as i128).collect()).collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
            a.swap(rank, p);
            for r in rank + 1..a.len() {
                if a[r][c] != 0 {
                    let (x, y) = (a[rank][c], a[r][c]);
                    let g = gcd(x, y);
                    let (fx, fy) = (x / g, y / g);
                    for j in c..self.cols {
                        a[r][j] = a[r][j] * fx - a[rank][j] * fy;
                    }
                    let rg = a[r].iter().fold(0, |acc, &v| gcd(acc, v));
                    if rg > 1 {
                        for v in a[r].iter_mut() {
                            *v /= rg;
                        }
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Top-left block of size r × c.
    pub fn block(&self, r0: usize, c0: usize, r: usize, c: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                out.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        out
    }
}

fn row_sub(a: &mut [Vec<i128>], r: usize, c: usize, q: i128) -> Result<(), MatrixError> {
    let src = a[c].clone();
    for (v, s) in a[r].iter_mut().zip(src) {
        *v = s.checked_mul(q).and_then(|t| v.checked_sub(t)).ok_or(MatrixError::Overflow)?;
    }
    Ok(())
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", r.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// ψ(M) = ((M̂⁻¹)ᵗ·M̄, M̂) for M in the stabilizer of [y].
pub fn stab_decompose(m: &IntMatrix) -> Result<(Vec<i64>, IntMatrix), MatrixError> {
    if m.rows() != m.cols() || m.rows() == 0 {
        return Err(MatrixError::Dimension("stabilizer matrix must be square and nonempty".into()));
    }
    let n = m.rows() - 1;
    if (0..n).any(|i| m.get(i, n) != 0) || m.get(n, n) != 1 {
        return Err(MatrixError::NotStabilizer);
    }
    let hat = m.block(0, 0, n, n);
    let bar: Vec<i64> = (0..n).map(|j| m.get(n, j)).collect();
    let z = hat.inverse()?.transpose().mul_vec(&bar)?;
    Ok((z, hat))
}

/// Inverse of [`stab_decompose`]: rebuild M from (z, M̂), using M̄ = M̂ᵗ·z.
pub fn stab_compose(z: &[i64], hat: &IntMatrix) -> Result<IntMatrix, MatrixError> {
    let n = hat.rows();
    if hat.cols() != n || z.len() != n {
        return Err(MatrixError::Dimension("block sizes disagree".into()));
    }
    let bar = hat.transpose().mul_vec(z)?;
    let mut m = IntMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, hat.get(i, j));
        }
        m.set(n, i, bar[i]);
    }
    m.set(n, n, 1);
    Ok(m)
}

/// Product in Z^n ⋊_r GL_n(Z): (z₁,A)(z₂,B) = (z₁ + (A⁻¹)ᵗz₂, AB).
pub fn semi_mul_matrix(p: &(Vec<i64>, IntMatrix), q: &(Vec<i64>, IntMatrix)) -> Result<(Vec<i64>, IntMatrix), MatrixError> {
    let acted = p.1.inverse()?.transpose().mul_vec(&q.0)?;
    let z = p.0.iter().zip(acted).map(|(a, b)| a + b).collect();
    Ok((z, p.1.mul(&q.1)?))
}

/// η(a): the abelianization matrix of an automorphism of F_n.
pub fn eta(a: &Endo) -> IntMatrix {
    a.abel_matrix()
}

/// (η(a)⁻¹)ᵗ·z.
pub fn aut_act_on_zn(a: &Endo, z: &[i64]) -> Result<Vec<i64>, MatrixError> {
    if a.basis().k != 0 || a.basis().n != z.len() {
        return Err(MatrixError::Dimension(format!("automorphism of rank {} acting on Z^{}", a.basis().rank(), z.len())));
    }
    eta(a).inverse()?.transpose().mul_vec(z)
}

/// ι₁: Aut(F_n) → Aut(F_{n,1}), fixing y.
pub fn iota1(a: &Endo) -> Result<Endo, MatrixError> {
    let b = a.basis();
    Ok(a.extend(Basis { n: b.n, k: 1 })?)
}

/// ι₂(z) = M_{x_1,y}^{z_1} ⋯ M_{x_n,y}^{z_n} in Aut(F_{n,1}).
pub fn iota2(z: &[i64]) -> Result<Endo, MatrixError> {
    let basis = Basis { n: z.len(), k: 1 };
    let mut e = Endo::identity(basis);
    for (i, &c) in z.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let y = Word::reduce(basis, [Gen::Y(1).pow(if c > 0 { 1 } else { -1 })]).map_err(MapError::from)?;
        let m = Endo::transvection(basis, Gen::X(i as u16 + 1), 1, y)?;
        for _ in 0..c.unsigned_abs() {
            e = e.compose(&m)?;
        }
    }
    Ok(e)
}

/// An element (z, a) of Z^n ⋊_r Aut(F_n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QElement {
    pub z: Vec<i64>,
    pub a: Endo,
}

impl QElement {
    pub fn new(z: Vec<i64>, a: Endo) -> Result<QElement, MatrixError> {
        if a.basis().k != 0 || a.basis().n != z.len() {
            return Err(MatrixError::Dimension("vector length must equal the rank of F_n".into()));
        }
        if !a.has_factorization() {
            return Err(MatrixError::Map(MapError::NoFactorization));
        }
        Ok(QElement { z, a })
    }

    pub fn identity(n: usize) -> QElement {
        QElement { z: vec![0; n], a: Endo::identity(Basis { n, k: 0 }) }
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn is_identity(&self) -> bool {
        self.z.iter().all(|&c| c == 0) && self.a.is_identity()
    }
}

impl fmt::Display for QElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {})", self.z, self.a)
    }
}

/// (z₁,a₁)(z₂,a₂) = (z₁ + a₁·z₂, a₁a₂).
pub fn semi_mul(q1: &QElement, q2: &QElement) -> Result<QElement, MatrixError> {
    if q1.n() != q2.n() {
        return Err(MatrixError::Dimension(format!("Z^{} vs Z^{}", q1.n(), q2.n())));
    }
    let acted = aut_act_on_zn(&q1.a, &q2.z)?;
    Ok(QElement {
        z: q1.z.iter().zip(acted).map(|(a, b)| a + b).collect(),
        a: q1.a.compose(&q2.a)?,
    })
}

/// (z, a)⁻¹ = (−a⁻¹·z, a⁻¹).
pub fn semi_inv(q: &QElement) -> Result<QElement, MatrixError> {
    let ai = q.a.inverse()?;
    let z = aut_act_on_zn(&ai, &q.z)?.into_iter().map(|c| -c).collect();
    Ok(QElement { z, a: ai })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, 1, 0], &[1, 1, 0], &[3, 5, 1]]);
        assert_eq!(a.det().unwrap(), 1);
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai).unwrap(), IntMatrix::identity(3));
        assert_eq!(ai.mul(&a).unwrap(), IntMatrix::identity(3));
        let s = m(&[&[2, 0], &[0, 1]]);
        assert_eq!(s.det().unwrap(), 2);
        assert_eq!(s.inverse().unwrap_err(), MatrixError::NotUnimodular);
        let neg = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(neg.det().unwrap(), -1);
        assert_eq!(neg.inverse().unwrap(), neg);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).rank(), 2);
        assert_eq!(IntMatrix::identity(4).rank(), 4);
        assert_eq!(IntMatrix::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn stab_examples() {
        let (z, hat) = stab_decompose(&IntMatrix::identity(3)).unwrap();
        assert_eq!(z, vec![0, 0]);
        assert_eq!(hat, IntMatrix::identity(2));
        let mut e = IntMatrix::identity(3);
        e.set(2, 0, 1);
        let (z, hat) = stab_decompose(&e).unwrap();
        assert_eq!(z, vec![1, 0]);
        assert_eq!(hat, IntMatrix::identity(2));
        let mut bad = IntMatrix::identity(3);
        bad.set(0, 2, 1);
        assert_eq!(stab_decompose(&bad).unwrap_err(), MatrixError::NotStabilizer);
        let singular = m(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(stab_decompose(&singular).unwrap_err(), MatrixError::NotUnimodular);
        let g = m(&[&[2, 1, 0], &[1, 1, 0], &[3, -4, 1]]);
        let (z, hat) = stab_decompose(&g).unwrap();
        assert_eq!(stab_compose(&z, &hat).unwrap(), g);
    }

    #[test]
    fn action_of_transvection_is_inverse_transpose() {
        let b = Basis { n: 2, k: 0 };
        let x2 = Word::parse(b, "x2").unwrap();
        let t = Endo::transvection(b, Gen::X(1), 1, x2).unwrap();
        assert_eq!(eta(&t), m(&[&[1, 0], &[1, 1]]));
        assert_eq!(aut_act_on_zn(&t, &[1, 0]).unwrap(), vec![1, 0]);
        assert_eq!(aut_act_on_zn(&t, &[0, 1]).unwrap(), vec![-1, 1]);
        let p = Endo::swap(b, 1, 2).unwrap();
        assert_eq!(aut_act_on_zn(&p, &[3, -2]).unwrap(), vec![-2, 3]);
        let i = Endo::inversion(b, 1).unwrap();
        assert_eq!(aut_act_on_zn(&i, &[3, -2]).unwrap(), vec![-3, -2]);
        assert_eq!(aut_act_on_zn(&Endo::identity(b), &[3, -2]).unwrap(), vec![3, -2]);
    }

    #[test]
    fn semidirect_examples() {
        let b = Basis { n: 2, k: 0 };
        let id = Endo::identity(b);
        let p = QElement::new(vec![1, 2], id.clone()).unwrap();
        let q = QElement::new(vec![-3, 1], id.clone()).unwrap();
        assert_eq!(semi_mul(&p, &q).unwrap().z, vec![-2, 3]);
        let s = Endo::swap(b, 1, 2).unwrap();
        let x2 = Word::parse(b, "x2").unwrap();
        let t = Endo::transvection(b, Gen::X(1), 1, x2).unwrap();
        let qs = QElement::new(vec![0, 0], s.clone()).unwrap();
        let qt = QElement::new(vec![0, 0], t.clone()).unwrap();
        assert_eq!(semi_mul(&qs, &qt).unwrap().a, s.compose(&t).unwrap());
        let g = QElement::new(vec![2, -1], t).unwrap();
        assert!(semi_mul(&g, &semi_inv(&g).unwrap()).unwrap().is_identity());
        assert!(semi_mul(&semi_inv(&g).unwrap(), &g).unwrap().is_identity());
    }

    #[test]
    fn iota2_matches_transvection_powers() {
        let e = iota2(&[2, 0, -1]).unwrap();
        let b = Basis { n: 3, k: 1 };
        assert_eq!(e.image(Gen::X(1)), &Word::parse(b, "y y x1").unwrap());
        assert_eq!(e.image(Gen::X(3)), &Word::parse(b, "y^-1 x3").unwrap());
        assert!(e.classify().in_bker);
    }
}
