//! Small dense real matrices: companion matrices, powers, sign predicates
//! and the characteristic polynomial.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::poly::{index_profile, Polynomial};

/// Dimension guard for [`char_poly`].
pub const CHAR_POLY_MAX_DIM: usize = 12;

/// A square matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::InvalidMatrix(format!(
                "{} entries for a {dim}x{dim} matrix",
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidMatrix("rows must form a square".into()));
        }
        Self::new(dim, rows.concat())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be at least 1");
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn filled(dim: usize, value: f64) -> Self {
        assert!(dim > 0, "matrix dimension must be at least 1");
        Self { dim, data: vec![value; dim * dim] }
    }

    /// The nilpotent Jordan block `J_m(0)`: ones on the superdiagonal.
    pub fn jordan_zero(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim.saturating_sub(1) {
            m[(i, i + 1)] = 1.0;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Principal submatrix on rows/columns `start..dim`.
    pub fn trailing_block(&self, start: usize) -> Option<Self> {
        if start >= self.dim {
            return None;
        }
        let dim = self.dim - start;
        let mut data = Vec::with_capacity(dim * dim);
        for i in start..self.dim {
            data.extend_from_slice(&self.row(i)[start..]);
        }
        Some(Self { dim, data })
    }

    /// `P^T A P` for the permutation sending index `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: perm.len() });
        }
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(perm[i], perm[j])] = self[(i, j)];
            }
        }
        Ok(out)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&x| x >= 0.0)
    }

    pub fn is_positive(&self) -> bool {
        self.data.iter().all(|&x| x > 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub(crate) fn scale_in_place(&mut self, factor: f64) {
        for x in &mut self.data {
            *x *= factor;
        }
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Display for DenseMatrix {
    /// One row per line, entries separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{}", x + 0.0)).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Companion matrix: ones on the superdiagonal and last row `[-a_n, ..., -a_1]`,
/// so that its characteristic polynomial is `p`.
pub fn companion(p: &Polynomial) -> DenseMatrix {
    let n = p.degree();
    let mut m = DenseMatrix::jordan_zero(n);
    for (k, &a) in p.tail().iter().enumerate() {
        // a_{k+1} sits in column n-k-1
        m[(n - 1, n - k - 1)] = if a == 0.0 { 0.0 } else { -a };
    }
    m
}

/// Split of a nonnegative-form companion matrix into a nilpotent leading part
/// of size `n - ell` and the irreducible trailing core of size `ell`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompanionDecomposition {
    pub nilpotent_size: usize,
    /// Trailing `ell x ell` principal block; `None` when `p = t^n`.
    pub core: Option<DenseMatrix>,
}

impl CompanionDecomposition {
    pub fn core_dim(&self) -> usize {
        self.core.as_ref().map_or(0, DenseMatrix::dim)
    }
}

pub fn decompose_companion(p: &Polynomial) -> Result<CompanionDecomposition> {
    let profile = index_profile(p);
    if !profile.nonneg_form {
        return Err(Error::NotNonnegativeForm);
    }
    let n = p.degree();
    let nilpotent_size = n - profile.ell;
    let core = companion(p).trailing_block(nilpotent_size);
    Ok(CompanionDecomposition { nilpotent_size, core })
}

pub fn mat_mul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { left: a.dim, right: b.dim });
    }
    let n = a.dim;
    let mut out = DenseMatrix::zeros(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a[(i, k)];
            if aik == 0.0 {
                continue;
            }
            let brow = b.row(k);
            let orow = &mut out.data[i * n..(i + 1) * n];
            for (o, &bkj) in orow.iter_mut().zip(brow) {
                *o += aik * bkj;
            }
        }
    }
    Ok(out)
}

/// `A^k` by repeated squaring, `k >= 1`.
pub fn mat_power(a: &DenseMatrix, k: u32) -> Result<DenseMatrix> {
    if k == 0 {
        return Err(Error::ZeroExponent);
    }
    let mut result: Option<DenseMatrix> = None;
    let mut base = a.clone();
    let mut e = k;
    loop {
        if e & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => mat_mul(&r, &base)?,
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        base = mat_mul(&base, &base)?;
    }
    Ok(result.expect("k >= 1 sets at least one bit"))
}

/// `det(tI - A)` by the Faddeev-LeVerrier trace recurrence.
pub fn char_poly(a: &DenseMatrix) -> Result<Polynomial> {
    let n = a.dim();
    if n > CHAR_POLY_MAX_DIM {
        return Err(Error::DimensionGuard { dim: n, max: CHAR_POLY_MAX_DIM });
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(1.0);
    // M_1 = I, a_k = -tr(A M_k) / k, M_{k+1} = A M_k + a_k I
    let mut m = DenseMatrix::identity(n);
    for k in 1..=n {
        let am = mat_mul(a, &m)?;
        let ak = -am.trace() / k as f64;
        coeffs.push(ak);
        if k < n {
            m = am;
            for i in 0..n {
                m[(i, i)] += ak;
            }
        }
    }
    Polynomial::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn poly(text: &str) -> Polynomial {
        parse_polynomial(text).unwrap()
    }

    #[test]
    fn companion_examples() {
        let c = companion(&poly("t^3 - 2t^2 - t + 2"));
        assert_eq!(
            c,
            DenseMatrix::from_rows(&[
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0],
                vec![-2.0, 1.0, 2.0],
            ])
            .unwrap()
        );
        assert_eq!(companion(&poly("t - 3")).as_slice(), &[3.0]);
        assert_eq!(companion(&poly("t^2 - 1")).as_slice(), &[0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn decomposition_examples() {
        let dec = decompose_companion(&poly("t^3 - t")).unwrap();
        assert_eq!(dec.nilpotent_size, 1);
        assert_eq!(dec.core.unwrap().as_slice(), &[0.0, 1.0, 1.0, 0.0]);

        let p = poly("t^3 - 2t^2 - t - 0.5");
        let dec = decompose_companion(&p).unwrap();
        assert_eq!(dec.nilpotent_size, 0);
        assert_eq!(dec.core.unwrap(), companion(&p));

        let dec = decompose_companion(&poly("t^4")).unwrap();
        assert_eq!(dec.nilpotent_size, 4);
        assert!(dec.core.is_none());
        assert_eq!(dec.core_dim(), 0);

        assert_eq!(
            decompose_companion(&poly("t^3 - 2t^2 - t + 2")),
            Err(Error::NotNonnegativeForm)
        );
    }

    #[test]
    fn core_has_leading_positive_corner() {
        let p = Polynomial::from_c_values(&[1.0, 0.0, 2.0, 0.0, 0.0]).unwrap();
        let dec = decompose_companion(&p).unwrap();
        let core = dec.core.unwrap();
        assert_eq!(dec.nilpotent_size + core.dim(), 5);
        assert_eq!(core[(2, 0)], 2.0);
        assert_eq!(core[(0, 1)], 1.0);
        assert_eq!(core[(1, 2)], 1.0);
    }

    #[test]
    fn products_and_powers() {
        let a = DenseMatrix::new(4, (0..16).map(|x| (x as f64 * 0.37).sin()).collect()).unwrap();
        assert_eq!(mat_mul(&DenseMatrix::identity(4), &a).unwrap(), a);
        assert_eq!(mat_power(&DenseMatrix::jordan_zero(3), 3).unwrap(), DenseMatrix::zeros(3));
        let c = companion(&poly("t^3 - 2t^2 - t + 2"));
        let c2 = mat_power(&c, 2).unwrap();
        assert_eq!(c2.column(0), vec![0.0, -2.0, -4.0]);
        assert_eq!(mat_power(&c, 1).unwrap(), c);
        assert_eq!(mat_power(&c, 0), Err(Error::ZeroExponent));
        assert_eq!(
            mat_mul(&c, &DenseMatrix::identity(2)),
            Err(Error::DimensionMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn sign_predicates() {
        assert!(!companion(&poly("t^3 - 2t^2 - t + 2")).is_nonnegative());
        let z = DenseMatrix::zeros(3);
        assert!(z.is_nonnegative() && !z.is_positive());
        let ones = DenseMatrix::filled(3, 1.0);
        assert!(ones.is_nonnegative() && ones.is_positive());
    }

    #[test]
    fn char_poly_examples() {
        let p = poly("t^3 - 2t^2 - t + 2");
        let q = char_poly(&companion(&p)).unwrap();
        for (x, y) in q.coeffs().iter().zip(p.coeffs()) {
            assert!((x - y).abs() <= 1e-9);
        }
        assert_eq!(char_poly(&DenseMatrix::identity(2)).unwrap().coeffs(), &[1.0, -2.0, 1.0]);
        assert_eq!(char_poly(&DenseMatrix::jordan_zero(4)).unwrap(), Polynomial::monomial(4).unwrap());
        assert_eq!(
            char_poly(&DenseMatrix::identity(13)),
            Err(Error::DimensionGuard { dim: 13, max: 12 })
        );
    }

    #[test]
    fn text_dump() {
        let c = companion(&poly("t^2 - 0.5t - 1"));
        assert_eq!(c.to_string(), "0 1\n1 0.5\n");
    }

    #[test]
    fn rejects_malformed_matrices() {
        assert!(DenseMatrix::new(0, vec![]).is_err());
        assert!(DenseMatrix::new(2, vec![1.0; 3]).is_err());
        assert!(DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
    }
}
