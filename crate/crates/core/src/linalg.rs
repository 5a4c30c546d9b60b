//! Dense complex linear algebra.
//!
//! Householder QR for least squares, one-sided Jacobi for the smallest
//! singular pair, Hessenberg reduction plus shifted QR for eigenvalues, and a
//! deflation route for the masked pencils `E v = λ diag(mask) v` that arise
//! from barycentric pole and zero computations.

use std::cmp::Ordering;
use std::ops::{Index, IndexMut};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::{Error, Real, Result};

const MAX_JACOBI_SWEEPS: usize = 80;
const MAX_QR_ITERS_PER_EIGENVALUE: usize = 60;

/// Relative threshold below which a singular value counts as zero.
pub(crate) fn rank_tol<T: Real>() -> T {
    T::lit(1e-13).max(T::epsilon() * T::lit(64.0))
}

/// Dense complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    /// Builds a matrix from row-major entries; all entries must be finite.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Domain(format!("{} entries supplied for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(pos) = data.iter().position(|z| !is_finite(*z)) {
            return Err(Error::Domain(format!("non-finite entry at ({}, {})", pos / cols.max(1), pos % cols.max(1))));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Domain("ragged rows".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    /// Real-valued convenience constructor.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex<T>>> =
            rows.iter().map(|r| r.iter().map(|&x| Complex::new(T::lit(x), T::zero())).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn diag(d: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn mul_vec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(x.len(), self.cols, "dimension mismatch in mul_vec");
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(|row| row.iter().zip(x).fold(Complex::zero(), |acc, (&a, &b)| acc + a * b))
            .collect()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] = out.data[i * other.cols + j] + a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Frobenius norm, an upper bound for the spectral norm.
    pub fn norm_fro(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).fold(Complex::zero(), |acc, i| acc + self[(i, i)])
    }

    fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    fn columns(&self) -> Vec<Vec<Complex<T>>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

fn l1<T: Real>(z: Complex<T>) -> T {
    z.re.abs() + z.im.abs()
}

pub(crate) fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

fn dot<T: Real>(x: &[Complex<T>], y: &[Complex<T>]) -> Complex<T> {
    x.iter().zip(y).fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b)
}

fn norm2<T: Real>(x: &[Complex<T>]) -> T {
    // scaled to avoid overflow in the squares
    let scale = x.iter().fold(T::zero(), |acc, z| acc.max(z.re.abs()).max(z.im.abs()));
    if scale.is_zero() {
        return T::zero();
    }
    let s = x.iter().fold(T::zero(), |acc, z| acc + (z / scale).norm_sqr());
    scale * s.sqrt()
}

/// Householder reflector `I - beta v v^H` mapping `x` onto `alpha e_1`.
struct Reflector<T> {
    v: Vec<Complex<T>>,
    beta: T,
    alpha: Complex<T>,
}

impl<T: Real> Reflector<T> {
    fn new(x: &[Complex<T>]) -> Self {
        let nrm = norm2(x);
        if nrm.is_zero() {
            return Self { v: vec![Complex::zero(); x.len()], beta: T::zero(), alpha: Complex::zero() };
        }
        let x0 = x[0];
        let phase = if x0.is_zero() { Complex::one() } else { x0 / x0.norm() };
        let alpha = -phase * nrm;
        let mut v = x.to_vec();
        v[0] = v[0] - alpha;
        let vv = v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
        let beta = if vv.is_zero() { T::zero() } else { T::lit(2.0) / vv };
        Self { v, beta, alpha }
    }

    /// Applies the reflector to `y` in place.
    fn apply(&self, y: &mut [Complex<T>]) {
        if self.beta.is_zero() {
            return;
        }
        let s = dot(&self.v, y) * self.beta;
        for (yi, vi) in y.iter_mut().zip(&self.v) {
            *yi = *yi - vi * s;
        }
    }
}

/// Householder QR factorization of an `m x k` matrix with `m >= k`.
pub struct HouseholderQr<T> {
    m: usize,
    k: usize,
    reflectors: Vec<Reflector<T>>,
    /// Upper-triangular factor, `k x k`.
    r: CMatrix<T>,
}

impl<T: Real> HouseholderQr<T> {
    pub fn new(a: &CMatrix<T>) -> Result<Self> {
        let (m, k) = (a.rows, a.cols);
        if m < k {
            return Err(Error::Domain(format!("QR needs rows >= cols, got {m}x{k}")));
        }
        let mut cols = a.columns();
        let mut reflectors = Vec::with_capacity(k);
        for j in 0..k {
            let h = Reflector::new(&cols[j][j..]);
            for col in cols.iter_mut().skip(j + 1) {
                h.apply(&mut col[j..]);
            }
            cols[j][j] = h.alpha;
            for x in cols[j].iter_mut().skip(j + 1) {
                *x = Complex::zero();
            }
            reflectors.push(h);
        }
        let r = CMatrix::from_fn(k, k, |i, j| if i <= j { cols[j][i] } else { Complex::zero() });
        Ok(Self { m, k, reflectors, r })
    }

    pub fn r(&self) -> &CMatrix<T> {
        &self.r
    }

    /// Computes `Q^H b`.
    pub fn apply_qh(&self, b: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut y = b.to_vec();
        for (j, h) in self.reflectors.iter().enumerate() {
            h.apply(&mut y[j..]);
        }
        y
    }

    /// Computes `Q x` for `x` of length `m`.
    pub fn apply_q(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut y = x.to_vec();
        for (j, h) in self.reflectors.iter().enumerate().rev() {
            h.apply(&mut y[j..]);
        }
        y
    }

    /// The full unitary factor, `m x m`.
    pub fn q_full(&self) -> CMatrix<T> {
        let mut q = CMatrix::zeros(self.m, self.m);
        for j in 0..self.m {
            let mut e = vec![Complex::zero(); self.m];
            e[j] = Complex::one();
            for (i, x) in self.apply_q(&e).into_iter().enumerate() {
                q[(i, j)] = x;
            }
        }
        q
    }

    /// Solves the least-squares problem without a rank check.
    fn solve_unchecked(&self, b: &[Complex<T>]) -> Vec<Complex<T>> {
        let y = self.apply_qh(b);
        back_substitute(&self.r, &y[..self.k])
    }
}

fn back_substitute<T: Real>(r: &CMatrix<T>, y: &[Complex<T>]) -> Vec<Complex<T>> {
    let k = r.cols;
    let mut x = vec![Complex::zero(); k];
    for i in (0..k).rev() {
        let mut s = y[i];
        for j in i + 1..k {
            s = s - r[(i, j)] * x[j];
        }
        x[i] = s / r[(i, i)];
    }
    x
}

/// Columns of a matrix.
type Columns<T> = Vec<Vec<Complex<T>>>;

/// Singular values (descending) and right singular vectors of `g` by
/// one-sided Jacobi on its columns. `v[:, j]` pairs with `sigma[j]`.
fn jacobi_svd<T: Real>(mut g: Columns<T>) -> Result<(Vec<T>, Columns<T>)> {
    let k = g.len();
    let rows = g.first().map_or(0, Vec::len);
    let mut v: Vec<Vec<Complex<T>>> =
        (0..k).map(|j| (0..k).map(|i| if i == j { Complex::one() } else { Complex::zero() }).collect()).collect();
    let tol = T::epsilon() * T::count(rows.max(1)).sqrt();
    // columns below this squared norm are numerically zero
    let total = g.iter().flatten().fold(T::zero(), |acc, z| acc + z.norm_sqr());
    let negligible = total * T::epsilon() * T::epsilon();
    let mut converged = k < 2;
    for _ in 0..MAX_JACOBI_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let alpha = g[p].iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
                let beta = g[q].iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
                let gamma = dot(&g[p], &g[q]);
                let gabs = gamma.norm();
                if gabs.is_zero() || gabs <= tol * (alpha * beta).sqrt() || alpha.min(beta) <= negligible {
                    continue;
                }
                rotated = true;
                let conj_phase = (gamma / gabs).conj();
                let zeta = (beta - alpha) / (T::lit(2.0) * gabs);
                let sign = if zeta < T::zero() { -T::one() } else { T::one() };
                let t = sign / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                rotate_pair(&mut g, p, q, c, s, conj_phase);
                rotate_pair(&mut v, p, q, c, s, conj_phase);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NoConvergence { what: "one-sided Jacobi", sweeps: MAX_JACOBI_SWEEPS });
    }
    let mut order: Vec<usize> = (0..k).collect();
    let sig: Vec<T> = g.iter().map(|c| norm2(c)).collect();
    order.sort_by(|&a, &b| sig[b].partial_cmp(&sig[a]).unwrap_or(Ordering::Equal).then(a.cmp(&b)));
    let sigma = order.iter().map(|&j| sig[j]).collect();
    let vs = order.iter().map(|&j| v[j].clone()).collect();
    Ok((sigma, vs))
}

fn rotate_pair<T: Real>(cols: &mut [Vec<Complex<T>>], p: usize, q: usize, c: T, s: T, conj_phase: Complex<T>) {
    let (lo, hi) = cols.split_at_mut(q);
    let (cp, cq) = (&mut lo[p], &mut hi[0]);
    for (a, b) in cp.iter_mut().zip(cq.iter_mut()) {
        let bq = *b * conj_phase;
        let ap = *a;
        *a = ap * c - bq * s;
        *b = ap * s + bq * c;
    }
}

/// Triangular factor (or zero-padded copy) whose singular pairs match `a`'s.
fn svd_core<T: Real>(a: &CMatrix<T>) -> Result<Vec<Vec<Complex<T>>>> {
    if a.rows > a.cols {
        Ok(HouseholderQr::new(a)?.r.columns())
    } else {
        let k = a.cols;
        Ok((0..k).map(|j| (0..k).map(|i| if i < a.rows { a[(i, j)] } else { Complex::zero() }).collect()).collect())
    }
}

/// Singular values of `a` in descending order (zero-padded to `cols` when
/// `rows < cols`).
pub fn singular_values<T: Real>(a: &CMatrix<T>) -> Result<Vec<T>> {
    if a.rows == 0 || a.cols == 0 {
        return Err(Error::Domain("empty matrix".into()));
    }
    Ok(jacobi_svd(svd_core(a)?)?.0)
}

/// Least-squares solution of `A x ≈ b` for a full-column-rank `A`.
pub fn solve_least_squares<T: Real>(a: &CMatrix<T>, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    if a.rows < a.cols {
        return Err(Error::Domain(format!("least squares needs rows >= cols, got {}x{}", a.rows, a.cols)));
    }
    if b.len() != a.rows {
        return Err(Error::Domain(format!("rhs length {} for {} rows", b.len(), a.rows)));
    }
    if a.cols == 0 {
        return Ok(Vec::new());
    }
    if let Some(z) = b.iter().find(|z| !is_finite(**z)) {
        return Err(Error::Domain(format!("non-finite right-hand side entry {z:?}")));
    }
    let qr = HouseholderQr::new(a)?;
    check_rank(&qr)?;
    Ok(qr.solve_unchecked(b))
}

fn check_rank<T: Real>(qr: &HouseholderQr<T>) -> Result<()> {
    let (sigma, _) = jacobi_svd(qr.r.columns())?;
    let smax = sigma[0];
    let cut = rank_tol::<T>() * smax;
    let rank = sigma.iter().filter(|&&s| s > cut).count();
    if smax.is_zero() || rank < qr.k {
        return Err(Error::RankDeficient { rank, cols: qr.k });
    }
    Ok(())
}

/// Smallest singular value of `a` and a unit right singular vector for it.
pub fn min_singular_right_vector<T: Real>(a: &CMatrix<T>) -> Result<(T, Vec<Complex<T>>)> {
    if a.rows == 0 || a.cols == 0 {
        return Err(Error::Domain("empty matrix".into()));
    }
    let (sigma, v) = jacobi_svd(svd_core(a)?)?;
    let j = sigma.len() - 1;
    let mut vec = v[j].clone();
    let n = norm2(&vec);
    for x in &mut vec {
        *x = *x / n;
    }
    Ok((sigma[j], vec))
}

/// Sorts complex values by real part, then imaginary part.
pub fn sort_complex<T: Real>(z: &mut [Complex<T>]) {
    z.sort_by(|a, b| {
        a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal).then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
    });
}

/// Diagonal similarity scaling by powers of two (Parlett-Reinsch).
fn balance<T: Real>(h: &mut CMatrix<T>) {
    let n = h.rows;
    let radix = T::lit(2.0);
    let radix2 = radix * radix;
    let mut done = false;
    let mut passes = 0;
    while !done && passes < 100 {
        done = true;
        passes += 1;
        for i in 0..n {
            let mut c = T::zero();
            let mut r = T::zero();
            for j in 0..n {
                if j != i {
                    c = c + l1(h[(j, i)]);
                    r = r + l1(h[(i, j)]);
                }
            }
            if c.is_zero() || r.is_zero() {
                continue;
            }
            let mut g = r / radix;
            let mut f = T::one();
            let s = c + r;
            while c < g {
                f = f * radix;
                c = c * radix2;
            }
            g = r * radix;
            while c > g {
                f = f / radix;
                c = c / radix2;
            }
            if (c + r) / f < T::lit(0.95) * s {
                done = false;
                let fi = T::one() / f;
                for j in 0..n {
                    h[(i, j)] = h[(i, j)] * fi;
                    h[(j, i)] = h[(j, i)] * f;
                }
            }
        }
    }
}

/// Reduces `h` to upper Hessenberg form by Householder similarities.
fn hessenberg<T: Real>(h: &mut CMatrix<T>) {
    let n = h.rows;
    if n < 3 {
        return;
    }
    for j in 0..n - 2 {
        let x: Vec<Complex<T>> = (j + 1..n).map(|i| h[(i, j)]).collect();
        let refl = Reflector::new(&x);
        if refl.beta.is_zero() {
            continue;
        }
        // left: rows j+1.., columns j..
        for c in j..n {
            let mut col: Vec<Complex<T>> = (j + 1..n).map(|i| h[(i, c)]).collect();
            refl.apply(&mut col);
            for (off, val) in col.into_iter().enumerate() {
                h[(j + 1 + off, c)] = val;
            }
        }
        // right: all rows, columns j+1.. ; (row P)^T = P^H-conj... use row * P
        for r in 0..n {
            // row * P = (P^H row^H)^H and P is Hermitian
            let mut row: Vec<Complex<T>> = (j + 1..n).map(|c| h[(r, c)].conj()).collect();
            refl.apply(&mut row);
            for (off, val) in row.into_iter().enumerate() {
                h[(r, j + 1 + off)] = val.conj();
            }
        }
        for i in j + 2..n {
            h[(i, j)] = Complex::zero();
        }
    }
}

fn givens<T: Real>(a: Complex<T>, b: Complex<T>) -> (T, Complex<T>) {
    let bn = b.norm();
    if bn.is_zero() {
        return (T::one(), Complex::zero());
    }
    let an = a.norm();
    if an.is_zero() {
        return (T::zero(), b.conj() / bn);
    }
    let nrm = an.hypot(bn);
    (an / nrm, (a / an) * b.conj() / nrm)
}

/// Eigenvalues of an upper Hessenberg matrix by single-shift complex QR.
fn hessenberg_qr<T: Real>(mut h: CMatrix<T>) -> Result<Vec<Complex<T>>> {
    let n = h.rows;
    let mut eig = Vec::with_capacity(n);
    if n == 0 {
        return Ok(eig);
    }
    let eps = T::epsilon();
    let hnorm = h.norm_fro();
    let tiny = T::min_positive_value() / eps;
    let mut hi = n - 1;
    let mut its = 0usize;
    loop {
        if hi == 0 {
            eig.push(h[(0, 0)]);
            break;
        }
        // look for a negligible subdiagonal entry
        let mut l = hi;
        while l > 0 {
            let s = l1(h[(l - 1, l - 1)]) + l1(h[(l, l)]);
            let s = if s.is_zero() { hnorm } else { s };
            if l1(h[(l, l - 1)]) <= eps * s || l1(h[(l, l - 1)]) <= tiny {
                h[(l, l - 1)] = Complex::zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig.push(h[(hi, hi)]);
            hi -= 1;
            its = 0;
            continue;
        }
        its += 1;
        if its > MAX_QR_ITERS_PER_EIGENVALUE {
            return Err(Error::NoConvergence { what: "Hessenberg QR", sweeps: its });
        }
        let shift = if its.is_multiple_of(11) {
            // exceptional shift
            let e = h[(hi, hi - 1)].norm() + if hi >= 2 { h[(hi - 1, hi - 2)].norm() } else { T::zero() };
            h[(hi, hi)] + Complex::new(e * T::lit(0.75), e * T::lit(0.4))
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        for i in l..=hi {
            h[(i, i)] = h[(i, i)] - shift;
        }
        let mut rots = Vec::with_capacity(hi - l);
        for k in l..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hi {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            h[(k + 1, k)] = Complex::zero();
            rots.push((c, s));
        }
        for (off, &(c, s)) in rots.iter().enumerate() {
            let k = l + off;
            for i in l..=(k + 1).min(hi) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + s.conj() * y;
                h[(i, k + 1)] = -s * x + y * c;
            }
        }
        for i in l..=hi {
            h[(i, i)] = h[(i, i)] + shift;
        }
    }
    Ok(eig)
}

fn wilkinson_shift<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    let tr = (a + d) * half;
    let disc = ((a - d) * half).powi(2) + b * c;
    let root = disc.sqrt();
    let l1 = tr + root;
    let l2 = tr - root;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// All eigenvalues of a square matrix, sorted by real then imaginary part.
pub fn eigenvalues<T: Real>(a: &CMatrix<T>) -> Result<Vec<Complex<T>>> {
    if !a.is_square() {
        return Err(Error::Domain(format!("eigenvalues of a non-square {}x{} matrix", a.rows, a.cols)));
    }
    let mut h = a.clone();
    balance(&mut h);
    hessenberg(&mut h);
    let mut eig = hessenberg_qr(h)?;
    sort_complex(&mut eig);
    Ok(eig)
}

/// Finite eigenvalues of the pencil `(E, diag(mask))`.
///
/// Masked-out (zero) indices are eliminated before a standard eigenproblem is
/// solved. Two block structures are supported: an invertible constraint block
/// (Schur complement) and a structurally zero constraint block, which covers
/// the barycentric arrowhead pencils and leaves `n - 2 * zeros` finite
/// eigenvalues.
pub fn finite_generalized_eigenvalues<T: Real>(e: &CMatrix<T>, mask: &[bool]) -> Result<Vec<Complex<T>>> {
    if !e.is_square() {
        return Err(Error::Domain(format!("pencil matrix is {}x{}, not square", e.rows, e.cols)));
    }
    if mask.len() != e.rows {
        return Err(Error::Domain(format!("mask length {} for dimension {}", mask.len(), e.rows)));
    }
    let zs: Vec<usize> = (0..mask.len()).filter(|&i| !mask[i]).collect();
    let ns: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
    if zs.is_empty() {
        return eigenvalues(e);
    }
    let ezz = e.select(&zs, &zs);
    let ezn = e.select(&zs, &ns);
    let enz = e.select(&ns, &zs);
    let enn = e.select(&ns, &ns);

    if ezz.data.iter().all(|z| z.is_zero()) {
        return zero_block_deflation(&ezn, &enz, &enn);
    }

    // invertible constraint block: x_Z = -E_ZZ^{-1} E_ZN x_N
    let qr = HouseholderQr::new(&ezz)?;
    check_rank(&qr)
        .map_err(|_| Error::SingularPencil("constraint block is singular but not structurally zero".into()))?;
    let mut schur = enn;
    for j in 0..ns.len() {
        let y = qr.solve_unchecked(&ezn.column(j));
        let corr = enz.mul_vec(&y);
        for i in 0..ns.len() {
            schur[(i, j)] = schur[(i, j)] - corr[i];
        }
    }
    eigenvalues(&schur)
}

fn zero_block_deflation<T: Real>(ezn: &CMatrix<T>, enz: &CMatrix<T>, enn: &CMatrix<T>) -> Result<Vec<Complex<T>>> {
    let z = ezn.rows;
    let n = enn.rows;
    if n < z {
        return Err(Error::SingularPencil(format!("{z} constraints on {n} free variables")));
    }
    // U: orthonormal basis of null(E_ZN); W: orthogonal complement of range(E_NZ)
    let ct = ezn.adjoint();
    let qr_c = HouseholderQr::new(&ct)?;
    check_rank(&qr_c).map_err(|_| Error::SingularPencil("constraint rows are linearly dependent".into()))?;
    let qr_f = HouseholderQr::new(enz)?;
    check_rank(&qr_f).map_err(|_| Error::SingularPencil("coupling columns are linearly dependent".into()))?;
    let d = n - z;
    if d == 0 {
        return Ok(Vec::new());
    }
    let qc = qr_c.q_full();
    let qf = qr_f.q_full();
    let cols: Vec<usize> = (z..n).collect();
    let all: Vec<usize> = (0..n).collect();
    let u = qc.select(&all, &cols);
    let w = qf.select(&all, &cols);
    let wh = w.adjoint();
    let p = wh.matmul(&u);
    let k = wh.matmul(&enn.matmul(&u));
    let qr_p = HouseholderQr::new(&p)?;
    check_rank(&qr_p).map_err(|_| {
        Error::SingularPencil("reduced pencil has infinite eigenvalues beyond the constraint structure".into())
    })?;
    let mut reduced = CMatrix::zeros(d, d);
    for j in 0..d {
        let x = qr_p.solve_unchecked(&k.column(j));
        for i in 0..d {
            reduced[(i, j)] = x[i];
        }
    }
    eigenvalues(&reduced)
}
