//! Exact integer matrices (i128, checked) and Smith normal form.
//!
//! The Smith decomposition drives coset enumeration: solutions of
//! A·y ≡ x (mod ℤ^m) are parametrized by ⊕ ℤ/dᵢℤ through the unimodular
//! factors, which is how preimage sets and periodic-point sets are listed
//! without search. Overflow is surfaced as an error rather than wrapped.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IMat {
    pub m: usize,
    a: Vec<i128>,
}

impl IMat {
    pub fn zero(m: usize) -> IMat {
        IMat {
            m,
            a: vec![0; m * m],
        }
    }

    pub fn identity(m: usize) -> IMat {
        let mut out = IMat::zero(m);
        for i in 0..m {
            out[(i, i)] = 1;
        }
        out
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<IMat> {
        let m = rows.len();
        if m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(Error::Parse("matrix must be square and nonempty".into()));
        }
        let mut out = IMat::zero(m);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                out[(i, j)] = v as i128;
            }
        }
        Ok(out)
    }

    pub fn rows_i64(&self) -> Vec<Vec<i64>> {
        (0..self.m)
            .map(|i| (0..self.m).map(|j| self[(i, j)] as i64).collect())
            .collect()
    }

    pub fn mul(&self, rhs: &IMat) -> Result<IMat> {
        assert_eq!(self.m, rhs.m);
        let m = self.m;
        let mut out = IMat::zero(m);
        for i in 0..m {
            for j in 0..m {
                let mut acc: i128 = 0;
                for k in 0..m {
                    let p = self[(i, k)]
                        .checked_mul(rhs[(k, j)])
                        .ok_or(Error::Overflow("matrix product"))?;
                    acc = acc
                        .checked_add(p)
                        .ok_or(Error::Overflow("matrix product"))?;
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<IMat> {
        let mut out = IMat::identity(self.m);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(out)
    }

    pub fn sub_identity(&self) -> IMat {
        let mut out = self.clone();
        for i in 0..self.m {
            out[(i, i)] -= 1;
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<i128> {
        let m = self.m;
        let mut w = self.a.clone();
        let mut sign: i128 = 1;
        let mut prev: i128 = 1;
        for t in 0..m {
            if w[t * m + t] == 0 {
                let Some(r) = (t + 1..m).find(|&r| w[r * m + t] != 0) else {
                    return Ok(0);
                };
                for j in 0..m {
                    w.swap(t * m + j, r * m + j);
                }
                sign = -sign;
            }
            let pivot = w[t * m + t];
            for i in t + 1..m {
                for j in t + 1..m {
                    let hi = pivot
                        .checked_mul(w[i * m + j])
                        .ok_or(Error::Overflow("determinant"))?;
                    let lo = w[i * m + t]
                        .checked_mul(w[t * m + j])
                        .ok_or(Error::Overflow("determinant"))?;
                    let num = hi.checked_sub(lo).ok_or(Error::Overflow("determinant"))?;
                    w[i * m + j] = num / prev;
                }
                w[i * m + t] = 0;
            }
            prev = pivot;
        }
        Ok(sign * w[m * m - 1])
    }

    /// Integer matrix times rational vector.
    pub fn mul_rat_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.m);
        (0..self.m)
            .map(|i| {
                let mut acc = Rat::from_integer(BigInt::from(0));
                for (j, x) in v.iter().enumerate() {
                    acc += x * Rat::from_integer(BigInt::from(self[(i, j)]));
                }
                acc
            })
            .collect()
    }

    pub fn mul_f64_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.m);
        (0..self.m)
            .map(|i| (0..self.m).map(|j| self[(i, j)] as f64 * v[j]).sum())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.a[i * self.m + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.a[i * self.m + j]
    }
}

/// A = U·D·V with U, V unimodular and D diagonal with d₁ | d₂ | … .
/// The inverses of the unimodular factors are tracked during reduction so
/// coset enumeration never inverts anything afterwards.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IMat,
    pub d: IMat,
    pub v: IMat,
    pub u_inv: IMat,
    pub v_inv: IMat,
}

impl SmithDecomposition {
    pub fn diag(&self) -> Vec<i128> {
        (0..self.d.m).map(|i| self.d[(i, i)]).collect()
    }
}

struct Work {
    w: IMat,
    u: IMat,
    u_inv: IMat,
    v: IMat,
    v_inv: IMat,
}

impl Work {
    fn checked(&mut self, i: usize, j: usize, c: i128, target: Target) -> Result<()> {
        // row_i += c * row_j on W keeps A = U·W·V when col_j(U) -= c * col_i(U);
        // the mirrored bookkeeping applies to column operations.
        let m = self.w.m;
        match target {
            Target::Row => {
                for t in 0..m {
                    self.w[(i, t)] = add_mul(self.w[(i, t)], c, self.w[(j, t)])?;
                    self.u_inv[(i, t)] = add_mul(self.u_inv[(i, t)], c, self.u_inv[(j, t)])?;
                }
                for t in 0..m {
                    self.u[(t, j)] = add_mul(self.u[(t, j)], -c, self.u[(t, i)])?;
                }
            }
            Target::Col => {
                for t in 0..m {
                    self.w[(t, i)] = add_mul(self.w[(t, i)], c, self.w[(t, j)])?;
                    self.v_inv[(t, i)] = add_mul(self.v_inv[(t, i)], c, self.v_inv[(t, j)])?;
                }
                for t in 0..m {
                    self.v[(j, t)] = add_mul(self.v[(j, t)], -c, self.v[(i, t)])?;
                }
            }
        }
        Ok(())
    }

    fn swap(&mut self, i: usize, j: usize, target: Target) {
        let m = self.w.m;
        match target {
            Target::Row => {
                for t in 0..m {
                    let (a, b) = ((i, t), (j, t));
                    let tmp = self.w[a];
                    self.w[a] = self.w[b];
                    self.w[b] = tmp;
                    let tmp = self.u_inv[a];
                    self.u_inv[a] = self.u_inv[b];
                    self.u_inv[b] = tmp;
                    let (a, b) = ((t, i), (t, j));
                    let tmp = self.u[a];
                    self.u[a] = self.u[b];
                    self.u[b] = tmp;
                }
            }
            Target::Col => {
                for t in 0..m {
                    let (a, b) = ((t, i), (t, j));
                    let tmp = self.w[a];
                    self.w[a] = self.w[b];
                    self.w[b] = tmp;
                    let tmp = self.v_inv[a];
                    self.v_inv[a] = self.v_inv[b];
                    self.v_inv[b] = tmp;
                    let (a, b) = ((i, t), (j, t));
                    let tmp = self.v[a];
                    self.v[a] = self.v[b];
                    self.v[b] = tmp;
                }
            }
        }
    }

    fn negate(&mut self, i: usize, target: Target) {
        let m = self.w.m;
        match target {
            Target::Row => {
                for t in 0..m {
                    self.w[(i, t)] = -self.w[(i, t)];
                    self.u_inv[(i, t)] = -self.u_inv[(i, t)];
                    self.u[(t, i)] = -self.u[(t, i)];
                }
            }
            Target::Col => {
                for t in 0..m {
                    self.w[(t, i)] = -self.w[(t, i)];
                    self.v_inv[(t, i)] = -self.v_inv[(t, i)];
                    self.v[(i, t)] = -self.v[(i, t)];
                }
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Target {
    Row,
    Col,
}

fn add_mul(a: i128, c: i128, b: i128) -> Result<i128> {
    c.checked_mul(b)
        .and_then(|p| a.checked_add(p))
        .ok_or(Error::Overflow("smith reduction"))
}

pub fn smith(a: &IMat) -> Result<SmithDecomposition> {
    let m = a.m;
    let mut wk = Work {
        w: a.clone(),
        u: IMat::identity(m),
        u_inv: IMat::identity(m),
        v: IMat::identity(m),
        v_inv: IMat::identity(m),
    };

    for t in 0..m {
        'pivot: loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..m {
                    if wk.w[(i, j)] != 0 && best.is_none_or(|b| wk.w[(i, j)].abs() < wk.w[b].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'pivot;
            };
            if pi != t {
                wk.swap(t, pi, Target::Row);
            }
            if pj != t {
                wk.swap(t, pj, Target::Col);
            }

            let p = wk.w[(t, t)];
            let mut clean = true;
            for i in t + 1..m {
                let q = wk.w[(i, t)].div_euclid(p);
                if q != 0 {
                    wk.checked(i, t, -q, Target::Row)?;
                }
                if wk.w[(i, t)] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..m {
                let q = wk.w[(t, j)].div_euclid(p);
                if q != 0 {
                    wk.checked(j, t, -q, Target::Col)?;
                }
                if wk.w[(t, j)] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            // Divisibility chain: fold any non-multiple of the pivot from the
            // trailing block into row t and reduce again.
            for i in t + 1..m {
                for j in t + 1..m {
                    if wk.w[(i, j)] % p != 0 {
                        wk.checked(t, i, 1, Target::Row)?;
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
        if wk.w[(t, t)] < 0 {
            wk.negate(t, Target::Row);
        }
    }

    Ok(SmithDecomposition {
        u: wk.u,
        d: wk.w,
        v: wk.v,
        u_inv: wk.u_inv,
        v_inv: wk.v_inv,
    })
}

/// Lexicographic enumeration of ⊕ ℤ/dᵢℤ coset indices.
pub struct CosetIter {
    d: Vec<i128>,
    cur: Vec<i128>,
    done: bool,
}

impl CosetIter {
    pub fn new(diag: &[i128]) -> CosetIter {
        CosetIter {
            d: diag.iter().map(|v| v.abs()).collect(),
            cur: vec![0; diag.len()],
            done: diag.iter().any(|&v| v == 0),
        }
    }

    pub fn count(diag: &[i128]) -> i128 {
        diag.iter().map(|v| v.abs()).product()
    }
}

impl Iterator for CosetIter {
    type Item = Vec<i128>;
    fn next(&mut self) -> Option<Vec<i128>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        // Last index varies fastest so output order is lexicographic.
        for i in (0..self.cur.len()).rev() {
            self.cur[i] += 1;
            if self.cur[i] < self.d[i] {
                return Some(out);
            }
            self.cur[i] = 0;
            if i == 0 {
                self.done = true;
            }
        }
        if self.cur.is_empty() {
            self.done = true;
        }
        Some(out)
    }
}
