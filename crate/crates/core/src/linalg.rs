//! Sparse exact linear algebra over ℚ(ζ_N) and dense/sparse elimination
//! over prime fields.
//!
//! Exact ranks use fraction-free (Bareiss-style) elimination after clearing
//! denominators; pivots are chosen greedily by row sparsity, preferring
//! monomial pivots so divisions stay cheap. The modular routines mirror the
//! same eliminations over 𝔽_ℓ for one-sided certificates.

use crate::scalar::prime::{inv_mod, mul_mod};
use crate::scalar::{Cyc, Rat};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

/// Sorted sparse row of exact scalars.
pub type SparseRow = Vec<(u32, Cyc)>;

/// Merges `a + c*b` keeping sorted order and dropping zeros.
pub fn row_axpy(a: &SparseRow, c: &Cyc, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = c.mul(&b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.add(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn row_scale(a: &SparseRow, c: &Cyc) -> SparseRow {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(j, v)| (*j, c.mul(v))).collect()
}

fn row_get(a: &SparseRow, col: u32) -> Option<&Cyc> {
    a.binary_search_by_key(&col, |(j, _)| *j).ok().map(|k| &a[k].1)
}

/// Clears denominators of a row (multiplies by the lcm of all coordinate
/// denominators), preserving its span.
fn clear_denominators(row: &SparseRow) -> SparseRow {
    let mut l = BigInt::one();
    for (_, c) in row {
        for (_, r) in c.terms() {
            l = l.lcm(r.denom());
        }
    }
    if l.is_one() {
        return row.clone();
    }
    let s = Cyc::from_rat(Rat::from_integer(l));
    row_scale(row, &s)
}

/// Rank by fraction-free elimination (Bareiss one-step formula) with greedy
/// sparse pivoting. Exact and definitive.
pub fn rank_exact(rows: &[SparseRow]) -> usize {
    let mut work: Vec<SparseRow> =
        rows.iter().map(clear_denominators).filter(|r| !r.is_empty()).collect();
    let mut rank = 0usize;
    let mut prev_inv = Cyc::one();
    loop {
        // Greedy pivot: shortest row, monomial pivot entries preferred.
        let mut best: Option<(usize, usize)> = None; // (score, row idx)
        for (i, r) in work.iter().enumerate() {
            if r.is_empty() {
                continue;
            }
            let monomial = r[0].1.terms().len() == 1;
            let score = r.len() * 2 + if monomial { 0 } else { 1 };
            if best.map(|(s, _)| score < s).unwrap_or(true) {
                best = Some((score, i));
            }
        }
        let Some((_, pi)) = best else { break };
        let pivot_row = work.swap_remove(pi);
        let (pcol, pval) = (pivot_row[0].0, pivot_row[0].1.clone());
        rank += 1;
        let mut next: Vec<SparseRow> = Vec::with_capacity(work.len());
        for r in work.into_iter() {
            if r.is_empty() {
                continue;
            }
            let reduced = match row_get(&r, pcol) {
                None => row_scale(&r, &pval.mul(&prev_inv)),
                Some(a) => {
                    // (pval*r - a*pivot_row) / prev
                    let t = row_axpy(&row_scale(&r, &pval), &a.neg(), &pivot_row);
                    row_scale(&t, &prev_inv)
                }
            };
            if !reduced.is_empty() {
                next.push(reduced);
            }
        }
        work = next;
        prev_inv = pval.inv();
    }
    rank
}

/// Determinant of a small dense matrix by Bareiss elimination.
pub fn det_exact(m: &[Vec<Cyc>]) -> Cyc {
    let n = m.len();
    if n == 0 {
        return Cyc::one();
    }
    let mut a: Vec<Vec<Cyc>> = m.to_vec();
    let mut sign = false;
    let mut prev = Cyc::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Cyc::zero(),
            }
        }
        let prev_inv = prev.inv();
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.mul(&prev_inv);
            }
            a[i][k] = Cyc::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Incrementally built row echelon basis over ℚ(ζ_N) with unit pivots.
#[derive(Clone)]
pub struct Echelon {
    rows: Vec<SparseRow>,
    pivot_of_col: BTreeMap<u32, usize>,
}

impl Default for Echelon {
    fn default() -> Self {
        Self::new()
    }
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon { rows: Vec::new(), pivot_of_col: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn pivot_cols(&self) -> impl Iterator<Item = u32> + '_ {
        self.pivot_of_col.keys().copied()
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_of_col.contains_key(&col)
    }

    /// Fully reduces a vector against the basis.
    pub fn reduce(&self, mut v: SparseRow) -> SparseRow {
        let mut i = 0;
        while i < v.len() {
            let col = v[i].0;
            if let Some(&r) = self.pivot_of_col.get(&col) {
                let c = v[i].1.neg();
                v = row_axpy(&v, &c, &self.rows[r]);
                // the pivot col cancelled; continue from the same position
            } else {
                i += 1;
            }
        }
        v
    }

    /// Reduces and inserts if independent. Returns true when the vector
    /// enlarged the span.
    pub fn insert(&mut self, v: SparseRow) -> bool {
        let v = self.reduce(v);
        if v.is_empty() {
            return false;
        }
        // Normalize the leading coefficient to 1.
        let lead_inv = v[0].1.inv();
        let v = row_scale(&v, &lead_inv);
        self.pivot_of_col.insert(v[0].0, self.rows.len());
        self.rows.push(v);
        true
    }

    pub fn contains(&self, v: SparseRow) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Solves A·x = b for one exact solution, where A is given by rows.
/// Returns None when the system is inconsistent. Free variables are set
/// to zero.
pub fn solve_exact(rows: &[SparseRow], cols: usize, b: &[Cyc]) -> Option<Vec<Cyc>> {
    assert_eq!(rows.len(), b.len());
    // Augment with a rhs column at index `cols`.
    let mut ech = Echelon::new();
    for (r, rhs) in rows.iter().zip(b.iter()) {
        let mut aug = r.clone();
        if !rhs.is_zero() {
            aug.push((cols as u32, rhs.clone()));
        }
        ech.insert(aug);
    }
    // Inconsistent iff some echelon row pivots on the rhs column.
    if ech.is_pivot(cols as u32) {
        return None;
    }
    // Back-substitute: process pivots from the right.
    let mut x = alloc::vec![Cyc::zero(); cols];
    for row in ech.rows().iter().rev() {
        let (pcol, _) = row[0];
        let mut acc = Cyc::zero();
        let mut rhs = Cyc::zero();
        for (j, c) in row.iter().skip(1) {
            if *j == cols as u32 {
                rhs = c.clone();
            } else {
                acc = acc.add(&c.mul(&x[*j as usize]));
            }
        }
        // pivot coefficient is 1
        x[pcol as usize] = rhs.sub(&acc);
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// Modular backends
// ---------------------------------------------------------------------------

/// Sorted sparse row over 𝔽_ℓ.
pub type ModRow = Vec<(u32, u64)>;

pub fn mod_row_axpy(a: &ModRow, c: u64, b: &ModRow, ell: u64) -> ModRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = mul_mod(c, b[j].1, ell);
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = (a[i].1 + mul_mod(c, b[j].1, ell)) % ell;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental echelon over 𝔽_ℓ with unit pivots.
pub struct EchelonMod {
    pub ell: u64,
    rows: Vec<ModRow>,
    pivot_of_col: BTreeMap<u32, usize>,
}

impl EchelonMod {
    pub fn new(ell: u64) -> Self {
        EchelonMod { ell, rows: Vec::new(), pivot_of_col: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, mut v: ModRow) -> ModRow {
        let ell = self.ell;
        let mut i = 0;
        while i < v.len() {
            let col = v[i].0;
            if let Some(&r) = self.pivot_of_col.get(&col) {
                let c = ell - v[i].1;
                v = mod_row_axpy(&v, c, &self.rows[r], ell);
            } else {
                i += 1;
            }
        }
        v
    }

    pub fn insert(&mut self, v: ModRow) -> bool {
        let v = self.reduce(v);
        if v.is_empty() {
            return false;
        }
        let inv = inv_mod(v[0].1, self.ell);
        let v: ModRow = v.iter().map(|&(j, c)| (j, mul_mod(c, inv, self.ell))).collect();
        self.pivot_of_col.insert(v[0].0, self.rows.len());
        self.rows.push(v);
        true
    }
}

/// Rank over 𝔽_ℓ of a sparse matrix; shortest rows are inserted first to
/// keep fill low on permutation-like inputs.
pub fn rank_mod(rows: Vec<ModRow>, ell: u64) -> usize {
    let mut rows = rows;
    rows.sort_by_key(|r| r.len());
    let mut ech = EchelonMod::new(ell);
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Dense right-kernel basis over 𝔽_ℓ: solutions of A·x = 0.
pub fn kernel_mod_dense(a: &[Vec<u64>], cols: usize, ell: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = a.to_vec();
    let rows = m.len();
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut pivot_row_of_col: Vec<Option<usize>> = alloc::vec![None; cols];
    let mut r = 0usize;
    for c in 0..cols {
        // find pivot
        let mut pr = None;
        for i in r..rows {
            if m[i][c] != 0 {
                pr = Some(i);
                break;
            }
        }
        let Some(pr) = pr else { continue };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], ell);
        for j in c..cols {
            m[r][j] = mul_mod(m[r][j], inv, ell);
        }
        let (top, rest) = m.split_at_mut(r);
        let (pivot_row, below) = rest.split_first_mut().unwrap();
        for row in top.iter_mut().chain(below.iter_mut()) {
            let f = row[c];
            if f != 0 {
                for j in c..cols {
                    let t = mul_mod(f, pivot_row[j], ell);
                    row[j] = (row[j] + ell - t) % ell;
                }
            }
        }
        pivot_col_of_row.push(c);
        pivot_row_of_col[c] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Free columns parameterize the kernel.
    let mut basis = Vec::new();
    for c in 0..cols {
        if pivot_row_of_col[c].is_some() {
            continue;
        }
        let mut v = alloc::vec![0u64; cols];
        v[c] = 1;
        for (ri, &pc) in pivot_col_of_row.iter().enumerate() {
            let coeff = m[ri][c];
            if coeff != 0 {
                v[pc] = (ell - coeff) % ell;
            }
        }
        basis.push(v);
    }
    basis
}

/// Dense rank over 𝔽_ℓ.
pub fn rank_mod_dense(a: &[Vec<u64>], cols: usize, ell: u64) -> usize {
    let mut m: Vec<Vec<u64>> = a.to_vec();
    let rows = m.len();
    let mut r = 0usize;
    for c in 0..cols {
        let mut pr = None;
        for i in r..rows {
            if m[i][c] != 0 {
                pr = Some(i);
                break;
            }
        }
        let Some(pr) = pr else { continue };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], ell);
        let pivot_row: Vec<u64> = m[r][c..].iter().map(|&x| mul_mod(x, inv, ell)).collect();
        for i in r + 1..rows {
            let f = m[i][c];
            if f != 0 {
                for (j, &p) in pivot_row.iter().enumerate() {
                    let t = mul_mod(f, p, ell);
                    m[i][c + j] = (m[i][c + j] + ell - t) % ell;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
