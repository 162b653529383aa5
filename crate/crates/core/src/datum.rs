//! Integer linear algebra over products of cyclic groups: Smith normal
//! form, unique-solution tests for mixed-moduli systems, and the datum-level
//! hypothesis checkers for Cartan and reduced YD data.

use crate::report::{CheckItem, CheckReport};
use crate::scalar::poly::is_unimodular;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DatumError {
    /// Neither exact backend applies (moduli too large for enumeration and
    /// the system is not translation-invariant).
    Overflow(String),
    BadShape(String),
}

impl core::fmt::Display for DatumError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DatumError::Overflow(m) => write!(f, "no exact backend applies: {m}"),
            DatumError::BadShape(m) => write!(f, "malformed datum: {m}"),
        }
    }
}

impl core::error::Error for DatumError {}

pub type IMat = Vec<Vec<BigInt>>;

pub fn imat_from_i64(m: &[Vec<i64>]) -> IMat {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let m = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for (l, brow) in b.iter().enumerate() {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                let t = &a[i][l] * &brow[j];
                out[i][j] += t;
            }
        }
    }
    out
}

struct SnfWork {
    a: IMat,
    u: IMat,
    v: IMat,
    rows: usize,
    cols: usize,
}

impl SnfWork {
    fn row_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = q * &self.a[src][j];
            self.a[dst][j] -= t;
        }
        for j in 0..self.rows {
            let t = q * &self.u[src][j];
            self.u[dst][j] -= t;
        }
    }

    fn col_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let t = q * &self.a[i][src];
            self.a[i][dst] -= t;
        }
        for i in 0..self.cols {
            let t = q * &self.v[i][src];
            self.v[i][dst] -= t;
        }
    }

    fn row_swap(&mut self, x: usize, y: usize) {
        self.a.swap(x, y);
        self.u.swap(x, y);
    }

    fn col_swap(&mut self, x: usize, y: usize) {
        for row in self.a.iter_mut() {
            row.swap(x, y);
        }
        for row in self.v.iter_mut() {
            row.swap(x, y);
        }
    }

    fn row_negate(&mut self, i: usize) {
        for j in 0..self.cols {
            self.a[i][j] = -self.a[i][j].clone();
        }
        for j in 0..self.rows {
            self.u[i][j] = -self.u[i][j].clone();
        }
    }

    /// Diagonalizes the trailing block starting at position k.
    fn diagonalize_from(&mut self, start: usize) {
        let dim = self.rows.min(self.cols);
        let mut k = start;
        while k < dim {
            let mut best: Option<(usize, usize)> = None;
            for i in k..self.rows {
                for j in k..self.cols {
                    if !self.a[i][j].is_zero()
                        && best.map(|(bi, bj)| self.a[i][j].abs() < self.a[bi][bj].abs()).unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            if bi != k {
                self.row_swap(k, bi);
            }
            if bj != k {
                self.col_swap(k, bj);
            }
            'reduce: loop {
                for i in k + 1..self.rows {
                    if self.a[i][k].is_zero() {
                        continue;
                    }
                    let q = div_round(&self.a[i][k], &self.a[k][k]);
                    if !q.is_zero() {
                        self.row_sub(i, k, &q);
                    }
                    if !self.a[i][k].is_zero() {
                        // remainder strictly smaller in absolute value
                        self.row_swap(k, i);
                        continue 'reduce;
                    }
                }
                for j in k + 1..self.cols {
                    if self.a[k][j].is_zero() {
                        continue;
                    }
                    let q = div_round(&self.a[k][j], &self.a[k][k]);
                    if !q.is_zero() {
                        self.col_sub(j, k, &q);
                    }
                    if !self.a[k][j].is_zero() {
                        self.col_swap(k, j);
                        continue 'reduce;
                    }
                }
                break;
            }
            k += 1;
        }
    }
}

/// Smith normal form: returns (U, D, V) with U·M·V = D diagonal,
/// d_1 | d_2 | … nonnegative, and U, V unimodular (verified).
pub fn smith_normal_form(m: &IMat) -> (IMat, IMat, IMat) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut w = SnfWork { a: m.clone(), u: identity(rows), v: identity(cols), rows, cols };
    w.diagonalize_from(0);
    let dim = rows.min(cols);

    // Nonnegative diagonal.
    for i in 0..dim {
        if w.a[i][i].is_negative() {
            w.row_negate(i);
        }
    }

    // Bubble zeros to the end and enforce the divisibility chain with the
    // 2×2 block transform diag(a,b) -> diag(gcd, lcm).
    let mut stable = false;
    while !stable {
        stable = true;
        for i in 0..dim.saturating_sub(1) {
            let di = w.a[i][i].clone();
            let dj = w.a[i + 1][i + 1].clone();
            if di.is_zero() && !dj.is_zero() {
                w.row_swap(i, i + 1);
                w.col_swap(i, i + 1);
                stable = false;
                continue;
            }
            if di.is_zero() || dj.is_zero() || (&dj % &di).is_zero() {
                continue;
            }
            let (g, x, y) = ext_gcd(&di, &dj);
            let l = (&di * &dj) / &g;
            // P = [[x, y], [-dj/g, di/g]] on rows (i, i+1);
            // Q = [[1, -y*dj/g], [1, x*di/g]] on cols (i, i+1).
            let (bg, bl) = (g.clone(), l.clone());
            let p11 = x.clone();
            let p12 = y.clone();
            let p21 = -(&dj / &g);
            let p22 = &di / &g;
            let q12 = -(&y * &dj) / &g;
            let q22 = (&x * &di) / &g;
            apply_2x2_rows(&mut w.a, i, (&p11, &p12, &p21, &p22));
            apply_2x2_rows(&mut w.u, i, (&p11, &p12, &p21, &p22));
            apply_2x2_cols(&mut w.a, i, (&BigInt::one(), &q12, &BigInt::one(), &q22));
            apply_2x2_cols(&mut w.v, i, (&BigInt::one(), &q12, &BigInt::one(), &q22));
            debug_assert_eq!(w.a[i][i], bg);
            debug_assert_eq!(w.a[i + 1][i + 1], bl);
            stable = false;
        }
    }

    debug_assert!(is_unimodular(&w.u), "U not unimodular");
    debug_assert!(is_unimodular(&w.v), "V not unimodular");
    debug_assert_eq!(mat_mul(&mat_mul(&w.u, m), &w.v), w.a, "UMV != D");
    (w.u, w.a, w.v)
}

fn apply_2x2_rows(m: &mut IMat, i: usize, p: (&BigInt, &BigInt, &BigInt, &BigInt)) {
    let cols = m[0].len();
    for j in 0..cols {
        let a = m[i][j].clone();
        let b = m[i + 1][j].clone();
        m[i][j] = p.0 * &a + p.1 * &b;
        m[i + 1][j] = p.2 * &a + p.3 * &b;
    }
}

fn apply_2x2_cols(m: &mut IMat, j: usize, q: (&BigInt, &BigInt, &BigInt, &BigInt)) {
    for row in m.iter_mut() {
        let a = row[j].clone();
        let b = row[j + 1].clone();
        row[j] = q.0 * &a + q.2 * &b;
        row[j + 1] = q.1 * &a + q.3 * &b;
    }
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if (&r * 2u32).abs() > b.abs() {
        if r.is_negative() == b.is_negative() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if b.is_zero() {
        let s = if a.is_negative() { -BigInt::one() } else { BigInt::one() };
        return (a.abs(), s, BigInt::zero());
    }
    let (g, x, y) = ext_gcd(b, &(a % b));
    let q = a / b;
    (g, y.clone(), x - q * y)
}

/// The diagonal invariant factors of an SNF result.
pub fn snf_invariants(d: &IMat) -> Vec<BigInt> {
    let dim = d.len().min(if d.is_empty() { 0 } else { d[0].len() });
    (0..dim).map(|i| d[i][i].clone()).collect()
}

// ---------------------------------------------------------------------------
// Mixed-moduli systems
// ---------------------------------------------------------------------------

/// The system Σ_i x_i·m_ij ≡ 0 (mod n_j) with unknowns x_i ∈ ℤ_{n_i}.
/// Entries are stored reduced mod the column modulus.
#[derive(Debug, Clone)]
pub struct ZModSystem {
    pub matrix: Vec<Vec<i64>>,
    pub moduli: Vec<u64>,
}

impl ZModSystem {
    pub fn new(matrix: Vec<Vec<i64>>, moduli: Vec<u64>) -> Result<ZModSystem, DatumError> {
        let m = moduli.len();
        if matrix.len() != m || matrix.iter().any(|r| r.len() != m) {
            return Err(DatumError::BadShape("matrix must be square over the moduli".into()));
        }
        if moduli.iter().any(|&n| n == 0) {
            return Err(DatumError::BadShape("moduli must be positive".into()));
        }
        let matrix = matrix
            .iter()
            .enumerate()
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &x)| x.rem_euclid(moduli[j] as i64))
                    .collect()
            })
            .collect();
        Ok(ZModSystem { matrix, moduli })
    }

    /// The system is translation-invariant (counting over residues is
    /// well-defined classwise) iff n_i·m_ij ≡ 0 mod n_j for all i, j. This
    /// holds automatically when M encodes a bicharacter.
    pub fn is_translation_invariant(&self) -> bool {
        let m = self.moduli.len();
        (0..m).all(|i| {
            (0..m).all(|j| {
                (self.matrix[i][j] as i128 * self.moduli[i] as i128)
                    % self.moduli[j] as i128
                    == 0
            })
        })
    }

    /// Exact solution count by brute-force enumeration.
    pub fn count_brute(&self) -> Option<u64> {
        let m = self.moduli.len();
        let total: u128 = self.moduli.iter().map(|&n| n as u128).product();
        if total > 10_000_000 {
            return None;
        }
        let mut count = 0u64;
        let mut x = vec![0u64; m];
        'outer: loop {
            let ok = (0..m).all(|j| {
                let s: u128 = (0..m)
                    .map(|i| x[i] as u128 * self.matrix[i][j] as u128)
                    .sum();
                s % self.moduli[j] as u128 == 0
            });
            if ok {
                count += 1;
            }
            // mixed-radix increment
            for i in 0..m {
                x[i] += 1;
                if x[i] < self.moduli[i] {
                    continue 'outer;
                }
                x[i] = 0;
            }
            break;
        }
        Some(count)
    }

    /// Exact solution count through the invariant factors of the stacked
    /// lattice [M; diag(n)]: the solution set is a subgroup of ∏ℤ_{n_i} of
    /// order ∏ d_k. Requires translation invariance.
    pub fn count_lattice(&self) -> Option<u64> {
        if !self.is_translation_invariant() {
            return None;
        }
        let m = self.moduli.len();
        let mut stacked: IMat = Vec::with_capacity(2 * m);
        for row in &self.matrix {
            stacked.push(row.iter().map(|&x| BigInt::from(x)).collect());
        }
        for (j, &n) in self.moduli.iter().enumerate() {
            let mut row = vec![BigInt::zero(); m];
            row[j] = BigInt::from(n);
            stacked.push(row);
        }
        let (_, d, _) = smith_normal_form(&stacked);
        let mut count = BigInt::one();
        for inv in snf_invariants(&d) {
            count *= inv;
        }
        count.to_u64()
    }

    /// Decides uniqueness of the zero solution; computes the exact count
    /// with both backends when available and asserts agreement.
    pub fn unique_solution_check(&self) -> Result<SolutionCount, DatumError> {
        let lattice = self.count_lattice();
        let brute = self.count_brute();
        match (lattice, brute) {
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "lattice and brute-force backends disagree");
                Ok(SolutionCount { count: a, backends: 2 })
            }
            (Some(a), None) => Ok(SolutionCount { count: a, backends: 1 }),
            (None, Some(b)) => Ok(SolutionCount { count: b, backends: 1 }),
            (None, None) => Err(DatumError::Overflow(format!(
                "product of moduli exceeds the enumeration bound and the \
                 system is not translation-invariant"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolutionCount {
    pub count: u64,
    /// Number of independent backends that produced the count.
    pub backends: u8,
}

impl SolutionCount {
    pub fn unique(&self) -> bool {
        self.count == 1
    }
}

// ---------------------------------------------------------------------------
// Group-exponent helpers
// ---------------------------------------------------------------------------

/// An abelian group ∏ ℤ_{orders[k]} with elements as exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub orders: Vec<u64>,
}

impl AbelianGroup {
    pub fn exponent_lcm(&self) -> u64 {
        self.orders.iter().fold(1u64, |a, &b| a.lcm(&b))
    }

    pub fn size(&self) -> u128 {
        self.orders.iter().map(|&n| n as u128).product()
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        v.iter().zip(&self.orders).map(|(&x, &n)| x.rem_euclid(n as i64)).collect()
    }

    pub fn is_identity(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Order of an element given by an exponent vector.
    pub fn element_order(&self, v: &[i64]) -> u64 {
        v.iter()
            .zip(&self.orders)
            .map(|(&x, &n)| {
                let x = x.rem_euclid(n as i64) as u64;
                if x == 0 {
                    1
                } else {
                    n / n.gcd(&x)
                }
            })
            .fold(1u64, |a, b| a.lcm(&b))
    }

    /// |subgroup generated by the given exponent vectors| via the stacked
    /// SNF [gens; diag(orders)].
    pub fn subgroup_order(&self, gens: &[Vec<i64>]) -> u128 {
        let s = self.orders.len();
        let mut stacked: IMat = Vec::new();
        for gen in gens {
            assert_eq!(gen.len(), s);
            stacked.push(gen.iter().map(|&x| BigInt::from(x)).collect());
        }
        for (j, &n) in self.orders.iter().enumerate() {
            let mut row = vec![BigInt::zero(); s];
            row[j] = BigInt::from(n);
            stacked.push(row);
        }
        let (_, d, _) = smith_normal_form(&stacked);
        let mut coker = BigInt::one();
        for inv in snf_invariants(&d) {
            coker *= inv;
        }
        let size = BigInt::from(self.size());
        (size / coker).to_u128().unwrap()
    }

    /// The discrete log of the pairing value χ(g) as an exponent of ζ_L,
    /// L = exponent lcm.
    pub fn pairing_exponent(&self, chi: &[i64], g: &[i64]) -> i64 {
        let l = self.exponent_lcm() as i128;
        let mut acc: i128 = 0;
        for ((&c, &e), &n) in chi.iter().zip(g).zip(&self.orders) {
            acc += (l / n as i128) * (c as i128) * (e as i128);
        }
        acc.rem_euclid(l) as i64
    }
}

/// Solves x·W ≡ b (mod L) for integer x with x_k taken mod orders[k];
/// returns one solution as exponents, or None when inconsistent.
/// W is s×t (s unknowns, t congruences), b length t.
pub fn solve_congruences(
    orders: &[u64],
    w: &IMat,
    b: &[BigInt],
    l: u64,
) -> Option<Vec<i64>> {
    let s = orders.len();
    let t = b.len();
    assert_eq!(w.len(), s);
    // Stack [W; L·I_t]; solve (x, z)·B = b exactly over ℤ.
    let mut stacked: IMat = w.clone();
    for j in 0..t {
        let mut row = vec![BigInt::zero(); t];
        row[j] = BigInt::from(l);
        stacked.push(row);
    }
    let (u, d, v) = smith_normal_form(&stacked);
    // (x,z)·B = b  <=>  y·D = b·V with (x,z) = y·U.
    let bv = mat_mul(&vec![b.to_vec()], &v);
    let dim = d.len().min(t);
    let mut y = vec![BigInt::zero(); s + t];
    for k in 0..t {
        let rhs = &bv[0][k];
        if k < dim && !d[k][k].is_zero() {
            let (q, r) = rhs.div_rem(&d[k][k]);
            if !r.is_zero() {
                return None;
            }
            y[k] = q;
        } else if !rhs.is_zero() {
            return None;
        }
    }
    let xz = mat_mul(&vec![y], &u);
    let sol: Vec<i64> = (0..s)
        .map(|k| {
            let m = BigInt::from(orders[k]);
            let r = (&xz[0][k] % &m + &m) % &m;
            r.to_i64().unwrap()
        })
        .collect();
    Some(sol)
}

// ---------------------------------------------------------------------------
// Data and checkers
// ---------------------------------------------------------------------------

/// Cartan-type datum over an abelian group given by invariant factors.
#[derive(Debug, Clone)]
pub struct CartanDatum {
    pub group: AbelianGroup,
    pub cartan: Vec<Vec<i64>>,
    /// Exponent vectors of the g_i.
    pub g: Vec<Vec<i64>>,
    /// Exponent vectors of the characters χ_i.
    pub chi: Vec<Vec<i64>>,
}

impl CartanDatum {
    pub fn theta(&self) -> usize {
        self.g.len()
    }

    /// Discrete log of q_ij = χ_j(g_i) base ζ_L.
    pub fn q_exponent(&self, i: usize, j: usize) -> i64 {
        self.group.pairing_exponent(&self.chi[j], &self.g[i])
    }

    fn ord_of_root(&self, dlog: i64) -> u64 {
        let l = self.group.exponent_lcm();
        let d = dlog.rem_euclid(l as i64) as u64;
        if d == 0 {
            1
        } else {
            l / l.gcd(&d)
        }
    }

    /// Connected components of the Dynkin diagram.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let th = self.theta();
        let mut seen = vec![false; th];
        let mut out = Vec::new();
        for start in 0..th {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..th {
                    if !seen[j] && i != j && (self.cartan[i][j] != 0 || self.cartan[j][i] != 0) {
                        seen[j] = true;
                        comp.push(j);
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Verifies the compatibility q_ij·q_ji = q_ii^{a_ij}, q_ii ≠ 1, plus the
/// odd-order side conditions, reporting N_J per connected component.
pub fn check_cartan_datum(d: &CartanDatum) -> CheckReport {
    let mut report = CheckReport::new();
    let th = d.theta();
    let l = d.group.exponent_lcm() as i64;

    let shape_ok = d.cartan.len() == th
        && d.cartan.iter().all(|r| r.len() == th)
        && d.chi.len() == th
        && (0..th).all(|i| d.cartan[i][i] == 2)
        && (0..th).all(|i| (0..th).all(|j| i == j || d.cartan[i][j] <= 0));
    report.push(CheckItem::of(
        "cartan matrix shape (a_ii = 2, a_ij <= 0)",
        shape_ok,
        "bad Cartan matrix",
    ));
    if !shape_ok {
        return report;
    }

    for i in 0..th {
        let qii = d.q_exponent(i, i);
        report.push(CheckItem::of(
            format!("q_{}{} != 1", i + 1, i + 1),
            qii.rem_euclid(l) != 0,
            "q_ii = 1",
        ));
        for j in 0..th {
            let lhs = (d.q_exponent(i, j) + d.q_exponent(j, i)).rem_euclid(l);
            let rhs = (qii as i128 * d.cartan[i][j] as i128).rem_euclid(l as i128) as i64;
            report.push(CheckItem::of(
                format!("q_{i1}{j1}*q_{j1}{i1} = q_{i1}{i1}^a_{i1}{j1}", i1 = i + 1, j1 = j + 1),
                lhs == rhs,
                format!("witness (i,j)=({},{})", i + 1, j + 1),
            ));
        }
    }

    for comp in d.components() {
        let orders: Vec<u64> = comp.iter().map(|&i| d.ord_of_root(d.q_exponent(i, i))).collect();
        let constant = orders.windows(2).all(|w| w[0] == w[1]);
        let n_j = orders[0];
        report.push(CheckItem::of(
            format!("component {:?}: N_J constant", comp.iter().map(|i| i + 1).collect::<Vec<_>>()),
            constant,
            format!("orders {orders:?}"),
        ));
        report.push(CheckItem::of(
            format!("component {:?}: N_J = {} odd", comp.iter().map(|i| i + 1).collect::<Vec<_>>(), n_j),
            n_j % 2 == 1,
            "even order",
        ));
        // G_2 components need order prime to 3.
        let is_g2 = comp.len() == 2
            && comp
                .iter()
                .any(|&i| comp.iter().any(|&j| i != j && d.cartan[i][j] * d.cartan[j][i] == 3));
        if is_g2 {
            report.push(CheckItem::of(
                format!("G2 component {:?}: gcd(N_J, 3) = 1", comp),
                n_j % 3 != 0,
                "order divisible by 3",
            ));
        }
    }
    report
}

/// Hypothesis checks for the gcd/character-extension theorem on a Cartan
/// datum: gcd(ord(χ_i g_i), det A) = 1, existence of χ̄_i with
/// χ̄_i(g_j) = χ_j(g_i) (one solution exhibited), and Ĝ = ⟨χ_i⟩.
pub fn thm42_hypotheses(d: &CartanDatum) -> CheckReport {
    let mut report = CheckReport::new();
    let th = d.theta();
    let det_a = crate::scalar::poly::det_bigint(&imat_from_i64(&d.cartan));
    report.push(CheckItem::of("det(A) != 0", !det_a.is_zero(), "singular Cartan matrix"));

    for i in 0..th {
        let ord = d
            .group
            .element_order(&d.g[i])
            .lcm(&d.group.element_order(&d.chi[i]));
        let g = det_a.abs().gcd(&BigInt::from(ord));
        report.push(CheckItem::of(
            format!("gcd(ord(chi_{0} g_{0}), det A) = 1", i + 1),
            g.is_one(),
            format!("ord = {ord}, det A = {det_a}, gcd = {g}"),
        ));
    }

    // χ̄_i: solve χ̄_i(g_j) = χ_j(g_i) over the group invariants.
    let l = d.group.exponent_lcm();
    let s = d.group.orders.len();
    let w: IMat = (0..s)
        .map(|k| {
            (0..th)
                .map(|j| BigInt::from((l / d.group.orders[k]) as i64 * d.g[j][k]))
                .collect()
        })
        .collect();
    for i in 0..th {
        let b: Vec<BigInt> = (0..th).map(|j| BigInt::from(d.q_exponent(i, j))).collect();
        match solve_congruences(&d.group.orders, &w, &b, l) {
            Some(sol) => {
                // verify the exhibited solution
                let ok = (0..th).all(|j| {
                    d.group.pairing_exponent(&sol, &d.g[j])
                        == d.q_exponent(i, j).rem_euclid(l as i64)
                });
                report.push(CheckItem::of(
                    format!("extension chi_bar_{} exists", i + 1),
                    ok,
                    format!("candidate {sol:?} failed verification"),
                ));
                if ok {
                    report.push(CheckItem::pass(format!(
                        "chi_bar_{} = {:?} (exponent vector)",
                        i + 1,
                        sol
                    )));
                }
            }
            None => {
                report.push(CheckItem::fail(
                    format!("extension chi_bar_{} exists", i + 1),
                    "congruence system inconsistent",
                ));
            }
        }
    }

    let gen = d.group.subgroup_order(&d.chi) == d.group.size();
    report.push(CheckItem::of(
        "G_hat generated by the chi_i",
        gen,
        format!("subgroup order {} of {}", d.group.subgroup_order(&d.chi), d.group.size()),
    ));
    report
}

/// Reduced YD-datum: f_i, g_i in the group, characters χ_i, with
/// χ_j(g_i) = χ_i(f_j) and f_i·g_i ≠ 1. `f` is only needed by the
/// mixed-moduli checker; the uniform-order checker ignores it.
#[derive(Debug, Clone)]
pub struct ReducedDatum {
    pub group: AbelianGroup,
    pub f: Option<Vec<Vec<i64>>>,
    pub g: Vec<Vec<i64>>,
    pub chi: Vec<Vec<i64>>,
}

impl ReducedDatum {
    pub fn theta(&self) -> usize {
        self.g.len()
    }
}

/// Condition checks for the reduced-datum factorizability theorem: the
/// moduli n_i = ord(χ_i f_i), the pairing-exponent matrix M, uniqueness of
/// the zero solution, and generation of Ĝ. Finite-dimensionality of the
/// Nichols algebra is echoed as an assumption.
pub fn thm45_conditions(d: &ReducedDatum) -> (CheckReport, Option<ZModSystem>) {
    let mut report = CheckReport::new();
    let th = d.theta();
    let l = d.group.exponent_lcm();
    let Some(f) = d.f.as_ref() else {
        report.push(CheckItem::fail("reduced datum has f_i", "missing f"));
        return (report, None);
    };

    report.push(CheckItem::assumed(
        "B(V) finite-dimensional",
        "hypothesis (i) taken from the input",
    ));

    for i in 0..th {
        for j in 0..th {
            let a = d.group.pairing_exponent(&d.chi[j], &d.g[i]);
            let b = d.group.pairing_exponent(&d.chi[i], &f[j]);
            report.push(CheckItem::of(
                format!("chi_{}(g_{}) = chi_{}(f_{})", j + 1, i + 1, i + 1, j + 1),
                a == b,
                format!("dlogs {a} vs {b}"),
            ));
        }
        let fg: Vec<i64> = f[i].iter().zip(&d.g[i]).map(|(&a, &b)| a + b).collect();
        report.push(CheckItem::of(
            format!("f_{0}*g_{0} != 1", i + 1),
            !d.group.is_identity(&fg),
            "f_i g_i = 1",
        ));
    }

    // n_i and the direct-product shape of <chi_i f_i>.
    let n: Vec<u64> = (0..th)
        .map(|i| d.group.element_order(&d.chi[i]).lcm(&d.group.element_order(&f[i])))
        .collect();
    let prod: u128 = n.iter().map(|&x| x as u128).product();
    // subgroup of G_hat x G generated by (chi_i, f_i)
    let double_group = AbelianGroup {
        orders: d.group.orders.iter().chain(d.group.orders.iter()).copied().collect(),
    };
    let gens: Vec<Vec<i64>> = (0..th)
        .map(|i| d.chi[i].iter().chain(f[i].iter()).copied().collect())
        .collect();
    let shape_ok = double_group.subgroup_order(&gens) == prod;
    report.push(CheckItem::of(
        "subgroup <chi_i f_i> is the direct product of cyclic factors of order n_i",
        shape_ok,
        format!("n = {n:?}"),
    ));

    // Pairing matrix M: chi_i(g_j)*chi_j(g_i) = t_j^{m_ij}, t_j = ζ_L^{L/n_j}.
    let mut m_rows: Vec<Vec<i64>> = vec![vec![0; th]; th];
    let mut m_ok = true;
    for i in 0..th {
        for j in 0..th {
            let v = (d.group.pairing_exponent(&d.chi[i], &d.g[j])
                + d.group.pairing_exponent(&d.chi[j], &d.g[i]))
            .rem_euclid(l as i64);
            let step = (l / n[j]) as i64;
            if v % step != 0 {
                m_ok = false;
                report.push(CheckItem::fail(
                    format!("pairing value ({},{}) is an n_{}-th root of unity", i + 1, j + 1, j + 1),
                    format!("dlog {v} not divisible by {step}"),
                ));
            } else {
                m_rows[i][j] = (v / step).rem_euclid(n[j] as i64);
            }
        }
    }
    if !m_ok {
        return (report, None);
    }

    let system = ZModSystem::new(m_rows, n.clone()).expect("square system");
    match system.unique_solution_check() {
        Ok(sc) => {
            report.push(CheckItem::of(
                "xM = 0 has a unique solution",
                sc.unique(),
                format!("solution count {}", sc.count),
            ));
        }
        Err(e) => {
            report.push(CheckItem::fail("xM = 0 has a unique solution", e.to_string()));
        }
    }

    let gen = d.group.subgroup_order(&d.chi) == d.group.size();
    report.push(CheckItem::of(
        "G_hat generated by the chi_i",
        gen,
        format!("subgroup order {} of {}", d.group.subgroup_order(&d.chi), d.group.size()),
    ));

    (report, Some(system))
}

/// Determinant conditions for the uniform-order theorem: G ≅ ℤ_n^θ with
/// χ_j(g_i) = ω^{m_ij}; requires gcd(det M, n) = 1 and
/// gcd(det(M + Mᵗ), n) = 1. The determinant is derived from the SNF
/// invariants and cross-checked against Bareiss elimination.
pub fn thm46_conditions(d: &ReducedDatum, n: u64) -> CheckReport {
    let mut report = CheckReport::new();
    let th = d.theta();

    report.push(CheckItem::assumed(
        "B(V) finite-dimensional",
        "hypothesis (i) taken from the input",
    ));

    let shape = d.group.orders.iter().all(|&o| o == n) && d.group.orders.len() == th;
    report.push(CheckItem::of(
        format!("G = (Z_{n})^theta"),
        shape,
        format!("orders {:?}", d.group.orders),
    ));
    let ghat = d.group.subgroup_order(&d.chi) == d.group.size();
    report.push(CheckItem::of("G_hat = <chi_i> = (Z_n)^theta", ghat, "chi_i do not generate"));
    if !shape {
        return report;
    }

    let l = d.group.exponent_lcm();
    let step = (l / n) as i64;
    let mut m = vec![vec![0i64; th]; th];
    for i in 0..th {
        for j in 0..th {
            let v = d.group.pairing_exponent(&d.chi[j], &d.g[i]).rem_euclid(l as i64);
            if v % step != 0 {
                report.push(CheckItem::fail(
                    format!("chi_{}(g_{}) is an n-th root of unity", j + 1, i + 1),
                    format!("dlog {v}"),
                ));
                return report;
            }
            m[i][j] = center_mod(v / step, n);
        }
    }

    let mt: Vec<Vec<i64>> = (0..th).map(|i| (0..th).map(|j| m[j][i]).collect()).collect();
    let mmt: Vec<Vec<i64>> =
        (0..th).map(|i| (0..th).map(|j| m[i][j] + mt[i][j]).collect()).collect();

    for (label, mat) in [("det(M)", &m), ("det(M+M^t)", &mmt)] {
        let im = imat_from_i64(mat);
        let det = crate::scalar::poly::det_bigint(&im);
        // Cross-check |det| against the product of SNF invariants.
        let (_, dd, _) = smith_normal_form(&im);
        let snf_abs: BigInt = snf_invariants(&dd).iter().product();
        assert_eq!(det.abs(), snf_abs, "determinant backends disagree");
        let g = det.abs().gcd(&BigInt::from(n));
        report.push(CheckItem::of(
            format!("gcd({label}, n) = 1"),
            g.is_one(),
            format!("{label} = {det}, n = {n}, gcd = {g}"),
        ));
    }
    report
}

fn center_mod(x: i64, n: u64) -> i64 {
    let r = x.rem_euclid(n as i64);
    if r as u64 > n / 2 {
        r - n as i64
    } else {
        r
    }
}

/// Whether the support graph of a square matrix (edges where m_ij ≠ 0 or
/// m_ji ≠ 0, i ≠ j) is connected.
pub fn matrix_connected(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && i != j && (m[i][j] != 0 || m[j][i] != 0) {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == n
}
